/// Bitwise majority alignment.
///
/// Each trace has a cursor starting at its first symbol. Output position `j`
/// takes the majority symbol under the active cursors (ties go to the smaller
/// symbol); only cursors that agree with the majority advance. A cursor past
/// the end of its trace is inactive. With no active cursors left the output is
/// padded with symbol 0.
pub fn bma_reconstruct<T: AsRef<[u8]>>(traces: &[T], n: usize, alphabet_size: usize) -> Vec<u8> {
    let mut cursors = vec![0usize; traces.len()];
    let mut counts = vec![0usize; alphabet_size];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut active = false;
        for (t, &c) in traces.iter().zip(&cursors) {
            if let Some(&s) = t.as_ref().get(c) {
                counts[s as usize] += 1;
                active = true;
            }
        }
        if !active {
            out.push(0);
            continue;
        }
        let mut majority = 0;
        for (s, &c) in counts.iter().enumerate() {
            if c > counts[majority] {
                majority = s;
            }
        }
        let majority = majority as u8;
        for (t, c) in traces.iter().zip(cursors.iter_mut()) {
            if t.as_ref().get(*c) == Some(&majority) {
                *c += 1;
            }
        }
        out.push(majority);
    }
    out
}
