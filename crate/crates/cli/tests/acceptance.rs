//! Acceptance suite: one PASS/FAIL line per criterion (and per sub-check).
//! Exits nonzero if any line fails.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dnacodes::discrepancy::{
    babai_frankl_family, balanced_labeling, discrepancy, min_discrepancy_bruteforce, verify_transversal_design,
    TransversalDesign,
};
use dnacodes::profile::{
    build_profile_codebook, decode_profile, decoding_trials, equivalence_classes, is_valid_profile, varshamov_enumerate,
    AllowedKmerSet, ChannelReadout, CodebookParams, ErrorCounts, VarshamovCode,
};
use dnacodes::discrepancy::family::BRUTE_FORCE_MAX_GROUND;
use dnacodes::rng;
use dnacodes::trace::experiment::{bma_recovery, random_bits, run_lifted};
use dnacodes::trace::{bma_reconstruct, generate_traces, run_cell, MarkerCode, MarkerCodeParams, SweepCell};
use dnacodes::unique::{assemble, is_uniquely_reconstructable, period_obstructed, ukkonen_sufficient, ReconstructionInstance};
use dnacodes::{asymmetric_distance, profile_of, substring_spectrum, Alphabet, ProfileVector, QaryString};

const SEED: u64 = 20240101;

/// Calibrated regression pin for n=1024, q_del=0.05, level 1, 1000 trials.
const PIN_T: usize = 40;
const PIN_RATE: f64 = 0.919;
/// Uncoded BMA pin: n=64 binary, q_del=0.05, t=10, 1000 trials.
const BMA_PIN: usize = 844;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {id}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    }

    fn info(&self, id: &str, detail: impl AsRef<str>) {
        println!("INFO {id}: {}", detail.as_ref());
    }

    fn timed(&mut self, id: &str, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.line(id, took < limit, format!("runtime {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs()));
    }
}

fn bin(text: &str) -> QaryString {
    QaryString::parse_as(Alphabet::Binary, text).unwrap()
}

fn all_binary(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |v| (0..n).map(|i| (v >> (n - 1 - i)) as u8 & 1).collect())
}

fn example_params() -> CodebookParams {
    CodebookParams {
        n: 8,
        p: 7,
        beta: vec![0, 0],
        allowed: AllowedKmerSet::from_kmers(Alphabet::Binary, &["001", "010", "011", "100", "101", "110"]).unwrap(),
    }
}

fn scratch() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn criterion_1(r: &mut Report) {
    let start = Instant::now();
    let code = VarshamovCode::new(6, 7, vec![0, 0]).unwrap();
    let got: BTreeSet<Vec<u32>> = varshamov_enumerate(&code, 6).into_iter().collect();
    let want: BTreeSet<Vec<u32>> = [
        [4, 0, 0, 1, 0, 1],
        [0, 1, 1, 4, 0, 0],
        [2, 2, 0, 2, 0, 0],
        [0, 1, 0, 0, 4, 1],
        [1, 4, 0, 0, 1, 0],
        [0, 0, 4, 1, 1, 0],
        [1, 1, 1, 1, 1, 1],
        [0, 0, 2, 0, 2, 2],
        [1, 0, 1, 0, 0, 4],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    r.line("1.enumerate", got == want, format!("{} vectors, expected set of 9", got.len()));

    let book = build_profile_codebook(&example_params()).unwrap();
    let strings: BTreeSet<String> = book.entries().iter().map(|e| e.string.to_string()).collect();
    let want: BTreeSet<String> = ["00100100", "00101100", "01101101"].iter().map(|s| s.to_string()).collect();
    r.line("1.codebook", strings == want, format!("{strings:?}"));
    r.timed("1.runtime", start, Duration::from_secs(1));
}

fn criterion_2(r: &mut Report) {
    let p = profile_of(&bin("11011"), 2).unwrap();
    r.line("2.profile", p.counts() == [0, 1, 1, 2], format!("pi_2(11011) = {:?}", p.counts()));

    let bad = ProfileVector::from_counts(2, 2, 5, vec![2, 0, 0, 2]).unwrap();
    r.line("2.reject", !is_valid_profile(&bad, 5, false), "(2,0,0,2) for n=5");

    let strings: Vec<QaryString> =
        ["0000", "0010", "0100", "0110", "1001", "1011", "1101", "1111"].iter().map(|s| bin(s)).collect();
    let classes: BTreeSet<BTreeSet<String>> = equivalence_classes(&strings, 2)
        .unwrap()
        .into_iter()
        .map(|c| c.iter().map(ToString::to_string).collect())
        .collect();
    let want: BTreeSet<BTreeSet<String>> = [vec!["0000"], vec!["0010", "0100", "1001"], vec!["0110", "1011", "1101"], vec!["1111"]]
        .into_iter()
        .map(|c| c.into_iter().map(String::from).collect())
        .collect();
    r.line("2.partition", classes == want, format!("{} classes", classes.len()));
}

fn criterion_3(r: &mut Report) {
    let start = Instant::now();
    let book = build_profile_codebook(&example_params()).unwrap();

    // d_min from scratch, pairwise over the codeword profiles.
    let profiles: Vec<ProfileVector> = book.entries().iter().map(|e| profile_of(&e.string, 3).unwrap()).collect();
    let mut d_min = u64::MAX;
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            d_min = d_min.min(asymmetric_distance(&profiles[i], &profiles[j]).unwrap());
        }
    }
    r.line(
        "3.d_min",
        d_min >= 4 && book.d_min() == Some(d_min),
        format!("d_min = {d_min} (library {:?}); required >= 4", book.d_min()),
    );

    let mut drops = 0;
    let mut decoded = 0;
    for entry in book.entries() {
        let reads: Vec<Vec<u8>> = entry.string.symbols().windows(3).map(<[u8]>::to_vec).collect();
        for skip in 0..reads.len() {
            let kept: Vec<Vec<u8>> = reads.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, r)| r.clone()).collect();
            let readout = ChannelReadout::new(Alphabet::Binary, 3, 8, kept).unwrap();
            drops += 1;
            if decode_profile(&readout, &book).unwrap().string == entry.string {
                decoded += 1;
            }
        }
    }
    r.line("3.single_drop", drops == 18 && decoded == drops, format!("{decoded}/{drops} single coverage drops decoded"));

    let budget = d_min.saturating_sub(1) as usize;
    let tally = decoding_trials(&book, &ErrorCounts::within(budget), 10_000, SEED).unwrap();
    let dump = scratch().join("profile_failures.jsonl");
    let mut lines = String::new();
    for f in &tally.failures {
        let _ = writeln!(lines, "{}", serde_json::to_string(f).unwrap());
    }
    std::fs::write(&dump, lines).unwrap();
    for (p, t, s) in &tally.by_pattern {
        r.info("3.pattern", format!("s={} c={} o={}: {s}/{t}", p.s, p.c, p.o));
    }
    let (t0, s0) = tally.restricted(|p| p.s == 0);
    r.info("3.no_synthesis", format!("{s0}/{t0} = {:.4}", s0 as f64 / t0 as f64));
    r.line(
        "3.monte_carlo",
        tally.success_rate() >= 0.999,
        format!(
            "{}/{} = {:.4} under 2s+c+o <= {budget}; required >= 0.999; failures in {}",
            tally.successes,
            tally.trials,
            tally.success_rate(),
            dump.display()
        ),
    );
    r.timed("3.runtime", start, Duration::from_secs(10));
}

fn brute_force_profile_count(ell: usize, n: usize) -> usize {
    all_binary(n)
        .map(|x| {
            let mut counts = vec![0u32; 1 << ell];
            for w in x.windows(ell) {
                counts[w.iter().fold(0, |a, &b| a * 2 + b as usize)] += 1;
            }
            counts
        })
        .collect::<HashSet<_>>()
        .len()
}

fn criterion_4(r: &mut Report) {
    let start = Instant::now();
    let c8 = dnacodes::profile::count_distinct_profiles(2, 2, 8).unwrap();
    let c16 = dnacodes::profile::count_distinct_profiles(2, 2, 16).unwrap();
    let oracle = (brute_force_profile_count(2, 8) as u64, brute_force_profile_count(2, 16) as u64);
    r.line("4.oracle", (c8, c16) == oracle, format!("counts {c8}, {c16}; brute force {oracle:?}"));
    let ratio = c16 as f64 / c8 as f64;
    r.line("4.ratio", (3.0..=5.0).contains(&ratio), format!("{c16}/{c8} = {ratio:.3}, band [3, 5]"));
    r.timed("4.runtime", start, Duration::from_secs(30));
}

/// Greedy two-pointer check, written independently of the library verifier.
fn embeds(trace: &[u8], source: &[u8]) -> bool {
    let mut it = source.iter();
    trace.iter().all(|b| it.any(|s| s == b))
}

fn criterion_5(r: &mut Report) {
    let start = Instant::now();
    let n = 1024;

    for level in [1u8, 2] {
        let code = MarkerCode::new(MarkerCodeParams::new(n, level)).unwrap();
        let ok = (0..1000u32)
            .filter(|&j| {
                let mut g = rng::cell_stream(SEED, 100 + level as u32, j);
                let msg = random_bits(code.message_len(), &mut g);
                let word = code.encode(&msg).unwrap();
                code.decode(&[word], 0.0).ok() == Some(msg)
            })
            .count();
        r.line(&format!("5a.noiseless_level{level}"), ok == 1000, format!("{ok}/1000 messages"));
    }

    let code = MarkerCode::new(MarkerCodeParams::new(256, 1)).unwrap();
    let mut checked = 0;
    let mut bad = 0;
    for j in 0..1000u32 {
        let mut g = rng::cell_stream(SEED, 200, j);
        let word = code.encode(&random_bits(code.message_len(), &mut g)).unwrap();
        let q_del = [0.0, 0.02, 0.05, 0.1, 0.3][j as usize % 5];
        for t in generate_traces(&word, q_del, 100, &mut g).unwrap() {
            checked += 1;
            if !(embeds(&t.symbols, &word) && dnacodes::trace::is_subsequence(&t.symbols, &word)) {
                bad += 1;
            }
        }
    }
    r.line("5b.subsequence", checked == 100_000 && bad == 0, format!("{} of {checked} traces embed", checked - bad));

    let qs = [0.02, 0.05, 0.1];
    let ts = [5, 20, 80];
    let mut grid = HashMap::new();
    for (qi, &q_del) in qs.iter().enumerate() {
        for (ti, &t) in ts.iter().enumerate() {
            let cell = SweepCell { n, q_del, t, level: 1 };
            let res = run_cell(cell, (qi * 3 + ti) as u32, 1000, SEED).unwrap();
            r.info("5c.cell", format!("q_del={q_del} t={t}: {}/1000", res.successes));
            grid.insert((qi, ti), res);
        }
    }
    let mut breaks = Vec::new();
    for qi in 0..3 {
        for ti in 0..3 {
            let a = &grid[&(qi, ti)];
            // Moving to larger q_del must not raise the rate; larger t must not lower it.
            let pairs = [(qi + 1 < 3).then(|| (&grid[&(qi + 1, ti)], a)), (ti + 1 < 3).then(|| (a, &grid[&(qi, ti + 1)]))];
            for (lo, hi) in pairs.into_iter().flatten() {
                let se = (lo.std_error().powi(2) + hi.std_error().powi(2)).sqrt();
                if lo.rate() > hi.rate() + 3.0 * se {
                    breaks.push(format!("({}, {}) vs ({}, {})", lo.cell.q_del, lo.cell.t, hi.cell.q_del, hi.cell.t));
                }
            }
        }
    }
    r.line("5c.monotone", breaks.is_empty(), format!("{} violations beyond 3 SE {breaks:?}", breaks.len()));

    let pin = run_cell(SweepCell { n, q_del: 0.05, t: PIN_T, level: 1 }, 0, 1000, SEED).unwrap();
    let se = (PIN_RATE * (1.0 - PIN_RATE) / 1000.0).sqrt();
    r.line(
        "5d.pin",
        (pin.rate() - PIN_RATE).abs() <= 3.0 * se,
        format!("t={PIN_T}: rate {:.3}, pinned {PIN_RATE} +/- {:.4}", pin.rate(), 3.0 * se),
    );
    r.timed("5.runtime", start, Duration::from_secs(300));

    let hits = bma_recovery(64, 2, 0.05, 10, 1000, SEED).unwrap();
    let se = ((BMA_PIN as f64 / 1000.0) * (1.0 - BMA_PIN as f64 / 1000.0) / 1000.0).sqrt();
    r.line(
        "5.bma_pin",
        ((hits as f64 - BMA_PIN as f64) / 1000.0).abs() <= 3.0 * se,
        format!("uncoded n=64 t=10: {hits}/1000, pinned {BMA_PIN}"),
    );

    let lifted = run_lifted(SweepCell { n: 256, q_del: 0.05, t: 20, level: 1 }, 2, 200, SEED).unwrap();
    let sum: usize = lifted.component_failures.iter().sum();
    r.line(
        "5.union_bound",
        lifted.any_failures <= sum,
        format!("lifted k=2: {} joint failures <= {sum} component failures", lifted.any_failures),
    );
}

fn criterion_6(r: &mut Report) {
    let traces: Vec<Vec<u8>> = include_str!("data/bma_traces.txt")
        .lines()
        .map(|l| l.chars().map(|c| Alphabet::Dna.symbol(c).unwrap()).collect())
        .collect();
    let consensus: String = bma_reconstruct(&traces, 26, 4).iter().map(|&s| Alphabet::Dna.letter(s)).collect();
    r.line("6.prefix", consensus.starts_with("AATGGCGATTCCGGA"), format!("consensus {consensus}"));

    let dir = scratch();
    let diff = dir.join("bma_diff.txt");
    let status = Command::new(env!("CARGO_BIN_EXE_dnacodes"))
        .args(["trace", "consensus", "--length", "26", "--reference", "AATGGCGATTCCGGAGGAGGATACAT"])
        .arg("--file")
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/bma_traces.txt"))
        .arg("--diff")
        .arg(&diff)
        .arg("--out")
        .arg(dir.join("bma_consensus.txt"))
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    let got = std::fs::read(&diff).unwrap_or_default();
    let golden = include_bytes!("golden/bma_diff.txt");
    r.line("6.golden", status.success() && got == golden, "diff file matches tests/golden/bma_diff.txt byte for byte");
}

fn criterion_7(r: &mut Report) {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    let mut brute = 0;
    for q in [2u64, 3, 5, 7, 11, 13] {
        for k in 2..=q as usize {
            for t in 1..=k.min(3) {
                cases += 1;
                let family = babai_frankl_family(k, q, t).unwrap();
                let labeling = balanced_labeling(k, q).unwrap();
                let sets = family.sets();
                let mut ok = sets.len() == (q as usize).pow(t as u32) && sets.iter().all(|s| s.len() == k);
                let members: Vec<HashSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
                'pairs: for i in 0..members.len() {
                    for j in i + 1..members.len() {
                        if members[i].intersection(&members[j]).count() > t - 1 {
                            ok = false;
                            break 'pairs;
                        }
                    }
                }
                let worst = sets
                    .iter()
                    .map(|s| s.iter().map(|&p| labeling.values()[p] as i64).sum::<i64>().unsigned_abs())
                    .max()
                    .unwrap();
                ok &= worst == (k % 2) as u64 && discrepancy(&family, &labeling).unwrap().max == worst;
                if k % 2 == 0 && family.ground_size() <= BRUTE_FORCE_MAX_GROUND {
                    brute += 1;
                    ok &= min_discrepancy_bruteforce(&family).unwrap() == 0;
                }
                if !ok {
                    bad.push((q, k, t));
                }
            }
        }
    }
    r.line("7.grid", bad.is_empty(), format!("{cases} (q,k,t) cases, {brute} brute-forced, failing {bad:?}"));
    r.timed("7.runtime", start, Duration::from_secs(60));
}

fn criterion_8(r: &mut Report) {
    let start = Instant::now();
    let td = TransversalDesign::from_babai_frankl(3, 5, 2).unwrap();
    r.line("8.design", matches!(verify_transversal_design(&td), Ok(Ok(()))), format!("{} blocks", td.blocks().len()));
    let mut witnessed = 0;
    for i in 0..td.blocks().len() {
        let reduced = td.without_block(i);
        if let Ok(Err(v)) = verify_transversal_design(&reduced) {
            let found = reduced.blocks().iter().filter(|b| v.subset.iter().all(|p| b.contains(p))).count();
            let groups: BTreeSet<usize> =
                v.subset.iter().map(|p| td.groups().iter().position(|g| g.contains(p)).unwrap()).collect();
            if found == v.blocks_containing && groups.len() == 2 && found == 0 {
                witnessed += 1;
            }
        }
    }
    r.line(
        "8.remove_block",
        witnessed == td.blocks().len(),
        format!("{witnessed}/{} removals fail with an uncovered transversal pair", td.blocks().len()),
    );
    r.timed("8.runtime", start, Duration::from_secs(5));
}

fn criterion_9(r: &mut Report) {
    let start = Instant::now();
    let mut counterexamples = 0;
    let mut disagreements = 0;
    let mut pairs = 0;
    let mut ambiguous = 0;
    let mut ambiguous_obstructed = 0;
    let mut obstructed_unique = 0;
    for n in 2..=14 {
        let strings: Vec<Vec<u8>> = all_binary(n).collect();
        for window in 2..=n {
            let mut buckets: HashMap<BTreeSet<&[u8]>, usize> = HashMap::new();
            for x in &strings {
                *buckets.entry(x.windows(window).collect()).or_default() += 1;
            }
            for x in &strings {
                pairs += 1;
                let unique = buckets[&x.windows(window).collect::<BTreeSet<_>>()] == 1;
                let qx = QaryString::binary(x).unwrap();
                let lib = is_uniquely_reconstructable(&qx, window).unwrap();
                if lib != unique {
                    disagreements += 1;
                }
                if ukkonen_sufficient(&qx, window).unwrap() && !unique {
                    counterexamples += 1;
                }
                let obstructed = period_obstructed(&qx, window).unwrap();
                if !unique {
                    ambiguous += 1;
                    ambiguous_obstructed += usize::from(obstructed);
                } else if obstructed {
                    obstructed_unique += 1;
                }
            }
        }
    }
    r.line("9.ukkonen", counterexamples == 0, format!("{counterexamples} counterexamples over {pairs} (x, L) pairs"));
    r.line("9.oracle", disagreements == 0, format!("{disagreements} disagreements with exhaustive buckets"));
    r.info(
        "9.period",
        format!("{ambiguous} ambiguous pairs, {ambiguous_obstructed} of them with period <= L; {obstructed_unique} unique pairs with period <= L"),
    );

    let texts = |x: &str, l: usize| -> Vec<String> {
        assemble(&ReconstructionInstance::of(&bin(x), l).unwrap(), None).iter().map(ToString::to_string).collect()
    };
    let a = texts("10010", 3);
    r.line("9.example_10010_L3", a.len() > 1 && a.contains(&"10010".into()), format!("{a:?}"));
    let b = texts("10010", 4);
    r.line("9.example_10010_L4", b == ["10010"], format!("{b:?}"));
    let c = texts("0111011", 4);
    r.line("9.example_0111011_L4", c.len() > 1 && c.contains(&"1110111".into()), format!("{c:?}"));
    let spec = substring_spectrum(&bin("0111011"), 4, false).unwrap();
    r.info("9.spectrum", format!("S_4(0111011) has {} members", spec.len()));
    r.timed("9.runtime", start, Duration::from_secs(120));
}

fn run_cli(args: &[&str], dir: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_dnacodes"))
        .args(args)
        .current_dir(dir)
        .stderr(std::process::Stdio::null())
        .status()
        .map(|s| s.code().is_some_and(|c| c <= 1))
        .unwrap_or(false)
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect()
}

fn criterion_10(r: &mut Report) {
    let traces = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/bma_traces.txt");
    let traces = traces.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["profile", "build", "--ell", "3", "--n", "8", "--p", "7", "--beta", "0,0", "--allowed", "001,010,011,100,101,110", "--out", "book.json"],
        vec!["profile", "encode", "--codebook", "book.json", "--index", "1", "--c", "1", "--o", "1", "--seed", "7", "--out", "readout.txt"],
        vec!["profile", "decode", "--codebook", "book.json", "--readout", "readout.txt", "--out", "decoded.txt"],
        vec!["profile", "count", "--ell", "2", "--n", "8,16", "--out", "count.csv"],
        vec!["profile", "trials", "--codebook", "book.json", "--trials", "2000", "--seed", "7", "--out", "trials.json", "--failures", "fail.jsonl"],
        vec!["trace", "simulate", "--n", "256", "--qdel", "0.05", "--traces", "20", "--trials", "5", "--seed", "7", "--out", "traces.txt", "--messages", "msgs.txt"],
        vec!["trace", "encode", "--message", "0110100111", "--out", "word.txt"],
        vec!["trace", "decode", "--n", "256", "--qdel", "0.05", "--traces", "traces.txt", "--out", "decoded_traces.txt"],
        vec!["trace", "sweep", "--n", "256", "--qdel", "0.02,0.05", "--traces", "5,20", "--trials", "50", "--seed", "7", "--csv", "sweep.csv"],
        vec!["trace", "consensus", "--file", traces, "--length", "26", "--reference", "AATGGCGATTCCGGAGGAGGATACAT", "--diff", "diff.txt", "--out", "consensus.txt"],
        vec!["discrepancy", "build", "--k", "4", "--q", "5", "--t", "2", "--out", "family.json"],
        vec!["discrepancy", "verify", "--file", "family.json", "--design", "--out", "verify.json"],
        vec!["unique", "check", "--file", "strings.txt", "--L", "4", "--out", "unique.jsonl"],
        vec!["unique", "assemble", "--file", "spectrum.txt", "--n", "5", "--out", "assembled.txt"],
    ];
    let mut runs = Vec::new();
    let mut all_ran = true;
    for round in 0..2 {
        let dir = scratch().join(format!("determinism{round}"));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("strings.txt"), "10010\n0111011\n0000\n").unwrap();
        std::fs::write(dir.join("spectrum.txt"), "100\n001\n010\n").unwrap();
        for args in &commands {
            all_ran &= run_cli(args, &dir);
        }
        runs.push(snapshot(&dir));
    }
    let differing: Vec<&String> = runs[0].keys().filter(|k| runs[1].get(*k) != runs[0].get(*k)).collect();
    r.line(
        "10.determinism",
        all_ran && differing.is_empty() && runs[0].len() == runs[1].len(),
        format!("{} commands, {} output files, differing {differing:?}", commands.len(), runs[0].len()),
    );
}

fn main() {
    let mut r = Report { failed: 0 };
    let start = Instant::now();
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    println!("acceptance: {} failing line(s), {:.1}s", r.failed, start.elapsed().as_secs_f64());
    if r.failed > 0 {
        std::process::exit(1);
    }
}
