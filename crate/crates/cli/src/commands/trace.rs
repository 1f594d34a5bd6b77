use std::collections::BTreeMap;
use std::fmt::Write as _;

use dnacodes::rng::cell_stream;
use dnacodes::strings::parse_strings;
use dnacodes::trace::experiment::random_bits;
use dnacodes::trace::{bma_reconstruct, generate_traces, sweep, sweep_csv, MarkerCode, MarkerCodeParams, SweepCell};
use dnacodes::{Alphabet, Error, QaryString, Result};

use super::Outcome;
use crate::args::{CodeArgs, TraceCmd, TraceConsensus, TraceDecode, TraceEncode, TraceSimulate, TraceSweep};
use crate::output::{emit, read};

pub fn run(cmd: TraceCmd) -> Result<Outcome> {
    match cmd {
        TraceCmd::Simulate(a) => simulate(a),
        TraceCmd::Encode(a) => encode(a),
        TraceCmd::Decode(a) => decode(a),
        TraceCmd::Sweep(a) => run_sweep(a),
        TraceCmd::Consensus(a) => consensus(a),
    }
}

fn code(a: &CodeArgs) -> Result<MarkerCode> {
    MarkerCode::new(MarkerCodeParams { c: a.c, ..MarkerCodeParams::new(a.n, a.level) })
}

fn bits_text(bits: &[u8]) -> String {
    bits.iter().map(|&b| char::from(b'0' + b)).collect()
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("{c:?} is not a bit"))),
        })
        .collect()
}

fn simulate(a: TraceSimulate) -> Result<Outcome> {
    let code = code(&a.code)?;
    let mut dump = String::new();
    let mut messages = String::new();
    for trial in 0..a.trials {
        let mut rng = cell_stream(a.seed, 0, trial);
        let msg = random_bits(a.code.n, &mut rng);
        for t in generate_traces(&code.encode(&msg)?, a.qdel, a.traces, &mut rng)? {
            let _ = writeln!(dump, "{trial}\t{}", bits_text(&t.symbols));
        }
        let _ = writeln!(messages, "{trial}\t{}", bits_text(&msg));
    }
    emit(&a.out, &dump)?;
    if let Some(path) = &a.messages {
        std::fs::write(path, messages)?;
    }
    Ok(Outcome::Done)
}

fn encode(a: TraceEncode) -> Result<Outcome> {
    let msg = parse_bits(a.message.trim())?;
    let code = MarkerCode::new(MarkerCodeParams { c: a.c, ..MarkerCodeParams::new(msg.len(), a.level) })?;
    emit(&a.out, &format!("{}\n", bits_text(&code.encode(&msg)?)))?;
    Ok(Outcome::Done)
}

/// `trial<TAB>trace` lines grouped by trial, in trial order.
fn parse_dump(text: &str) -> Result<BTreeMap<u64, Vec<Vec<u8>>>> {
    let mut trials: BTreeMap<u64, Vec<Vec<u8>>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (trial, trace) =
            line.split_once('\t').ok_or_else(|| Error::Parse(format!("line {}: expected trial<TAB>trace", i + 1)))?;
        let trial = trial.trim().parse().map_err(|_| Error::Parse(format!("line {}: bad trial index", i + 1)))?;
        trials.entry(trial).or_default().push(parse_bits(trace.trim())?);
    }
    if trials.is_empty() {
        return Err(Error::Parse("trace dump is empty".into()));
    }
    Ok(trials)
}

fn decode(a: TraceDecode) -> Result<Outcome> {
    let code = code(&a.code)?;
    let mut out = String::new();
    let mut failed = Vec::new();
    for (trial, traces) in parse_dump(&read(&a.traces)?)? {
        match code.decode(&traces, a.qdel) {
            Ok(msg) => {
                let _ = writeln!(out, "{trial}\t{}", bits_text(&msg));
            }
            Err(Error::DecodeFailure(why)) => {
                let _ = writeln!(out, "{trial}\tFAILED");
                failed.push(format!("trial {trial}: {why}"));
            }
            Err(e) => return Err(e),
        }
    }
    emit(&a.out, &out)?;
    if failed.is_empty() {
        Ok(Outcome::Done)
    } else {
        Err(Error::DecodeFailure(failed.join("; ")))
    }
}

fn run_sweep(a: TraceSweep) -> Result<Outcome> {
    let mut grid = Vec::new();
    for &n in &a.n {
        for &level in &a.level {
            for &q_del in &a.qdel {
                for &t in &a.traces {
                    grid.push(SweepCell { n, q_del, t, level });
                }
            }
        }
    }
    let rows = sweep(&grid, a.trials, a.seed)?;
    emit(&a.csv, &sweep_csv(&rows))?;
    Ok(Outcome::Done)
}

fn consensus(a: TraceConsensus) -> Result<Outcome> {
    let traces = parse_strings(&read(&a.file)?)?;
    let Some(first) = traces.first() else {
        return Err(Error::Parse("no traces in file".into()));
    };
    let alphabet = first.alphabet();
    let symbols: Vec<&[u8]> = traces.iter().map(QaryString::symbols).collect();
    let consensus = QaryString::new(alphabet, bma_reconstruct(&symbols, a.length, alphabet.size()))?;
    emit(&a.out, &format!("{consensus}\n"))?;
    if let Some(reference) = &a.reference {
        let reference = QaryString::parse_as(alphabet, reference)?;
        let diff = diff_report(&reference, &consensus, alphabet);
        match &a.diff {
            Some(path) => std::fs::write(path, diff)?,
            None => crate::output::note(diff.trim_end()),
        }
    }
    Ok(Outcome::Done)
}

/// Position-by-position comparison; positions are 0-based and a position
/// present in only one string counts as a mismatch.
pub fn diff_report(reference: &QaryString, consensus: &QaryString, alphabet: Alphabet) -> String {
    let (r, c) = (reference.symbols(), consensus.symbols());
    let len = r.len().max(c.len());
    let mismatches: Vec<usize> = (0..len).filter(|&i| r.get(i) != c.get(i)).collect();
    let marks: String = (0..len).map(|i| if mismatches.contains(&i) { '^' } else { '.' }).collect();
    let positions: Vec<String> = mismatches.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    let order: Vec<String> = (0..alphabet.size() as u8).map(|s| alphabet.letter(s).to_string()).collect();
    let _ = writeln!(out, "# BMA consensus diff; ties go to the smallest symbol ({})", order.join("<"));
    let _ = writeln!(out, "reference  {reference}");
    let _ = writeln!(out, "consensus  {consensus}");
    let _ = writeln!(out, "marks      {marks}");
    let _ = writeln!(out, "mismatch_positions {}", positions.join(","));
    let _ = writeln!(out, "mismatches {}", mismatches.len());
    out
}
