use dnacodes::profile::{
    build_profile_codebook, count_distinct_profiles, decode_profile, decoding_trials, sweep_beta, AllowedKmerSet,
    ChannelReadout, CodebookParams, ErrorCounts, ProfileCodebook,
};
use dnacodes::profile::channel_simulate;
use dnacodes::{rng, Alphabet, Error, Result};
use serde_json::json;

use super::Outcome;
use crate::args::{ProfileBuild, ProfileCmd, ProfileCount, ProfileDecode, ProfileEncode, ProfileTrials};
use crate::output::{emit, read};

pub fn run(cmd: ProfileCmd) -> Result<Outcome> {
    match cmd {
        ProfileCmd::Build(a) => build(a),
        ProfileCmd::Encode(a) => encode(a),
        ProfileCmd::Decode(a) => decode(a),
        ProfileCmd::Count(a) => count(a),
        ProfileCmd::Trials(a) => trials(a),
    }
}

fn build(a: ProfileBuild) -> Result<Outcome> {
    let alphabet = Alphabet::from_size(a.q)?;
    let allowed = match &a.allowed {
        Some(kmers) => AllowedKmerSet::from_kmers(alphabet, kmers)?,
        None => AllowedKmerSet::full(a.q, a.ell)?,
    };
    if allowed.ell() != a.ell {
        return Err(Error::InvalidArgument(format!("allowed ℓ-mers have length {}, --ell is {}", allowed.ell(), a.ell)));
    }
    let beta = match (&a.beta, a.d, a.best_beta) {
        (Some(_), _, true) => return Err(Error::InvalidArgument("--beta and --best-beta exclude each other".into())),
        (Some(b), Some(d), _) if b.len() != d => {
            return Err(Error::InvalidArgument(format!("--beta has {} entries but --d is {d}", b.len())))
        }
        (Some(b), _, _) => b.clone(),
        (None, d, true) => sweep_beta(a.n, a.p, d.unwrap_or(0), &allowed)?.best_beta,
        (None, d, false) => vec![0; d.unwrap_or(0)],
    };
    let book = build_profile_codebook(&CodebookParams { n: a.n, p: a.p, beta, allowed })?;
    emit(&a.out, &book.to_json()?)?;
    Ok(Outcome::Done)
}

fn load_codebook(path: &std::path::Path) -> Result<ProfileCodebook> {
    ProfileCodebook::from_json(&read(path)?)
}

fn encode(a: ProfileEncode) -> Result<Outcome> {
    let book = load_codebook(&a.codebook)?;
    let entry = book
        .entries()
        .get(a.index)
        .ok_or_else(|| Error::InvalidArgument(format!("codebook has {} entries, index {} requested", book.len(), a.index)))?;
    let errors = ErrorCounts::new(a.s, a.c, a.o);
    let readout = channel_simulate(&entry.string, book.params().ell(), errors, &mut rng::stream(a.seed, 0))?;
    emit(&a.out, &readout.to_dump())?;
    Ok(Outcome::Done)
}

fn decode(a: ProfileDecode) -> Result<Outcome> {
    let book = load_codebook(&a.codebook)?;
    let readout = ChannelReadout::parse_dump(&read(&a.readout)?)?;
    let decoded = decode_profile(&readout, &book)?;
    crate::output::note(&format!("decoded codeword {} at asymmetric distance {}", decoded.index, decoded.distance));
    emit(&a.out, &format!("{}\n", decoded.string))?;
    Ok(Outcome::Done)
}

fn count(a: ProfileCount) -> Result<Outcome> {
    let mut out = String::from("q,ell,n,count\n");
    for &n in &a.n {
        out.push_str(&format!("{},{},{},{}\n", a.q, a.ell, n, count_distinct_profiles(a.q, a.ell, n)?));
    }
    emit(&a.out, &out)?;
    Ok(Outcome::Done)
}

fn trials(a: ProfileTrials) -> Result<Outcome> {
    let book = load_codebook(&a.codebook)?;
    let budget = match (a.budget, book.d_min()) {
        (Some(b), _) => b,
        (None, Some(d)) => d.saturating_sub(1) as usize,
        (None, None) => return Err(Error::InvalidArgument("codebook has no d_min; pass --budget".into())),
    };
    let patterns: Vec<ErrorCounts> =
        ErrorCounts::within(budget).into_iter().filter(|p| !a.no_synthesis || p.s == 0).collect();
    let tally = decoding_trials(&book, &patterns, a.trials, a.seed)?;
    let by_pattern: Vec<_> = tally
        .by_pattern
        .iter()
        .map(|(p, t, s)| json!({"s": p.s, "c": p.c, "o": p.o, "trials": t, "successes": s}))
        .collect();
    let summary = json!({
        "schema_version": 1,
        "seed": a.seed,
        "budget": budget,
        "trials": tally.trials,
        "successes": tally.successes,
        "by_pattern": by_pattern,
    });
    emit(&a.out, &format!("{}\n", serde_json::to_string_pretty(&summary)?))?;
    if let Some(path) = &a.failures {
        let mut lines = String::new();
        for f in &tally.failures {
            lines.push_str(&serde_json::to_string(f)?);
            lines.push('\n');
        }
        std::fs::write(path, lines)?;
    }
    Ok(Outcome::Done)
}
