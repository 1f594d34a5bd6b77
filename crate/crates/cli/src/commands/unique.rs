use dnacodes::strings::parse_strings;
use dnacodes::unique::{assemble, period_obstructed, ukkonen_sufficient, ReconstructionInstance, UNIQUENESS_BUDGET};
use dnacodes::{period, Error, Result, SubstringSpectrum};
use serde_json::json;

use super::Outcome;
use crate::args::{UniqueAssemble, UniqueCheck, UniqueCmd};
use crate::output::{emit, read};

pub fn run(cmd: UniqueCmd) -> Result<Outcome> {
    match cmd {
        UniqueCmd::Check(a) => check(a),
        UniqueCmd::Assemble(a) => assemble_cmd(a),
    }
}

fn check(a: UniqueCheck) -> Result<Outcome> {
    let mut out = String::new();
    for x in parse_strings(&read(&a.file)?)? {
        let instance = ReconstructionInstance::of(&x, a.window)?;
        let candidates = assemble(&instance, Some(UNIQUENESS_BUDGET as usize));
        let line = json!({
            "string": x.to_string(),
            "L": a.window,
            "ukkonen": ukkonen_sufficient(&x, a.window)?,
            "period": period(&x),
            "period_obstructed": period_obstructed(&x, a.window)?,
            "unique": candidates.len() == 1,
            "candidates_count": candidates.len(),
        });
        out.push_str(&format!("{line}\n"));
    }
    emit(&a.out, &out)?;
    Ok(Outcome::Done)
}

fn assemble_cmd(a: UniqueAssemble) -> Result<Outcome> {
    let members = parse_strings(&read(&a.file)?)?;
    let Some(first) = members.first() else {
        return Err(Error::Parse("spectrum file is empty".into()));
    };
    let (alphabet, window) = (first.alphabet(), first.len());
    let spectrum = SubstringSpectrum::from_set(window, members.iter().map(|m| m.symbols().to_vec()))?;
    let instance = ReconstructionInstance::new(spectrum, a.n, alphabet)?;
    let mut out = String::new();
    for c in assemble(&instance, a.limit) {
        out.push_str(&format!("{c}\n"));
    }
    emit(&a.out, &out)?;
    Ok(Outcome::Done)
}
