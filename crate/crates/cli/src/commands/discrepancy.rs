use dnacodes::discrepancy::{
    babai_frankl_family, balanced_labeling, verify_t_bounded, verify_transversal_design, FamilyFile,
    TransversalDesign,
};
use dnacodes::Result;
use serde_json::json;

use super::Outcome;
use crate::args::{DiscBuild, DiscVerify, DiscrepancyCmd};
use crate::output::{emit, read};

pub fn run(cmd: DiscrepancyCmd) -> Result<Outcome> {
    match cmd {
        DiscrepancyCmd::Build(a) => build(a),
        DiscrepancyCmd::Verify(a) => verify(a),
    }
}

fn build(a: DiscBuild) -> Result<Outcome> {
    let family = babai_frankl_family(a.k, a.q, a.t)?;
    let labeling = balanced_labeling(a.k, a.q)?;
    emit(&a.out, &FamilyFile::new(a.k, a.q, a.t, &family, &labeling).to_json()?)?;
    Ok(Outcome::Done)
}

/// Every check works on the raw set lists so that malformed families are
/// reported with a witness instead of being rejected at load time.
fn verify(a: DiscVerify) -> Result<Outcome> {
    let file = FamilyFile::from_json(&read(&a.file)?)?;
    let (n, k, q, t) = (file.n, file.k, file.q, file.t);
    let mut violations = Vec::new();
    if n != k * q as usize {
        violations.push(json!({"check": "ground_size", "expected": k * q as usize, "found": n}));
    }
    let expected_sets = (q as usize).checked_pow(t as u32);
    if expected_sets != Some(file.sets.len()) {
        violations.push(json!({"check": "family_size", "expected": expected_sets, "found": file.sets.len()}));
    }
    if let Some((i, s)) = file.sets.iter().enumerate().find(|(_, s)| {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() != k || s.iter().any(|&p| p >= n)
    }) {
        violations.push(json!({"check": "regularity", "set": i, "members": s}));
    }
    if let Err((i, j)) = verify_t_bounded(&file.sets, t) {
        violations.push(json!({"check": "t_bounded", "pair": [i, j], "sets": [file.sets[i], file.sets[j]]}));
    }
    if file.labeling.iter().any(|&l| l != 1 && l != -1) {
        violations.push(json!({"check": "labeling_values"}));
    } else {
        let bound = (k % 2) as i64;
        let sums = file.sets.iter().map(|s| s.iter().filter_map(|&p| file.labeling.get(p)).map(|&l| l as i64).sum::<i64>());
        if let Some((i, sum)) = sums.enumerate().find(|(_, sum)| sum.abs() > bound) {
            violations.push(json!({"check": "discrepancy", "set": i, "sum": sum, "bound": bound}));
        }
    }
    if a.design {
        let groups = (0..k).map(|m| (m * q as usize..(m + 1) * q as usize).collect()).collect();
        match TransversalDesign::new(t, groups, file.sets.clone()) {
            Err(e) => violations.push(json!({"check": "design", "error": e.to_string()})),
            Ok(td) => {
                if let Err(w) = verify_transversal_design(&td)? {
                    violations.push(json!({
                        "check": "design",
                        "subset": w.subset,
                        "blocks_containing": w.blocks_containing,
                        "within_group": w.within_group,
                    }));
                }
            }
        }
    }
    let report = json!({"file": a.file.display().to_string(), "valid": violations.is_empty(), "violations": violations});
    emit(&a.out, &format!("{report}\n"))?;
    if violations.is_empty() {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Violation(format!("{} check(s) failed", violations.len())))
    }
}

