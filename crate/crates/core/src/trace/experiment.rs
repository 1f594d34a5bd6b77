//! Monte-Carlo experiments over the deletion channel. Trial `j` of grid cell
//! `i` always draws from stream `(i, j)`, so results are independent of the
//! thread count.

use rand::Rng;
use rayon::prelude::*;

use super::bma::bma_reconstruct;
use super::channel::generate_traces;
use super::lift::{lift, split_components};
use super::marker::{MarkerCode, MarkerCodeParams};
use crate::error::Result;
use crate::rng::cell_stream;

pub const CSV_HEADER: &str = "n,q_del,t,level,trials,successes,seed";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub n: usize,
    pub q_del: f64,
    pub t: usize,
    pub level: u8,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellResult {
    pub cell: SweepCell,
    pub trials: usize,
    pub successes: usize,
    pub seed: u64,
}

impl CellResult {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Binomial standard error of [`CellResult::rate`].
    pub fn std_error(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn csv_row(&self) -> String {
        let c = self.cell;
        format!("{},{},{},{},{},{},{}", c.n, c.q_del, c.t, c.level, self.trials, self.successes, self.seed)
    }
}

pub fn random_bits<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..2)).collect()
}

/// Encode a random message, pass `t` traces through the channel and decode.
pub fn coded_trial<R: Rng + ?Sized>(code: &MarkerCode, q_del: f64, t: usize, rng: &mut R) -> Result<bool> {
    let msg = random_bits(code.message_len(), rng);
    let traces = generate_traces(&code.encode(&msg)?, q_del, t, rng)?;
    Ok(code.decode(&traces, q_del).ok().as_ref() == Some(&msg))
}

pub fn run_cell(cell: SweepCell, index: u32, trials: usize, seed: u64) -> Result<CellResult> {
    let code = MarkerCode::new(MarkerCodeParams::new(cell.n, cell.level))?;
    let outcomes: Result<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|j| coded_trial(&code, cell.q_del, cell.t, &mut cell_stream(seed, index, j as u32)))
        .collect();
    let successes = outcomes?.into_iter().filter(|&ok| ok).count();
    Ok(CellResult { cell, trials, successes, seed })
}

/// Runs every cell; rows come back in grid order.
pub fn sweep(grid: &[SweepCell], trials: usize, seed: u64) -> Result<Vec<CellResult>> {
    grid.iter().enumerate().map(|(i, &cell)| run_cell(cell, i as u32, trials, seed)).collect()
}

pub fn sweep_csv(rows: &[CellResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Exact-recovery count of uncoded BMA on uniform random strings.
pub fn bma_recovery(n: usize, alphabet_size: usize, q_del: f64, t: usize, trials: usize, seed: u64) -> Result<usize> {
    let outcomes: Result<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = cell_stream(seed, 0, j as u32);
            let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..alphabet_size as u8)).collect();
            let traces = generate_traces(&x, q_del, t, &mut rng)?;
            Ok(bma_reconstruct(&traces, n, alphabet_size) == x)
        })
        .collect();
    Ok(outcomes?.into_iter().filter(|&ok| ok).count())
}

/// Outcome of lifted trials: `component_failures[i]` counts failures of
/// component `i`, `any_failures` trials where at least one component failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedResult {
    pub trials: usize,
    pub any_failures: usize,
    pub component_failures: Vec<usize>,
}

/// `k` marker codewords lifted to a `2^k`-ary string, passed through the
/// deletion channel as whole symbols, split and decoded component-wise.
pub fn run_lifted(cell: SweepCell, k: usize, trials: usize, seed: u64) -> Result<LiftedResult> {
    let code = MarkerCode::new(MarkerCodeParams::new(cell.n, cell.level))?;
    let outcomes: Result<Vec<Vec<bool>>> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = cell_stream(seed, 0, j as u32);
            let msgs: Vec<Vec<u8>> = (0..k).map(|_| random_bits(cell.n, &mut rng)).collect();
            let words: Vec<Vec<u8>> = msgs.iter().map(|m| code.encode(m)).collect::<Result<_>>()?;
            let traces = generate_traces(&lift(&words)?, cell.q_del, cell.t, &mut rng)?;
            let parts: Vec<Vec<Vec<u8>>> = traces.iter().map(|t| split_components(&t.symbols, k)).collect();
            Ok((0..k)
                .map(|i| {
                    let comp: Vec<&[u8]> = parts.iter().map(|p| p[i].as_slice()).collect();
                    code.decode(&comp, cell.q_del).ok().as_ref() != Some(&msgs[i])
                })
                .collect())
        })
        .collect();
    let outcomes = outcomes?;
    Ok(LiftedResult {
        trials,
        any_failures: outcomes.iter().filter(|o| o.iter().any(|&f| f)).count(),
        component_failures: (0..k).map(|i| outcomes.iter().filter(|o| o[i]).count()).collect(),
    })
}
