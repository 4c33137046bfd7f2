//! Serializable command reports and their text rendering.
//!
//! Field names and status labels are part of the JSON contract documented
//! in `docs/reports.md`.

use std::fmt::Write as _;

use mtensor::{MTensorStatus, MTensorVerdict, PdStatus, PdVerdict, SpectralOutcome};
use serde::Serialize;

use crate::bench::BenchRow;

pub fn status_label(s: MTensorStatus) -> &'static str {
    match s {
        MTensorStatus::MTensor => "m-tensor",
        MTensorStatus::NotMTensor => "not-m-tensor",
        MTensorStatus::Indeterminate => "indeterminate",
    }
}

pub fn pd_label(s: PdStatus) -> &'static str {
    match s {
        PdStatus::PositiveDefinite => "positive-definite",
        PdStatus::NotPositiveDefinite => "not-positive-definite",
        PdStatus::Inapplicable => "inapplicable",
        PdStatus::Indeterminate => "indeterminate",
    }
}

/// Exit code for a classification: 0 M-tensor, 1 not, 2 indeterminate.
pub fn classify_exit_code(s: MTensorStatus) -> i32 {
    match s {
        MTensorStatus::MTensor => 0,
        MTensorStatus::NotMTensor => 1,
        MTensorStatus::Indeterminate => 2,
    }
}

/// Exit code for a definiteness test: 0 definite, 1 not, 2 otherwise.
pub fn posdef_exit_code(s: PdStatus) -> i32 {
    match s {
        PdStatus::PositiveDefinite => 0,
        PdStatus::NotPositiveDefinite => 1,
        PdStatus::Inapplicable | PdStatus::Indeterminate => 2,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketReport {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigReport {
    pub command: &'static str,
    pub order: usize,
    pub dim: usize,
    pub lambda: f64,
    pub eigenvector: Vec<f64>,
    pub bracket: BracketReport,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub epsilon_used: f64,
}

impl EigReport {
    pub fn new(order: usize, dim: usize, out: &SpectralOutcome) -> Self {
        EigReport {
            command: "eig",
            order,
            dim,
            lambda: out.lambda,
            eigenvector: out.eigenvector.clone(),
            bracket: BracketReport {
                lower: out.final_bracket.lower,
                upper: out.final_bracket.upper,
            },
            iterations: out.iterations,
            residual: out.residual,
            converged: out.converged,
            epsilon_used: out.epsilon_used,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lambda       {}", self.lambda);
        let _ = writeln!(s, "bracket      [{}, {}]", self.bracket.lower, self.bracket.upper);
        let _ = writeln!(s, "eigenvector  {}", join(&self.eigenvector));
        let _ = writeln!(s, "iterations   {}", self.iterations);
        let _ = writeln!(s, "residual     {:e}", self.residual);
        let _ = writeln!(s, "converged    {}", self.converged);
        let _ = writeln!(s, "epsilon      {:e}", self.epsilon_used);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub command: &'static str,
    pub order: usize,
    pub dim: usize,
    pub status: &'static str,
    pub tau: f64,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub guard_band: f64,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub epsilon_used: f64,
    pub eigenvector: Vec<f64>,
}

impl ClassifyReport {
    pub fn new(order: usize, dim: usize, v: &MTensorVerdict) -> Self {
        ClassifyReport {
            command: "classify",
            order,
            dim,
            status: status_label(v.status),
            tau: v.tau,
            upper_bound: v.upper_bound,
            lower_bound: v.lower_bound,
            guard_band: v.guard_band,
            iterations: v.spectral.iterations,
            residual: v.residual,
            converged: v.spectral.converged,
            epsilon_used: v.spectral.epsilon_used,
            eigenvector: v.eigenvector.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "status       {}", self.status);
        let _ = writeln!(s, "tau          {}", self.tau);
        let _ = writeln!(s, "bounds       [{}, {}]", self.lower_bound, self.upper_bound);
        let _ = writeln!(s, "guard band   {:e}", self.guard_band);
        let _ = writeln!(s, "iterations   {}", self.iterations);
        let _ = writeln!(s, "residual     {:e}", self.residual);
        let _ = writeln!(s, "eigenvector  {}", join(&self.eigenvector));
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PosdefReport {
    pub command: &'static str,
    pub order: usize,
    pub dim: usize,
    pub status: &'static str,
    pub reason: Option<&'static str>,
    pub tau: Option<f64>,
    pub witness: Option<Vec<f64>>,
    /// `f(witness)` evaluated on the symmetrized tensor.
    pub witness_value: Option<f64>,
    pub symmetrized: bool,
}

impl PosdefReport {
    pub fn new(order: usize, dim: usize, v: &PdVerdict, witness_value: Option<f64>) -> Self {
        PosdefReport {
            command: "posdef",
            order,
            dim,
            status: pd_label(v.status),
            reason: v.reason.map(|r| r.code()),
            tau: v.tau,
            witness: v.witness.clone(),
            witness_value,
            symmetrized: v.symmetrized,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.reason {
            Some("odd-order") => format!("{} (odd order)", self.status),
            Some("not-z-tensor") => format!("{} (not a Z-tensor)", self.status),
            _ => self.status.to_string(),
        };
        let _ = writeln!(s, "status       {status}");
        if let Some(tau) = self.tau {
            let _ = writeln!(s, "tau          {tau}");
        }
        if let (Some(w), Some(f)) = (&self.witness, self.witness_value) {
            let _ = writeln!(s, "witness      {}  (f = {f})", join(w));
        }
        let _ = writeln!(s, "symmetrized  {}", self.symmetrized);
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub command: &'static str,
    pub workers: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>3} {:>4} {:>8} {:>5} {:>5} {:>5} {:>12}",
            "m", "n", "A_d", "Yes", "No", "Ind", "CPU(s)"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>3} {:>4} {:>8} {:>5} {:>5} {:>5} {:>12.6}",
                r.m, r.n, r.a_d, r.yes_count, r.no_count, r.indeterminate_count, r.avg_seconds
            );
        }
        s
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
