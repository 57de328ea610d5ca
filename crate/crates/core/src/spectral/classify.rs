//! Finite-size gap verdicts.
//!
//! The asymptotic notions quantify over all sizes, so only *evidence* can be
//! read off a finite scan:
//!
//! - **gapped evidence**: at every reported `L ≥ L0` the ground state is
//!   non-degenerate and `Δ(L) ≥ γ`;
//! - **gapless evidence**: (a) at the largest `L` the computed spectrum
//!   `ε`-covers `[λ0, λ0 + c]`, and (b) a least-squares fit of
//!   `log Δ = log c' − α log L` gives `α ≥ α_min` with `R² ≥ R²_min`.
//!
//! Anything else is inconclusive.

use serde::{Deserialize, Serialize};

use super::assemble::SpectralError;
use super::scan::{GapReport, SizeResult, SizeStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassifierConfig {
    pub gamma: f64,
    /// Width of the window that must be covered. The asymptotic definition
    /// only asks for *some* positive constant; this default is a choice.
    pub c: f64,
    pub epsilon: f64,
    pub l0: usize,
    pub l_max: Option<usize>,
    pub alpha_min: f64,
    pub r2_min: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            gamma: 1.0,
            c: 0.1,
            epsilon: 0.05,
            l0: 2,
            l_max: None,
            alpha_min: 0.8,
            r2_min: 0.95,
        }
    }
}

impl ClassifierConfig {
    pub fn validate(&self) -> Result<(), SpectralError> {
        let bad = |m: &str| Err(SpectralError::Invalid(m.to_string()));
        if !(self.gamma > 0.0 && self.c > 0.0 && self.epsilon > 0.0) {
            return bad("gamma, c and epsilon must be positive");
        }
        if !(0.0..=1.0).contains(&self.r2_min) {
            return bad("r2_min must lie in [0, 1]");
        }
        if self.l_max.is_some_and(|m| m <= self.l0) {
            return bad("l0 must be below l_max");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    GappedEvidence,
    GaplessEvidence,
    Inconclusive,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::GappedEvidence => "GappedEvidence",
            VerdictKind::GaplessEvidence => "GaplessEvidence",
            VerdictKind::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub alpha: f64,
    pub prefactor: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clauses {
    /// Non-degenerate with `Δ ≥ γ` at every size.
    pub gapped: bool,
    /// (a) `ε`-cover at the largest size.
    pub cover: bool,
    /// (b) power-law decay of the gap.
    pub decay: bool,
    pub fit: Option<PowerFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub clauses: Clauses,
    pub rationale: Vec<String>,
    pub config: ClassifierConfig,
    pub sizes_used: Vec<usize>,
}

/// Whether the points `values` cover `[lo, hi]` to within `eps`.
pub fn eps_covers(values: &[f64], lo: f64, hi: f64, eps: f64) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut reach = lo;
    for v in sorted {
        if v - eps > reach {
            break;
        }
        reach = reach.max(v + eps);
        if reach >= hi {
            return true;
        }
    }
    reach >= hi
}

/// Least-squares fit of `log y = log a − α log x`.
pub fn power_fit(points: &[(f64, f64)]) -> Option<PowerFit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Some(PowerFit {
        alpha: -slope,
        prefactor: (my - slope * mx).exp(),
        r2,
    })
}

fn gapped_at(s: &SizeResult, gamma: f64) -> (bool, String) {
    if let Some(ex) = &s.exact {
        let gap = ex.gap.map(|g| g.to_f64());
        let ok = ex.multiplicity == 1 && gap.is_some_and(|g| g >= gamma);
        let gap = ex.gap.map_or("unresolved".to_string(), |g| g.to_string());
        return (ok, format!("L={}: multiplicity {}, Δ = {gap} (exact)", s.size, ex.multiplicity));
    }
    let mult = s.multiplicity.unwrap_or(0);
    let ok = mult == 1 && s.gap.is_some_and(|g| g >= gamma);
    let gap = s.gap.map_or("unresolved".to_string(), |g| format!("{g:.6e}"));
    (ok, format!("L={}: multiplicity {mult}, Δ = {gap}", s.size))
}

pub fn classify(report: &GapReport, cfg: &ClassifierConfig) -> Result<Verdict, SpectralError> {
    cfg.validate()?;
    let mut rationale = Vec::new();
    for s in &report.sizes {
        if s.status != SizeStatus::Ok {
            rationale.push(format!("L={} skipped: {:?}", s.size, s.status));
        }
    }
    let used: Vec<&SizeResult> = report
        .ok_sizes()
        .filter(|s| s.size >= cfg.l0 && cfg.l_max.is_none_or(|m| s.size <= m))
        .collect();
    if used.len() < 3 {
        return Err(SpectralError::InsufficientData(format!(
            "{} usable sizes in [{}, {}], need at least 3",
            used.len(),
            cfg.l0,
            cfg.l_max.map_or("∞".to_string(), |m| m.to_string())
        )));
    }

    let mut gapped = true;
    for s in &used {
        let (ok, line) = gapped_at(s, cfg.gamma);
        gapped &= ok;
        rationale.push(line);
    }
    rationale.push(format!(
        "gapped clause (non-degenerate, Δ ≥ γ = {} at every L ≥ {}): {}",
        cfg.gamma,
        cfg.l0,
        if gapped { "holds" } else { "fails" }
    ));

    let last = used.last().unwrap();
    let l0 = last.lambda0.unwrap();
    let cover = eps_covers(&last.spectrum, l0, l0 + cfg.c, cfg.epsilon);
    rationale.push(format!(
        "clause (a) ε-cover of [λ0, λ0 + c] at L={} with c = {}, ε = {} ({} levels): {}",
        last.size,
        cfg.c,
        cfg.epsilon,
        last.spectrum.len(),
        if cover { "holds" } else { "fails" }
    ));

    let points: Vec<(f64, f64)> = used.iter().map(|s| (s.size as f64, s.gap.unwrap_or(0.0))).collect();
    let fit = power_fit(&points);
    let decay = match &fit {
        None => {
            rationale.push("clause (b) power-law decay: fails (Δ = 0 at some size, no fit)".into());
            false
        }
        Some(f) => {
            let ok = f.alpha >= cfg.alpha_min && f.r2 >= cfg.r2_min;
            rationale.push(format!(
                "clause (b) Δ ≈ {:.4}·L^(−α) with α = {:.4}, R² = {:.4} (need α ≥ {}, R² ≥ {}): {}",
                f.prefactor,
                f.alpha,
                f.r2,
                cfg.alpha_min,
                cfg.r2_min,
                if ok { "holds" } else { "fails" }
            ));
            ok
        }
    };
    rationale.push(format!(
        "note: the window width c = {} is a chosen constant, not one fixed by the gapless definition",
        cfg.c
    ));

    let gapless = cover && decay;
    let kind = match (gapped, gapless) {
        (true, false) => VerdictKind::GappedEvidence,
        (false, true) => VerdictKind::GaplessEvidence,
        (true, true) => {
            rationale.push("conflict: gapped and gapless clauses both hold; refusing to decide".into());
            VerdictKind::Inconclusive
        }
        (false, false) => VerdictKind::Inconclusive,
    };
    Ok(Verdict {
        kind,
        clauses: Clauses {
            gapped,
            cover,
            decay,
            fit,
        },
        rationale,
        config: *cfg,
        sizes_used: used.iter().map(|s| s.size).collect(),
    })
}
