//! Sweep of the primitive root construction over a range of primes.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::constructions::primitive_root_arrangement;
use crate::group::Automorphism;
use crate::triangle::pseudoterrace_k_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepBest {
    pub k: u64,
    pub rho: u64,
    pub r: u64,
}

/// Best balance for one `(p, ℓ)`; `best` is `None` when no primitive root has
/// a multiplier of order `ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub ell: u64,
    pub best: Option<SweepBest>,
}

impl SweepRow {
    pub fn best_k(&self) -> Option<u64> {
        self.best.map(|b| b.k)
    }

    pub fn vatican(&self) -> bool {
        self.best.is_some_and(|b| b.k + 1 == self.p)
    }

    /// `{p, ell, best_k, rho, r}`, omitting the last three when empty.
    pub fn to_json(&self) -> serde_json::Value {
        match self.best {
            Some(b) => serde_json::json!({
                "p": self.p, "ell": self.ell, "best_k": b.k, "rho": b.rho, "r": b.r,
            }),
            None => serde_json::json!({ "p": self.p, "ell": self.ell }),
        }
    }

    /// `(ℓ,k,ρ,r)` or `(ℓ)`.
    pub fn paper_format(&self) -> String {
        match self.best {
            Some(b) => format!("({},{},{},{})", self.ell, b.k, b.rho, b.r),
            None => format!("({})", self.ell),
        }
    }

    /// `(p; ℓ, k, ρ, r)`.
    pub fn list_format(&self) -> String {
        match self.best {
            Some(b) => format!("({}; {}, {}, {}, {})", self.p, self.ell, b.k, b.rho, b.r),
            None => format!("({}; {})", self.p, self.ell),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub ell_min: u64,
    pub ell_max: u64,
    /// Rows with a best balance below this are dropped; with `0`, rows
    /// without any construction are kept too.
    pub k_min: u64,
    /// Whether `ℓ = p-1` is swept. Every arrangement is Vatican for that
    /// fold, so it is off by default.
    pub include_full_fold: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            p_min: 3,
            p_max: 61,
            ell_min: 2,
            ell_max: u64::MAX,
            k_min: 0,
            include_full_fold: false,
        }
    }
}

pub const SWEEP_P_LIMIT: u64 = 10_000;

/// Rows for primes in `p_min..=p_max` and folds `2..=ell_max`, keeping those
/// whose best balance is at least `k_min`.
pub fn sweep_primes(p_min: u64, p_max: u64, ell_max: u64, k_min: u64) -> Vec<SweepRow> {
    sweep_with(&SweepConfig {
        p_min,
        p_max,
        ell_max,
        k_min,
        ..SweepConfig::default()
    })
}

pub fn sweep_with(config: &SweepConfig) -> Vec<SweepRow> {
    let p_max = config.p_max.min(SWEEP_P_LIMIT);
    let primes = arith::primes_in(config.p_min.max(3), p_max);
    primes
        .par_iter()
        .flat_map_iter(|&p| sweep_prime(p, config))
        .collect()
}

fn sweep_prime(p: u64, config: &SweepConfig) -> Vec<SweepRow> {
    let folds: Vec<u64> = arith::divisors(p - 1)
        .into_iter()
        .filter(|&l| {
            l >= config.ell_min.max(2)
                && l <= config.ell_max
                && (config.include_full_fold || l < p - 1)
        })
        .collect();
    if folds.is_empty() {
        return vec![];
    }
    let factors = arith::prime_factors(p - 1);
    let mut best: Vec<Option<SweepBest>> = vec![None; folds.len()];
    for rho in arith::primitive_roots(p) {
        let inv = arith::mod_inv(rho - 1, p).expect("rho - 1 is a unit");
        let r = rho * inv % p;
        let ell = arith::order_dividing(r, p, p - 1, &factors);
        let Some(slot) = folds.iter().position(|&l| l == ell) else {
            continue;
        };
        let a = primitive_root_arrangement(p, rho).expect("primitive root");
        let alpha = Automorphism::multiplication(a.group(), r).expect("unit");
        let k = pseudoterrace_k_unchecked(
            a.group(),
            a.as_slice(),
            alpha.cycle_reps(),
            alpha.cycle_lens(),
        ) as u64;
        if best[slot].is_none_or(|b| k > b.k) {
            best[slot] = Some(SweepBest { k, rho, r });
        }
    }
    folds
        .into_iter()
        .zip(best)
        .map(|(ell, best)| SweepRow { p, ell, best })
        .filter(|row| match row.best {
            Some(b) => b.k >= config.k_min,
            None => config.k_min == 0,
        })
        .collect()
}
