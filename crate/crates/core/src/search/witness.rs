//! Re-verification of witnesses quoted from tables.

use thiserror::Error as ThisError;

use crate::constructions::{primitive_root_arrangement, primitive_root_multiplier};
use crate::design::{balance_report, design_from_tuple};
use crate::error::Error;
use crate::group::{make_group, Automorphism, GroupDescriptor};
use crate::triangle::{expand_pseudoterrace, pseudoterrace_k, roman_k, Arrangement, TupleFamily};

/// Designs up to this many `o_i` increments also go through the design-level
/// counts.
const DESIGN_ORACLE_WORK: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableWitness {
    /// `(p; ℓ, k, ρ, r)`.
    PrimitiveRoot {
        p: u64,
        ell: u64,
        k: u64,
        rho: u64,
        r: u64,
    },
    /// An `ℓ`-fold pseudoterrace under a stated automorphism; `k = None`
    /// claims Vatican.
    Pseudoterrace {
        group: GroupDescriptor,
        ell: usize,
        automorphism: String,
        arrangement: String,
        k: Option<usize>,
    },
    /// A directly listed tuple; `k = None` claims Vatican.
    Tuple {
        group: GroupDescriptor,
        members: Vec<String>,
        k: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum WitnessError {
    #[error("witness is malformed: {0}")]
    Malformed(#[from] Error),
    #[error("stated multiplier {stated}, but ρ/(ρ-1) = {actual}")]
    Multiplier { stated: u64, actual: u64 },
    #[error("stated fold {stated}, but the automorphism has order {actual}")]
    Fold { stated: u64, actual: u64 },
    #[error("claimed balance {claimed}, achieved only {achieved}")]
    Balance { claimed: u64, achieved: u64 },
    #[error("triangle scan gives {triangle} but design counts give {design}")]
    OracleDisagreement { triangle: u64, design: u64 },
}

fn check_family(family: &TupleFamily, claimed: usize) -> Result<(), WitnessError> {
    let tri = roman_k(family);
    if tri < claimed {
        return Err(WitnessError::Balance {
            claimed: claimed as u64,
            achieved: tri as u64,
        });
    }
    let t = family.group().order();
    if family.fold() * t * t * t / 2 <= DESIGN_ORACLE_WORK {
        let design = balance_report(&design_from_tuple(family))?.max_k;
        if design != tri {
            return Err(WitnessError::OracleDisagreement {
                triangle: tri as u64,
                design: design as u64,
            });
        }
    }
    Ok(())
}

/// Rebuilds the witness and confirms every stated component. Returns the
/// balance actually achieved.
pub fn verify_table_witness(witness: &TableWitness) -> Result<u64, WitnessError> {
    match witness {
        TableWitness::PrimitiveRoot { p, ell, k, rho, r } => {
            let a = primitive_root_arrangement(*p, *rho)?;
            let actual_r = primitive_root_multiplier(*p, *rho)?;
            if actual_r != *r {
                return Err(WitnessError::Multiplier {
                    stated: *r,
                    actual: actual_r,
                });
            }
            let alpha = Automorphism::multiplication(a.group(), *r)?;
            if alpha.order() as u64 != *ell {
                return Err(WitnessError::Fold {
                    stated: *ell,
                    actual: alpha.order() as u64,
                });
            }
            let achieved = pseudoterrace_k(&a, &alpha)? as u64;
            if achieved < *k {
                return Err(WitnessError::Balance {
                    claimed: *k,
                    achieved,
                });
            }
            if (*p as usize) * (*p as usize) * (*p as usize) * (*ell as usize) / 2 <= DESIGN_ORACLE_WORK {
                check_family(&expand_pseudoterrace(&a, &alpha)?, achieved as usize)?;
            }
            Ok(achieved)
        }
        TableWitness::Pseudoterrace {
            group,
            ell,
            automorphism,
            arrangement,
            k,
        } => {
            let g = make_group(group)?;
            let alpha = Automorphism::parse(&g, automorphism)?;
            if alpha.order() != *ell {
                return Err(WitnessError::Fold {
                    stated: *ell as u64,
                    actual: alpha.order() as u64,
                });
            }
            let a = Arrangement::parse(&g, arrangement)?;
            let claimed = k.unwrap_or(g.order() - 1);
            let achieved = pseudoterrace_k(&a, &alpha)?;
            if achieved < claimed {
                return Err(WitnessError::Balance {
                    claimed: claimed as u64,
                    achieved: achieved as u64,
                });
            }
            check_family(&expand_pseudoterrace(&a, &alpha)?, claimed)?;
            Ok(achieved as u64)
        }
        TableWitness::Tuple { group, members, k } => {
            let g = make_group(group)?;
            let members = members
                .iter()
                .map(|m| Arrangement::parse(&g, m))
                .collect::<Result<Vec<_>, _>>()?;
            let family = TupleFamily::new(members)?;
            let claimed = k.unwrap_or(g.order() - 1);
            check_family(&family, claimed)?;
            Ok(roman_k(&family) as u64)
        }
    }
}
