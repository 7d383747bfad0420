//! Backtracking searches for pseudoterraces and tuples, and the prime sweep
//! over primitive root constructions.
//!
//! Every search fixes the first entry of each arrangement to the identity.
//! Quotient triangles do not change under left translation, so this loses
//! no solutions; witnesses are the canonical identity-first representatives.

mod backtrack;
mod sweep;
mod witness;

use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;

use crate::design::{balance_report, design_from_tuple};
use crate::error::{Error, Result};
use crate::group::{all_automorphisms, Automorphism, Element, FiniteGroup};
use crate::triangle::{
    expand_pseudoterrace, pseudoterrace_k, roman_k, same_group, Arrangement, TupleFamily,
};

pub use sweep::{sweep_primes, sweep_with, SweepBest, SweepConfig, SweepRow, SWEEP_P_LIMIT};
pub use witness::{verify_table_witness, TableWitness, WitnessError};

/// Default node budget for a single search.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;
/// Largest group searched for Vatican pseudoterraces unless overridden.
pub const DEFAULT_VATICAN_ORDER_BOUND: usize = 18;
/// Largest group searched for non-Vatican pseudoterraces unless overridden.
pub const DEFAULT_ORDER_BOUND: usize = 20;
/// Largest group searched for tuples unless overridden.
pub const DEFAULT_TUPLE_ORDER_BOUND: usize = 12;
/// Above this order, order-`ℓ` automorphisms are not reduced by conjugacy.
pub const CONJUGACY_REDUCTION_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Roman-k for the given `k`.
    Roman(usize),
    /// Roman-(t-1).
    Vatican,
}

impl Target {
    pub fn resolve(self, t: usize) -> usize {
        match self {
            Target::Roman(k) => k,
            Target::Vatican => t.saturating_sub(1),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchMode {
    /// Pseudoterraces for one automorphism, whose order must equal the fold.
    Pseudoterrace(Automorphism),
    /// Pseudoterraces for every automorphism of order equal to the fold.
    AnyAutomorphism,
    /// `ℓ`-tuples searched jointly; `fixed` members are kept as given and the
    /// remaining ones are searched in non-decreasing lexicographic order.
    Tuple { fixed: Vec<Arrangement> },
}

#[derive(Debug, Clone)]
pub struct SearchLimits {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub max_witnesses: Option<usize>,
    /// Worker threads; `0` means available parallelism.
    pub workers: usize,
    /// Overrides the mode's default group order bound.
    pub max_order: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: Some(DEFAULT_NODE_BUDGET),
            time_budget: None,
            max_witnesses: None,
            workers: 0,
            max_order: None,
        }
    }
}

impl SearchLimits {
    fn workers(&self) -> usize {
        if self.workers == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.workers
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub group: Arc<FiniteGroup>,
    pub fold: usize,
    pub target: Target,
    pub mode: SearchMode,
    pub limits: SearchLimits,
    /// Restrict `a_2` to one representative per orbit of the automorphisms
    /// normalizing `<α>`. Witnesses are then canonical representatives only;
    /// a complete search with none still proves nonexistence.
    pub reduce_symmetry: bool,
}

impl SearchSpec {
    pub fn new(group: &Arc<FiniteGroup>, fold: usize, target: Target, mode: SearchMode) -> Result<Self> {
        let t = group.order();
        if fold == 0 {
            return Err(Error::InvalidParameter("fold must be at least 1".into()));
        }
        let k = target.resolve(t);
        if t >= 2 && (k == 0 || k > t - 1) {
            return Err(Error::InvalidParameter(format!(
                "target balance {k} outside 1..={}",
                t - 1
            )));
        }
        match &mode {
            SearchMode::Pseudoterrace(alpha) => {
                same_group(group, alpha.group())?;
                if alpha.order() != fold {
                    return Err(Error::InvalidParameter(format!(
                        "automorphism has order {}, fold is {fold}",
                        alpha.order()
                    )));
                }
            }
            SearchMode::Tuple { fixed } => {
                if fixed.len() > fold {
                    return Err(Error::InvalidParameter(format!(
                        "{} fixed members exceed fold {fold}",
                        fixed.len()
                    )));
                }
                for a in fixed {
                    same_group(group, a.group())?;
                }
            }
            SearchMode::AnyAutomorphism => {}
        }
        Ok(SearchSpec {
            group: group.clone(),
            fold,
            target,
            mode,
            limits: SearchLimits::default(),
            reduce_symmetry: false,
        })
    }

    pub fn with_symmetry_reduction(mut self) -> Self {
        self.reduce_symmetry = true;
        self
    }

    pub fn with_limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn k(&self) -> usize {
        self.target.resolve(self.group.order())
    }

    fn order_bound(&self) -> usize {
        self.limits.max_order.unwrap_or(match (&self.mode, self.target) {
            (SearchMode::Tuple { .. }, _) => DEFAULT_TUPLE_ORDER_BOUND,
            (_, Target::Vatican) => DEFAULT_VATICAN_ORDER_BOUND,
            _ => DEFAULT_ORDER_BOUND,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Pseudoterrace {
        arrangement: Arrangement,
        automorphism: Automorphism,
    },
    Tuple(TupleFamily),
}

impl Witness {
    pub fn family(&self) -> TupleFamily {
        match self {
            Witness::Pseudoterrace {
                arrangement,
                automorphism,
            } => expand_pseudoterrace(arrangement, automorphism)
                .expect("witness arrangement and automorphism share a group"),
            Witness::Tuple(f) => f.clone(),
        }
    }

    /// Balance by the triangle scan of the witness itself.
    pub fn k(&self) -> usize {
        match self {
            Witness::Pseudoterrace {
                arrangement,
                automorphism,
            } => pseudoterrace_k(arrangement, automorphism).expect("same group"),
            Witness::Tuple(f) => roman_k(f),
        }
    }

    /// Re-checks the witness at balance `k` through the triangle scan, the
    /// expanded family, and the design-level counts.
    pub fn verify(&self, k: usize) -> bool {
        let family = self.family();
        let design_k = balance_report(&design_from_tuple(&family)).map(|r| r.max_k);
        self.k() >= k && roman_k(&family) >= k && design_k.is_ok_and(|d| d >= k)
    }

    pub fn describe(&self) -> String {
        match self {
            Witness::Pseudoterrace {
                arrangement,
                automorphism,
            } => format!("({arrangement}) under {}", automorphism.spec_string()),
            Witness::Tuple(f) => f
                .members()
                .iter()
                .map(|m| format!("({m})"))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// The whole space was explored; the witness list is exhaustive.
    Complete,
    /// Stopped after the requested number of witnesses.
    WitnessLimit,
    /// Ran out of nodes or time; says nothing about nonexistence.
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub witnesses: Vec<Witness>,
    pub status: SearchStatus,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn proves_nonexistence(&self) -> bool {
        self.status == SearchStatus::Complete && self.witnesses.is_empty()
    }
}

fn check_order(spec: &SearchSpec) -> Result<()> {
    let t = spec.group.order();
    let bound = spec.order_bound();
    if t > bound {
        return Err(Error::OrderTooLarge { order: t, max: bound });
    }
    Ok(())
}

/// Pseudoterraces of fold `ℓ` and balance `k`, in lexicographic order of
/// (automorphism, arrangement).
pub fn search_pseudoterraces(spec: &SearchSpec) -> Result<SearchOutcome> {
    check_order(spec)?;
    let autos = match &spec.mode {
        SearchMode::Pseudoterrace(alpha) => vec![alpha.clone()],
        SearchMode::AnyAutomorphism => automorphisms_of_order(&spec.group, spec.fold)?,
        SearchMode::Tuple { .. } => {
            return Err(Error::InvalidParameter(
                "tuple mode is handled by search_tuples".into(),
            ))
        }
    };
    let mut out = SearchOutcome {
        witnesses: Vec::new(),
        status: SearchStatus::Complete,
        nodes: 0,
    };
    for alpha in autos {
        let remaining = spec
            .limits
            .max_witnesses
            .map(|l| l.saturating_sub(out.witnesses.len()));
        let nodes = spec.limits.node_budget.map(|b| b.saturating_sub(out.nodes));
        let budget =
            backtrack::Budget::new(nodes, spec.limits.time_budget, remaining, spec.limits.workers());
        let problem = backtrack::Problem {
            group: &spec.group,
            k: spec.k(),
            members: 1,
            class: alpha.cycle_reps().to_vec(),
            cap: alpha.cycle_lens().iter().map(|&l| l as u32).collect(),
            fixed: vec![],
            second: if spec.reduce_symmetry {
                Some(second_entry_representatives(&alpha)?)
            } else {
                None
            },
        };
        let raw = backtrack::run(&problem, &budget);
        out.nodes += raw.nodes;
        for mut seqs in raw.witnesses {
            let arrangement = Arrangement::from_trusted(&spec.group, seqs.remove(0));
            out.witnesses.push(Witness::Pseudoterrace {
                arrangement,
                automorphism: alpha.clone(),
            });
        }
        if raw.truncated {
            out.status = SearchStatus::BudgetExhausted;
            return Ok(out);
        }
        if raw.limit_reached {
            out.status = SearchStatus::WitnessLimit;
            return Ok(out);
        }
    }
    Ok(out)
}

/// Roman-k `ℓ`-tuples searched member by member.
pub fn search_tuples(spec: &SearchSpec) -> Result<SearchOutcome> {
    check_order(spec)?;
    let SearchMode::Tuple { fixed } = &spec.mode else {
        return Err(Error::InvalidParameter(
            "search_tuples needs tuple mode".into(),
        ));
    };
    let t = spec.group.order();
    let fixed: Vec<Vec<usize>> = fixed.iter().map(|a| a.normalized().as_slice().to_vec()).collect();
    let problem = backtrack::Problem {
        group: &spec.group,
        k: spec.k(),
        members: spec.fold,
        class: (0..t).collect(),
        cap: vec![spec.fold as u32; t],
        fixed,
        second: None,
    };
    let budget = backtrack::Budget::new(
        spec.limits.node_budget,
        spec.limits.time_budget,
        spec.limits.max_witnesses,
        spec.limits.workers(),
    );
    let raw = backtrack::run(&problem, &budget);
    let witnesses = raw
        .witnesses
        .into_iter()
        .map(|seqs| {
            let members = seqs
                .into_iter()
                .map(|s| Arrangement::from_trusted(&spec.group, s))
                .collect();
            Witness::Tuple(TupleFamily::new(members).expect("same group"))
        })
        .collect();
    Ok(SearchOutcome {
        witnesses,
        status: if raw.truncated {
            SearchStatus::BudgetExhausted
        } else if raw.limit_reached {
            SearchStatus::WitnessLimit
        } else {
            SearchStatus::Complete
        },
        nodes: raw.nodes,
    })
}

/// Smallest element of each orbit on the non-identity elements of the
/// automorphisms `β` with `β·α·β⁻¹ ∈ <α>`. Such a `β` maps `α`-cycles onto
/// `α`-cycles of the same size, so it maps pseudoterraces to pseudoterraces
/// and fixes the identity.
pub fn second_entry_representatives(alpha: &Automorphism) -> Result<Vec<Element>> {
    let group = alpha.group();
    let powers: Vec<Automorphism> = (0..alpha.order()).map(|i| alpha.power(i)).collect();
    let normalizer: Vec<Automorphism> = all_automorphisms(group)?
        .into_iter()
        .filter(|b| powers.contains(&b.compose(alpha).compose(&b.inverse())))
        .collect();
    let t = group.order();
    let mut seen = vec![false; t];
    let mut reps = Vec::new();
    for x in 1..t {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for b in &normalizer {
            seen[b.apply(x)] = true;
        }
    }
    Ok(reps)
}

/// Sizes rayon's global pool, used by the sweeps; `0` keeps the default.
/// Only the first call has an effect.
pub fn init_global_workers(workers: usize) {
    if workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
}

/// Dispatches on the spec's mode.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    match spec.mode {
        SearchMode::Tuple { .. } => search_tuples(spec),
        _ => search_pseudoterraces(spec),
    }
}

/// Order-`ℓ` automorphisms, one per conjugacy class in `Aut(G)` for groups of
/// order at most 12, all of them above that.
pub fn automorphisms_of_order(group: &Arc<FiniteGroup>, ell: usize) -> Result<Vec<Automorphism>> {
    let all = all_automorphisms(group)?;
    let of_order: Vec<Automorphism> = all.iter().filter(|a| a.order() == ell).cloned().collect();
    if group.order() > CONJUGACY_REDUCTION_BOUND {
        return Ok(of_order);
    }
    let mut reps: Vec<Automorphism> = Vec::new();
    let mut covered: Vec<Vec<usize>> = Vec::new();
    for alpha in of_order {
        if covered.contains(&alpha.permutation().to_vec()) {
            continue;
        }
        for beta in &all {
            let conj = beta.compose(&alpha).compose(&beta.inverse());
            let perm = conj.permutation().to_vec();
            if !covered.contains(&perm) {
                covered.push(perm);
            }
        }
        reps.push(alpha);
    }
    Ok(reps)
}
