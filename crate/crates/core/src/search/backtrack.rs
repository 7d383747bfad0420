//! Depth-first construction of arrangements with incremental line counters.
//!
//! One engine serves both searches. It fills `members` arrangements one
//! position at a time, each starting at the identity. Every quotient
//! `a_i⁻¹·x` created by a placement within distance `k` is charged to the
//! counter of its class on that line; a class overflowing its cap prunes the
//! branch. Pseudoterraces use one member, classes = automorphism cycles and
//! caps = cycle lengths. Tuples use `ℓ` members, classes = single elements and
//! caps = `ℓ`, with members kept in non-decreasing lexicographic order.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::group::{Element, FiniteGroup};

const FLUSH_EVERY: u64 = 4096;

pub(crate) struct Problem<'a> {
    pub group: &'a FiniteGroup,
    pub k: usize,
    pub members: usize,
    pub class: Vec<usize>,
    pub cap: Vec<u32>,
    /// Prefilled members, each a full arrangement starting at the identity.
    pub fixed: Vec<Vec<Element>>,
    /// Allowed second entries of the first free member; `None` allows all.
    pub second: Option<Vec<Element>>,
}

pub(crate) struct Budget {
    pub nodes: Option<u64>,
    pub deadline: Option<Instant>,
    pub max_witnesses: Option<usize>,
    pub workers: usize,
}

impl Budget {
    pub fn new(
        nodes: Option<u64>,
        time: Option<Duration>,
        max_witnesses: Option<usize>,
        workers: usize,
    ) -> Self {
        Budget {
            nodes,
            deadline: time.map(|d| Instant::now() + d),
            max_witnesses,
            workers,
        }
    }
}

pub(crate) struct RawOutcome {
    pub witnesses: Vec<Vec<Vec<Element>>>,
    pub truncated: bool,
    pub limit_reached: bool,
    pub nodes: u64,
}

struct Shared<'b> {
    budget: &'b Budget,
    spent: AtomicU64,
    exhausted: AtomicBool,
    /// Witness counts of finished branches, for cancelling branches whose
    /// results can no longer make the cut.
    finished: Mutex<Vec<Option<usize>>>,
}

impl Shared<'_> {
    fn prefix_satisfied(&self, branch: usize) -> bool {
        let Some(limit) = self.budget.max_witnesses else {
            return false;
        };
        let finished = self.finished.lock().unwrap();
        let mut total = 0;
        for slot in finished.iter().take(branch) {
            match slot {
                Some(n) => total += n,
                None => return false,
            }
            if total >= limit {
                return true;
            }
        }
        false
    }
}

struct Worker<'p, 'b> {
    problem: &'p Problem<'p>,
    shared: &'p Shared<'b>,
    branch: usize,
    t: usize,
    seqs: Vec<Vec<Element>>,
    used: Vec<Vec<bool>>,
    counts: Vec<u32>,
    found: Vec<Vec<Vec<Element>>>,
    local_nodes: u64,
    total_nodes: u64,
    stop: bool,
    truncated: bool,
}

impl<'p, 'b> Worker<'p, 'b> {
    fn new(problem: &'p Problem<'p>, shared: &'p Shared<'b>, branch: usize) -> Self {
        let t = problem.group.order();
        let mut w = Worker {
            problem,
            shared,
            branch,
            t,
            seqs: vec![vec![0; t]; problem.members],
            used: vec![vec![false; t]; problem.members],
            counts: vec![0; (problem.k + 1) * t],
            found: Vec::new(),
            local_nodes: 0,
            total_nodes: 0,
            stop: false,
            truncated: false,
        };
        for m in 0..problem.members {
            w.used[m][0] = true;
        }
        w
    }

    /// Charges the fixed members; false when they already overflow.
    fn load_fixed(&mut self) -> bool {
        for (m, seq) in self.problem.fixed.iter().enumerate() {
            for (pos, &x) in seq.iter().enumerate().skip(1) {
                if !self.place(m, pos, x) {
                    return false;
                }
            }
        }
        true
    }

    #[inline]
    fn place(&mut self, m: usize, pos: usize, x: Element) -> bool {
        let t = self.t;
        let g = self.problem.group;
        let lo = pos.saturating_sub(self.problem.k);
        for i in (lo..pos).rev() {
            let j = pos - i;
            let c = self.problem.class[g.left_quotient(self.seqs[m][i], x)];
            let slot = &mut self.counts[j * t + c];
            *slot += 1;
            if *slot > self.problem.cap[c] {
                // roll back this and every closer placement charged so far
                for i2 in i..pos {
                    let j2 = pos - i2;
                    let c2 = self.problem.class[g.left_quotient(self.seqs[m][i2], x)];
                    self.counts[j2 * t + c2] -= 1;
                }
                return false;
            }
        }
        self.seqs[m][pos] = x;
        self.used[m][x] = true;
        true
    }

    #[inline]
    fn unplace(&mut self, m: usize, pos: usize) {
        let t = self.t;
        let g = self.problem.group;
        let x = self.seqs[m][pos];
        let lo = pos.saturating_sub(self.problem.k);
        for i in lo..pos {
            let c = self.problem.class[g.left_quotient(self.seqs[m][i], x)];
            self.counts[(pos - i) * t + c] -= 1;
        }
        self.used[m][x] = false;
    }

    fn tick(&mut self) {
        self.local_nodes += 1;
        if self.local_nodes < FLUSH_EVERY {
            return;
        }
        self.flush();
    }

    fn flush(&mut self) {
        let n = std::mem::take(&mut self.local_nodes);
        self.total_nodes += n;
        let spent = self.shared.spent.fetch_add(n, Ordering::Relaxed) + n;
        let over_nodes = self.shared.budget.nodes.is_some_and(|b| spent > b);
        let over_time = self
            .shared
            .budget
            .deadline
            .is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time || self.shared.exhausted.load(Ordering::Relaxed) {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            self.truncated = true;
            self.stop = true;
        } else if self.shared.prefix_satisfied(self.branch) {
            self.stop = true;
        }
    }

    /// Explores everything below the current partial state; `tied` tracks
    /// whether member `m` still equals member `m - 1` on positions `< pos`.
    fn dfs(&mut self, m: usize, pos: usize, tied: bool) {
        if self.stop {
            return;
        }
        if pos == self.t {
            if m + 1 == self.problem.members {
                self.found.push(self.seqs.clone());
                if self
                    .shared
                    .budget
                    .max_witnesses
                    .is_some_and(|l| self.found.len() >= l)
                {
                    self.stop = true;
                }
                return;
            }
            self.dfs(m + 1, 1, true);
            return;
        }
        let ordered = m > self.problem.fixed.len();
        let lower = if ordered && tied {
            self.seqs[m - 1][pos]
        } else {
            0
        };
        for x in lower.max(1)..self.t {
            if self.used[m][x] {
                continue;
            }
            self.tick();
            if self.stop {
                return;
            }
            if self.place(m, pos, x) {
                let still_tied = ordered && tied && x == self.seqs[m - 1][pos];
                self.dfs(m, pos + 1, still_tied);
                self.unplace(m, pos);
                if self.stop {
                    return;
                }
            }
        }
    }
}

/// Runs the search, partitioned on the second entry of the first free member.
pub(crate) fn run(problem: &Problem<'_>, budget: &Budget) -> RawOutcome {
    let t = problem.group.order();
    let first_free = problem.fixed.len();
    let shared = Shared {
        budget,
        spent: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        finished: Mutex::new(Vec::new()),
    };

    let mut probe = Worker::new(problem, &shared, 0);
    if !probe.load_fixed() {
        return RawOutcome {
            witnesses: vec![],
            truncated: false,
            limit_reached: false,
            nodes: 0,
        };
    }
    if first_free == problem.members || t == 1 {
        // nothing left to choose
        let seqs = probe.seqs.clone();
        return RawOutcome {
            witnesses: vec![seqs],
            truncated: false,
            limit_reached: budget.max_witnesses.is_some_and(|l| l <= 1),
            nodes: 1,
        };
    }
    // fixed members are not ordered against the free ones
    let branches: Vec<Element> = problem.second.clone().unwrap_or_else(|| (1..t).collect());
    *shared.finished.lock().unwrap() = vec![None; branches.len()];

    let explore = |(b, &x): (usize, &Element)| {
        let mut w = Worker::new(problem, &shared, b);
        if w.load_fixed() {
            w.tick();
            if !w.stop && w.place(first_free, 1, x) {
                w.dfs(first_free, 2, false);
            }
        }
        w.flush();
        if !w.truncated {
            shared.finished.lock().unwrap()[b] = Some(w.found.len());
        }
        (w.found, w.truncated, w.total_nodes)
    };

    let results: Vec<_> = if budget.workers <= 1 {
        branches.iter().enumerate().map(explore).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.workers)
            .build()
            .expect("thread pool");
        pool.install(|| branches.par_iter().enumerate().map(explore).collect())
    };

    let mut out = RawOutcome {
        witnesses: Vec::new(),
        truncated: false,
        limit_reached: false,
        nodes: results.iter().map(|r| r.2).sum(),
    };
    for (found, truncated, _) in results {
        for wit in found {
            if budget.max_witnesses.is_some_and(|l| out.witnesses.len() >= l) {
                break;
            }
            out.witnesses.push(wit);
        }
        if budget
            .max_witnesses
            .is_some_and(|l| out.witnesses.len() >= l)
        {
            out.limit_reached = true;
            return out;
        }
        if truncated {
            out.truncated = true;
            return out;
        }
    }
    out
}
