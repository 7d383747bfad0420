//! Arrangements, quotient triangles, and the two balance scans built on them.
//!
//! For an arrangement `a = (a_1, ..., a_t)` line `T_j` of the quotient
//! triangle holds `a_i⁻¹·a_{i+j}` for `i = 1..t-j`. A family of `ℓ`
//! arrangements is Roman-k when every non-identity element occurs at most
//! `ℓ` times across the concatenated `j`-th lines, for each `j ≤ k`. A single
//! arrangement is a Roman-k pseudoterrace for an automorphism `α` when, in each
//! line `T_j` with `j ≤ k`, the members of every `α`-cycle `ḡ` occur at most
//! `|ḡ|` times in total.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Automorphism, Element, FiniteGroup};

/// An ordering of all elements of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    group: Arc<FiniteGroup>,
    seq: Vec<Element>,
}

impl Arrangement {
    pub fn new(group: &Arc<FiniteGroup>, seq: Vec<Element>) -> Result<Self> {
        let t = group.order();
        let not = |reason: String| Error::NotAnArrangement { expected: t, reason };
        if seq.len() != t {
            return Err(not(format!("length {}", seq.len())));
        }
        let mut seen = vec![false; t];
        for &x in &seq {
            if x >= t {
                return Err(not(format!("element index {x} out of range")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(not(format!(
                    "`{}` appears more than once",
                    group.element_name(x)
                )));
            }
        }
        Ok(Arrangement {
            group: group.clone(),
            seq,
        })
    }

    /// Comma-separated element tokens in the group's notation.
    pub fn parse(group: &Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let seq = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|tok| group.parse_element(tok))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, seq)
    }

    pub(crate) fn from_trusted(group: &Arc<FiniteGroup>, seq: Vec<Element>) -> Self {
        debug_assert_eq!(seq.len(), group.order());
        Arrangement {
            group: group.clone(),
            seq,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `g·a`.
    pub fn left_translate(&self, g: Element) -> Arrangement {
        let seq = self.seq.iter().map(|&x| self.group.op(g, x)).collect();
        Arrangement::from_trusted(&self.group, seq)
    }

    /// The left translate that starts at the identity.
    pub fn normalized(&self) -> Arrangement {
        match self.seq.first() {
            Some(&first) => self.left_translate(self.group.inv(first)),
            None => self.clone(),
        }
    }

    pub fn map(&self, alpha: &Automorphism) -> Result<Arrangement> {
        same_group(&self.group, alpha.group())?;
        let seq = self.seq.iter().map(|&x| alpha.apply(x)).collect();
        Ok(Arrangement::from_trusted(&self.group, seq))
    }

    pub fn reversed(&self) -> Arrangement {
        let seq = self.seq.iter().rev().copied().collect();
        Arrangement::from_trusted(&self.group, seq)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .seq
            .iter()
            .map(|&x| self.group.element_name(x))
            .collect();
        write!(f, "{}", names.join(","))
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch(
            a.descriptor().to_string(),
            b.descriptor().to_string(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTriangle {
    lines: Vec<Vec<Element>>,
}

impl QuotientTriangle {
    /// Line `T_j`, `1 ≤ j ≤ t-1`.
    pub fn line(&self, j: usize) -> &[Element] {
        &self.lines[j - 1]
    }

    pub fn lines(&self) -> &[Vec<Element>] {
        &self.lines
    }

    pub fn depth(&self) -> usize {
        self.lines.len()
    }
}

pub fn quotient_triangle(arrangement: &Arrangement) -> QuotientTriangle {
    let g = arrangement.group();
    let a = arrangement.as_slice();
    let t = a.len();
    let lines = (1..t)
        .map(|j| (0..t - j).map(|i| g.left_quotient(a[i], a[i + j])).collect())
        .collect();
    QuotientTriangle { lines }
}

/// `ℓ` arrangements of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleFamily {
    members: Vec<Arrangement>,
}

impl TupleFamily {
    pub fn new(members: Vec<Arrangement>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        for m in &members[1..] {
            same_group(first.group(), m.group())?;
        }
        Ok(TupleFamily { members })
    }

    pub fn singleton(a: Arrangement) -> Self {
        TupleFamily { members: vec![a] }
    }

    pub fn members(&self) -> &[Arrangement] {
        &self.members
    }

    pub fn fold(&self) -> usize {
        self.members.len()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.members[0].group()
    }

    /// `U_j`: the concatenated `j`-th lines of the members' triangles.
    pub fn concatenated_line(&self, j: usize) -> Vec<Element> {
        let g = self.group();
        let mut out = Vec::with_capacity(self.fold() * (g.order() - j));
        for m in &self.members {
            let a = m.as_slice();
            out.extend((0..a.len() - j).map(|i| g.left_quotient(a[i], a[i + j])));
        }
        out
    }

    pub fn map(&self, alpha: &Automorphism) -> Result<TupleFamily> {
        let members = self
            .members
            .iter()
            .map(|m| m.map(alpha))
            .collect::<Result<_>>()?;
        Ok(TupleFamily { members })
    }
}

/// Largest `k` for which the family is a Roman-k `ℓ`-tuple; `t-1` means
/// Vatican, `0` means line 1 already fails.
pub fn roman_k(family: &TupleFamily) -> usize {
    let g = family.group();
    let t = g.order();
    let cap = family.fold();
    let mut counts = vec![0usize; t];
    for j in 1..t {
        counts.iter_mut().for_each(|c| *c = 0);
        for m in family.members() {
            let a = m.as_slice();
            for i in 0..t - j {
                let q = g.left_quotient(a[i], a[i + j]);
                counts[q] += 1;
                if counts[q] > cap {
                    return j - 1;
                }
            }
        }
    }
    t.saturating_sub(1)
}

/// Largest `k` for which `arrangement` is a Roman-k pseudoterrace with
/// respect to `alpha`.
pub fn pseudoterrace_k(arrangement: &Arrangement, alpha: &Automorphism) -> Result<usize> {
    same_group(arrangement.group(), alpha.group())?;
    Ok(pseudoterrace_k_unchecked(
        arrangement.group(),
        arrangement.as_slice(),
        alpha.cycle_reps(),
        alpha.cycle_lens(),
    ))
}

pub(crate) fn pseudoterrace_k_unchecked(
    g: &FiniteGroup,
    a: &[Element],
    reps: &[Element],
    lens: &[usize],
) -> usize {
    let t = a.len();
    let mut counts = vec![0usize; t];
    for j in 1..t {
        for i in 0..t - j {
            let rep = reps[g.left_quotient(a[i], a[i + j])];
            counts[rep] += 1;
            if counts[rep] > lens[rep] {
                return j - 1;
            }
        }
        for i in 0..t - j {
            counts[reps[g.left_quotient(a[i], a[i + j])]] = 0;
        }
    }
    t.saturating_sub(1)
}

/// `(α^0(a), α^1(a), ..., α^{ℓ-1}(a))` with `ℓ` the order of `α`.
pub fn expand_pseudoterrace(arrangement: &Arrangement, alpha: &Automorphism) -> Result<TupleFamily> {
    same_group(arrangement.group(), alpha.group())?;
    let mut members = Vec::with_capacity(alpha.order());
    let mut current = arrangement.clone();
    for _ in 0..alpha.order() {
        let next = current.map(alpha)?;
        members.push(current);
        current = next;
    }
    TupleFamily::new(members)
}

/// `a` together with its reverse; a Roman pair whenever `a` is a terrace.
pub fn reverse_pair(arrangement: &Arrangement) -> Result<TupleFamily> {
    let inversion =
        Automorphism::inversion(arrangement.group()).map_err(|_| Error::NotATerrace)?;
    if pseudoterrace_k(arrangement, &inversion)? < 1 {
        return Err(Error::NotATerrace);
    }
    TupleFamily::new(vec![arrangement.clone(), arrangement.reversed()])
}
