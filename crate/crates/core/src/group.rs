//! Small finite groups encoded as dense element indices.
//!
//! Every group has its elements numbered `0..t` with `0` the identity.
//!
//! * `Z_n`: residues, index = residue.
//! * `Z_{n1} x ... x Z_{nk}`: mixed radix with the first factor most
//!   significant, so `Z2^2` lists `00, 01, 10, 11`.
//! * `D_{2m}`: `u^i` is index `i`, `u^i v` is index `m + i`.
//! * `Q_8`: the same two-coset layout with `m = 4`.
//!
//! Element names follow that layout: decimal residues, concatenated digits
//! for products (dot separated once a factor exceeds 10), and words such as
//! `e`, `u2`, `u3v` for the presented groups.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};

pub type Element = usize;

/// Largest order `make_group` accepts unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 10_000;
/// Non-cyclic groups up to this order get a precomputed Cayley table.
pub const TABLE_LIMIT: usize = 256;
/// Largest order for brute-force automorphism enumeration.
pub const ENUMERATION_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Cyclic(usize),
    /// Dihedral group, carrying its order `2m`.
    Dihedral(usize),
    Quaternion,
    /// Direct product of cyclic groups, each factor of order at least 2.
    Product(Vec<usize>),
}

impl GroupDescriptor {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupDescriptor::Cyclic(n) | GroupDescriptor::Dihedral(n) => Some(*n),
            GroupDescriptor::Quaternion => Some(8),
            GroupDescriptor::Product(fs) => fs
                .iter()
                .try_fold(1usize, |acc, &f| acc.checked_mul(f)),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = || Error::UnsupportedGroup(self.to_string());
        match self {
            GroupDescriptor::Cyclic(n) if *n == 0 => Err(bad()),
            GroupDescriptor::Dihedral(n) if *n < 4 || n % 2 != 0 => Err(bad()),
            GroupDescriptor::Product(fs) if fs.len() < 2 || fs.iter().any(|&f| f < 2) => {
                Err(bad())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "Z{n}"),
            GroupDescriptor::Dihedral(n) => write!(f, "D{n}"),
            GroupDescriptor::Quaternion => write!(f, "Q8"),
            GroupDescriptor::Product(fs) => {
                let mut first = true;
                let mut i = 0;
                while i < fs.len() {
                    let mut run = 1;
                    while i + run < fs.len() && fs[i + run] == fs[i] {
                        run += 1;
                    }
                    if !first {
                        write!(f, "x")?;
                    }
                    first = false;
                    if run > 1 {
                        write!(f, "Z{}^{}", fs[i], run)?;
                    } else {
                        write!(f, "Z{}", fs[i])?;
                    }
                    i += run;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Accepts `Z6`, `Z4xZ2`, `Z2^3`, `Z3xZ3`, `D8`, `Q8`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let unsupported = || Error::UnsupportedGroup(s.to_string());
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        let cleaned = cleaned.replace('×', "x");
        if cleaned.is_empty() {
            return Err(unsupported());
        }
        if let Some(rest) = cleaned.strip_prefix('d') {
            let n: usize = rest.parse().map_err(|_| unsupported())?;
            let d = GroupDescriptor::Dihedral(n);
            d.validate().map_err(|_| unsupported())?;
            return Ok(d);
        }
        if cleaned == "q8" {
            return Ok(GroupDescriptor::Quaternion);
        }
        let mut factors = Vec::new();
        for part in cleaned.split('x') {
            let body = part.strip_prefix('z').ok_or_else(unsupported)?;
            let (base, power) = match body.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| unsupported())?),
                None => (body, 1),
            };
            let n: usize = base.parse().map_err(|_| unsupported())?;
            if power == 0 {
                return Err(unsupported());
            }
            factors.extend(std::iter::repeat(n).take(power));
        }
        let d = if factors.len() == 1 {
            GroupDescriptor::Cyclic(factors[0])
        } else {
            GroupDescriptor::Product(factors)
        };
        d.validate().map_err(|_| unsupported())?;
        Ok(d)
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Cyclic,
    Table { mul: Vec<u32>, inv: Vec<u32> },
    Formula,
}

/// A finite group of order `t` on the element indices `0..t`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    descriptor: GroupDescriptor,
    order: usize,
    kind: Kind,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for FiniteGroup {}

pub fn make_group(descriptor: &GroupDescriptor) -> Result<Arc<FiniteGroup>> {
    make_group_with_limit(descriptor, DEFAULT_MAX_ORDER)
}

pub fn make_group_with_limit(
    descriptor: &GroupDescriptor,
    max_order: usize,
) -> Result<Arc<FiniteGroup>> {
    descriptor.validate()?;
    let order = descriptor.order().ok_or(Error::OrderTooLarge {
        order: usize::MAX,
        max: max_order,
    })?;
    if order > max_order {
        return Err(Error::OrderTooLarge { order, max: max_order });
    }
    let mut group = FiniteGroup {
        descriptor: descriptor.clone(),
        order,
        kind: if matches!(descriptor, GroupDescriptor::Cyclic(_)) {
            Kind::Cyclic
        } else {
            Kind::Formula
        },
    };
    if matches!(group.kind, Kind::Formula) && order <= TABLE_LIMIT {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(group.formula_op(a, b) as u32);
            }
        }
        let inv = (0..order).map(|a| group.formula_inv(a) as u32).collect();
        group.kind = Kind::Table { mul, inv };
    }
    Ok(Arc::new(group))
}

impl FiniteGroup {
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn is_cyclic_family(&self) -> bool {
        matches!(self.kind, Kind::Cyclic)
    }

    pub fn is_abelian(&self) -> bool {
        match &self.descriptor {
            GroupDescriptor::Cyclic(_) | GroupDescriptor::Product(_) => true,
            GroupDescriptor::Dihedral(n) => *n <= 4,
            GroupDescriptor::Quaternion => false,
        }
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        match &self.kind {
            Kind::Cyclic => {
                let s = a + b;
                if s >= self.order {
                    s - self.order
                } else {
                    s
                }
            }
            Kind::Table { mul, .. } => mul[a * self.order + b] as Element,
            Kind::Formula => self.formula_op(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        match &self.kind {
            Kind::Cyclic => {
                if a == 0 {
                    0
                } else {
                    self.order - a
                }
            }
            Kind::Table { inv, .. } => inv[a] as Element,
            Kind::Formula => self.formula_inv(a),
        }
    }

    /// `a⁻¹·b`.
    #[inline]
    pub fn left_quotient(&self, a: Element, b: Element) -> Element {
        match &self.kind {
            Kind::Cyclic => {
                if b >= a {
                    b - a
                } else {
                    b + self.order - a
                }
            }
            _ => self.op(self.inv(a), b),
        }
    }

    pub fn element_order(&self, g: Element) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, g);
            k += 1;
        }
        k
    }

    /// Generators of the presentation: `1` for `Z_n`, the unit vectors for
    /// products, `u` and `v` for dihedral and quaternion groups.
    pub fn generators(&self) -> Vec<Element> {
        match &self.descriptor {
            GroupDescriptor::Cyclic(n) => {
                if *n == 1 {
                    vec![]
                } else {
                    vec![1]
                }
            }
            GroupDescriptor::Product(fs) => {
                let mut gens = Vec::with_capacity(fs.len());
                let mut place = 1;
                for &f in fs.iter().rev() {
                    gens.push(place);
                    place *= f;
                }
                gens.reverse();
                gens
            }
            GroupDescriptor::Dihedral(n) => vec![1, n / 2],
            GroupDescriptor::Quaternion => vec![1, 4],
        }
    }

    fn formula_op(&self, a: Element, b: Element) -> Element {
        match &self.descriptor {
            GroupDescriptor::Cyclic(n) => (a + b) % n,
            GroupDescriptor::Product(fs) => {
                let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
                for &f in fs.iter().rev() {
                    out += ((a % f + b % f) % f) * place;
                    a /= f;
                    b /= f;
                    place *= f;
                }
                out
            }
            GroupDescriptor::Dihedral(n) => presented_op(n / 2, false, a, b),
            GroupDescriptor::Quaternion => presented_op(4, true, a, b),
        }
    }

    fn formula_inv(&self, a: Element) -> Element {
        match &self.descriptor {
            GroupDescriptor::Cyclic(n) => (n - a % n) % n,
            GroupDescriptor::Product(fs) => {
                let (mut a, mut place, mut out) = (a, 1, 0);
                for &f in fs.iter().rev() {
                    out += ((f - a % f) % f) * place;
                    a /= f;
                    place *= f;
                }
                out
            }
            GroupDescriptor::Dihedral(n) => {
                let m = n / 2;
                if a < m {
                    (m - a) % m
                } else {
                    a
                }
            }
            GroupDescriptor::Quaternion => {
                if a < 4 {
                    (4 - a) % 4
                } else {
                    4 + (a - 4 + 2) % 4
                }
            }
        }
    }

    pub fn element_name(&self, g: Element) -> String {
        match &self.descriptor {
            GroupDescriptor::Cyclic(_) => g.to_string(),
            GroupDescriptor::Product(fs) => {
                let mut digits = Vec::with_capacity(fs.len());
                let mut x = g;
                for &f in fs.iter().rev() {
                    digits.push(x % f);
                    x /= f;
                }
                digits.reverse();
                if fs.iter().all(|&f| f <= 10) {
                    digits.iter().map(|d| d.to_string()).collect()
                } else {
                    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                    format!("({})", parts.join("."))
                }
            }
            GroupDescriptor::Dihedral(n) => presented_name(n / 2, g),
            GroupDescriptor::Quaternion => presented_name(4, g),
        }
    }

    pub fn parse_element(&self, token: &str) -> Result<Element> {
        let bad = || Error::BadElement {
            token: token.to_string(),
            group: self.descriptor.to_string(),
        };
        let tok = token.trim();
        match &self.descriptor {
            GroupDescriptor::Cyclic(n) => {
                let v: usize = tok.parse().map_err(|_| bad())?;
                if v < *n {
                    Ok(v)
                } else {
                    Err(bad())
                }
            }
            GroupDescriptor::Product(fs) => {
                let inner = tok.trim_start_matches('(').trim_end_matches(')');
                let digits: Vec<usize> = if inner.contains('.') {
                    inner
                        .split('.')
                        .map(|d| d.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad())?
                } else if fs.iter().all(|&f| f <= 10) {
                    inner
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize))
                        .collect::<Option<_>>()
                        .ok_or_else(bad)?
                } else {
                    return Err(bad());
                };
                if digits.len() != fs.len() || digits.iter().zip(fs).any(|(d, f)| d >= f) {
                    return Err(bad());
                }
                Ok(digits.iter().zip(fs).fold(0, |acc, (d, f)| acc * f + d))
            }
            GroupDescriptor::Dihedral(n) => parse_presented(n / 2, tok).ok_or_else(bad),
            GroupDescriptor::Quaternion => parse_presented(4, tok).ok_or_else(bad),
        }
    }
}

fn presented_op(m: usize, quaternion: bool, a: Element, b: Element) -> Element {
    let (i, ra) = (a % m, a >= m);
    let (j, rb) = (b % m, b >= m);
    let mut rot = if ra { i + m - j } else { i + j };
    if quaternion && ra && rb {
        rot += 2;
    }
    rot %= m;
    if ra != rb {
        m + rot
    } else {
        rot
    }
}

fn presented_name(m: usize, g: Element) -> String {
    let (i, refl) = (g % m, g >= m);
    let mut s = match i {
        0 => String::new(),
        1 => "u".to_string(),
        _ => format!("u{i}"),
    };
    if refl {
        s.push('v');
    }
    if s.is_empty() {
        s.push('e');
    }
    s
}

fn parse_presented(m: usize, token: &str) -> Option<Element> {
    let word: String = token
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '^' && *c != '*')
        .flat_map(char::to_lowercase)
        .collect();
    if word == "e" || word == "1" {
        return Some(0);
    }
    let mut rest = word.as_str();
    let mut rot = 0;
    if let Some(after) = rest.strip_prefix('u') {
        let digits: String = after.chars().take_while(|c| c.is_ascii_digit()).collect();
        rot = if digits.is_empty() { 1 } else { digits.parse().ok()? };
        rest = &after[digits.len()..];
    }
    let refl = match rest {
        "" => false,
        "v" => true,
        _ => return None,
    };
    if word.is_empty() {
        return None;
    }
    Some(if refl { m + rot % m } else { rot % m })
}

/// A group automorphism stored as a full permutation of element indices,
/// with its cycle structure precomputed.
#[derive(Debug, Clone)]
pub struct Automorphism {
    group: Arc<FiniteGroup>,
    perm: Vec<Element>,
    order: usize,
    cycle_rep: Vec<Element>,
    cycle_len: Vec<usize>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.perm == other.perm
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    fn from_trusted(group: Arc<FiniteGroup>, perm: Vec<Element>) -> Self {
        let t = perm.len();
        let mut cycle_rep = vec![usize::MAX; t];
        let mut cycle_len = vec![0; t];
        let mut order = 1usize;
        for start in 0..t {
            if cycle_rep[start] != usize::MAX {
                continue;
            }
            let mut members = vec![start];
            let mut x = perm[start];
            while x != start {
                members.push(x);
                x = perm[x];
            }
            let rep = *members.iter().min().unwrap();
            for &y in &members {
                cycle_rep[y] = rep;
                cycle_len[y] = members.len();
            }
            let len = members.len() as u64;
            order = (order as u64 / arith::gcd(order as u64, len) * len) as usize;
        }
        Automorphism {
            group,
            perm,
            order,
            cycle_rep,
            cycle_len,
        }
    }

    pub fn identity(group: &Arc<FiniteGroup>) -> Self {
        Self::from_trusted(group.clone(), group.elements().collect())
    }

    /// Validates that `perm` is a bijective homomorphism.
    pub fn from_permutation(group: &Arc<FiniteGroup>, perm: Vec<Element>) -> Result<Self> {
        let t = group.order();
        if perm.len() != t || perm.iter().any(|&x| x >= t) {
            return Err(Error::NotBijective);
        }
        if perm[0] != 0 {
            return Err(Error::NotHomomorphism);
        }
        for g in group.elements() {
            for &s in &group.generators() {
                if perm[group.op(g, s)] != group.op(perm[g], perm[s]) {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        let mut seen = vec![false; t];
        for &x in &perm {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotBijective);
            }
        }
        Ok(Self::from_trusted(group.clone(), perm))
    }

    /// Extends an assignment of images to the presentation's generators.
    /// `images[i]` is the image of `group.generators()[i]`.
    pub fn from_generator_images(group: &Arc<FiniteGroup>, images: &[Element]) -> Result<Self> {
        let perm = extend_generator_images(group, images)?;
        Ok(Self::from_trusted(group.clone(), perm))
    }

    /// Parses `1->3` or `u->u3v, v->v` (also `↦`) against `group`'s notation.
    pub fn parse(group: &Arc<FiniteGroup>, spec: &str) -> Result<Self> {
        let gens = group.generators();
        let mut images = vec![None; gens.len()];
        let normalized = spec.replace('↦', "->");
        for item in normalized.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (src, dst) = item
                .split_once("->")
                .ok_or_else(|| Error::BadAutomorphismSpec(item.to_string()))?;
            let src = group.parse_element(src)?;
            let dst = group.parse_element(dst)?;
            let slot = gens.iter().position(|&g| g == src).ok_or_else(|| {
                Error::BadAutomorphismSpec(format!(
                    "`{}` is not a generator of {}",
                    group.element_name(src),
                    group.descriptor()
                ))
            })?;
            if images[slot].replace(dst).is_some() {
                return Err(Error::BadAutomorphismSpec(format!(
                    "generator `{}` assigned twice",
                    group.element_name(src)
                )));
            }
        }
        let images: Vec<Element> = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    Error::BadAutomorphismSpec(format!(
                        "missing image for generator `{}`",
                        group.element_name(gens[i])
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Self::from_generator_images(group, &images)
    }

    /// `x ↦ r·x` on a cyclic group.
    pub fn multiplication(group: &Arc<FiniteGroup>, r: u64) -> Result<Self> {
        if !matches!(group.descriptor(), GroupDescriptor::Cyclic(_)) {
            return Err(Error::NotCyclic(group.descriptor().to_string()));
        }
        let t = group.order() as u64;
        if arith::gcd(r % t.max(1), t) != 1 && t > 1 {
            return Err(Error::NotAUnit(r));
        }
        let r = r % t.max(1);
        let perm = (0..t).map(|x| (x * r % t) as Element).collect();
        Ok(Self::from_trusted(group.clone(), perm))
    }

    /// `x ↦ x⁻¹`, an automorphism exactly when the group is abelian.
    pub fn inversion(group: &Arc<FiniteGroup>) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NotHomomorphism);
        }
        Ok(Self::from_trusted(
            group.clone(),
            group.elements().map(|g| group.inv(g)).collect(),
        ))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn permutation(&self) -> &[Element] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn apply(&self, g: Element) -> Element {
        self.perm[g]
    }

    pub fn apply_power(&self, g: Element, power: usize) -> Element {
        (0..power % self.order).fold(g, |x, _| self.perm[x])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let perm = other.perm.iter().map(|&x| self.perm[x]).collect();
        Self::from_trusted(self.group.clone(), perm)
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (x, &y) in self.perm.iter().enumerate() {
            perm[y] = x;
        }
        Self::from_trusted(self.group.clone(), perm)
    }

    pub fn power(&self, power: usize) -> Automorphism {
        let perm = self
            .group
            .elements()
            .map(|g| self.apply_power(g, power))
            .collect();
        Self::from_trusted(self.group.clone(), perm)
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// `{α^r(g) : 1 ≤ r ≤ ℓ}`, ascending.
    pub fn cycle_of(&self, g: Element) -> Vec<Element> {
        let mut out = vec![g];
        let mut x = self.perm[g];
        while x != g {
            out.push(x);
            x = self.perm[x];
        }
        out.sort_unstable();
        out
    }

    /// Cycles on the non-identity elements, ordered by their least member.
    pub fn cycles(&self) -> Vec<Vec<Element>> {
        (1..self.perm.len())
            .filter(|&g| self.cycle_rep[g] == g)
            .map(|g| self.cycle_of(g))
            .collect()
    }

    #[inline]
    pub fn cycle_rep(&self, g: Element) -> Element {
        self.cycle_rep[g]
    }

    #[inline]
    pub fn cycle_len(&self, g: Element) -> usize {
        self.cycle_len[g]
    }

    pub(crate) fn cycle_reps(&self) -> &[Element] {
        &self.cycle_rep
    }

    pub(crate) fn cycle_lens(&self) -> &[usize] {
        &self.cycle_len
    }

    /// Generator-image form, e.g. `u->u2, v->v`.
    pub fn spec_string(&self) -> String {
        self.group
            .generators()
            .iter()
            .map(|&g| {
                format!(
                    "{}->{}",
                    self.group.element_name(g),
                    self.group.element_name(self.perm[g])
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn extend_generator_images(group: &FiniteGroup, images: &[Element]) -> Result<Vec<Element>> {
    let gens = group.generators();
    if images.len() != gens.len() {
        return Err(Error::BadAutomorphismSpec(format!(
            "expected {} generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    let t = group.order();
    if images.iter().any(|&x| x >= t) {
        return Err(Error::BadAutomorphismSpec("image out of range".into()));
    }
    let mut map = vec![usize::MAX; t];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(g) = queue.pop_front() {
        for (&s, &img) in gens.iter().zip(images) {
            let h = group.op(g, s);
            let candidate = group.op(map[g], img);
            if map[h] == usize::MAX {
                map[h] = candidate;
                queue.push_back(h);
            } else if map[h] != candidate {
                return Err(Error::NotHomomorphism);
            }
        }
    }
    let mut seen = vec![false; t];
    for &x in &map {
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotBijective);
        }
    }
    Ok(map)
}

/// Every automorphism, found by brute force over generator images.
/// Sorted by permutation.
pub fn all_automorphisms(group: &Arc<FiniteGroup>) -> Result<Vec<Automorphism>> {
    let t = group.order();
    if t > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge(t));
    }
    let gens = group.generators();
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&g| {
            let ord = group.element_order(g);
            group
                .elements()
                .filter(|&x| group.element_order(x) == ord)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Element> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cands)| cands[c])
            .collect();
        if let Ok(perm) = extend_generator_images(group, &images) {
            out.push(Automorphism::from_trusted(group.clone(), perm));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort_by(|a, b| a.perm.cmp(&b.perm));
                out.dedup_by(|a, b| a.perm == b.perm);
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Orders of all automorphisms, ascending (a multiset).
pub fn automorphism_group_orders(group: &Arc<FiniteGroup>) -> Result<Vec<usize>> {
    let mut orders: Vec<usize> = all_automorphisms(group)?
        .iter()
        .map(Automorphism::order)
        .collect();
    orders.sort_unstable();
    Ok(orders)
}
