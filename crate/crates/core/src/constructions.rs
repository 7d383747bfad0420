//! Closed-form arrangements of cyclic groups.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{make_group, Automorphism, FiniteGroup, GroupDescriptor};
use crate::triangle::{pseudoterrace_k, quotient_triangle, Arrangement, TupleFamily};

fn cyclic(t: usize) -> Result<Arc<FiniteGroup>> {
    make_group(&GroupDescriptor::Cyclic(t))
}

/// The zigzag `(0, t-1, 1, t-2, 2, ...)` over `Z_t`.
pub fn walecki(t: usize) -> Result<Arrangement> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("walecki needs t >= 2, got {t}")));
    }
    let g = cyclic(t)?;
    let (mut lo, mut hi) = (0usize, t - 1);
    let mut seq = Vec::with_capacity(t);
    for i in 0..t {
        if i % 2 == 0 {
            seq.push(lo);
            lo += 1;
        } else {
            seq.push(hi);
            hi -= 1;
        }
    }
    Ok(Arrangement::from_trusted(&g, seq))
}

/// Takes alternately from the front and back of `values`.
fn zigzag(values: &[usize]) -> Vec<usize> {
    let (mut lo, mut hi) = (0usize, values.len());
    let mut out = Vec::with_capacity(values.len());
    while lo < hi {
        out.push(values[lo]);
        lo += 1;
        if lo < hi {
            hi -= 1;
            out.push(values[hi]);
        }
    }
    out
}

/// First `len` terms of `x_0, y_0, x_1, y_1, ...` with `x_i = x0 - 2i` and
/// `y_i = y0 + 2i`.
fn interleave(x0: i64, y0: i64, len: usize) -> Vec<i64> {
    (0..len)
        .map(|i| {
            let step = 2 * (i / 2) as i64;
            if i % 2 == 0 {
                x0 - step
            } else {
                y0 + step
            }
        })
        .collect()
}

/// Whether the first difference line hits one non-zero residue twice, misses
/// exactly one, and hits every other non-zero residue once.
pub fn is_near_roman(arrangement: &Arrangement) -> bool {
    let t = arrangement.len();
    let mut counts = vec![0usize; t];
    for &d in quotient_triangle(arrangement).line(1) {
        counts[d] += 1;
    }
    let nonzero = &counts[1..];
    nonzero.iter().filter(|&&c| c == 2).count() == 1
        && nonzero.iter().filter(|&&c| c == 0).count() == 1
        && nonzero.iter().all(|&c| c <= 2)
}

/// The three zigzag sequences giving a Roman triple over `Z_t` for odd
/// `t ≥ 5`. Each member is checked to be a permutation with the near-Roman
/// difference profile before it is returned.
pub fn prescott_triple(t: usize) -> Result<TupleFamily> {
    if t < 5 || t % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "prescott triple needs odd t >= 5, got {t}"
        )));
    }
    let g = cyclic(t)?;
    let odds: Vec<usize> = (1..t).step_by(2).collect();
    let evens: Vec<usize> = (2..t).step_by(2).collect();
    let sign: i64 = if (t / 2) % 2 == 0 { 1 } else { -1 };
    let ti = t as i64;
    let mid = ((ti + sign) / 2) as usize;

    let odd_zz = zigzag(&odds);
    let even_zz = zigzag(&evens);
    if odd_zz.last() != Some(&mid) || even_zz.last() != Some(&(mid + 1)) {
        return Err(Error::ConstructionIntegrity(format!(
            "zigzag endpoints for t = {t} do not meet at {mid} and {}",
            mid + 1
        )));
    }

    let mut a1 = vec![0];
    a1.extend(&odd_zz);
    a1.extend(even_zz.iter().rev());

    let mut a2 = vec![0];
    a2.extend(&even_zz);
    a2.extend(odd_zz.iter().rev());

    // (0, t-1; t-2, 2, t-4, 4, ..., A; B; C, ..., 3, t-5, 1, t-3)
    let run = (t - 3) / 2;
    let end_a = (ti - 1 + 2 * sign) / 2;
    let middle = (ti - 2 - sign) / 2;
    let end_c = (ti - 3 + 2 * sign) / 2;
    let first = interleave(ti - 2, 2, run);
    let second = interleave(ti - 3, 1, run);
    if first.last() != Some(&end_a) || second.last() != Some(&end_c) {
        return Err(Error::ConstructionIntegrity(format!(
            "third sequence segments for t = {t} end at {:?}/{:?}, expected {end_a}/{end_c}",
            first.last(),
            second.last()
        )));
    }
    let mut a3 = vec![0, t - 1];
    a3.extend(first.iter().map(|&x| x as usize));
    a3.push(middle as usize);
    a3.extend(second.iter().rev().map(|&x| x as usize));

    let mut members = Vec::with_capacity(3);
    for (i, seq) in [a1, a2, a3].into_iter().enumerate() {
        let a = Arrangement::new(&g, seq).map_err(|e| {
            Error::ConstructionIntegrity(format!("member {} for t = {t}: {e}", i + 1))
        })?;
        if !is_near_roman(&a) {
            return Err(Error::ConstructionIntegrity(format!(
                "member {} for t = {t} ({a}) lacks the near-Roman difference profile",
                i + 1
            )));
        }
        members.push(a);
    }
    TupleFamily::new(members)
}

fn check_prime_root(p: u64, rho: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 || !arith::is_primitive_root(rho, p) || rho % p == 1 {
        return Err(Error::NotPrimitiveRoot { p, rho });
    }
    Ok(())
}

/// `(0, ρ, ρ², ..., ρ^{p-1})` over `Z_p`.
pub fn primitive_root_arrangement(p: u64, rho: u64) -> Result<Arrangement> {
    check_prime_root(p, rho)?;
    let g = cyclic(p as usize)?;
    let mut seq = Vec::with_capacity(p as usize);
    seq.push(0);
    let mut x = 1u64;
    for _ in 1..p {
        x = x * (rho % p) % p;
        seq.push(x as usize);
    }
    Ok(Arrangement::from_trusted(&g, seq))
}

/// Everything established about one primitive root construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveRootCertificate {
    pub p: u64,
    pub rho: u64,
    /// `ρ·(ρ-1)⁻¹ mod p`.
    pub r: u64,
    /// Multiplicative order of `r`.
    pub ell: u64,
    /// Balance reached as a pseudoterrace under `×r`.
    pub k: u64,
}

impl PrimitiveRootCertificate {
    pub fn vatican(&self) -> bool {
        self.k + 1 == self.p
    }

    /// `(ℓ,k,ρ,r)`.
    pub fn quadruple(&self) -> String {
        format!("({},{},{},{})", self.ell, self.k, self.rho, self.r)
    }

    /// `{p, ell, k, rho, r, vatican}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "ell": self.ell,
            "k": self.k,
            "rho": self.rho,
            "r": self.r,
            "vatican": self.vatican(),
        })
    }
}

pub fn primitive_root_multiplier(p: u64, rho: u64) -> Result<u64> {
    check_prime_root(p, rho)?;
    let inv = arith::mod_inv((rho + p - 1) % p, p).ok_or(Error::NotPrimitiveRoot { p, rho })?;
    Ok(rho % p * inv % p)
}

pub fn primitive_root_certificate(p: u64, rho: u64) -> Result<PrimitiveRootCertificate> {
    let a = primitive_root_arrangement(p, rho)?;
    let r = primitive_root_multiplier(p, rho)?;
    let alpha = Automorphism::multiplication(a.group(), r)?;
    let k = pseudoterrace_k(&a, &alpha)? as u64;
    Ok(PrimitiveRootCertificate {
        p,
        rho: rho % p,
        r,
        ell: alpha.order() as u64,
        k,
    })
}

/// The certificate for `ρ = (p+1)/2` when that is a primitive root; its
/// multiplier is then `-1`.
pub fn halving_terrace_check(p: u64) -> Result<Option<PrimitiveRootCertificate>> {
    if !arith::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let rho = (p + 1) / 2;
    if !arith::is_primitive_root(rho, p) {
        return Ok(None);
    }
    let cert = primitive_root_certificate(p, rho)?;
    if cert.r != p - 1 || cert.ell != 2 {
        return Err(Error::ConstructionIntegrity(format!(
            "halving root {rho} mod {p} gave multiplier {} of order {}",
            cert.r, cert.ell
        )));
    }
    Ok(Some(cert))
}
