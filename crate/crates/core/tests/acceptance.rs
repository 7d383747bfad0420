//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vatican_core::constructions::{
    primitive_root_arrangement, primitive_root_certificate, prescott_triple, walecki,
};
use vatican_core::design::{balance_report, design_from_tuple, latin_square_of, stack_designs, Design};
use vatican_core::search::{
    search, SearchLimits, SearchMode, SearchSpec, SearchStatus, Target,
};
use vatican_core::tables::{self, check_dataset, Dataset, RowCheck};
use vatican_core::triangle::{expand_pseudoterrace, pseudoterrace_k, quotient_triangle, roman_k};
use vatican_core::{make_group, Arrangement, Automorphism, FiniteGroup, TupleFamily};

type Outcome = Result<String, String>;

const ROMAN_SIX: &str = "0,5,1,4,2,3\n1,0,2,5,3,4\n2,1,3,0,4,5\n3,2,4,1,5,0\n4,3,5,2,0,1\n5,4,0,3,1,2\n";
const VATICAN_PAIR_FIVE: &str = "0,1,3,4,2\n1,2,4,0,3\n2,3,0,1,4\n3,4,1,2,0\n4,0,2,3,1\n\
                                 0,4,2,1,3\n1,0,3,2,4\n2,1,4,3,0\n3,2,0,4,1\n4,3,1,0,2\n";

/// Seed for the sampled arrangements over Z8..Z12.
const SAMPLE_SEED: u64 = 0x5eed_0009;

/// Node budget for the Z17 run. The reduced search space is about 1.0e9 nodes.
const Z17_BUDGET: u64 = 3_000_000_000;

fn group(name: &str) -> Arc<FiniteGroup> {
    make_group(&name.parse().unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vatican_design(d: &Design) -> Result<(), String> {
    let r = balance_report(d).map_err(|e| e.to_string())?;
    ensure(r.vatican, || format!("M = {:?}, threshold {}", r.max_per_distance, r.threshold))
}

fn summarize(rows: &[RowCheck]) -> Outcome {
    let failed: Vec<&RowCheck> = rows.iter().filter(|r| !r.note && !r.pass).collect();
    let notes = rows.iter().filter(|r| r.note).count();
    if failed.is_empty() {
        return Ok(format!("{} rows pass, {notes} notes", rows.len() - notes));
    }
    let shown: Vec<String> = failed
        .iter()
        .take(4)
        .map(|r| format!("{} [{}]", r.label, r.detail))
        .collect();
    Err(format!(
        "{} of {} rows fail: {}{}",
        failed.len(),
        rows.len() - notes,
        shown.join("; "),
        if failed.len() > 4 { "; ..." } else { "" }
    ))
}

fn c1_small_designs() -> Outcome {
    let w = walecki(6).map_err(|e| e.to_string())?;
    let left = latin_square_of(&w);
    let r = balance_report(&left).unwrap();
    ensure(r.max_k == 1 && r.max_per_distance[1] > 1, || format!("walecki(6) M = {:?}", r.max_per_distance))?;
    let printed = Design::from_csv(ROMAN_SIX).unwrap();
    ensure(printed.sorted_rows() == left.sorted_rows(), || "walecki(6) square differs from the printed one".into())?;

    let row = tables::pseudoterraces_small()
        .into_iter()
        .find(|e| e.group.to_string() == "Z5")
        .ok_or("no Z5 row")?;
    let g = group("Z5");
    let a = Arrangement::parse(&g, &row.arrangement).unwrap();
    let alpha = Automorphism::parse(&g, &row.automorphism).unwrap();
    let pair = design_from_tuple(&expand_pseudoterrace(&a, &alpha).unwrap());
    let r = balance_report(&pair).unwrap();
    ensure(pair.subjects() == 10 && r.vatican && r.max_per_distance.iter().all(|&m| m <= 2), || {
        format!("Z5 pair M = {:?}", r.max_per_distance)
    })?;

    let printed = Design::from_csv(VATICAN_PAIR_FIVE).unwrap();
    vatican_design(&printed)?;
    let b = Arrangement::parse(&g, "0,1,3,4,2").unwrap();
    let regenerated = design_from_tuple(&expand_pseudoterrace(&b, &Automorphism::multiplication(&g, 4).unwrap()).unwrap());
    ensure(printed.sorted_rows() == regenerated.sorted_rows(), || "printed pair is not (0,1,3,4,2) under x4".into())?;
    Ok(format!("walecki(6) k=1; Z5 pair M = {:?}", r.max_per_distance))
}

fn c2_worked_examples() -> Outcome {
    let z6 = group("Z6");
    let a = Arrangement::parse(&z6, "0,4,5,2,1,3").unwrap();
    let expected: Vec<Vec<usize>> = vec![vec![4, 1, 3, 5, 2], vec![5, 4, 2, 1], vec![2, 3, 4], vec![1, 5], vec![3]];
    let tri = quotient_triangle(&a);
    ensure(tri.lines() == expected.as_slice(), || format!("Z6 triangle {:?}", tri.lines()))?;
    let k6 = roman_k(&TupleFamily::singleton(a));
    ensure(k6 == 5, || format!("Z6 singleton k = {k6}"))?;

    let z7 = group("Z7");
    let a = Arrangement::parse(&z7, "0,1,5,4,2,3,6").unwrap();
    let alpha = Automorphism::multiplication(&z7, 2).unwrap();
    let expected: Vec<Vec<usize>> = vec![
        vec![1, 4, 6, 5, 1, 3],
        vec![5, 3, 4, 6, 4],
        vec![4, 1, 5, 2],
        vec![2, 2, 1],
        vec![3, 5],
        vec![6],
    ];
    let tri = quotient_triangle(&a);
    ensure(tri.lines() == expected.as_slice(), || format!("Z7 triangle {:?}", tri.lines()))?;
    let k7 = pseudoterrace_k(&a, &alpha).unwrap();
    ensure(k7 == 6, || format!("Z7 pseudoterrace k = {k7}"))?;
    let family = expand_pseudoterrace(&a, &alpha).unwrap();
    let members: Vec<String> = family.members().iter().map(|m| m.to_string()).collect();
    ensure(members == ["0,1,5,4,2,3,6", "0,2,3,1,4,6,5", "0,4,6,2,1,5,3"], || format!("expansion {members:?}"))?;
    let r = balance_report(&design_from_tuple(&family)).unwrap();
    ensure(r.vatican && roman_k(&family) == 6, || format!("triple M = {:?}", r.max_per_distance))?;
    Ok("Z6 k=5, Z7 k=6, triple Vatican".into())
}

fn c3_primitive_small() -> Outcome {
    summarize(&check_dataset(Dataset::PrimitiveSmall))
}

fn c4_primitive_large() -> Outcome {
    summarize(&check_dataset(Dataset::PrimitiveLarge))
}

fn c5_prime_lists() -> Outcome {
    let mut rows = check_dataset(Dataset::PrimitiveMid);
    rows.extend(check_dataset(Dataset::PrimitiveBig));
    summarize(&rows)
}

fn c6_pseudoterrace_tables() -> Outcome {
    let mut rows = Vec::new();
    for d in [Dataset::PseudoterracesSmall, Dataset::PseudoterracesMore, Dataset::Triples, Dataset::Extra] {
        rows.extend(check_dataset(d));
    }
    summarize(&rows)
}

/// Differences `a_{i+1} - a_i` mod `t` of every member, counted per residue.
fn difference_counts(t: usize, members: &[Vec<usize>]) -> Vec<Vec<usize>> {
    members
        .iter()
        .map(|m| {
            let mut c = vec![0; t];
            for w in m.windows(2) {
                c[(w[1] + t - w[0]) % t] += 1;
            }
            c
        })
        .collect()
}

fn c7_prescott() -> Outcome {
    for t in (5..=99).step_by(2) {
        let family = prescott_triple(t).map_err(|e| format!("t={t}: {e}"))?;
        let members: Vec<Vec<usize>> = family.members().iter().map(|m| m.as_slice().to_vec()).collect();
        ensure(members.len() == 3, || format!("t={t}: {} members", members.len()))?;
        for m in &members {
            ensure(m.iter().copied().sorted().eq(0..t), || format!("t={t}: {m:?} is not a permutation"))?;
        }
        let counts = difference_counts(t, &members);
        for (m, c) in members.iter().zip(&counts) {
            let doubled = c[1..].iter().filter(|&&x| x == 2).count();
            let missing = c[1..].iter().filter(|&&x| x == 0).count();
            let once = c[1..].iter().filter(|&&x| x == 1).count();
            ensure(doubled == 1 && missing == 1 && once == t - 3, || {
                format!("t={t}: member {m:?} has difference counts {:?}", &c[1..])
            })?;
        }
        for d in 1..t {
            let total: usize = counts.iter().map(|c| c[d]).sum();
            ensure(total <= 3, || format!("t={t}: difference {d} occurs {total} times"))?;
        }
        ensure(roman_k(&family) >= 1, || format!("t={t}: library scan disagrees"))?;
    }
    Ok("48 triples".into())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn c8_primitive_root_theorem() -> Outcome {
    let primes: Vec<u64> = (3..=257u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
    let mut checked = 0;
    for &p in &primes {
        let roots: Vec<u64> = (2..p)
            .filter(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
            .collect();
        for rho in roots {
            let cert = primitive_root_certificate(p, rho).map_err(|e| format!("p={p} rho={rho}: {e}"))?;
            let r = (1..p).find(|&r| r * (rho - 1) % p == rho).unwrap();
            ensure(cert.r == r && cert.r * (rho - 1) % p == rho, || format!("p={p} rho={rho}: r = {}", cert.r))?;
            ensure(cert.k >= 1, || format!("p={p} rho={rho}: k = 0"))?;
            let ell = (1..p).find(|&e| pow_mod(r, e, p) == 1).unwrap();
            ensure(cert.ell == ell, || format!("p={p} rho={rho}: fold {} vs {ell}", cert.ell))?;

            let mut seq = vec![0u64];
            let mut x = 1;
            for _ in 1..p {
                x = x * rho % p;
                seq.push(x);
            }
            let lib: Vec<u64> = primitive_root_arrangement(p, rho).unwrap().as_slice().iter().map(|&e| e as u64).collect();
            ensure(lib == seq, || format!("p={p} rho={rho}: arrangement differs"))?;
            // Cycle of d under x -> r x, keyed by its smallest member.
            let mut per_cycle: BTreeMap<u64, u64> = BTreeMap::new();
            for w in seq.windows(2) {
                let d = (w[1] + p - w[0]) % p;
                let key = (0..ell).map(|j| d * pow_mod(r, j, p) % p).min().unwrap();
                *per_cycle.entry(key).or_default() += 1;
            }
            ensure(per_cycle.values().all(|&c| c <= ell), || format!("p={p} rho={rho}: line 1 overfull"))?;
            checked += 1;
        }
    }
    Ok(format!("{} primes, {checked} primitive roots", primes.len()))
}

fn equivalence(a: &Arrangement) -> Result<(), String> {
    let tri = roman_k(&TupleFamily::singleton(a.clone()));
    let des = balance_report(&latin_square_of(a)).unwrap().max_k;
    ensure(tri == des, || format!("({a}): triangle k {tri}, design k {des}"))?;
    let lines = quotient_triangle(a).lines().to_vec();
    for g in a.group().elements() {
        let moved = a.left_translate(g);
        ensure(quotient_triangle(&moved).lines() == lines.as_slice(), || format!("({a}) translated by {g}"))?;
    }
    Ok(())
}

fn c9_oracle_equivalence() -> Outcome {
    let mut exhaustive = 0;
    for t in 5..=7 {
        let g = group(&format!("Z{t}"));
        for tail in (1..t).permutations(t - 1) {
            let mut seq = vec![0];
            seq.extend(tail);
            equivalence(&Arrangement::new(&g, seq).unwrap())?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for i in 0..500 {
        let t = 8 + i % 5;
        let g = group(&format!("Z{t}"));
        let mut tail: Vec<usize> = (1..t).collect();
        tail.shuffle(&mut rng);
        let mut seq = vec![0];
        seq.extend(tail);
        equivalence(&Arrangement::new(&g, seq).unwrap())?;
    }
    Ok(format!("{exhaustive} exhaustive, 500 sampled"))
}

fn complete_search(name: &str, ell: usize, limits: SearchLimits, reduce: bool) -> Result<(SearchStatus, usize, u64), String> {
    let g = group(name);
    let mut spec = SearchSpec::new(&g, ell, Target::Vatican, SearchMode::AnyAutomorphism)
        .map_err(|e| e.to_string())?
        .with_limits(limits);
    if reduce {
        spec = spec.with_symmetry_reduction();
    }
    let out = search(&spec).map_err(|e| e.to_string())?;
    if out.status == SearchStatus::BudgetExhausted && out.proves_nonexistence() {
        return Err(format!("{name}: truncated run claims nonexistence"));
    }
    Ok((out.status, out.witnesses.len(), out.nodes))
}

fn c10_negative_results() -> Outcome {
    let mut notes = Vec::new();
    for (name, ell) in [("Z3xZ3", 2), ("Z3xZ3", 3), ("Z9", 3)] {
        let (status, found, nodes) = complete_search(name, ell, SearchLimits::default(), false)?;
        ensure(status == SearchStatus::Complete && found == 0, || {
            format!("{name} l={ell}: {status:?} with {found} witnesses")
        })?;
        notes.push(format!("{name} l={ell} none ({nodes} nodes)"));
    }
    let limits = SearchLimits {
        node_budget: Some(Z17_BUDGET),
        max_order: Some(17),
        ..SearchLimits::default()
    };
    let (status, found, nodes) = complete_search("Z17", 2, limits, true)?;
    ensure(found == 0, || format!("Z17 l=2: {found} witnesses found"))?;
    notes.push(match status {
        SearchStatus::Complete => format!("Z17 l=2 none ({nodes} nodes)"),
        _ => format!("Z17 l=2 budget exhausted after {nodes} nodes, no claim"),
    });
    Ok(notes.join("; "))
}

fn vatican_singleton(t: usize) -> Result<Design, String> {
    let g = group(&format!("Z{t}"));
    let spec = SearchSpec::new(&g, 1, Target::Vatican, SearchMode::Pseudoterrace(Automorphism::identity(&g)))
        .map_err(|e| e.to_string())?
        .with_limits(SearchLimits {
            max_witnesses: Some(1),
            ..SearchLimits::default()
        });
    let out = search(&spec).map_err(|e| e.to_string())?;
    let w = out.witnesses.first().ok_or_else(|| format!("no Vatican singleton over Z{t}"))?;
    Ok(design_from_tuple(&w.family()))
}

fn c11_constructive_cases() -> Outcome {
    let mut designs: BTreeMap<(usize, usize), Design> = BTreeMap::new();
    for e in tables::pseudoterraces_small().into_iter().chain(tables::pseudoterraces_more()) {
        let g = make_group(&e.group).unwrap();
        let a = Arrangement::parse(&g, &e.arrangement).unwrap();
        let alpha = Automorphism::parse(&g, &e.automorphism).unwrap();
        let d = design_from_tuple(&expand_pseudoterrace(&a, &alpha).unwrap());
        // A row that fails its own check must not stand in for a case.
        if balance_report(&d).unwrap().vatican {
            designs.entry((g.order(), e.ell)).or_insert(d);
        }
    }
    for e in tables::triples() {
        let g = make_group(&e.group).unwrap();
        let members = e.members.iter().map(|m| Arrangement::parse(&g, m).unwrap()).collect();
        designs.entry((g.order(), 3)).or_insert(design_from_tuple(&TupleFamily::new(members).unwrap()));
    }
    for t in [6, 10, 12] {
        let single = vatican_singleton(t)?;
        for ell in [2, 3] {
            designs.entry((t, ell)).or_insert(stack_designs(&[(&single, ell)]).unwrap());
        }
    }
    let z5 = group("Z5");
    let a = primitive_root_arrangement(5, 2).unwrap();
    designs.insert((5, 4), design_from_tuple(&expand_pseudoterrace(&a, &Automorphism::multiplication(&z5, 2).unwrap()).unwrap()));

    let mut cases: Vec<(usize, usize)> = (5..=14).flat_map(|t| [(t, 2), (t, 3)]).collect();
    cases.extend([(3, 2), (15, 2), (5, 4)]);
    for &(t, ell) in &cases {
        let d = designs.get(&(t, ell)).ok_or_else(|| format!("no design for t={t} l={ell}"))?;
        ensure(d.subjects() == ell * t && d.treatments() == t, || format!("t={t} l={ell}: shape {}x{}", d.subjects(), d.periods()))?;
        vatican_design(d).map_err(|e| format!("t={t} l={ell}: {e}"))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("walecki square and Z5 pair design", c1_small_designs),
        ("worked Z6 and Z7 examples", c2_worked_examples),
        ("primitive roots, primes 5..61", c3_primitive_small),
        ("primitive roots, primes 67..257", c4_primitive_large),
        ("prime lists up to 10000", c5_prime_lists),
        ("listed pseudoterraces and triples", c6_pseudoterrace_tables),
        ("prescott triples, odd t 5..99", c7_prescott),
        ("every primitive root up to 257", c8_primitive_root_theorem),
        ("triangle and design oracles agree", c9_oracle_equivalence),
        ("negative search results", c10_negative_results),
        ("Vatican designs for the constructive cases", c11_constructive_cases),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:02}] {name} ({secs:.2}s): {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
