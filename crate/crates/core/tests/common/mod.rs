#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use prolongation::cohomology::PiModule;
use prolongation::extension::make_extension;
use prolongation::fixtures;
use prolongation::group::{
    automorphism_group_with_bound, automorphism_table, homomorphisms, quotient, Automorphism, FiniteGroup, Homomorphism, Subgroup,
};
use prolongation::io::{self, Mode, Scenario};
use prolongation::obstruction::PreProlongation;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn load_scenario(name: &str) -> Scenario {
    let path = fixture_dir().join("scenarios").join(format!("{name}.json"));
    io::parse_scenario(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

/// Every shipped scenario, by file stem.
pub fn scenarios() -> Vec<(String, Scenario)> {
    let mut paths: Vec<_> = std::fs::read_dir(fixture_dir().join("scenarios")).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
            let s = io::parse_scenario(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (stem, s)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub pre: PreProlongation,
}

pub fn pre_of(s: &Scenario) -> Option<PreProlongation> {
    match s.mode {
        Mode::FullLadder => PreProlongation::from_prolongation(s.ladder.as_ref()?).ok(),
        Mode::PreProlongation => {
            let (e0, alpha, gamma) = (s.e0.clone()?, s.alpha.clone()?, s.gamma.clone()?);
            let frame = prolongation::extension::Frame::new(&e0, &alpha, &gamma).ok()?;
            let theta = s.theta_for(&frame).ok()??;
            PreProlongation::new(e0, alpha, gamma, theta).ok()
        }
        Mode::CohomologyOnly => None,
    }
}

/// Pre-prolongations of the shipped scenarios.
pub fn fixture_cases() -> Vec<Case> {
    scenarios().into_iter().filter_map(|(name, s)| pre_of(&s).map(|pre| Case { name, pre })).collect()
}

/// All subgroups of `g` contained in `within`, by iterated closure.
pub fn subgroups_within(g: &FiniteGroup, within: &[usize]) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut frontier = vec![g.subgroup_closure(&[])];
    while let Some(h) = frontier.pop() {
        if !seen.insert(h.members().to_vec()) {
            continue;
        }
        for &x in within {
            if !h.contains(x) {
                let mut gens = h.members().to_vec();
                gens.push(x);
                frontier.push(g.subgroup_closure(&gens));
            }
        }
        out.push(h);
    }
    out.sort_by_key(|h| (h.order(), h.members().to_vec()));
    out
}

/// Generated pre-prolongations with `|A| ≤ 3`, `|Π₀| ≤ 3`, `|E₀| ≤ 8` and
/// `|A|·|G| ≤ 16`, using shipped fixtures for `B₀` and `G`.
pub fn sweep() -> Vec<Case> {
    let groups = fixtures::all();
    let mut cases = Vec::new();
    for (bname, b0) in groups.iter().filter(|(_, g)| g.order() <= 8) {
        let center = b0.center();
        for a0 in subgroups_within(b0, center.members()) {
            let (a0g, j0) = Homomorphism::inclusion(&a0);
            let q0 = quotient(b0, &a0).unwrap();
            let e0 = make_extension(j0, q0.projection.clone()).unwrap();
            let g0 = q0.quotient.clone();
            let all_a0: Vec<usize> = a0g.elements().collect();
            for k in subgroups_within(&a0g, &all_a0) {
                let qa = quotient(&a0g, &k).unwrap();
                let a = qa.quotient.clone();
                if a.order() > 3 {
                    continue;
                }
                let alpha = qa.projection.clone();
                for (gname, g) in groups.iter() {
                    let m = g.order() / g0.order();
                    if g.order() % g0.order() != 0 || m > 3 || a.order() * g.order() > 16 {
                        continue;
                    }
                    let mut images = HashSet::new();
                    for gamma in homomorphisms(&g0, g) {
                        if !gamma.is_injective() || !gamma.image().is_normal() || !images.insert(gamma.image().members().to_vec()) {
                            continue;
                        }
                        let frame = match prolongation::extension::Frame::new(&e0, &alpha, &gamma) {
                            Ok(f) => f,
                            Err(_) => continue,
                        };
                        let e = frame.e0_group().clone();
                        let Ok(auts) = automorphism_group_with_bound(&e, 24) else { continue };
                        let Ok(table) = automorphism_table(&auts) else { continue };
                        let mut thetas = 0;
                        for t in homomorphisms(g, &table) {
                            let theta: Vec<Automorphism> = t.map().iter().map(|&i| auts[i].clone()).collect();
                            if let Ok(pre) = PreProlongation::new(e0.clone(), alpha.clone(), gamma.clone(), theta) {
                                let name =
                                    format!("{bname}/A0={}/K={}/G={gname}/gamma={:?}/theta#{thetas}", a0.order(), k.order(), gamma.map());
                                cases.push(Case { name, pre });
                                thetas += 1;
                                if thetas == 3 {
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    cases
}

/// Modules for cohomology checks: trivial actions on small fixtures plus a
/// few nontrivial ones.
pub fn fixture_modules() -> Vec<(String, PiModule)> {
    let mut out = Vec::new();
    let pis = ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "S3"];
    let coeffs = ["Z2", "Z3", "Z4", "Z2xZ2", "Z6"];
    for p in pis {
        for a in coeffs {
            let m = PiModule::trivial(fixtures::by_name(p).unwrap(), fixtures::by_name(a).unwrap()).unwrap();
            out.push((format!("{p} on {a}"), m));
        }
    }
    let z2 = fixtures::cyclic(2);
    let inv = |a: &FiniteGroup| Automorphism::from_perm(a, a.elements().map(|x| a.inv(x)).collect()).unwrap();
    for a in [fixtures::cyclic(3), fixtures::cyclic(4)] {
        let m = PiModule::new(z2.clone(), a.clone(), vec![Automorphism::identity(&a), inv(&a)]).unwrap();
        out.push((format!("Z2 inverting Z{}", a.order()), m));
    }
    let klein = fixtures::klein4();
    let swap = Automorphism::from_perm(&klein, vec![0, 2, 1, 3]).unwrap();
    out.push(("Z2 swapping Z2xZ2".into(), PiModule::new(z2.clone(), klein.clone(), vec![Automorphism::identity(&klein), swap]).unwrap()));
    let s3 = fixtures::symmetric3();
    let z3 = fixtures::cyclic(3);
    let sign: Vec<Automorphism> = s3.elements().map(|g| if g < 3 { Automorphism::identity(&z3) } else { inv(&z3) }).collect();
    out.push(("S3 by sign on Z3".into(), PiModule::new(s3, z3, sign).unwrap()));
    out
}

/// Invariant factors of a finite abelian group given the count of elements
/// of each order, via the ranks `#{i : eᵢ ≥ k}` read off `|H[pᵏ]|`.
pub fn invariant_factors_from_orders(order_counts: &std::collections::BTreeMap<u64, u64>) -> Vec<u64> {
    let total: u64 = order_counts.values().sum();
    let mut primes = Vec::new();
    let mut n = total;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    // Per prime, the exponents e_i with Σ e_i = v_p(|H|).
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let torsion = |k: u32| -> u64 { order_counts.iter().filter(|(&o, _)| p.pow(k) % o == 0).map(|(_, &c)| c).sum() };
        let mut ranks = Vec::new();
        let mut k = 1;
        loop {
            let (lo, hi) = (torsion(k - 1), torsion(k));
            let r = (hi / lo).ilog(p);
            if r == 0 {
                break;
            }
            ranks.push(r);
            k += 1;
        }
        let len = ranks[0] as usize;
        let exps: Vec<u32> = (0..len).map(|i| ranks.iter().filter(|&&r| r as usize > i).count() as u32).collect();
        per_prime.push(exps);
    }
    let len = per_prime.iter().map(|e| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> =
        (0..len).map(|i| primes.iter().zip(&per_prime).map(|(&p, e)| e.get(i).map_or(1, |&x| p.pow(x))).product()).collect();
    factors.reverse();
    factors
}

/// `Hⁿ` by exhaustive enumeration of normalized cochains: `|Bⁿ|` from every
/// coboundary of an `(n−1)`-cochain, and the order of each class from the
/// least `d` with `d·z ∈ Bⁿ`. `None` if either space exceeds `limit`.
pub fn enumerate_cohomology(m: &PiModule, n: usize, limit: u64) -> Option<Vec<u64>> {
    let count = |deg: usize| -> Option<u64> {
        let pos = (m.pi().order() as u64 - 1).checked_pow(deg as u32)?;
        (m.coefficients().order() as u64).checked_pow(pos as u32)
    };
    let (cn, cprev) = (count(n)?, if n == 0 { 1 } else { count(n - 1)? });
    if cn > limit || cprev > limit {
        return None;
    }
    let boundaries: HashSet<Vec<usize>> = if n == 0 {
        std::iter::once(m.zero(0).values().to_vec()).collect()
    } else {
        m.all_cochains(n - 1).map(|c| m.coboundary(&c).unwrap().values().to_vec()).collect()
    };
    let expo = m.coefficients().exponent() as u64;
    let mut order_counts = std::collections::BTreeMap::new();
    for z in m.all_cochains(n) {
        if !m.is_cocycle(&z) {
            continue;
        }
        let mut d = 1;
        let mut acc = z.clone();
        while !boundaries.contains(acc.values()) {
            acc = m.add(&acc, &z).unwrap();
            d += 1;
            assert!(d <= expo);
        }
        *order_counts.entry(d).or_insert(0u64) += 1;
    }
    let b = boundaries.len() as u64;
    for c in order_counts.values_mut() {
        assert_eq!(*c % b, 0);
        *c /= b;
    }
    Some(invariant_factors_from_orders(&order_counts))
}
