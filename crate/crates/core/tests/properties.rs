mod common;

use std::sync::OnceLock;

use common::Case;
use prolongation::classify::{are_equivalent, to_crossed_product, torsor_act};
use prolongation::cohomology::PiModule;
use prolongation::extension::{check_factor_identity, choose_section_seeded, factor_set, make_extension};
use prolongation::fixtures;
use prolongation::group::{quotient, FiniteGroup, Homomorphism};
use prolongation::io;
use prolongation::obstruction::{build_prolongation, obstruction_class, obstruction_class_with, SectionChoice};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn modules() -> &'static [(String, PiModule)] {
    static M: OnceLock<Vec<(String, PiModule)>> = OnceLock::new();
    M.get_or_init(common::fixture_modules)
}

fn cases() -> &'static [Case] {
    static C: OnceLock<Vec<Case>> = OnceLock::new();
    C.get_or_init(|| {
        let mut c = common::fixture_cases();
        c.extend(common::sweep());
        c
    })
}

/// Cases with a vanishing class and nontrivial `H²`.
fn torsor_cases() -> &'static [Case] {
    static C: OnceLock<Vec<Case>> = OnceLock::new();
    C.get_or_init(|| {
        cases()
            .iter()
            .filter(|c| obstruction_class(&c.pre).unwrap().is_zero() && !c.pre.module().cohomology_group(2).unwrap().is_trivial())
            .cloned()
            .collect()
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn coboundary_squares_to_zero(mi in 0..modules().len(), n in 0usize..=2, seed: u64) {
        let m = &modules()[mi].1;
        let c = m.random_cochain(n, &mut rng(seed));
        prop_assert!(m.coboundary(&m.coboundary(&c).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn coboundary_is_additive(mi in 0..modules().len(), n in 0usize..=3, s1: u64, s2: u64) {
        let m = &modules()[mi].1;
        let (a, b) = (m.random_cochain(n, &mut rng(s1)), m.random_cochain(n, &mut rng(s2)));
        let lhs = m.coboundary(&m.add(&a, &b).unwrap()).unwrap();
        let rhs = m.add(&m.coboundary(&a).unwrap(), &m.coboundary(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coboundaries_have_witnesses(mi in 0..modules().len(), n in 1usize..=3, seed: u64) {
        let m = &modules()[mi].1;
        let b = m.coboundary(&m.random_cochain(n - 1, &mut rng(seed))).unwrap();
        let t = m.is_coboundary(&b);
        prop_assert!(t.is_some());
        prop_assert_eq!(m.coboundary(&t.unwrap()).unwrap(), b);
    }

    #[test]
    fn class_coordinates_are_additive(mi in 0..modules().len(), n in 1usize..=2, i: usize, j: usize, seed: u64) {
        let m = &modules()[mi].1;
        let h = m.cohomology_group(n).unwrap();
        let els = h.elements();
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let shift = m.coboundary(&m.random_cochain(n - 1, &mut rng(seed))).unwrap();
        let z = m.add(&m.add(&h.representative(x), &h.representative(y)).unwrap(), &shift).unwrap();
        prop_assert!(m.is_cocycle(&z));
        let expected: Vec<u64> = x.iter().zip(y).zip(h.invariant_factors()).map(|((a, b), f)| (a + b) % f).collect();
        prop_assert_eq!(h.class_coordinates(&z).unwrap(), expected);
    }

    #[test]
    fn obstruction_is_choice_independent(ci in 0..cases().len(), seed: u64) {
        let pre = &cases()[ci].pre;
        let a = obstruction_class(pre).unwrap();
        let b = obstruction_class_with(pre, SectionChoice::Seeded(seed)).unwrap();
        prop_assert_eq!(a.coordinates, b.coordinates);
        prop_assert!(pre.module().is_cocycle(&b.cocycle));
    }

    #[test]
    fn crossed_product_witness_inverts(ci in 0..cases().len()) {
        let pre = &cases()[ci].pre;
        if let Ok(cf) = build_prolongation(pre) {
            let (_, w) = to_crossed_product(&cf.prolongation).unwrap();
            prop_assert!(w.verify());
            let back = w.inverse();
            prop_assert!(back.verify());
            let id = w.compose(&back).unwrap();
            prop_assert!(id.beta_star.map().iter().enumerate().all(|(i, &x)| i == x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn torsor_action_is_additive(ci in 0..torsor_cases().len(), i: usize, j: usize) {
        let pre = &torsor_cases()[ci].pre;
        let h2 = pre.module().cohomology_group(2).unwrap();
        let els = h2.elements();
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let sum: Vec<u64> = x.iter().zip(y).zip(h2.invariant_factors()).map(|((a, b), f)| (a + b) % f).collect();
        let p = build_prolongation(pre).unwrap().prolongation;
        let twice = torsor_act(x, &torsor_act(y, &p).unwrap()).unwrap();
        let once = torsor_act(&sum, &p).unwrap();
        prop_assert!(are_equivalent(&twice, &once).unwrap().is_some());
        let moved = !x.iter().all(|&c| c == 0);
        prop_assert_eq!(are_equivalent(&torsor_act(x, &p).unwrap(), &p).unwrap().is_none(), moved);
    }

    #[test]
    fn seeded_sections_satisfy_the_factor_identity(gi in 0..fixtures::NAMES.len(), seed: u64) {
        let g = fixtures::by_name(fixtures::NAMES[gi]).unwrap();
        let z = g.center();
        let (_, inc) = Homomorphism::inclusion(&z);
        let e = make_extension(inc, quotient(&g, &z).unwrap().projection).unwrap();
        let s = choose_section_seeded(&e, &mut rng(seed));
        prop_assert_eq!(s.reps()[0], 0);
        let f = factor_set(&e, &s).unwrap();
        prop_assert!(check_factor_identity(&e, &s, &f));
    }

    #[test]
    fn group_json_round_trips(a in 1usize..7, b in 1usize..5) {
        let g = fixtures::cyclic(a).direct_product(&fixtures::cyclic(b));
        let text = io::group_to_json("G", &g).to_string();
        prop_assert_eq!(io::parse_group(&text).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decoders_never_panic(s in "\\PC{0,200}") {
        let _ = io::parse_group(&s);
        let _ = io::parse_scenario(&s);
        let _ = io::parse_cocycle(&s);
        let _ = io::parse_theta(&s, &fixtures::dihedral(4), &fixtures::cyclic(2));
        let groups = fixtures::all().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
        let _ = io::parse_homomorphism(&s, &groups);
    }

    #[test]
    fn mutated_scenarios_never_panic(fi in 0usize..64, pos: usize, byte in 32u8..127) {
        let mut paths: Vec<_> = std::fs::read_dir(common::fixture_dir().join("scenarios")).unwrap().map(|e| e.unwrap().path()).collect();
        paths.sort();
        let mut text = std::fs::read(&paths[fi % paths.len()]).unwrap();
        let at = pos % text.len();
        text[at] = byte;
        if let Ok(s) = std::str::from_utf8(&text) {
            let _ = io::parse_scenario(s);
        }
    }

    #[test]
    fn small_tables_never_panic(n in 0usize..5, cells in proptest::collection::vec(0usize..6, 0..25)) {
        let table: Vec<Vec<usize>> = cells.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        if let Ok(g) = FiniteGroup::from_table(table, None) {
            prop_assert!(g.elements().all(|a| g.mul(a, g.inv(a)) == 0));
        }
    }
}
