//! Regenerates `fixtures/groups/*.json` and `fixtures/scenarios/*.json`.
//!
//! cargo run -p prolongation --example write_fixtures

use std::path::Path;

use prolongation::classify::enumerate_classes;
use prolongation::extension::{make_extension, Prolongation, ShortExtension};
use prolongation::fixtures;
use prolongation::group::{quotient, Automorphism, FiniteGroup, Homomorphism};
use prolongation::io::{self, group_ref_json, homomorphism_to_json};
use prolongation::obstruction::PreProlongation;
use serde_json::{json, Value};

fn write(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string_pretty(v).unwrap() + "\n").unwrap();
    println!("wrote {}", path.display());
}

fn inversion(a: &FiniteGroup) -> Automorphism {
    Automorphism::from_perm(a, a.elements().map(|x| a.inv(x)).collect()).unwrap()
}

/// `(B₀ = B₀ → 1)` with `γ: 1 → G`.
fn over_trivial(b0: &FiniteGroup, g: &FiniteGroup, theta: Vec<Automorphism>) -> PreProlongation {
    let one = FiniteGroup::trivial();
    let e0 = make_extension(Homomorphism::identity(b0), Homomorphism::trivial(b0, &one)).unwrap();
    PreProlongation::new(e0, Homomorphism::identity(b0), Homomorphism::trivial(&one, g), theta).unwrap()
}

fn center_extension(g: &FiniteGroup) -> ShortExtension {
    let z = g.center();
    let q = quotient(g, &z).unwrap();
    let (_, inc) = Homomorphism::inclusion(&z);
    make_extension(inc, q.projection).unwrap()
}

fn identity_ladder(e: &ShortExtension) -> Prolongation {
    Prolongation {
        e0: e.clone(),
        e: e.clone(),
        alpha: Homomorphism::identity(e.a()),
        beta: Homomorphism::identity(e.b()),
        gamma: Homomorphism::identity(e.g()),
    }
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let groups = root.join("groups");
    let scenarios = root.join("scenarios");
    std::fs::create_dir_all(&groups).unwrap();
    std::fs::create_dir_all(&scenarios).unwrap();
    for (name, g) in fixtures::all() {
        write(&groups.join(format!("{name}.json")), &io::group_to_json(name, &g));
    }

    let (z2, z3, z4) = (fixtures::cyclic(2), fixtures::cyclic(3), fixtures::cyclic(4));

    let z2_1_z2 = over_trivial(&z2, &z2, vec![Automorphism::identity(&z2); 2]);
    write(&scenarios.join("z2_1_z2.json"), &io::pre_to_scenario(&z2_1_z2, Some("Z/2 over the trivial group into Z/2")));
    let classes = enumerate_classes(&z2_1_z2).unwrap();
    for (c, name) in classes.iter().zip(["z2_1_z2_klein", "z2_1_z2_z4"]) {
        let v = io::prolongation_to_scenario(&c.representative, Some(z2_1_z2.theta()), Some(name));
        write(&scenarios.join(format!("{name}.json")), &v);
    }

    let z3_1_z3 = over_trivial(&z3, &z3, vec![Automorphism::identity(&z3); 3]);
    write(&scenarios.join("z3_1_z3.json"), &io::pre_to_scenario(&z3_1_z3, Some("Z/3 over the trivial group into Z/3")));

    let inv3 = inversion(&z3);
    let z3_inv = over_trivial(&z3, &z2, vec![Automorphism::identity(&z3), inv3]);
    write(&scenarios.join("z3_inversion.json"), &io::pre_to_scenario(&z3_inv, Some("Z/3 with the inversion action of Z/2")));

    let e0 = make_extension(
        Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap(),
        Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap(),
    )
    .unwrap();
    let gamma = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
    let inv4 = inversion(&z4);
    let theta = vec![Automorphism::identity(&z4), inv4.clone(), Automorphism::identity(&z4), inv4];
    let nonzero = PreProlongation::new(e0.clone(), Homomorphism::identity(&z2), gamma, theta).unwrap();
    write(&scenarios.join("z4_nonzero.json"), &io::pre_to_scenario(&nonzero, Some("nonzero obstruction in H^3(Z/2, Z/2)")));

    let trivial =
        PreProlongation::new(e0.clone(), Homomorphism::identity(&z2), Homomorphism::identity(&z2), vec![Automorphism::identity(&z4); 2])
            .unwrap();
    write(&scenarios.join("trivial_pi0.json"), &io::pre_to_scenario(&trivial, Some("gamma surjective, so Coker gamma is trivial")));

    let q8 = center_extension(&fixtures::quaternion8());
    let q8_pre = PreProlongation::from_prolongation(&identity_ladder(&q8)).unwrap();
    write(&scenarios.join("q8_center.json"), &io::pre_to_scenario(&q8_pre, Some("center of Q8 with identity alpha and gamma")));

    let d4 = center_extension(&fixtures::dihedral(4));
    let d4_ladder = identity_ladder(&d4);
    write(&scenarios.join("d4_ladder.json"), &io::prolongation_to_scenario(&d4_ladder, None, Some("identity ladder on the center of D4")));

    let (q8e, g) = (q8.clone(), Homomorphism::new(z2.clone(), q8.g().clone(), vec![0, 1]).unwrap());
    let pb = json!({
        "mode": "cohomology-only",
        "description": "pullback of Q8 over its central quotient along Z/2; and H^n(Z/2, Z/3) with inversion",
        "groups": {
            "Z": group_ref_json("Z", q8e.a()),
            "Q": group_ref_json("Q", q8e.b()),
            "K": group_ref_json("K", q8e.g()),
            "C": "Z2",
            "A": "Z3",
        },
        "homomorphisms": {
            "j": homomorphism_to_json("Z", "Q", q8e.j()),
            "p": homomorphism_to_json("Q", "K", q8e.p()),
            "g": homomorphism_to_json("C", "K", &g),
        },
        "pullback": { "extension": { "j": "j", "p": "p" }, "map": "g" },
        "cohomology": { "pi": "C", "a": "A", "action": [[0, 1, 2], [0, 2, 1]] },
    });
    write(&scenarios.join("q8_pullback.json"), &pb);
}
