//! Small named groups: every group of order at most 8, plus Z/9 and Z/3×Z/3.

use crate::group::FiniteGroup;

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0);
    let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    FiniteGroup::from_flat(n, table, None).expect("cyclic group")
}

/// `(Z/p)^k`
pub fn elementary_abelian(p: usize, k: u32) -> FiniteGroup {
    (0..k).fold(FiniteGroup::trivial(), |acc, _| acc.direct_product(&cyclic(p)))
}

pub fn klein4() -> FiniteGroup {
    elementary_abelian(2, 2)
}

pub fn symmetric3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation of 3 points");
    let mut table = Vec::with_capacity(36);
    for a in &perms {
        for b in &perms {
            table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
        }
    }
    let labels = ["()", "(123)", "(132)", "(12)", "(23)", "(13)"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_flat(6, table, Some(labels)).expect("S3")
}

/// Dihedral group of order `2n`; element `r^k s^e` has index `k + n·e`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            let (a, e) = (x % n, x / n);
            let (b, f) = (y % n, y / n);
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            table.push(k + n * ((e + f) % 2));
        }
    }
    let labels = (0..m)
        .map(|x| {
            let r = match x % n {
                0 => String::new(),
                1 => "r".to_string(),
                k => format!("r{k}"),
            };
            let s = if x / n == 1 { "s" } else { "" };
            let l = format!("{r}{s}");
            if l.is_empty() {
                "e".to_string()
            } else {
                l
            }
        })
        .collect();
    FiniteGroup::from_flat(m, table, Some(labels)).expect("dihedral group")
}

/// Quaternion group; indices are 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion8() -> FiniteGroup {
    // unit products: (sign, unit) for units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (sx, ux) = (x % 2, x / 2);
            let (sy, uy) = (y % 2, y / 2);
            let (s, u) = UNIT[ux][uy];
            table.push(2 * u + (sx + sy + s) % 2);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_flat(8, table, Some(labels)).expect("Q8")
}

pub const NAMES: &[&str] = &["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2", "D4", "Q8", "Z9", "Z3xZ3"];

/// Built-in group by name. Accepts the `NAMES` entries and `Zn` for any n.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let g = match name {
        "Z2xZ2" | "V4" | "Klein" => klein4(),
        "Z4xZ2" => cyclic(4).direct_product(&cyclic(2)),
        "Z2xZ2xZ2" => elementary_abelian(2, 3),
        "Z3xZ3" => elementary_abelian(3, 2),
        "S3" | "D3" => symmetric3(),
        "D4" => dihedral(4),
        "Q8" => quaternion8(),
        _ => {
            let n: usize = name.strip_prefix('Z')?.parse().ok()?;
            if n == 0 || n > 256 {
                return None;
            }
            cyclic(n)
        }
    };
    Some(g)
}

/// Every shipped fixture, in `NAMES` order.
pub fn all() -> Vec<(&'static str, FiniteGroup)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("fixture name"))).collect()
}
