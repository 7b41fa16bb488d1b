//! Builders checked against straight-line enumerations written out here.

use std::collections::BTreeMap;

use flipchow::{
    resolution, star_sequence, theorem_sequence, AtomSpace, FormalDecomposition, ModuliParams,
};

/// Multiset of (space, codim) keyed in the same order the library uses.
type Bag = BTreeMap<(AtomSpace, i64), usize>;

fn dim(p: &ModuliParams, s: AtomSpace) -> i64 {
    match s {
        AtomSpace::M(_) => p.m() - 1,
        AtomSpace::SymX(k) => k as i64,
        AtomSpace::N => 3 * p.g() - 3,
    }
}

fn put(p: &ModuliParams, bag: &mut Bag, s: AtomSpace, c: i64) {
    if c >= 0 && c <= dim(p, s) {
        *bag.entry((s, c)).or_default() += 1;
    }
}

fn bag_of(fd: &FormalDecomposition) -> Bag {
    fd.iter()
        .map(|(a, n)| ((a.space(), a.codim()), n))
        .collect()
}

/// The theorem's three terms written directly from the index ranges.
fn theorem_direct(p: &ModuliParams, l: i64) -> (Bag, Bag, Bag) {
    let (m, n, w) = (p.m(), p.n(), p.w());
    let mut kernel = Bag::new();
    let mut middle = Bag::new();
    let mut quotient = Bag::new();
    for i in 0..=n - 2 {
        put(p, &mut kernel, AtomSpace::N, l + 1 + i);
    }
    for k in 1..=w {
        for r in 0..=k - 2 {
            put(
                p,
                &mut kernel,
                AtomSpace::SymX(k as usize),
                n - 1 + l - m + 2 * k - r,
            );
        }
    }
    put(p, &mut middle, AtomSpace::M(0), n - 1 + l);
    for k in 1..=w {
        for s in 0..=m - 2 * k - 2 {
            put(
                p,
                &mut middle,
                AtomSpace::SymX(k as usize),
                n - 1 + l - k - s,
            );
        }
    }
    put(p, &mut quotient, AtomSpace::N, l);
    (kernel, middle, quotient)
}

/// Work-list expansion: each pending `(level, l)` contributes its middle to
/// level `i`, its symmetric-power kernel to level `i + 1`, and schedules its
/// `N`-atoms at level `i + 1`.
fn brute_force_resolution(p: &ModuliParams, l: i64) -> Vec<Bag> {
    let mut levels: Vec<Bag> = Vec::new();
    let mut pending = vec![(0usize, l)];
    while let Some((i, codim)) = pending.pop() {
        let (kernel, middle, _) = theorem_direct(p, codim);
        while levels.len() < i + 2 {
            levels.push(Bag::new());
        }
        for (key, n) in middle {
            *levels[i].entry(key).or_default() += n;
        }
        for ((space, c), n) in kernel {
            if space == AtomSpace::N {
                for _ in 0..n {
                    pending.push((i + 1, c));
                }
            } else {
                *levels[i + 1].entry((space, c)).or_default() += n;
            }
        }
    }
    while levels.last().is_some_and(|b| b.is_empty()) {
        levels.pop();
    }
    levels
}

#[test]
fn theorem_matches_direct_ranges() {
    for (g, d) in [(2, 5), (2, 7), (2, 9), (3, 9), (3, 11), (4, 13)] {
        let p = ModuliParams::new(g, d).unwrap();
        for l in -2..=p.dim_n() + 2 {
            let seq = theorem_sequence(&p, l).unwrap();
            let (kernel, middle, quotient) = theorem_direct(&p, l);
            assert_eq!(bag_of(&seq.kernel), kernel, "kernel g={g} d={d} l={l}");
            assert_eq!(bag_of(&seq.middle), middle, "middle g={g} d={d} l={l}");
            assert_eq!(
                bag_of(&seq.quotient),
                quotient,
                "quotient g={g} d={d} l={l}"
            );
        }
    }
}

#[test]
fn resolution_matches_brute_force() {
    for d in [5, 7, 9] {
        let p = ModuliParams::new(2, d).unwrap();
        for l in 0..=3 {
            let res = resolution(&p, l).unwrap();
            let got: Vec<Bag> = res.terms.iter().map(bag_of).collect();
            assert_eq!(got, brute_force_resolution(&p, l), "d={d} l={l}");
            let t = res.depth().unwrap() as i64;
            assert!(t <= p.dim_n() - l + 1, "depth {t} at d={d} l={l}");
            assert!(res.is_terminal());
        }
    }
}

#[test]
fn resolution_matches_brute_force_genus_three() {
    let p = ModuliParams::new(3, 9).unwrap();
    for l in 0..=p.dim_n() {
        let got: Vec<Bag> = resolution(&p, l)
            .unwrap()
            .terms
            .iter()
            .map(bag_of)
            .collect();
        assert_eq!(got, brute_force_resolution(&p, l), "l={l}");
    }
}

#[test]
fn star_matches_direct_ranges() {
    let p = ModuliParams::new(3, 11).unwrap();
    for k in 1..=p.flips() {
        let ki = k as i64;
        for l in -1..=p.m() {
            let seq = star_sequence(&p, k, l).unwrap();
            let mut kernel = Bag::new();
            for r in 0..=ki - 2 {
                put(&p, &mut kernel, AtomSpace::SymX(k), l - p.m() + 2 * ki - r);
            }
            let mut middle = Bag::new();
            put(&p, &mut middle, AtomSpace::M(k - 1), l);
            for s in 0..=p.m() - 2 * ki - 2 {
                put(&p, &mut middle, AtomSpace::SymX(k), l - ki - s);
            }
            assert_eq!(bag_of(&seq.kernel), kernel);
            assert_eq!(bag_of(&seq.middle), middle);
        }
    }
}
