//! Test-only oracles and generators. Everything here works from the order
//! matrix directly and does not call the library's lattice operations.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use repsys::model::{zoo, Model};
use repsys::{validate_orthoposet, validate_poset, OrthoPoset, RepresentationSystem, RsCandidate};

pub fn lub(o: &OrthoPoset, x: usize, y: usize) -> Option<usize> {
    let n = o.len();
    let uppers: Vec<usize> = (0..n).filter(|&u| o.leq(x, u) && o.leq(y, u)).collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| o.leq(u, v)))
}

pub fn glb(o: &OrthoPoset, x: usize, y: usize) -> Option<usize> {
    let n = o.len();
    let lowers: Vec<usize> = (0..n).filter(|&l| o.leq(l, x) && o.leq(l, y)).collect();
    lowers
        .iter()
        .copied()
        .find(|&l| lowers.iter().all(|&v| o.leq(v, l)))
}

/// `(x ∨ y^⊥) ∧ y` by brute-force bounds.
pub fn sasaki(o: &OrthoPoset, x: usize, y: usize) -> Option<usize> {
    lub(o, x, o.ortho(y)).and_then(|j| glb(o, j, y))
}

/// Every subset holding the bounds, closed under ortho, with host joins and
/// meets of its pairs inside it, and distributive.
pub fn brute_force_subalgebras(o: &OrthoPoset) -> BTreeSet<Vec<usize>> {
    let n = o.len();
    assert!(n <= 12, "brute force is for small structures");
    let bottom = (0..n).find(|&x| (0..n).all(|y| o.leq(x, y))).unwrap();
    let top = o.ortho(bottom);
    let mut found = BTreeSet::new();
    'subsets: for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let inside = |x: usize| mask >> x & 1 == 1;
        if !inside(bottom) || !inside(top) || s.iter().any(|&x| !inside(o.ortho(x))) {
            continue;
        }
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for &x in &s {
            for &y in &s {
                match (lub(o, x, y), glb(o, x, y)) {
                    (Some(j), Some(m)) if inside(j) && inside(m) => {
                        join[x][y] = j;
                        meet[x][y] = m;
                    }
                    _ => continue 'subsets,
                }
            }
        }
        for &x in &s {
            for &y in &s {
                for &z in &s {
                    if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]] {
                        continue 'subsets;
                    }
                }
            }
        }
        found.insert(s);
    }
    found
}

fn build(elements: &[String], pairs: &[(String, String)], ortho: Vec<usize>) -> Option<OrthoPoset> {
    let p = validate_poset(elements, pairs).ok()?;
    let ortho = ortho
        .iter()
        .map(|&x| p.index_of(&elements[x]).unwrap())
        .collect::<Vec<_>>();
    let mut by_index = vec![0; ortho.len()];
    for (x, name) in elements.iter().enumerate() {
        by_index[p.index_of(name).unwrap()] = ortho[x];
    }
    validate_orthoposet(p, by_index).ok()
}

/// Bounds plus `m` complementary pairs with random order relations added in
/// mirrored pairs `a < b`, `b^⊥ < a^⊥`; rejects anything that is not a
/// valid orthoposet. At most 12 elements.
pub fn random_orthoposet(rng: &mut ChaCha8Rng) -> OrthoPoset {
    loop {
        let m = rng.gen_range(1..=5);
        let n = 2 * m + 2;
        let mut names = vec!["0".to_owned()];
        names.extend((1..=m).map(|k| format!("x{k}")));
        names.extend((1..=m).map(|k| format!("x{k}'")));
        names.push("1".to_owned());
        let ortho: Vec<usize> = (0..n)
            .map(|i| match i {
                0 => n - 1,
                i if i == n - 1 => 0,
                i if i <= m => i + m,
                i => i - m,
            })
            .collect();
        let mut pairs = Vec::new();
        for x in 1..n - 1 {
            pairs.push((names[0].clone(), names[x].clone()));
            pairs.push((names[x].clone(), names[n - 1].clone()));
        }
        for _ in 0..rng.gen_range(0..=m + 1) {
            let a = rng.gen_range(1..n - 1);
            let b = rng.gen_range(1..n - 1);
            if a == b || ortho[a] == b {
                continue;
            }
            pairs.push((names[a].clone(), names[b].clone()));
            pairs.push((names[ortho[b]].clone(), names[ortho[a]].clone()));
        }
        if let Some(o) = build(&names, &pairs, ortho) {
            return o;
        }
    }
}

/// Boolean algebras with the given atom counts glued at their bounds.
pub fn horizontal_sum(atom_counts: &[usize]) -> OrthoPoset {
    let mut names = vec!["0".to_owned(), "1".to_owned()];
    let mut ortho = vec![1, 0];
    let mut pairs = Vec::new();
    for (t, &k) in atom_counts.iter().enumerate() {
        let full = (1u32 << k) - 1;
        let start = names.len();
        let name = |s: u32| match s {
            0 => "0".to_owned(),
            s if s == full => "1".to_owned(),
            s => format!("b{t}_{s:0w$b}", w = k),
        };
        for s in 1..full {
            names.push(name(s));
        }
        for s in 1..full {
            ortho.push(start + (full ^ s) as usize - 1);
        }
        for s in 0..=full {
            for bit in 0..k {
                let u = s | 1 << bit;
                if u != s && !(s == 0 && u == full) {
                    pairs.push((name(s), name(u)));
                }
            }
        }
    }
    build(&names, &pairs, ortho).expect("horizontal sums are orthoposets")
}

/// Random orthoposets, every fifth one a horizontal sum of small boolean
/// algebras. All have at most 12 elements.
pub fn random_corpus(rng: &mut ChaCha8Rng, count: usize) -> Vec<OrthoPoset> {
    (0..count)
        .map(|t| {
            if t % 5 == 4 {
                let blocks = rng.gen_range(2..=3);
                let mut sizes = Vec::new();
                let mut total = 2;
                for _ in 0..blocks {
                    let k = rng.gen_range(2..=3);
                    let extra = (1 << k) - 2;
                    if total + extra <= 12 {
                        sizes.push(k);
                        total += extra;
                    }
                }
                horizontal_sum(&sizes)
            } else {
                random_orthoposet(rng)
            }
        })
        .collect()
}

pub fn zoo_orthoposets() -> Vec<(String, OrthoPoset)> {
    zoo()
        .into_iter()
        .filter_map(|m| match m.document().build().unwrap() {
            Model::Orthoposet(o) => Some((m.name.to_owned(), o)),
            _ => None,
        })
        .collect()
}

pub fn firefly() -> RepresentationSystem {
    match repsys::model::zoo_model("firefly")
        .unwrap()
        .document()
        .build()
        .unwrap()
    {
        Model::Repsys(m) => m.rs,
        _ => unreachable!(),
    }
}

/// The three axioms evaluated straight from complete candidate tables.
pub fn axioms_hold(c: &RsCandidate) -> bool {
    let k = c.views.len();
    let f = |i: usize, j: usize, x: usize| c.transforms[i * k + j].as_ref().unwrap()[x];
    for i in 0..k {
        let pi = &c.posets[i];
        if (0..pi.len()).any(|x| f(i, i, x) != x) {
            return false;
        }
        for j in 0..k {
            let pj = &c.posets[j];
            for x in 0..pj.len() {
                for y in 0..pj.len() {
                    if pj.leq(x, y) && !pi.leq(f(i, j, x), f(i, j, y)) {
                        return false;
                    }
                }
            }
            for l in 0..k {
                for x in 0..c.posets[l].len() {
                    if !pi.leq(f(i, l, x), f(i, j, f(j, l, x))) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
