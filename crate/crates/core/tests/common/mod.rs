//! Reference implementations used only as test oracles. Nothing here calls
//! into the code path it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use dessins::canon::canonical_key;
use dessins::perm::{all_permutations, Permutation};
use dessins::{CanonicalKey, Dessin, SparseVector};
use num::{BigRational, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Exhaustive search for `π` with `π·a·π⁻¹ = b`.
pub fn brute_isomorphic(a: &Dessin, b: &Dessin) -> bool {
    a.edge_count() == b.edge_count()
        && all_permutations(a.edge_count()).any(|pi| {
            a.sigma0().conjugate_by(&pi) == *b.sigma0() && a.sigma1().conjugate_by(&pi) == *b.sigma1()
        })
}

pub fn all_pairs(n: usize) -> Vec<Dessin> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for a in &perms {
        for b in &perms {
            out.push(Dessin::new(a.clone(), b.clone()).unwrap());
        }
    }
    out
}

/// `(1/n!) Σ_g |C(g)|²` with centralizers found by brute force.
pub fn burnside_count(n: usize) -> usize {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let total: usize = perms
        .iter()
        .map(|g| {
            let c = perms.iter().filter(|h| h.compose(g) == g.compose(h)).count();
            c * c
        })
        .sum();
    assert_eq!(total % perms.len(), 0);
    total / perms.len()
}

/// Transitivity by repeated closure of a reachability set.
pub fn is_transitive(d: &Dessin) -> bool {
    let n = d.edge_count();
    if n == 0 {
        return false;
    }
    let mut reach = vec![false; n];
    reach[0] = true;
    loop {
        let mut grew = false;
        for e in 0..n {
            if reach[e] {
                for x in [d.sigma0().apply(e), d.sigma1().apply(e)] {
                    if !reach[x] {
                        reach[x] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    reach.iter().all(|&r| r)
}

/// Rank by dense Gaussian elimination over ℚ.
pub fn dense_rank(vectors: &[SparseVector]) -> usize {
    let mut columns: Vec<&CanonicalKey> = vectors.iter().flat_map(|v| v.keys()).collect();
    columns.sort();
    columns.dedup();
    let col_of: HashMap<&CanonicalKey, usize> = columns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (k, c) in v.iter() {
                row[col_of[k]] = c.clone();
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..columns.len() {
                    let delta = &f * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn vector(terms: &[(&Dessin, i64)]) -> SparseVector {
    SparseVector::from_terms(
        terms
            .iter()
            .map(|(d, c)| (canonical_key(d), BigRational::from_integer((*c).into()))),
    )
}

/// Product of covers by path lifting: a sheet of the fibre product over the
/// base point is a pair of sheets; lifting the loop around 0 (resp. 1) moves
/// each coordinate to the next edge in the cyclic order of its black (resp.
/// white) vertex. Returns canonical keys of the connected components, sorted.
pub fn lifted_product_components(a: &Dessin, b: &Dessin) -> Vec<CanonicalKey> {
    fn next_in_cycle(cycles: &[Vec<usize>]) -> HashMap<usize, usize> {
        let mut next = HashMap::new();
        for cycle in cycles {
            for (k, &e) in cycle.iter().enumerate() {
                next.insert(e, cycle[(k + 1) % cycle.len()]);
            }
        }
        next
    }
    let around = |d: &Dessin| (next_in_cycle(&d.sigma0().cycles()), next_in_cycle(&d.sigma1().cycles()));
    let (a0, a1) = around(a);
    let (b0, b1) = around(b);
    let lift = |loop_: usize, (x, y): (usize, usize)| -> (usize, usize) {
        if loop_ == 0 {
            (a0[&x], b0[&y])
        } else {
            (a1[&x], b1[&y])
        }
    };

    let mut component_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut keys = Vec::new();
    for x in 0..a.edge_count() {
        for y in 0..b.edge_count() {
            if component_of.contains_key(&(x, y)) {
                continue;
            }
            // label the sheets of this component in discovery order
            let mut label: HashMap<(usize, usize), usize> = HashMap::new();
            let mut sheets = vec![(x, y)];
            label.insert((x, y), 0);
            let mut queue = VecDeque::from([(x, y)]);
            while let Some(s) = queue.pop_front() {
                for l in 0..2 {
                    let t = lift(l, s);
                    if !label.contains_key(&t) {
                        label.insert(t, sheets.len());
                        sheets.push(t);
                        queue.push_back(t);
                    }
                }
            }
            let s0: Vec<usize> = sheets.iter().map(|&s| label[&lift(0, s)]).collect();
            let s1: Vec<usize> = sheets.iter().map(|&s| label[&lift(1, s)]).collect();
            for &s in &sheets {
                component_of.insert(s, keys.len());
            }
            keys.push(canonical_key(&Dessin::from_images(s0, s1).unwrap()));
        }
    }
    keys.sort();
    keys
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

pub fn random_dessin<R: Rng>(n: usize, rng: &mut R) -> Dessin {
    Dessin::new(random_permutation(n, rng), random_permutation(n, rng)).unwrap()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cycle type of the diagonal action: each pair of cycles of lengths `l1, l2`
/// contributes `gcd(l1, l2)` cycles of length `lcm(l1, l2)`.
pub fn diagonal_cycle_type(t1: &[usize], t2: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for &l1 in t1 {
        for &l2 in t2 {
            let g = gcd(l1, l2);
            out.extend(std::iter::repeat(l1 / g * l2).take(g));
        }
    }
    out.sort_unstable();
    out
}
