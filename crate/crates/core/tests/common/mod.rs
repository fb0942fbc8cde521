//! Brute-force oracles that avoid the library's elimination routines: spans
//! are materialized as explicit vector sets and dimensions are read off
//! their sizes.

#![allow(dead_code)]

use std::collections::HashSet;

use grasslab::gflinalg::{Field, FieldElem, Subspace};

pub type VecSet = HashSet<Vec<FieldElem>>;

/// Every vector in the span of `rows`.
pub fn span_set(f: &Field, n: usize, rows: &[Vec<FieldElem>]) -> VecSet {
    let mut set: VecSet = HashSet::from([vec![0; n]]);
    for r in rows {
        let mut next = HashSet::with_capacity(set.len() * f.q() as usize);
        for v in &set {
            for c in f.elements() {
                let mut w = v.clone();
                f.axpy(&mut w, c, r);
                next.insert(w);
            }
        }
        set = next;
    }
    set
}

pub fn set_of(f: &Field, u: &Subspace) -> VecSet {
    span_set(f, u.ambient(), &u.basis())
}

/// `log_q |set|`.
pub fn dim_of(f: &Field, set: &VecSet) -> usize {
    let q = f.q() as usize;
    let mut size = set.len();
    let mut d = 0;
    while size > 1 {
        assert_eq!(size % q, 0, "set size is not a power of q");
        size /= q;
        d += 1;
    }
    d
}

pub fn meet_dim(f: &Field, sets: &[&VecSet]) -> usize {
    let (first, rest) = sets.split_first().unwrap();
    let common: VecSet = first
        .iter()
        .filter(|v| rest.iter().all(|s| s.contains(*v)))
        .cloned()
        .collect();
    dim_of(f, &common)
}

pub fn join_dim(f: &Field, us: &[&Subspace]) -> usize {
    let n = us[0].ambient();
    let rows: Vec<Vec<FieldElem>> = us.iter().flat_map(|u| u.basis()).collect();
    dim_of(f, &span_set(f, n, &rows))
}

/// Orbit class label (index in B, C, A+, A0, A-) straight from the subspace
/// conditions; panics on the excluded mixed case.
pub fn oracle_class(f: &Field, k: usize, x: &Subspace, y: &Subspace, z: &Subspace) -> usize {
    let (sx, sy, sz) = (set_of(f, x), set_of(f, y), set_of(f, z));
    assert_eq!(meet_dim(f, &[&sz, &sx]), k - 1, "z must be adjacent to x");
    let i = k - meet_dim(f, &[&sx, &sy]);
    let dyz = k - meet_dim(f, &[&sz, &sy]);
    if dyz == i + 1 {
        return 0;
    }
    if dyz + 1 == i {
        return 1;
    }
    assert_eq!(dyz, i);
    let grows = join_dim(f, &[z, x, y]) > k + i;
    let keeps = meet_dim(f, &[&sz, &sx, &sy]) == k - i;
    match (grows, keeps) {
        (true, true) => 2,
        (false, true) => 3,
        (false, false) => 4,
        (true, false) => panic!("mixed case for {z}"),
    }
}

/// `σ(u)` as a vector set, applying the matrix entrywise.
pub fn image_set(f: &Field, sigma: &grasslab::gflinalg::LinearMap, u: &Subspace) -> VecSet {
    let n = u.ambient();
    let rows: Vec<Vec<FieldElem>> = u
        .rows()
        .map(|r| {
            (0..n)
                .map(|i| {
                    (0..n).fold(0, |acc, j| f.add(acc, f.mul(sigma.entry(i, j), r[j])))
                })
                .collect()
        })
        .collect();
    span_set(f, n, &rows)
}
