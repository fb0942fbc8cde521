use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldElem};
use super::map::LinearMap;
use super::subspace::Subspace;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn independent_rows<R: Rng>(field: &Field, n: usize, count: usize, rng: &mut R) -> Vec<Vec<FieldElem>> {
    let q = field.q() as FieldElem;
    let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(count);
    let mut span = field.zero_space(n);
    while rows.len() < count {
        let v: Vec<FieldElem> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if field.contains(&span, &v) {
            continue;
        }
        span = field.sum(&span, &field.rref(n, &[&v])).expect("same ambient");
        rows.push(v);
    }
    rows
}

/// Uniform element of GL(n, q): rows drawn one at a time, dependent draws rejected.
pub fn random_invertible_with<R: Rng>(field: &Field, n: usize, rng: &mut R) -> LinearMap {
    let rows = independent_rows(field, n, n, rng);
    LinearMap::from_matrix(field, n, rows.concat()).expect("rows independent by construction")
}

/// Uniform `l`-dimensional subspace (uniform ordered basis, then canonicalized).
pub fn random_subspace_with<R: Rng>(field: &Field, n: usize, l: usize, rng: &mut R) -> Subspace {
    assert!(l <= n, "subspace dimension exceeds ambient dimension");
    field.rref(n, &independent_rows(field, n, l, rng))
}

pub fn random_invertible(field: &Field, n: usize, seed: u64) -> LinearMap {
    random_invertible_with(field, n, &mut rng_from_seed(seed))
}

pub fn random_subspace(field: &Field, n: usize, l: usize, seed: u64) -> Subspace {
    random_subspace_with(field, n, l, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn deterministic_for_seed() {
        let f = Field::new(3).unwrap();
        assert_eq!(random_invertible(&f, 5, 9), random_invertible(&f, 5, 9));
        assert_eq!(random_subspace(&f, 6, 2, 4), random_subspace(&f, 6, 2, 4));
    }

    #[test]
    fn dimension_is_exact() {
        let f = Field::new(2).unwrap();
        for seed in 0..50 {
            for l in 0..=5 {
                assert_eq!(random_subspace(&f, 5, l, seed).dim(), l);
            }
        }
    }

    #[test]
    fn every_line_of_small_space_is_hit() {
        let f = Field::new(2).unwrap();
        let mut rng = rng_from_seed(1);
        let hit: BTreeSet<_> = (0..1000).map(|_| random_subspace_with(&f, 3, 1, &mut rng)).collect();
        let all: BTreeSet<_> = f.subspaces(3, 1).unwrap().collect();
        assert_eq!(hit, all);
        assert_eq!(all.len(), 7);
    }
}
