use std::fmt;

use super::field::{Field, FieldElem};
use super::subspace::Subspace;
use crate::error::{domain, Result};

/// An element of GL(V), acting on column vectors: `v ↦ M v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    q: u32,
    n: usize,
    m: Vec<FieldElem>,
}

impl LinearMap {
    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        LinearMap { q: field.q(), n, m }
    }

    /// Row-major `n × n` entries; rejects singular matrices.
    pub fn from_matrix(field: &Field, n: usize, m: Vec<FieldElem>) -> Result<Self> {
        if m.len() != n * n {
            return domain(format!("expected {} entries, got {}", n * n, m.len()));
        }
        if field.rank(n, &m.chunks(n.max(1)).collect::<Vec<_>>()) != n {
            return domain("matrix is singular");
        }
        Ok(LinearMap { q: field.q(), n, m })
    }

    /// The map whose `j`-th column is `cols[j]`, i.e. sending `e_j ↦ cols[j]`.
    pub fn from_columns(field: &Field, cols: &[Vec<FieldElem>]) -> Result<Self> {
        let n = cols.len();
        let mut m = vec![0; n * n];
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return domain("column length differs from column count");
            }
            for i in 0..n {
                m[i * n + j] = c[i];
            }
        }
        Self::from_matrix(field, n, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElem {
        self.m[i * self.n + j]
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entry(i, j) == (i == j) as FieldElem))
    }

    pub fn apply_vector(&self, field: &Field, v: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.n)
            .map(|i| {
                self.m[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, field: &Field, other: &LinearMap) -> LinearMap {
        let n = self.n;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a == 0 {
                    continue;
                }
                field.axpy(&mut m[i * n..(i + 1) * n], a, &other.m[k * n..(k + 1) * n]);
            }
        }
        LinearMap { q: self.q, n, m }
    }

    pub fn inverse(&self, field: &Field) -> LinearMap {
        let n = self.n;
        let w = 2 * n;
        let mut aug = vec![0; n * w];
        for i in 0..n {
            aug[i * w..i * w + n].copy_from_slice(&self.m[i * n..(i + 1) * n]);
            aug[i * w + n + i] = 1;
        }
        let rank = field.rref_generic(&mut aug, n, w);
        debug_assert_eq!(rank, n);
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n..(i + 1) * n].copy_from_slice(&aug[i * w + n..(i + 1) * w]);
        }
        LinearMap { q: self.q, n, m }
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| std::char::from_digit(self.entry(i, j) as u32, 32).unwrap())
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap(GF({}), {}x{})", self.q, self.n, self.n)
    }
}

impl Field {
    /// The canonical image `σ(u)`.
    pub fn apply_map(&self, sigma: &LinearMap, u: &Subspace) -> Result<Subspace> {
        if sigma.q != u.q() || sigma.n != u.ambient() {
            return Err(crate::error::Error::AmbientMismatch {
                q_a: sigma.q,
                n_a: sigma.n,
                q_b: u.q(),
                n_b: u.ambient(),
            });
        }
        let rows: Vec<Vec<FieldElem>> = u.rows().map(|r| sigma.apply_vector(self, r)).collect();
        Ok(self.rref(u.ambient(), &rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_subspaces() {
        let f = Field::new(3).unwrap();
        let u = f.coordinate_space(5, &[1, 2]);
        let id = LinearMap::identity(&f, 5);
        assert_eq!(f.apply_map(&id, &u).unwrap(), u);
        assert!(id.is_identity());
    }

    #[test]
    fn coordinate_swap() {
        let f = Field::new(2).unwrap();
        let n = 7;
        let mut cols: Vec<Vec<FieldElem>> = (0..n).map(|j| super::super::unit_vector(n, j)).collect();
        cols.swap(0, 3);
        let sigma = LinearMap::from_columns(&f, &cols).unwrap();
        let x = f.coordinate_space(n, &[0, 1, 2]);
        assert_eq!(f.apply_map(&sigma, &x).unwrap(), f.coordinate_space(n, &[3, 1, 2]));
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = Field::new(5).unwrap();
        assert!(LinearMap::from_matrix(&f, 2, vec![1, 2, 2, 4]).is_err());
        assert!(LinearMap::from_matrix(&f, 2, vec![1, 2, 3]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let f = Field::new(4).unwrap();
        let s = crate::gflinalg::random_invertible(&f, 6, 11);
        assert!(s.compose(&f, &s.inverse(&f)).is_identity());
        assert!(s.inverse(&f).compose(&f, &s).is_identity());
    }
}
