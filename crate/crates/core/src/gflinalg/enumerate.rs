use super::field::{Field, FieldElem};
use super::subspace::Subspace;
use crate::error::{domain, Result};

/// Iterator over all `l`-dimensional subspaces of GF(q)^n in canonical order.
///
/// Pivot patterns are visited lexicographically; within a pattern the free
/// entries count upwards as a base-q numeral, first free entry most
/// significant. Every yielded basis is already in RREF, so nothing repeats.
pub struct Subspaces {
    field: Field,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<FieldElem>,
    done: bool,
}

impl Field {
    pub fn subspaces(&self, n: usize, l: usize) -> Result<Subspaces> {
        if l > n {
            return domain(format!("subspace dimension {l} exceeds ambient dimension {n}"));
        }
        let pivots: Vec<usize> = (0..l).collect();
        let free = free_positions(&pivots, n);
        Ok(Subspaces {
            field: self.clone(),
            n,
            digits: vec![0; free.len()],
            free,
            pivots,
            done: false,
        })
    }
}

fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let l = c.len();
    for i in (0..l).rev() {
        if c[i] < n - l + i {
            c[i] += 1;
            for j in i + 1..l {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let n = self.n;
        let l = self.pivots.len();
        let mut rows = vec![0 as FieldElem; l * n];
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r * n + p] = 1;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            rows[r * n + c] = d;
        }
        let out = Subspace::from_rref_unchecked(self.field.q(), n, l, rows);

        let q = self.field.q() as FieldElem;
        let mut carry = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                carry = false;
                break;
            }
            *d = 0;
        }
        if carry {
            if next_combination(&mut self.pivots, n) {
                self.free = free_positions(&self.pivots, n);
                self.digits = vec![0; self.free.len()];
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_values() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.subspaces(7, 0).unwrap().count(), 1);
        assert_eq!(f.subspaces(7, 3).unwrap().count(), 11811);
        assert_eq!(f.subspaces(7, 7).unwrap().count(), 1);
        let g = Field::new(3).unwrap();
        assert_eq!(g.subspaces(7, 1).unwrap().count(), 1093);
        assert!(f.subspaces(3, 4).is_err());
    }

    #[test]
    fn output_is_strictly_increasing_and_canonical() {
        let f = Field::new(3).unwrap();
        let all: Vec<_> = f.subspaces(5, 2).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for s in &all {
            assert_eq!(&f.rref(5, &s.basis()), s);
        }
    }
}
