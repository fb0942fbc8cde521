use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::field::{Field, FieldElem, MAX_Q};
use super::gf2;
use crate::error::{Error, Result};

/// A subspace of GF(q)^n stored by its reduced row echelon basis.
///
/// Two values compare equal iff they are the same subspace. The derived
/// [`Ord`] is the global canonical order: dimension, then pivot-column set
/// lexicographically, then the free entries read row-major as a base-q numeral.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: u32,
    n: usize,
    dim: usize,
    rows: Vec<FieldElem>,
}

impl Subspace {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.rows[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElem]> + '_ {
        self.rows.chunks_exact(self.n.max(1)).take(self.dim)
    }

    pub fn basis(&self) -> Vec<Vec<FieldElem>> {
        self.rows().map(<[FieldElem]>::to_vec).collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows()
            .map(|r| r.iter().position(|&c| c != 0).expect("RREF rows are nonzero"))
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub(crate) fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::AmbientMismatch {
                q_a: self.q,
                n_a: self.n,
                q_b: other.q,
                n_b: other.n,
            });
        }
        Ok(())
    }

    /// Interchange text form `q:n:d:` followed by the `d` RREF rows, each a
    /// string of `n` base-q digits, rows separated by `,`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}:{}:{}:", self.q, self.n, self.dim);
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                s.push(',');
            }
            s.extend(row.iter().map(|&d| digit_char(d)));
        }
        s
    }

    /// Parses the text form. Rows need not be reduced, but must be independent
    /// and exactly `d` in number; the result is canonicalized.
    pub fn parse(text: &str) -> Result<Subspace> {
        let perr = |m: &str| Error::Parse(format!("{m} in subspace text {text:?}"));
        let mut parts = text.trim().splitn(4, ':');
        let mut num = |what: &str| -> Result<usize> {
            parts
                .next()
                .ok_or_else(|| perr(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| perr(&format!("bad {what}")))
        };
        let q = num("q")?;
        let n = num("n")?;
        let d = num("d")?;
        let body = parts.next().ok_or_else(|| perr("missing rows"))?;
        if q > MAX_Q as usize {
            return Err(perr("unsupported q"));
        }
        let field = Field::new(q as u32).map_err(|_| perr("unsupported q"))?;
        if d > n {
            return Err(perr("d exceeds n"));
        }
        let mut rows = Vec::with_capacity(d);
        if !body.is_empty() {
            for row in body.split(',') {
                if row.chars().count() != n {
                    return Err(perr("row length differs from n"));
                }
                let v = row
                    .chars()
                    .map(|c| match c.to_digit(32) {
                        Some(v) if (v as usize) < q => Ok(v as FieldElem),
                        _ => Err(perr("invalid digit")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push(v);
            }
        }
        if rows.len() != d {
            return Err(perr("row count differs from d"));
        }
        let s = field.rref(n, &rows);
        if s.dim != d {
            return Err(perr("rows are linearly dependent"));
        }
        Ok(s)
    }

    pub(crate) fn from_rref_unchecked(q: u32, n: usize, dim: usize, rows: Vec<FieldElem>) -> Self {
        debug_assert_eq!(rows.len(), dim * n);
        Subspace { q, n, dim, rows }
    }
}

fn digit_char(d: FieldElem) -> char {
    std::char::from_digit(d as u32, 32).expect("digit below 32")
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.n, self.dim)
            .cmp(&(other.q, other.n, other.dim))
            .then_with(|| self.pivots().cmp(other.pivots()))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({})", self.to_text())
    }
}

impl FromStr for Subspace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subspace::parse(s)
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Subspace::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Unit vector `e_{j+1}` (0-based `j`) of length `n`.
pub fn unit_vector(n: usize, j: usize) -> Vec<FieldElem> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

impl Field {
    /// Canonical subspace spanned by `rows`.
    ///
    /// # Panics
    /// If some row does not have length `n`.
    pub fn rref<R: AsRef<[FieldElem]>>(&self, n: usize, rows: &[R]) -> Subspace {
        let mut m = Vec::with_capacity(rows.len() * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "row length must equal the ambient dimension");
            m.extend_from_slice(r);
        }
        self.rref_flat(n, m)
    }

    pub(crate) fn rref_flat(&self, n: usize, mut m: Vec<FieldElem>) -> Subspace {
        let nrows = m.len().checked_div(n).unwrap_or(0);
        let rank = if self.is_binary() && n <= 64 {
            gf2::rref_in_place(&mut m, nrows, n)
        } else {
            self.rref_generic(&mut m, nrows, n)
        };
        m.truncate(rank * n);
        Subspace::from_rref_unchecked(self.q(), n, rank, m)
    }

    /// Generic Gauss-Jordan elimination; leaves the RREF rows first and
    /// returns the rank.
    pub(crate) fn rref_generic(&self, m: &mut [FieldElem], nrows: usize, n: usize) -> usize {
        let mut r = 0;
        for col in 0..n {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| m[i * n + col] != 0) else {
                continue;
            };
            if p != r {
                for c in 0..n {
                    m.swap(p * n + c, r * n + c);
                }
            }
            let inv = self.inv(m[r * n + col]);
            self.scale(&mut m[r * n..(r + 1) * n], inv);
            let pivot_row: Vec<FieldElem> = m[r * n..(r + 1) * n].to_vec();
            for i in 0..nrows {
                if i == r {
                    continue;
                }
                let c = m[i * n + col];
                if c != 0 {
                    self.axpy(&mut m[i * n..(i + 1) * n], self.neg(c), &pivot_row);
                }
            }
            r += 1;
        }
        r
    }

    pub fn zero_space(&self, n: usize) -> Subspace {
        Subspace::from_rref_unchecked(self.q(), n, 0, Vec::new())
    }

    pub fn full_space(&self, n: usize) -> Subspace {
        let rows: Vec<Vec<FieldElem>> = (0..n).map(|j| unit_vector(n, j)).collect();
        self.rref(n, &rows)
    }

    /// Span of unit vectors with the given 0-based indices.
    pub fn coordinate_space(&self, n: usize, idx: &[usize]) -> Subspace {
        let rows: Vec<Vec<FieldElem>> = idx.iter().map(|&j| unit_vector(n, j)).collect();
        self.rref(n, &rows)
    }

    /// Reduces `v` against the RREF basis of `u`; the result is zero iff `v ∈ u`.
    pub fn reduce(&self, u: &Subspace, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut w = v.to_vec();
        for (row, p) in u.rows().zip(u.pivots()) {
            let c = w[p];
            if c != 0 {
                self.axpy(&mut w, self.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, u: &Subspace, v: &[FieldElem]) -> bool {
        self.reduce(u, v).iter().all(|&c| c == 0)
    }

    /// `u ⊆ v`.
    pub fn is_subspace(&self, u: &Subspace, v: &Subspace) -> bool {
        u.q == v.q && u.n == v.n && u.dim <= v.dim && u.rows().all(|r| self.contains(v, r))
    }

    pub fn rank<R: AsRef<[FieldElem]>>(&self, n: usize, rows: &[R]) -> usize {
        self.rref(n, rows).dim
    }

    pub fn sum(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        u.check_same_ambient(v)?;
        let mut m = u.rows.clone();
        m.extend_from_slice(&v.rows);
        Ok(self.rref_flat(u.n, m))
    }

    /// Zassenhaus: eliminate `[u | u ; v | 0]`; rows with vanishing left half
    /// span `u ∩ v` in their right half.
    pub fn intersect(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        u.check_same_ambient(v)?;
        let n = u.n;
        if u.dim == 0 || v.dim == 0 {
            return Ok(self.zero_space(n));
        }
        let w = 2 * n;
        let nrows = u.dim + v.dim;
        let mut m = Vec::with_capacity(nrows * w);
        for r in u.rows() {
            m.extend_from_slice(r);
            m.extend_from_slice(r);
        }
        for r in v.rows() {
            m.extend_from_slice(r);
            m.extend(std::iter::repeat_n(0, n));
        }
        let rank = if self.is_binary() && w <= 64 {
            gf2::rref_in_place(&mut m, nrows, w)
        } else {
            self.rref_generic(&mut m, nrows, w)
        };
        let mut out = Vec::new();
        for r in 0..rank {
            let row = &m[r * w..(r + 1) * w];
            if row[..n].iter().all(|&c| c == 0) {
                out.extend_from_slice(&row[n..]);
            }
        }
        Ok(self.rref_flat(n, out))
    }

    /// Ω(u): the 1-dimensional subspaces contained in `u`, in canonical order.
    pub fn omega(&self, u: &Subspace) -> Vec<Subspace> {
        let mut lines: Vec<Subspace> = self
            .projective_vectors_in(u)
            .into_iter()
            .map(|v| Subspace::from_rref_unchecked(self.q(), u.n, 1, v))
            .collect();
        lines.sort();
        lines
    }

    /// One normalized representative (first nonzero entry 1) of every line in `u`.
    pub fn projective_vectors_in(&self, u: &Subspace) -> Vec<Vec<FieldElem>> {
        let d = u.dim;
        let q = self.q() as usize;
        let mut out = Vec::new();
        for lead in 0..d {
            let tail = d - lead - 1;
            let count = q.pow(tail as u32);
            for mut code in 0..count {
                let mut v = u.row(lead).to_vec();
                for j in (lead + 1..d).rev() {
                    let c = (code % q) as FieldElem;
                    code /= q;
                    self.axpy(&mut v, c, u.row(j));
                }
                out.push(v);
            }
        }
        out
    }

    /// Greedily picks rows of `target`'s RREF basis that are independent of
    /// `current` and of each other. The result extends `current` to a basis of
    /// `current + target`.
    pub fn extend_basis(
        &self,
        n: usize,
        current: &[Vec<FieldElem>],
        target: &Subspace,
    ) -> Vec<Vec<FieldElem>> {
        let mut span = self.rref(n, current);
        let mut added = Vec::new();
        for row in target.rows() {
            if !self.contains(&span, row) {
                added.push(row.to_vec());
                let mut m = span.rows.clone();
                m.extend_from_slice(row);
                span = self.rref_flat(n, m);
            }
        }
        added
    }
}
