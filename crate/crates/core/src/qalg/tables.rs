//! Formula registry: every closed-form table is an array of entry evaluators
//! indexed by (row, column).

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::{Params, QMatrix, Sym};
use crate::error::{Error, Result};

/// Evaluates one table entry.
pub type Entry = fn(&Sym) -> BigRational;

pub const GEOM: [&str; 4] = ["x", "y", "x_cap_y", "x_plus_y"];
pub const COMB: [&str; 4] = ["x", "y", "B", "C"];
pub const ACLS: [&str; 3] = ["A+", "A0", "A-"];
pub const CLASSES: [&str; 5] = ["B", "C", "A+", "A0", "A-"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    GeomGram,
    CombGram,
    CrossGram,
    AGeom,
    AComb,
    AA,
    Structure,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::GeomGram,
        TableId::CombGram,
        TableId::CrossGram,
        TableId::AGeom,
        TableId::AComb,
        TableId::AA,
        TableId::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::GeomGram => "GEOM_GRAM",
            TableId::CombGram => "COMB_GRAM",
            TableId::CrossGram => "CROSS_GRAM",
            TableId::AGeom => "A_GEOM",
            TableId::AComb => "A_COMB",
            TableId::AA => "A_A",
            TableId::Structure => "STRUCTURE",
        }
    }

    /// Row labels, then column labels.
    pub fn labels(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            TableId::GeomGram => (&GEOM, &GEOM),
            TableId::CombGram => (&COMB, &COMB),
            TableId::CrossGram => (&COMB, &GEOM),
            TableId::AGeom => (&GEOM, &ACLS),
            TableId::AComb => (&COMB, &ACLS),
            TableId::AA => (&ACLS, &ACLS),
            TableId::Structure => (&CLASSES, &CLASSES),
        }
    }

    /// Whether the table consists of inner products.
    pub fn is_gram(self) -> bool {
        self != TableId::Structure
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown table id {s:?}")))
    }
}

impl Serialize for TableId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Coefficient tables expressing vectors in one of the two bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionId {
    /// `A⁺, A⁰, A⁻` in the basis `x̂, ŷ, (x∩y)^, (x+y)^`.
    Alin,
    /// `A⁺, A⁰, A⁻` in the basis `x̂, ŷ, B, C`.
    Alin2,
    /// `(x∩y)^, (x+y)^` in the basis `x̂, ŷ, B, C`.
    XcapXplus,
}

impl TransitionId {
    pub const ALL: [TransitionId; 3] = [TransitionId::Alin, TransitionId::Alin2, TransitionId::XcapXplus];

    pub fn name(self) -> &'static str {
        match self {
            TransitionId::Alin => "ALIN",
            TransitionId::Alin2 => "ALIN2",
            TransitionId::XcapXplus => "XCAP_XPLUS",
        }
    }

    pub fn labels(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            TransitionId::Alin => (&GEOM, &ACLS),
            TransitionId::Alin2 => (&COMB, &ACLS),
            TransitionId::XcapXplus => (&COMB, &GEOM[2..]),
        }
    }
}

impl fmt::Display for TransitionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransitionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransitionId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown transition id {s:?}")))
    }
}

// Recurring subexpressions.

fn nb(s: &Sym, m: i64) -> BigRational {
    s.b(s.n) * s.b(m)
}

/// `[n][m] − [k]^2`.
fn nk(s: &Sym, m: i64) -> BigRational {
    nb(s, m) - s.b(s.k) * s.b(s.k)
}

fn xx(s: &Sym) -> BigRational {
    s.p(s.k) * s.b(s.k) * s.b(s.n - s.k)
}

fn xy(s: &Sym) -> BigRational {
    nk(s, s.k - s.i)
}

fn x_cap(s: &Sym) -> BigRational {
    s.p(s.k) * s.b(s.k - s.i) * s.b(s.n - s.k)
}

fn x_plus(s: &Sym) -> BigRational {
    s.p(s.k + s.i) * s.b(s.k) * s.b(s.n - s.k - s.i)
}

fn bi(s: &Sym) -> BigRational {
    s.p(2 * s.i + 1) * s.b(s.k - s.i) * s.b(s.n - s.k - s.i)
}

fn ci(s: &Sym) -> BigRational {
    s.b(s.i) * s.b(s.i)
}

fn ap(s: &Sym) -> BigRational {
    s.p(s.i + 1) * s.b(s.i) * s.b(s.n - s.k - s.i)
}

fn a0(s: &Sym) -> BigRational {
    s.r(s.q - 1) * ci(s)
}

fn am(s: &Sym) -> BigRational {
    s.p(s.i + 1) * s.b(s.i) * s.b(s.k - s.i)
}

fn d1(s: &Sym) -> BigRational {
    nk(s, s.k - 1)
}

fn d2(s: &Sym) -> BigRational {
    nk(s, s.k - 2)
}

fn bx(s: &Sym) -> BigRational {
    bi(s) * d1(s)
}

fn by(s: &Sym) -> BigRational {
    bi(s) * nk(s, s.k - s.i - 1)
}

fn cx(s: &Sym) -> BigRational {
    ci(s) * d1(s)
}

fn cy(s: &Sym) -> BigRational {
    ci(s) * nk(s, s.k - s.i + 1)
}

/// `q^{k−2}[n] + [i]([n][k−2] − [k]^2)`.
fn half(s: &Sym) -> BigRational {
    s.p(s.k - 2) * s.b(s.n) + s.b(s.i) * d2(s)
}

fn geom_gram() -> Vec<Vec<Entry>> {
    vec![
        vec![xx, xy, x_cap, x_plus],
        vec![xy, xx, x_cap, x_plus],
        vec![
            x_cap,
            x_cap,
            |s| s.p(s.k - s.i) * s.b(s.k - s.i) * s.b(s.n - s.k + s.i),
            |s| s.p(s.k + s.i) * s.b(s.k - s.i) * s.b(s.n - s.k - s.i),
        ],
        vec![
            x_plus,
            x_plus,
            |s| s.p(s.k + s.i) * s.b(s.k - s.i) * s.b(s.n - s.k - s.i),
            |s| s.p(s.k + s.i) * s.b(s.k + s.i) * s.b(s.n - s.k - s.i),
        ],
    ]
}

fn cross_gram() -> Vec<Vec<Entry>> {
    vec![
        vec![xx, xy, x_cap, x_plus],
        vec![xy, xx, x_cap, x_plus],
        vec![
            bx,
            by,
            |s| bi(s) * (nb(s, s.k - s.i - 1) - s.b(s.k - s.i) * s.b(s.k)),
            |s| bi(s) * (nb(s, s.k - 1) - s.b(s.k) * s.b(s.k + s.i)),
        ],
        vec![
            cx,
            cy,
            |s| s.p(s.k) * ci(s) * s.b(s.k - s.i) * s.b(s.n - s.k),
            |s| s.p(s.k + s.i) * ci(s) * s.b(s.k) * s.b(s.n - s.k - s.i),
        ],
    ]
}

fn bc(s: &Sym) -> BigRational {
    bi(s) * ci(s) * d2(s)
}

fn comb_gram() -> Vec<Vec<Entry>> {
    vec![
        vec![xx, xy, bx, cx],
        vec![xy, xx, by, cy],
        vec![
            bx,
            by,
            |s| {
                let (k, n, i) = (s.k, s.n, s.i);
                s.p(4 * i + 2)
                    * s.b(k - i)
                    * s.b(n - k - i)
                    * (s.p(k - i - 2) * s.b(n) * (s.b(k - i) + s.b(n - k - i))
                        + s.b(k - i) * s.b(n - k - i) * d2(s))
            },
            bc,
        ],
        vec![
            cx,
            cy,
            bc,
            |s| {
                ci(s)
                    * (s.p(s.k - 2) * s.b(s.n) * (s.r(2 * s.q) * s.b(s.i - 1) + s.r(s.q + 1))
                        + ci(s) * d2(s))
            },
        ],
    ]
}

fn a_geom() -> Vec<Vec<Entry>> {
    vec![
        vec![|s| ap(s) * d1(s), |s| a0(s) * d1(s), |s| am(s) * d1(s)],
        vec![|s| ap(s) * xy(s), |s| a0(s) * xy(s), |s| am(s) * xy(s)],
        vec![
            |s| s.p(s.k + s.i + 1) * s.b(s.i) * s.b(s.n - s.k - s.i) * s.b(s.k - s.i) * s.b(s.n - s.k),
            |s| s.p(s.k) * a0(s) * s.b(s.k - s.i) * s.b(s.n - s.k),
            |s| am(s) * (nb(s, s.k - s.i - 1) - s.b(s.k - s.i) * s.b(s.k)),
        ],
        vec![
            |s| ap(s) * (nb(s, s.k - 1) - s.b(s.k) * s.b(s.k + s.i)),
            |s| s.p(s.k + s.i) * a0(s) * s.b(s.k) * s.b(s.n - s.k - s.i),
            |s| s.p(s.k + 2 * s.i + 1) * s.b(s.i) * s.b(s.k - s.i) * s.b(s.k) * s.b(s.n - s.k - s.i),
        ],
    ]
}

fn a_comb() -> Vec<Vec<Entry>> {
    let g = a_geom();
    vec![
        g[0].clone(),
        g[1].clone(),
        vec![
            |s| {
                let (k, n, i) = (s.k, s.n, s.i);
                s.p(2 * i + 2)
                    * s.b(i)
                    * s.b(k - i)
                    * s.b(n - k - i)
                    * ((s.p(i) * s.b(n - k - i) - s.r(1)) * d2(s) + d1(s))
            },
            |s| bi(s) * a0(s) * d2(s),
            |s| {
                let (k, n, i) = (s.k, s.n, s.i);
                s.p(2 * i + 2)
                    * s.b(i)
                    * s.b(k - i)
                    * s.b(n - k - i)
                    * ((s.p(i) * s.b(k - i) - s.r(1)) * d2(s) + d1(s))
            },
        ],
        vec![
            |s| s.p(s.i + 1) * s.b(s.n - s.k - s.i) * ci(s) * half(s),
            |s| {
                a0(s) * (s.p(s.k - 2) * s.b(s.n) * (s.r(2) * s.b(s.i) - s.r(1)) + ci(s) * d2(s))
            },
            |s| s.p(s.i + 1) * s.b(s.k - s.i) * ci(s) * half(s),
        ],
    ]
}

fn pz(s: &Sym) -> BigRational {
    s.p(s.i + 1) * s.r(s.q - 1) * s.b(s.n - s.k - s.i) * ci(s) * half(s)
}

fn pm(s: &Sym) -> BigRational {
    s.p(2 * s.i + 2) * s.b(s.k - s.i) * s.b(s.n - s.k - s.i) * ci(s) * d2(s)
}

fn zm(s: &Sym) -> BigRational {
    s.p(s.i + 1) * s.r(s.q - 1) * s.b(s.k - s.i) * ci(s) * half(s)
}

fn a_a() -> Vec<Vec<Entry>> {
    vec![
        vec![
            |s| {
                let (k, n, i) = (s.k, s.n, s.i);
                s.p(2 * i + 2)
                    * s.b(i)
                    * s.b(n - k - i)
                    * (s.p(k - i - 2) * s.b(n) * s.b(n - k) + s.b(i) * s.b(n - k - i) * d2(s))
            },
            pz,
            pm,
        ],
        vec![
            pz,
            |s| {
                let q1 = s.r(s.q - 1);
                a0(s)
                    * (s.p(s.k - 2) * s.b(s.n) * (s.r(2) * &q1 * s.b(s.i) + s.r(1))
                        + q1 * ci(s) * d2(s))
            },
            zm,
        ],
        vec![
            pm,
            zm,
            |s| {
                let (k, n, i) = (s.k, s.n, s.i);
                s.p(2 * i + 2)
                    * s.b(i)
                    * s.b(k - i)
                    * (s.p(k - i - 2) * s.b(n) * s.b(k) + s.b(i) * s.b(k - i) * d2(s))
            },
        ],
    ]
}

fn structure() -> Vec<Vec<Entry>> {
    vec![
        vec![
            |s| s.p(s.i + 1) * (s.b(s.k - s.i) + s.b(s.n - s.k - s.i)) - s.r(s.q + 1),
            |s| s.r(0),
            |s| s.r(s.q) * s.b(s.i),
            |s| s.r(0),
            |s| s.r(s.q) * s.b(s.i),
        ],
        vec![
            |s| s.r(0),
            |s| s.r(2 * s.q) * s.b(s.i - 1),
            |s| s.p(s.i + 1) * s.b(s.n - s.k - s.i),
            |s| s.r(s.q - 1) * (s.r(2) * s.b(s.i) - s.r(1)),
            |s| s.p(s.i + 1) * s.b(s.k - s.i),
        ],
        vec![
            |s| s.p(s.i + 1) * s.b(s.k - s.i),
            |s| s.b(s.i),
            |s| s.r(s.q) * s.b(s.n - s.k) - s.r(s.q + 1),
            |s| s.r(s.q - 1) * s.b(s.i),
            |s| s.r(0),
        ],
        vec![
            |s| s.r(0),
            |s| s.r(2) * s.b(s.i) - s.r(1),
            |s| s.p(s.i + 1) * s.b(s.n - s.k - s.i),
            |s| s.r(s.q - 1) * (s.r(2) * s.b(s.i) - s.r(1)) - s.r(1),
            |s| s.p(s.i + 1) * s.b(s.k - s.i),
        ],
        vec![
            |s| s.p(s.i + 1) * s.b(s.n - s.k - s.i),
            |s| s.b(s.i),
            |s| s.r(0),
            |s| s.r(s.q - 1) * s.b(s.i),
            |s| s.r(s.q) * s.b(s.k) - s.r(s.q + 1),
        ],
    ]
}

/// The entry evaluators of a table, row-major in printed order.
pub fn registry(id: TableId) -> Vec<Vec<Entry>> {
    match id {
        TableId::GeomGram => geom_gram(),
        TableId::CombGram => comb_gram(),
        TableId::CrossGram => cross_gram(),
        TableId::AGeom => a_geom(),
        TableId::AComb => a_comb(),
        TableId::AA => a_a(),
        TableId::Structure => structure(),
    }
}

fn evaluate(entries: Vec<Vec<Entry>>, s: &Sym) -> QMatrix {
    QMatrix::from_rows(
        entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| e(s)).collect())
            .collect(),
    )
}

/// Evaluates a closed-form table for `1 < i < k`.
pub fn closed_table(id: TableId, p: &Params) -> Result<QMatrix> {
    p.interior_i()?;
    Ok(evaluate(registry(id), &p.sym()))
}

/// Inverse of the geometric Gram matrix in closed form.
pub fn geometric_gram_inverse(p: &Params) -> Result<QMatrix> {
    p.interior_i()?;
    let s = p.sym();
    let (q, n, k, i) = (s.q, s.n, s.k, s.i);
    let qi = s.p(i);
    let one = s.r(1);
    let m = QMatrix::from_rows(vec![
        vec![qi.clone(), one.clone(), -qi.clone(), -one.clone()],
        vec![one.clone(), qi.clone(), -qi.clone(), -one.clone()],
        vec![
            -qi.clone(),
            -qi.clone(),
            (&qi * s.b(k) - s.b(i)) / s.b(k - i),
            one.clone(),
        ],
        vec![
            -one.clone(),
            -one.clone(),
            one,
            (&qi * s.b(n - k) - s.b(i)) / (s.p(2 * i) * s.b(n - k - i)),
        ],
    ]);
    let pre = s.p(k - i) * s.r(q - 1) * ci(&s) * s.b(n);
    Ok(m.scale(&pre.recip()))
}

fn alin() -> Vec<Vec<Entry>> {
    vec![
        vec![
            |s| s.p(s.i + 1) * s.b(s.n - s.k - s.i) * s.b(s.i - 1),
            |s| s.p(s.i) * s.b(s.i - 1) - s.b(s.i),
            |s| s.p(s.i + 1) * s.b(s.k - s.i) * s.b(s.i - 1),
        ],
        vec![|s| s.r(0), |s| -s.p(s.i - 1), |s| s.r(0)],
        vec![
            |s| s.p(2 * s.i) * s.b(s.n - s.k - s.i),
            |s| s.p(2 * s.i - 1),
            |s| -s.p(s.i) * s.b(s.i),
        ],
        vec![|s| -s.b(s.i), |s| s.p(s.i - 1), |s| s.p(s.i) * s.b(s.k - s.i)],
    ]
}

fn n2k(s: &Sym) -> BigRational {
    s.b(s.n - 2 * s.k)
}

fn alin2() -> Vec<Vec<Entry>> {
    vec![
        vec![
            |s| s.b(s.k - 1) * s.b(s.n - s.k - s.i) * s.b(s.n - s.k) / (s.p(s.k - s.i - 1) * n2k(s)),
            |s| -s.b(s.i),
            |s| -s.b(s.k - s.i) * s.b(s.k) * s.b(s.n - s.k - 1) / (s.p(s.k - s.i - 1) * n2k(s)),
        ],
        vec![
            |s| s.b(s.k) * s.b(s.n - s.k - s.i) / (s.p(s.k - 2 * s.i + 1) * s.b(s.i - 1) * n2k(s)),
            |s| -s.p(s.i - 1) * s.b(s.i) / s.b(s.i - 1),
            |s| -s.b(s.k - s.i) * s.b(s.n - s.k) / (s.p(s.k - 2 * s.i + 1) * s.b(s.i - 1) * n2k(s)),
        ],
        vec![
            |s| -s.b(s.n - s.k) / (s.p(s.k) * n2k(s)),
            |s| s.r(0),
            |s| s.b(s.k) / (s.p(s.k) * n2k(s)),
        ],
        vec![
            |s| -s.b(s.k) * s.b(s.n - s.k - s.i) / (s.p(s.k - s.i) * s.b(s.i - 1) * n2k(s)),
            |s| s.p(s.i - 1) / s.b(s.i - 1),
            |s| s.b(s.k - s.i) * s.b(s.n - s.k) / (s.p(s.k - s.i) * s.b(s.i - 1) * n2k(s)),
        ],
    ]
}

fn xcap_xplus() -> Vec<Vec<Entry>> {
    vec![
        vec![
            |s| s.b(s.k - s.i) * s.b(s.n - s.k - 1) / (s.p(s.k - 1) * n2k(s)),
            |s| -s.b(s.k - 1) * s.b(s.n - s.k - s.i) / (s.p(s.k - s.i - 1) * n2k(s)),
        ],
        vec![
            |s| s.b(s.k - s.i) / (s.p(s.k - s.i + 1) * s.b(s.i - 1) * n2k(s)),
            |s| -s.b(s.n - s.k - s.i) / (s.p(s.k - 2 * s.i + 1) * s.b(s.i - 1) * n2k(s)),
        ],
        vec![
            |s| -(s.p(s.k + s.i) * n2k(s)).recip(),
            |s| (s.p(s.k) * n2k(s)).recip(),
        ],
        vec![
            |s| -s.b(s.k - s.i) / (s.p(s.k) * s.b(s.i - 1) * n2k(s)),
            |s| s.b(s.n - s.k - s.i) / (s.p(s.k - s.i) * s.b(s.i - 1) * n2k(s)),
        ],
    ]
}

/// Coefficient matrix of a basis expansion: one row per basis vector, one
/// column per expanded vector.
pub fn basis_transition(id: TransitionId, p: &Params) -> Result<QMatrix> {
    p.interior_i()?;
    let entries = match id {
        TransitionId::Alin => alin(),
        TransitionId::Alin2 => alin2(),
        TransitionId::XcapXplus => xcap_xplus(),
    };
    Ok(evaluate(entries, &p.sym()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{intersection_numbers, orbit_sizes, rat};
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn f1() -> Params {
        Params::local(2, 7, 3, 2).unwrap()
    }

    fn int_rows(m: &QMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .map(|v| {
                        assert!(v.is_integer());
                        i64::try_from(v.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn ids_round_trip() {
        for id in TableId::ALL {
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
        for id in TransitionId::ALL {
            assert_eq!(id.name().parse::<TransitionId>().unwrap(), id);
        }
        assert!("NOPE".parse::<TableId>().is_err());
        assert!("NOPE".parse::<TransitionId>().is_err());
    }

    #[test]
    fn shapes_match_labels() {
        let p = f1();
        for id in TableId::ALL {
            let m = closed_table(id, &p).unwrap();
            let (r, c) = id.labels();
            assert_eq!((m.rows(), m.cols()), (r.len(), c.len()), "{id}");
        }
        for id in TransitionId::ALL {
            let m = basis_transition(id, &p).unwrap();
            let (r, c) = id.labels();
            assert_eq!((m.rows(), m.cols()), (r.len(), c.len()), "{id}");
        }
    }

    #[test]
    fn structure_at_fixture() {
        let m = closed_table(TableId::Structure, &f1()).unwrap();
        assert_eq!(
            int_rows(&m),
            vec![
                vec![29, 0, 6, 0, 6],
                vec![0, 4, 24, 5, 8],
                vec![8, 3, 27, 3, 0],
                vec![0, 5, 24, 4, 8],
                vec![24, 3, 0, 3, 11],
            ]
        );
    }

    #[test]
    fn geometric_gram_first_row() {
        let m = closed_table(TableId::GeomGram, &f1()).unwrap();
        assert_eq!(int_rows(&m)[0], vec![840, 78, 120, 672]);
        let c = closed_table(TableId::CrossGram, &f1()).unwrap();
        assert_eq!(c[(2, 0)], rat(31872));
        let a = closed_table(TableId::AGeom, &f1()).unwrap();
        assert_eq!(a[(0, 0)], rat(23904));
    }

    #[test]
    fn gram_inverse_prefactor() {
        let inv = geometric_gram_inverse(&f1()).unwrap();
        assert_eq!(inv[(0, 0)], rat(4) / rat(2286));
        let p = Params::local(2, 9, 4, 3).unwrap();
        let inv = geometric_gram_inverse(&p).unwrap();
        assert_eq!(inv[(0, 1)], rat(1) / rat(2 * 49 * 511));
    }

    #[test]
    fn transition_columns_at_fixture() {
        let alin = basis_transition(TransitionId::Alin, &f1()).unwrap();
        assert_eq!(alin.column(1), vec![rat(1), rat(-2), rat(8), rat(2)]);
        let alin2 = basis_transition(TransitionId::Alin2, &f1()).unwrap();
        assert_eq!(alin2.column(1), vec![rat(-3), rat(-6), rat(0), rat(2)]);
    }

    #[test]
    fn out_of_range_i_is_rejected() {
        let p = Params::new(2, 7, 3).unwrap().with_i(1).unwrap();
        assert!(closed_table(TableId::GeomGram, &p).is_err());
        assert!(geometric_gram_inverse(&p).is_err());
        assert!(basis_transition(TransitionId::Alin, &p).is_err());
    }

    fn valid_params() -> impl Strategy<Value = Params> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 7]), 3u32..7, 1u32..5)
            .prop_flat_map(|(q, k, extra)| (Just(q), Just(k), Just(2 * k + extra), 2..k))
            .prop_map(|(q, k, n, i)| Params::local(q, n, k, i).unwrap())
    }

    proptest! {
        #[test]
        fn gram_inverse_is_inverse(p in valid_params()) {
            let g = closed_table(TableId::GeomGram, &p).unwrap();
            let inv = geometric_gram_inverse(&p).unwrap();
            prop_assert!(g.mul(&inv).unwrap().is_identity());
        }

        #[test]
        fn structure_rows_and_transpose_relation(p in valid_params()) {
            let m = closed_table(TableId::Structure, &p).unwrap();
            let a1 = BigRational::from_integer(p.a1());
            prop_assert!(m.row_sums().iter().all(|v| *v == a1));
            let inum = intersection_numbers(&p).unwrap();
            let o = orbit_sizes(&p).unwrap();
            let d: Vec<BigInt> = vec![inum.b, inum.c, o.plus, o.zero, o.minus];
            // M^t = D M D^{-1}  <=>  M[c][r] d_c = d_r M[r][c]
            for r in 0..5 {
                for c in 0..5 {
                    let lhs = m[(c, r)].clone() * BigRational::from_integer(d[c].clone());
                    let rhs = m[(r, c)].clone() * BigRational::from_integer(d[r].clone());
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }

        #[test]
        fn symmetric_tables_are_symmetric(p in valid_params()) {
            for id in [TableId::GeomGram, TableId::CombGram, TableId::AA] {
                let m = closed_table(id, &p).unwrap();
                prop_assert_eq!(m.transpose(), m);
            }
        }

        #[test]
        fn structure_entries_are_nonnegative_integers(p in valid_params()) {
            let m = closed_table(TableId::Structure, &p).unwrap();
            for r in 0..5 {
                for c in 0..5 {
                    prop_assert!(m[(r, c)].is_integer());
                    prop_assert!(m[(r, c)] >= BigRational::zero());
                }
            }
        }
    }
}
