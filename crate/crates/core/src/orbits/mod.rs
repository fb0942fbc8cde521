//! The five `Stab(x,y)`-orbits on `Γ(x)`: classification, the induced
//! partition, its quotient matrix, and explicit group elements moving one
//! member of an orbit to another.

mod witness;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::gflinalg::Subspace;
use crate::grassmann::GraphContext;
use crate::qalg::{bracket, QMatrix};

pub use witness::{witness_pair, witness_single};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitClass {
    B,
    C,
    APlus,
    AZero,
    AMinus,
}

impl OrbitClass {
    /// Printed order: B, C, A⁺, A⁰, A⁻.
    pub const ALL: [OrbitClass; 5] = [
        OrbitClass::B,
        OrbitClass::C,
        OrbitClass::APlus,
        OrbitClass::AZero,
        OrbitClass::AMinus,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::B => "B",
            OrbitClass::C => "C",
            OrbitClass::APlus => "A+",
            OrbitClass::AZero => "A0",
            OrbitClass::AMinus => "A-",
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrbitClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown orbit class {s:?}")))
    }
}

impl Serialize for OrbitClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Classifies neighbors of `x` relative to a fixed second vertex `y`.
pub(crate) struct Classifier<'a> {
    ctx: &'a GraphContext,
    x: &'a Subspace,
    y: &'a Subspace,
    i: usize,
    cap: Subspace,
    plus: Subspace,
}

impl<'a> Classifier<'a> {
    pub fn new(ctx: &'a GraphContext, x: &'a Subspace, y: &'a Subspace) -> Result<Self> {
        let i = ctx.distance(x, y)?;
        if !(1 < i && i < ctx.k()) {
            return domain(format!("need 1 < d(x,y) < k, got d(x,y) = {i}, k = {}", ctx.k()));
        }
        let f = ctx.field();
        Ok(Classifier {
            ctx,
            x,
            y,
            i,
            cap: f.intersect(x, y)?,
            plus: f.sum(x, y)?,
        })
    }

    pub fn distance(&self) -> usize {
        self.i
    }

    pub fn classify(&self, z: &Subspace) -> Result<OrbitClass> {
        let (ctx, k, i) = (self.ctx, self.ctx.k(), self.i);
        if ctx.distance(self.x, z)? != 1 {
            return domain(format!("{z} is not adjacent to x"));
        }
        let f = ctx.field();
        let dyz = k - f.intersect(z, self.y)?.dim();
        if dyz == i + 1 {
            return Ok(OrbitClass::B);
        }
        if dyz + 1 == i {
            return Ok(OrbitClass::C);
        }
        let grows = f.sum(z, &self.plus)?.dim() > k + i;
        let keeps = f.intersect(z, &self.cap)?.dim() == k - i;
        match (grows, keeps) {
            (true, true) => Ok(OrbitClass::APlus),
            (false, true) => Ok(OrbitClass::AZero),
            (false, false) => Ok(OrbitClass::AMinus),
            (true, false) => Err(Error::Internal(format!(
                "{z} enlarges x+y and shrinks x∩y at once"
            ))),
        }
    }
}

/// Orbit class of `z ∈ Γ(x)` with respect to `(x, y)`.
pub fn classify(ctx: &GraphContext, x: &Subspace, y: &Subspace, z: &Subspace) -> Result<OrbitClass> {
    Classifier::new(ctx, x, y)?.classify(z)
}

/// `Γ(x)` split into the five classes, each in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPartition {
    pub x: Subspace,
    pub y: Subspace,
    pub i: usize,
    pub classes: [Vec<Subspace>; 5],
}

impl YPartition {
    pub fn class(&self, c: OrbitClass) -> &[Subspace] {
        &self.classes[c.index()]
    }

    pub fn sizes(&self) -> [usize; 5] {
        std::array::from_fn(|j| self.classes[j].len())
    }

    /// All members with their classes, class by class.
    pub fn members(&self) -> impl Iterator<Item = (OrbitClass, &Subspace)> {
        OrbitClass::ALL
            .into_iter()
            .flat_map(move |c| self.class(c).iter().map(move |z| (c, z)))
    }
}

#[derive(Serialize)]
struct ClassView<'a> {
    class: OrbitClass,
    count: usize,
    members: &'a [Subspace],
}

impl Serialize for YPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            x: &'a Subspace,
            y: &'a Subspace,
            i: usize,
            classes: Vec<ClassView<'a>>,
        }
        View {
            x: &self.x,
            y: &self.y,
            i: self.i,
            classes: OrbitClass::ALL
                .into_iter()
                .map(|c| ClassView {
                    class: c,
                    count: self.class(c).len(),
                    members: self.class(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Classifies every vertex of `Γ(x)`.
pub fn y_partition(ctx: &GraphContext, x: &Subspace, y: &Subspace) -> Result<YPartition> {
    let cl = Classifier::new(ctx, x, y)?;
    let nbrs = ctx.local_neighbors(x)?;
    let labels: Vec<OrbitClass> = nbrs.par_iter().map(|z| cl.classify(z)).collect::<Result<_>>()?;
    let mut classes: [Vec<Subspace>; 5] = Default::default();
    for (z, c) in nbrs.into_iter().zip(labels) {
        classes[c.index()].push(z);
    }
    Ok(YPartition {
        x: x.clone(),
        y: y.clone(),
        i: cl.distance(),
        classes,
    })
}

/// Neighbor counts between classes, rows and columns in printed class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StructureMatrix {
    pub entries: [[u64; 5]; 5],
}

impl StructureMatrix {
    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_fn(5, 5, |r, c| crate::qalg::rat(self.entries[r][c] as i64))
    }

    pub fn row_sums(&self) -> [u64; 5] {
        self.entries.map(|r| r.iter().sum())
    }
}

/// Counts, for every member `w` of every class, its neighbors in each class
/// (adjacency inside `Γ(x)`). The partition is equitable iff these counts
/// depend only on the class of `w`; the matrix holds the counts of the first
/// member of each class.
pub fn structure_matrix_brute(ctx: &GraphContext, part: &YPartition) -> Result<(StructureMatrix, bool)> {
    let k = ctx.k() as i64;
    let target = u32::try_from(bracket(k - 1, ctx.q() as u64)?).expect("small bracket");
    let members: Vec<(OrbitClass, &Subspace)> = part.members().collect();
    let inc: Vec<_> = members.par_iter().map(|(_, z)| ctx.incidence(z)).collect();
    let labels: Vec<usize> = members.iter().map(|(c, _)| c.index()).collect();

    let counts: Vec<[u64; 5]> = (0..members.len())
        .into_par_iter()
        .map(|a| {
            let mut row = [0u64; 5];
            for b in 0..members.len() {
                if a != b && inc[a].and_count(&inc[b]) == target {
                    row[labels[b]] += 1;
                }
            }
            row
        })
        .collect();

    let mut entries = [[0u64; 5]; 5];
    let mut equitable = true;
    for c in OrbitClass::ALL {
        let mut rows = labels.iter().zip(&counts).filter(|(l, _)| **l == c.index()).map(|(_, r)| r);
        if let Some(first) = rows.next() {
            entries[c.index()] = *first;
            equitable &= rows.all(|r| r == first);
        }
    }
    Ok((StructureMatrix { entries }, equitable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::FieldElem;

    fn e(n: usize, idx: &[usize]) -> Vec<FieldElem> {
        let mut v = vec![0; n];
        for &j in idx {
            v[j] = 1;
        }
        v
    }

    fn span(ctx: &GraphContext, rows: &[&[usize]]) -> Subspace {
        let rows: Vec<_> = rows.iter().map(|r| e(7, r)).collect();
        ctx.field().rref(7, &rows)
    }

    #[test]
    fn fixture_classification() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let (x, y) = ctx.choose_pair(2, 0).unwrap();
        let cases: [(&[&[usize]], OrbitClass); 5] = [
            (&[&[0], &[1], &[5]], OrbitClass::APlus),
            (&[&[1], &[2], &[3]], OrbitClass::AMinus),
            (&[&[0], &[1], &[2, 3]], OrbitClass::AZero),
            (&[&[0], &[1], &[3]], OrbitClass::C),
            (&[&[1], &[2], &[5]], OrbitClass::B),
        ];
        for (rows, want) in cases {
            let z = span(&ctx, rows);
            assert_eq!(classify(&ctx, &x, &y, &z).unwrap(), want, "{z}");
        }
        let far = span(&ctx, &[&[3], &[4], &[5]]);
        assert!(matches!(classify(&ctx, &x, &y, &far), Err(Error::Domain(_))));
    }

    #[test]
    fn classify_rejects_adjacent_pair() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let x = span(&ctx, &[&[0], &[1], &[2]]);
        let y = span(&ctx, &[&[0], &[1], &[3]]);
        let z = span(&ctx, &[&[0], &[1], &[4]]);
        assert!(classify(&ctx, &x, &y, &z).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for c in OrbitClass::ALL {
            assert_eq!(c.name().parse::<OrbitClass>().unwrap(), c);
        }
        assert!("A".parse::<OrbitClass>().is_err());
    }

    #[test]
    fn partition_serializes_in_class_order() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let (x, y) = ctx.choose_pair(2, 0).unwrap();
        let part = y_partition(&ctx, &x, &y).unwrap();
        let v = serde_json::to_value(&part).unwrap();
        let names: Vec<_> = v["classes"].as_array().unwrap().iter().map(|c| c["class"].clone()).collect();
        assert_eq!(names, vec!["B", "C", "A+", "A0", "A-"]);
        assert_eq!(v["classes"][1]["count"], 9);
        assert_eq!(v["x"], "2:7:3:1000000,0100000,0010000");
    }
}
