//! The Grassmann graph `J_q(n,k)`: distances, local neighborhoods and
//! brute-force intersection numbers, without materializing the vertex set.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gflinalg::{random_invertible, Field, FieldElem, Subspace};
use crate::qalg::{gauss_binom, IntersectionNumbers, Params};

/// Default cap on the number of vertices materialized by [`GraphContext::vertices`].
pub const DEFAULT_VERTEX_BUDGET: u128 = 20_000;

/// Set of points of `P_1`, one bit per canonical line index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Incidence(Vec<u64>);

impl Incidence {
    pub fn contains(&self, idx: usize) -> bool {
        self.0[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    /// Number of common lines.
    #[inline]
    pub fn and_count(&self, other: &Incidence) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Parameters of `J_q(n,k)` together with the canonical index of `P_1`.
#[derive(Clone, Debug)]
pub struct GraphContext {
    field: Field,
    params: Params,
    n: usize,
    k: usize,
    p1: Vec<Subspace>,
    /// `offsets[j]` is the index of the first line with pivot column `j`.
    offsets: Vec<usize>,
}

impl GraphContext {
    pub fn new(q: u32, n: u32, k: u32) -> Result<Self> {
        Self::from_params(&Params::new(q, n, k)?)
    }

    pub fn from_params(p: &Params) -> Result<Self> {
        let params = Params::new(p.q, p.n, p.k)?;
        let field = Field::new(p.q)?;
        let n = p.n as usize;
        let q = p.q as usize;
        let full = field.full_space(n);
        let p1: Vec<Subspace> = field
            .projective_vectors_in(&full)
            .into_iter()
            .map(|v| field.rref(n, &[v]))
            .collect();
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0usize;
        for j in 0..n {
            offsets.push(acc);
            acc += q.pow((n - 1 - j) as u32);
        }
        debug_assert_eq!(acc, p1.len());
        Ok(GraphContext {
            field,
            params,
            n,
            k: p.k as usize,
            p1,
            offsets,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn q(&self) -> u32 {
        self.params.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// All of `P_1` in canonical order.
    pub fn p1(&self) -> &[Subspace] {
        &self.p1
    }

    /// Canonical index of the line spanned by `v`, or `None` for `v = 0`.
    pub fn line_index(&self, v: &[FieldElem]) -> Option<usize> {
        let j = v.iter().position(|&c| c != 0)?;
        let f = &self.field;
        let s = f.inv(v[j]);
        let q = self.q() as usize;
        let tail = v[j + 1..]
            .iter()
            .fold(0usize, |acc, &c| acc * q + f.mul(s, c) as usize);
        Some(self.offsets[j] + tail)
    }

    pub fn index_of_line(&self, s: &Subspace) -> Result<usize> {
        self.check_ambient(s)?;
        if s.dim() != 1 {
            return domain(format!("expected a line, got dimension {}", s.dim()));
        }
        Ok(self.line_index(s.row(0)).expect("RREF row is nonzero"))
    }

    /// The lines of `u` as a bitset over `P_1`.
    pub fn incidence(&self, u: &Subspace) -> Incidence {
        let mut bits = vec![0u64; self.p1.len().div_ceil(64)];
        for v in self.field.projective_vectors_in(u) {
            let idx = self.line_index(&v).expect("nonzero");
            bits[idx / 64] |= 1 << (idx % 64);
        }
        Incidence(bits)
    }

    fn check_ambient(&self, u: &Subspace) -> Result<()> {
        if u.q() != self.q() || u.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                q_a: self.q(),
                n_a: self.n,
                q_b: u.q(),
                n_b: u.ambient(),
            });
        }
        Ok(())
    }

    /// Checks that `x` is a vertex, i.e. a `k`-subspace of the ambient space.
    pub fn check_vertex(&self, x: &Subspace) -> Result<()> {
        self.check_ambient(x)?;
        if x.dim() != self.k {
            return domain(format!("expected a {}-dimensional subspace, got dimension {}", self.k, x.dim()));
        }
        Ok(())
    }

    /// `∂(x,y) = k − dim(x ∩ y)`.
    pub fn distance(&self, x: &Subspace, y: &Subspace) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.k - self.field.intersect(x, y)?.dim())
    }

    /// `Γ(x)` in canonical order: every hyperplane of `x` joined with every
    /// line outside `x` modulo that hyperplane.
    pub fn local_neighbors(&self, x: &Subspace) -> Result<Vec<Subspace>> {
        self.check_vertex(x)?;
        let f = &self.field;
        let (n, k) = (self.n, self.k);
        let kspace = f.full_space(k);
        let functionals = f.projective_vectors_in(&kspace);
        let pivots: Vec<usize> = x.pivots().collect();
        let outside: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let wspace = f.coordinate_space(n, &outside);
        let ws = f.projective_vectors_in(&wspace);

        let mut out: Vec<Subspace> = functionals
            .par_iter()
            .flat_map_iter(|func| {
                let j0 = func.iter().position(|&c| c != 0).unwrap();
                let mut base: Vec<Vec<FieldElem>> = (0..k)
                    .filter(|&j| j != j0)
                    .map(|j| {
                        let mut v = x.row(j).to_vec();
                        f.axpy(&mut v, f.neg(func[j]), x.row(j0));
                        v
                    })
                    .collect();
                let r = x.row(j0).to_vec();
                let mut local = Vec::with_capacity(ws.len() * self.q() as usize);
                for w in &ws {
                    for a in f.elements() {
                        let mut v = w.clone();
                        f.axpy(&mut v, a, &r);
                        base.push(v);
                        local.push(f.rref(n, &base));
                        base.pop();
                    }
                }
                local
            })
            .collect();
        out.par_sort_unstable();
        Ok(out)
    }

    /// Counts `z ∈ Γ(x)` with `∂(y,z)` equal to `i+1`, `i−1` and `i`.
    pub fn brute_intersection_numbers(&self, x: &Subspace, y: &Subspace) -> Result<IntersectionNumbers> {
        let i = self.distance(x, y)?;
        let nbrs = self.local_neighbors(x)?;
        let dists: Vec<usize> = nbrs
            .par_iter()
            .map(|z| self.distance(y, z))
            .collect::<Result<_>>()?;
        let count = |d: usize| BigInt::from(dists.iter().filter(|&&e| e == d).count());
        Ok(IntersectionNumbers {
            b: count(i + 1),
            c: if i == 0 { BigInt::from(0) } else { count(i - 1) },
            a: count(i),
        })
    }

    /// A pair at distance `i`, `1 < i < k`. Seed 0 gives
    /// `x = ⟨e_1..e_k⟩, y = ⟨e_1..e_{k−i}, e_{k+1}..e_{k+i}⟩`; other seeds move
    /// that pair by a seeded random element of GL(V).
    pub fn choose_pair(&self, i: usize, seed: u64) -> Result<(Subspace, Subspace)> {
        if !(1 < i && i < self.k) {
            return domain(format!("need 1 < i < k, got i = {i}, k = {}", self.k));
        }
        let f = &self.field;
        let (n, k) = (self.n, self.k);
        let x = f.coordinate_space(n, &(0..k).collect::<Vec<_>>());
        let yi: Vec<usize> = (0..k - i).chain(k..k + i).collect();
        let y = f.coordinate_space(n, &yi);
        if seed == 0 {
            return Ok((x, y));
        }
        let sigma = random_invertible(f, n, seed);
        Ok((f.apply_map(&sigma, &x)?, f.apply_map(&sigma, &y)?))
    }

    pub fn vertex_count(&self) -> BigInt {
        gauss_binom(self.n as i64, self.k as i64, self.q() as u64).expect("k <= n")
    }

    /// Every vertex in canonical order, if there are at most `budget` of them.
    pub fn vertices(&self, budget: u128) -> Result<Vec<Subspace>> {
        let needed = self.vertex_count();
        if needed > BigInt::from(budget) {
            return Err(Error::BudgetExceeded {
                what: "vertex enumeration",
                needed: u128::try_from(&needed).unwrap_or(u128::MAX),
                budget,
            });
        }
        Ok(self.field.subspaces(self.n, self.k)?.collect())
    }

    /// Graph distances from `source` by breadth-first search over the whole
    /// graph, generating neighborhoods on the fly.
    pub fn bfs_distances(&self, source: &Subspace, budget: u128) -> Result<HashMap<Subspace, usize>> {
        self.check_vertex(source)?;
        let total = self.vertices(budget)?.len();
        let mut dist = HashMap::with_capacity(total);
        dist.insert(source.clone(), 0);
        let mut queue = VecDeque::from([source.clone()]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for w in self.local_neighbors(&u)? {
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }
}
