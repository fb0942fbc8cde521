mod common;

use std::collections::HashMap;

use common::{dim_of, meet_dim, oracle_class, set_of, VecSet};
use grasslab::euclid::{e_equal, form, gram_brute, hat, sum_of_hats, verify_identity, EVector, FixVectors, IdentityId};
use grasslab::gflinalg::{random_invertible, random_subspace, Subspace};
use grasslab::grassmann::GraphContext;
use grasslab::orbits::OrbitClass;
use grasslab::qalg::{basis_transition, closed_table, rat, Params, TableId, TransitionId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn lines_in(q: i128, d: usize) -> i128 {
    (q.pow(d as u32) - 1) / (q - 1)
}

/// Members of every table label, with classes assigned by the set oracle.
struct Oracle {
    q: i128,
    n: usize,
    groups: HashMap<&'static str, Vec<VecSet>>,
}

impl Oracle {
    fn new(ctx: &GraphContext, x: &Subspace, y: &Subspace) -> Self {
        let f = ctx.field();
        let (sx, sy) = (set_of(f, x), set_of(f, y));
        let cap: VecSet = sx.intersection(&sy).cloned().collect();
        let rows: Vec<_> = x.basis().into_iter().chain(y.basis()).collect();
        let plus = common::span_set(f, ctx.n(), &rows);
        let mut groups: HashMap<&'static str, Vec<VecSet>> = HashMap::new();
        groups.insert("x", vec![sx]);
        groups.insert("y", vec![sy]);
        groups.insert("x_cap_y", vec![cap]);
        groups.insert("x_plus_y", vec![plus]);
        for c in OrbitClass::ALL {
            groups.insert(c.name(), Vec::new());
        }
        for z in ctx.local_neighbors(x).unwrap() {
            let c = OrbitClass::ALL[oracle_class(f, ctx.k(), x, y, &z)];
            groups.get_mut(c.name()).unwrap().push(set_of(f, &z));
        }
        Oracle { q: ctx.q() as i128, n: ctx.n(), groups }
    }

    /// `⟨Σ û, Σ v̂⟩` from meet dimensions alone.
    fn inner(&self, ctx: &GraphContext, a: &str, b: &str) -> BigRational {
        let f = ctx.field();
        let nb = lines_in(self.q, self.n);
        let mut total: i128 = 0;
        for u in &self.groups[a] {
            for v in &self.groups[b] {
                let meet = meet_dim(f, &[u, v]);
                total += nb * lines_in(self.q, meet) - lines_in(self.q, dim_of(f, u)) * lines_in(self.q, dim_of(f, v));
            }
        }
        BigRational::from_integer(BigInt::from(total))
    }

    fn table(&self, ctx: &GraphContext, id: TableId) -> Vec<Vec<BigRational>> {
        let (rows, cols) = id.labels();
        rows.iter().map(|r| cols.iter().map(|c| self.inner(ctx, r, c)).collect()).collect()
    }
}

fn as_rows(m: &grasslab::qalg::QMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

const GRAMS: [TableId; 6] = [
    TableId::GeomGram,
    TableId::CombGram,
    TableId::CrossGram,
    TableId::AGeom,
    TableId::AComb,
    TableId::AA,
];

#[test]
fn line_hats_are_orthogonal_up_to_constants() {
    let ctx = GraphContext::new(2, 7, 3).unwrap();
    let hats: Vec<EVector> = ctx.p1().iter().map(|s| hat(&ctx, s)).collect();
    for (a, ha) in hats.iter().enumerate() {
        for (b, hb) in hats.iter().enumerate() {
            let want = if a == b { rat(126) } else { rat(-1) };
            assert_eq!(form(ha, hb).unwrap(), want);
        }
    }
}

#[test]
fn hats_match_line_membership() {
    for q in [2u32, 3, 4] {
        let n = 7;
        let ctx = GraphContext::new(q, 7, 3).unwrap();
        let f = ctx.field();
        for seed in 0..5u64 {
            let k = 1 + seed as usize % 4;
            let u = random_subspace(f, n, k, seed);
            let su = set_of(f, &u);
            let h = hat(&ctx, &u);
            for (j, s) in ctx.p1().iter().enumerate() {
                let want = if su.contains(s.row(0)) { 1 } else { 0 };
                assert_eq!(h.coord(j), rat(want));
            }
            assert_eq!(h.total(), rat(lines_in(q as i128, k) as i64));
        }
    }
}

#[test]
fn fixture_spot_values() {
    let ctx = GraphContext::new(2, 7, 3).unwrap();
    let (x, y) = ctx.choose_pair(2, 0).unwrap();
    let g = gram_brute(&ctx, TableId::GeomGram, &x, &y).unwrap();
    assert_eq!(g[(0, 0)], rat(840));
    assert_eq!(g[(0, 1)], rat(78));
    let fv = FixVectors::build(&ctx, &x, &y).unwrap();
    assert_eq!(fv.vector("C").total(), rat(63));
    assert_eq!(fv.vector("B").total(), rat(96 * 7));
}

#[test]
fn empty_sum_is_zero() {
    let ctx = GraphContext::new(2, 7, 3).unwrap();
    let z = sum_of_hats(&ctx, &[]);
    assert!(z.coords().iter().all(Zero::is_zero));
    assert!(e_equal(&z, &EVector::zero(&ctx)).unwrap());
}

#[test]
fn brute_grams_equal_oracle_and_closed_tables() {
    for (q, n, k, i, seed) in [(2, 7, 3, 2, 0), (2, 7, 3, 2, 3), (2, 9, 4, 2, 0), (2, 9, 4, 3, 1)] {
        let ctx = GraphContext::new(q, n, k).unwrap();
        let p = Params::local(q, n, k, i).unwrap();
        let (x, y) = ctx.choose_pair(i as usize, seed).unwrap();
        let oracle = Oracle::new(&ctx, &x, &y);
        let fv = FixVectors::build(&ctx, &x, &y).unwrap();
        for id in GRAMS {
            let brute = as_rows(&fv.gram(id).unwrap());
            assert_eq!(brute, oracle.table(&ctx, id), "{id} at ({q},{n},{k},{i})");
            assert_eq!(brute, as_rows(&closed_table(id, &p).unwrap()), "{id} at ({q},{n},{k},{i})");
        }
    }
}

/// `‖v − Σ t_j b_j‖²` from oracle inner products only.
fn oracle_residual(ctx: &GraphContext, o: &Oracle, target: &str, basis: &[&str], t: &[BigRational]) -> BigRational {
    let mut r = o.inner(ctx, target, target);
    for (j, bj) in basis.iter().enumerate() {
        r -= rat(2) * &t[j] * o.inner(ctx, target, bj);
        for (l, bl) in basis.iter().enumerate() {
            r += &t[j] * &t[l] * o.inner(ctx, bj, bl);
        }
    }
    r
}

#[test]
fn transitions_hold_by_oracle_norms() {
    for (q, n, k, i, seed) in [(2, 7, 3, 2, 0), (2, 9, 4, 3, 2)] {
        let ctx = GraphContext::new(q, n, k).unwrap();
        let p = Params::local(q, n, k, i).unwrap();
        let (x, y) = ctx.choose_pair(i as usize, seed).unwrap();
        let o = Oracle::new(&ctx, &x, &y);
        for tid in TransitionId::ALL {
            let t = basis_transition(tid, &p).unwrap();
            let (basis, targets) = tid.labels();
            for (j, target) in targets.iter().enumerate() {
                let coeffs: Vec<BigRational> = (0..basis.len()).map(|r| t[(r, j)].clone()).collect();
                assert_eq!(oracle_residual(&ctx, &o, target, basis, &coeffs), rat(0), "{tid}/{target}");
            }
        }
    }
}

#[test]
fn identity_families_pass() {
    for (q, n, k, i, seed) in [(2, 7, 3, 2, 0), (2, 7, 3, 2, 8), (2, 9, 4, 2, 3), (2, 9, 4, 3, 0)] {
        let ctx = GraphContext::new(q, n, k).unwrap();
        let (x, y) = ctx.choose_pair(i, seed).unwrap();
        for id in IdentityId::ALL {
            let r = verify_identity(&ctx, id, &x, &y).unwrap();
            assert!(r.passed(), "({q},{n},{k},{i}) {:#?}", r.checks);
        }
    }
}

#[test]
fn identities_at_q3() {
    let ctx = GraphContext::new(3, 7, 3).unwrap();
    let (x, y) = ctx.choose_pair(2, 0).unwrap();
    let fv = FixVectors::build(&ctx, &x, &y).unwrap();
    let p = Params::local(3, 7, 3, 2).unwrap();
    for id in GRAMS {
        assert_eq!(fv.gram(id).unwrap(), closed_table(id, &p).unwrap(), "{id}");
    }
    for id in [IdentityId::Alin, IdentityId::Alin2, IdentityId::XcapXplus, IdentityId::Theta1Local, IdentityId::GramRank] {
        let r = fv.verify(&ctx, id).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }
}

#[test]
fn perturbed_transition_is_detected() {
    let ctx = GraphContext::new(2, 7, 3).unwrap();
    let (x, y) = ctx.choose_pair(2, 0).unwrap();
    let fv = FixVectors::build(&ctx, &x, &y).unwrap();
    let wrong = fv.vector("A+").add(&hat(&ctx, &ctx.p1()[0])).unwrap();
    assert!(!e_equal(&wrong, fv.vector("A+")).unwrap());
    let d = wrong.sub(fv.vector("A+")).unwrap();
    assert_eq!(form(&d, &d).unwrap(), rat(126));
}

#[test]
fn grams_are_invariant_under_the_general_linear_group() {
    let ctx = GraphContext::new(2, 9, 4).unwrap();
    let f = ctx.field();
    let (x, y) = ctx.choose_pair(2, 5).unwrap();
    let base = FixVectors::build(&ctx, &x, &y).unwrap();
    for seed in 0..2 {
        let g = random_invertible(f, 9, seed);
        let (gx, gy) = (f.apply_map(&g, &x).unwrap(), f.apply_map(&g, &y).unwrap());
        let moved = FixVectors::build(&ctx, &gx, &gy).unwrap();
        for id in GRAMS {
            assert_eq!(moved.gram(id).unwrap(), base.gram(id).unwrap());
        }
        assert_eq!(moved.partition.sizes(), base.partition.sizes());
    }
}

#[test]
fn c_conditions_hold() {
    for (q, n, k) in [(2, 7, 3), (2, 9, 4), (3, 7, 3)] {
        let ctx = GraphContext::new(q, n, k).unwrap();
        let (x, y) = ctx.choose_pair(2, 0).unwrap();
        let r = verify_identity(&ctx, IdentityId::CConditions, &x, &y).unwrap();
        assert!(r.passed(), "({q},{n},{k}) {:#?}", r.checks);
    }
}
