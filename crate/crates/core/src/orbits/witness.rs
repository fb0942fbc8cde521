//! Explicit elements of `Stab(x)` and `Stab(x,y)` built from matched adapted
//! bases. Every returned map is checked against its defining property before
//! it is handed out.

use super::{Classifier, OrbitClass};
use crate::error::{Error, Result};
use crate::gflinalg::{Field, FieldElem, LinearMap, Subspace};
use crate::grassmann::GraphContext;

type Vector = Vec<FieldElem>;

/// The map sending `basis[j] ↦ image[j]` for all `j`.
fn map_between(f: &Field, basis: &[Vector], image: &[Vector]) -> Result<LinearMap> {
    let src = LinearMap::from_columns(f, basis)
        .map_err(|e| Error::Internal(format!("adapted basis is not a basis: {e}")))?;
    let dst = LinearMap::from_columns(f, image)
        .map_err(|e| Error::Internal(format!("adapted basis is not a basis: {e}")))?;
    Ok(dst.compose(f, &src.inverse(f)))
}

/// Appends unit vectors independent of `basis` until it spans the space.
fn complete(f: &Field, n: usize, basis: &mut Vec<Vector>) {
    let full = f.full_space(n);
    let extra = f.extend_basis(n, basis, &full);
    basis.extend(extra);
}

fn check_maps(f: &Field, sigma: &LinearMap, pairs: &[(&Subspace, &Subspace)]) -> Result<()> {
    for (u, v) in pairs {
        if f.apply_map(sigma, u)? != **v {
            return Err(Error::Internal(format!("witness does not send {u} to {v}")));
        }
    }
    Ok(())
}

/// `R ⊆ x ∩ v` extended to `x`, then to `v`, then to the whole space.
fn single_basis(f: &Field, n: usize, x: &Subspace, v: &Subspace) -> Result<Vec<Vector>> {
    let cap = f.intersect(v, x)?;
    let mut b = cap.basis();
    let s = f.extend_basis(n, &b, x);
    b.extend(s);
    let t = f.extend_basis(n, &b, v);
    b.extend(t);
    complete(f, n, &mut b);
    Ok(b)
}

/// An element `σ` of GL(V) with `σ(x) = x` and `σ(v) = v'`.
pub fn witness_single(ctx: &GraphContext, x: &Subspace, v: &Subspace, v2: &Subspace) -> Result<LinearMap> {
    let f = ctx.field();
    let n = ctx.n();
    let d = f.intersect(v, x)?.dim();
    let d2 = f.intersect(v2, x)?.dim();
    if v.dim() != v2.dim() || d != d2 {
        return Err(Error::ClassMismatch {
            left: format!("dim {} meeting x in dim {d}", v.dim()),
            right: format!("dim {} meeting x in dim {d2}", v2.dim()),
        });
    }
    let sigma = map_between(f, &single_basis(f, n, x, v)?, &single_basis(f, n, x, v2)?)?;
    check_maps(f, &sigma, &[(x, x), (v, v2)])?;
    Ok(sigma)
}

/// An element `σ ∈ Stab(x,y)` with `σ(z) = z'` for `z, z'` in the same class.
pub fn witness_pair(
    ctx: &GraphContext,
    x: &Subspace,
    y: &Subspace,
    z: &Subspace,
    z2: &Subspace,
) -> Result<LinearMap> {
    let cl = Classifier::new(ctx, x, y)?;
    let (c1, c2) = (cl.classify(z)?, cl.classify(z2)?);
    if c1 != c2 {
        return Err(Error::OrbitMismatch { left: c1, right: c2 });
    }
    let f = ctx.field();
    let n = ctx.n();
    let sigma = if c1 == OrbitClass::AZero {
        map_between(f, &zero_basis(f, n, x, y, z)?, &zero_basis(f, n, x, y, z2)?)?
    } else {
        let terms = lattice_terms(f, &[x, y, z])?;
        let (b1, b2) = matched_lattice_bases(f, n, &terms, &[x, y, z], &[x, y, z2])?;
        map_between(f, &b1, &b2)?
    };
    check_maps(f, &sigma, &[(x, x), (y, y), (z, z2)])?;
    Ok(sigma)
}

/// Adapted basis for the A⁰ class, in the order `R, S, Q, W, ψ, ϱ`:
/// `R` spans `x∩y`, `R ∪ S` spans `z∩x`, `ψ ∈ (z+x)∩y` outside `x∩y` splits
/// as `ψ = η + ϱ` with `η ∈ z` and `ϱ ∈ x`, `R ∪ {ψ} ∪ Q` spans `y`, and `W`
/// completes `x+y` to the whole space.
fn zero_basis(f: &Field, n: usize, x: &Subspace, y: &Subspace, z: &Subspace) -> Result<Vec<Vector>> {
    let cap = f.intersect(x, y)?;
    let r = cap.basis();
    let s = f.extend_basis(n, &r, &f.intersect(z, x)?);

    let zx = f.sum(z, x)?;
    let psi = f
        .intersect(&zx, y)?
        .rows()
        .find(|row| !f.contains(&cap, row))
        .map(<[FieldElem]>::to_vec)
        .ok_or_else(|| Error::Internal("(z+x)∩y equals x∩y".into()))?;

    let eta0 = z
        .rows()
        .find(|row| !f.contains(x, row))
        .map(<[FieldElem]>::to_vec)
        .ok_or_else(|| Error::Internal("z is contained in x".into()))?;
    let rp = f.reduce(x, &psi);
    let r0 = f.reduce(x, &eta0);
    let c = r0.iter().position(|&v| v != 0).expect("eta0 lies outside x");
    let a = f.mul(rp[c], f.inv(r0[c]));
    let mut eta = eta0.clone();
    f.scale(&mut eta, a);
    let mut rho = psi.clone();
    f.axpy(&mut rho, f.neg(1), &eta);
    if !f.contains(x, &rho) {
        return Err(Error::Internal("ψ does not split along z and x".into()));
    }

    let mut ry = r.clone();
    ry.push(psi.clone());
    let q = f.extend_basis(n, &ry, y);

    let mut b = r;
    b.extend(s);
    b.extend(q);
    let mut head = b.clone();
    head.push(psi.clone());
    head.push(rho.clone());
    let w = f.extend_basis(n, &head, &f.full_space(n));
    b.extend(w);
    b.push(psi);
    b.push(rho);
    Ok(b)
}

#[derive(Clone, Copy, Debug)]
enum Term {
    Gen(usize),
    Meet(usize, usize),
    Join(usize, usize),
}

fn eval_term(f: &Field, t: Term, gens: &[&Subspace], vals: &[Subspace]) -> Result<Subspace> {
    match t {
        Term::Gen(g) => Ok(gens[g].clone()),
        Term::Meet(a, b) => f.intersect(&vals[a], &vals[b]),
        Term::Join(a, b) => f.sum(&vals[a], &vals[b]),
    }
}

/// Terms generating the sublattice spanned by `gens` under `∩` and `+`, one
/// per distinct element, in discovery order.
fn lattice_terms(f: &Field, gens: &[&Subspace]) -> Result<Vec<Term>> {
    let mut terms: Vec<Term> = (0..gens.len()).map(Term::Gen).collect();
    let mut vals: Vec<Subspace> = gens.iter().map(|g| (*g).clone()).collect();
    let mut done = 0;
    while done < vals.len() {
        let upto = vals.len();
        for a in 0..upto {
            for b in a.max(done)..upto {
                if a == b {
                    continue;
                }
                for t in [Term::Meet(a, b), Term::Join(a, b)] {
                    let v = eval_term(f, t, gens, &vals)?;
                    if !vals.contains(&v) {
                        vals.push(v);
                        terms.push(t);
                    }
                }
            }
        }
        done = upto;
    }
    Ok(terms)
}

/// Greedy bases for two configurations described by the same terms: walk the
/// lattice elements by increasing dimension and add the RREF rows of each one
/// that are independent of what is already chosen, then complete with unit
/// vectors. Fails unless every element is spanned by the chosen vectors it
/// contains, on both sides, with matching dimensions.
fn matched_lattice_bases(
    f: &Field,
    n: usize,
    terms: &[Term],
    gens1: &[&Subspace],
    gens2: &[&Subspace],
) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let eval_all = |gens: &[&Subspace]| -> Result<Vec<Subspace>> {
        let mut vals = Vec::with_capacity(terms.len());
        for &t in terms {
            let v = eval_term(f, t, gens, &vals)?;
            vals.push(v);
        }
        Ok(vals)
    };
    let l1 = eval_all(gens1)?;
    let l2 = eval_all(gens2)?;
    if l1.iter().zip(&l2).any(|(a, b)| a.dim() != b.dim()) {
        return Err(Error::Internal("lattice configurations differ".into()));
    }
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by_key(|&t| (l1[t].dim(), t));

    let mut b1: Vec<Vector> = Vec::new();
    let mut b2: Vec<Vector> = Vec::new();
    for &t in &order {
        let add1 = f.extend_basis(n, &b1, &l1[t]);
        let add2 = f.extend_basis(n, &b2, &l2[t]);
        if add1.len() != add2.len() {
            return Err(Error::Internal("lattice configurations differ".into()));
        }
        b1.extend(add1);
        b2.extend(add2);
    }
    for (vals, basis) in [(&l1, &b1), (&l2, &b2)] {
        for v in vals.iter() {
            let inside: Vec<&Vector> = basis.iter().filter(|u| f.contains(v, u)).collect();
            if inside.len() != v.dim() {
                return Err(Error::Internal("lattice generated by x, y, z is not distributive".into()));
            }
        }
    }
    complete(f, n, &mut b1);
    complete(f, n, &mut b2);
    Ok((b1, b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::classify;

    fn span(ctx: &GraphContext, rows: &[&[usize]]) -> Subspace {
        let n = ctx.n();
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| {
                let mut v = vec![0; n];
                for &j in *r {
                    v[j] = 1;
                }
                v
            })
            .collect();
        ctx.field().rref(n, &rows)
    }

    #[test]
    fn single_witness_examples() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let f = ctx.field();
        let x = span(&ctx, &[&[0], &[1], &[2]]);
        let v = span(&ctx, &[&[0], &[3]]);
        let v2 = span(&ctx, &[&[1], &[4]]);
        let s = witness_single(&ctx, &x, &v, &v2).unwrap();
        assert_eq!(f.apply_map(&s, &x).unwrap(), x);
        assert_eq!(f.apply_map(&s, &v).unwrap(), v2);
        assert!(witness_single(&ctx, &x, &v, &v).unwrap().is_identity());
        let v3 = span(&ctx, &[&[3], &[4]]);
        assert!(matches!(
            witness_single(&ctx, &x, &v, &v3),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn pair_witness_examples() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let f = ctx.field();
        let (x, y) = ctx.choose_pair(2, 0).unwrap();
        let z = span(&ctx, &[&[0], &[1], &[2, 3]]);
        let z2 = span(&ctx, &[&[0], &[2], &[1, 4]]);
        assert_eq!(classify(&ctx, &x, &y, &z2).unwrap(), OrbitClass::AZero);
        assert!(witness_pair(&ctx, &x, &y, &z, &z).unwrap().is_identity());
        let s = witness_pair(&ctx, &x, &y, &z, &z2).unwrap();
        assert_eq!(f.apply_map(&s, &z).unwrap(), z2);
        let ap = span(&ctx, &[&[0], &[1], &[5]]);
        let am = span(&ctx, &[&[1], &[2], &[3]]);
        assert_eq!(
            witness_pair(&ctx, &x, &y, &ap, &am),
            Err(Error::OrbitMismatch {
                left: OrbitClass::APlus,
                right: OrbitClass::AMinus
            })
        );
    }

    #[test]
    fn lattice_terms_are_closed_and_distinct() {
        let ctx = GraphContext::new(2, 7, 3).unwrap();
        let f = ctx.field();
        let a = span(&ctx, &[&[0], &[1]]);
        let b = span(&ctx, &[&[1], &[2]]);
        let c = span(&ctx, &[&[2], &[3]]);
        let gens = [&a, &b, &c];
        let terms = lattice_terms(f, &gens).unwrap();
        let mut vals: Vec<Subspace> = Vec::new();
        for &t in &terms {
            let v = eval_term(f, t, &gens, &vals).unwrap();
            vals.push(v);
        }
        for (i, u) in vals.iter().enumerate() {
            assert!(!vals[..i].contains(u));
            for v in &vals {
                assert!(vals.contains(&f.intersect(u, v).unwrap()));
                assert!(vals.contains(&f.sum(u, v).unwrap()));
            }
        }
    }
}
