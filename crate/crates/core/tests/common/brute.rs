//! Exhaustive oracles over small prime fields. Everything here enumerates
//! matrices entry by entry; nothing calls the library's hom, trace, ext or
//! projectivity code. Module values are materialised with the library's
//! plain quotient constructions.

use std::collections::BTreeSet;

use stratum_core::{
    quotient_module, submodule_as_module, BoundAlgebra, Field, Mat, ModuleMap, Quiver, RightModule, Scalar, Submodule,
    Subspace,
};

fn order(field: Field) -> u64 {
    field.order().expect("brute force needs a finite field")
}

/// Every vector of length `n` over `F_q`.
pub fn all_vectors(field: Field, n: usize) -> Vec<Vec<Scalar>> {
    let q = order(field);
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % q;
                    code /= q;
                    field.from_i64(d as i64)
                })
                .collect()
        })
        .collect()
}

/// Every tuple of matrices with the given shapes.
pub fn all_matrix_tuples(field: Field, shapes: &[(usize, usize)]) -> Vec<Vec<Mat>> {
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    all_vectors(field, total)
        .into_iter()
        .map(|entries| {
            let mut at = 0;
            shapes
                .iter()
                .map(|&(r, c)| {
                    let rows: Vec<Vec<Scalar>> =
                        (0..r).map(|i| entries[at + i * c..at + (i + 1) * c].to_vec()).collect();
                    at += r * c;
                    Mat::from_rows(field, c, rows).unwrap()
                })
                .collect()
        })
        .collect()
}

fn natural(f: &[Mat], m: &RightModule, n: &RightModule) -> bool {
    m.quiver()
        .arrows()
        .iter()
        .enumerate()
        .all(|(i, a)| f[a.source].mul(m.action(i)).unwrap() == n.action(i).mul(&f[a.target]).unwrap())
}

/// Every module map `M -> N`.
pub fn homs(m: &RightModule, n: &RightModule) -> Vec<ModuleMap> {
    let shapes: Vec<(usize, usize)> = m.dims().iter().zip(n.dims()).map(|(&d, &e)| (e, d)).collect();
    all_matrix_tuples(m.field(), &shapes)
        .into_iter()
        .filter(|f| natural(f, m, n))
        .map(|components| ModuleMap { components })
        .collect()
}

pub fn is_bijective(f: &ModuleMap) -> bool {
    f.components.iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
}

pub fn isomorphic(m: &RightModule, n: &RightModule) -> bool {
    m.dims() == n.dims() && homs(m, n).iter().any(is_bijective)
}

/// Every subspace of `F_q^n`, found by spanning all small families.
pub fn all_subspaces(field: Field, n: usize) -> Vec<Subspace> {
    let vectors = all_vectors(field, n);
    let mut found: Vec<Subspace> = vec![Subspace::zero(field, n)];
    let mut frontier = found.clone();
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            let mut t = s.clone();
            if t.insert(v) && !found.contains(&t) {
                found.push(t.clone());
                frontier.push(t);
            }
        }
    }
    found
}

/// Every submodule, as a product of subspaces closed under the action.
pub fn submodules(m: &RightModule) -> Vec<Submodule> {
    let per_vertex: Vec<Vec<Subspace>> = m.dims().iter().map(|&d| all_subspaces(m.field(), d)).collect();
    let mut out = vec![Vec::new()];
    for choices in &per_vertex {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Subspace>| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|spaces| Submodule { spaces }).filter(|s| s.is_closed(m)).collect()
}

/// Representation of a tree-shaped quiver's projective `eΛ` without
/// relations: `eΛ(v)` is one-dimensional iff there is a path `v -> e`.
pub fn tree_projective(quiver: &std::sync::Arc<Quiver>, field: Field, e: usize) -> RightModule {
    let n = quiver.vertex_count();
    let mut reach = vec![false; n];
    reach[e] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for a in quiver.arrows() {
            if reach[a.target] && !reach[a.source] {
                reach[a.source] = true;
                changed = true;
            }
        }
    }
    let dims: Vec<usize> = reach.iter().map(|&r| r as usize).collect();
    let actions = quiver
        .arrows()
        .iter()
        .map(|a| {
            if dims[a.source] == 1 && dims[a.target] == 1 {
                Mat::identity(field, 1)
            } else {
                Mat::zeros(field, dims[a.source], dims[a.target])
            }
        })
        .collect();
    RightModule::new(quiver.clone(), field, dims, actions).unwrap()
}

/// Classical standard modules for a total order, from the given projectives:
/// `Δ_k = P_k / Σ_{j<k} Σ_φ im(φ: P_j -> P_k)`, maps enumerated exhaustively.
pub fn classical_standards(projectives: &[RightModule], order: &[usize]) -> Vec<RightModule> {
    let mut out = vec![None; projectives.len()];
    for (k, &e) in order.iter().enumerate() {
        let p = &projectives[e];
        let mut trace = Submodule::zero(p);
        for &j in &order[..k] {
            for f in homs(&projectives[j], p) {
                trace = trace.sum(&f.image(p));
            }
        }
        out[e] = Some(quotient_module(p, &trace).unwrap().0);
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// Whether every nonzero endomorphism is invertible, by enumeration.
pub fn endomorphisms_form_division_ring(m: &RightModule) -> bool {
    homs(m, m).iter().all(|f| f.is_zero() || is_bijective(f))
}

/// Whether `M` has a filtration with every layer isomorphic to one of
/// `standards`, searching over all submodules.
pub fn has_standard_filtration(m: &RightModule, standards: &[RightModule]) -> bool {
    if m.is_zero() {
        return true;
    }
    let full = Submodule::full(m);
    submodules(m).into_iter().filter(|s| *s != full).any(|s| {
        let (q, _) = quotient_module(m, &s).unwrap();
        standards.iter().any(|d| isomorphic(&q, d)) && {
            let (sub, _) = submodule_as_module(m, &s);
            has_standard_filtration(&sub, standards)
        }
    })
}

/// `dim Ext¹(X, N)` by counting: cocycles are the families `c_α: X(t) -> N(s)`
/// making `[[N(α), c_α], [0, X(α)]]` satisfy the relations, coboundaries are
/// `N(α)h_t - h_s X(α)`.
pub fn ext1_by_counting(alg: &BoundAlgebra, x: &RightModule, n: &RightModule) -> usize {
    let field = alg.field();
    let q = order(field);
    let quiver = alg.quiver();
    let shapes: Vec<(usize, usize)> =
        quiver.arrows().iter().map(|a| (n.dim_at(a.source), x.dim_at(a.target))).collect();
    let middle = |c: &[Mat]| -> Vec<Mat> {
        quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (ns, nt) = (n.dim_at(a.source), n.dim_at(a.target));
                let (xs, xt) = (x.dim_at(a.source), x.dim_at(a.target));
                let mut e = Mat::zeros(field, ns + xs, nt + xt);
                e.set_block(0, 0, n.action(i));
                e.set_block(0, nt, &c[i]);
                e.set_block(ns, nt, x.action(i));
                e
            })
            .collect()
    };
    let cocycles = all_matrix_tuples(field, &shapes)
        .into_iter()
        .filter(|c| {
            let e = middle(c);
            alg.relations().iter().all(|r| {
                let dim = |v: usize| n.dim_at(v) + x.dim_at(v);
                let mut sum = Mat::zeros(field, dim(r.source()), dim(r.target()));
                for (coef, p) in r.terms() {
                    let mut prod = Mat::identity(field, dim(p.source));
                    for &a in &p.arrows {
                        prod = prod.mul(&e[a]).unwrap();
                    }
                    sum = sum.add(&prod.scale(coef));
                }
                sum.is_zero()
            })
        })
        .count() as u64;
    let h_shapes: Vec<(usize, usize)> = (0..quiver.vertex_count()).map(|v| (n.dim_at(v), x.dim_at(v))).collect();
    let coboundaries: BTreeSet<Vec<Scalar>> = all_matrix_tuples(field, &h_shapes)
        .into_iter()
        .map(|h| {
            quiver
                .arrows()
                .iter()
                .enumerate()
                .flat_map(|(i, a)| {
                    let c = n
                        .action(i)
                        .mul(&h[a.target])
                        .unwrap()
                        .add(&h[a.source].mul(x.action(i)).unwrap().scale(&field.from_i64(-1)));
                    c.entries().to_vec()
                })
                .collect()
        })
        .collect();
    let mut ratio = cocycles / coboundaries.len() as u64;
    assert_eq!(ratio * coboundaries.len() as u64, cocycles, "coboundaries form a subgroup");
    let mut d = 0;
    while ratio > 1 {
        assert_eq!(ratio % q, 0);
        ratio /= q;
        d += 1;
    }
    d
}
