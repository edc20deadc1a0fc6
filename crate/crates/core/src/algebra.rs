//! Bound quiver algebras `K(Q, I)` compiled to per-pair hom bases.
//!
//! `Hom(a, b)` is the span of path classes from `a` to `b`. Each basis element
//! is represented by a single path. Multiplication is stored as two families
//! of matrices: postcomposition with an arrow (`post`) and precomposition with
//! an arrow (`pre`); longer products walk a path arrow by arrow.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{is_zero_vector, unit_vector, zero_vector, Mat, Subspace, Vector};
use crate::quiver::{Path, Quiver, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundAlgebra {
    quiver: Arc<Quiver>,
    field: Field,
    relations: Vec<Relation>,
    /// `basis[a][b]`: representative paths of `Hom(a, b)`, shortest first.
    basis: Vec<Vec<Vec<Path>>>,
    /// `post[alpha][a]`: `Hom(a, s) -> Hom(a, t)` for `alpha: s -> t`.
    post: Vec<Vec<Mat>>,
    /// `pre[alpha][e]`: `Hom(t, e) -> Hom(s, e)` for `alpha: s -> t`.
    pre: Vec<Vec<Mat>>,
    nilpotency: usize,
}

/// One subspace of `Hom(a, b)` for every ordered pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpaces {
    spaces: Vec<Vec<Subspace>>,
}

impl PairSpaces {
    pub fn zero(alg: &BoundAlgebra) -> Self {
        Self::from_fn(alg, |a, b| Subspace::zero(alg.field, alg.hom_dim(a, b)))
    }

    pub fn full(alg: &BoundAlgebra) -> Self {
        Self::from_fn(alg, |a, b| Subspace::full(alg.field, alg.hom_dim(a, b)))
    }

    fn from_fn(alg: &BoundAlgebra, mut f: impl FnMut(usize, usize) -> Subspace) -> Self {
        let n = alg.vertex_count();
        PairSpaces { spaces: (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect() }
    }

    pub fn get(&self, a: usize, b: usize) -> &Subspace {
        &self.spaces[a][b]
    }

    pub fn vertex_count(&self) -> usize {
        self.spaces.len()
    }

    pub fn dim(&self, a: usize, b: usize) -> usize {
        self.spaces[a][b].dim()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().flatten().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().flatten().all(Subspace::is_zero)
    }

    pub fn is_subspace_of(&self, other: &PairSpaces) -> bool {
        self.spaces.iter().flatten().zip(other.spaces.iter().flatten()).all(|(u, v)| u.is_subspace_of(v))
    }

    pub fn sum(&self, other: &PairSpaces) -> Result<PairSpaces, Error> {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(r, s)| r.iter().zip(s).map(|(u, v)| u.sum(v)).collect())
            .collect::<Result<_, _>>()?;
        Ok(PairSpaces { spaces })
    }

    /// Pushes every component through the projection of a quotient algebra.
    pub fn project(&self, quotient: &Quotient) -> PairSpaces {
        let n = self.spaces.len();
        PairSpaces {
            spaces: (0..n)
                .map(|a| (0..n).map(|b| self.spaces[a][b].image(&quotient.projection[a][b])).collect())
                .collect(),
        }
    }
}

/// A quotient `Λ / ΛFΛ` together with the projection `Hom_Λ(a,b) -> Hom_Γ(a,b)`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: BoundAlgebra,
    pub projection: Vec<Vec<Mat>>,
}

/// Paths of one vertex pair, longest first, with a reverse index.
struct PairPaths {
    paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

impl PairPaths {
    fn new(mut paths: Vec<Path>) -> Self {
        paths.sort_by(|p, q| (Reverse(p.len()), &p.arrows).cmp(&(Reverse(q.len()), &q.arrows)));
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PairPaths { paths, index }
    }
}

/// Compiles `K(Q, I)` for the ideal generated by `relations`.
///
/// Works modulo paths longer than `L` for `L = 1, 2, ...` and stops at the
/// first `L` where every path of length `L` lies in the ideal; that `L`
/// becomes the nilpotency bound. Fails if this does not happen by
/// `max_length`.
pub fn build_algebra(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    max_length: usize,
) -> Result<BoundAlgebra, Error> {
    let n = quiver.vertex_count();
    let mut by_length: Vec<Vec<Path>> = vec![quiver.paths_of_length(0)];
    for len in 1..=max_length.max(1) {
        by_length.push(quiver.paths_of_length(len));
        let pairs = pair_paths(n, &by_length);
        let spans = ideal_spans(&quiver, &relations, field, len, &by_length, &pairs);
        let survivor = by_length[len].iter().find(|p| {
            let pp = &pairs[p.source][p.target];
            let v = unit_vector(field, pp.paths.len(), pp.index[*p]);
            !spans[p.source][p.target].contains(&v)
        });
        match survivor {
            None => return Ok(assemble(quiver, relations, field, len, &pairs, &spans)),
            Some(p) if len >= max_length => {
                return Err(Error::NotAdmissibleWithinBound { bound: max_length, path: quiver.path_label(p) })
            }
            Some(_) => {}
        }
    }
    unreachable!("loop returns at max_length")
}

fn pair_paths(n: usize, by_length: &[Vec<Path>]) -> Vec<Vec<PairPaths>> {
    let mut grouped: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    for p in by_length.iter().flatten() {
        grouped[p.source][p.target].push(p.clone());
    }
    grouped.into_iter().map(|row| row.into_iter().map(PairPaths::new).collect()).collect()
}

/// Span of all `u·r·w` truncated above length `len`, per pair.
fn ideal_spans(
    quiver: &Quiver,
    relations: &[Relation],
    field: Field,
    len: usize,
    by_length: &[Vec<Path>],
    pairs: &[Vec<PairPaths>],
) -> Vec<Vec<Subspace>> {
    let n = quiver.vertex_count();
    let mut spans: Vec<Vec<Subspace>> =
        (0..n).map(|a| (0..n).map(|b| Subspace::zero(field, pairs[a][b].paths.len())).collect()).collect();
    for r in relations {
        let m = r.min_length();
        if m > len {
            continue;
        }
        let prefixes = by_length[..=len - m].iter().flatten().filter(|u| u.target == r.source());
        for u in prefixes {
            let rest = len - m - u.len();
            let suffixes = by_length[..=rest].iter().flatten().filter(|w| w.source == r.target());
            for w in suffixes {
                let pp = &pairs[u.source][w.target];
                let mut v = zero_vector(field, pp.paths.len());
                for (c, p) in r.terms() {
                    if u.len() + p.len() + w.len() <= len {
                        let full = u.then(p).then(w);
                        let i = pp.index[&full];
                        v[i] = &v[i] + c;
                    }
                }
                spans[u.source][w.target].insert(&v);
            }
        }
    }
    spans
}

fn assemble(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    nilpotency: usize,
    pairs: &[Vec<PairPaths>],
    spans: &[Vec<Subspace>],
) -> BoundAlgebra {
    let n = quiver.vertex_count();
    // Free columns index the basis; store it shortest-first.
    let mut basis: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    let mut columns: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut free = spans[a][b].free_columns();
            free.reverse();
            basis[a][b] = free.iter().map(|&c| pairs[a][b].paths[c].clone()).collect();
            columns[a][b] = free;
        }
    }
    let reduce = |p: &Path| -> Vector {
        let (a, b) = (p.source, p.target);
        let pp = &pairs[a][b];
        let v = unit_vector(field, pp.paths.len(), pp.index[p]);
        let r = spans[a][b].reduce(&v);
        columns[a][b].iter().map(|&c| r[c].clone()).collect()
    };
    let post = (0..quiver.arrow_count())
        .map(|al| {
            let arrow = quiver.arrow(al);
            let step = Path::from_arrows(&quiver, &[al]).expect("single arrow");
            (0..n)
                .map(|a| {
                    let cols: Vec<Vector> = basis[a][arrow.source].iter().map(|p| reduce(&p.then(&step))).collect();
                    Mat::from_columns(field, basis[a][arrow.target].len(), &cols)
                })
                .collect()
        })
        .collect();
    let pre = (0..quiver.arrow_count())
        .map(|al| {
            let arrow = quiver.arrow(al);
            let step = Path::from_arrows(&quiver, &[al]).expect("single arrow");
            (0..n)
                .map(|e| {
                    let cols: Vec<Vector> = basis[arrow.target][e].iter().map(|p| reduce(&step.then(p))).collect();
                    Mat::from_columns(field, basis[arrow.source][e].len(), &cols)
                })
                .collect()
        })
        .collect();
    BoundAlgebra { quiver: Arc::new(quiver), field, relations, basis, post, pre, nilpotency }
}

impl BoundAlgebra {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// Every path of length at least this bound is zero.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.basis[a][b].len()
    }

    pub fn basis(&self, a: usize, b: usize) -> &[Path] {
        &self.basis[a][b]
    }

    /// Total dimension over the ground field.
    pub fn dim(&self) -> usize {
        self.basis.iter().flatten().map(Vec::len).sum()
    }

    /// Dimension vector of the projective `eΛ`: `v ↦ dim Hom(v, e)`.
    pub fn projective_dims(&self, e: usize) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.hom_dim(v, e)).collect()
    }

    /// A vertex whose idempotent has been killed (by a quotient).
    pub fn is_killed(&self, v: usize) -> bool {
        self.hom_dim(v, v) == 0
    }

    pub fn post_arrow(&self, arrow: usize, a: usize) -> &Mat {
        &self.post[arrow][a]
    }

    pub fn pre_arrow(&self, arrow: usize, e: usize) -> &Mat {
        &self.pre[arrow][e]
    }

    /// Right multiplication by a path: `Hom(a, p.source) -> Hom(a, p.target)`.
    pub fn right_mult(&self, a: usize, p: &Path) -> Mat {
        let mut m = Mat::identity(self.field, self.hom_dim(a, p.source));
        for &al in &p.arrows {
            m = self.post[al][a].mul(&m).expect("table shapes agree");
        }
        m
    }

    /// Left multiplication by a path: `Hom(p.target, e) -> Hom(p.source, e)`.
    pub fn left_mult(&self, p: &Path, e: usize) -> Mat {
        let mut m = Mat::identity(self.field, self.hom_dim(p.target, e));
        for &al in p.arrows.iter().rev() {
            m = self.pre[al][e].mul(&m).expect("table shapes agree");
        }
        m
    }

    /// Coordinates of the identity `e_a` in `Hom(a, a)` (empty if killed).
    pub fn identity(&self, a: usize) -> Vector {
        match self.basis[a][a].iter().position(Path::is_trivial) {
            Some(i) => unit_vector(self.field, self.hom_dim(a, a), i),
            None => Vec::new(),
        }
    }

    /// Class of an arbitrary path.
    pub fn class_of(&self, p: &Path) -> Vector {
        let e = self.identity(p.source);
        if e.is_empty() {
            return zero_vector(self.field, self.hom_dim(p.source, p.target));
        }
        self.right_mult(p.source, p).apply(&e)
    }

    /// Class of a relation, which is zero in a correctly compiled algebra.
    pub fn relation_class(&self, r: &Relation) -> Vector {
        let mut v = zero_vector(self.field, self.hom_dim(r.source(), r.target()));
        for (c, p) in r.terms() {
            crate::linalg::axpy(&mut v, c, &self.class_of(p));
        }
        v
    }

    /// `x · y` ("first x, then y") for `x ∈ Hom(a, b)` and `y ∈ Hom(b, c)`.
    pub fn multiply(&self, a: usize, b: usize, c: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert_eq!(x.len(), self.hom_dim(a, b));
        assert_eq!(y.len(), self.hom_dim(b, c));
        let mut out = zero_vector(self.field, self.hom_dim(a, c));
        for (coef, p) in y.iter().zip(&self.basis[b][c]) {
            if !coef.is_zero() {
                crate::linalg::axpy(&mut out, coef, &self.right_mult(a, p).apply(x));
            }
        }
        out
    }

    /// Whether the `j`-th basis element of `Hom(a, b)` is a radical class.
    pub fn is_radical(&self, a: usize, b: usize, j: usize) -> bool {
        !self.basis[a][b][j].is_trivial()
    }

    /// Same vertices, arrows reversed, composition reversed.
    pub fn opposite(&self) -> BoundAlgebra {
        let n = self.vertex_count();
        BoundAlgebra {
            quiver: Arc::new(self.quiver.opposite()),
            field: self.field,
            relations: self.relations.iter().map(Relation::reversed).collect(),
            basis: (0..n)
                .map(|a| (0..n).map(|b| self.basis[b][a].iter().map(Path::reversed).collect()).collect())
                .collect(),
            post: self.pre.clone(),
            pre: self.post.clone(),
            nilpotency: self.nilpotency,
        }
    }

    /// Span of everything factoring through a vertex of `set`: the two-sided
    /// ideal generated by those idempotents.
    pub fn ideal_span(&self, set: &[usize]) -> PairSpaces {
        let n = self.vertex_count();
        let mut spaces: Vec<Vec<Subspace>> =
            (0..n).map(|a| (0..n).map(|b| Subspace::zero(self.field, self.hom_dim(a, b))).collect()).collect();
        for &f in set {
            for a in 0..n {
                for b in 0..n {
                    for q in &self.basis[f][b] {
                        let m = self.right_mult(a, q);
                        for col in m.columns() {
                            spaces[a][b].insert(&col);
                        }
                    }
                }
            }
        }
        PairSpaces { spaces }
    }

    /// The radical: span of basis classes of positive length.
    pub fn radical(&self) -> PairSpaces {
        PairSpaces::from_fn(self, |a, b| {
            let d = self.hom_dim(a, b);
            Subspace::span(
                self.field,
                d,
                (0..d).filter(|&j| self.is_radical(a, b, j)).map(|j| unit_vector(self.field, d, j)),
            )
        })
    }

    /// Componentwise product of spans: `(X·Y)(a, c) = Σ_b X(a, b)·Y(b, c)`.
    pub fn span_product(&self, x: &PairSpaces, y: &PairSpaces) -> PairSpaces {
        let n = self.vertex_count();
        PairSpaces::from_fn(self, |a, c| {
            let mut s = Subspace::zero(self.field, self.hom_dim(a, c));
            for b in 0..n {
                for u in x.get(a, b).basis() {
                    for v in y.get(b, c).basis() {
                        let w = self.multiply(a, b, c, u, v);
                        if !is_zero_vector(&w) {
                            s.insert(&w);
                        }
                    }
                }
            }
            s
        })
    }

    /// `Λ / ΛFΛ`, with basis a subset of the basis of `Λ`.
    pub fn quotient_by_vertices(&self, set: &[usize]) -> BoundAlgebra {
        self.quotient_with_projection(set).algebra
    }

    pub fn quotient_with_projection(&self, set: &[usize]) -> Quotient {
        let n = self.vertex_count();
        let field = self.field;
        let ideal = self.ideal_span(set);
        let mut basis: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
        let mut projection: Vec<Vec<Mat>> = Vec::with_capacity(n);
        let mut lift: Vec<Vec<Mat>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut prow = Vec::with_capacity(n);
            let mut lrow = Vec::with_capacity(n);
            for b in 0..n {
                let d = self.hom_dim(a, b);
                // Reverse coordinates so pivots fall on the longest classes.
                let rev = |v: &[Scalar]| -> Vector { v.iter().rev().cloned().collect() };
                let s = Subspace::span(field, d, ideal.get(a, b).basis().iter().map(|v| rev(v)));
                let mut keep: Vec<usize> = s.free_columns().into_iter().map(|c| d - 1 - c).collect();
                keep.sort_unstable();
                basis[a][b] = keep.iter().map(|&j| self.basis[a][b][j].clone()).collect();
                let cols: Vec<Vector> = (0..d)
                    .map(|j| {
                        let r = rev(&s.reduce(&rev(&unit_vector(field, d, j))));
                        keep.iter().map(|&k| r[k].clone()).collect()
                    })
                    .collect();
                prow.push(Mat::from_columns(field, keep.len(), &cols));
                let lcols: Vec<Vector> = keep.iter().map(|&k| unit_vector(field, d, k)).collect();
                lrow.push(Mat::from_columns(field, d, &lcols));
            }
            projection.push(prow);
            lift.push(lrow);
        }
        let conj = |p: &Mat, m: &Mat, l: &Mat| p.mul(m).and_then(|x| x.mul(l)).expect("shapes agree");
        let post = (0..self.quiver.arrow_count())
            .map(|al| {
                let arrow = self.quiver.arrow(al);
                (0..n).map(|a| conj(&projection[a][arrow.target], &self.post[al][a], &lift[a][arrow.source])).collect()
            })
            .collect();
        let pre = (0..self.quiver.arrow_count())
            .map(|al| {
                let arrow = self.quiver.arrow(al);
                (0..n).map(|e| conj(&projection[arrow.source][e], &self.pre[al][e], &lift[arrow.target][e])).collect()
            })
            .collect();
        Quotient {
            algebra: BoundAlgebra {
                quiver: self.quiver.clone(),
                field,
                relations: self.relations.clone(),
                basis,
                post,
                pre,
                nilpotency: self.nilpotency,
            },
            projection,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn ladder_quiver(n: usize, field: Field) -> BoundAlgebra {
        let names: Vec<alloc::string::String> = (0..n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            arrows.push((alloc::format!("a{i}"), names[i].clone(), names[i].clone()));
            if i + 1 < n {
                arrows.push((alloc::format!("b{i}"), names[i].clone(), names[i + 1].clone()));
            }
        }
        let q = Quiver::new(names.clone(), arrows).unwrap();
        let mut rels = Vec::new();
        for p in q.paths_of_length(2) {
            rels.push(Relation::monomial(&q, field.one(), p.arrows.clone()).unwrap());
        }
        build_algebra(q, rels, field, 4).unwrap()
    }

    fn a2() -> BoundAlgebra {
        let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        build_algebra(q, Vec::new(), Field::Rational, 3).unwrap()
    }

    #[test]
    fn one_vertex() {
        let q = Quiver::from_strs(&["v"], &[]).unwrap();
        let a = build_algebra(q, Vec::new(), Field::Rational, 1).unwrap();
        assert_eq!(a.hom_dim(0, 0), 1);
        assert_eq!(a.nilpotency(), 1);
    }

    #[test]
    fn a2_table() {
        let a = a2();
        assert_eq!([a.hom_dim(0, 0), a.hom_dim(0, 1), a.hom_dim(1, 1), a.hom_dim(1, 0)], [1, 1, 1, 0]);
        assert_eq!(a.nilpotency(), 2);
        let op = a.opposite();
        assert_eq!(op.hom_dim(1, 0), 1);
        assert_eq!(op.hom_dim(0, 1), 0);
        let rad = a.radical();
        assert_eq!(rad.total_dim(), 1);
        assert_eq!(rad.dim(0, 1), 1);
        let i = a.ideal_span(&[0]);
        assert_eq!((i.dim(0, 1), i.dim(1, 1), i.dim(0, 0)), (1, 0, 1));
    }

    #[test]
    fn ladder_quiver_table() {
        let a = ladder_quiver(4, Field::Rational);
        assert_eq!(a.nilpotency(), 2);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j {
                    2
                } else if j == i + 1 {
                    1
                } else {
                    0
                };
                assert_eq!(a.hom_dim(i, j), expect, "Hom({i},{j})");
            }
        }
        for r in a.relations() {
            assert!(is_zero_vector(&a.relation_class(r)));
        }
        assert_eq!(a.ideal_span(&[0]).dim(0, 1), 1);
        let rad = a.radical();
        assert!(a.span_product(&rad, &rad).is_zero());
        let twice = a.opposite().opposite();
        assert_eq!(twice, a);
    }

    #[test]
    fn quotient_kills_paths_through_the_set() {
        let a = ladder_quiver(4, Field::Rational);
        let g = a.quotient_by_vertices(&[1]);
        assert_eq!(g.hom_dim(0, 0), 2);
        assert_eq!(g.hom_dim(0, 1), 0);
        assert_eq!(g.hom_dim(1, 1), 0);
        assert_eq!(a.quotient_by_vertices(&[]), a);
        assert_eq!(a.quotient_by_vertices(&[0, 1, 2, 3]).dim(), 0);
    }

    #[test]
    fn mixed_length_relation() {
        // x^2 = x^3 in K[x]: with x^4 = 0 imposed the algebra is K[x]/(x^2).
        let q = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let f = Field::Rational;
        let r1 = Relation::new(&q, vec![(f.one(), vec![0, 0]), (f.from_i64(-1), vec![0, 0, 0])]).unwrap();
        let r2 = Relation::monomial(&q, f.one(), vec![0, 0, 0, 0]).unwrap();
        let a = build_algebra(q, vec![r1, r2], f, 5).unwrap();
        assert_eq!(a.hom_dim(0, 0), 2);
        assert_eq!(a.nilpotency(), 2);
    }

    #[test]
    fn unbounded_loop_is_rejected() {
        let q = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let err = build_algebra(q, Vec::new(), Field::Rational, 3).unwrap_err();
        assert_eq!(err, Error::NotAdmissibleWithinBound { bound: 3, path: "x.x.x".into() });
    }

    #[test]
    fn commutativity_relation() {
        // Commutative square: two parallel paths identified.
        let q = Quiver::from_strs(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let f = Field::prime(7).unwrap();
        let r = Relation::from_names(&q, vec![(f.one(), vec!["a", "b"]), (f.from_i64(-1), vec!["c", "d"])]).unwrap();
        let a = build_algebra(q, vec![r], f, 3).unwrap();
        assert_eq!(a.hom_dim(0, 3), 1);
        let ab = a.class_of(&Path::from_arrows(a.quiver(), &[0, 1]).unwrap());
        let cd = a.class_of(&Path::from_arrows(a.quiver(), &[2, 3]).unwrap());
        assert_eq!(ab, cd);
        assert_eq!(a.dim(), 9);
    }
}
