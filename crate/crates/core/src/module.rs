//! Finite-dimensional right modules as quiver representations.
//!
//! A right module `M` has a space `M(v) = M e_v` per vertex. An arrow
//! `α: s -> t` acts `M(t) -> M(s)` and is stored as a `d_s × d_t` matrix.
//! A path `[a1, ..., ak]` then acts by the product `M(a1)·M(a2)···M(ak)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::BoundAlgebra;
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::linalg::{is_zero_vector, kernel_basis, unit_vector, zero_vector, Mat, Subspace, Vector};
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    actions: Vec<Mat>,
}

impl RightModule {
    /// Builds a module from its dimension vector and arrow matrices, checking
    /// only the shapes. Use [`RightModule::validate`] for the relations.
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, actions: Vec<Mat>) -> Result<Self, Error> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::BadModuleShape(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if actions.len() != quiver.arrow_count() {
            return Err(Error::BadModuleShape(format!(
                "{} matrices for {} arrows",
                actions.len(),
                quiver.arrow_count()
            )));
        }
        for (arrow, m) in quiver.arrows().iter().zip(&actions) {
            let want = (dims[arrow.source], dims[arrow.target]);
            if (m.rows(), m.cols()) != want || m.field() != field {
                return Err(Error::BadModuleShape(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    arrow.name,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(RightModule { quiver, field, dims, actions })
    }

    pub fn zero(alg: &BoundAlgebra) -> Self {
        Self::from_dims_zero_action(alg.quiver().clone(), alg.field(), alloc::vec![0; alg.vertex_count()])
    }

    fn from_dims_zero_action(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>) -> Self {
        let actions = quiver.arrows().iter().map(|a| Mat::zeros(field, dims[a.source], dims[a.target])).collect();
        RightModule { quiver, field, dims, actions }
    }

    /// The one-dimensional simple module at `v`.
    pub fn simple(alg: &BoundAlgebra, v: usize) -> Self {
        let mut dims = alloc::vec![0; alg.vertex_count()];
        dims[v] = 1;
        Self::from_dims_zero_action(alg.quiver().clone(), alg.field(), dims)
    }

    /// Checks that every relation acts as zero and killed vertices carry
    /// nothing.
    pub fn validate(&self, alg: &BoundAlgebra) -> Result<(), Error> {
        if **alg.quiver() != *self.quiver || alg.field() != self.field {
            return Err(Error::AlgebraMismatch);
        }
        for v in 0..self.dims.len() {
            if alg.is_killed(v) && self.dims[v] > 0 {
                return Err(Error::BadModuleShape(format!(
                    "vertex {} is killed in the algebra but has dimension {}",
                    self.quiver.vertex_name(v),
                    self.dims[v]
                )));
            }
        }
        for (i, r) in alg.relations().iter().enumerate() {
            let mut sum = Mat::zeros(self.field, self.dims[r.source()], self.dims[r.target()]);
            for (c, p) in r.terms() {
                sum = sum.add(&self.path_action(p).scale(c));
            }
            if !sum.is_zero() {
                return Err(Error::RelationNotSatisfied(i));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Mat {
        &self.actions[arrow]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    /// Action of a path `p: s -> t` as a map `M(t) -> M(s)`.
    pub fn path_action(&self, p: &Path) -> Mat {
        let mut m = Mat::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = m.mul(&self.actions[a]).expect("action shapes agree");
        }
        m
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule, Error> {
        self.same_quiver(other)?;
        Ok(RightModule {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            actions: self.actions.iter().zip(&other.actions).map(|(a, b)| a.block_diag(b)).collect(),
        })
    }

    fn same_quiver(&self, other: &RightModule) -> Result<(), Error> {
        if self.field != other.field || (!Arc::ptr_eq(&self.quiver, &other.quiver) && self.quiver != other.quiver) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

/// The projective `eΛ`: `M(v) = Hom(v, e)`, arrows acting by precomposition.
pub fn free_right_module(alg: &BoundAlgebra, e: usize) -> Result<RightModule, Error> {
    if e >= alg.vertex_count() {
        return Err(Error::VertexOutOfRange(e));
    }
    let quiver = alg.quiver().clone();
    let actions = (0..quiver.arrow_count()).map(|al| alg.pre_arrow(al, e).clone()).collect();
    Ok(RightModule { field: alg.field(), dims: alg.projective_dims(e), quiver, actions })
}

/// A morphism of right modules, one matrix `M(v) -> N(v)` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub components: Vec<Mat>,
}

impl ModuleMap {
    pub fn zero(source: &RightModule, target: &RightModule) -> Self {
        ModuleMap {
            components: source.dims.iter().zip(&target.dims).map(|(&d, &e)| Mat::zeros(source.field, e, d)).collect(),
        }
    }

    pub fn identity(m: &RightModule) -> Self {
        ModuleMap { components: m.dims.iter().map(|&d| Mat::identity(m.field, d)).collect() }
    }

    /// Checks `φ_s · M(α) = N(α) · φ_t` for every arrow `α: s -> t`.
    pub fn is_natural(&self, source: &RightModule, target: &RightModule) -> bool {
        source.quiver.arrows().iter().enumerate().all(|(i, a)| {
            let lhs = self.components[a.source].mul(&source.actions[i]).expect("shapes");
            let rhs = target.actions[i].mul(&self.components[a.target]).expect("shapes");
            lhs == rhs
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| g.mul(f).expect("composable maps"))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Mat::is_zero)
    }

    pub fn kernel(&self, source: &RightModule) -> Submodule {
        Submodule {
            spaces: self
                .components
                .iter()
                .zip(&source.dims)
                .map(|(m, &d)| Subspace::span(source.field, d, kernel_basis(m)))
                .collect(),
        }
    }

    pub fn image(&self, target: &RightModule) -> Submodule {
        Submodule {
            spaces: self
                .components
                .iter()
                .zip(&target.dims)
                .map(|(m, &d)| Subspace::span(target.field, d, m.columns()))
                .collect(),
        }
    }

    pub fn is_surjective(&self, target: &RightModule) -> bool {
        self.image(target).dims().iter().zip(&target.dims).all(|(a, b)| a == b)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap { components: self.components.iter().map(|m| m.scale(s)).collect() }
    }

    /// All entries in vertex order, for rank computations on families of maps.
    pub fn flatten(&self) -> Vector {
        self.components.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}

/// A subspace of every `M(v)`, closed under the arrow actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn zero(m: &RightModule) -> Self {
        Submodule { spaces: m.dims.iter().map(|&d| Subspace::zero(m.field, d)).collect() }
    }

    pub fn full(m: &RightModule) -> Self {
        Submodule { spaces: m.dims.iter().map(|&d| Subspace::full(m.field, d)).collect() }
    }

    /// Wraps per-vertex subspaces after checking closure under the action.
    pub fn new(m: &RightModule, spaces: Vec<Subspace>) -> Result<Self, Error> {
        if spaces.len() != m.dims.len() || spaces.iter().zip(&m.dims).any(|(s, &d)| s.ambient() != d) {
            return Err(Error::BadModuleShape("submodule ambient dimensions".into()));
        }
        let s = Submodule { spaces };
        if !s.is_closed(m) {
            return Err(Error::NotActionClosed);
        }
        Ok(s)
    }

    pub fn is_closed(&self, m: &RightModule) -> bool {
        m.quiver.arrows().iter().enumerate().all(|(i, a)| {
            self.spaces[a.target].basis().iter().all(|x| self.spaces[a.source].contains(&m.actions[i].apply(x)))
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn is_subspace_of(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b).expect("same ambient")).collect(),
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule {
            spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b).expect("same ambient")).collect(),
        }
    }

    /// Image under a module map.
    pub fn image(&self, f: &ModuleMap) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&f.components).map(|(s, m)| s.image(m)).collect() }
    }

    /// Preimage under a module map.
    pub fn preimage(&self, f: &ModuleMap) -> Submodule {
        Submodule { spaces: self.spaces.iter().zip(&f.components).map(|(s, m)| s.preimage(m)).collect() }
    }
}

/// Smallest submodule containing the given `(vertex, vector)` elements.
pub fn submodule_generated(m: &RightModule, elements: &[(usize, Vector)]) -> Submodule {
    let mut spaces: Vec<Subspace> = m.dims.iter().map(|&d| Subspace::zero(m.field, d)).collect();
    let mut work: Vec<(usize, Vector)> = Vec::new();
    for (v, x) in elements {
        if spaces[*v].insert(x) {
            work.push((*v, x.clone()));
        }
    }
    while let Some((t, x)) = work.pop() {
        for (i, a) in m.quiver.arrows().iter().enumerate() {
            if a.target != t {
                continue;
            }
            let y = m.actions[i].apply(&x);
            if spaces[a.source].insert(&y) {
                work.push((a.source, y));
            }
        }
    }
    Submodule { spaces }
}

/// Submodule generated by the whole of `M(f)` for `f` in `set`: the trace of
/// the projectives `fΛ` in `M`.
pub fn trace_of_vertices(m: &RightModule, set: &[usize]) -> Submodule {
    let gens: Vec<(usize, Vector)> =
        set.iter().flat_map(|&f| (0..m.dims[f]).map(move |j| (f, unit_vector(m.field, m.dims[f], j)))).collect();
    submodule_generated(m, &gens)
}

/// Sum of the images of every map from a module in `sources` into `m`.
pub fn trace(sources: &[RightModule], m: &RightModule) -> Result<Submodule, Error> {
    let mut out = Submodule::zero(m);
    for p in sources {
        for f in hom_space(p, m)? {
            out = out.sum(&f.image(m));
        }
    }
    Ok(out)
}

/// Basis of `Hom(M, N)`, solving all naturality squares at once.
pub fn hom_space(m: &RightModule, n: &RightModule) -> Result<Vec<ModuleMap>, Error> {
    m.same_quiver(n)?;
    let field = m.field;
    let nv = m.dims.len();
    // Unknown φ_v is an (n_v × m_v) block, row-major, at offset[v].
    let mut offset = Vec::with_capacity(nv + 1);
    offset.push(0);
    for v in 0..nv {
        offset.push(offset[v] + n.dims[v] * m.dims[v]);
    }
    let unknowns = offset[nv];
    let mut rows: Vec<Vector> = Vec::new();
    for (i, a) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = &m.actions[i];
        let na = &n.actions[i];
        // (φ_s · M(α) − N(α) · φ_t)[r][c] = 0 for r < n_s, c < m_t.
        for r in 0..n.dims[s] {
            for c in 0..m.dims[t] {
                let mut row = zero_vector(field, unknowns);
                for k in 0..m.dims[s] {
                    let x = &ma[(k, c)];
                    if !x.is_zero() {
                        let at = offset[s] + r * m.dims[s] + k;
                        row[at] = &row[at] + x;
                    }
                }
                for k in 0..n.dims[t] {
                    let x = &na[(r, k)];
                    if !x.is_zero() {
                        let at = offset[t] + k * m.dims[t] + c;
                        row[at] = &row[at] - x;
                    }
                }
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Mat::from_rows(field, unknowns, rows)?;
    Ok(kernel_basis(&system)
        .into_iter()
        .map(|sol| ModuleMap {
            components: (0..nv)
                .map(|v| {
                    let block: Vec<Vector> = (0..n.dims[v])
                        .map(|r| sol[offset[v] + r * m.dims[v]..offset[v] + (r + 1) * m.dims[v]].to_vec())
                        .collect();
                    Mat::from_rows(field, m.dims[v], block).expect("block shape")
                })
                .collect(),
        })
        .collect())
}

/// `S` as a module in its own right, with the inclusion into `M`.
pub fn submodule_as_module(m: &RightModule, s: &Submodule) -> (RightModule, ModuleMap) {
    let field = m.field;
    let dims = s.dims();
    let actions = m
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let cols: Vec<Vector> = s.spaces[a.target]
                .basis()
                .iter()
                .map(|x| {
                    s.spaces[a.source]
                        .coordinates(&m.actions[i].apply(x))
                        .expect("submodule is closed under the action")
                })
                .collect();
            Mat::from_columns(field, dims[a.source], &cols)
        })
        .collect();
    let inclusion = ModuleMap {
        components: s.spaces.iter().zip(&m.dims).map(|(sp, &d)| Mat::from_columns(field, d, sp.basis())).collect(),
    };
    (RightModule { quiver: m.quiver.clone(), field, dims, actions }, inclusion)
}

/// `M / S` with the projection `M -> M / S`. The quotient's basis at each
/// vertex is the set of free columns of `S(v)`.
pub fn quotient_module(m: &RightModule, s: &Submodule) -> Result<(RightModule, ModuleMap), Error> {
    if !s.is_closed(m) {
        return Err(Error::NotActionClosed);
    }
    let field = m.field;
    let free: Vec<Vec<usize>> = s.spaces.iter().map(Subspace::free_columns).collect();
    let projection = ModuleMap {
        components: (0..m.dims.len())
            .map(|v| {
                let cols: Vec<Vector> = (0..m.dims[v])
                    .map(|j| {
                        let r = s.spaces[v].reduce(&unit_vector(field, m.dims[v], j));
                        free[v].iter().map(|&k| r[k].clone()).collect()
                    })
                    .collect();
                Mat::from_columns(field, free[v].len(), &cols)
            })
            .collect(),
    };
    let actions = m
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let cols: Vec<Vector> = free[a.target]
                .iter()
                .map(|&k| {
                    let y = m.actions[i].apply(&unit_vector(field, m.dims[a.target], k));
                    projection.components[a.source].apply(&y)
                })
                .collect();
            Mat::from_columns(field, free[a.source].len(), &cols)
        })
        .collect();
    let q = RightModule { quiver: m.quiver.clone(), field, dims: free.iter().map(Vec::len).collect(), actions };
    Ok((q, projection))
}

/// `big / small` for submodules `small ⊆ big` of `M`.
pub fn subquotient(m: &RightModule, big: &Submodule, small: &Submodule) -> Result<RightModule, Error> {
    if !small.is_subspace_of(big) {
        return Err(Error::InclusionViolation);
    }
    let (b, incl) = submodule_as_module(m, big);
    let inner = small.preimage(&incl);
    Ok(quotient_module(&b, &inner)?.0)
}

/// `M · rad`: the sum of the images of the arrow actions.
pub fn radical_of_module(m: &RightModule) -> Submodule {
    let mut spaces: Vec<Subspace> = m.dims.iter().map(|&d| Subspace::zero(m.field, d)).collect();
    for (i, a) in m.quiver.arrows().iter().enumerate() {
        for col in m.actions[i].columns() {
            spaces[a.source].insert(&col);
        }
    }
    Submodule { spaces }
}

/// Dimension vector of `M / rad M`.
pub fn top_dims(m: &RightModule) -> Vec<usize> {
    let r = radical_of_module(m);
    m.dims.iter().zip(r.dims()).map(|(d, r)| d - r).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    pub projective: bool,
    /// Number of copies of `vΓ` in the projective cover, per vertex.
    pub multiplicities: Vec<usize>,
}

/// Decides projectivity over `alg` by comparing `dim M` with the dimension
/// of its projective cover `⊕ (vΓ)^{m_v}`, where `m_v = dim top(M)(v)`.
pub fn is_projective(m: &RightModule, alg: &BoundAlgebra) -> Projectivity {
    let multiplicities = top_dims(m);
    let cover: usize =
        multiplicities.iter().enumerate().map(|(v, &k)| k * alg.projective_dims(v).iter().sum::<usize>()).sum();
    Projectivity { projective: cover == m.total_dim(), multiplicities }
}

/// A projective cover `P -> M`, with `P = ⊕ vΓ` over the top generators.
pub fn projective_cover(m: &RightModule, alg: &BoundAlgebra) -> Result<(RightModule, ModuleMap), Error> {
    let rad = radical_of_module(m);
    let field = m.field;
    let mut p = RightModule::zero(alg);
    let mut gens: Vec<(usize, Vector)> = Vec::new();
    for v in 0..m.dims.len() {
        for k in rad.spaces[v].free_columns() {
            p = p.direct_sum(&free_right_module(alg, v)?)?;
            gens.push((v, unit_vector(field, m.dims[v], k)));
        }
    }
    // Each summand vΓ sends the basis class p ∈ Hom(w, v) to x · p ∈ M(w).
    let components = (0..m.dims.len())
        .map(|w| {
            let mut cols: Vec<Vector> = Vec::new();
            for (v, x) in &gens {
                for path in alg.basis(w, *v) {
                    cols.push(m.path_action(path).apply(x));
                }
            }
            Mat::from_columns(field, m.dims[w], &cols)
        })
        .collect();
    Ok((p, ModuleMap { components }))
}

/// `0 -> U -> P -> X -> 0` with `P` projective.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub projective: RightModule,
    pub kernel: Submodule,
}

impl Presentation {
    pub fn of(x: &RightModule, alg: &BoundAlgebra) -> Result<Self, Error> {
        let (projective, cover) = projective_cover(x, alg)?;
        let kernel = cover.kernel(&projective);
        Ok(Presentation { projective, kernel })
    }
}

/// `dim Ext¹(X, N)` from a presentation of `X`: `Hom(U, N)` modulo the maps
/// that extend to `P`.
pub fn ext1(pres: &Presentation, n: &RightModule) -> Result<usize, Error> {
    let (u, incl) = submodule_as_module(&pres.projective, &pres.kernel);
    let hom_u = hom_space(&u, n)?.len();
    let restricted: Vec<Vector> = hom_space(&pres.projective, n)?.iter().map(|f| incl.then(f).flatten()).collect();
    let len = restricted.first().map_or(0, Vec::len);
    let rank = Subspace::span(n.field, len, restricted).dim();
    Ok(hom_u - rank)
}
