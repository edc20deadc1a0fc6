//! Ordered partitions of the vertices, standard modules and the checks built
//! on them.
//!
//! For a plan with strata `Ã_0, Ã_1, ...` write `F_{<i}` for the union of the
//! strata below `i`. The standard module at `e ∈ Ã_i` is
//! `Δ_e(i) = eΛ / eΛF_{<i}Λ`, and `Γ_i = Λ / ΛF_{<i}Λ`. A stratum's sections
//! are Γ-modules, and `Δ_e(i)` is exactly the projective `eΓ_i`.

mod checks;
mod filtration;
mod plan;

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BoundAlgebra, PairSpaces, Quotient};
use crate::error::Error;
use crate::module::{free_right_module, quotient_module, RightModule, Submodule};

pub use checks::{CheckReport, HomPair, Reason, Verdict, Witness};
pub use filtration::{CanonicalFiltration, FiltrationCheck, Membership, TraceFiltration};
pub use plan::StratPlan;

/// An algebra with a plan, caching the ideals `ΛF_{<i}Λ` and the quotients
/// `Γ_i` that every check needs.
#[derive(Clone, Debug)]
pub struct Stratification {
    alg: BoundAlgebra,
    plan: StratPlan,
    /// `lower[i] = ΛF_{<i}Λ` for `i = 0..=len`.
    lower: Vec<PairSpaces>,
    gammas: Vec<Quotient>,
    unsafe_vertices: Vec<bool>,
}

/// `Δ_e(i)` together with `eΛ` and the kernel `U_e(i)`.
#[derive(Clone, Debug)]
pub struct StandardModule {
    pub stratum: usize,
    pub vertex: usize,
    pub module: RightModule,
    pub projective: RightModule,
    pub kernel: Submodule,
}

impl Stratification {
    pub fn new(alg: BoundAlgebra, plan: StratPlan) -> Result<Self, Error> {
        if plan.vertex_count() != alg.vertex_count() {
            return Err(Error::InvalidPartition("plan and algebra have different vertex counts".into()));
        }
        let lower: Vec<PairSpaces> = (0..=plan.len()).map(|i| alg.ideal_span(&plan.below(i))).collect();
        let gammas = (0..plan.len()).map(|i| alg.quotient_with_projection(&plan.below(i))).collect();
        let unsafe_vertices = vec![false; alg.vertex_count()];
        Ok(Stratification { alg, plan, lower, gammas, unsafe_vertices })
    }

    /// Declares truncation boundary vertices. They and their arrow neighbours
    /// become unsafe, and strata containing unsafe vertices only ever yield
    /// inconclusive verdicts.
    pub fn with_boundary(mut self, boundary: &[usize]) -> Result<Self, Error> {
        for &b in boundary {
            if b >= self.alg.vertex_count() {
                return Err(Error::VertexOutOfRange(b));
            }
            self.unsafe_vertices[b] = true;
            for n in self.alg.quiver().neighbours(b) {
                self.unsafe_vertices[n] = true;
            }
        }
        Ok(self)
    }

    pub fn algebra(&self) -> &BoundAlgebra {
        &self.alg
    }

    pub fn plan(&self) -> &StratPlan {
        &self.plan
    }

    /// `Γ_i = Λ / ΛF_{<i}Λ`.
    pub fn gamma(&self, i: usize) -> &BoundAlgebra {
        &self.gammas[i].algebra
    }

    /// `I'_i = ΛF_{<i}Λ`.
    pub fn lower_ideal(&self, i: usize) -> &PairSpaces {
        &self.lower[i]
    }

    /// `I_i = ΛF_{≤i}Λ`.
    pub fn upper_ideal(&self, i: usize) -> &PairSpaces {
        &self.lower[i + 1]
    }

    pub fn is_unsafe(&self, v: usize) -> bool {
        self.unsafe_vertices[v]
    }

    pub fn unsafe_vertices(&self) -> Vec<usize> {
        (0..self.unsafe_vertices.len()).filter(|&v| self.unsafe_vertices[v]).collect()
    }

    pub fn stratum_is_safe(&self, i: usize) -> bool {
        self.plan.stratum(i).iter().all(|&v| !self.unsafe_vertices[v])
    }

    /// Submodule of `eΛ` with components `ideal(v, e)`.
    fn ideal_in_projective(&self, ideal: &PairSpaces, e: usize) -> Submodule {
        Submodule { spaces: (0..self.alg.vertex_count()).map(|v| ideal.get(v, e).clone()).collect() }
    }

    pub fn standard_module(&self, i: usize, e: usize) -> Result<StandardModule, Error> {
        if e >= self.alg.vertex_count() {
            return Err(Error::VertexOutOfRange(e));
        }
        if i >= self.plan.len() || self.plan.stratum_of(e) != i {
            return Err(Error::NotInStratum { vertex: e, stratum: i });
        }
        let projective = free_right_module(&self.alg, e)?;
        let kernel = self.ideal_in_projective(&self.lower[i], e);
        let (module, _) = quotient_module(&projective, &kernel)?;
        debug_assert!(!module.is_zero());
        Ok(StandardModule { stratum: i, vertex: e, module, projective, kernel })
    }

    /// All standard modules, by stratum and then vertex.
    pub fn standard_modules(&self) -> Vec<StandardModule> {
        (0..self.plan.len())
            .flat_map(|i| self.plan.stratum(i).iter().map(move |&e| (i, e)))
            .map(|(i, e)| self.standard_module(i, e).expect("vertex is in its stratum"))
            .collect()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn standard_modules_of_the_ladder() {
        let s = strat(ladder(4).opposite(), vec![vec![1], vec![0], vec![2, 3]]);
        let d = s.standard_module(1, 0).unwrap();
        assert_eq!(d.module.dims(), [2, 0, 0, 0]);
        assert_eq!(d.projective.total_dim(), 3);
        assert_eq!(d.kernel.dims(), [0, 1, 0, 0]);
        assert_eq!(s.standard_module(0, 1).unwrap().module.total_dim(), 3);
        assert!(matches!(s.standard_module(0, 0), Err(Error::NotInStratum { .. })));
    }

    #[test]
    fn a2_standard_modules() {
        let s = strat(linear(2), vec![vec![0], vec![1]]);
        let d = s.standard_module(1, 1).unwrap();
        assert_eq!(d.module.dims(), [0, 1]);
        let first = s.standard_module(0, 0).unwrap();
        assert_eq!(first.module, first.projective);
    }

    #[test]
    fn boundary_marks_neighbours() {
        let s = strat(ladder(4), vec![vec![0], vec![1], vec![2], vec![3]]).with_boundary(&[3]).unwrap();
        assert_eq!(s.unsafe_vertices(), [2, 3]);
        assert!(s.stratum_is_safe(1));
        assert!(!s.stratum_is_safe(2));
    }
}
