//! Trace filtrations, membership in `F_f(Δ)` and filtration checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::checks::{Reason, Witness};
use super::Stratification;
use crate::error::Error;
use crate::module::{is_projective, subquotient, top_dims, trace_of_vertices, RightModule, Submodule};

/// `τ_0(M) ⊆ τ_1(M) ⊆ ...` where `τ_t(M)` is generated by `M(f)` for all `f`
/// in strata `≤ t`, with the sections `τ_t / τ_{t-1}`.
#[derive(Clone, Debug)]
pub struct TraceFiltration {
    pub taus: Vec<Submodule>,
    pub sections: Vec<RightModule>,
    /// Whether the last trace is all of `M`.
    pub stabilizes: bool,
}

impl TraceFiltration {
    /// `τ̄_t = τ_{t-1}`, zero for `t = 0`.
    pub fn tau_bar(&self, t: usize, m: &RightModule) -> Submodule {
        match t {
            0 => Submodule::zero(m),
            _ => self.taus[t - 1].clone(),
        }
    }

    /// Strata with a nonzero section.
    pub fn support(&self) -> Vec<usize> {
        (0..self.sections.len()).filter(|&t| !self.sections[t].is_zero()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `[M : Δ_v]` indexed by vertex `v` (the stratum is that of `v`).
    pub multiplicities: Vec<usize>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationCheck {
    pub valid: bool,
    /// Stratum of each layer, `None` for a zero layer.
    pub layers: Vec<Option<usize>>,
    pub multiplicities: Vec<usize>,
    pub witness: Option<Witness>,
}

/// The distinct traces `0 ⊂ M_1 ⊂ ... ⊂ M`, with the stratum of each layer.
#[derive(Clone, Debug)]
pub struct CanonicalFiltration {
    pub chain: Vec<Submodule>,
    pub strata: Vec<usize>,
}

impl Stratification {
    pub fn trace_filtration(&self, m: &RightModule) -> TraceFiltration {
        let n = self.plan.len();
        let taus: Vec<Submodule> = (0..n).map(|t| trace_of_vertices(m, &self.plan.up_to(t))).collect();
        let sections = (0..n)
            .map(|t| {
                let below = if t == 0 { Submodule::zero(m) } else { taus[t - 1].clone() };
                subquotient(m, &taus[t], &below).expect("traces increase")
            })
            .collect();
        let stabilizes = match taus.last() {
            Some(last) => last.is_full(),
            None => m.is_zero(),
        };
        TraceFiltration { taus, sections, stabilizes }
    }

    /// Whether `layer` is a direct sum of copies of `Δ_h(s)`, `h ∈ Ã_s`.
    /// On success adds the copies to `mult`.
    fn classify_layer(&self, layer: &RightModule, s: usize, mult: &mut [usize]) -> Result<(), Witness> {
        let top = top_dims(layer);
        let fail = |vertex, reason| Witness { stratum: s, vertex, section: None, partner: None, reason };
        if let Some(v) = (0..top.len()).find(|&v| top[v] > 0 && self.plan.stratum_of(v) != s) {
            return Err(fail(v, Reason::TopOutsideStratum));
        }
        let first_top = (0..top.len()).find(|&v| top[v] > 0).unwrap_or(0);
        let outside_gamma = self.plan.below(s).into_iter().any(|v| layer.dim_at(v) > 0);
        let proj = is_projective(layer, self.gamma(s));
        if outside_gamma || !proj.projective {
            return Err(fail(first_top, Reason::SectionNotProjective));
        }
        for (acc, k) in mult.iter_mut().zip(proj.multiplicities) {
            *acc += k;
        }
        Ok(())
    }

    /// Decides `M ∈ F_f(Δ)` from the trace filtration and reads off the
    /// multiplicities from the section tops.
    pub fn membership(&self, m: &RightModule) -> Membership {
        let tf = self.trace_filtration(m);
        self.membership_of(m, &tf)
    }

    pub fn membership_of(&self, m: &RightModule, tf: &TraceFiltration) -> Membership {
        let mut multiplicities = vec![0; m.dims().len()];
        for (t, section) in tf.sections.iter().enumerate() {
            if section.is_zero() {
                continue;
            }
            if let Err(w) = self.classify_layer(section, t, &mut multiplicities) {
                return Membership { member: false, multiplicities, witness: Some(Witness { section: Some(t), ..w }) };
            }
        }
        if !tf.stabilizes {
            let last = tf.taus.len().saturating_sub(1);
            let vertex = tf.taus.last().and_then(|s| s.spaces.iter().position(|sp| !sp.is_full())).unwrap_or(0);
            return Membership {
                member: false,
                multiplicities,
                witness: Some(Witness {
                    stratum: last,
                    vertex,
                    section: None,
                    partner: None,
                    reason: Reason::TraceNotStabilizing,
                }),
            };
        }
        Membership { member: true, multiplicities, witness: None }
    }

    /// Checks a given chain `0 = M_0 ⊆ ... ⊆ M_k = M` layer by layer. Each
    /// nonzero layer must lie in `Δ(s)^⊕` for the stratum `s` of its top.
    pub fn verify_filtration(&self, m: &RightModule, chain: &[Submodule]) -> Result<FiltrationCheck, Error> {
        let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
            return Err(Error::ChainEndpoints);
        };
        if !first.is_zero() || !last.is_full() {
            return Err(Error::ChainEndpoints);
        }
        for (k, s) in chain.iter().enumerate() {
            if !s.is_closed(m) {
                return Err(Error::NotActionClosed);
            }
            if k + 1 < chain.len() && !s.is_subspace_of(&chain[k + 1]) {
                return Err(Error::NonIncreasingChain(k));
            }
        }
        let mut multiplicities = vec![0; m.dims().len()];
        let mut layers = Vec::with_capacity(chain.len() - 1);
        for (k, pair) in chain.windows(2).enumerate() {
            let layer = subquotient(m, &pair[1], &pair[0])?;
            if layer.is_zero() {
                layers.push(None);
                continue;
            }
            let top = top_dims(&layer);
            let v = top.iter().position(|&d| d > 0).expect("nonzero module has a top");
            let s = self.plan.stratum_of(v);
            if let Err(w) = self.classify_layer(&layer, s, &mut multiplicities) {
                return Ok(FiltrationCheck {
                    valid: false,
                    layers,
                    multiplicities,
                    witness: Some(Witness { section: Some(k), ..w }),
                });
            }
            layers.push(Some(s));
        }
        Ok(FiltrationCheck { valid: true, layers, multiplicities, witness: None })
    }

    /// The strictly increasing chain of distinct traces of `M`.
    pub fn canonical_filtration(&self, m: &RightModule) -> Result<CanonicalFiltration, Error> {
        let tf = self.trace_filtration(m);
        let mem = self.membership_of(m, &tf);
        if let Some(w) = mem.witness {
            return Err(Error::NotDeltaFiltered(format!(
                "{} at stratum {} (vertex {})",
                w.reason.code(),
                w.stratum,
                self.alg.quiver().vertex_name(w.vertex)
            )));
        }
        let mut chain = vec![Submodule::zero(m)];
        let mut strata = Vec::new();
        for t in tf.support() {
            chain.push(tf.taus[t].clone());
            strata.push(t);
        }
        Ok(CanonicalFiltration { chain, strata })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::module::{free_right_module, radical_of_module};

    #[test]
    fn projective_in_the_bottom_stratum() {
        let s = strat(linear(2), vec![vec![0], vec![1]]);
        let p = free_right_module(s.algebra(), 0).unwrap();
        let tf = s.trace_filtration(&p);
        assert!(tf.taus[0].is_full());
        assert_eq!(tf.support(), [0]);
    }

    #[test]
    fn ladder_partition_two() {
        let s = strat(ladder(4).opposite(), vec![vec![1], vec![0], vec![2, 3]]);
        let p = free_right_module(s.algebra(), 0).unwrap();
        let tf = s.trace_filtration(&p);
        assert_eq!(tf.taus[0].dims(), [0, 1, 0, 0]);
        assert_eq!(tf.sections[0].dims(), [0, 1, 0, 0]);
        let mem = s.membership(&p);
        assert!(!mem.member);
        let w = mem.witness.unwrap();
        assert_eq!((w.stratum, w.vertex, w.reason), (0, 1, Reason::SectionNotProjective));
    }

    #[test]
    fn standard_modules_are_members() {
        let s = strat(ladder(4).opposite(), vec![vec![1], vec![0], vec![2, 3]]);
        for d in s.standard_modules() {
            let tf = s.trace_filtration(&d.module);
            assert_eq!(tf.support(), [d.stratum]);
            let mem = s.membership(&d.module);
            assert!(mem.member);
            let mut expect = vec![0; 4];
            expect[d.vertex] = 1;
            assert_eq!(mem.multiplicities, expect);
            let canon = s.canonical_filtration(&d.module).unwrap();
            assert_eq!(canon.strata, [d.stratum]);
        }
        let zero = RightModule::zero(s.algebra());
        assert!(s.membership(&zero).member);
        let d = s.standard_module(0, 1).unwrap().module;
        let twice = d.direct_sum(&d).unwrap();
        assert_eq!(s.membership(&twice).multiplicities, [0, 2, 0, 0]);
    }

    #[test]
    fn a2_chains() {
        let s = strat(linear(2), vec![vec![0], vec![1]]);
        let p = free_right_module(s.algebra(), 1).unwrap();
        let chain = vec![Submodule::zero(&p), radical_of_module(&p), Submodule::full(&p)];
        let check = s.verify_filtration(&p, &chain).unwrap();
        assert!(check.valid);
        assert_eq!(check.layers, [Some(0), Some(1)]);
        assert_eq!(check.multiplicities, s.membership(&p).multiplicities);
        let canon = s.canonical_filtration(&p).unwrap();
        assert_eq!(canon.chain, chain);
        assert_eq!(canon.strata, [0, 1]);
        let backwards = vec![Submodule::full(&p), Submodule::zero(&p)];
        assert_eq!(s.verify_filtration(&p, &backwards), Err(Error::ChainEndpoints));
        let bad = vec![Submodule::zero(&p), Submodule::full(&p), radical_of_module(&p), Submodule::full(&p)];
        assert_eq!(s.verify_filtration(&p, &bad), Err(Error::NonIncreasingChain(1)));
    }

    #[test]
    fn wrong_order_is_rejected() {
        // In the opposite order the projective at 2 has no Δ-filtration
        // starting from its radical.
        let s = strat(linear(2), vec![vec![1], vec![0]]);
        let p = free_right_module(s.algebra(), 1).unwrap();
        let chain = vec![Submodule::zero(&p), radical_of_module(&p), Submodule::full(&p)];
        let check = s.verify_filtration(&p, &chain).unwrap();
        assert!(!check.valid);
        assert!(s.membership(&p).member);
    }
}
