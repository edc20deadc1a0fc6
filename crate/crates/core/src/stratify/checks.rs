//! Verdicts: standardly stratified, quasi-hereditary, their ideal versions,
//! noetherian partitions and Hom vanishing inside a stratum.

use alloc::vec::Vec;
use core::fmt;

use super::Stratification;
use crate::module::{free_right_module, hom_space, is_projective, submodule_as_module, subquotient, trace_of_vertices};
use crate::module::{RightModule, Submodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    True,
    False,
    InconclusiveAtBoundary,
}

impl Verdict {
    pub fn code(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::InconclusiveAtBoundary => "inconclusive-at-boundary",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        [Verdict::True, Verdict::False, Verdict::InconclusiveAtBoundary].into_iter().find(|v| v.code() == code)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    SectionNotProjective,
    TopOutsideStratum,
    TraceNotStabilizing,
    SupportInfiniteFlag,
    EndoNotDivision,
    HomWithinStratumNonzero,
    RadSandwichNonzero,
}

impl Reason {
    pub const ALL: [Reason; 7] = [
        Reason::SectionNotProjective,
        Reason::TopOutsideStratum,
        Reason::TraceNotStabilizing,
        Reason::SupportInfiniteFlag,
        Reason::EndoNotDivision,
        Reason::HomWithinStratumNonzero,
        Reason::RadSandwichNonzero,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Reason::SectionNotProjective => "section-not-projective",
            Reason::TopOutsideStratum => "top-outside-stratum",
            Reason::TraceNotStabilizing => "trace-not-stabilizing",
            Reason::SupportInfiniteFlag => "support-infinite-flag",
            Reason::EndoNotDivision => "endo-not-division",
            Reason::HomWithinStratumNonzero => "hom-within-stratum-nonzero",
            Reason::RadSandwichNonzero => "rad-sandwich-nonzero",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.code() == code)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Where a check failed. `section` is the stratum of the offending section
/// when it differs from `stratum`; `partner` is the second vertex of a pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub stratum: usize,
    pub vertex: usize,
    pub section: Option<usize>,
    pub partner: Option<usize>,
    pub reason: Reason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// `Hom(Δ_e(i), Δ_{e'}(i))` computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPair {
    pub stratum: usize,
    pub source: usize,
    pub target: usize,
    /// `dim Hom(e, e') / I'_i(e, e')`.
    pub by_ideal: usize,
    /// `dim` of the hom space between the standard modules.
    pub by_hom_space: usize,
}

impl Stratification {
    /// Turns failures, sorted in report order, into a verdict. A failure in a
    /// safe stratum is definitive; otherwise unsafe strata make the answer
    /// inconclusive.
    fn conclude(&self, failures: Vec<Witness>) -> CheckReport {
        let safe = |w: &Witness| self.stratum_is_safe(w.stratum) && !self.is_unsafe(w.vertex);
        if let Some(w) = failures.iter().find(|w| safe(w)) {
            return CheckReport { verdict: Verdict::False, witness: Some(w.clone()) };
        }
        if (0..self.plan.len()).any(|i| !self.stratum_is_safe(i)) {
            return CheckReport { verdict: Verdict::InconclusiveAtBoundary, witness: failures.into_iter().next() };
        }
        CheckReport { verdict: Verdict::True, witness: None }
    }

    /// `e_a·I_t / e_a·I'_t` as a module over `Γ_t`.
    pub fn ideal_section(&self, t: usize, a: usize) -> RightModule {
        let p = free_right_module(&self.alg, a).expect("vertex in range");
        let big = self.ideal_in_projective(self.upper_ideal(t), a);
        let small = self.ideal_in_projective(self.lower_ideal(t), a);
        subquotient(&p, &big, &small).expect("ideal chain increases")
    }

    /// Non-projective ideal sections, in `(t, a)` order.
    fn section_failures(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        for t in 0..self.plan.len() {
            for a in 0..self.alg.vertex_count() {
                let s = self.ideal_section(t, a);
                if !s.is_zero() && !is_projective(&s, self.gamma(t)).projective {
                    out.push(Witness {
                        stratum: t,
                        vertex: a,
                        section: None,
                        partner: None,
                        reason: Reason::SectionNotProjective,
                    });
                }
            }
        }
        out
    }

    /// Per vertex: `e·I_last = eΛ`. Finite supports are automatic here.
    pub fn noetherian_per_vertex(&self) -> Vec<Verdict> {
        let n = self.alg.vertex_count();
        (0..n)
            .map(|a| {
                let stable = match self.plan.max_index() {
                    Some(last) => (0..n).all(|v| self.upper_ideal(last).get(v, a).is_full()),
                    None => true,
                };
                match (stable, self.is_unsafe(a)) {
                    (_, true) => Verdict::InconclusiveAtBoundary,
                    (true, false) => Verdict::True,
                    (false, false) => Verdict::False,
                }
            })
            .collect()
    }

    fn noetherian_failures(&self) -> Vec<Witness> {
        let last = self.plan.max_index().unwrap_or(0);
        self.noetherian_per_vertex()
            .into_iter()
            .enumerate()
            .filter(|(_, v)| *v == Verdict::False)
            .map(|(a, _)| Witness {
                stratum: self.plan.stratum_of(a),
                vertex: a,
                section: Some(last),
                partner: None,
                reason: Reason::TraceNotStabilizing,
            })
            .collect()
    }

    pub fn noetherian(&self) -> CheckReport {
        let mut failures = self.noetherian_failures();
        failures.sort();
        self.conclude(failures)
    }

    pub fn ideally_standardly_stratified(&self) -> CheckReport {
        self.conclude(self.section_failures())
    }

    /// Failures of the standard-stratification condition at `(i, e)`, from
    /// the ideal sections: `e` fails when some `e·I_t / e·I'_t` is not
    /// projective, and is reported at its own stratum.
    fn ss_failures(&self) -> Vec<Witness> {
        let mut out: Vec<Witness> = self
            .section_failures()
            .into_iter()
            .map(|w| Witness {
                stratum: self.plan.stratum_of(w.vertex),
                vertex: w.vertex,
                section: Some(w.stratum),
                partner: None,
                reason: w.reason,
            })
            .chain(self.noetherian_failures())
            .collect();
        out.sort();
        out
    }

    /// Standardly stratified, decided from noetherianity and the ideal
    /// sections.
    pub fn standardly_stratified(&self) -> CheckReport {
        self.conclude(self.ss_failures())
    }

    /// `U_e(i)` built by closing `M(f)`, `f ∈ F_{<i}`, under the action.
    pub fn trace_kernel(&self, i: usize, e: usize) -> (RightModule, Submodule) {
        let p = free_right_module(&self.alg, e).expect("vertex in range");
        let u = trace_of_vertices(&p, &self.plan.below(i));
        (p, u)
    }

    /// Standardly stratified straight from the definition: every `U_e(i)`
    /// must have a Δ-filtration.
    pub fn standardly_stratified_definitional(&self) -> CheckReport {
        let mut failures = Vec::new();
        for i in 0..self.plan.len() {
            for &e in self.plan.stratum(i) {
                let (p, u) = self.trace_kernel(i, e);
                let (m, _) = submodule_as_module(&p, &u);
                if let Some(w) = self.membership(&m).witness {
                    failures.push(Witness {
                        stratum: i,
                        vertex: e,
                        section: Some(w.stratum),
                        partner: None,
                        reason: w.reason,
                    });
                }
            }
        }
        self.conclude(failures)
    }

    /// Whether `e·rad·e ⊆ I'_i(e, e)`, i.e. `End(Δ_e(i))` is the ground field.
    pub fn endo_is_division(&self, i: usize, e: usize) -> bool {
        let rad = self.alg.radical();
        rad.get(e, e).is_subspace_of(self.lower_ideal(i).get(e, e))
    }

    pub fn quasi_hereditary(&self) -> CheckReport {
        let ss = self.ss_failures();
        let mut failures = Vec::new();
        for i in 0..self.plan.len() {
            for &e in self.plan.stratum(i) {
                if let Some(w) = ss.iter().find(|w| w.vertex == e) {
                    failures.push(w.clone());
                } else if !self.endo_is_division(i, e) {
                    failures.push(Witness {
                        stratum: i,
                        vertex: e,
                        section: None,
                        partner: None,
                        reason: Reason::EndoNotDivision,
                    });
                }
            }
        }
        self.conclude(failures)
    }

    /// Every ordered pair `e ≠ e'` in stratum `i`.
    pub fn hom_within_stratum(&self, i: usize) -> Vec<HomPair> {
        let stratum = self.plan.stratum(i);
        let standards: Vec<RightModule> =
            stratum.iter().map(|&e| self.standard_module(i, e).expect("vertex in stratum").module).collect();
        let mut out = Vec::new();
        for (x, &e) in stratum.iter().enumerate() {
            for (y, &f) in stratum.iter().enumerate() {
                if e == f {
                    continue;
                }
                let ideal = self.lower_ideal(i).get(e, f);
                out.push(HomPair {
                    stratum: i,
                    source: e,
                    target: f,
                    by_ideal: self.alg.hom_dim(e, f) - ideal.dim(),
                    by_hom_space: hom_space(&standards[x], &standards[y]).expect("same quiver").len(),
                });
            }
        }
        out
    }

    pub fn hom_vanishing(&self) -> CheckReport {
        let failures = (0..self.plan.len())
            .flat_map(|i| self.hom_within_stratum(i))
            .filter(|p| p.by_ideal != 0)
            .map(|p| Witness {
                stratum: p.stratum,
                vertex: p.source,
                section: None,
                partner: Some(p.target),
                reason: Reason::HomWithinStratumNonzero,
            })
            .collect();
        self.conclude(failures)
    }

    /// Vertices `a` with `e_a·(J·rad Γ_t·J) ≠ 0`, where `J` is the image of
    /// `I_t` in `Γ_t`.
    pub fn rad_sandwich_support(&self, t: usize) -> Vec<usize> {
        let q = &self.gammas[t];
        let j = self.upper_ideal(t).project(q);
        let g = &q.algebra;
        let prod = g.span_product(&g.span_product(&j, &g.radical()), &j);
        let n = g.vertex_count();
        (0..n).filter(|&a| (0..n).any(|v| !prod.get(v, a).is_zero())).collect()
    }

    pub fn ideally_quasi_hereditary(&self) -> CheckReport {
        let mut failures = self.section_failures();
        for t in 0..self.plan.len() {
            for a in self.rad_sandwich_support(t) {
                failures.push(Witness {
                    stratum: t,
                    vertex: a,
                    section: None,
                    partner: None,
                    reason: Reason::RadSandwichNonzero,
                });
            }
        }
        failures.sort();
        self.conclude(failures)
    }
}
