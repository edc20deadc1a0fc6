use std::collections::BTreeMap;
use std::time::Instant;

use stratum_core::{CheckReport, Stratification};

use crate::input::{Compiled, ProblemSpec, Side};
use crate::report::{Boundary, CheckResult, ModuleResult, Report, StandardRow, Verdict, Witness};
use crate::InputError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Noetherian,
    Ss,
    Qh,
    IdeallySs,
    IdeallyQh,
    Membership,
    Multiplicities,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Noetherian,
        Check::Ss,
        Check::Qh,
        Check::IdeallySs,
        Check::IdeallyQh,
        Check::Membership,
        Check::Multiplicities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Noetherian => "noetherian",
            Check::Ss => "ss",
            Check::Qh => "qh",
            Check::IdeallySs => "ideally-ss",
            Check::IdeallyQh => "ideally-qh",
            Check::Membership => "membership",
            Check::Multiplicities => "multiplicities",
        }
    }

    fn on_modules(self) -> bool {
        matches!(self, Check::Membership | Check::Multiplicities)
    }

    /// Checks whose answer depends on radicals and endomorphism rings.
    fn needs_large_characteristic(self) -> bool {
        matches!(self, Check::Qh | Check::IdeallyQh)
    }

    /// Parses a comma-separated list. `all` adds every algebra check, plus the
    /// module checks when `with_modules` is set. Duplicates collapse and the
    /// result is in a fixed order.
    pub fn parse_list(list: &str, with_modules: bool) -> Result<Vec<Check>, InputError> {
        let mut out = Vec::new();
        for word in list.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            if word == "all" {
                out.extend(Check::ALL.into_iter().filter(|c| with_modules || !c.on_modules()));
                continue;
            }
            let c = Check::ALL
                .into_iter()
                .find(|c| c.name() == word)
                .ok_or_else(|| InputError::invalid("--check", format!("unknown check {word:?}")))?;
            out.push(c);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub checks: Vec<Check>,
    /// Restricts module checks to these names; all modules when empty.
    pub modules: Vec<String>,
    pub parallel: bool,
    pub timing: bool,
}

enum Outcome {
    Check(CheckResult),
    Module(ModuleResult),
}

/// Compiles the spec and runs the requested checks.
pub fn run(spec: &ProblemSpec, options: &Options) -> Result<Report, InputError> {
    let Compiled { stratification: s, modules } = spec.compile()?;
    let alg = s.algebra();
    if let Some(p) = alg.field().order() {
        if (p as usize) <= alg.dim() && options.checks.iter().any(|c| c.needs_large_characteristic()) {
            return Err(InputError::invalid("field", format!("qh checks over Fp:{p} need p > dim Λ = {}", alg.dim())));
        }
    }
    for name in &options.modules {
        if !modules.iter().any(|(n, _)| n == name) {
            return Err(InputError::invalid("--module", format!("no module named {name:?}")));
        }
    }
    let targets: Vec<&(String, stratum_core::RightModule)> =
        modules.iter().filter(|(n, _)| options.modules.is_empty() || options.modules.contains(n)).collect();
    let module_checks: Vec<Check> = options.checks.iter().copied().filter(|c| c.on_modules()).collect();
    if !module_checks.is_empty() && targets.is_empty() {
        return Err(InputError::invalid("modules", "module checks need at least one module"));
    }

    let names = alg.quiver().vertices();
    let witness = |w: &stratum_core::Witness| Witness {
        stratum: w.stratum,
        vertex: names[w.vertex].clone(),
        section: w.section,
        partner: w.partner.map(|p| names[p].clone()),
        reason: w.reason.code().to_string(),
    };
    let from_report = |check: Check, r: CheckReport| CheckResult {
        check: check.name().to_string(),
        verdict: r.verdict.into(),
        witness: r.witness.as_ref().map(witness),
    };
    let multiplicities = module_checks.contains(&Check::Multiplicities);

    let mut jobs: Vec<(String, Box<dyn Fn() -> Outcome + Send + Sync + '_>)> = Vec::new();
    for &c in options.checks.iter().filter(|c| !c.on_modules()) {
        let s = &s;
        jobs.push((c.name().to_string(), Box::new(move || Outcome::Check(from_report(c, algebra_check(s, c))))));
    }
    if !module_checks.is_empty() {
        for (name, m) in targets {
            let s = &s;
            let witness = &witness;
            jobs.push((
                format!("module:{name}"),
                Box::new(move || {
                    let mem = s.membership(m);
                    let table = multiplicities.then(|| {
                        names.iter().cloned().zip(mem.multiplicities.iter().copied()).collect::<BTreeMap<_, _>>()
                    });
                    Outcome::Module(ModuleResult {
                        module: name.clone(),
                        verdict: if mem.member { Verdict::True } else { Verdict::False },
                        multiplicities: if mem.member { table } else { None },
                        witness: mem.witness.as_ref().map(witness),
                    })
                }),
            ));
        }
    }

    let timed = |job: &(String, Box<dyn Fn() -> Outcome + Send + Sync + '_>)| {
        let start = Instant::now();
        let out = (job.1)();
        (out, start.elapsed().as_micros() as u64)
    };
    let results: Vec<(Outcome, u64)> = if options.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = jobs.iter().map(|j| scope.spawn(move || timed(j))).collect();
            handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
        })
    } else {
        jobs.iter().map(timed).collect()
    };

    let mut checks = Vec::new();
    let mut module_results = Vec::new();
    let mut timing = BTreeMap::new();
    for ((label, _), (out, us)) in jobs.iter().zip(results) {
        timing.insert(label.clone(), us);
        match out {
            Outcome::Check(c) => checks.push(c),
            Outcome::Module(m) => module_results.push(m),
        }
    }

    let plan = s.plan();
    Ok(Report {
        field: spec.field.to_string(),
        side: match spec.side {
            Side::Right => "right",
            Side::Left => "left",
        }
        .to_string(),
        vertices: names.to_vec(),
        partition: plan.strata().iter().map(|st| st.iter().map(|&v| names[v].clone()).collect()).collect(),
        algebra_dim: alg.dim(),
        boundary: Boundary {
            vertices: spec.boundary.clone(),
            unsafe_vertices: s.unsafe_vertices().iter().map(|&v| names[v].clone()).collect(),
            unsafe_strata: (0..plan.len()).filter(|&i| !s.stratum_is_safe(i)).collect(),
        },
        standards: s
            .standard_modules()
            .into_iter()
            .map(|d| StandardRow {
                stratum: d.stratum,
                vertex: names[d.vertex].clone(),
                dims: d.module.dims().to_vec(),
            })
            .collect(),
        checks,
        modules: module_results,
        timing_us: options.timing.then_some(timing),
    })
}

fn algebra_check(s: &Stratification, c: Check) -> CheckReport {
    match c {
        Check::Noetherian => s.noetherian(),
        Check::Ss => s.standardly_stratified(),
        Check::Qh => s.quasi_hereditary(),
        Check::IdeallySs => s.ideally_standardly_stratified(),
        Check::IdeallyQh => s.ideally_quasi_hereditary(),
        Check::Membership | Check::Multiplicities => unreachable!("module checks run per module"),
    }
}
