//! The JSON problem document and its validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use stratum_core::{build_algebra, BoundAlgebra, Field, Mat, Quiver, Relation, RightModule, StratPlan, Stratification};

use crate::InputError;

pub const DEFAULT_MAX_PATH_LENGTH: usize = 8;

/// `"Q"`, `"Fp:7"` or `{"Fp": 7}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Text(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl TryFrom<FieldRepr> for FieldSpec {
    type Error = String;

    fn try_from(r: FieldRepr) -> Result<Self, String> {
        match r {
            FieldRepr::Text(t) => t.parse(),
            FieldRepr::Prime { p } => Ok(FieldSpec::Prime(p)),
        }
    }
}

impl From<FieldSpec> for FieldRepr {
    fn from(f: FieldSpec) -> Self {
        FieldRepr::Text(f.to_string())
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "Q" | "q" => Ok(FieldSpec::Rational),
            other => other
                .strip_prefix("Fp:")
                .and_then(|p| p.trim().parse().ok())
                .map(FieldSpec::Prime)
                .ok_or_else(|| format!("field must be \"Q\" or \"Fp:P\", got {other:?}")),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FieldSpec {
    pub fn to_field(self) -> Result<Field, InputError> {
        match self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime(p) => Field::prime(p).map_err(|e| InputError::invalid("field", e)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: Literal,
    pub path: Vec<String>,
}

/// A scalar written as a JSON integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Int(n) => n.to_string(),
            Literal::Text(t) => t.clone(),
        }
    }
}

/// A representation: dimensions by vertex name (absent means zero) and one
/// matrix per arrow (absent means zero), given as a list of rows.
///
/// On the right side an arrow `a: s -> t` acts `M(t) -> M(s)`, so its matrix
/// has `dim s` rows and `dim t` columns. On the left side it acts
/// `M(s) -> M(t)` and has `dim t` rows. Rows always index the vertex the
/// action lands in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Literal>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    pub partition: Vec<Vec<String>>,
    #[serde(default)]
    pub side: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<String>,
}

/// Values from the command line that replace the document's own.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub side: Option<Side>,
    pub max_path_length: Option<usize>,
}

/// The compiled problem: the algebra on the requested side, the plan and the
/// named modules.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub stratification: Stratification,
    pub modules: Vec<(String, RightModule)>,
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<ProblemSpec, InputError> {
    parse_with(text, &Overrides::default())
}

/// Parses a document, applies overrides, then validates.
pub fn parse_with(text: &str, overrides: &Overrides) -> Result<ProblemSpec, InputError> {
    let mut spec: ProblemSpec = serde_json::from_str(text).map_err(InputError::Json)?;
    if let Some(f) = overrides.field {
        spec.field = f;
    }
    if let Some(s) = overrides.side {
        spec.side = s;
    }
    if let Some(n) = overrides.max_path_length {
        spec.max_path_length = Some(n);
    }
    spec.validate()?;
    Ok(spec)
}

fn unique<'a>(names: impl Iterator<Item = &'a String>, what: &str, field: &str) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for (i, n) in names.enumerate() {
        if !seen.insert(n) {
            return Err(InputError::invalid(format!("{field}[{i}]"), format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(())
}

impl ProblemSpec {
    /// Name-level checks. Everything that needs the algebra happens in
    /// [`ProblemSpec::compile`].
    pub fn validate(&self) -> Result<(), InputError> {
        let field = self.field.to_field()?;
        unique(self.vertices.iter(), "vertex", "vertices")?;
        unique(self.arrows.iter().map(|a| &a.name), "arrow", "arrows")?;
        unique(self.modules.iter().map(|m| &m.name), "module", "modules")?;
        let vertex = |name: &str, at: String| -> Result<(), InputError> {
            if self.vertices.iter().any(|v| v == name) {
                Ok(())
            } else {
                Err(InputError::invalid(at, format!("unknown vertex {name:?}")))
            }
        };
        for (i, a) in self.arrows.iter().enumerate() {
            vertex(&a.from, format!("arrows[{i}].from"))?;
            vertex(&a.to, format!("arrows[{i}].to"))?;
        }
        for (i, r) in self.relations.iter().enumerate() {
            if r.is_empty() {
                return Err(InputError::invalid(format!("relations[{i}]"), "relation has no terms"));
            }
            for (j, t) in r.iter().enumerate() {
                let at = format!("relations[{i}][{j}]");
                field.parse(&t.coeff.text()).map_err(|e| InputError::invalid(format!("{at}.coeff"), e))?;
                if t.path.len() < 2 {
                    return Err(InputError::invalid(
                        format!("{at}.path"),
                        format!("not admissible: path of length {} lies outside J²", t.path.len()),
                    ));
                }
                for (k, a) in t.path.iter().enumerate() {
                    if !self.arrows.iter().any(|x| &x.name == a) {
                        return Err(InputError::invalid(format!("{at}.path[{k}]"), format!("unknown arrow {a:?}")));
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        for (i, s) in self.partition.iter().enumerate() {
            if s.is_empty() {
                return Err(InputError::invalid(format!("partition[{i}]"), "not a partition: empty stratum"));
            }
            for (j, v) in s.iter().enumerate() {
                vertex(v, format!("partition[{i}][{j}]"))?;
                if !seen.insert(v) {
                    return Err(InputError::invalid(
                        format!("partition[{i}][{j}]"),
                        format!("not a partition: vertex {v:?} appears twice"),
                    ));
                }
            }
        }
        if let Some(v) = self.vertices.iter().find(|v| !seen.contains(v)) {
            return Err(InputError::invalid("partition", format!("not a partition: vertex {v:?} is in no stratum")));
        }
        for (i, b) in self.boundary.iter().enumerate() {
            vertex(b, format!("boundary[{i}]"))?;
        }
        for (i, m) in self.modules.iter().enumerate() {
            for v in m.dims.keys() {
                vertex(v, format!("modules[{i}].dims"))?;
            }
            for (a, rows) in &m.arrows {
                if !self.arrows.iter().any(|x| &x.name == a) {
                    return Err(InputError::invalid(format!("modules[{i}].arrows"), format!("unknown arrow {a:?}")));
                }
                for row in rows {
                    for e in row {
                        field
                            .parse(&e.text())
                            .map_err(|err| InputError::invalid(format!("modules[{i}].arrows.{a}"), err))?;
                    }
                }
            }
        }
        if self.max_path_length == Some(0) {
            return Err(InputError::invalid("max_path_length", "must be positive"));
        }
        Ok(())
    }

    pub fn max_path_length(&self) -> usize {
        self.max_path_length.unwrap_or(DEFAULT_MAX_PATH_LENGTH)
    }

    /// Builds the algebra (on the opposite quiver when `side` is left), the
    /// stratification with its boundary guard, and the modules.
    pub fn compile(&self) -> Result<Compiled, InputError> {
        self.validate()?;
        let field = self.field.to_field()?;
        let arrows = self.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone()));
        let quiver = Quiver::new(self.vertices.clone(), arrows).map_err(|e| InputError::invalid("arrows", e))?;
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let terms = r
                    .iter()
                    .map(|t| {
                        let c = field.parse(&t.coeff.text()).expect("validated");
                        (c, t.path.iter().map(String::as_str).collect())
                    })
                    .collect();
                Relation::from_names(&quiver, terms).map_err(|e| InputError::invalid(format!("relations[{i}]"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let alg = build_algebra(quiver, relations, field, self.max_path_length())
            .map_err(|e| InputError::invalid("max_path_length", e))?;
        let alg: BoundAlgebra = match self.side {
            Side::Right => alg,
            Side::Left => alg.opposite(),
        };
        let plan =
            StratPlan::from_names(alg.quiver(), &self.partition).map_err(|e| InputError::invalid("partition", e))?;
        let boundary: Vec<usize> =
            self.boundary.iter().map(|b| alg.quiver().vertex_index(b).expect("validated")).collect();
        let modules = self
            .modules
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Ok((m.name.clone(), self.module(&alg, m).map_err(|e| InputError::invalid(format!("modules[{i}]"), e))?))
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        let stratification = Stratification::new(alg, plan)
            .and_then(|s| s.with_boundary(&boundary))
            .map_err(|e| InputError::invalid("partition", e))?;
        Ok(Compiled { stratification, modules })
    }

    fn module(&self, alg: &BoundAlgebra, m: &ModuleSpec) -> Result<RightModule, String> {
        let field = alg.field();
        let quiver: &Arc<Quiver> = alg.quiver();
        let dims: Vec<usize> = self.vertices.iter().map(|v| m.dims.get(v).copied().unwrap_or(0)).collect();
        let actions = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (rows, cols) = (dims[a.source], dims[a.target]);
                let Some(given) = m.arrows.get(&a.name) else {
                    return Ok(Mat::zeros(field, rows, cols));
                };
                if given.len() != rows || given.iter().any(|r| r.len() != cols) {
                    return Err(format!("matrix for arrow {:?} must be {rows}x{cols}", a.name));
                }
                let rows = given
                    .iter()
                    .map(|r| r.iter().map(|e| field.parse(&e.text()).expect("validated")).collect())
                    .collect();
                Mat::from_rows(field, cols, rows).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let module = RightModule::new(quiver.clone(), field, dims, actions).map_err(|e| e.to_string())?;
        module.validate(alg).map_err(|e| e.to_string())?;
        Ok(module)
    }
}
