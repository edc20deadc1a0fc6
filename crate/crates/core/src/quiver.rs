//! Finite quivers, paths and relations.
//!
//! Paths are written first-to-last: `[a1, a2, ..., ak]` means "first `a1`,
//! then `a2`, ...". As a morphism this is `ak ∘ ... ∘ a1` from the source of
//! `a1` to the target of `ak`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` arrows.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, Error>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::DuplicateArrow(name));
            }
            let source = *index.get(&s).ok_or(Error::UnknownVertex(s))?;
            let target = *index.get(&t).ok_or(Error::UnknownVertex(t))?;
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, Error> {
        Self::new(
            vertices.iter().copied(),
            arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, Error> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, Error> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Same vertices, every arrow reversed (names kept).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Vertices joined to `v` by an arrow in either direction (excluding `v`).
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|a| {
                if a.source == v && a.target != v {
                    Some(a.target)
                } else if a.target == v && a.source != v {
                    Some(a.source)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All paths of exactly `len` arrows, in lexicographic order of arrow
    /// indices. Length 0 gives the trivial paths.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut current: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &current {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            current = next;
        }
        current.sort();
        current
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(".")
    }
}

/// A path in a quiver. Ordered by length, then source, target and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.arrows.len(), self.source, self.target, &self.arrows).cmp(&(
            other.arrows.len(),
            other.source,
            other.target,
            &other.arrows,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Builds a path from arrow indices, checking that consecutive arrows compose.
    pub fn from_arrows(quiver: &Quiver, arrows: &[usize]) -> Result<Self, Error> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable("empty arrow list".into()));
        };
        let mut target = quiver.arrow(first).source;
        for &a in arrows {
            let arrow = quiver.arrow(a);
            if arrow.source != target {
                return Err(Error::NotComposable(format!(
                    "arrow {} starts at {} but the path is at {}",
                    arrow.name,
                    quiver.vertex_name(arrow.source),
                    quiver.vertex_name(target)
                )));
            }
            target = arrow.target;
        }
        Ok(Path { source: quiver.arrow(first).source, target, arrows: arrows.to_vec() })
    }

    /// "First `self`, then `next`".
    pub fn then(&self, next: &Path) -> Path {
        assert_eq!(self.target, next.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path { source: self.source, target: next.target, arrows }
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    /// Whether the path visits `v` (at an endpoint or in its interior).
    pub fn visits(&self, quiver: &Quiver, v: usize) -> bool {
        self.source == v || self.arrows.iter().any(|&a| quiver.arrow(a).target == v)
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    source: usize,
    target: usize,
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Validates admissibility (every path has length ≥ 2), composability and
    /// parallelism of the terms.
    pub fn new(quiver: &Quiver, terms: Vec<(Scalar, Vec<usize>)>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::NotAdmissible("relation has no terms".into()));
        }
        let mut out = Vec::with_capacity(terms.len());
        for (coeff, arrows) in terms {
            let path = Path::from_arrows(quiver, &arrows)?;
            if path.len() < 2 {
                return Err(Error::NotAdmissible(format!(
                    "path {} has length {} < 2",
                    quiver.path_label(&path),
                    path.len()
                )));
            }
            out.push((coeff, path));
        }
        let (source, target) = (out[0].1.source, out[0].1.target);
        if let Some((_, p)) = out.iter().find(|(_, p)| p.source != source || p.target != target) {
            return Err(Error::NotComposable(format!(
                "path {} is not parallel to {}",
                quiver.path_label(p),
                quiver.path_label(&out[0].1)
            )));
        }
        Ok(Relation { source, target, terms: out })
    }

    /// Builds a relation from arrow names.
    pub fn from_names(quiver: &Quiver, terms: Vec<(Scalar, Vec<&str>)>) -> Result<Self, Error> {
        let terms = terms
            .into_iter()
            .map(|(c, names)| {
                let arrows = names.iter().map(|n| quiver.arrow_index(n)).collect::<Result<Vec<_>, _>>()?;
                Ok((c, arrows))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(quiver, terms)
    }

    /// A monomial relation (a single path with coefficient one).
    pub fn monomial(quiver: &Quiver, one: Scalar, arrows: Vec<usize>) -> Result<Self, Error> {
        Self::new(quiver, alloc::vec![(one, arrows)])
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn min_length(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            source: self.target,
            target: self.source,
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
        }
    }
}
