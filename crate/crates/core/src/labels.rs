//! Stratum labels: one text label per simplex of a complex.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("simplex {0:?} has no label")]
    Missing(Vec<String>),
    #[error("labeled simplex {0:?} is not in the complex")]
    Unknown(Vec<String>),
    #[error("simplex {simplex:?} labeled both {first:?} and {second:?}")]
    Conflict {
        simplex: Vec<String>,
        first: String,
        second: String,
    },
}

/// A total labeling of a complex's simplices, indexed in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumLabeling {
    labels: Vec<String>,
}

impl StratumLabeling {
    /// Builds a labeling from per-simplex assignments. Every simplex of
    /// `complex` must be labeled exactly once (repeats with the same label are
    /// tolerated).
    pub fn new(
        complex: &SimplicialComplex,
        assignments: impl IntoIterator<Item = (Simplex, String)>,
    ) -> Result<Self, LabelError> {
        let mut slots: Vec<Option<String>> = vec![None; complex.len()];
        for (s, label) in assignments {
            let i = complex
                .index_of(&s)
                .ok_or_else(|| LabelError::Unknown(complex.simplex_names(&s)))?;
            match &slots[i] {
                Some(prev) if *prev != label => {
                    return Err(LabelError::Conflict {
                        simplex: complex.simplex_names(&s),
                        first: prev.clone(),
                        second: label,
                    })
                }
                _ => slots[i] = Some(label),
            }
        }
        let labels = slots
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                l.ok_or_else(|| LabelError::Missing(complex.simplex_names(&complex.simplices()[i])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StratumLabeling { labels })
    }

    /// Labels computed from each simplex.
    pub fn from_fn(complex: &SimplicialComplex, f: impl FnMut(&Simplex) -> String) -> Self {
        StratumLabeling {
            labels: complex.simplices().iter().map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_at(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn label_of(&self, complex: &SimplicialComplex, s: &Simplex) -> Option<&str> {
        complex.index_of(s).map(|i| self.label_at(i))
    }

    /// Distinct labels, sorted.
    pub fn distinct(&self) -> BTreeSet<&str> {
        self.labels.iter().map(String::as_str).collect()
    }

    /// Simplex indices carrying each label.
    pub fn classes(&self) -> BTreeMap<&str, Vec<usize>> {
        let mut out: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, l) in self.labels.iter().enumerate() {
            out.entry(l.as_str()).or_default().push(i);
        }
        out
    }

    /// Restriction to a subcomplex.
    pub fn restrict(&self, ambient: &SimplicialComplex, sub: &SimplicialComplex) -> Option<Self> {
        let labels = sub
            .simplices()
            .iter()
            .map(|s| ambient.index_of(s).map(|i| self.labels[i].clone()))
            .collect::<Option<Vec<_>>>()?;
        Some(StratumLabeling { labels })
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;

    fn edge() -> SimplicialComplex {
        SimplicialComplex::build([[0, 1]]).unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::new(vs.iter().map(|&v| VertexId(v)).collect()).unwrap()
    }

    #[test]
    fn total_labeling() {
        let k = edge();
        let l = StratumLabeling::new(
            &k,
            [
                (s(&[0]), "end".into()),
                (s(&[1]), "end".into()),
                (s(&[0, 1]), "arc".into()),
            ],
        )
        .unwrap();
        assert_eq!(
            l.distinct().into_iter().collect::<Vec<_>>(),
            vec!["arc", "end"]
        );
        assert_eq!(l.classes()["end"], vec![0, 1]);
    }

    #[test]
    fn partial_labeling_is_rejected() {
        let k = edge();
        let err = StratumLabeling::new(&k, [(s(&[0]), "end".into())]).unwrap_err();
        assert_eq!(err, LabelError::Missing(vec!["1".into()]));
        let err = StratumLabeling::new(&k, [(s(&[0, 2]), "x".into())]).unwrap_err();
        assert!(matches!(err, LabelError::Unknown(_)));
        let err =
            StratumLabeling::new(&k, [(s(&[0]), "x".into()), (s(&[0]), "y".into())]).unwrap_err();
        assert!(matches!(err, LabelError::Conflict { .. }));
    }
}
