//! The JSON complex document and the term expression language.
//!
//! A document names its vertices, lists top cells by vertex name, and may
//! label simplices:
//!
//! ```json
//! {"vertices": ["p", "q", "r"],
//!  "top_cells": [["p", "q"], ["q", "r"], ["p", "r"]],
//!  "labels": [[["p"], "point"], [["p", "q"], "arc"]]}
//! ```
//!
//! When `labels` is present it must cover every face of every top cell.
//!
//! Term grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' INT)?
//! atom   := INT | '(' expr ')' | 'L' '(' expr ')' | 'W' '(' expr ')'
//! ```
//!
//! `L` is Λ̃, `W` is Ω̃ (desugared to `e − L(e)`), and an integer is the
//! constant function.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::labels::{LabelError, StratumLabeling};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub top_cells: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(Vec<String>, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vertices[{index}]: duplicate vertex name {name:?}")]
    DuplicateVertexName { index: usize, name: String },
    #[error("top_cells[{cell}][{position}]: unknown vertex {name:?}")]
    UnknownVertex {
        cell: usize,
        position: usize,
        name: String,
    },
    #[error("top_cells[{cell}]: malformed cell, vertex {name:?} appears twice")]
    MalformedCell { cell: usize, name: String },
    #[error("top_cells[{cell}]: empty cell")]
    EmptyCell { cell: usize },
    #[error("labels[{entry}]: unknown vertex {name:?}")]
    UnknownLabelVertex { entry: usize, name: String },
    #[error("labels[{entry}]: {simplex:?} is not a simplex of the complex")]
    UnknownLabelSimplex { entry: usize, simplex: Vec<String> },
    #[error("labels[{entry}]: {simplex:?} is already labeled {previous:?}")]
    ConflictingLabel {
        entry: usize,
        simplex: Vec<String>,
        previous: String,
    },
    #[error("labels: partial labeling, {count} simplices unlabeled, first {first:?}")]
    PartialLabeling { count: usize, first: Vec<String> },
}

/// Parses a document into its face-closed complex and optional labeling.
pub fn parse_complex(
    text: &str,
) -> Result<(SimplicialComplex, Option<StratumLabeling>), DocumentError> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_document(&doc)
}

pub fn from_document(
    doc: &ComplexDocument,
) -> Result<(SimplicialComplex, Option<StratumLabeling>), DocumentError> {
    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut names = BTreeMap::new();
    for (index, name) in doc.vertices.iter().enumerate() {
        let id = VertexId(index as u32);
        if ids.insert(name.as_str(), id).is_some() {
            return Err(DocumentError::DuplicateVertexName {
                index,
                name: name.clone(),
            });
        }
        names.insert(id, name.clone());
    }
    let mut cells = Vec::with_capacity(doc.top_cells.len());
    for (cell, vertices) in doc.top_cells.iter().enumerate() {
        if vertices.is_empty() {
            return Err(DocumentError::EmptyCell { cell });
        }
        let mut vs = Vec::with_capacity(vertices.len());
        for (position, name) in vertices.iter().enumerate() {
            let id = *ids
                .get(name.as_str())
                .ok_or_else(|| DocumentError::UnknownVertex {
                    cell,
                    position,
                    name: name.clone(),
                })?;
            if vs.contains(&id) {
                return Err(DocumentError::MalformedCell {
                    cell,
                    name: name.clone(),
                });
            }
            vs.push(id);
        }
        cells.push(Simplex::new(vs).expect("checked nonempty and duplicate-free"));
    }
    // Listed vertices that no cell mentions are isolated points.
    cells.extend(names.keys().map(|v| Simplex::vertex(*v)));
    let complex = SimplicialComplex::from_cells(cells, names);

    let labeling = match &doc.labels {
        None => None,
        Some(entries) => Some(labels_from_entries(&complex, &ids, entries)?),
    };
    Ok((complex, labeling))
}

fn labels_from_entries(
    complex: &SimplicialComplex,
    ids: &HashMap<&str, VertexId>,
    entries: &[(Vec<String>, String)],
) -> Result<StratumLabeling, DocumentError> {
    let mut assigned: Vec<Option<&str>> = vec![None; complex.len()];
    let mut pairs = Vec::with_capacity(entries.len());
    for (entry, (vertices, label)) in entries.iter().enumerate() {
        let vs = vertices
            .iter()
            .map(|n| {
                ids.get(n.as_str())
                    .copied()
                    .ok_or_else(|| DocumentError::UnknownLabelVertex {
                        entry,
                        name: n.clone(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let simplex = Simplex::new(vs).map_err(|_| DocumentError::UnknownLabelSimplex {
            entry,
            simplex: vertices.clone(),
        })?;
        let index =
            complex
                .index_of(&simplex)
                .ok_or_else(|| DocumentError::UnknownLabelSimplex {
                    entry,
                    simplex: vertices.clone(),
                })?;
        match assigned[index] {
            Some(prev) if prev != label => {
                return Err(DocumentError::ConflictingLabel {
                    entry,
                    simplex: vertices.clone(),
                    previous: prev.to_string(),
                })
            }
            _ => assigned[index] = Some(label),
        }
        pairs.push((simplex, label.clone()));
    }
    StratumLabeling::new(complex, pairs).map_err(|e| match e {
        LabelError::Missing(first) => DocumentError::PartialLabeling {
            count: assigned.iter().filter(|a| a.is_none()).count(),
            first,
        },
        // Unknown and conflicting entries were rejected above.
        other => unreachable!("{other}"),
    })
}

/// The document for a complex: vertices in id order, maximal simplices as
/// top cells, and one label entry per simplex when a labeling is given.
pub fn to_document(
    complex: &SimplicialComplex,
    labeling: Option<&StratumLabeling>,
) -> ComplexDocument {
    let cofaces = complex.cofaces();
    let top_cells = complex
        .simplices()
        .iter()
        .enumerate()
        .filter(|(i, _)| cofaces[*i].is_empty())
        .map(|(_, s)| complex.simplex_names(s))
        .collect();
    let labels = labeling.map(|l| {
        complex
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, s)| (complex.simplex_names(s), l.label_at(i).to_string()))
            .collect()
    });
    ComplexDocument {
        vertices: complex.names().values().cloned().collect(),
        top_cells,
        labels,
    }
}

pub fn export_complex(complex: &SimplicialComplex, labeling: Option<&StratumLabeling>) -> String {
    serde_json::to_string_pretty(&to_document(complex, labeling)).expect("documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermSyntaxError {
    #[error("syntax error at offset {offset}: expected {expected}")]
    Unexpected {
        offset: usize,
        expected: &'static str,
    },
    #[error("exponent at offset {offset} must be at least 1")]
    Exponent { offset: usize },
    #[error("integer at offset {offset} is too large")]
    Overflow { offset: usize },
}

impl TermSyntaxError {
    pub fn offset(&self) -> usize {
        match self {
            TermSyntaxError::Unexpected { offset, .. }
            | TermSyntaxError::Exponent { offset }
            | TermSyntaxError::Overflow { offset } => *offset,
        }
    }
}

/// Parses a term expression into its canonical [`Term`].
pub fn parse_term(text: &str) -> Result<Term, TermSyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(TermSyntaxError::Unexpected {
            offset: p.pos,
            expected: "an operator or end of input",
        });
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8, expected: &'static str) -> Result<(), TermSyntaxError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(TermSyntaxError::Unexpected {
                offset: self.pos,
                expected,
            })
        }
    }

    fn expr(&mut self) -> Result<Term, TermSyntaxError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Term::add(acc, self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Term::sub(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Term, TermSyntaxError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Term::mul(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, TermSyntaxError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let n = self.integer()?;
        if n < 1 {
            return Err(TermSyntaxError::Exponent { offset: at });
        }
        let n = u32::try_from(n).map_err(|_| TermSyntaxError::Overflow { offset: at })?;
        if n > 64 {
            return Err(TermSyntaxError::Overflow { offset: at });
        }
        Ok(Term::pow(base, n))
    }

    fn integer(&mut self) -> Result<u64, TermSyntaxError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(TermSyntaxError::Unexpected {
                offset: start,
                expected: "an integer",
            });
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| TermSyntaxError::Overflow { offset: start })
    }

    fn atom(&mut self) -> Result<Term, TermSyntaxError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(inner)
            }
            Some(op @ (b'L' | b'W')) => {
                self.pos += 1;
                self.expect(b'(', "'(' after operator")?;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(if op == b'L' {
                    Term::half_link(inner)
                } else {
                    Term::omega(inner)
                })
            }
            Some(c) if c.is_ascii_digit() => Ok(Term::integer(self.integer()?)),
            _ => Err(TermSyntaxError::Unexpected {
                offset: self.pos,
                expected: "'1', an integer, '(', 'L(' or 'W('",
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn circle_document() {
        let text = r#"{"vertices":["p","q","r"],"top_cells":[["p","q"],["q","r"],["p","r"]]}"#;
        let (k, labels) = parse_complex(text).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert!(labels.is_none());
    }

    #[test]
    fn diagnostics() {
        let err = |t: &str| parse_complex(t).unwrap_err();
        assert_eq!(
            err(r#"{"vertices":["p"],"top_cells":[["p","p"]]}"#),
            DocumentError::MalformedCell {
                cell: 0,
                name: "p".into()
            }
        );
        assert_eq!(
            err(r#"{"vertices":["p"],"top_cells":[["p"],["p","z"]]}"#),
            DocumentError::UnknownVertex {
                cell: 1,
                position: 1,
                name: "z".into()
            }
        );
        assert_eq!(
            err(r#"{"vertices":["p","p"],"top_cells":[]}"#),
            DocumentError::DuplicateVertexName {
                index: 1,
                name: "p".into()
            }
        );
        assert_eq!(
            err(r#"{"vertices":["p","q"],"top_cells":[["p","q"]],"labels":[[["p"],"x"]]}"#),
            DocumentError::PartialLabeling {
                count: 2,
                first: vec!["q".into()]
            }
        );
        assert!(matches!(
            err(r#"{"vertices":["p","q"],"top_cells":[["p"],["q"]],"labels":[[["p","q"],"x"]]}"#),
            DocumentError::UnknownLabelSimplex { entry: 0, .. }
        ));
        assert!(matches!(err("{"), DocumentError::Json { line: 1, .. }));
        assert!(matches!(
            err(r#"{"vertices":[],"top_cells":[[]]}"#),
            DocumentError::EmptyCell { cell: 0 }
        ));
    }

    #[test]
    fn labeled_round_trip() {
        let text = r#"{"vertices":["p","q"],"top_cells":[["q","p"]],
            "labels":[[["p"],"end"],[["q"],"end"],[["q","p"],"arc"]]}"#;
        let (k, l) = parse_complex(text).unwrap();
        let again = export_complex(&k, l.as_ref());
        let (k2, l2) = parse_complex(&again).unwrap();
        assert_eq!(k, k2);
        assert_eq!(l, l2);
    }

    #[test]
    fn psi_expression() {
        let t = parse_term("L(1)*(L(1)^2 - L(L(1)^2))").unwrap();
        let phi = Term::half_link(Term::one());
        let expected = Term::mul(phi.clone(), Term::omega(Term::pow(phi, 2)));
        assert_eq!(t, expected);
    }

    #[test]
    fn omega_desugars() {
        assert_eq!(
            format!("{:?}", parse_term("W(L(1))").unwrap()),
            "Sub(HalfLink(One), HalfLink(HalfLink(One)))"
        );
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_term("1+").unwrap_err().offset(), 2);
        assert_eq!(parse_term("L(1").unwrap_err().offset(), 3);
        assert_eq!(parse_term("1 1").unwrap_err().offset(), 2);
        assert_eq!(
            parse_term("L(1)^0").unwrap_err(),
            TermSyntaxError::Exponent { offset: 5 }
        );
        assert!(parse_term("").is_err());
        assert!(parse_term("X(1)").is_err());
        assert!(matches!(
            parse_term("99999999999999999999999").unwrap_err(),
            TermSyntaxError::Overflow { offset: 0 }
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        let one = Term::one;
        // 1 - 1 - 1 is (1 - 1) - 1
        assert_eq!(
            parse_term("1 - 1 - 1").unwrap(),
            Term::sub(Term::sub(one(), one()), one())
        );
        // ^ binds tighter than *, * tighter than +
        let phi = Term::half_link(one());
        assert_eq!(
            parse_term("1 + L(1)*L(1)^2").unwrap(),
            Term::add(one(), Term::mul(phi.clone(), Term::pow(phi, 2)))
        );
        assert_eq!(parse_term(" 3 ").unwrap(), Term::integer(3));
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = Just(Term::one());
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                inner.clone().prop_map(Term::half_link),
                inner.clone().prop_map(Term::omega),
                (inner, 1u32..4).prop_map(|(a, n)| Term::pow(a, n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(t in arb_term()) {
            let shown = t.to_string();
            prop_assert_eq!(parse_term(&shown).unwrap(), t, "{}", shown);
        }
    }
}
