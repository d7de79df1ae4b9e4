//! Built-in example spaces with stratum labels and expected links.
//!
//! Labels group simplices by the local topology at interior points, so every
//! function generated from `1` is constant on each label. Each fixture
//! records, per label, the shape of the link of an interior point (component
//! Euler characteristics) and checks its own triangulation against it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::labels::StratumLabeling;

/// The link of a point, up to the invariants we check: the Euler
/// characteristic of each connected component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinkDescription {
    components: Vec<i64>,
}

impl LinkDescription {
    pub fn new(mut components: Vec<i64>) -> Self {
        components.sort_unstable();
        LinkDescription { components }
    }

    pub fn of(complex: &SimplicialComplex) -> Self {
        Self::new(
            complex
                .components()
                .iter()
                .map(SimplicialComplex::euler_characteristic)
                .collect(),
        )
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().sum()
    }

    /// The link of the same point after suspending the space: the suspension
    /// of this link.
    pub fn suspended(&self) -> Self {
        if self.components.is_empty() {
            LinkDescription::new(vec![1, 1])
        } else {
            LinkDescription::new(vec![2 - self.euler_characteristic()])
        }
    }
}

impl fmt::Display for LinkDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(i64::to_string).collect();
        write!(
            f,
            "chi {} over [{}]",
            self.euler_characteristic(),
            parts.join(", ")
        )
    }
}

/// `count` open cells of dimension `dim` in a coarse cell structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoarseCells {
    pub dim: usize,
    pub count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("{fixture}: label {label:?} has no simplices")]
    EmptyLabel { fixture: String, label: String },
    #[error("{fixture}: label {label:?} has no expected link")]
    UnexpectedLabel { fixture: String, label: String },
    #[error("{fixture}: link at {label:?} is {found}, expected {expected}")]
    LinkMismatch {
        fixture: String,
        label: String,
        found: LinkDescription,
        expected: LinkDescription,
    },
    #[error("{fixture}: label {label:?} has signed cell count {found}, coarse structure says {expected}")]
    CoarseMismatch {
        fixture: String,
        label: String,
        found: i64,
        expected: i64,
    },
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub complex: Arc<SimplicialComplex>,
    pub labeling: StratumLabeling,
    pub expected_links: BTreeMap<String, LinkDescription>,
    /// Coarse cells per label, when the fixture models a coarser cell complex.
    pub coarse_cells: BTreeMap<String, Vec<CoarseCells>>,
}

impl Fixture {
    /// Checks the link of the first simplex of every label against
    /// `expected_links`, and the signed simplex count of every label against
    /// the coarse cells.
    pub fn validate(&self) -> Result<(), FixtureError> {
        let classes = self.labeling.classes();
        for (label, expected) in &self.expected_links {
            let Some(members) = classes.get(label.as_str()) else {
                return Err(FixtureError::EmptyLabel {
                    fixture: self.name.clone(),
                    label: label.clone(),
                });
            };
            let representative = &self.complex.simplices()[members[0]];
            let found = LinkDescription::of(
                &self
                    .complex
                    .point_link(representative)
                    .expect("representative is in the complex"),
            );
            if found != *expected {
                return Err(FixtureError::LinkMismatch {
                    fixture: self.name.clone(),
                    label: label.clone(),
                    found,
                    expected: expected.clone(),
                });
            }
        }
        if let Some(label) = classes
            .keys()
            .find(|l| !self.expected_links.contains_key(**l))
        {
            return Err(FixtureError::UnexpectedLabel {
                fixture: self.name.clone(),
                label: label.to_string(),
            });
        }
        for (label, cells) in &self.coarse_cells {
            let found: i64 = classes
                .get(label.as_str())
                .map(|members| {
                    members
                        .iter()
                        .map(|&i| sign(self.complex.simplices()[i].dim()))
                        .sum()
                })
                .unwrap_or(0);
            let expected: i64 = cells.iter().map(|c| sign(c.dim) * c.count).sum();
            if found != expected {
                return Err(FixtureError::CoarseMismatch {
                    fixture: self.name.clone(),
                    label: label.clone(),
                    found,
                    expected,
                });
            }
        }
        Ok(())
    }

    /// The suspension, with apexes labeled `N` and `S`. A cone simplex σ ∪ {apex}
    /// has the same local topology as σ, so it keeps σ's label.
    pub fn suspension(&self, name: &str) -> Fixture {
        let susp = self
            .complex
            .suspension()
            .expect("fixture vertex names avoid N and S");
        let k = &susp.complex;
        let labeling = StratumLabeling::from_fn(k, |s| {
            if *s == Simplex::vertex(susp.north) {
                "N".to_string()
            } else if *s == Simplex::vertex(susp.south) {
                "S".to_string()
            } else {
                let base: Vec<VertexId> = s
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| *v != susp.north && *v != susp.south)
                    .collect();
                let base = Simplex::new(base).expect("nonempty base");
                self.labeling
                    .label_of(&self.complex, &base)
                    .expect("base simplex is labeled")
                    .to_string()
            }
        });
        let pole = LinkDescription::of(&self.complex);
        let mut expected_links: BTreeMap<String, LinkDescription> = self
            .expected_links
            .iter()
            .map(|(l, d)| (l.clone(), d.suspended()))
            .collect();
        expected_links.insert("N".into(), pole.clone());
        expected_links.insert("S".into(), pole);
        let mut coarse_cells: BTreeMap<String, Vec<CoarseCells>> = BTreeMap::new();
        if !self.coarse_cells.is_empty() {
            for (label, cells) in &self.coarse_cells {
                let mut out = cells.clone();
                out.extend(cells.iter().map(|c| CoarseCells {
                    dim: c.dim + 1,
                    count: 2 * c.count,
                }));
                coarse_cells.insert(label.clone(), out);
            }
            coarse_cells.insert("N".into(), vec![CoarseCells { dim: 0, count: 1 }]);
            coarse_cells.insert("S".into(), vec![CoarseCells { dim: 0, count: 1 }]);
        }
        Fixture {
            name: name.to_string(),
            complex: Arc::new(susp.complex),
            labeling,
            expected_links,
            coarse_cells,
        }
    }
}

fn sign(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Builds a complex from cells given by vertex name; ids follow first use.
fn named(cells: &[&[&str]]) -> SimplicialComplex {
    let mut ids: BTreeMap<&str, VertexId> = BTreeMap::new();
    let mut names = BTreeMap::new();
    let mut simplices = Vec::new();
    for cell in cells {
        let vs = cell
            .iter()
            .map(|n| {
                let next = VertexId(ids.len() as u32);
                let id = *ids.entry(n).or_insert(next);
                names.insert(id, n.to_string());
                id
            })
            .collect();
        simplices.push(Simplex::new(vs).expect("fixture cells are well formed"));
    }
    SimplicialComplex::from_cells(simplices, names)
}

fn finish(
    name: &str,
    complex: SimplicialComplex,
    label: impl Fn(&[&str]) -> String,
    expected: &[(&str, &[i64])],
    coarse: &[(&str, &[(usize, i64)])],
) -> Fixture {
    let labeling = StratumLabeling::from_fn(&complex, |s| {
        let names: Vec<&str> = s.vertices().iter().map(|v| complex.name(*v)).collect();
        label(&names)
    });
    let fixture = Fixture {
        name: name.to_string(),
        complex: Arc::new(complex),
        labeling,
        expected_links: expected
            .iter()
            .map(|(l, c)| (l.to_string(), LinkDescription::new(c.to_vec())))
            .collect(),
        coarse_cells: coarse
            .iter()
            .map(|(l, cells)| {
                (
                    l.to_string(),
                    cells
                        .iter()
                        .map(|&(dim, count)| CoarseCells { dim, count })
                        .collect(),
                )
            })
            .collect(),
    };
    debug_assert_eq!(fixture.validate(), Ok(()));
    fixture
}

/// A triangle boundary.
pub fn circle() -> Fixture {
    let k = named(&[&["p", "q"], &["q", "r"], &["p", "r"]]);
    finish(
        "circle",
        k,
        |_| "circle".into(),
        &[("circle", &[1, 1])],
        &[],
    )
}

/// The boundary of a tetrahedron.
pub fn sphere() -> Fixture {
    let k = named(&[
        &["p", "q", "r"],
        &["p", "q", "s"],
        &["p", "r", "s"],
        &["q", "r", "s"],
    ]);
    finish("sphere", k, |_| "sphere".into(), &[("sphere", &[0])], &[])
}

const FIGURE_EIGHT: [&[&str]; 6] = [
    &["w", "p1"],
    &["p1", "p2"],
    &["p2", "w"],
    &["w", "q1"],
    &["q1", "q2"],
    &["q2", "w"],
];

/// Two triangles sharing the vertex `w`.
pub fn figure_eight() -> Fixture {
    let k = named(&FIGURE_EIGHT);
    finish(
        "figure-eight",
        k,
        |vs| if vs == ["w"] { "wedge" } else { "arc" }.into(),
        &[("wedge", &[1, 1, 1, 1]), ("arc", &[1, 1])],
        &[("wedge", &[(0, 1)]), ("arc", &[(1, 2)])],
    )
}

/// The figure eight plus an isolated point `x`: the link of the singular
/// point of the Cartan umbrella.
pub fn figure_eight_plus_point() -> Fixture {
    let mut cells = FIGURE_EIGHT.to_vec();
    cells.push(&["x"]);
    let k = named(&cells);
    finish(
        "figure-eight-plus-point",
        k,
        |vs| {
            match vs {
                ["w"] => "wedge",
                ["x"] => "point",
                _ => "arc",
            }
            .into()
        },
        &[("wedge", &[1, 1, 1, 1]), ("arc", &[1, 1]), ("point", &[])],
        &[
            ("wedge", &[(0, 1)]),
            ("arc", &[(1, 2)]),
            ("point", &[(0, 1)]),
        ],
    )
}

/// The suspension of the figure eight: the link of the Whitney umbrella's
/// singular point is a figure eight, which appears here at both poles.
pub fn suspended_figure_eight() -> Fixture {
    figure_eight().suspension("suspended-figure-eight")
}

/// The two-dimensional space Y: two disks whose boundaries are each folded
/// onto the arc a–m–b (so four sheets meet along it), plus the graph edges
/// a–c and three parallel edges b–c.
///
/// Labels: `a`, `b`, `c` are the three special vertices; `e` is the open fold
/// arc; `d` the four open graph edges; `f` the two open disks.
pub fn y_space() -> Fixture {
    let mut cells: Vec<Vec<String>> = Vec::new();
    for disk in ["1", "2"] {
        let boundary = ["a", "m", "b", "m"];
        let ring: Vec<String> = (0..4).map(|i| format!("w{disk}{i}")).collect();
        let center = format!("o{disk}");
        for i in 0..4 {
            let next = (i + 1) % 4;
            cells.push(vec![
                boundary[i].into(),
                boundary[next].into(),
                ring[i].clone(),
            ]);
            cells.push(vec![
                boundary[next].into(),
                ring[i].clone(),
                ring[next].clone(),
            ]);
            cells.push(vec![center.clone(), ring[i].clone(), ring[next].clone()]);
        }
    }
    cells.push(vec!["a".into(), "g".into()]);
    cells.push(vec!["g".into(), "c".into()]);
    for i in 1..=3 {
        cells.push(vec!["b".into(), format!("h{i}")]);
        cells.push(vec![format!("h{i}"), "c".into()]);
    }
    let refs: Vec<Vec<&str>> = cells
        .iter()
        .map(|c| c.iter().map(String::as_str).collect())
        .collect();
    let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    let k = named(&slices);
    finish(
        "y",
        k,
        |vs| match vs {
            [v @ ("a" | "b" | "c")] => v.to_string(),
            ["m"] | ["a", "m"] | ["m", "b"] => "e".into(),
            _ if vs.iter().any(|v| *v == "g" || v.starts_with('h')) => "d".into(),
            _ => "f".into(),
        },
        &[
            ("a", &[-1, 1]),
            ("b", &[-1, 1, 1, 1]),
            ("c", &[1, 1, 1, 1]),
            ("d", &[1, 1]),
            ("e", &[-2]),
            ("f", &[0]),
        ],
        &[
            ("a", &[(0, 1)]),
            ("b", &[(0, 1)]),
            ("c", &[(0, 1)]),
            ("d", &[(1, 4)]),
            ("e", &[(1, 1)]),
            ("f", &[(2, 2)]),
        ],
    )
}

/// The suspension of Y.
pub fn x_space() -> Fixture {
    y_space().suspension("x")
}

pub const FIXTURE_NAMES: [&str; 7] = [
    "circle",
    "sphere",
    "figure-eight",
    "figure-eight-plus-point",
    "suspended-figure-eight",
    "y",
    "x",
];

pub fn by_name(name: &str) -> Option<Fixture> {
    Some(match name {
        "circle" => circle(),
        "sphere" => sphere(),
        "figure-eight" => figure_eight(),
        "figure-eight-plus-point" => figure_eight_plus_point(),
        "suspended-figure-eight" => suspended_figure_eight(),
        "y" => y_space(),
        "x" => x_space(),
        _ => return None,
    })
}

pub fn all() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| by_name(n).expect("listed fixture"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_validates() {
        for f in all() {
            assert_eq!(f.validate(), Ok(()), "{}", f.name);
        }
    }

    #[test]
    fn euler_characteristics() {
        let chi = |f: Fixture| f.complex.euler_characteristic();
        assert_eq!(chi(circle()), 0);
        assert_eq!(chi(sphere()), 2);
        assert_eq!(chi(figure_eight()), -1);
        assert_eq!(chi(figure_eight_plus_point()), 0);
        assert_eq!(chi(y_space()), 0);
        assert_eq!(chi(x_space()), 2);
        assert_eq!(chi(suspended_figure_eight()), 3);
    }

    #[test]
    fn y_vertex_links() {
        let y = y_space();
        let at = |name: &str| {
            let v = y.complex.vertex_by_name(name).unwrap();
            LinkDescription::of(&y.complex.link(&Simplex::vertex(v)).unwrap())
        };
        assert_eq!(at("a"), LinkDescription::new(vec![-1, 1]));
        assert_eq!(at("b"), LinkDescription::new(vec![-1, 1, 1, 1]));
        assert_eq!(at("c"), LinkDescription::new(vec![1, 1, 1, 1]));
        assert_eq!(at("m"), LinkDescription::new(vec![-2]));
        assert_eq!(at("g"), LinkDescription::new(vec![1, 1]));
        assert_eq!(at("o1"), LinkDescription::new(vec![0]));
        assert_eq!(at("w23"), LinkDescription::new(vec![0]));
    }

    #[test]
    fn y_star_of_an_e_simplex_meets_only_e_and_f() {
        let y = y_space();
        let e_simplices: Vec<&Simplex> = y
            .complex
            .simplices()
            .iter()
            .enumerate()
            .filter(|(i, _)| y.labeling.label_at(*i) == "e")
            .map(|(_, s)| s)
            .collect();
        assert_eq!(e_simplices.len(), 3);
        for s in e_simplices {
            for t in y.complex.star(s).unwrap() {
                let l = y.labeling.label_of(&y.complex, &t).unwrap();
                assert!(l == "e" || l == "f", "{l}");
            }
        }
    }

    #[test]
    fn x_poles_link_to_y() {
        let x = x_space();
        let n = x.complex.vertex_by_name("N").unwrap();
        let lk = x.complex.link(&Simplex::vertex(n)).unwrap();
        assert_eq!(lk, *y_space().complex);
    }

    #[test]
    fn validation_catches_wrong_links() {
        let mut f = figure_eight();
        f.expected_links
            .insert("wedge".into(), LinkDescription::new(vec![1, 1]));
        assert!(matches!(
            f.validate(),
            Err(FixtureError::LinkMismatch { .. })
        ));
        let mut f = y_space();
        f.coarse_cells
            .insert("d".into(), vec![CoarseCells { dim: 1, count: 3 }]);
        assert!(matches!(
            f.validate(),
            Err(FixtureError::CoarseMismatch { .. })
        ));
    }
}
