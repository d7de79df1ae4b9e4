//! Finite abstract simplicial complexes.
//!
//! Vertices are dense integer ids with an attached display name. Simplices are
//! strictly increasing vertex lists, and a complex stores every face of every
//! simplex in a canonical order (by dimension, then lexicographically), so
//! iteration and every report derived from it are reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A nonempty, strictly increasing list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Box<[VertexId]>);

impl Simplex {
    /// Sorts the vertices; fails on an empty list or a repeated vertex.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyCell);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedCell { vertex: w[0] });
        }
        Ok(Simplex(vertices.into_boxed_slice()))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v].into_boxed_slice())
    }

    fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices.into_boxed_slice())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut vs: Vec<VertexId> = self.0.iter().chain(other.0.iter()).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex::from_sorted(vs)
    }

    /// Adds a vertex that is not already present.
    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        let mut vs = self.0.to_vec();
        let at = vs.binary_search(&v).unwrap_or_else(|i| i);
        vs.insert(at, v);
        Simplex::from_sorted(vs)
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex::from_sorted(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    /// Faces of codimension at least one.
    pub fn proper_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let full = self.0.len();
        self.faces().filter(move |f| f.0.len() < full)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty cell")]
    EmptyCell,
    #[error("malformed cell: vertex {vertex} repeated")]
    MalformedCell { vertex: VertexId },
    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<VertexId>),
    #[error("vertex name {0:?} is already used")]
    NameCollision(String),
    #[error("not a subcomplex: {0:?} is missing from the ambient complex")]
    NotASubcomplex(Vec<VertexId>),
}

/// A finite simplicial complex, closed under faces.
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    names: BTreeMap<VertexId, String>,
    cofaces: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            simplices: self.simplices.clone(),
            index: self.index.clone(),
            names: self.names.clone(),
            cofaces: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices && self.names == other.names
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("simplices", &self.simplices.len())
            .field("dim", &self.dim())
            .finish()
    }
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::from_closed(BTreeSet::new(), BTreeMap::new())
    }
}

impl SimplicialComplex {
    /// The face closure of `top_cells`. Vertices get default names `0`, `1`, ...
    pub fn build<I, C>(top_cells: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = u32>,
    {
        let cells = top_cells
            .into_iter()
            .map(|c| Simplex::new(c.into_iter().map(VertexId).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_cells(cells, BTreeMap::new()))
    }

    /// The face closure of already-validated cells. Vertices missing from
    /// `names` are named by their numeric id.
    pub fn from_cells(
        cells: impl IntoIterator<Item = Simplex>,
        names: BTreeMap<VertexId, String>,
    ) -> Self {
        let mut closed = BTreeSet::new();
        for cell in cells {
            if closed.contains(&cell) {
                continue;
            }
            closed.extend(cell.faces());
        }
        Self::from_closed(closed, names)
    }

    fn from_closed(closed: BTreeSet<Simplex>, mut names: BTreeMap<VertexId, String>) -> Self {
        let simplices: Vec<Simplex> = closed.into_iter().collect();
        let vertices: BTreeSet<VertexId> = simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.0[0])
            .collect();
        names.retain(|v, _| vertices.contains(v));
        for v in vertices {
            names.entry(v).or_insert_with(|| v.0.to_string());
        }
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SimplicialComplex {
            simplices,
            index,
            names,
            cofaces: OnceLock::new(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Simplices in canonical order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    fn require(&self, s: &Simplex) -> Result<usize, ComplexError> {
        self.index_of(s)
            .ok_or_else(|| ComplexError::UnknownSimplex(s.vertices().to_vec()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.names.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.names.get(&v).map(String::as_str).unwrap_or("?")
    }

    pub fn names(&self) -> &BTreeMap<VertexId, String> {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().find(|(_, n)| *n == name).map(|(v, _)| *v)
    }

    /// Human-readable vertex names of a simplex.
    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.vertices()
            .iter()
            .map(|v| self.name(*v).to_string())
            .collect()
    }

    fn next_vertex_id(&self) -> VertexId {
        VertexId(self.names.keys().next_back().map_or(0, |v| v.0 + 1))
    }

    /// Counts of simplices by dimension, `f[k]` = number of k-simplices.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// Σ (−1)^dim σ over all simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// For each simplex index, the indices of its strict cofaces.
    pub fn cofaces(&self) -> &[Vec<usize>] {
        self.cofaces.get_or_init(|| {
            let mut up = vec![Vec::new(); self.simplices.len()];
            for (i, s) in self.simplices.iter().enumerate() {
                for face in s.proper_faces() {
                    up[self.index[&face]].push(i);
                }
            }
            up
        })
    }

    /// All simplices containing `sigma`, in canonical order.
    pub fn star(&self, sigma: &Simplex) -> Result<Vec<Simplex>, ComplexError> {
        let i = self.require(sigma)?;
        let mut out = vec![sigma.clone()];
        out.extend(self.cofaces()[i].iter().map(|&j| self.simplices[j].clone()));
        out.sort();
        Ok(out)
    }

    /// lk(σ) = {μ : μ ∩ σ = ∅, μ ∪ σ ∈ K}.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        let i = self.require(sigma)?;
        let cells = self.cofaces()[i]
            .iter()
            .map(|&j| {
                let tau = &self.simplices[j];
                Simplex::from_sorted(
                    tau.vertices()
                        .iter()
                        .copied()
                        .filter(|v| !sigma.contains(*v))
                        .collect(),
                )
            })
            .collect::<BTreeSet<_>>();
        Ok(SimplicialComplex::from_closed(cells, self.names.clone()))
    }

    /// The boundary of the closed star of σ, ∂σ ∗ lk(σ): a subcomplex of K
    /// homeomorphic to the link of any interior point of σ.
    pub fn point_link(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        let i = self.require(sigma)?;
        let mut cells = BTreeSet::new();
        for &j in std::iter::once(&i).chain(self.cofaces()[i].iter()) {
            let tau = &self.simplices[j];
            for face in tau.faces() {
                if !sigma.is_face_of(&face) {
                    cells.insert(face);
                }
            }
        }
        Ok(SimplicialComplex::from_closed(cells, self.names.clone()))
    }

    /// The subcomplex spanned by the given simplices (face closure), which
    /// must all belong to `self`.
    pub fn subcomplex(
        &self,
        cells: impl IntoIterator<Item = Simplex>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut closed = BTreeSet::new();
        for cell in cells {
            self.require(&cell)?;
            closed.extend(cell.faces());
        }
        Ok(SimplicialComplex::from_closed(closed, self.names.clone()))
    }

    /// Checks that every simplex of `other` is a simplex of `self`.
    pub fn check_subcomplex(&self, other: &SimplicialComplex) -> Result<(), ComplexError> {
        match other.simplices.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(ComplexError::NotASubcomplex(s.vertices().to_vec())),
            None => Ok(()),
        }
    }

    /// The cone with a fresh apex vertex named `apex`.
    pub fn cone(&self, apex: &str) -> Result<(SimplicialComplex, VertexId), ComplexError> {
        if self.vertex_by_name(apex).is_some() {
            return Err(ComplexError::NameCollision(apex.to_string()));
        }
        let a = self.next_vertex_id();
        let mut cells: BTreeSet<Simplex> = self.simplices.iter().cloned().collect();
        cells.insert(Simplex::vertex(a));
        cells.extend(self.simplices.iter().map(|s| s.with_vertex(a)));
        let mut names = self.names.clone();
        names.insert(a, apex.to_string());
        Ok((SimplicialComplex::from_closed(cells, names), a))
    }

    /// Two cones over `self` glued along it, with apexes named `N` and `S`.
    pub fn suspension(&self) -> Result<Suspension, ComplexError> {
        let (upper, north) = self.cone("N")?;
        let (both, south) = upper.cone_over_base("S", self)?;
        Ok(Suspension {
            complex: both,
            north,
            south,
        })
    }

    // Adds a cone over `base` (a subcomplex of `self`) with a fresh apex.
    fn cone_over_base(
        &self,
        apex: &str,
        base: &SimplicialComplex,
    ) -> Result<(SimplicialComplex, VertexId), ComplexError> {
        if self.vertex_by_name(apex).is_some() {
            return Err(ComplexError::NameCollision(apex.to_string()));
        }
        let a = self.next_vertex_id();
        let mut cells: BTreeSet<Simplex> = self.simplices.iter().cloned().collect();
        cells.insert(Simplex::vertex(a));
        cells.extend(base.simplices.iter().map(|s| s.with_vertex(a)));
        let mut names = self.names.clone();
        names.insert(a, apex.to_string());
        Ok((SimplicialComplex::from_closed(cells, names), a))
    }

    /// New vertices are the simplices of `self`; new simplices are chains
    /// under inclusion. The carrier of a chain is its largest element,
    /// reported as an index into `self.simplices()`.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let up = self.cofaces();
        let mut chains: BTreeSet<Simplex> = BTreeSet::new();
        // Grow every chain from its smallest element upwards.
        let mut stack: Vec<Vec<usize>> = (0..self.simplices.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            for &next in &up[top] {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push(longer);
            }
            let mut vs: Vec<VertexId> = chain.iter().map(|&i| VertexId(i as u32)).collect();
            vs.sort_unstable();
            chains.insert(Simplex::from_sorted(vs));
        }
        let names = self
            .simplices
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    VertexId(i as u32),
                    format!("<{}>", self.simplex_names(s).join(",")),
                )
            })
            .collect();
        let complex = SimplicialComplex::from_closed(chains, names);
        let carrier = complex
            .simplices
            .iter()
            .map(|chain| {
                chain
                    .vertices()
                    .iter()
                    .map(|v| v.0 as usize)
                    .max_by_key(|&i| self.simplices[i].dim())
                    .unwrap()
            })
            .collect();
        Subdivision { complex, carrier }
    }

    /// Connected components, each as a subcomplex, ordered by smallest vertex.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        let vertices: Vec<VertexId> = self.vertices().collect();
        let position: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for s in self.simplices.iter().filter(|s| s.dim() == 1) {
            let a = find(&mut parent, position[&s.0[0]]);
            let b = find(&mut parent, position[&s.0[1]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
        for s in &self.simplices {
            let root = find(&mut parent, position[&s.0[0]]);
            groups.entry(root).or_default().insert(s.clone());
        }
        groups
            .into_values()
            .map(|cells| SimplicialComplex::from_closed(cells, self.names.clone()))
            .collect()
    }

    /// A copy with the given vertex names.
    pub fn with_names(&self, names: BTreeMap<VertexId, String>) -> SimplicialComplex {
        SimplicialComplex::from_closed(self.simplices.iter().cloned().collect(), names)
    }
}

/// A suspension together with its two apexes.
#[derive(Debug, Clone)]
pub struct Suspension {
    pub complex: SimplicialComplex,
    pub north: VertexId,
    pub south: VertexId,
}

/// A barycentric subdivision and the carrier of each new simplex.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `carrier[i]` is the index (in the original complex) of the smallest
    /// original simplex whose interior contains the interior of new simplex `i`.
    pub carrier: Vec<usize>,
}

impl Subdivision {
    /// The vertex of the subdivision standing for original simplex `index`.
    pub fn barycenter(&self, index: usize) -> VertexId {
        VertexId(index as u32)
    }
}
