//! Colored cell complexes: lattice builders, validation, shrinking one color,
//! attaching shrunk pieces, and the simplicial star/link machinery.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::Qubit;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Qubits of the color code on vertices, colors on d-cells.
    Primal,
    /// Simplicial picture, colors on 0-cells.
    Dual,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    pub faces: Vec<usize>,
    pub color: Option<usize>,
    pub boundary: bool,
    pub cycle: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    dimension: usize,
    mode: Mode,
    cells: Vec<Cell>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeFile", into = "LatticeFile")]
pub struct ColoredComplex {
    dimension: usize,
    mode: Mode,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    verts: Vec<Vec<usize>>,
    colors: Vec<u32>,
}

impl TryFrom<LatticeFile> for ColoredComplex {
    type Error = Error;

    fn try_from(f: LatticeFile) -> Result<Self> {
        Self::new(f.dimension, f.mode, f.cells)
    }
}

impl From<ColoredComplex> for LatticeFile {
    fn from(c: ColoredComplex) -> Self {
        Self {
            dimension: c.dimension,
            mode: c.mode,
            cells: c.cells,
        }
    }
}

fn bit(c: usize) -> u32 {
    1 << c
}

impl ColoredComplex {
    /// Checks ids and incidence and builds the derived indices.
    pub fn new(dimension: usize, mode: Mode, cells: Vec<Cell>) -> Result<Self> {
        if dimension > 30 {
            return Err(Error::InvalidLattice(format!(
                "dimension {dimension} is too large"
            )));
        }
        let n = cells.len();
        let mut by_dim = vec![Vec::new(); dimension + 1];
        let mut cofaces = vec![Vec::new(); n];
        for (i, c) in cells.iter().enumerate() {
            if c.id != i {
                return Err(Error::InvalidLattice(format!(
                    "cell at position {i} has id {}",
                    c.id
                )));
            }
            if c.dim > dimension {
                return Err(Error::InvalidLattice(format!(
                    "cell {i} has dimension {} > {dimension}",
                    c.dim
                )));
            }
            if c.color.is_some_and(|col| col > dimension) {
                return Err(Error::InvalidLattice(format!(
                    "cell {i} has color out of range"
                )));
            }
            for &f in &c.faces {
                if f >= n || cells[f].dim + 1 != c.dim {
                    return Err(Error::InvalidLattice(format!(
                        "cell {i} lists invalid face {f}"
                    )));
                }
                cofaces[f].push(i);
            }
            by_dim[c.dim].push(i);
        }
        let mut verts = vec![Vec::new(); n];
        for k in 0..=dimension {
            for &i in &by_dim[k] {
                verts[i] = if k == 0 {
                    vec![i]
                } else {
                    let s: BTreeSet<usize> = cells[i]
                        .faces
                        .iter()
                        .flat_map(|&f| verts[f].iter().copied())
                        .collect();
                    s.into_iter().collect()
                };
            }
        }
        let mut colors = vec![0u32; n];
        match mode {
            Mode::Primal => {
                for k in (0..=dimension).rev() {
                    for &i in &by_dim[k] {
                        if let Some(c) = cells[i].color {
                            if k == dimension || (k + 1 == dimension && cells[i].boundary) {
                                colors[i] |= bit(c);
                            }
                        }
                        let own = colors[i];
                        for &f in &cells[i].faces {
                            colors[f] |= own;
                        }
                    }
                }
            }
            Mode::Dual => {
                for i in 0..n {
                    colors[i] = verts[i]
                        .iter()
                        .filter_map(|&v| cells[v].color)
                        .fold(0, |a, c| a | bit(c));
                }
            }
        }
        Ok(Self {
            dimension,
            mode,
            cells,
            by_dim,
            cofaces,
            verts,
            colors,
        })
    }

    #[must_use]
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    #[must_use]
    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[must_use]
    pub fn num_colors(&self) -> usize {
        self.dimension + 1
    }

    #[must_use]
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    #[must_use]
    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Ids of all `k`-cells in increasing order.
    #[must_use]
    pub fn ids(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    #[must_use]
    pub fn count(&self, k: usize) -> usize {
        self.ids(k).len()
    }

    /// Cell counts per dimension.
    #[must_use]
    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    #[must_use]
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// 0-cells in the closure of `id`, sorted.
    #[must_use]
    pub fn vertices(&self, id: usize) -> &[usize] {
        &self.verts[id]
    }

    /// Bit set of the colors attached to `id`.
    #[must_use]
    pub fn color_mask(&self, id: usize) -> u32 {
        self.colors[id]
    }

    #[must_use]
    pub fn has_color(&self, id: usize, color: usize) -> bool {
        self.colors[id] & bit(color) != 0
    }

    /// `k`-cells containing `id` (or `id` itself when `k` equals its dimension).
    #[must_use]
    pub fn containing(&self, id: usize, k: usize) -> Vec<usize> {
        let dim = self.cells[id].dim;
        if k < dim {
            return Vec::new();
        }
        let mut level: BTreeSet<usize> = BTreeSet::from([id]);
        for _ in dim..k {
            level = level
                .iter()
                .flat_map(|&c| self.cofaces[c].iter().copied())
                .collect();
        }
        level.into_iter().collect()
    }

    /// `k`-cells in the closure of `id`.
    #[must_use]
    pub fn subcells(&self, id: usize, k: usize) -> Vec<usize> {
        let dim = self.cells[id].dim;
        if k > dim {
            return Vec::new();
        }
        let mut level: BTreeSet<usize> = BTreeSet::from([id]);
        for _ in k..dim {
            level = level
                .iter()
                .flat_map(|&c| self.cells[c].faces.iter().copied())
                .collect();
        }
        level.into_iter().collect()
    }

    /// d-cells of the given color.
    #[must_use]
    pub fn colored_cells(&self, color: usize) -> Vec<usize> {
        self.ids(self.dimension)
            .iter()
            .copied()
            .filter(|&c| self.cells[c].color == Some(color))
            .collect()
    }

    #[must_use]
    pub fn has_boundary(&self) -> bool {
        self.cells.iter().any(|c| c.boundary)
    }

    /// Edges incident to a vertex, paired with the opposite endpoint when there is one.
    #[must_use]
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.cofaces[v]
            .iter()
            .flat_map(|&e| self.cells[e].faces.iter().copied().filter(move |&w| w != v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected components of colored boundary (d-1)-cells, grouped by color
    /// and by shared vertices.
    #[must_use]
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        if self.dimension == 0 {
            return Vec::new();
        }
        let cells: Vec<usize> = self
            .ids(self.dimension - 1)
            .iter()
            .copied()
            .filter(|&c| self.cells[c].boundary && self.cells[c].color.is_some())
            .collect();
        let mut parent: Vec<usize> = (0..cells.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (k, &c) in cells.iter().enumerate() {
            let color = self.cells[c].color.unwrap_or(0);
            for &v in &self.verts[c] {
                if let Some(&j) = seen.get(&(color, v)) {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                } else {
                    seen.insert((color, v), k);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..cells.len() {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(cells[k]);
        }
        groups
            .into_values()
            .map(|cs| {
                let vertices: BTreeSet<usize> = cs
                    .iter()
                    .flat_map(|&c| self.verts[c].iter().copied())
                    .collect();
                BoundaryComponent {
                    color: self.cells[cs[0]].color.unwrap_or(0),
                    cells: cs,
                    vertices,
                }
            })
            .collect()
    }

    /// Cyclic vertex order of a 2-cell whose edges form a single cycle.
    #[must_use]
    pub fn compute_cycle(&self, face: usize) -> Option<Vec<usize>> {
        let c = &self.cells[face];
        if c.dim != 2 {
            return None;
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in &c.faces {
            let ends = &self.cells[e].faces;
            if ends.len() != 2 {
                return None;
            }
            adj.entry(ends[0]).or_default().push(ends[1]);
            adj.entry(ends[1]).or_default().push(ends[0]);
        }
        if adj.values().any(|a| a.len() != 2) {
            return None;
        }
        let (&start, first) = adj.iter().next()?;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *first.iter().min()?;
        while cur != start {
            order.push(cur);
            let a = &adj[&cur];
            let next = if a[0] == prev { a[1] } else { a[0] };
            prev = cur;
            cur = next;
            if order.len() > adj.len() {
                return None;
            }
        }
        (order.len() == adj.len()).then_some(order)
    }

    fn fill_cycles(&mut self) {
        let faces: Vec<usize> = self.ids(2).to_vec();
        for f in faces {
            if self.cells[f].cycle.is_none() {
                self.cells[f].cycle = self.compute_cycle(f);
            }
        }
    }

    /// Reports invariant violations; empty when the complex is a valid lattice.
    #[must_use]
    pub fn validate(&self) -> Vec<Violation> {
        let d = self.dimension;
        let mut out = Vec::new();
        let mut reaches_top = vec![false; self.cells.len()];
        for k in (0..=d).rev() {
            for &i in &self.by_dim[k] {
                reaches_top[i] = k == d || self.cofaces[i].iter().any(|&c| reaches_top[c]);
                if !reaches_top[i] {
                    out.push(Violation::NonHomogeneous { cell: i });
                }
            }
        }
        match self.mode {
            Mode::Primal => {
                for &c in self.ids(d) {
                    if self.cells[c].color.is_none() {
                        out.push(Violation::Uncolored { cell: c });
                    }
                }
                if d >= 1 {
                    for &v in self.ids(0) {
                        let found = self.cofaces[v].len();
                        let bulk = !self.cells[v].boundary;
                        if (bulk && found != d + 1) || found > d + 1 {
                            out.push(Violation::Valence {
                                vertex: v,
                                found,
                                expected: d + 1,
                            });
                        }
                        let mut by_color: BTreeMap<usize, usize> = BTreeMap::new();
                        for c in self.containing(v, d) {
                            if let Some(col) = self.cells[c].color {
                                if let Some(&other) = by_color.get(&col) {
                                    out.push(Violation::Coloring { a: other, b: c });
                                } else {
                                    by_color.insert(col, c);
                                }
                            }
                        }
                    }
                    for &f in self.ids(d - 1) {
                        let found = self.cofaces[f].len();
                        let expected = if self.cells[f].boundary { 1 } else { 2 };
                        if found != expected {
                            out.push(Violation::Incidence {
                                cell: f,
                                found,
                                expected,
                            });
                        }
                    }
                }
            }
            Mode::Dual => {
                for &v in self.ids(0) {
                    if self.cells[v].color.is_none() {
                        out.push(Violation::Uncolored { cell: v });
                    }
                }
                for (i, c) in self.cells.iter().enumerate() {
                    if c.dim >= 1 && self.verts[i].len() == c.dim + 1 && c.faces.len() != c.dim + 1
                    {
                        out.push(Violation::Incidence {
                            cell: i,
                            found: c.faces.len(),
                            expected: c.dim + 1,
                        });
                    }
                }
                for &e in self.ids(1) {
                    let vs = &self.verts[e];
                    if vs.len() == 2 && self.cells[vs[0]].color == self.cells[vs[1]].color {
                        out.push(Violation::Coloring { a: vs[0], b: vs[1] });
                    }
                }
            }
        }
        out
    }

    /// Closed primal complex to its simplicial dual.
    pub fn to_dual(&self) -> Result<Self> {
        if self.mode != Mode::Primal {
            return Err(Error::InvalidLattice(
                "complex is already simplicial".into(),
            ));
        }
        if self.has_boundary() {
            return Err(Error::InvalidLattice(
                "dual conversion needs a closed complex".into(),
            ));
        }
        let d = self.dimension;
        let top = self.ids(d);
        let index: HashMap<usize, usize> = top.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let colors = top
            .iter()
            .map(|&c| self.cells[c].color.unwrap_or(0))
            .collect();
        let tops = self
            .ids(0)
            .iter()
            .map(|&v| self.containing(v, d).iter().map(|c| index[c]).collect())
            .collect();
        Simplicial::new(d, colors, vec![false; top.len()], tops)?.to_dual()
    }

    /// Simplicial complex to its primal cell complex.
    pub fn to_primal(&self) -> Result<Self> {
        if self.mode != Mode::Dual {
            return Err(Error::InvalidLattice("complex is already primal".into()));
        }
        let d = self.dimension;
        let index: HashMap<usize, usize> = self
            .ids(0)
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let colors = self
            .ids(0)
            .iter()
            .map(|&v| self.cells[v].color.unwrap_or(0))
            .collect();
        let tops = self
            .ids(d)
            .iter()
            .map(|&t| self.verts[t].iter().map(|v| index[v]).collect())
            .collect();
        Simplicial::new(d, colors, vec![false; self.count(0)], tops)?.to_primal()
    }
}

/// One connected boundary component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryComponent {
    pub color: usize,
    pub cells: Vec<usize>,
    pub vertices: BTreeSet<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    NonHomogeneous {
        cell: usize,
    },
    Uncolored {
        cell: usize,
    },
    Valence {
        vertex: usize,
        found: usize,
        expected: usize,
    },
    Coloring {
        a: usize,
        b: usize,
    },
    Incidence {
        cell: usize,
        found: usize,
        expected: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonHomogeneous { cell } => write!(f, "cell {cell} is not a face of any top cell"),
            Self::Uncolored { cell } => write!(f, "cell {cell} has no color"),
            Self::Valence {
                vertex,
                found,
                expected,
            } => {
                write!(f, "vertex {vertex} has {found} edges, expected {expected}")
            }
            Self::Coloring { a, b } => {
                write!(f, "cells {a} and {b} are adjacent and share a color")
            }
            Self::Incidence {
                cell,
                found,
                expected,
            } => {
                write!(
                    f,
                    "cell {cell} has {found} incident cells, expected {expected}"
                )
            }
        }
    }
}

/// Vertex-colored pure simplicial complex given by its top simplices.
/// Virtual vertices stand in for boundaries and are dropped in the primal picture.
#[derive(Clone, Debug)]
pub struct Simplicial {
    d: usize,
    colors: Vec<usize>,
    is_virtual: Vec<bool>,
    tops: Vec<Vec<usize>>,
}

impl Simplicial {
    pub fn new(
        d: usize,
        colors: Vec<usize>,
        is_virtual: Vec<bool>,
        tops: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if colors.len() != is_virtual.len() {
            return Err(Error::SizeMismatch(colors.len(), is_virtual.len()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(tops.len());
        for t in tops {
            let mut t = t;
            t.sort_unstable();
            if t.len() != d + 1
                || t.windows(2).any(|w| w[0] == w[1])
                || t.iter().any(|&v| v >= colors.len())
            {
                return Err(Error::InvalidLattice(format!("bad top simplex {t:?}")));
            }
            let cs: BTreeSet<usize> = t.iter().map(|&v| colors[v]).collect();
            if cs.len() != d + 1 {
                return Err(Error::InvalidParams(format!(
                    "simplex {t:?} repeats a color"
                )));
            }
            if !seen.insert(t.clone()) {
                return Err(Error::InvalidParams(format!("simplex {t:?} appears twice")));
            }
            sorted.push(t);
        }
        Ok(Self {
            d,
            colors,
            is_virtual,
            tops: sorted,
        })
    }

    fn simplices(&self) -> BTreeSet<Vec<usize>> {
        let mut all = BTreeSet::new();
        for t in &self.tops {
            for mask in 1u32..(1 << t.len()) {
                all.insert(
                    t.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        all
    }

    /// Primal cell complex: k-cells are the (d-k)-simplices with a real vertex.
    pub fn to_primal(&self) -> Result<ColoredComplex> {
        let d = self.d;
        let mut keys: Vec<Vec<usize>> = self
            .simplices()
            .into_iter()
            .filter(|s| s.iter().any(|&v| !self.is_virtual[v]))
            .collect();
        keys.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let id: HashMap<&Vec<usize>, usize> =
            keys.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut faces: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); keys.len()];
        for t in &self.tops {
            for mask in 1u32..(1 << t.len()) {
                let s: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let Some(&si) = id.get(&s) else { continue };
                for &w in t.iter().filter(|w| !s.contains(w)) {
                    let mut up = s.clone();
                    up.push(w);
                    up.sort_unstable();
                    faces[si].insert(id[&up]);
                }
            }
        }
        let cells = keys
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let dim = d + 1 - s.len();
                let boundary = s.iter().any(|&v| self.is_virtual[v]);
                let color = if dim == d {
                    Some(self.colors[s[0]])
                } else if dim + 1 == d && boundary {
                    s.iter()
                        .find(|&&v| self.is_virtual[v])
                        .map(|&v| self.colors[v])
                } else {
                    None
                };
                Cell {
                    id: i,
                    dim,
                    faces: faces[i].iter().copied().collect(),
                    color,
                    boundary,
                    cycle: None,
                }
            })
            .collect();
        let mut c = ColoredComplex::new(d, Mode::Primal, cells)?;
        c.fill_cycles();
        Ok(c)
    }

    /// The simplicial complex itself as a dual-mode complex.
    pub fn to_dual(&self) -> Result<ColoredComplex> {
        if self.is_virtual.iter().any(|&v| v) {
            return Err(Error::InvalidLattice(
                "dual mode supports closed complexes only".into(),
            ));
        }
        let mut keys: Vec<Vec<usize>> = self.simplices().into_iter().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let id: HashMap<&Vec<usize>, usize> =
            keys.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let cells = keys
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let faces = if s.len() == 1 {
                    Vec::new()
                } else {
                    let mut f: Vec<usize> = (0..s.len())
                        .map(|skip| {
                            let sub: Vec<usize> = s
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != skip)
                                .map(|(_, &v)| v)
                                .collect();
                            id[&sub]
                        })
                        .collect();
                    f.sort_unstable();
                    f
                };
                let color = (s.len() == 1).then(|| self.colors[s[0]]);
                Cell {
                    id: i,
                    dim: s.len() - 1,
                    faces,
                    color,
                    boundary: false,
                    cycle: None,
                }
            })
            .collect();
        ColoredComplex::new(self.d, Mode::Dual, cells)
    }
}

/// Builds a named lattice family in the primal picture.
pub fn build_lattice(family: &str, params: &[usize]) -> Result<ColoredComplex> {
    family_simplicial(family, params)?.to_primal()
}

/// Simplicial dual of a closed family.
pub fn build_dual(family: &str, params: &[usize]) -> Result<ColoredComplex> {
    family_simplicial(family, params)?.to_dual()
}

/// Names accepted by [`build_lattice`].
pub const FAMILIES: &[&str] = &[
    "hex_torus",
    "triangular_666",
    "square_like_2d",
    "cube_3torus",
    "tetrahedron_like_3d",
    "hypercube_like",
];

fn family_simplicial(family: &str, params: &[usize]) -> Result<Simplicial> {
    let bad = |msg: &str| Error::InvalidParams(format!("{family}: {msg}"));
    match family {
        "hex_torus" => match params {
            [a, b] => hex_torus(*a, *b),
            _ => Err(bad("expects two periods")),
        },
        "triangular_666" => match params {
            [d] => triangular_666(*d),
            _ => Err(bad("expects the distance")),
        },
        "square_like_2d" => match params {
            [] => square_like_2d(1),
            [m] => square_like_2d(*m),
            _ => Err(bad("expects one size parameter")),
        },
        "cube_3torus" => match params {
            [] => cube_3torus(4),
            [p] => cube_3torus(*p),
            _ => Err(bad("expects at most one period")),
        },
        "tetrahedron_like_3d" => match params {
            [] | [1] => tetrahedron_like_3d(),
            _ => Err(bad("only the minimal size is available")),
        },
        "hypercube_like" => match params {
            [d] | [d, 1] => hypercube_like(*d),
            [2, m] => square_like_2d(*m),
            _ => Err(bad(
                "expects the dimension; larger sizes exist for d = 2 only",
            )),
        },
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn hex_torus(a: usize, b: usize) -> Result<Simplicial> {
    if a < 3 || b < 3 || !a.is_multiple_of(3) || !b.is_multiple_of(3) {
        return Err(Error::InvalidParams(format!(
            "hex_torus({a},{b}): both periods must be positive multiples of 3"
        )));
    }
    let id = |i: usize, j: usize| (i % a) * b + (j % b);
    let colors = (0..a * b).map(|v| (v / b + 3 * b - v % b) % 3).collect();
    let mut tops = Vec::with_capacity(2 * a * b);
    for i in 0..a {
        for j in 0..b {
            tops.push(vec![id(i, j), id(i + 1, j), id(i, j + 1)]);
            tops.push(vec![id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    Simplicial::new(2, colors, vec![false; a * b], tops)
}

fn triangular_666(dist: usize) -> Result<Simplicial> {
    if dist < 3 || dist.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "triangular_666({dist}): distance must be odd and at least 3"
        )));
    }
    let side = 3 * (dist - 1) / 2;
    let is_face = |i: usize, j: usize| (i + 2 * j) % 3 == 1;
    let mut face_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut colors = Vec::new();
    for i in 0..=side {
        for j in 0..=side - i {
            if is_face(i, j) {
                face_id.insert((i, j), colors.len());
                colors.push(i % 3);
            }
        }
    }
    let virt: Vec<usize> = (0..3).map(|c| colors.len() + c).collect();
    let mut is_virtual = vec![false; colors.len()];
    colors.extend(0..3);
    is_virtual.extend([true; 3]);
    let offsets: [(isize, isize); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
    let mut tops = Vec::new();
    for i in 0..=side {
        for j in 0..=side - i {
            if is_face(i, j) {
                continue;
            }
            let mut by_color: [Option<usize>; 3] = [None; 3];
            for (di, dj) in offsets {
                let (Some(ni), Some(nj)) = (i.checked_add_signed(di), j.checked_add_signed(dj))
                else {
                    continue;
                };
                if let Some(&f) = face_id.get(&(ni, nj)) {
                    if by_color[colors[f]].replace(f).is_some() {
                        return Err(Error::InvalidLattice(format!(
                            "data point ({i},{j}) touches two faces of one color"
                        )));
                    }
                }
            }
            tops.push((0..3).map(|c| by_color[c].unwrap_or(virt[c])).collect());
        }
    }
    Simplicial::new(2, colors, is_virtual, tops)
}

fn square_like_2d(m: usize) -> Result<Simplicial> {
    if m == 0 {
        return Err(Error::InvalidParams(
            "square_like_2d: size must be at least 1".into(),
        ));
    }
    let (xmax, ymax) = (2 * m - 1, 2 * m - 2);
    let mut id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut colors = Vec::new();
    for x in 1..=xmax {
        for y in 0..=ymax {
            id.insert((x, y), colors.len());
            colors.push(if (x + y) % 2 == 1 {
                0
            } else if x % 2 == 0 {
                1
            } else {
                2
            });
        }
    }
    let base = colors.len();
    let (vl, vr, vt, vb) = (base, base + 1, base + 2, base + 3);
    colors.extend([1, 1, 2, 2]);
    let mut is_virtual = vec![false; base];
    is_virtual.extend([true; 4]);
    let mut tops = Vec::new();
    for (&(x, y), &s) in &id {
        if colors[s] != 0 {
            continue;
        }
        let left = if x == 1 { vl } else { id[&(x - 1, y)] };
        let right = if x == xmax { vr } else { id[&(x + 1, y)] };
        let top = if y == ymax { vt } else { id[&(x, y + 1)] };
        let bottom = if y == 0 { vb } else { id[&(x, y - 1)] };
        tops.extend([
            vec![s, left, top],
            vec![s, top, right],
            vec![s, right, bottom],
            vec![s, bottom, left],
        ]);
    }
    Simplicial::new(2, colors, is_virtual, tops)
}

fn hypercube_like(d: usize) -> Result<Simplicial> {
    if !(2..=10).contains(&d) {
        return Err(Error::InvalidParams(format!(
            "hypercube_like({d}): dimension must be in 2..=10"
        )));
    }
    let mut colors = vec![0];
    for j in 1..=d {
        colors.extend([j, j]);
    }
    let mut is_virtual = vec![true; colors.len()];
    is_virtual[0] = false;
    let tops = (0..1usize << d)
        .map(|mask| {
            let mut t = vec![0];
            t.extend((1..=d).map(|j| 2 * j - 1 + ((mask >> (j - 1)) & 1)));
            t
        })
        .collect();
    Simplicial::new(d, colors, is_virtual, tops)
}

fn tetrahedron_like_3d() -> Result<Simplicial> {
    let colors = vec![0, 1, 2, 3, 0, 1, 2, 3];
    let is_virtual = vec![false, false, false, false, true, true, true, true];
    let tops = (0..15usize)
        .map(|mask| {
            (0..4)
                .map(|j| if mask >> j & 1 == 1 { j + 4 } else { j })
                .collect()
        })
        .collect();
    Simplicial::new(3, colors, is_virtual, tops)
}

fn cube_3torus(p: usize) -> Result<Simplicial> {
    if p < 4 || !p.is_multiple_of(4) {
        return Err(Error::InvalidParams(format!(
            "cube_3torus({p}): period must be a positive multiple of 4"
        )));
    }
    let id = |x: usize, y: usize, z: usize| ((x % p) * p + (y % p)) * p + (z % p);
    let colors = (0..p * p * p)
        .map(|v| (v / (p * p) + (v / p) % p + v % p) % 4)
        .collect();
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut tops = Vec::with_capacity(6 * p * p * p);
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                for perm in perms {
                    let mut cur = [x, y, z];
                    let mut t = vec![id(x, y, z)];
                    for axis in perm {
                        cur[axis] += 1;
                        t.push(id(cur[0], cur[1], cur[2]));
                    }
                    tops.push(t);
                }
            }
        }
    }
    Simplicial::new(3, colors, vec![false; p * p * p], tops)
}

/// Maps the edge qubits of a derived lattice back to physical qubit labels.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct QubitMap {
    /// `(1-cell id in the derived lattice, physical qubit)`.
    pub pairs: Vec<(usize, Qubit)>,
}

impl QubitMap {
    #[must_use]
    pub fn label(&self, cell: usize) -> Option<Qubit> {
        self.pairs.iter().find(|(c, _)| *c == cell).map(|&(_, q)| q)
    }
}

/// Per-vertex owner of each color: the unique d-cell of that color containing it.
fn owners(l: &ColoredComplex, color: usize) -> Result<Vec<Option<usize>>> {
    let mut owner = vec![None; l.cells().len()];
    for c in l.colored_cells(color) {
        for &v in l.vertices(c) {
            if owner[v].replace(c).is_some() {
                return Err(Error::InvalidLattice(format!(
                    "vertex {v} lies in two cells of color {color}"
                )));
            }
        }
    }
    Ok(owner)
}

/// Vertices of the primal complex lying in no d-cell of color 0.
#[must_use]
pub fn seam_vertices(l: &ColoredComplex) -> Vec<usize> {
    let mut covered = vec![false; l.cells().len()];
    for c in l.colored_cells(0) {
        for &v in l.vertices(c) {
            covered[v] = true;
        }
    }
    l.ids(0).iter().copied().filter(|&v| !covered[v]).collect()
}

/// Edges of the primal complex lying in some d-cell of color 0.
#[must_use]
pub fn c0_edges(l: &ColoredComplex) -> Vec<usize> {
    let d = l.dimension();
    l.ids(1)
        .iter()
        .copied()
        .filter(|&e| {
            l.containing(e, d)
                .iter()
                .any(|&c| l.cell(c).color == Some(0))
        })
        .collect()
}

/// Shrinks the d-cells of `color` to points. Edges whose color set misses
/// `color` become the qubits; vertices outside every color-0 cell turn into
/// seam edges labelled by that vertex.
pub fn shrunk_lattice(l: &ColoredComplex, color: usize) -> Result<(ColoredComplex, QubitMap)> {
    if l.mode() != Mode::Primal {
        return Err(Error::InvalidLattice(
            "shrinking needs a primal complex".into(),
        ));
    }
    let d = l.dimension();
    if color == 0 || color > d {
        return Err(Error::InvalidParams(format!(
            "color {color} is out of range 1..={d}"
        )));
    }
    if l.ids(d).iter().any(|&c| l.cell(c).color.is_none()) {
        return Err(Error::InvalidLattice("complex is not colored".into()));
    }
    let owner = owners(l, color)?;
    let mut cells: Vec<Cell> = Vec::new();
    let mut new_id: HashMap<usize, usize> = HashMap::new();
    for c in l.colored_cells(color) {
        new_id.insert(c, cells.len());
        cells.push(Cell {
            id: cells.len(),
            dim: 0,
            faces: vec![],
            color: Some(color),
            boundary: false,
            cycle: None,
        });
    }
    let mut map = QubitMap::default();
    let mut edge_id: HashMap<usize, usize> = HashMap::new();
    let endpoints = |vs: &[usize]| -> Vec<usize> {
        let s: BTreeSet<usize> = vs
            .iter()
            .filter_map(|&v| owner[v])
            .map(|c| new_id[&c])
            .collect();
        s.into_iter().collect()
    };
    for e in c0_edges(l) {
        if l.has_color(e, color) {
            continue;
        }
        let faces = endpoints(l.vertices(e));
        let id = cells.len();
        edge_id.insert(e, id);
        map.pairs.push((id, Qubit::Edge(e)));
        cells.push(Cell {
            id,
            dim: 1,
            boundary: faces.len() < 2,
            faces,
            color: None,
            cycle: None,
        });
    }
    let mut seam_id: HashMap<usize, usize> = HashMap::new();
    for v in seam_vertices(l) {
        let faces = endpoints(&[v]);
        let id = cells.len();
        seam_id.insert(v, id);
        map.pairs.push((id, Qubit::Vertex(v)));
        cells.push(Cell {
            id,
            dim: 1,
            faces,
            color: None,
            boundary: true,
            cycle: None,
        });
    }
    let mut upper: HashMap<usize, usize> = HashMap::new();
    for m in 2..=d {
        for &x in l.ids(m) {
            if l.has_color(x, color) {
                continue;
            }
            let mut faces: Vec<usize> = if m == 2 {
                let mut f: Vec<usize> = l
                    .cell(x)
                    .faces
                    .iter()
                    .filter_map(|e| edge_id.get(e).copied())
                    .collect();
                f.extend(l.vertices(x).iter().filter_map(|v| seam_id.get(v).copied()));
                f
            } else {
                l.cell(x)
                    .faces
                    .iter()
                    .filter_map(|y| upper.get(y).copied())
                    .collect()
            };
            faces.sort_unstable();
            let id = cells.len();
            upper.insert(x, id);
            let src = l.cell(x);
            cells.push(Cell {
                id,
                dim: m,
                faces,
                color: src.color,
                boundary: src.boundary,
                cycle: None,
            });
        }
    }
    Ok((ColoredComplex::new(d, Mode::Primal, cells)?, map))
}

/// Disjoint union of shrunk lattices in which seam edges carrying the same
/// vertex label are merged into one edge.
pub fn attach(parts: &[(ColoredComplex, QubitMap)]) -> Result<(ColoredComplex, QubitMap)> {
    let Some((first, _)) = parts.first() else {
        return Err(Error::InvalidParams(
            "attach needs at least one part".into(),
        ));
    };
    let d = first.dimension();
    if parts
        .iter()
        .any(|(p, _)| p.dimension() != d || p.mode() != Mode::Primal)
    {
        return Err(Error::InvalidLattice(
            "parts differ in dimension or mode".into(),
        ));
    }
    let seams: Vec<BTreeSet<usize>> = parts
        .iter()
        .map(|(_, m)| {
            m.pairs
                .iter()
                .filter_map(|(_, q)| {
                    if let Qubit::Vertex(v) = q {
                        Some(*v)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let with_seam: Vec<&BTreeSet<usize>> = seams.iter().filter(|s| !s.is_empty()).collect();
    if with_seam.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InvalidLattice("seam mismatch between parts".into()));
    }
    let mut ids: Vec<HashMap<usize, usize>> = vec![HashMap::new(); parts.len()];
    let mut cells: Vec<Cell> = Vec::new();
    let mut map = QubitMap::default();
    let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..=d {
        for (pi, (p, pm)) in parts.iter().enumerate() {
            for &c in p.ids(k) {
                let label = if k == 1 { pm.label(c) } else { None };
                if let Some(Qubit::Vertex(_)) = label {
                    continue;
                }
                let src = p.cell(c);
                let id = cells.len();
                ids[pi].insert(c, id);
                let faces = src.faces.iter().map(|f| ids[pi][f]).collect();
                if let Some(q) = label {
                    map.pairs.push((id, q));
                }
                cells.push(Cell {
                    id,
                    dim: k,
                    faces,
                    color: src.color,
                    boundary: src.boundary,
                    cycle: None,
                });
            }
        }
        if k == 1 {
            let mut seam_faces: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for (pi, (p, pm)) in parts.iter().enumerate() {
                for &(c, q) in &pm.pairs {
                    if let Qubit::Vertex(v) = q {
                        let entry = seam_faces.entry(v).or_default();
                        entry.extend(p.cell(c).faces.iter().map(|f| ids[pi][f]));
                    }
                }
            }
            for (v, faces) in seam_faces {
                let id = cells.len();
                merged.insert(v, id);
                map.pairs.push((id, Qubit::Vertex(v)));
                let boundary = faces.len() < 2;
                cells.push(Cell {
                    id,
                    dim: 1,
                    faces: faces.into_iter().collect(),
                    color: None,
                    boundary,
                    cycle: None,
                });
            }
            for (pi, (_, pm)) in parts.iter().enumerate() {
                for &(c, q) in &pm.pairs {
                    if let Qubit::Vertex(v) = q {
                        ids[pi].insert(c, merged[&v]);
                    }
                }
            }
        }
    }
    for c in &mut cells {
        c.faces.sort_unstable();
        c.faces.dedup();
    }
    Ok((ColoredComplex::new(d, Mode::Primal, cells)?, map))
}

fn require_dual(l: &ColoredComplex, cell: usize) -> Result<()> {
    if l.mode() != Mode::Dual {
        return Err(Error::InvalidLattice(
            "star and link need a simplicial complex".into(),
        ));
    }
    if cell >= l.cells().len() {
        return Err(Error::InvalidParams(format!("cell {cell} not found")));
    }
    Ok(())
}

/// All `n`-simplices containing `cell`.
pub fn star(l: &ColoredComplex, cell: usize, n: usize) -> Result<Vec<usize>> {
    require_dual(l, cell)?;
    Ok(l.containing(cell, n))
}

/// `n`-faces of the top simplices containing `cell` that are disjoint from it.
pub fn link(l: &ColoredComplex, cell: usize, n: usize) -> Result<Vec<usize>> {
    require_dual(l, cell)?;
    let own: BTreeSet<usize> = l.vertices(cell).iter().copied().collect();
    let mut out = BTreeSet::new();
    for t in l.containing(cell, l.dimension()) {
        if t == cell {
            continue;
        }
        for s in l.subcells(t, n) {
            if l.vertices(s).iter().all(|v| !own.contains(v)) {
                out.insert(s);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Cell (k+2)-complex built from the simplices avoiding the colors in `n`,
/// with one extra cell glued onto the (k+1)-link of every simplex colored
/// exactly `n`.
pub fn derive_l_n(l: &ColoredComplex, k: usize, n: &[usize]) -> Result<ColoredComplex> {
    if l.mode() != Mode::Dual {
        return Err(Error::InvalidLattice(
            "the construction runs on simplicial complexes".into(),
        ));
    }
    if l.has_boundary() {
        return Err(Error::InvalidLattice(
            "complexes with boundary are not supported here".into(),
        ));
    }
    let d = l.dimension();
    if d < 2 || k > d - 2 {
        return Err(Error::InvalidParams(format!(
            "k = {k} out of range 0..={}",
            d.saturating_sub(2)
        )));
    }
    let nset: BTreeSet<usize> = n.iter().copied().collect();
    if nset.len() != d - 1 - k || n.len() != nset.len() || nset.iter().any(|&c| c == 0 || c > d) {
        return Err(Error::InvalidParams(format!(
            "color set must hold {} distinct colors from 1..={d}",
            d - 1 - k
        )));
    }
    let nmask = nset.iter().fold(0u32, |a, &c| a | bit(c));
    let mut cells: Vec<Cell> = Vec::new();
    let mut id: HashMap<usize, usize> = HashMap::new();
    for m in 0..=k + 1 {
        for &s in l.ids(m) {
            if l.color_mask(s) & nmask != 0 {
                continue;
            }
            let nid = cells.len();
            id.insert(s, nid);
            let faces = l.cell(s).faces.iter().map(|f| id[f]).collect();
            cells.push(Cell {
                id: nid,
                dim: m,
                faces,
                color: l.cell(s).color,
                boundary: false,
                cycle: None,
            });
        }
    }
    for &t in l.ids(d - 2 - k) {
        if l.color_mask(t) != nmask {
            continue;
        }
        let faces: Vec<usize> = link(l, t, k + 1)?.iter().map(|s| id[s]).collect();
        let nid = cells.len();
        cells.push(Cell {
            id: nid,
            dim: k + 2,
            faces,
            color: None,
            boundary: false,
            cycle: None,
        });
    }
    ColoredComplex::new(k + 2, Mode::Dual, cells)
}

/// True when every (m-1)-cell below the m-cell `cell` lies in exactly two of its faces.
#[must_use]
pub fn boundary_is_closed(l: &ColoredComplex, cell: usize) -> bool {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &f in &l.cell(cell).faces {
        for &g in &l.cell(f).faces {
            *count.entry(g).or_default() += 1;
        }
    }
    count.values().all(|&c| c == 2)
}

/// Two-coloring of the vertex graph by breadth-first search, lowest id first.
pub fn bipartition(l: &ColoredComplex) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut side: BTreeMap<usize, bool> = BTreeMap::new();
    for &s in l.ids(0) {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, true);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[&v];
            for w in l.neighbors(v) {
                match side.get(&w) {
                    Some(&sw) if sw == sv => {
                        return Err(Error::InvalidLattice(format!(
                            "vertex graph is not bipartite at {v}-{w}"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        side.insert(w, !sv);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let t = side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect();
    let tc = side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect();
    Ok((t, tc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_torus_counts() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        assert_eq!(l.counts(), vec![18, 27, 9]);
        for c in 0..3 {
            assert_eq!(l.colored_cells(c).len(), 3);
        }
        assert!(l.validate().is_empty());
        assert!(build_lattice("hex_torus", &[2, 2]).is_err());
        assert!(matches!(
            build_lattice("nope", &[]),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn small_families() {
        let t = build_lattice("triangular_666", &[3]).unwrap();
        assert_eq!((t.count(0), t.count(2)), (7, 3));
        assert!(t.validate().is_empty(), "{:?}", t.validate());
        let t5 = build_lattice("triangular_666", &[5]).unwrap();
        assert_eq!((t5.count(0), t5.count(2)), (19, 9));
        let s = build_lattice("hypercube_like", &[2]).unwrap();
        assert_eq!(s.counts(), vec![4, 4, 1]);
        let cube = build_lattice("hypercube_like", &[3]).unwrap();
        assert_eq!(cube.counts(), vec![8, 12, 6, 1]);
        let tet = build_lattice("tetrahedron_like_3d", &[]).unwrap();
        assert_eq!(tet.count(0), 15);
        assert_eq!(seam_vertices(&tet).len(), 7);
        assert!(tet.validate().is_empty(), "{:?}", tet.validate());
    }

    #[test]
    fn cube_torus_cells() {
        let l = build_lattice("cube_3torus", &[]).unwrap();
        assert_eq!(l.count(0), 384);
        let c0 = l.colored_cells(0);
        assert_eq!(c0.len(), 16);
        let c = c0[0];
        assert_eq!(
            (
                l.subcells(c, 0).len(),
                l.subcells(c, 1).len(),
                l.subcells(c, 2).len()
            ),
            (24, 36, 14)
        );
        assert!(l.validate().is_empty());
    }

    #[test]
    fn detects_violations() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let mut cells = l.cells().to_vec();
        let faces = l.ids(2);
        let color = cells[faces[0]].color;
        let neighbor = faces
            .iter()
            .copied()
            .find(|&f| {
                f != faces[0]
                    && cells[f].color != color
                    && l.vertices(f)
                        .iter()
                        .any(|v| l.vertices(faces[0]).contains(v))
            })
            .unwrap();
        cells[neighbor].color = color;
        let bad = ColoredComplex::new(2, Mode::Primal, cells).unwrap();
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::Coloring { .. })));

        let mut cells = l.cells().to_vec();
        let extra = cells.len();
        cells.push(Cell {
            id: extra,
            dim: 1,
            faces: vec![0, 5],
            color: None,
            boundary: false,
            cycle: None,
        });
        let id = cells.len();
        cells.push(Cell {
            id,
            dim: 2,
            faces: vec![extra],
            color: Some(1),
            boundary: false,
            cycle: None,
        });
        let bad = ColoredComplex::new(2, Mode::Primal, cells).unwrap();
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::Valence { vertex: 0, .. })));
    }

    #[test]
    fn dual_roundtrip_and_star() {
        let dual = build_dual("hex_torus", &[3, 3]).unwrap();
        assert!(dual.validate().is_empty());
        let primal = dual.to_primal().unwrap();
        assert_eq!(primal.counts(), vec![18, 27, 9]);
        let back = primal.to_dual().unwrap();
        assert_eq!(back.counts(), dual.counts());
        let v = dual.ids(0)[0];
        assert_eq!(star(&dual, v, 2).unwrap().len(), 6);
        let t = dual.ids(2)[0];
        assert_eq!(star(&dual, t, 2).unwrap(), vec![t]);
        assert!(link(&dual, t, 1).unwrap().is_empty());
        assert_eq!(link(&dual, v, 1).unwrap().len(), 6);
    }

    #[test]
    fn shrinking_hex_torus() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let (la, map) = shrunk_lattice(&l, 1).unwrap();
        assert_eq!(la.counts(), vec![3, 9, 6]);
        assert_eq!(map.pairs.len(), 9);
        assert!(shrunk_lattice(&l, 0).is_err());
        assert!(shrunk_lattice(&l, 3).is_err());
    }

    #[test]
    fn derive_matches_shrinking_2d() {
        let dual = build_dual("hex_torus", &[3, 3]).unwrap();
        let ln = derive_l_n(&dual, 0, &[1]).unwrap();
        let (la, _) = shrunk_lattice(&dual.to_primal().unwrap(), 1).unwrap();
        let (c, s) = (ln.counts(), la.counts());
        assert_eq!((c[0], c[1], c[2]), (s[2], s[1], s[0]));
        for &x in ln.ids(2) {
            assert!(boundary_is_closed(&ln, x));
        }
        assert!(derive_l_n(&dual, 1, &[]).is_err());
    }

    #[test]
    fn attach_single_part_is_identity() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let part = shrunk_lattice(&l, 2).unwrap();
        let (joined, map) = attach(std::slice::from_ref(&part)).unwrap();
        assert_eq!(joined, part.0);
        assert_eq!(map, part.1);
    }

    #[test]
    fn json_roundtrip() {
        let l = build_lattice("triangular_666", &[3]).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert!(text
            .starts_with("{\"dimension\":2,\"mode\":\"primal\",\"cells\":[{\"id\":0,\"dim\":0,"));
        let back: ColoredComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<ColoredComplex>("{\"dimension\":2,\"mode\":\"primal\",\"cells\":[{\"id\":1,\"dim\":0,\"faces\":[],\"color\":null,\"boundary\":false,\"cycle\":null}]}").is_err());
    }

    #[test]
    fn bipartitions() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let (t, tc) = bipartition(&l).unwrap();
        assert_eq!(t.len(), tc.len());
        assert!(t.contains(&0));
    }
}
