//! Local disentangling maps on the color-0 cells, the assembled global map,
//! decoupling checks against toric codes on shrunk lattices, and boundary
//! condensation tables.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::clifford::{assemble, synthesize, CliffordMap};
use crate::codes::{color_code, logical_count, toric_code_mapped, CssCode};
use crate::complex::{
    attach, c0_edges, seam_vertices, shrunk_lattice, ColoredComplex, Mode, QubitMap,
};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::par;
use crate::pauli::{equal_span, PauliGroup, PauliOp};
use crate::qubit::Qubit;

fn check_c0_cell(l: &ColoredComplex, cell: usize) -> Result<()> {
    if l.mode() != Mode::Primal {
        return Err(Error::InvalidLattice(
            "disentangling needs a primal complex".into(),
        ));
    }
    let c = l
        .cells()
        .get(cell)
        .ok_or_else(|| Error::InvalidParams(format!("cell {cell} not found")))?;
    if c.dim != l.dimension() || c.color != Some(0) {
        return Err(Error::InvalidParams(format!(
            "cell {cell} is not a top cell of color 0"
        )));
    }
    Ok(())
}

fn edge_ends(l: &ColoredComplex, e: usize) -> Result<(usize, usize)> {
    match l.cell(e).faces.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(Error::InvalidLattice(format!(
            "edge {e} does not have two endpoints"
        ))),
    }
}

/// Map from the vertex qubits of a color-0 cell (plus `E - V` ancillas when
/// `d >= 3`) to qubits on the edges of that cell.
pub fn local_disentangler(l: &ColoredComplex, cell: usize) -> Result<CliffordMap> {
    check_c0_cell(l, cell)?;
    if l.dimension() == 2 {
        local_2d(l, cell)
    } else if l.dimension() >= 3 {
        local_nd(l, cell)
    } else {
        Err(Error::InvalidLattice("dimension must be at least 2".into()))
    }
}

fn positions(items: &[usize]) -> HashMap<usize, usize> {
    items.iter().enumerate().map(|(i, &x)| (x, i)).collect()
}

fn local_2d(l: &ColoredComplex, c: usize) -> Result<CliffordMap> {
    let cycle = l
        .cell(c)
        .cycle
        .clone()
        .or_else(|| l.compute_cycle(c))
        .ok_or_else(|| Error::InvalidLattice(format!("face {c} has no cyclic vertex order")))?;
    let m = cycle.len();
    if m < 4 || m % 2 == 1 {
        return Err(Error::InvalidLattice(format!("face {c} has {m} vertices")));
    }
    let edges = l.subcells(c, 1);
    let mut between: HashMap<(usize, usize), usize> = HashMap::new();
    for &e in &edges {
        let (a, b) = edge_ends(l, e)?;
        between.insert((a.min(b), a.max(b)), e);
    }
    let edge = |a: usize, b: usize| {
        between
            .get(&(a.min(b), a.max(b)))
            .copied()
            .ok_or_else(|| Error::InvalidLattice(format!("face {c} misses edge {a}-{b}")))
    };
    let mut start = None;
    for i in 0..m {
        if l.color_mask(edge(cycle[i], cycle[(i + 1) % m])?) == 0b011 {
            start = Some(i);
            break;
        }
    }
    let s = start.ok_or_else(|| {
        Error::InvalidLattice(format!("face {c} has no edge shared with color 1"))
    })?;
    let w: Vec<usize> = (0..m).map(|j| cycle[(s + j) % m]).collect();
    let e: Vec<usize> = (0..m)
        .map(|j| edge(w[j], w[(j + 1) % m]))
        .collect::<Result<_>>()?;
    let verts = l.vertices(c).to_vec();
    let (vpos, epos) = (positions(&verts), positions(&edges));
    let wv = |j: usize| vpos[&w[j]];
    let ee = |j: usize| epos[&e[j]];

    let mut g = Vec::with_capacity(2 * m - 2);
    let mut h = Vec::with_capacity(2 * m - 2);
    for j in 0..m - 1 {
        g.push(PauliOp::z_on(m, [wv(j), wv(j + 1)]));
    }
    g.push(PauliOp::new(
        BitVec::from_indices(m, 0..m),
        BitVec::from_indices(m, [wv(m - 1), wv(0)]),
    ));
    for j in 0..m - 2 {
        g.push(PauliOp::x_on(m, [wv(j), wv(j + 1)]));
    }
    for j in 0..m {
        h.push(PauliOp::z_on(m, [ee(j)]));
    }
    for j in 0..m - 2 {
        h.push(PauliOp::x_on(m, [ee((j + m - 1) % m), ee(j + 1)]));
    }
    let map = synthesize(&g, &h)?;
    Ok(map.with_labels(
        verts.iter().map(|&v| Qubit::Vertex(v)).collect(),
        edges.iter().map(|&e| Qubit::Edge(e)).collect(),
    ))
}

fn local_nd(l: &ColoredComplex, c: usize) -> Result<CliffordMap> {
    let d = l.dimension();
    let verts = l.vertices(c).to_vec();
    let edges = l.subcells(c, 1);
    let faces = l.subcells(c, d - 1);
    let (nv, n) = (verts.len(), edges.len());
    if n < nv {
        return Err(Error::InvalidLattice(format!(
            "cell {c} has fewer edges than vertices"
        )));
    }
    let (vpos, epos) = (positions(&verts), positions(&edges));
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in &edges {
        let (a, b) = edge_ends(l, e)?;
        incident.entry(a).or_default().push(e);
        incident.entry(b).or_default().push(e);
    }
    let (mut g, mut h) = (Vec::with_capacity(n + n), Vec::with_capacity(n + n));

    let mut seen: BTreeSet<usize> = BTreeSet::from([verts[0]]);
    let mut queue = VecDeque::from([verts[0]]);
    while let Some(u) = queue.pop_front() {
        for &e in &incident[&u] {
            let (a, b) = edge_ends(l, e)?;
            let w = if a == u { b } else { a };
            if seen.insert(w) {
                queue.push_back(w);
                g.push(PauliOp::z_on(n, [vpos[&u], vpos[&w]]));
                h.push(PauliOp::z_on(n, [epos[&e]]));
            }
        }
    }
    if seen.len() != nv {
        return Err(Error::InvalidLattice(format!(
            "cell {c} has a disconnected edge graph"
        )));
    }

    let radiating = |f: usize| -> Vec<usize> {
        let inner: BTreeSet<usize> = l.subcells(f, 1).into_iter().collect();
        let fv = l.vertices(f);
        edges
            .iter()
            .filter(|e| !inner.contains(e) && l.vertices(**e).iter().any(|v| fv.contains(v)))
            .map(|e| epos[e])
            .collect()
    };
    let mut first_of_color: BTreeSet<u32> = BTreeSet::new();
    for &f in &faces {
        if first_of_color.insert(l.color_mask(f) & !1) {
            continue;
        }
        g.push(PauliOp::x_on(n, l.vertices(f).iter().map(|v| vpos[v])));
        h.push(PauliOp::x_on(n, radiating(f)));
    }
    g.push(PauliOp::x_on(n, 0..nv));
    h.push(PauliOp::z_on(n, 0..n));

    let mut tc: Vec<PauliOp> = (0..n).map(|i| PauliOp::z_on(n, [i])).collect();
    tc.extend(faces.iter().map(|&f| PauliOp::x_on(n, radiating(f))));
    let center = PauliGroup::new(n, tc)?.center();
    let mut ech = Echelon::new(2 * n);
    for p in &h {
        ech.insert(&p.sym());
    }
    let mut extra = center.gens().iter().filter(|p| ech.insert(&p.sym()));
    for k in 0..n - nv {
        let img = extra
            .next()
            .ok_or_else(|| Error::Synthesis(format!("cell {c}: too few central elements")))?;
        g.push(PauliOp::z_on(n, [nv + k]));
        h.push(img.clone());
    }
    let map = synthesize(&g, &h)?;
    let mut domain: Vec<Qubit> = verts.iter().map(|&v| Qubit::Vertex(v)).collect();
    domain.extend((0..n - nv).map(|k| Qubit::Ancilla { cell: c, k }));
    Ok(map.with_labels(domain, edges.iter().map(|&e| Qubit::Edge(e)).collect()))
}

/// A toric code on a shrunk or attached lattice, placed inside the unfolded qubit set.
#[derive(Clone, Debug)]
pub struct Part {
    /// Shrunk color; 0 for the attached lattice.
    pub color: usize,
    pub lattice: ColoredComplex,
    pub map: QubitMap,
    pub code: CssCode,
    /// Position of each code qubit among the unfolded qubits.
    pub positions: Vec<usize>,
}

impl Part {
    /// Stabilizer generators over `n` unfolded qubits.
    #[must_use]
    pub fn embedded(&self, n: usize) -> Vec<PauliOp> {
        self.code
            .stabilizers()
            .gens()
            .iter()
            .map(|p| p.embed(n, &self.positions))
            .collect()
    }
}

/// Output of [`disentangle`].
#[derive(Clone, Debug)]
pub struct Disentangled {
    pub u: CliffordMap,
    /// Color code padded with ancillas, on the domain qubits of `u`.
    pub color_code: CssCode,
    /// Image of the color-code stabilizers, on the codomain qubits of `u`.
    pub transformed: PauliGroup,
    /// One toric code per color `1..=d`.
    pub parts: Vec<Part>,
    /// Toric code on the attached lattice when color-0 boundaries leave a seam.
    pub attached: Option<Part>,
    pub seam: Vec<usize>,
    pub ancillas: Vec<Qubit>,
}

impl Disentangled {
    #[must_use]
    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// The toric-code group the transformed color code should equal.
    #[must_use]
    pub fn expected(&self) -> PauliGroup {
        let n = self.n();
        let gens = match &self.attached {
            Some(a) => a.embedded(n),
            None => self.parts.iter().flat_map(|p| p.embedded(n)).collect(),
        };
        PauliGroup::new(n, gens).expect("embedded into n qubits")
    }

    /// Blocks for the decoupling check: one per part on closed lattices, a
    /// single block when the parts are glued along a seam.
    #[must_use]
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        match &self.attached {
            Some(a) => {
                let mut all = a.positions.clone();
                all.sort_unstable();
                vec![all]
            }
            None => self.parts.iter().map(|p| p.positions.clone()).collect(),
        }
    }

    /// Span comparison, decoupling check and logical counts.
    pub fn check(&self) -> Result<UnfoldCheck> {
        let expected = self.expected();
        let span_equal = equal_span(&self.transformed, &expected)?;
        let witness = if span_equal {
            None
        } else {
            let e = expected.echelon();
            let t = self.transformed.echelon();
            self.transformed
                .gens()
                .iter()
                .find(|g| !e.contains(&g.sym()))
                .or_else(|| expected.gens().iter().find(|g| !t.contains(&g.sym())))
                .cloned()
        };
        let decoupling = verify_decoupled(&self.transformed, &self.blocks())?;
        let rt = self.transformed.rank();
        let re = expected.rank();
        Ok(UnfoldCheck {
            span_equal,
            witness: witness.map(|w| w.to_string()),
            decoupled: decoupling.decoupled,
            decoupling_witness: decoupling.witness.map(|w| w.to_string()),
            surplus: rt as i64 - re as i64,
            color_code_logicals: logical_count(&self.color_code),
            part_logicals: self.parts.iter().map(|p| logical_count(&p.code)).collect(),
            attached_logicals: self.attached.as_ref().map(|a| logical_count(&a.code)),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnfoldCheck {
    pub span_equal: bool,
    pub witness: Option<String>,
    pub decoupled: bool,
    pub decoupling_witness: Option<String>,
    /// Rank of the transformed group minus rank of the toric-code group.
    pub surplus: i64,
    pub color_code_logicals: usize,
    pub part_logicals: Vec<usize>,
    pub attached_logicals: Option<usize>,
}

impl UnfoldCheck {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.span_equal && self.decoupled
    }
}

fn place(code: &CssCode, index: &HashMap<Qubit, usize>) -> Result<Vec<usize>> {
    code.qubits()
        .iter()
        .map(|q| {
            index
                .get(q)
                .copied()
                .ok_or_else(|| Error::LabelMismatch(format!("qubit {q} is not unfolded")))
        })
        .collect()
}

/// Builds the local maps on every color-0 cell, assembles them and
/// transforms the color code (padded with ancillas).
pub fn disentangle(l: &ColoredComplex) -> Result<Disentangled> {
    if l.mode() != Mode::Primal {
        return Err(Error::InvalidLattice(
            "disentangling needs a primal complex".into(),
        ));
    }
    if let Some(v) = l.validate().first() {
        return Err(Error::InvalidLattice(v.to_string()));
    }
    let d = l.dimension();
    if d < 2 {
        return Err(Error::InvalidLattice("dimension must be at least 2".into()));
    }
    let cells = l.colored_cells(0);
    let locals = par::map(&cells, |&c| local_disentangler(l, c))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    finish(l, &locals)
}

/// Same as [`disentangle`] with the local maps built one after another.
pub fn disentangle_seq(l: &ColoredComplex) -> Result<Disentangled> {
    if let Some(v) = l.validate().first() {
        return Err(Error::InvalidLattice(v.to_string()));
    }
    let cells = l.colored_cells(0);
    let locals = par::map_seq(&cells, |&c| local_disentangler(l, c))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    finish(l, &locals)
}

fn finish(l: &ColoredComplex, locals: &[CliffordMap]) -> Result<Disentangled> {
    let d = l.dimension();
    let ancillas: Vec<Qubit> = locals
        .iter()
        .flat_map(|m| {
            m.domain()
                .iter()
                .copied()
                .filter(|q| matches!(q, Qubit::Ancilla { .. }))
        })
        .collect();
    let seam = seam_vertices(l);
    let mut domain: Vec<Qubit> = l.ids(0).iter().map(|&v| Qubit::Vertex(v)).collect();
    domain.extend_from_slice(&ancillas);
    let mut codomain: Vec<Qubit> = c0_edges(l).into_iter().map(Qubit::Edge).collect();
    codomain.extend(seam.iter().map(|&v| Qubit::Vertex(v)));
    let u = assemble(locals, &domain, &codomain)?;
    let color_code = color_code(l, d - 2)?.add_ancilla_labels(ancillas.clone())?;
    let transformed = u.apply_group(&color_code.stabilizers())?;
    let index: HashMap<Qubit, usize> = codomain.iter().enumerate().map(|(i, &q)| (q, i)).collect();

    let mut parts = Vec::with_capacity(d);
    let mut cover = vec![0usize; codomain.len()];
    for i in 1..=d {
        let (lattice, map) = shrunk_lattice(l, i)?;
        let code = toric_code_mapped(&lattice, &map)?;
        let positions = place(&code, &index)?;
        for &p in &positions {
            cover[p] += 1;
        }
        parts.push(Part {
            color: i,
            lattice,
            map,
            code,
            positions,
        });
    }
    for (p, &count) in cover.iter().enumerate() {
        let expected = if matches!(codomain[p], Qubit::Vertex(_)) {
            d
        } else {
            1
        };
        if count != expected {
            return Err(Error::InvalidLattice(format!(
                "qubit {} lies in {count} shrunk lattices",
                codomain[p]
            )));
        }
    }
    let attached = if seam.is_empty() {
        None
    } else {
        let pieces: Vec<(ColoredComplex, QubitMap)> = parts
            .iter()
            .map(|p| (p.lattice.clone(), p.map.clone()))
            .collect();
        let (lattice, map) = attach(&pieces)?;
        let code = toric_code_mapped(&lattice, &map)?;
        let positions = place(&code, &index)?;
        Some(Part {
            color: 0,
            lattice,
            map,
            code,
            positions,
        })
    };
    Ok(Disentangled {
        u,
        color_code,
        transformed,
        parts,
        attached,
        seam,
        ancillas,
    })
}

/// Result of splitting a group over disjoint qubit blocks.
#[derive(Clone, Debug)]
pub struct Decoupling {
    pub decoupled: bool,
    /// Generators of the elements supported inside each block, restricted to it.
    pub blocks: Vec<PauliGroup>,
    /// A generator outside the span of the block-supported elements.
    pub witness: Option<PauliOp>,
}

/// Finds, per block, the elements of the span supported inside the block and
/// checks whether together they span the whole group.
pub fn verify_decoupled(group: &PauliGroup, blocks: &[Vec<usize>]) -> Result<Decoupling> {
    let n = group.n();
    let mut owner = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &q in block {
            if q >= n || owner[q] != usize::MAX {
                return Err(Error::InvalidParams(format!(
                    "qubit {q} is out of range or in two blocks"
                )));
            }
            owner[q] = b;
        }
    }
    if let Some(q) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidParams(format!("qubit {q} is in no block")));
    }
    let total = group.rank();
    let mut sum = Echelon::new(2 * n);
    let mut groups = Vec::with_capacity(blocks.len());
    let per_block = par::map(blocks, |block| block_part(group, block));
    for (block, rows) in blocks.iter().zip(per_block) {
        let mut gens = Vec::with_capacity(rows.len());
        for r in rows {
            sum.insert(&r);
            gens.push(PauliOp::from_sym(&r).restrict(block));
        }
        groups.push(PauliGroup::new(block.len(), gens)?);
    }
    let decoupled = sum.rank() == total;
    let witness = if decoupled {
        None
    } else {
        group
            .gens()
            .iter()
            .find(|g| !sum.contains(&g.sym()))
            .cloned()
    };
    Ok(Decoupling {
        decoupled,
        blocks: groups,
        witness,
    })
}

fn block_part(group: &PauliGroup, block: &[usize]) -> Vec<BitVec> {
    let n = group.n();
    let mut inside = vec![false; n];
    for &q in block {
        inside[q] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&q| !inside[q]).collect();
    let mut perm: Vec<usize> = outside
        .iter()
        .copied()
        .chain(outside.iter().map(|q| q + n))
        .collect();
    let cut = perm.len();
    perm.extend(block.iter().copied().chain(block.iter().map(|q| q + n)));
    let mut ech = Echelon::new(2 * n);
    for g in group.gens() {
        ech.insert(&g.sym().select(&perm));
    }
    ech.rows()
        .iter()
        .zip(ech.pivots())
        .filter(|(_, &p)| p >= cut)
        .map(|(r, _)| BitVec::from_indices(2 * n, r.ones().map(|i| perm[i])))
        .collect()
}

/// How a part meets a boundary component.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Rough,
    Smooth,
    Seam,
}

/// Condensation data for one boundary component.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryRow {
    pub color: usize,
    pub cells: usize,
    /// `(part color, role)`.
    pub roles: Vec<(usize, Role)>,
    /// Condensing electric charge vectors, bit `i - 1` for part `i`.
    pub electric: Vec<u32>,
    /// Flux vectors braiding trivially with every condensing charge.
    pub magnetic: Vec<u32>,
    /// Flux vectors found directly on the collar.
    pub magnetic_direct: Vec<u32>,
    pub labels: Vec<String>,
}

impl BoundaryRow {
    #[must_use]
    /// Every flux found directly is allowed by the charges.
    pub fn consistent(&self) -> bool {
        self.magnetic_direct
            .iter()
            .all(|b| self.magnetic.contains(b))
    }
}

/// Name of the excitation with charges `a` and fluxes `b`.
#[must_use]
pub fn excitation_label(a: u32, b: u32, d: usize) -> String {
    let mut s = String::new();
    for i in 0..d {
        if a >> i & 1 == 1 && b >> i & 1 == 1 {
            s.push_str(&format!("ε{}", i + 1));
        }
    }
    for i in 0..d {
        if a >> i & 1 == 1 && b >> i & 1 == 0 {
            s.push_str(&format!("e{}", i + 1));
        }
    }
    for i in 0..d {
        if b >> i & 1 == 1 && a >> i & 1 == 0 {
            s.push_str(&format!("m{}", i + 1));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Charge vectors `a` for which some operator on `collar` has a syndrome of
/// exactly one check in each part `i` with `a_i = 1`.
fn condensing(checks: &[(usize, BitVec)], collar: &[usize], d: usize) -> Vec<u32> {
    let rows = checks.len();
    let mut cols = Echelon::new(rows);
    for &q in collar {
        cols.insert(&BitVec::from_indices(
            rows,
            (0..rows).filter(|&r| checks[r].1.get(q)),
        ));
    }
    let touching: Vec<Vec<usize>> = (0..d)
        .map(|i| {
            (0..rows)
                .filter(|&r| checks[r].0 == i && collar.iter().any(|&q| checks[r].1.get(q)))
                .collect()
        })
        .collect();
    let mut out = vec![0u32];
    for a in 1u32..(1 << d) {
        let chosen: Vec<&Vec<usize>> = (0..d)
            .filter(|&i| a >> i & 1 == 1)
            .map(|i| &touching[i])
            .collect();
        if chosen.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; chosen.len()];
        'search: loop {
            let target = BitVec::from_indices(rows, idx.iter().zip(&chosen).map(|(&k, c)| c[k]));
            if cols.contains(&target) {
                out.push(a);
                break 'search;
            }
            let mut j = 0;
            loop {
                if j == idx.len() {
                    break 'search;
                }
                idx[j] += 1;
                if idx[j] < chosen[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
    out
}

fn perp(set: &[u32], d: usize) -> Vec<u32> {
    (0u32..(1 << d))
        .filter(|b| set.iter().all(|a| (a & b).count_ones() % 2 == 0))
        .collect()
}

/// Per boundary component: part roles and the set of condensing excitations,
/// found on a collar two vertex layers wide.
pub fn classify_boundaries(l: &ColoredComplex, dis: &Disentangled) -> Result<Vec<BoundaryRow>> {
    classify_boundaries_with(l, dis, 2)
}

/// As [`classify_boundaries`] with a collar of `width` vertex layers. Qubits
/// touching any other boundary component are left out of the collar.
pub fn classify_boundaries_with(
    l: &ColoredComplex,
    dis: &Disentangled,
    width: usize,
) -> Result<Vec<BoundaryRow>> {
    if width == 0 {
        return Err(Error::InvalidParams("collar width must be positive".into()));
    }
    let comps = l.boundary_components();
    let d = l.dimension();
    let n = dis.n();
    let codomain = dis.u.codomain();
    let under = |q: Qubit| -> Vec<usize> {
        match q {
            Qubit::Edge(e) => l.vertices(e).to_vec(),
            Qubit::Vertex(v) => vec![v],
            _ => Vec::new(),
        }
    };
    let mut xchecks = Vec::new();
    let mut zchecks = Vec::new();
    for (i, p) in dis.parts.iter().enumerate() {
        let embed = |r: &BitVec| BitVec::from_indices(n, r.ones().map(|j| p.positions[j]));
        xchecks.extend(p.code.hx().iter().map(|r| (i, embed(r))));
        zchecks.extend(p.code.hz().iter().map(|r| (i, embed(r))));
    }
    let mut out = Vec::with_capacity(comps.len());
    for (ci, comp) in comps.iter().enumerate() {
        let mut near: BTreeSet<usize> = comp.vertices.clone();
        let mut frontier: Vec<usize> = near.iter().copied().collect();
        for _ in 1..width {
            frontier = frontier
                .iter()
                .flat_map(|&v| l.neighbors(v))
                .filter(|v| !near.contains(v))
                .collect();
            near.extend(frontier.iter().copied());
        }
        let others: BTreeSet<usize> = comps
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != ci)
            .flat_map(|(_, c)| c.vertices.iter().copied())
            .collect();
        let collar: Vec<usize> = (0..n)
            .filter(|&p| {
                let vs = under(codomain[p]);
                !vs.is_empty() && vs.iter().all(|v| near.contains(v) && !others.contains(v))
            })
            .collect();
        let electric = condensing(&xchecks, &collar, d);
        let magnetic_direct = condensing(&zchecks, &collar, d);
        let magnetic = perp(&electric, d);
        let mut labels = Vec::new();
        for &a in &electric {
            for &b in &magnetic {
                labels.push(excitation_label(a, b, d));
            }
        }
        let roles = (1..=d)
            .map(|i| {
                let role = if comp.color == i {
                    Role::Rough
                } else if comp.color == 0 {
                    Role::Seam
                } else {
                    Role::Smooth
                };
                (i, role)
            })
            .collect();
        out.push(BoundaryRow {
            color: comp.color,
            cells: comp.cells.len(),
            roles,
            electric,
            magnetic,
            magnetic_direct,
            labels,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_lattice;
    use crate::pauli::overlap_group;

    #[test]
    fn hexagon_local_map() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let c = l.colored_cells(0)[0];
        let m = local_disentangler(&l, c).unwrap();
        assert_eq!(m.n(), 6);
        assert!(m.is_symplectic());
        assert!(local_disentangler(&l, l.colored_cells(1)[0]).is_err());
    }

    #[test]
    fn cube_local_map() {
        let l = build_lattice("hypercube_like", &[3]).unwrap();
        let c = l.colored_cells(0)[0];
        let m = local_disentangler(&l, c).unwrap();
        assert_eq!(m.n(), 12);
        assert_eq!(
            m.domain()
                .iter()
                .filter(|q| matches!(q, Qubit::Ancilla { .. }))
                .count(),
            4
        );
    }

    #[test]
    fn hex_torus_unfolds() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let dis = disentangle(&l).unwrap();
        assert_eq!(dis.parts.len(), 2);
        assert!(dis.attached.is_none());
        let check = dis.check().unwrap();
        assert!(check.span_equal, "{check:?}");
        assert!(check.decoupled);
        assert_eq!(check.part_logicals, vec![2, 2]);
        assert_eq!(check.color_code_logicals, 4);
        assert!(classify_boundaries(&l, &dis).unwrap().is_empty());
    }

    #[test]
    fn overlap_of_hexagon() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let code = color_code(&l, 0).unwrap();
        let c = l.colored_cells(0)[0];
        let q: Vec<usize> = l
            .vertices(c)
            .iter()
            .map(|&v| code.position(Qubit::Vertex(v)).unwrap())
            .collect();
        let o = overlap_group(&code.stabilizers(), &q);
        assert_eq!((o.rank(), o.center().rank()), (10, 2));
    }

    #[test]
    fn decoupling_witness() {
        let g = PauliGroup::parse("XX").unwrap();
        let r = verify_decoupled(&g, &[vec![0], vec![1]]).unwrap();
        assert!(!r.decoupled);
        assert_eq!(r.witness.unwrap().to_string(), "XX");
        assert!(verify_decoupled(&g, &[vec![0, 1]]).unwrap().decoupled);
        assert!(verify_decoupled(&g, &[vec![0]]).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(excitation_label(0, 0, 2), "1");
        assert_eq!(excitation_label(1, 2, 2), "e1m2");
        assert_eq!(excitation_label(3, 3, 2), "ε1ε2");
    }
}
