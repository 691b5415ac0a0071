//! CSS codes built from colored complexes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{ColoredComplex, Mode, QubitMap};
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec, Echelon};
use crate::pauli::{PauliGroup, PauliOp};
use crate::qubit::Qubit;

/// CSS code given by X and Z parity checks. Redundant rows are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CssCode {
    n: usize,
    hx: Vec<BitVec>,
    hz: Vec<BitVec>,
    qubits: Vec<Qubit>,
    /// Source cell of each X row; `None` for rows without a cell.
    x_cells: Vec<Option<usize>>,
    z_cells: Vec<Option<usize>>,
}

impl CssCode {
    /// Checks that every X row commutes with every Z row.
    pub fn new(hx: Vec<BitVec>, hz: Vec<BitVec>, qubits: Vec<Qubit>) -> Result<Self> {
        let (xc, zc) = (vec![None; hx.len()], vec![None; hz.len()]);
        Self::with_cells(hx, hz, qubits, xc, zc)
    }

    pub fn with_cells(
        hx: Vec<BitVec>,
        hz: Vec<BitVec>,
        qubits: Vec<Qubit>,
        x_cells: Vec<Option<usize>>,
        z_cells: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = qubits.len();
        if let Some(r) = hx.iter().chain(&hz).find(|r| r.len() != n) {
            return Err(Error::SizeMismatch(n, r.len()));
        }
        if x_cells.len() != hx.len() || z_cells.len() != hz.len() {
            return Err(Error::InvalidCode("row labels do not match rows".into()));
        }
        for (i, x) in hx.iter().enumerate() {
            if let Some(j) = hz.iter().position(|z| x.dot(z)) {
                return Err(Error::InvalidCode(format!(
                    "X row {i} anticommutes with Z row {j}"
                )));
            }
        }
        Ok(Self {
            n,
            hx,
            hz,
            qubits,
            x_cells,
            z_cells,
        })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn hx(&self) -> &[BitVec] {
        &self.hx
    }

    #[must_use]
    pub fn hz(&self) -> &[BitVec] {
        &self.hz
    }

    #[must_use]
    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    #[must_use]
    pub fn x_cells(&self) -> &[Option<usize>] {
        &self.x_cells
    }

    #[must_use]
    pub fn z_cells(&self) -> &[Option<usize>] {
        &self.z_cells
    }

    /// Position of a qubit label.
    #[must_use]
    pub fn position(&self, q: Qubit) -> Option<usize> {
        self.qubits.iter().position(|&p| p == q)
    }

    /// Same checks on relabelled qubits.
    pub fn relabel(mut self, qubits: Vec<Qubit>) -> Result<Self> {
        if qubits.len() != self.n {
            return Err(Error::SizeMismatch(self.n, qubits.len()));
        }
        self.qubits = qubits;
        Ok(self)
    }

    /// X rows followed by Z rows as Pauli operators.
    #[must_use]
    pub fn stabilizers(&self) -> PauliGroup {
        let gens = self
            .hx
            .iter()
            .map(|r| PauliOp::new(r.clone(), BitVec::zeros(self.n)))
            .chain(
                self.hz
                    .iter()
                    .map(|r| PauliOp::new(BitVec::zeros(self.n), r.clone())),
            )
            .collect();
        PauliGroup::new(self.n, gens).expect("rows have length n")
    }

    #[must_use]
    pub fn rank_x(&self) -> usize {
        gf2::rank(&self.hx)
    }

    #[must_use]
    pub fn rank_z(&self) -> usize {
        gf2::rank(&self.hz)
    }

    /// Appends `m` ancillas labelled by index, each fixed by a single-qubit Z.
    #[must_use]
    pub fn add_ancillas(&self, m: usize) -> Self {
        let labels = (0..m).map(|i| Qubit::Index(self.n + i)).collect();
        self.add_ancilla_labels(labels)
            .expect("index labels are fresh")
    }

    /// Appends one ancilla per label, each fixed by a single-qubit Z.
    pub fn add_ancilla_labels(&self, labels: Vec<Qubit>) -> Result<Self> {
        let m = labels.len();
        let n = self.n + m;
        let pad = |r: &BitVec| r.concat(&BitVec::zeros(m));
        let hx = self.hx.iter().map(pad).collect();
        let mut hz: Vec<BitVec> = self.hz.iter().map(pad).collect();
        hz.extend((0..m).map(|i| BitVec::unit(n, self.n + i)));
        let mut qubits = self.qubits.clone();
        qubits.extend(labels);
        let mut z_cells = self.z_cells.clone();
        z_cells.extend(std::iter::repeat_n(None, m));
        Self::with_cells(hx, hz, qubits, self.x_cells.clone(), z_cells)
    }

    /// Code on the disjoint union of the qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        let left = |r: &BitVec| r.concat(&BitVec::zeros(other.n));
        let right = |r: &BitVec| BitVec::zeros(self.n).concat(r);
        let hx = self
            .hx
            .iter()
            .map(left)
            .chain(other.hx.iter().map(right))
            .collect();
        let hz = self
            .hz
            .iter()
            .map(left)
            .chain(other.hz.iter().map(right))
            .collect();
        let mut qubits = self.qubits.clone();
        qubits.extend_from_slice(&other.qubits);
        let xc = self.x_cells.iter().chain(&other.x_cells).copied().collect();
        let zc = self.z_cells.iter().chain(&other.z_cells).copied().collect();
        let out = Self::with_cells(hx, hz, qubits, xc, zc)?;
        debug_assert_eq!(out.n, n);
        Ok(out)
    }

    /// Plain-text sparse format for the X checks followed by the Z checks.
    #[must_use]
    pub fn to_alist(&self) -> String {
        let mut s = String::from("# hx\n");
        s.push_str(&alist(&self.hx, self.n));
        s.push_str("# hz\n");
        s.push_str(&alist(&self.hz, self.n));
        s
    }
}

/// One matrix in alist form: sizes, maximum weights, weights, then 1-based
/// incidence lists by column and by row.
#[must_use]
pub fn alist(rows: &[BitVec], n: usize) -> String {
    let cols: Vec<Vec<usize>> = (0..n)
        .map(|c| (0..rows.len()).filter(|&r| rows[r].get(c)).collect())
        .collect();
    let rs: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
    let join = |v: &[usize], shift: usize| {
        v.iter()
            .map(|x| (x + shift).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", n, rows.len());
    let _ = writeln!(
        s,
        "{} {}",
        cols.iter().map(Vec::len).max().unwrap_or(0),
        rs.iter().map(Vec::len).max().unwrap_or(0)
    );
    let _ = writeln!(
        s,
        "{}",
        join(&cols.iter().map(Vec::len).collect::<Vec<_>>(), 0)
    );
    let _ = writeln!(
        s,
        "{}",
        join(&rs.iter().map(Vec::len).collect::<Vec<_>>(), 0)
    );
    for c in &cols {
        let _ = writeln!(s, "{}", join(c, 1));
    }
    for r in &rs {
        let _ = writeln!(s, "{}", join(r, 1));
    }
    s
}

#[derive(Serialize, Deserialize)]
struct CodeFile {
    n: usize,
    hx: Vec<String>,
    hz: Vec<String>,
    labels: CodeLabels,
}

#[derive(Serialize, Deserialize)]
struct CodeLabels {
    qubits: Vec<Qubit>,
    x: Vec<Option<usize>>,
    z: Vec<Option<usize>>,
}

impl Serialize for CssCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeFile {
            n: self.n,
            hx: self.hx.iter().map(BitVec::to_hex).collect(),
            hz: self.hz.iter().map(BitVec::to_hex).collect(),
            labels: CodeLabels {
                qubits: self.qubits.clone(),
                x: self.x_cells.clone(),
                z: self.z_cells.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CssCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let f = CodeFile::deserialize(d)?;
        let parse = |rows: &[String]| -> std::result::Result<Vec<BitVec>, D::Error> {
            rows.iter()
                .map(|h| BitVec::from_hex(f.n, h).ok_or_else(|| D::Error::custom("bad hex row")))
                .collect()
        };
        let (hx, hz) = (parse(&f.hx)?, parse(&f.hz)?);
        Self::with_cells(hx, hz, f.labels.qubits, f.labels.x, f.labels.z).map_err(D::Error::custom)
    }
}

fn rows_from_sets(
    n: usize,
    sets: impl Iterator<Item = (usize, Vec<usize>)>,
) -> (Vec<BitVec>, Vec<Option<usize>>) {
    sets.filter(|(_, s)| !s.is_empty())
        .map(|(c, s)| (BitVec::from_indices(n, s), Some(c)))
        .unzip()
}

/// Color code. Primal complexes carry qubits on vertices, X checks on d-cells
/// and Z checks on 2-cells, which requires `k = d - 2`. Simplicial complexes
/// carry qubits on d-simplices with X checks from (d-k-2)-simplices and Z
/// checks from k-simplices.
pub fn color_code(l: &ColoredComplex, k: usize) -> Result<CssCode> {
    let d = l.dimension();
    if d < 2 || k > d - 2 {
        return Err(Error::InvalidParams(format!(
            "k = {k} out of range for dimension {d}"
        )));
    }
    if let Some(v) = l.validate().first() {
        return Err(Error::InvalidLattice(v.to_string()));
    }
    match l.mode() {
        Mode::Primal => {
            if k != d - 2 {
                return Err(Error::InvalidParams(format!(
                    "primal complexes support k = {} only",
                    d - 2
                )));
            }
            let verts = l.ids(0);
            let pos: BTreeMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let n = verts.len();
            let support = |c: usize| (c, l.vertices(c).iter().map(|v| pos[v]).collect::<Vec<_>>());
            let (hx, xc) = rows_from_sets(n, l.ids(d).iter().map(|&c| support(c)));
            let (hz, zc) = rows_from_sets(n, l.ids(2).iter().map(|&c| support(c)));
            CssCode::with_cells(
                hx,
                hz,
                verts.iter().map(|&v| Qubit::Vertex(v)).collect(),
                xc,
                zc,
            )
        }
        Mode::Dual => {
            let tops = l.ids(d);
            let pos: BTreeMap<usize, usize> =
                tops.iter().enumerate().map(|(i, &t)| (t, i)).collect();
            let n = tops.len();
            let star = |s: usize| {
                (
                    s,
                    l.containing(s, d)
                        .iter()
                        .map(|t| pos[t])
                        .collect::<Vec<_>>(),
                )
            };
            let (hx, xc) = rows_from_sets(n, l.ids(d - k - 2).iter().map(|&s| star(s)));
            let (hz, zc) = rows_from_sets(n, l.ids(k).iter().map(|&s| star(s)));
            CssCode::with_cells(
                hx,
                hz,
                tops.iter().map(|&t| Qubit::Index(t)).collect(),
                xc,
                zc,
            )
        }
    }
}

/// Toric code with qubits on k-cells. Primal complexes take X checks from
/// (k-1)-cells and Z checks from the boundaries of (k+1)-cells; simplicial
/// complexes use the opposite orientation.
pub fn toric_code(l: &ColoredComplex, k: usize) -> Result<CssCode> {
    let d = l.dimension();
    if k == 0 || k >= d.max(1) {
        return Err(Error::InvalidParams(format!("k = {k} out of range 1..{d}")));
    }
    let qs = l.ids(k);
    let pos: BTreeMap<usize, usize> = qs.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let n = qs.len();
    let down = |c: usize| (c, l.cofaces(c).iter().map(|q| pos[q]).collect::<Vec<_>>());
    let up = |c: usize| {
        (
            c,
            l.cell(c).faces.iter().map(|q| pos[q]).collect::<Vec<_>>(),
        )
    };
    let (lower, upper) = (
        l.ids(k - 1).iter().map(|&c| down(c)),
        l.ids(k + 1).iter().map(|&c| up(c)),
    );
    let ((hx, xc), (hz, zc)) = match l.mode() {
        Mode::Primal => (rows_from_sets(n, lower), rows_from_sets(n, upper)),
        Mode::Dual => {
            let (hz, zc) = rows_from_sets(n, lower);
            (rows_from_sets(n, upper), (hz, zc))
        }
    };
    let label = |c: usize| {
        if k == 1 {
            Qubit::Edge(c)
        } else {
            Qubit::Index(c)
        }
    };
    CssCode::with_cells(hx, hz, qs.iter().map(|&c| label(c)).collect(), xc, zc)
}

/// Toric code on a derived lattice with its edge qubits named by `map`.
pub fn toric_code_mapped(l: &ColoredComplex, map: &QubitMap) -> Result<CssCode> {
    let code = toric_code(l, 1)?;
    let labels = l
        .ids(1)
        .iter()
        .map(|&e| {
            map.label(e)
                .ok_or_else(|| Error::InvalidLattice(format!("edge {e} has no qubit label")))
        })
        .collect::<Result<Vec<_>>>()?;
    code.relabel(labels)
}

#[must_use]
pub fn logical_count(code: &CssCode) -> usize {
    code.n - code.rank_x() - code.rank_z()
}

/// Euler characteristic of the cells present in the complex.
#[must_use]
pub fn euler_characteristic(l: &ColoredComplex) -> i64 {
    l.counts()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Symplectically paired logical representatives: `x[i]` is the support of
/// an X-type logical, `z[i]` of a Z-type logical, and `x[i].z[j] = δ_ij`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogicalSet {
    pub x: Vec<BitVec>,
    pub z: Vec<BitVec>,
}

impl LogicalSet {
    #[must_use]
    pub fn len(&self) -> usize {
        self.x.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    #[must_use]
    pub fn x_op(&self, i: usize) -> PauliOp {
        let n = self.x[i].len();
        PauliOp::new(self.x[i].clone(), BitVec::zeros(n))
    }

    #[must_use]
    pub fn z_op(&self, i: usize) -> PauliOp {
        let n = self.z[i].len();
        PauliOp::new(BitVec::zeros(n), self.z[i].clone())
    }
}

/// Basis of `ker(checks)` modulo `span(stabs)`.
fn quotient_basis(checks: &[BitVec], stabs: &[BitVec], n: usize) -> Vec<BitVec> {
    let mut e = Echelon::new(n);
    for s in stabs {
        e.insert(s);
    }
    gf2::kernel(checks, n)
        .into_iter()
        .filter(|v| e.insert(v))
        .collect()
}

/// Lowest-weight element of `v + span(stabs)`, by exhaustive search when small.
fn min_weight(v: &BitVec, stabs: &[BitVec]) -> BitVec {
    let mut e = Echelon::new(v.len());
    let basis: Vec<BitVec> = stabs.iter().filter(|s| e.insert(s)).cloned().collect();
    if v.len() > 30 || basis.len() > 20 {
        return v.clone();
    }
    let mut best = v.clone();
    let mut cur = v.clone();
    for i in 1u64..(1 << basis.len()) {
        cur.xor_assign(&basis[i.trailing_zeros() as usize]);
        if cur.count_ones() < best.count_ones() {
            best = cur.clone();
        }
    }
    best
}

/// Paired logical operators; minimum-weight representatives for `n <= 30`.
#[must_use]
pub fn logical_operators(code: &CssCode) -> LogicalSet {
    let n = code.n;
    let mut xs: Vec<BitVec> = quotient_basis(&code.hz, &code.hx, n)
        .iter()
        .map(|v| min_weight(v, &code.hx))
        .collect();
    let zs: Vec<BitVec> = quotient_basis(&code.hx, &code.hz, n)
        .iter()
        .map(|v| min_weight(v, &code.hz))
        .collect();
    let k = xs.len();
    if k == 0 {
        return LogicalSet::default();
    }
    let mut pairing = BitMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            pairing.set(i, j, xs[i].dot(&zs[j]));
        }
    }
    // Re-pair the X side so that the given Z representatives stay minimal.
    let inv = pairing.inverse().expect("logical pairing is nondegenerate");
    let old = std::mem::take(&mut xs);
    for i in 0..k {
        let mut v = BitVec::zeros(n);
        for j in inv.row(i).ones() {
            v.xor_assign(&old[j]);
        }
        xs.push(min_weight(&v, &code.hx));
    }
    LogicalSet { x: xs, z: zs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_dual, build_lattice, shrunk_lattice};

    fn check_pairs(code: &CssCode, l: &LogicalSet) {
        for i in 0..l.len() {
            for j in 0..l.len() {
                assert_eq!(l.x[i].dot(&l.z[j]), i == j);
            }
            assert!(code.hz.iter().all(|r| !r.dot(&l.x[i])));
            assert!(code.hx.iter().all(|r| !r.dot(&l.z[i])));
        }
    }

    #[test]
    fn triangular_code() {
        let l = build_lattice("triangular_666", &[3]).unwrap();
        let c = color_code(&l, 0).unwrap();
        assert_eq!((c.n(), c.hx().len(), c.hz().len()), (7, 3, 3));
        assert_eq!(logical_count(&c), 1);
        let logs = logical_operators(&c);
        assert_eq!(logs.len(), 1);
        assert_eq!((logs.x[0].count_ones(), logs.z[0].count_ones()), (3, 3));
        check_pairs(&c, &logs);
        assert!(color_code(&l, 1).is_err());
    }

    #[test]
    fn torus_and_square_codes() {
        let l = build_lattice("hex_torus", &[3, 3]).unwrap();
        let c = color_code(&l, 0).unwrap();
        assert_eq!(logical_count(&c), 4);
        check_pairs(&c, &logical_operators(&c));
        let (la, _) = shrunk_lattice(&l, 1).unwrap();
        assert_eq!(logical_count(&toric_code(&la, 1).unwrap()), 2);
        let s = build_lattice("square_like_2d", &[2]).unwrap();
        assert_eq!(logical_count(&color_code(&s, 0).unwrap()), 2);
        let cube = build_lattice("hypercube_like", &[3]).unwrap();
        assert_eq!(logical_count(&color_code(&cube, 1).unwrap()), 3);
    }

    #[test]
    fn dual_matches_primal() {
        let dual = build_dual("hex_torus", &[3, 3]).unwrap();
        let cd = color_code(&dual, 0).unwrap();
        let cp = color_code(&dual.to_primal().unwrap(), 0).unwrap();
        assert_eq!(cd.n(), cp.n());
        assert_eq!(logical_count(&cd), logical_count(&cp));
        assert_eq!((cd.rank_x(), cd.rank_z()), (cp.rank_x(), cp.rank_z()));
    }

    #[test]
    fn ancillas_and_exports() {
        let l = build_lattice("triangular_666", &[3]).unwrap();
        let c = color_code(&l, 0).unwrap();
        assert_eq!(c.add_ancillas(0), c);
        let big = c.add_ancillas(4);
        assert_eq!((big.n(), logical_count(&big)), (11, 1));
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with("{\"n\":7,\"hx\":["));
        let back: CssCode = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let a = alist(c.hx(), 7);
        assert!(a.starts_with("7 3\n"));
    }

    #[test]
    fn rejects_noncommuting_rows() {
        let hx = vec![BitVec::from_indices(2, [0])];
        let hz = vec![BitVec::from_indices(2, [0])];
        assert!(CssCode::new(hx, hz, vec![Qubit::Index(0), Qubit::Index(1)]).is_err());
    }
}
