//! Diagonal gates with linear phase functions: transversal R_d, group
//! commutators with X strings, and their action on the code space.

use std::collections::HashMap;

use serde::Serialize;

use crate::codes::{logical_operators, CssCode, LogicalSet};
use crate::complex::{self, ColoredComplex};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::pauli::PauliOp;
use crate::qubit::Qubit;
use crate::unfold::Disentangled;

/// `|x> -> exp(2 pi i (sum_j coeffs_j x_j + constant) / 2^level) |x>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DiagonalPhaseOp {
    level: u32,
    coeffs: Vec<u64>,
    constant: u64,
}

impl DiagonalPhaseOp {
    pub fn new(level: u32, coeffs: Vec<u64>, constant: u64) -> Result<Self> {
        if level == 0 || level > 62 {
            return Err(Error::InvalidParams(format!(
                "level {level} out of range 1..=62"
            )));
        }
        let m = 1u64 << level;
        Ok(Self {
            level,
            coeffs: coeffs.into_iter().map(|c| c % m).collect(),
            constant: constant % m,
        })
    }

    #[must_use]
    pub fn identity(n: usize, level: u32) -> Self {
        Self::new(level, vec![0; n], 0).expect("level checked by caller")
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    #[must_use]
    pub fn level(&self) -> u32 {
        self.level
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        1 << self.level
    }

    #[must_use]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[must_use]
    pub fn constant(&self) -> u64 {
        self.constant
    }

    /// Phase on the basis state `x`, in units of `2 pi / 2^level`.
    #[must_use]
    pub fn phase(&self, x: &BitVec) -> u64 {
        let m = self.modulus();
        x.ones()
            .fold(self.constant, |acc, j| (acc + self.coeffs[j]) % m)
    }

    /// Smallest level at which the same operator can be written.
    #[must_use]
    pub fn effective_level(&self) -> u32 {
        let mut level = self.level;
        while level > 0 {
            let half = 1u64 << (self.level - level);
            if self
                .coeffs
                .iter()
                .chain([&self.constant])
                .all(|c| c % (half * 2) == 0)
            {
                level -= 1;
            } else {
                break;
            }
        }
        level
    }

    /// Support of the Z string when every coefficient is 0 or `2^(level-1)`.
    #[must_use]
    pub fn z_support(&self) -> Option<BitVec> {
        let half = self.modulus() / 2;
        self.coeffs.iter().all(|&c| c == 0 || c == half).then(|| {
            BitVec::from_indices(self.n(), (0..self.n()).filter(|&j| self.coeffs[j] == half))
        })
    }

    /// Product of two diagonal operators of equal level.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() || self.level != other.level {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.level, coeffs, self.constant + other.constant)
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let m = self.modulus();
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| (m - c) % m).collect(),
            constant: (m - self.constant) % m,
        }
    }

    fn is_zero(&self) -> bool {
        self.constant == 0 && self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Two-coloring of the qubit graph, by vertex id.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Bipartition {
    pub t: Vec<usize>,
    pub tc: Vec<usize>,
}

pub fn bipartition(l: &ColoredComplex) -> Result<Bipartition> {
    let (t, tc) = complex::bipartition(l)?;
    Ok(Bipartition { t, tc })
}

/// `R_level` on `T` and its inverse on the complement, for codes with qubits on vertices.
pub fn transversal_rd(code: &CssCode, bip: &Bipartition, level: u32) -> Result<DiagonalPhaseOp> {
    let m = 1u64 << level.min(62);
    let coeffs = code
        .qubits()
        .iter()
        .map(|q| match q {
            Qubit::Vertex(v) if bip.t.binary_search(v).is_ok() => Ok(1),
            Qubit::Vertex(v) if bip.tc.binary_search(v).is_ok() => Ok(m - 1),
            _ => Err(Error::Gate(format!(
                "qubit {q} is not covered by the bipartition"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    DiagonalPhaseOp::new(level, coeffs, 0)
}

/// Group commutator `D X_a D^dag X_a`: coefficients double on the support of
/// `a` and vanish elsewhere; the constant is minus their sum.
pub fn commutator_with_x(d: &DiagonalPhaseOp, a: &PauliOp) -> Result<DiagonalPhaseOp> {
    if !a.is_x_type() {
        return Err(Error::NotXType);
    }
    if a.n() != d.n() {
        return Err(Error::SizeMismatch(d.n(), a.n()));
    }
    commutator_bits(d, a.x())
}

fn commutator_bits(d: &DiagonalPhaseOp, a: &BitVec) -> Result<DiagonalPhaseOp> {
    let m = d.modulus();
    let mut coeffs = vec![0u64; d.n()];
    let mut sum = 0u64;
    for j in a.ones() {
        coeffs[j] = 2 * d.coeffs[j] % m;
        sum = (sum + d.coeffs[j]) % m;
    }
    DiagonalPhaseOp::new(d.level, coeffs, (m - sum) % m)
}

/// Vectors spanning the support of every code state: X checks and X logicals.
fn codeword_span(code: &CssCode) -> Vec<BitVec> {
    let mut e = Echelon::new(code.n());
    let logs = logical_operators(code);
    code.hx()
        .iter()
        .chain(&logs.x)
        .filter(|r| e.insert(r))
        .cloned()
        .collect()
}

fn trivial_on(
    d: &DiagonalPhaseOp,
    gens: &[BitVec],
    memo: &mut HashMap<DiagonalPhaseOp, bool>,
) -> bool {
    if d.constant != 0 {
        return false;
    }
    if d.coeffs.iter().all(|&c| c == 0) {
        return true;
    }
    if let Some(&r) = memo.get(d) {
        return r;
    }
    let r = gens.iter().all(|a| {
        let k = commutator_bits(d, a).expect("sizes agree");
        k.is_zero() || trivial_on(&k, gens, memo)
    });
    memo.insert(d.clone(), r);
    r
}

/// True when `d` has phase 0 on every basis state in the support of the code space.
pub fn is_codespace_identity(d: &DiagonalPhaseOp, code: &CssCode) -> Result<bool> {
    if d.n() != code.n() {
        return Err(Error::SizeMismatch(d.n(), code.n()));
    }
    Ok(trivial_on(d, &codeword_span(code), &mut HashMap::new()))
}

/// True when commuting `d` with every X check gives the identity on the code space.
pub fn preserves_codespace(d: &DiagonalPhaseOp, code: &CssCode) -> Result<bool> {
    if d.n() != code.n() {
        return Err(Error::SizeMismatch(d.n(), code.n()));
    }
    let gens = codeword_span(code);
    let mut memo = HashMap::new();
    Ok(code.hx().iter().all(|s| {
        let k = commutator_bits(d, s).expect("sizes agree");
        trivial_on(&k, &gens, &mut memo)
    }))
}

/// Row `(l, f(l))` of a logical phase table.
pub type PhaseRow = (Vec<u8>, u64);

/// Phase of `d` on each logical basis state, labelled by the X logicals.
pub fn logical_action(
    d: &DiagonalPhaseOp,
    code: &CssCode,
    logicals: &LogicalSet,
) -> Result<Vec<PhaseRow>> {
    if !preserves_codespace(d, code)? {
        return Err(Error::NotCodespacePreserving);
    }
    let k = logicals.len();
    if k > 20 {
        return Err(Error::InvalidParams(format!(
            "{k} logical qubits is too many to tabulate"
        )));
    }
    Ok((0..1usize << k)
        .map(|idx| {
            let l: Vec<u8> = (0..k).map(|j| (idx >> (k - 1 - j) & 1) as u8).collect();
            let mut x = BitVec::zeros(code.n());
            for (j, &bit) in l.iter().enumerate() {
                if bit == 1 {
                    x.xor_assign(&logicals.x[j]);
                }
            }
            (l, d.phase(&x))
        })
        .collect())
}

/// True when `f(l) = 2^(level-1) l_1 ... l_k` for every row.
#[must_use]
pub fn is_multi_controlled_z(table: &[PhaseRow], level: u32) -> bool {
    let half = 1u64 << (level - 1);
    table
        .iter()
        .all(|(l, f)| *f == if l.iter().all(|&b| b == 1) { half } else { 0 })
}

/// Logical operators of the color code named after the toric-code copies:
/// `z[i]` is the pull-back of the i-th toric Z logical, `x` is the dual basis.
pub fn unfolded_logicals(dis: &Disentangled, base: &CssCode) -> Result<LogicalSet> {
    let n = dis.n();
    let nv = base.n();
    if dis.u.domain()[..nv] != *base.qubits() {
        return Err(Error::LabelMismatch(
            "base code qubits differ from the unfolded vertices".into(),
        ));
    }
    let back = dis.u.inverse();
    let mut hx = Echelon::new(nv);
    for r in base.hx() {
        hx.insert(r);
    }
    let mut zbars = Vec::new();
    for part in &dis.parts {
        for z in logical_operators(&part.code).z {
            let op = PauliOp::new(
                BitVec::zeros(n),
                BitVec::from_indices(n, z.ones().map(|j| part.positions[j])),
            );
            let pulled = back.apply(&op)?;
            if pulled.x().ones().any(|j| j >= nv) {
                return Err(Error::Gate(
                    "pulled-back logical acts with X on an ancilla".into(),
                ));
            }
            let x = pulled.x().slice(0, nv);
            if !hx.contains(&x) {
                return Err(Error::Gate(
                    "pulled-back logical is not Z-type modulo X checks".into(),
                ));
            }
            zbars.push(pulled.z().slice(0, nv));
        }
    }
    let cc = logical_operators(base);
    let k = zbars.len();
    if cc.len() != k {
        return Err(Error::Gate(format!(
            "{} color-code logicals but {k} toric logicals",
            cc.len()
        )));
    }
    let mut pairing = crate::gf2::BitMatrix::zeros(k, k);
    for a in 0..k {
        for j in 0..k {
            pairing.set(a, j, cc.x[a].dot(&zbars[j]));
        }
    }
    let inv = pairing
        .inverse()
        .ok_or_else(|| Error::Gate("toric logicals are not independent".into()))?;
    let xbars = (0..k)
        .map(|i| {
            let mut v = BitVec::zeros(nv);
            for a in inv.row(i).ones() {
                v.xor_assign(&cc.x[a]);
            }
            v
        })
        .collect();
    Ok(LogicalSet { x: xbars, z: zbars })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub order: Vec<usize>,
    /// Effective level after each commutator.
    pub levels: Vec<u32>,
    /// Constant term after each commutator, in units of `2 pi / 2^level`.
    pub constants: Vec<u64>,
    /// Final Z string equals the last logical Z up to Z checks.
    pub matches: bool,
}

/// Commutes transversal `R_level` with `X̄^(order_1) .. X̄^(order_{level-1})`
/// and compares the remaining Z string with `Z̄^(order_level)`.
pub fn commutator_chain(
    code: &CssCode,
    logicals: &LogicalSet,
    order: &[usize],
    bip: &Bipartition,
    level: u32,
) -> Result<ChainReport> {
    let k = logicals.len();
    if order.len() != level as usize || level < 2 || order.iter().any(|&i| i >= k) {
        return Err(Error::InvalidParams(format!(
            "order must list {level} logical indices below {k}"
        )));
    }
    let mut d = transversal_rd(code, bip, level)?;
    let (mut levels, mut constants) = (Vec::new(), Vec::new());
    for &i in &order[..order.len() - 1] {
        d = commutator_bits(&d, &logicals.x[i])?;
        levels.push(d.effective_level());
        constants.push(d.constant());
    }
    let z = d
        .z_support()
        .ok_or_else(|| Error::Gate("chain ended at a non-Pauli operator".into()))?;
    let mut hz = Echelon::new(code.n());
    for r in code.hz() {
        hz.insert(r);
    }
    let matches = hz.contains(&z.xor(&logicals.z[order[order.len() - 1]]));
    Ok(ChainReport {
        order: order.to_vec(),
        levels,
        constants,
        matches,
    })
}
