//! Phase-free Pauli operators and groups in the binary symplectic picture.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVec, Echelon};

/// A Pauli operator without phase, stored as `(x|z)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
}

impl PauliOp {
    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    #[must_use]
    pub fn new(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len(), "x and z must have equal length");
        Self { x, z }
    }

    #[must_use]
    pub fn x_on<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self {
            x: BitVec::from_indices(n, support),
            z: BitVec::zeros(n),
        }
    }

    #[must_use]
    pub fn z_on<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::from_indices(n, support),
        }
    }

    /// Splits a `2n` symplectic row into a Pauli.
    #[must_use]
    pub fn from_sym(v: &BitVec) -> Self {
        let n = v.len() / 2;
        Self {
            x: v.slice(0, n),
            z: v.slice(n, n),
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[must_use]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[must_use]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    /// The `2n` row `(x|z)`.
    #[must_use]
    pub fn sym(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    #[must_use]
    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    #[must_use]
    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.x.xor(&self.z).count_ones() + self.x.and(&self.z).count_ones()
    }

    /// Qubits where the operator acts non-trivially.
    #[must_use]
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.x.ones().chain(self.z.ones()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Product without phase.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn mul_assign(&mut self, other: &Self) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Restriction to the qubits in `q`, re-indexed in the order of `q`.
    #[must_use]
    pub fn restrict(&self, q: &[usize]) -> Self {
        Self {
            x: self.x.select(q),
            z: self.z.select(q),
        }
    }

    /// Embeds into `n` qubits, sending local qubit `k` to `positions[k]`.
    #[must_use]
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n());
        Self {
            x: BitVec::from_indices(n, self.x.ones().map(|k| positions[k])),
            z: BitVec::from_indices(n, self.z.ones().map(|k| positions[k])),
        }
    }
}

/// Symplectic product: `false` when the operators commute.
pub fn commutes(a: &PauliOp, b: &PauliOp) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(anticommute(a, b))
}

/// Symplectic product of equal-size operators, `true` when they anticommute.
#[must_use]
pub fn anticommute(a: &PauliOp, b: &PauliOp) -> bool {
    a.x.dot(&b.z) ^ a.z.dot(&b.x)
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let n = s.chars().count();
        let mut p = Self::identity(n);
        for (i, c) in s.chars().enumerate() {
            match c {
                'I' | '_' => {}
                'X' => p.x.set(i, true),
                'Z' => p.z.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true);
                }
                other => return Err(Error::Parse(format!("unexpected Pauli letter `{other}`"))),
            }
        }
        Ok(p)
    }
}

/// A Pauli group given by a generator list; semantics are GF(2) spans.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliGroup {
    n: usize,
    gens: Vec<PauliOp>,
}

impl PauliGroup {
    pub fn new(n: usize, gens: Vec<PauliOp>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::SizeMismatch(n, g.n()));
        }
        Ok(Self { n, gens })
    }

    #[must_use]
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            gens: Vec::new(),
        }
    }

    /// Parses whitespace-separated Pauli strings.
    pub fn parse(text: &str) -> Result<Self> {
        let gens: Vec<PauliOp> = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()?;
        let n = gens.first().map_or(0, PauliOp::n);
        Self::new(n, gens)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn gens(&self) -> &[PauliOp] {
        &self.gens
    }

    #[must_use]
    pub fn into_gens(self) -> Vec<PauliOp> {
        self.gens
    }

    pub fn push(&mut self, p: PauliOp) {
        assert_eq!(p.n(), self.n);
        self.gens.push(p);
    }

    #[must_use]
    pub fn sym_rows(&self) -> Vec<BitVec> {
        self.gens.iter().map(PauliOp::sym).collect()
    }

    #[must_use]
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(2 * self.n);
        for g in &self.gens {
            e.insert(&g.sym());
        }
        e
    }

    /// Number of independent generators.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    #[must_use]
    pub fn contains(&self, p: &PauliOp) -> bool {
        self.echelon().contains(&p.sym())
    }

    /// An independent generating set, chosen greedily in generator order.
    #[must_use]
    pub fn independent(&self) -> Self {
        let mut e = Echelon::new(2 * self.n);
        let gens = self
            .gens
            .iter()
            .filter(|g| e.insert(&g.sym()))
            .cloned()
            .collect();
        Self { n: self.n, gens }
    }

    /// Generators of the elements of the span that commute with every generator.
    #[must_use]
    pub fn center(&self) -> Self {
        let c = commutation_matrix(&self.gens);
        let combos = gf2::kernel(c.rows(), self.gens.len());
        let elems = combos
            .iter()
            .map(|a| {
                let mut p = PauliOp::identity(self.n);
                for i in a.ones() {
                    p.mul_assign(&self.gens[i]);
                }
                p
            })
            .collect();
        Self {
            n: self.n,
            gens: elems,
        }
        .independent()
    }

    /// Restriction of every generator to `q` (re-indexed in the order of `q`).
    #[must_use]
    pub fn restrict(&self, q: &[usize]) -> Self {
        Self {
            n: q.len(),
            gens: self.gens.iter().map(|g| g.restrict(q)).collect(),
        }
    }

    #[must_use]
    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| !anticommute(a, b)))
    }
}

/// Group generated by the restrictions of the generators of `s` to `q`.
#[must_use]
pub fn overlap_group(s: &PauliGroup, q: &[usize]) -> PauliGroup {
    s.restrict(q)
}

/// Span equality over GF(2).
pub fn equal_span(a: &PauliGroup, b: &PauliGroup) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    Ok(gf2::equal_span(&a.sym_rows(), &b.sym_rows()))
}

/// `c[i][j] = 1` when generators `i` and `j` anticommute.
#[must_use]
pub fn commutation_matrix(gens: &[PauliOp]) -> BitMatrix {
    let m = gens.len();
    let mut c = BitMatrix::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            if anticommute(&gens[i], &gens[j]) {
                c.set(i, j, true);
                c.set(j, i, true);
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_anticommutation() {
        assert!(commutes(&p("X"), &p("Z")).unwrap());
        assert!(!commutes(&p("XX"), &p("ZZ")).unwrap());
        assert!(commutes(&p("X"), &p("ZZ")).is_err());
    }

    #[test]
    fn parse_and_display() {
        let q = p("XYZI");
        assert_eq!(q.to_string(), "XYZI");
        assert_eq!(q.weight(), 3);
        assert!("XQ".parse::<PauliOp>().is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(PauliGroup::trivial(3).rank(), 0);
        let g = PauliGroup::parse("XXI IZZ XXI").unwrap();
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn centers() {
        let full = PauliGroup::parse("X Z").unwrap();
        assert_eq!(full.center().rank(), 0);
        let abelian = PauliGroup::parse("XX ZZ").unwrap();
        assert_eq!(abelian.center().rank(), 2);
        assert!(abelian.is_abelian());
    }

    #[test]
    fn spans() {
        let a = PauliGroup::parse("XX ZZ").unwrap();
        let b = PauliGroup::parse("XX YY").unwrap();
        assert!(equal_span(&a, &b).unwrap());
        let x = PauliGroup::parse("X").unwrap();
        let z = PauliGroup::parse("Z").unwrap();
        assert!(!equal_span(&x, &z).unwrap());
    }

    #[test]
    fn small_commutation_matrices() {
        let c = commutation_matrix(&[p("X"), p("Z")]);
        assert!(c.get(0, 1) && c.get(1, 0) && !c.get(0, 0));
        assert_eq!(commutation_matrix(&[p("XZ")]).rows().len(), 1);
    }

    #[test]
    fn overlap_restricts() {
        let s = PauliGroup::parse("XXXX ZZII").unwrap();
        assert_eq!(overlap_group(&s, &[]).rank(), 0);
        assert!(equal_span(&overlap_group(&s, &[0, 1, 2, 3]), &s).unwrap());
        let o = overlap_group(&s, &[1, 2]);
        assert_eq!(o.gens()[0].to_string(), "XX");
        assert_eq!(o.gens()[1].to_string(), "ZI");
    }
}
