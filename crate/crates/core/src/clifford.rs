//! Symplectic maps: the isomorphism test, synthesis from matched
//! commutation relations, application and block assembly.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::{anticommute, commutation_matrix, PauliGroup, PauliOp};
use crate::qubit::Qubit;

/// A Clifford map without phases, acting on `(x|z)` row vectors as `p -> p M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordMap {
    n: usize,
    matrix: BitMatrix,
    domain: Vec<Qubit>,
    codomain: Vec<Qubit>,
}

impl CliffordMap {
    #[must_use]
    pub fn identity(labels: Vec<Qubit>) -> Self {
        let n = labels.len();
        Self {
            n,
            matrix: BitMatrix::identity(2 * n),
            domain: labels.clone(),
            codomain: labels,
        }
    }

    /// Builds a map and checks that it is symplectic.
    pub fn new(matrix: BitMatrix, domain: Vec<Qubit>, codomain: Vec<Qubit>) -> Result<Self> {
        let n = domain.len();
        if codomain.len() != n {
            return Err(Error::SizeMismatch(n, codomain.len()));
        }
        if matrix.num_rows() != 2 * n || matrix.num_cols() != 2 * n {
            return Err(Error::SizeMismatch(2 * n, matrix.num_rows()));
        }
        let m = Self {
            n,
            matrix,
            domain,
            codomain,
        };
        if !m.is_symplectic() {
            return Err(Error::Synthesis("matrix is not symplectic".into()));
        }
        Ok(m)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn domain(&self) -> &[Qubit] {
        &self.domain
    }

    #[must_use]
    pub fn codomain(&self) -> &[Qubit] {
        &self.codomain
    }

    #[must_use]
    pub fn with_labels(mut self, domain: Vec<Qubit>, codomain: Vec<Qubit>) -> Self {
        assert_eq!(domain.len(), self.n);
        assert_eq!(codomain.len(), self.n);
        self.domain = domain;
        self.codomain = codomain;
        self
    }

    /// Checks `M J M^T = J`.
    #[must_use]
    pub fn is_symplectic(&self) -> bool {
        let rows: Vec<PauliOp> = self.matrix.rows().iter().map(PauliOp::from_sym).collect();
        let n = self.n;
        (0..2 * n).all(|i| {
            (i..2 * n).all(|j| {
                let expected = i != j && (i + n == j || j + n == i);
                anticommute(&rows[i], &rows[j]) == expected
            })
        })
    }

    pub fn apply(&self, p: &PauliOp) -> Result<PauliOp> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch(self.n, p.n()));
        }
        Ok(PauliOp::from_sym(&self.matrix.left_mul(&p.sym())))
    }

    pub fn apply_group(&self, g: &PauliGroup) -> Result<PauliGroup> {
        let gens = g
            .gens()
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        PauliGroup::new(self.n, gens)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.codomain != next.domain {
            return Err(Error::LabelMismatch(
                "codomain of the first map differs from domain of the second".into(),
            ));
        }
        Ok(Self {
            n: self.n,
            matrix: self.matrix.mul(&next.matrix),
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
        })
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            matrix: self
                .matrix
                .inverse()
                .expect("symplectic matrices are invertible"),
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
        }
    }
}

/// JSON form: qubit labels and the `2n` image rows as hex strings.
impl serde::Serialize for CliffordMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<String> = self.matrix.rows().iter().map(BitVec::to_hex).collect();
        let mut st = s.serialize_struct("CliffordMap", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("codomain", &self.codomain)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Isomorphism test for Pauli groups: equal rank and equal center rank.
pub fn isomorphic(a: &PauliGroup, b: &PauliGroup) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(a.rank() == b.rank() && a.center().rank() == b.center().rank())
}

/// Canonical generators: `pairs[i]` anticommute, everything else commutes.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub pairs: Vec<(PauliOp, PauliOp)>,
    pub central: Vec<PauliOp>,
    /// Each canonical element as a subset of the input generators.
    pub pair_exprs: Vec<(BitVec, BitVec)>,
    pub central_exprs: Vec<BitVec>,
}

impl Canonical {
    #[must_use]
    pub fn n1(&self) -> usize {
        self.pairs.len()
    }

    /// Length of the first row of the array: pairs plus central elements.
    #[must_use]
    pub fn n2(&self) -> usize {
        self.pairs.len() + self.central.len()
    }

    /// `A_1..A_{n1+n2}` laid out as `pairs.0, central, pairs.1`.
    #[must_use]
    pub fn array(&self) -> Vec<PauliOp> {
        self.pairs
            .iter()
            .map(|p| p.0.clone())
            .chain(self.central.iter().cloned())
            .chain(self.pairs.iter().map(|p| p.1.clone()))
            .collect()
    }
}

fn check_independent(gens: &[PauliOp]) -> Result<usize> {
    let n = gens.first().map_or(0, PauliOp::n);
    let g = PauliGroup::new(n, gens.to_vec())?;
    if g.rank() != gens.len() {
        return Err(Error::Dependent);
    }
    Ok(n)
}

/// Symplectic Gram-Schmidt over independent generators.
pub fn canonical_generators(gens: &[PauliOp]) -> Result<Canonical> {
    check_independent(gens)?;
    let m = gens.len();
    let mut work: Vec<(PauliOp, BitVec)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), BitVec::unit(m, i)))
        .collect();
    let mut out = Canonical {
        pairs: Vec::new(),
        central: Vec::new(),
        pair_exprs: Vec::new(),
        central_exprs: Vec::new(),
    };
    while !work.is_empty() {
        let (a, ea) = work.remove(0);
        match work.iter().position(|(b, _)| anticommute(&a, b)) {
            Some(j) => {
                let (b, eb) = work.remove(j);
                for (c, ec) in &mut work {
                    let with_a = anticommute(c, &a);
                    let with_b = anticommute(c, &b);
                    if with_b {
                        c.mul_assign(&a);
                        ec.xor_assign(&ea);
                    }
                    if with_a {
                        c.mul_assign(&b);
                        ec.xor_assign(&eb);
                    }
                }
                out.pairs.push((a, b));
                out.pair_exprs.push((ea, eb));
            }
            None => {
                out.central.push(a);
                out.central_exprs.push(ea);
            }
        }
    }
    Ok(out)
}

fn combine(gens: &[PauliOp], n: usize, expr: &BitVec) -> PauliOp {
    let mut p = PauliOp::identity(n);
    for i in expr.ones() {
        p.mul_assign(&gens[i]);
    }
    p
}

/// Finds `d` with prescribed symplectic products against `constraints`,
/// taking free variables as zero.
fn solve_products(n: usize, constraints: &[(PauliOp, bool)]) -> Option<PauliOp> {
    // <d, v> = d . (v.z | v.x); solve the linear system by Gauss-Jordan.
    let width = 2 * n;
    let mut rows: Vec<(BitVec, bool)> = constraints
        .iter()
        .map(|(v, t)| (v.z().concat(v.x()), *t))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0.get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0.get(c) {
                row.0.xor_assign(&pivot.0);
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut d = BitVec::zeros(width);
    for (k, &c) in pivots.iter().enumerate() {
        if rows[k].1 {
            d.set(c, true);
        }
    }
    Some(PauliOp::from_sym(&d))
}

fn project_out(e: &PauliOp, pairs: &[(PauliOp, PauliOp)]) -> PauliOp {
    let mut p = e.clone();
    for (a, b) in pairs {
        let with_a = anticommute(e, a);
        let with_b = anticommute(e, b);
        if with_b {
            p.mul_assign(a);
        }
        if with_a {
            p.mul_assign(b);
        }
    }
    p
}

/// Completes a canonical array to a full symplectic basis, deterministically:
/// partners of central elements come from a linear solve with free variables
/// set to zero, the remaining pairs from the standard basis in index order.
fn complete_basis(
    n: usize,
    pairs: &[(PauliOp, PauliOp)],
    central: &[PauliOp],
) -> Result<BitMatrix> {
    let mut full: Vec<(PauliOp, PauliOp)> = pairs.to_vec();
    let mut partners: Vec<PauliOp> = Vec::new();
    for k in 0..central.len() {
        let mut cons: Vec<(PauliOp, bool)> = Vec::new();
        for (l, cl) in central.iter().enumerate() {
            cons.push((cl.clone(), l == k));
        }
        for (a, b) in pairs {
            cons.push((a.clone(), false));
            cons.push((b.clone(), false));
        }
        for d in &partners {
            cons.push((d.clone(), false));
        }
        let d = solve_products(n, &cons)
            .ok_or_else(|| Error::Synthesis("no partner for central element".into()))?;
        partners.push(d);
    }
    for (c, d) in central.iter().zip(&partners) {
        full.push((c.clone(), d.clone()));
    }
    let std_basis = |i: usize| PauliOp::from_sym(&BitVec::unit(2 * n, i));
    while full.len() < n {
        let u = (0..2 * n)
            .map(|i| project_out(&std_basis(i), &full))
            .find(|p| !p.is_identity())
            .ok_or_else(|| Error::Synthesis("basis completion stalled".into()))?;
        let v = (0..2 * n)
            .map(|i| project_out(&std_basis(i), &full))
            .find(|p| anticommute(p, &u))
            .ok_or_else(|| Error::Synthesis("basis completion found no partner".into()))?;
        full.push((u, v));
    }
    // Layout: canonical pairs, central elements, completion, then all partners.
    let rows: Vec<BitVec> = full
        .iter()
        .map(|p| p.0.sym())
        .chain(full.iter().map(|p| p.1.sym()))
        .collect();
    Ok(BitMatrix::from_rows(rows, 2 * n))
}

/// A symplectic `M` with `g_j M = h_j` for all `j`, given matching commutation matrices.
pub fn synthesize(g: &[PauliOp], h: &[PauliOp]) -> Result<CliffordMap> {
    if g.len() != h.len() {
        return Err(Error::SizeMismatch(g.len(), h.len()));
    }
    let n = check_independent(g)?;
    let nh = check_independent(h)?;
    if !g.is_empty() && n != nh {
        return Err(Error::SizeMismatch(n, nh));
    }
    if commutation_matrix(g) != commutation_matrix(h) {
        return Err(Error::CommutationMismatch);
    }
    let labels: Vec<Qubit> = (0..n).map(Qubit::Index).collect();
    if g.is_empty() {
        return Ok(CliffordMap::identity(labels));
    }
    let cg = canonical_generators(g)?;
    let h_pairs: Vec<(PauliOp, PauliOp)> = cg
        .pair_exprs
        .iter()
        .map(|(ea, eb)| (combine(h, n, ea), combine(h, n, eb)))
        .collect();
    let h_central: Vec<PauliOp> = cg.central_exprs.iter().map(|e| combine(h, n, e)).collect();
    let gb = complete_basis(n, &cg.pairs, &cg.central)?;
    let hb = complete_basis(n, &h_pairs, &h_central)?;
    let ginv = gb
        .inverse()
        .ok_or_else(|| Error::Synthesis("basis is singular".into()))?;
    let map = CliffordMap::new(ginv.mul(&hb), labels.clone(), labels)?;
    for (gj, hj) in g.iter().zip(h) {
        if &map.apply(gj)? != hj {
            return Err(Error::Synthesis("image check failed".into()));
        }
    }
    Ok(map)
}

/// Block map acting as each local map on its labels and as the identity on
/// labels shared verbatim between `domain` and `codomain`.
pub fn assemble(
    local: &[CliffordMap],
    domain: &[Qubit],
    codomain: &[Qubit],
) -> Result<CliffordMap> {
    let n = domain.len();
    if codomain.len() != n {
        return Err(Error::SizeMismatch(n, codomain.len()));
    }
    let dpos: HashMap<Qubit, usize> = domain.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let cpos: HashMap<Qubit, usize> = codomain.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut dused = vec![false; n];
    let mut cused = vec![false; n];
    let mut m = BitMatrix::zeros(2 * n, 2 * n);
    for map in local {
        let lookup = |labels: &[Qubit],
                      pos: &HashMap<Qubit, usize>,
                      used: &mut [bool]|
         -> Result<Vec<usize>> {
            labels
                .iter()
                .map(|q| {
                    let &i = pos
                        .get(q)
                        .ok_or_else(|| Error::LabelMismatch(format!("unknown qubit {q}")))?;
                    if used[i] {
                        return Err(Error::OverlappingDomains(q.to_string()));
                    }
                    used[i] = true;
                    Ok(i)
                })
                .collect()
        };
        let d = lookup(&map.domain, &dpos, &mut dused)?;
        let c = lookup(&map.codomain, &cpos, &mut cused)?;
        let k = map.n;
        for r in 0..2 * k {
            let gr = if r < k { d[r] } else { n + d[r - k] };
            let row = m.row_mut(gr);
            for j in map.matrix.row(r).ones() {
                row.set(if j < k { c[j] } else { n + c[j - k] }, true);
            }
        }
    }
    for i in (0..n).filter(|&i| !dused[i]) {
        let q = domain[i];
        let &j = cpos
            .get(&q)
            .ok_or_else(|| Error::LabelMismatch(format!("uncovered qubit {q} has no image")))?;
        if cused[j] {
            return Err(Error::OverlappingDomains(q.to_string()));
        }
        cused[j] = true;
        m.set(i, j, true);
        m.set(n + i, n + j, true);
    }
    CliffordMap::new(m, domain.to_vec(), codomain.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> Vec<PauliOp> {
        s.split_whitespace().map(p).collect()
    }

    #[test]
    fn isomorphism_examples() {
        let x = PauliGroup::parse("X").unwrap();
        let z = PauliGroup::parse("Z").unwrap();
        assert!(isomorphic(&x, &z).unwrap());
        let full = PauliGroup::parse("XI ZI").unwrap();
        let abel = PauliGroup::parse("XI IX").unwrap();
        assert!(!isomorphic(&full, &abel).unwrap());
    }

    #[test]
    fn canonical_small() {
        let c = canonical_generators(&ps("X Z")).unwrap();
        assert_eq!((c.n1(), c.n2()), (1, 1));
        assert_eq!(c.pairs[0].0, p("X"));
        assert_eq!(c.pairs[0].1, p("Z"));
        let c = canonical_generators(&ps("ZZ XX")).unwrap();
        assert_eq!((c.n1(), c.n2()), (0, 2));
        assert!(canonical_generators(&ps("XX XX")).is_err());
    }

    #[test]
    fn identity_synthesis() {
        let basis = ps("XI IX ZI IZ");
        let m = synthesize(&basis, &basis).unwrap();
        assert_eq!(m.matrix(), &BitMatrix::identity(4));
    }

    #[test]
    fn hadamard_like() {
        let m = synthesize(&ps("X Z"), &ps("Z X")).unwrap();
        assert_eq!(m.apply(&p("Y")).unwrap(), p("Y"));
        assert!(synthesize(&ps("X Z"), &ps("Z Z")).is_err());
        assert!(synthesize(&ps("XI IX"), &ps("XI ZI")).is_err());
    }

    #[test]
    fn partial_images_and_inverse() {
        let g = ps("ZZI IZZ XXX");
        let h = ps("ZII IZI IIZ");
        let m = synthesize(&g, &h).unwrap();
        for (a, b) in g.iter().zip(&h) {
            assert_eq!(&m.apply(a).unwrap(), b);
        }
        let back = m.inverse();
        assert_eq!(back.apply(&h[2]).unwrap(), g[2]);
        let round = m.then(&back).unwrap();
        assert_eq!(round.matrix(), &BitMatrix::identity(6));
    }

    #[test]
    fn assemble_blocks() {
        let h = synthesize(&ps("X Z"), &ps("Z X")).unwrap();
        let q = |i| Qubit::Index(i);
        let h0 = h.clone().with_labels(vec![q(0)], vec![q(0)]);
        let h1 = h.with_labels(vec![q(1)], vec![q(1)]);
        let both = assemble(
            &[h0.clone(), h1.clone()],
            &[q(0), q(1), q(2)],
            &[q(0), q(1), q(2)],
        )
        .unwrap();
        assert_eq!(both.apply(&p("XXX")).unwrap(), p("ZZX"));
        let swapped =
            assemble(&[h1, h0.clone()], &[q(0), q(1), q(2)], &[q(0), q(1), q(2)]).unwrap();
        assert_eq!(both, swapped);
        assert!(matches!(
            assemble(&[h0.clone(), h0], &[q(0), q(1)], &[q(0), q(1)]),
            Err(Error::OverlappingDomains(_))
        ));
    }
}
