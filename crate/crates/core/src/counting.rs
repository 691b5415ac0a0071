//! Generator and relation counts for overlap groups of single cells, by
//! closed formulas in the face counts and by ranks of explicit operators.

use serde::Serialize;

use crate::clifford::isomorphic;
use crate::complex::ColoredComplex;
use crate::error::{Error, Result};
use crate::pauli::{PauliGroup, PauliOp};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C_i` for `i = 0..=d`, with `C_d = 1`.
fn extended(d: usize, c: &[usize]) -> Result<Vec<i64>> {
    if c.len() != d {
        return Err(Error::InvalidParams(format!(
            "expected {d} face counts, got {}",
            c.len()
        )));
    }
    Ok(c.iter().map(|&x| x as i64).chain([1]).collect())
}

/// Independent relations among the `(s-1)`-dimensional boundary generators
/// of a `d`-cell with boundary face counts `c[0..d]`; zero at `s = d`.
pub fn relation_count(d: usize, s: usize, c: &[usize]) -> Result<i64> {
    let cc = extended(d, c)?;
    if s == d {
        return Ok(0);
    }
    if s == 0 || s > d {
        return Err(Error::InvalidParams(format!("s = {s} outside 1..={d}")));
    }
    let (d, s) = (d as i64, s as i64);
    let head = binom(d - 1, s - 1) * sign(d - 1 - s);
    let tail: i64 = (0..=d - s - 2)
        .map(|i| binom(s + i, i + 1) * sign(i) * cc[(s + i + 1) as usize])
        .sum();
    Ok(head + tail)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellIdentities {
    pub counts: Vec<usize>,
    /// Left-hand side for each `s`; all zero when the counts are consistent.
    pub residuals: Vec<i64>,
}

impl CellIdentities {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.residuals.iter().all(|&r| r == 0)
    }
}

/// Linear identities satisfied by the face counts of a cell whose boundary is a sphere.
pub fn verify_cell_identities(c: &[usize], d: usize) -> Result<CellIdentities> {
    let cc = extended(d, c)?;
    let di = d as i64;
    let chi = 1 + sign(di - 1);
    let residuals = (0..di)
        .map(|s| {
            let low: i64 = (0..s)
                .map(|i| sign(i) * binom(di - 2 - i, di - 1 - s) * cc[(di - 1 - i) as usize])
                .sum();
            let high: i64 = (s + 1..di)
                .map(|i| sign(i) * binom(i - 1, s) * cc[i as usize])
                .sum();
            -binom(di - 1, s) * chi + sign(s) * cc[0] + low + high
        })
        .collect();
    Ok(CellIdentities {
        counts: c.to_vec(),
        residuals,
    })
}

/// Face counts `C_0..C_{d-1}` of the boundary of a top cell.
pub fn cell_counts(l: &ColoredComplex, cell: usize) -> Result<Vec<usize>> {
    let d = l.dimension();
    if l.cell(cell).dim != d {
        return Err(Error::InvalidLattice(format!(
            "cell {cell} is not a {d}-cell"
        )));
    }
    Ok((0..d).map(|k| l.subcells(cell, k).len()).collect())
}

/// `[G(O_CC ⊗ S), G(Z(O_CC ⊗ S)), G(O_TC), G(Z(O_TC))]` from face counts, for `k = d - 2`.
pub fn formula_counts(d: usize, c: &[usize]) -> Result<[i64; 4]> {
    if d < 2 {
        return Err(Error::InvalidParams("counts need d >= 2".into()));
    }
    let cc = extended(d, c)?;
    let k = d - 2;
    let i = |s| relation_count(d, s, c);
    let g_cc = cc[k + 1] - i(k + 1)? + cc[d - k - 1] - i(d - k - 1)? + cc[d - k - 1] - cc[0];
    let z_cc = cc[k + 2] - i(k + 2)? + cc[d - k] - i(d - k)? + cc[d - k - 1] - cc[0];
    let (di, ki) = (d as i64, k as i64);
    let z_tc: i64 = (0..=ki)
        .map(|j| sign(j) * binom(di - ki + j, j + 1) * cc[(di - ki + j) as usize])
        .sum();
    let g_tc = 2 * cc[d - k - 1] - z_tc;
    Ok([g_cc, z_cc, g_tc, z_tc])
}

/// Restrictions to `cell` of the color-code generators around it, with one
/// ancilla Z per surplus edge. Qubits are the cell's vertices, then ancillas.
pub fn color_overlap_group(l: &ColoredComplex, cell: usize) -> Result<PauliGroup> {
    let d = l.dimension();
    let verts = l.subcells(cell, 0);
    let edges = l.subcells(cell, 1);
    let ancillas = edges.len().checked_sub(verts.len()).ok_or_else(|| {
        Error::InvalidLattice(format!("cell {cell} has fewer edges than vertices"))
    })?;
    let n = verts.len() + ancillas;
    let pos = |v: usize| verts.binary_search(&v).expect("vertex of the cell");
    let mut gens = vec![PauliOp::x_on(n, 0..verts.len())];
    for f in l.subcells(cell, d - 1) {
        gens.push(PauliOp::x_on(n, l.vertices(f).iter().map(|&v| pos(v))));
    }
    for e in edges {
        gens.push(PauliOp::z_on(n, l.vertices(e).iter().map(|&v| pos(v))));
    }
    for a in 0..ancillas {
        gens.push(PauliOp::z_on(n, [verts.len() + a]));
    }
    PauliGroup::new(n, gens)
}

/// Restrictions to the edges of `cell` of the toric-code generators around it:
/// Z on each edge and, per boundary face, X on the edges leaving that face.
pub fn toric_overlap_group(l: &ColoredComplex, cell: usize) -> Result<PauliGroup> {
    let d = l.dimension();
    let edges = l.subcells(cell, 1);
    let n = edges.len();
    let mut gens: Vec<PauliOp> = (0..n).map(|j| PauliOp::z_on(n, [j])).collect();
    for f in l.subcells(cell, d - 1) {
        let fv = l.vertices(f);
        let leaving = edges
            .iter()
            .enumerate()
            .filter(|(_, &e)| l.vertices(e).iter().filter(|v| fv.contains(v)).count() == 1)
            .map(|(j, _)| j);
        gens.push(PauliOp::x_on(n, leaving));
    }
    PauliGroup::new(n, gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapCounts {
    pub cell: usize,
    pub counts: Vec<usize>,
    pub formula: [i64; 4],
    pub operators: [i64; 4],
    pub isomorphic: bool,
}

impl OverlapCounts {
    /// Both paths agree and the two sides have equal counts.
    #[must_use]
    pub fn ok(&self) -> bool {
        let f = self.formula;
        f == self.operators && f[0] == f[2] && f[1] == f[3] && self.isomorphic
    }
}

/// Compares formula and operator counts for the overlap groups of one top cell.
pub fn verify_overlap_counts(l: &ColoredComplex, cell: usize, k: usize) -> Result<OverlapCounts> {
    let d = l.dimension();
    if k + 2 != d {
        return Err(Error::InvalidParams(format!(
            "counts are implemented for k = d - 2, got k = {k}"
        )));
    }
    let counts = cell_counts(l, cell)?;
    let chi: i64 = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| sign(i as i64) * c as i64)
        .sum();
    if chi != 1 + sign(d as i64 - 1) {
        return Err(Error::InvalidLattice(format!(
            "boundary of cell {cell} is not a sphere"
        )));
    }
    let formula = formula_counts(d, &counts)?;
    let cc = color_overlap_group(l, cell)?;
    let tc = toric_overlap_group(l, cell)?;
    let operators =
        [cc.rank(), cc.center().rank(), tc.rank(), tc.center().rank()].map(|r| r as i64);
    Ok(OverlapCounts {
        cell,
        counts,
        formula,
        operators,
        isomorphic: isomorphic(&cc, &tc)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_lattice;

    const CUBE: [usize; 3] = [8, 12, 6];

    #[test]
    fn cube_relations() {
        assert_eq!(relation_count(3, 2, &CUBE).unwrap(), 2);
        assert_eq!(relation_count(3, 1, &CUBE).unwrap(), 5);
        assert_eq!(relation_count(3, 3, &CUBE).unwrap(), 0);
        assert!(relation_count(3, 0, &CUBE).is_err());
        assert!(relation_count(3, 1, &[8, 12]).is_err());
    }

    #[test]
    fn identities() {
        let r = verify_cell_identities(&CUBE, 3).unwrap();
        assert!(r.ok(), "{r:?}");
        assert!(!verify_cell_identities(&[8, 13, 6], 3).unwrap().ok());
        assert!(verify_cell_identities(&[6, 6], 2).unwrap().ok());
        assert!(verify_cell_identities(&[16, 32, 24, 8], 4).unwrap().ok());
    }

    #[test]
    fn cube_formulas() {
        assert_eq!(formula_counts(3, &CUBE).unwrap(), [15, 9, 15, 9]);
        assert_eq!(formula_counts(2, &[6, 6]).unwrap(), [10, 2, 10, 2]);
    }

    #[test]
    fn hypercube_cell() {
        let l = build_lattice("hypercube_like", &[3]).unwrap();
        let top = l.ids(3)[0];
        let r = verify_overlap_counts(&l, top, 1).unwrap();
        assert_eq!(r.counts, CUBE);
        assert!(r.ok(), "{r:?}");
        assert!(verify_overlap_counts(&l, top, 0).is_err());
    }
}
