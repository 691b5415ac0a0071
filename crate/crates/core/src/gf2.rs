//! Packed GF(2) vectors and matrices.

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    #[must_use]
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    #[must_use]
    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copy of bits `start..start+len`.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len);
        Self::from_indices(
            len,
            self.ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    /// Picks the listed positions into a new vector, in the given order.
    #[must_use]
    pub fn select(&self, positions: &[usize]) -> Self {
        Self::from_indices(
            positions.len(),
            positions
                .iter()
                .enumerate()
                .filter(|(_, &p)| self.get(p))
                .map(|(k, _)| k),
        )
    }

    /// Lowercase hex, most significant nibble first, padded to `ceil(len/4)` digits.
    #[must_use]
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < self.len && self.get(i) {
                    nib |= 1 << b;
                }
            }
            s.push(char::from_digit(u32::from(nib), 16).unwrap_or('0'));
        }
        s
    }

    pub fn from_hex(len: usize, hex: &str) -> Option<Self> {
        let mut v = Self::zeros(len);
        for (d, c) in hex.chars().rev().enumerate() {
            let nib = c.to_digit(16)?;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= len {
                        return None;
                    }
                    v.set(i, true);
                }
            }
        }
        Some(v)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Incremental row-echelon basis with lowest-index pivots.
///
/// Rows are stored in insertion order; each new row is reduced against all
/// earlier rows before its pivot is taken, so reduction in insertion order is
/// exact. When `track` is on, every basis row carries the combination of
/// inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVec>>,
    inserted: usize,
    capacity: usize,
}

impl Echelon {
    #[must_use]
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            capacity: 0,
        }
    }

    /// Tracks combinations of up to `capacity` inserted vectors.
    #[must_use]
    pub fn tracking(width: usize, capacity: usize) -> Self {
        Self {
            combos: Some(Vec::new()),
            capacity,
            ..Self::new(width)
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[must_use]
    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` and returns the residue together with the combination of
    /// basis rows used (as a combination of inserted vectors when tracking).
    #[must_use]
    pub fn reduce_tracked(&self, v: &BitVec) -> (BitVec, Option<BitVec>) {
        let mut r = v.clone();
        let mut combo = self.combos.as_ref().map(|_| BitVec::zeros(self.capacity));
        for (k, row) in self.rows.iter().enumerate() {
            if r.get(self.pivots[k]) {
                r.xor_assign(row);
                if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                    c.xor_assign(&cs[k]);
                }
            }
        }
        (r, combo)
    }

    #[must_use]
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (k, row) in self.rows.iter().enumerate() {
            if r.get(self.pivots[k]) {
                r.xor_assign(row);
            }
        }
        r
    }

    #[must_use]
    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true when it was independent of the current rows.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.width, "width mismatch");
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce_tracked(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                if let Some(cs) = self.combos.as_mut() {
                    let mut c = combo.unwrap_or_else(|| BitVec::zeros(self.capacity));
                    assert!(idx < self.capacity, "tracking capacity exceeded");
                    c.flip(idx);
                    cs.push(c);
                }
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Expresses `v` as a combination of inserted vectors, if it lies in the span.
    #[must_use]
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce_tracked(v);
        if r.is_zero() {
            combo
        } else {
            None
        }
    }
}

/// Row rank of a list of vectors.
#[must_use]
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{x : rows . x = 0}` for a matrix with `width` columns.
#[must_use]
pub fn kernel(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    // Reduced row echelon form, then one kernel vector per free column.
    let mut m: Vec<BitVec> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| m[i].get(c)) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; width];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut x = BitVec::unit(width, free);
        for (k, &pc) in pivot_cols.iter().enumerate() {
            if m[k].get(free) {
                x.set(pc, true);
            }
        }
        basis.push(x);
    }
    basis
}

/// True when both lists span the same subspace.
#[must_use]
pub fn equal_span(a: &[BitVec], b: &[BitVec]) -> bool {
    let width = a.first().or(b.first()).map_or(0, BitVec::len);
    let mut ea = Echelon::new(width);
    for r in a {
        ea.insert(r);
    }
    let mut eb = Echelon::new(width);
    for r in b {
        eb.insert(r);
    }
    ea.rank() == eb.rank() && b.iter().all(|r| ea.contains(r))
}

/// Dense square or rectangular matrix stored as rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    #[must_use]
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row width mismatch");
        Self { cols, rows }
    }

    #[must_use]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    /// Row vector times matrix.
    #[must_use]
    pub fn left_mul(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows.len(), "dimension mismatch");
        let mut out = BitVec::zeros(self.cols);
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows.len(), "dimension mismatch");
        Self {
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.left_mul(r)).collect(),
        }
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| a[i].get(c))?;
            a.swap(c, p);
            inv.swap(c, p);
            let (pa, pi) = (a[c].clone(), inv[c].clone());
            for i in 0..n {
                if i != c && a[i].get(c) {
                    a[i].xor_assign(&pa);
                    inv[i].xor_assign(&pi);
                }
            }
        }
        Some(Self { cols: n, rows: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn basic_ops() {
        let a = bv("1100101");
        let b = bv("0110100");
        assert_eq!(a.xor(&b), bv("1010001"));
        assert!(!a.dot(&b));
        assert!(a.dot(&bv("1000000")));
        assert_eq!(a.count_ones(), 4);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 1, 4, 6]);
        assert_eq!(b.first_one(), Some(1));
        assert_eq!(BitVec::zeros(5).first_one(), None);
    }

    #[test]
    fn words_cross_boundary() {
        let v = BitVec::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.slice(60, 10).ones().collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn hex_roundtrip() {
        let v = BitVec::from_indices(13, [0, 3, 4, 12]);
        let h = v.to_hex();
        assert_eq!(h, "1019");
        assert_eq!(BitVec::from_hex(13, &h), Some(v));
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010")];
        assert_eq!(rank(&rows), 2);
        let k = kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(rows.iter().all(|r| !r.dot(x)));
        }
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn echelon_express() {
        let rows = vec![bv("1100"), bv("0110"), bv("0011")];
        let mut e = Echelon::tracking(4, 3);
        for r in &rows {
            assert!(e.insert(r));
        }
        let target = bv("1001");
        let c = e.express(&target).unwrap();
        let mut acc = BitVec::zeros(4);
        for i in c.ones() {
            acc.xor_assign(&rows[i]);
        }
        assert_eq!(acc, target);
        assert!(e.express(&bv("1000")).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_rows(vec![bv("110"), bv("011"), bv("001")], 3);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        let singular = BitMatrix::from_rows(vec![bv("110"), bv("110"), bv("001")], 3);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn spans() {
        assert!(equal_span(&[bv("110"), bv("011")], &[bv("101"), bv("110")]));
        assert!(!equal_span(&[bv("110")], &[bv("011")]));
    }
}
