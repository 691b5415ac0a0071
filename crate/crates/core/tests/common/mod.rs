//! Independent oracles shared by the integration tests: a dense state-vector
//! model of diagonal gates and random pairs for Clifford synthesis.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use colortoric::clifford::synthesize;
use colortoric::codes::{CssCode, LogicalSet};
use colortoric::gates::{
    commutator_with_x, is_codespace_identity, logical_action, preserves_codespace, DiagonalPhaseOp,
};
use colortoric::gf2::{BitVec, Echelon};
use colortoric::pauli::{anticommute, commutation_matrix, PauliOp};

const TOL: f64 = 1e-9;

fn index(x: &BitVec) -> usize {
    x.ones().map(|j| 1usize << j).sum()
}

pub fn dense_diag(d: &DiagonalPhaseOp) -> Vec<Complex64> {
    let n = d.n();
    let m = d.modulus() as f64;
    (0..1usize << n)
        .map(|s| {
            let mut t = d.constant() as f64;
            for j in 0..n {
                if s >> j & 1 == 1 {
                    t += d.coeffs()[j] as f64;
                }
            }
            Complex64::from_polar(1.0, 2.0 * PI * t / m)
        })
        .collect()
}

fn apply_diag(diag: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    diag.iter().zip(v).map(|(a, b)| a * b).collect()
}

fn apply_x(mask: usize, v: &[Complex64]) -> Vec<Complex64> {
    (0..v.len()).map(|s| v[s ^ mask]).collect()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `D X D^dag X` on random vectors equals the predicted diagonal operator.
pub fn check_commutator(
    d: &DiagonalPhaseOp,
    a: &BitVec,
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let k = commutator_with_x(d, &PauliOp::new(a.clone(), BitVec::zeros(d.n())))
        .map_err(|e| e.to_string())?;
    let diag = dense_diag(d);
    let dagger: Vec<Complex64> = diag.iter().map(|c| c.conj()).collect();
    let predicted = dense_diag(&k);
    let mask = index(a);
    for _ in 0..3 {
        let v: Vec<Complex64> = (0..diag.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let w = apply_diag(
            &diag,
            &apply_x(mask, &apply_diag(&dagger, &apply_x(mask, &v))),
        );
        let p = apply_diag(&predicted, &v);
        if w.iter().zip(&p).any(|(x, y)| (x - y).norm() > TOL) {
            return Err(format!(
                "commutator with X on {a:?} differs from the dense product"
            ));
        }
    }
    Ok(())
}

/// Logical basis states: uniform superpositions over X-check cosets.
fn code_states(code: &CssCode, logicals: &LogicalSet) -> Vec<Vec<Complex64>> {
    let n = code.n();
    let mut span = vec![BitVec::zeros(n)];
    let mut e = Echelon::new(n);
    for r in code.hx() {
        if e.insert(r) {
            let shifted: Vec<BitVec> = span.iter().map(|s| s.xor(r)).collect();
            span.extend(shifted);
        }
    }
    let k = logicals.len();
    let amp = Complex64::new(1.0 / (span.len() as f64).sqrt(), 0.0);
    (0..1usize << k)
        .map(|idx| {
            let mut x = BitVec::zeros(n);
            for j in 0..k {
                if idx >> (k - 1 - j) & 1 == 1 {
                    x.xor_assign(&logicals.x[j]);
                }
            }
            let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
            for s in &span {
                v[index(&s.xor(&x))] = amp;
            }
            v
        })
        .collect()
}

/// Compares code-space preservation, the identity test and the logical phase
/// table with expectations of the dense operator on logical basis states.
pub fn check_gate(
    code: &CssCode,
    logicals: &LogicalSet,
    d: &DiagonalPhaseOp,
) -> Result<(), String> {
    let err = |e: colortoric::Error| e.to_string();
    let diag = dense_diag(d);
    let ev: Vec<Complex64> = code_states(code, logicals)
        .iter()
        .map(|v| inner(v, &apply_diag(&diag, v)))
        .collect();
    let preserved = ev.iter().all(|e| (e.norm() - 1.0).abs() < TOL);
    if preserves_codespace(d, code).map_err(err)? != preserved {
        return Err(format!(
            "code-space preservation disagrees (dense: {preserved})"
        ));
    }
    let identity = preserved
        && ev
            .iter()
            .all(|e| (e - Complex64::new(1.0, 0.0)).norm() < TOL);
    if is_codespace_identity(d, code).map_err(err)? != identity {
        return Err(format!("identity test disagrees (dense: {identity})"));
    }
    if !preserved {
        return match logical_action(d, code, logicals) {
            Err(_) => Ok(()),
            Ok(_) => Err("phase table produced for a non-preserving gate".into()),
        };
    }
    let table = logical_action(d, code, logicals).map_err(err)?;
    let m = d.modulus() as f64;
    let global = ev[0] / Complex64::from_polar(1.0, 2.0 * PI * table[0].1 as f64 / m);
    for ((l, f), e) in table.iter().zip(&ev) {
        let expected = global * Complex64::from_polar(1.0, 2.0 * PI * *f as f64 / m);
        if (expected - e).norm() > TOL {
            return Err(format!(
                "phase of {l:?} is {f} but the dense expectation is {e}"
            ));
        }
    }
    Ok(())
}

pub fn random_op(n: usize, rng: &mut ChaCha8Rng) -> PauliOp {
    let bits = |rng: &mut ChaCha8Rng| BitVec::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
    PauliOp::new(bits(rng), bits(rng))
}

/// `m` independent operators and their image under random symplectic transvections.
pub fn random_pair(n: usize, m: usize, rng: &mut ChaCha8Rng) -> (Vec<PauliOp>, Vec<PauliOp>) {
    let mut e = Echelon::new(2 * n);
    let mut g = Vec::new();
    while g.len() < m {
        let p = random_op(n, rng);
        if e.insert(&p.sym()) {
            g.push(p);
        }
    }
    let mut h = g.clone();
    for _ in 0..4 * n {
        let v = random_op(n, rng);
        for p in &mut h {
            if anticommute(p, &v) {
                p.mul_assign(&v);
            }
        }
    }
    (g, h)
}

/// Symplectic form on packed `x|z` rows.
fn form(u: &BitVec, v: &BitVec, n: usize) -> bool {
    u.slice(0, n).dot(&v.slice(n, n)) ^ u.slice(n, n).dot(&v.slice(0, n))
}

/// Synthesizes a map for `(g, h)` and checks images and symplecticity row by row.
pub fn check_synthesis(g: &[PauliOp], h: &[PauliOp], n: usize) -> Result<(), String> {
    if commutation_matrix(g) != commutation_matrix(h) {
        return Err("pair has different commutation matrices".into());
    }
    let map = synthesize(g, h).map_err(|e| e.to_string())?;
    let rows = map.matrix().rows();
    for (j, (gj, hj)) in g.iter().zip(h).enumerate() {
        let mut img = BitVec::zeros(2 * n);
        for i in gj.sym().ones() {
            img.xor_assign(&rows[i]);
        }
        if img != hj.sym() {
            return Err(format!("generator {j} maps to the wrong operator"));
        }
    }
    for i in 0..2 * n {
        for j in 0..2 * n {
            if form(&rows[i], &rows[j], n) != (i + n == j || j + n == i) {
                return Err(format!("rows {i} and {j} break the symplectic form"));
            }
        }
    }
    Ok(())
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
