//! Dense state-vector checks of the diagonal-gate algebra on codes with at most 10 qubits.

mod common;

use rand::Rng;

use colortoric::codes::{color_code, logical_operators};
use colortoric::complex::build_lattice;
use colortoric::gates::{
    bipartition, logical_action, preserves_codespace, transversal_rd, unfolded_logicals,
};
use colortoric::gf2::BitVec;
use colortoric::unfold::disentangle;

use common::{check_commutator, check_gate, seeded};

fn cases() -> Vec<(&'static str, Vec<usize>, usize)> {
    vec![
        ("triangular_666", vec![3], 0),
        ("square_like_2d", vec![1], 0),
        ("hypercube_like", vec![2], 0),
        ("hypercube_like", vec![3], 1),
    ]
}

#[test]
fn commutators_match_dense_products() {
    let mut rng = seeded(7);
    for (family, params, k) in cases() {
        let l = build_lattice(family, &params).unwrap();
        let code = color_code(&l, k).unwrap();
        assert!(code.n() <= 10);
        let bip = bipartition(&l).unwrap();
        for level in 1..=3 {
            let d = transversal_rd(&code, &bip, level).unwrap();
            for r in code.hx().iter().chain(&logical_operators(&code).x) {
                check_commutator(&d, r, &mut rng).unwrap();
            }
            let random =
                BitVec::from_indices(code.n(), (0..code.n()).filter(|_| rng.gen_bool(0.5)));
            check_commutator(&d, &random, &mut rng).unwrap();
        }
    }
}

#[test]
fn logical_actions_match_dense_states() {
    for (family, params, k) in cases() {
        let l = build_lattice(family, &params).unwrap();
        let code = color_code(&l, k).unwrap();
        let bip = bipartition(&l).unwrap();
        let mut sets = vec![logical_operators(&code)];
        if family != "triangular_666" {
            sets.push(unfolded_logicals(&disentangle(&l).unwrap(), &code).unwrap());
        }
        for logicals in &sets {
            for level in 1..=4 {
                let d = transversal_rd(&code, &bip, level).unwrap();
                check_gate(&code, logicals, &d).unwrap();
                check_gate(&code, logicals, &d.compose(&d).unwrap()).unwrap();
            }
        }
    }
}

#[test]
fn triangular_r2_is_logical() {
    let l = build_lattice("triangular_666", &[3]).unwrap();
    let code = color_code(&l, 0).unwrap();
    let d = transversal_rd(&code, &bipartition(&l).unwrap(), 2).unwrap();
    assert!(preserves_codespace(&d, &code).unwrap());
    let logicals = logical_operators(&code);
    let table = logical_action(&d, &code, &logicals).unwrap();
    assert_eq!(table.len(), 2);
    check_gate(&code, &logicals, &d).unwrap();
    let t = transversal_rd(&code, &bipartition(&l).unwrap(), 3).unwrap();
    assert!(!preserves_codespace(&t, &code).unwrap());
    check_gate(&code, &logicals, &t).unwrap();
}
