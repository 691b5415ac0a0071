//! Acceptance checks 1-9. Prints one PASS/FAIL line per criterion, then fails
//! if any criterion failed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use colortoric::clifford::isomorphic;
use colortoric::codes::{color_code, euler_characteristic, logical_count, logical_operators};
use colortoric::complex::{build_lattice, ColoredComplex};
use colortoric::counting::{
    cell_counts, relation_count, toric_overlap_group, verify_cell_identities, verify_overlap_counts,
};
use colortoric::gates::{
    bipartition, commutator_chain, is_codespace_identity, is_multi_controlled_z, logical_action,
    transversal_rd, unfolded_logicals,
};
use colortoric::gf2::BitVec;
use colortoric::pauli::overlap_group;
use colortoric::qubit::Qubit;
use colortoric::unfold::{classify_boundaries, disentangle};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(family: &str, params: &[usize]) -> Result<ColoredComplex, String> {
    build_lattice(family, params).map_err(|e| format!("{family}: {e}"))
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn err(e: colortoric::Error) -> String {
    e.to_string()
}

fn closed_2d() -> Check {
    for params in [[3, 3], [3, 6]] {
        let start = Instant::now();
        let l = lattice("hex_torus", &params)?;
        let check = disentangle(&l).and_then(|d| d.check()).map_err(err)?;
        ensure(check.span_equal && check.decoupled, || {
            format!("hex_torus{params:?}: {check:?}")
        })?;
        ensure(check.part_logicals.len() == 2, || {
            format!("hex_torus{params:?}: {} parts", check.part_logicals.len())
        })?;
        within(
            start,
            Duration::from_secs(5),
            &format!("hex_torus{params:?}"),
        )?;
    }
    Ok(())
}

fn hexagon_overlap() -> Check {
    let l = lattice("hex_torus", &[3, 3])?;
    let code = color_code(&l, 0).map_err(err)?;
    let f = l
        .colored_cells(0)
        .into_iter()
        .find(|&c| l.cell(c).dim == 2)
        .ok_or("no C face")?;
    let verts = l.subcells(f, 0);
    let q: Vec<usize> = verts
        .iter()
        .map(|&v| code.position(Qubit::Vertex(v)).unwrap())
        .collect();
    let group = overlap_group(&code.stabilizers(), &q);
    let half = verts.len() / 2;
    ensure(group.rank() == 10 && group.rank() == 4 * half - 2, || {
        format!("rank {}", group.rank())
    })?;
    ensure(group.center().rank() == 2, || {
        format!("center rank {}", group.center().rank())
    })?;
    let toric = toric_overlap_group(&l, f).map_err(err)?;
    ensure(isomorphic(&group, &toric).map_err(err)?, || {
        "not isomorphic to the toric-side group".into()
    })
}

fn cube_counts() -> Check {
    let l = lattice("hypercube_like", &[3])?;
    let cube = l.ids(3)[0];
    let c = cell_counts(&l, cube).map_err(err)?;
    let (v, e, f) = (c[0] as i64, c[1] as i64, c[2] as i64);
    let r = verify_overlap_counts(&l, cube, 1).map_err(err)?;
    ensure(r.ok(), || {
        format!("formula and operator paths disagree: {r:?}")
    })?;
    ensure(r.formula[0] == 15 && r.formula[0] == e + f - 3, || {
        format!("G(O_CC x S) = {}", r.formula[0])
    })?;
    ensure(r.formula[3] == 9 && r.formula[3] == 2 * f - 3, || {
        format!("G(Z(O_TC)) = {}", r.formula[3])
    })?;
    ensure(e - v == 4, || format!("ancillas {}", e - v))?;
    ensure(v - e + f == 2, || format!("Euler {}", v - e + f))?;
    ensure(verify_cell_identities(&c, 3).map_err(err)?.ok(), || {
        "cell identities fail".into()
    })?;
    let i22 = relation_count(3, 2, &c).map_err(err)?;
    let i21 = relation_count(3, 1, &c).map_err(err)?;
    ensure(i22 == 2 && i21 == 5, || {
        format!("I(2,2) = {i22}, I(2,1) = {i21}")
    })
}

fn triangular_unfolding() -> Check {
    let expected: Vec<(usize, BTreeSet<String>)> = [
        (0, vec!["1", "m1m2", "e1e2", "ε1ε2"]),
        (1, vec!["1", "m2", "e1", "e1m2"]),
        (2, vec!["1", "m1", "e2", "e2m1"]),
    ]
    .into_iter()
    .map(|(c, v)| (c, v.into_iter().map(String::from).collect()))
    .collect();
    for d in [3, 5] {
        let l = lattice("triangular_666", &[d])?;
        let dis = disentangle(&l).map_err(err)?;
        let check = dis.check().map_err(err)?;
        ensure(check.ok(), || format!("distance {d}: {check:?}"))?;
        ensure(
            check.color_code_logicals == 1 && check.attached_logicals == Some(1),
            || {
                format!(
                    "distance {d}: logicals {} before, {:?} after",
                    check.color_code_logicals, check.attached_logicals
                )
            },
        )?;
        let mut table: Vec<(usize, BTreeSet<String>)> = classify_boundaries(&l, &dis)
            .map_err(err)?
            .into_iter()
            .map(|r| (r.color, r.labels.into_iter().collect()))
            .collect();
        table.sort();
        ensure(table == expected, || {
            format!("distance {d}: table {table:?}")
        })?;
    }
    Ok(())
}

fn three_dimensional() -> Check {
    let start = Instant::now();
    let l = lattice("tetrahedron_like_3d", &[])?;
    let dis = disentangle(&l).map_err(err)?;
    let check = dis.check().map_err(err)?;
    ensure(
        check.ok() && dis.parts.len() == 3 && dis.attached.is_some(),
        || format!("tetrahedron: {check:?}"),
    )?;
    let rows = classify_boundaries(&l, &dis).map_err(err)?;
    let seam = rows.iter().find(|r| r.color == 0).ok_or("no seam row")?;
    ensure(seam.electric.contains(&0b111), || {
        format!("seam charges {:?}", seam.electric)
    })?;
    ensure(seam.labels.iter().any(|s| s == "e1e2e3"), || {
        format!("seam labels {:?}", seam.labels)
    })?;
    let l = lattice("cube_3torus", &[])?;
    let check = disentangle(&l).and_then(|d| d.check()).map_err(err)?;
    ensure(check.ok() && check.part_logicals.len() == 3, || {
        format!("cube_3torus: {check:?}")
    })?;
    within(start, Duration::from_secs(60), "3D unfolding")
}

fn gates() -> Check {
    let start = Instant::now();
    let l = lattice("square_like_2d", &[1])?;
    let code = color_code(&l, 0).map_err(err)?;
    let bip = bipartition(&l).map_err(err)?;
    let r2 = transversal_rd(&code, &bip, 2).map_err(err)?;
    let logs = unfolded_logicals(&disentangle(&l).map_err(err)?, &code).map_err(err)?;
    let table = logical_action(&r2, &code, &logs).map_err(err)?;
    let cz: Vec<u64> = table
        .iter()
        .map(|(l, _)| 2 * u64::from(l[0] * l[1]) % 4)
        .collect();
    ensure(table.iter().map(|r| r.1).eq(cz), || {
        format!("square R_2 table {table:?}")
    })?;
    let sq = r2.compose(&r2).map_err(err)?;
    ensure(is_codespace_identity(&sq, &code).map_err(err)?, || {
        "R_2 squared is not the identity".into()
    })?;

    let l = lattice("hypercube_like", &[3])?;
    let code = color_code(&l, 1).map_err(err)?;
    let bip = bipartition(&l).map_err(err)?;
    let r3 = transversal_rd(&code, &bip, 3).map_err(err)?;
    let logs = unfolded_logicals(&disentangle(&l).map_err(err)?, &code).map_err(err)?;
    let table = logical_action(&r3, &code, &logs).map_err(err)?;
    ensure(is_multi_controlled_z(&table, 3), || {
        format!("hypercube R_3 table {table:?}")
    })?;
    ensure(
        table
            .iter()
            .all(|(l, f)| *f == 4 * u64::from(l[0] * l[1] * l[2]) % 8),
        || "CCZ pattern".into(),
    )?;
    for order in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        let rep = commutator_chain(&code, &logs, &order, &bip, 3).map_err(err)?;
        ensure(rep.matches, || format!("chain {order:?}: {rep:?}"))?;
    }
    within(start, Duration::from_secs(120), "gate checks")
}

fn synthesis_pairs() -> Check {
    let mut rng = common::seeded(2024);
    for trial in 0..200 {
        let n = 1 + trial % 8;
        let m = 1 + (trial * 7) % (2 * n);
        let (g, h) = common::random_pair(n, m, &mut rng);
        common::check_synthesis(&g, &h, n)
            .map_err(|e| format!("pair {trial} (n = {n}, m = {m}): {e}"))?;
    }
    Ok(())
}

fn dense_oracle() -> Check {
    let mut rng = common::seeded(11);
    for (family, params, k) in [
        ("triangular_666", vec![3], 0),
        ("square_like_2d", vec![1], 0),
        ("hypercube_like", vec![2], 0),
        ("hypercube_like", vec![3], 1),
    ] {
        let l = lattice(family, &params)?;
        let code = color_code(&l, k).map_err(err)?;
        ensure(code.n() <= 10, || {
            format!("{family} has {} qubits", code.n())
        })?;
        let bip = bipartition(&l).map_err(err)?;
        let logs = logical_operators(&code);
        for level in 1..=3 {
            let d = transversal_rd(&code, &bip, level).map_err(err)?;
            for r in code.hx().iter().chain(&logs.x) {
                common::check_commutator(&d, r, &mut rng).map_err(|e| format!("{family}: {e}"))?;
            }
            let random = BitVec::from_indices(
                code.n(),
                (0..code.n()).filter(|&j| (j * 5 + level as usize).is_multiple_of(3)),
            );
            common::check_commutator(&d, &random, &mut rng)
                .map_err(|e| format!("{family}: {e}"))?;
            common::check_gate(&code, &logs, &d).map_err(|e| format!("{family} R_{level}: {e}"))?;
        }
    }
    Ok(())
}

fn logical_counts() -> Check {
    let cases = [
        ("triangular_666", vec![3], 0, 1),
        ("triangular_666", vec![5], 0, 1),
        ("square_like_2d", vec![1], 0, 2),
        ("square_like_2d", vec![2], 0, 2),
        ("hypercube_like", vec![2], 0, 2),
        ("hypercube_like", vec![3], 1, 3),
    ];
    for (family, params, k, expected) in cases {
        let l = lattice(family, &params)?;
        let got = logical_count(&color_code(&l, k).map_err(err)?);
        ensure(got == expected, || {
            format!("{family}{params:?}: {got} logicals, expected {expected}")
        })?;
        if l.dimension() == 2 {
            let n = l.boundary_components().len() as i64;
            let chi = euler_characteristic(&l);
            ensure(got as i64 == n - 2 * chi, || {
                format!("{family}{params:?}: n - 2 chi = {}", n - 2 * chi)
            })?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("closed 2D unfolding", closed_2d),
        ("hexagon overlap counts", hexagon_overlap),
        ("cube counts", cube_counts),
        ("triangular unfolding and boundaries", triangular_unfolding),
        ("3D unfolding", three_dimensional),
        ("transversal gates", gates),
        ("synthesis from commutation relations", synthesis_pairs),
        ("dense oracle", dense_oracle),
        ("logical counts", logical_counts),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match result {
            Ok(()) => println!("PASS {} {name} ({t:.2?})", i + 1),
            Err(e) => {
                println!("FAIL {} {name} ({t:.2?}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
