use std::fs;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use serde::Serialize;

use colortoric::codes::{color_code, logical_count, logical_operators, CssCode, LogicalSet};
use colortoric::complex::{build_lattice, ColoredComplex};
use colortoric::counting::{
    cell_counts, verify_cell_identities, verify_overlap_counts, OverlapCounts,
};
use colortoric::gates::{
    bipartition, commutator_chain, is_multi_controlled_z, logical_action, preserves_codespace,
    transversal_rd, unfolded_logicals, ChainReport,
};
use colortoric::par;
use colortoric::unfold::{
    classify_boundaries, disentangle, BoundaryRow, Disentangled, UnfoldCheck,
};
use colortoric::Error;

pub struct Options {
    pub out: Option<PathBuf>,
    pub verbose: bool,
    pub json: bool,
    pub report_dir: Option<PathBuf>,
}

pub enum Failure {
    Input(String),
    Decoupling(String),
    Verification(String),
    Gate(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Decoupling(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Gate(_) => 5,
        }
    }
}

type Outcome = Result<(), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<ColoredComplex, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn write(path: &Path, text: &str) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn out_dir(opts: &Options) -> PathBuf {
    opts.out
        .clone()
        .or_else(|| opts.report_dir.clone())
        .unwrap_or_else(|| PathBuf::from("colortoric-report"))
}

/// Prints the report as JSON or text and writes it to `-o` when given.
fn emit<T: Serialize>(opts: &Options, report: &T, text: &str) -> Outcome {
    let json = to_json(report);
    if let Some(path) = &opts.out {
        write(path, &json)?;
    }
    if opts.json {
        print!("{json}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn counts_line(l: &ColoredComplex) -> String {
    let names = ["vertices", "edges", "faces", "volumes"];
    l.counts()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            format!(
                "{c} {}",
                names
                    .get(k)
                    .map_or_else(|| format!("{k}-cells"), |s| (*s).to_string())
            )
        })
        .join(", ")
}

pub fn build(opts: &Options, family: &str, params: &[usize]) -> Outcome {
    let l = build_lattice(family, params).map_err(input)?;
    let json = to_json(&l);
    match &opts.out {
        Some(path) => {
            write(path, &json)?;
            let name = std::iter::once(family.to_string())
                .chain(params.iter().map(ToString::to_string))
                .join(" ");
            println!("{name}: {}", counts_line(&l));
        }
        None => print!("{json}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct PartSummary {
    name: String,
    color: usize,
    folded: bool,
    qubits: usize,
    x_checks: usize,
    z_checks: usize,
    logicals: usize,
    cells: Vec<usize>,
}

#[derive(Serialize)]
struct UnfoldReport {
    dimension: usize,
    cells: Vec<usize>,
    qubits: usize,
    ancillas: usize,
    seam_vertices: usize,
    check: UnfoldCheck,
    parts: Vec<PartSummary>,
    files: Vec<String>,
}

fn part_summary(name: String, part: &colortoric::unfold::Part, folded: bool) -> PartSummary {
    PartSummary {
        name,
        color: part.color,
        folded,
        qubits: part.code.n(),
        x_checks: part.code.rank_x(),
        z_checks: part.code.rank_z(),
        logicals: logical_count(&part.code),
        cells: part.lattice.counts(),
    }
}

fn unfold_report(l: &ColoredComplex, dis: &Disentangled) -> Result<UnfoldReport, Failure> {
    let check = dis.check().map_err(input)?;
    let mut parts: Vec<PartSummary> = dis
        .parts
        .iter()
        .map(|p| part_summary(format!("part{}", p.color), p, false))
        .collect();
    if let Some(a) = &dis.attached {
        parts.push(part_summary("attached".into(), a, true));
    }
    Ok(UnfoldReport {
        dimension: l.dimension(),
        cells: l.counts(),
        qubits: dis.n(),
        ancillas: dis.ancillas.len(),
        seam_vertices: dis.seam.len(),
        check,
        parts,
        files: Vec::new(),
    })
}

fn unfold_text(r: &UnfoldReport) -> String {
    let mut s = format!(
        "unfolded {} qubits ({} ancillas): span equal {}, decoupled {}\n",
        r.qubits, r.ancillas, r.check.span_equal, r.check.decoupled
    );
    s += &format!("color code logicals: {}\n", r.check.color_code_logicals);
    for p in &r.parts {
        let tag = if p.folded { " (folded)" } else { "" };
        s += &format!(
            "  {}{tag}: {} qubits, {} logicals\n",
            p.name, p.qubits, p.logicals
        );
    }
    s
}

fn write_unfold_files(dir: &Path, dis: &Disentangled) -> Result<Vec<String>, Failure> {
    let mut files = Vec::new();
    let mut put = |name: String, text: String| -> Outcome {
        write(&dir.join(&name), &text)?;
        files.push(name);
        Ok(())
    };
    for p in &dis.parts {
        put(format!("part{}.lattice.json", p.color), to_json(&p.lattice))?;
        put(format!("part{}.code.json", p.color), to_json(&p.code))?;
    }
    if let Some(a) = &dis.attached {
        put("attached.lattice.json".into(), to_json(&a.lattice))?;
        put("attached.code.json".into(), to_json(&a.code))?;
    }
    put("clifford.json".into(), to_json(&dis.u))?;
    Ok(files)
}

fn unfold_failure(check: &UnfoldCheck) -> Option<Failure> {
    if check.ok() {
        return None;
    }
    let witness = check
        .witness
        .clone()
        .or_else(|| check.decoupling_witness.clone())
        .unwrap_or_default();
    Some(Failure::Decoupling(witness))
}

pub fn unfold(opts: &Options, lattice: &Path) -> Outcome {
    let l = load(lattice)?;
    let dis = disentangle(&l).map_err(input)?;
    let mut report = unfold_report(&l, &dis)?;
    let dir = out_dir(opts);
    report.files = write_unfold_files(&dir, &dis)?;
    report.files.push("unfold.json".into());
    let json = to_json(&report);
    write(&dir.join("unfold.json"), &json)?;
    if opts.json {
        print!("{json}");
    } else {
        print!("{}", unfold_text(&report));
    }
    unfold_failure(&report.check).map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct CheckResult {
    name: String,
    passed: bool,
    detail: serde_json::Value,
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct CellRow {
    cell: usize,
    counts: Vec<usize>,
    identities: bool,
    overlap: Option<OverlapCounts>,
}

fn check_structure(l: &ColoredComplex) -> CheckResult {
    let violations: Vec<String> = l.validate().iter().map(ToString::to_string).collect();
    CheckResult {
        name: "structure".into(),
        passed: violations.is_empty(),
        detail: serde_json::json!(violations),
    }
}

fn check_counts(l: &ColoredComplex) -> CheckResult {
    let d = l.dimension();
    let rows: Vec<Result<CellRow, Error>> = par::map(l.ids(d), |&c| {
        let counts = cell_counts(l, c)?;
        let identities = verify_cell_identities(&counts, d)?.ok();
        let overlap = if d >= 2 && l.cell(c).color == Some(0) {
            Some(verify_overlap_counts(l, c, d - 2)?)
        } else {
            None
        };
        Ok(CellRow {
            cell: c,
            counts,
            identities,
            overlap,
        })
    });
    let mut cells = Vec::new();
    let mut errors = Vec::new();
    for r in rows {
        match r {
            Ok(row) => cells.push(row),
            Err(e) => errors.push(e.to_string()),
        }
    }
    let passed = errors.is_empty()
        && cells
            .iter()
            .all(|r| r.identities && r.overlap.as_ref().is_none_or(OverlapCounts::ok));
    CheckResult {
        name: "counts".into(),
        passed,
        detail: serde_json::json!({ "errors": errors, "cells": cells }),
    }
}

#[derive(Serialize)]
struct BoundaryDetail {
    unfold: Option<UnfoldCheck>,
    rows: Vec<BoundaryRow>,
    error: Option<String>,
}

fn check_boundaries(l: &ColoredComplex) -> CheckResult {
    let run = || -> Result<(UnfoldCheck, Vec<BoundaryRow>), Error> {
        let dis = disentangle(l)?;
        Ok((dis.check()?, classify_boundaries(l, &dis)?))
    };
    let (passed, detail) = match run() {
        Ok((check, rows)) => {
            let after = check
                .attached_logicals
                .unwrap_or_else(|| check.part_logicals.iter().sum());
            let passed = check.ok()
                && after == check.color_code_logicals
                && rows.iter().all(BoundaryRow::consistent);
            (
                passed,
                BoundaryDetail {
                    unfold: Some(check),
                    rows,
                    error: None,
                },
            )
        }
        Err(e) => (
            false,
            BoundaryDetail {
                unfold: None,
                rows: Vec::new(),
                error: Some(e.to_string()),
            },
        ),
    };
    CheckResult {
        name: "boundaries".into(),
        passed,
        detail: serde_json::to_value(detail).expect("serializable"),
    }
}

fn verify_report(l: &ColoredComplex, counts: bool, boundaries: bool) -> VerifyReport {
    let mut checks = vec![check_structure(l)];
    if checks[0].passed {
        if counts {
            checks.push(check_counts(l));
        }
        if boundaries {
            checks.push(check_boundaries(l));
        }
    }
    VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn verify_text(r: &VerifyReport, verbose: bool) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s += &format!("{}: {}\n", c.name, if c.passed { "pass" } else { "FAIL" });
        if !verbose {
            continue;
        }
        if let Some(cells) = c.detail.get("cells").and_then(|v| v.as_array()) {
            for cell in cells {
                s += &format!("  {cell}\n");
            }
        }
        if let Some(rows) = c.detail.get("rows").and_then(|v| v.as_array()) {
            for row in rows {
                s += &format!("  boundary {} {}\n", row["color"], row["labels"]);
            }
        }
    }
    s
}

fn first_failure(r: &VerifyReport) -> Option<Failure> {
    r.checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| Failure::Verification(c.name.clone()))
}

pub fn verify(opts: &Options, lattice: &Path, counts: bool, boundaries: bool) -> Outcome {
    let l = load(lattice)?;
    let report = verify_report(&l, counts, boundaries);
    emit(opts, &report, &verify_text(&report, opts.verbose))?;
    first_failure(&report).map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct TableRow {
    l: Vec<u8>,
    f: u64,
}

#[derive(Serialize)]
struct GateReport {
    level: u32,
    qubits: usize,
    logicals: usize,
    basis: &'static str,
    preserves_codespace: bool,
    table: Vec<TableRow>,
    multi_controlled_z: bool,
    chains: Option<Vec<ChainReport>>,
    passed: bool,
}

fn gate_failure(e: Error) -> Failure {
    Failure::Gate(e.to_string())
}

fn logical_basis(l: &ColoredComplex, code: &CssCode) -> (LogicalSet, &'static str) {
    match disentangle(l).and_then(|dis| unfolded_logicals(&dis, code)) {
        Ok(set) => (set, "unfolded"),
        Err(_) => (logical_operators(code), "generic"),
    }
}

fn gate_report(l: &ColoredComplex, level: u32, permutations: bool) -> Result<GateReport, Failure> {
    let d = l.dimension();
    if level == 0 || level > 20 {
        return Err(input(format!("level {level} out of range 1..=20")));
    }
    let bip = bipartition(l).map_err(gate_failure)?;
    let code = color_code(l, d.saturating_sub(2)).map_err(input)?;
    let gate = transversal_rd(&code, &bip, level).map_err(gate_failure)?;
    let preserves = preserves_codespace(&gate, &code).map_err(gate_failure)?;
    let (logicals, basis) = logical_basis(l, &code);
    let mut report = GateReport {
        level,
        qubits: code.n(),
        logicals: logicals.len(),
        basis,
        preserves_codespace: preserves,
        table: Vec::new(),
        multi_controlled_z: false,
        chains: None,
        passed: false,
    };
    if !preserves {
        return Ok(report);
    }
    let table = logical_action(&gate, &code, &logicals).map_err(gate_failure)?;
    report.multi_controlled_z =
        logicals.len() == level as usize && is_multi_controlled_z(&table, level);
    report.table = table.into_iter().map(|(l, f)| TableRow { l, f }).collect();
    let mut chains_ok = true;
    if permutations {
        let orders: Vec<Vec<usize>> = (0..logicals.len()).permutations(level as usize).collect();
        let chains = par::map(&orders, |o| {
            commutator_chain(&code, &logicals, o, &bip, level)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(gate_failure)?;
        chains_ok = chains.iter().all(|c| c.matches);
        report.chains = Some(chains);
    }
    report.passed = report.multi_controlled_z && chains_ok;
    Ok(report)
}

fn gate_text(r: &GateReport) -> String {
    let mut s = format!(
        "transversal R_{} on {} qubits, {} logicals ({} basis)\n",
        r.level, r.qubits, r.logicals, r.basis
    );
    if !r.preserves_codespace {
        s += "code space not preserved\n";
        return s;
    }
    for row in &r.table {
        s += &format!("  f({}) = {}\n", row.l.iter().join(","), row.f);
    }
    s += &format!("multi-controlled Z: {}\n", r.multi_controlled_z);
    if let Some(chains) = &r.chains {
        let ok = chains.iter().filter(|c| c.matches).count();
        s += &format!("commutator chains: {ok}/{} match\n", chains.len());
    }
    s
}

fn gate_outcome(r: &GateReport) -> Outcome {
    if !r.preserves_codespace {
        return Err(Failure::Gate("code space not preserved".into()));
    }
    if !r.passed {
        return Err(Failure::Gate(
            "logical action is not a multi-controlled Z".into(),
        ));
    }
    Ok(())
}

pub fn gates(opts: &Options, lattice: &Path, level: Option<u32>, permutations: bool) -> Outcome {
    let l = load(lattice)?;
    let level = level.unwrap_or(l.dimension() as u32);
    let report = gate_report(&l, level, permutations)?;
    emit(opts, &report, &gate_text(&report))?;
    gate_outcome(&report)
}

#[derive(Serialize)]
struct FullReport {
    unfold: UnfoldReport,
    verify: VerifyReport,
    gates: Option<GateReport>,
}

pub fn report(opts: &Options, lattice: &Path) -> Outcome {
    let l = load(lattice)?;
    let dis = disentangle(&l).map_err(input)?;
    let mut unfold = unfold_report(&l, &dis)?;
    let dir = out_dir(opts);
    unfold.files = write_unfold_files(&dir, &dis)?;
    let verify = verify_report(&l, true, true);
    let k = unfold.check.color_code_logicals;
    // Transversal R_d is checked when the code has one logical per color.
    let gates = if k == l.dimension() && l.has_boundary() {
        Some(gate_report(&l, k as u32, true)?)
    } else {
        None
    };
    let full = FullReport {
        unfold,
        verify,
        gates,
    };
    let json = to_json(&full);
    write(&dir.join("report.json"), &json)?;
    if opts.json {
        print!("{json}");
    } else {
        print!("{}", unfold_text(&full.unfold));
        print!("{}", verify_text(&full.verify, opts.verbose));
        if let Some(g) = &full.gates {
            print!("{}", gate_text(g));
        }
    }
    if let Some(f) = unfold_failure(&full.unfold.check) {
        return Err(f);
    }
    if let Some(f) = first_failure(&full.verify) {
        return Err(f);
    }
    full.gates.as_ref().map_or(Ok(()), gate_outcome)
}
