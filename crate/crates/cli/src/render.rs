//! Text, JSON and CSV rendering of command results.

use std::fmt::Write as _;

use serde::Serialize;

use scod_core::perversity::{BasisLabel, OrbitPoset, Perversity};
use scod_core::torusmod::{TorusSweep, TorusSweepReport};
use scod_core::verify::{SuiteReport, VerificationReport};
use scod_core::weyl::format_word;
use scod_core::{Parabolic, RootSystem};

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn csv_string<F>(f: F) -> String
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    f(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// Left-aligned columns padded to the widest cell.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w - c.chars().count();
            s.push_str(c);
            if i + 1 < cells.len() {
                s.extend(std::iter::repeat_n(' ', pad));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn coverage_summary(r: &SuiteReport) -> String {
    let mut parts: Vec<String> = r.coverage.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if let Some(bl) = &r.by_length {
        let per: Vec<String> = bl.elements.iter().map(u64::to_string).collect();
        parts.push(format!("len=[{}]", per.join(",")));
    }
    parts.join(" ")
}

pub fn verify_text(report: &VerificationReport) -> String {
    let rows: Vec<Vec<String>> = report
        .suites
        .iter()
        .map(|r| {
            let mut row = vec![
                r.suite.to_string(),
                r.system.clone(),
                r.parabolic.clone().unwrap_or_else(|| "-".into()),
                r.method.clone(),
                r.instances.to_string(),
                r.violations.len().to_string(),
                if r.pass() { "pass" } else { "FAIL" }.to_string(),
            ];
            if let Some(ms) = r.wall_ms {
                row.push(format!("{ms:.1}ms"));
            }
            row.push(coverage_summary(r));
            row
        })
        .collect();
    let mut header = vec!["suite", "system", "parabolic", "method", "instances", "violations", "status"];
    if report.suites.iter().any(|r| r.wall_ms.is_some()) {
        header.push("wall");
    }
    header.push("coverage");
    let mut out = table(&header, &rows);
    for r in report.suites.iter().filter(|r| !r.pass()) {
        for v in &r.violations {
            let witness: Vec<String> = v.witness.iter().map(|(k, x)| format!("{k}={x}")).collect();
            let _ = writeln!(
                out,
                "violation [{} {}{}] {}: {}",
                r.suite,
                v.system,
                v.parabolic.as_deref().map(|p| format!(" P={p}")).unwrap_or_default(),
                witness.join(" "),
                v.detail
            );
        }
    }
    let _ = writeln!(
        out,
        "{}: {} checks, {} violations",
        if report.pass { "PASS" } else { "FAIL" },
        report.total_instances(),
        report.total_violations()
    );
    out
}

pub fn verify_csv(report: &VerificationReport) -> String {
    csv_string(|w| {
        w.write_record(["suite", "system", "parabolic", "method", "instances", "violations", "pass"])?;
        for r in &report.suites {
            w.write_record([
                r.suite.to_string(),
                r.system.clone(),
                r.parabolic.clone().unwrap_or_default(),
                r.method.clone(),
                r.instances.to_string(),
                r.violations.len().to_string(),
                r.pass().to_string(),
            ])?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
pub struct ScodRow {
    pub min_word: String,
    pub max_word: String,
    pub length: usize,
    pub codim: usize,
    pub tau_pairing: i64,
    pub scod: i64,
}

pub fn scod_rows(poset: &OrbitPoset) -> Vec<ScodRow> {
    poset
        .nodes
        .iter()
        .map(|n| ScodRow {
            min_word: format_word(&n.min_word),
            max_word: format_word(&n.max_word),
            length: n.length,
            codim: n.codim,
            tau_pairing: n.tau_pairing,
            scod: n.scod,
        })
        .collect()
}

const SCOD_HEADER: [&str; 6] = ["min_word", "max_word", "length", "codim", "tau_pairing", "scod"];

fn scod_cells(r: &ScodRow) -> Vec<String> {
    vec![
        r.min_word.clone(),
        r.max_word.clone(),
        r.length.to_string(),
        r.codim.to_string(),
        r.tau_pairing.to_string(),
        r.scod.to_string(),
    ]
}

pub fn scod_text(poset: &OrbitPoset) -> String {
    let rows: Vec<Vec<String>> = scod_rows(poset).iter().map(scod_cells).collect();
    format!(
        "{} P={} ({} orbits)\n{}",
        poset.system,
        poset.parabolic,
        poset.len(),
        table(&SCOD_HEADER, &rows)
    )
}

pub fn scod_csv(poset: &OrbitPoset) -> String {
    csv_string(|w| {
        w.write_record(SCOD_HEADER)?;
        for r in scod_rows(poset) {
            w.write_record(scod_cells(&r))?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
pub struct PosetView {
    pub schema: u32,
    pub system: String,
    pub parabolic: String,
    pub nodes: Vec<PosetNode>,
    /// Covers as `[lower, upper]` node indices.
    pub covers: Vec<(usize, usize)>,
    pub perversity_ok: bool,
}

#[derive(Serialize)]
pub struct PosetNode {
    #[serde(flatten)]
    pub row: ScodRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perversity: Option<i64>,
}

pub fn poset_view(poset: &OrbitPoset, perversity: Option<&Perversity>) -> PosetView {
    let nodes = scod_rows(poset)
        .into_iter()
        .enumerate()
        .map(|(i, row)| PosetNode {
            row,
            perversity: perversity.map(|p| p.values[i]),
        })
        .collect();
    PosetView {
        schema: 1,
        system: poset.system.clone(),
        parabolic: poset.parabolic.clone(),
        nodes,
        covers: poset.graph.covers.clone(),
        perversity_ok: perversity.is_some(),
    }
}

pub fn basis_text(sys: &RootSystem, p: &Parabolic, labels: &[BasisLabel]) -> String {
    let rows: Vec<Vec<String>> = labels
        .iter()
        .map(|l| {
            let fc: Vec<String> = l.weight_fundamental.iter().map(i64::to_string).collect();
            vec![l.coset.clone(), format!("({})", fc.join(",")), l.weight.to_string()]
        })
        .collect();
    format!(
        "{} P={}: {} labels\n{}",
        sys.name(),
        p.label(),
        labels.len(),
        table(&["coset", "weight_fundamental", "weight_roots"], &rows)
    )
}

pub fn basis_csv(labels: &[BasisLabel]) -> String {
    csv_string(|w| {
        w.write_record(["coset", "weight_fundamental", "weight_roots"])?;
        for l in labels {
            let fc: Vec<String> = l.weight_fundamental.iter().map(i64::to_string).collect();
            w.write_record([l.coset.clone(), fc.join(" "), l.weight.to_string()])?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
pub struct TorusView<'a> {
    pub schema: u32,
    pub pass: bool,
    pub sweep: &'a TorusSweep,
    pub report: &'a TorusSweepReport,
}

pub fn torus_text(sweep: &TorusSweep, report: &TorusSweepReport) -> String {
    let dim = |d: Option<usize>| d.map_or_else(|| "random".to_string(), |v| v.to_string());
    let mut out = format!(
        "torus models: n={} m={} seed={} trials={}\n",
        dim(sweep.n),
        dim(sweep.m),
        sweep.seed,
        report.trials
    );
    let _ = writeln!(out, "passed {}/{}", report.passed, report.trials);
    let _ = writeln!(
        out,
        "single nonzero degree n-m: {}/{}",
        report.single_degree_trials, report.trials
    );
    for f in &report.failures {
        let ws: Vec<String> = f.weights.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(
            out,
            "failure n={} m={} mu={} weights=[{}]: {}",
            f.n,
            f.m,
            f.mu,
            ws.join(", "),
            f.failure.as_deref().unwrap_or("")
        );
    }
    let _ = writeln!(out, "{}", if report.failures.is_empty() { "PASS" } else { "FAIL" });
    out
}

pub fn roots_text(sys: &RootSystem) -> String {
    let mut out = sys.diagram();
    out.push_str("\nCartan matrix\n");
    for row in sys.cartan() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        let _ = writeln!(out, " {}", cells.join(""));
    }
    let _ = writeln!(out, "\n{} positive roots (simple-root coordinates)", sys.num_positive());
    for r in sys.positive_roots() {
        let _ = writeln!(out, "  {:?}", r.coords(sys.rank()));
    }
    out
}
