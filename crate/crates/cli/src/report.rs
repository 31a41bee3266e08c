//! The run report: JSON behind `--json`, a plain table otherwise.

use std::fmt::Write;

use perfect_codes::codes::{PairInstance, Verdict};
use perfect_codes::constructions::{ClaimCheck, TripleSummary};
use perfect_codes::graphs::WitnessConnectionSet;
use perfect_codes::group::PermGroup;
use perfect_codes::perm::Perm;
use perfect_codes::verify::{CheckReport, RowStatus, SurveyRow};
use serde::Serialize;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Default, Debug)]
pub struct Fingerprint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub degree: usize,
    pub order_g: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_a: Option<usize>,
    pub generators_g: Vec<Perm>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators_a: Vec<Perm>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators_h: Vec<Perm>,
}

impl Fingerprint {
    pub fn of_group(g: &PermGroup) -> Self {
        Fingerprint {
            degree: g.degree(),
            order_g: g.order(),
            generators_g: g.generators().to_vec(),
            ..Default::default()
        }
    }

    pub fn of_subgroup(g: &PermGroup, a: &PermGroup) -> Self {
        Fingerprint {
            order_a: Some(a.order()),
            index_a: Some(g.order() / a.order()),
            generators_a: a.generators().to_vec(),
            ..Fingerprint::of_group(g)
        }
    }

    pub fn of_pair(inst: &PairInstance, family: Option<String>) -> Self {
        Fingerprint {
            family,
            order_h: Some(inst.h.order()),
            generators_h: inst.h.generators().to_vec(),
            ..Fingerprint::of_subgroup(&inst.g, &inst.a)
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Cell {
    pub procedure: String,
    /// `None` when the procedure ran out of budget.
    pub answer: Option<bool>,
    pub skipped: bool,
}

/// Which procedures ran and whether their definite answers agree.
#[derive(Serialize, Debug)]
pub struct Agreement {
    pub cells: Vec<Cell>,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Default for Agreement {
    fn default() -> Self {
        Agreement { cells: Vec::new(), consistent: true, note: None }
    }
}

impl Agreement {
    pub fn record(&mut self, procedure: &str, answer: Option<bool>) {
        let first = self.cells.iter().find_map(|c| c.answer);
        if let (Some(a), Some(b)) = (first, answer) {
            if a != b {
                self.consistent = false;
            }
        }
        self.cells.push(Cell { procedure: procedure.into(), answer, skipped: false });
    }

    pub fn skip(&mut self, procedure: &str) {
        self.cells.push(Cell { procedure: procedure.into(), answer: None, skipped: true });
    }
}

#[derive(Serialize, Debug)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub degree: usize,
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub subcommand: &'static str,
    pub instance: Fingerprint,
    pub verdicts: Vec<Verdict>,
    pub agreement: Agreement,
    pub search_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<TripleSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<ClaimCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub survey: Vec<SurveyRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_connection_set: Option<WitnessConnectionSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(subcommand: &'static str, instance: Fingerprint) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: Vec::new(),
            subcommand,
            instance,
            verdicts: Vec::new(),
            agreement: Agreement::default(),
            search_nodes: 0,
            construction: None,
            claims: Vec::new(),
            survey: Vec::new(),
            checks: Vec::new(),
            witness_connection_set: None,
            graph: None,
            dot: None,
            elapsed_ms: None,
        }
    }

    pub fn render(&self, verbose: bool) -> String {
        if let Some(dot) = &self.dot {
            return dot.clone();
        }
        let mut out = String::new();
        let i = &self.instance;
        if i.order_g > 0 {
            let _ = write!(out, "G: order {} on {} points", i.order_g, i.degree);
            if let Some(a) = i.order_a {
                let _ = write!(out, "; A: order {a}, index {}", i.index_a.unwrap_or(0));
            }
            if let Some(h) = i.order_h {
                let _ = write!(out, "; H: order {h}");
            }
            out.push('\n');
        }
        if let Some(v) = self.verdicts.first() {
            let _ = writeln!(out, "verdict: {:?} via {:?}", v.status, v.decision_path);
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "witness: {}", join(w));
            }
            if let Some(x) = &v.violating_element {
                let _ = writeln!(out, "violated at: {x}");
            }
            if let Some(c) = &v.obstruction {
                let (s, t, ts) = &c.nonnormal_witness;
                let _ = writeln!(out, "obstruction: {t}^{s} = {ts} leaves H; |H^G| = {}", c.normal_closure_order);
            }
        }
        for c in &self.agreement.cells {
            let answer = match (c.skipped, c.answer) {
                (true, _) => "skipped",
                (_, Some(true)) => "yes",
                (_, Some(false)) => "no",
                (_, None) => "unknown",
            };
            let _ = writeln!(out, "  {:<36} {answer}", c.procedure);
        }
        if !self.agreement.consistent {
            let _ = writeln!(out, "DISAGREEMENT {}", self.agreement.note.as_deref().unwrap_or(""));
        }
        for c in &self.claims {
            let holds = match c.holds {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "unknown",
            };
            let _ = writeln!(out, "  {:<36} {holds}", format!("{:?}", c.claim));
        }
        for r in &self.survey {
            let _ = writeln!(out, "  S{} {:<12} order {:<6} {:?}", r.degree, r.name, r.order, r.status);
        }
        if let Some(w) = &self.witness_connection_set {
            let _ = writeln!(
                out,
                "connection set: {} elements from {} of {} classes; representatives {}",
                w.connection_set.elements.len(),
                w.class_labels.len(),
                w.classes_total,
                join(&w.class_representatives)
            );
        } else if self.subcommand == "witness-graph" {
            let _ = writeln!(out, "no connection set found");
        }
        if let Some(g) = &self.graph {
            let _ = writeln!(out, "coset graph: {} vertices, {} edges, degree {}", g.vertices, g.edges, g.degree);
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{tag}] {:<46} {} pass, {} fail, {} unknown",
                c.name,
                c.count(RowStatus::Pass),
                c.count(RowStatus::Fail),
                c.count(RowStatus::Unknown)
            );
            for r in c.rows.iter().filter(|r| verbose || r.status != RowStatus::Pass) {
                let _ = writeln!(out, "    {:<44} {:?} {}", r.key, r.status, r.detail);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

fn join(ps: &[Perm]) -> String {
    let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
