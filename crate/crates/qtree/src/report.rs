//! Reconciliation of transcribed tables with computed polynomials.

use qtree_core::cospectral::{verify_catalog, EntryOutcome};
use qtree_core::{find_classes, CanonicalCode, IntPoly};
use serde::Serialize;

use crate::error::CliResult;
use crate::fixtures::Fixture;
use crate::formats::{PolyJson, TreeJson};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Matched,
    Corrected,
    Mismatch,
    Unresolved,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub label: String,
    pub p_pen: usize,
    pub printed: String,
    pub flagged: bool,
    pub status: Status,
    /// Computed polynomial, sign chosen to match the printed leading term.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeJson>,
    /// Corrections only: the interpolation route reproduces the polynomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    /// Corrections only: the corrected polynomial is even or odd.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub p_pen: usize,
    pub normalized: PolyJson,
    pub members: Vec<TreeJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub p: usize,
    pub matched: usize,
    pub corrected: usize,
    pub mismatched: usize,
    pub entries: Vec<EntryReport>,
    /// Trees with no printed entry.
    pub unlisted: Vec<UnlistedTree>,
    pub classes: Vec<ClassReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnlistedTree {
    pub p_pen: usize,
    pub computed: PolyJson,
    pub tree: TreeJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p_min: usize,
    pub p_max: usize,
    pub tables: Vec<TableReport>,
}

impl VerifyReport {
    pub fn total(&self, f: impl Fn(&TableReport) -> usize) -> usize {
        self.tables.iter().map(f).sum()
    }
}

fn signed_like(computed: &IntPoly, printed: &str) -> IntPoly {
    let t = printed.trim_start();
    if t.starts_with('-') || t.starts_with('\u{2212}') {
        -computed
    } else {
        computed.clone()
    }
}

pub fn verify_tables(fixture: &Fixture, p_min: usize, p_max: usize) -> CliResult<VerifyReport> {
    let mut tables = Vec::new();
    for p in p_min.max(3)..=p_max {
        let report = verify_catalog(p, &fixture.table(p))?;
        let entries = report
            .entries
            .iter()
            .map(|(e, outcome)| {
                let tree_of = |code: &CanonicalCode| Some(TreeJson::from_code(code));
                let (status, computed, tree, oracle_agrees, parity_ok) = match outcome {
                    EntryOutcome::Matched { code, computed } => {
                        (Status::Matched, Some(computed), tree_of(code), None, None)
                    }
                    EntryOutcome::Corrected {
                        code,
                        computed,
                        oracle_agrees,
                    } => (
                        Status::Corrected,
                        Some(computed),
                        tree_of(code),
                        Some(*oracle_agrees),
                        Some(computed.has_definite_parity()),
                    ),
                    EntryOutcome::Mismatch { nearest } => match nearest {
                        Some((code, q)) => (Status::Mismatch, Some(q), tree_of(code), None, None),
                        None => (Status::Mismatch, None, None, None, None),
                    },
                    EntryOutcome::Unresolved => (Status::Unresolved, None, None, None, None),
                };
                EntryReport {
                    label: e.label.clone(),
                    p_pen: e.p_pen,
                    printed: e.text.clone(),
                    flagged: e.flagged,
                    status,
                    computed: computed.map(|q| PolyJson::new(&signed_like(q, &e.text))),
                    tree,
                    oracle_agrees,
                    parity_ok,
                }
            })
            .collect();
        let unlisted = report
            .unlisted
            .iter()
            .map(|(p_pen, code, q)| UnlistedTree {
                p_pen: *p_pen,
                computed: PolyJson::new(q),
                tree: TreeJson::from_code(code),
            })
            .collect();
        let classes = find_classes(p)?
            .into_iter()
            .map(|c| ClassReport {
                p_pen: c.key.p_pen,
                normalized: PolyJson::new(c.key.poly.as_poly()),
                members: c.members.iter().map(TreeJson::from_code).collect(),
            })
            .collect();
        tables.push(TableReport {
            p,
            matched: report.matched(),
            corrected: report.corrected(),
            mismatched: report.mismatched(),
            entries,
            unlisted,
            classes,
        });
    }
    Ok(VerifyReport {
        p_min,
        p_max,
        tables,
    })
}

pub fn render_text(r: &VerifyReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for t in &r.tables {
        writeln!(
            out,
            "p={}: {} entries, {} matched, {} corrected, {} mismatched, {} unlisted trees",
            t.p,
            t.entries.len(),
            t.matched,
            t.corrected,
            t.mismatched,
            t.unlisted.len()
        )
        .unwrap();
        let odd: Vec<&EntryReport> = t
            .entries
            .iter()
            .filter(|e| e.status != Status::Matched)
            .collect();
        if !odd.is_empty() {
            writeln!(out, "  corrections:").unwrap();
        }
        for e in odd {
            let computed = e.computed.as_ref().map_or("-", |c| c.text.as_str());
            let mut line = format!(
                "    {:<8} printed {:<28} computed {}",
                e.label, e.printed, computed
            );
            match e.status {
                Status::Corrected => {
                    let ok = e.oracle_agrees == Some(true) && e.parity_ok == Some(true);
                    write!(
                        line,
                        " [{}]",
                        if ok {
                            "oracle and parity agree"
                        } else {
                            "check"
                        }
                    )
                    .unwrap();
                }
                Status::Mismatch => line.push_str(" [mismatch]"),
                Status::Unresolved => line.push_str(" [unresolved]"),
                Status::Matched => {}
            }
            writeln!(out, "{line}").unwrap();
        }
        for u in &t.unlisted {
            writeln!(
                out,
                "  unlisted: p_pen={} {} {}",
                u.p_pen, u.computed.text, u.tree.code
            )
            .unwrap();
        }
        if t.classes.is_empty() {
            writeln!(out, "  no cospectral classes").unwrap();
        }
        for c in &t.classes {
            let codes: Vec<&str> = c.members.iter().map(|m| m.code.as_str()).collect();
            writeln!(
                out,
                "  cospectral class at p_pen={} ({}): {}",
                c.p_pen,
                c.normalized.text,
                codes.join(" ")
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "total: {} matched, {} corrected, {} mismatched",
        r.total(|t| t.matched),
        r.total(|t| t.corrected),
        r.total(|t| t.mismatched)
    )
    .unwrap();
    out
}

pub fn render_csv(r: &VerifyReport) -> String {
    let mut out = String::from("p,label,p_pen,flagged,status,printed,computed,code\n");
    for t in &r.tables {
        for e in &t.entries {
            let status = serde_json::to_value(&e.status).unwrap();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                t.p,
                csv_field(&e.label),
                e.p_pen,
                e.flagged,
                status.as_str().unwrap(),
                e.printed,
                e.computed.as_ref().map_or("", |c| c.text.as_str()),
                e.tree.as_ref().map_or("", |t| t.code.as_str()),
            ));
        }
    }
    out
}

/// Quotes a field containing a comma.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
