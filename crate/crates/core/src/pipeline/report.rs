use serde::Serialize;

use super::certify::SubgroupReport;
use crate::latcat::{format_rational, lopt, GoldenRow, LatticeRecord};

#[derive(Clone, Debug, Serialize)]
pub struct HeaderRow {
    pub group: String,
    pub chi: String,
    pub lcm: Option<u64>,
    pub lopt: Option<u64>,
    pub arithmetic: &'static str,
    pub cocompact: &'static str,
    pub abelianization: Option<String>,
    pub cusps: usize,
    pub congruence: Vec<String>,
}

pub fn header_row(rec: &LatticeRecord) -> HeaderRow {
    HeaderRow {
        group: rec.name.clone(),
        chi: format_rational(&rec.chi_orb),
        lcm: rec.isotropy_lcm(),
        lopt: lopt(rec).ok(),
        arithmetic: if rec.arithmetic { "A" } else { "NA" },
        cocompact: if rec.cocompact { "C" } else { "NC" },
        abelianization: rec.abelianization.as_ref().map(|a| a.to_string()),
        cusps: rec.cusps.len(),
        congruence: rec
            .congruence
            .iter()
            .map(|c| {
                let p = c.prime.map_or("-".to_string(), |p| p.to_string());
                match &c.name {
                    Some(n) => format!("{p}: {} {n}", c.order),
                    None => format!("{p}: {}", c.order),
                }
            })
            .collect(),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Plain-text tables: one header line per record followed by the rows of its reports,
/// in the column order index | core | quotient | Ab | self-int | b1.
pub fn report_tables(records: &[&LatticeRecord], reports: &[SubgroupReport]) -> String {
    let mut out = String::new();
    for rec in records {
        let h = header_row(rec);
        out.push_str(&format!(
            "{}  chi={}  LCM={}  {},{}  Ab={}  cusps={}  congruence=[{}]\n",
            h.group,
            h.chi,
            h.lcm.map_or("?".into(), |l| l.to_string()),
            h.arithmetic,
            h.cocompact,
            h.abelianization.as_deref().unwrap_or("?"),
            h.cusps,
            h.congruence.join("; "),
        ));
        for r in reports.iter().filter(|r| r.group == rec.name) {
            out.push_str(&format!(
                "  {} | {} | {} | {} | {} | {}\n",
                r.index,
                r.core_index.map_or("-".into(), |c| c.to_string()),
                r.quotient.as_deref().unwrap_or("-"),
                r.abelianization,
                join(&r.self_intersections()),
                r.b1,
            ));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenMismatch {
    pub group: String,
    pub index: u64,
    pub core: Option<u128>,
    pub message: String,
}

fn matches(g: &GoldenRow, r: &SubgroupReport) -> Result<(), String> {
    let mut want = g.self_intersections.clone();
    want.sort_unstable_by(|a, b| b.cmp(a));
    let mut problems = Vec::new();
    if g.abelianization != r.invariants {
        problems.push(format!("Ab {} vs {}", r.abelianization, g.abelianization));
    }
    if want != r.self_intersections() {
        problems.push(format!("self-int [{}] vs [{}]", join(&r.self_intersections()), join(&want)));
    }
    if g.b1 != r.b1 {
        problems.push(format!("b1 {} vs {}", r.b1, g.b1));
    }
    if let (Some(q), Some(rq)) = (&g.quotient, &r.quotient) {
        if q != rq {
            problems.push(format!("quotient {rq} vs {q}"));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    }
}

/// Compares each report against the stored rows with the same index and core index.
/// Reports without such a row are not mismatches.
pub fn golden_diff(rec: &LatticeRecord, reports: &[SubgroupReport]) -> Vec<GoldenMismatch> {
    let mut out = Vec::new();
    for r in reports.iter().filter(|r| r.group == rec.name) {
        let candidates: Vec<&GoldenRow> =
            rec.golden.iter().filter(|g| g.index == r.index && (g.core.is_none() || g.core.map(u128::from) == r.core_index)).collect();
        if candidates.is_empty() {
            continue;
        }
        let errs: Vec<String> = candidates.iter().filter_map(|g| matches(g, r).err()).collect();
        if errs.len() == candidates.len() {
            out.push(GoldenMismatch { group: rec.name.clone(), index: r.index, core: r.core_index, message: errs.join(" | ") });
        }
    }
    out
}
