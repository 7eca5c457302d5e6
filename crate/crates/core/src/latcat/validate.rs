use std::collections::HashSet;

use serde::Serialize;

use super::{lopt, LatticeRecord, MatrixModel};
use crate::cxhyp::Mat3;
use crate::fpcore::{abelian_invariants, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Ok,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub record: String,
    pub field: String,
    pub severity: Severity,
    pub message: String,
}

/// Order of the projective group generated by the images of `words`, if at most `bound`.
pub fn closure_order(model: &MatrixModel, words: &[Word], bound: usize) -> Option<usize> {
    let gens: Vec<Mat3> = words.iter().map(|w| model.eval(w).normalized()).collect();
    let id = Mat3::identity(&model.field);
    let mut seen: HashSet<Mat3> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.mul(g).normalized();
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen.len())
}

/// Consistency checks for one record. Isotropy orders are checked by matrix closure up to
/// `bound` elements when a matrix model is present.
pub fn validate(rec: &LatticeRecord, bound: usize) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |field: &str, severity: Severity, message: String| {
        out.push(Diagnostic { record: rec.name.clone(), field: field.into(), severity, message });
    };
    match lopt(rec) {
        Ok(l) => push("lcm", Severity::Ok, format!("L^opt = {l}")),
        Err(e) => push("lcm", Severity::Error, e.to_string()),
    }
    if let (Some(l), Some(stored)) = (rec.isotropy_lcm(), rec.lcm) {
        if !rec.isotropy.is_empty() && l != stored {
            push("lcm", Severity::Error, format!("isotropy orders give {l}, stored {stored}"));
        }
    }
    if let (Some(p), Some(ab)) = (&rec.presentation, &rec.abelianization) {
        let got = abelian_invariants(p);
        if rec.complete {
            let sev = if &got == ab { Severity::Ok } else { Severity::Error };
            push("abelianization", sev, format!("computed {got}, stored {ab}"));
        } else {
            push("abelianization", Severity::Skipped, format!("relations are partial; they give {got}"));
        }
    }
    let Some(model) = &rec.model else {
        if !rec.isotropy.is_empty() {
            push("isotropy", Severity::Skipped, "no matrix model".into());
        }
        return out;
    };
    if let Some(p) = &rec.presentation {
        let bad: Vec<String> = p.relators().iter().filter(|r| !model.is_identity(r)).map(|r| r.to_string()).collect();
        let sev = if bad.is_empty() { Severity::Ok } else { Severity::Error };
        push("relators", sev, format!("{} relators, {} not scalar {:?}", p.relators().len(), bad.len(), bad));
    }
    for iso in &rec.isotropy {
        let names: Vec<String> = iso.words.iter().map(|w| w.to_string()).collect();
        match closure_order(model, &iso.words, bound) {
            Some(n) if n as u64 == iso.order => push("isotropy", Severity::Ok, format!("<{}> has order {n}", names.join(", "))),
            Some(n) => push("isotropy", Severity::Error, format!("<{}> has order {n}, stored {}", names.join(", "), iso.order)),
            None => push("isotropy", Severity::Skipped, format!("<{}> exceeds {bound} elements", names.join(", "))),
        }
    }
    for (i, c) in rec.cusps.iter().enumerate() {
        if c.words.is_empty() {
            continue;
        }
        let bad: Vec<String> =
            c.relations.iter().filter(|r| !model.is_identity(&r.substitute(&c.words))).map(|r| r.to_string()).collect();
        let sev = if bad.is_empty() { Severity::Ok } else { Severity::Error };
        push("cusp", sev, format!("cusp {}: {} relations, failing {:?}", i + 1, c.relations.len(), bad));
    }
    out
}
