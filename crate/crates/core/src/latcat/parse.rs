use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::mostow::{mostow_presentation, Exponent};
use super::{
    Catalog, CongruenceNote, CuspEntry, Family, GoldenRow, Isotropy, LatError, LatticeRecord, MapKernel, MatrixModel,
    TriangleMapRow,
};
use crate::cxhyp::{HermitianForm, Mat3};
use crate::exactalg::{parse_element, FieldElem, FieldSpec, NumberField};
use crate::fpcore::{AbelianInvariants, GroupTarget, Presentation, Word};

struct FieldDraft {
    name: String,
    line: usize,
    gen_name: Option<String>,
    modulus: Option<Vec<BigInt>>,
    cyclotomic: Option<u64>,
    conjugation: Option<Vec<BigRational>>,
    embedding: Option<Complex64>,
    constants: Vec<(String, String, usize)>,
}

#[derive(Default)]
struct ModelDraft {
    field: Option<String>,
    lets: Vec<(String, String, usize)>,
    form: Option<(String, usize)>,
    matrices: Vec<(String, String, usize)>,
}

struct GroupDraft {
    rec: LatticeRecord,
    line: usize,
    relators: Vec<(String, usize)>,
    model: ModelDraft,
    seen_generators: bool,
}

enum Section {
    None,
    Field(FieldDraft),
    Group(Box<GroupDraft>),
}

fn syntax(line: usize, msg: impl Into<String>) -> LatError {
    LatError::Syntax { line, msg: msg.into() }
}

fn yes_no(v: &str, line: usize) -> Result<bool, LatError> {
    match v {
        "yes" | "true" => Ok(true),
        "no" | "false" => Ok(false),
        _ => Err(syntax(line, format!("expected yes or no, found '{v}'"))),
    }
}

fn parse_num<T: std::str::FromStr>(v: &str, line: usize) -> Result<T, LatError> {
    v.trim().parse().map_err(|_| syntax(line, format!("bad number '{}'", v.trim())))
}

fn parse_rational(v: &str, line: usize) -> Result<BigRational, LatError> {
    let v = v.trim();
    match v.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = parse_num(d, line)?;
            if d == BigInt::from(0) {
                return Err(syntax(line, "zero denominator"));
            }
            Ok(BigRational::new(parse_num(n, line)?, d))
        }
        None => Ok(BigRational::from_integer(parse_num(v, line)?)),
    }
}

fn split_colon(v: &str, line: usize) -> Result<(&str, &str), LatError> {
    v.split_once(':').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| syntax(line, "expected ':'"))
}

fn words(v: &str, ngens: usize, line: usize) -> Result<Vec<Word>, LatError> {
    Word::parse_list(v, ngens).map_err(|e| syntax(line, e.to_string()))
}

fn exponent(v: &str, line: usize) -> Result<Exponent, LatError> {
    match v {
        "auto" => Ok(Exponent::Auto),
        "-" => Ok(Exponent::Omit),
        _ => Ok(Exponent::Value(parse_num(v, line)?)),
    }
}

// Splits the body of `[a, b; c, d]` into entries.
fn matrix_entries(v: &str, line: usize) -> Result<Vec<String>, LatError> {
    let body = v
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(line, "matrix must be written [a, b, c; ...]"))?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == ',' || ch == ';') && depth == 0 {
            out.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(ch);
        }
    }
    out.push(cur.trim().to_string());
    if out.len() != 9 {
        return Err(syntax(line, format!("matrix has {} entries, expected 9", out.len())));
    }
    Ok(out)
}

fn new_record(name: &str) -> LatticeRecord {
    LatticeRecord {
        name: name.into(),
        family: Family::Other,
        generator_names: Vec::new(),
        presentation: None,
        mostow: None,
        chi_orb: BigRational::from_integer(0.into()),
        cocompact: false,
        arithmetic: false,
        lcm: None,
        abelianization: None,
        complete: false,
        isotropy: Vec::new(),
        cusps: Vec::new(),
        congruence: Vec::new(),
        subgroups: Vec::new(),
        golden: Vec::new(),
        triangle_maps: Vec::new(),
        map_index: None,
        basic_23p: false,
        model: None,
    }
}

fn default_generators(family: &Family) -> Vec<String> {
    match family {
        Family::Triangle { .. } => vec!["a".into(), "b".into()],
        _ => ["r1", "r2", "r3", "j"].iter().map(|s| s.to_string()).collect(),
    }
}

fn field_key(d: &mut FieldDraft, key: &str, v: &str, line: usize) -> Result<(), LatError> {
    match key {
        "generator" => d.gen_name = Some(v.into()),
        "polynomial" => {
            d.modulus = Some(v.split_whitespace().map(|c| parse_num(c, line)).collect::<Result<_, _>>()?);
        }
        "cyclotomic" => d.cyclotomic = Some(parse_num(v, line)?),
        "conjugation" => {
            d.conjugation = Some(v.split_whitespace().map(|c| parse_rational(c, line)).collect::<Result<_, _>>()?);
        }
        "embedding" => {
            let parts: Vec<f64> = v.split_whitespace().map(|c| parse_num(c, line)).collect::<Result<_, _>>()?;
            if parts.len() != 2 {
                return Err(syntax(line, "embedding takes a real and an imaginary part"));
            }
            d.embedding = Some(Complex64::new(parts[0], parts[1]));
        }
        "constant" => {
            let (n, e) = v.split_once('=').ok_or_else(|| syntax(line, "expected 'constant NAME = EXPR'"))?;
            d.constants.push((n.trim().into(), e.trim().into(), line));
        }
        _ => return Err(syntax(line, format!("unknown field key '{key}'"))),
    }
    Ok(())
}

fn finish_field(
    d: FieldDraft,
    fields: &mut HashMap<String, Arc<NumberField>>,
    constants: &mut HashMap<String, HashMap<String, FieldElem>>,
) -> Result<(), LatError> {
    let field = match (d.cyclotomic, d.modulus) {
        (Some(n), None) => NumberField::cyclotomic(n),
        (None, Some(modulus)) => NumberField::new(FieldSpec {
            name: d.name.clone(),
            gen_name: d.gen_name.clone().unwrap_or_else(|| "t".into()),
            modulus,
            conjugation: d.conjugation,
            embedding: d.embedding,
        })
        .map_err(|e| syntax(d.line, format!("field {}: {e}", d.name)))?,
        _ => return Err(syntax(d.line, format!("field {} needs exactly one of polynomial, cyclotomic", d.name))),
    };
    let mut names = HashMap::new();
    if let Some(g) = &d.gen_name {
        names.insert(g.clone(), FieldElem::generator_in(&field));
    }
    for (n, e, line) in d.constants {
        let x = parse_element(&e, &field, &names).map_err(|err| syntax(line, err.to_string()))?;
        names.insert(n, x);
    }
    fields.insert(d.name.clone(), field);
    constants.insert(d.name, names);
    Ok(())
}

fn group_key(g: &mut GroupDraft, key: &str, v: &str, line: usize) -> Result<(), LatError> {
    let n = rec_ngens(&g.rec);
    let rec = &mut g.rec;
    match key {
        "family" => {
            let parts: Vec<&str> = v.split_whitespace().collect();
            let p = |i: usize| -> Result<u32, LatError> {
                parts.get(i).ok_or_else(|| syntax(line, "missing family parameter")).and_then(|s| parse_num(s, line))
            };
            let label = |i: usize| parts.get(i).map(|s| s.to_string()).ok_or_else(|| syntax(line, "missing family label"));
            rec.family = match parts.first().copied() {
                Some("mostow") => Family::Mostow { p: p(1)?, t: label(2)? },
                Some("sporadic") => Family::Sporadic { p: p(1)?, sigma: label(2)? },
                Some("thompson") => Family::Thompson { p: p(1)?, triple: label(2)? },
                Some("triangle") => Family::Triangle { orders: (p(1)?, p(2)?, p(3)?) },
                Some("other") => Family::Other,
                _ => return Err(syntax(line, format!("unknown family '{v}'"))),
            };
        }
        "generators" => {
            rec.generator_names = v.split_whitespace().map(String::from).collect();
            g.seen_generators = true;
        }
        "mostow" => {
            let parts: Vec<&str> = v.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(syntax(line, "expected 'mostow TWO_K E1 E2'"));
            }
            rec.mostow = Some((parse_num(parts[0], line)?, exponent(parts[1], line)?, exponent(parts[2], line)?));
        }
        "relators" => g.relators.push((v.into(), line)),
        "chi_orb" => rec.chi_orb = parse_rational(v, line)?,
        "cocompact" => rec.cocompact = yes_no(v, line)?,
        "arithmetic" => rec.arithmetic = yes_no(v, line)?,
        "complete" => rec.complete = yes_no(v, line)?,
        "basic23p" => rec.basic_23p = yes_no(v, line)?,
        "lcm" => rec.lcm = Some(parse_num(v, line)?),
        "map_index" => rec.map_index = Some(parse_num(v, line)?),
        "abelianization" => {
            rec.abelianization = Some(AbelianInvariants::parse(v).ok_or_else(|| syntax(line, format!("bad abelian group '{v}'")))?)
        }
        "isotropy" => {
            let (w, o) = split_colon(v, line)?;
            let order: u64 = parse_num(o, line)?;
            if order == 0 {
                return Err(syntax(line, "isotropy order must be positive"));
            }
            let words = words(w, n, line)?;
            rec.isotropy.push(Isotropy { words, order });
        }
        "cusp" if v == "unknown" => rec.cusps.push(CuspEntry { words: Vec::new(), relations: Vec::new() }),
        "cusp" => {
            let (w, r) = split_colon(v, line)?;
            let words = words(w, n, line)?;
            let relations = if r.is_empty() { Vec::new() } else { self::words(r, words.len(), line)? };
            rec.cusps.push(CuspEntry { words, relations });
        }
        "congruence" => {
            let (head, tail) = split_colon(v, line)?;
            let mut hp = head.split_whitespace();
            let prime = match hp.next() {
                Some("-") => None,
                Some(p) => Some(parse_num(p, line)?),
                None => return Err(syntax(line, "missing prime")),
            };
            let factor: Vec<u64> = hp.map(|c| parse_num(c, line)).collect::<Result<_, _>>()?;
            let mut tp = tail.split_whitespace();
            let order = parse_num(tp.next().ok_or_else(|| syntax(line, "missing order"))?, line)?;
            let name = tp.next().map(String::from);
            rec.congruence.push(CongruenceNote { prime, factor: (!factor.is_empty()).then_some(factor), order, name });
        }
        "subgroup" => {
            let (name, w) = split_colon(v, line)?;
            let words = words(w, n, line)?;
            rec.subgroups.push((name.into(), words));
        }
        "row" => {
            let cols: Vec<&str> = v.split('|').map(str::trim).collect();
            if cols.len() != 6 {
                return Err(syntax(line, "row needs 6 columns: index | core | quotient | ab | self-int | b1"));
            }
            let opt = |s: &str| (s != "-" && !s.is_empty()).then(|| s.to_string());
            let core = match opt(cols[1]) {
                Some(c) => Some(parse_num(&c, line)?),
                None => None,
            };
            let self_intersections = if cols[4] == "-" {
                Vec::new()
            } else {
                cols[4].split(',').map(|s| parse_num(s, line)).collect::<Result<_, _>>()?
            };
            rec.golden.push(GoldenRow {
                index: parse_num(cols[0], line)?,
                core,
                quotient: opt(cols[2]),
                abelianization: AbelianInvariants::parse(cols[3]).ok_or_else(|| syntax(line, "bad abelian group"))?,
                self_intersections,
                b1: parse_num(cols[5], line)?,
            });
        }
        "triangle_map" => {
            let (head, imgs) = match v.split_once(':') {
                Some((h, i)) => (h.trim(), Some(i.trim())),
                None => (v.trim(), None),
            };
            let mut hp = head.split_whitespace();
            let kernel = match hp.next() {
                Some("K") => MapKernel::K,
                Some("L") => MapKernel::L,
                _ => return Err(syntax(line, "triangle_map kernel must be K or L")),
            };
            let o: Vec<u32> = hp
                .next()
                .ok_or_else(|| syntax(line, "missing orders"))?
                .split(',')
                .map(|s| parse_num(s, line))
                .collect::<Result<_, _>>()?;
            if o.len() != 3 {
                return Err(syntax(line, "triangle orders take the form p,q,r"));
            }
            let images = match imgs {
                Some(i) => {
                    let w = words(i, 2, line)?;
                    let arr: [Word; 3] = w.try_into().map_err(|_| syntax(line, "expected three image words"))?;
                    Some(arr)
                }
                None => None,
            };
            rec.triangle_maps.push(TriangleMapRow { kernel, orders: (o[0], o[1], o[2]), images });
        }
        "field" => g.model.field = Some(v.into()),
        "let" => {
            let (n, e) = v.split_once('=').ok_or_else(|| syntax(line, "expected 'let NAME = EXPR'"))?;
            g.model.lets.push((n.trim().into(), e.trim().into(), line));
        }
        "form" => g.model.form = Some((v.into(), line)),
        "matrix" => {
            let (n, e) = v.split_once('=').ok_or_else(|| syntax(line, "expected 'matrix NAME = ...'"))?;
            g.model.matrices.push((n.trim().into(), e.trim().into(), line));
        }
        _ => return Err(syntax(line, format!("unknown group key '{key}'"))),
    }
    Ok(())
}

fn rec_ngens(rec: &LatticeRecord) -> usize {
    if rec.generator_names.is_empty() {
        default_generators(&rec.family).len()
    } else {
        rec.generator_names.len()
    }
}

fn finish_model(
    rec: &LatticeRecord,
    d: ModelDraft,
    fields: &HashMap<String, Arc<NumberField>>,
    constants: &HashMap<String, HashMap<String, FieldElem>>,
) -> Result<Option<MatrixModel>, LatError> {
    let Some(fname) = d.field else {
        if d.form.is_some() || !d.matrices.is_empty() || !d.lets.is_empty() {
            return Err(rec.err("field", "matrix data without a field"));
        }
        return Ok(None);
    };
    let field = fields.get(&fname).ok_or_else(|| rec.err("field", format!("unknown field {fname}")))?.clone();
    let mut names = constants.get(&fname).cloned().unwrap_or_default();
    for (n, e, line) in d.lets {
        let x = parse_element(&e, &field, &names).map_err(|err| syntax(line, err.to_string()))?;
        names.insert(n, x);
    }
    let mat = |src: &str, line: usize| -> Result<Mat3, LatError> {
        let entries = matrix_entries(src, line)?;
        let v = entries
            .iter()
            .map(|s| parse_element(s, &field, &names).map_err(|err| syntax(line, format!("'{s}': {err}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Mat3::from_vec(v).map_err(|err| syntax(line, err.to_string()))
    };
    let (fsrc, fline) = d.form.ok_or_else(|| rec.err("form", "matrix model without a Hermitian form"))?;
    let form = HermitianForm::new(mat(&fsrc, fline)?).map_err(|e| rec.err("form", e.to_string()))?;
    let n = rec.generator_names.len();
    let mut gens: Vec<Option<Mat3>> = vec![None; n];
    let mut named = HashMap::new();
    let target = crate::cxhyp::ProjectiveMatrices { field: field.clone() };
    for (name, src, line) in d.matrices {
        let m = if let Some(w) = src.strip_prefix("word") {
            let w = Word::parse(w.trim(), n).map_err(|e| syntax(line, e.to_string()))?;
            let mut acc = target.identity();
            for &l in w.letters() {
                let g = gens[l.unsigned_abs() as usize - 1]
                    .as_ref()
                    .ok_or_else(|| syntax(line, format!("generator {} has no matrix yet", l.unsigned_abs())))?;
                acc = if l > 0 { acc.mul(g) } else { acc.mul(&g.adjugate()) };
            }
            acc
        } else {
            mat(&src, line)?
        };
        match rec.generator_names.iter().position(|g| *g == name) {
            Some(i) => gens[i] = Some(m),
            None => {
                named.insert(name, m);
            }
        }
    }
    let generators = gens
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| rec.err("matrix", format!("no matrix for generator {}", rec.generator_names[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let model = MatrixModel { field, form, generators, named };
    if let Some(p) = &rec.presentation {
        for r in p.relators() {
            if !model.is_identity(r) {
                return Err(rec.err("relators", format!("relator {r} is not scalar in the matrix model")));
            }
        }
    }
    Ok(Some(model))
}

fn finish_group(
    g: GroupDraft,
    fields: &HashMap<String, Arc<NumberField>>,
    constants: &HashMap<String, HashMap<String, FieldElem>>,
) -> Result<LatticeRecord, LatError> {
    let mut rec = g.rec;
    if !g.seen_generators {
        rec.generator_names = default_generators(&rec.family);
    }
    let n = rec.generator_names.len();
    if !g.relators.is_empty() {
        let mut rels = Vec::new();
        for (src, line) in &g.relators {
            rels.extend(words(src, n, *line)?);
        }
        rec.presentation = Some(Presentation::with_names(n, rels, rec.generator_names.clone()));
    } else if let (Family::Mostow { p, .. }, Some((two_k, e1, e2))) = (&rec.family, rec.mostow) {
        let pres = mostow_presentation(*p, two_k, e1, e2).map_err(|e| rec.err("mostow", e.to_string()))?;
        rec.presentation = Some(pres);
        rec.complete = true;
    } else if let Family::Triangle { orders: (p, q, r) } = rec.family {
        rec.presentation = Some(super::triangle_target(p, q, r).presentation);
        rec.complete = true;
    }
    if !rec.cocompact && rec.cusps.is_empty() {
        return Err(rec.err("cusp", "non-cocompact record without a cusp entry"));
    }
    rec.model = finish_model(&rec, g.model, fields, constants)?;
    Ok(rec)
}

/// Parses catalog text; see `docs/catalog-format.md` for the grammar.
pub fn parse_catalog(src: &str) -> Result<Catalog, LatError> {
    let mut fields = HashMap::new();
    let mut constants = HashMap::new();
    let mut records: Vec<LatticeRecord> = Vec::new();
    let mut section = Section::None;
    let mut pending = String::new();
    let mut pending_line = 0;
    let close = |s: Section,
                 fields: &mut HashMap<String, Arc<NumberField>>,
                 constants: &mut HashMap<String, HashMap<String, FieldElem>>,
                 records: &mut Vec<LatticeRecord>|
     -> Result<(), LatError> {
        match s {
            Section::None => {}
            Section::Field(d) => finish_field(d, fields, constants)?,
            Section::Group(g) => {
                let line = g.line;
                let rec = finish_group(*g, fields, constants)?;
                if records.iter().any(|r| r.name == rec.name) {
                    return Err(syntax(line, format!("duplicate record {}", rec.name)));
                }
                records.push(rec);
            }
        }
        Ok(())
    };
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("").trim_end();
        if pending.is_empty() {
            pending_line = i + 1;
        }
        if let Some(body) = text.strip_suffix('\\') {
            pending.push_str(body);
            pending.push(' ');
            continue;
        }
        pending.push_str(text);
        let line_text = std::mem::take(&mut pending);
        let t = line_text.trim();
        let line = pending_line;
        if t.is_empty() {
            continue;
        }
        if let Some(head) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let prev = std::mem::replace(&mut section, Section::None);
            close(prev, &mut fields, &mut constants, &mut records)?;
            let (kind, name) = head.split_once(' ').ok_or_else(|| syntax(line, "section header needs a name"))?;
            let name = name.trim().to_string();
            section = match kind {
                "field" => Section::Field(FieldDraft {
                    name,
                    line,
                    gen_name: None,
                    modulus: None,
                    cyclotomic: None,
                    conjugation: None,
                    embedding: None,
                    constants: Vec::new(),
                }),
                "group" => Section::Group(Box::new(GroupDraft {
                    rec: new_record(&name),
                    line,
                    relators: Vec::new(),
                    model: ModelDraft::default(),
                    seen_generators: false,
                })),
                _ => return Err(syntax(line, format!("unknown section '{kind}'"))),
            };
            continue;
        }
        let (key, value) = match t.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => (t, ""),
        };
        match &mut section {
            Section::None => return Err(syntax(line, "key outside a section")),
            Section::Field(d) => field_key(d, key, value, line)?,
            Section::Group(g) => group_key(g, key, value, line)?,
        }
    }
    if !pending.is_empty() {
        return Err(syntax(pending_line, "continuation at end of file"));
    }
    close(section, &mut fields, &mut constants, &mut records)?;
    Ok(Catalog { fields, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "
[field Q3]
cyclotomic 3

[group Demo]
family triangle 2 3 7
chi_orb -1/42   # orbifold value
cocompact yes
isotropy 1 : 2
isotropy 2 : 3
isotropy 12 : 7
";

    #[test]
    fn parses_small_catalog() {
        let c = parse_catalog(SMALL).unwrap();
        let r = c.get("Demo").unwrap();
        assert_eq!(r.family, Family::Triangle { orders: (2, 3, 7) });
        assert_eq!(r.isotropy_lcm(), Some(42));
        assert_eq!(r.presentation().unwrap().relators().len(), 3);
        assert!(c.fields.contains_key("Q3"));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_models() {
        assert!(matches!(parse_catalog("[group X]\nfrobnicate 3\n"), Err(LatError::Syntax { line: 2, .. })));
        assert!(parse_catalog("[group X]\ncocompact maybe\n").is_err());
        let bad = "
[field Q]
polynomial 0 1
[group X]
generators a
relators 1^2
cocompact yes
field Q
form [1, 0, 0; 0, 1, 0; 0, 0, -1]
matrix a = [1, 0, 0; 0, 1, 0; 0, 0, 1/2]
";
        let err = parse_catalog(bad).unwrap_err().to_string();
        assert!(err.contains("not scalar"), "{err}");
        let good = bad.replace("0, 0, 1/2", "0, 0, -1");
        assert!(parse_catalog(&good).is_ok());
    }
}
