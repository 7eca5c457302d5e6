use std::path::PathBuf;
use std::process::ExitCode;

use ballquot_core::exactalg::prime_factors_mod;
use ballquot_core::fpcore::{epimorphism_check, LowIndexOptions, PermTarget, Word};
use ballquot_core::latcat::{validate, Catalog, LatticeRecord, Severity};
use ballquot_core::pipeline::{
    certify, certify_words, congruence_table, golden_diff, header_row, low_index_candidates, report_tables, tower,
    verify_largeness_maps, Limits, SubgroupReport,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ballquot", version, about = "Lattice catalog and subgroup certification")]
struct Cli {
    /// Catalog file to use instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Certify every subgroup of index at most N, up to conjugacy.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_index: usize,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
        /// Only print torsion-free subgroups.
        #[arg(long)]
        torsion_free: bool,
    },
    /// Reduce the matrix model modulo a prime and describe the image.
    Congruence {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
        /// Which prime factor of the field's defining polynomial (0-based).
        #[arg(long)]
        factor: Option<usize>,
    },
    /// Certify one subgroup.
    Certify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        source: Source,
    },
    /// The index-n subgroup of a tower built on a certified subgroup.
    Tower {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        subgroup: Named,
        #[arg(long)]
        n: u64,
    },
    /// Verify the maps to triangle groups.
    Largeness {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        group: Option<String>,
    },
    /// Certify the stored subgroups and print the tables.
    Report {
        /// Compare against stored rows; exits nonzero on any mismatch.
        #[arg(long)]
        golden_diff: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Info { name: String },
    Validate {
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Named {
    /// File of comma- or newline-separated generator words.
    #[arg(long)]
    subgroup_words: Option<PathBuf>,
    /// Subgroup stored in the catalog record.
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct Source {
    #[arg(long)]
    subgroup_words: Option<PathBuf>,
    #[arg(long)]
    subgroup: Option<String>,
    /// Stabilizer of a projective point in the reduction modulo this prime.
    #[arg(long)]
    from_congruence: Option<u64>,
    #[arg(long, requires = "from_congruence")]
    factor: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "from_congruence")]
    point: usize,
    /// The k-th subgroup (see --which) of index at most N.
    #[arg(long)]
    from_lis: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "from_lis")]
    which: usize,
}

fn emit<T: Serialize>(kind: &str, value: &T) {
    let mut v = serde_json::to_value(value).expect("serializable");
    if let Some(obj) = v.as_object_mut() {
        obj.insert("kind".into(), json!(kind));
    }
    line(v);
}

fn line(v: impl std::fmt::Display) {
    use std::io::Write;
    if writeln!(std::io::stdout().lock(), "{v}").is_err() {
        std::process::exit(0);
    }
}

fn read_words(path: &PathBuf, rec: &LatticeRecord) -> Result<Vec<Word>, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let joined: Vec<&str> = src.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
    Word::parse_list(&joined.join(","), rec.ngens()).map_err(|e| e.to_string())
}

fn named_words(rec: &LatticeRecord, file: &Option<PathBuf>, name: &Option<String>) -> Result<Vec<Word>, String> {
    match (file, name) {
        (Some(f), _) => read_words(f, rec),
        (None, Some(n)) => rec.subgroup(n).map(<[Word]>::to_vec).ok_or_else(|| format!("{} has no subgroup {n}", rec.name)),
        (None, None) => Err("no subgroup given".into()),
    }
}

fn factor_coeffs(rec: &LatticeRecord, prime: u64, factor: Option<usize>) -> Result<Option<Vec<u64>>, String> {
    let Some(i) = factor else { return Ok(None) };
    let model = rec.model.as_ref().ok_or("record has no matrix model")?;
    let fs = prime_factors_mod(&model.field, prime).map_err(|e| e.to_string())?;
    fs.get(i).map(|f| Some(f.0.clone())).ok_or_else(|| format!("only {} prime factors above {prime}", fs.len()))
}

fn run(cli: Cli) -> Result<bool, String> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::load(p),
        None => Catalog::builtin(),
    }
    .map_err(|e| e.to_string())?;
    let get = |name: &str| catalog.get(name).map_err(|e| e.to_string());
    let limits = Limits::default();
    match cli.cmd {
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            for rec in &catalog.records {
                emit("record", &header_row(rec));
            }
        }
        Cmd::Catalog { cmd: CatalogCmd::Info { name } } => {
            let rec = get(&name)?;
            emit("record", &header_row(rec));
            let words = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
            line(
                json!({
                    "kind": "details",
                    "group": rec.name,
                    "generators": rec.generator_names,
                    "relators": rec.presentation.as_ref().map(|p| words(p.relators())),
                    "complete": rec.complete,
                    "isotropy": rec.isotropy.iter().map(|i| json!({"words": words(&i.words), "order": i.order})).collect::<Vec<_>>(),
                    "cusps": rec.cusps.iter().map(|c| json!({"words": words(&c.words), "relations": words(&c.relations)})).collect::<Vec<_>>(),
                    "subgroups": rec.subgroups.iter().map(|(n, w)| json!({"name": n, "words": words(w)})).collect::<Vec<_>>(),
                    "matrix_model": rec.model.is_some(),
                })
            );
        }
        Cmd::Catalog { cmd: CatalogCmd::Validate { bound } } => {
            let mut ok = true;
            for rec in &catalog.records {
                for d in validate(rec, bound) {
                    ok &= d.severity != Severity::Error;
                    emit("diagnostic", &d);
                }
            }
            return Ok(ok);
        }
        Cmd::Enumerate { group, max_index, max_nodes, torsion_free } => {
            let rec = get(&group)?;
            let (tables, complete) =
                low_index_candidates(rec, max_index, &LowIndexOptions { max_nodes }).map_err(|e| e.to_string())?;
            for (k, t) in tables.iter().enumerate() {
                let r = certify(rec, t, &format!("lis:{k}"), &limits).map_err(|e| e.to_string())?;
                if !torsion_free || r.torsion_free == Some(true) {
                    emit("subgroup", &r);
                }
            }
            line(json!({"kind": "summary", "group": group, "classes": tables.len(), "complete": complete}));
        }
        Cmd::Congruence { group, prime, factor } => {
            let rec = get(&group)?;
            let f = factor_coeffs(rec, prime, factor)?;
            let (img, _) = congruence_table(rec, prime, f, 0).map_err(|e| e.to_string())?;
            let p = rec.presentation().map_err(|e| e.to_string())?;
            let check = epimorphism_check(p, &PermTarget { degree: img.degree() }, &img.images).map_err(|e| e.to_string())?;
            line(
                json!({
                    "kind": "congruence",
                    "group": group,
                    "prime": prime,
                    "field_order": img.field_order,
                    "points": img.degree(),
                    "order": img.group.order().to_string(),
                    "orbits": img.group.orbits().iter().map(Vec::len).collect::<Vec<_>>(),
                    "relators_trivial": check.ok,
                    "failing": check.failing.map(|(_, w)| w.to_string()),
                })
            );
        }
        Cmd::Certify { group, source } => {
            let rec = get(&group)?;
            let given = [source.subgroup_words.is_some(), source.subgroup.is_some(), source.from_congruence.is_some(), source.from_lis.is_some()];
            if given.iter().filter(|x| **x).count() != 1 {
                return Err("give exactly one of --subgroup-words, --subgroup, --from-congruence, --from-lis".into());
            }
            let report = if let Some(prime) = source.from_congruence {
                let f = factor_coeffs(rec, prime, source.factor)?;
                let (_, t) = congruence_table(rec, prime, f, source.point).map_err(|e| e.to_string())?;
                certify(rec, &t, &format!("congruence:{prime}:{}", source.point), &limits)
            } else if let Some(n) = source.from_lis {
                let (tables, _) = low_index_candidates(rec, n, &LowIndexOptions::default()).map_err(|e| e.to_string())?;
                let t = tables.get(source.which).ok_or_else(|| format!("only {} subgroups of index <= {n}", tables.len()))?;
                certify(rec, t, &format!("lis:{}", source.which), &limits)
            } else {
                let words = named_words(rec, &source.subgroup_words, &source.subgroup)?;
                certify_words(rec, &words, &limits)
            }
            .map_err(|e| e.to_string())?;
            emit("subgroup", &report);
        }
        Cmd::Tower { group, subgroup, n } => {
            let rec = get(&group)?;
            let words = named_words(rec, &subgroup.subgroup_words, &subgroup.subgroup)?;
            let h = certify_words(rec, &words, &limits).map_err(|e| e.to_string())?;
            let t = tower(rec, &h, n).map_err(|e| e.to_string())?;
            emit("tower", &t);
        }
        Cmd::Largeness { all, group } => {
            let recs: Vec<&LatticeRecord> = match (&group, all) {
                (Some(g), _) => vec![get(g)?],
                (None, true) => catalog.records.iter().collect(),
                (None, false) => return Err("give --all or --group".into()),
            };
            for v in verify_largeness_maps(&recs, &limits) {
                emit("largeness", &v);
            }
        }
        Cmd::Report { golden_diff: diff } => {
            let mut reports: Vec<SubgroupReport> = Vec::new();
            let recs: Vec<&LatticeRecord> = catalog.records.iter().filter(|r| !r.golden.is_empty()).collect();
            for rec in &recs {
                if let Some(words) = rec.subgroup("H") {
                    reports.push(certify_words(rec, words, &limits).map_err(|e| e.to_string())?);
                }
            }
            if !diff {
                line(report_tables(&recs, &reports).trim_end());
                return Ok(true);
            }
            let mut ok = true;
            for rec in &recs {
                let mism = golden_diff(rec, &reports);
                ok &= mism.is_empty();
                for m in &mism {
                    emit("mismatch", m);
                }
                let covered = reports.iter().filter(|r| r.group == rec.name).count();
                line(
                    json!({"kind": "golden", "group": rec.name, "rows": rec.golden.len(), "reports": covered, "mismatches": mism.len()})
                );
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
