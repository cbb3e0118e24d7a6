use charmod_core::annihilator::{polytope_annihilator, AnsatzBounds, Completeness};
use charmod_core::bspline::{bspline_value, check_dbh, generic_samples};
use charmod_core::charmod::{annihilator_by_elimination, face_extraction_operator, presentation};
use charmod_core::dirimage::{dir_image_presentation, reduce_generators, spline_iso_certificate, spline_module_presentation};
use charmod_core::geometry::CellComplex;
use charmod_core::homology::{bm_betti, bm_chain_complex, direct_image_summand_counts};
use charmod_core::io::{q_to_json, read_complex, ParseError};
use charmod_core::rational::{parse_q, Q};
use charmod_core::weyl::WeylElement;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::fmt::Debug;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "charmod", version, about = "Characteristic D-modules of polyhedral complexes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Complex file (JSON)
    file: PathBuf,
    /// Plain text instead of JSON
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Overridden by CHARMOD_SEED
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical presentation of the characteristic module
    Presentation(Common),
    /// Annihilator of a cell's characteristic distribution
    Ann {
        #[command(flatten)]
        common: Common,
        /// Cell id; defaults to the unique maximal cell
        #[arg(long)]
        cell: Option<String>,
        /// Ansatz bounds `order,degree`
        #[arg(long, value_parser = parse_bounds)]
        bounds: Option<AnsatzBounds>,
        /// Use the elimination algorithm only
        #[arg(long)]
        elimination: bool,
    },
    /// Borel-Moore Betti numbers
    Betti(Common),
    /// Presentation of the degree-zero direct image under the projection to the first s coordinates
    Dirimage {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        project: usize,
        /// Eliminate redundant generators
        #[arg(long)]
        reduce: bool,
        /// Include the relations of the spline module
        #[arg(long)]
        spline_module: bool,
    },
    /// Pointwise B-spline evaluation and checks
    Spline {
        #[command(subcommand)]
        action: SplineAction,
    },
    /// Collapse-based certificate for the spline isomorphism
    Collapse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        project: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Consistency checks on a complex
    Verify(Common),
}

#[derive(Subcommand)]
enum SplineAction {
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        project: usize,
        /// Point `x1,...,xs`; entries are integers or `p/q`
        #[arg(long, value_parser = parse_point)]
        at: Point,
        #[arg(long)]
        cell: Option<String>,
    },
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        project: usize,
        #[command(flatten)]
        sampling: Sampling,
        /// Alternative choices of k_i per facet
        #[arg(long, default_value_t = 5)]
        alternatives: usize,
    },
}

#[derive(Clone, Debug)]
struct Point(Vec<Q>);

fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',')
        .map(|t| parse_q(t.trim()).ok_or_else(|| format!("malformed rational {t:?}")))
        .collect::<Result<_, _>>()
        .map(Point)
}

fn parse_bounds(s: &str) -> Result<AnsatzBounds, String> {
    let (a, b) = s.split_once(',').ok_or("expected `order,degree`")?;
    Ok(AnsatzBounds {
        max_order: a.trim().parse().map_err(|e| format!("{e}"))?,
        max_coeff_degree: b.trim().parse().map_err(|e| format!("{e}"))?,
    })
}

enum Failure {
    Parse(ParseError),
    Usage(String),
    Domain { name: String, message: String },
}

impl Failure {
    fn domain<E: Debug + std::fmt::Display>(e: E) -> Self {
        let dbg = format!("{e:?}");
        let name = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure::Domain {
            name,
            message: e.to_string(),
        }
    }
}

macro_rules! domain_from {
    ($($t:path),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::domain(e)
            }
        }
    )*};
}

domain_from!(
    charmod_core::geometry::GeometryError,
    charmod_core::charmod::CharmodError,
    charmod_core::annihilator::AnnihilatorError,
    charmod_core::dirimage::DirImageError,
    charmod_core::bspline::SplineError,
    charmod_core::weyl::WeylError
);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

struct Report {
    json: Value,
    text: String,
}

fn load(c: &Common) -> Result<CellComplex, Failure> {
    Ok(read_complex(&c.file)?)
}

fn seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("CHARMOD_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("CHARMOD_SEED: not an integer: {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn maximal_cell(k: &CellComplex, requested: Option<&String>) -> Result<String, Failure> {
    if let Some(id) = requested {
        k.cell(id)?;
        return Ok(id.clone());
    }
    let mut top = Vec::new();
    for c in k.cells() {
        if k.cofaces(&c.id)?.is_empty() {
            top.push(c.id.clone());
        }
    }
    match top.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Failure::Usage(format!("several maximal cells ({}); pick one with --cell", top.join(", ")))),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn run(verb: Verb) -> Result<(Report, bool), Failure> {
    let report = match verb {
        Verb::Presentation(c) => {
            let p = presentation(&load(&c)?);
            let text = p
                .relations()
                .iter()
                .map(|r| {
                    let terms: Vec<String> = r
                        .iter()
                        .zip(p.generators())
                        .filter(|(w, _)| !w.is_zero())
                        .map(|(w, g)| format!("({w})*[{g}]"))
                        .collect();
                    terms.join(" + ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Report { json: p.to_json(), text }
        }
        Verb::Ann {
            common,
            cell,
            bounds,
            elimination,
        } => {
            let k = load(&common)?;
            let id = maximal_cell(&k, cell.as_ref())?;
            let sigma = k.cell(&id)?;
            let (ideal, completeness) = if elimination || !sigma.is_bounded() {
                (annihilator_by_elimination(&k, &id)?, "exact")
            } else {
                let a = polytope_annihilator(sigma, bounds.unwrap_or_default())?;
                let tag = match a.completeness {
                    Completeness::Exact => "exact",
                    Completeness::VerifiedSubIdeal => "verified sub-ideal",
                };
                (a.ideal, tag)
            };
            let gens = ideal.canonical_generators();
            let strs: Vec<String> = gens.iter().map(WeylElement::to_string).collect();
            let pruned: Vec<String> = ideal.pruned_generators()?.iter().map(WeylElement::to_string).collect();
            Report {
                json: json!({"cell": id, "completeness": completeness, "generators": pruned, "groebner_basis": strs}),
                text: pruned.join(", "),
            }
        }
        Verb::Betti(c) => {
            let b = bm_betti(&load(&c)?);
            let text = b.to_vec().iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            Report { json: b.to_json(), text }
        }
        Verb::Dirimage {
            common,
            project,
            reduce,
            spline_module,
        } => {
            let k = load(&common)?;
            let mut p = if spline_module {
                spline_module_presentation(&k, project)?
            } else {
                dir_image_presentation(&k, project)?
            };
            if reduce {
                p = reduce_generators(&p);
            }
            let counts: serde_json::Map<String, Value> = if project < k.ambient_dim() {
                direct_image_summand_counts(&k, project)
                    .into_iter()
                    .map(|((kk, i), n)| (format!("{kk},{i}"), Value::from(n)))
                    .collect()
            } else {
                Default::default()
            };
            let mut json = p.to_json();
            json["summand_counts"] = Value::Object(counts);
            let text = format!("{} generators, {} relations", p.generators.len(), p.relations.len());
            Report { json, text }
        }
        Verb::Spline { action } => match action {
            SplineAction::Eval {
                common,
                project,
                at,
                cell,
            } => {
                let k = load(&common)?;
                if at.0.len() != project {
                    return Err(Failure::Usage(format!("--at has {} coordinates, expected {project}", at.0.len())));
                }
                let ids: Vec<String> = match cell {
                    Some(id) => vec![id],
                    None => {
                        let mut v = Vec::new();
                        for c in k.cells() {
                            if k.cofaces(&c.id)?.is_empty() {
                                v.push(c.id.clone());
                            }
                        }
                        v
                    }
                };
                let mut rows = Vec::new();
                let mut lines = Vec::new();
                for id in ids {
                    let v = bspline_value(k.cell(&id)?, project, &at.0)?;
                    lines.push(format!("{id}: {}", charmod_core::rational::format_q(&v.lattice_value)));
                    rows.push(json!({
                        "cell": id,
                        "lattice_value": q_to_json(&v.lattice_value),
                        "projection_index": v.projection_index.to_string(),
                        "density": q_to_json(&v.density()),
                        "euclidean": v.euclidean(),
                    }));
                }
                Report {
                    json: Value::Array(rows),
                    text: lines.join("\n"),
                }
            }
            SplineAction::Check {
                common,
                project,
                sampling,
                alternatives,
            } => {
                let k = load(&common)?;
                let s = seed(sampling.seed)?;
                let xs = generic_samples(&k, project, sampling.samples, s)?;
                let r = check_dbh(&k, project, &xs, alternatives, s)?;
                let ok = r.all_equal();
                let text = format!(
                    "{} checks, {}",
                    r.entries.len(),
                    if ok { "all equal" } else { "MISMATCH" }
                );
                return Ok((Report { json: r.to_json(), text }, ok));
            }
        },
        Verb::Collapse {
            common,
            project,
            sampling,
        } => {
            let k = load(&common)?;
            let c = spline_iso_certificate(&k, project, sampling.samples.max(1), seed(sampling.seed)?)?;
            Report {
                text: format!("{:?}", c.verdict),
                json: c.to_json(),
            }
        }
        Verb::Verify(c) => return verify(&load(&c)?),
    };
    Ok((report, true))
}

fn verify(k: &CellComplex) -> Result<(Report, bool), Failure> {
    let m = k.ambient_dim();
    let boundary = bm_chain_complex(k).is_complex();
    let pres = presentation(k);
    let count = pres.relations().len() == m * k.len();
    let mut extraction = Vec::new();
    let mut all_extract = true;
    for sigma in k.cells() {
        for inc in k.facets(&sigma.id)? {
            let row = match face_extraction_operator(k, &sigma.id, &inc.facet) {
                Ok((p, c)) => {
                    let mut v = vec![WeylElement::zero(m); pres.generators().len()];
                    v[pres.position(&sigma.id)?] = p;
                    v[pres.position(&inc.facet)?] = WeylElement::constant(m, -c);
                    let ok = pres.is_zero_in_module(&v)?;
                    all_extract &= ok;
                    json!({"cell": sigma.id, "facet": inc.facet, "verified": ok})
                }
                Err(e) => json!({"cell": sigma.id, "facet": inc.facet, "skipped": format!("{e}")}),
            };
            extraction.push(row);
        }
    }
    let ok = boundary && count && all_extract;
    let json = json!({
        "boundary_squares_to_zero": boundary,
        "relation_count": {"found": pres.relations().len(), "expected": m * k.len(), "ok": count},
        "facet_extraction": extraction,
        "ok": ok,
    });
    let text = format!(
        "boundary^2 = 0: {boundary}\nrelation count: {count}\nfacet extraction: {all_extract}"
    );
    Ok((Report { json, text }, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match &cli.verb {
        Verb::Presentation(c) | Verb::Betti(c) | Verb::Verify(c) => c.text,
        Verb::Ann { common, .. } | Verb::Dirimage { common, .. } | Verb::Collapse { common, .. } => common.text,
        Verb::Spline { action } => match action {
            SplineAction::Eval { common, .. } | SplineAction::Check { common, .. } => common.text,
        },
    };
    match run(cli.verb) {
        Ok((r, ok)) => {
            let out = if text { r.text } else { pretty(&r.json) };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Parse(e)) => {
            eprintln!("{}", pretty(&json!({"error": "ParseError", "message": e.to_string()})));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", pretty(&json!({"error": "UsageError", "message": msg})));
            ExitCode::from(1)
        }
        Err(Failure::Domain { name, message }) => {
            eprintln!("{}", pretty(&json!({"error": name, "message": message})));
            ExitCode::from(2)
        }
    }
}
