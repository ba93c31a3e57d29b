//! `rht`: command-line front end for the Sullivan algebra toolkit.
//!
//! One command per invocation. `--format machine` emits a single JSON
//! record on stdout with deterministic key order; `--format human` prints
//! a short table. Exit codes: 0 success, 1 verification failure, 2 input
//! error, 3 resource limit.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rht_core::bounds::{self, BoundQuery, Case, Threshold};
use rht_core::catalog::{self, Hermitian};
use rht_core::fibrations::RelativeSullivan;
use rht_core::halperin::{derivation_space, meier_check, AlgebraPresentation, Verdict};
use rht_core::ideals::{is_regular_sequence, reorder_xrem};
use rht_core::invariants::{
    four_periodic_chi, hard_lefschetz_check, hard_lefschetz_scan, profile,
    six_dimensional_admissible_b3,
};
use rht_core::verify::run_all;
use rht_core::{parse_polynomial, Error, ModelFile, Polynomial, Result, SullivanAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Parser)]
#[command(name = "rht", version, about = "Exact computations on finite Sullivan algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and check the Sullivan axioms (d^2 = 0, degree +1).
    Validate {
        #[arg(long)]
        model: String,
    },
    /// Betti numbers of a model up to a cutoff degree.
    Betti {
        #[arg(long)]
        model: String,
        /// Defaults to formal dimension + 6.
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Full invariant profile: formal dimension, both Euler characteristics,
    /// Betti vector, generator counts.
    Profile {
        #[arg(long)]
        model: String,
    },
    /// Structural classification: minimal, pure, spherical dimension.
    Classify {
        #[arg(long)]
        model: String,
    },
    /// Negative-degree derivation criterion on a finite evenly graded
    /// algebra given by generators and relations.
    Halperin {
        /// Generators as name:degree pairs, comma separated (e.g. "a:2,b:4").
        #[arg(long)]
        gens: String,
        /// Relation polynomial; repeat the flag for each relation.
        #[arg(long = "rel", required = true)]
        relations: Vec<String>,
        /// Also report the derivation space dimension at this single shift.
        #[arg(long)]
        shift: Option<i64>,
    },
    /// Hard-Lefschetz test on a model with a degree-2 class.
    HlCheck {
        #[arg(long)]
        model: String,
        /// Candidate class; omitted means scan for one.
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Reorder a regular sequence so that 2 deg x_j <= deg y_{i_j}.
    Reorder {
        /// Even polynomial generators as name:degree pairs.
        #[arg(long)]
        gens: String,
        #[arg(long = "rel", required = true)]
        relations: Vec<String>,
    },
    /// Complete-intersection test: is the relation list a regular sequence?
    RegularSeq {
        #[arg(long)]
        gens: String,
        #[arg(long = "rel", required = true)]
        relations: Vec<String>,
    },
    /// Analyze a relative model: fiber/base split, transgression,
    /// degeneration versions, dimension gap.
    Fibration {
        /// Relative model file (a model file with a "fiber" list).
        #[arg(long, conflicts_with = "key")]
        model: Option<String>,
        /// Built-in relative model key instead of a file.
        #[arg(long)]
        key: Option<String>,
    },
    /// Maximize prod deg y_i / deg x_i under the degree-budget constraints.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// sphere | cp | hp | s2xhp
        #[arg(long)]
        case: String,
        /// Strict lower bound on generic degrees: n/k (default) or c.
        #[arg(long, default_value = "nk")]
        threshold: String,
        /// S2xHP only: drop the multiple-of-4 parameterization of the
        /// second relation degree.
        #[arg(long, default_value_t = false)]
        raw_s2xhp: bool,
    },
    /// Built-in model registry.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Four-periodic Euler characteristic chi = 2 + (n-2)/4 (2 - b3).
    FeasibleChi {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        b3: u32,
    },
    /// Run the complete verification battery.
    Verify,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List available model keys.
    List,
    /// Print a model (generators, differential, invariants).
    Show {
        key: String,
        /// Integer parameters, comma separated.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Write a model file to disk.
    Export {
        key: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        output: String,
    },
}

/// One command's outcome: a JSON record, human lines, and whether the
/// checked property held (drives exit code 1).
struct Report {
    record: Value,
    human: Vec<String>,
    ok: bool,
}

impl Report {
    fn ok(record: Value, human: Vec<String>) -> Self {
        Report {
            record,
            human,
            ok: true,
        }
    }
}

fn load_model(path: &str) -> Result<SullivanAlgebra> {
    let src = fs::read_to_string(path)?;
    let file = ModelFile::parse(&src)?;
    file.build()
}

fn load_valid_model(path: &str) -> Result<SullivanAlgebra> {
    let m = load_model(path)?;
    m.ensure_valid()?;
    Ok(m)
}

/// "a:2,b:4" -> [("a", 2), ("b", 4)].
fn parse_gens(spec: &str) -> Result<Vec<(String, u32)>> {
    spec.split(',')
        .map(|part| {
            let (name, deg) = part
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("expected name:degree, got `{}`", part)))?;
            let degree: u32 = deg
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad degree `{}`", deg)))?;
            Ok((name.trim().to_string(), degree))
        })
        .collect()
}

fn parse_params(spec: &str) -> Result<Vec<i64>> {
    if spec.trim().is_empty() {
        return Ok(vec![]);
    }
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad integer parameter `{}`", p)))
        })
        .collect()
}

fn presentation(gens: &str, relations: &[String]) -> Result<AlgebraPresentation> {
    let gens = parse_gens(gens)?;
    let gens_ref: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let rels_ref: Vec<&str> = relations.iter().map(|s| s.as_str()).collect();
    AlgebraPresentation::from_strings(&gens_ref, &rels_ref)
}

fn model_record(m: &SullivanAlgebra) -> Value {
    let gens: Vec<Value> = m
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "name": g.name,
                "degree": g.degree,
                "d": m.differential_of(i).to_string(),
            })
        })
        .collect();
    json!({ "generators": gens })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate { model } => {
            let m = load_model(model)?;
            let verdict = m.validate();
            let ok = verdict.ok();
            let detail = if ok {
                "d^2 = 0 and every differential raises degree by 1".to_string()
            } else {
                verdict
                    .issues
                    .iter()
                    .map(|(name, issue)| format!("{}: {:?}", name, issue))
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            Ok(Report {
                record: json!({"command": "validate", "valid": ok, "detail": detail}),
                human: vec![format!("{}: {}", if ok { "VALID" } else { "INVALID" }, detail)],
                ok,
            })
        }
        Command::Betti { model, cutoff } => {
            let m = load_valid_model(model)?;
            let cutoff = match cutoff {
                Some(c) => *c,
                None => m
                    .default_cutoff()
                    .ok_or_else(|| Error::invalid("negative formal dimension; pass --cutoff"))?,
            };
            let betti = m.cohomology(cutoff)?;
            let line = betti
                .dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Report::ok(
                json!({"command": "betti", "cutoff": cutoff, "dims": betti.dims}),
                vec![line],
            ))
        }
        Command::Profile { model } => {
            let m = load_valid_model(model)?;
            let p = profile(&m)?;
            let human = vec![
                format!("formal dimension  {}", p.formal_dim),
                format!(
                    "chi (formula)     {}",
                    p.chi_formula
                        .as_ref()
                        .map_or("n/a".to_string(), |v| v.to_string())
                ),
                format!("chi (homological) {}", p.chi_homological),
                format!("chi_pi            {}", p.chi_pi),
                format!(
                    "betti             {}",
                    p.betti
                        .dims
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                format!("even generators   {}", p.generator_count),
                format!("spherical dim     {}", p.spherical_dim),
            ];
            let mut record = serde_json::to_value(&p)?;
            record["command"] = json!("profile");
            Ok(Report::ok(record, human))
        }
        Command::Classify { model } => {
            let m = load_valid_model(model)?;
            let c = m.classify();
            let mut record = serde_json::to_value(c)?;
            record["command"] = json!("classify");
            Ok(Report::ok(
                record,
                vec![format!(
                    "minimal: {}  pure: {}  spherical dim: {}",
                    c.is_minimal, c.is_pure, c.spherical_dim
                )],
            ))
        }
        Command::Halperin {
            gens,
            relations,
            shift,
        } => {
            let pres = presentation(gens, relations)?;
            let verdict = meier_check(&pres)?;
            let mut record = json!({
                "command": "halperin",
                "verdict": verdict.label(),
                "quotient_dim": pres.dim(),
            });
            let mut human = vec![format!("{} (quotient dim {})", verdict.label(), pres.dim())];
            match &verdict {
                Verdict::HoldsByGeneratorCount { generators } => {
                    record["generators"] = json!(generators);
                }
                Verdict::HoldsByDerivations { shifts_checked } => {
                    record["shifts_checked"] = json!(shifts_checked);
                    human.push(format!("all shifts -1 .. -{} trivial", shifts_checked));
                }
                Verdict::FailsCriterion {
                    shift,
                    dimension,
                    witness,
                } => {
                    record["shift"] = json!(shift);
                    record["dimension"] = json!(dimension);
                    record["witness"] = json!(witness.describe(&pres));
                    human.push(format!(
                        "shift {} space has dimension {}; witness: {}",
                        shift,
                        dimension,
                        witness.describe(&pres)
                    ));
                }
            }
            if let Some(s) = shift {
                let space = derivation_space(&pres, *s)?;
                record["shift_query"] = json!({"shift": s, "dimension": space.dimension()});
                human.push(format!(
                    "derivation space at shift {}: dimension {}",
                    s,
                    space.dimension()
                ));
            }
            Ok(Report::ok(record, human))
        }
        Command::HlCheck {
            model,
            omega,
            trials,
            seed,
        } => {
            let m = load_valid_model(model)?;
            let (passes, witness): (bool, Option<Polynomial>) = match omega {
                Some(src) => {
                    let w = parse_polynomial(src, m.algebra())?;
                    let ok = hard_lefschetz_check(&m, &w)?;
                    (ok, ok.then_some(w))
                }
                None => {
                    let found = hard_lefschetz_scan(&m, *trials, *seed)?;
                    (found.is_some(), found)
                }
            };
            let wtext = witness.as_ref().map(|w| w.to_string());
            Ok(Report {
                record: json!({"command": "hl-check", "passes": passes, "witness": wtext}),
                human: vec![match &wtext {
                    Some(w) => format!("HARD-LEFSCHETZ PASSES with omega = {}", w),
                    None => "HARD-LEFSCHETZ FAILS (no witness found)".to_string(),
                }],
                ok: passes,
            })
        }
        Command::Reorder { gens, relations } => {
            let pres = presentation(gens, relations)?;
            let ambient = pres.ambient().clone();
            let ys: Vec<Polynomial> = relations
                .iter()
                .map(|s| parse_polynomial(s, &ambient))
                .collect::<Result<_>>()?;
            let perm = reorder_xrem(&ambient, &ys)?;
            let pairs: Vec<Value> = perm
                .iter()
                .enumerate()
                .map(|(j, &i)| {
                    json!({
                        "x": ambient.name(j),
                        "deg_x": ambient.degree(j),
                        "y": relations[i],
                        "deg_y": ys[i].homogeneous_degree(),
                    })
                })
                .collect();
            let human = perm
                .iter()
                .enumerate()
                .map(|(j, &i)| {
                    format!(
                        "{} (deg {})  <-  {} (deg {})",
                        ambient.name(j),
                        ambient.degree(j),
                        relations[i],
                        ys[i].homogeneous_degree().unwrap_or(0)
                    )
                })
                .collect();
            Ok(Report::ok(
                json!({"command": "reorder", "permutation": perm, "pairs": pairs}),
                human,
            ))
        }
        Command::RegularSeq { gens, relations } => {
            let pres = presentation(gens, relations)?;
            let ambient = pres.ambient().clone();
            let ys: Vec<Polynomial> = relations
                .iter()
                .map(|s| parse_polynomial(s, &ambient))
                .collect::<Result<_>>()?;
            let rep = is_regular_sequence(&ambient, &ys)?;
            Ok(Report::ok(
                json!({
                    "command": "regular-seq",
                    "regular": rep.regular,
                    "quotient_dim": rep.quotient_dim,
                }),
                vec![if rep.regular {
                    format!(
                        "REGULAR, quotient dimension {}",
                        rep.quotient_dim.expect("finite quotient")
                    )
                } else {
                    "NOT REGULAR (quotient is infinite-dimensional)".to_string()
                }],
            ))
        }
        Command::Fibration { model, key } => {
            let rel: RelativeSullivan = match (model, key) {
                (Some(path), None) => {
                    let src = fs::read_to_string(path)?;
                    RelativeSullivan::from_model_file(&ModelFile::parse(&src)?)?
                }
                (None, Some(k)) => catalog::relative(k)?,
                _ => return Err(Error::invalid("give exactly one of --model or --key")),
            };
            let t = rel.transgression()?;
            let v = rel.check_versions()?;
            let gap = rel.wilhelm_gap()?;
            let fiber_names: Vec<String> = rel.total().generators()[rel.base_count()..]
                .iter()
                .map(|g| g.name.clone())
                .collect();
            let d0: Vec<Value> = fiber_names
                .iter()
                .zip(&t.images)
                .map(|(n, p)| json!({"generator": n, "d0": p.to_string()}))
                .collect();
            let record = json!({
                "command": "fibration",
                "base_generators": rel.base_count(),
                "fiber_generators": rel.fiber_count(),
                "transgression": d0,
                "transgression_injective_on_odd": t.injective_on_odd,
                "weak": v.weak,
                "strong": v.strong,
                "alternate": {
                    "sum_fiber_odd": v.alternate.sum_fiber_odd,
                    "sum_base_odd": v.alternate.sum_base_odd,
                    "degree_inequality": v.alternate.degree_inequality,
                    "projections_regular": v.alternate.projections_regular,
                    "intersection_trivial": v.alternate.intersection_trivial,
                    "holds": v.alternate.holds,
                },
                "gap": gap.gap,
                "lemma_bound": gap.lemma_bound,
                "f0_bound": gap.f0_bound,
            });
            let mut human = vec![
                format!("gap = {}  (lower bound {})", gap.gap, gap.lemma_bound),
                format!(
                    "weak: {}  strong: {}",
                    pass_fail(v.weak),
                    pass_fail(v.strong)
                ),
                format!(
                    "alternate: degree sums {} {} {} {}; regular sequence {}; span meets exact {} => {}",
                    v.alternate.sum_fiber_odd,
                    if v.alternate.degree_inequality { "<" } else { ">=" },
                    v.alternate.sum_base_odd,
                    if v.alternate.degree_inequality { "OK" } else { "VIOLATED" },
                    if v.alternate.projections_regular { "OK" } else { "FAILS" },
                    if v.alternate.intersection_trivial { "trivially" } else { "nontrivially" },
                    pass_fail(v.alternate.holds),
                ),
            ];
            for (n, p) in fiber_names.iter().zip(&t.images) {
                human.push(format!("d0({}) = {}", n, p));
            }
            Ok(Report::ok(record, human))
        }
        Command::Bound {
            n,
            k,
            case,
            threshold,
            raw_s2xhp,
        } => {
            let mut q = BoundQuery::new(*n, *k, Case::parse(case)?)?;
            q.threshold = match threshold.as_str() {
                "nk" => Threshold::OverNk,
                "c" => Threshold::OverC,
                other => {
                    return Err(Error::invalid(format!(
                        "threshold must be `nk` or `c`, got `{}`",
                        other
                    )))
                }
            };
            q.raw_s2xhp = *raw_s2xhp;
            let opt = bounds::optimize_chi(&q)?;
            let cap = bounds::closed_form_cap(*n, *k);
            let gb = bounds::generator_bound(&q);
            Ok(Report::ok(
                json!({
                    "command": "bound",
                    "n": n, "k": k, "case": q.case.label(),
                    "max": opt.value,
                    "witness": opt.witness,
                    "l": opt.l,
                    "generator_bound": gb,
                    "closed_form_cap": cap.to_string(),
                }),
                vec![
                    format!("max {}  witness {:?}  (l = {})", opt.value, opt.witness, opt.l),
                    format!("generator bound {}  closed-form cap {}", gb, cap),
                ],
            ))
        }
        Command::Catalog { action } => run_catalog(action),
        Command::FeasibleChi { n, b3 } => {
            let (chi, positive) = four_periodic_chi(*n, *b3)?;
            let mut record = json!({
                "command": "feasible-chi",
                "n": n, "b3": b3,
                "chi": chi.to_string(),
                "positive": positive,
            });
            let mut human = vec![format!(
                "chi = {} ({})",
                chi,
                if positive { "positive" } else { "not positive" }
            )];
            if *n == 10 {
                let adm = six_dimensional_admissible_b3();
                record["six_dimensional_admissible_b3"] = json!(adm);
                human.push(format!("six-dimensional admissible b3: {:?}", adm));
            }
            Ok(Report::ok(record, human))
        }
        Command::Verify => {
            let results = run_all();
            let ok = results.iter().all(|c| c.pass);
            let human = results
                .iter()
                .map(|c| {
                    format!(
                        "{}  {:<32} {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    )
                })
                .chain(std::iter::once(format!(
                    "{} / {} checks passed",
                    results.iter().filter(|c| c.pass).count(),
                    results.len()
                )))
                .collect();
            Ok(Report {
                record: json!({"command": "verify", "ok": ok, "checks": results}),
                human,
                ok,
            })
        }
    }
}

fn run_catalog(action: &CatalogAction) -> Result<Report> {
    match action {
        CatalogAction::List => {
            let mut human = vec!["absolute models:".to_string()];
            human.extend(catalog::ABSOLUTE_KEYS.iter().map(|k| format!("  {}", k)));
            human.push("relative models:".to_string());
            human.extend(catalog::RELATIVE_KEYS.iter().map(|k| format!("  {}", k)));
            Ok(Report::ok(
                json!({
                    "command": "catalog-list",
                    "absolute": catalog::ABSOLUTE_KEYS,
                    "relative": catalog::RELATIVE_KEYS,
                }),
                human,
            ))
        }
        CatalogAction::Show { key, params } => {
            let params = parse_params(params)?;
            let (model, fiber) = resolve_catalog(key, &params)?;
            let mut record = model_record(&model);
            record["command"] = json!("catalog-show");
            record["key"] = json!(key);
            if let Some(f) = &fiber {
                record["fiber"] = json!(f);
            }
            let mut human: Vec<String> = model
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| format!("{} (deg {})  d = {}", g.name, g.degree, model.differential_of(i)))
                .collect();
            if let Some(f) = &fiber {
                human.push(format!("fiber generators: {}", f.join(", ")));
            }
            Ok(Report::ok(record, human))
        }
        CatalogAction::Export {
            key,
            params,
            output,
        } => {
            let params = parse_params(params)?;
            let (model, fiber) = resolve_catalog(key, &params)?;
            let file = ModelFile::from_model(&model, fiber);
            fs::write(output, file.to_json())?;
            Ok(Report::ok(
                json!({"command": "catalog-export", "key": key, "output": output}),
                vec![format!("wrote {}", output)],
            ))
        }
    }
}

/// Resolve a key to (model, fiber names): absolute keys have no fiber,
/// relative keys carry their fiber partition.
fn resolve_catalog(key: &str, params: &[i64]) -> Result<(SullivanAlgebra, Option<Vec<String>>)> {
    if catalog::RELATIVE_KEYS.contains(&key) {
        let rel = catalog::relative(key)?;
        let fiber = rel.total().generators()[rel.base_count()..]
            .iter()
            .map(|g| g.name.clone())
            .collect();
        Ok((rel.total().clone(), Some(fiber)))
    } else if key.eq_ignore_ascii_case("m1")
        || key.eq_ignore_ascii_case("m2")
        || key.eq_ignore_ascii_case("m3")
        || key.eq_ignore_ascii_case("m4")
        || key.eq_ignore_ascii_case("m5")
        || key.eq_ignore_ascii_case("m6")
    {
        let _ = Hermitian::parse(key)?;
        Err(Error::invalid(
            "hermitian families are Betti tables, not models; use `verify` or the library",
        ))
    } else {
        Ok((catalog::absolute(key, params)?, None))
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "HOLDS"
    } else {
        "FAILS"
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Machine => {
                    println!("{}", serde_json::to_string(&report.record).expect("json"))
                }
                Format::Human => {
                    for line in &report.human {
                        println!("{}", line);
                    }
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
