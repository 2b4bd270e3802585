//! Command-line front end: formal-group-law, p-typical and operation
//! calculators plus the deterministic verification runner.
//!
//! Exit codes: 0 when every requested check passes, 1 when a verification
//! fails (including divisibility failures), 2 on configuration errors (bad
//! prime, insufficient bounds, malformed input). All reports are canonical
//! JSON; timings are written to stderr only.

mod checks;
mod report;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fglforge_core::alphabet::Alphabet;
use fglforge_core::bp::BpContext;
use fglforge_core::error::Error as CoreError;
use fglforge_core::fgl::{self, HurewiczTables};
use fglforge_core::json as cjson;
use fglforge_core::koszul::{self, FormalRelation, IdealRelationOracle};
use fglforge_core::poly::GradedPoly;
use fglforge_core::steenrod::SteenrodContext;

use checks::CheckSpec;
use report::{RunOutcome, DEFAULT_DIM_BOUND, DEFAULT_PRIME, DEFAULT_X_BOUND};

#[derive(Parser)]
#[command(
    name = "fglforge",
    about = "Exact computations in the coefficient rings of algebraic cobordism",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The universal formal group law and characteristic numbers.
    Fgl {
        #[command(subcommand)]
        command: FglCommand,
    },
    /// The p-typical coefficient ring.
    Bp {
        #[command(subcommand)]
        command: BpCommand,
    },
    /// Steenrod and Symmetric operations on coefficients.
    Ops {
        #[command(subcommand)]
        command: OpsCommand,
    },
    /// Named verification checks and the full suite.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Koszul resolutions and the descent step.
    Koszul {
        #[command(subcommand)]
        command: KoszulCommand,
    },
}

#[derive(Subcommand)]
enum FglCommand {
    /// Build the universal law and check its axioms.
    Universal {
        #[arg(long, default_value_t = DEFAULT_X_BOUND)]
        xbound: u32,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
        /// Also run the cubic-cost associativity check.
        #[arg(long)]
        verify_assoc: bool,
        /// Emit the full coefficient JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Logarithm coefficients of the universal law.
    Log {
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
    /// Characteristic numbers of a homogeneous b-alphabet element.
    Charnums {
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand)]
enum BpCommand {
    /// Hazewinkel generators in both coordinate systems.
    Generators {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
        #[arg(long)]
        json: bool,
    },
    /// The p-series, or its finite truncation with `--leq`.
    PSeries {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long)]
        leq: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
    /// Membership of an element in a power of the filtration ideal.
    Member {
        #[arg(long)]
        element: String,
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
}

#[derive(Args)]
struct OpsArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Element: `vK`, an integer, or full polynomial JSON.
    #[arg(long)]
    element: String,
    #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
    dimbound: u32,
    /// Coset representatives, comma separated (default 1..p-1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    reps: Option<Vec<i64>>,
    /// Restrict the retained t-window from below.
    #[arg(long, allow_hyphen_values = true)]
    tlow: Option<i64>,
    /// Restrict the retained t-window from above.
    #[arg(long, allow_hyphen_values = true)]
    thigh: Option<i64>,
}

#[derive(Subcommand)]
enum OpsCommand {
    /// The total Steenrod operation on a coefficient element.
    Steenrod(OpsArgs),
    /// The Symmetric operation on a coefficient element.
    Phi(OpsArgs),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The Steenrod-on-monomials congruence.
    Prop31 {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        /// Generator indices, comma separated, e.g. `1,1`.
        #[arg(long, value_delimiter = ',')]
        monomial: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
    /// The identity-component congruence on the fixed sample set.
    Cor32 {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
    /// The filtration property of the Symmetric operation on samples.
    Prop33 {
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = checks::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_DIM_BOUND)]
        dimbound: u32,
    },
    /// Independence of the operation from the representative choice.
    CosetIndependence {
        #[arg(long, default_value_t = 3)]
        prime: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        reps1: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        reps2: Vec<i64>,
        #[arg(long, default_value_t = 8)]
        dimbound: u32,
    },
    /// The full default suite (or a plan file), in a work pool.
    All {
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long)]
        dimbound: Option<u32>,
        /// Worker count; falls back to FGLFORGE_JOBS, then all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Plan file with a `checks` array; defaults to the built-in suite.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KoszulCommand {
    /// The resolution attached to the ideal `(2, v1, ..., v_{n-2})`.
    Rost {
        #[arg(long)]
        n: u32,
        /// Include Tor ranks over Z/2.
        #[arg(long)]
        tor: bool,
        /// Include the per-generator codimension rows.
        #[arg(long)]
        syzygy_report: bool,
        /// Include the stratified exactness verification.
        #[arg(long)]
        exactness: bool,
        #[arg(long)]
        json: bool,
    },
    /// One descent step on an explicit relation of the n-presentation.
    Descent {
        #[arg(long, default_value_t = 2)]
        prime: u32,
        #[arg(long)]
        n: u32,
        /// Relation JSON: `{"support":[..],"codimR":r,"filtrationM":m,"coeffs":[..]}`.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        dimbound: Option<u32>,
    },
}

enum CliError {
    Config(String),
    CheckFailed(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if checks::is_config_error(&e) {
            CliError::Config(e.to_string())
        } else {
            CliError::CheckFailed(e.to_string())
        }
    }
}

type CliResult = Result<(), CliError>;

fn parse_element(s: &str, alphabet: Alphabet, dim_bound: u32) -> Result<GradedPoly, CliError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('v') {
        if let Ok(k) = rest.parse::<u32>() {
            if !matches!(alphabet, Alphabet::V(_)) {
                return Err(CliError::Config(format!(
                    "generator shorthand {s} needs the v-alphabet"
                )));
            }
            if k == 0 || alphabet.gen_dim(k) > dim_bound {
                return Err(CliError::Config(format!(
                    "generator {s} is out of range at dimension bound {dim_bound}"
                )));
            }
            return Ok(GradedPoly::generator(alphabet, dim_bound, k));
        }
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(GradedPoly::int(alphabet, dim_bound, n));
    }
    let p = cjson::poly_from_str(s).map_err(|e| CliError::Config(e.to_string()))?;
    if p.alphabet() != alphabet {
        return Err(CliError::Config(format!(
            "element alphabet {} does not match the expected {}",
            p.alphabet(),
            alphabet
        )));
    }
    Ok(p.truncated(dim_bound))
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run_single_check(spec: CheckSpec) -> CliResult {
    let result = checks::run_check(&spec).map_err(CliError::from)?;
    emit(&serde_json::to_value(&result).expect("serializable"));
    if result.pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed(result.check))
    }
}

fn real_main(cli: Cli) -> CliResult {
    match cli.command {
        Command::Fgl { command } => match command {
            FglCommand::Universal {
                xbound,
                dimbound,
                verify_assoc,
                json,
            } => {
                let tables = HurewiczTables::new(xbound, dimbound)?;
                let law = tables.universal_fgl()?;
                law.check_unit()?;
                law.check_commutative()?;
                let assoc = if verify_assoc {
                    law.check_associative()?;
                    Some(true)
                } else {
                    None
                };
                if json {
                    emit(&json!({
                        "xBound": xbound,
                        "dimBound": dimbound,
                        "associativityChecked": assoc,
                        "law": cjson::series_to_dto(law.series()).map_err(CliError::from)?,
                    }));
                } else {
                    emit(&json!({
                        "xBound": xbound,
                        "dimBound": dimbound,
                        "coefficients": law.series().coeffs().count(),
                        "a11": law.coefficient(1, 1).display(),
                        "associativityChecked": assoc,
                    }));
                }
                Ok(())
            }
            FglCommand::Log { dimbound } => {
                let tables = HurewiczTables::new(dimbound + 1, dimbound)?;
                let mut rows = Vec::new();
                for n in 1..=dimbound {
                    rows.push(json!({
                        "n": n,
                        "m": cjson::poly_to_dto(&tables.m(n)).map_err(CliError::from)?,
                    }));
                }
                emit(&json!({"dimBound": dimbound, "coefficients": rows}));
                Ok(())
            }
            FglCommand::Charnums { element } => {
                let p = cjson::poly_from_str(&element).map_err(CliError::from)?;
                if p.alphabet() != Alphabet::B {
                    return Err(CliError::Config(
                        "characteristic numbers live on the b-alphabet".into(),
                    ));
                }
                let d = p.homogeneous_dimension_or(0).ok_or_else(|| {
                    CliError::Config("element must be homogeneous".into())
                })?;
                let nums = fgl::characteristic_numbers(&p, d)?;
                let rows: Vec<_> = nums
                    .values
                    .iter()
                    .map(|(m, v)| {
                        json!({
                            "monomial": m.display(Alphabet::B),
                            "value": v.to_string(),
                        })
                    })
                    .collect();
                emit(&json!({
                    "dimension": d,
                    "allIntegral": nums.all_integral,
                    "numbers": rows,
                }));
                Ok(())
            }
        },
        Command::Bp { command } => match command {
            BpCommand::Generators {
                prime,
                dimbound,
                json: full,
            } => {
                let ctx = BpContext::new(prime, dimbound)?;
                let mut rows = Vec::new();
                for k in 1..=ctx.max_gen() {
                    let v_in_b = ctx.hazewinkel_v_in_b(k)?;
                    if full {
                        rows.push(json!({
                            "k": k,
                            "dimension": ctx.v_alphabet().gen_dim(k),
                            "vInB": cjson::poly_to_dto(v_in_b).map_err(CliError::from)?,
                            "lambdaInV": cjson::poly_to_dto(ctx.lambda_in_v(k)?)
                                .map_err(CliError::from)?,
                        }));
                    } else {
                        rows.push(json!({
                            "k": k,
                            "dimension": ctx.v_alphabet().gen_dim(k),
                            "vInB": v_in_b.display(),
                        }));
                    }
                }
                emit(&json!({"prime": prime, "dimBound": dimbound, "generators": rows}));
                Ok(())
            }
            BpCommand::PSeries {
                prime,
                leq,
                dimbound,
            } => {
                let ctx = BpContext::new(prime, dimbound)?;
                let series = match leq {
                    Some(i) => ctx.p_series_leq(i),
                    None => ctx.p_series().clone(),
                };
                emit(&json!({
                    "prime": prime,
                    "dimBound": dimbound,
                    "leq": leq,
                    "series": cjson::tlaurent_to_dto(&series).map_err(CliError::from)?,
                }));
                Ok(())
            }
            BpCommand::Member {
                element,
                power,
                prime,
                dimbound,
            } => {
                let ctx = BpContext::new(prime, dimbound)?;
                let x = parse_element(&element, ctx.v_alphabet(), dimbound)?;
                let member = ctx.ideal_membership(&x, power)?;
                emit(&json!({"power": power, "member": member}));
                Ok(())
            }
        },
        Command::Ops { command } => {
            let (args, is_phi) = match command {
                OpsCommand::Steenrod(a) => (a, false),
                OpsCommand::Phi(a) => (a, true),
            };
            let ctx = BpContext::new(args.prime, args.dimbound)?;
            let sctx = SteenrodContext::new(&ctx, args.reps.clone())?;
            let x = parse_element(&args.element, ctx.v_alphabet(), args.dimbound)?;
            let value = if is_phi {
                sctx.symmetric_phi(&x)?
            } else {
                sctx.steenrod(&x)?
            };
            let value = match (args.tlow, args.thigh) {
                (None, None) => value,
                (lo, hi) => value
                    .clamp_window(lo.unwrap_or(i64::MIN / 4), hi.unwrap_or(i64::MAX / 4))?,
            };
            emit(&json!({
                "prime": args.prime,
                "dimBound": args.dimbound,
                "reps": sctx.reps(),
                "operation": if is_phi { "phi" } else { "steenrod" },
                "value": cjson::tlaurent_to_dto(&value).map_err(CliError::from)?,
            }));
            Ok(())
        }
        Command::Verify { command } => match command {
            VerifyCommand::Prop31 {
                prime,
                monomial,
                dimbound,
            } => run_single_check(CheckSpec::Prop31 {
                prime,
                dim_bound: dimbound,
                monomial,
            }),
            VerifyCommand::Cor32 { prime, dimbound } => run_single_check(CheckSpec::Cor32 {
                prime,
                dim_bound: dimbound,
            }),
            VerifyCommand::Prop33 {
                prime,
                power,
                samples,
                seed,
                dimbound,
            } => run_single_check(CheckSpec::Prop33 {
                prime,
                dim_bound: dimbound,
                power,
                samples,
                seed,
            }),
            VerifyCommand::CosetIndependence {
                prime,
                reps1,
                reps2,
                dimbound,
            } => run_single_check(CheckSpec::CosetIndependence {
                prime,
                dim_bound: dimbound,
                reps1,
                reps2,
            }),
            VerifyCommand::All {
                prime,
                dimbound,
                jobs,
                out,
                plan,
            } => {
                let plan_file = match plan {
                    Some(path) => {
                        let text = fs::read_to_string(&path).map_err(|e| {
                            CliError::Config(format!("cannot read plan {}: {e}", path.display()))
                        })?;
                        Some(serde_json::from_str::<report::PlanFile>(&text).map_err(|e| {
                            CliError::Config(format!("malformed plan: {e}"))
                        })?)
                    }
                    None => None,
                };
                let jobs = jobs.or_else(|| {
                    std::env::var("FGLFORGE_JOBS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                });
                let resolved = report::resolve_plan(plan_file, prime, dimbound);
                match report::run_plan(resolved, jobs) {
                    RunOutcome::Finished(rep) => {
                        let rendered = report::render_report(&rep);
                        if let Some(path) = out {
                            fs::write(&path, &rendered).map_err(|e| {
                                CliError::Config(format!(
                                    "cannot write report {}: {e}",
                                    path.display()
                                ))
                            })?;
                        }
                        print!("{rendered}");
                        for r in &rep.results {
                            eprintln!(
                                "{}: {}",
                                r.check,
                                if r.pass { "PASS" } else { "FAIL" }
                            );
                        }
                        if rep.pass {
                            Ok(())
                        } else {
                            let failing: Vec<&str> = rep
                                .results
                                .iter()
                                .filter(|r| !r.pass)
                                .map(|r| r.check.as_str())
                                .collect();
                            Err(CliError::CheckFailed(failing.join(", ")))
                        }
                    }
                    RunOutcome::ConfigError { check, message } => Err(CliError::Config(format!(
                        "{check}: {message}"
                    ))),
                    RunOutcome::CheckError { check, message } => Err(CliError::CheckFailed(
                        format!("{check}: {message}"),
                    )),
                }
            }
        },
        Command::Koszul { command } => match command {
            KoszulCommand::Rost {
                n,
                tor,
                syzygy_report,
                exactness,
                json,
            } => {
                let min_bound = if n >= 3 { (1u32 << (n - 2)) - 1 } else { 1 };
                let complex = koszul::build_koszul(n, min_bound.max(1))?;
                complex.check_d_squared()?;
                let ranks: Vec<u32> = (0..=complex.top_index())
                    .map(|j| complex.rank(j))
                    .collect();
                let tor_report = tor.then(|| complex.tor_with_residue());
                let syzygy = syzygy_report
                    .then(|| koszul::syzygy_report(n))
                    .transpose()?;
                let exact = exactness
                    .then(|| complex.check_exactness_strata())
                    .transpose()?;
                if !json {
                    print!("n={n}: d^2 = 0, term ranks {ranks:?}");
                    if let Some(t) = &tor_report {
                        print!(", top Tor rank {} at index {}", t.top_rank, t.top_index);
                    }
                    if let Some(s) = &syzygy {
                        print!(
                            ", top codim {} vs index {} (match: {})",
                            s.top_codim, s.top_hom_index, s.top_codim_matches_index
                        );
                    }
                    if let Some(e) = &exact {
                        print!(", exactness {}", if e.pass { "pass" } else { "FAIL" });
                    }
                    println!();
                    return Ok(());
                }
                let mut doc = json!({
                    "n": n,
                    "dSquaredZero": true,
                    "ranks": ranks,
                });
                if let Some(t) = tor_report {
                    doc["tor"] = json!({
                        "differentialsVanish": t.differentials_vanish,
                        "ranks": t.ranks,
                        "topIndex": t.top_index,
                        "topRank": t.top_rank,
                    });
                }
                if let Some(s) = syzygy {
                    doc["syzygy"] = json!({
                        "n": s.n,
                        "rows": s.rows.iter().map(|r| json!({
                            "I": r.subset,
                            "j": r.hom_index,
                            "codim": r.codim,
                            "inPaperRange": r.in_range,
                            "geqHomIndex": r.geq_hom_index,
                        })).collect::<Vec<_>>(),
                        "topCodim": s.top_codim,
                        "topHomIndex": s.top_hom_index,
                        "topCodimMatchesIndex": s.top_codim_matches_index,
                    });
                }
                if let Some(e) = exact {
                    doc["exactness"] = json!({
                        "pass": e.pass,
                        "strata": e.strata.len(),
                    });
                }
                emit(&doc);
                Ok(())
            }
            KoszulCommand::Descent {
                prime,
                n,
                relation,
                dimbound,
            } => {
                if prime != 2 {
                    return Err(CliError::Config(
                        "the descent presentation is built at p = 2".into(),
                    ));
                }
                if n < 3 {
                    return Err(CliError::Config("descent needs n >= 3".into()));
                }
                let rel_dto: RelationDto = serde_json::from_str(&relation)
                    .map_err(|e| CliError::Config(format!("malformed relation: {e}")))?;
                let coeffs: Vec<GradedPoly> = rel_dto
                    .coeffs
                    .iter()
                    .map(cjson::poly_from_dto)
                    .collect::<Result<_, _>>()
                    .map_err(CliError::from)?;
                let max_dim = coeffs
                    .iter()
                    .filter_map(|c| c.max_term_dimension())
                    .max()
                    .unwrap_or(1);
                let dim_bound =
                    dimbound.unwrap_or_else(|| max_dim.max((1 << (n - 2)) - 1).max(4));
                let ctx = BpContext::new(2, dim_bound)?;
                let sctx = SteenrodContext::new(&ctx, None)?;
                let rel = FormalRelation {
                    support: rel_dto.support,
                    codim_r: rel_dto.codim_r,
                    coeffs: coeffs
                        .into_iter()
                        .map(|c| c.truncated(dim_bound))
                        .collect(),
                    filtration_m: rel_dto.filtration_m,
                };
                let oracle = IdealRelationOracle {
                    prime: 2,
                    top_index: n - 2,
                };
                let rep = koszul::descent_step(&sctx, &rel, &oracle)?;
                let doc = json!({
                    "pass": rep.pass(),
                    "support": rep.support,
                    "alpha1": rep.alpha1.iter().map(cjson::poly_to_dto)
                        .collect::<Result<Vec<_>, _>>().map_err(CliError::from)?,
                    "beta1": rep.beta1.iter().map(cjson::poly_to_dto)
                        .collect::<Result<Vec<_>, _>>().map_err(CliError::from)?,
                    "congruence": rep.congruence_pass,
                    "beta1Filtration": rep.beta1_filtration_pass,
                    "supportPreserved": rep.support_preserved,
                    "signSanity": rep.sign_sanity_pass,
                    "oracle": rep.oracle_pass,
                });
                emit(&doc);
                if rep.pass() {
                    Ok(())
                } else {
                    Err(CliError::CheckFailed("descent".into()))
                }
            }
        },
    }
}

#[derive(serde::Deserialize)]
struct RelationDto {
    support: Vec<String>,
    #[serde(rename = "codimR")]
    codim_r: u32,
    #[serde(rename = "filtrationM")]
    filtration_m: u32,
    coeffs: Vec<cjson::PolyDto>,
}

fn main() {
    let cli = Cli::parse();
    let code = match real_main(cli) {
        Ok(()) => 0,
        Err(CliError::CheckFailed(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
