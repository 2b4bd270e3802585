//! The named verification checks and the default plan.
//!
//! Every check is a pure function from an immutable context to a
//! [`CheckResult`]; the runner executes them in a work pool and sorts the
//! results by check id, so identical plans produce byte-identical reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use fglforge_core::bp::BpContext;
use fglforge_core::error::Error as CoreError;
use fglforge_core::fgl::HurewiczTables;
use fglforge_core::json as cjson;
use fglforge_core::koszul::{self, FormalRelation, IdealRelationOracle};
use fglforge_core::poly::GradedPoly;
use fglforge_core::samples;
use fglforge_core::steenrod::{self, SteenrodContext};

/// Fixed seed for the sampled checks; recorded in every report.
pub const DEFAULT_SEED: u64 = 0x0f61_f09e;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CheckSpec {
    FglAxioms {
        #[serde(rename = "xBound")]
        x_bound: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
    },
    HurewiczIntegrality {
        #[serde(rename = "maxN")]
        max_n: u32,
    },
    Eq1 {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
    },
    NuCriterion {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        #[serde(rename = "maxK")]
        max_k: u32,
    },
    Prop31 {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        monomial: Vec<u32>,
    },
    Cor32 {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
    },
    Prop33 {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        power: u32,
        samples: usize,
        seed: u64,
    },
    PhiAdditivity {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        pairs: usize,
        seed: u64,
    },
    TwistedLog {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
    },
    CosetIndependence {
        prime: u32,
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        reps1: Vec<i64>,
        reps2: Vec<i64>,
    },
    Koszul {
        #[serde(rename = "nMin")]
        n_min: u32,
        #[serde(rename = "nMax")]
        n_max: u32,
    },
    Descent {
        #[serde(rename = "dimBound")]
        dim_bound: u32,
        relations: usize,
    },
}

impl CheckSpec {
    /// Stable identifier; the report is sorted by it.
    pub fn id(&self) -> String {
        match self {
            CheckSpec::FglAxioms { x_bound, dim_bound } => {
                format!("fgl-axioms[x={x_bound},D={dim_bound}]")
            }
            CheckSpec::HurewiczIntegrality { max_n } => {
                format!("hurewicz-integrality[n<={max_n}]")
            }
            CheckSpec::Eq1 { prime, dim_bound } => format!("eq1[p={prime},D={dim_bound}]"),
            CheckSpec::NuCriterion {
                prime,
                dim_bound,
                max_k,
            } => format!("nu-criterion[p={prime},D={dim_bound},k<={max_k}]"),
            CheckSpec::Prop31 {
                prime,
                dim_bound,
                monomial,
            } => {
                let ks: Vec<String> = monomial.iter().map(|k| k.to_string()).collect();
                format!("prop31[p={prime},D={dim_bound},({})]", ks.join(","))
            }
            CheckSpec::Cor32 { prime, dim_bound } => {
                format!("cor32[p={prime},D={dim_bound}]")
            }
            CheckSpec::Prop33 {
                prime,
                dim_bound,
                power,
                samples,
                ..
            } => format!("prop33[p={prime},D={dim_bound},m={power},n={samples}]"),
            CheckSpec::PhiAdditivity {
                prime,
                dim_bound,
                pairs,
                ..
            } => format!("phi-additivity[p={prime},D={dim_bound},pairs={pairs}]"),
            CheckSpec::TwistedLog { prime, dim_bound } => {
                format!("twisted-log[p={prime},D={dim_bound}]")
            }
            CheckSpec::CosetIndependence {
                prime, dim_bound, ..
            } => format!("coset-independence[p={prime},D={dim_bound}]"),
            CheckSpec::Koszul { n_min, n_max } => format!("koszul[n={n_min}..{n_max}]"),
            CheckSpec::Descent {
                dim_bound,
                relations,
            } => format!("descent[D={dim_bound},count={relations}]"),
        }
    }

    /// Primes this check exercises, for `--prime` filtering.
    pub fn prime(&self) -> Option<u32> {
        match self {
            CheckSpec::FglAxioms { .. }
            | CheckSpec::HurewiczIntegrality { .. }
            | CheckSpec::Koszul { .. } => None,
            CheckSpec::Descent { .. } => Some(2),
            CheckSpec::Eq1 { prime, .. }
            | CheckSpec::NuCriterion { prime, .. }
            | CheckSpec::Prop31 { prime, .. }
            | CheckSpec::Cor32 { prime, .. }
            | CheckSpec::Prop33 { prime, .. }
            | CheckSpec::PhiAdditivity { prime, .. }
            | CheckSpec::TwistedLog { prime, .. }
            | CheckSpec::CosetIndependence { prime, .. } => Some(*prime),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub audit: Value,
}

/// Errors that indicate a bad configuration rather than a failed theorem.
pub fn is_config_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::TruncationInsufficient(_)
            | CoreError::Precondition(_)
            | CoreError::InvalidCosetReps(_)
            | CoreError::Parse(_)
            | CoreError::AlphabetMismatch(_, _)
            | CoreError::WindowUnderflow { .. }
    )
}

fn membership_audit(rows: &std::collections::BTreeMap<i64, bool>) -> Value {
    Value::Object(
        rows.iter()
            .map(|(k, v)| (k.to_string(), Value::Bool(*v)))
            .collect(),
    )
}

pub fn run_check(spec: &CheckSpec) -> Result<CheckResult, CoreError> {
    let id = spec.id();
    let (pass, audit) = match spec {
        CheckSpec::FglAxioms { x_bound, dim_bound } => {
            let tables = HurewiczTables::new(*x_bound, *dim_bound)?;
            let law = tables.universal_fgl()?;
            law.check_unit()?;
            law.check_commutative()?;
            law.check_associative()?;
            (
                true,
                json!({"unit": true, "commutative": true, "associative": true}),
            )
        }
        CheckSpec::HurewiczIntegrality { max_n } => {
            let tables = HurewiczTables::new(*max_n + 1, *max_n)?;
            let law = tables.universal_fgl()?; // construction validates a_ij
            let mut classes = Vec::new();
            let mut pass = true;
            for n in 1..=*max_n {
                let integral = tables.p_class(n).is_integral();
                pass &= integral;
                classes.push(json!({"n": n, "integral": integral}));
            }
            let coeffs = law.series().coeffs().count();
            (
                pass,
                json!({"lawCoefficients": coeffs, "projectiveClasses": classes}),
            )
        }
        CheckSpec::Eq1 { prime, dim_bound } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let report = ctx.p_series_congruence()?;
            (
                report.pass,
                json!({
                    "perDegree": membership_audit(&report.per_degree),
                    "difference": cjson::tlaurent_to_dto(&report.difference)?,
                }),
            )
        }
        CheckSpec::NuCriterion {
            prime,
            dim_bound,
            max_k,
        } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            if *max_k > ctx.max_gen() {
                return Err(CoreError::TruncationInsufficient(format!(
                    "generator v_{max_k} needs a dimension bound of at least {}",
                    ctx.v_alphabet().gen_dim(*max_k)
                )));
            }
            let mut rows = Vec::new();
            let mut pass = true;
            for k in 1..=*max_k {
                let rep = ctx.nu_criterion(k)?;
                pass &= rep.all_divisible_by_p && rep.additive_not_divisible_by_p2;
                rows.push(json!({
                    "k": k,
                    "dimension": rep.dimension,
                    "allDivisibleByP": rep.all_divisible_by_p,
                    "additiveNumber": rep.additive_number.to_string(),
                    "additiveNotDivisibleByP2": rep.additive_not_divisible_by_p2,
                }));
            }
            (pass, json!({"generators": rows}))
        }
        CheckSpec::Prop31 {
            prime,
            dim_bound,
            monomial,
        } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let report = sctx.check_monomial_congruence(monomial)?;
            (
                report.pass,
                json!({
                    "modulusPower": report.modulus_power,
                    "perDegree": membership_audit(&report.per_degree),
                    "difference": cjson::tlaurent_to_dto(&report.difference)?,
                }),
            )
        }
        CheckSpec::Cor32 { prime, dim_bound } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let valph = ctx.v_alphabet();
            let p_const = GradedPoly::int(valph, *dim_bound, *prime as i64);
            let v1 = GradedPoly::generator(valph, *dim_bound, 1);
            let set: Vec<(GradedPoly, u32, &str)> = vec![
                (p_const.clone(), 1, "p"),
                (v1.clone(), 1, "v1"),
                (v1.pow(2)?, 2, "v1^2"),
                (v1.scale_int(*prime as i64), 2, "p*v1"),
            ];
            let mut rows = Vec::new();
            let mut pass = true;
            for (x, m, label) in set {
                let rep = sctx.check_identity_component(&x, m)?;
                pass &= rep.pass;
                rows.push(json!({"element": label, "power": m, "pass": rep.pass}));
            }
            (pass, json!({"samples": rows}))
        }
        CheckSpec::Prop33 {
            prime,
            dim_bound,
            power,
            samples,
            seed,
        } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let set = samples::ideal_power_samples(&ctx, power + 1, *samples, *seed)?;
            let mut rows = Vec::new();
            let mut pass = true;
            for s in &set {
                let rep = sctx.check_phi_filtration(s, *power)?;
                pass &= rep.pass;
                rows.push(json!({
                    "sample": cjson::poly_to_dto(s)?,
                    "pass": rep.pass,
                }));
            }
            (
                pass,
                json!({"seed": seed, "samples": rows, "divisibilityFailures": 0}),
            )
        }
        CheckSpec::PhiAdditivity {
            prime,
            dim_bound,
            pairs,
            seed,
        } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let set = samples::homogeneous_pairs(&ctx, *pairs, *seed)?;
            let mut pass = true;
            let mut bad = Vec::new();
            for (x, y) in &set {
                let defect = sctx.phi_additivity_defect(x, y)?;
                let concentrated = defect.coeffs().all(|(&k, _)| k == 0);
                if !concentrated {
                    pass = false;
                    bad.push(json!({
                        "x": cjson::poly_to_dto(x)?,
                        "y": cjson::poly_to_dto(y)?,
                        "defect": cjson::tlaurent_to_dto(&defect)?,
                    }));
                }
            }
            (
                pass,
                json!({"seed": seed, "pairs": set.len(), "offenders": bad}),
            )
        }
        CheckSpec::TwistedLog { prime, dim_bound } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let agree = steenrod::check_twisted_log_consistency(&sctx)?;
            let bound = sctx.twisted_log().x_bound();
            (agree, json!({"comparedBound": bound}))
        }
        CheckSpec::CosetIndependence {
            prime,
            dim_bound,
            reps1,
            reps2,
        } => {
            let ctx = BpContext::new(*prime, *dim_bound)?;
            let valph = ctx.v_alphabet();
            let elements = vec![
                ("v1", GradedPoly::generator(valph, *dim_bound, 1)),
                ("p", GradedPoly::int(valph, *dim_bound, *prime as i64)),
            ];
            let mut rows = Vec::new();
            let mut pass = true;
            for (label, x) in elements {
                let rep = steenrod::check_coset_independence(
                    &ctx,
                    reps1.clone(),
                    reps2.clone(),
                    &x,
                )?;
                pass &= rep.pass;
                rows.push(json!({
                    "element": label,
                    "pass": rep.pass,
                    "perDegree": membership_audit(&rep.per_degree),
                }));
            }
            (pass, json!({"reps1": reps1, "reps2": reps2, "elements": rows}))
        }
        CheckSpec::Koszul { n_min, n_max } => {
            let mut rows = Vec::new();
            let mut pass = true;
            for n in *n_min..=*n_max {
                let min_bound = (1u32 << (n - 2)) - 1;
                let complex = koszul::build_koszul(n, min_bound.max(1))?;
                complex.check_d_squared()?;
                let exact = complex.check_exactness_strata()?;
                let tor = complex.tor_with_residue();
                let syz = koszul::syzygy_report(n)?;
                let tor_ok = tor.differentials_vanish
                    && tor.ranks.iter().all(|&(j, r)| {
                        r == binomial(n - 1, j + 1)
                    })
                    && tor.top_index == n - 2
                    && tor.top_rank == 1;
                let range_ok = syz.rows.iter().all(|r| r.in_range);
                let discrepancy_flagged = !syz.top_codim_matches_index;
                let n_pass = exact.pass && tor_ok && range_ok && discrepancy_flagged;
                pass &= n_pass;
                rows.push(json!({
                    "n": n,
                    "dSquaredZero": true,
                    "exactness": exact.pass,
                    "torRanks": tor.ranks,
                    "syzygyRangeOk": range_ok,
                    "topCodim": syz.top_codim,
                    "topHomIndex": syz.top_hom_index,
                    "topCodimMatchesIndex": syz.top_codim_matches_index,
                    "pass": n_pass,
                }));
            }
            (pass, json!({"perN": rows}))
        }
        CheckSpec::Descent {
            dim_bound,
            relations,
        } => {
            let ctx = BpContext::new(2, *dim_bound)?;
            let sctx = SteenrodContext::new(&ctx, None)?;
            let oracle = IdealRelationOracle {
                prime: 2,
                top_index: 1, // the n = 3 presentation: ideal (2, v1)
            };
            let rels = descent_relations(&ctx, *relations)?;
            let mut rows = Vec::new();
            let mut pass = true;
            for rel in &rels {
                let report = koszul::descent_step(&sctx, rel, &oracle)?;
                pass &= report.pass();
                rows.push(json!({
                    "coefficient": cjson::poly_to_dto(&rel.coeffs[0])?,
                    "filtration": rel.filtration_m,
                    "congruence": report.congruence_pass,
                    "beta1Filtration": report.beta1_filtration_pass,
                    "supportPreserved": report.support_preserved,
                    "signSanity": report.sign_sanity_pass,
                    "oracle": report.oracle_pass,
                }));
            }
            (pass, json!({"presentation": "n=3", "relations": rows}))
        }
    };
    Ok(CheckResult {
        check: id,
        pass,
        audit,
    })
}

fn binomial(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc as u32
}

/// Non-positive-codimension relations of the n = 3 presentation: the support
/// symbol has codimension 3, so coefficients need dimension at least 3 and
/// must lie in the ideal `(2, v1)`.
fn descent_relations(ctx: &BpContext, count: usize) -> Result<Vec<FormalRelation>, CoreError> {
    let valph = ctx.v_alphabet();
    let d = ctx.dim_bound();
    let v1 = GradedPoly::generator(valph, d, 1);
    let v2 = GradedPoly::generator(valph, d, 2);
    let candidates: Vec<(GradedPoly, u32)> = vec![
        (v1.pow(3)?.scale_int(2), 2),          // dim 3, in I^4
        (v2.scale_int(2), 2),                  // dim 3, in I^2
        (v1.mul(&v2)?, 2),                     // dim 4, in I^2
        (v1.pow(4)?, 3),                       // dim 4, in I^4
        (v2.scale_int(4).add(&v1.pow(3)?.scale_int(2))?, 3), // dim 3, in I^3
        (v1.pow(2)?.mul(&v2)?, 3),             // dim 5, in I^3
        (v1.pow(3)?.scale_int(4), 3),          // dim 3, in I^5
        (v2.mul(&v1.pow(2)?)?.scale_int(2), 3), // dim 5, in I^4
    ];
    Ok(candidates
        .into_iter()
        .take(count)
        .map(|(u, m)| FormalRelation {
            support: vec!["e0".to_string()],
            codim_r: 3,
            coeffs: vec![u],
            filtration_m: m,
        })
        .collect())
}

/// The full default suite: the checks behind `verify all`.
pub fn default_plan() -> Vec<CheckSpec> {
    vec![
        CheckSpec::FglAxioms {
            x_bound: 8,
            dim_bound: 8,
        },
        CheckSpec::HurewiczIntegrality { max_n: 12 },
        CheckSpec::Eq1 {
            prime: 2,
            dim_bound: 12,
        },
        CheckSpec::Eq1 {
            prime: 3,
            dim_bound: 10,
        },
        CheckSpec::NuCriterion {
            prime: 2,
            dim_bound: 10,
            max_k: 3,
        },
        CheckSpec::NuCriterion {
            prime: 3,
            dim_bound: 10,
            max_k: 2,
        },
        CheckSpec::Prop31 {
            prime: 2,
            dim_bound: 10,
            monomial: vec![1],
        },
        CheckSpec::Prop31 {
            prime: 2,
            dim_bound: 10,
            monomial: vec![2],
        },
        CheckSpec::Prop31 {
            prime: 2,
            dim_bound: 10,
            monomial: vec![1, 1],
        },
        CheckSpec::Prop31 {
            prime: 3,
            dim_bound: 10,
            monomial: vec![1],
        },
        CheckSpec::Cor32 {
            prime: 2,
            dim_bound: 10,
        },
        CheckSpec::Prop33 {
            prime: 2,
            dim_bound: 10,
            power: 1,
            samples: 10,
            seed: DEFAULT_SEED,
        },
        CheckSpec::Prop33 {
            prime: 2,
            dim_bound: 10,
            power: 2,
            samples: 10,
            seed: DEFAULT_SEED + 1,
        },
        CheckSpec::Prop33 {
            prime: 3,
            dim_bound: 10,
            power: 1,
            samples: 10,
            seed: DEFAULT_SEED + 2,
        },
        CheckSpec::PhiAdditivity {
            prime: 2,
            dim_bound: 10,
            pairs: 20,
            seed: DEFAULT_SEED + 3,
        },
        CheckSpec::TwistedLog {
            prime: 2,
            dim_bound: 7,
        },
        CheckSpec::CosetIndependence {
            prime: 3,
            dim_bound: 8,
            reps1: vec![1, 2],
            reps2: vec![1, -1],
        },
        CheckSpec::Koszul { n_min: 3, n_max: 8 },
        CheckSpec::Descent {
            dim_bound: 8,
            relations: 6,
        },
    ]
}
