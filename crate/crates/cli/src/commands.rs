use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use sumfree_core::granular::{granularize, granularize_with_delta};
use sumfree_core::structure::{
    check_alpha_inequalities, kneser_cover, special_direction, type_i_cover, verify_kp, vosper_check,
};
use sumfree_core::sumfree::{
    classify, construct_extremal, count_sf, extremal_modulus, is_sum_free, mu_exact, nu, schur_triples, CountOptions,
    MuOptions,
};
use sumfree_core::{Error as CoreError, GroupSet};
use sumfree_lp::closed_form::sweep_lem34;
use sumfree_lp::{replay, solve_and_certify, DualCertificate};

use crate::args::{Command, CoverKind, Global, LpCommand};
use crate::error::{CliError, Result};
use crate::input::{big_ratio_f64, parse_big_ratio, parse_extra, parse_group, parse_ratio, parse_set, ratio_string};
use crate::report::Outcome;
use crate::suite;

fn pass(results: Value, summary: impl Into<String>) -> Outcome {
    Outcome { results, passed: true, summary: summary.into(), table: None }
}

fn verdict(results: Value, passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome { results, passed, summary: summary.into(), table: None }
}

/// The group named by a command, for the report's config block.
pub fn group_of(cmd: &Command) -> Option<String> {
    match cmd {
        Command::Classify(g) | Command::Count(g) | Command::Construct(g) => Some(g.group.clone()),
        Command::Mu { group, .. } | Command::VerifyKp { group, .. } => Some(group.group.clone()),
        Command::Profile { input, .. } | Command::Cover { input, .. } | Command::Granularize { input, .. } => {
            Some(input.group.group.clone())
        }
        Command::Lp(_) | Command::Repro { .. } => None,
    }
}

pub fn execute(cmd: &Command, global: &Global) -> Result<Outcome> {
    match cmd {
        Command::Classify(arg) => {
            let g = parse_group(&arg.group)?;
            let class = classify(&g)?;
            let nu_g = nu(&g)?;
            let modulus = extremal_modulus(&g)?;
            Ok(pass(
                json!({"group": g.to_string(), "order": g.order(), "type": class.to_string(), "nu": ratio_string(&nu_g), "extremal_modulus": modulus}),
                format!("{g} is of type {class}"),
            ))
        }
        Command::Mu { group, no_seed } => {
            let g = parse_group(&group.group)?;
            let opts = MuOptions { node_limit: global.node_limit, seed: !no_seed, ..MuOptions::default() };
            let r = mu_exact(&g, &opts)?;
            if !r.optimal {
                return Err(CoreError::Budget(format!("{} nodes without exhausting the search", r.nodes)).into());
            }
            let n = g.order() as i64;
            let (nu_s, matches) = match nu(&g) {
                Ok(v) => (Some(ratio_string(&v)), Ratio::from_integer(r.size as i64) == v * n),
                Err(CoreError::TrivialGroup) => (None, r.size == 0),
                Err(e) => return Err(e.into()),
            };
            Ok(verdict(
                json!({"mu_n": r.size, "mu": ratio_string(&Ratio::new(r.size as i64, n)), "nu": nu_s, "witness": r.witness.to_vec(), "nodes": r.nodes}),
                matches,
                format!("mu({g}) n = {}", r.size),
            ))
        }
        Command::Count(arg) => {
            let g = parse_group(&arg.group)?;
            let opts = CountOptions { node_limit: global.node_limit, ..CountOptions::default() };
            let c = count_sf(&g, &opts)?;
            Ok(pass(json!({"sf_count": c.count.to_u64(), "sf_count_exact": c.count.to_string(), "sigma": c.sigma}), format!("|SF({g})| = {}", c.count)))
        }
        Command::Construct(arg) => {
            let g = parse_group(&arg.group)?;
            let a = construct_extremal(&g)?;
            let ok = is_sum_free(&a) && Ratio::from_integer(a.len() as i64) == nu(&g)? * g.order() as i64;
            Ok(verdict(json!({"set": a.to_vec(), "size": a.len(), "sum_free": is_sum_free(&a)}), ok, format!("extremal set of size {} in {g}", a.len())))
        }
        Command::Profile { input, delta } => {
            let g = parse_group(&input.group.group)?;
            let a = parse_set(&g, &input.set)?;
            let schur = schur_triples(&a);
            let delta = match delta {
                Some(d) => parse_ratio(d)?,
                None => schur.delta,
            };
            let (gamma, profile) = special_direction(&a)?;
            let report = check_alpha_inequalities(&a, delta)?;
            let passed = report.all_pass();
            Ok(verdict(
                json!({
                    "character": gamma.coords(&g),
                    "q": profile.q,
                    "re_fourier": profile.re_value,
                    "coset_counts": profile.counts,
                    "kernel_order": profile.kernel.order(),
                    "schur_triples": schur.triples,
                    "delta": ratio_string(&delta),
                    "inequalities": report,
                }),
                passed,
                format!("special direction of order {}", profile.q),
            ))
        }
        Command::VerifyKp { group, a, b, t } => {
            let g = parse_group(&group.group)?;
            let (a, b) = (parse_set(&g, a)?, parse_set(&g, b)?);
            let r = verify_kp(&a, &b, *t)?;
            Ok(verdict(json!(r), r.ok, format!("{} >= {}", r.lhs, r.rhs)))
        }
        Command::Cover { input, kind, r } => {
            let g = parse_group(&input.group.group)?;
            let a = parse_set(&g, &input.set)?;
            cover(&a, *kind, r)
        }
        Command::Granularize { input, l, l_prime, eps, delta } => {
            let g = parse_group(&input.group.group)?;
            let a = parse_set(&g, &input.set)?;
            let eps = parse_ratio(eps)?;
            let r = match delta {
                Some(d) => granularize_with_delta(&a, *l, *l_prime, eps, *d)?,
                None => granularize(&a, *l, *l_prime, eps)?,
            };
            let ok = r.all_ok();
            let summary = format!("{} grains, {} elements removed", r.kind, r.removed);
            Ok(verdict(json!(r), ok, summary))
        }
        Command::Lp(sub) => lp(sub, global),
        Command::Repro { target } => {
            let criteria: Vec<suite::Criterion> = target
                .names()
                .into_iter()
                .map(|n| suite::run_named(n, global.seed, global.bits).expect("known criterion"))
                .collect();
            let failing: Vec<&str> = criteria.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            let summary = if failing.is_empty() {
                format!("{}/{} criteria pass", criteria.len(), criteria.len())
            } else {
                format!("failing: {}", failing.join(", "))
            };
            // timings are left out so the report stays reproducible
            let rows: Vec<Value> =
                criteria.iter().map(|c| json!({"criterion": c.name, "passed": c.passed, "detail": c.detail})).collect();
            Ok(Outcome { results: json!({"criteria": rows}), passed: failing.is_empty(), summary, table: Some(rows) })
        }
    }
}

fn cover(a: &GroupSet, kind: CoverKind, r: &str) -> Result<Outcome> {
    let g = a.group();
    match kind {
        CoverKind::Kneser => {
            let c = kneser_cover(a, parse_ratio(r)?)?;
            Ok(pass(
                json!({"stabilizer": c.stabilizer.elements().to_vec(), "quotient": c.quotient.target().to_string(), "image": c.image.to_vec()}),
                format!("A covered by a sum-free set of {}", c.quotient.target()),
            ))
        }
        CoverKind::TypeI => {
            let c = type_i_cover(a)?;
            Ok(pass(
                json!({"modulus": c.hom.modulus, "coefficients": c.hom.coeffs, "k": c.k, "middle": c.middle()}),
                format!("A maps into the middle third of Z/{}", c.hom.modulus),
            ))
        }
        CoverKind::Vosper => {
            let c = vosper_check(a)?;
            Ok(pass(json!({"dilation": c}), format!("A is the middle third of Z/{} dilated by {c}", g.order())))
        }
    }
}

fn lp(cmd: &LpCommand, global: &Global) -> Result<Outcome> {
    match cmd {
        LpCommand::Verify { cert } => {
            let body = std::fs::read_to_string(cert)?;
            let c = DualCertificate::from_json(&body)?;
            let r = replay(&c, global.bits)?;
            let passed = r.bound >= r.claimed;
            Ok(verdict(json!(r), passed, format!("{}: bound {:.6} against claim {}", r.label, big_ratio_f64(&r.bound), big_ratio_f64(&r.claimed))))
        }
        LpCommand::Solve { q, l, extra, target } => {
            let extras = extra.iter().map(|e| parse_extra(e)).collect::<Result<Vec<_>>>()?;
            let target = parse_big_ratio(target)?;
            let c = solve_and_certify(*q, *l, &extras, &target, global.bits)?;
            let mut results = json!(c);
            results["certificate"] = serde_json::from_str(&c.certificate.to_json()).expect("certificate JSON");
            Ok(pass(results, format!("M >= {:.6} for q = {q}, l = {l}", c.bound)))
        }
        LpCommand::Sweep { qmax, unrestricted } => {
            if *qmax < 7 {
                return Err(CliError::Usage("qmax must be at least 7".into()));
            }
            let s = sweep_lem34(*qmax, !unrestricted, global.bits)?;
            let rows: Vec<Value> = s.failures.iter().map(|f| json!({"q": f.q, "l": f.l, "bound": f.bound})).collect();
            let summary = format!("{} cells, {} below eta", s.cells, s.failures.len());
            Ok(Outcome { results: json!(s), passed: true, summary, table: Some(rows) })
        }
    }
}
