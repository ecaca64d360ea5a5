//! Command implementations: parse inputs, call the library, shape reports.

use std::fmt::Write as _;

use serde_json::{json, Value};

use pfaff_core::integrability::{bracket_defect, cartan_residual, contact_class};
use pfaff_core::numeric::fixtures::fixture_by_name;
use pfaff_core::numeric::{reach_sample, NumDist, ReachConfig, RealPoly};
use pfaff_core::planner::{
    ambient_space, legendrian_from_s, plan_between, residual, Plan, Strategy,
};
use pfaff_core::scalar::CScalar;
use pfaff_core::space::VarSpace;
use pfaff_core::{Error, KForm};

use crate::curvefile::parse_curve_file;
use crate::expr::{parse_form, parse_point, parse_poly, parse_scalar, parse_vars, parse_vfield};
use crate::report::{sig17, CliError, Outcome, EXIT_OK, EXIT_VERIFY_FAILED};

type Result<T> = std::result::Result<T, CliError>;

fn point_json(p: &[CScalar]) -> Value {
    Value::Array(p.iter().map(|c| Value::String(c.to_string())).collect())
}

fn require_one_form(f: &KForm) -> Result<()> {
    if f.degree() != 1 {
        return Err(CliError::Core(Error::Dimension(format!(
            "expected a 1-form, got degree {}",
            f.degree()
        ))));
    }
    Ok(())
}

pub fn cmd_classify(vars: &str, form_text: &str) -> Result<Outcome> {
    let space = parse_vars(vars)?;
    let omega = parse_form(form_text, &space)?;
    require_one_form(&omega)?;
    let report = contact_class(&omega)?;
    // Re-derive the defining property instead of trusting the report:
    // ω∧(dω)^k ≡ 0 and the witness is the last nonzero power.
    let next = report.witness.wedge(&omega.dform())?;
    let verified = next.is_zero() && (report.k == 1 || !report.witness.is_zero());

    let mut human = String::new();
    let _ = writeln!(human, "form: {omega}");
    let _ = writeln!(human, "class k: {}", report.k);
    let _ = writeln!(human, "integrable: {}", report.integrable);
    let _ = write!(human, "witness omega^(d omega)^(k-1): {}", report.witness);

    Ok(Outcome {
        command: "classify",
        inputs: json!({ "vars": vars, "form": form_text }),
        result: json!({
            "form": omega.to_string(),
            "k": report.k,
            "integrable": report.integrable,
            "witness": report.witness.to_string(),
        }),
        verified,
        exit_code: if verified { EXIT_OK } else { EXIT_VERIFY_FAILED },
        human,
        diagnostics: Vec::new(),
    })
}

fn plan_json(plan: &Plan) -> Value {
    let links: Vec<Value> = plan
        .links()
        .iter()
        .map(|l| {
            let coords: Value = l
                .map()
                .components()
                .iter()
                .enumerate()
                .map(|(i, c)| (l.map().target().name(i).to_string(), json!(c.to_string())))
                .collect::<serde_json::Map<_, _>>()
                .into();
            json!({
                "coordinates": coords,
                "t_start": l.t_start().to_string(),
                "t_end": l.t_end().to_string(),
            })
        })
        .collect();
    json!({
        "form": plan.form().to_string(),
        "start": point_json(plan.start()),
        "end": point_json(plan.end()),
        "link_count": plan.link_count(),
        "links": links,
    })
}

pub fn cmd_plan(p0: &str, p1: &str, strategy: &str, hint: Option<&str>) -> Result<Outcome> {
    let start = parse_point(p0, 3)?;
    let end = parse_point(p1, 3)?;
    let strategy: Strategy = strategy.parse().map_err(CliError::Input)?;
    let hint = hint.map(parse_scalar).transpose()?;
    let plan = plan_between(&start, &end, strategy, hint.as_ref())?;
    // Redundant with construction, but the printed VERIFIED line should
    // mean a fresh check, not a cached one.
    plan.verify()?;

    let mut human = String::new();
    let _ = writeln!(human, "strategy: {strategy}");
    let _ = writeln!(human, "form: {}", plan.form());
    let _ = writeln!(
        human,
        "plan: {} link(s) from ({}) to ({})",
        plan.link_count(),
        fmt_point(plan.start()),
        fmt_point(plan.end()),
    );
    for (i, link) in plan.links().iter().enumerate() {
        let _ = writeln!(
            human,
            "link {}: t from {} to {}",
            i + 1,
            link.t_start(),
            link.t_end()
        );
        for (j, c) in link.map().components().iter().enumerate() {
            let _ = writeln!(human, "  {} = {}", link.map().target().name(j), c);
        }
    }
    let _ = write!(human, "VERIFIED: all residuals ≡ 0");

    Ok(Outcome {
        command: "plan",
        inputs: json!({
            "p0": p0, "p1": p1, "strategy": strategy.to_string(),
            "hint": hint.map(|h| h.to_string()),
        }),
        result: plan_json(&plan),
        verified: true,
        exit_code: EXIT_OK,
        human,
        diagnostics: Vec::new(),
    })
}

fn fmt_point(p: &[CScalar]) -> String {
    p.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn cmd_verify(vars: &str, form_text: &str, curve_path: &str) -> Result<Outcome> {
    let space = parse_vars(vars)?;
    let omega = parse_form(form_text, &space)?;
    require_one_form(&omega)?;
    let text = std::fs::read_to_string(curve_path)
        .map_err(|e| CliError::Io(format!("cannot read {curve_path}: {e}")))?;
    let cf = parse_curve_file(&text, &space)?;
    let r = residual(&omega, &cf.map)?;
    let admissible = r.is_zero();

    Ok(Outcome {
        command: "verify",
        inputs: json!({ "vars": vars, "form": form_text, "curve": curve_path }),
        result: json!({
            "residual": r.to_string(),
            "admissible": admissible,
        }),
        verified: admissible,
        exit_code: if admissible { EXIT_OK } else { EXIT_VERIFY_FAILED },
        human: if admissible {
            "ADMISSIBLE".to_string()
        } else {
            format!("NOT ADMISSIBLE\nresidual = {r}")
        },
        diagnostics: Vec::new(),
    })
}

pub fn cmd_cartan(vars: &str, form_text: &str, x_text: &str, y_text: &str) -> Result<Outcome> {
    let space = parse_vars(vars)?;
    let omega = parse_form(form_text, &space)?;
    require_one_form(&omega)?;
    let x = parse_vfield(x_text, &space)?;
    let y = parse_vfield(y_text, &space)?;
    let r = cartan_residual(&omega, &x, &y)?;
    let verified = r.is_zero();

    let mut diagnostics = Vec::new();
    let defect = match bracket_defect(&omega, &x, &y) {
        Ok(p) => Some(p),
        Err(e @ Error::TangencyViolation { .. }) => {
            diagnostics.push(format!("bracket defect skipped: {e}"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let mut human = String::new();
    let _ = writeln!(human, "cartan residual: {r}");
    match &defect {
        Some(p) => {
            let _ = write!(human, "bracket defect omega([X,Y]): {p}");
        }
        None => {
            let _ = write!(human, "bracket defect omega([X,Y]): skipped (fields not tangent)");
        }
    }

    Ok(Outcome {
        command: "cartan",
        inputs: json!({ "vars": vars, "form": form_text, "X": x_text, "Y": y_text }),
        result: json!({
            "cartan_residual": r.to_string(),
            "bracket_defect": defect.map(|p| p.to_string()),
        }),
        verified,
        exit_code: if verified { EXIT_OK } else { EXIT_VERIFY_FAILED },
        human,
        diagnostics,
    })
}

fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad index {s:?} in partition")))
        })
        .collect()
}

pub fn cmd_legendrian(s_text: &str, spec: &[String]) -> Result<Outcome> {
    let mut n: Option<usize> = None;
    let mut i_set: Option<Vec<usize>> = None;
    let mut j_set: Option<Vec<usize>> = None;
    for tok in spec {
        let (key, value) = tok.split_once('=').ok_or_else(|| {
            CliError::Input(format!("expected KEY=VALUE (I=…, J=…, n=…), got {tok:?}"))
        })?;
        match key.trim() {
            "n" => {
                n = Some(value.trim().parse().map_err(|_| {
                    CliError::Input(format!("bad dimension n={value:?}"))
                })?)
            }
            "I" => i_set = Some(parse_index_list(value)?),
            "J" => j_set = Some(parse_index_list(value)?),
            other => return Err(CliError::Input(format!("unknown key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| CliError::Input("n=<dimension> is required".into()))?;
    if n < 1 {
        return Err(CliError::Input("n must be at least 1".into()));
    }
    let i_set = i_set.unwrap_or_default();
    let j_set =
        j_set.unwrap_or_else(|| (1..=n).filter(|k| !i_set.contains(k)).collect::<Vec<_>>());

    let ambient = ambient_space(n);
    let s = parse_poly(s_text, &ambient)?;
    let chart = legendrian_from_s(&s, &i_set, &j_set, n)?;

    let params = chart.map.source();
    let mut human = String::new();
    let _ = writeln!(human, "generating function: {}", chart.generating);
    let _ = writeln!(human, "parameters: ({})", params);
    for (i, c) in chart.map.components().iter().enumerate() {
        let _ = writeln!(human, "  {} = {}", ambient.name(i), c);
    }
    let _ = write!(human, "VERIFIED: pullback of the standard form ≡ 0");

    let coords: Value = chart
        .map
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| (ambient.name(i).to_string(), json!(c.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into();
    Ok(Outcome {
        command: "legendrian",
        inputs: json!({ "S": s_text, "spec": spec }),
        result: json!({
            "n": n,
            "I": i_set,
            "J": j_set,
            "parameters": params.names(),
            "chart": coords,
        }),
        verified: true,
        exit_code: EXIT_OK,
        human,
        diagnostics: Vec::new(),
    })
}

pub struct ReachArgs {
    pub fixture: Option<String>,
    pub vars: Option<String>,
    pub forms: Vec<String>,
    pub point: Option<String>,
    pub realify: bool,
    pub n: usize,
    pub seed: u64,
    pub step: f64,
    pub horizon: f64,
    pub invariant: Option<String>,
}

pub fn cmd_reach(args: &ReachArgs) -> Result<Outcome> {
    let (name, dist, p0, default_invariant, default_invariant_name) = match &args.fixture {
        Some(fixture_name) => {
            let fx = fixture_by_name(fixture_name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown fixture {fixture_name:?} (expected dz, contact or sphere)"
                ))
            })?;
            (
                fixture_name.clone(),
                fx.dist,
                fx.p0,
                Some(fx.invariant),
                Some(fx.invariant_name.to_string()),
            )
        }
        None => {
            let vars = args.vars.as_deref().ok_or_else(|| {
                CliError::Input("custom distributions need --vars and at least one --form".into())
            })?;
            let space = parse_vars(vars)?;
            if args.forms.is_empty() {
                return Err(CliError::Input("at least one --form is required".into()));
            }
            let forms = args
                .forms
                .iter()
                .map(|t| parse_form(t, &space))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let dist = if args.realify {
                NumDist::realified(&space, &forms)?
            } else {
                NumDist::from_real_forms(&space, &forms)?
            };
            let p0 = match &args.point {
                Some(text) => parse_real_point(text, dist.dim())?,
                None => vec![0.0; dist.dim()],
            };
            ("custom".to_string(), dist, p0, None, None)
        }
    };

    let real_space = VarSpace::new(dist.names().to_vec()).map_err(CliError::Core)?;
    let (invariant, invariant_name) = match &args.invariant {
        None => (default_invariant, default_invariant_name),
        Some(text) if Some(text.as_str()) == default_invariant_name.as_deref() => {
            (default_invariant, default_invariant_name)
        }
        Some(text) => {
            let p = parse_poly(text, &real_space)?;
            (
                Some(RealPoly::from_poly_checked(&p)?),
                Some(text.clone()),
            )
        }
    };

    let cfg = ReachConfig {
        n: args.n,
        radius: args.horizon,
        seed: args.seed,
        step: args.step,
        segments: 16,
        invariant,
    };
    let summary = reach_sample(&dist, &p0, &cfg)?;

    let mut human = String::new();
    let _ = writeln!(
        human,
        "distribution: {} ({} coordinates, {} forms)",
        name,
        dist.dim(),
        dist.num_forms()
    );
    let _ = writeln!(
        human,
        "samples: {} requested, {} ok, {} skipped",
        args.n,
        summary.endpoints.len(),
        summary.skipped.len()
    );
    if let (Some(f0), Some(escape)) = (summary.invariant_start, summary.escape) {
        let label = invariant_name.as_deref().unwrap_or("F");
        let _ = writeln!(human, "invariant {label}: start {}", sig17(f0));
        let _ = writeln!(human, "escape max|F - F0|: {}", sig17(escape));
    }
    let _ = writeln!(human, "spread max|p - p0|: {}", sig17(summary.spread));
    let _ = writeln!(human, "max residual: {}", sig17(summary.max_residual));
    let _ = writeln!(human, "# endpoints ({})", dist.names().join(","));
    for e in &summary.endpoints {
        let row: Vec<String> = e.iter().map(|x| sig17(*x)).collect();
        let _ = writeln!(human, "{}", row.join(","));
    }
    let human = human.trim_end().to_string();

    let diagnostics: Vec<String> = summary
        .skipped
        .iter()
        .map(|(i, msg)| format!("sample {i} skipped: {msg}"))
        .collect();

    Ok(Outcome {
        command: "reach",
        inputs: json!({
            "distribution": name,
            "n": args.n,
            "seed": args.seed,
            "step": args.step,
            "horizon": args.horizon,
            "invariant": invariant_name,
        }),
        result: json!({
            "ok": summary.endpoints.len(),
            "skipped": summary.skipped,
            "invariant_start": summary.invariant_start,
            "escape": summary.escape,
            "spread": summary.spread,
            "max_residual": summary.max_residual,
            "endpoints": summary.endpoints,
        }),
        verified: summary.skipped.is_empty(),
        exit_code: EXIT_OK,
        human,
        diagnostics,
    })
}

fn parse_real_point(text: &str, dim: usize) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != dim {
        return Err(CliError::Input(format!(
            "expected {dim} comma-separated coordinates, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad coordinate {s:?}")))
        })
        .collect()
}

