//! pfaff: classify integrability of polynomial 1-forms, synthesize and
//! verify admissible curves, and explore kernel-constrained reachability.

use clap::{Parser, Subcommand};
use serde_json::json;

use pfaff_cli::commands::{self, ReachArgs};
use pfaff_cli::report::{self, Outcome};

#[derive(Parser)]
#[command(
    name = "pfaff",
    version,
    about = "Exact integrability classification and admissible-curve planning for Pfaffian systems",
    after_help = "Exit codes: 0 success/verified, 1 verification failed, \
                  2 input error, 3 missing obligation (cube-root hint), \
                  4 internal limit (degree cap)."
)]
struct Cli {
    /// Emit a machine-readable JSON report on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Contact class and integrability of a 1-form
    Classify {
        /// Comma-separated variable names, e.g. x,y,z
        #[arg(long)]
        vars: String,
        /// The 1-form, e.g. "x*dy + dz"
        form: String,
    },
    /// Connect two points by admissible curves
    Plan {
        /// Start point, comma-separated Gaussian rationals
        p0: String,
        /// End point
        p1: String,
        /// single | three_link | generating
        #[arg(long)]
        strategy: String,
        /// Cube root t1 with t1^3 = 3*z for three_link targets off z = 0
        #[arg(long)]
        hint: Option<String>,
    },
    /// Check a curve file for admissibility against a form
    Verify {
        #[arg(long)]
        vars: String,
        /// The 1-form the curve should annihilate
        #[arg(long)]
        form: String,
        /// Curve file path (vars: t / coordinate lines / t bounds)
        curve: String,
    },
    /// Cartan-formula residual and bracket defect for two fields
    Cartan {
        #[arg(long)]
        vars: String,
        /// The 1-form
        form: String,
        /// First vector field, e.g. "d/dx"
        x: String,
        /// Second vector field, e.g. "d/dy - x*d/dz"
        y: String,
    },
    /// Legendrian chart from a generating function
    Legendrian {
        /// Generating function over the ambient variables
        s: String,
        /// KEY=VALUE settings: n=<dim> (required), I=<list>, J=<list>
        spec: Vec<String>,
    },
    /// Sample reachable endpoints of kernel-constrained random paths
    Reach {
        /// Named fixture: dz | contact | sphere (omit for --vars/--form)
        fixture: Option<String>,
        /// Variables of a custom distribution
        #[arg(long)]
        vars: Option<String>,
        /// Defining 1-form of a custom distribution (repeatable)
        #[arg(long = "form")]
        forms: Vec<String>,
        /// Start point (defaults to the origin)
        #[arg(long)]
        point: Option<String>,
        /// Treat the custom variables as complex and realify
        #[arg(long)]
        realify: bool,
        /// Number of samples
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Integration step
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Total control time (doubles as the sampling radius)
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        /// Candidate invariant: a fixture's named invariant or a polynomial
        #[arg(long)]
        invariant: Option<String>,
    },
}

fn dispatch(cmd: &Cmd) -> Result<Outcome, (serde_json::Value, &'static str, report::CliError)> {
    match cmd {
        Cmd::Classify { vars, form } => commands::cmd_classify(vars, form)
            .map_err(|e| (json!({"vars": vars, "form": form}), "classify", e)),
        Cmd::Plan {
            p0,
            p1,
            strategy,
            hint,
        } => commands::cmd_plan(p0, p1, strategy, hint.as_deref()).map_err(|e| {
            (
                json!({"p0": p0, "p1": p1, "strategy": strategy, "hint": hint}),
                "plan",
                e,
            )
        }),
        Cmd::Verify { vars, form, curve } => commands::cmd_verify(vars, form, curve)
            .map_err(|e| (json!({"vars": vars, "form": form, "curve": curve}), "verify", e)),
        Cmd::Cartan { vars, form, x, y } => commands::cmd_cartan(vars, form, x, y).map_err(|e| {
            (
                json!({"vars": vars, "form": form, "X": x, "Y": y}),
                "cartan",
                e,
            )
        }),
        Cmd::Legendrian { s, spec } => commands::cmd_legendrian(s, spec)
            .map_err(|e| (json!({"S": s, "spec": spec}), "legendrian", e)),
        Cmd::Reach {
            fixture,
            vars,
            forms,
            point,
            realify,
            n,
            seed,
            step,
            horizon,
            invariant,
        } => {
            let args = ReachArgs {
                fixture: fixture.clone(),
                vars: vars.clone(),
                forms: forms.clone(),
                point: point.clone(),
                realify: *realify,
                n: *n,
                seed: *seed,
                step: *step,
                horizon: *horizon,
                invariant: invariant.clone(),
            };
            commands::cmd_reach(&args).map_err(|e| {
                (
                    json!({"fixture": fixture, "n": n, "seed": seed}),
                    "reach",
                    e,
                )
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli.cmd) {
        Ok(outcome) => outcome,
        Err((inputs, command, err)) => Outcome::failure(command, inputs, &err),
    };
    std::process::exit(outcome.emit(cli.json));
}
