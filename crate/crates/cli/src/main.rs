//! Command-line driver for the spectral factorization pipeline.
//!
//! Subcommands mirror the pipeline stages: `centralizer` finds the commuting
//! generators A1, A2 of L = D^3 + u1 D + u0, `curve` computes the ideal
//! (f1, f2, f3) with its primality verdict, `factor` runs the full spectral
//! factorization at a curve point, `factor-planar` factors through the
//! (L, A1) curve alone, and `verify` re-runs a previously emitted JSON
//! report and compares the results.
//!
//! Exit codes: 0 success; 2 curve not geometrically reducible; 3 no usable
//! point (in the bad set, off the curve, or no rational point); 4 parse or
//! usage error; 5 internal consistency failure.

mod expr;
mod report;

use std::collections::BTreeMap;
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};

use specfact::rat::{parse_rat, Rat};
use specfact::{
    assemble_p, centralizer_basis, planar_factor, solve_constants, spectral_curve, spf, Branch,
    CentralizerBasis, CurvePoint, Error as CoreError, Parametrization, PlanarPoint, Potentials,
    SpectralCurve, SpfOutcome, SpfTarget, UPoly, Verdict,
};

use expr::{parse_binding, parse_expr, parse_poly_list, Context};
use report::{
    diff_paths, CentralizerReport, CurveReport, FactorReport, InputEcho, OperatorReport,
    PlanarReport, PointReport, Report, TargetEcho, VerdictReport, VerificationEcho, VerifyReport,
    SCHEMA_VERSION,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "specfact",
    version,
    about = "Exact spectral factorization of L = D^3 + u1 D + u0 over Q(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the commuting operators A1, A2 that generate the centralizer of L
    Centralizer(PipelineArgs),
    /// Compute the spectral curve ideal (f1, f2, f3) and classify it
    Curve(PipelineArgs),
    /// Factor L - lambda0 = N (D + phi0) at a rational point of the curve
    Factor(FactorArgs),
    /// Factor through the planar (lambda, mu) curve of the pair (L, A1)
    FactorPlanar(PlanarArgs),
    /// Re-run the pipeline recorded in a JSON report and compare
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    pot: PotentialArgs,
}

#[derive(Args)]
struct PotentialArgs {
    /// Order-zero coefficient of L = D^3 + u1 D + u0
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    u0: Option<String>,
    /// Order-one coefficient of L = D^3 + u1 D + u0
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    u1: Option<String>,
    /// Alternative coordinates: L = D^3 + q1 D + q1'/2 + q0
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    q0: Option<String>,
    /// Alternative coordinates: L = D^3 + q1 D + q1'/2 + q0
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    q1: Option<String>,
    /// Bind a named constant, e.g. --const h=2 (repeatable)
    #[arg(long = "const", value_name = "NAME=P/Q")]
    constants: Vec<String>,
    /// Highest hierarchy level tried in the centralizer search
    #[arg(long, value_name = "N", default_value_t = 5)]
    max_level: usize,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    pot: PotentialArgs,
    /// Search for a rational curve point over this spectral value
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    lambda0: Option<String>,
    /// Polynomial parametrization "c1(t), c2(t), c3(t)" of the curve
    #[arg(long, value_name = "COMPONENTS", allow_hyphen_values = true)]
    param: Option<String>,
    /// Parameter value plugged into --param
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    tau0: Option<String>,
}

#[derive(Args)]
struct PlanarArgs {
    #[command(flatten)]
    pot: PotentialArgs,
    /// Hierarchy level n of the order 3n+1 commuting operator A1
    #[arg(long, value_name = "N", default_value_t = 1)]
    a1_level: usize,
    /// Planar point: lambda coordinate (requires --mu0)
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    lambda0: Option<String>,
    /// Planar point: mu coordinate (requires --lambda0)
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    mu0: Option<String>,
    /// Polynomial parametrization "c1(t), c2(t)" of the planar curve
    #[arg(long, value_name = "COMPONENTS", allow_hyphen_values = true)]
    param: Option<String>,
    /// Parameter value plugged into --param
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    tau0: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON report emitted by a previous run with --format json
    #[arg(value_name = "FILE")]
    file: std::path::PathBuf,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// A terminal failure: message to stderr, no report on stdout.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 4,
        msg: msg.into(),
    }
}

fn core_failure(e: CoreError) -> Failure {
    let code = match &e {
        CoreError::NotOnCurve
        | CoreError::NoCentralizerFound { .. }
        | CoreError::ZeroDenominator => 3,
        _ => 5,
    };
    Failure {
        code,
        msg: e.to_string(),
    }
}

/// Parsed potentials plus everything needed to echo the input back.
struct Inputs {
    pot: Potentials,
    consts: BTreeMap<String, Rat>,
    max_level: usize,
}

impl Inputs {
    fn echo(&self) -> InputEcho {
        InputEcho {
            u0: self.pot.u0().to_string(),
            u1: self.pot.u1().to_string(),
            q0: self.pot.q0().to_string(),
            q1: self.pot.q1().to_string(),
            constants: self
                .consts
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            max_level: self.max_level,
            a1_level: None,
            target: None,
        }
    }
}

fn prepare(p: &PotentialArgs) -> Result<Inputs, Failure> {
    let mut consts = BTreeMap::new();
    for b in &p.constants {
        let (name, val) = parse_binding(b).map_err(|e| usage(format!("in --const: {e}")))?;
        consts.insert(name, val);
    }
    let parse = |flag: &str, text: &str| -> Result<_, Failure> {
        let ctx = Context {
            var: "x",
            consts: &consts,
        };
        parse_expr(text, &ctx).map_err(|e| usage(format!("in --{flag} '{text}': {e}")))
    };
    let pot = match (&p.u0, &p.u1, &p.q0, &p.q1) {
        (Some(u0), Some(u1), None, None) => {
            Potentials::from_u(parse("u0", u0)?, parse("u1", u1)?)
        }
        (None, None, Some(q0), Some(q1)) => {
            Potentials::from_q(parse("q0", q0)?, parse("q1", q1)?)
        }
        _ => {
            return Err(usage(
                "supply exactly one coefficient pair: --u0 with --u1, or --q0 with --q1",
            ))
        }
    };
    Ok(Inputs {
        pot,
        consts,
        max_level: p.max_level,
    })
}

fn parse_point_coord(flag: &str, text: &str) -> Result<Rat, Failure> {
    parse_rat(text).ok_or_else(|| usage(format!("--{flag} '{text}' is not a rational p/q")))
}

fn base_report(command: &str, input: InputEcho) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        input,
        centralizer: None,
        curve: None,
        point: None,
        planar: None,
        factorization: None,
        diagnostic: None,
        exit_code: 0,
    }
}

fn operator_report(op: &specfact::DiffOp, level: usize, constants: &[Rat]) -> OperatorReport {
    OperatorReport {
        order: op.order().expect("commuting operator is nonzero"),
        level,
        constants: constants.iter().map(|c| c.to_string()).collect(),
        operator: op.to_string(),
    }
}

fn centralizer_report(basis: &CentralizerBasis) -> CentralizerReport {
    CentralizerReport {
        a1: operator_report(&basis.a1, basis.n1, &basis.c1),
        a2: operator_report(&basis.a2, basis.n2, &basis.c2),
    }
}

fn curve_report(c: &SpectralCurve) -> CurveReport {
    CurveReport {
        f1: c.f1.to_string(),
        f2: c.f2.to_string(),
        f3: c.f3.to_string(),
        orders: [c.orders.0, c.orders.1, c.orders.2],
        verdict: match &c.verdict {
            Verdict::NotPrime { certificate } => VerdictReport::NotPrime {
                certificate: certificate.to_string(),
            },
            Verdict::HeuristicallyPrime => VerdictReport::HeuristicallyPrime,
            Verdict::Undetermined => VerdictReport::Undetermined,
        },
    }
}

fn point_report(p: &CurvePoint) -> PointReport {
    PointReport {
        lambda0: p.lambda0.to_string(),
        mu0: p.mu0.to_string(),
        gamma0: Some(p.gamma0.to_string()),
    }
}

fn run_centralizer(inp: &Inputs) -> Result<Report, Failure> {
    let basis = centralizer_basis(&inp.pot, inp.max_level).map_err(core_failure)?;
    let mut r = base_report("centralizer", inp.echo());
    r.centralizer = Some(centralizer_report(&basis));
    Ok(r)
}

fn run_curve(inp: &Inputs) -> Result<Report, Failure> {
    let basis = centralizer_basis(&inp.pot, inp.max_level).map_err(core_failure)?;
    let curve = spectral_curve(&inp.pot.operator(), &basis).map_err(core_failure)?;
    let mut r = base_report("curve", inp.echo());
    r.centralizer = Some(centralizer_report(&basis));
    r.curve = Some(curve_report(&curve));
    Ok(r)
}

fn run_factor(inp: &Inputs, target: &SpfTarget, techo: TargetEcho) -> Result<Report, Failure> {
    let outcome = spf(&inp.pot, target, inp.max_level).map_err(core_failure)?;
    let mut input = inp.echo();
    input.target = Some(techo);
    let mut r = base_report("factor", input);
    r.diagnostic = outcome.diagnostic().map(String::from);
    match outcome {
        SpfOutcome::Factored(res) => {
            r.centralizer = Some(centralizer_report(&res.basis));
            r.curve = Some(curve_report(&res.ideal));
            r.point = Some(point_report(&res.point));
            r.factorization = Some(FactorReport {
                phi0: res.phi0.to_string(),
                right_factor: res.right_factor.to_string(),
                quotient: res.quotient.to_string(),
                verification: VerificationEcho {
                    cofactor_identity: res.checks.cofactor_identity,
                    a1_divides: res.checks.a1_divides,
                    a2_divides: Some(res.checks.a2_divides),
                    ratios_agree: Some(res.checks.ratios_agree),
                },
                verified: res.verified,
            });
            r.exit_code = 0;
        }
        SpfOutcome::NotReducible { curve } => {
            r.curve = Some(curve_report(&curve));
            r.exit_code = 2;
        }
        SpfOutcome::BadPoint { curve, point, .. } => {
            r.curve = Some(curve_report(&curve));
            r.point = Some(point_report(&point));
            r.exit_code = 3;
        }
        SpfOutcome::NoRationalPoint { curve, .. } => {
            r.curve = Some(curve_report(&curve));
            r.exit_code = 3;
        }
    }
    Ok(r)
}

fn run_planar(
    inp: &Inputs,
    a1_level: usize,
    point: &PlanarPoint,
    techo: TargetEcho,
) -> Result<Report, Failure> {
    let order = 3 * a1_level + 1;
    let c = solve_constants(&inp.pot, a1_level, Branch::One)
        .map_err(core_failure)?
        .ok_or_else(|| Failure {
            code: 3,
            msg: format!("no commuting operator of order {order} at level {a1_level}"),
        })?;
    let a1 = assemble_p(&inp.pot, order, &c).map_err(core_failure)?;
    let out = planar_factor(&inp.pot, &a1, point).map_err(core_failure)?;
    let mut input = inp.echo();
    input.a1_level = Some(a1_level);
    input.target = Some(techo);
    let mut r = base_report("factor-planar", input);
    r.planar = Some(PlanarReport {
        a1: operator_report(&a1, a1_level, &c),
        f1: out.f1.to_string(),
    });
    r.point = Some(PointReport {
        lambda0: out.lambda0.to_string(),
        mu0: out.mu0.to_string(),
        gamma0: None,
    });
    r.factorization = Some(FactorReport {
        phi0: out.phi0.to_string(),
        right_factor: out.right_factor.to_string(),
        quotient: out.quotient.to_string(),
        verification: VerificationEcho {
            cofactor_identity: out.cofactor_identity,
            a1_divides: out.a1_divides,
            a2_divides: None,
            ratios_agree: None,
        },
        verified: out.verified,
    });
    Ok(r)
}

fn factor_target(
    args: &FactorArgs,
    consts: &BTreeMap<String, Rat>,
) -> Result<(SpfTarget, TargetEcho), Failure> {
    match (&args.lambda0, &args.param, &args.tau0) {
        (Some(lam), None, None) => {
            let lambda0 = parse_point_coord("lambda0", lam)?;
            let echo = TargetEcho::Lambda0 {
                lambda0: lambda0.to_string(),
            };
            Ok((SpfTarget::Lambda0(lambda0), echo))
        }
        (None, Some(param), Some(tau0)) => {
            let ctx = Context { var: "t", consts };
            let comps = parse_poly_list(param, &ctx, 3)
                .map_err(|e| usage(format!("in --param '{param}': {e}")))?;
            let tau0 = parse_point_coord("tau0", tau0)?;
            let echo = TargetEcho::Tau {
                param: comps.iter().map(|p| p.to_string_with("t")).collect(),
                tau0: tau0.to_string(),
            };
            let comps: [UPoly; 3] = comps.try_into().expect("length checked");
            Ok((
                SpfTarget::Tau {
                    param: Parametrization::new(comps),
                    tau0,
                },
                echo,
            ))
        }
        _ => Err(usage(
            "supply either --lambda0, or --param together with --tau0",
        )),
    }
}

fn planar_point(
    args: &PlanarArgs,
    consts: &BTreeMap<String, Rat>,
) -> Result<(PlanarPoint, TargetEcho), Failure> {
    match (&args.lambda0, &args.mu0, &args.param, &args.tau0) {
        (Some(lam), Some(mu), None, None) => {
            let lambda0 = parse_point_coord("lambda0", lam)?;
            let mu0 = parse_point_coord("mu0", mu)?;
            let echo = TargetEcho::Point {
                lambda0: lambda0.to_string(),
                mu0: mu0.to_string(),
            };
            Ok((PlanarPoint::LambdaMu(lambda0, mu0), echo))
        }
        (None, None, Some(param), Some(tau0)) => {
            let ctx = Context { var: "t", consts };
            let comps = parse_poly_list(param, &ctx, 2)
                .map_err(|e| usage(format!("in --param '{param}': {e}")))?;
            let tau0 = parse_point_coord("tau0", tau0)?;
            let echo = TargetEcho::Tau {
                param: comps.iter().map(|p| p.to_string_with("t")).collect(),
                tau0: tau0.to_string(),
            };
            let comps: [UPoly; 2] = comps.try_into().expect("length checked");
            Ok((PlanarPoint::Tau { param: comps, tau0 }, echo))
        }
        _ => Err(usage(
            "supply either --lambda0 with --mu0, or --param together with --tau0",
        )),
    }
}

/// Rebuilds the pipeline inputs of an emitted report and re-runs its command.
fn rerun(original: &Report) -> Result<Report, Failure> {
    let mut consts = BTreeMap::new();
    for (name, value) in &original.input.constants {
        let r = parse_rat(value)
            .ok_or_else(|| usage(format!("report constant {name} = '{value}' is not rational")))?;
        consts.insert(name.clone(), r);
    }
    let ctx = Context {
        var: "x",
        consts: &consts,
    };
    let q0 = parse_expr(&original.input.q0, &ctx)
        .map_err(|e| usage(format!("report q0 '{}': {e}", original.input.q0)))?;
    let q1 = parse_expr(&original.input.q1, &ctx)
        .map_err(|e| usage(format!("report q1 '{}': {e}", original.input.q1)))?;
    let inp = Inputs {
        pot: Potentials::from_q(q0, q1),
        consts: consts.clone(),
        max_level: original.input.max_level,
    };
    let tctx = Context {
        var: "t",
        consts: &consts,
    };
    match original.command.as_str() {
        "centralizer" => run_centralizer(&inp),
        "curve" => run_curve(&inp),
        "factor" => {
            let (target, techo) = match &original.input.target {
                Some(TargetEcho::Lambda0 { lambda0 }) => {
                    let lam = parse_point_coord("lambda0", lambda0)?;
                    let echo = TargetEcho::Lambda0 {
                        lambda0: lam.to_string(),
                    };
                    (SpfTarget::Lambda0(lam), echo)
                }
                Some(TargetEcho::Tau { param, tau0 }) => {
                    if param.len() != 3 {
                        return Err(usage("report parametrization must have 3 components"));
                    }
                    let comps: Vec<UPoly> = param
                        .iter()
                        .map(|p| {
                            expr::parse_poly(p, &tctx)
                                .map_err(|e| usage(format!("report param '{p}': {e}")))
                        })
                        .collect::<Result<_, _>>()?;
                    let tau0 = parse_point_coord("tau0", tau0)?;
                    let echo = TargetEcho::Tau {
                        param: comps.iter().map(|p| p.to_string_with("t")).collect(),
                        tau0: tau0.to_string(),
                    };
                    let comps: [UPoly; 3] = comps.try_into().expect("length checked");
                    (
                        SpfTarget::Tau {
                            param: Parametrization::new(comps),
                            tau0,
                        },
                        echo,
                    )
                }
                _ => return Err(usage("factor report carries no usable target")),
            };
            run_factor(&inp, &target, techo)
        }
        "factor-planar" => {
            let a1_level = original
                .input
                .a1_level
                .ok_or_else(|| usage("factor-planar report carries no a1 level"))?;
            let (point, techo) = match &original.input.target {
                Some(TargetEcho::Point { lambda0, mu0 }) => {
                    let lam = parse_point_coord("lambda0", lambda0)?;
                    let mu = parse_point_coord("mu0", mu0)?;
                    let echo = TargetEcho::Point {
                        lambda0: lam.to_string(),
                        mu0: mu.to_string(),
                    };
                    (PlanarPoint::LambdaMu(lam, mu), echo)
                }
                Some(TargetEcho::Tau { param, tau0 }) => {
                    if param.len() != 2 {
                        return Err(usage("planar report parametrization must have 2 components"));
                    }
                    let comps: Vec<UPoly> = param
                        .iter()
                        .map(|p| {
                            expr::parse_poly(p, &tctx)
                                .map_err(|e| usage(format!("report param '{p}': {e}")))
                        })
                        .collect::<Result<_, _>>()?;
                    let tau0 = parse_point_coord("tau0", tau0)?;
                    let echo = TargetEcho::Tau {
                        param: comps.iter().map(|p| p.to_string_with("t")).collect(),
                        tau0: tau0.to_string(),
                    };
                    let comps: [UPoly; 2] = comps.try_into().expect("length checked");
                    (PlanarPoint::Tau { param: comps, tau0 }, echo)
                }
                _ => return Err(usage("factor-planar report carries no usable target")),
            };
            run_planar(&inp, a1_level, &point, techo)
        }
        other => Err(usage(format!("unknown command '{other}' in report"))),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<(VerifyReport, Format), Failure> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| usage(format!("cannot read {}: {e}", args.file.display())))?;
    let original: Report = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not a report: {e}", args.file.display())))?;
    if original.schema_version != SCHEMA_VERSION {
        return Err(usage(format!(
            "unsupported schema version {}",
            original.schema_version
        )));
    }
    let recomputed = rerun(&original).map_err(|f| {
        if f.code == 4 {
            f
        } else {
            Failure {
                code: 5,
                msg: format!("re-run failed: {}", f.msg),
            }
        }
    })?;
    let va = serde_json::to_value(&original).expect("report serialization");
    let vb = serde_json::to_value(&recomputed).expect("report serialization");
    let mut mismatches = Vec::new();
    diff_paths(&va, &vb, "", &mut mismatches);
    let matches = mismatches.is_empty();
    Ok((
        VerifyReport {
            schema_version: SCHEMA_VERSION,
            command: "verify".to_string(),
            checked_command: original.command,
            matches,
            mismatches,
            exit_code: if matches { 0 } else { 5 },
        },
        args.format,
    ))
}

fn dispatch(cli: &Cli) -> Result<(String, Option<String>, i32), Failure> {
    match &cli.command {
        Command::Centralizer(args) => {
            let inp = prepare(&args.pot)?;
            let r = run_centralizer(&inp)?;
            Ok(render(r, args.pot.format))
        }
        Command::Curve(args) => {
            let inp = prepare(&args.pot)?;
            let r = run_curve(&inp)?;
            Ok(render(r, args.pot.format))
        }
        Command::Factor(args) => {
            let inp = prepare(&args.pot)?;
            let (target, techo) = factor_target(args, &inp.consts)?;
            let r = run_factor(&inp, &target, techo)?;
            Ok(render(r, args.pot.format))
        }
        Command::FactorPlanar(args) => {
            let inp = prepare(&args.pot)?;
            let (point, techo) = planar_point(args, &inp.consts)?;
            let r = run_planar(&inp, args.a1_level, &point, techo)?;
            Ok(render(r, args.pot.format))
        }
        Command::Verify(args) => {
            let (r, format) = run_verify(args)?;
            let out = match format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json(),
            };
            let diag = (!r.matches).then(|| {
                format!(
                    "report mismatch in {} field{}",
                    r.mismatches.len(),
                    if r.mismatches.len() == 1 { "" } else { "s" }
                )
            });
            Ok((out, diag, r.exit_code))
        }
    }
}

fn render(r: Report, format: Format) -> (String, Option<String>, i32) {
    let out = match format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(),
    };
    (out, r.diagnostic.clone(), r.exit_code)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            exit(4);
        }
    };
    match dispatch(&cli) {
        Ok((stdout, diag, code)) => {
            print!("{stdout}");
            if code != 0 {
                if let Some(d) = diag {
                    eprintln!("{d}");
                }
            }
            exit(code);
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            exit(f.code);
        }
    }
}
