use std::fmt::Write as _;

use mvop::identities::{
    difference_equation_check, duality_check, norm_ratio_exact, specialization_check, step_relation_check,
    verify_recurrence,
};
use mvop::limits::{limit_discrepancy, limit_report, LimitCase};
use mvop::partitions::{graded_lex_cmp, ideal, partitions_up_to};
use mvop::polynomials::build_monic;
use mvop::quadrature::{orthogonality_report, GridSpec};
use mvop::report::VerificationReport;
use mvop::suite::{criterion, run_suite, SuiteReport};
use mvop::{ExactScalar, Family, FamilyParams, MathError, Partition, SymPoly};
use serde_json::json;

use crate::{Command, FamilyArgs, Format, GridArgs, Identity, PolyArgs, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Math = 3,
}

pub struct Outcome {
    pub status: Status,
    pub output: String,
}

enum Failure {
    Usage(String),
    Math(MathError),
}

impl From<MathError> for Failure {
    fn from(e: MathError) -> Self {
        Failure::Math(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Printed text and whether every check passed.
type Rendered = (String, bool);

pub fn run(command: Command) -> Outcome {
    match execute(command) {
        Ok((output, pass)) => Outcome { status: if pass { Status::Ok } else { Status::Failed }, output },
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            Outcome { status: Status::Usage, output: String::new() }
        }
        Err(Failure::Math(e)) => {
            let body = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            Outcome { status: Status::Math, output: format!("{}\n", serde_json::to_string_pretty(&body).expect("json")) }
        }
    }
}

fn error_kind(e: &MathError) -> &'static str {
    match e {
        MathError::Pole(_) => "pole",
        MathError::DimensionMismatch { .. } => "dimension_mismatch",
        MathError::InvalidPartition(_) => "invalid_partition",
        MathError::SingularSystem { .. } => "singular_system",
        MathError::ResidualNonzero(_) => "residual_nonzero",
        MathError::TriangularityViolation { .. } => "triangularity_violation",
        MathError::DiagonalMismatch { .. } => "diagonal_mismatch",
        MathError::EigenvalueCollision { .. } => "eigenvalue_collision",
        MathError::NotSquare { .. } => "not_square",
        MathError::VanishingFactor(_) => "vanishing_factor",
        MathError::ConditionViolated(_) => "condition_violated",
        MathError::Domain(_) => "domain",
        MathError::Unsupported(_) => "unsupported",
        MathError::Parse(_) => "parse",
        MathError::IllConditioned(_) => "ill_conditioned",
    }
}

fn usage(e: MathError) -> Failure {
    Failure::Usage(e.to_string())
}

fn family_params(args: &FamilyArgs) -> Res<FamilyParams> {
    let family: Family = args.family.parse().map_err(usage)?;
    if args.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let params = FamilyParams::parse(family, args.n, &args.params).map_err(usage)?;
    Ok(if args.self_dual_params { params.make_self_dual() } else { params })
}

fn partition(text: &str, n: usize) -> Res<Partition> {
    Partition::parse(text, n).map_err(usage)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"))
}

fn csv_unsupported(what: &str) -> Failure {
    Failure::Usage(format!("--format csv is not available for {what}"))
}

fn pretty_report(out: &mut String, r: &VerificationReport) {
    let mut head = format!("{} {}", r.identity, r.family.tag());
    if let Some(l) = &r.lambda {
        let _ = write!(head, " lambda={l}");
    }
    if let Some(m) = &r.mu {
        let _ = write!(head, " mu={m}");
    }
    if let Some(k) = r.r {
        let _ = write!(head, " r={k}");
    }
    let _ = writeln!(out, "{head}: {}", if r.pass { "PASS" } else { "FAIL" });
    for t in &r.residual_terms {
        let _ = writeln!(out, "  {} = {}", t.label, t.value);
    }
    if let Some(n) = &r.note {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn render_reports(reports: &[VerificationReport], format: Format, what: &str) -> Res<Rendered> {
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Pretty => {
            let mut out = String::new();
            reports.iter().for_each(|r| pretty_report(&mut out, r));
            out
        }
        Format::Csv => return Err(csv_unsupported(what)),
    };
    Ok((text, pass))
}

fn execute(command: Command) -> Res<Rendered> {
    match command {
        Command::Poly(args) => poly(&args),
        Command::Verify { identity } => verify(identity),
        Command::Table { table: Table::Norms { family, lambda_max, format } } => table_norms(&family, &lambda_max, format),
        Command::Suite { criterion: id } => suite(id),
    }
}

fn poly(args: &PolyArgs) -> Res<Rendered> {
    let params = family_params(&args.family)?;
    let lambda = partition(&args.lambda, params.n())?;
    let built = build_monic(&params, &lambda)?;
    let text = match args.format {
        Format::Json => to_json(&built),
        Format::Pretty => {
            let terms: Vec<String> = ordered_terms(&built.monic).map(|(mu, c)| format!("({c}) m_{mu}")).collect();
            format!("p_{lambda} = {}\nc_{lambda} = {}\n", terms.join(" + "), built.cnorm)
        }
        Format::Csv => {
            let mut out = String::from("partition,coefficient\n");
            for (mu, c) in ordered_terms(&built.monic) {
                let _ = writeln!(out, "\"{mu}\",{c}");
            }
            out
        }
    };
    Ok((text, true))
}

/// Terms from the top partition down, as in the JSON output.
fn ordered_terms(p: &SymPoly<ExactScalar>) -> impl Iterator<Item = (Partition, ExactScalar)> + '_ {
    let mut support = p.support();
    support.sort_by(|a, b| graded_lex_cmp(b, a));
    support.into_iter().map(|mu| {
        let c = p.coeff(&mu);
        (mu, c)
    })
}

fn grid_spec(params: &FamilyParams, args: &GridArgs) -> GridSpec {
    let base = GridSpec::default_for(params.family(), params.n());
    GridSpec {
        points: args.points.unwrap_or(base.points),
        panels: args.panels.unwrap_or(base.panels),
        radius: args.radius.unwrap_or(base.radius),
        tol: args.tol.unwrap_or(base.tol),
        ..base
    }
}

fn verify(identity: Identity) -> Res<Rendered> {
    match identity {
        Identity::Diffeq { family, kmax, format } => {
            let params = family_params(&family)?;
            render_reports(&[difference_equation_check(&params, kmax)?], format, "diffeq")
        }
        Identity::Recurrence { family, r, lambda, override_condition, format } => {
            let params = family_params(&family)?;
            let lambda = partition(&lambda, params.n())?;
            render_reports(&[verify_recurrence(&params, r, &lambda, override_condition)?], format, "recurrence")
        }
        Identity::Duality { family, lambda, mu, format } => {
            let params = family_params(&family)?;
            let lambda = partition(&lambda, params.n())?;
            let mu = partition(&mu, params.n())?;
            render_reports(&[duality_check(&params, &lambda, &mu)?], format, "duality")
        }
        Identity::Specialization { family, lambda, format } => {
            let params = family_params(&family)?;
            let lambda = partition(&lambda, params.n())?;
            render_reports(&[specialization_check(&params, &lambda)?], format, "specialization")
        }
        Identity::Orthogonality { family, lambda_max, grid, format } => {
            let params = family_params(&family)?;
            let lambda_max = partition(&lambda_max, params.n())?;
            let grid = grid_spec(&params, &grid);
            render_reports(&[orthogonality_report(&params, &lambda_max, &grid)?], format, "orthogonality")
        }
        Identity::Limits { family, lambdas, first_scale, format } => limits(&family, lambdas.as_deref(), first_scale, format),
        Identity::Norms { family, lambda, format } => {
            let params = family_params(&family)?;
            let lambda = partition(&lambda, params.n())?;
            let reports = (1..=params.n()).map(|r| step_relation_check(&params, &lambda, r)).collect::<Result<Vec<_>, _>>()?;
            render_reports(&reports, format, "norms")
        }
    }
}

fn limits(family: &FamilyArgs, lambdas: Option<&str>, first_scale: f64, format: Format) -> Res<Rendered> {
    let target = family_params(family)?;
    let n = target.n();
    let lambdas = match lambdas {
        Some(text) => text.split(';').map(|p| partition(p, n)).collect::<Res<Vec<_>>>()?,
        None => partitions_up_to(n, 2),
    };
    if !(first_scale > 0.0 && first_scale < 1.0) {
        return Err(Failure::Usage("--limit-first-scale must lie in (0, 1)".into()));
    }
    let case = LimitCase::halving_from(target, first_scale, lambdas)?;
    match format {
        Format::Csv => {
            let mut out = String::from("lambda,scale,discrepancy\n");
            for lambda in &case.lambdas {
                for (s, d) in limit_discrepancy(&case, lambda)? {
                    let _ = writeln!(out, "\"{lambda}\",{s:e},{d:e}");
                }
            }
            let pass = limit_report(&case)?.pass;
            Ok((out, pass))
        }
        _ => render_reports(&[limit_report(&case)?], format, "limits"),
    }
}

fn table_norms(family: &FamilyArgs, lambda_max: &str, format: Format) -> Res<Rendered> {
    let params = family_params(family)?;
    let top = partition(lambda_max, params.n())?;
    let mut rows = Vec::new();
    for mu in ideal(&top) {
        let ratio = norm_ratio_exact(&params, &mu)?;
        rows.push((mu, ratio));
    }
    let text = match format {
        Format::Json => {
            let body: Vec<_> = rows.iter().map(|(mu, v)| json!({ "mu": mu, "norm_ratio": v.to_string() })).collect();
            to_json(&json!({ "family": params.family(), "params": params, "rows": body }))
        }
        Format::Csv => {
            let mut out = String::from("mu,norm_ratio\n");
            for (mu, v) in &rows {
                let _ = writeln!(out, "\"{mu}\",{v}");
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (mu, v) in &rows {
                let _ = writeln!(out, "{mu:<12} {v}");
            }
            out
        }
    };
    Ok((text, true))
}

fn suite(id: Option<u8>) -> Res<Rendered> {
    let report = match id {
        Some(k) => {
            let c = criterion(k).ok_or_else(|| Failure::Usage(format!("no criterion {k} (expected 1-8)")))?;
            SuiteReport { pass: c.pass, criteria: vec![c] }
        }
        None => run_suite(),
    };
    Ok((to_json(&report), report.pass))
}
