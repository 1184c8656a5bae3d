use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hypergeo::ladder::associated;
use hypergeo::polycore::{generate_phi, rational_to_f64};
use hypergeo::schrod::{coordinate_map, eigen_grid, sample_potential};
use hypergeo::tilde::{make_tilde, tilde_grid, tilde_potential, tilde_superpotential, TildeFamily};
use hypergeo::verify::{run, Suite, VerifyConfig};
use hypergeo::{DegreeBudget, Error, Family, Rational, SigmaCase, Validation};

#[derive(Parser)]
#[command(name = "hypergeo", version, about = "Hypergeometric-type polynomials, ladders and solvable potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a family.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Exact coefficients of Φ_l (or of P in Φ_{l,m} = κ^m P).
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// CSV table of the potential and superpotential at layer m.
    Potential {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Number of grid points.
        #[arg(long, default_value_t = 201, conflicts_with = "at")]
        grid: usize,
        /// Explicit sample points instead of a grid.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        at: Vec<f64>,
    },
    /// Eigenvalues λ_0..λ_lmax (capped at L for finite families).
    Spectrum {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        lmax: usize,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        suite: String,
        #[arg(long)]
        case: Option<SigmaCase>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    Show {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    case: SigmaCase,
    /// Exact rational, e.g. `-2` or `-3/2`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    beta: String,
}

/// Failure with its exit code: 1 for a failed computation or check, 2 for
/// invalid input.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateEigenvalue { .. }
            | Error::DegenerateTildeEigenvalue { .. }
            | Error::Divergent { .. }
            | Error::NonPolynomialRemainder(_) => 1,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn parse_rational(name: &str, s: &str) -> Result<Rational, Failure> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Failure(2, format!("--{name}: `{s}` is not a rational p/q")))
}

fn build_family(case: SigmaCase, alpha: &str, beta: &str) -> Result<Family, Failure> {
    let a = parse_rational("alpha", alpha)?;
    let b = parse_rational("beta", beta)?;
    // power-weight rows are admitted so the γ-shifted families are reachable
    Ok(Family::build(case, a, b, Validation::PowerWeight)?)
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Failure> {
        build_family(self.case, &self.alpha, &self.beta)
    }
}

fn tilde_of(f: &Family, gamma: &Option<String>) -> Result<Option<TildeFamily>, Failure> {
    gamma
        .as_deref()
        .map(|g| Ok(make_tilde(f, parse_rational("gamma", g)?)?))
        .transpose()
}

/// Shortest decimal that reads back to the same `f64`; `-0` prints as `0`.
fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn family_show(args: &FamilyArgs, format: Format) -> CliResult {
    let f = args.family()?;
    let l_max = match f.degree_budget() {
        DegreeBudget::Infinite => None,
        DegreeBudget::Max(l) => Some(l),
    };
    let k = f.power_weight_exponent().map(|k| k.to_string());
    Ok(match format {
        Format::Json => to_json(&json!({
            "case": f.case().tag(),
            "alpha": f.alpha().to_string(),
            "beta": f.beta().to_string(),
            "sigma": f.case().sigma_formula(),
            "tau": f.tau().to_string(),
            "rho": f.weight().formula(),
            "interval": f.interval().to_string(),
            "x_domain": coordinate_map(f.case()).domain_string(),
            "Lambda": f.cutoff().to_string(),
            "L": l_max,
            "k": k,
        })),
        Format::Text => {
            let mut s = f.describe();
            if let Some(l) = l_max {
                s.push_str(&format!(", L = {l}"));
            }
            if let Some(k) = k {
                s.push_str(&format!(", k = {k}"));
            }
            s
        }
    })
}

fn poly(args: &FamilyArgs, l: usize, m: Option<usize>) -> CliResult {
    let f = args.family()?;
    f.check_index(l)?;
    Ok(match m {
        None => to_json(&json!({ "l": l, "coeffs": generate_phi(&f, l)?.coeff_strings() })),
        Some(m) => to_json(&json!({ "l": l, "m": m, "coeffs": associated(&f, l, m)?.p.coeff_strings() })),
    })
}

fn potential(args: &FamilyArgs, m: usize, gamma: &Option<String>, n: usize, at: &[f64]) -> CliResult {
    let f = args.family()?;
    f.check_index(m)?;
    let tf = tilde_of(&f, gamma)?;
    let xs = match (at.is_empty(), &tf) {
        (false, _) => at.to_vec(),
        (true, None) => eigen_grid(&f, m, m, n)?,
        (true, Some(t)) => tilde_grid(t, m, m, n)?,
    };
    let mut out = String::new();
    match &tf {
        None => {
            out.push_str("x,V,W\n");
            for x in xs {
                let p = sample_potential(&f, m, x)?;
                out.push_str(&format!("{},{},{}\n", fmt_f64(x), fmt_f64(p.v), fmt_f64(p.w)));
            }
        }
        Some(t) => {
            out.push_str("x,V,W,lambda_tilde\n");
            let lt = fmt_f64(t.lambda(m)?);
            for x in xs {
                let v = tilde_potential(t, m, x)?;
                let w = tilde_superpotential(t, m, x)?;
                out.push_str(&format!("{},{},{},{lt}\n", fmt_f64(x), fmt_f64(v), fmt_f64(w)));
            }
        }
    }
    out.pop();
    Ok(out)
}

fn spectrum(args: &FamilyArgs, lmax: usize, gamma: &Option<String>) -> CliResult {
    let f = args.family()?;
    let tf = tilde_of(&f, gamma)?;
    let top = f.degree_budget().cap(lmax);
    let mut exact = Vec::new();
    for l in 0..=top {
        exact.push(match &tf {
            None => f.eigenvalue(l),
            Some(t) => t.lambda_exact(l)?,
        });
    }
    let values: Vec<f64> = exact.iter().map(rational_to_f64).collect();
    Ok(to_json(&json!({
        "tilde": tf.is_some(),
        "lambda": values,
        "exact": exact.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "truncated": top < lmax,
    })))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: &str,
    case: Option<SigmaCase>,
    alpha: &Option<String>,
    beta: &Option<String>,
    gamma: &Option<String>,
    lmax: Option<usize>,
    quick: bool,
) -> CliResult {
    let suite: Suite = suite.parse().map_err(|e: Error| Failure(2, e.to_string()))?;
    let family = match (case, alpha) {
        (Some(c), Some(a)) => Some(build_family(c, a, beta.as_deref().unwrap_or("0"))?),
        (None, None) if beta.is_none() => None,
        _ => return Err(Failure(2, "--case and --alpha go together".into())),
    };
    let gamma = gamma.as_deref().map(|g| parse_rational("gamma", g)).transpose()?;
    let cfg = VerifyConfig {
        family,
        gamma,
        lmax,
        quick,
    };
    let checks = run(suite, &cfg)?;
    let pass = checks.iter().all(|c| c.pass);
    let report = to_json(&json!({
        "suite": suite.name(),
        "quick": quick,
        "pass": pass,
        "failed": checks.iter().filter(|c| !c.pass).count(),
        "checks": checks,
    }));
    if pass {
        Ok(report)
    } else {
        // the report still goes to stdout
        Err(Failure(1, report))
    }
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Family {
            action: FamilyAction::Show { family, format },
        } => family_show(family, *format),
        Command::Poly { family, l, m } => poly(family, *l, *m),
        Command::Potential {
            family,
            m,
            gamma,
            grid,
            at,
        } => potential(family, *m, gamma, *grid, at),
        Command::Spectrum { family, lmax, gamma } => spectrum(family, *lmax, gamma),
        Command::Verify {
            suite,
            case,
            alpha,
            beta,
            gamma,
            lmax,
            quick,
        } => verify(suite, *case, alpha, beta, gamma, *lmax, *quick),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verifying = matches!(cli.command, Command::Verify { .. });
    match dispatch(&cli) {
        Ok(out) => {
            let _ = writeln!(io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(1, report)) if verifying => {
            let _ = writeln!(io::stdout(), "{report}");
            ExitCode::from(1)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
