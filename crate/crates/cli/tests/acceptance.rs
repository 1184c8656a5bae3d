//! One line per acceptance criterion. Criteria 1-7 run the full
//! verification suites on the representative families and add a frozen
//! value or two; criterion 8 exercises the binary. Runs without the test
//! harness so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use hypergeo::polycore::generate_phi;
use hypergeo::tilde::make_tilde;
use hypergeo::verify::{run, Check, Suite, VerifyConfig};
use hypergeo::{q, qi, Family, SigmaCase, Validation};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypergeo"))
}

fn suite(s: Suite) -> Vec<Check> {
    run(s, &VerifyConfig::default()).expect("representative configuration")
}

/// Passing checks among those whose name starts with one of `prefixes`,
/// or a description of the first failure.
fn select(checks: &[Check], prefixes: &[&str]) -> Result<usize, String> {
    let picked: Vec<_> = checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.check.starts_with(p)))
        .collect();
    if picked.is_empty() {
        return Err(format!("no checks named {prefixes:?}"));
    }
    match picked.iter().find(|c| !c.pass) {
        Some(c) => Err(format!("{}: {:e} > {:e}", c.check, c.value, c.tolerance)),
        None => Ok(picked.len()),
    }
}

fn frozen(ok: bool, what: &str) -> Result<usize, String> {
    if ok {
        Ok(1)
    } else {
        Err(format!("frozen value mismatch: {what}"))
    }
}

fn all_of(parts: Vec<Result<usize, String>>) -> Result<usize, String> {
    parts.into_iter().sum()
}

fn criterion_1(oracle: &[Check]) -> Result<usize, String> {
    let hermite = Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap();
    let h4 = generate_phi(&hermite, 4).unwrap().coeff_strings();
    all_of(vec![
        select(oracle, &["oracle/ode-residual"]),
        frozen(h4 == ["3/4", "0", "-3", "0", "1"], "monic Hermite l=4"),
    ])
}

fn criterion_2(oracle: &[Check]) -> Result<usize, String> {
    select(oracle, &["oracle/classical", "oracle/gaussian-imaginary-zero"])
}

fn criterion_3() -> Result<usize, String> {
    all_of(vec![
        select(&suite(Suite::Ladder), &["ladder/"]),
        select(&suite(Suite::Factorization), &["factorization/"]),
    ])
}

fn criterion_4(orth: &[Check]) -> Result<usize, String> {
    select(orth, &["orthogonality/gram", "orthogonality/positive-diagonal"])
}

fn criterion_5(orth: &[Check]) -> Result<usize, String> {
    let hermite = Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap();
    // ||Φ_2||² = ∫ (s² - 1/2)² e^{-s²} ds = √π / 2
    let chain = hypergeo::ladder::norm_chain(&hermite, 2, hypergeo::ladder::top_norm(&hermite, 2).unwrap());
    let n20 = *chain.unwrap().last().unwrap();
    let want = (std::f64::consts::PI.sqrt() / 2.0).sqrt();
    all_of(vec![
        select(orth, &["orthogonality/norm-recursion"]),
        frozen((n20 - want).abs() < 1e-10 * want, "||Phi_2,0|| for the Hermite family"),
    ])
}

fn criterion_6() -> Result<usize, String> {
    select(&suite(Suite::Schrodinger), &["schrodinger/"])
}

fn criterion_7() -> Result<usize, String> {
    let coulomb = Family::build(SigmaCase::S, qi(0), qi(1), Validation::PowerWeight).unwrap();
    let tf = make_tilde(&coulomb, qi(2)).unwrap();
    all_of(vec![
        select(&suite(Suite::Tilde), &["tilde/"]),
        frozen(tf.lambda_exact(1).unwrap() == q(-4, 9), "Coulomb lambda~_1 = -4/9"),
    ])
}

fn output(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = bin().args(args).output().expect("binary runs");
    (out.stdout, out.status.code())
}

fn criterion_8() -> Result<usize, String> {
    let commands: [&[&str]; 5] = [
        &["family", "show", "--case", "s2", "--alpha", "-10", "--beta", "1"],
        &["poly", "--case", "s2-plus-1", "--alpha", "-9", "--beta", "1", "--l", "4"],
        &["potential", "--case", "s", "--alpha", "0", "--beta", "1", "--gamma", "2", "--grid", "50"],
        &["spectrum", "--case", "one-minus-s2", "--alpha", "-3", "--beta", "1/2", "--lmax", "6"],
        &["verify", "orthogonality", "--quick"],
    ];
    let mut n = 0;
    for args in commands {
        let (a, code) = output(args);
        let (b, _) = output(args);
        if a != b || a.is_empty() {
            return Err(format!("rerun differs for {args:?}"));
        }
        if code != Some(0) {
            return Err(format!("{args:?} exited with {code:?}"));
        }
        n += 1;
    }
    let start = Instant::now();
    let (_, code) = output(&["verify", "all", "--quick"]);
    let took = start.elapsed();
    if code != Some(0) {
        return Err(format!("verify all --quick exited with {code:?}"));
    }
    if took >= Duration::from_secs(60) {
        return Err(format!("verify all --quick took {took:?}"));
    }
    Ok(n + 1)
}

fn main() {
    let oracle = suite(Suite::Oracle);
    let orth = suite(Suite::Orthogonality);
    let results = [
        ("1 exact ODE residual", criterion_1(&oracle)),
        ("2 oracle equivalence", criterion_2(&oracle)),
        ("3 exact ladder suite", criterion_3()),
        ("4 orthogonality", criterion_4(&orth)),
        ("5 norm recursion", criterion_5(&orth)),
        ("6 Schrodinger residuals", criterion_6()),
        ("7 tilde suite", criterion_7()),
        ("8 CLI contract", criterion_8()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(n) => println!("criterion {name}: PASS ({n} checks)"),
            Err(e) => {
                failed += 1;
                println!("criterion {name}: FAIL ({e})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
