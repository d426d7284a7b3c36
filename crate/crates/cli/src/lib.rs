//! The `rigidity` command line: argument parsing, dispatch and the exit-code
//! contract (0 success or true, 1 decider false, 2 usage, 3 inconsistency).

use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rigidity::circuits::{dft_circuit, factor_circuit, naive_circuit, LinearCircuit};
use rigidity::degrees::degree_rows;
use rigidity::exact::json::{matrix_from_json, matrix_to_json, scalar_to_json};
use rigidity::exact::scalar::parse_rational;
use rigidity::families::{
    butterfly_sample, cauchy, dft, dft_curve, dft_normalized, sylvester, vandermonde, CauchyParams,
    VandermondeParams,
};
use rigidity::ideals::generators::{
    avoiding_minor_polys, ee_equation, ee_variant, n5r2_quintic, n5r2_sextic, s5_equation, s5_support,
};
use rigidity::ideals::sampling::sample_join_point;
use rigidity::ideals::{classify_r1_component, join_dimension, nm2_equations, MinorPolynomial, R1Component, Support};
use rigidity::rigidity::{max_border_rigid_nm2, max_border_rigid_r1, rigidity_interval, Decision};
use rigidity::selftest::{run_all, run_criterion};
use rigidity::{Error, ExactMatrix, ExactScalar, IndexSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rigidity", version, about = "Exact computations for matrix rigidity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a structured matrix as JSON.
    Gen(GenArgs),
    /// Rank of a matrix.
    Rank {
        /// Matrix JSON file, or `-` for stdin.
        matrix: String,
    },
    /// List the `r × r` minors, or check that none vanishes.
    Minors {
        matrix: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        nonzero_check: bool,
    },
    /// Build, evaluate or inspect linear circuits.
    #[command(subcommand)]
    Circuit(CircuitCommand),
    /// Rigidity deciders and bounds.
    Rigidity(RigidityArgs),
    /// Emit or evaluate certificate equations.
    Equations(EquationArgs),
    /// Dimension of the join at a seeded point against the expected value.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Positions as `i,j;i,j;...`, 1-based.
        #[arg(long, default_value = "")]
        support: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CSV table of join degrees computed by two routes.
    Degrees {
        #[arg(long)]
        max_n: usize,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Comma-separated criterion ids; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Dft,
    Cauchy,
    Vandermonde,
    Sylvester,
    Dftcurve,
    Butterfly,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Exponent for `sylvester` and `butterfly` (`n = 2^k`).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scale `dft` to be unitary.
    #[arg(long)]
    normalized: bool,
    /// `x` for `dftcurve`: `p/q` or `z<m>[^e]` for a root of unity.
    #[arg(long, default_value = "1")]
    x: String,
    /// `w` for `dftcurve`; defaults to `z<n>`.
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CircuitCommand {
    /// Build a circuit.
    Build {
        #[arg(long, value_enum)]
        kind: CircuitKind,
        /// `n = 2^k` for the FFT circuit.
        #[arg(long)]
        k: Option<u32>,
        /// Matrix JSON for `naive` and `factor`.
        #[arg(long)]
        matrix: Option<String>,
        /// Middle width for `factor`; the rank when omitted.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// The matrix a circuit computes.
    Eval { circuit: String },
    /// Size and depth.
    Size { circuit: String },
    /// Graphviz rendering.
    Dot { circuit: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CircuitKind {
    Dft,
    Naive,
    Factor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Decider {
    R1,
    Nm2,
    Interval,
}

#[derive(Args, Debug)]
struct RigidityArgs {
    matrix: String,
    /// Target rank; implied by the `r1` and `nm2` deciders.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "interval")]
    decider: Decider,
    /// Change budget for the hitting-set cap and the border search.
    #[arg(long, default_value_t = 4)]
    smax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EquationFamily {
    /// Minors of size `r + 1` avoiding the support.
    Avoiding,
    /// The hypersurface equation for `r = n - 2`, `|S| = 3`.
    Nm2,
    /// The cycle binomial of an `r = 1` component, `|S| = n² - 2n`.
    Cycle,
    Ee,
    EeVariant,
    S5,
    Quintic,
    Sextic,
}

#[derive(Args, Debug)]
struct EquationArgs {
    family: EquationFamily,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    support: Option<String>,
    /// Propagate the `ee` equations to `Mat_{3+q}`.
    #[arg(long)]
    propagate: Option<usize>,
    /// Evaluate the equations at this matrix.
    #[arg(long)]
    eval: Option<String>,
    /// Check vanishing on this many seeded points of the join.
    #[arg(long)]
    check: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure { code: EXIT_OK, message: String::new() };
        }
        usage(e.to_string())
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `argv` (program name first), runs the command and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Rank { matrix } => {
            let m = load_matrix(&matrix)?;
            emit_json(out, &json!({"rows": m.nrows(), "cols": m.ncols(), "rank": m.rank()}))
        }
        Command::Minors { matrix, size, nonzero_check } => minors(&load_matrix(&matrix)?, size, nonzero_check, out),
        Command::Circuit(c) => circuit(c, out),
        Command::Rigidity(a) => rigidity_cmd(a, out),
        Command::Equations(a) => equations(a, out),
        Command::Dim { n, r, support, seed } => {
            let s = Support::parse(n, &support)?;
            if r > n {
                return Err(usage(format!("r = {r} exceeds n = {n}")));
            }
            let d = join_dimension(n, r, &s, seed);
            emit_json(
                out,
                &json!({
                    "n": n, "r": r, "s": s.len(), "support": s.to_string(),
                    "dimension": d.value, "expected": d.expected, "agree": d.value == d.expected,
                }),
            )
        }
        Command::Degrees { max_n } => {
            if max_n < 2 {
                return Err(usage("--max-n must be at least 2"));
            }
            writeln!(out, "n,r,s,degree,agree")?;
            let mut all_agree = true;
            for row in degree_rows(max_n) {
                all_agree &= row.agree;
                let flag = if row.agree { "agree" } else { "disagree" };
                writeln!(out, "{},{},{},{},{}", row.n, row.r, row.s, row.degree, flag)?;
            }
            Ok(if all_agree { EXIT_OK } else { EXIT_INCONSISTENT })
        }
        Command::Selftest { only } => {
            let reports = if only.is_empty() {
                run_all()?
            } else {
                only.iter().map(|&id| run_criterion(id)).collect::<rigidity::Result<Vec<_>>>()?
            };
            let mut ok = true;
            for r in &reports {
                ok &= r.passed();
                writeln!(out, "{r}")?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn read_json(path: &str) -> std::result::Result<Value, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| usage(format!("{path}: malformed JSON: {e}")))
}

fn load_matrix(path: &str) -> std::result::Result<ExactMatrix, Failure> {
    Ok(matrix_from_json(&read_json(path)?)?)
}

fn load_circuit(path: &str) -> std::result::Result<LinearCircuit, Failure> {
    Ok(LinearCircuit::from_json(&read_json(path)?)?)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))?;
    Ok(EXIT_OK)
}

fn emit_to(out: &mut dyn Write, dest: Option<&str>, v: &Value) -> Outcome {
    match dest {
        None => emit_json(out, v),
        Some(path) => {
            fs::write(path, serde_json::to_string_pretty(v).expect("serializable") + "\n")
                .map_err(|e| usage(format!("{path}: {e}")))?;
            Ok(EXIT_OK)
        }
    }
}

/// `p/q`, or `z<m>` / `z<m>^<e>` for a power of the primitive root of unity.
fn parse_scalar(s: &str) -> std::result::Result<ExactScalar, Failure> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('z') {
        let (m, e) = rest.split_once('^').unwrap_or((rest, "1"));
        let m: u32 = m.parse().map_err(|_| usage(format!("bad root of unity {s:?}")))?;
        let e: i64 = e.parse().map_err(|_| usage(format!("bad exponent in {s:?}")))?;
        if m == 0 {
            return Err(usage("root of unity of order 0"));
        }
        return Ok(ExactScalar::root_power(m, e));
    }
    Ok(ExactScalar::rational(parse_rational(s)?))
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| usage(format!("{what} needs {flag}")))
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Outcome {
    let m = match a.family {
        Family::Dft => {
            let n = need(a.n, "--n", "dft")?;
            if a.normalized {
                dft_normalized(n)?
            } else {
                dft(n)
            }
        }
        Family::Cauchy => cauchy(&CauchyParams::seeded(need(a.n, "--n", "cauchy")?, a.seed))?,
        Family::Vandermonde => vandermonde(&VandermondeParams::seeded(need(a.n, "--n", "vandermonde")?, a.seed))?,
        Family::Sylvester => {
            let k = need(a.k, "--k", "sylvester")?;
            if k > 10 {
                return Err(usage("sylvester is limited to k ≤ 10"));
            }
            sylvester(k)
        }
        Family::Dftcurve => {
            let n = need(a.n, "--n", "dftcurve")?;
            let w = match &a.w {
                Some(w) => parse_scalar(w)?,
                None => ExactScalar::root_of_unity(n as u32),
            };
            dft_curve(&parse_scalar(&a.x)?, &w, n)?
        }
        Family::Butterfly => {
            let k = need(a.k, "--k", "butterfly")?;
            if k > 6 {
                return Err(usage("butterfly is limited to k ≤ 6"));
            }
            butterfly_sample(k, a.seed).1
        }
    };
    emit_to(out, a.out.as_deref(), &matrix_to_json(&m))
}

fn set_json(s: &IndexSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn minors(m: &ExactMatrix, size: usize, nonzero_check: bool, out: &mut dyn Write) -> Outcome {
    if size == 0 || size > m.nrows().min(m.ncols()) {
        return Err(usage(format!("minor size {size} for a {}x{} matrix", m.nrows(), m.ncols())));
    }
    if nonzero_check {
        let first = m.first_zero_minor(size)?;
        let report = json!({
            "size": size,
            "all_nonzero": first.is_none(),
            "first_zero": first.as_ref().map(|(i, j)| json!({"rows": set_json(i), "cols": set_json(j)})),
        });
        emit_json(out, &report)?;
        return Ok(if first.is_none() { EXIT_OK } else { EXIT_FALSE });
    }
    let mut list = Vec::new();
    for i in IndexSet::subsets(m.nrows(), size) {
        for j in IndexSet::subsets(m.ncols(), size) {
            let v = m.minor(&i, &j)?;
            list.push(json!({"rows": set_json(&i), "cols": set_json(&j), "value": scalar_to_json(&v)}));
        }
    }
    emit_json(out, &json!({"size": size, "minors": list}))
}

fn circuit(c: CircuitCommand, out: &mut dyn Write) -> Outcome {
    match c {
        CircuitCommand::Build { kind, k, matrix, r, out: dest } => {
            let circ = match kind {
                CircuitKind::Dft => {
                    let k = need(k, "--k", "the FFT circuit")?;
                    if k > 8 {
                        return Err(usage("the FFT circuit is limited to k ≤ 8"));
                    }
                    dft_circuit(k)
                }
                CircuitKind::Naive => naive_circuit(&load_matrix(&need(matrix, "--matrix", "naive")?)?),
                CircuitKind::Factor => {
                    let a = load_matrix(&need(matrix, "--matrix", "factor")?)?;
                    let r = r.unwrap_or_else(|| a.rank());
                    factor_circuit(&a, r)?
                }
            };
            emit_to(out, dest.as_deref(), &circ.to_json())
        }
        CircuitCommand::Eval { circuit } => emit_json(out, &matrix_to_json(&load_circuit(&circuit)?.evaluate())),
        CircuitCommand::Size { circuit } => {
            let c = load_circuit(&circuit)?;
            emit_json(
                out,
                &json!({
                    "nodes": c.num_nodes(), "inputs": c.inputs().len(), "outputs": c.outputs().len(),
                    "size": c.size(), "depth": c.depth(),
                }),
            )
        }
        CircuitCommand::Dot { circuit } => {
            write!(out, "{}", load_circuit(&circuit)?.to_dot())?;
            Ok(EXIT_OK)
        }
    }
}

fn decision_json(name: &str, r: usize, d: &Decision) -> Value {
    json!({
        "decider": name,
        "r": r,
        "result": d.result,
        "checked": d.checked,
        "witness": d.witness.as_ref().map(|w| w.to_json()),
    })
}

fn rigidity_cmd(a: RigidityArgs, out: &mut dyn Write) -> Outcome {
    let m = load_matrix(&a.matrix)?;
    if !m.is_square() {
        return Err(usage(format!("expected a square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    let implied = match a.decider {
        Decider::R1 => Some(1),
        Decider::Nm2 => Some(n.saturating_sub(2)),
        Decider::Interval => None,
    };
    let r = match (a.r, implied) {
        (Some(r), Some(i)) if r != i => {
            return Err(usage(format!("the {:?} decider works at r = {i}, not {r}", a.decider)));
        }
        (_, Some(i)) => i,
        (Some(r), None) => r,
        (None, None) => return Err(usage("the interval report needs --r")),
    };
    match a.decider {
        Decider::R1 | Decider::Nm2 => {
            let (name, d) = if a.decider == Decider::R1 {
                ("r1", max_border_rigid_r1(&m)?)
            } else {
                ("nm2", max_border_rigid_nm2(&m)?)
            };
            emit_json(out, &decision_json(name, r, &d))?;
            Ok(if d.result { EXIT_OK } else { EXIT_FALSE })
        }
        Decider::Interval => {
            if n > 8 {
                return Err(usage(format!("interval report limited to n ≤ 8, got {n}")));
            }
            let b = rigidity_interval(&m, r, a.smax)?;
            let mut v = b.to_json();
            v["decider"] = json!("interval");
            if !b.is_consistent() || !b.verify_upper(&m)? {
                emit_json(out, &v)?;
                return Err(Error::Inconsistent(format!("lower {} against upper {}", b.lower, b.upper)).into());
            }
            emit_json(out, &v)
        }
    }
}

/// Fixed equations with their `(n, r, S)`.
fn fixed_equation(f: EquationFamily) -> Option<(MinorPolynomial, usize, Support)> {
    let diag = |n| Support::diagonal(n, n);
    match f {
        EquationFamily::Ee => Some((ee_equation(), 1, diag(3))),
        EquationFamily::EeVariant => Some((ee_variant(), 1, diag(3))),
        EquationFamily::S5 => Some((s5_equation(), 2, s5_support())),
        EquationFamily::Quintic => Some((n5r2_quintic(), 2, diag(5))),
        EquationFamily::Sextic => Some((n5r2_sextic(), 2, diag(5))),
        _ => None,
    }
}

fn equations(a: EquationArgs, out: &mut dyn Write) -> Outcome {
    let mut extra = serde_json::Map::new();
    let (polys, r, s) = if let Some((p, r0, s0)) = fixed_equation(a.family) {
        if a.support.is_some() {
            return Err(usage("this equation has a fixed support"));
        }
        let (p, r, s) = match a.propagate {
            None => (p, r0, s0),
            Some(q) if matches!(a.family, EquationFamily::Ee | EquationFamily::EeVariant) => {
                let n = 3 + q;
                (p.propagate(q)?, r0 + q, Support::diagonal(n, 3))
            }
            Some(_) => return Err(usage("--propagate applies to the ee equations only")),
        };
        if a.n.is_some_and(|n| n != s.n()) || a.r.is_some_and(|x| x != r) {
            return Err(usage(format!("this equation lives at n = {}, r = {r}", s.n())));
        }
        (vec![p], r, s)
    } else {
        if a.propagate.is_some() {
            return Err(usage("--propagate applies to the ee equations only"));
        }
        let n = need(a.n, "--n", "support-driven equations")?;
        if n > 8 {
            return Err(usage(format!("equations limited to n ≤ 8, got {n}")));
        }
        let s = Support::parse(n, a.support.as_deref().unwrap_or(""))?;
        match a.family {
            EquationFamily::Avoiding => {
                let r = need(a.r, "--r", "avoiding")?;
                (avoiding_minor_polys(&s, r), r, s)
            }
            EquationFamily::Nm2 => {
                let r = n.saturating_sub(2);
                if a.r.is_some_and(|x| x != r) {
                    return Err(usage(format!("nm2 works at r = n - 2 = {r}")));
                }
                let (case, polys) = nm2_equations(&s)?;
                extra.insert("case".into(), json!(format!("{case:?}")));
                (polys, r, s)
            }
            EquationFamily::Cycle => {
                if a.r.is_some_and(|x| x != 1) {
                    return Err(usage("cycle binomials work at r = 1"));
                }
                match classify_r1_component(&s, a.seed)? {
                    R1Component::Cycle { k, rows, cols, binomial } => {
                        extra.insert("component".into(), json!(true));
                        extra.insert("k".into(), json!(k));
                        extra.insert("rows".into(), set_json(&rows));
                        extra.insert("cols".into(), set_json(&cols));
                        (vec![binomial], 1, s)
                    }
                    R1Component::NotAComponent => {
                        extra.insert("component".into(), json!(false));
                        (Vec::new(), 1, s)
                    }
                }
            }
            _ => unreachable!("fixed equations handled above"),
        }
    };
    let mut report = json!({
        "n": s.n(),
        "r": r,
        "support": s.to_string(),
        "equations": polys.iter().map(MinorPolynomial::to_json).collect::<Vec<_>>(),
        "display": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    let obj = report.as_object_mut().expect("object");
    obj.extend(extra);
    let mut code = EXIT_OK;
    if let Some(path) = &a.eval {
        let m = load_matrix(path)?;
        let values = polys.iter().map(|p| p.evaluate(&m)).collect::<rigidity::Result<Vec<_>>>()?;
        let all_zero = values.iter().all(ExactScalar::is_zero);
        obj.insert("values".into(), json!(values.iter().map(scalar_to_json).collect::<Vec<_>>()));
        obj.insert("all_vanish".into(), json!(all_zero));
        if !all_zero {
            code = EXIT_FALSE;
        }
    }
    if let Some(count) = a.check {
        let mut failures = Vec::new();
        for t in 0..count {
            let seed = a.seed.wrapping_add(t);
            let m = sample_join_point(s.n(), r, &s, seed);
            for (idx, p) in polys.iter().enumerate() {
                if !p.evaluate(&m)?.is_zero() {
                    failures.push(json!({"equation": idx, "seed": seed}));
                }
            }
        }
        let ok = failures.is_empty();
        obj.insert("check".into(), json!({"samples": count, "vanishing": ok, "failures": failures}));
        emit_json(out, &report)?;
        if !ok {
            return Err(Error::Inconsistent("an equation does not vanish on the join".into()).into());
        }
        return Ok(code);
    }
    emit_json(out, &report)?;
    Ok(code)
}
