//! The `scw` command line: argument parsing, job execution and reports.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use scw_core::bundle::{clutch_bundle, horn_fill_bundle, restrict_to_horn, winding_oracle, BundleData};
use scw_core::chern_weil::class_report;
use scw_core::connection::{construct_connection, Connection};
use scw_core::invariant::{self, reznikov_quadratic_constant, InvariantPolynomial};
use scw_core::lie::LieAlgebra;
use scw_core::random::{random_connection, random_group_element, random_lie_element, random_u1_horn_bundle, rng};
use scw_core::simplicial::{
    boundary_sphere, horn, standard_simplex, two_disk_fundamental_cycle, two_disk_sphere, HornPresentation,
    SimplicialSet,
};
use scw_core::Scalar;

use crate::format::{
    parse_bundle, parse_connection, parse_simplicial_set, write_bundle, write_connection, ParseError,
};
use crate::verify::run_suite;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Parser)]
#[command(name = "scw", version, about = "Simplicial Chern-Weil computations and checks")]
pub struct Cli {
    /// Arithmetic: exact rationals or floating point. Defaults to exact, or
    /// float for `reznikov`.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for float-mode checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Clutch,
    Trivial,
    HornDemo,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers over ℚ.
    Betti {
        /// `boundary-sphere:<n>`, `standard-simplex:<n>`, `two-disk-sphere`,
        /// `horn:<n>:<k>` or a simplicial-set file.
        #[arg(long)]
        space: String,
    },
    /// Chern-Weil cochain of a connection and its pairings with cycles.
    Chern {
        /// `clutch<n>`, `trivial` or a bundle file.
        #[arg(long)]
        bundle: String,
        /// Base for `--bundle trivial`.
        #[arg(long, default_value = "boundary-sphere:2")]
        space: String,
        /// Group for `--bundle trivial`.
        #[arg(long, default_value = "su2")]
        algebra: String,
        /// Connection file; the canonical connection is built otherwise.
        #[arg(long)]
        connection: Option<PathBuf>,
        #[arg(long, default_value = "chern:1")]
        poly: String,
    },
    /// Runs an invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Builds clutch(n) and checks its first Chern number against the winding.
    Clutch {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Fills a horn bundle and checks the filler restricts to the input.
    HornFill {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Input bundle over the horn; random U(1) data otherwise.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Checks the quadrature polynomials on su2.
    Reznikov {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Writes input files for the other commands.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "boundary-sphere:2")]
        space: String,
        #[arg(long, default_value = "su2")]
        algebra: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Math(#[from] scw_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

/// Check lines under a fixed header.
#[derive(Debug)]
pub struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn new(command: &str, seed: u64, mode: Mode) -> Self {
        let mode = match mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        };
        Report {
            lines: vec![
                String::from("scw-report v1"),
                format!("command: {command}"),
                format!("seed: {seed}"),
                format!("mode: {mode}"),
            ],
            failed: false,
        }
    }

    fn info(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl std::fmt::Display) {
        self.failed |= !pass;
        self.lines.push(format!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }));
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        writeln!(s, "\nresult: {}", if self.failed { "FAIL" } else { "PASS" }).unwrap();
        s
    }
}

/// A scalar as `3`, `-1/6` or `2+1i` where possible, otherwise its raw form.
pub fn pretty(s: &Scalar) -> String {
    if let Some(x) = s.as_q() {
        return x.to_string();
    }
    if !s.is_exact() {
        let c = s.to_c64();
        return if c.im == 0.0 { format!("{}", c.re) } else { format!("{}{:+}i", c.re, c.im) };
    }
    s.to_string()
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn parse_number<T: std::str::FromStr>(desc: &str, s: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| usage(format!("bad number in `{desc}`")))
}

fn horn_of(n: usize, k: usize) -> Result<HornPresentation, CliError> {
    horn(n, k).map_err(|e| usage(e.to_string()))
}

/// Resolves a named space or reads a simplicial-set file.
pub fn load_space(desc: &str) -> Result<SimplicialSet, CliError> {
    let parts: Vec<&str> = desc.split(':').collect();
    match parts.as_slice() {
        ["two-disk-sphere"] => Ok(two_disk_sphere()),
        ["boundary-sphere", n] => {
            let n: usize = parse_number(desc, n)?;
            if n == 0 {
                return Err(usage("boundary-sphere needs n ≥ 1"));
            }
            Ok(boundary_sphere(n))
        }
        ["standard-simplex", n] => Ok(standard_simplex(parse_number(desc, n)?)),
        ["horn", n, k] => Ok(horn_of(parse_number(desc, n)?, parse_number(desc, k)?)?.set().clone()),
        _ => {
            let path = Path::new(desc);
            if !path.exists() {
                return Err(usage(format!("unknown space `{desc}`")));
            }
            parsed(path, parse_simplicial_set(&read(path)?))
        }
    }
}

fn load_algebra(name: &str) -> Result<LieAlgebra, CliError> {
    LieAlgebra::by_name(name).map_err(|e| usage(e.to_string()))
}

fn load_bundle(desc: &str, space: &str, algebra: &str) -> Result<(BundleData, String), CliError> {
    if let Some(n) = desc.strip_prefix("clutch") {
        let n: i64 = parse_number(desc, n)?;
        return Ok((clutch_bundle(n), desc.to_string()));
    }
    if desc == "trivial" {
        let x = load_space(space)?;
        return Ok((BundleData::trivial(&x, &load_algebra(algebra)?), format!("trivial({space},{algebra})")));
    }
    let path = Path::new(desc);
    if !path.exists() {
        return Err(usage(format!("unknown bundle `{desc}`")));
    }
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((parsed(path, parse_bundle(&read(path)?))?, name))
}

/// Parses arguments and runs the job. Returns the report text (or an error
/// message) and the exit status.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = report.text();
            if let Some(out) = &cli.out {
                if let Err(e) = write(out, &text) {
                    return (format!("error: {e}\n"), 2);
                }
            }
            (text, if report.passed() { 0 } else { 1 })
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

fn command_echo(c: &Command) -> String {
    match c {
        Command::Betti { space } => format!("betti --space {space}"),
        Command::Chern {
            bundle,
            space,
            algebra,
            connection,
            poly,
        } => {
            let mut s = format!("chern --bundle {bundle} --poly {poly}");
            if bundle == "trivial" {
                write!(s, " --space {space} --algebra {algebra}").unwrap();
            }
            if let Some(c) = connection {
                write!(s, " --connection {}", c.display()).unwrap();
            }
            s
        }
        Command::Verify { suite } => format!("verify --suite {suite}"),
        Command::Clutch { n } => format!("clutch --n {n}"),
        Command::HornFill { n, k, bundle } => {
            let mut s = format!("horn-fill --n {n} --k {k}");
            if let Some(b) = bundle {
                write!(s, " --bundle {}", b.display()).unwrap();
            }
            s
        }
        Command::Reznikov { k, order } => format!("reznikov --k {k} --order {order}"),
        Command::Generate {
            kind,
            n,
            k,
            space,
            algebra,
            dir,
        } => {
            let args = match kind {
                GenerateKind::Clutch => format!("clutch --n {n}"),
                GenerateKind::Trivial => format!("trivial --space {space} --algebra {algebra}"),
                GenerateKind::HornDemo => format!("horn-demo --n {n} --k {k}"),
            };
            format!("generate {args} --dir {}", dir.display())
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let is_reznikov = matches!(cli.command, Command::Reznikov { .. });
    if is_reznikov && cli.mode == Some(Mode::Exact) {
        return Err(usage("reznikov is computed by quadrature and needs --mode float"));
    }
    let mode = cli.mode.unwrap_or(if is_reznikov { Mode::Float } else { Mode::Exact });
    let mut report = Report::new(&command_echo(&cli.command), cli.seed, mode);
    let tol = match mode {
        Mode::Exact => 0.0,
        Mode::Float => cli.tol,
    };
    match &cli.command {
        Command::Betti { space } => {
            let x = load_space(space)?;
            let b = x.betti_numbers(x.dim());
            let b: Vec<String> = b.iter().map(usize::to_string).collect();
            report.info(format!("betti ({})", b.join(",")));
            report.info(format!("euler {}", x.euler_characteristic()));
        }
        Command::Chern {
            bundle,
            space,
            algebra,
            connection,
            poly,
        } => {
            let (p, name) = load_bundle(bundle, space, algebra)?;
            chern(&mut report, &p, &name, connection.as_deref(), poly, mode, tol)?;
        }
        Command::Verify { suite } => {
            let checks = run_suite(suite, cli.seed).ok_or_else(|| usage(format!("unknown suite `{suite}`")))?;
            for c in checks {
                report.check(&c.name, c.pass, c.detail);
            }
        }
        Command::Clutch { n } => {
            let p = clutch_bundle(*n);
            report.check("cocycle", p.validate(0.0).is_ok(), "exact");
            let w = winding_oracle(&p);
            report.info(format!("winding {}", pretty(&w)));
            let a = construct_connection(&p)?;
            let a = if mode == Mode::Float { a.to_float() } else { a };
            let rho = InvariantPolynomial::chern(p.algebra(), 1)?;
            let rep = class_report(&rho, &a, &format!("clutch{n}"), Some(vec![two_disk_fundamental_cycle()]), tol)?;
            let c = &rep.pairings[0];
            report.info(format!("pairing {}", pretty(c)));
            report.check("pairing equals winding", c.approx_eq(&w, tol), format!("{} vs {}", pretty(c), pretty(&w)));
        }
        Command::HornFill { n, k, bundle } => {
            let h = horn_of(*n, *k)?;
            let input = match bundle {
                Some(path) => {
                    let p = parsed(path, parse_bundle(&read(path)?))?;
                    if p.base() != h.set() {
                        return Err(usage(format!("{}: base is not the horn ({n},{k})", path.display())));
                    }
                    p
                }
                None => random_u1_horn_bundle(&mut rng(cli.seed), &h, 2),
            };
            horn_fill(&mut report, &h, &input, tol)?;
        }
        Command::Reznikov { k, order } => reznikov(&mut report, *k, *order, cli.seed, cli.tol)?,
        Command::Generate {
            kind,
            n,
            k,
            space,
            algebra,
            dir,
        } => generate(&mut report, *kind, *n, *k, space, algebra, dir, cli.seed, tol)?,
    }
    Ok(report)
}

fn chern(
    report: &mut Report,
    p: &BundleData,
    name: &str,
    connection: Option<&Path>,
    poly: &str,
    mode: Mode,
    tol: f64,
) -> Result<(), CliError> {
    let rho = invariant::by_name(p.algebra(), poly).map_err(|e| usage(e.to_string()))?;
    if mode == Mode::Exact && !rho.is_exact() {
        return Err(usage(format!("`{poly}` has float coefficients; use --mode float")));
    }
    if let Err(v) = p.validate(tol) {
        report.check("bundle cocycle", false, v);
        return Ok(());
    }
    report.check("bundle cocycle", true, if tol == 0.0 { "exact" } else { "within tolerance" });
    let a = match connection {
        Some(path) => parsed(path, parse_connection(&read(path)?, p.base()))?,
        None => construct_connection(p)?,
    };
    let a = if mode == Mode::Float { a.to_float() } else { a };
    if let Err(v) = a.check_gauge(p, tol) {
        report.check("connection gauge", false, format!("simplex {} face {}: defect {:.3e}", v.simplex, v.face, v.defect));
        return Ok(());
    }
    report.check("connection gauge", true, "compatible");
    let cycles = (p.base() == &two_disk_sphere()).then(|| vec![two_disk_fundamental_cycle()]);
    let clutch = (p.base() == &two_disk_sphere() && p.algebra().is_abelian()).then(|| winding_oracle(p));
    let rep = class_report(&rho, &a, name, cycles, tol)?;
    report.check("closed", rep.closed, if rep.closed { "δα = 0" } else { "δα ≠ 0" });
    let pairings: Vec<String> = rep.pairings.iter().map(pretty).collect();
    report.info(format!("pairings [{}]", pairings.join(",")));
    if let Some(z) = rep.pairings.first() {
        report.info(format!("pairing {}", pretty(z)));
    }
    report.info(format!("witness {}", if rep.witness.is_some() { "present" } else { "absent" }));
    if let (Some(w), Some(z), "chern:1") = (clutch, rep.pairings.first(), poly) {
        report.check("winding oracle", z.approx_eq(&w, tol), format!("{} vs {}", pretty(z), pretty(&w)));
    }
    Ok(())
}

fn horn_fill(report: &mut Report, h: &HornPresentation, input: &BundleData, tol: f64) -> Result<BundleData, CliError> {
    report.check("input cocycle", input.validate(tol).is_ok(), format!("horn ({},{})", h.n, h.k));
    let filled = horn_fill_bundle(h, input)?;
    report.check("filler cocycle", filled.validate(tol).is_ok(), format!("over Δ^{}", h.n));
    let restricted = restrict_to_horn(h, &filled)?;
    report.check("restriction", &restricted == input, "filler restricts to the input");
    Ok(filled)
}

fn reznikov(report: &mut Report, k: usize, order: usize, seed: u64, tol: f64) -> Result<(), CliError> {
    let rho = InvariantPolynomial::reznikov(k, order).map_err(|e| usage(e.to_string()))?;
    let su2 = LieAlgebra::su2();
    let mut r = rng(seed);
    let probes = 100;
    let mut worst_ad: f64 = 0.0;
    for _ in 0..probes {
        let g = random_group_element(&mut r, &su2);
        let args: Vec<Vec<f64>> = (0..k).map(|_| random_lie_element(&mut r, &su2, 1.0)).collect();
        worst_ad = worst_ad.max(rho.ad_defect(&g, &args));
    }
    report.check("ad invariance", worst_ad <= tol, format!("max defect {worst_ad:.3e} over {probes} probes"));
    match k {
        1 => {
            let worst = (0..probes)
                .map(|_| rho.eval_f64(&[random_lie_element(&mut r, &su2, 1.0)]).norm())
                .fold(0.0, f64::max);
            report.check("vanishes", worst < 1e-10, format!("max |value| {worst:.3e}"));
        }
        2 => {
            let ratios: Vec<f64> = (0..probes)
                .map(|_| {
                    let x = random_lie_element(&mut r, &su2, 1.0);
                    let norm2: f64 = x.iter().map(|c| c * c).sum();
                    rho.eval_f64(&[x.clone(), x]).re / norm2
                })
                .collect();
            let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let spread = (hi - lo) / hi.abs();
            report.info(format!("lambda {hi:.15e}"));
            report.check("proportional to the trace form", spread < 1e-6, format!("relative spread {spread:.3e}"));
            let expected = reznikov_quadratic_constant();
            report.check(
                "lambda matches closed form",
                ((hi - expected) / expected).abs() < 1e-9,
                format!("expected {expected:.15e}"),
            );
        }
        _ => {}
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    report: &mut Report,
    kind: GenerateKind,
    n: i64,
    k: usize,
    space: &str,
    algebra: &str,
    dir: &Path,
    seed: u64,
    tol: f64,
) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut r = rng(seed);
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    match kind {
        GenerateKind::Clutch => {
            let p = clutch_bundle(n);
            let a = construct_connection(&p)?;
            report.check("cocycle", p.validate(0.0).is_ok(), format!("clutch({n})"));
            round_trip(report, &p, &a)?;
            files.push((dir.join(format!("clutch{n}.bundle")), write_bundle(&p)));
            files.push((dir.join(format!("clutch{n}.connection")), write_connection(&a)));
        }
        GenerateKind::Trivial => {
            let x = load_space(space)?;
            let p = BundleData::trivial(&x, &load_algebra(algebra)?);
            let a = random_connection(&mut r, &p)?;
            report.check("cocycle", p.validate(0.0).is_ok(), format!("trivial {algebra}"));
            report.check("connection gauge", a.check_gauge(&p, 0.0).is_ok(), "random connection");
            round_trip(report, &p, &a)?;
            files.push((dir.join("trivial.bundle"), write_bundle(&p)));
            files.push((dir.join("trivial.connection"), write_connection(&a)));
        }
        GenerateKind::HornDemo => {
            let n = usize::try_from(n).map_err(|_| usage("horn-demo needs n ≥ 1"))?;
            let h = horn_of(n, k)?;
            let input = random_u1_horn_bundle(&mut r, &h, 2);
            let filled = horn_fill(report, &h, &input, tol)?;
            let text = write_bundle(&input);
            report.check("round trip", parse_bundle(&text).as_ref() == Ok(&input), "horn bundle");
            files.push((dir.join(format!("horn{n}{k}.bundle")), text));
            files.push((dir.join(format!("horn{n}{k}-filler.bundle")), write_bundle(&filled)));
        }
    }
    for (path, text) in files {
        write(&path, &text)?;
        report.info(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn round_trip(report: &mut Report, p: &BundleData, a: &Connection) -> Result<(), CliError> {
    let bt = write_bundle(p);
    let ok_b = parse_bundle(&bt).is_ok_and(|q| &q == p && write_bundle(&q) == bt);
    let ct = write_connection(a);
    let ok_c = parse_connection(&ct, p.base()).is_ok_and(|b| &b == a && write_connection(&b) == ct);
    report.check("round trip", ok_b && ok_c, "bundle and connection text");
    Ok(())
}
