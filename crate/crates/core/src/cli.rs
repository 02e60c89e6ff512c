//! Command-line front end. [`run`] does all the work and returns the
//! rendered output so it can be exercised without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::index::{chi_line, chi_u2, h1_vanishes, serre_dual, ZetaSumResult};
use crate::orbifold::{join, OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;
use crate::report::classification_report;
use crate::seifert::{s1_times_sigma_report, seifert_monopole_report, u2_critical_parameters, SeifertManifold};
use crate::vortex::{enumerate_u2_bundles, IsotropyPair, OrbifoldU2Bundle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "orbivortex", version, about = "Exact SO(3) vortex moduli data over orbifold Riemann surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long, default_value_t = 0)]
    genus: u32,
    /// Comma-separated cone multiplicities, e.g. 2,3,5
    #[arg(long, default_value = "")]
    cone: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler characteristic and canonical class of a surface
    Surface(SurfaceArgs),
    /// Power of the fundamental line bundle
    Picard {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        power: i64,
    },
    /// Riemann-Roch Euler characteristics
    Rr {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Line bundle: L0^k, K^k, or degB,b1,...,bn
        #[arg(long, allow_hyphen_values = true, required_unless_present = "u2")]
        line: Option<String>,
        /// U(2) isotropy pairs, e.g. 0:1,0:1,2:4 or "((0,1),(0,1),(2,4))"
        #[arg(long, requires = "det")]
        u2: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "u2")]
        det: Option<String>,
    },
    /// List U(2) isotropy data for a determinant
    Bundles {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        det: String,
    },
    /// Moduli classification table for a determinant
    Report {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        det: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Subtract the circle quotient from positive dimensions
        #[arg(long)]
        post_quotient: bool,
    },
    /// SO(3) monopole report on a Seifert manifold S(euler)
    Seifert {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        euler: String,
        #[arg(long, allow_hyphen_values = true)]
        det: String,
        #[arg(long, default_value = "1")]
        volume: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        post_quotient: bool,
    },
    /// SO(3) monopole report on S^1 x Sigma_g
    S1sigma {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, allow_hyphen_values = true)]
        deg_e: i64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        post_quotient: bool,
    },
    /// Check the root-of-unity weight sum against its closed form
    VerifyZeta {
        #[arg(long)]
        max_a: i64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Critical values of the U(2) monopole parameter
    CriticalTau {
        #[arg(long)]
        bound: u32,
    },
}

enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

type CmdResult = Result<(String, i32), Failure>;

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutput { code: EXIT_OK, stdout: rendered, stderr: String::new() }
                }
                _ => CliOutput { code: EXIT_INVALID, stdout: String::new(), stderr: error_paragraph(&rendered) },
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, code)) => CliOutput { code, stdout, stderr: String::new() },
        Err(Failure::Invalid(msg)) => {
            CliOutput { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Internal(msg)) => {
            CliOutput { code: EXIT_INTERNAL, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

/// The clap message without its usage and help hints.
fn error_paragraph(s: &str) -> String {
    let mut out = String::new();
    for line in s.lines().take_while(|l| !l.trim().is_empty()) {
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Surface(args) => surface_cmd(&parse_surface(&args)?),
        Command::Picard { surface, power } => {
            let surface = parse_surface(&surface)?;
            let line = surface.fundamental_line_bundle()?.power(power);
            let mut out = String::new();
            let _ = writeln!(out, "L0^{power} on {surface}");
            write_line_bundle(&mut out, &line);
            Ok((out, EXIT_OK))
        }
        Command::Rr { surface, line, u2, det } => {
            let surface = parse_surface(&surface)?;
            let mut out = String::new();
            if let Some(line) = line {
                let line = parse_bundle(&surface, &line)?;
                write_line_bundle(&mut out, &line);
                let _ = writeln!(out, "chi(L)={}", chi_line(&line));
                let _ = writeln!(out, "serre_dual={}", serre_dual(&line));
                let _ = writeln!(out, "h1_vanishes={}", h1_vanishes(&line));
            }
            if let (Some(pairs), Some(det)) = (u2, det) {
                let det = parse_bundle(&surface, &det)?;
                let bundle = OrbifoldU2Bundle::new(det, parse_pairs(&pairs)?)?;
                let _ = writeln!(out, "u2={bundle}");
                let _ = writeln!(out, "chi(E)={}", chi_u2(&bundle)?);
            }
            Ok((out, EXIT_OK))
        }
        Command::Bundles { surface, det } => {
            let surface = parse_surface(&surface)?;
            let det = parse_bundle(&surface, &det)?;
            let bundles = enumerate_u2_bundles(&det);
            let mut out = String::new();
            let _ = writeln!(out, "{} bundles on {surface} with det {det}, c1(det)={}", bundles.len(), det.c1());
            for b in &bundles {
                let _ = writeln!(out, "{b}  chi={}  dim={}", chi_u2(b)?, b.irreducible_dim()?);
            }
            Ok((out, EXIT_OK))
        }
        Command::Report { surface, det, format, post_quotient } => {
            let surface = parse_surface(&surface)?;
            let det = parse_bundle(&surface, &det)?;
            let mut report = classification_report(&det)?;
            if post_quotient {
                report = report.into_post_quotient();
            }
            Ok((render(format, || report.to_table(), || report.to_json()), EXIT_OK))
        }
        Command::Seifert { surface, euler, det, volume, format, post_quotient } => {
            let surface = parse_surface(&surface)?;
            let euler = parse_bundle(&surface, &euler)?;
            let det = parse_bundle(&surface, &det)?;
            let volume: Rational = volume.parse().map_err(Failure::Invalid)?;
            let manifold = SeifertManifold::new(euler, volume)?;
            let mut report = seifert_monopole_report(&manifold, &det)?;
            if post_quotient {
                report = report.into_post_quotient();
            }
            Ok((render(format, || report.to_table(), || report.to_json()), EXIT_OK))
        }
        Command::S1sigma { genus, deg_e, format, post_quotient } => {
            let mut report = s1_times_sigma_report(&OrbifoldSurface::smooth(genus), deg_e)?;
            if post_quotient {
                report = report.into_post_quotient();
            }
            Ok((render(format, || report.to_table(), || report.to_json()), EXIT_OK))
        }
        Command::VerifyZeta { max_a, tol } => verify_zeta(max_a, tol),
        Command::CriticalTau { bound } => {
            if bound == 0 {
                return Err(Failure::Invalid("--bound must be at least 1".into()));
            }
            Ok((u2_critical_parameters(bound).to_table(), EXIT_OK))
        }
    }
}

fn render(format: Format, table: impl FnOnce() -> String, json: impl FnOnce() -> String) -> String {
    match format {
        Format::Table => table(),
        Format::Json => json() + "\n",
    }
}

fn surface_cmd(surface: &OrbifoldSurface) -> CmdResult {
    let k = surface.canonical_bundle();
    let mut out = String::new();
    let _ = writeln!(out, "surface={surface}");
    let _ = writeln!(out, "genus={}", surface.genus());
    let _ = writeln!(out, "cone=[{}]", join(surface.multiplicities()));
    let _ = writeln!(out, "euler={}", surface.euler_characteristic());
    let _ = writeln!(out, "canonical={k}");
    let _ = writeln!(out, "c1(K)={}", k.c1());
    let _ = writeln!(out, "coprime={}", surface.is_coprime());
    if let Ok(l0) = surface.fundamental_line_bundle() {
        let _ = writeln!(out, "L0={l0}");
    }
    Ok((out, EXIT_OK))
}

fn write_line_bundle(out: &mut String, line: &OrbifoldLineBundle) {
    let _ = writeln!(out, "deg_b={}", line.deg_b());
    let _ = writeln!(out, "isotropy=[{}]", join(line.isotropy()));
    let _ = writeln!(out, "c1={}", line.c1());
}

fn verify_zeta(max_a: i64, tol: f64) -> CmdResult {
    if max_a < 2 {
        return Err(Failure::Invalid(format!("--max-a must be at least 2, got {max_a}")));
    }
    let mut total = 0usize;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for a in 2..=max_a {
        for b in 1..a {
            let r = ZetaSumResult::evaluate(a, b)?;
            total += 1;
            worst = worst.max(r.real_error()).max(r.imaginary_error());
            if !r.within(tol) {
                failures.push(r);
            }
        }
    }
    let mut out = String::new();
    if failures.is_empty() {
        let _ = writeln!(out, "PASS {total}/{total}");
        let _ = writeln!(out, "tol={tol:e}");
    } else {
        let _ = writeln!(out, "FAIL {}/{total}", total - failures.len());
        for r in failures.iter().take(20) {
            let _ = writeln!(
                out,
                "  a={} b={} closed={} numeric={:e}{:+e}i",
                r.a, r.b, r.closed_form, r.numeric.0, r.numeric.1
            );
        }
        if failures.len() > 20 {
            let _ = writeln!(out, "  ... {} more", failures.len() - 20);
        }
        let _ = writeln!(out, "max_error={worst:.3e} tol={tol:e}");
    }
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
    Ok((out, code))
}

fn parse_surface(args: &SurfaceArgs) -> Result<OrbifoldSurface, Failure> {
    let cone = parse_list(&args.cone, "--cone")?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Failure::Invalid(format!("--cone: multiplicity '{v}' out of range"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbifoldSurface::new(args.genus, cone)?)
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Failure::Invalid(format!("{flag}: malformed integer '{t}'"))))
        .collect()
}

/// `L0^k`, `L0`, `K^k`, `K`, `triv`, or explicit `degB,b1,...,bn`.
pub fn parse_bundle_spec(surface: &OrbifoldSurface, spec: &str) -> Result<OrbifoldLineBundle, String> {
    parse_bundle(surface, spec).map_err(|f| match f {
        Failure::Invalid(m) | Failure::Internal(m) => m,
    })
}

fn parse_bundle(surface: &OrbifoldSurface, spec: &str) -> Result<OrbifoldLineBundle, Failure> {
    let spec = spec.trim();
    let power = |rest: &str| -> Result<i64, Failure> {
        match rest.strip_prefix('^') {
            None if rest.is_empty() => Ok(1),
            Some(k) => {
                k.parse().map_err(|_| Failure::Invalid(format!("malformed exponent '{k}' in bundle spec '{spec}'")))
            }
            None => Err(Failure::Invalid(format!("malformed bundle spec '{spec}'"))),
        }
    };
    if spec == "triv" {
        return Ok(surface.trivial_bundle());
    }
    if let Some(rest) = spec.strip_prefix("L0") {
        let k = power(rest)?;
        return Ok(surface.fundamental_line_bundle()?.power(k));
    }
    if let Some(rest) = spec.strip_prefix('K') {
        let k = power(rest)?;
        return Ok(surface.canonical_bundle().power(k));
    }
    let values = parse_list(spec, "bundle spec")?;
    let Some((&deg_b, isotropy)) = values.split_first() else {
        return Err(Failure::Invalid(format!("empty bundle spec '{spec}'")));
    };
    if isotropy.len() != surface.cone_count() {
        return Err(Failure::Invalid(format!(
            "bundle spec '{spec}' has {} isotropy entries but the surface has {} cone points",
            isotropy.len(),
            surface.cone_count()
        )));
    }
    let isotropy = isotropy
        .iter()
        .map(|&b| {
            u32::try_from(b).map_err(|_| Failure::Invalid(format!("negative isotropy '{b}' in bundle spec '{spec}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbifoldLineBundle::new(surface.clone(), deg_b, isotropy)?)
}

fn parse_pairs(text: &str) -> Result<Vec<IsotropyPair>, Failure> {
    let cleaned: String =
        text.chars().map(|c| if c == ':' { ',' } else { c }).filter(|c| *c != '(' && *c != ')').collect();
    let values = parse_list(&cleaned, "--u2")?;
    if values.len() % 2 != 0 {
        return Err(Failure::Invalid(format!("--u2: odd number of entries in '{text}'")));
    }
    values
        .chunks(2)
        .map(|c| match (u32::try_from(c[0]), u32::try_from(c[1])) {
            (Ok(x), Ok(y)) => Ok(IsotropyPair::new(x, y)),
            _ => Err(Failure::Invalid(format!("--u2: negative entry in '{text}'"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutput {
        run(std::iter::once("orbivortex").chain(args.iter().copied()))
    }

    #[test]
    fn picard_example() {
        let out = run_args(&["picard", "--genus", "0", "--cone", "2,3,7", "--power", "5"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "L0^5 on S^2(2,3,7)\ndeg_b=-1\nisotropy=[1,1,2]\nc1=5/42\n");
    }

    #[test]
    fn negative_power() {
        let out = run_args(&["picard", "--cone", "2,3,5", "--power", "-1"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("deg_b=-2\nisotropy=[1,2,4]\nc1=-1/30"));
    }

    #[test]
    fn bundle_specs() {
        let s = OrbifoldSurface::new(0, vec![2, 3, 7]).unwrap();
        assert_eq!(parse_bundle_spec(&s, "L0^5").unwrap().isotropy(), &[1, 1, 2]);
        assert_eq!(parse_bundle_spec(&s, "L0").unwrap().c1(), Rational::new(1, 42));
        assert_eq!(parse_bundle_spec(&s, "-1,1,1,2").unwrap(), parse_bundle_spec(&s, "L0^5").unwrap());
        assert_eq!(parse_bundle_spec(&s, "K").unwrap(), s.canonical_bundle());
        assert!(parse_bundle_spec(&s, "triv").unwrap().is_trivial());
        let err = parse_bundle_spec(&s, "-1,1,1").unwrap_err();
        assert!(err.contains("'-1,1,1'"), "{err}");
        let err = parse_bundle_spec(&s, "L0^x").unwrap_err();
        assert!(err.contains("'x'"), "{err}");
        let err = parse_bundle_spec(&s, "0,1,q,2").unwrap_err();
        assert!(err.contains("'q'"), "{err}");
        let s = OrbifoldSurface::new(0, vec![2, 4]).unwrap();
        assert!(parse_bundle_spec(&s, "L0").unwrap_err().contains("coprime"));
    }

    #[test]
    fn pair_parsing() {
        let p = parse_pairs("0:1,0:1,2:4").ok().unwrap();
        assert_eq!(p, parse_pairs("((0,1),(0,1),(2,4))").ok().unwrap());
        assert_eq!(p[2], IsotropyPair::new(2, 4));
        assert!(parse_pairs("0,1,2").is_err());
    }

    #[test]
    fn rr_with_u2() {
        let out = run_args(&["rr", "--cone", "2,3,5", "--line", "L0", "--u2", "0:1,0:1,0:1", "--det", "L0"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("chi(L)=0\n"));
        assert!(out.stdout.contains("chi(E)=1\n"));
    }

    #[test]
    fn validation_errors_exit_one() {
        let out = run_args(&["report", "--cone", "2,1,5", "--det", "L0"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("multiplicity 1"));

        let out = run_args(&["report", "--cone", "2,3,5", "--det", "L0", "--bogus"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("--bogus"), "{}", out.stderr);

        let out = run_args(&["frobnicate"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("frobnicate"));

        let out = run_args(&["rr", "--cone", "2,3,5", "--line", "L0", "--u2", "0:1,0:1,0:2", "--det", "L0"]);
        assert_eq!(out.code, 1);

        let out = run_args(&["s1sigma", "--genus", "1", "--deg-e", "x"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("'x'"));

        let out = run_args(&["seifert", "--cone", "2,3,5", "--euler", "L0", "--det", "L0", "--volume", "0"]);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn verify_zeta_counts() {
        let out = run_args(&["verify-zeta", "--max-a", "60"]);
        assert_eq!(out.code, 0);
        // sum_{a=2}^{60} (a - 1) = 1770
        assert!(out.stdout.starts_with("PASS 1770/1770\n"));
        let out = run_args(&["verify-zeta", "--max-a", "10", "--tol", "0"]);
        assert!(out.stdout.starts_with("FAIL") || out.stdout.starts_with("PASS"));
    }

    #[test]
    fn critical_tau_listing() {
        let out = run_args(&["critical-tau", "--bound", "1"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.lines().count(), 4);
        assert!(out.stdout.starts_with("flat: tau = 1 pi\n"));
        assert_eq!(run_args(&["critical-tau", "--bound", "0"]).code, 1);
    }

    #[test]
    fn help_exits_cleanly() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("verify-zeta"));
    }
}
