//! `dzlab`: build ideal-norm coefficient tables for a number field and
//! emit plot-ready CSV / machine-readable JSON for the derived analytic
//! experiments. No interactive mode; every subcommand writes its
//! artifacts and exits.

mod verify;

use clap::{Args, Parser, Subcommand};
use dzlab_core::*;
use num::complex::Complex64;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dzlab", version, about = "Dedekind zeta experiments over explicit number fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Field spec: "rat", "quad:d", or "poly:c_n,...,c_0" (monic)
    #[arg(long)]
    field: String,
    /// Sieve bound for the coefficient tables
    #[arg(long = "X", default_value_t = 100_000)]
    x: u64,
    /// Directory for CSV artifacts
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Skip reading/writing the sieve cache
    #[arg(long)]
    no_cache: bool,
    /// Cache directory (default: $DZLAB_CACHE_DIR or <out>/.dzlab-cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the field's analytic invariants as JSON
    Field(Common),
    /// Build and cache all three coefficient tables
    Sieve(Common),
    /// Totient summatory vs the Mertens main term, CSV over an x grid
    Mertens {
        #[command(flatten)]
        common: Common,
        /// x grid "lo:hi:points_per_decade"
        #[arg(long, default_value = "1e4:1e5:16")]
        x_grid: String,
    },
    /// Zeta values, residue, and zeta_K(2) as JSON
    Zeta {
        #[command(flatten)]
        common: Common,
        /// Evaluation points, e.g. --s 2 --s 1.25+1i
        #[arg(long = "s")]
        s_points: Vec<String>,
    },
    /// Measure error curve CSV plus the fitted decay exponent as JSON
    Measure {
        #[command(flatten)]
        common: Common,
        /// Test function, e.g. indicator:1,2 | polybump:3 | smoothbump:1,2
        #[arg(long)]
        f: String,
        /// q grid "hi:lo:points_per_decade"
        #[arg(long, default_value = "1e-1:1e-4:24")]
        q: String,
    },
    /// Running max of q^{-alpha}|E| for several alpha, CSV
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1e-1:1e-4:24")]
        q: String,
        /// Comma-separated exponents
        #[arg(long, default_value = "0.25,0.5,0.75")]
        alphas: String,
    },
    /// Mellin transform values (numeric and closed form) CSV + identity JSON
    Mellin {
        #[command(flatten)]
        common: Common,
        /// Test functions (repeatable)
        #[arg(long = "f")]
        fs: Vec<String>,
        /// Evaluation points (repeatable), Re(s) >= 1.1
        #[arg(long = "s")]
        s_points: Vec<String>,
    },
    /// Run the invariant suite; nonzero exit on any failure
    Verify(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for configuration problems, 3 for capability limits.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BadFieldSpec(_)
        | Error::NotSquarefree(_)
        | Error::DisallowedValue(_)
        | Error::NotMonic
        | Error::Reducible(_)
        | Error::DegreeTooSmall
        | Error::Domain(_)
        | Error::OutOfRange { .. }
        | Error::Cache(_)
        | Error::Io(_) => 2,
        Error::IndexDivisor(_)
        | Error::UndecidedIrreducibility
        | Error::Overflow
        | Error::TableTooSmall { .. }
        | Error::InsufficientData
        | Error::PoleAt1
        | Error::PoleProximity
        | Error::DivisionNearZero
        | Error::TailTooLarge { .. } => 3,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Field(c) => {
            let (field, tables, inv) = load(&c)?;
            let _ = tables;
            println!("{}", serde_json::to_string_pretty(&invariants_json(&field, c.x, &inv)).expect("serialize json"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sieve(c) => sieve_cmd(&c),
        Cmd::Mertens { common, x_grid } => mertens_cmd(&common, &x_grid),
        Cmd::Zeta { common, s_points } => zeta_cmd(&common, &s_points),
        Cmd::Measure { common, f, q } => measure_cmd(&common, &f, &q, None),
        Cmd::Scan { common, f, q, alphas } => measure_cmd(&common, &f, &q, Some(&alphas)),
        Cmd::Mellin { common, fs, s_points } => mellin_cmd(&common, &fs, &s_points),
        Cmd::Verify(c) => verify::run(&c),
    }
}

impl Common {
    fn cache_path(&self, spec: &str) -> PathBuf {
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os("DZLAB_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| self.out.join(".dzlab-cache"));
        dir.join(cache::cache_file_name(spec, self.x))
    }
}

/// Field + all three tables, via the cache when allowed.
fn load(c: &Common) -> Result<(NumberField, [CoeffTable; 3], FieldInvariants)> {
    let field = NumberField::parse_spec(&c.field)?;
    let path = c.cache_path(&field.spec_string());
    let tables = if !c.no_cache && path.exists() {
        let t = cache::read_tables(&path)?;
        if t[0].field_spec != field.spec_string() || t[0].bound != c.x {
            return Err(Error::Cache(format!(
                "{} holds {} at X = {}, wanted {} at X = {}; resieve",
                path.display(),
                t[0].field_spec,
                t[0].bound,
                field.spec_string(),
                c.x
            )));
        }
        t
    } else {
        let t = build_all_tables(&field, c.x)?;
        if !c.no_cache {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            cache::write_tables(&path, &t)?;
        }
        t
    };
    let inv = compute_invariants(&field, &tables[0]);
    Ok((field, tables, inv))
}

fn invariants_json(field: &NumberField, x: u64, inv: &FieldInvariants) -> serde_json::Value {
    json!({
        "field": field.spec_string(),
        "degree": field.degree,
        "signature": { "r1": field.signature.0, "r2": field.signature.1 },
        "discriminant": field.discriminant,
        "X": x,
        "kappa": inv.kappa,
        "kappa_method": format!("{:?}", inv.kappa_method),
        "kappa_error": inv.kappa_error,
        "zeta_K2": inv.zeta_k2,
        "zeta_K2_error": inv.zeta_k2_error,
        "mertens_constant": inv.mertens_constant,
        "limit_density": inv.limit_density(),
    })
}

fn sieve_cmd(c: &Common) -> Result<ExitCode> {
    let field = NumberField::parse_spec(&c.field)?;
    let tables = build_all_tables(&field, c.x)?;
    let path = c.cache_path(&field.spec_string());
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    cache::write_tables(&path, &tables)?;
    let (kappa, method, err) = residue_kappa(&field, &tables[0]);
    let (reg, reg_err) = kappa_regression(&tables[0]);
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "cache_file": path.display().to_string(),
            "X": c.x,
            "kappa": kappa,
            "kappa_method": format!("{method:?}"),
            "kappa_error": err,
            "kappa_regression": reg,
            "kappa_regression_error": reg_err,
        })).expect("serialize json")
    );
    Ok(ExitCode::SUCCESS)
}

/// '#'-prefixed provenance lines; the timestamp is the only line allowed
/// to differ between identical runs.
fn metadata_header(w: &mut impl Write, field: &NumberField, x: u64, inv: &FieldInvariants) -> Result<()> {
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    writeln!(w, "# field {}", field.spec_string())?;
    writeln!(w, "# X {x}")?;
    writeln!(w, "# kappa {:.17e}", inv.kappa)?;
    writeln!(w, "# zeta_K2 {:.17e}", inv.zeta_k2)?;
    writeln!(w, "# tool dzlab {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# generated {stamp}")?;
    Ok(())
}

fn parse_grid3(spec: &str, what: &str) -> Result<(f64, f64, u32)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Domain(format!("bad {what} grid {spec:?}, expected a:b:points_per_decade"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let ppd: u32 = parts[2].parse().map_err(|_| bad())?;
    if !(a > 0.0 && b > 0.0 && ppd >= 1) {
        return Err(bad());
    }
    Ok((a, b, ppd))
}

fn mertens_cmd(c: &Common, x_grid: &str) -> Result<ExitCode> {
    let (lo, hi, ppd) = parse_grid3(x_grid, "x")?;
    if hi > c.x as f64 {
        return Err(Error::Domain(format!(
            "x grid reaches {hi} but the table bound is X = {}",
            c.x
        )));
    }
    let (field, tables, inv) = load(c)?;
    let decades = (hi / lo).log10();
    let n = (decades * ppd as f64).round() as usize + 1;
    let mut xs: Vec<u64> = (0..n)
        .map(|i| (lo.ln() + (hi / lo).ln() * i as f64 / (n - 1) as f64).exp().round() as u64)
        .collect();
    xs.dedup();
    let report = mertens_report(&tables[1], &field, &inv, &xs)?;
    std::fs::create_dir_all(&c.out)?;
    let path = c.out.join(format!("mertens-{}.csv", file_tag(&field)));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    metadata_header(&mut w, &field, c.x, &inv)?;
    writeln!(
        w,
        "x,value,main_term,error,normalized_error,normalized_error_lindelof,normalized_error_circle"
    )?;
    for r in &report {
        writeln!(
            w,
            "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            r.x, r.value, r.main_term, r.error, r.normalized_error,
            r.normalized_error_lindelof, r.normalized_error_circle
        )?;
    }
    w.flush()?;
    eprintln!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Domain(format!("bad complex number {s:?}, expected forms like 2, 1.25+1i, 0.5-3i"));
    let t = s.trim();
    if let Some(body) = t.strip_suffix('i') {
        // split at the sign of the imaginary part (not a leading sign or
        // an exponent sign)
        let chars: Vec<char> = body.chars().collect();
        for k in (1..chars.len()).rev() {
            if (chars[k] == '+' || chars[k] == '-')
                && chars[k - 1] != 'e'
                && chars[k - 1] != 'E'
            {
                let re: f64 = body[..k].parse().map_err(|_| bad())?;
                let imt = &body[k..];
                let im: f64 = if imt == "+" {
                    1.0
                } else if imt == "-" {
                    -1.0
                } else {
                    imt.parse().map_err(|_| bad())?
                };
                return Ok(Complex64::new(re, im));
            }
        }
        // pure imaginary
        let im: f64 = if body.is_empty() {
            1.0
        } else if body == "-" {
            -1.0
        } else {
            body.parse().map_err(|_| bad())?
        };
        return Ok(Complex64::new(0.0, im));
    }
    let re: f64 = t.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, 0.0))
}

fn zeta_cmd(c: &Common, s_points: &[String]) -> Result<ExitCode> {
    let (field, tables, inv) = load(c)?;
    let mut values = Vec::new();
    for raw in s_points {
        let s = parse_complex(raw)?;
        let v = zeta_any(&field, &tables[0], s)?;
        values.push(json!({
            "s_re": s.re, "s_im": s.im,
            "re": v.re(), "im": v.im(), "abs_err": v.abs_err,
        }));
    }
    let mut out = invariants_json(&field, c.x, &inv);
    out["values"] = serde_json::Value::Array(values);
    println!("{}", serde_json::to_string_pretty(&out).expect("serialize json"));
    Ok(ExitCode::SUCCESS)
}

/// Shared by `measure` (alphas = None) and `scan` (alphas = Some).
fn measure_cmd(c: &Common, f_spec: &str, q_spec: &str, alphas: Option<&str>) -> Result<ExitCode> {
    let f = TestFunction::parse_spec(f_spec)?;
    let (q_hi, q_lo, ppd) = parse_grid3(q_spec, "q")?;
    if q_lo >= q_hi {
        return Err(Error::Domain(format!("q grid must run hi:lo with lo < hi, got {q_spec:?}")));
    }
    let needed = required_bound(&f, q_lo);
    if c.x < needed {
        return Err(Error::Domain(format!(
            "X = {} cannot resolve q = {q_lo:e} for {f_spec}: need X >= {needed}",
            c.x
        )));
    }
    let (field, tables, inv) = load(c)?;
    let grid = geometric_grid(q_lo.log10(), q_hi.log10(), ppd);
    let curve = error_curve(&tables[1], &inv, &f, &grid)?;
    std::fs::create_dir_all(&c.out)?;
    match alphas {
        None => {
            let path = c.out.join(format!("measure-{}-{}.csv", file_tag(&field), safe(f_spec)));
            let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
            metadata_header(&mut w, &field, c.x, &inv)?;
            writeln!(w, "q,m_q,m_limit,error")?;
            for s in &curve {
                writeln!(w, "{:.17e},{:.17e},{:.17e},{:.17e}", s.q, s.m_q, s.m_limit, s.error)?;
            }
            w.flush()?;
            eprintln!("wrote {}", path.display());
            let fit = exponent_fit(&curve)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "f": f_spec,
                    "alpha_hat": fit.alpha_hat,
                    "stderr": fit.stderr,
                    "q_min": fit.q_range.0,
                    "q_max": fit.q_range.1,
                    "n_points": fit.n_points,
                })).expect("serialize json")
            );
        }
        Some(alpha_spec) => {
            let alphas: Vec<f64> = alpha_spec
                .split(',')
                .map(|a| a.trim().parse().map_err(|_| Error::Domain(format!("bad alpha list {alpha_spec:?}"))))
                .collect::<Result<_>>()?;
            let scans = critical_exponent_scan(&curve, &alphas);
            let path = c.out.join(format!("scan-{}-{}.csv", file_tag(&field), safe(f_spec)));
            let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
            metadata_header(&mut w, &field, c.x, &inv)?;
            let cols: Vec<String> = alphas.iter().map(|a| format!("running_max_alpha_{a}")).collect();
            writeln!(w, "q,{}", cols.join(","))?;
            for (i, s) in curve.iter().enumerate() {
                let row: Vec<String> = scans.iter().map(|sc| format!("{:.17e}", sc.running_max[i])).collect();
                writeln!(w, "{:.17e},{}", s.q, row.join(","))?;
            }
            w.flush()?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn mellin_cmd(c: &Common, fs: &[String], s_points: &[String]) -> Result<ExitCode> {
    if fs.is_empty() || s_points.is_empty() {
        return Err(Error::Domain("mellin needs at least one --f and one --s".into()));
    }
    let (field, tables, inv) = load(c)?;
    std::fs::create_dir_all(&c.out)?;
    let path = c.out.join(format!("mellin-{}.csv", file_tag(&field)));
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    metadata_header(&mut w, &field, c.x, &inv)?;
    writeln!(w, "f,s_re,s_im,value_re,value_im,method,err_est")?;
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    for f_spec in fs {
        let f = TestFunction::parse_spec(f_spec)?;
        for raw in s_points {
            let s = parse_complex(raw)?;
            let num = mellin_numeric(&tables[1], &inv, &f, s)?;
            let closed = mellin_closed(&field, &tables[0], &f, s)?;
            for p in [&num, &closed] {
                let tag = match p.method {
                    MellinMethod::NumericIntegral => "numeric",
                    MellinMethod::ClosedForm => "closed",
                };
                writeln!(
                    w,
                    "{f_spec},{},{},{:.17e},{:.17e},{tag},{:.3e}",
                    s.re, s.im, p.value.re(), p.value.im(), p.value.abs_err
                )?;
            }
            let rel = (num.value.value - closed.value.value).norm() / closed.value.value.norm();
            worst = worst.max(rel);
            checks.push(json!({ "f": f_spec, "s_re": s.re, "s_im": s.im, "rel_gap": rel }));
        }
    }
    w.flush()?;
    eprintln!("wrote {}", path.display());
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "identity_checks": checks,
            "worst_rel_gap": worst,
            "tolerance": 1e-3,
            "passed": worst < 1e-3,
        })).expect("serialize json")
    );
    if worst < 1e-3 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn file_tag(field: &NumberField) -> String {
    safe(&field.spec_string())
}

fn safe(s: &str) -> String {
    s.chars().map(|c| if c == ':' || c == ',' { '_' } else { c }).collect()
}
