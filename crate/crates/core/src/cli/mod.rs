//! The `geodiag` command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or input
//! error. JSON output is one record per line and is byte-identical across
//! runs with equal flags and seed.
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;

use crate::kahler::{angles_in_product, approximate_angle, realize_angle};
use crate::lieverify::{verify_classification_entry, VerifyOptions, VerifyStatus, TOL_CONSTRUCTIVE};
use crate::rational;
use crate::tableaux::{classify, count_classes, enumerate_tableaux, AdaptedTableau, ClassifiedSubmanifold};

pub mod parse;
pub mod record;

pub use parse::{parse_product, render_product, render_space, ParseError};
use record::{
    fraction64, AnglesRecord, ClassifiedRecord, RealizationRecord, TableauRecord,
    VerificationRecord, VerifySummary, SCHEMA,
};

/// Environment fallback for `verify --seed`.
pub const SEED_ENV: &str = "GEODIAG_SEED";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "geodiag",
    version,
    about = "Totally geodesic submanifolds of products of rank-one symmetric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stream every class of totally geodesic submanifold.
    Classify {
        #[arg(short = 'm', long = "manifold", value_name = "SPEC")]
        manifold: String,
        /// One JSON record per line.
        #[arg(long)]
        json: bool,
    },
    /// Print the number of classes.
    Count {
        #[arg(short = 'm', long = "manifold", value_name = "SPEC")]
        manifold: String,
    },
    /// Stream the adapted tableaux over a set of factors.
    Tableaux {
        #[arg(short = 'm', long = "manifold", value_name = "SPEC")]
        manifold: String,
        /// One-based factor indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Kähler angles of k-diagonal projective spaces.
    Angles {
        #[arg(long)]
        k: u64,
        /// CSV of (k, s, cosine) for every s.
        #[arg(long, conflicts_with = "json")]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Realize an angle by a diagonal inside a Grassmannian.
    Realize {
        /// Target cosine A/B in [0, 1].
        #[arg(long, value_name = "A/B", required_unless_present = "radians")]
        q: Option<String>,
        /// Target angle in radians, approximated to within --eps.
        #[arg(long, conflicts_with = "q")]
        radians: Option<f64>,
        #[arg(long, default_value_t = 1e-3, requires = "radians")]
        eps: f64,
        /// Dimension of each projective factor.
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Check every supported class numerically in compact matrix models.
    Verify {
        #[arg(short = 'm', long = "manifold", value_name = "SPEC")]
        manifold: String,
        /// Seed for the random isometry applied before measuring; falls back
        /// to GEODIAG_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = TOL_CONSTRUCTIVE)]
        tol: f64,
        /// Treat unsupported entries as failures.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<u8, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Classify { manifold, json } => cmd_classify(&manifold, json, out),
        Command::Count { manifold } => {
            let m = product(&manifold)?;
            writeln!(out, "{}", count_classes(&m))?;
            Ok(EXIT_OK)
        }
        Command::Tableaux {
            manifold,
            subset,
            json,
        } => cmd_tableaux(&manifold, &subset, json, out),
        Command::Angles { k, table, json } => cmd_angles(k, table, json, out),
        Command::Realize { q, radians, eps, m } => cmd_realize(q, radians, eps, m, out),
        Command::Verify {
            manifold,
            seed,
            tol,
            strict,
            json,
        } => {
            let seed = match seed {
                Some(s) => Some(s),
                None => seed_from_env()?,
            };
            cmd_verify(&manifold, seed, tol, strict, json, out)
        }
    }
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn product(spec: &str) -> Result<crate::tableaux::ProductSpace, Failure> {
    parse_product(spec).map_err(|e| usage(format!("{e}\n  in: {spec}")))
}

fn seed_from_env() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

fn spaces_text(entry: &ClassifiedSubmanifold) -> String {
    if entry.semisimple_factors.is_empty() {
        return "-".into();
    }
    entry
        .semisimple_factors
        .iter()
        .map(render_space)
        .collect::<Vec<_>>()
        .join(" x ")
}

fn tableau_text(t: &AdaptedTableau) -> String {
    if t.rows().is_empty() {
        return "∅".into();
    }
    t.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| format!("{}:{}", b.factor + 1, render_space(&b.inclusion.sub)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" / ")
}

fn cmd_classify(spec: &str, json: bool, out: &mut dyn Write) -> Outcome {
    let m = product(spec)?;
    if json {
        for (i, entry) in classify(&m).enumerate() {
            json_line(out, &ClassifiedRecord::new(i, &entry))?;
        }
        return Ok(EXIT_OK);
    }
    let entries: Vec<_> = classify(&m).collect();
    let width = entries.iter().map(|e| spaces_text(e).chars().count()).max().unwrap_or(1);
    writeln!(out, "# {}", render_product(&m))?;
    writeln!(out, "{:>5}  {:>4}  {:>4}  {:<width$}  {:>4}  tableau", "index", "rank", "dim", "semisimple", "flat")?;
    for (i, e) in entries.iter().enumerate() {
        writeln!(
            out,
            "{:>5}  {:>4}  {:>4}  {:<width$}  {:>4}  {}",
            i,
            e.rank(),
            e.dimension(),
            spaces_text(e),
            e.flat_dim,
            tableau_text(&e.tableau)
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_tableaux(spec: &str, subset: &[usize], json: bool, out: &mut dyn Write) -> Outcome {
    let m = product(spec)?;
    let mut set = BTreeSet::new();
    for &f in subset {
        if f == 0 || f > m.rank() {
            return Err(usage(format!(
                "subset index {f} out of range 1..={}",
                m.rank()
            )));
        }
        if !set.insert(f - 1) {
            return Err(usage(format!("subset index {f} repeated")));
        }
    }
    let tableaux = enumerate_tableaux(&m, &set).map_err(usage)?;
    for (i, t) in tableaux.enumerate() {
        if json {
            json_line(out, &TableauRecord::new(i, &set, &t))?;
        } else {
            let shape: Vec<String> = t.shape().parts().iter().map(|p| p.to_string()).collect();
            writeln!(out, "{:>5}  ({})  {}", i, shape.join(","), tableau_text(&t))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_angles(k: u64, table: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let angles = angles_in_product(k).map_err(usage)?;
    if table {
        writeln!(out, "k,s,cosine")?;
        for s in 0..=k {
            let c = Rational64::new((2 * s as i64 - k as i64).abs(), k as i64);
            writeln!(out, "{k},{s},{}", fraction64(c))?;
        }
    } else if json {
        json_line(
            out,
            &AnglesRecord {
                schema: SCHEMA.into(),
                kind: "angles".into(),
                k,
                cosines: angles.iter().map(|a| fraction64(a.cosine())).collect(),
                radians: angles.iter().map(|a| a.radians()).collect(),
            },
        )?;
    } else {
        for a in &angles {
            writeln!(out, "{:>9}  {:.12}", fraction64(a.cosine()), a.radians())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_realize(q: Option<String>, radians: Option<f64>, eps: f64, m: u64, out: &mut dyn Write) -> Outcome {
    let rec = match (q, radians) {
        (Some(q), _) => {
            let exact = rational::parse_rational(&q).map_err(usage)?;
            let to_i64 = |b: &num_bigint::BigInt| {
                i64::try_from(b).map_err(|_| usage(format!("cosine {q} too large")))
            };
            let cosine = Rational64::new(to_i64(exact.numer())?, to_i64(exact.denom())?);
            RealizationRecord::new(&realize_angle(cosine, m).map_err(usage)?)
        }
        (None, Some(target)) => {
            let r = approximate_angle(target, eps, m).map_err(usage)?;
            let mut rec = RealizationRecord::new(&r);
            rec.error = Some((rec.radians - target).abs());
            rec.target = Some(target);
            rec
        }
        (None, None) => return Err(usage("one of --q or --radians is required")),
    };
    json_line(out, &rec)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    spec: &str,
    seed: Option<u64>,
    tol: f64,
    strict: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    let m = product(spec)?;
    let options = VerifyOptions { tol, seed };
    let (mut entries, mut passed, mut failed, mut unsupported) = (0, 0, 0, 0);
    if !json {
        writeln!(out, "# {}", render_product(&m))?;
    }
    for (i, entry) in classify(&m).enumerate() {
        let report = verify_classification_entry(&entry, &m, options)
            .map_err(|e| usage(format!("entry {i}: {e}")))?;
        entries += 1;
        match report.status {
            VerifyStatus::Pass => passed += 1,
            VerifyStatus::Fail => failed += 1,
            VerifyStatus::Unsupported(_) => unsupported += 1,
        }
        if json {
            json_line(out, &VerificationRecord::new(i, &entry, &report))?;
            continue;
        }
        let (status, note) = match &report.status {
            VerifyStatus::Pass => ("pass", String::new()),
            VerifyStatus::Fail => ("FAIL", String::new()),
            VerifyStatus::Unsupported(why) => ("skip", format!("  ({why})")),
        };
        let curv: Vec<String> = report
            .rows
            .iter()
            .map(|r| format!("{:.9}/{:.9}", r.measured, r.expected_measured))
            .collect();
        writeln!(
            out,
            "{:>5}  {}  lts {:.1e}  K {}  {}  flat {}{}",
            i,
            status,
            report.lts_residual,
            if curv.is_empty() { "-".to_string() } else { curv.join(",") },
            spaces_text(&entry),
            entry.flat_dim,
            note,
        )?;
    }
    if json {
        json_line(
            out,
            &VerifySummary {
                schema: SCHEMA.into(),
                kind: "verify_summary".into(),
                product: render_product(&m),
                entries,
                passed,
                failed,
                unsupported,
                tol,
                seed,
            },
        )?;
    } else {
        writeln!(
            out,
            "{entries} entries: {passed} pass, {failed} fail, {unsupported} unsupported"
        )?;
    }
    let bad = failed > 0 || (strict && unsupported > 0);
    Ok(if bad { EXIT_FAILURE } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("geodiag").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_real_plane() {
        assert_eq!(run_str(&["count", "-m", "RH2(1)"]), (0, "3\n".into(), String::new()));
    }

    #[test]
    fn realize_one_fifth() {
        let (code, out, _) = run_str(&["realize", "--q", "1/5", "--m", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["k"], 5);
        assert_eq!(v["s"], 2);
        assert_eq!(v["n"], 10);
        assert_eq!(v["ambient"], "G5(C15)");
        assert_eq!(v["cosine"], "1/5");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["count", "-m", "OH3(1)"]).0, 2);
        assert_eq!(run_str(&["count", "-m", "RH2(1"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["tableaux", "-m", "RH2(1)", "--subset", "2"]).0, 2);
        assert_eq!(run_str(&["verify", "-m", "RH2(1)", "--tol", "0"]).0, 2);
        assert_eq!(run_str(&["realize", "--q", "3/2"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn unsupported_is_exit_zero_unless_strict() {
        let (code, out, _) = run_str(&["verify", "-m", "HH2(1)", "--json"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"unsupported\""));
        assert_eq!(run_str(&["verify", "-m", "HH2(1)", "--strict"]).0, 1);
    }

    #[test]
    fn angles_table() {
        let (_, out, _) = run_str(&["angles", "--k", "3", "--table"]);
        assert_eq!(out, "k,s,cosine\n3,0,1/1\n3,1,1/3\n3,2,1/3\n3,3,1/1\n");
    }
}
