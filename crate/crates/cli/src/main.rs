use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use piped::asymptotics::{acute, obtuse};
use piped::coverage::{classify, emit_plot_points, DEFAULT_S_HEIGHT_BOUND};
use piped::families::{
    general_int, general_rat, pattern1_four_sets, pattern1_rat, pattern2_int, pattern2_rat,
    FamilyPoint,
};
use piped::fixtures::{table2_sparams, ACUTE_PRINTED, TABLE1};
use piped::geometry::{integerize, reconstruct};
use piped::search::{
    enumerate_solutions, import_records, write_records, Provenance, SearchConfig, SearchMode,
    SolutionRecord,
};
use piped::sspace::{governing_residual, normalize, sharipov_feasible, SParams};
use piped::{Error, Rational};

/// Exact tools for rational bi-orthogonal monoclinic parallelepipeds.
#[derive(Parser)]
#[command(name = "piped", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an s-parameter set against the governing equation.
    Verify {
        /// Four rationals, e.g. "1/2,16/7,16/5,16/35".
        #[arg(long = "s")]
        s: String,
    },
    /// Rebuild the piped lengths "x y z a b c1 c2 d1 d2" of a solution.
    Reconstruct {
        #[arg(long = "s")]
        s: String,
        /// Print the primitive integer piped instead of x = 1 lengths.
        #[arg(long)]
        integer: bool,
    },
    /// Generate family members as JSON lines.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        /// Comma-separated parameter values.
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        params: Option<String>,
        /// One range per parameter: "a..b" (inclusive integers), "farey:N"
        /// (positive p/q with p, q <= N) or a single value.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate solutions with entries of bounded height.
    Search {
        #[arg(long)]
        height: u64,
        #[arg(long = "fix-s1")]
        fix_s1: Option<String>,
        /// Brute-force all four coordinates instead of solving for s4.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify records as covered by a family or anomalous.
    Cover {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Largest height of s accepted for the general family.
        #[arg(long, default_value_t = DEFAULT_S_HEIGHT_BOUND, conflicts_with = "unbounded")]
        s_height_bound: u64,
        /// Accept any s for the general family.
        #[arg(long)]
        unbounded: bool,
    },
    /// Emit (s3 - s4, numerator(s2)) points as CSV.
    PlotData {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit built-in reference data as JSON lines.
    Fixtures {
        #[arg(long, value_enum)]
        emit: FixtureName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Pattern1,
    #[value(name = "pattern1-rat")]
    Pattern1Rat,
    Pattern2,
    #[value(name = "pattern2-rat")]
    Pattern2Rat,
    General,
    Obtuse,
    Acute,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    Table1,
    Table2,
    Acute18,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Verify { s } => verify(&s),
        Command::Reconstruct { s, integer } => reconstruct_cmd(&s, integer),
        Command::Family {
            name,
            params,
            range,
            out,
        } => family(name, params.as_deref(), range.as_deref(), out.as_deref()),
        Command::Search {
            height,
            fix_s1,
            oracle,
            checkpoint,
            workers,
            out,
        } => {
            let fixed_s1 = fix_s1
                .map(|t| t.parse::<Rational>().context("--fix-s1"))
                .transpose()?;
            let cfg = SearchConfig {
                height_bound: height,
                fixed_s1,
                mode: if oracle {
                    SearchMode::Oracle
                } else {
                    SearchMode::Reduced
                },
                checkpoint_path: checkpoint,
                workers,
            };
            let records = enumerate_solutions(&cfg)?;
            write_records(&out, &records).with_context(|| format!("--out {}", out.display()))?;
            eprintln!("{} solutions", records.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Cover {
            input,
            out,
            s_height_bound,
            unbounded,
        } => {
            let records = load(&input)?;
            let bound = (!unbounded).then_some(s_height_bound);
            let report = classify(&records, bound)?;
            let json = serde_json::to_string_pretty(&report)?;
            fs::write(&out, json + "\n").with_context(|| format!("--out {}", out.display()))?;
            println!(
                "total {} covered {} anomalous {}",
                report.total, report.covered, report.anomalous
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::PlotData { input, out } => {
            let records = load(&input)?;
            fs::write(&out, emit_plot_points(&records))
                .with_context(|| format!("--out {}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { emit, out } => {
            write_out(out.as_deref(), &fixture_lines(emit)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_sparams(text: &str) -> anyhow::Result<SParams> {
    text.parse::<SParams>().context("--s")
}

fn verify(text: &str) -> anyhow::Result<ExitCode> {
    let s = parse_sparams(text)?;
    let residual = governing_residual(&s).context("--s")?;
    let solution = residual.is_zero() && s.is_nondegenerate();
    let canonical = normalize(&s)?;
    println!("s: {s}");
    println!("residual: {residual}");
    println!("solution: {solution}");
    println!("canonical: {canonical}");
    println!("feasible: {}", sharipov_feasible(&canonical));
    let geometric = solution && piped::geometry::is_geometric(&canonical);
    println!("geometric_valid: {geometric}");
    Ok(if solution {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn reconstruct_cmd(text: &str, integer: bool) -> anyhow::Result<ExitCode> {
    let s = parse_sparams(text)?;
    let residual = governing_residual(&s).context("--s")?;
    if !residual.is_zero() || !s.is_nondegenerate() {
        bail!("--s: {s} is not a solution (residual {residual})");
    }
    let p = reconstruct(&s)?;
    if integer {
        println!("{}", integerize(&p));
    } else {
        println!("{p}");
    }
    println!("algebraic: {}", p.validate_algebraic());
    println!("cos_theta: {}", p.cos_angle()?);
    let valid = p.validate_geometric();
    println!("geometric_valid: {valid}");
    if valid {
        let f = p.rational_area_volume_lattice()?;
        println!("area_rational: {}", f.area_rational);
        println!("volume_rational: {}", f.volume_rational);
        println!("lattice_embeddable: {}", f.lattice_embeddable);
    }
    Ok(ExitCode::SUCCESS)
}

fn int_param(name: FamilyName, idx: usize, v: &Rational) -> anyhow::Result<i64> {
    if !v.is_integer() {
        bail!("{} parameter {} = {v} must be an integer", family_label(name), idx + 1);
    }
    v.numer()
        .try_into()
        .map_err(|_| anyhow!("{} parameter {} = {v} is out of range", family_label(name), idx + 1))
}

fn family_label(name: FamilyName) -> &'static str {
    match name {
        FamilyName::Pattern1 => "pattern1",
        FamilyName::Pattern1Rat => "pattern1-rat",
        FamilyName::Pattern2 => "pattern2",
        FamilyName::Pattern2Rat => "pattern2-rat",
        FamilyName::General => "general",
        FamilyName::Obtuse => "obtuse",
        FamilyName::Acute => "acute",
    }
}

fn generate(name: FamilyName, params: &[Rational]) -> anyhow::Result<Vec<FamilyPoint>> {
    let arity_error = |want: &str| {
        anyhow!(
            "{} takes {want}, got {} parameter(s)",
            family_label(name),
            params.len()
        )
    };
    let ints = |n: usize, want: &str| -> anyhow::Result<Vec<i64>> {
        if params.len() != n {
            return Err(arity_error(want));
        }
        params
            .iter()
            .enumerate()
            .map(|(i, v)| int_param(name, i, v))
            .collect()
    };
    let points = match name {
        FamilyName::Pattern1 => {
            let v = ints(2, "m,n")?;
            pattern1_four_sets(v[0], v[1])?.to_vec()
        }
        FamilyName::Pattern1Rat => match params {
            [q] => vec![pattern1_rat(q)?],
            _ => return Err(arity_error("q")),
        },
        FamilyName::Pattern2 => {
            let v = ints(2, "m,n")?;
            vec![pattern2_int(v[0], v[1])?]
        }
        FamilyName::Pattern2Rat => match params {
            [q] => vec![pattern2_rat(q)?],
            _ => return Err(arity_error("q")),
        },
        FamilyName::General => match params {
            [s, r] => vec![general_rat(s, r)?],
            [_, _, _, _] => {
                let v = ints(4, "r,s,m,n")?;
                vec![general_int(v[0], v[1], v[2], v[3])?]
            }
            _ => return Err(arity_error("s,r (rational) or r,s,m,n (integer)")),
        },
        FamilyName::Obtuse => {
            let v = ints(1, "n")?;
            vec![obtuse(v[0])?]
        }
        FamilyName::Acute => {
            let v = ints(2, "d,n")?;
            vec![acute(v[0], v[1])?]
        }
    };
    Ok(points)
}

fn parse_list(text: &str, what: &str) -> anyhow::Result<Vec<Rational>> {
    text.split(',')
        .map(|t| t.parse::<Rational>().with_context(|| what.to_string()))
        .collect()
}

fn expand_range(arg: &str) -> anyhow::Result<Vec<Rational>> {
    let arg = arg.trim();
    if let Some(n) = arg.strip_prefix("farey:") {
        let n: i64 = n
            .parse()
            .with_context(|| format!("--range: bad farey bound {n:?}"))?;
        let mut out: Vec<Rational> = (1..=n)
            .flat_map(|p| (1..=n).map(move |q| (p, q)))
            .filter(|&(p, q)| num_gcd(p, q) == 1)
            .map(|(p, q)| Rational::frac(p, q))
            .collect();
        out.sort();
        return Ok(out);
    }
    if let Some((a, b)) = arg.split_once("..") {
        let a: i64 = a.trim().parse().with_context(|| format!("--range: bad bound {a:?}"))?;
        let b: i64 = b.trim().parse().with_context(|| format!("--range: bad bound {b:?}"))?;
        if a > b {
            bail!("--range: empty range {arg}");
        }
        return Ok((a..=b).map(Rational::from).collect());
    }
    Ok(vec![arg.parse().context("--range")?])
}

fn num_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn family(
    name: FamilyName,
    params: Option<&str>,
    range: Option<&str>,
    out: Option<&Path>,
) -> anyhow::Result<ExitCode> {
    let mut lines = String::new();
    let mut push = |p: &FamilyPoint| -> anyhow::Result<()> {
        lines.push_str(&serde_json::to_string(p)?);
        lines.push('\n');
        Ok(())
    };
    match (params, range) {
        (Some(text), _) => {
            for p in generate(name, &parse_list(text, "--params")?)? {
                push(&p)?;
            }
        }
        (None, Some(text)) => {
            let axes = text
                .split(',')
                .map(expand_range)
                .collect::<anyhow::Result<Vec<_>>>()?;
            let mut skipped = 0usize;
            for combo in cartesian(&axes) {
                match generate(name, &combo) {
                    Ok(points) => {
                        for p in &points {
                            push(p)?;
                        }
                    }
                    Err(e) if is_degenerate(&e) => {
                        skipped += 1;
                        eprintln!("degenerate at ({}): {e}", join(&combo));
                    }
                    Err(e) => return Err(e),
                }
            }
            if skipped > 0 {
                eprintln!("{skipped} parameter combination(s) flagged degenerate");
            }
        }
        (None, None) => bail!("either --params or --range is required"),
    }
    write_out(out, &lines)?;
    Ok(ExitCode::SUCCESS)
}

fn is_degenerate(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::Degenerate { .. } | Error::DegenerateParameter(_))
    )
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn cartesian(axes: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect()
    })
}

fn load(path: &Path) -> anyhow::Result<Vec<SolutionRecord>> {
    let report = import_records(path).with_context(|| format!("--in {}", path.display()))?;
    for r in &report.rejected {
        eprintln!("{}:{}: rejected: {}", path.display(), r.line, r.reason);
    }
    Ok(report.records)
}

fn write_out(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("--out {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn fixture_lines(which: FixtureName) -> anyhow::Result<String> {
    let mut out = String::new();
    match which {
        FixtureName::Table1 => {
            for row in TABLE1 {
                let rec = SolutionRecord::from_solution(&row.sparams(), Provenance::Import)?
                    .with_family("TABLE1");
                let mut v = serde_json::to_value(&rec)?;
                v["q"] = Value::String(row.q.to_string());
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
        FixtureName::Table2 => {
            for s in table2_sparams() {
                let rec = SolutionRecord::from_solution(&s, Provenance::Import)?.with_family("TABLE2");
                out.push_str(&rec.to_json_line());
                out.push('\n');
            }
        }
        FixtureName::Acute18 => {
            for row in ACUTE_PRINTED {
                let v = serde_json::json!({
                    "d": row.d,
                    "s_coefficient": row.s_coefficient,
                    "t_coefficient": row.t_coefficient,
                });
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    Ok(out)
}
