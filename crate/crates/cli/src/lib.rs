//! Command-line front end: `rr`, `search`, `torsion`, `wps`, `reproduce`.
//!
//! `json` (one record per line) and `csv` are stable formats; `table` is for people.

pub mod records;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qfano_core::filters::torsion_feasible;
use qfano_core::invariants::euler_characteristic;
use qfano_core::reproduce::{reproduce_check, Target};
use qfano_core::search::{classify, classify_high, classify_low};
use qfano_core::wps::{scan_wps, wps_basket};
use qfano_core::{parse_basket, Basket, Mode, NumericalFano, QMax, Rational, SearchConfig};

use records::{
    basket_text, candidates_csv, wps_csv, write_json_lines, CandidateRecord, ReportRecord,
    RrRecord, RrValue, TorsionRecord, WpsRecord,
};

#[derive(Parser, Debug)]
#[command(
    name = "qfano",
    version,
    about = "Numerical candidates for non-Gorenstein Q-Fano threefolds of large degree"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Riemann–Roch table chi(tL) and dim |tL| for one basket and index.
    Rr(RrArgs),
    /// Enumerate candidates above a degree threshold.
    Search(SearchArgs),
    /// Whether the basket admits a nonzero torsion assignment.
    Torsion(TorsionArgs),
    /// Terminal weighted projective 3-spaces.
    Wps(WpsArgs),
    /// Re-run the reference tables and report differences.
    Reproduce(ReproduceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    PaperSlack,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::PaperSlack => Mode::PaperSlack,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_basket_arg(s: &str) -> Result<Basket, String> {
    parse_basket(s).map_err(|e| e.to_string())
}

fn parse_q_max(s: &str) -> Result<QMax, String> {
    if s == "auto" {
        return Ok(QMax::Auto);
    }
    s.parse::<u32>()
        .map(QMax::Fixed)
        .map_err(|_| format!("expected a positive integer or `auto`, got `{s}`"))
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse::<Target>().map_err(|e| e.to_string())
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Args, Debug)]
struct RrArgs {
    #[arg(long, value_parser = parse_basket_arg, default_value = "")]
    basket: Basket,
    #[arg(long)]
    q: u32,
    /// Multiples to evaluate; defaults to 1..=q.
    #[arg(long = "t", allow_negative_numbers = true)]
    t: Vec<i64>,
    /// L^3; required for q <= 2 unless --degree is given.
    #[arg(long, value_parser = parse_rational, conflicts_with = "degree")]
    l_cubed: Option<Rational>,
    /// -K^3 = q^3 L^3.
    #[arg(long, value_parser = parse_rational)]
    degree: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_parser = parse_rational, default_value = "125/2")]
    min_degree: Rational,
    #[arg(long, default_value_t = 1)]
    q_min: u32,
    #[arg(long, value_parser = parse_q_max, default_value = "auto")]
    q_max: QMax,
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
    /// Apply the conservative q <= 3 pruners.
    #[arg(long)]
    prune_low_index: bool,
}

#[derive(Args, Debug)]
struct TorsionArgs {
    #[arg(long, value_parser = parse_basket_arg)]
    basket: Basket,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct WpsArgs {
    #[arg(long, default_value_t = 30)]
    max_weight: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// prop4, prop5, cor52, toric or all.
    #[arg(long, value_parser = parse_target, default_value = "all")]
    target: Target,
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
}

/// Failure of a subcommand, mapped to an exit code by [`run`].
enum Failure {
    Usage(String),
    Mismatch,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the CLI on `argv` (program name first). Returns the process exit code:
/// 0 on success, 1 on a reproduce mismatch, 2 on usage or input errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = write!(err, "{e}");
            return 2;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Rr(a) => rr(a, out),
        Command::Search(a) => search(a, out),
        Command::Torsion(a) => torsion(a, out),
        Command::Wps(a) => wps(a, out),
        Command::Reproduce(a) => reproduce(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Mismatch) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn t_label(t: i64) -> String {
    match t {
        1 => "L".into(),
        -1 => "-L".into(),
        _ => format!("{t}L"),
    }
}

fn rr(a: RrArgs, out: &mut dyn Write) -> Outcome {
    let fano = match (&a.l_cubed, &a.degree) {
        (Some(l3), _) => NumericalFano::new(a.basket, a.q, l3.clone())?,
        (None, Some(d)) => NumericalFano::from_degree(a.basket, a.q, d)?,
        (None, None) if a.q >= 3 => NumericalFano::from_vanishing(a.basket, a.q)?,
        (None, None) => return Err(Failure::Usage("q <= 2 needs --l-cubed or --degree".into())),
    };
    let ts = if a.t.is_empty() {
        (1..=a.q as i64).collect()
    } else {
        a.t
    };
    let values: Vec<RrValue> = ts
        .iter()
        .map(|&t| {
            let chi = euler_characteristic(&fano, t);
            let dim = (t >= 1 && chi.is_integer() && !chi.is_negative())
                .then(|| chi.to_i64().map(|c| c - 1))
                .flatten();
            RrValue { t, chi, dim }
        })
        .collect();
    let record = RrRecord {
        q: fano.q,
        basket: fano.basket.points().to_vec(),
        degree: fano.minus_k_cubed.clone(),
        l_cubed: fano.l_cubed.clone(),
        kc2: fano.kc2.clone(),
        values,
    };
    match a.format {
        Format::Json => write_json_lines(out, &[record])?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["q", "basket", "degree", "l_cubed", "kc2", "t", "chi", "dim"])?;
            for v in &record.values {
                w.write_record([
                    record.q.to_string(),
                    basket_text(&record.basket),
                    record.degree.to_string(),
                    record.l_cubed.to_string(),
                    record.kc2.to_string(),
                    v.t.to_string(),
                    v.chi.to_string(),
                    v.dim.map(|d| d.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Table => {
            writeln!(
                out,
                "q={} basket=[{}] L^3={} -K^3={} -K.c2={}",
                record.q,
                basket_text(&record.basket),
                record.l_cubed,
                record.degree,
                record.kc2
            )?;
            for v in &record.values {
                let label = t_label(v.t);
                match v.dim {
                    Some(d) => writeln!(out, "chi({label})={} dim|{label}|={d}", v.chi)?,
                    None => writeln!(out, "chi({label})={}", v.chi)?,
                }
            }
        }
    }
    Ok(())
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Outcome {
    let cfg = SearchConfig {
        min_degree: a.min_degree,
        q_min: a.q_min,
        q_max: a.q_max,
        mode: a.mode.into(),
        jobs: a.jobs,
        prune_low_index: a.prune_low_index,
        ..SearchConfig::default()
    };
    let found = if cfg.q_min >= 3 {
        classify_high(&cfg)?
    } else if cfg.q_max == QMax::Fixed(1) || cfg.q_max == QMax::Fixed(2) {
        classify_low(&cfg)?
    } else {
        classify(&cfg)?
    };
    let records: Vec<CandidateRecord> = found.iter().map(CandidateRecord::from).collect();
    match a.format {
        Format::Json => write_json_lines(out, &records)?,
        Format::Csv => candidates_csv(out, &records)?,
        Format::Table => {
            for r in &records {
                let dims: Vec<String> = r.dims.0.iter().map(i64::to_string).collect();
                writeln!(
                    out,
                    "q={:<2} B=[{}] -K^3={} L^3={} -K.c2={} dim|tL|(t=1..q)=[{}] dim|-K|={}",
                    r.q,
                    basket_text(&r.basket),
                    r.degree,
                    r.l_cubed,
                    r.kc2,
                    dims.join(", "),
                    r.antican_dim
                )?;
            }
            writeln!(out, "{} candidates", records.len())?;
        }
    }
    Ok(())
}

fn torsion(a: TorsionArgs, out: &mut dyn Write) -> Outcome {
    let feasible = torsion_feasible(&a.basket)?;
    let record = TorsionRecord {
        basket: a.basket.points().to_vec(),
        feasible,
    };
    match a.format {
        Format::Json => write_json_lines(out, &[record])?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["basket", "feasible"])?;
            w.write_record([a.basket.to_string(), feasible.to_string()])?;
            w.flush()?;
        }
        Format::Table => writeln!(
            out,
            "basket=[{}] torsion assignment feasible: {feasible}",
            a.basket
        )?,
    }
    Ok(())
}

fn wps(a: WpsArgs, out: &mut dyn Write) -> Outcome {
    let records = scan_wps(a.max_weight)
        .iter()
        .map(|row| Ok(WpsRecord::new(row, &wps_basket(&row.weights)?)))
        .collect::<qfano_core::Result<Vec<_>>>()?;
    match a.format {
        Format::Json => write_json_lines(out, &records)?,
        Format::Csv => wps_csv(out, &records)?,
        Format::Table => {
            for r in &records {
                let [a0, a1, a2, a3] = r.weights;
                writeln!(
                    out,
                    "P({a0},{a1},{a2},{a3})  -K^3={}  index={}  dim|-K|={}  basket=[{}]",
                    r.degree,
                    r.index,
                    r.antican_dim,
                    basket_text(&r.basket)
                )?;
            }
            writeln!(out, "{} spaces", records.len())?;
        }
    }
    Ok(())
}

fn reproduce(a: ReproduceArgs, out: &mut dyn Write) -> Outcome {
    if a.format == Format::Csv {
        return Err(Failure::Usage(
            "reproduce supports --format table|json".into(),
        ));
    }
    if a.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let reports = reproduce_check(a.target, a.mode.into(), a.jobs)?;
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    match a.format {
        Format::Json => write_json_lines(out, &records)?,
        _ => {
            for r in &records {
                writeln!(
                    out,
                    "{} {}: {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.target,
                    r.summary
                )?;
                for d in &r.diffs {
                    writeln!(out, "  {d}")?;
                }
            }
        }
    }
    if records.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
