use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use asymstream::harness::{
    cmd_gen, cmd_lcs, cmd_match, cmd_wildcard, run_bench, write_csv, write_report, BenchConfig,
    Common, GenKind, GenParams, LcsMode, LcsOptions, OracleKind, RunReport, StreamSource, Suite,
    WildcardOptions, DEFAULT_SEED,
};

/// String matching with one string streamed and the other read at random.
#[derive(Parser)]
#[command(name = "asymstream", version, about)]
struct Cli {
    /// Seed for modulus selection and generators.
    #[arg(long, env = "ASYMSTREAM_SEED", default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Draw the fingerprint modulus from (2^(b-1), 2^b] instead of sizing it from n.
    #[arg(long, global = true)]
    modulus_bits: Option<u32>,
    /// Confirm every fingerprint agreement against the text.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Print only the JSON report; skip the summary on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall_time_ms as 0 so repeated runs print identical reports.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Leftmost occurrence of a streamed pattern in the text.
    Match {
        text: PathBuf,
        /// Pattern file, or `-` for standard input.
        #[arg(default_value = "-")]
        pattern: String,
    },
    /// Longest common substring of the text and a streamed string.
    Lcs {
        text: PathBuf,
        /// Stream file, or `-` for standard input (exact mode only).
        #[arg(default_value = "-")]
        stream: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: LcsMode,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
    },
    /// Pattern with wildcards, searched in O(s) words of working space.
    Wildcard {
        text: PathBuf,
        pattern: PathBuf,
        /// Space budget s; defaults to ceil(sqrt(n)).
        #[arg(long)]
        space_budget: Option<usize>,
        #[arg(long, value_enum, default_value = "ntt")]
        oracle: OracleKind,
        /// Wildcard byte in the pattern file: a character or a number.
        #[arg(long, value_parser = parse_byte, default_value = "?")]
        wildcard_byte: u8,
    },
    /// Write a seeded instance and its truth sidecar.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Pattern or stream length; 0 means n for planted-lcs.
        #[arg(long, default_value_t = 100)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, default_value_t = 7)]
        period: usize,
        /// Planted block length.
        #[arg(long, default_value_t = 32)]
        length: usize,
        #[arg(long, default_value_t = 4)]
        kk: usize,
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Wildcard positions, comma separated.
        #[arg(long, value_delimiter = ',')]
        wild: Vec<usize>,
    },
    /// Time a grid of sizes and print CSV.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        /// Comma separated sizes; the wildcard suite uses the first.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Comma separated space budgets for the wildcard suite.
        #[arg(long, value_delimiter = ',')]
        budgets: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_byte(s: &str) -> Result<u8, String> {
    let b = s.as_bytes();
    if b.len() == 1 {
        return Ok(b[0]);
    }
    let parsed = match s.strip_prefix("0x") {
        Some(hex) => u8::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("expected one character or a byte value, got {s:?}"))
}

fn emit(report: &RunReport, quiet: bool) -> anyhow::Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    write_report(&mut out, report)?;
    out.flush()?;
    if !quiet {
        eprintln!("{}", report.summary());
    }
    Ok(ExitCode::from(report.exit_code()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let common = Common {
        seed: cli.seed,
        modulus_bits: cli.modulus_bits,
        deterministic: cli.deterministic,
        timing: !cli.no_timing,
    };
    match cli.cmd {
        Cmd::Match { text, pattern } => {
            let r = cmd_match(&text, &StreamSource::from_arg(&pattern), &common)?;
            emit(&r, cli.json)
        }
        Cmd::Lcs {
            text,
            stream,
            mode,
            epsilon,
            kappa,
        } => {
            let opts = LcsOptions { mode, epsilon, kappa };
            let r = cmd_lcs(&text, &StreamSource::from_arg(&stream), &opts, &common)?;
            emit(&r, cli.json)
        }
        Cmd::Wildcard {
            text,
            pattern,
            space_budget,
            oracle,
            wildcard_byte,
        } => {
            let opts = WildcardOptions {
                space_budget,
                oracle,
                wildcard_byte,
            };
            let r = cmd_wildcard(&text, &pattern, &opts, &common)?;
            emit(&r, cli.json)
        }
        Cmd::Gen {
            kind,
            out,
            n,
            m,
            sigma,
            period,
            length,
            kk,
            i,
            wild,
        } => {
            let params = GenParams {
                n,
                m,
                sigma,
                period,
                length,
                kk,
                i,
                wild,
            };
            let g = cmd_gen(kind, &params, cli.seed, &out)?;
            println!("{}", serde_json::to_string(&g.sidecar)?);
            if !cli.json {
                eprintln!(
                    "wrote {}, {}, {}",
                    g.text.display(),
                    g.pattern.display(),
                    g.truth.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench {
            suite,
            sizes,
            budgets,
            repetitions,
            out,
        } => {
            let cfg = BenchConfig {
                suite,
                sizes,
                budgets,
                repetitions,
                seed: cli.seed,
            };
            let rows = run_bench(&cfg);
            match out {
                Some(path) => {
                    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(BufWriter::new(f), &rows)?;
                }
                None => write_csv(io::stdout().lock(), &rows)?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
