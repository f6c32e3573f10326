use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use indexcode::coding::{
    code_from_cover, decode_receiver, encode, genic_cover, standard_instance, validate_code,
    GenInstance, IndexCode,
};
use indexcode::cover::{cover_digraph, cover_graph, cover_quasiline, format_decimal, CoverError, CoverResult};
use indexcode::graph::Digraph;
use indexcode::instances::{
    self, parse_document, write_code, write_cover, write_digraph, write_instance, Document,
    SplitMix64,
};
use indexcode::oracle::{self, OracleBudget};

mod bench;

#[derive(Parser)]
#[command(name = "indexcode", version, about = "Clique-cover index codes for broadcast with side information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a digraph into cliques.
    Cover {
        #[arg(long, value_enum)]
        mode: CoverMode,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long = "out", value_name = "FILE", default_value = "-")]
        output: PathBuf,
        /// Print the guaranteed approximation factor.
        #[arg(long)]
        emit_bound: bool,
        /// Print every extraction step.
        #[arg(long)]
        trace: bool,
    },
    /// Broadcast bits for a message under a code (or cover).
    Encode {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        /// Message bits as a 0/1 string, symbol 0 leftmost.
        #[arg(long, value_name = "BITS")]
        message: String,
    },
    /// Check that every receiver of an instance can decode.
    #[command(group(ArgGroup::new("method").required(true).args(["structural", "exhaustive", "samples"])))]
    Verify {
        /// Digraph or generalized instance.
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
        /// Code or cover.
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        /// Each receiver needs one XOR set it fully knows apart from its own symbol.
        #[arg(long)]
        structural: bool,
        /// Decodability over all 2^n messages.
        #[arg(long)]
        exhaustive: bool,
        /// Encode and decode N random messages.
        #[arg(long, value_name = "N")]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "samples")]
        seed: u64,
    },
    /// Round-based code for a generalized instance.
    GenicCover {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long = "out", value_name = "FILE", default_value = "-")]
        output: PathBuf,
        #[arg(long)]
        trace: bool,
        /// Drop repeated XOR sets from the output.
        #[arg(long)]
        dedup: bool,
    },
    /// Exact value of a small-instance statistic.
    Oracle {
        #[arg(long, value_enum)]
        stat: Stat,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Refuse instances with more vertices (symbols for mes).
        #[arg(long, value_name = "K")]
        max_n: Option<usize>,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Edge (or side-information) probability.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Receivers, for `--kind genic` (default n).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long = "out", value_name = "FILE", default_value = "-")]
        output: PathBuf,
    },
    /// Compare cover sizes against exact lower bounds on random instances.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = bench::Format::Table)]
        format: bench::Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverMode {
    Digraph,
    Graph,
    Quasiline,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Mais,
    Alpha,
    Omega,
    Cc,
    Mes,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    GnpDigraph,
    GnpGraph,
    Tournament,
    LinegraphComplete,
    KneserComplement,
    Genic,
}

/// Exit status 1: the input was well formed but failed a check.
#[derive(Debug)]
struct Rejected(String);

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Rejected {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Rejected>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Cover { mode, input, output, emit_bound, trace } => {
            run_cover(mode, &input, &output, emit_bound, trace)
        }
        Command::Encode { code, message } => run_encode(&code, &message),
        Command::Verify { instance, code, structural, exhaustive, samples, seed } => {
            let inst = read_instance(&instance)?;
            let code = read_code(&code)?;
            if code.n() != inst.n() {
                bail!("code is over {} symbols, instance has {}", code.n(), inst.n());
            }
            let failing = if structural {
                validate_code(&inst, &code).failing
            } else if exhaustive {
                oracle::exhaustive_failures(&inst, &code, &OracleBudget::verify())?
            } else {
                sampled_failures(&inst, &code, samples.unwrap_or(0), seed)?
            };
            report_failures(&failing)
        }
        Command::GenicCover { input, output, trace, dedup } => {
            let inst = read_instance(&input)?;
            let outcome = genic_cover(&inst);
            let code = if dedup { outcome.code.dedup() } else { outcome.code.clone() };
            let mut out = String::new();
            if trace {
                for (k, r) in outcome.rounds.iter().enumerate() {
                    out.push_str(&format!(
                        "# round {k}: active {} cliques {} bound {} ({})\n",
                        r.symbols.len(),
                        r.cliques,
                        r.bound,
                        format_decimal(&r.bound, 6)
                    ));
                }
                let tail = if outcome.tail.is_empty() { "-".to_string() } else { join(&outcome.tail) };
                out.push_str(&format!("# tail {tail}\n"));
            }
            let sum = outcome.round_bound_sum();
            out.push_str(&format!(
                "# length {} rounds {} bound-sum {} ({}) tail {}\n",
                code.len(),
                outcome.rounds.len(),
                sum,
                format_decimal(&sum, 6),
                outcome.tail.len()
            ));
            emit(&output, &out, &write_code(&code))
        }
        Command::Oracle { stat, input, max_n } => {
            let cap = |b: OracleBudget| match max_n {
                Some(k) => b.with_max_n(k),
                None => b,
            };
            let value = match stat {
                Stat::Mes => oracle::brute_mes(&read_instance(&input)?, &cap(OracleBudget::mes()))?,
                _ => {
                    let g = read_digraph(&input)?;
                    match stat {
                        Stat::Mais => oracle::brute_mais(&g, &cap(OracleBudget::mais()))?,
                        Stat::Alpha => oracle::brute_alpha(&g, &cap(OracleBudget::alpha()))?,
                        Stat::Omega => oracle::brute_omega(&g, &cap(OracleBudget::omega()))?,
                        Stat::Cc => oracle::brute_cc(&g, &cap(OracleBudget::cc()))?,
                        Stat::Mes => unreachable!(),
                    }
                }
            };
            println!("{value}");
            Ok(())
        }
        Command::Gen { kind, n, p, m, seed, output } => {
            let text = match kind {
                GenKind::GnpDigraph => write_digraph(&instances::gen_gnp_digraph(n, p, seed)?),
                GenKind::GnpGraph => write_digraph(&instances::gen_gnp_graph(n, p, seed)?),
                GenKind::Tournament => write_digraph(&instances::gen_tournament(n, seed)),
                GenKind::LinegraphComplete => {
                    let (g, _) = instances::line_graph(&instances::complete_graph(n))?;
                    write_digraph(&g)
                }
                GenKind::KneserComplement => write_digraph(&instances::kneser_complement(n)?),
                GenKind::Genic => write_instance(&instances::gen_genic(n, m.unwrap_or(n), p, seed)?),
            };
            emit(&output, "", &text)
        }
        Command::Bench { suite, n, trials, seed, format } => {
            let rows = bench::run(suite, n, trials, seed)?;
            print!("{}", bench::render(&rows, format));
            Ok(())
        }
    }
}

fn run_cover(mode: CoverMode, input: &PathBuf, output: &PathBuf, emit_bound: bool, trace: bool) -> Result<()> {
    let g = read_digraph(input)?;
    let result: CoverResult = match mode {
        CoverMode::Digraph => cover_digraph(&g),
        CoverMode::Graph => cover_graph(&g).map_err(reject)?,
        CoverMode::Quasiline => cover_quasiline(&g).map_err(reject)?,
    };
    let mut notes = String::new();
    if trace {
        for (k, step) in result.trace.iter().enumerate() {
            let pivot = step.pivot.map_or(String::new(), |u| format!(" pivot {u}"));
            let cliques: Vec<String> = step.cliques.iter().map(|c| format!("{{{}}}", join(c.as_slice()))).collect();
            notes.push_str(&format!(
                "# step {k}:{pivot} cliques {} remaining {}\n",
                cliques.join(" "),
                step.remaining
            ));
        }
    }
    if emit_bound {
        match &result.bound {
            Some(b) => notes.push_str(&format!("# bound {b} ({})\n", format_decimal(b, 6))),
            None => notes.push_str("# bound 2 (times alpha)\n"),
        }
    }
    emit(output, &notes, &write_cover(&result.cover))
}

fn run_encode(code: &PathBuf, message: &str) -> Result<()> {
    let code = read_code(code)?;
    let bits = message
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(anyhow!("message must be a 0/1 string, found `{c}`")),
        })
        .collect::<Result<Vec<bool>>>()?;
    let y = encode(&code, &bits)?;
    println!("{}", bit_string(&y));
    Ok(())
}

/// Encodes random messages and checks each receiver's decoder output.
fn sampled_failures(inst: &GenInstance, code: &IndexCode, samples: u64, seed: u64) -> Result<Vec<usize>> {
    let mut rng = SplitMix64::new(seed);
    let mut failing = vec![false; inst.m()];
    for _ in 0..samples {
        let x: Vec<bool> = (0..inst.n()).map(|_| rng.bernoulli(0.5)).collect();
        let y = encode(code, &x)?;
        for (j, fail) in failing.iter_mut().enumerate() {
            let side: Vec<bool> = inst.side(j).iter().map(|i| x[i]).collect();
            let ok = matches!(decode_receiver(inst, code, j, &y, &side), Ok(b) if b == x[inst.required(j)]);
            *fail |= !ok;
        }
    }
    Ok((0..inst.m()).filter(|&j| failing[j]).collect())
}

fn report_failures(failing: &[usize]) -> Result<()> {
    if failing.is_empty() {
        println!("ok");
        Ok(())
    } else {
        println!("failing receivers: {}", join(failing));
        Err(Rejected(format!("{} receiver(s) cannot decode", failing.len())).into())
    }
}

fn reject(e: CoverError) -> anyhow::Error {
    Rejected(e.to_string()).into()
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_document(path: &PathBuf) -> Result<Document> {
    let text = read_text(path)?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_digraph(path: &PathBuf) -> Result<Digraph> {
    match read_document(path)? {
        Document::Digraph(g) => Ok(g),
        _ => bail!("{}: expected a `digraph` or `graph` file", path.display()),
    }
}

/// A digraph is read as its standard instance (receiver `i` wants symbol `i`).
fn read_instance(path: &PathBuf) -> Result<GenInstance> {
    match read_document(path)? {
        Document::Digraph(g) => Ok(standard_instance(&g)),
        Document::Instance(inst) => Ok(inst),
        _ => bail!("{}: expected a digraph or `genic` instance", path.display()),
    }
}

/// A cover is read as its one-XOR-per-clique code.
fn read_code(path: &PathBuf) -> Result<IndexCode> {
    match read_document(path)? {
        Document::Code(code) => Ok(code),
        Document::Cover(cover) => Ok(code_from_cover(&cover)),
        _ => bail!("{}: expected a `code` or `cover` file", path.display()),
    }
}

/// Writes `body` to `path`; `notes` (comment lines) always go to stdout.
fn emit(path: &PathBuf, notes: &str, body: &str) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    out.write_all(notes.as_bytes())?;
    if path.as_os_str() == "-" {
        out.write_all(body.as_bytes())?;
    } else {
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
