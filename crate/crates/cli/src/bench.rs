//! Seeded ratio benchmarks: cover size against an exact lower bound.

use anyhow::Result;
use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;

use indexcode::coding::{ceil_sqrt, genic_cover};
use indexcode::cover::{cover_digraph, cover_graph, cover_quasiline, format_decimal};
use indexcode::instances::{gen_genic, gen_gnp_digraph, gen_gnp_graph, line_graph, SplitMix64};
use indexcode::oracle::{brute_alpha, brute_mais, brute_mes, OracleBudget};

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    DigraphRatio,
    GraphRatio,
    QuasilineRatio,
    Genic,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
}

/// Edge probabilities, cycled by trial index.
const PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

pub struct Row {
    pub id: usize,
    pub seed: u64,
    pub vertices: usize,
    pub size: usize,
    pub lower: usize,
    pub guaranteed: BigRational,
}

impl Row {
    fn ratio(&self) -> String {
        if self.lower == 0 {
            "-".into()
        } else {
            format_decimal(&ratio(self.size, self.lower), 4)
        }
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn int(a: usize) -> BigRational {
    ratio(a, 1)
}

fn trial(suite: Suite, n: usize, id: usize, seed: u64) -> Result<Row> {
    let p = PROBABILITIES[id % PROBABILITIES.len()];
    let (vertices, size, lower, guaranteed) = match suite {
        Suite::DigraphRatio => {
            let g = gen_gnp_digraph(n, p, seed)?;
            let res = cover_digraph(&g);
            let mais = brute_mais(&g, &OracleBudget::mais())?;
            (n, res.len(), mais, res.bound.expect("digraph cover has a bound") * int(mais))
        }
        Suite::GraphRatio => {
            let g = gen_gnp_graph(n, p, seed)?;
            let res = cover_graph(&g)?;
            let alpha = brute_alpha(&g, &OracleBudget::alpha())?;
            (n, res.len(), alpha, res.bound.expect("graph cover has a bound") * int(alpha))
        }
        Suite::QuasilineRatio => {
            let (g, _) = line_graph(&gen_gnp_graph(n, p, seed)?)?;
            let res = cover_quasiline(&g)?;
            let alpha = brute_alpha(&g, &OracleBudget::alpha().with_max_n(64))?;
            (g.n(), res.len(), alpha, int(2 * alpha))
        }
        Suite::Genic => {
            let inst = gen_genic(n, n + n / 2, p, seed)?;
            let out = genic_cover(&inst);
            let mes = brute_mes(&inst, &OracleBudget::mes())?;
            let bound = out.round_bound_sum() * int(mes) + int(ceil_sqrt(n));
            (n, out.code.len(), mes, bound)
        }
    };
    Ok(Row { id, seed, vertices, size, lower, guaranteed })
}

/// Runs `trials` instances; trial `k` uses the `k`-th output of a SplitMix64
/// stream seeded with `seed`. Trials run on worker threads but rows come back
/// in trial order.
pub fn run(suite: Suite, n: usize, trials: usize, seed: u64) -> Result<Vec<Row>> {
    let mut rng = SplitMix64::new(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.next_u64()).collect();
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(trials.max(1));
    let chunk = trials.div_ceil(workers).max(1);
    let results: Vec<Result<Vec<Row>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(k, &s)| trial(suite, n, c * chunk + k, s))
                        .collect::<Result<Vec<Row>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    let mut rows = Vec::with_capacity(trials);
    for part in results {
        rows.extend(part?);
    }
    Ok(rows)
}

const HEADER: [&str; 7] = ["id", "seed", "n", "cover", "lower", "guaranteed", "ratio"];

pub fn render(rows: &[Row], format: Format) -> String {
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.id.to_string(),
                r.seed.to_string(),
                r.vertices.to_string(),
                r.size.to_string(),
                r.lower.to_string(),
                format_decimal(&r.guaranteed, 4),
                r.ratio(),
            ]
        })
        .collect();
    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push_str(&HEADER.join("\t"));
            out.push('\n');
            for row in &cells {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
        Format::Table => {
            let mut width: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> =
                    fields.iter().zip(&width).map(|(f, &w)| format!("{f:>w$}")).collect();
                padded.join("  ") + "\n"
            };
            out.push_str(&line(HEADER.to_vec()));
            for row in &cells {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
            let worst = rows
                .iter()
                .filter(|r| r.lower > 0)
                .map(|r| ratio(r.size, r.lower))
                .max();
            if let Some(w) = worst {
                out.push_str(&format!("# worst ratio {}\n", format_decimal(&w, 4)));
            }
        }
    }
    out
}
