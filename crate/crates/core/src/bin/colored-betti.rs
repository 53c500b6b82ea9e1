use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use colored_betti::betti::{betti_table, zk_cohomology};
use colored_betti::bounds::sharpness_suite;
use colored_betti::coloring::{greedy_coloring, is_nondegenerate, minimum_coloring, Partition};
use colored_betti::complex::{SimplicialComplex, DEFAULT_MAX_VERTICES};
use colored_betti::corpus::{DEFAULT_CORPUS_SEED, RANDOM_CORPUS_MAX_VERTICES, RANDOM_CORPUS_SIZE};
use colored_betti::report::{corpus_members, run_corpus, verify_all};
use colored_betti::tor::{default_weight_bound, psi_iota_checks, quotient_cohomology, tor_dims};
use colored_betti::{Error, FieldSpec};

#[derive(Parser)]
#[command(
    name = "colored-betti",
    version,
    about = "Betti numbers, colored Tor and lower-bound checks for simplicial complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multigraded Betti table via Hochster's formula
    Betti(Common),
    /// Cohomology dimensions of the moment-angle complex
    Zk(Common),
    /// Find or check a vertex coloring
    Color {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        partition: PartitionArgs,
    },
    /// Cohomology dimensions of the quotient by the coloring subtorus
    Quotient {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        partition: PartitionArgs,
    },
    /// Tor table from the colored Koszul complex
    Tor {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        partition: PartitionArgs,
        #[arg(long)]
        weight_bound: Option<u32>,
    },
    /// Tor/cellular/subcomplex comparison plus every lower bound
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        partition: PartitionArgs,
        #[arg(long)]
        weight_bound: Option<u32>,
        /// Also run the generator-level chain-map checks up to this weight bound
        #[arg(long)]
        structural: Option<u32>,
    },
    /// Bounds on a join of boundaries of simplices
    Sharp {
        /// Simplex dimensions n_1 .. n_s
        #[arg(required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify the built-in corpus over Q, GF(2) and GF(3)
    Corpus {
        #[arg(long, default_value_t = DEFAULT_CORPUS_SEED)]
        seed: u64,
        #[arg(long, default_value_t = RANDOM_CORPUS_SIZE)]
        count: usize,
        #[arg(long, default_value_t = RANDOM_CORPUS_MAX_VERTICES)]
        max_m: usize,
        /// Extra field besides q, f2 and f3
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Complex file (`m N` header then `facet ...` lines)
    #[arg(long = "in", value_name = "PATH", conflicts_with = "facets")]
    input: Option<PathBuf>,
    /// Inline facets, comma separated: "1 2, 2 3, 3 1"
    #[arg(long)]
    facets: Option<String>,
    /// Vertex count for --facets (default: largest vertex)
    #[arg(long)]
    m: Option<usize>,
    /// Accept vertices that lie in no facet
    #[arg(long)]
    allow_isolated: bool,
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Vertex cap
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_m: usize,
}

#[derive(Args)]
#[group(multiple = false)]
struct PartitionArgs {
    /// Inline blocks: "1 3 | 2 4"
    #[arg(long)]
    blocks: Option<String>,
    /// Partition file (`blocks 1 3 | 2 4`)
    #[arg(long, value_name = "PATH")]
    blocks_file: Option<PathBuf>,
    #[arg(long)]
    greedy: bool,
    #[arg(long)]
    minimum: bool,
    #[arg(long)]
    trivial: bool,
}

/// Failure of a check (exit 1) or of the input (exit 2).
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MismatchFound { .. } | Error::NotAComplex { .. } => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

impl Common {
    fn complex(&self) -> Result<SimplicialComplex, Failure> {
        let text = match (&self.input, &self.facets) {
            (Some(path), _) => fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(inline)) => facets_to_text(inline, self.m)?,
            (None, None) => {
                return Err(Failure::Input("one of --in or --facets is required".into()))
            }
        };
        Ok(SimplicialComplex::parse_with(
            &text,
            self.max_m,
            self.allow_isolated,
        )?)
    }
}

fn facets_to_text(inline: &str, m: Option<usize>) -> Result<String, Failure> {
    let mut facets = Vec::new();
    for chunk in inline.split(',') {
        let mut f = Vec::new();
        for t in chunk.split_whitespace() {
            let v: usize = t
                .parse()
                .map_err(|_| Failure::Input(format!("ParseError: bad vertex `{t}` in --facets")))?;
            f.push(v);
        }
        if !f.is_empty() {
            facets.push(f);
        }
    }
    let m = m.unwrap_or_else(|| facets.iter().flatten().copied().max().unwrap_or(0));
    let mut text = format!("m {m}\n");
    for f in facets {
        let verts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        text.push_str(&format!("facet {}\n", verts.join(" ")));
    }
    Ok(text)
}

impl PartitionArgs {
    fn given(&self) -> bool {
        self.blocks.is_some()
            || self.blocks_file.is_some()
            || self.greedy
            || self.minimum
            || self.trivial
    }

    fn partition(&self, k: &SimplicialComplex) -> Result<Partition, Failure> {
        let m = k.vertex_count();
        if let Some(b) = &self.blocks {
            return Ok(Partition::parse(m, b)?);
        }
        if let Some(path) = &self.blocks_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            return Ok(Partition::parse(m, &text)?);
        }
        if self.minimum {
            return Ok(minimum_coloring(k)?);
        }
        if self.trivial {
            return Ok(Partition::trivial(m));
        }
        if self.greedy {
            return Ok(greedy_coloring(k));
        }
        Err(Failure::Input(
            "one of --blocks, --blocks-file, --greedy, --minimum, --trivial is required".into(),
        ))
    }
}

fn render(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serialisable"),
        Format::Text => text,
    }
}

fn dims_text(dims: &BTreeMap<usize, u64>) -> String {
    dims.iter().map(|(q, d)| format!("H^{q} = {d}\n")).collect()
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Betti(c) => {
            let k = c.complex()?;
            let table = betti_table(&k, c.field)?;
            let text = table
                .iter()
                .map(|(i, w, b)| format!("beta_{{{i},{w}}} = {b}\n"))
                .collect();
            Ok((render(c.format, &table.to_json(), text), true))
        }
        Command::Zk(c) => {
            let k = c.complex()?;
            let zk = zk_cohomology(&k, c.field)?;
            let ok = zk.agree();
            let value = json!({ "field": c.field.to_string(), "dims": zk.by_subcomplexes, "by_betti": zk.by_betti, "total": zk.total(), "agree": ok });
            Ok((render(c.format, &value, dims_text(&zk.by_subcomplexes)), ok))
        }
        Command::Color { common, partition } => {
            let k = common.complex()?;
            let alpha = if partition.given() {
                partition.partition(&k)?
            } else {
                minimum_coloring(&k)?
            };
            let ok = is_nondegenerate(&k, &alpha)?;
            let value = json!({
                "blocks": alpha.blocks().iter().map(|b| b.to_vec()).collect::<Vec<_>>(),
                "r": alpha.block_count(),
                "nondegenerate": ok,
                "text": alpha.to_text(),
            });
            let text = format!(
                "{}\nr={}\nnondegenerate={}\n",
                alpha.to_text(),
                alpha.block_count(),
                ok
            );
            Ok((render(common.format, &value, text), ok))
        }
        Command::Quotient { common, partition } => {
            let k = common.complex()?;
            let alpha = partition.partition(&k)?;
            let qc = quotient_cohomology(&k, &alpha, common.field)?;
            let ok = qc.agree();
            let value = json!({ "field": common.field.to_string(), "dims": qc.cellular, "routes": qc, "agree": ok });
            Ok((render(common.format, &value, dims_text(&qc.cellular)), ok))
        }
        Command::Tor {
            common,
            partition,
            weight_bound,
        } => {
            let k = common.complex()?;
            let alpha = partition.partition(&k)?;
            let bound = weight_bound.unwrap_or_else(|| default_weight_bound(&k, &alpha));
            let table = tor_dims(&k, &alpha, common.field, bound)?;
            if !table.all_stabilized() {
                log::warn!("StabilizationNotReached: outer weight shells still contribute at bound {bound}");
            }
            let mut text: String = table
                .iter()
                .map(|(q, l, d)| format!("Tor_{{{q},{l}}} = {d}\n"))
                .collect();
            text.push_str(&format!(
                "weight bound {bound}, stabilized {}\n",
                table.all_stabilized()
            ));
            Ok((render(common.format, &table.to_json(), text), true))
        }
        Command::Verify {
            common,
            partition,
            weight_bound,
            structural,
        } => {
            let k = common.complex()?;
            let alpha = partition.partition(&k)?;
            let report = verify_all(&k, &alpha, common.field, weight_bound)?;
            let mut ok = report.pass;
            let mut value = serde_json::to_value(&report).expect("serialisable");
            let mut text = report.to_text();
            if let Some(b) = structural {
                let s = psi_iota_checks(&k, &alpha, common.field, b)?;
                ok &= s.pass();
                text.push_str(&format!(
                    "structural checks (bound {b}) {}\n",
                    if s.pass() { "pass" } else { "FAIL" }
                ));
                value["structural"] = serde_json::to_value(&s).expect("serialisable");
            }
            value["pass"] = json!(ok);
            Ok((render(common.format, &value, text), ok))
        }
        Command::Sharp {
            dims,
            field,
            format,
        } => {
            let rep = sharpness_suite(&dims, field)?;
            let text = format!(
                "join of boundaries {:?}: m {} dim {} sharp {}\n{}{}",
                rep.dims,
                rep.m,
                rep.dimension,
                rep.sharp,
                rep.caolu.to_text(),
                rep.ustinovskii.to_text()
            );
            let value = serde_json::to_value(&rep).expect("serialisable");
            Ok((render(format, &value, text), rep.sharp))
        }
        Command::Corpus {
            seed,
            count,
            max_m,
            field,
            format,
        } => {
            let members = corpus_members(seed, count, max_m)?;
            let mut fields = vec![
                FieldSpec::Rationals,
                FieldSpec::PrimeField(2),
                FieldSpec::PrimeField(3),
            ];
            if let Some(f) = field {
                if !fields.contains(&f) {
                    fields.push(f);
                }
            }
            let summaries = run_corpus(&members, &fields);
            let ok = summaries.iter().all(|s| s.pass);
            let failed = summaries.iter().filter(|s| !s.pass).count();
            let out = match format {
                Format::Json => {
                    let mut lines: Vec<String> = summaries
                        .iter()
                        .map(|s| serde_json::to_string(s).expect("serialisable"))
                        .collect();
                    lines.push(json!({"seed": seed, "members": summaries.len(), "failed": failed, "pass": ok}).to_string());
                    lines.join("\n")
                }
                Format::Text => {
                    let mut lines: Vec<String> = summaries
                        .iter()
                        .map(|s| {
                            let mut line = format!(
                                "{:>4} {:<40} m={} dim={} {}",
                                s.index,
                                s.name,
                                s.m,
                                s.dimension,
                                if s.pass { "pass" } else { "FAIL" }
                            );
                            if let Some(f) = s.checks.iter().find_map(|c| c.failure.as_ref()) {
                                line.push_str(&format!("  {f}"));
                            }
                            line
                        })
                        .collect();
                    lines.push(format!("{} members, {} failed", summaries.len(), failed));
                    lines.join("\n")
                }
            };
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
