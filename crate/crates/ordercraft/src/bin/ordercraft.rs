//! Command-line facade over the ordercraft library: build and inspect
//! posets, run the derived constructions, exercise barrier combinatorics,
//! decide coverability queries and execute the property suites.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ordercraft::barrier::{
    barrier_square, choice_refine, classify_sequence, dichotomy, encode_block,
    successive_sequence, DichotomyTag,
};
use ordercraft::construct::{domination_order, lex_sum, product, rado_truncation};
use ordercraft::cover::{backward_cover, replay};
use ordercraft::downsets::downset_lattice;
use ordercraft::ds::{ds_fragment, singleton_sum_iso};
use ordercraft::error::{Error, Result};
use ordercraft::io::{
    barrier_to_json, parse_barrier, parse_barrier_seq, parse_block, parse_coloring, parse_family,
    parse_marking, parse_net, parse_poset, poset_to_dot, poset_to_json,
};
use ordercraft::poset::Poset;
use ordercraft::seq::seq_embed_order;
use ordercraft::structure::{antichain_rank, check_decomposition, decompose};
use ordercraft::suite::{run_suites, SuiteConfig, SuiteName};
use ordercraft::DEFAULT_CAP;

const EXIT_HELP: &str = "exit codes:
  0  success
  2  parse error in an input file or argument
  3  invariant violation (cycles, mismatched families, missing blocks, ...)
  4  size or iteration cap exceeded
  5  property-suite failure";

#[derive(Parser)]
#[command(name = "ordercraft", version, about = "Finite-scale order-theory workbench", after_help = EXIT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input file (defaults to stdin)
    #[arg(long)]
    input: Option<String>,
    /// Output file (defaults to stdout)
    #[arg(long)]
    output: Option<String>,
    /// Element-count cap for exponential constructions
    /// (default 2^20, overridden by ORDERCRAFT_CAP)
    #[arg(long)]
    cap: Option<usize>,
    /// Human-readable tables instead of JSON where applicable
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build, inspect and export posets
    Poset {
        #[command(subcommand)]
        cmd: PosetCmd,
    },
    /// Derived order constructions
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// Barrier combinatorics
    Barrier {
        #[command(subcommand)]
        cmd: BarrierCmd,
    },
    /// Backward coverability for guarded vector addition systems
    Cover {
        #[command(flatten)]
        io: IoArgs,
        /// Initial marking, comma separated
        #[arg(long)]
        init: String,
        /// Target marking, comma separated
        #[arg(long)]
        target: String,
        /// Iteration safety cap for the backward fixpoint
        #[arg(long, default_value_t = 100_000)]
        iterations: usize,
    },
    /// Run the property suites
    Suite {
        /// all, core, ds, barriers, structure or cover
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per property
        #[arg(long, default_value_t = 40)]
        budget: usize,
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Validate and normalize a poset file
    Build {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Minimals, width, antichain rank and cones
    Analyze {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Hasse diagram in DOT
    Dot {
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    /// Coordinatewise product of two posets
    Product {
        #[command(flatten)]
        io: IoArgs,
        /// Right-hand poset file
        #[arg(long)]
        rhs: String,
    },
    /// Lexicographic sum of parts along an index poset
    Lexsum {
        #[command(flatten)]
        io: IoArgs,
        /// Part poset files, one per index element in id order
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
    },
    /// Materialize a Dress-Schiffels fragment from a family file
    Ds {
        #[command(flatten)]
        io: IoArgs,
        /// Per-coordinate element caps, comma separated (default: whole components)
        #[arg(long)]
        caps: Option<String>,
        /// Emit the singleton-support correspondence instead of the fragment
        #[arg(long)]
        singletons: bool,
    },
    /// Domination order on subsets, by canonical antichain classes
    Powerdom {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Lattice of down-sets under inclusion
    Downsets {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Bounded-length sequences under embeddability
    Seqembed {
        #[command(flatten)]
        io: IoArgs,
        /// Maximum sequence length
        #[arg(long)]
        len: usize,
    },
    /// Rado's order truncated to pairs within {0..N}
    Rado {
        #[command(flatten)]
        io: IoArgs,
        n: u32,
    },
}

#[derive(Subcommand)]
enum BarrierCmd {
    /// The square of a barrier
    Square {
        #[command(flatten)]
        io: IoArgs,
    },
    /// The unique successive sequence between separated blocks
    Successive {
        #[command(flatten)]
        io: IoArgs,
        /// Starting block, canonical encoding (e.g. "3,7")
        #[arg(long)]
        from: String,
        /// Final block
        #[arg(long)]
        to: String,
    },
    /// Classify a barrier array as good or bad, with the perfect flag
    Classify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Extract a homogeneous sub-barrier tagged BAD or PERFECT
    Dichotomy {
        #[command(flatten)]
        io: IoArgs,
        /// Minimum base points of the extracted sub-barrier
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Choice-lemma refinement of a square colouring
    Refine {
        #[command(flatten)]
        io: IoArgs,
        /// JSON map square-block -> value
        #[arg(long)]
        g: String,
        /// JSON map block -> list of admissible values
        #[arg(long)]
        beta: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read_input(path: &Option<String>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{p}: {e}"))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<String>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| Error::Parse(format!("{p}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn effective_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("ORDERCRAFT_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_CAP)
}

fn json_out(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Poset { cmd } => run_poset(cmd)?,
        Command::Order { cmd } => run_order(cmd)?,
        Command::Barrier { cmd } => run_barrier(cmd)?,
        Command::Cover {
            io,
            init,
            target,
            iterations,
        } => {
            let v = parse_net(&read_input(&io.input)?)?;
            let init = parse_marking(&init)?;
            let target = parse_marking(&target)?;
            let outcome = backward_cover(&v, &init, &target, iterations)?;
            let trace = outcome
                .firing
                .as_ref()
                .map(|f| replay(&v, &init, f))
                .transpose()?;
            let doc = json!({
                "verdict": outcome.verdict,
                "basis": outcome.basis,
                "firing": outcome.firing,
                "markings": trace,
                "iterations": outcome.iterations,
            });
            write_output(&io.output, &json_out(&doc))?;
        }
        Command::Suite {
            name,
            seed,
            budget,
            output,
            pretty,
        } => {
            let names = SuiteName::parse(&name)?;
            let started = std::time::Instant::now();
            let report = run_suites(
                &names,
                &SuiteConfig {
                    seed,
                    budget,
                    mutation: None,
                },
            );
            if pretty {
                let elapsed = started.elapsed();
                let mut table = String::new();
                for suite in &report.suites {
                    table.push_str(&format!("suite {}\n", suite.suite));
                    for p in &suite.properties {
                        table.push_str(&format!(
                            "  {:<34} {} (seed {})\n",
                            p.name,
                            if p.passed { "pass" } else { "FAIL" },
                            p.seed
                        ));
                        if let Some(cx) = &p.counterexample {
                            table.push_str(&format!("    counterexample: {cx}\n"));
                        }
                    }
                }
                table.push_str(&format!("elapsed: {elapsed:?}\n"));
                write_output(&output, &table)?;
            } else {
                write_output(&output, &report.to_json())?;
            }
            if !report.passed() {
                return Ok(ExitCode::from(5));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_poset(cmd: PosetCmd) -> Result<()> {
    match cmd {
        PosetCmd::Build { io } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            write_output(&io.output, &poset_to_json(&p))
        }
        PosetCmd::Analyze { io } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            let cap = effective_cap(io.cap);
            let all: Vec<usize> = p.elements().collect();
            let minimals: Vec<&str> = p.minimals(&all)?.iter().map(|&x| p.label(x)).collect();
            let rank = antichain_rank(&p, cap)?;
            let decomposition = decompose(&p, true);
            let verifier = check_decomposition(&p, &decomposition);
            let cones: BTreeMap<&str, serde_json::Value> = p
                .elements()
                .map(|q| {
                    let c = p.cones(q).expect("q in range");
                    (
                        p.label(q),
                        json!({
                            "parallel": c.parallel.iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
                            "perp": c.perp.iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
                        }),
                    )
                })
                .collect();
            let doc = json!({
                "elements": p.len(),
                "width": p.width(),
                "antichain_rank": rank,
                "minimals": minimals,
                "cones": cones,
                "decomposition": {
                    "spine": decomposition.spine.iter().map(|&x| p.label(x)).collect::<Vec<_>>(),
                    "blocks": decomposition
                        .blocks
                        .iter()
                        .map(|z| z.iter().map(|&x| p.label(x)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "verifier": verifier,
                },
            });
            if io.pretty {
                let text = format!(
                    "elements: {}\nwidth: {}\nantichain rank: {}\nminimals: {}\nblocks (coalesced): {}\n",
                    p.len(),
                    p.width(),
                    rank,
                    minimals.join(", "),
                    decomposition.blocks.len(),
                );
                write_output(&io.output, &text)
            } else {
                write_output(&io.output, &json_out(&doc))
            }
        }
        PosetCmd::Dot { io } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            write_output(&io.output, &poset_to_dot(&p))
        }
    }
}

fn run_order(cmd: OrderCmd) -> Result<()> {
    match cmd {
        OrderCmd::Product { io, rhs } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            let q = parse_poset(&read_input(&Some(rhs))?)?;
            let out = product(&p, &q, effective_cap(io.cap))?;
            write_output(&io.output, &poset_to_json(&out))
        }
        OrderCmd::Lexsum { io, parts } => {
            let index = parse_poset(&read_input(&io.input)?)?;
            let parts: Vec<Poset> = parts
                .into_iter()
                .map(|p| parse_poset(&read_input(&Some(p))?))
                .collect::<Result<_>>()?;
            let out = lex_sum(&index, &parts, effective_cap(io.cap))?;
            write_output(&io.output, &poset_to_json(&out))
        }
        OrderCmd::Ds {
            io,
            caps,
            singletons,
        } => {
            let fam = parse_family(&read_input(&io.input)?)?;
            let cap = effective_cap(io.cap);
            if singletons {
                let iso = singleton_sum_iso(&fam, cap)?;
                let doc = json!({
                    "source": serde_json::from_str::<serde_json::Value>(
                        &poset_to_json(&iso.map.source))
                        .expect("poset json"),
                    "target": serde_json::from_str::<serde_json::Value>(
                        &poset_to_json(&iso.map.target))
                        .expect("poset json"),
                    "assignment": iso.map.assignment,
                    "order_preserving": iso.map.is_order_preserving(),
                    "order_generating": iso.map.is_order_generating(),
                });
                return write_output(&io.output, &json_out(&doc));
            }
            let coord_caps = match caps {
                None => fam.full_caps(),
                Some(text) => text
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("cap {c:?}: {e}")))
                    })
                    .collect::<Result<_>>()?,
            };
            let frag = ds_fragment(&fam, &coord_caps, cap)?;
            write_output(&io.output, &poset_to_json(&frag.poset))
        }
        OrderCmd::Powerdom { io } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            let d = domination_order(&p, effective_cap(io.cap))?;
            write_output(&io.output, &poset_to_json(&d.poset))
        }
        OrderCmd::Downsets { io } => {
            let p = parse_poset(&read_input(&io.input)?)?;
            let l = downset_lattice(&p, effective_cap(io.cap))?;
            write_output(&io.output, &poset_to_json(&l.poset))
        }
        OrderCmd::Seqembed { io, len } => {
            let p = Arc::new(parse_poset(&read_input(&io.input)?)?);
            let ord = seq_embed_order(&p, len, effective_cap(io.cap))?;
            write_output(&io.output, &poset_to_json(&ord.poset))
        }
        OrderCmd::Rado { io, n } => {
            let p = rado_truncation(n)?;
            write_output(&io.output, &poset_to_json(&p))
        }
    }
}

fn run_barrier(cmd: BarrierCmd) -> Result<()> {
    match cmd {
        BarrierCmd::Square { io } => {
            let b = parse_barrier(&read_input(&io.input)?)?;
            let sq = barrier_square(&b)?;
            write_output(&io.output, &barrier_to_json(&sq))
        }
        BarrierCmd::Successive { io, from, to } => {
            let b = parse_barrier(&read_input(&io.input)?)?;
            let seq = successive_sequence(&b, &parse_block(&from)?, &parse_block(&to)?)?;
            let doc = json!(seq.iter().map(|blk| encode_block(blk)).collect::<Vec<_>>());
            write_output(&io.output, &json_out(&doc))
        }
        BarrierCmd::Classify { io } => {
            let f = parse_barrier_seq(&read_input(&io.input)?)?;
            let c = classify_sequence(&f);
            let doc = json!({
                "verdict": if c.is_good() { "GOOD" } else { "BAD" },
                "witness": c.witness.map(|(s, t)| (encode_block(&s), encode_block(&t))),
                "perfect": c.perfect,
            });
            write_output(&io.output, &json_out(&doc))
        }
        BarrierCmd::Dichotomy { io, size } => {
            let f = parse_barrier_seq(&read_input(&io.input)?)?;
            let (sub, tag) = dichotomy(&f, size)?;
            let doc = json!({
                "tag": match tag {
                    DichotomyTag::Bad => "BAD",
                    DichotomyTag::Perfect => "PERFECT",
                },
                "base": sub.base(),
                "blocks": sub.blocks(),
            });
            write_output(&io.output, &json_out(&doc))
        }
        BarrierCmd::Refine { io, g, beta } => {
            let b = parse_barrier(&read_input(&io.input)?)?;
            let g_map = parse_coloring(&read_input(&Some(g))?)?;
            let beta_raw: BTreeMap<String, Vec<String>> =
                serde_json::from_str(&read_input(&Some(beta))?)
                    .map_err(|e| Error::Parse(e.to_string()))?;
            let beta_map = beta_raw
                .into_iter()
                .map(|(k, v)| Ok((parse_block(&k)?, v.into_iter().collect())))
                .collect::<Result<BTreeMap<_, _>>>()?;
            let (sub, choice) = choice_refine(&b, &g_map, &beta_map)?;
            let doc = json!({
                "base": sub.base(),
                "blocks": sub.blocks(),
                "choice": choice
                    .iter()
                    .map(|(k, v)| (encode_block(k), v.clone()))
                    .collect::<BTreeMap<String, String>>(),
            });
            write_output(&io.output, &json_out(&doc))
        }
    }
}
