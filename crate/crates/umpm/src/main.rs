//! Command-line front end: every library capability behind one subcommand
//! each, with human-readable output by default and `--json` for tooling.
//!
//! Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
//! All vertex labels in input and output are 1-based.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use itertools::Itertools;
use serde_json::json;

use umpm::{
    build_extremal, canonical_form, complement_swap_variants, count_perfect_matchings,
    cyclic_covering, enumerate_perfect_matchings, exhaustive_max, f_telescoped, f_theorem,
    incidence_stats, BlockFamily, Error, Hypergraph, TypeVector,
};

#[derive(Parser)]
#[command(
    name = "umpm",
    version,
    about = "Extremal k-uniform hypergraphs with a unique perfect matching"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximum edge count f(k, m).
    Formula {
        /// Uniformity (k >= 2).
        #[arg(long)]
        k: usize,
        /// Number of matching blocks.
        #[arg(long)]
        m: usize,
        /// Evaluate both the closed form and the recurrence and check that
        /// they agree.
        #[arg(long)]
        both: bool,
    },
    /// Print the stratum coefficient b(k, l).
    Coeff {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Build the extremal graph and write it in .khg format.
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Write the .khg here instead of stdout (the edge count is then
        /// printed instead).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count the perfect matchings of a .khg file.
    Count {
        file: PathBuf,
        /// Stop counting at this many matchings.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Check that a .khg file has exactly one perfect matching.
    VerifyUnique { file: PathBuf },
    /// Print the stratification of a .khg file against its unique matching.
    Stratify { file: PathBuf },
    /// Print covering statistics for l canonical blocks and one type vector.
    Coverings {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Comma-separated intersection sizes, e.g. 2,1 (sorted if needed).
        #[arg(long = "type")]
        type_parts: String,
    },
    /// Exhaustively verify tightness of the bound for small (k, m).
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Allow (k, m) outside the fast default set. May run very long.
        #[arg(long)]
        force: bool,
    },
    /// Write all complement-swap variants of the two-block extremal graph.
    SwapVariants {
        #[arg(long)]
        k: usize,
        /// Directory to write one .khg per variant into.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Formula { k, m, both } => formula(*k, *m, *both, cli.json),
        Command::Coeff { k, l } => coeff(*k, *l, cli.json),
        Command::Construct { k, m, output } => construct(*k, *m, output.as_deref(), cli.json),
        Command::Count { file, cap } => count(file, *cap, cli.json),
        Command::VerifyUnique { file } => verify_unique(file, cli.json),
        Command::Stratify { file } => stratify(file, cli.json),
        Command::Coverings { k, l, type_parts } => coverings(*k, *l, type_parts, cli.json),
        Command::Search {
            k,
            m,
            report,
            force,
        } => search(*k, *m, report.as_deref(), *force, cli.json),
        Command::SwapVariants { k, output } => swap_variants(*k, output.as_deref(), cli.json),
    }
}

/// Formats blocks like "1 2 3 / 4 5 6" (1-based).
fn blocks_line(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(|v| v + 1).join(" "))
        .join(" / ")
}

/// Blocks as nested 1-based arrays for JSON.
fn blocks_json(blocks: &[Vec<usize>]) -> serde_json::Value {
    json!(blocks
        .iter()
        .map(|b| b.iter().map(|v| v + 1).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn formula(k: usize, m: usize, both: bool, as_json: bool) -> Result<ExitCode, Error> {
    let theorem = f_theorem(k, m)?;
    if both {
        let telescoped = f_telescoped(k, m)?;
        if theorem != telescoped {
            return Err(Error::domain(
                "formula",
                format!("closed form {theorem} disagrees with recurrence {telescoped}"),
            ));
        }
        if as_json {
            println!(
                "{}",
                json!({
                    "k": k,
                    "m": m,
                    "theorem": theorem.to_string(),
                    "telescoped": telescoped.to_string(),
                    "equal": true,
                })
            );
        } else {
            println!("theorem    {theorem}");
            println!("telescoped {telescoped}");
        }
    } else if as_json {
        println!(
            "{}",
            json!({ "k": k, "m": m, "value": theorem.to_string() })
        );
    } else {
        println!("{theorem}");
    }
    Ok(ExitCode::SUCCESS)
}

fn coeff(k: usize, l: usize, as_json: bool) -> Result<ExitCode, Error> {
    let b = umpm::coeff_b(k, l)?;
    if as_json {
        println!("{}", json!({ "k": k, "l": l, "value": b.to_string() }));
    } else {
        println!("{b}");
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(k: usize, m: usize, output: Option<&Path>, as_json: bool) -> Result<ExitCode, Error> {
    let w = build_extremal(k, m)?;
    let khg = w.hypergraph.to_khg();
    if let Some(path) = output {
        std::fs::write(path, &khg)?;
    }
    if as_json {
        println!(
            "{}",
            json!({
                "k": k,
                "m": m,
                "n": w.hypergraph.n(),
                "edges": w.hypergraph.edge_count(),
                "path": output.map(|p| p.display().to_string()),
            })
        );
    } else if output.is_some() {
        println!("{}", w.hypergraph.edge_count());
    } else {
        print!("{khg}");
    }
    Ok(ExitCode::SUCCESS)
}

fn read_khg(path: &Path) -> Result<Hypergraph, Error> {
    Hypergraph::from_khg(&std::fs::read_to_string(path)?)
}

fn count(file: &Path, cap: Option<u64>, as_json: bool) -> Result<ExitCode, Error> {
    let h = read_khg(file)?;
    let c = count_perfect_matchings(&h, cap)?;
    if as_json {
        println!("{}", json!({ "count": c.value, "capped": c.capped }));
    } else if c.capped {
        println!("{} (capped)", c.value);
    } else {
        println!("{}", c.value);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_unique(file: &Path, as_json: bool) -> Result<ExitCode, Error> {
    let h = read_khg(file)?;
    let found = enumerate_perfect_matchings(&h, Some(2));
    match found.len() {
        1 => {
            if as_json {
                println!(
                    "{}",
                    json!({ "unique": true, "matching": blocks_json(found[0].blocks()) })
                );
            } else {
                println!("{}", blocks_line(found[0].blocks()));
            }
            Ok(ExitCode::SUCCESS)
        }
        0 => {
            if as_json {
                println!("{}", json!({ "unique": false, "reason": "none" }));
            } else {
                eprintln!("not unique: the hypergraph has no perfect matching");
            }
            Ok(ExitCode::from(1))
        }
        _ => {
            if as_json {
                println!(
                    "{}",
                    json!({
                        "unique": false,
                        "reason": "multiple",
                        "witnesses": [
                            blocks_json(found[0].blocks()),
                            blocks_json(found[1].blocks()),
                        ],
                    })
                );
            } else {
                eprintln!("not unique: at least two perfect matchings exist");
                eprintln!("  {}", blocks_line(found[0].blocks()));
                eprintln!("  {}", blocks_line(found[1].blocks()));
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn stratify(file: &Path, as_json: bool) -> Result<ExitCode, Error> {
    let h = read_khg(file)?;
    let found = enumerate_perfect_matchings(&h, Some(2));
    if found.len() != 1 {
        return Err(Error::NotUniquePm);
    }
    let s = h.stratify(&found[0])?;
    if as_json {
        println!(
            "{}",
            json!({ "matching": blocks_json(found[0].blocks()), "counts": s.counts() })
        );
    } else {
        println!("l   |B_l|");
        for (i, c) in s.counts().iter().enumerate() {
            println!("{:<3} {c}", i + 1);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn coverings(k: usize, l: usize, type_parts: &str, as_json: bool) -> Result<ExitCode, Error> {
    let parts: Vec<usize> = type_parts
        .split(',')
        .map(|t| {
            t.trim().parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("type part {t:?} is not a nonnegative integer"),
            })
        })
        .collect::<Result<_, _>>()?;
    if parts.windows(2).any(|w| w[0] < w[1]) {
        eprintln!("warning: type vector reordered to non-increasing form");
    }
    let a = TypeVector::new(parts)?;
    let fam = BlockFamily::canonical(k, l)?;
    let stats = incidence_stats(&fam, &a)?;
    let cyclic = cyclic_covering(&fam, &a)?;
    if as_json {
        println!(
            "{}",
            json!({
                "k": k,
                "l": l,
                "type": a.parts(),
                "g_a": stats.g_a,
                "c_a": stats.c_a,
                "per_edge": stats.per_edge,
                "eta": stats.eta,
                "cyclic_covering": blocks_json(cyclic.edges()),
            })
        );
    } else {
        println!("type            {a}");
        println!("|G_a|           {}", stats.g_a);
        println!("|C_a|           {}", stats.c_a);
        println!("per-edge        {}", stats.per_edge);
        println!("eta             {}", stats.eta);
        println!("cyclic covering {}", blocks_line(cyclic.edges()));
    }
    Ok(ExitCode::SUCCESS)
}

fn search(
    k: usize,
    m: usize,
    report_path: Option<&Path>,
    force: bool,
    as_json: bool,
) -> Result<ExitCode, Error> {
    let report = exhaustive_max(k, m, force)?;
    if let Some(path) = report_path {
        report.save(path)?;
    }
    if as_json {
        println!("{}", report.to_json()?);
    } else {
        println!("max edges        {}", report.max_edges);
        println!("examined         {} subsets", report.examined);
        println!("extremal classes {}", report.extremal_canonical.len());
        println!("duration         {} ms", report.duration_ms);
        if let Some(path) = report_path {
            println!("report           {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn swap_variants(k: usize, output: Option<&Path>, as_json: bool) -> Result<ExitCode, Error> {
    let variants = complement_swap_variants(k)?;
    let base_form = (2 * k <= 8)
        .then(|| canonical_form(&build_extremal(k, 2)?.hypergraph))
        .transpose()?;
    if let Some(dir) = output {
        std::fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::new();
    for (i, v) in variants.iter().enumerate() {
        let path = output.map(|dir| dir.join(format!("variant_{:02}.khg", i + 1)));
        if let Some(p) = &path {
            std::fs::write(p, v.hypergraph.to_khg())?;
        }
        // Isomorphic to the unmodified graph? Only decidable while canonical
        // forms are available (2k <= 8).
        let distinct = match &base_form {
            Some(b) => Some(canonical_form(&v.hypergraph)? != *b),
            None => None,
        };
        rows.push((v, path, distinct));
    }
    if as_json {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|(v, path, distinct)| {
                json!({
                    "removed": v.removed.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "added": v.added.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "edges": v.hypergraph.edge_count(),
                    "distinct_from_base": distinct,
                    "path": path.as_ref().map(|p| p.display().to_string()),
                })
            })
            .collect();
        println!("{}", json!({ "k": k, "variants": items }));
    } else {
        println!("{} variant(s)", rows.len());
        for (v, path, distinct) in &rows {
            let mut line = String::new();
            write!(
                line,
                "removed {}  added {}  edges {}",
                v.removed.iter().map(|x| x + 1).join(" "),
                v.added.iter().map(|x| x + 1).join(" "),
                v.hypergraph.edge_count()
            )
            .expect("writing to a String cannot fail");
            match distinct {
                Some(true) => line.push_str("  distinct from base"),
                Some(false) => line.push_str("  isomorphic to base"),
                None => {}
            }
            if let Some(p) = path {
                write!(line, "  -> {}", p.display()).expect("writing to a String cannot fail");
            }
            println!("{line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
