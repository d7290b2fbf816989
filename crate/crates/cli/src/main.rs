use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rootposet::antichain::{enumerate_antichains, maximal_antichains_of_size, size_distribution, width};
use rootposet::levels::{level_decomposition, render_conditions, render_set};
use rootposet::report::{report_sections, Section};
use rootposet::{export_dot, export_json, export_tikz, Antichain, DynkinDiagram, RootPoset};

#[derive(Parser)]
#[command(name = "rootposet", version, about = "Root posets of Dynkin diagrams and their antichains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots.
    Generate {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
        #[arg(long)]
        json: bool,
    },
    /// Roots per height and, for D, E and F, the level table.
    Levels {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
    },
    /// Enumerate antichains.
    Antichains {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        count_only: bool,
    },
    /// Width with a witness antichain.
    Width {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
    },
    /// Antichains of a given size not dominated by another of that size.
    Maximal {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
        #[arg(long)]
        size: usize,
    },
    /// Run verification checks.
    Verify {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
        #[arg(value_enum, default_value = "all")]
        check: Check,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Render the Hasse diagram.
    Export {
        #[arg(value_parser = parse_diagram)]
        diagram: DynkinDiagram,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Theorem,
    Remark2,
    Models,
    Lemma,
    Symmetry,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Tikz,
}

fn parse_diagram(s: &str) -> Result<DynkinDiagram, String> {
    s.parse::<DynkinDiagram>().map_err(|e| e.to_string())
}

fn render(p: &RootPoset, a: &Antichain) -> String {
    format!("{{{}}}", render_set(p, a.members()))
}

fn levels(p: &RootPoset) -> Result<(), String> {
    let profile = p.level_profile().map_err(|e| e.to_string())?;
    println!("height  roots");
    for (i, r) in profile.r.iter().enumerate() {
        println!("{:>6}  {r}", i + 1);
    }
    println!("g = {}, h = {}", profile.g, profile.h.map_or("-".into(), |h| h.to_string()));

    let Ok(table) = level_decomposition(p) else {
        return Ok(());
    };
    let names = p.diagram().node_names();
    println!();
    println!("{:<6} | {:<16} | {:<32} | {:<24} | number", "Level", "Conditions", "Minimal elements", "Maximal element");
    for level in &table.levels {
        let minimal = if level.number == 1 {
            format!("{} simple roots", level.minimal.len())
        } else {
            render_set(p, &level.minimal)
        };
        println!(
            "{:<6} | {:<16} | {:<32} | {:<24} | {} ({})",
            level.number,
            render_conditions(&level.printed.conditions, names),
            minimal,
            render_set(p, &level.maximal),
            level.members.len(),
            level.printed.count_text
        );
    }
    for d in &table.discrepancies {
        println!("warning: {d}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    let diagram = match &cli.command {
        Command::Generate { diagram, .. }
        | Command::Levels { diagram }
        | Command::Antichains { diagram, .. }
        | Command::Width { diagram }
        | Command::Maximal { diagram, .. }
        | Command::Verify { diagram, .. }
        | Command::Export { diagram, .. } => diagram.clone(),
    };
    if !diagram.within_default_range() {
        eprintln!("warning: {diagram} is above the default rank ceiling of 8; this may be slow");
    }
    let p = RootPoset::build(&diagram);
    match cli.command {
        Command::Generate { json, .. } => {
            if json {
                let roots: Vec<&[u32]> = p.elements().iter().map(|r| r.coeffs()).collect();
                println!("{}", serde_json::to_string(&roots).map_err(|e| e.to_string())?);
            } else {
                for (id, r) in p.elements().iter().enumerate() {
                    println!("{id:>4}  height {:>2}  {r}", r.height());
                }
            }
        }
        Command::Levels { .. } => levels(&p)?,
        Command::Antichains { size, count_only, .. } => {
            if count_only {
                match size {
                    Some(t) => println!("{}", enumerate_antichains(&p, Some(t)).count()),
                    None => {
                        let dist = size_distribution(&p);
                        for (t, c) in dist.counts.iter().enumerate() {
                            println!("{t:>3}  {c}");
                        }
                        println!("total {}", dist.total());
                    }
                }
            } else {
                for a in enumerate_antichains(&p, size) {
                    println!("{}", render(&p, &a));
                }
            }
        }
        Command::Width { .. } => {
            let (w, witness) = width(&p);
            println!("width {w}");
            println!("witness {}", render(&p, &witness));
        }
        Command::Maximal { size, .. } => {
            for a in maximal_antichains_of_size(&p, size) {
                println!("{}", render(&p, &a));
            }
        }
        Command::Verify { check, json, .. } => {
            let sections: BTreeSet<Section> = match check {
                Check::Theorem => [Section::Theorem].into(),
                Check::Remark2 => [Section::Remark2].into(),
                Check::Models => [Section::Models].into(),
                Check::Lemma => [Section::Lemma].into(),
                Check::Symmetry => [Section::Symmetry].into(),
                Check::All => Section::ALL.into_iter().collect(),
            };
            let report = report_sections(&[diagram], &sections);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
            } else {
                print!("{report}");
            }
            return Ok(report.passed);
        }
        Command::Export { format, out, .. } => {
            let text = match format {
                Format::Dot => export_dot(&p),
                Format::Json => export_json(&p).map_err(|e| e.to_string())? + "\n",
                Format::Tikz => export_tikz(&p),
            };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
