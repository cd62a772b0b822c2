//! `hexmosaic`: generate, inspect and transform hexagonal knot mosaics.
//!
//! Mosaics are read and written in the `hexmosaic 1` text format, diagrams
//! as PD code (with an optional `exterior` line). Commands that take a
//! diagram accept either; a mosaic is turned into its link diagram first.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hexmosaic::complement::{build_l_hat, build_l_prime, complement};
use hexmosaic::diagram::LinkDiagram;
use hexmosaic::dual::{apply_flype, dot_export, dual_graph, find_flypes, flype_closure};
use hexmosaic::families::{generate_a, generate_k, generate_l, standard_alternating_k};
use hexmosaic::mosaic::Mosaic;
use hexmosaic::pd::{from_pd, to_pd};
use hexmosaic::render::{svg_diagram, svg_mosaic, RenderOptions};
use hexmosaic::verify::{verify, HEADER};

#[derive(Parser)]
#[command(name = "hexmosaic", version, about = "Hexagonal knot mosaics, their link diagrams and dual graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member: L_r, A_r or K_r.
    Generate {
        family: Family,
        #[arg(short, long)]
        radius: i32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// For kr: write the standard alternating diagram as PD instead.
        #[arg(long)]
        lifted: bool,
    },
    /// Check that a mosaic is suitably connected (or that PD code parses).
    Validate { file: PathBuf },
    /// Crossings, components, alternating, reduced, saturated and exterior degree.
    Stats { file: PathBuf },
    /// Dual graph summary, optionally written as Graphviz.
    Dual {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Flype sites of a diagram.
    Flypes(FlypeArgs),
    /// Complement arcs and loops of a mosaic.
    Complement {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The mosaic with its complement absorbed (boundary re-completed).
    Lprime {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The tile-substituted mosaic built from L'.
    Lhat {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// SVG drawing of a mosaic or diagram.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Draw the complement (mosaics only).
        #[arg(long)]
        complement: bool,
    },
    /// PD code of a mosaic's link diagram.
    ExportPd { file: PathBuf },
    /// Evaluate the claim table.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_radius: i32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Lr,
    Ar,
    Kr,
}

#[derive(Args)]
struct FlypeArgs {
    file: PathBuf,
    /// List the sites (the default).
    #[arg(long, conflicts_with_all = ["apply", "closure"])]
    list: bool,
    /// Apply the site with this index and write the result.
    #[arg(long, requires = "output", conflicts_with = "closure")]
    apply: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Breadth-first search over all projections reachable by flypes.
    #[arg(long)]
    closure: bool,
    #[arg(long, default_value_t = 1 << 13)]
    limit: usize,
}

type Res<T> = Result<T, String>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Res<()> {
    match output {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Input {
    Mosaic(Mosaic),
    Diagram(LinkDiagram),
}

fn load(path: &Path) -> Res<Input> {
    let text = read(path)?;
    let ctx = |e: hexmosaic::error::Error| format!("{}: {e}", path.display());
    if text.trim_start().starts_with("PD[") {
        from_pd(&text).map(Input::Diagram).map_err(ctx)
    } else {
        Mosaic::from_text(&text).map(Input::Mosaic).map_err(ctx)
    }
}

fn load_mosaic(path: &Path) -> Res<Mosaic> {
    match load(path)? {
        Input::Mosaic(m) => {
            m.check().map_err(|e| e.to_string())?;
            Ok(m)
        }
        Input::Diagram(_) => Err(format!("{}: expected a mosaic, found PD code", path.display())),
    }
}

fn load_diagram(path: &Path) -> Res<LinkDiagram> {
    match load(path)? {
        Input::Mosaic(m) => LinkDiagram::from_mosaic(&m).map_err(|e| e.to_string()),
        Input::Diagram(d) => Ok(d),
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn run(cli: Cli) -> Res<ExitCode> {
    let e = |x: hexmosaic::error::Error| x.to_string();
    match cli.command {
        Command::Generate { family, radius, output, lifted } => {
            let text = match (family, lifted) {
                (Family::Kr, true) => to_pd(&standard_alternating_k(radius).map_err(e)?),
                (_, true) => return Err("--lifted applies to kr only".into()),
                (Family::Lr, false) => generate_l(radius).map_err(e)?.to_text(),
                (Family::Ar, false) => generate_a(radius).map_err(e)?.to_text(),
                (Family::Kr, false) => generate_k(radius).map_err(e)?.to_text(),
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Validate { file } => match load(&file)? {
            Input::Mosaic(m) => {
                let v = m.validate();
                if !v.is_empty() {
                    for x in &v {
                        println!("{x}");
                    }
                    return Err(format!("{}: {} violation(s)", file.display(), v.len()));
                }
                println!("valid");
            }
            Input::Diagram(_) => println!("valid"),
        },
        Command::Stats { file } => {
            let (d, saturated) = match load(&file)? {
                Input::Mosaic(m) => {
                    m.check().map_err(e)?;
                    (LinkDiagram::from_mosaic(&m).map_err(e)?, Some(m.is_saturated()))
                }
                Input::Diagram(d) => (d, None),
            };
            println!("crossings {}", d.crossing_count());
            println!("components {}", d.component_count());
            println!("alternating {}", flag(d.is_alternating()));
            println!("reduced {}", flag(d.is_reduced()));
            match saturated {
                Some(s) => println!("saturated {}", flag(s)),
                None => println!("saturated n/a"),
            }
            println!("delta {}", d.exterior_degree());
        }
        Command::Dual { file, dot } => {
            let g = dual_graph(&load_diagram(&file)?);
            println!("vertices {}", g.vertex_count());
            println!("edges {}", g.edges.len());
            println!("exterior_degree {}", g.exterior_degree());
            println!("max_degree {}", g.max_degree());
            let degrees: Vec<String> = g.degree.iter().map(|x| x.to_string()).collect();
            println!("degrees {}", degrees.join(" "));
            if let Some(p) = dot {
                write(&p, &dot_export(&g))?;
            }
        }
        Command::Flypes(a) => {
            let d = load_diagram(&a.file)?;
            if a.closure {
                let c = flype_closure(&d, a.limit);
                println!("reachable {}", c.reachable_count);
                println!("max_exterior_degree {}", c.max_exterior_degree);
                println!("max_vertex_degree {}", c.max_vertex_degree);
                println!("truncated {}", flag(c.truncated));
            } else if let Some(i) = a.apply {
                let sites = find_flypes(&d);
                let site = sites.get(i).ok_or_else(|| format!("no flype site {i} ({} sites)", sites.len()))?;
                let y = apply_flype(&d, site).map_err(e)?;
                emit(a.output.as_deref(), &to_pd(&y))?;
            } else {
                let sites = find_flypes(&d);
                println!("sites {}", sites.len());
                for (i, s) in sites.iter().enumerate() {
                    let after = apply_flype(&d, s).map(|y| y.exterior_degree().to_string()).unwrap_or("-".into());
                    let v: Vec<String> = s.cycles.v.iter().map(|x| format!("v{}", x + 1)).collect();
                    println!(
                        "{i}: crossing {} faces {} tangle {} delta_after {after}",
                        s.crossing,
                        v.join(","),
                        s.tangle.len()
                    );
                }
            }
        }
        Command::Complement { file, output } => {
            let c = complement(&load_mosaic(&file)?);
            let mut text = format!("arcs {}\nloops {}\n", c.arcs.len(), c.loops.len());
            for a in &c.arcs {
                text.push_str(&format!("arc {}\n", a.to_text()));
            }
            for l in &c.loops {
                text.push_str(&format!("loop {}\n", l.to_text()));
            }
            emit(output.as_deref(), &text)?;
        }
        Command::Lprime { file, output } => {
            let lp = build_l_prime(&load_mosaic(&file)?).map_err(e)?;
            write(&output, &lp.to_text())?;
        }
        Command::Lhat { file, output } => {
            let m = load_mosaic(&file)?;
            let lp = build_l_prime(&m).map_err(e)?;
            write(&output, &build_l_hat(&lp, &m).map_err(e)?.to_text())?;
        }
        Command::Render { file, output, complement } => {
            let opts = RenderOptions { show_complement: complement, ..RenderOptions::default() };
            let svg = match load(&file)? {
                Input::Mosaic(m) => svg_mosaic(&m, &opts).map_err(e)?,
                Input::Diagram(d) => svg_diagram(&d, &opts).map_err(e)?,
            };
            write(&output, &svg)?;
        }
        Command::ExportPd { file } => print!("{}", to_pd(&load_diagram(&file)?)),
        Command::Verify { max_radius } => {
            let rows = verify(max_radius).map_err(e)?;
            println!("{HEADER}");
            for r in &rows {
                println!("{r}");
            }
            let failed = rows.iter().filter(|r| !r.pass()).count();
            println!("{} rows, {failed} failed", rows.len());
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
