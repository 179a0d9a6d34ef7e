use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use treemap_core::harness::{self, BenchConfig};
use treemap_core::{
    layout_plus_traced, to_svg, Algorithm, HierarchyNode, InversionRule, LayoutDocument,
    LayoutMetrics, LayoutResult, Region, RenderOptions, RowDecision,
};

#[derive(Parser)]
#[command(
    name = "treemap",
    version,
    about = "Squarified and Squarified+ treemap layouts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lay out a JSON hierarchy and write placements as JSON or SVG.
    Layout(LayoutArgs),
    /// Run the paired squarified / plus comparison on random trees.
    Bench(BenchArgs),
    /// Walk through the 6x4 example row by row and write both layouts as SVG.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Squarified,
    Plus,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Squarified => Algorithm::Squarified,
            Algo::Plus => Algorithm::Plus,
        }
    }
}

#[derive(clap::Args)]
struct LayoutArgs {
    /// Hierarchy document: {"name": ..., "weight": ...} or {"name": ..., "children": [...]}
    input: PathBuf,
    #[arg(long, value_enum, default_value = "plus")]
    algo: Algo,
    /// Canvas size as WIDTHxHEIGHT.
    #[arg(long, default_value = "1920x1080", value_parser = parse_canvas)]
    canvas: Region,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// SVG pixels per layout unit.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Draw leaf labels in SVG output.
    #[arg(long)]
    labels: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Comma-separated leaf counts.
    #[arg(long, value_delimiter = ',', conflicts_with = "full")]
    sizes: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "full")]
    reps: Option<usize>,
    #[arg(long, default_value_t = harness::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value = "1920x1080", value_parser = parse_canvas)]
    canvas: Region,
    /// Directory receiving records.csv, stats.csv and stats.json.
    #[arg(long, default_value = "bench-out")]
    out: PathBuf,
    /// All eight sizes from 10 to 4000 leaves with 500 runs each.
    #[arg(long)]
    full: bool,
}

#[derive(clap::Args)]
struct DemoArgs {
    /// Directory receiving squarified.svg and plus.svg.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn parse_canvas(s: &str) -> Result<Region, String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got `{s}`"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v > 0.0)
            .ok_or_else(|| format!("`{v}` is not a positive number"))
    };
    Region::sized(parse(w)?, parse(h)?).map_err(|e| e.to_string())
}

fn summary(algo: Algorithm, m: &LayoutMetrics) -> String {
    format!(
        "algo={} leaves={} mean_ar={} weighted_mean_ar={} std_dev_ar={}",
        algo.name(),
        m.n,
        m.mean_ar,
        m.weighted_mean_ar,
        m.std_dev_ar
    )
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_layout(args: LayoutArgs) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let tree = HierarchyNode::from_json(&text)
        .with_context(|| format!("invalid hierarchy in {}", args.input.display()))?;
    let algo = Algorithm::from(args.algo);
    let layout = algo.layout(&tree, args.canvas)?;
    let metrics = match LayoutMetrics::of(&layout) {
        Ok(m) => Some(m),
        Err(treemap_core::Error::EmptyLayout) => None,
        Err(e) => return Err(e.into()),
    };

    let body = match args.format {
        Format::Json => LayoutDocument::new(algo.name(), &layout, metrics).to_json()? + "\n",
        Format::Svg => to_svg(
            &layout,
            &RenderOptions {
                scale: args.scale,
                label: args.labels,
                ..Default::default()
            },
        )?,
    };
    let line = match &metrics {
        Some(m) => summary(algo, m),
        None => format!("algo={} leaves=0", algo.name()),
    };
    match &args.out {
        Some(path) => {
            write_file(path, &body)?;
            println!("{line}");
        }
        None => {
            print!("{body}");
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let mut cfg = if args.full {
        BenchConfig::paper(args.seed)
    } else {
        BenchConfig::desk(args.seed)
    };
    if let Some(sizes) = args.sizes {
        cfg.sizes = sizes;
    }
    if let Some(reps) = args.reps {
        cfg.reps = reps;
    }
    cfg.canvas = args.canvas;
    cfg.validate()?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let started = Instant::now();
    let records = harness::run_all(&cfg)?;
    let stats = harness::aggregate_by_size(&records)?;
    harness::export_records_csv(args.out.join("records.csv"), &records)?;
    harness::export_stats_csv(args.out.join("stats.csv"), &stats)?;
    harness::export_stats_json(args.out.join("stats.json"), &stats)?;

    print!("{}", harness::summary_table(&stats));
    println!(
        "{} runs x {} sizes in {:.2?}; improvements averaged over all runs, `succ imp%` over successes only",
        cfg.reps,
        cfg.sizes.len(),
        started.elapsed()
    );
    println!("wrote {}", args.out.display());
    Ok(())
}

fn print_trace(title: &str, trace: &[RowDecision]) {
    println!("{title}");
    println!("  step  row              free region               actualAR  alternativeAR  inverted  direction");
    for (i, d) in trace.iter().enumerate() {
        let row = d
            .row
            .iter()
            .map(|a| format!("{a}"))
            .collect::<Vec<_>>()
            .join(",");
        let r = d.region;
        println!(
            "  {:>4}  {:<16} {:<25} {:>8.4}  {:>13.4}  {:<8}  {}",
            i + 1,
            format!("[{row}]"),
            format!("({:.3},{:.3} {:.3}x{:.3})", r.x, r.y, r.width, r.height),
            d.actual_ar,
            d.alternative_ar,
            if d.inverted { "yes" } else { "no" },
            d.direction
        );
    }
}

fn print_leaves(layout: &LayoutResult) -> Result<()> {
    for p in layout.leaves() {
        let r = p.region;
        println!(
            "    {:<8} weight {:<3} at ({:.4}, {:.4}) size {:.4} x {:.4}  AR {:.4}",
            p.path,
            p.weight,
            r.x,
            r.y,
            r.width,
            r.height,
            treemap_core::aspect_ratio(&r)?
        );
    }
    let m = LayoutMetrics::of(layout)?;
    println!(
        "    mean AR {:.4}  weighted mean AR {:.4}  std dev {:.4}",
        m.mean_ar, m.weighted_mean_ar, m.std_dev_ar
    );
    Ok(())
}

fn cmd_demo(args: DemoArgs) -> Result<()> {
    let tree = HierarchyNode::flat("E", &[6.0, 6.0, 4.0, 3.0, 2.0, 2.0, 1.0]);
    let canvas = Region::sized(6.0, 4.0)?;
    println!("R = 6 x 4, E = [6, 6, 4, 3, 2, 2, 1]\n");

    let (squarified, sq_trace) = layout_plus_traced(&tree, canvas, InversionRule::Never)?;
    let (plus, plus_trace) = layout_plus_traced(&tree, canvas, InversionRule::Improve)?;
    print_trace(
        "squarified rows (always along the smaller side):",
        &sq_trace,
    );
    print_leaves(&squarified)?;
    println!();
    print_trace("squarified+ rows:", &plus_trace);
    print_leaves(&plus)?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let opts = RenderOptions {
        scale: 100.0,
        stroke_width: 2.0,
        label: true,
        ..Default::default()
    };
    for (name, layout) in [("squarified.svg", &squarified), ("plus.svg", &plus)] {
        write_file(&args.out.join(name), &to_svg(layout, &opts)?)?;
    }
    println!(
        "\nwrote squarified.svg and plus.svg to {}",
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Layout(args) => cmd_layout(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Demo(args) => cmd_demo(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canvas_flag() {
        assert_eq!(
            parse_canvas("1920x1080").unwrap(),
            Region::sized(1920.0, 1080.0).unwrap()
        );
        assert_eq!(
            parse_canvas("6X4.5").unwrap(),
            Region::sized(6.0, 4.5).unwrap()
        );
        for bad in ["1920", "0x10", "-1x3", "ax3", "3xinf"] {
            assert!(parse_canvas(bad).is_err(), "{bad}");
        }
    }
}
