//! pcnkit command line: contact-network construction and analysis.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use pcnkit::distributions::{density_scaling_fit, seqdist_histogram};
use pcnkit::dynamics::{
    betweenness_distribution_at, detect_transition, simulate_folding, OrderMode,
    DEFAULT_TRANSITION_WINDOW,
};
use pcnkit::genmodel::{compare_to_target, generate_with_stride, GenConfig};
use pcnkit::metrics::{metrics_report, MetricsReport};
use pcnkit::network::{load_network, save_network, Topology};
use pcnkit::pdb::{fetch_pdb_from, parse_calpha_trace, pdb_base_url};
use pcnkit::report::{batch_summary, DatasetManifest, PipelineParams};
use pcnkit::rewire::{rewire_ensemble, RewireConfig, RewireMode};
use pcnkit::util::{fmt_sig6, write_atomic};
use pcnkit::{build_contact_network, Error};

#[derive(Parser)]
#[command(name = "pcnkit", version, about = "Protein contact network toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// PDB download cache directory.
    #[arg(long, global = true, env = "PCNKIT_CACHE", default_value = "pdb_cache")]
    cache: PathBuf,
    /// Output directory for generated artifacts.
    #[arg(long, global = true, default_value = "pcn_out")]
    out: PathBuf,
    /// Spatial contact threshold in Å.
    #[arg(long, global = true, default_value_t = 7.0)]
    th: f64,
    /// SE/LE sequence-distance threshold.
    #[arg(long = "le-th", global = true, default_value_t = 9)]
    le_th: u32,
    /// Emit CSV instead of JSON where both exist.
    #[arg(long, global = true)]
    csv: bool,
    /// Parallel workers for batch runs.
    #[arg(long, global = true, default_value_t = 4)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    All,
    Se,
    Le,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Seqdist,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Linear,
    Ring,
}

#[derive(Subcommand)]
enum Command {
    /// Download entries into the cache.
    Fetch { ids: Vec<String> },
    /// Build a contact network from a PDB id (or local .pdb file).
    Build {
        input: String,
        /// Output .pcn path (default: <out>/<id>/network.pcn).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Static statistics of a saved network.
    Stats {
        net: PathBuf,
        /// Directory for two-column per-node CSVs (degree, betweenness,
        /// clustering).
        #[arg(long)]
        pernode: Option<PathBuf>,
    },
    /// Degree-preserving randomization ensemble.
    Rewire {
        net: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Applied-swap target (default: 10x eligible links).
        #[arg(long)]
        swaps: Option<usize>,
        #[arg(long = "preserve-class")]
        preserve_class: bool,
    },
    /// Replay long-range link addition and detect the transition.
    Dynamics {
        net: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Seqdist)]
        order: OrderArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Steps at which to dump full betweenness vectors, e.g. 250,355,482.
        #[arg(long, value_delimiter = ',')]
        snapshots: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long, default_value_t = DEFAULT_TRANSITION_WINDOW)]
        window: usize,
    },
    /// Lattice-plus-random-links generative model.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        v: u32,
        #[arg(long, value_enum, default_value_t = TopologyArg::Linear)]
        topology: TopologyArg,
        /// Long-range links to add (default: round(1.2 n)).
        #[arg(long = "le-count")]
        le_count: Option<usize>,
        /// Sequence-distance band as lo:hi (default: 10:floor(0.7 n)).
        #[arg(long)]
        band: Option<String>,
        #[arg(long)]
        sorted: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Saved network to compare the final model state against.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Sequence-distance histograms (and a density fit over 3+ networks).
    Dist { nets: Vec<PathBuf> },
    /// Run the pipeline over a manifest (gh64, eva132, or a file path).
    Batch { manifest: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<Error>()
                .map(Error::exit_code)
                .unwrap_or(2);
            ExitCode::from(code as u8)
        }
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    match seed {
        Some(s) => s,
        None => {
            eprintln!("no --seed given; using fixed seed 0");
            0
        }
    }
}

fn load(path: &Path) -> anyhow::Result<pcnkit::ContactNetwork> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("read {}", path.display()), e))?;
    Ok(load_network(&text)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let c = &cli.common;
    match cli.command {
        Command::Fetch { ids } => {
            anyhow::ensure!(!ids.is_empty(), "no ids given");
            let base = pdb_base_url();
            for id in &ids {
                let path = fetch_pdb_from(id, &c.cache, &base)?;
                println!("{}", path.display());
            }
        }

        Command::Build { input, output } => {
            let (id, text) = if input.ends_with(".pdb") {
                let text = std::fs::read_to_string(&input)
                    .map_err(|e| Error::io(format!("read {input}"), e))?;
                let stem = Path::new(&input)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("unknown")
                    .to_ascii_lowercase();
                (stem, text)
            } else {
                let path = fetch_pdb_from(&input, &c.cache, &pdb_base_url())?;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::io(format!("read {}", path.display()), e))?;
                (input.to_ascii_lowercase(), text)
            };
            let mut trace = parse_calpha_trace(&text)?;
            trace.source_id = id.clone();
            let net = build_contact_network(&trace, c.th)?;
            let path = output.unwrap_or_else(|| c.out.join(&id).join("network.pcn"));
            write_atomic(&path, save_network(&net).as_bytes())?;
            println!("{}", path.display());
        }

        Command::Stats { net, pernode } => {
            let network = load(&net)?;
            let report = metrics_report(&network)?;
            if c.csv {
                println!("{}", MetricsReport::CSV_COLUMNS.join(","));
                println!("{}", report.csv_row());
            } else {
                println!("{}", serde_json::to_string_pretty(&report.flat_json())?);
            }
            if let Some(dir) = pernode {
                let (bt, _) = pcnkit::metrics::betweenness_centrality(&network);
                let clustering = pcnkit::metrics::clustering_coefficient(&network);
                let degrees: Vec<f64> = network.degrees().iter().map(|&k| k as f64).collect();
                for (file, name, values) in [
                    ("degree.csv", "degree", &degrees),
                    ("betweenness.csv", "betweenness", &bt),
                    ("clustering.csv", "clustering", &clustering.per_node),
                ] {
                    write_atomic(
                        &dir.join(file),
                        pcnkit::report::per_node_csv(name, values).as_bytes(),
                    )?;
                }
            }
        }

        Command::Rewire {
            net,
            mode,
            seed,
            trials,
            swaps,
            preserve_class,
        } => {
            let network = load(&net)?;
            let seed = seed_or_default(seed);
            let (mode, tag) = match mode {
                ModeArg::All => (RewireMode::All, "all"),
                ModeArg::Se => (RewireMode::SeOnly, "se"),
                ModeArg::Le => (RewireMode::LeOnly, "le"),
            };
            let mut cfg = RewireConfig::new(mode, c.le_th, seed);
            cfg.target_swaps = swaps;
            cfg.preserve_class = preserve_class;
            let report = rewire_ensemble(&network, &cfg, trials)?;

            let mut csv = String::from(
                "trial,seed,applied,starved,clustering,assortativity,apl,hpl,diameter\n",
            );
            for (i, (trial, st)) in report.trials.iter().zip(&report.stats).enumerate() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    i,
                    seed.wrapping_add(i as u64),
                    st.applied,
                    st.starved,
                    fmt_sig6(trial.clustering),
                    trial.assortativity.map(fmt_sig6).unwrap_or_default(),
                    trial.apl.map(fmt_sig6).unwrap_or_default(),
                    trial.hpl.map(fmt_sig6).unwrap_or_default(),
                    trial.diameter.map(|d| d.to_string()).unwrap_or_default(),
                ));
            }
            let csv_path = c.out.join(format!("rewire_{tag}_s{seed}_trials.csv"));
            write_atomic(&csv_path, csv.as_bytes())?;
            let json = serde_json::to_string_pretty(&report.summary)?;
            write_atomic(
                &c.out.join(format!("rewire_{tag}_s{seed}_summary.json")),
                json.as_bytes(),
            )?;
            println!("{json}");
        }

        Command::Dynamics {
            net,
            order,
            seed,
            snapshots,
            stride,
            window,
        } => {
            let network = load(&net)?;
            let seed = seed_or_default(seed);
            let (order, tag) = match order {
                OrderArg::Seqdist => (OrderMode::SeqDist, "seqdist"),
                OrderArg::Random => (OrderMode::Random, "random"),
            };
            let traj = simulate_folding(&network, c.le_th, order, seed, &snapshots, stride)?;
            let csv_path = c.out.join(format!("dynamics_{tag}_s{seed}.csv"));
            write_atomic(&csv_path, traj.to_csv().as_bytes())?;
            for &t in &traj.snapshot_steps() {
                let values = betweenness_distribution_at(&traj, t)?;
                let mut out = String::from("node_index,betweenness\n");
                for (i, v) in values.iter().enumerate() {
                    out.push_str(&format!("{},{}\n", i, fmt_sig6(*v)));
                }
                write_atomic(
                    &c.out.join(format!("dynamics_{tag}_s{seed}_bt_t{t}.csv")),
                    out.as_bytes(),
                )?;
            }
            match detect_transition(&traj, window) {
                Ok(tr) => println!("{}", serde_json::to_string_pretty(&tr)?),
                Err(e) => eprintln!("transition not detected: {e}"),
            }
            eprintln!("trajectory: {}", csv_path.display());
        }

        Command::Generate {
            n,
            v,
            topology,
            le_count,
            band,
            sorted,
            seed,
            runs,
            stride,
            target,
        } => {
            let seed = seed_or_default(seed);
            let mut cfg = GenConfig::defaults(n, seed);
            cfg.v = v;
            cfg.topology = match topology {
                TopologyArg::Linear => Topology::Linear,
                TopologyArg::Ring => Topology::Ring,
            };
            if let Some(le) = le_count {
                cfg.le_count = le;
            }
            if let Some(spec) = band {
                let (lo, hi) = spec
                    .split_once(':')
                    .context("--band expects lo:hi, e.g. 10:269")?;
                cfg.band = (lo.trim().parse()?, hi.trim().parse()?);
            }
            cfg.sorted_addition = sorted;
            let target_net = target.as_deref().map(load).transpose()?;

            for run_idx in 0..runs.max(1) {
                cfg.seed = seed.wrapping_add(run_idx as u64);
                let run = generate_with_stride(&cfg, &[], stride)?;
                let base = format!("model_s{}_run{run_idx}", seed);
                write_atomic(
                    &c.out.join(format!("{base}.csv")),
                    run.trajectory.to_csv().as_bytes(),
                )?;
                write_atomic(
                    &c.out.join(format!("{base}.pcn")),
                    save_network(&run.network).as_bytes(),
                )?;
                if let Some(target_net) = &target_net {
                    let cmp = compare_to_target(&run.network, &run.trajectory, target_net, c.le_th);
                    let json = serde_json::to_string_pretty(&cmp)?;
                    write_atomic(
                        &c.out.join(format!("{base}_vs_target.json")),
                        json.as_bytes(),
                    )?;
                    if run_idx == 0 {
                        println!("{json}");
                    }
                }
            }
            eprintln!("wrote {} run(s) under {}", runs.max(1), c.out.display());
        }

        Command::Dist { nets } => {
            anyhow::ensure!(!nets.is_empty(), "no network files given");
            let mut points = Vec::new();
            for path in &nets {
                let network = load(path)?;
                let stem = path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("net")
                    .to_string();
                let hist = seqdist_histogram(&network)?;
                write_atomic(
                    &c.out.join(format!("{stem}_seqdist.csv")),
                    hist.counts_csv().as_bytes(),
                )?;
                write_atomic(
                    &c.out.join(format!("{stem}_seqdist_log.csv")),
                    hist.log_bins_csv().as_bytes(),
                )?;
                points.push((network.n as f64, network.density()?));
            }
            if points.len() >= 3 {
                let fit = density_scaling_fit(&points)?;
                let json = fit.to_json_string();
                write_atomic(&c.out.join("density_scaling.json"), json.as_bytes())?;
                println!("{json}");
            }
        }

        Command::Batch { manifest } => {
            let manifest = match manifest.to_ascii_lowercase().as_str() {
                "gh64" => DatasetManifest::gh64(),
                "eva132" => DatasetManifest::eva132(),
                path => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::io(format!("read {path}"), e))?;
                    DatasetManifest::from_text(path, &text)?
                }
            };
            let mut params = PipelineParams::new(&c.cache);
            params.th = c.th;
            params.le_th = c.le_th;
            params.out_dir = Some(c.out.clone());
            let table = batch_summary(&manifest, &params, c.jobs)?;
            if c.csv {
                print!("{}", table.aggregate_csv());
            } else {
                println!("{}", serde_json::to_string_pretty(&table.aggregate)?);
            }
            eprintln!(
                "{}: {} rows, {} exclusions -> {}",
                table.dataset,
                table.rows.len(),
                table.exclusions.len(),
                c.out.display()
            );
        }
    }
    Ok(())
}
