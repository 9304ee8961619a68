//! Per-protein pipeline, dataset batch runner and summary-table emission.

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Mutex;

use crate::distributions::{seqdist_histogram, SeqDistHistogram};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricsReport};
use crate::network::{
    build_contact_network, partition_links, save_network, ContactNetwork, DEFAULT_LE_TH, DEFAULT_TH,
};
use crate::pdb::{
    fetch_pdb_from, parse_calpha_trace, pdb_base_url, validate_trace, ValidationVerdict,
    DEFAULT_DENSITY_THRESHOLD,
};
use crate::util::{fmt_sig6, write_atomic};

/// A named list of PDB ids, with any pre-recorded exclusions.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DatasetManifest {
    pub name: String,
    pub entries: Vec<String>,
    pub exclusions: Vec<(String, String)>,
}

impl DatasetManifest {
    /// Parse the one-id-per-line format. `#` starts a comment;
    /// `# exclude <id> <reason>` records a pre-excluded entry.
    pub fn from_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut exclusions = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix("# exclude ") {
                let mut it = rest.splitn(2, char::is_whitespace);
                if let Some(id) = it.next() {
                    exclusions.push((
                        id.to_string(),
                        it.next().unwrap_or("pre-excluded").trim().to_string(),
                    ));
                }
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let id = line.split_whitespace().next().unwrap().to_string();
            if !seen.insert(id.to_ascii_lowercase()) {
                return Err(Error::ParseError {
                    line: lineno + 1,
                    reason: format!("duplicate manifest id {id:?}"),
                });
            }
            entries.push(id);
        }
        if entries.is_empty() {
            return Err(Error::ParseError {
                line: 0,
                reason: "manifest has no entries".into(),
            });
        }
        Ok(DatasetManifest {
            name: name.into(),
            entries,
            exclusions,
        })
    }

    pub fn gh64() -> Self {
        Self::from_text("GH64", include_str!("../data/gh64.txt")).expect("bundled manifest")
    }

    pub fn eva132() -> Self {
        Self::from_text("EVA132", include_str!("../data/eva132.txt")).expect("bundled manifest")
    }
}

/// Knobs shared by the pipeline and batch runner.
#[derive(Debug, Clone)]
pub struct PipelineParams {
    pub th: f64,
    pub le_th: u32,
    pub density_threshold: f64,
    pub cache_dir: PathBuf,
    pub base_url: String,
    /// When set, per-protein artifacts are written under `<out>/<id>/`.
    pub out_dir: Option<PathBuf>,
}

impl PipelineParams {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        PipelineParams {
            th: DEFAULT_TH,
            le_th: DEFAULT_LE_TH,
            density_threshold: DEFAULT_DENSITY_THRESHOLD,
            cache_dir: cache_dir.into(),
            base_url: pdb_base_url(),
            out_dir: None,
        }
    }
}

/// One protein's row in the dataset summary table.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SummaryRow {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub le_ratio: f64,
    pub k_mean: f64,
    pub se_nodes_ratio: f64,
    pub le_nodes_ratio: f64,
    pub clustering: f64,
    pub assortativity: Option<f64>,
    pub max_ratio: f64,
    pub apl: Option<f64>,
    pub diameter: Option<usize>,
    pub hierarchy_index: Option<f64>,
}

impl SummaryRow {
    pub const CSV_COLUMNS: &'static [&'static str] = &[
        "id",
        "n",
        "m",
        "le_ratio",
        "k_mean",
        "se_nodes_ratio",
        "le_nodes_ratio",
        "c",
        "r",
        "max_ratio",
        "apl",
        "diameter",
        "hierarchy_index",
    ];

    fn numeric_values(&self) -> Vec<Option<f64>> {
        vec![
            Some(self.n as f64),
            Some(self.m as f64),
            Some(self.le_ratio),
            Some(self.k_mean),
            Some(self.se_nodes_ratio),
            Some(self.le_nodes_ratio),
            Some(self.clustering),
            self.assortativity,
            Some(self.max_ratio),
            self.apl,
            self.diameter.map(|d| d as f64),
            self.hierarchy_index,
        ]
    }

    pub fn csv_row(&self) -> String {
        let mut fields = vec![self.id.clone()];
        fields.extend(
            self.numeric_values()
                .iter()
                .map(|v| v.map(fmt_sig6).unwrap_or_default()),
        );
        fields.join(",")
    }
}

/// Everything the per-protein pipeline produces.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub id: String,
    pub row: SummaryRow,
    pub report: MetricsReport,
    pub verdict: ValidationVerdict,
    pub seqdist: Option<SeqDistHistogram>,
    pub network: ContactNetwork,
}

/// fetch → parse → build → validate → partition → metrics → distributions.
pub fn run_pipeline(id: &str, params: &PipelineParams) -> Result<PipelineResult> {
    let inner = || -> Result<PipelineResult> {
        let path = fetch_pdb_from(id, &params.cache_dir, &params.base_url)?;
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::io(format!("read {}", path.display()), e))?;
        let mut trace = parse_calpha_trace(&text)?;
        trace.source_id = id.to_ascii_lowercase();
        let network = build_contact_network(&trace, params.th)?;
        let verdict = validate_trace(&trace, &network, params.density_threshold)?;
        let part = partition_links(&network, params.le_th);
        let report = metrics::metrics_report(&network)?;
        let seqdist = match seqdist_histogram(&network) {
            Ok(h) => Some(h),
            Err(Error::NoEdges) => None,
            Err(e) => return Err(e),
        };

        let row = SummaryRow {
            id: trace.source_id.clone(),
            n: report.n,
            m: report.m,
            le_ratio: part.le_ratio(),
            k_mean: report.degree.mean,
            se_nodes_ratio: part.se_nodes_ratio(),
            le_nodes_ratio: part.le_nodes_ratio(),
            clustering: report.clustering,
            assortativity: report.assortativity,
            max_ratio: seqdist.as_ref().map(|h| h.max_ratio).unwrap_or(0.0),
            apl: report.paths.apl,
            diameter: report.paths.diameter,
            hierarchy_index: report.hierarchy_index,
        };

        if let Some(out) = &params.out_dir {
            let dir = out.join(&trace.source_id);
            write_atomic(&dir.join("network.pcn"), save_network(&network).as_bytes())?;
            let mut flat = report.flat_json();
            let obj = flat.as_object_mut().unwrap();
            obj.insert("id".into(), serde_json::json!(trace.source_id));
            obj.insert("le_ratio".into(), serde_json::json!(row.le_ratio));
            obj.insert(
                "se_nodes_ratio".into(),
                serde_json::json!(row.se_nodes_ratio),
            );
            obj.insert(
                "le_nodes_ratio".into(),
                serde_json::json!(row.le_nodes_ratio),
            );
            obj.insert(
                "overlap_ratio".into(),
                serde_json::json!(part.overlap_ratio()),
            );
            obj.insert("max_ratio".into(), serde_json::json!(row.max_ratio));
            write_atomic(
                &dir.join("metrics.json"),
                serde_json::to_string_pretty(&flat).unwrap().as_bytes(),
            )?;
            let csv = format!(
                "{}\n{}\n",
                MetricsReport::CSV_COLUMNS.join(","),
                report.csv_row()
            );
            write_atomic(&dir.join("metrics.csv"), csv.as_bytes())?;
            if let Some(h) = &seqdist {
                write_atomic(&dir.join("seqdist.csv"), h.counts_csv().as_bytes())?;
                write_atomic(&dir.join("seqdist_log.csv"), h.log_bins_csv().as_bytes())?;
            }
            let (bt, _) = metrics::betweenness_centrality(&network);
            let clustering = metrics::clustering_coefficient(&network);
            let degree_vec: Vec<f64> = report.degree.per_node.iter().map(|&k| k as f64).collect();
            for (file, name, values) in [
                ("degree.csv", "degree", &degree_vec),
                ("betweenness.csv", "betweenness", &bt),
                ("clustering.csv", "clustering", &clustering.per_node),
            ] {
                write_atomic(&dir.join(file), per_node_csv(name, values).as_bytes())?;
            }
            write_atomic(
                &dir.join("validation.json"),
                serde_json::to_string_pretty(&verdict).unwrap().as_bytes(),
            )?;
        }

        Ok(PipelineResult {
            id: trace.source_id,
            row,
            report,
            verdict,
            seqdist,
            network,
        })
    };
    inner().map_err(|e| Error::for_protein(id, e))
}

/// Two-column per-node export: `node_index,<name>`.
pub fn per_node_csv(name: &str, values: &[f64]) -> String {
    let mut out = format!("node_index,{name}\n");
    for (i, &v) in values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i, fmt_sig6(v)));
    }
    out
}

/// Mean ± std of one summary column across proteins.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AggregateStat {
    pub name: String,
    pub mean: f64,
    pub std: f64,
    pub samples: usize,
}

/// Dataset-level result: per-protein rows plus aggregate statistics.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SummaryTable {
    pub dataset: String,
    pub rows: Vec<SummaryRow>,
    pub aggregate: Vec<AggregateStat>,
    pub exclusions: Vec<(String, String)>,
}

impl SummaryTable {
    pub fn csv(&self) -> String {
        let mut out = SummaryRow::CSV_COLUMNS.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn aggregate_csv(&self) -> String {
        let mut out = String::from("statistic,mean,std,samples\n");
        for a in &self.aggregate {
            out.push_str(&format!(
                "{},{},{},{}\n",
                a.name,
                fmt_sig6(a.mean),
                fmt_sig6(a.std),
                a.samples
            ));
        }
        out
    }
}

fn aggregate_rows(rows: &[SummaryRow]) -> Vec<AggregateStat> {
    let names = &SummaryRow::CSV_COLUMNS[1..];
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for row in rows {
        for (slot, value) in columns.iter_mut().zip(row.numeric_values()) {
            if let Some(v) = value {
                slot.push(v);
            }
        }
    }
    names
        .iter()
        .zip(columns)
        .map(|(&name, values)| {
            let (mean, std) = metrics::mean_std(&values);
            AggregateStat {
                name: name.to_string(),
                mean,
                std,
                samples: values.len(),
            }
        })
        .collect()
}

/// Run the pipeline for every manifest entry; failures become exclusions.
pub fn batch_summary(
    manifest: &DatasetManifest,
    params: &PipelineParams,
    jobs: usize,
) -> Result<SummaryTable> {
    let jobs = jobs.max(1);
    let next = Mutex::new(0usize);
    let outcomes: Mutex<Vec<(usize, std::result::Result<PipelineResult, Error>)>> =
        Mutex::new(Vec::with_capacity(manifest.entries.len()));

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(manifest.entries.len()) {
            scope.spawn(|| loop {
                let idx = {
                    let mut guard = next.lock().unwrap();
                    let idx = *guard;
                    if idx >= manifest.entries.len() {
                        return;
                    }
                    *guard += 1;
                    idx
                };
                let outcome = run_pipeline(&manifest.entries[idx], params);
                outcomes.lock().unwrap().push((idx, outcome));
            });
        }
    });

    let mut outcomes = outcomes.into_inner().unwrap();
    outcomes.sort_by_key(|(idx, _)| *idx);

    let mut rows = Vec::new();
    let mut exclusions = manifest.exclusions.clone();
    for (idx, outcome) in outcomes {
        let requested = &manifest.entries[idx];
        match outcome {
            Ok(result) if result.verdict.passes() => rows.push(result.row),
            Ok(result) => {
                let mut reasons = Vec::new();
                if result.verdict.disconnected {
                    reasons.push(format!("{} components", result.verdict.components));
                }
                if result.verdict.excessive_density {
                    reasons.push(format!("density {}", fmt_sig6(result.verdict.density)));
                }
                exclusions.push((result.id, reasons.join("; ")));
            }
            Err(e) => exclusions.push((requested.clone(), e.to_string())),
        }
    }
    if rows.is_empty() {
        return Err(Error::AllEntriesFailed);
    }

    let table = SummaryTable {
        dataset: manifest.name.clone(),
        aggregate: aggregate_rows(&rows),
        rows,
        exclusions,
    };

    if let Some(out) = &params.out_dir {
        write_atomic(&out.join("summary.csv"), table.csv().as_bytes())?;
        write_atomic(&out.join("aggregate.csv"), table.aggregate_csv().as_bytes())?;
        write_atomic(
            &out.join("summary.json"),
            serde_json::to_string_pretty(&table).unwrap().as_bytes(),
        )?;
        let mut exl = String::from("id,reason\n");
        for (id, reason) in &table.exclusions {
            exl.push_str(&format!("{},{}\n", id, reason.replace(',', ";")));
        }
        write_atomic(&out.join("exclusions.csv"), exl.as_bytes())?;
    }
    Ok(table)
}
