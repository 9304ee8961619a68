//! PDB fetching and Cα-trace extraction.
//!
//! Parses fixed-width ATOM records (first MODEL only) into an ordered list of
//! Cα residue records, fetches entries from the archive with a local cache,
//! and runs the dataset-level sanity checks used to exclude problem entries.

use std::collections::HashMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::network::ContactNetwork;

/// Archive endpoint used when `PCNKIT_PDB_BASE` is not set.
pub const DEFAULT_PDB_BASE: &str = "https://files.rcsb.org/download";

/// Link-density cutoff above which a trace is flagged as suspect.
pub const DEFAULT_DENSITY_THRESHOLD: f64 = 0.1;

/// One Cα record in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueRecord {
    pub node_index: usize,
    pub chain_id: char,
    pub res_seq: i32,
    pub insertion_code: char,
    pub position: [f64; 3],
}

/// Ordered Cα trace extracted from one PDB entry (first MODEL, all chains).
#[derive(Debug, Clone, PartialEq)]
pub struct CalphaTrace {
    pub source_id: String,
    pub residues: Vec<ResidueRecord>,
    pub model_number: u32,
}

impl CalphaTrace {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Render the trace as minimal PDB-format text (one CA ATOM line per
    /// residue, coordinates at the format's 3-decimal precision).
    pub fn to_pdb_text(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.residues.iter().enumerate() {
            out.push_str(&format!(
                "ATOM  {:>5}  CA {}GLY {}{:>4}{}   {:>8.3}{:>8.3}{:>8.3}{:>6.2}{:>6.2}\n",
                (i + 1) % 100_000,
                ' ',
                r.chain_id,
                r.res_seq,
                r.insertion_code,
                r.position[0],
                r.position[1],
                r.position[2],
                1.0,
                0.0
            ));
        }
        out.push_str("END\n");
        out
    }
}

/// Extract the Cα trace from PDB-format text.
///
/// Keeps one record per (chain, resSeq, iCode) triple — the blank or
/// lexicographically first altLoc wins — ignores HETATM and non-CA ATOM
/// records, and stops after the first MODEL.
pub fn parse_calpha_trace(pdb_text: &str) -> Result<CalphaTrace> {
    let mut source_id = String::from("xxxx");
    let mut residues: Vec<ResidueRecord> = Vec::new();
    // (chain, resSeq, iCode) -> (slot in residues, altLoc that produced it)
    let mut seen: HashMap<(char, i32, char), (usize, char)> = HashMap::new();
    let mut model_number: u32 = 1;
    let mut in_model = false;

    for (lineno, line) in pdb_text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.starts_with("ENDMDL") {
            break;
        }
        if line.starts_with("MODEL") {
            if in_model {
                break;
            }
            in_model = true;
            if let Some(tok) = line.split_whitespace().nth(1) {
                if let Ok(m) = tok.parse::<u32>() {
                    model_number = m;
                }
            }
            continue;
        }
        if line.starts_with("HEADER") && line.len() >= 66 {
            let id = field(line, 62, 66).trim();
            if id.len() == 4 {
                source_id = id.to_string();
            }
            continue;
        }
        if !line.starts_with("ATOM  ") {
            continue;
        }
        let name = field(line, 12, 16);
        if name.trim() != "CA" {
            continue;
        }
        if line.len() < 54 {
            return Err(Error::MalformedRecord {
                line: lineno,
                reason: format!("ATOM record has {} columns, need 54", line.len()),
            });
        }
        let alt_loc = char_at(line, 16);
        let chain_id = char_at(line, 21);
        let res_seq: i32 =
            field(line, 22, 26)
                .trim()
                .parse()
                .map_err(|_| Error::MalformedRecord {
                    line: lineno,
                    reason: format!("bad residue number {:?}", field(line, 22, 26)),
                })?;
        let insertion_code = char_at(line, 26);
        let mut position = [0.0f64; 3];
        for (k, (lo, hi)) in [(30, 38), (38, 46), (46, 54)].into_iter().enumerate() {
            let raw = field(line, lo, hi);
            let v: f64 = raw.trim().parse().map_err(|_| Error::MalformedRecord {
                line: lineno,
                reason: format!("bad coordinate {:?}", raw),
            })?;
            if !v.is_finite() {
                return Err(Error::MalformedRecord {
                    line: lineno,
                    reason: format!("non-finite coordinate {:?}", raw),
                });
            }
            position[k] = v;
        }

        let key = (chain_id, res_seq, insertion_code);
        match seen.get(&key) {
            None => {
                let idx = residues.len();
                residues.push(ResidueRecord {
                    node_index: idx,
                    chain_id,
                    res_seq,
                    insertion_code,
                    position,
                });
                seen.insert(key, (idx, alt_loc));
            }
            Some(&(idx, prev_alt)) => {
                // duplicate residue identity: lower altLoc wins, position only
                if alt_loc < prev_alt {
                    residues[idx].position = position;
                    seen.insert(key, (idx, alt_loc));
                }
            }
        }
    }

    if residues.is_empty() {
        return Err(Error::NoCalphaAtoms);
    }
    Ok(CalphaTrace {
        source_id,
        residues,
        model_number,
    })
}

fn field(line: &str, lo: usize, hi: usize) -> &str {
    let bytes = line.as_bytes();
    if lo >= bytes.len() {
        return "";
    }
    let hi = hi.min(bytes.len());
    // PDB is ASCII; byte slicing is char-safe for well-formed files
    std::str::from_utf8(&bytes[lo..hi]).unwrap_or("")
}

fn char_at(line: &str, idx: usize) -> char {
    line.as_bytes().get(idx).map(|&b| b as char).unwrap_or(' ')
}

/// Outcome of the dataset-level checks on one trace/network pair.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ValidationVerdict {
    pub disconnected: bool,
    pub components: usize,
    pub excessive_density: bool,
    pub density: f64,
    /// Residue count from an external source (e.g. a secondary-structure
    /// assignment), for callers that want to cross-check N. Never filled here.
    pub reference_residue_count: Option<usize>,
}

impl ValidationVerdict {
    pub fn passes(&self) -> bool {
        !self.disconnected && !self.excessive_density
    }
}

/// Apply the exclusion checks: single connected component and sane density.
pub fn validate_trace(
    trace: &CalphaTrace,
    network: &ContactNetwork,
    density_threshold: f64,
) -> Result<ValidationVerdict> {
    if trace.len() != network.n {
        return Err(Error::SizeMismatch {
            trace_len: trace.len(),
            network_n: network.n,
        });
    }
    let components = network.component_count();
    let density = if network.n >= 2 {
        network.density()?
    } else {
        0.0
    };
    Ok(ValidationVerdict {
        disconnected: components > 1,
        components,
        excessive_density: density > density_threshold,
        density,
        reference_residue_count: None,
    })
}

/// Base URL for archive downloads (`PCNKIT_PDB_BASE` overrides the default).
pub fn pdb_base_url() -> String {
    std::env::var("PCNKIT_PDB_BASE").unwrap_or_else(|_| DEFAULT_PDB_BASE.to_string())
}

fn check_id(id: &str) -> Result<String> {
    if id.len() == 4 && id.chars().all(|c| c.is_ascii_alphanumeric()) {
        Ok(id.to_ascii_lowercase())
    } else {
        Err(Error::InvalidId(id.to_string()))
    }
}

/// Cached path for an id without touching the network.
pub fn cache_path(id: &str, cache_dir: &Path) -> Result<PathBuf> {
    Ok(cache_dir.join(format!("{}.pdb", check_id(id)?)))
}

/// Fetch `<id>.pdb` into the cache, returning the local path.
///
/// A non-empty cached copy short-circuits without any network traffic.
pub fn fetch_pdb(id: &str, cache_dir: &Path) -> Result<PathBuf> {
    fetch_pdb_from(id, cache_dir, &pdb_base_url())
}

/// Same as [`fetch_pdb`] with an explicit base URL.
pub fn fetch_pdb_from(id: &str, cache_dir: &Path, base_url: &str) -> Result<PathBuf> {
    let norm = check_id(id)?;
    let target = cache_dir.join(format!("{norm}.pdb"));
    if let Ok(meta) = std::fs::metadata(&target) {
        if meta.is_file() && meta.len() > 0 {
            return Ok(target);
        }
    }
    std::fs::create_dir_all(cache_dir)
        .map_err(|e| Error::CacheUnwritable(cache_dir.to_path_buf(), e.to_string()))?;

    let url = format!("{}/{}.pdb", base_url.trim_end_matches('/'), norm);
    let body = http_get(&norm, &url)?;
    // a captive portal or error page must not poison the cache
    let looks_like_pdb = body
        .windows(6)
        .any(|w| w.starts_with(b"ATOM") || w.starts_with(b"HEADER") || w.starts_with(b"HETATM"));
    if body.is_empty() || !looks_like_pdb {
        return Err(Error::FetchFailed {
            id: norm,
            reason: format!("response from {url} is not PDB-format text"),
        });
    }

    // write-then-rename keeps concurrent fetchers of the same id safe
    let tmp = cache_dir.join(format!("{norm}.pdb.part-{}", std::process::id()));
    std::fs::write(&tmp, &body)
        .map_err(|e| Error::CacheUnwritable(cache_dir.to_path_buf(), e.to_string()))?;
    std::fs::rename(&tmp, &target)
        .map_err(|e| Error::CacheUnwritable(cache_dir.to_path_buf(), e.to_string()))?;
    Ok(target)
}

fn http_get(id: &str, url: &str) -> Result<Vec<u8>> {
    let resp = ureq::get(url).call().map_err(|e| match e {
        ureq::Error::Status(code, _) => Error::FetchFailed {
            id: id.to_string(),
            reason: format!("HTTP {code} from {url}"),
        },
        ureq::Error::Transport(t) => Error::FetchFailed {
            id: id.to_string(),
            reason: t.to_string(),
        },
    })?;
    let mut body = Vec::new();
    resp.into_reader()
        .take(64 * 1024 * 1024)
        .read_to_end(&mut body)
        .map_err(|e| Error::FetchFailed {
            id: id.to_string(),
            reason: format!("read body: {e}"),
        })?;
    Ok(body)
}
