//! Text formats.
//!
//! * Curves: one per line, `id x1 y1 x2 y2 …`, whitespace separated. Blank
//!   lines and lines starting with `#` are ignored.
//! * Manifests: `key=value` lines, `#` comments.
//! * Results: `qid k id1 … idk`, ids in dataset order.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use frix_frechet::Curve;
use frix_geometry::Point2;

use crate::error::{invalid, CliError};

pub fn parse_curves(text: &str) -> Result<Vec<Curve<f64>>, CliError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let id = fields.next().expect("non-empty line").to_string();
        let nums = fields
            .map(|f| f.parse::<f64>().map_err(|_| invalid(format!("line {}: bad number {f:?}", no + 1))))
            .collect::<Result<Vec<f64>, _>>()?;
        if nums.is_empty() || nums.len() % 2 != 0 {
            return Err(invalid(format!("line {}: curve {id} needs a non-empty list of x y pairs", no + 1)));
        }
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(invalid(format!("line {}: non-finite coordinate", no + 1)));
        }
        if !seen.insert(id.clone()) {
            return Err(invalid(format!("line {}: duplicate id {id}", no + 1)));
        }
        out.push(Curve::new(id, nums.chunks(2).map(|c| Point2::new(c[0], c[1])).collect()));
    }
    Ok(out)
}

pub fn read_curves(path: &Path) -> Result<Vec<Curve<f64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_curves(&text)
}

pub fn format_curves(curves: &[Curve<f64>]) -> String {
    let mut s = String::new();
    for c in curves {
        s.push_str(&c.id);
        for v in &c.vertices {
            let _ = write!(s, " {} {}", v.x, v.y);
        }
        s.push('\n');
    }
    s
}

pub type Manifest = Vec<(String, String)>;

pub fn format_manifest(m: &Manifest) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

pub fn parse_manifest(text: &str) -> Result<Manifest, CliError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| invalid(format!("manifest line without '=': {l:?}")))
        })
        .collect()
}

pub fn read_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_manifest(&text)
}

pub fn manifest_get<'a>(m: &'a Manifest, key: &str) -> Option<&'a str> {
    m.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

pub fn manifest_parse<T: std::str::FromStr>(m: &Manifest, key: &str) -> Result<T, CliError> {
    let v = manifest_get(m, key).ok_or_else(|| invalid(format!("manifest lacks {key}")))?;
    v.parse().map_err(|_| invalid(format!("manifest {key}={v} does not parse")))
}

/// One query's answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRecord {
    pub qid: String,
    pub ids: Vec<String>,
}

pub fn format_results(r: &[ResultRecord]) -> String {
    let mut s = String::new();
    for rec in r {
        let _ = write!(s, "{} {}", rec.qid, rec.ids.len());
        for id in &rec.ids {
            s.push(' ');
            s.push_str(id);
        }
        s.push('\n');
    }
    s
}

pub fn parse_results(text: &str) -> Result<Vec<ResultRecord>, CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut f = l.split_whitespace();
            let qid = f.next().expect("non-empty").to_string();
            let k: usize = f.next().and_then(|k| k.parse().ok()).ok_or_else(|| invalid(format!("bad result line {l:?}")))?;
            let ids: Vec<String> = f.map(str::to_string).collect();
            if ids.len() != k {
                return Err(invalid(format!("result line for {qid} lists {} ids, expected {k}", ids.len())));
            }
            Ok(ResultRecord { qid, ids })
        })
        .collect()
}

pub fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents).map_err(|e| invalid(format!("{}: {e}", path.display())))
}
