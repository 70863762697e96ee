//! Grid artifacts with provenance, and their CSV forms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::advantage::{RegimeGrid, Strategy};
use crate::centering::CenteringMap;
use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub version: String,
    pub seed: u64,
    pub command: String,
}

impl Provenance {
    pub fn new(config_hash: impl Into<String>, seed: u64, command: impl Into<String>) -> Self {
        Provenance {
            config_hash: config_hash.into(),
            version: VERSION.to_string(),
            seed,
            command: command.into(),
        }
    }

    fn comment_lines(&self) -> String {
        format!(
            "# config_hash: {}\n# version: {}\n# seed: {}\n# command: {}\n",
            self.config_hash, self.version, self.seed, self.command
        )
    }

    fn from_comments(text: &str) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for line in text.lines().filter_map(|l| l.strip_prefix("# ")) {
            if let Some((k, v)) = line.split_once(": ") {
                fields.insert(k.trim(), v.trim());
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .map(|v| v.to_string())
                .ok_or_else(|| Error::Config(format!("artifact is missing provenance field `{k}`")))
        };
        Ok(Provenance {
            config_hash: get("config_hash")?,
            version: get("version")?,
            seed: get("seed")?
                .parse()
                .map_err(|e| Error::Config(format!("provenance seed: {e}")))?,
            command: get("command")?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridArtifact<G> {
    pub provenance: Provenance,
    pub grid: G,
}

impl<G: Serialize> GridArtifact<G> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }
}

impl<G: for<'de> Deserialize<'de>> GridArtifact<G> {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("artifact json: {e}")))
    }
}

/// Twelve significant digits in scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// `x` after a trip through [`fmt12`].
pub fn round12(x: f64) -> f64 {
    fmt12(x).parse().expect("formatted float parses")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("artifact csv: {e}"))
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("artifact csv: bad {what} value {s:?}")))
}

fn body(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn first_seen<T: PartialEq + Copy>(values: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub const PHASE_HEADER: [&str; 5] = ["p", "n_shots", "pec_success", "raw_success", "label"];

pub fn phase_to_csv(artifact: &GridArtifact<RegimeGrid>) -> String {
    let mut out = artifact.provenance.comment_lines();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PHASE_HEADER).expect("in-memory write");
    for c in artifact.grid.cells() {
        w.write_record([
            c.p.to_string(),
            c.n_shots.to_string(),
            fmt12(c.pec_success),
            fmt12(c.raw_success),
            c.label.to_string(),
        ])
        .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
    out
}

pub fn phase_from_csv(text: &str) -> Result<GridArtifact<RegimeGrid>> {
    let provenance = Provenance::from_comments(text)?;
    let mut reader = body(text);
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().collect::<Vec<_>>() != PHASE_HEADER {
        return Err(Error::Config(format!("artifact csv: unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let p = parse_f64(&rec[0], "p")?;
        let n: u64 = rec[1]
            .parse()
            .map_err(|_| Error::Config(format!("artifact csv: bad n_shots {:?}", &rec[1])))?;
        let label: Strategy = rec[4].parse()?;
        rows.push((p, n, parse_f64(&rec[2], "pec_success")?, parse_f64(&rec[3], "raw_success")?, label));
    }
    let p_values = first_seen(rows.iter().map(|r| r.0));
    let shot_values = first_seen(rows.iter().map(|r| r.1));
    let (np, nn) = (p_values.len(), shot_values.len());
    if rows.len() != np * nn {
        return Err(Error::Config("artifact csv: rows do not form a full grid".into()));
    }
    let mut grid = RegimeGrid {
        p_values,
        shot_values,
        pec_success: vec![vec![0.0; nn]; np],
        raw_success: vec![vec![0.0; nn]; np],
        label: vec![vec![Strategy::None; nn]; np],
    };
    for (k, (p, n, pec, raw, label)) in rows.into_iter().enumerate() {
        let (i, j) = (k / nn, k % nn);
        if grid.p_values[i] != p || grid.shot_values[j] != n {
            return Err(Error::Config("artifact csv: rows are not in grid order".into()));
        }
        grid.pec_success[i][j] = pec;
        grid.raw_success[i][j] = raw;
        grid.label[i][j] = label;
    }
    Ok(GridArtifact { provenance, grid })
}

pub const CENTERING_HEADER: [&str; 5] = ["rel_shift", "rel_width", "true_success", "proxy_success", "relative_error"];

pub fn centering_to_csv(artifact: &GridArtifact<CenteringMap>) -> String {
    let g = &artifact.grid;
    let mut out = artifact.provenance.comment_lines();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CENTERING_HEADER).expect("in-memory write");
    for (i, s) in g.shift_values.iter().enumerate() {
        for (j, wv) in g.width_values.iter().enumerate() {
            w.write_record([
                s.to_string(),
                wv.to_string(),
                fmt12(g.true_success[i][j]),
                fmt12(g.proxy_success[i][j]),
                g.relative_error[i][j].map(fmt12).unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
    out
}

pub fn centering_from_csv(text: &str) -> Result<GridArtifact<CenteringMap>> {
    let provenance = Provenance::from_comments(text)?;
    let mut reader = body(text);
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().collect::<Vec<_>>() != CENTERING_HEADER {
        return Err(Error::Config(format!("artifact csv: unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let rel = if rec[4].is_empty() {
            None
        } else {
            Some(parse_f64(&rec[4], "relative_error")?)
        };
        rows.push((
            parse_f64(&rec[0], "rel_shift")?,
            parse_f64(&rec[1], "rel_width")?,
            parse_f64(&rec[2], "true_success")?,
            parse_f64(&rec[3], "proxy_success")?,
            rel,
        ));
    }
    let shift_values = first_seen(rows.iter().map(|r| r.0));
    let width_values = first_seen(rows.iter().map(|r| r.1));
    let (ns, nw) = (shift_values.len(), width_values.len());
    if rows.len() != ns * nw {
        return Err(Error::Config("artifact csv: rows do not form a full grid".into()));
    }
    let mut grid = CenteringMap {
        shift_values,
        width_values,
        true_success: vec![vec![0.0; nw]; ns],
        proxy_success: vec![vec![0.0; nw]; ns],
        relative_error: vec![vec![None; nw]; ns],
    };
    for (k, (s, w, t, p, r)) in rows.into_iter().enumerate() {
        let (i, j) = (k / nw, k % nw);
        if grid.shift_values[i] != s || grid.width_values[j] != w {
            return Err(Error::Config("artifact csv: rows are not in grid order".into()));
        }
        grid.true_success[i][j] = t;
        grid.proxy_success[i][j] = p;
        grid.relative_error[i][j] = r;
    }
    Ok(GridArtifact { provenance, grid })
}

/// The grid as it reads back from CSV: probabilities at twelve digits.
pub fn phase_rounded(grid: &RegimeGrid) -> RegimeGrid {
    let round = |m: &Vec<Vec<f64>>| m.iter().map(|r| r.iter().map(|&x| round12(x)).collect()).collect();
    RegimeGrid {
        pec_success: round(&grid.pec_success),
        raw_success: round(&grid.raw_success),
        ..grid.clone()
    }
}

pub fn centering_rounded(grid: &CenteringMap) -> CenteringMap {
    let round = |m: &Vec<Vec<f64>>| m.iter().map(|r| r.iter().map(|&x| round12(x)).collect()).collect();
    CenteringMap {
        true_success: round(&grid.true_success),
        proxy_success: round(&grid.proxy_success),
        relative_error: grid
            .relative_error
            .iter()
            .map(|r| r.iter().map(|x| x.map(round12)).collect())
            .collect(),
        ..grid.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centering::relative_error_map;

    fn phase() -> GridArtifact<RegimeGrid> {
        GridArtifact {
            provenance: Provenance::new("abc", 3, "phase-diagram"),
            grid: RegimeGrid {
                p_values: vec![1e-5, 0.1 + 0.2],
                shot_values: vec![1, 1000],
                pec_success: vec![vec![0.1234567890123456, 1.0], vec![0.0, 1e-300]],
                raw_success: vec![vec![0.5, 0.96], vec![2.0f64.sqrt() / 2.0, 0.0]],
                label: vec![vec![Strategy::None, Strategy::Raw], vec![Strategy::None, Strategy::Pec]],
            },
        }
    }

    #[test]
    fn phase_csv_round_trip() {
        let a = phase();
        let text = phase_to_csv(&a);
        assert!(text.contains("p,n_shots,pec_success,raw_success,label\n"));
        let back = phase_from_csv(&text).unwrap();
        assert_eq!(back.provenance, a.provenance);
        assert_eq!(back.grid, phase_rounded(&a.grid));
        assert_eq!(phase_to_csv(&back), text);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let a = phase();
        assert_eq!(GridArtifact::<RegimeGrid>::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn centering_csv_round_trip() {
        let map = relative_error_map(&[0.0, 0.5, 0.9], &[1e-3, 0.3]).unwrap();
        let a = GridArtifact { provenance: Provenance::new("h", 0, "centering"), grid: map };
        let text = centering_to_csv(&a);
        let back = centering_from_csv(&text).unwrap();
        assert_eq!(back.grid, centering_rounded(&a.grid));
        assert_eq!(centering_to_csv(&back), text);
        assert_eq!(GridArtifact::<CenteringMap>::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(phase_from_csv("p,n\n1,2\n").is_err());
        let text = phase_to_csv(&phase());
        let truncated: String = text.lines().take(8).map(|l| format!("{l}\n")).collect();
        assert!(phase_from_csv(&truncated).is_err());
    }
}
