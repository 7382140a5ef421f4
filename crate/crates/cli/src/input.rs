//! Reading inputs: JSON documents of every module, plus the edge-list graph
//! format.

use std::str::FromStr;

use num_rational::BigRational;
use quotlocus::realize::GridSets;
use quotlocus::schemegeo::AnyConfig;
use quotlocus::{CharFn, Error, IncidenceStructure, Result};
use serde::Deserialize;
use serde_json::Value;

/// Any document the tool accepts, recognized by its keys.
pub enum Input {
    Chi(CharFn),
    Structure(IncidenceStructure),
    Grid(GridSets),
    Config(AnyConfig),
    Intervals(IntervalsDoc),
}

#[derive(Deserialize)]
pub struct IntervalsDoc {
    pub r: u32,
    pub levels: Vec<u32>,
    /// Closed intervals as pairs of exact rationals such as `"-5"` or `"7/2"`.
    pub intervals: Vec<(String, String)>,
}

impl IntervalsDoc {
    pub fn rationals(&self) -> Result<Vec<(BigRational, BigRational)>> {
        let parse = |s: &str| {
            BigRational::from_str(s.trim()).map_err(|_| Error::Invalid(format!("`{s}` is not a rational number")))
        };
        self.intervals.iter().map(|(a, b)| Ok((parse(a)?, parse(b)?))).collect()
    }
}

pub fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))
}

/// Parses `text` as JSON when it looks like JSON, otherwise as an edge list
/// of rank `rank` (the number of parts in the header when `None`).
pub fn parse(text: &str, rank: Option<u32>) -> Result<Input> {
    if !text.trim_start().starts_with('{') {
        return parse_edge_list(text, rank).map(Input::Structure);
    }
    let value: Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("entries") {
        Ok(Input::Chi(serde_json::from_value(value)?))
    } else if has("parts") {
        Ok(Input::Structure(serde_json::from_value(value)?))
    } else if has("sets") {
        Ok(Input::Grid(serde_json::from_value(value)?))
    } else if has("spaces") {
        Ok(Input::Config(AnyConfig::from_json(text)?))
    } else if has("intervals") {
        Ok(Input::Intervals(serde_json::from_value(value)?))
    } else {
        Err(Error::Invalid("unrecognized JSON document".into()))
    }
}

/// Edge-list format: a header `parts: 0 1 | 2 3` listing the vertices of
/// `P_1, P_2, ...`, then one `u v` pair per line. `#` starts a comment.
pub fn parse_edge_list(text: &str, rank: Option<u32>) -> Result<IncidenceStructure> {
    let mut parts: Option<Vec<Vec<u32>>> = None;
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Invalid(format!("line {}: {what}", no + 1));
        if let Some(rest) = line.strip_prefix("parts:") {
            if parts.is_some() {
                return Err(bad("second parts header"));
            }
            let parsed = rest
                .split('|')
                .map(|p| p.split_whitespace().map(|t| t.parse::<u32>().map_err(|_| bad("bad vertex id"))).collect())
                .collect::<Result<Vec<Vec<u32>>>>()?;
            parts = Some(parsed);
            continue;
        }
        if parts.is_none() {
            return Err(bad("edges before the parts header"));
        }
        let ids: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = ids[..] else { return Err(bad("expected `u v`")) };
        let u = u.parse::<u32>().map_err(|_| bad("bad vertex id"))?;
        let v = v.parse::<u32>().map_err(|_| bad("bad vertex id"))?;
        edges.push((u, v));
    }
    let mut parts = parts.ok_or_else(|| Error::Invalid("missing `parts:` header".into()))?;
    let rank = rank.unwrap_or(parts.len() as u32);
    // a larger rank leaves the upper parts empty
    if parts.len() < rank as usize {
        parts.resize(rank as usize, Vec::new());
    }
    IncidenceStructure::new(rank, parts, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list() {
        let s = parse_edge_list("# K22\nparts: 0 1 | 2 3\n0 2\n0 3 # comment\n1 2\n1 3\n", None).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.edges().len(), 4);
        assert!(parse_edge_list("0 1\n", None).is_err());
        assert!(parse_edge_list("parts: 0 | 1\n0 1 2\n", None).is_err());
        assert!(parse_edge_list("parts: 0 1\n0 1\n", None).is_err());
        assert_eq!(parse_edge_list("parts: 0 | 1\n", Some(3)).unwrap().rank(), 3);
    }

    #[test]
    fn intervals() {
        let doc: IntervalsDoc =
            serde_json::from_str(r#"{"r": 3, "levels": [1, 2], "intervals": [["-1", "7/2"], ["0", "1"]]}"#).unwrap();
        let iv = doc.rationals().unwrap();
        assert_eq!(iv[0].1, BigRational::new(7.into(), 2.into()));
        let bad: IntervalsDoc = serde_json::from_str(r#"{"r": 3, "levels": [1], "intervals": [["x", "1"]]}"#).unwrap();
        assert!(bad.rationals().is_err());
    }
}
