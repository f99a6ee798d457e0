//! Plain-text and JSON state files.
//!
//! Text grammar, one item per line, surrounding whitespace ignored:
//!
//! ```text
//! # comment            (whole line; blank lines are skipped too)
//! label <text>         (optional, at most once, before dims)
//! dims <d1> <d2> ...   (exactly once)
//! <re> <im>            (product(dims) lines, row-major, first subsystem slowest)
//! ```

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use slocc_core::PureState;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("invalid JSON state: {0}")]
    Json(String),
    #[error("invalid state: {0}")]
    State(#[from] slocc_core::Error),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

impl StateFile {
    pub fn parse_text(src: &str) -> Result<Self, ParseError> {
        let mut label = None;
        let mut dims: Option<Vec<usize>> = None;
        let mut amplitudes = Vec::new();
        let mut expected = 0usize;
        let mut last = 0;
        for (k, raw) in src.lines().enumerate() {
            let line = k + 1;
            last = line;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
            match head {
                "label" => {
                    if dims.is_some() {
                        return Err(at(line, "label must precede dims"));
                    }
                    if label.is_some() {
                        return Err(at(line, "duplicate label"));
                    }
                    label = Some(rest.trim().to_string());
                }
                "dims" => {
                    if dims.is_some() {
                        return Err(at(line, "duplicate dims"));
                    }
                    let d: Vec<usize> = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>().map_err(|_| at(line, format!("bad dimension '{t}'"))))
                        .collect::<Result<_, _>>()?;
                    if d.is_empty() {
                        return Err(at(line, "dims needs at least one dimension"));
                    }
                    if d.contains(&0) {
                        return Err(at(line, "dimensions must be positive"));
                    }
                    expected = d
                        .iter()
                        .try_fold(1usize, |acc, &x| acc.checked_mul(x))
                        .ok_or_else(|| at(line, "dimension product overflows"))?;
                    dims = Some(d);
                }
                _ => {
                    if dims.is_none() {
                        return Err(at(line, format!("expected 'label' or 'dims', found '{head}'")));
                    }
                    let toks: Vec<&str> = text.split_whitespace().collect();
                    let [re, im] = toks[..] else {
                        return Err(at(line, format!("expected '<re> <im>', found {} fields", toks.len())));
                    };
                    let num = |t: &str| match t.parse::<f64>() {
                        Ok(x) if x.is_finite() => Ok(x),
                        _ => Err(at(line, format!("bad number '{t}'"))),
                    };
                    if amplitudes.len() == expected {
                        return Err(at(line, format!("more than {expected} amplitudes")));
                    }
                    amplitudes.push([num(re)?, num(im)?]);
                }
            }
        }
        let Some(dims) = dims else {
            return Err(at(last.max(1), "missing dims line"));
        };
        if amplitudes.len() != expected {
            return Err(at(
                last.max(1),
                format!("expected {expected} amplitudes, found {}", amplitudes.len()),
            ));
        }
        Ok(StateFile { label, dims, amplitudes })
    }

    pub fn parse_json(src: &str) -> Result<Self, ParseError> {
        serde_json::from_str(src).map_err(|e| ParseError::Json(e.to_string()))
    }

    /// Shortest round-trip decimal for every number, so parsing the output
    /// reproduces the amplitudes bit for bit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(l) = &self.label {
            out.push_str(&format!("label {l}\n"));
        }
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("dims {}\n", dims.join(" ")));
        for [re, im] in &self.amplitudes {
            out.push_str(&format!("{re:?} {im:?}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_state(&self) -> Result<PureState, ParseError> {
        let amps = self.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(PureState::new(self.dims.clone(), amps)?)
    }

    pub fn from_state(state: &PureState, label: Option<String>) -> Self {
        StateFile {
            label,
            dims: state.dims().to_vec(),
            amplitudes: state.amps().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}
