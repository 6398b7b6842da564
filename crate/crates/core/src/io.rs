//! Line-oriented text formats for node sets, polynomials, projection grids,
//! and the CSV certification report.
//!
//! Every floating-point value is written with 17 significant decimal digits,
//! enough to reproduce the underlying `f64` exactly, so repeated runs with
//! the same inputs produce byte-identical files. Blank lines and lines
//! starting with `#` are ignored on input.

use crate::error::{Error, Result};
use crate::nodes::{NodeSet, Parity, Scheme};
use crate::reconstruct::ProjectionGrid;
use crate::ridge::{coefficient_count, RidgeRepresentation};
use crate::regularity::CertifyReport;

use std::fmt::Write as _;

/// Formats with 17 significant digits (scientific notation).
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a number, found '{token}'"),
    })
}

fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found '{token}'"),
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

// --- node sets -------------------------------------------------------------

/// Serializes a node set:
/// ```text
/// scheme u-zeros
/// parity even
/// values 9.5e-1 ...
/// ```
pub fn write_node_set(nodes: &NodeSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scheme {}", nodes.scheme().label());
    let _ = writeln!(out, "parity {}", nodes.parity().label());
    let values: Vec<String> = nodes.values().iter().map(|&v| format_g17(v)).collect();
    let _ = writeln!(out, "values {}", values.join(" "));
    out
}

/// Parses and validates a node set document.
pub fn read_node_set(text: &str) -> Result<NodeSet> {
    let mut scheme = None;
    let mut parity = None;
    let mut values: Option<Vec<f64>> = None;
    for (line, content) in content_lines(text) {
        let mut parts = content.split_whitespace();
        let key = parts.next().unwrap_or_default();
        match key {
            "scheme" => {
                let label = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "missing scheme label".to_string(),
                })?;
                scheme = Some(Scheme::from_label(label).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown scheme '{label}'"),
                })?);
            }
            "parity" => {
                let label = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "missing parity label".to_string(),
                })?;
                parity = Some(Parity::from_label(label).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown parity '{label}'"),
                })?);
            }
            "values" => {
                let mut vs = Vec::new();
                for tok in parts {
                    vs.push(parse_f64(tok, line)?);
                }
                values = Some(vs);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown field '{other}' in node set"),
                })
            }
        }
    }
    let scheme = scheme.unwrap_or(Scheme::Custom);
    let parity = parity.ok_or_else(|| Error::Parse {
        line: 0,
        message: "node set is missing the 'parity' field".to_string(),
    })?;
    let values = values.ok_or_else(|| Error::Parse {
        line: 0,
        message: "node set is missing the 'values' field".to_string(),
    })?;
    NodeSet::new(values, parity, scheme)
}

// --- ridge representations ---------------------------------------------------

/// Serializes a polynomial as a `degree` header plus one `coeff j k c` line
/// per basis coefficient.
pub fn write_ridge(rep: &RidgeRepresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree {}", rep.degree());
    for (j, k, c) in rep.entries() {
        let _ = writeln!(out, "coeff {j} {k} {}", format_g17(c));
    }
    out
}

/// Parses a polynomial document; all `(n+1)(n+2)/2` coefficients must be
/// present exactly once.
pub fn read_ridge(text: &str) -> Result<RidgeRepresentation> {
    let mut degree: Option<usize> = None;
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    for (line, content) in content_lines(text) {
        let mut parts = content.split_whitespace();
        let key = parts.next().unwrap_or_default();
        match key {
            "degree" => {
                let tok = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "missing degree value".to_string(),
                })?;
                degree = Some(parse_usize(tok, line)?);
            }
            "coeff" => {
                let j = parse_usize(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "coeff line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                let k = parse_usize(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "coeff line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                let v = parse_f64(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "coeff line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                entries.push((j, k, v));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown field '{other}' in polynomial"),
                })
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse {
        line: 0,
        message: "polynomial is missing the 'degree' field".to_string(),
    })?;
    if entries.len() != coefficient_count(degree) {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "degree {degree} needs {} coefficients, found {}",
                coefficient_count(degree),
                entries.len()
            ),
        });
    }
    RidgeRepresentation::from_entries(degree, &entries)
}

// --- projection grids --------------------------------------------------------

/// Serializes a projection grid: geometry header, the embedded node set, and
/// one `entry j k value` line per datum.
pub fn write_grid(grid: &ProjectionGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m {}", grid.harmonic_m());
    let _ = writeln!(out, "parity {}", grid.parity().label());
    let _ = writeln!(out, "scheme {}", grid.nodes().scheme().label());
    let values: Vec<String> = grid
        .nodes()
        .values()
        .iter()
        .map(|&v| format_g17(v))
        .collect();
    let _ = writeln!(out, "values {}", values.join(" "));
    for j in 0..grid.angle_count() {
        for k in 0..grid.nodes().len() {
            let _ = writeln!(out, "entry {j} {k} {}", format_g17(grid.value(j, k)));
        }
    }
    out
}

/// Parses a projection grid document.
pub fn read_grid(text: &str) -> Result<ProjectionGrid> {
    let mut m: Option<usize> = None;
    let mut parity: Option<Parity> = None;
    let mut scheme = Scheme::Custom;
    let mut values: Option<Vec<f64>> = None;
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    for (line, content) in content_lines(text) {
        let mut parts = content.split_whitespace();
        let key = parts.next().unwrap_or_default();
        match key {
            "m" => {
                m = Some(parse_usize(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "missing m value".to_string(),
                    })?,
                    line,
                )?)
            }
            "parity" => {
                let label = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "missing parity label".to_string(),
                })?;
                parity = Some(Parity::from_label(label).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown parity '{label}'"),
                })?);
            }
            "scheme" => {
                let label = parts.next().ok_or_else(|| Error::Parse {
                    line,
                    message: "missing scheme label".to_string(),
                })?;
                scheme = Scheme::from_label(label).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown scheme '{label}'"),
                })?;
            }
            "values" => {
                let mut vs = Vec::new();
                for tok in parts {
                    vs.push(parse_f64(tok, line)?);
                }
                values = Some(vs);
            }
            "entry" => {
                let j = parse_usize(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "entry line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                let k = parse_usize(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "entry line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                let v = parse_f64(
                    parts.next().ok_or_else(|| Error::Parse {
                        line,
                        message: "entry line needs 'j k value'".to_string(),
                    })?,
                    line,
                )?;
                entries.push((j, k, v));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown field '{other}' in grid"),
                })
            }
        }
    }
    let m = m.ok_or_else(|| Error::Parse {
        line: 0,
        message: "grid is missing the 'm' field".to_string(),
    })?;
    let parity = parity.ok_or_else(|| Error::Parse {
        line: 0,
        message: "grid is missing the 'parity' field".to_string(),
    })?;
    let values = values.ok_or_else(|| Error::Parse {
        line: 0,
        message: "grid is missing the node 'values' field".to_string(),
    })?;
    let nodes = NodeSet::new(values, parity, scheme)?;
    if nodes.harmonic_m() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "grid header m = {m} is inconsistent with {} nodes of parity {}",
                nodes.len(),
                parity.label()
            ),
        });
    }
    let angles = 2 * m + 1;
    let mut raw = vec![f64::NAN; angles * nodes.len()];
    let mut filled = vec![false; raw.len()];
    for (j, k, v) in entries {
        if j >= angles || k >= nodes.len() {
            return Err(Error::Parse {
                line: 0,
                message: format!("entry index ({j}, {k}) outside the grid"),
            });
        }
        let idx = j * nodes.len() + k;
        if filled[idx] {
            return Err(Error::Parse {
                line: 0,
                message: format!("entry ({j}, {k}) given twice"),
            });
        }
        filled[idx] = true;
        raw[idx] = v;
    }
    if !filled.iter().all(|&f| f) {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "grid needs {} entries, found {}",
                raw.len(),
                filled.iter().filter(|&&f| f).count()
            ),
        });
    }
    ProjectionGrid::from_raw(nodes, raw)
}

// --- certification reports ---------------------------------------------------

/// CSV header of the certification sweep.
pub const REPORT_CSV_HEADER: &str = "scheme,m,j,det,cond,singular";

/// Appends the rows of one certification report under the scheme label.
pub fn append_report_csv(out: &mut String, scheme_label: &str, report: &CertifyReport) {
    for block in &report.blocks {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            scheme_label,
            report.harmonic_m,
            block.block,
            format_g17(block.determinant),
            format_g17(block.condition),
            block.singular
        );
    }
}
