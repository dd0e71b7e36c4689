//! Line-oriented text formats. One directive per line, `#` starts a
//! comment, blank lines are ignored.
//!
//! Map file:
//! ```text
//! darts N
//! edge d1 d2        # involution pair, one line per edge
//! vertex d1 d2 ...  # counterclockwise rotation, one line per vertex
//! ```
//!
//! Orientation file: `orient d` per edge, `d` the tail-side dart.
//! Flow file: `flow e v` per nonzero edge value.
//! Labeling file: `angle d c` per dart of the base map.

use schnyder::completion::{AngleLabeling, Color};
use schnyder::homology::Flow;
use schnyder::map::{Dart, MapError, Orientation, SurfaceMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: dart {dart} out of range")]
    DartRange { line: usize, dart: usize },
    #[error("line {line}: dart {dart} already used")]
    DuplicateDart { line: usize, dart: usize },
    #[error("dart {dart} missing from the {section} section")]
    MissingDart { dart: usize, section: &'static str },
    #[error("missing `darts N` header")]
    MissingHeader,
    #[error("map is inconsistent: {0}")]
    Map(#[from] MapError),
    #[error("line {line}: edge of dart {dart} oriented twice")]
    DuplicateEdge { line: usize, dart: usize },
    #[error("edge {edge} has no orientation")]
    MissingEdge { edge: usize },
    #[error("line {line}: edge {edge} out of range")]
    EdgeRange { line: usize, edge: usize },
    #[error("angle of dart {dart} has no label")]
    MissingAngle { dart: usize },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_fields(line: usize, rest: &str) -> Result<Vec<usize>, FormatError> {
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| FormatError::Syntax {
                line,
                message: format!("expected a number, found `{tok}`"),
            })
        })
        .collect()
}

pub fn parse_map(text: &str) -> Result<SurfaceMap, FormatError> {
    let mut darts: Option<usize> = None;
    let mut alpha: Vec<Option<usize>> = Vec::new();
    let mut sigma: Vec<Option<usize>> = Vec::new();
    for (line, content) in content_lines(text) {
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match word {
            "darts" => {
                let fields = parse_fields(line, rest)?;
                if fields.len() != 1 {
                    return Err(FormatError::Syntax { line, message: "darts takes one count".into() });
                }
                darts = Some(fields[0]);
                alpha = vec![None; fields[0]];
                sigma = vec![None; fields[0]];
            }
            "edge" => {
                let n = darts.ok_or(FormatError::MissingHeader)?;
                let fields = parse_fields(line, rest)?;
                if fields.len() != 2 {
                    return Err(FormatError::Syntax { line, message: "edge takes two darts".into() });
                }
                for &d in &fields {
                    if d >= n {
                        return Err(FormatError::DartRange { line, dart: d });
                    }
                    if alpha[d].is_some() {
                        return Err(FormatError::DuplicateDart { line, dart: d });
                    }
                }
                if fields[0] == fields[1] {
                    return Err(FormatError::Syntax { line, message: "edge needs two distinct darts".into() });
                }
                alpha[fields[0]] = Some(fields[1]);
                alpha[fields[1]] = Some(fields[0]);
            }
            "vertex" => {
                let n = darts.ok_or(FormatError::MissingHeader)?;
                let fields = parse_fields(line, rest)?;
                if fields.is_empty() {
                    return Err(FormatError::Syntax { line, message: "vertex needs at least one dart".into() });
                }
                for &d in &fields {
                    if d >= n {
                        return Err(FormatError::DartRange { line, dart: d });
                    }
                    if sigma[d].is_some() {
                        return Err(FormatError::DuplicateDart { line, dart: d });
                    }
                }
                for k in 0..fields.len() {
                    sigma[fields[k]] = Some(fields[(k + 1) % fields.len()]);
                }
            }
            other => {
                return Err(FormatError::Syntax { line, message: format!("unknown directive `{other}`") })
            }
        }
    }
    if darts.is_none() {
        return Err(FormatError::MissingHeader);
    }
    let alpha = alpha
        .into_iter()
        .enumerate()
        .map(|(d, a)| a.ok_or(FormatError::MissingDart { dart: d, section: "edge" }))
        .collect::<Result<Vec<_>, _>>()?;
    let sigma = sigma
        .into_iter()
        .enumerate()
        .map(|(d, s)| s.ok_or(FormatError::MissingDart { dart: d, section: "vertex" }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SurfaceMap::build(alpha, sigma)?)
}

pub fn write_map(map: &SurfaceMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("darts {}\n", map.dart_count()));
    for e in 0..map.edge_count() {
        let r = map.edge_ref(e);
        out.push_str(&format!("edge {} {}\n", r, map.alpha(r)));
    }
    for v in 0..map.vertex_count() {
        let rot: Vec<String> = map.rotation(v).iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("vertex {}\n", rot.join(" ")));
    }
    out
}

pub fn parse_orientation(map: &SurfaceMap, text: &str) -> Result<Orientation, FormatError> {
    let mut forward: Vec<Option<bool>> = vec![None; map.edge_count()];
    for (line, content) in content_lines(text) {
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        if word != "orient" {
            return Err(FormatError::Syntax { line, message: format!("unknown directive `{word}`") });
        }
        let fields = parse_fields(line, rest)?;
        if fields.len() != 1 {
            return Err(FormatError::Syntax { line, message: "orient takes one dart".into() });
        }
        let d = fields[0];
        if d >= map.dart_count() {
            return Err(FormatError::DartRange { line, dart: d });
        }
        let e = map.edge_of(Dart(d));
        if forward[e].is_some() {
            return Err(FormatError::DuplicateEdge { line, dart: d });
        }
        forward[e] = Some(map.edge_ref(e) == Dart(d));
    }
    let forward = forward
        .into_iter()
        .enumerate()
        .map(|(e, f)| f.ok_or(FormatError::MissingEdge { edge: e }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Orientation::from_forward(forward))
}

pub fn write_orientation(map: &SurfaceMap, o: &Orientation) -> String {
    let mut out = String::new();
    for e in 0..map.edge_count() {
        out.push_str(&format!("orient {}\n", o.tail_dart(map, e)));
    }
    out
}

pub fn parse_flow(map: &SurfaceMap, text: &str) -> Result<Flow, FormatError> {
    let mut flow = Flow::zero(map.edge_count());
    for (line, content) in content_lines(text) {
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        if word != "flow" {
            return Err(FormatError::Syntax { line, message: format!("unknown directive `{word}`") });
        }
        let mut it = rest.split_whitespace();
        let (Some(e_tok), Some(v_tok), None) = (it.next(), it.next(), it.next()) else {
            return Err(FormatError::Syntax { line, message: "flow takes an edge and a value".into() });
        };
        let e: usize = e_tok
            .parse()
            .map_err(|_| FormatError::Syntax { line, message: format!("bad edge `{e_tok}`") })?;
        let v: i64 = v_tok
            .parse()
            .map_err(|_| FormatError::Syntax { line, message: format!("bad value `{v_tok}`") })?;
        if e >= map.edge_count() {
            return Err(FormatError::EdgeRange { line, edge: e });
        }
        flow.values[e] = v;
    }
    Ok(flow)
}

pub fn write_flow(flow: &Flow) -> String {
    let mut out = String::new();
    for (e, &v) in flow.values.iter().enumerate() {
        if v != 0 {
            out.push_str(&format!("flow {e} {v}\n"));
        }
    }
    out
}

pub fn parse_labeling(map: &SurfaceMap, text: &str) -> Result<AngleLabeling, FormatError> {
    let mut labels: Vec<Option<Color>> = vec![None; map.dart_count()];
    for (line, content) in content_lines(text) {
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        if word != "angle" {
            return Err(FormatError::Syntax { line, message: format!("unknown directive `{word}`") });
        }
        let fields = parse_fields(line, rest)?;
        if fields.len() != 2 {
            return Err(FormatError::Syntax { line, message: "angle takes a dart and a color".into() });
        }
        let (d, c) = (fields[0], fields[1]);
        if d >= map.dart_count() {
            return Err(FormatError::DartRange { line, dart: d });
        }
        if c > 2 {
            return Err(FormatError::Syntax { line, message: format!("color {c} not in 0..3") });
        }
        if labels[d].is_some() {
            return Err(FormatError::DuplicateDart { line, dart: d });
        }
        labels[d] = Some(c as Color);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(d, l)| l.ok_or(FormatError::MissingAngle { dart: d }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AngleLabeling { labels })
}

pub fn write_labeling(l: &AngleLabeling) -> String {
    let mut out = String::new();
    for (d, &c) in l.labels.iter().enumerate() {
        out.push_str(&format!("angle {d} {c}\n"));
    }
    out
}
