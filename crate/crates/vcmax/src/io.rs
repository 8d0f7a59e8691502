//! Text and JSON formats.
//!
//! Set families (`.sfam`): `#` starts a comment; the first data line lists
//! the ground labels in order, each following line is one member's binary
//! membership word. A JSON mirror `{"ground": [...], "members": [...]}` is
//! accepted interchangeably (inputs starting with `{` are parsed as JSON).
//!
//! Forbidden-label tables: one `A_labels : label_labels` line per entry with
//! comma-separated labels; a `# ground: ...` comment carries the ground
//! order so files round-trip on their own.
//!
//! Convex unions: comma-separated components `{p}`, `(l,r)`, `[l,r]`,
//! `(l,r]`, `[l,r)` with rational endpoints `p/q` or integers, and
//! `-inf`/`+inf` (always open).
//!
//! Point samples: the dimension on the first data line, then one point per
//! line as whitespace-separated rationals.
//!
//! Polynomial specs: one exponent tuple per line; the first line is the
//! fixed term and may carry a leading rational coefficient followed by `|`.

use std::collections::BTreeMap;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::generators::{PointSample, PolySpec};
use crate::genus::{Component, ConvexUnion, Endpoint};
use crate::ground::OrderedGround;
use crate::maximum::ForbiddenLabelTable;
use crate::subset::Subset;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

// ---------------------------------------------------------------- families

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    ground: Vec<String>,
    members: Vec<String>,
}

pub fn parse_set_family(text: &str) -> Result<SetFamily> {
    if text.trim_start().starts_with('{') {
        let json: FamilyJson = serde_json::from_str(text)
            .map_err(|e| parse_err(e.line(), format!("invalid family JSON: {e}")))?;
        let ground = OrderedGround::new(json.ground)?;
        let members = json
            .members
            .iter()
            .map(|w| Subset::from_word(w))
            .collect::<Result<Vec<_>>>()?;
        return SetFamily::new(ground, members);
    }
    let mut lines = data_lines(text);
    let (_, ground_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing ground line"))?;
    let ground = OrderedGround::new(ground_line.split_whitespace().map(str::to_string))?;
    let n = ground.len();
    let mut members = Vec::new();
    for (lineno, line) in lines {
        let word =
            Subset::from_word(line).map_err(|e| parse_err(lineno, e.to_string()))?;
        if word.len() != n {
            return Err(parse_err(
                lineno,
                format!("member word has length {}, ground has {n} elements", word.len()),
            ));
        }
        members.push(word);
    }
    SetFamily::new(ground, members)
}

pub fn emit_sfam(family: &SetFamily) -> String {
    let mut out = String::new();
    out.push_str(&family.ground().labels().join(" "));
    out.push('\n');
    for m in family.members() {
        out.push_str(&m.word());
        out.push('\n');
    }
    out
}

pub fn emit_family_json(family: &SetFamily) -> String {
    let json = FamilyJson {
        ground: family.ground().labels().to_vec(),
        members: family.members().iter().map(|m| m.word()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("family JSON serializes");
    s.push('\n');
    s
}

// ------------------------------------------------------------ label tables

pub fn emit_label_table(table: &ForbiddenLabelTable) -> String {
    let ground = table.ground();
    let mut out = format!("# ground: {}\n", ground.labels().join(" "));
    for (key, label) in table.entries() {
        out.push_str(&format!(
            "{} : {}\n",
            ground.label_list(key),
            ground.label_list(label)
        ));
    }
    out
}

/// Parses a forbidden-label table. The ground order comes from the
/// `# ground:` header unless an explicit ground is supplied.
pub fn parse_label_table(
    text: &str,
    ground: Option<OrderedGround>,
) -> Result<ForbiddenLabelTable> {
    let ground = match ground {
        Some(g) => g,
        None => {
            let header = text
                .lines()
                .find_map(|line| line.trim().strip_prefix("# ground:"))
                .ok_or_else(|| {
                    Error::InvalidInput(
                        "label table needs a '# ground: ...' header or an explicit ground".into(),
                    )
                })?;
            OrderedGround::new(header.split_whitespace().map(str::to_string))?
        }
    };
    let mut entries = BTreeMap::new();
    let mut d: Option<usize> = None;
    for (lineno, line) in data_lines(text) {
        let (key_part, label_part) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected 'A_labels : label_labels'"))?;
        let key = ground
            .subset_from_list(key_part)
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        let label = ground
            .subset_from_list(label_part)
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        if key.count() == 0 {
            return Err(parse_err(lineno, "entry key must be nonempty"));
        }
        match d {
            None => d = Some(key.count() - 1),
            Some(d) if key.count() != d + 1 => {
                return Err(parse_err(
                    lineno,
                    format!("entry key has {} elements, earlier keys had {}", key.count(), d + 1),
                ))
            }
            _ => {}
        }
        if entries.insert(key, label).is_some() {
            return Err(parse_err(lineno, "duplicate table key"));
        }
    }
    let d = d.ok_or_else(|| Error::InvalidInput("empty label table".into()))?;
    ForbiddenLabelTable::new(ground, d, entries)
}

// ------------------------------------------------------------ convex unions

fn parse_rational(s: &str, lineno: usize) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num::BigInt = num
        .parse()
        .map_err(|_| parse_err(lineno, format!("invalid rational {s:?}")))?;
    let den: num::BigInt = den
        .parse()
        .map_err(|_| parse_err(lineno, format!("invalid rational {s:?}")))?;
    if den == 0.into() {
        return Err(parse_err(lineno, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_endpoint(s: &str, lineno: usize) -> Result<Endpoint> {
    match s.trim() {
        "-inf" => Ok(Endpoint::NegInf),
        "+inf" | "inf" => Ok(Endpoint::PosInf),
        other => Ok(Endpoint::Finite(parse_rational(other, lineno)?)),
    }
}

fn format_endpoint(e: &Endpoint) -> String {
    match e {
        Endpoint::NegInf => "-inf".into(),
        Endpoint::PosInf => "+inf".into(),
        Endpoint::Finite(q) => format_rational(q),
    }
}

/// Splits on commas that are not nested inside brackets.
fn top_level_components(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub fn parse_convex_union(text: &str) -> Result<ConvexUnion> {
    let text = text.trim();
    if text.is_empty() || text == "{}" {
        return Ok(ConvexUnion::empty());
    }
    let mut components = Vec::new();
    for part in top_level_components(text) {
        let part = part.trim();
        if part.is_empty() {
            return Err(parse_err(1, "empty component"));
        }
        let first = part.chars().next().unwrap();
        let last = part.chars().last().unwrap();
        let inner = &part[1..part.len() - 1];
        match (first, last) {
            ('{', '}') => {
                components.push(Component::singleton(parse_rational(inner, 1)?));
            }
            ('(' | '[', ')' | ']') => {
                let (l, r) = inner
                    .split_once(',')
                    .ok_or_else(|| parse_err(1, format!("interval {part:?} needs two endpoints")))?;
                components.push(Component::interval(
                    parse_endpoint(l, 1)?,
                    first == '[',
                    parse_endpoint(r, 1)?,
                    last == ']',
                ));
            }
            _ => {
                return Err(parse_err(
                    1,
                    format!("component {part:?} must look like {{p}}, (l,r), [l,r], (l,r] or [l,r)"),
                ))
            }
        }
    }
    ConvexUnion::new(components)
}

pub fn emit_convex_union(b: &ConvexUnion) -> String {
    if b.components().is_empty() {
        return "{}".into();
    }
    b.components()
        .iter()
        .map(|c| {
            if c.is_singleton() {
                format!("{{{}}}", format_endpoint(&c.left))
            } else {
                format!(
                    "{}{},{}{}",
                    if c.left_closed { '[' } else { '(' },
                    format_endpoint(&c.left),
                    format_endpoint(&c.right),
                    if c.right_closed { ']' } else { ')' },
                )
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

impl std::fmt::Display for ConvexUnion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&emit_convex_union(self))
    }
}

// ------------------------------------------------------------ point samples

pub fn parse_point_sample(text: &str) -> Result<PointSample> {
    let mut lines = data_lines(text);
    let (lineno, dim_line) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing dimension line"))?;
    let dimension: usize = dim_line
        .parse()
        .map_err(|_| parse_err(lineno, format!("invalid dimension {dim_line:?}")))?;
    let mut points = Vec::new();
    for (lineno, line) in lines {
        let coords = line
            .split_whitespace()
            .map(|t| parse_rational(t, lineno))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dimension {
            return Err(parse_err(
                lineno,
                format!("point has {} coordinates, expected {dimension}", coords.len()),
            ));
        }
        points.push(coords);
    }
    PointSample::new(dimension, points)
}

pub fn emit_point_sample(sample: &PointSample) -> String {
    let mut out = format!("{}\n", sample.dimension());
    for p in sample.points() {
        let row: Vec<String> = p.iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

// ------------------------------------------------------------- poly specs

pub fn parse_poly_spec(text: &str) -> Result<PolySpec> {
    let mut fixed: Option<(BigRational, Vec<u32>)> = None;
    let mut free: Vec<Vec<u32>> = Vec::new();
    for (lineno, line) in data_lines(text) {
        let (coeff, tuple_part) = match line.split_once('|') {
            Some((c, t)) => (parse_rational(c, lineno)?, t),
            None => (BigRational::from_integer(1.into()), line),
        };
        let tuple = tuple_part
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| parse_err(lineno, format!("invalid exponent {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if fixed.is_none() {
            fixed = Some((coeff, tuple));
        } else {
            if line.contains('|') {
                return Err(parse_err(
                    lineno,
                    "only the fixed term (first line) may carry a coefficient",
                ));
            }
            free.push(tuple);
        }
    }
    let (coeff, fixed) =
        fixed.ok_or_else(|| Error::InvalidInput("empty polynomial spec".into()))?;
    PolySpec::new(coeff, fixed, free)
}

pub fn emit_poly_spec(spec: &PolySpec) -> String {
    let tuple = |t: &[u32]| {
        t.iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!(
        "{} | {}\n",
        format_rational(spec.fixed_coefficient()),
        tuple(spec.fixed_monomial())
    );
    for m in spec.free_monomials() {
        out.push_str(&tuple(m));
        out.push('\n');
    }
    out
}

/// Coefficient grids for sampled polynomial traces: one vector per line,
/// whitespace-separated rationals.
pub fn parse_coefficient_grid(text: &str) -> Result<Vec<Vec<BigRational>>> {
    let mut grid = Vec::new();
    for (lineno, line) in data_lines(text) {
        let coords = line
            .split_whitespace()
            .map(|t| parse_rational(t, lineno))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            continue;
        }
        grid.push(coords);
    }
    Ok(grid)
}

// ------------------------------------------------------------------ codes

pub fn parse_code(text: &str) -> Result<Code> {
    text.trim().parse()
}
