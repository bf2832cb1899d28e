//! Job files: a sectioned `key = value` text format and the built-in presets.
//!
//! ```text
//! [field]
//! kind = rational-function      # or `cyclotomic` (with `order = N`) or `rational`
//!
//! [group]
//! free = K1, K2                 # free generators
//! torsion = L:5                 # name:order pairs
//!
//! [components]
//! order = minus, plus           # lowest first
//!
//! [letter]                      # repeatable
//! name = E1
//! component = plus
//! degree = K1                   # group element
//! character = q^2, q^-1         # one value per generator, free generators first
//!
//! [link]                        # repeatable
//! letters = E1, F1
//! value = 1/(q - q^-1)
//!
//! [relations]                   # one polynomial per line
//! E1*E1*E2 - (q + q^-1)*E1*E2*E1 + E2*E1*E1
//!
//! [options]
//! max_degree = 6
//! same_group = false
//! ```

use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::abgroup::{GroupError, GroupSpec};
use crate::expr::{parse_group_element, parse_poly, parse_scalar, ExprError};
use crate::freealg::NcPoly;
use crate::scalar::Field;
use crate::yd::{LetterSpec, LinkingParameters, YdDatum, YdError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown preset `{0}` and no such file")]
    UnknownPreset(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("missing section or key: {0}")]
    Missing(String),
    #[error("character values lie in {found:?}, not in the declared field {declared:?}")]
    FieldMismatch { declared: Field, found: Field },
    #[error("degree bound {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("invalid datum:\n{0}")]
    Validation(String),
    #[error(transparent)]
    Yd(#[from] YdError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated job: datum, linking parameters, extra relations and options.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub name: String,
    pub datum: Arc<YdDatum>,
    pub lambda: LinkingParameters,
    pub relations: Vec<NcPoly>,
    pub max_degree: usize,
    pub same_group: bool,
}

impl JobSpec {
    /// The same job with the components declared in another order.
    pub fn with_component_order(&self, order: &[String]) -> Result<JobSpec, ConfigError> {
        let datum = Arc::new(self.datum.with_component_order(order)?);
        let lambda = self.lambda.transport(&self.datum, &datum)?;
        let relations = self
            .relations
            .iter()
            .map(|r| crate::freealg::transport_poly(r, &self.datum, &datum, |g| g.clone()))
            .collect::<Result<_, _>>()?;
        Ok(JobSpec {
            name: self.name.clone(),
            datum,
            lambda,
            relations,
            max_degree: self.max_degree,
            same_group: self.same_group,
        })
    }
}

const PRESETS: &[(&str, &str)] = &[
    ("sl2", include_str!("../presets/sl2.qd")),
    ("sl2-zero", include_str!("../presets/sl2-zero.qd")),
    ("sl3", include_str!("../presets/sl3.qd")),
    ("sl3-zero", include_str!("../presets/sl3-zero.qd")),
    ("sl3-plus", include_str!("../presets/sl3-plus.qd")),
    ("uq-sl2-N5", include_str!("../presets/uq-sl2-N5.qd")),
    ("uq-sl2-N5-zero", include_str!("../presets/uq-sl2-N5-zero.qd")),
];

/// Names accepted by [`preset`], aliases included.
pub fn preset_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
    names.extend(["sl2-lambda", "sl3-lambda", "uq-sl2-N5-lambda"]);
    names.sort_unstable();
    names
}

/// Source text of a built-in preset; `<name>-lambda` is an alias of `<name>`.
pub fn preset(name: &str) -> Option<&'static str> {
    let base = name.strip_suffix("-lambda").unwrap_or(name);
    PRESETS.iter().find(|(n, _)| *n == base).map(|(_, s)| *s)
}

/// Loads a preset by name, or else a job file from disk.
pub fn load_spec(name_or_path: &str) -> Result<JobSpec, ConfigError> {
    if let Some(text) = preset(name_or_path) {
        return parse_spec(text, name_or_path);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(ConfigError::UnknownPreset(name_or_path.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: name_or_path.to_string(),
        message: e.to_string(),
    })?;
    let name = path
        .file_stem()
        .map_or(name_or_path.to_string(), |s| s.to_string_lossy().into_owned());
    parse_spec(&text, &name)
}

#[derive(Debug, Clone)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    /// 1-based column where `value` starts.
    column: usize,
}

#[derive(Debug, Clone)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str) -> Result<&Entry, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::Parse {
            line: self.line,
            column: 1,
            message: format!("section [{}] needs `{key}`", self.name),
        })
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn expr_error(entry: &Entry, offset: usize, e: ExprError) -> ConfigError {
    parse_error(entry.line, entry.column + offset + e.column() - 1, e.to_string())
}

fn sections(text: &str) -> Result<Vec<Section>, ConfigError> {
    let mut out: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| {
                parse_error(line, indent + trimmed.len(), "expected `]`")
            })?;
            out.push(Section {
                name: name.trim().to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let section = out
            .last_mut()
            .ok_or_else(|| parse_error(line, indent + 1, "entry outside of any section"))?;
        if section.name == "relations" {
            section.entries.push(Entry {
                key: String::new(),
                value: trimmed.to_string(),
                line,
                column: indent + 1,
            });
            continue;
        }
        let eq = content
            .find('=')
            .ok_or_else(|| parse_error(line, indent + 1, "expected `key = value`"))?;
        let key = content[..eq].trim().to_string();
        let after = &content[eq + 1..];
        let value = after.trim();
        let column = eq + 2 + (after.len() - after.trim_start().len());
        section.entries.push(Entry {
            key,
            value: value.to_string(),
            line,
            column,
        });
    }
    Ok(out)
}

/// Splits a comma-separated value, keeping each item's column offset.
fn items(value: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead, part.trim()));
        start += part.len() + 1;
    }
    out.into_iter().filter(|(_, s)| !s.is_empty()).collect()
}

fn single<'a>(all: &'a [Section], name: &str) -> Result<Option<&'a Section>, ConfigError> {
    let mut found = all.iter().filter(|s| s.name == name);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(parse_error(dup.line, 1, format!("duplicate section [{name}]")));
    }
    Ok(first)
}

/// Parses and validates a job file.
pub fn parse_spec(text: &str, name: &str) -> Result<JobSpec, ConfigError> {
    let all = sections(text)?;
    for s in &all {
        if !["field", "group", "components", "letter", "link", "relations", "options"]
            .contains(&s.name.as_str())
        {
            return Err(parse_error(s.line, 2, format!("unknown section [{}]", s.name)));
        }
    }

    let field = match single(&all, "field")? {
        None => Field::RationalFunction,
        Some(s) => {
            let kind = s.require("kind")?;
            match kind.value.as_str() {
                "rational-function" => Field::RationalFunction,
                "rational" => Field::Rational,
                "cyclotomic" => {
                    let order = s.require("order")?;
                    let n: u32 = order.value.parse().map_err(|_| {
                        parse_error(order.line, order.column, "expected a positive integer")
                    })?;
                    if n < 2 {
                        return Err(parse_error(order.line, order.column, "order must be at least 2"));
                    }
                    Field::Cyclotomic(n)
                }
                other => {
                    return Err(parse_error(
                        kind.line,
                        kind.column,
                        format!("unknown field kind `{other}`"),
                    ))
                }
            }
        }
    };

    let group_sec = single(&all, "group")?.ok_or_else(|| ConfigError::Missing("[group]".into()))?;
    let free: Vec<String> = group_sec
        .get("free")
        .map(|e| items(&e.value).into_iter().map(|(_, s)| s.to_string()).collect())
        .unwrap_or_default();
    let mut torsion = Vec::new();
    if let Some(e) = group_sec.get("torsion") {
        for (off, item) in items(&e.value) {
            let (n, o) = item.split_once(':').ok_or_else(|| {
                parse_error(e.line, e.column + off, "expected `name:order`")
            })?;
            let o: u32 = o.trim().parse().map_err(|_| {
                parse_error(e.line, e.column + off, "expected an integer order")
            })?;
            torsion.push((n.trim().to_string(), o));
        }
    }
    let group = GroupSpec::new(&free, &torsion)?;

    let letter_secs: Vec<&Section> = all.iter().filter(|s| s.name == "letter").collect();
    let components: Vec<String> = match single(&all, "components")? {
        Some(s) => items(&s.require("order")?.value)
            .into_iter()
            .map(|(_, c)| c.to_string())
            .collect(),
        None => {
            let mut seen = Vec::new();
            for s in &letter_secs {
                let c = s.require("component")?.value.clone();
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            seen
        }
    };

    let mut letters = Vec::new();
    for s in &letter_secs {
        let name = s.require("name")?.value.clone();
        let component = s.require("component")?.value.clone();
        let deg = s.require("degree")?;
        let g = parse_group_element(&deg.value, &group).map_err(|e| expr_error(deg, 0, e))?;
        let ch = s.require("character")?;
        let parts = items(&ch.value);
        if parts.len() != group.rank() {
            return Err(parse_error(
                ch.line,
                ch.column,
                format!("expected {} character values, got {}", group.rank(), parts.len()),
            ));
        }
        let values = parts
            .iter()
            .map(|(off, v)| parse_scalar(v, field).map_err(|e| expr_error(ch, *off, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let chi = group
            .character(values)
            .map_err(|e| parse_error(ch.line, ch.column, e.to_string()))?;
        letters.push(LetterSpec {
            name,
            component,
            g,
            chi,
        });
    }
    let datum = YdDatum::new(group, components, letters)?;
    if datum.field() != Field::Rational && field != Field::Rational && datum.field() != field {
        return Err(ConfigError::FieldMismatch {
            declared: field,
            found: datum.field(),
        });
    }
    let datum = Arc::new(datum);

    let mut lambda = LinkingParameters::new();
    for s in all.iter().filter(|s| s.name == "link") {
        let l = s.require("letters")?;
        let names = items(&l.value);
        if names.len() != 2 {
            return Err(parse_error(l.line, l.column, "expected two letter names"));
        }
        let idx = names
            .iter()
            .map(|(off, n)| {
                datum
                    .letter_index(n)
                    .map_err(|e| parse_error(l.line, l.column + off, e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = s.require("value")?;
        let value = parse_scalar(&v.value, field).map_err(|e| expr_error(v, 0, e))?;
        if datum.component_of(idx[0]) == datum.component_of(idx[1]) {
            return Err(parse_error(
                l.line,
                l.column,
                "linked letters must lie in different components",
            ));
        }
        lambda
            .set(&datum, idx[0], idx[1], value)
            .map_err(|e| parse_error(v.line, v.column, e.to_string()))?;
    }

    let mut relations = Vec::new();
    for s in all.iter().filter(|s| s.name == "relations") {
        for e in &s.entries {
            let p = parse_poly(&e.value, &datum).map_err(|err| expr_error(e, 0, err))?;
            if !p.is_group_free() {
                return Err(parse_error(e.line, e.column, "relations must not involve group elements"));
            }
            relations.push(p);
        }
    }

    let mut max_degree = 6;
    let mut same_group = false;
    if let Some(s) = single(&all, "options")? {
        for e in &s.entries {
            match e.key.as_str() {
                "max_degree" => {
                    max_degree = e.value.parse().map_err(|_| {
                        parse_error(e.line, e.column, "expected a non-negative integer")
                    })?
                }
                "same_group" => {
                    same_group = e.value.parse().map_err(|_| {
                        parse_error(e.line, e.column, "expected `true` or `false`")
                    })?
                }
                other => {
                    return Err(parse_error(e.line, 1, format!("unknown option `{other}`")))
                }
            }
        }
    }
    if max_degree < 2 {
        return Err(ConfigError::DegreeTooSmall(max_degree));
    }

    let report = datum.validate(&lambda);
    if !report.passed() {
        return Err(ConfigError::Validation(report.to_string()));
    }
    Ok(JobSpec {
        name: name.to_string(),
        datum,
        lambda,
        relations,
        max_degree,
        same_group,
    })
}
