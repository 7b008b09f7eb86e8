//! Plain-text canon spec format (`.canon.txt`).
//!
//! ```text
//! # comment
//! modulus = 15
//! voice { motif = [0, 2, 5]; offset = 1; label = "voice 1" }
//! ```
//!
//! One declaration per line; `modulus` must precede every `voice`. Parse
//! failures report the 1-based line number. See docs/FORMATS.md for the
//! grammar.

use crate::error::{Error, Result};
use crate::rhythm::{CanonSpec, ResidueSet, VoiceEntry};

/// Serializes a spec in canonical form; `parse_canon` inverts this exactly.
pub fn write_canon(spec: &CanonSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("modulus = {}\n", spec.modulus()));
    for v in spec.voices() {
        let motif = v
            .motif
            .elements()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "voice {{ motif = [{motif}]; offset = {}; label = \"{}\" }}\n",
            v.offset,
            escape(&v.label)
        ));
    }
    out
}

pub fn parse_canon(text: &str) -> Result<CanonSpec> {
    let mut modulus: Option<usize> = None;
    let mut voices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("modulus") {
            if modulus.is_some() {
                return Err(Error::parse(lineno, "duplicate modulus declaration"));
            }
            let value = rest
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| Error::parse(lineno, "expected '=' after 'modulus'"))?
                .trim();
            let n: usize = value
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid modulus {value:?}")))?;
            if n == 0 {
                return Err(Error::parse(lineno, "modulus must be positive"));
            }
            modulus = Some(n);
        } else if let Some(rest) = line.strip_prefix("voice") {
            let n = modulus
                .ok_or_else(|| Error::parse(lineno, "voice declared before modulus"))?;
            voices.push(parse_voice(rest.trim(), n, lineno)?);
        } else {
            return Err(Error::parse(
                lineno,
                format!("expected 'modulus' or 'voice', found {line:?}"),
            ));
        }
    }
    let modulus = modulus.ok_or_else(|| Error::parse(text.lines().count() + 1, "missing modulus"))?;
    CanonSpec::new(modulus, voices)
}

fn parse_voice(body: &str, modulus: usize, lineno: usize) -> Result<VoiceEntry> {
    let body = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::parse(lineno, "voice body must be enclosed in { }"))?;
    let mut motif: Option<Vec<i64>> = None;
    let mut offset: Option<usize> = None;
    let mut label: Option<String> = None;
    for field in split_fields(body) {
        let field = field.trim();
        if field.is_empty() {
            continue;
        }
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected 'key = value' in {field:?}")))?;
        match key.trim() {
            "motif" => motif = Some(parse_int_list(value.trim(), lineno)?),
            "offset" => {
                offset = Some(value.trim().parse().map_err(|_| {
                    Error::parse(lineno, format!("invalid offset {:?}", value.trim()))
                })?)
            }
            "label" => label = Some(parse_quoted(value.trim(), lineno)?),
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("unknown voice field {other:?}"),
                ))
            }
        }
    }
    let motif = motif.ok_or_else(|| Error::parse(lineno, "voice is missing 'motif'"))?;
    let offset = offset.ok_or_else(|| Error::parse(lineno, "voice is missing 'offset'"))?;
    let label = label.unwrap_or_default();
    let set = ResidueSet::new(modulus, motif)
        .map_err(|e| Error::parse(lineno, e.to_string()))?;
    VoiceEntry::new(set, offset, label).map_err(|e| Error::parse(lineno, e.to_string()))
}

fn parse_int_list(s: &str, lineno: usize) -> Result<Vec<i64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(lineno, format!("expected a [..] list, found {s:?}")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|item| {
            item.trim()
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid integer {:?}", item.trim())))
        })
        .collect()
}

fn parse_quoted(s: &str, lineno: usize) -> Result<String> {
    let inner = s
        .strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .ok_or_else(|| Error::parse(lineno, format!("expected a quoted string, found {s:?}")))?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('"') => out.push('"'),
                Some('\\') => out.push('\\'),
                other => {
                    return Err(Error::parse(
                        lineno,
                        format!("invalid escape {other:?} in string"),
                    ))
                }
            }
        } else if c == '"' {
            return Err(Error::parse(lineno, "unescaped quote inside string"));
        } else {
            out.push(c);
        }
    }
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Splits on `;` outside of quotes and brackets.
fn split_fields(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if in_str {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_str = false;
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Strips a `#` comment, ignoring `#` inside quoted strings.
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        if in_str {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                in_str = false;
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '#' => return &line[..i],
            _ => {}
        }
    }
    line
}
