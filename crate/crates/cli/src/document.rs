//! Ideal files: a JSON form and a line-oriented human form.
//!
//! ```text
//! # comment
//! vars: x y z
//! gens: x*y, x*z, y*z
//! component: x, y
//! generating_degree: 2
//! c: 2
//! ```
//!
//! Generators are exponent vectors (JSON only) or words such as `x^2*y`.
//! When every variable name is a single character, `abd` means `a*b*d`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sympow_core::{Error, Monomial, MonomialIdeal, Result, SymbolicMode, SymbolicScheme};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDocument {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generating_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based line and column of byte offset `at`.
fn position(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn valid_name(v: &str) -> bool {
    let mut chars = v.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses one word over `vars`. Errors carry the byte offset within `word`.
fn parse_word(vars: &[String], word: &str) -> std::result::Result<Vec<u32>, (usize, String)> {
    let mut e = vec![0u32; vars.len()];
    if word == "1" {
        return Ok(e);
    }
    let single_chars = vars.iter().all(|v| v.chars().count() == 1);
    let mut offset = 0;
    for factor in word.split('*') {
        let here = offset;
        offset += factor.len() + 1;
        let (name, exp) = match factor.split_once('^') {
            Some((n, x)) => {
                let x = x.trim();
                if x.starts_with('-') {
                    return Err((
                        here + n.len() + 1,
                        format!("negative exponent in {factor:?}"),
                    ));
                }
                let k = x
                    .parse::<u32>()
                    .map_err(|_| (here + n.len() + 1, format!("bad exponent in {factor:?}")))?;
                (n.trim(), k)
            }
            None => (factor.trim(), 1),
        };
        if name.is_empty() {
            return Err((here, format!("empty factor in {word:?}")));
        }
        if let Some(i) = vars.iter().position(|v| v == name) {
            e[i] += exp;
        } else if single_chars && exp == 1 {
            for (k, ch) in name.chars().enumerate() {
                let i = vars
                    .iter()
                    .position(|v| v.starts_with(ch))
                    .ok_or((here + k, format!("unknown variable {ch:?}")))?;
                e[i] += 1;
            }
        } else {
            return Err((here, format!("unknown variable {name:?}")));
        }
    }
    Ok(e)
}

fn check_vars(vars: &[String]) -> std::result::Result<(), String> {
    if vars.is_empty() {
        return Err("no variables declared".into());
    }
    for (k, v) in vars.iter().enumerate() {
        if !valid_name(v) {
            return Err(format!("invalid variable name {v:?}"));
        }
        if vars[..k].contains(v) {
            return Err(format!("duplicate variable {v:?}"));
        }
    }
    Ok(())
}

impl IdealDocument {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_human(text)
        }
    }

    pub fn from_ideal(vars: Vec<String>, i: &MonomialIdeal) -> Self {
        IdealDocument {
            vars,
            gens: i.gens().iter().map(|g| g.exponents().to_vec()).collect(),
            components: Vec::new(),
            generating_degree: None,
            c: None,
        }
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    fn parse_human(text: &str) -> Result<Self> {
        let mut vars: Option<Vec<String>> = None;
        let mut gens = Vec::new();
        let mut components = Vec::new();
        let mut generating_degree = None;
        let mut c = None;
        let mut pending: Vec<(usize, usize, &str, bool)> = Vec::new();
        let mut offset = 0;
        for (ln, raw) in text.split('\n').enumerate() {
            let line_start = offset;
            offset += raw.len() + 1;
            let line = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                let (l, col) = position(text, line_start + (line.len() - line.trim_start().len()));
                return Err(parse_error(l, col, "expected `key: value`"));
            };
            let value_at = line_start + key.len() + 1;
            match key.trim() {
                "vars" => {
                    let vs: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                    check_vars(&vs).map_err(|m| {
                        let (l, col) = position(text, value_at);
                        parse_error(l, col, m)
                    })?;
                    vars = Some(vs);
                }
                "gens" => pending.push((ln, value_at, value, false)),
                "component" => pending.push((ln, value_at, value, true)),
                "generating_degree" | "c" => {
                    let n = value.trim().parse::<u32>().map_err(|_| {
                        let (l, col) = position(text, value_at);
                        parse_error(
                            l,
                            col,
                            format!("expected a nonnegative integer for {}", key.trim()),
                        )
                    })?;
                    if key.trim() == "c" {
                        c = Some(n);
                    } else {
                        generating_degree = Some(n);
                    }
                }
                other => {
                    let (l, col) = position(text, line_start);
                    return Err(parse_error(l, col, format!("unknown key {other:?}")));
                }
            }
        }
        let vars = vars.ok_or_else(|| parse_error(1, 1, "missing `vars:` line"))?;
        for (_, value_at, value, is_component) in pending {
            let mut words = Vec::new();
            let mut at = value_at;
            for w in value.split(',') {
                let lead = w.len() - w.trim_start().len();
                let word = w.trim();
                if !word.is_empty() {
                    let e = parse_word(&vars, word).map_err(|(k, m)| {
                        let (l, col) = position(text, at + lead + k);
                        parse_error(l, col, m)
                    })?;
                    words.push(e);
                }
                at += w.len() + 1;
            }
            if is_component {
                if words.is_empty() {
                    let (l, col) = position(text, value_at);
                    return Err(parse_error(l, col, "empty component"));
                }
                components.push(words);
            } else {
                gens.extend(words);
            }
        }
        if gens.is_empty() {
            return Err(parse_error(1, 1, "empty generator list"));
        }
        Ok(IdealDocument {
            vars,
            gens,
            components,
            generating_degree,
            c,
        })
    }

    fn parse_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
        // Semantic errors point at the first occurrence of the offending token.
        let locate = |needle: &str, message: String| {
            let at = text.find(needle).unwrap_or(0);
            let (l, col) = position(text, at);
            parse_error(l, col, message)
        };
        let obj = v
            .as_object()
            .ok_or_else(|| parse_error(1, 1, "expected a JSON object"))?;
        for k in obj.keys() {
            if !["vars", "gens", "components", "generating_degree", "c"].contains(&k.as_str()) {
                return Err(locate(&format!("\"{k}\""), format!("unknown key {k:?}")));
            }
        }
        let vars: Vec<String> = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| locate("{", "missing `vars` array".into()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| locate("\"vars\"", "variable names must be strings".into()))
            })
            .collect::<Result<_>>()?;
        check_vars(&vars).map_err(|m| locate("\"vars\"", m))?;
        let parse_gen = |g: &Value| -> Result<Vec<u32>> {
            match g {
                Value::String(s) => {
                    parse_word(&vars, s.trim()).map_err(|(_, m)| locate(&format!("\"{s}\""), m))
                }
                Value::Array(xs) => {
                    if xs.len() != vars.len() {
                        return Err(locate(
                            "\"gens\"",
                            format!(
                                "exponent vector of length {} for {} variables",
                                xs.len(),
                                vars.len()
                            ),
                        ));
                    }
                    xs.iter()
                        .map(|x| match x.as_i64() {
                            Some(k) if k < 0 => {
                                Err(locate(&k.to_string(), format!("negative exponent {k}")))
                            }
                            Some(k) => u32::try_from(k).map_err(|_| {
                                locate(&k.to_string(), format!("exponent {k} too large"))
                            }),
                            None => Err(locate("\"gens\"", "exponents must be integers".into())),
                        })
                        .collect()
                }
                _ => Err(locate(
                    "\"gens\"",
                    "generators must be strings or arrays".into(),
                )),
            }
        };
        let gens: Vec<Vec<u32>> = obj
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| locate("{", "missing `gens` array".into()))?
            .iter()
            .map(&parse_gen)
            .collect::<Result<_>>()?;
        if gens.is_empty() {
            return Err(locate("\"gens\"", "empty generator list".into()));
        }
        let components = match obj.get("components") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(cs)) => cs
                .iter()
                .map(|c| {
                    let gs = c.as_array().filter(|a| !a.is_empty()).ok_or_else(|| {
                        locate("\"components\"", "each component is a nonempty list".into())
                    })?;
                    gs.iter().map(&parse_gen).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?,
            Some(_) => {
                return Err(locate(
                    "\"components\"",
                    "`components` must be a list".into(),
                ))
            }
        };
        let number = |key: &str| -> Result<Option<u32>> {
            match obj.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(x) => x
                    .as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .map(Some)
                    .ok_or_else(|| {
                        locate(
                            &format!("\"{key}\""),
                            format!("`{key}` must be a nonnegative integer"),
                        )
                    }),
            }
        };
        Ok(IdealDocument {
            generating_degree: number("generating_degree")?,
            c: number("c")?,
            vars,
            gens,
            components,
        })
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(
            self.vars.len(),
            self.gens.iter().cloned().map(Monomial::new).collect(),
        )
    }

    pub fn component_ideals(&self) -> Result<Vec<MonomialIdeal>> {
        self.components
            .iter()
            .map(|c| {
                MonomialIdeal::new(
                    self.vars.len(),
                    c.iter().cloned().map(Monomial::new).collect(),
                )
            })
            .collect()
    }

    /// Symbolic-power scheme for `mode`; without a mode, supplied components
    /// win, then squarefree, then associated primes.
    pub fn scheme(&self, mode: Option<SymbolicMode>) -> Result<SymbolicScheme> {
        let i = self.ideal()?;
        let mut s = match mode {
            Some(SymbolicMode::Components) => {
                if self.components.is_empty() {
                    return Err(Error::InvalidArgument(
                        "--mode components needs a `components` list in the ideal file".into(),
                    ));
                }
                SymbolicScheme::with_components(&i, self.component_ideals()?)?
            }
            Some(m) => SymbolicScheme::with_mode(&i, m)?,
            None if !self.components.is_empty() => {
                SymbolicScheme::with_components(&i, self.component_ideals()?)?
            }
            None => SymbolicScheme::new(&i)?,
        };
        if let Some(n) = self.generating_degree {
            s = s.with_generating_degree(n);
        }
        if let Some(c) = self.c {
            s = s.with_c_value(c);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_form() {
        let d = IdealDocument::parse("vars: x y z\ngens: x*y, x*z, y*z").unwrap();
        assert_eq!(d.gens.len(), 3);
        assert_eq!(d.vars.len(), 3);
        assert_eq!(d.gens[0], vec![1, 1, 0]);
    }

    #[test]
    fn powers_and_juxtaposition() {
        let d = IdealDocument::parse("vars: x y z\ngens: x^2*y, yz").unwrap();
        assert_eq!(d.gens, vec![vec![2, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn json_round_trip() {
        let d = IdealDocument::parse(r#"{"vars":["x","y"],"gens":["x^2",[1,1]],"c":3}"#).unwrap();
        assert_eq!(IdealDocument::parse(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn errors_carry_positions() {
        match IdealDocument::parse("vars: x y\ngens: x*y, x*w") {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (2, 14));
                assert!(message.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        match IdealDocument::parse("vars: x y\ngens: x^-2") {
            Err(Error::Parse {
                line: 2, message, ..
            }) => assert!(message.contains("negative")),
            other => panic!("{other:?}"),
        }
        match IdealDocument::parse("vars: x y\ngens:") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("empty")),
            other => panic!("{other:?}"),
        }
        match IdealDocument::parse("{\"vars\":[\"x\"],\n \"gens\":[[-1]]}") {
            Err(Error::Parse {
                line: 2, message, ..
            }) => assert!(message.contains("negative")),
            other => panic!("{other:?}"),
        }
        match IdealDocument::parse("{\"vars\":[\"x\"], \"gens\":[}") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
