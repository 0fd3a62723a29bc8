use std::collections::BTreeMap;
use std::str::FromStr;

use super::expr::{parse_value_at, Value};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lucas,
    Eds,
    IsogenyPair,
    Factor,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lucas" => Ok(Kind::Lucas),
            "eds" => Ok(Kind::Eds),
            "isogeny-pair" => Ok(Kind::IsogenyPair),
            "factor" => Ok(Kind::Factor),
            _ => Err(Error::InvalidInput(format!("unknown kind '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub line: usize,
    pub text: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputSpec {
    pub kind: Kind,
    pub bindings: BTreeMap<String, Binding>,
}

const NAMES: &[&str] = &[
    "s", "q", "f", "g", "a1", "a2", "a3", "a4", "a6", "C.h", "C.g", "P.x", "P.x.num", "P.x.den",
    "P.y", "P.y.num", "P.y.den", "kernel", "E.a1", "E.a2", "E.a3", "E.a4", "E.a6",
];

impl InputSpec {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name).map(|b| &b.value)
    }

    pub fn require(&self, name: &str) -> Result<&Value> {
        self.get(name)
            .ok_or_else(|| Error::MissingBinding(name.into()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.bindings.contains_key(name)
    }
}

/// Parses `name = expr` lines; `#` starts a comment.
pub fn parse_input(text: &str) -> Result<InputSpec> {
    let mut kind = None;
    let mut bindings = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            return Err(Error::Syntax {
                line,
                column: 1,
                message: "expected 'name = expression'".into(),
            });
        };
        let name = body[..eq].trim();
        let rhs = &body[eq + 1..];
        let column = body[..eq + 1].chars().count() + 1;
        if name == "kind" {
            kind = Some(rhs.trim().parse()?);
            continue;
        }
        if !NAMES.contains(&name) {
            return Err(Error::InvalidInput(format!(
                "line {line}: unknown binding '{name}'"
            )));
        }
        if bindings.contains_key(name) {
            return Err(Error::InvalidInput(format!(
                "line {line}: '{name}' bound twice"
            )));
        }
        let value = parse_value_at(rhs, line, column)?;
        bindings.insert(
            name.to_string(),
            Binding {
                line,
                text: rhs.trim().to_string(),
                value,
            },
        );
    }
    let kind = kind.ok_or_else(|| Error::MissingBinding("kind".into()))?;
    let spec = InputSpec { kind, bindings };
    let required: &[&str] = match kind {
        Kind::Lucas if spec.has("s") || spec.has("q") => &["s", "q"],
        Kind::Lucas => &["f", "g"],
        Kind::Factor => &["f"],
        Kind::Eds | Kind::IsogenyPair => &[],
    };
    for r in required {
        spec.require(r)?;
    }
    if matches!(kind, Kind::Eds | Kind::IsogenyPair) {
        for coord in ["P.x", "P.y"] {
            if !spec.has(coord) {
                spec.require(&format!("{coord}.num"))?;
            }
        }
    }
    if kind == Kind::IsogenyPair {
        spec.require("kernel")?;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_bindings_and_reports_positions() {
        let s = parse_input("kind = lucas\n# comment\nf = T^2 + 2\ng = 1\n").unwrap();
        assert_eq!(s.kind, Kind::Lucas);
        assert_eq!(s.bindings["g"].line, 4);
        match parse_input("kind = lucas\nf = T^2 +* 2\ng = 1") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 10)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_input("kind = lucas\nf = T").unwrap_err(),
            Error::MissingBinding("g".into())
        );
        assert_eq!(
            parse_input("kind = eds\nP.x = u").unwrap_err(),
            Error::MissingBinding("P.y.num".into())
        );
    }
}
