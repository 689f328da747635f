use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Base data for a crown-power group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrownBase {
    /// `H = C_2 × C_2` acting on `F_3` through its nontrivial characters.
    Klein,
    /// `H` a 2-generated subdirect power of the semidihedral group of order
    /// 16, acting on copies of `F_3^2`.
    Sd16,
}

/// A named group of the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum BuilderSpec {
    Cyclic { n: usize },
    Dihedral { n: usize },
    ElementaryAbelian { p: usize, k: usize },
    Sym { n: usize },
    Alt { n: usize },
    Semidihedral16,
    Quaternion8,
    DirectPower { base: Box<BuilderSpec>, t: usize },
    DirectProduct { left: Box<BuilderSpec>, right: Box<BuilderSpec> },
    InversionPower { p: usize, k: usize },
    CrownPower { base: CrownBase, rho: usize },
}

impl fmt::Display for BuilderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderSpec::Cyclic { n } => write!(f, "cyclic({n})"),
            BuilderSpec::Dihedral { n } => write!(f, "dihedral({n})"),
            BuilderSpec::ElementaryAbelian { p, k } => write!(f, "elementary_abelian({p},{k})"),
            BuilderSpec::Sym { n } => write!(f, "sym({n})"),
            BuilderSpec::Alt { n } => write!(f, "alt({n})"),
            BuilderSpec::Semidihedral16 => write!(f, "semidihedral16"),
            BuilderSpec::Quaternion8 => write!(f, "quaternion8"),
            BuilderSpec::DirectPower { base, t } => write!(f, "direct_power({base},{t})"),
            BuilderSpec::DirectProduct { left, right } => write!(f, "direct_product({left},{right})"),
            BuilderSpec::InversionPower { p, k } => write!(f, "inversion_power({p},{k})"),
            BuilderSpec::CrownPower { base, rho } => {
                let b = match base {
                    CrownBase::Klein => "klein",
                    CrownBase::Sd16 => "sd16",
                };
                write!(f, "crown_power({b},{rho})")
            }
        }
    }
}

enum Arg {
    Int(usize),
    Spec(BuilderSpec),
    Word(String),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> GroupError {
        GroupError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn arg(&mut self) -> Result<Arg, GroupError> {
        let save = self.pos;
        let tok = self.token();
        if tok.is_empty() {
            return Err(self.err("expected an argument"));
        }
        if let Ok(n) = tok.parse::<usize>() {
            return Ok(Arg::Int(n));
        }
        self.skip_ws();
        if self.text[self.pos..].starts_with('(') || is_nullary(tok) {
            self.pos = save;
            return Ok(Arg::Spec(self.spec()?));
        }
        Ok(Arg::Word(tok.to_string()))
    }

    fn spec(&mut self) -> Result<BuilderSpec, GroupError> {
        let name = self.token();
        let mut args = Vec::new();
        if self.eat('(')
            && !self.eat(')') {
                loop {
                    args.push(self.arg()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected ',' or ')'"));
                    }
                }
            }
        build_spec(name, args).map_err(|m| self.err(&m))
    }
}

fn is_nullary(name: &str) -> bool {
    matches!(name, "semidihedral16" | "quaternion8")
}

fn build_spec(name: &str, args: Vec<Arg>) -> Result<BuilderSpec, String> {
    use Arg::*;
    let spec = match (name, args.as_slice()) {
        ("cyclic", [Int(n)]) => BuilderSpec::Cyclic { n: *n },
        ("dihedral", [Int(n)]) => BuilderSpec::Dihedral { n: *n },
        ("elementary_abelian", [Int(p), Int(k)]) => BuilderSpec::ElementaryAbelian { p: *p, k: *k },
        ("sym", [Int(n)]) => BuilderSpec::Sym { n: *n },
        ("alt", [Int(n)]) => BuilderSpec::Alt { n: *n },
        ("semidihedral16", []) => BuilderSpec::Semidihedral16,
        ("quaternion8", []) => BuilderSpec::Quaternion8,
        ("direct_power", [Spec(b), Int(t)]) => BuilderSpec::DirectPower {
            base: Box::new(b.clone()),
            t: *t,
        },
        ("direct_product", [Spec(l), Spec(r)]) => BuilderSpec::DirectProduct {
            left: Box::new(l.clone()),
            right: Box::new(r.clone()),
        },
        ("inversion_power", [Int(p), Int(k)]) => BuilderSpec::InversionPower { p: *p, k: *k },
        ("crown_power", [Word(b), rest @ ..]) => {
            let base = match b.as_str() {
                "klein" => CrownBase::Klein,
                "sd16" => CrownBase::Sd16,
                other => return Err(format!("unknown crown base {other:?}")),
            };
            let rho = match (base, rest) {
                (CrownBase::Klein, []) => 3,
                (CrownBase::Sd16, []) => 2,
                (_, [Int(r)]) => *r,
                _ => return Err("crown_power takes a base and an optional count".into()),
            };
            BuilderSpec::CrownPower { base, rho }
        }
        _ => return Err(format!("unknown builder or bad arguments for {name:?}")),
    };
    Ok(spec)
}

impl FromStr for BuilderSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let mut parser = Parser { text: s, pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.err("trailing input"));
        }
        Ok(spec)
    }
}

impl BuilderSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        for text in [
            "cyclic(4)",
            "direct_power(alt(5),2)",
            "direct_product(sym(3),elementary_abelian(2,2))",
            "crown_power(klein,3)",
            "crown_power(sd16,2)",
            "direct_power(semidihedral16,2)",
            "quaternion8",
        ] {
            let spec: BuilderSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(BuilderSpec::from_json(&spec.to_json()).unwrap(), spec);
        }
        let json = BuilderSpec::from_str("direct_power(alt(5),2)").unwrap().to_json();
        assert_eq!(
            json,
            r#"{"name":"direct_power","base":{"name":"alt","n":5},"t":2}"#
        );
    }

    #[test]
    fn rejects_bad_text() {
        for bad in ["", "cyclic", "cyclic(2", "cyclic(a)", "frobenius(5)", "sym(3) x", "crown_power(foo)"] {
            assert!(bad.parse::<BuilderSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn default_crown_counts() {
        assert_eq!(
            "crown_power(klein)".parse::<BuilderSpec>().unwrap(),
            BuilderSpec::CrownPower {
                base: CrownBase::Klein,
                rho: 3
            }
        );
    }
}
