//! JSON group definition files.
//!
//! `{"degree": n, "generators": ["(1,2,3)", …], "name": "optional"}` with
//! 1-based points in cycle notation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{GroupError, Result};

use super::{FiniteGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_cycle_string()).collect(),
            name: g.name().map(str::to_string),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GroupError::Parse(format!("group file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group file serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self, caps: &Caps) -> Result<FiniteGroup> {
        if self.degree == 0 {
            return Err(GroupError::Parse("degree must be positive".into()));
        }
        let gens: Vec<Permutation> = if self.generators.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            self.generators
                .iter()
                .map(|s| Permutation::parse_cycles(s, self.degree))
                .collect::<Result<_>>()?
        };
        let g = FiniteGroup::generate_with(&gens, caps)?;
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let text = r#"{"degree": 4, "generators": ["(1,2,3,4)", "(1,3)"], "name": "D8"}"#;
        let f = GroupFile::parse(text).unwrap();
        let g = f.build(&Caps::default()).unwrap();
        assert_eq!(g.order(), 8);
        let back = GroupFile::from_group(&g);
        assert_eq!(back, f);
        assert_eq!(GroupFile::parse(&back.to_json()).unwrap(), f);
    }

    #[test]
    fn bad_files() {
        assert!(GroupFile::parse("{\"degree\": 3}").is_err());
        let f = GroupFile::parse(r#"{"degree": 3, "generators": ["(1,5)"]}"#).unwrap();
        assert!(f.build(&Caps::default()).is_err());
    }
}
