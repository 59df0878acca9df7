//! JSON group input: `{"kind":"cayley","table":[[...]],"generators":[...]}`
//! or `{"kind":"perm","degree":n,"generators":[[...],...]}`.

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::perm::perm_group_capped;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley {
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl GroupSpec {
    pub fn build(&self, table_cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cayley {
                table,
                generators,
                labels,
                name,
            } => {
                if table.len() > table_cap {
                    return Err(Error::CapExceeded {
                        what: "Cayley table order",
                        size: table.len(),
                        cap: table_cap,
                    });
                }
                let mut g = FiniteGroup::from_table(table.clone(), generators.clone())?;
                if let Some(l) = labels {
                    g = g.with_labels(l.clone())?;
                }
                if let Some(n) = name {
                    g = g.with_name(n.clone());
                }
                Ok(g)
            }
            GroupSpec::Perm {
                degree,
                generators,
                name,
            } => {
                let (mut g, _) = perm_group_capped(*degree, generators, table_cap)?;
                if let Some(n) = name {
                    g = g.with_name(n.clone());
                }
                Ok(g)
            }
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupSpec::Cayley {
            table: g.table(),
            generators: g.generators().to_vec(),
            labels: g.labels().map(|l| l.to_vec()),
            name: g.name().map(str::to_string),
        }
    }
}

pub fn parse_group_json(text: &str, table_cap: usize) -> Result<FiniteGroup> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    spec.build(table_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_kinds() {
        let g = parse_group_json(r#"{"kind":"cayley","table":[[0,1],[1,0]],"generators":[1]}"#, 4096).unwrap();
        assert_eq!(g.order(), 2);
        let s3 = parse_group_json(r#"{"kind":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}"#, 4096).unwrap();
        assert_eq!(s3.order(), 6);
        let back = GroupSpec::from_group(&s3).build(4096).unwrap();
        assert_eq!(back, s3);
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_group_json("{", 10), Err(Error::Parse { .. })));
        let err = parse_group_json(r#"{"kind":"perm","degree":4,"generators":[[1,0,2,3],[1,2,3,0]]}"#, 10).unwrap_err();
        assert!(err.is_cap());
    }
}
