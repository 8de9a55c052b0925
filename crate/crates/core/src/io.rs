//! Versioned JSON input: an origami as a permutation pair, or as group data.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::origami::{Convention, GroupDataOrigami, Origami};
use crate::permgroup::Permutation;

pub const SCHEMA: &str = "v1";

/// `{"schema": "v1", "n": 2, "r": [1, 0], "u": [0, 1], "convention": "grgu"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    #[serde(default)]
    pub schema: Option<String>,
    pub n: usize,
    pub r: Vec<usize>,
    pub u: Vec<usize>,
    #[serde(default)]
    pub convention: Convention,
}

/// `G = ⟨g_r, g_u⟩` and `H` by generators, all on `degree` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    #[serde(default)]
    pub schema: Option<String>,
    pub degree: usize,
    pub g_r: Vec<usize>,
    pub g_u: Vec<usize>,
    #[serde(default)]
    pub h: Vec<Vec<usize>>,
    #[serde(default)]
    pub convention: Convention,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum OrigamiInput {
    Pair(PairInput),
    Group(GroupInput),
}

fn perm(field: &str, degree: usize, images: &[usize]) -> Result<Permutation> {
    if images.len() != degree {
        return Err(Error::Input(format!("field `{field}` has {} entries, expected {degree}", images.len())));
    }
    Permutation::from_images(images.to_vec()).map_err(|e| Error::Input(format!("field `{field}`: {e}")))
}

fn check_schema(schema: &Option<String>) -> Result<()> {
    match schema.as_deref() {
        None | Some(SCHEMA) => Ok(()),
        Some(other) => Err(Error::Input(format!("field `schema`: unsupported version {other:?}, expected {SCHEMA:?}"))),
    }
}

impl OrigamiInput {
    /// Parses either shape. Syntax and field errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
        let is_group = value.get("g_r").is_some() || value.get("degree").is_some();
        let parsed = if is_group {
            serde_json::from_str(text).map(OrigamiInput::Group)
        } else {
            serde_json::from_str(text).map(OrigamiInput::Pair)
        };
        let input = parsed.map_err(|e| Error::Input(format!("schema violation: {e}")))?;
        match &input {
            OrigamiInput::Pair(p) => check_schema(&p.schema)?,
            OrigamiInput::Group(g) => check_schema(&g.schema)?,
        }
        Ok(input)
    }

    pub fn pair(o: &Origami) -> Self {
        OrigamiInput::Pair(PairInput {
            schema: Some(SCHEMA.into()),
            n: o.n_squares(),
            r: o.r().to_vec(),
            u: o.u().to_vec(),
            convention: o.convention(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input serializes")
    }

    pub fn build(&self, cfg: &Config) -> Result<GroupDataOrigami> {
        match self {
            OrigamiInput::Pair(p) => {
                let o = Origami::from_pair(perm("r", p.n, &p.r)?, perm("u", p.n, &p.u)?, p.convention)?;
                GroupDataOrigami::from_origami(&o, cfg.element_cap)
            }
            OrigamiInput::Group(g) => {
                let h =
                    g.h.iter()
                        .enumerate()
                        .map(|(i, x)| perm(&format!("h[{i}]"), g.degree, x))
                        .collect::<Result<Vec<_>>>()?;
                GroupDataOrigami::new(
                    perm("g_r", g.degree, &g.g_r)?,
                    perm("g_u", g.degree, &g.g_u)?,
                    h,
                    g.convention,
                    cfg.element_cap,
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_shapes() {
        let pair = OrigamiInput::parse(r#"{"schema":"v1","n":1,"r":[0],"u":[0]}"#).unwrap();
        assert!(matches!(pair, OrigamiInput::Pair(PairInput { n: 1, .. })));
        let data = pair.build(&Config::default()).unwrap();
        assert_eq!(data.origami().genus(), 1);

        let group =
            OrigamiInput::parse(r#"{"degree":3,"g_r":[1,2,0],"g_u":[1,0,2],"h":[[0,2,1]],"convention":"inverse"}"#)
                .unwrap();
        let data = group.build(&Config::default()).unwrap();
        assert_eq!(data.n_squares(), 3);
    }

    #[test]
    fn round_trips() {
        let o = Origami::from_pair(
            Permutation::from_images(vec![1, 2, 0]).unwrap(),
            Permutation::from_images(vec![1, 0, 2]).unwrap(),
            Convention::Grgu,
        )
        .unwrap();
        let input = OrigamiInput::pair(&o);
        assert_eq!(OrigamiInput::parse(&input.to_json()).unwrap(), input);
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let err = OrigamiInput::parse("{\"n\": 2,\n \"r\": [1, 0]\n}").unwrap_err().to_string();
        assert!(err.contains("missing field `u`") && err.contains("line"), "{err}");
        let err = OrigamiInput::parse("{\"n\": 2, ").unwrap_err().to_string();
        assert!(err.contains("malformed JSON"), "{err}");
        let err = OrigamiInput::parse(r#"{"schema":"v2","n":1,"r":[0],"u":[0]}"#).unwrap_err();
        assert!(err.to_string().contains("v2"));
        let err = OrigamiInput::parse(r#"{"n":2,"r":[0,0],"u":[1,0]}"#).unwrap().build(&Config::default()).unwrap_err();
        assert!(err.is_input_error() && err.to_string().contains("`r`"), "{err}");
        let err = OrigamiInput::parse(r#"{"n":2,"r":[0,1],"u":[0,1]}"#).unwrap().build(&Config::default()).unwrap_err();
        assert!(err.is_input_error());
    }
}
