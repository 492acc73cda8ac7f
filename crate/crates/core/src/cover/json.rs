//! JSON form of the solver output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CoverRelations;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsJson {
    pub c_vars: Vec<String>,
    pub free_c: Vec<String>,
    pub n_subst: BTreeMap<String, String>,
    pub c_subst: BTreeMap<String, String>,
    pub linear: Vec<String>,
    pub d: BTreeMap<String, String>,
    #[serde(rename = "Iq")]
    pub iq: Vec<String>,
    pub cubics_ok: bool,
}

impl RelationsJson {
    pub fn from_relations(rel: &CoverRelations) -> Self {
        let text = |p: &Polynomial| p.to_string();
        RelationsJson {
            c_vars: rel.c_ring().names().to_vec(),
            free_c: rel.free_c().to_vec(),
            n_subst: rel
                .n_subst()
                .iter()
                .map(|(k, v)| (k.clone(), text(v)))
                .collect(),
            c_subst: rel
                .c_subst()
                .iter()
                .map(|(k, v)| (k.clone(), text(v)))
                .collect(),
            linear: rel.linear_relations().iter().map(text).collect(),
            d: rel
                .layout()
                .d
                .iter()
                .zip(rel.d_exprs())
                .map(|(k, v)| (k.clone(), text(v)))
                .collect(),
            iq: rel.quadratic_relations().iter().map(text).collect(),
            cubics_ok: rel.cubics_ok(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn c_ring(&self) -> Result<Ring> {
        Ring::new(&self.c_vars, Default::default())
    }

    /// Parse the quadratic relations back into polynomials.
    pub fn iq_polynomials(&self) -> Result<Vec<Polynomial>> {
        let ring = self.c_ring()?;
        self.iq.iter().map(|s| ring.parse(s)).collect()
    }

    pub fn d_polynomials(&self) -> Result<BTreeMap<String, Polynomial>> {
        let ring = self.c_ring()?;
        self.d
            .iter()
            .map(|(k, v)| Ok((k.clone(), ring.parse(v)?)))
            .collect()
    }
}
