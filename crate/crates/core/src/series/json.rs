//! `{kind, family, entries: [{k, l, c: [c0, c1, c2, c3]}]}` with entries in
//! `(k, l)` order. Floats are written in shortest round-trip form.

use serde::{Deserialize, Serialize};

use super::{SeriesExpansion, SeriesKind};
use crate::basis::{BasisFamily, BasisIndex};
use crate::error::{MonogenicError, Result};
use crate::quaternion::Quaternion;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesEntry {
    pub k: i32,
    pub l: u32,
    pub c: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub kind: SeriesKind,
    pub family: BasisFamily,
    pub entries: Vec<SeriesEntry>,
}

impl From<&SeriesExpansion> for SeriesDocument {
    fn from(s: &SeriesExpansion) -> Self {
        Self {
            kind: s.kind,
            family: s.family,
            entries: s.coeffs.iter().map(|(i, c)| SeriesEntry { k: i.k(), l: i.l() as u32, c: c.to_array() }).collect(),
        }
    }
}

impl TryFrom<SeriesDocument> for SeriesExpansion {
    type Error = MonogenicError;

    fn try_from(doc: SeriesDocument) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.entries.len());
        let mut prev: Option<BasisIndex> = None;
        for e in &doc.entries {
            let idx = BasisIndex::new(e.k, e.l)
                .map_err(|err| MonogenicError::InvalidSeries(format!("entry ({}, {}): {err}", e.k, e.l)))?;
            if prev.is_some_and(|p| p >= idx) {
                return Err(MonogenicError::InvalidSeries(format!("entry {idx} out of order or repeated")));
            }
            if e.c.iter().any(|v| !v.is_finite()) {
                return Err(MonogenicError::InvalidSeries(format!("entry {idx} has a non-finite coefficient")));
            }
            prev = Some(idx);
            terms.push((idx, Quaternion::from_array(e.c)));
        }
        if doc.kind != SeriesKind::Laurent && terms.iter().any(|(i, _)| i.k() < 0) {
            return Err(MonogenicError::InvalidSeries(format!("{:?} series with negative k", doc.kind)));
        }
        SeriesExpansion::from_terms(doc.kind, doc.family, terms)
    }
}

impl SeriesExpansion {
    pub fn to_document(&self) -> SeriesDocument {
        SeriesDocument::from(self)
    }

    /// Pretty-printed JSON document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("series documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SeriesDocument =
            serde_json::from_str(text).map_err(|e| MonogenicError::InvalidSeries(e.to_string()))?;
        Self::try_from(doc)
    }
}
