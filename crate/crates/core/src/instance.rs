//! JSON instance documents.
//!
//! ```json
//! {"version":1,"n":3,"k":1,"arcs":[[0,1,0],[1,2,0]],"meta":{"generator":"manual","params":{},"seed":null}}
//! ```
//!
//! Arcs are written sorted by `(u, v, color)`. Reading validates ranges and
//! rejects self-loops and duplicate triples.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::ColoredMultidigraph;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub version: u32,
    pub n: usize,
    pub k: usize,
    pub arcs: Vec<[usize; 3]>,
    #[serde(default)]
    pub meta: InstanceMeta,
}

impl InstanceDocument {
    pub fn from_digraph(d: &ColoredMultidigraph, meta: InstanceMeta) -> Self {
        Self {
            version: FORMAT_VERSION,
            n: d.n(),
            k: d.k(),
            arcs: d.arcs().map(|(u, v, c)| [u, v, c]).collect(),
            meta,
        }
    }

    pub fn to_digraph(&self) -> Result<ColoredMultidigraph> {
        ColoredMultidigraph::new(self.n, self.k, self.arcs.iter().map(|&[u, v, c]| (u, v, c)))
    }

    /// Sorts arcs into canonical order.
    pub fn canonicalize(&mut self) {
        self.arcs.sort_unstable();
    }

    fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "version: unsupported value {} (expected {FORMAT_VERSION})",
                self.version
            )));
        }
        if self.k == 0 {
            return Err(Error::Format("k: must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, &[u, v, c]) in self.arcs.iter().enumerate() {
            if u >= self.n || v >= self.n {
                return Err(Error::Format(format!(
                    "arcs[{i}]: vertex out of range in [{u},{v},{c}] (n = {})",
                    self.n
                )));
            }
            if c >= self.k {
                return Err(Error::Format(format!(
                    "arcs[{i}]: color out of range in [{u},{v},{c}] (k = {})",
                    self.k
                )));
            }
            if u == v {
                return Err(Error::Format(format!("arcs[{i}]: self-loop [{u},{v},{c}]")));
            }
            if !seen.insert((u, v, c)) {
                return Err(Error::Format(format!(
                    "arcs[{i}]: duplicate arc [{u},{v},{c}]"
                )));
            }
        }
        Ok(())
    }
}

pub fn codec_read(bytes: &[u8]) -> Result<InstanceDocument> {
    let value: serde_json::Value = serde_json::from_slice(bytes)?;
    if value.get("version").is_none() {
        return Err(Error::Format("version: missing mandatory field".into()));
    }
    let doc: InstanceDocument = serde_json::from_value(value)?;
    doc.validate()?;
    Ok(doc)
}

/// Canonical bytes: compact JSON, arcs sorted, trailing newline.
pub fn codec_write(doc: &InstanceDocument) -> Result<Vec<u8>> {
    let mut doc = doc.clone();
    doc.canonicalize();
    doc.validate()?;
    let mut bytes = serde_json::to_vec(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn read_str(s: &str) -> Result<InstanceDocument> {
        codec_read(s.as_bytes())
    }

    #[test]
    fn empty_graph_round_trips_bytes() {
        let doc = InstanceDocument {
            version: 1,
            n: 4,
            k: 2,
            arcs: vec![],
            meta: InstanceMeta::default(),
        };
        let bytes = codec_write(&doc).unwrap();
        assert_eq!(codec_write(&codec_read(&bytes).unwrap()).unwrap(), bytes);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            (r#"{"version":1,"n":2,"k":1,"arcs":[[0,0,0]]}"#, "self-loop"),
            (
                r#"{"version":1,"n":2,"k":1,"arcs":[[0,2,0]]}"#,
                "vertex out of range",
            ),
            (
                r#"{"version":1,"n":2,"k":1,"arcs":[[0,1,1]]}"#,
                "color out of range",
            ),
            (
                r#"{"version":1,"n":2,"k":1,"arcs":[[0,1,0],[0,1,0]]}"#,
                "duplicate",
            ),
            (r#"{"n":2,"k":1,"arcs":[]}"#, "version"),
            (r#"{"version":2,"n":2,"k":1,"arcs":[]}"#, "unsupported"),
        ];
        for (text, needle) in cases {
            let err = read_str(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
        let err = read_str("{\"version\":1,\n\"n\":").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn unsorted_arcs_are_canonicalized_on_write() {
        let doc = read_str(r#"{"version":1,"n":3,"k":2,"arcs":[[2,0,1],[0,1,0],[1,2,1],[0,1,1]]}"#)
            .unwrap();
        let text = String::from_utf8(codec_write(&doc).unwrap()).unwrap();
        assert!(
            text.contains(r#""arcs":[[0,1,0],[0,1,1],[1,2,1],[2,0,1]]"#),
            "{text}"
        );
    }

    fn arb_canonical_doc() -> impl Strategy<Value = InstanceDocument> {
        (1usize..12, 1usize..4, any::<u64>()).prop_flat_map(|(n, k, seed)| {
            proptest::collection::btree_set((0..n, 0..n, 0..k), 0..40).prop_map(move |set| {
                let arcs = set
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, c)| [u, v, c])
                    .collect();
                InstanceDocument {
                    version: 1,
                    n,
                    k,
                    arcs,
                    meta: InstanceMeta {
                        generator: "prop".into(),
                        params: BTreeMap::from([("n".to_string(), serde_json::json!(n))]),
                        seed: Some(seed),
                    },
                }
            })
        })
    }

    proptest! {
        #[test]
        fn read_inverts_write(doc in arb_canonical_doc()) {
            let bytes = codec_write(&doc).unwrap();
            let back = codec_read(&bytes).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.to_digraph().unwrap().arc_count(), doc.arcs.len());
        }
    }
}
