//! JSON interchange format for subgroup lattices.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "group_name": "C6",
//!   "elements": [
//!     {"label": "1", "order": 1, "order_factorization": []},
//!     {"label": "C2", "order": 2, "order_factorization": [[2, 1]]},
//!     {"label": "C3", "order": 3, "order_factorization": [[3, 1]]},
//!     {"label": "C6", "order": 6, "order_factorization": [[2, 1], [3, 1]]}
//!   ],
//!   "covers": [[0, 1], [0, 2], [1, 3], [2, 3]],
//!   "conj_generators": []
//! }
//! ```
//!
//! Exactly one of `covers` and `leq_pairs` must be present. Unknown keys are
//! rejected at every level.

use serde::{Deserialize, Serialize};

use super::{GroupLattice, LatticeError, RawElement, Relation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub label: String,
    pub order: u64,
    pub order_factorization: Vec<(u64, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub format_version: u32,
    pub group_name: String,
    pub elements: Vec<ElementRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq_pairs: Option<Vec<(usize, usize)>>,
    #[serde(default)]
    pub conj_generators: Vec<Vec<usize>>,
}

impl LatticeDocument {
    pub fn into_lattice(self) -> Result<GroupLattice, LatticeError> {
        if self.format_version != FORMAT_VERSION {
            return Err(LatticeError::UnsupportedVersion(self.format_version));
        }
        let relation = match (self.covers, self.leq_pairs) {
            (Some(c), None) => Relation::Covers(c),
            (None, Some(l)) => Relation::LeqPairs(l),
            (Some(_), Some(_)) => {
                return Err(LatticeError::Malformed("both covers and leq_pairs given".into()))
            }
            (None, None) => return Err(LatticeError::Malformed("missing covers or leq_pairs".into())),
        };
        let mut raw = Vec::with_capacity(self.elements.len());
        for e in self.elements {
            let product = e
                .order_factorization
                .iter()
                .try_fold(1u64, |acc, &(p, k)| p.checked_pow(k).and_then(|pk| acc.checked_mul(pk)));
            if product != Some(e.order) {
                return Err(LatticeError::OrderMismatch {
                    label: e.label,
                    order: e.order,
                });
            }
            raw.push(RawElement {
                label: e.label,
                order_factorization: e.order_factorization,
            });
        }
        GroupLattice::from_parts(self.group_name, raw, relation, self.conj_generators)
    }
}

/// Parses and validates an interchange document.
pub fn load_lattice(text: &str) -> Result<GroupLattice, LatticeError> {
    let doc: LatticeDocument = serde_json::from_str(text).map_err(|e| LatticeError::Malformed(e.to_string()))?;
    doc.into_lattice()
}

pub fn load_lattice_file(path: &std::path::Path) -> Result<GroupLattice, LatticeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LatticeError::Malformed(format!("{}: {e}", path.display())))?;
    load_lattice(&text)
}

/// Describes `lattice` as a document using its cover relation.
pub fn to_document(lattice: &GroupLattice) -> LatticeDocument {
    LatticeDocument {
        format_version: FORMAT_VERSION,
        group_name: lattice.name().to_string(),
        elements: lattice
            .elements()
            .iter()
            .map(|e| ElementRecord {
                label: e.label.clone(),
                order: e.order(),
                order_factorization: e.order_factorization.clone(),
            })
            .collect(),
        covers: Some(lattice.cover_pairs()),
        leq_pairs: None,
        conj_generators: lattice.conj_generators().to_vec(),
    }
}

pub fn to_json(lattice: &GroupLattice) -> String {
    serde_json::to_string_pretty(&to_document(lattice)).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_chain_product, build_subspace_lattice};

    const C6: &str = r#"{
        "format_version": 1,
        "group_name": "C[p*q]",
        "elements": [
            {"label": "p*q", "order": 6, "order_factorization": [[2, 1], [3, 1]]},
            {"label": "1", "order": 1, "order_factorization": []},
            {"label": "p", "order": 2, "order_factorization": [[2, 1]]},
            {"label": "q", "order": 3, "order_factorization": [[3, 1]]}
        ],
        "leq_pairs": [[1, 2], [1, 3], [2, 0], [3, 0], [1, 0]]
    }"#;

    #[test]
    fn hand_written_document_equals_builtin() {
        assert_eq!(load_lattice(C6).unwrap(), build_chain_product(&[1, 1], None).unwrap());
    }

    #[test]
    fn round_trip() {
        for l in [
            build_chain_product(&[2, 1, 1], None).unwrap(),
            build_subspace_lattice(3, 2).unwrap(),
            build_chain_product(&[0], None).unwrap(),
        ] {
            assert_eq!(load_lattice(&to_json(&l)).unwrap(), l);
        }
    }

    #[test]
    fn rejects_unknown_keys_and_bad_shapes() {
        let extra = C6.replacen("\"group_name\"", "\"colour\": 1, \"group_name\"", 1);
        assert!(matches!(load_lattice(&extra), Err(LatticeError::Malformed(m)) if m.contains("colour")));
        let both = C6.replacen("\"leq_pairs\"", "\"covers\": [], \"leq_pairs\"", 1);
        assert!(matches!(load_lattice(&both), Err(LatticeError::Malformed(_))));
        let v2 = C6.replacen("\"format_version\": 1", "\"format_version\": 2", 1);
        assert_eq!(load_lattice(&v2).unwrap_err(), LatticeError::UnsupportedVersion(2));
        let bad_order = C6.replacen("\"order\": 6", "\"order\": 7", 1);
        assert!(matches!(load_lattice(&bad_order), Err(LatticeError::OrderMismatch { .. })));
    }

    #[test]
    fn rejects_rank_changing_permutation() {
        // swap "1" and "p"
        let doc = C6.replacen("[1, 0]]", "[1, 0]], \"conj_generators\": [[0, 2, 1, 3]]", 1);
        let err = load_lattice(&doc).unwrap_err();
        assert!(matches!(err, LatticeError::NotAnAutomorphism { what: "rank", .. }), "{err}");
    }

    #[test]
    fn error_messages_name_elements() {
        let doc = C6.replacen("[1, 2], ", "[2, 3], ", 1);
        let msg = load_lattice(&doc).unwrap_err().to_string();
        assert!(msg.contains("\"p\"") && msg.contains("\"q\""), "{msg}");
    }
}
