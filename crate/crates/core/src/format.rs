//! JSON complex file format.
//!
//! ```json
//! {"type": "simplicial", "facets": [[1, 2, 3], [2, 3, 4]]}
//! ```
//!
//! ```json
//! {"type": "cell", "dimension": 1,
//!  "faces": {"0": ["a", "b"], "1": ["e"]},
//!  "incidence": {"1": [[0, 0, -1], [1, 0, 1]]}}
//! ```
//!
//! Cell face ids may be strings or integers. Incidence triplets are
//! `[row, col, value]` with `row` a 0-based position in the `(k-1)` face list
//! and `col` a position in the `k` face list; absent triplets are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{CellComplexData, Complex, Incidence, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ComplexFile {
    Simplicial {
        facets: Vec<Vec<i64>>,
    },
    Cell {
        dimension: usize,
        faces: BTreeMap<String, Vec<FaceId>>,
        incidence: BTreeMap<String, Vec<(usize, usize, i64)>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FaceId {
    Int(i64),
    Str(String),
}

impl FaceId {
    fn into_string(self) -> String {
        match self {
            FaceId::Int(i) => i.to_string(),
            FaceId::Str(s) => s,
        }
    }
}

impl ComplexFile {
    pub fn from_complex(complex: &Complex) -> Self {
        match complex {
            Complex::Simplicial(s) => ComplexFile::Simplicial {
                facets: s
                    .facets()
                    .iter()
                    .map(|f| f.vertices().iter().map(|&v| v as i64).collect())
                    .collect(),
            },
            Complex::Cell(c) => {
                let d = c.dimension();
                let faces = (0..=d)
                    .map(|k| {
                        (
                            k.to_string(),
                            c.face_ids(k).iter().cloned().map(FaceId::Str).collect(),
                        )
                    })
                    .collect();
                let incidence = (1..=d)
                    .map(|k| {
                        let inc = c.incidence(k).expect("k within dimension");
                        let mut triplets: Vec<(usize, usize, i64)> = inc
                            .columns
                            .iter()
                            .enumerate()
                            .flat_map(|(col, entries)| {
                                entries.iter().map(move |&(r, v)| (r, col, v))
                            })
                            .collect();
                        triplets.sort_unstable();
                        (k.to_string(), triplets)
                    })
                    .collect();
                ComplexFile::Cell {
                    dimension: d,
                    faces,
                    incidence,
                }
            }
        }
    }

    /// Validates and builds the complex; cell input with `D_{k-1} D_k != 0`
    /// is rejected.
    pub fn into_complex(self) -> Result<Complex> {
        match self {
            ComplexFile::Simplicial { facets } => {
                Ok(SimplicialComplex::from_facets(&facets)?.into())
            }
            ComplexFile::Cell {
                dimension,
                faces,
                incidence,
            } => {
                if dimension == 0 {
                    return Err(Error::Malformed(
                        "cell complex dimension must be >= 1".into(),
                    ));
                }
                let mut faces = grade_keys(faces)?;
                let mut incidence = grade_keys(incidence)?;
                if let Some(&k) = faces.keys().find(|&&k| k > dimension) {
                    return Err(Error::Malformed(format!(
                        "faces given for grade {k} > dimension"
                    )));
                }
                if let Some(&k) = incidence.keys().find(|&&k| k == 0 || k > dimension) {
                    return Err(Error::Malformed(format!(
                        "incidence given for invalid grade {k}"
                    )));
                }
                let face_ids: Vec<Vec<String>> = (0..=dimension)
                    .map(|k| {
                        faces
                            .remove(&k)
                            .unwrap_or_default()
                            .into_iter()
                            .map(FaceId::into_string)
                            .collect()
                    })
                    .collect();
                let mut mats = Vec::with_capacity(dimension);
                for k in 1..=dimension {
                    let (rows, cols) = (face_ids[k - 1].len(), face_ids[k].len());
                    let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cols];
                    for (r, c, v) in incidence.remove(&k).unwrap_or_default() {
                        if r >= rows || c >= cols {
                            return Err(Error::Malformed(format!(
                                "D_{k} triplet ({r}, {c}) outside {rows}x{cols}"
                            )));
                        }
                        if v != 0 {
                            columns[c].push((r, v));
                        }
                    }
                    for col in columns.iter_mut() {
                        col.sort_unstable();
                        if col.windows(2).any(|w| w[0].0 == w[1].0) {
                            return Err(Error::Malformed(format!("D_{k} has a repeated triplet")));
                        }
                    }
                    mats.push(Incidence { rows, columns });
                }
                Ok(CellComplexData::new(face_ids, mats)?.into())
            }
        }
    }
}

fn grade_keys<V>(map: BTreeMap<String, V>) -> Result<BTreeMap<usize, V>> {
    map.into_iter()
        .map(|(k, v)| {
            k.parse::<usize>().map(|k| (k, v)).map_err(|_| {
                Error::Malformed(format!("grade key {k:?} is not a non-negative integer"))
            })
        })
        .collect()
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let file: ComplexFile = serde_json::from_str(text)?;
    file.into_complex()
}

pub fn write_complex(complex: &Complex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(complex)).expect("serializable")
}
