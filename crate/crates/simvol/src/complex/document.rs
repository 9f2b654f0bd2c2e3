//! Reading and writing complexes as JSON documents.
//!
//! Two document shapes are accepted:
//!
//! * explicit face tables — `{"dimension": n, "vertex_count": m,
//!   "edges": [[tail, head], ...], "simplices_2": [[f0, f1, f2], ...], ...,
//!   "simplices_n": [...]}` (`"simplices_1"` is accepted as an alias for
//!   `"edges"`), plus an optional `"name"`;
//! * a facet list — `{"facets": [[v0, ..., vn], ...]}` with optional
//!   `"vertex_count"` and `"name"` — which spans the full simplicial complex
//!   on the listed top simplices.
//!
//! Unknown fields are rejected so that typos surface as errors instead of
//! silently producing a different complex.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::DeltaComplex;
use crate::error::{Error, Result};

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("{what} must be a non-negative integer, got {v}")))
}

fn as_index_rows(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of arrays")))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{what}[{i}] must be an array")))?;
            cells
                .iter()
                .map(|c| as_usize(c, &format!("{what}[{i}] entry")))
                .collect()
        })
        .collect()
}

impl DeltaComplex {
    /// Parses a complex from JSON text.  Syntax errors report the line and
    /// column; shape errors name the offending field.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    /// Parses a complex from an already-decoded JSON value.
    pub fn from_json_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("document root must be a JSON object".into()))?;

        let name = match obj.get("name") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => {
                return Err(Error::Parse(format!("name must be a string, got {other}")))
            }
        };

        if obj.contains_key("facets") {
            return Self::from_facet_document(obj, name);
        }

        let dimension = as_usize(
            obj.get("dimension")
                .ok_or_else(|| Error::Parse("missing field: dimension".into()))?,
            "dimension",
        )?;
        let vertex_count = as_usize(
            obj.get("vertex_count")
                .ok_or_else(|| Error::Parse("missing field: vertex_count".into()))?,
            "vertex_count",
        )?;

        let mut edge_rows: Option<Vec<Vec<usize>>> = None;
        let mut layers: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for (key, val) in obj {
            match key.as_str() {
                "name" | "dimension" | "vertex_count" => {}
                "edges" | "simplices_1" => {
                    if edge_rows.is_some() {
                        return Err(Error::Parse(
                            "give either edges or simplices_1, not both".into(),
                        ));
                    }
                    edge_rows = Some(as_index_rows(val, key)?);
                }
                k if k.starts_with("simplices_") => {
                    let deg: usize = k["simplices_".len()..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("unrecognized field: {k}")))?;
                    if deg < 2 || deg > dimension {
                        return Err(Error::Parse(format!(
                            "field {k} is outside degrees 2..={dimension}"
                        )));
                    }
                    layers.insert(deg, as_index_rows(val, k)?);
                }
                other => {
                    return Err(Error::Parse(format!("unrecognized field: {other}")));
                }
            }
        }

        let edges = edge_rows
            .map(|rows| {
                rows.into_iter()
                    .enumerate()
                    .map(|(i, row)| {
                        if row.len() == 2 {
                            Ok([row[0], row[1]])
                        } else {
                            Err(Error::Parse(format!(
                                "edges[{i}] must be a [tail, head] pair"
                            )))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();

        let mut faces = Vec::new();
        for k in 2..=dimension {
            match layers.remove(&k) {
                Some(layer) => faces.push(layer),
                None => {
                    return Err(Error::Parse(format!("missing field: simplices_{k}")));
                }
            }
        }

        let mut complex = DeltaComplex::new(dimension, vertex_count, edges, faces)?;
        complex.name = name;
        Ok(complex)
    }

    fn from_facet_document(obj: &Map<String, Value>, name: Option<String>) -> Result<Self> {
        for key in obj.keys() {
            if !matches!(key.as_str(), "name" | "facets" | "vertex_count") {
                return Err(Error::Parse(format!(
                    "unrecognized field in facet document: {key}"
                )));
            }
        }
        let facets = as_index_rows(
            obj.get("facets").expect("caller checked the facets key"),
            "facets",
        )?;
        let vertex_count = obj
            .get("vertex_count")
            .map(|v| as_usize(v, "vertex_count"))
            .transpose()?;
        let mut complex = Self::from_facets(&facets, vertex_count)?;
        complex.name = name;
        Ok(complex)
    }

    /// Spans the full simplicial complex on a list of facets (top simplices
    /// given by vertex ids).  All facets must have the same arity and
    /// pairwise-distinct vertices; `vertex_count` defaults to `max id + 1`.
    pub fn from_facets(facets: &[Vec<usize>], vertex_count: Option<usize>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Malformed("facet list is empty".into()));
        }
        let arity = facets[0].len();
        if arity < 2 {
            return Err(Error::Malformed(
                "facets need at least two vertices (dimension >= 1)".into(),
            ));
        }
        let dimension = arity - 1;
        let mut max_vertex = 0usize;
        let mut sorted_facets: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for (i, f) in facets.iter().enumerate() {
            if f.len() != arity {
                return Err(Error::Malformed(format!(
                    "facet {i} has {} vertices, expected {arity}",
                    f.len()
                )));
            }
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("facet {i} repeats a vertex")));
            }
            max_vertex = max_vertex.max(*sorted.last().expect("nonempty facet"));
            sorted_facets.push(sorted);
        }
        sorted_facets.sort_unstable();
        sorted_facets.dedup();
        if sorted_facets.len() != facets.len() {
            return Err(Error::Malformed("duplicate facet in facet list".into()));
        }
        let vertex_count = match vertex_count {
            Some(v) if v > max_vertex => v,
            Some(v) => {
                return Err(Error::Malformed(format!(
                    "vertex_count {v} does not cover vertex id {max_vertex}"
                )))
            }
            None => max_vertex + 1,
        };

        // Collect every sub-simplex of every facet, degree by degree.
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dimension + 1];
        by_degree[dimension] = sorted_facets.clone();
        for k in (1..=dimension).rev() {
            let mut below: Vec<Vec<usize>> = Vec::new();
            for simplex in &by_degree[k] {
                for j in 0..=k {
                    let mut face = simplex.clone();
                    face.remove(j);
                    below.push(face);
                }
            }
            below.sort_unstable();
            below.dedup();
            by_degree[k - 1] = below;
        }

        let index_of = |level: &[Vec<usize>], tuple: &[usize]| -> usize {
            level
                .binary_search_by(|probe| probe.as_slice().cmp(tuple))
                .expect("face of a listed simplex is listed")
        };

        let edges: Vec<[usize; 2]> = by_degree[1].iter().map(|e| [e[0], e[1]]).collect();
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for k in 2..=dimension {
            let layer = by_degree[k]
                .iter()
                .map(|simplex| {
                    (0..=k)
                        .map(|j| {
                            let mut face = simplex.clone();
                            face.remove(j);
                            index_of(&by_degree[k - 1], &face)
                        })
                        .collect()
                })
                .collect();
            faces.push(layer);
        }

        DeltaComplex::new(dimension, vertex_count, edges, faces)
    }

    /// Serializes to the explicit face-table document shape.
    pub fn to_json_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), json!(name));
        }
        obj.insert("dimension".into(), json!(self.dimension));
        obj.insert("vertex_count".into(), json!(self.vertex_count));
        obj.insert(
            "edges".into(),
            json!(self.edges.iter().map(|e| vec![e[0], e[1]]).collect::<Vec<_>>()),
        );
        for k in 2..=self.dimension {
            obj.insert(format!("simplices_{k}"), json!(self.faces[k - 2]));
        }
        Value::Object(obj)
    }

    /// Serializes to pretty-printed JSON text.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("complex serializes")
    }
}
