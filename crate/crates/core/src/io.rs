//! JSON documents for bipartite and k-partite instances.
//!
//! Bipartite instances are either geometric (`pointsP` against `setsQ`, and/or
//! `pointsQ` against `setsP`) or explicit (`m`, `n`, `edges`). Hyper instances
//! carry `"kind": "hyper"` and either `dims`, `parts`, `relation` or `sizes`,
//! `edges`.

use crate::error::{Error, Result};
use crate::geometry::{GeomSet, IncidenceInstance, Mode, Point, SideView, SignSet, DEFAULT_COMPLEXITY};
use crate::hypergraph::{KPartiteInstance, Relation};
use serde::{Deserialize, Serialize};

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DocMode {
    Geometric,
    Explicit,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct GraphDoc {
    #[serde(default = "one")]
    schema_version: u32,
    mode: DocMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points_p: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets_q: Option<Vec<GeomSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points_q: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets_p: Option<Vec<GeomSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct HyperDoc {
    #[serde(default = "one")]
    schema_version: u32,
    kind: String,
    mode: DocMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<Vec<Point>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relation: Option<SignSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<Vec<usize>>>,
}

fn one() -> u32 {
    1
}

fn check_version(v: u32) -> Result<()> {
    if v != INSTANCE_SCHEMA_VERSION {
        return Err(Error::invalid(format!("unsupported schemaVersion {v}")));
    }
    Ok(())
}

fn missing(field: &str) -> Error {
    Error::invalid(format!("instance is missing `{field}`"))
}

/// Either kind of instance, as read from a document.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyInstance {
    Graph(IncidenceInstance),
    Hyper(KPartiteInstance),
}

/// Reads a bipartite or hyper instance, telling them apart by the `kind` field.
pub fn any_instance_from_json(s: &str) -> Result<AnyInstance> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    if v.get("kind").is_some() {
        Ok(AnyInstance::Hyper(hyper_from_value(v)?))
    } else {
        Ok(AnyInstance::Graph(graph_from_value(v)?))
    }
}

pub fn instance_from_json(s: &str) -> Result<IncidenceInstance> {
    graph_from_value(serde_json::from_str(s)?)
}

fn graph_from_value(v: serde_json::Value) -> Result<IncidenceInstance> {
    let d: GraphDoc = serde_json::from_value(v)?;
    check_version(d.schema_version)?;
    let t = d.t.unwrap_or(DEFAULT_COMPLEXITY);
    match d.mode {
        DocMode::Explicit => {
            let m = d.m.ok_or_else(|| missing("m"))?;
            let n = d.n.ok_or_else(|| missing("n"))?;
            IncidenceInstance::explicit(m, n, d.edges.ok_or_else(|| missing("edges"))?)
        }
        DocMode::Geometric => {
            let p = match (d.points_p, d.sets_q) {
                (Some(pts), Some(sets)) => Some((pts, sets)),
                (None, None) => None,
                _ => return Err(Error::invalid("`pointsP` and `setsQ` must be given together")),
            };
            let q = match (d.points_q, d.sets_p) {
                (Some(pts), Some(sets)) => Some((pts, sets)),
                (None, None) => None,
                _ => return Err(Error::invalid("`pointsQ` and `setsP` must be given together")),
            };
            match (p, q) {
                (Some((pp, sq)), Some((pq, sp))) => {
                    IncidenceInstance::geometric_both(SideView::new(pp, sq, t)?, SideView::new(pq, sp, t)?, t)
                }
                (Some((pp, sq)), None) => IncidenceInstance::geometric_with(pp, sq, t),
                (None, Some((pq, sp))) => IncidenceInstance::geometric_dual(pq, sp, t),
                (None, None) => Err(Error::invalid("geometric instance needs `pointsP`/`setsQ` or `pointsQ`/`setsP`")),
            }
        }
    }
}

/// Serializes an instance; a Q-view derived by duality is not written out.
pub fn instance_to_json(inst: &IncidenceInstance) -> String {
    let mut d = GraphDoc {
        schema_version: INSTANCE_SCHEMA_VERSION,
        mode: DocMode::Explicit,
        t: None,
        points_p: None,
        sets_q: None,
        points_q: None,
        sets_p: None,
        m: None,
        n: None,
        edges: None,
    };
    match &inst.mode {
        Mode::Explicit { edges } => {
            d.m = Some(inst.m);
            d.n = Some(inst.n);
            d.edges = Some(edges.clone());
        }
        Mode::Geometric { p_view, q_view, q_derived } => {
            d.mode = DocMode::Geometric;
            if inst.t != DEFAULT_COMPLEXITY {
                d.t = Some(inst.t);
            }
            if let Some(v) = p_view {
                d.points_p = Some(v.points.clone());
                d.sets_q = Some(v.sets.clone());
            }
            if let Some(v) = q_view.as_ref().filter(|_| !q_derived) {
                d.points_q = Some(v.points.clone());
                d.sets_p = Some(v.sets.clone());
            }
        }
    }
    serde_json::to_string_pretty(&d).expect("instance serializes")
}

pub fn hyper_instance_from_json(s: &str) -> Result<KPartiteInstance> {
    hyper_from_value(serde_json::from_str(s)?)
}

fn hyper_from_value(v: serde_json::Value) -> Result<KPartiteInstance> {
    let d: HyperDoc = serde_json::from_value(v)?;
    check_version(d.schema_version)?;
    if d.kind != "hyper" {
        return Err(Error::invalid(format!("unknown instance kind `{}`", d.kind)));
    }
    match d.mode {
        DocMode::Explicit => KPartiteInstance::explicit(
            d.sizes.ok_or_else(|| missing("sizes"))?,
            d.edges.ok_or_else(|| missing("edges"))?,
        ),
        DocMode::Geometric => {
            let relation = d.relation.ok_or_else(|| missing("relation"))?;
            relation.validate(d.t.unwrap_or(DEFAULT_COMPLEXITY))?;
            KPartiteInstance::geometric(
                d.parts.ok_or_else(|| missing("parts"))?,
                d.dims.ok_or_else(|| missing("dims"))?,
                relation,
            )
        }
    }
}

pub fn hyper_instance_to_json(inst: &KPartiteInstance) -> String {
    let d = match &inst.relation {
        Relation::Explicit(edges) => HyperDoc {
            schema_version: INSTANCE_SCHEMA_VERSION,
            kind: "hyper".into(),
            mode: DocMode::Explicit,
            t: None,
            dims: None,
            parts: None,
            relation: None,
            sizes: Some(inst.sizes.clone()),
            edges: Some(edges.clone()),
        },
        Relation::Generic(set) => HyperDoc {
            schema_version: INSTANCE_SCHEMA_VERSION,
            kind: "hyper".into(),
            mode: DocMode::Geometric,
            t: None,
            dims: Some(inst.dims.clone()),
            parts: Some(inst.parts.clone()),
            relation: Some(set.clone()),
            sizes: None,
            edges: None,
        },
    };
    serde_json::to_string_pretty(&d).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_st_grid;
    use crate::hypergraph::gen_hyper_orientation;

    #[test]
    fn graph_round_trip() {
        let g = gen_st_grid(2).unwrap();
        let back = instance_from_json(&instance_to_json(&g)).unwrap();
        assert_eq!(back, g);
        let e = IncidenceInstance::explicit(3, 2, vec![(2, 1), (0, 0)]).unwrap();
        assert_eq!(instance_from_json(&instance_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn hyper_round_trip_and_detection() {
        let h = gen_hyper_orientation(5, 2).unwrap();
        let s = hyper_instance_to_json(&h);
        assert_eq!(any_instance_from_json(&s).unwrap(), AnyInstance::Hyper(h));
        let g = instance_to_json(&gen_st_grid(1).unwrap());
        assert!(matches!(any_instance_from_json(&g).unwrap(), AnyInstance::Graph(_)));
    }

    #[test]
    fn rejects_bad_documents() {
        for s in [
            r#"{"mode":"explicit","m":2,"n":2}"#,
            r#"{"schemaVersion":2,"mode":"explicit","m":1,"n":1,"edges":[]}"#,
            r#"{"mode":"geometric","pointsP":[[0,0]]}"#,
            r#"{"mode":"explicit","m":1,"n":1,"edges":[[0,1]]}"#,
            r#"{"mode":"explicit","m":1,"n":1,"edges":[],"extra":1}"#,
        ] {
            assert!(instance_from_json(s).is_err(), "{s}");
        }
    }
}
