//! JSON interchange format. Every document is an object with a `kind` field:
//!
//! | kind              | fields                                                       |
//! |-------------------|--------------------------------------------------------------|
//! | `complex`         | `vertices: [v]`, `facets: [[v]]`                             |
//! | `labeled_complex` | as `complex`, plus `labels: [[v, label]]`                    |
//! | `map`             | `source`, `target` (complex bodies), `vertex_map: [[v, w]]`  |
//! | `bad_assignment`  | `complex`, and either `bad_vertices: [v]` or `bar: [[σ, [v]]]` |
//! | `flow`            | `x`, `y`, `c: [[v, c]]`, `delta: [[v, w]]`, `vsel: [[σ, v]]` |
//! | `tree_pair`       | `d`, `domain`, `range` (parenthesis forests), `perm: [i]`    |
//! | `gens`            | `d`, `r`, `elements: [{name, domain, range, perm}]`          |
//! | `fixture`         | `name`, `args: [s]`, `inputs: {name: document}`, `expect`    |
//!
//! A complex body is `{vertices, facets}` without `kind`. Serialization sorts
//! everything, so output is canonical.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::coloring::LabeledTriangulation;
use crate::complex::{Simplex, SimplicialComplex, Vertex, VertexLabeling};
use crate::error::{Error, Result};
use crate::flow::FlowData;
use crate::maps::SimplicialMap;
use crate::thompson::{Forest, TreePair};
use crate::toolkit::BadVertexAssignment;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBody {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Vec<Vertex>>,
}

impl ComplexBody {
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        ComplexBody {
            vertices: x.vertices().into_iter().collect(),
            facets: x.facets().map(|f| f.vertices().to_vec()).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let verts: BTreeSet<Vertex> = self.vertices.iter().copied().collect();
        let mut simplices: Vec<Simplex> = verts.iter().map(|v| Simplex::vertex(*v)).collect();
        for f in &self.facets {
            if let Some(v) = f.iter().find(|v| !verts.contains(v)) {
                return Err(Error::InvalidArgument(format!(
                    "facet {f:?} uses vertex {v}, which is not listed"
                )));
            }
            let s = Simplex::try_new(f.iter().copied())
                .ok_or_else(|| Error::InvalidArgument("empty facet".into()))?;
            if s.len() != f.len() {
                return Err(Error::InvalidArgument(format!("facet {f:?} repeats a vertex")));
            }
            simplices.push(s);
        }
        Ok(SimplicialComplex::new(simplices))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    kind: String,
    vertices: Vec<Vertex>,
    facets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<(Vertex, u32)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    kind: String,
    source: ComplexBody,
    target: ComplexBody,
    vertex_map: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BadDoc {
    kind: String,
    complex: ComplexBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bad_vertices: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bar: Option<Vec<(Vec<Vertex>, Vec<Vertex>)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowDoc {
    kind: String,
    x: ComplexBody,
    y: ComplexBody,
    c: Vec<(Vertex, u64)>,
    delta: Vec<(Vertex, Vertex)>,
    vsel: Vec<(Vec<Vertex>, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreePairBody {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub domain: String,
    pub range: String,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreePairDoc {
    kind: String,
    d: u32,
    domain: String,
    range: String,
    perm: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GensDoc {
    kind: String,
    d: u32,
    r: u32,
    elements: Vec<TreePairBody>,
}

/// Expected outcome of a fixture run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub exit: i32,
    #[serde(default)]
    pub contains: Vec<String>,
}

/// A CLI invocation with its input documents and expected outcome. Input
/// names appear in `args` in place of file paths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default = "fixture_kind", skip_serializing)]
    kind: String,
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub expect: Expectation,
}

fn fixture_kind() -> String {
    "fixture".into()
}

/// Named generators of some `V_{d,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gens {
    pub d: u32,
    pub r: u32,
    pub elements: Vec<(String, TreePair)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Complex(SimplicialComplex),
    Labeled(LabeledTriangulation),
    Map(SimplicialMap),
    BadAssignment(BadVertexAssignment),
    Flow(FlowData),
    TreePair(TreePair),
    Gens(Gens),
    Fixture(Fixture),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Labeled(_) => "labeled_complex",
            Document::Map(_) => "map",
            Document::BadAssignment(_) => "bad_assignment",
            Document::Flow(_) => "flow",
            Document::TreePair(_) => "tree_pair",
            Document::Gens(_) => "gens",
            Document::Fixture(_) => "fixture",
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

fn typed<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_err)
}

fn simplex_of(v: &[Vertex]) -> Result<Simplex> {
    Simplex::try_new(v.iter().copied()).ok_or_else(|| Error::InvalidArgument("empty simplex".into()))
}

fn tree_pair_of(d: u32, b: &TreePairBody) -> Result<TreePair> {
    TreePair::new(Forest::parse(d, &b.domain)?, Forest::parse(d, &b.range)?, b.perm.clone())
}

fn tree_pair_body(name: Option<String>, t: &TreePair) -> TreePairBody {
    TreePairBody {
        name,
        domain: t.domain().to_string(),
        range: t.range().to_string(),
        perm: t.perm().to_vec(),
    }
}

#[derive(Deserialize)]
struct KindOnly {
    kind: Option<String>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let probe: KindOnly = typed(text)?;
    let kind = probe.kind.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing field `kind`".into(),
    })?;
    match kind.as_str() {
        "complex" | "labeled_complex" => {
            let d: ComplexDoc = typed(text)?;
            let x = ComplexBody {
                vertices: d.vertices,
                facets: d.facets,
            }
            .to_complex()?;
            match (kind.as_str(), d.labels) {
                ("complex", None) => Ok(Document::Complex(x)),
                ("labeled_complex", Some(labels)) => {
                    let labeling = VertexLabeling::from_pairs(labels);
                    labeling.covers(&x)?;
                    Ok(Document::Labeled(LabeledTriangulation { complex: x, labeling }))
                }
                ("complex", Some(_)) => Err(Error::InvalidArgument(
                    "a `complex` has no labels; use kind `labeled_complex`".into(),
                )),
                _ => Err(Error::InvalidArgument("`labeled_complex` needs `labels`".into())),
            }
        }
        "map" => {
            let d: MapDoc = typed(text)?;
            let map = d.vertex_map.into_iter().collect();
            Ok(Document::Map(SimplicialMap::new(
                d.source.to_complex()?,
                d.target.to_complex()?,
                map,
            )?))
        }
        "bad_assignment" => {
            let d: BadDoc = typed(text)?;
            let x = d.complex.to_complex()?;
            let b = match (d.bad_vertices, d.bar) {
                (Some(bad), None) => {
                    BadVertexAssignment::from_vertex_subset(&x, &bad.into_iter().collect())
                }
                (None, Some(bar)) => {
                    let mut m = BTreeMap::new();
                    for (s, b) in bar {
                        m.insert(simplex_of(&s)?, b.into_iter().collect());
                    }
                    BadVertexAssignment::new(x, m)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of `bad_vertices` and `bar`".into(),
                    ))
                }
            };
            Ok(Document::BadAssignment(b))
        }
        "flow" => {
            let d: FlowDoc = typed(text)?;
            let mut vsel = BTreeMap::new();
            for (s, v) in d.vsel {
                vsel.insert(simplex_of(&s)?, v);
            }
            Ok(Document::Flow(FlowData::new(
                d.x.to_complex()?,
                d.y.to_complex()?,
                d.c.into_iter().collect(),
                d.delta.into_iter().collect(),
                vsel,
            )?))
        }
        "tree_pair" => {
            let d: TreePairDoc = typed(text)?;
            let body = TreePairBody {
                name: None,
                domain: d.domain,
                range: d.range,
                perm: d.perm,
            };
            Ok(Document::TreePair(tree_pair_of(d.d, &body)?))
        }
        "gens" => {
            let d: GensDoc = typed(text)?;
            let mut elements = Vec::new();
            for (i, b) in d.elements.iter().enumerate() {
                let t = tree_pair_of(d.d, b)?;
                if t.source_roots() != d.r || t.target_roots() != d.r {
                    return Err(Error::ParameterMismatch(format!("element {i} is not in V_{{{},{}}}", d.d, d.r)));
                }
                elements.push((b.name.clone().unwrap_or_else(|| format!("g{i}")), t));
            }
            Ok(Document::Gens(Gens { d: d.d, r: d.r, elements }))
        }
        "fixture" => Ok(Document::Fixture(typed(text)?)),
        other => Err(Error::Parse {
            line: 1,
            message: format!("unknown kind `{other}`"),
        }),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Canonical text of a document.
pub fn to_text(doc: &Document) -> String {
    let kind = doc.kind().to_string();
    match doc {
        Document::Complex(x) => {
            let b = ComplexBody::from_complex(x);
            pretty(&ComplexDoc {
                kind,
                vertices: b.vertices,
                facets: b.facets,
                labels: None,
            })
        }
        Document::Labeled(t) => {
            let b = ComplexBody::from_complex(&t.complex);
            pretty(&ComplexDoc {
                kind,
                vertices: b.vertices,
                facets: b.facets,
                labels: Some(t.labeling.iter().collect()),
            })
        }
        Document::Map(f) => pretty(&MapDoc {
            kind,
            source: ComplexBody::from_complex(f.source()),
            target: ComplexBody::from_complex(f.target()),
            vertex_map: f.vertex_map().iter().map(|(a, b)| (*a, *b)).collect(),
        }),
        Document::BadAssignment(b) => pretty(&BadDoc {
            kind,
            complex: ComplexBody::from_complex(b.carrier()),
            bad_vertices: None,
            bar: Some(
                b.carrier()
                    .simplices_graded()
                    .iter()
                    .map(|s| (s.vertices().to_vec(), b.bar(s).iter().copied().collect()))
                    .collect(),
            ),
        }),
        Document::Flow(f) => pretty(&FlowDoc {
            kind,
            x: ComplexBody::from_complex(f.x()),
            y: ComplexBody::from_complex(f.y()),
            c: f.c().iter().map(|(a, b)| (*a, *b)).collect(),
            delta: f.delta().iter().map(|(a, b)| (*a, *b)).collect(),
            vsel: f.vsel().iter().map(|(s, v)| (s.vertices().to_vec(), *v)).collect(),
        }),
        Document::TreePair(t) => pretty(&TreePairDoc {
            kind,
            d: t.d(),
            domain: t.domain().to_string(),
            range: t.range().to_string(),
            perm: t.perm().to_vec(),
        }),
        Document::Gens(g) => pretty(&GensDoc {
            kind,
            d: g.d,
            r: g.r,
            elements: g
                .elements
                .iter()
                .map(|(n, t)| tree_pair_body(Some(n.clone()), t))
                .collect(),
        }),
        Document::Fixture(f) => {
            let mut v = serde_json::to_value(f).expect("serializable");
            v.as_object_mut()
                .expect("object")
                .insert("kind".into(), serde_json::Value::String(kind));
            pretty(&v)
        }
    }
}

/// A `tree_pair` document kept exactly as written, without reducing.
pub fn parse_tree_pair_unreduced(text: &str) -> Result<TreePair> {
    let d: TreePairDoc = typed(text)?;
    if d.kind != "tree_pair" {
        return Err(Error::InvalidArgument(format!("expected a `tree_pair` document, got `{}`", d.kind)));
    }
    TreePair::new_unreduced(Forest::parse(d.d, &d.domain)?, Forest::parse(d.d, &d.range)?, d.perm)
}

fn wrong_kind(want: &str, got: &Document) -> Error {
    Error::InvalidArgument(format!("expected a `{want}` document, got `{}`", got.kind()))
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty, $label:literal) => {
        pub fn $name(text: &str) -> Result<$ty> {
            match parse_document(text)? {
                Document::$variant(x) => Ok(x),
                other => Err(wrong_kind($label, &other)),
            }
        }
    };
}

expect_kind!(parse_complex, Complex, SimplicialComplex, "complex");
expect_kind!(parse_labeled, Labeled, LabeledTriangulation, "labeled_complex");
expect_kind!(parse_map, Map, SimplicialMap, "map");
expect_kind!(parse_bad_assignment, BadAssignment, BadVertexAssignment, "bad_assignment");
expect_kind!(parse_flow, Flow, FlowData, "flow");
expect_kind!(parse_tree_pair, TreePair, TreePair, "tree_pair");
expect_kind!(parse_gens, Gens, Gens, "gens");
expect_kind!(parse_fixture, Fixture, Fixture, "fixture");
