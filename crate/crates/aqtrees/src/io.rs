//! Interchange formats: a JSON document for decompositions, DOT text for
//! decompositions and graphs, and a JSON rendering of verification reports.
//!
//! Vertices appear in every format as zero-padded bit strings (most
//! significant bit first) so the copy/suffix structure stays readable.
//! All exports are deterministic: fixed key order, sorted edges, byte-stable
//! across runs.

use serde::{Deserialize, Serialize};

use crate::builder::{Decomposition, Labeling};
use crate::graph::{build_aq_capped, AugmentedCube, Edge, Vertex};
use crate::verify::{self, VerificationReport};
use crate::{Error, Result};

pub const SCHEMA: &str = "aq-edst-decomposition/1";

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DecompositionDocument {
    pub schema: String,
    pub n: u32,
    pub labeling: LabelingDocument,
    pub trees: Vec<Vec<[String; 2]>>,
    pub leftover: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LabelingDocument {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
}

fn check_structure(d: &Decomposition) -> Result<()> {
    let n = d.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall { got: n, min: 3 });
    }
    if n > 31 {
        return Err(Error::DimensionTooLarge { got: n, max: 31 });
    }
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let tree_size = (1usize << n) - 1;
    if d.trees().len() != n as usize - 1 {
        return fail(format!(
            "expected {} trees, found {}",
            n - 1,
            d.trees().len()
        ));
    }
    for (i, tree) in d.trees().iter().enumerate() {
        if tree.len() != tree_size {
            return fail(format!(
                "tree {} has {} edges, expected {}",
                i + 1,
                tree.len(),
                tree_size
            ));
        }
    }
    let leftover_size = (1usize << (n - 1)) + n as usize - 1;
    if d.leftover().len() != leftover_size {
        return fail(format!(
            "leftover has {} edges, expected {}",
            d.leftover().len(),
            leftover_size
        ));
    }
    let half = 1usize << (n - 1);
    if d.labeling().u().len() != half || d.labeling().v().len() != half {
        return fail(format!(
            "labeling sizes {}/{}, expected {half}/{half}",
            d.labeling().u().len(),
            d.labeling().v().len()
        ));
    }
    Ok(())
}

fn edge_doc(e: Edge, n: u32) -> [String; 2] {
    [e.a().bits(n), e.b().bits(n)]
}

/// Canonical JSON serialization of a structurally valid decomposition.
pub fn export_json(d: &Decomposition) -> Result<String> {
    check_structure(d)?;
    let n = d.n();
    let doc = DecompositionDocument {
        schema: SCHEMA.to_string(),
        n,
        labeling: LabelingDocument {
            u: d.labeling().u().iter().map(|v| v.bits(n)).collect(),
            v: d.labeling().v().iter().map(|v| v.bits(n)).collect(),
        },
        trees: d
            .trees()
            .iter()
            .map(|tree| tree.iter().map(|&e| edge_doc(e, n)).collect())
            .collect(),
        leftover: d.leftover().iter().map(|&e| edge_doc(e, n)).collect(),
        provenance: Some(Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

fn parse_vertex(s: &str, n: u32) -> Result<Vertex> {
    if s.len() != n as usize {
        return Err(Error::InvalidDocument(format!(
            "bit string {s:?} does not have length {n}"
        )));
    }
    Vertex::from_bits(s)
}

fn parse_edges(pairs: &[[String; 2]], n: u32) -> Result<Vec<Edge>> {
    pairs
        .iter()
        .map(|[a, b]| {
            let a = parse_vertex(a, n)?;
            let b = parse_vertex(b, n)?;
            if a == b {
                return Err(Error::InvalidDocument(format!(
                    "degenerate edge on {:?}",
                    a.bits(n)
                )));
            }
            Ok(Edge::new(a, b))
        })
        .collect()
}

/// Parses a decomposition document; verifies it with
/// [`verify::verify_all`] unless `verify` is false, treating any
/// verification failure as a load error.
pub fn import_json(text: &str, run_verification: bool) -> Result<Decomposition> {
    let doc: DecompositionDocument = serde_json::from_str(text)?;
    if doc.schema != SCHEMA {
        return Err(Error::InvalidDocument(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            doc.schema
        )));
    }
    let n = doc.n;
    if n < 3 {
        return Err(Error::DimensionTooSmall { got: n, min: 3 });
    }
    if n > 31 {
        return Err(Error::DimensionTooLarge { got: n, max: 31 });
    }
    let u = doc
        .labeling
        .u
        .iter()
        .map(|s| parse_vertex(s, n))
        .collect::<Result<Vec<_>>>()?;
    let v = doc
        .labeling
        .v
        .iter()
        .map(|s| parse_vertex(s, n))
        .collect::<Result<Vec<_>>>()?;
    let trees = doc
        .trees
        .iter()
        .map(|tree| parse_edges(tree, n))
        .collect::<Result<Vec<_>>>()?;
    let leftover = parse_edges(&doc.leftover, n)?;
    let d = Decomposition::from_parts(n, trees, leftover, Labeling::new(u, v));
    check_structure(&d)?;
    if run_verification {
        let g = build_aq_capped(n, n)?;
        let report = verify::verify_all(&g, &d)?;
        if !report.pass {
            return Err(Error::VerificationFailed(
                report.failures().join("; "),
            ));
        }
    }
    Ok(d)
}

const TREE_COLORS: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
    "#bcbd22", "#8c564b",
];

/// DOT text for a decomposition: one subgraph per tree with a distinct
/// color, the leftover dashed.
pub fn export_dot_decomposition(d: &Decomposition) -> String {
    let n = d.n();
    let mut out = String::new();
    out.push_str(&format!("graph aq{n}_edst {{\n"));
    out.push_str("  node [shape=circle fontname=\"monospace\"];\n");
    for (i, tree) in d.trees().iter().enumerate() {
        let color = TREE_COLORS[i % TREE_COLORS.len()];
        out.push_str(&format!("  subgraph tree_{} {{\n", i + 1));
        out.push_str(&format!("    edge [color=\"{color}\"];\n"));
        for &e in tree {
            out.push_str(&format!(
                "    \"{}\" -- \"{}\";\n",
                e.a().bits(n),
                e.b().bits(n)
            ));
        }
        out.push_str("  }\n");
    }
    out.push_str("  subgraph leftover {\n");
    out.push_str("    edge [style=dashed color=\"#777777\"];\n");
    for &e in d.leftover() {
        out.push_str(&format!(
            "    \"{}\" -- \"{}\";\n",
            e.a().bits(n),
            e.b().bits(n)
        ));
    }
    out.push_str("  }\n}\n");
    out
}

/// DOT text for a bare augmented cube, edges colored by kind.
pub fn export_dot_graph(g: &AugmentedCube) -> String {
    let n = g.n();
    let mut out = String::new();
    out.push_str(&format!("graph aq{n} {{\n"));
    out.push_str("  node [shape=circle fontname=\"monospace\"];\n");
    for (e, kind) in g.edge_kinds() {
        let color = match kind {
            crate::graph::EdgeKind::Hypercube { .. } => "#377eb8",
            crate::graph::EdgeKind::Complement { .. } => "#e41a1c",
        };
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [color=\"{color}\"];\n",
            e.a().bits(n),
            e.b().bits(n)
        ));
    }
    out.push_str("}\n");
    out
}

/// JSON rendering of a verification report (deterministic key order).
pub fn report_to_json(report: &VerificationReport) -> serde_json::Value {
    let n = report.n;
    let bits = |v: Vertex| v.bits(n);
    let edge = |e: Edge| serde_json::json!([bits(e.a()), bits(e.b())]);
    let opt_edge = |e: Option<Edge>| e.map(edge);
    serde_json::json!({
        "n": n,
        "pass": report.pass,
        "trees": report.trees.iter().map(|t| serde_json::json!({
            "edge_count": t.edge_count,
            "expected_edge_count": t.expected_edge_count,
            "foreign_edge": opt_edge(t.foreign_edge),
            "cycle_edge": opt_edge(t.cycle_edge),
            "unreached_vertex": t.unreached_vertex.map(bits),
            "pass": t.pass,
        })).collect::<Vec<_>>(),
        "disjoint": {
            "collision": report.disjoint.collision.map(|(i, j, e)| {
                serde_json::json!({"trees": [i + 1, j + 1], "edge": edge(e)})
            }),
            "pass": report.disjoint.pass,
        },
        "partition": {
            "uncovered": report.partition.uncovered.iter().map(|&e| edge(e)).collect::<Vec<_>>(),
            "doubly_covered": report.partition.doubly_covered.iter().map(|&e| edge(e)).collect::<Vec<_>>(),
            "foreign": report.partition.foreign.iter().map(|&e| edge(e)).collect::<Vec<_>>(),
            "leftover_size": report.partition.leftover_size,
            "expected_leftover_size": report.partition.expected_leftover_size,
            "pass": report.partition.pass,
        },
        "leftover": {
            "support_size": report.leftover.support_size,
            "expected_support_size": report.leftover.expected_support_size,
            "missing": report.leftover.missing.iter().map(|&v| bits(v)).collect::<Vec<_>>(),
            "foreign": report.leftover.foreign.iter().map(|&v| bits(v)).collect::<Vec<_>>(),
            "cycle_edge": opt_edge(report.leftover.cycle_edge),
            "connected": report.leftover.connected,
            "pass": report.leftover.pass,
        },
        "internality": {
            "failures": report.internality.failures.iter().map(|&(i, v, deg)| {
                serde_json::json!({"tree": i + 1, "vertex": bits(v), "degree": deg})
            }).collect::<Vec<_>>(),
            "pass": report.internality.pass,
        },
        "tree_count": report.tree_count,
        "expected_tree_count": report.expected_tree_count,
    })
}
