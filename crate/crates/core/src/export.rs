//! DOT, JSON and TikZ renderings of a root poset. JSON is the only format
//! that can be read back.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, Root};
use crate::error::{Error, Result};
use crate::levels::level_decomposition;
use crate::root_poset::{CoverEdge, LevelProfile, RootPoset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: usize,
    pub coeffs: Vec<u32>,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelsRecord {
    pub profile: Vec<usize>,
    pub coxeter_number: usize,
    pub h: Option<usize>,
    /// Level-table level of each element, for the D, E and F types.
    pub assignment: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub diagram: String,
    pub elements: Vec<ElementRecord>,
    pub covers: Vec<CoverEdge>,
    pub levels: LevelsRecord,
}

impl PosetDocument {
    pub fn from_poset(p: &RootPoset) -> Result<PosetDocument> {
        let profile: LevelProfile = p.level_profile()?;
        let assignment = level_decomposition(p).ok().map(|d| d.assignment);
        Ok(PosetDocument {
            diagram: p.diagram().name(),
            elements: p
                .elements()
                .iter()
                .enumerate()
                .map(|(id, r)| ElementRecord { id, coeffs: r.coeffs().to_vec(), height: r.height() })
                .collect(),
            covers: p.hasse().to_vec(),
            levels: LevelsRecord {
                profile: profile.r,
                coxeter_number: profile.g,
                h: profile.h,
                assignment,
            },
        })
    }

    /// Rebuilds the poset from the listed elements and checks that every
    /// derived field agrees with the document.
    pub fn to_poset(&self) -> Result<RootPoset> {
        let diagram: DynkinDiagram = self.diagram.parse()?;
        let n = diagram.rank();
        let mut roots = Vec::with_capacity(self.elements.len());
        for (k, e) in self.elements.iter().enumerate() {
            if e.id != k {
                return Err(Error::Import(format!("element {k} has id {}", e.id)));
            }
            if e.coeffs.len() != n || e.coeffs.iter().all(|&c| c == 0) {
                return Err(Error::Import(format!("element {k} is not a positive vector of length {n}")));
            }
            let root = Root::new(e.coeffs.clone());
            if root.height() != e.height {
                return Err(Error::Import(format!("element {k} height {} is not {}", e.height, root.height())));
            }
            roots.push(root);
        }
        let p = RootPoset::from_elements(diagram, roots);
        if p.hasse() != self.covers.as_slice() {
            return Err(Error::Import("covers do not match the elements".into()));
        }
        if PosetDocument::from_poset(&p)?.levels != self.levels {
            return Err(Error::Import("level data does not match the elements".into()));
        }
        Ok(p)
    }
}

pub fn export_json(p: &RootPoset) -> Result<String> {
    Ok(serde_json::to_string_pretty(&PosetDocument::from_poset(p)?)?)
}

pub fn import_json(text: &str) -> Result<RootPoset> {
    let doc: PosetDocument = serde_json::from_str(text)?;
    doc.to_poset()
}

fn compact(root: &Root) -> String {
    root.coeffs().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// Hasse diagram with edges labelled by simple-root names, bottom to top.
pub fn export_dot(p: &RootPoset) -> String {
    let names = p.diagram().node_names();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", p.diagram().name()).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for (id, r) in p.elements().iter().enumerate() {
        writeln!(out, "  n{id} [label=\"{}\"];", compact(r)).unwrap();
    }
    for e in p.hasse() {
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.lo, e.hi, names[e.simple]).unwrap();
    }
    out.push_str("}\n");
    out
}

/// TikZ picture placing each root at (index within its height, height).
pub fn export_tikz(p: &RootPoset) -> String {
    let names = p.diagram().node_names();
    let top = p.elements().iter().map(Root::height).max().unwrap_or(0);
    let widths: Vec<usize> = (0..=top).map(|t| p.level_set(t).len()).collect();
    let widest = widths.iter().copied().max().unwrap_or(0) as f64;
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[every node/.style={circle, fill, inner sep=1.5pt}]\n");
    let mut seen = vec![0usize; top + 1];
    for (id, r) in p.elements().iter().enumerate() {
        let t = r.height();
        let x = seen[t] as f64 - (widths[t] as f64 - 1.0) / 2.0 + (widest - 1.0) / 2.0;
        seen[t] += 1;
        writeln!(out, "  \\node (n{id}) at ({x:.1}, {t}) {{}};").unwrap();
    }
    for e in p.hasse() {
        writeln!(
            out,
            "  \\draw (n{}) -- node[fill=none, font=\\tiny, auto] {{${}$}} (n{});",
            e.lo, names[e.simple], e.hi
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
