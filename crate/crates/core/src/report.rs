//! Consolidated verification over a set of diagrams.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::antichain::{
    enumerate_antichains, size_distribution, theorem_h, theorem_report, width, Antichain,
    SizeDistribution, TheoremReport,
};
use crate::dynkin::{DynkinDiagram, Family};
use crate::lemma::{find_witness, lemma_conclusion, min_chain_cover, LemmaConclusion, LemmaWitness};
use crate::levels::level_decomposition;
use crate::models::{verify_d_model, verify_interval_model, DModelReport, ModelKind, ModelReport};
use crate::root_poset::{LevelProfile, RootPoset};
use crate::symmetry::{automorphism_group, f4_symmetry, F4Symmetry};

/// A group of checks that can be requested on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Theorem,
    Remark2,
    Models,
    Lemma,
    Symmetry,
}

impl Section {
    pub const ALL: [Section; 5] =
        [Section::Theorem, Section::Remark2, Section::Models, Section::Lemma, Section::Symmetry];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthCheck {
    pub width: usize,
    pub witness: Antichain,
    pub chain_cover: usize,
    /// The simple roots are the only antichain of size `rank`.
    pub unique_top_antichain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCheck {
    pub profile: LevelProfile,
    pub expected_h: Option<usize>,
    pub level_sizes: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionCheck {
    pub distribution: SizeDistribution,
    pub symmetric: bool,
    /// `(n-1)`-antichains are as many as roots.
    pub second_count_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub automorphism_order: usize,
    pub distribution: DistributionCheck,
    pub f4: Option<F4Symmetry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub witness: LemmaWitness,
    /// Node names of the deleted roots.
    pub deleted_labels: Vec<String>,
    pub conclusion: LemmaConclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelsCheck {
    pub interval: Option<ModelReport>,
    pub d: Option<DModelReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub diagram: String,
    pub roots: usize,
    pub theorem: Option<TheoremReport>,
    pub width: Option<WidthCheck>,
    pub remark2: Option<ProfileCheck>,
    pub models: Option<ModelsCheck>,
    pub lemma: Option<LemmaCheck>,
    pub symmetry: Option<SymmetryCheck>,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTableEntry {
    pub column: String,
    pub computed: Option<usize>,
    pub expected: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub diagrams: Vec<DiagramReport>,
    pub h_table: Vec<HTableEntry>,
    pub passed: bool,
}

/// Runs the requested sections for one diagram, collecting failures instead
/// of stopping at the first.
pub fn verify_diagram(diagram: &DynkinDiagram, sections: &BTreeSet<Section>) -> DiagramReport {
    let p = RootPoset::build(diagram);
    let n = diagram.rank();
    let mut r = DiagramReport {
        diagram: diagram.name(),
        roots: p.len(),
        theorem: None,
        width: None,
        remark2: None,
        models: None,
        lemma: None,
        symmetry: None,
        failures: Vec::new(),
        warnings: Vec::new(),
    };
    if !diagram.within_default_range() {
        r.warnings.push(format!("rank {n} is above the default ceiling of 8"));
    }

    if sections.contains(&Section::Theorem) {
        if n < 2 {
            r.warnings.push("rank 1 has no (n-1)-antichain statement".into());
        } else {
            match theorem_report(&p) {
                Ok(t) => r.theorem = Some(t),
                Err(e) => r.failures.push(e.to_string()),
            }
        }
        let (w, witness) = width(&p);
        let all: Vec<usize> = (0..p.len()).collect();
        let chain_cover = min_chain_cover(&p, &all).len();
        let tops: Vec<Antichain> = enumerate_antichains(&p, Some(n)).collect();
        let unique_top_antichain = tops.len() == 1 && tops[0].members() == p.simple_roots();
        if w != n || chain_cover != w {
            r.failures.push(format!("width {w}, chain cover {chain_cover}, rank {n}"));
        }
        if !unique_top_antichain {
            r.failures.push(format!("{} antichains of size {n}", tops.len()));
        }
        r.width = Some(WidthCheck { width: w, witness, chain_cover, unique_top_antichain });
    }

    if sections.contains(&Section::Remark2) {
        match p.level_profile() {
            Ok(profile) => {
                let expected_h = theorem_h(diagram);
                if n >= 2 && profile.h != expected_h {
                    r.failures.push(format!("h = {:?}, table {:?}", profile.h, expected_h));
                }
                let level_sizes = match level_decomposition(&p) {
                    Ok(d) => {
                        if !d.check_invariants(&p) {
                            r.failures.push("level decomposition is not a valid partition".into());
                        }
                        r.warnings.extend(d.discrepancies.iter().map(|x| format!("level table: {x}")));
                        Some(d.sizes())
                    }
                    Err(_) => None,
                };
                r.remark2 = Some(ProfileCheck { profile, expected_h, level_sizes });
            }
            Err(e) => r.failures.push(e.to_string()),
        }
    }

    if sections.contains(&Section::Models) {
        r.models = Some(models_check(diagram, &mut r.failures, &mut r.warnings));
    }

    if sections.contains(&Section::Lemma) {
        let applies = matches!((diagram.family(), n), (Family::E, _) | (Family::F, 4));
        if applies {
            match find_witness(&p).and_then(|w| lemma_conclusion(&p, &w).map(|c| (w, c))) {
                Ok((witness, conclusion)) => {
                    let names = diagram.node_names();
                    let deleted_labels = witness
                        .deleted
                        .iter()
                        .map(|&x| {
                            let c = p.root(x).coeffs();
                            c.iter().position(|&v| v == 1).map_or("?".into(), |k| names[k].clone())
                        })
                        .collect();
                    r.warnings.push(
                        "lemma conclusion checked for antichains: X is the unique maximal antichain of its size"
                            .into(),
                    );
                    r.lemma = Some(LemmaCheck { witness, deleted_labels, conclusion });
                }
                Err(e) => r.failures.push(e.to_string()),
            }
        }
    }

    if sections.contains(&Section::Symmetry) {
        let distribution = size_distribution(&p);
        let check = DistributionCheck {
            symmetric: distribution.is_symmetric(n),
            second_count_matches: n < 1 || distribution.count(n - 1) == p.len() as u64,
            distribution,
        };
        if !check.symmetric || !check.second_count_matches {
            r.failures.push(format!("antichain counts {:?}", check.distribution.counts));
        }
        let f4 = diagram.is(Family::F, 4).then(|| f4_symmetry(&p));
        if f4.as_ref().is_some_and(|f| !f.holds()) {
            r.failures.push("F4 symmetry facts do not hold".into());
        }
        r.symmetry = Some(SymmetryCheck {
            automorphism_order: automorphism_group(&p).order,
            distribution: check,
            f4,
        });
    }
    r
}

fn models_check(diagram: &DynkinDiagram, failures: &mut Vec<String>, warnings: &mut Vec<String>) -> ModelsCheck {
    let n = diagram.rank();
    let interval = match diagram.family() {
        Family::A if n >= 2 => Some(verify_interval_model(ModelKind::A, n)),
        Family::B | Family::C => Some(verify_interval_model(ModelKind::BC, n)),
        _ => None,
    };
    if let Some(m) = &interval {
        if !m.passed() {
            failures.push(format!("{} model: {:?}", m.model, m.failures));
        }
    }
    let d = match diagram.family() {
        Family::D => match verify_d_model(n) {
            Ok(report) => Some(report),
            Err(e) => {
                failures.push(e.to_string());
                None
            }
        },
        _ => None,
    };
    if let Some(d) = &d {
        if !d.projection_passed() {
            failures.push(format!("D model: {:?}", d.counterexamples));
        }
        if !d.preimages_almost_chains {
            warnings.push(format!(
                "D model: preimages of L/R chains are not all almost chains ({} cases, e.g. {}); they have width at most 2",
                d.counterexamples.len(),
                d.counterexamples[0]
            ));
        }
    }
    ModelsCheck { interval, d }
}

type ColumnTest = fn(&DynkinDiagram) -> bool;

fn h_table(reports: &[(DynkinDiagram, Option<usize>)]) -> Vec<HTableEntry> {
    let columns: [(&str, ColumnTest); 9] = [
        ("A_n", |d| d.family() == Family::A),
        ("B_n", |d| d.family() == Family::B),
        ("C_n", |d| d.family() == Family::C),
        ("D_n", |d| d.family() == Family::D),
        ("E6", |d| d.is(Family::E, 6)),
        ("E7", |d| d.is(Family::E, 7)),
        ("E8", |d| d.is(Family::E, 8)),
        ("F4", |d| d.is(Family::F, 4)),
        ("G2", |d| d.is(Family::G, 2)),
    ];
    columns
        .iter()
        .filter_map(|(column, member)| {
            let hs: BTreeSet<Option<usize>> = reports
                .iter()
                .filter(|(d, _)| member(d) && d.rank() >= 2)
                .map(|(_, h)| *h)
                .collect();
            let expected = reports.iter().find(|(d, _)| member(d)).and_then(|(d, _)| theorem_h(d));
            let computed = match hs.len() {
                0 => return None,
                1 => *hs.iter().next().unwrap(),
                _ => None,
            };
            Some(HTableEntry { column: column.to_string(), computed, expected })
        })
        .collect()
}

pub fn full_report(diagrams: &[DynkinDiagram]) -> VerificationReport {
    report_sections(diagrams, &Section::ALL.into_iter().collect())
}

pub fn report_sections(diagrams: &[DynkinDiagram], sections: &BTreeSet<Section>) -> VerificationReport {
    let reports: Vec<DiagramReport> = diagrams.par_iter().map(|d| verify_diagram(d, sections)).collect();
    let hs: Vec<(DynkinDiagram, Option<usize>)> = diagrams
        .iter()
        .map(|d| (d.clone(), RootPoset::build(d).level_profile().ok().and_then(|p| p.h)))
        .collect();
    let passed = reports.iter().all(DiagramReport::passed);
    VerificationReport { diagrams: reports, h_table: h_table(&hs), passed }
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} positive roots)", self.diagram, self.roots)?;
        if let Some(t) = &self.theorem {
            let render = |a: &Antichain| format!("{:?}", a.members());
            writeln!(f, "  theorem: h = {}, Phi_h = {}", t.h, render(&t.phi_h))?;
            match &t.e6_exception {
                None => writeln!(f, "  unique maximal (n-1)-antichain is Phi_h: {}", t.equals_phi_h)?,
                Some(e) => {
                    writeln!(f, "  Phi_h is not maximal; unique maximal antichain {}", render(&t.maximal_list[0]))?;
                    writeln!(f, "  its heights: {:?}; other antichains below Phi_h: {}", e.heights, e.others_dominated_by_phi_h)?;
                }
            }
        }
        if let Some(w) = &self.width {
            writeln!(
                f,
                "  width {} (witness {:?}), minimum chain cover {}, simple roots unique: {}",
                w.width,
                w.witness.members(),
                w.chain_cover,
                w.unique_top_antichain
            )?;
        }
        if let Some(p) = &self.remark2 {
            writeln!(f, "  r(i) = {:?}, g = {}, h = {:?}", p.profile.r, p.profile.g, p.profile.h)?;
            if let Some(s) = &p.level_sizes {
                writeln!(f, "  level sizes {s:?}")?;
            }
        }
        if let Some(m) = &self.models {
            if let Some(i) = &m.interval {
                writeln!(
                    f,
                    "  {} model: isomorphic {}, covers {}, bound {}, long intervals excluded {}",
                    i.model, i.isomorphic, i.covers_ok, i.bound_holds, i.long_intervals_excluded
                )?;
            }
            if let Some(d) = &m.d {
                writeln!(
                    f,
                    "  D model ({} elements): isomorphic {}, projection {}, fibers {}, bound {}, long intervals excluded {}",
                    d.size, d.isomorphic, d.root_pi_ok && d.model_pi_ok, d.fibers_as_labelled, d.bound_holds, d.long_intervals_excluded
                )?;
            }
        }
        if let Some(l) = &self.lemma {
            writeln!(
                f,
                "  lemma: |X| = {}, |Y| = {}, deleted {:?}, max width of P(z) {} <= {}",
                l.witness.x.len(),
                l.witness.y.len(),
                l.deleted_labels,
                l.conclusion.per_element.iter().map(|b| b.width).max().unwrap_or(0),
                l.conclusion.bound
            )?;
        }
        if let Some(s) = &self.symmetry {
            writeln!(
                f,
                "  antichain counts {:?} (symmetric {}), automorphisms {}",
                s.distribution.distribution.counts, s.distribution.symmetric, s.automorphism_order
            )?;
            if let Some(f4) = &s.f4 {
                writeln!(
                    f,
                    "  F4: |Aut| = {}, ideal of height-5 roots has {} elements and |Aut| = {}, moves {} 3-antichains, same 3-antichains: {}",
                    f4.full_order, f4.ideal_size, f4.ideal_order, f4.action_moves, f4.same_three_antichains
                )?;
                if f4.holds() {
                    writeln!(f, "  so the 3-antichains of F4 do not determine the poset up to its symmetries")?;
                }
            }
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        for x in &self.failures {
            writeln!(f, "  FAILED: {x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagrams {
            write!(f, "{d}")?;
        }
        if !self.h_table.is_empty() {
            let cell = |h: Option<usize>| h.map_or("-".to_string(), |h| h.to_string());
            let head: Vec<String> = self.h_table.iter().map(|e| format!("{:>4}", e.column)).collect();
            let row: Vec<String> = self.h_table.iter().map(|e| format!("{:>4}", cell(e.computed))).collect();
            writeln!(f, "Delta {}", head.join(""))?;
            writeln!(f, "h     {}", row.join(""))?;
        }
        writeln!(f, "{}", if self.passed { "all checks passed" } else { "some checks FAILED" })
    }
}
