//! The division of the D, E and F root posets into "levels".
//!
//! Each level is recorded as tabulated in the reference level tables: coefficient
//! conditions, minimal elements, maximal element and member count. The actual
//! partition is derived from the printed minimal elements (level `k` is the
//! coideal of its minimum minus the coideal of the next level's minimum) and
//! then every printed entry is compared against it. Mismatches are reported as
//! discrepancies instead of failing the build of the table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, Family, Root};
use crate::error::{Error, Result};
use crate::root_poset::RootPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// `coefficient(node) relation value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub node: usize,
    pub relation: Relation,
    pub value: u32,
}

impl Condition {
    fn new(node: usize, relation: Relation, value: u32) -> Self {
        Condition { node, relation, value }
    }

    pub fn holds(&self, root: &Root) -> bool {
        let c = root.coeffs()[self.node];
        match self.relation {
            Relation::Eq => c == self.value,
            Relation::Le => c <= self.value,
            Relation::Ge => c >= self.value,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let op = match self.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        format!("{} {} {}", names[self.node], op, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrintedMinimal {
    /// "k simple roots": the listed simple roots.
    SimpleRoots(Vec<usize>),
    Root(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedLevel {
    pub conditions: Vec<Condition>,
    pub minimal: PrintedMinimal,
    pub maximal: Vec<u32>,
    pub count: usize,
    pub count_text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiscrepancyKind {
    Condition,
    Minimal,
    Maximal,
    Count,
}

impl fmt::Display for DiscrepancyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiscrepancyKind::Condition => "condition",
            DiscrepancyKind::Minimal => "minimal elements",
            DiscrepancyKind::Maximal => "maximal element",
            DiscrepancyKind::Count => "count",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDiscrepancy {
    pub level: usize,
    pub kind: DiscrepancyKind,
    pub printed: String,
    pub derived: String,
}

impl fmt::Display for LevelDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {} {}: printed `{}`, derived `{}`",
            self.level, self.kind, self.printed, self.derived
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub number: usize,
    pub printed: PrintedLevel,
    pub members: Vec<usize>,
    pub minimal: Vec<usize>,
    pub maximal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDecomposition {
    pub diagram: String,
    pub levels: Vec<Level>,
    /// Level number (1-based) of each element.
    pub assignment: Vec<usize>,
    pub discrepancies: Vec<LevelDiscrepancy>,
}

impl LevelDecomposition {
    /// Structural invariants: the levels partition the poset, each has a unique
    /// maximum, level 1 has `n - 1` or `n` minima and every other level one.
    pub fn check_invariants(&self, p: &RootPoset) -> bool {
        let mut seen = vec![0usize; p.len()];
        for l in &self.levels {
            for &m in &l.members {
                seen[m] += 1;
            }
        }
        let n = p.rank();
        seen.iter().all(|&c| c == 1)
            && self.levels.iter().all(|l| l.maximal.len() == 1)
            && self.levels.iter().enumerate().all(|(k, l)| {
                if k == 0 {
                    l.minimal.len() == n - 1 || l.minimal.len() == n
                } else {
                    l.minimal.len() == 1
                }
            })
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.members.len()).collect()
    }
}

fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

/// The reference level table for `diagram`, in this crate's node order.
pub fn printed_table(diagram: &DynkinDiagram) -> Option<Vec<PrintedLevel>> {
    use Relation::*;
    let n = diagram.rank();
    let row = |conditions: Vec<Condition>, minimal, maximal: Vec<u32>, count, text: &str| {
        PrintedLevel { conditions, minimal, maximal, count, count_text: text.to_string() }
    };
    let simple_except_u = PrintedMinimal::SimpleRoots((0..n - 1).collect());
    let u = n - 1;
    let unit_u = {
        let mut v = vec![0; n];
        v[u] = 1;
        v
    };
    let table = match (diagram.family(), n) {
        (Family::D, _) => {
            let mut chain_ones = vec![1; n];
            chain_ones[u] = 0;
            // fork leaf a and u carry 1, the far end of the chain 1, the rest 2
            let mut top = vec![2; n];
            top[0] = 1;
            top[n - 2] = 1;
            top[u] = 1;
            let c = binom2(n);
            vec![
                row(vec![Condition::new(u, Eq, 0)], simple_except_u, chain_ones, c, "(n 2)"),
                row(vec![Condition::new(u, Eq, 1)], PrintedMinimal::Root(unit_u), top, c, "(n 2)"),
            ]
        }
        (Family::E, 6) => vec![
            row(vec![Condition::new(u, Eq, 0)], simple_except_u, vec![1, 1, 1, 1, 1, 0], 15, "15"),
            row(
                vec![Condition::new(u, Eq, 1)],
                PrintedMinimal::Root(unit_u),
                vec![1, 1, 1, 1, 1, 1],
                10,
                "3x3+1",
            ),
            row(
                vec![Condition::new(2, Ge, 2)],
                PrintedMinimal::Root(vec![0, 1, 2, 1, 0, 1]),
                vec![1, 2, 3, 2, 1, 1],
                11,
                "3x3+2",
            ),
        ],
        (Family::E, 7) => vec![
            row(vec![Condition::new(u, Eq, 0)], simple_except_u, vec![1, 1, 1, 1, 1, 1, 0], 21, "21"),
            row(
                vec![Condition::new(u, Eq, 1), Condition::new(2, Le, 1)],
                PrintedMinimal::Root(unit_u),
                vec![1, 1, 1, 1, 1, 1, 1],
                13,
                "3x4+1",
            ),
            row(
                vec![Condition::new(2, Eq, 2), Condition::new(3, Eq, 1)],
                PrintedMinimal::Root(vec![0, 1, 2, 1, 0, 0, 1]),
                vec![1, 2, 2, 1, 1, 1, 1],
                9,
                "3x3",
            ),
            row(
                vec![Condition::new(3, Ge, 2)],
                PrintedMinimal::Root(vec![0, 1, 2, 2, 1, 0, 1]),
                vec![2, 3, 4, 3, 2, 1, 2],
                20,
                "5x3+5",
            ),
        ],
        (Family::E, 8) => vec![
            row(vec![Condition::new(u, Eq, 0)], simple_except_u, vec![1, 1, 1, 1, 1, 1, 1, 0], 28, "28"),
            row(
                vec![Condition::new(u, Eq, 1), Condition::new(2, Le, 1)],
                PrintedMinimal::Root(unit_u),
                vec![1, 1, 1, 1, 1, 1, 1, 1],
                16,
                "3x5+1",
            ),
            row(
                vec![Condition::new(2, Eq, 2), Condition::new(3, Eq, 1)],
                PrintedMinimal::Root(vec![0, 1, 2, 1, 0, 0, 0, 1]),
                vec![1, 2, 2, 1, 1, 1, 1, 1],
                12,
                "3x4",
            ),
            row(
                vec![Condition::new(3, Eq, 2), Condition::new(4, Eq, 1)],
                PrintedMinimal::Root(vec![0, 1, 2, 2, 1, 0, 0, 1]),
                vec![1, 2, 3, 2, 1, 1, 1, 2],
                15,
                "5x3",
            ),
            row(
                vec![Condition::new(3, Eq, 2), Condition::new(4, Eq, 3)],
                PrintedMinimal::Root(vec![0, 1, 2, 2, 2, 1, 0, 1]),
                vec![1, 2, 3, 2, 2, 2, 1, 2],
                15,
                "5x3",
            ),
            row(
                vec![Condition::new(3, Ge, 3)],
                PrintedMinimal::Root(vec![1, 2, 3, 3, 2, 1, 0, 1]),
                vec![2, 4, 6, 5, 4, 3, 12, 3],
                34,
                "5x4+14",
            ),
        ],
        (Family::F, 4) => vec![
            row(
                vec![Condition::new(1, Le, 1)],
                PrintedMinimal::SimpleRoots((0..4).collect()),
                vec![1, 1, 1, 1],
                10,
                "10",
            ),
            row(
                vec![Condition::new(1, Ge, 2)],
                PrintedMinimal::Root(vec![0, 2, 1, 0]),
                vec![2, 4, 3, 2],
                14,
                "3x3+5",
            ),
        ],
        _ => return None,
    };
    Some(table)
}

pub fn render_set(p: &RootPoset, set: &[usize]) -> String {
    set.iter().map(|&i| p.root(i).to_string()).collect::<Vec<_>>().join(", ")
}

pub fn render_conditions(conds: &[Condition], names: &[String]) -> String {
    conds.iter().map(|c| c.render(names)).collect::<Vec<_>>().join(", ")
}

/// Describes a member set by the range of each coordinate the printed
/// conditions mention, e.g. `d = 2, e = 2`.
fn describe_range(p: &RootPoset, members: &[usize], conds: &[Condition]) -> String {
    let names = p.diagram().node_names();
    let mut nodes: Vec<usize> = conds.iter().map(|c| c.node).collect();
    nodes.dedup();
    nodes
        .iter()
        .map(|&node| {
            let vals = members.iter().map(|&m| p.root(m).coeffs()[node]);
            let lo = vals.clone().min().unwrap_or(0);
            let hi = vals.max().unwrap_or(0);
            if lo == hi {
                format!("{} = {}", names[node], lo)
            } else {
                format!("{} in {}..={}", names[node], lo, hi)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn level_decomposition(p: &RootPoset) -> Result<LevelDecomposition> {
    let diagram = p.diagram();
    let table = printed_table(diagram).ok_or_else(|| Error::UnsupportedDiagram { name: diagram.name() })?;
    let names = diagram.node_names();
    let mut discrepancies = Vec::new();

    // minimum of every level above the first
    let mut minima = Vec::new();
    for (k, printed) in table.iter().enumerate().skip(1) {
        let coeffs = match &printed.minimal {
            PrintedMinimal::Root(c) => c,
            PrintedMinimal::SimpleRoots(_) => unreachable!("only level 1 lists simple roots"),
        };
        let idx = p.index_of(coeffs).ok_or_else(|| Error::NotARoot {
            diagram: diagram.name(),
            coeffs: coeffs.clone(),
        })?;
        minima.push((k, idx));
    }

    let mut assignment = vec![1usize; p.len()];
    for &(k, idx) in &minima {
        for x in p.coideal(&[idx]) {
            assignment[x] = assignment[x].max(k + 1);
        }
    }
    // the coideals must be nested for the minima to cut out a partition
    for w in minima.windows(2) {
        if !p.leq(w[0].1, w[1].1) {
            discrepancies.push(LevelDiscrepancy {
                level: w[1].0 + 1,
                kind: DiscrepancyKind::Minimal,
                printed: p.root(w[1].1).to_string(),
                derived: format!("not above the minimum of level {}", w[0].0 + 1),
            });
        }
    }

    let by_conditions: Vec<Option<usize>> = p
        .elements()
        .iter()
        .map(|root| {
            (0..table.len())
                .rev()
                .find(|&k| table[k].conditions.iter().all(|c| c.holds(root)))
                .map(|k| k + 1)
        })
        .collect();

    let mut levels = Vec::new();
    for (k, printed) in table.iter().enumerate() {
        let number = k + 1;
        let members: Vec<usize> = (0..p.len()).filter(|&x| assignment[x] == number).collect();
        let minimal = p.minimal_elements(&members);
        let maximal = p.maximal_elements(&members);

        let selected: Vec<usize> = (0..p.len()).filter(|&x| by_conditions[x] == Some(number)).collect();
        if selected != members {
            discrepancies.push(LevelDiscrepancy {
                level: number,
                kind: DiscrepancyKind::Condition,
                printed: format!(
                    "{} ({} roots)",
                    render_conditions(&printed.conditions, names),
                    selected.len()
                ),
                derived: format!("{} ({} roots)", describe_range(p, &members, &printed.conditions), members.len()),
            });
        }

        let printed_min: Vec<usize> = match &printed.minimal {
            PrintedMinimal::SimpleRoots(nodes) => {
                let mut v: Vec<usize> = nodes
                    .iter()
                    .filter_map(|&node| p.index_of(Root::simple(p.rank(), node).coeffs()))
                    .collect();
                v.sort_unstable();
                v
            }
            PrintedMinimal::Root(c) => p.index_of(c).into_iter().collect(),
        };
        if printed_min != minimal {
            discrepancies.push(LevelDiscrepancy {
                level: number,
                kind: DiscrepancyKind::Minimal,
                printed: render_set(p, &printed_min),
                derived: render_set(p, &minimal),
            });
        }

        let printed_max = p.index_of(&printed.maximal);
        if printed_max.map(|m| vec![m]) != Some(maximal.clone()) {
            discrepancies.push(LevelDiscrepancy {
                level: number,
                kind: DiscrepancyKind::Maximal,
                printed: Root::new(printed.maximal.clone()).to_string(),
                derived: render_set(p, &maximal),
            });
        }

        if printed.count != members.len() {
            discrepancies.push(LevelDiscrepancy {
                level: number,
                kind: DiscrepancyKind::Count,
                printed: format!("{} ({})", printed.count, printed.count_text),
                derived: members.len().to_string(),
            });
        }

        levels.push(Level { number, printed: printed.clone(), members, minimal, maximal });
    }

    Ok(LevelDecomposition { diagram: diagram.name(), levels, assignment, discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decompose(s: &str) -> (RootPoset, LevelDecomposition) {
        let p = RootPoset::build(&s.parse().unwrap());
        let d = level_decomposition(&p).unwrap();
        (p, d)
    }

    #[test]
    fn d_family_has_two_equal_levels() {
        for n in 4..=8 {
            let (p, d) = decompose(&format!("D{n}"));
            assert_eq!(d.sizes(), vec![binom2(n), binom2(n)]);
            assert!(d.discrepancies.is_empty(), "D{n}: {:?}", d.discrepancies);
            assert!(d.check_invariants(&p));
        }
    }

    #[test]
    fn exceptional_level_sizes() {
        assert_eq!(decompose("E6").1.sizes(), vec![15, 10, 11]);
        assert_eq!(decompose("E7").1.sizes(), vec![21, 13, 9, 20]);
        assert_eq!(decompose("E8").1.sizes(), vec![28, 16, 12, 15, 15, 34]);
        assert_eq!(decompose("F4").1.sizes(), vec![10, 14]);
    }

    #[test]
    fn printed_counts_match_their_products() {
        // "3x3+1" style entries against the stored integer
        for name in ["E6", "E7", "E8", "F4"] {
            for level in printed_table(&name.parse().unwrap()).unwrap() {
                let value: usize = level
                    .count_text
                    .split('+')
                    .map(|term| term.split('x').map(|f| f.parse::<usize>().unwrap()).product::<usize>())
                    .sum();
                assert_eq!(value, level.count, "{name}");
            }
        }
    }

    #[test]
    fn invariants_hold_for_all_tables() {
        for name in ["E6", "E7", "E8", "F4", "D4", "D7"] {
            let (p, d) = decompose(name);
            assert!(d.check_invariants(&p), "{name}");
        }
    }

    #[test]
    fn e8_discrepancies_are_found() {
        let (p, d) = decompose("E8");
        let cond = d
            .discrepancies
            .iter()
            .find(|x| x.level == 5 && x.kind == DiscrepancyKind::Condition)
            .expect("row 5 condition");
        assert!(cond.derived.contains("d = 2, e = 2"), "{cond}");
        let max = d
            .discrepancies
            .iter()
            .find(|x| x.level == 6 && x.kind == DiscrepancyKind::Maximal)
            .expect("row 6 maximum");
        assert_eq!(max.derived, p.root(p.highest_root()).to_string());
    }

    #[test]
    fn e6_top_level_maximum_is_the_highest_root() {
        let (p, d) = decompose("E6");
        assert_eq!(d.discrepancies.len(), 1);
        let x = &d.discrepancies[0];
        assert_eq!((x.level, x.kind), (3, DiscrepancyKind::Maximal));
        assert_eq!(p.root(d.levels[2].maximal[0]).coeffs(), &[1, 2, 3, 2, 1, 2]);
    }

    #[test]
    fn non_table_types_are_rejected() {
        for name in ["A4", "B3", "C3", "G2"] {
            let p = RootPoset::build(&name.parse().unwrap());
            assert!(matches!(level_decomposition(&p), Err(Error::UnsupportedDiagram { .. })));
        }
    }
}
