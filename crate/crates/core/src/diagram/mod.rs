//! Oriented knot and link diagrams.
//!
//! A [`Diagram`] is the arc/crossing incidence structure that colorings live
//! on: an arc runs from one undercrossing to the next, and each crossing
//! records its incoming under-arc, its over-arc and its outgoing under-arc.

mod pd;
mod planar;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use pd::{parse_pd, ComponentRange, PdCode};
pub use planar::{braid_closure, PlanarBuilder, Port, Strand};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {crossing} has {found} labels, expected 4")]
    Arity { crossing: usize, found: usize },
    #[error("edge label {label} outside 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("edge label {label} appears {count} times, expected exactly 2")]
    LabelCount { label: u32, count: u32 },
    #[error("non-consecutive component numbering: {detail}")]
    NonConsecutive { detail: String },
    #[error("inconsistent orientation at crossing {crossing}: {detail}")]
    Orientation { crossing: usize, detail: String },
    #[error("free loop: component {component} never passes under a crossing")]
    FreeLoop { component: usize },
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

/// Crossing sign; `+1` when the over-strand, rotated counterclockwise,
/// lines up with the under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            _ => Err(format!("crossing sign must be 1 or -1, got {v}")),
        }
    }
}

pub type ArcId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub sign: Sign,
    pub under_in: ArcId,
    pub over: ArcId,
    pub under_out: ArcId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub name: Option<String>,
    pub arcs: Vec<ArcId>,
    pub crossings: Vec<Crossing>,
    pub components: usize,
}

impl Diagram {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or("<unnamed>")
    }

    /// Column index of every arc id, in `arcs` order.
    pub fn arc_index(&self) -> HashMap<ArcId, usize> {
        self.arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect()
    }

    /// Every violated invariant, as human-readable messages.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let index = self.arc_index();
        if index.len() != self.arcs.len() {
            out.push("duplicate arc identifiers".to_string());
        }
        let mut as_in = vec![0usize; self.arcs.len()];
        let mut as_out = vec![0usize; self.arcs.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            for (role, a) in [("under_in", x.under_in), ("over", x.over), ("under_out", x.under_out)] {
                if !index.contains_key(&a) {
                    out.push(format!("crossing {} references unknown arc {a} as {role}", c + 1));
                }
            }
            if let Some(&i) = index.get(&x.under_in) {
                as_in[i] += 1;
            }
            if let Some(&i) = index.get(&x.under_out) {
                as_out[i] += 1;
            }
        }
        for (i, &a) in self.arcs.iter().enumerate() {
            if as_in[i] != 1 {
                out.push(format!("arc {a} is under_in of {} crossings, expected 1", as_in[i]));
            }
            if as_out[i] != 1 {
                out.push(format!("arc {a} is under_out of {} crossings, expected 1", as_out[i]));
            }
        }
        if self.components == 1 && !self.crossings.is_empty() && self.arcs.len() != self.crossings.len() {
            out.push(format!("knot diagram has {} arcs but {} crossings", self.arcs.len(), self.crossings.len()));
        }
        out
    }

    /// Renames arcs: `order[i]` is the old id that becomes arc `i + 1`.
    pub fn relabel_arcs(&self, order: &[ArcId]) -> Result<Diagram, DiagramError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        let mut current = self.arcs.clone();
        current.sort_unstable();
        if sorted != current {
            return Err(DiagramError::Invalid("relabeling is not a permutation of the arcs".into()));
        }
        let map: HashMap<ArcId, ArcId> = order.iter().enumerate().map(|(i, &old)| (old, i as ArcId + 1)).collect();
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing { sign: x.sign, under_in: map[&x.under_in], over: map[&x.over], under_out: map[&x.under_out] })
            .collect();
        Ok(Diagram {
            name: self.name.clone(),
            arcs: (1..=order.len() as ArcId).collect(),
            crossings,
            components: self.components,
        })
    }

    /// Mirror image: every crossing changes sign, the arc structure is kept.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for x in &mut d.crossings {
            x.sign = x.sign.flip();
        }
        d
    }
}

/// Turns a PD code into a diagram. Arcs are numbered 1, 2, ... in order of
/// the smallest edge label they contain; crossings keep the PD order.
pub fn build_diagram(pd: &PdCode) -> Result<Diagram, DiagramError> {
    let comps = pd.components()?;
    let edges = 2 * pd.crossing_count();
    let comp_of = |e: u32| comps.iter().position(|c| c.contains(e)).expect("label in a component");

    // Over-strand direction and orientation checks.
    let mut over_dirs = Vec::with_capacity(pd.crossing_count());
    for (idx, x) in pd.crossings.iter().enumerate() {
        let [i, j, k, l] = *x;
        let c = comps[comp_of(i)];
        if c.succ(i) != k {
            return Err(DiagramError::Orientation {
                crossing: idx + 1,
                detail: format!("under strand {i} -> {k} runs against the edge numbering"),
            });
        }
        let cj = comps[comp_of(j)];
        // Over goes j -> l (negative) or l -> j (positive). Plain numeric
        // succession wins over wrap-around, which decides 2-edge components.
        let positive = if l == j + 1 && cj.contains(l) {
            false
        } else if j == l + 1 && cj.contains(j) {
            true
        } else if j == cj.last && l == cj.first {
            false
        } else if l == cj.last && j == cj.first {
            true
        } else {
            return Err(DiagramError::Orientation {
                crossing: idx + 1,
                detail: format!("over strand {j}/{l} is not consecutive"),
            });
        };
        over_dirs.push(positive);
    }

    // An edge entering a crossing as an under-edge ends its arc.
    let mut heads_in = vec![0u32; edges + 1];
    for x in &pd.crossings {
        heads_in[x[0] as usize] += 1;
    }
    if let Some(e) = (1..=edges).find(|&e| heads_in[e] > 1) {
        return Err(DiagramError::Orientation {
            crossing: 0,
            detail: format!("edge {e} enters more than one undercrossing"),
        });
    }
    for (ci, c) in comps.iter().enumerate() {
        if !(c.first..=c.last).any(|e| heads_in[e as usize] == 1) {
            return Err(DiagramError::FreeLoop { component: ci + 1 });
        }
    }

    // Walk each component; arcs break after every under-in edge.
    let mut arc_of_edge = vec![0u32; edges + 1];
    let mut arc_min_edge: Vec<u32> = Vec::new();
    for c in &comps {
        let start = (c.first..=c.last).find(|&e| heads_in[e as usize] == 1).expect("checked above");
        let mut e = c.succ(start);
        loop {
            // e begins a new arc
            let id = arc_min_edge.len() as u32;
            arc_min_edge.push(u32::MAX);
            loop {
                arc_of_edge[e as usize] = id;
                arc_min_edge[id as usize] = arc_min_edge[id as usize].min(e);
                if heads_in[e as usize] == 1 {
                    break;
                }
                e = c.succ(e);
            }
            if e == start {
                break;
            }
            e = c.succ(e);
        }
    }
    let mut order: Vec<usize> = (0..arc_min_edge.len()).collect();
    order.sort_by_key(|&a| arc_min_edge[a]);
    let mut label = vec![0 as ArcId; order.len()];
    for (rank, &a) in order.iter().enumerate() {
        label[a] = rank as ArcId + 1;
    }
    let arc = |e: u32| label[arc_of_edge[e as usize] as usize];

    let crossings = pd
        .crossings
        .iter()
        .zip(over_dirs)
        .map(|(x, positive)| Crossing {
            sign: if positive { Sign::Positive } else { Sign::Negative },
            under_in: arc(x[0]),
            over: arc(x[1]),
            under_out: arc(x[2]),
        })
        .collect();
    let d = Diagram { name: None, arcs: (1..=order.len() as ArcId).collect(), crossings, components: comps.len() };
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(DiagramError::Invalid(violations.join("; ")));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        build_diagram(&parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap()).unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components, 1);
        assert!(d.validate().is_empty());
        // Edges {1}, {2,3}, {4,5}, {6}: edge 6 and 1 join across the wrap.
        // X[1,4,2,5]: under 1 -> 2, over 4 -> 5 (negative).
        assert_eq!(d.crossings[0], Crossing { sign: Sign::Negative, under_in: 1, over: 3, under_out: 2 });
        assert!(d.crossings.iter().all(|x| x.sign == Sign::Negative));
    }

    #[test]
    fn hopf_link() {
        let d = build_diagram(&parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap()).unwrap();
        assert_eq!(d.components, 2);
        assert_eq!(d.arc_count(), 2);
        assert!(d.validate().is_empty());
        assert_eq!(d.crossings[0].sign, d.crossings[1].sign);
    }

    #[test]
    fn empty_diagram() {
        let d = build_diagram(&parse_pd("PD[]").unwrap()).unwrap();
        assert_eq!(d.arc_count(), 0);
        assert_eq!(d.components, 0);
    }

    #[test]
    fn under_strand_against_numbering() {
        let pd = PdCode { crossings: vec![[2, 4, 1, 5], [3, 6, 4, 1], [5, 2, 6, 3]] };
        assert!(matches!(build_diagram(&pd), Err(DiagramError::Orientation { crossing: 1, .. })));
    }

    #[test]
    fn over_only_component_is_a_free_loop() {
        // Component {3,4} only passes over the component {1,2}.
        let pd = PdCode { crossings: vec![[1, 4, 2, 3], [2, 3, 1, 4]] };
        assert!(matches!(build_diagram(&pd), Err(DiagramError::FreeLoop { component: 2 })));
    }

    #[test]
    fn validate_reports_unused_arc() {
        let mut d = trefoil();
        d.crossings[0].under_in = d.crossings[1].under_in;
        let v = d.validate();
        assert!(!v.is_empty());
        assert!(v.iter().any(|m| m.contains("under_in of 0")));
    }

    #[test]
    fn validate_reports_dangling_reference() {
        let mut d = trefoil();
        d.crossings[2].over = 99;
        let v = d.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].contains("unknown arc 99"));
    }

    #[test]
    fn relabel_and_json() {
        let d = trefoil().with_name("3_1").relabel_arcs(&[3, 1, 2]).unwrap();
        assert_eq!(d.crossings[0].under_in, 2);
        assert!(d.validate().is_empty());
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["crossings"][0]["sign"], serde_json::json!(-1));
        assert_eq!(v["name"], "3_1");
        let back: Diagram = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
        assert!(trefoil().relabel_arcs(&[1, 2]).is_err());
    }
}
