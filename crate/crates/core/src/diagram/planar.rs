//! Builds PD codes from a planar 4-valent graph whose crossings have their
//! ports listed counterclockwise.

use super::{DiagramError, PdCode};

/// Ports in counterclockwise order: SW, SE, NE, NW.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    SW = 0,
    SE = 1,
    NE = 2,
    NW = 3,
}

/// The two strands through a crossing: `A` joins SW and NE, `B` joins SE and NW.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strand {
    A,
    B,
}

impl Strand {
    fn other(self) -> Strand {
        match self {
            Strand::A => Strand::B,
            Strand::B => Strand::A,
        }
    }

    fn ports(self) -> [usize; 2] {
        match self {
            Strand::A => [0, 2],
            Strand::B => [1, 3],
        }
    }
}

type End = (usize, usize);

#[derive(Debug, Default, Clone)]
pub struct PlanarBuilder {
    over: Vec<Strand>,
    links: Vec<[End; 2]>,
}

impl PlanarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a crossing whose `over` strand passes on top; returns its index.
    pub fn crossing(&mut self, over: Strand) -> usize {
        self.over.push(over);
        self.over.len() - 1
    }

    pub fn connect(&mut self, a: (usize, Port), b: (usize, Port)) {
        self.links.push([(a.0, a.1 as usize), (b.0, b.1 as usize)]);
    }

    pub fn crossing_count(&self) -> usize {
        self.over.len()
    }

    /// Traces the components (starting from the lowest unvisited link, in
    /// the direction it was connected), numbers edges consecutively along
    /// each, and emits the PD code.
    pub fn build(&self) -> Result<PdCode, DiagramError> {
        let n = self.over.len();
        let mut link_at = vec![usize::MAX; 4 * n];
        for (li, ends) in self.links.iter().enumerate() {
            for &(c, p) in ends {
                if c >= n {
                    return Err(DiagramError::Invalid(format!("link {li} references missing crossing {c}")));
                }
                if link_at[4 * c + p] != usize::MAX {
                    return Err(DiagramError::Invalid(format!("port {p} of crossing {c} connected twice")));
                }
                link_at[4 * c + p] = li;
            }
        }
        if let Some(slot) = link_at.iter().position(|&l| l == usize::MAX) {
            return Err(DiagramError::Invalid(format!("port {} of crossing {} is unconnected", slot % 4, slot / 4)));
        }

        let mut label = vec![0u32; self.links.len()];
        // Port at which each link ends, following the traced orientation.
        let mut head = vec![(0usize, 0usize); self.links.len()];
        let mut next_label = 1u32;
        for start in 0..self.links.len() {
            if label[start] != 0 {
                continue;
            }
            let mut li = start;
            let mut to = self.links[start][1];
            while label[li] == 0 {
                label[li] = next_label;
                next_label += 1;
                head[li] = to;
                let (c, p) = to;
                let out = (c, (p + 2) % 4);
                li = link_at[4 * out.0 + out.1];
                let ends = self.links[li];
                // The other end of the outgoing link; a link may loop back to
                // the same crossing.
                to = if ends[0] == out { ends[1] } else { ends[0] };
            }
        }

        let mut crossings = Vec::with_capacity(n);
        for (c, &over) in self.over.iter().enumerate() {
            let under = over.other().ports();
            let incoming = under
                .into_iter()
                .find(|&p| head[link_at[4 * c + p]] == (c, p))
                .expect("one under port receives the strand");
            let mut x = [0u32; 4];
            for (s, slot) in x.iter_mut().enumerate() {
                *slot = label[link_at[4 * c + (incoming + s) % 4]];
            }
            crossings.push(x);
        }
        PdCode::new(crossings)
    }
}

/// Closure of a braid word on `strands` strands. Letter `i > 0` is the
/// positive generator crossing positions `i-1` and `i`; `-i` its inverse.
/// The braid runs top to bottom and is closed on the right.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PdCode, DiagramError> {
    let mut b = PlanarBuilder::new();
    let mut first: Vec<Option<(usize, Port)>> = vec![None; strands];
    let mut current: Vec<Option<(usize, Port)>> = vec![None; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(DiagramError::Invalid(format!("generator {g} out of range for {strands} strands")));
        }
        let (left, right) = (i - 1, i);
        // Positive generator: the strand from the upper right crosses over.
        let c = b.crossing(if g > 0 { Strand::A } else { Strand::B });
        for (pos, port) in [(left, Port::NW), (right, Port::NE)] {
            match current[pos] {
                Some(prev) => b.connect(prev, (c, port)),
                None => first[pos] = Some((c, port)),
            }
        }
        current[left] = Some((c, Port::SW));
        current[right] = Some((c, Port::SE));
    }
    for pos in 0..strands {
        match (current[pos], first[pos]) {
            (Some(bottom), Some(top)) => b.connect(bottom, top),
            _ => return Err(DiagramError::FreeLoop { component: pos + 1 }),
        }
    }
    b.build()
}
