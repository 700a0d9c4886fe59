//! Planar-diagram (PD) codes.
//!
//! Each crossing is `X[i, j, k, l]`: edge labels listed counterclockwise,
//! starting with the incoming under-edge. The under strand runs `i -> k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
}

/// A link component: the contiguous label range `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentRange {
    pub first: u32,
    pub last: u32,
}

impl ComponentRange {
    pub fn edge_count(&self) -> u32 {
        self.last - self.first + 1
    }

    pub fn contains(&self, e: u32) -> bool {
        (self.first..=self.last).contains(&e)
    }

    /// The edge following `e` along the component's orientation.
    pub fn succ(&self, e: u32) -> u32 {
        if e == self.last {
            self.first
        } else {
            e + 1
        }
    }
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        let pd = PdCode { crossings };
        pd.check()?;
        Ok(pd)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn check(&self) -> Result<(), DiagramError> {
        let edges = 2 * self.crossings.len() as u32;
        let mut seen = vec![0u32; edges as usize + 1];
        for x in &self.crossings {
            for &e in x {
                if e == 0 || e > edges {
                    return Err(DiagramError::LabelOutOfRange { label: e, max: edges });
                }
                seen[e as usize] += 1;
            }
        }
        if let Some((label, &count)) = seen.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(DiagramError::LabelCount { label: label as u32, count });
        }
        self.components().map(|_| ())
    }

    /// Components in increasing label order. Labels on each component must be
    /// a contiguous range, and the two strands through every crossing must pair
    /// labels that are consecutive modulo the component length.
    pub fn components(&self) -> Result<Vec<ComponentRange>, DiagramError> {
        let edges = 2 * self.crossings.len();
        if edges == 0 {
            return Ok(Vec::new());
        }
        // Union-find over the strand pairings (i,k) and (j,l).
        let mut parent: Vec<usize> = (0..=edges).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        for x in &self.crossings {
            for (a, b) in [(x[0], x[2]), (x[1], x[3])] {
                let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: Vec<ComponentRange> = Vec::new();
        let mut e = 1;
        while e <= edges {
            let root = find(&mut parent, e);
            let mut last = e;
            while last < edges && find(&mut parent, last + 1) == root {
                last += 1;
            }
            comps.push(ComponentRange { first: e as u32, last: last as u32 });
            e = last + 1;
        }
        // Contiguity: every root appears in exactly one range.
        let mut roots: Vec<usize> = comps.iter().map(|c| find(&mut parent, c.first as usize)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() != comps.len() {
            return Err(DiagramError::NonConsecutive {
                detail: "a component's labels do not form a contiguous range".into(),
            });
        }
        for (idx, x) in self.crossings.iter().enumerate() {
            for (a, b) in [(x[0], x[2]), (x[1], x[3])] {
                let c = comps.iter().find(|c| c.contains(a)).expect("label in some component");
                if c.succ(a) != b && c.succ(b) != a {
                    return Err(DiagramError::NonConsecutive {
                        detail: format!("crossing {} pairs labels {a} and {b}", idx + 1),
                    });
                }
            }
        }
        Ok(comps)
    }

    /// Over and under alternate along every strand: each edge is the under
    /// strand (slot 0 or 2) at one end and the over strand at the other.
    pub fn is_alternating(&self) -> bool {
        let mut parity: Vec<Option<usize>> = vec![None; 2 * self.crossings.len() + 1];
        for x in &self.crossings {
            for (s, &e) in x.iter().enumerate() {
                match parity[e as usize] {
                    Some(q) if q == s % 2 => return false,
                    _ => parity[e as usize] = Some(s % 2),
                }
            }
        }
        true
    }

    /// No nugatory crossings: no face touches a crossing at two corners.
    pub fn is_reduced(&self) -> bool {
        let face = self.face_labels();
        (0..self.crossings.len()).all(|c| {
            let mut seen: Vec<usize> = face[4 * c..4 * c + 4].to_vec();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == 4
        })
    }

    /// Number of faces of the planar 4-valent graph the code describes.
    /// A connected planar diagram with `n >= 1` crossings has `n + 2`.
    pub fn face_count(&self) -> usize {
        self.face_labels().iter().max().map_or(0, |&f| f + 1)
    }

    /// Face index of each corner `(crossing, slot)`, stored at `4 * crossing + slot`.
    fn face_labels(&self) -> Vec<usize> {
        let n = self.crossings.len();
        // Darts are (crossing, slot); the other end of each edge is the
        // second slot carrying the same label.
        let mut partner = vec![(0usize, 0usize); 4 * n];
        let mut first_seen: Vec<Option<(usize, usize)>> = vec![None; 2 * n + 1];
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &e) in x.iter().enumerate() {
                match first_seen[e as usize].take() {
                    Some((c0, s0)) => {
                        partner[4 * c + s] = (c0, s0);
                        partner[4 * c0 + s0] = (c, s);
                    }
                    None => first_seen[e as usize] = Some((c, s)),
                }
            }
        }
        let mut face = vec![usize::MAX; 4 * n];
        let mut faces = 0;
        for start in 0..4 * n {
            if face[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while face[d] == usize::MAX {
                face[d] = faces;
                let (c, s) = partner[d];
                d = 4 * c + (s + 1) % 4;
            }
            faces += 1;
        }
        face
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "X[{},{},{},{}]", x[0], x[1], x[2], x[3])?;
        }
        write!(f, "]")
    }
}

impl FromStr for PdCode {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, token: &str) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an edge label".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| DiagramError::Syntax { pos: start, msg: "edge label too large".into() })
    }

    fn error(&self, msg: String) -> DiagramError {
        DiagramError::Syntax { pos: self.pos, msg }
    }
}

/// Parses `PD[X[a,b,c,d], ...]` and validates the label invariants.
pub fn parse_pd(text: &str) -> Result<PdCode, DiagramError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    cur.expect("PD")?;
    cur.expect("[")?;
    let mut crossings = Vec::new();
    if cur.peek() == Some(b']') {
        cur.pos += 1;
    } else {
        loop {
            cur.expect("X")?;
            cur.expect("[")?;
            let mut labels = vec![cur.number()?];
            while cur.peek() == Some(b',') {
                cur.pos += 1;
                labels.push(cur.number()?);
            }
            cur.expect("]")?;
            let arr: [u32; 4] = labels
                .as_slice()
                .try_into()
                .map_err(|_| DiagramError::Arity { crossing: crossings.len() + 1, found: labels.len() })?;
            crossings.push(arr);
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                Some(b']') => {
                    cur.pos += 1;
                    break;
                }
                _ => return Err(cur.error("expected ',' or ']'".into())),
            }
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input".into()));
    }
    PdCode::new(crossings)
}
