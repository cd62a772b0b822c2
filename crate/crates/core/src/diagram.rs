//! Link diagrams as 4-valent combinatorial maps.
//!
//! Half-edge `4v + i` leaves crossing `v` through slot `i`; slots run
//! counterclockwise, so slots `i` and `i + 2` belong to the strand passing
//! straight through. `over02[v]` tells whether that strand is the one on
//! slots 0 and 2. Faces are stored per half-edge as the face on its left
//! (the corner between slot `i` and slot `i + 1`).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::board::HexCoord;
use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::regions::{crossing_slots, local_map, Regions, EXTERIOR};
use crate::tiles::{chord, Chord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub(crate) twin: Vec<usize>,
    pub(crate) over02: Vec<bool>,
    /// Faces on the two sides of each crossing-free component.
    pub(crate) free_loops: Vec<(usize, usize)>,
    pub(crate) face: Vec<usize>,
    pub(crate) face_count: usize,
    pub(crate) exterior: usize,
    /// Tile and chord pair of each crossing, when extracted from a mosaic.
    pub(crate) anchors: Option<Vec<(HexCoord, Chord, Chord)>>,
}

/// Consecutive crossings along one strand, each tagged over (`true`) or
/// under, given as the half-edges by which the strand leaves them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandRun {
    pub steps: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub const fn vertex(h: usize) -> usize {
    h / 4
}

pub const fn slot(h: usize) -> usize {
    h % 4
}

/// Half-edge through which a strand arriving on `h`'s twin continues.
pub const fn straight(h: usize) -> usize {
    h - h % 4 + (h % 4 + 2) % 4
}

impl LinkDiagram {
    pub fn empty() -> Self {
        LinkDiagram {
            twin: Vec::new(),
            over02: Vec::new(),
            free_loops: Vec::new(),
            face: Vec::new(),
            face_count: 1,
            exterior: 0,
            anchors: None,
        }
    }

    /// Builds a diagram from its map data; faces are the boundary orbits,
    /// so the shadow must be connected. `exterior_half_edge` has the
    /// unbounded face on its left.
    pub fn from_map(twin: Vec<usize>, over02: Vec<bool>, exterior_half_edge: usize) -> Result<Self> {
        let n = over02.len();
        if twin.len() != 4 * n || n == 0 {
            return Err(Error::Invalid("half-edge count must be four per crossing".into()));
        }
        for (h, &t) in twin.iter().enumerate() {
            if t >= twin.len() || twin[t] != h || t == h {
                return Err(Error::Invalid(format!("half-edge {h} has a bad twin")));
            }
        }
        let mut d = LinkDiagram {
            twin,
            over02,
            free_loops: Vec::new(),
            face: Vec::new(),
            face_count: 0,
            exterior: 0,
            anchors: None,
        };
        d.face = vec![usize::MAX; 4 * n];
        let mut count = 0;
        for h in 0..4 * n {
            if d.face[h] != usize::MAX {
                continue;
            }
            let mut g = h;
            while d.face[g] == usize::MAX {
                d.face[g] = count;
                g = d.face_next(g);
            }
            count += 1;
        }
        d.face_count = count;
        d.exterior = d.face[exterior_half_edge];
        if d.shadow_components() != 1 {
            return Err(Error::Invalid("shadow is not connected".into()));
        }
        Ok(d)
    }

    /// The link diagram of a valid mosaic, faces taken from the board.
    pub fn from_mosaic(m: &Mosaic) -> Result<Self> {
        let strands = m.trace_components()?;
        let regions = Regions::compute(m);
        let mut ids: HashMap<(HexCoord, Chord, Chord), usize> = HashMap::new();
        let mut anchors = Vec::new();
        for (c, t) in m.placed() {
            for &(o, u) in t.diagram().crossings() {
                let key = (c, o.min(u), o.max(u));
                ids.insert(key, anchors.len());
                anchors.push(key);
            }
        }
        let n = anchors.len();
        let mut twin = vec![usize::MAX; 4 * n];
        let mut over02 = vec![false; n];
        let mut face = vec![0; 4 * n];
        // first crossing met when entering tile `c` at `entry`
        let walk = |mut c: HexCoord, mut entry: u8| -> (usize, usize) {
            loop {
                let d = m.diagram(c);
                let exit = d.partner(entry).expect("validated mosaic");
                if let Some(&y) = d.crossings_along(entry).first() {
                    let ch = chord(entry, exit);
                    let v = ids[&(c, ch.min(y), ch.max(y))];
                    let s = crossing_slots(ch, y).iter().position(|&p| p == entry).expect("slot");
                    return (v, s);
                }
                c = c.neighbor(exit as usize);
                entry = (exit + 3) % 6;
            }
        };
        for (v, &(c, x, y)) in anchors.iter().enumerate() {
            let d = m.diagram(c);
            let slots = crossing_slots(x, y);
            let top = if d.is_over(x, y) { x } else { y };
            over02[v] = top.0 == slots[0] || top.1 == slots[0];
            let corners = local_map(&d).corners[&(x, y)];
            for i in 0..4 {
                face[4 * v + i] = regions.region(c, corners[i]);
                let p = slots[i];
                let (mine, other) = if x.0 == p || x.1 == p { (x, y) } else { (y, x) };
                let back = if mine.0 == p { mine.1 } else { mine.0 };
                // crossings from the far end towards p
                let along = d.crossings_along(back);
                let at = along.iter().position(|&z| z == other).expect("crossing on chord");
                let (w, s) = match along.get(at + 1) {
                    Some(&z) => {
                        let w = ids[&(c, mine.min(z), mine.max(z))];
                        let s = crossing_slots(mine, z).iter().position(|&q| q == back).expect("slot");
                        (w, s)
                    }
                    None => walk(c.neighbor(p as usize), (p + 3) % 6),
                };
                twin[4 * v + i] = 4 * w + s;
            }
        }
        let mut free_loops = Vec::new();
        for s in &strands {
            let crossed = s.steps.iter().any(|&(c, a, _)| !m.diagram(c).crossings_along(a).is_empty());
            if !crossed {
                let (c, a, b) = s.steps[0];
                let lm = local_map(&m.diagram(c));
                free_loops.push((regions.region(c, lm.chord_left[&(a, b)]), regions.region(c, lm.chord_left[&(b, a)])));
            }
        }
        Ok(LinkDiagram {
            twin,
            over02,
            free_loops,
            face,
            face_count: regions.count,
            exterior: EXTERIOR,
            anchors: Some(anchors),
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.over02.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    /// Face on the left of half-edge `h`, i.e. in corner `slot(h)`.
    pub fn face(&self, h: usize) -> usize {
        self.face[h]
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn exterior_face(&self) -> usize {
        self.exterior
    }

    pub fn free_loops(&self) -> &[(usize, usize)] {
        &self.free_loops
    }

    pub fn anchors(&self) -> Option<&[(HexCoord, Chord, Chord)]> {
        self.anchors.as_deref()
    }

    /// Whether the strand through half-edge `h` is the upper one.
    pub fn is_over(&self, h: usize) -> bool {
        slot(h).is_multiple_of(2) == self.over02[vertex(h)]
    }

    /// Next half-edge along the boundary of the face on the left of `h`.
    pub fn face_next(&self, h: usize) -> usize {
        let t = self.twin[h];
        t - t % 4 + (t % 4 + 3) % 4
    }

    /// Shadow edges: one per twin pair plus one per free loop.
    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2 + self.free_loops.len()
    }

    /// Strand edges as `(h, twin(h))` with `h < twin(h)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.twin.len()).filter(|&h| h < self.twin[h]).map(|h| (h, self.twin[h])).collect()
    }

    /// V − E + F, counting a free loop as one vertex and one edge.
    pub fn euler_characteristic(&self) -> i64 {
        let v = (self.crossing_count() + self.free_loops.len()) as i64;
        v - self.edge_count() as i64 + self.face_count as i64
    }

    /// Connected pieces of the shadow (free loops count separately).
    pub fn shadow_components(&self) -> usize {
        let n = self.crossing_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for h in 0..self.twin.len() {
            let (a, b) = (find(&mut parent, vertex(h)), find(&mut parent, vertex(self.twin[h])));
            parent[a.max(b)] = a.min(b);
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count() + self.free_loops.len()
    }

    /// Link components, each as the list of half-edges it leaves crossings
    /// by, in traversal order. Free loops are not listed.
    pub fn strands(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.twin.len()];
        let mut out = Vec::new();
        for h0 in 0..self.twin.len() {
            if seen[h0] || seen[straight(h0)] {
                continue;
            }
            let mut comp = Vec::new();
            let mut h = h0;
            loop {
                seen[h] = true;
                comp.push(h);
                h = straight(self.twin[h]);
                if h == h0 {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.strands().len() + self.free_loops.len()
    }

    /// Over and under alternate along every component.
    pub fn is_alternating(&self) -> bool {
        self.strands().iter().all(|s| {
            (0..s.len()).all(|i| self.is_over(s[i]) != self.is_over(s[(i + 1) % s.len()]))
        })
    }

    /// Crossings at which two opposite corners lie in the same face, i.e.
    /// cut vertices of the shadow.
    pub fn nugatory_crossings(&self) -> BTreeSet<usize> {
        (0..self.crossing_count())
            .filter(|&v| self.face[4 * v] == self.face[4 * v + 2] || self.face[4 * v + 1] == self.face[4 * v + 3])
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }

    /// Nugatory crossings with a corner in the unbounded face.
    pub fn exterior_nugatory(&self) -> BTreeSet<usize> {
        self.nugatory_crossings()
            .into_iter()
            .filter(|&v| (0..4).any(|i| self.face[4 * v + i] == self.exterior))
            .collect()
    }

    /// Number of shadow-edge sides on the unbounded face.
    pub fn exterior_degree(&self) -> usize {
        self.face_degree(self.exterior)
    }

    pub fn face_degree(&self, f: usize) -> usize {
        self.face.iter().filter(|&&g| g == f).count()
            + self.free_loops.iter().map(|&(a, b)| (a == f) as usize + (b == f) as usize).sum::<usize>()
    }

    /// Crossings with a corner in the unbounded face.
    pub fn exterior_crossings(&self) -> BTreeSet<usize> {
        (0..self.twin.len()).filter(|&h| self.face[h] == self.exterior).map(vertex).collect()
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for o in &mut d.over02 {
            *o = !*o;
        }
        d
    }

    /// Same diagram with the strand through `h` set to pass over (or
    /// under) at `h`'s crossing.
    pub fn with_sign(&self, h: usize, over: bool) -> LinkDiagram {
        let mut d = self.clone();
        d.over02[vertex(h)] = slot(h).is_multiple_of(2) == over;
        d
    }

    /// Signs reassigned so that every component alternates, starting each
    /// component over at its first listed half-edge. `None` when some
    /// component meets a crossing in a way no alternating choice fits.
    pub fn alternated(&self) -> Option<LinkDiagram> {
        let mut d = self.clone();
        let mut set: Vec<Option<bool>> = vec![None; self.crossing_count()];
        for s in self.strands() {
            for (i, &h) in s.iter().enumerate() {
                let want = slot(h).is_multiple_of(2) == (i % 2 == 0);
                match set[vertex(h)] {
                    Some(v) if v != want => return None,
                    _ => set[vertex(h)] = Some(want),
                }
            }
        }
        for (v, o) in set.into_iter().enumerate() {
            d.over02[v] = o.unwrap_or(true);
        }
        Some(d)
    }

    /// The projection seen from the other side of the plane: rotations
    /// reversed and every crossing switched. Same link, same faces.
    pub fn turned_over(&self) -> LinkDiagram {
        let flip = |h: usize| h - h % 4 + (4 - h % 4) % 4;
        let n = self.twin.len();
        let mut twin = vec![0; n];
        let mut face = vec![0; n];
        for h in 0..n {
            twin[flip(h)] = flip(self.twin[h]);
            // the corner left of h lies left of the half-edge one step
            // clockwise after reflection
            face[h - h % 4 + (3 - h % 4 + 4) % 4 % 4] = self.face[h];
        }
        let mut d = self.clone();
        d.twin = twin;
        d.face = face;
        d.over02 = self.over02.iter().map(|o| !o).collect();
        d.free_loops = self.free_loops.iter().map(|&(a, b)| (b, a)).collect();
        d
    }

    /// Removes nugatory crossing `v` by turning over the part of the
    /// shadow on one side of it, so alternation survives.
    pub fn untwist(&self, v: usize) -> Result<LinkDiagram> {
        let n = self.crossing_count();
        let k = (0..2)
            .find(|&k| v < n && self.face[4 * v + k] == self.face[4 * v + k + 2])
            .ok_or_else(|| Error::Precondition(format!("crossing {v} is not nugatory")))?;
        let at = |i: usize| 4 * v + (k + i) % 4;
        if n == 1 {
            let mut d = LinkDiagram::empty();
            d.face_count = 2;
            d.free_loops = vec![(0, 1)];
            return Ok(d);
        }
        // slots k+1, k+2 lead to one side, k+3, k to the other
        let mut side = BTreeSet::new();
        let mut stack = vec![vertex(self.twin[at(3)]), vertex(self.twin[at(0)])];
        while let Some(u) = stack.pop() {
            if u != v && side.insert(u) {
                stack.extend((0..4).map(|i| vertex(self.twin[4 * u + i])));
            }
        }
        let flip = |h: usize| if side.contains(&vertex(h)) { h - h % 4 + (4 - h % 4) % 4 } else { h };
        let new_index = |h: usize| h - 4 * (vertex(h) > v) as usize;
        let mut twin = vec![usize::MAX; 4 * (n - 1)];
        let mut over02 = Vec::with_capacity(n - 1);
        for u in (0..n).filter(|&u| u != v) {
            over02.push(self.over02[u] != side.contains(&u));
            for i in 0..4 {
                let h = 4 * u + i;
                if vertex(self.twin[h]) != v {
                    twin[new_index(flip(h))] = new_index(flip(self.twin[h]));
                }
            }
        }
        let mut join = |a: usize, b: usize| {
            if vertex(a) == v {
                // a kink: the strand returns straight to the crossing
                return;
            }
            twin[new_index(flip(a))] = new_index(flip(b));
            twin[new_index(flip(b))] = new_index(flip(a));
        };
        let (p1, p2, p3, p0) = (self.twin[at(1)], self.twin[at(2)], self.twin[at(3)], self.twin[at(0)]);
        if p1 == at(2) {
            join(p3, p0);
        } else if p3 == at(0) {
            join(p1, p2);
        } else {
            join(p1, p3);
            join(p2, p0);
        }
        let marker = (0..4 * n)
            .find(|&h| vertex(h) != v && self.face[h] == self.exterior)
            .map(|h| if side.contains(&vertex(h)) { h - h % 4 + (3 - h % 4 + 4) % 4 } else { h })
            .ok_or_else(|| Error::Invalid("unbounded face has no corner off the crossing".into()))?;
        LinkDiagram::from_map(twin, over02, new_index(marker))
    }

    /// Untwists nugatory crossings until none is left.
    pub fn without_nugatory(&self) -> Result<LinkDiagram> {
        let mut d = self.clone();
        while let Some(&v) = d.nugatory_crossings().iter().next() {
            d = d.untwist(v)?;
        }
        Ok(d)
    }

    /// A half-edge with the unbounded face on its left, if any.
    pub fn exterior_half_edge(&self) -> Option<usize> {
        self.face.iter().position(|&f| f == self.exterior)
    }

    /// Same diagram with a different unbounded face.
    pub fn with_exterior(&self, face: usize) -> LinkDiagram {
        let mut d = self.clone();
        d.exterior = face;
        d
    }

    /// Half-edges bounding each face, in boundary order.
    pub fn face_boundaries(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut seen = vec![false; self.twin.len()];
        for h in 0..self.twin.len() {
            let mut g = h;
            while !seen[g] {
                seen[g] = true;
                out.entry(self.face[g]).or_default().push(g);
                g = self.face_next(g);
            }
        }
        out
    }
}
