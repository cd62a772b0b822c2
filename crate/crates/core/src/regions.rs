//! Complementary regions of a mosaic's link.
//!
//! Each tile is cut into local faces by its chords (a small planar map built
//! from the straight-chord picture). Local faces of neighbouring tiles are
//! glued across shared half-edges of the hexagons, and faces touching the
//! outer rim of the board are glued to the unbounded region. This gives the
//! faces of the link shadow directly, including for split links and
//! crossing-free loops.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::board::HexCoord;
use crate::mosaic::Mosaic;
use crate::tiles::{all_signed_diagrams, crossing_point, midpoint, Chord, TileDiagram};

/// Local faces of one tile diagram. The unbounded face of the local map is
/// dropped; ids `0..face_count` index the faces inside the hexagon.
#[derive(Debug, Clone)]
pub struct LocalMap {
    pub face_count: usize,
    /// Face touching half-side `h` of edge `e`; half 0 runs from the
    /// midpoint clockwise to the corner shared with edge `e - 1`, half 1
    /// counterclockwise to the corner shared with edge `e + 1`.
    pub half_side: [[usize; 2]; 6],
    /// For each crossing `(a, b)` with `a < b`, the face in corner `k`
    /// between slot `k` and slot `k + 1`, where slot `i` points towards the
    /// `i`-th smallest endpoint of the two chords.
    pub corners: BTreeMap<(Chord, Chord), [usize; 4]>,
    /// Face on the left of the chord leaving point `from` (keyed by
    /// `(from, to)`), measured on its first segment.
    pub chord_left: BTreeMap<(u8, u8), usize>,
}

/// Sorted endpoints of two crossing chords; slot `i` points at entry `i`.
pub fn crossing_slots(a: Chord, b: Chord) -> [u8; 4] {
    let mut e = [a.0, a.1, b.0, b.1];
    e.sort();
    e
}

struct Builder {
    pos: Vec<(f64, f64)>,
    darts: Vec<(usize, usize)>,
    dart_index: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn node(&mut self, p: (f64, f64)) -> usize {
        self.pos.push(p);
        self.pos.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            self.dart_index.insert((a, b), self.darts.len());
            self.darts.push((a, b));
        }
    }
}

fn build_local(d: &TileDiagram) -> LocalMap {
    let mut b = Builder { pos: Vec::new(), darts: Vec::new(), dart_index: HashMap::new() };
    let k = 2.0 / 3f64.sqrt();
    let corner: Vec<usize> = (0..6)
        .map(|i| {
            let ang = std::f64::consts::PI / 6.0 * (2 * i + 1) as f64;
            b.node((k * ang.cos(), k * ang.sin()))
        })
        .collect();
    let mid: Vec<usize> = (0..6).map(|i| b.node(midpoint(i))).collect();
    for e in 0..6 {
        b.edge(corner[(e + 5) % 6], mid[e]);
        b.edge(mid[e], corner[e]);
    }
    let mut xnode: BTreeMap<(Chord, Chord), usize> = BTreeMap::new();
    for &(o, u) in d.crossings() {
        let key = (o.min(u), o.max(u));
        let n = b.node(crossing_point(key.0, key.1));
        xnode.insert(key, n);
    }
    let xkey = |x: Chord, y: Chord| (x.min(y), x.max(y));
    // stations along each chord, from the low endpoint
    let mut stations: BTreeMap<Chord, Vec<usize>> = BTreeMap::new();
    for &c in d.arcs() {
        let mut st = vec![mid[c.0 as usize]];
        st.extend(d.crossings_along(c.0).into_iter().map(|y| xnode[&xkey(c, y)]));
        st.push(mid[c.1 as usize]);
        for w in st.windows(2) {
            b.edge(w[0], w[1]);
        }
        stations.insert(c, st);
    }

    // rotation: outgoing darts per node sorted by angle
    let n = b.pos.len();
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, _)) in b.darts.iter().enumerate() {
        around[u].push(i);
    }
    let angle = |i: usize| {
        let (u, v) = b.darts[i];
        (b.pos[v].1 - b.pos[u].1).atan2(b.pos[v].0 - b.pos[u].0)
    };
    for list in &mut around {
        list.sort_by(|&x, &y| angle(x).partial_cmp(&angle(y)).expect("finite"));
    }
    let mut place = vec![0usize; b.darts.len()];
    for list in &around {
        for (k, &i) in list.iter().enumerate() {
            place[i] = k;
        }
    }
    // face on the left: arrive at v, leave by the dart clockwise from the reverse
    let next = |i: usize| {
        let (u, v) = b.darts[i];
        let r = b.dart_index[&(v, u)];
        let list = &around[v];
        list[(place[r] + list.len() - 1) % list.len()]
    };
    let mut face_of = vec![usize::MAX; b.darts.len()];
    let mut areas = Vec::new();
    for start in 0..b.darts.len() {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = areas.len();
        let mut area = 0.0;
        let mut i = start;
        loop {
            face_of[i] = f;
            let (u, v) = b.darts[i];
            area += b.pos[u].0 * b.pos[v].1 - b.pos[v].0 * b.pos[u].1;
            i = next(i);
            if i == start {
                break;
            }
        }
        areas.push(area);
    }
    let outer: Vec<usize> = (0..areas.len()).filter(|&f| areas[f] < 0.0).collect();
    assert_eq!(outer.len(), 1, "tile map must have one outer face");
    let renumber = |f: usize| if f > outer[0] { f - 1 } else { f };
    let left = |u: usize, v: usize| renumber(face_of[b.dart_index[&(u, v)]]);

    let mut half_side = [[0usize; 2]; 6];
    for e in 0..6 {
        half_side[e][0] = left(corner[(e + 5) % 6], mid[e]);
        half_side[e][1] = left(mid[e], corner[e]);
    }
    let mut corners = BTreeMap::new();
    for (&(x, y), &node) in &xnode {
        let slots = crossing_slots(x, y);
        let toward = |p: u8| {
            let c = if x.0 == p || x.1 == p { x } else { y };
            let st = &stations[&c];
            let at = st.iter().position(|&s| s == node).expect("station");
            if p == c.0 {
                st[at - 1]
            } else {
                st[at + 1]
            }
        };
        let mut f = [0usize; 4];
        for (k, &p) in slots.iter().enumerate() {
            f[k] = left(node, toward(p));
        }
        corners.insert((x, y), f);
    }
    let mut chord_left = BTreeMap::new();
    for (&c, st) in &stations {
        chord_left.insert((c.0, c.1), left(st[0], st[1]));
        let l = st.len();
        chord_left.insert((c.1, c.0), left(st[l - 1], st[l - 2]));
    }
    LocalMap { face_count: areas.len() - 1, half_side, corners, chord_left }
}

pub fn local_map(d: &TileDiagram) -> &'static LocalMap {
    static MAPS: OnceLock<HashMap<TileDiagram, LocalMap>> = OnceLock::new();
    let maps = MAPS.get_or_init(|| {
        all_signed_diagrams().into_iter().map(|d| {
            let m = build_local(&d);
            (d, m)
        }).collect()
    });
    &maps[d]
}

pub(crate) struct UnionFind(pub(crate) Vec<usize>);

impl UnionFind {
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Global faces of a mosaic's link. Region 0 is the unbounded one.
#[derive(Debug, Clone)]
pub struct Regions {
    pub count: usize,
    offset: BTreeMap<HexCoord, usize>,
    id: Vec<usize>,
}

pub const EXTERIOR: usize = 0;

impl Regions {
    /// Region of local face `f` of the tile at `c`.
    pub fn region(&self, c: HexCoord, f: usize) -> usize {
        self.id[self.offset[&c] + f]
    }

    pub fn compute(m: &Mosaic) -> Regions {
        let coords = m.coords();
        let mut offset = BTreeMap::new();
        let mut total = 1; // slot 0 is the outside
        for &c in &coords {
            offset.insert(c, total);
            total += local_map(&m.diagram(c)).face_count;
        }
        let mut uf = UnionFind((0..total).collect());
        for &c in &coords {
            let lm = local_map(&m.diagram(c));
            for e in 0..6 {
                let n = c.neighbor(e);
                for h in 0..2 {
                    let mine = offset[&c] + lm.half_side[e][h];
                    match offset.get(&n) {
                        None => uf.union(0, mine),
                        Some(&o) => {
                            let theirs = local_map(&m.diagram(n)).half_side[(e + 3) % 6][1 - h];
                            uf.union(mine, o + theirs);
                        }
                    }
                }
            }
        }
        let mut compact: HashMap<usize, usize> = HashMap::new();
        let mut id = vec![0; total];
        for (i, slot) in id.iter_mut().enumerate() {
            let r = uf.find(i);
            let next = compact.len();
            *slot = *compact.entry(r).or_insert(next);
        }
        Regions { count: compact.len(), offset, id }
    }
}
