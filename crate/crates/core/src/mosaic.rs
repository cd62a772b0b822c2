//! Placed-tile grids: validation, boundary completion, strand tracing and
//! the text file format.
//!
//! File format (UTF-8, LF line endings):
//!
//! ```text
//! hexmosaic 1
//! radius <r>
//! <q> <s> <class-id> <rotation>      one line per non-blank tile, sorted by (q, s)
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::board::{self, direction_to, is_interior, ring, EdgeId, HexCoord, TileRegion};
use crate::error::{Error, Result};
use crate::tiles::{catalog, chord, interleave, Chord, PlacedTile, TileDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mosaic {
    radius: i32,
    tiles: BTreeMap<HexCoord, PlacedTile>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OffBoard(HexCoord),
    /// Exactly one of the two tiles sharing this edge uses its point.
    EdgeMismatch(EdgeId),
    /// A connection point on the rim of the board is used.
    RimPoint(EdgeId),
    BoundaryCrossing(HexCoord),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffBoard(c) => write!(f, "tile {c} is off the board"),
            Violation::EdgeMismatch(e) => write!(f, "unmatched connection point at {} edge {}", e.coord, e.direction),
            Violation::RimPoint(e) => write!(f, "rim connection point used at {} edge {}", e.coord, e.direction),
            Violation::BoundaryCrossing(c) => write!(f, "boundary tile {c} has a crossing"),
        }
    }
}

/// One closed strand of the link: `(tile, entry point, exit point)` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub steps: Vec<(HexCoord, u8, u8)>,
}

impl Mosaic {
    pub fn new(radius: i32) -> Result<Self> {
        board::check_radius(radius)?;
        if radius < 2 {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Mosaic { radius, tiles: BTreeMap::new() })
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    /// All board coordinates, sorted.
    pub fn coords(&self) -> Vec<HexCoord> {
        board::board_coords(self.radius).expect("radius checked")
    }

    pub fn get(&self, c: HexCoord) -> Option<PlacedTile> {
        self.tiles.get(&c).copied()
    }

    /// Places a tile; blank tiles are not stored.
    pub fn set(&mut self, c: HexCoord, t: PlacedTile) {
        if t.class == 0 {
            self.tiles.remove(&c);
        } else {
            self.tiles.insert(c, t);
        }
    }

    pub fn set_diagram(&mut self, c: HexCoord, d: &TileDiagram) {
        self.set(c, PlacedTile::from_diagram(d));
    }

    pub fn clear(&mut self, c: HexCoord) {
        self.tiles.remove(&c);
    }

    /// Tile picture at `c` in the board frame (blank if absent).
    pub fn diagram(&self, c: HexCoord) -> TileDiagram {
        self.tiles.get(&c).map(|t| t.diagram()).unwrap_or_else(TileDiagram::blank)
    }

    /// Non-blank tiles in `(q, s)` order.
    pub fn placed(&self) -> impl Iterator<Item = (HexCoord, PlacedTile)> + '_ {
        self.tiles.iter().map(|(&c, &t)| (c, t))
    }

    pub fn region(&self, c: HexCoord) -> TileRegion {
        board::classify_tile(c, self.radius).expect("on board")
    }

    pub fn crossing_count(&self) -> usize {
        self.tiles.values().map(|t| t.crossing_count()).sum()
    }

    /// Copy with every boundary tile blank.
    pub fn interior(&self) -> Mosaic {
        let mut m = self.clone();
        m.tiles.retain(|c, _| is_interior(*c, self.radius));
        m
    }

    pub fn validate(&self) -> Vec<Violation> {
        let r = self.radius;
        let mut out = Vec::new();
        for (&c, t) in &self.tiles {
            if !board::on_board(c, r) {
                out.push(Violation::OffBoard(c));
                continue;
            }
            if !is_interior(c, r) && t.crossing_count() > 0 {
                out.push(Violation::BoundaryCrossing(c));
            }
        }
        for c in self.coords() {
            let d = self.diagram(c);
            for e in 0..6 {
                let n = c.neighbor(e);
                let edge = EdgeId::new(c, e);
                if !board::on_board(n, r) {
                    if d.uses(e as u8) {
                        out.push(Violation::RimPoint(edge));
                    }
                } else if edge.canonical() == edge && d.uses(e as u8) != self.diagram(n).uses(((e + 3) % 6) as u8) {
                    out.push(Violation::EdgeMismatch(edge));
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(v.to_string())),
        }
    }

    /// Closed strands, each starting at its first chord in `(q, s)` order.
    pub fn trace_components(&self) -> Result<Vec<Strand>> {
        self.check()?;
        let mut seen: HashSet<(HexCoord, Chord)> = HashSet::new();
        let mut out = Vec::new();
        for (&c0, t) in &self.tiles {
            for &ch in t.diagram().arcs() {
                if seen.contains(&(c0, ch)) {
                    continue;
                }
                let mut steps = Vec::new();
                let (mut c, mut entry) = (c0, ch.0);
                loop {
                    let d = self.diagram(c);
                    let exit = d.partner(entry).expect("validated");
                    seen.insert((c, chord(entry, exit)));
                    steps.push((c, entry, exit));
                    c = c.neighbor(exit as usize);
                    entry = (exit + 3) % 6;
                    if (c, entry) == (c0, ch.0) {
                        break;
                    }
                }
                out.push(Strand { steps });
            }
        }
        Ok(out)
    }

    pub fn component_count(&self) -> Result<usize> {
        Ok(self.trace_components()?.len())
    }

    /// Every interior tile carries three crossings.
    pub fn is_saturated(&self) -> bool {
        self.coords()
            .into_iter()
            .filter(|&c| is_interior(c, self.radius))
            .all(|c| self.diagram(c).crossing_count() == 3)
    }

    /// Every connection point between the boundary and penultimate coronas
    /// is used.
    pub fn saturated_boundary(&self) -> bool {
        interface_points(self.radius)
            .iter()
            .all(|e| self.diagram(e.coord).uses(e.direction))
    }

    /// Interface points whose interior side is used, in ring order.
    pub fn used_interface_points(&self) -> Vec<EdgeId> {
        interface_points(self.radius)
            .into_iter()
            .filter(|e| {
                let o = e.opposite();
                self.diagram(o.coord).uses(o.direction)
            })
            .collect()
    }

    /// Two completions of the interior through the boundary corona: used
    /// interface points are joined in cyclically consecutive pairs by
    /// crossing-free arcs, the second result using the pairing shifted by
    /// one step. Any existing boundary tiles are discarded.
    pub fn boundary_completions(&self) -> Result<[Mosaic; 2]> {
        Ok([self.complete_boundary(0)?, self.complete_boundary(1)?])
    }

    pub fn complete_boundary(&self, shift: usize) -> Result<Mosaic> {
        let r = self.radius;
        let base = self.interior();
        let pts = base.used_interface_points();
        if pts.len() % 2 == 1 {
            return Err(Error::Parity(pts.len()));
        }
        let ring = ring(r - 1);
        let n = ring.len();
        let index: HashMap<HexCoord, usize> = ring.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let (dp, dn): (Vec<u8>, Vec<u8>) = (0..n)
            .map(|i| ring_dirs(&ring, i))
            .unzip();
        let mut chords: BTreeMap<usize, Vec<Chord>> = BTreeMap::new();
        let m = pts.len();
        for k in 0..m / 2 {
            let j = (2 * k + shift) % m;
            let (a, b) = (pts[j], pts[(j + 1) % m]);
            let (i1, i2) = (index[&a.coord], index[&b.coord]);
            let wraps = j + 1 == m;
            let steps = if wraps && i1 == i2 { n } else { (i2 + n - i1) % n };
            if steps == 0 {
                chords.entry(i1).or_default().push(chord(a.direction, b.direction));
                continue;
            }
            chords.entry(i1).or_default().push(chord(a.direction, dn[i1]));
            for t in 1..steps {
                let i = (i1 + t) % n;
                chords.entry(i).or_default().push(chord(dp[i], dn[i]));
            }
            chords.entry(i2).or_default().push(chord(dp[i2], b.direction));
        }
        let mut out = base;
        for (i, cs) in chords {
            for x in 0..cs.len() {
                for y in x + 1..cs.len() {
                    if interleave(cs[x], cs[y]) {
                        return Err(Error::Construction(format!("boundary arcs cross at {}", ring[i])));
                    }
                }
            }
            let d = TileDiagram::new(&cs, |_, _| true)?;
            out.set_diagram(ring[i], &d);
        }
        out.check()?;
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("hexmosaic 1\nradius {}\n", self.radius);
        for (c, t) in &self.tiles {
            s.push_str(&format!("{} {} {} {}\n", c.q, c.s, t.class, t.rotation));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Mosaic> {
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, "hexmosaic 1")) => {}
            _ => return Err(perr(1, "expected header `hexmosaic 1`")),
        }
        let radius = match lines.next() {
            Some((n, l)) => l
                .strip_prefix("radius ")
                .and_then(|v| v.trim().parse::<i32>().ok())
                .ok_or_else(|| perr(n, "expected `radius <r>`"))?,
            None => return Err(perr(2, "missing radius line")),
        };
        let mut m = Mosaic::new(radius)?;
        for (n, l) in lines {
            if l.is_empty() {
                continue;
            }
            let v: Vec<i64> = l
                .split_whitespace()
                .map(|x| x.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| perr(n, "expected four integers"))?;
            if v.len() != 4 {
                return Err(perr(n, "expected four integers"));
            }
            let c = HexCoord::new(v[0] as i32, v[1] as i32);
            if !board::on_board(c, radius) {
                return Err(Error::OffBoard { coord: c, radius });
            }
            if v[2] < 0 || v[2] as usize >= catalog().len() || !(0..6).contains(&v[3]) {
                return Err(perr(n, "class id or rotation out of range"));
            }
            if m.tiles.contains_key(&c) {
                return Err(perr(n, "duplicate tile"));
            }
            m.set(c, PlacedTile::new(v[2] as usize, v[3] as usize)?);
        }
        Ok(m)
    }
}

/// Directions from ring tile `i` to its predecessor and successor.
fn ring_dirs(ring: &[HexCoord], i: usize) -> (u8, u8) {
    let n = ring.len();
    let p = direction_to(ring[i], ring[(i + n - 1) % n]).expect("ring adjacency") as u8;
    let q = direction_to(ring[i], ring[(i + 1) % n]).expect("ring adjacency") as u8;
    (p, q)
}

/// Edges between the boundary corona and the interior, seen from the
/// boundary tile, in counterclockwise order around the board.
pub fn interface_points(r: i32) -> Vec<EdgeId> {
    let ring = ring(r - 1);
    let mut out = Vec::new();
    for i in 0..ring.len() {
        let (dp, dn) = ring_dirs(&ring, i);
        let mut e = (dp + 5) % 6;
        while e != dn {
            if is_interior(ring[i].neighbor(e as usize), r) {
                out.push(EdgeId::new(ring[i], e as usize));
            }
            e = (e + 5) % 6;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::named_tiles;

    #[test]
    fn interface_point_counts() {
        for r in 2..=7 {
            assert_eq!(interface_points(r).len() as i32, 12 * r - 18);
        }
    }

    #[test]
    fn blank_board_is_valid() {
        let m = Mosaic::new(4).unwrap();
        assert!(m.validate().is_empty());
        assert_eq!(m.trace_components().unwrap().len(), 0);
        assert!(!m.is_saturated());
        assert!(!m.saturated_boundary());
        let [a, b] = m.boundary_completions().unwrap();
        assert_eq!(a, m);
        assert_eq!(b, m);
    }

    #[test]
    fn lone_center_tile_mismatches() {
        let mut m = Mosaic::new(2).unwrap();
        m.set(HexCoord::ORIGIN, PlacedTile::new(named_tiles().unwrap().t26, 0).unwrap());
        let v = m.validate();
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|x| matches!(x, Violation::EdgeMismatch(_))));
    }

    #[test]
    fn odd_interface_is_parity_error() {
        // a dangling interior chord leaves one interface point unmatched
        let mut m = Mosaic::new(3).unwrap();
        m.set_diagram(HexCoord::new(1, 0), &TileDiagram::new(&[(0, 3)], |_, _| true).unwrap());
        assert_eq!(m.complete_boundary(0), Err(Error::Parity(1)));
    }

    #[test]
    fn text_round_trip() {
        let mut m = Mosaic::new(3).unwrap();
        m.set(HexCoord::ORIGIN, PlacedTile::new(named_tiles().unwrap().t26, 3).unwrap());
        let back = Mosaic::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert!(Mosaic::from_text("hexmosaic 2\n").is_err());
        assert!(matches!(Mosaic::from_text("hexmosaic 1\nradius 3\n0 0 99 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Mosaic::from_text("hexmosaic 1\nradius 3\n5 0 1 0\n"), Err(Error::OffBoard { .. })));
    }
}
