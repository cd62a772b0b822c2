//! The catalog of hexagonal mosaic tiles.
//!
//! A tile is a chord diagram on the six edge midpoints (connection points
//! 0–5, counterclockwise from the east edge) together with an over/under
//! choice at every pair of interleaving chords. Classes are taken up to
//! rotation and are generated by enumeration, not transcribed.
//!
//! Class ids are indices into [`catalog`], ordered by arc count, then
//! crossing count, then the lexicographic canonical encoding. The ids appear
//! in the mosaic file format, so this ordering is part of the format.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An unordered chord, stored with `a < b`.
pub type Chord = (u8, u8);

const NONE: u8 = 6;

pub fn chord(a: u8, b: u8) -> Chord {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True iff the chords' endpoints interleave around the hexagon.
pub fn interleave(x: Chord, y: Chord) -> bool {
    let inside = |p: u8| x.0 < p && p < x.1;
    inside(y.0) != inside(y.1)
}

/// A signed chord diagram in a fixed frame (not reduced mod rotation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileDiagram {
    arcs: Vec<Chord>,
    /// `(over, under)` for each crossing pair, sorted.
    crossings: Vec<(Chord, Chord)>,
}

impl TileDiagram {
    pub fn blank() -> Self {
        TileDiagram { arcs: Vec::new(), crossings: Vec::new() }
    }

    /// Builds a diagram; `over(a, b)` decides whether chord `a` passes over
    /// chord `b` for every interleaving pair with `a < b`.
    pub fn new(arcs: &[Chord], mut over: impl FnMut(Chord, Chord) -> bool) -> Result<Self> {
        let mut arcs: Vec<Chord> = arcs.iter().map(|&(a, b)| chord(a, b)).collect();
        arcs.sort();
        let mut used = [false; 6];
        for &(a, b) in &arcs {
            if a == b || b > 5 || used[a as usize] || used[b as usize] {
                return Err(Error::Invalid(format!("bad chord set {arcs:?}")));
            }
            used[a as usize] = true;
            used[b as usize] = true;
        }
        let mut crossings = Vec::new();
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                if interleave(arcs[i], arcs[j]) {
                    if over(arcs[i], arcs[j]) {
                        crossings.push((arcs[i], arcs[j]));
                    } else {
                        crossings.push((arcs[j], arcs[i]));
                    }
                }
            }
        }
        crossings.sort();
        Ok(TileDiagram { arcs, crossings })
    }

    pub fn arcs(&self) -> &[Chord] {
        &self.arcs
    }

    /// `(over, under)` chord pairs.
    pub fn crossings(&self) -> &[(Chord, Chord)] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn partner(&self, p: u8) -> Option<u8> {
        self.arcs.iter().find_map(|&(a, b)| {
            if a == p {
                Some(b)
            } else if b == p {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn uses(&self, p: u8) -> bool {
        self.partner(p).is_some()
    }

    pub fn used_mask(&self) -> u8 {
        self.arcs.iter().fold(0, |m, &(a, b)| m | 1 << a | 1 << b)
    }

    /// Whether chord `a` passes over chord `b` (they must cross).
    pub fn is_over(&self, a: Chord, b: Chord) -> bool {
        self.crossings.contains(&(a, b))
    }

    pub fn rotate(&self, k: usize) -> TileDiagram {
        let k = (k % 6) as u8;
        let rot = |c: Chord| chord((c.0 + k) % 6, (c.1 + k) % 6);
        let mut arcs: Vec<Chord> = self.arcs.iter().map(|&c| rot(c)).collect();
        arcs.sort();
        let mut crossings: Vec<(Chord, Chord)> =
            self.crossings.iter().map(|&(o, u)| (rot(o), rot(u))).collect();
        crossings.sort();
        TileDiagram { arcs, crossings }
    }

    /// Same chords with every crossing switched.
    pub fn mirror(&self) -> TileDiagram {
        let mut crossings: Vec<_> = self.crossings.iter().map(|&(o, u)| (u, o)).collect();
        crossings.sort();
        TileDiagram { arcs: self.arcs.clone(), crossings }
    }

    /// Replaces the over/under choice while keeping the chords.
    pub fn with_signs(&self, over: impl FnMut(Chord, Chord) -> bool) -> TileDiagram {
        TileDiagram::new(&self.arcs, over).expect("chords already valid")
    }

    /// Lexicographic key: partner of each point, then one flag per crossing
    /// pair (in chord order) telling whether the smaller chord is on top.
    pub fn encoding(&self) -> Vec<u8> {
        let mut key: Vec<u8> = (0..6).map(|p| self.partner(p).unwrap_or(NONE)).collect();
        let mut pairs: Vec<(Chord, Chord, bool)> = self
            .crossings
            .iter()
            .map(|&(o, u)| if o < u { (o, u, true) } else { (u, o, false) })
            .collect();
        pairs.sort();
        key.extend(pairs.into_iter().map(|(_, _, top)| top as u8));
        key
    }

    /// The rotation of this diagram with the smallest encoding.
    pub fn canonical(&self) -> TileDiagram {
        (0..6)
            .map(|k| self.rotate(k))
            .min_by(|a, b| a.encoding().cmp(&b.encoding()))
            .expect("six rotations")
    }

    /// Number of rotations in `0..6` fixing this diagram.
    pub fn symmetry_count(&self) -> usize {
        (0..6).filter(|&k| self.rotate(k) == *self).count()
    }

    /// Chords crossing the chord that starts at `from`, ordered along it.
    ///
    /// Chords are drawn straight between edge midpoints. The three main
    /// diagonals would meet in a triple point, so the horizontal 0–3 chord is
    /// drawn slightly above the centre; the small triangle they bound then
    /// points down.
    pub fn crossings_along(&self, from: u8) -> Vec<Chord> {
        let Some(to) = self.partner(from) else { return Vec::new() };
        let me = chord(from, to);
        let (p0, p1) = chord_segment(me);
        let (start, dir) = if from == me.0 { (p0, sub(p1, p0)) } else { (p1, sub(p0, p1)) };
        let mut hits: Vec<(f64, Chord)> = self
            .arcs
            .iter()
            .filter(|&&c| c != me && interleave(c, me))
            .map(|&c| {
                let (q0, q1) = chord_segment(c);
                (line_param(start, dir, q0, sub(q1, q0)), c)
            })
            .collect();
        hits.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        hits.into_iter().map(|(_, c)| c).collect()
    }
}

pub(crate) const HORIZONTAL_SHIFT: f64 = 1e-3;

pub(crate) fn midpoint(p: u8) -> (f64, f64) {
    let ang = std::f64::consts::PI / 3.0 * p as f64;
    (ang.cos(), ang.sin())
}

pub(crate) fn chord_segment(c: Chord) -> ((f64, f64), (f64, f64)) {
    let (mut a, mut b) = (midpoint(c.0), midpoint(c.1));
    if c == (0, 3) {
        a.1 += HORIZONTAL_SHIFT;
        b.1 += HORIZONTAL_SHIFT;
    }
    (a, b)
}

fn sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

/// Position of the crossing of two interleaving chords.
pub(crate) fn crossing_point(x: Chord, y: Chord) -> (f64, f64) {
    let (p0, p1) = chord_segment(x);
    let (q0, q1) = chord_segment(y);
    let d = sub(p1, p0);
    let t = line_param(p0, d, q0, sub(q1, q0));
    (p0.0 + t * d.0, p0.1 + t * d.1)
}

/// Parameter `t` of the intersection point `p + t·d` with line `q + u·e`.
fn line_param(p: (f64, f64), d: (f64, f64), q: (f64, f64), e: (f64, f64)) -> f64 {
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
    cross(sub(q, p), e) / cross(d, e)
}

/// All partial matchings of the six points, as sorted chord lists.
pub fn all_matchings() -> Vec<Vec<Chord>> {
    fn rec(free: u8, start: u8, cur: &mut Vec<Chord>, out: &mut Vec<Vec<Chord>>) {
        out.push(cur.clone());
        for a in start..6 {
            if free & 1 << a == 0 {
                continue;
            }
            for b in a + 1..6 {
                if free & 1 << b == 0 {
                    continue;
                }
                cur.push((a, b));
                rec(free & !(1 << a) & !(1 << b), a + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0b111111, 0, &mut Vec::new(), &mut out);
    for m in &mut out {
        m.sort();
    }
    out.sort();
    out.dedup();
    out
}

/// Every signed chord diagram in the fixed frame.
pub fn all_signed_diagrams() -> Vec<TileDiagram> {
    let mut out = Vec::new();
    for arcs in all_matchings() {
        let pairs: Vec<(Chord, Chord)> = arcs
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| arcs[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| interleave(a, b))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let d = TileDiagram::new(&arcs, |a, b| {
                let i = pairs.iter().position(|&p| p == (a, b)).expect("pair listed");
                mask & 1 << i != 0
            })
            .expect("valid matching");
            out.push(d);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileClass {
    pub id: usize,
    /// Canonical representative (minimal encoding over rotations).
    pub diagram: TileDiagram,
    pub symmetry: usize,
}

impl TileClass {
    pub fn arc_count(&self) -> usize {
        self.diagram.arcs().len()
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }
}

pub struct Catalog {
    classes: Vec<TileClass>,
    index: BTreeMap<Vec<u8>, usize>,
}

impl Catalog {
    fn build() -> Catalog {
        let mut canon: Vec<TileDiagram> = all_signed_diagrams().iter().map(|d| d.canonical()).collect();
        canon.sort_by(|a, b| {
            (a.arcs().len(), a.crossing_count(), a.encoding()).cmp(&(
                b.arcs().len(),
                b.crossing_count(),
                b.encoding(),
            ))
        });
        canon.dedup();
        let classes: Vec<TileClass> = canon
            .into_iter()
            .enumerate()
            .map(|(id, diagram)| TileClass { id, symmetry: diagram.symmetry_count(), diagram })
            .collect();
        let index = classes.iter().map(|c| (c.diagram.encoding(), c.id)).collect();
        Catalog { classes, index }
    }

    pub fn classes(&self) -> &[TileClass] {
        &self.classes
    }

    pub fn get(&self, id: usize) -> Option<&TileClass> {
        self.classes.get(id)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class and normalized rotation of a diagram in the fixed frame.
    pub fn place(&self, d: &TileDiagram) -> PlacedTile {
        let canon = d.canonical();
        let id = self.index[&canon.encoding()];
        let rotation = (0..6).find(|&k| canon.rotate(k) == *d).expect("rotation exists") as u8;
        PlacedTile { class: id, rotation }
    }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(Catalog::build)
}

/// Ordered list of all tile classes up to rotation.
pub fn enumerate_tile_classes() -> &'static [TileClass] {
    catalog().classes()
}

/// A tile class placed on the board with a rotation, reduced to the smallest
/// rotation giving the same picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedTile {
    pub class: usize,
    pub rotation: u8,
}

impl PlacedTile {
    pub fn new(class: usize, rotation: usize) -> Result<Self> {
        let c = catalog()
            .get(class)
            .ok_or_else(|| Error::Invalid(format!("unknown tile class {class}")))?;
        Ok(PlacedTile { class, rotation: (rotation % c.symmetry_min_period()) as u8 })
    }

    pub fn diagram(&self) -> TileDiagram {
        catalog().classes[self.class].diagram.rotate(self.rotation as usize)
    }

    pub fn rotate(&self, k: usize) -> PlacedTile {
        catalog().place(&self.diagram().rotate(k))
    }

    pub fn crossing_count(&self) -> usize {
        catalog().classes[self.class].crossing_count()
    }

    pub fn from_diagram(d: &TileDiagram) -> PlacedTile {
        catalog().place(d)
    }
}

impl TileClass {
    /// Smallest positive rotation fixing the class representative.
    pub fn symmetry_min_period(&self) -> usize {
        6 / self.symmetry
    }
}

pub fn crossing_count(t: &TileClass) -> usize {
    t.crossing_count()
}

/// Tiles bound to the figure numbers that the text relies on.
#[derive(Debug, Clone)]
pub struct NamedTiles {
    /// Three non-crossing arcs, one of them a diagonal with a short arc on each side.
    pub t16: usize,
    /// Three short non-crossing arcs.
    pub t17: usize,
    /// Three arcs, one crossing (first of the two sign variants).
    pub t18: usize,
    pub t19: usize,
    /// Two crossings, alternating along the middle diagonal.
    pub t20: usize,
    /// The two cyclic three-crossing classes, mirror images of each other.
    pub t25: usize,
    pub t26: usize,
    /// All four three-crossing classes, in catalog order.
    pub three_crossing: Vec<usize>,
}

fn class_where(pred: impl Fn(&TileClass) -> bool, what: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = catalog().classes().iter().filter(|c| pred(c)).map(|c| c.id).collect();
    if v.is_empty() {
        Err(Error::Construction(format!("no tile class for {what}")))
    } else {
        Ok(v)
    }
}

fn is_cyclic_triple(d: &TileDiagram) -> bool {
    // each diagonal is over exactly one of the other two
    d.crossing_count() == 3 && d.arcs().iter().all(|&a| d.crossings().iter().filter(|c| c.0 == a).count() == 1)
}

pub fn named_tiles() -> Result<&'static NamedTiles> {
    static NAMED: OnceLock<std::result::Result<NamedTiles, Error>> = OnceLock::new();
    NAMED
        .get_or_init(|| {
            let three_free = class_where(|c| c.arc_count() == 3 && c.crossing_count() == 0, "three free arcs")?;
            let nested: Vec<usize> = three_free.iter().copied().filter(|&id| catalog().classes[id].symmetry == 2).collect();
            let short: Vec<usize> = three_free.iter().copied().filter(|&id| catalog().classes[id].symmetry == 3).collect();
            let one = class_where(|c| c.arc_count() == 3 && c.crossing_count() == 1, "one-crossing")?;
            let two = class_where(
                |c| {
                    c.crossing_count() == 2 && {
                        let d = &c.diagram;
                        // the middle chord is over one and under the other
                        d.arcs().iter().any(|&a| d.crossings().iter().filter(|x| x.0 == a).count() == 1
                            && d.crossings().iter().filter(|x| x.1 == a).count() == 1)
                    }
                },
                "alternating two-crossing",
            )?;
            let three = class_where(|c| c.crossing_count() == 3, "three-crossing")?;
            let cyclic: Vec<usize> = three.iter().copied().filter(|&id| is_cyclic_triple(&catalog().classes[id].diagram)).collect();
            if nested.len() != 1 || short.len() != 1 || one.len() != 2 || two.len() != 1 || cyclic.len() != 2 {
                return Err(Error::Construction(format!(
                    "ambiguous tile binding: nested {nested:?}, short {short:?}, one {one:?}, two {two:?}, cyclic {cyclic:?}; supply an explicit choice"
                )));
            }
            Ok(NamedTiles {
                t16: nested[0],
                t17: short[0],
                t18: one[0],
                t19: one[1],
                t20: two[0],
                t25: cyclic[0],
                t26: cyclic[1],
                three_crossing: three,
            })
        })
        .as_ref()
        .map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Burnside count of rotation classes among the given diagrams.
    fn burnside(diagrams: &[TileDiagram]) -> usize {
        let fixed: usize = (0..6).map(|k| diagrams.iter().filter(|d| d.rotate(k) == **d).count()).sum();
        assert_eq!(fixed % 6, 0);
        fixed / 6
    }

    #[test]
    fn raw_counts() {
        assert_eq!(all_matchings().len(), 76);
        // 1 + 15 + (30 + 2·15) + (5 + 2·6 + 4·3 + 8·1)
        assert_eq!(all_signed_diagrams().len(), 1 + 15 + 60 + 37);
    }

    #[test]
    fn catalog_matches_burnside() {
        let all = all_signed_diagrams();
        assert_eq!(catalog().len(), burnside(&all));
        let by = |arcs: usize, cr: usize| {
            let sub: Vec<_> = all.iter().filter(|d| d.arcs().len() == arcs && d.crossing_count() == cr).cloned().collect();
            let b = burnside(&sub);
            let c = catalog().classes().iter().filter(|c| c.arc_count() == arcs && c.crossing_count() == cr).count();
            assert_eq!(b, c);
            c
        };
        assert_eq!(by(3, 3), 4);
        assert_eq!(by(3, 2), 3);
        assert_eq!(by(3, 0), 2);
        assert_eq!(by(3, 1), 2);
        // orbit sizes partition the raw diagrams
        let total: usize = catalog().classes().iter().map(|c| 6 / c.symmetry).sum();
        assert_eq!(total, all.len());
    }

    #[test]
    fn total_class_count() {
        // 27 classes including the blank tile, i.e. 26 non-blank tiles.
        assert_eq!(catalog().len(), 27);
        assert_eq!(catalog().classes()[0].arc_count(), 0);
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        for d in all_signed_diagrams() {
            let c = d.canonical();
            assert_eq!(c.canonical(), c);
            for k in 0..6 {
                assert_eq!(d.rotate(k).canonical(), c);
            }
            let placed = PlacedTile::from_diagram(&d);
            assert_eq!(placed.diagram(), d);
        }
    }

    #[test]
    fn rotation_group_law() {
        for c in catalog().classes() {
            for r in 0..6 {
                let t = PlacedTile::new(c.id, r).unwrap();
                assert_eq!(t.rotate(6), t);
                assert_eq!(t.rotate(1).rotate(5), t);
                assert_eq!(t.rotate(2).class, t.class);
            }
        }
    }

    #[test]
    fn named_bindings() {
        let n = named_tiles().unwrap();
        let cls = |id: usize| &catalog().classes()[id];
        assert_ne!(n.t16, n.t17);
        for id in [n.t16, n.t17] {
            assert_eq!((cls(id).arc_count(), cls(id).crossing_count()), (3, 0));
        }
        assert_eq!(cls(n.t18).crossing_count(), 1);
        assert_eq!(cls(n.t18).diagram.arcs(), cls(n.t19).diagram.arcs());
        assert_eq!(cls(n.t20).crossing_count(), 2);
        assert_eq!(cls(n.t26).crossing_count(), 3);
        assert_eq!(cls(n.t26).diagram.mirror().canonical(), cls(n.t25).diagram);
        assert_eq!(n.three_crossing.len(), 4);
        // three pairwise crossing chords are always the main diagonals
        for &id in &n.three_crossing {
            assert_eq!(cls(id).diagram.arcs(), &[(0, 3), (1, 4), (2, 5)]);
        }
        assert_eq!(cls(n.t26).symmetry, 6);
        assert_eq!(cls(n.t16).diagram.arcs().iter().filter(|c| c.1 - c.0 == 3).count(), 1);
    }

    #[test]
    fn three_diagonal_rotation_by_two() {
        let n = named_tiles().unwrap();
        for &id in &n.three_crossing {
            let d = &catalog().classes()[id].diagram;
            let r = d.rotate(2);
            assert_eq!(r.canonical(), *d);
            assert_eq!(r.arcs(), d.arcs());
        }
    }

    #[test]
    fn crossing_order_along_diagonals() {
        let d = catalog().classes()[named_tiles().unwrap().t26].diagram.clone();
        assert_eq!(d.crossings_along(0), vec![(1, 4), (2, 5)]);
        assert_eq!(d.crossings_along(3), vec![(2, 5), (1, 4)]);
        assert_eq!(d.crossings_along(1), vec![(0, 3), (2, 5)]);
        assert_eq!(d.crossings_along(2), vec![(0, 3), (1, 4)]);
        let t = TileDiagram::new(&[(0, 3), (1, 5), (2, 4)], |_, _| true).unwrap();
        assert_eq!(t.crossings_along(0), vec![(1, 5), (2, 4)]);
        assert_eq!(t.crossings_along(5), vec![(0, 3)]);
    }

    #[test]
    fn crossing_counts() {
        assert_eq!(crossing_count(&catalog().classes()[0]), 0);
        for d in all_signed_diagrams() {
            let n = d.arcs().len();
            let mut pairs = 0;
            for i in 0..n {
                for j in i + 1..n {
                    pairs += interleave(d.arcs()[i], d.arcs()[j]) as usize;
                }
            }
            assert_eq!(pairs, d.crossing_count());
            assert!(d.crossing_count() <= 3);
        }
    }
}
