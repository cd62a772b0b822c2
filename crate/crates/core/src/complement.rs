//! The complement of a mosaic's link and the mosaics rebuilt from it.
//!
//! On each interior tile the complement adds crossing-free chords through
//! the connection points the link leaves free, always passing under the
//! link. Traced across tiles these chords form arcs with both ends on the
//! interface with the boundary corona, and closed loops.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::board::{board_coords, is_corner, is_interior, on_board, ring, EdgeId, HexCoord};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::families::generate_l;
use crate::mosaic::{interface_points, Mosaic};
use crate::regions::{local_map, UnionFind};
use crate::tiles::{all_matchings, all_signed_diagrams, chord, interleave, named_tiles, Chord, PlacedTile, TileDiagram};

/// `(tile, entry point, exit point)`.
pub type Step = (HexCoord, u8, u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementArc {
    pub steps: Vec<Step>,
}

impl ComplementArc {
    /// Connection points at the two ends, seen from the interior tiles.
    pub fn ends(&self) -> (EdgeId, EdgeId) {
        let (c0, a, _) = self.steps[0];
        let &(c1, _, b) = self.steps.last().expect("non-empty arc");
        (EdgeId::new(c0, a as usize), EdgeId::new(c1, b as usize))
    }

    pub fn tiles(&self) -> BTreeSet<HexCoord> {
        self.steps.iter().map(|s| s.0).collect()
    }

    pub fn chords(&self) -> impl Iterator<Item = (HexCoord, Chord)> + '_ {
        self.steps.iter().map(|&(c, a, b)| (c, chord(a, b)))
    }

    pub fn reversed(&self) -> ComplementArc {
        ComplementArc { steps: self.steps.iter().rev().map(|&(c, a, b)| (c, b, a)).collect() }
    }

    /// Debug form: `(q s entry exit)` per step.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .map(|&(c, a, b)| format!("({} {} {} {})", c.q, c.s, a, b))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplementSet {
    pub arcs: Vec<ComplementArc>,
    pub loops: Vec<ComplementArc>,
}

impl ComplementSet {
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty() && self.loops.is_empty()
    }

    pub fn chords(&self) -> BTreeMap<HexCoord, Vec<Chord>> {
        let mut out: BTreeMap<HexCoord, Vec<Chord>> = BTreeMap::new();
        for a in self.arcs.iter().chain(&self.loops) {
            for (c, ch) in a.chords() {
                out.entry(c).or_default().push(ch);
            }
        }
        out
    }

    pub fn tiles(&self) -> BTreeSet<HexCoord> {
        self.arcs.iter().chain(&self.loops).flat_map(|a| a.tiles()).collect()
    }
}

fn matchings() -> &'static [Vec<Chord>] {
    static M: OnceLock<Vec<Vec<Chord>>> = OnceLock::new();
    M.get_or_init(all_matchings)
}

fn point_mask(arcs: &[Chord]) -> u8 {
    arcs.iter().fold(0, |m, &(a, b)| m | 1 << a | 1 << b)
}

fn crossing_free(arcs: &[Chord]) -> bool {
    arcs.iter().enumerate().all(|(i, &x)| arcs[i + 1..].iter().all(|&y| !interleave(x, y)))
}

/// Complement chords of one tile: a crossing-free matching of the points
/// the link leaves free, with the fewest crossings with the link, then the
/// fewest chords between neighbouring points, then the smallest sorted
/// chord list. Avoiding short chords keeps blank tiles from closing up
/// into small loops around grid vertices.
pub fn tile_complement(d: &TileDiagram) -> Vec<Chord> {
    let free = !d.used_mask() & 0b11_1111;
    let cost = |m: &Vec<Chord>| {
        let cross = m.iter().map(|&x| d.arcs().iter().filter(|&&y| interleave(x, y)).count()).sum::<usize>();
        let short = m.iter().filter(|&&(a, b)| b - a == 1 || b - a == 5).count();
        (cross, short)
    };
    matchings()
        .iter()
        .filter(|m| point_mask(m) == free && crossing_free(m))
        .min_by(|a, b| (cost(a), *a).cmp(&(cost(b), *b)))
        .cloned()
        .expect("free points of a tile are even in number")
}

fn trace(chords: &BTreeMap<HexCoord, Vec<Chord>>, r: i32) -> ComplementSet {
    let partner = |c: HexCoord, p: u8| -> Option<u8> {
        chords.get(&c)?.iter().find_map(|&(a, b)| if a == p { Some(b) } else if b == p { Some(a) } else { None })
    };
    let walk = |c0: HexCoord, p0: u8, seen: &mut BTreeSet<(HexCoord, Chord)>| {
        let (mut c, mut entry) = (c0, p0);
        let mut steps = Vec::new();
        while let Some(exit) = partner(c, entry) {
            if !seen.insert((c, chord(entry, exit))) {
                break;
            }
            steps.push((c, entry, exit));
            let n = c.neighbor(exit as usize);
            if !is_interior(n, r) {
                break;
            }
            c = n;
            entry = (exit + 3) % 6;
        }
        ComplementArc { steps }
    };
    let mut seen = BTreeSet::new();
    let mut out = ComplementSet::default();
    for e in interface_points(r) {
        let o = e.opposite();
        if let Some(q) = partner(o.coord, o.direction) {
            if !seen.contains(&(o.coord, chord(o.direction, q))) {
                out.arcs.push(walk(o.coord, o.direction, &mut seen));
            }
        }
    }
    for (&c, cs) in chords {
        for &ch in cs {
            if !seen.contains(&(c, ch)) {
                out.loops.push(walk(c, ch.0, &mut seen));
            }
        }
    }
    out
}

/// The complement of a valid mosaic's link on its interior tiles. Arcs are
/// listed in the ring order of their first end, which is the earlier one.
pub fn complement(m: &Mosaic) -> ComplementSet {
    let r = m.radius();
    let chords: BTreeMap<HexCoord, Vec<Chord>> = m
        .coords()
        .into_iter()
        .filter(|&c| is_interior(c, r))
        .map(|c| (c, tile_complement(&m.diagram(c))))
        .filter(|(_, v)| !v.is_empty())
        .collect();
    trace(&chords, r)
}

/// How one arc cuts the interior tiles.
#[derive(Debug, Clone)]
pub struct ArcSides {
    /// Tiles entirely on the smaller side.
    pub outside: BTreeSet<HexCoord>,
    pub inside: BTreeSet<HexCoord>,
    /// Whether half-side `(tile, edge, half)` lies outside.
    half: BTreeMap<(HexCoord, u8, u8), bool>,
}

impl ArcSides {
    /// Side of a connection point seen from an interior tile; `None` where
    /// the arc itself passes.
    pub fn point_outside(&self, e: EdgeId) -> Option<bool> {
        let a = self.half.get(&(e.coord, e.direction, 0))?;
        let b = self.half.get(&(e.coord, e.direction, 1))?;
        (a == b).then_some(*a)
    }
}

pub fn split_by_arc(r: i32, arc: &ComplementArc) -> Result<ArcSides> {
    let coords: Vec<HexCoord> = board_coords(r)?.into_iter().filter(|&c| is_interior(c, r)).collect();
    let mut per_tile: BTreeMap<HexCoord, Vec<Chord>> = BTreeMap::new();
    for (c, ch) in arc.chords() {
        per_tile.entry(c).or_default().push(ch);
    }
    let mut offset = BTreeMap::new();
    let mut maps = BTreeMap::new();
    let mut total = 0;
    for &c in &coords {
        let d = TileDiagram::new(per_tile.get(&c).map_or(&[][..], |v| &v[..]), |_, _| true)?;
        let lm = local_map(&d);
        offset.insert(c, total);
        total += lm.face_count;
        maps.insert(c, lm);
    }
    let mut uf = UnionFind((0..total).collect());
    for &c in &coords {
        for e in 0..6 {
            let n = c.neighbor(e);
            if !is_interior(n, r) {
                continue;
            }
            for h in 0..2 {
                uf.union(offset[&c] + maps[&c].half_side[e][h], offset[&n] + maps[&n].half_side[(e + 3) % 6][1 - h]);
            }
        }
    }
    let roots: BTreeSet<usize> = (0..total).map(|i| uf.find(i)).collect();
    if roots.len() != 2 {
        return Err(Error::Precondition(format!("arc {} does not cut the interior in two", arc.to_text())));
    }
    let first = *roots.iter().next().expect("two roots");
    let mut sides: [BTreeSet<HexCoord>; 2] = Default::default();
    for &c in &coords {
        let rs: BTreeSet<usize> = (0..maps[&c].face_count).map(|f| uf.find(offset[&c] + f)).collect();
        if rs.len() == 1 {
            sides[(rs.contains(&first)) as usize].insert(c);
        }
    }
    let [a, b] = sides;
    if a.len() == b.len() {
        return Err(Error::AmbiguousSides(a.len()));
    }
    // `b` is the side of root `first`
    let first_outside = b.len() < a.len();
    let (outside, inside) = if first_outside { (b, a) } else { (a, b) };
    let mut half = BTreeMap::new();
    for &c in &coords {
        for e in 0..6u8 {
            for h in 0..2u8 {
                let root = uf.find(offset[&c] + maps[&c].half_side[e as usize][h as usize]);
                half.insert((c, e, h), (root == first) == first_outside);
            }
        }
    }
    Ok(ArcSides { outside, inside, half })
}

/// Tiles on the smaller and larger side of an arc; equal sides are an error.
pub fn arc_sides(m: &Mosaic, a: &ComplementArc) -> Result<(BTreeSet<HexCoord>, BTreeSet<HexCoord>)> {
    let s = split_by_arc(m.radius(), a)?;
    Ok((s.outside, s.inside))
}

/// Adds strands to the link on the tiles they cross, passing under it.
pub fn adjoin(m: &Mosaic, strands: &[&ComplementArc]) -> Result<Mosaic> {
    let mut extra: BTreeMap<HexCoord, Vec<Chord>> = BTreeMap::new();
    for a in strands {
        for (c, ch) in a.chords() {
            extra.entry(c).or_default().push(ch);
        }
    }
    let mut out = m.clone();
    for (c, cs) in extra {
        let d = m.diagram(c);
        let link = d.arcs().to_vec();
        let mut all = link.clone();
        all.extend(cs);
        let nd = TileDiagram::new(&all, |a, b| match (link.contains(&a), link.contains(&b)) {
            (true, true) => d.is_over(a, b),
            (mine, _) => mine,
        })?;
        out.set_diagram(c, &nd);
    }
    Ok(out)
}

/// Pairs of interface points joined through the boundary corona, both
/// seen from the interior side.
pub fn boundary_pairing(m: &Mosaic) -> BTreeMap<EdgeId, EdgeId> {
    let r = m.radius();
    let limit = 6 * r as usize * 6;
    let mut out = BTreeMap::new();
    for e in interface_points(r) {
        let (mut c, mut entry) = (e.coord, e.direction);
        for _ in 0..limit {
            let Some(exit) = m.diagram(c).partner(entry) else { break };
            let n = c.neighbor(exit as usize);
            if is_interior(n, r) {
                out.insert(e.opposite(), EdgeId::new(n, exit as usize + 3));
                break;
            }
            if !on_board(n, r) {
                break;
            }
            c = n;
            entry = (exit + 3) % 6;
        }
    }
    out
}

fn interface_index(r: i32) -> BTreeMap<EdgeId, usize> {
    interface_points(r).into_iter().enumerate().map(|(i, e)| (e.opposite(), i)).collect()
}

/// Arcs ordered by outside size, then by their first interface point.
fn arc_order(r: i32, arcs: &[ComplementArc], sides: &[ArcSides]) -> Vec<usize> {
    let index = interface_index(r);
    let key = |i: usize| {
        let (a, b) = arcs[i].ends();
        (sides[i].outside.len(), index[&a].min(index[&b]))
    };
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| key(i));
    order
}

/// `L`, `L^1`, ..., `L'`: the loops and the first arc join the link in the
/// first step, one further arc per step after that. Each step keeps the
/// boundary connections inside the new arc and shifts those outside it.
pub fn build_l_prime_steps(m: &Mosaic) -> Result<Vec<Mosaic>> {
    let r = m.radius();
    let comp = complement(m);
    let mut steps = vec![m.clone()];
    if comp.arcs.is_empty() {
        if !comp.loops.is_empty() {
            let loops: Vec<&ComplementArc> = comp.loops.iter().collect();
            steps.push(adjoin(m, &loops)?);
        }
        return Ok(steps);
    }
    let sides = comp.arcs.iter().map(|a| split_by_arc(r, a)).collect::<Result<Vec<_>>>()?;
    for (k, i) in arc_order(r, &comp.arcs, &sides).into_iter().enumerate() {
        let cur = steps.last().expect("starts with m");
        let mut add = vec![&comp.arcs[i]];
        if k == 0 {
            add.extend(comp.loops.iter());
        }
        let interior = adjoin(&cur.interior(), &add)?;
        let old = boundary_pairing(cur);
        let s = &sides[i];
        let kept = |cand: &Mosaic, outside: bool| {
            let new = boundary_pairing(cand);
            old.iter()
                .filter(|&(x, y)| {
                    s.point_outside(*x) == Some(outside) && s.point_outside(*y) == Some(outside) && new.get(x) == Some(y)
                })
                .count()
        };
        let [a, b] = interior.boundary_completions()?;
        let score = |c: &Mosaic| (kept(c, false), usize::MAX - kept(c, true));
        steps.push(if score(&b) > score(&a) { b } else { a });
    }
    Ok(steps)
}

pub fn build_l_prime(m: &Mosaic) -> Result<Mosaic> {
    Ok(build_l_prime_steps(m)?.pop().expect("at least the input"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PenultimateType {
    Corner,
    TypeI,
    TypeII,
}

/// Edges of a tile facing the boundary corona.
fn boundary_edges(c: HexCoord, r: i32) -> Vec<EdgeId> {
    (0..6).filter(|&e| c.neighbor(e).corona() == r - 1).map(|e| EdgeId::new(c, e)).collect()
}

/// Types of the penultimate tiles of a mosaic with saturated boundary: a
/// non-corner tile is type II when its two boundary points are joined
/// directly through the adjacent boundary tiles.
pub fn classify_penultimate(m: &Mosaic) -> Result<BTreeMap<HexCoord, PenultimateType>> {
    if !m.saturated_boundary() {
        return Err(Error::Precondition("boundary tiles are not saturated".into()));
    }
    let r = m.radius();
    let mut out = BTreeMap::new();
    if r < 3 {
        return Ok(out);
    }
    let pairing = boundary_pairing(m);
    for c in ring(r - 2) {
        let t = if is_corner(c) {
            PenultimateType::Corner
        } else {
            let ends = boundary_edges(c, r);
            if ends.len() == 2 && pairing.get(&ends[0]) == Some(&ends[1]) {
                PenultimateType::TypeII
            } else {
                PenultimateType::TypeI
            }
        };
        out.insert(c, t);
    }
    Ok(out)
}

/// Crossings of one tile and how many of them lie on the unbounded face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TileLedgerEntry {
    pub cr: usize,
    pub delta: usize,
}

/// Exterior crossings per interior tile, and the tiles holding a nugatory
/// crossing on the unbounded face or a crossing-free loop bordering it.
fn exterior_profile(m: &Mosaic) -> Result<(BTreeMap<HexCoord, TileLedgerEntry>, BTreeSet<HexCoord>)> {
    let d = LinkDiagram::from_mosaic(m)?;
    let anchors = d.anchors().expect("diagram taken from a mosaic");
    let r = m.radius();
    let mut ledger: BTreeMap<HexCoord, TileLedgerEntry> = m
        .coords()
        .into_iter()
        .filter(|&c| is_interior(c, r))
        .map(|c| (c, TileLedgerEntry { cr: m.diagram(c).crossing_count(), delta: 0 }))
        .collect();
    for v in d.exterior_crossings() {
        ledger.entry(anchors[v].0).or_default().delta += 1;
    }
    let mut bad: BTreeSet<HexCoord> = d.exterior_nugatory().into_iter().map(|v| anchors[v].0).collect();
    // crossing-free strands come in the same order as the diagram's free loops
    let free = m
        .trace_components()?
        .into_iter()
        .filter(|s| s.steps.iter().all(|&(c, a, _)| m.diagram(c).crossings_along(a).is_empty()));
    for (s, &(a, b)) in free.zip(d.free_loops()) {
        if a == d.exterior_face() || b == d.exterior_face() {
            bad.extend(s.steps.iter().map(|st| st.0));
        }
    }
    Ok((ledger, bad))
}

/// Per-tile crossing counts and exterior contributions; their deltas sum
/// to the exterior degree.
pub fn delta_ledger(m: &Mosaic) -> Result<BTreeMap<HexCoord, TileLedgerEntry>> {
    let d = LinkDiagram::from_mosaic(m)?;
    if let Some(&v) = d.exterior_nugatory().iter().next() {
        let c = d.anchors().expect("diagram taken from a mosaic")[v].0;
        return Err(Error::Precondition(format!("nugatory crossing on the unbounded face at tile {c}")));
    }
    Ok(exterior_profile(m)?.0)
}

pub fn delta_contribution(m: &Mosaic, c: HexCoord) -> Result<TileLedgerEntry> {
    let ledger = delta_ledger(m)?;
    Ok(ledger.get(&c).copied().unwrap_or(TileLedgerEntry { cr: m.diagram(c).crossing_count(), delta: 0 }))
}

/// Half-sides `(tile, edge, half)` of interior tiles on the interface whose
/// boundary-side face reaches the rim through the boundary corona.
fn exposed_halves(m: &Mosaic) -> BTreeSet<(HexCoord, usize, usize)> {
    let r = m.radius();
    let ring_tiles = ring(r - 1);
    let mut offset = BTreeMap::new();
    let mut total = 1; // slot 0 is the rim
    for &c in &ring_tiles {
        offset.insert(c, total);
        total += local_map(&m.diagram(c)).face_count;
    }
    let mut uf = UnionFind((0..total).collect());
    for &c in &ring_tiles {
        let lm = local_map(&m.diagram(c));
        for e in 0..6 {
            let n = c.neighbor(e);
            for h in 0..2 {
                let mine = offset[&c] + lm.half_side[e][h];
                if !on_board(n, r) {
                    uf.union(0, mine);
                } else if let Some(&o) = offset.get(&n) {
                    uf.union(mine, o + local_map(&m.diagram(n)).half_side[(e + 3) % 6][1 - h]);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for e in interface_points(r) {
        let lm = local_map(&m.diagram(e.coord));
        let o = e.opposite();
        for h in 0..2 {
            if uf.find(offset[&e.coord] + lm.half_side[e.direction as usize][h]) == uf.find(0) {
                out.insert((o.coord, o.direction as usize, 1 - h));
            }
        }
    }
    out
}

/// Crossing-free link components bordering the unbounded face. Each adds
/// one to the exterior degree without a crossing, so the ledger identity
/// reads `sum of deltas + exterior_free_loops = exterior degree`.
pub fn exterior_free_loops(m: &Mosaic) -> Result<usize> {
    let d = LinkDiagram::from_mosaic(m)?;
    let x = d.exterior_face();
    Ok(d.free_loops().iter().map(|&(a, b)| (a == x) as usize + (b == x) as usize).sum())
}

/// No local face of the tile touches both a half-side exposed to the
/// unbounded face and a central-side edge.
fn blocks_exterior(d: &TileDiagram, c: HexCoord, r: i32, exposed: &BTreeSet<(HexCoord, usize, usize)>) -> bool {
    let lm = local_map(d);
    let outer: BTreeSet<usize> = (0..6)
        .flat_map(|e| (0..2).map(move |h| (e, h)))
        .filter(|&(e, h)| exposed.contains(&(c, e, h)))
        .map(|(e, h)| lm.half_side[e][h])
        .collect();
    let inner: BTreeSet<usize> = (0..6).filter(|&e| c.neighbor(e).corona() <= r - 3).flat_map(|e| lm.half_side[e]).collect();
    outer.is_disjoint(&inner)
}

/// Replacement rule for one penultimate tile: candidate classes and the
/// target exterior contribution.
fn hat_rule(t: TileLedgerEntry, kind: PenultimateType, endpoint: bool) -> Result<(Vec<usize>, usize)> {
    let nt = named_tiles()?;
    let (zero, one, three) = (vec![nt.t16, nt.t17], vec![nt.t18, nt.t19], vec![nt.t26, nt.t25]);
    Ok(if endpoint {
        if t.cr == 0 {
            (zero, 0)
        } else {
            (one, t.delta.min(1))
        }
    } else {
        match (kind, t.delta) {
            (PenultimateType::Corner | PenultimateType::TypeII, 0) => (zero, 0),
            (PenultimateType::Corner | PenultimateType::TypeII, 1) => (one, 1),
            (PenultimateType::Corner | PenultimateType::TypeII, _) => (three, 2),
            (PenultimateType::TypeI, 0) => (one, 0),
            (PenultimateType::TypeI, _) => (three, 1),
        }
    })
}

/// `L̂`: every central tile of `L'` becomes the cyclic three-crossing tile
/// and every penultimate tile is replaced by a 0, 1 or 3 crossing tile
/// chosen from the original tile's ledger entry and the type in `L'`,
/// rotated so that it walls the centre off from the boundary, creates no
/// exterior nugatory crossing and meets its exterior target.
pub fn build_l_hat(lp: &Mosaic, original: &Mosaic) -> Result<Mosaic> {
    let r = lp.radius();
    let ledger = delta_ledger(original)?;
    let comp = complement(original);
    let endpoints: BTreeSet<HexCoord> = comp
        .arcs
        .iter()
        .flat_map(|a| {
            let (x, y) = a.ends();
            [x.coord, y.coord]
        })
        .collect();
    let types = classify_penultimate(lp)?;
    let nt = named_tiles()?;
    let mut out = lp.clone();
    for c in lp.coords() {
        if c.corona() <= r - 3 {
            out.set(c, PlacedTile::new(nt.t26, 0)?);
        }
    }
    if r < 3 {
        return Ok(out);
    }
    let exposed = exposed_halves(lp);
    let mut plan = Vec::new();
    for c in ring(r - 2) {
        let (classes, target) = hat_rule(ledger[&c], types[&c], endpoints.contains(&c))?;
        let mut cands: Vec<PlacedTile> = Vec::new();
        for &k in &classes {
            for rot in 0..6 {
                let p = PlacedTile::new(k, rot)?;
                if blocks_exterior(&p.diagram(), c, r, &exposed) && !cands.iter().any(|q| q.diagram() == p.diagram()) {
                    cands.push(p);
                }
            }
        }
        if cands.is_empty() {
            return Err(Error::Construction(format!("tile {c}: no rotation of classes {classes:?} walls off the centre")));
        }
        plan.push((c, cands, target));
    }
    let sealed = |l: &BTreeMap<HexCoord, TileLedgerEntry>| l.iter().all(|(c, e)| c.corona() > r - 3 || e.delta == 0);
    let good = |m: &Mosaic, c: HexCoord, target: usize| -> bool {
        match exterior_profile(m) {
            Ok((l, bad)) => l[&c].delta == target && !bad.contains(&c) && sealed(&l),
            Err(_) => false,
        }
    };
    let mut done: BTreeSet<HexCoord> = BTreeSet::new();
    for _pass in 0..4 {
        let mut changed = false;
        for (c, cands, target) in &plan {
            if done.contains(c) && good(&out, *c, *target) {
                continue;
            }
            let pick = cands.iter().copied().find(|&p| {
                let mut trial = out.clone();
                trial.set(*c, p);
                good(&trial, *c, *target)
            });
            let p = pick.unwrap_or(cands[0]);
            if out.get(*c) != Some(p) {
                out.set(*c, p);
                changed = true;
            }
            done.insert(*c);
        }
        if !changed {
            break;
        }
    }
    let (l, bad) = exterior_profile(&out)?;
    let misses: Vec<String> = plan
        .iter()
        .filter(|(c, _, t)| l[c].delta != *t || bad.contains(c))
        .map(|(c, _, t)| format!("{c} wants {t} has {}", l[c].delta))
        .collect();
    if !misses.is_empty() || !bad.is_empty() || !sealed(&l) {
        return Err(Error::Construction(format!(
            "no rotation meets the exterior targets: {}; exterior nugatory at {bad:?}; centre sealed: {}",
            misses.join(", "),
            sealed(&l)
        )));
    }
    Ok(out)
}

fn drop_nested(arcs: Vec<(ComplementArc, BTreeSet<HexCoord>)>) -> Vec<(ComplementArc, BTreeSet<HexCoord>)> {
    let keep: Vec<bool> = (0..arcs.len())
        .map(|i| {
            !(0..arcs.len()).any(|j| {
                j != i
                    && arcs[i].1.is_subset(&arcs[j].1)
                    && (arcs[i].1 != arcs[j].1 || j < i)
            })
        })
        .collect();
    arcs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect()
}

/// Reconnects two arcs inside a tile they share, if the other crossing-free
/// pairing of their four ends fits among `others`.
fn connect_sum(x: &ComplementArc, y: &ComplementArc, t: HexCoord, others: &[Chord]) -> Option<[ComplementArc; 2]> {
    let i = x.steps.iter().position(|s| s.0 == t)?;
    let j = y.steps.iter().position(|s| s.0 == t)?;
    let (_, x1, y1) = x.steps[i];
    let (_, x2, y2) = y.steps[j];
    let into = |a: &ComplementArc, k: usize| a.steps[..k].to_vec();
    let from = |a: &ComplementArc, k: usize| a.steps[k + 1..].to_vec();
    let rev = |v: Vec<Step>| ComplementArc { steps: v }.reversed().steps;
    let fits = |p: Chord, q: Chord| !interleave(p, q) && others.iter().all(|&o| !interleave(o, p) && !interleave(o, q));
    let join = |mut a: Vec<Step>, s: Step, b: Vec<Step>| {
        a.push(s);
        a.extend(b);
        ComplementArc { steps: a }
    };
    if fits(chord(x1, x2), chord(y1, y2)) {
        Some([
            join(into(x, i), (t, x1, x2), rev(into(y, j))),
            join(rev(from(x, i)), (t, y1, y2), from(y, j)),
        ])
    } else if fits(chord(x1, y2), chord(y1, x2)) {
        Some([join(into(x, i), (t, x1, y2), from(y, j)), join(into(y, j), (t, x2, y1), from(x, i))])
    } else {
        None
    }
}

/// Replaces a set of complement arcs by one with no nested arcs and no two
/// arcs meeting a common central tile, keeping every outside tile outside
/// some arc and never meeting a new central tile.
pub fn normalize_arcs(m: &Mosaic, arcs: &[ComplementArc]) -> Result<Vec<ComplementArc>> {
    let r = m.radius();
    let mut cur = drop_nested(
        arcs.iter()
            .map(|a| Ok((a.clone(), split_by_arc(r, a)?.outside)))
            .collect::<Result<Vec<_>>>()?,
    );
    'outer: loop {
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                let shared: Vec<HexCoord> = cur[i].0.tiles().intersection(&cur[j].0.tiles()).copied().filter(|c| c.corona() <= r - 3).collect();
                for t in shared {
                    let others: Vec<Chord> = cur
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i && k != j)
                        .flat_map(|(_, a)| a.0.chords().filter(|s| s.0 == t).map(|s| s.1).collect::<Vec<_>>())
                        .collect();
                    let Some(pair) = connect_sum(&cur[i].0, &cur[j].0, t, &others) else { continue };
                    let Ok(sides) = pair.iter().map(|a| split_by_arc(r, a).map(|s| s.outside)).collect::<Result<Vec<_>>>() else {
                        continue;
                    };
                    let mut next: Vec<_> = cur.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, a)| a.clone()).collect();
                    next.extend(pair.into_iter().zip(sides));
                    let next = drop_nested(next);
                    let covered = |v: &[(ComplementArc, BTreeSet<HexCoord>)]| v.iter().flat_map(|a| a.1.iter().copied()).collect::<BTreeSet<_>>();
                    if next.len() < cur.len() && covered(&cur).is_subset(&covered(&next)) {
                        cur = next;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    Ok(cur.into_iter().map(|(a, _)| a).collect())
}

/// `(|B|, central tiles met by the normalized arcs)`, where `B` holds the
/// type II tiles of `L'` that lie outside some complement arc of `m` and
/// away from the complement.
pub fn outside_type_ii_count(m: &Mosaic) -> Result<(usize, usize)> {
    let r = m.radius();
    let comp = complement(m);
    let lp = build_l_prime(m)?;
    let types = classify_penultimate(&lp)?;
    let mut outside = BTreeSet::new();
    for a in &comp.arcs {
        outside.extend(split_by_arc(r, a)?.outside);
    }
    let touched = comp.tiles();
    let b = types
        .iter()
        .filter(|&(c, t)| *t == PenultimateType::TypeII && outside.contains(c) && !touched.contains(c))
        .count();
    let central: BTreeSet<HexCoord> = normalize_arcs(m, &comp.arcs)?
        .iter()
        .flat_map(|a| a.tiles())
        .filter(|c| c.corona() <= r - 3)
        .collect();
    Ok((b, central.len()))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionReport {
    /// Substitutions evaluated.
    pub checked: usize,
    /// Substitutions skipped for leaving a nugatory crossing on the
    /// unbounded face.
    pub skipped: usize,
    pub violations: Vec<String>,
}

/// Brute force over every penultimate tile of `L_r` for `r` in 3..=5 and
/// every three-arc replacement in every rotation: whenever the tile's
/// exterior contribution drops by `t`, its crossings must drop by at least
/// `1.5 t`.
pub fn substitution_inequality_check() -> Result<SubstitutionReport> {
    let tiles: Vec<TileDiagram> = all_signed_diagrams().into_iter().filter(|d| d.arcs().len() == 3).collect();
    let mut report = SubstitutionReport::default();
    for r in 3..=5 {
        let base = generate_l(r)?;
        let ledger = delta_ledger(&base)?;
        let types = classify_penultimate(&base)?;
        for c in ring(r - 2) {
            let old = ledger[&c];
            for d in &tiles {
                let mut trial = base.clone();
                trial.set_diagram(c, d);
                let Ok(l) = delta_ledger(&trial) else {
                    report.skipped += 1;
                    continue;
                };
                report.checked += 1;
                let new = l[&c];
                let t = old.delta as i64 - new.delta as i64;
                let loss = old.cr as i64 - new.cr as i64;
                if t > 0 && 2 * loss < 3 * t {
                    report.violations.push(format!(
                        "r={r} {:?} tile {c}: {:?} gives delta {}->{} with crossings {}->{}",
                        types[&c], d, old.delta, new.delta, old.cr, new.cr
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_a, generate_k};
    use crate::tiles::catalog;

    fn blank_interior(r: i32) -> Mosaic {
        Mosaic::new(r).unwrap()
    }

    #[test]
    fn tile_complement_covers_free_points() {
        for d in all_signed_diagrams() {
            let comp = tile_complement(&d);
            assert_eq!(point_mask(&comp) | d.used_mask(), 0b11_1111);
            assert_eq!(point_mask(&comp) & d.used_mask(), 0);
            assert!(crossing_free(&comp));
        }
        // a lone diagonal takes the two short arcs beside it
        let d = TileDiagram::new(&[(0, 3)], |_, _| true).unwrap();
        assert_eq!(tile_complement(&d), vec![(1, 2), (4, 5)]);
        assert_eq!(tile_complement(&TileDiagram::blank()), vec![(0, 1), (2, 5), (3, 4)]);
    }

    #[test]
    fn saturated_mosaic_has_empty_complement() {
        for r in 3..=5 {
            let m = generate_l(r).unwrap();
            assert!(complement(&m).is_empty());
            assert_eq!(build_l_prime(&m).unwrap(), m);
        }
    }

    #[test]
    fn blank_interior_is_all_arcs() {
        for r in 3..=5 {
            let m = blank_interior(r);
            let comp = complement(&m);
            assert!(comp.loops.is_empty());
            assert_eq!(comp.arcs.len(), interface_points(r).len() / 2);
            let covered: usize = comp.chords().values().map(|v| v.len()).sum();
            assert_eq!(covered, 3 * (3 * r * r - 9 * r + 7) as usize);
        }
    }

    #[test]
    fn arc_sides_on_blank_boards() {
        let m = blank_interior(4);
        for a in &complement(&m).arcs {
            let Ok((out, ins)) = arc_sides(&m, a) else { continue };
            assert!(out.is_disjoint(&ins));
            assert!(out.is_disjoint(&a.tiles()));
            assert!(out.len() < ins.len());
            // an arc hugging the interface leaves at most its length outside
            if a.steps.len() <= 3 {
                assert!(out.len() <= 3);
            }
        }
        // the middle arc of the 5-board cuts it into equal halves
        let m = blank_interior(5);
        let ties: Vec<_> = complement(&m).arcs.iter().filter_map(|a| arc_sides(&m, a).err()).collect();
        assert!(ties.contains(&Error::AmbiguousSides(15)));
    }

    #[test]
    fn penultimate_types_of_l() {
        for r in 3..=6 {
            let types = classify_penultimate(&generate_l(r).unwrap()).unwrap();
            let count = |t| types.values().filter(|&&x| x == t).count() as i32;
            assert_eq!(count(PenultimateType::Corner), 6);
            assert_eq!(count(PenultimateType::TypeI), 3 * (r - 3));
            assert_eq!(count(PenultimateType::TypeII), 3 * (r - 3));
        }
        assert!(classify_penultimate(&blank_interior(4)).is_err());
    }

    #[test]
    fn l_ledger_by_type() {
        for r in 3..=6 {
            let m = generate_l(r).unwrap();
            let ledger = delta_ledger(&m).unwrap();
            let types = classify_penultimate(&m).unwrap();
            for (c, t) in &types {
                let want = match t {
                    PenultimateType::TypeI => 1,
                    _ => 2,
                };
                assert_eq!(ledger[c].delta, want, "r={r} {c} {t:?}");
            }
            let total: usize = ledger.values().map(|e| e.delta).sum();
            assert_eq!(total as i32, 9 * r - 15);
            assert!(ledger.iter().filter(|(c, _)| c.corona() <= r - 3).all(|(_, e)| e.delta == 0));
            let d = LinkDiagram::from_mosaic(&m).unwrap();
            assert_eq!(total, d.exterior_degree());
        }
    }

    #[test]
    fn ledger_matches_exterior_degree_on_families() {
        for m in [generate_a(4).unwrap(), generate_k(4).unwrap()] {
            let d = LinkDiagram::from_mosaic(&m).unwrap();
            if let Ok(l) = delta_ledger(&m) {
                assert_eq!(l.values().map(|e| e.delta).sum::<usize>(), d.exterior_degree());
                assert!(l.values().all(|e| e.delta <= e.cr && e.cr <= 3));
            }
        }
    }

    #[test]
    fn adjoining_keeps_the_link_on_top() {
        let mut m = generate_l(4).unwrap();
        let c = HexCoord::ORIGIN;
        m.set_diagram(c, &TileDiagram::new(&[(0, 3)], |_, _| true).unwrap());
        let comp = complement(&m);
        assert_eq!(comp.chords()[&c], vec![(1, 2), (4, 5)]);
        let added = adjoin(&m, &comp.loops.iter().chain(&comp.arcs).collect::<Vec<_>>()).unwrap();
        assert_eq!(added.diagram(c).arcs().len(), 3);
        assert!(complement(&added).is_empty());
    }

    #[test]
    fn l_prime_of_single_missing_diagonal() {
        // the centre keeps one diagonal; its two free pairs of points
        // start complement arcs that the build must absorb
        let mut m = generate_l(4).unwrap();
        let c = HexCoord::ORIGIN;
        m.set_diagram(c, &TileDiagram::new(&[(0, 3), (1, 2), (4, 5)], |_, _| true).unwrap());
        let lp = build_l_prime(&m).unwrap();
        assert!(complement(&lp).is_empty());
        assert!(lp.saturated_boundary());
        assert!(lp.crossing_count() >= m.crossing_count());
    }

    fn contiguous(a: &ComplementArc) -> bool {
        a.steps.windows(2).all(|w| w[1].0 == w[0].0.neighbor(w[0].2 as usize) && w[1].1 == (w[0].2 + 3) % 6)
    }

    #[test]
    fn connect_sum_reconnects_inside_the_shared_tile() {
        let o = HexCoord::ORIGIN;
        let x = ComplementArc { steps: vec![(o.neighbor(3), 1, 0), (o, 3, 0), (o.neighbor(0), 3, 5)] };
        let y = ComplementArc { steps: vec![(o.neighbor(1), 2, 4), (o, 1, 2), (o.neighbor(2), 5, 3)] };
        assert!(contiguous(&x) && contiguous(&y));
        let [a, b] = connect_sum(&x, &y, o, &[]).unwrap();
        assert!(contiguous(&a) && contiguous(&b));
        assert_eq!(a.steps[1], (o, 3, 2));
        assert_eq!(b.steps[1], (o, 1, 0));
        // the four ends are kept, only their pairing changes
        let ends = |p: &ComplementArc, q: &ComplementArc| {
            let mut v = vec![p.ends().0, p.ends().1, q.ends().0, q.ends().1];
            v.sort();
            v
        };
        assert_eq!(ends(&a, &b), ends(&x, &y));
        // a link chord between the two pairs blocks every reconnection
        assert!(connect_sum(&x, &y, o, &[(0, 2), (1, 3)]).is_none());
    }

    #[test]
    fn substitution_rule_table() {
        let nt = named_tiles().unwrap();
        let e = |cr, delta| TileLedgerEntry { cr, delta };
        assert_eq!(hat_rule(e(0, 0), PenultimateType::TypeI, true).unwrap(), (vec![nt.t16, nt.t17], 0));
        assert_eq!(hat_rule(e(1, 1), PenultimateType::TypeII, true).unwrap().1, 1);
        assert_eq!(hat_rule(e(3, 2), PenultimateType::Corner, false).unwrap(), (vec![nt.t26, nt.t25], 2));
        assert_eq!(hat_rule(e(1, 0), PenultimateType::TypeI, false).unwrap(), (vec![nt.t18, nt.t19], 0));
        assert_eq!(hat_rule(e(3, 2), PenultimateType::TypeI, false).unwrap().1, 1);
        assert_eq!(hat_rule(e(0, 0), PenultimateType::TypeII, false).unwrap().0, vec![nt.t16, nt.t17]);
        assert!(catalog().get(nt.t16).unwrap().crossing_count() == 0);
    }

    #[test]
    fn l_hat_of_l_is_l() {
        for r in 3..=5 {
            let m = generate_l(r).unwrap();
            let hat = build_l_hat(&m, &m).unwrap();
            assert!(complement(&hat).is_empty());
            let d = LinkDiagram::from_mosaic(&hat).unwrap();
            assert_eq!(d.exterior_degree() as i32, 9 * r - 15);
            assert_eq!(hat.crossing_count(), m.crossing_count());
        }
    }

    #[test]
    fn single_arc_normalizes_to_itself() {
        let m = blank_interior(4);
        let comp = complement(&m);
        let one = vec![comp.arcs[0].clone()];
        assert_eq!(normalize_arcs(&m, &one).unwrap(), one);
    }

    #[test]
    fn arc_text_form() {
        let a = ComplementArc { steps: vec![(HexCoord::new(1, -1), 0, 2), (HexCoord::new(1, -2), 5, 3)] };
        assert_eq!(a.to_text(), "(1 -1 0 2) (1 -2 5 3)");
        assert_eq!(a.reversed().reversed(), a);
        assert_eq!(a.ends(), (EdgeId::new(HexCoord::new(1, -1), 0), EdgeId::new(HexCoord::new(1, -2), 3)));
    }
}
