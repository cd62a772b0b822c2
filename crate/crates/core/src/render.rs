//! SVG output for mosaics and link diagrams.
//!
//! Mosaic chords are quadratic curves between edge midpoints, bent towards
//! the tile centre; the horizontal diagonal sits a little above the centre
//! as in the crossing model. Diagrams without a board are drawn from a
//! Tutte layout of the subdivided shadow. Under-strands stop short of each
//! crossing by a gap of a tenth of the tile size. Output is
//! byte-deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::board::{is_interior, HexCoord};
use crate::complement::tile_complement;
use crate::diagram::{vertex, LinkDiagram};
use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::tiles::{interleave, Chord, TileDiagram};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Centre-to-centre tile distance in SVG units.
    pub tile_size: f64,
    pub show_grid: bool,
    pub show_complement: bool,
    pub label_tiles: bool,
    /// Tiles whose strands are drawn in the highlight class.
    pub highlight: BTreeSet<HexCoord>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            tile_size: 60.0,
            show_grid: true,
            show_complement: false,
            label_tiles: false,
            highlight: BTreeSet::new(),
        }
    }
}

type P = (f64, f64);

const STYLE: &str = ".tile{fill:#fafafa}.grid{stroke:#bbb;stroke-width:1}\
.link{fill:none;stroke:#2a9d3a;stroke-width:3;stroke-linecap:round}\
.complement{fill:none;stroke:#2a6fd6;stroke-width:2;stroke-linecap:round}\
.changed{fill:none;stroke:#888;stroke-width:3;stroke-linecap:round}\
.label{font:10px sans-serif;fill:#666;text-anchor:middle}";

fn lerp(a: P, b: P, t: f64) -> P {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// A quadratic Bézier curve.
#[derive(Debug, Clone, Copy)]
struct Quad(P, P, P);

impl Quad {
    fn at(&self, t: f64) -> P {
        lerp(lerp(self.0, self.1, t), lerp(self.1, self.2, t), t)
    }

    /// The piece between parameters `u` and `v`.
    fn piece(&self, u: f64, v: f64) -> Quad {
        let blossom = |a: f64, b: f64| {
            let w0 = (1.0 - a) * (1.0 - b);
            let w1 = (1.0 - a) * b + a * (1.0 - b);
            let w2 = a * b;
            (
                w0 * self.0 .0 + w1 * self.1 .0 + w2 * self.2 .0,
                w0 * self.0 .1 + w1 * self.1 .1 + w2 * self.2 .1,
            )
        };
        Quad(self.at(u), blossom(u, v), self.at(v))
    }

    fn samples(&self) -> Vec<P> {
        (0..=SAMPLES).map(|i| self.at(i as f64 / SAMPLES as f64)).collect()
    }

    fn length(&self) -> f64 {
        self.samples().windows(2).map(|w| dist(w[0], w[1])).sum()
    }

    fn path(&self, class: &str) -> String {
        format!(
            "<path class=\"{class}\" d=\"M{} Q{} {}\"/>\n",
            fmt_p(self.0),
            fmt_p(self.1),
            fmt_p(self.2)
        )
    }
}

const SAMPLES: usize = 64;

fn dist(a: P, b: P) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn num(x: f64) -> String {
    let x = if x.abs() < 0.005 { 0.0 } else { x };
    format!("{x:.2}")
}

fn fmt_p(p: P) -> String {
    // the y axis points down in SVG
    format!("{},{}", num(p.0), num(-p.1))
}

/// Parameter on `a` where it meets `b`, from sampled polylines.
fn hit(a: &Quad, b: &Quad) -> Option<f64> {
    let (sa, sb) = (a.samples(), b.samples());
    for i in 0..SAMPLES {
        for j in 0..SAMPLES {
            if let Some(s) = segment_hit(sa[i], sa[i + 1], sb[j], sb[j + 1]) {
                return Some((i as f64 + s) / SAMPLES as f64);
            }
        }
    }
    None
}

fn segment_hit(p: P, p2: P, q: P, q2: P) -> Option<f64> {
    let d = (p2.0 - p.0, p2.1 - p.1);
    let e = (q2.0 - q.0, q2.1 - q.1);
    let den = d.0 * e.1 - d.1 * e.0;
    if den.abs() < 1e-12 {
        return None;
    }
    let w = (q.0 - p.0, q.1 - p.1);
    let s = (w.0 * e.1 - w.1 * e.0) / den;
    let t = (w.0 * d.1 - w.1 * d.0) / den;
    ((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t)).then_some(s)
}

/// Pieces of `q` left after cutting a gap of length `gap` around each
/// parameter in `cuts`.
fn with_gaps(q: &Quad, cuts: &[f64], gap: f64) -> Vec<Quad> {
    let half = gap / 2.0 / q.length().max(1e-9);
    let mut cuts = cuts.to_vec();
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut out = Vec::new();
    let mut start = 0.0;
    for t in cuts {
        let (a, b) = ((t - half).max(0.0), (t + half).min(1.0));
        if a > start {
            out.push(q.piece(start, a));
        }
        start = start.max(b);
    }
    if start < 1.0 {
        out.push(q.piece(start, 1.0));
    }
    out
}

/// Geometry of one tile's chords, relative to the tile centre.
fn chord_curve(c: Chord, centre: P, size: f64) -> Quad {
    let mid = |p: u8| {
        let a = std::f64::consts::PI / 3.0 * p as f64;
        (centre.0 + size / 2.0 * a.cos(), centre.1 + size / 2.0 * a.sin())
    };
    let (a, b) = (mid(c.0), mid(c.1));
    let m = lerp(a, b, 0.5);
    let mut ctrl = lerp(m, centre, 0.5);
    let (mut a, mut b) = (a, b);
    if c == (0, 3) {
        let lift = size * 0.06;
        a.1 += lift;
        b.1 += lift;
        ctrl.1 += lift;
    }
    Quad(a, ctrl, b)
}

fn hexagon(centre: P, size: f64) -> String {
    let r = size / 3f64.sqrt();
    (0..6)
        .map(|k| {
            let a = std::f64::consts::PI / 6.0 + std::f64::consts::PI / 3.0 * k as f64;
            fmt_p((centre.0 + r * a.cos(), centre.1 + r * a.sin()))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn svg_open(out: &mut String, lo: P, hi: P, crossings: usize) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\" data-crossings=\"{crossings}\">",
        lo.0,
        -hi.1 + 0.0,
        hi.0 - lo.0,
        hi.1 - lo.1
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
}

/// One tile's strands: link chords with gaps where they pass under, then
/// complement chords with gaps wherever the link crosses them.
fn tile_strands(d: &TileDiagram, comp: &[Chord], centre: P, opts: &RenderOptions, link_class: &str) -> (String, usize) {
    let size = opts.tile_size;
    let gap = 0.1 * size;
    let mut out = String::new();
    let mut gaps = 0;
    for &a in d.arcs() {
        let qa = chord_curve(a, centre, size);
        let cuts: Vec<f64> = d
            .arcs()
            .iter()
            .filter(|&&b| b != a && interleave(a, b) && d.is_over(b, a))
            .filter_map(|&b| hit(&qa, &chord_curve(b, centre, size)))
            .collect();
        gaps += cuts.len();
        for p in with_gaps(&qa, &cuts, gap) {
            out.push_str(&p.path(link_class));
        }
    }
    for &a in comp {
        let qa = chord_curve(a, centre, size);
        let cuts: Vec<f64> = d
            .arcs()
            .iter()
            .filter(|&&b| interleave(a, b))
            .filter_map(|&b| hit(&qa, &chord_curve(b, centre, size)))
            .collect();
        for p in with_gaps(&qa, &cuts, gap) {
            out.push_str(&p.path("complement"));
        }
    }
    (out, gaps)
}

pub fn svg_mosaic(m: &Mosaic, opts: &RenderOptions) -> Result<String> {
    if opts.tile_size.is_nan() || opts.tile_size <= 0.0 {
        return Err(Error::Layout("tile size must be positive".into()));
    }
    m.check()?;
    let size = opts.tile_size;
    let r = m.radius();
    let centre = |c: HexCoord| {
        let (x, y) = c.center();
        (x * size, y * size)
    };
    let coords = m.coords();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &c in &coords {
        let p = centre(c);
        lo = (lo.0.min(p.0 - size), lo.1.min(p.1 - size));
        hi = (hi.0.max(p.0 + size), hi.1.max(p.1 + size));
    }
    let mut body = String::new();
    let tile_class = if opts.show_grid { "tile grid" } else { "tile" };
    for &c in &coords {
        let _ = writeln!(body, "<polygon class=\"{tile_class}\" points=\"{}\"/>", hexagon(centre(c), size));
    }
    let mut gaps = 0;
    for &c in &coords {
        let d = m.diagram(c);
        let comp = if opts.show_complement && is_interior(c, r) { tile_complement(&d) } else { Vec::new() };
        let class = if opts.highlight.contains(&c) { "changed" } else { "link" };
        let (s, g) = tile_strands(&d, &comp, centre(c), opts, class);
        body.push_str(&s);
        gaps += g;
    }
    if opts.label_tiles {
        for &c in &coords {
            let p = centre(c);
            let _ = writeln!(
                body,
                "<text class=\"label\" x=\"{:.2}\" y=\"{:.2}\">{},{}</text>",
                p.0,
                -(p.1 - size * 0.3) + 0.0,
                c.q,
                c.s
            );
        }
    }
    let mut out = String::new();
    svg_open(&mut out, lo, hi, gaps);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Node positions of a Tutte layout of the subdivided shadow: one node per
/// crossing, one per shadow edge, one per face other than the outer one.
struct Layout {
    crossing: Vec<P>,
    /// Midpoint node of the edge through half-edge `h`.
    mid: Vec<P>,
}

fn layout(d: &LinkDiagram) -> Result<Layout> {
    let n = d.crossing_count();
    let hn = 4 * n;
    let mut crossing = vec![(0.0, 0.0); n];
    let mut mid = vec![(0.0, 0.0); hn];
    // shadow components
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if comp[v] != usize::MAX {
            continue;
        }
        let mut stack = vec![v];
        comp[v] = count;
        while let Some(u) = stack.pop() {
            for i in 0..4 {
                let w = vertex(d.twin(4 * u + i));
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    let mut offset_x = 0.0;
    for k in 0..count {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == k).collect();
        let halves: Vec<usize> = verts.iter().flat_map(|&v| 4 * v..4 * v + 4).collect();
        let faces: BTreeSet<usize> = halves.iter().map(|&h| d.face(h)).collect();
        let shared = |f: usize| f == d.exterior_face() || (0..hn).any(|h| comp[vertex(h)] != k && d.face(h) == f);
        let mut order: Vec<usize> = faces.iter().copied().filter(|&f| shared(f)).collect();
        order.sort_by_key(|&f| (f != d.exterior_face(), std::cmp::Reverse(d.face_degree(f)), f));
        order.extend(faces.iter().copied().filter(|&f| !shared(f)));
        let outer = order
            .into_iter()
            .find_map(|f| simple_walk(d, &halves, f))
            .ok_or_else(|| Error::Layout("no face of the shadow bounds a simple cycle".into()))?;
        let (c, m) = tutte(d, &verts, &halves, &outer);
        for (&v, p) in verts.iter().zip(&c) {
            crossing[v] = (p.0 + offset_x, p.1);
        }
        for (&h, p) in halves.iter().zip(&m) {
            mid[h] = (p.0 + offset_x, p.1);
        }
        offset_x += 2.6;
    }
    Ok(Layout { crossing, mid })
}

/// Half-edges around face `f` (face on their left), if the walk visits no
/// crossing twice.
fn simple_walk(d: &LinkDiagram, halves: &[usize], f: usize) -> Option<Vec<usize>> {
    let start = *halves.iter().find(|&&h| d.face(h) == f)?;
    let mut walk = vec![start];
    let mut seen = BTreeSet::from([vertex(start)]);
    let mut h = d.face_next(start);
    while h != start {
        if !seen.insert(vertex(h)) {
            return None;
        }
        walk.push(h);
        h = d.face_next(h);
    }
    Some(walk)
}

/// Tutte layout of one shadow component with the walk `outer` pinned to a
/// circle. Returns crossing positions (in `verts` order) and midpoint
/// positions (in `halves` order).
fn tutte(d: &LinkDiagram, verts: &[usize], halves: &[usize], outer: &[usize]) -> (Vec<P>, Vec<P>) {
    // node ids: crossings, then edges (by smaller half-edge), then faces
    let mut id: BTreeMap<(u8, usize), usize> = BTreeMap::new();
    let mut next = 0;
    let mut node = |kind: u8, key: usize, id: &mut BTreeMap<(u8, usize), usize>| {
        *id.entry((kind, key)).or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    for &v in verts {
        node(0, v, &mut id);
    }
    for &h in halves {
        node(1, h.min(d.twin(h)), &mut id);
    }
    let outer_face = d.face(outer[0]);
    for &h in halves {
        if d.face(h) != outer_face {
            node(2, d.face(h), &mut id);
        }
    }
    let total = id.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for &h in halves {
        let e = id[&(1, h.min(d.twin(h)))];
        link(id[&(0, vertex(h))], e, &mut adj);
        if d.face(h) != outer_face {
            let f = id[&(2, d.face(h))];
            link(f, id[&(0, vertex(h))], &mut adj);
            link(f, e, &mut adj);
        }
    }
    let mut pos = vec![(0.0, 0.0); total];
    let mut fixed = vec![false; total];
    // the outer face lies on the left of its walk, so the walk runs clockwise
    let ring: Vec<usize> = outer.iter().flat_map(|&h| [id[&(0, vertex(h))], id[&(1, h.min(d.twin(h)))]]).collect();
    for (i, &x) in ring.iter().enumerate() {
        let a = -2.0 * std::f64::consts::PI * i as f64 / ring.len() as f64 + std::f64::consts::FRAC_PI_2;
        pos[x] = (a.cos(), a.sin());
        fixed[x] = true;
    }
    for _ in 0..4000 {
        let mut moved: f64 = 0.0;
        for x in 0..total {
            if fixed[x] || adj[x].is_empty() {
                continue;
            }
            let k = adj[x].len() as f64;
            let s = adj[x].iter().fold((0.0, 0.0), |s, &y| (s.0 + pos[y].0, s.1 + pos[y].1));
            let p = (s.0 / k, s.1 / k);
            moved = moved.max(dist(p, pos[x]));
            pos[x] = p;
        }
        if moved < 1e-9 {
            break;
        }
    }
    let cs = verts.iter().map(|&v| pos[id[&(0, v)]]).collect();
    let ms = halves.iter().map(|&h| pos[id[&(1, h.min(d.twin(h)))]]).collect();
    (cs, ms)
}

pub fn svg_diagram(d: &LinkDiagram, opts: &RenderOptions) -> Result<String> {
    if opts.tile_size.is_nan() || opts.tile_size <= 0.0 {
        return Err(Error::Layout("tile size must be positive".into()));
    }
    let n = d.crossing_count();
    let scale = opts.tile_size * (1.0 + (n as f64).sqrt());
    let gap = 0.1 * opts.tile_size;
    let lay = layout(d)?;
    let at = |p: P| (p.0 * scale, p.1 * scale);
    let mut body = String::new();
    let mut lo = (-scale * 1.2, -scale * 1.2);
    let mut hi = (scale * 1.2, scale * 1.2);
    for &p in &lay.crossing {
        let p = at(p);
        lo = (lo.0.min(p.0 - scale * 0.2), lo.1.min(p.1 - scale * 0.2));
        hi = (hi.0.max(p.0 + scale * 0.2), hi.1.max(p.1 + scale * 0.2));
    }
    let under = |h: usize| !d.is_over(h);
    for h in 0..4 * n {
        let t = d.twin(h);
        if t < h {
            continue;
        }
        let (a, b) = (at(lay.crossing[vertex(h)]), at(lay.crossing[vertex(t)]));
        let m = at(lay.mid[h]);
        // control point so that the curve passes through the midpoint node
        let ctrl = (2.0 * m.0 - (a.0 + b.0) / 2.0, 2.0 * m.1 - (a.1 + b.1) / 2.0);
        let q = Quad(a, ctrl, b);
        let len = q.length().max(1e-9);
        let start = if under(h) { (gap / 2.0 / len).min(0.45) } else { 0.0 };
        let end = if under(t) { 1.0 - (gap / 2.0 / len).min(0.45) } else { 1.0 };
        body.push_str(&q.piece(start, end).path("link"));
    }
    // crossing-free components as small circles in a face they border
    for (i, &(f, g)) in d.free_loops().iter().enumerate() {
        let face = if f == d.exterior_face() { g } else { f };
        let pts: Vec<P> = (0..4 * n).filter(|&h| d.face(h) == face).map(|h| at(lay.crossing[vertex(h)])).collect();
        let c = if pts.is_empty() {
            (hi.0 + scale * 0.3 * (i as f64 + 1.0), 0.0)
        } else {
            let k = pts.len() as f64;
            pts.iter().fold((0.0, 0.0), |s, p| (s.0 + p.0 / k, s.1 + p.1 / k))
        };
        let rad = opts.tile_size * 0.3;
        lo = (lo.0.min(c.0 - rad), lo.1.min(c.1 - rad));
        hi = (hi.0.max(c.0 + rad), hi.1.max(c.1 + rad));
        let _ = writeln!(body, "<circle class=\"link\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\"/>", c.0, -c.1 + 0.0, rad);
    }
    let mut out = String::new();
    svg_open(&mut out, lo, hi, n);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Number of crossing gaps recorded in an SVG produced here.
pub fn crossing_gaps(svg: &str) -> Option<usize> {
    let rest = svg.split("data-crossings=\"").nth(1)?;
    rest.split('"').next()?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate_l;
    use crate::pd::from_pd;

    fn count(s: &str, needle: &str) -> usize {
        s.matches(needle).count()
    }

    #[test]
    fn l2_has_seven_hexagons_and_three_gaps() {
        let m = generate_l(2).unwrap();
        let s = svg_mosaic(&m, &RenderOptions::default()).unwrap();
        assert_eq!(count(&s, "<polygon"), 7);
        assert_eq!(crossing_gaps(&s), Some(3));
        // three chords, the under one of each crossing split once
        let chords: usize = m.coords().iter().map(|&c| m.diagram(c).arcs().len()).sum();
        assert_eq!(count(&s, "class=\"link\""), chords + 3);
    }

    #[test]
    fn saturated_mosaic_has_no_complement_strokes() {
        let m = generate_l(5).unwrap();
        let opts = RenderOptions { show_complement: true, ..RenderOptions::default() };
        let s = svg_mosaic(&m, &opts).unwrap();
        assert_eq!(count(&s, "class=\"complement\""), 0);
        assert_eq!(crossing_gaps(&s), Some(111));
    }

    #[test]
    fn complement_strokes_on_a_blank_board() {
        let m = Mosaic::new(3).unwrap();
        let opts = RenderOptions { show_complement: true, label_tiles: true, ..RenderOptions::default() };
        let s = svg_mosaic(&m, &opts).unwrap();
        assert_eq!(count(&s, "class=\"complement\""), 3 * 7);
        assert_eq!(count(&s, "<text"), 19);
    }

    #[test]
    fn output_is_deterministic_and_well_formed() {
        let m = generate_l(3).unwrap();
        let a = svg_mosaic(&m, &RenderOptions::default()).unwrap();
        let b = svg_mosaic(&m, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert_eq!(count(&a, "<path"), count(&a, "/>") - count(&a, "<polygon"));
        assert!(!a.contains("NaN") && !a.contains("-0.00,") && !a.contains(",-0.00\""));
    }

    #[test]
    fn bad_tile_size_is_rejected() {
        let m = generate_l(2).unwrap();
        let opts = RenderOptions { tile_size: 0.0, ..RenderOptions::default() };
        assert!(svg_mosaic(&m, &opts).is_err());
    }

    #[test]
    fn figure_eight_diagram() {
        let d = from_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        let s = svg_diagram(&d, &RenderOptions::default()).unwrap();
        assert_eq!(crossing_gaps(&s), Some(4));
        assert_eq!(count(&s, "<path"), 8);
        assert_eq!(s, svg_diagram(&d, &RenderOptions::default()).unwrap());
        assert!(!s.contains("NaN"));
    }

    #[test]
    fn empty_diagram_is_an_empty_canvas() {
        let s = svg_diagram(&LinkDiagram::empty(), &RenderOptions::default()).unwrap();
        assert_eq!(count(&s, "<path"), 0);
        assert_eq!(crossing_gaps(&s), Some(0));
    }
}
