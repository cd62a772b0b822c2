//! Dual graphs of link shadows, 4-cycles, and flypes.
//!
//! The dual has a vertex per face and an edge per shadow edge. Its faces
//! are the crossings: the four corners of a crossing are the four dual
//! vertices around it. A flype shows up in the dual as three nested
//! 4-cycles on five vertices; candidates are validated by locating the
//! tangle they enclose and performing the move.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::canon::canonical_code;
use crate::diagram::{slot, vertex, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    /// A half-edge of the diagram edge this dual edge crosses (`None` for
    /// a free loop).
    pub half_edge: Option<usize>,
}

/// Dual graph with vertices renumbered: vertex 0 is the unbounded face,
/// the rest follow a breadth-first sweep from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    /// Diagram face of each dual vertex.
    pub faces: Vec<usize>,
    /// Dual vertex of each diagram face.
    pub vertex_of: Vec<usize>,
    pub edges: Vec<DualEdge>,
    pub degree: Vec<usize>,
    /// The four corner vertices of each crossing, counterclockwise from
    /// the corner between slots 0 and 1.
    pub corners: Vec<[usize; 4]>,
}

pub const EXTERIOR_VERTEX: usize = 0;

pub fn dual_graph(d: &LinkDiagram) -> DualGraph {
    let fc = d.face_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); fc];
    let mut raw = Vec::new();
    for (h, t) in d.edges() {
        raw.push((d.face(h), d.face(t), Some(h)));
    }
    for &(a, b) in d.free_loops() {
        raw.push((a, b, None));
    }
    for &(a, b, _) in &raw {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut vertex_of = vec![usize::MAX; fc];
    let mut faces = Vec::with_capacity(fc);
    let mut queue = VecDeque::from([d.exterior_face()]);
    vertex_of[d.exterior_face()] = 0;
    faces.push(d.exterior_face());
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if vertex_of[g] == usize::MAX {
                vertex_of[g] = faces.len();
                faces.push(g);
                queue.push_back(g);
            }
        }
    }
    // faces of other shadow components are not reachable through edges
    for f in 0..fc {
        if vertex_of[f] == usize::MAX {
            vertex_of[f] = faces.len();
            faces.push(f);
        }
    }
    let edges: Vec<DualEdge> = raw
        .into_iter()
        .map(|(a, b, h)| DualEdge { a: vertex_of[a], b: vertex_of[b], half_edge: h })
        .collect();
    let mut degree = vec![0; fc];
    for e in &edges {
        degree[e.a] += 1;
        degree[e.b] += 1;
    }
    let corners = (0..d.crossing_count())
        .map(|v| std::array::from_fn(|k| vertex_of[d.face(4 * v + k)]))
        .collect();
    DualGraph { faces, vertex_of, edges, degree, corners }
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.faces.len()
    }

    pub fn exterior_degree(&self) -> usize {
        self.degree.first().copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Neighbour sets (multi-edges collapsed).
    fn neighbours(&self) -> Vec<BTreeSet<usize>> {
        let mut n = vec![BTreeSet::new(); self.vertex_count()];
        for e in &self.edges {
            if e.a != e.b {
                n[e.a].insert(e.b);
                n[e.b].insert(e.a);
            }
        }
        n
    }
}

pub fn exterior_degree(d: &LinkDiagram) -> usize {
    dual_graph(d).exterior_degree()
}

pub fn max_degree(g: &DualGraph) -> usize {
    g.max_degree()
}

/// A simple 4-cycle of the dual: four distinct vertices joined by four
/// distinct edges, listed in cyclic order (edge `i` joins vertex `i` and
/// vertex `i + 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourCycle {
    pub vertices: [usize; 4],
    pub edges: [usize; 4],
}

impl FourCycle {
    /// Rotation and direction with the smallest edge first.
    fn normalised(self) -> FourCycle {
        let mut best: Option<FourCycle> = None;
        for start in 0..4 {
            for dir in [1usize, 3] {
                let vertices = std::array::from_fn(|i| self.vertices[(start + dir * i) % 4]);
                let edges = std::array::from_fn(|i| {
                    if dir == 1 {
                        self.edges[(start + i) % 4]
                    } else {
                        self.edges[(start + 3 * i + 3) % 4]
                    }
                });
                let c = FourCycle { vertices, edges };
                if best.as_ref().is_none_or(|b| c.edges < b.edges) {
                    best = Some(c);
                }
            }
        }
        best.expect("eight candidates")
    }
}

/// Every simple 4-cycle, each listed once.
pub fn four_cycles(g: &DualGraph) -> Vec<FourCycle> {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges.iter().enumerate() {
        if e.a != e.b {
            inc[e.a].push((i, e.b));
            inc[e.b].push((i, e.a));
        }
    }
    let mut out = BTreeSet::new();
    for v0 in 0..g.vertex_count() {
        for &(e0, v1) in &inc[v0] {
            if v1 <= v0 {
                continue;
            }
            for &(e1, v2) in &inc[v1] {
                if v2 <= v0 || e1 == e0 {
                    continue;
                }
                for &(e2, v3) in &inc[v2] {
                    if v3 <= v0 || v3 == v1 || e2 == e1 {
                        continue;
                    }
                    for &(e3, w) in &inc[v3] {
                        if w == v0 && e3 != e2 && e3 != e0 {
                            out.insert(FourCycle { vertices: [v0, v1, v2, v3], edges: [e0, e1, e2, e3] }.normalised());
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Dual edge index of each diagram half-edge.
fn edge_of(g: &DualGraph, d: &LinkDiagram) -> Vec<usize> {
    let mut out = vec![usize::MAX; d.half_edge_count()];
    for (i, e) in g.edges.iter().enumerate() {
        if let Some(h) = e.half_edge {
            out[h] = i;
            out[d.twin(h)] = i;
        }
    }
    out
}

/// Boundaries of single dual faces, one per crossing whose four corners
/// are distinct faces. Two crossings may share a boundary (Hopf link).
pub fn empty_4cycles(g: &DualGraph, d: &LinkDiagram) -> Vec<FourCycle> {
    let eo = edge_of(g, d);
    (0..d.crossing_count())
        .filter(|&v| g.corners[v].iter().collect::<BTreeSet<_>>().len() == 4)
        .map(|v| {
            // corners k and k + 1 are separated by the edge at slot k + 1
            let edges = std::array::from_fn(|k| eo[4 * v + (k + 1) % 4]);
            FourCycle { vertices: g.corners[v], edges }.normalised()
        })
        .collect()
}

/// Simple 4-cycles that bound no dual face.
pub fn nonempty_4cycles(g: &DualGraph, d: &LinkDiagram) -> Vec<FourCycle> {
    let empty: HashSet<FourCycle> = empty_4cycles(g, d).into_iter().collect();
    four_cycles(g).into_iter().filter(|c| !empty.contains(c)).collect()
}

/// Three nested 4-cycles on five dual vertices: `outer` = (v1, v2, v3, v4),
/// `inner_empty` = (v1, v2, v5, v4) running around `crossing`, and
/// `inner_nonempty` = (v2, v3, v4, v5).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NestedFourCycles {
    /// Dual vertices v1..v5.
    pub v: [usize; 5],
    pub crossing: usize,
}

impl NestedFourCycles {
    pub fn outer(&self) -> [usize; 4] {
        [self.v[0], self.v[1], self.v[2], self.v[3]]
    }

    pub fn inner_empty(&self) -> [usize; 4] {
        [self.v[0], self.v[1], self.v[4], self.v[3]]
    }

    pub fn inner_nonempty(&self) -> [usize; 4] {
        [self.v[1], self.v[2], self.v[3], self.v[4]]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.v.contains(&x)
    }
}

/// All nested 4-cycle families whose five vertices have degree at least 3.
pub fn find_nested_4cycles(g: &DualGraph) -> Vec<NestedFourCycles> {
    let nb = g.neighbours();
    let faces: HashSet<BTreeSet<usize>> = g.corners.iter().map(|w| w.iter().copied().collect()).collect();
    let is_face = |q: [usize; 4]| faces.contains(&q.into_iter().collect::<BTreeSet<usize>>());
    let mut out = Vec::new();
    for (c, w) in g.corners.iter().enumerate() {
        let distinct: BTreeSet<usize> = w.iter().copied().collect();
        if distinct.len() != 4 || w.iter().any(|&x| g.degree[x] < 3) {
            continue;
        }
        for j in 0..4 {
            let (v5, v2, v1, v4) = (w[j], w[(j + 1) % 4], w[(j + 2) % 4], w[(j + 3) % 4]);
            for &v3 in nb[v2].intersection(&nb[v4]) {
                if [v1, v2, v4, v5].contains(&v3) || g.degree[v3] < 3 {
                    continue;
                }
                // (v5, v4, v3, v2, v1) describes the same family
                let n = NestedFourCycles { v: [v1, v2, v3, v4, v5], crossing: c };
                if v1 < v5 && !is_face(n.outer()) && !is_face(n.inner_nonempty()) {
                    out.push(n);
                }
            }
        }
    }
    out.sort();
    out
}

/// A validated flype: `crossing` sits beside `tangle`, joined to it through
/// its two half-edges `4 * crossing + slot` and `4 * crossing + slot + 1`;
/// `ports` are the tangle's other two boundary half-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlypeSite {
    pub cycles: NestedFourCycles,
    pub crossing: usize,
    pub slot: usize,
    pub ports: [usize; 2],
    pub tangle: BTreeSet<usize>,
}

/// Locates the tangle for a nested family, if the family encloses one.
fn locate(d: &LinkDiagram, g: &DualGraph, n: &NestedFourCycles) -> Option<FlypeSite> {
    let c = n.crossing;
    let [v1, v2, v3, v4, v5] = n.v;
    let k = (0..4).find(|&k| g.corners[c][k] == v5)?;
    if g.corners[c][(k + 2) % 4] != v1 {
        return None;
    }
    let f1 = g.corners[c][(k + 1) % 4];
    let f3 = g.corners[c][(k + 3) % 4];
    debug_assert!([v2, v4].contains(&f1) && [v2, v4].contains(&f3));
    let vf = |h: usize| g.vertex_of[d.face(h)];
    let between = |x: usize, y: usize| -> Vec<usize> {
        (0..d.half_edge_count()).filter(|&h| vf(h) == x && vf(d.twin(h)) == y).collect()
    };
    let a = 4 * c + k;
    let a2 = 4 * c + (k + 1) % 4;
    let seeds = [vertex(d.twin(a)), vertex(d.twin(a2))];
    if seeds.contains(&c) {
        return None;
    }
    // half-edges crossing from f1 to v3 and from v3 to f3
    let side1: Vec<usize> = between(f1, v3).into_iter().chain(between(v3, f1)).collect();
    let side3: Vec<usize> = between(f3, v3).into_iter().chain(between(v3, f3)).collect();
    for &g1 in &side1 {
        for &g3 in &side3 {
            let cut: BTreeSet<usize> = [a, a2, g1, g3].into_iter().flat_map(|h| [h, d.twin(h)]).collect();
            if cut.len() != 8 {
                continue;
            }
            let mut tangle = BTreeSet::new();
            let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
            let mut blocked = false;
            while let Some(v) = queue.pop_front() {
                if v == c {
                    blocked = true;
                    break;
                }
                if !tangle.insert(v) {
                    continue;
                }
                for i in 0..4 {
                    let h = 4 * v + i;
                    if !cut.contains(&h) {
                        queue.push_back(vertex(d.twin(h)));
                    }
                }
            }
            if blocked {
                continue;
            }
            // the tangle must own exactly one end of each cut edge other
            // than the two at the crossing
            let q1 = [g1, d.twin(g1)].into_iter().filter(|h| tangle.contains(&vertex(*h))).collect::<Vec<_>>();
            let q3 = [g3, d.twin(g3)].into_iter().filter(|h| tangle.contains(&vertex(*h))).collect::<Vec<_>>();
            if q1.len() != 1 || q3.len() != 1 {
                continue;
            }
            if tangle.len() + 1 >= d.crossing_count() {
                // tangle plus crossing is the whole diagram: trivial flype
                continue;
            }
            return Some(FlypeSite { cycles: n.clone(), crossing: c, slot: k, ports: [q1[0], q3[0]], tangle });
        }
    }
    None
}

/// Nested families that enclose a tangle and survive the move with
/// crossing count, alternation and reducedness intact.
pub fn find_flypes(d: &LinkDiagram) -> Vec<FlypeSite> {
    if d.crossing_count() == 0 || d.shadow_components() != 1 || !d.free_loops().is_empty() {
        return Vec::new();
    }
    let g = dual_graph(d);
    find_nested_4cycles(&g)
        .iter()
        .filter_map(|n| {
            // either side of the crossing may hold the tangle; on the sphere
            // both describe one move, so keep the smaller tangle
            let [v1, v2, v3, v4, v5] = n.v;
            let flipped = NestedFourCycles { v: [v5, v4, v3, v2, v1], crossing: n.crossing };
            [locate(d, &g, n), locate(d, &g, &flipped)]
                .into_iter()
                .flatten()
                .filter(|s| apply_flype(d, s).is_ok())
                .min_by_key(|s| s.tangle.len())
        })
        .collect()
}

/// Carries the crossing across the tangle and turns the tangle over.
pub fn apply_flype(d: &LinkDiagram, site: &FlypeSite) -> Result<LinkDiagram> {
    let n = d.crossing_count();
    let c = site.crossing;
    let k = site.slot;
    let t = &site.tangle;
    if c >= n || t.contains(&c) || t.is_empty() {
        return Err(Error::InvalidSite("crossing and tangle do not fit the diagram".into()));
    }
    let h = |i: usize| 4 * c + (k + i) % 4;
    let (a, a2, b2, b3) = (h(0), h(1), h(2), h(3));
    let (pa, pa2) = (d.twin(a), d.twin(a2));
    let (ob2, ob3) = (d.twin(b2), d.twin(b3));
    let [q1, q3] = site.ports;
    let (r1, r3) = (d.twin(q1), d.twin(q3));
    let inside = |x: usize| t.contains(&vertex(x));
    if !inside(pa) || !inside(pa2) || !inside(q1) || !inside(q3) || inside(r1) || inside(r3) || inside(ob2) || inside(ob3) {
        return Err(Error::InvalidSite("ports do not separate the tangle".into()));
    }
    if [ob2, ob3, r1, r3].iter().any(|&x| vertex(x) == c) {
        return Err(Error::InvalidSite("crossing is joined to itself".into()));
    }
    // turning the tangle over mirrors its rotations: slot j becomes -j
    let sigma = |x: usize| if inside(x) { 4 * vertex(x) + (4 - slot(x)) % 4 } else { x };
    let mut twin = vec![usize::MAX; 4 * n];
    let mut over02 = vec![false; n];
    for v in 0..n {
        if v == c {
            continue;
        }
        over02[v] = if t.contains(&v) { !d.over02[v] } else { d.over02[v] };
        for i in 0..4 {
            let x = 4 * v + i;
            twin[sigma(x)] = sigma(d.twin(x));
        }
    }
    let mut join = |x: usize, y: usize| {
        twin[x] = y;
        twin[y] = x;
    };
    // the crossing leaves: its outside strands run straight into the tangle
    join(ob2, sigma(pa));
    join(ob3, sigma(pa2));
    // and re-enters on the far side between the tangle and the rest
    let ext_marker = (0..d.half_edge_count()).find(|&x| d.face(x) == d.exterior_face() && !inside(x) && vertex(x) != c);
    let mut last_err = Error::InvalidSite("no planar placement for the moved crossing".into());
    // counterclockwise around the moved crossing: the tangle's former
    // port q1 now sits on the far side from r1, and the strands pair q1
    // with r1 and q3 with r3
    for order in [[sigma(q1), r3, r1, sigma(q3)]] {
        let mut tw = twin.clone();
        for (i, &x) in order.iter().enumerate() {
            tw[4 * c + i] = x;
            tw[x] = 4 * c + i;
        }
        for sign in [true, false] {
            let mut ov = over02.clone();
            ov[c] = sign;
            let marker = ext_marker.unwrap_or(0);
            let e = match LinkDiagram::from_map(tw.clone(), ov, marker) {
                Ok(e) => e,
                Err(err) => {
                    last_err = err;
                    continue;
                }
            };
            if e.face_count() != n + 2 {
                break;
            }
            let e = if ext_marker.is_none() {
                let best = (0..e.face_count()).max_by_key(|&f| (e.face_degree(f), std::cmp::Reverse(f))).expect("faces");
                e.with_exterior(best)
            } else {
                e
            };
            if d.is_alternating() && !e.is_alternating() {
                continue;
            }
            if !e.is_reduced() && d.is_reduced() {
                return Err(Error::InvalidSite("move creates a nugatory crossing".into()));
            }
            return Ok(e);
        }
    }
    Err(last_err)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub reachable_count: usize,
    pub max_exterior_degree: usize,
    pub max_vertex_degree: usize,
    /// The search stopped at the limit before exhausting the closure.
    pub truncated: bool,
}

/// Breadth-first search over flypes, projections identified up to
/// isomorphism (unbounded face included).
pub fn flype_closure(d: &LinkDiagram, limit: usize) -> ClosureReport {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_code(d));
    queue.push_back(d.clone());
    let mut report = ClosureReport { reachable_count: 0, max_exterior_degree: 0, max_vertex_degree: 0, truncated: false };
    while let Some(x) = queue.pop_front() {
        report.reachable_count += 1;
        let g = dual_graph(&x);
        report.max_exterior_degree = report.max_exterior_degree.max(g.exterior_degree());
        report.max_vertex_degree = report.max_vertex_degree.max(g.max_degree());
        for site in find_flypes(&x) {
            let Ok(y) = apply_flype(&x, &site) else { continue };
            let code = canonical_code(&y);
            if seen.contains(&code) {
                continue;
            }
            if seen.len() >= limit {
                report.truncated = true;
                continue;
            }
            seen.insert(code);
            queue.push_back(y);
        }
    }
    report
}

/// Graphviz text, vertices `v1..` with v1 the unbounded face.
pub fn dot_export(g: &DualGraph) -> String {
    let mut s = String::from("graph dual {\n");
    if g.edges.is_empty() {
        s.push_str("}\n");
        return s;
    }
    for (i, deg) in g.degree.iter().enumerate() {
        let extra = if i == EXTERIOR_VERTEX { ", exterior=true" } else { "" };
        let _ = writeln!(s, "  v{} [degree={}{}];", i + 1, deg, extra);
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect();
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(s, "  v{} -- v{};", a + 1, b + 1);
    }
    s.push_str("}\n");
    s
}

/// Per-family summary used by reports: which special vertices a nested
/// family contains.
pub fn count_by_vertex(families: &[NestedFourCycles], specials: &[usize]) -> BTreeMap<Option<usize>, usize> {
    let mut out = BTreeMap::new();
    for f in families {
        let key = specials.iter().copied().find(|&s| f.contains(s));
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::families::{generate_l, standard_alternating_k};
    use crate::pd::from_pd;

    fn figure_eight() -> LinkDiagram {
        from_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap()
    }

    fn hopf() -> LinkDiagram {
        from_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap()
    }

    #[test]
    fn figure_eight_dual() {
        let d = figure_eight();
        let g = dual_graph(&d);
        assert_eq!(g.exterior_degree(), 3);
        assert_eq!((g.vertex_count(), g.edges.len()), (6, 8));
        assert_eq!(empty_4cycles(&g, &d).len(), 4);
        let dot = dot_export(&g);
        assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 8);
        assert_eq!(dot.lines().filter(|l| l.contains("degree=")).count(), 6);
        assert_eq!(dot, dot_export(&dual_graph(&d)));
    }

    #[test]
    fn figure_eight_closure_keeps_delta() {
        let d = figure_eight();
        let rep = flype_closure(&d, 64);
        assert!(!rep.truncated);
        assert_eq!(rep.max_exterior_degree, 3);
        for n in find_nested_4cycles(&dual_graph(&d)) {
            let g = dual_graph(&d);
            assert!(n.v.iter().all(|&x| g.degree[x] >= 3));
            assert_eq!(n.v.iter().collect::<BTreeSet<_>>().len(), 5);
        }
    }

    #[test]
    fn hopf_link_has_two_empty_cycles() {
        let d = hopf();
        let g = dual_graph(&d);
        assert_eq!(empty_4cycles(&g, &d).len(), 2);
    }

    #[test]
    fn free_loop_and_empty_diagram() {
        let mut d = LinkDiagram::empty();
        assert_eq!(dot_export(&dual_graph(&d)), "graph dual {\n}\n");
        assert!(find_flypes(&d).is_empty());
        d.face_count = 2;
        d.free_loops = vec![(0, 1)];
        let g = dual_graph(&d);
        assert_eq!((g.vertex_count(), g.edges.len()), (2, 1));
    }

    #[test]
    fn vertices_are_numbered_breadth_first() {
        let d = standard_alternating_k(4).unwrap();
        let g = dual_graph(&d);
        assert_eq!(g.faces[0], d.exterior_face());
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[0] = 0;
        let nb = g.neighbours();
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &nb[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        assert!(dist.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn l_delta_and_empty_cycles() {
        for r in 3..=5 {
            let d = LinkDiagram::from_mosaic(&generate_l(r).unwrap()).unwrap();
            let g = dual_graph(&d);
            assert_eq!(g.exterior_degree() as i32, 9 * r - 15);
            assert_eq!(empty_4cycles(&g, &d).len(), d.crossing_count());
            for s in find_flypes(&d) {
                assert!(s.cycles.v.iter().all(|&x| g.degree[x] >= 3));
            }
        }
    }

    /// Vertex degrees of `y` relative to `x`, vertices matched through the
    /// faces the flype leaves untouched: returns the sorted degree lists
    /// that disappear and appear.
    fn degree_change(x: &DualGraph, y: &DualGraph) -> (Vec<usize>, Vec<usize>) {
        let mut a = x.degree.clone();
        let mut b = y.degree.clone();
        a.sort();
        b.sort();
        let (mut gone, mut new) = (Vec::new(), Vec::new());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                gone.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                new.push(b[j]);
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        (gone, new)
    }

    #[test]
    fn k5_flype_effects() {
        let d = standard_alternating_k(5).unwrap();
        let g = dual_graph(&d);
        assert_eq!(g.exterior_degree(), 22);
        let v2 = (1..g.vertex_count()).max_by_key(|&v| g.degree[v]).unwrap();
        let sites = find_flypes(&d);
        let apex = |s: &FlypeSite| s.cycles.v[2];
        let v1_sites: Vec<_> = sites.iter().filter(|s| apex(s) == EXTERIOR_VERTEX).collect();
        let v2_sites: Vec<_> = sites.iter().filter(|s| apex(s) == v2).collect();
        assert_eq!(v1_sites.len(), 8);
        assert_eq!(v2_sites.len(), 4);
        let mut three_to_four = 0;
        for s in v1_sites {
            let h = dual_graph(&apply_flype(&d, s).unwrap());
            assert_eq!(h.exterior_degree(), 21);
            let (gone, new) = degree_change(&g, &h);
            three_to_four += (gone == [3, 22] && new == [4, 21]) as usize;
        }
        assert!(three_to_four > 0);
        for s in v2_sites {
            let h = dual_graph(&apply_flype(&d, s).unwrap());
            assert_eq!(h.exterior_degree(), 22);
            assert_eq!(degree_change(&g, &h), (vec![5, g.degree[v2]], vec![6, g.degree[v2] - 1]));
        }
    }

    #[test]
    fn flype_then_inverse() {
        let d = standard_alternating_k(4).unwrap();
        for s in find_flypes(&d) {
            let y = apply_flype(&d, &s).unwrap();
            assert_eq!(y.crossing_count(), d.crossing_count());
            assert!(y.is_alternating() && y.is_reduced());
            assert_eq!(y.component_count(), 1);
            let back = find_flypes(&y).into_iter().filter_map(|t| apply_flype(&y, &t).ok()).any(|z| isomorphic(&z, &d));
            assert!(back, "no inverse for flype at crossing {}", s.crossing);
        }
    }

    #[test]
    fn k4_nonempty_cycles_meet_v1_or_v2() {
        let d = standard_alternating_k(4).unwrap();
        let g = dual_graph(&d);
        let v2 = (1..g.vertex_count()).max_by_key(|&v| g.degree[v]).unwrap();
        for c in nonempty_4cycles(&g, &d) {
            assert!(c.vertices.contains(&EXTERIOR_VERTEX) || c.vertices.contains(&v2), "{c:?}");
        }
    }

    #[test]
    fn invalid_site_is_rejected() {
        let d = figure_eight();
        let site = FlypeSite {
            cycles: NestedFourCycles { v: [0, 1, 2, 3, 4], crossing: 0 },
            crossing: 0,
            slot: 0,
            ports: [1, 2],
            tangle: [0].into_iter().collect(),
        };
        assert!(apply_flype(&d, &site).is_err());
    }
}
