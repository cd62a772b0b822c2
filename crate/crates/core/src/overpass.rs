//! The overpass move: a strand that passes over every crossing along a
//! run is deleted and laid back in along a shortest route through the
//! faces, passing over whatever it meets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::diagram::{straight, vertex, LinkDiagram, Side, StrandRun};
use crate::error::{Error, Result};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// A run starting at the crossing left by `h`, following the strand and
/// stopping at the first crossing where `stop` holds.
pub fn run_from(d: &LinkDiagram, h: usize, mut stop: impl FnMut(usize) -> bool) -> StrandRun {
    let mut steps = vec![(h, d.is_over(h))];
    let mut g = straight(d.twin(h));
    while !stop(g) && g != h {
        steps.push((g, d.is_over(g)));
        g = straight(d.twin(g));
    }
    steps.push((g, d.is_over(g)));
    StrandRun { steps }
}

/// Whether the run's singly met crossings are over (true when it has none).
fn run_is_over(run: &StrandRun) -> bool {
    let inner = &run.steps[1..run.steps.len() - 1];
    let once = |v: usize| inner.iter().filter(|x| vertex(x.0) == v).count() == 1;
    inner.iter().find(|x| once(vertex(x.0))).is_none_or(|x| x.1)
}

/// Cut diagram data shared by the candidate routes.
struct Cut {
    deleted: BTreeSet<usize>,
    self_crossings: BTreeSet<usize>,
    run_half_edges: BTreeSet<usize>,
    region: Vec<usize>,
    start: usize,
    end: usize,
}

fn cut(d: &LinkDiagram, run: &StrandRun) -> Result<Cut> {
    let s = &run.steps;
    if s.len() < 2 {
        return Err(Error::NotOverpass("run needs two end crossings".into()));
    }
    for w in s.windows(2) {
        if straight(d.twin(w[0].0)) != w[1].0 {
            return Err(Error::NotOverpass("steps are not consecutive along a strand".into()));
        }
    }
    let inner = &s[1..s.len() - 1];
    let mut passes: BTreeMap<usize, usize> = BTreeMap::new();
    for x in inner {
        *passes.entry(vertex(x.0)).or_default() += 1;
    }
    // crossings the run meets twice vanish whatever their sign
    let single: Vec<&(usize, bool)> = inner.iter().filter(|x| passes[&vertex(x.0)] == 1).collect();
    if single.iter().any(|x| x.1 != d.is_over(x.0)) {
        return Err(Error::NotOverpass("over/under tags disagree with the diagram".into()));
    }
    if !(single.iter().all(|x| x.1) || single.iter().all(|x| !x.1)) {
        return Err(Error::NotOverpass("interior crossings mix over and under".into()));
    }
    let deleted: BTreeSet<usize> = passes.keys().copied().collect();
    if deleted.contains(&vertex(s[0].0)) || deleted.contains(&vertex(s[s.len() - 1].0)) {
        return Err(Error::NotOverpass("run ends at a crossing it also passes through".into()));
    }
    let mut run_half_edges = BTreeSet::new();
    for w in s.windows(2) {
        run_half_edges.insert(w[0].0);
        run_half_edges.insert(d.twin(w[0].0));
    }
    for &v in &deleted {
        if passes[&v] == 2 {
            continue;
        }
        for i in 0..4 {
            let h = 4 * v + i;
            if !run_half_edges.contains(&h) && run_half_edges.contains(&d.twin(h)) {
                return Err(Error::NotOverpass("transverse strand joins the run".into()));
            }
        }
    }
    let mut uf = UnionFind((0..d.face_count()).collect());
    for w in s.windows(2) {
        uf.union(d.face(w[0].0), d.face(d.twin(w[0].0)));
    }
    let region: Vec<usize> = (0..d.face_count()).map(|f| uf.find(f)).collect();
    let start = region[d.face(s[0].0)];
    let end = region[d.face(d.twin(s[s.len() - 2].0))];
    Ok(Cut { deleted, self_crossings: passes.iter().filter(|e| *e.1 == 2).map(|e| *e.0).collect(), run_half_edges, region, start, end })
}

/// Every shortest route, as the list of half-edges `a` whose edge is
/// crossed from the face on the left of `a` to the face on its right.
fn shortest_routes(d: &LinkDiagram, c: &Cut, limit: usize) -> Vec<Vec<usize>> {
    routes_between(d, c, c.start, c.end, limit)
}

fn routes_between(d: &LinkDiagram, c: &Cut, start: usize, end: usize, limit: usize) -> Vec<Vec<usize>> {
    let steps: Vec<(usize, usize, usize)> = (0..d.half_edge_count())
        .filter(|h| !c.run_half_edges.contains(h))
        .map(|h| (h, c.region[d.face(h)], c.region[d.face(d.twin(h))]))
        .filter(|&(_, a, b)| a != b)
        .collect();
    let bfs = |from: usize| {
        let mut dist = vec![usize::MAX; d.face_count()];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(f) = q.pop_front() {
            for &(_, a, b) in &steps {
                if a == f && dist[b] == usize::MAX {
                    dist[b] = dist[f] + 1;
                    q.push_back(b);
                }
            }
        }
        dist
    };
    let (ds, de) = (bfs(start), bfs(end));
    let total = ds[end];
    if total == usize::MAX {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn rec(
        f: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        steps: &[(usize, usize, usize)],
        ds: &[usize],
        de: &[usize],
        total: usize,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if path.len() == total {
            out.push(path.clone());
            return;
        }
        for &(h, a, b) in steps {
            if a == f && ds[b] == ds[a] + 1 && de[b] + ds[b] == total {
                path.push(h);
                rec(b, path, out, steps, ds, de, total, limit);
                path.pop();
            }
        }
    }
    rec(start, &mut path, &mut out, &steps, &ds, &de, total, limit);
    out
}

/// Rebuilds the map with the run replaced by `route`. Returns the new
/// twin array, over flags, old-to-new half-edge numbering (for surviving
/// half-edges) and the half-edges of the new strand piece.
fn rebuild(d: &LinkDiagram, run: &StrandRun, c: &Cut, route: &[usize], over: bool) -> Result<(Vec<usize>, Vec<bool>, Vec<Option<usize>>, Vec<usize>)> {
    let n = d.crossing_count();
    let p = route.len();
    let mut twin: Vec<usize> = d.twin.clone();
    twin.extend(std::iter::repeat_n(usize::MAX, 4 * p));
    let mut over02: Vec<bool> = d.over02.clone();
    // new crossings on the crossed edges
    let mut prev_next = Vec::new();
    for (j, &a) in route.iter().enumerate() {
        let w = n + j;
        let b = twin[a];
        // crossed from a's left to its right: slot 0 towards b, 2 towards a
        let (prev, next) = (4 * w + 1, 4 * w + 3);
        twin[4 * w] = b;
        twin[b] = 4 * w;
        twin[4 * w + 2] = a;
        twin[a] = 4 * w + 2;
        over02.push(!over);
        prev_next.push((prev, next));
    }
    // heal deleted crossings along their transverse strand
    let run_set = &c.run_half_edges;
    for &v in c.deleted.difference(&c.self_crossings) {
        let t = (0..4).map(|i| 4 * v + i).find(|h| !run_set.contains(h)).expect("transverse slot");
        let (x, y) = (twin[t], twin[straight(t)]);
        if x == straight(t) {
            return Err(Error::Reroute("healing would leave a crossing-free loop".into()));
        }
        twin[x] = y;
        twin[y] = x;
    }
    // lay in the new strand piece
    let s = &run.steps;
    let from = s[0].0;
    let to = d.twin(s[s.len() - 2].0);
    let mut piece = vec![from];
    let mut cur = from;
    for &(prev, next) in &prev_next {
        twin[cur] = prev;
        twin[prev] = cur;
        piece.push(next);
        cur = next;
    }
    twin[cur] = to;
    twin[to] = cur;
    // compact
    let keep: Vec<usize> = (0..n + p).filter(|v| !c.deleted.contains(v)).collect();
    let mut newv = vec![usize::MAX; n + p];
    for (i, &v) in keep.iter().enumerate() {
        newv[v] = i;
    }
    let map = |h: usize| 4 * newv[h / 4] + h % 4;
    let mut out_twin = vec![0; 4 * keep.len()];
    let mut out_over = vec![false; keep.len()];
    for (i, &v) in keep.iter().enumerate() {
        out_over[i] = over02[v];
        for k in 0..4 {
            out_twin[4 * i + k] = map(twin[4 * v + k]);
        }
    }
    let renumber: Vec<Option<usize>> = (0..4 * n).map(|h| if c.deleted.contains(&(h / 4)) { None } else { Some(map(h)) }).collect();
    let piece = piece.into_iter().map(map).collect();
    Ok((out_twin, out_over, renumber, piece))
}

/// One outcome of the overpass move.
#[derive(Debug, Clone)]
pub struct Overpass {
    /// Crossed half-edges of the old diagram, in route order.
    pub route: Vec<usize>,
    pub diagram: LinkDiagram,
    /// New number of each surviving old half-edge.
    pub renumber: Vec<Option<usize>>,
}

/// All results of the overpass move along shortest routes (at most
/// `limit` routes), for every choice of unbounded face among the pieces
/// of the old unbounded face.
pub fn overpass_variants(d: &LinkDiagram, run: &StrandRun, limit: usize) -> Result<Vec<Overpass>> {
    let c = cut(d, run)?;
    let over = run_is_over(run);
    let mut out = Vec::new();
    for route in shortest_routes(d, &c, limit) {
        let (twin, over02, renumber, _) = rebuild(d, run, &c, &route, over)?;
        let ext: BTreeSet<usize> = (0..d.half_edge_count())
            .filter(|&h| d.face(h) == d.exterior_face())
            .filter_map(|h| renumber[h])
            .collect();
        let base = LinkDiagram::from_map(twin, over02, *ext.iter().next().ok_or_else(|| Error::Reroute("no unbounded face left".into()))?)?;
        let faces: BTreeSet<usize> = ext.iter().map(|&h| base.face(h)).collect();
        for f in faces {
            out.push(Overpass { route: route.clone(), diagram: base.with_exterior(f), renumber: renumber.clone() });
        }
    }
    Ok(out)
}

/// The overpass move. The run's interior crossings must all be over (or
/// all under); they are deleted and the strand re-enters along a shortest
/// route through the faces, crossing over (or under) what it meets. Among
/// shortest routes the one hugging the chosen side of the old strand is
/// taken: the first face it enters borders the run on that side.
pub fn lift_overpass(d: &LinkDiagram, run: &StrandRun, side: Side) -> Result<LinkDiagram> {
    let c = cut(d, run)?;
    if run.steps.len() == 2 {
        return Ok(d.clone());
    }
    let over = run_is_over(run);
    let routes = shortest_routes(d, &c, 4096);
    if routes.is_empty() {
        return Err(Error::Reroute("end faces are not connected".into()));
    }
    let run_faces: BTreeSet<usize> = run.steps[..run.steps.len() - 1]
        .iter()
        .map(|&(h, _)| match side {
            Side::Left => d.face(h),
            Side::Right => d.face(d.twin(h)),
        })
        .collect();
    let route = routes
        .iter()
        .find(|r| r.first().is_none_or(|&a| run_faces.contains(&d.face(a))))
        .unwrap_or(&routes[0]);
    let (twin, over02, renumber, piece) = rebuild(d, run, &c, route, over)?;
    let ext: Vec<usize> = (0..d.half_edge_count())
        .filter(|&h| d.face(h) == d.exterior_face())
        .filter_map(|h| renumber[h])
        .collect();
    let first = *ext.first().ok_or_else(|| Error::Reroute("no unbounded face left".into()))?;
    let base = LinkDiagram::from_map(twin, over02, first)?;
    // the strand is pushed out towards the chosen side, so the unbounded
    // face continues on that side of the new piece
    let ahead: BTreeSet<usize> = piece
        .iter()
        .map(|&h| match side {
            Side::Left => base.face(h),
            Side::Right => base.face(base.twin(h)),
        })
        .collect();
    let face = ext.iter().map(|&h| base.face(h)).find(|f| ahead.contains(f)).unwrap_or(base.face(first));
    Ok(base.with_exterior(face))
}
