//! Canonical codes for link diagrams, used to recognise isomorphic
//! projections.
//!
//! Two diagrams get the same code exactly when an orientation-preserving
//! map isomorphism carries one onto the other together with the crossing
//! signs and the unbounded face.

use std::collections::VecDeque;

use crate::diagram::{slot, vertex, LinkDiagram};

fn code_from(d: &LinkDiagram, h0: usize) -> Vec<u32> {
    let n = d.crossing_count();
    let mut label = vec![u32::MAX; n];
    let mut base = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    label[vertex(h0)] = 0;
    base[vertex(h0)] = slot(h0);
    order.push(vertex(h0));
    queue.push_back(vertex(h0));
    let mut code = Vec::with_capacity(n * 13 + 1);
    while let Some(v) = queue.pop_front() {
        let b = base[v];
        code.push(d.is_over(4 * v + b) as u32);
        for j in 0..4 {
            let g = 4 * v + (b + j) % 4;
            let t = d.twin(g);
            let w = vertex(t);
            if label[w] == u32::MAX {
                label[w] = order.len() as u32;
                base[w] = slot(t);
                order.push(w);
                queue.push_back(w);
            }
            code.push(label[w]);
            code.push(((slot(t) + 4 - base[w]) % 4) as u32);
            code.push((d.face(g) == d.exterior_face()) as u32);
        }
    }
    code.push(d.free_loops().len() as u32);
    code
}

/// Lexicographically least code over all starting half-edges on the
/// unbounded face (every half-edge when the unbounded face has none).
/// Only meaningful for connected shadows.
pub fn oriented_code(d: &LinkDiagram) -> Vec<u32> {
    if d.crossing_count() == 0 {
        return vec![d.free_loops().len() as u32];
    }
    let mut starts: Vec<usize> = (0..d.half_edge_count()).filter(|&h| d.face(h) == d.exterior_face()).collect();
    if starts.is_empty() {
        starts = (0..d.half_edge_count()).collect();
    }
    starts.into_iter().map(|h| code_from(d, h)).min().expect("at least one start")
}

/// Code identifying a projection with its turned-over copy: the plane
/// reflected and every crossing switched, which is the same link seen
/// from the other side.
pub fn canonical_code(d: &LinkDiagram) -> Vec<u32> {
    oriented_code(d).min(oriented_code(&d.turned_over()))
}

pub fn isomorphic(a: &LinkDiagram, b: &LinkDiagram) -> bool {
    a.crossing_count() == b.crossing_count() && canonical_code(a) == canonical_code(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::{from_pd, to_pd};

    #[test]
    fn relabelled_copies_agree() {
        let d = from_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        let e = from_pd(&to_pd(&d)).unwrap();
        assert!(isomorphic(&d, &e));
    }

    #[test]
    fn mirror_differs_for_trefoil() {
        let d = from_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap();
        assert!(!isomorphic(&d, &d.mirror()));
        assert!(isomorphic(&d, &d.turned_over()));
    }

    #[test]
    fn exterior_choice_matters() {
        let d = from_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap();
        // the trefoil's two triangular faces are interchangeable, but a
        // bigon exterior is not
        let bigon = (0..d.face_count()).find(|&f| d.face_degree(f) == 2).unwrap();
        assert!(!isomorphic(&d, &d.with_exterior(bigon)));
    }
}
