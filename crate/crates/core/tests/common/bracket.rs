// Brute-force Kauffman bracket, used as an independent check that moves
// on diagrams keep the link type.

use std::collections::BTreeMap;


/// Laurent polynomial in A, exponent to coefficient.
pub type Poly = BTreeMap<i32, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Writhe-normalised bracket, `(-A^3)^(-w) <D>`; equal for diagrams of the
/// same oriented link up to reversing all components. Exponential in the
/// crossing count.
pub fn normalized_bracket(d: &LinkDiagram) -> Poly {
    let n = d.crossing_count();
    assert!(n <= 24, "brute force only");
    let loop_poly: Poly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut by_loops: Vec<Poly> = vec![[(0, 1)].into_iter().collect()];
    for i in 1..=n + d.free_loops().len() + 1 {
        by_loops.push(mul(&by_loops[i - 1], &loop_poly));
    }
    let mut states: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut p: Vec<usize> = (0..4 * n).collect();
        for h in 0..4 * n {
            let (a, b) = (find(&mut p, h), find(&mut p, d.twin(h)));
            p[a] = b;
        }
        let mut a_count = 0i32;
        for v in 0..n {
            let over02 = d.is_over(4 * v);
            let a_smoothing = mask >> v & 1 == 0;
            a_count += if a_smoothing { 1 } else { -1 };
            // the A-smoothing joins the corners swept by turning the over
            // strand counterclockwise
            let pairs = if over02 == a_smoothing { [(1, 2), (3, 0)] } else { [(0, 1), (2, 3)] };
            for (x, y) in pairs {
                let (a, b) = (find(&mut p, 4 * v + x), find(&mut p, 4 * v + y));
                p[a] = b;
            }
        }
        let loops = (0..4 * n).filter(|&h| find(&mut p, h) == h).count() + d.free_loops().len();
        *states.entry((a_count, loops)).or_insert(0) += 1;
    }
    let mut out = Poly::new();
    for ((a, loops), k) in states {
        for (e, c) in &by_loops[loops - 1] {
            *out.entry(a + e).or_insert(0) += k * c;
        }
    }
    let mut writhe = 0i32;
    let mut leave = vec![usize::MAX; 4 * n];
    for s in d.strands() {
        for h in s {
            leave[h] = h;
        }
    }
    for v in 0..n {
        let o = if d.is_over(4 * v) { 0 } else { 1 };
        let o = if leave[4 * v + o] != usize::MAX { o } else { o + 2 };
        let u = if leave[4 * v + (o + 1) % 4] != usize::MAX { (o + 1) % 4 } else { (o + 3) % 4 };
        writhe += if u == (o + 1) % 4 { 1 } else { -1 };
    }
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let norm: Poly = out.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e - 3 * writhe, c * sign)).collect();
    norm
}
