//! Seeded random valid mosaics.
//!
//! Generation starts from every interior connection point in use and
//! flips the three edges around randomly chosen grid vertices (the edges
//! between the three tiles meeting there). Each flip keeps the number of
//! used points on every interior tile even, so every tile can be filled
//! with a random matching of its used points. The boundary corona is then
//! completed with a random shift.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::board::{board_coords, is_interior, EdgeId, HexCoord};
use crate::complement::build_l_prime;
use crate::error::Result;
use crate::mosaic::Mosaic;
use crate::tiles::{all_matchings, Chord, TileDiagram};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusParams {
    /// Vertex flips are drawn uniformly from `0..=max_flips`.
    pub max_flips: usize,
    /// Chance that a fully used tile gets the three main diagonals.
    pub diagonal_bias: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { max_flips: 6, diagonal_bias: 0.85 }
    }
}

impl CorpusParams {
    /// Few flips and a strong diagonal bias: mostly near-saturated mosaics.
    pub fn dense() -> Self {
        CorpusParams { max_flips: 2, diagonal_bias: 0.97 }
    }
}

const DIAGONALS: [Chord; 3] = [(0, 3), (1, 4), (2, 5)];

pub fn random_mosaic(r: i32, seed: u64, params: CorpusParams) -> Result<Mosaic> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<HexCoord> = board_coords(r)?.into_iter().filter(|&c| is_interior(c, r)).collect();
    let mut used: BTreeMap<EdgeId, bool> = BTreeMap::new();
    let mut vertices: BTreeSet<[HexCoord; 3]> = BTreeSet::new();
    for &c in &coords {
        for e in 0..6 {
            used.insert(EdgeId::new(c, e).canonical(), true);
            let mut v = [c, c.neighbor(e), c.neighbor(e + 1)];
            v.sort();
            vertices.insert(v);
        }
    }
    let vertices: Vec<[HexCoord; 3]> = vertices.into_iter().collect();
    for _ in 0..rng.gen_range(0..=params.max_flips) {
        let v = vertices.choose(&mut rng).expect("interior is non-empty");
        for (a, b) in [(v[0], v[1]), (v[1], v[2]), (v[0], v[2])] {
            if !(is_interior(a, r) || is_interior(b, r)) {
                continue;
            }
            let e = (0..6).find(|&e| a.neighbor(e) == b).expect("vertex tiles are adjacent");
            let slot = used.get_mut(&EdgeId::new(a, e).canonical()).expect("edge touches the interior");
            *slot = !*slot;
        }
    }
    let matchings = all_matchings();
    let mut m = Mosaic::new(r)?;
    for &c in &coords {
        let mask = (0..6u8).filter(|&e| used[&EdgeId::new(c, e as usize).canonical()]).fold(0u8, |m, e| m | 1 << e);
        let arcs: Vec<Chord> = if mask == 0b11_1111 && rng.gen_bool(params.diagonal_bias) {
            DIAGONALS.to_vec()
        } else {
            let fits: Vec<&Vec<Chord>> = matchings
                .iter()
                .filter(|a| a.iter().fold(0u8, |m, &(x, y)| m | 1 << x | 1 << y) == mask)
                .collect();
            (*fits.choose(&mut rng).expect("even point count has a matching")).clone()
        };
        let d = TileDiagram::new(&arcs, |_, _| rng.gen_bool(0.5))?;
        m.set_diagram(c, &d);
    }
    m.complete_boundary(rng.gen_range(0..2))
}

/// `count` mosaics from consecutive seeds starting at `seed`, skipping any
/// whose complement has an arc without a smaller side.
pub fn corpus(r: i32, count: usize, seed: u64, params: CorpusParams) -> Result<Vec<Mosaic>> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        let m = random_mosaic(r, s, params)?;
        s += 1;
        if build_l_prime(&m).is_ok() {
            out.push(m);
        }
    }
    Ok(out)
}

/// The fixed property corpus for one radius: 60 mosaics drawn with the
/// default parameters and 40 dense ones.
pub fn standard_corpus(r: i32) -> Result<Vec<Mosaic>> {
    let seed = 1000 * r as u64;
    let mut out = corpus(r, 60, seed, CorpusParams::default())?;
    out.extend(corpus(r, 40, 5 * seed, CorpusParams::dense())?);
    Ok(out)
}
