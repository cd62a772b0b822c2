//! Hexagonal board geometry.
//!
//! Tiles are pointy-top hexagons addressed by axial coordinates `(q, s)`;
//! the implied third cube coordinate is `-q - s`. Edge `e` of a tile faces
//! the direction `60·e` degrees counterclockwise from east, so edges 0 and 3
//! are vertical and a tile's 0–3 arc runs horizontally. Tiles with equal `s`
//! form a row; smaller `s` is higher on the board.

use std::fmt;

use crate::error::{Error, Result};

/// Axial offsets of the six neighbours, indexed by edge direction.
pub const DIRECTIONS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HexCoord {
    pub q: i32,
    pub s: i32,
}

impl HexCoord {
    pub const ORIGIN: HexCoord = HexCoord { q: 0, s: 0 };

    pub const fn new(q: i32, s: i32) -> Self {
        HexCoord { q, s }
    }

    /// Hex distance to the origin, which is also the corona index.
    pub fn corona(self) -> i32 {
        (self.q.abs() + self.s.abs() + (self.q + self.s).abs()) / 2
    }

    pub fn distance(self, other: HexCoord) -> i32 {
        HexCoord::new(self.q - other.q, self.s - other.s).corona()
    }

    pub fn neighbor(self, edge: usize) -> HexCoord {
        let (dq, ds) = DIRECTIONS[edge % 6];
        HexCoord::new(self.q + dq, self.s + ds)
    }

    pub fn scale(self, k: i32) -> HexCoord {
        HexCoord::new(self.q * k, self.s * k)
    }

    /// Twice the horizontal position of the tile centre, in units of the
    /// centre-to-centre distance.
    pub fn x2(self) -> i32 {
        2 * self.q + self.s
    }

    /// Row index; rows increase downwards.
    pub fn row(self) -> i32 {
        self.s
    }

    /// Tile centre in the plane (y up), centre-to-centre distance 1.
    pub fn center(self) -> (f64, f64) {
        let x = self.q as f64 + self.s as f64 / 2.0;
        let y = -(self.s as f64) * 3f64.sqrt() / 2.0;
        (x, y)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileRegion {
    Boundary,
    Penultimate,
    Central,
}

/// A tile edge; `EdgeId(c, e)` and `EdgeId(neighbor(c, e), e + 3)` are the
/// same physical edge and share one connection point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub coord: HexCoord,
    pub direction: u8,
}

impl EdgeId {
    pub fn new(coord: HexCoord, direction: usize) -> Self {
        EdgeId { coord, direction: (direction % 6) as u8 }
    }

    /// The same edge seen from the other tile.
    pub fn opposite(self) -> EdgeId {
        EdgeId::new(self.coord.neighbor(self.direction as usize), self.direction as usize + 3)
    }

    /// Canonical representative of the physical edge.
    pub fn canonical(self) -> EdgeId {
        self.min(self.opposite())
    }
}

pub fn check_radius(r: i32) -> Result<()> {
    if r < 1 {
        Err(Error::InvalidRadius(r))
    } else {
        Ok(())
    }
}

pub fn on_board(c: HexCoord, r: i32) -> bool {
    c.corona() < r
}

/// All coordinates of a radius-`r` board, sorted by `(q, s)`.
pub fn board_coords(r: i32) -> Result<Vec<HexCoord>> {
    check_radius(r)?;
    let n = r - 1;
    let mut out = Vec::with_capacity((3 * r * r - 3 * r + 1) as usize);
    for q in -n..=n {
        for s in -n..=n {
            let c = HexCoord::new(q, s);
            if c.corona() <= n {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Region of a tile. On a radius-2 board the centre is `Central` and the
/// penultimate corona is empty.
pub fn classify_tile(c: HexCoord, r: i32) -> Result<TileRegion> {
    check_radius(r)?;
    let d = c.corona();
    if d > r - 1 {
        return Err(Error::OffBoard { coord: c, radius: r });
    }
    Ok(if d == r - 1 {
        TileRegion::Boundary
    } else if d == r - 2 && r >= 3 {
        TileRegion::Penultimate
    } else {
        TileRegion::Central
    })
}

pub fn is_interior(c: HexCoord, r: i32) -> bool {
    c.corona() <= r - 2
}

/// Corner tiles sit on the six axial rays from the centre.
pub fn is_corner(c: HexCoord) -> bool {
    c.corona() >= 1 && (c.q == 0 || c.s == 0 || c.q + c.s == 0)
}

/// Tiles of corona `t` in counterclockwise order, starting at the corner in
/// direction 4 (lower left) and walking east along the bottom side.
pub fn ring(t: i32) -> Vec<HexCoord> {
    if t == 0 {
        return vec![HexCoord::ORIGIN];
    }
    let mut out = Vec::with_capacity(6 * t as usize);
    let (dq, ds) = DIRECTIONS[4];
    let mut c = HexCoord::new(dq * t, ds * t);
    for dir in 0..6 {
        for _ in 0..t {
            out.push(c);
            c = c.neighbor(dir);
        }
    }
    out
}

/// Direction index `e` with `neighbor(a, e) == b`, if adjacent.
pub fn direction_to(a: HexCoord, b: HexCoord) -> Option<usize> {
    (0..6).find(|&e| a.neighbor(e) == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn flood_fill(r: i32) -> usize {
        let mut seen = HashSet::from([HexCoord::ORIGIN]);
        let mut queue = VecDeque::from([HexCoord::ORIGIN]);
        while let Some(c) = queue.pop_front() {
            for e in 0..6 {
                let n = c.neighbor(e);
                if n.corona() < r && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn board_sizes() {
        assert_eq!(board_coords(1).unwrap().len(), 1);
        assert_eq!(board_coords(2).unwrap().len(), 7);
        assert_eq!(board_coords(5).unwrap().len(), 61);
        assert_eq!(flood_fill(5), 61);
        for r in 1..=10 {
            assert_eq!(board_coords(r).unwrap().len() as i32, 3 * r * r - 3 * r + 1);
        }
        assert_eq!(board_coords(0), Err(Error::InvalidRadius(0)));
    }

    #[test]
    fn interior_counts() {
        for r in 2..=10 {
            let interior = board_coords(r)
                .unwrap()
                .into_iter()
                .filter(|&c| classify_tile(c, r).unwrap() != TileRegion::Boundary)
                .count() as i32;
            assert_eq!(interior, 3 * r * r - 9 * r + 7, "r = {r}");
        }
        assert_eq!(classify_tile(HexCoord::ORIGIN, 2).unwrap(), TileRegion::Central);
        assert_eq!(classify_tile(HexCoord::ORIGIN, 3).unwrap(), TileRegion::Central);
        assert_eq!(classify_tile(HexCoord::new(1, 0), 3).unwrap(), TileRegion::Penultimate);
        assert!(classify_tile(HexCoord::new(3, 0), 3).is_err());
    }

    #[test]
    fn coronas_and_corners() {
        assert!(!is_corner(HexCoord::ORIGIN));
        assert!(ring(1).into_iter().all(is_corner));
        for t in 1..=6 {
            let r = ring(t);
            assert_eq!(r.len() as i32, 6 * t);
            assert!(r.iter().all(|c| c.corona() == t));
            assert_eq!(r.iter().collect::<HashSet<_>>().len(), r.len());
            assert_eq!(r.iter().filter(|c| is_corner(**c)).count(), 6);
            // consecutive ring tiles are adjacent, including wrap-around
            for i in 0..r.len() {
                assert!(direction_to(r[i], r[(i + 1) % r.len()]).is_some());
            }
        }
    }

    #[test]
    fn neighbor_round_trip() {
        for c in board_coords(4).unwrap() {
            let ns: HashSet<_> = (0..6).map(|e| c.neighbor(e)).collect();
            assert_eq!(ns.len(), 6);
            for e in 0..6 {
                assert_eq!(c.neighbor(e).neighbor((e + 3) % 6), c);
                let edge = EdgeId::new(c, e);
                assert_eq!(edge.opposite().opposite(), edge);
                assert_eq!(edge.canonical(), edge.opposite().canonical());
            }
        }
        assert_eq!(HexCoord::ORIGIN.neighbor(0), HexCoord::new(1, 0));
    }

    #[test]
    fn rows_are_horizontal() {
        // east neighbour shares the row; direction 1 is up and to the right
        let c = HexCoord::new(2, -1);
        assert_eq!(c.neighbor(0).row(), c.row());
        assert!(c.neighbor(1).row() < c.row());
        assert!(c.neighbor(1).x2() > c.x2());
        assert!(c.neighbor(2).x2() < c.x2());
    }
}
