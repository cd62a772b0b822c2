//! The mosaic families L_r, A_r and K_r.

use crate::board::{is_interior, HexCoord, TileRegion};
use crate::diagram::{LinkDiagram, Side, StrandRun};
use crate::overpass::{lift_overpass, run_from};
use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::tiles::{catalog, chord, named_tiles, PlacedTile, TileDiagram};

/// Interior filled with the cyclic three-crossing tile, boundary blank.
pub fn saturated_interior(r: i32) -> Result<Mosaic> {
    let mut m = Mosaic::new(r)?;
    let t = PlacedTile::new(named_tiles()?.t26, 0)?;
    for c in m.coords() {
        if is_interior(c, r) {
            m.set(c, t);
        }
    }
    Ok(m)
}

/// The saturated mosaic whose boundary completion has no nugatory crossing.
pub fn generate_l(r: i32) -> Result<Mosaic> {
    if r < 2 {
        return Err(Error::InvalidRadius(r));
    }
    for m in saturated_interior(r)?.boundary_completions()? {
        if LinkDiagram::from_mosaic(&m)?.is_reduced() {
            return Ok(m);
        }
    }
    Err(Error::Construction(format!("no reduced completion at radius {r}")))
}

/// Tile pictures that keep the diagonal through point `a` and smooth the
/// other two diagonals into a pair of arcs crossing it, in both sign
/// patterns along the kept diagonal.
fn two_crossing_variants(a: u8) -> Result<Vec<TileDiagram>> {
    let t20 = &catalog().classes()[named_tiles()?.t20].diagram;
    let keep = chord(a, a + 3);
    Ok((0..6)
        .map(|k| t20.rotate(k))
        .filter(|d| d.arcs().contains(&keep) && d.crossings().iter().all(|&(o, u)| o == keep || u == keep))
        .collect())
}

/// L_r with `r - 2` central tiles of the lower half swapped for the
/// two-crossing tile, each swap merging two components.
pub fn generate_a(r: i32) -> Result<Mosaic> {
    generate_a_steps(r).map(|mut v| v.pop().expect("at least the start"))
}

/// Every intermediate mosaic of the A_r construction, starting with L_r.
pub fn generate_a_steps(r: i32) -> Result<Vec<Mosaic>> {
    if r < 4 {
        return Err(Error::InvalidRadius(r));
    }
    merge_steps(r, TileRegion::Central)
}

/// Starting from L_r, swaps tiles of `region` in the lower half, row by
/// row from the top and west to east, for the two-crossing tile until
/// `r - 2` swaps have each merged two components.
fn merge_steps(r: i32, region: TileRegion) -> Result<Vec<Mosaic>> {
    let mut m = generate_l(r)?;
    let mut comps = m.component_count()?;
    let mut out = vec![m.clone()];
    let mut sites: Vec<HexCoord> = m.coords().into_iter().filter(|&c| c.s > 0 && m.region(c) == region).collect();
    sites.sort_by_key(|c| (c.s, c.q));
    let mut trace = Vec::new();
    for c in sites {
        if out.len() as i32 == r - 1 {
            break;
        }
        'variants: for a in 0..3 {
            for d in two_crossing_variants(a)? {
                let mut next = m.clone();
                next.set_diagram(c, &d);
                let diag = LinkDiagram::from_mosaic(&next)?;
                // off the central tiles a merge always leaves a kink
                let reduced = region != TileRegion::Central || diag.is_reduced();
                if diag.component_count() + 1 == comps && diag.is_alternating() && reduced {
                    m = next;
                    comps -= 1;
                    out.push(m.clone());
                    break 'variants;
                }
            }
        }
        trace.push(c);
    }
    if out.len() as i32 != r - 1 {
        return Err(Error::Construction(format!("only {} merges found after trying {:?}", out.len() - 1, trace)));
    }
    Ok(out)
}

/// Row holding the second-highest horizontal strand.
pub fn lifted_row(r: i32) -> i32 {
    -(r - 3)
}

/// A_r with the crossing edit along the second-highest horizontal strand:
/// the strand's crossing nearest its west end is kept, every other crossing
/// on it is made over, and every crossing in the rows above it is reversed.
pub fn generate_k(r: i32) -> Result<Mosaic> {
    if r < 3 {
        return Err(Error::InvalidRadius(r));
    }
    // L_3's only central tile meets a single component, so K_3 merges
    // on the penultimate ring instead
    let mut m = if r == 3 {
        merge_steps(r, TileRegion::Penultimate)?.pop().expect("at least the start")
    } else {
        generate_a(r)?
    };
    let row = lifted_row(r);
    let west = row_west(r);
    let horizontal = chord(0, 3);
    for c in m.coords() {
        if !is_interior(c, r) || c.s > row {
            continue;
        }
        let d = m.diagram(c);
        let kept = d.crossings_along(3).first().copied();
        let edited = d.with_signs(|x, y| {
            let was = d.is_over(x, y);
            if c.s < row {
                return !was;
            }
            if x != horizontal && y != horizontal {
                return was;
            }
            let other = if x == horizontal { y } else { x };
            if c == west && kept == Some(other) {
                return was;
            }
            x == horizontal
        });
        m.set_diagram(c, &edited);
    }
    Ok(m)
}

/// West end tile of the lifted row.
fn row_west(r: i32) -> HexCoord {
    let row = lifted_row(r);
    HexCoord { q: (2 - r).max(2 - r - row), s: row }
}

/// The over-run of K_r's lifted strand: from the kept crossing eastwards
/// across the row to the first crossing past its east end.
pub fn k_run(d: &LinkDiagram, r: i32) -> Result<StrandRun> {
    let anchors = d.anchors().ok_or_else(|| Error::Precondition("diagram has no board anchors".into()))?;
    let horizontal = chord(0, 3);
    let diagonals = TileDiagram::new(&[chord(0, 3), chord(1, 4), chord(2, 5)], |_, _| true)?;
    let first = diagonals.crossings_along(3)[0];
    let key = (horizontal.min(first), horizontal.max(first));
    let west = row_west(r);
    let v = anchors
        .iter()
        .position(|a| a.0 == west && (a.1, a.2) == key)
        .ok_or_else(|| Error::Precondition("no strand crossing on the lifted row".into()))?;
    // slot 0 points at endpoint 0, eastwards
    let mut count = 0;
    Ok(run_from(d, 4 * v, |_| {
        count += 1;
        count == 2 * r as usize
    }))
}

/// The standard alternating diagram of K_r: the lifted row of the mosaic
/// diagram is pulled up over everything above it. At r = 3 the lift
/// leaves a kink, which is untwisted.
pub fn standard_alternating_k(r: i32) -> Result<LinkDiagram> {
    if r < 3 {
        return Err(Error::InvalidRadius(r));
    }
    let d = LinkDiagram::from_mosaic(&generate_k(r)?)?;
    let run = k_run(&d, r)?;
    lift_overpass(&d, &run, Side::Left)?.without_nugatory()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual_graph;

    fn stats(m: &Mosaic) -> (usize, usize, bool, bool) {
        let d = LinkDiagram::from_mosaic(m).unwrap();
        (d.crossing_count(), d.component_count(), d.is_alternating(), d.is_reduced())
    }

    #[test]
    fn l_family() {
        for r in 2..=5 {
            let n = (9 * r * r - 27 * r + 21) as usize;
            assert_eq!(stats(&generate_l(r).unwrap()), (n, (r - 1) as usize, true, true));
        }
        assert!(generate_l(1).is_err());
    }

    #[test]
    fn a_family() {
        for r in 4..=5 {
            let n = (9 * r * r - 28 * r + 23) as usize;
            assert_eq!(stats(&generate_a(r).unwrap()), (n, 1, true, true));
            let steps = generate_a_steps(r).unwrap();
            assert_eq!(steps.len() as i32, r - 1);
            let comps: Vec<usize> = steps.iter().map(|m| m.component_count().unwrap()).collect();
            assert!(comps.windows(2).all(|w| w[0] == w[1] + 1));
        }
        assert!(generate_a(3).is_err());
    }

    #[test]
    fn k_family() {
        for r in 4..=5 {
            let (n, c, alt, _) = stats(&generate_k(r).unwrap());
            assert_eq!((n, c, alt), ((9 * r * r - 28 * r + 23) as usize, 1, false));
            let d = standard_alternating_k(r).unwrap();
            assert_eq!(d.crossing_count(), (9 * r * r - 30 * r + 25) as usize);
            assert!(d.is_alternating() && d.is_reduced());
            assert_eq!(dual_graph(&d).exterior_degree() as i32, 7 * r - 13);
        }
    }

    #[test]
    fn k3() {
        let m = generate_k(3).unwrap();
        assert_eq!(m.component_count().unwrap(), 1);
        let d = standard_alternating_k(3).unwrap();
        assert_eq!((d.crossing_count(), d.component_count()), (15, 1));
        assert!(d.is_alternating() && d.is_reduced());
        let g = dual_graph(&d);
        assert_eq!((g.exterior_degree(), g.max_degree()), (7, 7));
    }

    #[test]
    fn lifted_row_is_second_from_top() {
        assert_eq!(lifted_row(3), 0);
        assert_eq!(lifted_row(5), -2);
        assert!(standard_alternating_k(2).is_err());
    }
}
