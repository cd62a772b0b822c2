//! Moves on diagrams checked against a brute-force Kauffman bracket.

mod bracket {
    use hexmosaic::diagram::LinkDiagram;
    include!("common/bracket.rs");
}

use bracket::normalized_bracket;
use hexmosaic::canon::isomorphic;
use hexmosaic::diagram::LinkDiagram;
use hexmosaic::dual::{apply_flype, find_flypes};
use hexmosaic::families::{generate_k, generate_l, standard_alternating_k};
use hexmosaic::pd::{from_pd, to_pd};

#[test]
fn lifting_k3_keeps_the_knot() {
    let mosaic = LinkDiagram::from_mosaic(&generate_k(3).unwrap()).unwrap();
    let lifted = standard_alternating_k(3).unwrap();
    assert_eq!(mosaic.crossing_count(), 20);
    assert_eq!(lifted.crossing_count(), 15);
    assert_eq!(normalized_bracket(&mosaic), normalized_bracket(&lifted));
}

#[test]
fn flypes_of_k3_keep_the_knot() {
    let d = standard_alternating_k(3).unwrap();
    let b = normalized_bracket(&d);
    let sites = find_flypes(&d);
    assert!(!sites.is_empty());
    for s in &sites {
        let y = apply_flype(&d, s).unwrap();
        assert_eq!(normalized_bracket(&y), b, "flype at crossing {}", s.crossing);
    }
}

#[test]
fn untwisting_keeps_the_link() {
    // a trefoil with a kink added by hand
    let kinked = from_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,7],X[7,8,8,2]]").unwrap();
    assert!(!kinked.is_reduced());
    let v = *kinked.nugatory_crossings().iter().next().unwrap();
    let plain = kinked.untwist(v).unwrap();
    assert!(plain.is_reduced());
    assert_eq!(plain.crossing_count(), 3);
    assert_eq!(normalized_bracket(&kinked), normalized_bracket(&plain));
}

#[test]
fn pd_round_trip_keeps_the_diagram() {
    for d in [
        LinkDiagram::from_mosaic(&generate_l(3).unwrap()).unwrap(),
        standard_alternating_k(3).unwrap(),
        standard_alternating_k(4).unwrap(),
    ] {
        let back = from_pd(&to_pd(&d)).unwrap();
        assert!(isomorphic(&d, &back));
        assert_eq!(back.exterior_degree(), d.exterior_degree());
    }
}

#[test]
fn trefoil_of_l2() {
    let d = LinkDiagram::from_mosaic(&generate_l(2).unwrap()).unwrap();
    let trefoil = from_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]").unwrap();
    let b = normalized_bracket(&d);
    assert!(b == normalized_bracket(&trefoil) || b == normalized_bracket(&trefoil.mirror()));
}
