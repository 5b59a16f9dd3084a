use orbit_atlas::exactla::symplectic::is_symplectic;
use orbit_atlas::exactla::{int, omega_matrix, QMatrix};
use orbit_atlas::isolab::oracle::{act_by_conjugation, is_in_sp, lie_lift, orbit_dim_infinitesimal, parabolic_basis};
use orbit_atlas::isolab::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(n: usize, k: usize) -> IsoContext {
    IsoContext::new(n, k).unwrap()
}

fn contexts(max_n: usize) -> Vec<IsoContext> {
    (3..=max_n)
        .flat_map(|n| (2..n).map(move |k| ctx(n, k)))
        .collect()
}

const fn o(r: usize, h: usize, t: usize) -> OrbitTriplet {
    OrbitTriplet::new(r, h, t)
}

#[test]
fn ig38_orbits_and_closure_diagram() {
    let c = ctx(4, 3);
    let hasse = build_hasse(&c);
    let dims: Vec<usize> = hasse.nodes.iter().map(|n| n.dim).collect();
    assert_eq!(dims, vec![0, 4, 5, 6, 8, 9, 9, 11, 12]);
    let mut edges: Vec<(OrbitTriplet, OrbitTriplet)> = hasse
        .edges
        .iter()
        .map(|e| (hasse.nodes[e.lower].triplet, hasse.nodes[e.upper].triplet))
        .collect();
    edges.sort();
    let mut expected = vec![
        (o(0, 0, 0), o(0, 1, 1)),
        (o(0, 1, 1), o(1, 0, 0)),
        (o(0, 1, 1), o(0, 2, 0)),
        (o(1, 0, 0), o(1, 1, 1)),
        (o(0, 2, 0), o(1, 1, 1)),
        (o(1, 1, 1), o(2, 0, 0)),
        (o(1, 1, 1), o(1, 2, 0)),
        (o(2, 0, 0), o(2, 1, 1)),
        (o(1, 2, 0), o(2, 1, 1)),
        (o(2, 1, 1), o(3, 0, 0)),
    ];
    expected.sort();
    assert_eq!(edges, expected);
}

#[test]
fn orbit_counts() {
    assert_eq!(enumerate_orbits(&ctx(3, 2)).len(), 6);
    assert_eq!(enumerate_orbits(&ctx(4, 3)).len(), 9);
    assert_eq!(enumerate_orbits(&ctx(5, 3)).len(), 12);
    assert_eq!(enumerate_orbits(&ctx(5, 4)).len(), 12);
}

#[test]
fn ig26_chain() {
    let h = build_hasse(&ctx(3, 2));
    let names: Vec<(String, String)> = h
        .edges
        .iter()
        .map(|e| (h.nodes[e.lower].triplet.to_string(), h.nodes[e.upper].triplet.to_string()))
        .collect();
    assert_eq!(names.len(), 6);
    for pair in [
        ("(0,0,0)", "(0,1,1)"),
        ("(0,1,1)", "(1,0,0)"),
        ("(0,1,1)", "(0,2,0)"),
        ("(1,0,0)", "(1,1,1)"),
        ("(0,2,0)", "(1,1,1)"),
        ("(1,1,1)", "(2,0,0)"),
    ] {
        assert!(names.contains(&(pair.0.to_string(), pair.1.to_string())), "{pair:?}");
    }
}

#[test]
fn representatives_classify_to_their_label() {
    for c in contexts(7) {
        for t in enumerate_orbits(&c) {
            assert_eq!(classify(&c, &representative(&c, t).unwrap()).unwrap(), t, "{} {t}", c.name());
        }
    }
}

#[test]
fn invalid_triplets_are_rejected() {
    let c = ctx(4, 3);
    for t in [o(4, 0, 0), o(0, 3, 1), o(0, 2, 2), o(0, 1, 0), o(2, 2, 0)] {
        assert!(representative(&c, t).is_err(), "{t}");
        assert!(orbit_dim(&c, t).is_err());
    }
    assert!(!o(0, 4, 2).is_valid(&ctx(6, 4)));
}

#[test]
fn dimension_formula_matches_infinitesimal_rank() {
    for c in contexts(6) {
        for t in enumerate_orbits(&c) {
            let x = representative(&c, t).unwrap();
            assert_eq!(orbit_dim_infinitesimal(&c, &x).unwrap(), orbit_dim(&c, t).unwrap(), "{} {t}", c.name());
        }
    }
}

#[test]
fn parabolic_basis_has_expected_size() {
    for c in contexts(6) {
        let n = c.n();
        assert_eq!(parabolic_basis(&c).len(), n * (2 * n + 1) - c.dim());
        assert!(parabolic_basis(&c).iter().all(is_in_sp));
    }
}

#[test]
fn dimension_identities() {
    for n in 3..=12 {
        for k in 2..n {
            let c = ctx(n, k);
            assert_eq!(orbit_dim(&c, o(k, 0, 0)).unwrap(), c.dim());
            assert_eq!(orbit_dim(&c, o(k - 1, 1, 1)).unwrap(), c.dim() - 1);
            assert_eq!(c.dim(), k * (k + 1) / 2 + 2 * k * (n - k));
        }
    }
}

#[test]
fn group_elements_are_symplectic_and_parabolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in contexts(5) {
        let om = omega_matrix(c.n());
        for _ in 0..10 {
            let g = random_group_element(&c, &mut rng);
            assert!(is_symplectic(&g.matrix, &om));
            assert_eq!(g.matrix.mul(&g.inverse), QMatrix::identity(2 * c.n()));
            let k = c.k();
            assert!(g.matrix.block(k, 0, 2 * c.n() - k, k).is_zero());
        }
        let id = GroupElement::identity(&c);
        let x = representative(&c, o(1, 1, 1)).unwrap();
        assert_eq!(act(&c, &id, &x).unwrap(), x);
    }
}

#[test]
fn action_matches_conjugation_in_sp() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in contexts(5) {
        for _ in 0..20 {
            let x = random_tangent_element(&c, 3, &mut rng);
            assert!(is_in_sp(&lie_lift(&c, &x)));
            let g = random_group_element(&c, &mut rng);
            assert_eq!(act(&c, &g, &x).unwrap(), act_by_conjugation(&c, &g, &x).unwrap());
        }
    }
}

#[test]
fn action_is_a_group_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = ctx(5, 3);
    for _ in 0..10 {
        let x = random_tangent_element(&c, 3, &mut rng);
        let g = random_group_element(&c, &mut rng);
        let h = random_group_element(&c, &mut rng);
        let gh = GroupElement {
            matrix: g.matrix.mul(&h.matrix),
            inverse: h.inverse.mul(&g.inverse),
            ..g.clone()
        };
        let lhs = act(&c, &gh, &x).unwrap();
        let rhs = act(&c, &g, &act(&c, &h, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn classification_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for c in contexts(5) {
        for t in enumerate_orbits(&c) {
            let x = representative(&c, t).unwrap();
            for _ in 0..25 {
                let g = random_group_element(&c, &mut rng);
                assert_eq!(classify(&c, &act(&c, &g, &x).unwrap()).unwrap(), t);
            }
        }
    }
}

#[test]
fn unipotent_part_only_touches_support_rows() {
    let c = ctx(4, 3);
    let mut x = representative(&c, o(1, 0, 0)).unwrap();
    x.add_tensor(&c, 1, 4, &int(1)).unwrap();
    let id = GroupElement::identity(&c);
    let a = QMatrix::from_i64(&[&[1, 2], &[0, -1], &[3, 1]]);
    let b = a
        .mul(&omega_matrix(1))
        .mul(&a.transpose())
        .scale(&orbit_atlas::exactla::ratio(1, 2))
        .mul(&QMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
    let g = GroupElement::assemble(
        &c,
        (id.levi_gl.clone(), id.levi_gl.clone()),
        (id.levi_sp.clone(), id.levi_sp.clone()),
        a,
        b,
    )
    .unwrap();
    let y = act(&c, &g, &x).unwrap();
    let diff = y.h().sub(x.h());
    assert!(!diff.is_zero());
    assert!(diff.block(0, 0, 2, 2).is_zero());
    assert_eq!(y.sigma(), x.sigma());
    assert_eq!(classify(&c, &y).unwrap(), o(1, 1, 1));
}

#[test]
fn witnesses_realise_every_edge() {
    let eps = [int(1), int(2), int(7)];
    for c in contexts(6) {
        let hasse = build_hasse(&c);
        for e in &hasse.edges {
            let (lo, up) = (hasse.nodes[e.lower].triplet, hasse.nodes[e.upper].triplet);
            let w = degeneration_witness(&c, lo, up).unwrap();
            assert_eq!(Some(w.kind.name()), e.witness.as_deref());
            for x in &eps {
                assert_eq!(classify(&c, &w.at(x)).unwrap(), up, "{} {lo}->{up} at {x}", c.name());
            }
            assert_eq!(classify(&c, &w.limit()).unwrap(), lo, "{} {lo}->{up} limit", c.name());
        }
        assert!(degeneration_witness(&c, o(0, 0, 0), o(c.k(), 0, 0)).is_err());
    }
}

#[test]
fn divisor_witnesses() {
    let eps = [int(1), int(2), int(7)];
    for c in contexts(6) {
        let divisor = o(c.k() - 1, 1, 1);
        for t in enumerate_orbits(&c) {
            if t == divisor || t.r == c.k() {
                continue;
            }
            let w = degeneration_witness(&c, t, divisor).unwrap();
            for x in &eps {
                assert_eq!(classify(&c, &w.at(x)).unwrap(), divisor);
            }
            assert_eq!(classify(&c, &w.limit()).unwrap(), t);
        }
    }
}

#[test]
fn closure_diagram_shape() {
    for c in contexts(7) {
        let h = build_hasse(&c);
        assert!(h.is_acyclic() && h.is_transitively_reduced());
        for e in &h.edges {
            assert!(h.nodes[e.lower].dim < h.nodes[e.upper].dim);
        }
        let div = h.nodes.iter().position(|n| n.triplet == o(c.k() - 1, 1, 1)).unwrap();
        let top = h.nodes.iter().position(|n| n.triplet == o(c.k(), 0, 0)).unwrap();
        for i in 0..h.node_count() {
            if i != top {
                assert!(h.reaches(i, div), "{} {}", c.name(), h.nodes[i].triplet);
            }
        }
        assert_eq!(h.covers_of(div).collect::<Vec<_>>(), vec![top]);
    }
}

#[test]
fn perturbations_stay_inside_the_closure_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for c in contexts(5) {
        let hasse = build_hasse(&c);
        let index = |t: OrbitTriplet| hasse.nodes.iter().position(|n| n.triplet == t).unwrap();
        for e in &hasse.edges {
            let lo = hasse.nodes[e.lower].triplet;
            let up = hasse.nodes[e.upper].triplet;
            let x = representative(&c, lo).unwrap();
            for _ in 0..5 {
                let g = random_group_element(&c, &mut rng);
                let z = act(&c, &g, &representative(&c, up).unwrap()).unwrap();
                for eps in [orbit_atlas::exactla::ratio(1, 7), orbit_atlas::exactla::ratio(1, 13)] {
                    let y = classify(&c, &x.add(&z.scale(&eps))).unwrap();
                    assert!(hasse.reaches(e.lower, index(y)), "{lo} + eps {up} gave {y}");
                }
            }
        }
    }
}

#[test]
fn ig38_tangential_graph() {
    let g = tangential_graph(&ctx(4, 3));
    let labels: Vec<&str> = g.nodes.iter().map(|n| n.label.as_str()).collect();
    assert_eq!(labels.len(), 7);
    let mut edges: Vec<(String, String)> = g
        .edges
        .iter()
        .map(|e| (g.nodes[e.lower].label.clone(), g.nodes[e.upper].label.clone()))
        .collect();
    edges.sort();
    let mut expected: Vec<(String, String)> = [
        ("IG(3,8)", "Theta(0,2,0)"),
        ("Theta(0,2,0)", "Theta(1,1,1)"),
        ("Theta(1,1,1)", "Theta(1,2,0)"),
        ("Theta(1,1,1)", "Theta(2,0,0)"),
        ("Theta(2,0,0)", "Theta(2,1,1)"),
        ("Theta(1,2,0)", "Theta(2,1,1)"),
        ("Theta(2,1,1)", "Theta(3,0,0)"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    expected.sort();
    assert_eq!(edges, expected);
    let ident: Vec<&str> = g
        .nodes
        .iter()
        .filter(|n| n.tangential_identifiable)
        .map(|n| n.label.as_str())
        .collect();
    assert_eq!(ident, vec!["Theta(1,2,0)", "Theta(2,1,1)", "Theta(3,0,0)"]);
}

#[test]
fn dense_orbit_is_generic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = ctx(4, 3);
    let hits = (0..500)
        .filter(|_| classify(&c, &random_tangent_element(&c, 50, &mut rng)).unwrap() == o(3, 0, 0))
        .count();
    assert!(hits >= 490, "{hits}");
}
