use orbit_atlas::exactla::{int, Rational};
use orbit_atlas::rootsys::{DynkinType, Root, RootSystem};
use orbit_atlas::weylcomb::{
    exhaustive_cascade_length, greedy_cascade, is_orthogonal, max_orthogonal_cascade, reflect, weyl_words,
};

fn sys(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

#[test]
fn greedy_matches_exhaustive_on_every_node() {
    for t in DynkinType::all_up_to(8) {
        let s = RootSystem::new(t);
        for k in 1..=t.rank() {
            let c = max_orthogonal_cascade(&s, k).unwrap();
            assert!(is_orthogonal(&s, &c.roots));
            assert!(c.roots.iter().all(|r| s.is_long(r) && r.coeff(k) > 0));
            assert_eq!(c.len(), exhaustive_cascade_length(&s, k).unwrap(), "{t} node {k}");
        }
    }
}

#[test]
fn greedy_is_the_cascade_on_cominuscule_nodes() {
    for t in DynkinType::all_up_to(8) {
        let s = RootSystem::new(t);
        for k in (1..=t.rank()).filter(|&k| s.is_cominuscule(k).unwrap()) {
            assert_eq!(greedy_cascade(&s, k).unwrap(), max_orthogonal_cascade(&s, k).unwrap());
        }
    }
}

#[test]
fn cominuscule_cascade_lengths() {
    for n in 2..=9usize {
        let s = sys(&format!("A{}", n - 1));
        for k in 1..n {
            assert_eq!(max_orthogonal_cascade(&s, k).unwrap().len(), k.min(n - k));
        }
    }
    for n in 2..=8usize {
        assert_eq!(max_orthogonal_cascade(&sys(&format!("C{n}")), n).unwrap().len(), n);
        assert_eq!(max_orthogonal_cascade(&sys(&format!("B{n}")), 1).unwrap().len(), 2);
    }
    for n in 4..=8usize {
        let s = sys(&format!("D{n}"));
        assert_eq!(max_orthogonal_cascade(&s, 1).unwrap().len(), 2);
        assert_eq!(max_orthogonal_cascade(&s, n).unwrap().len(), n / 2);
        assert_eq!(max_orthogonal_cascade(&s, n - 1).unwrap().len(), n / 2);
    }
    assert_eq!(max_orthogonal_cascade(&sys("E6"), 1).unwrap().len(), 2);
    assert_eq!(max_orthogonal_cascade(&sys("E6"), 6).unwrap().len(), 2);
    assert_eq!(max_orthogonal_cascade(&sys("E7"), 7).unwrap().len(), 3);
}

#[test]
fn type_a_cascade_is_shifted_blocks() {
    for n in 4..=9usize {
        let s = sys(&format!("A{}", n - 1));
        for k in 1..=n / 2 {
            let c = max_orthogonal_cascade(&s, k).unwrap();
            for (j, beta) in c.roots.iter().enumerate() {
                let expected: Vec<i64> =
                    (0..n - 1).map(|i| i64::from(i >= j && i < k + j)).collect();
                assert_eq!(beta.0, expected);
            }
        }
    }
}

#[test]
fn root_counts() {
    let expect = [
        ("A1", 2),
        ("A8", 72),
        ("B2", 8),
        ("B8", 128),
        ("C5", 50),
        ("D4", 24),
        ("D8", 112),
        ("E6", 72),
        ("E7", 126),
        ("E8", 240),
        ("F4", 48),
        ("G2", 12),
    ];
    for (t, count) in expect {
        assert_eq!(sys(t).roots().len(), count, "{t}");
    }
}

#[test]
fn cominuscule_nodes() {
    let expect: &[(&str, &[usize])] = &[
        ("A4", &[1, 2, 3, 4]),
        ("B4", &[1]),
        ("C4", &[4]),
        ("D5", &[1, 4, 5]),
        ("E6", &[1, 6]),
        ("E7", &[7]),
        ("E8", &[]),
        ("F4", &[]),
        ("G2", &[]),
    ];
    for (t, nodes) in expect {
        let s = sys(t);
        let found: Vec<usize> = (1..=s.rank()).filter(|&k| s.is_cominuscule(k).unwrap()).collect();
        assert_eq!(&found, nodes, "{t}");
    }
    assert_eq!(sys("E8").nilpotency_class(&[4]).unwrap(), 6);
    assert_eq!(sys("E7").nilpotency_class(&[7]).unwrap(), 1);
}

#[test]
fn graded_dimension_is_variety_dimension() {
    assert_eq!(sys("E6").graded_positive(1).unwrap().len(), 16);
    assert_eq!(sys("E7").graded_positive(7).unwrap().len(), 27);
    assert_eq!(sys("C4").graded_positive(4).unwrap().len(), 10);
    assert_eq!(sys("D6").graded_positive(6).unwrap().len(), 15);
    assert_eq!(sys("A7").graded_positive(3).unwrap().len(), 15);
}

#[test]
fn reflections_are_involutions_and_preserve_roots() {
    for t in ["B3", "C3", "F4", "G2", "E6"] {
        let s = sys(t);
        for beta in s.positive_roots() {
            for r in s.roots() {
                let v: Vec<Rational> = r.0.iter().map(|&c| int(c)).collect();
                let image = reflect(&s, beta, &v).unwrap();
                let back = reflect(&s, beta, &image).unwrap();
                assert_eq!(back, v);
                let as_root = Root(image.iter().map(|x| x.to_integer().try_into().unwrap()).collect());
                assert!(s.is_root(&as_root));
            }
        }
    }
}

#[test]
fn cascade_words_have_odd_first_length() {
    for t in ["A5", "C4", "D6", "E7"] {
        let s = sys(t);
        for k in 1..=s.rank() {
            if !s.is_cominuscule(k).unwrap() {
                continue;
            }
            let words = weyl_words(&max_orthogonal_cascade(&s, k).unwrap());
            assert_eq!(words[0].length(&s).unwrap() % 2, 1);
        }
    }
}
