//! Toric data, presets, Chern classes and stability.

use proptest::prelude::*;
use rank2dt::algebra::LaurentPoly3;
use rank2dt::toric::*;
use rank2dt::Error;

fn pt(k: i64) -> Option<P1Point> {
    Some(P1Point::affine(k))
}

#[test]
fn singularity_examples() {
    assert_eq!(singularity_data(&ChartToricData::standard([1, 1, 1])), (true, 1));
    assert_eq!(singularity_data(&ChartToricData::standard([1, 1, 0])), (false, 0));
    assert_eq!(singularity_data(&ChartToricData::standard([2, 3, 1])), (true, 6));
    let coincide = ChartToricData::new([0; 3], [1, 1, 1], [pt(0), pt(0), pt(1)]).unwrap();
    assert_eq!(singularity_data(&coincide), (false, 0));
}

#[test]
fn reflexive_character_examples() {
    let p = reflexive_character(&ChartToricData::standard([1, 1, 1]));
    let expected = LaurentPoly3::from_terms([([0, 1, 1], 1), ([1, 0, 1], 1), ([1, 1, 0], 1), ([1, 1, 1], -1)]);
    assert_eq!(p, expected);
    assert_eq!(reflexive_character(&ChartToricData::standard([0, 0, 0])), LaurentPoly3::monomial([0, 0, 0], 2));
    // locally free with two distinct lines: two generators
    let lf = reflexive_character(&ChartToricData::standard([0, 1, 1]));
    assert_eq!(lf.len(), 2);
    assert_eq!(lf.eval_one(), 2);
}

#[test]
fn p1_point_normalization() {
    assert_eq!(P1Point::new(-2, -4).unwrap(), P1Point::new(1, 2).unwrap());
    assert_eq!(P1Point::new(0, -3).unwrap().coords(), [0, 1]);
    assert!(P1Point::new(0, 0).is_err());
}

#[test]
fn p3_chern_classes() {
    let g = GlobalToricData::new(&[0, 0, 0, -1], &[0, 1, 1, 1], &[None, pt(0), pt(1), pt(2)]).unwrap();
    assert_eq!(chern_classes_p3(&g).unwrap(), (-1, 1, 1));
    let triv = GlobalToricData::new(&[0; 4], &[0; 4], &[None; 4]).unwrap();
    assert_eq!(chern_classes_p3(&triv).unwrap(), (0, 0, 0));
    // type (i) hull of c2 = 2: p_1 = p_2 on adjacent faces 1, 2, v_4 = 2
    let t1 = GlobalToricData::new(&[0, 0, 0, -2], &[1, 1, 1, 2], &[pt(0), pt(0), pt(1), pt(2)]).unwrap();
    let (c1, c2, c3) = chern_classes_p3(&t1).unwrap();
    assert_eq!((c1, c2), (-1, 2));
    assert_eq!(c3, 4);
    let five = GlobalToricData::new(&[0; 5], &[0; 5], &[None; 5]).unwrap();
    assert_eq!(chern_classes_p3(&five), Err(Error::NotTetrahedron(5)));
}

#[test]
fn c3_equals_sum_of_singularity_lengths() {
    let x = ToricThreefold::p3();
    let g = GlobalToricData::new(&[0, 0, 0, -2], &[0, 1, 2, 2], &[None, pt(0), pt(1), pt(2)]).unwrap();
    let (_, _, c3) = chern_classes_p3(&g).unwrap();
    let lengths: u64 = x.charts.iter().map(|c| singularity_data(&g.chart(*c)).1).sum();
    assert_eq!(c3 as u64, lengths);
}

#[test]
fn p3_edges_have_degree_one_normal_bundles() {
    let x = ToricThreefold::p3();
    assert_eq!(x.edges.len(), 6);
    for e in x.edges.iter() {
        assert_eq!((e.m, e.m_prime, e.c1_dot_c), (1, 1, 4));
    }
    assert_eq!(x.dh2.as_ref().unwrap(), &vec![1, 1, 1, 1]);
}

#[test]
fn conifold_compact_edge_and_polarization() {
    let x = ToricThreefold::conifold();
    assert_eq!(x.charts.len(), 8);
    assert_eq!(x.edges.len(), 12);
    let e = &x.edges[x.edge_between(0, 1).unwrap()];
    assert_eq!((e.m, e.m_prime, e.c1_dot_c), (-1, -1, 0));
    assert_eq!(e.axis[0], 2);
    assert_eq!(x.dh2.as_ref().unwrap(), &vec![3, 3, 2, 2, 5, 5]);
    assert_eq!(x.intersection(0, 2, 1), 1);
    assert_eq!(x.intersection(0, 1, 1), -1);
    assert_eq!(x.intersection(0, 0, 1), -1);
    assert_eq!(x.edges_in_y().count(), 1);
}

#[test]
fn p1_cubed_polarization() {
    let x = ToricThreefold::p1_cubed([1, 2, 3]);
    assert_eq!(x.edges.len(), 12);
    assert_eq!(x.dh2.as_ref().unwrap(), &vec![12, 6, 4, 12, 6, 4]);
    for e in x.edges.iter() {
        assert_eq!((e.m, e.m_prime), (0, 0));
    }
}

#[test]
fn stability_examples() {
    let p3 = ToricThreefold::p3();
    let hull = GlobalToricData::new(&[0, 0, 0, -1], &[0, 1, 1, 1], &[None, pt(0), pt(1), pt(2)]).unwrap();
    assert!(mu_stable(&hull, &p3).unwrap());
    let same = GlobalToricData::new(&[0, 0, 0, -1], &[0, 1, 1, 1], &[None, pt(0), pt(0), pt(0)]).unwrap();
    assert!(!mu_stable(&same, &p3).unwrap());
    let cube = ToricThreefold::p1_cubed([1, 2, 3]);
    let g = GlobalToricData::new(&[0; 6], &[1, 2, 3, 1, 2, 3], &[pt(0), pt(1), pt(2), pt(3), pt(4), pt(5)]).unwrap();
    assert!(mu_stable(&g, &cube).unwrap());
}

#[test]
fn edge_restriction_agrees_on_both_ends() {
    let x = ToricThreefold::p3();
    let g = GlobalToricData::new(&[0, 0, 0, -2], &[1, 1, 1, 2], &[pt(0), pt(0), pt(1), pt(2)]).unwrap();
    for i in 0..x.edges.len() {
        let flags = edge_restriction_data(&g, &x, i).unwrap();
        let e = &x.edges[i];
        assert_eq!(flags[0], g.faces[e.shared[0]]);
        assert_eq!(flags[1], g.faces[e.shared[1]]);
    }
}

#[test]
fn local_global_round_trip() {
    let x = ToricThreefold::conifold();
    for alpha in 0..x.charts.len() {
        let w = [3, -2, 5];
        assert_eq!(x.to_global(alpha, x.to_local(alpha, w)), w);
    }
}

#[test]
fn edge_coordinate_change_matches_pairing() {
    for x in [ToricThreefold::p3(), ToricThreefold::conifold(), ToricThreefold::p1_cubed([1, 1, 1])] {
        for e in x.edges.iter() {
            let w = [2, -1, 4];
            let ka = x.to_local(e.ends[0], w);
            let kb = x.to_local(e.ends[1], w);
            assert_eq!(kb[e.axis[1]], e.beta_leg_coordinate(ka));
            let (a, b) = other_axes(e.axis[0]);
            assert_eq!(kb[e.beta_axes[0]], ka[a]);
            assert_eq!(kb[e.beta_axes[1]], ka[b]);
        }
    }
}

#[test]
fn toric_json_round_trip() {
    let x = ToricThreefold::conifold();
    let s = serde_json::to_string(&x).unwrap();
    let y: ToricThreefold = serde_json::from_str(&s).unwrap();
    assert_eq!(x, y);
    let g = GlobalToricData::new(&[0, 0, 0, -1], &[0, 1, 1, 1], &[None, pt(0), pt(1), pt(2)]).unwrap();
    let s = serde_json::to_string(&g).unwrap();
    assert_eq!(serde_json::from_str::<GlobalToricData>(&s).unwrap(), g);
}

proptest! {
    #[test]
    fn character_has_rank_two(u in prop::array::uniform3(-2i32..3), v in prop::array::uniform3(0u32..3), labels in prop::array::uniform3(0i64..3)) {
        let p = [0, 1, 2].map(|i| if v[i] > 0 { Some(P1Point::affine(labels[i])) } else { None });
        let c = ChartToricData::new(u, v, p).unwrap();
        prop_assert_eq!(reflexive_character(&c).eval_one(), 2);
    }

    #[test]
    fn stability_depends_only_on_incidence(v in prop::array::uniform4(0u32..3), labels in prop::array::uniform4(0i64..3), shift in 1i64..7) {
        let x = ToricThreefold::p3();
        let mk = |off: i64| {
            let p: Vec<_> = (0..4).map(|i| if v[i] > 0 { Some(P1Point::new(1, labels[i] * 3 + off).unwrap()) } else { None }).collect();
            GlobalToricData::new(&[0, 0, 0, 0], &v, &p).unwrap()
        };
        prop_assert_eq!(mu_stable(&mk(0), &x).unwrap(), mu_stable(&mk(shift), &x).unwrap());
    }
}
