mod common;

use common::link;
use krh_core::algebra::{Coeff, Potential};
use krh_core::invariants::*;
use krh_core::link::{build_complex, cobordism_page_map, homology, parse_braid, LinkDiagram, Move};
use krh_core::Error;
use num_rational::Ratio;
use num_traits::Signed;

fn gornik(n: usize) -> Potential {
    Potential::gornik(n).unwrap()
}

#[test]
fn gornik_basis_dimensions() {
    for (name, n) in [("unknot-0.pd", 3), ("hopf.pd", 2), ("hopf.pd", 3), ("trefoil.pd", 2), ("unknot-1.pd", 2)] {
        let d = link(name);
        let check = gornik_dimension_check(&build_complex(&d, &gornik(n)).unwrap()).unwrap();
        assert!(check.pass(), "{name} n={n}: {check:?}");
        assert_eq!(check.expected, n.pow(d.component_count() as u32));
    }
}

#[test]
fn unknot_class_is_f_k() {
    let cube = build_complex(&LinkDiagram::unknot(), &gornik(3)).unwrap();
    for k in 0..3 {
        let c = gornik_class(&cube, &vec![k]).unwrap();
        let f = krh_core::algebra::derived::gornik_f_in(3, k, 0).unwrap();
        // the circle's class e_c carries f_k(x)
        assert_eq!(c.elem.get(&1).cloned(), Some(f));
    }
}

#[test]
fn equal_labels_use_the_oriented_resolution() {
    let d = parse_braid("s1 s1 s1").unwrap();
    let cube = build_complex(&d, &gornik(2)).unwrap();
    let c = gornik_class(&cube, &vec![0]).unwrap();
    assert!((0..3).all(|x| !d.is_wide(c.bits, x)));
    let h = parse_braid("s1 s1").unwrap();
    let cube = build_complex(&h, &gornik(2)).unwrap();
    let c = gornik_class(&cube, &vec![0, 1]).unwrap();
    assert!((0..2).all(|x| h.is_wide(c.bits, x)));
}

#[test]
fn labels_are_range_checked() {
    let cube = build_complex(&LinkDiagram::unknot(), &gornik(2)).unwrap();
    assert!(matches!(gornik_class(&cube, &vec![2]), Err(Error::LabelOutOfRange { label: 2, n: 2 })));
    let sl = build_complex(&LinkDiagram::unknot(), &Potential::sl(2).unwrap()).unwrap();
    assert!(matches!(gornik_class(&sl, &vec![0]), Err(Error::InvalidPotential(_))));
}

#[test]
fn circle_cobordism_laws() {
    for n in 2..=3 {
        let laws = circle_laws(&gornik(n)).unwrap();
        assert!(laws.pass(), "{laws:?}");
        assert_eq!(laws.lambda, Coeff::rat(1, n as i64).to_string());
        assert_eq!(laws.mu, "1");
        assert_eq!(laws.split_scalar, (-(n as i64) - 1).to_string());
    }
}

#[test]
fn morse_patterns() {
    for n in 2..=3 {
        let p = gornik(n);
        assert!(morse_pattern(&LinkDiagram::unknot(), &Move::Birth, &p).unwrap());
        let two = LinkDiagram::unlink(2);
        assert!(morse_pattern(&two, &Move::Saddle { a: 0, b: 1 }, &p).unwrap());
        assert!(morse_pattern(&two, &Move::Death { segment: 0 }, &p).unwrap());
        assert!(morse_pattern(&LinkDiagram::unknot(), &Move::Death { segment: 0 }, &p).unwrap());
    }
    // a saddle across unequal labels kills the class
    let a = morse_action(&LinkDiagram::unlink(2), &Move::Saddle { a: 0, b: 1 }, &gornik(2), &vec![0, 1]).unwrap();
    assert!(a.support.is_empty());
}

#[test]
fn movie_support() {
    for n in 2..=3 {
        let p = gornik(n);
        let u = LinkDiagram::unknot();
        for k in 0..n {
            let s = movie_state_support(&u, &[Move::Birth, Move::Saddle { a: 0, b: 1 }], &p, k).unwrap();
            assert!(s.pass(), "{s:?}");
            assert_eq!(s.support, vec![vec![k]]);
            let id = movie_state_support(&u, &[], &p, k).unwrap();
            assert_eq!(id.support, vec![vec![k]]);
        }
    }
    // a born circle that dies again is a closed sphere
    let err = movie_state_support(&LinkDiagram::unknot(), &[Move::Birth, Move::Death { segment: 1 }], &gornik(2), 0);
    assert!(matches!(err, Err(Error::ClosedComponent)));
}

#[test]
fn illegal_moves() {
    let p = gornik(2);
    let u = LinkDiagram::unknot();
    assert!(matches!(morse_action(&u, &Move::Saddle { a: 0, b: 0 }, &p, &vec![0]), Err(Error::IllegalMove(_))));
    assert!(matches!(morse_action(&u, &Move::Death { segment: 3 }, &p, &vec![0]), Err(Error::IllegalMove(_))));
}

#[test]
fn page_maps() {
    let p = gornik(2);
    let u = LinkDiagram::unknot();
    let id = cobordism_page_map(&u, &[], &p, 1).unwrap();
    assert!(id.is_isomorphism());
    // splitting the unknot shifts filtration by n − 1
    let split = cobordism_page_map(&u, &[Move::Saddle { a: 0, b: 0 }], &p, 1);
    assert!(split.is_err());
    let birth_merge = cobordism_page_map(&u, &[Move::Birth, Move::Saddle { a: 0, b: 1 }], &p, 1).unwrap();
    assert_eq!(birth_merge.shift, 0);
    assert!(birth_merge.is_isomorphism());
}

#[test]
fn rasmussen_invariants() {
    for n in 2..=3 {
        assert_eq!(s_n(&LinkDiagram::unknot(), n).unwrap(), Ratio::from_integer(0));
        assert_eq!(s_n(&link("unknot-2.pd"), n).unwrap(), Ratio::from_integer(0));
    }
    assert!(matches!(s_n(&link("hopf.pd"), 2), Err(Error::NotAKnot(2))));
    let t = link("trefoil.pd");
    let s = s_n(&t, 2).unwrap();
    assert!(s.abs() <= Ratio::from_integer(2));
    assert_eq!(s_n(&parse_braid("s1 s1 s1").unwrap(), 2).unwrap(), Ratio::from_integer(2));
    // same knot, different diagrams
    assert_eq!(s_n(&parse_braid("s1 s2 s1 s2").unwrap(), 2).unwrap(), Ratio::from_integer(2));
}

#[test]
fn slice_bounds() {
    for n in 2..=3 {
        let u = slice_bound_report(&LinkDiagram::unknot(), n, 1).unwrap();
        assert!(u.holds);
        assert_eq!(u.gmax, n as i32 - 1);
        let t = slice_bound_report(&parse_braid("s1 s1 s1").unwrap(), n, -1).unwrap();
        assert!(t.holds && t.genus_bound == Some(true), "{t:?}");
        let two = slice_bound_report(&LinkDiagram::unlink(2), n, 2).unwrap();
        assert!(two.holds);
        assert_eq!(two.gmax, 2 * (n as i32 - 1));
    }
}

#[test]
fn dominance_on_fixtures() {
    for name in ["unknot-0.pd", "unknot-1.pd", "unknot-2.pd", "hopf.pd", "trefoil.pd", "figure-eight.pd", "unlink-r2.pd"] {
        let (top, g) = dominance(&link(name), 2).unwrap();
        assert!(top >= g, "{name}: {top} < {g}");
    }
}

#[test]
fn unknot_extremes() {
    for n in 2..=4 {
        let h = homology(&LinkDiagram::unknot(), &gornik(n)).unwrap();
        assert_eq!(h.gmax_gmin().unwrap(), (n as i32 - 1, 1 - n as i32));
    }
}

#[test]
fn report_round_trip() {
    let r = Report {
        diagram: "O".into(),
        n: 3,
        potential: "x^4 - 4*x".into(),
        dims: vec![(0, -2, 1), (0, 0, 1), (0, 2, 1)],
        poincare: "q^-2 + 1 + q^2".into(),
        gmax: Some(2),
        gmin: Some(-2),
        s_n: Some("0".into()),
        checks: vec![Check::new("gornik", true, "dim 3")],
    };
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    assert!(r.all_pass());
}
