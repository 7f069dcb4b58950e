mod common;

use common::khovanov::{khovanov, lee_s};
use common::{fixture_text, khovanov_as_ours, link};
use krh_core::algebra::{Laurent, Potential};
use krh_core::link::{build_complex, homology, homology_of, pages_of, parse_braid, parse_pd, LinkDiagram};
use krh_core::Error;

#[test]
fn braid_parsing() {
    let t = parse_braid("s1 s1 s1").unwrap();
    assert_eq!((t.crossings.len(), t.component_count(), t.writhe()), (3, 1, 3));
    let h = parse_braid("s1 s1").unwrap();
    assert_eq!(h.component_count(), 2);
    let m = parse_braid("s1^-1 s2 s1^-1 s2").unwrap();
    assert_eq!((m.component_count(), m.writhe()), (1, 0));
    assert!(matches!(parse_braid("s0"), Err(Error::ParseError { .. })));
    assert!(matches!(parse_braid("t1"), Err(Error::ParseError { .. })));
}

#[test]
fn pd_parsing() {
    assert!(matches!(parse_pd("X[1,2,3]"), Err(Error::ParseError { .. })));
    assert!(matches!(parse_pd("X[1,2,3,5]"), Err(Error::ParseError { .. })));
    assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(Error::ParseError { .. })));
    let t = link("trefoil.pd");
    assert_eq!((t.crossings.len(), t.component_count()), (3, 1));
    assert_eq!(link("hopf.pd").component_count(), 2);
    assert_eq!(link("figure-eight.pd").writhe(), 0);
}

fn sl2() -> Potential {
    Potential::sl(2).unwrap()
}

#[test]
fn khovanov_oracle_agrees() {
    for name in ["trefoil.pd", "hopf.pd", "figure-eight.pd", "unknot-1.pd", "unknot-2.pd", "unlink-r2.pd"] {
        let want = khovanov_as_ours(&khovanov(&fixture_text(&format!("links/{name}"))));
        let got = homology(&link(name), &sl2()).unwrap();
        assert_eq!(got.table(), want, "{name}");
    }
}

#[test]
fn oracle_sees_chirality() {
    // the trefoil fixture has only negative crossings; its Khovanov homology
    // lives in non-positive homological degrees
    let kh = khovanov(&fixture_text("links/trefoil.pd"));
    assert!(kh.keys().all(|k| k.0 <= 0));
    assert_eq!(kh.values().sum::<usize>(), 4);
}

#[test]
fn circle_dimension() {
    for n in 2..=4 {
        let h = homology(&LinkDiagram::unknot(), &Potential::sl(n).unwrap()).unwrap();
        let l: Laurent = h.dims.iter().map(|&(_, q, d)| Laurent::mono(q, d as i64)).fold(Laurent::zero(), |a, b| &a + &b);
        assert_eq!(l, Laurent::qint(n as i64), "n={n}");
    }
}

#[test]
fn unknot_diagrams_agree() {
    for n in 2..=3 {
        for p in [Potential::sl(n).unwrap(), Potential::gornik(n).unwrap()] {
            let want = homology(&LinkDiagram::unknot(), &p).unwrap();
            for name in ["unknot-1.pd", "unknot-1-neg.pd", "unknot-2.pd"] {
                assert_eq!(homology(&link(name), &p).unwrap().dims, want.dims, "{name} n={n}");
            }
        }
    }
}

#[test]
fn cube_is_a_filtered_complex() {
    for name in ["trefoil.pd", "hopf.pd", "unknot-2.pd"] {
        for p in [sl2(), Potential::gornik(2).unwrap(), Potential::from_ints(2, &[1, -2, 1]).unwrap()] {
            let cube = build_complex(&link(name), &p).unwrap();
            assert!(cube.complex.d_squared_zero(), "{name}");
            assert!(cube.complex.is_filtered(), "{name}");
            assert_eq!(cube.complex.is_graded(), p.is_homogeneous(), "{name}");
        }
    }
}

#[test]
fn e1_is_khovanov_and_pages_converge() {
    let g = Potential::gornik(2).unwrap();
    for name in ["trefoil.pd", "hopf.pd", "unknot-0.pd"] {
        let d = link(name);
        let pages = pages_of(&build_complex(&d, &g).unwrap(), None);
        let kh = homology(&d, &sl2()).unwrap();
        assert_eq!(pages[1].table(), kh.table(), "{name}");
        assert_eq!(pages.last().unwrap().total(), 2usize.pow(d.component_count() as u32), "{name}");
    }
}

#[test]
fn lee_oracle_matches_s2() {
    for (name, s) in [("trefoil.pd", -2), ("trefoil-a.braid", 2), ("figure-eight.pd", 0), ("unknot-2.pd", 0)] {
        let text = fixture_text(&format!("links/{name}"));
        let d = link(name);
        let s2 = krh_core::invariants::s_n(&d, 2).unwrap();
        assert_eq!(s2, num_rational::Ratio::from_integer(s as i64), "{name}");
        if name.ends_with(".pd") {
            assert_eq!(lee_s(&text), s, "{name}");
        }
    }
}

#[test]
fn mirror_negates_degrees() {
    let d = parse_braid("s1 s1 s1").unwrap();
    let a = homology(&d, &sl2()).unwrap();
    let b = homology(&d.mirror(), &sl2()).unwrap();
    let flipped: Vec<(i32, i32, usize)> = {
        let mut v: Vec<_> = a.dims.iter().map(|&(i, q, x)| (-i, -q, x)).collect();
        v.sort();
        v
    };
    assert_eq!(b.dims, flipped);
}

#[test]
fn reduction_keeps_homology() {
    let cube = build_complex(&link("hopf.pd"), &Potential::gornik(2).unwrap()).unwrap();
    let h = homology_of(&cube);
    assert_eq!(cube.complex.homology(), h.table());
}
