use std::path::PathBuf;

use krh_core::algebra::{Laurent, Potential};
use krh_core::mf::CohomOptions;
use krh_core::moy::{admissible_states, graph_cohomology, moy_dimension, PlanarGraph};

fn fixture(name: &str) -> PlanarGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/graphs").join(name);
    PlanarGraph::parse(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

const CORPUS: [&str; 6] = ["circle.g", "theta.g", "gammahat.g", "reduction1.g", "reduction2.g", "reduction3.g"];

#[test]
fn states_match_moy_at_q_one() {
    for name in CORPUS {
        let g = fixture(name);
        for n in 2..=4 {
            let d = moy_dimension(&g, n).unwrap();
            assert_eq!(d.total(), admissible_states(&g, n).len() as i64, "{name} n={n}");
        }
    }
}

#[test]
fn moy_four_identity_on_closures() {
    for tag in ["123", "132", "213", "231", "312", "321"] {
        let g = |k: &str| fixture(&format!("reduction4-{tag}-{k}.g"));
        for n in 2..=5 {
            let d = |k: &str| moy_dimension(&g(k), n).unwrap();
            assert_eq!(&d("g1") + &d("g2"), &d("g3") + &d("g4"), "closure {tag} n={n}");
        }
    }
}

#[test]
fn direct_cohomology_matches_moy() {
    for name in CORPUS {
        let g = fixture(name);
        for n in 2..=3 {
            let want = moy_dimension(&g, n).unwrap();
            for p in [Potential::sl(n).unwrap(), Potential::gornik(n).unwrap()] {
                let kc = graph_cohomology(&g, &p, &CohomOptions::with_certificate(None)).unwrap();
                let c = &kc.coh;
                assert_eq!(c.filtered_total(), want, "{name} n={n} p={}", p.to_text());
                assert_eq!(&c.graded[0] + &c.graded[1], want, "{name} n={n}");
                assert_eq!(c.concentrated_parity(), Some(g.parity()), "{name} n={n}");
            }
        }
    }
}

#[test]
fn two_circles_tensor() {
    let g = PlanarGraph::parse("circle a\ncircle b").unwrap();
    let kc = graph_cohomology(&g, &Potential::gornik(3).unwrap(), &CohomOptions::default()).unwrap();
    assert_eq!(kc.dim(), 9);
    assert_eq!(kc.coh.filtered_total(), &Laurent::qint(3) * &Laurent::qint(3));
}
