//! Acceptance criteria 1–13, exact. One line per criterion; exits nonzero
//! if any fails or runs over its time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::khovanov::{khovanov, lee_s};
use common::props::{d2_after_everything, reductions_agree};
use common::{fixture_text, graph, khovanov_as_ours, link};
use krh_core::algebra::{Coeff, Laurent, Potential};
use krh_core::invariants::{
    circle_laws, dominance, gornik_dimension_check, morse_pattern, movie_state_support, s_n, Check,
};
use krh_core::link::{build_complex, homology, pages_of, LinkDiagram, Move};
use krh_core::mf::{CohomOptions, KoszulCohomology};
use krh_core::moy::{graph_cohomology, moy_dimension, PlanarGraph};
use krh_core::suites;
use num_rational::Ratio;
use num_traits::Signed;

type Outcome = Result<String, String>;
/// (number, check, time budget in seconds).
type Criterion = (u32, fn() -> Outcome, u64);

fn sl(n: usize) -> Potential {
    Potential::sl(n).unwrap()
}

fn gornik(n: usize) -> Potential {
    Potential::gornik(n).unwrap()
}

fn coh(g: &PlanarGraph, p: &Potential) -> KoszulCohomology {
    graph_cohomology(g, p, &CohomOptions::with_certificate(None)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[Check]) -> Result<usize, String> {
    match checks.iter().find(|c| !c.pass) {
        Some(c) => Err(format!("{} ({})", c.name, c.detail)),
        None => Ok(checks.len()),
    }
}

fn c1() -> Outcome {
    let circle = graph("circle.g");
    for n in 2..=4 {
        let c = coh(&circle, &sl(n));
        let graded = &c.coh.graded[0] + &c.coh.graded[1];
        ensure(graded == Laurent::qint(n as i64), || format!("n={n}: {graded}"))?;
        let h = homology(&LinkDiagram::unknot(), &sl(n)).unwrap();
        let l = h.dims.iter().fold(Laurent::zero(), |a, &(_, q, d)| &a + &Laurent::mono(q, d as i64));
        ensure(l == Laurent::qint(n as i64), || format!("unknot n={n}: {l}"))?;
    }
    Ok("H(circle) = [n] for n = 2, 3, 4".into())
}

fn c2() -> Outcome {
    for name in ["circle.g", "theta.g", "gammahat.g"] {
        let g = graph(name);
        for n in 2..=3 {
            let graded = coh(&g, &sl(n)).coh;
            let graded = &graded.graded[0] + &graded.graded[1];
            let filtered = coh(&g, &gornik(n)).coh.filtered_total();
            ensure(filtered == graded, || format!("{name} n={n}: {filtered} vs {graded}"))?;
        }
    }
    Ok("circle, theta, Γ̂ at n = 2, 3".into())
}

fn c3() -> Outcome {
    let g = graph("gammahat.g");
    for n in 2..=3 {
        let c = coh(&g, &gornik(n));
        let want = &(&Laurent::qint(2) * &Laurent::qint(n as i64)) * &Laurent::qint(n as i64 - 1);
        ensure(c.dim() == 2 * n * (n - 1), || format!("n={n}: dim {}", c.dim()))?;
        ensure(c.coh.filtered_total() == want, || format!("n={n}: {}", c.coh.filtered_total()))?;
    }
    Ok("dim 4 and 12, filtered [2][n][n-1]".into())
}

fn c4() -> Outcome {
    for name in ["circle.g", "reduction1.g", "reduction2.g", "gammahat.g"] {
        let g = graph(name);
        for n in 2..=3 {
            let moy = moy_dimension(&g, n).unwrap();
            let c = coh(&g, &sl(n)).coh;
            let direct = &c.graded[0] + &c.graded[1];
            ensure(moy == direct, || format!("{name} n={n}: {moy} vs {direct}"))?;
        }
    }
    let mut closures = 0;
    for tag in ["123", "132", "213", "231", "312", "321"] {
        for n in 2..=4 {
            let d = |k: &str| moy_dimension(&PlanarGraph::parse(suites::reduction4(tag, k)).unwrap(), n).unwrap();
            let (lhs, rhs) = (&d("g1") + &d("g2"), &d("g3") + &d("g4"));
            ensure(lhs == rhs, || format!("MOY IV {tag} n={n}: {lhs} vs {rhs}"))?;
            closures += 1;
        }
    }
    Ok(format!("4 graphs × 2 n, MOY IV on {closures} closures"))
}

fn c5() -> Outcome {
    let k = all_pass(&suites::chi_identities().unwrap())?;
    Ok(format!("{k} identities for x^3, x^3 - 3x, x^4"))
}

const RANDOM_CASES: u64 = 256;

fn c6() -> Outcome {
    for seed in 0..RANDOM_CASES {
        d2_after_everything(seed)?;
    }
    Ok(format!("{RANDOM_CASES} random Koszul inputs"))
}

fn c7() -> Outcome {
    for seed in 0..RANDOM_CASES {
        reductions_agree(seed)?;
    }
    Ok(format!("{RANDOM_CASES} random instances"))
}

fn c8() -> Outcome {
    for name in ["trefoil.pd", "hopf.pd", "figure-eight.pd"] {
        let want = khovanov_as_ours(&khovanov(&fixture_text(&format!("links/{name}"))));
        let got = homology(&link(name), &sl(2)).unwrap().table();
        ensure(got == want, || format!("{name}: {got:?} vs {want:?}"))?;
    }
    Ok("trefoil, Hopf, figure-eight agree with the Frobenius cube".into())
}

fn c9() -> Outcome {
    let mut done = vec![];
    for n in 2..=3 {
        for name in ["unknot-0.pd", "hopf.pd", "trefoil.pd"] {
            let d = link(name);
            let c = gornik_dimension_check(&build_complex(&d, &gornik(n)).unwrap()).unwrap();
            ensure(c.pass(), || format!("{name} n={n}: {c:?}"))?;
            done.push(format!("{}", c.expected));
        }
    }
    Ok(format!("dims {} with independent f_φ", done.join(", ")))
}

fn c10() -> Outcome {
    for n in 2..=3 {
        for name in ["unknot-0.pd", "hopf.pd", "trefoil.pd"] {
            let d = link(name);
            let pages = pages_of(&build_complex(&d, &gornik(n)).unwrap(), None);
            let hn = homology(&d, &sl(n)).unwrap();
            ensure(pages[1].table() == hn.table(), || format!("{name} n={n}: E_1 ≠ H_n"))?;
            let inf = pages.last().unwrap().total();
            let want = n.pow(d.component_count() as u32);
            ensure(inf == want, || format!("{name} n={n}: E_∞ {inf} vs {want}"))?;
        }
    }
    Ok("E_1 = H_n, E_∞ = n^m on unknot, Hopf, trefoil for n = 2, 3".into())
}

fn c11() -> Outcome {
    let k2 = all_pass(&suites::reidemeister(2).unwrap())?;
    let k3 = all_pass(&suites::reidemeister(3).unwrap())?;
    Ok(format!("{k2} pairs at n = 2, {k3} at n = 3, homology and every page"))
}

fn c12() -> Outcome {
    for n in 2..=3 {
        for name in ["unknot-0.pd", "unknot-1.pd", "unknot-1-neg.pd", "unknot-2.pd"] {
            let s = s_n(&link(name), n).unwrap();
            ensure(s == Ratio::from_integer(0), || format!("s_{n}({name}) = {s}"))?;
        }
    }
    let mut seen = vec![];
    for name in ["trefoil.pd", "figure-eight.pd"] {
        let s = s_n(&link(name), 2).unwrap();
        let lee = lee_s(&fixture_text(&format!("links/{name}")));
        ensure(s.abs() <= Ratio::from_integer(2), || format!("|s_2({name})| = {s}"))?;
        ensure(s == Ratio::from_integer(lee as i64), || format!("s_2({name}) = {s}, Lee oracle {lee}"))?;
        seen.push(format!("s_2({name}) = {s}"));
    }
    for (name, _) in suites::LINKS {
        let (top, g) = dominance(&link(name), 2).unwrap();
        ensure(g <= top, || format!("{name}: g^max {g} > {top}"))?;
    }
    Ok(format!("s_n(unknot) = 0, {}, dominance on {} fixtures", seen.join(", "), suites::LINKS.len()))
}

fn c13() -> Outcome {
    for n in 2..=3 {
        let p = gornik(n);
        let laws = circle_laws(&p).unwrap();
        ensure(laws.pass(), || format!("n={n}: {laws:?}"))?;
        ensure(laws.lambda == Coeff::rat(1, n as i64).to_string() && laws.mu == "1", || format!("n={n}: λ {} μ {}", laws.lambda, laws.mu))?;
        let u = LinkDiagram::unknot();
        let two = LinkDiagram::unlink(2);
        for (d, mv) in [(&u, Move::Birth), (&two, Move::Saddle { a: 0, b: 1 }), (&two, Move::Death { segment: 0 }), (&u, Move::Death { segment: 0 })] {
            ensure(morse_pattern(d, &mv, &p).unwrap(), || format!("n={n}: Morse pattern of {mv:?}"))?;
        }
        // birth, merge, split: both final circles touch the source
        let movie = [Move::Birth, Move::Saddle { a: 0, b: 1 }, Move::Saddle { a: 0, b: 1 }];
        for k in 0..n {
            let s = movie_state_support(&u, &movie, &p, k).unwrap();
            ensure(s.pass() && s.support == vec![vec![k, k]], || format!("n={n} k={k}: {s:?}"))?;
        }
    }
    Ok("merge nδ, split -(n+1)ζ^{-k}, λ = 1/n, μ = 1, Morse patterns, 3-step movie support".into())
}

fn main() {
    let criteria: [Criterion; 13] = [
        (1, c1, 1),
        (2, c2, 30),
        (3, c3, 30),
        (4, c4, 120),
        (5, c5, 5),
        (6, c6, 30),
        (7, c7, 120),
        (8, c8, 300),
        (9, c9, 600),
        (10, c10, 600),
        (11, c11, 600),
        (12, c12, 600),
        (13, c13, 120),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, f, budget) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let el = t.elapsed();
        let over = el > Duration::from_secs(budget);
        let (pass, detail) = match r {
            Ok(d) if !over => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget} s budget")),
            Err(e) => (false, e),
        };
        failed += !pass as usize;
        println!("criterion {k:>2}: {} ({:.2} s) {detail}", if pass { "PASS" } else { "FAIL" }, el.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
