//! Named verification suites over the bundled fixtures.

use crate::algebra::{Laurent, Poly, Potential};
use crate::error::{Error, Result};
use crate::invariants::{circle_laws, gornik_dimension_check, morse_pattern, movie_state_support, Check};
use crate::link::{build_complex, homology_of, pages_of, parse_diagram, LinkDiagram, Move};
use crate::mf::{CohomOptions, Elem};
use crate::moy::maps::{block, chi, xi};
use crate::moy::{graph_cohomology, moy_dimension, PlanarGraph};

/// Fixture text compiled into the library, by file name.
pub const GRAPHS: &[(&str, &str)] = &[
    ("circle.g", include_str!("../../../fixtures/graphs/circle.g")),
    ("theta.g", include_str!("../../../fixtures/graphs/theta.g")),
    ("gammahat.g", include_str!("../../../fixtures/graphs/gammahat.g")),
    ("reduction1.g", include_str!("../../../fixtures/graphs/reduction1.g")),
    ("reduction2.g", include_str!("../../../fixtures/graphs/reduction2.g")),
    ("reduction3.g", include_str!("../../../fixtures/graphs/reduction3.g")),
];

pub const LINKS: &[(&str, &str)] = &[
    ("unknot-0.pd", include_str!("../../../fixtures/links/unknot-0.pd")),
    ("unknot-1.pd", include_str!("../../../fixtures/links/unknot-1.pd")),
    ("unknot-1-neg.pd", include_str!("../../../fixtures/links/unknot-1-neg.pd")),
    ("unknot-2.pd", include_str!("../../../fixtures/links/unknot-2.pd")),
    ("unlink-2.pd", include_str!("../../../fixtures/links/unlink-2.pd")),
    ("unlink-r2.pd", include_str!("../../../fixtures/links/unlink-r2.pd")),
    ("hopf.pd", include_str!("../../../fixtures/links/hopf.pd")),
    ("hopf.braid", include_str!("../../../fixtures/links/hopf.braid")),
    ("trefoil.pd", include_str!("../../../fixtures/links/trefoil.pd")),
    ("trefoil-a.braid", include_str!("../../../fixtures/links/trefoil-a.braid")),
    ("trefoil-b.braid", include_str!("../../../fixtures/links/trefoil-b.braid")),
    ("trefoil-c.braid", include_str!("../../../fixtures/links/trefoil-c.braid")),
    ("figure-eight.pd", include_str!("../../../fixtures/links/figure-eight.pd")),
];

pub const SUITES: &[&str] = &["moy-consistency", "reidemeister", "gornik", "chi-identities"];

pub fn graph(name: &str) -> Result<PlanarGraph> {
    let text = GRAPHS.iter().find(|g| g.0 == name).ok_or_else(|| Error::InvalidConfig(format!("no graph fixture {name}")))?.1;
    PlanarGraph::parse(text)
}

pub fn link(name: &str) -> Result<LinkDiagram> {
    let text = LINKS.iter().find(|g| g.0 == name).ok_or_else(|| Error::InvalidConfig(format!("no link fixture {name}")))?.1;
    parse_diagram(text)
}

pub fn run(suite: &str, n: usize) -> Result<Vec<Check>> {
    match suite {
        "moy-consistency" => moy_consistency(n),
        "reidemeister" => reidemeister(n),
        "gornik" => gornik(n),
        "chi-identities" => chi_identities(),
        _ => Err(Error::InvalidConfig(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", ")))),
    }
}

/// MOY evaluation against direct cohomology, filtered against graded, and
/// the MOY IV identity on the closures of the triple-edge family.
pub fn moy_consistency(n: usize) -> Result<Vec<Check>> {
    let sl = Potential::sl(n)?;
    let g = Potential::gornik(n)?;
    let mut out = Vec::new();
    for (name, _) in GRAPHS {
        let gr = graph(name)?;
        let moy = moy_dimension(&gr, n)?;
        let opts = CohomOptions::with_certificate(None);
        let graded = graph_cohomology(&gr, &sl, &opts)?.coh.filtered_total();
        let filtered = graph_cohomology(&gr, &g, &opts)?.coh.filtered_total();
        out.push(Check::new(&format!("{name} moy = direct"), moy == graded, format!("moy {moy}, direct {graded}")));
        out.push(Check::new(&format!("{name} filtered = graded"), filtered == graded, format!("filtered {filtered}")));
    }
    for tag in ["123", "132", "213", "231", "312", "321"] {
        let d = |k: &str| -> Result<Laurent> {
            let text = crate::suites::reduction4(tag, k);
            moy_dimension(&PlanarGraph::parse(text)?, n)
        };
        let lhs = &d("g1")? + &d("g2")?;
        let rhs = &d("g3")? + &d("g4")?;
        out.push(Check::new(&format!("MOY IV closure {tag}"), lhs == rhs, format!("{lhs} vs {rhs}")));
    }
    Ok(out)
}

macro_rules! r4 {
    ($($tag:literal),*) => {
        /// Closures of the triple-edge family.
        pub fn reduction4(tag: &str, k: &str) -> &'static str {
            match (tag, k) {
                $(
                    ($tag, "g1") => include_str!(concat!("../../../fixtures/graphs/reduction4-", $tag, "-g1.g")),
                    ($tag, "g2") => include_str!(concat!("../../../fixtures/graphs/reduction4-", $tag, "-g2.g")),
                    ($tag, "g3") => include_str!(concat!("../../../fixtures/graphs/reduction4-", $tag, "-g3.g")),
                    ($tag, "g4") => include_str!(concat!("../../../fixtures/graphs/reduction4-", $tag, "-g4.g")),
                )*
                _ => "",
            }
        }
    };
}

r4!("123", "132", "213", "231", "312", "321");

/// Homology and every page agree across diagrams of the same link.
pub fn reidemeister(n: usize) -> Result<Vec<Check>> {
    let families: [(&str, &[&str]); 3] = [
        ("unknot", &["unknot-0.pd", "unknot-1.pd", "unknot-1-neg.pd", "unknot-2.pd"]),
        ("unlink", &["unlink-2.pd", "unlink-r2.pd"]),
        ("trefoil RIII", &["trefoil-b.braid", "trefoil-c.braid"]),
    ];
    let mut out = Vec::new();
    for p in [Potential::sl(n)?, Potential::gornik(n)?] {
        for (fam, names) in families {
            let mut first: Option<(String, Vec<crate::link::Page>)> = None;
            for name in names {
                let cube = build_complex(&link(name)?, &p)?;
                let h = homology_of(&cube);
                let mut pages = pages_of(&cube, None);
                pages.remove(0);
                let key = format!("{:?}", h.dims);
                match &first {
                    None => first = Some((key, pages)),
                    Some((k0, p0)) => {
                        let same_pages = p0.iter().zip(&pages).all(|(a, b)| a.dims == b.dims) && last_dims(p0) == last_dims(&pages);
                        out.push(Check::new(
                            &format!("{fam}: {} vs {name}, p = {}", names[0], p.to_text()),
                            *k0 == key && same_pages,
                            h.poincare(),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn last_dims(ps: &[crate::link::Page]) -> Option<&Vec<(i32, i32, usize)>> {
    ps.last().map(|p| &p.dims)
}

/// n^m dimensions with independent f_φ, the circle laws, Morse patterns
/// and the support of a birth-then-merge movie.
pub fn gornik(n: usize) -> Result<Vec<Check>> {
    let p = Potential::gornik(n)?;
    let mut out = Vec::new();
    for name in ["unknot-0.pd", "unknot-1.pd", "hopf.pd", "trefoil.pd"] {
        let c = gornik_dimension_check(&build_complex(&link(name)?, &p)?)?;
        out.push(Check::new(&format!("{name} basis"), c.pass(), format!("dim {} expected {} rank {}", c.dimension, c.expected, c.independent_rank)));
    }
    let laws = circle_laws(&p)?;
    out.push(Check::new("merge/split/ι/ε", laws.pass(), format!("λ = {}, μ = {}, split scalar {}", laws.lambda, laws.mu, laws.split_scalar)));
    let u = LinkDiagram::unknot();
    let two = LinkDiagram::unlink(2);
    for (name, d, mv) in [
        ("birth", &u, Move::Birth),
        ("death", &two, Move::Death { segment: 1 }),
        ("merge", &two, Move::Saddle { a: 0, b: 1 }),
    ] {
        out.push(Check::new(&format!("morse {name}"), morse_pattern(d, &mv, &p)?, ""));
    }
    for k in 0..n {
        let s = movie_state_support(&u, &[Move::Birth, Move::Saddle { a: 0, b: 1 }], &p, k)?;
        out.push(Check::new(&format!("movie support k={k}"), s.pass(), format!("{:?}", s.support)));
    }
    Ok(out)
}

fn basis(k: usize) -> Vec<Elem> {
    (0..1u64 << k).map(|m| [(m, Poly::one())].into_iter().collect()).collect()
}

/// χ₁χ₀, χ₀χ₁, ξ₁ξ₀, ξ₀ξ₁ against multiplication by x_k − x_j resp.
/// x_l − x_j, and the chain-map property, for x³, x³ − 3x and x⁴.
pub fn chi_identities() -> Result<Vec<Check>> {
    let (i, j, k, l) = (0, 1, 2, 3);
    let mut out = Vec::new();
    for p in [Potential::sl(2)?, Potential::gornik(2)?, Potential::sl(3)?] {
        for (name, t, s) in [
            ("χ", chi(&p, 0, i, j, k, l)?, &Poly::var(k) - &Poly::var(j)),
            ("ξ", xi(&p, 0, i, j, k, l)?, &Poly::var(l) - &Poly::var(j)),
        ] {
            let or = block(p.n(), &t.oriented, 0);
            let w = block(p.n(), &t.wide, -1);
            let chain = t.to_wide.is_chain_map(&or, &w) && t.to_oriented.is_chain_map(&w, &or);
            let mut ok10 = true;
            let mut ok01 = true;
            for e in basis(2) {
                let want: Elem = e.iter().map(|(m, q)| (*m, &s * q)).collect();
                ok10 &= t.to_wide.then(&t.to_oriented).apply(&e) == want;
                ok01 &= t.to_oriented.then(&t.to_wide).apply(&e) == want;
            }
            let tag = p.to_text();
            out.push(Check::new(&format!("{name}0, {name}1 chain maps, p = {tag}"), chain, ""));
            out.push(Check::new(&format!("{name}1{name}0 = ({s})·id, p = {tag}"), ok10, ""));
            out.push(Check::new(&format!("{name}0{name}1 = ({s})·id, p = {tag}"), ok01, ""));
        }
    }
    Ok(out)
}
