//! Randomized checks shared by the property tests and the acceptance suite.

use krh_core::algebra::{Coeff, Poly, Potential};
use krh_core::mf::{cohomology, CohomOptions, FreeModel, KoszulCohomology, KoszulMF, MatrixFactorization};
use krh_core::moy::arc_row;
use rand::Rng;

use super::random::{koszul_rows, poly, potential, rng, small};

fn d2_holds(m: &MatrixFactorization) -> bool {
    m.check_d2()
}

/// Every constructor and transformation on one random Koszul input.
pub fn d2_after_everything(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=3);
    let nvars = r.gen_range(1..=3);
    let count = r.gen_range(1..=3);
    let rows = koszul_rows(&mut r, n, count, nvars);
    let km = KoszulMF::new(n, rows).map_err(|e| e.to_string())?;
    let m = km.explicit();
    let other = KoszulMF::new(n, koszul_rows(&mut r, n, 1, nvars)).unwrap();
    let c = Coeff::int(small(&mut r));
    let mut all: Vec<(&str, MatrixFactorization)> = vec![
        ("koszul", m.clone()),
        ("tensor", m.tensor(&other.explicit())),
        ("row tensor", km.tensor(&other).explicit()),
        ("angle", m.shift_angle()),
        ("brace", m.shift_brace(r.gen_range(-4..=4))),
        ("dual", m.dual()),
        ("minus", m.minus()),
        ("bullet", m.bullet()),
        ("row bullet", km.bullet().explicit()),
        ("scale", m.scale_differential(&c).unwrap().0),
        ("scale row", km.scale_row(0, &c).unwrap().explicit()),
        ("hom", MatrixFactorization::hom_mf(&m, &m).unwrap()),
        ("row hom", KoszulMF::hom(&km, &km).unwrap().explicit()),
    ];
    if km.rows.len() == 2 {
        let (a1, a2) = (km.rows[0].deg_a, km.rows[1].deg_a);
        let tb = a1 + a2 - 2 * n as i32 - 2;
        if tb >= 0 {
            let k = poly(&mut r, nvars, (tb / 2) as u32, 2);
            let (t, h0, h1) = km.twist(&k).unwrap();
            all.push(("twist", t.explicit()));
            let (g, w) = km.explicit_twist(&h0, &h1).unwrap();
            if !w.is_chain_map(&g, &m) {
                return Err(format!("seed {seed}: twist witness is not a chain map"));
            }
            all.push(("general twist", g));
        }
        let rb = a1 - a2;
        if rb >= 0 {
            let c = poly(&mut r, nvars, (rb / 2) as u32, 2);
            let (t, h0, h1) = km.row_operation(&c).unwrap();
            all.push(("row operation", t.explicit()));
            all.push(("row operation twist", km.explicit_twist(&h0, &h1).unwrap().0));
        }
    }
    for (name, x) in &all {
        if !d2_holds(x) {
            return Err(format!("seed {seed}: d² ≠ w after {name}"));
        }
    }
    Ok(())
}

/// (graded per parity, filtered per parity, sorted class levels).
pub fn fingerprint(kc: &KoszulCohomology) -> String {
    let mut lv: Vec<(u8, i32)> = kc.coh.classes.iter().map(|c| (c.parity, c.level)).collect();
    lv.sort();
    format!("{:?} {:?} {:?}", kc.coh.graded, kc.coh.filtered, lv)
}

pub fn explicit_fingerprint(m: &MatrixFactorization) -> String {
    let c = cohomology(&FreeModel::from_mf(m), &CohomOptions::default()).unwrap();
    let mut lv: Vec<(u8, i32)> = c.classes.iter().map(|c| (c.parity, c.level)).collect();
    lv.sort();
    format!("{:?} {:?} {:?}", c.graded, c.filtered, lv)
}

/// Twist, row operation, scaling and variable exclusion on a circle with
/// two markings and a random potential.
pub fn reductions_agree(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let n = r.gen_range(2..=3);
    let p: Potential = potential(&mut r, n);
    let (i, j) = (r.gen_range(0..3), r.gen_range(3..6));
    let base = KoszulMF::new(n, vec![arc_row(&p, i, j), arc_row(&p, j, i)]).unwrap();
    let opts = CohomOptions::default();
    let want = fingerprint(&KoszulCohomology::compute(&base, &opts).map_err(|e| e.to_string())?);
    let check = |name: &str, got: String| if got == want { Ok(()) } else { Err(format!("seed {seed}: {name} changed cohomology: {got} vs {want}")) };
    // a two-variable k of degree ≤ 2n − 2
    let k = Poly::from_terms(
        (0..3).map(|_| {
            let e = r.gen_range(0..n as u8);
            let f = r.gen_range(0..=(n as u8 - 1 - e));
            (krh_core::algebra::Mono::var_pow(i, e).mul(&krh_core::algebra::Mono::var_pow(j, f)), Coeff::int(small(&mut r)))
        }),
    );
    let (tw, h0, h1) = base.twist(&k).map_err(|e| e.to_string())?;
    check("twist", fingerprint(&KoszulCohomology::compute(&tw, &opts).unwrap()))?;
    check("explicit twist", explicit_fingerprint(&base.explicit_twist(&h0, &h1).unwrap().0))?;
    let c = Poly::int(small(&mut r));
    let (ro, h0, h1) = base.row_operation(&c).map_err(|e| e.to_string())?;
    check("row operation", fingerprint(&KoszulCohomology::compute(&ro, &opts).unwrap()))?;
    check("explicit row operation", explicit_fingerprint(&base.explicit_twist(&h0, &h1).unwrap().0))?;
    let s = Coeff::rat(small(&mut r), r.gen_range(1..=4));
    check("scale row", fingerprint(&KoszulCohomology::compute(&base.scale_row(1, &s).unwrap(), &opts).unwrap()))?;
    check("scale differential", explicit_fingerprint(&base.explicit().scale_differential(&s).unwrap().0))?;
    check("exclusion", fingerprint(&KoszulCohomology::compute(&base.exclude_variable(0).unwrap(), &opts).unwrap()))?;
    Ok(())
}
