//! Seeded random inputs for the property tests.

use krh_core::algebra::{Coeff, Mono, Poly, Potential};
use krh_core::linalg::{dense_inverse, dense_mul, SVec};
use krh_core::link::{ComplexGen, FilteredComplex, Table};
use krh_core::mf::KoszulRow;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(-3i64..=3);
    if v == 0 {
        1
    } else {
        v
    }
}

/// Up to `terms` monomials of degree ≤ `deg` in `nvars` variables.
pub fn poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Poly {
    let k = rng.gen_range(1..=terms);
    Poly::from_terms((0..k).map(|_| {
        let mut m = Mono::ONE;
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            m = m.mul(&Mono::var(rng.gen_range(0..nvars)));
        }
        (m, Coeff::int(small(rng)))
    }))
}

/// Rows with deg a + deg b ≤ 2n + 2 and nonzero a (x has degree 2).
pub fn koszul_rows(rng: &mut ChaCha8Rng, n: usize, count: usize, nvars: usize) -> Vec<KoszulRow> {
    (0..count)
        .map(|_| {
            let da = rng.gen_range(1..=n as u32);
            let db = rng.gen_range(0..=(n as u32 + 1 - da));
            let mut a = poly(rng, nvars, da, 3);
            while a.is_zero() {
                a = poly(rng, nvars, da, 3);
            }
            let b = poly(rng, nvars, db, 3);
            KoszulRow::new(a, b).unwrap()
        })
        .collect()
}

pub fn potential(rng: &mut ChaCha8Rng, n: usize) -> Potential {
    let lower: Vec<i64> = (0..=n).map(|_| rng.gen_range(-3i64..=3)).collect();
    Potential::from_ints(n, &lower).unwrap()
}

/// A filtered complex conjugated from a split form: isolated generators and
/// pairs x → y with level(y) ≤ level(x). Returns it with the E_∞ table and,
/// for every page r, the expected total.
pub struct SplitComplex {
    pub complex: FilteredComplex,
    pub infinity: Table,
    pub gaps: Vec<i32>,
    pub isolated: usize,
}

impl SplitComplex {
    /// Total of E_r: a pair with level gap g lives through E_g.
    pub fn page_total(&self, r: usize) -> usize {
        self.isolated + 2 * self.gaps.iter().filter(|&&g| g as usize >= r).count()
    }
}

pub fn split_complex(rng: &mut ChaCha8Rng) -> SplitComplex {
    let mut gens: Vec<ComplexGen> = Vec::new();
    let mut d: Vec<SVec> = Vec::new();
    let mut infinity = Table::new();
    let mut gaps = Vec::new();
    let mut isolated = 0;
    let pieces = rng.gen_range(1..=6);
    for _ in 0..pieces {
        let deg = rng.gen_range(-1..=1);
        let lvl = rng.gen_range(-3..=3);
        let tag = (0, gens.len());
        if rng.gen_bool(0.4) {
            gens.push(ComplexGen { degree: deg, level: lvl, tag });
            d.push(vec![]);
            *infinity.entry((deg, lvl)).or_insert(0) += 1;
            isolated += 1;
        } else {
            let gap = rng.gen_range(0..=3);
            let x = gens.len();
            gens.push(ComplexGen { degree: deg, level: lvl, tag });
            gens.push(ComplexGen { degree: deg + 1, level: lvl - gap, tag: (0, x + 1) });
            d.push(vec![(x + 1, Coeff::int(small(rng)))]);
            d.push(vec![]);
            gaps.push(gap);
        }
    }
    // P = 1 + N with N strictly lowering the level inside each degree
    let len = gens.len();
    let mut p = vec![vec![Coeff::zero(); len]; len];
    for (g, row) in p.iter_mut().enumerate() {
        row[g] = Coeff::one();
    }
    for g in 0..len {
        for h in 0..len {
            if gens[h].degree == gens[g].degree && gens[h].level < gens[g].level && rng.gen_bool(0.5) {
                p[h][g] = Coeff::int(small(rng));
            }
        }
    }
    let pinv = dense_inverse(&p).expect("unipotent");
    let mut dm = vec![vec![Coeff::zero(); len]; len];
    for (g, col) in d.iter().enumerate() {
        for (t, c) in col {
            dm[*t][g] = c.clone();
        }
    }
    let conj = dense_mul(&dense_mul(&p, &dm), &pinv);
    let cols: Vec<SVec> = (0..len)
        .map(|g| (0..len).filter(|&t| !conj[t][g].is_zero()).map(|t| (t, conj[t][g].clone())).collect())
        .collect();
    SplitComplex { complex: FilteredComplex::new(gens, cols), infinity: infinity.into_iter().filter(|e| e.1 > 0).collect(), gaps, isolated }
}
