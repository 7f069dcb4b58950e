//! Local chain maps: circle creation and annihilation, the saddle, and the
//! transitions between a pair of arcs and a wide edge.

use std::sync::Arc;

use crate::algebra::derived::{e_coeff, pi_transfer, uv_pair};
use crate::algebra::{Poly, Potential};
use crate::error::Result;
use crate::mf::{KoszulMF, KoszulRow, LocalMap, Relation, Ring};

use super::graph::{arc_row, circle_row, wide_rows};

/// ι: C(Γ)⟨1⟩ → C(Γ ⊔ ○), appending a one-marking circle on `var` as the
/// last row. The creation class is the class of 1.
pub fn iota(src: &KoszulMF, p: &Potential, var: usize) -> (KoszulMF, LocalMap) {
    let mut tgt = src.clone();
    tgt.rows.push(circle_row(p, var));
    tgt.shift += 0;
    let start = src.rows.len();
    let f = Arc::new(|mask: u64, q: &Poly| if mask == 0 { vec![(1u64, q.clone())] } else { vec![] });
    (tgt, LocalMap { start, src_len: 0, tgt_len: 1, odd: true, f })
}

/// ε: C(Γ ⊔ ○) → C(Γ)⟨1⟩ for a one-marking circle in the last row: the
/// coefficient of x^{n−1} after reducing modulo p′(x).
pub fn epsilon(src: &KoszulMF, p: &Potential, var: usize) -> (KoszulMF, LocalMap) {
    let mut tgt = src.clone();
    tgt.rows.pop();
    let start = tgt.rows.len();
    let n = p.n();
    let dp = p.derivative_in(var);
    let lead = dp.coeffs_in(var)[n].constant_term().inv();
    let lower: Vec<Poly> = dp.coeffs_in(var)[..n].iter().map(|c| -&c.scale(&lead)).collect();
    let ring = Ring::new().with_rel(Relation { var, deg: n as u8, lower });
    let f = Arc::new(move |mask: u64, q: &Poly| {
        if mask == 0 {
            return vec![];
        }
        let r = ring.reduce(q);
        let cs = r.coeffs_in(var);
        match cs.get(n - 1) {
            Some(c) if !c.is_zero() => vec![(0u64, c.clone())],
            _ => vec![],
        }
    });
    (tgt, LocalMap { start, src_len: 1, tgt_len: 0, odd: true, f })
}

/// Rows for the two arcs 4→1 and 2→3 at markings m = [m1, m2, m3, m4].
pub fn saddle_source_rows(p: &Potential, m: [usize; 4]) -> [KoszulRow; 2] {
    [arc_row(p, m[0], m[3]), arc_row(p, m[2], m[1])]
}

/// Rows for the two arcs 2→1 and 4→3.
pub fn saddle_target_rows(p: &Potential, m: [usize; 4]) -> [KoszulRow; 2] {
    [arc_row(p, m[0], m[1]), arc_row(p, m[2], m[3])]
}

/// The saddle map from arcs (4→1, 2→3) to arcs (2→1, 4→3) on the two rows
/// starting at `start`. Odd, of degree n−1.
pub fn saddle(p: &Potential, start: usize, m: [usize; 4]) -> LocalMap {
    let e = |a: usize, b: usize, c: usize| e_coeff(p, m[a - 1], m[b - 1], m[c - 1]);
    let one = Poly::one();
    let m0 = vec![vec![&e(1, 2, 3) + &e(1, 2, 4), one.clone()], vec![-&(&e(1, 3, 4) + &e(2, 3, 4)), one.clone()]];
    let m1 = vec![vec![-&one, one.clone()], vec![-&(&e(1, 2, 3) + &e(2, 3, 4)), -&(&e(1, 3, 4) + &e(1, 2, 4))]];
    LocalMap::from_matrices(start, 2, 2, true, m0, m1)
}

/// Arc pair ↔ wide edge at a crossing-like site with outs i, j and ins k, l.
#[derive(Clone, Debug)]
pub struct Transition {
    /// Arcs k→i and l→j.
    pub oriented: [KoszulRow; 2],
    /// The wide edge, carrying an extra shift of −1.
    pub wide: [KoszulRow; 2],
    pub to_wide: LocalMap,
    pub to_oriented: LocalMap,
}

fn a1(p: &Potential, i: usize, j: usize, k: usize, l: usize) -> Result<Poly> {
    let (u, v) = uv_pair(p, i, j, k, l);
    let xi = Poly::var(i);
    let num = &(&u + &(&xi * &v)) - &pi_transfer(p, j, l);
    let q = num.divide_exact(&(&xi - &Poly::var(k)))?;
    Ok(&q - &v)
}

pub fn transition(p: &Potential, start: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Transition> {
    let (xj, xk) = (Poly::var(j), Poly::var(k));
    let a = a1(p, i, j, k, l)?;
    let one = Poly::one();
    let u0 = vec![vec![&xk - &xj, Poly::zero()], vec![a.clone(), one.clone()]];
    let u1 = vec![vec![xk.clone(), -&xj], vec![-&one, one.clone()]];
    let v0 = vec![vec![one.clone(), Poly::zero()], vec![-&a, &xk - &xj]];
    let v1 = vec![vec![one.clone(), xj.clone()], vec![one.clone(), xk.clone()]];
    Ok(Transition {
        oriented: [arc_row(p, i, k), arc_row(p, j, l)],
        wide: wide_rows(p, i, j, k, l),
        to_wide: LocalMap::from_matrices(start, 2, 2, false, u0, u1),
        to_oriented: LocalMap::from_matrices(start, 2, 2, false, v0, v1),
    })
}

/// The χ maps of a crossing: arcs k→i, l→j against the wide edge.
pub fn chi(p: &Potential, start: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Transition> {
    transition(p, start, i, j, k, l)
}

/// The ξ maps of a virtual crossing: arcs l→i, k→j against the wide edge.
pub fn xi(p: &Potential, start: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Transition> {
    transition(p, start, i, j, l, k)
}

/// Two-row Koszul factorization from a block of rows.
pub fn block(n: usize, rows: &[KoszulRow], shift: i32) -> KoszulMF {
    KoszulMF { n, rows: rows.to_vec(), shift, angle: 0 }
}
