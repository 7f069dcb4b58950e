//! Polynomials derived from a potential: π, g, u, v, e, h, the triple-edge
//! rows and Gornik's f_k.

use super::coeff::Coeff;
use super::poly::{Mono, Poly};
use super::potential::Potential;
use crate::error::{Error, Result};

/// h_m(a, b) = Σ_{c+d=m} a^c b^d; zero for m < 0.
fn complete2(a: &Poly, b: &Poly, m: i32) -> Poly {
    if m < 0 {
        return Poly::zero();
    }
    let mut acc = Poly::zero();
    for c in 0..=m as u32 {
        acc = &acc + &(&a.pow(c) * &b.pow(m as u32 - c));
    }
    acc
}

/// Complete homogeneous symmetric polynomial of degree m in the given variables.
fn complete_vars(vars: &[usize], m: i32) -> Poly {
    if m < 0 {
        return Poly::zero();
    }
    if vars.is_empty() {
        return if m == 0 { Poly::one() } else { Poly::zero() };
    }
    let (v, rest) = (vars[0], &vars[1..]);
    let mut acc = Poly::zero();
    for e in 0..=m {
        let tail = complete_vars(rest, m - e);
        acc = &acc + &tail.mul_mono(&Mono::var_pow(v, e as u8));
    }
    acc
}

pub fn divide_exact(f: &Poly, g: &Poly) -> Result<Poly> {
    f.divide_exact(g)
}

/// π_ij = (p(x_i) − p(x_j))/(x_i − x_j), and π_ii = p′(x_i).
pub fn pi_transfer(p: &Potential, i: usize, j: usize) -> Poly {
    if i == j {
        return p.derivative_in(i);
    }
    let mut acc = Poly::zero();
    for (e, c) in p.terms() {
        if e == 0 {
            continue;
        }
        acc = &acc + &complete_vars(&[i, j], e as i32 - 1).scale(&Coeff::Rat(c));
    }
    acc
}

/// Power sums x^k + y^k as polynomials in s = x+y (var 0), t = xy (var 1).
fn power_sums2(k: usize) -> Vec<Poly> {
    let s = Poly::var(0);
    let t = Poly::var(1);
    let mut out = vec![Poly::int(2), s.clone()];
    for m in 2..=k {
        let next = &(&s * &out[m - 1]) - &(&t * &out[m - 2]);
        out.push(next);
    }
    out.truncate(k + 1);
    out
}

/// g(s, t) with g(x+y, xy) = p(x) + p(y); s is var 0 and t is var 1.
pub fn sym2_decompose(p: &Potential) -> Poly {
    let ps = power_sums2(p.n() + 1);
    let mut g = Poly::zero();
    for (e, c) in p.terms() {
        g = &g + &ps[e as usize].scale(&Coeff::Rat(c));
    }
    g
}

/// The wide-edge pair (u_ijkl, v_ijkl); i, j leave and k, l enter.
pub fn uv_pair(p: &Potential, i: usize, j: usize, k: usize, l: usize) -> (Poly, Poly) {
    let g = sym2_decompose(p);
    let (xi, xj, xk, xl) = (Poly::var(i), Poly::var(j), Poly::var(k), Poly::var(l));
    let s1 = &xi + &xj;
    let s2 = &xk + &xl;
    let t1 = &xi * &xj;
    let t2 = &xk * &xl;
    let mut u = Poly::zero();
    let mut v = Poly::zero();
    for (m, c) in g.terms() {
        let (a, b) = (m.exp(0) as i32, m.exp(1) as i32);
        let c = Poly::constant(c.clone());
        u = &u + &(&c * &(&t1.pow(b as u32) * &complete2(&s1, &s2, a - 1)));
        v = &v + &(&c * &(&s2.pow(a as u32) * &complete2(&t1, &t2, b - 1)));
    }
    (u, v)
}

/// e_ijk, half the second divided difference of p.
pub fn e_coeff(p: &Potential, i: usize, j: usize, k: usize) -> Poly {
    let mut acc = Poly::zero();
    for (e, c) in p.terms() {
        if e < 2 {
            continue;
        }
        let h = complete_vars(&[i, j, k], e as i32 - 2);
        acc = &acc + &h.scale(&Coeff::Rat(c));
    }
    acc.scale(&Coeff::rat(1, 2))
}

/// Power sums in e1, e2, e3 (vars 0, 1, 2).
fn power_sums3(k: usize) -> Vec<Poly> {
    let (e1, e2, e3) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let mut out = vec![Poly::int(3), e1.clone()];
    if k >= 2 {
        out.push(&(&e1 * &out[1]) - &e2.scale(&Coeff::int(2)));
    }
    for m in 3..=k {
        let next = &(&(&e1 * &out[m - 1]) - &(&e2 * &out[m - 2])) + &(&e3 * &out[m - 3]);
        out.push(next);
    }
    out.truncate(k + 1);
    out
}

/// h(e1, e2, e3) with h(x+y+z, xy+yz+zx, xyz) = p(x) + p(y) + p(z).
pub fn sym3_decompose(p: &Potential) -> Poly {
    let ps = power_sums3(p.n() + 1);
    let mut h = Poly::zero();
    for (e, c) in p.terms() {
        h = &h + &ps[e as usize].scale(&Coeff::Rat(c));
    }
    h
}

fn elementary3(v: [usize; 3]) -> [Poly; 3] {
    let (a, b, c) = (Poly::var(v[0]), Poly::var(v[1]), Poly::var(v[2]));
    [&(&a + &b) + &c, &(&(&a * &b) + &(&b * &c)) + &(&c * &a), &(&a * &b) * &c]
}

/// Triple-edge rows ([a1, a2, a3], [b1, b2, b3]) for outs x4, x5, x6 and ins x1, x2, x3.
pub fn sym3_rows(p: &Potential, outs: [usize; 3], ins: [usize; 3]) -> ([Poly; 3], [Poly; 3]) {
    let h = sym3_decompose(p);
    let s_out = elementary3(outs);
    let s_in = elementary3(ins);
    let mut a = [Poly::zero(), Poly::zero(), Poly::zero()];
    for (m, c) in h.terms() {
        let e = [m.exp(0) as i32, m.exp(1) as i32, m.exp(2) as i32];
        let c = Poly::constant(c.clone());
        // slot 1 moves from s1 to s4 with s2, s3 fixed, then slot 2, then slot 3
        let t1 = &(&complete2(&s_out[0], &s_in[0], e[0] - 1) * &s_out[1].pow(e[1] as u32)) * &s_out[2].pow(e[2] as u32);
        let t2 = &(&s_in[0].pow(e[0] as u32) * &complete2(&s_out[1], &s_in[1], e[1] - 1)) * &s_out[2].pow(e[2] as u32);
        let t3 = &(&s_in[0].pow(e[0] as u32) * &s_in[1].pow(e[1] as u32)) * &complete2(&s_out[2], &s_in[2], e[2] - 1);
        a[0] = &a[0] + &(&c * &t1);
        a[1] = &a[1] + &(&c * &t2);
        a[2] = &a[2] + &(&c * &t3);
    }
    let b = [&s_out[0] - &s_in[0], &s_out[1] - &s_in[1], &s_out[2] - &s_in[2]];
    (a, b)
}

/// f_k(x) = Σ_l x^l ζ_n^{−kl} in variable `var`, coefficients in ℚ(ζ_n).
pub fn gornik_f_in(n: usize, k: usize, var: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::InvalidPotential(format!("n = {n} < 2")));
    }
    if k >= n {
        return Err(Error::LabelOutOfRange { label: k, n });
    }
    Ok(Poly::from_terms(
        (0..n).map(|l| (Mono::var_pow(var, l as u8), Coeff::zeta(n as u32, -((k * l) as i64)))),
    ))
}

pub fn gornik_f(n: usize, k: usize) -> Result<Poly> {
    gornik_f_in(n, k, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::x;

    #[test]
    fn pi_of_cubic() {
        let p = Potential::sl(2).unwrap();
        assert_eq!(pi_transfer(&p, 0, 1).to_text(), "x1^2 + x1*x2 + x2^2");
        assert_eq!(pi_transfer(&p, 0, 0).to_text(), "3*x1^2");
    }

    #[test]
    fn uv_cubic_matches_closed_form() {
        let p = Potential::sl(2).unwrap();
        let (u, v) = uv_pair(&p, 0, 1, 2, 3);
        let s = &x(1) + &x(2);
        let s2 = &x(3) + &x(4);
        let expect_u = &(&(&(&s * &s) + &(&s * &s2)) + &(&s2 * &s2)) - &(&x(1) * &x(2)).scale(&Coeff::int(3));
        assert_eq!(u, expect_u);
        assert_eq!(v, s2.scale(&Coeff::int(-3)));
    }

    #[test]
    fn h_for_cubic() {
        let p = Potential::sl(2).unwrap();
        assert_eq!(sym3_decompose(&p).to_text(), "x1^3 - 3*x1*x2 + 3*x3");
    }
}
