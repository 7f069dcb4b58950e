//! Polynomial rings modulo a chain of eliminations: linear substitutions
//! x_t := L and monic relations x_t^d = Σ c_e x_t^e. Relations are kept in a
//! triangular shape so that reducing latest-first gives a normal form.

use crate::algebra::{Coeff, Mono, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub var: usize,
    pub deg: u8,
    /// x^deg ≡ Σ lower[e]·x^e; every lower[e] is free of `var`.
    pub lower: Vec<Poly>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ring {
    subs: Vec<(usize, Poly)>,
    rels: Vec<Relation>,
}

impl Ring {
    pub fn new() -> Ring {
        Ring::default()
    }

    pub fn subs(&self) -> &[(usize, Poly)] {
        &self.subs
    }

    pub fn rels(&self) -> &[Relation] {
        &self.rels
    }

    pub fn is_trivial(&self) -> bool {
        self.subs.is_empty() && self.rels.is_empty()
    }

    pub fn is_substituted(&self, v: usize) -> bool {
        self.subs.iter().any(|(s, _)| *s == v)
    }

    pub fn relation_of(&self, v: usize) -> Option<&Relation> {
        self.rels.iter().find(|r| r.var == v)
    }

    /// A variable that neither carries nor appears in any relation and has
    /// not been substituted. Eliminating such a variable keeps the shape.
    pub fn is_free(&self, v: usize) -> bool {
        !self.is_substituted(v) && self.rels.iter().all(|r| r.var != v && r.lower.iter().all(|c| !c.uses_var(v)))
    }

    /// Exponent cap for normal monomials in `v` (None = unbounded).
    pub fn cap(&self, v: usize) -> Option<u8> {
        self.relation_of(v).map(|r| r.deg)
    }

    pub fn is_normal(&self, m: &Mono) -> bool {
        self.subs.iter().all(|(v, _)| m.exp(*v) == 0) && self.rels.iter().all(|r| m.exp(r.var) < r.deg)
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut q = if self.subs.is_empty() { p.clone() } else { p.substitute(&self.subs) };
        for r in self.rels.iter().rev() {
            q = reduce_by(&q, r);
        }
        q
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    /// Adds x_v := l. `l` must already be reduced and free of `v`.
    pub fn with_sub(&self, v: usize, l: &Poly) -> Ring {
        let mut r = self.clone();
        for (_, old) in r.subs.iter_mut() {
            *old = self.reduce_rels_only(&old.substitute_var(v, l));
        }
        r.subs.push((v, l.clone()));
        r
    }

    fn reduce_rels_only(&self, p: &Poly) -> Poly {
        let mut q = p.clone();
        for r in self.rels.iter().rev() {
            q = reduce_by(&q, r);
        }
        q
    }

    pub fn with_rel(&self, rel: Relation) -> Ring {
        let mut r = self.clone();
        r.rels.push(rel);
        r
    }

    /// Exact quotient of `y` by the monic polynomial in `v` whose coefficient
    /// list (low → high, top = 1) is `monic`. `v` must be free in this ring.
    pub fn divide_monic(&self, y: &Poly, v: usize, monic: &[Poly]) -> Result<Poly> {
        let d = (monic.len() - 1) as u8;
        debug_assert!(monic[d as usize] == Poly::one());
        let mut rem = y.clone();
        let mut quot = Poly::zero();
        loop {
            let top = rem.deg_in(v);
            if rem.is_zero() || top < d {
                break;
            }
            let lead: Vec<(Mono, Coeff)> =
                rem.terms().iter().filter(|(m, _)| m.exp(v) == top).map(|(m, c)| (m.with_exp(v, top - d), c.clone())).collect();
            let qt = Poly::from_terms(lead);
            let mut sub = Poly::zero();
            for (e, c) in monic.iter().enumerate() {
                if !c.is_zero() {
                    sub = &sub + &(c * &qt).mul_mono(&Mono::var_pow(v, e as u8));
                }
            }
            rem = self.reduce(&(&rem - &sub));
            quot = &quot + &qt;
        }
        if !rem.is_zero() {
            return Err(Error::NotDivisible(format!("remainder {rem} in exclusion lift")));
        }
        Ok(self.reduce(&quot))
    }
}

fn reduce_by(p: &Poly, r: &Relation) -> Poly {
    let mut q = p.clone();
    loop {
        if q.deg_in(r.var) < r.deg {
            return q;
        }
        let mut low: Vec<(Mono, Coeff)> = Vec::new();
        let mut high: Vec<(Mono, Coeff)> = Vec::new();
        for (m, c) in q.terms() {
            if m.exp(r.var) >= r.deg {
                high.push((m.with_exp(r.var, m.exp(r.var) - r.deg), c.clone()));
            } else {
                low.push((*m, c.clone()));
            }
        }
        let h = Poly::from_terms(high);
        let mut acc = Poly::from_terms(low);
        for (e, c) in r.lower.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&h * c).mul_mono(&Mono::var_pow(r.var, e as u8));
            }
        }
        q = acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::x;

    #[test]
    fn tower_normal_form_and_division() {
        // x2^2 = (x3 + x4) x2 - x3 x4, i.e. (x2 - x3)(x2 - x4) = 0.
        let rel = Relation { var: 1, deg: 2, lower: vec![-(&x(3) * &x(4)), &x(3) + &x(4)] };
        let ring = Ring::new().with_rel(rel);
        let p = x(2).pow(3);
        let r = ring.reduce(&p);
        assert!(r.deg_in(1) < 2);
        let monic = vec![&x(3) * &x(4), -(&x(3) + &x(4)), Poly::one()];
        let f = &x(2) + &x(1);
        let prod = &(&(&x(2) - &x(3)) * &(&x(2) - &x(4))) * &f;
        let q = Ring::new().divide_monic(&prod, 1, &monic).unwrap();
        assert_eq!(q, f);
    }
}
