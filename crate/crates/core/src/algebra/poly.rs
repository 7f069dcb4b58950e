use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::rational::Q;
use crate::error::{Error, Result};

/// Maximum number of marking variables in one ring.
pub const MAXV: usize = 32;

/// Exponent vector. Variable `i` prints as `x{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u8; MAXV]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAXV]);

    pub fn var(i: usize) -> Mono {
        Mono::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Mono {
        assert!(i < MAXV, "variable index {i} exceeds {MAXV}");
        let mut m = Mono::ONE;
        m.0[i] = e;
        m
    }

    /// Total exponent; the quantum degree is twice this.
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] = self.0[i].checked_add(o.0[i]).expect("exponent overflow");
        }
        r
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..MAXV).all(|i| self.0[i] <= o.0[i])
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAXV {
            r.0[i] -= o.0[i];
        }
        r
    }

    pub fn with_exp(&self, i: usize, e: u8) -> Mono {
        let mut r = *self;
        r.0[i] = e;
        r
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAXV).filter(move |&i| self.0[i] > 0)
    }
}

impl Ord for Mono {
    /// Graded lexicographic order with x1 > x2 > ….
    fn cmp(&self, o: &Mono) -> Ordering {
        self.total().cmp(&o.total()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mono_str(self))
    }
}

fn mono_str(m: &Mono) -> String {
    let parts: Vec<String> = m
        .support()
        .map(|i| if m.0[i] == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, m.0[i]) })
        .collect();
    parts.join("*")
}

/// Sparse polynomial with terms sorted in decreasing graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Coeff)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn int(v: i64) -> Poly {
        Poly::constant(Coeff::int(v))
    }

    pub fn var(i: usize) -> Poly {
        Poly { terms: vec![(Mono::var(i), Coeff::one())] }
    }

    pub fn monomial(m: Mono, c: Coeff) -> Poly {
        Poly::constant(c).mul_mono(&m)
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Coeff)>>(it: I) -> Poly {
        let mut acc: HashMap<Mono, Coeff> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Mono, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.total() == 0)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Mono::ONE)
    }

    pub fn coeff(&self, m: &Mono) -> Coeff {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    /// Quantum degree (deg x = 2) of the top term; `None` stands for −∞.
    pub fn degree(&self) -> Option<i32> {
        self.terms.first().map(|(m, _)| 2 * m.total() as i32)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.total() == m0.total()),
        }
    }

    /// Homogeneous component of quantum degree `d`.
    pub fn component(&self, d: i32) -> Poly {
        if d < 0 || d % 2 != 0 {
            return Poly::zero();
        }
        let t = (d / 2) as u32;
        Poly { terms: self.terms.iter().filter(|(m, _)| m.total() == t).cloned().collect() }
    }

    pub fn top_component(&self) -> Poly {
        match self.degree() {
            None => Poly::zero(),
            Some(d) => self.component(d),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Coeff)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_mono(&self, mo: &Mono) -> Poly {
        // Multiplying by a monomial preserves graded-lex order.
        Poly { terms: self.terms.iter().map(|(m, a)| (m.mul(mo), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest variable index used, plus one.
    pub fn nvars(&self) -> usize {
        self.terms.iter().flat_map(|(m, _)| m.support()).max().map(|i| i + 1).unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v] > 0)
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut seen = [false; MAXV];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..MAXV).filter(|&i| seen[i]).collect()
    }

    pub fn deg_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    pub fn derivative(&self, v: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.0[v] > 0).map(|(m, c)| {
            let e = m.0[v];
            (m.with_exp(v, e - 1), c * &Coeff::int(e as i64))
        }))
    }

    /// Substitutes polynomials for variables simultaneously.
    pub fn substitute(&self, subs: &[(usize, Poly)]) -> Poly {
        if subs.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(usize, u8), Poly> = HashMap::new();
        let mut out: Vec<(Mono, Coeff)> = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::constant(c.clone());
            for (v, p) in subs {
                let e = m.0[*v];
                if e == 0 {
                    continue;
                }
                rest.0[*v] = 0;
                let pw = powers.entry((*v, e)).or_insert_with(|| p.pow(e as u32)).clone();
                factor = &factor * &pw;
            }
            for (fm, fc) in factor.terms {
                out.push((fm.mul(&rest), fc));
            }
        }
        Poly::from_terms(out)
    }

    pub fn substitute_var(&self, v: usize, p: &Poly) -> Poly {
        self.substitute(&[(v, p.clone())])
    }

    /// Renames variables through `map[old] = new`.
    pub fn rename(&self, map: &[usize]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut r = Mono::ONE;
            for i in m.support() {
                let j = map[i];
                r.0[j] = r.0[j].checked_add(m.0[i]).expect("exponent overflow");
            }
            (r, c.clone())
        }))
    }

    pub fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// View as a univariate polynomial in `v`: coefficient list low→high.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.deg_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Coeff)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Exact quotient f / g.
    pub fn divide_exact(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(g)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!("{self} by {g}")));
        }
        Ok(q)
    }

    /// Multivariate division by the graded-lex leading term of g.
    pub fn div_rem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let (lm, lc) = g.leading().ok_or(Error::DivisionByZero)?.clone();
        let lci = lc.inv();
        let mut rem: Vec<(Mono, Coeff)> = Vec::new();
        let mut q: Vec<(Mono, Coeff)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = &c * &lci;
                p = &p - &g.mul_mono(&qm).scale(&qc);
                q.push((qm, qc));
            } else {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
        Ok((Poly::from_terms(q), Poly::from_terms(rem)))
    }

    /// Evaluates every variable to a coefficient.
    pub fn eval(&self, vals: &[Coeff]) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t = &t * &vals[i].pow(m.0[i] as u32);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Canonical text, e.g. `3*x1^2*x2 - x3 + 1/2`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, a) = match c {
                Coeff::Rat(q) if q.signum() < 0 => (true, Coeff::Rat(-q)),
                _ => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let ms = mono_str(m);
            if ms.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&ms);
            } else {
                s.push_str(&format!("{a}*{ms}"));
            }
        }
        s
    }

    /// Parses the canonical text format. Cyclotomic coefficients are
    /// written as parenthesised residues `(a + b*z + …)` in ℚ(ζ_m).
    pub fn parse(text: &str, m: u32) -> Result<Poly> {
        let err = |pos: usize, msg: &str| Error::ParseError { pos, msg: msg.to_string() };
        let bytes: Vec<char> = text.chars().collect();
        let mut terms: Vec<(Mono, Coeff)> = Vec::new();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_whitespace() {
                *i += 1;
            }
        };
        skip_ws(&mut i);
        if i >= bytes.len() {
            return Err(err(0, "empty polynomial"));
        }
        let mut sign = 1i64;
        if bytes[i] == '-' {
            sign = -1;
            i += 1;
        }
        loop {
            skip_ws(&mut i);
            let start = i;
            let mut coeff = Coeff::one();
            let mut mono = Mono::ONE;
            let mut have_factor = false;
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    break;
                }
                let ch = bytes[i];
                if ch == '(' {
                    let close = (i..bytes.len()).find(|&k| bytes[k] == ')').ok_or_else(|| err(i, "unclosed '('"))?;
                    let s: String = bytes[i..=close].iter().collect();
                    let c = Coeff::parse(&s, m).ok_or_else(|| err(i, "bad cyclotomic coefficient"))?;
                    coeff = &coeff * &c;
                    i = close + 1;
                } else if ch.is_ascii_digit() {
                    let st = i;
                    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
                        i += 1;
                    }
                    let s: String = bytes[st..i].iter().collect();
                    let q = Q::parse(&s).ok_or_else(|| err(st, "bad number"))?;
                    coeff = &coeff * &Coeff::Rat(q);
                } else if ch == 'x' {
                    i += 1;
                    let st = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = bytes[st..i].iter().collect();
                    let v: usize = s.parse().map_err(|_| err(st, "bad variable index"))?;
                    if v == 0 || v > MAXV {
                        return Err(err(st, "variable index out of range"));
                    }
                    let mut e = 1u8;
                    if i < bytes.len() && bytes[i] == '^' {
                        i += 1;
                        let st2 = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        let s: String = bytes[st2..i].iter().collect();
                        e = s.parse().map_err(|_| err(st2, "bad exponent"))?;
                    }
                    mono = mono.mul(&Mono::var_pow(v - 1, e));
                } else {
                    return Err(err(i, "unexpected character"));
                }
                have_factor = true;
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == '*' {
                    i += 1;
                    continue;
                }
                break;
            }
            if !have_factor {
                return Err(err(start, "expected a term"));
            }
            terms.push((mono, &coeff * &Coeff::int(sign)));
            skip_ws(&mut i);
            if i >= bytes.len() {
                break;
            }
            sign = match bytes[i] {
                '+' => 1,
                '-' => -1,
                _ => return Err(err(i, "expected '+' or '-'")),
            };
            i += 1;
        }
        Ok(Poly::from_terms(terms))
    }
}

fn merge(a: &[(Mono, Coeff)], b: &[(Mono, Coeff)], negate_b: bool) -> Vec<(Mono, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        Poly { terms: merge(&self.terms, &o.terms, false) }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        Poly { terms: merge(&self.terms, &o.terms, true) }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_mono(m).scale(c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_mono(m).scale(c);
        }
        let mut acc: HashMap<Mono, Coeff> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `x_i` as a polynomial, 1-based like the printed names.
pub fn x(i: usize) -> Poly {
    Poly::var(i - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let p = &(&x(1) * &x(1)) - &(&x(2).scale(&Coeff::rat(3, 2)) + &Poly::int(4));
        assert_eq!(p.to_text(), "x1^2 - 3/2*x2 - 4");
        assert_eq!(Poly::parse(&p.to_text(), 1).unwrap(), p);
        let z = Poly::constant(Coeff::zeta(3, 1)).mul_mono(&Mono::var(0));
        assert_eq!(z.to_text(), "(z)*x1");
        assert_eq!(Poly::parse(&z.to_text(), 3).unwrap(), z);
    }

    #[test]
    fn graded_lex_order() {
        let p = &(&x(2) + &(&x(1) * &x(3))) + &x(1);
        assert_eq!(p.to_text(), "x1*x3 + x1 + x2");
    }
}
