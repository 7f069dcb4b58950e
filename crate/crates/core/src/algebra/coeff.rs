use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use super::rational::Q;

const MAX_ORDER: usize = 64;

/// Integer coefficients of the cyclotomic polynomials Φ_1..Φ_64, low degree first.
fn cyclotomic_table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t: Vec<Vec<i64>> = vec![Vec::new(); MAX_ORDER + 1];
        for m in 1..=MAX_ORDER {
            // x^m - 1 divided by every Φ_d with d | m, d < m.
            let mut num = vec![0i64; m + 1];
            num[0] = -1;
            num[m] = 1;
            for d in 1..m {
                if m % d == 0 {
                    num = div_monic_int(&num, &t[d]);
                }
            }
            t[m] = num;
        }
        t
    })
}

fn div_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qd = r.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (i, &dv) in den.iter().enumerate() {
            r[k + i] -= c * dv;
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0));
    q
}

/// Coefficients of Φ_m, low degree first.
pub fn cyclotomic_poly(m: u32) -> &'static [i64] {
    assert!(m >= 1 && (m as usize) <= MAX_ORDER, "cyclotomic order out of range");
    &cyclotomic_table()[m as usize]
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

/// Coefficient field element: a rational, or a residue in ℚ[z]/Φ_m(z)
/// with z standing for ζ_m = e^{2πi/m}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(Q),
    Cyc(u32, Vec<Q>),
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl Coeff {
    pub fn zero() -> Coeff {
        Coeff::Rat(Q::zero())
    }

    pub fn one() -> Coeff {
        Coeff::Rat(Q::one())
    }

    pub fn int(v: i64) -> Coeff {
        Coeff::Rat(Q::int(v))
    }

    pub fn rat(n: i64, d: i64) -> Coeff {
        Coeff::Rat(Q::new(n, d))
    }

    /// ζ_m^k.
    pub fn zeta(m: u32, k: i64) -> Coeff {
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![Q::zero(); e + 1];
        v[e] = Q::one();
        Coeff::from_residue(m, v)
    }

    /// Builds the element Σ v[i] z^i of ℚ(ζ_m), reducing modulo Φ_m.
    pub fn from_residue(m: u32, mut v: Vec<Q>) -> Coeff {
        let phi = cyclotomic_poly(m);
        let d = phi.len() - 1;
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            for (i, &c) in phi.iter().take(d).enumerate() {
                if c != 0 {
                    v[shift + i] = &v[shift + i] - &(&top * &Q::int(c));
                }
            }
        }
        while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        if v.len() <= 1 {
            return Coeff::Rat(v.pop().unwrap_or_else(Q::zero));
        }
        Coeff::Cyc(m, v)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Coeff::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            Coeff::Rat(_) => 1,
            Coeff::Cyc(m, _) => *m,
        }
    }

    fn residue(&self) -> Vec<Q> {
        match self {
            Coeff::Rat(q) => vec![q.clone()],
            Coeff::Cyc(_, v) => v.clone(),
        }
    }

    fn joint_order(&self, o: &Coeff) -> u32 {
        match (self.order(), o.order()) {
            (1, m) | (m, 1) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing cyclotomic fields of orders {a} and {b}"),
        }
    }

    pub fn inv(&self) -> Coeff {
        match self {
            Coeff::Rat(q) => Coeff::Rat(q.inv()),
            Coeff::Cyc(m, v) => {
                // Solve (multiplication-by-self matrix) · y = e_0.
                let d = euler_phi(*m);
                let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
                for j in 0..d {
                    let mut zj = vec![Q::zero(); j + 1];
                    zj[j] = Q::one();
                    let prod = Coeff::Cyc(*m, v.clone()) * Coeff::from_residue(*m, zj);
                    let mut r = prod.residue();
                    r.resize(d, Q::zero());
                    cols.push(r);
                }
                let mut a: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
                let mut rhs = vec![Q::zero(); d];
                rhs[0] = Q::one();
                for c in 0..d {
                    let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("element not invertible");
                    a.swap(c, p);
                    rhs.swap(c, p);
                    let iv = a[c][c].inv();
                    for j in c..d {
                        a[c][j] = &a[c][j] * &iv;
                    }
                    rhs[c] = &rhs[c] * &iv;
                    for r in 0..d {
                        if r != c && !a[r][c].is_zero() {
                            let f = a[r][c].clone();
                            for j in c..d {
                                let t = &a[c][j] * &f;
                                a[r][j] = &a[r][j] - &t;
                            }
                            let t = &rhs[c] * &f;
                            rhs[r] = &rhs[r] - &t;
                        }
                    }
                }
                Coeff::from_residue(*m, rhs)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugate (z ↦ z^{-1}).
    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Rat(_) => self.clone(),
            Coeff::Cyc(m, v) => {
                let mut acc = Coeff::zero();
                for (i, c) in v.iter().enumerate() {
                    acc = &acc + &(&Coeff::Rat(c.clone()) * &Coeff::zeta(*m, -(i as i64)));
                }
                acc
            }
        }
    }

    /// Parses a rational or a `q(z)` residue like `(1 + 2z - z^3)` in ℚ(ζ_m).
    pub fn parse(s: &str, m: u32) -> Option<Coeff> {
        let s = s.trim();
        if let Some(q) = Q::parse(s) {
            return Some(Coeff::Rat(q));
        }
        let body = s.strip_prefix('(')?.strip_suffix(')')?;
        let mut v: Vec<Q> = Vec::new();
        let cleaned = body.replace(" - ", " + -").replace(' ', "");
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let (c, e) = if let Some(idx) = term.find('z') {
                let cs = term[..idx].trim_end_matches('*');
                let c = match cs {
                    "" => Q::one(),
                    "-" => Q::int(-1),
                    _ => Q::parse(cs)?,
                };
                let rest = &term[idx + 1..];
                let e = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                (c, e)
            } else {
                (Q::parse(term)?, 0)
            };
            if v.len() <= e {
                v.resize(e + 1, Q::zero());
            }
            v[e] = &v[e] + &c;
        }
        Some(Coeff::from_residue(m, v))
    }
}

impl From<Q> for Coeff {
    fn from(q: Q) -> Coeff {
        Coeff::Rat(q)
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Coeff {
        Coeff::int(v)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        if let (Coeff::Rat(a), Coeff::Rat(b)) = (self, o) {
            return Coeff::Rat(a + b);
        }
        let m = self.joint_order(o);
        let (a, b) = (self.residue(), o.residue());
        let len = a.len().max(b.len());
        let v = (0..len)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                _ => Q::zero(),
            })
            .collect();
        Coeff::from_residue(m, v)
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Rat(a), Coeff::Cyc(m, v)) | (Coeff::Cyc(m, v), Coeff::Rat(a)) => {
                if a.is_zero() {
                    return Coeff::zero();
                }
                Coeff::Cyc(*m, v.iter().map(|c| c * a).collect())
            }
            (Coeff::Cyc(m1, a), Coeff::Cyc(m2, b)) => {
                assert_eq!(m1, m2, "mixing cyclotomic fields");
                let mut v = vec![Q::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        v[i + j] = &v[i + j] + &(x * y);
                    }
                }
                Coeff::from_residue(*m1, v)
            }
        }
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, o: &Coeff) -> Coeff {
        self * &o.inv()
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rat(q) => Coeff::Rat(-q),
            Coeff::Cyc(m, v) => Coeff::Cyc(*m, v.iter().map(|c| -c).collect()),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $f(self, o: Coeff) -> Coeff {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(q) => write!(f, "{q}"),
            Coeff::Cyc(_, v) => {
                let mut first = true;
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.signum() < 0;
                    let a = if neg { -c } else { c.clone() };
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{a}")?,
                        _ => {
                            if !a.is_one() {
                                write!(f, "{a}*")?;
                            }
                            if i == 1 {
                                write!(f, "z")?;
                            } else {
                                write!(f, "z^{i}")?;
                            }
                        }
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
