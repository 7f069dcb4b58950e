use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laurent polynomial in q with integer coefficients; used for graded and
/// filtered dimensions.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Laurent(pub BTreeMap<i32, i64>);

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent(BTreeMap::new())
    }

    pub fn one() -> Laurent {
        Laurent::mono(0, 1)
    }

    pub fn mono(e: i32, c: i64) -> Laurent {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    /// Quantum integer [k] = q^{1-k} + q^{3-k} + … + q^{k-1}; [0] = 0.
    pub fn qint(k: i64) -> Laurent {
        if k <= 0 {
            return if k == 0 { Laurent::zero() } else { -Laurent::qint(-k) };
        }
        let mut out = Laurent::zero();
        for i in 0..k {
            out.add_term((1 - k + 2 * i) as i32, 1);
        }
        out
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (e + k, *c)).collect())
    }

    /// Value at q = 1.
    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    /// q ↦ q^{-1}.
    pub fn mirror(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, c)| (-e, *c)).collect())
    }

    pub fn from_levels<I: IntoIterator<Item = i32>>(levels: I) -> Laurent {
        let mut out = Laurent::zero();
        for l in levels {
            out.add_term(l, 1);
        }
        out
    }

    /// Parses text like `q^-2 + 2 + 3q^2 - q`.
    pub fn parse(s: &str) -> Result<Laurent> {
        let err = |msg: &str| Error::ParseError { pos: 0, msg: format!("{msg} in '{s}'") };
        let cleaned = s.replace(' ', "");
        if cleaned.is_empty() {
            return Err(err("empty"));
        }
        if cleaned == "0" {
            return Ok(Laurent::zero());
        }
        let mut out = Laurent::zero();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let c: i64 = if i > start { cleaned[start..i].parse().map_err(|_| err("bad coefficient"))? } else { 1 };
            let mut e = 0i32;
            if i < chars.len() && chars[i] == 'q' {
                i += 1;
                e = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let s2 = i;
                    if i < chars.len() && chars[i] == '-' {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = cleaned[s2..i].parse().map_err(|_| err("bad exponent"))?;
                }
            } else if i == start {
                return Err(err("expected term"));
            }
            out.add_term(e, sign * c);
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(err("unexpected character"));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.0.iter().enumerate() {
            let a = c.abs();
            if idx == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            }
            match (*e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, *c);
        }
        r
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o.clone())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        &self + &o
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        &self - &o
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        assert_eq!(Laurent::qint(2).to_string(), "q^-1 + q");
        let p = &(&Laurent::qint(2) * &Laurent::qint(2)) * &Laurent::qint(1);
        assert_eq!(p.to_string(), "q^-2 + 2 + q^2");
        assert_eq!(Laurent::parse(&p.to_string()).unwrap(), p);
        let odd = Laurent::parse("-3q^-5 + q - 2q^4").unwrap();
        assert_eq!(Laurent::parse(&odd.to_string()).unwrap(), odd);
    }
}
