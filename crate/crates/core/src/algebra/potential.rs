use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::poly::{Mono, Poly};
use super::rational::Q;
use crate::error::{Error, Result};

/// Monic p(x) = x^{n+1} + Σ_{i≤n} c_i x^i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential {
    n: usize,
    lower: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct PotentialRecord {
    n: usize,
    coefficients: Vec<String>,
}

impl Potential {
    /// `lower[i]` is c_i; missing entries are zero.
    pub fn new(n: usize, lower: Vec<Q>) -> Result<Potential> {
        if n < 2 {
            return Err(Error::InvalidPotential(format!("n = {n} < 2")));
        }
        if lower.len() > n + 1 {
            return Err(Error::InvalidPotential(format!("{} lower coefficients for degree {}", lower.len(), n + 1)));
        }
        let mut lower = lower;
        lower.resize(n + 1, Q::zero());
        Ok(Potential { n, lower })
    }

    /// x^{n+1}.
    pub fn sl(n: usize) -> Result<Potential> {
        Potential::new(n, vec![])
    }

    /// x^{n+1} − (n+1)x.
    pub fn gornik(n: usize) -> Result<Potential> {
        Potential::new(n, vec![Q::zero(), Q::int(-(n as i64 + 1))])
    }

    pub fn from_ints(n: usize, lower: &[i64]) -> Result<Potential> {
        Potential::new(n, lower.iter().map(|&c| Q::int(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of x^i for 0 ≤ i ≤ n+1.
    pub fn coeff(&self, i: usize) -> Q {
        if i == self.n + 1 {
            Q::one()
        } else {
            self.lower.get(i).cloned().unwrap_or_else(Q::zero)
        }
    }

    pub fn lower(&self) -> &[Q] {
        &self.lower
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lower.iter().all(|c| c.is_zero())
    }

    pub fn is_gornik(&self) -> bool {
        *self == Potential::gornik(self.n).unwrap()
    }

    /// The homogeneous top part x^{n+1}.
    pub fn top(&self) -> Potential {
        Potential::sl(self.n).unwrap()
    }

    /// Nonzero (exponent, coefficient) pairs including the leading term.
    pub fn terms(&self) -> Vec<(u32, Q)> {
        (0..=self.n + 1).map(|i| (i as u32, self.coeff(i))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// p(x_v).
    pub fn poly_in(&self, v: usize) -> Poly {
        Poly::from_terms(self.terms().into_iter().map(|(e, c)| (Mono::var_pow(v, e as u8), Coeff::Rat(c))))
    }

    /// p′(x_v).
    pub fn derivative_in(&self, v: usize) -> Poly {
        self.poly_in(v).derivative(v)
    }

    pub fn to_text(&self) -> String {
        self.poly_in(0).to_text().replace("x1", "x")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PotentialRecord {
            n: self.n,
            coefficients: (0..=self.n + 1).map(|i| self.coeff(i).to_string()).collect(),
        })
        .expect("potential record serializes")
    }
}
