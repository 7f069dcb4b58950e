use crate::algebra::{Coeff, Poly};
use crate::error::{Error, Result};

use super::matrix::{GradedGen, MatrixFactorization, MfMap, PolyMatrix};

/// A row (a, b) of a Koszul factorization. `deg_a` is the nominal quantum
/// degree of a; for deformed potentials a is not homogeneous and the
/// generator shift uses this value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulRow {
    pub a: Poly,
    pub b: Poly,
    pub deg_a: i32,
}

impl KoszulRow {
    pub fn new(a: Poly, b: Poly) -> Result<KoszulRow> {
        let deg_a = a.degree().ok_or_else(|| Error::InvalidRow("a = 0".into()))?;
        Ok(KoszulRow { a, b, deg_a })
    }

    pub fn with_degree(a: Poly, b: Poly, deg_a: i32) -> KoszulRow {
        KoszulRow { a, b, deg_a }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.a.is_zero() {
            return Err(Error::InvalidRow("a = 0".into()));
        }
        let bound = 2 * n as i32 + 2;
        if let (Some(da), Some(db)) = (self.a.degree(), self.b.degree()) {
            if da + db > bound {
                return Err(Error::InvalidRow(format!("deg(ab) = {} exceeds {bound}", da + db)));
            }
        }
        if let Some(da) = self.a.degree() {
            if da > self.deg_a {
                return Err(Error::InvalidRow(format!("deg a = {da} above nominal {}", self.deg_a)));
            }
        }
        Ok(())
    }

    /// Quantum shift of the row's odd generator.
    pub fn odd_shift(&self, n: usize) -> i32 {
        n as i32 + 1 - self.deg_a
    }
}

/// (a₁,b₁) ⊗ … ⊗ (a_k,b_k) {shift} ⟨angle⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulMF {
    pub n: usize,
    pub rows: Vec<KoszulRow>,
    pub shift: i32,
    pub angle: u8,
}

/// Sign of the row-i term of the Koszul differential on generator `mask`.
pub fn row_sign(mask: u64, i: usize) -> i32 {
    if (mask >> (i + 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mask_label(mask: u64, k: usize) -> String {
    let bits: String = (0..k).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect();
    format!("e{bits}")
}

impl KoszulMF {
    pub fn new(n: usize, rows: Vec<KoszulRow>) -> Result<KoszulMF> {
        for r in &rows {
            r.validate(n)?;
        }
        if rows.len() > 62 {
            return Err(Error::InvalidRow("too many rows".into()));
        }
        Ok(KoszulMF { n, rows, shift: 0, angle: 0 })
    }

    pub fn potential(&self) -> Poly {
        self.rows.iter().fold(Poly::zero(), |acc, r| &acc + &(&r.a * &r.b))
    }

    pub fn gen_shift(&self, mask: u64) -> i32 {
        self.shift + (0..self.rows.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.rows[i].odd_shift(self.n)).sum::<i32>()
    }

    pub fn gen_parity(&self, mask: u64) -> u8 {
        ((mask.count_ones() + self.angle as u32) % 2) as u8
    }

    /// Explicit matrices. Generators are ordered by ascending mask within
    /// each parity; an odd angle negates both differentials.
    pub fn explicit(&self) -> MatrixFactorization {
        let k = self.rows.len();
        let total = 1u64 << k;
        let sgn = if self.angle % 2 == 1 { -1 } else { 1 };
        let gens: Vec<GradedGen> = (0..total)
            .map(|m| GradedGen { parity: self.gen_parity(m), shift: self.gen_shift(m), key: m, label: mask_label(m, k) })
            .collect();
        let mut cols = vec![Vec::new(); total as usize];
        for m in 0..total {
            for (i, r) in self.rows.iter().enumerate() {
                let e = if m >> i & 1 == 1 { &r.b } else { &r.a };
                if e.is_zero() {
                    continue;
                }
                let s = row_sign(m, i) * sgn;
                cols[m as usize].push(((m ^ (1 << i)) as usize, if s < 0 { -e } else { e.clone() }));
            }
        }
        MatrixFactorization::from_unified(self.n, self.potential(), gens, cols, k as u32)
    }

    pub fn shift_brace(&self, k: i32) -> KoszulMF {
        KoszulMF { shift: self.shift + k, ..self.clone() }
    }

    pub fn shift_angle(&self) -> KoszulMF {
        KoszulMF { angle: (self.angle + 1) % 2, ..self.clone() }
    }

    pub fn tensor(&self, other: &KoszulMF) -> KoszulMF {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        KoszulMF { n: self.n, rows, shift: self.shift + other.shift, angle: (self.angle + other.angle) % 2 }
    }

    /// The bullet of a Koszul factorization in row form:
    /// rows (a_i, −b_i), angle ⟨k⟩, shift −k(n+1) + Σ deg a_i − shift.
    pub fn bullet(&self) -> KoszulMF {
        let k = self.rows.len() as i32;
        let rows = self.rows.iter().map(|r| KoszulRow { a: r.a.clone(), b: -&r.b, deg_a: r.deg_a }).collect();
        let sum_deg: i32 = self.rows.iter().map(|r| r.deg_a).sum();
        KoszulMF {
            n: self.n,
            rows,
            shift: -k * (self.n as i32 + 1) + sum_deg - self.shift,
            angle: ((k as u32 + self.angle as u32) % 2) as u8,
        }
    }

    /// Hom(M, N) = N ⊗ M_•, in row form.
    pub fn hom(m: &KoszulMF, n: &KoszulMF) -> Result<KoszulMF> {
        if m.potential() != n.potential() {
            return Err(Error::PotentialMismatch);
        }
        Ok(n.tensor(&m.bullet()))
    }

    pub fn scale_row(&self, i: usize, c: &Coeff) -> Result<KoszulMF> {
        if c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let mut out = self.clone();
        out.rows[i].a = out.rows[i].a.scale(c);
        out.rows[i].b = out.rows[i].b.scale(&c.inv());
        Ok(out)
    }

    fn require_two_rows(&self) -> Result<()> {
        if self.rows.len() != 2 {
            return Err(Error::InvalidRow(format!("expected two rows, got {}", self.rows.len())));
        }
        Ok(())
    }

    /// Rows (a₁ + k b₂, b₁), (a₂ − k b₁, b₂). Returns the result and the
    /// square-zero twist data (H0, H1) relating it to the input.
    pub fn twist(&self, k: &Poly) -> Result<(KoszulMF, PolyMatrix, PolyMatrix)> {
        self.require_two_rows()?;
        let (r1, r2) = (&self.rows[0], &self.rows[1]);
        if let Some(dk) = k.degree() {
            let bound = r1.deg_a + r2.deg_a - 2 * self.n as i32 - 2;
            if dk > bound {
                return Err(Error::DegreeBoundViolated(format!("deg k = {dk} > {bound}")));
            }
        }
        let mut out = self.clone();
        out.rows[0].a = &r1.a + &(k * &r2.b);
        out.rows[1].a = &r2.a - &(k * &r1.b);
        // M⁰ = (e00, e11): H0 sends e00 to k·e11.
        let h0 = vec![vec![Poly::zero(), Poly::zero()], vec![k.clone(), Poly::zero()]];
        let h1 = vec![vec![Poly::zero(), Poly::zero()], vec![Poly::zero(), Poly::zero()]];
        Ok((out, h0, h1))
    }

    /// Rows (a₁ + c a₂, b₁), (a₂, b₂ − c b₁).
    pub fn row_operation(&self, c: &Poly) -> Result<(KoszulMF, PolyMatrix, PolyMatrix)> {
        self.require_two_rows()?;
        let (r1, r2) = (&self.rows[0], &self.rows[1]);
        if let Some(dc) = c.degree() {
            let bound = r1.deg_a - r2.deg_a;
            if dc > bound {
                return Err(Error::DegreeBoundViolated(format!("deg c = {dc} > {bound}")));
            }
        }
        let mut out = self.clone();
        out.rows[0].a = &r1.a + &(c * &r2.a);
        out.rows[1].b = &r2.b - &(c * &r1.b);
        // M¹ = (e10, e01): H1 sends e01 to −c·e10.
        let h0 = vec![vec![Poly::zero(), Poly::zero()], vec![Poly::zero(), Poly::zero()]];
        let h1 = vec![vec![Poly::zero(), -c], vec![Poly::zero(), Poly::zero()]];
        Ok((out, h0, h1))
    }

    /// Witnessed form of `twist`/`row_operation` on explicit matrices.
    pub fn explicit_twist(&self, h0: &PolyMatrix, h1: &PolyMatrix) -> Result<(MatrixFactorization, MfMap)> {
        self.explicit().general_twist(h0, h1)
    }

    /// Removes row `i` whose b is c·(x_t − L) with L free of x_t, and
    /// substitutes x_t := L everywhere else.
    pub fn exclude_variable(&self, i: usize) -> Result<KoszulMF> {
        let row = self.rows.get(i).ok_or(Error::NotSubstitutable(i))?;
        let (t, l) = linear_solve(&row.b).ok_or(Error::NotSubstitutable(i))?;
        if let Some(db) = row.b.degree() {
            if row.deg_a + db != 2 * self.n as i32 + 2 {
                return Err(Error::DegreeMismatch(format!("deg a + deg b = {} ≠ {}", row.deg_a + db, 2 * self.n + 2)));
            }
        }
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| KoszulRow { a: r.a.substitute_var(t, &l), b: r.b.substitute_var(t, &l), deg_a: r.deg_a })
            .collect();
        Ok(KoszulMF { rows, ..self.clone() })
    }
}

/// Finds x_t with b = c·(x_t − L), c a nonzero constant and L free of x_t.
pub fn linear_solve(b: &Poly) -> Option<(usize, Poly)> {
    for t in b.vars() {
        if b.deg_in(t) != 1 {
            continue;
        }
        let cs = b.coeffs_in(t);
        if !cs[1].is_constant() {
            continue;
        }
        let c = cs[1].constant_term();
        let l = cs[0].scale(&(-&c.inv()));
        return Some((t, l));
    }
    None
}

/// The matrix factorization (a, b) for one row, used directly in tests.
pub fn koszul(rows: &[KoszulRow], n: usize) -> Result<MatrixFactorization> {
    Ok(KoszulMF::new(n, rows.to_vec())?.explicit())
}
