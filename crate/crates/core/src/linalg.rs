//! Sparse vectors and incremental echelon forms over the coefficient field.
//!
//! A vector's pivot is its smallest nonzero index. Callers order coordinates
//! so that this is the entry of highest filtration level.

use std::collections::HashMap;

use crate::algebra::Coeff;

pub type SVec = Vec<(usize, Coeff)>;

pub fn sv_from_dense(v: &[Coeff]) -> SVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn sv_normalize(mut v: Vec<(usize, Coeff)>) -> SVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d = &*d + &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// a + s·b
pub fn sv_axpy(a: &SVec, s: &Coeff, b: &SVec) -> SVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let c = &a[i].1 + &(s * &b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_scale(a: &SVec, s: &Coeff) -> SVec {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * s)).collect()
}

pub fn sv_get(a: &SVec, idx: usize) -> Coeff {
    match a.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => a[p].1.clone(),
        Err(_) => Coeff::zero(),
    }
}

pub enum Inserted {
    /// New echelon row with this id.
    Pivot(usize),
    /// The vector was dependent; the combination of inputs summing to zero.
    Dependent(SVec),
}

/// Incremental echelon basis with optional tracking of input combinations.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SVec>,
    combos: Vec<SVec>,
    pivots: HashMap<usize, usize>,
    track: bool,
}

impl Echelon {
    pub fn new(track: bool) -> Echelon {
        Echelon { rows: Vec::new(), combos: Vec::new(), pivots: HashMap::new(), track }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }

    pub fn row(&self, id: usize) -> &SVec {
        &self.rows[id]
    }

    pub fn combo(&self, id: usize) -> &SVec {
        &self.combos[id]
    }

    pub fn pivot(&self, id: usize) -> usize {
        self.rows[id][0].0
    }

    pub fn row_with_pivot(&self, idx: usize) -> Option<usize> {
        self.pivots.get(&idx).copied()
    }

    /// Eliminates pivot entries. With `full` every pivot position is
    /// cleared; otherwise reduction stops at the first non-pivot entry.
    /// Returns the remainder and the multiples of echelon rows removed.
    pub fn reduce(&self, v: &SVec, full: bool) -> (SVec, Vec<(usize, Coeff)>) {
        let mut v = v.clone();
        let mut used = Vec::new();
        let mut p = 0;
        while p < v.len() {
            let idx = v[p].0;
            match self.pivots.get(&idx) {
                Some(&r) => {
                    let row = &self.rows[r];
                    let c = &v[p].1 / &row[0].1;
                    v = sv_axpy(&v, &(-&c), row);
                    used.push((r, c));
                }
                None => {
                    if !full {
                        break;
                    }
                    p += 1;
                }
            }
        }
        (v, used)
    }

    /// Inserts `v`, the input with identifier `label` when tracking.
    pub fn insert(&mut self, v: &SVec, label: usize) -> Inserted {
        let (rem, used) = self.reduce(v, false);
        let combo = if self.track {
            let mut c: SVec = vec![(label, Coeff::one())];
            for (r, s) in &used {
                c = sv_axpy(&c, &(-s), &self.combos[*r]);
            }
            c
        } else {
            Vec::new()
        };
        if rem.is_empty() {
            return Inserted::Dependent(combo);
        }
        let id = self.rows.len();
        self.pivots.insert(rem[0].0, id);
        self.rows.push(rem);
        self.combos.push(combo);
        Inserted::Pivot(id)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v, false).0.is_empty()
    }

    /// Coordinates of `v` in terms of echelon rows, if it lies in the span.
    pub fn express(&self, v: &SVec) -> Option<Vec<(usize, Coeff)>> {
        let (rem, used) = self.reduce(v, false);
        if rem.is_empty() {
            Some(used)
        } else {
            None
        }
    }
}

/// Rank of a list of vectors.
pub fn rank(vs: &[SVec]) -> usize {
    let mut e = Echelon::new(false);
    for v in vs {
        e.insert(v, 0);
    }
    e.len()
}

/// Kernel of the map sending basis vector j to `cols[j]`.
pub fn kernel(cols: &[SVec]) -> Vec<SVec> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Inserted::Dependent(combo) = e.insert(c, j) {
            out.push(sv_normalize(combo));
        }
    }
    out
}

/// Dense matrix product helper: (rows × k)·(k × cols).
pub fn dense_mul(a: &[Vec<Coeff>], b: &[Vec<Coeff>]) -> Vec<Vec<Coeff>> {
    let rows = a.len();
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![Coeff::zero(); cols]; rows];
    for i in 0..rows {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

/// Inverse of a square matrix, if invertible.
pub fn dense_inverse(a: &[Vec<Coeff>]) -> Option<Vec<Vec<Coeff>>> {
    let n = a.len();
    let mut m: Vec<Vec<Coeff>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(usize, i64)]) -> SVec {
        xs.iter().map(|&(i, c)| (i, Coeff::int(c))).collect()
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&cols), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![vec![Coeff::int(2), Coeff::int(1)], vec![Coeff::int(1), Coeff::int(1)]];
        let inv = dense_inverse(&a).unwrap();
        let id = dense_mul(&a, &inv);
        assert!(id[0][0].is_one() && id[1][1].is_one() && id[0][1].is_zero() && id[1][0].is_zero());
    }
}
