//! Finite filtered cochain complexes over the coefficient field.
//!
//! Generators carry a cohomological degree and a filtration level; the
//! filtration is increasing (F^k is spanned by generators of level ≤ k) and
//! the differential never raises levels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Coeff;
use crate::error::{Error, Result};
use crate::linalg::{kernel, sv_axpy, sv_get, sv_normalize, sv_scale, Echelon, Inserted, SVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexGen {
    pub degree: i32,
    pub level: i32,
    /// Cube vertex and class index it came from, for bookkeeping only.
    pub tag: (u64, usize),
}

#[derive(Clone, Debug, Default)]
pub struct FilteredComplex {
    pub gens: Vec<ComplexGen>,
    /// d[g]: image of generator g, over generator indices.
    pub d: Vec<SVec>,
}

/// Dimensions indexed by (cohomological degree, level).
pub type Table = BTreeMap<(i32, i32), usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub r: usize,
    pub dims: Vec<(i32, i32, usize)>,
}

impl Page {
    pub fn table(&self) -> Table {
        self.dims.iter().map(|&(i, q, d)| ((i, q), d)).collect()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().map(|d| d.2).sum()
    }
}

pub fn table_to_vec(t: &Table) -> Vec<(i32, i32, usize)> {
    t.iter().filter(|(_, d)| **d > 0).map(|(&(i, q), &d)| (i, q, d)).collect()
}

/// Generators of one degree, highest level first, with their global ids.
struct Slice {
    ids: Vec<usize>,
    levels: Vec<i32>,
    local: BTreeMap<usize, usize>,
}

impl Slice {
    fn count_le(&self, p: i32) -> usize {
        self.levels.iter().filter(|&&l| l <= p).count()
    }

    /// Local indices of generators with level ≤ p (a suffix).
    fn le(&self, p: i32) -> std::ops::Range<usize> {
        let start = self.levels.iter().position(|&l| l <= p).unwrap_or(self.levels.len());
        start..self.levels.len()
    }
}

impl FilteredComplex {
    pub fn new(gens: Vec<ComplexGen>, d: Vec<SVec>) -> FilteredComplex {
        FilteredComplex { gens, d }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.gens.iter().map(|g| g.degree).collect();
        v.sort();
        v.dedup();
        v
    }

    fn slice(&self, deg: i32) -> Slice {
        let mut ids: Vec<usize> = (0..self.gens.len()).filter(|&g| self.gens[g].degree == deg).collect();
        ids.sort_by_key(|&g| (-self.gens[g].level, g));
        let levels = ids.iter().map(|&g| self.gens[g].level).collect();
        let local = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Slice { ids, levels, local }
    }

    /// d of generator g in the local coordinates of the next degree.
    fn local_image(&self, g: usize, next: &Slice) -> SVec {
        sv_normalize(self.d[g].iter().map(|(t, c)| (next.local[t], c.clone())).collect())
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut out: SVec = Vec::new();
        for (g, c) in v {
            out = sv_axpy(&out, c, &self.d[*g]);
        }
        out
    }

    pub fn d_squared_zero(&self) -> bool {
        (0..self.gens.len()).all(|g| self.apply(&self.d[g]).is_empty())
    }

    /// d raises the degree by one and never raises levels.
    pub fn is_filtered(&self) -> bool {
        self.gens.iter().enumerate().all(|(g, x)| {
            self.d[g].iter().all(|(t, _)| self.gens[*t].degree == x.degree + 1 && self.gens[*t].level <= x.level)
        })
    }

    /// d preserves levels exactly.
    pub fn is_graded(&self) -> bool {
        self.gens.iter().enumerate().all(|(g, x)| self.d[g].iter().all(|(t, _)| self.gens[*t].level == x.level))
    }

    fn level_range(&self) -> Option<(i32, i32)> {
        let lo = self.gens.iter().map(|g| g.level).min()?;
        let hi = self.gens.iter().map(|g| g.level).max()?;
        Some((lo, hi))
    }

    /// Z_r^p in local coordinates of `cur`: x ∈ F^p with dx ∈ F^{p−r}.
    /// r < 0 stands for F^p itself.
    fn z(&self, cur: &Slice, next: &Slice, p: i32, r: i64) -> Vec<SVec> {
        let range = cur.le(p);
        if r < 0 {
            return range.map(|i| vec![(i, Coeff::one())]).collect();
        }
        let cut = p as i64 - r;
        let cols: Vec<SVec> = range
            .clone()
            .map(|i| self.local_image(cur.ids[i], next).into_iter().filter(|(t, _)| next.levels[*t] as i64 > cut).collect())
            .collect();
        kernel(&cols).into_iter().map(|k| k.into_iter().map(|(j, c)| (range.start + j, c)).collect()).collect()
    }

    fn dims(&self, r: i64) -> Table {
        let mut out = Table::new();
        let Some((lo, hi)) = self.level_range() else { return out };
        for deg in self.degrees() {
            let prev = self.slice(deg - 1);
            let cur = self.slice(deg);
            let next = self.slice(deg + 1);
            let mut p = hi;
            while p >= lo {
                if cur.count_le(p) > cur.count_le(p - 1) {
                    let num = crate::linalg::rank(&self.z(&cur, &next, p, r));
                    let mut den: Vec<SVec> = self.z(&cur, &next, p - 1, r - 1);
                    let src = self.z(&prev, &cur, p + r as i32 - 1, r - 1);
                    for v in src {
                        let mut img: SVec = Vec::new();
                        for (i, c) in v {
                            img = sv_axpy(&img, &c, &self.local_image(prev.ids[i], &cur));
                        }
                        if !img.is_empty() {
                            den.push(img);
                        }
                    }
                    let dim = num - crate::linalg::rank(&den);
                    if dim > 0 {
                        out.insert((deg, p), dim);
                    }
                }
                p -= 1;
            }
        }
        out
    }

    /// E_r for r = 0, 1, …, up to `k_max` or until the sequence is
    /// stationary for good; the last page returned is then E_∞.
    pub fn pages(&self, k_max: Option<usize>) -> Vec<Page> {
        let span = self.level_range().map_or(0, |(lo, hi)| (hi - lo + 1) as usize);
        let last = k_max.map_or(span, |k| k.min(span));
        (0..=last).map(|r| Page { r, dims: table_to_vec(&self.dims(r as i64)) }).collect()
    }

    /// Filtered dimensions of the cohomology: gr_q H^i.
    pub fn homology(&self) -> Table {
        let span = self.level_range().map_or(0, |(lo, hi)| (hi - lo + 1) as i64);
        self.dims(span)
    }

    fn to_global(s: &Slice, v: &SVec) -> SVec {
        sv_normalize(v.iter().map(|(i, c)| (s.ids[*i], c.clone())).collect())
    }

    /// Z_{r−1}^{p−1} + d Z_{r−1}^{p+r−1} in degree `deg`, global coordinates.
    fn page_den(&self, deg: i32, p: i32, r: i64) -> Echelon {
        let prev = self.slice(deg - 1);
        let cur = self.slice(deg);
        let next = self.slice(deg + 1);
        let mut e = Echelon::new(false);
        for v in self.z(&cur, &next, p - 1, r - 1) {
            e.insert(&Self::to_global(&cur, &v), 0);
        }
        for v in self.z(&prev, &cur, p + r as i32 - 1, r - 1) {
            let img = self.apply(&Self::to_global(&prev, &v));
            if !img.is_empty() {
                e.insert(&img, 0);
            }
        }
        e
    }

    pub fn page_at(&self, r: usize) -> Page {
        Page { r, dims: table_to_vec(&self.dims(r as i64)) }
    }

    /// Cycles representing a basis of E_r at (deg, p).
    pub fn page_reps(&self, deg: i32, p: i32, r: usize) -> Vec<SVec> {
        let cur = self.slice(deg);
        let next = self.slice(deg + 1);
        let mut e = self.page_den(deg, p, r as i64);
        let mut out = Vec::new();
        for z in self.z(&cur, &next, p, r as i64) {
            let g = Self::to_global(&cur, &z);
            if let Inserted::Pivot(_) = e.insert(&g, 0) {
                out.push(g);
            }
        }
        out
    }

    /// Rank of the span of `vs` (cycles in Z_r^p) in E_r at (deg, p).
    pub fn page_rank(&self, deg: i32, p: i32, r: usize, vs: &[SVec]) -> usize {
        let mut e = self.page_den(deg, p, r as i64);
        let base = e.len();
        for v in vs {
            e.insert(v, 0);
        }
        e.len() - base
    }

    /// Lowest level k with `v` ∈ F^k + boundaries; None for a boundary.
    pub fn class_level(&self, deg: i32, v: &SVec) -> Option<i32> {
        let b = self.boundaries(deg);
        if b.contains(v) {
            return None;
        }
        let mut levels: Vec<i32> = self.gens.iter().filter(|g| g.degree == deg).map(|g| g.level).collect();
        levels.sort();
        levels.dedup();
        for k in levels {
            let mut e = b.clone();
            for (g, x) in self.gens.iter().enumerate() {
                if x.degree == deg && x.level <= k {
                    e.insert(&vec![(g, Coeff::one())], 0);
                }
            }
            if e.contains(v) {
                return Some(k);
            }
        }
        None
    }

    /// Cancels generator `x` against `y`, where the coefficient of y in dx
    /// is invertible and both sit at the same level.
    pub fn gaussian_eliminate(&self, x: usize, y: usize) -> Result<FilteredComplex> {
        let phi = sv_get(&self.d[x], y);
        if phi.is_zero() {
            return Err(Error::PivotNotInvertible);
        }
        if self.gens[x].level != self.gens[y].level || self.gens[y].degree != self.gens[x].degree + 1 {
            return Err(Error::PivotNotFiltered);
        }
        let inv = phi.inv();
        // gens z with y in dz
        let mut d = self.d.clone();
        let dx: SVec = self.d[x].clone();
        for z in 0..self.gens.len() {
            if z == x {
                continue;
            }
            let c = sv_get(&self.d[z], y);
            if c.is_zero() {
                continue;
            }
            // d'z = dz − c φ⁻¹ dx
            d[z] = sv_axpy(&d[z], &(-&(&c * &inv)), &dx);
        }
        let keep: Vec<usize> = (0..self.gens.len()).filter(|&g| g != x && g != y).collect();
        let idx: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let gens = keep.iter().map(|&g| self.gens[g].clone()).collect();
        let d = keep
            .iter()
            .map(|&g| sv_normalize(d[g].iter().filter(|(t, _)| *t != y && *t != x).map(|(t, c)| (idx[t], c.clone())).collect()))
            .collect();
        Ok(FilteredComplex { gens, d })
    }

    /// Cancels level-preserving pivots until none remain. Every E_r with
    /// r ≥ 1 and the filtered cohomology are unchanged.
    pub fn reduce(&self) -> FilteredComplex {
        let mut c = self.clone();
        loop {
            let mut found = None;
            'outer: for x in 0..c.gens.len() {
                for (y, coeff) in &c.d[x] {
                    if !coeff.is_zero() && c.gens[*y].level == c.gens[x].level {
                        found = Some((x, *y));
                        break 'outer;
                    }
                }
            }
            match found {
                Some((x, y)) => c = c.gaussian_eliminate(x, y).expect("pivot checked"),
                None => return c,
            }
        }
    }

    /// Cohomology classes of degree `deg` as a quotient: returns an echelon
    /// of boundaries and the cocycle space, both over global generator ids.
    pub fn boundaries(&self, deg: i32) -> Echelon {
        let mut e = Echelon::new(false);
        for g in 0..self.gens.len() {
            if self.gens[g].degree == deg - 1 && !self.d[g].is_empty() {
                e.insert(&self.d[g], 0);
            }
        }
        e
    }

    /// Rank of a family of cocycles of one degree modulo boundaries.
    pub fn rank_mod_boundaries(&self, deg: i32, vs: &[SVec]) -> usize {
        let mut e = self.boundaries(deg);
        let base = e.len();
        for v in vs {
            e.insert(v, 0);
        }
        e.len() - base
    }

    /// Coefficients of the class of `v` on the classes of `basis`, modulo
    /// boundaries, if `v` lies in their span.
    pub fn express_mod_boundaries(&self, deg: i32, basis: &[SVec], v: &SVec) -> Option<Vec<Coeff>> {
        let mut e = Echelon::new(true);
        let bnd: Vec<SVec> = (0..self.gens.len()).filter(|&g| self.gens[g].degree == deg - 1 && !self.d[g].is_empty()).map(|g| self.d[g].clone()).collect();
        let nb = bnd.len();
        for (i, b) in bnd.iter().enumerate() {
            e.insert(b, i);
        }
        for (i, b) in basis.iter().enumerate() {
            e.insert(b, nb + i);
        }
        // v − Σ c_i b_i ∈ span(bnd): find via the tracked combination
        let (rem, used) = e.reduce(v, false);
        if !rem.is_empty() {
            return None;
        }
        let mut combo: SVec = Vec::new();
        for (row, c) in used {
            combo = sv_axpy(&combo, &c, e.combo(row));
        }
        Some((0..basis.len()).map(|i| sv_get(&combo, nb + i)).collect())
    }

    /// Shifts every level by `k`.
    pub fn shift_levels(&self, k: i32) -> FilteredComplex {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.level += k;
        }
        c
    }

    pub fn scale_d(&self, s: &Coeff) -> FilteredComplex {
        let mut c = self.clone();
        for v in &mut c.d {
            *v = sv_scale(v, s);
        }
        c
    }
}

/// Poincaré polynomial text Σ dim·t^i q^j, terms ordered by (i, j).
pub fn poincare(t: &Table) -> String {
    let mut parts = Vec::new();
    for (&(i, q), &d) in t {
        if d == 0 {
            continue;
        }
        let mut s = String::new();
        if d != 1 || (i == 0 && q == 0) {
            s.push_str(&d.to_string());
        }
        let mono = |v: &str, e: i32| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let tt = mono("t", i);
        let qq = mono("q", q);
        for m in [tt, qq] {
            if !m.is_empty() {
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(&m);
            }
        }
        parts.push(s);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(degree: i32, level: i32) -> ComplexGen {
        ComplexGen { degree, level, tag: (0, 0) }
    }

    #[test]
    fn iso_pair_cancels_to_zero() {
        let c = FilteredComplex::new(vec![gen(0, 0), gen(1, 0)], vec![vec![(1, Coeff::int(3))], vec![]]);
        let r = c.gaussian_eliminate(0, 1).unwrap();
        assert!(r.is_empty());
        assert!(c.homology().is_empty());
    }

    #[test]
    fn lower_level_pivot_is_rejected() {
        let c = FilteredComplex::new(vec![gen(0, 2), gen(1, 0)], vec![vec![(1, Coeff::one())], vec![]]);
        assert!(matches!(c.gaussian_eliminate(0, 1), Err(Error::PivotNotFiltered)));
        assert!(matches!(c.gaussian_eliminate(1, 0), Err(Error::PivotNotInvertible)));
    }

    #[test]
    fn filtered_pair_kills_at_page_one() {
        // d: a (level 2) → b (level 0): E_0 = E_1 = E_2 has both, E_3 is empty
        let c = FilteredComplex::new(vec![gen(0, 2), gen(1, 0)], vec![vec![(1, Coeff::one())], vec![]]);
        let pages = c.pages(None);
        assert_eq!(pages[0].total(), 2);
        assert_eq!(pages[2].total(), 2);
        assert_eq!(pages[3].total(), 0);
        assert!(c.homology().is_empty());
    }

    #[test]
    fn poincare_text() {
        let t: Table = [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 2)].into_iter().collect();
        assert_eq!(poincare(&t), "q + q^3 + t^2*q^5 + 2*t^3*q^9");
    }
}
