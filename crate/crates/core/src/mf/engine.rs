//! Degreewise cohomology of a w = 0 factorization over a reduced ring.
//!
//! Coordinates are pairs (generator, normal monomial). A coordinate's
//! degree is 2·|monomial| + shift. Spaces list coordinates by descending
//! degree so an echelon pivot is always the top-degree entry.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Coeff, Laurent, Mono, Poly};
use crate::error::{Error, Result};
use crate::linalg::{kernel, sv_axpy, sv_normalize, Echelon, Inserted, SVec};

use super::matrix::MatrixFactorization;
use super::ring::Ring;

pub type ModElem = BTreeMap<usize, Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub key: u64,
    pub parity: u8,
    pub shift: i32,
}

/// A free module over `ring` (restricted to `vars`) with a differential
/// given column by column.
#[derive(Clone, Debug)]
pub struct FreeModel {
    pub n: usize,
    pub ring: Ring,
    pub vars: Vec<usize>,
    pub gens: Vec<GenInfo>,
    pub d: Vec<Vec<(usize, Poly)>>,
}

pub fn elem_add(a: &mut ModElem, g: usize, p: Poly) {
    if p.is_zero() {
        return;
    }
    let v = match a.remove(&g) {
        Some(old) => &old + &p,
        None => p,
    };
    if !v.is_zero() {
        a.insert(g, v);
    }
}

pub fn elem_scale(a: &ModElem, c: &Coeff) -> ModElem {
    if c.is_zero() {
        return ModElem::new();
    }
    a.iter().map(|(g, p)| (*g, p.scale(c))).collect()
}

pub fn elem_sub(a: &ModElem, b: &ModElem) -> ModElem {
    let mut out = a.clone();
    for (g, p) in b {
        elem_add(&mut out, *g, -p);
    }
    out
}

impl FreeModel {
    pub fn from_mf(m: &MatrixFactorization) -> FreeModel {
        let (gens, cols) = m.unified();
        let mut seen = std::collections::BTreeSet::new();
        for col in &cols {
            for (_, p) in col {
                seen.extend(p.vars());
            }
        }
        FreeModel {
            n: m.n,
            ring: Ring::new(),
            vars: seen.into_iter().collect(),
            gens: gens.iter().map(|g| GenInfo { key: g.key, parity: g.parity, shift: g.shift }).collect(),
            d: cols,
        }
    }

    pub fn apply_d(&self, e: &ModElem) -> ModElem {
        let mut out = ModElem::new();
        for (g, p) in e {
            for (t, c) in &self.d[*g] {
                elem_add(&mut out, *t, self.ring.mul(p, c));
            }
        }
        out
    }

    /// Degree of an element: max over terms of deg(poly) + shift.
    pub fn degree(&self, e: &ModElem) -> Option<i32> {
        e.iter().filter_map(|(g, p)| p.degree().map(|d| d + self.gens[*g].shift)).max()
    }

    /// The layer of d raising degree by exactly n+1.
    pub fn top_layer(&self) -> FreeModel {
        let raise = self.n as i32 + 1;
        let d = self
            .d
            .iter()
            .enumerate()
            .map(|(j, col)| {
                col.iter()
                    .map(|(i, p)| (*i, p.component(raise + self.gens[j].shift - self.gens[*i].shift)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect()
            })
            .collect();
        FreeModel { d, ..self.clone() }
    }

    pub fn is_homogeneous(&self) -> bool {
        let top = self.top_layer();
        top.d.iter().map(|c| c.len()).sum::<usize>() == self.d.iter().map(|c| c.len()).sum::<usize>()
    }

    fn max_shift(&self) -> i32 {
        self.gens.iter().map(|g| g.shift).max().unwrap_or(0)
    }

    fn min_shift(&self) -> i32 {
        self.gens.iter().map(|g| g.shift).min().unwrap_or(0)
    }
}

/// Normal monomials by total exponent.
struct Monos {
    vars: Vec<(usize, Option<u8>)>,
    cache: HashMap<u32, Vec<Mono>>,
}

impl Monos {
    fn new(model: &FreeModel) -> Monos {
        let vars = model.vars.iter().map(|&v| (v, model.ring.cap(v))).collect();
        Monos { vars, cache: HashMap::new() }
    }

    fn of_total(&mut self, t: u32) -> &Vec<Mono> {
        if !self.cache.contains_key(&t) {
            let mut out = Vec::new();
            gen_monos(&self.vars, 0, t, Mono::ONE, &mut out);
            out.sort_by(|a, b| b.cmp(a));
            self.cache.insert(t, out);
        }
        &self.cache[&t]
    }
}

fn gen_monos(vars: &[(usize, Option<u8>)], i: usize, left: u32, cur: Mono, out: &mut Vec<Mono>) {
    if i == vars.len() {
        if left == 0 {
            out.push(cur);
        }
        return;
    }
    let (v, cap) = vars[i];
    let hi = match cap {
        Some(c) => (c as u32 - 1).min(left),
        None => left,
    };
    for e in 0..=hi {
        gen_monos(vars, i + 1, left - e, cur.with_exp(v, e as u8), out);
    }
}

/// Coordinates of one parity within a degree window, by descending degree.
#[derive(Clone, Debug)]
pub struct Space {
    pub coords: Vec<(usize, Mono)>,
    pub degs: Vec<i32>,
    pub index: HashMap<(usize, Mono), usize>,
}

impl Space {
    fn build(model: &FreeModel, monos: &mut Monos, parity: u8, lo: i32, hi: i32) -> Space {
        let mut items: Vec<(i32, usize, Mono)> = Vec::new();
        for (g, info) in model.gens.iter().enumerate() {
            if info.parity != parity {
                continue;
            }
            let tmin = ((lo - info.shift) as f64 / 2.0).ceil().max(0.0) as i64;
            let tmax = ((hi - info.shift) as f64 / 2.0).floor() as i64;
            for t in tmin..=tmax {
                for m in monos.of_total(t as u32) {
                    items.push((2 * t as i32 + info.shift, g, *m));
                }
            }
        }
        items.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)));
        let mut sp = Space { coords: Vec::with_capacity(items.len()), degs: Vec::with_capacity(items.len()), index: HashMap::new() };
        for (d, g, m) in items {
            sp.index.insert((g, m), sp.coords.len());
            sp.coords.push((g, m));
            sp.degs.push(d);
        }
        sp
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_svec(&self, e: &ModElem) -> Option<SVec> {
        let mut v = Vec::new();
        for (g, p) in e {
            for (m, c) in p.terms() {
                v.push((*self.index.get(&(*g, *m))?, c.clone()));
            }
        }
        Some(sv_normalize(v))
    }

    pub fn to_elem(&self, v: &SVec) -> ModElem {
        let mut out = ModElem::new();
        for (i, c) in v {
            let (g, m) = self.coords[*i];
            elem_add(&mut out, g, Poly::monomial(m, c.clone()));
        }
        out
    }
}

/// Image of the basis element (g, m) as coordinates through `lookup`.
fn image(model: &FreeModel, g: usize, m: &Mono, lookup: &mut dyn FnMut(usize, Mono) -> Option<usize>) -> Option<SVec> {
    let mut v = Vec::new();
    for (t, p) in &model.d[g] {
        let q = model.ring.reduce(&p.mul_mono(m));
        for (mm, c) in q.terms() {
            v.push((lookup(*t, *mm)?, c.clone()));
        }
    }
    Some(sv_normalize(v))
}

/// Growing index for target spaces whose order does not matter.
#[derive(Default)]
struct DynIndex(HashMap<(usize, Mono), usize>);

impl DynIndex {
    fn get(&mut self, g: usize, m: Mono) -> usize {
        let k = self.0.len();
        *self.0.entry((g, m)).or_insert(k)
    }
}

#[derive(Clone, Debug)]
pub struct CohomOptions {
    /// Expected graded dimension (both parities together), when known.
    pub certificate: Option<Laurent>,
    /// First truncation degree tried.
    pub start: Option<i32>,
    /// Ceiling on the truncation degree.
    pub max_degree: Option<i32>,
}

impl Default for CohomOptions {
    fn default() -> Self {
        let max_degree = std::env::var("KRH_MAX_DEGREE").ok().and_then(|s| s.trim().parse().ok());
        CohomOptions { certificate: None, start: None, max_degree }
    }
}

impl CohomOptions {
    pub fn with_certificate(c: Option<Laurent>) -> Self {
        CohomOptions { certificate: c, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Class {
    pub parity: u8,
    pub level: i32,
    pub rep: ModElem,
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Graded dimensions of the top homogeneous layer, per parity.
    pub graded: [Laurent; 2],
    /// Filtered dimensions of the full differential, per parity.
    pub filtered: [Laurent; 2],
    pub classes: Vec<Class>,
    /// Truncation used for the filtered computation, per parity.
    pub tops: [i32; 2],
    pub homogeneous: bool,
}

impl Cohomology {
    pub fn total_dim(&self) -> usize {
        self.classes.len()
    }

    pub fn filtered_total(&self) -> Laurent {
        &self.filtered[0] + &self.filtered[1]
    }

    /// Parity carrying every class, when there is one.
    pub fn concentrated_parity(&self) -> Option<u8> {
        match (self.filtered[0].is_zero(), self.filtered[1].is_zero()) {
            (false, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }
}

struct RankCache<'a> {
    model: &'a FreeModel,
    monos: Monos,
    ranks: HashMap<(u8, i32), usize>,
    sizes: HashMap<(u8, i32), usize>,
}

impl<'a> RankCache<'a> {
    fn new(model: &'a FreeModel) -> Self {
        RankCache { model, monos: Monos::new(model), ranks: HashMap::new(), sizes: HashMap::new() }
    }

    /// (dim C^p_D, rank of d on C^p_D) for a homogeneous model.
    fn get(&mut self, p: u8, deg: i32) -> (usize, usize) {
        if let (Some(&s), Some(&r)) = (self.sizes.get(&(p, deg)), self.ranks.get(&(p, deg))) {
            return (s, r);
        }
        let sp = Space::build(self.model, &mut self.monos, p, deg, deg);
        let mut idx = DynIndex::default();
        let mut ech = Echelon::new(false);
        for (g, m) in &sp.coords {
            let v = image(self.model, *g, m, &mut |t, mm| Some(idx.get(t, mm))).unwrap();
            if !v.is_empty() {
                ech.insert(&v, 0);
            }
        }
        self.sizes.insert((p, deg), sp.len());
        self.ranks.insert((p, deg), ech.len());
        (sp.len(), ech.len())
    }

    fn h(&mut self, p: u8, deg: i32) -> i64 {
        let raise = self.model.n as i32 + 1;
        let (size, rank_out) = self.get(p, deg);
        let (_, rank_in) = self.get(1 - p, deg - raise);
        size as i64 - rank_out as i64 - rank_in as i64
    }
}

fn default_start(model: &FreeModel) -> i32 {
    let n = model.n as i32;
    model.max_shift() + 2 * n * model.vars.len() as i32 + 2 * (n + 1)
}

/// Graded dimensions of a homogeneous model, by scanning degrees until the
/// certificate is met or two successive truncations agree.
pub fn graded_dims(model: &FreeModel, opts: &CohomOptions) -> Result<[Laurent; 2]> {
    let n = model.n as i32;
    let step = 2 * (n + 1);
    let start = opts.start.unwrap_or_else(|| default_start(model));
    let cap = opts.max_degree.unwrap_or(start + 6 * step).max(start);
    let mut rc = RankCache::new(model);
    let mut dims = [Laurent::zero(), Laurent::zero()];
    let mut deg = model.min_shift();
    let mut last_new = deg - 1;
    let mut bound = start;
    loop {
        for p in 0..2u8 {
            let h = rc.h(p, deg);
            if h < 0 {
                return Err(Error::TruncationUnstable(format!("negative dimension at degree {deg}")));
            }
            if h > 0 {
                dims[p as usize].add_term(deg, h);
                last_new = deg;
            }
        }
        let total = &dims[0] + &dims[1];
        if let Some(cert) = &opts.certificate {
            if total.total() == cert.total() {
                if &total != cert {
                    return Err(Error::DegreeMismatch(format!("computed {total}, certificate {cert}")));
                }
                return Ok(dims);
            }
            if total.total() > cert.total() {
                return Err(Error::DegreeMismatch(format!("computed more than certificate {cert}")));
            }
            if deg >= cap {
                return Err(Error::TruncationUnstable(format!("reached degree {cap} with {total}, certificate {cert}")));
            }
        } else if deg >= bound + step {
            if last_new <= bound {
                return Ok(dims);
            }
            bound += step;
            if bound > cap {
                return Err(Error::TruncationUnstable(format!("classes keep appearing up to degree {deg}")));
            }
        }
        deg += 1;
    }
}

/// Filtered classes in parity t, with all representatives of degree ≤ top.
/// Boundaries in F^top are d(F^{top−n−1}); this is exact when the top layer
/// has no cohomology in parity t+1, or when the model is homogeneous.
fn filtered_classes(model: &FreeModel, t: u8, top: i32) -> Result<Vec<Class>> {
    let raise = model.n as i32 + 1;
    let mut monos = Monos::new(model);
    let lo = model.min_shift();
    let sp = Space::build(model, &mut monos, t, lo, top);
    let mut idx = DynIndex::default();
    let cols: Vec<SVec> = sp.coords.iter().map(|(g, m)| image(model, *g, m, &mut |tg, mm| Some(idx.get(tg, mm))).unwrap()).collect();
    let z = kernel(&cols);
    let sb = Space::build(model, &mut monos, 1 - t, lo, top - raise);
    let mut ech = Echelon::new(false);
    for (g, m) in &sb.coords {
        let v = image(model, *g, m, &mut |tg, mm| sp.index.get(&(tg, mm)).copied())
            .ok_or_else(|| Error::NotFiltered("differential raises degree beyond n+1".into()))?;
        if !v.is_empty() {
            ech.insert(&v, 0);
        }
    }
    let mut out = Vec::new();
    for v in z {
        if let Inserted::Pivot(id) = ech.insert(&v, 0) {
            let row = ech.row(id);
            out.push(Class { parity: t, level: sp.degs[row[0].0], rep: sp.to_elem(row) });
        }
    }
    out.sort_by_key(|c| c.level);
    Ok(out)
}

pub fn cohomology(model: &FreeModel, opts: &CohomOptions) -> Result<Cohomology> {
    let top = model.top_layer();
    let homogeneous = model.is_homogeneous();
    let graded = graded_dims(&top, opts)?;
    let parities: Vec<u8> = if homogeneous {
        (0..2u8).filter(|&p| !graded[p as usize].is_zero()).collect()
    } else {
        match (graded[0].is_zero(), graded[1].is_zero()) {
            (true, true) => vec![],
            (false, true) => vec![0],
            (true, false) => vec![1],
            (false, false) => return Err(Error::NotConcentrated),
        }
    };
    let mut classes = Vec::new();
    let mut filtered = [Laurent::zero(), Laurent::zero()];
    let mut tops = [0, 0];
    for p in parities {
        let t = graded[p as usize].max_exp().unwrap();
        tops[p as usize] = t;
        let cs = filtered_classes(model, p, t)?;
        filtered[p as usize] = Laurent::from_levels(cs.iter().map(|c| c.level));
        if filtered[p as usize] != graded[p as usize] {
            return Err(Error::TruncationUnstable(format!(
                "filtered {} differs from graded {} in parity {p}",
                filtered[p as usize], graded[p as usize]
            )));
        }
        classes.extend(cs);
    }
    Ok(Cohomology { graded, filtered, classes, tops, homogeneous })
}

/// Expresses cocycles of one parity in the class basis modulo boundaries.
#[derive(Clone, Debug)]
pub struct Reducer {
    parity: u8,
    bound: i32,
    space: Space,
    ech: Echelon,
    /// echelon row id → the row as a combination of class indices
    rep_rows: HashMap<usize, SVec>,
    reps: Vec<(usize, ModElem)>,
}

impl Reducer {
    /// `classes` are (class index, representative) pairs of this parity.
    pub fn new(model: &FreeModel, parity: u8, reps: Vec<(usize, ModElem)>, bound: i32) -> Result<Reducer> {
        let mut r = Reducer { parity, bound, space: Space { coords: vec![], degs: vec![], index: HashMap::new() }, ech: Echelon::new(false), rep_rows: HashMap::new(), reps };
        r.rebuild(model, bound)?;
        Ok(r)
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    fn rebuild(&mut self, model: &FreeModel, bound: i32) -> Result<()> {
        let raise = model.n as i32 + 1;
        let mut monos = Monos::new(model);
        let lo = model.min_shift();
        let sp = Space::build(model, &mut monos, self.parity, lo, bound);
        let sb = Space::build(model, &mut monos, 1 - self.parity, lo, bound - raise);
        let mut ech = Echelon::new(false);
        for (g, m) in &sb.coords {
            let v = image(model, *g, m, &mut |tg, mm| sp.index.get(&(tg, mm)).copied())
                .ok_or_else(|| Error::NotFiltered("differential raises degree beyond n+1".into()))?;
            if !v.is_empty() {
                ech.insert(&v, 0);
            }
        }
        let mut rep_rows = HashMap::new();
        for (ci, rep) in &self.reps {
            let v = sp.to_svec(rep).ok_or_else(|| Error::DegreeBoundViolated("representative above bound".into()))?;
            let (_, used) = ech.reduce(&v, false);
            let mut combo: SVec = vec![(*ci, Coeff::one())];
            for (r, c) in &used {
                if let Some(rc) = rep_rows.get(r) {
                    combo = sv_axpy(&combo, &(-c), rc);
                }
            }
            match ech.insert(&v, 0) {
                Inserted::Pivot(id) => {
                    rep_rows.insert(id, combo);
                }
                Inserted::Dependent(_) => return Err(Error::TruncationUnstable("representative became a boundary".into())),
            }
        }
        self.space = sp;
        self.ech = ech;
        self.rep_rows = rep_rows;
        self.bound = bound;
        Ok(())
    }

    fn ensure(&mut self, model: &FreeModel, e: &ModElem) -> Result<()> {
        if let Some(d) = model.degree(e) {
            if d > self.bound {
                self.rebuild(model, d)?;
            }
        }
        Ok(())
    }

    /// Coefficients of the class of a cocycle `e` on the representatives.
    pub fn express(&mut self, model: &FreeModel, e: &ModElem) -> Result<Vec<(usize, Coeff)>> {
        self.ensure(model, e)?;
        let v = self.space.to_svec(e).ok_or_else(|| Error::DegreeBoundViolated("element outside truncation".into()))?;
        match self.ech.express(&v) {
            Some(used) => {
                let mut out: SVec = Vec::new();
                for (row, c) in used {
                    if let Some(rc) = self.rep_rows.get(&row) {
                        out = sv_axpy(&out, &c, rc);
                    }
                }
                Ok(out)
            }
            None => Err(Error::NotCocycle),
        }
    }

    /// Lowest filtration level of the class of `e` (None for a coboundary).
    pub fn level(&mut self, model: &FreeModel, e: &ModElem) -> Result<Option<i32>> {
        self.ensure(model, e)?;
        let mut v = self.space.to_svec(e).ok_or_else(|| Error::DegreeBoundViolated("element outside truncation".into()))?;
        while let Some((idx, c)) = v.first().cloned() {
            match self.ech.row_with_pivot(idx) {
                Some(id) if !self.rep_rows.contains_key(&id) => {
                    let row = self.ech.row(id);
                    let f = &c / &row[0].1;
                    v = sv_axpy(&v, &(-&f), row);
                }
                _ => return Ok(Some(self.space.degs[idx])),
            }
        }
        Ok(None)
    }
}

/// The minimal k with the class of `e` in F^k, or None for a coboundary.
pub fn filtration_level(model: &FreeModel, coh: &Cohomology, e: &ModElem) -> Result<Option<i32>> {
    if !model.apply_d(e).is_empty() {
        return Err(Error::NotCocycle);
    }
    if e.is_empty() {
        return Ok(None);
    }
    let parities: Vec<u8> = e.keys().map(|g| model.gens[*g].parity).collect();
    let p = parities[0];
    if parities.iter().any(|&q| q != p) {
        return Err(Error::NotCocycle);
    }
    let reps = coh.classes.iter().enumerate().filter(|(_, c)| c.parity == p).map(|(i, c)| (i, c.rep.clone())).collect();
    let bound = model.degree(e).unwrap().max(coh.tops[p as usize]);
    let mut r = Reducer::new(model, p, reps, bound)?;
    r.level(model, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::x;
    use crate::mf::koszul::KoszulRow;
    use crate::mf::KoszulMF;

    #[test]
    fn zero_factorization_keeps_both_generators() {
        let m = KoszulMF { n: 2, rows: vec![KoszulRow::with_degree(Poly::zero(), Poly::zero(), 0)], shift: 0, angle: 0 };
        let model = FreeModel::from_mf(&m.explicit());
        let c = cohomology(&model, &CohomOptions::default()).unwrap();
        assert_eq!(c.total_dim(), 2);
    }

    #[test]
    fn one_marking_circle() {
        let p = crate::algebra::Potential::sl(2).unwrap();
        let row = KoszulRow::with_degree(p.derivative_in(0), Poly::zero(), 4);
        let m = KoszulMF::new(2, vec![row]).unwrap();
        let model = FreeModel::from_mf(&m.explicit());
        let c = cohomology(&model, &CohomOptions::default()).unwrap();
        assert_eq!(c.filtered[1].to_string(), "q^-1 + q");
        let one: ModElem = [(1usize, Poly::one())].into_iter().collect();
        assert_eq!(filtration_level(&model, &c, &one).unwrap(), Some(-1));
        let xe: ModElem = [(1usize, x(1))].into_iter().collect();
        assert_eq!(filtration_level(&model, &c, &xe).unwrap(), Some(1));
        let xx: ModElem = [(1usize, &x(1) * &x(1))].into_iter().collect();
        assert_eq!(filtration_level(&model, &c, &xx).unwrap(), None);
    }
}
