//! Excluding variables from a Koszul factorization one row at a time.
//!
//! Each step picks a row whose b is a constant times a polynomial monic in
//! a free variable, drops the row and passes to the quotient ring. The
//! quotient map F and a cocycle lift J back to the original factorization
//! are kept so that maps computed on the original can be read off on the
//! small model.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Coeff, Poly};
use crate::error::Result;

use super::engine::{cohomology, CohomOptions, Cohomology, FreeModel, GenInfo, ModElem};
use super::koszul::{row_sign, KoszulMF};
use super::ring::{Relation, Ring};

/// Elements of a Koszul factorization keyed by generator mask.
pub type Elem = BTreeMap<u64, Poly>;

pub fn elem_add(a: &mut Elem, k: u64, p: Poly) {
    if p.is_zero() {
        return;
    }
    let v = match a.remove(&k) {
        Some(old) => &old + &p,
        None => p,
    };
    if !v.is_zero() {
        a.insert(k, v);
    }
}

/// The Koszul differential on an element over the full polynomial ring.
pub fn apply_d(mf: &KoszulMF, e: &Elem) -> Elem {
    let sg = angle_sign(mf);
    let mut out = Elem::new();
    for (mask, p) in e {
        for (i, r) in mf.rows.iter().enumerate() {
            let c = if mask >> i & 1 == 1 { &r.b } else { &r.a };
            if c.is_zero() {
                continue;
            }
            let v = c * p;
            elem_add(&mut out, mask ^ (1 << i), if row_sign(*mask, i) * sg < 0 { -&v } else { v });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Step {
    pub row: usize,
    pub var: usize,
    /// b of the row divided by `unit`, low → high in `var`.
    pub monic: Vec<Poly>,
    pub unit: Coeff,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub mf: KoszulMF,
    pub steps: Vec<Step>,
    /// rings[s] is the ring after s steps.
    pub rings: Vec<Ring>,
    /// rows[s][i] is row i reduced in rings[s]; None once removed.
    pub rows: Vec<Vec<Option<(Poly, Poly)>>>,
}

fn angle_sign(mf: &KoszulMF) -> i32 {
    if mf.angle % 2 == 1 {
        -1
    } else {
        1
    }
}

impl Reduction {
    pub fn new(mf: &KoszulMF) -> Reduction {
        let n2 = 2 * mf.n as i32 + 2;
        let mut ring = Ring::new();
        let mut rows: Vec<Option<(Poly, Poly)>> = mf.rows.iter().map(|r| Some((r.a.clone(), r.b.clone()))).collect();
        let mut red = Reduction { mf: mf.clone(), steps: vec![], rings: vec![ring.clone()], rows: vec![rows.clone()] };
        loop {
            // (degree in var, row, var)
            let mut best: Option<(u8, usize, usize)> = None;
            for (i, r) in rows.iter().enumerate() {
                let Some((_, b)) = r else { continue };
                if b.is_zero() || b.is_constant() {
                    continue;
                }
                match b.degree() {
                    Some(db) if b.is_homogeneous() && db + mf.rows[i].deg_a == n2 => {}
                    _ => continue,
                }
                for v in b.vars() {
                    if !ring.is_free(v) {
                        continue;
                    }
                    let cs = b.coeffs_in(v);
                    let d = (cs.len() - 1) as u8;
                    if !cs[d as usize].is_constant() {
                        continue;
                    }
                    let cand = (d, i, v);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
            let Some((d, i, v)) = best else { break };
            let b = rows[i].as_ref().unwrap().1.clone();
            let cs = b.coeffs_in(v);
            let unit = cs[d as usize].constant_term();
            let inv = unit.inv();
            let monic: Vec<Poly> = cs.iter().map(|c| c.scale(&inv)).collect();
            ring = if d == 1 {
                ring.with_sub(v, &(-&monic[0]))
            } else {
                let lower = monic[..d as usize].iter().map(|c| -c).collect();
                ring.with_rel(Relation { var: v, deg: d, lower })
            };
            red.steps.push(Step { row: i, var: v, monic, unit });
            rows[i] = None;
            for r in rows.iter_mut().flatten() {
                r.0 = ring.reduce(&r.0);
                r.1 = ring.reduce(&r.1);
            }
            red.rings.push(ring.clone());
            red.rows.push(rows.clone());
        }
        red
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_ring(&self) -> &Ring {
        self.rings.last().unwrap()
    }

    pub fn active_rows(&self) -> Vec<usize> {
        self.rows.last().unwrap().iter().enumerate().filter(|(_, r)| r.is_some()).map(|(i, _)| i).collect()
    }

    fn removed_mask(&self) -> u64 {
        self.steps.iter().fold(0, |m, s| m | 1 << s.row)
    }

    /// The differential at stage s on an element supported on live rows.
    pub fn d_at(&self, s: usize, e: &Elem) -> Elem {
        let ring = &self.rings[s];
        let sg = angle_sign(&self.mf);
        let mut out = Elem::new();
        for (mask, p) in e {
            for (i, r) in self.rows[s].iter().enumerate() {
                let Some((a, b)) = r else { continue };
                let c = if mask >> i & 1 == 1 { b } else { a };
                if c.is_zero() {
                    continue;
                }
                let v = ring.mul(p, c);
                let v = if row_sign(*mask, i) * sg < 0 { -&v } else { v };
                elem_add(&mut out, mask ^ (1 << i), v);
            }
        }
        out
    }

    /// Quotient map from the original factorization to the final stage.
    pub fn project(&self, e: &Elem) -> Elem {
        let removed = self.removed_mask();
        let ring = self.final_ring();
        let mut out = Elem::new();
        for (mask, p) in e {
            if mask & removed == 0 {
                elem_add(&mut out, *mask, ring.reduce(p));
            }
        }
        out
    }

    /// Lifts a final-stage cocycle to an original cocycle with the same
    /// projection.
    pub fn lift(&self, e: &Elem) -> Result<Elem> {
        let mut beta = e.clone();
        for s in (1..=self.steps.len()).rev() {
            let step = &self.steps[s - 1];
            let ring = &self.rings[s - 1];
            let y = self.d_at(s - 1, &beta);
            let inv = step.unit.inv();
            let sg = angle_sign(&self.mf);
            let mut gamma = Elem::new();
            for (mask, p) in &y {
                if mask >> step.row & 1 == 1 {
                    continue;
                }
                let q = ring.divide_monic(p, step.var, &step.monic)?.scale(&inv);
                let target = mask | 1 << step.row;
                let sign = row_sign(target, step.row) * sg;
                elem_add(&mut gamma, target, if sign < 0 { -&q } else { q });
            }
            for (k, p) in gamma {
                elem_add(&mut beta, k, -&p);
            }
        }
        Ok(beta)
    }

    pub fn model(&self) -> ReducedModel {
        let active = self.active_rows();
        let ring = self.final_ring().clone();
        let mut masks = Vec::with_capacity(1 << active.len());
        for sub in 0..(1u64 << active.len()) {
            let m = active.iter().enumerate().filter(|(j, _)| sub >> j & 1 == 1).fold(0u64, |m, (_, &i)| m | 1 << i);
            masks.push(m);
        }
        masks.sort_by_key(|m| (self.mf.gen_parity(*m), *m));
        let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let gens = masks.iter().map(|m| GenInfo { key: *m, parity: self.mf.gen_parity(*m), shift: self.mf.gen_shift(*m) }).collect();
        let d = masks
            .iter()
            .map(|m| {
                let single: Elem = [(*m, Poly::one())].into_iter().collect();
                self.d_at(self.steps.len(), &single).into_iter().map(|(k, p)| (index[&k], p)).collect()
            })
            .collect();
        let mut vars = std::collections::BTreeSet::new();
        for r in &self.mf.rows {
            vars.extend(r.a.vars());
            vars.extend(r.b.vars());
        }
        let vars = vars.into_iter().filter(|v| !ring.is_substituted(*v)).collect();
        ReducedModel { model: FreeModel { n: self.mf.n, ring, vars, gens, d }, masks, index }
    }
}

/// The final-stage free model with its mask bookkeeping.
#[derive(Clone, Debug)]
pub struct ReducedModel {
    pub model: FreeModel,
    pub masks: Vec<u64>,
    pub index: HashMap<u64, usize>,
}

impl ReducedModel {
    pub fn to_mod(&self, e: &Elem) -> ModElem {
        e.iter().filter_map(|(k, p)| self.index.get(k).map(|i| (*i, p.clone()))).collect()
    }

    pub fn to_elem(&self, e: &ModElem) -> Elem {
        e.iter().map(|(i, p)| (self.masks[*i], p.clone())).collect()
    }
}

/// Cohomology of a Koszul factorization, with the data to move cocycles
/// between it and its reduced model.
#[derive(Clone, Debug)]
pub struct KoszulCohomology {
    pub reduction: Reduction,
    pub reduced: ReducedModel,
    pub coh: Cohomology,
}

impl KoszulCohomology {
    pub fn compute(mf: &KoszulMF, opts: &CohomOptions) -> Result<KoszulCohomology> {
        let reduction = Reduction::new(mf);
        let reduced = reduction.model();
        let coh = cohomology(&reduced.model, opts)?;
        Ok(KoszulCohomology { reduction, reduced, coh })
    }

    pub fn dim(&self) -> usize {
        self.coh.total_dim()
    }

    /// Representative of class i as an original cocycle.
    pub fn lifted_rep(&self, i: usize) -> Result<Elem> {
        self.reduction.lift(&self.reduced.to_elem(&self.coh.classes[i].rep))
    }

    /// An original element brought to the reduced model.
    pub fn project(&self, e: &Elem) -> ModElem {
        self.reduced.to_mod(&self.reduction.project(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::x;
    use crate::algebra::Potential;
    use crate::mf::koszul::KoszulRow;

    fn arc_row(p: &Potential, h: usize, t: usize) -> KoszulRow {
        let pi = crate::algebra::derived::pi_transfer(p, h - 1, t - 1);
        let deg = 2 * p.n() as i32;
        KoszulRow::with_degree(pi, &x(h) - &x(t), deg)
    }

    #[test]
    fn two_arc_circle_reduces_to_one_row() {
        let p = Potential::sl(3).unwrap();
        let m = KoszulMF::new(3, vec![arc_row(&p, 2, 1), arc_row(&p, 1, 2)]).unwrap();
        let red = Reduction::new(&m);
        assert_eq!(red.len(), 1);
        let kc = KoszulCohomology::compute(&m, &CohomOptions::default()).unwrap();
        assert_eq!(kc.dim(), 3);
        for i in 0..3 {
            let lifted = kc.lifted_rep(i).unwrap();
            assert!(red.d_at(0, &lifted).is_empty());
            assert_eq!(kc.project(&lifted), kc.coh.classes[i].rep);
        }
    }
}
