//! Maps between Koszul factorizations that differ only in a contiguous
//! block of rows, extended by the identity elsewhere.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Poly;

use super::koszul::KoszulMF;
use super::matrix::PolyMatrix;
use super::model::{apply_d, elem_add, Elem};

pub type LocalFn = Arc<dyn Fn(u64, &Poly) -> Vec<(u64, Poly)> + Send + Sync>;

/// `f` acts on the local part of a generator mask. Rows before `start` are
/// shared; rows after the block are shared but shift by tgt_len − src_len.
#[derive(Clone)]
pub struct LocalMap {
    pub start: usize,
    pub src_len: usize,
    pub tgt_len: usize,
    /// Odd maps land in the target with ⟨1⟩ and satisfy F d = −d' F.
    pub odd: bool,
    pub f: LocalFn,
}

impl fmt::Debug for LocalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalMap(rows {}..+{} -> +{}, odd={})", self.start, self.src_len, self.tgt_len, self.odd)
    }
}

/// Local generator masks of a k-row block, split by parity, ascending.
pub fn local_gens(k: usize) -> [Vec<u64>; 2] {
    let mut out = [Vec::new(), Vec::new()];
    for m in 0..(1u64 << k) {
        out[(m.count_ones() % 2) as usize].push(m);
    }
    out
}

impl LocalMap {
    /// From the two matrices [target][source] on local generators:
    /// `m0` acts on even source generators, `m1` on odd ones.
    pub fn from_matrices(start: usize, src_len: usize, tgt_len: usize, odd: bool, m0: PolyMatrix, m1: PolyMatrix) -> LocalMap {
        let sg = local_gens(src_len);
        let tg = local_gens(tgt_len);
        let f = move |mask: u64, p: &Poly| -> Vec<(u64, Poly)> {
            let sp = (mask.count_ones() % 2) as usize;
            let tp = if odd { 1 - sp } else { sp };
            let si = sg[sp].iter().position(|m| *m == mask).unwrap();
            let mat = if sp == 0 { &m0 } else { &m1 };
            tg[tp]
                .iter()
                .enumerate()
                .filter(|(ti, _)| !mat[*ti][si].is_zero())
                .map(|(ti, tm)| (*tm, &mat[ti][si] * p))
                .collect()
        };
        LocalMap { start, src_len, tgt_len, odd, f: Arc::new(f) }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        let low_mask = (1u64 << self.start) - 1;
        let loc_mask = (1u64 << self.src_len) - 1;
        let mut out = Elem::new();
        for (mask, p) in e {
            let low = mask & low_mask;
            let loc = (mask >> self.start) & loc_mask;
            let high = mask >> (self.start + self.src_len);
            let neg = self.odd && high.count_ones() % 2 == 1;
            for (tl, q) in (self.f)(loc, p) {
                let tm = low | tl << self.start | high << (self.start + self.tgt_len);
                elem_add(&mut out, tm, if neg { -&q } else { q });
            }
        }
        out
    }

    /// Runs `self` first, then `next`.
    pub fn then(&self, next: &LocalMap) -> ComposedMap {
        ComposedMap(vec![self.clone(), next.clone()])
    }

    /// F d = ±d' F on every generator, with − for odd maps.
    pub fn is_chain_map(&self, src: &KoszulMF, tgt: &KoszulMF) -> bool {
        chain_check(src, tgt, self.odd, |e| self.apply(e))
    }
}

/// A sequence of local maps applied left to right.
#[derive(Clone, Debug)]
pub struct ComposedMap(pub Vec<LocalMap>);

impl ComposedMap {
    pub fn apply(&self, e: &Elem) -> Elem {
        self.0.iter().fold(e.clone(), |acc, m| m.apply(&acc))
    }

    pub fn odd(&self) -> bool {
        self.0.iter().filter(|m| m.odd).count() % 2 == 1
    }
}

pub fn chain_check(src: &KoszulMF, tgt: &KoszulMF, odd: bool, f: impl Fn(&Elem) -> Elem) -> bool {
    for mask in 0..(1u64 << src.rows.len()) {
        let e: Elem = [(mask, Poly::one())].into_iter().collect();
        let lhs = f(&apply_d(src, &e));
        let mut rhs = apply_d(tgt, &f(&e));
        if odd {
            rhs = rhs.into_iter().map(|(k, p)| (k, -&p)).collect();
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
