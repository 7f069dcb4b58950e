use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{Coeff, Poly};
use crate::error::{Error, Result};

/// A free generator: ℤ₂-degree, quantum shift and provenance. `key` encodes
/// the Koszul row bits the generator came from; tensor products pack keys
/// side by side so generator order is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedGen {
    pub parity: u8,
    pub shift: i32,
    pub key: u64,
    pub label: String,
}

pub type PolyMatrix = Vec<Vec<Poly>>;

/// M⁰ --d0--> M¹ --d1--> M⁰ with d1·d0 = d0·d1 = w. Matrices are indexed
/// `[target][source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub n: usize,
    pub w: Poly,
    pub gens0: Vec<GradedGen>,
    pub gens1: Vec<GradedGen>,
    pub d0: PolyMatrix,
    pub d1: PolyMatrix,
    pub key_bits: u32,
}

pub fn zero_matrix(rows: usize, cols: usize) -> PolyMatrix {
    vec![vec![Poly::zero(); cols]; rows]
}

pub fn identity(k: usize) -> PolyMatrix {
    let mut m = zero_matrix(k, k);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Poly::one();
    }
    m
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zero_matrix(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_sub(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn mat_scale(a: &PolyMatrix, c: &Coeff) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect()
}

pub fn transpose(a: &PolyMatrix, rows: usize, cols: usize) -> PolyMatrix {
    // `a` is rows × cols; passing the shape keeps empty matrices honest.
    let mut t = zero_matrix(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            t[j][i] = a[i][j].clone();
        }
    }
    t
}

pub fn is_scalar_identity(m: &PolyMatrix, w: &Poly) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, e)| if i == j { e == w } else { e.is_zero() }))
}

/// Filtration degree bound of a matrix of maps from `src` to `tgt`:
/// max over nonzero entries of deg(entry) + shift(target) − shift(source).
pub fn map_degree(m: &PolyMatrix, src: &[GradedGen], tgt: &[GradedGen]) -> Option<i32> {
    let mut best: Option<i32> = None;
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let Some(d) = e.degree() {
                let v = d + tgt[i].shift - src[j].shift;
                best = Some(best.map_or(v, |b: i32| b.max(v)));
            }
        }
    }
    best
}

impl MatrixFactorization {
    pub fn rank(&self) -> usize {
        self.gens0.len() + self.gens1.len()
    }

    /// Checks d1·d0 = d0·d1 = w·id.
    pub fn check_d2(&self) -> bool {
        is_scalar_identity(&mat_mul(&self.d1, &self.d0), &self.w) && is_scalar_identity(&mat_mul(&self.d0, &self.d1), &self.w)
    }

    /// Largest filtration raise of either differential.
    pub fn differential_degree(&self) -> Option<i32> {
        let a = map_degree(&self.d0, &self.gens0, &self.gens1);
        let b = map_degree(&self.d1, &self.gens1, &self.gens0);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    /// All generators (parity 0 first) with the differential as sparse
    /// columns: `cols[j]` lists `(i, entry)` with d(gen j) = Σ entry·gen i.
    pub fn unified(&self) -> (Vec<GradedGen>, Vec<Vec<(usize, Poly)>>) {
        let k0 = self.gens0.len();
        let mut gens = self.gens0.clone();
        gens.extend(self.gens1.iter().cloned());
        let mut cols = vec![Vec::new(); gens.len()];
        for j in 0..k0 {
            for (i, row) in self.d0.iter().enumerate() {
                if !row[j].is_zero() {
                    cols[j].push((k0 + i, row[j].clone()));
                }
            }
        }
        for j in 0..self.gens1.len() {
            for (i, row) in self.d1.iter().enumerate() {
                if !row[j].is_zero() {
                    cols[k0 + j].push((i, row[j].clone()));
                }
            }
        }
        (gens, cols)
    }

    /// Rebuilds from unified data; generators are sorted by (parity, key).
    pub fn from_unified(n: usize, w: Poly, gens: Vec<GradedGen>, cols: Vec<Vec<(usize, Poly)>>, key_bits: u32) -> Self {
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| (gens[i].parity, gens[i].key, gens[i].label.clone()));
        let mut pos = vec![(0u8, 0usize); gens.len()];
        let (mut g0, mut g1) = (Vec::new(), Vec::new());
        for &i in &order {
            if gens[i].parity == 0 {
                pos[i] = (0, g0.len());
                g0.push(gens[i].clone());
            } else {
                pos[i] = (1, g1.len());
                g1.push(gens[i].clone());
            }
        }
        let mut d0 = zero_matrix(g1.len(), g0.len());
        let mut d1 = zero_matrix(g0.len(), g1.len());
        for (j, col) in cols.iter().enumerate() {
            let (pj, sj) = pos[j];
            for (i, e) in col {
                let (pi, si) = pos[*i];
                debug_assert_ne!(pi, pj, "differential must change parity");
                if pj == 0 {
                    d0[si][sj] = &d0[si][sj] + e;
                } else {
                    d1[si][sj] = &d1[si][sj] + e;
                }
            }
        }
        MatrixFactorization { n, w, gens0: g0, gens1: g1, d0, d1, key_bits }
    }

    /// The rank-1 factorization R with w = 0 and zero differential.
    pub fn unit(n: usize) -> Self {
        MatrixFactorization {
            n,
            w: Poly::zero(),
            gens0: vec![GradedGen { parity: 0, shift: 0, key: 0, label: "1".into() }],
            gens1: Vec::new(),
            d0: Vec::new(),
            d1: zero_matrix(1, 0),
            key_bits: 0,
        }
    }

    /// M ⊗ N with d(m⊗n) = (−1)^{|n|} dm⊗n + m⊗dn.
    pub fn tensor(&self, other: &Self) -> Self {
        let (ga, da) = self.unified();
        let (gb, db) = other.unified();
        let mut gens = Vec::with_capacity(ga.len() * gb.len());
        for a in &ga {
            for b in &gb {
                gens.push(GradedGen {
                    parity: (a.parity + b.parity) % 2,
                    shift: a.shift + b.shift,
                    key: a.key | (b.key << self.key_bits),
                    label: format!("{}⊗{}", a.label, b.label),
                });
            }
        }
        let nb = gb.len();
        let mut cols = vec![Vec::new(); gens.len()];
        for (ia, a) in ga.iter().enumerate() {
            let _ = a;
            for (ib, b) in gb.iter().enumerate() {
                let j = ia * nb + ib;
                let sign = if b.parity == 1 { -1 } else { 1 };
                for (ta, e) in &da[ia] {
                    cols[j].push((ta * nb + ib, if sign < 0 { -e } else { e.clone() }));
                }
                for (tb, e) in &db[ib] {
                    cols[j].push((ia * nb + tb, e.clone()));
                }
            }
        }
        let n = self.n.max(other.n);
        Self::from_unified(n, &self.w + &other.w, gens, cols, self.key_bits + other.key_bits)
    }

    /// M⟨1⟩: swap the two halves and negate both differentials.
    pub fn shift_angle(&self) -> Self {
        let flip = |g: &GradedGen| GradedGen { parity: 1 - g.parity, ..g.clone() };
        MatrixFactorization {
            n: self.n,
            w: self.w.clone(),
            gens0: self.gens1.iter().map(flip).collect(),
            gens1: self.gens0.iter().map(flip).collect(),
            d0: mat_scale(&self.d1, &Coeff::int(-1)),
            d1: mat_scale(&self.d0, &Coeff::int(-1)),
            key_bits: self.key_bits,
        }
    }

    /// M{k}.
    pub fn shift_brace(&self, k: i32) -> Self {
        let sh = |g: &GradedGen| GradedGen { shift: g.shift + k, ..g.clone() };
        MatrixFactorization {
            gens0: self.gens0.iter().map(sh).collect(),
            gens1: self.gens1.iter().map(sh).collect(),
            ..self.clone()
        }
    }

    /// M*: (M⁰)* --(d1)ᵗ--> (M¹)* --(d0)ᵗ--> (M⁰)*, shifts negated.
    pub fn dual(&self) -> Self {
        let neg = |g: &GradedGen| GradedGen { shift: -g.shift, ..g.clone() };
        let (k0, k1) = (self.gens0.len(), self.gens1.len());
        MatrixFactorization {
            n: self.n,
            w: self.w.clone(),
            gens0: self.gens0.iter().map(neg).collect(),
            gens1: self.gens1.iter().map(neg).collect(),
            d0: transpose(&self.d1, k0, k1),
            d1: transpose(&self.d0, k1, k0),
            key_bits: self.key_bits,
        }
    }

    /// M_-: negate d0; the potential becomes −w.
    pub fn minus(&self) -> Self {
        MatrixFactorization { w: -&self.w, d0: mat_scale(&self.d0, &Coeff::int(-1)), ..self.clone() }
    }

    /// M_• = (M*)_-.
    pub fn bullet(&self) -> Self {
        self.dual().minus()
    }

    /// M with (c·d0, c⁻¹·d1), plus the witness isomorphism (c⁻¹·id, id)
    /// from M to the result.
    pub fn scale_differential(&self, c: &Coeff) -> Result<(Self, MfMap)> {
        if c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let ci = c.inv();
        let out = MatrixFactorization { d0: mat_scale(&self.d0, c), d1: mat_scale(&self.d1, &ci), ..self.clone() };
        let witness = MfMap { f0: mat_scale(&identity(self.gens0.len()), &ci), f1: identity(self.gens1.len()) };
        Ok((out, witness))
    }

    /// Twist by square-zero filtered endomorphisms H0, H1:
    /// d_i' = (id − H_{i+1})·d_i·(id + H_i). Returns the new factorization and
    /// the isomorphism (id + H0, id + H1) from it back to M.
    pub fn general_twist(&self, h0: &PolyMatrix, h1: &PolyMatrix) -> Result<(Self, MfMap)> {
        let (k0, k1) = (self.gens0.len(), self.gens1.len());
        let sq0 = mat_mul(h0, h0);
        let sq1 = mat_mul(h1, h1);
        if !is_scalar_identity(&sq0, &Poly::zero()) || !is_scalar_identity(&sq1, &Poly::zero()) {
            return Err(Error::NotSquareZero);
        }
        for (h, g) in [(h0, &self.gens0), (h1, &self.gens1)] {
            if let Some(d) = map_degree(h, g, g) {
                if d > 0 {
                    return Err(Error::NotFiltered(format!("twist raises filtration by {d}")));
                }
            }
        }
        let i0 = identity(k0);
        let i1 = identity(k1);
        let d0 = mat_mul(&mat_mul(&mat_sub(&i1, h1), &self.d0), &mat_add(&i0, h0));
        let d1 = mat_mul(&mat_mul(&mat_sub(&i0, h0), &self.d1), &mat_add(&i1, h1));
        let out = MatrixFactorization { d0, d1, ..self.clone() };
        let witness = MfMap { f0: mat_add(&i0, h0), f1: mat_add(&i1, h1) };
        Ok((out, witness))
    }

    /// Hom(M, N) realised as N ⊗ M_•.
    pub fn hom_mf(m: &Self, n: &Self) -> Result<Self> {
        if m.w != n.w {
            return Err(Error::PotentialMismatch);
        }
        Ok(n.tensor(&m.bullet()))
    }

    /// Looks for a signed permutation of generators (matched by parity and
    /// key) carrying `self` onto `other`.
    pub fn signed_equivalent(&self, other: &Self) -> bool {
        if self.w != other.w || self.gens0.len() != other.gens0.len() || self.gens1.len() != other.gens1.len() {
            return false;
        }
        let (ga, da) = self.unified();
        let (gb, db) = other.unified();
        let index: HashMap<(u8, u64), usize> = gb.iter().enumerate().map(|(i, g)| ((g.parity, g.key), i)).collect();
        let mut perm = vec![0usize; ga.len()];
        for (i, g) in ga.iter().enumerate() {
            match index.get(&(g.parity, g.key)) {
                Some(&j) if gb[j].shift == g.shift => perm[i] = j,
                _ => return false,
            }
        }
        // Each nonzero entry forces s_i·s_j = ±1; propagate.
        let dense = |cols: &Vec<Vec<(usize, Poly)>>, map: &dyn Fn(usize) -> usize| {
            let mut m: HashMap<(usize, usize), Poly> = HashMap::new();
            for (j, col) in cols.iter().enumerate() {
                for (i, e) in col {
                    let k = (map(*i), map(j));
                    let v = m.remove(&k).map_or(e.clone(), |old| &old + e);
                    m.insert(k, v);
                }
            }
            m
        };
        let ma = dense(&da, &|i| perm[i]);
        let mb = dense(&db, &|i| i);
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); gb.len()];
        let keys: std::collections::BTreeSet<(usize, usize)> = ma.keys().chain(mb.keys()).copied().collect();
        for (i, j) in keys {
            let zero = Poly::zero();
            let a = ma.get(&(i, j)).unwrap_or(&zero);
            let b = mb.get(&(i, j)).unwrap_or(&zero);
            let s = if a == b {
                1
            } else if *a == -b {
                -1
            } else {
                return false;
            };
            adj[i].push((j, s));
            adj[j].push((i, s));
        }
        let mut sign: Vec<i8> = vec![0; gb.len()];
        for start in 0..gb.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, s) in &adj[u] {
                    let want = sign[u] * s;
                    if sign[v] == 0 {
                        sign[v] = want;
                        stack.push(v);
                    } else if sign[v] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Deterministic structured text record.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mf n={} w={}", self.n, self.w);
        for (tag, gens) in [("gens0", &self.gens0), ("gens1", &self.gens1)] {
            let items: Vec<String> = gens.iter().map(|g| format!("{}{{{}}}", g.label, g.shift)).collect();
            let _ = writeln!(s, "{tag}: {}", items.join(" "));
        }
        for (tag, m) in [("d0", &self.d0), ("d1", &self.d1)] {
            let _ = writeln!(s, "{tag}:");
            for row in m {
                let items: Vec<String> = row.iter().map(|e| e.to_text()).collect();
                let _ = writeln!(s, "  [{}]", items.join(", "));
            }
        }
        s
    }
}

/// A pair of matrices (f0: M⁰ → N⁰, f1: M¹ → N¹).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfMap {
    pub f0: PolyMatrix,
    pub f1: PolyMatrix,
}

impl MfMap {
    pub fn compose(&self, first: &MfMap) -> MfMap {
        MfMap { f0: mat_mul(&self.f0, &first.f0), f1: mat_mul(&self.f1, &first.f1) }
    }

    /// Even chain map check: f1·d0 = d0'·f0 and f0·d1 = d1'·f1.
    pub fn is_chain_map(&self, src: &MatrixFactorization, tgt: &MatrixFactorization) -> bool {
        mat_mul(&self.f1, &src.d0) == mat_mul(&tgt.d0, &self.f0) && mat_mul(&self.f0, &src.d1) == mat_mul(&tgt.d1, &self.f1)
    }

    pub fn is_identity(&self) -> bool {
        is_scalar_identity(&self.f0, &Poly::one()) && is_scalar_identity(&self.f1, &Poly::one())
    }

    /// Filtration degree of the map.
    pub fn degree(&self, src: &MatrixFactorization, tgt: &MatrixFactorization) -> Option<i32> {
        let a = map_degree(&self.f0, &src.gens0, &tgt.gens0);
        let b = map_degree(&self.f1, &src.gens1, &tgt.gens1);
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }
}
