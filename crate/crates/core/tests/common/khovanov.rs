//! Independent Khovanov and Lee computations straight from PD text, over Q
//! with dense elimination. Shares nothing with the library beyond the
//! fixture text.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

pub struct Pd {
    pub quads: Vec<[i64; 4]>,
    pub circles: usize,
}

pub fn parse(text: &str) -> Pd {
    let mut quads = Vec::new();
    let mut circles = 0;
    let clean: String = text.lines().map(|l| l.split('#').next().unwrap()).collect::<Vec<_>>().join(" ");
    for tok in clean.split_whitespace() {
        if tok == "O" {
            circles += 1;
            continue;
        }
        let inner = tok.trim_start_matches("X[").trim_end_matches(']');
        let v: Vec<i64> = inner.split(',').map(|s| s.trim().parse().unwrap()).collect();
        quads.push([v[0], v[1], v[2], v[3]]);
    }
    Pd { quads, circles }
}

/// Crossing signs from a walk along the strands: a label leaves one
/// crossing and enters another, the under-strand runs a → c, and a
/// component met only as over-strands is oriented arbitrarily. Positive
/// when the over-strand runs d → b.
pub fn signs(quads: &[[i64; 4]]) -> Vec<i32> {
    // entering[c][s]: Some(true) if label at slot s enters crossing c
    let mut entering: Vec<[Option<bool>; 4]> = quads.iter().map(|_| [Some(true), None, Some(false), None]).collect();
    let occ = |l: i64| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (c, q) in quads.iter().enumerate() {
            for (s, &x) in q.iter().enumerate() {
                if x == l {
                    v.push((c, s));
                }
            }
        }
        v
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..quads.len() {
                for s in 0..4 {
                    let Some(e) = entering[c][s] else { continue };
                    for (c2, s2) in occ(quads[c][s]) {
                        if (c2, s2) != (c, s) && entering[c2][s2].is_none() {
                            entering[c2][s2] = Some(!e);
                            changed = true;
                        }
                    }
                    if s % 2 == 1 && entering[c][4 - s].is_none() {
                        entering[c][4 - s] = Some(!e);
                        changed = true;
                    }
                }
            }
        }
        match (0..quads.len()).find(|&c| entering[c][1].is_none()) {
            Some(c) => entering[c][1] = Some(false),
            None => break,
        }
    }
    entering.iter().map(|e| if e[3] == Some(true) { 1 } else { -1 }).collect()
}

fn find(p: &mut Vec<usize>, x: usize) -> usize {
    if p[x] != x {
        let r = find(p, p[x]);
        p[x] = r;
    }
    p[x]
}

struct Vertex {
    /// circle id of every arc label index
    circle: Vec<usize>,
    ncircles: usize,
}

fn resolve(pd: &Pd, labels: &BTreeMap<i64, usize>, bits: usize) -> Vertex {
    let m = labels.len();
    let mut p: Vec<usize> = (0..m).collect();
    for (c, q) in pd.quads.iter().enumerate() {
        let [a, b, cc, d] = q.map(|x| labels[&x]);
        let pairs = if bits >> c & 1 == 0 { [(a, b), (cc, d)] } else { [(a, d), (b, cc)] };
        for (x, y) in pairs {
            let (rx, ry) = (find(&mut p, x), find(&mut p, y));
            p[rx] = ry;
        }
    }
    let mut ids = BTreeMap::new();
    let mut circle = vec![0; m];
    for (x, slot) in circle.iter_mut().enumerate() {
        let r = find(&mut p, x);
        let next = ids.len();
        *slot = *ids.entry(r).or_insert(next);
    }
    Vertex { ncircles: ids.len() + pd.circles, circle }
}

/// Generators (homological degree, quantum degree) and the differential as
/// dense columns, for X² = 0 (`lee = false`) or X² = 1.
pub struct Complex {
    pub gens: Vec<(i32, i32)>,
    pub d: Vec<BTreeMap<usize, Q>>,
}

pub fn complex(pd: &Pd, lee: bool) -> Complex {
    let mut labels = BTreeMap::new();
    for q in &pd.quads {
        for x in q {
            let next = labels.len();
            labels.entry(*x).or_insert(next);
        }
    }
    let nc = pd.quads.len();
    let npos = signs(&pd.quads).iter().filter(|&&s| s > 0).count() as i32;
    let nneg = nc as i32 - npos;
    let verts: Vec<Vertex> = (0..1usize << nc).map(|b| resolve(pd, &labels, b)).collect();
    let mut offset = vec![0; verts.len()];
    let mut gens = Vec::new();
    for (b, v) in verts.iter().enumerate() {
        offset[b] = gens.len();
        let r = b.count_ones() as i32;
        for mask in 0..1usize << v.ncircles {
            // bit set means X
            let xs = mask.count_ones() as i32;
            let q = (v.ncircles as i32 - 2 * xs) + r + npos - 2 * nneg;
            gens.push((r - nneg, q));
        }
    }
    let mut d = vec![BTreeMap::new(); gens.len()];
    for (b, v) in verts.iter().enumerate() {
        for c in 0..nc {
            if b >> c & 1 == 1 {
                continue;
            }
            let t = b | 1 << c;
            let w = &verts[t];
            let sgn = if (b & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            let q = pd.quads[c].map(|x| labels[&x]);
            // circles not touching crossing c correspond one to one
            let touched_v: Vec<usize> = dedup(q.iter().map(|&x| v.circle[x]).collect());
            let touched_w: Vec<usize> = dedup(q.iter().map(|&x| w.circle[x]).collect());
            let mut tmap = vec![usize::MAX; v.ncircles];
            for x in 0..labels.len() {
                if !touched_v.contains(&v.circle[x]) {
                    tmap[v.circle[x]] = w.circle[x];
                }
            }
            // crossingless circles sit after the resolved ones and map to themselves
            let shift_v = v.ncircles - pd.circles;
            let shift_w = w.ncircles - pd.circles;
            for o in 0..pd.circles {
                tmap[shift_v + o] = shift_w + o;
            }
            for mask in 0..1usize << v.ncircles {
                let mut base = 0usize;
                for (cv, &cw) in tmap.iter().enumerate() {
                    if cw != usize::MAX && mask >> cv & 1 == 1 {
                        base |= 1 << cw;
                    }
                }
                let src = offset[b] + mask;
                let mut out: Vec<(usize, i64)> = Vec::new();
                if touched_v.len() == 2 {
                    let (x1, x2) = (mask >> touched_v[0] & 1, mask >> touched_v[1] & 1);
                    let m = touched_w[0];
                    match x1 + x2 {
                        0 => out.push((base, 1)),
                        1 => out.push((base | 1 << m, 1)),
                        _ => {
                            if lee {
                                out.push((base, 1));
                            }
                        }
                    }
                } else {
                    let (a, bb) = (touched_w[0], touched_w[1]);
                    if mask >> touched_v[0] & 1 == 0 {
                        out.push((base | 1 << a, 1));
                        out.push((base | 1 << bb, 1));
                    } else {
                        out.push((base | 1 << a | 1 << bb, 1));
                        if lee {
                            out.push((base, 1));
                        }
                    }
                }
                for (tm, c) in out {
                    let e = d[src].entry(offset[t] + tm).or_insert_with(Q::zero);
                    *e += Q::from_integer(BigInt::from(c * sgn));
                }
            }
        }
    }
    for col in &mut d {
        col.retain(|_, c| !c.is_zero());
    }
    Complex { gens, d }
}

fn dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v.dedup();
    v
}

/// Rank of a set of sparse vectors.
pub fn rank(vs: &[BTreeMap<usize, Q>]) -> usize {
    basis(vs).len()
}

fn basis(vs: &[BTreeMap<usize, Q>]) -> Vec<BTreeMap<usize, Q>> {
    let mut rows: Vec<BTreeMap<usize, Q>> = Vec::new();
    for v in vs {
        let mut v = v.clone();
        for r in &rows {
            let (&p, pc) = r.iter().next().unwrap();
            if let Some(c) = v.get(&p).cloned() {
                let f = &c / pc;
                for (k, x) in r {
                    let e = v.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * x;
                }
                v.retain(|_, c| !c.is_zero());
            }
        }
        if !v.is_empty() {
            rows.push(v);
            rows.sort_by_key(|r| *r.keys().next().unwrap());
        }
    }
    rows
}

/// Kernel of the map sending generator g (of `dom`) to d[g].
fn kernel(dom: &[usize], d: &[BTreeMap<usize, Q>]) -> Vec<BTreeMap<usize, Q>> {
    // augment each column with its own unit vector far away
    let far = 1usize << 40;
    let aug: Vec<BTreeMap<usize, Q>> = dom
        .iter()
        .map(|&g| {
            let mut c = d[g].clone();
            c.insert(far + g, Q::one());
            c
        })
        .collect();
    basis(&aug)
        .into_iter()
        .filter(|r| *r.keys().next().unwrap() >= far)
        .map(|r| r.into_iter().map(|(k, c)| (k - far, c)).collect())
        .collect()
}

/// Khovanov homology table (homological degree, quantum degree) → dim.
pub fn khovanov(text: &str) -> BTreeMap<(i32, i32), usize> {
    let cx = complex(&parse(text), false);
    let mut by: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for (g, &k) in cx.gens.iter().enumerate() {
        by.entry(k).or_default().push(g);
    }
    let rk = |key: (i32, i32)| by.get(&key).map(|gs| rank(&gs.iter().map(|&g| cx.d[g].clone()).collect::<Vec<_>>())).unwrap_or(0);
    let mut out = BTreeMap::new();
    for (&(i, q), gs) in &by {
        let h = gs.len() - rk((i, q)) - rk((i - 1, q));
        if h > 0 {
            out.insert((i, q), h);
        }
    }
    out
}

/// Rasmussen's s from the Lee filtration on H⁰: the two classes sit at
/// filtration levels s − 1 and s + 1.
pub fn lee_s(text: &str) -> i32 {
    let cx = complex(&parse(text), true);
    let deg0: Vec<usize> = (0..cx.gens.len()).filter(|&g| cx.gens[g].0 == 0).collect();
    let bounds: Vec<BTreeMap<usize, Q>> = (0..cx.gens.len()).filter(|&g| cx.gens[g].0 == -1).map(|g| cx.d[g].clone()).collect();
    let rb = rank(&bounds);
    let qs: Vec<i32> = deg0.iter().map(|&g| cx.gens[g].1).collect();
    let (lo, hi) = (*qs.iter().min().unwrap(), *qs.iter().max().unwrap());
    let mut levels = Vec::new();
    for p in lo..=hi {
        // F_{≥p} is a subcomplex since the differential never lowers q
        let sub: Vec<usize> = deg0.iter().copied().filter(|&g| cx.gens[g].1 >= p).collect();
        let mut z = kernel(&sub, &cx.d);
        z.extend(bounds.iter().cloned());
        levels.push((p, rank(&z) - rb));
    }
    let top = levels.iter().filter(|l| l.1 >= 1).map(|l| l.0).max().unwrap();
    let bottom = levels.iter().filter(|l| l.1 >= 2).map(|l| l.0).max().unwrap();
    (top + bottom) / 2
}
