//! Morse moves on segments and the chain maps they induce on cube complexes.
//!
//! A move only touches segment rows, which sit after the crossing rows in
//! every resolution, so one map on factorization elements serves the whole
//! cube.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Poly, Potential};
use crate::error::{Error, Result};
use crate::linalg::{sv_axpy, SVec};
use crate::mf::{Elem, LocalMap};
use crate::moy::maps::{epsilon, iota, saddle};

use super::complex::{FilteredComplex, Page};
use super::cube::{Cube, VertexExpress};
use super::diagram::{LinkDiagram, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// A new one-marking circle.
    Birth,
    /// Removes a one-marking circle given by its segment index.
    Death { segment: usize },
    /// Swaps the heads of two segments.
    Saddle { a: usize, b: usize },
}

impl Move {
    pub fn euler(&self) -> i32 {
        match self {
            Move::Birth | Move::Death { .. } => 1,
            Move::Saddle { .. } => -1,
        }
    }
}

pub type ElemFn = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

#[derive(Clone)]
pub struct Step {
    pub source: LinkDiagram,
    pub target: LinkDiagram,
    pub map: ElemFn,
    /// Filtration degree, −(n−1)χ.
    pub degree: i32,
    pub euler: i32,
    /// Where each source marking ends up, if it survives.
    pub markings: Vec<Option<usize>>,
}

/// e_S ↦ ±e_{π(S)} with `pos[r]` the new place of row r; the sign is the
/// parity of inversions of π on S.
pub fn permute_rows(e: &Elem, pos: &[usize]) -> Elem {
    let mut out = Elem::new();
    for (mask, p) in e {
        let rows: Vec<usize> = (0..pos.len()).filter(|r| mask >> r & 1 == 1).collect();
        let mut inv = 0;
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if pos[rows[a]] > pos[rows[b]] {
                    inv += 1;
                }
            }
        }
        let m = rows.iter().fold(0u64, |m, &r| m | 1 << pos[r]);
        crate::mf::model::elem_add(&mut out, m, if inv % 2 == 1 { -p } else { p.clone() });
    }
    out
}

fn inverse(pos: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pos.len()];
    for (r, &q) in pos.iter().enumerate() {
        inv[q] = r;
    }
    inv
}

fn rename_elem(e: &Elem, map: &[usize]) -> Elem {
    e.iter().map(|(m, p)| (*m, p.rename(map))).collect()
}

fn local(m: LocalMap) -> ElemFn {
    Arc::new(move |e: &Elem| m.apply(e))
}

/// The map of one move on factorization elements, and the diagram after it.
pub fn apply_move(d: &LinkDiagram, mv: &Move, p: &Potential) -> Result<Step> {
    let base = 2 * d.crossings.len();
    let rows = base + d.segments.len();
    let n = p.n() as i32;
    let degree = -(n - 1) * mv.euler();
    let mut markings: Vec<Option<usize>> = (0..d.nvars).map(Some).collect();
    let (target, map): (LinkDiagram, ElemFn) = match *mv {
        Move::Birth => {
            let mut t = d.clone();
            let v = t.nvars;
            t.nvars += 1;
            t.segments.push(Segment { tail: v, head: v });
            t.validate()?;
            let (_, m) = iota(&d.vertex_mf(p, 0), p, v);
            (t, local(m))
        }
        Move::Death { segment } => {
            let s = *d.segments.get(segment).ok_or_else(|| Error::IllegalMove(format!("no segment {segment}")))?;
            if !s.is_circle() {
                return Err(Error::IllegalMove(format!("segment {segment} is not a one-marking circle")));
            }
            let v = s.tail;
            let last = d.nvars - 1;
            let mut t = d.clone();
            t.segments.remove(segment);
            t.nvars -= 1;
            let ren: Vec<usize> = (0..d.nvars).map(|x| if x == last { v } else { x }).collect();
            markings = (0..d.nvars).map(|x| if x == v { None } else { Some(ren[x]) }).collect();
            for c in &mut t.crossings {
                c.ins = c.ins.map(|x| ren[x]);
                c.outs = c.outs.map(|x| ren[x]);
            }
            for g in &mut t.segments {
                *g = Segment { tail: ren[g.tail], head: ren[g.head] };
            }
            t.validate()?;
            // move the circle row to the end
            let r = base + segment;
            let pos: Vec<usize> = (0..rows).map(|x| if x == r { rows - 1 } else if x > r { x - 1 } else { x }).collect();
            let mut moved = d.vertex_mf(p, 0);
            moved.rows = (0..rows).map(|q| moved.rows[inverse(&pos)[q]].clone()).collect();
            let (_, eps) = epsilon(&moved, p, v);
            let f: ElemFn = Arc::new(move |e: &Elem| rename_elem(&eps.apply(&permute_rows(e, &pos)), &ren));
            (t, f)
        }
        Move::Saddle { a, b } => {
            if a == b || a >= d.segments.len() || b >= d.segments.len() {
                return Err(Error::IllegalMove(format!("saddle needs two distinct segments, got {a} and {b}")));
            }
            let (sa, sb) = (d.segments[a], d.segments[b]);
            let mut t = d.clone();
            t.segments[a] = Segment { tail: sb.tail, head: sa.head };
            t.segments[b] = Segment { tail: sa.tail, head: sb.head };
            t.validate()?;
            // order: segment b right after segment a
            let mut order: Vec<usize> = (0..rows).filter(|&x| x != base + b).collect();
            let at = order.iter().position(|&x| x == base + a).unwrap();
            order.insert(at + 1, base + b);
            let pos = inverse(&order);
            let back = order.clone();
            let m = saddle(p, at, [sa.head, sb.tail, sb.head, sa.tail]);
            let f: ElemFn = Arc::new(move |e: &Elem| permute_rows(&m.apply(&permute_rows(e, &pos)), &back));
            (t, f)
        }
    };
    Ok(Step { source: d.clone(), target, map, degree, euler: mv.euler(), markings })
}

/// Runs a movie on diagrams only.
pub fn movie_diagrams(d: &LinkDiagram, movie: &[Move], p: &Potential) -> Result<Vec<LinkDiagram>> {
    let mut out = vec![d.clone()];
    for mv in movie {
        let s = apply_move(out.last().unwrap(), mv, p)?;
        out.push(s.target);
    }
    Ok(out)
}

/// A map between cube complexes: column g is the image of generator g.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub cols: Vec<SVec>,
    pub degree: i32,
}

impl ChainMap {
    pub fn identity(len: usize) -> ChainMap {
        ChainMap { cols: (0..len).map(|g| vec![(g, Coeff::one())]).collect(), degree: 0 }
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut out: SVec = Vec::new();
        for (g, c) in v {
            out = sv_axpy(&out, c, &self.cols[*g]);
        }
        out
    }

    pub fn then(&self, next: &ChainMap) -> ChainMap {
        ChainMap { cols: self.cols.iter().map(|c| next.apply(c)).collect(), degree: self.degree + next.degree }
    }

    pub fn is_chain_map(&self, src: &FilteredComplex, tgt: &FilteredComplex) -> bool {
        (0..src.len()).all(|g| self.apply(&src.d[g]) == tgt.apply(&self.cols[g]))
    }

    /// Levels rise by at most `degree` and cohomological degrees are kept.
    pub fn is_filtered(&self, src: &FilteredComplex, tgt: &FilteredComplex) -> bool {
        self.cols.iter().enumerate().all(|(g, col)| {
            col.iter().all(|(t, _)| tgt.gens[*t].degree == src.gens[g].degree && tgt.gens[*t].level <= src.gens[g].level + self.degree)
        })
    }
}

/// The chain map of one step between the cubes of its two diagrams.
pub fn step_chain_map(step: &Step, src: &Cube, tgt: &Cube) -> Result<ChainMap> {
    let all: Vec<u64> = (0..src.vertices.len() as u64).collect();
    let parts: Vec<Result<Vec<SVec>>> = crate::par::map(&all, |&bits| {
        let sv = &src.vertices[bits as usize];
        let mut ex = VertexExpress::new(&tgt.vertices[bits as usize].coh);
        let off = tgt.offsets[bits as usize];
        (0..sv.coh.dim())
            .map(|i| {
                let img = (step.map)(&sv.coh.lifted_rep(i)?);
                Ok(ex.express(&img)?.into_iter().map(|(t, c)| (off + t, c)).collect())
            })
            .collect()
    });
    let mut cols = Vec::with_capacity(src.complex.len());
    for part in parts {
        cols.extend(part?);
    }
    Ok(ChainMap { cols, degree: step.degree })
}

/// Cubes of every frame of a movie and the composite chain map.
pub struct MovieMaps {
    pub cubes: Vec<Cube>,
    pub maps: Vec<ChainMap>,
    pub euler: i32,
}

impl MovieMaps {
    pub fn composite(&self) -> ChainMap {
        let first = ChainMap::identity(self.cubes[0].complex.len());
        self.maps.iter().fold(first, |acc, m| acc.then(m))
    }
}

pub fn movie_maps(d: &LinkDiagram, movie: &[Move], p: &Potential) -> Result<MovieMaps> {
    let mut cubes = vec![Cube::build(d, p, &Default::default())?];
    let mut maps = Vec::new();
    let mut euler = 0;
    for mv in movie {
        let step = apply_move(&cubes.last().unwrap().diagram, mv, p)?;
        let tgt = Cube::build(&step.target, p, &Default::default())?;
        maps.push(step_chain_map(&step, cubes.last().unwrap(), &tgt)?);
        euler += step.euler;
        cubes.push(tgt);
    }
    Ok(MovieMaps { cubes, maps, euler })
}

/// Rank of the map induced on E_k, per bidegree of the source page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageMap {
    pub k: usize,
    pub shift: i32,
    pub source: Page,
    pub target: Page,
    pub ranks: Vec<(i32, i32, usize)>,
}

impl PageMap {
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().map(|r| r.2).sum()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.total() == self.target.total() && self.total_rank() == self.source.total()
    }
}

/// The map a movie induces on page k.
pub fn cobordism_page_map(d: &LinkDiagram, movie: &[Move], p: &Potential, k: usize) -> Result<PageMap> {
    let mm = movie_maps(d, movie, p)?;
    let f = mm.composite();
    let src = &mm.cubes[0].complex;
    let tgt = &mm.cubes.last().unwrap().complex;
    let shift = f.degree;
    let mut ranks = BTreeMap::new();
    for (deg, lvl, _) in src.page_at(k).dims {
        let reps = src.page_reps(deg, lvl, k);
        let imgs: Vec<SVec> = reps.iter().map(|v| f.apply(v)).collect();
        let r = tgt.page_rank(deg, lvl + shift, k, &imgs);
        if r > 0 {
            ranks.insert((deg, lvl), r);
        }
    }
    Ok(PageMap {
        k,
        shift,
        source: src.page_at(k),
        target: tgt.page_at(k),
        ranks: ranks.into_iter().map(|((i, q), r)| (i, q, r)).collect(),
    })
}

/// Polynomial multiplication on every term, for module actions.
pub fn times(e: &Elem, q: &Poly) -> Elem {
    let mut out = Elem::new();
    for (m, p) in e {
        crate::mf::model::elem_add(&mut out, *m, p * q);
    }
    out
}
