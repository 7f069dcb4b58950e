//! The cube of resolutions: vertex cohomologies and the induced d_χ.

use std::collections::BTreeMap;

use crate::algebra::{Coeff, Potential};
use crate::error::{Error, Result};
use crate::linalg::{sv_axpy, SVec};
use crate::mf::{CohomOptions, Elem, KoszulCohomology, KoszulMF, LocalMap, ModElem, Reducer};
use crate::moy::maps::chi;

use super::complex::{ComplexGen, FilteredComplex};
use super::diagram::LinkDiagram;

/// One resolution with its cohomology.
#[derive(Clone, Debug)]
pub struct CubeVertex {
    pub bits: u64,
    pub degree: i32,
    pub mf: KoszulMF,
    pub coh: KoszulCohomology,
}

#[derive(Clone, Debug)]
pub struct Cube {
    pub diagram: LinkDiagram,
    pub p: Potential,
    pub vertices: Vec<CubeVertex>,
    /// First complex generator of each vertex.
    pub offsets: Vec<usize>,
    pub complex: FilteredComplex,
}

/// Cube sign of the edge flipping crossing c at `bits`.
pub fn edge_sign(bits: u64, c: usize) -> i32 {
    if (bits & ((1u64 << c) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// χ map along the edge flipping crossing c from 0 to 1.
pub fn edge_map(d: &LinkDiagram, p: &Potential, c: usize) -> Result<LocalMap> {
    let x = &d.crossings[c];
    let (i, j, k, l) = x.ijkl();
    let t = chi(p, 2 * c, i, j, k, l)?;
    Ok(if x.sign > 0 { t.to_oriented } else { t.to_wide })
}

/// Class coefficients of cocycles in one vertex, one reducer per parity.
pub struct VertexExpress<'a> {
    v: &'a KoszulCohomology,
    reducers: [Option<Reducer>; 2],
}

impl<'a> VertexExpress<'a> {
    pub fn new(v: &'a KoszulCohomology) -> VertexExpress<'a> {
        VertexExpress { v, reducers: [None, None] }
    }

    /// Coefficients on the vertex classes of an original cocycle.
    pub fn express(&mut self, e: &Elem) -> Result<SVec> {
        let m = self.v.project(e);
        self.express_mod(&m)
    }

    pub fn express_mod(&mut self, m: &ModElem) -> Result<SVec> {
        if m.is_empty() {
            return Ok(vec![]);
        }
        let model = &self.v.reduced.model;
        let par = model.gens[*m.keys().next().unwrap()].parity;
        if m.keys().any(|g| model.gens[*g].parity != par) {
            return Err(Error::NotCocycle);
        }
        let coh = &self.v.coh;
        let slot = &mut self.reducers[par as usize];
        if slot.is_none() {
            let reps = coh.classes.iter().enumerate().filter(|(_, c)| c.parity == par).map(|(i, c)| (i, c.rep.clone())).collect();
            let bound = coh.tops[par as usize].max(model.degree(m).unwrap_or(0));
            *slot = Some(Reducer::new(model, par, reps, bound)?);
        }
        slot.as_mut().unwrap().express(model, m)
    }
}

impl Cube {
    pub fn build(d: &LinkDiagram, p: &Potential, opts: &CohomOptions) -> Result<Cube> {
        let nc = d.crossings.len();
        let all: Vec<u64> = (0..1u64 << nc).collect();
        let vertices: Vec<Result<CubeVertex>> = crate::par::map(&all, |&bits| {
            let mf = d.vertex_mf(p, bits);
            let mut o = opts.clone();
            if o.certificate.is_none() {
                o.certificate = d.vertex_certificate(bits, p.n()).ok();
            }
            let coh = KoszulCohomology::compute(&mf, &o)?;
            Ok(CubeVertex { bits, degree: d.vertex_degree(bits), mf, coh })
        });
        let vertices: Vec<CubeVertex> = vertices.into_iter().collect::<Result<_>>()?;
        let mut offsets = Vec::with_capacity(vertices.len());
        let mut gens = Vec::new();
        for v in &vertices {
            offsets.push(gens.len());
            for (i, c) in v.coh.coh.classes.iter().enumerate() {
                gens.push(ComplexGen { degree: v.degree, level: c.level, tag: (v.bits, i) });
            }
        }
        let maps: Vec<LocalMap> = (0..nc).map(|c| edge_map(d, p, c)).collect::<Result<_>>()?;
        // d restricted to each target vertex, computed target by target
        let parts: Vec<Result<Vec<(usize, usize, SVec)>>> = crate::par::map(&all, |&tb| {
            let mut ex = VertexExpress::new(&vertices[tb as usize].coh);
            let mut out = Vec::new();
            for c in 0..nc {
                if tb >> c & 1 == 0 {
                    continue;
                }
                let sb = tb ^ (1 << c);
                let src = &vertices[sb as usize];
                let sign = Coeff::int(edge_sign(sb, c) as i64);
                for i in 0..src.coh.dim() {
                    let rep = src.coh.lifted_rep(i)?;
                    let img = maps[c].apply(&rep);
                    let coeffs = ex.express(&img)?;
                    let col: SVec = coeffs.into_iter().map(|(t, x)| (offsets[tb as usize] + t, &x * &sign)).collect();
                    out.push((offsets[sb as usize] + i, tb as usize, col));
                }
            }
            Ok(out)
        });
        let mut dm: Vec<SVec> = vec![Vec::new(); gens.len()];
        for part in parts {
            for (g, _, col) in part? {
                dm[g] = sv_axpy(&dm[g], &Coeff::one(), &col);
            }
        }
        Ok(Cube { diagram: d.clone(), p: p.clone(), vertices, offsets, complex: FilteredComplex::new(gens, dm) })
    }

    /// Graded dimension of the chain groups, per cohomological degree.
    pub fn chain_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for g in &self.complex.gens {
            *m.entry(g.degree).or_insert(0) += 1;
        }
        m
    }

    pub fn vertex(&self, bits: u64) -> &CubeVertex {
        &self.vertices[bits as usize]
    }

    pub fn gen_index(&self, bits: u64, class: usize) -> usize {
        self.offsets[bits as usize] + class
    }
}
