//! H_p(D): the homology of the cube complex, its filtration and pages.

use serde::{Deserialize, Serialize};

use crate::algebra::Potential;
use crate::error::{Error, Result};
use crate::mf::CohomOptions;

use super::complex::{poincare, table_to_vec, Page, Table};
use super::cube::Cube;
use super::diagram::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkHomology {
    pub n: usize,
    pub homogeneous: bool,
    /// (cohomological degree, quantum degree or filtration level, dim).
    pub dims: Vec<(i32, i32, usize)>,
}

impl LinkHomology {
    pub fn table(&self) -> Table {
        self.dims.iter().map(|&(i, q, d)| ((i, q), d)).collect()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().map(|d| d.2).sum()
    }

    pub fn poincare(&self) -> String {
        poincare(&self.table())
    }

    /// Highest and lowest filtration levels.
    pub fn gmax_gmin(&self) -> Result<(i32, i32)> {
        let hi = self.dims.iter().map(|d| d.1).max().ok_or(Error::EmptyHomology)?;
        let lo = self.dims.iter().map(|d| d.1).min().ok_or(Error::EmptyHomology)?;
        Ok((hi, lo))
    }
}

pub fn build_complex(d: &LinkDiagram, p: &Potential) -> Result<Cube> {
    Cube::build(d, p, &CohomOptions::default())
}

pub fn build_complex_with(d: &LinkDiagram, p: &Potential, opts: &CohomOptions) -> Result<Cube> {
    Cube::build(d, p, opts)
}

pub fn homology_of(cube: &Cube) -> LinkHomology {
    let c = cube.complex.reduce();
    LinkHomology { n: cube.p.n(), homogeneous: cube.p.is_homogeneous(), dims: table_to_vec(&c.homology()) }
}

pub fn homology(d: &LinkDiagram, p: &Potential) -> Result<LinkHomology> {
    Ok(homology_of(&build_complex(d, p)?))
}

/// E_0, E_1, … up to `k_max` or until the pages are stationary.
pub fn pages_of(cube: &Cube, k_max: Option<usize>) -> Vec<Page> {
    let mut ps = cube.complex.pages(k_max);
    // drop trailing repeats after collapse
    while ps.len() > 2 && ps[ps.len() - 1].dims == ps[ps.len() - 2].dims {
        ps.pop();
    }
    ps
}

pub fn spectral_pages(d: &LinkDiagram, p: &Potential, k_max: Option<usize>) -> Result<Vec<Page>> {
    Ok(pages_of(&build_complex(d, p)?, k_max))
}

pub fn gmax_gmin(d: &LinkDiagram, p: &Potential) -> Result<(i32, i32)> {
    homology(d, p)?.gmax_gmin()
}
