//! s_n, slice-surface bounds and g^max dominance.

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::Potential;
use crate::error::{Error, Result};
use crate::link::diagram::LinkDiagram;
use crate::link::homology::{homology, LinkHomology};

/// s_n from Gornik homology already computed for a knot.
pub fn s_n_of(d: &LinkDiagram, h: &LinkHomology) -> Result<Ratio<i64>> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let (hi, lo) = h.gmax_gmin()?;
    Ok(Ratio::new(hi as i64 + lo as i64, 2))
}

/// (g^max + g^min)/2 for p = x^{n+1} − (n+1)x.
pub fn s_n(d: &LinkDiagram, n: usize) -> Result<Ratio<i64>> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    s_n_of(d, &homology(d, &Potential::gornik(n)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceBound {
    pub n: usize,
    pub chi: i32,
    pub gmax: i32,
    /// g^max ≥ (n−1)χ.
    pub holds: bool,
    /// Largest χ any slice surface can have: ⌊g^max/(n−1)⌋.
    pub chi_upper: i32,
    /// |s_n| ≤ 2(n−1)g with g = (1−χ)/2, for knots with an odd χ witness.
    pub genus_bound: Option<bool>,
}

/// Checks a candidate slice surface of Euler characteristic `chi`.
pub fn slice_bound_report(d: &LinkDiagram, n: usize, chi: i32) -> Result<SliceBound> {
    let h = homology(d, &Potential::gornik(n)?)?;
    let (gmax, _) = h.gmax_gmin()?;
    let step = n as i32 - 1;
    let genus_bound = if d.component_count() == 1 && chi <= 1 && chi % 2 != 0 {
        let s = s_n_of(d, &h)?;
        let g = (1 - chi as i64) / 2;
        Some(s.abs() <= Ratio::from_integer(2 * step as i64 * g))
    } else {
        None
    };
    Ok(SliceBound { n, chi, gmax, holds: gmax >= step * chi, chi_upper: gmax.div_euclid(step), genus_bound })
}

/// (g^max for x^{n+1}, g^max for the Gornik potential).
pub fn dominance(d: &LinkDiagram, n: usize) -> Result<(i32, i32)> {
    let top = homology(d, &Potential::sl(n)?)?.gmax_gmin()?.0;
    let gornik = homology(d, &Potential::gornik(n)?)?.gmax_gmin()?.0;
    Ok((top, gornik))
}
