//! Gornik's classes f_φ for p = x^{n+1} − (n+1)x.

use serde::{Deserialize, Serialize};

use crate::algebra::derived::gornik_f_in;
use crate::algebra::{Coeff, Laurent, Potential};
use crate::error::{Error, Result};
use crate::linalg::{sv_normalize, SVec};
use crate::link::cube::{Cube, VertexExpress};
use crate::link::diagram::LinkDiagram;
use crate::link::movie::times;
use crate::mf::{CohomOptions, Elem, KoszulCohomology, KoszulMF, KoszulRow};
use crate::moy::graph::arc_row;
use crate::moy::maps::xi;

/// Label of every link component.
pub type LinkState = Vec<usize>;

/// All n^m states, last component varying fastest.
pub fn link_states(m: usize, n: usize) -> Vec<LinkState> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|s: Vec<usize>| (0..n).map(move |l| [s.clone(), vec![l]].concat())).collect();
    }
    out
}

/// The state with value k everywhere.
pub fn constant_state(m: usize, k: usize) -> LinkState {
    vec![k; m]
}

#[derive(Clone, Debug)]
pub struct GornikClass {
    pub state: LinkState,
    /// Resolution carrying the class: unequal labels give wide edges.
    pub bits: u64,
    pub degree: i32,
    /// Cocycle in the cube complex.
    pub vector: SVec,
    /// The class inside the resolution's cohomology, as a factorization element.
    pub elem: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GornikCheck {
    pub n: usize,
    pub components: usize,
    pub dimension: usize,
    pub expected: usize,
    pub independent_rank: usize,
    pub cocycles: bool,
    pub eigen_law: bool,
}

impl GornikCheck {
    pub fn pass(&self) -> bool {
        self.dimension == self.expected && self.independent_rank == self.expected && self.cocycles && self.eigen_law
    }
}

fn require_gornik(p: &Potential) -> Result<()> {
    if p.is_gornik() {
        Ok(())
    } else {
        Err(Error::InvalidPotential("Gornik classes need x^{n+1} - (n+1)x".into()))
    }
}

fn check_state(d: &LinkDiagram, n: usize, state: &LinkState) -> Result<Vec<usize>> {
    let comp = d.component_map();
    if state.len() != d.component_count() {
        return Err(Error::InvalidConfig(format!("state has {} labels for {} components", state.len(), d.component_count())));
    }
    if let Some(&l) = state.iter().find(|&&l| l >= n) {
        return Err(Error::LabelOutOfRange { label: l, n });
    }
    Ok(comp.iter().map(|&c| state[c]).collect())
}

/// Resolution bits of the class: oriented where the two strands share a
/// label, wide where they differ.
pub fn state_bits(d: &LinkDiagram, label: &[usize]) -> u64 {
    let mut bits = 0;
    for (c, x) in d.crossings.iter().enumerate() {
        let unequal = label[x.ins[0]] != label[x.ins[1]];
        let bit = if unequal { x.wide_bit() } else { 1 - x.wide_bit() };
        bits |= bit << c;
    }
    bits
}

/// Resolution bits carrying f_φ for a state given per component.
pub fn state_bits_for(d: &LinkDiagram, n: usize, state: &LinkState) -> Result<u64> {
    Ok(state_bits(d, &check_state(d, n, state)?))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The diagram with virtual crossings at unequal labels: its factorization
/// and one marking per circle.
fn virtual_resolution(d: &LinkDiagram, p: &Potential, label: &[usize]) -> (KoszulMF, Vec<usize>) {
    let mut rows: Vec<KoszulRow> = Vec::new();
    let mut parent: Vec<usize> = (0..d.nvars).collect();
    let join = |a: usize, b: usize, parent: &mut Vec<usize>| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    };
    for x in &d.crossings {
        let (i, j, k, l) = x.ijkl();
        if label[k] == label[l] {
            rows.push(arc_row(p, i, k));
            rows.push(arc_row(p, j, l));
            join(i, k, &mut parent);
            join(j, l, &mut parent);
        } else {
            rows.push(arc_row(p, i, l));
            rows.push(arc_row(p, j, k));
            join(i, l, &mut parent);
            join(j, k, &mut parent);
        }
    }
    for s in &d.segments {
        rows.push(arc_row(p, s.head, s.tail));
        join(s.head, s.tail, &mut parent);
    }
    let mut reps: Vec<usize> = (0..d.nvars).filter(|&v| find(&mut parent, v) == v).collect();
    reps.sort();
    (KoszulMF { n: p.n(), rows, shift: 0, angle: 0 }, reps)
}

/// f_φ as an element of the resolution's factorization.
pub fn gornik_elem(d: &LinkDiagram, p: &Potential, state: &LinkState) -> Result<(u64, Elem)> {
    require_gornik(p)?;
    let n = p.n();
    let label = check_state(d, n, state)?;
    let (mf, circles) = virtual_resolution(d, p, &label);
    let cert = (0..circles.len()).fold(Laurent::one(), |acc, _| &acc * &Laurent::qint(n as i64));
    let kc = KoszulCohomology::compute(&mf, &CohomOptions::with_certificate(Some(cert)))?;
    let low = (0..kc.dim()).min_by_key(|&i| kc.coh.classes[i].level).ok_or(Error::EmptyHomology)?;
    let mut e = kc.lifted_rep(low)?;
    for &v in &circles {
        e = times(&e, &gornik_f_in(n, label[v], v)?);
    }
    for (c, x) in d.crossings.iter().enumerate() {
        let (i, j, k, l) = x.ijkl();
        if label[k] != label[l] {
            e = xi(p, 2 * c, i, j, k, l)?.to_wide.apply(&e);
        }
    }
    Ok((state_bits(d, &label), e))
}

pub fn gornik_class(cube: &Cube, state: &LinkState) -> Result<GornikClass> {
    let (bits, elem) = gornik_elem(&cube.diagram, &cube.p, state)?;
    let v = cube.vertex(bits);
    let coeffs = VertexExpress::new(&v.coh).express(&elem)?;
    let off = cube.offsets[bits as usize];
    let vector = sv_normalize(coeffs.into_iter().map(|(t, c)| (off + t, c)).collect());
    Ok(GornikClass { state: state.clone(), bits, degree: v.degree, vector, elem })
}

pub fn gornik_classes(cube: &Cube) -> Result<Vec<GornikClass>> {
    let states = link_states(cube.diagram.component_count(), cube.p.n());
    let out: Vec<Result<GornikClass>> = crate::par::map(&states, |s| gornik_class(cube, s));
    out.into_iter().collect()
}

/// x_j f_φ = ζ^{φ(j)} f_φ in the resolution's cohomology, for every marking.
pub fn eigenvalue_law(cube: &Cube, class: &GornikClass) -> Result<bool> {
    let n = cube.p.n();
    let label = check_state(&cube.diagram, n, &class.state)?;
    let v = cube.vertex(class.bits);
    let mut ex = VertexExpress::new(&v.coh);
    let base = ex.express(&class.elem)?;
    if base.is_empty() {
        return Ok(false);
    }
    for j in 0..cube.diagram.nvars {
        let moved = ex.express(&times(&class.elem, &crate::algebra::Poly::var(j)))?;
        let z = Coeff::zeta(n as u32, label[j] as i64);
        let want: SVec = sv_normalize(base.iter().map(|(t, c)| (*t, c * &z)).collect());
        if moved != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// dim H_p(D) = n^m and the f_φ are independent cocycles.
pub fn gornik_dimension_check(cube: &Cube) -> Result<GornikCheck> {
    require_gornik(&cube.p)?;
    let n = cube.p.n();
    let m = cube.diagram.component_count();
    let expected = n.pow(m as u32);
    let h = crate::link::homology_of(cube);
    let classes = gornik_classes(cube)?;
    let cx = &cube.complex;
    let cocycles = classes.iter().all(|c| cx.apply(&c.vector).is_empty());
    let mut rank = 0;
    let mut degs: Vec<i32> = classes.iter().map(|c| c.degree).collect();
    degs.sort();
    degs.dedup();
    for deg in degs {
        let vs: Vec<SVec> = classes.iter().filter(|c| c.degree == deg).map(|c| c.vector.clone()).collect();
        rank += cx.rank_mod_boundaries(deg, &vs);
    }
    let mut eigen = true;
    for c in &classes {
        eigen &= eigenvalue_law(cube, c)?;
    }
    Ok(GornikCheck { n, components: m, dimension: h.total(), expected, independent_rank: rank, cocycles, eigen_law: eigen })
}

/// Coefficients of a cocycle of the complex on the Gornik basis, modulo
/// boundaries, indexed like `link_states`.
pub fn express_in_gornik_basis(cube: &Cube, classes: &[GornikClass], deg: i32, v: &crate::linalg::SVec) -> Result<Vec<Coeff>> {
    let idx: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].degree == deg).collect();
    let basis: Vec<SVec> = idx.iter().map(|&i| classes[i].vector.clone()).collect();
    let cs = cube.complex.express_mod_boundaries(deg, &basis, v).ok_or(Error::NotCocycle)?;
    let mut out = vec![Coeff::zero(); classes.len()];
    for (k, &i) in idx.iter().enumerate() {
        out[i] = cs[k].clone();
    }
    Ok(out)
}
