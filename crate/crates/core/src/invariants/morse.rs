//! Morse moves acting on Gornik classes, and the state support of movies.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::derived::gornik_f_in;
use crate::algebra::{Coeff, Poly, Potential};
use crate::error::{Error, Result};
use crate::link::cube::Cube;
use crate::link::diagram::LinkDiagram;
use crate::link::movie::{apply_move, movie_maps, step_chain_map, Move, Step};
use crate::mf::{CohomOptions, Elem, KoszulCohomology, KoszulMF};
use crate::moy::graph::arc_row;
use crate::moy::maps::{epsilon, iota, saddle};

use super::gornik::{constant_state, express_in_gornik_basis, gornik_class, gornik_classes, link_states, LinkState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorseAction {
    pub states: Vec<LinkState>,
    /// Coefficient text of the image on each target state.
    pub coeffs: Vec<String>,
    pub support: Vec<LinkState>,
    /// Support predicted from labels alone.
    pub predicted: Vec<LinkState>,
}

impl MorseAction {
    pub fn matches_prediction(&self) -> bool {
        self.support == self.predicted
    }
}

/// Target states whose labels agree with φ on every surviving marking.
pub fn predicted_states(step: &Step, state: &LinkState, n: usize) -> Vec<LinkState> {
    let cs = step.source.component_map();
    let ct = step.target.component_map();
    link_states(step.target.component_count(), n)
        .into_iter()
        .filter(|psi| step.markings.iter().enumerate().all(|(v, t)| t.is_none_or(|t| psi[ct[t]] == state[cs[v]])))
        .collect()
}

/// Image of [f_φ] under one Morse move, in the target's Gornik basis.
pub fn morse_action(d: &LinkDiagram, mv: &Move, p: &Potential, state: &LinkState) -> Result<MorseAction> {
    let step = apply_move(d, mv, p)?;
    let src = Cube::build(d, p, &CohomOptions::default())?;
    let tgt = Cube::build(&step.target, p, &CohomOptions::default())?;
    let f = step_chain_map(&step, &src, &tgt)?;
    let class = gornik_class(&src, state)?;
    let img = f.apply(&class.vector);
    let classes = gornik_classes(&tgt)?;
    let cs = express_in_gornik_basis(&tgt, &classes, class.degree, &img)?;
    let states: Vec<LinkState> = classes.iter().map(|c| c.state.clone()).collect();
    let support = states.iter().zip(&cs).filter(|(_, c)| !c.is_zero()).map(|(s, _)| s.clone()).collect();
    Ok(MorseAction {
        coeffs: cs.iter().map(|c| c.to_string()).collect(),
        states,
        support,
        predicted: predicted_states(&step, state, p.n()),
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MovieSupport {
    pub k: usize,
    pub support: Vec<LinkState>,
    pub compatible: Vec<LinkState>,
    pub coeffs: Vec<String>,
}

impl MovieSupport {
    pub fn pass(&self) -> bool {
        self.support == self.compatible
    }
}

/// States of the last frame compatible with the constant state k: labels
/// agree along every surface component, and equal k on evolved ones.
pub fn compatible_states(frames: &[LinkDiagram], steps: &[Step], k: usize, n: usize) -> Result<Vec<LinkState>> {
    let mut offs = vec![0];
    for f in frames {
        offs.push(offs.last().unwrap() + f.component_count());
    }
    let total = *offs.last().unwrap();
    let mut parent: Vec<usize> = (0..total).collect();
    for (j, st) in steps.iter().enumerate() {
        let (cs, ct) = (frames[j].component_map(), frames[j + 1].component_map());
        for (v, t) in st.markings.iter().enumerate() {
            if let Some(t) = t {
                let (a, b) = (find(&mut parent, offs[j] + cs[v]), find(&mut parent, offs[j + 1] + ct[*t]));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let last = frames.len() - 1;
    let roots: Vec<usize> = (0..total).map(|x| find(&mut parent, x)).collect();
    let boundary: BTreeSet<usize> = (0..offs[1]).chain(offs[last]..total).map(|x| roots[x]).collect();
    if roots.iter().any(|r| !boundary.contains(r)) {
        return Err(Error::ClosedComponent);
    }
    let initial: BTreeSet<usize> = (0..offs[1]).map(|x| roots[x]).collect();
    let m = frames[last].component_count();
    Ok(link_states(m, n)
        .into_iter()
        .filter(|psi| {
            let mut val: BTreeMap<usize, usize> = initial.iter().map(|r| (*r, k)).collect();
            (0..m).all(|c| {
                let r = roots[offs[last] + c];
                *val.entry(r).or_insert(psi[c]) == psi[c]
            })
        })
        .collect())
}

/// Support of the image of f_{φ^(k)} under a movie, against the compatible
/// states.
pub fn movie_state_support(d: &LinkDiagram, movie: &[Move], p: &Potential, k: usize) -> Result<MovieSupport> {
    let n = p.n();
    if k >= n {
        return Err(Error::LabelOutOfRange { label: k, n });
    }
    let mut frames = vec![d.clone()];
    let mut steps = Vec::new();
    for mv in movie {
        let s = apply_move(frames.last().unwrap(), mv, p)?;
        frames.push(s.target.clone());
        steps.push(s);
    }
    let compatible = compatible_states(&frames, &steps, k, n)?;
    let mm = movie_maps(d, movie, p)?;
    let src = &mm.cubes[0];
    let tgt = mm.cubes.last().unwrap();
    let class = gornik_class(src, &constant_state(d.component_count(), k))?;
    let img = mm.composite().apply(&class.vector);
    let classes = gornik_classes(tgt)?;
    let cs = express_in_gornik_basis(tgt, &classes, class.degree, &img)?;
    let support = classes.iter().zip(&cs).filter(|(_, c)| !c.is_zero()).map(|(c, _)| c.state.clone()).collect();
    Ok(MovieSupport { k, support, compatible, coeffs: cs.iter().map(|c| c.to_string()).collect() })
}

/// Values of the circle cobordisms on the f_k basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleLaws {
    pub n: usize,
    /// η(f_k(x1) f_l(x2)) = n δ_kl f_k(x).
    pub merge: bool,
    /// η₂(f_k(x)) is a fixed multiple of ζ^{−k} f_k(x1) f_k(x2).
    pub split: bool,
    /// The c in η₂(f_k) = c ζ^{−k} f_k(x1) f_k(x2).
    pub split_scalar: String,
    /// ι(1) = λ Σ f_k with this λ.
    pub lambda: String,
    /// ε(f_k) = μ ζ^k with this μ.
    pub mu: String,
    pub iota_law: bool,
    pub epsilon_law: bool,
}

impl CircleLaws {
    pub fn pass(&self) -> bool {
        self.merge && self.split && self.iota_law && self.epsilon_law
    }
}

fn times(e: &Elem, q: &Poly) -> Elem {
    crate::link::movie::times(e, q)
}

fn lowest(kc: &KoszulCohomology) -> Result<Elem> {
    let i = (0..kc.dim()).min_by_key(|&i| kc.coh.classes[i].level).ok_or(Error::EmptyHomology)?;
    kc.lifted_rep(i)
}

/// Coordinates on the classes, through the reduced model.
fn coords(kc: &KoszulCohomology, e: &Elem) -> Result<crate::linalg::SVec> {
    crate::link::cube::VertexExpress::new(kc).express(e)
}

fn scaled(v: &crate::linalg::SVec, c: &Coeff) -> crate::linalg::SVec {
    crate::linalg::sv_scale(v, c)
}

/// Checks the merge, split, creation and annihilation laws on round circles.
/// Circle one carries markings 0 → 3 → 0, circle two 1 → 2 → 1; merging
/// yields the circle 0 → 3 → 2 → 1 → 0.
pub fn circle_laws(p: &Potential) -> Result<CircleLaws> {
    let n = p.n();
    let opts = CohomOptions::default();
    let m = [0usize, 1, 2, 3];
    // arcs 3→0, 1→2 (saddle rows), then 0→3, 2→1
    let two = KoszulMF { n, rows: vec![arc_row(p, 0, 3), arc_row(p, 2, 1), arc_row(p, 3, 0), arc_row(p, 1, 2)], shift: 0, angle: 0 };
    // arcs 1→0, 3→2, then 0→3, 2→1
    let one = KoszulMF { n, rows: vec![arc_row(p, 0, 1), arc_row(p, 2, 3), arc_row(p, 3, 0), arc_row(p, 1, 2)], shift: 0, angle: 0 };
    let k2 = KoszulCohomology::compute(&two, &opts)?;
    let k1 = KoszulCohomology::compute(&one, &opts)?;
    let eta = saddle(p, 0, m);
    // the inverse saddle: arcs (1→0, 3→2) back to (3→0, 1→2) is the same map with 1 and 3 swapped
    let eta2 = saddle(p, 0, [0, 3, 2, 1]);
    let u2 = lowest(&k2)?;
    // normalize the single circle's unit by the merge
    let u1 = eta.apply(&u2);
    let f = |k: usize, v: usize| gornik_f_in(n, k, v);
    let nn = Coeff::int(n as i64);
    let mut merge = true;
    for k in 0..n {
        for l in 0..n {
            let src = times(&u2, &(&f(k, 0)? * &f(l, 1)?));
            let got = coords(&k1, &eta.apply(&src))?;
            let want = if k == l { scaled(&coords(&k1, &times(&u1, &f(k, 0)?))?, &nn) } else { vec![] };
            merge &= got == want;
        }
    }
    // η₂(f_k) = c ζ^{−k} f_k(x1) f_k(x2) with one nonzero c for all k
    let mut split = true;
    let mut scalar: Option<Coeff> = None;
    for k in 0..n {
        let got = coords(&k2, &eta2.apply(&times(&u1, &f(k, 0)?)))?;
        let base = coords(&k2, &times(&u2, &(&f(k, 0)? * &f(k, 1)?)))?;
        let z = Coeff::zeta(n as u32, -(k as i64));
        let (Some((g0, c0)), Some((b0, d0))) = (got.first(), base.first()) else {
            split = false;
            continue;
        };
        if g0 != b0 {
            split = false;
            continue;
        }
        let c = &(c0 / d0) / &z;
        split &= got == scaled(&base, &(&c * &z));
        match &scalar {
            Some(s) => split &= *s == c,
            None => scalar = Some(c),
        }
    }
    // creation and annihilation on a one-marking circle
    let empty = KoszulMF { n, rows: vec![], shift: 0, angle: 0 };
    let (circ, io) = iota(&empty, p, 0);
    let kc = KoszulCohomology::compute(&circ, &opts)?;
    let unit: Elem = [(0u64, Poly::one())].into_iter().collect();
    let created = coords(&kc, &io.apply(&unit))?;
    let uc = io.apply(&unit);
    let lambda = Coeff::rat(1, n as i64);
    let mut sum = Poly::zero();
    for k in 0..n {
        sum = &sum + &f(k, 0)?;
    }
    let iota_law = created == scaled(&coords(&kc, &times(&uc, &sum))?, &lambda);
    let (_, ep) = epsilon(&circ, p, 0);
    let mu = Coeff::one();
    let mut epsilon_law = true;
    for k in 0..n {
        // the class f_k(x)·e_c
        let top: Elem = [(1u64, f(k, 0)?)].into_iter().collect();
        let got = ep.apply(&top);
        let want: Elem = [(0u64, Poly::constant(&mu * &Coeff::zeta(n as u32, k as i64)))].into_iter().collect();
        epsilon_law &= got == want;
    }
    Ok(CircleLaws { n, merge, split, split_scalar: scalar.map(|c| c.to_string()).unwrap_or_default(), lambda: lambda.to_string(), mu: mu.to_string(), iota_law, epsilon_law })
}

/// Morse moves on constant states of a fixture, checked against the
/// predicted zero/nonzero pattern.
pub fn morse_pattern(d: &LinkDiagram, mv: &Move, p: &Potential) -> Result<bool> {
    let n = p.n();
    let mut ok = true;
    for s in link_states(d.component_count(), n) {
        let a = morse_action(d, mv, p, &s)?;
        ok &= a.matches_prediction();
    }
    Ok(ok)
}
