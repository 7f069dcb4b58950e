//! Graded dimensions of closed MOY graphs by local rewriting.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::Laurent;
use crate::error::{Error, Result};

use super::graph::{Edge, PlanarGraph, Vertex};

/// Rewrites a graph by removing vertices, gluing edge ends and adding new
/// pieces. `joins` are (x, y) pairs: the end of x continues as y.
struct Surgery<'a> {
    g: &'a PlanarGraph,
    remove_vertices: BTreeSet<usize>,
    remove_edges: BTreeSet<usize>,
    joins: Vec<(usize, usize)>,
    add: Vec<Vertex>,
    new_edges: usize,
}

impl<'a> Surgery<'a> {
    fn new(g: &'a PlanarGraph) -> Self {
        Surgery { g, remove_vertices: BTreeSet::new(), remove_edges: BTreeSet::new(), joins: vec![], add: vec![], new_edges: 0 }
    }

    fn fresh(&mut self) -> usize {
        self.new_edges += 1;
        self.g.edges.len() + self.new_edges - 1
    }

    fn run(self) -> PlanarGraph {
        let total = self.g.edges.len() + self.new_edges;
        let mut alias: Vec<usize> = (0..total).collect();
        fn root(a: &[usize], mut x: usize) -> usize {
            while a[x] != x {
                x = a[x];
            }
            x
        }
        let mut dropped = self.remove_edges.clone();
        for &(x, y) in &self.joins {
            let (rx, ry) = (root(&alias, x), root(&alias, y));
            if rx != ry {
                alias[ry] = rx;
                dropped.insert(ry);
            }
        }
        let mut vertices: Vec<Vertex> = self
            .g
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.remove_vertices.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        vertices.extend(self.add.iter().cloned());
        let mut index = vec![usize::MAX; total];
        let mut edges = Vec::new();
        for e in 0..total {
            if !dropped.contains(&e) {
                index[e] = edges.len();
                edges.push(Edge { name: format!("e{e}"), marks: 1 });
            }
        }
        let fix = |e: usize| index[root(&alias, e)];
        let vertices = vertices
            .into_iter()
            .map(|v| match v {
                Vertex::Wide { ins, outs } => Vertex::Wide { ins: ins.map(fix), outs: outs.map(fix) },
                Vertex::Triple { ins, outs } => Vertex::Triple { ins: ins.map(fix), outs: outs.map(fix) },
            })
            .collect();
        PlanarGraph { edges, vertices }
    }
}

fn other<const N: usize>(slots: &[usize; N], skip: usize) -> usize {
    let pos = slots.iter().position(|&e| e == skip).unwrap();
    slots[if pos == 0 { 1 } else { 0 }]
}

/// One rewrite: a sum of (factor, smaller graph) terms, or None.
fn step(g: &PlanarGraph, n: usize) -> Option<Vec<(Laurent, PlanarGraph)>> {
    let ni = n as i64;
    let ends = g.ends();
    // circles
    if let Some(e) = (0..g.edges.len()).find(|&e| ends[e].tail.is_none() && ends[e].head.is_none()) {
        let mut s = Surgery::new(g);
        s.remove_edges.insert(e);
        return Some(vec![(Laurent::qint(ni), s.run())]);
    }
    // I: a wide edge with an out slot looping back to one of its in slots
    for (vi, v) in g.vertices.iter().enumerate() {
        if let Vertex::Wide { ins, outs } = v {
            if let Some(&e) = outs.iter().find(|e| ins.contains(e)) {
                let a = other(ins, e);
                let b = other(outs, e);
                let mut s = Surgery::new(g);
                s.remove_vertices.insert(vi);
                s.remove_edges.insert(e);
                s.joins.push((a, b));
                return Some(vec![(Laurent::qint(ni - 1), s.run())]);
            }
        }
    }
    // II: both outs of one wide edge enter the same wide edge
    for (vi, v) in g.vertices.iter().enumerate() {
        if let Vertex::Wide { ins, outs } = v {
            let (h0, h1) = (ends[outs[0]].head, ends[outs[1]].head);
            if let (Some(w), Some(w2)) = (h0, h1) {
                if w == w2 && w != vi {
                    if let Vertex::Wide { outs: outs2, .. } = &g.vertices[w] {
                        let mut s = Surgery::new(g);
                        s.remove_vertices.insert(vi);
                        s.remove_vertices.insert(w);
                        s.remove_edges.insert(outs[0]);
                        s.remove_edges.insert(outs[1]);
                        s.add.push(Vertex::Wide { ins: *ins, outs: *outs2 });
                        return Some(vec![(Laurent::qint(2), s.run())]);
                    }
                }
            }
        }
    }
    // III: two wide edges joined by one edge each way
    for (li, lv) in g.vertices.iter().enumerate() {
        let Vertex::Wide { ins: lin, outs: lout } = lv else { continue };
        for &e5 in lout {
            let Some(ri) = ends[e5].head else { continue };
            if ri == li {
                continue;
            }
            let Vertex::Wide { ins: rin, outs: rout } = &g.vertices[ri] else { continue };
            let Some(&e6) = rout.iter().find(|e| ends[**e].head == Some(li)) else { continue };
            let a = other(lin, e6);
            let b = other(lout, e5);
            let c = other(rin, e5);
            let d = other(rout, e6);
            let base = |joins: [(usize, usize); 2]| {
                let mut s = Surgery::new(g);
                s.remove_vertices.insert(li);
                s.remove_vertices.insert(ri);
                s.remove_edges.insert(e5);
                s.remove_edges.insert(e6);
                s.joins.extend(joins);
                s.run()
            };
            let g2 = base([(c, b), (a, d)]);
            let g1 = base([(a, b), (c, d)]);
            return Some(vec![(Laurent::one(), g2), (Laurent::qint(ni - 2), g1)]);
        }
    }
    // IV: a triple edge is the three-wide-edge graph minus a wide edge
    // beside a straight strand
    for (ti, tv) in g.vertices.iter().enumerate() {
        let Vertex::Triple { ins, outs } = tv else { continue };
        let [x1, x2, x3] = *ins;
        let [x4, x5, x6] = *outs;
        let mut s = Surgery::new(g);
        s.remove_vertices.insert(ti);
        let (x7, x8, x9) = (s.fresh(), s.fresh(), s.fresh());
        s.add.push(Vertex::Wide { ins: [x2, x3], outs: [x7, x8] });
        s.add.push(Vertex::Wide { ins: [x7, x1], outs: [x9, x4] });
        s.add.push(Vertex::Wide { ins: [x8, x9], outs: [x5, x6] });
        let g1 = s.run();
        let mut s = Surgery::new(g);
        s.remove_vertices.insert(ti);
        s.joins.push((x1, x4));
        s.add.push(Vertex::Wide { ins: [x2, x3], outs: [x5, x6] });
        let g4 = s.run();
        return Some(vec![(Laurent::one(), g1), (Laurent::mono(0, -1), g4)]);
    }
    None
}

/// Memoizing evaluator.
#[derive(Default)]
pub struct MoyEvaluator {
    memo: HashMap<PlanarGraph, Laurent>,
}

impl MoyEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, g: &PlanarGraph, n: usize) -> Result<Laurent> {
        let key = g.canonical();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = if key.edges.is_empty() && key.vertices.is_empty() {
            Laurent::one()
        } else {
            match step(&key, n) {
                Some(terms) => {
                    let mut acc = Laurent::zero();
                    for (c, h) in terms {
                        acc = &acc + &(&c * &self.eval(&h, n)?);
                    }
                    acc
                }
                None => return Err(Error::Irreducible(key.to_text())),
            }
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Graded dimension of H_n(Γ) for a closed graph.
pub fn moy_dimension(g: &PlanarGraph, n: usize) -> Result<Laurent> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("n = {n} < 2")));
    }
    g.validate()?;
    if !g.is_closed() {
        return Err(Error::InvalidConfig("graph has open ends".into()));
    }
    MoyEvaluator::new().eval(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moy::states::admissible_states;

    fn q(n: i64) -> Laurent {
        Laurent::qint(n)
    }

    fn g(text: &str) -> PlanarGraph {
        PlanarGraph::parse(text).unwrap()
    }

    #[test]
    fn small_graphs() {
        for n in 2..=5i64 {
            let nu = n as usize;
            assert_eq!(moy_dimension(&g("circle a"), nu).unwrap(), q(n));
            assert_eq!(moy_dimension(&g("W(in:[a,b], out:[a,b])"), nu).unwrap(), &q(n) * &q(n - 1));
            let gh = g("W(in:[c,d], out:[a,b])\nW(in:[a,b], out:[c,d])");
            assert_eq!(moy_dimension(&gh, nu).unwrap(), &(&q(2) * &q(n)) * &q(n - 1));
        }
    }

    #[test]
    fn states_count_total_dimension() {
        let texts = [
            "circle a",
            "W(in:[a,b], out:[a,b])",
            "W(in:[c,d], out:[a,b])\nW(in:[a,b], out:[c,d])",
            "W(in:[a,f], out:[b,e])\nW(in:[c,e], out:[d,f])\nW(in:[b,d], out:[a,c])",
            "T(in:[a,b,c], out:[a,b,c])",
        ];
        for t in texts {
            let gr = g(t);
            for n in 2..=4 {
                let d = moy_dimension(&gr, n).unwrap();
                assert_eq!(d.total(), admissible_states(&gr, n).len() as i64, "{t} n={n}");
                assert_eq!(d, d.mirror(), "{t} n={n}");
            }
        }
    }

    #[test]
    fn triple_theta() {
        // three parallel strands closed through a triple edge: [n][n−1][n−2]
        for n in 3..=5i64 {
            let d = moy_dimension(&g("T(in:[a,b,c], out:[a,b,c])"), n as usize).unwrap();
            assert_eq!(d, &(&q(n) * &q(n - 1)) * &q(n - 2));
        }
    }
}
