//! Admissible labelings of graph edges by {0, …, n−1}.

use super::graph::{PlanarGraph, Vertex};

/// Label of each edge, indexed like `graph.edges`.
pub type GraphState = Vec<usize>;

fn vertex_ok(v: &Vertex, s: &[Option<usize>]) -> Option<bool> {
    let ins: Option<Vec<usize>> = v.ins().iter().map(|e| s[*e]).collect();
    let outs: Option<Vec<usize>> = v.outs().iter().map(|e| s[*e]).collect();
    let (mut ins, mut outs) = (ins?, outs?);
    ins.sort();
    outs.sort();
    Some(ins.windows(2).all(|w| w[0] != w[1]) && ins == outs)
}

pub fn is_admissible(graph: &PlanarGraph, state: &GraphState) -> bool {
    let s: Vec<Option<usize>> = state.iter().map(|l| Some(*l)).collect();
    graph.vertices.iter().all(|v| vertex_ok(v, &s) == Some(true))
}

/// All admissible states, in lexicographic order of the label vector.
pub fn admissible_states(graph: &PlanarGraph, n: usize) -> Vec<GraphState> {
    let m = graph.edges.len();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (vi, v) in graph.vertices.iter().enumerate() {
        for &e in v.ins().iter().chain(v.outs()) {
            touching[e].push(vi);
        }
    }
    let mut out = Vec::new();
    let mut cur: Vec<Option<usize>> = vec![None; m];
    fn go(i: usize, n: usize, g: &PlanarGraph, touching: &[Vec<usize>], cur: &mut Vec<Option<usize>>, out: &mut Vec<GraphState>) {
        if i == cur.len() {
            out.push(cur.iter().map(|l| l.unwrap()).collect());
            return;
        }
        for l in 0..n {
            cur[i] = Some(l);
            if touching[i].iter().all(|&v| vertex_ok(&g.vertices[v], cur) != Some(false)) {
                go(i + 1, n, g, touching, cur, out);
            }
        }
        cur[i] = None;
    }
    go(0, n, graph, &touching, &mut cur, &mut out);
    out
}
