//! Oriented MOY graphs with double and triple wide edges.
//!
//! Regular edges are named. A wide edge lists the edges entering and
//! leaving it; an edge touching no wide edge is a circle. Every edge
//! carries one marking unless a `marks` record asks for more.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::derived::{pi_transfer, sym3_rows, uv_pair};
use crate::algebra::{Poly, Potential};
use crate::error::{Error, Result};
use crate::mf::{KoszulMF, KoszulRow};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Wide { ins: [usize; 2], outs: [usize; 2] },
    Triple { ins: [usize; 3], outs: [usize; 3] },
}

impl Vertex {
    pub fn ins(&self) -> &[usize] {
        match self {
            Vertex::Wide { ins, .. } => ins,
            Vertex::Triple { ins, .. } => ins,
        }
    }

    pub fn outs(&self) -> &[usize] {
        match self {
            Vertex::Wide { outs, .. } => outs,
            Vertex::Triple { outs, .. } => outs,
        }
    }

    fn map_edges(&self, f: impl Fn(usize) -> usize) -> Vertex {
        match self {
            Vertex::Wide { ins, outs } => Vertex::Wide { ins: ins.map(&f), outs: outs.map(&f) },
            Vertex::Triple { ins, outs } => Vertex::Triple { ins: ins.map(&f), outs: outs.map(&f) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub marks: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlanarGraph {
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
}

/// Where an edge starts and ends: Some(vertex) or None for an open end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ends {
    pub tail: Option<usize>,
    pub head: Option<usize>,
}

impl PlanarGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Adds an edge with one marking, or returns the existing one.
    pub fn edge(&mut self, name: &str) -> usize {
        if let Some(i) = self.edge_index(name) {
            return i;
        }
        self.edges.push(Edge { name: name.to_string(), marks: 1 });
        self.edges.len() - 1
    }

    pub fn add_circle(&mut self, name: &str) -> usize {
        self.edge(name)
    }

    pub fn add_wide(&mut self, ins: [&str; 2], outs: [&str; 2]) -> usize {
        let v = Vertex::Wide { ins: ins.map(|e| self.edge(e)), outs: outs.map(|e| self.edge(e)) };
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    pub fn add_triple(&mut self, ins: [&str; 3], outs: [&str; 3]) -> usize {
        let v = Vertex::Triple { ins: ins.map(|e| self.edge(e)), outs: outs.map(|e| self.edge(e)) };
        self.vertices.push(v);
        self.vertices.len() - 1
    }

    pub fn ends(&self) -> Vec<Ends> {
        let mut out = vec![Ends { tail: None, head: None }; self.edges.len()];
        for (vi, v) in self.vertices.iter().enumerate() {
            for &e in v.ins() {
                out[e].head = Some(vi);
            }
            for &e in v.outs() {
                out[e].tail = Some(vi);
            }
        }
        out
    }

    pub fn is_circle(&self, e: usize) -> bool {
        let ends = self.ends();
        ends[e].tail.is_none() && ends[e].head.is_none()
    }

    /// Each edge enters at most one vertex slot and leaves at most one.
    pub fn validate(&self) -> Result<()> {
        let mut heads = vec![0; self.edges.len()];
        let mut tails = vec![0; self.edges.len()];
        for v in &self.vertices {
            for &e in v.ins() {
                heads[e] += 1;
            }
            for &e in v.outs() {
                tails[e] += 1;
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.name.is_empty() {
                return Err(Error::UnmarkedEdge("empty edge name".into()));
            }
            if e.marks == 0 {
                return Err(Error::UnmarkedEdge(e.name.clone()));
            }
            if heads[i] > 1 || tails[i] > 1 {
                return Err(Error::IncompatibleOrientation(format!("edge {} is used twice on one side", e.name)));
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.ends().iter().all(|e| e.tail.is_some() == e.head.is_some())
    }

    pub fn circle_count(&self) -> usize {
        self.ends().iter().filter(|e| e.tail.is_none() && e.head.is_none()).count()
    }

    pub fn wide_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, Vertex::Wide { .. })).count()
    }

    pub fn triple_count(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, Vertex::Triple { .. })).count()
    }

    /// Variable indices of each edge's markings, tail to head.
    pub fn marking_vars(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        self.edges
            .iter()
            .map(|e| {
                let v: Vec<usize> = (next..next + e.marks).collect();
                next += e.marks;
                v
            })
            .collect()
    }

    pub fn var_count(&self) -> usize {
        self.edges.iter().map(|e| e.marks).sum()
    }

    /// Number of components after replacing every wide edge by parallel
    /// arcs (in slot m joined to out slot m).
    pub fn parallel_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.edges.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for v in &self.vertices {
            for (a, b) in v.ins().iter().zip(v.outs()) {
                let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
                parent[ra] = rb;
            }
        }
        (0..self.edges.len()).filter(|&e| find(&mut parent, e) == e).count()
    }

    /// ℤ₂-degree carrying the cohomology of a closed graph. Slots are read
    /// left to right as in a planar drawing; the count is meaningless otherwise.
    pub fn parity(&self) -> u8 {
        (self.parallel_components() % 2) as u8
    }

    /// Renumbers edges by first appearance so that equal presentations of a
    /// graph hash equally. Vertex lists are sorted after renumbering.
    pub fn canonical(&self) -> PlanarGraph {
        let mut order: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.edges.len()];
        let mut verts = self.vertices.clone();
        verts.sort_by_key(|v| (v.ins().len(), v.ins().to_vec(), v.outs().to_vec()));
        for v in &verts {
            for &e in v.ins().iter().chain(v.outs()) {
                if !seen[e] {
                    seen[e] = true;
                    order.push(e);
                }
            }
        }
        for e in 0..self.edges.len() {
            if !seen[e] {
                order.push(e);
            }
        }
        let mut new_of = vec![0; self.edges.len()];
        for (ni, &oe) in order.iter().enumerate() {
            new_of[oe] = ni;
        }
        let edges = order.iter().enumerate().map(|(ni, _)| Edge { name: format!("e{ni}"), marks: 1 }).collect();
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| match v.map_edges(|e| new_of[e]) {
                Vertex::Wide { mut ins, mut outs } => {
                    ins.sort();
                    outs.sort();
                    Vertex::Wide { ins, outs }
                }
                Vertex::Triple { mut ins, mut outs } => {
                    ins.sort();
                    outs.sort();
                    Vertex::Triple { ins, outs }
                }
            })
            .collect();
        vertices.sort();
        PlanarGraph { edges, vertices }
    }

    /// Drops edges not used by any vertex except those listed as circles.
    pub fn retain_edges(&mut self, keep: impl Fn(usize) -> bool) {
        let mut map = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                map[i] = edges.len();
                edges.push(e.clone());
            }
        }
        self.vertices = self.vertices.iter().map(|v| v.map_edges(|e| map[e])).collect();
        self.edges = edges;
    }

    pub fn parse(text: &str) -> Result<PlanarGraph> {
        let mut g = PlanarGraph::new();
        let mut marks: Vec<(String, usize)> = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let start = offset;
            offset += line.len() + 1;
            let body = line.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::ParseError { pos: start, msg: format!("{msg}: {body}") };
            if let Some(rest) = body.strip_prefix("circle") {
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(perr("circle needs a name"));
                }
                for nm in names {
                    g.add_circle(nm);
                }
            } else if let Some(rest) = body.strip_prefix("marks") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(perr("expected `marks <edge> <count>`"));
                }
                let k: usize = parts[1].parse().map_err(|_| perr("bad marking count"))?;
                marks.push((parts[0].to_string(), k));
            } else if body.starts_with("W(") || body.starts_with("T(") {
                let width = if body.starts_with('W') { 2 } else { 3 };
                let inner = body[2..].strip_suffix(')').ok_or_else(|| perr("missing `)`"))?;
                let (ins, outs) = parse_slots(inner).ok_or_else(|| perr("expected in:[..], out:[..]"))?;
                if ins.len() != width || outs.len() != width {
                    return Err(perr("wrong number of edges"));
                }
                if ins.iter().chain(&outs).any(|s| s.is_empty()) {
                    return Err(Error::UnmarkedEdge(format!("unnamed edge in {body}")));
                }
                if width == 2 {
                    g.add_wide([&ins[0], &ins[1]], [&outs[0], &outs[1]]);
                } else {
                    g.add_triple([&ins[0], &ins[1], &ins[2]], [&outs[0], &outs[1], &outs[2]]);
                }
            } else {
                return Err(perr("unknown record"));
            }
        }
        for (name, k) in marks {
            let i = g.edge_index(&name).ok_or_else(|| Error::ParseError { pos: 0, msg: format!("marks for unknown edge {name}") })?;
            g.edges[i].marks = k;
        }
        g.validate()?;
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let nm = |e: &usize| self.edges[*e].name.clone();
        for v in &self.vertices {
            let tag = if matches!(v, Vertex::Wide { .. }) { 'W' } else { 'T' };
            let ins: Vec<String> = v.ins().iter().map(nm).collect();
            let outs: Vec<String> = v.outs().iter().map(nm).collect();
            s.push_str(&format!("{tag}(in:[{}], out:[{}])\n", ins.join(","), outs.join(",")));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if self.is_circle(i) {
                s.push_str(&format!("circle {}\n", e.name));
            }
        }
        for e in &self.edges {
            if e.marks != 1 {
                s.push_str(&format!("marks {} {}\n", e.name, e.marks));
            }
        }
        s
    }

    pub fn disjoint_union(&self, other: &PlanarGraph) -> PlanarGraph {
        let mut g = self.clone();
        let base = g.edges.len();
        for e in &other.edges {
            let mut e = e.clone();
            while g.edge_index(&e.name).is_some() {
                e.name.push('\'');
            }
            g.edges.push(e);
        }
        g.vertices.extend(other.vertices.iter().map(|v| v.map_edges(|e| e + base)));
        g
    }
}

fn parse_slots(inner: &str) -> Option<(Vec<String>, Vec<String>)> {
    let inner = inner.trim();
    let rest = inner.strip_prefix("in")?.trim_start().strip_prefix(':')?.trim_start().strip_prefix('[')?;
    let close = rest.find(']')?;
    let ins = rest[..close].split(',').map(|s| s.trim().to_string()).collect();
    let rest = rest[close + 1..].trim_start().strip_prefix(',')?.trim_start();
    let rest = rest.strip_prefix("out")?.trim_start().strip_prefix(':')?.trim_start().strip_prefix('[')?;
    let close = rest.find(']')?;
    let outs = rest[..close].split(',').map(|s| s.trim().to_string()).collect();
    if !rest[close + 1..].trim().is_empty() {
        return None;
    }
    Some((ins, outs))
}

impl fmt::Display for PlanarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The arc row (π_ht, x_h − x_t) for an arc from marking t to marking h.
pub fn arc_row(p: &Potential, head: usize, tail: usize) -> KoszulRow {
    KoszulRow::with_degree(pi_transfer(p, head, tail), &Poly::var(head) - &Poly::var(tail), 2 * p.n() as i32)
}

/// Rows of a double wide edge with outs i, j and ins k, l (shift −1).
pub fn wide_rows(p: &Potential, i: usize, j: usize, k: usize, l: usize) -> [KoszulRow; 2] {
    let (u, v) = uv_pair(p, i, j, k, l);
    let (xi, xj, xk, xl) = (Poly::var(i), Poly::var(j), Poly::var(k), Poly::var(l));
    let n = p.n() as i32;
    [
        KoszulRow::with_degree(u, &(&(&xi + &xj) - &xk) - &xl, 2 * n),
        KoszulRow::with_degree(v, &(&xi * &xj) - &(&xk * &xl), 2 * n - 2),
    ]
}

/// Rows of a triple wide edge (shift −3).
pub fn triple_rows(p: &Potential, outs: [usize; 3], ins: [usize; 3]) -> [KoszulRow; 3] {
    let (a, b) = sym3_rows(p, outs, ins);
    let n = p.n() as i32;
    let [a1, a2, a3] = a;
    let [b1, b2, b3] = b;
    [KoszulRow::with_degree(a1, b1, 2 * n), KoszulRow::with_degree(a2, b2, 2 * n - 2), KoszulRow::with_degree(a3, b3, 2 * n - 4)]
}

/// The circle row (p′(x), 0) for a circle with a single marking.
pub fn circle_row(p: &Potential, var: usize) -> KoszulRow {
    KoszulRow::with_degree(p.derivative_in(var), Poly::zero(), 2 * p.n() as i32)
}

/// C_p(Γ) in row form: wide edges first, then arcs between consecutive
/// markings, then circles.
pub fn build_cp(graph: &PlanarGraph, p: &Potential) -> Result<KoszulMF> {
    graph.validate()?;
    if graph.var_count() > crate::algebra::poly::MAXV {
        return Err(Error::InvalidConfig(format!("{} markings exceed the limit of {}", graph.var_count(), crate::algebra::poly::MAXV)));
    }
    let vars = graph.marking_vars();
    let head = |e: usize| *vars[e].last().unwrap();
    let tail = |e: usize| vars[e][0];
    let mut rows = Vec::new();
    let mut shift = 0;
    for v in &graph.vertices {
        match v {
            Vertex::Wide { ins, outs } => {
                rows.extend(wide_rows(p, tail(outs[0]), tail(outs[1]), head(ins[0]), head(ins[1])));
                shift -= 1;
            }
            Vertex::Triple { ins, outs } => {
                rows.extend(triple_rows(p, outs.map(tail), ins.map(head)));
                shift -= 3;
            }
        }
    }
    let ends = graph.ends();
    let mut circles = Vec::new();
    for (e, vs) in vars.iter().enumerate() {
        for w in vs.windows(2) {
            rows.push(arc_row(p, w[1], w[0]));
        }
        if ends[e].tail.is_none() && ends[e].head.is_none() {
            circles.push(e);
        }
    }
    for e in circles {
        let vs = &vars[e];
        if vs.len() == 1 {
            rows.push(circle_row(p, vs[0]));
        } else {
            rows.push(arc_row(p, vs[0], *vs.last().unwrap()));
        }
    }
    if rows.len() > 62 {
        return Err(Error::InvalidConfig("too many rows".into()));
    }
    Ok(KoszulMF { n: p.n(), rows, shift, angle: 0 })
}

/// Edge name → index map, handy for tests and the CLI.
pub fn edge_names(graph: &PlanarGraph) -> BTreeMap<String, usize> {
    graph.edges.iter().enumerate().map(|(i, e)| (e.name.clone(), i)).collect()
}
