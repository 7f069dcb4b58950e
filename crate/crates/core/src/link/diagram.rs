//! Oriented link diagrams with one marking per arc.
//!
//! A crossing stores its two incoming arcs `ins = [k, l]` and outgoing arcs
//! `outs = [i, j]`, left to right with both strands pointing up. The
//! oriented smoothing joins k→i and l→j; the strands themselves run k→j and
//! l→i. Segments are arcs between two markings away from crossings; a
//! segment whose tail equals its head is a one-marking circle.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Laurent, Potential};
use crate::error::{Error, Result};
use crate::mf::{KoszulMF, KoszulRow};
use crate::moy::graph::{arc_row, wide_rows};
use crate::moy::{moy_dimension, PlanarGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: i8,
    pub ins: [usize; 2],
    pub outs: [usize; 2],
}

impl Crossing {
    /// (i, j, k, l) as used by the crossing maps.
    pub fn ijkl(&self) -> (usize, usize, usize, usize) {
        (self.outs[0], self.outs[1], self.ins[0], self.ins[1])
    }

    /// Resolution bit giving the wide edge.
    pub fn wide_bit(&self) -> u64 {
        if self.sign > 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub tail: usize,
    pub head: usize,
}

impl Segment {
    pub fn is_circle(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    pub nvars: usize,
    pub crossings: Vec<Crossing>,
    pub segments: Vec<Segment>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl LinkDiagram {
    pub fn new(nvars: usize, crossings: Vec<Crossing>, segments: Vec<Segment>) -> Result<LinkDiagram> {
        let d = LinkDiagram { nvars, crossings, segments };
        d.validate()?;
        let d = d.split_loops();
        d.validate()?;
        Ok(d)
    }

    /// Puts an extra marking on every arc that leaves a crossing and comes
    /// straight back to it, so the four markings around a crossing differ.
    pub fn split_loops(&self) -> LinkDiagram {
        let mut d = self.clone();
        for c in 0..d.crossings.len() {
            for s in 0..2 {
                let v = d.crossings[c].outs[s];
                if d.crossings[c].ins.contains(&v) {
                    let fresh = d.nvars;
                    d.nvars += 1;
                    d.crossings[c].outs[s] = fresh;
                    d.segments.push(Segment { tail: fresh, head: v });
                }
            }
        }
        d
    }

    /// The crossingless unknot with one marking.
    pub fn unknot() -> LinkDiagram {
        LinkDiagram::unlink(1)
    }

    pub fn unlink(m: usize) -> LinkDiagram {
        LinkDiagram { nvars: m, crossings: vec![], segments: (0..m).map(|v| Segment { tail: v, head: v }).collect() }
    }

    /// Every marking must start one piece of arc and end one.
    pub fn validate(&self) -> Result<()> {
        let mut heads = vec![0usize; self.nvars];
        let mut tails = vec![0usize; self.nvars];
        let bump = |v: usize, a: &mut Vec<usize>| -> Result<()> {
            if v >= self.nvars {
                return Err(Error::InconsistentOrientation(format!("marking {v} out of range")));
            }
            a[v] += 1;
            Ok(())
        };
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InconsistentOrientation(format!("crossing sign {}", c.sign)));
            }
            for &v in &c.ins {
                bump(v, &mut heads)?;
            }
            for &v in &c.outs {
                bump(v, &mut tails)?;
            }
        }
        // ins start the piece into the crossing, outs end the piece out of it
        for s in &self.segments {
            bump(s.tail, &mut heads)?;
            bump(s.head, &mut tails)?;
        }
        for v in 0..self.nvars {
            if heads[v] != 1 || tails[v] != 1 {
                return Err(Error::InconsistentOrientation(format!("marking {v} is entered {} and left {} times", heads[v], tails[v])));
            }
        }
        if 2 * self.crossings.len() + self.segments.len() > 62 {
            return Err(Error::InvalidConfig("diagram too large".into()));
        }
        if self.nvars > crate::algebra::poly::MAXV {
            return Err(Error::InvalidConfig(format!("{} markings exceed the limit of {}", self.nvars, crate::algebra::poly::MAXV)));
        }
        Ok(())
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign as i32).sum()
    }

    pub fn positive_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn negative_count(&self) -> usize {
        self.crossings.len() - self.positive_count()
    }

    /// Component index of every marking, components numbered by their
    /// smallest marking.
    pub fn component_map(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.nvars).collect();
        for c in &self.crossings {
            union(&mut parent, c.ins[0], c.outs[1]);
            union(&mut parent, c.ins[1], c.outs[0]);
        }
        for s in &self.segments {
            union(&mut parent, s.tail, s.head);
        }
        let mut ids = BTreeMap::new();
        let roots: Vec<usize> = (0..self.nvars).map(|v| find(&mut parent, v)).collect();
        for &r in &roots {
            let k = ids.len();
            ids.entry(r).or_insert(k);
        }
        roots.iter().map(|r| ids[r]).collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_map().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for c in &mut d.crossings {
            c.sign = -c.sign;
        }
        d
    }

    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let off = self.nvars;
        let mut d = self.clone();
        d.nvars += other.nvars;
        d.crossings.extend(other.crossings.iter().map(|c| Crossing { sign: c.sign, ins: c.ins.map(|v| v + off), outs: c.outs.map(|v| v + off) }));
        d.segments.extend(other.segments.iter().map(|s| Segment { tail: s.tail + off, head: s.head + off }));
        d
    }

    /// Inserts a segment in front of every crossing input, so that every arc
    /// between crossings carries two markings. Saddles need such arcs.
    pub fn with_segments(&self) -> LinkDiagram {
        let mut d = self.clone();
        for ci in 0..d.crossings.len() {
            for s in 0..2 {
                let v = d.crossings[ci].ins[s];
                let fresh = d.nvars;
                d.nvars += 1;
                d.crossings[ci].ins[s] = fresh;
                d.segments.push(Segment { tail: v, head: fresh });
            }
        }
        d
    }

    /// Cohomological degree of a resolution: bits count one per crossing.
    pub fn vertex_degree(&self, bits: u64) -> i32 {
        bits.count_ones() as i32 - self.positive_count() as i32
    }

    pub fn is_wide(&self, bits: u64, c: usize) -> bool {
        (bits >> c & 1) == self.crossings[c].wide_bit()
    }

    /// Quantum shift of a resolution: {n}/{n−1} at a positive crossing,
    /// {1−n}/{−n} at a negative one, plus the {−1} of each wide edge.
    pub fn vertex_shift(&self, bits: u64, n: usize) -> i32 {
        let n = n as i32;
        let mut s = 0;
        for (c, x) in self.crossings.iter().enumerate() {
            s += match (x.sign > 0, self.is_wide(bits, c)) {
                (true, true) => n - 1,
                (true, false) => n - 1,
                (false, false) => 1 - n,
                (false, true) => -n - 1,
            };
        }
        s
    }

    /// C_p of a resolution: two rows per crossing in crossing order, then one
    /// row per segment.
    pub fn vertex_mf(&self, p: &Potential, bits: u64) -> KoszulMF {
        let mut rows: Vec<KoszulRow> = Vec::with_capacity(2 * self.crossings.len() + self.segments.len());
        for (c, x) in self.crossings.iter().enumerate() {
            let (i, j, k, l) = x.ijkl();
            if self.is_wide(bits, c) {
                rows.extend(wide_rows(p, i, j, k, l));
            } else {
                rows.push(arc_row(p, i, k));
                rows.push(arc_row(p, j, l));
            }
        }
        for s in &self.segments {
            rows.push(arc_row(p, s.head, s.tail));
        }
        KoszulMF { n: p.n(), rows, shift: self.vertex_shift(bits, p.n()), angle: 0 }
    }

    /// The resolution as a MOY graph, one edge per run of markings.
    pub fn vertex_graph(&self, bits: u64) -> PlanarGraph {
        let mut parent: Vec<usize> = (0..self.nvars).collect();
        for (c, x) in self.crossings.iter().enumerate() {
            if !self.is_wide(bits, c) {
                union(&mut parent, x.ins[0], x.outs[0]);
                union(&mut parent, x.ins[1], x.outs[1]);
            }
        }
        for s in &self.segments {
            union(&mut parent, s.tail, s.head);
        }
        let mut g = PlanarGraph::new();
        let mut name = |v: usize, g: &mut PlanarGraph| g.edge(&format!("m{}", find(&mut parent, v)));
        let mut verts = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            if self.is_wide(bits, c) {
                let ins = [name(x.ins[0], &mut g), name(x.ins[1], &mut g)];
                let outs = [name(x.outs[0], &mut g), name(x.outs[1], &mut g)];
                verts.push(Vertex::Wide { ins, outs });
            }
        }
        for v in 0..self.nvars {
            name(v, &mut g);
        }
        g.vertices = verts;
        g
    }

    /// Graded dimension of the resolution's cohomology, shifts included.
    pub fn vertex_certificate(&self, bits: u64, n: usize) -> Result<Laurent> {
        let wide = (0..self.crossings.len()).filter(|&c| self.is_wide(bits, c)).count() as i32;
        Ok(moy_dimension(&self.vertex_graph(bits), n)?.shift(self.vertex_shift(bits, n) + wide))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.crossings {
            s.push_str(&format!("{}[{},{};{},{}] ", if c.sign > 0 { "P" } else { "N" }, c.ins[0], c.ins[1], c.outs[0], c.outs[1]));
        }
        for g in &self.segments {
            s.push_str(&format!("S[{},{}] ", g.tail, g.head));
        }
        s.trim_end().to_string()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    In,
    Out,
}

/// Planar diagram code: `X[a,b,c,d]` tokens with a the incoming under-arc
/// and labels counterclockwise; `O` adds a crossingless circle.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut quads: Vec<[i64; 4]> = Vec::new();
    let mut circles = 0usize;
    let bytes = text.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| Error::ParseError { pos, msg: msg.to_string() };
    while pos < bytes.len() {
        let ch = bytes[pos] as char;
        if ch.is_whitespace() || ch == ',' {
            pos += 1;
        } else if ch == '#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
        } else if ch == 'O' {
            circles += 1;
            pos += 1;
        } else if ch == 'X' {
            let open = pos + 1;
            if bytes.get(open) != Some(&b'[') {
                return Err(err(open, "expected `[` after X"));
            }
            let close = text[open..].find(']').map(|i| open + i).ok_or_else(|| err(open, "missing `]`"))?;
            let nums: Vec<&str> = text[open + 1..close].split(',').map(|t| t.trim()).collect();
            if nums.len() != 4 {
                return Err(err(open + 1, "a crossing needs four labels"));
            }
            let mut q = [0i64; 4];
            for (s, t) in nums.iter().enumerate() {
                q[s] = t.parse().map_err(|_| err(open + 1, &format!("bad label `{t}`")))?;
            }
            quads.push(q);
            pos = close + 1;
        } else {
            return Err(err(pos, &format!("unexpected `{ch}`")));
        }
    }
    from_pd(&quads, circles)
}

fn from_pd(quads: &[[i64; 4]], circles: usize) -> Result<LinkDiagram> {
    let mut labels: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, q) in quads.iter().enumerate() {
        for (s, &l) in q.iter().enumerate() {
            labels.entry(l).or_default().push((ci, s));
        }
    }
    for (l, occ) in &labels {
        if occ.len() != 2 {
            return Err(Error::ParseError { pos: 0, msg: format!("label {l} appears {} times, expected 2", occ.len()) });
        }
    }
    let var: BTreeMap<i64, usize> = labels.keys().enumerate().map(|(i, l)| (*l, i)).collect();
    // role of each (crossing, slot); a is In, c is Out, b/d opposite
    let mut role: Vec<[Option<Role>; 4]> = vec![[Some(Role::In), None, Some(Role::Out), None]; quads.len()];
    let flip = |r: Role| if r == Role::In { Role::Out } else { Role::In };
    let set = |role: &mut Vec<[Option<Role>; 4]>, c: usize, s: usize, r: Role| -> Result<bool> {
        match role[c][s] {
            Some(old) if old != r => Err(Error::InconsistentOrientation(format!("arc {} at crossing {}", quads[c][s], c + 1))),
            Some(_) => Ok(false),
            None => {
                role[c][s] = Some(r);
                Ok(true)
            }
        }
    };
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..quads.len() {
                for s in 0..4 {
                    if let Some(r) = role[c][s] {
                        for &(c2, s2) in &labels[&quads[c][s]] {
                            if (c2, s2) != (c, s) {
                                changed |= set(&mut role, c2, s2, flip(r))?;
                            }
                        }
                        if s == 1 || s == 3 {
                            changed |= set(&mut role, c, 4 - s, flip(r))?;
                        }
                    }
                }
            }
        }
        match (0..quads.len()).find(|&c| role[c][3].is_none()) {
            Some(c) => {
                set(&mut role, c, 3, Role::In)?;
            }
            None => break,
        }
    }
    let mut crossings = Vec::new();
    for (c, q) in quads.iter().enumerate() {
        let [a, b, cc, d] = q.map(|l| var[&l]);
        if a == cc {
            return Err(Error::InconsistentOrientation(format!("under-strand of crossing {} is a loop", c + 1)));
        }
        crossings.push(if role[c][3] == Some(Role::In) {
            Crossing { sign: 1, ins: [d, a], outs: [cc, b] }
        } else {
            Crossing { sign: -1, ins: [a, b], outs: [d, cc] }
        });
    }
    let mut nvars = var.len();
    let mut segments = Vec::new();
    for _ in 0..circles {
        segments.push(Segment { tail: nvars, head: nvars });
        nvars += 1;
    }
    if quads.is_empty() && circles == 0 {
        return Err(Error::ParseError { pos: 0, msg: "empty diagram".into() });
    }
    LinkDiagram::new(nvars, crossings, segments)
}

/// Braid word `s1 s2^-1 …` closed up; strand count is the largest index
/// plus one unless given as a leading `b<count>:` token.
pub fn parse_braid(text: &str) -> Result<LinkDiagram> {
    let mut gens: Vec<(usize, i8)> = Vec::new();
    let mut strands = 0usize;
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = text[offset..].find(tok).map_or(offset, |i| offset + i);
        offset = pos + tok.len();
        let err = |msg: &str| Error::ParseError { pos, msg: format!("{msg}: `{tok}`") };
        if let Some(b) = tok.strip_prefix('b').and_then(|t| t.strip_suffix(':')) {
            strands = b.parse().map_err(|_| err("bad strand count"))?;
            continue;
        }
        let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ')).ok_or_else(|| err("expected s<k>"))?;
        let (k, sign) = match body.split_once('^') {
            Some((k, "-1")) => (k, -1),
            Some((k, "1")) => (k, 1),
            Some(_) => return Err(err("only ^1 and ^-1 exponents")),
            None => (body, 1),
        };
        let k: usize = k.parse().map_err(|_| err("bad generator index"))?;
        if k == 0 {
            return Err(err("generators start at s1"));
        }
        gens.push((k, sign));
    }
    let need = gens.iter().map(|(k, _)| k + 1).max().unwrap_or(1);
    let strands = strands.max(need);
    if gens.is_empty() && strands == 0 {
        return Err(Error::ParseError { pos: 0, msg: "empty braid".into() });
    }
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut nvars = strands;
    let mut crossings = Vec::new();
    for (k, sign) in gens {
        let (a, b) = (cur[k - 1], cur[k]);
        let (i, j) = (nvars, nvars + 1);
        nvars += 2;
        crossings.push(Crossing { sign, ins: [a, b], outs: [i, j] });
        cur[k - 1] = i;
        cur[k] = j;
    }
    // close: the last arc at each position is the first one
    let mut rename: Vec<usize> = (0..nvars).collect();
    let mut segments = Vec::new();
    for p in 0..strands {
        if cur[p] == p {
            segments.push(Segment { tail: p, head: p });
        } else {
            rename[cur[p]] = p;
        }
    }
    // compact the labels
    let mut used: Vec<usize> = rename.clone();
    used.sort();
    used.dedup();
    let idx: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let r = |v: usize| idx[&rename[v]];
    let crossings = crossings.into_iter().map(|c| Crossing { sign: c.sign, ins: c.ins.map(r), outs: c.outs.map(r) }).collect();
    let segments = segments.into_iter().map(|s| Segment { tail: r(s.tail), head: r(s.head) }).collect();
    LinkDiagram::new(used.len(), crossings, segments)
}

/// PD text, a braid word, or `unknot`/`unlink <m>`.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let t = text.trim();
    if t.contains('X') || t.split_whitespace().all(|w| w == "O") && !t.is_empty() {
        return parse_pd(t);
    }
    if t == "unknot" {
        return Ok(LinkDiagram::unknot());
    }
    if let Some(m) = t.strip_prefix("unlink") {
        let m: usize = m.trim().parse().map_err(|_| Error::ParseError { pos: 6, msg: "expected `unlink <m>`".into() })?;
        return Ok(LinkDiagram::unlink(m));
    }
    parse_braid(t)
}
