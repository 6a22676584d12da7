//! Separating decompositions of quadrangulations and Schnyder woods of
//! triangulations, in bijection with 2- and 3-orientations.
//!
//! The coloring of an orientation is fixed once we know, at every vertex,
//! which color its first out-edge gets: the angular rules then color every
//! incident edge. Each edge must receive the same color from both ends,
//! which gives one equation (mod 2 or mod 3) per edge; the terminals pin the
//! solution. We solve the system by propagation.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::orientations::Orientation;
use crate::planegraph::{dart_edge, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    fn from_index(i: u8) -> Color {
        match i % 3 {
            0 => Color::Red,
            1 => Color::Green,
            _ => Color::Blue,
        }
    }

    fn index(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// Red/blue coloring of a quadrangulation; terminals `[s, t]`.
    SeparatingDecomposition,
    /// Red/green/blue coloring of a triangulation; terminals are the red,
    /// green and blue corners, in clockwise order.
    SchnyderWood,
}

/// Colors and directions of the edges. Outer edges of a triangulation carry
/// no color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub kind: StructureKind,
    pub orientation: Orientation,
    pub colors: Vec<Option<Color>>,
    pub terminals: Vec<usize>,
}

/// Violations found by [`validate`]; empty for a valid structure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Edges around `v` in clockwise order, as (edge, outgoing).
fn clockwise(g: &PlaneGraph, x: &Orientation, v: usize) -> Vec<(usize, bool)> {
    g.rotation(v).iter().rev().map(|&d| (dart_edge(d), x.along(d))).collect()
}

/// Solves `val[u] - val[v] = c (mod m)` constraints with some values fixed.
struct ModSystem {
    m: u8,
    adj: Vec<Vec<(usize, u8)>>,
    fixed: Vec<Option<u8>>,
}

impl ModSystem {
    fn new(n: usize, m: u8) -> Self {
        ModSystem { m, adj: vec![Vec::new(); n], fixed: vec![None; n] }
    }

    /// val[u] = val[v] + c
    fn relate(&mut self, u: usize, v: usize, c: u8) {
        let c = c % self.m;
        self.adj[v].push((u, c));
        self.adj[u].push((v, (self.m - c) % self.m));
    }

    fn fix(&mut self, u: usize, val: u8) -> Result<()> {
        let val = val % self.m;
        match self.fixed[u] {
            Some(old) if old != val => Err(Error::PropagationStuck(format!("conflicting terminal constraints at vertex {u}"))),
            _ => {
                self.fixed[u] = Some(val);
                Ok(())
            }
        }
    }

    fn solve(&self, unknowns: &[usize]) -> Result<Vec<Option<u8>>> {
        let mut val = self.fixed.clone();
        let mut queue: VecDeque<usize> = (0..val.len()).filter(|&u| val[u].is_some()).collect();
        while let Some(v) = queue.pop_front() {
            let vv = val[v].unwrap();
            for &(u, c) in &self.adj[v] {
                let want = (vv + c) % self.m;
                match val[u] {
                    None => {
                        val[u] = Some(want);
                        queue.push_back(u);
                    }
                    Some(have) if have != want => {
                        return Err(Error::PropagationStuck(format!("inconsistent angular rules at vertex {u}")));
                    }
                    _ => {}
                }
            }
        }
        if let Some(&u) = unknowns.iter().find(|&&u| val[u].is_none()) {
            return Err(Error::PropagationStuck(format!("vertex {u} is not reached from the terminals")));
        }
        Ok(val)
    }
}

/// Position (among the out-edges, in clockwise order from the first
/// out-edge of the rotation) of the out-edge whose color edge `k` of the
/// clockwise list takes at a vertex, and for Schnyder sectors, the index of
/// the out-edge opening the sector.
fn out_positions(cw: &[(usize, bool)]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; cw.len()];
    let mut j = 0;
    for (k, &(_, out)) in cw.iter().enumerate() {
        if out {
            pos[k] = j;
            j += 1;
        }
    }
    pos
}

/// Index of the nearest out-edge before (`forward = false`) or after
/// (`forward = true`) position `k` in the cyclic clockwise list.
fn nearest_out(cw: &[(usize, bool)], pos: &[usize], k: usize, forward: bool) -> usize {
    let n = cw.len();
    for step in 1..=n {
        let i = if forward { (k + step) % n } else { (k + n - step) % n };
        if cw[i].1 {
            return pos[i];
        }
    }
    unreachable!("vertex without out-edges")
}

/// The separating decomposition whose underlying orientation is `x`.
pub fn color_separating_decomposition(
    g: &PlaneGraph,
    x: &Orientation,
    s: usize,
    t: usize,
) -> Result<EdgeColoring> {
    let white = {
        let b = g
            .bipartition()
            .ok_or_else(|| Error::BadParam("separating decompositions need a bipartite graph".into()))?;
        // s is black
        let s_side = b[s];
        b.iter().map(|&c| c != s_side).collect::<Vec<bool>>()
    };
    let n = g.num_vertices();
    // rel[v][edge] = which out-edge (0 or 1) determines the edge's color at v
    let mut rel: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for v in 0..n {
        if v == s || v == t {
            continue;
        }
        let cw = clockwise(g, x, v);
        let outs = cw.iter().filter(|e| e.1).count();
        if outs != 2 {
            return Err(Error::BadParam(format!("vertex {v} has outdegree {outs}, expected 2")));
        }
        let pos = out_positions(&cw);
        for (k, &(e, out)) in cw.iter().enumerate() {
            let r = if out { pos[k] } else { nearest_out(&cw, &pos, k, !white[v]) };
            rel[v].push((e, r as u8));
        }
    }
    let rel_of = |v: usize, e: usize| rel[v].iter().find(|p| p.0 == e).unwrap().1;
    // unknown b[v] = index of the red out-edge; edge color at v is red iff rel == b
    let mut sys = ModSystem::new(n, 2);
    for e in 0..g.num_edges() {
        let (u, v) = x.arc(g, e);
        match (v == s, v == t) {
            (true, _) => sys.fix(u, rel_of(u, e))?,
            (_, true) => sys.fix(u, 1 ^ rel_of(u, e))?,
            _ => {
                if u == s || u == t {
                    return Err(Error::BadParam(format!("terminal {u} has an outgoing edge")));
                }
                sys.relate(u, v, rel_of(u, e) ^ rel_of(v, e));
            }
        }
    }
    let inner: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let b = sys.solve(&inner)?;
    let mut colors = vec![None; g.num_edges()];
    for e in 0..g.num_edges() {
        let (u, v) = x.arc(g, e);
        colors[e] = Some(if v == s {
            Color::Red
        } else if v == t {
            Color::Blue
        } else if rel_of(u, e) == b[u].unwrap() {
            Color::Red
        } else {
            Color::Blue
        });
    }
    Ok(EdgeColoring {
        kind: StructureKind::SeparatingDecomposition,
        orientation: x.clone(),
        colors,
        terminals: vec![s, t],
    })
}

/// The Schnyder wood whose inner edges are oriented as in `x`. `corners`
/// are the red, green and blue outer vertices in clockwise order; the
/// direction of the outer edges in `x` is ignored.
pub fn color_schnyder_wood(g: &PlaneGraph, x: &Orientation, corners: [usize; 3]) -> Result<EdgeColoring> {
    let n = g.num_vertices();
    let is_corner = |v: usize| corners.contains(&v);
    let outer_edge = |e: usize| {
        let (a, b) = g.edge(e);
        is_corner(a) && is_corner(b)
    };
    // at inner v: out-edge j of the clockwise list gets color k_v + j; an
    // incoming edge in the sector after out-edge j gets k_v + j + 2
    let mut shift: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for v in 0..n {
        if is_corner(v) {
            continue;
        }
        let cw = clockwise(g, x, v);
        let outs = cw.iter().filter(|e| e.1).count();
        if outs != 3 {
            return Err(Error::BadParam(format!("inner vertex {v} has outdegree {outs}, expected 3")));
        }
        let pos = out_positions(&cw);
        for (k, &(e, out)) in cw.iter().enumerate() {
            let c = if out { pos[k] as u8 } else { nearest_out(&cw, &pos, k, false) as u8 + 2 };
            shift[v].push((e, c % 3));
        }
    }
    let shift_of = |v: usize, e: usize| shift[v].iter().find(|p| p.0 == e).unwrap().1;
    let mut sys = ModSystem::new(n, 3);
    for e in 0..g.num_edges() {
        if outer_edge(e) {
            continue;
        }
        let (u, v) = x.arc(g, e);
        if is_corner(u) {
            return Err(Error::BadParam(format!("corner {u} has an outgoing inner edge")));
        }
        if let Some(ci) = corners.iter().position(|&c| c == v) {
            // k_u + shift_u(e) = ci
            sys.fix(u, (ci as u8 + 3 - shift_of(u, e)) % 3)?;
        } else {
            // k_u + shift_u(e) = k_v + shift_v(e)
            sys.relate(u, v, (shift_of(v, e) + 3 - shift_of(u, e)) % 3);
        }
    }
    let inner: Vec<usize> = (0..n).filter(|&v| !is_corner(v)).collect();
    let k = sys.solve(&inner)?;
    let mut colors = vec![None; g.num_edges()];
    for e in 0..g.num_edges() {
        if outer_edge(e) {
            continue;
        }
        let (u, _) = x.arc(g, e);
        colors[e] = Some(Color::from_index(k[u].unwrap() + shift_of(u, e)));
    }
    Ok(EdgeColoring {
        kind: StructureKind::SchnyderWood,
        orientation: x.clone(),
        colors,
        terminals: corners.to_vec(),
    })
}

/// The orientation underlying a coloring.
pub fn forget(c: &EdgeColoring) -> Orientation {
    c.orientation.clone()
}

/// Checks the local angular rules and the monochromatic path properties.
pub fn validate(g: &PlaneGraph, c: &EdgeColoring) -> ValidationReport {
    let mut report = ValidationReport::default();
    let x = &c.orientation;
    match c.kind {
        StructureKind::SeparatingDecomposition => validate_separating(g, c, x, &mut report),
        StructureKind::SchnyderWood => validate_schnyder(g, c, x, &mut report),
    }
    report
}

/// Follows out-edges of one color from `v`; returns the visited vertices
/// (ending at a vertex without such an out-edge) or `None` on a cycle or
/// an ambiguous vertex.
fn color_path(g: &PlaneGraph, c: &EdgeColoring, v: usize, col: Color) -> Option<Vec<usize>> {
    let mut path = vec![v];
    let mut seen = vec![false; g.num_vertices()];
    seen[v] = true;
    let mut cur = v;
    loop {
        let outs: Vec<usize> = g
            .rotation(cur)
            .iter()
            .filter(|&&d| c.orientation.along(d) && c.colors[dart_edge(d)] == Some(col))
            .map(|&d| g.dart_ends(d).1)
            .collect();
        match outs.as_slice() {
            [] => return Some(path),
            [w] => {
                if seen[*w] {
                    return None;
                }
                seen[*w] = true;
                path.push(*w);
                cur = *w;
            }
            _ => return None,
        }
    }
}

/// Colors around `v` in clockwise order form one cyclic interval per color.
fn is_interval(cols: &[Color]) -> bool {
    let changes = (0..cols.len()).filter(|&i| cols[i] != cols[(i + 1) % cols.len()]).count();
    let distinct = {
        let mut d = cols.to_vec();
        d.sort();
        d.dedup();
        d.len()
    };
    changes == distinct || (distinct == 1 && changes == 0)
}

fn validate_separating(g: &PlaneGraph, c: &EdgeColoring, x: &Orientation, report: &mut ValidationReport) {
    let (s, t) = (c.terminals[0], c.terminals[1]);
    let white = match g.bipartition() {
        Some(b) => b.iter().map(|&col| col != b[s]).collect::<Vec<bool>>(),
        None => {
            report.violations.push("graph is not bipartite".into());
            return;
        }
    };
    for (term, want) in [(s, Color::Red), (t, Color::Blue)] {
        for &d in g.rotation(term) {
            let e = dart_edge(d);
            if x.along(d) || c.colors[e] != Some(want) {
                report.violations.push(format!("edge {e} at terminal {term} is not ingoing {}", want.name()));
            }
        }
    }
    for v in 0..g.num_vertices() {
        if v == s || v == t {
            continue;
        }
        let cw = clockwise(g, x, v);
        let Some(cols): Option<Vec<Color>> = cw.iter().map(|&(e, _)| c.colors[e]).collect() else {
            report.violations.push(format!("vertex {v} has an uncolored edge"));
            continue;
        };
        if cols.iter().any(|&col| col == Color::Green) {
            report.violations.push(format!("vertex {v} has a green edge"));
            continue;
        }
        if !cols.contains(&Color::Red) || !cols.contains(&Color::Blue) || !is_interval(&cols) {
            report.violations.push(format!("vertex {v} does not have one red and one blue interval"));
            continue;
        }
        // walk each interval in clockwise order
        let n = cw.len();
        let start = (0..n).find(|&i| cols[i] != cols[(i + n - 1) % n]).unwrap();
        let mut i = start;
        for _ in 0..2 {
            let col = cols[i];
            let mut run = Vec::new();
            while cols[i] == col && run.len() < n {
                run.push(cw[i].1);
                i = (i + 1) % n;
            }
            let want_out = if white[v] { 0 } else { run.len() - 1 };
            let ok = run.iter().enumerate().all(|(j, &out)| out == (j == want_out));
            if !ok {
                report.violations.push(format!(
                    "vertex {v} ({}) violates the {} interval rule",
                    if white[v] { "white" } else { "black" },
                    col.name()
                ));
            }
        }
    }
    if !report.is_valid() {
        return;
    }
    for v in 0..g.num_vertices() {
        if v == s || v == t {
            continue;
        }
        let red = color_path(g, c, v, Color::Red);
        let blue = color_path(g, c, v, Color::Blue);
        match (red, blue) {
            (Some(r), Some(b)) if r.last() == Some(&s) && b.last() == Some(&t) => {
                if r[1..].iter().any(|u| b[1..].contains(u)) {
                    report.violations.push(format!("red and blue paths from {v} meet"));
                }
            }
            _ => report.violations.push(format!("vertex {v} lacks a red path to s or a blue path to t")),
        }
    }
}

fn validate_schnyder(g: &PlaneGraph, c: &EdgeColoring, x: &Orientation, report: &mut ValidationReport) {
    let corners = &c.terminals;
    let is_corner = |v: usize| corners.contains(&v);
    for (ci, &corner) in corners.iter().enumerate() {
        for &d in g.rotation(corner) {
            let e = dart_edge(d);
            let w = g.dart_ends(d).1;
            if is_corner(w) {
                continue;
            }
            if x.along(d) || c.colors[e] != Some(Color::from_index(ci as u8)) {
                report.violations.push(format!("inner edge {e} at corner {corner} is not ingoing in its color"));
            }
        }
    }
    for v in 0..g.num_vertices() {
        if is_corner(v) {
            continue;
        }
        let cw = clockwise(g, x, v);
        let Some(cols): Option<Vec<Color>> = cw.iter().map(|&(e, _)| c.colors[e]).collect() else {
            report.violations.push(format!("vertex {v} has an uncolored edge"));
            continue;
        };
        let outs: Vec<usize> = (0..cw.len()).filter(|&k| cw[k].1).collect();
        if outs.len() != 3 {
            report.violations.push(format!("vertex {v} has {} out-edges", outs.len()));
            continue;
        }
        let out_cols: Vec<u8> = outs.iter().map(|&k| cols[k].index()).collect();
        let cyclic = (0..3).all(|j| (out_cols[j] + 1) % 3 == out_cols[(j + 1) % 3]);
        if !cyclic {
            report.violations.push(format!("out-edges of {v} are not red, green, blue in clockwise order"));
            continue;
        }
        let pos = out_positions(&cw);
        for k in 0..cw.len() {
            if cw[k].1 {
                continue;
            }
            let j = nearest_out(&cw, &pos, k, false);
            let third = (out_cols[j] + 2) % 3;
            if cols[k].index() != third {
                report.violations.push(format!("incoming edge {} at {v} has the wrong sector color", cw[k].0));
            }
        }
    }
    if !report.is_valid() {
        return;
    }
    for v in 0..g.num_vertices() {
        if is_corner(v) {
            continue;
        }
        let mut paths = Vec::new();
        for (ci, &corner) in corners.iter().enumerate() {
            match color_path(g, c, v, Color::from_index(ci as u8)) {
                Some(p) if p.last() == Some(&corner) => paths.push(p),
                _ => report.violations.push(format!("vertex {v} lacks a path of color {ci} to its corner")),
            }
        }
        if paths.len() == 3 {
            for a in 0..3 {
                for b in a + 1..3 {
                    if paths[a][1..].iter().any(|u| paths[b][1..].contains(u)) {
                        report.violations.push(format!("monochromatic paths from {v} meet"));
                    }
                }
            }
        }
    }
}

/// DOT drawing with colored, directed edges at the embedding coordinates.
pub fn to_dot(g: &PlaneGraph, c: &EdgeColoring) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..g.num_vertices() {
        let [x, y] = g.coords()[v];
        let _ = writeln!(s, "  {} [pos=\"{x:.6},{y:.6}!\"];", g.id(v));
    }
    for e in 0..g.num_edges() {
        let (u, v) = c.orientation.arc(g, e);
        match c.colors[e] {
            Some(col) => {
                let _ = writeln!(s, "  {} -> {} [color={}];", g.id(u), g.id(v), col.name());
            }
            None => {
                let _ = writeln!(s, "  {} -> {} [color=black, dir=none];", g.id(u), g.id(v));
            }
        }
    }
    s.push_str("}\n");
    s
}
