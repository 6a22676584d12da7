//! Alpha-orientations and their distributive lattice.
//!
//! An [`AlphaLattice`] bundles a plane graph, its outdegree prescription,
//! the rigid edges, the essential cycles (bounded faces of the components of
//! the non-rigid subgraph) and the extremal orientations. Moving up in the
//! lattice reverses a clockwise essential cycle to counterclockwise.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::planegraph::{components, rotation_system, trace_faces, Dart, PlaneGraph};

/// Default limit on the number of states [`AlphaLattice::enumerate`] will visit.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Prescribed outdegree per vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaSpec(pub Vec<u32>);

impl AlphaSpec {
    pub fn uniform(n: usize, value: u32) -> Self {
        AlphaSpec(vec![value; n])
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// Necessary condition: the outdegrees account for every edge.
    pub fn check_sum(&self, g: &PlaneGraph) -> Result<()> {
        if self.0.len() != g.num_vertices() {
            return Err(Error::BadParam(format!(
                "alpha has {} entries for {} vertices",
                self.0.len(),
                g.num_vertices()
            )));
        }
        if self.total() != g.num_edges() as u64 {
            return Err(Error::Infeasible(format!(
                "sum of alpha is {} but the graph has {} edges",
                self.total(),
                g.num_edges()
            )));
        }
        Ok(())
    }
}

/// Direction of every edge. Bit `e` set means edge `e` runs from its first
/// to its second endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    words: Vec<u64>,
    len: usize,
}

impl Orientation {
    pub fn all_forward(m: usize) -> Self {
        let mut o = Orientation { words: vec![0; m.div_ceil(64)], len: m };
        for e in 0..m {
            o.set_forward(e, true);
        }
        o
    }

    pub fn num_edges(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_forward(&self, e: usize) -> bool {
        self.words[e >> 6] >> (e & 63) & 1 == 1
    }

    #[inline]
    pub fn set_forward(&mut self, e: usize, forward: bool) {
        if forward {
            self.words[e >> 6] |= 1 << (e & 63);
        } else {
            self.words[e >> 6] &= !(1 << (e & 63));
        }
    }

    #[inline]
    pub fn reverse_edge(&mut self, e: usize) {
        self.words[e >> 6] ^= 1 << (e & 63);
    }

    /// Whether the edge of dart `d` points the same way as `d`.
    #[inline]
    pub fn along(&self, d: Dart) -> bool {
        self.is_forward(d >> 1) == (d & 1 == 0)
    }

    /// `(tail, head)` of edge `e`.
    pub fn arc(&self, g: &PlaneGraph, e: usize) -> (usize, usize) {
        let (a, b) = g.edge(e);
        if self.is_forward(e) {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn outdegrees(&self, g: &PlaneGraph) -> Vec<u32> {
        let mut out = vec![0; g.num_vertices()];
        for e in 0..g.num_edges() {
            out[self.arc(g, e).0] += 1;
        }
        out
    }

    pub fn is_alpha_orientation(&self, g: &PlaneGraph, a: &AlphaSpec) -> bool {
        self.len == g.num_edges() && self.outdegrees(g) == a.0
    }

    /// One character per edge, `1` for forward.
    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|e| if self.is_forward(e) { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut o = Orientation { words: vec![0; s.len().div_ceil(64)], len: s.len() };
        for (e, c) in s.chars().enumerate() {
            match c {
                '1' => o.set_forward(e, true),
                '0' => {}
                _ => return Err(Error::Format(format!("bad orientation character {c:?}"))),
            }
        }
        Ok(o)
    }

    /// Short stable hash for trajectory dumps.
    pub fn state_hash(&self) -> u64 {
        // FNV-1a over the words
        let mut h: u64 = 0xcbf29ce484222325;
        for w in &self.words {
            for b in w.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleSense {
    Clockwise,
    Counterclockwise,
    Undirected,
}

/// A bounded face of a component of the non-rigid subgraph, walked
/// counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialCycle {
    pub id: usize,
    pub darts: Vec<Dart>,
}

impl EssentialCycle {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|&d| d >> 1)
    }

    pub fn sense(&self, x: &Orientation) -> CycleSense {
        let along = self.darts.iter().filter(|&&d| x.along(d)).count();
        if along == self.darts.len() {
            CycleSense::Counterclockwise
        } else if along == 0 {
            CycleSense::Clockwise
        } else {
            CycleSense::Undirected
        }
    }

    pub fn is_directed(&self, x: &Orientation) -> bool {
        self.sense(x) != CycleSense::Undirected
    }
}

/// Level of every essential cycle: how often it has been flipped upward on a
/// flip sequence from the minimal orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PotentialVector(pub Vec<u32>);

impl PotentialVector {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn distance(&self, other: &PotentialVector) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs())
            .sum()
    }
}

/// Finds some alpha-orientation with a unit-capacity flow where every edge
/// chooses the endpoint that becomes its tail.
pub fn feasible_orientation(g: &PlaneGraph, a: &AlphaSpec) -> Result<Orientation> {
    a.check_sum(g)?;
    let m = g.num_edges();
    let n = g.num_vertices();
    // nodes: source, edges, vertices, sink
    let source = 0;
    let sink = 1 + m + n;
    let mut flow = crate::flow::Dinic::new(sink + 1);
    let mut choice = Vec::with_capacity(m);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        flow.add_edge(source, 1 + e, 1);
        let fu = flow.add_edge(1 + e, 1 + m + u, 1);
        flow.add_edge(1 + e, 1 + m + v, 1);
        choice.push(fu);
    }
    for v in 0..n {
        flow.add_edge(1 + m + v, sink, a.get(v) as i64);
    }
    let value = flow.max_flow(source, sink);
    if value != m as i64 {
        return Err(Error::Infeasible(format!(
            "maximum flow {value} is short of {m} edges"
        )));
    }
    let mut x = Orientation::all_forward(m);
    for (e, &arc) in choice.iter().enumerate() {
        // flow on the first arc means the first endpoint is the tail
        x.set_forward(e, flow.flow_on(arc) == 1);
    }
    debug_assert!(x.is_alpha_orientation(g, a));
    Ok(x)
}

/// Edges on no directed cycle of `x`. For an alpha-orientation these are the
/// edges with the same direction in every alpha-orientation.
pub fn rigid_edges(g: &PlaneGraph, x: &Orientation) -> Vec<bool> {
    let n = g.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.num_edges() {
        let (t, h) = x.arc(g, e);
        adj[t].push(h);
    }
    let comp = strongly_connected(&adj);
    (0..g.num_edges())
        .map(|e| {
            let (a, b) = g.edge(e);
            comp[a] != comp[b]
        })
        .collect()
}

/// Iterative Tarjan. Returns a component label per vertex.
pub(crate) fn strongly_connected(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Bounded faces of every connected component of the non-rigid subgraph,
/// each component embedded with the rotation it inherits from `g`.
pub fn essential_cycles(g: &PlaneGraph, rigid: &[bool]) -> Vec<EssentialCycle> {
    let keep = |e: usize| !rigid[e];
    let rot = rotation_system(g.coords(), g.edges(), keep);
    let fs = trace_faces(g.coords(), g.edges(), &rot);
    let comp = components(g.num_vertices(), g.edges(), keep);
    // outer face of each component: the face walk with the smallest signed area
    let mut outer: HashMap<usize, usize> = HashMap::new();
    for (f, walk) in fs.faces.iter().enumerate() {
        let c = comp[g.dart_ends(walk.darts[0]).0];
        let entry = outer.entry(c).or_insert(f);
        if fs.areas[f] < fs.areas[*entry] {
            *entry = f;
        }
    }
    let mut cycles = Vec::new();
    for (f, walk) in fs.faces.into_iter().enumerate() {
        let c = comp[g.dart_ends(walk.darts[0]).0];
        if outer[&c] != f {
            cycles.push(EssentialCycle { id: cycles.len(), darts: walk.darts });
        }
    }
    cycles
}

/// The distributive lattice of alpha-orientations of a plane graph.
#[derive(Debug, Clone)]
pub struct AlphaLattice {
    graph: PlaneGraph,
    alpha: AlphaSpec,
    rigid: Vec<bool>,
    cycles: Vec<EssentialCycle>,
    /// Essential cycle to the left of every dart, if any.
    dart_cycle: Vec<Option<usize>>,
    min: Orientation,
    max: Orientation,
    max_potential: PotentialVector,
}

impl AlphaLattice {
    pub fn new(g: &PlaneGraph, a: &AlphaSpec) -> Result<Self> {
        let x = feasible_orientation(g, a)?;
        let rigid = rigid_edges(g, &x);
        let cycles = essential_cycles(g, &rigid);
        let mut dart_cycle = vec![None; 2 * g.num_edges()];
        for c in &cycles {
            for &d in &c.darts {
                dart_cycle[d] = Some(c.id);
            }
        }
        let mut lat = AlphaLattice {
            graph: g.clone(),
            alpha: a.clone(),
            rigid,
            cycles,
            dart_cycle,
            min: x.clone(),
            max: x.clone(),
            max_potential: PotentialVector(Vec::new()),
        };
        lat.min = lat.extremal(&x, Extremum::Min);
        lat.max = lat.extremal(&x, Extremum::Max);
        lat.max_potential = lat.potential_vector(&lat.max);
        Ok(lat)
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn rigid(&self) -> &[bool] {
        &self.rigid
    }

    pub fn rigid_edge_list(&self) -> Vec<usize> {
        (0..self.rigid.len()).filter(|&e| self.rigid[e]).collect()
    }

    pub fn cycles(&self) -> &[EssentialCycle] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle(&self, c: usize) -> &EssentialCycle {
        &self.cycles[c]
    }

    /// Essential cycle on the left of a dart.
    pub fn cycle_left_of(&self, d: Dart) -> Option<usize> {
        self.dart_cycle[d]
    }

    /// Essential cycles on both sides of an edge.
    pub fn cycles_at_edge(&self, e: usize) -> [Option<usize>; 2] {
        [self.dart_cycle[2 * e], self.dart_cycle[2 * e + 1]]
    }

    pub fn min(&self) -> &Orientation {
        &self.min
    }

    pub fn max(&self) -> &Orientation {
        &self.max
    }

    /// Potentials of the maximal orientation.
    pub fn max_potential(&self) -> &PotentialVector {
        &self.max_potential
    }

    /// Length of a maximal chain of the lattice.
    pub fn height(&self) -> u64 {
        self.max_potential.total()
    }

    pub fn sense(&self, x: &Orientation, c: usize) -> CycleSense {
        self.cycles[c].sense(x)
    }

    /// Reverses a directed essential cycle.
    pub fn flip(&self, x: &Orientation, c: usize) -> Result<Orientation> {
        let mut y = x.clone();
        self.flip_in_place(&mut y, c)?;
        Ok(y)
    }

    pub fn flip_in_place(&self, x: &mut Orientation, c: usize) -> Result<()> {
        if !self.cycles[c].is_directed(x) {
            return Err(Error::NotDirected(c));
        }
        for e in self.cycles[c].edges() {
            x.reverse_edge(e);
        }
        Ok(())
    }

    pub fn directed_cycles(&self, x: &Orientation) -> Vec<(usize, CycleSense)> {
        (0..self.cycles.len())
            .filter_map(|c| match self.sense(x, c) {
                CycleSense::Undirected => None,
                s => Some((c, s)),
            })
            .collect()
    }

    /// Pushes `x` to the bottom (reversing counterclockwise cycles) or the
    /// top (reversing clockwise cycles), always taking the lowest cycle id.
    pub fn extremal(&self, x: &Orientation, which: Extremum) -> Orientation {
        let target = match which {
            Extremum::Min => CycleSense::Counterclockwise,
            Extremum::Max => CycleSense::Clockwise,
        };
        let mut y = x.clone();
        while let Some(c) = (0..self.cycles.len()).find(|&c| self.sense(&y, c) == target) {
            for e in self.cycles[c].edges() {
                y.reverse_edge(e);
            }
        }
        y
    }

    /// Counts the down-flips per essential cycle on the greedy descent from
    /// `x` to the minimum.
    pub fn potential_vector(&self, x: &Orientation) -> PotentialVector {
        let mut levels = vec![0u32; self.cycles.len()];
        let mut y = x.clone();
        while let Some(c) = (0..self.cycles.len()).find(|&c| self.sense(&y, c) == CycleSense::Counterclockwise) {
            for e in self.cycles[c].edges() {
                y.reverse_edge(e);
            }
            levels[c] += 1;
        }
        PotentialVector(levels)
    }

    pub fn lattice_distance(&self, x: &Orientation, y: &Orientation) -> u64 {
        self.potential_vector(x).distance(&self.potential_vector(y))
    }

    /// Breadth-first search over flips from the minimal orientation.
    pub fn enumerate(&self, cap: usize) -> Result<StateSpace> {
        let mut states = vec![self.min.clone()];
        let mut potentials = vec![PotentialVector(vec![0; self.cycles.len()])];
        let mut index = HashMap::from([(self.min.clone(), 0usize)]);
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for c in 0..self.cycles.len() {
                let sense = self.sense(&states[i], c);
                if sense == CycleSense::Undirected {
                    continue;
                }
                let mut y = states[i].clone();
                for e in self.cycles[c].edges() {
                    y.reverse_edge(e);
                }
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        let mut p = potentials[i].clone();
                        if sense == CycleSense::Clockwise {
                            p.0[c] += 1;
                        } else {
                            p.0[c] -= 1;
                        }
                        let j = states.len();
                        index.insert(y.clone(), j);
                        states.push(y);
                        potentials.push(p);
                        adjacency.push(Vec::new());
                        queue.push_back(j);
                        j
                    }
                };
                adjacency[i].push((j, c));
            }
        }
        Ok(StateSpace { states, index, adjacency, potentials })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

pub fn extremal_orientation(g: &PlaneGraph, a: &AlphaSpec, which: Extremum) -> Result<Orientation> {
    let lat = AlphaLattice::new(g, a)?;
    Ok(match which {
        Extremum::Min => lat.min().clone(),
        Extremum::Max => lat.max().clone(),
    })
}

/// All alpha-orientations together with the flip (cover) graph.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub states: Vec<Orientation>,
    pub index: HashMap<Orientation, usize>,
    /// `(neighbor, flipped cycle)` per state.
    pub adjacency: Vec<Vec<(usize, usize)>>,
    pub potentials: Vec<PotentialVector>,
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, x: &Orientation) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Breadth-first distances in the cover graph from one state.
    pub fn bfs(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "format": 1,
            "states": self.states.iter().map(Orientation::to_bitstring).collect::<Vec<_>>(),
            "adjacency": self.adjacency.iter()
                .map(|row| row.iter().map(|&(j, _)| j).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// One row per state: index followed by the level of every cycle.
    pub fn potentials_csv(&self) -> String {
        let k = self.potentials.first().map_or(0, |p| p.0.len());
        let mut s = String::from("state");
        for c in 0..k {
            s.push_str(&format!(",c{c}"));
        }
        s.push('\n');
        for (i, p) in self.potentials.iter().enumerate() {
            s.push_str(&i.to_string());
            for v in &p.0 {
                s.push_str(&format!(",{v}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Every alpha-orientation found by a backtracking filter over all edge
/// directions. Independent of the lattice machinery; meant for small graphs.
pub fn brute_force_orientations(g: &PlaneGraph, a: &AlphaSpec, cap: usize) -> Result<Vec<Orientation>> {
    a.check_sum(g)?;
    let m = g.num_edges();
    let n = g.num_vertices();
    let mut remaining = vec![0u32; n];
    for &(u, v) in g.edges() {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut out = vec![0u32; n];
    let mut x = Orientation::all_forward(m);
    let mut found = Vec::new();
    fn rec(
        e: usize,
        g: &PlaneGraph,
        a: &AlphaSpec,
        out: &mut [u32],
        remaining: &mut [u32],
        x: &mut Orientation,
        found: &mut Vec<Orientation>,
        cap: usize,
    ) -> Result<()> {
        if e == g.num_edges() {
            if found.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            found.push(x.clone());
            return Ok(());
        }
        let (u, v) = g.edge(e);
        remaining[u] -= 1;
        remaining[v] -= 1;
        for (tail, head, fwd) in [(u, v, true), (v, u, false)] {
            out[tail] += 1;
            let ok = out[tail] <= a.get(tail)
                && out[head] + remaining[head] >= a.get(head)
                && out[tail] + remaining[tail] >= a.get(tail);
            if ok {
                x.set_forward(e, fwd);
                rec(e + 1, g, a, out, remaining, x, found, cap)?;
            }
            out[tail] -= 1;
        }
        remaining[u] += 1;
        remaining[v] += 1;
        Ok(())
    }
    rec(0, g, a, &mut out, &mut remaining, &mut x, &mut found, cap)?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PlaneGraph {
        PlaneGraph::from_indexed(
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap()
    }

    #[test]
    fn four_cycle_with_unit_alpha_is_rotational() {
        let g = square();
        let a = AlphaSpec::uniform(4, 1);
        let x = feasible_orientation(&g, &a).unwrap();
        assert!(x.is_alpha_orientation(&g, &a));
        let lat = AlphaLattice::new(&g, &a).unwrap();
        assert_eq!(lat.num_cycles(), 1);
        assert!(lat.cycle(0).is_directed(&x));
        let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
        assert_eq!(space.len(), 2);
        assert_eq!(lat.sense(lat.min(), 0), CycleSense::Clockwise);
        assert_eq!(lat.sense(lat.max(), 0), CycleSense::Counterclockwise);
    }

    #[test]
    fn wrong_degree_sum_is_infeasible() {
        let g = square();
        let a = AlphaSpec(vec![2, 0, 0, 0]);
        assert!(matches!(feasible_orientation(&g, &a), Err(Error::Infeasible(_))));
    }

    #[test]
    fn right_sum_but_unrealizable_is_infeasible() {
        let g = square();
        // vertices 0 and 1 would both need the edge between them
        let a = AlphaSpec(vec![2, 2, 0, 0]);
        assert!(matches!(feasible_orientation(&g, &a), Err(Error::Infeasible(_))));
    }

    #[test]
    fn all_rigid_when_no_cycle_can_exist() {
        let g = square();
        let a = AlphaSpec(vec![2, 0, 2, 0]);
        let lat = AlphaLattice::new(&g, &a).unwrap();
        assert_eq!(lat.num_cycles(), 0);
        assert!(lat.rigid().iter().all(|&r| r));
        assert_eq!(lat.enumerate(10).unwrap().len(), 1);
    }

    #[test]
    fn flip_of_undirected_cycle_is_rejected() {
        let g = square();
        let a = AlphaSpec::uniform(4, 1);
        let lat = AlphaLattice::new(&g, &a).unwrap();
        let mut y = lat.min().clone();
        y.reverse_edge(0);
        assert_eq!(lat.sense(&y, 0), CycleSense::Undirected);
        assert_eq!(lat.flip(&y, 0), Err(Error::NotDirected(0)));
    }

    #[test]
    fn bitstring_round_trip() {
        let mut x = Orientation::all_forward(70);
        x.reverse_edge(3);
        x.reverse_edge(65);
        let s = x.to_bitstring();
        assert_eq!(Orientation::from_bitstring(&s).unwrap(), x);
        assert!(Orientation::from_bitstring("01x").is_err());
    }

    #[test]
    fn scc_labels_cycle_together() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let c = strongly_connected(&adj);
        assert_eq!(c[0], c[1]);
        assert_eq!(c[1], c[2]);
        assert_ne!(c[2], c[3]);
    }
}
