//! Independent oracles shared by the integration tests. They work from the
//! raw edge list, alpha and the cycle darts only, never through the
//! library's enumeration, potentials, kernels or path counting.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use alphaflip::orientations::{AlphaLattice, AlphaSpec, Orientation};
use alphaflip::planegraph::PlaneGraph;

/// All orientations with outdegree alpha, by backtracking over the edges.
pub fn brute_force(g: &PlaneGraph, a: &AlphaSpec) -> Vec<Orientation> {
    let n = g.num_vertices();
    let edges = g.edges().to_vec();
    let mut remaining = vec![0u32; n];
    for &(u, v) in &edges {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut out = vec![0u32; n];
    let mut fwd = vec![false; edges.len()];
    let mut found = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        e: usize,
        edges: &[(usize, usize)],
        a: &AlphaSpec,
        out: &mut [u32],
        remaining: &mut [u32],
        fwd: &mut [bool],
        found: &mut Vec<Orientation>,
    ) {
        if e == edges.len() {
            if (0..out.len()).all(|v| out[v] == a.get(v)) {
                let mut x = Orientation::all_forward(edges.len());
                for (i, &f) in fwd.iter().enumerate() {
                    x.set_forward(i, f);
                }
                found.push(x);
            }
            return;
        }
        let (u, v) = edges[e];
        remaining[u] -= 1;
        remaining[v] -= 1;
        for (tail, head, f) in [(u, v, true), (v, u, false)] {
            out[tail] += 1;
            let ok = out[tail] <= a.get(tail) && out[head] + remaining[head] >= a.get(head) && out[tail] + remaining[tail] >= a.get(tail);
            if ok {
                fwd[e] = f;
                go(e + 1, edges, a, out, remaining, fwd, found);
            }
            out[tail] -= 1;
        }
        remaining[u] += 1;
        remaining[v] += 1;
    }

    go(0, &edges, a, &mut out, &mut remaining, &mut fwd, &mut found);
    found
}

/// Sense of cycle `c` in `x`: +1 counterclockwise (all darts followed),
/// -1 clockwise, 0 not directed.
pub fn sense(lat: &AlphaLattice, x: &Orientation, c: usize) -> i32 {
    let darts = &lat.cycle(c).darts;
    let along = darts.iter().filter(|&&d| x.along(d)).count();
    if along == darts.len() {
        1
    } else if along == 0 {
        -1
    } else {
        0
    }
}

/// Reverses every edge of cycle `c`.
pub fn reverse(lat: &AlphaLattice, x: &Orientation, c: usize) -> Orientation {
    let mut y = x.clone();
    for &d in &lat.cycle(c).darts {
        let e = d >> 1;
        y.set_forward(e, !y.is_forward(e));
    }
    y
}

/// The flip graph grown by breadth-first search from the minimum, with
/// all-pairs distances and potentials (flip counts along a shortest path
/// from the minimum, which is a monotone chain).
pub struct FlipGraph {
    pub states: Vec<Orientation>,
    pub index: HashMap<Orientation, usize>,
    pub adj: Vec<Vec<(usize, usize)>>,
    pub potentials: Vec<Vec<u32>>,
    pub dist: Vec<Vec<u32>>,
}

impl FlipGraph {
    pub fn new(lat: &AlphaLattice, with_distances: bool) -> Self {
        let c = lat.num_cycles();
        let start = lat.min().clone();
        let mut states = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut potentials = vec![vec![0u32; c]];
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut q = VecDeque::from([0usize]);
        while let Some(i) = q.pop_front() {
            for f in 0..c {
                let s = sense(lat, &states[i], f);
                if s == 0 {
                    continue;
                }
                let y = reverse(lat, &states[i], f);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = states.len();
                        let mut p = potentials[i].clone();
                        // an upward flip turns clockwise into counterclockwise
                        assert_eq!(s, -1, "first visit must be an upward flip");
                        p[f] += 1;
                        index.insert(y.clone(), j);
                        states.push(y);
                        potentials.push(p);
                        adj.push(vec![]);
                        q.push_back(j);
                        j
                    }
                };
                adj[i].push((j, f));
            }
        }
        let mut fg = FlipGraph { states, index, adj, potentials, dist: vec![] };
        if with_distances {
            fg.dist = (0..fg.states.len()).map(|i| fg.bfs(i)).collect();
        }
        fg
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn bfs(&self, from: usize) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.len()];
        d[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            for &(w, _) in &self.adj[u] {
                if d[w] == u32::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }
}

/// Dense face-flip kernel: each directed cycle flips with probability 1/(2C).
pub fn face_flip_kernel(fg: &FlipGraph, num_cycles: usize) -> Vec<Vec<f64>> {
    let n = fg.len();
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        for &(j, _) in &fg.adj[i] {
            k[i][j] += 1.0 / (2.0 * num_cycles as f64);
        }
        let out: f64 = k[i].iter().sum();
        k[i][i] += 1.0 - out;
    }
    k
}

/// Worst-start total variation distance to uniform after each step, until
/// it drops to 1/4 or `max_t` steps have passed. Returns the mixing time.
pub fn mixing_time(k: &[Vec<f64>], max_t: usize) -> Option<usize> {
    let n = k.len();
    let u = 1.0 / n as f64;
    let tvd = |m: &[Vec<f64>]| {
        m.iter()
            .map(|row| 0.5 * row.iter().map(|p| (p - u).abs()).sum::<f64>())
            .fold(0.0f64, f64::max)
    };
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for t in 0..=max_t {
        if tvd(&m) <= 0.25 {
            return Some(t);
        }
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for (l, &p) in m[i].iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += p * k[l][j];
                }
            }
        }
        m = next;
    }
    None
}

/// Directed simple paths from `from` to `to`, by depth-first search.
pub fn count_paths(g: &PlaneGraph, x: &Orientation, from: usize, to: usize) -> u128 {
    count_paths_within(g, x, from, to, &vec![true; g.num_vertices()])
}

/// Directed simple paths from `from` to `to` in the subgraph induced by `keep`.
pub fn count_paths_within(g: &PlaneGraph, x: &Orientation, from: usize, to: usize, keep: &[bool]) -> u128 {
    let n = g.num_vertices();
    let mut out = vec![vec![]; n];
    for e in 0..g.num_edges() {
        let (a, b) = g.edge(e);
        if !keep[a] || !keep[b] {
            continue;
        }
        if x.is_forward(e) {
            out[a].push(b);
        } else {
            out[b].push(a);
        }
    }
    fn dfs(v: usize, to: usize, out: &[Vec<usize>], on: &mut [bool]) -> u128 {
        if v == to {
            return 1;
        }
        on[v] = true;
        let mut s = 0;
        for &w in &out[v] {
            if !on[w] {
                s += dfs(w, to, out, on);
            }
        }
        on[v] = false;
        s
    }
    dfs(from, to, &out, &mut vec![false; n])
}

/// Pearson statistic of counts against equal expectation.
pub fn chi_square_statistic(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let e = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
}

/// Edge sets (sorted) of the simple 4-cycles of `g` avoiding `banned` edges.
pub fn four_cycles(g: &PlaneGraph, banned: &[bool]) -> Vec<Vec<usize>> {
    let mut found = std::collections::BTreeSet::new();
    for (a, b) in (0..g.num_edges()).map(|e| g.edge(e)) {
        for c in g.neighbors(b).collect::<Vec<_>>() {
            if c == a {
                continue;
            }
            for d in g.neighbors(c).collect::<Vec<_>>() {
                if d == a || d == b {
                    continue;
                }
                if let Some(e4) = g.edge_between(d, a) {
                    let mut es = vec![
                        g.edge_between(a, b).unwrap(),
                        g.edge_between(b, c).unwrap(),
                        g.edge_between(c, d).unwrap(),
                        e4,
                    ];
                    if es.iter().any(|&e| banned[e]) {
                        continue;
                    }
                    es.sort();
                    found.insert(es);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Edges whose direction is the same in every state.
pub fn rigid(states: &[Orientation], m: usize) -> Vec<bool> {
    (0..m).map(|e| states.iter().all(|x| x.is_forward(e) == states[0].is_forward(e))).collect()
}
