//! Dinic maximum flow on small integer networks.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    orig: i64,
}

/// Flow network with deterministic augmentation order (arcs are scanned in
/// insertion order).
#[derive(Debug, Clone)]
pub(crate) struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl Dinic {
    pub fn new(n: usize) -> Self {
        Dinic { arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Adds an arc and returns its handle.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, orig: cap });
        self.adj[from].push(id);
        self.arcs.push(Arc { to: from, cap: 0, orig: 0 });
        self.adj[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, arc: usize) -> i64 {
        self.arcs[arc].orig - self.arcs[arc].cap
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == usize::MAX {
                    level[arc.to] = level[u] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let a = self.adj[u][it[u]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let d = self.augment(to, t, pushed.min(cap), level, it);
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0; self.adj.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}
