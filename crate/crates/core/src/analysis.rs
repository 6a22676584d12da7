//! Exact diagnostics on enumerated state spaces: transition kernels, total
//! variation mixing times, conductance and hour-glass bounds, path counts,
//! chi-square uniformity tests, diameters and heights.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::chains::{apply_move, move_weights, ChainKind};
use crate::error::{Error, Result};
use crate::families::Side;
use crate::orientations::{AlphaLattice, Orientation, StateSpace};
use crate::planegraph::PlaneGraph;

/// Exact transition probabilities of a chain on an enumerated state space.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    pub kind: ChainKind,
    /// Sparse rows, diagonal included.
    pub rows: Vec<BTreeMap<usize, Rational64>>,
}

impl KernelMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn prob(&self, i: usize, j: usize) -> Rational64 {
        self.rows[i].get(&j).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|(&j, &p)| self.prob(j, i) == p))
    }

    pub fn is_stochastic(&self) -> bool {
        self.rows.iter().all(|row| {
            row.values().all(|p| *p >= Rational64::zero()) && row.values().sum::<Rational64>() == Rational64::one()
        })
    }

    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, p) in row {
                m[(i, j)] = p.to_f64().unwrap();
            }
        }
        m
    }

    /// Irreducible (support graph strongly connected) and aperiodic (some
    /// positive holding probability, enough once irreducible).
    pub fn is_ergodic(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let reach = |rev: bool| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut q = VecDeque::from([0]);
            while let Some(i) = q.pop_front() {
                for j in 0..n {
                    let p = if rev { self.prob(j, i) } else { self.prob(i, j) };
                    if !seen[j] && p > Rational64::zero() {
                        seen[j] = true;
                        q.push_back(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        let aperiodic = n == 1 || (0..n).any(|i| self.prob(i, i) > Rational64::zero());
        reach(false) && reach(true) && aperiodic
    }
}

/// The exact kernel of a chain on an enumerated space.
pub fn kernel(kind: ChainKind, lat: &AlphaLattice, space: &StateSpace) -> Result<KernelMatrix> {
    let rows: Result<Vec<BTreeMap<usize, Rational64>>> = (0..space.len())
        .into_par_iter()
        .map(|i| {
            let x = &space.states[i];
            let mut row = BTreeMap::new();
            let mut stay = Rational64::one();
            for (w, t) in move_weights(kind, lat, x, Some(&space.potentials[i])) {
                let y = apply_move(x, &t);
                let j = space
                    .index_of(&y)
                    .ok_or_else(|| Error::Format("a move leaves the enumerated state space".into()))?;
                *row.entry(j).or_insert_with(Rational64::zero) += w;
                stay -= w;
            }
            *row.entry(i).or_insert_with(Rational64::zero) += stay;
            row.retain(|_, p| !p.is_zero());
            Ok(row)
        })
        .collect();
    Ok(KernelMatrix { kind, rows: rows? })
}

/// Largest over start states of the total variation distance to uniform.
fn max_tvd(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let u = 1.0 / n as f64;
    (0..n)
        .map(|i| 0.5 * (0..n).map(|j| (m[(i, j)] - u).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// TVD to the uniform distribution after t = 0..=max_t steps.
pub fn tvd_curve(k: &KernelMatrix, max_t: usize) -> Vec<f64> {
    let m = k.dense();
    let mut p = DMatrix::<f64>::identity(k.len(), k.len());
    let mut out = vec![max_tvd(&p)];
    for _ in 0..max_t {
        p = &p * &m;
        out.push(max_tvd(&p));
    }
    out
}

pub fn tvd_curve_csv(curve: &[f64]) -> String {
    let mut s = String::from("t,max_tvd\n");
    for (t, d) in curve.iter().enumerate() {
        let _ = writeln!(s, "{t},{d:.12}");
    }
    s
}

/// Smallest t with max-over-start TVD to uniform at most 1/4, by repeated
/// squaring and a binary search over the stored powers. The TVD is
/// non-increasing in t, so this equals the first crossing.
pub fn mixing_time(k: &KernelMatrix, max_steps: usize) -> Result<usize> {
    if !k.is_ergodic() {
        return Err(Error::NotErgodic);
    }
    let n = k.len();
    let id = DMatrix::<f64>::identity(n, n);
    if max_tvd(&id) <= 0.25 {
        return Ok(0);
    }
    let mut powers = vec![k.dense()];
    while max_tvd(powers.last().unwrap()) > 0.25 {
        if (1usize << (powers.len() - 1)) >= max_steps {
            return Err(Error::NoConvergence(max_steps));
        }
        let last = powers.last().unwrap();
        powers.push(last * last);
    }
    let j = powers.len() - 1;
    if j == 0 {
        return Ok(1);
    }
    // tau in (2^(j-1), 2^j]; cur = M^t with TVD(cur) > 1/4
    let mut cur = powers[j - 1].clone();
    let mut t = 1usize << (j - 1);
    for bit in (0..j - 1).rev() {
        let cand = &cur * &powers[bit];
        if max_tvd(&cand) > 0.25 {
            cur = cand;
            t += 1 << bit;
        }
    }
    Ok(t + 1)
}

/// Sizes of the three parts of an hour-glass labelling.
pub fn part_sizes(labels: &[Side]) -> (usize, usize, usize) {
    let c = |s| labels.iter().filter(|&&l| l == s).count();
    (c(Side::Left), c(Side::Central), c(Side::Right))
}

/// Upper bound pi(center) / min(pi(left), pi(right)) on the conductance for
/// the uniform stationary distribution; refuses partitions with a direct
/// left-right transition.
pub fn hourglass_bound(k: &KernelMatrix, labels: &[Side]) -> Result<Rational64> {
    for (i, row) in k.rows.iter().enumerate() {
        for (&j, p) in row {
            let cross = matches!((labels[i], labels[j]), (Side::Left, Side::Right) | (Side::Right, Side::Left));
            if cross && *p > Rational64::zero() {
                return Err(Error::PartitionLeak(i, j));
            }
        }
    }
    let (l, c, r) = part_sizes(labels);
    if l == 0 || r == 0 {
        return Err(Error::BadParam("hour-glass sides must be non-empty".into()));
    }
    Ok(Rational64::new(c as i64, l.min(r) as i64))
}

/// Largest state count accepted by the exhaustive cut scan.
pub const CONDUCTANCE_MAX_STATES: usize = 22;

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Exact conductance under the uniform distribution by scanning every
/// subset S with |S| <= |Omega|/2 (Gray-code order, integer arithmetic).
pub fn exact_conductance(k: &KernelMatrix) -> Result<Rational64> {
    let n = k.len();
    if n > CONDUCTANCE_MAX_STATES {
        return Err(Error::TooLarge(n));
    }
    if n < 2 {
        return Err(Error::BadParam("conductance needs at least two states".into()));
    }
    let den = k.rows.iter().flat_map(|r| r.values()).fold(1i64, |acc, p| lcm(acc, *p.denom()));
    let w: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { (k.prob(i, j) * den).to_integer() }).collect())
        .collect();
    let out_total: Vec<i64> = w.iter().map(|r| r.iter().sum()).collect();
    let mut in_s = vec![false; n];
    // from_s[v] = sum over x in S of w[x][v]; to_s[v] = sum over y in S of w[v][y]
    let mut from_s = vec![0i64; n];
    let mut to_s = vec![0i64; n];
    let mut flow = 0i64;
    let mut size = 0usize;
    let mut best: Option<(i64, usize)> = None;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        if in_s[v] {
            in_s[v] = false;
            size -= 1;
            // remove v: lose its outflow to S^c, regain flow from S into v
            flow -= out_total[v] - to_s[v];
            flow += from_s[v];
            for u in 0..n {
                from_s[u] -= w[v][u];
                to_s[u] -= w[u][v];
            }
        } else {
            flow += out_total[v] - to_s[v];
            flow -= from_s[v];
            in_s[v] = true;
            size += 1;
            for u in 0..n {
                from_s[u] += w[v][u];
                to_s[u] += w[u][v];
            }
        }
        if 2 * size <= n {
            let better = match best {
                None => true,
                Some((bf, bs)) => (flow as i128) * (bs as i128) < (bf as i128) * (size as i128),
            };
            if better {
                best = Some((flow, size));
            }
        }
    }
    let (f, s) = best.unwrap();
    Ok(Rational64::new(f, den * s as i64))
}

/// Number of directed paths from `from` to `to`, by dynamic programming over
/// a topological order of the part of the graph reachable from `from` (edges
/// back into `from` are ignored) that can still reach `to`.
pub fn count_directed_paths(g: &PlaneGraph, x: &Orientation, from: usize, to: usize) -> Result<u128> {
    let n = g.num_vertices();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for e in 0..g.num_edges() {
        let (u, v) = x.arc(g, e);
        if v == from {
            continue;
        }
        out[u].push(v);
        inc[v].push(u);
    }
    let bfs = |adj: &Vec<Vec<usize>>, s: usize| {
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        seen
    };
    let fwd = bfs(&out, from);
    if !fwd[to] {
        return Ok(0);
    }
    let back = bfs(&inc, to);
    let relevant: Vec<bool> = (0..n).map(|v| fwd[v] && back[v]).collect();
    // Kahn's algorithm on the relevant subgraph
    let mut indeg = vec![0usize; n];
    for u in 0..n {
        if relevant[u] {
            for &v in &out[u] {
                if relevant[v] {
                    indeg[v] += 1;
                }
            }
        }
    }
    let mut ways = vec![0u128; n];
    ways[from] = 1;
    let mut q: VecDeque<usize> = (0..n).filter(|&v| relevant[v] && indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(u) = q.pop_front() {
        done += 1;
        for &v in &out[u] {
            if relevant[v] {
                ways[v] += ways[u];
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    q.push_back(v);
                }
            }
        }
    }
    if done != relevant.iter().filter(|&&r| r).count() {
        return Err(Error::CyclicSubgraph);
    }
    Ok(ways[to])
}

/// Result of a chi-square goodness-of-fit test against the uniform law.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub significance: f64,
    pub passed: bool,
}

/// Chi-square test of observed counts against equal expected counts.
pub fn chi_square_uniform(counts: &[u64], significance: f64) -> ChiSquareReport {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total == 0 {
        return ChiSquareReport { statistic: 0.0, dof: 0, p_value: 1.0, significance, passed: true };
    }
    let expected = total as f64 / k as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum::<f64>();
    let dof = k - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    let p_value = 1.0 - dist.cdf(statistic);
    ChiSquareReport { statistic, dof, p_value, significance, passed: p_value >= significance }
}

/// Default significance level of the uniformity tests.
pub const DEFAULT_SIGNIFICANCE: f64 = 0.01;

/// Tallies samples over an enumerated space and tests them for uniformity.
pub fn uniformity_test(space: &StateSpace, samples: &[Orientation], significance: f64) -> Result<ChiSquareReport> {
    let mut counts = vec![0u64; space.len()];
    for x in samples {
        let i = space
            .index_of(x)
            .ok_or_else(|| Error::BadParam("sample outside the enumerated state space".into()))?;
        counts[i] += 1;
    }
    Ok(chi_square_uniform(&counts, significance))
}

/// Diameter of the flip graph, lattice height and distance min-max.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiameterReport {
    pub diameter: usize,
    pub height: u64,
    pub min_to_max: usize,
}

/// BFS diameter of the cover graph (all eccentricities) and the height
/// (sum of the maximal potentials).
pub fn diameter_and_height(space: &StateSpace) -> DiameterReport {
    let n = space.len();
    let diameter = (0..n)
        .into_par_iter()
        .map(|s| space.bfs(s).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let height = space.potentials.iter().map(|p| p.total()).max().unwrap_or(0);
    let top = (0..n).max_by_key(|&i| space.potentials[i].total()).unwrap_or(0);
    let min_to_max = if n == 0 { 0 } else { space.bfs(0)[top] };
    DiameterReport { diameter, height, min_to_max }
}

/// The sequences h_k (paths x0 -> x_k) and g_k of the triangulation family:
/// h_1 = g_1 = 1, h_{k+1} = h_k + 2 g_k, g_{k+1} = h_{k+1} + g_k.
pub fn path_recurrence(k: usize) -> Vec<(u128, u128)> {
    let mut out = Vec::with_capacity(k);
    let (mut h, mut g) = (1u128, 1u128);
    for _ in 0..k {
        out.push((h, g));
        h += 2 * g;
        g += h;
    }
    out
}

/// Row of the conductance table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductanceRow {
    pub family: String,
    pub param: String,
    pub states: usize,
    pub bound: Rational64,
    pub exact: Option<Rational64>,
}

pub fn conductance_csv(rows: &[ConductanceRow]) -> String {
    let mut s = String::from("family,param,states,bound,bound_f64,exact,exact_f64\n");
    for r in rows {
        let (ex, exf) = match r.exact {
            Some(e) => (e.to_string(), format!("{:.12}", e.to_f64().unwrap())),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{:.12},{},{}",
            r.family,
            r.param,
            r.states,
            r.bound,
            r.bound.to_f64().unwrap(),
            ex,
            exf
        );
    }
    s
}

pub fn path_count_csv(rows: &[(String, String, u128)]) -> String {
    let mut s = String::from("from,to,paths\n");
    for (a, b, c) in rows {
        let _ = writeln!(s, "{a},{b},{c}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state(q: Rational64) -> KernelMatrix {
        let one = Rational64::one();
        KernelMatrix {
            kind: ChainKind::FaceFlip,
            rows: vec![
                BTreeMap::from([(0, one - q), (1, q)]),
                BTreeMap::from([(0, q), (1, one - q)]),
            ],
        }
    }

    #[test]
    fn two_state_conductance_is_the_flip_probability() {
        let q = Rational64::new(1, 3);
        assert_eq!(exact_conductance(&two_state(q)).unwrap(), q);
    }

    #[test]
    fn single_state_mixes_immediately() {
        let k = KernelMatrix { kind: ChainKind::FaceFlip, rows: vec![BTreeMap::from([(0, Rational64::one())])] };
        assert_eq!(mixing_time(&k, 10).unwrap(), 0);
    }

    #[test]
    fn mixing_time_matches_linear_scan() {
        let k = two_state(Rational64::new(1, 20));
        let curve = tvd_curve(&k, 200);
        let first = curve.iter().position(|&d| d <= 0.25).unwrap();
        assert_eq!(mixing_time(&k, 1000).unwrap(), first);
    }

    #[test]
    fn disconnected_kernel_is_not_ergodic() {
        let one = Rational64::one();
        let k = KernelMatrix {
            kind: ChainKind::FaceFlip,
            rows: vec![BTreeMap::from([(0, one)]), BTreeMap::from([(1, one)])],
        };
        assert_eq!(mixing_time(&k, 10), Err(Error::NotErgodic));
    }

    #[test]
    fn chi_square_controls() {
        assert_eq!(chi_square_uniform(&[100, 100, 100], 0.01).statistic, 0.0);
        assert!(chi_square_uniform(&[100, 100, 100], 0.01).passed);
        assert!(!chi_square_uniform(&[150, 100, 50], 0.01).passed);
    }

    #[test]
    fn recurrence_values() {
        let r = path_recurrence(4);
        assert_eq!(r, vec![(1, 1), (3, 4), (11, 15), (41, 56)]);
    }
}
