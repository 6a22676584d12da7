//! Generators for the graph families used in the slow- and rapid-mixing
//! experiments.
//!
//! Every family is built combinatorially (edges plus a reference orientation
//! whose outdegrees define alpha) and then drawn with a barycentric (Tutte)
//! layout of the outer face on a regular polygon. Markers give symbolic names
//! to the vertices the classifiers and tests refer to.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::orientations::{AlphaLattice, AlphaSpec, Orientation, StateSpace};
use crate::planegraph::PlaneGraph;

/// Part of an hour-glass partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Central,
    Right,
}

/// Classifies a state by the unique non-rigid edge leaving a block of
/// vertices: its head decides left, central or right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HourglassClassifier {
    pub block: Vec<usize>,
    /// Heads of rigid escape edges that are ignored.
    pub ignore: Vec<usize>,
    pub left: Vec<usize>,
    pub central: Vec<usize>,
    pub right: Vec<usize>,
}

impl HourglassClassifier {
    /// Side of the state, `None` if there is not exactly one classified escape edge.
    pub fn classify(&self, g: &PlaneGraph, x: &Orientation) -> Option<Side> {
        let mut in_block = vec![false; g.num_vertices()];
        for &v in &self.block {
            in_block[v] = true;
        }
        let mut found = None;
        for e in 0..g.num_edges() {
            let (t, h) = x.arc(g, e);
            if !in_block[t] || in_block[h] || self.ignore.contains(&h) {
                continue;
            }
            let side = if self.left.contains(&h) {
                Side::Left
            } else if self.central.contains(&h) {
                Side::Central
            } else if self.right.contains(&h) {
                Side::Right
            } else {
                return None;
            };
            if found.is_some() {
                return None;
            }
            found = Some(side);
        }
        found
    }

    /// Labels every state of an enumerated space.
    pub fn labels(&self, g: &PlaneGraph, space: &StateSpace) -> Option<Vec<Side>> {
        space.states.iter().map(|x| self.classify(g, x)).collect()
    }
}

/// A generated family member.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub family: String,
    pub params: Vec<usize>,
    pub graph: PlaneGraph,
    pub alpha: AlphaSpec,
    pub markers: BTreeMap<String, usize>,
    pub classifier: Option<HourglassClassifier>,
    /// The distinguished orientation drawn in the construction, if any
    /// (the unique central state for hour-glass families).
    pub reference: Option<Orientation>,
}

impl FamilyInstance {
    pub fn marker(&self, name: &str) -> usize {
        *self
            .markers
            .get(name)
            .unwrap_or_else(|| panic!("family {} has no marker {name}", self.family))
    }

    pub fn lattice(&self) -> Result<AlphaLattice> {
        AlphaLattice::new(&self.graph, &self.alpha)
    }
}

/// Collects named vertices and arcs (tail, head) of the reference orientation.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<(usize, usize)>,
}

impl Builder {
    fn v(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    fn arc(&mut self, tail: impl Into<String>, head: impl Into<String>) {
        let t = self.v(tail);
        let h = self.v(head);
        self.arcs.push((t, h));
    }

    fn id(&self, name: &str) -> usize {
        self.index[name]
    }

    /// Lays the graph out with the outer face (given counterclockwise) on a
    /// regular polygon. Returns the graph, alpha = outdegrees of the
    /// reference orientation, and the reference orientation itself.
    fn finish(&self, outer_ccw: &[&str]) -> Result<(PlaneGraph, AlphaSpec, Orientation)> {
        let n = self.names.len();
        let outer: Vec<usize> = outer_ccw.iter().map(|s| self.id(s)).collect();
        let coords = tutte_layout(n, &self.arcs, &outer)?;
        let g = PlaneGraph::from_indexed(coords, self.arcs.clone())?;
        let x = Orientation::all_forward(self.arcs.len());
        let alpha = AlphaSpec(x.outdegrees(&g));
        Ok((g, alpha, x))
    }

    fn markers(&self) -> BTreeMap<String, usize> {
        self.index.iter().map(|(k, &v)| (k.clone(), v)).collect()
    }
}

/// Barycentric embedding: outer vertices pinned on a regular polygon
/// (counterclockwise), every other vertex at the average of its neighbors.
pub fn tutte_layout(n: usize, edges: &[(usize, usize)], outer_ccw: &[usize]) -> Result<Vec<[f64; 2]>> {
    let mut coords = vec![[0.0; 2]; n];
    let mut pinned = vec![false; n];
    let k = outer_ccw.len();
    for (i, &v) in outer_ccw.iter().enumerate() {
        let ang = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * i as f64 / k as f64
            - std::f64::consts::PI / k as f64;
        coords[v] = [100.0 * ang.cos(), 100.0 * ang.sin()];
        pinned[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !pinned[v]).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    let f = free.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut mat = DMatrix::<f64>::zeros(f, f);
    let mut rhs = [DVector::<f64>::zeros(f), DVector::<f64>::zeros(f)];
    for (i, &v) in free.iter().enumerate() {
        mat[(i, i)] = adj[v].len() as f64;
        for &w in &adj[v] {
            if pinned[w] {
                rhs[0][i] += coords[w][0];
                rhs[1][i] += coords[w][1];
            } else {
                mat[(i, slot[w])] -= 1.0;
            }
        }
    }
    let lu = mat.lu();
    for dim in 0..2 {
        let sol = lu
            .solve(&rhs[dim])
            .ok_or_else(|| Error::EmbeddingInvalid("singular barycentric system".into()))?;
        for (i, &v) in free.iter().enumerate() {
            coords[v][dim] = sol[i];
        }
    }
    Ok(coords)
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParam(msg.into()))
    }
}

/// The plane octahedron with alpha = 2 everywhere (Eulerian orientations).
pub fn octahedron() -> FamilyInstance {
    let mut b = Builder::default();
    // outer triangle a, b, c; inner triangle d, e, f with d opposite a, etc.
    for (t, h) in [
        ("a", "b"),
        ("b", "c"),
        ("c", "a"),
        ("d", "e"),
        ("e", "f"),
        ("f", "d"),
        ("a", "e"),
        ("f", "a"),
        ("b", "f"),
        ("d", "b"),
        ("c", "d"),
        ("e", "c"),
    ] {
        b.arc(t, h);
    }
    let (graph, alpha, _) = b.finish(&["a", "b", "c"]).expect("octahedron layout");
    FamilyInstance {
        family: "octahedron".into(),
        params: vec![],
        graph,
        alpha,
        markers: b.markers(),
        classifier: None,
        reference: None,
    }
}

/// The quadrangulation Q_n on 5n+1 vertices.
///
/// Vertices: `s`, `t`, `x0`, `x1..xn`, `v2..vn`, `w2..wn`, `vb1..vbn`,
/// `wb1..wbn` (the barred vertices). The reference orientation is the unique
/// 2-orientation containing the arc `x0 -> x1`.
pub fn quad_q(n: usize) -> Result<FamilyInstance> {
    need(n >= 2, "Q_n needs n >= 2")?;
    let mut b = Builder::default();
    b.arc("x0", "s");
    b.arc("x0", "x1");
    b.arc("x1", "vb1");
    b.arc("x1", "wb1");
    for k in 2..=n {
        b.arc(format!("v{k}"), "x0");
        b.arc(format!("w{k}"), "x0");
        // barred level k-1 up to level k
        b.arc(format!("vb{}", k - 1), format!("v{k}"));
        b.arc(format!("vb{}", k - 1), format!("x{k}"));
        b.arc(format!("wb{}", k - 1), format!("x{k}"));
        b.arc(format!("wb{}", k - 1), format!("w{k}"));
        // level k up to barred level k
        b.arc(format!("v{k}"), format!("vb{k}"));
        b.arc(format!("x{k}"), format!("vb{k}"));
        b.arc(format!("x{k}"), format!("wb{k}"));
        b.arc(format!("w{k}"), format!("wb{k}"));
    }
    b.arc(format!("vb{n}"), "s");
    b.arc(format!("vb{n}"), "t");
    b.arc(format!("wb{n}"), "s");
    b.arc(format!("wb{n}"), "t");
    let vbn = format!("vb{n}");
    let wbn = format!("wb{n}");
    let (graph, alpha, reference) = b.finish(&["s", &wbn, "t", &vbn])?;
    let classifier = HourglassClassifier {
        block: vec![b.id("x0")],
        ignore: vec![b.id("s")],
        left: (2..=n).map(|k| b.id(&format!("v{k}"))).collect(),
        central: vec![b.id("x1")],
        right: (2..=n).map(|k| b.id(&format!("w{k}"))).collect(),
    };
    Ok(FamilyInstance {
        family: "Q".into(),
        params: vec![n],
        graph,
        alpha,
        markers: b.markers(),
        classifier: Some(classifier),
        reference: Some(reference),
    })
}

/// Arcs of the triangulation T_n in its central Schnyder orientation,
/// optionally with every edge `x_i x_{i+1}` (1 <= i < n) replaced by a path
/// of `m` subdivision vertices `y{i}_{j}` adjacent to `v_i` and `w_i`.
/// The red corner is `x{n+1}`, green `ag`, blue `ab`.
fn triangulation_arcs(b: &mut Builder, n: usize, m: usize, with_x0_fan: bool) {
    let top = format!("x{}", n + 1);
    // outer triangle, acyclic: red corner 2, green 1, blue 0
    b.arc(&top, "ag");
    b.arc(&top, "ab");
    b.arc("ag", "ab");
    b.arc("x0", "ag");
    b.arc("x0", "ab");
    if with_x0_fan {
        b.arc("x0", "x1");
    }
    for k in 1..=n {
        let (x, v, w) = (format!("x{k}"), format!("v{k}"), format!("w{k}"));
        let next_x = format!("x{}", k + 1);
        b.arc(&x, &v);
        b.arc(&x, &w);
        if k < n && m > 0 {
            let mut prev = x.clone();
            for j in 1..=m {
                let y = format!("y{k}_{j}");
                b.arc(&prev, &y);
                b.arc(&y, &v);
                b.arc(&y, &w);
                prev = y;
            }
            b.arc(&prev, &next_x);
        } else {
            b.arc(&x, &next_x);
        }
        b.arc(&v, &next_x);
        b.arc(&w, &next_x);
        if k < n {
            b.arc(&v, format!("v{}", k + 1));
            b.arc(&w, format!("w{}", k + 1));
        } else {
            b.arc(&v, "ag");
            b.arc(&w, "ab");
        }
        if with_x0_fan {
            b.arc(&v, "x0");
            b.arc(&w, "x0");
        }
    }
}

fn triangulation_instance(family: &str, params: Vec<usize>, n: usize, m: usize) -> Result<FamilyInstance> {
    let mut b = Builder::default();
    triangulation_arcs(&mut b, n, m, true);
    let top = format!("x{}", n + 1);
    let (graph, alpha, reference) = b.finish(&["ab", "ag", &top])?;
    let classifier = HourglassClassifier {
        block: vec![b.id("x0")],
        ignore: vec![b.id("ag"), b.id("ab")],
        left: (1..=n).map(|k| b.id(&format!("v{k}"))).collect(),
        central: vec![b.id("x1")],
        right: (1..=n).map(|k| b.id(&format!("w{k}"))).collect(),
    };
    let mut markers = b.markers();
    markers.insert("ar".into(), b.id(&top));
    Ok(FamilyInstance {
        family: family.into(),
        params,
        graph,
        alpha,
        markers,
        classifier: Some(classifier),
        reference: Some(reference),
    })
}

/// The triangulation T_n on 3n+4 vertices with maximum degree 2n+3 and its
/// 3-orientations (outer edges oriented acyclically, corners red `ar`,
/// green `ag`, blue `ab` in clockwise order).
pub fn tri_t(n: usize) -> Result<FamilyInstance> {
    need(n >= 1, "T_n needs n >= 1")?;
    triangulation_instance("T", vec![n], n, 0)
}

/// T_n with each edge x_i x_{i+1} (1 <= i < n) subdivided by m vertices.
pub fn tri_t_subdiv(n: usize, m: usize) -> Result<FamilyInstance> {
    need(n >= 1, "T_n(m) needs n >= 1")?;
    triangulation_instance("Tm", vec![n, m], n, m)
}

/// Axial coordinates of the hexagonal patch of the triangular grid with side k.
fn hex_patch(k: i64) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for q in -k..=k {
        for r in -k..=k {
            if (q + r).abs() <= k {
                pts.push((q, r));
            }
        }
    }
    pts
}

/// The constant-degree family G_k on 3(k^2+4k-1) vertices: T_{3k-2} with the
/// fan at x0 replaced by a hexagonal patch H_k of the triangular grid whose
/// opposite corners are x0 and x1.
///
/// Inside the patch the reference orientation points every edge upward
/// (towards x1), except that x1 points to its two boundary neighbors. The
/// unique non-rigid arc leaving H_k - x1 is then `c -> x1`, where `c` is the
/// interior neighbor of x1.
pub fn tri_g(k: usize) -> Result<FamilyInstance> {
    need(k >= 2, "G_k needs k >= 2")?;
    let n = 3 * k - 2;
    let ki = k as i64;
    let mut b = Builder::default();
    triangulation_arcs(&mut b, n, 0, false);

    let pts = hex_patch(ki);
    let name_of = |p: (i64, i64)| -> String {
        if p == (ki, 0) {
            "x1".into()
        } else if p == (-ki, 0) {
            "x0".into()
        } else {
            format!("h{}_{}", p.0, p.1)
        }
    };
    // boundary path from x1 to x0 on each side: side "v" through (k,-1), side "w" through (k-1,1)
    let mut vside = vec![(ki, 0)];
    for r in 1..=ki {
        vside.push((ki, -r));
    }
    for q in (0..ki).rev() {
        vside.push((q, -ki));
    }
    for q in (-ki..0).rev() {
        vside.push((q, -ki - q));
    }
    let wside: Vec<(i64, i64)> = vside.iter().map(|&(q, r)| (q + r, -r)).collect();
    debug_assert_eq!(vside.len(), 3 * k + 1);
    debug_assert_eq!(*wside.last().unwrap(), (-ki, 0));

    let height = |p: (i64, i64)| 2 * p.0 + p.1;
    let top_neighbors = [vside[1], wside[1]];
    let set: std::collections::HashSet<(i64, i64)> = pts.iter().copied().collect();
    for &p in &pts {
        for d in [(1, 0), (0, 1), (-1, 1)] {
            let qn = (p.0 + d.0, p.1 + d.1);
            if !set.contains(&qn) {
                continue;
            }
            let (lo, hi) = if height(p) < height(qn) { (p, qn) } else { (qn, p) };
            if hi == (ki, 0) && top_neighbors.contains(&lo) {
                b.arc(name_of(hi), name_of(lo));
            } else {
                b.arc(name_of(lo), name_of(hi));
            }
        }
    }
    // strips between the patch sides and the v / w paths of the triangulation
    for (side, path) in [("v", &vside), ("w", &wside)] {
        for i in 1..=n {
            let t = format!("{side}{i}");
            b.arc(&t, name_of(path[i]));
            b.arc(&t, name_of(path[i + 1]));
        }
        let corner = if side == "v" { "ag" } else { "ab" };
        b.arc(name_of(path[3 * k - 1]), corner);
    }
    let top = format!("x{}", n + 1);
    let (graph, alpha, reference) = b.finish(&["ab", "ag", &top])?;
    let mut markers = b.markers();
    markers.insert("ar".into(), b.id(&top));
    for (side, path) in [("vp", &vside), ("wp", &wside)] {
        for (i, &p) in path.iter().enumerate() {
            markers.insert(format!("{side}{i}"), b.id(&name_of(p)));
        }
    }
    markers.insert("c".into(), b.id(&name_of((ki - 1, 0))));
    let block: Vec<usize> = pts
        .iter()
        .filter(|&&p| p != (ki, 0))
        .map(|&p| b.id(&name_of(p)))
        .collect();
    let classifier = HourglassClassifier {
        block,
        ignore: vec![b.id("ag"), b.id("ab")],
        left: (1..=n).map(|i| b.id(&format!("v{i}"))).collect(),
        central: vec![b.id("x1")],
        right: (1..=n).map(|i| b.id(&format!("w{i}"))).collect(),
    };
    Ok(FamilyInstance {
        family: "G".into(),
        params: vec![k],
        graph,
        alpha,
        markers,
        classifier: Some(classifier),
        reference: Some(reference),
    })
}

/// An a x b grid of vertices closed into a quadrangulation by two outer
/// black vertices `s` and `t`: `s` is joined to the white vertices of the
/// bottom and right sides, `t` to those of the left and top sides. Inner
/// vertices have degree at most 4 and alpha = 2; `s` and `t` are sinks.
/// For a + b even the outer face is `s, (0,0), t, (a-1,b-1)`. For a + b odd
/// the far corner is black, so an extra white vertex `z` beyond it is joined
/// to `s`, `t` and the corner, and the outer face is `s, (0,0), t, z`.
pub fn quad_grid(a: usize, b: usize) -> Result<FamilyInstance> {
    need(a >= 2 && b >= 2, "grid needs a, b >= 2")?;
    let idx = |i: usize, j: usize| j * a + i;
    let mut coords = Vec::new();
    for j in 0..b {
        for i in 0..a {
            coords.push([i as f64, j as f64]);
        }
    }
    let s = coords.len();
    let t = s + 1;
    let far = (a + b) as f64;
    coords.push([(a - 1) as f64 + far, -far]);
    coords.push([-far, (b - 1) as f64 + far]);
    let mut edges = Vec::new();
    for j in 0..b {
        for i in 0..a {
            if i + 1 < a {
                edges.push((idx(i, j), idx(i + 1, j)));
            }
            if j + 1 < b {
                edges.push((idx(i, j), idx(i, j + 1)));
            }
        }
    }
    let white = |i: usize, j: usize| (i + j) % 2 == 0;
    let mut s_side: Vec<(usize, usize)> = (0..a).map(|i| (i, 0)).collect();
    s_side.extend((1..b).map(|j| (a - 1, j)));
    let mut t_side: Vec<(usize, usize)> = (0..b).map(|j| (0, j)).collect();
    t_side.extend((1..a).map(|i| (i, b - 1)));
    for &(i, j) in &s_side {
        if white(i, j) {
            edges.push((idx(i, j), s));
        }
    }
    for &(i, j) in &t_side {
        if white(i, j) {
            edges.push((idx(i, j), t));
        }
    }
    let mut markers = BTreeMap::new();
    if (a + b) % 2 == 1 {
        let z = coords.len();
        coords.push([(a - 1) as f64 + 1.0, (b - 1) as f64 + 1.0]);
        edges.extend([(z, s), (z, t), (z, idx(a - 1, b - 1))]);
        markers.insert("z".to_string(), z);
    }
    let graph = PlaneGraph::from_indexed(coords, edges)?;
    let mut alpha = vec![2; graph.num_vertices()];
    alpha[s] = 0;
    alpha[t] = 0;
    markers.insert("s".to_string(), s);
    markers.insert("t".to_string(), t);
    for j in 0..b {
        for i in 0..a {
            markers.insert(format!("g{i}_{j}"), idx(i, j));
        }
    }
    Ok(FamilyInstance {
        family: "grid".into(),
        params: vec![a, b],
        graph,
        alpha: AlphaSpec(alpha),
        markers,
        classifier: None,
        reference: None,
    })
}

/// A random quadrangulation: the vertex-face incidence graph of a random
/// simple triangulation M on `inner + 3` vertices (random insertions
/// followed by random edge flips). It is 3-connected, so it is drawn with
/// the barycentric layout. Black vertices are the vertices of M; `s` and `t`
/// are two corners of the outer triangle of M and are the sinks.
pub fn random_quadrangulation(inner: usize, seed: u64) -> Result<FamilyInstance> {
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = inner + 3;
    // inner faces of M, counterclockwise; the outer face is 0, 2, 1
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut adj: HashSet<(usize, usize)> = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
        adj.extend([key(a, v), key(b, v), key(c, v)]);
    }
    for _ in 0..4 * n {
        let fi = rng.gen_range(0..faces.len());
        let r = rng.gen_range(0..3);
        let f = faces[fi];
        let (u, v, w) = (f[r], f[(r + 1) % 3], f[(r + 2) % 3]);
        // the face on the other side of u -> v contains v -> u
        let Some(gi) = (0..faces.len()).find(|&j| {
            j != fi && (0..3).any(|s| faces[j][s] == v && faces[j][(s + 1) % 3] == u)
        }) else {
            continue;
        };
        let g = faces[gi];
        let x = g.iter().copied().find(|&z| z != u && z != v).unwrap();
        if adj.contains(&key(w, x)) {
            continue;
        }
        adj.remove(&key(u, v));
        adj.insert(key(w, x));
        faces[fi] = [w, u, x];
        faces[gi] = [x, v, w];
    }
    let outer_node = n + faces.len();
    let mut edges = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for &c in f {
            edges.push((c, n + i));
        }
    }
    for c in 0..3 {
        edges.push((c, outer_node));
    }
    let f01 = faces
        .iter()
        .position(|f| (0..3).any(|s| f[s] == 0 && f[(s + 1) % 3] == 1))
        .expect("edge 01 borders an inner face");
    let coords = tutte_layout(outer_node + 1, &edges, &[outer_node, 1, n + f01, 0])?;
    let graph = PlaneGraph::from_indexed(coords, edges)?;
    let mut alpha = vec![2; graph.num_vertices()];
    alpha[0] = 0;
    alpha[1] = 0;
    let mut markers = BTreeMap::new();
    markers.insert("s".to_string(), 0);
    markers.insert("t".to_string(), 1);
    Ok(FamilyInstance {
        family: "random".into(),
        params: vec![inner, seed as usize],
        graph,
        alpha: AlphaSpec(alpha),
        markers,
        classifier: None,
        reference: None,
    })
}

/// A quadrangulation with two distinct 2-orientations that have exactly the
/// same directed faces, with the same senses. Under the trivial face-flip
/// coupling every face reversal is applied to both states or to neither, so
/// the lattice distance of the pair never changes.
///
/// The instance is a fixed random quadrangulation on 17 vertices; the pair is
/// the one with the fewest differing edges, ties broken by state index. The
/// difference is the directed 6-cycle bounding all nine flippable faces, so
/// the two states are at lattice distance 9.
pub fn hardness_example() -> (FamilyInstance, Orientation, Orientation) {
    let mut f = random_quadrangulation(4, 33).expect("fixed instance");
    f.family = "hardness".into();
    f.params = vec![];
    let lat = f.lattice().expect("feasible");
    let space = lat.enumerate(crate::orientations::DEFAULT_STATE_CAP).expect("small");
    let sigs: Vec<_> = space.states.iter().map(|x| lat.directed_cycles(x)).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..space.len() {
        for j in i + 1..space.len() {
            if sigs[i] != sigs[j] {
                continue;
            }
            let (x, y) = (&space.states[i], &space.states[j]);
            let diff = (0..f.graph.num_edges()).filter(|&e| x.is_forward(e) != y.is_forward(e)).count();
            if best.is_none_or(|b| diff < b.0) {
                best = Some((diff, i, j));
            }
        }
    }
    let (_, i, j) = best.expect("the fixed instance contains such a pair");
    let (x, y) = (space.states[i].clone(), space.states[j].clone());
    f.reference = Some(x.clone());
    (f, x, y)
}

/// Builds a family instance by name, as used by the command line.
pub fn by_name(name: &str, n: Option<usize>, m: Option<usize>) -> Result<FamilyInstance> {
    let req = |v: Option<usize>, what: &str| v.ok_or_else(|| Error::BadParam(format!("family {name} needs --{what}")));
    match name {
        "octahedron" | "oct" => Ok(octahedron()),
        "Q" | "q" => quad_q(req(n, "n")?),
        "T" | "t" => tri_t(req(n, "n")?),
        "Tm" | "tm" => tri_t_subdiv(req(n, "n")?, req(m, "m")?),
        "G" | "g" => tri_g(req(n, "n")?),
        "grid" => quad_grid(req(n, "n")?, req(m, "m")?),
        "random" => random_quadrangulation(req(n, "n")?, m.unwrap_or(0) as u64),
        "hardness" => Ok(hardness_example().0),
        _ => Err(Error::BadParam(format!("unknown family {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planegraph::GraphClass;

    #[test]
    fn octahedron_counts() {
        let f = octahedron();
        assert_eq!(f.graph.num_vertices(), 6);
        assert_eq!(f.graph.num_edges(), 12);
        assert_eq!(f.graph.faces().len(), 8);
        assert_eq!(f.alpha.total(), 12);
    }

    #[test]
    fn q_n_is_a_quadrangulation_with_5n_plus_1_vertices() {
        for n in 2..=6 {
            let f = quad_q(n).unwrap();
            assert_eq!(f.graph.num_vertices(), 5 * n + 1);
            assert_eq!(f.graph.num_edges(), 2 * (5 * n + 1) - 4);
            assert_eq!(f.graph.classify(), GraphClass::Quadrangulation);
            let x = f.reference.as_ref().unwrap();
            assert!(x.is_alpha_orientation(&f.graph, &f.alpha));
            assert_eq!(f.alpha.get(f.marker("s")), 0);
            assert_eq!(f.alpha.get(f.marker("t")), 0);
        }
        assert!(quad_q(1).is_err());
    }

    #[test]
    fn t_n_counts_and_degree() {
        for n in 1..=5 {
            let f = tri_t(n).unwrap();
            assert_eq!(f.graph.num_vertices(), 3 * n + 4);
            assert_eq!(f.graph.max_degree(), 2 * n + 3);
            assert_eq!(f.graph.classify(), GraphClass::Triangulation);
            assert_eq!(f.graph.num_edges(), 3 * (3 * n + 4) - 6);
        }
    }

    #[test]
    fn subdivided_counts() {
        for (n, m) in [(2, 1), (3, 2), (3, 4), (4, 3)] {
            let f = tri_t_subdiv(n, m).unwrap();
            assert_eq!(f.graph.num_vertices(), 3 * n + 4 + (n - 1) * m);
            assert_eq!(f.graph.max_degree(), (2 * n + 3).max(m + 5));
            assert_eq!(f.graph.classify(), GraphClass::Triangulation);
        }
    }

    #[test]
    fn g_k_counts_degrees_and_alpha_range() {
        for k in 2..=3 {
            let f = tri_g(k).unwrap();
            assert_eq!(f.graph.num_vertices(), 3 * (k * k + 4 * k - 1));
            assert_eq!(f.graph.classify(), GraphClass::Triangulation);
            let degs: Vec<usize> = (0..f.graph.num_vertices()).map(|v| f.graph.degree(v)).collect();
            assert!(degs.iter().all(|&d| (4..=6).contains(&d)), "{degs:?}");
            assert!(f.alpha.0.iter().all(|&a| a <= 5));
            assert_eq!(hex_patch(k as i64).len(), 3 * (k * k + k) + 1);
        }
    }

    #[test]
    fn random_quadrangulations_are_valid() {
        for seed in 0..10 {
            let f = random_quadrangulation(6, seed).unwrap();
            assert_eq!(f.graph.num_vertices(), 23);
            assert_eq!(f.graph.classify(), GraphClass::Quadrangulation);
            assert!(f.lattice().is_ok());
        }
    }

    #[test]
    fn hardness_pair_has_same_directed_faces() {
        let (f, x, y) = hardness_example();
        let lat = f.lattice().unwrap();
        assert_ne!(x, y);
        assert_eq!(lat.directed_cycles(&x), lat.directed_cycles(&y));
        assert!(lat.lattice_distance(&x, &y) >= 2);
    }

    #[test]
    fn grid_is_low_degree_quadrangulation() {
        for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5)] {
            let f = quad_grid(a, b).unwrap();
            assert_eq!(f.graph.classify(), GraphClass::Quadrangulation, "{a}x{b}");
            let outer = f.graph.outer_vertices();
            assert!(outer.contains(&f.marker("s")) && outer.contains(&f.marker("t")));
            assert_eq!(outer.len(), 4);
            for v in 0..f.graph.num_vertices() {
                if !outer.contains(&v) {
                    assert!(f.graph.degree(v) <= 4);
                }
            }
        }
        assert!(quad_grid(1, 3).is_err());
    }
}
