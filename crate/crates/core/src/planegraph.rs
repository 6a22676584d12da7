//! Plane graphs with a straight-line embedding.
//!
//! The rotation system is derived from the coordinates by sorting the
//! darts leaving every vertex by angle, counterclockwise. Faces are traced
//! so that bounded faces are walked counterclockwise (positive signed area)
//! and the outer face of every component is walked clockwise.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A dart is a directed half of an edge: dart `2e` runs from `edges[e].0`
/// to `edges[e].1`, dart `2e + 1` runs the other way.
pub type Dart = usize;

#[inline]
pub fn dart_edge(d: Dart) -> usize {
    d >> 1
}

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

/// A closed boundary walk of a face.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|&d| dart_edge(d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Quadrangulation,
    Triangulation,
    Other,
}

/// Faces of an embedded (sub)graph, traced from a rotation system.
#[derive(Debug, Clone)]
pub(crate) struct FaceSet {
    pub faces: Vec<FaceWalk>,
    /// Face to the left of every dart, `usize::MAX` for darts not in the subgraph.
    pub dart_face: Vec<usize>,
    pub areas: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    ids: Vec<i64>,
    coords: Vec<[f64; 2]>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<Dart>>,
    faces: Vec<FaceWalk>,
    dart_face: Vec<usize>,
    outer_face: usize,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn orient_sign(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> i8 {
    let c = cross(o, a, b);
    let scale = ((a[0] - o[0]).abs() + (a[1] - o[1]).abs()) * ((b[0] - o[0]).abs() + (b[1] - o[1]).abs());
    if c.abs() <= 1e-12 * scale {
        0
    } else if c > 0.0 {
        1
    } else {
        -1
    }
}

fn on_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_touch(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d))
}

/// Signed area of the polygon visited by a walk (shoelace formula).
pub(crate) fn walk_area(coords: &[[f64; 2]], edges: &[(usize, usize)], darts: &[Dart]) -> f64 {
    let mut s = 0.0;
    for &d in darts {
        let (u, v) = dart_ends(edges, d);
        let (p, q) = (coords[u], coords[v]);
        s += p[0] * q[1] - q[0] * p[1];
    }
    s / 2.0
}

#[inline]
pub(crate) fn dart_ends(edges: &[(usize, usize)], d: Dart) -> (usize, usize) {
    let (a, b) = edges[d >> 1];
    if d & 1 == 0 {
        (a, b)
    } else {
        (b, a)
    }
}

/// Sorts the darts leaving every vertex counterclockwise by angle,
/// considering only edges with `keep[e]`.
pub(crate) fn rotation_system(
    coords: &[[f64; 2]],
    edges: &[(usize, usize)],
    keep: impl Fn(usize) -> bool,
) -> Vec<Vec<Dart>> {
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); coords.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        if keep(e) {
            rot[a].push(2 * e);
            rot[b].push(2 * e + 1);
        }
    }
    for (v, darts) in rot.iter_mut().enumerate() {
        let p = coords[v];
        darts.sort_by(|&d1, &d2| {
            let q1 = coords[dart_ends(edges, d1).1];
            let q2 = coords[dart_ends(edges, d2).1];
            let a1 = (q1[1] - p[1]).atan2(q1[0] - p[0]);
            let a2 = (q2[1] - p[1]).atan2(q2[0] - p[0]);
            a1.partial_cmp(&a2).unwrap()
        });
    }
    rot
}

/// Traces all face walks of the rotation system. The face left of a dart
/// `u -> v` continues with the dart preceding `v -> u` in the
/// counterclockwise rotation at `v`.
pub(crate) fn trace_faces(coords: &[[f64; 2]], edges: &[(usize, usize)], rot: &[Vec<Dart>]) -> FaceSet {
    let mut pos = vec![usize::MAX; 2 * edges.len()];
    for darts in rot {
        for (i, &d) in darts.iter().enumerate() {
            pos[d] = i;
        }
    }
    let mut dart_face = vec![usize::MAX; 2 * edges.len()];
    let mut faces = Vec::new();
    let mut areas = Vec::new();
    for start in 0..2 * edges.len() {
        if pos[start] == usize::MAX || dart_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            dart_face[d] = id;
            walk.push(d);
            let v = dart_ends(edges, d).1;
            let ring = &rot[v];
            let t = twin(d);
            let i = pos[t];
            d = ring[(i + ring.len() - 1) % ring.len()];
            if d == start {
                break;
            }
        }
        // canonical start: the dart whose tail has the smallest index
        let k = (0..walk.len())
            .min_by_key(|&i| (dart_ends(edges, walk[i]).0, walk[i]))
            .unwrap();
        walk.rotate_left(k);
        areas.push(walk_area(coords, edges, &walk));
        faces.push(FaceWalk { darts: walk });
    }
    FaceSet { faces, dart_face, areas }
}

/// Connected components over the vertices touched by kept edges.
pub(crate) fn components(n: usize, edges: &[(usize, usize)], keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        if keep(e) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = c;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    q.push_back(w);
                }
            }
        }
        c += 1;
    }
    comp
}

impl PlaneGraph {
    /// Builds and validates a plane graph from external ids, coordinates and
    /// edges given as index pairs.
    pub fn new(ids: Vec<i64>, coords: Vec<[f64; 2]>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = coords.len();
        let bad = |m: String| Err(Error::EmbeddingInvalid(m));
        if ids.len() != n {
            return bad("id list and coordinate list differ in length".into());
        }
        if n == 0 {
            return bad("graph has no vertices".into());
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("duplicate vertex id".into());
        }
        if coords.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return bad("non-finite coordinate".into());
        }
        let mut pts: Vec<(usize, [f64; 2])> = coords.iter().copied().enumerate().collect();
        pts.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        for w in pts.windows(2) {
            if w[0].1 == w[1].1 {
                return bad(format!("vertices {} and {} share coordinates", ids[w[0].0], ids[w[1].0]));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return bad("edge endpoint out of range".into());
            }
            if a == b {
                return bad(format!("loop at vertex {}", ids[a]));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return bad(format!("parallel edge {}-{}", ids[a], ids[b]));
            }
        }
        let rotation = rotation_system(&coords, &edges, |_| true);
        for (v, ring) in rotation.iter().enumerate() {
            for i in 0..ring.len() {
                if ring.len() < 2 {
                    break;
                }
                let d1 = ring[i];
                let d2 = ring[(i + 1) % ring.len()];
                let p = coords[v];
                let q1 = coords[dart_ends(&edges, d1).1];
                let q2 = coords[dart_ends(&edges, d2).1];
                let dot = (q1[0] - p[0]) * (q2[0] - p[0]) + (q1[1] - p[1]) * (q2[1] - p[1]);
                if orient_sign(p, q1, q2) == 0 && dot > 0.0 {
                    return bad(format!("collinear incident edges at vertex {}", ids[v]));
                }
            }
        }
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_touch(coords[a], coords[b], coords[c], coords[d]) {
                    return bad(format!(
                        "edges {}-{} and {}-{} cross",
                        ids[a], ids[b], ids[c], ids[d]
                    ));
                }
            }
        }
        let comp = components(n, &edges, |_| true);
        if comp.iter().any(|&c| c != 0) {
            return bad("graph is disconnected".into());
        }
        let fs = trace_faces(&coords, &edges, &rotation);
        let f = fs.faces.len();
        if edges.is_empty() {
            if n != 1 {
                return bad("graph is disconnected".into());
            }
        } else {
            if n as i64 - edges.len() as i64 + f as i64 != 2 {
                return bad(format!("Euler formula fails: v={} e={} f={}", n, edges.len(), f));
            }
            let negatives: Vec<usize> = (0..f).filter(|&i| fs.areas[i] < 0.0).collect();
            let outer_ok = negatives.len() == 1 || f == 1;
            if !outer_ok {
                return bad(format!("{} face walks with negative area", negatives.len()));
            }
        }
        let outer_face = (0..f)
            .min_by(|&a, &b| fs.areas[a].partial_cmp(&fs.areas[b]).unwrap())
            .unwrap_or(0);
        Ok(PlaneGraph {
            ids,
            coords,
            edges,
            rotation,
            faces: fs.faces,
            dart_face: fs.dart_face,
            outer_face,
        })
    }

    /// Builds a plane graph whose ids are `0..coords.len()`.
    pub fn from_indexed(coords: Vec<[f64; 2]>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let ids = (0..coords.len() as i64).collect();
        Self::new(ids, coords, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[i64] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> i64 {
        self.ids[v]
    }

    pub fn index_of(&self, id: i64) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn dart_ends(&self, d: Dart) -> (usize, usize) {
        dart_ends(&self.edges, d)
    }

    /// Darts leaving `v`, counterclockwise.
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotation[v].iter().map(move |&d| self.dart_ends(d).1)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.rotation[u]
            .iter()
            .find(|&&d| self.dart_ends(d).1 == v)
            .map(|&d| dart_edge(d))
    }

    pub fn faces(&self) -> &[FaceWalk] {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// Face lying to the left of a dart.
    pub fn face_of_dart(&self, d: Dart) -> usize {
        self.dart_face[d]
    }

    /// Vertices of the outer face in the order of its (clockwise) walk.
    pub fn outer_vertices(&self) -> Vec<usize> {
        self.face_vertices(self.outer_face)
    }

    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].darts.iter().map(|&d| self.dart_ends(d).0).collect()
    }

    /// Face walks as cyclic sequences of external vertex ids, each rotated to
    /// start at its smallest id, sorted. Independent of vertex numbering.
    pub fn canonical_faces(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = (0..self.faces.len())
            .map(|f| {
                let mut w: Vec<i64> = self.face_vertices(f).into_iter().map(|v| self.ids[v]).collect();
                let k = (0..w.len()).min_by_key(|&i| w[i]).unwrap_or(0);
                w.rotate_left(k);
                w
            })
            .collect();
        out.sort();
        out
    }

    /// Two-coloring of the vertices, `None` if the graph is not bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.num_vertices();
        let mut color: Vec<Option<bool>> = vec![None; n];
        color[0] = Some(false);
        let mut q = VecDeque::from([0]);
        while let Some(u) = q.pop_front() {
            let cu = color[u].unwrap();
            for w in self.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        q.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    _ => {}
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn classify(&self) -> GraphClass {
        let simple = (0..self.faces.len()).all(|f| {
            let mut vs = self.face_vertices(f);
            vs.sort_unstable();
            vs.windows(2).all(|w| w[0] != w[1])
        });
        if self.faces.len() < 2 || !simple {
            return GraphClass::Other;
        }
        if self.faces.iter().all(|f| f.degree() == 4) && self.bipartition().is_some() {
            GraphClass::Quadrangulation
        } else if self.faces.iter().all(|f| f.degree() == 3) {
            GraphClass::Triangulation
        } else {
            GraphClass::Other
        }
    }

    /// Renders the graph in Graphviz DOT with pinned positions.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
        for v in 0..self.num_vertices() {
            s.push_str(&format!(
                "  {} [pos=\"{:.6},{:.6}!\"];\n",
                self.ids[v], self.coords[v][0], self.coords[v][1]
            ));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  {} -- {};\n", self.ids[a], self.ids[b]));
        }
        s.push_str("}\n");
        s
    }
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
    fn four_cycle_has_two_quadrilateral_faces() {
        let g = square();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.degree() == 4));
        let outer = g.outer_face();
        assert_eq!(g.faces()[outer].degree(), 4);
    }

    #[test]
    fn every_dart_is_on_exactly_one_face() {
        let g = square();
        let mut count = vec![0; 2 * g.num_edges()];
        for f in g.faces() {
            for &d in &f.darts {
                count[d] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 1));
    }

    #[test]
    fn path_is_other() {
        let g = PlaneGraph::from_indexed(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 1.0]], vec![(0, 1), (1, 2)])
            .unwrap();
        assert_eq!(g.classify(), GraphClass::Other);
        assert_eq!(g.faces().len(), 1);
    }

    #[test]
    fn rejects_crossing_edges() {
        let err = PlaneGraph::from_indexed(
            vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]],
            vec![(0, 1), (2, 3), (0, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmbeddingInvalid(_)));
    }

    #[test]
    fn rejects_duplicate_coordinates() {
        let err = PlaneGraph::from_indexed(vec![[0.0, 0.0], [0.0, 0.0]], vec![(0, 1)]).unwrap_err();
        assert!(matches!(err, Error::EmbeddingInvalid(_)));
    }

    #[test]
    fn rejects_collinear_incident_edges() {
        let err = PlaneGraph::from_indexed(
            vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]],
            vec![(0, 1), (0, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmbeddingInvalid(_)));
    }

    #[test]
    fn triangle_with_center_is_triangulation() {
        let g = PlaneGraph::from_indexed(
            vec![[0.0, 0.0], [4.0, 0.0], [2.0, 3.0], [2.0, 1.0]],
            vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(g.classify(), GraphClass::Triangulation);
        assert_eq!(g.faces().len(), 4);
        assert_eq!(g.outer_vertices().len(), 3);
    }
}
