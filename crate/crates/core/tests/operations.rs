mod common;

use alphaflip::analysis::{
    chi_square_uniform, diameter_and_height, exact_conductance, hourglass_bound, kernel, mixing_time,
};
use alphaflip::chains::{
    cftp_sample, coupled_step, face_type, find_tower, reverse_tower, run, step, ChainKind, FaceType, StepRandomness,
};
use alphaflip::families::{octahedron, quad_grid, quad_q, tri_g, tri_t, tri_t_subdiv, FamilyInstance};
use alphaflip::orientations::{
    feasible_orientation, rigid_edges, AlphaLattice, AlphaSpec, CycleSense, Orientation, DEFAULT_STATE_CAP,
};
use alphaflip::planegraph::{GraphClass, PlaneGraph};
use alphaflip::Error;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn square() -> PlaneGraph {
    PlaneGraph::from_indexed(vec![[0., 0.], [1., 0.], [1., 1.], [0., 1.]], vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}

fn labels(f: &FamilyInstance, states: &[Orientation]) -> Vec<alphaflip::families::Side> {
    states.iter().map(|x| f.classifier.as_ref().unwrap().classify(&f.graph, x).unwrap()).collect()
}

#[test]
fn faces_of_small_graphs() {
    let o = octahedron();
    assert_eq!(o.graph.faces().len(), 8);
    assert_eq!((0..8).filter(|&f| f == o.graph.outer_face()).count(), 1);
    let sq = square();
    assert_eq!(sq.faces().len(), 2);
    assert!(sq.faces().iter().all(|f| f.degree() == 4));
    let q = quad_q(3).unwrap();
    assert!(q.graph.faces().iter().all(|f| f.degree() == 4));
}

#[test]
fn classification() {
    assert_eq!(quad_q(3).unwrap().graph.classify(), GraphClass::Quadrangulation);
    assert_eq!(tri_t(3).unwrap().graph.classify(), GraphClass::Triangulation);
    let path = PlaneGraph::from_indexed(vec![[0., 0.], [1., 0.], [2., 1.]], vec![(0, 1), (1, 2)]).unwrap();
    assert_eq!(path.classify(), GraphClass::Other);
}

#[test]
fn feasible_orientations() {
    let o = octahedron();
    let x = feasible_orientation(&o.graph, &AlphaSpec::uniform(6, 2)).unwrap();
    assert!(x.is_alpha_orientation(&o.graph, &AlphaSpec::uniform(6, 2)));
    let sq = square();
    let x = feasible_orientation(&sq, &AlphaSpec::uniform(4, 1)).unwrap();
    let lat = AlphaLattice::new(&sq, &AlphaSpec::uniform(4, 1)).unwrap();
    assert_ne!(lat.sense(&x, 0), CycleSense::Undirected);
    let bad = AlphaSpec(vec![2, 0, 0, 0]);
    assert!(matches!(feasible_orientation(&sq, &bad), Err(Error::Infeasible(_))));
}

#[test]
fn rigid_edges_of_families() {
    for n in 2..=4 {
        let f = quad_q(n).unwrap();
        let x = f.reference.clone().unwrap();
        let e = f.graph.edge_between(f.marker("x0"), f.marker("s")).unwrap();
        assert!(rigid_edges(&f.graph, &x)[e]);
        let f = tri_t(n).unwrap();
        let x = f.reference.clone().unwrap();
        let rigid = rigid_edges(&f.graph, &x);
        for corner in ["ag", "ab"] {
            assert!(rigid[f.graph.edge_between(f.marker("x0"), f.marker(corner)).unwrap()]);
        }
    }
    let o = octahedron();
    let lat = o.lattice().unwrap();
    assert!(lat.rigid_edge_list().is_empty());
    let states = common::brute_force(&o.graph, &o.alpha);
    assert!(common::rigid(&states, 12).iter().all(|&r| !r));
    assert_eq!(lat.num_cycles(), 7);
    assert!(lat.cycles().iter().all(|c| c.len() == 3));
}

#[test]
fn flips_and_extremes() {
    let o = octahedron();
    let lat = o.lattice().unwrap();
    let min = lat.min().clone();
    for c in 0..lat.num_cycles() {
        if lat.sense(&min, c) == CycleSense::Clockwise {
            let y = lat.flip(&min, c).unwrap();
            assert_eq!(lat.lattice_distance(&min, &y), 1);
            assert_eq!(lat.flip(&y, c).unwrap(), min);
        }
        assert_ne!(lat.sense(&min, c), CycleSense::Counterclockwise);
    }
    // descending by random schedules always ends at the minimum
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let mut x = space.states[rng.gen_range(0..space.len())].clone();
        loop {
            let down: Vec<usize> =
                (0..lat.num_cycles()).filter(|&c| lat.sense(&x, c) == CycleSense::Counterclockwise).collect();
            if down.is_empty() {
                break;
            }
            x = lat.flip(&x, down[rng.gen_range(0..down.len())]).unwrap();
        }
        assert_eq!(&x, lat.min());
    }
}

#[test]
fn potentials_and_distances() {
    let o = octahedron();
    let lat = o.lattice().unwrap();
    assert!(lat.potential_vector(lat.min()).0.iter().all(|&p| p == 0));
    assert_eq!(lat.max_potential().0.iter().max(), Some(&3));
    let fg = common::FlipGraph::new(&lat, false);
    let from_min = fg.bfs(0);
    for (i, x) in fg.states.iter().enumerate() {
        assert_eq!(lat.potential_vector(x).total(), from_min[i] as u64);
        assert_eq!(lat.potential_vector(x).0, fg.potentials[i]);
        assert_eq!(lat.lattice_distance(x, x), 0);
    }
    assert_eq!(lat.lattice_distance(lat.min(), lat.max()), lat.height());
    let q = quad_q(3).unwrap();
    let lat = q.lattice().unwrap();
    let fg = common::FlipGraph::new(&lat, true);
    for i in 0..fg.len() {
        for j in 0..fg.len() {
            assert_eq!(lat.lattice_distance(&fg.states[i], &fg.states[j]), fg.dist[i][j] as u64);
        }
    }
}

#[test]
fn state_counts() {
    for (n, want) in [(3, 9), (4, 27), (5, 81)] {
        assert_eq!(quad_q(n).unwrap().lattice().unwrap().enumerate(DEFAULT_STATE_CAP).unwrap().len(), want);
    }
    let o = octahedron();
    assert_eq!(o.lattice().unwrap().enumerate(DEFAULT_STATE_CAP).unwrap().len(), common::brute_force(&o.graph, &o.alpha).len());
    assert!(matches!(
        quad_q(5).unwrap().lattice().unwrap().enumerate(10),
        Err(Error::CapExceeded(10))
    ));
}

#[test]
fn face_types() {
    let sq = square();
    let lat = AlphaLattice::new(&sq, &AlphaSpec::uniform(4, 1)).unwrap();
    let mut x = Orientation::all_forward(4);
    assert_eq!(face_type(&lat, &x, 0), FaceType::Oriented);
    x.set_forward(0, false);
    let FaceType::Blocked(d) = face_type(&lat, &x, 0) else { panic!("blocked expected") };
    assert_eq!(d >> 1, 0);
    x.set_forward(1, false);
    assert_eq!(face_type(&lat, &x, 0), FaceType::Scrambled);
}

/// Every (state, tower) of a grid, with the tower's start face.
fn grid_towers(a: usize, b: usize) -> (AlphaLattice, Vec<(Orientation, alphaflip::chains::Tower)>) {
    let f = quad_grid(a, b).unwrap();
    let lat = f.lattice().unwrap();
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    let mut out = Vec::new();
    for x in &space.states {
        for c in 0..lat.num_cycles() {
            if let Some(t) = find_tower(&lat, x, c) {
                out.push((x.clone(), t));
            }
        }
    }
    (lat, out)
}

#[test]
fn towers() {
    let (lat, all) = grid_towers(4, 4);
    for (x, t) in &all {
        if face_type(&lat, x, t.faces[0]) == FaceType::Oriented {
            assert_eq!(t.len(), 1);
        }
        let y = reverse_tower(&lat, x, t).unwrap();
        assert_eq!(lat.lattice_distance(x, &y), t.len() as u64);
        let mirror = find_tower(&lat, &y, *t.faces.last().unwrap()).unwrap();
        assert_eq!(mirror.faces, t.faces.iter().rev().copied().collect::<Vec<_>>());
        assert_eq!(&reverse_tower(&lat, &y, &mirror).unwrap(), x);
    }
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    for x in &space.states {
        for c in 0..lat.num_cycles() {
            if face_type(&lat, x, c) == FaceType::Scrambled {
                assert!(find_tower(&lat, x, c).is_none());
            }
        }
    }
    // a chain of k quadrangles sharing one edge each has 2k+2 boundary edges
    let (_, all) = grid_towers(5, 5);
    assert!(all.iter().all(|(_, t)| t.boundary.len() == 2 * t.len() + 2));
    assert!(all.iter().any(|(_, t)| t.len() == 3));
}

#[test]
fn single_steps() {
    let (lat, all) = grid_towers(5, 5);
    let (x, t) = all
        .iter()
        .find(|(_, t)| t.len() == 3 && t.sense == CycleSense::Clockwise)
        .expect("a clockwise tower of length 3");
    let f = t.faces[0];
    let r = |p: f64| StepRandomness { face: f, level: 0, p };
    assert_eq!(&step(ChainKind::Tower, &lat, x, &r(0.1)), x);
    assert_eq!(step(ChainKind::Tower, &lat, x, &r(0.05)), reverse_tower(&lat, x, t).unwrap());
    let level = lat.potential_vector(x).0[f] as usize;
    let other = StepRandomness { face: f, level: level + 1, p: 0.01 };
    assert_eq!(&step(ChainKind::SlowTower, &lat, x, &other), x);
    let same = StepRandomness { face: f, level, p: 0.01 };
    assert_ne!(&step(ChainKind::SlowTower, &lat, x, &same), x);
    // a clockwise face flips at p = 0.3
    let c = (0..lat.num_cycles()).find(|&c| lat.sense(lat.min(), c) == CycleSense::Clockwise).unwrap();
    let y = step(ChainKind::FaceFlip, &lat, lat.min(), &StepRandomness { face: c, level: 0, p: 0.3 });
    assert_eq!(y, lat.flip(lat.min(), c).unwrap());
    let (a, b) = coupled_step(ChainKind::Tower, &lat, x, x, &r(0.05));
    assert_eq!(a, b);
}

#[test]
fn adjacent_pair_coalesces_on_the_differing_face() {
    let f = quad_grid(4, 4).unwrap();
    let lat = f.lattice().unwrap();
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    for (i, adj) in space.adjacency.iter().enumerate() {
        for &(j, c) in adj {
            let r = StepRandomness { face: c, level: 0, p: 0.3 };
            for p in [0.3, 0.7] {
                let r = StepRandomness { p, ..r };
                let (a, b) = coupled_step(ChainKind::Tower, &lat, &space.states[i], &space.states[j], &r);
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn runs_and_exact_samples() {
    let q = quad_q(3).unwrap();
    let lat = q.lattice().unwrap();
    let t = run(ChainKind::FaceFlip, &lat, lat.max(), 0, 1, 0, None);
    assert_eq!(&t.final_state, lat.max());
    let a = run(ChainKind::Tower, &lat, lat.min(), 500, 9, 50, None);
    let b = run(ChainKind::Tower, &lat, lat.min(), 500, 9, 50, None);
    assert_eq!(a.final_state, b.final_state);
    assert_eq!(a.to_csv(), b.to_csv());
    // long run frequencies
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    let mut counts = vec![0u64; space.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut x = lat.min().clone();
    for t in 0..2_000_000u64 {
        let r = StepRandomness::draw(&mut rng, lat.num_cycles(), 1);
        x = step(ChainKind::FaceFlip, &lat, &x, &r);
        // thin well beyond the mixing time
        if t % 200 == 0 {
            counts[space.index_of(&x).unwrap()] += 1;
        }
    }
    assert!(chi_square_uniform(&counts, 0.01).passed, "{counts:?}");
    let single = quad_grid(2, 2).unwrap();
    let lat = single.lattice().unwrap();
    assert_eq!(&cftp_sample(ChainKind::FaceFlip, &lat, 4).unwrap(), lat.min());
}

#[test]
fn family_sizes() {
    let o = octahedron();
    assert_eq!((o.graph.num_vertices(), o.graph.num_edges()), (6, 12));
    assert_eq!(o.alpha.total(), 12);
    for n in 2..=5 {
        assert_eq!(quad_q(n).unwrap().graph.num_vertices(), 5 * n + 1);
        let t = tri_t(n).unwrap();
        assert_eq!(t.graph.num_vertices(), 3 * n + 4);
        assert_eq!(t.graph.max_degree(), 2 * n + 3);
    }
    for n in 2..=3 {
        let a = tri_t(n).unwrap();
        let b = tri_t_subdiv(n, 0).unwrap();
        assert_eq!(a.graph.num_vertices(), b.graph.num_vertices());
        assert_eq!(a.graph.num_edges(), b.graph.num_edges());
        let count = |f: &FamilyInstance| f.lattice().unwrap().enumerate(DEFAULT_STATE_CAP).unwrap().len();
        assert_eq!(count(&a), count(&b));
        for m in 1..=3 {
            let f = tri_t_subdiv(n, m).unwrap();
            assert_eq!(f.graph.num_vertices(), 3 * n + 4 + (n - 1) * m);
            let x = f.reference.as_ref().unwrap();
            for i in 1..n {
                // the gadget replacing x_i x_{i+1}
                let mut keep = vec![false; f.graph.num_vertices()];
                let mut names = vec![format!("x{i}"), format!("x{}", i + 1), format!("v{i}"), format!("w{i}")];
                names.extend((1..=m).map(|j| format!("y{i}_{j}")));
                for name in &names {
                    keep[f.marker(name)] = true;
                }
                let (a, b) = (f.marker(&format!("x{i}")), f.marker(&format!("x{}", i + 1)));
                assert_eq!(common::count_paths_within(&f.graph, x, a, b, &keep), 2 * m as u128 + 3);
            }
        }
    }
    for k in 2..=3 {
        let g = tri_g(k).unwrap();
        assert_eq!(g.graph.num_vertices(), 3 * (k * k + 4 * k - 1));
        assert_eq!(g.classifier.as_ref().unwrap().block.len() + 1, 3 * (k * k + k) + 1);
    }
    let g = tri_g(2).unwrap();
    let lat = g.lattice().unwrap();
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    let lab = labels(&g, &space.states);
    let central: Vec<usize> = (0..space.len()).filter(|&i| lab[i] == alphaflip::families::Side::Central).collect();
    assert_eq!(central, vec![space.index_of(g.reference.as_ref().unwrap()).unwrap()]);
    let grid = quad_grid(4, 4).unwrap();
    let outer: Vec<usize> = grid.graph.outer_vertices();
    assert!((0..grid.graph.num_vertices()).filter(|v| !outer.contains(v)).all(|v| grid.graph.degree(v) <= 4));
}

#[test]
fn kernels() {
    let q = quad_q(3).unwrap();
    let lat = q.lattice().unwrap();
    let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
    let n = Rational64::from_integer(q.graph.num_vertices() as i64);
    let tower = kernel(ChainKind::Tower, &lat, &space).unwrap();
    let slow = kernel(ChainKind::SlowTower, &lat, &space).unwrap();
    let face = kernel(ChainKind::FaceFlip, &lat, &space).unwrap();
    assert_eq!(face.len(), 9);
    for k in [&tower, &slow, &face] {
        assert!(k.is_symmetric() && k.is_stochastic() && k.is_ergodic());
    }
    for i in 0..9 {
        for j in 0..9 {
            let id = Rational64::from_integer((i == j) as i64);
            assert_eq!(slow.prob(i, j), tower.prob(i, j) / n + (Rational64::from_integer(1) - Rational64::from_integer(1) / n) * id);
        }
    }
    let single = quad_grid(2, 2).unwrap();
    let lat1 = single.lattice().unwrap();
    let k1 = kernel(ChainKind::FaceFlip, &lat1, &lat1.enumerate(10).unwrap()).unwrap();
    assert_eq!(mixing_time(&k1, 10).unwrap(), 0);
}

#[test]
fn conductance_implies_mixing_bound() {
    for f in [quad_q(3).unwrap(), quad_q(4).unwrap(), tri_t(2).unwrap(), tri_t(3).unwrap()] {
        let lat = f.lattice().unwrap();
        let space = lat.enumerate(DEFAULT_STATE_CAP).unwrap();
        let k = kernel(ChainKind::FaceFlip, &lat, &space).unwrap();
        let bound = hourglass_bound(&k, &labels(&f, &space.states)).unwrap();
        let tau = mixing_time(&k, 1 << 24).unwrap() as i64;
        // tau >= 1/(4 phi) >= 1/(4 bound)
        assert!(Rational64::from_integer(tau) * bound * 4 >= Rational64::from_integer(1));
        if space.len() <= 22 {
            let phi = exact_conductance(&k).unwrap();
            assert!(phi <= bound);
            assert!(Rational64::from_integer(tau) * phi * 4 >= Rational64::from_integer(1));
        }
    }
    let o = octahedron();
    let lat = o.lattice().unwrap();
    let k = kernel(ChainKind::FaceFlip, &lat, &lat.enumerate(DEFAULT_STATE_CAP).unwrap()).unwrap();
    assert!(matches!(exact_conductance(&k), Err(Error::TooLarge(38))));
}

#[test]
fn uniformity_controls() {
    assert_eq!(chi_square_uniform(&[50; 9], 0.01).statistic, 0.0);
    assert!(!chi_square_uniform(&[100, 100, 100, 100, 100, 100, 100, 100, 300], 0.01).passed);
}

#[test]
fn diameter_and_height_examples() {
    let single = quad_grid(2, 2).unwrap();
    let lat = single.lattice().unwrap();
    let r = diameter_and_height(&lat.enumerate(10).unwrap());
    assert_eq!((r.diameter, r.height), (0, 0));
    for f in [quad_q(3).unwrap(), quad_q(4).unwrap(), quad_grid(4, 4).unwrap(), quad_grid(4, 5).unwrap()] {
        let lat = f.lattice().unwrap();
        let r = diameter_and_height(&lat.enumerate(DEFAULT_STATE_CAP).unwrap());
        let n = f.graph.num_vertices() as u64;
        assert_eq!(r.diameter as u64, r.height);
        assert_eq!(r.height, lat.max_potential().total());
        assert!(r.height <= (n - 3) * (n - 2) / 2);
    }
}
