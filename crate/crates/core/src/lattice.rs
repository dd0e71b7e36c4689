//! The distributive lattice of orientations homologous to a base
//! orientation: difference subgraphs, partitionability, rigid edges, the
//! reduced graph, face flips, Hasse diagram enumeration, extremal elements
//! and meet/join.
//!
//! Everything is generic over a map and applies both to orientations of a
//! base map (3-orientations of a triangulation) and to orientations of a
//! primal-dual completion.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::completion::Completion;
use crate::homology::{beta, face_potential, is_circulation, CycleBasis, DualData, Flow};
use crate::map::{Orientation, SurfaceMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The face boundary is not directed the requested way.
    NotDirected,
    /// The distinguished face is never flipped.
    ForbiddenRootFace,
    /// Meet/join of orientations from different homology classes.
    NotHomologous,
    /// Node cap hit during enumeration.
    BudgetExceeded { nodes: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotDirected => write!(f, "face boundary is not directed as required"),
            LatticeError::ForbiddenRootFace => write!(f, "the distinguished face cannot be flipped"),
            LatticeError::NotHomologous => write!(f, "orientations are not homologous"),
            LatticeError::BudgetExceeded { nodes } => {
                write!(f, "lattice enumeration exceeded the node budget at {nodes} nodes")
            }
        }
    }
}

impl core::error::Error for LatticeError {}

/// Difference of two orientations as a flow: the edges oriented differently,
/// with the direction they have in the first argument.
pub fn diff(map: &SurfaceMap, d: &Orientation, d_prime: &Orientation) -> Flow {
    let mut flow = Flow::zero(map.edge_count());
    for e in 0..map.edge_count() {
        if d.is_forward(e) != d_prime.is_forward(e) {
            flow.values[e] = d.sign(e);
        }
    }
    flow
}

/// Partitionable = topological Tutte orientation: the pairing against every
/// closed dual walk is divisible by three (facial walks and a basis
/// generate them all).
pub fn is_partitionable(dual_data: &DualData, t: &Flow) -> bool {
    dual_data
        .dual_face_flows
        .iter()
        .chain(&dual_data.dual_basis_flows)
        .all(|w| beta(t, w).unwrap().rem_euclid(3) == 0)
}

/// Eulerian-partitionable: partitionable and Eulerian (then the three
/// classes of any partition are themselves Eulerian).
pub fn is_eulerian_partitionable(map: &SurfaceMap, dual_data: &DualData, t: &Flow) -> bool {
    is_partitionable(dual_data, t) && is_circulation(map, t)
}

pub fn is_zero_homologous(map: &SurfaceMap, t: &Flow) -> bool {
    face_potential(map, t, 0).is_ok()
}

/// The constructive partition behind the Tutte characterization: label the
/// regions cut out by `t` with the pairing value mod 3 and split the edges
/// of `t` by the label on their left. Returns `None` when `t` is not
/// partitionable.
pub fn tutte_partition(map: &SurfaceMap, t: &Flow) -> Option<[Vec<usize>; 3]> {
    let nf = map.face_count();
    let mut label = vec![None::<u8>; nf];
    label[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(face) = queue.pop_front() {
        for d in map.facial_walk(face).darts {
            let other = map.face_right_of(d);
            // Crossing dart d traverses the dual edge against its induced
            // direction when d is the reference dart.
            let step = -map.dart_sign(d) * t.values[map.edge_of(d)];
            let expect = ((label[face].unwrap() as i64 + step).rem_euclid(3)) as u8;
            match label[other] {
                None => {
                    label[other] = Some(expect);
                    queue.push_back(other);
                }
                Some(have) if have == expect => {}
                Some(_) => return None,
            }
        }
    }
    let mut classes = [Vec::new(), Vec::new(), Vec::new()];
    for e in 0..map.edge_count() {
        if t.values[e] == 0 {
            continue;
        }
        let tail = if t.values[e] > 0 { map.edge_ref(e) } else { map.alpha(map.edge_ref(e)) };
        let left = label[map.face_of(tail)].unwrap();
        let right = label[map.face_right_of(tail)].unwrap();
        // An edge of class i has label i-1 on its left and i+1 on its right.
        let class = (left + 1) % 3;
        if (class + 1) % 3 != right {
            return None;
        }
        classes[class as usize].push(e);
    }
    Some(classes)
}

/// Embedded graph left after deleting the rigid edges, with its faces as
/// groups of original faces.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    /// Per edge of the original map.
    pub rigid: Vec<bool>,
    /// Face of the original map -> reduced face id.
    pub region_of_face: Vec<usize>,
    /// Reduced faces: contained original faces and boundary flow
    /// (counterclockwise, the sum of the contained facial flows).
    pub faces: Vec<ReducedFace>,
    /// Reduced face containing the distinguished face `f0`.
    pub root: usize,
    pub f0: usize,
}

#[derive(Debug, Clone)]
pub struct ReducedFace {
    pub faces: Vec<usize>,
    pub boundary: Flow,
}

/// Rigid edges: an edge is rigid iff it is oriented the same way in every
/// orientation homologous to `d0`, equivalently iff it lies in no
/// 0-homologous oriented subgraph of `d0`. Decided by reachability in the
/// digraph crossing each edge from the face on its `d0`-left to the face on
/// its `d0`-right, which encodes the zero-weight arcs of the difference
/// constraint system of face potentials.
pub fn rigid_edge_flags(map: &SurfaceMap, d0: &Orientation) -> Vec<bool> {
    let nf = map.face_count();
    let mut adj = vec![Vec::new(); nf];
    for e in 0..map.edge_count() {
        let tail = d0.tail_dart(map, e);
        adj[map.face_of(tail)].push(map.face_right_of(tail));
    }
    // reach[a] = faces reachable from a along the arcs.
    let mut reach = vec![Vec::new(); nf];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut seen = vec![false; nf];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        *row = seen;
    }
    (0..map.edge_count())
        .map(|e| {
            let tail = d0.tail_dart(map, e);
            reach[map.face_right_of(tail)][map.face_of(tail)]
        })
        .collect()
}

/// Deletes the rigid edges and groups the faces into reduced faces.
pub fn reduce(map: &SurfaceMap, d0: &Orientation, f0: usize) -> ReducedGraph {
    let rigid = rigid_edge_flags(map, d0);
    let nf = map.face_count();
    // Merge faces across rigid edges.
    let mut region_of_face = vec![usize::MAX; nf];
    let mut faces = Vec::new();
    for start in 0..nf {
        if region_of_face[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        region_of_face[start] = id;
        while let Some(f) = queue.pop_front() {
            members.push(f);
            for d in map.facial_walk(f).darts {
                if rigid[map.edge_of(d)] {
                    let other = map.face_right_of(d);
                    if region_of_face[other] == usize::MAX {
                        region_of_face[other] = id;
                        queue.push_back(other);
                    }
                }
            }
        }
        faces.push(ReducedFace { faces: members, boundary: Flow::zero(map.edge_count()) });
    }
    for rf in faces.iter_mut() {
        let mut boundary = Flow::zero(map.edge_count());
        for &f in &rf.faces {
            for d in map.facial_walk(f).darts {
                boundary.values[map.edge_of(d)] += map.dart_sign(d);
            }
        }
        debug_assert!(boundary.values.iter().all(|v| v.abs() <= 1));
        rf.boundary = boundary;
    }
    let root = region_of_face[f0];
    ReducedGraph { rigid, region_of_face, faces, root, f0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipDirection {
    /// Reverse a counterclockwise boundary (moves up in the order).
    Up,
    /// Reverse a clockwise boundary (moves down).
    Down,
}

/// Whether the boundary of a reduced face is directed the stated way in `d`.
pub fn boundary_directed(reduced: &ReducedGraph, d: &Orientation, region: usize, dir: FlipDirection) -> bool {
    let boundary = &reduced.faces[region].boundary;
    let mut any = false;
    for (e, &v) in boundary.values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        any = true;
        let want = match dir {
            FlipDirection::Up => v,
            FlipDirection::Down => -v,
        };
        if d.sign(e) != want {
            return false;
        }
    }
    any
}

/// Reverses the boundary of a reduced face. The face must be directed the
/// requested way and must not be the root face.
pub fn flip(
    reduced: &ReducedGraph,
    d: &Orientation,
    region: usize,
    dir: FlipDirection,
) -> Result<Orientation, LatticeError> {
    if region == reduced.root {
        return Err(LatticeError::ForbiddenRootFace);
    }
    if !boundary_directed(reduced, d, region, dir) {
        return Err(LatticeError::NotDirected);
    }
    let edges = reduced.faces[region].boundary.support();
    Ok(d.reversed_edges(edges))
}

/// Hasse diagram of the lattice of orientations homologous to `d0`: an arc
/// `from -> to` labeled by the reduced face whose counterclockwise boundary
/// is reversed.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    pub nodes: Vec<Orientation>,
    /// (lower node, upper node, reduced face label)
    pub arcs: Vec<(usize, usize, usize)>,
    pub d0: usize,
    pub reduced: ReducedGraph,
}

impl HasseDiagram {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, o: &Orientation) -> Option<usize> {
        self.nodes.iter().position(|n| n == o)
    }

    /// Unique source (minimum) and sink (maximum) of the diagram.
    pub fn extremes(&self) -> (usize, usize) {
        let mut has_in = vec![false; self.nodes.len()];
        let mut has_out = vec![false; self.nodes.len()];
        for &(a, b, _) in &self.arcs {
            has_out[a] = true;
            has_in[b] = true;
        }
        let sources: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| !has_in[i] && (self.nodes.len() == 1 || has_out[i]))
            .collect();
        let sinks: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| !has_out[i] && (self.nodes.len() == 1 || has_in[i]))
            .collect();
        assert_eq!(sources.len(), 1, "lattice has a unique minimum");
        assert_eq!(sinks.len(), 1, "lattice has a unique maximum");
        (sources[0], sinks[0])
    }

    /// Checks the four local axioms of Hasse diagrams of distributive
    /// lattices plus acyclicity and connectedness.
    pub fn check_axioms(&self) -> Result<(), alloc::string::String> {
        use alloc::format;
        let n = self.nodes.len();
        let mut up: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut down: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(a, b, f) in &self.arcs {
            if up.insert((a, f), b).is_some() {
                return Err(format!("U1 violated at node {a}: label {f} repeated"));
            }
            if down.insert((b, f), a).is_some() {
                return Err(format!("L1 violated at node {b}: label {f} repeated"));
            }
            out[a].push((f, b));
            inc[b].push((f, a));
        }
        for u in 0..n {
            for &(f1, v) in &out[u] {
                for &(f2, w) in &out[u] {
                    if f1 >= f2 {
                        continue;
                    }
                    // U2: the two flips commute to a common upper node.
                    let z1 = up.get(&(v, f2));
                    let z2 = up.get(&(w, f1));
                    if z1.is_none() || z1 != z2 {
                        return Err(format!("U2 violated above node {u} (labels {f1},{f2})"));
                    }
                }
            }
            for &(f1, v) in &inc[u] {
                for &(f2, w) in &inc[u] {
                    if f1 >= f2 {
                        continue;
                    }
                    let z1 = down.get(&(v, f2));
                    let z2 = down.get(&(w, f1));
                    if z1.is_none() || z1 != z2 {
                        return Err(format!("L2 violated below node {u} (labels {f1},{f2})"));
                    }
                }
            }
        }
        // Acyclicity, by Kahn's algorithm.
        let mut indeg = vec![0usize; n];
        for &(_, b, _) in &self.arcs {
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        let mut arcs_from = vec![Vec::new(); n];
        for &(a, b, _) in &self.arcs {
            arcs_from[a].push(b);
        }
        while let Some(x) = queue.pop_front() {
            seen += 1;
            for &y in &arcs_from[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if seen != n {
            return Err("diagram contains a directed cycle".into());
        }
        // Connected (as an undirected graph).
        if n > 0 {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut queue = VecDeque::from([0usize]);
            let mut count = 1;
            while let Some(x) = queue.pop_front() {
                for &(a, b, _) in &self.arcs {
                    for (p, q) in [(a, b), (b, a)] {
                        if p == x && !seen[q] {
                            seen[q] = true;
                            count += 1;
                            queue.push_back(q);
                        }
                    }
                }
            }
            if count != n {
                return Err("diagram is disconnected".into());
            }
        }
        Ok(())
    }
}

/// Enumerates the full lattice of orientations homologous to `d0` by
/// breadth-first closure under face flips.
pub fn enumerate_lattice(
    map: &SurfaceMap,
    d0: &Orientation,
    f0: usize,
    max_nodes: usize,
) -> Result<HasseDiagram, LatticeError> {
    let reduced = reduce(map, d0, f0);
    let mut index: BTreeMap<Orientation, usize> = BTreeMap::new();
    let mut nodes = vec![d0.clone()];
    index.insert(d0.clone(), 0);
    let mut arcs = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for region in 0..reduced.faces.len() {
            if region == reduced.root {
                continue;
            }
            for dir in [FlipDirection::Up, FlipDirection::Down] {
                let Ok(next) = flip(&reduced, &nodes[i], region, dir) else {
                    continue;
                };
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        if j >= max_nodes {
                            return Err(LatticeError::BudgetExceeded { nodes: j });
                        }
                        nodes.push(next.clone());
                        index.insert(next, j);
                        queue.push_back(j);
                        j
                    }
                };
                if let FlipDirection::Up = dir {
                    arcs.push((i, j, region));
                }
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    Ok(HasseDiagram { nodes, arcs, d0: 0, reduced })
}

/// Greedy descent to the minimal element: flip clockwise non-root faces
/// until none is left.
pub fn minimum(reduced: &ReducedGraph, d: &Orientation) -> Orientation {
    extremal(reduced, d, FlipDirection::Down)
}

/// Greedy ascent to the maximal element.
pub fn maximum(reduced: &ReducedGraph, d: &Orientation) -> Orientation {
    extremal(reduced, d, FlipDirection::Up)
}

fn extremal(reduced: &ReducedGraph, d: &Orientation, dir: FlipDirection) -> Orientation {
    let mut cur = d.clone();
    'outer: loop {
        for region in 0..reduced.faces.len() {
            if region == reduced.root {
                continue;
            }
            if let Ok(next) = flip(reduced, &cur, region, dir) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Lattice meet (componentwise minimum of face potentials over the common
/// minimum) of two homologous orientations.
pub fn meet(map: &SurfaceMap, f0: usize, d1: &Orientation, d2: &Orientation) -> Result<Orientation, LatticeError> {
    combine(map, f0, d1, d2, i64::min)
}

/// Lattice join.
pub fn join(map: &SurfaceMap, f0: usize, d1: &Orientation, d2: &Orientation) -> Result<Orientation, LatticeError> {
    combine(map, f0, d1, d2, i64::max)
}

fn combine(
    map: &SurfaceMap,
    f0: usize,
    d1: &Orientation,
    d2: &Orientation,
    pick: impl Fn(i64, i64) -> i64,
) -> Result<Orientation, LatticeError> {
    if face_potential(map, &diff(map, d1, d2), f0).is_err() {
        return Err(LatticeError::NotHomologous);
    }
    let reduced = reduce(map, d1, f0);
    let dmin = minimum(&reduced, d1);
    let pot = |d: &Orientation| -> Vec<i64> {
        face_potential(map, &diff(map, &dmin, d), f0)
            .expect("homologous by construction")
            .lambda
    };
    let (p1, p2) = (pot(d1), pot(d2));
    let target: Vec<i64> = p1.iter().zip(&p2).map(|(&a, &b)| pick(a, b)).collect();
    // Rebuild the orientation from its potential relative to the minimum:
    // an edge is reversed iff the potential jumps across it.
    let mut out = dmin.clone();
    for e in 0..map.edge_count() {
        let r = map.edge_ref(e);
        let jump = target[map.face_of(r)] - target[map.face_right_of(r)];
        if jump != 0 {
            debug_assert_eq!(jump, dmin.sign(e));
            out.reverse_edge(e);
        }
    }
    Ok(out)
}

/// Type of a Schnyder orientation: gamma of each basis cycle.
pub fn orientation_type(completion: &Completion, o: &Orientation, basis: &CycleBasis) -> Vec<i64> {
    completion.is_schnyder_orientation(o, basis).gammas
}

/// `d <= d'` in the order over `f0`: their difference, oriented as in `d`,
/// is a nonnegative combination of non-root facial flows.
pub fn leq(map: &SurfaceMap, f0: usize, d: &Orientation, d_prime: &Orientation) -> Option<bool> {
    let t = diff(map, d, d_prime);
    let pot = face_potential(map, &t, f0).ok()?;
    Some(pot.lambda.iter().all(|&l| l >= 0))
}
