//! Combinatorial maps on orientable surfaces, encoded as a pair of
//! permutations on darts (half-edges): `alpha` pairs the two darts of every
//! edge and `sigma` is the counterclockwise rotation around each vertex.
//!
//! Conventions, fixed once and for all because every sign downstream
//! (`beta`, `delta`, `gamma`) depends on them:
//!
//! * a dart points away from its origin vertex;
//! * the face of a dart is the face on its **left**;
//! * the facial successor is `phi(d) = sigma^-1(alpha(d))`, so a facial walk
//!   runs **counterclockwise** around its face (orbits of `phi` agree with
//!   the orbits of the right action `sigma * alpha`, corner by corner);
//! * every edge has a reference dart (`edge_ref`); flows are stored relative
//!   to it. Freshly built maps use the lower dart id. The dual produced by
//!   [`SurfaceMap::dual`] uses the induced convention: the dual of an edge is
//!   directed from the face on the right of the reference dart to the face
//!   on its left, which means the dual reference dart is `alpha(edge_ref)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Half-edge identifier, dense in `0..2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Walk: a sequence of darts, each traversed from its origin to the origin
/// of its partner. Consecutive darts must chain head to tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub darts: Vec<Dart>,
    pub closed: bool,
}

impl Walk {
    pub fn closed(darts: Vec<Dart>) -> Self {
        Walk { darts, closed: true }
    }

    pub fn open(darts: Vec<Dart>) -> Self {
        Walk { darts, closed: false }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Same walk traversed backwards.
    pub fn reversed(&self, map: &SurfaceMap) -> Walk {
        Walk {
            darts: self.darts.iter().rev().map(|&d| map.alpha(d)).collect(),
            closed: self.closed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    /// `alpha` and `sigma` must be permutations of the same dense dart set.
    NotPermutation,
    /// `alpha` must be an involution.
    NotInvolution,
    /// `alpha` may not fix a dart (every edge has two distinct darts).
    FixedPointEdge,
    /// The dart set must be connected under `alpha` and `sigma`.
    Disconnected,
    /// Euler count `n - m + f` inconsistent with a surface of genus >= 0.
    NegativeGenus,
    /// Odd dart count cannot pair into edges.
    OddDartCount,
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::NotPermutation => write!(f, "alpha/sigma are not permutations of the dart set"),
            MapError::NotInvolution => write!(f, "alpha is not an involution"),
            MapError::FixedPointEdge => write!(f, "alpha has a fixed point"),
            MapError::Disconnected => write!(f, "dart set is not connected under <alpha, sigma>"),
            MapError::NegativeGenus => write!(f, "Euler formula yields a negative or fractional genus"),
            MapError::OddDartCount => write!(f, "odd number of darts"),
        }
    }
}

impl core::error::Error for MapError {}

/// Violations reported by [`SurfaceMap::validate_assumptions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A loop edge bounding a disk on one side.
    ContractibleLoop { edge: usize },
    /// Two parallel edges whose 2-cycle bounds a disk on one side.
    ContractibleParallelPair { edge_a: usize, edge_b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ContractibleLoop { edge } => write!(f, "contractible loop at edge {edge}"),
            Violation::ContractibleParallelPair { edge_a, edge_b } => {
                write!(f, "contractible double edge {edge_a}/{edge_b}")
            }
        }
    }
}

/// An immutable map on a connected orientable surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    dart_vertex: Vec<usize>,
    dart_edge: Vec<usize>,
    dart_face: Vec<usize>,
    /// Reference dart per edge; flows are positive along it.
    edge_ref: Vec<Dart>,
    /// Lowest dart of each vertex rotation, indexed by vertex id.
    vertex_rep: Vec<Dart>,
    /// Lowest dart of each face orbit, indexed by face id.
    face_rep: Vec<Dart>,
    genus: usize,
}

impl SurfaceMap {
    /// Builds a map from an edge involution and a vertex rotation, both given
    /// as permutation images on `0..darts`.
    pub fn build(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<SurfaceMap, MapError> {
        let refs = default_edge_refs(&alpha)?;
        SurfaceMap::build_with_refs(alpha, sigma, refs)
    }

    /// As [`SurfaceMap::build`], with an explicit reference dart per edge
    /// (edges ordered by their lower dart id). Used for duals, whose
    /// reference orientation is induced rather than chosen.
    pub fn build_with_refs(
        alpha: Vec<usize>,
        sigma: Vec<usize>,
        edge_ref: Vec<Dart>,
    ) -> Result<SurfaceMap, MapError> {
        let nd = alpha.len();
        if nd % 2 != 0 {
            return Err(MapError::OddDartCount);
        }
        if sigma.len() != nd {
            return Err(MapError::NotPermutation);
        }
        if !is_permutation(&alpha) || !is_permutation(&sigma) {
            return Err(MapError::NotPermutation);
        }
        for d in 0..nd {
            if alpha[alpha[d]] != d {
                return Err(MapError::NotInvolution);
            }
            if alpha[d] == d {
                return Err(MapError::FixedPointEdge);
            }
        }

        let mut sigma_inv = vec![0; nd];
        for d in 0..nd {
            sigma_inv[sigma[d]] = d;
        }

        // Connectivity under <alpha, sigma>.
        if nd > 0 {
            let mut seen = vec![false; nd];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            let mut count = 1;
            while let Some(d) = queue.pop_front() {
                for next in [alpha[d], sigma[d]] {
                    if !seen[next] {
                        seen[next] = true;
                        count += 1;
                        queue.push_back(next);
                    }
                }
            }
            if count != nd {
                return Err(MapError::Disconnected);
            }
        }

        let (dart_vertex, vertex_rep) = orbits(&sigma);
        let (dart_edge, edge_rep) = orbits(&alpha);
        if edge_ref.len() != edge_rep.len() {
            return Err(MapError::NotPermutation);
        }
        for (e, &r) in edge_ref.iter().enumerate() {
            if r.0 >= nd || dart_edge[r.0] != e {
                return Err(MapError::NotPermutation);
            }
        }
        // phi(d) = sigma^-1(alpha(d)): face on the left, walked ccw.
        let phi: Vec<usize> = (0..nd).map(|d| sigma_inv[alpha[d]]).collect();
        let (dart_face, face_rep) = orbits(&phi);

        let n = vertex_rep.len() as i64;
        let m = edge_rep.len() as i64;
        let f = face_rep.len() as i64;
        let chi = n - m + f;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return Err(MapError::NegativeGenus);
        }
        let genus = ((2 - chi) / 2) as usize;

        Ok(SurfaceMap {
            alpha,
            sigma,
            sigma_inv,
            dart_vertex,
            dart_edge,
            dart_face,
            edge_ref,
            vertex_rep,
            face_rep,
            genus,
        })
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_rep.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ref.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_rep.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        Dart(self.alpha[d.0])
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        Dart(self.sigma[d.0])
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        Dart(self.sigma_inv[d.0])
    }

    /// Facial successor: next dart counterclockwise around the face on the
    /// left of `d`.
    pub fn phi(&self, d: Dart) -> Dart {
        Dart(self.sigma_inv[self.alpha[d.0]])
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d.0]
    }

    /// Head of the dart: the vertex its arrow points to.
    pub fn head_of(&self, d: Dart) -> usize {
        self.dart_vertex[self.alpha[d.0]]
    }

    pub fn edge_of(&self, d: Dart) -> usize {
        self.dart_edge[d.0]
    }

    /// Face on the left of `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.0]
    }

    /// Face on the right of `d`.
    pub fn face_right_of(&self, d: Dart) -> usize {
        self.dart_face[self.alpha[d.0]]
    }

    pub fn edge_ref(&self, e: usize) -> Dart {
        self.edge_ref[e]
    }

    /// +1 if `d` is the reference dart of its edge, -1 otherwise.
    pub fn dart_sign(&self, d: Dart) -> i64 {
        if self.edge_ref[self.dart_edge[d.0]] == d {
            1
        } else {
            -1
        }
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let r = self.edge_ref[e];
        self.vertex_of(r) == self.head_of(r)
    }

    pub fn vertex_rep(&self, v: usize) -> Dart {
        self.vertex_rep[v]
    }

    pub fn face_rep(&self, f: usize) -> Dart {
        self.face_rep[f]
    }

    /// Darts of the rotation at `v`, counterclockwise, starting at the
    /// representative dart.
    pub fn rotation(&self, v: usize) -> Vec<Dart> {
        let start = self.vertex_rep[v];
        let mut out = Vec::new();
        let mut d = start;
        loop {
            out.push(d);
            d = self.sigma(d);
            if d == start {
                break;
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation(v).len()
    }

    /// Counterclockwise facial walk of face `f`.
    pub fn facial_walk(&self, f: usize) -> Walk {
        let start = self.face_rep[f];
        let mut darts = Vec::new();
        let mut d = start;
        loop {
            darts.push(d);
            d = self.phi(d);
            if d == start {
                break;
            }
        }
        Walk::closed(darts)
    }

    /// All counterclockwise facial walks; every dart appears in exactly one.
    pub fn faces(&self) -> Vec<Walk> {
        (0..self.face_count()).map(|f| self.facial_walk(f)).collect()
    }

    pub fn face_degree(&self, f: usize) -> usize {
        self.facial_walk(f).len()
    }

    pub fn is_triangulation(&self) -> bool {
        (0..self.face_count()).all(|f| self.face_degree(f) == 3)
    }

    /// Dual map on the same dart set: the rotation at a dual vertex (a face
    /// of this map) is the facial successor, and the dual of an edge is
    /// directed from the face right of the reference dart to the face on its
    /// left (reference dart `alpha(edge_ref)`).
    pub fn dual(&self) -> SurfaceMap {
        let nd = self.dart_count();
        let sigma_star: Vec<usize> = (0..nd).map(|d| self.phi(Dart(d)).0).collect();
        let refs: Vec<Dart> = self.edge_ref.iter().map(|&r| self.alpha(r)).collect();
        SurfaceMap::build_with_refs(self.alpha.clone(), sigma_star, refs)
            .expect("dual of a valid map is valid")
    }

    /// Checks that consecutive darts chain head to tail (and, for closed
    /// walks, that the walk returns to its start).
    pub fn is_walk(&self, w: &Walk) -> bool {
        if w.darts.is_empty() {
            return true;
        }
        for pair in w.darts.windows(2) {
            if self.head_of(pair[0]) != self.vertex_of(pair[1]) {
                return false;
            }
        }
        !w.closed || self.head_of(*w.darts.last().unwrap()) == self.vertex_of(w.darts[0])
    }

    /// Closed walk visiting each of its vertices once.
    pub fn is_cycle(&self, w: &Walk) -> bool {
        if !w.closed || w.darts.is_empty() || !self.is_walk(w) {
            return false;
        }
        let mut seen = Vec::with_capacity(w.len());
        for &d in &w.darts {
            let v = self.vertex_of(d);
            if seen.contains(&v) {
                return false;
            }
            seen.push(v);
        }
        true
    }

    /// Flags every loop and every pair of parallel edges forming a
    /// contractible cycle. A cycle of length one or two is contractible
    /// exactly when its flow is 0-homologous and one of its two sides is a
    /// disk (Euler characteristic 1 after cutting).
    pub fn validate_assumptions(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in 0..self.edge_count() {
            if self.is_loop(e) && self.short_cycle_is_contractible(&Walk::closed(vec![self.edge_ref(e)])) {
                out.push(Violation::ContractibleLoop { edge: e });
            }
        }
        for ea in 0..self.edge_count() {
            if self.is_loop(ea) {
                continue;
            }
            let ra = self.edge_ref(ea);
            let (ta, ha) = (self.vertex_of(ra), self.head_of(ra));
            for eb in ea + 1..self.edge_count() {
                if self.is_loop(eb) {
                    continue;
                }
                let rb = self.edge_ref(eb);
                let (tb, hb) = (self.vertex_of(rb), self.head_of(rb));
                if (ta, ha) == (tb, hb) || (ta, ha) == (hb, tb) {
                    // Traverse ea forward and eb back from ha to ta.
                    let second = if (ta, ha) == (tb, hb) { self.alpha(rb) } else { rb };
                    let cycle = Walk::closed(vec![ra, second]);
                    if self.short_cycle_is_contractible(&cycle) {
                        out.push(Violation::ContractibleParallelPair { edge_a: ea, edge_b: eb });
                    }
                }
            }
        }
        out
    }

    fn short_cycle_is_contractible(&self, cycle: &Walk) -> bool {
        use crate::homology::{characteristic_flow, face_potential};
        let flow = characteristic_flow(self, cycle);
        let Ok(pot) = face_potential(self, &flow, 0) else {
            return false; // nonzero homology class
        };
        // The potential of a simple separating cycle takes exactly two
        // values; each value class is one side.
        let hi = pot.lambda.iter().copied().max().unwrap();
        let side: Vec<usize> = (0..self.face_count()).filter(|&f| pot.lambda[f] == hi).collect();
        let other: Vec<usize> = (0..self.face_count()).filter(|&f| pot.lambda[f] != hi).collect();
        self.side_euler_characteristic(&side) == 1 || self.side_euler_characteristic(&other) == 1
    }

    /// Euler characteristic of the closed region formed by a set of faces
    /// together with every incident edge and vertex.
    fn side_euler_characteristic(&self, faces: &[usize]) -> i64 {
        let mut in_side = vec![false; self.face_count()];
        for &f in faces {
            in_side[f] = true;
        }
        let mut edge_seen = vec![false; self.edge_count()];
        let mut vertex_seen = vec![false; self.vertex_count()];
        for d in 0..self.dart_count() {
            if in_side[self.dart_face[d]] {
                edge_seen[self.dart_edge[d]] = true;
                vertex_seen[self.dart_vertex[d]] = true;
                vertex_seen[self.dart_vertex[self.alpha[d]]] = true;
            }
        }
        let e = edge_seen.iter().filter(|&&b| b).count() as i64;
        let v = vertex_seen.iter().filter(|&&b| b).count() as i64;
        faces.len() as i64 - e + v
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Orbit labels (by scan order of the lowest dart) and orbit representatives.
fn orbits(perm: &[usize]) -> (Vec<usize>, Vec<Dart>) {
    let mut label = vec![usize::MAX; perm.len()];
    let mut reps = Vec::new();
    for start in 0..perm.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(Dart(start));
        let mut d = start;
        while label[d] == usize::MAX {
            label[d] = id;
            d = perm[d];
        }
    }
    (label, reps)
}

fn default_edge_refs(alpha: &[usize]) -> Result<Vec<Dart>, MapError> {
    if alpha.len() % 2 != 0 {
        return Err(MapError::OddDartCount);
    }
    let mut refs = Vec::new();
    let mut seen = vec![false; alpha.len()];
    for d in 0..alpha.len() {
        if seen[d] {
            continue;
        }
        let a = *alpha.get(d).ok_or(MapError::NotPermutation)?;
        if a >= alpha.len() {
            return Err(MapError::NotPermutation);
        }
        seen[d] = true;
        seen[a] = true;
        refs.push(Dart(d));
    }
    Ok(refs)
}

/// One direction per edge of a map. `forward[e]` means the edge is directed
/// along its reference dart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn all_forward(map: &SurfaceMap) -> Orientation {
        Orientation { forward: vec![true; map.edge_count()] }
    }

    /// Directs every edge along the given tail-side darts (one per edge).
    pub fn from_tail_darts(map: &SurfaceMap, darts: &[Dart]) -> Option<Orientation> {
        let mut forward = vec![None; map.edge_count()];
        for &d in darts {
            if d.0 >= map.dart_count() {
                return None;
            }
            let e = map.edge_of(d);
            if forward[e].is_some() {
                return None;
            }
            forward[e] = Some(map.edge_ref(e) == d);
        }
        forward.into_iter().collect::<Option<Vec<_>>>().map(|forward| Orientation { forward })
    }

    pub fn from_forward(forward: Vec<bool>) -> Orientation {
        Orientation { forward }
    }

    pub fn edge_count(&self) -> usize {
        self.forward.len()
    }

    pub fn is_forward(&self, e: usize) -> bool {
        self.forward[e]
    }

    /// The dart whose origin is the edge's tail (the arrow points along it).
    pub fn tail_dart(&self, map: &SurfaceMap, e: usize) -> Dart {
        let r = map.edge_ref(e);
        if self.forward[e] {
            r
        } else {
            map.alpha(r)
        }
    }

    /// True if the edge of `d` is directed along `d`.
    pub fn directs_along(&self, map: &SurfaceMap, d: Dart) -> bool {
        self.tail_dart(map, map.edge_of(d)) == d
    }

    pub fn outdegree(&self, map: &SurfaceMap, v: usize) -> usize {
        map.rotation(v).into_iter().filter(|&d| self.directs_along(map, d)).count()
    }

    pub fn outdegrees(&self, map: &SurfaceMap) -> Vec<usize> {
        (0..map.vertex_count()).map(|v| self.outdegree(map, v)).collect()
    }

    pub fn reverse_edge(&mut self, e: usize) {
        self.forward[e] = !self.forward[e];
    }

    pub fn reversed_edges(&self, edges: impl IntoIterator<Item = usize>) -> Orientation {
        let mut out = self.clone();
        for e in edges {
            out.reverse_edge(e);
        }
        out
    }

    /// Direction of edge `e` as a sign relative to the reference dart.
    pub fn sign(&self, e: usize) -> i64 {
        if self.forward[e] {
            1
        } else {
            -1
        }
    }
}
