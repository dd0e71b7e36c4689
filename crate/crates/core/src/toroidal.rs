//! Toroidal triangulations: 3-orientations, middle walks and middle cycles,
//! the reorientation loop that produces a Schnyder wood, and the crossing
//! classification of woods.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::completion::{complete, AngleLabeling, ColoredWood, EdgeType};
use crate::homology::{characteristic_flow, face_potential, homology_coordinates, tree_cotree_basis, CycleBasis};
use crate::map::{Dart, Orientation, SurfaceMap, Walk};
use crate::oracle::{enumerate_alpha_orientations, EnumerationBudget};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToroidalError {
    /// The map is not a toroidal triangulation.
    NotToroidalTriangulation,
    /// No orientation with the prescribed outdegrees exists.
    NoOrientation,
    /// The cycle does not bound a disk.
    NotContractible,
    /// The reorientation loop and the exhaustive fallback both ran out of
    /// budget.
    IterationBudgetExceeded,
}

impl fmt::Display for ToroidalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToroidalError::NotToroidalTriangulation => write!(f, "map is not a toroidal triangulation"),
            ToroidalError::NoOrientation => write!(f, "no orientation with the prescribed outdegrees"),
            ToroidalError::NotContractible => write!(f, "cycle does not bound a disk"),
            ToroidalError::IterationBudgetExceeded => write!(f, "schnyderize iteration budget exceeded"),
        }
    }
}

impl core::error::Error for ToroidalError {}

/// Orientation with outdegree `alpha(v)` at every vertex, by max-flow
/// between edges and their endpoints.
pub fn alpha_orientation(map: &SurfaceMap, alpha: &[usize]) -> Result<Orientation, ToroidalError> {
    let m = map.edge_count();
    let n = map.vertex_count();
    if alpha.iter().sum::<usize>() != m {
        return Err(ToroidalError::NoOrientation);
    }
    // Node layout: 0 = source, 1..=m edges, m+1..=m+n vertices, m+n+1 sink.
    let source = 0;
    let vx = |v: usize| 1 + m + v;
    let sink = 1 + m + n;
    let mut net = FlowNetwork::new(sink + 1);
    for e in 0..m {
        net.add(source, 1 + e, 1);
        let r = map.edge_ref(e);
        if map.is_loop(e) {
            net.add(1 + e, vx(map.vertex_of(r)), 1);
        } else {
            net.add(1 + e, vx(map.vertex_of(r)), 1);
            net.add(1 + e, vx(map.head_of(r)), 1);
        }
    }
    for v in 0..n {
        net.add(vx(v), sink, alpha[v] as i64);
    }
    if net.max_flow(source, sink) != m as i64 {
        return Err(ToroidalError::NoOrientation);
    }
    let mut forward = vec![true; m];
    for e in 0..m {
        let r = map.edge_ref(e);
        if map.is_loop(e) {
            continue; // direction of a loop does not affect outdegrees
        }
        // The saturated arc out of the edge node names the tail.
        let tail = net.saturated_target(1 + e).expect("saturated edge node");
        forward[e] = tail == vx(map.vertex_of(r));
    }
    Ok(Orientation::from_forward(forward))
}

/// 3-orientation of a toroidal triangulation.
pub fn find_3_orientation(map: &SurfaceMap) -> Result<Orientation, ToroidalError> {
    if map.genus() != 1 || !map.is_triangulation() {
        return Err(ToroidalError::NotToroidalTriangulation);
    }
    alpha_orientation(map, &vec![3; map.vertex_count()])
}

struct FlowNetwork {
    // Arcs stored as (to, cap); reverse arcs interleaved (i ^ 1).
    heads: Vec<usize>,
    caps: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork { heads: Vec::new(), caps: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64) {
        self.adj[from].push(self.heads.len());
        self.heads.push(to);
        self.caps.push(cap);
        self.adj[to].push(self.heads.len());
        self.heads.push(from);
        self.caps.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            // BFS for a shortest augmenting path.
            let mut prev = vec![usize::MAX; self.adj.len()];
            let mut prev_arc = vec![usize::MAX; self.adj.len()];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &a in &self.adj[x] {
                    let y = self.heads[a];
                    if self.caps[a] > 0 && prev[y] == usize::MAX {
                        prev[y] = x;
                        prev_arc[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return total;
            }
            let mut push = i64::MAX;
            let mut x = t;
            while x != s {
                push = push.min(self.caps[prev_arc[x]]);
                x = prev[x];
            }
            let mut x = t;
            while x != s {
                self.caps[prev_arc[x]] -= push;
                self.caps[prev_arc[x] ^ 1] += push;
                x = prev[x];
            }
            total += push;
        }
    }

    /// Target of the saturated unit arc out of `node`, if any.
    fn saturated_target(&self, node: usize) -> Option<usize> {
        self.adj[node]
            .iter()
            .filter(|&&a| a % 2 == 0)
            .find(|&&a| self.caps[a] == 0)
            .map(|&a| self.heads[a])
    }
}

/// Successor of a directed edge in the middle walk: the outgoing edge at
/// its head with exactly one outgoing edge strictly on either side.
pub fn middle_successor(map: &SurfaceMap, o: &Orientation, d: Dart) -> Dart {
    let head = map.head_of(d);
    assert_eq!(o.outdegree(map, head), 3, "middle walks need outdegree exactly three");
    let u = map.alpha(d);
    let mut w = map.sigma(u);
    let mut outs = Vec::with_capacity(3);
    while w != u {
        if o.directs_along(map, w) {
            outs.push(w);
        }
        w = map.sigma(w);
    }
    debug_assert_eq!(outs.len(), 3);
    outs[1]
}

/// A middle walk: the edge sequence, split into the prefix and the terminal
/// middle cycle.
#[derive(Debug, Clone)]
pub struct MiddleWalk {
    pub steps: Vec<Dart>,
    pub cycle_start: usize,
}

impl MiddleWalk {
    /// The part of the walk before it enters its terminal cycle.
    pub fn prefix(&self) -> &[Dart] {
        &self.steps[..self.cycle_start]
    }

    /// The terminal middle cycle.
    pub fn cycle(&self) -> Walk {
        Walk::closed(self.steps[self.cycle_start..].to_vec())
    }
}

/// Follows middle successors from `start` until a directed edge repeats.
pub fn middle_walk(map: &SurfaceMap, o: &Orientation, start: Dart) -> MiddleWalk {
    let mut position = vec![usize::MAX; map.dart_count()];
    let mut steps = Vec::new();
    let mut d = start;
    loop {
        if position[d.0] != usize::MAX {
            let cycle_start = position[d.0];
            let walk = MiddleWalk { steps, cycle_start };
            debug_assert!(map.is_cycle(&walk.cycle()), "terminal part must be a middle cycle");
            return walk;
        }
        position[d.0] = steps.len();
        steps.push(d);
        d = middle_successor(map, o, d);
    }
}

/// All middle cycles of a 3-orientation (the cycles of the middle-successor
/// functional graph), ordered by smallest dart.
pub fn middle_cycles(map: &SurfaceMap, o: &Orientation) -> Vec<Walk> {
    let mut cycles: Vec<Walk> = Vec::new();
    let mut on_known_cycle = vec![false; map.dart_count()];
    for e in 0..map.edge_count() {
        let start = o.tail_dart(map, e);
        if on_known_cycle[start.0] {
            continue;
        }
        let walk = middle_walk(map, o, start);
        let cycle = walk.cycle();
        if !on_known_cycle[cycle.darts[0].0] {
            for &d in &cycle.darts {
                on_known_cycle[d.0] = true;
            }
            cycles.push(cycle);
        }
    }
    // Canonical rotation and order for reproducibility.
    let mut cycles: Vec<Walk> = cycles
        .into_iter()
        .map(|c| {
            let k = c.darts.iter().enumerate().min_by_key(|(_, d)| **d).unwrap().0;
            let mut darts = c.darts[k..].to_vec();
            darts.extend_from_slice(&c.darts[..k]);
            Walk::closed(darts)
        })
        .collect();
    cycles.sort_by_key(|c| c.darts[0]);
    cycles
}

/// Whether two cycles have equal or opposite homology classes.
pub fn weakly_homologous(map: &SurfaceMap, basis: &CycleBasis, c1: &Walk, c2: &Walk) -> bool {
    let mu1 = homology_coordinates(map, &characteristic_flow(map, c1), basis).expect("cycles are circulations");
    let mu2 = homology_coordinates(map, &characteristic_flow(map, c2), basis).expect("cycles are circulations");
    mu1 == mu2 || mu1.iter().zip(&mu2).all(|(a, b)| *a == -*b)
}

/// Number of edges leaving a contractible cycle into the disk it bounds.
/// For 3-orientations this is always `k - 3` for a cycle of length `k`.
pub fn disk_cycle_outflow(map: &SurfaceMap, o: &Orientation, cycle: &Walk) -> Result<i64, ToroidalError> {
    if !map.is_cycle(cycle) {
        return Err(ToroidalError::NotContractible);
    }
    let flow = characteristic_flow(map, cycle);
    let Ok(pot) = face_potential(map, &flow, 0) else {
        return Err(ToroidalError::NotContractible);
    };
    let (lo, hi) = pot.range();
    if hi - lo != 1 {
        return Err(ToroidalError::NotContractible);
    }
    let mut side_faces = [Vec::new(), Vec::new()];
    for f in 0..map.face_count() {
        side_faces[(pot.lambda[f] == hi) as usize].push(f);
    }
    let disk = side_faces
        .iter()
        .find(|faces| side_euler(map, faces) == 1)
        .ok_or(ToroidalError::NotContractible)?;
    let mut in_disk = vec![false; map.face_count()];
    for &f in disk {
        in_disk[f] = true;
    }
    // Interior side of the cycle: where the left faces of its darts lie.
    let interior_left = in_disk[map.face_of(cycle.darts[0])];
    debug_assert!(cycle.darts.iter().all(|&d| in_disk[map.face_of(d)] == interior_left));

    let k = cycle.len();
    let mut count = 0i64;
    for i in 0..k {
        let s = cycle.darts[i];
        let t = cycle.darts[(i + k - 1) % k];
        let u = map.alpha(t);
        // Darts strictly on the interior side of the cycle at this vertex.
        let (from, until) = if interior_left { (s, u) } else { (u, s) };
        let mut w = map.sigma(from);
        while w != until {
            if o.directs_along(map, w) {
                count += 1;
            }
            w = map.sigma(w);
        }
    }
    Ok(count)
}

fn side_euler(map: &SurfaceMap, faces: &[usize]) -> i64 {
    let mut in_side = vec![false; map.face_count()];
    for &f in faces {
        in_side[f] = true;
    }
    let mut edge_seen = vec![false; map.edge_count()];
    let mut vertex_seen = vec![false; map.vertex_count()];
    for d in map.darts() {
        if in_side[map.face_of(d)] {
            edge_seen[map.edge_of(d)] = true;
            vertex_seen[map.vertex_of(d)] = true;
            vertex_seen[map.head_of(d)] = true;
        }
    }
    faces.len() as i64 - edge_seen.iter().filter(|&&b| b).count() as i64
        + vertex_seen.iter().filter(|&&b| b).count() as i64
}

/// Result of the Schnyder wood construction.
#[derive(Debug, Clone)]
pub struct Schnyderization {
    /// The 3-orientation of the base map.
    pub orientation: Orientation,
    /// Its lift to the completion.
    pub completion_orientation: Orientation,
    pub labeling: AngleLabeling,
    pub wood: ColoredWood,
    /// Two middle cycles that are not weakly homologous.
    pub certificate: (Walk, Walk),
    /// Reversal steps performed.
    pub iterations: usize,
    pub used_fallback: bool,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Two middle cycles of `o` that are not weakly homologous, if any.
fn certificate(map: &SurfaceMap, basis: &CycleBasis, cycles: &[Walk]) -> Option<(Walk, Walk)> {
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !weakly_homologous(map, basis, &cycles[i], &cycles[j]) {
                return Some((cycles[i].clone(), cycles[j].clone()));
            }
        }
    }
    None
}

/// Builds a Schnyder wood of a toroidal triangulation: start from any
/// 3-orientation; while all middle cycles are weakly homologous, reverse the
/// terminal cycle of a longest-prefix middle walk leaving a middle cycle,
/// then read the wood off the completion.
///
/// The reversal loop is budgeted (the argument is a step count; `0` means
/// `10 * m`); on exhaustion an exhaustive search over 3-orientations runs
/// within the given enumeration budget.
pub fn schnyderize(
    map: &SurfaceMap,
    seed: u64,
    step_budget: usize,
    enum_budget: EnumerationBudget,
) -> Result<Schnyderization, ToroidalError> {
    if map.genus() != 1 || !map.is_triangulation() {
        return Err(ToroidalError::NotToroidalTriangulation);
    }
    let start = find_3_orientation(map)?;
    schnyderize_from(map, &start, seed, step_budget, enum_budget)
}

/// As [`schnyderize`], starting from a given 3-orientation.
pub fn schnyderize_from(
    map: &SurfaceMap,
    start: &Orientation,
    seed: u64,
    step_budget: usize,
    enum_budget: EnumerationBudget,
) -> Result<Schnyderization, ToroidalError> {
    if map.genus() != 1 || !map.is_triangulation() {
        return Err(ToroidalError::NotToroidalTriangulation);
    }
    let basis = tree_cotree_basis(map);
    let budget = if step_budget == 0 { 10 * map.edge_count() } else { step_budget };
    let mut rng = seed ^ 0x5eed;
    let mut o = start.clone();
    let mut iterations = 0;
    let mut used_fallback = false;
    let mut done = loop {
        let cycles = middle_cycles(map, &o);
        if let Some(cert) = certificate(map, &basis, &cycles) {
            break Some((o.clone(), cert));
        }
        if iterations >= budget {
            break None;
        }
        iterations += 1;
        // Every middle walk leaving a middle cycle (its start edge may lie
        // on another middle cycle); keep those with the longest prefix.
        let mut best: Vec<MiddleWalk> = Vec::new();
        for c in &cycles {
            let mut on_this = vec![false; map.dart_count()];
            for &d in &c.darts {
                on_this[d.0] = true;
                on_this[map.alpha(d).0] = true;
            }
            for &d in &c.darts {
                let v = map.vertex_of(d);
                for w in map.rotation(v) {
                    if on_this[w.0] || !o.directs_along(map, w) {
                        continue;
                    }
                    let walk = middle_walk(map, &o, w);
                    match best.first() {
                        Some(b) if b.prefix().len() > walk.prefix().len() => {}
                        Some(b) if b.prefix().len() < walk.prefix().len() => best = vec![walk],
                        _ => best.push(walk),
                    }
                }
            }
        }
        assert!(!best.is_empty(), "every middle-cycle vertex has leaving out-edges");
        let pick = (splitmix64(&mut rng) % best.len() as u64) as usize;
        let terminal = best[pick].cycle();
        let edges: Vec<usize> = terminal.darts.iter().map(|&d| map.edge_of(d)).collect();
        o = o.reversed_edges(edges);
    };
    if done.is_none() {
        // Exhaustive fallback at desk scale.
        used_fallback = true;
        let all = enumerate_alpha_orientations(map, &vec![3; map.vertex_count()], enum_budget)
            .map_err(|_| ToroidalError::IterationBudgetExceeded)?;
        for cand in all {
            let cycles = middle_cycles(map, &cand);
            if let Some(cert) = certificate(map, &basis, &cycles) {
                done = Some((cand, cert));
                break;
            }
        }
    }
    let (o, cert) = done.ok_or(ToroidalError::IterationBudgetExceeded)?;
    let completion = complete(map);
    let lifted = completion.lift_orientation(&o);
    let labeling = completion.extract_labeling(&lifted, 0, 0).expect("certified orientation is Schnyder");
    let wood = crate::completion::to_colored_wood(&completion, &labeling).expect("triangulation wood");
    Ok(Schnyderization {
        orientation: o,
        completion_orientation: lifted,
        labeling,
        wood,
        certificate: cert,
        iterations,
        used_fallback,
    })
}

/// Directed monochromatic cycles of each color: the color classes of a
/// triangulation wood are functional graphs (one outgoing edge per vertex
/// and color), so each class decomposes into cycles with trees hanging off.
pub fn monochromatic_cycles(map: &SurfaceMap, wood: &ColoredWood) -> [Vec<Walk>; 3] {
    let mut out: [Vec<Walk>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for color in 0u8..3 {
        // successor dart of each vertex in this color
        let mut succ = vec![None::<Dart>; map.vertex_count()];
        for v in 0..map.vertex_count() {
            for d in map.rotation(v) {
                let e = map.edge_of(d);
                let along = match wood.edges[e] {
                    EdgeType::Type1 { color: c, tail_dart } => (tail_dart == d && c == color).then_some(d),
                    EdgeType::Type2 { color_ref, color_alpha } => {
                        let c = if map.edge_ref(e) == d { color_ref } else { color_alpha };
                        (c == color).then_some(d)
                    }
                    EdgeType::Type0 { .. } => None,
                };
                if let Some(d) = along {
                    assert!(succ[v].is_none(), "color class must be functional");
                    succ[v] = Some(d);
                }
            }
        }
        let succ: Vec<Dart> = succ.into_iter().map(|s| s.expect("one outgoing edge per color")).collect();
        // Cycles of the functional graph on vertices.
        let mut state = vec![0u8; map.vertex_count()]; // 0 new, 1 active, 2 done
        for start in 0..map.vertex_count() {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = map.head_of(succ[v]);
            }
            if state[v] == 1 {
                let k = path.iter().position(|&x| x == v).unwrap();
                let darts: Vec<Dart> = path[k..].iter().map(|&x| succ[x]).collect();
                out[color as usize].push(Walk::closed(darts));
            }
            for &x in &path {
                state[x] = 2;
            }
        }
    }
    for cycles in out.iter_mut() {
        cycles.sort_by_key(crate::oracle::walk_key);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingClass {
    NotHalfCrossing,
    /// Some pair of distinct colors has intersecting monochromatic cycles,
    /// but not all pairs do.
    HalfCrossing,
    /// Every pair of distinct colors has intersecting monochromatic cycles.
    Crossing,
}

impl fmt::Display for CrossingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingClass::NotHalfCrossing => write!(f, "not_half_crossing"),
            CrossingClass::HalfCrossing => write!(f, "half_crossing"),
            CrossingClass::Crossing => write!(f, "crossing"),
        }
    }
}

/// Classifies a wood by which pairs of colors have intersecting
/// monochromatic cycles (intersection = sharing a vertex).
pub fn crossing_class(map: &SurfaceMap, wood: &ColoredWood) -> CrossingClass {
    let cycles = monochromatic_cycles(map, wood);
    let vertices = |w: &Walk| -> Vec<usize> {
        let mut vs: Vec<usize> = w.darts.iter().map(|&d| map.vertex_of(d)).collect();
        vs.sort_unstable();
        vs
    };
    let mut pairs = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            let hit = cycles[i].iter().any(|ci| {
                let vi = vertices(ci);
                cycles[j].iter().any(|cj| vertices(cj).iter().any(|v| vi.binary_search(v).is_ok()))
            });
            pairs += hit as u32;
        }
    }
    match pairs {
        3 => CrossingClass::Crossing,
        0 => CrossingClass::NotHalfCrossing,
        _ => CrossingClass::HalfCrossing,
    }
}
