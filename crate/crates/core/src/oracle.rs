//! Brute-force ground truth for small instances. Everything here
//! deliberately avoids the fast paths: Schnyder checking goes through
//! exhaustive delta counting over dual walks, partitionability through an
//! explicit three-coloring search, and lattice node sets through orientation
//! enumeration. Agreement between the two code paths is the evidence the
//! test suite leans on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::completion::Completion;
use crate::homology::{face_potential, tree_cotree_basis, DualData, Flow};
use crate::map::{Dart, Orientation, SurfaceMap, Walk};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_orientations: u64,
    pub max_edges: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_orientations: 4_000_000, max_edges: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { what: &'static str },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { what } => write!(f, "enumeration budget exceeded ({what})"),
        }
    }
}

impl core::error::Error for OracleError {}

/// All orientations with outdegree exactly `alpha(v)` at every vertex, by
/// backtracking over edges in id order.
pub fn enumerate_alpha_orientations(
    map: &SurfaceMap,
    alpha: &[usize],
    budget: EnumerationBudget,
) -> Result<Vec<Orientation>, OracleError> {
    assert_eq!(alpha.len(), map.vertex_count());
    if map.edge_count() > budget.max_edges {
        return Err(OracleError::BudgetExceeded { what: "alpha-orientations: too many edges" });
    }
    let m = map.edge_count();
    // Feasibility bookkeeping: per vertex, outdegree so far and the number
    // of undecided incident edges that could still contribute an out-edge.
    let mut out = vec![0usize; map.vertex_count()];
    let mut slack = vec![0usize; map.vertex_count()];
    for e in 0..m {
        let r = map.edge_ref(e);
        if map.is_loop(e) {
            // A loop contributes exactly one out-edge whichever way.
            out[map.vertex_of(r)] += 1;
        } else {
            slack[map.vertex_of(r)] += 1;
            slack[map.head_of(r)] += 1;
        }
    }
    let mut found = Vec::new();
    let mut forward = vec![true; m];
    let mut visited: u64 = 0;
    fn feasible(out: usize, slack: usize, target: usize) -> bool {
        out <= target && out + slack >= target
    }
    fn rec(
        map: &SurfaceMap,
        alpha: &[usize],
        e: usize,
        out: &mut [usize],
        slack: &mut [usize],
        forward: &mut [bool],
        found: &mut Vec<Orientation>,
        visited: &mut u64,
        budget: &EnumerationBudget,
    ) -> Result<(), OracleError> {
        *visited += 1;
        if *visited > budget.max_orientations {
            return Err(OracleError::BudgetExceeded { what: "alpha-orientations" });
        }
        if e == map.edge_count() {
            if out.iter().zip(alpha).all(|(o, a)| o == a) {
                found.push(Orientation::from_forward(forward.to_vec()));
            }
            return Ok(());
        }
        let r = map.edge_ref(e);
        if map.is_loop(e) {
            // Outdegrees ignore loop direction, but homology does not:
            // enumerate both.
            for fwd in [true, false] {
                forward[e] = fwd;
                rec(map, alpha, e + 1, out, slack, forward, found, visited, budget)?;
            }
            return Ok(());
        }
        let (u, w) = (map.vertex_of(r), map.head_of(r));
        slack[u] -= 1;
        slack[w] -= 1;
        for (fwd, tail) in [(true, u), (false, w)] {
            out[tail] += 1;
            if feasible(out[u], slack[u], alpha[u]) && feasible(out[w], slack[w], alpha[w]) {
                forward[e] = fwd;
                rec(map, alpha, e + 1, out, slack, forward, found, visited, budget)?;
            }
            out[tail] -= 1;
        }
        slack[u] += 1;
        slack[w] += 1;
        Ok(())
    }
    rec(map, alpha, 0, &mut out, &mut slack, &mut forward, &mut found, &mut visited, &budget)?;
    Ok(found)
}

/// Every orientation of the map (2^m of them), within budget.
pub fn for_each_orientation(
    map: &SurfaceMap,
    budget: EnumerationBudget,
    mut visit: impl FnMut(&Orientation),
) -> Result<(), OracleError> {
    let m = map.edge_count();
    if m >= 63 || (1u64 << m) > budget.max_orientations {
        return Err(OracleError::BudgetExceeded { what: "all orientations" });
    }
    for bits in 0..1u64 << m {
        let forward: Vec<bool> = (0..m).map(|e| bits >> e & 1 == 1).collect();
        visit(&Orientation::from_forward(forward));
    }
    Ok(())
}

/// Every mod-3 orientation of a completion, enumerated edge-vertex by
/// edge-vertex (five local patterns each: outdegree four or one) with
/// congruence pruning at primal and dual vertices.
pub fn for_each_mod3_orientation(
    completion: &Completion,
    budget: EnumerationBudget,
    mut visit: impl FnMut(&Orientation),
) -> Result<(), OracleError> {
    let base = completion.base();
    let hat = completion.map();
    if base.edge_count() > budget.max_edges {
        return Err(OracleError::BudgetExceeded { what: "mod3 orientations: too many edges" });
    }
    // The four completion edges around the edge-vertex of base edge e, each
    // with the non-edge-vertex endpoint.
    let mut groups = Vec::with_capacity(base.edge_count());
    for e in 0..base.edge_count() {
        let r = base.edge_ref(e);
        let quad = [
            completion.vertex_half(r),
            completion.face_half(r),
            completion.vertex_half(base.alpha(r)),
            completion.face_half(base.alpha(r)),
        ];
        let ends: Vec<(usize, usize)> =
            quad.iter().map(|&x| (hat.edge_of(x), hat.vertex_of(x))).collect();
        groups.push(ends);
    }
    // Remaining undecided completion edges per primal/dual vertex.
    let mut remaining = vec![0usize; hat.vertex_count()];
    for g in &groups {
        for &(_, v) in g {
            remaining[v] += 1;
        }
    }
    let mut outdeg = vec![0usize; hat.vertex_count()];
    let mut forward = vec![false; hat.edge_count()];
    let mut visited: u64 = 0;

    // Local patterns: which of the four edges point into the edge-vertex.
    const PATTERNS: [[bool; 4]; 5] = [
        [false, false, false, false],
        [true, true, true, false],
        [true, true, false, true],
        [true, false, true, true],
        [false, true, true, true],
    ];

    fn rec(
        groups: &[Vec<(usize, usize)>],
        i: usize,
        remaining: &mut [usize],
        outdeg: &mut [usize],
        forward: &mut [bool],
        visited: &mut u64,
        budget: &EnumerationBudget,
        visit: &mut impl FnMut(&Orientation),
    ) -> Result<(), OracleError> {
        *visited += 1;
        if *visited > budget.max_orientations {
            return Err(OracleError::BudgetExceeded { what: "mod3 orientations" });
        }
        if i == groups.len() {
            visit(&Orientation::from_forward(forward.to_vec()));
            return Ok(());
        }
        let group = &groups[i];
        for pattern in PATTERNS {
            let mut ok = true;
            for (k, &(_, v)) in group.iter().enumerate() {
                remaining[v] -= 1;
                if pattern[k] {
                    outdeg[v] += 1;
                }
            }
            for &(_, v) in group {
                // Reachable congruence: some k in [0, remaining] must give
                // outdeg + k divisible by three.
                let need = (3 - outdeg[v] % 3) % 3;
                if remaining[v] < need {
                    ok = false;
                }
            }
            if ok {
                for (k, &(e, _)) in group.iter().enumerate() {
                    forward[e] = pattern[k];
                }
                rec(groups, i + 1, remaining, outdeg, forward, visited, budget, visit)?;
            }
            for (k, &(_, v)) in group.iter().enumerate() {
                remaining[v] += 1;
                if pattern[k] {
                    outdeg[v] -= 1;
                }
            }
        }
        Ok(())
    }
    rec(&groups, 0, &mut remaining, &mut outdeg, &mut forward, &mut visited, &budget, &mut visit)
}

/// Exhaustive Schnyder test: delta must vanish mod 3 on every closed walk of
/// the dual of the completion; facial walks plus a homology basis generate
/// them all. The delta of one walk is counted crossing by crossing.
pub fn schnyder_check_exhaustive(completion: &Completion, o: &Orientation) -> bool {
    let hat = completion.map();
    let hat_dual = hat.dual();
    let mut walks: Vec<Walk> = (0..hat_dual.face_count()).map(|f| hat_dual.facial_walk(f)).collect();
    walks.extend(tree_cotree_basis(&hat_dual).cycles);
    walks.iter().all(|w| delta_by_counting(completion, o, w) % 3 == 0)
}

/// delta of a dual walk, by direct counting: an out-edge directed along
/// dart `y` crosses a step that traverses dual dart `alpha(y)` from the
/// walk's left to its right, and a step traversing `y` the other way.
fn delta_by_counting(completion: &Completion, o: &Orientation, dual_walk: &Walk) -> i64 {
    let hat = completion.map();
    let mut total = 0i64;
    for &x in &dual_walk.darts {
        let e = hat.edge_of(x);
        let tail = o.tail_dart(hat, e);
        let into_edge_vertex = matches!(
            completion.role(hat.head_of(tail)),
            crate::completion::VertexRole::EdgeOf(_)
        );
        if into_edge_vertex {
            total += if x == tail { -1 } else { 1 };
        }
    }
    total
}

/// Exhaustive partition of an oriented subgraph into three pairwise
/// homologous classes, or `None`. The subgraph is given as its set of edges
/// together with the orientation providing their directions.
pub fn partition_search(
    map: &SurfaceMap,
    o: &Orientation,
    edges: &[usize],
    budget: EnumerationBudget,
) -> Result<Option<[Vec<usize>; 3]>, OracleError> {
    if edges.len() > 15 {
        return Err(OracleError::BudgetExceeded { what: "partition search: support too large" });
    }
    let dual_data = DualData::new(map);
    // Homology signature of each candidate edge: its pairing against the
    // dual facial flows and a dual homology basis. Classes are homologous
    // iff their signature sums agree.
    let gens: Vec<&Flow> = dual_data.dual_face_flows.iter().chain(&dual_data.dual_basis_flows).collect();
    let sig: Vec<Vec<i64>> = edges
        .iter()
        .map(|&e| {
            let mut unit = Flow::zero(map.edge_count());
            unit.values[e] = o.sign(e);
            gens.iter().map(|g| crate::homology::beta(&unit, g).unwrap()).collect()
        })
        .collect();
    let dim = gens.len();
    let mut sums = [vec![0i64; dim], vec![0i64; dim], vec![0i64; dim]];
    let mut assign = vec![0u8; edges.len()];
    let mut counter: u64 = 0;

    fn rec(
        i: usize,
        n: usize,
        sig: &[Vec<i64>],
        sums: &mut [Vec<i64>; 3],
        assign: &mut [u8],
        counter: &mut u64,
        budget: &EnumerationBudget,
    ) -> Result<bool, OracleError> {
        *counter += 1;
        if *counter > budget.max_orientations {
            return Err(OracleError::BudgetExceeded { what: "partition search" });
        }
        if i == n {
            return Ok(sums[0] == sums[1] && sums[1] == sums[2]);
        }
        // The first edge may be pinned to class 0: classes are unordered.
        let classes = if i == 0 { 1 } else { 3 };
        for c in 0..classes {
            for (s, v) in sums[c].iter_mut().zip(&sig[i]) {
                *s += v;
            }
            assign[i] = c as u8;
            if rec(i + 1, n, sig, sums, assign, counter, budget)? {
                return Ok(true);
            }
            for (s, v) in sums[c].iter_mut().zip(&sig[i]) {
                *s -= v;
            }
        }
        Ok(false)
    }

    if rec(0, edges.len(), &sig, &mut sums, &mut assign, &mut counter, &budget)? {
        let mut classes = [Vec::new(), Vec::new(), Vec::new()];
        for (k, &e) in edges.iter().enumerate() {
            classes[assign[k] as usize].push(e);
        }
        Ok(Some(classes))
    } else {
        Ok(None)
    }
}

/// All orientations homologous to `d0`: same outdegrees and 0-homologous
/// difference, found by alpha-orientation enumeration plus a potential
/// check. Returned in enumeration order (deterministic).
pub fn enumerate_homologous_orientations(
    map: &SurfaceMap,
    d0: &Orientation,
    budget: EnumerationBudget,
) -> Result<Vec<Orientation>, OracleError> {
    let alpha = d0.outdegrees(map);
    let all = enumerate_alpha_orientations(map, &alpha, budget)?;
    Ok(all
        .into_iter()
        .filter(|o| {
            let mut diff = Flow::zero(map.edge_count());
            for e in 0..map.edge_count() {
                if o.is_forward(e) != d0.is_forward(e) {
                    diff.values[e] = d0.sign(e);
                }
            }
            face_potential(map, &diff, 0).is_ok()
        })
        .collect())
}

/// Smallest dart of a walk, for deterministic ordering in reports.
pub fn walk_key(walk: &Walk) -> Dart {
    walk.darts.iter().copied().min().unwrap_or(Dart(usize::MAX))
}
