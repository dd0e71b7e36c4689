//! Integer flows, the beta pairing between a map and its dual, tree-cotree
//! homology bases, homology tests and face potentials.
//!
//! A flow is a vector in `Z^E` relative to the map's reference orientation
//! (the lower dart of each edge for freshly built maps; the induced
//! right-to-left convention for duals, see [`crate::map::SurfaceMap::dual`]).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::map::{Dart, SurfaceMap, Walk};

/// Integer vector indexed by the edges of a map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flow {
    pub values: Vec<i64>,
}

impl Flow {
    pub fn zero(edges: usize) -> Flow {
        Flow { values: vec![0; edges] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Flow) -> Flow {
        assert_eq!(self.len(), other.len());
        Flow { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Flow) -> Flow {
        assert_eq!(self.len(), other.len());
        Flow { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Flow {
        Flow { values: self.values.iter().map(|a| -a).collect() }
    }

    pub fn scaled(&self, k: i64) -> Flow {
        Flow { values: self.values.iter().map(|a| k * a).collect() }
    }

    /// Edges with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(e, _)| e).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    /// Flows indexed by different edge sets.
    DimensionMismatch,
    /// The flow is not homologous to zero; carries a witnessing closed dual
    /// walk with a nonzero pairing.
    NotZeroHomologous { witness: Walk },
    /// The flow has nonzero excess at some vertex.
    NotCirculation { vertex: usize },
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::DimensionMismatch => write!(f, "flows indexed by different edge sets"),
            HomologyError::NotZeroHomologous { .. } => write!(f, "flow is not 0-homologous"),
            HomologyError::NotCirculation { vertex } => write!(f, "nonzero excess at vertex {vertex}"),
        }
    }
}

impl core::error::Error for HomologyError {}

/// Characteristic flow of a walk: per edge, the number of forward traversals
/// minus the number of backward traversals (relative to the reference dart).
pub fn characteristic_flow(map: &SurfaceMap, walk: &Walk) -> Flow {
    let mut flow = Flow::zero(map.edge_count());
    for &d in &walk.darts {
        flow.values[map.edge_of(d)] += map.dart_sign(d);
    }
    flow
}

/// Characteristic flow of an oriented subgraph given as an orientation
/// restricted to an edge set.
pub fn subgraph_flow(map: &SurfaceMap, orientation: &crate::map::Orientation, edges: &[usize]) -> Flow {
    let mut flow = Flow::zero(map.edge_count());
    for &e in edges {
        flow.values[e] = orientation.sign(e);
    }
    flow
}

/// Bilinear pairing `beta(p, d) = sum_e p_e d_{e*}` between a flow on a map
/// and a flow on its dual.
pub fn beta(p: &Flow, d: &Flow) -> Result<i64, HomologyError> {
    if p.len() != d.len() {
        return Err(HomologyError::DimensionMismatch);
    }
    Ok(p.values.iter().zip(&d.values).map(|(a, b)| a * b).sum())
}

/// Net outflow of `z` at `v` (out minus in, under the reference orientation).
pub fn vertex_excess(map: &SurfaceMap, z: &Flow, v: usize) -> i64 {
    map.rotation(v).into_iter().map(|d| map.dart_sign(d) * z.values[map.edge_of(d)]).sum()
}

pub fn is_circulation(map: &SurfaceMap, z: &Flow) -> bool {
    (0..map.vertex_count()).all(|v| vertex_excess(map, z, v) == 0)
}

/// Homology basis of `2g` cycles obtained from a spanning tree of the map
/// and a spanning cotree avoiding it.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    /// The basis cycles, ordered by their defining leftover edge id.
    pub cycles: Vec<Walk>,
    pub tree_edges: Vec<usize>,
    pub cotree_edges: Vec<usize>,
    pub leftover_edges: Vec<usize>,
}

struct SpanningTree {
    /// Per vertex, the dart of the tree edge pointing from its parent to it
    /// (`None` at the root).
    parent_dart: Vec<Option<Dart>>,
    depth: Vec<usize>,
    edges: Vec<usize>,
}

/// BFS spanning tree over a restricted edge set, in rotation order. The
/// "vertices" are the orbits of `sigma` of `map`; for a dual map these are
/// the faces of the primal.
fn spanning_tree(map: &SurfaceMap, allowed: impl Fn(usize) -> bool, root: usize) -> SpanningTree {
    let mut parent_dart = vec![None; map.vertex_count()];
    let mut depth = vec![usize::MAX; map.vertex_count()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([root]);
    depth[root] = 0;
    while let Some(v) = queue.pop_front() {
        for d in map.rotation(v) {
            if !allowed(map.edge_of(d)) {
                continue;
            }
            let w = map.head_of(d);
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent_dart[w] = Some(d);
                edges.push(map.edge_of(d));
                queue.push_back(w);
            }
        }
    }
    SpanningTree { parent_dart, depth, edges }
}

impl SpanningTree {
    /// Tree walk from `u` to `v`, as a dart sequence. `origin` maps a tree
    /// dart to the node it leaves (vertex for primal trees, left face for
    /// trees over faces).
    fn path(
        &self,
        map: &SurfaceMap,
        origin: impl Fn(Dart) -> usize,
        u: usize,
        v: usize,
    ) -> Vec<Dart> {
        let mut up = Vec::new(); // darts walked from u towards the root
        let mut down = Vec::new(); // darts walked from the root towards v
        let (mut x, mut y) = (u, v);
        while self.depth[x] > self.depth[y] {
            let d = self.parent_dart[x].unwrap();
            up.push(map.alpha(d));
            x = origin(d);
        }
        while self.depth[y] > self.depth[x] {
            let d = self.parent_dart[y].unwrap();
            down.push(d);
            y = origin(d);
        }
        while x != y {
            let dx = self.parent_dart[x].unwrap();
            up.push(map.alpha(dx));
            x = origin(dx);
            let dy = self.parent_dart[y].unwrap();
            down.push(dy);
            y = origin(dy);
        }
        down.reverse();
        up.extend(down);
        up
    }
}

/// Tree-cotree homology basis: a spanning tree `T` of the map, a spanning
/// tree of the dual avoiding edges dual to `T`, and one cycle through each
/// of the `2g` leftover edges (closed through `T`), ordered by edge id.
pub fn tree_cotree_basis(map: &SurfaceMap) -> CycleBasis {
    let tree = spanning_tree(map, |_| true, 0);
    let mut in_tree = vec![false; map.edge_count()];
    for &e in &tree.edges {
        in_tree[e] = true;
    }
    let dual = map.dual();
    let cotree = spanning_tree(&dual, |e| !in_tree[e], 0);
    let mut in_cotree = vec![false; map.edge_count()];
    for &e in &cotree.edges {
        in_cotree[e] = true;
    }
    let leftover: Vec<usize> =
        (0..map.edge_count()).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    let cycles = leftover
        .iter()
        .map(|&e| {
            let r = map.edge_ref(e);
            let mut darts = vec![r];
            darts.extend(tree.path(map, |d| map.vertex_of(d), map.head_of(r), map.vertex_of(r)));
            Walk::closed(darts)
        })
        .collect();
    CycleBasis {
        cycles,
        tree_edges: tree.edges,
        cotree_edges: cotree.edges,
        leftover_edges: leftover,
    }
}

/// Integer label per face reproducing a 0-homologous flow as a combination
/// of counterclockwise facial flows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePotential {
    pub lambda: Vec<i64>,
    pub f0: usize,
}

impl FacePotential {
    pub fn range(&self) -> (i64, i64) {
        let lo = self.lambda.iter().copied().min().unwrap_or(0);
        let hi = self.lambda.iter().copied().max().unwrap_or(0);
        (lo, hi)
    }
}

/// Computes `lambda` with `z = sum_F lambda_F phi(F)` and `lambda[f0] = 0`,
/// by breadth-first propagation over the dual, checking consistency on every
/// edge. Fails with a witnessing closed dual walk exactly when `z` is not
/// 0-homologous.
///
/// Across an edge `e`, `z_e = lambda[left(e)] - lambda[right(e)]` (sides
/// relative to the reference dart).
pub fn face_potential(map: &SurfaceMap, z: &Flow, f0: usize) -> Result<FacePotential, HomologyError> {
    assert_eq!(z.len(), map.edge_count());
    let nf = map.face_count();
    let mut lambda = vec![None::<i64>; nf];
    let mut parent_dart = vec![None::<Dart>; nf];
    let mut depth = vec![usize::MAX; nf];
    lambda[f0] = Some(0);
    depth[f0] = 0;
    let mut queue = VecDeque::from([f0]);
    while let Some(face) = queue.pop_front() {
        // Crossing dart d (left face = `face`) into the face on its right:
        // lambda drops by dart_sign(d) * z_e.
        for d in map.facial_walk(face).darts {
            let other = map.face_right_of(d);
            let expect = lambda[face].unwrap() - map.dart_sign(d) * z.values[map.edge_of(d)];
            match lambda[other] {
                None => {
                    lambda[other] = Some(expect);
                    parent_dart[other] = Some(d);
                    depth[other] = depth[face] + 1;
                    queue.push_back(other);
                }
                Some(have) => {
                    if have != expect {
                        // Closed dual walk: cross d, then return through the
                        // BFS tree from `other` to `face`. As dual darts,
                        // dart x runs from face_of(x) to face_right_of(x).
                        let tree = SpanningTree { parent_dart, depth, edges: Vec::new() };
                        let mut darts = vec![d];
                        darts.extend(tree.path(map, |x| map.face_of(x), other, face));
                        return Err(HomologyError::NotZeroHomologous { witness: Walk::closed(darts) });
                    }
                }
            }
        }
    }
    let lambda: Vec<i64> = lambda.into_iter().map(|l| l.expect("connected dual")).collect();
    Ok(FacePotential { lambda, f0 })
}

/// Counterclockwise facial flows of the map, indexed by face id.
pub fn face_flows(map: &SurfaceMap) -> Vec<Flow> {
    map.faces().iter().map(|w| characteristic_flow(map, w)).collect()
}

/// Dual map together with its facial flows and a homology basis, cached for
/// repeated homology tests.
#[derive(Debug, Clone)]
pub struct DualData {
    pub dual: SurfaceMap,
    pub dual_face_flows: Vec<Flow>,
    pub dual_basis: CycleBasis,
    pub dual_basis_flows: Vec<Flow>,
}

impl DualData {
    pub fn new(map: &SurfaceMap) -> DualData {
        let dual = map.dual();
        let dual_face_flows = face_flows(&dual);
        let dual_basis = tree_cotree_basis(&dual);
        let dual_basis_flows =
            dual_basis.cycles.iter().map(|w| characteristic_flow(&dual, w)).collect();
        DualData { dual, dual_face_flows, dual_basis, dual_basis_flows }
    }

    /// True iff `beta(z, W) = 0` for every closed dual walk `W`, i.e. iff
    /// `z` lies in the span of the facial flows.
    pub fn pairs_to_zero(&self, z: &Flow) -> bool {
        self.dual_face_flows.iter().chain(&self.dual_basis_flows).all(|w| beta(z, w).unwrap() == 0)
    }
}

/// Whether `p - q` is a combination of counterclockwise facial flows,
/// decided by pairing against the dual facial walks and a dual homology
/// basis.
pub fn is_homologous(dual_data: &DualData, p: &Flow, q: &Flow) -> bool {
    dual_data.pairs_to_zero(&p.sub(q))
}

/// Coordinates of a circulation over a homology basis: `mu` such that
/// `z - sum_i mu_i phi(B_i)` is 0-homologous.
pub fn homology_coordinates(
    map: &SurfaceMap,
    z: &Flow,
    basis: &CycleBasis,
) -> Result<Vec<i64>, HomologyError> {
    for v in 0..map.vertex_count() {
        if vertex_excess(map, z, v) != 0 {
            return Err(HomologyError::NotCirculation { vertex: v });
        }
    }
    let dual_data = DualData::new(map);
    let k = basis.cycles.len();
    debug_assert_eq!(k, 2 * map.genus());
    let basis_flows: Vec<Flow> = basis.cycles.iter().map(|w| characteristic_flow(map, w)).collect();
    // beta(z - sum mu_i B_i, B*_j) = 0 for all j determines mu: pairing with
    // the dual facial walks vanishes automatically for circulations.
    let mut matrix = vec![vec![0i128; k]; k];
    let mut rhs = vec![0i128; k];
    for (j, w) in dual_data.dual_basis_flows.iter().enumerate() {
        for (i, b) in basis_flows.iter().enumerate() {
            matrix[j][i] = beta(b, w).unwrap() as i128;
        }
        rhs[j] = beta(z, w).unwrap() as i128;
    }
    let mu = solve_integer(matrix, rhs).expect("homology pairing matrix is unimodular");
    Ok(mu.into_iter().map(|x| x as i64).collect())
}

/// Exact integer solve of a small square system by fraction-free
/// elimination. Returns `None` if the system is singular or has no integer
/// solution.
fn solve_integer(mut a: Vec<Vec<i128>>, mut b: Vec<i128>) -> Option<Vec<i64>> {
    let n = b.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut rows: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let pivot_pos = (col..n).find(|&r| a[rows[r]][col] != 0)?;
        rows.swap(col, pivot_pos);
        let p = rows[col];
        for &r in rows.iter().skip(col + 1) {
            if a[r][col] == 0 {
                continue;
            }
            let (num, den) = (a[r][col], a[p][col]);
            for c in 0..n {
                a[r][c] = a[r][c] * den - a[p][c] * num;
            }
            b[r] = b[r] * den - b[p] * num;
        }
    }
    let mut x = vec![0i128; n];
    for col in (0..n).rev() {
        let r = rows[col];
        let mut acc = b[r];
        for c in col + 1..n {
            acc -= a[r][c] * x[c];
        }
        if a[r][col] == 0 || acc % a[r][col] != 0 {
            return None;
        }
        x[col] = acc / a[r][col];
    }
    Some(x.into_iter().map(|v| i64::try_from(v).expect("coordinate fits i64")).collect())
}
