//! The primal-dual completion of a map, orientations of it, and the
//! correspondence with angle labelings and colored woods.
//!
//! For a map `G` the completion embeds `G` and its dual simultaneously,
//! putting a degree-four edge-vertex at each primal/dual crossing. Angle
//! labelings of `G` are face labelings of the completion; Schnyder
//! orientations are the orientations of the completion corresponding to
//! angle labelings in which every edge looks like one of the three local
//! patterns (types 0, 1, 2).
//!
//! Dart layout of the completion: primal dart `w` of `G` spawns four darts,
//!
//! * `4w`   from the vertex of `w` towards the edge-vertex of its edge,
//! * `4w+1` back from the edge-vertex,
//! * `4w+2` from the face left of `w` towards the edge-vertex,
//! * `4w+3` back from the edge-vertex.
//!
//! Every completion edge is referenced by its lower dart, which always
//! points towards the edge-vertex.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::homology::{beta, CycleBasis, Flow};
use crate::map::{Dart, Orientation, SurfaceMap, Walk};

/// Colors are residues mod 3.
pub type Color = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRole {
    /// Copy of a vertex of the base map.
    Primal(usize),
    /// Vertex placed inside a face of the base map.
    DualOf(usize),
    /// Degree-four vertex at the crossing of an edge and its dual.
    EdgeOf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionError {
    NotACycle,
    NotSchnyder,
    NotEdgeLabeling { edges: Vec<usize> },
    MalformedIntervalPattern { around: &'static str, id: usize },
    MonochromaticFace { face: usize },
    SinkVertex { vertex: usize },
    Type0Face { face: usize },
    InconsistentWood { dart: Dart },
}

impl fmt::Display for CompletionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionError::NotACycle => write!(f, "walk is not a simple directed cycle"),
            CompletionError::NotSchnyder => write!(f, "orientation is not a Schnyder orientation"),
            CompletionError::NotEdgeLabeling { edges } => {
                write!(f, "labeling violates the edge pattern at edges {edges:?}")
            }
            CompletionError::MalformedIntervalPattern { around, id } => {
                write!(f, "color intervals malformed around {around} {id}")
            }
            CompletionError::MonochromaticFace { face } => {
                write!(f, "face {face} has a monochromatic boundary")
            }
            CompletionError::SinkVertex { vertex } => write!(f, "vertex {vertex} has type 0"),
            CompletionError::Type0Face { face } => write!(f, "face {face} has type 0"),
            CompletionError::InconsistentWood { dart } => {
                write!(f, "wood assigns conflicting labels at the angle of dart {dart}")
            }
        }
    }
}

impl core::error::Error for CompletionError {}

/// The primal-dual completion of a map, with the correspondences between
/// its vertices and the base map's vertices, faces and edges, and between
/// its faces and the base map's angles.
#[derive(Debug, Clone)]
pub struct Completion {
    base: SurfaceMap,
    map: SurfaceMap,
    roles: Vec<VertexRole>,
    primal_vertex: Vec<usize>,
    dual_vertex: Vec<usize>,
    edge_vertex: Vec<usize>,
    /// Base-map dart identifying the angle of each completion face.
    angle_of_face: Vec<Dart>,
    /// Completion face of each base-map angle (indexed by dart).
    face_of_angle: Vec<usize>,
}

/// Builds the completion of a map.
pub fn complete(base: &SurfaceMap) -> Completion {
    let nd = base.dart_count();
    let mut alpha = vec![0usize; 4 * nd];
    let mut sigma = vec![0usize; 4 * nd];
    for w in 0..nd {
        alpha[4 * w] = 4 * w + 1;
        alpha[4 * w + 1] = 4 * w;
        alpha[4 * w + 2] = 4 * w + 3;
        alpha[4 * w + 3] = 4 * w + 2;
        let d = Dart(w);
        // Rotations: primal vertices inherit sigma, dual vertices follow the
        // facial walk, and the four darts around an edge-vertex interleave
        // the two half-edges with the two half-dual-edges.
        sigma[4 * w] = 4 * base.sigma(d).0;
        sigma[4 * w + 2] = 4 * base.phi(d).0 + 2;
        sigma[4 * w + 1] = 4 * base.alpha(d).0 + 3;
        sigma[4 * w + 3] = 4 * w + 1;
    }
    let map = SurfaceMap::build(alpha, sigma).expect("completion of a valid map is valid");

    let mut roles = vec![VertexRole::Primal(usize::MAX); map.vertex_count()];
    let mut primal_vertex = vec![usize::MAX; base.vertex_count()];
    let mut dual_vertex = vec![usize::MAX; base.face_count()];
    let mut edge_vertex = vec![usize::MAX; base.edge_count()];
    for v in 0..map.vertex_count() {
        let rep = map.vertex_rep(v);
        let w = Dart(rep.0 >> 2);
        let role = match rep.0 & 3 {
            0 => {
                primal_vertex[base.vertex_of(w)] = v;
                VertexRole::Primal(base.vertex_of(w))
            }
            2 => {
                dual_vertex[base.face_of(w)] = v;
                VertexRole::DualOf(base.face_of(w))
            }
            _ => {
                edge_vertex[base.edge_of(w)] = v;
                VertexRole::EdgeOf(base.edge_of(w))
            }
        };
        roles[v] = role;
    }

    // The face of completion dart `4a` is the quadrangle of the angle at
    // dart `a` (the corner between `a` and `sigma(a)`).
    let mut angle_of_face = vec![Dart(usize::MAX); map.face_count()];
    let mut face_of_angle = vec![usize::MAX; nd];
    for a in 0..nd {
        let f = map.face_of(Dart(4 * a));
        angle_of_face[f] = Dart(a);
        face_of_angle[a] = f;
    }

    Completion { base: base.clone(), map, roles, primal_vertex, dual_vertex, edge_vertex, angle_of_face, face_of_angle }
}

impl Completion {
    pub fn base(&self) -> &SurfaceMap {
        &self.base
    }

    /// The completion as a map in its own right.
    pub fn map(&self) -> &SurfaceMap {
        &self.map
    }

    pub fn role(&self, vertex: usize) -> VertexRole {
        self.roles[vertex]
    }

    pub fn primal_vertex(&self, v: usize) -> usize {
        self.primal_vertex[v]
    }

    pub fn dual_vertex(&self, f: usize) -> usize {
        self.dual_vertex[f]
    }

    pub fn edge_vertex(&self, e: usize) -> usize {
        self.edge_vertex[e]
    }

    pub fn angle_of_face(&self, f: usize) -> Dart {
        self.angle_of_face[f]
    }

    pub fn face_of_angle(&self, angle: Dart) -> usize {
        self.face_of_angle[angle.0]
    }

    /// Completion dart from the vertex of `w` towards the edge-vertex.
    pub fn vertex_half(&self, w: Dart) -> Dart {
        Dart(4 * w.0)
    }

    /// Completion dart from the face left of `w` towards the edge-vertex.
    pub fn face_half(&self, w: Dart) -> Dart {
        Dart(4 * w.0 + 2)
    }

    /// Sign of traversing completion dart `x` in the dual of the completion
    /// (the dual reference dart of every completion edge is the one leaving
    /// the edge-vertex).
    fn dual_sign(x: Dart) -> i64 {
        if x.0 & 1 == 1 {
            1
        } else {
            -1
        }
    }

    /// True iff the completion edge of `x` is directed towards its
    /// edge-vertex, i.e. belongs to the out-edge set.
    pub fn is_out_edge(&self, o: &Orientation, x: Dart) -> bool {
        // Reference darts point towards the edge-vertex.
        o.is_forward(self.map.edge_of(x))
    }

    /// Lifts an orientation of the base map: each edge sends one completion
    /// edge out of its tail into the edge-vertex, the edge-vertex sends its
    /// single out-edge on towards the head, and both dual halves point into
    /// the edge-vertex.
    pub fn lift_orientation(&self, o: &Orientation) -> Orientation {
        let mut forward = vec![true; self.map.edge_count()];
        for w in self.base.darts() {
            if !o.directs_along(&self.base, w) {
                // Half-edge at the head: directed from the edge-vertex out.
                forward[self.map.edge_of(Dart(4 * w.0))] = false;
            }
        }
        Orientation::from_forward(forward)
    }

    /// The Schnyder orientation of the constant angle labeling: every edge
    /// of the base map has type 0, every edge-vertex outdegree four.
    pub fn trivial_orientation(&self) -> Orientation {
        Orientation::from_forward(vec![false; self.map.edge_count()])
    }

    /// Outdegree congruences: 0 mod 3 at primal and dual vertices, 1 mod 3
    /// at edge-vertices.
    pub fn is_mod3_orientation(&self, o: &Orientation) -> bool {
        (0..self.map.vertex_count()).all(|v| {
            let out = o.outdegree(&self.map, v) % 3;
            match self.roles[v] {
                VertexRole::EdgeOf(_) => out == 1,
                _ => out == 0,
            }
        })
    }

    /// Characteristic flow of the out-edge set (edges directed towards an
    /// edge-vertex), as an oriented subgraph of the completion.
    pub fn out_edge_flow(&self, o: &Orientation) -> Flow {
        let mut flow = Flow::zero(self.map.edge_count());
        for e in 0..self.map.edge_count() {
            if o.is_forward(e) {
                flow.values[e] = 1;
            }
        }
        flow
    }

    /// `delta` of a closed walk of the dual of the completion: out-edges
    /// crossing the walk from its left to its right, minus the others.
    pub fn delta(&self, o: &Orientation, dual_walk: &Walk) -> i64 {
        let mut flow = Flow::zero(self.map.edge_count());
        for &x in &dual_walk.darts {
            flow.values[self.map.edge_of(x)] += Completion::dual_sign(x);
        }
        beta(&self.out_edge_flow(o), &flow).unwrap()
    }

    /// The cycle of the completion corresponding to a cycle of the base map.
    pub fn lift_cycle(&self, cycle: &Walk) -> Walk {
        let mut darts = Vec::with_capacity(2 * cycle.len());
        for &c in &cycle.darts {
            darts.push(Dart(4 * c.0));
            darts.push(Dart(4 * self.base.alpha(c).0 + 1));
        }
        Walk { darts, closed: cycle.closed }
    }

    fn check_cycle(&self, cycle: &Walk) -> Result<(), CompletionError> {
        if self.base.is_cycle(cycle) {
            Ok(())
        } else {
            Err(CompletionError::NotACycle)
        }
    }

    /// Visits every vertex of the lifted cycle with its incoming dart
    /// replaced by the opposite dart (`u`) and its outgoing dart (`s`), and
    /// hands the callback every strictly-left and strictly-right dart.
    fn for_each_side_dart(
        &self,
        cycle_hat: &Walk,
        mut visit: impl FnMut(Side, Dart),
    ) {
        let k = cycle_hat.len();
        for i in 0..k {
            let s = cycle_hat.darts[i];
            let t = cycle_hat.darts[(i + k - 1) % k];
            let u = self.map.alpha(t);
            let mut w = self.map.sigma(s);
            while w != u {
                visit(Side::Left, w);
                w = self.map.sigma(w);
            }
            let mut w = self.map.sigma(u);
            while w != s {
                visit(Side::Right, w);
                w = self.map.sigma(w);
            }
        }
    }

    /// `gamma` of a directed cycle of the base map: completion edges leaving
    /// the lifted cycle on its right minus those leaving on its left.
    pub fn gamma(&self, o: &Orientation, cycle: &Walk) -> Result<i64, CompletionError> {
        self.check_cycle(cycle)?;
        let hat = self.lift_cycle(cycle);
        let mut total = 0i64;
        self.for_each_side_dart(&hat, |side, w| {
            if o.directs_along(&self.map, w) {
                total += match side {
                    Side::Right => 1,
                    Side::Left => -1,
                };
            }
        });
        Ok(total)
    }

    /// Characteristic flows of the closed dual walks just left and just
    /// right of a cycle (running in the cycle's direction): the duals of the
    /// completion edges incident to each side.
    pub fn side_walk_flows(&self, cycle: &Walk) -> Result<(Flow, Flow), CompletionError> {
        self.check_cycle(cycle)?;
        let hat = self.lift_cycle(cycle);
        let mut left = Flow::zero(self.map.edge_count());
        let mut right = Flow::zero(self.map.edge_count());
        // Running alongside the cycle, the left walk sweeps clockwise around
        // each cycle vertex (crossing each left edge from its left face to
        // its right face), the right walk counterclockwise.
        self.for_each_side_dart(&hat, |side, w| match side {
            Side::Left => left.values[self.map.edge_of(w)] += Completion::dual_sign(w),
            Side::Right => {
                right.values[self.map.edge_of(w)] += Completion::dual_sign(self.map.alpha(w))
            }
        });
        Ok((left, right))
    }

    /// `delta` against the walk just left (respectively right) of a cycle.
    pub fn delta_sides(&self, o: &Orientation, cycle: &Walk) -> Result<(i64, i64), CompletionError> {
        let (left, right) = self.side_walk_flows(cycle)?;
        let out = self.out_edge_flow(o);
        Ok((beta(&out, &left).unwrap(), beta(&out, &right).unwrap()))
    }

    /// The mod-3/gamma characterization: Schnyder iff mod-3 and every basis
    /// cycle has gamma divisible by three. Returns the full report.
    pub fn is_schnyder_orientation(
        &self,
        o: &Orientation,
        basis: &CycleBasis,
    ) -> SchnyderCheck {
        let mod3 = self.is_mod3_orientation(o);
        let gammas: Vec<i64> = basis
            .cycles
            .iter()
            .map(|c| self.gamma(o, c).expect("basis cycles are simple"))
            .collect();
        let schnyder = mod3 && gammas.iter().all(|g| g.rem_euclid(3) == 0);
        SchnyderCheck { mod3, gammas, schnyder }
    }

    /// Recovers the angle labeling of a Schnyder orientation: faces of the
    /// completion are labeled by `delta` along dual paths from `f0`, which
    /// is well-defined mod 3 exactly for Schnyder orientations.
    pub fn extract_labeling(
        &self,
        o: &Orientation,
        f0: usize,
        base: Color,
    ) -> Result<AngleLabeling, CompletionError> {
        let nf = self.map.face_count();
        let out = self.out_edge_flow(o);
        let mut label = vec![None::<Color>; nf];
        label[f0] = Some(base % 3);
        let mut queue = alloc::collections::VecDeque::from([f0]);
        // Crossing completion dart x contributes the delta of that single
        // dual step: the out-value of the crossed edge, signed by direction.
        let step = |x: Dart| -> i64 { out.values[self.map.edge_of(x)] * Completion::dual_sign(x) };
        while let Some(face) = queue.pop_front() {
            for x in self.map.facial_walk(face).darts {
                let other = self.map.face_right_of(x);
                let expect = ((label[face].unwrap() as i64 + step(x)).rem_euclid(3)) as Color;
                match label[other] {
                    None => {
                        label[other] = Some(expect);
                        queue.push_back(other);
                    }
                    Some(have) => {
                        if have != expect {
                            return Err(CompletionError::NotSchnyder);
                        }
                    }
                }
            }
        }
        let labels = (0..self.base.dart_count())
            .map(|a| label[self.face_of_angle[a]].expect("connected completion"))
            .collect();
        Ok(AngleLabeling { labels })
    }

    /// Corner labels around the edge of reference dart `d`, in the frame
    /// where `d` runs west to east: `(nw, sw, se, ne)`.
    fn edge_corners(&self, l: &AngleLabeling, d: Dart) -> (Color, Color, Color, Color) {
        let dp = self.base.alpha(d);
        (
            l.label(d),
            l.label(self.base.sigma_inv(d)),
            l.label(dp),
            l.label(self.base.sigma_inv(dp)),
        )
    }

    /// Counterclockwise label changes around the edge-vertex of the edge of
    /// reference dart `d`: across its north, west, south and east completion
    /// edges. Each is 0 across an edge leaving the edge-vertex and 2 (that
    /// is, -1) across an edge entering it; any value 1 breaks the edge
    /// pattern.
    fn edge_deltas(&self, l: &AngleLabeling, d: Dart) -> [Color; 4] {
        let (nw, sw, se, ne) = self.edge_corners(l, d);
        [
            (nw + 3 - ne) % 3,
            (sw + 3 - nw) % 3,
            (se + 3 - sw) % 3,
            (ne + 3 - se) % 3,
        ]
    }

    /// Shape of one edge under a labeling, if the labeling matches a type.
    fn edge_type(&self, l: &AngleLabeling, e: usize) -> Option<EdgeType> {
        let d = self.base.edge_ref(e);
        let dp = self.base.alpha(d);
        let (nw, _, se, ne) = self.edge_corners(l, d);
        let [north, west, south, east] = self.edge_deltas(l, d);
        if [north, west, south, east].contains(&1) {
            return None;
        }
        // Each delta is 0 or -1 and they sum to 0 mod 3, so either all four
        // vanish (type 0) or exactly one does. The vanishing one is the
        // completion edge leaving the edge-vertex: towards a primal vertex
        // for type 1, towards a dual vertex for type 2. An outgoing
        // direction along a dart always carries the color of its left
        // corner plus one.
        Some(match (north, west, south, east) {
            (0, 0, 0, 0) => EdgeType::Type0 { color: nw },
            (_, 0, _, _) => EdgeType::Type1 { color: nw, tail_dart: dp },
            (_, _, _, 0) => EdgeType::Type1 { color: ne, tail_dart: d },
            _ => EdgeType::Type2 { color_ref: (nw + 1) % 3, color_alpha: (se + 1) % 3 },
        })
    }

    /// Maps an angle labeling to the orientation of the completion, failing
    /// on any edge whose four corner labels match none of the three
    /// patterns.
    pub fn labeling_to_orientation(&self, l: &AngleLabeling) -> Result<Orientation, CompletionError> {
        let mut forward = vec![false; self.map.edge_count()];
        let mut bad = Vec::new();
        for e in 0..self.base.edge_count() {
            let d = self.base.edge_ref(e);
            let dp = self.base.alpha(d);
            let [north, west, south, east] = self.edge_deltas(l, d);
            if [north, west, south, east].contains(&1) {
                bad.push(e);
                continue;
            }
            forward[self.map.edge_of(self.face_half(d))] = north == 2;
            forward[self.map.edge_of(self.vertex_half(d))] = west == 2;
            forward[self.map.edge_of(self.face_half(dp))] = south == 2;
            forward[self.map.edge_of(self.vertex_half(dp))] = east == 2;
        }
        if bad.is_empty() {
            Ok(Orientation::from_forward(forward))
        } else {
            Err(CompletionError::NotEdgeLabeling { edges: bad })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Result of the Schnyder characterization check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchnyderCheck {
    pub mod3: bool,
    /// `gamma` of each basis cycle, in basis order.
    pub gammas: Vec<i64>,
    pub schnyder: bool,
}

/// Color per angle of the base map; the angle of dart `d` is the corner at
/// the origin of `d` between `d` and `sigma(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleLabeling {
    pub labels: Vec<Color>,
}

impl AngleLabeling {
    pub fn constant(map: &SurfaceMap, color: Color) -> AngleLabeling {
        AngleLabeling { labels: vec![color % 3; map.dart_count()] }
    }

    pub fn label(&self, angle: Dart) -> Color {
        self.labels[angle.0]
    }

    /// Cyclic shift of every label.
    pub fn shifted(&self, by: Color) -> AngleLabeling {
        AngleLabeling { labels: self.labels.iter().map(|&c| (c + by) % 3).collect() }
    }
}

/// Per-edge shape of an angle labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeType {
    /// All four corners share one color; both directions incoming.
    Type0 { color: Color },
    /// One direction, one color; `tail_dart` points along the edge.
    Type1 { color: Color, tail_dart: Dart },
    /// Two opposite outgoing directions with distinct colors, given for the
    /// reference dart and its opposite.
    Type2 { color_ref: Color, color_alpha: Color },
}

impl EdgeType {
    pub fn type_index(&self) -> u8 {
        match self {
            EdgeType::Type0 { .. } => 0,
            EdgeType::Type1 { .. } => 1,
            EdgeType::Type2 { .. } => 2,
        }
    }

    /// Color of the outgoing direction along `d`, if any. `fwd` says whether
    /// `d` is its edge's reference dart.
    pub fn color_along(&self, fwd: bool) -> Option<Color> {
        match (self, fwd) {
            (EdgeType::Type1 { color, .. }, _) => Some(*color),
            (EdgeType::Type2 { color_ref, .. }, true) => Some(*color_ref),
            (EdgeType::Type2 { color_alpha, .. }, false) => Some(*color_alpha),
            (EdgeType::Type0 { .. }, _) => None,
        }
    }
}

/// Classification of a labeling: edge types plus the interval type of every
/// vertex and face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub edge_types: Vec<EdgeType>,
    pub vertex_types: Vec<usize>,
    pub face_types: Vec<usize>,
}

/// Classifies edges, vertices and faces of an angle labeling. Vertex and
/// face types count the blocks of constant color around them (in
/// counterclockwise order, colors must advance by one per block); an edge
/// labeling always classifies cleanly.
pub fn classify(completion: &Completion, l: &AngleLabeling) -> Result<Classification, CompletionError> {
    let base = completion.base();
    let mut edge_types = Vec::with_capacity(base.edge_count());
    let mut bad = Vec::new();
    for e in 0..base.edge_count() {
        match completion.edge_type(l, e) {
            Some(t) => edge_types.push(t),
            None => bad.push(e),
        }
    }
    if !bad.is_empty() {
        return Err(CompletionError::NotEdgeLabeling { edges: bad });
    }

    let block_type = |corners: &[Color], around: &'static str, id: usize| -> Result<usize, CompletionError> {
        debug_assert!(!corners.is_empty());
        let blocks: Vec<Color> = {
            let mut b = Vec::new();
            for (i, &c) in corners.iter().enumerate() {
                let prev = corners[(i + corners.len() - 1) % corners.len()];
                if b.is_empty() || prev != c {
                    b.push(c);
                }
            }
            if b.len() > 1 && b[0] == *b.last().unwrap() {
                b.pop();
            }
            b
        };
        if blocks.len() <= 1 {
            return Ok(0);
        }
        if blocks.len() % 3 != 0 {
            return Err(CompletionError::MalformedIntervalPattern { around, id });
        }
        for i in 0..blocks.len() {
            if (blocks[i] + 1) % 3 != blocks[(i + 1) % blocks.len()] {
                return Err(CompletionError::MalformedIntervalPattern { around, id });
            }
        }
        Ok(blocks.len() / 3)
    };

    let mut vertex_types = Vec::with_capacity(base.vertex_count());
    for v in 0..base.vertex_count() {
        let corners: Vec<Color> = base.rotation(v).into_iter().map(|d| l.label(d)).collect();
        vertex_types.push(block_type(&corners, "vertex", v)?);
    }
    let mut face_types = Vec::with_capacity(base.face_count());
    for f in 0..base.face_count() {
        let corners: Vec<Color> = base.facial_walk(f).darts.into_iter().map(|d| l.label(d)).collect();
        face_types.push(block_type(&corners, "face", f)?);
    }
    Ok(Classification { edge_types, vertex_types, face_types })
}

/// Orientation and coloring of the edges of the base map, one entry per
/// edge, as read off an angle labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredWood {
    pub edges: Vec<EdgeType>,
}

/// Converts an angle labeling into a colored wood. Requires every vertex
/// and face to be of nonzero type, which is the wood validity condition.
pub fn to_colored_wood(completion: &Completion, l: &AngleLabeling) -> Result<ColoredWood, CompletionError> {
    let c = classify(completion, l)?;
    if let Some(v) = c.vertex_types.iter().position(|&t| t == 0) {
        return Err(CompletionError::SinkVertex { vertex: v });
    }
    if let Some(f) = c.face_types.iter().position(|&t| t == 0) {
        return Err(CompletionError::Type0Face { face: f });
    }
    Ok(ColoredWood { edges: c.edge_types })
}

/// Reconstructs the angle labeling of a colored wood, checking local
/// consistency at every corner and rejecting monochromatic facial
/// boundaries.
pub fn wood_to_labeling(completion: &Completion, wood: &ColoredWood) -> Result<AngleLabeling, CompletionError> {
    let base = completion.base();
    assert_eq!(wood.edges.len(), base.edge_count());
    let mut labels = vec![None::<Color>; base.dart_count()];
    let mut put = |angle: Dart, c: Color| -> Result<(), CompletionError> {
        match labels[angle.0] {
            None => {
                labels[angle.0] = Some(c % 3);
                Ok(())
            }
            Some(have) if have == c % 3 => Ok(()),
            Some(_) => Err(CompletionError::InconsistentWood { dart: angle }),
        }
    };
    for e in 0..base.edge_count() {
        let d = base.edge_ref(e);
        let dp = base.alpha(d);
        match wood.edges[e] {
            EdgeType::Type0 { color } => {
                for w in [d, dp] {
                    put(w, color)?;
                    put(base.sigma_inv(w), color)?;
                }
            }
            EdgeType::Type1 { color, tail_dart } => {
                let head_dart = base.alpha(tail_dart);
                // Tail side: color-1 left of the outgoing dart, color+1 on
                // its right. Head side: the repeated color.
                put(tail_dart, (color + 2) % 3)?;
                put(base.sigma_inv(tail_dart), (color + 1) % 3)?;
                put(head_dart, color)?;
                put(base.sigma_inv(head_dart), color)?;
            }
            EdgeType::Type2 { color_ref, color_alpha } => {
                put(d, (color_ref + 2) % 3)?;
                put(base.sigma_inv(d), (color_ref + 1) % 3)?;
                put(dp, (color_alpha + 2) % 3)?;
                put(base.sigma_inv(dp), (color_alpha + 1) % 3)?;
            }
        }
    }
    let labels: Vec<Color> = labels.into_iter().map(|l| l.expect("every angle borders an edge")).collect();
    let l = AngleLabeling { labels };

    // A directed monochromatic facial boundary (or an all-type-0 boundary in
    // one color) is forbidden for woods.
    let directed_color = |x: Dart| -> Option<Color> {
        let e = base.edge_of(x);
        match wood.edges[e] {
            EdgeType::Type0 { .. } => None,
            EdgeType::Type1 { color, tail_dart } => (tail_dart == x).then_some(color),
            EdgeType::Type2 { color_ref, color_alpha } => {
                Some(if base.edge_ref(e) == x { color_ref } else { color_alpha })
            }
        }
    };
    for f in 0..base.face_count() {
        let walk = base.facial_walk(f);
        for reverse in [false, true] {
            let colors: Vec<Option<Color>> = walk
                .darts
                .iter()
                .map(|&x| directed_color(if reverse { base.alpha(x) } else { x }))
                .collect();
            if colors[0].is_some() && colors.iter().all(|&c| c == colors[0]) {
                return Err(CompletionError::MonochromaticFace { face: f });
            }
        }
        let undirected: Vec<Option<Color>> = walk
            .darts
            .iter()
            .map(|&x| match wood.edges[base.edge_of(x)] {
                EdgeType::Type0 { color } => Some(color),
                _ => None,
            })
            .collect();
        if undirected[0].is_some() && undirected.iter().all(|&c| c == undirected[0]) {
            return Err(CompletionError::MonochromaticFace { face: f });
        }
    }
    // Round-trip discipline: the labels must form an edge labeling.
    classify(completion, &l)?;
    Ok(l)
}

/// Simplified gamma for orientations of a triangulation (every edge in one
/// direction): edges of the base map leaving the cycle on its right minus
/// those leaving on its left.
pub fn gamma_simple(map: &SurfaceMap, o: &Orientation, cycle: &Walk) -> Result<i64, CompletionError> {
    if !map.is_cycle(cycle) {
        return Err(CompletionError::NotACycle);
    }
    let k = cycle.len();
    let mut total = 0i64;
    for i in 0..k {
        let s = cycle.darts[i];
        let t = cycle.darts[(i + k - 1) % k];
        let u = map.alpha(t);
        let mut w = map.sigma(s);
        while w != u {
            if o.directs_along(map, w) {
                total -= 1;
            }
            w = map.sigma(w);
        }
        let mut w = map.sigma(u);
        while w != s {
            if o.directs_along(map, w) {
                total += 1;
            }
            w = map.sigma(w);
        }
    }
    Ok(total)
}
