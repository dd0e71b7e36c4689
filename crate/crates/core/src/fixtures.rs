//! Bundled maps and orientations used by tests and the CLI.
//!
//! The `fig*` fixtures are hand reconstructions of drawn examples
//! (`reconstructed: true` in their headers when exported); their loop order
//! and directions were chosen so the documented invariants come out with the
//! documented signs.

use alloc::vec;
use alloc::vec::Vec;

use crate::map::{Dart, Orientation, SurfaceMap, Walk};

/// Triangulated torus grid with `a` columns and `b` rows.
///
/// Vertex `(i, j)` has id `j*a + i`. Each vertex owns three edges: east
/// `H(i,j)` (id `3v`), north `V(i,j)` (id `3v+1`) and the north-east diagonal
/// `D(i,j)` (id `3v+2`); edge `e` has darts `2e` (from its tail) and `2e+1`.
/// The rotation at a vertex is, counterclockwise:
/// `H+ D+ V+ H_west- D_southwest- V_south-`.
///
/// `a = 1` or `b = 1` produce loops; `(1,1)` is the one-vertex toroidal
/// triangulation with three loops.
pub fn grid(a: usize, b: usize) -> SurfaceMap {
    assert!(a >= 1 && b >= 1);
    let n = a * b;
    let nd = 6 * n;
    let v_id = |i: usize, j: usize| (j % b) * a + (i % a);
    let h_plus = |i: usize, j: usize| 6 * v_id(i, j);
    let v_plus = |i: usize, j: usize| 6 * v_id(i, j) + 2;
    let d_plus = |i: usize, j: usize| 6 * v_id(i, j) + 4;

    let mut alpha = vec![0usize; nd];
    for e in 0..3 * n {
        alpha[2 * e] = 2 * e + 1;
        alpha[2 * e + 1] = 2 * e;
    }
    let mut sigma = vec![0usize; nd];
    for j in 0..b {
        for i in 0..a {
            let rot = [
                h_plus(i, j),
                d_plus(i, j),
                v_plus(i, j),
                h_plus(i + a - 1, j) + 1,
                d_plus(i + a - 1, j + b - 1) + 1,
                v_plus(i, j + b - 1) + 1,
            ];
            for k in 0..6 {
                sigma[rot[k]] = rot[(k + 1) % 6];
            }
        }
    }
    SurfaceMap::build(alpha, sigma).expect("grid is a valid map")
}

/// Torus map with one vertex and two loops (rotation `a b a' b'`): one face
/// of degree four.
pub fn one_vertex_torus() -> SurfaceMap {
    // darts: a = 0/1, b = 2/3
    SurfaceMap::build(vec![1, 0, 3, 2], cycle_to_perm(4, &[0, 2, 1, 3])).unwrap()
}

/// Double-torus map with one vertex, four loops and a single octagonal face
/// (fundamental polygon `a b a' b' c d c' d'`).
pub fn octagon_double_torus() -> SurfaceMap {
    // darts: a = 0/1, b = 2/3, c = 4/5, d = 6/7
    SurfaceMap::build(
        vec![1, 0, 3, 2, 5, 4, 7, 6],
        cycle_to_perm(8, &[0, 2, 1, 3, 4, 6, 5, 7]),
    )
    .unwrap()
}

/// Double-torus triangulation with one vertex: the octagonal face of
/// [`octagon_double_torus`] triangulated by a fan of five loop diagonals
/// from one corner. Nine edges, six triangles, genus two; every vertex has
/// degree 18.
pub fn octagon_triangulated() -> SurfaceMap {
    // Octagon darts 0..8 as in `octagon_double_torus`; its face walk is
    // 0 2 1 7 4 6 5 3, and the fan diagonal to polygon corner k (2..=6)
    // gets darts 8+2(k-2) (at corner 0) and 9+2(k-2) (at corner k).
    let mut alpha: Vec<usize> = vec![1, 0, 3, 2, 5, 4, 7, 6];
    for e in 4..9 {
        alpha.push(2 * e + 1);
        alpha.push(2 * e);
    }
    let mut sigma = vec![0usize; 18];
    // Corner 0 wedge: the five diagonal darts fan out between dart 0 and
    // its old successor 2.
    let chains: [&[usize]; 8] = [
        &[0, 8, 10, 12, 14, 16, 2], // wedge at corner 0
        &[1, 9, 3],                 // corner 2: diagonal back to 0
        &[7, 11, 0],                // corner 3
        &[4, 13, 6],                // corner 4
        &[6, 15, 5],                // corner 5
        &[5, 17, 7],                // corner 6
        &[2, 1],                    // untouched wedges
        &[3, 4],
    ];
    for chain in chains {
        for pair in chain.windows(2) {
            sigma[pair[0]] = pair[1];
        }
    }
    SurfaceMap::build(alpha, sigma).expect("triangulated octagon is a valid map")
}

/// One-vertex toroidal triangulation with three loops: horizontal `a`
/// (edge 0), vertical `b` (edge 1) and diagonal `c` (edge 2). Underlies the
/// pair of 3-orientations of which only one is a Schnyder wood.
pub fn fig5_map() -> SurfaceMap {
    grid(1, 1)
}

/// 3-orientation of [`fig5_map`] that is not a Schnyder orientation; its
/// unique middle cycle is the diagonal, and the loop gammas are `(2, 0, -2)`
/// in the order of [`fig5_loops`].
pub fn fig5_left() -> Orientation {
    Orientation::from_tail_darts(&fig5_map(), &[Dart(0), Dart(2), Dart(4)]).unwrap()
}

/// 3-orientation of [`fig5_map`] that is a Schnyder orientation (all loop
/// gammas zero).
pub fn fig5_right() -> Orientation {
    Orientation::from_tail_darts(&fig5_map(), &[Dart(0), Dart(2), Dart(5)]).unwrap()
}

/// The three loops of [`fig5_map`] as directed cycles: vertical, diagonal,
/// horizontal.
pub fn fig5_loops() -> Vec<Walk> {
    vec![
        Walk::closed(vec![Dart(2)]),
        Walk::closed(vec![Dart(4)]),
        Walk::closed(vec![Dart(0)]),
    ]
}

/// The 3x1 torus grid: three vertices in a horizontal ring, each with a
/// vertical loop. Underlies the lattice example and its two rigid woods.
pub fn grid3x1() -> SurfaceMap {
    grid(3, 1)
}

/// Horizontal cycle `H0 H1 H2` of [`grid3x1`], traversed eastwards.
pub fn grid3x1_horizontal() -> Walk {
    Walk::closed(vec![Dart(0), Dart(6), Dart(12)])
}

/// The downward vertical loop at vertex 0 of [`grid3x1`].
pub fn grid3x1_vertical() -> Walk {
    Walk::closed(vec![Dart(3)])
}

/// Rigid Schnyder wood of [`grid3x1`]: all six vertical cycles (three loops
/// and three `H/D` two-cycles) directed downwards. The horizontal cycle has
/// gamma 6; the lattice of homologous orientations is a singleton.
pub fn fig16() -> Orientation {
    let tails: Vec<Dart> = (0..3).flat_map(|i| [Dart(6 * i), Dart(6 * i + 3), Dart(6 * i + 5)]).collect();
    Orientation::from_tail_darts(&grid3x1(), &tails).unwrap()
}

/// The 180-degree rotation of [`fig16`]: the other rigid wood, with
/// horizontal gamma -6.
pub fn fig16_rotated() -> Orientation {
    let tails: Vec<Dart> = (0..3)
        .flat_map(|i| [Dart(6 * i + 1), Dart(6 * i + 2), Dart(6 * i + 4)])
        .collect();
    Orientation::from_tail_darts(&grid3x1(), &tails).unwrap()
}

fn cycle_to_perm(n: usize, cycle: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..cycle.len() {
        perm[cycle[k]] = cycle[(k + 1) % cycle.len()];
    }
    perm
}

/// Named map fixtures, as exposed by the CLI.
pub fn map_by_name(name: &str) -> Option<SurfaceMap> {
    match name {
        "one-vertex-torus" => Some(one_vertex_torus()),
        "octagon" => Some(octagon_double_torus()),
        "octagon-tri" => Some(octagon_triangulated()),
        "fig5" => Some(fig5_map()),
        "grid3x1" => Some(grid3x1()),
        "grid3x3" => Some(grid(3, 3)),
        _ => None,
    }
}

/// Named orientation fixtures together with their maps.
pub fn orientation_by_name(name: &str) -> Option<(SurfaceMap, Orientation)> {
    match name {
        "fig5-left" => Some((fig5_map(), fig5_left())),
        "fig5-right" => Some((fig5_map(), fig5_right())),
        "fig13" => Some((grid3x1(), fig13())),
        "fig14" => Some((grid3x1(), fig14())),
        "fig16" => Some((grid3x1(), fig16())),
        "fig16-rot" => Some((grid3x1(), fig16_rotated())),
        _ => None,
    }
}

pub fn map_fixture_names() -> &'static [&'static str] {
    &["one-vertex-torus", "octagon", "octagon-tri", "fig5", "grid3x1", "grid3x3"]
}

pub fn orientation_fixture_names() -> &'static [&'static str] {
    &["fig5-left", "fig5-right", "fig13", "fig14", "fig16", "fig16-rot"]
}

/// Schnyder wood of [`grid3x1`] whose monochromatic and middle cycles are
/// all weakly homologous (vertical): the minimal element of the lattice of
/// type-(0,0) Schnyder orientations over face 0. Not half-crossing.
pub fn fig13() -> Orientation {
    // Frozen from the lattice enumeration (tests/lattice_example.rs
    // re-derives it).
    let tails = [1usize, 2, 4, 6, 9, 11, 13, 15, 16].map(Dart);
    Orientation::from_tail_darts(&grid3x1(), &tails).unwrap()
}

/// Half-crossing but not crossing Schnyder wood of [`grid3x1`]: the unique
/// upper cover of [`fig13`] in its lattice.
pub fn fig14() -> Orientation {
    // Frozen from the lattice enumeration (tests/lattice_example.rs).
    let tails = [1usize, 2, 4, 6, 9, 11, 12, 14, 17].map(Dart);
    Orientation::from_tail_darts(&grid3x1(), &tails).unwrap()
}
