//! Property tests: random dart systems (arbitrary genus), random flows and
//! random orientations against the structural invariants.

use proptest::prelude::*;

use schnyder::completion::complete;
use schnyder::fixtures;
use schnyder::homology::{
    beta, characteristic_flow, face_flows, face_potential, homology_coordinates,
    tree_cotree_basis, DualData, Flow,
};
use schnyder::map::{Dart, Orientation, SurfaceMap, Walk};

/// Random map on some orientable surface: a random rotation over a fixed
/// edge pairing, conditioned on connectivity.
fn arb_map(max_edges: usize) -> impl Strategy<Value = SurfaceMap> {
    (1..=max_edges)
        .prop_flat_map(|m| {
            let darts: Vec<usize> = (0..2 * m).collect();
            Just(darts).prop_shuffle()
        })
        .prop_filter_map("connected dart system", |sigma| {
            let n = sigma.len();
            let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
            SurfaceMap::build(alpha, sigma).ok()
        })
}

proptest! {
    #[test]
    fn euler_and_coverage(map in arb_map(5)) {
        let n = map.vertex_count() as i64;
        let m = map.edge_count() as i64;
        let f = map.face_count() as i64;
        prop_assert_eq!(n - m + f, 2 - 2 * map.genus() as i64);
        let total: usize = map.faces().iter().map(Walk::len).sum();
        prop_assert_eq!(total, map.dart_count());
        let degrees: usize = (0..map.vertex_count()).map(|v| map.degree(v)).sum();
        prop_assert_eq!(degrees, map.dart_count());
        if map.is_triangulation() {
            prop_assert_eq!(m, 3 * n + 6 * (map.genus() as i64 - 1));
        }
    }

    #[test]
    fn dual_is_involutive_up_to_alpha(map in arb_map(5)) {
        let dual = map.dual();
        prop_assert_eq!(dual.vertex_count(), map.face_count());
        prop_assert_eq!(dual.face_count(), map.vertex_count());
        prop_assert_eq!(dual.genus(), map.genus());
        let dd = dual.dual();
        for d in map.darts() {
            prop_assert_eq!(dd.sigma(map.alpha(d)), map.alpha(map.sigma(d)));
        }
    }

    #[test]
    fn facial_flows_pair_to_zero(map in arb_map(5)) {
        let dual_data = DualData::new(&map);
        for f in face_flows(&map) {
            prop_assert!(dual_data.pairs_to_zero(&f));
        }
        prop_assert_eq!(dual_data.dual_basis.cycles.len(), 2 * map.genus());
    }

    #[test]
    fn potential_decides_zero_homology(map in arb_map(4), raw in proptest::collection::vec(-2i64..=2, 0..8)) {
        let mut values = raw;
        values.resize(map.edge_count(), 0);
        let z = Flow { values };
        let fast = face_potential(&map, &z, 0);
        let dual_data = DualData::new(&map);
        prop_assert_eq!(fast.is_ok(), dual_data.pairs_to_zero(&z));
        match fast {
            Ok(pot) => {
                // Reconstruction is exact.
                let flows = face_flows(&map);
                let mut back = Flow::zero(map.edge_count());
                for (f, flow) in flows.iter().enumerate() {
                    back = back.add(&flow.scaled(pot.lambda[f]));
                }
                prop_assert_eq!(back, z);
                prop_assert_eq!(pot.lambda[0], 0);
            }
            Err(schnyder::homology::HomologyError::NotZeroHomologous { witness }) => {
                let dual = map.dual();
                prop_assert!(dual.is_walk(&witness));
                let w = characteristic_flow(&dual, &witness);
                prop_assert_ne!(beta(&z, &w).unwrap(), 0);
            }
            Err(other) => prop_assert!(false, "unexpected error {:?}", other),
        }
    }

    #[test]
    fn tree_cotree_is_a_basis(map in arb_map(5)) {
        let basis = tree_cotree_basis(&map);
        prop_assert_eq!(basis.cycles.len(), 2 * map.genus());
        prop_assert_eq!(basis.tree_edges.len(), map.vertex_count() - 1);
        prop_assert_eq!(basis.cotree_edges.len(), map.face_count() - 1);
        prop_assert_eq!(
            basis.tree_edges.len() + basis.cotree_edges.len() + basis.leftover_edges.len(),
            map.edge_count()
        );
        for c in &basis.cycles {
            prop_assert!(map.is_cycle(c));
            // Basis cycles are independent: unit coordinates.
            let mu = homology_coordinates(&map, &characteristic_flow(&map, c), &basis).unwrap();
            prop_assert_eq!(mu.iter().filter(|&&x| x == 1).count(), 1);
            prop_assert_eq!(mu.iter().filter(|&&x| x == 0).count(), mu.len() - 1);
        }
    }

    #[test]
    fn completion_structure(map in arb_map(4)) {
        let c = complete(&map);
        let hat = c.map();
        prop_assert_eq!(hat.vertex_count(), map.vertex_count() + map.face_count() + map.edge_count());
        prop_assert_eq!(hat.edge_count(), 4 * map.edge_count());
        prop_assert_eq!(hat.face_count(), 2 * map.edge_count());
        prop_assert_eq!(hat.genus(), map.genus());
        for f in 0..hat.face_count() {
            prop_assert_eq!(hat.face_degree(f), 4);
        }
        // Angle correspondence is a bijection.
        let mut seen = vec![false; hat.face_count()];
        for a in map.darts() {
            let f = c.face_of_angle(a);
            prop_assert!(!seen[f]);
            seen[f] = true;
            prop_assert_eq!(c.angle_of_face(f), a);
        }
    }

    #[test]
    fn trivial_orientation_always_schnyder(map in arb_map(4)) {
        let c = complete(&map);
        let basis = tree_cotree_basis(&map);
        let o = c.trivial_orientation();
        let check = c.is_schnyder_orientation(&o, &basis);
        prop_assert!(check.schnyder);
        let l = c.extract_labeling(&o, 0, 0).unwrap();
        prop_assert_eq!(c.labeling_to_orientation(&l).unwrap(), o);
    }
}

/// Tiny deterministic generator for the heavier orientation sweeps.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Random simple cycle via a self-avoiding random walk (retries bounded).
fn random_cycle(map: &SurfaceMap, rng: &mut Rng) -> Option<Walk> {
    'attempt: for _ in 0..200 {
        let start = rng.below(map.vertex_count());
        let mut at = start;
        let mut visited = vec![start];
        let mut darts: Vec<Dart> = Vec::new();
        for _ in 0..map.dart_count() {
            let rot = map.rotation(at);
            let d = rot[rng.below(rot.len())];
            let to = map.head_of(d);
            if to == start && !darts.is_empty() {
                darts.push(d);
                let w = Walk::closed(darts);
                if map.is_cycle(&w) {
                    return Some(w);
                }
                continue 'attempt;
            }
            if visited.contains(&to) {
                continue 'attempt;
            }
            darts.push(d);
            visited.push(to);
            at = to;
        }
    }
    None
}

#[test]
fn gamma_is_delta_left_plus_right_on_random_cycles() {
    // Random orientations of the completion and random simple cycles of the
    // base map; additionally the mod-3 equivalence on mod-3 orientations.
    let mut rng = Rng(0xabcdef);
    for m in [fixtures::grid(3, 3), fixtures::grid3x1(), fixtures::octagon_double_torus()] {
        let c = complete(&m);
        let hat_edges = c.map().edge_count();
        for _ in 0..40 {
            let forward: Vec<bool> = (0..hat_edges).map(|_| rng.next() & 1 == 1).collect();
            let o = Orientation::from_forward(forward);
            let Some(cycle) = random_cycle(&m, &mut rng) else { continue };
            let (dl, dr) = c.delta_sides(&o, &cycle).unwrap();
            assert_eq!(c.gamma(&o, &cycle).unwrap(), dl + dr);
        }
    }
}

#[test]
fn mod3_face_delta_and_gamma_equivalence_exhaustive() {
    // Over every mod-3 orientation of the two smallest completions: delta of
    // every dual facial walk vanishes mod 3, and gamma(C) = 0 mod 3 iff both
    // side walks vanish mod 3, for a handful of cycles.
    let mut rng = Rng(99);
    for m in [fixtures::one_vertex_torus(), fixtures::fig5_map()] {
        let c = complete(&m);
        let hat_dual = c.map().dual();
        let dual_walks: Vec<Walk> = (0..hat_dual.face_count()).map(|f| hat_dual.facial_walk(f)).collect();
        let mut cycles = Vec::new();
        for _ in 0..12 {
            if let Some(cy) = random_cycle(&m, &mut rng) {
                cycles.push(cy);
            }
        }
        schnyder::oracle::for_each_mod3_orientation(
            &c,
            schnyder::oracle::EnumerationBudget::default(),
            |o| {
                for w in &dual_walks {
                    assert_eq!(c.delta(o, w).rem_euclid(3), 0);
                }
                for cy in &cycles {
                    let g = c.gamma(o, cy).unwrap();
                    let (dl, dr) = c.delta_sides(o, cy).unwrap();
                    assert_eq!(g, dl + dr);
                    assert_eq!(
                        g.rem_euclid(3) == 0,
                        dl.rem_euclid(3) == 0 && dr.rem_euclid(3) == 0
                    );
                }
            },
        )
        .unwrap();
    }
}

#[test]
fn coordinates_unchanged_by_facial_appends() {
    let m = fixtures::grid(4, 3);
    let basis = tree_cotree_basis(&m);
    let mut rng = Rng(7);
    for _ in 0..25 {
        let Some(cycle) = random_cycle(&m, &mut rng) else { continue };
        let z = characteristic_flow(&m, &cycle);
        let mu = homology_coordinates(&m, &z, &basis).unwrap();
        let f = rng.below(m.face_count());
        let z2 = z.add(&characteristic_flow(&m, &m.facial_walk(f)));
        assert_eq!(homology_coordinates(&m, &z2, &basis).unwrap(), mu);
    }
}
