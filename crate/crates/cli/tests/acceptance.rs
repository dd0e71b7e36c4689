//! Acceptance suite: one test per criterion, each printing a PASS line and
//! enforcing its runtime bound. Run with `cargo test -p schnyder-cli --test
//! acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use schnyder::completion::{classify, complete, to_colored_wood};
use schnyder::fixtures;
use schnyder::homology::{
    beta, characteristic_flow, face_potential, homology_coordinates, subgraph_flow,
    tree_cotree_basis, DualData,
};
use schnyder::lattice::{
    boundary_directed, diff, enumerate_lattice, is_eulerian_partitionable, is_partitionable,
    join, leq, meet, rigid_edge_flags, FlipDirection,
};
use schnyder::map::{Dart, Orientation, SurfaceMap, Walk};
use schnyder::oracle::{
    enumerate_alpha_orientations, enumerate_homologous_orientations, for_each_mod3_orientation,
    for_each_orientation, schnyder_check_exhaustive, EnumerationBudget,
};
use schnyder::toroidal::{
    crossing_class, disk_cycle_outflow, find_3_orientation, schnyderize, weakly_homologous,
    CrossingClass, ToroidalError,
};

fn bin(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_schnyder")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn value_of<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("missing `{key}` in:\n{text}"))
}

fn finish(criterion: u32, what: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion} ({what}): PASS in {elapsed:.2?} (limit {limit:?})");
    assert!(elapsed < limit, "criterion {criterion} exceeded its runtime limit: {elapsed:?}");
}

#[test]
fn criterion_1_euler_structure() {
    let started = Instant::now();
    for a in 3..=5 {
        for b in 3..=5 {
            let text = bin(&["gen", "grid", &a.to_string(), &b.to_string()]);
            let m = schnyder_cli::formats::parse_map(&text).unwrap();
            assert_eq!(m.genus(), 1, "grid {a}x{b}");
            assert_eq!(m.edge_count(), 3 * m.vertex_count(), "grid {a}x{b}");
            assert_eq!(m.face_count(), 2 * m.vertex_count(), "grid {a}x{b}");
            assert_eq!(m.vertex_count(), a * b);
            assert!(m.is_triangulation());
        }
    }
    // Triangulation edge formula across the fixtures, including the
    // double-torus octagon map (genus 2; not a triangulation itself, its
    // genus pins the formula's g).
    let octagon = fixtures::octagon_double_torus();
    assert_eq!(octagon.genus(), 2);
    assert!(!octagon.is_triangulation());
    for name in ["one-vertex-torus", "octagon", "fig5", "grid3x1", "grid3x3"] {
        let m = fixtures::map_by_name(name).unwrap();
        if m.is_triangulation() {
            let expect = 3 * m.vertex_count() as i64 + 6 * (m.genus() as i64 - 1);
            assert_eq!(m.edge_count() as i64, expect, "{name}");
        }
    }
    finish(1, "Euler/structure via gen grid", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_characterization_fig5() {
    let started = Instant::now();
    // Left orientation: fails, loop gammas exactly (2, 0, -2).
    let out = bin(&[
        "check",
        "fixture:fig5",
        "--orientation",
        "fixture:fig5-left",
        "--cycle",
        "2",
        "--cycle",
        "4",
        "--cycle",
        "0",
    ]);
    assert_eq!(value_of(&out, "schnyder"), "false");
    assert_eq!(value_of(&out, "cycle-gamma 2"), "2");
    assert_eq!(value_of(&out, "cycle-gamma 4"), "0");
    assert_eq!(value_of(&out, "cycle-gamma 0"), "-2");
    // Right orientation: passes with type (0,0).
    let out = bin(&["check", "fixture:fig5", "--orientation", "fixture:fig5-right"]);
    assert_eq!(value_of(&out, "schnyder"), "true");
    assert_eq!(value_of(&out, "type"), "0 0");
    finish(2, "fig5 characterization", started, Duration::from_secs(1));
}

#[test]
fn criterion_3_oracle_equivalence() {
    let started = Instant::now();
    let mut total = 0u64;
    for name in ["one-vertex-torus", "fig5", "octagon", "grid3x1"] {
        let m = fixtures::map_by_name(name).unwrap();
        assert!(m.edge_count() <= 12);
        let c = complete(&m);
        let basis = tree_cotree_basis(&m);
        for_each_mod3_orientation(&c, EnumerationBudget::default(), |o| {
            let fast = c.is_schnyder_orientation(o, &basis).schnyder;
            let slow = schnyder_check_exhaustive(&c, o);
            assert_eq!(fast, slow, "{name}: disagreement");
            total += 1;
        })
        .unwrap();
    }
    assert!(total > 300, "only {total} orientations enumerated");
    finish(3, "characterization vs exhaustive delta", started, Duration::from_secs(60));
}

#[test]
fn criterion_4_transformation_equivalences() {
    let started = Instant::now();
    for m in [fixtures::one_vertex_torus(), fixtures::fig5_map()] {
        let c = complete(&m);
        let hat = c.map();
        let basis = tree_cotree_basis(&m);
        let dual_data = DualData::new(hat);
        // Profile every orientation of the completion once.
        let mut profiles: Vec<(Orientation, bool, Vec<usize>, Option<Vec<i64>>)> = Vec::new();
        for_each_orientation(hat, EnumerationBudget::default(), |o| {
            let schnyder = schnyder_check_exhaustive(&c, o);
            let gammas = schnyder.then(|| c.is_schnyder_orientation(o, &basis).gammas);
            profiles.push((o.clone(), schnyder, o.outdegrees(hat), gammas));
        })
        .unwrap();
        for d in profiles.iter().filter(|p| p.1) {
            for d_prime in &profiles {
                let t = diff(hat, &d.0, &d_prime.0);
                assert_eq!(is_partitionable(&dual_data, &t), d_prime.1);
                assert_eq!(
                    is_eulerian_partitionable(hat, &dual_data, &t),
                    d_prime.1 && d.2 == d_prime.2
                );
                assert_eq!(
                    face_potential(hat, &t, 0).is_ok(),
                    d_prime.1 && d.2 == d_prime.2 && d.3 == d_prime.3
                );
            }
        }
    }
    finish(4, "partitionable / Eulerian / homologous", started, Duration::from_secs(120));
}

/// Representatives of the homology classes of 3-orientations of the 3x3
/// grid, keyed by class size.
fn grid3x3_class_reps() -> Vec<(usize, Orientation)> {
    let m = fixtures::grid(3, 3);
    let budget = EnumerationBudget { max_orientations: 50_000_000, max_edges: 30 };
    let all = enumerate_alpha_orientations(&m, &vec![3; m.vertex_count()], budget).unwrap();
    let dd = DualData::new(&m);
    let edges: Vec<usize> = (0..m.edge_count()).collect();
    let mut classes: std::collections::BTreeMap<Vec<i64>, (usize, Orientation)> =
        std::collections::BTreeMap::new();
    for o in all {
        let f = subgraph_flow(&m, &o, &edges);
        let sig: Vec<i64> = dd
            .dual_face_flows
            .iter()
            .chain(&dd.dual_basis_flows)
            .map(|g| beta(&f, g).unwrap())
            .collect();
        let entry = classes.entry(sig).or_insert((0, o));
        entry.0 += 1;
    }
    classes.into_values().collect()
}

#[test]
fn criterion_5_lattice_axioms_grid3x3() {
    let started = Instant::now();
    let m = fixtures::grid(3, 3);
    let reps = grid3x3_class_reps();
    // One small class (distributivity triggers), one mid-size class across
    // every f0, and one pass over the largest class.
    let small = reps.iter().find(|(size, _)| (2..=64).contains(size)).expect("small class");
    let mid = reps.iter().find(|(size, _)| *size > 64 && *size <= 300).expect("mid class");
    let largest = reps.iter().max_by_key(|(size, _)| *size).unwrap();
    let mut maxtilde_checked = 0u32;
    for (size, d0) in [small, mid] {
        let oracle_count =
            enumerate_homologous_orientations(&m, d0, EnumerationBudget { max_orientations: 50_000_000, max_edges: 30 })
                .unwrap()
                .len();
        assert_eq!(oracle_count, *size);
        for f0 in 0..m.face_count() {
            let h = enumerate_lattice(&m, d0, f0, 100_000).unwrap();
            assert_eq!(h.node_count(), oracle_count, "f0 {f0}");
            h.check_axioms().unwrap();
            let (lo, hi) = h.extremes();
            // Greedy fixpoints agree with the diagram extremes.
            assert_eq!(schnyder::lattice::minimum(&h.reduced, d0), h.nodes[lo]);
            assert_eq!(schnyder::lattice::maximum(&h.reduced, d0), h.nodes[hi]);
            // The root reduced face is counterclockwise in the maximum and
            // clockwise in the minimum (when it has any non-rigid boundary).
            if !h.reduced.faces[h.reduced.root].boundary.is_zero() {
                assert!(boundary_directed(&h.reduced, &h.nodes[hi], h.reduced.root, FlipDirection::Up));
                assert!(boundary_directed(&h.reduced, &h.nodes[lo], h.reduced.root, FlipDirection::Down));
                maxtilde_checked += 1;
            }
            // Distributivity over all node triples for small lattices.
            if h.node_count() <= 64 {
                for a in &h.nodes {
                    for b in &h.nodes {
                        for cc in &h.nodes {
                            let lhs = meet(&m, f0, a, &join(&m, f0, b, cc).unwrap()).unwrap();
                            let rhs = join(
                                &m,
                                f0,
                                &meet(&m, f0, a, b).unwrap(),
                                &meet(&m, f0, a, cc).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(lhs, rhs);
                            // Meet/join agree with the diagram order.
                            assert_eq!(leq(&m, f0, &lhs, a), Some(true));
                        }
                    }
                }
            }
        }
    }
    assert!(maxtilde_checked > 0, "the extremal-face check must not be vacuous");
    // Largest class, one f0: axioms and oracle count at scale.
    let (size, d0) = largest;
    let h = enumerate_lattice(&m, d0, 0, 100_000).unwrap();
    assert_eq!(h.node_count(), *size);
    h.check_axioms().unwrap();
    finish(5, "grid3x3 lattice axioms", started, Duration::from_secs(120));
}

#[test]
fn criterion_6_toroidal_construction() {
    let started = Instant::now();
    for a in 3..=6 {
        for b in 3..=6 {
            let m = fixtures::grid(a, b);
            let r = schnyderize(&m, 0, 0, EnumerationBudget::default()).unwrap();
            let c = complete(&m);
            let basis = tree_cotree_basis(&m);
            let check = c.is_schnyder_orientation(&r.completion_orientation, &basis);
            assert!(check.schnyder, "grid {a}x{b}");
            // 1-edge, 1-vertex, 1-face labeling.
            let cls = classify(&c, &r.labeling).unwrap();
            assert!(cls.edge_types.iter().all(|t| t.type_index() == 1), "grid {a}x{b}");
            assert!(cls.vertex_types.iter().all(|&t| t == 1), "grid {a}x{b}");
            assert!(cls.face_types.iter().all(|&t| t == 1), "grid {a}x{b}");
            // Certificate of two non-weakly-homologous middle cycles.
            let (c1, c2) = &r.certificate;
            assert!(!weakly_homologous(&m, &basis, c1, c2), "grid {a}x{b}");
            // Every middle cycle of the final orientation: gamma exactly 0
            // and non-contractible.
            for cy in schnyder::toroidal::middle_cycles(&m, &r.orientation) {
                assert_eq!(c.gamma(&r.completion_orientation, &cy).unwrap(), 0);
                let mu = homology_coordinates(&m, &characteristic_flow(&m, &cy), &basis).unwrap();
                assert!(mu.iter().any(|&x| x != 0), "grid {a}x{b}: contractible middle cycle");
            }
        }
    }
    finish(6, "schnyderize grids 3..6", started, Duration::from_secs(30));
}

#[test]
fn criterion_7_disk_cycle_law() {
    let started = Instant::now();
    let mut rng: u64 = 0x5eed;
    let mut next = move || {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        rng >> 11
    };
    let mut checked = 0u64;
    for (a, b) in [(3, 3), (4, 4), (5, 5), (4, 3)] {
        let m = fixtures::grid(a, b);
        let mut o = find_3_orientation(&m).unwrap();
        for round in 0..2 {
            if round == 1 {
                let reduced = schnyder::lattice::reduce(&m, &o, 0);
                o = schnyder::lattice::maximum(&reduced, &o);
            }
            for f in 0..m.face_count() {
                assert_eq!(disk_cycle_outflow(&m, &o, &m.facial_walk(f)).unwrap(), 0);
                checked += 1;
            }
            for _ in 0..60 {
                let Some(cy) = random_cycle(&m, &mut next) else { continue };
                match disk_cycle_outflow(&m, &o, &cy) {
                    Ok(count) => {
                        assert_eq!(count, cy.len() as i64 - 3, "k-3 violated on {:?}", cy.darts);
                        checked += 1;
                    }
                    Err(ToroidalError::NotContractible) => {}
                    Err(other) => panic!("{other}"),
                }
            }
        }
    }
    assert!(checked >= 100, "only {checked} contractible cycles sampled");
    finish(7, "disk-cycle k-3 law", started, Duration::from_secs(10));
}

fn random_cycle(map: &SurfaceMap, next: &mut impl FnMut() -> u64) -> Option<Walk> {
    'attempt: for _ in 0..300 {
        let start = (next() % map.vertex_count() as u64) as usize;
        let mut at = start;
        let mut visited = vec![start];
        let mut darts: Vec<Dart> = Vec::new();
        for _ in 0..map.dart_count() {
            let rot = map.rotation(at);
            let d = rot[(next() % rot.len() as u64) as usize];
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
fn criterion_8_crossing_classes() {
    let started = Instant::now();
    let m = fixtures::grid3x1();
    let c = complete(&m);
    let basis = tree_cotree_basis(&m);
    let wood_of = |o: &Orientation| {
        let lifted = c.lift_orientation(o);
        let l = c.extract_labeling(&lifted, 0, 0).unwrap();
        to_colored_wood(&c, &l).unwrap()
    };
    assert_eq!(crossing_class(&m, &wood_of(&fixtures::fig13())), CrossingClass::NotHalfCrossing);
    assert_eq!(crossing_class(&m, &wood_of(&fixtures::fig14())), CrossingClass::HalfCrossing);
    // Every half-crossing wood encountered across the example lattice has
    // type (0,0).
    let h = enumerate_lattice(&m, &fixtures::fig13(), 0, 1000).unwrap();
    let mut half_crossing = 0;
    for node in &h.nodes {
        let cc = crossing_class(&m, &wood_of(node));
        if cc != CrossingClass::NotHalfCrossing {
            half_crossing += 1;
            let gammas = c.is_schnyder_orientation(&c.lift_orientation(node), &basis).gammas;
            assert_eq!(gammas, vec![0, 0]);
        }
    }
    assert!(half_crossing > 0);
    finish(8, "crossing classification", started, Duration::from_secs(1));
}

#[test]
fn criterion_9_lattice_example_counts() {
    let started = Instant::now();
    // The worked example: exactly twenty woods in the lattice (via the CLI).
    let out = bin(&["lattice", "fixture:grid3x1", "--orientation", "fixture:fig14"]);
    assert_eq!(value_of(&out, "nodes"), "20");
    // And exactly two other Schnyder woods, both rigid singletons.
    let m = fixtures::grid3x1();
    let c = complete(&m);
    let basis = tree_cotree_basis(&m);
    let all = enumerate_alpha_orientations(&m, &[3, 3, 3], EnumerationBudget::default()).unwrap();
    let schnyder: Vec<Orientation> = all
        .into_iter()
        .filter(|o| c.is_schnyder_orientation(&c.lift_orientation(o), &basis).schnyder)
        .collect();
    assert_eq!(schnyder.len(), 22);
    let h = enumerate_lattice(&m, &fixtures::fig13(), 0, 1000).unwrap();
    let outside: Vec<&Orientation> =
        schnyder.iter().filter(|o| h.index_of(o).is_none()).collect();
    assert_eq!(outside.len(), 2);
    for o in outside {
        assert!(rigid_edge_flags(&m, o).iter().all(|&r| r));
        let singleton = enumerate_lattice(&m, o, 0, 10).unwrap();
        assert_eq!(singleton.node_count(), 1);
    }
    finish(9, "twenty woods plus two rigid singletons", started, Duration::from_secs(5));
}
