//! End-to-end checks of the binary: formats, exit codes, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schnyder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_schnyder"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn info_and_gen_round_trip() {
    let map_text = stdout(&run(&["gen", "grid", "4", "3"]));
    let out = run_stdin(&["info", "/dev/stdin"], &map_text);
    let text = stdout(&out);
    assert!(text.contains("n 12"));
    assert!(text.contains("m 36"));
    assert!(text.contains("f 24"));
    assert!(text.contains("genus 1"));
    assert!(text.contains("triangulation true"));
}

#[test]
fn gen_rejects_degenerate_grids() {
    for (a, b) in [(1, 1), (2, 3), (3, 2), (1, 5)] {
        let out = run(&["gen", "grid", &a.to_string(), &b.to_string()]);
        assert_eq!(out.status.code(), Some(2), "{a}x{b}");
    }
}

#[test]
fn validate_exit_codes() {
    assert!(run(&["validate", "fixture:grid3x1"]).status.success());
    // A loop on the sphere: contractible, exit 2.
    let sphere_loop = "darts 2\nedge 0 1\nvertex 0 1\n";
    let out = run_stdin(&["validate", "/dev/stdin"], sphere_loop);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("violations 1"));
    assert!(text.contains("violation loop 0"));
}

#[test]
fn parse_errors_name_lines() {
    let out = run_stdin(&["info", "/dev/stdin"], "darts 4\nedge 0 1\nedge 1 2\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn check_trivial_and_completion_file() {
    let out = stdout(&run(&["check", "fixture:one-vertex-torus", "--trivial"]));
    assert!(out.contains("schnyder true"), "{out}");
    // Emit the completion, orient everything out of the edge-vertices by
    // hand (the trivial orientation written as a file), and check it.
    let comp = stdout(&run(&["complete", "fixture:one-vertex-torus", "--emit-map"]));
    assert!(comp.contains("darts 16"));
    // Tail darts of the trivial orientation: the odd dart of every
    // completion edge (references point into the edge-vertex).
    let orient: String = (0..8).map(|e| format!("orient {}\n", 2 * e + 1)).collect();
    std::fs::write("/tmp/trivial-ovt.orient", orient).unwrap();
    let out = stdout(&run(&[
        "check",
        "fixture:one-vertex-torus",
        "--completion-orientation",
        "/tmp/trivial-ovt.orient",
    ]));
    assert!(out.contains("schnyder true"), "{out}");
}

#[test]
fn label_wood_pipeline() {
    let labeling = stdout(&run(&["label", "fixture:grid3x1", "--orientation", "fixture:fig13"]));
    assert_eq!(labeling.lines().count(), 18);
    std::fs::write("/tmp/fig13.angle", &labeling).unwrap();
    let wood = stdout(&run(&["wood", "fixture:grid3x1", "--labeling", "/tmp/fig13.angle"]));
    assert!(wood.contains("vertex-types 1 1 1"), "{wood}");
    assert!(wood.contains("face-types 1 1 1 1 1 1"), "{wood}");
    assert_eq!(wood.matches("type1").count(), 9);
    // DOT export of the wood.
    let dot = stdout(&run(&[
        "export-dot",
        "fixture:grid3x1",
        "--labeling",
        "/tmp/fig13.angle",
    ]));
    assert!(dot.starts_with("digraph wood {"));
    // Base color shift: same wood, permuted colors.
    let shifted = stdout(&run(&[
        "label",
        "fixture:grid3x1",
        "--orientation",
        "fixture:fig13",
        "--base",
        "1",
    ]));
    assert_ne!(labeling, shifted);
}

#[test]
fn schnyderize_outputs_are_deterministic_and_valid() {
    let a = stdout(&run(&["schnyderize", "fixture:grid3x3", "--seed", "11"]));
    let b = stdout(&run(&["schnyderize", "fixture:grid3x3", "--seed", "11"]));
    assert_eq!(a, b, "same seed, byte-identical output");
    assert!(a.contains("type 0 0"), "{a}");
    // Feed the orientation back through check.
    let orient: String = a.lines().filter(|l| l.starts_with("orient")).map(|l| format!("{l}\n")).collect();
    std::fs::write("/tmp/schnyderized.orient", &orient).unwrap();
    let out = stdout(&run(&[
        "check",
        "fixture:grid3x3",
        "--orientation",
        "/tmp/schnyderized.orient",
    ]));
    assert!(out.contains("schnyder true"), "{out}");
    // File output mode.
    let tmp = "/tmp/schnyderize-test";
    stdout(&run(&["schnyderize", "fixture:grid3x3", "--seed", "11", "--out-prefix", tmp]));
    let written = std::fs::read_to_string(format!("{tmp}.orient")).unwrap();
    assert_eq!(written, orient);
}

#[test]
fn lattice_budget_exit_code() {
    let out = run(&[
        "lattice",
        "fixture:grid3x1",
        "--orientation",
        "fixture:fig13",
        "--max-nodes",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lattice_dot_has_flip_labels() {
    let out = stdout(&run(&[
        "lattice",
        "fixture:grid3x1",
        "--orientation",
        "fixture:fig13",
        "--emit-dot",
    ]));
    assert!(out.contains("nodes 20"));
    assert!(out.contains("magenta="));
    assert!(out.contains("F~"));
}

#[test]
fn fixtures_listing_and_emission() {
    let list = stdout(&run(&["fixtures"]));
    for name in ["one-vertex-torus", "octagon", "fig5", "grid3x1"] {
        assert!(list.contains(name), "{list}");
    }
    let fig5 = stdout(&run(&["fixtures", "fig5"]));
    assert!(fig5.contains("# reconstructed: true"));
    assert!(fig5.contains("darts 6"));
    let fig13 = stdout(&run(&["fixtures", "fig13"]));
    assert!(fig13.contains("orient"));
}

#[test]
fn oracle_commands() {
    let out = stdout(&run(&[
        "oracle",
        "check",
        "fixture:fig5",
        "--orientation",
        "fixture:fig5-right",
    ]));
    assert!(out.contains("schnyder-exhaustive true"));
    let out = stdout(&run(&[
        "oracle",
        "partition",
        "fixture:grid3x1",
        "--orientation",
        "fixture:fig16",
        "--edges",
        "0,2",
    ]));
    // A single two-cycle (H0 forward, D0 backward) is vertical and not
    // 0-homologous: no partition into three homologous classes exists...
    // unless the two edges split one per class with the empty third; they
    // are not homologous to empty, so: none.
    assert!(out.contains("partition none"), "{out}");
    // Tiny budget: exit 3.
    let out = Command::new(env!("CARGO_BIN_EXE_schnyder"))
        .args(["oracle", "lattice", "fixture:grid3x1", "--orientation", "fixture:fig13"])
        .env("SCHNYDER_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn basis_and_homology_commands() {
    let out = stdout(&run(&["basis", "fixture:grid3x3"]));
    assert_eq!(out.matches("cycle ").count(), 2, "{out}");
    assert!(out.contains("leftover-edges"));
    // A facial flow is 0-homologous with zero coordinates.
    let flow = "flow 0 1\nflow 3 1\nflow 2 -1\n"; // boundary of one triangle
    std::fs::write("/tmp/face.flow", flow).unwrap();
    let out = run_stdin(&["homology", "/dev/stdin", "--flow", "/tmp/face.flow"], "");
    // /dev/stdin empty is not a map; use the fixture path instead.
    assert!(!out.status.success());
    let text = stdout(&run(&["homology", "fixture:grid3x1", "--flow", "/tmp/face.flow"]));
    // Whether this particular flow is 0-homologous depends on the chosen
    // edges; assert the contract instead: a verdict line plus either a
    // potential or a witness, and coordinates when it is a circulation.
    assert!(text.contains("zero-homologous"), "{text}");
    assert!(text.contains("potential") || text.contains("witness"), "{text}");
    // The zero flow: trivially 0-homologous, zero coordinates.
    std::fs::write("/tmp/zero.flow", "").unwrap();
    let text = stdout(&run(&["homology", "fixture:grid3x1", "--flow", "/tmp/zero.flow"]));
    assert!(text.contains("zero-homologous true"), "{text}");
    assert!(text.contains("coordinates 0 0"), "{text}");
    // A basis cycle: not 0-homologous, witness produced, unit coordinates.
    let basis_out = stdout(&run(&["basis", "fixture:grid3x1"]));
    let cycle_line = basis_out.lines().find(|l| l.starts_with("cycle ")).unwrap();
    let darts: Vec<usize> = cycle_line[6..].split(',').map(|t| t.parse().unwrap()).collect();
    let m = schnyder::fixtures::grid3x1();
    let mut per_edge = vec![0i64; m.edge_count()];
    for &d in &darts {
        let dart = schnyder::map::Dart(d);
        per_edge[m.edge_of(dart)] += if m.edge_ref(m.edge_of(dart)) == dart { 1 } else { -1 };
    }
    let flow_text: String = per_edge
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(e, v)| format!("flow {e} {v}\n"))
        .collect();
    std::fs::write("/tmp/basis.flow", flow_text).unwrap();
    let text = stdout(&run(&["homology", "fixture:grid3x1", "--flow", "/tmp/basis.flow"]));
    assert!(text.contains("zero-homologous false"), "{text}");
    assert!(text.contains("witness "), "{text}");
    assert!(text.contains("coordinates 1 0") || text.contains("coordinates 0 1"), "{text}");
}

#[test]
fn existence_search_counts() {
    // The worked example again, through a third computational route: the
    // full woods among all mod-3 orientations of the completion are exactly
    // the twenty-two Schnyder woods of the triangulation.
    let out = stdout(&run(&["oracle", "exists", "fixture:grid3x1"]));
    assert!(out.contains("schnyder-orientations 29"), "{out}");
    assert!(out.contains("woods 22"), "{out}");
    // The one-vertex triangulation: the trivial orientation is Schnyder but
    // not a wood; the two proper lifts are.
    let out = stdout(&run(&["oracle", "exists", "fixture:fig5"]));
    assert!(out.contains("schnyder-orientations 3"), "{out}");
    assert!(out.contains("woods 2"), "{out}");
    // Desk-scale genus-2 evidence: the octagon map carries nontrivial
    // woods, and so does its triangulation.
    let out = stdout(&run(&["oracle", "exists", "fixture:octagon"]));
    assert!(out.contains("woods 26"), "{out}");
    let out = stdout(&run(&["oracle", "exists", "fixture:octagon-tri"]));
    assert!(out.contains("woods 14"), "{out}");
}

#[test]
fn all_map_fixtures_pass_validation() {
    for name in ["one-vertex-torus", "octagon", "octagon-tri", "fig5", "grid3x1", "grid3x3"] {
        let out = run(&["validate", &format!("fixture:{name}")]);
        assert!(out.status.success(), "{name}");
    }
}
