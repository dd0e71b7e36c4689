//! Command-line front end for maps on orientable surfaces and their
//! Schnyder structures. Output is line-oriented `key value` text; exit code
//! 0 on success, 2 on validation failure, 3 on budget exhaustion.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use schnyder::completion::{classify, complete, to_colored_wood, Completion};
use schnyder::fixtures;
use schnyder::homology::tree_cotree_basis;
use schnyder::lattice::{enumerate_lattice, LatticeError};
use schnyder::map::{Orientation, SurfaceMap};
use schnyder::oracle::{
    enumerate_homologous_orientations, partition_search, schnyder_check_exhaustive,
    EnumerationBudget, OracleError,
};
use schnyder::toroidal::{schnyderize, ToroidalError};

use schnyder_cli::{dot, formats, input};

/// Schnyder woods on orientable surfaces: construction, validation,
/// lattices of homologous orientations, exports.
#[derive(Parser)]
#[command(name = "schnyder", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exit code 3 marker.
#[derive(Debug)]
struct BudgetExhausted(String);

impl std::fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for BudgetExhausted {}

#[derive(Args)]
struct OrientationArg {
    /// Orientation of the base map (file or fixture:NAME); lifted to the
    /// completion where one is needed.
    #[arg(long, value_name = "SRC", conflicts_with_all = ["completion_orientation", "trivial"])]
    orientation: Option<String>,
    /// Orientation file over completion darts (see README for the dart
    /// layout).
    #[arg(long, value_name = "FILE", conflicts_with = "trivial")]
    completion_orientation: Option<String>,
    /// The all-type-0 Schnyder orientation of the completion.
    #[arg(long)]
    trivial: bool,
}

impl OrientationArg {
    /// Resolves to an orientation of the completion.
    fn completion_orientation(&self, map: &SurfaceMap, c: &Completion) -> Result<Orientation> {
        if self.trivial {
            return Ok(c.trivial_orientation());
        }
        if let Some(src) = &self.completion_orientation {
            let text = fs::read_to_string(src).with_context(|| format!("reading `{src}`"))?;
            return Ok(formats::parse_orientation(c.map(), &text)?);
        }
        if let Some(src) = &self.orientation {
            return Ok(c.lift_orientation(&input::load_orientation(map, src)?));
        }
        bail!("one of --orientation, --completion-orientation, --trivial is required");
    }

    fn base_orientation(&self, map: &SurfaceMap) -> Result<Orientation> {
        let src = self
            .orientation
            .as_ref()
            .ok_or_else(|| anyhow!("--orientation is required here"))?;
        input::load_orientation(map, src)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the standing assumptions: no contractible loops or double
    /// edges. Exit 2 if violations are found.
    Validate { map: String },
    /// Vertex, edge, face, genus counts.
    Info { map: String },
    /// Build the primal-dual completion and report its counts.
    Complete {
        map: String,
        /// Print the completion as a map file.
        #[arg(long)]
        emit_map: bool,
    },
    /// Schnyder characterization of an orientation of the completion:
    /// outdegree congruences and gamma of a homology basis.
    Check {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
        /// Also report gamma of these cycles (comma-separated darts).
        #[arg(long = "cycle", value_name = "D,D,...")]
        cycles: Vec<String>,
    },
    /// Extract the angle labeling of a Schnyder orientation.
    Label {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
        /// Completion face receiving the base color.
        #[arg(long, default_value_t = 0)]
        f0: usize,
        /// Base color at f0.
        #[arg(long, default_value_t = 0)]
        base: u8,
    },
    /// Read a colored wood off a labeling or an orientation.
    Wood {
        map: String,
        /// Labeling file (`angle d c` lines).
        #[arg(long, conflicts_with_all = ["orientation", "completion_orientation", "trivial"])]
        labeling: Option<String>,
        #[command(flatten)]
        orientation: OrientationArg,
        #[arg(long)]
        emit_dot: bool,
    },
    /// Gamma of explicit cycles under an orientation.
    Gamma {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
        #[arg(long = "cycle", value_name = "D,D,...", required = true)]
        cycles: Vec<String>,
    },
    /// Enumerate the lattice of orientations homologous to the given one.
    Lattice {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
        #[arg(long, default_value_t = 0)]
        f0: usize,
        /// Node cap (default from SCHNYDER_BUDGET or 100000).
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        emit_dot: bool,
    },
    /// Build a Schnyder wood of a toroidal triangulation.
    Schnyderize {
        map: String,
        /// Seed for tie-breaking among longest-prefix middle walks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reversal step budget (0 = ten times the edge count).
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Write `<prefix>.orient`, `<prefix>.angle` and `<prefix>.dot`
        /// instead of printing to stdout.
        #[arg(long)]
        out_prefix: Option<String>,
        #[arg(long)]
        emit_dot: bool,
    },
    /// Tree-cotree homology basis of the map.
    Basis { map: String },
    /// Homology class of a flow: zero-homology test, face potential or
    /// witness, and basis coordinates for circulations.
    Homology {
        map: String,
        /// Flow file (`flow e v` lines).
        #[arg(long)]
        flow: String,
    },
    /// Brute-force counterparts of the fast checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Generators for bundled map families.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
    /// Print a map (optionally with a wood) as DOT.
    ExportDot {
        map: String,
        /// Labeling file to color the edges.
        #[arg(long)]
        labeling: Option<String>,
    },
    /// List bundled fixtures, or print one.
    Fixtures {
        /// Print this fixture (map fixtures as map files, orientation
        /// fixtures as orientation files).
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive delta test over all generating closed dual walks.
    Check {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
    },
    /// Count orientations homologous to the given one by enumeration.
    Lattice {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
    },
    /// Exhaustive search for a partition of an oriented subgraph into three
    /// pairwise homologous classes.
    Partition {
        map: String,
        #[command(flatten)]
        orientation: OrientationArg,
        /// Comma-separated edge ids of the subgraph.
        #[arg(long, value_name = "E,E,...")]
        edges: String,
    },
    /// Existence search: enumerate the mod-3 orientations of the completion
    /// and count Schnyder orientations and full woods (every vertex and
    /// face of nonzero type).
    Exists { map: String },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Triangulated torus grid with a columns and b rows (a, b >= 3).
    Grid { a: usize, b: usize },
}

fn budget_from_env() -> EnumerationBudget {
    let mut budget = EnumerationBudget::default();
    if let Ok(v) = std::env::var("SCHNYDER_BUDGET") {
        if let Ok(n) = v.parse::<u64>() {
            budget.max_orientations = n;
        }
    }
    budget
}

fn max_nodes_default() -> usize {
    std::env::var("SCHNYDER_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(100_000)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<BudgetExhausted>() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn budget_err(what: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(BudgetExhausted(what.to_string()))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Validate { map } => {
            let m = input::load_map(&map)?;
            let violations = m.validate_assumptions();
            println!("violations {}", violations.len());
            for v in &violations {
                match v {
                    schnyder::map::Violation::ContractibleLoop { edge } => {
                        println!("violation loop {edge}")
                    }
                    schnyder::map::Violation::ContractibleParallelPair { edge_a, edge_b } => {
                        println!("violation parallel {edge_a} {edge_b}")
                    }
                }
            }
            if !violations.is_empty() {
                bail!("map violates the standing assumptions");
            }
        }
        Command::Info { map } => {
            let m = input::load_map(&map)?;
            println!("n {}", m.vertex_count());
            println!("m {}", m.edge_count());
            println!("f {}", m.face_count());
            println!("genus {}", m.genus());
            println!("triangulation {}", m.is_triangulation());
        }
        Command::Complete { map, emit_map } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            println!("n {}", c.map().vertex_count());
            println!("m {}", c.map().edge_count());
            println!("f {}", c.map().face_count());
            println!("genus {}", c.map().genus());
            if emit_map {
                print!("{}", formats::write_map(c.map()));
            }
        }
        Command::Check { map, orientation, cycles } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let o = orientation.completion_orientation(&m, &c)?;
            let basis = tree_cotree_basis(&m);
            let check = c.is_schnyder_orientation(&o, &basis);
            println!("mod3 {}", check.mod3);
            let type_str: Vec<String> = check.gammas.iter().map(|g| g.to_string()).collect();
            println!("type {}", type_str.join(" "));
            println!("schnyder {}", check.schnyder);
            for spec in &cycles {
                let cycle = input::parse_cycle(&m, spec)?;
                let g = c.gamma(&o, &cycle).map_err(|e| anyhow!("cycle {spec}: {e}"))?;
                println!("cycle-gamma {spec} {g}");
            }
        }
        Command::Label { map, orientation, f0, base } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let o = orientation.completion_orientation(&m, &c)?;
            if f0 >= c.map().face_count() {
                bail!("f0 {f0} out of range");
            }
            let l = c
                .extract_labeling(&o, f0, base)
                .map_err(|e| anyhow!("cannot extract labeling: {e}"))?;
            print!("{}", formats::write_labeling(&l));
        }
        Command::Wood { map, labeling, orientation, emit_dot } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let l = match labeling {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading `{path}`"))?;
                    formats::parse_labeling(&m, &text)?
                }
                None => {
                    let o = orientation.completion_orientation(&m, &c)?;
                    c.extract_labeling(&o, 0, 0).map_err(|e| anyhow!("cannot extract labeling: {e}"))?
                }
            };
            let wood = to_colored_wood(&c, &l).map_err(|e| anyhow!("not a wood: {e}"))?;
            let cls = classify(&c, &l).map_err(|e| anyhow!("{e}"))?;
            for (e, kind) in wood.edges.iter().enumerate() {
                match *kind {
                    schnyder::completion::EdgeType::Type0 { color } => println!("wood {e} type0 {color}"),
                    schnyder::completion::EdgeType::Type1 { color, tail_dart } => {
                        println!("wood {e} type1 {color} {tail_dart}")
                    }
                    schnyder::completion::EdgeType::Type2 { color_ref, color_alpha } => {
                        println!("wood {e} type2 {color_ref} {color_alpha}")
                    }
                }
            }
            let vt: Vec<String> = cls.vertex_types.iter().map(|t| t.to_string()).collect();
            let ft: Vec<String> = cls.face_types.iter().map(|t| t.to_string()).collect();
            println!("vertex-types {}", vt.join(" "));
            println!("face-types {}", ft.join(" "));
            if emit_dot {
                print!("{}", dot::wood_dot(&m, &wood));
            }
        }
        Command::Gamma { map, orientation, cycles } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let o = orientation.completion_orientation(&m, &c)?;
            for spec in &cycles {
                let cycle = input::parse_cycle(&m, spec)?;
                let g = c.gamma(&o, &cycle).map_err(|e| anyhow!("cycle {spec}: {e}"))?;
                println!("cycle-gamma {spec} {g}");
            }
        }
        Command::Lattice { map, orientation, f0, max_nodes, emit_dot } => {
            let m = input::load_map(&map)?;
            let o = orientation.base_orientation(&m)?;
            if f0 >= m.face_count() {
                bail!("f0 {f0} out of range");
            }
            let cap = max_nodes.unwrap_or_else(max_nodes_default);
            let h = match enumerate_lattice(&m, &o, f0, cap) {
                Ok(h) => h,
                Err(LatticeError::BudgetExceeded { nodes }) => {
                    return Err(budget_err(format!("lattice exceeds {nodes} nodes")));
                }
                Err(e) => bail!("{e}"),
            };
            let rigid = h.reduced.rigid.iter().filter(|&&r| r).count();
            println!("nodes {}", h.node_count());
            println!("arcs {}", h.arcs.len());
            println!("rigid-edges {rigid}");
            println!("reduced-faces {}", h.reduced.faces.len());
            let (lo, hi) = h.extremes();
            println!("min-index {lo}");
            println!("max-index {hi}");
            if emit_dot {
                print!("{}", dot::lattice_dot(&m, &h));
            }
        }
        Command::Schnyderize { map, seed, steps, out_prefix, emit_dot } => {
            let m = input::load_map(&map)?;
            let r = match schnyderize(&m, seed, steps, budget_from_env()) {
                Ok(r) => r,
                Err(ToroidalError::IterationBudgetExceeded) => {
                    return Err(budget_err("schnyderize budget exceeded"));
                }
                Err(e) => bail!("{e}"),
            };
            let basis = tree_cotree_basis(&m);
            let c = complete(&m);
            let check = c.is_schnyder_orientation(&r.completion_orientation, &basis);
            println!("seed {seed}");
            println!("iterations {}", r.iterations);
            println!("fallback {}", r.used_fallback);
            let type_str: Vec<String> = check.gammas.iter().map(|g| g.to_string()).collect();
            println!("type {}", type_str.join(" "));
            let fmt_walk = |w: &schnyder::map::Walk| -> String {
                w.darts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            };
            println!("certificate-a {}", fmt_walk(&r.certificate.0));
            println!("certificate-b {}", fmt_walk(&r.certificate.1));
            let orient = formats::write_orientation(&m, &r.orientation);
            let angles = formats::write_labeling(&r.labeling);
            let wood_dot = dot::wood_dot(&m, &r.wood);
            match out_prefix {
                Some(prefix) => {
                    fs::write(format!("{prefix}.orient"), orient)?;
                    fs::write(format!("{prefix}.angle"), angles)?;
                    fs::write(format!("{prefix}.dot"), wood_dot)?;
                    println!("written {prefix}.orient {prefix}.angle {prefix}.dot");
                }
                None => {
                    print!("{orient}{angles}");
                    if emit_dot {
                        print!("{wood_dot}");
                    }
                }
            }
        }
        Command::Basis { map } => {
            let m = input::load_map(&map)?;
            let basis = tree_cotree_basis(&m);
            let fmt = |edges: &[usize]| {
                edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            };
            println!("tree-edges {}", fmt(&basis.tree_edges));
            println!("cotree-edges {}", fmt(&basis.cotree_edges));
            println!("leftover-edges {}", fmt(&basis.leftover_edges));
            for c in &basis.cycles {
                let darts: Vec<String> = c.darts.iter().map(|d| d.to_string()).collect();
                println!("cycle {}", darts.join(","));
            }
        }
        Command::Homology { map, flow } => {
            let m = input::load_map(&map)?;
            let text = fs::read_to_string(&flow).with_context(|| format!("reading `{flow}`"))?;
            let z = formats::parse_flow(&m, &text)?;
            match schnyder::homology::face_potential(&m, &z, 0) {
                Ok(pot) => {
                    println!("zero-homologous true");
                    let lambda: Vec<String> = pot.lambda.iter().map(|l| l.to_string()).collect();
                    println!("potential {}", lambda.join(" "));
                }
                Err(schnyder::homology::HomologyError::NotZeroHomologous { witness }) => {
                    println!("zero-homologous false");
                    let darts: Vec<String> = witness.darts.iter().map(|d| d.to_string()).collect();
                    println!("witness {}", darts.join(","));
                }
                Err(e) => bail!("{e}"),
            }
            if schnyder::homology::is_circulation(&m, &z) {
                let basis = tree_cotree_basis(&m);
                let mu = schnyder::homology::homology_coordinates(&m, &z, &basis)
                    .map_err(|e| anyhow!("{e}"))?;
                let mu: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
                println!("coordinates {}", mu.join(" "));
            } else {
                println!("circulation false");
            }
        }
        Command::Oracle { command } => run_oracle(command)?,
        Command::Gen { command } => match command {
            GenCommand::Grid { a, b } => {
                if a < 3 || b < 3 {
                    bail!("degenerate grid: need a >= 3 and b >= 3 to rule out contractible short cycles");
                }
                let m = fixtures::grid(a, b);
                let mut out = String::new();
                writeln!(out, "# torus grid {a}x{b}")?;
                out.push_str(&formats::write_map(&m));
                print!("{out}");
            }
        },
        Command::ExportDot { map, labeling } => {
            let m = input::load_map(&map)?;
            match labeling {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading `{path}`"))?;
                    let l = formats::parse_labeling(&m, &text)?;
                    let c = complete(&m);
                    let wood = to_colored_wood(&c, &l).map_err(|e| anyhow!("not a wood: {e}"))?;
                    print!("{}", dot::wood_dot(&m, &wood));
                }
                None => print!("{}", dot::map_dot(&m)),
            }
        }
        Command::Fixtures { name } => match name {
            None => {
                for n in fixtures::map_fixture_names() {
                    println!("map {n}");
                }
                for n in fixtures::orientation_fixture_names() {
                    println!("orientation {n}");
                }
            }
            Some(name) => {
                if let Some(m) = fixtures::map_by_name(&name) {
                    println!("# fixture: {name}");
                    if name.starts_with("fig") {
                        println!("# reconstructed: true");
                    }
                    print!("{}", formats::write_map(&m));
                } else if let Some((m, o)) = fixtures::orientation_by_name(&name) {
                    println!("# fixture: {name}");
                    println!("# reconstructed: true");
                    println!("# map fixture: {}", if name.starts_with("fig5") { "fig5" } else { "grid3x1" });
                    print!("{}", formats::write_orientation(&m, &o));
                } else {
                    bail!("unknown fixture `{name}`");
                }
            }
        },
    }
    Ok(())
}

fn run_oracle(command: OracleCommand) -> Result<()> {
    match command {
        OracleCommand::Check { map, orientation } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let o = orientation.completion_orientation(&m, &c)?;
            println!("schnyder-exhaustive {}", schnyder_check_exhaustive(&c, &o));
        }
        OracleCommand::Lattice { map, orientation } => {
            let m = input::load_map(&map)?;
            let o = orientation.base_orientation(&m)?;
            let all = enumerate_homologous_orientations(&m, &o, budget_from_env())
                .map_err(|OracleError::BudgetExceeded { what }| budget_err(what))?;
            println!("nodes {}", all.len());
        }
        OracleCommand::Partition { map, orientation, edges } => {
            let m = input::load_map(&map)?;
            let o = orientation.base_orientation(&m)?;
            let edges: Vec<usize> = edges
                .split(',')
                .map(|tok| {
                    let e: usize = tok.trim().parse().with_context(|| format!("bad edge `{tok}`"))?;
                    if e >= m.edge_count() {
                        bail!("edge {e} out of range");
                    }
                    Ok(e)
                })
                .collect::<Result<Vec<_>>>()?;
            let found = partition_search(&m, &o, &edges, budget_from_env())
                .map_err(|OracleError::BudgetExceeded { what }| budget_err(what))?;
            match found {
                Some(classes) => {
                    for (i, class) in classes.iter().enumerate() {
                        let ids: Vec<String> = class.iter().map(|e| e.to_string()).collect();
                        println!("partition T{i} {}", ids.join(","));
                    }
                }
                None => println!("partition none"),
            }
        }
        OracleCommand::Exists { map } => {
            let m = input::load_map(&map)?;
            let c = complete(&m);
            let basis = tree_cotree_basis(&m);
            let mut mod3 = 0u64;
            let mut schnyder = 0u64;
            let mut woods = 0u64;
            schnyder::oracle::for_each_mod3_orientation(&c, budget_from_env(), |o| {
                mod3 += 1;
                if !c.is_schnyder_orientation(o, &basis).schnyder {
                    return;
                }
                schnyder += 1;
                let l = c.extract_labeling(o, 0, 0).expect("schnyder");
                if to_colored_wood(&c, &l).is_ok() {
                    woods += 1;
                }
            })
            .map_err(|OracleError::BudgetExceeded { what }| budget_err(what))?;
            println!("mod3-orientations {mod3}");
            println!("schnyder-orientations {schnyder}");
            println!("woods {woods}");
        }
    }
    Ok(())
}
