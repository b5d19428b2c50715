//! `ncg`: command-line verification suite for the dihedral-group-algebra
//! toolkit. Exit codes: 0 pass, 1 pairing-table mismatch, 2 verification
//! failure, 3 malformed input.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncg_core::cyclic::{
    b1, cochain0_to_json, cochain1_from_json, cochain1_to_json, coboundary_feasible, make_psi,
    make_psi_k, pair0, s0, solve_1coboundary, solve_2coboundary_psik, Cochain0, Feasibility,
};
use ncg_core::fredholm::{
    chern_pair_odd, pairing_table, verify_module, ModuleName, Verdict, EXPECTED_TABLE,
};
use ncg_core::group::{are_conjugate_bounded, dihedral_ball, dmul, DihedralElement};
use ncg_core::homotopy::homotopy_report;
use ncg_core::operator::Window;
use ncg_core::ring::{projection, ring_star, RingElement};
use ncg_core::{Error, GroupTag, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Parser)]
#[command(name = "ncg", about = "Exact verification suite for dihedral group algebra K-homology")]
struct Cli {
    /// Lattice window radius N
    #[arg(long, global = true, env = "NCG_DEFAULT_WINDOW", default_value_t = 32)]
    window: u32,
    /// Word-length bound for group-ball computations
    #[arg(long, global = true, default_value_t = 12)]
    word_bound: u64,
    /// Chern powers checked for even pairings (comma-separated; give this
    /// flag before the subcommand)
    #[arg(long = "k", value_delimiter = ',', default_values_t = [1u32, 2u32])]
    k_list: Vec<u32>,
    /// Tolerance for float-mode checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed echoed into reports for reproducibility of property suites
    #[arg(long, global = true, default_value_t = 20240817)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the 3x3 pairing table of the even modules with the projections
    Table,
    /// Structural validation of a named Fredholm module
    Verify {
        module: String,
        /// Restrict the generator set (e.g. --restrict U)
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Cyclic cochain operations
    Cyclic {
        #[command(subcommand)]
        sub: CyclicCmd,
    },
    /// Odd pairing of a module with a unitary
    Index { module: String, unitary: String },
    /// Run the plane-lattice homotopy report
    Homotopy {
        /// Number of grid steps between t = 0 and t = 1
        #[arg(long, default_value_t = 10)]
        steps: u32,
    },
    /// Partition the dihedral ball into conjugacy classes
    Conjugacy {
        #[arg(long)]
        max_length: u64,
    },
}

#[derive(Subcommand)]
enum CyclicCmd {
    /// Solve b0(psi) = phi for a structured 1-cocycle (JSON from file/stdin)
    Solve1 {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Explicit primitive of the suspended psi_k
    Spsik {
        #[arg(long)]
        k: i64,
        /// The free scalar c_k (compact form, e.g. "1/2")
        #[arg(long, default_value = "0")]
        free: String,
    },
    /// Window feasibility of b1(phi) = target for a named suspension target
    Feasible {
        /// spsi0 | spsi1 | spsi2 | spsik:<k> | zero
        #[arg(long)]
        target: String,
    },
    /// Evaluate a distinguished trace on a projection
    Pair0 {
        /// 0 | 1 | 2 | k:<nonzero integer>
        #[arg(long)]
        psi: String,
        #[arg(long)]
        proj: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli))
}

fn config_json(cli: &Cli) -> Value {
    json!({
        "window": cli.window,
        "word_bound": cli.word_bound,
        "k_list": cli.k_list,
        "tolerance": cli.tolerance,
        "seed": cli.seed,
    })
}

fn run(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Table => cmd_table(cli),
        Command::Verify { module, restrict } => cmd_verify(cli, module, restrict.as_deref()),
        Command::Cyclic { sub } => cmd_cyclic(cli, sub),
        Command::Index { module, unitary } => cmd_index(cli, module, unitary),
        Command::Homotopy { steps } => cmd_homotopy(cli, *steps),
        Command::Conjugacy { max_length } => cmd_conjugacy(cli, *max_length),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BadInput(_)
                | Error::BadRational(_)
                | Error::GroupMismatch
                | Error::NotAntisymmetric
                | Error::NotATrace
                | Error::NotAProjection
                | Error::NotAUnitary
                | Error::ZeroK => 3,
                _ => 2,
            }
        }
    }
}

// --- table ----------------------------------------------------------------

fn cmd_table(cli: &Cli) -> ncg_core::Result<u8> {
    let table = pairing_table(cli.window, &cli.k_list)?;
    let matches = table == EXPECTED_TABLE;
    match cli.format {
        Format::Json => {
            let diffs: Vec<Value> = diff_cells(&table)
                .into_iter()
                .map(|(i, j, got, want)| json!({"row": i, "col": j, "got": got, "want": want}))
                .collect();
            print_json(&json!({
                "config": config_json(cli),
                "rows": ["w0", "w1", "w2"],
                "cols": ["1", "P1", "P2"],
                "table": table,
                "matches": matches,
                "diffs": diffs,
            }));
        }
        Format::Csv => {
            println!("module,1,P1,P2");
            for (name, row) in ["w0", "w1", "w2"].iter().zip(table.iter()) {
                println!("{name},{},{},{}", row[0], row[1], row[2]);
            }
        }
        Format::Md => {
            println!("| module | [1] | [P1] | [P2] |");
            println!("|--------|-----|------|------|");
            for (name, row) in ["w0", "w1", "w2"].iter().zip(table.iter()) {
                println!("| {name} | {} | {} | {} |", row[0], row[1], row[2]);
            }
            if !matches {
                for (i, j, got, want) in diff_cells(&table) {
                    println!("mismatch at ({i},{j}): got {got}, want {want}");
                }
            }
        }
    }
    Ok(if matches { 0 } else { 1 })
}

fn diff_cells(table: &[[i64; 3]; 3]) -> Vec<(usize, usize, i64, i64)> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if table[i][j] != EXPECTED_TABLE[i][j] {
                out.push((i, j, table[i][j], EXPECTED_TABLE[i][j]));
            }
        }
    }
    out
}

// --- verify ---------------------------------------------------------------

fn cmd_verify(cli: &Cli, module: &str, restrict: Option<&str>) -> ncg_core::Result<u8> {
    let name = ModuleName::parse(module)
        .ok_or_else(|| Error::BadInput(format!("unknown module {module}")))?;
    let restrict_vec: Option<Vec<&str>> = restrict.map(|r| r.split(',').collect());
    let report = verify_module(name, cli.window, restrict_vec.as_deref())?;
    match cli.format {
        Format::Json => print_json(&report.to_json()),
        _ => {
            println!("module {} -> {:?}", name.as_str(), report.verdict);
            for c in &report.checks {
                println!(
                    "  [{}] {}: {}",
                    if c.pass { "ok" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
    }
    Ok(match report.verdict {
        Verdict::Valid | Verdict::Degenerate => 0,
        Verdict::Violations => 2,
    })
}

// --- cyclic ---------------------------------------------------------------

fn read_input(path: Option<&PathBuf>) -> ncg_core::Result<Value> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::BadInput(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("malformed JSON: {e}")))
}

fn parse_psi(spec: &str) -> ncg_core::Result<Cochain0> {
    match spec {
        "0" => Ok(make_psi(0)),
        "1" => Ok(make_psi(1)),
        "2" => Ok(make_psi(2)),
        other => {
            let k = other
                .strip_prefix("k:")
                .and_then(|s| s.parse::<i64>().ok())
                .ok_or_else(|| Error::BadInput(format!("bad psi spec {other}")))?;
            make_psi_k(k)
        }
    }
}

fn cmd_cyclic(cli: &Cli, sub: &CyclicCmd) -> ncg_core::Result<u8> {
    match sub {
        CyclicCmd::Solve1 { input } => {
            let phi = cochain1_from_json(&read_input(input.as_ref())?)?;
            let psi = solve_1coboundary(&phi, cli.word_bound)?;
            print_json(&json!({
                "psi": cochain0_to_json(&psi),
                "residual_zero": true,
                "word_bound": cli.word_bound,
            }));
            Ok(0)
        }
        CyclicCmd::Spsik { k, free } => {
            let free = Scalar::from_compact_str(free)?;
            let phi = solve_2coboundary_psik(*k, free)?;
            let target = s0(&make_psi_k(*k)?, cli.word_bound)?;
            let lhs = b1(&phi);
            let ball = dihedral_ball(cli.word_bound);
            let mut residual_zero = true;
            'outer: for &x in &ball {
                for &y in &ball {
                    for &z in &ball {
                        if lhs.eval(x, y, z) != target.eval(x, y, z) {
                            residual_zero = false;
                            break 'outer;
                        }
                    }
                }
            }
            print_json(&json!({
                "k": k,
                "phi": cochain1_to_json(&phi, Some(cli.word_bound)),
                "residual_zero": residual_zero,
                "word_bound": cli.word_bound,
            }));
            Ok(if residual_zero { 0 } else { 2 })
        }
        CyclicCmd::Feasible { target } => {
            let target_cochain = match target.as_str() {
                "zero" => ncg_core::cyclic::Cochain2::Raw(Default::default()),
                "spsi0" => s0(&make_psi(0), cli.word_bound)?,
                "spsi1" => s0(&make_psi(1), cli.word_bound)?,
                "spsi2" => s0(&make_psi(2), cli.word_bound)?,
                other => {
                    let k = other
                        .strip_prefix("spsik:")
                        .and_then(|s| s.parse::<i64>().ok())
                        .ok_or_else(|| Error::BadInput(format!("bad target {other}")))?;
                    s0(&make_psi_k(k)?, cli.word_bound)?
                }
            };
            match coboundary_feasible(&target_cochain, cli.word_bound) {
                Feasibility::Feasible(phi) => {
                    print_json(&json!({
                        "target": target,
                        "feasible": true,
                        "phi": cochain1_to_json(&phi, Some(cli.word_bound)),
                        "word_bound": cli.word_bound,
                    }));
                }
                Feasibility::Infeasible => {
                    print_json(&json!({
                        "target": target,
                        "feasible": false,
                        "certificate": "exact elimination found an inconsistent equation",
                        "word_bound": cli.word_bound,
                    }));
                }
            }
            Ok(0)
        }
        CyclicCmd::Pair0 { psi, proj } => {
            if *proj > 2 {
                return Err(Error::BadInput(format!("projection index {proj} not in 0..=2")));
            }
            let value = pair0(&parse_psi(psi)?, &projection(*proj))?;
            print_json(&json!({
                "psi": psi,
                "proj": proj,
                "value": value.to_compact_string(),
            }));
            Ok(0)
        }
    }
}

// --- index ----------------------------------------------------------------

fn parse_unitary(name: ModuleName, spec: &str) -> ncg_core::Result<RingElement> {
    let base = match (name.group_tag(), spec) {
        (_, "1") => RingElement::one(name.group_tag()),
        // on the circle subalgebra the class generator V is realized by S
        (GroupTag::Dihedral, "V" | "S") => RingElement::s(),
        (GroupTag::Dihedral, "V*" | "S*") => ring_star(&RingElement::s()),
        (GroupTag::Semidirect, "V") => RingElement::v(),
        (GroupTag::Semidirect, "V*") => ring_star(&RingElement::v()),
        (GroupTag::Semidirect, "U") => RingElement::u(),
        (GroupTag::Semidirect, "U*") => ring_star(&RingElement::u()),
        _ => {
            return Err(Error::BadInput(format!(
                "unknown unitary {spec} for module {}",
                name.as_str()
            )))
        }
    };
    Ok(base)
}

fn cmd_index(cli: &Cli, module: &str, unitary: &str) -> ncg_core::Result<u8> {
    let name = ModuleName::parse(module)
        .ok_or_else(|| Error::BadInput(format!("unknown module {module}")))?;
    let u = parse_unitary(name, unitary)?;
    let result = chern_pair_odd(name, &u, cli.window)?;
    match cli.format {
        Format::Json => print_json(&json!({
            "config": config_json(cli),
            "module": name.as_str(),
            "unitary": unitary,
            "pairing": result.to_json(unitary),
        })),
        _ => println!("<{}, [{}]> = {}", name.as_str(), unitary, result.value),
    }
    Ok(if result.stable { 0 } else { 2 })
}

// --- homotopy ---------------------------------------------------------------

fn cmd_homotopy(cli: &Cli, steps: u32) -> ncg_core::Result<u8> {
    let report = homotopy_report(steps, Window::plane(cli.window), cli.tolerance)?;
    match cli.format {
        Format::Csv => {
            println!("radius,v_tail,u_tail");
            for row in &report.tail_decay {
                println!("{},{},{}", row.radius, row.v_tail, row.u_tail);
            }
        }
        _ => print_json(&report.to_json()),
    }
    Ok(if report.pass { 0 } else { 2 })
}

// --- conjugacy --------------------------------------------------------------

fn cmd_conjugacy(_cli: &Cli, max_length: u64) -> ncg_core::Result<u8> {
    let ball = dihedral_ball(max_length);
    // conjugators of twice the class bound suffice for these classes
    let conj_bound = max_length + 2;
    let mut classes: Vec<Vec<DihedralElement>> = Vec::new();
    for &g in &ball {
        match classes
            .iter_mut()
            .find(|cls| are_conjugate_bounded(cls[0], g, conj_bound))
        {
            Some(cls) => cls.push(g),
            None => classes.push(vec![g]),
        }
    }
    // sanity: conjugating by S and e never leaves the partition
    let gens = [DihedralElement::S, DihedralElement::E];
    let closed = classes.iter().all(|cls| {
        cls.iter().all(|&g| {
            gens.iter().all(|&k| {
                let h = dmul(dmul(k, g), ncg_core::group::dinv(k));
                !ball.contains(&h) || cls.contains(&h)
            })
        })
    });
    print_json(&json!({
        "max_length": max_length,
        "class_count": classes.len(),
        "closed_under_generator_conjugation": closed,
        "classes": classes.iter().map(|cls| {
            cls.iter().map(|g| json!([g.shift, i64::from(g.flip)])).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    }));
    Ok(if closed { 0 } else { 2 })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}
