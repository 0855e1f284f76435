use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use robustflow::design::{evaluate_design, protection_spent, solve_design};
use robustflow::flow::{solve_rf, solve_rf_budgeted, BreakpointValue, RfOptions, SearchMode};
use robustflow::format::{
    detect_kind, parse_adp, parse_mf, parse_rf, parse_solution, write_rf, InstanceKind, RfInstance,
};
use robustflow::interdiction::{evaluate, interdiction_cost_of_flow, robust_value, InterdictionPlan};
use robustflow::oracle::{
    brute_force_design, brute_force_rf, brute_force_rf_budgeted, enumerate_universe, DEFAULT_PATH_CAP,
};
use robustflow::reductions::{adp_to_protect, evaluate_with_increase, mf_to_rf, ProtectStrategy};
use robustflow::{Ext, Network, PathFlow, Rational, Scalar};
use sha2::{Digest, Sha256};

mod report;

use report::{BreakpointRow, Failure, Report};

#[derive(Parser)]
#[command(name = "rflow", version, about = "Robust flows against a flow-stealing interdictor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON report instead of text lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal robust flow.
    SolveRf(SolveRfArgs),
    /// Optimal flow and interdiction costs when the flow player buys costs.
    SolveDesign(SolveDesignArgs),
    /// Greedy value of a flow, optionally with a plan or cost increases.
    Evaluate(EvaluateArgs),
    /// Build an rf instance from an mf or adp instance.
    GenReduction(GenArgs),
    /// Reference value by enumerating every path.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Arith {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Enumerate,
    Newton,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Rf,
    Budgeted,
    Design,
}

#[derive(clap::Args)]
struct SolveRfArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "float")]
    arith: Arith,
    #[arg(long, value_enum, default_value = "enumerate")]
    mode: Mode,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Cap the total protection price of the flow at B_F.
    #[arg(long)]
    budgeted: bool,
    /// Write the per-breakpoint table as CSV, by default next to the instance.
    #[arg(long, num_args = 0..=1, require_equals = true, value_name = "PATH")]
    report_breakpoints: Option<Option<PathBuf>>,
}

#[derive(clap::Args)]
struct SolveDesignArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "float")]
    arith: Arith,
}

#[derive(clap::Args)]
struct EvaluateArgs {
    instance: PathBuf,
    /// File with `x`, `z` and `cplus` lines.
    solution: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    arith: Arith,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: SourceKind,
    instance: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceKind {
    Mf,
    Adp,
}

#[derive(clap::Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "rf")]
    problem: Problem,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    path_cap: usize,
    #[arg(long, value_enum, default_value = "exact")]
    arith: Arith,
}

struct Input {
    text: String,
    digest: String,
}

fn read(path: &FsPath) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    Ok(Input { text, digest })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SolveRf(a) => match a.arith {
            Arith::Exact => solve_rf_cmd::<Rational>(a),
            Arith::Float => solve_rf_cmd::<f64>(a),
        },
        Command::SolveDesign(a) => match a.arith {
            Arith::Exact => solve_design_cmd::<Rational>(a),
            Arith::Float => solve_design_cmd::<f64>(a),
        },
        Command::Evaluate(a) => match a.arith {
            Arith::Exact => evaluate_cmd::<Rational>(a),
            Arith::Float => evaluate_cmd::<f64>(a),
        },
        Command::Oracle(a) => match a.arith {
            Arith::Exact => oracle_cmd::<Rational>(a),
            Arith::Float => oracle_cmd::<f64>(a),
        },
        Command::GenReduction(a) => return finish(gen_reduction_cmd(a, cli.json)),
    };
    finish(result.map(|r| if cli.json { r.to_json() + "\n" } else { r.to_text() }))
}

fn finish(result: Result<String, Failure>) -> ExitCode {
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("rflow: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn load<T: Scalar>(path: &FsPath) -> Result<(Input, RfInstance<T>), Failure> {
    let input = read(path)?;
    let inst = parse_rf(&input.text)?;
    Ok((input, inst))
}

/// Reported and re-evaluated values must agree, exactly for rationals.
fn verify<T: Scalar>(what: &str, reported: &T, recomputed: &T) -> Result<(), Failure> {
    let ok = if T::EXACT {
        reported == recomputed
    } else {
        let a = reported.to_f64().unwrap_or(f64::NAN);
        let b = recomputed.to_f64().unwrap_or(f64::NAN);
        (a - b).abs() <= 1e-6 * b.abs().max(1.0)
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Internal(format!(
            "{what}: reported {reported}, greedy re-evaluation gives {recomputed}"
        )))
    }
}

fn price_of_flow<T: Scalar>(flow: &PathFlow<T>, net: &Network<T>) -> Ext<T> {
    let loads = flow.arc_loads(net.num_arcs());
    net.arcs()
        .iter()
        .zip(&loads)
        .filter(|(_, x)| !x.is_zero())
        .fold(Ext::zero(), |acc, (a, x)| acc.add(&a.price.scale(x)))
}

fn breakpoint_rows<T: Scalar>(values: &[BreakpointValue<T>]) -> Vec<BreakpointRow> {
    values
        .iter()
        .map(|v| BreakpointRow {
            arc_id: v.breakpoint.arc.map(|a| a.0 + 1),
            c_f: v.breakpoint.cost.to_token(),
            lambda: Some(v.breakpoint.lambda.to_token()),
            lp_value: v.lp_value.to_token(),
        })
        .collect()
}

fn write_csv(path: &FsPath, rows: &[BreakpointRow]) -> Result<(), Failure> {
    let io = |e: csv::Error| Failure::Input(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["arc_id", "c_f", "lambda", "lp_value"]).map_err(io)?;
    for r in rows {
        let arc = r.arc_id.map_or(String::new(), |a| a.to_string());
        let lambda = r.lambda.clone().unwrap_or_default();
        w.write_record([arc.as_str(), &r.c_f, &lambda, &r.lp_value])
            .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn solve_rf_cmd<T: Scalar>(args: &SolveRfArgs) -> Result<Report, Failure> {
    let (input, inst) = load::<T>(&args.instance)?;
    let (net, budgets) = (&inst.network, &inst.budgets);
    let options = RfOptions {
        mode: match args.mode {
            Mode::Enumerate => SearchMode::Enumerate,
            Mode::Newton => SearchMode::Newton,
        },
        threads: args.threads as usize,
    };
    let start = Instant::now();
    let sol = if args.budgeted {
        solve_rf_budgeted(net, budgets, options)?
    } else {
        solve_rf(net, budgets, options)?
    };
    let elapsed = start.elapsed().as_secs_f64();

    sol.flow
        .check_feasible(net)
        .map_err(|e| Failure::Internal(format!("solver flow infeasible: {e}")))?;
    verify(
        "robust value",
        &sol.robust_value,
        &evaluate(&sol.flow, net, &budgets.interdictor)?,
    )?;
    let price = price_of_flow(&sol.flow, net);
    if args.budgeted {
        let bf = budgets.flow_player.clone().expect("checked by solver");
        let within = price.finite().is_some_and(|p| {
            p.approx_le(&bf) || (!T::EXACT && p.to_f64() <= bf.to_f64().map(|b| b + 1e-6 * b.abs().max(1.0)))
        });
        if !within {
            return Err(Failure::Internal(format!("flow price {price} exceeds B_F {bf}")));
        }
    }

    let solver = if args.budgeted { "rf-budgeted" } else { "rf" };
    let mut report = Report::new("solve-rf", solver, &input.digest, &sol.robust_value);
    report.mode = Some(format!("{:?}", options.mode).to_lowercase());
    report.wall_time_s = elapsed;
    match &sol.breakpoint {
        Some(bp) => {
            report.detail("lambda", bp.lambda.to_token());
            report.detail("c_f", bp.cost.to_token());
            if let Some(a) = bp.arc {
                report.detail("breakpoint-arc", a);
            }
        }
        None => report.detail("lambda", "none"),
    }
    report.detail("lp-value", sol.lp_value.to_token());
    report.detail("flow-value", sol.flow.value().to_token());
    report.detail("fully-interdictable", sol.fully_interdictable);
    if args.budgeted {
        report.detail("flow-price", price.to_token());
    }
    report.breakpoints = breakpoint_rows(&sol.breakpoints);
    if let Some(target) = &args.report_breakpoints {
        let path = target
            .clone()
            .unwrap_or_else(|| args.instance.with_extension("breakpoints.csv"));
        write_csv(&path, &report.breakpoints)?;
        report.breakpoints_csv = Some(path.display().to_string());
    }
    report.with_flow(&sol.flow);
    Ok(report)
}

fn solve_design_cmd<T: Scalar>(args: &SolveDesignArgs) -> Result<Report, Failure> {
    let (input, inst) = load::<T>(&args.instance)?;
    let (net, budgets) = (&inst.network, &inst.budgets);
    let start = Instant::now();
    let sol = solve_design(net, budgets)?;
    let elapsed = start.elapsed().as_secs_f64();

    sol.flow
        .check_feasible(net)
        .map_err(|e| Failure::Internal(format!("solver flow infeasible: {e}")))?;
    verify(
        "design profit",
        &sol.profit,
        &evaluate_design(&sol.flow, &sol.costs, net, budgets)?,
    )?;
    let spent = protection_spent(&sol.flow, &sol.costs, net);
    let bf = budgets.flow_player.clone().expect("checked by solver");
    let within = match spent.finite() {
        Some(s) if T::EXACT => s.approx_le(&bf),
        Some(s) => s.to_f64() <= bf.to_f64().map(|b| b + 1e-6 * b.abs().max(1.0)),
        None => false,
    };
    if !within {
        return Err(Failure::Internal(format!(
            "protection spending {spent} exceeds B_F {bf}"
        )));
    }

    let mut report = Report::new("solve-design", "design", &input.digest, &sol.profit);
    report.wall_time_s = elapsed;
    report.detail("gamma", sol.gamma_of_flow.to_token());
    report.detail("spent", spent.to_token());
    report.detail("flow-value", sol.flow.value().to_token());
    report.with_flow(&sol.flow);
    report.with_costs(&sol.costs);
    Ok(report)
}

fn evaluate_cmd<T: Scalar>(args: &EvaluateArgs) -> Result<Report, Failure> {
    let (input, inst) = load::<T>(&args.instance)?;
    let (net, budgets) = (&inst.network, &inst.budgets);
    let sol_text = read(&args.solution)?;
    let sol = parse_solution(&sol_text.text, net)?;
    let start = Instant::now();
    sol.flow.check_feasible(net)?;

    let (value, eval_net) = match &sol.increase {
        Some(increase) => {
            let strategy = ProtectStrategy {
                flow: sol.flow.clone(),
                increase: increase.clone(),
            };
            let value = evaluate_with_increase(net, budgets, &strategy)?;
            let costs = net
                .arcs()
                .iter()
                .zip(increase)
                .map(|(a, c)| a.cost.add(&Ext::Finite(c.clone())))
                .collect();
            (value, net.with_costs(costs))
        }
        None => (evaluate(&sol.flow, net, &budgets.interdictor)?, net.clone()),
    };

    let mut report = Report::new("evaluate", "greedy", &input.digest, &value);
    report.detail("solution-digest", &sol_text.digest);
    report.detail("flow-value", sol.flow.value().to_token());
    report.detail(
        "interdiction-cost",
        interdiction_cost_of_flow(&sol.flow, &eval_net)?.to_token(),
    );
    report.detail("flow-price", price_of_flow(&sol.flow, net).to_token());
    if !sol.steals.is_empty() {
        let steals = sol
            .steals
            .iter()
            .map(|(a, p, v)| (*a, sol.paths[*p].clone(), v.clone()));
        let plan = InterdictionPlan::from_steals(&eval_net, steals)?;
        plan.check_feasible(&eval_net, &budgets.interdictor)?;
        let surviving = robust_value(&sol.flow, &plan)?;
        report.detail("plan-cost", plan.spent_budget().to_token());
        report.detail("plan-value", surviving.total_value.to_token());
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report.with_flow(&sol.flow);
    Ok(report)
}

fn oracle_cmd<T: Scalar>(args: &OracleArgs) -> Result<Report, Failure> {
    let (input, inst) = load::<T>(&args.instance)?;
    let (net, budgets) = (&inst.network, &inst.budgets);
    let start = Instant::now();
    let universe = enumerate_universe(net, args.path_cap)?;
    let mut report = match args.problem {
        Problem::Rf | Problem::Budgeted => {
            let (solver, bf) = match args.problem {
                Problem::Rf => ("brute-force-rf", brute_force_rf(net, budgets, &universe)?),
                _ => (
                    "brute-force-rf-budgeted",
                    brute_force_rf_budgeted(net, budgets, &universe)?,
                ),
            };
            let mut r = Report::new("oracle", solver, &input.digest, &bf.value);
            r.breakpoints = bf
                .per_breakpoint
                .iter()
                .map(|(c, v)| BreakpointRow {
                    arc_id: None,
                    c_f: c.to_token(),
                    lambda: match c {
                        Ext::Finite(c) => Some((T::one() / c.clone()).to_token()),
                        Ext::Infinite => Some(T::zero().to_token()),
                    },
                    lp_value: v.to_token(),
                })
                .collect();
            r.with_flow(&bf.flow);
            r
        }
        Problem::Design => {
            let value = brute_force_design(net, budgets, &universe)?;
            Report::new("oracle", "brute-force-design", &input.digest, &value)
        }
    };
    report.detail("paths", universe.len());
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

fn gen_reduction_cmd(args: &GenArgs, json: bool) -> Result<String, Failure> {
    let input = read(&args.instance)?;
    let kind = detect_kind(&input.text)?;
    let expected = match args.kind {
        SourceKind::Mf => InstanceKind::Mf,
        SourceKind::Adp => InstanceKind::Adp,
    };
    if kind != expected {
        return Err(Failure::Input(format!(
            "--kind {} but the file holds a `{}` instance",
            expected.as_str(),
            kind.as_str()
        )));
    }
    let mut comments = vec![
        format!("generated by rflow gen-reduction --kind {}", kind.as_str()),
        format!("source sha256 {}", input.digest),
    ];
    let instance = match args.kind {
        SourceKind::Mf => {
            let mf = parse_mf::<Rational>(&input.text)?;
            let (network, budgets) = mf_to_rf(&mf);
            let (m, k) = (mf.arcs.len(), mf.commodities.len());
            comments.push(format!("source nodes {} arcs {m} commodities {k}", mf.num_nodes));
            comments.push(format!("arcs 1..{m} copy the source arcs"));
            comments.push(format!(
                "arcs {}..{} pair (source, s_i) and (t_i, sink) per commodity i",
                m + 1,
                m + 2 * k
            ));
            comments.push(format!("arc {} joins source and sink directly", m + 2 * k + 1));
            comments.push("the source is feasible iff the robust value is 1".to_string());
            RfInstance {
                comments,
                network,
                budgets,
            }
        }
        SourceKind::Adp => {
            let adp = parse_adp(&input.text)?;
            let p = adp_to_protect::<Rational>(&adp);
            comments.push(format!(
                "source nodes {} arcs {}, normalized to nodes {} arcs {}",
                adp.num_nodes,
                adp.arcs.len(),
                p.source.num_nodes,
                p.source.arcs.len()
            ));
            comments.push(format!(
                "arcs 1..{} copy the normalized source arcs",
                p.source.arcs.len()
            ));
            comments.push(format!("M {}", p.big_m));
            comments.push(format!("a1 {} z1 {} a2 {} z2 {}", p.a1, p.z1, p.a2, p.z2));
            comments.push("arc costs are base costs; give increases as cplus lines to evaluate".to_string());
            comments.push("positive profit is attainable iff the source has disjoint paths".to_string());
            RfInstance {
                comments,
                network: p.network,
                budgets: p.budgets,
            }
        }
    };
    let text = write_rf(&instance);
    if let Some(path) = &args.output {
        fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if json {
        let value = serde_json::json!({
            "schema": report::SCHEMA,
            "command": "gen-reduction",
            "kind": kind.as_str(),
            "digest": input.digest,
            "instance": text,
        });
        return Ok(serde_json::to_string_pretty(&value).expect("json") + "\n");
    }
    Ok(if args.output.is_some() { String::new() } else { text })
}
