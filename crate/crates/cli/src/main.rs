//! `pcode`: decide subgroup perfect codes, build the known families, and run
//! the verification suite.
//!
//! Exit codes: 0 ok, 1 a property or cross-check failed, 2 bad input or
//! usage, 3 a search ran out of budget where a definite answer was needed,
//! 4 the input parsed but does not describe a valid instance (for example a
//! "subgroup" that is not contained in the group).

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use perfect_codes::catalog::preset;
use perfect_codes::codes::{
    decide_pair_with, double_coset_condition, find_inverse_closed_transversal,
    inverse_closed_per_union, is_perfect_code_group, square_coset_condition, DecideOptions,
    PairInstance, SearchOutcome, Status, DEFAULT_BUDGET,
};
use perfect_codes::constructions::{check_claims, parse_family};
use perfect_codes::error::Error;
use perfect_codes::graphs::{coset_graph, find_witness_connection_set, Mode};
use perfect_codes::group::PermGroup;
use perfect_codes::perm::{parse_perm_list, split_perm_list, Perm};
use perfect_codes::verify;

use report::{Agreement, Fingerprint, RunReport};

#[derive(Parser, Debug)]
#[command(name = "pcode", version, about = "Subgroup perfect codes of groups and group pairs")]
struct Cli {
    /// Node budget for each backtracking search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Perfect-code notion used on coset graphs.
    #[arg(long, global = true, default_value = "literal")]
    mode: Mode,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is a subgroup a perfect code of the group?
    CheckGroup {
        /// Preset (S4, A5, C6, D8, Q8, AGL1_5, ...), family spec
        /// (`field-c2:2`, ...) or generator list `[(1 2),(1 2 3)]`.
        #[arg(long)]
        group: String,
        /// Generator list, `trivial` or `whole`.
        #[arg(long)]
        subgroup: String,
        /// Degree for raw generator lists (default: largest point named).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Is A a perfect code of the pair (G, H)?
    CheckPair(PairArgs),
    /// Find a connection set U making the cosets of H in A a perfect code
    /// of the coset graph.
    WitnessGraph {
        #[command(flatten)]
        pair: PairArgs,
        /// Upper bound on the number of connection sets tried.
        #[arg(long, default_value_t = 1 << 20)]
        max_subsets: u64,
        /// Print the coset graph of the witness in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Build a family member, e.g. `dihedral:1`, `field-c2:2`,
    /// `agammal:3,3`, `sym-chain:1,2,3`, `intransitive:2,5`, `affine:5`.
    Construct { spec: String },
    /// Decide every catalogued maximal subgroup of Sym(n), 2 <= n <= 7.
    SurveyMaximal {
        #[arg(long, short)]
        n: usize,
    },
    /// Run the full verification suite.
    VerifyPaper {
        /// Print every row, not only failing ones.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Family spec giving G, A and H at once.
    #[arg(long, conflicts_with_all = ["group", "a", "h"])]
    family: Option<String>,
    #[arg(long, requires_all = ["a", "h"])]
    group: Option<String>,
    /// Generator list for A, `trivial` or `whole`.
    #[arg(long)]
    a: Option<String>,
    /// Generator list for H, `trivial` or `whole`.
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::ParameterOutOfRange(_) => 2,
        Error::ConsistencyViolation(_) => 1,
        _ => 4,
    }
}

fn parse_group(spec: &str, degree: Option<usize>) -> Result<PermGroup, Error> {
    let spec = spec.trim();
    if spec.contains('(') {
        let mut deg = 0;
        for s in split_perm_list(spec)? {
            deg = deg.max(Perm::max_point_in(&s)?);
        }
        let deg = degree.unwrap_or(deg).max(1);
        let gens = parse_perm_list(deg, spec)?;
        return Ok(PermGroup::closure(deg, &gens)?);
    }
    if spec.contains(':') {
        return Ok(parse_family(spec)?.instance.g);
    }
    preset(spec)
}

fn parse_subgroup(g: &PermGroup, spec: &str) -> Result<PermGroup, Error> {
    match spec.trim() {
        "trivial" | "e" | "1" => Ok(PermGroup::trivial(g.degree())),
        "whole" => Ok(g.clone()),
        s => {
            let gens = parse_perm_list(g.degree(), s)?;
            let sub = PermGroup::closure(g.degree(), &gens)?;
            if let Some(bad) = gens.iter().find(|p| !g.contains(p)) {
                return Err(Error::NotASubgroup(bad.to_string()));
            }
            Ok(sub)
        }
    }
}

fn pair_instance(args: &PairArgs) -> Result<(PairInstance, Option<String>), Error> {
    if let Some(f) = &args.family {
        let spec = parse_family(f)?;
        return Ok((spec.instance, Some(f.clone())));
    }
    let (Some(g), Some(a), Some(h)) = (&args.group, &args.a, &args.h) else {
        return Err(Error::InvalidInput("give --family, or all of --group, --a and --h".into()));
    };
    let g = parse_group(g, args.degree)?;
    let a = parse_subgroup(&g, a)?;
    let h = parse_subgroup(&g, h)?;
    Ok((PairInstance::new(g, a, h)?, None))
}

fn outcome_answer(o: &SearchOutcome) -> Option<bool> {
    match o {
        SearchOutcome::Found(_) => Some(true),
        SearchOutcome::Exhausted => Some(false),
        SearchOutcome::BudgetExceeded => None,
    }
}

fn status_answer(s: Status) -> Option<bool> {
    match s {
        Status::PerfectCode => Some(true),
        Status::NotPerfectCode => Some(false),
        Status::Unknown => None,
    }
}

/// Exit code for a decided status where a definite answer is required.
fn decided_exit(report: &RunReport, status: Status) -> u8 {
    if !report.agreement.consistent {
        1
    } else if status == Status::Unknown {
        3
    } else {
        0
    }
}

fn cmd_check_group(cli: &Cli, group: &str, subgroup: &str, degree: Option<usize>) -> Result<(RunReport, u8), Error> {
    let g = parse_group(group, degree)?;
    let a = parse_subgroup(&g, subgroup)?;
    let mut agreement = Agreement::default();
    agreement.record("square-coset-condition", Some(square_coset_condition(&g, &a)?.holds()));
    agreement.record("double-coset-condition", Some(double_coset_condition(&g, &a)?.holds()));
    let whole = find_inverse_closed_transversal(&g, &a, cli.budget)?;
    agreement.record("inverse-closed-transversal", outcome_answer(&whole.outcome));
    let per = inverse_closed_per_union(&g, &a, cli.budget)?;
    agreement.record("inverse-closed-per-union", outcome_answer(&per.outcome));
    let verdict = match is_perfect_code_group(&g, &a, cli.budget) {
        Ok(v) => v,
        Err(Error::ConsistencyViolation(m)) => {
            agreement.consistent = false;
            agreement.note = Some(m);
            perfect_codes::codes::Verdict::unknown(perfect_codes::codes::DecisionPath::InverseClosedPerUnion, 0)
        }
        Err(e) => return Err(e),
    };
    let status = verdict.status;
    let mut report = RunReport::new("check-group", Fingerprint::of_subgroup(&g, &a));
    report.verdicts.push(verdict);
    report.agreement = agreement;
    report.search_nodes = whole.nodes + per.nodes;
    let code = decided_exit(&report, status);
    Ok((report, code))
}

fn pair_agreement(inst: &PairInstance, paths: &[perfect_codes::codes::Verdict], mode: Mode) -> Result<Agreement, Error> {
    let mut agreement = Agreement::default();
    for v in paths {
        agreement.record(&format!("{:?}", v.decision_path), status_answer(v.status));
    }
    match find_witness_connection_set(inst, mode, 1 << 16) {
        Ok(w) => agreement.record("connection-set-search", Some(w.is_some())),
        Err(Error::TooManyDoubleCosetClasses { .. }) => agreement.skip("connection-set-search"),
        Err(e) => return Err(e),
    }
    Ok(agreement)
}

fn cmd_check_pair(cli: &Cli, args: &PairArgs) -> Result<(RunReport, u8), Error> {
    let (inst, family) = pair_instance(args)?;
    let decision = decide_pair_with(&inst, DecideOptions { budget: cli.budget, run_all: true });
    let decision = match decision {
        Ok(d) => d,
        Err(Error::ConsistencyViolation(m)) => {
            let mut report = RunReport::new("check-pair", Fingerprint::of_pair(&inst, family));
            report.agreement.consistent = false;
            report.agreement.note = Some(m);
            return Ok((report, 1));
        }
        Err(e) => return Err(e),
    };
    let agreement = pair_agreement(&inst, &decision.paths, cli.mode)?;
    let mut report = RunReport::new("check-pair", Fingerprint::of_pair(&inst, family));
    report.search_nodes = decision.paths.iter().map(|v| v.search_nodes).sum();
    let status = decision.verdict.status;
    report.verdicts.push(decision.verdict);
    report.verdicts.extend(decision.paths);
    report.agreement = agreement;
    let code = decided_exit(&report, status);
    Ok((report, code))
}

fn cmd_witness_graph(cli: &Cli, args: &PairArgs, max_subsets: u64, dot: bool) -> Result<(RunReport, u8), Error> {
    let (inst, family) = pair_instance(args)?;
    let found = find_witness_connection_set(&inst, cli.mode, max_subsets)?;
    let mut report = RunReport::new("witness-graph", Fingerprint::of_pair(&inst, family));
    if let Some(w) = &found {
        let graph = coset_graph(&inst.g, &inst.h, &w.connection_set)?;
        report.search_nodes = w.subsets_tried;
        if dot {
            report.dot = Some(graph.to_dot());
        }
        report.graph = Some(report::GraphSummary {
            vertices: graph.vertex_count(),
            edges: graph.edges().len(),
            degree: graph.degree(0),
        });
    }
    report.witness_connection_set = found;
    Ok((report, 0))
}

fn cmd_construct(cli: &Cli, spec: &str) -> Result<(RunReport, u8), Error> {
    let triple = parse_family(spec)?;
    let claims = check_claims(&triple, cli.budget)?;
    let decision = decide_pair_with(&triple.instance, DecideOptions { budget: cli.budget, run_all: false })?;
    let mut report = RunReport::new("construct", Fingerprint::of_pair(&triple.instance, Some(spec.to_string())));
    report.construction = Some(triple.summary());
    report.search_nodes = decision.paths.iter().map(|v| v.search_nodes).sum();
    report.verdicts.push(decision.verdict);
    let code = if claims.iter().any(|c| c.holds == Some(false)) {
        1
    } else if claims.iter().any(|c| c.holds.is_none()) {
        3
    } else {
        0
    };
    report.claims = claims;
    Ok((report, code))
}

fn cmd_survey(cli: &Cli, n: usize) -> Result<(RunReport, u8), Error> {
    let rows = verify::survey_maximal(n, cli.budget)?;
    let g = perfect_codes::catalog::symmetric(n);
    let mut report = RunReport::new("survey-maximal", Fingerprint::of_group(&g));
    report.search_nodes = rows.iter().map(|r| r.search_nodes).sum();
    let code = if rows.iter().any(|r| r.status == Status::NotPerfectCode) {
        1
    } else if rows.iter().any(|r| r.status == Status::Unknown) {
        3
    } else {
        0
    };
    report.survey = rows;
    Ok((report, code))
}

fn cmd_verify(cli: &Cli) -> Result<(RunReport, u8), Error> {
    let checks = verify::run_all(cli.budget)?;
    let mut report = RunReport::new("verify-paper", Fingerprint::default());
    let code = if checks.iter().all(|c| c.passed()) { 0 } else { 1 };
    report.checks = checks;
    Ok((report, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            eprintln!("pcode: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::CheckGroup { group, subgroup, degree } => cmd_check_group(&cli, group, subgroup, *degree),
        Command::CheckPair(args) => cmd_check_pair(&cli, args),
        Command::WitnessGraph { pair, max_subsets, dot } => cmd_witness_graph(&cli, pair, *max_subsets, *dot),
        Command::Construct { spec } => cmd_construct(&cli, spec),
        Command::SurveyMaximal { n } => cmd_survey(&cli, *n),
        Command::VerifyPaper { .. } => cmd_verify(&cli),
    };
    match result {
        Ok((mut report, code)) => {
            report.command = std::env::args().skip(1).filter(|a| a != "--timing").collect();
            if cli.timing {
                let ms = start.elapsed().as_millis() as u64;
                report.elapsed_ms = Some(ms);
                for v in &mut report.verdicts {
                    v.elapsed_ms = Some(ms);
                }
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                let verbose = matches!(cli.command, Command::VerifyPaper { verbose: true });
                print!("{}", report.render(verbose));
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("pcode: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
