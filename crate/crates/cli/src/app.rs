//! Argument parsing and the subcommand implementations behind `pcg`.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcg_core::{
    canonical_state, component_conditions, component_cost_lower_bound, components,
    compo_poa_decomposition, individual_cost, induce_graph, is_nash, is_strong, region_report,
    run, social_cost, social_optimum_bruteforce, social_optimum_class, structure_classify,
    BoundEvaluation, CanonicalKind, CoalitionDeviation, CycleWitness, Deviation, DynamicsOutcome,
    DynamicsPolicy, EnumerationOptions, EquilibriumKind, EquilibriumReport, EquilibriumSet, Error,
    GameParams, MoveRule, Penalty, PlayerOrder, PriceOutcome, Rational, StrategyVector, TieRule,
    Witness,
};

use crate::parallel::{cycle_search_parallel, enumerate_parallel};
use crate::statefile::{
    format_penalty, format_rational, parse_penalty, parse_rational, parse_state, serialize_state,
    serialize_states, ParseError,
};
use crate::sweep::{
    format_cost, mode_name, parse_count_list, parse_penalty_list, parse_rational_list, run_sweep,
    SweepError, SweepSpec,
};

#[derive(Debug, Parser)]
#[command(name = "pcg", version, about = "Exact solver for the penalized network creation game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a named construction as a state file.
    Construct(ConstructArgs),
    /// Per-player and social cost of a state.
    Cost(CostArgs),
    /// Check whether a state is a Nash equilibrium.
    CheckNash(StateArgs),
    /// Check whether a state is a strong equilibrium.
    CheckStrong(CheckStrongArgs),
    /// Enumerate every equilibrium of a small game.
    Enumerate(EnumerateArgs),
    /// Brute-force social optimum.
    Optimum(ParamArgs),
    /// Price of anarchy and stability by enumeration.
    Poa(PoaArgs),
    /// Analytic region report for one parameter point.
    Classify(ParamArgs),
    /// Evaluate the necessary conditions on disconnected equilibria.
    Bounds(BoundsArgs),
    /// Run improvement dynamics or search for improvement cycles.
    Dynamics(DynamicsArgs),
    /// Sweep a parameter grid and write CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Number of players.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge price, `p/q` or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Disconnection penalty, `p/q`, an integer or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// State file; its parameters apply unless overridden by flags.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// empty, complete, center-star[:C], periphery-star[:C], cycle:LEN or
    /// clique-of-stars:K:L.
    #[arg(long)]
    pub kind: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Report only this player.
    #[arg(long)]
    pub player: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckStrongArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Largest coalition to try; defaults to every player.
    #[arg(long)]
    pub max_coalition: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Nash,
    Strong,
}

impl From<Mode> for EquilibriumKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Nash => EquilibriumKind::Nash,
            Mode::Strong => EquilibriumKind::Strong,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Mode::Nash)]
    pub mode: Mode,
    /// Report one representative per player-relabeling class.
    #[arg(long)]
    pub dedupe_iso: bool,
    /// Allow the six-player scan (about 10^9 states).
    #[arg(long = "allow-n6")]
    pub allow_n6: bool,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    /// Write the equilibria as state blocks to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PoaArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Mode::Nash)]
    pub mode: Mode,
    #[arg(long = "allow-n6")]
    pub allow_n6: bool,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Size of the smallest non-singleton component (taken from the state
    /// when one is given).
    #[arg(long = "n-l")]
    pub n_l: Option<usize>,
    /// Smallest diameter over non-singleton components.
    #[arg(long = "diam-l")]
    pub diam_l: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Roundrobin,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Best,
    First,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    PreferCurrent,
    CanonicalFirst,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Start from a named construction instead of a state file.
    #[arg(long, conflicts_with = "state")]
    pub start: Option<String>,
    #[arg(long, value_enum, default_value_t = OrderArg::Roundrobin)]
    pub order: OrderArg,
    #[arg(long, value_enum, default_value_t = PolicyArg::Best)]
    pub policy: PolicyArg,
    #[arg(long, value_enum, default_value_t = TieArg::PreferCurrent)]
    pub tie: TieArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_steps: u64,
    /// Search this many random trials for an improvement cycle instead of
    /// running a single trajectory.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Player counts: comma list, `lo..hi` ranges allowed.
    #[arg(long)]
    pub n: String,
    /// Edge prices: comma list of rationals, `lo..hi:step` ranges allowed.
    #[arg(long)]
    pub alpha: String,
    /// Penalties: like `--alpha`, `inf` allowed.
    #[arg(long)]
    pub beta: String,
    #[arg(long, value_enum, default_value_t = Mode::Nash)]
    pub mode: Mode,
    #[arg(long = "allow-n6")]
    pub allow_n6: bool,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Game(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

impl CliError {
    /// 2 for guard refusals, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Game(e) | CliError::Sweep(SweepError::Game(e)) if e.is_guard() => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

impl ParamArgs {
    fn alpha(&self) -> Result<Option<Rational>, CliError> {
        self.alpha
            .as_deref()
            .map(|a| parse_rational(a).map_err(|m| usage(format!("--alpha: {m}"))))
            .transpose()
    }

    fn beta(&self) -> Result<Option<Penalty>, CliError> {
        self.beta
            .as_deref()
            .map(|b| parse_penalty(b).map_err(|m| usage(format!("--beta: {m}"))))
            .transpose()
    }

    /// Rejects out-of-range flag values before any file is read, filling
    /// absent ones with harmless defaults.
    fn validate_given(&self) -> Result<(), CliError> {
        let alpha = self.alpha()?.unwrap_or(Rational::from_integer(1));
        let beta = self.beta()?.unwrap_or(Penalty::Infinite);
        GameParams::new(self.n.unwrap_or(2), alpha, beta)?;
        Ok(())
    }

    /// Parameters from flags alone; all three are required.
    pub fn params(&self) -> Result<GameParams, CliError> {
        self.validate_given()?;
        let n = self.n.ok_or_else(|| usage("--n is required"))?;
        let alpha = self.alpha()?.ok_or_else(|| usage("--alpha is required"))?;
        let beta = self.beta()?.ok_or_else(|| usage("--beta is required"))?;
        Ok(GameParams::new(n, alpha, beta)?)
    }

    /// The state file with any `--alpha`/`--beta` override applied.
    pub fn state(&self) -> Result<(StrategyVector, GameParams), CliError> {
        self.validate_given()?;
        let path = self.state.as_ref().ok_or_else(|| usage("--state is required"))?;
        let (state, file_params) = parse_state(&read_file(path)?).map_err(|source| CliError::Parse {
            path: path.clone(),
            source,
        })?;
        if let Some(n) = self.n {
            if n != file_params.n {
                return Err(usage(format!("--n {n} disagrees with the state file's n = {}", file_params.n)));
            }
        }
        let alpha = self.alpha()?.unwrap_or(file_params.alpha);
        let beta = self.beta()?.unwrap_or(file_params.beta);
        Ok((state, GameParams::new(file_params.n, alpha, beta)?))
    }

    /// The state file when given, otherwise flags alone with no state.
    fn params_or_state(&self) -> Result<(Option<StrategyVector>, GameParams), CliError> {
        if self.state.is_some() {
            let (s, p) = self.state()?;
            Ok((Some(s), p))
        } else {
            Ok((None, self.params()?))
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out`. Returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn io::Write, err: &mut dyn io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command and returns what it prints on stdout.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Cost(a) => cost(a),
        Command::CheckNash(a) => check_nash(a),
        Command::CheckStrong(a) => check_strong(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Optimum(a) => optimum(a),
        Command::Poa(a) => poa(a),
        Command::Classify(a) => classify(a),
        Command::Bounds(a) => bounds(a),
        Command::Dynamics(a) => dynamics(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn construct(a: &ConstructArgs) -> Result<String, CliError> {
    let params = a.params.params()?;
    let kind: CanonicalKind = a.kind.parse()?;
    let state = canonical_state(kind, params.n)?;
    let text = serialize_state(&state, &params);
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cost(a: &CostArgs) -> Result<String, CliError> {
    let (state, params) = a.params.state()?;
    let players: Vec<usize> = match a.player {
        Some(i) if i >= params.n => return Err(usage(format!("--player {i} is not below n = {}", params.n))),
        Some(i) => vec![i],
        None => (0..params.n).collect(),
    };
    let mut out = String::new();
    for i in players {
        let c = individual_cost(&state, i, &params);
        writeln!(
            out,
            "player {i}: edges {} distance {} unreachable {} penalty {} total {}",
            format_rational(&c.edge_cost),
            c.distance_cost,
            c.unreachable,
            format_cost(&c.penalty_cost),
            format_cost(&c.total)
        )
        .unwrap();
    }
    writeln!(out, "social {}", format_cost(&social_cost(&state, &params))).unwrap();
    Ok(out)
}

fn format_deviation(d: &Deviation) -> String {
    format!(
        "player {} buys [{}] cost {} -> {}",
        d.player,
        d.strategy,
        format_cost(&d.old_cost),
        format_cost(&d.new_cost)
    )
}

fn format_coalition(d: &CoalitionDeviation) -> String {
    let mut out = String::new();
    let members: Vec<String> = d.coalition.iter().map(ToString::to_string).collect();
    writeln!(out, "witness coalition {}", members.join(" ")).unwrap();
    for ((i, s), (before, after)) in d.coalition.iter().zip(&d.strategies).zip(&d.costs) {
        writeln!(
            out,
            "  player {i} buys [{s}] cost {} -> {}",
            format_cost(before),
            format_cost(after)
        )
        .unwrap();
    }
    out
}

fn format_report(label: &str, r: &EquilibriumReport) -> String {
    let mut out = format!("{label} {}\n", r.verdict);
    if r.verdict {
        writeln!(out, "strict {}", r.strict).unwrap();
    }
    match &r.witness {
        Some(Witness::Unilateral(d)) => writeln!(out, "witness {}", format_deviation(d)).unwrap(),
        Some(Witness::Coalition(d)) => out.push_str(&format_coalition(d)),
        None => {}
    }
    out
}

fn check_nash(a: &StateArgs) -> Result<String, CliError> {
    let (state, params) = a.params.state()?;
    Ok(format_report("nash", &is_nash(&state, &params)?))
}

fn check_strong(a: &CheckStrongArgs) -> Result<String, CliError> {
    let (state, params) = a.params.state()?;
    let k = a.max_coalition.unwrap_or(params.n);
    Ok(format_report("strong", &is_strong(&state, &params, k)?))
}

fn params_header(p: &GameParams) -> String {
    format!(
        "n {}\nalpha {}\nbeta {}\n",
        p.n,
        format_rational(&p.alpha),
        format_penalty(&p.beta)
    )
}

fn format_set(out: &mut String, label: &str, set: &EquilibriumSet) {
    let opt_r = |r: &Option<Rational>| r.as_ref().map_or_else(|| "none".to_string(), format_rational);
    let opt_c = |c: &Option<pcg_core::Cost>| c.as_ref().map_or_else(|| "none".to_string(), format_cost);
    writeln!(out, "{label}-count {}", set.len()).unwrap();
    writeln!(out, "{label}-worst-cost {}", opt_c(&set.worst)).unwrap();
    writeln!(out, "{label}-best-cost {}", opt_c(&set.best)).unwrap();
    writeln!(out, "{label}-poa {}", opt_r(&set.poa)).unwrap();
    writeln!(out, "{label}-pos {}", opt_r(&set.pos)).unwrap();
    if let Some(reps) = &set.representatives {
        writeln!(out, "{label}-classes {}", reps.len()).unwrap();
    }
}

fn enumerate(a: &EnumerateArgs) -> Result<String, CliError> {
    let params = a.params.params()?;
    let options = EnumerationOptions {
        allow_six: a.allow_n6,
        dedupe_iso: a.dedupe_iso,
    };
    let result = enumerate_parallel(params, a.mode.into(), options, a.workers)?;
    let mut out = params_header(&params);
    writeln!(out, "mode {}", mode_name(result.kind)).unwrap();
    writeln!(out, "states-examined {}", result.states_examined).unwrap();
    writeln!(out, "optimum-cost {}", format_cost(&result.optimum.cost)).unwrap();
    format_set(&mut out, "nash", &result.nash);
    if let Some(strong) = &result.strong {
        format_set(&mut out, "strong", strong);
    }
    if let Some(path) = &a.out {
        let set = result.equilibria();
        let states = set.representatives.as_ref().unwrap_or(&set.states);
        write_file(path, &serialize_states(states, &params))?;
    }
    Ok(out)
}

fn optimum(a: &ParamArgs) -> Result<String, CliError> {
    let params = a.params()?;
    let opt = social_optimum_bruteforce(&params)?;
    let mut out = params_header(&params);
    writeln!(out, "optimum-cost {}", format_cost(&opt.cost)).unwrap();
    writeln!(out, "optimal-graphs {}", opt.tied).unwrap();
    writeln!(out, "analytic-class {}", social_optimum_class(&params)).unwrap();
    out.push('\n');
    out.push_str(&serialize_state(&opt.state, &params));
    Ok(out)
}

fn poa(a: &PoaArgs) -> Result<String, CliError> {
    let params = a.params.params()?;
    let options = EnumerationOptions {
        allow_six: a.allow_n6,
        dedupe_iso: false,
    };
    let result = enumerate_parallel(params, a.mode.into(), options, a.workers)?;
    let mut out = params_header(&params);
    writeln!(out, "mode {}", mode_name(result.kind)).unwrap();
    match PriceOutcome::from_result(&result) {
        PriceOutcome::NoneFound => {
            writeln!(out, "equilibria none").unwrap();
            writeln!(out, "optimum-cost {}", format_cost(&result.optimum.cost)).unwrap();
        }
        PriceOutcome::Measured(m) => {
            writeln!(out, "poa {}", format_rational(&m.poa)).unwrap();
            writeln!(out, "pos {}", format_rational(&m.pos)).unwrap();
            writeln!(out, "worst-cost {}", format_cost(&m.worst_cost)).unwrap();
            writeln!(out, "best-cost {}", format_cost(&m.best_cost)).unwrap();
            writeln!(out, "optimum-cost {}", format_cost(&m.optimum_cost)).unwrap();
            out.push_str("\nworst-equilibrium:\n");
            out.push_str(&serialize_state(&m.worst_state, &params));
        }
    }
    Ok(out)
}

fn classify(a: &ParamArgs) -> Result<String, CliError> {
    let params = a.params()?;
    let r = region_report(&params);
    let mut out = params_header(&params);
    writeln!(out, "optimum-class {}", r.optimum_class).unwrap();
    writeln!(out, "disconnected-ne-possible {}", r.disconnected_ne_possible).unwrap();
    for e in &r.exclusions {
        writeln!(out, "excluded {}: {}", e.label, e.reason).unwrap();
    }
    let b = &r.poa_bound;
    writeln!(out, "poa-region {}", b.region.name()).unwrap();
    writeln!(out, "poa-descriptor {}", b.descriptor).unwrap();
    let opt_r = |r: &Option<Rational>| r.as_ref().map_or_else(|| "none".to_string(), format_rational);
    writeln!(out, "poa-upper {}", opt_r(&b.upper)).unwrap();
    writeln!(out, "poa-exact {}", opt_r(&b.exact)).unwrap();
    writeln!(out, "empty-star-ratio {}", opt_r(&b.empty_ratio)).unwrap();
    let exception = match r.optimum_strong_exception {
        Some(v) => v.to_string(),
        None => "classic".into(),
    };
    writeln!(out, "optimum-strong-exception {exception}").unwrap();
    Ok(out)
}

fn format_checks(out: &mut String, title: &str, eval: &BoundEvaluation) {
    writeln!(out, "{title}").unwrap();
    for c in &eval.checks {
        let verdict = if c.vacuous {
            "vacuous"
        } else if c.satisfied {
            "holds"
        } else {
            "violated"
        };
        writeln!(
            out,
            "  {} [{}]: {} {} {} {verdict}",
            c.name,
            c.inequality,
            c.left,
            c.relation.symbol(),
            c.right
        )
        .unwrap();
    }
}

fn bounds(a: &BoundsArgs) -> Result<String, CliError> {
    let (state, params) = a.params.params_or_state()?;
    let mut out = params_header(&params);
    let (mut n_l, mut diam_l) = (a.n_l, a.diam_l);
    if let Some(state) = &state {
        let g = induce_graph(state);
        let cd = components(&g);
        n_l = n_l.or(cd.min_nontrivial_size());
        diam_l = diam_l.or(cd.min_nontrivial_diameter());
        for c in cd.non_singleton() {
            let label = structure_classify(&g, &c.vertices)?;
            let vs: Vec<String> = c.vertices.iter().map(ToString::to_string).collect();
            writeln!(out, "component {} label {label} edges {} diameter {}", vs.join(" "), c.edges, c.diameter)
                .unwrap();
            match component_conditions(label, params.alpha, params.beta) {
                Ok(eval) => format_checks(&mut out, "  conditions", &eval),
                Err(Error::Unsupported(what)) => writeln!(out, "  conditions none for {what}").unwrap(),
                Err(e) => return Err(e.into()),
            }
            let lb = component_cost_lower_bound(c.size(), c.edges, params.alpha, params.beta);
            writeln!(
                out,
                "  cost-lower-bound {} isolated-cost {} chain-valid {}",
                format_rational(&lb.bound),
                lb.chained.as_ref().map_or_else(|| "none".to_string(), format_rational),
                lb.chain_valid
            )
            .unwrap();
        }
        if !cd.is_connected() && !params.beta.is_infinite() {
            let poa = compo_poa_decomposition(state, &params)?;
            writeln!(
                out,
                "component-poa actual {} bound {} holds {}",
                format_rational(&poa.actual),
                format_rational(&poa.bound),
                poa.holds
            )
            .unwrap();
        }
    }
    match (n_l, diam_l) {
        (Some(n_l), Some(diam_l)) => {
            let eval = nonempty_bounds(&params, n_l, diam_l)?;
            format_checks(&mut out, &format!("nonempty-ne n_l={n_l} diam_l={diam_l}"), &eval);
        }
        _ if state.is_some() => writeln!(out, "nonempty-ne not applicable (no non-singleton component)").unwrap(),
        _ => return Err(usage("--n-l and --diam-l are required without --state")),
    }
    Ok(out)
}

fn nonempty_bounds(params: &GameParams, n_l: usize, diam_l: u32) -> Result<BoundEvaluation, CliError> {
    Ok(pcg_core::nonempty_ne_bounds(params.n, n_l, diam_l, params.alpha, params.beta)?)
}

/// Policy built from the command-line flags.
pub fn policy_from(order: OrderArg, rule: PolicyArg, tie: TieArg, seed: u64, max_steps: u64) -> DynamicsPolicy {
    DynamicsPolicy {
        move_rule: match rule {
            PolicyArg::Best => MoveRule::BestResponse,
            PolicyArg::First => MoveRule::FirstImproving,
        },
        order: match order {
            OrderArg::Roundrobin => PlayerOrder::RoundRobin,
            OrderArg::Random => PlayerOrder::RandomPermutation(seed),
        },
        tie: match tie {
            TieArg::PreferCurrent => TieRule::PreferCurrent,
            TieArg::CanonicalFirst => TieRule::CanonicalFirst,
        },
        max_steps,
    }
}

fn format_witness(out: &mut String, w: &CycleWitness, params: &GameParams) {
    writeln!(out, "entry {}", w.entry).unwrap();
    writeln!(out, "period {}", w.period).unwrap();
    writeln!(out, "start-position {}", w.start_position).unwrap();
    let seq: Vec<String> = w.schedule.sequence().iter().map(ToString::to_string).collect();
    writeln!(out, "schedule {}", seq.join(" ")).unwrap();
    for (k, m) in w.moves.iter().enumerate() {
        let player = w.schedule.player_at(w.start_position + k);
        match m {
            Some(d) => writeln!(out, "move {k} {}", format_deviation(d)).unwrap(),
            None => writeln!(out, "move {k} player {player} stays").unwrap(),
        }
    }
    out.push('\n');
    out.push_str(&serialize_states(&w.states, params));
}

/// Text form of a dynamics outcome; equal outcomes give equal bytes.
pub fn format_outcome(outcome: &DynamicsOutcome, params: &GameParams) -> String {
    let mut out = String::new();
    match outcome {
        DynamicsOutcome::Converged { state, moves, activations }
        | DynamicsOutcome::BudgetExhausted { state, moves, activations } => {
            let label = if matches!(outcome, DynamicsOutcome::Converged { .. }) {
                "converged"
            } else {
                "budget-exhausted"
            };
            writeln!(out, "outcome {label}").unwrap();
            writeln!(out, "moves {moves}").unwrap();
            writeln!(out, "activations {activations}").unwrap();
            out.push('\n');
            out.push_str(&serialize_state(state, params));
        }
        DynamicsOutcome::CycleDetected(w) => {
            writeln!(out, "outcome cycle").unwrap();
            format_witness(&mut out, w, params);
        }
    }
    out
}

fn dynamics(a: &DynamicsArgs) -> Result<String, CliError> {
    let text = if let Some(trials) = a.trials {
        let params = a.params.params_or_state()?.1;
        match cycle_search_parallel(&params, trials, a.seed, a.max_steps, a.workers)? {
            None => format!("{}outcome none-found\ntrials {trials}\n", params_header(&params)),
            Some((t, w)) => {
                let mut out = params_header(&params);
                writeln!(out, "outcome cycle\ntrial {t}").unwrap();
                format_witness(&mut out, &w, &params);
                out
            }
        }
    } else {
        let (start, params) = match (&a.start, &a.params.state) {
            (Some(kind), _) => {
                let params = a.params.params()?;
                let kind: CanonicalKind = kind.parse()?;
                (canonical_state(kind, params.n)?, params)
            }
            (None, Some(_)) => a.params.state()?,
            (None, None) => {
                let params = a.params.params()?;
                (StrategyVector::empty(params.n), params)
            }
        };
        let policy = policy_from(a.order, a.policy, a.tie, a.seed, a.max_steps);
        let outcome = run(&start, &policy, &params)?;
        format!("{}{}", params_header(&params), format_outcome(&outcome, &params))
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn sweep(a: &SweepArgs) -> Result<String, CliError> {
    let spec = SweepSpec {
        ns: parse_count_list(&a.n).map_err(|m| usage(format!("--n: {m}")))?,
        alphas: parse_rational_list(&a.alpha).map_err(|m| usage(format!("--alpha: {m}")))?,
        betas: parse_penalty_list(&a.beta).map_err(|m| usage(format!("--beta: {m}")))?,
        mode: a.mode.into(),
        allow_six: a.allow_n6,
    };
    spec.points()?;
    let mut buf = Vec::new();
    run_sweep(&spec, a.workers, &mut buf)?;
    let csv = String::from_utf8(buf).expect("csv output is utf-8");
    match &a.out {
        Some(path) => {
            write_file(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}
