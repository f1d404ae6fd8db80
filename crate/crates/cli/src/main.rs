use std::io::Read;
use std::process::ExitCode;

use beideal::certify::{
    canonical_witness, certify_strong_freg, certify_symbolic_fsplit, cofactor_position,
    order_lower_bound, Certificate, CertifyOptions, DEFAULT_SEARCH_BUDGET,
};
use beideal::families::FamilyInstance;
use beideal::graph::{
    bipartition, find_labeling, hamiltonian_path, Graph, LabelingSearch, OrderingMode,
    DEFAULT_LABELING_BUDGET,
};
use beideal::groebner::{prime_generators, Oracle, OracleIdeal};
use beideal::poly::{expand, Atom, Poly, PrimeField};
use beideal::primes::{classify_primes, enumerate_minimal_primes_bounded, DEFAULT_SUBSET_BOUND};
use beideal::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "beideal", version, about = "Binomial edge ideal structure and F-singularity certificates")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cut sets, classification and labeling properties of a graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = DEFAULT_SUBSET_BOUND)]
        budget_subsets: u64,
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = DEFAULT_LABELING_BUDGET)]
        budget_labelings: u64,
    },
    /// Emit a family member as graph JSON, e.g. `family multipartite 3,2,1`,
    /// `family join 1 2,3` or `family gm:4`.
    Family {
        name: String,
        params: Vec<String>,
    },
    /// Check a certificate; exit 0 on pass and 2 on fail.
    Certify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        certify: CertifyArgs,
    },
    /// Exact Groebner-basis cross-checks.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file (JSON or text edge list); `-` reads standard input.
    #[arg(conflicts_with = "family", required_unless_present = "family")]
    path: Option<String>,
    /// Inline family instance such as `multipartite:3,2,1` or `join:1:2,3`.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Try other labelings when the identity labeling fails.
    #[arg(long)]
    search_labelings: bool,
    /// Certify strong F-regularity instead of symbolic F-splitness.
    #[arg(long)]
    strong_freg: bool,
    /// Witness factor removed for the strong F-regularity check.
    #[arg(long, value_name = "ATOM", default_value = "y1", requires = "strong_freg")]
    cofactor: String,
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = DEFAULT_SUBSET_BOUND)]
    budget_subsets: u64,
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..), default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget_labelings: u64,
    /// Run the Frobenius check past the default size guard.
    #[arg(long)]
    unguarded: bool,
}

#[derive(Subcommand, Debug)]
enum OracleCheck {
    /// Compare counting bounds with exact membership orders at every minimal prime.
    Order {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Include the expanded witness polynomial in the output.
        #[arg(long)]
        show_witness: bool,
    },
    /// Check the colon identity on the two monomial test ideals.
    ColonIdentity {
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Symbolic power exponents on the left of the colon (default 1 and 2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        a: Vec<u32>,
        /// Symbolic power exponents on the right of the colon (default 1 and 2).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        b: Vec<u32>,
    },
}

/// A run that produced output: success flag plus the rendered forms.
struct Report {
    ok: bool,
    json: Value,
    text: String,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Core(e) => (core_kind(e), e.to_string()),
            CliError::Io(path, e) => ("io", format!("{path}: {e}")),
            CliError::Usage(msg) => ("usage", msg.clone()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::EndpointOutOfRange(..) | Error::LoopEdge(_) | Error::EmptyGraph => "invalid_graph",
        Error::VertexOutOfRange(..) => "vertex_out_of_range",
        Error::InvalidLabeling(_) => "invalid_labeling",
        Error::Disconnected => "disconnected",
        Error::BoundExceeded { .. } => "bound_exceeded",
        Error::NotPrime(_) => "not_prime",
        Error::NotALeaf(_) => "not_a_leaf",
        Error::InvalidFamily(_) => "invalid_family",
        Error::NotCutSet(_) => "not_cut_set",
        Error::FamilyMismatch(_) => "family_mismatch",
        Error::ProofArithmetic { .. } => "proof_arithmetic",
        Error::InvalidCofactor(_) => "invalid_cofactor",
        Error::WitnessTooSmall(_) => "witness_too_small",
        Error::Budget(_) => "budget",
        Error::RingMismatch => "ring_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
    }
}

type Outcome = Result<Report, CliError>;

fn read_graph(input: &Input) -> Result<Graph, CliError> {
    if let Some(spec) = &input.family {
        return Ok(spec.parse::<FamilyInstance>()?.graph()?);
    }
    let path = input
        .path
        .as_deref()
        .ok_or_else(|| CliError::Usage("no input graph".into()))?;
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(path.into(), e))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))?
    };
    Ok(Graph::parse(&text)?)
}

fn graph_value(g: &Graph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph JSON is valid")
}

fn labeling_value(search: &LabelingSearch) -> (Value, Value) {
    match search {
        LabelingSearch::Found(l) => (json!(true), json!(l.as_slice())),
        LabelingSearch::Absent => (json!(false), Value::Null),
        LabelingSearch::BudgetExceeded => (Value::Null, Value::Null),
    }
}

fn analyze(input: &Input, budget_subsets: u64, budget_labelings: u64) -> Outcome {
    let g = read_graph(input)?;
    let primes = enumerate_minimal_primes_bounded(&g, budget_subsets)?;
    let class = classify_primes(&g, &primes)?;
    let closed = find_labeling(&g, OrderingMode::Closed, budget_labelings);
    let weakly = find_labeling(&g, OrderingMode::WeaklyClosed, budget_labelings);
    let (closed_flag, closed_labeling) = labeling_value(&closed);
    let (weak_flag, weak_labeling) = labeling_value(&weakly);
    let parts = bipartition(&g);
    let path = hamiltonian_path(&g)?;
    let json = json!({
        "graph": graph_value(&g),
        "cutSets": primes,
        "assCount": class.ass_count,
        "unmixed": class.unmixed,
        "accessible": class.accessible,
        "traceable": class.traceable,
        "closed": closed_flag,
        "closedLabeling": closed_labeling,
        "weaklyClosed": weak_flag,
        "weaklyClosedLabeling": weak_labeling,
        "bipartition": parts,
        "hamiltonianPath": path,
    });
    let show = |v: &Value| match v {
        Value::Null => "unknown (budget exceeded)".to_string(),
        other => other.to_string(),
    };
    let mut text = format!("d={} edges={}\n", g.d(), g.edge_count());
    for p in &primes {
        text.push_str(&format!("S={:?} height={} components={}\n", p.cut_set, p.height, p.components.len()));
    }
    text.push_str(&format!(
        "assCount={} unmixed={} accessible={} traceable={}\nclosed={} weaklyClosed={}\n",
        class.ass_count,
        class.unmixed,
        class.accessible,
        class.traceable,
        show(&closed_flag),
        show(&weak_flag)
    ));
    Ok(Report { ok: true, json, text })
}

fn family(name: &str, params: &[String]) -> Outcome {
    let spec = if params.is_empty() {
        name.to_string()
    } else {
        format!("{name}:{}", params.join(":"))
    };
    let g = spec.parse::<FamilyInstance>()?.graph()?;
    Ok(Report { ok: true, json: graph_value(&g), text: g.to_text() })
}

fn certify(input: &Input, args: &CertifyArgs) -> Outcome {
    let g = read_graph(input)?;
    let opts = CertifyOptions {
        p: args.p,
        search_labelings: args.search_labelings,
        labeling_budget: args.budget_labelings,
        subset_bound: args.budget_subsets,
        hints: Vec::new(),
        unguarded_frobenius: args.unguarded,
    };
    let cert: Certificate = if args.strong_freg {
        let atom: Atom = args.cofactor.parse()?;
        certify_strong_freg(&g, cofactor_position(g.d(), &atom)?, &opts)?
    } else {
        certify_symbolic_fsplit(&g, &opts)?
    };
    let json = serde_json::from_str(&cert.to_json()).expect("certificate JSON is valid");
    Ok(Report { ok: cert.passed(), json, text: cert.to_text() })
}

fn oracle_order(input: &Input, p: u64, show_witness: bool) -> Outcome {
    let g = read_graph(input)?;
    let field = PrimeField::new(p)?;
    let witness = canonical_witness(&g)?;
    let f = expand(&witness, p, None)?;
    let mut oracle = Oracle::default();
    let mut rows = Vec::new();
    let mut text = String::new();
    let (mut sound, mut exact_everywhere) = (true, true);
    for prime in enumerate_minimal_primes_bounded(&g, DEFAULT_SUBSET_BOUND)? {
        let bound = order_lower_bound(&witness, &prime);
        let gens = prime_generators(field, g.d(), &prime);
        let exact = oracle.power_membership_order(&f, &gens, bound.max(prime.height) + 1)?;
        sound &= bound <= exact;
        exact_everywhere &= bound == exact;
        text.push_str(&format!("S={:?} height={} bound={bound} exact={exact}\n", prime.cut_set, prime.height));
        rows.push(json!({ "S": prime.cut_set, "height": prime.height, "bound": bound, "exact": exact }));
    }
    let mut json = json!({
        "p": p,
        "witness": witness.labels(),
        "perPrime": rows,
        "sound": sound,
        "exact": exact_everywhere,
    });
    if show_witness {
        let lines = f.binomial_lines();
        text.push_str(&lines.join("\n"));
        text.push('\n');
        json["witnessTerms"] = json!(lines);
    }
    text.push_str(&format!("sound={sound} exact={exact_everywhere}\n"));
    Ok(Report { ok: sound, json, text })
}

fn colon_identity(p: u64, a_values: &[u32], b_values: &[u32]) -> Outcome {
    let field = PrimeField::new(p)?;
    let bracket = u32::try_from(p).map_err(|_| Error::NotPrime(p))?;
    let var = |i: usize| Poly::var(field, 3, i);
    let defaults = [1, 2];
    let a_values = if a_values.is_empty() { &defaults[..] } else { a_values };
    let b_values = if b_values.is_empty() { &defaults[..] } else { b_values };
    let cases = [
        ("(x1) ∩ (x2,x3)", vec![var(0)], vec![var(1), var(2)]),
        ("(x1,x2) ∩ (x2,x3)", vec![var(0), var(1)], vec![var(1), var(2)]),
    ];
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for (label, q1, q2) in cases {
        let q = [OracleIdeal::new(field, 3, q1)?, OracleIdeal::new(field, 3, q2)?];
        let symbolic = |n: u32| q[0].power(n).intersect(&q[1].power(n));
        for &a in a_values {
            for &b in b_values {
                let lhs = symbolic(a)?.frobenius_bracket(bracket).colon(&symbolic(b)?)?;
                let left = q[0].power(a).frobenius_bracket(bracket).colon(&q[0].power(b))?;
                let right = q[1].power(a).frobenius_bracket(bracket).colon(&q[1].power(b))?;
                let holds = lhs.equals(&left.intersect(&right)?)?;
                all &= holds;
                text.push_str(&format!("J={label} a={a} b={b} holds={holds}\n"));
                rows.push(json!({ "J": label, "a": a, "b": b, "holds": holds }));
            }
        }
    }
    let json = json!({ "p": p, "instances": rows, "holds": all });
    Ok(Report { ok: all, json, text })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { input, budget_subsets, budget_labelings } => {
            analyze(input, *budget_subsets, *budget_labelings)
        }
        Command::Family { name, params } => family(name, params),
        Command::Certify { input, certify: args } => certify(input, args),
        Command::Oracle { check } => match check {
            OracleCheck::Order { input, p, show_witness } => oracle_order(input, *p, *show_witness),
            OracleCheck::ColonIdentity { p, a, b } => colon_identity(*p, a, b),
        },
    }
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            println!("{}", err.to_json());
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(report) => {
            emit(cli.format, &report.json, &report.text);
            ExitCode::from(if report.ok { 0 } else { 2 })
        }
        Err(e) => {
            let json = e.to_json();
            let text = format!("error: {}\n", json["error"]["message"].as_str().unwrap_or_default());
            emit(cli.format, &json, &text);
            ExitCode::from(1)
        }
    }
}
