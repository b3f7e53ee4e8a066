//! Command-line front end. Every command is a thin wrapper over
//! `treefix_core`; [`run`] is what the binary calls, and what tests call.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use treefix_core::dse::{self, DseSpec};
use treefix_core::ptrees::{self, Grading, PTree, Signature};
use treefix_core::report::CheckReport;
use treefix_core::trees;
use treefix_core::wtypes::{self, LeafCount, NodeCount};
use treefix_core::{hopf, opbialg};

/// Limits applied to every invocation.
pub const MAX_ORDER: usize = 10;
pub const MAX_NODE_BOUND: usize = 8;
pub const MAX_LEAF_BOUND: usize = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "treefix", version, about = "Tree Hopf algebras, Dyson–Schwinger solvers and P-tree folds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum By {
    Nodes,
    Leaves,
}

impl From<By> for Grading {
    fn from(b: By) -> Self {
        match b {
            By::Nodes => Grading::Nodes,
            By::Leaves => Grading::Leaves,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    /// (Δ⊗Id)Δ = (Id⊗Δ)Δ in H_CK
    Coassoc,
    /// (ε⊗Id)Δ = Id = (Id⊗ε)Δ in H_CK
    Counit,
    /// m(S⊗Id)Δ = ηε in H_CK
    Antipode,
    /// Hochschild 1-cocycle identity for B₊ in H_CK
    Cocycle,
    /// coassociativity of the P-tree coproduct
    OpCoassoc,
    /// 1-cocycle identity for the operadic B₊ (expected to fail)
    OpCocycle,
    /// core is a bialgebra homomorphism to H_CK
    CoreHom,
    /// Δ(G) = Σ G^n ⊗ g_n
    FaaDiBruno,
    /// 1 + P(X_k) → X_{k+1} is a bijection
    Lambek,
    /// computation rules of the node-count fold
    ComputationRules,
    /// node_count is the unique map obeying the node-count rules
    FoldUniqueness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// primitive recursion on ladders
    Nat,
    /// node-count fold
    Nodes,
    /// leaf-count fold
    Leaves,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a Dyson–Schwinger equation order by order.
    Solve {
        /// Built-in name (linear, quadratic, geometric) or a JSON file.
        #[arg(long)]
        spec: String,
        /// Truncation order; defaults to the file's order, or 4.
        #[arg(long)]
        order: Option<usize>,
    },
    /// List trees of a given size.
    Enumerate {
        /// identity, binary, list[:K], stable[:K], comb (rooted trees), or a JSON file.
        #[arg(long)]
        signature: String,
        #[arg(long, value_enum, default_value_t = By::Nodes)]
        by: By,
        #[arg(long)]
        n: usize,
    },
    /// Count trees of a given size by core.
    Census {
        #[arg(long)]
        signature: String,
        #[arg(long, value_enum, default_value_t = By::Nodes)]
        by: By,
        #[arg(long)]
        n: usize,
    },
    /// Green function truncated by node count, split by leaf count.
    Green {
        #[arg(long)]
        signature: String,
        #[arg(long)]
        bound: usize,
    },
    /// Check an algebraic law exhaustively.
    Check {
        #[arg(long, value_enum)]
        law: Law,
        /// Forest degree bound (H_CK laws).
        #[arg(long)]
        degree: Option<usize>,
        /// Node bound, or layer index for lambek (P-tree laws).
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value = "binary")]
        signature: String,
    },
    /// Demonstrate folds.
    FoldDemo {
        #[arg(long, value_enum)]
        demo: Demo,
        #[arg(long, default_value = "binary")]
        signature: String,
        #[arg(long)]
        n: usize,
    },
}

/// Failure modes of a command: usage problems exit 2, failed checks exit 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<treefix_core::Error> for Failure {
    fn from(e: treefix_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn limit(flag: &str, value: usize, max: usize) -> Result<(), Failure> {
    if value > max {
        return Err(usage(format!("{flag} = {value} exceeds the limit of {max}")));
    }
    Ok(())
}

/// Signature names: `identity`, `binary`, `list[:K]`, `stable[:K]`, or a
/// path to a JSON file. Without `:K`, `default_k` is used.
fn resolve_signature(name: &str, default_k: usize) -> Result<Signature, Failure> {
    let (base, k) = match name.split_once(':') {
        Some((b, k)) => {
            let k = k
                .parse::<usize>()
                .map_err(|_| usage(format!("--signature {name}: expected NAME:K with integer K")))?;
            (b, Some(k))
        }
        None => (name, None),
    };
    let k = k.unwrap_or(default_k);
    match base {
        "identity" => Ok(Signature::identity()),
        "binary" => Ok(Signature::binary()),
        "list" => Ok(Signature::list(k)),
        "stable" => Ok(Signature::stable(k)),
        _ if Path::new(name).is_file() => {
            let text = std::fs::read_to_string(name).map_err(|e| usage(format!("{name}: {e}")))?;
            Ok(Signature::from_json(&text)?)
        }
        _ => Err(usage(format!(
            "--signature {name}: expected identity, binary, list[:K], stable[:K] or a JSON file"
        ))),
    }
}

fn default_arity(by: By, n: usize) -> usize {
    match by {
        By::Leaves => n.max(2),
        By::Nodes => 4,
    }
}

fn resolve_spec(spec: &str, order: Option<usize>) -> Result<(DseSpec, String), Failure> {
    if let Some(s) = DseSpec::builtin(spec, order.unwrap_or(4)) {
        return Ok((s, spec.to_string()));
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("{spec}: {e}")))?;
        let mut s = DseSpec::from_json(&text)?;
        if let Some(o) = order {
            s.order = o;
        }
        return Ok((s, spec.to_string()));
    }
    Err(usage(format!(
        "--spec {spec}: expected linear, quadratic, geometric or a JSON file"
    )))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn solve_cmd(spec: &str, order: Option<usize>, format: Format) -> Outcome {
    let (spec_value, name) = resolve_spec(spec, order)?;
    limit("--order", spec_value.order, MAX_ORDER)?;
    let series = dse::solve(&spec_value)?;
    Ok(match format {
        Format::Text => series.to_string(),
        Format::Json => pretty(&json!({
            "command": "solve",
            "spec": name,
            "order": series.order(),
            "series": serde_json::to_value(series.to_doc()).expect("serializable"),
        })),
    })
}

fn enumerate_cmd(signature: &str, by: By, n: usize, format: Format) -> Outcome {
    let codes: Vec<String> = if signature == "comb" {
        if by != By::Nodes {
            return Err(usage("--signature comb supports only --by nodes"));
        }
        limit("--n", n, MAX_NODE_BOUND)?;
        trees::enumerate_comb_trees(n)?.iter().map(|t| t.code().to_string()).collect()
    } else {
        match by {
            By::Nodes => limit("--n", n, MAX_NODE_BOUND)?,
            By::Leaves => limit("--n", n, MAX_LEAF_BOUND)?,
        }
        let sig = resolve_signature(signature, default_arity(by, n))?;
        ptrees::enumerate(&sig, n, by.into())?.iter().map(PTree::code).collect()
    };
    Ok(match format {
        Format::Text => codes.iter().fold(String::new(), |mut s, c| {
            let _ = writeln!(s, "{c}");
            s
        }),
        Format::Json => pretty(&json!({
            "command": "enumerate",
            "signature": signature,
            "by": format!("{by:?}").to_lowercase(),
            "n": n,
            "count": codes.len(),
            "trees": codes,
        })),
    })
}

fn census_cmd(signature: &str, by: By, n: usize, format: Format) -> Outcome {
    match by {
        By::Nodes => limit("--n", n, MAX_NODE_BOUND)?,
        By::Leaves => limit("--n", n, MAX_LEAF_BOUND)?,
    }
    let sig = resolve_signature(signature, default_arity(by, n))?;
    let census = ptrees::core_census(&sig, n, by.into())?;
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            for (core, count) in &census {
                let _ = writeln!(s, "{core}: {count}");
            }
            let _ = writeln!(s, "total = {}", ptrees::census_element(&census));
            s
        }
        Format::Json => pretty(&json!({
            "command": "census",
            "signature": signature,
            "by": format!("{by:?}").to_lowercase(),
            "n": n,
            "cores": census.iter().map(|(f, c)| json!({"core": f.to_string(), "count": c})).collect::<Vec<_>>(),
        })),
    })
}

fn green_cmd(signature: &str, bound: usize, format: Format) -> Outcome {
    limit("--bound", bound, MAX_NODE_BOUND)?;
    let sig = resolve_signature(signature, 4)?;
    let g = opbialg::green(&sig, bound)?;
    Ok(match format {
        Format::Text => g.to_string(),
        Format::Json => pretty(&json!({
            "command": "green",
            "signature": signature,
            "bound": bound,
            "grades": g.leaf_grades().into_iter().map(|n| json!({
                "leaves": n,
                "trees": g.g(n).iter().map(|(f, w)| json!({"tree": f.to_string(), "weight": w.to_string()})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
    })
}

fn check_cmd(law: Law, degree: Option<usize>, bound: Option<usize>, signature: &str, format: Format) -> Outcome {
    use Law::*;
    let hck = matches!(law, Coassoc | Counit | Antipode | Cocycle);
    let report: CheckReport = if hck {
        let d = degree.or(bound).ok_or_else(|| usage("--degree is required for H_CK laws"))?;
        limit("--degree", d, MAX_NODE_BOUND)?;
        match law {
            Coassoc => hopf::check_coassociativity(d)?,
            Counit => hopf::check_counit(d)?,
            Antipode => hopf::check_antipode(d)?,
            _ => hopf::check_cocycle(d)?,
        }
    } else {
        let b = bound.or(degree).ok_or_else(|| usage("--bound is required for P-tree laws"))?;
        limit("--bound", b, MAX_NODE_BOUND)?;
        let sig = resolve_signature(signature, 4)?;
        match law {
            OpCoassoc => opbialg::check_op_coassociativity(&sig, b)?,
            OpCocycle => opbialg::check_op_cocycle(&sig, b)?,
            CoreHom => opbialg::check_core_homomorphism(&sig, b)?,
            FaaDiBruno => opbialg::check_faa_di_bruno(&sig, b)?,
            Lambek => wtypes::lambek_check(&sig, b)?,
            ComputationRules => wtypes::check_computation_rules(&sig, &NodeCount, b)?,
            _ => wtypes::check_fold_uniqueness(&sig, &NodeCount, PTree::node_count, b)?,
        }
    };
    let text = match format {
        Format::Text => format!("{report}\n"),
        Format::Json => pretty(&json!({
            "command": "check",
            "report": serde_json::to_value(&report).expect("serializable"),
        })),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn fold_demo_cmd(demo: Demo, signature: &str, n: usize, format: Format) -> Outcome {
    limit("--n", n, MAX_NODE_BOUND)?;
    let rows: Vec<(String, String)> = match demo {
        Demo::Nat => (0..=n)
            .map(|k| {
                let t = PTree::ladder(k);
                let v = wtypes::ladder_length(&t).map_err(Failure::from)?;
                Ok((t.code(), v.to_string()))
            })
            .collect::<Result<_, Failure>>()?,
        Demo::Nodes | Demo::Leaves => {
            let sig = resolve_signature(signature, 4)?;
            ptrees::enumerate_by_nodes(&sig, n)?
                .into_iter()
                .map(|t| {
                    let v = match demo {
                        Demo::Nodes => wtypes::fold(&sig, &NodeCount, &t)?,
                        _ => wtypes::fold(&sig, &LeafCount, &t)?,
                    };
                    Ok((t.code(), v.to_string()))
                })
                .collect::<Result<_, Failure>>()?
        }
    };
    Ok(match format {
        Format::Text => rows.iter().fold(String::new(), |mut s, (t, v)| {
            let _ = writeln!(s, "fold({t}) = {v}");
            s
        }),
        Format::Json => pretty(&json!({
            "command": "fold-demo",
            "demo": format!("{demo:?}").to_lowercase(),
            "n": n,
            "results": rows.iter().map(|(t, v)| json!({"tree": t, "value": v})).collect::<Vec<_>>(),
        })),
    })
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let format = cli.format;
    let outcome = match cli.command {
        Command::Solve { spec, order } => solve_cmd(&spec, order, format),
        Command::Enumerate { signature, by, n } => enumerate_cmd(&signature, by, n, format),
        Command::Census { signature, by, n } => census_cmd(&signature, by, n, format),
        Command::Green { signature, bound } => green_cmd(&signature, bound, format),
        Command::Check {
            law,
            degree,
            bound,
            signature,
        } => check_cmd(law, degree, bound, &signature, format),
        Command::FoldDemo { demo, signature, n } => fold_demo_cmd(demo, &signature, n, format),
    };
    match outcome {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Check(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_CHECK_FAILED
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            code
        }
    }
}
