use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use permpat_core::families::{self, ParamSet, NUM_FAMILIES};
use permpat_core::params::{self, PatternExponents, NUM_PARAMS};
use permpat_core::search::{self, ExponentMode, Forbidden, PermModel, SearchConfig};
use permpat_core::verify::{self, CertificateStatus, MorphicWordSpec};
use permpat_core::words::Word;

use crate::args::{Builtin, Cli, Command, DetectorArgs, Exponents, ModeArg, ModelArg, MorphicArgs, SearchArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combinations that clap cannot express.
    Usage(String),
    /// Invalid input values or failed operations.
    Domain(String),
}

impl From<permpat_core::Error> for CliError {
    fn from(e: permpat_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// What a subcommand produced.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub text: String,
    /// Stopped by a resource cap before reaching a conclusion.
    pub inconclusive: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Alphas(e) => alphas(e),
        Command::Sigma(e) => sigma(e),
        Command::Classify(e) => classify(e),
        Command::Families { family } => list_families(*family),
        Command::Search(args) => run_search(args, cli),
        Command::VerifyWord { word, detector } => verify_word(word, detector),
        Command::VerifyMorphic(args) => verify_morphic(args),
    }
}

fn exponents(e: &Exponents) -> PatternExponents {
    PatternExponents::new(e.i, e.j, e.k)
}

fn alphas(e: &Exponents) -> Result<Outcome, CliError> {
    let prof = params::profile(&exponents(e));
    let mut text = String::new();
    for a in 1..=NUM_PARAMS {
        let _ = writeln!(text, "alpha{a:<2} {}  {}", params::rep(a)?, prof.value(a));
    }
    Ok(Outcome { command: "alphas", config: to_value(e), result: to_value(&prof), text, inconclusive: false })
}

fn sigma(e: &Exponents) -> Result<Outcome, CliError> {
    let s = families::sigma(&exponents(e))?;
    let text = format!("sigma {} (set {} from family {})\n", s.value, s.witness_set, s.witness_family);
    Ok(Outcome { command: "sigma", config: to_value(e), result: to_value(&s), text, inconclusive: false })
}

fn classify(e: &Exponents) -> Result<Outcome, CliError> {
    let report = families::classify(&exponents(e))?;
    let mut text = String::new();
    let _ = writeln!(text, "exponents {}", report.exponents);
    if let Some(s) = report.sigma {
        let _ = writeln!(text, "sigma {s}");
    }
    let _ = writeln!(text, "avoidable over {}", interval_text(&report.avoidable_interval));
    if let Some(u) = report.unavoidable_from {
        let _ = writeln!(text, "unavoidable from {u}");
    }
    if let Some(b) = &report.boundary {
        let _ = writeln!(text, "alphabet {}: {}", b.alphabet, b.status);
    }
    if report.needs_review {
        let _ = writeln!(text, "needs review");
    }
    let _ = writeln!(text, "{}", report.note);
    Ok(Outcome { command: "classify", config: to_value(e), result: to_value(&report), text, inconclusive: false })
}

fn interval_text(i: &families::Interval) -> String {
    match i.to {
        Some(to) => format!("[{}, {to}]", i.from),
        None => format!("[{}, inf)", i.from),
    }
}

fn list_families(family: Option<usize>) -> Result<Outcome, CliError> {
    let ids: Vec<usize> = match family {
        Some(f) => vec![f],
        None => (1..=NUM_FAMILIES).collect(),
    };
    let mut result = Vec::new();
    let mut text = String::new();
    for id in ids {
        let sets = families::enumerate_family(id)?;
        let _ = writeln!(text, "family {id}: {} sets", sets.len());
        for s in &sets {
            let _ = writeln!(text, "  {s}");
        }
        result.push(json!({ "family": id, "count": sets.len(), "sets": sets }));
    }
    Ok(Outcome {
        command: "families",
        config: json!({ "family": family }),
        result: Value::Array(result),
        text,
        inconclusive: false,
    })
}

fn model(m: ModelArg) -> PermModel {
    match m {
        ModelArg::Cycle => PermModel::FullCycle,
        ModelArg::Fixcycle => PermModel::FixOnePointCycle,
        ModelArg::Anycycle => PermModel::SingleCycle,
        ModelArg::All => PermModel::AllPermutations,
    }
}

fn forbidden_from(params: Option<&str>, patterns: Option<&str>) -> Result<Forbidden, CliError> {
    match (params, patterns) {
        (Some(p), None) => Ok(Forbidden::from_params(&ParamSet::parse(p)?)),
        (None, Some(p)) => Ok(Forbidden::parse_patterns(p)?),
        _ => Err(CliError::Usage("give exactly one of --forbidden or --patterns".into())),
    }
}

fn detector_config(args: &DetectorArgs, forbidden: Forbidden) -> Result<SearchConfig, CliError> {
    let mode = match (args.mode, args.i, args.j, args.k) {
        (ModeArg::Abstract, None, None, None) => ExponentMode::Abstract,
        (ModeArg::Abstract, ..) => return Err(CliError::Usage("--i/--j/--k need --mode fixed".into())),
        (ModeArg::Fixed, Some(i), Some(j), Some(k)) => ExponentMode::Fixed(PatternExponents::new(i, j, k)),
        (ModeArg::Fixed, ..) => return Err(CliError::Usage("--mode fixed needs --i, --j and --k".into())),
    };
    let config = SearchConfig::new(args.m, forbidden, model(args.model))
        .with_mode(mode)
        .with_identity_instances(!args.no_identity);
    config.validate()?;
    Ok(config)
}

fn run_search(args: &SearchArgs, cli: &Cli) -> Result<Outcome, CliError> {
    let d = &args.detector;
    let (forbidden, sampled) = match args.sample_size {
        Some(size) => {
            if size == 0 || size > NUM_PARAMS {
                return Err(CliError::Domain(format!("sample size must be in 1..={NUM_PARAMS}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let set = ParamSet::from_indices(sample(&mut rng, NUM_PARAMS, size).into_iter().map(|x| x + 1))?;
            (Forbidden::from_params(&set), Some(set))
        }
        None => (forbidden_from(d.forbidden.as_deref(), d.patterns.as_deref())?, None),
    };
    let config = detector_config(d, forbidden)?
        .with_cap(args.cap)
        .with_budget(args.budget)
        .with_pruning(!args.no_pruning)
        .with_split_depth(args.split_depth);
    config.validate()?;
    let result = search::longest_avoiding_word(&config)?;
    let verdict = if result.reached_cap {
        "reached the length cap"
    } else if result.budget_hit {
        "node budget exhausted (inconclusive)"
    } else {
        "search tree exhausted"
    };
    let text = format!(
        "max length {}\nword {}\n{verdict}\nnodes {}\n",
        result.max_length_found, result.witness_word, result.nodes_visited
    );
    let mut config_value = to_value(&config);
    if let Some(set) = sampled {
        config_value["sampled_params"] = to_value(&set);
        config_value["seed"] = json!(cli.seed);
    }
    Ok(Outcome {
        command: "search",
        config: config_value,
        inconclusive: result.budget_hit,
        result: to_value(&result),
        text,
    })
}

fn witness_text(w: &search::InstanceWitness) -> String {
    let blocks: Vec<String> = w.blocks.iter().map(ToString::to_string).collect();
    format!(
        "instance at {} (block length {}): {} with f = {} and exponents {:?}, structure {}\n",
        w.start,
        w.block_len,
        blocks.join(" "),
        w.permutation,
        w.exponents,
        w.pattern
    )
}

fn verify_word(word: &str, args: &DetectorArgs) -> Result<Outcome, CliError> {
    let config = detector_config(args, forbidden_from(args.forbidden.as_deref(), args.patterns.as_deref())?)?;
    let w = Word::parse(word, args.m)?;
    let witness = search::verify_word_avoids(&w, &config)?;
    let text = match &witness {
        None => "avoids\n".to_string(),
        Some(wit) => witness_text(wit),
    };
    let mut config_value = to_value(&config);
    config_value["word"] = json!(w.to_string());
    Ok(Outcome {
        command: "verify-word",
        config: config_value,
        result: json!({ "avoids": witness.is_none(), "witness": witness }),
        text,
        inconclusive: false,
    })
}

fn verify_morphic(args: &MorphicArgs) -> Result<Outcome, CliError> {
    let spec = match (&args.spec, args.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
            MorphicWordSpec::from_json_str(&text)?
        }
        (None, Some(Builtin::HAlpha)) => MorphicWordSpec::h_alpha(),
        (None, Some(Builtin::ThueMorse)) => MorphicWordSpec::thue_morse(),
        (None, Some(Builtin::TernaryThue)) => MorphicWordSpec::ternary_thue(),
        (None, None) => return Err(CliError::Usage("give --spec or --builtin".into())),
    };
    let forbidden = forbidden_from(args.forbidden.as_deref(), args.patterns.as_deref())?;
    let config = SearchConfig::new(spec.alphabet, forbidden, model(args.model))
        .with_budget(args.budget)
        .with_identity_instances(!args.no_identity);
    let cert = verify::verify_prefix_avoids_with(&spec, &config, args.umax, args.len)?;
    let four_power_free =
        if args.four_powers { Some(verify::four_power_free_certificate(&spec, args.len)?) } else { None };
    let mut text = match &cert.result {
        CertificateStatus::Clean => format!("clean up to length {} with |u| <= {}\n", cert.prefix_len, cert.u_max),
        CertificateStatus::Partial { checked_len } => {
            format!("partial: clean up to length {checked_len} only (budget), |u| <= {}\n", cert.u_max)
        }
        CertificateStatus::Witness { witness } => witness_text(witness),
    };
    if let Some(gap) = cert.gap {
        let _ = writeln!(text, "longest factor without a full image: {gap}");
    }
    if let Some(free) = four_power_free {
        let _ = writeln!(text, "fourth-power free: {free}");
    }
    let inconclusive = matches!(cert.result, CertificateStatus::Partial { .. });
    let config_value = json!({
        "spec": spec,
        "forbidden": config.forbidden,
        "model": config.model,
        "identity_instances": config.identity_instances,
        "u_max": args.umax,
        "len": args.len,
        "budget": args.budget,
    });
    let mut result = to_value(&cert);
    if let Some(free) = four_power_free {
        result["four_power_free"] = json!(free);
    }
    Ok(Outcome { command: "verify-morphic", config: config_value, result, text, inconclusive })
}
