//! `hl` — a workbench for finite strict-implication and bimodal frames:
//! parsing, model checking, frame validity, the bimodal translation, duality
//! round trips, bounded countermodel search, and submodel minimization.
//!
//! Exit codes: 0 success/valid/verified, 1 refuted or counterexample found,
//! 2 usage or input error.

use clap::{Parser, Subcommand};
use hl_core::algebra::{dual_frame, round_trip_algebra, round_trip_frame, HLAlgebra};
use hl_core::axioms::AxiomName;
use hl_core::decide::{
    correspondence_check, countermodel_search, derive_via_translation, BiSearchOutcome,
    CorrespondenceOutcome, SearchOptions, SearchOutcome,
};
use hl_core::enumerate::{EnumOptions, FramePlan, DEFAULT_CANDIDATE_CAP};
use hl_core::fmp::{build_x_omega, cofinal_extension, restrict_model, verify_submodel_truth};
use hl_core::frames::{
    Frame, FrameCondition, FrameKind, GeneralS4KFrame, GeneralStoFrame,
};
use hl_core::io::{
    algebra_parts_from_json, frame_from_json, frame_to_json,
    model_from_json, model_to_json, parse_axiom_lines, AlgebraJson, FrameJson, ModelJson,
};
use hl_core::parse::{parse_bi, parse_sto, Lang};
use hl_core::semantics::{
    frame_valid, frame_valid_bi, frame_valid_bi_general, frame_valid_general,
    ValidOptions, Validity,
};
use hl_core::sets::{members, Mask};
use hl_core::syntax::Formula;
use hl_core::translation::{gmt, rho_hat, rho_sigma_identity, sigma_hat};
use serde_json::json;
use std::collections::BTreeMap;
use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hl",
    about = "Finite-scale workbench for strict-implication logic and its bimodal companions"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps (commands shipped so far are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallelizable searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Candidate-relation cap for enumeration; HL_MAX_CANDIDATES overrides
    /// the default, this flag overrides both.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Atom budget for validity sweeps (cost grows as candidates^atoms).
    #[arg(long, global = true, default_value_t = 3)]
    max_atoms: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical rendering.
    Parse {
        #[arg(long, default_value = "sto")]
        lang: Lang,
        formula: String,
    },
    /// Evaluate the truth set of a formula on a model file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Decide frame validity; prints a countervaluation when refuted.
    Valid {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Translate a strict-implication formula into the bimodal language.
    Translate { formula: String },
    /// Quotient a bimodal frame file to a strict-implication frame.
    Rho {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Read a strict-implication frame file as a bimodal frame.
    Sigma {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Round-trip checks: an algebra through its dual frame, or a frame
    /// through the translation (`--via gmt`) or the duality (`--via duality`).
    Roundtrip {
        #[arg(long, conflicts_with = "frame")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, default_value = "gmt")]
        via: String,
    },
    /// Bounded countermodel search over strict-implication frames.
    Decide {
        #[arg(long)]
        goal: String,
        /// Assumption file, one formula per line, `#` comments.
        #[arg(long)]
        axioms: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Countermodel search on the bimodal companion side, cross-checked
    /// against the direct search.
    Bridge {
        #[arg(long)]
        goal: String,
        #[arg(long)]
        axioms: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Exhaustively check an axiom/frame-condition correspondence.
    Correspond {
        /// Catalogue name (e.g. `Sa`) or an inline formula.
        #[arg(long)]
        axiom: String,
        /// One of: sub-prec, ir-succ, p-trans, bhl, semi-trans, strength,
        /// partial-order.
        #[arg(long)]
        cond: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Prime-filter dual frame of an algebra file.
    Dualize {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Validate an algebra file against the lattice and operator laws.
    AlgebraCheck {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Shrink a refuting bimodal model to a cofinal submodel that still
    /// refutes the formula; prints the submodel and a construction trace.
    Minimize {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Enumerate labeled frames of a given size.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "sto")]
        kind: String,
        /// Comma-separated condition names to filter by.
        #[arg(long)]
        filters: Option<String>,
        #[arg(long)]
        count_only: bool,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `hl enumerate ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type CliResult = Result<ExitCode, Box<dyn Error>>;

fn run(cli: Cli) -> CliResult {
    let cap = cli.cap.unwrap_or_else(|| {
        std::env::var("HL_MAX_CANDIDATES")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_CANDIDATE_CAP)
    });
    let opts = SearchOptions {
        valid: ValidOptions { max_atoms: cli.max_atoms },
        enumeration: EnumOptions { cap, dedup: false },
        jobs: cli.jobs.max(1),
    };
    let json = cli.json;
    match cli.command {
        Command::Parse { lang, formula } => cmd_parse(lang, &formula, json),
        Command::Eval { model, formula } => cmd_eval(&model, &formula, json),
        Command::Valid { frame, formula } => cmd_valid(&frame, &formula, &opts, json),
        Command::Translate { formula } => cmd_translate(&formula, json),
        Command::Rho { frame } => cmd_rho(&frame, json),
        Command::Sigma { frame } => cmd_sigma(&frame, json),
        Command::Roundtrip { algebra, frame, via } => {
            cmd_roundtrip(algebra.as_deref(), frame.as_deref(), &via, &opts, json)
        }
        Command::Decide { goal, axioms, max_size } => {
            cmd_decide(&goal, axioms.as_deref(), max_size, &opts, json)
        }
        Command::Bridge { goal, axioms, max_size } => {
            cmd_bridge(&goal, axioms.as_deref(), max_size, &opts, json)
        }
        Command::Correspond { axiom, cond, max_size } => {
            cmd_correspond(&axiom, &cond, max_size, &opts, json)
        }
        Command::Dualize { algebra } => cmd_dualize(&algebra, json),
        Command::AlgebraCheck { algebra } => cmd_algebra_check(&algebra, json),
        Command::Minimize { model, formula } => cmd_minimize(&model, &formula, json),
        Command::Enumerate { size, kind, filters, count_only, dedup } => {
            cmd_enumerate(size, &kind, filters.as_deref(), count_only, dedup, cap, json)
        }
    }
}

fn read_frame(path: &Path) -> Result<Frame, Box<dyn Error>> {
    let text = std::fs::read_to_string(path)?;
    let parsed: FrameJson = serde_json::from_str(&text)?;
    Ok(frame_from_json(&parsed)?)
}

fn read_model(path: &Path) -> Result<hl_core::Model, Box<dyn Error>> {
    let text = std::fs::read_to_string(path)?;
    let parsed: ModelJson = serde_json::from_str(&text)?;
    Ok(model_from_json(&parsed)?)
}

fn read_algebra_json(path: &Path) -> Result<AlgebraJson, Box<dyn Error>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn mask_names(worlds: &[String], m: Mask) -> Vec<String> {
    members(m).map(|i| worlds[i].clone()).collect()
}

fn valuation_names(
    worlds: &[String],
    valuation: &BTreeMap<String, Mask>,
) -> BTreeMap<String, Vec<String>> {
    valuation
        .iter()
        .map(|(a, &m)| (a.clone(), mask_names(worlds, m)))
        .collect()
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn cmd_parse(lang: Lang, formula: &str, json: bool) -> CliResult {
    let rendered = match lang {
        Lang::Sto => parse_sto(formula)?.to_string(),
        Lang::Bi => parse_bi(formula)?.to_string(),
    };
    if json {
        print_json(&json!({ "formula": rendered }));
    } else {
        println!("{rendered}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(model_path: &Path, formula: &str, json: bool) -> CliResult {
    let model = read_model(model_path)?;
    let worlds = model.frame().worlds().to_vec();
    let truth = match model.frame().kind() {
        FrameKind::Sto => model.truth_set(&parse_sto(formula)?)?,
        FrameKind::S4k => model.truth_set_bi(&parse_bi(formula)?)?,
    };
    let names = mask_names(&worlds, truth);
    if json {
        print_json(&json!({ "truth_set": names }));
    } else {
        println!("{{{}}}", names.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_valid(frame_path: &Path, formula: &str, opts: &SearchOptions, json: bool) -> CliResult {
    let frame = read_frame(frame_path)?;
    let outcome = match &frame {
        Frame::Sto(f) => frame_valid(f, &parse_sto(formula)?, opts.valid)?,
        Frame::GeneralSto(g) => frame_valid_general(g, &parse_sto(formula)?, opts.valid)?,
        Frame::S4k(f) => frame_valid_bi(f, &parse_bi(formula)?, opts.valid)?,
        Frame::GeneralS4k(g) => {
            frame_valid_bi_general(g, &parse_bi(formula)?, opts.valid)?
        }
    };
    report_validity(&outcome, frame.worlds(), json)
}

fn report_validity(outcome: &Validity, worlds: &[String], json: bool) -> CliResult {
    match outcome {
        Validity::Valid => {
            if json {
                print_json(&json!({ "valid": true }));
            } else {
                println!("valid");
            }
            Ok(ExitCode::SUCCESS)
        }
        Validity::Refuted { valuation, world } => {
            let named = valuation_names(worlds, valuation);
            if json {
                print_json(&json!({
                    "valid": false,
                    "countervaluation": named,
                    "world": worlds[*world],
                }));
            } else {
                println!("refuted at {}", worlds[*world]);
                for (atom, ws) in named {
                    println!("  {atom} = {{{}}}", ws.join(","));
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_translate(formula: &str, json: bool) -> CliResult {
    let translated = gmt(&parse_sto(formula)?);
    if json {
        print_json(&json!({ "translation": translated.to_string() }));
    } else {
        println!("{translated}");
    }
    Ok(ExitCode::SUCCESS)
}

/// Plain frames carry their maximal admissible family: all upsets on the
/// strict-implication side, the full powerset on the bimodal side.
fn check_transform_size(n: usize) -> Result<(), Box<dyn Error>> {
    // The implicit admissible family of a plain frame is exponential in the
    // carrier; keep the transform commands to sizes where that is sane.
    if n > 16 {
        return Err(format!(
            "frame has {n} worlds; the transform commands are capped at 16"
        )
        .into());
    }
    Ok(())
}

fn as_general_sto(frame: Frame) -> Result<GeneralStoFrame, Box<dyn Error>> {
    match frame {
        Frame::Sto(f) => {
            check_transform_size(f.n())?;
            Ok(GeneralStoFrame::with_all_upsets(f))
        }
        Frame::GeneralSto(g) => Ok(g),
        other => Err(format!("expected a sto frame, got a {} frame", other.kind()).into()),
    }
}

fn as_general_s4k(frame: Frame) -> Result<GeneralS4KFrame, Box<dyn Error>> {
    match frame {
        Frame::S4k(f) => {
            check_transform_size(f.n())?;
            Ok(GeneralS4KFrame::with_powerset(f))
        }
        Frame::GeneralS4k(g) => Ok(g),
        other => Err(format!("expected an s4k frame, got a {} frame", other.kind()).into()),
    }
}

fn emit_frame(frame: &Frame, json: bool) -> CliResult {
    let out = frame_to_json(frame);
    if json {
        print_json(&serde_json::to_value(&out)?);
    } else {
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_rho(frame_path: &Path, json: bool) -> CliResult {
    let general = as_general_s4k(read_frame(frame_path)?)?;
    emit_frame(&Frame::GeneralSto(rho_hat(&general)), json)
}

fn cmd_sigma(frame_path: &Path, json: bool) -> CliResult {
    let general = as_general_sto(read_frame(frame_path)?)?;
    emit_frame(&Frame::GeneralS4k(sigma_hat(&general)), json)
}

fn cmd_roundtrip(
    algebra: Option<&Path>,
    frame: Option<&Path>,
    via: &str,
    opts: &SearchOptions,
    json: bool,
) -> CliResult {
    let _ = opts;
    if let Some(path) = algebra {
        let parsed = read_algebra_json(path)?;
        let (elements, leq, sto) = algebra_parts_from_json(&parsed)?;
        let algebra = HLAlgebra::new(elements, leq, sto)?;
        check_algebra_size(&algebra)?;
        let report = round_trip_algebra(&algebra);
        return if report.is_iso() {
            if json {
                print_json(&json!({ "isomorphic": true }));
            } else {
                println!("isomorphic: the canonical map is an HL-algebra isomorphism");
            }
            Ok(ExitCode::SUCCESS)
        } else {
            if json {
                print_json(&json!({ "isomorphic": false, "failures": report.failures }));
            } else {
                println!("not isomorphic:");
                for f in &report.failures {
                    println!("  {f}");
                }
            }
            Ok(ExitCode::from(1))
        };
    }
    let Some(path) = frame else {
        return Err("roundtrip needs --algebra or --frame".into());
    };
    let general = as_general_sto(read_frame(path)?)?;
    match via {
        "gmt" => {
            let report = rho_sigma_identity(&general);
            if report.identical {
                if json {
                    print_json(&json!({ "identical": true }));
                } else {
                    println!("identical: rho-hat after sigma-hat returns the frame unchanged");
                }
                Ok(ExitCode::SUCCESS)
            } else {
                let reason = report.mismatch.unwrap_or_default();
                if json {
                    print_json(&json!({ "identical": false, "mismatch": reason }));
                } else {
                    println!("mismatch: {reason}");
                }
                Ok(ExitCode::from(1))
            }
        }
        "duality" => {
            let report = round_trip_frame(&general)?;
            if report.is_iso() {
                if json {
                    print_json(&json!({ "isomorphic": true }));
                } else {
                    println!("isomorphic: the evaluation map is a frame isomorphism");
                }
                Ok(ExitCode::SUCCESS)
            } else {
                if json {
                    print_json(&json!({ "isomorphic": false, "failures": report.failures }));
                } else {
                    println!("not isomorphic:");
                    for f in &report.failures {
                        println!("  {f}");
                    }
                }
                Ok(ExitCode::from(1))
            }
        }
        other => Err(format!("unknown roundtrip route `{other}` (gmt or duality)").into()),
    }
}

fn read_axioms(path: Option<&Path>) -> Result<Vec<Formula>, Box<dyn Error>> {
    match path {
        None => Ok(Vec::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok(parse_axiom_lines(&text, parse_sto)?)
        }
    }
}

fn cmd_decide(
    goal: &str,
    axioms: Option<&Path>,
    max_size: usize,
    opts: &SearchOptions,
    json: bool,
) -> CliResult {
    let gamma = read_axioms(axioms)?;
    let goal = parse_sto(goal)?;
    match countermodel_search(&gamma, &goal, max_size, opts)? {
        SearchOutcome::Refuted(model) => {
            let frame_json = frame_to_json(&Frame::Sto(model.frame.clone()));
            let named = valuation_names(model.frame.worlds(), &model.valuation);
            if json {
                print_json(&json!({
                    "refuted": true,
                    "frame": frame_json,
                    "valuation": named,
                    "world": model.frame.worlds()[model.world],
                }));
            } else {
                println!(
                    "refuted on {} worlds at {}",
                    model.frame.n(),
                    model.frame.worlds()[model.world]
                );
                println!("{}", serde_json::to_string_pretty(&frame_json)?);
                for (atom, ws) in named {
                    println!("  {atom} = {{{}}}", ws.join(","));
                }
            }
            Ok(ExitCode::from(1))
        }
        SearchOutcome::NoCountermodelUpTo(n) => {
            if json {
                print_json(&json!({ "refuted": false, "max_size": n }));
            } else {
                println!("no countermodel up to {n} worlds");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_bridge(
    goal: &str,
    axioms: Option<&Path>,
    max_size: usize,
    opts: &SearchOptions,
    json: bool,
) -> CliResult {
    let gamma = read_axioms(axioms)?;
    let goal = parse_sto(goal)?;
    let report = derive_via_translation(&gamma, &goal, max_size, opts)?;
    let sto_refuted = report.sto.refuted();
    let bi_refuted = report.bimodal.refuted();
    if json {
        let bi_witness = match &report.bimodal {
            BiSearchOutcome::Refuted(m) => Some(json!({
                "frame": frame_to_json(&Frame::S4k(m.frame.clone())),
                "valuation": valuation_names(m.frame.worlds(), &m.valuation),
                "world": m.frame.worlds()[m.world],
            })),
            BiSearchOutcome::NoCountermodelUpTo(_) => None,
        };
        print_json(&json!({
            "agree": report.agree(),
            "sto_refuted": sto_refuted,
            "bimodal_refuted": bi_refuted,
            "quotient_refutes": report.quotient_refutes,
            "bimodal_witness": bi_witness,
        }));
    } else {
        println!(
            "direct search: {}",
            if sto_refuted { "refuted" } else { "no countermodel" }
        );
        println!(
            "companion search: {}",
            if bi_refuted { "refuted" } else { "no countermodel" }
        );
        match report.quotient_refutes {
            Some(true) => println!("quotient of the bimodal witness refutes the goal"),
            Some(false) => println!("quotient of the bimodal witness FAILS to refute the goal"),
            None => {}
        }
        println!("agreement: {}", if report.agree() { "yes" } else { "NO" });
    }
    Ok(if report.agree() && !sto_refuted {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_correspond(
    axiom: &str,
    cond: &str,
    max_size: usize,
    opts: &SearchOptions,
    json: bool,
) -> CliResult {
    let cond = FrameCondition::by_name(cond)
        .ok_or_else(|| format!("unknown frame condition `{cond}`"))?;
    let axiom = match axiom.parse::<AxiomName>() {
        Ok(name) => hl_core::axioms::axiom(name),
        Err(_) => match cond.kind() {
            Some(FrameKind::S4k) => hl_core::AxiomFormula::Bi(parse_bi(axiom)?),
            Some(FrameKind::Sto) => hl_core::AxiomFormula::Sto(parse_sto(axiom)?),
            None => match parse_sto(axiom) {
                Ok(f) => hl_core::AxiomFormula::Sto(f),
                Err(_) => hl_core::AxiomFormula::Bi(parse_bi(axiom)?),
            },
        },
    };
    match correspondence_check(&axiom, &cond, max_size, opts)? {
        CorrespondenceOutcome::Verified { frames_checked } => {
            if json {
                print_json(&json!({ "verified": true, "frames_checked": frames_checked }));
            } else {
                println!("verified on {frames_checked} frames");
            }
            Ok(ExitCode::SUCCESS)
        }
        CorrespondenceOutcome::Counterexample { frame, direction } => {
            let dir = match direction {
                hl_core::decide::Direction::AxiomWithoutCondition => {
                    "axiom valid but condition fails"
                }
                hl_core::decide::Direction::ConditionWithoutAxiom => {
                    "condition holds but axiom refuted"
                }
            };
            let frame_json = frame_to_json(&frame);
            if json {
                print_json(&json!({
                    "verified": false,
                    "direction": dir,
                    "frame": frame_json,
                }));
            } else {
                println!("counterexample ({dir}):");
                println!("{}", serde_json::to_string_pretty(&frame_json)?);
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn check_algebra_size(algebra: &HLAlgebra) -> Result<(), Box<dyn Error>> {
    if algebra.size() > 16 {
        return Err(format!(
            "algebra has {} elements; prime-filter enumeration is capped at 16",
            algebra.size()
        )
        .into());
    }
    Ok(())
}

fn cmd_dualize(path: &Path, json: bool) -> CliResult {
    let parsed = read_algebra_json(path)?;
    let (elements, leq, sto) = algebra_parts_from_json(&parsed)?;
    let algebra = HLAlgebra::new(elements, leq, sto)?;
    check_algebra_size(&algebra)?;
    emit_frame(&Frame::GeneralSto(dual_frame(&algebra)), json)
}

fn cmd_algebra_check(path: &Path, json: bool) -> CliResult {
    let parsed = read_algebra_json(path)?;
    let (elements, leq, sto) = algebra_parts_from_json(&parsed)?;
    match HLAlgebra::new(elements, leq, sto) {
        Ok(algebra) => {
            if json {
                print_json(&json!({ "valid": true, "size": algebra.size() }));
            } else {
                println!("valid HL-algebra with {} elements", algebra.size());
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let messages: Vec<String> = e.violations.iter().map(|v| v.to_string()).collect();
            if json {
                print_json(&json!({ "valid": false, "violations": messages }));
            } else {
                println!("invalid:");
                for m in &messages {
                    println!("  {m}");
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_minimize(model_path: &Path, formula: &str, json: bool) -> CliResult {
    let model = read_model(model_path)?;
    let phi = parse_bi(formula)?;
    let x_omega = build_x_omega(&model, &phi)?;
    let extension = cofinal_extension(&model, &phi, x_omega.set)?;
    let report = verify_submodel_truth(&model, extension.set, &phi)?;
    let frame = match model.frame() {
        Frame::S4k(f) => f.clone(),
        Frame::GeneralS4k(g) => g.frame().clone(),
        _ => unreachable!("build_x_omega enforces the frame kind"),
    };
    let submodel = restrict_model(&frame, model.valuation(), extension.set);
    let submodel_json = model_to_json(&submodel);
    let worlds = frame.worlds();
    let trace: Vec<String> = x_omega
        .trace
        .iter()
        .flat_map(|step| {
            step.added.iter().map(move |w| {
                format!(
                    "{} step: {} needs class {} witness, picked {}",
                    step.rel, worlds[w.source], w.class, worlds[w.witness]
                )
            })
        })
        .collect();
    if json {
        print_json(&json!({
            "submodel": submodel_json,
            "x0": worlds[x_omega.x0],
            "x_omega": mask_names(worlds, x_omega.set),
            "extension": mask_names(worlds, extension.set),
            "trace": trace,
            "passes": report.passes(),
        }));
    } else {
        println!("refutation root: {}", worlds[x_omega.x0]);
        println!("witness set: {{{}}}", mask_names(worlds, x_omega.set).join(","));
        println!(
            "cofinal extension: {{{}}}",
            mask_names(worlds, extension.set).join(",")
        );
        for line in &trace {
            println!("  {line}");
        }
        println!(
            "submodel truth check: {}",
            if report.passes() { "passes" } else { "FAILS" }
        );
        println!("{}", serde_json::to_string_pretty(&submodel_json)?);
    }
    Ok(if report.passes() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_enumerate(
    size: usize,
    kind: &str,
    filters: Option<&str>,
    count_only: bool,
    dedup: bool,
    cap: u64,
    json: bool,
) -> CliResult {
    if size == 0 {
        return Err("--size must be at least 1".into());
    }
    let kind = match kind {
        "sto" => FrameKind::Sto,
        "s4k" => FrameKind::S4k,
        other => return Err(format!("unknown kind `{other}`").into()),
    };
    let mut conditions = Vec::new();
    if let Some(list) = filters {
        for name in list.split(',').filter(|s| !s.is_empty()) {
            conditions.push(
                FrameCondition::by_name(name)
                    .ok_or_else(|| format!("unknown frame condition `{name}`"))?,
            );
        }
    }
    let plan = FramePlan::new(size, kind, &conditions, &EnumOptions { cap, dedup })?;
    if count_only {
        let count: usize = (0..plan.order_count()).map(|i| plan.expand(i).len()).sum();
        if json {
            print_json(&json!({ "count": count }));
        } else {
            println!("{count}");
        }
    } else {
        for chunk in 0..plan.order_count() {
            for frame in plan.expand(chunk) {
                println!("{}", serde_json::to_string(&frame_to_json(&frame))?);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
