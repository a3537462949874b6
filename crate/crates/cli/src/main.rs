use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use repsys::conditions::{
    amp_vs_sasaki, build_amp, check_condition_oml, check_condition_omp, derived_meet, verify_amp_axioms,
};
use repsys::decompose::{build_canonical_rs, enumerate_boolean_subalgebras, roundtrip_check};
use repsys::model::document::{Body, Model};
use repsys::model::report::{
    amp_records, classification_records, closure_record, pair_record, poset_records, rs_axiom_records,
    Record, Report,
};
use repsys::model::{parse, zoo, zoo_model, ModelDocument};
use repsys::repsys::{check_rs_axioms, validate_boolean_rs, validate_rs, RsCandidate};
use repsys::sum::{check_fixed_points, check_same_view_joins, sum_as_orthoposet, verify_closure_properties};
use repsys::{BooleanRepresentationSystem, OrthoPoset, RepresentationSystem, Sum};

#[derive(Parser)]
#[command(
    name = "repsys",
    version,
    about = "Finite orthoposets and representation systems"
)]
struct Cli {
    /// Print a human-readable summary instead of JSON Lines.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model and run the validator for its kind.
    Validate { input: String },
    /// Report lattice, boolean and orthomodularity verdicts.
    Classify { input: String },
    /// Build the sum of the model's representation system.
    Sum {
        input: String,
        /// Print the sum as a model document instead of records.
        #[arg(long)]
        emit_model: bool,
    },
    /// Run one checker.
    Check {
        input: String,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Enumerate boolean subalgebras.
    Decompose {
        input: String,
        /// One record per subalgebra with its carrier.
        #[arg(long)]
        list: bool,
    },
    /// Decompose into boolean subalgebras and sum them back.
    Roundtrip { input: String },
    /// Build the `&` operation and verify its axioms.
    Amp {
        input: String,
        /// Compare with the Sasaki projection.
        #[arg(long)]
        vs_sasaki: bool,
    },
    /// List built-in models, or print one.
    Zoo { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Rs,
    BooleanRs,
    Eq6,
    Eq11,
    Closure,
}

enum Failure {
    Usage(String),
    Internal(String),
}

type Outcome = Result<Report, Failure>;

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn load(input: &str) -> Result<ModelDocument, Failure> {
    let (source, origin) = match input.strip_prefix("zoo:") {
        Some(name) => {
            let m = zoo_model(name).ok_or_else(|| Failure::Usage(format!("no built-in model `{name}`")))?;
            (m.source, input.to_owned())
        }
        None => (
            fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?,
            input.to_owned(),
        ),
    };
    parse(&source).map_err(|e| Failure::Usage(format!("{origin}:{e}")))
}

/// A model that parsed but failed validation yields a false record.
fn build(doc: &ModelDocument) -> Result<Model, Report> {
    doc.build().map_err(|e| {
        let mut r = Report::default();
        r.push(Record::new(&doc.name, "valid", false).with_detail(e.to_string()));
        r
    })
}

/// The representation system a model stands for: a single view for a poset,
/// the canonical boolean system for an orthoposet, the system itself otherwise.
struct System {
    rs: RepresentationSystem,
    brs: Option<BooleanRepresentationSystem>,
}

fn system(model: Model) -> Result<System, Failure> {
    match model {
        Model::Poset(p) => {
            let n = p.len();
            let mut c = RsCandidate::new(vec!["P".into()], vec![p]);
            c.set_transform(0, 0, (0..n).collect());
            Ok(System {
                rs: validate_rs(c).map_err(internal)?,
                brs: None,
            })
        }
        Model::Orthoposet(o) => {
            let canonical = build_canonical_rs(&o).map_err(internal)?;
            Ok(System {
                rs: canonical.brs.base().clone(),
                brs: Some(canonical.brs),
            })
        }
        Model::Repsys(m) => {
            let brs = if m.orthos.iter().all(Option::is_some) {
                m.boolean().ok()
            } else {
                None
            };
            Ok(System { rs: m.rs, brs })
        }
    }
}

fn ortho_of(doc: &ModelDocument, model: Model, command: &str) -> Result<OrthoPoset, Failure> {
    match model {
        Model::Orthoposet(o) => Ok(o),
        Model::Repsys(m) => {
            let brs = m.boolean().map_err(|e| {
                Failure::Usage(format!("{command} needs an orthoposet or a boolean system: {e}"))
            })?;
            let sum = Sum::build(brs.base()).map_err(internal)?;
            sum_as_orthoposet(&sum.poset, &brs).map_err(internal)
        }
        Model::Poset(_) => Err(Failure::Usage(format!(
            "{command} needs an orthoposet, `{}` is a poset",
            doc.name
        ))),
    }
}

fn run(command: Command) -> Outcome {
    if let Command::Zoo { name } = command {
        return zoo_command(name);
    }
    let input = match &command {
        Command::Validate { input }
        | Command::Classify { input }
        | Command::Sum { input, .. }
        | Command::Check { input, .. }
        | Command::Decompose { input, .. }
        | Command::Roundtrip { input }
        | Command::Amp { input, .. } => input.clone(),
        Command::Zoo { .. } => unreachable!(),
    };
    let doc = load(&input)?;
    let name = doc.name.clone();
    let mut report = Report::default();

    if let (
        Command::Validate { .. }
        | Command::Check {
            property: Property::Rs,
            ..
        },
        Body::Repsys(spec),
    ) = (&command, &doc.body)
    {
        let (candidate, _) = spec.candidate().map_err(|e| Failure::Usage(e.to_string()))?;
        let axioms = check_rs_axioms(candidate).map_err(|e| Failure::Usage(e.to_string()))?;
        report.extend(rs_axiom_records(&name, &axioms));
        return Ok(report);
    }

    let model = match build(&doc) {
        Ok(m) => m,
        Err(r) => return Ok(r),
    };

    match command {
        Command::Validate { .. } => {
            let (kind, size) = match &model {
                Model::Poset(p) => ("poset", p.len()),
                Model::Orthoposet(o) => ("orthoposet", o.len()),
                Model::Repsys(m) => ("repsys", m.rs.view_count()),
            };
            let counter = if kind == "repsys" { "views" } else { "elements" };
            report.push(
                Record::new(&name, "valid", true)
                    .with_detail(kind)
                    .with_count(counter, size),
            );
        }
        Command::Classify { .. } => match model {
            Model::Poset(p) => report.extend(poset_records(&name, &p)),
            Model::Orthoposet(o) => report.extend(classification_records(&name, &o)),
            Model::Repsys(m) => match m.boolean() {
                Ok(brs) => {
                    let sum = Sum::build(brs.base()).map_err(internal)?;
                    let o = sum_as_orthoposet(&sum.poset, &brs).map_err(internal)?;
                    report.extend(classification_records(&name, &o));
                }
                Err(_) => {
                    let sum = Sum::build(&m.rs).map_err(internal)?;
                    report.extend(poset_records(&name, sum.poset.order()));
                }
            },
        },
        Command::Sum { emit_model, .. } => {
            let sys = system(model)?;
            let sum = Sum::build(&sys.rs).map_err(internal)?;
            if emit_model {
                let out_name = format!("{name}_sum");
                let out = match &sys.brs {
                    Some(brs) => {
                        let o = sum_as_orthoposet(&sum.poset, brs).map_err(internal)?;
                        ModelDocument::from_orthoposet(&out_name, &o)
                    }
                    None => ModelDocument::from_poset(&out_name, sum.poset.order()),
                };
                print!("{out}");
                return Ok(Report::default());
            }
            report.push(
                Record::new(&name, "sum", true)
                    .with_count("views", sys.rs.view_count())
                    .with_count("pairs", sum.presum.len())
                    .with_count("classes", sum.poset.len()),
            );
            if let Some(brs) = &sys.brs {
                let ok = sum_as_orthoposet(&sum.poset, brs);
                let mut r = Record::new(&name, "sum_orthoposet", ok.is_ok());
                if let Err(e) = ok {
                    r = r.with_detail(e.to_string());
                }
                report.push(r);
            }
        }
        Command::Check { property, .. } => {
            let sys = system(model)?;
            match property {
                Property::Rs => {
                    let axioms = check_rs_axioms(sys.rs.to_candidate()).map_err(internal)?;
                    report.extend(rs_axiom_records(&name, &axioms));
                }
                Property::BooleanRs => {
                    let r = match &doc.body {
                        Body::Repsys(spec) => {
                            let (_, orthos) = spec.candidate().map_err(|e| Failure::Usage(e.to_string()))?;
                            validate_boolean_rs(sys.rs.clone(), orthos).map(|_| ())
                        }
                        _ => match &sys.brs {
                            Some(_) => Ok(()),
                            None => Err(repsys::repsys::BooleanRsError::ViewNotBoolean {
                                view: "P".into(),
                                reason: repsys::repsys::ViewFailure::NoOrthocomplement,
                            }),
                        },
                    };
                    let mut rec = Record::new(&name, "boolean_rs", r.is_ok());
                    if let Err(e) = r {
                        rec = rec.with_detail(e.to_string());
                    }
                    report.push(rec);
                }
                Property::Eq6 | Property::Eq11 | Property::Closure => {
                    let sum = Sum::build(&sys.rs).map_err(internal)?;
                    report.push(match property {
                        Property::Eq6 => pair_record(
                            &name,
                            "condition_omp",
                            &sum.poset,
                            check_condition_omp(&sum.poset, &sum.closures),
                        ),
                        Property::Eq11 => pair_record(
                            &name,
                            "condition_oml",
                            &sum.poset,
                            check_condition_oml(&sum.poset, &sum.closures),
                        ),
                        _ => closure_record(
                            &name,
                            &sum.poset,
                            sys.rs.views(),
                            verify_closure_properties(&sum.poset, &sum.closures),
                        ),
                    });
                    if let (Property::Closure, Some(brs)) = (property, &sys.brs) {
                        let joins = check_same_view_joins(&sum.poset, brs);
                        let mut r = Record::new(&name, "same_view_joins", joins.holds());
                        if let Some(w) = joins.witness() {
                            r = r.with_witness([
                                sys.rs.views()[w.view].as_str(),
                                sum.poset.name(w.x),
                                sum.poset.name(w.y),
                            ]);
                        }
                        report.push(r);
                        let o = sum_as_orthoposet(&sum.poset, brs).map_err(internal)?;
                        let fixed = check_fixed_points(&o, &sum.closures);
                        let mut r = Record::new(&name, "fixed_points_closed", fixed.holds());
                        if let Some(w) = fixed.witness() {
                            r = r.with_detail(format!("{w:?}"));
                        }
                        report.push(r);
                    }
                }
            }
        }
        Command::Decompose { list, .. } => {
            let o = ortho_of(&doc, model, "decompose")?;
            let subs = enumerate_boolean_subalgebras(&o).map_err(|e| Failure::Usage(e.to_string()))?;
            report.push(
                Record::new(&name, "boolean_subalgebras", true)
                    .with_count("elements", o.len())
                    .with_count("subalgebras", subs.len())
                    .with_count("maximal", maximal_count(&subs)),
            );
            if list {
                for (i, b) in subs.iter().enumerate() {
                    report.push(
                        Record::new(&name, &format!("B{i}"), true)
                            .with_witness(b.carrier().iter().map(|&x| o.name(x)))
                            .with_count("atoms", b.atoms().len()),
                    );
                }
            }
        }
        Command::Roundtrip { .. } => {
            let o = ortho_of(&doc, model, "roundtrip")?;
            match roundtrip_check(&o) {
                Ok(rt) => {
                    let mapping = rt
                        .iso
                        .iter()
                        .enumerate()
                        .map(|(c, &x)| [rt.sum.poset.name(c).to_owned(), o.name(x).to_owned()])
                        .collect();
                    report.push(
                        Record::new(&name, "roundtrip", true)
                            .with_count("views", rt.canonical.subalgebras.len())
                            .with_count("classes", rt.sum.poset.len())
                            .with_mapping(mapping),
                    );
                    let class = o.classify();
                    if class.is_omp {
                        let s = &rt.sum;
                        report.push(pair_record(
                            &name,
                            "condition_omp",
                            &s.poset,
                            check_condition_omp(&s.poset, &s.closures),
                        ));
                    }
                    if class.is_oml {
                        let s = &rt.sum;
                        report.push(pair_record(
                            &name,
                            "condition_oml",
                            &s.poset,
                            check_condition_oml(&s.poset, &s.closures),
                        ));
                    }
                }
                Err(e) => report.push(
                    Record::new(&name, "roundtrip", false).with_detail(format!("{}: {}", e.stage, e.detail)),
                ),
            }
        }
        Command::Amp { vs_sasaki, .. } => {
            let sys = system(model)?;
            let brs = sys
                .brs
                .ok_or_else(|| Failure::Usage("amp needs an orthoposet or a boolean system".into()))?;
            let sum = Sum::build(brs.base()).map_err(internal)?;
            let o = sum_as_orthoposet(&sum.poset, &brs).map_err(internal)?;
            let amp = match build_amp(&sum.poset, &sum.closures) {
                Ok(a) => a,
                Err(e) => {
                    report.push(Record::new(&name, "amp_build", false).with_detail(e.to_string()));
                    return Ok(report);
                }
            };
            report.push(Record::new(&name, "amp_build", true).with_count("elements", amp.len()));
            let axioms = verify_amp_axioms(&amp, &o).map_err(internal)?;
            report.extend(amp_records(&name, &o, &axioms));

            let mut bad = None;
            let mut checked = 0;
            for x in 0..o.len() {
                for y in 0..o.len() {
                    let Some(m) = o.meet(x, y) else { continue };
                    checked += 1;
                    if bad.is_none() && derived_meet(&amp, &o, x, y) != Ok(m) {
                        bad = Some((x, y));
                    }
                }
            }
            let mut r = Record::new(&name, "derived_meet", bad.is_none()).with_count("checked", checked);
            if let Some((x, y)) = bad {
                r = r.with_witness([o.name(x), o.name(y)]);
            }
            report.push(r);

            if vs_sasaki {
                report.push(match amp_vs_sasaki(&amp, &o) {
                    Ok(a) => {
                        let mut r = Record::new(&name, "sasaki_agreement", a.is_full())
                            .with_count("agree", a.agree)
                            .with_count("total", a.total);
                        if let Some((x, y)) = a.first_disagreement {
                            r = r.with_witness([o.name(x), o.name(y)]);
                        }
                        r
                    }
                    Err(e) => Record::new(&name, "sasaki_agreement", false).with_detail(e.to_string()),
                });
            }
        }
        Command::Zoo { .. } => unreachable!(),
    }
    Ok(report)
}

fn maximal_count(subs: &[repsys::decompose::BooleanSubalgebra]) -> usize {
    subs.iter()
        .filter(|b| {
            !subs
                .iter()
                .any(|c| c.len() > b.len() && b.carrier().iter().all(|&x| c.contains(x)))
        })
        .count()
}

fn zoo_command(name: Option<String>) -> Outcome {
    match name {
        Some(n) => {
            let m = zoo_model(&n).ok_or_else(|| Failure::Usage(format!("no built-in model `{n}`")))?;
            print!("{}", m.source);
            Ok(Report::default())
        }
        None => {
            let mut report = Report::default();
            for m in zoo() {
                let doc = m.document();
                let mut r = Record::new(m.name, "zoo", true).with_detail(doc.kind().keyword());
                if !m.aliases.is_empty() {
                    r = r.with_witness(m.aliases.iter().copied());
                }
                report.push(r);
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.text {
                print!("{}", report.to_text());
            } else {
                print!("{}", report.to_jsonl());
            }
            ExitCode::from(if report.all_hold() { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal consistency failure: {msg}");
            ExitCode::from(3)
        }
    }
}
