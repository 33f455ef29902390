//! `tdhom`: verify structure files, compute cohomology, browse the corpus.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CheckLine, ClassicalTable, CohomologyReport, ExampleLine, FileReport, Report, Status, TwistedTable};
use tdhom::algebra::{self, LieAlgebra};
use tdhom::coalgebra::Coalgebra;
use tdhom::cohomology::twisted::induced_cochain;
use tdhom::cohomology::{ce_complex, ce_differential, td_complex, td_delta_operator, AltCochain, TdCochain};
use tdhom::format::{load_structure_constants, to_text, Structure};
use tdhom::guard::Guard;
use tdhom::lie_rinehart::{check_lr, check_subcomplex, check_td_lr, TdLrStructure};
use tdhom::td::{check_td_lie, check_td_module, check_td_poisson, TdModule};
use tdhom::witness::{CheckReport, Verdict};
use tdhom::{corpus, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "tdhom", version, about = "Exact twisted-domain structures on Hom(C, L)")]
struct Cli {
    /// Load structures whose axioms fail instead of rejecting them.
    #[arg(long, global = true)]
    unsafe_skip_axioms: bool,
    /// Print the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checker suites on structure files.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Coalgebras for the twisted suites (corpus name or file); defaults
        /// to every coalgebra in the corpus.
        #[arg(long = "coalgebra")]
        coalgebras: Vec<String>,
        /// Top degree for the Lie–Rinehart subcomplex check.
        #[arg(long, default_value_t = 2)]
        maxdeg: usize,
    },
    /// Chevalley–Eilenberg cohomology dims, optionally of the twisted complex.
    Cohomology {
        /// Extra structure files that --module and --coalgebra may name.
        paths: Vec<PathBuf>,
        /// Lie module, or Lie–Rinehart pair acting on B (corpus name or file).
        #[arg(long)]
        module: String,
        #[arg(long)]
        coalgebra: Option<String>,
        #[arg(long)]
        maxdeg: usize,
        /// Also compute the twisted complex over --coalgebra.
        #[arg(long)]
        td: bool,
    },
    /// The bundled example corpus.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    Export {
        name: String,
        /// Write here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Coalgebra,
    Lie,
    TdLie,
    TdPoisson,
    TdModule,
    LieRinehart,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Coalgebra => "coalgebra",
            Suite::Lie => "lie",
            Suite::TdLie => "td-lie",
            Suite::TdPoisson => "td-poisson",
            Suite::TdModule => "td-module",
            Suite::LieRinehart => "lie-rinehart",
            Suite::All => "all",
        }
    }
}

/// An error that ends the command with a given exit code.
struct Abort {
    code: u8,
    message: String,
}

impl Abort {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Guard(_) => EXIT_GUARD,
            Error::Axiom { .. } | Error::Precondition(_) | Error::Consistency(_) => EXIT_FAIL,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (mut report, code) = match &cli.command {
        Command::Verify { paths, suite, coalgebras, maxdeg } => verify(&cli, paths, *suite, coalgebras, *maxdeg),
        Command::Cohomology { paths, module, coalgebra, maxdeg, td } => {
            cohomology(&cli, paths, module, coalgebra.as_deref(), *maxdeg, *td)
        }
        Command::Examples { action } => examples(action),
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report.status = match code {
        0 => Status::Pass,
        EXIT_GUARD => Status::Skipped,
        _ => Status::Fail,
    };
    if cli.json {
        print!("{}", report.to_json());
    } else if !matches!(&cli.command, Command::Examples { action: ExamplesAction::Export { output: None, .. } }) || code != 0 {
        print!("{}", report::render_text(&report));
    }
    if let (true, Some(e)) = (cli.json, &report.error) {
        eprintln!("tdhom: {e}");
    }
    ExitCode::from(code)
}

fn guard() -> Result<Guard, Abort> {
    Guard::from_env().map_err(Abort::from)
}

fn load_file(path: &Path, skip_axioms: bool) -> Result<Structure, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    load_structure_constants(&text, skip_axioms).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// A file path, a structure name or file stem among `loaded`, or a corpus
/// fixture name.
fn resolve(wanted: &str, loaded: &[(PathBuf, Structure)], skip_axioms: bool) -> Result<Structure, Abort> {
    let p = Path::new(wanted);
    if p.is_file() {
        return Ok(load_file(p, skip_axioms)?);
    }
    if let Some((_, s)) = loaded.iter().find(|(path, s)| s.name() == wanted || path.file_stem().is_some_and(|st| st == wanted)) {
        return Ok(s.clone());
    }
    match corpus::get(wanted) {
        Some(f) => Ok(load_structure_constants(f.text, skip_axioms || f.broken)?),
        None => Err(Abort::input(format!("no structure file or corpus fixture named {wanted:?}"))),
    }
}

fn coalgebras_for(names: &[String], skip_axioms: bool) -> Result<Vec<Arc<Coalgebra>>, Abort> {
    if names.is_empty() {
        return Ok(corpus::coalgebras());
    }
    names
        .iter()
        .map(|s| match resolve(s, &[], skip_axioms)? {
            Structure::Coalgebra(c) => Ok(Arc::new(c)),
            other => Err(Abort::input(format!("{s} is a {} structure, not a coalgebra", other.role().as_str()))),
        })
        .collect()
}

fn lines(suite: &str, over: Option<&str>, report: CheckReport) -> Vec<CheckLine> {
    report
        .checks
        .into_iter()
        .map(|c| {
            let (status, witness) = match c.verdict {
                Verdict::Pass => (Status::Pass, None),
                Verdict::Fail(w) => (Status::Fail, Some(w)),
            };
            CheckLine { suite: suite.into(), identity: c.identity, over: over.map(String::from), status, witness, note: None }
        })
        .collect()
}

/// A checker outcome: verdict lines, or one line describing why it could not
/// run. Guard refusals are remembered for the exit code.
fn outcome(suite: &str, over: Option<&str>, what: &str, r: tdhom::Result<CheckReport>, guarded: &mut bool) -> Vec<CheckLine> {
    match r {
        Ok(report) => lines(suite, over, report),
        Err(e) => {
            let status = match e {
                Error::Guard(_) => {
                    *guarded = true;
                    Status::Skipped
                }
                _ => Status::Fail,
            };
            let (witness, note) = match e {
                Error::Axiom { axiom, witness } => (Some(witness), format!("{axiom} fails")),
                other => (None, other.to_string()),
            };
            vec![CheckLine {
                suite: suite.into(),
                identity: what.into(),
                over: over.map(String::from),
                status,
                witness,
                note: Some(note),
            }]
        }
    }
}

fn underlying_lie(s: &Structure) -> Option<LieAlgebra> {
    match s {
        Structure::Lie(l) => Some(l.clone()),
        Structure::Module(m) => Some(m.algebra().clone()),
        Structure::Poisson(p) => Some(p.lie()),
        Structure::LieRinehart(p) => Some(p.lie().clone()),
        _ => None,
    }
}

struct VerifyContext<'a> {
    coalgebras: &'a [Arc<Coalgebra>],
    guard: Guard,
    maxdeg: usize,
}

fn run_suite(suite: Suite, s: &Structure, cx: &VerifyContext, guarded: &mut bool) -> Option<Vec<CheckLine>> {
    let name = suite.name();
    let mut out = Vec::new();
    match suite {
        Suite::Coalgebra => {
            let c = match s {
                Structure::Coalgebra(c) => c,
                Structure::HomElement(h) => h.coalgebra().as_ref(),
                _ => return None,
            };
            let verdict = c.check_coassociativity();
            let mut report = CheckReport::new();
            report.push("coassociativity (Δ⊗1)Δ = (1⊗Δ)Δ", verdict);
            out.extend(lines(name, None, report));
            out.push(CheckLine {
                suite: name.into(),
                identity: "symmetry class".into(),
                over: None,
                status: Status::Pass,
                witness: None,
                note: Some(c.symmetry_class().to_string()),
            });
        }
        Suite::Lie => {
            let r = match s {
                Structure::Lie(l) => algebra::check_lie(l),
                Structure::Module(m) => algebra::check_lie(m.algebra()).and_then(|mut r| {
                    r.extend(algebra::check_module(m)?);
                    Ok(r)
                }),
                Structure::Poisson(p) => algebra::check_poisson(p),
                Structure::Associative(a) => algebra::check_associative(a),
                Structure::LieRinehart(p) => check_lr(p),
                _ => return None,
            };
            out.extend(outcome(name, None, "classical axioms", r, guarded));
        }
        Suite::TdLie => {
            let l = underlying_lie(s)?;
            for c in cx.coalgebras {
                out.extend(outcome(name, Some(c.name()), "TD Lie identities", check_td_lie(&l, c), guarded));
            }
        }
        Suite::TdPoisson => {
            let Structure::Poisson(p) = s else { return None };
            for c in cx.coalgebras {
                out.extend(outcome(name, Some(c.name()), "TD Poisson identities", check_td_poisson(p, c), guarded));
            }
        }
        Suite::TdModule => {
            let m = match s {
                Structure::Module(m) => m.clone(),
                Structure::LieRinehart(p) => p.lie_module(),
                _ => return None,
            };
            for c in cx.coalgebras {
                let r = check_td_module(&TdModule::new(m.clone(), c.clone()));
                out.extend(outcome(name, Some(c.name()), "TD module identity", r, guarded));
            }
        }
        Suite::LieRinehart => {
            let Structure::LieRinehart(p) = s else { return None };
            out.extend(outcome(name, None, "Lie-Rinehart axioms", check_lr(p), guarded));
            for c in cx.coalgebras {
                let st = TdLrStructure::new(p.clone(), c.clone());
                out.extend(outcome(name, Some(c.name()), "twisted Lie-Rinehart identities", check_td_lr(&st), guarded));
                let identity = format!("linear cochains form a subcomplex up to degree {}", cx.maxdeg);
                match check_subcomplex(&st, cx.maxdeg, &cx.guard) {
                    Ok(rep) => out.push(CheckLine {
                        suite: name.into(),
                        identity,
                        over: Some(c.name().into()),
                        status: Status::Pass,
                        witness: None,
                        note: Some(format!("linear dims {:?}", rep.linear_dims)),
                    }),
                    Err(e) => out.extend(outcome(name, Some(c.name()), &identity, Err(e), guarded)),
                }
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
    Some(out)
}

fn verify_one(path: &Path, suite: Suite, skip: bool, cx: &VerifyContext, timing: bool) -> (FileReport, bool, bool) {
    let start = Instant::now();
    let mut file = FileReport {
        path: path.display().to_string(),
        name: None,
        role: None,
        checks: Vec::new(),
        error: None,
        timing_ms: None,
    };
    let mut guarded = false;
    let mut input_error = false;
    match load_file(path, skip) {
        Err(e @ Error::Axiom { .. }) => {
            // the structure parsed but its own axioms fail
            file.checks = outcome("load", None, "axioms on load", Err(e), &mut guarded);
        }
        Err(e) => {
            input_error = true;
            file.error = Some(e.to_string());
        }
        Ok(s) => {
            file.name = Some(s.name());
            file.role = Some(s.role().as_str().into());
            let suites = if suite == Suite::All {
                vec![Suite::Coalgebra, Suite::Lie, Suite::TdLie, Suite::TdPoisson, Suite::TdModule, Suite::LieRinehart]
            } else {
                vec![suite]
            };
            for su in &suites {
                match run_suite(*su, &s, cx, &mut guarded) {
                    Some(ls) => file.checks.extend(ls),
                    None if suite != Suite::All => file.checks.push(CheckLine {
                        suite: su.name().into(),
                        identity: format!("does not apply to a {} structure", s.role().as_str()),
                        over: None,
                        status: Status::Skipped,
                        witness: None,
                        note: None,
                    }),
                    None => {}
                }
            }
        }
    }
    if timing {
        file.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    (file, input_error, guarded)
}

fn verify(cli: &Cli, paths: &[PathBuf], suite: Suite, coalgebras: &[String], maxdeg: usize) -> (Report, u8) {
    let mut report = Report::new("verify");
    let setup = guard().and_then(|g| Ok((g, coalgebras_for(coalgebras, cli.unsafe_skip_axioms)?)));
    let (guard, coalgebras) = match setup {
        Ok(x) => x,
        Err(a) => {
            report.error = Some(a.message);
            return (report, a.code);
        }
    };
    let cx = VerifyContext { coalgebras: &coalgebras, guard, maxdeg };
    // files are independent; results are collected in argument order
    let results: Vec<(FileReport, bool, bool)> = std::thread::scope(|scope| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| scope.spawn(|| verify_one(p, suite, cli.unsafe_skip_axioms, &cx, cli.timing)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
    });
    let (mut input_error, mut guarded) = (false, false);
    for (file, i, g) in results {
        input_error |= i;
        guarded |= g;
        report.files.push(file);
    }
    let failed = report.files.iter().flat_map(|f| &f.checks).any(|c| c.status == Status::Fail);
    let code = if input_error {
        EXIT_INPUT
    } else if failed {
        EXIT_FAIL
    } else if guarded {
        EXIT_GUARD
    } else {
        0
    };
    (report, code)
}

fn cohomology(cli: &Cli, paths: &[PathBuf], module: &str, coalgebra: Option<&str>, maxdeg: usize, td: bool) -> (Report, u8) {
    let mut report = Report::new("cohomology");
    match cohomology_tables(cli, paths, module, coalgebra, maxdeg, td) {
        Ok(c) => {
            let agree = c.twisted.as_ref().is_none_or(|t| t.direct_matches_induced);
            report.cohomology = Some(c);
            (report, if agree { 0 } else { EXIT_FAIL })
        }
        Err(a) => {
            report.error = Some(a.message);
            (report, a.code)
        }
    }
}

fn cohomology_tables(
    cli: &Cli,
    paths: &[PathBuf],
    module: &str,
    coalgebra: Option<&str>,
    maxdeg: usize,
    td: bool,
) -> Result<CohomologyReport, Abort> {
    let skip = cli.unsafe_skip_axioms;
    let loaded: Vec<(PathBuf, Structure)> =
        paths.iter().map(|p| Ok((p.clone(), load_file(p, skip)?))).collect::<Result<_, Abort>>()?;
    let m = match resolve(module, &loaded, skip)? {
        Structure::Module(m) => m,
        Structure::LieRinehart(p) => p.lie_module(),
        other => return Err(Abort::input(format!("{module} is a {} structure, not a module", other.role().as_str()))),
    };
    let classical = ce_complex(&m, maxdeg)?;
    let mut out = CohomologyReport {
        module: m.name().to_string(),
        maxdeg,
        classical: ClassicalTable {
            cochain_dims: classical.dims(),
            ranks: classical.ranks(),
            cohomology: classical.cohomology_dims(),
        },
        twisted: None,
    };
    if td {
        let wanted = coalgebra.ok_or_else(|| Abort::input("--td needs --coalgebra"))?;
        let c = match resolve(wanted, &loaded, skip)? {
            Structure::Coalgebra(c) => Arc::new(c),
            other => return Err(Abort::input(format!("{wanted} is a {} structure, not a coalgebra", other.role().as_str()))),
        };
        let guard = guard()?;
        let tdm = TdModule::new(m.clone(), c.clone());
        let complex = td_complex(&tdm, maxdeg, &guard).map_err(|e| match e {
            Error::Guard(g) => Abort { code: EXIT_GUARD, message: format!("{g}; set TDHOM_GUARD_LIMIT to raise the entry limit") },
            other => other.into(),
        })?;
        let mut agree = true;
        let (l, b) = (m.algebra().space().clone(), m.space().clone());
        for n in 0..=maxdeg {
            for f in AltCochain::basis(&l, &b, n) {
                let direct = td_delta_operator(&TdCochain { inducing: f.clone() }, &tdm, &guard)?;
                agree &= direct == induced_cochain(&ce_differential(&f, &m)?, &c)?;
            }
        }
        out.twisted = Some(TwistedTable {
            coalgebra: c.name().to_string(),
            alt_dims: complex.alt_dims,
            kernel_dims: complex.kernel_dims,
            td_dims: complex.td_dims,
            delta_ranks: complex.delta_ranks,
            cohomology: complex.cohomology,
            direct_matches_induced: agree,
        });
    } else if coalgebra.is_some() {
        return Err(Abort::input("--coalgebra only applies with --td"));
    }
    Ok(out)
}

fn examples(action: &ExamplesAction) -> (Report, u8) {
    let mut report = Report::new("examples");
    match action {
        ExamplesAction::List => {
            report.examples = corpus::FIXTURES
                .iter()
                .map(|f| ExampleLine { name: f.name.to_string(), classification: f.classification() })
                .collect();
            (report, 0)
        }
        ExamplesAction::Export { name, output } => {
            let Some(f) = corpus::get(name) else {
                report.error = Some(format!("unknown example {name:?}; see `tdhom examples list`"));
                return (report, EXIT_INPUT);
            };
            // re-serialize so the exported text is the canonical form
            let text = f.load().and_then(|s| to_text(&s)).expect("corpus fixtures serialize");
            match output {
                None => print!("{text}"),
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &text) {
                        report.error = Some(format!("{}: {e}", p.display()));
                        return (report, EXIT_INPUT);
                    }
                }
            }
            (report, 0)
        }
    }
}
