use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nctame::deriv::Side;
use nctame::natree::DEFAULT_MAX_DEGREE;
use nctame::report::{run, verify_json, Command, DerivKind, Report};
use nctame::Error;

#[derive(Parser)]
#[command(name = "nctame", version, about = "Tameness and wildness of automorphisms of free algebras")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Degree bound for the nonassociative searches.
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,

    /// Comma-separated variable names, overriding the per-command default.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    #[command(subcommand)]
    command: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Derivatives of an associative polynomial.
    #[command(subcommand)]
    Deriv(DerivVerb),
    /// GE2 membership and column completion over K[z1, z2].
    #[command(subcommand)]
    Ge2(Ge2Verb),
    /// Endomorphisms of K<x, y, z> given as `f ; g ; h`.
    #[command(subcommand)]
    Auto(AutoVerb),
    /// Coordinate decisions.
    #[command(subcommand)]
    Coord(CoordVerb),
    /// Built-in example maps.
    #[command(subcommand)]
    Examples(ExamplesVerb),
    /// Metabelian Jacobians and wildness evidence.
    #[command(subcommand)]
    Metab(MetabVerb),
    /// The trace test for liftability.
    TraceTest {
        endo: String,
        #[arg(long, default_value = "r", value_parser = Side::parse)]
        side: Side,
    },
    /// Fixed obstructions.
    #[command(subcommand)]
    Obstruction(ObstructionVerb),
    /// Absolutely free (nonassociative) algebras.
    #[command(subcommand)]
    Natree(NatreeVerb),
    /// Recheck a JSON report file.
    Verify { file: std::path::PathBuf },
}

#[derive(Args)]
struct PolyVar {
    #[arg(allow_hyphen_values = true)]
    poly: String,
    var: String,
}

#[derive(Subcommand)]
enum DerivVerb {
    Dl(PolyVar),
    Metab(PolyVar),
    FoxL(PolyVar),
    FoxR(PolyVar),
}

#[derive(Subcommand)]
enum Ge2Verb {
    /// Decide membership of a 2x2 matrix `[[a,c],[b,d]]`.
    Check { matrix: String },
    /// Complete the column (a, b) to a GE2 matrix.
    Complete {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand)]
enum AutoVerb {
    /// Print phi∘psi.
    Compose { phi: String, psi: String },
    /// Invert a z-fixing map linear in x, y.
    Invert { endo: String },
    /// Apply an endomorphism to a polynomial.
    Apply { endo: String, poly: String },
    /// Decide the z-fixing map (f, g, z).
    DecideZfix {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Subcommand)]
enum CoordVerb {
    Decide {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum ExamplesVerb {
    Anick,
    AnickM { m: u32 },
    SigmaH {
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
}

#[derive(Subcommand)]
enum MetabVerb {
    Jm { endo: String },
    Det { endo: String },
    IdealTest {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    J2 { endo: String },
    Evidence { endo: String },
}

#[derive(Subcommand)]
enum ObstructionVerb {
    Tau,
}

#[derive(Subcommand)]
enum NatreeVerb {
    /// Factor a map into elementary ones.
    Decompose {
        endo: String,
        /// Variables every step must fix.
        #[arg(long, value_delimiter = ',', default_value = "z")]
        fixed: Vec<String>,
    },
    /// Express g in the subalgebra generated by the gens.
    Member {
        g: String,
        #[arg(last = true, required = true)]
        gens: Vec<String>,
    },
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl Cli {
    fn vars_or(&self, default: &[&str]) -> Vec<String> {
        self.vars.clone().unwrap_or_else(|| names(default))
    }

    fn command(&self) -> Command {
        let xyz = || self.vars_or(&["x", "y", "z"]);
        let zp = || self.vars_or(&["z1", "z2"]);
        let max_degree = self.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
        match &self.command {
            Verb::Deriv(d) => {
                let (kind, pv) = match d {
                    DerivVerb::Dl(pv) => (DerivKind::Dl, pv),
                    DerivVerb::Metab(pv) => (DerivKind::Metab, pv),
                    DerivVerb::FoxL(pv) => (DerivKind::FoxL, pv),
                    DerivVerb::FoxR(pv) => (DerivKind::FoxR, pv),
                };
                Command::Deriv { kind, poly: pv.poly.clone(), var: pv.var.clone(), vars: xyz() }
            }
            Verb::Ge2(Ge2Verb::Check { matrix }) => Command::Ge2Check { matrix: matrix.clone(), vars: zp() },
            Verb::Ge2(Ge2Verb::Complete { a, b }) => Command::Ge2Complete { a: a.clone(), b: b.clone(), vars: zp() },
            Verb::Auto(AutoVerb::Compose { phi, psi }) => {
                Command::AutoCompose { phi: phi.clone(), psi: psi.clone(), vars: xyz() }
            }
            Verb::Auto(AutoVerb::Invert { endo }) => Command::AutoInvert { endo: endo.clone() },
            Verb::Auto(AutoVerb::Apply { endo, poly }) => {
                Command::AutoApply { endo: endo.clone(), poly: poly.clone(), vars: xyz() }
            }
            Verb::Auto(AutoVerb::DecideZfix { f, g }) => Command::AutoDecideZfix { f: f.clone(), g: g.clone() },
            Verb::Coord(CoordVerb::Decide { poly }) => Command::CoordDecide { poly: poly.clone() },
            Verb::Examples(ExamplesVerb::Anick) => Command::ExamplesAnick,
            Verb::Examples(ExamplesVerb::AnickM { m }) => Command::ExamplesAnickM { m: *m },
            Verb::Examples(ExamplesVerb::SigmaH { h }) => Command::ExamplesSigmaH { h: h.clone() },
            Verb::Metab(MetabVerb::Jm { endo }) => Command::MetabJm { endo: endo.clone(), vars: xyz() },
            Verb::Metab(MetabVerb::Det { endo }) => Command::MetabDet { endo: endo.clone(), vars: xyz() },
            Verb::Metab(MetabVerb::IdealTest { poly }) => Command::MetabIdealTest { poly: poly.clone(), vars: xyz() },
            Verb::Metab(MetabVerb::J2 { endo }) => Command::MetabJ2 { endo: endo.clone() },
            Verb::Metab(MetabVerb::Evidence { endo }) => Command::MetabEvidence { endo: endo.clone() },
            Verb::TraceTest { endo, side } => Command::TraceTest { endo: endo.clone(), side: *side, vars: xyz() },
            Verb::Obstruction(ObstructionVerb::Tau) => Command::ObstructionTau,
            Verb::Natree(NatreeVerb::Decompose { endo, fixed }) => {
                Command::NatreeDecompose { endo: endo.clone(), vars: xyz(), fixed: fixed.clone(), max_degree }
            }
            Verb::Natree(NatreeVerb::Member { g, gens }) => {
                Command::NatreeMember { g: g.clone(), gens: gens.clone(), vars: xyz(), max_degree }
            }
            Verb::Verify { .. } => unreachable!("verify is handled before dispatch"),
        }
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::ResourceLimit(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn print(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.to_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Verb::Verify { file } = &cli.command {
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return ExitCode::from(2);
            }
        };
        let valid = verify_json(&text);
        if cli.json {
            println!("{}", serde_json::json!({ "valid": valid }));
        } else {
            println!("{}", if valid { "valid" } else { "invalid" });
        }
        return ExitCode::SUCCESS;
    }
    match run(&cli.command()) {
        Ok(report) => {
            print(&report, cli.json);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
