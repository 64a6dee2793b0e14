//! `workbench`: decide, prove, check and search from the command line.
//!
//! Exit status: 0 for an affirmative verdict, 1 for a negative one (with a
//! countermodel or diagnosis on standard output), 2 for unusable input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use workbench_core::formula::{parse_infix, parse_polish, Notation};
use workbench_core::hilbert::{check_proof, format_proof, parse_proof};
use workbench_core::kalmar::{prove_tautology, KalmarError};
use workbench_core::machines::{bell, BellVerdict, Calculus, Crank};
use workbench_core::matrix::find_independence;
use workbench_core::predicate::{
    check_fo_proof, monadic_decide, parse_fo_proof, transform, valid_in_domains, MonadicVerdict, PassageLaw,
    SearchVerdict, TransformStep,
};
use workbench_core::sequent::{check_nd, format_nd_proof, nd_prove_tautology, parse_nd_proof, NdError};
use workbench_core::syllogistic::{
    check_syll_proof, derive, mood_report, parse_syll, valid_syll, SyllOptions, SyllSystem, SyllVerdict,
};
use workbench_core::truth::{
    closure_under, is_affine, is_tautology, row_valuation, synthesize_dnf, to_or_not, truth_table, Connective,
    TautologyVerdict, TruthFunction,
};
use workbench_core::{Formula, Path};

// A closed pipe (`workbench ... | head`) is not an error worth a panic.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = write!(io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "workbench", version, about = "A workbench for classical logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it in infix and Polish notation
    Parse {
        /// Read Polish notation instead of infix
        #[arg(long)]
        polish: bool,
        formula: Option<String>,
    },
    /// Print the truth table of a formula
    Table { formula: Option<String> },
    /// Decide whether a formula is a tautology
    Decide { formula: Option<String> },
    /// Disjunctive normal form of a truth table such as `3:01101001`
    Dnf {
        table: String,
        /// Comma-separated variable names, first variable first
        vars: String,
        /// Rewrite the result with `|` and `~` only
        #[arg(long)]
        or_not: bool,
    },
    /// Truth functions generated by a set of connectives
    Closure {
        /// Comma-separated connectives: not, and, or, impl, equiv, xor
        #[arg(long)]
        basis: String,
        #[arg(long)]
        arity: usize,
    },
    /// Synthesize a Hilbert proof of a tautology
    Prove {
        formula: Option<String>,
        /// Write the proof here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a Hilbert proof file (`-` for standard input)
    Check { proof: PathBuf },
    /// Sequent natural deduction
    #[command(subcommand)]
    Nd(NdCommand),
    /// Search for a matrix showing that an axiom is independent of the others
    Independence {
        #[arg(long)]
        axiom: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// First-order proofs, countermodels and transformations
    #[command(subcommand)]
    Fo(FoCommand),
    /// Decide a monadic first-order formula
    Monadic { formula: Option<String> },
    /// Syllogistic semantics and derivations
    #[command(subcommand)]
    Syll(SyllCommand),
    /// Turn the crank: print theorems in order of derivation size
    Crank {
        #[arg(long, default_value = "prop")]
        calculus: Calculus,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Print each theorem's derivation after it
        #[arg(long)]
        proofs: bool,
    },
    /// Ring if the formula is valid; refuses outside the decidable fragments
    Bell { formula: Option<String> },
}

#[derive(Subcommand)]
enum NdCommand {
    /// Synthesize a sequent proof of a tautology
    Prove {
        formula: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a sequent proof file
    Check { proof: PathBuf },
}

#[derive(Subcommand)]
enum FoCommand {
    /// Check a first-order proof file
    Check { proof: PathBuf },
    /// Search all structures up to a domain size for a countermodel
    Countermodel {
        formula: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
    },
    /// Apply one equivalence transformation
    Transform(TransformArgs),
}

#[derive(Args)]
struct TransformArgs {
    formula: Option<String>,
    /// Position of the quantifier or redex (`.` for the whole formula)
    #[arg(long, default_value = ".")]
    at: String,
    /// Rename the bound variable to this name
    #[arg(long, conflicts_with_all = ["permute", "law"])]
    rename: Option<String>,
    /// Swap two adjacent quantifiers of the same kind
    #[arg(long, conflicts_with = "law")]
    permute: bool,
    /// Law of passage: forall-and, forall-or, exists-and, exists-or, not-forall, not-exists
    #[arg(long)]
    law: Option<PassageLaw>,
    /// Apply the law right to left
    #[arg(long, requires = "law")]
    reverse: bool,
}

#[derive(Subcommand)]
enum SyllCommand {
    /// Search for a class countermodel
    Valid {
        formula: Option<String>,
        /// Use the intended semantics of a system (lukasiewicz assumes nonempty classes)
        #[arg(long)]
        system: Option<SyllSystem>,
        /// Skip the empty universe
        #[arg(long)]
        nonempty_universe: bool,
        /// Only consider nonempty classes
        #[arg(long)]
        nonempty_classes: bool,
        #[arg(long, default_value_t = 4)]
        max_universe: usize,
    },
    /// Check a derivation in a system
    Check { system: SyllSystem, proof: PathBuf },
    /// Derive a formula in a system by forward chaining
    Derive {
        system: SyllSystem,
        formula: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report on the 24 classical moods
    Moods { system: SyllSystem },
}

enum Verdict {
    Yes,
    No,
}

fn read_input(arg: Option<&str>) -> Result<String> {
    match arg {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        return read_input(None);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn formula(arg: &Option<String>) -> Result<Formula> {
    let text = read_input(arg.as_deref())?;
    Ok(parse_infix(text.trim())?)
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn show_valuation(v: &workbench_core::truth::Valuation) -> String {
    v.iter().map(|(k, b)| format!("{k}={}", if *b { 'T' } else { 'F' })).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Parse { polish, formula } => {
            let text = read_input(formula.as_deref())?;
            let f = if polish { parse_polish(text.trim())? } else { parse_infix(text.trim())? };
            outln!("infix: {f}");
            match f.print(Notation::Polish) {
                Ok(p) => outln!("polish: {p}"),
                Err(e) => outln!("polish: unavailable ({e})"),
            }
            Ok(Verdict::Yes)
        }
        Command::Table { formula: arg } => {
            let f = formula(&arg)?;
            let tf = truth_table(&f)?;
            let vars: Vec<String> = f.prop_vars().into_iter().collect();
            outln!("{} | {f}", vars.join(" "));
            for row in 0..tf.table().len() {
                let v = row_valuation(&vars, row);
                let cells: Vec<String> =
                    vars.iter().map(|x| format!("{:<w$}", if v[x] { "T" } else { "F" }, w = x.len())).collect();
                outln!("{} | {}", cells.join(" "), if tf.value(row) { "T" } else { "F" });
            }
            Ok(Verdict::Yes)
        }
        Command::Decide { formula: arg } => {
            let f = formula(&arg)?;
            match is_tautology(&f)? {
                TautologyVerdict::Tautology => {
                    outln!("tautology");
                    Ok(Verdict::Yes)
                }
                TautologyVerdict::Countermodel(v) => {
                    outln!("not a tautology; false at {}", show_valuation(&v));
                    Ok(Verdict::No)
                }
            }
        }
        Command::Dnf { table, vars, or_not } => {
            let tf: TruthFunction = table.parse()?;
            let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
            let f = synthesize_dnf(&tf, &vars)?;
            outln!("{}", if or_not { to_or_not(&f) } else { f });
            Ok(Verdict::Yes)
        }
        Command::Closure { basis, arity } => {
            let basis: Vec<Connective> =
                basis.split(',').map(|c| c.parse::<Connective>()).collect::<Result<_, _>>().map_err(|e| anyhow!(e))?;
            let fns = closure_under(&basis, arity)?;
            outln!("{} functions", fns.len());
            for tf in &fns {
                outln!("{tf}{}", if is_affine(tf) { "" } else { " (not affine)" });
            }
            Ok(Verdict::Yes)
        }
        Command::Prove { formula: arg, output } => {
            let f = formula(&arg)?;
            match prove_tautology(&f) {
                Ok(proof) => {
                    emit(&format_proof(&proof), &output)?;
                    Ok(Verdict::Yes)
                }
                Err(KalmarError::NotTautology(v)) => {
                    outln!("not a tautology; false at {}", show_valuation(&v));
                    Ok(Verdict::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Check { proof } => {
            let proof = parse_proof(&read_file(&proof)?)?;
            match check_proof(&proof) {
                Ok(()) => {
                    outln!("valid: {}", proof.conclusion().map(|c| c.to_string()).unwrap_or_default());
                    Ok(Verdict::Yes)
                }
                Err(r) => {
                    outln!("invalid at line {}: {}", r.line, r.reason);
                    Ok(Verdict::No)
                }
            }
        }
        Command::Nd(NdCommand::Prove { formula: arg, output }) => {
            let f = formula(&arg)?;
            match nd_prove_tautology(&f) {
                Ok(proof) => {
                    emit(&format_nd_proof(&proof), &output)?;
                    Ok(Verdict::Yes)
                }
                Err(NdError::NotTautology(v)) => {
                    outln!("not a tautology; false at {}", show_valuation(&v));
                    Ok(Verdict::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Nd(NdCommand::Check { proof }) => {
            let proof = parse_nd_proof(&read_file(&proof)?)?;
            match check_nd(&proof) {
                Ok(()) => {
                    outln!("valid: {}", proof.conclusion().map(|c| c.to_string()).unwrap_or_default());
                    Ok(Verdict::Yes)
                }
                Err(r) => {
                    outln!("invalid at line {}: {}", r.line, r.reason);
                    Ok(Verdict::No)
                }
            }
        }
        Command::Independence { axiom, max_size } => {
            if !(1..=4).contains(&axiom) {
                bail!("there is no axiom {axiom}; the axioms are numbered 1 to 4");
            }
            match find_independence(axiom, max_size) {
                Some(w) => {
                    out!("{w}");
                    Ok(Verdict::Yes)
                }
                None => {
                    outln!("no matrix of size at most {max_size} separates axiom {axiom}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Fo(FoCommand::Check { proof }) => {
            let proof = parse_fo_proof(&read_file(&proof)?)?;
            match check_fo_proof(&proof) {
                Ok(()) => {
                    outln!("valid: {}", proof.conclusion().map(|c| c.to_string()).unwrap_or_default());
                    Ok(Verdict::Yes)
                }
                Err(r) => {
                    outln!("invalid at line {}: {}", r.line, r.reason);
                    Ok(Verdict::No)
                }
            }
        }
        Command::Fo(FoCommand::Countermodel { formula: arg, max_domain }) => {
            let f = formula(&arg)?;
            match valid_in_domains(&f, max_domain)? {
                SearchVerdict::NoCountermodel => {
                    outln!("no countermodel with at most {max_domain} elements (not a proof of validity)");
                    Ok(Verdict::Yes)
                }
                SearchVerdict::Countermodel(m) => {
                    out!("countermodel\n{m}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Fo(FoCommand::Transform(args)) => {
            let f = formula(&args.formula)?;
            let path: Path = args.at.parse().map_err(|e| anyhow!("{e}"))?;
            let step = match (args.rename, args.permute, args.law) {
                (Some(to), _, _) => TransformStep::RenameBound { path, to },
                (None, true, _) => TransformStep::PermuteLike { path },
                (None, false, Some(law)) => TransformStep::Passage { law, reverse: args.reverse, path },
                (None, false, None) => bail!("give one of --rename, --permute or --law"),
            };
            match transform(&f, &step) {
                Ok(g) => {
                    outln!("{g}");
                    Ok(Verdict::Yes)
                }
                Err(e) => {
                    outln!("rejected: {e}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Monadic { formula: arg } => {
            let f = formula(&arg)?;
            match monadic_decide(&f)? {
                MonadicVerdict::Valid => {
                    outln!("valid");
                    Ok(Verdict::Yes)
                }
                MonadicVerdict::Countermodel(m) => {
                    out!("countermodel\n{m}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Syll(SyllCommand::Valid {
            formula: arg,
            system,
            nonempty_universe,
            nonempty_classes,
            max_universe,
        }) => {
            let f = parse_syll(read_input(arg.as_deref())?.trim())?;
            let import = nonempty_classes || system.is_some_and(SyllSystem::needs_import);
            let opts = SyllOptions { max_universe, nonempty_universe, nonempty_classes: import };
            match valid_syll(&f, &opts)? {
                SyllVerdict::Valid => {
                    outln!("valid");
                    Ok(Verdict::Yes)
                }
                SyllVerdict::NoneFound { max_universe, bound } => {
                    outln!(
                        "no countermodel up to universe size {max_universe}; size {bound} would make this definitive"
                    );
                    Ok(Verdict::Yes)
                }
                SyllVerdict::Countermodel(m) => {
                    out!("countermodel\n{m}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Syll(SyllCommand::Check { system, proof }) => {
            let proof = parse_proof(&read_file(&proof)?)?;
            match check_syll_proof(system, &proof) {
                Ok(()) => {
                    outln!("valid in {system}: {}", proof.conclusion().map(|c| c.to_string()).unwrap_or_default());
                    Ok(Verdict::Yes)
                }
                Err(r) => {
                    outln!("invalid in {system} at line {}: {}", r.line, r.reason);
                    Ok(Verdict::No)
                }
            }
        }
        Command::Syll(SyllCommand::Derive { system, formula: arg, output }) => {
            let f = parse_syll(read_input(arg.as_deref())?.trim())?;
            match derive(system, &f) {
                Ok(proof) => {
                    emit(&format_proof(&proof), &output)?;
                    Ok(Verdict::Yes)
                }
                Err(e) => {
                    outln!("{e}");
                    Ok(Verdict::No)
                }
            }
        }
        Command::Syll(SyllCommand::Moods { system }) => {
            for row in mood_report(system)? {
                outln!("{row}");
            }
            Ok(Verdict::Yes)
        }
        Command::Crank { calculus, count, proofs } => {
            if count == 0 {
                bail!("--count must be at least 1");
            }
            let mut crank = Crank::new(calculus);
            for _ in 0..count {
                let turn = crank.next().expect("the crank never stops");
                outln!("{turn}");
                if proofs {
                    for line in crank.proof(turn.index).to_string().lines() {
                        outln!("    {line}");
                    }
                }
            }
            Ok(Verdict::Yes)
        }
        Command::Bell { formula: arg } => {
            let f = formula(&arg)?;
            match bell(&f) {
                BellVerdict::Rings => {
                    outln!("ding: valid");
                    Ok(Verdict::Yes)
                }
                BellVerdict::Silent(m) => {
                    out!("silent: not valid\n{m}");
                    Ok(Verdict::No)
                }
                BellVerdict::Refused(why) => bail!("the bell refuses: {why}"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
