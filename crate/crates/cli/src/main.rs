use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use zariski_core::automorphisms::{self, cycle_notation};
use zariski_core::catalog::{self, Sign};
use zariski_core::combinatorics::Combinatorics;
use zariski_core::gluing;
use zariski_core::invariant::{self, GluingSource, Ledger, VerdictKind};
use zariski_core::io::{self as zio, CombFile, GlueReportFile, IoError, VerdictFile};

/// Exact combinatorics, realizations and I-invariant certificates for line arrangements.
///
/// File arguments accept `-` for standard input. Exit status: 0 success or
/// positive verdict, 1 validation failure or inconclusive verdict, 2 parse or
/// usage error.
#[derive(Parser)]
#[command(name = "zariski", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in object.
    Catalog {
        #[arg(value_enum)]
        name: CatalogName,
    },
    /// Check a combinatorics file against the incidence axioms.
    Validate { comb: String },
    /// Print the combinatorics realized by an arrangement file.
    Derive { arr: String },
    /// Automorphism group of a combinatorics.
    Aut {
        comb: String,
        /// Print abelian flag, center order and element-order histogram.
        #[arg(long)]
        stats: bool,
        /// Print every element in cycle notation (1-based lines).
        #[arg(long)]
        elements: bool,
    },
    /// Test whether a character is inner-cyclic for a triangular cycle.
    InnerCyclic {
        comb: String,
        char: String,
        /// Three 1-based line indices, e.g. 1,2,3.
        #[arg(long, value_parser = parse_triangle)]
        cycle: [usize; 3],
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Find a generic gluing of two arrangements along their first three lines
    /// and print the glued arrangement.
    Glue {
        left: String,
        right: String,
        #[arg(long, default_value_t = gluing::DEFAULT_MAX_CANDIDATES)]
        max_candidates: usize,
        /// Write the gluing map and genericity checklist to this file.
        #[arg(long)]
        report: Option<String>,
    },
    /// Generic gluing of two combinatorics along their first three lines.
    GlueComb { left: String, right: String },
    /// Derive ledger entries by multiplicativity or conjugation.
    Invariant {
        #[command(subcommand)]
        op: InvariantOp,
    },
    /// Zariski-pair verdict for a ledger entry.
    Zariski {
        #[arg(long)]
        ledger: String,
        #[arg(long)]
        entry: String,
        /// Assert that the entry's combinatorics has trivial automorphism group.
        #[arg(long)]
        aut_trivial: bool,
    },
}

#[derive(Subcommand)]
enum InvariantOp {
    /// Entry of the generic gluing of two entries; value is the product.
    Glue {
        #[arg(long)]
        ledger: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Id of the new entry; defaults to `LEFT*RIGHT`.
        #[arg(long)]
        id: Option<String>,
        /// Add the new entry to the ledger file in place.
        #[arg(long)]
        append: bool,
    },
    /// Entry of the conjugate arrangement; value is the complex conjugate.
    Conj {
        #[arg(long)]
        ledger: String,
        #[arg(long)]
        entry: String,
        /// Add the new entry to the ledger file in place.
        #[arg(long)]
        append: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogName {
    #[value(name = "ext-maclane-comb")]
    ExtMaclaneComb,
    #[value(name = "maclane-comb")]
    MaclaneComb,
    #[value(name = "ext-maclane+")]
    ExtMaclanePlus,
    #[value(name = "ext-maclane-")]
    ExtMaclaneMinus,
    #[value(name = "xi-maclane")]
    XiMaclane,
    #[value(name = "xi-rybnikov")]
    XiRybnikov,
    #[value(name = "rybnikov-comb")]
    RybnikovComb,
    #[value(name = "rybnikov+")]
    RybnikovPlus,
    #[value(name = "rybnikov-")]
    RybnikovMinus,
    #[value(name = "ledger-seed")]
    LedgerSeed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Def,
    Remark,
    Both,
}

fn parse_triangle(s: &str) -> Result<[usize; 3], String> {
    let v: Vec<usize> =
        s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>()?;
    match v[..] {
        [i, j, k] if i > 0 && j > 0 && k > 0 => Ok([i - 1, j - 1, k - 1]),
        _ => Err("expected three 1-based indices, e.g. 1,2,3".into()),
    }
}

/// Exit status 2 for unreadable input, 1 for well-formed input that fails a check.
enum Failure {
    Parse(anyhow::Error),
    Invalid(anyhow::Error),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Json(_)
            | IoError::ZeroIndex
            | IoError::Provenance(_)
            | IoError::VerdictKind(_)
            | IoError::Cyclo(_) => Failure::Parse(e.into()),
            _ => Failure::Invalid(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input").map_err(Failure::Parse)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(Failure::Parse)?
    };
    Ok(text)
}

fn read_comb(path: &str) -> Result<Combinatorics, Failure> {
    Ok(zio::comb_from_json(&read_input(path)?)?)
}

fn read_ledger(path: &str) -> Result<Ledger, Failure> {
    Ok(zio::ledger_from_json(&read_input(path)?)?)
}

fn emit(s: &str) {
    print!("{s}");
}

fn catalog_cmd(name: CatalogName) -> Outcome {
    let out = match name {
        CatalogName::ExtMaclaneComb => zio::comb_to_json(&catalog::extended_maclane_explicit()),
        CatalogName::MaclaneComb => zio::comb_to_json(&catalog::maclane_combinatorics()),
        CatalogName::ExtMaclanePlus => zio::arrangement_to_json(&catalog::extended_maclane_realization(Sign::Plus)),
        CatalogName::ExtMaclaneMinus => zio::arrangement_to_json(&catalog::extended_maclane_realization(Sign::Minus)),
        CatalogName::XiMaclane => zio::char_to_json(&catalog::maclane_character()),
        CatalogName::XiRybnikov => zio::char_to_json(&catalog::rybnikov_character()),
        CatalogName::RybnikovComb => zio::comb_to_json(&catalog::rybnikov_explicit()),
        CatalogName::RybnikovPlus | CatalogName::RybnikovMinus => {
            let sign = if matches!(name, CatalogName::RybnikovPlus) { Sign::Plus } else { Sign::Minus };
            let bundle = catalog::build_extended_rybnikov(sign).map_err(|e| Failure::Invalid(e.into()))?;
            zio::arrangement_to_json(&bundle.arrangement)
        }
        CatalogName::LedgerSeed => zio::ledger_to_json(&catalog::ledger_seed()),
    };
    emit(&out);
    Ok(ExitCode::SUCCESS)
}

fn validate_cmd(path: &str) -> Outcome {
    let file: CombFile = zio::from_json(&read_input(path)?)?;
    let points = file
        .points
        .iter()
        .map(|p| p.iter().map(|&i| i.checked_sub(1).ok_or(IoError::ZeroIndex)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let c = Combinatorics::new(file.lines, points).map_err(|e| Failure::Invalid(e.into()))?;
    let violations = c.validate();
    if violations.is_empty() {
        println!("valid: {} lines, {} points", c.line_count(), c.points().len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("invalid:");
        for v in &violations {
            println!("  {v}");
        }
        Ok(ExitCode::from(1))
    }
}

fn aut_cmd(path: &str, stats: bool, elements: bool) -> Outcome {
    let c = read_comb(path)?;
    let g = automorphisms::enumerate_automorphisms(&c);
    let mut out = format!("order: {}\n", g.order());
    if stats {
        let s = g.stats();
        let hist: Vec<String> = s.order_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(out, "abelian: {}", s.abelian);
        let _ = writeln!(out, "center_order: {}", s.center_order);
        let _ = writeln!(out, "element_orders: {{{}}}", hist.join(", "));
    }
    if elements {
        for p in g.elements() {
            let _ = writeln!(out, "{}", cycle_notation(p));
        }
    }
    emit(&out);
    Ok(ExitCode::SUCCESS)
}

fn inner_cyclic_cmd(comb: &str, chr: &str, t: [usize; 3], mode: Mode) -> Outcome {
    let c = read_comb(comb)?;
    let x = zio::char_from_json(&read_input(chr)?)?;
    if x.line_count() != c.line_count() {
        return Err(Failure::Invalid(anyhow!(
            "character has {} lines, combinatorics has {}",
            x.line_count(),
            c.line_count()
        )));
    }
    let cycle = c.triangle_cycle(t[0], t[1], t[2]).map_err(|e| Failure::Invalid(e.into()))?;
    let verdict = |b: bool| if b { "pass" } else { "fail" };
    let mut ok = true;
    if mode != Mode::Remark {
        let d = x.is_inner_cyclic_def(&c, &cycle);
        ok &= d;
        println!("definition: {}", verdict(d));
    }
    if mode != Mode::Def {
        let conds = x.remark_conditions(&c, &cycle);
        let r = conds == [true; 3];
        ok &= r;
        println!(
            "three-condition: {} (support lines {}, lines through cycle points {}, points on support {})",
            verdict(r),
            verdict(conds[0]),
            verdict(conds[1]),
            verdict(conds[2])
        );
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn glue_cmd(left: &str, right: &str, max: usize, report: Option<&str>) -> Outcome {
    let l = zio::arrangement_from_json(&read_input(left)?)?;
    let r = zio::arrangement_from_json(&read_input(right)?)?;
    let spec = gluing::find_generic_gluing(&l, &r, max).map_err(|e| Failure::Invalid(e.into()))?;
    let glued = gluing::glue_arrangements(&spec).map_err(|e| Failure::Invalid(e.into()))?;
    if let Some(path) = report {
        let checklist = gluing::genericity_report(&spec).map_err(|e| Failure::Invalid(e.into()))?;
        let text = zio::to_json(&GlueReportFile::new(&spec, &checklist));
        fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    emit(&zio::arrangement_to_json(&glued));
    Ok(ExitCode::SUCCESS)
}

fn glue_comb_cmd(left: &str, right: &str) -> Outcome {
    let l = read_comb(left)?;
    let r = read_comb(right)?;
    let glued = gluing::glue_combinatorics(&l, &r).map_err(|e| Failure::Invalid(e.into()))?;
    emit(&zio::comb_to_json(&glued));
    Ok(ExitCode::SUCCESS)
}

fn store(path: &str, mut ledger: Ledger, entry: invariant::LedgerEntry) -> Result<(), Failure> {
    if path == "-" {
        return Err(Failure::Parse(anyhow!("--append needs a ledger file, not standard input")));
    }
    ledger.register(entry).map_err(|e| Failure::Invalid(e.into()))?;
    fs::write(path, zio::ledger_to_json(&ledger)).with_context(|| format!("writing {path}"))?;
    Ok(())
}

fn invariant_cmd(op: InvariantOp) -> Outcome {
    let (path, ledger, entry, append) = match op {
        InvariantOp::Glue { ledger: path, left, right, id, append } => {
            let ledger = read_ledger(&path)?;
            let l = ledger.entry(&left).map_err(|e| Failure::Invalid(e.into()))?;
            let r = ledger.entry(&right).map_err(|e| Failure::Invalid(e.into()))?;
            let id = id.unwrap_or_else(|| format!("{left}*{right}"));
            let e = invariant::invariant_of_glued(id, l, r, GluingSource::Generic)
                .map_err(|e| Failure::Invalid(e.into()))?;
            (path, ledger, e, append)
        }
        InvariantOp::Conj { ledger: path, entry, append } => {
            let ledger = read_ledger(&path)?;
            let e = invariant::invariant_of_conjugate(ledger.entry(&entry).map_err(|e| Failure::Invalid(e.into()))?);
            (path, ledger, e, append)
        }
    };
    emit(&zio::to_json(&zio::EntryFile::from_entry(&entry)));
    if append {
        store(&path, ledger, entry)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn zariski_cmd(path: &str, id: &str, aut_trivial: bool) -> Outcome {
    let ledger = read_ledger(path)?;
    let e = ledger.entry(id).map_err(|e| Failure::Invalid(e.into()))?;
    let v = invariant::detect_zariski(e, aut_trivial).map_err(|e| Failure::Invalid(e.into()))?;
    if !v.verify() {
        return Err(anyhow!("internal error: the verdict certificate does not verify").into());
    }
    emit(&zio::to_json(&VerdictFile::from_verdict(&v)));
    Ok(if v.kind == VerdictKind::Inconclusive { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Catalog { name } => catalog_cmd(name),
        Command::Validate { comb } => validate_cmd(&comb),
        Command::Derive { arr } => {
            let a = zio::arrangement_from_json(&read_input(&arr)?)?;
            emit(&zio::comb_to_json(&a.derive_combinatorics()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { comb, stats, elements } => aut_cmd(&comb, stats, elements),
        Command::InnerCyclic { comb, char, cycle, mode } => inner_cyclic_cmd(&comb, &char, cycle, mode),
        Command::Glue { left, right, max_candidates, report } => {
            glue_cmd(&left, &right, max_candidates, report.as_deref())
        }
        Command::GlueComb { left, right } => glue_comb_cmd(&left, &right),
        Command::Invariant { op } => invariant_cmd(op),
        Command::Zariski { ledger, entry, aut_trivial } => zariski_cmd(&ledger, &entry, aut_trivial),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
