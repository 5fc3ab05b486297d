//! Command-line front end. Exit codes: 0 for success or a true answer, 1
//! for a false answer or a violated property (with the counterexample on
//! standard output), 2 for usage and input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bilimit::{
    next_stage_size, scott_tower, scott_tower_with_budget, tower_report, UNSAFE_STAGE_ELEMENT_CAP,
};
use crate::canonex::{lifting, powerset, sierpinski};
use crate::corpus::generate_corpus;
use crate::dyadics::{
    dy_interpolant, dy_prec, stream_member, stream_way_below, to_rational, Answer, Dyadic,
    StreamIdeal, DEFAULT_FUEL,
};
use crate::error::{Error, Result};
use crate::expo::{step_basis, ExponentialPoset, DEFAULT_NODE_BUDGET};
use crate::finposet::FinPoset;
use crate::idealcomp::{
    idl_iso_algebraic_check, idl_iso_continuous_check, idl_poset, validate_abstract_basis,
};
use crate::indcomp::{all_directed_families, poset_reflection};
use crate::io::{emit_basis_map, emit_dot, emit_poset, parse_basis, parse_basis_map, parse_poset};
use crate::waybelow::{
    compacts, interpolate_binary, interpolate_unary, small_basis_violation,
    small_compact_basis_violation, way_below, BasisMap,
};

#[derive(Debug, Parser)]
#[command(name = "dcpo", version, about = "Domain theory over finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct BasisArg {
    /// Basis map file (`basismap` / `map: label=element ...`).
    #[arg(long, conflicts_with = "identity")]
    pub basis: Option<PathBuf>,
    /// Use every element as its own basis label (the default).
    #[arg(long)]
    pub identity: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a poset file and summarise it.
    Check {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Decide x ≪ y.
    Waybelow { poset: PathBuf, x: String, y: String },
    /// List the compact elements.
    Compacts { poset: PathBuf },
    /// Check that a basis map is a small (compact) basis.
    BasisCheck {
        poset: PathBuf,
        #[command(flatten)]
        basis: BasisArg,
        #[arg(long)]
        compact: bool,
    },
    /// Find a basis element b with x (and z) ≪ β(b) ≪ y.
    Interpolate {
        poset: PathBuf,
        x: String,
        y: String,
        /// Second lower element for binary interpolation.
        #[arg(long)]
        also: Option<String>,
        #[command(flatten)]
        basis: BasisArg,
    },
    /// Emit the rounded ideal completion of an abstract basis.
    Idl {
        basis: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Check both ideal-completion presentations of a poset with a basis.
    IdlIso {
        poset: PathBuf,
        #[command(flatten)]
        basis: BasisArg,
    },
    /// Emit the exponential E^D of monotone maps.
    Exp {
        d: PathBuf,
        e: PathBuf,
        #[arg(long)]
        step_basis: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Build the Scott tower and report on its bilimit basis.
    Tower {
        #[arg(long, default_value_t = 2)]
        stages: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Attempt stage 3 under a node budget.
        #[arg(long)]
        unsafe_stage_3: bool,
    },
    /// Dyadic order, interpolation, values and stream ideals.
    Dyadic {
        #[command(subcommand)]
        op: DyadicOp,
    },
    /// Emit a canonical example.
    Example {
        /// sierpinski, lifting:N or powerset:N
        name: String,
        #[arg(long, value_enum, default_value_t = Emit::Poset)]
        emit: Emit,
    },
    /// Quotient of all directed families by mutual exceeds.
    IndReflect {
        poset: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Print seeded random posets separated by blank lines.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum DyadicOp {
    /// Compare two dyadics: prints lt, eq or gt.
    Cmp { x: String, y: String },
    /// An interpolant strictly between x and y.
    Interp { x: String, y: String },
    /// Exact rational value.
    Rat { x: String },
    /// Membership in a stream ideal within the fuel.
    IdealMember {
        chain: String,
        d: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Semi-decide I ≪ J for stream ideals.
    WayBelow {
        i: String,
        j: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Poset,
    Dot,
    Basis,
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_poset(path: &Path) -> Result<Arc<FinPoset>> {
    Ok(Arc::new(parse_poset(&read(path)?)?))
}

fn load_basis(p: &FinPoset, arg: &BasisArg) -> Result<BasisMap> {
    match &arg.basis {
        Some(path) => parse_basis_map(&read(path)?, p),
        None => Ok(BasisMap::identity(p)),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        message: format!("write failed: {e}"),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io_err)?
    };
}

fn verdict(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check { poset, dot } => {
            let p = load_poset(&poset)?;
            if dot {
                write!(out, "{}", emit_dot(&p)).map_err(io_err)?;
            } else {
                say!(out, "elements: {}", p.len());
                say!(out, "covers: {}", p.covers().len());
                say!(out, "pointed: {}", yes_no(p.is_pointed()));
                say!(out, "lattice: {}", yes_no(p.is_lattice()));
            }
            Ok(0)
        }
        Command::Waybelow { poset, x, y } => {
            let p = load_poset(&poset)?;
            let (xi, yi) = (p.index_of(&x)?, p.index_of(&y)?);
            let holds = way_below(&p, xi, yi);
            say!(out, "{holds}");
            if !holds {
                let m = p
                    .elements()
                    .find(|&m| p.leq(yi, m) && !p.leq(xi, m))
                    .expect("a failing way-below has a principal witness");
                say!(
                    out,
                    "counterexample: directed {{{}}} has supremum above {y} and no member above {x}",
                    p.name(m)
                );
            }
            Ok(verdict(holds))
        }
        Command::Compacts { poset } => {
            let p = load_poset(&poset)?;
            say!(out, "{}", p.format_subset(&compacts(&p)));
            Ok(0)
        }
        Command::BasisCheck {
            poset,
            basis,
            compact,
        } => {
            let p = load_poset(&poset)?;
            let beta = load_basis(&p, &basis)?;
            let violation = if compact {
                small_compact_basis_violation(&p, &beta)
            } else {
                small_basis_violation(&p, &beta)
            };
            match violation {
                None => {
                    say!(out, "valid");
                    Ok(0)
                }
                Some(v) => {
                    say!(out, "invalid");
                    say!(out, "counterexample: at {}: {}", p.name(v.element), v.reason);
                    Ok(1)
                }
            }
        }
        Command::Interpolate {
            poset,
            x,
            y,
            also,
            basis,
        } => {
            let p = load_poset(&poset)?;
            let beta = load_basis(&p, &basis)?;
            let (xi, yi) = (p.index_of(&x)?, p.index_of(&y)?);
            let found = match &also {
                Some(z) => interpolate_binary(&p, &beta, xi, p.index_of(z)?, yi),
                None => interpolate_unary(&p, &beta, xi, yi),
            };
            match found {
                Ok(b) => {
                    say!(out, "{} -> {}", beta.label(b), p.name(beta.value(b)));
                    Ok(0)
                }
                Err(e @ (Error::PreconditionViolated(_) | Error::NoInterpolant)) => {
                    say!(out, "{e}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Idl { basis, dot } => {
            let b = parse_basis(&read(&basis)?)?;
            if let Some(c) = validate_abstract_basis(&b) {
                say!(out, "invalid basis");
                say!(out, "counterexample: {}", c.describe(&b));
                return Ok(1);
            }
            let idl = idl_poset(&b)?;
            let text = if dot {
                emit_dot(&idl.poset)
            } else {
                emit_poset(&idl.poset)
            };
            write!(out, "{text}").map_err(io_err)?;
            Ok(0)
        }
        Command::IdlIso { poset, basis } => {
            let p = load_poset(&poset)?;
            let beta = load_basis(&p, &basis)?;
            if let Some(v) = small_basis_violation(&p, &beta) {
                say!(out, "counterexample: at {}: {}", p.name(v.element), v.reason);
                return Ok(1);
            }
            let cont = idl_iso_continuous_check(p.clone(), &beta);
            let alg = idl_iso_algebraic_check(p, &beta);
            say!(out, "continuous: {}", if cont { "iso" } else { "fail" });
            say!(out, "algebraic: {}", if alg { "pass" } else { "fail" });
            Ok(verdict(cont && alg))
        }
        Command::Exp {
            d,
            e,
            step_basis: with_basis,
            dot,
        } => {
            let (dp, ep) = (load_poset(&d)?, load_poset(&e)?);
            if with_basis {
                let sb = step_basis(&dp, &BasisMap::identity(&dp), &ep, &BasisMap::identity(&ep))?;
                write!(out, "{}", emit_basis_map(sb.exp.poset(), &sb.basis)).map_err(io_err)?;
                let ok = small_compact_basis_violation(sb.exp.poset(), &sb.basis).is_none();
                say!(out, "compact basis: {}", if ok { "valid" } else { "invalid" });
                return Ok(verdict(ok));
            }
            let exp = ExponentialPoset::new(dp, ep)?;
            let text = if dot {
                emit_dot(exp.poset())
            } else {
                emit_poset(exp.poset())
            };
            write!(out, "{text}").map_err(io_err)?;
            Ok(0)
        }
        Command::Tower {
            stages,
            report,
            unsafe_stage_3,
        } => {
            let st = if unsafe_stage_3 && stages == 3 {
                match scott_tower_with_budget(stages, DEFAULT_NODE_BUDGET, UNSAFE_STAGE_ELEMENT_CAP) {
                    Err(Error::TooLarge(_)) => {
                        let size = next_stage_size(2)?;
                        return Err(Error::TooLarge(format!(
                            "stage 3 has {size} elements, above the cap of {UNSAFE_STAGE_ELEMENT_CAP}"
                        )));
                    }
                    other => other?,
                }
            } else {
                scott_tower(stages)?
            };
            let r = tower_report(&st)?;
            let text = r.to_string();
            write!(out, "{text}").map_err(io_err)?;
            if let Some(path) = report {
                fs::write(&path, &text).map_err(io_err)?;
            }
            Ok(verdict(r.all_pass()))
        }
        Command::Dyadic { op } => dyadic(op, out),
        Command::Example { name, emit } => {
            let (p, beta) = example(&name)?;
            let text = match emit {
                Emit::Poset => emit_poset(&p),
                Emit::Dot => emit_dot(&p),
                Emit::Basis => emit_basis_map(&p, &beta),
            };
            write!(out, "{text}").map_err(io_err)?;
            Ok(0)
        }
        Command::IndReflect { poset, dot } => {
            let p = load_poset(&poset)?;
            let fams = all_directed_families(&p)?;
            let r = poset_reflection(&p, &fams)?;
            let text = if dot {
                emit_dot(&r.poset)
            } else {
                emit_poset(&r.poset)
            };
            write!(out, "{text}").map_err(io_err)?;
            Ok(0)
        }
        Command::Corpus {
            seed,
            count,
            max_size,
        } => {
            let texts: Vec<String> = generate_corpus(seed, count, max_size)
                .iter()
                .map(emit_poset)
                .collect();
            write!(out, "{}", texts.join("\n")).map_err(io_err)?;
            Ok(0)
        }
    }
}

fn example(name: &str) -> Result<(Arc<FinPoset>, BasisMap)> {
    let bad = || Error::Parse {
        line: 1,
        message: format!("unknown example `{name}`; expected sierpinski, lifting:N or powerset:N"),
    };
    let size = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name.split_once(':') {
        None if name == "sierpinski" => {
            let ex = sierpinski();
            Ok((ex.poset, ex.basis))
        }
        Some(("lifting", n)) => {
            let ex = lifting(size(n)?);
            Ok((ex.poset, ex.basis))
        }
        Some(("powerset", n)) => {
            let (p, lb) = powerset(size(n)?)?;
            Ok((p.poset, lb.basis))
        }
        _ => Err(bad()),
    }
}

fn dyadic(op: DyadicOp, out: &mut dyn Write) -> Result<i32> {
    let parse = |s: &str| s.parse::<Dyadic>();
    match op {
        DyadicOp::Cmp { x, y } => {
            let (a, b) = (parse(&x)?, parse(&y)?);
            let word = if dy_prec(&a, &b) {
                "lt"
            } else if a == b {
                "eq"
            } else {
                "gt"
            };
            say!(out, "{word}");
            Ok(0)
        }
        DyadicOp::Interp { x, y } => match dy_interpolant(&parse(&x)?, &parse(&y)?) {
            Ok(z) => {
                say!(out, "{z}");
                Ok(0)
            }
            Err(e) => {
                say!(out, "{e}");
                Ok(1)
            }
        },
        DyadicOp::Rat { x } => {
            say!(out, "{}", to_rational(&parse(&x)?));
            Ok(0)
        }
        DyadicOp::IdealMember { chain, d, fuel } => {
            let ideal: StreamIdeal = chain.parse()?;
            let a = stream_member(&ideal, &parse(&d)?, fuel);
            say!(out, "{a}");
            Ok(verdict(a == Answer::Yes))
        }
        DyadicOp::WayBelow { i, j, fuel } => {
            let (i, j): (StreamIdeal, StreamIdeal) = (i.parse()?, j.parse()?);
            let a = stream_way_below(&i, &j, fuel);
            say!(out, "{a}");
            Ok(verdict(a == Answer::Yes))
        }
    }
}
