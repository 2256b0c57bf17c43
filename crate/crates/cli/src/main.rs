use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use cotilt_cli::format::{
    self, resolve_bimodule_ref, resolve_builtin_ref, setup_candidate,
    Workbench, WorkbenchFile,
};
use cotilt_cli::report::{self, Report, EXIT_INPUT};
use cotilt_core::bimodule::endo_algebra;
use cotilt_core::catalog::{build_catalog, parse_catalog_spec, CatalogSpec};
use cotilt_core::error::{Error, Result};
use cotilt_core::field::Field;
use cotilt_core::foxby::{auslander_member, bass_member, class_member, foxby_roundtrip, FoxbyClass};
use cotilt_core::gorenstein::{
    gflat_dimension, ginj_dimension, gorenstein_profile, gproj_dimension,
};
use cotilt_core::homology::{
    default_bound, ext_dims_upto, flat_dimension, injective_dimension, projective_dimension,
    tor_dims_against_dual,
};
use cotilt_core::module::Module;
use cotilt_core::tilting::{
    check_cotilting, check_tensorly_faithful, check_tilting, check_wakamatsu,
};
use cotilt_core::verify::verify_theorem;

/// Exact verification workbench for tilting, cotilting, and Gorenstein
/// homological dimensions over finite-dimensional path algebras.
///
/// Exit codes: 0 all checks passed or consistent (a check answering "false"
/// is still a successful run), 1 certified refutation or mismatch, 2 the only
/// undecided parts ran out of search depth, 3 input error.
#[derive(Parser)]
#[command(name = "cotilt", version)]
struct Cli {
    /// Workbench input file
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Search depth for resolutions and vanishing checks (default scales
    /// with the algebra)
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Seed for randomized decompositions and catalog extensions
    /// (default: the COTILT_SEED environment variable, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit the machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Catalog of test modules, e.g. "depth=4,extensions=8"
    #[arg(long, global = true, value_name = "SPEC")]
    catalog: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Auslander,
    Bass,
}

#[derive(Subcommand)]
enum Cmd {
    /// dim Ext^i(M, N) for i = 0..=bound
    Ext {
        #[arg(long)]
        module: String,
        #[arg(long)]
        against: String,
    },
    /// dim Tor_i(M, D N) for i = 0..=bound; the linear dual of N is the
    /// left tensor factor
    Tor {
        #[arg(long)]
        module: String,
        #[arg(long)]
        against: String,
    },
    /// Projective dimension
    Pd {
        #[arg(long)]
        module: String,
    },
    /// Injective dimension
    Id {
        #[arg(long)]
        module: String,
    },
    /// Flat dimension
    Fd {
        #[arg(long)]
        module: String,
    },
    /// Gorenstein projective dimension
    Gpd {
        #[arg(long)]
        module: String,
    },
    /// Gorenstein injective dimension
    Gid {
        #[arg(long)]
        module: String,
    },
    /// Gorenstein flat dimension
    Gfd {
        #[arg(long)]
        module: String,
    },
    /// Tilting test: finite projective dimension, no self-extensions, and a
    /// finite add-coresolution of the regular module
    Tilting {
        /// Candidate (default: the setup candidate)
        #[arg(long)]
        module: Option<String>,
    },
    /// Wakamatsu tilting test over the endomorphism algebra
    Wakamatsu {
        #[arg(long)]
        module: Option<String>,
    },
    /// Cotilting test: the four formulations, with agreement
    Cotilting {
        #[arg(long)]
        module: Option<String>,
    },
    /// Does tensoring with the bimodule kill a simple on either side?
    TensorlyFaithful {
        /// Bimodule name or module reference (default: the setup candidate)
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// Auslander class membership of a module over the endomorphism algebra
    /// (builtin references P(v), I(v), S(v), R with the endomorphism
    /// algebra's numeric vertices)
    Auslander {
        #[arg(long)]
        module: String,
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// Bass class membership of a module over the base algebra
    Bass {
        #[arg(long)]
        module: String,
        #[arg(long)]
        bimodule: Option<String>,
    },
    /// Apply the correspondence and come back; members must return
    /// isomorphically
    FoxbyRoundtrip {
        #[arg(long)]
        module: String,
        #[arg(long)]
        bimodule: Option<String>,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Injective dimension of the regular module on both sides
    GorensteinProfile,
    /// Run a named property suite over seeded catalogs
    Verify {
        /// One of T3.5, T4.4, T5.6, L2.4, L2.6, L2.9, L3.4, L3.8, L4.5,
        /// L5.2, L5.5, R4.7
        #[arg(long)]
        theorem: String,
        /// Candidate (default: the setup candidate)
        #[arg(long)]
        module: Option<String>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    };
    std::process::exit(code);
}

struct Opts {
    bound: Option<usize>,
    seed: u64,
    json: bool,
    spec: CatalogSpec,
}

fn run(cli: Cli) -> Result<i32> {
    let input = cli
        .input
        .ok_or_else(|| Error::Validation("--input is required".into()))?;
    let text = fs::read_to_string(&input)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", input.display())))?;
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var("COTILT_SEED") {
            Ok(v) => v
                .parse()
                .map_err(|_| Error::Validation(format!("COTILT_SEED is not an integer: {v:?}")))?,
            Err(_) => 0,
        },
    };
    let spec = match cli.catalog.as_deref() {
        Some(s) => parse_catalog_spec(s)?,
        None => CatalogSpec::default(),
    };
    let opts = Opts { bound: cli.bound, seed, json: cli.json, spec };
    match format::parse(&text)? {
        Workbench::Prime(wf) => dispatch(&wf, &cli.cmd, &opts),
        Workbench::Rational(wf) => dispatch(&wf, &cli.cmd, &opts),
    }
}

/// A candidate reference: explicit flag if given, else the setup candidate.
fn candidate<K: Field>(
    wf: &WorkbenchFile<K>,
    explicit: Option<&str>,
) -> Result<(String, Module<K>)> {
    let name = match explicit {
        Some(r) => r.to_string(),
        None => setup_candidate(wf, None)?.to_string(),
    };
    let m = resolve_bimodule_ref(wf, &name)?;
    if m.is_zero() {
        return Err(Error::BadSetup(format!("candidate {name} is the zero module")));
    }
    Ok((name, m))
}

fn dispatch<K: Field>(wf: &WorkbenchFile<K>, cmd: &Cmd, opts: &Opts) -> Result<i32> {
    let bound = opts.bound.unwrap_or_else(|| default_bound(wf.algebra.as_ref()));
    let rep: Report = match cmd {
        Cmd::Ext { module, against } => {
            let m = resolve_bimodule_ref(wf, module)?;
            let n = resolve_bimodule_ref(wf, against)?;
            report::degrees_report("ext", module, against, &ext_dims_upto(&m, &n, bound))
        }
        Cmd::Tor { module, against } => {
            let m = resolve_bimodule_ref(wf, module)?;
            let n = resolve_bimodule_ref(wf, against)?;
            report::degrees_report("tor", module, against, &tor_dims_against_dual(&m, &n, bound))
        }
        Cmd::Pd { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::dim_report("pd", module, projective_dimension(&m, bound))
        }
        Cmd::Id { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::dim_report("id", module, injective_dimension(&m, bound))
        }
        Cmd::Fd { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::dim_report("fd", module, flat_dimension(&m, bound))
        }
        Cmd::Gpd { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::gor_dim_report("gpd", module, &gproj_dimension(&m, bound))
        }
        Cmd::Gid { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::gor_dim_report("gid", module, &ginj_dimension(&m, bound))
        }
        Cmd::Gfd { module } => {
            let m = resolve_bimodule_ref(wf, module)?;
            report::gor_dim_report("gfd", module, &gflat_dimension(&m, bound))
        }
        Cmd::Tilting { module } => {
            let (name, t) = candidate(wf, module.as_deref())?;
            report::tilting_report(&name, &check_tilting(&t, bound)?)
        }
        Cmd::Wakamatsu { module } => {
            let (name, t) = candidate(wf, module.as_deref())?;
            report::wakamatsu_report(&name, &check_wakamatsu(&t, bound)?)
        }
        Cmd::Cotilting { module } => {
            let (name, t) = candidate(wf, module.as_deref())?;
            let samples = build_catalog(&wf.algebra, &opts.spec, opts.seed);
            report::cotilting_report(&name, &check_cotilting(&t, &samples, bound)?)
        }
        Cmd::TensorlyFaithful { bimodule } => {
            let (name, t) = candidate(wf, bimodule.as_deref())?;
            let (s, bi) = endo_algebra(&t)?;
            let rep = check_tensorly_faithful(&bi);
            report::faithful_report(&name, &rep, s.num_vertices(), wf.algebra.vertex_names())
        }
        Cmd::Auslander { module, bimodule } => {
            let (tname, t) = candidate(wf, bimodule.as_deref())?;
            let (s, bi) = endo_algebra(&t)?;
            let x = resolve_builtin_ref(&s, module)?;
            report::membership_report(module, &tname, &auslander_member(&x, &bi, bound))
        }
        Cmd::Bass { module, bimodule } => {
            let (tname, t) = candidate(wf, bimodule.as_deref())?;
            let (_, bi) = endo_algebra(&t)?;
            let x = resolve_bimodule_ref(wf, module)?;
            report::membership_report(module, &tname, &bass_member(&x, &bi, bound))
        }
        Cmd::FoxbyRoundtrip { module, bimodule, class } => {
            let (tname, t) = candidate(wf, bimodule.as_deref())?;
            let (s, bi) = endo_algebra(&t)?;
            let cls = match class {
                ClassArg::Auslander => FoxbyClass::Auslander,
                ClassArg::Bass => FoxbyClass::Bass,
            };
            let x = match cls {
                FoxbyClass::Auslander => resolve_builtin_ref(&s, module)?,
                FoxbyClass::Bass => resolve_bimodule_ref(wf, module)?,
            };
            match foxby_roundtrip(&x, &bi, cls, bound) {
                Ok(rt) => report::roundtrip_report(module, &tname, &rt),
                Err(Error::NotAMember(_)) => {
                    let mem = class_member(&x, &bi, cls, bound);
                    let cname = cls.to_string().to_lowercase();
                    report::roundtrip_refused(module, &tname, &cname, &mem)
                }
                Err(e) => return Err(e),
            }
        }
        Cmd::GorensteinProfile => {
            report::profile_report(&gorenstein_profile(&wf.algebra, bound))
        }
        Cmd::Verify { theorem, module } => {
            let (_, t) = candidate(wf, module.as_deref())?;
            report::verify_report(&verify_theorem(theorem, &t, &opts.spec, opts.seed, bound)?)
        }
    };
    let mut out = if opts.json {
        serde_json::to_string_pretty(&rep.json).expect("reports serialize")
    } else {
        rep.lines.join("\n")
    };
    out.push('\n');
    // Tolerate a closed pipe (e.g. piping into `head`).
    match std::io::stdout().write_all(out.as_bytes()) {
        Ok(()) => Ok(rep.exit),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(rep.exit),
        Err(e) => Err(Error::Validation(format!("cannot write output: {e}"))),
    }
}
