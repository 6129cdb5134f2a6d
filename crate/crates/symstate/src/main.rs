//! Command-line front end: generate states to DMAT1 files, run PPT and
//! symmetry checks, apply conjugations and twirls, and sweep the mixing
//! parameter into a CSV.
//!
//! Exit codes: 0 success (and PPT for `check`); 1 parameter validation
//! failure, invalid state, or NPT verdict; 2 usage error; 3 I/O or parse
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symstate::blocks::{self, BlockDecomposition};
use symstate::criteria::{self, PptMethod, PPT_TOL};
use symstate::linalg::{self, CMatrix};
use symstate::states::{self, AbelianFamilyParams, PermutationSpec};
use symstate::symmetry::{self, InvarianceLaw, Partition, MAX_DETECT_DIM};
use symstate::{dmat, Error};

#[derive(Parser)]
#[command(name = "symstate", version, about = "Construct and analyze bipartite states with diagonal phase-group symmetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Correlated two-qutrit family (b,c block on {|31>, |33>}).
    Horodecki,
    /// Same family carried to the 12|3 symmetry (b,c block on {|11>, |12>}).
    HorodeckiPrime,
    /// Same family carried to the 1|23 symmetry (b,c block on {|22>, |23>}).
    HorodeckiDprime,
    /// d (x) d generalization correlating the pair {1, d}.
    Generalized,
    /// State with the maximal-subgroup pattern from coefficient files.
    Abelian,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dense,
    Blocked,
}

impl From<MethodArg> for PptMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dense => PptMethod::Dense,
            MethodArg::Blocked => PptMethod::Blocked,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    Uubar,
    Uu,
}

impl From<LawArg> for InvarianceLaw {
    fn from(l: LawArg) -> Self {
        match l {
            LawArg::Uubar => InvarianceLaw::UUbar,
            LawArg::Uu => InvarianceLaw::UU,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a state and write it to a DMAT1 file.
    Gen {
        family: Family,
        /// Mixing parameter in [0,1] (horodecki* and generalized).
        #[arg(long)]
        a: Option<f64>,
        /// Local dimension (generalized family).
        #[arg(long)]
        d: Option<usize>,
        /// DMAT1 file with the correlated coefficients (abelian family).
        #[arg(long)]
        a_matrix: Option<PathBuf>,
        /// DMAT1 file with the diagonal coefficients (abelian family).
        #[arg(long)]
        d_matrix: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a state file: PPT report, invariance and block structure.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Dense)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = LawArg::Uubar)]
        law: LawArg,
        /// Partition in bar syntax (e.g. "13|2"); detected when omitted
        /// and d <= 6.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Sweep the mixing parameter over a uniform grid, emitting CSV.
    Sweep {
        family: Family,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Number of grid points (a = k/(grid-1)).
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
        /// Evaluate grid points in parallel (output is identical either way).
        #[arg(long)]
        parallel: bool,
    },
    /// Conjugate a state by a local permutation on both factors.
    Conjugate {
        input: PathBuf,
        /// One-line image list, e.g. "1,3,2" sends 2 -> 3 and 3 -> 2.
        #[arg(long)]
        perm: String,
        out: PathBuf,
    },
    /// Project a state onto the invariant set of a phase subgroup.
    Twirl {
        input: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(long, value_enum, default_value_t = LawArg::Uubar)]
        law: LawArg,
        out: PathBuf,
    },
}

/// Failure paths carry the process exit code alongside the message.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::Io(_) => 3,
            Error::BadPermutation { .. } | Error::BadPartition { .. } => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (`symstate check ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn seed_from_env() -> u64 {
    std::env::var("SYMSTATE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn read_state(path: &Path) -> Result<(CMatrix, usize), Failure> {
    let m = dmat::read_file(path)?;
    let d = m.local_dim()?;
    Ok((m, d))
}

fn invariance_tol(m: &CMatrix) -> f64 {
    1e-12 * m.max_abs().max(1.0)
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Gen {
            family,
            a,
            d,
            a_matrix,
            d_matrix,
            out,
        } => cmd_gen(family, a, d, a_matrix, d_matrix, &out),
        Command::Check {
            input,
            method,
            law,
            partition,
        } => cmd_check(&input, method.into(), law.into(), partition.as_deref()),
        Command::Sweep {
            family,
            d,
            grid,
            out,
            parallel,
        } => cmd_sweep(family, d, grid, &out, parallel),
        Command::Conjugate { input, perm, out } => cmd_conjugate(&input, &perm, &out),
        Command::Twirl {
            input,
            partition,
            law,
            out,
        } => cmd_twirl(&input, &partition, law.into(), &out),
    }
}

fn build_family(family: Family, d: usize, a: f64) -> Result<CMatrix, Failure> {
    let rho = match family {
        Family::Horodecki => states::horodecki(a)?,
        Family::HorodeckiPrime => states::horodecki_prime(a)?,
        Family::HorodeckiDprime => states::horodecki_dprime(a)?,
        Family::Generalized => states::generalized_horodecki(d, a)?,
        Family::Abelian => {
            return Err(Failure::new(2, "abelian family has no mixing parameter"))
        }
    };
    Ok(rho)
}

fn cmd_gen(
    family: Family,
    a: Option<f64>,
    d: Option<usize>,
    a_matrix: Option<PathBuf>,
    d_matrix: Option<PathBuf>,
    out: &Path,
) -> Result<u8, Failure> {
    let rho = match family {
        Family::Abelian => {
            let (a_path, d_path) = match (a_matrix, d_matrix) {
                (Some(a), Some(d)) => (a, d),
                _ => {
                    return Err(Failure::new(
                        2,
                        "abelian family requires --a-matrix and --d-matrix",
                    ))
                }
            };
            let params =
                AbelianFamilyParams::new(dmat::read_file(&a_path)?, dmat::read_file(&d_path)?)?;
            states::abelian_family(&params)
        }
        _ => {
            let a = a.ok_or_else(|| Failure::new(2, "missing --a"))?;
            let d = match family {
                Family::Generalized => d.ok_or_else(|| Failure::new(2, "missing --d"))?,
                _ => 3,
            };
            build_family(family, d, a)?
        }
    };
    dmat::write_file(out, &rho)?;
    let min_eig = linalg::min_eigenvalue(&rho, linalg::default_hermiticity_tol(&rho))?;
    println!("trace={} min_eig={}", rho.trace().re, min_eig);
    Ok(0)
}

fn print_block_section(header: &str, bd: &BlockDecomposition) {
    println!("{header}: {}", bd.dims_string());
    println!("{}", bd.report());
}

fn cmd_check(
    input: &Path,
    method: PptMethod,
    law: InvarianceLaw,
    partition: Option<&str>,
) -> Result<u8, Failure> {
    let (rho, d) = read_state(input)?;
    let report = criteria::ppt_check(&rho, d, method, PPT_TOL)?;
    println!("trace={}", rho.trace().re);
    println!("min_eig={}", report.min_eig_rho);
    println!("min_eig_gamma={}", report.min_eig_gamma);
    println!("method={}", report.method.as_str());
    if report.is_ppt {
        println!("PPT: yes");
    } else {
        println!("PPT: no (min_eig_gamma={})", report.min_eig_gamma);
    }

    let tol = invariance_tol(&rho);
    let part = match partition {
        Some(text) => {
            let part = Partition::parse(text, d)?;
            let invariant = symmetry::is_invariant(&rho, &part, law, tol)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env());
            let dev = symmetry::sampled_deviation(&rho, &part, law, 64, &mut rng)?;
            let sampled_ok = dev <= tol.max(1e-9);
            println!(
                "invariant: {} (partition {}, law {}, sampled deviation {:e} over 64 samples)",
                if invariant { "yes" } else { "no" },
                part,
                law.as_str(),
                dev
            );
            if invariant != sampled_ok {
                return Err(Failure::new(
                    1,
                    "mask-based and sampled invariance verdicts disagree",
                ));
            }
            part
        }
        None => {
            if d > MAX_DETECT_DIM {
                return Err(Failure::new(
                    2,
                    format!("--partition is required for d > {MAX_DETECT_DIM}"),
                ));
            }
            let finest = symmetry::finest_symmetry(&rho, law, tol)?;
            println!(
                "finest {} partition: {}",
                match law {
                    InvarianceLaw::UUbar => "UUbar",
                    InvarianceLaw::UU => "UU",
                },
                finest
            );
            finest
        }
    };

    let bd_state = blocks::symmetry_blocks(&part, law);
    let bd_gamma = blocks::symmetry_blocks(&part, law.transposed());
    print_block_section("blocks", &bd_state);
    print_block_section("gamma blocks", &bd_gamma);
    if bd_state.num_blocks() == 3 && bd_gamma.num_blocks() == 3 {
        let ok = blocks::verify_subspace_relations(&bd_state, &bd_gamma)?;
        println!("subspace relations: {}", if ok { "yes" } else { "no" });
    }

    Ok(if report.is_ppt { 0 } else { 1 })
}

/// One CSV row of the parameter sweep.
struct SweepRow {
    a: f64,
    min_eig: f64,
    min_eig_gamma: f64,
    ccnr: f64,
    finest: String,
    block_dims: String,
    block_dims_gamma: String,
}

impl SweepRow {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            fmt17(self.a),
            fmt17(self.min_eig),
            fmt17(self.min_eig_gamma),
            fmt17(self.ccnr),
            self.finest,
            self.block_dims,
            self.block_dims_gamma
        )
    }
}

/// 17 significant digits, locale-independent.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn sweep_point(family: Family, d: usize, a: f64) -> Result<SweepRow, Failure> {
    let rho = build_family(family, d, a)?;
    let tol = invariance_tol(&rho);
    let min_eig = linalg::min_eigenvalue(&rho, tol)?;
    let gamma = linalg::partial_transpose(&rho, d)?;
    let min_eig_gamma = linalg::min_eigenvalue(&gamma, tol)?;
    let ccnr = criteria::ccnr_value(&rho, d)?;
    let finest = if d <= MAX_DETECT_DIM {
        symmetry::finest_symmetry(&rho, InvarianceLaw::UUbar, tol)?
    } else {
        // Beyond the detection cap, report the family's defining partition
        // after verifying it.
        let p = states::generalized_partition(d);
        if !symmetry::is_invariant(&rho, &p, InvarianceLaw::UUbar, tol)? {
            return Err(Failure::new(1, "family symmetry verification failed"));
        }
        p
    };
    let bd_state = blocks::symmetry_blocks(&finest, InvarianceLaw::UUbar);
    let bd_gamma = blocks::symmetry_blocks(&finest, InvarianceLaw::UU);
    Ok(SweepRow {
        a,
        min_eig,
        min_eig_gamma,
        ccnr,
        finest: finest.to_string(),
        block_dims: bd_state.dims_string(),
        block_dims_gamma: bd_gamma.dims_string(),
    })
}

fn cmd_sweep(
    family: Family,
    d: usize,
    grid: usize,
    out: &Path,
    parallel: bool,
) -> Result<u8, Failure> {
    if grid < 2 {
        return Err(Failure::new(2, "--grid must be at least 2"));
    }
    if matches!(family, Family::Abelian) {
        return Err(Failure::new(2, "abelian family has no mixing parameter"));
    }
    let points: Vec<f64> = (0..grid).map(|k| k as f64 / (grid - 1) as f64).collect();
    let rows: Vec<SweepRow> = if parallel {
        let mut results: Vec<(usize, Result<SweepRow, Failure>)> = points
            .par_iter()
            .enumerate()
            .map(|(k, &a)| (k, sweep_point(family, d, a)))
            .collect();
        results.sort_by_key(|(k, _)| *k);
        results
            .into_iter()
            .map(|(_, r)| r)
            .collect::<Result<_, _>>()?
    } else {
        points
            .iter()
            .map(|&a| sweep_point(family, d, a))
            .collect::<Result<_, _>>()?
    };
    let mut csv = String::from(
        "a,min_eig,min_eig_gamma,ccnr,finest_partition,block_dims,block_dims_gamma\n",
    );
    for row in &rows {
        csv.push_str(&row.csv());
        csv.push('\n');
    }
    std::fs::write(out, csv).map_err(Error::Io)?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

fn cmd_conjugate(input: &Path, perm: &str, out: &Path) -> Result<u8, Failure> {
    let (rho, d) = read_state(input)?;
    let s = PermutationSpec::parse(perm)?;
    if s.d() != d {
        return Err(Failure::new(
            2,
            format!("permutation has {} entries, state has d = {}", s.d(), d),
        ));
    }
    let tol = linalg::default_hermiticity_tol(&rho);
    let before = linalg::eig_hermitian(&rho, tol)?;
    let conjugated = states::conjugate(&rho, &s)?;
    let after = linalg::eig_hermitian(&conjugated, tol)?;
    dmat::write_file(out, &conjugated)?;
    println!(
        "min_eig_before={} max_eig_before={}",
        before[0],
        before[before.len() - 1]
    );
    println!(
        "min_eig_after={} max_eig_after={}",
        after[0],
        after[after.len() - 1]
    );
    Ok(0)
}

fn cmd_twirl(input: &Path, partition: &str, law: InvarianceLaw, out: &Path) -> Result<u8, Failure> {
    let (rho, d) = read_state(input)?;
    let part = Partition::parse(partition, d)?;
    let twirled = symmetry::twirl(&rho, &part, law)?;
    dmat::write_file(out, &twirled)?;
    let min_eig = linalg::min_eigenvalue(&twirled, linalg::default_hermiticity_tol(&twirled))?;
    println!("trace={} min_eig={}", twirled.trace().re, min_eig);
    Ok(0)
}
