//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 a rank was decided across a
//! numerically narrow gap (or numeric methods disagree).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog;
use crate::defect::{build_m, defect_by, DefectReport, Method};
use crate::error::{Error, Result};
use crate::families::{
    family_member, random_parameters, verify_family, Construction, FamilyVerification, HadamardFamily,
};
use crate::fourier::{defect_table, fourier_matrix, TableRow};
use crate::matcore::io::{read_matrix, to_text, MatrixJson};
use crate::matcore::rank::DEFAULT_REL_TOL;
use crate::matcore::{vec_real, RankPolicy, UnitaryMatrix};
use crate::pcm::{pcm_from_vector, pcm_parameter_count, pcm_to_solution, random_pcm, PcmParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNCERTAIN: i32 = 2;

/// Inputs further than this from unitary are rejected.
pub const INPUT_UNITARY_TOL: f64 = 1e-8;

/// `pcm --verify` passes when `|M^T vec(R)|` is at most this.
pub const PCM_VERIFY_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "unitary-defect",
    version,
    about = "Defects of unitary matrices and Fourier-stemming Hadamard families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defect of a matrix read from a file or named in the catalog
    /// (s6, fourier:N, jn:N, ray4:t).
    Defect {
        source: String,
        /// all, M, W, B or Dg.
        #[arg(long, default_value = "M")]
        method: String,
        /// Relative rank tolerance.
        #[arg(long, default_value_t = DEFAULT_REL_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Defects of F_1 .. F_max from the closed form.
    FourierTable {
        #[arg(long)]
        max: usize,
        /// Also compute each defect numerically (max <= 64).
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        markdown: bool,
    },
    /// The maximal affine family stemming from F_{p^k}.
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        /// direct or pcm.
        #[arg(long, default_value = "direct")]
        construction: String,
        /// Directory for the basis matrices `basis_<i>.txt`.
        #[arg(long)]
        emit_basis: Option<PathBuf>,
        /// Number of random members to print as JSON lines.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: bool,
    },
    /// A parameter cycle matrix and its solution R = P F_N.
    Pcm {
        #[arg(long)]
        n: usize,
        /// Draw parameters uniformly from [-1, 1]; otherwise all are zero.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            // clap's own code for usage errors is 2, which here means "uncertain"
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Defect {
            source,
            method,
            tol,
            json,
        } => cmd_defect(source, method, *tol, *json, out),
        Command::FourierTable { max, numeric, markdown } => cmd_fourier_table(*max, *numeric, *markdown, out),
        Command::Family {
            p,
            k,
            construction,
            emit_basis,
            sample,
            seed,
            verify,
        } => cmd_family(
            *p,
            *k,
            construction,
            emit_basis.as_deref(),
            *sample,
            *seed,
            *verify,
            out,
        ),
        Command::Pcm {
            n,
            random,
            seed,
            verify,
        } => cmd_pcm(*n, *random, *seed, *verify, out),
    }
}

/// A catalog name or a matrix file, checked for unitarity.
pub fn load_source(source: &str) -> Result<UnitaryMatrix> {
    let m = if catalog::is_catalog_name(source) {
        catalog::lookup(source)?
    } else {
        read_matrix(Path::new(source)).map_err(|e| match e {
            Error::Io(io) => Error::invalid(format!("cannot read {source:?}: {io}")),
            e => e,
        })?
    };
    UnitaryMatrix::with_tolerance(m, INPUT_UNITARY_TOL)
}

fn cmd_defect(source: &str, method: &str, tol: f64, json: bool, out: &mut dyn Write) -> Result<i32> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("--tol must be positive, got {tol}")));
    }
    let methods = if method == "all" {
        Method::NUMERIC.to_vec()
    } else {
        let m: Method = method.parse()?;
        if m == Method::ClosedForm {
            return Err(Error::invalid("closed_form is not a numeric method"));
        }
        vec![m]
    };
    let u = load_source(source)?;
    let policy = RankPolicy::with_rel_tol(tol);
    let reports = methods
        .iter()
        .map(|&m| defect_by(&u, m, policy))
        .collect::<Result<Vec<DefectReport>>>()?;
    if json {
        let js: Vec<_> = reports.iter().map(DefectReport::to_json).collect();
        if js.len() == 1 {
            writeln!(out, "{}", serde_json::to_string(&js[0])?)?;
        } else {
            writeln!(out, "{}", serde_json::to_string(&js)?)?;
        }
    } else {
        for r in &reports {
            writeln!(out, "{r}")?;
        }
    }
    let disagree = reports.windows(2).any(|w| w[0].defect != w[1].defect);
    Ok(if disagree || reports.iter().any(DefectReport::uncertain) {
        EXIT_UNCERTAIN
    } else {
        EXIT_OK
    })
}

fn cmd_fourier_table(max: usize, numeric: bool, markdown: bool, out: &mut dyn Write) -> Result<i32> {
    let rows = defect_table(max, numeric)?;
    let text = if markdown {
        markdown_table(&rows, numeric)
    } else {
        tsv_table(&rows)
    };
    write!(out, "{text}")?;
    let bad = rows.iter().any(|r| r.uncertain || r.agree == Some(false));
    Ok(if bad { EXIT_UNCERTAIN } else { EXIT_OK })
}

/// Columns `N`, `defect_closed`, `defect_numeric`, `agree`; the last two
/// are `-` without `--numeric`.
pub fn tsv_table(rows: &[TableRow]) -> String {
    let mut s = String::from("N\tdefect_closed\tdefect_numeric\tagree\n");
    for r in rows {
        let num = r.numeric.map_or("-".to_string(), |d| d.to_string());
        let agree = r.agree.map_or("-".to_string(), |a| a.to_string());
        let _ = writeln!(s, "{}\t{}\t{}\t{}", r.n, r.closed_form, num, agree);
    }
    s
}

/// Blocks of 16 sizes laid out horizontally.
pub fn markdown_table(rows: &[TableRow], numeric: bool) -> String {
    let mut s = String::new();
    for (b, chunk) in rows.chunks(16).enumerate() {
        if b > 0 {
            s.push('\n');
        }
        let line = |head: &str, f: &dyn Fn(&TableRow) -> String| {
            let cells: Vec<String> = chunk.iter().map(f).collect();
            format!("| {head} | {} |\n", cells.join(" | "))
        };
        s += &line("N", &|r| r.n.to_string());
        s += &format!("|---|{}\n", "---|".repeat(chunk.len()));
        s += &line("d(F_N)", &|r| r.closed_form.to_string());
        if numeric {
            s += &line("numeric", &|r| r.numeric.map_or("-".into(), |d| d.to_string()));
        }
    }
    s
}

#[derive(Serialize)]
struct SampleLine {
    sample: usize,
    phi: Vec<f64>,
    matrix: MatrixJson,
}

#[allow(clippy::too_many_arguments)]
fn cmd_family(
    p: u64,
    k: u32,
    construction: &str,
    emit_basis: Option<&Path>,
    sample: Option<usize>,
    seed: u64,
    verify: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let construction: Construction = construction.parse()?;
    let fam = HadamardFamily::new(p, k, construction)?;
    writeln!(out, "{}", serde_json::to_string(&fam.metadata())?)?;
    if let Some(dir) = emit_basis {
        fs::create_dir_all(dir)?;
        for (i, r) in fam.space.basis.iter().enumerate() {
            fs::write(dir.join(format!("basis_{}.txt", i + 1)), to_text(&r.to_complex()))?;
        }
    }
    if let Some(m) = sample {
        for t in 0..m {
            let phi = random_parameters(fam.dim(), seed.wrapping_add(t as u64));
            let u = family_member(&fam, &phi)?;
            let line = SampleLine {
                sample: t + 1,
                matrix: MatrixJson::from(u.matrix()),
                phi,
            };
            writeln!(out, "{}", serde_json::to_string(&line)?)?;
        }
    }
    if verify {
        let v = verify_family(&fam, 10, seed)?;
        write!(out, "{}", verification_text(&v))?;
        if !v.passed() {
            return Err(Error::invalid(format!(
                "family verification failed for p = {p}, k = {k}"
            )));
        }
    }
    Ok(EXIT_OK)
}

fn verification_text(v: &FamilyVerification) -> String {
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    format!(
        "dimension {} (expected {}): {}\n\
         unitarity, max residual {:.2e}: {}\n\
         hadamard moduli, max deviation {:.2e}: {}\n\
         dephased: {}\n\
         span equals other construction (joint rank {}): {}\n",
        v.dim,
        v.expected_dim,
        mark(v.dim == v.expected_dim),
        v.max_unitarity_residual,
        mark(v.unitary()),
        v.max_modulus_deviation,
        mark(v.hadamard()),
        mark(v.all_dephased),
        v.joint_rank,
        mark(v.same_span()),
    )
}

#[derive(Serialize)]
struct PcmOutput {
    parameter_count: usize,
    pcm: PcmParams,
    solution: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify_residual: Option<f64>,
}

/// `|M^T vec(R)|` for the Fourier matrix of `R`'s size; zero for `N = 1`.
pub fn pcm_solution_residual(r: &crate::matcore::RealMatrix) -> Result<f64> {
    let n = r.rows();
    if n < 2 {
        return Ok(0.0);
    }
    let m = build_m(&fourier_matrix(n)?)?;
    let v = m.transpose().mul_vec(&vec_real(r))?;
    Ok(v.iter().map(|x| x * x).sum::<f64>().sqrt())
}

fn cmd_pcm(n: usize, random: bool, seed: u64, verify: bool, out: &mut dyn Write) -> Result<i32> {
    let count = pcm_parameter_count(n);
    let p = if random {
        random_pcm(n, seed)?
    } else {
        pcm_from_vector(n, &vec![0.0; count])?
    };
    let r = pcm_to_solution(&p)?;
    let residual = if verify { Some(pcm_solution_residual(&r)?) } else { None };
    let output = PcmOutput {
        parameter_count: count,
        pcm: p.params().clone(),
        solution: MatrixJson::from(&r.to_complex()),
        verify_residual: residual,
    };
    writeln!(out, "{}", serde_json::to_string(&output)?)?;
    if let Some(res) = residual {
        if res > PCM_VERIFY_TOL {
            return Err(Error::Internal(format!(
                "|M^T vec(R)| = {res:.3e} exceeds {PCM_VERIFY_TOL:.0e}"
            )));
        }
    }
    Ok(EXIT_OK)
}
