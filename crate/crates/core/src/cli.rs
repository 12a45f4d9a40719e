//! Command-line front end. [`run`] parses arguments, dispatches, writes the report
//! and returns the process exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::exactalg::{enumerate_slice, Family, GradeLabel, GradingScheme, SchemeKind};
use crate::harmonic::{
    harmonic_kernel, label_grid, set_max_cells, singular_vectors, theorem_suite, xu_basis, xu_kernel_agreement,
    Theorem,
};
use crate::report::VerificationReport;
use crate::superrep::{check_identities, osp_stabilizer_check, verify_homomorphism, RepVariant};

pub const MAX_CELLS_ENV: &str = "SUPERHARM_MAX_CELLS";

#[derive(Debug, Parser)]
#[command(name = "superharm", version, about = "Exact checks for super-polynomial harmonic analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel of Delta on a slice, compared with the series basis
    HarmonicBasis(Job),
    /// Singular vectors of a harmonic slice
    SingularVectors(Job),
    /// Irreducibility and decomposition suite for one theorem
    VerifyTheorem {
        /// 1, 2, 3 or 4
        theorem: String,
        #[command(flatten)]
        job: Job,
    },
    /// Bracket homomorphism of the representations
    CheckBrackets(Job),
    /// Commutator identities of Delta and eta
    CheckIdentities(Job),
    /// Stabilizer of eta in the orthosymplectic case
    Stabilizer(Job),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    GlNatural,
    GlTwisted,
    OspEvenNatural,
    OspEvenTwisted,
    OspOddNatural,
    OspOddTwisted,
}

impl SchemeArg {
    fn kind(self) -> SchemeKind {
        match self {
            SchemeArg::GlNatural => SchemeKind::GlNatural,
            SchemeArg::GlTwisted => SchemeKind::GlTwisted,
            SchemeArg::OspEvenNatural => SchemeKind::OspEvenNatural,
            SchemeArg::OspEvenTwisted => SchemeKind::OspEvenTwisted,
            SchemeArg::OspOddNatural => SchemeKind::OspOddNatural,
            SchemeArg::OspOddTwisted => SchemeKind::OspOddTwisted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Job {
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[arg(long, default_value_t = 2)]
    pub n: u16,
    #[arg(long, default_value_t = 1)]
    pub m: u16,
    #[arg(long)]
    pub n1: Option<u16>,
    #[arg(long)]
    pub n2: Option<u16>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lp: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lmax: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lpmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lpmax: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kmax: Option<i64>,
    /// Total-degree cap, required for twisted schemes
    #[arg(long)]
    pub cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

impl Job {
    fn scheme_with_default(&self, default: SchemeKind) -> Result<GradingScheme, Error> {
        let kind = self.scheme.map(SchemeArg::kind).unwrap_or(default);
        let twist = if kind.is_twisted() {
            match (self.n1, self.n2) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => return Err(Error::InvalidArgument(format!("{} needs --n1 and --n2", kind.name()))),
            }
        } else {
            if self.n1.is_some() || self.n2.is_some() {
                return Err(Error::InvalidArgument(format!("{} takes no --n1/--n2", kind.name())));
            }
            None
        };
        GradingScheme::new(kind, self.n, self.m, twist)
    }

    fn labels(&self, family: Family) -> Result<Vec<GradeLabel>, Error> {
        let missing = |what: &str| Error::InvalidArgument(format!("give {what}"));
        match family {
            Family::Gl => {
                let l = match (self.l, self.lmax) {
                    (Some(v), None) => (v, v),
                    (None, Some(hi)) => (self.lmin.unwrap_or(0), hi),
                    (Some(_), Some(_)) => return Err(Error::InvalidArgument("--l conflicts with --lmax".into())),
                    (None, None) => return Err(missing("--l or --lmax")),
                };
                let lp = match (self.lp, self.lpmax) {
                    (Some(v), None) => (v, v),
                    (None, Some(hi)) => (self.lpmin.unwrap_or(0), hi),
                    (Some(_), Some(_)) => return Err(Error::InvalidArgument("--lp conflicts with --lpmax".into())),
                    (None, None) => match self.lmax {
                        Some(hi) => (self.lmin.unwrap_or(0), hi),
                        None => return Err(missing("--lp or --lpmax")),
                    },
                };
                if self.k.is_some() || self.kmin.is_some() || self.kmax.is_some() {
                    return Err(Error::InvalidArgument("gl schemes take --l/--lp, not --k".into()));
                }
                Ok(label_grid(family, l, lp))
            }
            _ => {
                if self.l.is_some() || self.lp.is_some() || self.lmax.is_some() || self.lpmax.is_some() {
                    return Err(Error::InvalidArgument("orthosymplectic schemes take --k, not --l/--lp".into()));
                }
                let k = match (self.k, self.kmax) {
                    (Some(v), None) => (v, v),
                    (None, Some(hi)) => (self.kmin.unwrap_or(0), hi),
                    (Some(_), Some(_)) => return Err(Error::InvalidArgument("--k conflicts with --kmax".into())),
                    (None, None) => return Err(missing("--k or --kmax")),
                };
                Ok(label_grid(family, k, (0, 0)))
            }
        }
    }

    fn single_label(&self, family: Family) -> Result<GradeLabel, Error> {
        let ls = self.labels(family)?;
        match ls.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::InvalidArgument("this command takes a single label".into())),
        }
    }
}

fn natural_or_twisted(job: &Job, kind: SchemeKind) -> Option<GradingScheme> {
    let (n1, n2) = match (job.n1, job.n2) {
        (Some(a), Some(b)) => (a, b),
        _ => (1, job.n.max(1)),
    };
    GradingScheme::new(kind, job.n, job.m, kind.is_twisted().then_some((n1, n2))).ok()
}

fn all_variants(job: &Job) -> Result<Vec<GradingScheme>, Error> {
    if job.scheme.is_some() {
        return Ok(vec![job.scheme_with_default(SchemeKind::GlNatural)?]);
    }
    let out: Vec<_> = SchemeKind::all().into_iter().filter_map(|k| natural_or_twisted(job, k)).collect();
    if out.is_empty() {
        return Err(Error::InvalidArgument("no variant accepts these parameters".into()));
    }
    Ok(out)
}

fn harmonic_basis_report(job: &Job) -> Result<VerificationReport, Error> {
    let scheme = job.scheme_with_default(SchemeKind::GlNatural)?;
    let label = job.single_label(scheme.family())?;
    let slice = enumerate_slice(&scheme, label, job.cap)?;
    let mut r = VerificationReport::new("harmonic-basis").with_scheme(scheme).with_label(label).with_cap(slice.cap);
    r.dim("slice", slice.dim());
    let kernel = harmonic_kernel(&slice)?;
    let series = xu_basis(&slice)?;
    r.dim("kernel", kernel.dim());
    r.dim("series", series.dim());
    let mut k = VerificationReport::new("kernel");
    k.basis = kernel.vectors.iter().map(|v| v.to_string()).collect();
    r.push(k.finish());
    let mut x = VerificationReport::new("series");
    x.basis = series.vectors.iter().map(|v| v.to_string()).collect();
    r.push(x.finish());
    r.push(xu_kernel_agreement(&scheme, label, job.cap)?);
    Ok(r.finish())
}

fn singular_report(job: &Job) -> Result<VerificationReport, Error> {
    let scheme = job.scheme_with_default(SchemeKind::GlNatural)?;
    let mut r = VerificationReport::new("singular-vectors").with_scheme(scheme).with_cap(job.cap);
    for label in job.labels(scheme.family())? {
        let slice = enumerate_slice(&scheme, label, job.cap)?;
        let sv = singular_vectors(&slice, &RepVariant::new(scheme))?;
        let mut c = VerificationReport::new("singular-vectors").with_scheme(scheme).with_label(label).with_cap(sv.cap);
        c.dim("singular", sv.count());
        c.singular_vectors = sv.reported();
        if !sv.complete {
            c.inconclusive("searched the weights met within the cap only");
        }
        r.push(c.finish());
    }
    Ok(r.finish())
}

fn theorem_report(job: &Job, theorem: &str) -> Result<VerificationReport, Error> {
    let t: Theorem = theorem.parse()?;
    let default = match t {
        Theorem::T1 => SchemeKind::GlNatural,
        Theorem::T2 => SchemeKind::GlTwisted,
        Theorem::T3 => SchemeKind::OspEvenNatural,
        Theorem::T4 => SchemeKind::OspOddNatural,
    };
    let scheme = job.scheme_with_default(default)?;
    let labels = job.labels(scheme.family())?;
    theorem_suite(t, &scheme, &labels, job.cap)
}

fn group(name: &str, reports: Vec<VerificationReport>) -> VerificationReport {
    let mut r = VerificationReport::new(name);
    for c in reports {
        r.push(c);
    }
    r.finish()
}

fn dispatch(cmd: &Command) -> Result<(VerificationReport, &Job), Error> {
    Ok(match cmd {
        Command::HarmonicBasis(job) => (harmonic_basis_report(job)?, job),
        Command::SingularVectors(job) => (singular_report(job)?, job),
        Command::VerifyTheorem { theorem, job } => (theorem_report(job, theorem)?, job),
        Command::CheckBrackets(job) => {
            let rs = all_variants(job)?.into_iter().map(|s| verify_homomorphism(&RepVariant::new(s))).collect();
            (group("check-brackets", rs), job)
        }
        Command::CheckIdentities(job) => {
            let rs = all_variants(job)?.iter().map(check_identities).collect();
            (group("check-identities", rs), job)
        }
        Command::Stabilizer(job) => {
            let scheme = job.scheme_with_default(SchemeKind::OspEvenNatural)?;
            (osp_stabilizer_check(&RepVariant::new(scheme)), job)
        }
    })
}

fn job_of(cmd: &Command) -> &Job {
    match cmd {
        Command::HarmonicBasis(j)
        | Command::SingularVectors(j)
        | Command::CheckBrackets(j)
        | Command::CheckIdentities(j)
        | Command::Stabilizer(j) => j,
        Command::VerifyTheorem { job, .. } => job,
    }
}

fn apply_max_cells() -> Result<(), Error> {
    match std::env::var(MAX_CELLS_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{MAX_CELLS_ENV} must be a count, got {v:?}")))?;
            set_max_cells(Some(n));
        }
        Err(_) => set_max_cells(None),
    }
    Ok(())
}

/// Run the command line `args` (including the program name), writing the report to
/// `stdout` or `--out` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    if let Err(e) = apply_max_cells() {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    let job = job_of(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(job.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let (report, job) = match pool.install(|| dispatch(&cli.command)) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::Internal(_) => 1,
                _ => 2,
            };
        }
    };
    let text = match job.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let written = match &job.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 2;
    }
    report.verdict.exit_code()
}
