//! Batch front end: one job per invocation, a JSON report and a short human summary.
//!
//! Exit codes: 0 success, 2 validation failure, 3 parse/schema error, 4 internal
//! decomposition failure.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use malachite_q::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypersurface::{complex_from_graph, levi_determinant_of, nondeg_report, prenormalize, validate_2nondegenerate, FormTag, Hypersurface};
use crate::json::{self, AlgebraJson, ChiJson, DimsJson, ErrorJson, HypersurfaceJson, NondegJson, VerifyJson};
use crate::model::{algebra_basis, canonical_cone_check, grading_failures, jacobi_failures, tangency_defect};
use crate::normalform::{is_in_normal_form, kernel_dimension, normalize, NFReport, NormalizeParams};
use crate::reconstruct::{reconstruct, DistinguishedPart};
use crate::scalar::GaussQ;
use crate::series::{Trunc, WSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DECOMPOSITION: i32 = 4;

/// Truncation used when there is no input file and no `--weight` / `--zeta-cap`.
pub const DEFAULT_TRUNC: (i32, i32) = (8, 6);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Bring a hypersurface to normal form.
    Normalize,
    /// Decide sphericity from the normal form.
    Sphericity,
    /// Build the normal form with a given distinguished part.
    Reconstruct,
    /// Check the Levi determinant, reality and normal-form membership of a hypersurface.
    Verify,
    /// Check the automorphism algebra of the model.
    AlgebraCheck,
}

#[derive(Debug, Parser)]
#[command(name = "lightcone", version, about = "Exact formal normal forms of 2-nondegenerate hypersurfaces in C^3")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input JSON (hypersurface, or distinguished part for `reconstruct`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Where to write the JSON report; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Weight cap W (overrides the input truncation).
    #[arg(long)]
    pub weight: Option<i32>,
    /// ζ-degree cap D (overrides the input truncation).
    #[arg(long = "zeta-cap")]
    pub zeta_cap: Option<i32>,
    /// Chain direction `a`, as `re` or `re,im` (exact rationals).
    #[arg(long = "param-a")]
    pub param_a: Option<String>,
    /// Scaling `λ`, real part (default 1 when neither part is given)
    #[arg(long = "param-lambda-re")]
    pub param_lambda_re: Option<String>,
    /// Scaling `λ`, imaginary part
    #[arg(long = "param-lambda-im")]
    pub param_lambda_im: Option<String>,
    /// Real parameter `s` of the weight-2 flow
    #[arg(long = "param-s")]
    pub param_s: Option<String>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Suppress the human-readable summary.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub weight_cap: Option<i32>,
    pub zeta_cap: Option<i32>,
    pub params: NormalizeParams,
    pub seed: u64,
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let mut params = NormalizeParams::default();
        if let Some(a) = &cli.param_a {
            params.a = parse_complex_arg(a)?;
        }
        if cli.param_lambda_re.is_some() || cli.param_lambda_im.is_some() {
            let re = cli.param_lambda_re.as_deref().map(GaussQ::parse_rational).transpose()?.unwrap_or(Rational::from(0));
            let im = cli.param_lambda_im.as_deref().map(GaussQ::parse_rational).transpose()?.unwrap_or(Rational::from(0));
            params.lambda = GaussQ::new(re, im);
        }
        if let Some(s) = &cli.param_s {
            params.s = GaussQ::parse_rational(s)?;
        }
        if params.lambda.is_zero() {
            return Err(Error::Validation("scaling parameter lambda must be nonzero".into()));
        }
        Ok(JobConfig {
            command: cli.command,
            input_path: cli.input.clone(),
            output_path: cli.out.clone(),
            weight_cap: cli.weight,
            zeta_cap: cli.zeta_cap,
            params,
            seed: cli.seed,
        })
    }

    fn trunc_override(&self, base: Option<Trunc>) -> Result<Trunc> {
        let (w0, d0) = base.map(|t| (t.weight, t.zeta)).unwrap_or(DEFAULT_TRUNC);
        Trunc::checked(self.weight_cap.unwrap_or(w0), self.zeta_cap.unwrap_or(d0))
    }
}

fn parse_complex_arg(s: &str) -> Result<GaussQ> {
    match s.split_once(',') {
        Some((re, im)) => json::parse_gauss(re, im),
        None => Ok(GaussQ::real(GaussQ::parse_rational(s)?)),
    }
}

/// Result of a job: exit code, machine report and human summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub summary: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => EXIT_PARSE,
        Error::Validation(_) | Error::PerturbationViolation(_) | Error::Truncation(_) => EXIT_VALIDATION,
        Error::Decomposition { .. } | Error::Triangularity { .. } | Error::NoConvergence(_) | Error::DivisionByZero => {
            EXIT_DECOMPOSITION
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_PARSE => "parse",
        EXIT_VALIDATION => "validation",
        _ => "decomposition",
    }
}

pub fn error_outcome(e: &Error) -> Outcome {
    let violations = match e {
        Error::PerturbationViolation(v) => v.clone(),
        _ => Vec::new(),
    };
    let doc = ErrorJson { error: error_kind(e).into(), message: e.to_string(), violations };
    Outcome { code: exit_code(e), report: json::emit(&doc), summary: format!("error: {e}") }
}

/// Runs one job. Never panics on bad input; failures become an error report.
pub fn run(cfg: &JobConfig) -> Outcome {
    match run_inner(cfg) {
        Ok(o) => o,
        Err(e) => error_outcome(&e),
    }
}

fn run_inner(cfg: &JobConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Normalize => {
            let m = load_hypersurface(cfg)?;
            let r = normalize_any(&m, &cfg.params)?;
            let summary = format!(
                "normalize: {}, {} normal-form terms, {} distinguished terms, {}",
                r.trunc,
                r.normal_phi.len(),
                r.distinguished.len(),
                sphericity_line(&r)
            );
            Ok(Outcome { code: EXIT_OK, report: json::emit(&json::nf_report_to_json(&r)), summary })
        }
        Command::Sphericity => {
            let m = load_hypersurface(cfg)?;
            let r = normalize_any(&m, &cfg.params)?;
            let doc = json::sphericity_to_json(&r.sphericity.0, &r.sphericity.1);
            Ok(Outcome { code: EXIT_OK, report: json::emit(&doc), summary: format!("sphericity: {}", sphericity_line(&r)) })
        }
        Command::Reconstruct => {
            let text = read_input(cfg)?;
            let doc: ChiJson = json::parse(&text)?;
            let t = cfg.trunc_override(Some(doc.truncation.to_trunc()?))?;
            let declared = doc.truncation.to_trunc()?;
            let chi = json::series_from_json(&doc.chi, Trunc::working(declared.weight, declared.zeta))?;
            let d = DistinguishedPart::new(chi.with_trunc(Trunc::working(t.weight, t.zeta)), t)?;
            let m = reconstruct(&d)?;
            let summary = format!("reconstruct: {}, {} terms from {} distinguished terms", t, m.phi.len(), d.chi.len());
            Ok(Outcome { code: EXIT_OK, report: json::emit(&json::hypersurface_to_json(&m)), summary })
        }
        Command::Verify => {
            let m = load_unchecked(cfg)?;
            let doc = verify(&m)?;
            let ok = doc.levi_residual_zero
                && doc.reality_ok
                && doc.nondeg_report.degenerate_to_order
                && doc.nondeg_report.kernel_rank_ok
                && doc.nondeg_report.two_nondeg_witness;
            let summary = format!(
                "verify: {}, Levi residual zero: {}, real: {}, normal form: {}, rank-1 kernel: {}, 2-nondegenerate: {}",
                m.trunc,
                doc.levi_residual_zero,
                doc.reality_ok,
                doc.normal_form_ok,
                doc.nondeg_report.kernel_rank_ok,
                doc.nondeg_report.two_nondeg_witness
            );
            Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_VALIDATION }, report: json::emit(&doc), summary })
        }
        Command::AlgebraCheck => {
            let t = cfg.trunc_override(None)?;
            let doc = algebra_check(t, cfg.seed)?;
            let ok = doc.grading_ok && doc.jacobi_ok && doc.tangency_ok && doc.cone_ok && doc.dims == (DimsJson { g: 10, h: 5 });
            let summary = format!(
                "algebra-check: {}, grading: {}, Jacobi: {}, tangency: {}, cone: {}, dim g = {}, dim h = {}",
                t, doc.grading_ok, doc.jacobi_ok, doc.tangency_ok, doc.cone_ok, doc.dims.g, doc.dims.h
            );
            Ok(Outcome { code: if ok { EXIT_OK } else { EXIT_VALIDATION }, report: json::emit(&doc), summary })
        }
    }
}

fn sphericity_line(r: &NFReport) -> String {
    format!(
        "spherical: {} (Phi_3002(0) = {}, Phi_5001(0) = {})",
        if r.is_spherical() { "yes" } else { "no" },
        r.sphericity.0,
        r.sphericity.1
    )
}

fn read_input(cfg: &JobConfig) -> Result<String> {
    match &cfg.input_path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display()))),
        None => Err(Error::Parse("this command needs --input".into())),
    }
}

/// `Φ` of the input on the (possibly overridden) working region, without validation.
fn load_phi(cfg: &JobConfig) -> Result<(WSeries, Trunc)> {
    let doc: HypersurfaceJson = json::parse(&read_input(cfg)?)?;
    let (phi, declared) = json::hypersurface_phi(&doc)?;
    let t = cfg.trunc_override(Some(declared))?;
    Ok((phi.with_trunc(Trunc::working(t.weight, t.zeta)), t))
}

fn load_hypersurface(cfg: &JobConfig) -> Result<Hypersurface> {
    let (phi, t) = load_phi(cfg)?;
    Hypersurface::new(phi, t, FormTag::RawGerm)
}

fn load_unchecked(cfg: &JobConfig) -> Result<Hypersurface> {
    let (phi, t) = load_phi(cfg)?;
    Ok(Hypersurface { phi, trunc: t, form: FormTag::RawGerm })
}

/// Normalises a raw germ: Levi-degeneracy is checked first, then germs with
/// low-weight or killed-shape terms are prenormalised.
pub fn normalize_any(m: &Hypersurface, params: &NormalizeParams) -> Result<NFReport> {
    let nd = validate_2nondegenerate(m)?;
    if !nd.degenerate_to_order {
        return Err(Error::Validation("not Levi-degenerate to the truncation order".into()));
    }
    // Killed-shape terms of weight ≥ 3 are constrained slots of the normal form and are
    // removed by the weight loop; only terms below weight 3 need prenormalisation.
    if m.phi.iter().all(|(mono, _)| mono.weight() >= 3) {
        return normalize(m, params);
    }
    let (pre, pre_map) = prenormalize(m)?;
    let mut r = normalize(&pre, params)?;
    r.map = r.map.compose(&pre_map)?;
    Ok(r)
}

pub fn verify(m: &Hypersurface) -> Result<VerifyJson> {
    let reality_ok = m.phi.is_real();
    if !reality_ok {
        let nd = NondegJson { degenerate_to_order: false, kernel_rank_ok: false, two_nondeg_witness: false };
        return Ok(VerifyJson { levi_residual_zero: false, normal_form_ok: false, reality_ok, nondeg_report: nd });
    }
    let floor = m.phi.iter().all(|(mono, _)| mono.weight() >= 3);
    let graph = m.graph();
    let det = levi_determinant_of(&complex_from_graph(&graph)?);
    Ok(VerifyJson {
        levi_residual_zero: det.truncate(m.trunc).is_zero(),
        normal_form_ok: floor && is_in_normal_form(&m.phi).0,
        reality_ok,
        nondeg_report: nondeg_report(&graph, &det).into(),
    })
}

/// Grading, Jacobi identity and tangency of the model's automorphism algebra on `t`, the
/// dimensions of `g` and of the stability algebra `h` as kernels of the homological
/// operator, and the canonical cone test on a seeded sample of 20 points.
pub fn algebra_check(t: Trunc, seed: u64) -> Result<AlgebraJson> {
    let mut tangency_ok = true;
    for x in algebra_basis(Trunc::EXACT) {
        if !tangency_defect(&x, t)?.is_zero() {
            tangency_ok = false;
        }
    }
    // The kernel of L lives in weights ≤ 5; this region holds all of it.
    let wt = Trunc::working(6, 3);
    let g = (0..=5).map(|m| kernel_dimension(m, wt, false)).sum();
    let h = (2..=4).map(|m| kernel_dimension(m, wt, true)).sum();
    Ok(AlgebraJson {
        grading_ok: grading_failures().is_empty(),
        jacobi_ok: jacobi_failures().is_empty(),
        tangency_ok,
        cone_ok: cone_sample(seed, 20).iter().all(|(p, expect)| canonical_cone_check(&p.0, &p.1, &p.2) == *expect),
        dims: DimsJson { g, h },
    })
}

type ConePoint = (GaussQ, GaussQ, Rational);

/// Sample points with their expected membership: three fixed points, then random points
/// placed on the cone (`ζ = −iz²/u`) or pushed off it, plus points with `u = 0`.
pub fn cone_sample(seed: u64, n: usize) -> Vec<(ConePoint, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        ((GaussQ::zero(), GaussQ::zero(), Rational::from(1)), true),
        ((GaussQ::one(), GaussQ::i().scale(&Rational::from(-1)), Rational::from(1)), true),
        ((GaussQ::one(), GaussQ::zero(), Rational::from(1)), false),
    ];
    let small = |rng: &mut ChaCha8Rng| GaussQ::from_parts(rng.gen_range(-5..=5), rng.gen_range(1..=4), rng.gen_range(-5..=5), rng.gen_range(1..=4));
    while out.len() < n {
        let z = small(&mut rng);
        let mut u = Rational::from_signeds(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=5));
        let kind = rng.gen_range(0..4);
        if kind == 3 {
            u = Rational::from(0);
        } else if u == Rational::from(0) {
            u = Rational::from(1);
        }
        let on_cone = if u == Rational::from(0) {
            GaussQ::zero()
        } else {
            (&(&GaussQ::i() * &z) * &z).scale(&(Rational::from(-1) / u.clone()))
        };
        let (zeta, member) = match kind {
            0 | 1 => (on_cone, true),
            2 => (&on_cone + &GaussQ::from_parts(1, 1 + rng.gen_range(0..3), rng.gen_range(-2..=2), 1), false),
            _ => (on_cone, false),
        };
        out.push(((z, zeta, u), member));
    }
    out
}

/// Entry point of the binary: parses arguments, runs the job, writes the report.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match JobConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => error_outcome(&e),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &outcome.report) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_PARSE;
            }
            if outcome.code != EXIT_OK {
                eprintln!("{}", outcome.summary);
            } else if !cli.quiet {
                println!("{}", outcome.summary);
            }
        }
        None => {
            print!("{}", outcome.report);
            if outcome.code != EXIT_OK || !cli.quiet {
                eprintln!("{}", outcome.summary);
            }
        }
    }
    outcome.code
}
