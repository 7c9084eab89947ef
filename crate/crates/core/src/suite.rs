//! Verification suites over `(m, n)` cases and the report document they produce.
//!
//! Every check compares an exact expected string with the computed one, so a
//! report is a plain list of equalities and is byte-identical across runs
//! (wall times are only recorded on request).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hwsolver::{
    beta3_check, casimir_apply, casimir_scalar, casimir_exclusions, verify_tensor_square, Beta3Config,
};
use crate::joseph::{
    derive_lambda_c, expected_left, expected_right, lambda_c_closed_form, s_checks, s_tensor, tau_stability,
};
use crate::rational::{fmt_q, qi, Q};
use crate::superalgebra::{killing, Slmn, SuperMatrix};
use crate::superspace::{casimir_eigenvalue, lambda_k, SuperDim};
use crate::tensoralg::{
    contract_str, decompose_sym, is_g_sym, kappa, phi, phi_with, symmetrize_pairs, PhiConstants,
    SuperTensor,
};
use crate::weylreal::{
    build_realization, casimir_image, check_cde_images, check_homomorphism, check_joseph_annihilated,
    cyclic_span_dim, polynomial_monomials, WeylOp,
};

/// Largest adjoint dimension for which the τ rank accounting is attempted.
pub const TAU_RANK_MAX_DIM: usize = 35;

/// Random symmetric tensors per case in the decomposition suite.
pub const RANDOM_SYM_SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Prelim,
    Decomposition,
    Hwv,
    Joseph,
    Realization,
    Beta3,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Prelim,
        SuiteName::Decomposition,
        SuiteName::Hwv,
        SuiteName::Joseph,
        SuiteName::Realization,
        SuiteName::Beta3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Prelim => "prelim",
            SuiteName::Decomposition => "decomposition",
            SuiteName::Hwv => "hwv",
            SuiteName::Joseph => "joseph",
            SuiteName::Realization => "realization",
            SuiteName::Beta3 => "beta3",
        }
    }

    /// Checks the case against the suite's hypotheses.
    pub fn admits(self, dim: SuperDim) -> Result<()> {
        match self {
            SuiteName::Decomposition | SuiteName::Hwv => dim.require_wide(),
            _ => dim.require_positive_wide(),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub cases: Vec<(usize, usize)>,
    /// Empty means every suite except `beta3`, plus `beta3` when `slow` is set.
    pub suites: Vec<SuiteName>,
    pub slow: bool,
    pub jobs: Option<usize>,
    pub mem_cap_mb: u64,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cases: Vec::new(),
            suites: Vec::new(),
            slow: false,
            jobs: None,
            mem_cap_mb: Beta3Config::default().mem_cap_mb,
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn selected_suites(&self) -> Vec<SuiteName> {
        if self.suites.is_empty() {
            SuiteName::ALL.into_iter().filter(|&s| s != SuiteName::Beta3 || self.slow).collect()
        } else {
            let mut s = self.suites.clone();
            s.sort();
            s.dedup();
            s
        }
    }

    /// Rejects malformed cases and cases outside a selected suite's hypotheses.
    pub fn validate(&self) -> Result<()> {
        let suites = self.selected_suites();
        if suites.contains(&SuiteName::Beta3) && !self.slow {
            return Err(Error::InvalidDims {
                m: 0,
                n: 0,
                reason: "the beta3 suite is slow and needs --slow".into(),
            });
        }
        for &(m, n) in &self.cases {
            let dim = SuperDim::new(m, n)?;
            for s in &suites {
                s.admits(dim).map_err(|e| match e {
                    Error::InvalidDims { m, n, reason } => {
                        Error::InvalidDims { m, n, reason: format!("suite {s}: {reason}") }
                    }
                    other => other,
                })?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), status: Status::of(expected == actual), expected, actual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: SuiteName,
    pub status: Status,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub m: usize,
    pub n: usize,
    pub suites: Vec<SuiteReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: u32,
    pub cases: Vec<CaseReport>,
}

impl Default for ReportDocument {
    fn default() -> Self {
        ReportDocument { version: 1, cases: Vec::new() }
    }
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().flat_map(|c| &c.suites).all(|s| s.status == Status::Pass)
    }

    pub fn suite(&self, m: usize, n: usize, name: SuiteName) -> Option<&SuiteReport> {
        self.cases.iter().find(|c| c.m == m && c.n == n)?.suites.iter().find(|s| s.name == name)
    }
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn emit_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("report is plain data") + "\n",
        Format::Text => {
            let mut out = String::new();
            for c in &doc.cases {
                for s in &c.suites {
                    out += &format!("sl({}|{}) {:<13} {} ({} checks", c.m, c.n, s.name, s.status, s.checks.len());
                    if s.wall_time_ms > 0 {
                        out += &format!(", {} ms", s.wall_time_ms);
                    }
                    out += ")\n";
                    for k in &s.checks {
                        out += &format!("    {:<4} {}", k.status, k.name);
                        if k.status == Status::Fail {
                            out += &format!(": expected {}, got {}", k.expected, k.actual);
                        }
                        out += "\n";
                    }
                }
            }
            let verdict = if doc.all_pass() { "all checks pass" } else { "some checks FAIL" };
            out + verdict + "\n"
        }
    }
}

/// Runs the selected suites. Configuration problems and exceeded resource caps are errors;
/// everything else ends up as a check.
pub fn run_suite(cfg: &SuiteConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let suites = cfg.selected_suites();
    let tasks: Vec<(usize, usize, SuiteName)> =
        cfg.cases.iter().flat_map(|&(m, n)| suites.iter().map(move |&s| (m, n, s))).collect();
    let run = || tasks.par_iter().map(|&(m, n, s)| run_one(m, n, s, cfg)).collect::<Vec<Result<SuiteReport>>>();
    let results = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut results = results.into_iter();
    let mut doc = ReportDocument::default();
    for &(m, n) in &cfg.cases {
        let mut case = CaseReport { m, n, suites: Vec::new() };
        for _ in &suites {
            case.suites.push(results.next().expect("one result per task")?);
        }
        doc.cases.push(case);
    }
    Ok(doc)
}

fn run_one(m: usize, n: usize, name: SuiteName, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        SuiteName::Prelim => prelim(m, n),
        SuiteName::Decomposition => decomposition(m, n),
        SuiteName::Hwv => hwv(m, n),
        SuiteName::Joseph => joseph(m, n),
        SuiteName::Realization => realization(m, n),
        SuiteName::Beta3 => beta3(m, n, cfg.mem_cap_mb),
    };
    let checks = match checks {
        Ok(c) => c,
        Err(e @ Error::ResourceCap { .. }) => return Err(e),
        Err(e) => vec![Check::new("completed", "ok", e)],
    };
    let wall_time_ms = if cfg.timings { start.elapsed().as_millis() as u64 } else { 0 };
    let status = Status::of(checks.iter().all(|c| c.status == Status::Pass));
    Ok(SuiteReport { name, status, checks, wall_time_ms })
}

fn count_check(name: &str, failures: usize) -> Check {
    Check::new(name, "0 failures", format!("{failures} failures"))
}

fn random_element(alg: &Slmn, rng: &mut ChaCha8Rng) -> SuperMatrix {
    let mut x = SuperMatrix::zero(alg.dim);
    for _ in 0..3 {
        let a = rng.gen_range(0..alg.len());
        let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        x = &x + &alg.basis[a].scale(&qi(c));
    }
    x
}

fn seed(m: usize, n: usize, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(((m as u64) << 32) ^ ((n as u64) << 16) ^ salt)
}

fn prelim(m: usize, n: usize) -> Result<Vec<Check>> {
    let alg = Slmn::new(m, n)?;
    let d = alg.dim.diff();
    let mut checks = Vec::new();
    for k in 1..=6usize {
        let k_i = k as i64;
        checks.push(Check::new(
            format!("casimir_eigenvalue_lambda{k}"),
            2 * k_i * (k_i + d - 1),
            fmt_q(&casimir_eigenvalue(&lambda_k(k, m, n)?)?),
        ));
    }
    let top = alg.root_index(0, m + n - 1).expect("highest root") as u16;
    let single = |keys: &[Vec<u16>]| keys.iter().map(|k| (k.clone(), qi(1))).collect();
    checks.push(Check::new(
        "casimir_on_adjoint_hwv",
        2 * d,
        casimir_scalar(&alg, &single(&[vec![top]])).map_or("not an eigenvector".into(), |c| fmt_q(&c)),
    ));
    let e1m = alg.root_index(0, m - 1).expect("even highest root") as u16;
    checks.push(Check::new(
        "casimir_on_cartan_hwv",
        4 * (d + 1),
        casimir_scalar(&alg, &single(&[vec![top, e1m], vec![e1m, top]])).map_or("not an eigenvector".into(), |c| fmt_q(&c)),
    ));
    let trivial = casimir_apply(&alg, &phi(&SuperTensor::delta(alg.dim))?)?;
    checks.push(Check::new("casimir_on_trivial_line", "0", if trivial.is_zero() { "0" } else { "nonzero" }));

    let mut rng = seed(m, n, 1);
    let mut bad = 0;
    for _ in 0..20 {
        let (a, b) = (random_element(&alg, &mut rng), random_element(&alg, &mut rng));
        let ad = alg.ad_matrix(&a).mul(&alg.ad_matrix(&b));
        if killing(&a, &b) != alg.str_on_g(&ad) {
            bad += 1;
        }
    }
    checks.push(count_check("killing_is_str_ad_ad", bad));

    let rows = casimir_exclusions(m, n, 4)?;
    let asserted: Vec<_> = rows.iter().filter(|r| r.asserted).collect();
    checks.push(count_check(
        &format!("casimir_exclusions_k_le_4 ({} rows)", asserted.len()),
        asserted.iter().filter(|r| !r.distinct).count(),
    ));
    Ok(checks)
}

fn phi_properties(alg: &Slmn, k: &PhiConstants) -> Result<(usize, usize, usize)> {
    let t = alg.total();
    let (mut ident, mut str12, mut sym) = (0, 0, 0);
    for i in 0..t {
        for j in 0..t {
            let b = SuperMatrix::elementary(alg.dim, i, j).to_tensor();
            let p = phi_with(&b, k)?;
            if contract_str(&p, 1, 2)? != b {
                ident += 1;
            }
            if !contract_str(&p, 0, 1)?.is_zero() {
                str12 += 1;
            }
            if !is_g_sym(&p) {
                sym += 1;
            }
        }
    }
    Ok((ident, str12, sym))
}

fn decomposition(m: usize, n: usize) -> Result<Vec<Check>> {
    let alg = Slmn::new(m, n)?;
    let k = PhiConstants::for_dim(alg.dim)?;
    let mut checks = Vec::new();
    let res: Vec<String> = k.residuals(alg.dim).iter().map(fmt_q).collect();
    checks.push(Check::new("phi_constant_conditions", "0, 0, 0", res.join(", ")));
    let (ident, str12, sym) = phi_properties(&alg, &k)?;
    checks.push(count_check("phi_str23_is_identity", ident));
    checks.push(count_check("phi_str12_vanishes", str12));
    checks.push(count_check("phi_pair_supersymmetric", sym));

    let mut rng = seed(m, n, 2);
    let (mut sum, mut b_tr, mut c_tr, mut d_k) = (0, 0, 0, 0);
    for _ in 0..RANDOM_SYM_SAMPLES {
        let (x, y, z) = (random_element(&alg, &mut rng), random_element(&alg, &mut rng), random_element(&alg, &mut rng));
        let t = x.to_tensor().tensor(&y.to_tensor()).plus(&z.to_tensor().tensor(&x.to_tensor()));
        let a = symmetrize_pairs(&t)?;
        let parts = decompose_sym(&a)?;
        sum += usize::from(parts.sum() != a);
        b_tr += usize::from(!contract_str(&parts.b, 1, 2)?.is_zero());
        c_tr += usize::from(!contract_str(&parts.c, 1, 2)?.is_zero());
        d_k += usize::from(!kappa(&parts.d)?.is_zero());
    }
    checks.push(count_check("decomposition_sums_to_input", sum));
    checks.push(count_check("decomposition_str23_b_vanishes", b_tr));
    checks.push(count_check("decomposition_str23_c_vanishes", c_tr));
    checks.push(count_check("decomposition_kappa_d_vanishes", d_k));

    // negative control: any perturbed constant must break the conditions
    let bump = Q::new(1.into(), 7.into());
    for (name, which) in [("a", 0), ("c1", 1), ("c2", 2)] {
        let mut bad = k.clone();
        match which {
            0 => bad.a += &bump,
            1 => bad.c1 += &bump,
            _ => bad.c2 += &bump,
        }
        let conditions_broken = bad.residuals(alg.dim).iter().any(|r| !r.is_zero());
        let (i, s12, _) = phi_properties(&alg, &bad)?;
        let broken = conditions_broken && i + s12 > 0;
        checks.push(Check::new(
            format!("control_perturbed_{name}_breaks_phi"),
            "broken",
            if broken { "broken" } else { "intact" },
        ));
    }
    Ok(checks)
}

fn hwv(m: usize, n: usize) -> Result<Vec<Check>> {
    let r = verify_tensor_square(m, n)?;
    let mut checks = Vec::new();
    checks.push(Check::new("weight_spaces_cover", r.total_dim, r.weight_space_dim_sum));
    for e in &r.expected {
        checks.push(Check::new(
            format!("hwv {}", e.label),
            format!("sym {} anti {}", e.expected_symmetric, e.expected_antisymmetric),
            format!("sym {} anti {}", e.found_symmetric, e.found_antisymmetric),
        ));
    }
    let lines: usize = r.hwv.iter().map(|l| l.hwv_dim).sum();
    checks.push(Check::new("hwv_lines_total", 7, lines));
    let unexpected =
        r.hwv.iter().filter(|l| !r.expected.iter().any(|e| e.weight == l.weight)).count();
    checks.push(count_check("hwv_at_unexpected_weights", unexpected));
    for x in &r.excluded {
        match &x.coincides_with {
            None => checks.push(Check::new(format!("excluded {}", x.label), 0, x.found)),
            Some(other) => {
                let line = r.expected.iter().find(|e| &e.label == other).expect("coinciding line exists");
                checks.push(Check::new(
                    format!("excluded {} (coincides with {other})", x.label),
                    line.expected_symmetric + line.expected_antisymmetric,
                    x.found,
                ));
            }
        }
    }
    Ok(checks)
}

fn joseph(m: usize, n: usize) -> Result<Vec<Check>> {
    let alg = Slmn::new(m, n)?;
    let (_, rep) = derive_lambda_c(m, n)?;
    let mut checks = vec![
        Check::new("lambda_c", fmt_q(&lambda_c_closed_form(alg.dim)), &rep.lambda_c),
        Check::new("left_reduction", expected_left(alg.dim), &rep.left_scalar),
        Check::new("right_reduction", expected_right(alg.dim), &rep.right_scalar),
        Check::new("same_scalars_for_every_basis_t", format!("{} of {}", alg.len(), alg.len()), {
            format!("{} of {}", if rep.per_t_consistent { rep.basis_checked } else { 0 }, alg.len())
        }),
    ];
    let all: Vec<_> = alg.basis.par_iter().map(|t| s_checks(&s_tensor(t)?)).collect::<Result<_>>()?;
    let count = |f: fn(&crate::joseph::SChecks) -> bool| all.iter().filter(|c| !f(c)).count();
    checks.push(count_check("s_str12_vanishes", count(|c| c.str12)));
    checks.push(count_check("s_str34_vanishes", count(|c| c.str34)));
    checks.push(count_check("s_str56_vanishes", count(|c| c.str56)));
    checks.push(count_check("s_antisymmetric_in_first_two_factors", count(|c| c.antisymmetric_12)));
    checks.push(count_check("s_cartan_free_factors_12", count(|c| c.cartan_free_12)));
    checks.push(count_check("s_cartan_free_factors_23", count(|c| c.cartan_free_23)));
    let tau = tau_stability(&alg, alg.len() <= TAU_RANK_MAX_DIM)?;
    checks.push(count_check("tau_maps_generators_to_generators", tau.failures.len()));
    if let Some(r) = tau.ranks {
        checks.push(Check::new("tau_span_rank", r.generators, r.with_tau));
        checks.push(Check::new("cartan_complement_ranks", r.dim_g_squared, r.cartan + r.offcartan));
    }
    Ok(checks)
}

fn realization(m: usize, n: usize) -> Result<Vec<Check>> {
    let alg = Slmn::new(m, n)?;
    let rep = check_joseph_annihilated(m, n, None)?;
    let mut checks = vec![
        Check::new("mu", fmt_q(&Q::new((n as i64 - m as i64).into(), 2.into())), &rep.mu),
        Check::new("lambda_c", fmt_q(&lambda_c_closed_form(alg.dim)), &rep.lambda_c),
        Check::new("homomorphism_at_mu", true, rep.homomorphism),
        Check::new("cde_images", true, rep.cde_images),
        Check::new("quadratic_relation_all_pairs", true, rep.rela),
        Check::new("generators_annihilated", true, rep.generators),
    ];
    let pi0 = build_realization(&Q::zero(), m, n)?;
    checks.push(Check::new("homomorphism_at_mu_0", true, check_homomorphism(&pi0, &alg).pass));
    let pi = build_realization(&Q::new((n as i64 - m as i64).into(), 2.into()), m, n)?;
    checks.push(Check::new("casimir_image_central", true, casimir_image(&pi, &alg)?.commutes));
    let one = pi.scalar(qi(1));
    let x = WeylOp::x(one.var_parity().to_vec(), 0);
    let top = x.mul(&x).mul(&x);
    let all = polynomial_monomials(one.var_parity(), 3).len();
    checks.push(Check::new("cyclic_from_constant_deg3", all, cyclic_span_dim(&pi, &one, 3)));
    checks.push(Check::new("cyclic_from_cube_deg3", all, cyclic_span_dim(&pi, &top, 3)));
    let control = check_cde_images(m, n, &Q::zero())?;
    checks.push(Check::new("control_mu_0_cde_images", "fails", if control.is_some() { "fails" } else { "holds" }));
    Ok(checks)
}

fn beta3(m: usize, n: usize, mem_cap_mb: u64) -> Result<Vec<Check>> {
    let r = beta3_check(m, n, &Beta3Config { mem_cap_mb })?;
    let hw: Vec<String> = r.hwv.iter().map(|h| format!("{} x{}", h.weight.join(" "), h.count)).collect();
    Ok(vec![
        Check::new("rank_accounting", r.dim_total, r.dim_beta3 + r.dim_i3),
        Check::new("intersection_trivial", true, r.intersection_trivial),
        Check::new("single_hwv_line", format!("{} x1", r.expected_weight.join(" ")), hw.join("; ")),
        Check::new("modular_ranks_agree", true, r.modular_ranks_agree),
    ])
}
