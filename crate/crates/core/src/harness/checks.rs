//! Randomized property checks.
//!
//! Every check draws a fresh tuple per trial from the stream keyed by
//! `trial_seed(spec.seed, trial)` and reduces the trial to a signed violation:
//! `≤ 0` passes, `> 0` is the excess over the tolerance. A trial that errors
//! (for example a solver that fails to converge) counts as an infinite violation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::harness::gen::{
    block_parts, commuting_from, gaussian_matrix, join_blocks, random_orthogonal, spd_from,
    stream, trial_seed, tuple_from, Purpose,
};
use crate::harness::jensen::{
    complement, contraction_sides, pair_sides, sample_contraction, AuxiliaryMap, Shifted,
    JENSEN_SHIFT,
};
use crate::harness::spec::{GenSpec, Structure};
use crate::kernel::{
    congruence, inverse, min_eig_gap, power, sym_eigen, GeneralMatrix, SpdMatrix, SymMatrix,
};
use crate::means::{
    arithmetic_mean, harmonic_mean, karcher_mean, karcher_residual, mean, perspective,
    weighted_geometric_2, MeanKind, SolverConfig, SpdTuple,
};

/// Smallest `|det C|` accepted for the random congruences.
pub const MIN_CONGRUENCE_DET: f64 = 1e-6;
/// Largest condition number `σmax/σmin` accepted for the random congruences.
pub const MAX_CONGRUENCE_COND: f64 = 100.0;

/// Outcome of one check over a number of trials.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub trials: usize,
    pub failures: usize,
    /// Largest signed violation over all trials; `≤ 0` means every trial passed.
    pub worst_violation: f64,
    /// Trial seed of the worst trial, present iff some trial failed.
    pub witness_seed: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} trials={} failures={} worst_violation={:e} witness_seed=",
            self.check_name, self.trials, self.failures, self.worst_violation
        )?;
        match self.witness_seed {
            Some(seed) => write!(f, "{seed}"),
            None => f.write_str("-"),
        }
    }
}

/// The named property checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Commuting,
    TwoVariable,
    Homogeneity,
    JointHomogeneity,
    Concavity,
    Updating,
    Perspective,
    Monotone,
    Congruence,
    Unitary,
    SelfDual,
    Determinant,
    Hga,
    BlockRegularity,
    Jensen,
    JensenPair,
    KarcherResidual,
}

impl Check {
    pub const ALL: [Check; 17] = [
        Check::Commuting,
        Check::TwoVariable,
        Check::Homogeneity,
        Check::JointHomogeneity,
        Check::Concavity,
        Check::Updating,
        Check::Perspective,
        Check::Monotone,
        Check::Congruence,
        Check::Unitary,
        Check::SelfDual,
        Check::Determinant,
        Check::Hga,
        Check::BlockRegularity,
        Check::Jensen,
        Check::JensenPair,
        Check::KarcherResidual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Commuting => "commuting",
            Check::TwoVariable => "two_variable",
            Check::Homogeneity => "homogeneity",
            Check::JointHomogeneity => "joint_homogeneity",
            Check::Concavity => "concavity",
            Check::Updating => "updating",
            Check::Perspective => "perspective",
            Check::Monotone => "monotone",
            Check::Congruence => "congruence",
            Check::Unitary => "unitary",
            Check::SelfDual => "self_dual",
            Check::Determinant => "determinant",
            Check::Hga => "hga",
            Check::BlockRegularity => "block_regularity",
            Check::Jensen => "jensen",
            Check::JensenPair => "jensen_pair",
            Check::KarcherResidual => "karcher_residual",
        }
    }

    pub fn applies_to(self, kind: MeanKind) -> bool {
        match self {
            Check::Commuting
            | Check::Homogeneity
            | Check::Concavity
            | Check::Monotone
            | Check::Congruence
            | Check::Unitary
            | Check::SelfDual
            | Check::Hga
            | Check::BlockRegularity => true,
            Check::TwoVariable
            | Check::JointHomogeneity
            | Check::Determinant
            | Check::Jensen
            | Check::JensenPair => kind.is_geometric(),
            Check::Updating | Check::Perspective => {
                matches!(kind, MeanKind::Inductive | MeanKind::Variant)
            }
            Check::KarcherResidual => kind == MeanKind::Karcher,
        }
    }

    /// Runs the check for `kind`; errors only on invalid input or an inapplicable kind.
    pub fn run(self, kind: MeanKind, spec: &GenSpec, trials: usize, tol: f64) -> Result<CheckReport> {
        spec.validate()?;
        if !self.applies_to(kind) {
            return Err(Error::Inapplicable {
                check: self.name().into(),
                kind: kind.to_string(),
            });
        }
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be finite and non-negative, got {tol}"
            )));
        }
        if self == Check::BlockRegularity && spec.dim < 2 {
            return Err(Error::InvalidArgument(
                "block regularity needs dim >= 2".into(),
            ));
        }
        let ctx = Ctx {
            kind,
            spec: *spec,
            tol,
            solver: SolverConfig::default(),
        };
        let name = format!("{}[{}]", self.name(), kind);
        Ok(run_trials(name, spec.seed, trials, |trial, seed| {
            match self {
                Check::Commuting => ctx.commuting(seed),
                Check::TwoVariable => ctx.two_variable(seed),
                Check::Homogeneity => ctx.homogeneity(seed),
                Check::JointHomogeneity => ctx.joint_homogeneity(seed),
                Check::Concavity => ctx.concavity(seed),
                Check::Updating => ctx.updating(seed),
                Check::Perspective => ctx.perspective(seed),
                Check::Monotone => ctx.monotone(seed),
                Check::Congruence => ctx.congruence(seed, false),
                Check::Unitary => ctx.congruence(seed, true),
                Check::SelfDual => ctx.self_dual(seed),
                Check::Determinant => ctx.determinant(seed),
                Check::Hga => ctx.hga(seed),
                Check::BlockRegularity => {
                    let split = 1 + trial % (spec.dim - 1);
                    ctx.block_regularity(seed, split)
                }
                Check::Jensen => ctx.jensen(seed),
                Check::JensenPair => ctx.jensen_pair(seed),
                Check::KarcherResidual => ctx.karcher_residual(seed),
            }
        }))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

fn run_trials<F>(check_name: String, seed: u64, trials: usize, trial: F) -> CheckReport
where
    F: Fn(usize, u64) -> Result<f64>,
{
    let mut failures = 0;
    let mut worst = if trials == 0 { 0.0 } else { f64::NEG_INFINITY };
    let mut worst_seed = None;
    for t in 0..trials {
        let s = trial_seed(seed, t as u64);
        let v = match trial(t, s) {
            Ok(v) if !v.is_nan() => v,
            _ => f64::INFINITY,
        };
        if v > 0.0 {
            failures += 1;
        }
        if v > worst {
            worst = v;
            worst_seed = Some(s);
        }
    }
    CheckReport {
        check_name,
        trials,
        failures,
        worst_violation: worst,
        witness_seed: if failures > 0 { worst_seed } else { None },
    }
}

/// Violation of `lower ≤ upper` with eigenvalue tolerance `tol · (1 + max‖·‖_max)`.
pub fn loewner_violation(lower: &SymMatrix, upper: &SymMatrix, tol: f64) -> Result<f64> {
    let scale = 1.0 + lower.max_abs().max(upper.max_abs());
    Ok(-min_eig_gap(lower, upper)? - tol * scale)
}

/// Violation of `actual == expected` in relative max-norm.
pub fn equality_violation(actual: &SymMatrix, expected: &SymMatrix, tol: f64) -> Result<f64> {
    let rel = actual.max_abs_diff(expected)? / expected.max_abs().max(f64::MIN_POSITIVE);
    Ok(rel - tol)
}

fn scale_items(tuple: &SpdTuple, factors: &[f64]) -> Result<SpdTuple> {
    SpdTuple::new(
        tuple
            .items()
            .iter()
            .zip(factors)
            .map(|(a, &t)| a.scale(t))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Gaussian `C`, redrawn until `|det C| ≥ MIN_CONGRUENCE_DET` and
/// `cond(C) ≤ MAX_CONGRUENCE_COND`. The condition cap keeps `CᵀAC` within
/// reach of double precision: `cond(CᵀAC)` can reach `cond(C)²·cond(A)`.
fn invertible_gaussian<R: Rng>(rng: &mut R, dim: usize) -> Result<GeneralMatrix> {
    loop {
        let c = gaussian_matrix(rng, dim);
        if c.det().abs() < MIN_CONGRUENCE_DET {
            continue;
        }
        let e = sym_eigen(&c.gram())?;
        if e.max_value() <= MAX_CONGRUENCE_COND.powi(2) * e.min_value() {
            return Ok(c);
        }
    }
}

struct Ctx {
    kind: MeanKind,
    spec: GenSpec,
    tol: f64,
    solver: SolverConfig,
}

impl Ctx {
    fn spd_mean(&self, tuple: &SpdTuple) -> Result<SpdMatrix> {
        mean(self.kind, tuple, &self.solver)
    }

    fn mean(&self, tuple: &SpdTuple) -> Result<SymMatrix> {
        self.spd_mean(tuple).map(SpdMatrix::into_sym)
    }

    fn tuple(&self, seed: u64) -> Result<SpdTuple> {
        tuple_from(&mut stream(seed, Purpose::Tuple), &self.spec)
    }

    fn second_tuple(&self, seed: u64) -> Result<SpdTuple> {
        tuple_from(&mut stream(seed, Purpose::SecondTuple), &self.spec)
    }

    fn commuting(&self, seed: u64) -> Result<f64> {
        let s = &self.spec;
        let c = commuting_from(&mut stream(seed, Purpose::Tuple), s.dim, s.k, s.cond_bound)?;
        let expected = c.map_coordinates(|values| self.kind.scalar(values))?;
        equality_violation(&self.mean(&c.tuple)?, &expected, self.tol)
    }

    fn two_variable(&self, seed: u64) -> Result<f64> {
        let spec = GenSpec { k: 2, ..self.spec };
        let t = tuple_from(&mut stream(seed, Purpose::Tuple), &spec)?;
        let closed = weighted_geometric_2(&t.items()[0], &t.items()[1], 0.5)?;
        equality_violation(&self.mean(&t)?, &closed, self.tol)
    }

    fn homogeneity(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let base = self.mean(&t)?;
        let mut worst = f64::NEG_INFINITY;
        for factor in [0.5, 3.0] {
            let scaled = t.try_map(|a| a.scale(factor))?;
            let v = equality_violation(&self.mean(&scaled)?, &base.scale(factor), self.tol)?;
            worst = worst.max(v);
        }
        Ok(worst)
    }

    fn joint_homogeneity(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let mut rng = stream(seed, Purpose::Scalars);
        let (lo, hi) = (0.5f64.ln(), 3f64.ln());
        let factors: Vec<f64> = (0..t.len()).map(|_| rng.gen_range(lo..=hi).exp()).collect();
        let geometric = (factors.iter().map(|f| f.ln()).sum::<f64>() / t.len() as f64).exp();
        let lhs = self.mean(&scale_items(&t, &factors)?)?;
        equality_violation(&lhs, &self.mean(&t)?.scale(geometric), self.tol)
    }

    fn concavity(&self, seed: u64) -> Result<f64> {
        let t1 = self.tuple(seed)?;
        let t2 = self.second_tuple(seed)?;
        let mut rng = stream(seed, Purpose::Scalars);
        let lambda: f64 = loop {
            let l = rng.gen::<f64>();
            if l > 0.0 {
                break l;
            }
        };
        let mixed = SpdTuple::new(
            t1.items()
                .iter()
                .zip(t2.items())
                .map(|(a, b)| SpdMatrix::new(a.as_sym().scale(lambda).add(&b.as_sym().scale(1.0 - lambda))?))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let lower = self
            .mean(&t1)?
            .scale(lambda)
            .add(&self.mean(&t2)?.scale(1.0 - lambda))?;
        loewner_violation(&lower, &self.mean(&mixed)?, self.tol)
    }

    fn updating(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let k = t.len() as f64;
        let exponent = k / (k + 1.0);
        let extended = self.mean(&t.push(SpdMatrix::identity(t.dim()))?)?;
        let expected = match self.kind {
            MeanKind::Inductive => power(&self.spd_mean(&t)?, exponent)?.into_sym(),
            _ => self.mean(&t.try_map(|a| power(a, exponent))?)?,
        };
        equality_violation(&extended, &expected, self.tol)
    }

    fn perspective(&self, seed: u64) -> Result<f64> {
        let spec = GenSpec {
            k: self.spec.k.max(2),
            ..self.spec
        };
        let t = tuple_from(&mut stream(seed, Purpose::Tuple), &spec)?;
        let (leading, last) = t.split_last().expect("k >= 2");
        let aux = AuxiliaryMap::new(self.kind, leading.len())?;
        let via_perspective = perspective(&aux, &leading, last)?;
        equality_violation(&self.mean(&t)?, &via_perspective, self.tol)
    }

    fn monotone(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let mut rng = stream(seed, Purpose::Perturbation);
        let bigger = t.try_map(|a| {
            let p = spd_from(&mut rng, a.dim(), self.spec.cond_bound)?;
            SpdMatrix::new(a.add(&p.as_sym().scale(0.1 * a.max_abs()))?)
        })?;
        loewner_violation(&self.mean(&t)?, &self.mean(&bigger)?, self.tol)
    }

    fn congruence(&self, seed: u64, orthogonal: bool) -> Result<f64> {
        let t = self.tuple(seed)?;
        let mut rng = stream(seed, Purpose::Transform);
        let c = if orthogonal {
            random_orthogonal(&mut rng, t.dim())
        } else {
            invertible_gaussian(&mut rng, t.dim())?
        };
        let transformed = t.try_map(|a| SpdMatrix::new(congruence(&c, a)?))?;
        let expected = congruence(&c, &self.mean(&t)?)?;
        equality_violation(&self.mean(&transformed)?, &expected, self.tol)
    }

    fn self_dual(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let inverses = t.try_map(inverse)?;
        let (lhs, rhs) = match self.kind {
            MeanKind::Arithmetic => (arithmetic_mean(&inverses)?, inverse(&harmonic_mean(&t)?)?),
            MeanKind::Harmonic => (harmonic_mean(&inverses)?, inverse(&arithmetic_mean(&t)?)?),
            _ => (self.spd_mean(&inverses)?, inverse(&self.spd_mean(&t)?)?),
        };
        equality_violation(&lhs, &rhs, self.tol)
    }

    fn determinant(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let log_det_mean = self.spd_mean(&t)?.log_det()?;
        let mut sum = 0.0;
        for a in t.items() {
            sum += a.log_det()?;
        }
        let expected = sum / t.len() as f64;
        // relative error of det(mean) against (∏ det Aᵢ)^{1/k}
        Ok((log_det_mean - expected).exp_m1().abs() - self.tol)
    }

    fn hga(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let g = self.mean(&t)?;
        let lower = loewner_violation(harmonic_mean(&t)?.as_sym(), &g, self.tol)?;
        let upper = loewner_violation(&g, arithmetic_mean(&t)?.as_sym(), self.tol)?;
        Ok(lower.max(upper))
    }

    fn block_regularity(&self, seed: u64, split: usize) -> Result<f64> {
        let s = &self.spec;
        let (upper, lower) = block_parts(
            &mut stream(seed, Purpose::Tuple),
            s.dim,
            s.k,
            split,
            s.cond_bound,
        )?;
        let joined = join_blocks(&upper, &lower)?;
        let expected = SymMatrix::block_diag(&self.mean(&upper)?, &self.mean(&lower)?);
        equality_violation(&self.mean(&joined)?, &expected, self.tol)
    }

    fn jensen(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let aux = AuxiliaryMap::new(self.kind, t.len())?;
        let shifted = Shifted::new(&aux, t.dim(), JENSEN_SHIFT)?;
        let c = sample_contraction(&mut stream(seed, Purpose::Transform), t.dim())?;
        let (lower, upper) = contraction_sides(&shifted, &c, &t)?;
        loewner_violation(&lower, &upper, self.tol)
    }

    fn jensen_pair(&self, seed: u64) -> Result<f64> {
        let t1 = self.tuple(seed)?;
        let t2 = self.second_tuple(seed)?;
        let aux = AuxiliaryMap::new(self.kind, t1.len())?;
        let shifted = Shifted::new(&aux, t1.dim(), JENSEN_SHIFT)?;
        let x = sample_contraction(&mut stream(seed, Purpose::Transform), t1.dim())?;
        let y = complement(&x)?.to_general();
        let (lower, upper) = pair_sides(&shifted, &x, &y, &t1, &t2)?;
        loewner_violation(&lower, &upper, self.tol)
    }

    fn karcher_residual(&self, seed: u64) -> Result<f64> {
        let t = self.tuple(seed)?;
        let x = karcher_mean(&t, &self.solver)?;
        Ok(karcher_residual(&x, &t)?.frobenius() - self.solver.residual_tol)
    }
}

/// Block regularity on a fixed `split ⊕ (dim − split)` structure.
pub fn check_block_regularity_split(
    kind: MeanKind,
    spec: &GenSpec,
    split: usize,
    trials: usize,
    tol: f64,
) -> Result<CheckReport> {
    spec.validate()?;
    if split == 0 || split >= spec.dim {
        return Err(Error::InvalidArgument(format!(
            "block split {split} must lie in 1..{}",
            spec.dim
        )));
    }
    let ctx = Ctx {
        kind,
        spec: GenSpec {
            structure: Structure::Block,
            ..*spec
        },
        tol,
        solver: SolverConfig::default(),
    };
    let name = format!(
        "block_regularity_{}+{}[{}]",
        split,
        spec.dim - split,
        kind
    );
    Ok(run_trials(name, spec.seed, trials, |_, seed| {
        ctx.block_regularity(seed, split)
    }))
}

/// Runs every named check against every applicable kind.
///
/// `names` may contain `"all"`; kinds a check does not apply to are skipped.
pub fn run_suite(
    names: &[&str],
    kinds: &[MeanKind],
    spec: &GenSpec,
    trials: usize,
    tol: f64,
) -> Result<Vec<CheckReport>> {
    let mut checks: Vec<Check> = Vec::new();
    for &name in names {
        if name == "all" {
            checks.extend(Check::ALL);
        } else {
            checks.push(name.parse()?);
        }
    }
    let mut seen = std::collections::HashSet::new();
    checks.retain(|c| seen.insert(*c));
    let mut reports = Vec::new();
    for check in checks {
        for &kind in kinds {
            if !check.applies_to(kind) || (check == Check::BlockRegularity && spec.dim < 2) {
                continue;
            }
            reports.push(check.run(kind, spec, trials, tol)?);
        }
    }
    Ok(reports)
}
