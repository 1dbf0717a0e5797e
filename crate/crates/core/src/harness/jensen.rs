//! Auxiliary maps of the geometric means and Jensen-type contraction tests.

use rand::Rng;

use crate::error::{Error, Result};
use crate::harness::gen::gaussian_matrix;
use crate::kernel::{congruence, power, sqrt, sym_eigen, GeneralMatrix, SpdMatrix, SymMatrix};
use crate::means::{inductive_mean, karcher_mean, variant_mean, MeanKind, RegularMap, SolverConfig, SpdTuple};

/// Top singular value of the sampled contractions.
pub const CONTRACTION_NORM: f64 = 0.9;
/// Shift `ε` of `F_ε(A) = F(A + ε) − F(ε)`, which keeps every argument strictly positive.
pub const JENSEN_SHIFT: f64 = 1e-3;

/// The auxiliary map `F_k` whose perspective defines the `(k+1)`-variable mean.
///
/// - inductive: `F_k(A) = G_k(A)^{k/(k+1)}`
/// - variant: `F_k(A) = H_k(A₁^{k/(k+1)}, …, A_k^{k/(k+1)})`
/// - karcher: `F_k(A) = Λ_{k+1}(A₁, …, A_k, 1)`
#[derive(Debug, Clone)]
pub struct AuxiliaryMap {
    kind: MeanKind,
    arity: usize,
    solver: SolverConfig,
}

impl AuxiliaryMap {
    pub fn new(kind: MeanKind, arity: usize) -> Result<Self> {
        if !kind.is_geometric() {
            return Err(Error::Inapplicable {
                check: "auxiliary map".into(),
                kind: kind.to_string(),
            });
        }
        if arity == 0 {
            return Err(Error::InvalidArgument("auxiliary map arity must be positive".into()));
        }
        Ok(Self {
            kind,
            arity,
            solver: SolverConfig::default(),
        })
    }

    pub fn kind(&self) -> MeanKind {
        self.kind
    }

    fn exponent(&self) -> f64 {
        let k = self.arity as f64;
        k / (k + 1.0)
    }
}

impl RegularMap for AuxiliaryMap {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, args: &SpdTuple) -> Result<SymMatrix> {
        if args.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: args.len(),
            });
        }
        let p = self.exponent();
        let value = match self.kind {
            MeanKind::Inductive => power(&inductive_mean(args)?, p)?,
            MeanKind::Variant => variant_mean(&args.try_map(|a| power(a, p))?)?,
            MeanKind::Karcher => {
                karcher_mean(&args.push(SpdMatrix::identity(args.dim()))?, &self.solver)?
            }
            MeanKind::Arithmetic | MeanKind::Harmonic => unreachable!("rejected in new"),
        };
        Ok(value.into_sym())
    }
}

/// Gaussian matrix rescaled to top singular value [`CONTRACTION_NORM`].
pub(crate) fn sample_contraction<R: Rng>(rng: &mut R, dim: usize) -> Result<GeneralMatrix> {
    loop {
        let g = gaussian_matrix(rng, dim);
        let top = sym_eigen(&g.gram())?.max_value().sqrt();
        if top > 1e-8 {
            return Ok(g.scale(CONTRACTION_NORM / top));
        }
    }
}

/// `(I − CᵀC)^{1/2}`, the partner `Y` of a contraction `X = C` with `XᵀX + YᵀY = I`.
pub(crate) fn complement(c: &GeneralMatrix) -> Result<SpdMatrix> {
    let dim = c.dim();
    let defect = SpdMatrix::new(SymMatrix::identity(dim).sub(&c.gram())?)?;
    sqrt(&defect)
}

/// `F_ε(A) = F(A + ε) − F(ε, …, ε)`.
pub(crate) struct Shifted<'a> {
    map: &'a dyn RegularMap,
    at_shift: SymMatrix,
    shift: f64,
}

impl<'a> Shifted<'a> {
    pub(crate) fn new(map: &'a dyn RegularMap, dim: usize, shift: f64) -> Result<Self> {
        let eps = SpdMatrix::identity(dim).scale(shift)?;
        let at_shift = map.eval(&SpdTuple::new(vec![eps; map.arity()])?)?;
        Ok(Self {
            map,
            at_shift,
            shift,
        })
    }

    /// Evaluates at `(A₁, …, A_k)` given as symmetric positive semidefinite matrices.
    pub(crate) fn eval(&self, args: &[SymMatrix]) -> Result<SymMatrix> {
        let dim = self.at_shift.dim();
        let eps = SymMatrix::scaled_identity(dim, self.shift);
        let shifted = args
            .iter()
            .map(|a| SpdMatrix::new(a.add(&eps)?))
            .collect::<Result<Vec<_>>>()?;
        self.map.eval(&SpdTuple::new(shifted)?)?.sub(&self.at_shift)
    }
}

/// Concave Jensen inequality for a contraction: returns `(CᵀF_ε(A)C, F_ε(CᵀAC))`,
/// which should satisfy `lower ≤ upper`.
pub(crate) fn contraction_sides(
    shifted: &Shifted<'_>,
    c: &GeneralMatrix,
    tuple: &SpdTuple,
) -> Result<(SymMatrix, SymMatrix)> {
    let args: Vec<SymMatrix> = tuple.items().iter().map(|a| a.as_sym().clone()).collect();
    let transformed = args
        .iter()
        .map(|a| congruence(c, a))
        .collect::<Result<Vec<_>>>()?;
    let lower = congruence(c, &shifted.eval(&args)?)?;
    let upper = shifted.eval(&transformed)?;
    Ok((lower, upper))
}

/// Two-point form with `XᵀX + YᵀY = I`: returns
/// `(XᵀF_ε(A)X + YᵀF_ε(B)Y, F_ε(XᵀAᵢX + YᵀBᵢY))`.
pub(crate) fn pair_sides(
    shifted: &Shifted<'_>,
    x: &GeneralMatrix,
    y: &GeneralMatrix,
    first: &SpdTuple,
    second: &SpdTuple,
) -> Result<(SymMatrix, SymMatrix)> {
    let a: Vec<SymMatrix> = first.items().iter().map(|m| m.as_sym().clone()).collect();
    let b: Vec<SymMatrix> = second.items().iter().map(|m| m.as_sym().clone()).collect();
    let mixed = a
        .iter()
        .zip(&b)
        .map(|(ai, bi)| congruence(x, ai)?.add(&congruence(y, bi)?))
        .collect::<Result<Vec<_>>>()?;
    let lower = congruence(x, &shifted.eval(&a)?)?.add(&congruence(y, &shifted.eval(&b)?)?)?;
    let upper = shifted.eval(&mixed)?;
    Ok((lower, upper))
}
