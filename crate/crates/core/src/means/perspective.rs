use crate::error::{Error, Result};
use crate::kernel::{congruence, sqrt_pair, SpdMatrix, SymMatrix};
use crate::means::tuple::SpdTuple;

/// A map of `arity` SPD arguments into symmetric matrices.
///
/// Implementations are expected to be regular (unitarily invariant and
/// compatible with block-diagonal decompositions); the harness checks this
/// empirically rather than the type system.
pub trait RegularMap: Sync {
    fn arity(&self) -> usize;

    fn eval(&self, args: &SpdTuple) -> Result<SymMatrix>;
}

/// A [`RegularMap`] backed by a closure.
pub struct FnMap<F> {
    arity: usize,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&SpdTuple) -> Result<SymMatrix> + Sync,
{
    pub fn new(arity: usize, f: F) -> Self {
        Self { arity, f }
    }
}

impl<F> RegularMap for FnMap<F>
where
    F: Fn(&SpdTuple) -> Result<SymMatrix> + Sync,
{
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
        (self.f)(args)
    }
}

/// `C A C` for symmetric `C`, certified positive definite.
pub(crate) fn sandwich(c: &SymMatrix, a: &SymMatrix) -> Result<SpdMatrix> {
    SpdMatrix::new(congruence(&c.to_general(), a)?)
}

/// The perspective `B^{1/2} F(B^{-1/2} A₁ B^{-1/2}, …, B^{-1/2} A_k B^{-1/2}) B^{1/2}`.
pub fn perspective(map: &dyn RegularMap, args: &SpdTuple, b: &SpdMatrix) -> Result<SymMatrix> {
    if map.arity() != args.len() {
        return Err(Error::Arity {
            expected: map.arity(),
            got: args.len(),
        });
    }
    if b.dim() != args.dim() {
        return Err(Error::Shape {
            expected: args.dim(),
            got: b.dim(),
        });
    }
    let (root, inv_root) = sqrt_pair(b)?;
    let reduced = args.try_map(|a| sandwich(&inv_root, a))?;
    let inner = map.eval(&reduced)?;
    congruence(&root.to_general(), &inner)
}
