use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::SpdMatrix;

/// An ordered tuple `(A₁, …, A_k)` of SPD matrices of a common dimension.
///
/// Order is significant: the inductive and variant means are not symmetric
/// in their arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdTuple {
    dim: usize,
    items: Vec<SpdMatrix>,
}

impl SpdTuple {
    pub fn new(items: Vec<SpdMatrix>) -> Result<Self> {
        let dim = items.first().ok_or(Error::EmptyTuple)?.dim();
        for (index, item) in items.iter().enumerate() {
            if item.dim() != dim {
                return Err(Error::TupleDim {
                    index,
                    expected: dim,
                    got: item.dim(),
                });
            }
        }
        Ok(Self { dim, items })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    /// Always false: a tuple holds at least one matrix.
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[SpdMatrix] {
        &self.items
    }

    pub fn into_items(self) -> Vec<SpdMatrix> {
        self.items
    }

    pub fn last(&self) -> &SpdMatrix {
        &self.items[self.items.len() - 1]
    }

    /// Applies `f` to every item, preserving order.
    pub fn try_map<F>(&self, f: F) -> Result<SpdTuple>
    where
        F: FnMut(&SpdMatrix) -> Result<SpdMatrix>,
    {
        SpdTuple::new(self.items.iter().map(f).collect::<Result<Vec<_>>>()?)
    }

    /// The tuple with `extra` appended.
    pub fn push(&self, extra: SpdMatrix) -> Result<SpdTuple> {
        let mut items = self.items.clone();
        items.push(extra);
        SpdTuple::new(items)
    }

    /// Splits `(A₁, …, A_k)` into `(A₁, …, A_{k-1})` and `A_k`; `None` for `k = 1`.
    pub fn split_last(&self) -> Option<(SpdTuple, &SpdMatrix)> {
        if self.items.len() < 2 {
            return None;
        }
        let (last, leading) = self.items.split_last()?;
        Some((
            SpdTuple {
                dim: self.dim,
                items: leading.to_vec(),
            },
            last,
        ))
    }
}

/// The means computed by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanKind {
    Inductive,
    Variant,
    Karcher,
    Arithmetic,
    Harmonic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 5] = [
        MeanKind::Inductive,
        MeanKind::Variant,
        MeanKind::Karcher,
        MeanKind::Arithmetic,
        MeanKind::Harmonic,
    ];

    pub const GEOMETRIC: [MeanKind; 3] = [MeanKind::Inductive, MeanKind::Variant, MeanKind::Karcher];

    pub fn is_geometric(self) -> bool {
        matches!(self, MeanKind::Inductive | MeanKind::Variant | MeanKind::Karcher)
    }

    pub fn name(self) -> &'static str {
        match self {
            MeanKind::Inductive => "inductive",
            MeanKind::Variant => "variant",
            MeanKind::Karcher => "karcher",
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Harmonic => "harmonic",
        }
    }

    /// The scalar version of the mean, used as the commuting-case oracle.
    pub fn scalar(self, values: &[f64]) -> f64 {
        let k = values.len() as f64;
        match self {
            MeanKind::Inductive | MeanKind::Variant | MeanKind::Karcher => {
                (values.iter().map(|v| v.ln()).sum::<f64>() / k).exp()
            }
            MeanKind::Arithmetic => values.iter().sum::<f64>() / k,
            MeanKind::Harmonic => k / values.iter().map(|v| 1.0 / v).sum::<f64>(),
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mean kind `{s}`")))
    }
}

/// Starting point of the Karcher iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitPolicy {
    #[default]
    Arithmetic,
    Inductive,
}

impl InitPolicy {
    pub fn name(self) -> &'static str {
        match self {
            InitPolicy::Arithmetic => "arithmetic",
            InitPolicy::Inductive => "inductive",
        }
    }
}

impl fmt::Display for InitPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" => Ok(InitPolicy::Arithmetic),
            "inductive" => Ok(InitPolicy::Inductive),
            other => Err(Error::InvalidArgument(format!("unknown init policy `{other}`"))),
        }
    }
}

/// Settings of the Karcher fixed-point solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute bound on the Frobenius norm of the residual `Σ log(X^{-1/2} Aᵢ X^{-1/2})`.
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Initial step in `(0, 1]`; halved while the residual grows.
    pub step: f64,
    pub init: InitPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            max_iter: 500,
            step: 1.0,
            init: InitPolicy::Arithmetic,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol >= 1e-14) || !self.residual_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "residual tolerance must be finite and at least 1e-14, got {}",
                self.residual_tol
            )));
        }
        if self.max_iter == 0 || self.max_iter > 10_000 {
            return Err(Error::InvalidArgument(format!(
                "max_iter must lie in 1..=10000, got {}",
                self.max_iter
            )));
        }
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "step must lie in (0, 1], got {}",
                self.step
            )));
        }
        Ok(())
    }
}
