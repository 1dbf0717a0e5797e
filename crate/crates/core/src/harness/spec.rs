use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Shape of the tuples drawn by the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Structure {
    /// Independent draws.
    #[default]
    Generic,
    /// Diagonal matrices conjugated by one shared orthogonal matrix.
    Commuting,
    /// Block-diagonal `X ⊕ Y` items.
    Block,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::Generic => "generic",
            Structure::Commuting => "commuting",
            Structure::Block => "block",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Structure::Generic),
            "commuting" => Ok(Structure::Commuting),
            "block" => Ok(Structure::Block),
            other => Err(Error::InvalidArgument(format!("unknown structure `{other}`"))),
        }
    }
}

pub const MAX_DIM: usize = 64;
pub const MAX_COND: f64 = 1e6;

/// Parameters of a random tuple draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub dim: usize,
    pub k: usize,
    pub seed: u64,
    /// Upper bound on the condition number of each drawn matrix.
    pub cond_bound: f64,
    pub structure: Structure,
}

impl GenSpec {
    /// Generic structure with condition bound 100.
    pub fn new(dim: usize, k: usize, seed: u64) -> Self {
        Self {
            dim,
            k,
            seed,
            cond_bound: 100.0,
            structure: Structure::Generic,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dim must lie in 1..={MAX_DIM}, got {}",
                self.dim
            )));
        }
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if !(1.0..=MAX_COND).contains(&self.cond_bound) {
            return Err(Error::InvalidArgument(format!(
                "cond_bound must lie in [1, {MAX_COND:e}], got {}",
                self.cond_bound
            )));
        }
        if self.structure == Structure::Block && self.dim < 2 {
            return Err(Error::InvalidArgument(
                "block structure needs dim >= 2".into(),
            ));
        }
        Ok(())
    }
}
