use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::scalar::ScalarRing;
use crate::error::{Error, Result};

/// The coefficient module. For type B the first standard generator acts by
/// `-t` and every other generator by 1; the quotients specialize `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Module {
    Trivial,
    Laurent,
    Mod1PlusT,
    Mod1MinusT,
    Mod1MinusT2,
}

impl Module {
    pub const ALL: [Module; 5] =
        [Module::Trivial, Module::Laurent, Module::Mod1PlusT, Module::Mod1MinusT, Module::Mod1MinusT2];

    /// Rank of the module over the base ring (`None` for the Laurent ring).
    pub fn rank(self) -> Option<usize> {
        match self {
            Module::Laurent => None,
            Module::Mod1MinusT2 => Some(2),
            _ => Some(1),
        }
    }

    /// Rank of the chain modules per cell in the built complex.
    pub fn cell_multiplicity(self) -> usize {
        self.rank().unwrap_or(1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Module::Trivial => "trivial",
            Module::Laurent => "laurent",
            Module::Mod1PlusT => "mod1+t",
            Module::Mod1MinusT => "mod1-t",
            Module::Mod1MinusT2 => "mod1-t2",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Module::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown coefficient module '{s}' (expected trivial, laurent, mod1+t, mod1-t, mod1-t2)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientSpec {
    pub base: ScalarRing,
    pub module: Module,
}

impl CoefficientSpec {
    pub fn new(base: ScalarRing, module: Module) -> Result<Self> {
        match base {
            ScalarRing::Integers | ScalarRing::Rationals | ScalarRing::PrimeField(_) => base.validate()?,
            _ => return Err(Error::UnsupportedRing(format!("base ring must be Z, Q or F_p, got {base}"))),
        }
        Ok(CoefficientSpec { base, module })
    }

    pub fn trivial(base: ScalarRing) -> Self {
        CoefficientSpec { base, module: Module::Trivial }
    }

    pub fn integral(module: Module) -> Self {
        CoefficientSpec { base: ScalarRing::Integers, module }
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.module, self.base)
    }
}
