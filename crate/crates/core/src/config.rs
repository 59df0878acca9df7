use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits shared by all brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order for exhaustive generating-set searches.
    pub brute_force: usize,
    /// Largest order of a Cayley table built by products and extensions.
    pub table: usize,
    /// Largest group order accepted by the bar-resolution multiplier.
    pub homology: usize,
    /// Row limit for coset enumeration.
    pub max_cosets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute_force: 512,
            table: 4096,
            homology: 16,
            max_cosets: 1_000_000,
        }
    }
}

impl Caps {
    pub fn check(&self, what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.brute_force == 0 || self.table == 0 || self.homology == 0 || self.max_cosets == 0 {
            return Err(Error::Domain("caps must be positive".into()));
        }
        Ok(())
    }
}
