//! Size guards for the exponential-time and memory-hungry routines.
//!
//! Defaults can be raised (never lowered) process-wide through the
//! `XBOUND_MAX_N` environment variable, which is read once.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub isomorphism: usize,
    pub transitivity: usize,
    pub independence: usize,
    pub cliques: usize,
    pub product: usize,
    pub sdp: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            isomorphism: 16,
            transitivity: 12,
            independence: 64,
            cliques: 256,
            product: 4096,
            sdp: 256,
        }
    }
}

impl Limits {
    /// Defaults, each raised to `floor` when `floor` is larger.
    pub fn raised_to(floor: usize) -> Self {
        let d = Self::default();
        Self {
            isomorphism: d.isomorphism.max(floor),
            transitivity: d.transitivity.max(floor),
            independence: d.independence.max(floor),
            cliques: d.cliques.max(floor),
            product: d.product.max(floor),
            sdp: d.sdp.max(floor),
        }
    }

    pub fn current() -> &'static Limits {
        static LIMITS: OnceLock<Limits> = OnceLock::new();
        LIMITS.get_or_init(|| {
            match std::env::var("XBOUND_MAX_N")
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
            {
                Some(floor) => Limits::raised_to(floor),
                None => Limits::default(),
            }
        })
    }
}

pub(crate) fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeGuard { what, size, limit })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raising_never_lowers() {
        let l = Limits::raised_to(20);
        assert_eq!(l.isomorphism, 20);
        assert_eq!(l.transitivity, 20);
        assert_eq!(l.product, 4096);
    }

    #[test]
    fn guard_reports_sizes() {
        assert!(guard("x", 3, 3).is_ok());
        assert_eq!(
            guard("x", 4, 3),
            Err(Error::SizeGuard {
                what: "x",
                size: 4,
                limit: 3
            })
        );
    }
}
