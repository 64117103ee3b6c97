//! Scaling constants of the general morph.

use alloc::format;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::geom::Rat;

/// Box side factor.
pub const K0: u32 = 150;
/// Scale factor.
pub const BETA0: u32 = 800;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmConstants {
    pub n: usize,
    /// Larger side of the input drawing, counted in grid columns or rows.
    pub d0: BigInt,
    pub k0: u32,
    pub beta0: u32,
    /// Sine of the sector half-angle, `1 / (10 d0^2)`.
    pub sin_alpha: Rat,
    /// Side of the medium box, `k0 d0^2 n`.
    pub ell0: BigInt,
    /// Scale factor applied to the input, `beta0 d0^3 n`.
    pub b0: BigInt,
}

impl AlgorithmConstants {
    /// Half side of the big box, `ell0 / 2 + 2n`.
    pub fn big_half(&self) -> BigInt {
        &self.ell0 / 2u32 + 2 * self.n
    }

    /// Half side of the medium box.
    pub fn medium_half(&self) -> BigInt {
        &self.ell0 / 2u32
    }

    /// Distance from a parent to the landing point of a child, `ell0 / 2 - 3n`.
    pub fn landing_distance(&self) -> BigInt {
        &self.ell0 / 2u32 - 3 * self.n
    }

    /// `1 / sin_alpha = 10 d0^2`.
    pub fn inv_sin(&self) -> BigInt {
        BigInt::from(10u32) * &self.d0 * &self.d0
    }
}

fn check(ok: bool, what: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("constant constraint violated: {what}")))
    }
}

/// Builds the constants for `n` nodes and input side `d0`, asserting every
/// inequality the sector and box arguments rely on.
pub fn make_constants(n: usize, d0: impl Into<BigInt>) -> Result<AlgorithmConstants, Error> {
    let d0: BigInt = d0.into();
    if n == 0 || d0 < BigInt::one() {
        return Err(Error::Precondition("need n >= 1 and d0 >= 1".into()));
    }
    let nb = BigInt::from(n);
    let d2 = &d0 * &d0;
    let ell0 = BigInt::from(K0) * &d2 * &nb;
    let b0 = BigInt::from(BETA0) * &d2 * &d0 * &nb;
    let sin_alpha = Rat::new(BigInt::one(), BigInt::from(10u32) * &d2);
    let c = AlgorithmConstants { n, d0, k0: K0, beta0: BETA0, sin_alpha, ell0, b0 };
    validate_constants(&c)?;
    Ok(c)
}

/// Exact checks of the constraints on `k0`, `beta0` and `sin_alpha`.
pub fn validate_constants(c: &AlgorithmConstants) -> Result<(), Error> {
    let (k0, beta0) = (BigInt::from(c.k0), BigInt::from(c.beta0));
    let s = &c.sin_alpha;
    let s2 = s * s;
    let d2 = Rat::from_integer(&c.d0 * &c.d0);
    let d4 = &d2 * &d2;
    let d6 = &d4 * &d2;
    let r = |x: &BigInt| Rat::from_integer(x.clone());
    check(k0 > BigInt::from(12), "k0 > 12")?;
    check(beta0 > BigInt::from(4) * &k0, "beta0 > 4 k0")?;
    let k4 = &k0 + 4u32;
    check(&beta0 * &beta0 > BigInt::from(2) * &k4 * &k4, "beta0 > sqrt2 (k0 + 4)")?;
    check(s > &Rat::zero(), "sin_alpha > 0")?;
    // the sector must cover the small box of its child
    check(&s2 * r(&(&beta0 * &beta0)) * &d6 >= r(&BigInt::from(2)), "sin_alpha >= sqrt2 / (beta0 d0^3)")?;
    // the sector must cover the disk around the landing point
    check(s * r(&k0) * &d2 >= r(&BigInt::from(12)), "sin_alpha >= 12 / (k0 d0^2)")?;
    check(&s2 * r(&BigInt::from(2)) < Rat::one(), "alpha < 45 degrees")?;
    // sectors at one node are disjoint
    check(&s2 * r(&BigInt::from(8)) * &d4 < Rat::one(), "sin_alpha < 1 / (2 sqrt2 d0^2)")?;
    // sectors keep away from other objects
    check(s * r(&BigInt::from(4)) * &d2 < Rat::one(), "sin_alpha < 1 / (4 d0^2)")?;
    check(s * r(&BigInt::from(8)) * &d2 < Rat::one(), "sin_alpha < 1 / (8 d0^2)")?;
    Ok(())
}
