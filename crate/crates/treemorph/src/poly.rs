//! Integer polynomials of degree at most two and exact sign evaluation at
//! their real roots.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geom::Rat;

/// `a*t^2 + b*t + c` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quad {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// `(p + s*sqrt(d)) / q` with `q > 0`, `d >= 0` and `s` in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgRoot {
    pub p: BigInt,
    pub s: i8,
    pub d: BigInt,
    pub q: BigInt,
}

/// Sign of `x + y*sqrt(d)` for `d >= 0`.
pub fn sign_sqrt_form(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    let sx = x.cmp(&zero);
    let sy = if d.is_zero() { Ordering::Equal } else { y.cmp(&zero) };
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // opposite signs: compare magnitudes squared
    let lhs = x * x;
    let rhs = y * y * d;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Quad {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Quad { a, b, c }
    }

    pub fn linear(b: BigInt, c: BigInt) -> Self {
        Quad { a: BigInt::zero(), b, c }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        let a = Rat::from_integer(self.a.clone());
        let b = Rat::from_integer(self.b.clone());
        let c = Rat::from_integer(self.c.clone());
        (a * t + b) * t + c
    }

    /// Sign of the polynomial at an algebraic number.
    pub fn sign_at(&self, r: &AlgRoot) -> Ordering {
        // q^2 * G(r) = a(p^2 + d) + b p q + c q^2 + s*sqrt(d)*(2 a p + b q)
        let s = BigInt::from(r.s);
        let x = &self.a * (&r.p * &r.p + &r.d) + &self.b * &r.p * &r.q + &self.c * &r.q * &r.q;
        let y = s * (BigInt::from(2) * &self.a * &r.p + &self.b * &r.q);
        sign_sqrt_form(&x, &y, &r.d)
    }

    /// Distinct real roots in the open interval `(0, 1)`, increasing.
    /// Must not be called on the zero polynomial.
    pub fn roots_in_unit(&self) -> Vec<AlgRoot> {
        debug_assert!(!self.is_zero());
        let mut out = Vec::new();
        if self.a.is_zero() {
            if !self.b.is_zero() {
                out.push(AlgRoot::rational(-&self.c, self.b.clone()));
            }
        } else {
            let disc = &self.b * &self.b - BigInt::from(4) * &self.a * &self.c;
            if disc.is_negative() {
                return out;
            }
            let two_a = BigInt::from(2) * &self.a;
            if disc.is_zero() {
                out.push(AlgRoot::rational(-&self.b, two_a));
            } else {
                let r = disc.sqrt();
                if &r * &r == disc {
                    out.push(AlgRoot::rational(-&self.b - &r, two_a.clone()));
                    out.push(AlgRoot::rational(-&self.b + &r, two_a));
                } else {
                    out.push(AlgRoot::new(-&self.b, -1, disc.clone(), two_a.clone()));
                    out.push(AlgRoot::new(-&self.b, 1, disc, two_a));
                }
            }
            out.sort_by(|x, y| x.cmp_same_field(y));
        }
        out.retain(|r| r.in_open_unit());
        out
    }
}

impl AlgRoot {
    /// Normalises so the denominator is positive.
    pub fn new(p: BigInt, s: i8, d: BigInt, q: BigInt) -> Self {
        if q.is_negative() {
            AlgRoot { p: -p, s: -s, d, q: -q }
        } else {
            AlgRoot { p, s, d, q }
        }
    }

    pub fn rational(p: BigInt, q: BigInt) -> Self {
        AlgRoot::new(p, 0, BigInt::zero(), q)
    }

    pub fn is_rational(&self) -> bool {
        self.s == 0 || self.d.is_zero()
    }

    /// Compares with the rational `m / k`.
    pub fn cmp_rat(&self, v: &Rat) -> Ordering {
        let (m, k) = (v.numer(), v.denom());
        let x = &self.p * k - m * &self.q;
        let y = BigInt::from(self.s) * k;
        sign_sqrt_form(&x, &y, &self.d)
    }

    fn in_open_unit(&self) -> bool {
        self.cmp_rat(&Rat::zero()) == Ordering::Greater && self.cmp_rat(&Rat::one()) == Ordering::Less
    }

    /// Compares two roots sharing the same radicand.
    fn cmp_same_field(&self, o: &AlgRoot) -> Ordering {
        let d = if self.d.is_zero() { &o.d } else { &self.d };
        let x = &self.p * &o.q - &o.p * &self.q;
        let y = BigInt::from(self.s) * &o.q - BigInt::from(o.s) * &self.q;
        sign_sqrt_form(&x, &y, d)
    }

    /// Exact value when rational.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(Rat::new(self.p.clone(), self.q.clone()))
        } else {
            None
        }
    }

    /// Rational interval `[lo, hi]` containing the root, of width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> (Rat, Rat) {
        if let Some(v) = self.to_rat() {
            return (v.clone(), v);
        }
        let k = BigInt::one() << bits;
        let r = (&self.d * &k * &k).sqrt();
        let lo_s = Rat::new(r.clone(), k.clone());
        let hi_s = Rat::new(r + 1u32, k);
        let p = Rat::from_integer(self.p.clone());
        let q = Rat::from_integer(self.q.clone());
        if self.s > 0 {
            ((&p + lo_s) / &q, (&p + hi_s) / &q)
        } else {
            ((&p - hi_s) / &q, (&p - lo_s) / &q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> Quad {
        Quad::new(a.into(), b.into(), c.into())
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rational_roots() {
        // (2t - 1)(4t - 3)
        let r = q(8, -10, 3).roots_in_unit();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].to_rat().unwrap(), rat(1, 2));
        assert_eq!(r[1].to_rat().unwrap(), rat(3, 4));
        assert!(q(0, 0, 5).roots_in_unit().is_empty());
        assert!(q(0, 1, -1).roots_in_unit().is_empty());
    }

    #[test]
    fn irrational_root_sign() {
        // 2t^2 - 1 has root 1/sqrt(2)
        let r = q(2, 0, -1).roots_in_unit();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].cmp_rat(&rat(7, 10)), Ordering::Greater);
        assert_eq!(r[0].cmp_rat(&rat(71, 100)), Ordering::Less);
        assert_eq!(q(0, 10, -7).sign_at(&r[0]), Ordering::Greater);
        assert_eq!(q(4, 0, -2).sign_at(&r[0]), Ordering::Equal);
        let (lo, hi) = r[0].enclose(20);
        assert!(lo < hi && r[0].cmp_rat(&lo) != Ordering::Less && r[0].cmp_rat(&hi) != Ordering::Greater);
    }
}
