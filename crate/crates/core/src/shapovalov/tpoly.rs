//! Exact univariate polynomials and rational functions in the deformation
//! parameter `t`, with rational coefficients.
//!
//! The "limit as t -> 0+" of the form machinery is algebraic here: the
//! vanishing order of an entry is the valuation of its numerator minus the
//! valuation of its denominator, and the limiting sign is the sign of the
//! unit part at 0.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{q_sign, Q};

/// Dense polynomial in `t` over the rationals, coefficients ascending,
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QtPoly {
    coeffs: Vec<Q>,
}

impl QtPoly {
    pub fn zero() -> QtPoly {
        QtPoly { coeffs: vec![] }
    }

    pub fn one() -> QtPoly {
        QtPoly {
            coeffs: vec![Q::one()],
        }
    }

    pub fn constant(c: Q) -> QtPoly {
        QtPoly::from_coeffs(vec![c])
    }

    /// `c0 + c1 t`.
    pub fn linear(c0: Q, c1: Q) -> QtPoly {
        QtPoly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> QtPoly {
        let mut p = QtPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Valuation at t = 0: index of the lowest nonzero coefficient.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lowest_coeff(&self) -> Option<Q> {
        self.t_order().map(|k| self.coeffs[k].clone())
    }

    pub fn add(&self, other: &QtPoly) -> QtPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QtPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &QtPoly) -> QtPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QtPoly {
        QtPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &QtPoly) -> QtPoly {
        if self.is_zero() || other.is_zero() {
            return QtPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QtPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Q) -> QtPoly {
        QtPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder with respect to a nonzero divisor.
    pub fn divmod(&self, div: &QtPoly) -> (QtPoly, QtPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.coeffs[dd].clone();
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = &rem.coeffs[rd] / &lead;
            quot[rd - dd] = f.clone();
            let shifted: Vec<Q> = (0..=rd)
                .map(|i| {
                    if i >= rd - dd {
                        &f * &div.coeffs[i - (rd - dd)]
                    } else {
                        Q::zero()
                    }
                })
                .collect();
            rem = rem.sub(&QtPoly::from_coeffs(shifted));
        }
        (QtPoly::from_coeffs(quot), rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QtPoly) -> QtPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.coeffs[a.degree().unwrap()].clone();
        a.scale(&(Q::one() / lead))
    }

    pub fn eval_zero(&self) -> Q {
        self.coeff(0)
    }
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Reduced fraction of polynomials in `t`.  The denominator's lowest
/// nonzero coefficient is normalized to 1, so the sign of the unit part at
/// 0 is the sign of the numerator's lowest coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: QtPoly,
    den: QtPoly,
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn {
            num: QtPoly::zero(),
            den: QtPoly::one(),
        }
    }

    pub fn from_poly(p: QtPoly) -> RatFn {
        RatFn {
            num: p,
            den: QtPoly::one(),
        }
    }

    pub fn new(num: QtPoly, den: QtPoly) -> RatFn {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divmod(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divmod(&g);
        debug_assert!(r2.is_zero());
        let c = den.lowest_coeff().unwrap();
        let inv = Q::one() / c;
        RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &QtPoly {
        &self.num
    }

    pub fn den(&self) -> &QtPoly {
        &self.den
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        RatFn::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFn) -> RatFn {
        assert!(!other.is_zero(), "division by zero");
        RatFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Valuation at t = 0; `None` for the zero function.
    pub fn t_order(&self) -> Option<i64> {
        let n = self.num.t_order()? as i64;
        let d = self.den.t_order().unwrap() as i64;
        Some(n - d)
    }

    /// Sign of `(t^{-ord} f)(0)`.
    pub fn unit_sign_at_zero(&self) -> i8 {
        match (self.num.lowest_coeff(), self.den.lowest_coeff()) {
            (Some(n), Some(d)) => q_sign(&(n / d)),
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_int, q_ratio};

    #[test]
    fn divmod_roundtrip() {
        let a = QtPoly::from_coeffs(vec![q_int(2), q_int(-3), q_int(1)]); // (t-1)(t-2)
        let b = QtPoly::from_coeffs(vec![q_int(-1), q_int(1)]); // t-1
        let (q, r) = a.divmod(&b);
        assert!(r.is_zero());
        assert_eq!(q, QtPoly::from_coeffs(vec![q_int(-2), q_int(1)]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let t = QtPoly::linear(q_int(0), q_int(1));
        let a = t.mul(&QtPoly::linear(q_int(-1), q_int(1)));
        let b = t.mul(&QtPoly::linear(q_int(3), q_int(1)));
        assert_eq!(a.gcd(&b), t);
    }

    #[test]
    fn ratfn_orders_and_signs() {
        // (-2 t^2 + t^3) / (1 + t): order 2, unit sign -1.
        let num = QtPoly::from_coeffs(vec![q_int(0), q_int(0), q_int(-2), q_int(1)]);
        let den = QtPoly::from_coeffs(vec![q_int(1), q_int(1)]);
        let f = RatFn::new(num, den);
        assert_eq!(f.t_order(), Some(2));
        assert_eq!(f.unit_sign_at_zero(), -1);
    }

    #[test]
    fn ratfn_arithmetic() {
        let t = RatFn::from_poly(QtPoly::linear(q_int(0), q_int(1)));
        let one = RatFn::from_poly(QtPoly::one());
        let inv = one.div(&t.add(&one)); // 1/(1+t)
        let back = inv.mul(&t.add(&one));
        assert_eq!(back, one);
        let half = RatFn::from_poly(QtPoly::constant(q_ratio(1, 2)));
        assert_eq!(half.add(&half), one);
        assert!(t.sub(&t).is_zero());
    }

    #[test]
    fn reduction_normalizes_denominator() {
        let num = QtPoly::from_coeffs(vec![q_int(0), q_int(2)]); // 2t
        let den = QtPoly::from_coeffs(vec![q_int(0), q_int(0), q_int(4)]); // 4t^2
        let f = RatFn::new(num, den);
        assert_eq!(f.t_order(), Some(-1));
        assert_eq!(f.den().lowest_coeff().unwrap(), q_int(1));
    }
}
