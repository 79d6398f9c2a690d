//! Truncated Laurent series over a finite field.
//!
//! A series knows its coefficients on the exponent window `val .. prec`;
//! everything at or above `prec` is unknown. Stored coefficients start at
//! `val` and trailing zeros inside the window are kept implicit, so constants
//! stay cheap. Arithmetic propagates the window conservatively: a result
//! never claims more precision than its inputs justify. These series drive
//! local expansion of curve functions at points where direct substitution
//! hits 0/0.

use crate::gf::{Fe, Field};
use crate::poly::Poly;
use crate::{LrcError, Result};

/// Sentinel precision for exactly-known series (constants, monomials).
const EXACT: i64 = 1 << 40;
/// Largest coefficient window ever materialized.
const MAX_WINDOW: usize = 1 << 14;

/// Truncated Laurent series in one local parameter.
#[derive(Clone, Debug)]
pub struct Series {
    field: Field,
    /// Exponent of c[0]; equals `prec` when no nonzero coefficient is known.
    val: i64,
    /// Known coefficients from `val` upward; no leading or trailing zeros.
    c: Vec<Fe>,
    /// First exponent with unknown coefficient; `val + c.len() <= prec`.
    prec: i64,
}

impl Series {
    fn build(field: &Field, mut val: i64, mut c: Vec<Fe>, prec: i64) -> Series {
        while c.first() == Some(&Fe(0)) {
            c.remove(0);
            val += 1;
        }
        while c.last() == Some(&Fe(0)) {
            c.pop();
        }
        if c.is_empty() {
            val = prec;
        }
        debug_assert!(val + c.len() as i64 <= prec);
        Series { field: field.clone(), val, c, prec }
    }

    /// Series with the given leading exponent and coefficient window,
    /// known exactly on `val .. val + c.len()`.
    pub fn new(field: &Field, val: i64, c: Vec<Fe>) -> Series {
        let prec = val + c.len() as i64;
        Series::build(field, val, c, prec)
    }

    /// The series known to vanish on all exponents below `prec`.
    pub fn zero_to(field: &Field, prec: i64) -> Series {
        Series { field: field.clone(), val: prec, c: Vec::new(), prec }
    }

    /// Series equal to the given finite coefficient window exactly (all
    /// higher coefficients are genuinely zero).
    pub fn exact(field: &Field, val: i64, c: Vec<Fe>) -> Series {
        Series::build(field, val, c, EXACT)
    }

    /// Forgets knowledge at and above the given precision.
    pub fn truncate(&self, prec: i64) -> Series {
        if prec >= self.prec {
            return self.clone();
        }
        let keep = ((prec - self.val).max(0) as usize).min(self.c.len());
        Series::build(&self.field, self.val.min(prec), self.c[..keep].to_vec(), prec)
    }

    /// Constant series (exactly known).
    pub fn constant(field: &Field, a: Fe) -> Series {
        Series::build(field, 0, vec![a], EXACT)
    }

    /// The monomial t^e, known to the given precision.
    pub fn t_power(field: &Field, e: i64, prec: i64) -> Series {
        if e >= prec {
            return Series::zero_to(field, prec);
        }
        Series::build(field, e, vec![field.one()], prec)
    }

    /// First exponent with unknown coefficient.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Leading term (exponent, nonzero coefficient), or None when the series
    /// is indistinguishable from zero at its precision.
    pub fn leading(&self) -> Option<(i64, Fe)> {
        self.c.first().map(|&a| (self.val, a))
    }

    /// Coefficient at exponent e. Reliable only for e < prec().
    pub fn coeff(&self, e: i64) -> Fe {
        if e < self.val {
            Fe(0)
        } else {
            self.c.get((e - self.val) as usize).copied().unwrap_or(Fe(0))
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val).min(prec);
        // Only stored windows contribute nonzero terms; an empty store
        // contributes nothing regardless of its val marker.
        let end = |s: &Series| {
            if s.c.is_empty() {
                i64::MIN
            } else {
                s.val + s.c.len() as i64
            }
        };
        let hi = end(self).max(end(other)).max(lo).min(prec);
        let len = (hi - lo).max(0) as usize;
        let mut c = vec![Fe(0); len];
        for (i, slot) in c.iter_mut().enumerate() {
            let e = lo + i as i64;
            *slot = f.add(self.coeff(e), other.coeff(e));
        }
        Series::build(f, lo, c, prec)
    }

    pub fn neg(&self) -> Series {
        let f = &self.field;
        let c = self.c.iter().map(|&a| f.neg(a)).collect();
        Series { field: f.clone(), val: self.val, c, prec: self.prec }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let f = &self.field;
        let prec = (self.val + other.prec).min(other.val + self.prec).min(EXACT);
        if self.c.is_empty() || other.c.is_empty() {
            return Series::zero_to(f, prec);
        }
        let val = self.val + other.val;
        let len = ((prec - val).max(0) as usize)
            .min(self.c.len() + other.c.len() - 1);
        let mut c = vec![Fe(0); len];
        for (i, &a) in self.c.iter().enumerate() {
            if a == Fe(0) {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                c[k] = f.add(c[k], f.mul(a, b));
            }
        }
        Series::build(f, val, c, prec)
    }

    pub fn mul_fe(&self, s: Fe) -> Series {
        let f = &self.field;
        if s == Fe(0) {
            return Series::zero_to(f, self.prec.max(EXACT));
        }
        let c = self.c.iter().map(|&a| f.mul(a, s)).collect();
        Series { field: f.clone(), val: self.val, c, prec: self.prec }
    }

    /// Multiplicative inverse; errors when no nonzero coefficient is visible
    /// at the current precision.
    pub fn inv(&self) -> Result<Series> {
        let f = &self.field;
        let (v, lead) = self
            .leading()
            .ok_or_else(|| LrcError::Eval("series inverse of a term indistinguishable from zero".into()))?;
        // Known window, including implicit zeros out to prec.
        let n = ((self.prec - v) as usize).min(MAX_WINDOW);
        let lead_inv = f.inv(lead);
        let mut b = vec![Fe(0); n];
        b[0] = lead_inv;
        for k in 1..n {
            let mut s = Fe(0);
            let jmax = k.min(self.c.len() - 1);
            for j in 1..=jmax {
                if self.c[j] != Fe(0) && b[k - j] != Fe(0) {
                    s = f.add(s, f.mul(self.c[j], b[k - j]));
                }
            }
            if s != Fe(0) {
                b[k] = f.neg(f.mul(lead_inv, s));
            }
        }
        Ok(Series::build(f, -v, b, -v + n as i64))
    }

    pub fn pow(&self, e: u32) -> Series {
        let f = &self.field;
        let mut acc = Series::constant(f, f.one());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates a polynomial at this series (Horner).
    pub fn poly_at(p: &Poly, s: &Series) -> Series {
        let f = &s.field;
        let mut acc = Series::zero_to(f, EXACT);
        for &a in p.coeffs().iter().rev() {
            acc = acc.mul(s).add(&Series::constant(f, a));
        }
        acc
    }

    /// True when the two series agree on the intersection of their known windows.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        (lo..prec).all(|e| self.coeff(e) == other.coeff(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn f7() -> Field {
        FieldSpec::new(7, 1, None).unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let f = f7();
        // (1 - t)^{-1} = 1 + t + t^2 + ... up to the window.
        let one_minus_t = Series::new(&f, 0, vec![f.one(), f.from_int(-1), Fe(0), Fe(0), Fe(0), Fe(0)]);
        let inv = one_minus_t.inv().unwrap();
        assert_eq!(inv.prec(), 6);
        for e in 0..6 {
            assert_eq!(inv.coeff(e), f.one());
        }
        let prod = one_minus_t.mul(&inv);
        assert_eq!(prod.leading(), Some((0, f.one())));
        for e in 1..prod.prec() {
            assert_eq!(prod.coeff(e), Fe(0));
        }
    }

    #[test]
    fn negative_valuation_inverse() {
        let f = f7();
        // (3 t^{-2})^{-1} = 5 t^2 since 3 * 5 = 15 = 1 mod 7.
        let s = Series::new(&f, -2, vec![f.from_int(3), Fe(0), Fe(0)]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.leading(), Some((2, f.from_int(5))));
    }

    #[test]
    fn constant_arithmetic_stays_exact() {
        let f = f7();
        let a = Series::constant(&f, f.from_int(3));
        let b = Series::constant(&f, f.from_int(5));
        let s = a.mul(&b).add(&a);
        assert_eq!(s.leading(), Some((0, f.from_int(4)))); // 15 + 3 = 18 = 4 mod 7
        assert!(s.prec() > 1 << 30);
    }

    #[test]
    fn mul_precision_is_conservative() {
        let f = f7();
        let a = Series::new(&f, 1, vec![f.one(), f.one()]); // t + t^2 + O(t^3)
        let b = Series::new(&f, 2, vec![f.from_int(2)]); // 2t^2 + O(t^3)
        let p = a.mul(&b);
        // Unknown t^3 of `b` times leading t of `a` pollutes exponent 4.
        assert_eq!(p.prec(), 4);
        assert_eq!(p.leading(), Some((3, f.from_int(2))));
    }

    #[test]
    fn poly_evaluation_at_series() {
        let f = f7();
        // p(x) = x^2 + 1 at x = t^{-1}: t^{-2} + 1, window limited by input.
        let p = Poly::from_coeffs(&f, vec![f.one(), Fe(0), f.one()]);
        let x = Series::t_power(&f, -1, 10);
        let s = Series::poly_at(&p, &x);
        assert_eq!(s.coeff(-2), f.one());
        assert_eq!(s.coeff(-1), Fe(0));
        assert_eq!(s.coeff(0), f.one());
    }

    #[test]
    fn zero_detection_window() {
        let f = f7();
        let a = Series::new(&f, 0, vec![f.one(), f.from_int(2)]);
        let same = Series::new(&f, 0, vec![f.one(), f.from_int(2), f.from_int(5)]);
        assert!(a.agrees_with(&same));
        let diff = a.sub(&same);
        assert!(diff.leading().is_none());
        assert_eq!(diff.prec(), 2);
    }
}
