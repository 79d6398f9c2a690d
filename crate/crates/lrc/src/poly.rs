//! Dense univariate polynomial arithmetic over a finite field.
//!
//! Coefficients are stored little-endian (index = exponent) with no trailing
//! zeros, so the zero polynomial is the empty vector. These polynomials back
//! the canonical-form machinery for curve functions and the truncated series
//! expansions used to evaluate functions at removable singularities.

use crate::gf::{Fe, Field};

/// Univariate polynomial with coefficients in a finite field.
#[derive(Clone, Debug)]
pub struct Poly {
    field: Field,
    c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}
impl Eq for Poly {}

impl Poly {
    /// The zero polynomial.
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(field: &Field, a: Fe) -> Poly {
        Poly::from_coeffs(field, vec![a])
    }

    /// The monomial x.
    pub fn x(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![Fe(0), field.one()])
    }

    /// Builds a polynomial from little-endian coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: &Field, mut c: Vec<Fe>) -> Poly {
        while c.last() == Some(&Fe(0)) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }

    /// Little-endian coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe(0))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe(0))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(f, out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.c.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fe(0); self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == Fe(0) {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }

    /// Multiplies by a scalar.
    pub fn mul_fe(&self, s: Fe) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.c.iter().map(|&a| f.mul(a, s)).collect())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![Fe(0); k];
        out.extend_from_slice(&self.c);
        Poly::from_coeffs(&self.field, out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let f = &self.field;
        let mut base = self.clone();
        let mut acc = Poly::constant(f, f.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
    ///
    /// Panics if the divisor is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.deg();
        if self.deg() < dd {
            return (Poly::zero(f), self.clone());
        }
        let inv_lead = f.inv(d.lead());
        let mut rem = self.c.clone();
        let mut quo = vec![Fe(0); (self.deg() - dd + 1) as usize];
        for qi in (0..quo.len()).rev() {
            let top = rem[qi + dd as usize];
            if top == Fe(0) {
                continue;
            }
            let c = f.mul(top, inv_lead);
            quo[qi] = c;
            for (k, &dc) in d.c.iter().enumerate() {
                rem[qi + k] = f.sub(rem[qi + k], f.mul(c, dc));
            }
        }
        (Poly::from_coeffs(f, quo), Poly::from_coeffs(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Scales so the leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.mul_fe(self.field.inv(self.lead()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe(0);
        for &a in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x0), a);
        }
        acc
    }

    /// Formal derivative (respects the field characteristic).
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let mut out = Vec::new();
        for (i, &a) in self.c.iter().enumerate().skip(1) {
            out.push(f.mul(a, f.from_int(i as i64)));
        }
        Poly::from_coeffs(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn f7() -> Field {
        FieldSpec::new(7, 1, None).unwrap()
    }

    fn p(field: &Field, v: &[i64]) -> Poly {
        Poly::from_coeffs(field, v.iter().map(|&a| field.from_int(a)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = f7();
        let a = p(&f, &[3, 0, 5, 1, 6]);
        let d = p(&f, &[2, 4, 1]);
        let (q, r) = a.divrem(&d);
        assert!(r.deg() < d.deg());
        assert_eq!(q.mul(&d).add(&r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = f7();
        // (x - 1)(x + 2) and (x - 1)(x + 3) share exactly x - 1.
        let a = p(&f, &[-1, 1]).mul(&p(&f, &[2, 1]));
        let b = p(&f, &[-1, 1]).mul(&p(&f, &[3, 1]));
        assert_eq!(Poly::gcd(&a, &b), p(&f, &[-1, 1]));
    }

    #[test]
    fn eval_matches_expansion() {
        let f = f7();
        // (x + 1)^3 at x = 2 is 27 = 6 mod 7.
        let a = p(&f, &[1, 1]).pow(3);
        assert_eq!(a.eval(f.from_int(2)), f.from_int(6));
        assert_eq!(a, p(&f, &[1, 3, 3, 1]));
    }

    #[test]
    fn derivative_char2_kills_even_terms() {
        let f = FieldSpec::new(2, 4, None).unwrap();
        // d/dx (x^4 + x^3 + x) = 3x^2 + 1 = x^2 + 1 in characteristic 2.
        let a = p(&f, &[0, 1, 0, 1, 1]);
        assert_eq!(a.derivative(), p(&f, &[1, 0, 1]));
    }

    #[test]
    fn zero_handling() {
        let f = f7();
        let z = Poly::zero(&f);
        assert!(z.is_zero());
        assert_eq!(z.deg(), -1);
        assert_eq!(z.mul(&p(&f, &[1, 2])), z);
        assert_eq!(Poly::gcd(&z, &p(&f, &[0, 0, 2])), p(&f, &[0, 0, 1]));
    }
}
