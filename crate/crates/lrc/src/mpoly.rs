//! Sparse multivariate polynomials over a finite field.
//!
//! Exponent vectors run over the six expression variables, so any polynomial
//! rational expression converts losslessly. These back plane-curve and
//! surface point enumeration, homogeneity checks, and the formal gradients
//! used to build tangent lines.

use std::collections::BTreeMap;

use crate::exprs::{RatExpr, Var};
use crate::gf::{Fe, Field};
use crate::{LrcError, Result};

type Exp = [u16; 6];

/// Multivariate polynomial keyed by exponent vector.
#[derive(Clone, Debug)]
pub struct MPoly {
    field: Field,
    terms: BTreeMap<Exp, Fe>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl MPoly {
    pub fn zero(field: &Field) -> MPoly {
        MPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, a: Fe) -> MPoly {
        let mut p = MPoly::zero(field);
        if a != Fe(0) {
            p.terms.insert([0; 6], a);
        }
        p
    }

    pub fn var(field: &Field, v: Var) -> MPoly {
        let mut e = [0u16; 6];
        e[var_index(v)] = 1;
        let mut p = MPoly::zero(field);
        p.terms.insert(e, field.one());
        p
    }

    /// Converts a rational expression that denotes a polynomial. Division is
    /// accepted only by nonzero constants; powers must be nonnegative.
    pub fn from_expr(field: &Field, e: &RatExpr) -> Result<MPoly> {
        Ok(match e {
            RatExpr::Const(c) => MPoly::constant(field, *c),
            RatExpr::Var(v) => MPoly::var(field, *v),
            RatExpr::Neg(inner) => MPoly::from_expr(field, inner)?.neg(),
            RatExpr::Add(l, r) => MPoly::from_expr(field, l)?.add(&MPoly::from_expr(field, r)?),
            RatExpr::Sub(l, r) => MPoly::from_expr(field, l)?.sub(&MPoly::from_expr(field, r)?),
            RatExpr::Mul(l, r) => MPoly::from_expr(field, l)?.mul(&MPoly::from_expr(field, r)?),
            RatExpr::Div(l, r) => {
                let den = MPoly::from_expr(field, r)?;
                match den.as_constant() {
                    Some(c) if c != Fe(0) => {
                        MPoly::from_expr(field, l)?.mul_fe(field.inv(c))
                    }
                    _ => {
                        return Err(LrcError::Parse(
                            "expression is not polynomial: division by a non-constant".into(),
                        ))
                    }
                }
            }
            RatExpr::Pow(inner, k) => {
                let base = MPoly::from_expr(field, inner)?;
                if *k < 0 {
                    match base.as_constant() {
                        Some(c) if c != Fe(0) => {
                            MPoly::constant(field, field.powi(c, *k).unwrap())
                        }
                        _ => {
                            return Err(LrcError::Parse(
                                "expression is not polynomial: negative power".into(),
                            ))
                        }
                    }
                } else {
                    base.pow(*k as u32)
                }
            }
        })
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    /// Iterates the (exponent vector, coefficient) pairs in term order.
    pub fn terms(&self) -> impl Iterator<Item = ([u16; 6], Fe)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn as_constant(&self) -> Option<Fe> {
        match self.terms.len() {
            0 => Some(Fe(0)),
            1 => {
                let (e, &c) = self.terms.iter().next().unwrap();
                if *e == [0; 6] {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let f = &self.field;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            merge(f, &mut out.terms, *e, c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let f = &self.field;
        let terms = self.terms.iter().map(|(e, &c)| (*e, f.neg(c))).collect();
        MPoly { field: f.clone(), terms }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let f = &self.field;
        let mut out = MPoly::zero(f);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut e = [0u16; 6];
                for i in 0..6 {
                    e[i] = ea[i] + eb[i];
                }
                merge(f, &mut out.terms, e, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_fe(&self, s: Fe) -> MPoly {
        let f = &self.field;
        if s == Fe(0) {
            return MPoly::zero(f);
        }
        let terms = self.terms.iter().map(|(e, &c)| (*e, f.mul(c, s))).collect();
        MPoly { field: f.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let f = &self.field;
        let mut acc = MPoly::constant(f, f.one());
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

    /// Evaluates at a full assignment indexed in variable order x,y,z,w,u,v.
    pub fn eval(&self, vals: &[Fe; 6]) -> Fe {
        let f = &self.field;
        let mut acc = Fe(0);
        for (e, &c) in &self.terms {
            let mut term = c;
            for i in 0..6 {
                if e[i] > 0 {
                    term = f.mul(term, f.pow(vals[i], e[i] as u64));
                }
            }
            acc = f.add(acc, term);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> MPoly {
        let f = &self.field;
        let i = var_index(v);
        let mut out = MPoly::zero(f);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let scaled = f.mul(c, f.from_int(e[i] as i64));
            if scaled == Fe(0) {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            merge(f, &mut out.terms, ne, scaled);
        }
        out
    }

    /// Total degree, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// True when every term has the same total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Variables actually occurring.
    pub fn vars_used(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.terms.keys().any(|e| e[var_index(v)] > 0))
            .collect()
    }
}

fn var_index(v: Var) -> usize {
    Var::ALL.iter().position(|&w| w == v).unwrap()
}

fn merge(f: &Field, terms: &mut BTreeMap<Exp, Fe>, e: Exp, c: Fe) {
    if c == Fe(0) {
        return;
    }
    let entry = terms.entry(e).or_insert(Fe(0));
    *entry = f.add(*entry, c);
    if *entry == Fe(0) {
        terms.remove(&e);
    }
}

/// Assignment array for a point in the plane (x, y, z); other slots zero.
pub fn assign_xyz(x: Fe, y: Fe, z: Fe) -> [Fe; 6] {
    [x, y, z, Fe(0), Fe(0), Fe(0)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn conversion_and_evaluation() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        let e = RatExpr::parse("x^2 + y^2 + z^2 + 3*x*y + 3*x*z + 3*y*z", &f).unwrap();
        let p = MPoly::from_expr(&f, &e).unwrap();
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(2));
        // At (1, 2, 3): 1 + 4 + 9 + 6 + 9 + 18 = 47 = 5 mod 7.
        let v = p.eval(&assign_xyz(f.from_int(1), f.from_int(2), f.from_int(3)));
        assert_eq!(v, f.from_int(5));
    }

    #[test]
    fn characteristic_two_gradient() {
        let f = FieldSpec::new(2, 3, None).unwrap();
        let e = RatExpr::parse("x^2 + x*y + y^2 + z^2", &f).unwrap();
        let p = MPoly::from_expr(&f, &e).unwrap();
        // In characteristic 2 the squares vanish under derivation.
        let px = p.partial(Var::X);
        let py = p.partial(Var::Y);
        let pz = p.partial(Var::Z);
        assert_eq!(px, MPoly::var(&f, Var::Y));
        assert_eq!(py, MPoly::var(&f, Var::X));
        assert!(pz.is_zero());
    }

    #[test]
    fn rejects_non_polynomials() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        let e = RatExpr::parse("1/x", &f).unwrap();
        assert!(MPoly::from_expr(&f, &e).is_err());
        let e = RatExpr::parse("x^-1", &f).unwrap();
        assert!(MPoly::from_expr(&f, &e).is_err());
        let e = RatExpr::parse("x/2 + y/(1 + 1)", &f).unwrap();
        assert!(MPoly::from_expr(&f, &e).is_ok());
    }

    #[test]
    fn inhomogeneous_detection() {
        let f = FieldSpec::new(5, 1, None).unwrap();
        let e = RatExpr::parse("x^2 + y", &f).unwrap();
        let p = MPoly::from_expr(&f, &e).unwrap();
        assert!(!p.is_homogeneous());
        assert_eq!(p.vars_used(), vec![Var::X, Var::Y]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = FieldSpec::new(3, 1, None).unwrap();
        let a = MPoly::from_expr(&f, &RatExpr::parse("x^2 + y", &f).unwrap()).unwrap();
        let b = MPoly::from_expr(&f, &RatExpr::parse("x^2 - z", &f).unwrap()).unwrap();
        let d = a.sub(&b);
        let expect = MPoly::from_expr(&f, &RatExpr::parse("y + z", &f).unwrap()).unwrap();
        assert_eq!(d, expect);
    }
}
