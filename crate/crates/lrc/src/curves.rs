//! Projective points, Weierstrass curves, the elliptic group law, and exact
//! evaluation of functions on a curve.
//!
//! The group law is implemented from the general chord–tangent formulas, so
//! it is valid in every characteristic (including 2 and 3, where the paper's
//! short forms would break). Functions on a curve are kept in the canonical
//! shape (A(x) + B(x)·y)/C(x); evaluation is direct where possible and falls
//! back to a truncated local power-series expansion at points where both
//! numerator and denominator vanish, so removable singularities and genuine
//! poles are always distinguished exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::exprs::{RatExpr, Value, Var};
use crate::gf::{Fe, Field};
use crate::mpoly::{assign_xyz, MPoly};
use crate::poly::Poly;
use crate::series::Series;
use crate::{LrcError, Result};

/// A projective point, normalized so the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Fe>,
}

impl ProjPoint {
    /// Normalizes a coordinate vector; errors when all coordinates vanish.
    pub fn new(field: &Field, mut coords: Vec<Fe>) -> Result<ProjPoint> {
        let last = coords
            .iter()
            .rposition(|&c| c != Fe(0))
            .ok_or_else(|| LrcError::Curve("projective point with all coordinates zero".into()))?;
        let inv = field.inv(coords[last]);
        for c in coords.iter_mut() {
            *c = field.mul(*c, inv);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn format(&self, field: &Field) -> String {
        let mut s = String::from("[");
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                s.push(':');
            }
            let _ = write!(s, "{}", field.format_elem(c));
        }
        s.push(']');
        s
    }
}

/// All points of projective space of the given coordinate length (2, 3 or 4),
/// in lexicographic order of the normalized coordinate vector.
pub fn proj_points(field: &Field, len: usize) -> Vec<ProjPoint> {
    assert!((2..=4).contains(&len));
    let elems: Vec<Fe> = field.elements().collect();
    let mut out = Vec::new();
    // The last nonzero coordinate is pinned to 1; everything after is 0.
    for pivot in 0..len {
        let mut idx = vec![0usize; pivot];
        loop {
            let mut coords = vec![Fe(0); len];
            for (i, &k) in idx.iter().enumerate() {
                coords[i] = elems[k];
            }
            coords[pivot] = field.one();
            out.push(ProjPoint { coords });
            let mut carry = 0;
            while carry < idx.len() {
                idx[carry] += 1;
                if idx[carry] < elems.len() {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
            }
            if carry == idx.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Rational points of a homogeneous plane curve in x, y, z, in lexicographic
/// order of normalized coordinates.
pub fn enumerate_plane_curve(field: &Field, eq: &RatExpr) -> Result<Vec<ProjPoint>> {
    let p = MPoly::from_expr(field, eq)?;
    check_homogeneous_xyz(&p, "plane curve")?;
    Ok(proj_points(field, 3)
        .into_iter()
        .filter(|pt| {
            let c = pt.coords();
            p.eval(&assign_xyz(c[0], c[1], c[2])) == Fe(0)
        })
        .collect())
}

/// Rational points of the surface w^{r+1} = f(x,y,z) in P³ (coordinates
/// ordered x, y, z, w), in lexicographic order.
pub fn enumerate_surface(field: &Field, f_expr: &RatExpr, r: usize) -> Result<Vec<ProjPoint>> {
    let rp1 = (r + 1) as u64;
    if (field.order() - 1) % rp1 != 0 {
        return Err(LrcError::Surface(format!(
            "field order {} is not congruent to 1 mod {}",
            field.order(),
            rp1
        )));
    }
    let p = MPoly::from_expr(field, f_expr)?;
    check_homogeneous_xyz(&p, "surface branch form")?;
    if p.total_degree() != Some((r + 1) as u32) {
        return Err(LrcError::Surface(format!(
            "branch form must have degree {}, got {:?}",
            r + 1,
            p.total_degree()
        )));
    }
    Ok(proj_points(field, 4)
        .into_iter()
        .filter(|pt| {
            let c = pt.coords();
            field.pow(c[3], rp1) == p.eval(&assign_xyz(c[0], c[1], c[2]))
        })
        .collect())
}

fn check_homogeneous_xyz(p: &MPoly, what: &str) -> Result<()> {
    if p.is_zero() {
        return Err(LrcError::Curve(format!("{what}: zero polynomial")));
    }
    if !p.is_homogeneous() {
        return Err(LrcError::Curve(format!("{what}: not homogeneous")));
    }
    if p.vars_used().iter().any(|v| !matches!(v, Var::X | Var::Y | Var::Z)) {
        return Err(LrcError::Curve(format!("{what}: variables outside x, y, z")));
    }
    Ok(())
}

/// A point of an elliptic curve: infinity or affine (x, y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EcPoint {
    Infinity,
    Affine(Fe, Fe),
}

impl EcPoint {
    pub fn is_infinity(self) -> bool {
        matches!(self, EcPoint::Infinity)
    }

    pub fn format(self, field: &Field) -> String {
        match self {
            EcPoint::Infinity => "inf".to_string(),
            EcPoint::Affine(x, y) => {
                format!("({}, {})", field.format_elem(x), field.format_elem(y))
            }
        }
    }
}

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 with nonzero discriminant.
#[derive(Clone, Debug)]
pub struct WeierstrassCurve {
    field: Field,
    pub a1: Fe,
    pub a2: Fe,
    pub a3: Fe,
    pub a4: Fe,
    pub a6: Fe,
}

impl WeierstrassCurve {
    pub fn new(field: &Field, a: [Fe; 5]) -> Result<WeierstrassCurve> {
        let e = WeierstrassCurve {
            field: field.clone(),
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            a6: a[4],
        };
        if e.discriminant() == Fe(0) {
            return Err(LrcError::Curve("singular curve (zero discriminant)".into()));
        }
        Ok(e)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Discriminant via the b-invariants.
    pub fn discriminant(&self) -> Fe {
        let f = &self.field;
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let n = |k: i64| f.from_int(k);
        let b2 = f.add(f.mul(a1, a1), f.mul(n(4), a2));
        let b4 = f.add(f.mul(n(2), a4), f.mul(a1, a3));
        let b6 = f.add(f.mul(a3, a3), f.mul(n(4), a6));
        let b8 = {
            let t1 = f.mul(f.mul(a1, a1), a6);
            let t2 = f.mul(n(4), f.mul(a2, a6));
            let t3 = f.neg(f.mul(a1, f.mul(a3, a4)));
            let t4 = f.mul(a2, f.mul(a3, a3));
            let t5 = f.neg(f.mul(a4, a4));
            f.add(f.add(f.add(f.add(t1, t2), t3), t4), t5)
        };
        let d1 = f.neg(f.mul(f.mul(b2, b2), b8));
        let d2 = f.neg(f.mul(n(8), f.mul(b4, f.mul(b4, b4))));
        let d3 = f.neg(f.mul(n(27), f.mul(b6, b6)));
        let d4 = f.mul(n(9), f.mul(b2, f.mul(b4, b6)));
        f.add(f.add(f.add(d1, d2), d3), d4)
    }

    /// x³ + a2·x² + a4·x + a6 as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        Poly::from_coeffs(&self.field, vec![self.a6, self.a4, self.a2, self.field.one()])
    }

    /// a1·x + a3 as a polynomial (the y-coefficient of the curve form).
    pub fn ylin_poly(&self) -> Poly {
        Poly::from_coeffs(&self.field, vec![self.a3, self.a1])
    }

    pub fn is_on(&self, x: Fe, y: Fe) -> bool {
        let f = &self.field;
        let lhs = f.add(f.mul(y, y), f.add(f.mul(self.a1, f.mul(x, y)), f.mul(self.a3, y)));
        lhs == self.rhs_poly().eval(x)
    }

    pub fn contains(&self, p: EcPoint) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.is_on(x, y),
        }
    }

    /// All rational points, infinity first then affine points in
    /// lexicographic order. The count always lands in the Hasse interval.
    pub fn points(&self) -> Vec<EcPoint> {
        let f = &self.field;
        let mut out = vec![EcPoint::Infinity];
        for x in f.elements() {
            for y in f.elements() {
                if self.is_on(x, y) {
                    out.push(EcPoint::Affine(x, y));
                }
            }
        }
        let q = f.order() as f64;
        let count = out.len() as f64;
        let half_width = 2.0 * q.sqrt();
        assert!(
            (count - (q + 1.0)).abs() <= half_width + 1e-9,
            "point count {} outside the Hasse interval for q = {}",
            out.len(),
            f.order()
        );
        out
    }

    pub fn neg(&self, p: EcPoint) -> EcPoint {
        let f = &self.field;
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => {
                EcPoint::Affine(x, f.neg(f.add(y, f.add(f.mul(self.a1, x), self.a3))))
            }
        }
    }

    /// Chord–tangent addition, valid for all a-invariants in any characteristic.
    pub fn add(&self, p: EcPoint, q: EcPoint) -> EcPoint {
        let f = &self.field;
        let (x1, y1) = match p {
            EcPoint::Infinity => return q,
            EcPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            EcPoint::Infinity => return p,
            EcPoint::Affine(x, y) => (x, y),
        };
        if q == self.neg(p) {
            return EcPoint::Infinity;
        }
        let (lambda, mu) = if x1 != x2 {
            let den = f.inv(f.sub(x2, x1));
            (
                f.mul(f.sub(y2, y1), den),
                f.mul(f.sub(f.mul(y1, x2), f.mul(y2, x1)), den),
            )
        } else {
            // Same x and q != -p forces q == p (two points share an x-coordinate
            // only when they are negatives of each other).
            debug_assert_eq!(p, q);
            let den = f.add(
                f.mul(f.from_int(2), y1),
                f.add(f.mul(self.a1, x1), self.a3),
            );
            debug_assert_ne!(den, Fe(0), "two-torsion doubling must exit via q == -p");
            let den = f.inv(den);
            let num_l = f.sub(
                f.add(
                    f.mul(f.from_int(3), f.mul(x1, x1)),
                    f.add(f.mul(f.from_int(2), f.mul(self.a2, x1)), self.a4),
                ),
                f.mul(self.a1, y1),
            );
            let num_m = f.sub(
                f.add(
                    f.neg(f.mul(x1, f.mul(x1, x1))),
                    f.add(f.mul(self.a4, x1), f.mul(f.from_int(2), self.a6)),
                ),
                f.mul(self.a3, y1),
            );
            (f.mul(num_l, den), f.mul(num_m, den))
        };
        let x3 = f.sub(
            f.sub(f.add(f.mul(lambda, lambda), f.mul(self.a1, lambda)), self.a2),
            f.add(x1, x2),
        );
        let y3 = f.sub(
            f.neg(f.mul(f.add(lambda, self.a1), x3)),
            f.add(mu, self.a3),
        );
        EcPoint::Affine(x3, y3)
    }

    /// Scalar multiple k·P.
    pub fn mul_scalar(&self, p: EcPoint, k: u64) -> EcPoint {
        let mut acc = EcPoint::Infinity;
        let mut base = p;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Order of a point in the group.
    pub fn point_order(&self, p: EcPoint) -> usize {
        let mut acc = p;
        let mut n = 1usize;
        while acc != EcPoint::Infinity {
            acc = self.add(acc, p);
            n += 1;
        }
        n
    }

    /// A subgroup of order exactly n, canonical by least generator set; the
    /// optional filter constrains the x-coordinate of every non-identity
    /// member (used when several subgroups of the same order exist).
    pub fn subgroup_of_order(
        &self,
        pts: &[EcPoint],
        n: usize,
        x_filter: Option<Fe>,
    ) -> Option<Vec<EcPoint>> {
        if n == 0 || pts.len() % n != 0 {
            return None;
        }
        if n == 1 {
            return Some(vec![EcPoint::Infinity]);
        }
        let admits = |g: &BTreeSet<EcPoint>| {
            x_filter.is_none_or(|xv| {
                g.iter().all(|p| match p {
                    EcPoint::Infinity => true,
                    EcPoint::Affine(x, _) => *x == xv,
                })
            })
        };
        // Cyclic subgroups first, by least generator.
        for &p in pts {
            if p == EcPoint::Infinity {
                continue;
            }
            let mut g = BTreeSet::from([EcPoint::Infinity]);
            let mut acc = p;
            while acc != EcPoint::Infinity {
                g.insert(acc);
                if g.len() > n {
                    break;
                }
                acc = self.add(acc, p);
            }
            if g.len() == n && admits(&g) {
                return Some(g.into_iter().collect());
            }
        }
        // Two-generator closure for non-cyclic orders.
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                if p == EcPoint::Infinity || q == EcPoint::Infinity {
                    continue;
                }
                if let Some(g) = self.close_subgroup(&[p, q], n) {
                    if admits(&g) {
                        return Some(g.into_iter().collect());
                    }
                }
            }
        }
        None
    }

    fn close_subgroup(&self, gens: &[EcPoint], cap: usize) -> Option<BTreeSet<EcPoint>> {
        let mut g = BTreeSet::from([EcPoint::Infinity]);
        let mut frontier: Vec<EcPoint> = gens.to_vec();
        while let Some(p) = frontier.pop() {
            if g.contains(&p) {
                continue;
            }
            g.insert(p);
            if g.len() > cap {
                return None;
            }
            for &q in g.clone().iter() {
                frontier.push(self.add(p, q));
            }
        }
        if g.len() == cap {
            Some(g)
        } else {
            None
        }
    }

    /// Partition of the points into cosets of the subgroup g, each sorted,
    /// classes ordered by least member; the class equal to g is flagged.
    pub fn cosets(&self, pts: &[EcPoint], g: &[EcPoint]) -> Result<Vec<Coset>> {
        let gset: BTreeSet<EcPoint> = g.iter().copied().collect();
        for &a in g {
            for &b in g {
                if !gset.contains(&self.add(a, b)) {
                    return Err(LrcError::Curve(
                        "coset partition requested for a set that is not a subgroup".into(),
                    ));
                }
            }
        }
        let mut sorted = pts.to_vec();
        sorted.sort();
        let mut seen: BTreeSet<EcPoint> = BTreeSet::new();
        let mut out = Vec::new();
        for &p in &sorted {
            if seen.contains(&p) {
                continue;
            }
            let mut class: Vec<EcPoint> = g.iter().map(|&h| self.add(p, h)).collect();
            class.sort();
            class.dedup();
            for &m in &class {
                seen.insert(m);
            }
            let is_trivial = class.iter().any(|m| m.is_infinity());
            out.push(Coset { points: class, is_trivial });
        }
        Ok(out)
    }
}

/// One coset of a subgroup inside the rational-point group.
#[derive(Clone, Debug)]
pub struct Coset {
    pub points: Vec<EcPoint>,
    /// True for the subgroup itself (the class containing infinity).
    pub is_trivial: bool,
}

/// Verdict of checking a rational map between curves.
#[derive(Clone, Debug)]
pub struct CoverVerdict {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl CoverVerdict {
    fn record(&mut self, msg: String) {
        self.ok = false;
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }
}

/// Checks that (u, v) defines an isogeny from src onto dst with the given
/// kernel: poles exactly on the kernel, images on dst, and additivity on
/// every pair of rational points.
pub fn verify_isogeny(
    src: &WeierstrassCurve,
    dst: &WeierstrassCurve,
    u: &CurveFunction,
    v: &CurveFunction,
    kernel: &[EcPoint],
) -> Result<CoverVerdict> {
    let f = src.field();
    let pts = src.points();
    let kset: BTreeSet<EcPoint> = kernel.iter().copied().collect();
    let mut verdict = CoverVerdict { ok: true, failures: Vec::new() };
    let mut images: Vec<EcPoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        let uv = (u.eval(p)?, v.eval(p)?);
        let img = match uv {
            (Value::Pole, Value::Pole) => EcPoint::Infinity,
            (Value::Elem(a), Value::Elem(b)) => EcPoint::Affine(a, b),
            _ => {
                verdict.record(format!(
                    "inconsistent pole behaviour of the map at {}",
                    p.format(f)
                ));
                EcPoint::Infinity
            }
        };
        if img.is_infinity() != kset.contains(&p) {
            verdict.record(format!(
                "kernel mismatch at {}: maps to {}",
                p.format(f),
                img.format(f)
            ));
        }
        if !dst.contains(img) {
            verdict.record(format!(
                "image {} of {} is not on the target curve",
                img.format(f),
                p.format(f)
            ));
        }
        images.push(img);
    }
    for (i, &p) in pts.iter().enumerate() {
        for (j, &q) in pts.iter().enumerate() {
            let sum = src.add(p, q);
            let k = pts.iter().position(|&r| r == sum).unwrap();
            if images[k] != dst.add(images[i], images[j]) {
                verdict.record(format!(
                    "map is not additive on {} and {}",
                    p.format(f),
                    q.format(f)
                ));
            }
        }
    }
    Ok(verdict)
}

/// A function on a Weierstrass curve, held as (A(x) + B(x)·y) / C(x) with
/// gcd(A, B, C) = 1 and C monic. This shape is closed under field operations
/// because y² reduces along the curve equation.
#[derive(Clone, Debug)]
pub struct CurveFunction {
    curve: WeierstrassCurve,
    a: Poly,
    b: Poly,
    c: Poly,
}

impl CurveFunction {
    fn normalized(curve: &WeierstrassCurve, a: Poly, b: Poly, c: Poly) -> Result<CurveFunction> {
        if c.is_zero() {
            return Err(LrcError::Eval("curve function with zero denominator".into()));
        }
        let g = Poly::gcd(&Poly::gcd(&a, &b), &c);
        let (a, b, c) = if g.deg() > 0 {
            let (qa, ra) = a.divrem(&g);
            let (qb, rb) = b.divrem(&g);
            let (qc, rc) = c.divrem(&g);
            debug_assert!(ra.is_zero() && rb.is_zero() && rc.is_zero());
            (qa, qb, qc)
        } else {
            (a, b, c)
        };
        let f = curve.field();
        let scale = f.inv(c.lead());
        Ok(CurveFunction {
            curve: curve.clone(),
            a: a.mul_fe(scale),
            b: b.mul_fe(scale),
            c: c.mul_fe(scale),
        })
    }

    pub fn constant(curve: &WeierstrassCurve, v: Fe) -> CurveFunction {
        let f = curve.field();
        CurveFunction {
            curve: curve.clone(),
            a: Poly::constant(f, v),
            b: Poly::zero(f),
            c: Poly::constant(f, f.one()),
        }
    }

    pub fn x_fn(curve: &WeierstrassCurve) -> CurveFunction {
        let f = curve.field();
        CurveFunction {
            curve: curve.clone(),
            a: Poly::x(f),
            b: Poly::zero(f),
            c: Poly::constant(f, f.one()),
        }
    }

    pub fn y_fn(curve: &WeierstrassCurve) -> CurveFunction {
        let f = curve.field();
        CurveFunction {
            curve: curve.clone(),
            a: Poly::zero(f),
            b: Poly::constant(f, f.one()),
            c: Poly::constant(f, f.one()),
        }
    }

    /// Interprets a rational expression in x and y as a function on the curve.
    pub fn from_expr(curve: &WeierstrassCurve, e: &RatExpr) -> Result<CurveFunction> {
        Ok(match e {
            RatExpr::Const(c) => CurveFunction::constant(curve, *c),
            RatExpr::Var(Var::X) => CurveFunction::x_fn(curve),
            RatExpr::Var(Var::Y) => CurveFunction::y_fn(curve),
            RatExpr::Var(v) => {
                return Err(LrcError::Eval(format!(
                    "variable '{v}' is not a coordinate on a plane curve in x, y"
                )))
            }
            RatExpr::Neg(inner) => CurveFunction::from_expr(curve, inner)?.neg()?,
            RatExpr::Add(l, r) => CurveFunction::from_expr(curve, l)?
                .add(&CurveFunction::from_expr(curve, r)?)?,
            RatExpr::Sub(l, r) => CurveFunction::from_expr(curve, l)?
                .sub(&CurveFunction::from_expr(curve, r)?)?,
            RatExpr::Mul(l, r) => CurveFunction::from_expr(curve, l)?
                .mul(&CurveFunction::from_expr(curve, r)?)?,
            RatExpr::Div(l, r) => CurveFunction::from_expr(curve, l)?
                .div(&CurveFunction::from_expr(curve, r)?)?,
            RatExpr::Pow(inner, k) => CurveFunction::from_expr(curve, inner)?.powi(*k)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &CurveFunction) -> Result<CurveFunction> {
        let a = self.a.mul(&o.c).add(&o.a.mul(&self.c));
        let b = self.b.mul(&o.c).add(&o.b.mul(&self.c));
        let c = self.c.mul(&o.c);
        CurveFunction::normalized(&self.curve, a, b, c)
    }

    pub fn neg(&self) -> Result<CurveFunction> {
        CurveFunction::normalized(&self.curve, self.a.neg(), self.b.neg(), self.c.clone())
    }

    pub fn sub(&self, o: &CurveFunction) -> Result<CurveFunction> {
        self.add(&o.neg()?)
    }

    pub fn mul(&self, o: &CurveFunction) -> Result<CurveFunction> {
        // (A1 + B1 y)(A2 + B2 y) with y² = rhs(x) − ylin(x)·y.
        let rhs = self.curve.rhs_poly();
        let ylin = self.curve.ylin_poly();
        let bb = self.b.mul(&o.b);
        let a = self.a.mul(&o.a).add(&bb.mul(&rhs));
        let b = self
            .a
            .mul(&o.b)
            .add(&self.b.mul(&o.a))
            .sub(&bb.mul(&ylin));
        let c = self.c.mul(&o.c);
        CurveFunction::normalized(&self.curve, a, b, c)
    }

    pub fn inv(&self) -> Result<CurveFunction> {
        // 1/(A + By) = (A − B·ylin − B·y)/((A + By)(A + B·conj y)); the norm
        // in the denominator is a polynomial in x alone.
        let rhs = self.curve.rhs_poly();
        let ylin = self.curve.ylin_poly();
        let norm = self
            .a
            .mul(&self.a)
            .sub(&self.a.mul(&self.b).mul(&ylin))
            .sub(&self.b.mul(&self.b).mul(&rhs));
        if norm.is_zero() {
            return Err(LrcError::Eval("division by the zero function on a curve".into()));
        }
        let a = self.c.mul(&self.a.sub(&self.b.mul(&ylin)));
        let b = self.c.mul(&self.b).neg();
        CurveFunction::normalized(&self.curve, a, b, norm)
    }

    pub fn div(&self, o: &CurveFunction) -> Result<CurveFunction> {
        self.mul(&o.inv()?)
    }

    pub fn powi(&self, k: i64) -> Result<CurveFunction> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let f = self.curve.field();
        let mut acc = CurveFunction::constant(&self.curve, f.one());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Exact evaluation at a point of the curve. Direct substitution where the
    /// denominator is nonzero; order comparison at infinity; truncated local
    /// expansion when numerator and denominator both vanish at an affine point.
    pub fn eval(&self, p: EcPoint) -> Result<Value> {
        let f = self.curve.field();
        if self.is_zero() {
            return Ok(Value::Elem(Fe(0)));
        }
        match p {
            EcPoint::Infinity => {
                // Orders at infinity: deg-d polynomials in x have a pole of
                // order 2d; y has a pole of order 3. The x-part order is even
                // and the y-part order is odd, so they never cancel.
                let vn = if self.b.is_zero() {
                    -2 * self.a.deg() as i64
                } else if self.a.is_zero() {
                    -(2 * self.b.deg() as i64 + 3)
                } else {
                    (-2 * self.a.deg() as i64).min(-(2 * self.b.deg() as i64 + 3))
                };
                let vc = -2 * self.c.deg() as i64;
                Ok(match vn.cmp(&vc) {
                    std::cmp::Ordering::Greater => Value::Elem(Fe(0)),
                    std::cmp::Ordering::Less => Value::Pole,
                    std::cmp::Ordering::Equal => {
                        // Equal orders are both even, so the x-part leads.
                        Value::Elem(f.div(self.a.lead(), self.c.lead()))
                    }
                })
            }
            EcPoint::Affine(x0, y0) => {
                debug_assert!(self.curve.is_on(x0, y0));
                let cv = self.c.eval(x0);
                if cv != Fe(0) {
                    let nv = f.add(self.a.eval(x0), f.mul(self.b.eval(x0), y0));
                    return Ok(Value::Elem(f.div(nv, cv)));
                }
                let nv = f.add(self.a.eval(x0), f.mul(self.b.eval(x0), y0));
                if nv != Fe(0) {
                    return Ok(Value::Pole);
                }
                self.eval_by_expansion(x0, y0)
            }
        }
    }

    /// Resolves a 0/0 at an affine point by expanding numerator and
    /// denominator in a local parameter and comparing vanishing orders.
    fn eval_by_expansion(&self, x0: Fe, y0: Fe) -> Result<Value> {
        let f = self.curve.field();
        // Vanishing orders are bounded by the corresponding pole-divisor
        // degrees, so this window always reveals the leading terms.
        let bound = (2 * self.a.deg().max(0) as i64)
            .max(2 * self.b.deg().max(0) as i64 + 3)
            + 2 * self.c.deg().max(0) as i64
            + 8;
        let (xs, ys) = local_expansion(&self.curve, x0, y0, bound)?;
        let ns = Series::poly_at(&self.a, &xs).add(&Series::poly_at(&self.b, &xs).mul(&ys));
        let cs = Series::poly_at(&self.c, &xs);
        let (vn, cn) = ns.leading().ok_or_else(|| {
            LrcError::Eval("local expansion precision exhausted for the numerator".into())
        })?;
        let (vc, cc) = cs.leading().ok_or_else(|| {
            LrcError::Eval("local expansion precision exhausted for the denominator".into())
        })?;
        Ok(match vn.cmp(&vc) {
            std::cmp::Ordering::Greater => Value::Elem(Fe(0)),
            std::cmp::Ordering::Less => Value::Pole,
            std::cmp::Ordering::Equal => Value::Elem(f.div(cn, cc)),
        })
    }
}

/// Expansions of the coordinate functions in a local parameter at an affine
/// point: t = x − x0 where the tangent is not vertical, t = y − y0 at
/// two-torsion points.
fn local_expansion(
    curve: &WeierstrassCurve,
    x0: Fe,
    y0: Fe,
    prec: i64,
) -> Result<(Series, Series)> {
    let f = curve.field();
    let rhs = curve.rhs_poly();
    let two = f.from_int(2);
    let fy0 = f.add(f.mul(two, y0), f.add(f.mul(curve.a1, x0), curve.a3));
    let curve_residual = |xs: &Series, ys: &Series| {
        // y² + a1·x·y + a3·y − rhs(x), which vanishes along the curve.
        ys.mul(ys)
            .add(&xs.mul(ys).mul_fe(curve.a1))
            .add(&ys.mul_fe(curve.a3))
            .sub(&Series::poly_at(&rhs, xs))
    };
    if fy0 != Fe(0) {
        let xs = Series::exact(f, 0, vec![x0, f.one()]).truncate(prec);
        let mut ys = Series::constant(f, y0).truncate(prec);
        for _ in 0..64 {
            let residual = curve_residual(&xs, &ys);
            if residual.leading().is_none() {
                return Ok((xs, ys));
            }
            let deriv = ys
                .mul_fe(two)
                .add(&xs.mul_fe(curve.a1))
                .add(&Series::constant(f, curve.a3).truncate(prec));
            ys = ys.sub(&residual.mul(&deriv.inv()?)).truncate(prec);
        }
    } else {
        // Two-torsion: the tangent is vertical, so y − y0 is the parameter
        // and x expands by the same iteration with roles swapped.
        let rhs_dx = rhs.derivative();
        let ys = Series::exact(f, 0, vec![y0, f.one()]).truncate(prec);
        let mut xs = Series::constant(f, x0).truncate(prec);
        for _ in 0..64 {
            let residual = curve_residual(&xs, &ys);
            if residual.leading().is_none() {
                return Ok((xs, ys));
            }
            let deriv = ys.mul_fe(curve.a1).sub(&Series::poly_at(&rhs_dx, &xs));
            xs = xs.sub(&residual.mul(&deriv.inv()?)).truncate(prec);
        }
    }
    Err(LrcError::Eval(
        "local expansion did not converge (singular point?)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn f64_() -> Field {
        FieldSpec::new(2, 6, None).unwrap()
    }

    fn f32_() -> Field {
        FieldSpec::new(2, 5, None).unwrap()
    }

    /// y² + y = x³ over the 64-element field.
    fn curve_a(f: &Field) -> WeierstrassCurve {
        WeierstrassCurve::new(f, [Fe(0), Fe(0), f.one(), Fe(0), Fe(0)]).unwrap()
    }

    #[test]
    fn point_counts_on_reference_curves() {
        let f = f64_();
        assert_eq!(curve_a(&f).points().len(), 81);
        // y² + y = x³ + 1 over the same field.
        let e2 = WeierstrassCurve::new(&f, [Fe(0), Fe(0), f.one(), Fe(0), f.one()]).unwrap();
        assert_eq!(e2.points().len(), 81);
        // y² + xy = x³ + x over the 32-element field.
        let g = f32_();
        let e3 = WeierstrassCurve::new(&g, [g.one(), Fe(0), Fe(0), g.one(), Fe(0)]).unwrap();
        assert_eq!(e3.points().len(), 44);
    }

    #[test]
    fn group_law_basics() {
        let f = f64_();
        let e = curve_a(&f);
        let p = EcPoint::Affine(Fe(0), Fe(0));
        assert_eq!(e.add(p, EcPoint::Infinity), p);
        assert_eq!(e.add(p, e.neg(p)), EcPoint::Infinity);
        // Doubling (0,0) lands on (0,1): the subgroup of order 3.
        assert_eq!(e.add(p, p), EcPoint::Affine(Fe(0), f.one()));
        assert_eq!(e.mul_scalar(p, 3), EcPoint::Infinity);
        assert_eq!(e.point_order(p), 3);
        // Commutativity and associativity on a sample of triples.
        let pts = e.points();
        for i in (0..pts.len()).step_by(7) {
            for j in (0..pts.len()).step_by(11) {
                assert_eq!(e.add(pts[i], pts[j]), e.add(pts[j], pts[i]));
                for k in (0..pts.len()).step_by(13) {
                    assert_eq!(
                        e.add(e.add(pts[i], pts[j]), pts[k]),
                        e.add(pts[i], e.add(pts[j], pts[k]))
                    );
                }
            }
        }
    }

    #[test]
    fn subgroup_and_cosets() {
        let f = f64_();
        let e = curve_a(&f);
        let pts = e.points();
        let g = e.subgroup_of_order(&pts, 3, None).unwrap();
        assert_eq!(
            g,
            vec![
                EcPoint::Infinity,
                EcPoint::Affine(Fe(0), Fe(0)),
                EcPoint::Affine(Fe(0), f.one())
            ]
        );
        let classes = e.cosets(&pts, &g).unwrap();
        assert_eq!(classes.len(), 27);
        assert_eq!(classes.iter().filter(|c| c.is_trivial).count(), 1);
        assert!(classes.iter().all(|c| c.points.len() == 3));
        // Classes partition the points.
        let total: usize = classes.iter().map(|c| c.points.len()).sum();
        assert_eq!(total, 81);
    }

    #[test]
    fn subgroups_distinguished_by_x_coordinate() {
        let f = f64_();
        let e = curve_a(&f);
        let pts = e.points();
        let g0 = e.subgroup_of_order(&pts, 3, Some(Fe(0))).unwrap();
        let g1 = e.subgroup_of_order(&pts, 3, Some(f.one())).unwrap();
        assert_ne!(g0, g1);
        assert!(g1.iter().all(|p| match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, _) => *x == f.one(),
        }));
        // No order-3 subgroup has all nontrivial x-coordinates equal to a²¹
        // unless such points exist; a bogus filter returns None.
        assert!(e.subgroup_of_order(&pts, 5, None).is_none());
    }

    #[test]
    fn quotient_map_verifies_as_isogeny() {
        let f = f64_();
        let e = curve_a(&f);
        let e2 = WeierstrassCurve::new(&f, [Fe(0), Fe(0), f.one(), Fe(0), f.one()]).unwrap();
        let u = CurveFunction::from_expr(&e, &RatExpr::parse("x + 1/x^2", &f).unwrap()).unwrap();
        let v = CurveFunction::from_expr(&e, &RatExpr::parse("y + 1/x^3", &f).unwrap()).unwrap();
        let g = e.subgroup_of_order(&e.points(), 3, None).unwrap();
        let verdict = verify_isogeny(&e, &e2, &u, &v, &g).unwrap();
        assert!(verdict.ok, "failures: {:?}", verdict.failures);
        // The same map against a wrong target equation must fail.
        let wrong = WeierstrassCurve::new(&f, [Fe(0), Fe(0), f.one(), f.one(), Fe(0)]).unwrap();
        let verdict = verify_isogeny(&e, &wrong, &u, &v, &g).unwrap();
        assert!(!verdict.ok);
    }

    #[test]
    fn function_evaluation_with_removable_singularities() {
        let f = f64_();
        let e = curve_a(&f);
        let origin = EcPoint::Affine(Fe(0), Fe(0));
        let at = |src: &str, p: EcPoint| {
            CurveFunction::from_expr(&e, &RatExpr::parse(src, &f).unwrap())
                .unwrap()
                .eval(p)
                .unwrap()
        };
        // Near (0,0): y vanishes to order 3 and x to order 1.
        assert_eq!(at("y/x", origin), Value::Elem(Fe(0)));
        assert_eq!(at("x/y", origin), Value::Pole);
        assert_eq!(at("y^2/x^3", origin), Value::Elem(Fe(0)));
        assert_eq!(at("y/x^3", origin), Value::Elem(f.one()));
        assert_eq!(at("x^3/y", origin), Value::Elem(f.one()));
        // At infinity: x has a double pole, y a triple pole.
        assert_eq!(at("x + 1/x^2", EcPoint::Infinity), Value::Pole);
        assert_eq!(at("x/y", EcPoint::Infinity), Value::Elem(Fe(0)));
        assert_eq!(at("x^3/y^2", EcPoint::Infinity), Value::Elem(f.one()));
        assert_eq!(at("1/x", EcPoint::Infinity), Value::Elem(Fe(0)));
    }

    #[test]
    fn quotient_values_satisfy_target_equation_everywhere() {
        let f = f64_();
        let e = curve_a(&f);
        let u = CurveFunction::from_expr(&e, &RatExpr::parse("x + 1/x^2", &f).unwrap()).unwrap();
        let v = CurveFunction::from_expr(&e, &RatExpr::parse("y + 1/x^3", &f).unwrap()).unwrap();
        for p in e.points() {
            match (u.eval(p).unwrap(), v.eval(p).unwrap()) {
                (Value::Elem(a), Value::Elem(b)) => {
                    // v² + v = u³ + 1 must hold at every non-kernel point.
                    let lhs = f.add(f.mul(b, b), b);
                    let rhs = f.add(f.mul(a, f.mul(a, a)), f.one());
                    assert_eq!(lhs, rhs, "at {}", p.format(&f));
                }
                (Value::Pole, Value::Pole) => {}
                other => panic!("mixed pole pattern {:?} at {}", other, p.format(&f)),
            }
        }
    }

    #[test]
    fn plane_curve_enumeration() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        // A line in the projective plane has q + 1 points.
        let line = RatExpr::parse("x", &f).unwrap();
        assert_eq!(enumerate_plane_curve(&f, &line).unwrap().len(), 5);
        // Non-homogeneous input is rejected.
        let bad = RatExpr::parse("x^2 + y", &f).unwrap();
        assert!(enumerate_plane_curve(&f, &bad).is_err());
        // Projective plane sizes: q² + q + 1.
        assert_eq!(proj_points(&f, 3).len(), 21);
        assert_eq!(proj_points(&f, 4).len(), 85);
    }

    #[test]
    fn singular_curve_rejected() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        // y² = x³ is singular.
        assert!(WeierstrassCurve::new(&f, [Fe(0); 5]).is_err());
    }
}
