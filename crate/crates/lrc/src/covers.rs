//! Fibers of degree-(r+1) covering maps and the data a locally recoverable
//! code needs from them.
//!
//! Every constructor in this module produces a [`CoverData`]: a list of
//! fibers, each carrying
//!
//! * the `r+1` evaluated rows of the local-recovery basis (`e_rows`), and
//! * the `t` values of the message basis at the fiber's base point (`f_vals`).
//!
//! Local recovery inside a fiber works exactly when every `r x r` submatrix of
//! the `(r+1) x r` matrix `e_rows` is invertible; [`CoverData::recovery_failures`]
//! reports the fibers where that fails. Constructors never abort on a pole of
//! a basis function at a needed point — they record the problem in
//! [`Fiber::issue`] so that deliberately broken configurations can be
//! inspected.
//!
//! The designed-distance parameter `delta` is part of each family's
//! definition (a divisor degree), so each constructor computes it from its own
//! formula rather than re-deriving it downstream.

use std::collections::BTreeSet;

use crate::analysis;
use crate::curves::{CurveFunction, EcPoint, ProjPoint, WeierstrassCurve};
use crate::exprs::Value;
use crate::gf::{Fe, Field};
use crate::mpoly::{assign_xyz, MPoly};
use crate::poly::Poly;
use crate::{LrcError, Result};

fn cover_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(LrcError::Cover(msg.into()))
}

/// One fiber of a cover: `r+1` points upstairs over one base point.
#[derive(Clone, Debug)]
pub struct Fiber {
    /// Display label of the base point.
    pub base: String,
    /// Display labels of the fiber members, in canonical order.
    pub members: Vec<String>,
    /// `(r+1) x r` matrix: row `u` holds the recovery-basis values at member `u`.
    pub e_rows: Vec<Vec<Fe>>,
    /// The `t` message-basis values at the base point.
    pub f_vals: Vec<Fe>,
    /// Set when some basis function could not be evaluated (pole at a needed
    /// point); the corresponding entries hold placeholder zeros.
    pub issue: Option<String>,
}

/// Everything a code construction needs from a cover.
#[derive(Clone, Debug)]
pub struct CoverData {
    pub field: Field,
    /// Locality: fibers have `r + 1` members.
    pub r: usize,
    /// Number of message-basis functions.
    pub t: usize,
    /// Degree of the divisor bounding codeword zeros; the designed distance
    /// of the resulting code is `n - delta`.
    pub delta: i64,
    pub fibers: Vec<Fiber>,
}

impl CoverData {
    /// Code length: total number of evaluation points.
    pub fn n(&self) -> usize {
        self.fibers.len() * (self.r + 1)
    }

    /// Number of fibers.
    pub fn s(&self) -> usize {
        self.fibers.len()
    }

    pub fn designed_distance(&self) -> i64 {
        self.n() as i64 - self.delta
    }

    /// Checks structural invariants: consistent shapes and distinct member
    /// labels. Recorded issues are allowed here; they surface through
    /// [`CoverData::recovery_failures`].
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return cover_err("locality r must be at least 1");
        }
        if self.t == 0 {
            return cover_err("message basis must be nonempty (t >= 1)");
        }
        if self.fibers.is_empty() {
            return cover_err("cover has no fibers");
        }
        for fb in &self.fibers {
            if fb.members.len() != self.r + 1 {
                return cover_err(format!(
                    "fiber at {} has {} members, expected {}",
                    fb.base,
                    fb.members.len(),
                    self.r + 1
                ));
            }
            if fb.e_rows.len() != self.r + 1 || fb.e_rows.iter().any(|row| row.len() != self.r) {
                return cover_err(format!(
                    "fiber at {} has a recovery matrix that is not {} x {}",
                    fb.base,
                    self.r + 1,
                    self.r
                ));
            }
            if fb.f_vals.len() != self.t {
                return cover_err(format!(
                    "fiber at {} carries {} message values, expected {}",
                    fb.base,
                    fb.f_vals.len(),
                    self.t
                ));
            }
            let distinct: BTreeSet<&str> = fb.members.iter().map(|s| s.as_str()).collect();
            if distinct.len() != fb.members.len() {
                return cover_err(format!("fiber at {} repeats a member point", fb.base));
            }
        }
        Ok(())
    }

    /// Returns one message per fiber on which local recovery cannot work:
    /// either a recorded evaluation issue, or a singular `r x r` submatrix of
    /// the recovery matrix (each singular submatrix corresponds to one member
    /// whose erasure cannot be repaired from the rest of the fiber).
    pub fn recovery_failures(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for fb in &self.fibers {
            if let Some(issue) = &fb.issue {
                out.push(format!("fiber at {}: {}", fb.base, issue));
                continue;
            }
            let mut bad = Vec::new();
            for omit in 0..=self.r {
                let minor: Vec<Vec<Fe>> = fb
                    .e_rows
                    .iter()
                    .enumerate()
                    .filter(|(u, _)| *u != omit)
                    .map(|(_, row)| row.clone())
                    .collect();
                if analysis::determinant(&self.field, &minor)? == self.field.zero() {
                    bad.push(fb.members[omit].clone());
                }
            }
            if !bad.is_empty() {
                out.push(format!(
                    "fiber at {}: unrecoverable members {}",
                    fb.base,
                    bad.join(", ")
                ));
            }
        }
        Ok(out)
    }
}

/// Tracks how points of the base curve sorted into fibers for the covers that
/// are defined point-by-point (Kummer and cubic-normal-form covers).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitCount {
    /// Points examined.
    pub candidates: usize,
    /// Points whose fiber is fully rational (these become fibers).
    pub split: usize,
    /// Points where the defining function has a zero or pole.
    pub excluded: usize,
    /// Points where the fiber equation has no full set of rational roots.
    pub non_split: usize,
}

/// A function on an elliptic curve that the cover constructors can evaluate:
/// either a rational function in x and y, or a pole-order ladder translated to
/// sit at a chosen point.
#[derive(Clone, Debug)]
pub enum EcFn {
    Rational(CurveFunction),
    /// The standard function with a pole of exact order `order` at `at` (and
    /// no other pole): the order-o monomial in x, y evaluated at `p - at`.
    Shifted {
        curve: WeierstrassCurve,
        at: EcPoint,
        order: u32,
    },
}

impl EcFn {
    pub fn eval(&self, p: EcPoint) -> Result<Value> {
        match self {
            EcFn::Rational(f) => f.eval(p),
            EcFn::Shifted { curve, at, order } => {
                if *order == 0 {
                    return Ok(Value::Elem(curve.field().one()));
                }
                let s = curve.add(p, curve.neg(*at));
                match s {
                    EcPoint::Infinity => Ok(Value::Pole),
                    EcPoint::Affine(x, y) => {
                        let f = curve.field();
                        let v = if *order % 2 == 0 {
                            f.pow(x, u64::from(*order) / 2)
                        } else {
                            f.mul(f.pow(x, (u64::from(*order) - 3) / 2), y)
                        };
                        Ok(Value::Elem(v))
                    }
                }
            }
        }
    }
}

/// The first `count` functions with poles only at `at`, by increasing pole
/// order 0, 2, 3, 4, ...: the translated basis of the spaces L(o * at).
pub fn monomial_ladder(curve: &WeierstrassCurve, at: EcPoint, count: usize) -> Vec<EcFn> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let order = if i == 0 { 0 } else { (i + 1) as u32 };
        out.push(EcFn::Shifted {
            curve: curve.clone(),
            at,
            order,
        });
    }
    out
}

/// Applies the rational map (u, v) to a point: infinity and common poles go
/// to infinity, finite images must land on `dst`.
pub fn map_point(
    dst: &WeierstrassCurve,
    u: &CurveFunction,
    v: &CurveFunction,
    p: EcPoint,
) -> Result<EcPoint> {
    if p.is_infinity() {
        return Ok(EcPoint::Infinity);
    }
    let uu = u.eval(p)?;
    let vv = v.eval(p)?;
    match (uu, vv) {
        (Value::Pole, Value::Pole) => Ok(EcPoint::Infinity),
        (Value::Elem(a), Value::Elem(b)) => {
            let q = EcPoint::Affine(a, b);
            if !dst.contains(q) {
                return cover_err(format!(
                    "image {} of {} is not on the target curve",
                    q.format(dst.field()),
                    p.format(dst.field())
                ));
            }
            Ok(q)
        }
        _ => cover_err(format!(
            "map has inconsistent pole behaviour at {}",
            p.format(dst.field())
        )),
    }
}

fn note_issue(issue: &mut Option<String>, msg: String) {
    if issue.is_none() {
        *issue = Some(msg);
    }
}

/// Evaluates `f` at `p`, recording a pole as an issue and substituting zero.
fn eval_or_issue(f: &EcFn, p: EcPoint, what: &str, field: &Field, issue: &mut Option<String>) -> Fe {
    match f.eval(p) {
        Ok(Value::Elem(v)) => v,
        Ok(Value::Pole) => {
            note_issue(issue, format!("{} has a pole at {}", what, p.format(field)));
            field.zero()
        }
        Err(e) => {
            note_issue(issue, format!("{} failed at {}: {}", what, p.format(field), e));
            field.zero()
        }
    }
}

fn check_basis_len(fns: &[EcFn], want: usize, what: &str) -> Result<()> {
    if fns.len() != want {
        return cover_err(format!(
            "{} basis has {} functions, expected {}",
            what,
            fns.len(),
            want
        ));
    }
    Ok(())
}

/// Builds the cover data for a quotient isogeny phi: src -> dst with the given
/// kernel. Evaluation points are the points of `src` outside the kernel,
/// grouped by kernel coset; the base of each fiber is the common image of its
/// members under (u, v).
///
/// `e_fns` defaults to the pole-order ladder at infinity on `src` (r
/// functions); `f_fns` to the ladder at infinity on `dst` (t functions). The
/// divisor degree is `t(r+1) + r`.
pub fn elliptic_quotient_cover(
    src: &WeierstrassCurve,
    dst: &WeierstrassCurve,
    kernel: &[EcPoint],
    u: &CurveFunction,
    v: &CurveFunction,
    e_fns: Option<Vec<EcFn>>,
    f_fns: Option<Vec<EcFn>>,
    t: usize,
) -> Result<CoverData> {
    if kernel.len() < 2 {
        return cover_err("kernel must have at least two points");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let r = kernel.len() - 1;
    let field = src.field().clone();
    let e_fns = e_fns.unwrap_or_else(|| monomial_ladder(src, EcPoint::Infinity, r));
    let f_fns = f_fns.unwrap_or_else(|| monomial_ladder(dst, EcPoint::Infinity, t));
    check_basis_len(&e_fns, r, "recovery")?;
    check_basis_len(&f_fns, t, "message")?;

    let pts = src.points();
    let cosets = src.cosets(&pts, kernel)?;
    let mut fibers = Vec::new();
    for coset in &cosets {
        if coset.is_trivial {
            continue;
        }
        fibers.push(build_coset_fiber(
            src, dst, u, v, &coset.points, &e_fns, &f_fns, &field,
        )?);
    }
    let delta = (t * (r + 1) + r) as i64;
    let data = CoverData {
        field,
        r,
        t,
        delta,
        fibers,
    };
    data.validate()?;
    Ok(data)
}

/// Degree of the bounding divisor for the every-point quotient construction.
pub fn variant_divisor_degree(r: usize, t: usize) -> i64 {
    let rp = r.div_ceil(2);
    let tp = t.div_ceil(2);
    (2 * rp + 2 * tp * (r + 1)) as i64
}

/// Like [`elliptic_quotient_cover`] but evaluates at every point of `src`,
/// including the kernel itself (whose base is the image point at infinity).
/// The recovery basis must be supplied (its functions must be regular on the
/// whole curve for the construction to succeed; poles are recorded as
/// issues). `f_fns` defaults to the pole ladder at the first point of `dst`
/// that is not a base. The divisor degree is
/// `2*ceil(r/2) + 2*ceil(t/2)*(r+1)`.
pub fn elliptic_variant_cover(
    src: &WeierstrassCurve,
    dst: &WeierstrassCurve,
    kernel: &[EcPoint],
    u: &CurveFunction,
    v: &CurveFunction,
    e_fns: Option<Vec<EcFn>>,
    f_fns: Option<Vec<EcFn>>,
    t: usize,
) -> Result<CoverData> {
    if kernel.len() < 2 {
        return cover_err("kernel must have at least two points");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let r = kernel.len() - 1;
    let field = src.field().clone();
    let e_fns = e_fns.unwrap_or_else(|| monomial_ladder(src, EcPoint::Infinity, r));
    check_basis_len(&e_fns, r, "recovery")?;

    let pts = src.points();
    let cosets = src.cosets(&pts, kernel)?;

    // Bases first, so the default message ladder can avoid all of them.
    let mut bases = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let mut base = None;
        for &p in &coset.points {
            let img = map_point(dst, u, v, p)?;
            match base {
                None => base = Some(img),
                Some(b) if b == img => {}
                Some(b) => {
                    return cover_err(format!(
                        "coset of {} maps to both {} and {}; kernel does not match the map",
                        coset.points[0].format(&field),
                        b.format(&field),
                        img.format(&field)
                    ));
                }
            }
        }
        bases.push(base.expect("cosets are nonempty"));
    }

    let f_fns = match f_fns {
        Some(f) => f,
        None => {
            let taken: BTreeSet<EcPoint> = bases.iter().copied().collect();
            let anchor = dst
                .points()
                .into_iter()
                .find(|p| !taken.contains(p))
                .ok_or_else(|| {
                    LrcError::Cover("no point of the target curve is free of bases".into())
                })?;
            monomial_ladder(dst, anchor, t)
        }
    };
    check_basis_len(&f_fns, t, "message")?;

    let mut fibers = Vec::new();
    for (coset, &base) in cosets.iter().zip(&bases) {
        let mut issue = None;
        let mut e_rows = Vec::with_capacity(r + 1);
        let mut members = Vec::with_capacity(r + 1);
        for &p in &coset.points {
            members.push(p.format(&field));
            e_rows.push(
                e_fns
                    .iter()
                    .map(|f| eval_or_issue(f, p, "a recovery function", &field, &mut issue))
                    .collect(),
            );
        }
        let f_vals = f_fns
            .iter()
            .map(|f| eval_or_issue(f, base, "a message function", &field, &mut issue))
            .collect();
        fibers.push(Fiber {
            base: base.format(&field),
            members,
            e_rows,
            f_vals,
            issue,
        });
    }

    let data = CoverData {
        field,
        r,
        t,
        delta: variant_divisor_degree(r, t),
        fibers,
    };
    data.validate()?;
    Ok(data)
}

fn build_coset_fiber(
    src: &WeierstrassCurve,
    dst: &WeierstrassCurve,
    u: &CurveFunction,
    v: &CurveFunction,
    coset: &[EcPoint],
    e_fns: &[EcFn],
    f_fns: &[EcFn],
    field: &Field,
) -> Result<Fiber> {
    let _ = src;
    let mut base = None;
    for &p in coset {
        let img = map_point(dst, u, v, p)?;
        match base {
            None => base = Some(img),
            Some(b) if b == img => {}
            Some(b) => {
                return cover_err(format!(
                    "coset of {} maps to both {} and {}; kernel does not match the map",
                    coset[0].format(field),
                    b.format(field),
                    img.format(field)
                ));
            }
        }
    }
    let base = base.expect("cosets are nonempty");
    if base.is_infinity() {
        return cover_err(format!(
            "coset of {} maps to infinity; it belongs to the kernel",
            coset[0].format(field)
        ));
    }
    let mut issue = None;
    let mut e_rows = Vec::with_capacity(coset.len());
    let mut members = Vec::with_capacity(coset.len());
    for &p in coset {
        members.push(p.format(field));
        e_rows.push(
            e_fns
                .iter()
                .map(|f| eval_or_issue(f, p, "a recovery function", field, &mut issue))
                .collect(),
        );
    }
    let f_vals = f_fns
        .iter()
        .map(|f| eval_or_issue(f, base, "a message function", field, &mut issue))
        .collect();
    Ok(Fiber {
        base: base.format(field),
        members,
        e_rows,
        f_vals,
        issue,
    })
}

/// Cover of Kummer type: over a base point Q the fiber is cut out by
/// `z^(r+1) = h(Q)`. A candidate point contributes a fiber exactly when h is
/// finite and nonzero there and the fiber equation has all `r+1` roots in the
/// field (which requires `r+1` to divide `q - 1`). Recovery rows are the
/// powers `(1, z, ..., z^(r-1))` of each root; the divisor degree is
/// `(r+1)(t+1)`.
pub fn kummer_cover(
    base_curve: &WeierstrassCurve,
    candidates: &[EcPoint],
    h: &CurveFunction,
    r: usize,
    t: usize,
    f_fns: Option<Vec<EcFn>>,
) -> Result<(CoverData, SplitCount)> {
    let field = base_curve.field().clone();
    if r == 0 {
        return cover_err("locality r must be at least 1");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let deg = (r + 1) as u64;
    if (field.order() - 1) % deg != 0 {
        return cover_err(format!(
            "a cover of degree {} needs {} to divide q - 1 = {}",
            deg,
            deg,
            field.order() - 1
        ));
    }
    let mut count = SplitCount {
        candidates: candidates.len(),
        split: 0,
        excluded: 0,
        non_split: 0,
    };
    let mut split = Vec::new();
    for &q in candidates {
        let c = match h.eval(q)? {
            Value::Pole => {
                count.excluded += 1;
                continue;
            }
            Value::Elem(c) if c == field.zero() => {
                count.excluded += 1;
                continue;
            }
            Value::Elem(c) => c,
        };
        let roots = field.nth_roots(c, deg);
        if roots.len() != r + 1 {
            debug_assert!(roots.is_empty());
            count.non_split += 1;
            continue;
        }
        count.split += 1;
        split.push((q, roots));
    }
    let f_fns = default_ladder_avoiding(base_curve, f_fns, &split, t)?;
    check_basis_len(&f_fns, t, "message")?;

    let mut fibers = Vec::new();
    for (q, roots) in &split {
        fibers.push(root_fiber(&field, *q, roots, r, &f_fns)?);
    }
    let data = CoverData {
        field,
        r,
        t,
        delta: ((r + 1) * (t + 1)) as i64,
        fibers,
    };
    data.validate()?;
    Ok((data, count))
}

/// Default message basis for the point-by-point covers: the pole ladder at
/// the first curve point that is not a base, so that its poles avoid every
/// fiber. (The point at infinity qualifies unless it splits itself.)
fn default_ladder_avoiding(
    base_curve: &WeierstrassCurve,
    f_fns: Option<Vec<EcFn>>,
    split: &[(EcPoint, Vec<Fe>)],
    t: usize,
) -> Result<Vec<EcFn>> {
    if let Some(f) = f_fns {
        return Ok(f);
    }
    let taken: BTreeSet<EcPoint> = split.iter().map(|(q, _)| *q).collect();
    let anchor = base_curve
        .points()
        .into_iter()
        .find(|p| !taken.contains(p))
        .ok_or_else(|| {
            LrcError::Cover("every rational point splits; no anchor for the message basis".into())
        })?;
    Ok(monomial_ladder(base_curve, anchor, t))
}

/// Degree-3 cover in cubic normal form: over a base point Q the fiber is cut
/// out by `z^3 - 3 f(Q) z^2 - 3 (f(Q) + 1) z - 1 = 0` (characteristic not 3).
/// A candidate contributes a fiber exactly when f is finite there and the
/// cubic has three distinct roots in the field. Recovery rows are `(1, z)`;
/// the divisor degree is `3(t+1)`.
pub fn cubic_normalform_cover(
    base_curve: &WeierstrassCurve,
    candidates: &[EcPoint],
    f: &CurveFunction,
    t: usize,
    f_fns: Option<Vec<EcFn>>,
) -> Result<(CoverData, SplitCount)> {
    let field = base_curve.field().clone();
    if field.characteristic() == 3 {
        return cover_err("the cubic normal form is not defined in characteristic 3");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let r = 2usize;
    let elems: Vec<Fe> = field.elements().collect();
    let three = field.from_int(3);
    let mut count = SplitCount {
        candidates: candidates.len(),
        split: 0,
        excluded: 0,
        non_split: 0,
    };
    let mut split = Vec::new();
    for &q in candidates {
        let c = match f.eval(q)? {
            Value::Pole => {
                count.excluded += 1;
                continue;
            }
            Value::Elem(c) => c,
        };
        // z^3 - 3c z^2 - 3(c+1) z - 1
        let m2 = field.neg(field.mul(three, c));
        let m1 = field.neg(field.mul(three, field.add(c, field.one())));
        let m0 = field.neg(field.one());
        let mut roots = Vec::new();
        for &z in &elems {
            let v = field.add(
                field.mul(field.add(field.mul(field.add(z, m2), z), m1), z),
                m0,
            );
            if v == field.zero() {
                roots.push(z);
            }
        }
        if roots.len() != 3 {
            count.non_split += 1;
            continue;
        }
        count.split += 1;
        split.push((q, roots));
    }
    let f_fns = default_ladder_avoiding(base_curve, f_fns, &split, t)?;
    check_basis_len(&f_fns, t, "message")?;
    let mut fibers = Vec::new();
    for (q, roots) in &split {
        fibers.push(root_fiber(&field, *q, roots, r, &f_fns)?);
    }
    let data = CoverData {
        field,
        r,
        t,
        delta: (3 * (t + 1)) as i64,
        fibers,
    };
    data.validate()?;
    Ok((data, count))
}

fn root_fiber(
    field: &Field,
    q: EcPoint,
    roots: &[Fe],
    r: usize,
    f_fns: &[EcFn],
) -> Result<Fiber> {
    let base = q.format(field);
    let mut issue = None;
    let members = roots
        .iter()
        .map(|&z| format!("{} @ z={}", base, field.format_elem(z)))
        .collect();
    let e_rows = roots
        .iter()
        .map(|&z| (0..r).map(|i| field.pow(z, i as u64)).collect())
        .collect();
    let f_vals = f_fns
        .iter()
        .map(|f| eval_or_issue(f, q, "a message function", field, &mut issue))
        .collect();
    Ok(Fiber {
        base,
        members,
        e_rows,
        f_vals,
        issue,
    })
}

/// The quotient of the curve `y^4 + y = x^5` over F16 (field of 16 elements,
/// default modulus) by the order-3 action `(x, y) -> (zeta x, zeta^2 y)`. The
/// quotient is `z^2 + z = w^5` with `w = y / x^2`, `z = y / x^5`; the two
/// fixed points (infinity and the origin) are left out, the remaining 63
/// points fall into 21 fibers of size 3. Recovery rows are `(1, y)`; the
/// message functions are the `t` functions `1, 1/w, 1/w^2, z/w^3, 1/w^3, ...`
/// of increasing pole order, and the divisor degree is `3t + 8`. Requires
/// `3 <= t <= 18`.
pub fn hermitian_quotient_cover(t: usize) -> Result<CoverData> {
    if !(3..=18).contains(&t) {
        return cover_err(format!(
            "the Hermitian quotient supports 3 <= t <= 18, got {}",
            t
        ));
    }
    let field = crate::gf::FieldSpec::new(2, 4, None)?;
    let r = 2usize;
    let elems: Vec<Fe> = field.elements().collect();

    // Affine points of y^4 + y = x^5.
    let mut on_curve = Vec::new();
    for &x in &elems {
        let rhs = field.pow(x, 5);
        for &y in &elems {
            if field.add(field.pow(y, 4), y) == rhs {
                on_curve.push((x, y));
            }
        }
    }
    if on_curve.len() != 64 {
        return cover_err(format!(
            "expected 64 affine points on y^4 + y = x^5, found {}",
            on_curve.len()
        ));
    }

    let zeta = *field
        .roots_of_unity(3)?
        .iter()
        .find(|&&z| z != field.one())
        .ok_or_else(|| LrcError::Cover("no primitive cube root of unity in F16".into()))?;
    let zeta2 = field.mul(zeta, zeta);

    let fmt_pt =
        |x: Fe, y: Fe| format!("({}, {})", field.format_elem(x), field.format_elem(y));

    // Message ladder on the quotient, by increasing pole order at its point
    // at infinity: 1, 1/w, 1/w^2, z/w^3, 1/w^3, z/w^4, 1/w^4, ...
    let f_value = |j: usize, w: Fe, z: Fe| -> Result<Fe> {
        if w == field.zero() {
            return cover_err("message ladder hit w = 0");
        }
        let inv_w = field.inv(w);
        Ok(match j {
            1 => field.one(),
            2 => inv_w,
            3 => field.mul(inv_w, inv_w),
            j if j % 2 == 0 => field.mul(z, field.pow(inv_w, (j as u64 + 2) / 2)),
            j => field.pow(inv_w, (j as u64 + 1) / 2),
        })
    };

    let mut visited: BTreeSet<(Fe, Fe)> = BTreeSet::new();
    let mut fibers = Vec::new();
    for &(x, y) in &on_curve {
        if (x, y) == (field.zero(), field.zero()) || visited.contains(&(x, y)) {
            continue;
        }
        let orbit_raw = [
            (x, y),
            (field.mul(zeta, x), field.mul(zeta2, y)),
            (field.mul(zeta2, x), field.mul(zeta, y)),
        ];
        let mut orbit = orbit_raw.to_vec();
        orbit.sort();
        orbit.dedup();
        if orbit.len() != 3 {
            return cover_err("group action has an unexpected fixed point");
        }
        for &m in &orbit {
            visited.insert(m);
        }

        let members = orbit.iter().map(|&(a, b)| fmt_pt(a, b)).collect();
        let e_rows = orbit.iter().map(|&(_, b)| vec![field.one(), b]).collect();
        let (base, f_vals) = if x == field.zero() {
            // The orbit {(0, y) : y^3 = 1} lies over the quotient's point at
            // infinity, where every ladder function past the constant
            // vanishes (w and z both have poles there, of orders 2 and 5).
            let mut f_vals = vec![field.zero(); t];
            f_vals[0] = field.one();
            ("inf".to_string(), f_vals)
        } else {
            let x2 = field.mul(x, x);
            let w = field.div(y, x2);
            let z = field.div(y, field.mul(field.pow(x, 3), x2));
            // The base must satisfy the quotient equation z^2 + z = w^5.
            if field.add(field.mul(z, z), z) != field.pow(w, 5) {
                return cover_err("quotient image is not on z^2 + z = w^5");
            }
            let mut f_vals = Vec::with_capacity(t);
            for j in 1..=t {
                f_vals.push(f_value(j, w, z)?);
            }
            (fmt_pt(w, z), f_vals)
        };
        fibers.push(Fiber {
            base,
            members,
            e_rows,
            f_vals,
            issue: None,
        });
    }

    if fibers.len() != 21 {
        return cover_err(format!("expected 21 fibers, found {}", fibers.len()));
    }
    let bases: BTreeSet<&str> = fibers.iter().map(|f| f.base.as_str()).collect();
    if bases.len() != fibers.len() {
        return cover_err("two distinct orbits share a base point");
    }

    let data = CoverData {
        field,
        r,
        t,
        delta: (3 * t + 8) as i64,
        fibers,
    };
    data.validate()?;
    Ok(data)
}

/// A ladder of functions on a smooth conic with a single pole: u = l1/l2 where
/// l2 is the secant line through two conic points outside the allowed image
/// set (the pole ends up at one of them) and l1 a secant through one of them
/// and a third point. Then u has divisor (A) - (Q') on the conic, so the
/// powers 1, u, ..., u^(t-1) have poles only at Q', which is never a base
/// point.
#[derive(Clone, Debug)]
pub struct ConicLadder {
    field: Field,
    ell1: [Fe; 3],
    ell2: [Fe; 3],
    /// The common pole of the ladder (outside the image of the cover).
    pub pole: ProjPoint,
    /// The auxiliary point outside the image used to form the secants.
    pub aux: ProjPoint,
}

impl ConicLadder {
    /// `conic` must be a homogeneous quadratic in x, y, z; `image` the set of
    /// base points the ladder must be finite on. Picks the first two conic
    /// points outside `image` (pole and secant anchor) and the first further
    /// conic point to complete the second secant.
    pub fn new(field: &Field, conic: &MPoly, image: &BTreeSet<ProjPoint>) -> Result<ConicLadder> {
        let pts: Vec<ProjPoint> = crate::curves::proj_points(field, 3)
            .into_iter()
            .filter(|p| {
                let c = p.coords();
                conic.eval(&assign_xyz(c[0], c[1], c[2])) == field.zero()
            })
            .collect();
        let outside: Vec<&ProjPoint> = pts.iter().filter(|p| !image.contains(p)).collect();
        if outside.len() < 2 {
            return cover_err(format!(
                "need two conic points outside the image, found {}",
                outside.len()
            ));
        }
        let pole = outside[0].clone();
        let anchor = outside[1].clone();
        let third = pts
            .iter()
            .find(|p| **p != pole && **p != anchor)
            .ok_or_else(|| LrcError::Cover("conic has fewer than three rational points".into()))?
            .clone();
        let cross = |a: &ProjPoint, b: &ProjPoint| -> [Fe; 3] {
            let (p, q) = (a.coords(), b.coords());
            let det2 = |i: usize, j: usize| {
                field.sub(field.mul(p[i], q[j]), field.mul(p[j], q[i]))
            };
            [det2(1, 2), field.neg(det2(0, 2)), det2(0, 1)]
        };
        Ok(ConicLadder {
            field: field.clone(),
            ell1: cross(&anchor, &third),
            ell2: cross(&anchor, &pole),
            pole,
            aux: anchor,
        })
    }

    /// The value of u at a conic point, or a pole.
    pub fn u_at(&self, p: &ProjPoint) -> Value {
        let dot = |l: &[Fe; 3]| {
            let c = p.coords();
            let f = &self.field;
            f.add(f.add(f.mul(l[0], c[0]), f.mul(l[1], c[1])), f.mul(l[2], c[2]))
        };
        let den = dot(&self.ell2);
        if den == self.field.zero() {
            return Value::Pole;
        }
        let num = dot(&self.ell1);
        Value::Elem(self.field.div(num, den))
    }

    /// The ladder values (1, u, ..., u^(t-1)) at a base point.
    pub fn values(&self, base: &ProjPoint, t: usize) -> Result<Vec<Fe>> {
        let u = match self.u_at(base) {
            Value::Elem(v) => v,
            Value::Pole => {
                return cover_err(format!(
                    "ladder has a pole at the base point {}",
                    base.format(&self.field)
                ));
            }
        };
        Ok((0..t).map(|j| self.field.pow(u, j as u64)).collect())
    }
}

/// Quotient of the plane quartic `f(x^2, y^2, z^2) = 0` (odd characteristic)
/// by the sign-change action on x and y. Evaluation points are the points
/// with all coordinates nonzero, in orbits {(±a, ±b)} of size four over the
/// conic point [a^2 : b^2 : 1] of `f = 0`. Recovery rows are `(1, x, y)`; the
/// message functions are powers of a conic secant quotient with pole outside
/// the image of the quartic, and the divisor degree is `4t`.
pub fn v4_quartic_cover(field: &Field, conic: &MPoly, t: usize) -> Result<CoverData> {
    if field.characteristic() == 2 {
        return cover_err("the sign-change quartic needs odd characteristic");
    }
    check_conic_shape(field, conic)?;
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let one = field.one();
    let elems: Vec<Fe> = field.elements().collect();

    // All points of the quartic, and their images on the conic.
    let quartic_pts: Vec<ProjPoint> = crate::curves::proj_points(field, 3)
        .into_iter()
        .filter(|p| {
            let c = p.coords();
            let sq = |v: Fe| field.mul(v, v);
            conic.eval(&assign_xyz(sq(c[0]), sq(c[1]), sq(c[2]))) == field.zero()
        })
        .collect();
    let mut image = BTreeSet::new();
    for p in &quartic_pts {
        let c = p.coords();
        let sq = |v: Fe| field.mul(v, v);
        image.insert(ProjPoint::new(field, vec![sq(c[0]), sq(c[1]), sq(c[2])])?);
    }
    let ladder = ConicLadder::new(field, conic, &image)?;

    let mut visited: BTreeSet<(Fe, Fe)> = BTreeSet::new();
    let mut fibers = Vec::new();
    for &a in &elems {
        if a == field.zero() {
            continue;
        }
        for &b in &elems {
            if b == field.zero() || visited.contains(&(a, b)) {
                continue;
            }
            let sq = |v: Fe| field.mul(v, v);
            if conic.eval(&assign_xyz(sq(a), sq(b), one)) != field.zero() {
                continue;
            }
            let mut orbit = vec![
                (a, b),
                (a, field.neg(b)),
                (field.neg(a), b),
                (field.neg(a), field.neg(b)),
            ];
            orbit.sort();
            orbit.dedup();
            if orbit.len() != 4 {
                return cover_err("sign-change orbit is degenerate");
            }
            for &m in &orbit {
                visited.insert(m);
            }
            let base_pt = ProjPoint::new(field, vec![sq(a), sq(b), one])?;
            let f_vals = ladder.values(&base_pt, t)?;
            fibers.push(Fiber {
                base: base_pt.format(field),
                members: orbit
                    .iter()
                    .map(|&(u, v)| {
                        format!("({}, {})", field.format_elem(u), field.format_elem(v))
                    })
                    .collect(),
                e_rows: orbit.iter().map(|&(u, v)| vec![one, u, v]).collect(),
                f_vals,
                issue: None,
            });
        }
    }

    let data = CoverData {
        field: field.clone(),
        r: 3,
        t,
        delta: 4 * t as i64,
        fibers,
    };
    data.validate()?;
    Ok(data)
}

/// Characteristic-2 analogue of [`v4_quartic_cover`]: quotient of the affine
/// curve `f(x^2 + x, y^2 + y) = 0` by the translations x -> x + 1, y -> y + 1.
/// Every affine point is usable; the orbit of (x, y) has size four over the
/// affine conic point (x^2 + x, y^2 + y). Recovery rows are `(1, x, y)`, the
/// divisor degree is `4t`.
pub fn v4_quartic_cover_char2(field: &Field, f_affine: &MPoly, t: usize) -> Result<CoverData> {
    if field.characteristic() != 2 {
        return cover_err("the translation quartic needs characteristic 2");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let conic = homogenize_quadratic(field, f_affine)?;
    let one = field.one();
    let elems: Vec<Fe> = field.elements().collect();
    let fr = |v: Fe| field.add(field.mul(v, v), v); // v^2 + v

    // The image on the conic: the affine images of the curve's affine points,
    // plus every rational conic point on the line z = 0 (each such point is
    // hit by a point of the curve at infinity, because squaring is a
    // bijection in characteristic 2).
    let mut image = BTreeSet::new();
    let mut affine_pts = Vec::new();
    for &x in &elems {
        for &y in &elems {
            if f_affine.eval(&assign_xyz(fr(x), fr(y), field.zero())) == field.zero() {
                affine_pts.push((x, y));
                image.insert(ProjPoint::new(field, vec![fr(x), fr(y), one])?);
            }
        }
    }
    for p in crate::curves::proj_points(field, 3) {
        let c = p.coords();
        if c[2] == field.zero()
            && conic.eval(&assign_xyz(c[0], c[1], c[2])) == field.zero()
        {
            image.insert(p);
        }
    }
    let ladder = ConicLadder::new(field, &conic, &image)?;

    let mut visited: BTreeSet<(Fe, Fe)> = BTreeSet::new();
    let mut fibers = Vec::new();
    for &(x, y) in &affine_pts {
        if visited.contains(&(x, y)) {
            continue;
        }
        let x1 = field.add(x, one);
        let y1 = field.add(y, one);
        let mut orbit = vec![(x, y), (x, y1), (x1, y), (x1, y1)];
        orbit.sort();
        for &m in &orbit {
            visited.insert(m);
        }
        let base_pt = ProjPoint::new(field, vec![fr(x), fr(y), one])?;
        let f_vals = ladder.values(&base_pt, t)?;
        fibers.push(Fiber {
            base: base_pt.format(field),
            members: orbit
                .iter()
                .map(|&(u, v)| format!("({}, {})", field.format_elem(u), field.format_elem(v)))
                .collect(),
            e_rows: orbit.iter().map(|&(u, v)| vec![one, u, v]).collect(),
            f_vals,
            issue: None,
        });
    }

    let data = CoverData {
        field: field.clone(),
        r: 3,
        t,
        delta: 4 * t as i64,
        fibers,
    };
    data.validate()?;
    Ok(data)
}

/// Quotient of the hyperelliptic curve
/// `y^2 = a x^8 + b x^6 + c x^4 + b d^2 x^2 + a d^4` (odd characteristic,
/// `a, d` nonzero, squarefree right-hand side) by the commuting involutions
/// `(x, y) -> (-x, y)` and `(x, y) -> (d/x, d^2 y / x^4)`. Evaluation points
/// are the affine points with `x` nonzero and `x^2` distinct from `±d`; the
/// orbit of such a point has four distinct x-coordinates, so the recovery
/// rows `(1, x, x^2)` form Vandermonde-type matrices. The base of an orbit is
/// the point `(u, s) = (x^2 + d^2/x^2, y/x^2)` on the conic
/// `s^2 = a u^2 + b u + (c - 2 a d^2)`; the divisor degree is `4t`.
pub fn v4_hyperelliptic_cover(
    field: &Field,
    a: Fe,
    b: Fe,
    c: Fe,
    d: Fe,
    t: usize,
) -> Result<CoverData> {
    if field.characteristic() == 2 {
        return cover_err("the hyperelliptic quotient needs odd characteristic");
    }
    if a == field.zero() || d == field.zero() {
        return cover_err("the hyperelliptic model needs a and d nonzero");
    }
    if t == 0 {
        return cover_err("message basis must be nonempty (t >= 1)");
    }
    let d2 = field.mul(d, d);
    // a x^8 + b x^6 + c x^4 + b d^2 x^2 + a d^4
    let rhs = Poly::from_coeffs(
        field,
        vec![
            field.mul(a, field.mul(d2, d2)),
            field.zero(),
            field.mul(b, d2),
            field.zero(),
            c,
            field.zero(),
            b,
            field.zero(),
            a,
        ],
    );
    let g = Poly::gcd(&rhs, &rhs.derivative());
    if g.deg() > 0 {
        return cover_err("the hyperelliptic model is singular (repeated root)");
    }

    let elems: Vec<Fe> = field.elements().collect();
    let mut affine = Vec::new();
    for &x in &elems {
        let v = rhs.eval(x);
        for y in field.nth_roots(v, 2) {
            affine.push((x, y));
        }
    }

    // The conic s^2 = a u^2 + b u + (c - 2 a d^2), homogenized with z.
    let e0 = field.sub(c, field.mul(field.from_int(2), field.mul(a, d2)));
    let conic_at = |u: Fe, s: Fe, z: Fe| {
        field.sub(
            field.add(
                field.add(field.mul(a, field.mul(u, u)), field.mul(b, field.mul(u, z))),
                field.mul(e0, field.mul(z, z)),
            ),
            field.mul(s, s),
        )
    };

    // Image of the full curve on the conic: affine points with x nonzero map
    // to (x^2 + d^2/x^2, y/x^2); the points with x = 0 or x infinite (which
    // exist exactly when a is a square) land on [1 : ±sqrt(a) : 0].
    let mut image = BTreeSet::new();
    for &(x, y) in &affine {
        if x == field.zero() {
            continue;
        }
        let x2 = field.mul(x, x);
        let u = field.add(x2, field.div(d2, x2));
        let s = field.div(y, x2);
        if conic_at(u, s, field.one()) != field.zero() {
            return cover_err("quotient image is not on the expected conic");
        }
        image.insert(ProjPoint::new(field, vec![u, s, field.one()])?);
    }
    for w in field.nth_roots(a, 2) {
        image.insert(ProjPoint::new(field, vec![field.one(), w, field.zero()])?);
    }

    let conic_poly = {
        use crate::exprs::Var;
        let u = MPoly::var(field, Var::X);
        let s = MPoly::var(field, Var::Y);
        let z = MPoly::var(field, Var::Z);
        u.mul(&u)
            .mul_fe(a)
            .add(&u.mul(&z).mul_fe(b))
            .add(&z.mul(&z).mul_fe(e0))
            .sub(&s.mul(&s))
    };
    let ladder = ConicLadder::new(field, &conic_poly, &image)?;

    let mut visited: BTreeSet<(Fe, Fe)> = BTreeSet::new();
    let mut fibers = Vec::new();
    for &(x, y) in &affine {
        if x == field.zero() || visited.contains(&(x, y)) {
            continue;
        }
        let x2 = field.mul(x, x);
        if x2 == d || x2 == field.neg(d) {
            continue;
        }
        let dx = field.div(d, x);
        let y2 = field.div(field.mul(d2, y), field.mul(x2, x2));
        let mut orbit = vec![
            (x, y),
            (field.neg(x), y),
            (dx, y2),
            (field.neg(dx), y2),
        ];
        orbit.sort();
        orbit.dedup();
        if orbit.len() != 4 {
            return cover_err("involution orbit is degenerate");
        }
        let xs: BTreeSet<Fe> = orbit.iter().map(|&(u, _)| u).collect();
        if xs.len() != 4 {
            return cover_err("orbit has repeated x-coordinates");
        }
        for &m in &orbit {
            visited.insert(m);
        }
        let u = field.add(x2, field.div(d2, x2));
        let s = field.div(y, x2);
        let base_pt = ProjPoint::new(field, vec![u, s, field.one()])?;
        let f_vals = ladder.values(&base_pt, t)?;
        fibers.push(Fiber {
            base: base_pt.format(field),
            members: orbit
                .iter()
                .map(|&(p, q)| format!("({}, {})", field.format_elem(p), field.format_elem(q)))
                .collect(),
            e_rows: orbit
                .iter()
                .map(|&(p, _)| vec![field.one(), p, field.mul(p, p)])
                .collect(),
            f_vals,
            issue: None,
        });
    }

    let data = CoverData {
        field: field.clone(),
        r: 3,
        t,
        delta: 4 * t as i64,
        fibers,
    };
    data.validate()?;
    Ok(data)
}

fn check_conic_shape(field: &Field, conic: &MPoly) -> Result<()> {
    let _ = field;
    use crate::exprs::Var;
    if conic.is_zero() || !conic.is_homogeneous() || conic.total_degree() != Some(2) {
        return cover_err("the branch form must be a nonzero homogeneous quadratic");
    }
    if conic
        .vars_used()
        .iter()
        .any(|v| !matches!(v, Var::X | Var::Y | Var::Z))
    {
        return cover_err("the branch form may only use the variables x, y, z");
    }
    Ok(())
}

/// Homogenizes an affine polynomial of total degree at most 2 in x, y to a
/// quadratic form in x, y, z.
fn homogenize_quadratic(field: &Field, f: &MPoly) -> Result<MPoly> {
    use crate::exprs::Var;
    if f.is_zero() {
        return cover_err("the branch form must be nonzero");
    }
    if f
        .vars_used()
        .iter()
        .any(|v| !matches!(v, Var::X | Var::Y))
    {
        return cover_err("the affine branch form may only use the variables x, y");
    }
    if f.total_degree() > Some(2) {
        return cover_err("the affine branch form must have degree at most 2");
    }
    let x = MPoly::var(field, Var::X);
    let y = MPoly::var(field, Var::Y);
    let z = MPoly::var(field, Var::Z);
    let mut out = MPoly::zero(field);
    for (exps, coeff) in f.terms() {
        let (i, j) = (exps[0], exps[1]);
        let mono = x
            .pow(u32::from(i))
            .mul(&y.pow(u32::from(j)))
            .mul(&z.pow(2 - u32::from(i) - u32::from(j)));
        out = out.add(&mono.mul_fe(coeff));
    }
    Ok(out)
}
