//! Codes on cyclic covers of the projective plane: surfaces
//! `w^(r+1) = f(x, y, z)` with `f` homogeneous of degree r+1.
//!
//! Projection to [x : y : z] makes the surface a degree-(r+1) cover of the
//! plane. When r+1 divides q - 1, a plane point off the branch curve `f = 0`
//! either has no rational points above it or exactly r+1 of them, differing
//! by the (r+1)-th roots of unity in the w-coordinate. Those full fibers are
//! the helper sets: the recovery matrix with rows (1, w, ..., w^(r-1)) is
//! Vandermonde in r+1 distinct nonzero values of w, so every maximal square
//! submatrix is invertible and the code has locality r.
//!
//! The message space is tiered: monomials of degree m weighted by w^0, degree
//! m-1 weighted by w^1, and so on down to degree m-r+1 weighted by w^(r-1).
//! All evaluation happens on the chart z = 1.

use std::fmt::Write as _;

use crate::analysis;
use crate::engine::{Group, LinearCode, Partition};
use crate::exprs::Var;
use crate::gf::{Fe, Field};
use crate::mpoly::{assign_xyz, MPoly};
use crate::{LrcError, Result};

fn surface_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(LrcError::Surface(msg.into()))
}

/// Exponent triples (i, j, l) with i + j + l = m, ordered lexicographically
/// by descending (i, j). There are (m+1)(m+2)/2 of them.
pub fn monomials(m: usize) -> Vec<(u16, u16, u16)> {
    let mut out = Vec::with_capacity((m + 1) * (m + 2) / 2);
    for i in (0..=m).rev() {
        for j in (0..=(m - i)).rev() {
            out.push((i as u16, j as u16, (m - i - j) as u16));
        }
    }
    out
}

/// Total size of the message space: monomial counts of the r tiers
/// m, m-1, ..., m-r+1.
pub fn tier_dimension_sum(r: usize, m: usize) -> usize {
    (0..r).map(|u| (m - u + 1) * (m - u + 2) / 2).sum()
}

/// One full fiber of the plane cover, on the chart z = 1.
#[derive(Clone, Debug)]
pub struct SurfaceFiber {
    /// Plane base point (x, y) with z = 1.
    pub base: (Fe, Fe),
    /// The r+1 distinct nonzero w-values above the base, sorted.
    pub ws: Vec<Fe>,
}

/// How the affine plane points were classified during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneCount {
    /// Points scanned: q^2 (the whole chart z = 1).
    pub candidates: usize,
    /// Base points of full fibers.
    pub usable: usize,
    /// Points on the branch curve f = 0.
    pub on_branch: usize,
    /// Points where f is not an (r+1)-th power, hence no points above.
    pub non_split: usize,
}

/// A checked surface-code specification with its usable fibers enumerated.
#[derive(Clone, Debug)]
pub struct SurfaceCodeSpec {
    pub field: Field,
    /// The branch form: homogeneous of degree r+1 in x, y, z.
    pub f: MPoly,
    pub r: usize,
    pub m: usize,
    pub fibers: Vec<SurfaceFiber>,
    pub counts: PlaneCount,
}

/// Validates the surface data and enumerates the usable fibers on z = 1.
///
/// Requirements: r >= 1, (r+1) | q-1 so that fibers off the branch curve are
/// empty or full, m >= r-1 so that every tier is nonempty, and `f` must be
/// homogeneous of degree r+1 in x, y, z only.
pub fn surface_spec(field: &Field, f: &MPoly, r: usize, m: usize) -> Result<SurfaceCodeSpec> {
    if r < 1 {
        return surface_err("locality must be at least 1");
    }
    let q = field.order();
    if (q - 1) % (r as u64 + 1) != 0 {
        return surface_err(format!(
            "fiber size {} must divide q - 1 = {}",
            r + 1,
            q - 1
        ));
    }
    if m < r.saturating_sub(1) {
        return surface_err(format!(
            "degree m = {m} leaves an empty monomial tier; need m >= r - 1 = {}",
            r - 1
        ));
    }
    if f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(r as u32 + 1) {
        return surface_err(format!(
            "branch form must be homogeneous of degree {}",
            r + 1
        ));
    }
    if f.vars_used()
        .iter()
        .any(|v| !matches!(v, Var::X | Var::Y | Var::Z))
    {
        return surface_err("branch form may only involve x, y, z");
    }

    let one = field.one();
    let mut fibers = Vec::new();
    let mut counts = PlaneCount {
        candidates: 0,
        usable: 0,
        on_branch: 0,
        non_split: 0,
    };
    for x in field.elements() {
        for y in field.elements() {
            counts.candidates += 1;
            let c = f.eval(&assign_xyz(x, y, one));
            if c == field.zero() {
                counts.on_branch += 1;
                continue;
            }
            let ws = field.nth_roots(c, r as u64 + 1);
            if ws.is_empty() {
                counts.non_split += 1;
                continue;
            }
            debug_assert_eq!(ws.len(), r + 1);
            counts.usable += 1;
            fibers.push(SurfaceFiber { base: (x, y), ws });
        }
    }
    Ok(SurfaceCodeSpec {
        field: field.clone(),
        f: f.clone(),
        r,
        m,
        fibers,
        counts,
    })
}

/// Lower bound on the distance of the locality-2 surface code: eliminating w
/// between the surface equation and a section leaves a plane curve of degree
/// 3m, which has at most (3m+1)q + 1 rational points. May be negative, in
/// which case the bound is vacuous.
pub fn cubic_distance_bound(n: usize, m: usize, q: u64) -> i64 {
    n as i64 - (3 * m as i64 + 1) * q as i64 - 1
}

/// Builds the evaluation code of a surface spec. Generator rows are indexed
/// by (tier u, monomial (i, j, l) of degree m-u) in tier-major order; the
/// value at a fiber point with coordinates (x, y, 1, w) is w^u * x^i * y^j.
/// Columns group fiber by fiber, members in sorted-w order.
///
/// The designed distance records the degree-(r+1)m plane-curve elimination
/// bound n - ((r+1)m + 1)q - 1, the r = 2 case of which is
/// [`cubic_distance_bound`]; for these codes it is usually vacuous and the
/// true distance comes from search.
pub fn build_surface_code(spec: &SurfaceCodeSpec) -> Result<LinearCode> {
    if spec.fibers.is_empty() {
        return surface_err("surface has no usable fibers");
    }
    let field = &spec.field;
    let (r, m) = (spec.r, spec.m);
    let n = spec.fibers.len() * (r + 1);

    // Value of x^i y^j at each fiber point, tier weight applied separately.
    let mut rows = Vec::with_capacity(tier_dimension_sum(r, m));
    for u in 0..r {
        for (i, j, _l) in monomials(m - u) {
            let mut row = Vec::with_capacity(n);
            for fb in &spec.fibers {
                let base_val = field.mul(
                    field.pow(fb.base.0, i as u64),
                    field.pow(fb.base.1, j as u64),
                );
                for &w in &fb.ws {
                    row.push(field.mul(field.pow(w, u as u64), base_val));
                }
            }
            rows.push(row);
        }
    }
    let k = analysis::rank(field, &rows)?;

    let mut groups = Vec::with_capacity(spec.fibers.len());
    let mut col = 0usize;
    for fb in &spec.fibers {
        let e_matrix: Vec<Vec<Fe>> = fb
            .ws
            .iter()
            .map(|&w| (0..r).map(|i| field.pow(w, i as u64)).collect())
            .collect();
        let mut label = String::new();
        let _ = write!(
            label,
            "[{}:{}:1]",
            field.format_elem(fb.base.0),
            field.format_elem(fb.base.1)
        );
        groups.push(Group {
            cols: (col..col + r + 1).collect(),
            e_matrix: Some(e_matrix),
            base_label: label,
        });
        col += r + 1;
    }

    let delta = ((r as i64 + 1) * m as i64 + 1) * field.order() as i64 + 1;
    let code = LinearCode {
        field: field.clone(),
        n,
        rows,
        k,
        partitions: vec![Partition { r, groups }],
        delta,
        designed_distance: n as i64 - delta,
    };
    code.validate()?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::check_recovery_matrix;
    use crate::exprs::RatExpr;
    use crate::gf::FieldSpec;

    fn form(field: &Field, text: &str) -> MPoly {
        let e = RatExpr::parse(text, field).unwrap();
        MPoly::from_expr(field, &e).unwrap()
    }

    #[test]
    fn monomial_tiers_have_triangular_sizes() {
        assert_eq!(monomials(0), vec![(0, 0, 0)]);
        assert_eq!(monomials(2).len(), 6);
        assert_eq!(monomials(3).len(), 10);
        assert_eq!(monomials(3)[0], (3, 0, 0));
        assert_eq!(*monomials(3).last().unwrap(), (0, 0, 3));
        for (i, j, l) in monomials(5) {
            assert_eq!(i + j + l, 5);
        }
        assert_eq!(tier_dimension_sum(2, 2), 6 + 3);
        assert_eq!(tier_dimension_sum(3, 4), 15 + 10 + 6);
        assert_eq!(tier_dimension_sum(4, 8), 45 + 36 + 28 + 21);
    }

    #[test]
    fn nine_point_quaternary_cubic_surface() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let f = form(
            &f4,
            "a*x^3 + x^2*y + a*x*y^2 + a*y^3 + a^2*x^2*z + a^2*x*y*z + a^2*x*z^2 + a*y*z^2 + a*z^3",
        );
        let spec = surface_spec(&f4, &f, 2, 2).unwrap();
        assert_eq!(spec.counts.candidates, 16);
        assert_eq!(spec.counts.usable, 3);
        assert_eq!(
            spec.counts.usable + spec.counts.on_branch + spec.counts.non_split,
            16
        );
        let a = f4.gen_elem();
        let a2 = f4.mul(a, a);
        let bases: Vec<(Fe, Fe)> = spec.fibers.iter().map(|fb| fb.base).collect();
        for want in [(a2, a), (f4.one(), a2), (f4.zero(), a2)] {
            assert!(bases.contains(&want), "missing base {want:?}");
        }

        let code = build_surface_code(&spec).unwrap();
        assert_eq!(code.n, 9);
        assert_eq!(code.rows.len(), 9);
        assert_eq!(code.k, 6); // kernel dimension 3
        assert_eq!(code.designed_distance, cubic_distance_bound(9, 2, 4));
        assert_eq!(code.designed_distance, -20);
        for g in &code.partitions[0].groups {
            let m = g.e_matrix.as_ref().unwrap();
            assert!(check_recovery_matrix(&f4, m).unwrap().is_empty());
        }

        // Erase-and-repair round trip through the Vandermonde helper sets.
        let msg: Vec<Fe> = (0..9).map(|i| f4.from_int(i % 4)).collect();
        let cw = code.encode(&msg).unwrap();
        for col in 0..code.n {
            let mut word: Vec<Option<Fe>> = cw.iter().copied().map(Some).collect();
            word[col] = None;
            let got = crate::engine::recover_coordinate(&code, &word, col, 0).unwrap();
            assert_eq!(got, cw[col]);
        }
    }

    #[test]
    fn eighteen_point_quaternary_cubic_surface() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let f = form(
            &f4,
            "x*y^2 + y^3 + a^2*x^2*z + x*y*z + a*y^2*z + a^2*z^3",
        );
        let spec = surface_spec(&f4, &f, 2, 3).unwrap();
        assert_eq!(spec.counts.usable, 6);
        let a = f4.gen_elem();
        let a2 = f4.mul(a, a);
        let bases: Vec<(Fe, Fe)> = spec.fibers.iter().map(|fb| fb.base).collect();
        for want in [
            (a2, f4.one()),
            (f4.one(), a),
            (a2, a),
            (a, a2),
            (f4.zero(), a2),
            (a, f4.zero()),
        ] {
            assert!(bases.contains(&want), "missing base {want:?}");
        }
        let code = build_surface_code(&spec).unwrap();
        assert_eq!(code.n, 18);
        assert_eq!(code.rows.len(), 16);
        assert_eq!(code.k, 11); // kernel dimension 5
    }

    #[test]
    fn larger_prime_field_surfaces() {
        // Cubic over F7, m = 5: 16 usable bases, dimension 36 - 5.
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let f = form(
            &f7,
            "6*x^3 + 5*x*y^2 + y^3 + 2*x^2*z + 3*x*y*z + 4*y^2*z + 4*x*z^2 + 6*y*z^2",
        );
        let spec = surface_spec(&f7, &f, 2, 5).unwrap();
        assert_eq!(spec.counts.usable, 16);
        let code = build_surface_code(&spec).unwrap();
        assert_eq!(code.n, 48);
        assert_eq!(code.rows.len(), 36);
        assert_eq!(code.k, 31); // kernel dimension 5

        // Quartic K3 over F5, r = 3, m = 4: kernel dimension 14.
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        let f = form(
            &f5,
            "3*x^4 + x^3*y + 4*x^2*y^2 + 4*x*y^3 + 4*y^4 + x^3*z + 2*x^2*y*z \
             + x*y^2*z + 4*y^3*z + 3*x^2*z^2 + x*y*z^2 + y^2*z^2 + 2*x*z^3 + 3*z^4",
        );
        let spec = surface_spec(&f5, &f, 3, 4).unwrap();
        assert_eq!(spec.counts.usable, 6);
        let bases: Vec<(Fe, Fe)> = spec.fibers.iter().map(|fb| fb.base).collect();
        for want in [(3, 0), (4, 0), (4, 2), (3, 3), (4, 3), (3, 4)] {
            assert!(bases.contains(&(f5.from_int(want.0), f5.from_int(want.1))));
        }
        let code = build_surface_code(&spec).unwrap();
        assert_eq!(code.n, 24);
        assert_eq!(code.rows.len(), 31);
        assert_eq!(code.k, 17);
        for g in &code.partitions[0].groups {
            assert!(check_recovery_matrix(&f5, g.e_matrix.as_ref().unwrap())
                .unwrap()
                .is_empty());
        }

        // Quintic over F11, r = 4, m = 8: kernel dimension 43.
        let f11 = FieldSpec::new(11, 1, None).unwrap();
        let f = form(
            &f11,
            "9*x^5 + 2*x^4*y + x^3*y^2 + 5*x^2*y^3 + 6*x*y^4 + 4*y^5 \
             + 6*x^4*z + 3*x^3*y*z + 3*x^2*y^2*z + 8*x*y^3*z + 2*y^4*z \
             + 10*x^3*z^2 + 3*x^2*y*z^2 + 7*x*y^2*z^2 + 6*y^3*z^2 \
             + 3*x^2*z^3 + 5*x*y*z^3 + 8*y^2*z^3 + 6*x*z^4 + 6*y*z^4",
        );
        let spec = surface_spec(&f11, &f, 4, 8).unwrap();
        assert_eq!(spec.counts.usable, 22);
        let code = build_surface_code(&spec).unwrap();
        assert_eq!(code.n, 110);
        assert_eq!(code.rows.len(), 130);
        assert_eq!(code.k, 87);
    }

    #[test]
    fn rejects_bad_specs() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let cubic = form(&f7, "x^3 + y^3 + z^3");
        // Fiber size 4 does not divide 7 - 1.
        assert!(surface_spec(&f7, &form(&f7, "x^4+y^4+z^4"), 3, 3).is_err());
        // Empty bottom tier: m < r - 1.
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert!(surface_spec(&f5, &form(&f5, "x^4+y^4+z^4"), 3, 1).is_err());
        // Wrong degree for the chosen locality.
        assert!(surface_spec(&f7, &cubic, 1, 2).is_err());
        // Inhomogeneous branch form.
        assert!(surface_spec(&f7, &form(&f7, "x^3 + y^2"), 2, 2).is_err());
        // Extra variable.
        assert!(surface_spec(&f7, &form(&f7, "x^3 + y^3 + w^3"), 2, 2).is_err());
    }
}
