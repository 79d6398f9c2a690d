//! Always-on property suite: every invariant here cross-checks one
//! implementation against an independent computation — table arithmetic
//! against polynomial reduction, the two distance searches against each
//! other, assembled generator matrices against first-principles evaluation,
//! point counts against the characteristic-polynomial interval, and repaired
//! symbols against the parity constraints.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use lrc::analysis::{
    message_space_size, min_distance_exhaustive, min_distance_low_weight, parity_check,
    DistanceBound,
};
use lrc::catalog::entries;
use lrc::config::{build_from_config, field_from_config, Config};
use lrc::covers;
use lrc::curves::{CurveFunction, EcPoint, WeierstrassCurve};
use lrc::engine::{recover_coordinate, LinearCode};
use lrc::exprs::RatExpr;
use lrc::gf::{Fe, Field, FieldSpec};

fn small_fields() -> Vec<Field> {
    [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (3, 2), (2, 3), (2, 4)]
        .into_iter()
        .map(|(p, m)| FieldSpec::new(p, m, None).unwrap())
        .collect()
}

#[test]
fn field_axioms_hold_exhaustively_up_to_order_16() {
    for f in small_fields() {
        let els: Vec<Fe> = f.elements().collect();
        assert_eq!(els.len() as u64, f.order());
        for &a in &els {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.sub(a, a), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a)), f.one());
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                // Table product against direct polynomial-basis reduction.
                assert_eq!(f.mul(a, b), f.mul_poly_basis(a, b));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
        // The multiplicative group is generated by the recorded generator.
        let mut seen = BTreeSet::new();
        let mut x = f.one();
        for _ in 0..f.order() - 1 {
            seen.insert(x);
            x = f.mul(x, f.multiplicative_generator());
        }
        assert_eq!(seen.len() as u64, f.order() - 1);
    }
}

#[test]
fn element_formatting_round_trips() {
    let mut fields = small_fields();
    for (p, m) in [(2, 5), (2, 6), (17, 1), (31, 1)] {
        fields.push(FieldSpec::new(p, m, None).unwrap());
    }
    for f in fields {
        for e in f.elements() {
            let s = f.format_elem(e);
            assert_eq!(f.parse_elem(&s).unwrap(), e, "field {}: {s}", f.order());
        }
        if f.degree() > 1 {
            // Generator powers are accepted for any exponent.
            for e in [0u64, 1, 5, f.order() - 2, 3 * (f.order() - 1) + 2] {
                let want = f.pow(f.gen_elem(), e);
                assert_eq!(f.parse_elem(&format!("a^{e}")).unwrap(), want);
            }
        }
    }
}

/// Every Weierstrass curve named by a shipped configuration.
fn catalog_curves() -> Vec<(Field, WeierstrassCurve)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for entry in entries() {
        let cfg = Config::parse(&entry.config).unwrap();
        let Ok(field) = field_from_config(&cfg) else {
            continue;
        };
        for key in ["curve", "curve.src", "curve.dst", "map1.dst", "map2.dst", "map3.dst"] {
            let Some(lits) = cfg.get(key) else { continue };
            let coeffs: Vec<Fe> = lits
                .split(',')
                .map(|s| field.parse_elem(s.trim()).unwrap())
                .collect();
            let a: [Fe; 5] = coeffs.as_slice().try_into().unwrap();
            let tag = format!(
                "{}^{}:{:?}:{a:?}",
                field.characteristic(),
                field.degree(),
                field.modulus()
            );
            if seen.insert(tag) {
                out.push((field.clone(), WeierstrassCurve::new(&field, a).unwrap()));
            }
        }
    }
    out
}

#[test]
fn curve_point_counts_sit_in_the_hasse_interval_and_the_group_law_holds() {
    let curves = catalog_curves();
    assert!(curves.len() >= 4, "expected several distinct curves, got {}", curves.len());
    for (field, curve) in curves {
        let q = field.order();
        let pts = curve.points();
        let count = pts.len() as i64;
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        assert!(
            (count - (q as i64 + 1)).abs() <= bound,
            "{count} points over GF({q}) falls outside [{}, {}]",
            q as i64 + 1 - bound,
            q as i64 + 1 + bound
        );

        // Group law on a sample: closure, commutativity, inverses,
        // associativity, and compatibility of repeated addition.
        let sample: Vec<EcPoint> = pts.iter().copied().take(6).collect();
        for &p in &sample {
            assert!(curve.contains(p));
            assert_eq!(curve.add(p, EcPoint::Infinity), p);
            assert_eq!(curve.add(p, curve.neg(p)), EcPoint::Infinity);
            assert_eq!(curve.mul_scalar(p, 2), curve.add(p, p));
            for &r in &sample {
                assert!(curve.contains(curve.add(p, r)));
                assert_eq!(curve.add(p, r), curve.add(r, p));
                for &s in &sample {
                    assert_eq!(
                        curve.add(curve.add(p, r), s),
                        curve.add(p, curve.add(r, s))
                    );
                }
            }
        }
        // Lagrange: the point count annihilates every sample point.
        for &p in &sample {
            assert_eq!(curve.mul_scalar(p, count as u64), EcPoint::Infinity);
        }
    }
}

fn synthetic_code(p: u64, rows: Vec<Vec<Fe>>, field: Field) -> LinearCode {
    let _ = p;
    let n = rows[0].len();
    let k = lrc::analysis::rank(&field, &rows).unwrap();
    LinearCode {
        field,
        n,
        rows,
        k,
        partitions: Vec::new(),
        delta: n as i64,
        designed_distance: 0,
    }
}

proptest! {
    /// The Gray-code message sweep and the dependent-column search are
    /// independent algorithms; where both apply they must agree exactly.
    #[test]
    fn distance_algorithms_agree(
        p in prop_oneof![Just(2u64), Just(3u64), Just(5u64)],
        k in 1usize..=3,
        n in 3usize..=9,
        seed in any::<u64>(),
    ) {
        let field = FieldSpec::new(p, 1, None).unwrap();
        let mut state = seed | 1;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let rows: Vec<Vec<Fe>> = (0..k)
            .map(|_| (0..n).map(|_| field.elem(next() % p).unwrap()).collect())
            .collect();
        prop_assume!(rows.iter().any(|r| r.iter().any(|&v| v != Fe(0))));
        let code = synthetic_code(p, rows, field);

        let d = min_distance_exhaustive(&code, 1 << 20).unwrap();
        prop_assert!(d >= 1 && d <= n);
        prop_assert_eq!(
            min_distance_low_weight(&code, d).unwrap(),
            DistanceBound::Exact(d)
        );
        if d > 1 {
            prop_assert_eq!(
                min_distance_low_weight(&code, d - 1).unwrap(),
                DistanceBound::LowerBound(d)
            );
        }
    }
}

/// Codes kept alive across proptest cases: a one-partition plane-cover code
/// and a two-partition availability code, with their parity-check matrices.
fn recovery_fixtures() -> &'static Vec<(LinearCode, Vec<Vec<Fe>>)> {
    static FIXTURES: OnceLock<Vec<(LinearCode, Vec<Vec<Fe>>)>> = OnceLock::new();
    FIXTURES.get_or_init(|| {
        ["ex7.1", "ex6.1"]
            .iter()
            .map(|id| {
                let entry = lrc::catalog::select(id).remove(0);
                let cfg = Config::parse(&entry.config).unwrap();
                let code = build_from_config(&cfg).unwrap().code.unwrap();
                let h = parity_check(&code).unwrap();
                (code, h)
            })
            .collect()
    })
}

proptest! {
    /// Erase any coordinate of any codeword: local repair through any helper
    /// partition restores the erased symbol, and the completed word satisfies
    /// every parity constraint.
    #[test]
    fn erasure_recovery_round_trips_and_passes_parity(
        which in 0usize..2,
        seed in any::<u64>(),
    ) {
        let (code, h) = &recovery_fixtures()[which];
        let field = &code.field;
        let q = field.order();
        let mut state = seed | 1;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let msg: Vec<Fe> = (0..code.rows.len())
            .map(|_| field.elem(next() % q).unwrap())
            .collect();
        let cw = code.encode(&msg).unwrap();
        let col = (next() as usize) % code.n;
        let pi = (next() as usize) % code.partitions.len();

        let mut word: Vec<Option<Fe>> = cw.iter().copied().map(Some).collect();
        word[col] = None;
        let got = recover_coordinate(code, &word, col, pi).unwrap();
        prop_assert_eq!(got, cw[col]);

        let mut filled = cw.clone();
        filled[col] = got;
        for row in h {
            let mut acc = Fe(0);
            for (&hv, &wv) in row.iter().zip(&filled) {
                acc = field.add(acc, field.mul(hv, wv));
            }
            prop_assert_eq!(acc, Fe(0));
        }
    }
}

fn parse_point(field: &Field, s: &str) -> EcPoint {
    if s == "inf" {
        return EcPoint::Infinity;
    }
    let inner = s.trim().strip_prefix('(').unwrap().strip_suffix(')').unwrap();
    let (xs, ys) = inner.split_once(", ").unwrap();
    EcPoint::Affine(field.parse_elem(xs).unwrap(), field.parse_elem(ys).unwrap())
}

/// The pole-order ladder at infinity, evaluated from raw coordinates:
/// 1, x, y, x^2, xy, x^3, x^2·y, ... (pole orders 0, 2, 3, 4, ...).
fn ladder_value(field: &Field, p: EcPoint, idx: usize) -> Fe {
    if idx == 0 {
        return field.one();
    }
    let EcPoint::Affine(x, y) = p else {
        panic!("ladder evaluated at infinity")
    };
    let order = (idx + 1) as u64;
    if order % 2 == 0 {
        field.pow(x, order / 2)
    } else {
        field.mul(field.pow(x, (order - 3) / 2), y)
    }
}

#[test]
fn generator_entries_match_first_principles_evaluation() {
    // Rebuild the degree-4 quotient cover of the 44-point curve from its
    // shipped configuration, then recompute every generator entry from the
    // printed point coordinates alone.
    let entry = lrc::catalog::select("ex3.2").remove(0);
    let cfg = Config::parse(&entry.config).unwrap();
    let field = field_from_config(&cfg).unwrap();
    let curve_of = |key: &str| {
        let coeffs: Vec<Fe> = cfg
            .get(key)
            .unwrap()
            .split(',')
            .map(|s| field.parse_elem(s.trim()).unwrap())
            .collect();
        WeierstrassCurve::new(&field, coeffs.as_slice().try_into().unwrap()).unwrap()
    };
    let src = curve_of("curve.src");
    let dst = curve_of("curve.dst");
    let kernel_x: Vec<Fe> = cfg
        .get("kernel.x")
        .unwrap()
        .split(',')
        .map(|s| field.parse_elem(s.trim()).unwrap())
        .collect();
    let kernel: Vec<EcPoint> = src
        .points()
        .into_iter()
        .filter(|p| match *p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, _) => kernel_x.contains(&x),
        })
        .collect();
    let u = CurveFunction::from_expr(&src, &RatExpr::parse(cfg.get("map.u").unwrap(), &field).unwrap())
        .unwrap();
    let v = CurveFunction::from_expr(&src, &RatExpr::parse(cfg.get("map.v").unwrap(), &field).unwrap())
        .unwrap();
    let t: usize = cfg.get("t").unwrap().parse().unwrap();

    let cover = covers::elliptic_quotient_cover(&src, &dst, &kernel, &u, &v, None, None, t).unwrap();
    let code = lrc::engine::build_code(&cover, false).unwrap();
    let r = cover.r;
    assert_eq!(r + 1, kernel.len());
    assert_eq!(code.rows.len(), r * t);

    let mut col = 0usize;
    for fiber in &cover.fibers {
        let base = parse_point(&field, &fiber.base);
        assert!(dst.contains(base));
        for member in &fiber.members {
            let p = parse_point(&field, member);
            assert!(src.contains(p));
            // The member really lies over the base.
            assert_eq!(covers::map_point(&dst, &u, &v, p).unwrap(), base);
            for i in 0..r {
                for j in 0..t {
                    let want = field.mul(
                        ladder_value(&field, p, i),
                        ladder_value(&field, base, j),
                    );
                    assert_eq!(
                        code.rows[i * t + j][col],
                        want,
                        "entry ({i},{j}) at column {col} ({member} over {})",
                        fiber.base
                    );
                }
            }
            col += 1;
        }
    }
    assert_eq!(col, code.n);
}

#[test]
fn designed_distance_is_sound_on_every_affordable_build() {
    let mut checked = 0usize;
    for entry in entries() {
        let cfg = Config::parse(&entry.config).unwrap();
        let Ok(out) = build_from_config(&cfg) else {
            continue;
        };
        let Some(code) = out.code else { continue };
        let designed = code.designed_distance;
        if designed < 1 {
            continue;
        }
        let affordable = message_space_size(code.field.order(), code.k)
            .map(|s| s <= 1 << 20)
            .unwrap_or(false);
        if !affordable {
            continue;
        }
        let d = min_distance_exhaustive(&code, 1 << 20).unwrap();
        assert!(
            d as i64 >= designed,
            "{}: exact distance {d} below the designed bound {designed}",
            entry.id
        );
        checked += 1;
    }
    assert!(checked >= 8, "only {checked} builds were affordable to sweep");
}
