//! From cover data to linear codes: generator matrices, helper partitions,
//! locality certification, local recovery, and a plain-text code file format.
//!
//! A code built here keeps its full generator matrix (one row per basis
//! product, even when rank-deficient), the rank `k`, and one or two helper
//! partitions. Each partition groups the columns into fibers; a coordinate is
//! locally recoverable inside its group exactly when every maximal square
//! submatrix of the group's recovery matrix is invertible.

use std::collections::{BTreeMap, BTreeSet};

use crate::analysis;
use crate::covers::{map_point, monomial_ladder, CoverData, EcFn};
use crate::curves::{CurveFunction, EcPoint, WeierstrassCurve};
use crate::exprs::Value;
use crate::gf::{Fe, Field, FieldSpec};
use crate::{LrcError, Result};

fn engine_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(LrcError::Engine(msg.into()))
}

/// One helper set: a group of columns that repair each other.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    /// Column indices of the group's coordinates, in codeword order.
    pub cols: Vec<usize>,
    /// The `(r+1) x r` recovery-basis matrix, row per member. Present on
    /// freshly built codes; codes loaded from a file recover through the
    /// generator matrix instead.
    pub e_matrix: Option<Vec<Vec<Fe>>>,
    /// Display label of the group's base point (may be empty after a load).
    pub base_label: String,
}

/// A partition of all columns into helper sets of uniform locality `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub r: usize,
    pub groups: Vec<Group>,
}

/// A linear code with locality bookkeeping.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub field: Field,
    pub n: usize,
    /// Generator rows as evaluated, one per message basis product; the code is
    /// their row space. May exceed the rank `k`.
    pub rows: Vec<Vec<Fe>>,
    /// Rank of `rows`.
    pub k: usize,
    /// One partition normally, two for availability codes.
    pub partitions: Vec<Partition>,
    /// Degree of the bounding divisor; the designed distance is `n - delta`.
    pub delta: i64,
    pub designed_distance: i64,
}

impl LinearCode {
    /// Structural invariants: rectangular generator, every column in exactly
    /// one group per partition, recovery matrices of the right shape.
    pub fn validate(&self) -> Result<()> {
        if self.partitions.is_empty() {
            return engine_err("code has no helper partition");
        }
        for row in &self.rows {
            if row.len() != self.n {
                return engine_err(format!(
                    "generator row has {} entries, expected {}",
                    row.len(),
                    self.n
                ));
            }
        }
        for (pi, part) in self.partitions.iter().enumerate() {
            let mut seen = vec![false; self.n];
            for g in &part.groups {
                if g.cols.len() != part.r + 1 {
                    return engine_err(format!(
                        "partition {pi}: group at {} has {} columns, expected {}",
                        g.base_label,
                        g.cols.len(),
                        part.r + 1
                    ));
                }
                for &c in &g.cols {
                    if c >= self.n || seen[c] {
                        return engine_err(format!(
                            "partition {pi}: column {c} missing or repeated"
                        ));
                    }
                    seen[c] = true;
                }
                if let Some(m) = &g.e_matrix {
                    if m.len() != part.r + 1 || m.iter().any(|row| row.len() != part.r) {
                        return engine_err(format!(
                            "partition {pi}: recovery matrix at {} is not {} x {}",
                            g.base_label,
                            part.r + 1,
                            part.r
                        ));
                    }
                }
            }
            if seen.iter().any(|&s| !s) {
                return engine_err(format!("partition {pi} does not cover every column"));
            }
        }
        if self.designed_distance != self.n as i64 - self.delta {
            return engine_err("designed distance is inconsistent with delta");
        }
        Ok(())
    }

    /// Encodes a message of length `rows.len()` (one symbol per generator row).
    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<Fe>> {
        if msg.len() != self.rows.len() {
            return engine_err(format!(
                "message has {} symbols, expected {}",
                msg.len(),
                self.rows.len()
            ));
        }
        Ok(analysis::row_times_matrix(&self.field, msg, &self.rows))
    }

    /// A basis of the row space (`k` independent rows).
    pub fn row_basis(&self) -> Result<Vec<Vec<Fe>>> {
        let (m, pivots) = analysis::rref(&self.field, &self.rows)?;
        Ok(m.into_iter().take(pivots.len()).collect())
    }

    /// Locates a column inside a partition: (group index, member index).
    pub fn group_of(&self, partition: usize, col: usize) -> Result<(usize, usize)> {
        let part = self
            .partitions
            .get(partition)
            .ok_or_else(|| LrcError::Recover(format!("no helper partition {partition}")))?;
        for (gi, g) in part.groups.iter().enumerate() {
            if let Some(mi) = g.cols.iter().position(|&c| c == col) {
                return Ok((gi, mi));
            }
        }
        Err(LrcError::Recover(format!(
            "column {col} belongs to no helper set of partition {partition}"
        )))
    }
}

/// Checks the local-recovery matrix of one helper set: every maximal square
/// submatrix must be invertible. Returns the member indices whose omission
/// leaves a singular matrix — i.e. the members that cannot be recovered.
pub fn check_recovery_matrix(field: &Field, m: &[Vec<Fe>]) -> Result<Vec<usize>> {
    let r = m.len().saturating_sub(1);
    if r == 0 || m.iter().any(|row| row.len() != r) {
        return engine_err(format!(
            "recovery matrix must be (r+1) x r, got {} x {}",
            m.len(),
            m.first().map_or(0, |row| row.len())
        ));
    }
    let mut bad = Vec::new();
    for omit in 0..=r {
        let minor: Vec<Vec<Fe>> = m
            .iter()
            .enumerate()
            .filter(|(u, _)| *u != omit)
            .map(|(_, row)| row.clone())
            .collect();
        if analysis::determinant(field, &minor)? == field.zero() {
            bad.push(omit);
        }
    }
    Ok(bad)
}

/// Builds the code of a cover: one generator row per pair (recovery function
/// i, message function j) in i-outer, j-inner order; one column per fiber
/// member, fibers in cover order. The entry at row (i, j) and a column in
/// fiber F is `e_rows[member][i] * f_vals[j]` of F.
///
/// Fails when the cover recorded evaluation issues, when the evaluation map
/// is not injective (rank below r*t), or when the designed distance is not
/// positive — the latter two are allowed through with `force`.
pub fn build_code(cover: &CoverData, force: bool) -> Result<LinearCode> {
    cover.validate().map_err(|e| LrcError::Engine(e.to_string()))?;
    let broken: Vec<String> = cover
        .fibers
        .iter()
        .filter_map(|f| f.issue.as_ref().map(|i| format!("fiber at {}: {i}", f.base)))
        .collect();
    if !broken.is_empty() {
        return engine_err(format!(
            "cover has unevaluable entries: {}",
            broken.join("; ")
        ));
    }
    let n = cover.n();
    let designed = cover.designed_distance();
    if designed <= 0 && !force {
        return engine_err(format!(
            "designed distance {designed} is not positive (delta = {} >= n = {n})",
            cover.delta
        ));
    }
    let (r, t) = (cover.r, cover.t);
    let field = cover.field.clone();
    let mut rows = Vec::with_capacity(r * t);
    for i in 0..r {
        for j in 0..t {
            let mut row = Vec::with_capacity(n);
            for fb in &cover.fibers {
                for u in 0..=r {
                    row.push(field.mul(fb.e_rows[u][i], fb.f_vals[j]));
                }
            }
            rows.push(row);
        }
    }
    let k = analysis::rank(&field, &rows)?;
    if k < r * t && !force {
        return engine_err(format!(
            "evaluation map is not injective: rank {k} < r*t = {}",
            r * t
        ));
    }
    let mut groups = Vec::with_capacity(cover.fibers.len());
    let mut col = 0usize;
    for fb in &cover.fibers {
        groups.push(Group {
            cols: (col..col + r + 1).collect(),
            e_matrix: Some(fb.e_rows.clone()),
            base_label: fb.base.clone(),
        });
        col += r + 1;
    }
    let code = LinearCode {
        field,
        n,
        rows,
        k,
        partitions: vec![Partition { r, groups }],
        delta: cover.delta,
        designed_distance: designed,
    };
    code.validate()?;
    Ok(code)
}

/// A map between elliptic curves that the availability construction can
/// apply pointwise: a rational pair (u, v) or scalar multiplication.
pub enum PointMap {
    Rational {
        dst: WeierstrassCurve,
        u: CurveFunction,
        v: CurveFunction,
    },
    Scalar {
        dst: WeierstrassCurve,
        k: u64,
    },
}

impl PointMap {
    pub fn dst(&self) -> &WeierstrassCurve {
        match self {
            PointMap::Rational { dst, .. } | PointMap::Scalar { dst, .. } => dst,
        }
    }

    pub fn apply(&self, src: &WeierstrassCurve, p: EcPoint) -> Result<EcPoint> {
        match self {
            PointMap::Rational { dst, u, v } => map_point(dst, u, v, p),
            PointMap::Scalar { dst, k } => {
                let q = src.mul_scalar(p, *k);
                if !dst.contains(q) {
                    return engine_err(
                        "scalar multiple leaves the target curve; curves do not match",
                    );
                }
                Ok(q)
            }
        }
    }
}

fn eval_finite(f: &EcFn, p: EcPoint, what: &str, field: &Field) -> Result<Fe> {
    match f.eval(p)? {
        Value::Elem(v) => Ok(v),
        Value::Pole => engine_err(format!(
            "{what} has a pole at {}; its anchor is not outside the relevant image",
            p.format(field)
        )),
    }
}

/// Builds a code with two disjoint helper partitions from two isogenies
/// `phi1`, `phi2` with kernels `g1`, `g2` meeting only at the identity, and a
/// third map `phi` whose kernel contains both. Evaluation points are all
/// rational points of `e_curve`; the generator has one row per triple
/// (e1-function h, e2-function i, message function j), h-outer to j-inner.
/// Entries are `e1[h](phi1(P)) * e2[i](phi2(P)) * f[j](phi(P))`.
///
/// Within a coset of `g1` only the `phi2` factor varies, so partition 0
/// (locality r1 = |g1| - 1) recovers through the e2 values, and symmetrically
/// for partition 1. Default bases are pole ladders anchored at the first
/// point of each target curve outside the corresponding image: e1 gets r2
/// functions, e2 gets r1, f gets t. The divisor degree is
/// `(r1+1)(r2+1)t + 2 r1 r2 + r1 + r2`.
#[allow(clippy::too_many_arguments)]
pub fn build_availability_code(
    e_curve: &WeierstrassCurve,
    g1: &[EcPoint],
    g2: &[EcPoint],
    phi1: &PointMap,
    phi2: &PointMap,
    phi: &PointMap,
    e1_fns: Option<Vec<EcFn>>,
    e2_fns: Option<Vec<EcFn>>,
    f_fns: Option<Vec<EcFn>>,
    t: usize,
    force: bool,
) -> Result<LinearCode> {
    if t == 0 {
        return engine_err("message basis must be nonempty (t >= 1)");
    }
    if g1.len() < 2 || g2.len() < 2 {
        return engine_err("both subgroups must have at least two points");
    }
    let s1: BTreeSet<EcPoint> = g1.iter().copied().collect();
    let s2: BTreeSet<EcPoint> = g2.iter().copied().collect();
    let both: Vec<&EcPoint> = s1.intersection(&s2).collect();
    if both.len() != 1 || !both[0].is_infinity() {
        return engine_err("the two subgroups must intersect only at the identity");
    }
    let field = e_curve.field().clone();
    let r1 = g1.len() - 1;
    let r2 = g2.len() - 1;

    let pts = e_curve.points();
    let n = pts.len();
    let cosets1 = e_curve.cosets(&pts, g1)?;
    let cosets2 = e_curve.cosets(&pts, g2)?;

    // The third map must kill both subgroups, so that the message factor is
    // constant on every helper set of either partition.
    for &gpt in g1.iter().chain(g2.iter()) {
        if !phi.apply(e_curve, gpt)?.is_infinity() {
            return engine_err(format!(
                "the message-side map does not kill the subgroup point {}",
                gpt.format(&field)
            ));
        }
    }

    let col_of: BTreeMap<EcPoint, usize> =
        pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let img1: Vec<EcPoint> = pts
        .iter()
        .map(|&p| phi1.apply(e_curve, p))
        .collect::<Result<_>>()?;
    let img2: Vec<EcPoint> = pts
        .iter()
        .map(|&p| phi2.apply(e_curve, p))
        .collect::<Result<_>>()?;
    let imgf: Vec<EcPoint> = pts
        .iter()
        .map(|&p| phi.apply(e_curve, p))
        .collect::<Result<_>>()?;

    let anchor_outside = |dst: &WeierstrassCurve, image: &[EcPoint]| -> Result<EcPoint> {
        let taken: BTreeSet<EcPoint> = image.iter().copied().collect();
        dst.points()
            .into_iter()
            .find(|p| !taken.contains(p))
            .ok_or_else(|| {
                LrcError::Engine("no rational point outside the image to anchor a basis".into())
            })
    };
    let e1_fns = match e1_fns {
        Some(f) => f,
        None => monomial_ladder(phi1.dst(), anchor_outside(phi1.dst(), &img1)?, r2),
    };
    let e2_fns = match e2_fns {
        Some(f) => f,
        None => monomial_ladder(phi2.dst(), anchor_outside(phi2.dst(), &img2)?, r1),
    };
    let f_fns = match f_fns {
        Some(f) => f,
        None => monomial_ladder(phi.dst(), anchor_outside(phi.dst(), &imgf)?, t),
    };
    if e1_fns.len() != r2 || e2_fns.len() != r1 || f_fns.len() != t {
        return engine_err(format!(
            "basis sizes must be (r2, r1, t) = ({r2}, {r1}, {t}), got ({}, {}, {})",
            e1_fns.len(),
            e2_fns.len(),
            f_fns.len()
        ));
    }

    // Value tables, one per basis function, aligned with the column order.
    let table = |fns: &[EcFn], imgs: &[EcPoint], what: &str| -> Result<Vec<Vec<Fe>>> {
        fns.iter()
            .map(|f| {
                imgs.iter()
                    .map(|&q| eval_finite(f, q, what, &field))
                    .collect()
            })
            .collect()
    };
    let e1_vals = table(&e1_fns, &img1, "a first-partition basis function")?;
    let e2_vals = table(&e2_fns, &img2, "a second-partition basis function")?;
    let f_vals = table(&f_fns, &imgf, "a message function")?;

    let mut rows = Vec::with_capacity(r2 * r1 * t);
    for h in 0..r2 {
        for i in 0..r1 {
            for j in 0..t {
                let row = (0..n)
                    .map(|c| field.mul(field.mul(e1_vals[h][c], e2_vals[i][c]), f_vals[j][c]))
                    .collect();
                rows.push(row);
            }
        }
    }
    let k = analysis::rank(&field, &rows)?;
    if k < r1 * r2 * t && !force {
        return engine_err(format!(
            "evaluation map is not injective: rank {k} < r1*r2*t = {}",
            r1 * r2 * t
        ));
    }
    let delta = ((r1 + 1) * (r2 + 1) * t + 2 * r1 * r2 + r1 + r2) as i64;
    let designed = n as i64 - delta;
    if designed <= 0 && !force {
        return engine_err(format!(
            "designed distance {designed} is not positive (delta = {delta} >= n = {n})"
        ));
    }

    // Partition 0 groups by g1-cosets and recovers through the e2 values;
    // partition 1 symmetrically.
    let make_partition = |cosets: &[crate::curves::Coset],
                          e_vals: &[Vec<Fe>],
                          img_own: &[EcPoint],
                          r: usize|
     -> Result<Partition> {
        let mut groups = Vec::with_capacity(cosets.len());
        for coset in cosets {
            let cols: Vec<usize> = coset
                .points
                .iter()
                .map(|p| *col_of.get(p).expect("coset points come from pts"))
                .collect();
            let base = img_own[cols[0]];
            for &c in &cols {
                if img_own[c] != base {
                    return engine_err(
                        "helper set members map to different base points; kernel mismatch",
                    );
                }
            }
            let e_matrix: Vec<Vec<Fe>> = cols
                .iter()
                .map(|&c| e_vals.iter().map(|tab| tab[c]).collect())
                .collect();
            groups.push(Group {
                cols,
                e_matrix: Some(e_matrix),
                base_label: base.format(&field),
            });
        }
        Ok(Partition { r, groups })
    };
    let part1 = make_partition(&cosets1, &e2_vals, &img1, r1)?;
    let part2 = make_partition(&cosets2, &e1_vals, &img2, r2)?;

    let code = LinearCode {
        field,
        n,
        rows,
        k,
        partitions: vec![part1, part2],
        delta,
        designed_distance: designed,
    };
    code.validate()?;
    Ok(code)
}

/// Recovers the value at `col` from the other members of its helper set in
/// the chosen partition. Every other member must be intact.
pub fn recover_coordinate(
    code: &LinearCode,
    word: &[Option<Fe>],
    col: usize,
    partition: usize,
) -> Result<Fe> {
    if word.len() != code.n {
        return Err(LrcError::Recover(format!(
            "word has {} symbols, expected {}",
            word.len(),
            code.n
        )));
    }
    let (gi, mi) = code.group_of(partition, col)?;
    let part = &code.partitions[partition];
    let group = &part.groups[gi];
    let mut intact = Vec::with_capacity(part.r);
    for (u, &c) in group.cols.iter().enumerate() {
        if u == mi {
            continue;
        }
        match word[c] {
            Some(v) => intact.push(v),
            None => {
                return Err(LrcError::Recover(format!(
                    "helper set of column {col} has another erasure at column {c}"
                )));
            }
        }
    }
    match &group.e_matrix {
        Some(m) => {
            // Solve the r x r system from the intact rows, then evaluate the
            // local function at the erased member's row.
            let sys: Vec<Vec<Fe>> = m
                .iter()
                .enumerate()
                .filter(|(u, _)| *u != mi)
                .map(|(_, row)| row.clone())
                .collect();
            let coeffs = analysis::solve_square(&code.field, &sys, &intact)?
                .ok_or_else(|| {
                    LrcError::Recover(format!(
                        "helper set of column {col} fails the recovery check \
                         (singular submatrix)"
                    ))
                })?;
            let f = &code.field;
            Ok(m[mi]
                .iter()
                .zip(&coeffs)
                .fold(f.zero(), |acc, (&e, &c)| f.add(acc, f.mul(e, c))))
        }
        None => {
            let h = group_check_vector(code, partition, gi)?;
            let hm = h[mi];
            if hm == code.field.zero() {
                return Err(LrcError::Recover(format!(
                    "helper set of column {col} cannot repair this member \
                     (zero check coefficient)"
                )));
            }
            // h . values = 0 for every codeword.
            let f = &code.field;
            let mut acc = f.zero();
            let mut it = intact.iter();
            for (u, _) in group.cols.iter().enumerate() {
                if u == mi {
                    continue;
                }
                let v = *it.next().expect("one intact value per other member");
                acc = f.add(acc, f.mul(h[u], v));
            }
            Ok(f.neg(f.div(acc, hm)))
        }
    }
}

/// The check vector of a helper set: the one-dimensional kernel of the
/// generator columns restricted to the group. Every codeword's group values
/// are orthogonal to it, which is what makes single-erasure repair work.
pub fn group_check_vector(code: &LinearCode, partition: usize, gi: usize) -> Result<Vec<Fe>> {
    let group = &code.partitions[partition].groups[gi];
    let block: Vec<Vec<Fe>> = code
        .rows
        .iter()
        .map(|row| group.cols.iter().map(|&c| row[c]).collect())
        .collect();
    let ker = analysis::nullspace(&code.field, &block)?;
    if ker.len() != 1 {
        return Err(LrcError::Recover(format!(
            "helper set {gi} of partition {partition} has a {}-dimensional check space; \
             local repair needs exactly one check relation",
            ker.len()
        )));
    }
    Ok(ker.into_iter().next().unwrap())
}

/// Finds the single erased coordinate and repairs it through `partition`.
pub fn local_recover(
    code: &LinearCode,
    word: &[Option<Fe>],
    partition: usize,
) -> Result<(usize, Fe)> {
    let erased: Vec<usize> = word
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.is_none().then_some(i))
        .collect();
    match erased.as_slice() {
        [col] => Ok((*col, recover_coordinate(code, word, *col, partition)?)),
        [] => Err(LrcError::Recover("word has no erasure".into())),
        many => Err(LrcError::Recover(format!(
            "word has {} erasures; repair them one at a time",
            many.len()
        ))),
    }
}

/// Repairs `col` via the preferred partition, falling back to the others if
/// the preferred helper set is also damaged.
pub fn recover_with_choice(
    code: &LinearCode,
    word: &[Option<Fe>],
    col: usize,
    preferred: usize,
) -> Result<Fe> {
    if preferred >= code.partitions.len() {
        return Err(LrcError::Recover(format!(
            "no helper partition {preferred}"
        )));
    }
    let mut last = None;
    let order = std::iter::once(preferred)
        .chain((0..code.partitions.len()).filter(|&p| p != preferred));
    for p in order {
        match recover_coordinate(code, word, col, p) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one partition was tried"))
}

/// Renders a code as the plain-text interchange format:
///
/// ```text
/// q p m n k r delta partitions
/// <one line of n field literals per generator row>
/// partition <r>
/// group <c0,c1,...> <base label>
/// ...
/// ```
///
/// The field is identified by (p, m) with the crate's default modulus, and
/// `r` in the header is the first partition's locality.
pub fn render_code(code: &LinearCode) -> String {
    let f = &code.field;
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} {} {} {} {} {} {}\n",
        f.order(),
        f.characteristic(),
        f.degree(),
        code.n,
        code.k,
        code.partitions[0].r,
        code.delta,
        code.partitions.len()
    ));
    for row in &code.rows {
        let line: Vec<String> = row.iter().map(|&e| f.format_elem(e)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    for part in &code.partitions {
        out.push_str(&format!("partition {}\n", part.r));
        for g in &part.groups {
            let cols: Vec<String> = g.cols.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("group {} {}\n", cols.join(","), g.base_label));
        }
    }
    out
}

/// Parses the format written by [`render_code`]. Recovery matrices are not
/// part of the format; loaded codes repair erasures through their generator
/// columns instead.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| LrcError::Engine("empty code file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 8 {
        return engine_err(format!(
            "header must have 8 fields (q p m n k r delta partitions), got {}",
            parts.len()
        ));
    }
    let num = |s: &str, what: &str| -> Result<u64> {
        s.parse()
            .map_err(|_| LrcError::Engine(format!("bad {what} in header: {s}")))
    };
    let q = num(parts[0], "q")?;
    let p = num(parts[1], "p")?;
    let m = num(parts[2], "m")? as u32;
    let n = num(parts[3], "n")? as usize;
    let k = num(parts[4], "k")? as usize;
    let r_head = num(parts[5], "r")? as usize;
    let delta: i64 = parts[6]
        .parse()
        .map_err(|_| LrcError::Engine(format!("bad delta in header: {}", parts[6])))?;
    let n_parts = num(parts[7], "partitions")? as usize;
    let field = FieldSpec::new(p, m, None)?;
    if field.order() != q {
        return engine_err(format!(
            "header says q = {q} but p^m = {}",
            field.order()
        ));
    }

    let mut rows = Vec::new();
    let mut partitions: Vec<Partition> = Vec::new();
    for line in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("partition ") {
            let r: usize = rest
                .trim()
                .parse()
                .map_err(|_| LrcError::Engine(format!("bad partition locality: {rest}")))?;
            partitions.push(Partition { r, groups: Vec::new() });
        } else if let Some(rest) = line.strip_prefix("group ") {
            let part = partitions
                .last_mut()
                .ok_or_else(|| LrcError::Engine("group line before any partition".into()))?;
            let (cols_text, label) = match rest.split_once(' ') {
                Some((c, l)) => (c, l.to_string()),
                None => (rest, String::new()),
            };
            let cols: Vec<usize> = cols_text
                .split(',')
                .map(|c| {
                    c.parse()
                        .map_err(|_| LrcError::Engine(format!("bad column index: {c}")))
                })
                .collect::<Result<_>>()?;
            part.groups.push(Group {
                cols,
                e_matrix: None,
                base_label: label,
            });
        } else {
            let row: Vec<Fe> = line
                .split_whitespace()
                .map(|lit| field.parse_elem(lit))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return engine_err(format!(
                    "generator row has {} entries, expected {n}",
                    row.len()
                ));
            }
            if !partitions.is_empty() {
                return engine_err("generator row after partition lines");
            }
            rows.push(row);
        }
    }
    if partitions.len() != n_parts {
        return engine_err(format!(
            "header promises {n_parts} partitions, found {}",
            partitions.len()
        ));
    }
    if partitions[0].r != r_head {
        return engine_err(format!(
            "header locality {r_head} does not match first partition {}",
            partitions[0].r
        ));
    }
    let rank = analysis::rank(&field, &rows)?;
    if rank != k {
        return engine_err(format!(
            "header promises rank {k}, generator rows have rank {rank}"
        ));
    }
    let code = LinearCode {
        field,
        n,
        rows,
        k,
        partitions,
        delta,
        designed_distance: n as i64 - delta,
    };
    code.validate()?;
    Ok(code)
}

/// Writes a code file (see [`render_code`]).
pub fn write_code_file(code: &LinearCode, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, render_code(code))?;
    Ok(())
}

/// Reads a code file (see [`parse_code`]).
pub fn read_code_file(path: &std::path::Path) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    parse_code(&text)
}
