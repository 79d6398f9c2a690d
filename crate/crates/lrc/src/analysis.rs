//! Exact linear algebra over a finite field plus code analytics: row
//! reduction, rank, nullspaces, determinants, minimum-distance search, and
//! the Singleton-type bound for codes with locality.

use crate::gf::{Fe, Field};
use crate::{LrcError, Result};

/// Checks that every row of `rows` has length `width`.
fn check_rect(rows: &[Vec<Fe>], width: usize) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(LrcError::Analysis(format!(
                "ragged matrix: row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
    }
    Ok(())
}

/// Reduced row echelon form. Returns the reduced rows together with the
/// pivot column of each nonzero row; the rank is the number of pivots.
pub fn rref(field: &Field, rows: &[Vec<Fe>]) -> Result<(Vec<Vec<Fe>>, Vec<usize>)> {
    let width = rows.first().map_or(0, |r| r.len());
    check_rect(rows, width)?;
    let mut m: Vec<Vec<Fe>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(pr) = (row..m.len()).find(|&i| m[i][col].0 != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = field.inv(m[row][col]);
        for c in col..width {
            m[row][c] = field.mul(m[row][c], inv);
        }
        for i in 0..m.len() {
            if i != row && m[i][col].0 != 0 {
                let factor = m[i][col];
                for c in col..width {
                    let delta = field.mul(factor, m[row][c]);
                    m[i][c] = field.sub(m[i][c], delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    Ok((m, pivots))
}

/// Rank of a matrix.
pub fn rank(field: &Field, rows: &[Vec<Fe>]) -> Result<usize> {
    Ok(rref(field, rows)?.1.len())
}

/// Solves the square system `a x = b`. Returns `None` if `a` is singular.
pub fn solve_square(field: &Field, a: &[Vec<Fe>], b: &[Fe]) -> Result<Option<Vec<Fe>>> {
    let n = a.len();
    check_rect(a, n)?;
    if b.len() != n {
        return Err(LrcError::Analysis(format!(
            "right-hand side has {} entries, expected {n}",
            b.len()
        )));
    }
    let aug: Vec<Vec<Fe>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let (m, pivots) = rref(field, &aug)?;
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| m[i][n]).collect()))
}

/// Transpose of a rectangular matrix.
pub fn transpose(rows: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let width = rows.first().map_or(0, |r| r.len());
    (0..width)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

/// Basis of the right nullspace: all v with M·v = 0, one basis vector per
/// non-pivot column, in column order.
pub fn nullspace(field: &Field, rows: &[Vec<Fe>]) -> Result<Vec<Vec<Fe>>> {
    let width = rows.first().map_or(0, |r| r.len());
    check_rect(rows, width)?;
    let (m, pivots) = rref(field, rows)?;
    let mut basis = Vec::new();
    for free in 0..width {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); width];
        v[free] = field.one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = field.neg(m[prow][free]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(field: &Field, rows: &[Vec<Fe>]) -> Result<Fe> {
    let n = rows.len();
    check_rect(rows, n)?;
    let mut m: Vec<Vec<Fe>> = rows.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| m[i][col].0 != 0) else {
            return Ok(field.zero());
        };
        if pr != col {
            m.swap(col, pr);
            det = field.neg(det);
        }
        det = field.mul(det, m[col][col]);
        let inv = field.inv(m[col][col]);
        for i in col + 1..n {
            if m[i][col].0 == 0 {
                continue;
            }
            let factor = field.mul(m[i][col], inv);
            for c in col..n {
                let delta = field.mul(factor, m[col][c]);
                m[i][c] = field.sub(m[i][c], delta);
            }
        }
    }
    Ok(det)
}

/// Product of a row vector with a matrix (v · M), used for codeword sweeps.
pub fn row_times_matrix(field: &Field, v: &[Fe], rows: &[Vec<Fe>]) -> Vec<Fe> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut out = vec![field.zero(); width];
    for (c, row) in v.iter().zip(rows.iter()) {
        if c.0 == 0 {
            continue;
        }
        for (o, &e) in out.iter_mut().zip(row.iter()) {
            *o = field.add(*o, field.mul(*c, e));
        }
    }
    out
}

/// The Singleton-type upper bound n − k − ⌈k/r⌉ + 2 on the minimum distance
/// of a code with locality r.
pub fn singleton_bound(n: usize, k: usize, r: usize) -> i64 {
    assert!(r >= 1);
    n as i64 - k as i64 - (k as i64 + r as i64 - 1) / r as i64 + 2
}

/// Bound minus achieved distance; zero for optimal codes.
pub fn singleton_gap(n: usize, k: usize, d: i64, r: usize) -> i64 {
    singleton_bound(n, k, r) - d
}

/// Parity-check matrix: a basis of the vectors orthogonal to every generator
/// row. Has n columns and rank n − k; empty when the code is the full space.
pub fn parity_check(code: &LinearCode) -> Result<Vec<Vec<Fe>>> {
    nullspace(&code.field, &code.rows)
}

/// Default ceiling on q^k for the exhaustive sweep.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 1 << 24;

/// q^k when it fits in u64.
pub fn message_space_size(q: u64, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(q)?;
    }
    Some(acc)
}

/// Worker count: the `LRC_THREADS` variable when set, otherwise the
/// available parallelism.
pub fn thread_count() -> usize {
    std::env::var("LRC_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Exact minimum distance by sweeping all q^k − 1 nonzero codewords.
///
/// Messages run over a basis of the row space in a reflected mixed-radix
/// Gray order, so each step updates the running codeword with a single
/// precomputed scaled row. The sweep splits across workers on the leading
/// message digit with a deterministic minimum reduction.
///
/// Fails when q^k exceeds `budget` (use the low-weight search instead) or
/// when the code is zero.
pub fn min_distance_exhaustive(code: &LinearCode, budget: u64) -> Result<usize> {
    let field = &code.field;
    let basis = code.row_basis()?;
    let k = basis.len();
    if k == 0 {
        return Err(LrcError::Analysis(
            "the zero code has no nonzero codewords".into(),
        ));
    }
    let q = field.order();
    match message_space_size(q, k) {
        Some(s) if s <= budget => {}
        _ => {
            return Err(LrcError::Analysis(format!(
                "message space {q}^{k} exceeds the exhaustive budget {budget}; \
                 use the low-weight search"
            )));
        }
    }
    let elems: Vec<Fe> = field.elements().collect();
    let qe = elems.len();
    // scaled[j][c] = elems[c] * basis[j], so a Gray step is one vector add.
    let scaled: Vec<Vec<Vec<Fe>>> = basis
        .iter()
        .map(|row| {
            elems
                .iter()
                .map(|&c| row.iter().map(|&v| field.mul(c, v)).collect())
                .collect()
        })
        .collect();

    // One block: all messages whose leading digit is `top`.
    let run_block = |top: usize| -> usize {
        let mut w: Vec<Fe> = scaled[k - 1][top].clone();
        let mut best = usize::MAX;
        if top != 0 {
            best = w.iter().filter(|&&v| v != Fe(0)).count();
        }
        if k == 1 {
            return best;
        }
        let kk = k - 1;
        let mut a = vec![0usize; kk];
        let mut f: Vec<usize> = (0..=kk).collect();
        let mut o = vec![1i64; kk];
        loop {
            let j = f[0];
            f[0] = 0;
            if j == kk {
                break;
            }
            let old = a[j];
            let new = (old as i64 + o[j]) as usize;
            a[j] = new;
            if new == 0 || new == qe - 1 {
                o[j] = -o[j];
                f[j] = f[j + 1];
                f[j + 1] = j + 1;
            }
            let delta = field.sub(elems[new], elems[old]);
            let drow = &scaled[j][delta.0 as usize];
            let mut wt = 0usize;
            for (wi, &di) in w.iter_mut().zip(drow) {
                *wi = field.add(*wi, di);
                if *wi != Fe(0) {
                    wt += 1;
                }
            }
            if wt < best {
                best = wt;
            }
        }
        best
    };

    let workers = thread_count().min(qe).max(1);
    let mut result = usize::MAX;
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|widx| {
                let run = &run_block;
                s.spawn(move || {
                    let mut best = usize::MAX;
                    let mut top = widx;
                    while top < qe {
                        best = best.min(run(top));
                        top += workers;
                    }
                    best
                })
            })
            .collect();
        for h in handles {
            result = result.min(h.join().expect("distance worker panicked"));
        }
    });
    Ok(result)
}

/// Result of a bounded-weight distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceBound {
    /// The true minimum distance (a dependent column set of this size exists
    /// and none smaller does).
    Exact(usize),
    /// No dependent set of size ≤ w_max exists, so d ≥ this value.
    LowerBound(usize),
}

/// Minimum distance via parity-check columns: d equals the size of the
/// smallest linearly dependent set of columns of H. Searches sizes 1..=w_max
/// in increasing order and stops at the first dependence; otherwise certifies
/// the lower bound w_max + 1.
pub fn min_distance_low_weight(code: &LinearCode, w_max: usize) -> Result<DistanceBound> {
    if w_max == 0 {
        return Err(LrcError::Analysis("weight ceiling must be at least 1".into()));
    }
    if code.k == 0 {
        return Err(LrcError::Analysis(
            "the zero code has no nonzero codewords".into(),
        ));
    }
    let field = &code.field;
    let h = parity_check(code)?;
    if h.is_empty() {
        // Full space: weight-1 codewords exist.
        return Ok(DistanceBound::Exact(1));
    }
    let cols = transpose(&h);

    // Size 1: a zero column.
    if cols.iter().any(|c| c.iter().all(|&v| v == Fe(0))) {
        return Ok(DistanceBound::Exact(1));
    }
    if w_max == 1 {
        return Ok(DistanceBound::LowerBound(2));
    }
    // Size 2: proportional columns collide after monic normalization.
    {
        let mut seen = std::collections::BTreeSet::new();
        for c in &cols {
            let lead = *c.iter().find(|&&v| v != Fe(0)).expect("nonzero column");
            let inv = field.inv(lead);
            let monic: Vec<Fe> = c.iter().map(|&v| field.mul(inv, v)).collect();
            if !seen.insert(monic) {
                return Ok(DistanceBound::Exact(2));
            }
        }
    }
    for w in 3..=w_max {
        if dependent_subset_exists(field, &cols, w) {
            return Ok(DistanceBound::Exact(w));
        }
    }
    Ok(DistanceBound::LowerBound(w_max + 1))
}

/// Whether some w columns are linearly dependent, given that every smaller
/// set is independent. Backtracking over index combinations with incremental
/// elimination; parallel over the first index.
fn dependent_subset_exists(field: &Field, cols: &[Vec<Fe>], w: usize) -> bool {
    use std::sync::atomic::{AtomicBool, Ordering};
    let found = AtomicBool::new(false);

    // Basis rows are monic with recorded pivot positions; returns the reduced
    // column, or None when it eliminated to zero (a dependence).
    let reduce = |basis: &[(usize, Vec<Fe>)], col: &[Fe]| -> Option<(usize, Vec<Fe>)> {
        let mut c = col.to_vec();
        for (pos, row) in basis {
            let factor = c[*pos];
            if factor != Fe(0) {
                for (ci, &ri) in c.iter_mut().zip(row) {
                    *ci = field.sub(*ci, field.mul(factor, ri));
                }
            }
        }
        let pos = c.iter().position(|&v| v != Fe(0))?;
        let inv = field.inv(c[pos]);
        for v in c.iter_mut() {
            *v = field.mul(inv, *v);
        }
        Some((pos, c))
    };

    fn extend(
        field: &Field,
        cols: &[Vec<Fe>],
        start: usize,
        remaining: usize,
        basis: &mut Vec<(usize, Vec<Fe>)>,
        reduce: &dyn Fn(&[(usize, Vec<Fe>)], &[Fe]) -> Option<(usize, Vec<Fe>)>,
        found: &std::sync::atomic::AtomicBool,
    ) -> bool {
        let _ = field;
        if found.load(std::sync::atomic::Ordering::Relaxed) {
            return false;
        }
        for i in start..=cols.len().saturating_sub(remaining) {
            match reduce(basis, &cols[i]) {
                None => {
                    // Dependence. Smaller sets were ruled out by earlier
                    // stages, so this happens only when completing the set.
                    debug_assert_eq!(remaining, 1);
                    found.store(true, std::sync::atomic::Ordering::Relaxed);
                    return true;
                }
                Some(monic) => {
                    if remaining > 1 {
                        basis.push(monic);
                        let hit = extend(field, cols, i + 1, remaining - 1, basis, reduce, found);
                        basis.pop();
                        if hit {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    let workers = thread_count().min(cols.len()).max(1);
    std::thread::scope(|s| {
        for widx in 0..workers {
            let found = &found;
            let reduce = &reduce;
            s.spawn(move || {
                let mut first = widx;
                while first + w <= cols.len() + 1 && first < cols.len() {
                    if found.load(Ordering::Relaxed) {
                        return;
                    }
                    let lead = cols[first]
                        .iter()
                        .position(|&v| v != Fe(0))
                        .expect("nonzero column");
                    let inv = field.inv(cols[first][lead]);
                    let monic: Vec<Fe> = cols[first].iter().map(|&v| field.mul(inv, v)).collect();
                    let mut basis = vec![(lead, monic)];
                    extend(field, cols, first + 1, w - 1, &mut basis, reduce, found);
                    first += workers;
                }
            });
        }
    });
    found.load(Ordering::Relaxed)
}

/// How to exercise erasure recovery while verifying locality.
#[derive(Clone, Copy, Debug)]
pub enum RecoverySweep {
    /// Every codeword of the row space, every coordinate, every partition.
    Exhaustive,
    /// This many random (message, coordinate, partition) trials.
    Random(usize),
    /// Recovery-matrix checks only, no encode/erase/repair round trips.
    MatrixOnly,
}

/// Outcome of locality verification.
#[derive(Clone, Debug)]
pub struct LocalityVerdict {
    pub pass: bool,
    /// Human-readable descriptions of every failing helper set or round trip.
    pub failures: Vec<String>,
    pub sets_checked: usize,
    pub round_trips: usize,
}

/// Certifies locality: every helper set of every partition must have an
/// invertible-everywhere recovery matrix (or, for codes without stored
/// matrices, a one-dimensional check space with no zero coefficient), and —
/// unless `MatrixOnly` — encode/erase/repair round trips must return the
/// original symbol. Round trips run only when the structural check passes.
pub fn verify_locality(code: &LinearCode, sweep: RecoverySweep) -> Result<LocalityVerdict> {
    let field = &code.field;
    let mut failures = Vec::new();
    let mut sets_checked = 0usize;
    for (pi, part) in code.partitions.iter().enumerate() {
        for (gi, g) in part.groups.iter().enumerate() {
            sets_checked += 1;
            match &g.e_matrix {
                Some(m) => {
                    let bad = crate::engine::check_recovery_matrix(field, m)?;
                    if !bad.is_empty() {
                        let members: Vec<String> =
                            bad.iter().map(|&u| g.cols[u].to_string()).collect();
                        failures.push(format!(
                            "partition {pi}, helper set at {}: columns {} unrecoverable",
                            g.base_label,
                            members.join(", ")
                        ));
                    }
                }
                None => match crate::engine::group_check_vector(code, pi, gi) {
                    Ok(h) => {
                        let bad: Vec<String> = h
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v == Fe(0))
                            .map(|(u, _)| g.cols[u].to_string())
                            .collect();
                        if !bad.is_empty() {
                            failures.push(format!(
                                "partition {pi}, helper set at {}: columns {} unrecoverable",
                                g.base_label,
                                bad.join(", ")
                            ));
                        }
                    }
                    Err(e) => failures.push(format!(
                        "partition {pi}, helper set at {}: {e}",
                        g.base_label
                    )),
                },
            }
        }
    }

    let mut round_trips = 0usize;
    if failures.is_empty() {
        match sweep {
            RecoverySweep::MatrixOnly => {}
            RecoverySweep::Exhaustive => {
                let basis = code.row_basis()?;
                let k = basis.len();
                let q = code.field.order();
                match message_space_size(q, k) {
                    Some(s) if s <= DEFAULT_EXHAUSTIVE_BUDGET => {}
                    _ => {
                        return Err(LrcError::Analysis(format!(
                            "exhaustive recovery sweep needs q^k = {q}^{k} within {}; \
                             use a random sweep",
                            DEFAULT_EXHAUSTIVE_BUDGET
                        )));
                    }
                }
                let elems: Vec<Fe> = field.elements().collect();
                let mut msg = vec![Fe(0); k];
                let mut odometer = vec![0usize; k];
                loop {
                    let cw = row_times_matrix(field, &msg, &basis);
                    round_trips += sweep_word(code, &cw, &mut failures);
                    // Advance the mixed-radix odometer.
                    let mut pos = 0;
                    loop {
                        if pos == k {
                            break;
                        }
                        odometer[pos] += 1;
                        if odometer[pos] < elems.len() {
                            msg[pos] = elems[odometer[pos]];
                            break;
                        }
                        odometer[pos] = 0;
                        msg[pos] = elems[0];
                        pos += 1;
                    }
                    if pos == k {
                        break;
                    }
                    if !failures.is_empty() {
                        break;
                    }
                }
            }
            RecoverySweep::Random(count) => {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_C0DE);
                let elems: Vec<Fe> = field.elements().collect();
                for _ in 0..count {
                    let msg: Vec<Fe> = (0..code.rows.len())
                        .map(|_| elems[rng.gen_range(0..elems.len())])
                        .collect();
                    let cw = code.encode(&msg)?;
                    let col = rng.gen_range(0..code.n);
                    let pi = rng.gen_range(0..code.partitions.len());
                    round_trips += 1;
                    check_round_trip(code, &cw, col, pi, &mut failures);
                    if !failures.is_empty() {
                        break;
                    }
                }
            }
        }
    }

    Ok(LocalityVerdict {
        pass: failures.is_empty(),
        failures,
        sets_checked,
        round_trips,
    })
}

/// Erase-and-repair every coordinate of `cw` through every partition.
fn sweep_word(code: &LinearCode, cw: &[Fe], failures: &mut Vec<String>) -> usize {
    let mut trips = 0;
    for col in 0..code.n {
        for pi in 0..code.partitions.len() {
            trips += 1;
            check_round_trip(code, cw, col, pi, failures);
            if !failures.is_empty() {
                return trips;
            }
        }
    }
    trips
}

fn check_round_trip(
    code: &LinearCode,
    cw: &[Fe],
    col: usize,
    pi: usize,
    failures: &mut Vec<String>,
) {
    let mut word: Vec<Option<Fe>> = cw.iter().copied().map(Some).collect();
    word[col] = None;
    match crate::engine::recover_coordinate(code, &word, col, pi) {
        Ok(v) if v == cw[col] => {}
        Ok(v) => failures.push(format!(
            "partition {pi}: column {col} repaired to {} instead of {}",
            code.field.format_elem(v),
            code.field.format_elem(cw[col])
        )),
        Err(e) => failures.push(format!("partition {pi}: column {col}: {e}")),
    }
}

/// Strategy for establishing the minimum distance in a report.
#[derive(Clone, Copy, Debug)]
pub enum DistancePolicy {
    /// Exhaustive when q^k fits the budget, else low-weight search with the
    /// given ceiling, else designed bound only.
    Auto {
        exhaustive_budget: u64,
        low_weight_max: usize,
    },
    Exhaustive {
        budget: u64,
    },
    LowWeight {
        w_max: usize,
    },
    DesignedOnly,
}

impl Default for DistancePolicy {
    fn default() -> Self {
        DistancePolicy::Auto {
            exhaustive_budget: DEFAULT_EXHAUSTIVE_BUDGET,
            low_weight_max: 4,
        }
    }
}

/// Everything a verification run establishes about one built code.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub k: usize,
    /// Generator rows as constructed (k_raw ≥ k; a gap means a kernel).
    pub k_raw: usize,
    pub q: u64,
    /// Locality of each helper partition.
    pub r: Vec<usize>,
    pub d_designed: i64,
    pub d_exact: Option<usize>,
    /// Best certified lower bound on the distance (designed bound combined
    /// with any search result).
    pub d_lower_bound: i64,
    pub singleton_bound: i64,
    /// Bound minus the distance in use (exact when known, else designed).
    pub singleton_gap: i64,
    pub locality_verdict: String,
    pub locality_failures: Vec<String>,
    pub method: String,
    pub elapsed_ms: u128,
}

impl ConstructionReport {
    /// Stable key-value text rendering.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        use std::fmt::Write as _;
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "k = {}", self.k);
        let _ = writeln!(s, "k_raw = {}", self.k_raw);
        let _ = writeln!(s, "q = {}", self.q);
        let _ = writeln!(
            s,
            "r = {}",
            self.r
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(s, "d_designed = {}", self.d_designed);
        match self.d_exact {
            Some(d) => {
                let _ = writeln!(s, "d_exact = {d}");
            }
            None => {
                let _ = writeln!(s, "d_exact = unknown");
            }
        }
        let _ = writeln!(s, "d_lower_bound = {}", self.d_lower_bound);
        let _ = writeln!(s, "singleton_bound = {}", self.singleton_bound);
        let _ = writeln!(s, "singleton_gap = {}", self.singleton_gap);
        let _ = writeln!(s, "locality_verdict = {}", self.locality_verdict);
        for f in &self.locality_failures {
            let _ = writeln!(s, "locality_failure = {f}");
        }
        let _ = writeln!(s, "method = {}", self.method);
        let _ = writeln!(s, "elapsed_ms = {}", self.elapsed_ms);
        s
    }

    /// JSON rendering with the same keys.
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs locality verification and the distance policy, assembling a report.
/// The Singleton bound uses the first partition's locality.
pub fn report(
    code: &LinearCode,
    policy: DistancePolicy,
    sweep: RecoverySweep,
) -> Result<ConstructionReport> {
    let start = std::time::Instant::now();
    let verdict = verify_locality(code, sweep)?;
    let q = code.field.order();
    let r0 = code.partitions[0].r;

    let mut d_exact = None;
    let mut d_lower = code.designed_distance;
    let method;
    match policy {
        DistancePolicy::Exhaustive { budget } => {
            d_exact = Some(min_distance_exhaustive(code, budget)?);
            method = "exhaustive".to_string();
        }
        DistancePolicy::LowWeight { w_max } => match min_distance_low_weight(code, w_max)? {
            DistanceBound::Exact(d) => {
                d_exact = Some(d);
                method = format!("low-weight(w={w_max})");
            }
            DistanceBound::LowerBound(b) => {
                d_lower = d_lower.max(b as i64);
                method = format!("low-weight(w={w_max})");
            }
        },
        DistancePolicy::Auto {
            exhaustive_budget,
            low_weight_max,
        } => {
            let affordable = message_space_size(q, code.k)
                .map(|s| s <= exhaustive_budget)
                .unwrap_or(false);
            if affordable {
                d_exact = Some(min_distance_exhaustive(code, exhaustive_budget)?);
                method = "exhaustive".to_string();
            } else {
                match min_distance_low_weight(code, low_weight_max)? {
                    DistanceBound::Exact(d) => {
                        d_exact = Some(d);
                        method = format!("low-weight(w={low_weight_max})");
                    }
                    DistanceBound::LowerBound(b) => {
                        d_lower = d_lower.max(b as i64);
                        method = format!("low-weight(w={low_weight_max})");
                    }
                }
            }
        }
        DistancePolicy::DesignedOnly => {
            method = "designed-only".to_string();
        }
    }
    if let Some(d) = d_exact {
        d_lower = d_lower.max(d as i64);
    }
    let d_used = d_exact.map(|d| d as i64).unwrap_or(code.designed_distance);
    let bound = singleton_bound(code.n, code.k, r0);
    Ok(ConstructionReport {
        n: code.n,
        k: code.k,
        k_raw: code.rows.len(),
        q,
        r: code.partitions.iter().map(|p| p.r).collect(),
        d_designed: code.designed_distance,
        d_exact,
        d_lower_bound: d_lower,
        singleton_bound: bound,
        singleton_gap: bound - d_used,
        locality_verdict: if verdict.pass {
            "pass".to_string()
        } else {
            format!("fail ({} helper sets)", verdict.failures.len())
        },
        locality_failures: verdict.failures,
        method,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

use crate::engine::LinearCode;
