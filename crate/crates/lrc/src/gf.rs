//! Arithmetic in small finite fields `GF(p^m)` with `q = p^m <= 2^16`.
//!
//! Elements are residues in `F_p[a]/(modulus)` stored by canonical index
//! `sum c_i * p^i` where `(c_0, ..., c_{m-1})` is the coefficient vector of the
//! residue (constant term `c_0`). Canonical element order is the numeric order
//! of that index, so `0 < 1 < ... < p-1 < a < a+1 < ...`.
//!
//! Multiplication, inversion, and powers run on discrete-log tables built once
//! per field from a reference polynomial-basis multiplication
//! ([`FieldSpec::mul_poly_basis`], kept public so tests can confirm the two
//! paths agree). Addition works directly on coefficient vectors (XOR when
//! `p = 2`).

use crate::{LrcError, Result};
use std::sync::Arc;

/// A field element, stored as its canonical index `sum c_i p^i`.
///
/// Elements are only meaningful relative to the [`FieldSpec`] that produced
/// them; mixing fields is a logic error that `FieldSpec` methods do not try to
/// detect beyond range checks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(pub u32);

/// Shared handle to a field; cheap to clone and thread-safe.
pub type Field = Arc<FieldSpec>;

/// A concrete finite field `GF(p^m)` with an explicit irreducible modulus.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Modulus coefficients, constant term first, length `m + 1`, monic.
    /// For prime fields this is `[0, 1]` (the polynomial `x`), unused.
    modulus: Vec<u64>,
    /// `exp[i] = g^i` for `i < 2(q-1)` (doubled to avoid reductions).
    exp: Vec<u32>,
    /// `log[e] = i` with `g^i = e`, for `e != 0`.
    log: Vec<u32>,
    /// Canonical index of the chosen multiplicative generator.
    generator: u32,
}

impl FieldSpec {
    /// Builds `GF(p^m)`. When `modulus` is `None` and `m > 1`, the canonically
    /// least irreducible monic polynomial of degree `m` is used (least by the
    /// index `sum c_i p^i` of its non-leading coefficients); this gives
    /// `x^2+x+1` for F4, `x^3+x+1` for F8, `x^4+x+1` for F16, `x^5+x^2+1` for
    /// F32, and `x^6+x+1` for F64.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(LrcError::Field(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(LrcError::Field("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| LrcError::Field(format!("{p}^{m} exceeds 2^16")))?;
        let modulus = match modulus {
            Some(c) => {
                if m == 1 {
                    return Err(LrcError::Field(
                        "prime fields take no modulus".into(),
                    ));
                }
                if c.len() != m as usize + 1 {
                    return Err(LrcError::Field(format!(
                        "modulus needs {} coefficients (constant first), got {}",
                        m + 1,
                        c.len()
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(LrcError::Field("modulus coefficient out of range".into()));
                }
                if c[m as usize] != 1 {
                    return Err(LrcError::Field("modulus must be monic".into()));
                }
                if !ppoly_is_irreducible(p, &c) {
                    return Err(LrcError::Field("modulus is reducible".into()));
                }
                c
            }
            None => {
                if m == 1 {
                    vec![0, 1]
                } else {
                    default_modulus(p, m)
                }
            }
        };

        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        };
        field.build_tables()?;
        Ok(Arc::new(field))
    }

    /// Prime subfield characteristic.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime subfield.
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements `q = p^m`.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Modulus coefficients, constant term first (length `m+1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The residue of `a` (the image of the polynomial variable); only
    /// meaningful for extension fields.
    pub fn gen_elem(&self) -> Fe {
        Fe(self.p as u32)
    }

    /// A fixed multiplicative generator of the unit group.
    pub fn multiplicative_generator(&self) -> Fe {
        Fe(self.generator)
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u64) -> Result<Fe> {
        if index < self.q {
            Ok(Fe(index as u32))
        } else {
            Err(LrcError::Field(format!(
                "element index {index} out of range for field of order {}",
                self.q
            )))
        }
    }

    /// The image of an integer under `Z -> F_p -> GF(p^m)`.
    pub fn from_int(&self, v: i64) -> Fe {
        let p = self.p as i64;
        Fe(v.rem_euclid(p) as u32)
    }

    /// Coefficient vector `(c_0, ..., c_{m-1})`, constant term first.
    pub fn coeffs(&self, e: Fe) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut x = e.0 as u64;
        for _ in 0..self.m {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn from_coeffs(&self, c: &[u64]) -> Fe {
        let mut idx = 0u64;
        for &ci in c.iter().rev() {
            idx = idx * self.p + ci % self.p;
        }
        Fe(idx as u32)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u32).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut out, mut mult) = (0u64, 1u64);
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        for _ in 0..self.m {
            out += ((x + y) % self.p) * mult;
            x /= self.p;
            y /= self.p;
            mult *= self.p;
        }
        Fe(out as u32)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut out, mut mult) = (0u64, 1u64);
        let mut x = a.0 as u64;
        for _ in 0..self.m {
            out += ((self.p - x % self.p) % self.p) * mult;
            x /= self.p;
            mult *= self.p;
        }
        Fe(out as u32)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero");
        let qm1 = (self.q - 1) as u32;
        Fe(self.exp[(qm1 - self.log[a.0 as usize]) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    /// `a^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let qm1 = (self.q - 1) as u64;
        let idx = (self.log[a.0 as usize] as u64 * (e % qm1)) % qm1;
        Fe(self.exp[idx as usize])
    }

    /// `a^e` for any integer exponent; `None` exactly for `0^e` with `e < 0`.
    pub fn powi(&self, a: Fe, e: i64) -> Option<Fe> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else if a.0 == 0 {
            None
        } else {
            Some(self.pow(self.inv(a), e.unsigned_abs()))
        }
    }

    /// Reference multiplication on coefficient vectors (schoolbook product
    /// reduced by the modulus). The log-table path is validated against this.
    pub fn mul_poly_basis(&self, a: Fe, b: Fe) -> Fe {
        let prod = ppoly_mulmod(self.p, &self.coeffs(a), &self.coeffs(b), &self.modulus);
        self.from_coeffs(&prod)
    }

    /// The `n`-th roots of unity; errors unless `n` divides `q - 1`.
    pub fn roots_of_unity(&self, n: u64) -> Result<Vec<Fe>> {
        if n == 0 || (self.q - 1) % n != 0 {
            return Err(LrcError::Field(format!(
                "{n} does not divide q-1 = {}",
                self.q - 1
            )));
        }
        let step = (self.q - 1) / n;
        let mut roots: Vec<Fe> = (0..n)
            .map(|i| Fe(self.exp[(i * step) as usize]))
            .collect();
        roots.sort();
        Ok(roots)
    }

    /// All solutions of `x^n = c` (possibly empty), in canonical order.
    pub fn nth_roots(&self, c: Fe, n: u64) -> Vec<Fe> {
        assert!(n >= 1);
        if c.0 == 0 {
            return vec![Fe(0)];
        }
        let qm1 = self.q - 1;
        let target = self.log[c.0 as usize] as u64;
        let g = gcd(n % qm1, qm1);
        let g = if g == 0 { qm1 } else { g };
        if target % g != 0 {
            return Vec::new();
        }
        // Solve n*i = target (mod q-1): i = (target/g) * inv(n/g) mod (q-1)/g.
        let step = qm1 / g;
        let i0 = mod_inv((n % qm1) / g, step).map(|inv| (target / g % step) * inv % step);
        let i0 = match i0 {
            Some(v) => v,
            // n/g and step share no factor by construction; step == 1 case.
            None => 0,
        };
        let mut roots: Vec<Fe> = (0..g).map(|j| Fe(self.exp[(i0 + j * step) as usize])).collect();
        roots.sort();
        roots
    }

    /// Renders an element as a field literal: a decimal integer for prime
    /// fields, a polynomial in `a` (highest power first) otherwise.
    pub fn format_elem(&self, e: Fe) -> String {
        if self.m == 1 {
            return e.0.to_string();
        }
        let c = self.coeffs(e);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let t = match (i, ci) {
                (0, v) => v.to_string(),
                (1, 1) => "a".to_string(),
                (1, v) => format!("{v}*a"),
                (i, 1) => format!("a^{i}"),
                (i, v) => format!("{v}*a^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses a field literal produced by [`FieldSpec::format_elem`] (and
    /// reasonable variations: arbitrary term order, whitespace, `-` signs).
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LrcError::Literal(s.to_string()));
        }
        // Split into signed terms.
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0usize;
        let mut i = 0usize;
        let mut neg = false;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if (ch == '+' || ch == '-') && i > start {
                terms.push((neg, &compact[start..i]));
                neg = ch == '-';
                start = i + 1;
            } else if (ch == '+' || ch == '-') && i == start {
                if ch == '-' {
                    neg = !neg;
                }
                start = i + 1;
            }
            i += 1;
        }
        if start < compact.len() {
            terms.push((neg, &compact[start..]));
        }
        if terms.is_empty() {
            return Err(LrcError::Literal(s.to_string()));
        }
        let mut acc = Fe(0);
        for (is_neg, term) in terms {
            let v = self.parse_term(term).map_err(|_| LrcError::Literal(s.to_string()))?;
            acc = self.add(acc, if is_neg { self.neg(v) } else { v });
        }
        Ok(acc)
    }

    fn parse_term(&self, t: &str) -> Result<Fe> {
        let bad = || LrcError::Literal(t.to_string());
        if let Some(rest) = t.strip_prefix("a") {
            return self.parse_gen_power(rest, 1).ok_or_else(bad);
        }
        if let Some(star) = t.find('*') {
            let coeff: u64 = t[..star].parse().map_err(|_| bad())?;
            let rest = t[star + 1..].strip_prefix('a').ok_or_else(bad)?;
            let pow = self.parse_gen_power(rest, 1).ok_or_else(bad)?;
            return Ok(self.mul(self.from_int(coeff as i64), pow));
        }
        let v: i64 = t.parse().map_err(|_| bad())?;
        Ok(self.from_int(v))
    }

    fn parse_gen_power(&self, rest: &str, _mult: u64) -> Option<Fe> {
        if self.m == 1 {
            return None;
        }
        if rest.is_empty() {
            return Some(self.gen_elem());
        }
        let e: u64 = rest.strip_prefix('^')?.parse().ok()?;
        Some(self.pow(self.gen_elem(), e))
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q as usize;
        let qm1 = q - 1;
        // Find the canonically least multiplicative generator.
        let factors = prime_factors(self.q - 1);
        let mut generator = None;
        for cand in 1..q as u64 {
            let g = Fe(cand as u32);
            let ok = factors
                .iter()
                .all(|&f| self.pow_poly_basis(g, (self.q - 1) / f) != Fe(1));
            if ok {
                generator = Some(g);
                break;
            }
        }
        let g = generator.ok_or_else(|| LrcError::Field("no generator found".into()))?;
        self.generator = g.0;
        let mut exp = vec![0u32; 2 * qm1.max(1)];
        let mut log = vec![0u32; q];
        let mut acc = Fe(1);
        for (i, slot) in exp.iter_mut().enumerate().take(qm1) {
            *slot = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_poly_basis(acc, g);
        }
        if acc != Fe(1) {
            return Err(LrcError::Field("generator order mismatch".into()));
        }
        for i in 0..qm1 {
            exp[qm1 + i] = exp[i];
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    fn pow_poly_basis(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut out = Fe(1);
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul_poly_basis(out, base);
            }
            base = self.mul_poly_basis(base, base);
            e >>= 1;
        }
        out
    }
}

/// Canonically least irreducible monic polynomial of degree `m` over `F_p`.
fn default_modulus(p: u64, m: u32) -> Vec<u64> {
    let tail_count = p.pow(m);
    for idx in 0..tail_count {
        let mut c = Vec::with_capacity(m as usize + 1);
        let mut x = idx;
        for _ in 0..m {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        if ppoly_is_irreducible(p, &c) {
            return c;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

// ---- prime-field polynomial helpers (coefficient vectors over F_p, constant
// term first); used only for field construction and the reference
// multiplication path ----

fn ppoly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn ppoly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    ppoly_trim(&mut out);
    out
}

fn ppoly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    ppoly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p).expect("monic or unit leading coefficient");
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - factor * m[i] % p) % p;
        }
        ppoly_trim(&mut r);
    }
    r
}

fn ppoly_mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    ppoly_rem(p, &ppoly_mul(p, a, b), m)
}

fn ppoly_powmod(p: u64, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut base = ppoly_rem(p, a, m);
    let mut out = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            out = ppoly_mulmod(p, &out, &base, m);
        }
        base = ppoly_mulmod(p, &base, &base, m);
        e >>= 1;
    }
    out
}

fn ppoly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    ppoly_trim(&mut x);
    ppoly_trim(&mut y);
    while !y.is_empty() {
        let r = ppoly_rem(p, &x, &y);
        x = y;
        y = r;
    }
    x
}

/// Rabin irreducibility test: `f` (monic, degree `d`) is irreducible over
/// `F_p` iff `x^(p^d) = x (mod f)` and `gcd(x^(p^(d/l)) - x, f) = 1` for every
/// prime `l | d`.
fn ppoly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    if d == 1 {
        return true;
    }
    // x^(p^k) mod f by repeated p-th powering.
    let pow_p_k = |k: usize| -> Vec<u64> {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = ppoly_powmod(p, &acc, p, f);
        }
        acc
    };
    let top = pow_p_k(d);
    let mut diff = top.clone();
    // diff = x^(p^d) - x
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    ppoly_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for l in prime_factors(d as u64) {
        let sub = pow_p_k(d / l as usize);
        let mut diff = sub.clone();
        while diff.len() < 2 {
            diff.push(0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        ppoly_trim(&mut diff);
        let g = ppoly_gcd(p, &diff, f);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `n` (None if not coprime or `n <= 1`).
fn mod_inv(a: u64, n: u64) -> Option<u64> {
    if n <= 1 {
        return if n == 1 { Some(0) } else { None };
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let qu = r / new_r;
        (t, new_t) = (new_t, t - qu * new_t);
        (r, new_r) = (new_r, r - qu * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}
