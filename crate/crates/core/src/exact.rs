//! Exact scalar and matrix arithmetic.
//!
//! Every quantity that feeds a structural decision (eigenvalues, idempotent
//! entries, widths, parameter arrays) is an arbitrary-precision rational.
//! There is no floating point anywhere in this crate: the core predicates are
//! "is this quantity zero?", and that question has no tolerance-based answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact rational scalar. `BigRational` keeps values reduced with a positive
/// denominator, so structural equality is value equality.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `num/den` (always with the denominator, so the
/// format round-trips bit-exactly through JSON).
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer.
pub fn rat_from_str(s: &str) -> Result<Rat, ExactError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ExactError::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse(d)?;
            if den.is_zero() {
                return Err(ExactError::BadRational(s.to_string()));
            }
            Ok(Rat::new(parse(n)?, den))
        }
        None => Ok(Rat::from_integer(parse(s)?)),
    }
}

/// Exact integer power with negative exponents allowed (base must be nonzero
/// for negative exponents).
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.clone(), (-exp) as usize).recip()
    }
}

/// Returns `Some(n)` when `x` is an integer.
pub fn rat_as_int(x: &Rat) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("q-binomial base q must be nonzero")]
    ZeroBase,
    #[error("cannot parse rational: {0}")]
    BadRational(String),
    #[error("matrix is singular")]
    Singular,
}

/// The q-analogue `[i]_q = 1 + q + … + q^{i-1}`, i.e. `(q^i - 1)/(q - 1)`
/// for `q != 1` and `i` for `q = 1`.
pub fn q_int(i: u32, q: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut pw = Rat::one();
    for _ in 0..i {
        acc += &pw;
        pw *= q;
    }
    acc
}

/// Gaussian binomial coefficient `[i choose j]_q` for integer `q != 0`,
/// evaluated as the exact product `prod_{l=1..j} (q^{i-l+1} - 1)/(q^l - 1)`.
/// `q = 1` degenerates to the ordinary binomial; negative `q` is allowed.
/// Returns 0 when `j > i`.
pub fn qbinomial(i: u32, j: u32, q: i64) -> Result<Rat, ExactError> {
    if q == 0 {
        return Err(ExactError::ZeroBase);
    }
    qbinomial_rat(i, j, &rat(q))
}

/// `[i choose j]_q` for an arbitrary nonzero rational base.
pub fn qbinomial_rat(i: u32, j: u32, q: &Rat) -> Result<Rat, ExactError> {
    if q.is_zero() {
        return Err(ExactError::ZeroBase);
    }
    if j > i {
        return Ok(Rat::zero());
    }
    if q.is_one() {
        // ordinary binomial C(i, j)
        let mut acc = Rat::one();
        for l in 1..=j {
            acc *= ratio((i - l + 1) as i64, l as i64);
        }
        return Ok(acc);
    }
    let mut acc = Rat::one();
    for l in 1..=j {
        let num = rat_pow(q, (i - l + 1) as i64) - Rat::one();
        let den = rat_pow(q, l as i64) - Rat::one();
        acc *= num / den;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

/// Polynomial with integer coefficients, lowest degree first.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `x - t`
    pub fn linear(t: &BigInt) -> Self {
        Self::new(vec![-t.clone(), BigInt::one()])
    }

    /// Synthetic division by `(x - t)`. Returns `(quotient, remainder)`.
    pub fn div_linear(&self, t: &BigInt) -> (Self, BigInt) {
        if self.is_zero() {
            return (Self::zero(), BigInt::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * t;
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Characteristic polynomial `det(xI - T)` of a tridiagonal integer matrix
/// with diagonal `diag`, subdiagonal `sub` and superdiagonal `sup`, computed
/// by the continuant three-term recurrence.
pub fn char_poly_tridiagonal(diag: &[i64], sub: &[i64], sup: &[i64]) -> IntPolynomial {
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    assert_eq!(sup.len(), n.saturating_sub(1));
    let mut prev = IntPolynomial::one(); // D_0
    if n == 0 {
        return prev;
    }
    // D_1 = x - diag[0]
    let mut cur = IntPolynomial::linear(&BigInt::from(diag[0]));
    for k in 2..=n {
        let lin = IntPolynomial::linear(&BigInt::from(diag[k - 1]));
        let off = BigInt::from(sub[k - 2]) * BigInt::from(sup[k - 2]);
        let next = lin.mul(&cur).add(&prev.scale(&-off));
        prev = cur;
        cur = next;
    }
    cur
}

/// All integer roots of a monic polynomial, with multiplicities, sorted in
/// descending root order. If the multiplicities do not sum to the degree the
/// remaining spectrum is non-integral and the caller must treat it as such.
///
/// Candidates are the divisors of the constant term (after stripping zero
/// roots); the constant term must fit in a `u128`, which covers every
/// intersection matrix this crate can build.
pub fn integer_roots(p: &IntPolynomial) -> Vec<(BigInt, usize)> {
    assert!(p.is_monic(), "integer_roots requires a monic polynomial");
    let mut work = p.clone();
    let mut roots: Vec<(BigInt, usize)> = Vec::new();

    // strip roots at zero
    let mut zero_mult = 0usize;
    while !work.is_zero() && work.coeffs[0].is_zero() && work.coeffs.len() > 1 {
        work = IntPolynomial::new(work.coeffs[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((BigInt::zero(), zero_mult));
    }
    if work.degree() == Some(0) || work.is_zero() {
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        return roots;
    }

    let c0 = work.coeffs[0].magnitude().clone();
    let c0: u128 = u128::try_from(&c0).expect("constant term exceeds 128 bits");
    let mut divisors = all_divisors(c0);
    divisors.sort_unstable();

    for d in divisors {
        for sign in [1i64, -1] {
            let cand = BigInt::from(d as i128 * sign as i128);
            let mut mult = 0usize;
            loop {
                if work.eval(&cand).is_zero() {
                    let (q, r) = work.div_linear(&cand);
                    debug_assert!(r.is_zero());
                    work = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
    }
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    roots
}

fn all_divisors(n: u128) -> Vec<u128> {
    if n == 0 {
        return vec![1];
    }
    let factors = factorize_u128(n);
    let mut divs = vec![1u128];
    for (p, e) in factors {
        let base = divs.clone();
        let mut pw = 1u128;
        for _ in 0..e {
            pw = pw.checked_mul(p).expect("divisor overflow");
            for d in &base {
                if let Some(v) = d.checked_mul(pw) {
                    divs.push(v);
                }
            }
        }
    }
    divs
}

fn factorize_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in [2u128, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 7u128;
    // wheel over 7, 11, 13, ... up to a modest bound, then Pollard rho
    while p * p <= n && p < 1_000_000 {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p % 6 == 1 { 4 } else { 2 };
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime_u128(m) {
                match out.iter_mut().find(|(q, _)| *q == m) {
                    Some((_, e)) => *e += 1,
                    None => out.push((m, 1)),
                }
                continue;
            }
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    out
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // schoolbook double-and-add; inputs < m <= 2^127
    let mut res = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            res = res.wrapping_add(a) % m;
        }
        a = a.wrapping_add(a) % m;
        b >>= 1;
    }
    res
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            d = gcd_u128(diff, n);
        }
        if d != n && d != 0 {
            return d;
        }
        c += 1;
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    BigInt::from(a).gcd(&BigInt::from(b)).try_into().unwrap()
}

// ---------------------------------------------------------------------------
// Dense exact matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rat::one(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        Self::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise (Hadamard) product.
    pub fn entrywise_product(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Rat {
        let n = self.rows.min(self.cols);
        (0..n).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Solves `A x = b` by fraction-free-ish Gaussian elimination with exact
    /// pivoting. Returns `None` when the system is singular or inconsistent.
    pub fn solve_linear(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        if b.len() != self.rows || self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = (0..n).map(|j| self[(i, j)].clone()).collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].clone().recip();
            for j in col..=n {
                a[col][j] = &a[col][j] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..=n {
                        let delta = &f * &a[col][j];
                        a[r][j] = &a[r][j] - &delta;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n].clone()).collect())
    }

    /// Characteristic polynomial `det(xI - A)` via the Faddeev–LeVerrier
    /// recurrence; coefficients are exact rationals (integers when the matrix
    /// is integral), lowest degree first.
    pub fn char_poly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols, "char_poly needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} I
            let mut am = self.mul(&m).unwrap();
            for i in 0..n {
                let add = coeffs[n - k + 1].clone();
                am[(i, i)] += add;
            }
            let c = -(self.mul(&am).unwrap().trace() / rat(k as i64));
            coeffs[n - k] = c;
            m = am;
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn qbinomial_small_values() {
        assert_eq!(qbinomial(3, 1, 2).unwrap(), rat(7)); // 1 + 2 + 4
        assert_eq!(qbinomial(4, 2, 1).unwrap(), rat(6)); // C(4,2)
        assert_eq!(qbinomial(5, 7, 2).unwrap(), rat(0)); // j > i
        assert_eq!(qbinomial(4, 2, 2).unwrap(), rat(35));
        assert_eq!(qbinomial(6, 3, 2).unwrap(), rat(1395));
        assert_eq!(qbinomial(4, 2, 3).unwrap(), rat(130));
        assert!(qbinomial(3, 1, 0).is_err());
    }

    #[test]
    fn qbinomial_negative_base_matches_direct_product() {
        // direct evaluation of prod_{l=1..j} (q^{i-l+1}-1)/(q^l-1) at q = -2
        let direct = |i: i64, j: i64, q: i64| -> Rat {
            let mut acc = Rat::one();
            for l in 1..=j {
                let num = rat_pow(&rat(q), i - l + 1) - Rat::one();
                let den = rat_pow(&rat(q), l) - Rat::one();
                acc *= num / den;
            }
            acc
        };
        assert_eq!(qbinomial(3, 2, -2).unwrap(), direct(3, 2, -2));
        assert_eq!(qbinomial(3, 2, -2).unwrap(), rat(3));
        for i in 0..7u32 {
            for j in 0..=i {
                let v = qbinomial(i, j, -2).unwrap();
                assert_eq!(v, direct(i as i64, j as i64, -2));
                assert!(v.is_integer(), "[{} {}]_-2 = {} not integral", i, j, v);
            }
        }
    }

    #[test]
    fn q_int_matches_qbinomial_column() {
        for q in [-3i64, -2, 1, 2, 3] {
            for i in 0..8u32 {
                assert_eq!(q_int(i, &rat(q)), qbinomial(i, 1, q).unwrap());
            }
        }
    }

    #[test]
    fn integer_roots_simple() {
        // x^2 - 1
        let p = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(
            integer_roots(&p),
            vec![(BigInt::from(1), 1), (BigInt::from(-1), 1)]
        );
        // (x-3)^2 (x+1) = x^3 - 5x^2 + 3x + 9
        let p = IntPolynomial::from_i64(&[9, 3, -5, 1]);
        assert_eq!(
            integer_roots(&p),
            vec![(BigInt::from(3), 2), (BigInt::from(-1), 1)]
        );
        // x^2 + 1 has no integer roots
        let p = IntPolynomial::from_i64(&[1, 0, 1]);
        assert!(integer_roots(&p).is_empty());
        // x^3: root 0 with multiplicity 3
        let p = IntPolynomial::from_i64(&[0, 0, 0, 1]);
        assert_eq!(integer_roots(&p), vec![(BigInt::zero(), 3)]);
    }

    #[test]
    fn cube_intersection_matrix_spectrum() {
        // tridiag(b = {3,2,1}, a = 0, c = {1,2,3}) for the 3-cube
        let p = char_poly_tridiagonal(&[0, 0, 0, 0], &[3, 2, 1], &[1, 2, 3]);
        let roots = integer_roots(&p);
        let expect: Vec<(BigInt, usize)> = [3i64, 1, -1, -3]
            .iter()
            .map(|&t| (BigInt::from(t), 1usize))
            .collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn integer_roots_resubstitution_and_deflation() {
        // product of linear factors times an irreducible residual
        let mut p = IntPolynomial::from_i64(&[1, 1, 1]); // x^2 + x + 1, no integer roots
        for t in [2i64, 2, -5, 0, 7] {
            p = p.mul(&IntPolynomial::linear(&BigInt::from(t)));
        }
        let roots = integer_roots(&p);
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 5);
        let mut deflated = p.clone();
        for (r, m) in &roots {
            assert!(p.eval(r).is_zero());
            for _ in 0..*m {
                let (q, rem) = deflated.div_linear(r);
                assert!(rem.is_zero());
                deflated = q;
            }
        }
        assert_eq!(deflated, IntPolynomial::from_i64(&[1, 1, 1]));
    }

    #[test]
    fn entrywise_identity_times_ones() {
        let i = ExactMatrix::identity(4);
        let j = ExactMatrix::ones(4, 4);
        assert_eq!(i.entrywise_product(&j).unwrap(), i);
    }

    #[test]
    fn solve_linear_small() {
        let a = ExactMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]);
        let x = a.solve_linear(&[rat(5), rat(10)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
        let sing = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.solve_linear(&[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn char_poly_dense_matches_tridiagonal_route() {
        // the same 4x4 tridiagonal matrix by both routes
        let t = ExactMatrix::from_i64_rows(&[
            &[0, 1, 0, 0],
            &[3, 0, 2, 0],
            &[0, 2, 0, 3],
            &[0, 0, 1, 0],
        ]);
        let dense = t.char_poly();
        let tri = char_poly_tridiagonal(&[0, 0, 0, 0], &[3, 2, 1], &[1, 2, 3]);
        let tri_rat: Vec<Rat> = tri.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        assert_eq!(dense, tri_rat);
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["3/4", "-7/2", "5", "-12/8"] {
            let v = rat_from_str(s).unwrap();
            let t = rat_to_string(&v);
            assert_eq!(rat_from_str(&t).unwrap(), v);
        }
        assert_eq!(rat_to_string(&ratio(-12, 8)), "-3/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("abc").is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(small_rat(), n * n).prop_map(move |v| {
            let mut it = v.into_iter();
            ExactMatrix::from_fn(n, n, |_, _| it.next().unwrap())
        })
    }

    proptest! {
        // every rational stays reduced through arithmetic chains
        #[test]
        fn rationals_stay_reduced(a in small_rat(), b in small_rat(), c in small_rat()) {
            let mut v = a.clone() * &b + &c;
            if !b.is_zero() { v /= &b; }
            v -= &a;
            prop_assert!(v.denom() > &BigInt::zero());
            prop_assert!(v.numer().gcd(v.denom()).is_one() || v.numer().is_zero());
        }

        // matmul and entrywise agree with naive references on random 5x5
        #[test]
        fn products_match_naive_reference(a in small_matrix(5), b in small_matrix(5)) {
            let ab = a.mul(&b).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    let naive: Rat = (0..5).map(|k| &a[(i, k)] * &b[(k, j)]).sum();
                    prop_assert_eq!(&ab[(i, j)], &naive);
                }
            }
            let had = a.entrywise_product(&b).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    prop_assert_eq!(had[(i, j)].clone(), &a[(i, j)] * &b[(i, j)]);
                }
            }
        }

        // A * solve(A, b) = b whenever solvable
        #[test]
        fn solve_linear_verifies(a in small_matrix(4), b in proptest::collection::vec(small_rat(), 4)) {
            if let Some(x) = a.solve_linear(&b) {
                for i in 0..4 {
                    let lhs: Rat = (0..4).map(|j| &a[(i, j)] * &x[j]).sum();
                    prop_assert_eq!(lhs, b[i].clone());
                }
            }
        }
    }
}
