//! Counts of congruence classes within shifted floor sequences.
//!
//! `count_direct` is the ground-truth oracle: it walks the sequence term by
//! term. The closed-form paths (`count_via_floor_sums`,
//! `count_rational_alpha`) must agree with it, and the test suite checks
//! that they do on a dense grid of parameters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

/// Identifies one α-shifted, ν-offset floor sequence of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    n: u64,
    alpha: Rational,
    nu: Rational,
}

impl SequenceSpec {
    /// Requires `n ≥ 1` and `α, ν ∈ [0, 1)`.
    pub fn new(n: u64, alpha: Rational, nu: Rational) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("sequence length n must be positive".into()));
        }
        if !alpha.in_unit_interval() {
            return Err(Error::Domain(format!("alpha={alpha} must lie in [0, 1)")));
        }
        if !nu.in_unit_interval() {
            return Err(Error::Domain(format!("nu={nu} must lie in [0, 1)")));
        }
        Ok(Self { n, alpha, nu })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    /// The closed-form counting formulas are stated only under `n·α ≥ ν`.
    pub fn satisfies_shift_hypothesis(&self) -> bool {
        Rational::from_int(self.n) * self.alpha.clone() >= self.nu
    }

    fn require_shift_hypothesis(&self) -> Result<()> {
        if self.satisfies_shift_hypothesis() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "hypothesis n*alpha >= nu violated (n={}, alpha={}, nu={})",
                self.n, self.alpha, self.nu
            )))
        }
    }
}

/// A residue class `r mod m`, normalized so that `1 ≤ r ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceClass {
    r: u64,
    m: u64,
}

impl CongruenceClass {
    pub fn new(r: u64, m: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("modulus m must be positive".into()));
        }
        if r < 1 || r > m {
            return Err(Error::Domain(format!("residue r={r} must lie in [1, m={m}]")));
        }
        Ok(Self { r, m })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Iterator over the exact terms `⌊(n−ν)/k + α⌋`, `k = 1..=n`.
///
/// With α = pa/qa and ν = pv/qv, the k-th argument equals
/// `((n·qv − pv)·qa + pa·qv·k) / (qa·qv·k)`, so each term is one exact
/// floor division.
struct TermIter {
    a: BigInt, // (n*qv - pv) * qa
    b: BigInt, // pa * qv
    d: BigInt, // qa * qv
    k: u64,
    n: u64,
}

impl Iterator for TermIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.k > self.n {
            return None;
        }
        let k = BigInt::from(self.k);
        self.k += 1;
        let num = &self.a + &self.b * &k;
        let den = &self.d * k;
        Some(num.div_floor(&den))
    }
}

fn terms(spec: &SequenceSpec) -> TermIter {
    let (pa, qa) = (spec.alpha.numer().clone(), spec.alpha.denom().clone());
    let (pv, qv) = (spec.nu.numer().clone(), spec.nu.denom().clone());
    TermIter {
        a: (BigInt::from(spec.n) * &qv - pv) * &qa,
        b: pa * &qv,
        d: qa * qv,
        k: 1,
        n: spec.n,
    }
}

/// The full sequence as exact integers.
pub fn floor_sequence(spec: &SequenceSpec) -> Vec<BigInt> {
    terms(spec).collect()
}

/// Ground-truth count: `#{1 ≤ k ≤ n : ⌊(n−ν)/k + α⌋ ≡ r (mod m)}`.
pub fn count_direct(spec: &SequenceSpec, class: &CongruenceClass) -> u64 {
    let m = BigInt::from(class.m);
    let r = BigInt::from(class.r);
    terms(spec)
        .filter(|t| (t - &r).mod_floor(&m).is_zero())
        .count() as u64
}

/// Counts for every residue class `1..=m` in one pass over the sequence.
pub fn count_direct_all(spec: &SequenceSpec, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut counts = vec![0u64; m as usize];
    for t in terms(spec) {
        let rem = t.mod_floor(&mb).to_u64().expect("residue fits u64");
        // residue 0 is the class r = m
        let idx = if rem == 0 { m - 1 } else { rem - 1 };
        counts[idx as usize] += 1;
    }
    counts
}

/// `F_n`: odd terms among `⌊n/k⌋`, via the alternating floor sum
/// `Σ_{d=1..n} ⌊n/d⌋(−1)^{d+1}`.
pub fn f_seq(n: u64) -> u64 {
    let mut sum: i64 = 0;
    for d in 1..=n {
        let q = (n / d) as i64;
        if d % 2 == 1 {
            sum += q;
        } else {
            sum -= q;
        }
    }
    debug_assert!(sum >= 0);
    sum as u64
}

/// `C_n`: odd terms among `⌈n/k⌉`. Equals `n − F_{n−1}`, with `F_0 = 0`.
pub fn c_seq(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    n - if n == 1 { 0 } else { f_seq(n - 1) }
}

/// `R_n`: odd terms among the nearest-integer sequence, half-integers
/// rounded up. `R_n = −n + Σ_{d=1..n} ⌊2n/(2d−1)⌋(−1)^{d+1}`.
pub fn r_seq(n: u64) -> u64 {
    let two_n = 2 * n;
    let mut sum: i64 = -(n as i64);
    for d in 1..=n {
        let q = (two_n / (2 * d - 1)) as i64;
        if d % 2 == 1 {
            sum += q;
        } else {
            sum -= q;
        }
    }
    debug_assert!(sum >= 0);
    sum as u64
}

/// Variant of [`r_seq`] with half-integers rounded down, by direct
/// evaluation of `⌈(2n − k)/(2k)⌉` for each k.
pub fn r_seq_round_down(n: u64) -> u64 {
    let mut count = 0u64;
    for k in 1..=n {
        let num = 2 * n as i64 - k as i64;
        let den = 2 * k as i64;
        let nint_down = num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0);
        if nint_down.rem_euclid(2) == 1 {
            count += 1;
        }
    }
    count
}

/// Exact floor of `(n−ν) / x` where `x = j − α` for an integer `j ≥ 2`
/// (or more generally any positive rational `x`).
fn floor_quotient(spec: &SequenceSpec, j: u64) -> BigInt {
    // (n - nu) / (j - alpha) = (n*qv - pv)*qa / (qv * (j*qa - pa))
    let (pa, qa) = (spec.alpha.numer(), spec.alpha.denom());
    let (pv, qv) = (spec.nu.numer(), spec.nu.denom());
    let num = (BigInt::from(spec.n) * qv - pv) * qa;
    let den = qv * (BigInt::from(j) * qa - pa);
    num.div_floor(&den)
}

/// Number of terms in the sequence that are `≥ k`: `g(1) = n`, and for
/// `k ≥ 2`, `g(k) = ⌊(n−ν)/(k−α)⌋`. Requires `n·α ≥ ν`.
pub fn threshold_count(spec: &SequenceSpec, k: u64) -> Result<u64> {
    spec.require_shift_hypothesis()?;
    if k < 1 {
        return Err(Error::Domain("threshold k must be positive".into()));
    }
    if k == 1 {
        return Ok(spec.n);
    }
    Ok(floor_quotient(spec, k).to_u64().expect("count fits u64"))
}

/// Closed-form count via the difference-of-floors sums. Requires `m ≥ 2`
/// and `n·α ≥ ν`; agrees with [`count_direct`].
///
/// The series over `i` is truncated once both floor terms vanish, i.e.
/// as soon as `(n−ν)/(r+im−α) < 1`.
pub fn count_via_floor_sums(spec: &SequenceSpec, class: &CongruenceClass) -> Result<u64> {
    if class.m < 2 {
        return Err(Error::Domain(
            "floor-sum formula requires modulus m >= 2".into(),
        ));
    }
    spec.require_shift_hypothesis()?;
    let (r, m) = (class.r, class.m);
    let mut total: i64 = 0;
    if r == 1 {
        total += spec.n as i64;
        total -= floor_quotient_r1_leading(spec).to_i64().expect("fits i64");
    }
    let mut i = 0u64;
    loop {
        let d1 = r + i * m;
        let f1 = floor_quotient(spec, d1);
        if f1.is_zero() || f1.is_negative() {
            break;
        }
        let f2 = floor_quotient(spec, d1 + 1);
        total += (f1 - f2).to_i64().expect("fits i64");
        i += 1;
    }
    debug_assert!(total >= 0);
    Ok(total as u64)
}

/// `⌊(n−ν)/(1−α)⌋`, the leading correction in the r = 1 formula.
fn floor_quotient_r1_leading(spec: &SequenceSpec) -> BigInt {
    floor_quotient(spec, 1)
}

/// The rational-shift specialization for `r = 1`: with `α = p/q`,
/// `N = n − ⌊(n−ν)q/(q−p)⌋ + Σ_{i≥0}(⌊(n−ν)q/(q+qim−p)⌋ − ⌊(n−ν)q/(2q+qim−p)⌋)`.
///
/// The paper states this specialization for r = 1 only; no general-r
/// variant is provided here.
pub fn count_rational_alpha(n: u64, p: u64, q: u64, nu: &Rational, m: u64) -> Result<u64> {
    if q < 1 || p >= q {
        return Err(Error::Domain(format!(
            "rational shift requires 0 <= p < q, got p={p}, q={q}"
        )));
    }
    if m < 1 {
        return Err(Error::Domain("modulus m must be positive".into()));
    }
    let alpha = Rational::new(p as i64, q as i64)?;
    let spec = SequenceSpec::new(n, alpha, nu.clone())?;
    spec.require_shift_hypothesis()?;

    // (n - nu) * q = (n*qv - pv) * q / qv; all floors below divide this by
    // an integer denominator of the form q + q*i*m - p.
    let (pv, qv) = (nu.numer(), nu.denom());
    let scaled = (BigInt::from(n) * qv - pv) * BigInt::from(q);
    let floor_over = |d: u64| -> BigInt {
        let den = qv * BigInt::from(d);
        scaled.div_floor(&den)
    };

    let mut total: i64 = n as i64 - floor_over(q - p).to_i64().expect("fits i64");
    let mut i = 0u64;
    loop {
        let d1 = q + q * i * m - p;
        let f1 = floor_over(d1);
        if f1.is_zero() || f1.is_negative() {
            break;
        }
        let f2 = floor_over(d1 + q);
        total += (f1 - f2).to_i64().expect("fits i64");
        i += 1;
    }
    debug_assert!(total >= 0);
    Ok(total as u64)
}
