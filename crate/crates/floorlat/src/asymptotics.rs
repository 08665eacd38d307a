//! Asymptotic densities of congruence classes in shifted floor sequences.
//!
//! The density of class `r mod m` under shift `α` is evaluated by two
//! independent routes: a digamma-difference closed form of the alternating
//! series, and direct quadrature of `∫₀¹ (1−x)x^{r−1−α}/(1−x^m) dx`.
//! Exact arithmetic ends at this module's boundary; everything here is
//! 64-bit floating point with explicit error estimates.

use crate::rational::Rational;
use crate::sequences::{CongruenceClass, SequenceSpec};
use crate::{Error, Result};

/// Parameters of one density query: shift `α ∈ [0,1)` and class `r mod m`.
#[derive(Clone, Debug)]
pub struct SlopeQuery {
    alpha: Rational,
    r: u64,
    m: u64,
}

impl SlopeQuery {
    pub fn new(alpha: Rational, r: u64, m: u64) -> Result<Self> {
        if !alpha.in_unit_interval() {
            return Err(Error::Domain(format!("alpha={alpha} must lie in [0, 1)")));
        }
        CongruenceClass::new(r, m)?;
        Ok(Self { alpha, r, m })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Which route produced a density value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeMethod {
    Series,
    Quadrature,
}

/// An evaluated asymptotic density with its error estimate.
#[derive(Clone, Copy, Debug)]
pub struct SlopeResult {
    pub value: f64,
    pub method: SlopeMethod,
    pub abs_error_estimate: f64,
}

/// Digamma function for positive arguments: upward recurrence to reach
/// argument >= 10, then the Stirling-type asymptotic expansion.
pub fn digamma(mut x: f64) -> f64 {
    assert!(x > 0.0, "digamma requires a positive argument");
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k}), seven terms
    let inv2 = 1.0 / (x * x);
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 * (1.0 / 12.0)))))));
    acc + x.ln() - 0.5 / x - series
}

/// `A_{α,r,m} = Σ_{i≥0} (1/(r+im−α) − 1/(r+1+im−α))`, summed in closed
/// form as `(ψ((r+1−α)/m) − ψ((r−α)/m))/m`.
pub fn series_a(query: &SlopeQuery) -> SlopeResult {
    let alpha = query.alpha.to_f64();
    let m = query.m as f64;
    let r = query.r as f64;
    let value = (digamma((r + 1.0 - alpha) / m) - digamma((r - alpha) / m)) / m;
    SlopeResult {
        value,
        method: SlopeMethod::Series,
        abs_error_estimate: 1e-12,
    }
}

/// Partial sum of the same alternating series with an integral tail bound.
/// Kept as an independent cross-check path for tests; too slow for
/// production use.
pub fn series_a_truncated(query: &SlopeQuery, terms: u64) -> (f64, f64) {
    let alpha = query.alpha.to_f64();
    let m = query.m as f64;
    let r = query.r as f64;
    let mut sum = 0.0;
    for i in 0..terms {
        let d = r + i as f64 * m - alpha;
        sum += 1.0 / d - 1.0 / (d + 1.0);
    }
    // Each remaining term is 1/(d(d+1)) < 1/d^2; the tail is below
    // the integral of m^{-1} x^{-2} starting at the first omitted d.
    let d0 = r + terms as f64 * m - alpha;
    (sum, 1.0 / (m * d0))
}

/// Tanh-sinh (double-exponential) quadrature over (0, 1).
///
/// The abscissas are computed as x = 1/(1+e^{-2w}) and 1−x = 1/(1+e^{2w})
/// so that points exponentially close to either endpoint keep full
/// relative precision; this is what makes the x^{-α} endpoint integrable
/// singularity harmless. Returns (value, error estimate) from the last
/// level halving.
fn tanh_sinh_01(f: impl Fn(f64) -> f64, target: f64) -> (f64, f64) {
    const T_MAX: f64 = 6.9; // weights underflow beyond this
    let eval = |t: f64| -> f64 {
        let w = 0.5 * std::f64::consts::PI * t.sinh();
        let x = 1.0 / (1.0 + (-2.0 * w).exp());
        let dx = 0.5 * std::f64::consts::PI * t.cosh() / (2.0 * w.cosh().powi(2));
        if dx == 0.0 || !dx.is_finite() {
            return 0.0;
        }
        let fx = f(x);
        if fx.is_finite() {
            fx * dx
        } else {
            0.0
        }
    };

    let mut h = 1.0f64;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut value = sum * h;
    let mut err = f64::INFINITY;
    for _ in 0..10 {
        h *= 0.5;
        let mut odd = 0.0;
        let mut j = 1;
        while (j as f64) * h <= T_MAX {
            let t = j as f64 * h;
            odd += eval(t) + eval(-t);
            j += 2;
        }
        sum += odd;
        let new_value = sum * h;
        err = (new_value - value).abs();
        value = new_value;
        if err <= target * 0.1 {
            break;
        }
    }
    (value, err.max(1e-15))
}

/// Quadrature route for the density integral
/// `∫₀¹ (1−x)x^{r−1−α}/(1−x^m) dx`, using the analytically simplified
/// integrand `x^{r−1−α} / (1 + x + … + x^{m−1})`, which is smooth at x = 1
/// (value 1/m there).
pub fn slope_integral(query: &SlopeQuery) -> SlopeResult {
    let alpha = query.alpha.to_f64();
    let m = query.m;
    let beta = query.r as f64 - 1.0 - alpha;
    let integrand = move |x: f64| -> f64 {
        let mut denom = 1.0;
        let mut p = 1.0;
        for _ in 1..m {
            p *= x;
            denom += p;
        }
        x.powf(beta) / denom
    };
    let (value, err) = tanh_sinh_01(integrand, 1e-12);
    SlopeResult {
        value,
        method: SlopeMethod::Quadrature,
        abs_error_estimate: err,
    }
}

/// The asymptotic density `lim N/n` for class `r mod m` under shift `α`:
/// exactly 1 for m = 1, the integral for `r ≥ 2`, and
/// `−α/(1−α) + ∫` for `r = 1`.
pub fn slope(query: &SlopeQuery) -> SlopeResult {
    if query.m == 1 {
        return SlopeResult {
            value: 1.0,
            method: SlopeMethod::Quadrature,
            abs_error_estimate: 0.0,
        };
    }
    let base = slope_integral(query);
    if query.r == 1 {
        let alpha = query.alpha.to_f64();
        SlopeResult {
            value: -alpha / (1.0 - alpha) + base.value,
            ..base
        }
    } else {
        base
    }
}

/// One row of a density table.
#[derive(Clone, Copy, Debug)]
pub struct SlopeEntry {
    pub r: u64,
    pub m: u64,
    pub value: f64,
}

/// Densities for every class `1 ≤ r ≤ m ≤ m_max` under shift `α`.
pub fn slope_table(alpha: &Rational, m_max: u64) -> Result<Vec<SlopeEntry>> {
    if m_max < 1 {
        return Err(Error::Domain("m_max must be positive".into()));
    }
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for r in 1..=m {
            let q = SlopeQuery::new(alpha.clone(), r, m)?;
            rows.push(SlopeEntry {
                r,
                m,
                value: slope(&q).value,
            });
        }
    }
    Ok(rows)
}

/// Finite-n residual `B = Σ_{i≥0} ({(n−ν)/(r+im−α)} − {(n−ν)/(r+1+im−α)})`
/// with each fractional part computed exactly and converted to float for
/// accumulation. Truncated at the same index as the floor-sum count.
/// Requires `m ≥ 2`, `r ≥ 2`, and `n·α ≥ ν`.
pub fn residual_b(spec: &SequenceSpec, class: &CongruenceClass) -> Result<f64> {
    if class.m() < 2 {
        return Err(Error::Domain("residual requires modulus m >= 2".into()));
    }
    if class.r() < 2 {
        return Err(Error::Domain(
            "residual is defined for r >= 2; r = 1 follows from the partition identity".into(),
        ));
    }
    if !spec.satisfies_shift_hypothesis() {
        return Err(Error::Domain(format!(
            "hypothesis n*alpha >= nu violated (n={}, alpha={}, nu={})",
            spec.n(),
            spec.alpha(),
            spec.nu()
        )));
    }
    let numerator = Rational::from_int(spec.n()) - spec.nu().clone();
    let frac_at = |j: u64| -> Option<f64> {
        let den = Rational::from_int(j) - spec.alpha().clone();
        let q = numerator.clone() / den;
        if q < Rational::one() {
            None
        } else {
            Some(q.fract().to_f64())
        }
    };
    let (r, m) = (class.r(), class.m());
    let mut sum = 0.0;
    let mut i = 0u64;
    loop {
        let d1 = r + i * m;
        let Some(fr1) = frac_at(d1) else { break };
        // second term may already be below 1; its floor is then 0 and the
        // fractional part equals the quotient itself
        let den2 = Rational::from_int(d1 + 1) - spec.alpha().clone();
        let q2 = numerator.clone() / den2;
        let fr2 = q2.fract().to_f64();
        sum += fr1 - fr2;
        i += 1;
    }
    Ok(sum)
}

/// `f(α) = ∫₀¹ x^{1−α}/(1+x) dx`, the asymptotic proportion of even terms
/// under shift `α`. Evaluated in closed form by digamma pairing of the
/// alternating series `Σ_k (−1)^k/(k+2−α)`.
pub fn parity_f(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha={alpha} must lie in [0, 1]")));
    }
    let c = 2.0 - alpha;
    Ok(0.5 * (digamma((c + 1.0) / 2.0) - digamma(c / 2.0)))
}

/// Quadrature cross-check for [`parity_f`].
pub fn parity_f_quadrature(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha={alpha} must lie in [0, 1]")));
    }
    let (value, _) = tanh_sinh_01(move |x| x.powf(1.0 - alpha) / (1.0 + x), 1e-13);
    Ok(value)
}

/// The unique shift `α₀ ∈ (0, 1)` with `f(α₀) = 1/2`, by bisection.
/// `f` is monotone increasing, so plain bisection is unconditionally
/// robust; at most 60 iterations.
pub fn find_alpha0(tolerance: f64) -> Result<f64> {
    if !(tolerance >= 1e-13) {
        return Err(Error::Domain(
            "tolerance must be at least 1e-13 (f64 limit)".into(),
        ));
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    debug_assert!(parity_f(lo)? < 0.5 && parity_f(hi)? > 0.5);
    let mut mid = 0.5;
    for _ in 0..60 {
        mid = 0.5 * (lo + hi);
        let fm = parity_f(mid)?;
        if (fm - 0.5).abs() <= tolerance {
            return Ok(mid);
        }
        if fm < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{count_via_floor_sums, CongruenceClass, SequenceSpec};

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn query(alpha: &str, r: u64, m: u64) -> SlopeQuery {
        SlopeQuery::new(rat(alpha), r, m).unwrap()
    }

    #[test]
    fn digamma_known_values() {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-13);
        // psi(1/2) = -gamma - 2 ln 2
        let expected = -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5) - expected).abs() < 1e-13);
        // psi(x+1) = psi(x) + 1/x
        for x in [0.1, 0.7, 1.3, 5.5, 42.0] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-12);
        }
    }

    #[test]
    fn series_a_named_values() {
        let log2 = std::f64::consts::LN_2;
        let a = series_a(&query("0", 1, 2));
        assert!((a.value - log2).abs() < 1e-12, "A_{{0,1,2}} = {}", a.value);
        let a = series_a(&query("1/2", 1, 2));
        assert!((a.value - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn series_a_matches_truncated_sum() {
        let q = query("0", 2, 3);
        let closed = series_a(&q).value;
        let (partial, tail) = series_a_truncated(&q, 100_000_000);
        assert!(
            (closed - partial).abs() <= tail + 1e-10,
            "closed={closed} partial={partial} tail={tail}"
        );
    }

    #[test]
    fn slope_integral_named_values() {
        let log2 = std::f64::consts::LN_2;
        let v = slope_integral(&query("0", 2, 2));
        assert!((v.value - (1.0 - log2)).abs() < 1e-9, "got {}", v.value);
        let v = slope_integral(&query("1/2", 2, 4));
        let expected = std::f64::consts::FRAC_PI_4 * (2.0f64.sqrt() - 1.0);
        assert!((v.value - expected).abs() < 1e-9, "got {}", v.value);
        let v = slope_integral(&query("0", 1, 1));
        assert!((v.value - 1.0).abs() < 1e-9, "got {}", v.value);
    }

    #[test]
    fn slope_named_values() {
        let v = slope(&query("0", 1, 3)).value;
        let expected = 3.0f64.sqrt() * std::f64::consts::PI / 9.0;
        assert!((v - expected).abs() < 1e-9, "got {v}");
        let v = slope(&query("1/2", 4, 4)).value;
        let expected = 2.0 - std::f64::consts::FRAC_PI_4 * (2.0f64.sqrt() + 1.0);
        assert!((v - expected).abs() < 1e-9, "got {v}");
        let v = slope(&query("1/2", 1, 2)).value;
        assert!((v - (std::f64::consts::FRAC_PI_2 - 1.0)).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn series_and_quadrature_agree() {
        for alpha_tenths in 0..=9u64 {
            let alpha = Rational::new(alpha_tenths as i64, 10).unwrap();
            for m in 2..=6u64 {
                for r in 2..=m {
                    let q = SlopeQuery::new(alpha.clone(), r, m).unwrap();
                    let s = series_a(&q);
                    let i = slope_integral(&q);
                    assert!(
                        (s.value - i.value).abs() <= 1e-8,
                        "alpha={alpha} r={r} m={m}: series={} quad={}",
                        s.value,
                        i.value
                    );
                }
            }
        }
    }

    #[test]
    fn row_sums_are_one() {
        for alpha in ["0", "1/2", "0.3", "0.9"] {
            let rows = slope_table(&rat(alpha), 6).unwrap();
            for m in 1..=6u64 {
                let sum: f64 = rows.iter().filter(|e| e.m == m).map(|e| e.value).sum();
                assert!((sum - 1.0).abs() <= 1e-9, "alpha={alpha} m={m} sum={sum}");
            }
        }
    }

    #[test]
    fn residual_identity_with_floor_sums() {
        // (n - nu) * (truncated A partial sum) + B equals the exact
        // floor-difference sum; check at n = 100, alpha = 0, r = 2, m = 2.
        let spec = SequenceSpec::new(100, Rational::zero(), Rational::zero()).unwrap();
        let class = CongruenceClass::new(2, 2).unwrap();
        let floor_sum = count_via_floor_sums(&spec, &class).unwrap() as f64;
        // truncation index: terms with (n - nu)/(r + i m - alpha) >= 1
        let n = 100f64;
        let mut partial_a = 0.0;
        let mut i = 0f64;
        while 2.0 + 2.0 * i <= n {
            let d = 2.0 + 2.0 * i;
            partial_a += 1.0 / d - 1.0 / (d + 1.0);
            i += 1.0;
        }
        // floor = value - fractional part, term by term, so the exact
        // identity is (n - nu) * A_partial - B = floor-difference sum.
        let b = residual_b(&spec, &class).unwrap();
        assert!(
            (n * partial_a - b - floor_sum).abs() < 1e-9,
            "lhs={} rhs={floor_sum}",
            n * partial_a - b
        );
    }

    #[test]
    fn residual_single_term_case() {
        // n=2, alpha=1/2, r=2, m=2: only i=0 survives (2/(3/2) = 4/3 >= 1
        // but 2/(7/2) < 1), contributing {4/3} - {4/5} = 1/3 - 4/5.
        let spec = SequenceSpec::new(2, rat("1/2"), Rational::zero()).unwrap();
        let class = CongruenceClass::new(2, 2).unwrap();
        let b = residual_b(&spec, &class).unwrap();
        assert!((b - (1.0 / 3.0 - 4.0 / 5.0)).abs() < 1e-12, "b={b}");
    }

    #[test]
    fn residual_empty_below_first_threshold() {
        // n=1, alpha=1/2, r=2, m=2: 1/(3/2) < 1, so no terms survive.
        let spec = SequenceSpec::new(1, rat("1/2"), Rational::zero()).unwrap();
        let class = CongruenceClass::new(2, 2).unwrap();
        assert_eq!(residual_b(&spec, &class).unwrap(), 0.0);
    }

    #[test]
    fn residual_vanishes_on_integer_quotients() {
        // n=3, alpha=0, r=2, m=2: quotients 3/2... not integer; build one
        // that is: n=6, alpha=0, r=2, m=4 gives 6/2=3 and 6/3=2 at i=0,
        // 6/6=1 and 6/7<1 at i=1.
        let spec = SequenceSpec::new(6, Rational::zero(), Rational::zero()).unwrap();
        let class = CongruenceClass::new(2, 4).unwrap();
        let b = residual_b(&spec, &class).unwrap();
        // terms: {3}-{2}=0, {1}-{6/7}=-6/7
        assert!((b + 6.0 / 7.0).abs() < 1e-12, "b={b}");
    }

    #[test]
    fn parity_f_endpoints() {
        let log2 = std::f64::consts::LN_2;
        assert!((parity_f(0.0).unwrap() - (1.0 - log2)).abs() < 1e-13);
        assert!((parity_f(1.0).unwrap() - log2).abs() < 1e-13);
        assert!(parity_f(0.682379227335).unwrap() < 0.5);
        assert!(parity_f(0.682379227345).unwrap() > 0.5);
    }

    #[test]
    fn parity_f_matches_quadrature() {
        for alpha in [0.0, 0.1, 0.25, 0.5, 0.682, 0.9, 1.0] {
            let closed = parity_f(alpha).unwrap();
            let quad = parity_f_quadrature(alpha).unwrap();
            assert!((closed - quad).abs() < 1e-11, "alpha={alpha}");
        }
    }

    #[test]
    fn parity_f_strictly_increasing() {
        let mut prev = parity_f(0.0).unwrap();
        for i in 1..=1000 {
            let x = i as f64 / 1000.0;
            let v = parity_f(x).unwrap();
            assert!(v > prev, "not increasing at alpha={x}");
            prev = v;
        }
    }

    #[test]
    fn alpha0_bracket() {
        let a0 = find_alpha0(1e-11).unwrap();
        assert!(
            (0.682379227335..=0.682379227345).contains(&a0),
            "alpha0={a0}"
        );
        let coarse = find_alpha0(1e-3).unwrap();
        assert!((0.6..=0.7).contains(&coarse), "coarse={coarse}");
        assert!(find_alpha0(1e-14).is_err());
    }
}
