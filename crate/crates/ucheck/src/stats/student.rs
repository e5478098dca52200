//! Student-t tail probabilities via the regularized incomplete beta function.

/// Lanczos coefficients (g = 5, n = 6), as in Numerical Recipes.
const LANCZOS: [f64; 6] = [
    76.18009172947146,
    -86.50532032941677,
    24.01409824083091,
    -1.231739572450155,
    0.1208650973866179e-2,
    -0.5395239384953e-5,
];

/// Natural log of the gamma function for `z > 0`.
fn ln_gamma(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    let mut x = z;
    let mut tmp = x + 5.5;
    tmp -= (x + 0.5) * tmp.ln();
    let mut ser = 1.000000000190015;
    for c in LANCZOS {
        x += 1.0;
        ser += c / x;
    }
    -tmp + (2.5066282746310005 * ser / z).ln()
}

/// Continued-fraction evaluation for the incomplete beta (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 400;
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
///
/// `ln_x` and `ln_1mx` are the logs of `x` and `1 - x`, passed separately so
/// callers can supply them at full precision when `x` is near 0 or 1.
fn reg_inc_beta(a: f64, b: f64, x: f64, ln_x: f64, ln_1mx: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * ln_x + b * ln_1mx;
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Two-sided tail probability `2 P(T >= |t|)` for Student's T with `df`
/// degrees of freedom.
///
/// Monotonically decreasing in `|t|`; never truncated to an exact zero
/// short of floating-point underflow.
pub fn p_two_sided(t: f64, df: usize) -> f64 {
    assert!(df >= 1, "degrees of freedom must be at least 1");
    assert!(t.is_finite(), "t statistic must be finite");
    if t == 0.0 {
        return 1.0;
    }
    let v = df as f64;
    let t2 = t * t;
    // p = I_x(v/2, 1/2) with x = v / (v + t^2).
    let x = v / (v + t2);
    let ln_x = -(t2 / v).ln_1p();
    let ln_1mx = t2.ln() - (v + t2).ln();
    reg_inc_beta(0.5 * v, 0.5, x, ln_x, ln_1mx).clamp(0.0, 1.0)
}

/// Positive critical value `t*` with `p_two_sided(t*, df) = alpha`.
///
/// Solved by bisection; `alpha` must lie in (0, 1).
pub fn t_critical(df: usize, alpha: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    let mut lo = 0.0_f64;
    let mut hi = 2.0_f64;
    while p_two_sided(hi, df) > alpha {
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p_two_sided(mid, df) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent check: p = ∫_{θ(t)}^{π/2} cos^{v-1}θ dθ / ∫_0^{π/2} cos^{v-1}θ dθ
    // with θ(t) = atan(|t|/√v), obtained by substituting u = √v·tanθ into the
    // t density. Needs no gamma normalization.
    fn quadrature_p_two_sided(t: f64, df: usize) -> f64 {
        let v = df as f64;
        let f = |theta: f64| theta.cos().powf(v - 1.0);
        let theta_t = (t.abs() / v.sqrt()).atan();
        let half_pi = std::f64::consts::FRAC_PI_2;
        2.0 * adaptive_simpson(&f, theta_t, half_pi, 1e-13, 60)
            / (2.0 * adaptive_simpson(&f, 0.0, half_pi, 1e-13, 60))
    }

    fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }

    fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
        let whole = simpson(f, a, b);
        let mid = 0.5 * (a + b);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
            left + right + (left + right - whole) / 15.0
        } else {
            adaptive_simpson(f, a, mid, eps / 2.0, depth - 1)
                + adaptive_simpson(f, mid, b, eps / 2.0, depth - 1)
        }
    }

    #[test]
    fn t_zero_gives_one() {
        for df in [1, 2, 7, 100] {
            assert_eq!(p_two_sided(0.0, df), 1.0);
        }
    }

    #[test]
    fn agrees_with_quadrature_on_grid() {
        for df in [1usize, 2, 5, 30, 100] {
            for t in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
                let got = p_two_sided(t, df);
                let want = quadrature_p_two_sided(t, df);
                assert!(
                    (got - want).abs() < 1e-8,
                    "df={df} t={t}: got {got}, quadrature {want}"
                );
            }
        }
    }

    #[test]
    fn hand_solved_regression_p() {
        // SSE = 0.30 over df = 2 for slope 1.3 / se sqrt(0.03).
        let t = 1.3 / 0.03_f64.sqrt();
        let p = p_two_sided(t, 2);
        let want = quadrature_p_two_sided(t, 2);
        assert!((p - want).abs() < 1e-10);
        assert!((p - 0.0173).abs() < 5e-5, "p = {p}");
    }

    #[test]
    fn normal_limit_at_huge_df() {
        let p = p_two_sided(1.959964, 10_000_000);
        assert!((p - 0.05).abs() < 1e-4, "p = {p}");
    }

    #[test]
    fn monotone_decreasing_in_abs_t() {
        for df in [1usize, 3, 50] {
            let mut prev = p_two_sided(0.0, df);
            for i in 1..200 {
                let t = i as f64 * 0.1;
                let p = p_two_sided(t, df);
                assert!(p < prev, "df={df} t={t}");
                prev = p;
            }
        }
    }

    #[test]
    fn extreme_t_stays_positive() {
        let p = p_two_sided(40.0, 2562);
        assert!(p > 0.0 && p < 1e-200);
        // symmetric in the sign of t
        assert_eq!(p_two_sided(-3.2, 9), p_two_sided(3.2, 9));
    }

    #[test]
    fn critical_value_inverts_tail() {
        for df in [2usize, 10, 2557] {
            for alpha in [0.05, 0.01, 0.32] {
                let t = t_critical(df, alpha);
                assert!((p_two_sided(t, df) - alpha).abs() < 1e-9);
            }
        }
        // classic df=10, alpha=0.05 table entry
        assert!((t_critical(10, 0.05) - 2.228).abs() < 1e-3);
    }
}
