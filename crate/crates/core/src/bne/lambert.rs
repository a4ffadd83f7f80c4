//! Principal branch of the Lambert W function.

const INV_E: f64 = 0.367_879_441_171_442_33;

/// `W0(x)`, the solution `w >= -1` of `w·e^w = x`, for `x >= -1/e`.
///
/// Halley iteration from a branch-appropriate starting point; converges to
/// about 1e-15 relative error. Returns NaN below the branch point.
pub fn lambert_w0(x: f64) -> f64 {
    if x.is_nan() || x < -INV_E - 1e-15 {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    let offset = x + INV_E;
    if offset <= 0.0 {
        return -1.0;
    }
    let mut w = if offset < 0.3 {
        // series about the branch point in q = sqrt(2(e·x + 1))
        let q = (2.0 * std::f64::consts::E * offset).sqrt();
        -1.0 + q - q * q / 3.0 + 11.0 / 72.0 * q * q * q
    } else if x < 0.0 {
        x * (1.0 - x)
    } else if x < 3.0 {
        x.ln_1p() * 0.8
    } else {
        let l = x.ln();
        l - l.ln()
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert!((lambert_w0(1.0) - 0.567_143_290_409_783_8).abs() < 1e-15);
        assert!((lambert_w0(std::f64::consts::E) - 1.0).abs() < 1e-15);
        assert!((lambert_w0(-INV_E) + 1.0).abs() < 1e-7);
        assert_eq!(lambert_w0(0.0), 0.0);
        assert!(lambert_w0(-1.0).is_nan());
    }

    #[test]
    fn recovers_minus_a_for_small_a() {
        // W0(-a e^-a) = -a when a <= 1
        for a in [0.01f64, 0.2, 0.5, 0.9] {
            assert!((lambert_w0(-a * (-a).exp()) + a).abs() < 1e-12, "a={a}");
        }
    }

    proptest! {
        #[test]
        fn inverts_w_exp_w(x in -0.367_879f64..1e6) {
            let w = lambert_w0(x);
            prop_assert!(w >= -1.0);
            let back = w * w.exp();
            prop_assert!((back - x).abs() <= 1e-12 * (1.0 + x.abs()), "x={} w={} back={}", x, w, back);
        }
    }
}
