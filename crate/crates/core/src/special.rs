//! Real log-Gamma via the Lanczos approximation (g = 7, 9 terms).

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(
        x > 0.0,
        "ln_gamma is only defined here for positive arguments"
    );
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        let mut fact = 1.0f64;
        for n in 1..20 {
            let rel = (gamma(n as f64) - fact).abs() / fact;
            assert!(rel < 1e-13, "Γ({n}) rel err {rel}");
            fact *= n as f64;
        }
        // Γ(k + 1/2) = (2k)! √π / (4^k k!)
        let mut half = PI.sqrt();
        for k in 0..30 {
            let x = k as f64 + 0.5;
            let rel = (ln_gamma(x) - half.ln()).abs() / half.ln().abs().max(1.0);
            assert!(rel < 1e-13, "lnΓ({x}) rel err {rel}");
            half *= x;
        }
    }

    #[test]
    fn reflection_branch() {
        let x = 0.25;
        let lhs = gamma(x) * gamma(1.0 - x);
        let rhs = PI / (PI * x).sin();
        assert!((lhs - rhs).abs() < 1e-13 * rhs);
    }
}
