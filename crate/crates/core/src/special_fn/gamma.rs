use std::f64::consts::PI;

use num_complex::Complex64;

use super::is_nonpositive_integer;
use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function, with the reflection formula for `Re x < ½`.
pub fn gamma(x: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// `1/Γ(x)`, which is entire: zero at the nonpositive integers.
pub fn recip_gamma(x: Complex64) -> Complex64 {
    if is_nonpositive_integer(x) {
        Complex64::new(0.0, 0.0)
    } else {
        gamma_unchecked(x).inv()
    }
}

fn gamma_unchecked(x: Complex64) -> Complex64 {
    if x.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * x).sin() * gamma_unchecked(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &coeff) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += coeff / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * acc
}

/// Rising factorial `(m)_k = m(m+1)⋯(m+k−1)`, with `(m)_0 = 1`.
pub fn pochhammer(m: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (m + j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gamma_trivial_values() {
        assert!(rel(gamma_real(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma_real(0.5).unwrap(), PI.sqrt()) < 1e-14);
        let mut fact = 1.0;
        for n in 1..20 {
            assert!(rel(gamma_real(n as f64).unwrap(), fact) < 1e-13, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn gamma_reflection_region() {
        // Γ(−½) = −2√π
        assert!(rel(gamma_real(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-13);
        // Γ(x)Γ(1−x) = π / sin(πx)
        let x = Complex64::new(0.3, 0.7);
        let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        let rhs = PI / (PI * x).sin();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_real(x), Err(Error::Pole(_))));
            assert_eq!(
                recip_gamma(Complex64::new(x, 0.0)),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn pochhammer_values() {
        let m = Complex64::new(0.37, -1.2);
        assert_eq!(pochhammer(m, 0), Complex64::new(1.0, 0.0));
        assert_eq!(pochhammer(Complex64::new(1.0, 0.0), 5).re, 120.0);
        // direct product oracle
        assert_eq!(pochhammer(Complex64::new(2.5, 0.0), 3).re, 2.5 * 3.5 * 4.5);
        assert_eq!(pochhammer(Complex64::new(2.5, 0.0), 3).re, 39.375);
        for k in 0..12 {
            assert_eq!(pochhammer(m, k + 1), pochhammer(m, k) * (m + k as f64));
        }
    }
}
