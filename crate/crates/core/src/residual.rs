//! Residual metrics used by the identity checks.

use crate::numerics::{Real, Total};
use num_complex::Complex;

/// `|l − r| / (|l| + |r|)`, or 0 when both sides vanish exactly.
pub fn relative<T: Real>(l: Complex<T>, r: Complex<T>) -> T {
    let den = l.norm() + r.norm();
    if den.is_zero() {
        T::zero()
    } else {
        (l - r).norm() / den
    }
}

/// `|l − r| / max(|l|, |r|, mass)`, or 0 when all three vanish.
///
/// `mass` is the absolute mass of the finite sums involved, so a sum that
/// cancels down to roundoff is not scored as a large relative error.
pub fn against_mass<T: Real>(l: Complex<T>, r: Complex<T>, mass: T) -> T {
    let den = l.norm().max(r.norm()).max(mass);
    if den.is_zero() {
        T::zero()
    } else {
        (l - r).norm() / den
    }
}

/// [`against_mass`] for two computed totals.
pub fn between<T: Real>(l: Total<T>, r: Total<T>) -> T {
    against_mass(l.value, r.value, l.mass.max(r.mass))
}

/// Running maximum that treats NaN as +∞, so a NaN residual can never pass.
pub fn max_residual<T: Real>(a: T, b: T) -> T {
    if a.is_nan() || b.is_nan() {
        T::infinity()
    } else {
        a.max(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn metrics() {
        let a = Complex::new(1.0, 0.0);
        let b = Complex::new(1.0 + 1e-12, 0.0);
        assert!(relative(a, b) < 1e-12);
        assert_eq!(relative(Complex::<f64>::zero(), Complex::zero()), 0.0);
        let tiny = Complex::new(1e-15, 0.0);
        assert_eq!(relative(tiny, Complex::zero()), 1.0);
        assert!(against_mass(tiny, Complex::zero(), 1.0) < 1e-14);
        assert!(max_residual(0.1, f64::NAN).is_infinite());
    }
}
