//! Riemann–Roch on orbifold curves, Serre duality and `H^1` vanishing.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbifold::OrbifoldLineBundle;
use crate::rational::Rational;
use crate::vortex::OrbifoldU2Bundle;

fn check_weight_domain(a: i64, b: i64) -> Result<()> {
    if a < 2 || b <= 0 || b >= a {
        return Err(Error::Domain { a, b });
    }
    Ok(())
}

/// Closed form of `sum_{k=1}^{a-1} zeta^{kb} / (1 - zeta^k)` for a primitive
/// `a`-th root of unity: `b - (a + 1) / 2`.
pub fn zeta_weight_sum_closed(a: i64, b: i64) -> Result<Rational> {
    check_weight_domain(a, b)?;
    Ok(Rational::integer(b) - Rational::new(a + 1, 2))
}

/// Direct floating-point evaluation of the same sum with `zeta = exp(2 pi i / a)`.
pub fn zeta_weight_sum_numeric(a: i64, b: i64) -> Result<Complex64> {
    check_weight_domain(a, b)?;
    let turn = std::f64::consts::TAU / a as f64;
    let sum = (1..a)
        .map(|k| {
            let numerator = Complex64::from_polar(1.0, turn * ((k * b) % a) as f64);
            let denominator = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, turn * k as f64);
            numerator / denominator
        })
        .sum();
    Ok(sum)
}

/// Both sides of the root-of-unity weight identity for one `(a, b)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaSumResult {
    pub a: i64,
    pub b: i64,
    pub closed_form: Rational,
    pub numeric: (f64, f64),
}

impl ZetaSumResult {
    pub fn evaluate(a: i64, b: i64) -> Result<Self> {
        let closed_form = zeta_weight_sum_closed(a, b)?;
        let z = zeta_weight_sum_numeric(a, b)?;
        Ok(ZetaSumResult { a, b, closed_form, numeric: (z.re, z.im) })
    }

    pub fn real_error(&self) -> f64 {
        (self.numeric.0 - self.closed_form.to_f64()).abs()
    }

    pub fn imaginary_error(&self) -> f64 {
        self.numeric.1.abs()
    }

    pub fn within(&self, tol: f64) -> bool {
        self.real_error() <= tol && self.imaginary_error() <= tol
    }
}

/// `h^0 - h^1` of an orbifold line bundle: `(1 - g) + c1(L) - sum b_i/a_i`,
/// which is `(1 - g) + deg_B(L)`.
pub fn chi_line(line: &OrbifoldLineBundle) -> i64 {
    1 - line.surface().genus() as i64 + line.deg_b()
}

/// `h^0 - h^1` of an orbifold U(2) bundle:
/// `2(1 - g) + c1(det E) - sum (b_i^- + b_i^+)/a_i`.
pub fn chi_u2(bundle: &OrbifoldU2Bundle) -> Result<i64> {
    let value =
        Rational::integer(2 * (1 - bundle.surface().genus() as i64)) + bundle.determinant().c1() - bundle.pair_sum();
    value.to_integer().ok_or_else(|| Error::Invariant(format!("non-integral Euler characteristic {value}")))
}

/// `K (x) L^*`, the bundle whose cohomology is Serre dual to that of `L`.
pub fn serre_dual(line: &OrbifoldLineBundle) -> OrbifoldLineBundle {
    line.surface().canonical_bundle().tensor(&line.dual()).expect("canonical bundle lives on the same surface")
}

/// Isotropy of `K (x) L^*` from the case analysis on `b_i`:
/// `a_i - 1` if `b_i = 0`, `a_i - 1 - b_i` if `b_i < a_i - 1`, `0` if `b_i = a_i - 1`.
pub fn serre_dual_isotropy(line: &OrbifoldLineBundle) -> Vec<u32> {
    line.isotropy()
        .iter()
        .zip(line.surface().multiplicities())
        .map(|(&b, &a)| match b {
            0 => a - 1,
            b if b == a - 1 => 0,
            b => a - 1 - b,
        })
        .collect()
}

/// Sufficient criteria for `H^1(L) = 0`: `deg_B(L) > 2g - 2` or `c1(L) > c1(K)`.
/// `false` means the criteria do not decide, not that `H^1` is nonzero.
pub fn h1_vanishes(line: &OrbifoldLineBundle) -> bool {
    let surface = line.surface();
    line.deg_b() > 2 * surface.genus() as i64 - 2 || line.c1() > surface.canonical_bundle().c1()
}
