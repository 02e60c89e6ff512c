//! Seifert fibered 3-manifolds `Y = S(L)` over orbifold surfaces.
//!
//! SO(3) monopoles on `Y` pull back from vortex data on the base: either
//! vortices on bundles with the same determinant (type a), or on bundles
//! with determinant `K^2 (x) det^{-1}` (type b). The second family is empty
//! whenever `c1(det) > 2 c1(K)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbifold::{LineBundleData, OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;
use crate::report::{classification_report, ModuliReport};
use crate::vortex::degree_condition;

/// The unit circle bundle of an orbifold line bundle, with a chosen base volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertManifold {
    euler_bundle: OrbifoldLineBundle,
    volume: Rational,
}

impl SeifertManifold {
    pub fn new(euler_bundle: OrbifoldLineBundle, volume: Rational) -> Result<Self> {
        if !volume.is_positive() {
            return Err(Error::NonPositiveVolume(volume.to_string()));
        }
        Ok(SeifertManifold { euler_bundle, volume })
    }

    /// Unit volume.
    pub fn circle_bundle(euler_bundle: OrbifoldLineBundle) -> Self {
        SeifertManifold { euler_bundle, volume: Rational::ONE }
    }

    /// `S^1 x Sigma`.
    pub fn product(base: OrbifoldSurface) -> Self {
        SeifertManifold::circle_bundle(base.trivial_bundle())
    }

    pub fn base(&self) -> &OrbifoldSurface {
        self.euler_bundle.surface()
    }

    pub fn euler_bundle(&self) -> &OrbifoldLineBundle {
        &self.euler_bundle
    }

    pub fn volume(&self) -> Rational {
        self.volume
    }

    /// Coefficient of π in the adiabatic constant `c_eta = -pi deg(L) / vol`.
    pub fn c_eta(&self) -> Rational {
        -self.euler_bundle.c1() / self.volume
    }

    /// Coefficient of π in the shift `-c_eta / 2` between the Levi-Civita
    /// and adiabatic Dirac operators.
    pub fn dirac_shift(&self) -> Rational {
        -self.c_eta() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMonopoleReport {
    pub base: OrbifoldSurface,
    pub euler_bundle: LineBundleData,
    pub c_eta: Rational,
    pub type_a: ModuliReport,
    pub type_b_det: LineBundleData,
    pub type_b_det_c1: Rational,
    pub type_b: Option<ModuliReport>,
    pub type_b_vanishes: bool,
}

/// `K^2 (x) det^{-1}`.
pub fn type_b_determinant(determinant: &OrbifoldLineBundle) -> OrbifoldLineBundle {
    determinant.surface().canonical_bundle().power(2).tensor(&determinant.dual()).expect("same surface")
}

pub fn seifert_monopole_report(
    manifold: &SeifertManifold,
    determinant: &OrbifoldLineBundle,
) -> Result<SeifertMonopoleReport> {
    if determinant.surface() != manifold.base() {
        return Err(Error::SurfaceMismatch);
    }
    let type_b_det = type_b_determinant(determinant);
    let type_b_vanishes = degree_condition(determinant);
    let type_b = if type_b_vanishes { None } else { Some(classification_report(&type_b_det)?) };
    Ok(SeifertMonopoleReport {
        base: manifold.base().clone(),
        euler_bundle: manifold.euler_bundle().data(),
        c_eta: manifold.c_eta(),
        type_a: classification_report(determinant)?,
        type_b_det: type_b_det.data(),
        type_b_det_c1: type_b_det.c1(),
        type_b,
        type_b_vanishes,
    })
}

/// The product case `S^1 x Sigma` with a U(2) bundle of degree `deg_e`.
pub fn s1_times_sigma_report(surface: &OrbifoldSurface, deg_e: i64) -> Result<SeifertMonopoleReport> {
    if !surface.is_smooth() {
        return Err(Error::NotSmooth(surface.cone_count()));
    }
    let determinant = OrbifoldLineBundle::new(surface.clone(), deg_e, Vec::new())?;
    seifert_monopole_report(&SeifertManifold::product(surface.clone()), &determinant)
}

impl SeifertMonopoleReport {
    pub fn into_post_quotient(mut self) -> Self {
        self.type_a = self.type_a.into_post_quotient();
        self.type_b = self.type_b.map(ModuliReport::into_post_quotient);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Seifert manifold S{} over {}", self.euler_bundle, self.base);
        let _ = writeln!(out, "c_eta = {} pi  (Dirac shift {} pi)", self.c_eta, -self.c_eta / 2);
        let _ = writeln!(out);
        let _ = writeln!(out, "[type a] vortices with det {}", self.type_a.determinant);
        out.push_str(&self.type_a.to_table());
        let _ = writeln!(out);
        let _ =
            write!(out, "[type b] vortices with det K^2 (x) det^-1 = {}, c1 = {}", self.type_b_det, self.type_b_det_c1);
        match &self.type_b {
            None => {
                let _ = writeln!(out, ": vanish since c1(det) > 2 c1(K)");
            }
            Some(report) => {
                let _ = writeln!(out);
                out.push_str(&report.to_table());
            }
        }
        out
    }
}

/// One member of the Seiberg–Witten critical family `tau = 2 pi n`, where the
/// reduction `E = L1 (+) L2` has `c1(L1) = (1 - n) c1(E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwCritical {
    pub n: i64,
    /// Coefficient of π.
    pub tau: Rational,
    pub c1_multiplier: i64,
}

/// Critical values of the U(2) monopole parameter τ, as coefficients of π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalParameters {
    /// τ = π, where the connection is flat.
    pub flat_tau: Rational,
    pub sw: Vec<SwCritical>,
}

pub fn u2_critical_parameters(bound: u32) -> CriticalParameters {
    let bound = bound as i64;
    CriticalParameters {
        flat_tau: Rational::ONE,
        sw: (-bound..=bound).map(|n| SwCritical { n, tau: Rational::integer(2 * n), c1_multiplier: 1 - n }).collect(),
    }
}

impl CriticalParameters {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "flat: tau = {} pi", self.flat_tau);
        for c in &self.sw {
            let _ = writeln!(
                out,
                "sw:   n = {:>3}  tau = {:>4} pi  c1(L1) = {} c1(E)",
                c.n,
                c.tau.to_string(),
                c.c1_multiplier
            );
        }
        out
    }
}
