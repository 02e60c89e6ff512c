//! Orbifold Riemann surfaces and orbifold line bundles.
//!
//! A line bundle is stored by its Seifert invariants: the integer
//! background degree `deg_B` together with an isotropy residue
//! `0 <= b_i < a_i` at every cone point. The first Chern class
//!
//! ```text
//! c1(L) = deg_B + sum_i b_i / a_i
//! ```
//!
//! is always derived, so the integrality constraint relating `c1` and the
//! isotropy holds for every constructible value.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Genus plus ordered cone-point multiplicities `(a_1, ..., a_n)`, each `a_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SurfaceRepr", into = "SurfaceRepr")]
pub struct OrbifoldSurface {
    genus: u32,
    multiplicities: Vec<u32>,
}

#[derive(Clone, Serialize, Deserialize)]
struct SurfaceRepr {
    genus: u32,
    cone: Vec<u32>,
}

impl TryFrom<SurfaceRepr> for OrbifoldSurface {
    type Error = Error;
    fn try_from(repr: SurfaceRepr) -> Result<Self> {
        OrbifoldSurface::new(repr.genus, repr.cone)
    }
}

impl From<OrbifoldSurface> for SurfaceRepr {
    fn from(s: OrbifoldSurface) -> Self {
        SurfaceRepr { genus: s.genus, cone: s.multiplicities }
    }
}

impl OrbifoldSurface {
    pub fn new(genus: u32, multiplicities: impl Into<Vec<u32>>) -> Result<Self> {
        let multiplicities = multiplicities.into();
        if let Some((index, &value)) = multiplicities.iter().enumerate().find(|(_, &a)| a < 2) {
            return Err(Error::InvalidMultiplicity { index, value });
        }
        Ok(OrbifoldSurface { genus, multiplicities })
    }

    /// A surface without cone points.
    pub fn smooth(genus: u32) -> Self {
        OrbifoldSurface { genus, multiplicities: Vec::new() }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn cone_count(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `a_1 a_2 ... a_n` (1 for a smooth surface).
    pub fn multiplicity_product(&self) -> i64 {
        self.multiplicities.iter().map(|&a| a as i64).product()
    }

    /// Orbifold Euler characteristic `(2 - 2g) - sum_i (1 - 1/a_i)`.
    pub fn euler_characteristic(&self) -> Rational {
        let correction: Rational =
            self.multiplicities.iter().map(|&a| Rational::ONE - Rational::new(1, a as i64)).sum();
        Rational::integer(2 - 2 * self.genus as i64) - correction
    }

    /// Checks pairwise coprimality of the multiplicities.
    pub fn check_coprime(&self) -> Result<()> {
        for (i, &a) in self.multiplicities.iter().enumerate() {
            for &b in &self.multiplicities[i + 1..] {
                if a.gcd(&b) != 1 {
                    return Err(Error::NotCoprime { first: a, second: b });
                }
            }
        }
        Ok(())
    }

    pub fn is_coprime(&self) -> bool {
        self.check_coprime().is_ok()
    }

    pub fn trivial_bundle(&self) -> OrbifoldLineBundle {
        OrbifoldLineBundle { surface: self.clone(), deg_b: 0, isotropy: vec![0; self.cone_count()] }
    }

    /// The canonical bundle, with Seifert invariants `(2g - 2; a_1 - 1, ..., a_n - 1)`.
    pub fn canonical_bundle(&self) -> OrbifoldLineBundle {
        OrbifoldLineBundle {
            surface: self.clone(),
            deg_b: 2 * self.genus as i64 - 2,
            isotropy: self.multiplicities.iter().map(|&a| a - 1).collect(),
        }
    }

    /// The generator `L0` of the topological Picard group when the
    /// multiplicities are pairwise coprime: `c1(L0) = 1 / (a_1 ... a_n)`.
    ///
    /// Each residue solves `b_i * prod_{j != i} a_j = 1 (mod a_i)`.
    pub fn fundamental_line_bundle(&self) -> Result<OrbifoldLineBundle> {
        if self.is_smooth() {
            return Err(Error::NoConePoints);
        }
        self.check_coprime()?;
        let product = self.multiplicity_product();
        let isotropy = self
            .multiplicities
            .iter()
            .map(|&a| {
                let a = a as i64;
                let cofactor = (product / a).mod_floor(&a);
                mod_inverse(cofactor, a)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::Invariant(format!("{cofactor} has no inverse mod {a}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let fractional: Rational =
            isotropy.iter().zip(&self.multiplicities).map(|(&b, &a)| Rational::new(b as i64, a as i64)).sum();
        let deg_b = (Rational::new(1, product) - fractional)
            .to_integer()
            .ok_or_else(|| Error::Invariant("fundamental bundle has non-integral background degree".into()))?;
        OrbifoldLineBundle::new(self.clone(), deg_b, isotropy)
    }
}

/// Inverse of `x` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(x: i64, m: i64) -> Option<i64> {
    let egcd = x.mod_floor(&m).extended_gcd(&m);
    (egcd.gcd == 1).then(|| egcd.x.mod_floor(&m))
}

impl fmt::Display for OrbifoldSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.genus {
            0 => write!(f, "S^2")?,
            1 => write!(f, "T^2")?,
            g => write!(f, "Sigma_{g}")?,
        }
        if !self.is_smooth() {
            write!(f, "({})", join(&self.multiplicities))?;
        }
        Ok(())
    }
}

pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// The wire form of a line bundle: `{"deg_b": d, "isotropy": [b1, ..., bn]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineBundleData {
    pub deg_b: i64,
    pub isotropy: Vec<u32>,
}

/// An orbifold line bundle in Seifert-invariant form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldLineBundle {
    surface: OrbifoldSurface,
    deg_b: i64,
    isotropy: Vec<u32>,
}

impl OrbifoldLineBundle {
    pub fn new(surface: OrbifoldSurface, deg_b: i64, isotropy: impl Into<Vec<u32>>) -> Result<Self> {
        let isotropy = isotropy.into();
        if isotropy.len() != surface.cone_count() {
            return Err(Error::LengthMismatch { expected: surface.cone_count(), found: isotropy.len() });
        }
        for (index, (&value, &multiplicity)) in isotropy.iter().zip(surface.multiplicities()).enumerate() {
            if value >= multiplicity {
                return Err(Error::InvalidIsotropy { index, value, multiplicity });
            }
        }
        Ok(OrbifoldLineBundle { surface, deg_b, isotropy })
    }

    pub fn from_data(surface: &OrbifoldSurface, data: &LineBundleData) -> Result<Self> {
        OrbifoldLineBundle::new(surface.clone(), data.deg_b, data.isotropy.clone())
    }

    pub fn data(&self) -> LineBundleData {
        LineBundleData { deg_b: self.deg_b, isotropy: self.isotropy.clone() }
    }

    pub fn surface(&self) -> &OrbifoldSurface {
        &self.surface
    }

    /// Background degree.
    pub fn deg_b(&self) -> i64 {
        self.deg_b
    }

    pub fn isotropy(&self) -> &[u32] {
        &self.isotropy
    }

    pub fn is_trivial(&self) -> bool {
        self.deg_b == 0 && self.isotropy.iter().all(|&b| b == 0)
    }

    /// `sum_i b_i / a_i`.
    pub fn fractional_part(&self) -> Rational {
        self.isotropy.iter().zip(self.surface.multiplicities()).map(|(&b, &a)| Rational::new(b as i64, a as i64)).sum()
    }

    /// Orbifold first Chern class `deg_B + sum_i b_i / a_i`.
    pub fn c1(&self) -> Rational {
        Rational::integer(self.deg_b) + self.fractional_part()
    }

    pub fn tensor(&self, other: &OrbifoldLineBundle) -> Result<OrbifoldLineBundle> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        let mut deg_b = self.deg_b + other.deg_b;
        let isotropy = self
            .isotropy
            .iter()
            .zip(&other.isotropy)
            .zip(self.surface.multiplicities())
            .map(|((&x, &y), &a)| {
                let (carry, rem) = (x + y).div_rem(&a);
                deg_b += carry as i64;
                rem
            })
            .collect();
        Ok(OrbifoldLineBundle { surface: self.surface.clone(), deg_b, isotropy })
    }

    pub fn dual(&self) -> OrbifoldLineBundle {
        let nontrivial = self.isotropy.iter().filter(|&&b| b > 0).count() as i64;
        let isotropy = self
            .isotropy
            .iter()
            .zip(self.surface.multiplicities())
            .map(|(&b, &a)| if b == 0 { 0 } else { a - b })
            .collect();
        OrbifoldLineBundle { surface: self.surface.clone(), deg_b: -self.deg_b - nontrivial, isotropy }
    }

    /// `L^k`; negative powers go through the dual.
    pub fn power(&self, k: i64) -> OrbifoldLineBundle {
        let base = if k < 0 { self.dual() } else { self.clone() };
        let mut deg_b = base.deg_b * k.abs();
        let isotropy = base
            .isotropy
            .iter()
            .zip(self.surface.multiplicities())
            .map(|(&b, &a)| {
                let (carry, rem) = (b as i64 * k.abs()).div_rem(&(a as i64));
                deg_b += carry;
                rem as u32
            })
            .collect();
        OrbifoldLineBundle { surface: self.surface.clone(), deg_b, isotropy }
    }
}

impl Serialize for OrbifoldLineBundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.data().serialize(serializer)
    }
}

impl fmt::Display for LineBundleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.isotropy.is_empty() {
            write!(f, "({})", self.deg_b)
        } else {
            write!(f, "({}; {})", self.deg_b, join(&self.isotropy))
        }
    }
}

impl fmt::Display for OrbifoldLineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.data().fmt(f)
    }
}

/// A point carrying a divisor coefficient: a cone point by index, or a
/// smooth point by label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorPoint {
    Cone(usize),
    Smooth(String),
}

/// A finite combination `sum_p (n_p / a_p) p`, where `a_p` is the cone
/// multiplicity at `p` (1 at smooth points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    surface: OrbifoldSurface,
    coefficients: BTreeMap<DivisorPoint, i64>,
}

impl DivisorClass {
    pub fn new(surface: OrbifoldSurface) -> Self {
        DivisorClass { surface, coefficients: BTreeMap::new() }
    }

    /// Adds `n / a_index` at a cone point.
    pub fn add_cone(mut self, index: usize, n: i64) -> Result<Self> {
        if index >= self.surface.cone_count() {
            return Err(Error::UnknownConePoint(index));
        }
        *self.coefficients.entry(DivisorPoint::Cone(index)).or_insert(0) += n;
        Ok(self)
    }

    /// Adds `n` at a smooth point.
    pub fn add_smooth(mut self, label: impl Into<String>, n: i64) -> Self {
        *self.coefficients.entry(DivisorPoint::Smooth(label.into())).or_insert(0) += n;
        self
    }

    pub fn surface(&self) -> &OrbifoldSurface {
        &self.surface
    }

    /// Pairs `(n_p, a_p)` per point.
    pub fn coefficients(&self) -> impl Iterator<Item = (&DivisorPoint, i64, u32)> + '_ {
        self.coefficients.iter().map(|(p, &n)| (p, n, self.weight(p)))
    }

    fn weight(&self, point: &DivisorPoint) -> u32 {
        match point {
            DivisorPoint::Cone(i) => self.surface.multiplicities()[*i],
            DivisorPoint::Smooth(_) => 1,
        }
    }

    pub fn degree(&self) -> Rational {
        self.coefficients().map(|(_, n, a)| Rational::new(n, a as i64)).sum()
    }

    /// The line bundle `O(D)`: isotropy `n_p mod a_p` at cone points, and
    /// `c1(O(D)) = deg D`.
    pub fn line_bundle(&self) -> OrbifoldLineBundle {
        let mut isotropy = vec![0u32; self.surface.cone_count()];
        for (point, n, a) in self.coefficients() {
            if let DivisorPoint::Cone(i) = point {
                isotropy[*i] = n.mod_floor(&(a as i64)) as u32;
            }
        }
        let mut bundle = OrbifoldLineBundle { surface: self.surface.clone(), deg_b: 0, isotropy };
        let deg_b = self.degree() - bundle.fractional_part();
        debug_assert!(deg_b.is_integer());
        bundle.deg_b = deg_b.numer();
        bundle
    }
}
