//! Orbifold U(2) bundles and the fixed-point data of the circle action on
//! their SO(3) vortex moduli: expected dimensions, line reductions with
//! their Morse–Bott indices, projectively flat strata, and per-determinant
//! enumeration.
//!
//! Everything proportional to π (moment-map values) is carried as the
//! exact rational coefficient of π.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbifold::{OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;

/// Isotropy `(b^-, b^+)` of a U(2) bundle at one cone point, normalized so
/// that `b^- <= b^+`. Serializes as `[b^-, b^+]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct IsotropyPair {
    pub minus: u32,
    pub plus: u32,
}

impl IsotropyPair {
    pub fn new(x: u32, y: u32) -> Self {
        IsotropyPair { minus: x.min(y), plus: x.max(y) }
    }

    pub fn is_balanced(&self) -> bool {
        self.minus == self.plus
    }

    pub fn gap(&self) -> u32 {
        self.plus - self.minus
    }

    pub fn sum(&self) -> u32 {
        self.minus + self.plus
    }
}

impl From<(u32, u32)> for IsotropyPair {
    fn from((x, y): (u32, u32)) -> Self {
        IsotropyPair::new(x, y)
    }
}

impl From<IsotropyPair> for (u32, u32) {
    fn from(p: IsotropyPair) -> Self {
        (p.minus, p.plus)
    }
}

impl fmt::Display for IsotropyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.minus, self.plus)
    }
}

pub fn format_pairs(pairs: &[IsotropyPair]) -> String {
    let inner = pairs.iter().map(IsotropyPair::to_string).collect::<Vec<_>>().join(",");
    format!("({inner})")
}

/// An orbifold U(2) bundle: isotropy pairs plus a fixed determinant line bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldU2Bundle {
    determinant: OrbifoldLineBundle,
    pairs: Vec<IsotropyPair>,
}

impl OrbifoldU2Bundle {
    pub fn new(determinant: OrbifoldLineBundle, pairs: impl Into<Vec<IsotropyPair>>) -> Result<Self> {
        let pairs = pairs.into();
        let surface = determinant.surface();
        if pairs.len() != surface.cone_count() {
            return Err(Error::LengthMismatch { expected: surface.cone_count(), found: pairs.len() });
        }
        for (index, ((pair, &a), &b)) in
            pairs.iter().zip(surface.multiplicities()).zip(determinant.isotropy()).enumerate()
        {
            if pair.minus > pair.plus || pair.plus >= a {
                return Err(Error::InvalidIsotropyPair { index, minus: pair.minus, plus: pair.plus, multiplicity: a });
            }
            if pair.sum() % a != b {
                return Err(Error::DeterminantMismatch { index, expected: b, multiplicity: a });
            }
        }
        Ok(OrbifoldU2Bundle { determinant, pairs })
    }

    /// The split bundle `L1 (+) L2`.
    pub fn split(first: &OrbifoldLineBundle, second: &OrbifoldLineBundle) -> Result<Self> {
        let determinant = first.tensor(second)?;
        let pairs: Vec<_> =
            first.isotropy().iter().zip(second.isotropy()).map(|(&x, &y)| IsotropyPair::new(x, y)).collect();
        OrbifoldU2Bundle::new(determinant, pairs)
    }

    pub fn surface(&self) -> &OrbifoldSurface {
        self.determinant.surface()
    }

    pub fn determinant(&self) -> &OrbifoldLineBundle {
        &self.determinant
    }

    pub fn pairs(&self) -> &[IsotropyPair] {
        &self.pairs
    }

    /// `n_0 = #{i : b_i^- = b_i^+}`.
    pub fn balanced_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.is_balanced()).count()
    }

    /// `sum_i (b_i^- + b_i^+) / a_i`.
    pub fn pair_sum(&self) -> Rational {
        self.pairs
            .iter()
            .zip(self.surface().multiplicities())
            .map(|(p, &a)| Rational::new(p.sum() as i64, a as i64))
            .sum()
    }

    fn genus(&self) -> i64 {
        self.surface().genus() as i64
    }

    /// Real dimension of the irreducible SO(3) vortex moduli space (before
    /// the circle quotient): `2(g - 1 + c1(det E) + (n - n_0) - sum (b_i^- + b_i^+)/a_i)`.
    pub fn irreducible_dim(&self) -> Result<i64> {
        let unbalanced = (self.pairs.len() - self.balanced_count()) as i64;
        let half = Rational::integer(self.genus() - 1 + unbalanced) + self.determinant.c1() - self.pair_sum();
        even_integer(half * 2, "irreducible dimension")
    }

    /// Expected dimension of the projectively flat stratum, `6(g - 1) + 2(n - n_0)`.
    pub fn flat_expected_dim(&self) -> i64 {
        let unbalanced = (self.pairs.len() - self.balanced_count()) as i64;
        6 * (self.genus() - 1) + 2 * unbalanced
    }

    /// `c1(det E) > 2 c1(K)`.
    pub fn degree_condition(&self) -> bool {
        degree_condition(&self.determinant)
    }

    /// Whether `det E` has odd degree (smooth case) or is an odd power of
    /// the fundamental line bundle (coprime multiplicities).
    pub fn odd_determinant(&self) -> Result<bool> {
        let surface = self.surface();
        if surface.is_smooth() {
            return Ok(self.determinant.deg_b().rem_euclid(2) == 1);
        }
        surface.check_coprime()?;
        let power = self.determinant.c1() * surface.multiplicity_product();
        let k = power
            .to_integer()
            .ok_or_else(|| Error::Invariant(format!("determinant is not a power of L0 (k = {power})")))?;
        Ok(k.rem_euclid(2) == 1)
    }

    /// Status of the irreducible projectively flat connections.
    ///
    /// Empty when `g = 0` and `n - n_0 <= 2`. Otherwise empty exactly when
    /// some `eps` in `{-1, +1}^n` has `n_+ + deg_B(det E)` odd and
    /// `n_+ - sum eps_i (b_i^+ - b_i^-)/a_i < 1 - g`; the first such vector in
    /// lexicographic order (`-1 < +1`) is returned as the witness.
    pub fn flat_status(&self) -> FlatStatus {
        let n = self.pairs.len();
        if self.genus() == 0 && n - self.balanced_count() <= 2 {
            return FlatStatus::EmptyByGenusCount;
        }
        let bound = Rational::integer(1 - self.genus());
        let gaps: Vec<Rational> = self
            .pairs
            .iter()
            .zip(self.surface().multiplicities())
            .map(|(p, &a)| Rational::new(p.gap() as i64, a as i64))
            .collect();
        for mask in 0u64..(1u64 << n) {
            let epsilon: Vec<i8> = (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect();
            let n_plus = epsilon.iter().filter(|&&e| e == 1).count() as i64;
            if (n_plus + self.determinant.deg_b()).rem_euclid(2) != 1 {
                continue;
            }
            let weighted: Rational = epsilon.iter().zip(&gaps).map(|(&e, &g)| g * e as i64).sum();
            if Rational::integer(n_plus) - weighted < bound {
                return FlatStatus::EmptyByWitness { witness: epsilon };
            }
        }
        FlatStatus::NonEmpty
    }

    /// Every line subbundle compatible with the isotropy, for background
    /// degrees `0..=max_deg_b`. Slots with `b^- = b^+` do not branch.
    pub fn compatible_reductions(&self, max_deg_b: i64) -> Vec<LineReduction> {
        let mut choices: Vec<Vec<u32>> = vec![Vec::new()];
        for pair in &self.pairs {
            let options: &[u32] = if pair.is_balanced() { &[pair.minus] } else { &[pair.minus, pair.plus] };
            choices = choices
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&b| {
                        let mut next = prefix.clone();
                        next.push(b);
                        next
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for deg_b in 0..=max_deg_b {
            for isotropy in &choices {
                let line = OrbifoldLineBundle::new(self.surface().clone(), deg_b, isotropy.clone())
                    .expect("isotropy drawn from valid pairs");
                out.push(LineReduction::new(self.clone(), line).expect("isotropy drawn from the pairs"));
            }
        }
        out
    }

    /// The reduction by the trivial line bundle, if every pair contains 0.
    pub fn trivial_reduction(&self) -> Option<LineReduction> {
        LineReduction::new(self.clone(), self.surface().trivial_bundle()).ok()
    }

    /// Largest background degree a reduction `L` can have while
    /// `c1(L) <= c1(det E) / 2`.
    pub fn reduction_degree_cap(&self) -> i64 {
        (self.determinant.c1() / 2).floor()
    }

    /// Nonempty abelian vortex strata: reductions with `deg_B(L) >= 0` and
    /// `c1(L) <= c1(det E) / 2`. Equality is kept and flagged through
    /// [`AbelianStratum::on_wall`].
    pub fn abelian_strata(&self) -> Result<Vec<AbelianStratum>> {
        let half = self.determinant.c1() / 2;
        self.compatible_reductions(self.reduction_degree_cap())
            .into_iter()
            .filter(|r| r.line().c1() <= half)
            .map(AbelianStratum::new)
            .collect()
    }
}

fn even_integer(value: Rational, what: &str) -> Result<i64> {
    match value.to_integer() {
        Some(v) if v % 2 == 0 => Ok(v),
        _ => Err(Error::Invariant(format!("{what} {value} is not an even integer"))),
    }
}

/// `c1(det) > 2 c1(K)`: under this condition only one type of monopole survives.
pub fn degree_condition(determinant: &OrbifoldLineBundle) -> bool {
    determinant.c1() > determinant.surface().canonical_bundle().c1() * 2
}

impl fmt::Display for OrbifoldU2Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_pairs(&self.pairs))
    }
}

/// A line subbundle `L` of `E` (so `E = L (+) L^* (x) det E`) together with
/// the sign vector recording which isotropy entry `L` picks: `-1` for
/// `b^- < b^+`, `+1` for `b^+ > b^-`, `0` when the pair is balanced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineReduction {
    bundle: OrbifoldU2Bundle,
    line: OrbifoldLineBundle,
    epsilon: Vec<i8>,
}

impl LineReduction {
    pub fn new(bundle: OrbifoldU2Bundle, line: OrbifoldLineBundle) -> Result<Self> {
        if line.surface() != bundle.surface() {
            return Err(Error::SurfaceMismatch);
        }
        let epsilon = bundle
            .pairs()
            .iter()
            .zip(line.isotropy())
            .enumerate()
            .map(|(index, (pair, &value))| match () {
                _ if pair.is_balanced() && value == pair.minus => Ok(0),
                _ if value == pair.minus => Ok(-1),
                _ if value == pair.plus => Ok(1),
                _ => Err(Error::IncompatibleLine { index, value, minus: pair.minus, plus: pair.plus }),
            })
            .collect::<Result<Vec<i8>>>()?;
        let reduction = LineReduction { bundle, line, epsilon };
        reduction.check_integrality()?;
        Ok(reduction)
    }

    /// `c1(L) - sum_i [eps_i (b_i^+ - b_i^-) + (b_i^+ + b_i^-)] / (2 a_i)` must be an integer.
    fn check_integrality(&self) -> Result<()> {
        let correction: Rational = self
            .bundle
            .pairs()
            .iter()
            .zip(&self.epsilon)
            .zip(self.bundle.surface().multiplicities())
            .map(|((p, &e), &a)| Rational::new(e as i64 * p.gap() as i64 + p.sum() as i64, 2 * a as i64))
            .sum();
        let residue = self.line.c1() - correction;
        if residue.is_integer() {
            Ok(())
        } else {
            Err(Error::Invariant(format!("reduction integrality fails: {residue}")))
        }
    }

    pub fn bundle(&self) -> &OrbifoldU2Bundle {
        &self.bundle
    }

    pub fn line(&self) -> &OrbifoldLineBundle {
        &self.line
    }

    pub fn epsilon(&self) -> &[i8] {
        &self.epsilon
    }

    /// The quotient line bundle `L^* (x) det E`.
    pub fn complement(&self) -> OrbifoldLineBundle {
        self.line.dual().tensor(self.bundle.determinant()).expect("same surface")
    }

    pub fn n_zero(&self) -> usize {
        self.epsilon.iter().filter(|&&e| e == 0).count()
    }

    pub fn n_plus(&self) -> usize {
        self.epsilon.iter().filter(|&&e| e == 1).count()
    }

    pub fn n_minus(&self) -> usize {
        self.epsilon.iter().filter(|&&e| e == -1).count()
    }

    /// Morse–Bott index of the Higgs-strength function at this abelian stratum:
    ///
    /// ```text
    /// 2 [ g - 1 + c1(det E) - 2 c1(L)
    ///     + sum_{eps_i = +1} (b_i^+ - b_i^-)/a_i
    ///     + n_- + sum_{eps_i = -1} (b_i^- - b_i^+)/a_i ]
    /// ```
    pub fn morse_index(&self) -> Result<i64> {
        let mut half = Rational::integer(self.bundle.genus() - 1 + self.n_minus() as i64)
            + self.bundle.determinant().c1()
            - self.line.c1() * 2;
        for ((pair, &e), &a) in
            self.bundle.pairs().iter().zip(&self.epsilon).zip(self.bundle.surface().multiplicities())
        {
            let gap = Rational::new(pair.gap() as i64, a as i64);
            match e {
                1 => half += gap,
                -1 => half -= gap,
                _ => {}
            }
        }
        even_integer(half * 2, "Morse-Bott index")
    }
}

/// Projectively flat stratum status.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum FlatStatus {
    /// `g = 0` and at most two unbalanced cone points.
    EmptyByGenusCount,
    /// A sign vector satisfying the emptiness criterion.
    EmptyByWitness {
        witness: Vec<i8>,
    },
    NonEmpty,
}

impl FlatStatus {
    pub fn is_empty(&self) -> bool {
        !matches!(self, FlatStatus::NonEmpty)
    }
}

impl fmt::Display for FlatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatStatus::EmptyByGenusCount => write!(f, "empty (g=0, n-n0<=2)"),
            FlatStatus::EmptyByWitness { witness } => {
                let signs: Vec<_> = witness.iter().map(|&e| if e > 0 { "+1" } else { "-1" }).collect();
                write!(f, "empty (eps=({}))", signs.join(","))
            }
            FlatStatus::NonEmpty => write!(f, "non-empty"),
        }
    }
}

/// A nonempty stratum of abelian vortices, identified with `Sym^{deg_B L}`
/// of the underlying surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianStratum {
    pub reduction: LineReduction,
    /// Real dimension, `2 deg_B(L)`.
    pub stratum_dimension: i64,
    pub morse_index: i64,
    /// Coefficient of π in `mu = pi (c1(det E) - 2 c1(L))`.
    pub moment_map_value: Rational,
}

impl AbelianStratum {
    pub fn new(reduction: LineReduction) -> Result<Self> {
        let deg_b = reduction.line().deg_b();
        if deg_b < 0 {
            return Err(Error::Invariant(format!("abelian stratum with negative background degree {deg_b}")));
        }
        let moment_map_value = reduction.bundle().determinant().c1() - reduction.line().c1() * 2;
        if moment_map_value.is_negative() {
            return Err(Error::Invariant(format!("negative moment map value {moment_map_value}")));
        }
        Ok(AbelianStratum {
            stratum_dimension: 2 * deg_b,
            morse_index: reduction.morse_index()?,
            moment_map_value,
            reduction,
        })
    }

    /// `c1(L) = c1(det E) / 2`, the boundary case of the degree constraint.
    pub fn on_wall(&self) -> bool {
        self.moment_map_value.is_zero()
    }
}

/// All U(2) isotropy data with the given determinant, in lexicographic order.
pub fn enumerate_u2_bundles(determinant: &OrbifoldLineBundle) -> Vec<OrbifoldU2Bundle> {
    let surface = determinant.surface();
    let mut lists: Vec<Vec<IsotropyPair>> = vec![Vec::new()];
    for (&a, &b) in surface.multiplicities().iter().zip(determinant.isotropy()) {
        let options: Vec<IsotropyPair> = (0..a)
            .flat_map(|minus| (minus..a).map(move |plus| IsotropyPair { minus, plus }))
            .filter(|p| p.sum() % a == b)
            .collect();
        lists = lists
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&p| {
                    let mut next = prefix.clone();
                    next.push(p);
                    next
                })
            })
            .collect();
    }
    lists.into_iter().map(|pairs| OrbifoldU2Bundle { determinant: determinant.clone(), pairs }).collect()
}
