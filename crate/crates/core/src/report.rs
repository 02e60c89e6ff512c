//! Classification reports: one row per U(2) bundle with a given
//! determinant, plus JSON and fixed-width table rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::orbifold::{LineBundleData, OrbifoldLineBundle, OrbifoldSurface};
use crate::rational::Rational;
use crate::vortex::{enumerate_u2_bundles, format_pairs, AbelianStratum, FlatStatus, IsotropyPair, OrbifoldU2Bundle};

/// Serialized form of an [`AbelianStratum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub line: LineBundleData,
    pub epsilon: Vec<i8>,
    pub stratum_dimension: i64,
    pub morse_index: i64,
    pub moment_map_value: Rational,
    pub on_wall: bool,
}

impl From<&AbelianStratum> for StratumRow {
    fn from(s: &AbelianStratum) -> Self {
        StratumRow {
            line: s.reduction.line().data(),
            epsilon: s.reduction.epsilon().to_vec(),
            stratum_dimension: s.stratum_dimension,
            morse_index: s.morse_index,
            moment_map_value: s.moment_map_value,
            on_wall: s.on_wall(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub isotropy: Vec<IsotropyPair>,
    pub irreducible_dim: i64,
    pub flat: FlatStatus,
    pub flat_expected_dim: i64,
    pub abelian: Vec<StratumRow>,
    pub degree_condition: bool,
}

impl ReportRow {
    pub fn for_bundle(bundle: &OrbifoldU2Bundle) -> Result<Self> {
        Ok(ReportRow {
            isotropy: bundle.pairs().to_vec(),
            irreducible_dim: bundle.irreducible_dim()?,
            flat: bundle.flat_status(),
            flat_expected_dim: bundle.flat_expected_dim(),
            abelian: bundle.abelian_strata()?.iter().map(StratumRow::from).collect(),
            degree_condition: bundle.degree_condition(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReport {
    pub surface: OrbifoldSurface,
    pub determinant: LineBundleData,
    pub determinant_c1: Rational,
    /// Whether positive irreducible dimensions have had the circle quotient
    /// (one real dimension) removed.
    pub post_quotient: bool,
    pub rows: Vec<ReportRow>,
}

/// Classifies every U(2) bundle with the given determinant. Dimensions are
/// reported before the circle quotient.
pub fn classification_report(determinant: &OrbifoldLineBundle) -> Result<ModuliReport> {
    let mut rows = enumerate_u2_bundles(determinant).iter().map(ReportRow::for_bundle).collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.isotropy.cmp(&b.isotropy));
    Ok(ModuliReport {
        surface: determinant.surface().clone(),
        determinant: determinant.data(),
        determinant_c1: determinant.c1(),
        post_quotient: false,
        rows,
    })
}

impl ModuliReport {
    /// Subtracts 1 from every positive irreducible dimension.
    pub fn into_post_quotient(mut self) -> Self {
        if !self.post_quotient {
            for row in &mut self.rows {
                if row.irreducible_dim > 0 {
                    row.irreducible_dim -= 1;
                }
            }
            self.post_quotient = true;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table: `Isotropy | IrredDim | Flat | AbelianVortices(index)`.
    pub fn to_table(&self) -> String {
        const HEADERS: [&str; 4] = ["Isotropy", "IrredDim", "Flat", "AbelianVortices(index)"];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|row| {
                [
                    format_pairs(&row.isotropy),
                    row.irreducible_dim.to_string(),
                    row.flat.to_string(),
                    abelian_cell(&row.abelian),
                ]
            })
            .collect();
        let mut widths = HEADERS.map(str::len);
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }

        let mut out = String::new();
        let dims = if self.post_quotient { "after circle quotient" } else { "before circle quotient" };
        let _ = writeln!(
            out,
            "surface {}  det {}  c1(det) = {}  ({dims})",
            self.surface, self.determinant, self.determinant_c1
        );
        let line = |out: &mut String, cols: [&str; 4]| {
            let _ = writeln!(
                out,
                "{:<w0$} | {:>w1$} | {:<w2$} | {}",
                cols[0],
                cols[1],
                cols[2],
                cols[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
            );
        };
        line(&mut out, HEADERS);
        let _ = writeln!(
            out,
            "{}-+-{}-+-{}-+-{}",
            "-".repeat(widths[0]),
            "-".repeat(widths[1]),
            "-".repeat(widths[2]),
            "-".repeat(widths[3])
        );
        for row in &cells {
            line(&mut out, [&row[0], &row[1], &row[2], &row[3]]);
        }
        out
    }
}

fn abelian_cell(strata: &[StratumRow]) -> String {
    if strata.is_empty() {
        return "none".to_string();
    }
    let indices: Vec<String> = strata
        .iter()
        .map(|s| {
            let mut cell = s.morse_index.to_string();
            if s.on_wall {
                cell.push_str(" (wall)");
            }
            cell
        })
        .collect();
    format!("{} (index {})", strata.len(), indices.join(", "))
}
