//! JSON records emitted by the CLI, schema tag `v1`.
//!
//! Rationals are always `"num/den"` strings. Factor indices are one-based.
use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::catalog::{Field, RankOneSpace, TotGeodInclusion};
use crate::kahler::AngleRealization;
use crate::lieverify::{RowReport, VerificationReport, VerifyStatus};
use crate::rational::{self, Rational};
use crate::tableaux::{AdaptedTableau, ClassifiedSubmanifold, ProductSpace, TableauBox};

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("unsupported schema `{0}`")]
    Schema(String),
    #[error("bad curvature `{0}`")]
    Curvature(String),
    #[error("record does not describe a valid entry: {0}")]
    Invalid(String),
}

pub fn fraction64(q: Rational64) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `[field, n, "num/den"]`.
pub type FactorRecord = (Field, u32, String);

fn factor_record(s: &RankOneSpace) -> FactorRecord {
    (s.field, s.n, rational::to_fraction(&s.curvature))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceRecord {
    pub field: Field,
    pub n: u32,
    pub curv: String,
}

impl SpaceRecord {
    fn new(s: &RankOneSpace) -> Self {
        SpaceRecord {
            field: s.field,
            n: s.n,
            curv: rational::to_fraction(&s.curvature),
        }
    }

    fn to_space(&self, like: &RankOneSpace) -> Result<RankOneSpace, RecordError> {
        let curvature = parse_curv(&self.curv)?;
        RankOneSpace::with_kind(self.field, self.n, curvature, like.kind)
            .map_err(|e| RecordError::Invalid(e.to_string()))
    }
}

fn parse_curv(text: &str) -> Result<Rational, RecordError> {
    rational::parse_rational(text).map_err(|_| RecordError::Curvature(text.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxRecord {
    pub factor: usize,
    pub sub: SpaceRecord,
    pub ambient: SpaceRecord,
}

fn tableau_rows(t: &AdaptedTableau) -> Vec<Vec<BoxRecord>> {
    t.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| BoxRecord {
                    factor: b.factor + 1,
                    sub: SpaceRecord::new(&b.inclusion.sub),
                    ambient: SpaceRecord::new(&b.inclusion.ambient),
                })
                .collect()
        })
        .collect()
}

fn tableau_from_rows(
    rows: &[Vec<BoxRecord>],
    m: &ProductSpace,
) -> Result<AdaptedTableau, RecordError> {
    let invalid = |msg: String| RecordError::Invalid(msg);
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut boxes = Vec::with_capacity(row.len());
        for b in row {
            let factor = b
                .factor
                .checked_sub(1)
                .filter(|&f| f < m.rank())
                .ok_or_else(|| invalid(format!("factor {} out of range", b.factor)))?;
            let like = &m.factors()[factor];
            boxes.push(TableauBox {
                factor,
                inclusion: TotGeodInclusion {
                    sub: b.sub.to_space(like)?,
                    ambient: b.ambient.to_space(like)?,
                },
            });
        }
        out.push(boxes);
    }
    let t = AdaptedTableau::new(out);
    t.validate(m).map_err(|e| invalid(e.to_string()))?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifiedRecord {
    pub schema: String,
    pub kind: String,
    pub index: usize,
    pub rank: usize,
    pub dimension: u32,
    /// Semisimple factors, one per tableau row.
    pub factors: Vec<FactorRecord>,
    pub flat_dim: usize,
    pub tableau: Vec<Vec<BoxRecord>>,
    /// Factors not used by the tableau; the flat part lies in the first
    /// `flat_dim` of them.
    pub complement: Vec<usize>,
}

impl ClassifiedRecord {
    pub fn new(index: usize, entry: &ClassifiedSubmanifold) -> Self {
        ClassifiedRecord {
            schema: SCHEMA.into(),
            kind: "classified".into(),
            index,
            rank: entry.rank(),
            dimension: entry.dimension(),
            factors: entry.semisimple_factors.iter().map(factor_record).collect(),
            flat_dim: entry.flat_dim,
            tableau: tableau_rows(&entry.tableau),
            complement: entry.complement_factors.iter().map(|f| f + 1).collect(),
        }
    }

    /// Rebuilds the entry, checking it against `m`.
    pub fn to_entry(&self, m: &ProductSpace) -> Result<ClassifiedSubmanifold, RecordError> {
        if self.schema != SCHEMA {
            return Err(RecordError::Schema(self.schema.clone()));
        }
        let invalid = |msg: &str| RecordError::Invalid(msg.to_string());
        let tableau = tableau_from_rows(&self.tableau, m)?;
        let semisimple_factors = tableau.row_spaces();
        let listed: Vec<FactorRecord> = semisimple_factors.iter().map(factor_record).collect();
        if listed != self.factors {
            return Err(invalid("factors disagree with the tableau"));
        }
        let support = tableau.factor_set();
        let complement: Vec<usize> = (0..m.rank()).filter(|i| !support.contains(i)).collect();
        let given: BTreeSet<usize> = self.complement.iter().map(|f| f.wrapping_sub(1)).collect();
        if given != complement.iter().copied().collect() || self.complement.len() != complement.len() {
            return Err(invalid("complement disagrees with the tableau"));
        }
        if self.flat_dim > complement.len() {
            return Err(invalid("flat dimension exceeds the complement"));
        }
        let entry = ClassifiedSubmanifold {
            semisimple_factors,
            flat_dim: self.flat_dim,
            tableau,
            complement_factors: complement,
        };
        if entry.rank() != self.rank || entry.dimension() != self.dimension {
            return Err(invalid("rank or dimension disagrees with the tableau"));
        }
        Ok(entry)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableauRecord {
    pub schema: String,
    pub kind: String,
    pub index: usize,
    pub subset: Vec<usize>,
    pub shape: Vec<usize>,
    pub factors: Vec<FactorRecord>,
    pub rows: Vec<Vec<BoxRecord>>,
}

impl TableauRecord {
    pub fn new(index: usize, subset: &BTreeSet<usize>, t: &AdaptedTableau) -> Self {
        TableauRecord {
            schema: SCHEMA.into(),
            kind: "tableau".into(),
            index,
            subset: subset.iter().map(|f| f + 1).collect(),
            shape: t.shape().parts().to_vec(),
            factors: t.row_spaces().iter().map(factor_record).collect(),
            rows: tableau_rows(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesRecord {
    pub schema: String,
    pub kind: String,
    pub k: u64,
    pub cosines: Vec<String>,
    pub radians: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationRecord {
    pub schema: String,
    pub kind: String,
    pub k: u64,
    pub s: u64,
    pub m: u64,
    pub n: u64,
    pub ambient: String,
    pub cosine: String,
    pub radians: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

impl RealizationRecord {
    pub fn new(r: &AngleRealization) -> Self {
        RealizationRecord {
            schema: SCHEMA.into(),
            kind: "realization".into(),
            k: r.k,
            s: r.s,
            m: r.m,
            n: r.n,
            ambient: r.ambient.to_string(),
            cosine: fraction64(r.cosine),
            radians: r.angle().radians(),
            target: None,
            error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRecord {
    pub row: usize,
    pub expected: String,
    pub expected_measured: f64,
    pub measured: f64,
    pub relative_error: f64,
    pub lts_residual: f64,
}

impl RowRecord {
    fn new(r: &RowReport) -> Self {
        RowRecord {
            row: r.row + 1,
            expected: rational::to_fraction(&r.expected),
            expected_measured: r.expected_measured,
            measured: r.measured,
            relative_error: r.relative_error,
            lts_residual: r.lts_residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationRecord {
    pub schema: String,
    pub kind: String,
    pub index: usize,
    pub factors: Vec<FactorRecord>,
    pub flat_dim: usize,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub lts_residual: f64,
    pub rows: Vec<RowRecord>,
}

impl VerificationRecord {
    pub fn new(index: usize, entry: &ClassifiedSubmanifold, report: &VerificationReport) -> Self {
        let (status, reason) = match &report.status {
            VerifyStatus::Pass => ("pass", None),
            VerifyStatus::Fail => ("fail", None),
            VerifyStatus::Unsupported(why) => ("unsupported", Some(why.clone())),
        };
        VerificationRecord {
            schema: SCHEMA.into(),
            kind: "verification".into(),
            index,
            factors: entry.semisimple_factors.iter().map(factor_record).collect(),
            flat_dim: entry.flat_dim,
            status: status.into(),
            reason,
            lts_residual: report.lts_residual,
            rows: report.rows.iter().map(RowRecord::new).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySummary {
    pub schema: String,
    pub kind: String,
    pub product: String,
    pub entries: usize,
    pub passed: usize,
    pub failed: usize,
    pub unsupported: usize,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}
