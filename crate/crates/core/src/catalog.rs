//! Rank-one symmetric spaces and their totally geodesic submanifolds.
//!
//! A space `F H^n(c)` is a hyperbolic space over `F ∈ {R, C, H, O}` whose
//! sectional curvature is `-c` (real case) or pinched in `[-c, -c/4]`. The
//! compact duals carry the same data with a [`SpaceKind::CompactDual`] flag.
//!
//! The catalog stores congruence classes of proper, non-flat, totally
//! geodesic submanifolds for curvature `c = 1` and rescales them: entries
//! tagged with curvature `1` become `c`, entries tagged `1/4` become `c/4`.
//! Geodesics and points are flats and are not listed here.
//!
//! Low-dimensional coincidences are normalized eagerly:
//! `C H^1(c) = R H^2(c)`, `H H^1(c) = R H^4(c)`, `O H^1(c) = R H^8(c)`.
//! The complex line `R H^2(c)` inside `C H^n(c)` is listed for every `n ≥ 2`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("curvature must be positive, got {0}")]
    NonPositiveCurvature(String),
    #[error("octonionic dimension must be 2, got {0}")]
    OctonionicDimension(u32),
    #[error("real hyperbolic dimension must be at least 2, got {0}")]
    RealDimension(u32),
    #[error("dimension must be positive")]
    ZeroDimension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
    O,
}

impl Field {
    /// Real dimension of the field.
    pub fn real_dim(self) -> u32 {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
            Field::O => 8,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
            Field::O => "O",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Field> {
        match s {
            "R" => Some(Field::R),
            "C" => Some(Field::C),
            "H" => Some(Field::H),
            "O" => Some(Field::O),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    NonCompact,
    CompactDual,
}

/// `F H^n(c)` or its compact dual.
///
/// Fields are public so records can be assembled directly; use
/// [`RankOneSpace::new`] or [`RankOneSpace::validate`] to enforce invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneSpace {
    pub field: Field,
    pub n: u32,
    pub curvature: Rational,
    pub kind: SpaceKind,
}

impl RankOneSpace {
    /// Validated, normalized non-compact space.
    pub fn new(field: Field, n: u32, curvature: Rational) -> Result<Self, CatalogError> {
        Self::with_kind(field, n, curvature, SpaceKind::NonCompact)
    }

    pub fn with_kind(
        field: Field,
        n: u32,
        curvature: Rational,
        kind: SpaceKind,
    ) -> Result<Self, CatalogError> {
        let space = RankOneSpace {
            field,
            n,
            curvature,
            kind,
        };
        space.validate()?;
        Ok(space.normalize())
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if !rational::is_positive(&self.curvature) {
            return Err(CatalogError::NonPositiveCurvature(rational::to_compact(
                &self.curvature,
            )));
        }
        if self.n == 0 {
            return Err(CatalogError::ZeroDimension);
        }
        match self.field {
            Field::R if self.n < 2 => Err(CatalogError::RealDimension(self.n)),
            Field::O if self.n > 2 => Err(CatalogError::OctonionicDimension(self.n)),
            _ => Ok(()),
        }
    }

    /// Rewrites the one-dimensional coincidences as real hyperbolic spaces.
    /// Idempotent.
    pub fn normalize(&self) -> RankOneSpace {
        if self.n == 1 && self.field != Field::R {
            RankOneSpace {
                field: Field::R,
                n: self.field.real_dim(),
                curvature: self.curvature.clone(),
                kind: self.kind,
            }
        } else {
            self.clone()
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.n >= 2
    }

    pub fn real_dim(&self) -> u32 {
        self.field.real_dim() * self.n
    }

    /// Same space with curvature multiplied by `factor`.
    pub fn rescaled(&self, factor: &Rational) -> RankOneSpace {
        RankOneSpace {
            curvature: &self.curvature * factor,
            ..self.clone()
        }
    }

    /// Canonical sort key: field tag, dimension, curvature numerator, curvature denominator.
    pub fn sort_key(&self) -> (Field, u32, &num_bigint::BigInt, &num_bigint::BigInt) {
        (
            self.field,
            self.n,
            self.curvature.numer(),
            self.curvature.denom(),
        )
    }

    /// The homothety class `(field, n, kind)`; curvature is forgotten.
    pub fn homothety_class(&self) -> (Field, u32, SpaceKind) {
        let s = self.normalize();
        (s.field, s.n, s.kind)
    }
}

impl PartialOrd for RankOneSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RankOneSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then(self.kind.cmp(&other.kind))
    }
}

impl fmt::Display for RankOneSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            SpaceKind::NonCompact => "H",
            SpaceKind::CompactDual => "P",
        };
        write!(
            f,
            "{}{}{}({})",
            self.field,
            letter,
            self.n,
            rational::to_compact(&self.curvature)
        )
    }
}

/// `sub ⊂ ambient`, a totally geodesic inclusion up to congruence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotGeodInclusion {
    pub sub: RankOneSpace,
    pub ambient: RankOneSpace,
}

impl TotGeodInclusion {
    pub fn is_improper(&self) -> bool {
        self.sub == self.ambient
    }
}

impl fmt::Display for TotGeodInclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊂ {}", self.sub, self.ambient)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Improper {
    Include,
    Exclude,
}

/// Curvature tag of a unit-curvature table entry.
#[derive(Clone, Copy)]
enum Scale {
    Full,
    Quarter,
}

/// Table entries for unit curvature: `(field, k_min, k_max, scale)`, with
/// `k_max` possibly depending on the ambient dimension.
fn table_rows(field: Field, n: u32) -> Vec<(Field, u32, u32, Scale)> {
    match field {
        Field::R => vec![(Field::R, 2, n - 1, Scale::Full)],
        Field::C => vec![
            (Field::C, 2, n - 1, Scale::Full),
            (Field::R, 2, n, Scale::Quarter),
            (Field::R, 2, 2, Scale::Full),
        ],
        Field::H => vec![
            (Field::H, 2, n - 1, Scale::Full),
            (Field::C, 2, n, Scale::Full),
            (Field::R, 2, n, Scale::Quarter),
            (Field::R, 2, 4, Scale::Full),
        ],
        Field::O => vec![
            (Field::H, 2, 2, Scale::Full),
            (Field::C, 2, 2, Scale::Full),
            (Field::R, 2, 2, Scale::Quarter),
            (Field::R, 2, 8, Scale::Full),
        ],
    }
}

/// Every proper, non-flat, semisimple totally geodesic submanifold class of
/// `ambient`, sorted canonically. With [`Improper::Include`] the ambient
/// itself is appended as the improper inclusion.
pub fn list_totally_geodesic(
    ambient: &RankOneSpace,
    improper: Improper,
) -> Result<Vec<TotGeodInclusion>, CatalogError> {
    ambient.validate()?;
    let ambient = ambient.normalize();
    if ambient.field == Field::O && ambient.n != 2 {
        return Err(CatalogError::OctonionicDimension(ambient.n));
    }
    let quarter = rational::ratio(1, 4);
    let mut subs: Vec<RankOneSpace> = Vec::new();
    for (field, lo, hi, scale) in table_rows(ambient.field, ambient.n) {
        for k in lo..=hi {
            let curvature = match scale {
                Scale::Full => ambient.curvature.clone(),
                Scale::Quarter => &ambient.curvature * &quarter,
            };
            subs.push(RankOneSpace {
                field,
                n: k,
                curvature,
                kind: ambient.kind,
            });
        }
    }
    subs.sort();
    subs.dedup();
    let mut out: Vec<TotGeodInclusion> = subs
        .into_iter()
        .map(|sub| TotGeodInclusion {
            sub,
            ambient: ambient.clone(),
        })
        .collect();
    if improper == Improper::Include {
        out.push(TotGeodInclusion {
            sub: ambient.clone(),
            ambient,
        });
    }
    Ok(out)
}

/// True iff `sub` is the ambient itself or one of its catalogued submanifolds.
pub fn is_totally_geodesic(sub: &RankOneSpace, ambient: &RankOneSpace) -> bool {
    let sub = sub.normalize();
    match list_totally_geodesic(ambient, Improper::Include) {
        Ok(list) => list.iter().any(|inc| inc.sub == sub),
        Err(_) => false,
    }
}

/// Homothety ignores curvature: equal field and dimension after normalization.
pub fn are_homothetic(a: &RankOneSpace, b: &RankOneSpace) -> bool {
    a.homothety_class() == b.homothety_class()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sp(field: Field, n: u32, c: Rational) -> RankOneSpace {
        RankOneSpace::new(field, n, c).unwrap()
    }

    fn subs(ambient: &RankOneSpace) -> Vec<RankOneSpace> {
        list_totally_geodesic(ambient, Improper::Exclude)
            .unwrap()
            .into_iter()
            .map(|i| i.sub)
            .collect()
    }

    #[test]
    fn octonionic_plane_block() {
        let got = subs(&sp(Field::O, 2, int(1)));
        let mut want = vec![
            sp(Field::H, 2, int(1)),
            sp(Field::C, 2, int(1)),
            sp(Field::R, 2, ratio(1, 4)),
        ];
        for k in 2..=8 {
            want.push(sp(Field::R, k, int(1)));
        }
        want.sort();
        assert_eq!(got, want);
        assert_eq!(got.len(), 10);
    }

    #[test]
    fn real_plane_has_no_proper_semisimple_submanifold() {
        assert!(subs(&sp(Field::R, 2, int(1))).is_empty());
    }

    #[test]
    fn complex_three_space_rescaled() {
        let got = subs(&sp(Field::C, 3, int(2)));
        let mut want = vec![
            sp(Field::C, 2, int(2)),
            sp(Field::R, 2, ratio(1, 2)),
            sp(Field::R, 3, ratio(1, 2)),
            sp(Field::R, 2, int(2)),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn membership_examples() {
        let hh3 = sp(Field::H, 3, int(1));
        assert!(!is_totally_geodesic(&sp(Field::R, 5, int(1)), &hh3));
        assert!(is_totally_geodesic(&sp(Field::R, 4, int(1)), &hh3));
        let ch3 = sp(Field::C, 3, int(1));
        assert!(is_totally_geodesic(&ch3, &ch3));
        assert!(!is_totally_geodesic(&sp(Field::C, 2, ratio(1, 4)), &ch3));
    }

    #[test]
    fn normalization_rules() {
        let raw = |f, n, c| RankOneSpace {
            field: f,
            n,
            curvature: c,
            kind: SpaceKind::NonCompact,
        };
        assert_eq!(raw(Field::C, 1, int(4)).normalize(), sp(Field::R, 2, int(4)));
        assert_eq!(raw(Field::H, 1, int(1)).normalize(), sp(Field::R, 4, int(1)));
        assert_eq!(raw(Field::O, 1, int(3)).normalize(), sp(Field::R, 8, int(3)));
        let r3 = raw(Field::R, 3, int(1));
        assert_eq!(r3.normalize(), r3);
        assert_eq!(r3.normalize().normalize(), r3.normalize());
    }

    #[test]
    fn homothety_examples() {
        assert!(are_homothetic(
            &sp(Field::R, 3, int(1)),
            &sp(Field::R, 3, ratio(1, 4))
        ));
        assert!(!are_homothetic(
            &sp(Field::R, 2, int(1)),
            &sp(Field::C, 2, int(1))
        ));
        // C H^1(1) is the constant-curvature plane R H^2(1).
        let ch1 = RankOneSpace {
            field: Field::C,
            n: 1,
            curvature: int(1),
            kind: SpaceKind::NonCompact,
        };
        assert!(are_homothetic(&ch1, &sp(Field::R, 2, int(7))));
    }

    #[test]
    fn invalid_spaces_rejected() {
        assert_eq!(
            RankOneSpace::new(Field::O, 3, int(1)),
            Err(CatalogError::OctonionicDimension(3))
        );
        assert!(matches!(
            RankOneSpace::new(Field::R, 3, int(0)),
            Err(CatalogError::NonPositiveCurvature(_))
        ));
        assert_eq!(
            RankOneSpace::new(Field::R, 1, int(1)),
            Err(CatalogError::RealDimension(1))
        );
        let bad = RankOneSpace {
            field: Field::O,
            n: 5,
            curvature: int(1),
            kind: SpaceKind::NonCompact,
        };
        assert!(list_totally_geodesic(&bad, Improper::Exclude).is_err());
    }

    #[test]
    fn improper_inclusion_flag() {
        let ch2 = sp(Field::C, 2, int(1));
        let with = list_totally_geodesic(&ch2, Improper::Include).unwrap();
        let without = list_totally_geodesic(&ch2, Improper::Exclude).unwrap();
        assert_eq!(with.len(), without.len() + 1);
        assert!(with.last().unwrap().is_improper());
        assert!(without.iter().all(|i| !i.is_improper()));
    }

    #[test]
    fn compact_duals_keep_kind() {
        let cp3 = RankOneSpace::with_kind(Field::C, 3, int(1), SpaceKind::CompactDual).unwrap();
        for inc in list_totally_geodesic(&cp3, Improper::Exclude).unwrap() {
            assert_eq!(inc.sub.kind, SpaceKind::CompactDual);
        }
        assert!(!are_homothetic(&cp3, &sp(Field::C, 3, int(1))));
        assert_eq!(cp3.to_string(), "CP3(1)");
    }
}
