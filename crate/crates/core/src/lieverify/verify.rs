use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cartan::{grassmannian_decomp, raw_sectional, sphere_decomp, Ambient, CartanDecomp};
use super::matrix::MatrixElement;
use super::subspace::{is_lie_triple_system, sectional_curvature, SubspaceBasis};
use super::{LieError, CALIBRATION, TOL_CONSTRUCTIVE};
use crate::catalog::{Field, RankOneSpace, TotGeodInclusion};
use crate::rational::{self, Rational};
use crate::tableaux::{ClassifiedSubmanifold, ProductSpace};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    /// When set, the configuration is moved by a random isometry drawn from
    /// this seed before measuring.
    pub seed: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: TOL_CONSTRUCTIVE,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyStatus {
    Pass,
    Fail,
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowReport {
    pub row: usize,
    /// Curvature parameter of the diagonal row space.
    pub expected: Rational,
    /// `CALIBRATION · expected`, what the compact model should read.
    pub expected_measured: f64,
    pub measured: f64,
    pub relative_error: f64,
    pub lts_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub rows: Vec<RowReport>,
    /// Lie-triple residual of the whole tangent space (rows and flat part).
    pub lts_residual: f64,
    pub tol: f64,
}

impl VerificationReport {
    fn unsupported(reason: String, tol: f64) -> Self {
        VerificationReport {
            status: VerifyStatus::Unsupported(reason),
            rows: Vec::new(),
            lts_residual: 0.0,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }
}

fn model_for(space: &RankOneSpace) -> Option<CartanDecomp> {
    let n = space.n as usize;
    match space.field {
        Field::R => sphere_decomp(n).ok(),
        Field::C => grassmannian_decomp(1, n).ok(),
        Field::H | Field::O => None,
    }
}

/// Raw-orthonormal frame of a catalogued inclusion in the factor's model.
/// The first two vectors span a plane of maximal curvature of the sub.
fn frame(inc: &TotGeodInclusion, model: &CartanDecomp) -> Option<Vec<MatrixElement>> {
    let k = inc.sub.n as usize;
    let amb = &inc.ambient;
    match (amb.field, inc.sub.field) {
        (Field::R, Field::R) => Some(model.p_basis()[..k].to_vec()),
        (Field::C, Field::C) => Some(
            (0..k)
                .flat_map(|i| {
                    [false, true].map(|im| model.block_vector(0, i, im).expect("in range").clone())
                })
                .collect(),
        ),
        (Field::C, Field::R) => {
            let quarter = &amb.curvature * rational::ratio(1, 4);
            if inc.sub.curvature == quarter {
                // totally real
                Some((0..k).map(|i| model.block_vector(0, i, false).expect("in range").clone()).collect())
            } else if inc.sub.curvature == amb.curvature && k == 2 {
                // complex line
                Some(vec![
                    model.block_vector(0, 0, false)?.clone(),
                    model.block_vector(0, 0, true)?.clone(),
                ])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Builds the compact-dual model of `entry` and checks that every row is a
/// Lie triple system whose sectional curvature matches the diagonal
/// curvature, and that rows plus flat part form a Lie triple system.
/// Quaternionic and octonionic factors are reported as unsupported.
pub fn verify_classification_entry(
    entry: &ClassifiedSubmanifold,
    m: &ProductSpace,
    options: VerifyOptions,
) -> Result<VerificationReport, LieError> {
    let tol = options.tol;
    let flats: Vec<usize> = entry.complement_factors[..entry.flat_dim].to_vec();
    let mut used: Vec<usize> = entry.support().into_iter().chain(flats.iter().copied()).collect();
    used.sort_unstable();

    let mut parts = Vec::with_capacity(used.len());
    let mut index_of = BTreeMap::new();
    for &f in &used {
        let space = m.factors().get(f).ok_or_else(|| {
            LieError::ShapeMismatch(format!("entry uses factor {} outside the product", f + 1))
        })?;
        let Some(model) = model_for(space) else {
            return Ok(VerificationReport::unsupported(
                format!("no matrix model for {space} (factor {})", f + 1),
                tol,
            ));
        };
        index_of.insert(f, parts.len());
        parts.push((model, rational::to_f64(&space.curvature)));
    }
    if parts.is_empty() {
        // a point
        return Ok(VerificationReport {
            status: VerifyStatus::Pass,
            rows: Vec::new(),
            lts_residual: 0.0,
            tol,
        });
    }
    let ambient = Arc::new(Ambient::direct_sum(parts)?);

    let mut row_bases = Vec::new();
    for (r, row) in entry.tableau.rows().iter().enumerate() {
        let mut frames = Vec::with_capacity(row.len());
        for b in row {
            let idx = index_of[&b.factor];
            let model = &ambient.summands()[idx].decomp;
            let Some(fr) = frame(&b.inclusion, model) else {
                return Ok(VerificationReport::unsupported(
                    format!("no model for the inclusion {} in row {}", b.inclusion, r + 1),
                    tol,
                ));
            };
            frames.push((idx, fr));
        }
        let reference = raw_sectional(&frames[0].1[0], &frames[0].1[1]);
        let dim = frames[0].1.len();
        let vectors: Vec<MatrixElement> = (0..dim)
            .map(|j| {
                let mut v = MatrixElement::zeros(ambient.size());
                for (idx, fr) in &frames {
                    let scale = (reference / raw_sectional(&fr[0], &fr[1])).sqrt();
                    v.add_scaled(scale, &ambient.embed(*idx, &fr[j]));
                }
                v
            })
            .collect();
        row_bases.push(SubspaceBasis::span(ambient.clone(), vectors)?);
    }
    let flat_vectors: Vec<MatrixElement> = flats
        .iter()
        .map(|f| {
            let idx = index_of[f];
            ambient.embed(idx, &ambient.summands()[idx].decomp.p_basis()[0])
        })
        .collect();
    let mut all: Vec<MatrixElement> = row_bases.iter().flat_map(|b| b.vectors().to_vec()).collect();
    all.extend(flat_vectors);
    let mut total = SubspaceBasis::span(ambient.clone(), all)?;

    if let Some(seed) = options.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = ambient.random_isometry(&mut rng);
        total = total.conjugated(&g);
        row_bases = row_bases.iter().map(|b| b.conjugated(&g)).collect();
    }

    let mut ok = true;
    let mut rows = Vec::with_capacity(row_bases.len());
    for ((r, basis), space) in row_bases.iter().enumerate().zip(&entry.semisimple_factors) {
        let lts = is_lie_triple_system(basis, tol)?;
        let measured = sectional_curvature(basis, &basis.vectors()[0], &basis.vectors()[1])?;
        let expected_measured = CALIBRATION * rational::to_f64(&space.curvature);
        let relative_error = (measured - expected_measured).abs() / expected_measured;
        ok &= lts.holds && relative_error <= tol;
        rows.push(RowReport {
            row: r,
            expected: space.curvature.clone(),
            expected_measured,
            measured,
            relative_error,
            lts_residual: lts.max_residual,
        });
    }
    let whole = is_lie_triple_system(&total, tol)?;
    ok &= whole.holds;
    Ok(VerificationReport {
        status: if ok { VerifyStatus::Pass } else { VerifyStatus::Fail },
        rows,
        lts_residual: whole.max_residual,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::classify;

    fn product(spaces: &[(Field, u32, i64)]) -> ProductSpace {
        ProductSpace::new(
            spaces
                .iter()
                .map(|&(f, n, c)| RankOneSpace::new(f, n, rational::int(c)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn full_diagonal(m: &ProductSpace) -> ClassifiedSubmanifold {
        classify(m)
            .find(|e| e.tableau.rows().len() == 1 && e.tableau.box_count() == m.rank()
                && e.tableau.rows()[0].iter().all(|b| b.inclusion.is_improper()))
            .unwrap()
    }

    #[test]
    fn diagonal_sphere_reads_half() {
        let m = product(&[(Field::R, 2, 1), (Field::R, 2, 1)]);
        let entry = full_diagonal(&m);
        let report = verify_classification_entry(&entry, &m, VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!((report.rows[0].measured - 2.0).abs() < 1e-9);
    }

    #[test]
    fn triple_diagonal_cp1_reads_third() {
        let m = product(&[(Field::C, 1, 1), (Field::C, 1, 1), (Field::C, 1, 1)]);
        let entry = full_diagonal(&m);
        assert_eq!(entry.semisimple_factors[0].curvature, rational::ratio(1, 3));
        let report = verify_classification_entry(&entry, &m, VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!((report.rows[0].measured - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn octonionic_factor_is_unsupported() {
        let m = product(&[(Field::O, 2, 1)]);
        let entry = classify(&m).find(|e| !e.tableau.rows().is_empty()).unwrap();
        let report = verify_classification_entry(&entry, &m, VerifyOptions::default()).unwrap();
        assert!(matches!(report.status, VerifyStatus::Unsupported(_)));
    }

    #[test]
    fn whole_stream_passes_with_and_without_isometry() {
        let m = product(&[(Field::C, 2, 1), (Field::R, 3, 2)]);
        for seed in [None, Some(7)] {
            for entry in classify(&m) {
                let opts = VerifyOptions { seed, ..Default::default() };
                let report = verify_classification_entry(&entry, &m, opts).unwrap();
                assert!(report.passed(), "{entry:?}: {report:?}");
            }
        }
    }
}
