use std::sync::Arc;

use super::cartan::{orthonormality_residual, Ambient, BlockUnitary};
use super::matrix::{commutator, MatrixElement};
use super::{LieError, RANK_THRESHOLD, TOL_ARITHMETIC};

/// Orthonormal list of vectors in `p`, for the ambient's weighted metric.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    ambient: Arc<Ambient>,
    vectors: Vec<MatrixElement>,
}

impl SubspaceBasis {
    /// Orthonormalizes `vectors` (modified Gram–Schmidt, reorthogonalized).
    /// Fails on a rank-deficient list or on vectors outside `p`.
    pub fn span(ambient: Arc<Ambient>, vectors: Vec<MatrixElement>) -> Result<Self, LieError> {
        if vectors.is_empty() {
            return Err(LieError::EmptySubspace);
        }
        let mut out: Vec<MatrixElement> = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if v.size() != ambient.size() {
                return Err(LieError::SizeMismatch(v.size(), ambient.size()));
            }
            let start = ambient.norm(&v);
            if start == 0.0 {
                return Err(LieError::RankDeficient(i));
            }
            let outside = ambient.p_residual(&v) / start;
            if outside > TOL_ARITHMETIC {
                return Err(LieError::NotInP(outside));
            }
            let mut w = v;
            for _ in 0..2 {
                for b in &out {
                    let c = ambient.inner(b, &w);
                    w.add_scaled(-c, b);
                }
            }
            let norm = ambient.norm(&w);
            if norm <= RANK_THRESHOLD * start {
                return Err(LieError::RankDeficient(i));
            }
            out.push(w.scaled(1.0 / norm));
        }
        Ok(SubspaceBasis {
            ambient,
            vectors: out,
        })
    }

    /// Wraps an already orthonormal list, checking orthonormality and
    /// containment in `p` to `1e-12`.
    pub fn from_orthonormal(
        ambient: Arc<Ambient>,
        vectors: Vec<MatrixElement>,
    ) -> Result<Self, LieError> {
        if vectors.is_empty() {
            return Err(LieError::EmptySubspace);
        }
        let r = orthonormality_residual(&vectors, |a, b| ambient.inner(a, b));
        if r > TOL_ARITHMETIC {
            return Err(LieError::NotOrthonormal(r));
        }
        for v in &vectors {
            let outside = ambient.p_residual(v);
            if outside > TOL_ARITHMETIC {
                return Err(LieError::NotInP(outside));
            }
        }
        Ok(SubspaceBasis { ambient, vectors })
    }

    /// The whole of `p`.
    pub fn full_p(ambient: Arc<Ambient>) -> Self {
        let vectors = ambient.p_basis().to_vec();
        SubspaceBasis { ambient, vectors }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn vectors(&self) -> &[MatrixElement] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Orthogonal projection `π_V`.
    pub fn project(&self, x: &MatrixElement) -> MatrixElement {
        let mut out = MatrixElement::zeros(x.size());
        for v in &self.vectors {
            out.add_scaled(self.ambient.inner(v, x), v);
        }
        out
    }

    /// `|x - π_V x|`.
    pub fn residual(&self, x: &MatrixElement) -> f64 {
        self.ambient.norm(&(x - &self.project(x)))
    }

    /// `x` with coordinates `coeffs` in this basis.
    pub fn combine(&self, coeffs: &[f64]) -> MatrixElement {
        let mut out = MatrixElement::zeros(self.ambient.size());
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            out.add_scaled(*c, v);
        }
        out
    }

    /// Direct sum with another subspace of the same ambient.
    pub fn join(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LieError> {
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        SubspaceBasis::span(self.ambient.clone(), vectors)
    }

    /// `max ‖(1 - π_V) J v‖` over basis vectors.
    pub fn j_invariance_residual(&self) -> Result<f64, LieError> {
        let mut max = 0.0f64;
        for v in &self.vectors {
            let jv = self.ambient.complex_structure(v)?;
            max = max.max(self.residual(&jv));
        }
        Ok(max)
    }

    /// The same subspace and ambient moved by the isometry `g`.
    pub fn conjugated(&self, g: &BlockUnitary) -> SubspaceBasis {
        SubspaceBasis {
            ambient: Arc::new(self.ambient.conjugated(g)),
            vectors: self.vectors.iter().map(|v| g.apply(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieTripleReport {
    pub holds: bool,
    pub max_residual: f64,
}

/// Checks `[[v_i, v_j], v_l] ∈ V` for all basis triples. The residual of a
/// triple is the norm of its component orthogonal to `V`, relative to the
/// norm of the triple bracket; vanishing brackets are measured against the
/// largest bracket seen.
pub fn is_lie_triple_system(v: &SubspaceBasis, tol: f64) -> Result<LieTripleReport, LieError> {
    if v.dim() == 0 {
        return Err(LieError::EmptySubspace);
    }
    let ambient = v.ambient();
    let basis = v.vectors();
    let mut triples = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let ij = commutator(&basis[i], &basis[j]);
            for l in basis {
                let w = commutator(&ij, l);
                triples.push((ambient.norm(&w), v.residual(&w)));
            }
        }
    }
    let largest = triples.iter().map(|t| t.0).fold(0.0, f64::max);
    let max_residual = triples
        .iter()
        .map(|&(norm, res)| {
            if norm > 1e-9 * largest {
                res / norm
            } else if largest > 0.0 {
                res / largest
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    Ok(LieTripleReport {
        holds: max_residual <= tol,
        max_residual,
    })
}

fn check_member(v: &SubspaceBasis, x: &MatrixElement) -> Result<f64, LieError> {
    let norm = v.ambient().norm(x);
    if norm == 0.0 {
        return Err(LieError::ZeroVector);
    }
    let res = v.residual(x) / norm;
    if res > super::TOL_CONSTRUCTIVE {
        return Err(LieError::NotInSubspace(res));
    }
    Ok(norm)
}

/// `K(X, Y) = -⟨[[X,Y],Y],X⟩ / (⟨X,X⟩⟨Y,Y⟩ - ⟨X,Y⟩²)` in the calibrated
/// metric of the compact model.
pub fn sectional_curvature(
    v: &SubspaceBasis,
    x: &MatrixElement,
    y: &MatrixElement,
) -> Result<f64, LieError> {
    check_member(v, x)?;
    check_member(v, y)?;
    let a = v.ambient();
    let xx = a.inner(x, x);
    let yy = a.inner(y, y);
    let xy = a.inner(x, y);
    let area = xx * yy - xy * xy;
    if area <= 1e-20 * xx * yy {
        return Err(LieError::DependentVectors);
    }
    let xyy = commutator(&commutator(x, y), y);
    Ok(-a.inner(&xyy, x) / area)
}

/// Kähler angle `φ` of `x` in `V`: `‖π_V J x‖ = cos φ ‖x‖`.
///
/// Evaluated as `atan2(‖(1 - π_V) J x‖, ‖π_V J x‖)`; `acos` of a cosine near
/// 1 loses half the digits.
pub fn kahler_angle_of(v: &SubspaceBasis, x: &MatrixElement) -> Result<f64, LieError> {
    check_member(v, x)?;
    let jx = v.ambient().complex_structure(x)?;
    let inside = v.project(&jx);
    let a = v.ambient();
    Ok(a.norm(&(&jx - &inside)).atan2(a.norm(&inside)))
}
