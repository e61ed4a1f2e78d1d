use std::sync::Arc;

use super::cartan::{grassmannian_decomp, Ambient, CartanDecomp, ModelKind};
use super::matrix::commutator;
use super::subspace::SubspaceBasis;
use super::LieError;
use crate::tableaux::Partition;

/// The `k`-diagonal `CP^n` inside `CP^n × ⋯ × CP^n` built from `s` identity
/// copies and `k - s` conjugated copies (`Θ X = X̄`), spanned by
/// `v_i = Σ_j e_i` and `w_i = Σ_{j ≤ s} J e_i - Σ_{j > s} J e_i`
/// (before normalization), ordered `v_1, w_1, v_2, w_2, …`.
pub fn construct_diagonal_cp(k: usize, s: usize, n: usize) -> Result<SubspaceBasis, LieError> {
    if k == 0 || n == 0 || s > k {
        return Err(LieError::InvalidModel(format!(
            "diagonal CP^{n} needs k ≥ 1, n ≥ 1, s ≤ k (got k={k}, s={s})"
        )));
    }
    let copy = grassmannian_decomp(1, n)?;
    let ambient = Arc::new(Ambient::direct_sum(vec![(copy.clone(), 1.0); k])?);
    let mut vectors = Vec::with_capacity(2 * n);
    for i in 0..n {
        let e = copy.block_vector(0, i, false).expect("in range");
        let je = copy.block_vector(0, i, true).expect("in range");
        let theta_je = je.conjugate();
        let mut v = super::MatrixElement::zeros(ambient.size());
        let mut w = super::MatrixElement::zeros(ambient.size());
        for j in 0..k {
            v = &v + &ambient.embed(j, e);
            let image = if j < s { je } else { &theta_je };
            w = &w + &ambient.embed(j, image);
        }
        vectors.push(v);
        vectors.push(w);
    }
    SubspaceBasis::span(ambient, vectors)
}

/// `CP^{n_1} × ⋯ × CP^{n_k}` inside `G_k(C^{n+k})`: row `i` of the `k × n`
/// block restricted to the `i`-th column range of the partition.
#[derive(Debug, Clone)]
pub struct GrassmannianProduct {
    pub basis: SubspaceBasis,
    pub blocks: Vec<SubspaceBasis>,
}

impl GrassmannianProduct {
    /// Largest `‖[x, y]‖` with `x`, `y` basis vectors of different blocks.
    pub fn max_cross_bracket(&self) -> f64 {
        let mut max = 0.0f64;
        for (i, a) in self.blocks.iter().enumerate() {
            for b in self.blocks.iter().skip(i + 1) {
                for x in a.vectors() {
                    for y in b.vectors() {
                        max = max.max(commutator(x, y).frobenius());
                    }
                }
            }
        }
        max
    }
}

pub fn construct_grassmannian_product(
    partition: &Partition,
    ambient: &CartanDecomp,
) -> Result<GrassmannianProduct, LieError> {
    let ModelKind::Grassmannian { k, n } = ambient.model() else {
        return Err(LieError::ShapeMismatch("ambient is not a Grassmannian".into()));
    };
    if partition.len() != k || partition.total() != n {
        return Err(LieError::ShapeMismatch(format!(
            "partition {:?} does not split {n} into {k} parts",
            partition.parts()
        )));
    }
    let shared = Arc::new(Ambient::single(ambient.clone()));
    let mut blocks = Vec::with_capacity(k);
    let mut all = Vec::new();
    let mut start = 0;
    for (row, &len) in partition.parts().iter().enumerate() {
        let mut vectors = Vec::with_capacity(2 * len);
        for col in start..start + len {
            for imaginary in [false, true] {
                let e = ambient.block_vector(row, col, imaginary).expect("in range");
                vectors.push(shared.embed(0, e));
            }
        }
        start += len;
        all.extend(vectors.iter().cloned());
        blocks.push(SubspaceBasis::span(shared.clone(), vectors)?);
    }
    Ok(GrassmannianProduct {
        basis: SubspaceBasis::span(shared, all)?,
        blocks,
    })
}
