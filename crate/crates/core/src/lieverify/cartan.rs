use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::matrix::{commutator, random_special_unitary, re_trace_inner, unit, CMatrix, MatrixElement};
use super::{LieError, CALIBRATION, RANK_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `su(n+k) = s(u(k) ⊕ u(n)) ⊕ M_{k,n}(C)`, the Grassmannian `G_k(C^{n+k})`.
    Grassmannian { k: usize, n: usize },
    /// `so(n+1) = so(n) ⊕ R^n`, the sphere `S^n`.
    Sphere { n: usize },
}

/// Cartan decomposition of a compact matrix Lie algebra.
///
/// `k_basis` and `p_basis` are orthonormal for `Re tr(X* Y)`. For the
/// Grassmannian the `p` basis is ordered `e_{11}, J e_{11}, e_{12}, J e_{12}, …`
/// (row-major over the `k × n` block), where `e_{lm}` has a real entry in
/// the block. For the sphere it is `e_1, …, e_n`.
#[derive(Debug, Clone)]
pub struct CartanDecomp {
    size: usize,
    k_basis: Vec<MatrixElement>,
    p_basis: Vec<MatrixElement>,
    j_generator: Option<MatrixElement>,
    block_shape: (usize, usize),
    model: ModelKind,
    unit_weight: f64,
}

impl CartanDecomp {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn k_basis(&self) -> &[MatrixElement] {
        &self.k_basis
    }

    pub fn p_basis(&self) -> &[MatrixElement] {
        &self.p_basis
    }

    /// Central element `Z` of `k` with `ad(Z)|_p = J`.
    pub fn j_generator(&self) -> Option<&MatrixElement> {
        self.j_generator.as_ref()
    }

    pub fn block_shape(&self) -> (usize, usize) {
        self.block_shape
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    /// Multiple of `Re tr(X* Y)` giving this model curvature parameter 1.
    pub fn unit_weight(&self) -> f64 {
        self.unit_weight
    }

    /// Grassmannian `p` vector for block entry `(row, col)`, real or imaginary.
    pub fn block_vector(&self, row: usize, col: usize, imaginary: bool) -> Option<&MatrixElement> {
        match self.model {
            ModelKind::Grassmannian { k, n } if row < k && col < n => {
                Some(&self.p_basis[2 * (row * n + col) + usize::from(imaginary)])
            }
            ModelKind::Sphere { n } if row == 0 && col < n && !imaginary => Some(&self.p_basis[col]),
            _ => None,
        }
    }

    /// Largest relative residual of `[k,k] ⊂ k`, `[k,p] ⊂ p`, `[p,p] ⊂ k`.
    pub fn bracket_residuals(&self) -> [f64; 3] {
        [
            bracket_residual(&self.k_basis, &self.k_basis, &self.k_basis),
            bracket_residual(&self.k_basis, &self.p_basis, &self.p_basis),
            bracket_residual(&self.p_basis, &self.p_basis, &self.k_basis),
        ]
    }

    /// `max |ad(Z)² e + e|` over the `p` basis; `None` without a complex structure.
    pub fn j_residual(&self) -> Option<f64> {
        let z = self.j_generator.as_ref()?;
        Some(
            self.p_basis
                .iter()
                .map(|e| {
                    let je = commutator(z, e);
                    let jje = commutator(z, &je);
                    (&jje + e).frobenius() / e.frobenius()
                })
                .fold(0.0, f64::max),
        )
    }

    pub fn p_orthonormality_residual(&self) -> f64 {
        orthonormality_residual(&self.p_basis, |a, b| re_trace_inner(a.matrix(), b.matrix()))
    }

    /// The same decomposition conjugated by the unitary `g`.
    pub fn conjugated(&self, g: &CMatrix) -> CartanDecomp {
        CartanDecomp {
            k_basis: self.k_basis.iter().map(|x| x.conjugate_by(g)).collect(),
            p_basis: self.p_basis.iter().map(|x| x.conjugate_by(g)).collect(),
            j_generator: self.j_generator.as_ref().map(|x| x.conjugate_by(g)),
            ..self.clone()
        }
    }
}

pub(crate) fn orthonormality_residual(
    basis: &[MatrixElement],
    inner: impl Fn(&MatrixElement, &MatrixElement) -> f64,
) -> f64 {
    let mut max = 0.0f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let want = if i == j { 1.0 } else { 0.0 };
            max = max.max((inner(a, b) - want).abs());
        }
    }
    max
}

/// Real coordinates of `x` in which the dot product is `Re tr(X* Y)`.
fn flatten(x: &CMatrix) -> impl Iterator<Item = f64> + '_ {
    x.iter().flat_map(|z| [z.re, z.im])
}

/// `max |[x, y] - π [x, y]| / (|x| |y|)` over `x ∈ a`, `y ∈ b`, with `π` the
/// projection onto the orthonormal `target`. All brackets are projected at
/// once as a real matrix product; when `a` and `b` are the same list only
/// one of each antisymmetric pair is formed.
fn bracket_residual(a: &[MatrixElement], b: &[MatrixElement], target: &[MatrixElement]) -> f64 {
    let same = std::ptr::eq(a, b);
    let mut columns = Vec::new();
    let mut scales = Vec::new();
    for (i, x) in a.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for y in &b[start..] {
            let scale = x.frobenius() * y.frobenius();
            if scale == 0.0 {
                continue;
            }
            columns.extend(flatten(commutator(x, y).matrix()));
            scales.push(scale);
        }
    }
    if scales.is_empty() {
        return 0.0;
    }
    let len = columns.len() / scales.len();
    let z = DMatrix::from_vec(len, scales.len(), columns);
    let residual = if target.is_empty() {
        z
    } else {
        let t = DMatrix::from_iterator(len, target.len(), target.iter().flat_map(|e| flatten(e.matrix())));
        let coeffs = t.transpose() * &z;
        z - t * coeffs
    };
    residual
        .column_iter()
        .zip(&scales)
        .map(|(r, s)| r.norm() / s)
        .fold(0.0, f64::max)
}

/// Modified Gram–Schmidt with one reorthogonalization pass, raw metric.
fn raw_orthonormalize(vectors: Vec<MatrixElement>) -> Vec<MatrixElement> {
    let mut out: Vec<MatrixElement> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let start = v.frobenius();
        let mut w = v;
        for _ in 0..2 {
            for b in &out {
                let c = re_trace_inner(b.matrix(), w.matrix());
                w.add_scaled(-c, b);
            }
        }
        let norm = w.frobenius();
        if norm > RANK_THRESHOLD * start {
            out.push(w.scaled(1.0 / norm));
        }
    }
    out
}

/// Raw `-⟨[[X,Y],Y],X⟩ / |X ∧ Y|²` for `Re tr(X* Y)`.
pub(crate) fn raw_sectional(x: &MatrixElement, y: &MatrixElement) -> f64 {
    let xy = commutator(x, y);
    let xyy = commutator(&xy, y);
    let num = -re_trace_inner(xyy.matrix(), x.matrix());
    let xx = re_trace_inner(x.matrix(), x.matrix());
    let yy = re_trace_inner(y.matrix(), y.matrix());
    let xy_ = re_trace_inner(x.matrix(), y.matrix());
    num / (xx * yy - xy_ * xy_)
}

fn build_grassmannian(k: usize, n: usize) -> CartanDecomp {
    let size = k + n;
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ihalf = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);

    // p: [[0, X], [-X*, 0]] for X = E_{lm} and X = i E_{lm}
    let mut p_basis = Vec::with_capacity(2 * k * n);
    for l in 0..k {
        for m in 0..n {
            for value in [half, ihalf] {
                let top = unit(size, l, k + m, value);
                let mat = &top - top.adjoint();
                p_basis.push(MatrixElement::from_matrix(mat));
            }
        }
    }

    // k: block-diagonal traceless skew-Hermitian matrices
    let mut k_raw = Vec::new();
    for (lo, hi) in [(0, k), (k, size)] {
        for a in lo..hi {
            for b in (a + 1)..hi {
                let re = unit(size, a, b, half);
                k_raw.push(MatrixElement::from_matrix(&re - re.adjoint()));
                let im = unit(size, a, b, ihalf);
                k_raw.push(MatrixElement::from_matrix(&im - im.adjoint()));
            }
        }
    }
    for a in 0..size.saturating_sub(1) {
        let mut d = CMatrix::zeros(size, size);
        d[(a, a)] = Complex64::new(0.0, 1.0);
        d[(a + 1, a + 1)] = Complex64::new(0.0, -1.0);
        k_raw.push(MatrixElement::from_matrix(d));
    }
    let k_basis = raw_orthonormalize(k_raw);

    // Z = λ⁻¹ · i·diag(n I_k, -k I_n), with λ fixed by ad(Z)²|_p = -1
    let mut z0 = CMatrix::zeros(size, size);
    for a in 0..size {
        z0[(a, a)] = if a < k {
            Complex64::new(0.0, n as f64)
        } else {
            Complex64::new(0.0, -(k as f64))
        };
    }
    let z0 = MatrixElement::from_matrix(z0);
    let e = &p_basis[0];
    let jje = commutator(&z0, &commutator(&z0, e));
    let lambda_sq = -re_trace_inner(jje.matrix(), e.matrix()) / re_trace_inner(e.matrix(), e.matrix());
    let z = z0.scaled(1.0 / lambda_sq.sqrt());

    CartanDecomp {
        size,
        k_basis,
        p_basis,
        j_generator: Some(z),
        block_shape: (k, n),
        model: ModelKind::Grassmannian { k, n },
        unit_weight: 1.0,
    }
}

fn build_sphere(n: usize) -> CartanDecomp {
    let size = n + 1;
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let skew = |a: usize, b: usize| {
        let e = unit(size, a, b, h);
        MatrixElement::from_matrix(&e - e.transpose())
    };
    let p_basis = (1..=n).map(|j| skew(0, j)).collect();
    let mut k_basis = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            k_basis.push(skew(a, b));
        }
    }
    CartanDecomp {
        size,
        k_basis,
        p_basis,
        j_generator: None,
        block_shape: (1, n),
        model: ModelKind::Sphere { n },
        unit_weight: 1.0,
    }
}

/// Raw curvature of the `CP^1` model, computed once.
fn cp1_raw_curvature() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        let d = build_grassmannian(1, 1);
        raw_sectional(&d.p_basis[0], &d.p_basis[1])
    })
}

/// Raw curvature of the `S^2` model inside `so(3)`, computed once.
fn sphere_raw_curvature() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        let d = build_sphere(2);
        raw_sectional(&d.p_basis[0], &d.p_basis[1])
    })
}

/// Cartan decomposition of `su(n+k)` for `G_k(C^{n+k})`.
pub fn grassmannian_decomp(k: usize, n: usize) -> Result<CartanDecomp, LieError> {
    if k == 0 || n == 0 {
        return Err(LieError::InvalidModel(format!("G_{k}(C^{}) needs k, n ≥ 1", n + k)));
    }
    let mut d = build_grassmannian(k, n);
    d.unit_weight = cp1_raw_curvature() / CALIBRATION;
    Ok(d)
}

/// Cartan decomposition of `so(n+1)` for the round sphere `S^n`.
pub fn sphere_decomp(n: usize) -> Result<CartanDecomp, LieError> {
    if n < 2 {
        return Err(LieError::InvalidModel(format!("S^{n} needs n ≥ 2")));
    }
    let mut d = build_sphere(n);
    d.unit_weight = sphere_raw_curvature() / CALIBRATION;
    Ok(d)
}

/// One block of a direct sum.
#[derive(Debug, Clone)]
pub struct Summand {
    pub decomp: CartanDecomp,
    pub offset: usize,
    /// Multiple of `Re tr(X* Y)` used on this block.
    pub weight: f64,
}

/// Per-block special-unitary matrices; an isometry of a direct sum.
#[derive(Debug, Clone)]
pub struct BlockUnitary {
    blocks: Vec<CMatrix>,
    full: CMatrix,
}

impl BlockUnitary {
    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// `g X g*`.
    pub fn apply(&self, x: &MatrixElement) -> MatrixElement {
        x.conjugate_by(&self.full)
    }
}

/// Block-diagonal direct sum of Cartan decompositions with calibrated
/// weights. A single decomposition is the one-summand case.
#[derive(Debug, Clone)]
pub struct Ambient {
    size: usize,
    summands: Vec<Summand>,
    z_total: Option<MatrixElement>,
    p_basis: Vec<MatrixElement>,
}

impl Ambient {
    /// One decomposition with curvature parameter 1.
    pub fn single(decomp: CartanDecomp) -> Ambient {
        Self::direct_sum(vec![(decomp, 1.0)]).expect("unit curvature is positive")
    }

    /// `⊕ (decomp_i, c_i)`: each summand is scaled so the model reads
    /// curvature parameter `c_i`.
    pub fn direct_sum(parts: Vec<(CartanDecomp, f64)>) -> Result<Ambient, LieError> {
        if parts.is_empty() {
            return Err(LieError::InvalidModel("empty direct sum".into()));
        }
        let mut summands = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for (decomp, c) in parts {
            if c.is_nan() || c <= 0.0 {
                return Err(LieError::InvalidModel(format!("curvature {c} must be positive")));
            }
            let weight = decomp.unit_weight / c;
            let size = decomp.size;
            summands.push(Summand {
                decomp,
                offset,
                weight,
            });
            offset += size;
        }
        Ok(Self::assemble(offset, summands))
    }

    fn assemble(size: usize, summands: Vec<Summand>) -> Ambient {
        let mut ambient = Ambient {
            size,
            summands,
            z_total: None,
            p_basis: Vec::new(),
        };
        let mut p_basis = Vec::new();
        for (i, s) in ambient.summands.iter().enumerate() {
            for e in s.decomp.p_basis() {
                p_basis.push(ambient.embed(i, e).scaled(1.0 / s.weight.sqrt()));
            }
        }
        ambient.p_basis = p_basis;
        if ambient.summands.iter().all(|s| s.decomp.j_generator.is_some()) {
            let mut z = MatrixElement::zeros(size);
            for (i, s) in ambient.summands.iter().enumerate() {
                let zi = ambient.embed(i, s.decomp.j_generator.as_ref().expect("checked"));
                z = &z + &zi;
            }
            ambient.z_total = Some(z);
        }
        ambient
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Orthonormal basis of `p` for the weighted metric.
    pub fn p_basis(&self) -> &[MatrixElement] {
        &self.p_basis
    }

    pub fn has_complex_structure(&self) -> bool {
        self.z_total.is_some()
    }

    /// Places a summand-sized element into block `index`.
    pub fn embed(&self, index: usize, x: &MatrixElement) -> MatrixElement {
        let s = &self.summands[index];
        let n = s.decomp.size;
        let mut m = CMatrix::zeros(self.size, self.size);
        m.view_mut((s.offset, s.offset), (n, n)).copy_from(x.matrix());
        MatrixElement::from_matrix(m)
    }

    /// Block `index` of `x`.
    pub fn block(&self, index: usize, x: &MatrixElement) -> MatrixElement {
        let s = &self.summands[index];
        let n = s.decomp.size;
        MatrixElement::from_matrix(x.matrix().view((s.offset, s.offset), (n, n)).into_owned())
    }

    /// Weighted `Σ w_i Re tr(X_i* Y_i)` over the blocks.
    pub fn inner(&self, x: &MatrixElement, y: &MatrixElement) -> f64 {
        self.summands
            .iter()
            .map(|s| {
                let n = s.decomp.size;
                let xv = x.matrix().view((s.offset, s.offset), (n, n));
                let yv = y.matrix().view((s.offset, s.offset), (n, n));
                let raw: f64 = xv.iter().zip(yv.iter()).map(|(a, b)| (a.conj() * b).re).sum();
                s.weight * raw
            })
            .sum()
    }

    pub fn norm(&self, x: &MatrixElement) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// `J X = [Z, X]`.
    pub fn complex_structure(&self, x: &MatrixElement) -> Result<MatrixElement, LieError> {
        let z = self.z_total.as_ref().ok_or(LieError::NoComplexStructure)?;
        if x.size() != self.size {
            return Err(LieError::SizeMismatch(x.size(), self.size));
        }
        Ok(commutator(z, x))
    }

    /// Norm of the component of `x` outside `p`.
    pub fn p_residual(&self, x: &MatrixElement) -> f64 {
        let mut r = x.clone();
        for b in &self.p_basis {
            let c = self.inner(b, &r);
            r.add_scaled(-c, b);
        }
        self.norm(&r)
    }

    /// Random block-diagonal special-unitary isometry.
    pub fn random_isometry<R: Rng + ?Sized>(&self, rng: &mut R) -> BlockUnitary {
        let blocks: Vec<CMatrix> = self
            .summands
            .iter()
            .map(|s| random_special_unitary(s.decomp.size, rng))
            .collect();
        let mut full = CMatrix::zeros(self.size, self.size);
        for (s, g) in self.summands.iter().zip(&blocks) {
            let n = s.decomp.size;
            full.view_mut((s.offset, s.offset), (n, n)).copy_from(g);
        }
        BlockUnitary { blocks, full }
    }

    /// The whole configuration moved by `g`.
    pub fn conjugated(&self, g: &BlockUnitary) -> Ambient {
        let summands = self
            .summands
            .iter()
            .zip(&g.blocks)
            .map(|(s, gi)| Summand {
                decomp: s.decomp.conjugated(gi),
                ..s.clone()
            })
            .collect();
        Self::assemble(self.size, summands)
    }
}
