//! Adapted Young tableaux and the classification of totally geodesic
//! submanifolds in products of rank-one spaces.
//!
//! A tableau over a subset `S` of factor indices partitions `S` into rows.
//! Each box carries a totally geodesic inclusion into the factor it indexes,
//! and all submanifolds in one row are mutually homothetic. A row of length
//! `λ` stands for a `λ`-diagonal rank-one factor whose curvature is the
//! harmonic combination of the box curvatures (see [`diagonal_curvature`]).
//! A classified submanifold is a tableau together with a flat part of
//! dimension `d ≤ r - |S|` living in the complementary factors.
//!
//! Factor indices are zero-based in this API. The CLI and JSON output use
//! one-based indices.
//!
//! Classes are isometry classes: tableaux with equal canonical form are
//! identified even when the underlying submanifolds are not congruent.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::catalog::{
    are_homothetic, is_totally_geodesic, list_totally_geodesic, CatalogError, Field, Improper,
    RankOneSpace, SpaceKind, TotGeodInclusion,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("cannot mix compact and non-compact factors (factor {0})")]
    MixedKinds(usize),
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("factor index {index} out of range for a product of {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("curvatures must be positive")]
    NonPositiveCurvature,
    #[error("need at least one curvature")]
    NoCurvatures,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// `M = M_1 × ⋯ × M_r`, every factor normalized and of the same kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factors: Vec<RankOneSpace>,
}

impl ProductSpace {
    pub fn new(factors: Vec<RankOneSpace>) -> Result<Self, TableauError> {
        let first = factors.first().ok_or(TableauError::EmptyProduct)?;
        let kind = first.kind;
        let mut normalized = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            f.validate()?;
            if f.kind != kind {
                return Err(TableauError::MixedKinds(i));
            }
            normalized.push(f.normalize());
        }
        Ok(ProductSpace {
            factors: normalized,
        })
    }

    pub fn factors(&self) -> &[RankOneSpace] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn kind(&self) -> SpaceKind {
        self.factors[0].kind
    }
}

/// `λ_1 ≥ ⋯ ≥ λ_k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.contains(&0) {
            return Err(TableauError::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of `n` into exactly `k` positive parts, in reverse
    /// lexicographic order.
    pub fn into_exactly(n: usize, k: usize) -> Vec<Partition> {
        fn go(rest: usize, slots: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(Partition { parts: acc.clone() });
                }
                return;
            }
            // each remaining slot needs at least one box
            if rest < slots {
                return;
            }
            let hi = max.min(rest - (slots - 1));
            for p in (1..=hi).rev() {
                if p * slots < rest {
                    break;
                }
                acc.push(p);
                go(rest - p, slots - 1, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if k == 0 {
            if n == 0 {
                out.push(Partition { parts: vec![] });
            }
            return out;
        }
        go(n, k, n, &mut Vec::new(), &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableauBox {
    pub factor: usize,
    pub inclusion: TotGeodInclusion,
}

impl TableauBox {
    fn cmp_content(&self, other: &Self) -> Ordering {
        self.inclusion
            .sub
            .sort_key()
            .cmp(&other.inclusion.sub.sort_key())
            .then(self.factor.cmp(&other.factor))
    }
}

/// Young diagram whose boxes carry totally geodesic inclusions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdaptedTableau {
    rows: Vec<Vec<TableauBox>>,
}

fn cmp_rows(a: &[TableauBox], b: &[TableauBox]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match x.cmp_content(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

impl AdaptedTableau {
    /// Builds a tableau and puts it in canonical form. Validity against a
    /// product is checked by [`AdaptedTableau::validate`].
    pub fn new(rows: Vec<Vec<TableauBox>>) -> Self {
        let mut t = AdaptedTableau { rows };
        t.canonicalize();
        t
    }

    /// The tableau with no boxes (purely flat submanifolds).
    pub fn empty() -> Self {
        AdaptedTableau { rows: Vec::new() }
    }

    fn canonicalize(&mut self) {
        for row in &mut self.rows {
            row.sort_by_key(|b| b.factor);
        }
        self.rows.retain(|r| !r.is_empty());
        self.rows.sort_by(|a, b| cmp_rows(a, b));
    }

    pub fn rows(&self) -> &[Vec<TableauBox>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn factor_set(&self) -> BTreeSet<usize> {
        self.rows.iter().flatten().map(|b| b.factor).collect()
    }

    pub fn box_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks every tableau invariant against `m`.
    pub fn validate(&self, m: &ProductSpace) -> Result<(), TableauError> {
        let bad = |msg: String| Err(TableauError::InvalidTableau(msg));
        let mut seen = BTreeSet::new();
        for row in &self.rows {
            if row.is_empty() {
                return bad("empty row".into());
            }
            for b in row {
                let Some(factor) = m.factors().get(b.factor) else {
                    return Err(TableauError::IndexOutOfRange {
                        index: b.factor,
                        len: m.rank(),
                    });
                };
                if !seen.insert(b.factor) {
                    return bad(format!("factor {} used twice", b.factor + 1));
                }
                if &b.inclusion.ambient != factor {
                    return bad(format!(
                        "box for factor {} has ambient {}",
                        b.factor + 1,
                        b.inclusion.ambient
                    ));
                }
                if !is_totally_geodesic(&b.inclusion.sub, factor) {
                    return bad(format!("{} is not catalogued", b.inclusion));
                }
            }
            let head = &row[0].inclusion.sub;
            if row.iter().any(|b| !are_homothetic(head, &b.inclusion.sub)) {
                return bad("row mixes non-homothetic submanifolds".into());
            }
        }
        if self.rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("row lengths increase".into());
        }
        let mut canon = self.clone();
        canon.canonicalize();
        if &canon != self {
            return bad("not in canonical form".into());
        }
        Ok(())
    }

    /// One rank-one factor per row, with the diagonal curvature of the row.
    pub fn row_spaces(&self) -> Vec<RankOneSpace> {
        self.rows
            .iter()
            .map(|row| {
                let head = &row[0].inclusion.sub;
                let curvatures: Vec<Rational> =
                    row.iter().map(|b| b.inclusion.sub.curvature.clone()).collect();
                let curvature = diagonal_curvature(&curvatures)
                    .expect("catalogued curvatures are positive");
                RankOneSpace {
                    curvature,
                    ..head.clone()
                }
            })
            .collect()
    }
}

/// `∏ c_i / e_{r-1}(c_1, …, c_r)`, the curvature of an `r`-diagonal
/// rank-one factor built from boxes of curvatures `c_i`.
pub fn diagonal_curvature(curvatures: &[Rational]) -> Result<Rational, TableauError> {
    if curvatures.is_empty() {
        return Err(TableauError::NoCurvatures);
    }
    if curvatures.iter().any(|c| !crate::rational::is_positive(c)) {
        return Err(TableauError::NonPositiveCurvature);
    }
    let r = curvatures.len();
    let e = elementary_symmetric(curvatures);
    let product: Rational = curvatures.iter().fold(Rational::one(), |acc, c| acc * c);
    Ok(product / &e[r - 1])
}

/// `[e_0, e_1, …, e_r]` by the recurrence `e_k(x, y) = e_k(x) + y·e_{k-1}(x)`.
pub fn elementary_symmetric(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (i, x) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let term = &e[k - 1] * x;
            e[k] += term;
        }
    }
    e
}

/// Set partitions of `items` into blocks, via restricted growth strings.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; items.len()];
    fn go(i: usize, blocks: usize, items: &[usize], labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            let mut groups = vec![Vec::new(); blocks];
            for (item, &l) in items.iter().zip(labels.iter()) {
                groups[l].push(*item);
            }
            out.push(groups);
            return;
        }
        for l in 0..=blocks {
            labels[i] = l;
            let next = if l == blocks { blocks + 1 } else { blocks };
            go(i + 1, next, items, labels, out);
        }
    }
    if !items.is_empty() {
        go(0, 0, items, &mut labels, &mut out);
    }
    out
}

/// All choices of one inclusion per factor in `block` with a common
/// homothety class.
fn row_fillings(
    block: &[usize],
    options: &BTreeMap<usize, Vec<TotGeodInclusion>>,
) -> Vec<Vec<TableauBox>> {
    let mut rows: Vec<Vec<TableauBox>> = vec![Vec::new()];
    for &f in block {
        let mut next = Vec::new();
        for partial in &rows {
            for inc in &options[&f] {
                if let Some(head) = partial.first() {
                    if !are_homothetic(&head.inclusion.sub, &inc.sub) {
                        continue;
                    }
                }
                let mut row = partial.clone();
                row.push(TableauBox {
                    factor: f,
                    inclusion: inc.clone(),
                });
                next.push(row);
            }
        }
        rows = next;
    }
    rows
}

fn check_subset(m: &ProductSpace, subset: &BTreeSet<usize>) -> Result<(), TableauError> {
    if subset.is_empty() {
        return Err(TableauError::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= m.rank()) {
        return Err(TableauError::IndexOutOfRange {
            index: bad,
            len: m.rank(),
        });
    }
    Ok(())
}

fn tableaux_over(m: &ProductSpace, subset: &BTreeSet<usize>) -> Vec<AdaptedTableau> {
    if subset.is_empty() {
        return vec![AdaptedTableau::empty()];
    }
    let options: BTreeMap<usize, Vec<TotGeodInclusion>> = subset
        .iter()
        .map(|&i| {
            let list = list_totally_geodesic(&m.factors()[i], Improper::Include)
                .expect("product factors are validated");
            (i, list)
        })
        .collect();
    let items: Vec<usize> = subset.iter().copied().collect();
    let mut out = BTreeSet::new();
    for blocks in set_partitions(&items) {
        let per_block: Vec<Vec<Vec<TableauBox>>> =
            blocks.iter().map(|b| row_fillings(b, &options)).collect();
        if per_block.iter().any(Vec::is_empty) {
            continue;
        }
        let mut acc: Vec<Vec<Vec<TableauBox>>> = vec![Vec::new()];
        for choices in &per_block {
            let mut next = Vec::with_capacity(acc.len() * choices.len());
            for partial in &acc {
                for row in choices {
                    let mut t = partial.clone();
                    t.push(row.clone());
                    next.push(t);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(|rows| OrdTableau(AdaptedTableau::new(rows))));
    }
    out.into_iter().map(|t| t.0).collect()
}

/// Total order on canonical tableaux used for deterministic output.
#[derive(PartialEq, Eq)]
struct OrdTableau(AdaptedTableau);

impl PartialOrd for OrdTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0.rows, &other.0.rows);
        for (x, y) in a.iter().zip(b) {
            match cmp_rows(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }
}

/// Every canonical adapted tableau whose boxes cover `subset` exactly once,
/// in canonical order.
pub fn enumerate_tableaux(
    m: &ProductSpace,
    subset: &BTreeSet<usize>,
) -> Result<impl Iterator<Item = AdaptedTableau>, TableauError> {
    check_subset(m, subset)?;
    Ok(tableaux_over(m, subset).into_iter())
}

/// One classified totally geodesic submanifold `Σ_0 × Σ_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedSubmanifold {
    pub semisimple_factors: Vec<RankOneSpace>,
    pub flat_dim: usize,
    pub tableau: AdaptedTableau,
    pub complement_factors: Vec<usize>,
}

impl ClassifiedSubmanifold {
    /// Number of rows plus flat dimension.
    pub fn rank(&self) -> usize {
        self.semisimple_factors.len() + self.flat_dim
    }

    pub fn dimension(&self) -> u32 {
        self.semisimple_factors
            .iter()
            .map(RankOneSpace::real_dim)
            .sum::<u32>()
            + self.flat_dim as u32
    }

    /// Factor indices hosting the semisimple part.
    pub fn support(&self) -> BTreeSet<usize> {
        self.tableau.factor_set()
    }

    /// Field of every row; convenience for callers filtering by type.
    pub fn row_fields(&self) -> Vec<Field> {
        self.semisimple_factors.iter().map(|s| s.field).collect()
    }
}

/// Subsets of `0..r` ordered by size, then lexicographically.
fn ordered_subsets(r: usize) -> Vec<BTreeSet<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << r))
        .map(|mask| (0..r).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Streams every class of totally geodesic submanifold of `m`: for each
/// subset `S` (including the empty one), each tableau over `S` and each
/// flat dimension `0 ≤ d ≤ r - |S|`. Work is done one subset at a time.
pub fn classify(m: &ProductSpace) -> impl Iterator<Item = ClassifiedSubmanifold> + '_ {
    let r = m.rank();
    ordered_subsets(r).into_iter().flat_map(move |subset| {
        let complement: Vec<usize> = (0..r).filter(|i| !subset.contains(i)).collect();
        tableaux_over(m, &subset).into_iter().flat_map(move |tableau| {
            let semisimple = tableau.row_spaces();
            let complement = complement.clone();
            (0..=complement.len()).map(move |d| ClassifiedSubmanifold {
                semisimple_factors: semisimple.clone(),
                flat_dim: d,
                tableau: tableau.clone(),
                complement_factors: complement.clone(),
            })
        })
    })
}

/// Size of [`classify`]'s stream. Exponential in the number of factors.
pub fn count_classes(m: &ProductSpace) -> usize {
    let r = m.rank();
    ordered_subsets(r)
        .iter()
        .map(|s| tableaux_over(m, s).len() * (r - s.len() + 1))
        .sum()
}
