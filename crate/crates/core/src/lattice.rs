//! Integer relations among support eigenvalues and the mod-2 parity test.
//!
//! The relation system `Σ l_k θ_k = 0, Σ l_k = 0` is written as an integer
//! matrix whose columns are the exact power-basis coordinates of `θ_k` with
//! an extra all-ones row. Its integer kernel is computed by unimodular column
//! reduction, so the returned basis spans every integer solution. Because
//! `v ↦ σ·v mod 2` is linear, checking the basis decides the parity
//! condition for the whole lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cyclotomic::{CycloError, PathEigenvalueField};
use crate::pair_states::SupportPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("columns have different lengths")]
    RaggedColumns,
    #[error("empty support: the relation system has no unknowns")]
    DegenerateSystem,
    #[error("partition covers {got} eigenvalues, expected {expected}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error("parity functional has length {sigma}, lattice dimension is {dim}")]
    DimensionMismatch { sigma: usize, dim: usize },
    #[error(transparent)]
    Cyclotomic(#[from] CycloError),
}

/// Integer basis of `{v ∈ ℤ^d : Σ_j v_j · column_j = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    dimension: usize,
    basis: Vec<Vec<BigInt>>,
    /// Position `j` of a basis vector refers to eigenvalue index `index_map[j]`.
    index_map: Vec<usize>,
}

impl RelationLattice {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    /// Re-labels positions, e.g. with path eigenvalue indices `k`.
    pub fn with_index_map(mut self, index_map: Vec<usize>) -> Self {
        assert_eq!(index_map.len(), self.dimension);
        self.index_map = index_map;
        self
    }

    /// Spreads a lattice vector over `k = 1..n-1`, zero elsewhere.
    pub fn to_path_vector(&self, v: &[BigInt], n: usize) -> Vec<BigInt> {
        let mut full = vec![BigInt::zero(); n - 1];
        for (x, &k) in v.iter().zip(&self.index_map) {
            full[k - 1] = x.clone();
        }
        full
    }
}

/// `σ_j = 1` exactly for positions whose eigenvalue lies in `Λ⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityFunctional {
    sigma: Vec<bool>,
}

impl ParityFunctional {
    pub fn new(sigma: Vec<bool>) -> Self {
        Self { sigma }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.sigma
    }

    /// `Σ_j σ_j v_j`.
    pub fn apply(&self, v: &[BigInt]) -> BigInt {
        self.sigma.iter().zip(v).filter(|(s, _)| **s).map(|(_, x)| x).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParityOutcome {
    /// Every relation has even `σ`-sum.
    Holds,
    /// A basis relation with odd `σ`-sum.
    Violated {
        certificate: Vec<BigInt>,
        sigma_sum: BigInt,
    },
}

impl ParityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ParityOutcome::Holds)
    }
}

/// Which eigenvalues enter the relation system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelationScope {
    /// Only support eigenvalues, as in the general transfer criterion.
    #[default]
    Support,
    /// All `θ_1..θ_{n-1}`, with `σ_k = 0` off the support.
    AllIndices,
}

/// Columns of the relation matrix plus the parity functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSystem {
    pub columns: Vec<Vec<BigInt>>,
    pub sigma: ParityFunctional,
    /// Path eigenvalue index `k` of each column.
    pub index_map: Vec<usize>,
}

impl RelationSystem {
    pub fn kernel(&self) -> Result<RelationLattice, LatticeError> {
        Ok(integer_kernel(&self.columns)?.with_index_map(self.index_map.clone()))
    }
}

/// Relation system over the support of a path partition.
pub fn build_relation_system(n: usize, part: &SupportPartition) -> Result<RelationSystem, LatticeError> {
    build_relation_system_with_scope(n, part, RelationScope::Support)
}

pub fn build_relation_system_with_scope(
    n: usize,
    part: &SupportPartition,
    scope: RelationScope,
) -> Result<RelationSystem, LatticeError> {
    if part.len() != n {
        return Err(LatticeError::PartitionMismatch {
            expected: n,
            got: part.len(),
        });
    }
    let ks: Vec<usize> = match scope {
        RelationScope::Support => part.support().into_iter().filter(|&k| k > 0).collect(),
        RelationScope::AllIndices => (1..n).collect(),
    };
    if ks.is_empty() || part.support().is_empty() {
        return Err(LatticeError::DegenerateSystem);
    }
    let field = PathEigenvalueField::new(n)?;
    let columns = ks
        .iter()
        .map(|&k| {
            let mut col = field.theta(k)?.coeffs().to_vec();
            col.push(BigInt::one());
            Ok(col)
        })
        .collect::<Result<Vec<_>, CycloError>>()?;
    let sigma = ParityFunctional::new(ks.iter().map(|&k| part.is_minus(k)).collect());
    Ok(RelationSystem {
        columns,
        sigma,
        index_map: ks,
    })
}

/// Integer kernel of the matrix with the given columns.
///
/// Columns are combined by unimodular operations (Euclidean steps on the
/// smallest pivot) until the matrix is in column echelon form; the
/// transformation rows attached to the zero columns form a basis of the
/// saturated kernel. The basis is then size-reduced pairwise and each vector
/// is sign-normalized so its first nonzero entry is positive.
pub fn integer_kernel(columns: &[Vec<BigInt>]) -> Result<RelationLattice, LatticeError> {
    let d = columns.len();
    let m = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != m) {
        return Err(LatticeError::RaggedColumns);
    }
    let mut cols: Vec<Vec<BigInt>> = columns.to_vec();
    let mut trans: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut pivot = 0;
    for row in 0..m {
        if pivot == d {
            break;
        }
        loop {
            let best = (pivot..d)
                .filter(|&j| !cols[j][row].is_zero())
                .min_by(|&i, &j| cols[i][row].abs().cmp(&cols[j][row].abs()));
            let Some(best) = best else { break };
            cols.swap(pivot, best);
            trans.swap(pivot, best);
            let mut clean = true;
            for j in pivot + 1..d {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = cols[j][row].div_floor(&cols[pivot][row]);
                axpy(&mut cols, j, pivot, &q);
                axpy(&mut trans, j, pivot, &q);
                if !cols[j][row].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivot += 1;
                break;
            }
        }
    }

    let mut basis: Vec<Vec<BigInt>> = trans.split_off(pivot);
    size_reduce(&mut basis);
    for v in &mut basis {
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    for v in &basis {
        assert!(
            (0..m).all(|r| columns.iter().zip(v).map(|(c, x)| &c[r] * x).sum::<BigInt>().is_zero()),
            "kernel vector failed exact verification"
        );
    }
    Ok(RelationLattice {
        dimension: d,
        basis,
        index_map: (0..d).collect(),
    })
}

/// `vs[dst] -= q · vs[src]`.
fn axpy(vs: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (src_v, dst_v) = if src < dst {
        let (a, b) = vs.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = vs.split_at_mut(src);
        (&b[0], &mut a[dst])
    };
    for (y, x) in dst_v.iter_mut().zip(src_v) {
        if !x.is_zero() {
            *y -= q * x;
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise reduction: replace `b_i` by `b_i - q b_j` while that strictly
/// shortens it. Terminates since the squared norms are positive integers.
fn size_reduce(basis: &mut [Vec<BigInt>]) {
    let two = BigInt::from(2);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                let num = dot(&basis[i], &basis[j]);
                // nearest integer to num / nj
                let q = (&two * &num + &nj).div_floor(&(&two * &nj));
                if q.is_zero() {
                    continue;
                }
                let candidate: Vec<BigInt> = basis[i].iter().zip(&basis[j]).map(|(x, y)| x - &q * y).collect();
                if dot(&candidate, &candidate) < dot(&basis[i], &basis[i]) {
                    basis[i] = candidate;
                    changed = true;
                }
            }
        }
    }
}

/// Checks `σ·v ≡ 0 (mod 2)` on every basis vector.
pub fn parity_holds(lat: &RelationLattice, sigma: &ParityFunctional) -> Result<ParityOutcome, LatticeError> {
    if sigma.len() != lat.dimension {
        return Err(LatticeError::DimensionMismatch {
            sigma: sigma.len(),
            dim: lat.dimension,
        });
    }
    for v in &lat.basis {
        let s = sigma.apply(v);
        if s.is_odd() {
            return Ok(ParityOutcome::Violated {
                certificate: v.clone(),
                sigma_sum: s,
            });
        }
    }
    Ok(ParityOutcome::Holds)
}
