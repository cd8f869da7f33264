//! Pair states `e_a - e_b`: transfer fidelity, eigenvalue supports, strong
//! cospectrality and numeric fidelity sweeps.

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::VertexPair;
use crate::spectra::Spectrum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairError {
    #[error("pair {pair} does not fit a graph on {n} vertices")]
    DimensionMismatch { pair: VertexPair, n: usize },
    #[error("edge index a = {a} out of range 1..={max} for the path on {n} vertices")]
    EdgeOutOfRange { n: usize, a: usize, max: usize },
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

/// Split of the distinct eigenvalues into `Λ⁺`, `Λ⁻` and the complement of
/// the support. Entries are indices into [`Spectrum::eigenvalues`]; for path
/// spectra the index `r` is the `k` of `θ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub excluded: Vec<usize>,
}

impl SupportPartition {
    /// Support indices in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len() + self.excluded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_minus(&self, r: usize) -> bool {
        self.minus.binary_search(&r).is_ok()
    }
}

/// Outcome of a strong cospectrality test.
#[derive(Debug, Clone, PartialEq)]
pub enum Cospectrality {
    Cospectral(SupportPartition),
    /// `F_θ(e_a - e_b) ≠ ±F_θ(e_c - e_d)` at this eigenvalue.
    NotCospectral {
        index: usize,
        eigenvalue: f64,
    },
}

fn check_pair(s: &Spectrum, p: VertexPair) -> Result<(usize, usize), PairError> {
    p.check(s.dim())
        .map_err(|_| PairError::DimensionMismatch { pair: p, n: s.dim() })?;
    Ok(p.indices())
}

/// `F_r (e_a - e_b)` for every eigenvalue group.
fn projected_pair(s: &Spectrum, p: VertexPair) -> Result<Vec<Vec<f64>>, PairError> {
    let (a, b) = check_pair(s, p)?;
    let n = s.dim();
    Ok(s.projectors()
        .iter()
        .map(|f| (0..n).map(|i| f.get(i, a) - f.get(i, b)).collect())
        .collect())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// The fidelity `p(t) = |Σ_r w_r exp(-i t θ_r)|²` between two pair states,
/// with `w_r = ½ (e_a - e_b)ᵀ F_r (e_c - e_d)`.
#[derive(Debug, Clone)]
pub struct FidelityFunction {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
}

impl FidelityFunction {
    pub fn new(s: &Spectrum, from: VertexPair, to: VertexPair) -> Result<Self, PairError> {
        let (a, b) = check_pair(s, from)?;
        let (c, d) = check_pair(s, to)?;
        let mut eigenvalues = Vec::new();
        let mut weights = Vec::new();
        for (theta, f) in s.eigenvalues().iter().zip(s.projectors()) {
            let w = 0.5 * (f.get(a, c) - f.get(a, d) - f.get(b, c) + f.get(b, d));
            if w != 0.0 {
                eigenvalues.push(*theta);
                weights.push(w);
            }
        }
        Ok(Self { eigenvalues, weights })
    }

    /// Fidelity at time `t`, clamped to `[0, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        let amp: Complex64 = self
            .eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(theta, w)| Complex64::from_polar(*w, -theta * t))
            .sum();
        amp.norm_sqr().clamp(0.0, 1.0)
    }
}

/// `|½ (e_a - e_b)ᵀ U(t) (e_c - e_d)|²` via the projector expansion.
pub fn pair_fidelity(s: &Spectrum, from: VertexPair, to: VertexPair, t: f64) -> Result<f64, PairError> {
    Ok(FidelityFunction::new(s, from, to)?.eval(t))
}

/// Indices of eigenvalues `θ` with `‖F_θ(e_a - e_b)‖ > tol·√2`.
pub fn support(s: &Spectrum, p: VertexPair, tol: f64) -> Result<Vec<usize>, PairError> {
    let threshold = tol * std::f64::consts::SQRT_2;
    Ok(projected_pair(s, p)?
        .iter()
        .enumerate()
        .filter(|(_, v)| norm(v) > threshold)
        .map(|(r, _)| r)
        .collect())
}

/// Tests `F_θ(e_a - e_b) = ±F_θ(e_c - e_d)` for every eigenvalue and returns
/// the sign partition. A sign is accepted when `‖v ∓ w‖ ≤ tol·√2`.
pub fn strong_cospectrality(
    s: &Spectrum,
    p1: VertexPair,
    p2: VertexPair,
    tol: f64,
) -> Result<Cospectrality, PairError> {
    let vs = projected_pair(s, p1)?;
    let ws = projected_pair(s, p2)?;
    let threshold = tol * std::f64::consts::SQRT_2;
    let mut part = SupportPartition::default();
    for (r, (v, w)) in vs.iter().zip(&ws).enumerate() {
        let diff: Vec<f64> = v.iter().zip(w).map(|(x, y)| x - y).collect();
        let sum: Vec<f64> = v.iter().zip(w).map(|(x, y)| x + y).collect();
        let (dn, sn) = (norm(&diff), norm(&sum));
        if norm(v) <= threshold && norm(w) <= threshold {
            part.excluded.push(r);
        } else if dn <= threshold && dn <= sn {
            part.plus.push(r);
        } else if sn <= threshold {
            part.minus.push(r);
        } else {
            return Ok(Cospectrality::NotCospectral {
                index: r,
                eigenvalue: s.eigenvalues()[r],
            });
        }
    }
    Ok(Cospectrality::Cospectral(part))
}

/// Exact support partition for the mirror edges `{a, a+1}` and
/// `{n-a, n-a+1}` of `P_n`: `θ_k` is excluded iff `n | ak`, otherwise it sits
/// in `Λ⁺` for odd `k` and in `Λ⁻` for even `k`.
pub fn path_support_partition(n: usize, a: usize) -> Result<SupportPartition, PairError> {
    if n < 2 || a == 0 || a >= n {
        return Err(PairError::EdgeOutOfRange {
            n,
            a,
            max: n.saturating_sub(1),
        });
    }
    let mut part = SupportPartition::default();
    for k in 0..n {
        if (a * k) % n == 0 {
            part.excluded.push(k);
        } else if k % 2 == 1 {
            part.plus.push(k);
        } else {
            part.minus.push(k);
        }
    }
    Ok(part)
}

/// Sampled fidelity over `[0, t_max]` and the refined supremum estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTrace {
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
    /// Golden-section refinement of the best grid point; never below the
    /// largest sampled fidelity.
    pub sup_estimate: f64,
    pub argmax_time: f64,
}

const GOLDEN_ITERATIONS: usize = 60;

/// Samples the fidelity on `steps` evenly spaced times in `[0, t_max]` and
/// refines the best sample by golden-section search within one grid cell
/// on either side.
pub fn fidelity_sweep(
    s: &Spectrum,
    from: VertexPair,
    to: VertexPair,
    t_max: f64,
    steps: usize,
) -> Result<FidelityTrace, PairError> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(PairError::InvalidSweep(format!("t_max must be positive, got {t_max}")));
    }
    if steps < 2 {
        return Err(PairError::InvalidSweep(format!("need at least 2 steps, got {steps}")));
    }
    let f = FidelityFunction::new(s, from, to)?;
    let h = t_max / (steps - 1) as f64;
    let times: Vec<f64> = (0..steps).map(|i| i as f64 * h).collect();
    let fidelities: Vec<f64> = times.iter().map(|&t| f.eval(t)).collect();

    let mut best = 0;
    for (i, &p) in fidelities.iter().enumerate() {
        if p > fidelities[best] {
            best = i;
        }
    }
    let (mut sup, mut arg) = (fidelities[best], times[best]);
    let lo = (times[best] - h).max(0.0);
    let hi = (times[best] + h).min(t_max);
    let (t_ref, p_ref) = golden_max(|t| f.eval(t), lo, hi, GOLDEN_ITERATIONS);
    if p_ref > sup {
        sup = p_ref;
        arg = t_ref;
    }
    Ok(FidelityTrace {
        times,
        fidelities,
        sup_estimate: sup,
        argmax_time: arg,
    })
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{laplacian, make_path};
    use crate::spectra::{laplacian_spectrum, path_spectrum};
    use std::f64::consts::PI;

    fn pair(a: usize, b: usize) -> VertexPair {
        VertexPair::new(a, b).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let s3 = path_spectrum(3).unwrap();
        assert_eq!(pair_fidelity(&s3, pair(1, 2), pair(1, 2), 0.0).unwrap(), 1.0);
        let p = pair_fidelity(&s3, pair(1, 2), pair(2, 3), PI / 2.0).unwrap();
        assert!((p - 1.0).abs() < 1e-12, "{p}");

        let s4 = path_spectrum(4).unwrap();
        let p = pair_fidelity(&s4, pair(1, 2), pair(3, 4), PI / 2f64.sqrt()).unwrap();
        assert!((p - 1.0).abs() < 1e-10, "{p}");

        assert!(matches!(
            pair_fidelity(&s3, pair(1, 4), pair(1, 2), 0.0),
            Err(PairError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn support_examples() {
        let s4 = path_spectrum(4).unwrap();
        assert_eq!(support(&s4, pair(2, 3), 1e-8).unwrap(), vec![1, 3]);
        let s3 = path_spectrum(3).unwrap();
        assert_eq!(support(&s3, pair(1, 2), 1e-8).unwrap(), vec![1, 2]);
    }

    #[test]
    fn zero_never_in_support_of_connected_graph() {
        let s = laplacian_spectrum(&laplacian(&make_path(6).unwrap())).unwrap();
        for a in 1..=6 {
            for b in 1..=6 {
                if a != b {
                    assert!(!support(&s, pair(a, b), 1e-8).unwrap().contains(&0));
                }
            }
        }
    }

    #[test]
    fn cospectrality_examples() {
        let s4 = path_spectrum(4).unwrap();
        match strong_cospectrality(&s4, pair(1, 2), pair(3, 4), 1e-8).unwrap() {
            Cospectrality::Cospectral(part) => {
                assert_eq!(part.plus, vec![1, 3]);
                assert_eq!(part.minus, vec![2]);
                assert_eq!(part.excluded, vec![0]);
            }
            other => panic!("{other:?}"),
        }
        match strong_cospectrality(&s4, pair(2, 3), pair(2, 3), 1e-8).unwrap() {
            Cospectrality::Cospectral(part) => {
                assert_eq!(part.plus, vec![1, 3]);
                assert!(part.minus.is_empty());
            }
            other => panic!("{other:?}"),
        }
        // only an edge and its mirror image (or the edge itself) qualify
        let s7 = path_spectrum(7).unwrap();
        for a in 1..7 {
            for b in 1..7 {
                let res = strong_cospectrality(&s7, VertexPair::edge_at(a), VertexPair::edge_at(7 - b), 1e-8).unwrap();
                assert_eq!(
                    matches!(res, Cospectrality::Cospectral(_)),
                    a == b || a + b == 7,
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn exact_partitions() {
        let p = path_support_partition(4, 1).unwrap();
        assert_eq!((p.plus, p.minus, p.excluded), (vec![1, 3], vec![2], vec![0]));
        let p = path_support_partition(4, 2).unwrap();
        assert_eq!((p.plus, p.minus, p.excluded), (vec![1, 3], vec![], vec![0, 2]));
        // 9 | 3k exactly for k in {0, 3, 6}
        let p = path_support_partition(9, 3).unwrap();
        assert_eq!(p.excluded, vec![0, 3, 6]);
        assert_eq!(p.plus, vec![1, 5, 7]);
        assert_eq!(p.minus, vec![2, 4, 8]);
        assert!(path_support_partition(4, 4).is_err());
        assert!(path_support_partition(4, 0).is_err());
    }

    #[test]
    fn sweep_finds_p3_transfer() {
        let s3 = path_spectrum(3).unwrap();
        let tr = fidelity_sweep(&s3, pair(1, 2), pair(2, 3), 10.0, 10_000).unwrap();
        assert!(tr.sup_estimate > 1.0 - 1e-8);
        assert_eq!(tr.times.len(), 10_000);
        let grid_max = tr.fidelities.iter().cloned().fold(0.0, f64::max);
        assert!(tr.sup_estimate >= grid_max);
        // maxima sit at odd multiples of π/2
        let m = tr.argmax_time / (PI / 2.0);
        assert!((m - m.round()).abs() < 1e-6 && m.round() as i64 % 2 == 1);
    }

    #[test]
    fn sweep_same_pair_peaks_at_zero() {
        let s = path_spectrum(5).unwrap();
        let tr = fidelity_sweep(&s, pair(2, 3), pair(2, 3), 7.0, 500).unwrap();
        assert_eq!(tr.sup_estimate, 1.0);
        assert_eq!(tr.argmax_time, 0.0);
    }

    #[test]
    fn sweep_rejects_bad_arguments() {
        let s = path_spectrum(3).unwrap();
        assert!(fidelity_sweep(&s, pair(1, 2), pair(2, 3), 0.0, 10).is_err());
        assert!(fidelity_sweep(&s, pair(1, 2), pair(2, 3), 1.0, 1).is_err());
        assert!(fidelity_sweep(&s, pair(1, 2), pair(2, 3), f64::NAN, 10).is_err());
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx) = golden_max(|t| -(t - 0.3).powi(2), 0.0, 1.0, 60);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(fx.abs() < 1e-15);
    }
}
