//! Edge transfer decisions on paths.
//!
//! Three independent routes are provided for the mirror edges
//! `{a, a+1} → {n-a, n-a+1}` of `P_n`:
//!
//! * [`classify_path`]: the closed-form rule driven by the factorization
//!   `n = 2^t · r` with `r` odd,
//! * [`decide_path_lpgst`]: the exact relation-lattice parity test,
//! * [`witness_relation`]: explicit alternating relations with odd parity,
//!   checked by [`verify_witness`].
//!
//! [`cross_verify`] runs all three and reports whether they agree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::cyclotomic::{CycloError, PathEigenvalueField};
use crate::graph::{GraphError, VertexPair};
use crate::lattice::{build_relation_system_with_scope, parity_holds, LatticeError, ParityOutcome, RelationScope};
use crate::pair_states::{path_support_partition, strong_cospectrality, Cospectrality, PairError};
use crate::spectra::{path_spectrum, SpectraError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecisionError {
    #[error("path needs at least 2 vertices, got {0}")]
    InvalidSize(usize),
    #[error("edge index a = {a} out of range 1..={max} for n = {n}", max = .n.saturating_sub(1))]
    OutOfRange { n: usize, a: usize },
    #[error("2a = n (n = {n}, a = {a}): {{a, a+1}} and {{n-a, n-a+1}} are the same edge")]
    SamePair { n: usize, a: usize },
    #[error("witness has length {got}, expected n - 1 = {expected}")]
    WitnessLength { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cyclotomic(#[from] CycloError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Closed-form rule, keyed on the odd part `r` of `n = 2^t r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `r = 1`: always transfers.
    PowerOfTwo,
    /// `t = 0`, `r` prime: always transfers.
    OddPrime,
    /// `t ≥ 1`, `r = p` prime: transfers iff `2^{t-1} | a`.
    TwoPowerTimesPrime,
    /// `r` composite: never transfers.
    OddCompositeFactor,
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::PowerOfTwo => "power-of-two",
            Rule::OddPrime => "odd-prime",
            Rule::TwoPowerTimesPrime => "two-power-times-prime",
            Rule::OddCompositeFactor => "odd-composite-factor",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `n = 2^t · odd_part` with the resulting rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    pub n: usize,
    pub a: usize,
    pub rule: Rule,
    pub two_exponent: u32,
    pub odd_part: usize,
}

impl PathClass {
    pub fn new(n: usize, a: usize) -> Result<Self, DecisionError> {
        check_instance(n, a)?;
        let t = n.trailing_zeros();
        let r = n >> t;
        let rule = if r == 1 {
            Rule::PowerOfTwo
        } else if !is_prime(r) {
            Rule::OddCompositeFactor
        } else if t == 0 {
            Rule::OddPrime
        } else {
            Rule::TwoPowerTimesPrime
        };
        Ok(Self {
            n,
            a,
            rule,
            two_exponent: t,
            odd_part: r,
        })
    }

    pub fn has_lpgst(&self) -> bool {
        match self.rule {
            Rule::PowerOfTwo | Rule::OddPrime => true,
            Rule::TwoPowerTimesPrime => self.a % (1 << (self.two_exponent - 1)) == 0,
            Rule::OddCompositeFactor => false,
        }
    }
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

fn smallest_prime_factor(m: usize) -> Option<usize> {
    (2..=m).find(|d| m % d == 0)
}

fn check_instance(n: usize, a: usize) -> Result<(), DecisionError> {
    if n < 2 {
        return Err(DecisionError::InvalidSize(n));
    }
    if a == 0 || a >= n {
        return Err(DecisionError::OutOfRange { n, a });
    }
    if 2 * a == n {
        return Err(DecisionError::SamePair { n, a });
    }
    Ok(())
}

/// An integer relation over `k = 1..n-1` together with its `σ`-sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub vector: Vec<BigInt>,
    pub sigma_sum: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm(Rule),
    /// Parity checked on a kernel basis of the given rank.
    LatticeParity {
        rank: usize,
    },
    Witness(WitnessCase),
    /// Strong cospectrality fails at this eigenvalue index.
    NotCospectral {
        eigen_index: usize,
    },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm(rule) => write!(f, "closed-form:{rule}"),
            Provenance::LatticeParity { rank } => write!(f, "lattice-parity:rank={rank}"),
            Provenance::Witness(case) => write!(f, "witness:{case}"),
            Provenance::NotCospectral { eigen_index } => write!(f, "not-cospectral:k={eigen_index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub has_lpgst: bool,
    pub from_pair: VertexPair,
    pub to_pair: VertexPair,
    pub provenance: Provenance,
    pub certificate: Option<Certificate>,
}

fn mirror_pairs(n: usize, a: usize) -> (VertexPair, VertexPair) {
    (VertexPair::edge_at(a), VertexPair::edge_at(n - a))
}

/// Closed-form verdict. Negative verdicts carry the explicit witness
/// relation when one applies.
pub fn classify_path(n: usize, a: usize) -> Result<Verdict, DecisionError> {
    let class = PathClass::new(n, a)?;
    let (from_pair, to_pair) = mirror_pairs(n, a);
    let has_lpgst = class.has_lpgst();
    let certificate = if has_lpgst {
        None
    } else {
        witness_relation(n, a).map(|w| Certificate {
            sigma_sum: sigma_sum(n, a, &w.vector),
            vector: w.vector,
        })
    };
    Ok(Verdict {
        has_lpgst,
        from_pair,
        to_pair,
        provenance: Provenance::ClosedForm(class.rule),
        certificate,
    })
}

/// Exact decision through the relation lattice over the support.
pub fn decide_path_lpgst(n: usize, a: usize) -> Result<Verdict, DecisionError> {
    decide_path_lpgst_with_scope(n, a, RelationScope::Support)
}

/// As [`decide_path_lpgst`], optionally over all `θ_1..θ_{n-1}`.
pub fn decide_path_lpgst_with_scope(n: usize, a: usize, scope: RelationScope) -> Result<Verdict, DecisionError> {
    check_instance(n, a)?;
    let (from_pair, to_pair) = mirror_pairs(n, a);
    // mirror edges are always strongly cospectral, with the parity-of-k split
    let part = path_support_partition(n, a)?;
    let system = build_relation_system_with_scope(n, &part, scope)?;
    let lattice = system.kernel()?;
    let rank = lattice.rank();
    let (has_lpgst, certificate) = match parity_holds(&lattice, &system.sigma)? {
        ParityOutcome::Holds => (true, None),
        ParityOutcome::Violated { certificate, sigma_sum } => (
            false,
            Some(Certificate {
                vector: lattice.to_path_vector(&certificate, n),
                sigma_sum,
            }),
        ),
    };
    Ok(Verdict {
        has_lpgst,
        from_pair,
        to_pair,
        provenance: Provenance::LatticeParity { rank },
        certificate,
    })
}

/// Decision for arbitrary pairs on `P_n`. Mirror edges go to the lattice
/// engine; other pairs are rejected when they are not strongly cospectral.
pub fn decide_path_pairs(n: usize, from: VertexPair, to: VertexPair) -> Result<Verdict, DecisionError> {
    if n < 2 {
        return Err(DecisionError::InvalidSize(n));
    }
    from.check(n)?;
    to.check(n)?;
    let edge_start = |p: VertexPair| (p.a().abs_diff(p.b()) == 1).then(|| p.a().min(p.b()));
    if let (Some(a), Some(c)) = (edge_start(from), edge_start(to)) {
        if c == n - a && 2 * a != n {
            let mut v = decide_path_lpgst(n, a)?;
            v.from_pair = from;
            v.to_pair = to;
            return Ok(v);
        }
    }
    let s = path_spectrum(n)?;
    match strong_cospectrality(&s, from, to, 1e-8)? {
        Cospectrality::NotCospectral { index, .. } => Ok(Verdict {
            has_lpgst: false,
            from_pair: from,
            to_pair: to,
            provenance: Provenance::NotCospectral { eigen_index: index },
            certificate: None,
        }),
        Cospectrality::Cospectral(_) => Err(DecisionError::Unsupported(format!(
            "{from} and {to} are strongly cospectral in P_{n} but are not a mirror edge pair"
        ))),
    }
}

/// Which alternating construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessCase {
    /// Period `2^{t+1}`: the odd part divides `a`, or `n = 2^t p` with
    /// `2^{t-1} ∤ a`.
    TwoPowerPeriod,
    /// Period `2^{t+1} p` for a prime `p | r` with `p | n / gcd(a, n)`, `t ≥ 1`.
    PrimeBlockPeriod,
    /// Period `2p` for odd `n` and a prime `p | n / gcd(a, n)`.
    OddPrimePeriod,
}

impl WitnessCase {
    pub fn id(&self) -> &'static str {
        match self {
            WitnessCase::TwoPowerPeriod => "two-power-period",
            WitnessCase::PrimeBlockPeriod => "prime-block-period",
            WitnessCase::OddPrimePeriod => "odd-prime-period",
        }
    }
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub case: WitnessCase,
    /// Half-period `K`: `l_k = +1` at `k ≡ 1, K+2` and `-1` at `k ≡ 2, K+1`
    /// modulo `2K`.
    pub half_period: usize,
    /// `l_k` for `k = 1..n-1`.
    pub vector: Vec<BigInt>,
}

/// `l_{c + jK} = ±(-1)^j` for `c ∈ {1, 2}` and `j < n / K`.
fn alternating_relation(n: usize, half_period: usize) -> Vec<BigInt> {
    let mut l = vec![BigInt::zero(); n - 1];
    for j in 0..n / half_period {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        l[j * half_period] += sign;
        l[j * half_period + 1] -= sign;
    }
    l
}

/// Explicit odd-parity relation for a negative instance, or `None` when the
/// instance transfers (or is invalid).
pub fn witness_relation(n: usize, a: usize) -> Option<Witness> {
    let class = PathClass::new(n, a).ok()?;
    let t = class.two_exponent;
    let r = class.odd_part;
    let two_t = 1usize << t;
    let (case, half_period) = match class.rule {
        Rule::PowerOfTwo | Rule::OddPrime => return None,
        Rule::TwoPowerTimesPrime => {
            if class.has_lpgst() {
                return None;
            }
            (WitnessCase::TwoPowerPeriod, two_t)
        }
        Rule::OddCompositeFactor => {
            let reduced = n / n.gcd(&a);
            if t > 0 && a % r == 0 {
                (WitnessCase::TwoPowerPeriod, two_t)
            } else {
                let p = smallest_prime_factor(r.gcd(&reduced))?;
                if t > 0 {
                    (WitnessCase::PrimeBlockPeriod, two_t * p)
                } else {
                    (WitnessCase::OddPrimePeriod, p)
                }
            }
        }
    };
    Some(Witness {
        case,
        half_period,
        vector: alternating_relation(n, half_period),
    })
}

fn sigma_sum(n: usize, a: usize, l: &[BigInt]) -> BigInt {
    let part = path_support_partition(n, a).expect("validated instance");
    l.iter()
        .enumerate()
        .filter(|(i, _)| part.is_minus(i + 1))
        .map(|(_, x)| x)
        .sum()
}

/// Result of [`verify_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessCheck {
    /// `Σ l_k = 0`.
    pub sum_zero: bool,
    /// `Σ l_k θ_k = 0` in `ℤ[x]/Φ_{2n}`.
    pub relation_zero: bool,
    /// `Σ σ_k l_k` is odd.
    pub parity_odd: bool,
    /// `l_k = 0` whenever `θ_k` is outside the support.
    pub supported: bool,
}

impl WitnessCheck {
    pub fn triple(&self) -> (bool, bool, bool) {
        (self.sum_zero, self.relation_zero, self.parity_odd)
    }

    pub fn all(&self) -> bool {
        self.sum_zero && self.relation_zero && self.parity_odd && self.supported
    }
}

/// Checks a candidate relation `l` (indexed by `k = 1..n-1`) exactly.
pub fn verify_witness(n: usize, a: usize, l: &[BigInt]) -> Result<WitnessCheck, DecisionError> {
    if n < 2 {
        return Err(DecisionError::InvalidSize(n));
    }
    if a == 0 || a >= n {
        return Err(DecisionError::OutOfRange { n, a });
    }
    if l.len() != n - 1 {
        return Err(DecisionError::WitnessLength {
            expected: n - 1,
            got: l.len(),
        });
    }
    let part = path_support_partition(n, a)?;
    let field = PathEigenvalueField::new(n)?;
    Ok(WitnessCheck {
        sum_zero: l.iter().sum::<BigInt>().is_zero(),
        relation_zero: field.combination(l).is_zero(),
        parity_odd: sigma_sum(n, a, l).is_odd(),
        supported: part.excluded.iter().filter(|&&k| k > 0).all(|&k| l[k - 1].is_zero()),
    })
}

/// `|Σ_{j<m} (-1)^j cos((c + jk)π/n)|` for `n = km`, odd `m > 1`, `c < k`.
pub fn verify_lemma_identity(n: usize, k: usize, m: usize, c: usize) -> Result<f64, DecisionError> {
    if k == 0 || k * m != n {
        return Err(DecisionError::Precondition(format!("n = {n} must equal k·m = {k}·{m}")));
    }
    if m <= 1 || m % 2 == 0 {
        return Err(DecisionError::Precondition(format!("m = {m} must be odd and > 1")));
    }
    if c >= k {
        return Err(DecisionError::Precondition(format!("c = {c} must be below k = {k}")));
    }
    let nf = n as f64;
    let s: f64 = (0..m)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * ((c + j * k) as f64 * std::f64::consts::PI / nf).cos()
        })
        .sum();
    Ok(s.abs())
}

/// All three routes for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossVerification {
    pub closed_form: Verdict,
    pub lattice: Verdict,
    pub witness: Option<Witness>,
    pub witness_check: Option<WitnessCheck>,
}

impl CrossVerification {
    /// Closed form and lattice agree, and any witness passes every check
    /// and only appears for negative instances.
    pub fn agree(&self) -> bool {
        let verdicts = self.closed_form.has_lpgst == self.lattice.has_lpgst;
        let witness = match (&self.witness_check, self.closed_form.has_lpgst) {
            (Some(check), false) => check.all(),
            (Some(_), true) => false,
            (None, _) => true,
        };
        verdicts && witness
    }
}

pub fn cross_verify(n: usize, a: usize) -> Result<CrossVerification, DecisionError> {
    let closed_form = classify_path(n, a)?;
    let lattice = decide_path_lpgst(n, a)?;
    let witness = witness_relation(n, a);
    let witness_check = witness.as_ref().map(|w| verify_witness(n, a, &w.vector)).transpose()?;
    Ok(CrossVerification {
        closed_form,
        lattice,
        witness,
        witness_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn closed_form_examples() {
        let v = classify_path(8, 3).unwrap();
        assert!(v.has_lpgst);
        assert_eq!(v.provenance, Provenance::ClosedForm(Rule::PowerOfTwo));
        assert_eq!(v.from_pair, VertexPair::edge_at(3));
        assert_eq!(v.to_pair, VertexPair::edge_at(5));

        let v = classify_path(9, 1).unwrap();
        assert!(!v.has_lpgst);
        assert_eq!(v.provenance, Provenance::ClosedForm(Rule::OddCompositeFactor));
        let class = PathClass::new(9, 1).unwrap();
        assert_eq!((class.two_exponent, class.odd_part), (0, 9));

        assert!(classify_path(12, 2).unwrap().has_lpgst);
        assert!(!classify_path(12, 1).unwrap().has_lpgst);
        let class = PathClass::new(12, 1).unwrap();
        assert_eq!(
            (class.rule, class.two_exponent, class.odd_part),
            (Rule::TwoPowerTimesPrime, 2, 3)
        );

        assert_eq!(
            classify_path(5, 2).unwrap().provenance,
            Provenance::ClosedForm(Rule::OddPrime)
        );
    }

    #[test]
    fn instance_errors() {
        assert_eq!(classify_path(2, 1), Err(DecisionError::SamePair { n: 2, a: 1 }));
        assert_eq!(classify_path(6, 3), Err(DecisionError::SamePair { n: 6, a: 3 }));
        assert_eq!(decide_path_lpgst(6, 3), Err(DecisionError::SamePair { n: 6, a: 3 }));
        assert_eq!(classify_path(6, 6), Err(DecisionError::OutOfRange { n: 6, a: 6 }));
        assert_eq!(classify_path(6, 0), Err(DecisionError::OutOfRange { n: 6, a: 0 }));
        assert_eq!(classify_path(1, 1), Err(DecisionError::InvalidSize(1)));
    }

    #[test]
    fn lattice_examples() {
        let v = decide_path_lpgst(4, 1).unwrap();
        assert!(v.has_lpgst);
        assert_eq!(v.provenance, Provenance::LatticeParity { rank: 1 });

        let v = decide_path_lpgst(9, 1).unwrap();
        assert!(!v.has_lpgst);
        let cert = v.certificate.unwrap();
        assert!(cert.sigma_sum.is_odd());
        assert!(verify_witness(9, 1, &cert.vector).unwrap().all());

        assert!(decide_path_lpgst(5, 2).unwrap().has_lpgst);
    }

    #[test]
    fn witness_examples() {
        let w = witness_relation(9, 1).unwrap();
        assert_eq!(w.case, WitnessCase::OddPrimePeriod);
        assert_eq!(w.vector, big(&[1, -1, 0, -1, 1, 0, 1, -1]));
        assert_eq!(verify_witness(9, 1, &w.vector).unwrap().triple(), (true, true, true));

        let w = witness_relation(18, 1).unwrap();
        assert_eq!(w.case, WitnessCase::PrimeBlockPeriod);
        assert_eq!(w.half_period, 6);
        for k in 1..18 {
            let want = match k % 12 {
                1 | 8 => 1,
                2 | 7 => -1,
                _ => 0,
            };
            assert_eq!(w.vector[k - 1], BigInt::from(want), "k = {k}");
        }
        assert!(verify_witness(18, 1, &w.vector).unwrap().all());

        assert_eq!(witness_relation(5, 1), None);
        assert_eq!(witness_relation(12, 2), None);
        assert_eq!(witness_relation(6, 3), None);
        // n = 12, a = 1 fails through the two-power period
        let w = witness_relation(12, 1).unwrap();
        assert_eq!(w.case, WitnessCase::TwoPowerPeriod);
        assert!(verify_witness(12, 1, &w.vector).unwrap().all());
        // odd part divides a
        let w = witness_relation(36, 9).unwrap();
        assert_eq!((w.case, w.half_period), (WitnessCase::TwoPowerPeriod, 4));
        assert!(verify_witness(36, 9, &w.vector).unwrap().all());
    }

    #[test]
    fn verify_witness_edge_cases() {
        let zero = vec![BigInt::zero(); 8];
        assert_eq!(verify_witness(9, 1, &zero).unwrap().triple(), (true, true, false));
        let check = verify_witness(4, 1, &big(&[1, -1, 0])).unwrap();
        assert!(check.sum_zero);
        assert!(!check.relation_zero);
        assert!(matches!(
            verify_witness(4, 1, &big(&[1, -1])),
            Err(DecisionError::WitnessLength { expected: 3, got: 2 })
        ));
        // θ_2 is off the support of {2,3} in P_4
        let check = verify_witness(4, 2, &big(&[0, 1, 0])).unwrap();
        assert!(!check.supported);
    }

    #[test]
    fn alternating_cosine_examples() {
        assert!(verify_lemma_identity(6, 2, 3, 0).unwrap() < 1e-15);
        assert!(verify_lemma_identity(9, 3, 3, 1).unwrap() < 1e-12);
        assert!(verify_lemma_identity(45, 9, 5, 4).unwrap() < 1e-12);
        assert!(verify_lemma_identity(8, 4, 2, 0).is_err());
        assert!(verify_lemma_identity(9, 9, 1, 0).is_err());
        assert!(verify_lemma_identity(9, 3, 3, 3).is_err());
        assert!(verify_lemma_identity(10, 3, 3, 0).is_err());
    }

    #[test]
    fn arbitrary_path_pairs() {
        let v = decide_path_pairs(6, VertexPair::new(2, 3).unwrap(), VertexPair::new(4, 5).unwrap()).unwrap();
        assert!(v.has_lpgst);
        assert!(matches!(v.provenance, Provenance::LatticeParity { .. }));
        // reversed orientation is still the mirror edge
        let v = decide_path_pairs(6, VertexPair::new(3, 2).unwrap(), VertexPair::new(5, 4).unwrap()).unwrap();
        assert!(v.has_lpgst);

        let v = decide_path_pairs(6, VertexPair::edge_at(1), VertexPair::edge_at(4)).unwrap();
        assert!(!v.has_lpgst);
        assert_eq!(v.provenance, Provenance::NotCospectral { eigen_index: 1 });

        assert!(matches!(
            decide_path_pairs(6, VertexPair::edge_at(2), VertexPair::edge_at(2)),
            Err(DecisionError::Unsupported(_))
        ));
        assert!(decide_path_pairs(4, VertexPair::edge_at(1), VertexPair::edge_at(4)).is_err());
    }

    #[test]
    fn cross_verification_agrees_on_small_paths() {
        for n in 2..=20 {
            for a in 1..n {
                if 2 * a == n {
                    continue;
                }
                let cv = cross_verify(n, a).unwrap();
                assert!(cv.agree(), "n={n} a={a}: {cv:?}");
            }
        }
    }

    #[test]
    fn all_index_scope_agrees() {
        for n in 2..=24 {
            for a in 1..n {
                if 2 * a == n {
                    continue;
                }
                let support = decide_path_lpgst(n, a).unwrap().has_lpgst;
                let all = decide_path_lpgst_with_scope(n, a, RelationScope::AllIndices)
                    .unwrap()
                    .has_lpgst;
                assert_eq!(support, all, "n={n} a={a}");
            }
        }
    }
}
