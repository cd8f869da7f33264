//! Exact arithmetic in `ℤ[x]/Φ_{2n}(x)`, the ring that holds the path
//! eigenvalues `θ_k = 2 - ζ^k - ζ^{2n-k}` with `ζ = e^{iπ/n}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("modulus must be monic and non-constant")]
    InvalidModulus,
    #[error("index k = {k} out of range 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("modulus orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `x^i`. The
/// highest stored coefficient is nonzero, the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · x^d`.
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Long division by a monic polynomial: `self = q·divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial), CycloError> {
        let dd = match divisor.degree() {
            Some(d) if divisor.is_monic() => d,
            _ => return Err(CycloError::InvalidModulus),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[shift + dd]);
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                if !d.is_zero() {
                    rem[shift + i] -= &c * d;
                }
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// Horner evaluation in floating point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{mag}x^{d}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// Euler's totient.
pub fn euler_phi(m: usize) -> usize {
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

pub fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// `Φ_m` for every divisor `m'` of `m`, each obtained by dividing
/// `x^{m'} - 1` by the `Φ_d` of its proper divisors.
pub fn cyclotomic_table(m: usize) -> Result<BTreeMap<usize, IntPolynomial>, CycloError> {
    if m == 0 {
        return Err(CycloError::ZeroOrder);
    }
    let mut table = BTreeMap::new();
    for d in divisors(m) {
        let mut p = &IntPolynomial::monomial(1, d) - &IntPolynomial::monomial(1, 0);
        for e in divisors(d) {
            if e == d {
                continue;
            }
            let (q, r) = p.div_rem_monic(&table[&e])?;
            debug_assert!(r.is_zero(), "Φ_{e} must divide x^{d} - 1");
            p = q;
        }
        table.insert(d, p);
    }
    Ok(table)
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: usize) -> Result<IntPolynomial, CycloError> {
    let mut table = cyclotomic_table(m)?;
    Ok(table.remove(&m).expect("m divides itself"))
}

/// Remainder of `p` modulo a monic `phi`.
pub fn reduce_mod(p: &IntPolynomial, phi: &IntPolynomial) -> Result<IntPolynomial, CycloError> {
    Ok(p.div_rem_monic(phi)?.1)
}

/// An element of `ℤ[x]/Φ_m(x)` in the power basis `1, x, …, x^{φ(m)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl CycloElement {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order)],
        }
    }

    /// Reduces `p` modulo `phi = Φ_order`.
    pub fn from_poly(order: usize, p: &IntPolynomial, phi: &IntPolynomial) -> Result<Self, CycloError> {
        let r = reduce_mod(p, phi)?;
        let dim = euler_phi(order);
        debug_assert_eq!(phi.degree(), Some(dim));
        Ok(Self {
            order,
            coeffs: (0..dim).map(|i| r.coeff(i)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value at `x = e^{2πi/order}`.
    pub fn eval(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.order as f64);
        IntPolynomial::new(self.coeffs.clone()).eval_complex(z)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        if self.order != other.order {
            return Err(CycloError::OrderMismatch(self.order, other.order));
        }
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// `Φ_{2n}` together with the exact images of `θ_1, …, θ_{n-1}`.
#[derive(Debug, Clone)]
pub struct PathEigenvalueField {
    n: usize,
    phi: IntPolynomial,
    thetas: Vec<CycloElement>,
}

impl PathEigenvalueField {
    pub fn new(n: usize) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let phi = cyclotomic_polynomial(2 * n)?;
        let thetas = (1..n)
            .map(|k| CycloElement::from_poly(2 * n, &theta_polynomial(n, k), &phi))
            .collect::<Result<_, _>>()?;
        Ok(Self { n, phi, thetas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.phi
    }

    /// Exact `θ_k`, `1 ≤ k ≤ n-1`.
    pub fn theta(&self, k: usize) -> Result<&CycloElement, CycloError> {
        if k == 0 || k >= self.n {
            return Err(CycloError::IndexOutOfRange {
                k,
                max: self.n.saturating_sub(1),
            });
        }
        Ok(&self.thetas[k - 1])
    }

    /// `Σ_k l_k θ_k` for `l` indexed by `k = 1..n-1`.
    pub fn combination(&self, l: &[BigInt]) -> CycloElement {
        assert_eq!(l.len(), self.n - 1, "expected one coefficient per k = 1..n-1");
        let mut acc = CycloElement::zero(2 * self.n);
        for (c, theta) in l.iter().zip(&self.thetas) {
            if !c.is_zero() {
                for (a, t) in acc.coeffs.iter_mut().zip(&theta.coeffs) {
                    *a += c * t;
                }
            }
        }
        acc
    }
}

/// `2 - x^k - x^{2n-k}` before reduction.
fn theta_polynomial(n: usize, k: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); 2 * n - k + 1];
    coeffs[0] += 2;
    coeffs[k] -= 1;
    coeffs[2 * n - k] -= 1;
    IntPolynomial::new(coeffs)
}

/// Exact image of `θ_k = 2 - 2cos(kπ/n)` in `ℤ[x]/Φ_{2n}(x)`.
pub fn theta_element(n: usize, k: usize) -> Result<CycloElement, CycloError> {
    if k == 0 || k >= n {
        return Err(CycloError::IndexOutOfRange {
            k,
            max: n.saturating_sub(1),
        });
    }
    let phi = cyclotomic_polynomial(2 * n)?;
    CycloElement::from_poly(2 * n, &theta_polynomial(n, k), &phi)
}

/// `L(x) = Σ_{k<n} l_k x^k + Σ_{n<k<2n} l_{2n-k} x^k` for `l` indexed by
/// `k = 1..n-1`. `ζ_{2n}` is a root exactly when `Σ l_k cos(kπ/n) = 0`.
pub fn relation_polynomial(l: &[BigInt]) -> IntPolynomial {
    let n = l.len() + 1;
    let mut coeffs = vec![BigInt::zero(); 2 * n];
    for (i, c) in l.iter().enumerate() {
        let k = i + 1;
        coeffs[k] += c;
        coeffs[2 * n - k] += c;
    }
    IntPolynomial::new(coeffs)
}
