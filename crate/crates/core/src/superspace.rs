//! Weights, roots and the invariant form on the dual Cartan of sl(m|n).
//!
//! A weight is stored as its `m + n` coordinates with respect to
//! `ε_1..ε_m, δ_1..δ_n`; the coordinates always sum to zero.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, Q};

/// The super dimension `(m|n)` of the natural module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperDim {
    pub m: usize,
    pub n: usize,
}

impl SuperDim {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidDims { m, n, reason: "m and n must be at least 1".into() });
        }
        if m == n {
            return Err(Error::InvalidDims {
                m,
                n,
                reason: "m = n makes the Killing form degenerate".into(),
            });
        }
        Ok(SuperDim { m, n })
    }

    /// `m + n`.
    #[inline]
    pub fn total(&self) -> usize {
        self.m + self.n
    }

    /// `m - n` as a signed integer.
    #[inline]
    pub fn diff(&self) -> i64 {
        self.m as i64 - self.n as i64
    }

    /// Parity of the 0-based index `i`: 0 for the first `m`, 1 afterwards.
    #[inline]
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.m)
    }

    /// Requires `|m - n| > 2`.
    pub fn require_wide(&self) -> Result<()> {
        if self.diff().abs() <= 2 {
            return Err(Error::InvalidDims {
                m: self.m,
                n: self.n,
                reason: format!("|m-n| = {} but |m-n| > 2 is required", self.diff().abs()),
            });
        }
        Ok(())
    }

    /// Requires `m - n > 2`.
    pub fn require_positive_wide(&self) -> Result<()> {
        if self.diff() <= 2 {
            return Err(Error::InvalidDims {
                m: self.m,
                n: self.n,
                reason: format!("m-n = {} but m-n > 2 is required", self.diff()),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    dim: SuperDim,
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(dim: SuperDim, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != dim.total() {
            return Err(Error::DimMismatch(
                format!("{} coordinates", coords.len()),
                dim.to_string(),
            ));
        }
        let sum: Q = coords.iter().sum();
        if !sum.is_zero() {
            return Err(Error::NonZeroSum(fmt_q(&sum)));
        }
        Ok(Weight { dim, coords })
    }

    pub fn from_ints(dim: SuperDim, coords: &[i64]) -> Result<Self> {
        Self::new(dim, coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero(dim: SuperDim) -> Self {
        Weight { dim, coords: vec![Q::zero(); dim.total()] }
    }

    /// `ε_i - δ_j`-style differences of basis vectors, 0-based coordinate indices.
    pub fn difference(dim: SuperDim, i: usize, j: usize) -> Self {
        let mut coords = vec![Q::zero(); dim.total()];
        coords[i] += Q::one();
        coords[j] -= Q::one();
        Weight { dim, coords }
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Weight) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim.to_string(), other.dim.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Weight { dim: self.dim, coords })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Weight { dim: self.dim, coords })
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { dim: self.dim, coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.numer().try_into().ok() } else { None })
            .collect()
    }

    /// Coordinates as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_q).collect()
    }
}

impl fmt::Display for Weight {
    /// Renders as a combination such as `2ε1 - ε4 - δ1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sym, idx) = if i < self.dim.m { ('ε', i + 1) } else { ('δ', i + 1 - self.dim.m) };
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !mag.is_one() {
                write!(f, "{}", fmt_q(&mag))?;
            }
            write!(f, "{sym}{idx}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Positive and simple roots for the distinguished Borel (upper triangular matrices).
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub even_positive: Vec<Weight>,
    pub odd_positive: Vec<Weight>,
    pub simple: Vec<Weight>,
}

impl RootSystem {
    pub fn new(dim: SuperDim) -> Self {
        let (m, total) = (dim.m, dim.total());
        let mut even_positive = Vec::new();
        let mut odd_positive = Vec::new();
        for i in 0..total {
            for j in i + 1..total {
                let root = Weight::difference(dim, i, j);
                if (i < m) == (j < m) {
                    even_positive.push(root);
                } else {
                    odd_positive.push(root);
                }
            }
        }
        let simple = (0..total - 1).map(|i| Weight::difference(dim, i, i + 1)).collect();
        RootSystem { even_positive, odd_positive, simple }
    }
}

/// Half the sum of even positive roots minus half the sum of odd positive roots.
pub fn rho(m: usize, n: usize) -> Result<Weight> {
    let dim = SuperDim::new(m, n)?;
    let (mi, ni) = (m as i64, n as i64);
    let mut coords = Vec::with_capacity(m + n);
    for i in 1..=mi {
        coords.push(q(mi - ni - 2 * i + 1, 2));
    }
    for j in 1..=ni {
        coords.push(q(ni + mi - 2 * j + 1, 2));
    }
    Weight::new(dim, coords)
}

/// The form with `(ε_i, ε_j) = δ_ij`, `(δ_j, δ_k) = -δ_jk`, `(ε_i, δ_j) = 0`.
pub fn form_eval(lambda: &Weight, mu: &Weight) -> Result<Q> {
    lambda.check_same(mu)?;
    let m = lambda.dim.m;
    let mut acc = Q::zero();
    for (i, (a, b)) in lambda.coords.iter().zip(&mu.coords).enumerate() {
        if i < m {
            acc += a * b;
        } else {
            acc -= a * b;
        }
    }
    Ok(acc)
}

/// Eigenvalue `(λ + 2ρ, λ)` of the quadratic Casimir on a highest weight vector.
pub fn casimir_eigenvalue(lambda: &Weight) -> Result<Q> {
    let dim = lambda.dim;
    let rho = rho(dim.m, dim.n)?;
    let shifted = lambda.add(&rho.scale(&qi(2)))?;
    form_eval(&shifted, lambda)
}

/// Highest weight of the k-th symmetric power of the adjoint representation.
pub fn lambda_k(k: usize, m: usize, n: usize) -> Result<Weight> {
    let dim = SuperDim::new(m, n)?;
    let mut coords = vec![0i64; m + n];
    coords[0] = k as i64;
    if k <= n {
        for j in n - k..n {
            coords[m + j] -= 1;
        }
    } else {
        coords[m - 1] -= (k - n) as i64;
        for j in 0..n {
            coords[m + j] -= 1;
        }
    }
    Weight::from_ints(dim, &coords)
}

/// `(λ, α∨)` with `α∨ = 2α/(α, α)`; undefined for isotropic roots.
pub fn coroot_pairing(lambda: &Weight, alpha: &Weight) -> Result<Q> {
    let aa = form_eval(alpha, alpha)?;
    if aa.is_zero() {
        return Err(Error::IsotropicRoot(alpha.to_string()));
    }
    Ok(qi(2) * form_eval(lambda, alpha)? / aa)
}

/// Whether the integral weight `λ` satisfies `(λ+ρ, α∨) > 0` for every even
/// positive root. Non-integral weights are reported as an error.
pub fn is_dominant_regular(lambda: &Weight) -> Result<bool> {
    let dim = lambda.dim;
    let shifted = lambda.add(&rho(dim.m, dim.n)?)?;
    let roots = RootSystem::new(dim);
    let mut dominant = true;
    for alpha in &roots.even_positive {
        let v = coroot_pairing(&shifted, alpha)?;
        if !v.is_integer() {
            return Err(Error::NonIntegral { root: alpha.to_string(), value: fmt_q(&v) });
        }
        if !v.is_positive() {
            dominant = false;
        }
    }
    Ok(dominant)
}
