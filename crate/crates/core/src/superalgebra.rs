//! gl(m|n) and sl(m|n) as supermatrices.
//!
//! [`Slmn`] bundles everything derived from a fixed `(m|n)`: the ordered
//! basis, parities and weights of basis elements, structure constants and the
//! dual basis for the supertrace form. Build it once and share it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{invert, DenseMatrix};
use crate::rational::{fmt_q, qi, sign_q, Q};
use crate::superspace::{SuperDim, Weight};
use crate::tensoralg::{SlotKind, SuperTensor};

/// An `(m+n) × (m+n)` matrix with rational entries; row/column `i` has parity `dim.parity(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    dim: SuperDim,
    entries: Vec<Q>,
}

impl SuperMatrix {
    pub fn zero(dim: SuperDim) -> Self {
        let t = dim.total();
        SuperMatrix { dim, entries: vec![Q::zero(); t * t] }
    }

    pub fn identity(dim: SuperDim) -> Self {
        let mut a = Self::zero(dim);
        for i in 0..dim.total() {
            a.set(i, i, Q::one());
        }
        a
    }

    /// Elementary matrix `E_ij` (0-based).
    pub fn elementary(dim: SuperDim, i: usize, j: usize) -> Self {
        let mut a = Self::zero(dim);
        a.set(i, j, Q::one());
        a
    }

    pub fn from_entries(dim: SuperDim, entries: Vec<Q>) -> Result<Self> {
        if entries.len() != dim.total() * dim.total() {
            return Err(Error::DimMismatch(format!("{} entries", entries.len()), dim.to_string()));
        }
        Ok(SuperMatrix { dim, entries })
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.dim.total() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        let t = self.dim.total();
        self.entries[i * t + j] = v;
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        let t = self.dim.total();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / t, k % t, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        SuperMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Restriction to entries with `|i| + |j| ≡ p`.
    pub fn part(&self, p: u8) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, j, v) in self.nonzero() {
            if (self.dim.parity(i) + self.dim.parity(j)) % 2 == p {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// `Some(p)` if homogeneous of parity `p`; the zero matrix counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut seen: Option<u8> = None;
        for (i, j, _) in self.nonzero() {
            let p = (self.dim.parity(i) + self.dim.parity(j)) % 2;
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    pub fn matmul(&self, other: &SuperMatrix) -> SuperMatrix {
        let t = self.dim.total();
        let mut out = Self::zero(self.dim);
        for (i, k, a) in self.nonzero() {
            for j in 0..t {
                let b = other.get(k, j);
                if !b.is_zero() {
                    out.entries[i * t + j] += a * b;
                }
            }
        }
        out
    }

    /// Embedding into `V ⊗ V*` as a two-slot tensor.
    pub fn to_tensor(&self) -> SuperTensor {
        let mut t = SuperTensor::zero(self.dim, vec![SlotKind::V, SlotKind::Dual]);
        for (i, j, v) in self.nonzero() {
            t.add_at(&[i as u8, j as u8], v);
        }
        t
    }

    pub fn from_tensor(t: &SuperTensor) -> Result<SuperMatrix> {
        if t.signature() != [SlotKind::V, SlotKind::Dual] {
            return Err(Error::Signature(format!("expected (V, V*), got {:?}", t.signature())));
        }
        let mut a = Self::zero(t.dim());
        for (idx, v) in t.iter() {
            a.set(idx[0] as usize, idx[1] as usize, v.clone());
        }
        Ok(a)
    }
}

impl Add for &SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, rhs: &SuperMatrix) -> SuperMatrix {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        SuperMatrix { dim: self.dim, entries }
    }
}

impl Sub for &SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, rhs: &SuperMatrix) -> SuperMatrix {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        SuperMatrix { dim: self.dim, entries }
    }
}

impl Neg for &SuperMatrix {
    type Output = SuperMatrix;
    fn neg(self) -> SuperMatrix {
        SuperMatrix { dim: self.dim, entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl Mul for &SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, v) in self.nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})E{},{}", fmt_q(v), i + 1, j + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Super commutator `AB - (-1)^{|A||B|} BA`, extended bilinearly to
/// inhomogeneous arguments.
pub fn bracket(a: &SuperMatrix, b: &SuperMatrix) -> SuperMatrix {
    let mut out = SuperMatrix::zero(a.dim);
    for pa in 0..2u8 {
        let ap = a.part(pa);
        if ap.is_zero() {
            continue;
        }
        for pb in 0..2u8 {
            let bp = b.part(pb);
            if bp.is_zero() {
                continue;
            }
            let ab = ap.matmul(&bp);
            let ba = bp.matmul(&ap);
            let s = sign_q(u32::from(pa * pb));
            out = &out + &(&ab - &ba.scale(&s));
        }
    }
    out
}

/// `Σ_i (-1)^{|i|} A_ii`.
pub fn supertrace(a: &SuperMatrix) -> Q {
    (0..a.dim.total())
        .map(|i| sign_q(u32::from(a.dim.parity(i))) * a.get(i, i))
        .sum()
}

/// Killing form `2(m-n) Σ_{i,j} (-1)^{|i|} A_ij B_ji`.
pub fn killing(a: &SuperMatrix, b: &SuperMatrix) -> Q {
    let dim = a.dim;
    let mut acc = Q::zero();
    for (i, j, v) in a.nonzero() {
        let w = b.get(j, i);
        if !w.is_zero() {
            acc += sign_q(u32::from(dim.parity(i))) * v * w;
        }
    }
    acc * qi(2 * dim.diff())
}

/// The 3-grading by eigenvalues of `ad E_11`: returns `(A_-, A_0, A_+)`.
pub fn grade3(a: &SuperMatrix) -> (SuperMatrix, SuperMatrix, SuperMatrix) {
    let dim = a.dim;
    let (mut lo, mut mid, mut hi) =
        (SuperMatrix::zero(dim), SuperMatrix::zero(dim), SuperMatrix::zero(dim));
    for (i, j, v) in a.nonzero() {
        let target = match (i == 0, j == 0) {
            (false, true) => &mut lo,
            (true, false) => &mut hi,
            _ => &mut mid,
        };
        target.set(i, j, v.clone());
    }
    (lo, mid, hi)
}

/// Ordered basis of sl(m|n): every `E_ij` with `i ≠ j` in row-major order,
/// followed by `H_k = E_kk - s_k E_{k+1,k+1}` with `s_k = (-1)^{|k|+|k+1|}`.
#[derive(Clone, Debug)]
pub struct SlBasis {
    pub elements: Vec<SuperMatrix>,
}

pub fn sl_basis(m: usize, n: usize) -> Result<SlBasis> {
    let dim = SuperDim::new(m, n)?;
    Ok(SlBasis { elements: Slmn::basis_elements(dim) })
}

/// Where a basis element sits in the root decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Root { row: usize, col: usize },
    Cartan { k: usize },
}

/// sl(m|n) with its basis and derived tables.
#[derive(Clone, Debug)]
pub struct Slmn {
    pub dim: SuperDim,
    pub basis: Vec<SuperMatrix>,
    pub kinds: Vec<BasisKind>,
    /// Parity of each basis element.
    pub parity: Vec<u8>,
    /// Integer weight coordinates of each basis element.
    pub weights: Vec<Vec<i64>>,
    /// `s_k` in `H_k = E_kk - s_k E_{k+1,k+1}`.
    cartan_sign: Vec<Q>,
    offdiag: Vec<Option<usize>>,
    /// `ad[z][a]` = coordinates of `[x_z, x_a]`.
    ad: Vec<Vec<Vec<(usize, Q)>>>,
    /// Coordinates of `y^a`, where `str(y^a x_b) = δ_ab`.
    dual: Vec<Vec<(usize, Q)>>,
}

impl Slmn {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let dim = SuperDim::new(m, n)?;
        let t = dim.total();
        let basis = Self::basis_elements(dim);
        let mut kinds = Vec::with_capacity(basis.len());
        let mut offdiag = vec![None; t * t];
        for i in 0..t {
            for j in 0..t {
                if i != j {
                    offdiag[i * t + j] = Some(kinds.len());
                    kinds.push(BasisKind::Root { row: i, col: j });
                }
            }
        }
        for k in 0..t - 1 {
            kinds.push(BasisKind::Cartan { k });
        }
        let parity = basis.iter().map(|b| b.parity().unwrap_or(0)).collect();
        let weights = kinds
            .iter()
            .map(|k| {
                let mut w = vec![0i64; t];
                if let BasisKind::Root { row, col } = *k {
                    w[row] += 1;
                    w[col] -= 1;
                }
                w
            })
            .collect();
        let cartan_sign =
            (0..t - 1).map(|k| sign_q(u32::from(dim.parity(k) + dim.parity(k + 1)))).collect();
        let mut alg = Slmn {
            dim,
            basis,
            kinds,
            parity,
            weights,
            cartan_sign,
            offdiag,
            ad: Vec::new(),
            dual: Vec::new(),
        };
        alg.ad = alg
            .basis
            .iter()
            .map(|z| {
                alg.basis
                    .iter()
                    .map(|x| alg.coords(&bracket(z, x)).expect("bracket is supertraceless"))
                    .collect()
            })
            .collect();
        alg.dual = alg.dual_basis();
        Ok(alg)
    }

    fn basis_elements(dim: SuperDim) -> Vec<SuperMatrix> {
        let t = dim.total();
        let mut out = Vec::with_capacity(t * t - 1);
        for i in 0..t {
            for j in 0..t {
                if i != j {
                    out.push(SuperMatrix::elementary(dim, i, j));
                }
            }
        }
        for k in 0..t - 1 {
            let s = sign_q(u32::from(dim.parity(k) + dim.parity(k + 1)));
            let mut h = SuperMatrix::elementary(dim, k, k);
            h.set(k + 1, k + 1, -s);
            out.push(h);
        }
        out
    }

    /// `dim g = (m+n)^2 - 1`.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dim.total()
    }

    /// Basis index of `E_ij`, `i ≠ j`.
    pub fn root_index(&self, i: usize, j: usize) -> Option<usize> {
        self.offdiag[i * self.total() + j]
    }

    pub fn weight(&self, a: usize) -> Weight {
        Weight::from_ints(self.dim, &self.weights[a]).expect("root weights sum to zero")
    }

    /// Coordinates contributed by a unit entry at `(i, j)` of a supertraceless matrix.
    pub fn entry_coords(&self, i: usize, j: usize) -> Vec<(usize, Q)> {
        if i != j {
            return vec![(self.root_index(i, j).unwrap(), Q::one())];
        }
        let t = self.total();
        let base = t * t - t;
        let mut out = Vec::new();
        let mut c = Q::one();
        for k in i..t - 1 {
            out.push((base + k, c.clone()));
            c *= &self.cartan_sign[k];
        }
        out
    }

    /// Coordinates of a supertraceless matrix in the basis.
    pub fn coords(&self, a: &SuperMatrix) -> Result<Vec<(usize, Q)>> {
        if !supertrace(a).is_zero() {
            return Err(Error::NotTraceless(1, 2));
        }
        let mut dense = vec![Q::zero(); self.len()];
        for (i, j, v) in a.nonzero() {
            for (idx, c) in self.entry_coords(i, j) {
                dense[idx] += v * c;
            }
        }
        Ok(dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn from_coords(&self, coords: &[(usize, Q)]) -> SuperMatrix {
        let mut out = SuperMatrix::zero(self.dim);
        for (a, c) in coords {
            out = &out + &self.basis[*a].scale(c);
        }
        out
    }

    /// Structure constants: coordinates of `[x_z, x_a]`.
    pub fn ad_coords(&self, z: usize, a: usize) -> &[(usize, Q)] {
        &self.ad[z][a]
    }

    /// Coordinates of the dual element `y^a` with `str(y^a x_b) = δ_ab`.
    pub fn dual_coords(&self, a: usize) -> &[(usize, Q)] {
        &self.dual[a]
    }

    fn dual_basis(&self) -> Vec<Vec<(usize, Q)>> {
        let d = self.len();
        // gram[a][b] = str(x_a x_b); want y^a = Σ_c M[a][c] x_c with Σ_c M[a][c] gram[c][b] = δ_ab
        let mut gram = DenseMatrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                gram.set(a, b, supertrace(&self.basis[a].matmul(&self.basis[b])));
            }
        }
        let inv = invert(&gram).expect("supertrace form is nondegenerate for m != n");
        (0..d)
            .map(|a| {
                (0..d)
                    .filter_map(|c| {
                        let v = inv.get(a, c);
                        (!v.is_zero()).then(|| (c, v.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of `ad A` on the basis: column `a` holds the coordinates of `[A, x_a]`.
    pub fn ad_matrix(&self, a: &SuperMatrix) -> DenseMatrix<Q> {
        let d = self.len();
        let mut out = DenseMatrix::zeros(d, d);
        for (col, x) in self.basis.iter().enumerate() {
            for (row, v) in self.coords(&bracket(a, x)).expect("bracket is supertraceless") {
                out.set(row, col, v);
            }
        }
        out
    }

    /// Supertrace of an endomorphism of g written in the basis.
    pub fn str_on_g(&self, m: &DenseMatrix<Q>) -> Q {
        (0..self.len()).map(|a| sign_q(u32::from(self.parity[a])) * m.get(a, a)).sum()
    }

    /// The Casimir element `Σ_a x_a ⊗ y^a` as a four-slot tensor in `g ⊗ g`.
    pub fn casimir_tensor(&self) -> SuperTensor {
        let mut out = SuperTensor::zero(self.dim, SlotKind::pairs(2));
        for a in 0..self.len() {
            let left = self.basis[a].to_tensor();
            for (c, v) in &self.dual[a] {
                let right = self.basis[*c].to_tensor();
                out.add_scaled(&left.tensor(&right), v);
            }
        }
        out
    }
}

/// `Σ_a x_a ⊗ y^a` for sl(m|n).
pub fn casimir_tensor(m: usize, n: usize) -> Result<SuperTensor> {
    Ok(Slmn::new(m, n)?.casimir_tensor())
}
