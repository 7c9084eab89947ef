//! Dense Gaussian elimination over exact fields.
//!
//! The same elimination code runs over the rationals and over word-sized
//! prime fields. Pivoting is deterministic (first nonzero entry in column
//! order), and row updates below a pivot are split across rayon workers, so
//! results do not depend on the number of threads.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::rational::Q;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; only called on nonzero elements.
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Element of the prime field `Z/PZ`, `P < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp<const P: u64>(pub u64);

/// Primes used for multi-modular rank computations.
pub const P0: u64 = 2_147_483_647;
pub const P1: u64 = 2_147_483_629;
pub const P2: u64 = 2_147_483_587;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    /// Reduction of a rational; `None` if `P` divides the denominator.
    pub fn from_q(x: &Q) -> Option<Self> {
        let den = Self::from_bigint(x.denom());
        if den.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(x.numer()).mul(&den.inv()))
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        self.pow(P - 2)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<F> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols, "ragged rows");
        DenseMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> DenseMatrix<G> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &DenseMatrix<F>) -> DenseMatrix<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_in_place<F: Field>(m: &mut DenseMatrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv();
        for j in c..cols {
            let v = m.get(r, j).mul(&inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<F> = m.row(r)[c..].to_vec();
        m.data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| {
            if i == r || row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        });
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &DenseMatrix<F>) -> usize {
    let mut work = m.clone();
    rref_in_place(&mut work).len()
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn kernel<F: Field>(m: &DenseMatrix<F>) -> Vec<Vec<F>> {
    let mut work = m.clone();
    let pivots = rref_in_place(&mut work);
    let cols = m.cols;
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = work.get(r, free).neg();
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix, if it exists.
pub fn invert<F: Field>(m: &DenseMatrix<F>) -> Option<DenseMatrix<F>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = m.hstack(&DenseMatrix::identity(n));
    let pivots = rref_in_place(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

/// Reduction of a rational matrix modulo `P`; `None` if a denominator vanishes.
pub fn reduce_mod<const P: u64>(m: &DenseMatrix<Q>) -> Option<DenseMatrix<Fp<P>>> {
    let data: Option<Vec<Fp<P>>> = m.data.iter().map(Fp::<P>::from_q).collect();
    Some(DenseMatrix { rows: m.rows, cols: m.cols, data: data? })
}

/// Lower bound for the rank over Q from three prime fields; ranks that
/// disagree are returned as-is so callers can report them.
pub fn multimodular_rank(m: &DenseMatrix<Q>) -> [Option<usize>; 3] {
    [
        reduce_mod::<P0>(m).map(|x| rank(&x)),
        reduce_mod::<P1>(m).map(|x| rank(&x)),
        reduce_mod::<P2>(m).map(|x| rank(&x)),
    ]
}

/// Incrementally maintained row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the basis; returns the residual.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(v.len(), self.dim);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current basis.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: Vec<F>) -> bool {
        self.reduce(v).iter().all(Field::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn is_prime(p: u64) -> bool {
        p > 1 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    #[test]
    fn moduli_are_prime() {
        assert!(is_prime(P0) && is_prime(P1) && is_prime(P2));
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = DenseMatrix::from_rows(vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(1), qi(0), qi(1)],
        ]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        let v = DenseMatrix::from_rows(k.iter().map(|v| vec![v[0].clone()]).collect());
        let col = DenseMatrix::from_rows(k[0].iter().map(|x| vec![x.clone()]).collect());
        assert!(m.mul(&col).is_zero());
        assert_eq!(v.rows(), 1);
    }

    #[test]
    fn inverse_and_singular() {
        let m = DenseMatrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), qi(1)]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(2));
        let s = DenseMatrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert!(invert(&s).is_none());
    }

    #[test]
    fn modular_reduction() {
        assert_eq!(Fp::<7>::from_q(&q(1, 2)), Some(Fp(4)));
        assert_eq!(Fp::<7>::from_q(&q(1, 7)), None);
        assert_eq!(Fp::<7>::from_q(&q(-3, 1)), Some(Fp(4)));
    }

    proptest! {
        #[test]
        fn modular_rank_bounds_rational_rank(entries in proptest::collection::vec(-3i64..=3, 20)) {
            let m = DenseMatrix::from_rows(entries.chunks(5).map(|r| r.iter().map(|&x| qi(x)).collect()).collect());
            let r = rank(&m);
            for rp in multimodular_rank(&m).into_iter().flatten() {
                prop_assert!(rp <= r);
            }
            let k = kernel(&m);
            prop_assert_eq!(k.len() + r, 5);
        }

        #[test]
        fn echelon_basis_matches_rank(entries in proptest::collection::vec(-2i64..=2, 24)) {
            let rows: Vec<Vec<Q>> = entries.chunks(6).map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
            let mut b = EchelonBasis::new(6);
            for r in &rows {
                b.insert(r.clone());
            }
            prop_assert_eq!(b.len(), rank(&DenseMatrix::from_rows(rows.clone())));
            for r in rows {
                prop_assert!(b.contains(r));
            }
        }
    }
}
