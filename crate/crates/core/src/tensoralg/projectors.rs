//! The projectors that split `g ⊗ g`: φ, ψ, χ = φ∘str₂₃ and the four-part
//! decomposition of the symmetric square.

use num_traits::{One, Zero};

use super::tensor::{contract_str, kappa, permute_signed, symmetrize_pairs, SlotKind, SlotPermutation, SuperTensor};
use crate::error::{Error, Result};
use crate::rational::{q, qi, sign_q, Q};
use crate::superalgebra::SuperMatrix;
use crate::superspace::SuperDim;

/// The constants `a`, `c₁`, `c₂` of φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiConstants {
    pub a: Q,
    pub c1: Q,
    pub c2: Q,
}

impl PhiConstants {
    /// `a = d/(d²-4)`, `c₁ = (d²+2)/(d(1-d²))`, `c₂ = 3/(d²-1)` with `d = m-n`.
    pub fn for_dim(dim: SuperDim) -> Result<Self> {
        dim.require_wide()?;
        let d = qi(dim.diff());
        let d2 = &d * &d;
        Ok(PhiConstants {
            a: &d / (&d2 - qi(4)),
            c1: (&d2 + qi(2)) / (&d * (Q::one() - &d2)),
            c2: qi(3) / (&d2 - Q::one()),
        })
    }

    /// Residuals of the three linear conditions; all zero iff φ has the required properties.
    ///
    /// In order: `str₁₂ φ = 0` gives `c₁ + d c₂ - 2/d`, and `str₂₃ φ = id`
    /// gives `a(d - 4/d) - 1` and `1 + d c₁ + c₂`.
    pub fn residuals(&self, dim: SuperDim) -> [Q; 3] {
        let d = qi(dim.diff());
        [
            &self.c1 + &d * &self.c2 - qi(2) / &d,
            &self.a * (&d - qi(4) / &d) - Q::one(),
            Q::one() + &d * &self.c1 + &self.c2,
        ]
    }
}

fn require_matrix(b: &SuperTensor) -> Result<()> {
    if b.signature() != [SlotKind::V, SlotKind::Dual] {
        return Err(Error::Signature(format!("expected (V, V*), got {:?}", b.signature())));
    }
    Ok(())
}

fn str_scalar(b: &SuperTensor) -> Q {
    let dim = b.dim();
    b.iter()
        .filter(|(k, _)| k[0] == k[1])
        .map(|(k, v)| sign_q(u32::from(dim.parity(k[0] as usize))) * v)
        .sum()
}

/// The two "crossed" terms shared by φ and ψ:
/// `x (-1)^{|k|} B^i_l δ^k_j + y (-1)^{(|i|+|j|)(|k|+|l|)+|i|} B^k_j δ^i_l`.
fn crossed_terms(b: &SuperTensor, x: &Q, y: &Q, out: &mut SuperTensor) {
    let dim = b.dim();
    let t = dim.total() as u8;
    let p = |i: u8| u32::from(dim.parity(i as usize));
    for (idx, v) in b.iter() {
        let (r, c) = (idx[0], idx[1]);
        for s in 0..t {
            // B^i_l δ^k_j with (i, l) = (r, c) and j = k = s
            out.add_at(&[r, s, s, c], &(sign_q(p(s)) * v * x));
            // B^k_j δ^i_l with (k, j) = (r, c) and i = l = s
            let e = (p(s) + p(c)) * (p(r) + p(s)) + p(s);
            out.add_at(&[s, c, r, s], &(sign_q(e) * v * y));
        }
    }
}

/// φ with explicit constants; [`phi`] uses the canonical ones.
pub fn phi_with(b: &SuperTensor, k: &PhiConstants) -> Result<SuperTensor> {
    require_matrix(b)?;
    let dim = b.dim();
    let t = dim.total() as u8;
    let d = qi(dim.diff());
    let mut out = SuperTensor::zero(dim, SlotKind::pairs(2));
    crossed_terms(b, &k.a, &k.a, &mut out);
    let w = -qi(2) * &k.a / &d;
    for (idx, v) in b.iter() {
        let (r, c) = (idx[0], idx[1]);
        for s in 0..t {
            // B^i_j δ^k_l and B^k_l δ^i_j (the sign is trivial when i = j)
            out.add_at(&[r, c, s, s], &(v * &w));
            out.add_at(&[s, s, r, c], &(v * &w));
        }
    }
    let st = str_scalar(b);
    if !st.is_zero() {
        let x1 = &k.a * &k.c1 * &st;
        let x2 = &k.a * &k.c2 * &st;
        for i in 0..t {
            for s in 0..t {
                out.add_at(&[i, s, s, i], &(sign_q(u32::from(dim.parity(s as usize))) * &x1));
                out.add_at(&[i, i, s, s], &x2);
            }
        }
    }
    Ok(out)
}

/// The morphism `φ: V ⊗ V* → g ⊙ g` with `str₂₃ ∘ φ = id`. Needs `|m-n| > 2`.
pub fn phi(b: &SuperTensor) -> Result<SuperTensor> {
    phi_with(b, &PhiConstants::for_dim(b.dim())?)
}

/// `φ(δ)` from its closed form `((d²-1)⁻¹)((-1)^{|k|} d δ^i_l δ^k_j - δ^i_j δ^k_l)`
/// at slot order `(i, j, k, l)`.
pub fn phi_delta_closed_form(dim: SuperDim) -> Result<SuperTensor> {
    dim.require_wide()?;
    let t = dim.total() as u8;
    let d = qi(dim.diff());
    let s = Q::one() / (&d * &d - Q::one());
    let mut out = SuperTensor::zero(dim, SlotKind::pairs(2));
    for i in 0..t {
        for k in 0..t {
            out.add_at(&[i, k, k, i], &(sign_q(u32::from(dim.parity(k as usize))) * &d * &s));
            out.add_at(&[i, i, k, k], &-&s);
        }
    }
    Ok(out)
}

/// The morphism `ψ: g → g ∧ g` with `str₂₃ ∘ ψ = id`.
pub fn psi(b: &SuperTensor) -> Result<SuperTensor> {
    require_matrix(b)?;
    if !str_scalar(b).is_zero() {
        return Err(Error::NotTraceless(0, 1));
    }
    let dim = b.dim();
    let inv = Q::one() / qi(dim.diff());
    let mut out = SuperTensor::zero(dim, SlotKind::pairs(2));
    crossed_terms(b, &inv, &-&inv, &mut out);
    Ok(out)
}

/// Whether `a` lies in `g ⊙ g`: both pairs supertraceless and invariant under the pair swap.
pub fn is_g_sym(a: &SuperTensor) -> bool {
    if a.signature() != SlotKind::pairs(2).as_slice() || !a.pairs_in_g() {
        return false;
    }
    permute_signed(a, &SlotPermutation::swap_halves(2)).map(|s| &s == a).unwrap_or(false)
}

fn require_g_sym(a: &SuperTensor) -> Result<()> {
    if a.signature() != SlotKind::pairs(2).as_slice() {
        return Err(Error::Signature(format!("expected (V, V*, V, V*), got {:?}", a.signature())));
    }
    for p in 0..2 {
        if !contract_str(a, 2 * p, 2 * p + 1)?.is_zero() {
            return Err(Error::NotTraceless(2 * p + 1, 2 * p + 2));
        }
    }
    if permute_signed(a, &SlotPermutation::swap_halves(2))? != *a {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// `χ = φ ∘ str₂₃` on `g ⊙ g`.
pub fn chi(a: &SuperTensor) -> Result<SuperTensor> {
    require_g_sym(a)?;
    phi(&contract_str(a, 1, 2)?)
}

/// Super-symmetrization in the two upper (`V`) indices.
pub fn sym_upper(a: &SuperTensor) -> Result<SuperTensor> {
    let p = permute_signed(a, &SlotPermutation::new(vec![2, 1, 0, 3])?)?;
    Ok(a.plus(&p).scale(&q(1, 2)))
}

/// Super-antisymmetrization in the two upper (`V`) indices.
pub fn antisym_upper(a: &SuperTensor) -> Result<SuperTensor> {
    let p = permute_signed(a, &SlotPermutation::new(vec![2, 1, 0, 3])?)?;
    Ok(a.minus(&p).scale(&q(1, 2)))
}

/// The four summands of a tensor in `g ⊙ g`, in the order of the symmetric
/// square: Cartan part, the other traceless part, the adjoint part and the trivial part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymParts {
    pub b: SuperTensor,
    pub c: SuperTensor,
    pub d: SuperTensor,
    pub e: SuperTensor,
}

impl SymParts {
    pub fn sum(&self) -> SuperTensor {
        self.b.plus(&self.c).plus(&self.d).plus(&self.e)
    }
}

fn decompose_unchecked(a: &SuperTensor) -> Result<SymParts> {
    let dim = a.dim();
    let chi_a = phi(&contract_str(a, 1, 2)?)?;
    let rest = a.minus(&chi_a);
    let b = sym_upper(&rest)?;
    let c = rest.minus(&b);
    let d = qi(dim.diff());
    let scale = kappa(a)? / (qi(2) * &d * &d);
    let e = phi(&SuperTensor::delta(dim))?.scale(&scale);
    let dpart = chi_a.minus(&e);
    Ok(SymParts { b, c, d: dpart, e })
}

/// Splits `A ∈ g ⊙ g` as `A = B + C + D + E`.
pub fn decompose_sym(a: &SuperTensor) -> Result<SymParts> {
    a.dim().require_wide()?;
    require_g_sym(a)?;
    decompose_unchecked(a)
}

/// Component of a tensor in `g ⊗ g` along the Cartan summand.
pub fn cartan_part(t: &SuperTensor) -> Result<SuperTensor> {
    if t.signature() != SlotKind::pairs(2).as_slice() {
        return Err(Error::Signature(format!("expected (V, V*, V, V*), got {:?}", t.signature())));
    }
    t.dim().require_wide()?;
    Ok(decompose_unchecked(&symmetrize_pairs(t)?)?.b)
}

/// The Cartan product `X ⊚ Y`.
pub fn cartan_product(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperTensor> {
    for (i, z) in [x, y].into_iter().enumerate() {
        if !crate::superalgebra::supertrace(z).is_zero() {
            return Err(Error::NotTraceless(2 * i + 1, 2 * i + 2));
        }
    }
    cartan_part(&x.to_tensor().tensor(&y.to_tensor()))
}

/// `T` minus its Cartan component: the projection onto the complement `I₂`.
pub fn project_offcartan(t: &SuperTensor) -> Result<SuperTensor> {
    Ok(t.minus(&cartan_part(t)?))
}

/// The bracket as a map `g ⊗ g → g`: `X ⊗ Y ↦ [X, Y]`, i.e. `str₂₃(T - swap T)`.
pub fn bracket_map(t: &SuperTensor) -> Result<SuperTensor> {
    if t.signature() != SlotKind::pairs(2).as_slice() {
        return Err(Error::Signature(format!("expected (V, V*, V, V*), got {:?}", t.signature())));
    }
    let sw = permute_signed(t, &SlotPermutation::swap_halves(2))?;
    contract_str(&t.minus(&sw), 1, 2)
}
