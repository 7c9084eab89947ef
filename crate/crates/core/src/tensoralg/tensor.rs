use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, sign_q, Q};
use crate::superalgebra::SuperMatrix;
use crate::superspace::SuperDim;

/// A tensor factor: the natural module `V` or its dual `V*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SlotKind {
    #[serde(rename = "V")]
    V,
    #[serde(rename = "V*")]
    Dual,
}

impl SlotKind {
    /// `(V, V*)` repeated `k` times: the signature of `⊗^k (V ⊗ V*)`.
    pub fn pairs(k: usize) -> Vec<SlotKind> {
        (0..k).flat_map(|_| [SlotKind::V, SlotKind::Dual]).collect()
    }
}

/// Sparse tensor in a mixed power of `V` and `V*`.
///
/// The entry at multi-index `(i_1, ..., i_r)` is the coefficient of
/// `e_{i_1} ⊗ ... ⊗ e_{i_r}` (with `e^i` on dual slots). Each basis vector
/// carries the parity of its index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperTensor {
    dim: SuperDim,
    signature: Vec<SlotKind>,
    entries: BTreeMap<Vec<u8>, Q>,
}

impl SuperTensor {
    pub fn zero(dim: SuperDim, signature: Vec<SlotKind>) -> Self {
        SuperTensor { dim, signature, entries: BTreeMap::new() }
    }

    /// The Kronecker delta `Σ_i e_i ⊗ e^i` (the identity matrix).
    pub fn delta(dim: SuperDim) -> Self {
        SuperMatrix::identity(dim).to_tensor()
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn signature(&self) -> &[SlotKind] {
        &self.signature
    }

    pub fn slots(&self) -> usize {
        self.signature.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[u8]) -> Q {
        self.entries.get(idx).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], &Q)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Adds `v` at `idx`, dropping the entry if it cancels.
    pub fn add_at(&mut self, idx: &[u8], v: &Q) {
        if v.is_zero() {
            return;
        }
        debug_assert_eq!(idx.len(), self.signature.len());
        match self.entries.get_mut(idx) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    self.entries.remove(idx);
                }
            }
            None => {
                self.entries.insert(idx.to_vec(), v.clone());
            }
        }
    }

    fn add_owned(&mut self, idx: Vec<u8>, v: Q) {
        if v.is_zero() {
            return;
        }
        match self.entries.entry(idx) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }

    fn check_compatible(&self, other: &SuperTensor) {
        assert_eq!(self.dim, other.dim, "tensors over different superspaces");
        assert_eq!(self.signature, other.signature, "tensors with different signatures");
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &SuperTensor, c: &Q) {
        self.check_compatible(other);
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_at(k, &(v * c));
        }
    }

    pub fn scale(&self, c: &Q) -> SuperTensor {
        if c.is_zero() {
            return SuperTensor::zero(self.dim, self.signature.clone());
        }
        let entries = self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        SuperTensor { dim: self.dim, signature: self.signature.clone(), entries }
    }

    pub fn plus(&self, other: &SuperTensor) -> SuperTensor {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn minus(&self, other: &SuperTensor) -> SuperTensor {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// Outer product `self ⊗ other` (factors kept in order, so no sign).
    pub fn tensor(&self, other: &SuperTensor) -> SuperTensor {
        assert_eq!(self.dim, other.dim);
        let mut signature = self.signature.clone();
        signature.extend_from_slice(&other.signature);
        let mut out = SuperTensor::zero(self.dim, signature);
        for (a, x) in &self.entries {
            for (b, y) in &other.entries {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_owned(idx, x * y);
            }
        }
        out
    }

    /// Sum of index parities of a multi-index.
    pub fn index_parity(&self, idx: &[u8]) -> u8 {
        (idx.iter().map(|&i| u32::from(self.dim.parity(i as usize))).sum::<u32>() % 2) as u8
    }

    /// `Some(p)` if every nonzero entry has total parity `p` (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut seen = None;
        for k in self.entries.keys() {
            let p = self.index_parity(k);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Restriction to entries of total parity `p`.
    pub fn part(&self, p: u8) -> SuperTensor {
        let entries = self
            .entries
            .iter()
            .filter(|(k, _)| self.index_parity(k) == p)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        SuperTensor { dim: self.dim, signature: self.signature.clone(), entries }
    }

    /// Fixes the leading indices and returns the tensor on the remaining slots.
    pub fn slice_front(&self, prefix: &[u8]) -> SuperTensor {
        let mut out = SuperTensor::zero(self.dim, self.signature[prefix.len()..].to_vec());
        for (k, v) in &self.entries {
            if k.starts_with(prefix) {
                out.entries.insert(k[prefix.len()..].to_vec(), v.clone());
            }
        }
        out
    }

    /// Applies a linear map to a contiguous block of slots.
    ///
    /// `f` maps a tensor on slots `start..start+len` to a tensor with any
    /// signature; the map must be even, so no sign arises from the slots in
    /// front of the block.
    pub fn map_block<F>(&self, start: usize, len: usize, f: F) -> Result<SuperTensor>
    where
        F: Fn(&SuperTensor) -> Result<SuperTensor>,
    {
        let end = start + len;
        if end > self.slots() {
            return Err(Error::Signature(format!("block {start}..{end} out of range")));
        }
        let mut groups: BTreeMap<(Vec<u8>, Vec<u8>), SuperTensor> = BTreeMap::new();
        let block_sig = self.signature[start..end].to_vec();
        for (k, v) in &self.entries {
            let key = (k[..start].to_vec(), k[end..].to_vec());
            groups
                .entry(key)
                .or_insert_with(|| SuperTensor::zero(self.dim, block_sig.clone()))
                .entries
                .insert(k[start..end].to_vec(), v.clone());
        }
        let mut out: Option<SuperTensor> = None;
        for ((front, back), block) in groups {
            let image = f(&block)?;
            let sig: Vec<SlotKind> = self.signature[..start]
                .iter()
                .chain(image.signature.iter())
                .chain(self.signature[end..].iter())
                .copied()
                .collect();
            let acc = out.get_or_insert_with(|| SuperTensor::zero(self.dim, sig.clone()));
            if acc.signature != sig {
                return Err(Error::Signature("block map changed signature between slices".into()));
            }
            for (k, v) in image.entries {
                let mut idx = front.clone();
                idx.extend_from_slice(&k);
                idx.extend_from_slice(&back);
                acc.add_owned(idx, v);
            }
        }
        match out {
            Some(t) => Ok(t),
            None => {
                // zero input: run f on a zero block to learn the output signature
                let image = f(&SuperTensor::zero(self.dim, block_sig))?;
                let sig = self.signature[..start]
                    .iter()
                    .chain(image.signature.iter())
                    .chain(self.signature[end..].iter())
                    .copied()
                    .collect();
                Ok(SuperTensor::zero(self.dim, sig))
            }
        }
    }

    /// Whether every consecutive `(V, V*)` pair is supertraceless.
    pub fn pairs_in_g(&self) -> bool {
        self.signature.len().is_multiple_of(2)
            && (0..self.signature.len() / 2).all(|p| {
                contract_str(self, 2 * p, 2 * p + 1).map(|t| t.is_zero()).unwrap_or(false)
            })
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            m: self.dim.m,
            n: self.dim.n,
            signature: self.signature.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.iter().map(|&i| usize::from(i) + 1).collect(), fmt_q(v)))
                .collect(),
        }
    }

    pub fn from_json(j: &TensorJson) -> Result<SuperTensor> {
        let dim = SuperDim::new(j.m, j.n)?;
        let mut t = SuperTensor::zero(dim, j.signature.clone());
        for (idx, v) in &j.entries {
            if idx.len() != j.signature.len() || idx.iter().any(|&i| i == 0 || i > dim.total()) {
                return Err(Error::Parse(format!("bad multi-index {idx:?}")));
            }
            let k: Vec<u8> = idx.iter().map(|&i| (i - 1) as u8).collect();
            t.add_at(&k, &parse_q(v)?);
        }
        Ok(t)
    }
}

impl fmt::Debug for SuperTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperTensor{}{:?}{{", self.dim, self.signature)?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let idx: Vec<usize> = k.iter().map(|&x| usize::from(x) + 1).collect();
            write!(f, "{idx:?}: {}", fmt_q(v))?;
        }
        write!(f, "}}")
    }
}

/// JSON form: signature plus the nonzero entries with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub m: usize,
    pub n: usize,
    pub signature: Vec<SlotKind>,
    pub entries: Vec<(Vec<usize>, String)>,
}

/// A permutation of tensor slots: slot `s` of the result is slot `perm[s]` of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPermutation {
    perm: Vec<usize>,
}

impl SlotPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Permutation(format!("{perm:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(SlotPermutation { perm })
    }

    pub fn identity(k: usize) -> Self {
        SlotPermutation { perm: (0..k).collect() }
    }

    /// Exchanges two slots.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..k).collect();
        if a >= k || b >= k {
            return Err(Error::Permutation(format!("slot out of range for {k} slots")));
        }
        perm.swap(a, b);
        Ok(SlotPermutation { perm })
    }

    /// Exchanges the slot blocks `[0, k)` and `[k, 2k)` of a `2k`-slot tensor.
    pub fn swap_halves(k: usize) -> Self {
        SlotPermutation { perm: (k..2 * k).chain(0..k).collect() }
    }

    /// Reverses the order of consecutive slot pairs.
    pub fn reverse_pairs(pairs: usize) -> Self {
        SlotPermutation { perm: (0..pairs).rev().flat_map(|p| [2 * p, 2 * p + 1]).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (s, &p) in self.perm.iter().enumerate() {
            inv[p] = s;
        }
        SlotPermutation { perm: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SlotPermutation) -> Self {
        SlotPermutation { perm: self.perm.iter().map(|&s| other.perm[s]).collect() }
    }
}

/// Permutes slots with the Koszul sign: every pair of factors whose order is
/// reversed contributes `(-1)^{|x||y|}`.
pub fn permute_signed(t: &SuperTensor, p: &SlotPermutation) -> Result<SuperTensor> {
    let k = t.slots();
    if p.len() != k {
        return Err(Error::Permutation(format!("permutation of {} slots for a {k}-slot tensor", p.len())));
    }
    let perm = p.as_slice();
    let signature = perm.iter().map(|&s| t.signature[s]).collect();
    let mut out = SuperTensor::zero(t.dim, signature);
    for (idx, v) in &t.entries {
        let par: Vec<u8> = idx.iter().map(|&i| t.dim.parity(i as usize)).collect();
        let mut flips = 0u32;
        for a in 0..k {
            for b in a + 1..k {
                if perm[a] > perm[b] {
                    flips += u32::from(par[perm[a]] * par[perm[b]]);
                }
            }
        }
        let new_idx: Vec<u8> = perm.iter().map(|&s| idx[s]).collect();
        let val = if flips.is_multiple_of(2) { v.clone() } else { -v };
        out.add_owned(new_idx, val);
    }
    Ok(out)
}

/// Partial supertrace over slots `i` and `j` (0-based, one `V` and one `V*`).
///
/// The later slot is first moved next to the earlier one with Koszul signs;
/// then an adjacent `V ⊗ V*` pair evaluates as `e_a ⊗ e^b ↦ (-1)^{|a|} δ_ab`
/// and an adjacent `V* ⊗ V` pair as `e^a ⊗ e_b ↦ δ_ab`.
pub fn contract_str(t: &SuperTensor, i: usize, j: usize) -> Result<SuperTensor> {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let k = t.slots();
    if j >= k || i == j {
        return Err(Error::Signature(format!("cannot contract slots {i},{j} of a {k}-slot tensor")));
    }
    if t.signature[i] == t.signature[j] {
        return Err(Error::Signature(format!(
            "contraction needs one V and one V* slot, got {:?} and {:?}",
            t.signature[i], t.signature[j]
        )));
    }
    let first_is_v = t.signature[i] == SlotKind::V;
    let signature: Vec<SlotKind> = (0..k).filter(|&s| s != i && s != j).map(|s| t.signature[s]).collect();
    let mut out = SuperTensor::zero(t.dim, signature);
    for (idx, v) in &t.entries {
        if idx[i] != idx[j] {
            continue;
        }
        let pj = u32::from(t.dim.parity(idx[j] as usize));
        let between: u32 = idx[i + 1..j].iter().map(|&x| u32::from(t.dim.parity(x as usize))).sum();
        let mut e = pj * between;
        if first_is_v {
            e += pj;
        }
        let rest: Vec<u8> = (0..k).filter(|&s| s != i && s != j).map(|s| idx[s]).collect();
        out.add_owned(rest, sign_q(e) * v);
    }
    Ok(out)
}

/// `𝒦 = 2(m-n) str_{1,4} ∘ str_{2,3}` on `V ⊗ V* ⊗ V ⊗ V*`.
pub fn kappa(t: &SuperTensor) -> Result<Q> {
    if t.signature != SlotKind::pairs(2) {
        return Err(Error::Signature(format!("𝒦 needs (V, V*, V, V*), got {:?}", t.signature)));
    }
    let inner = contract_str(t, 1, 2)?;
    let scalar = contract_str(&inner, 0, 1)?;
    Ok(scalar.get(&[]) * Q::from_integer((2 * t.dim.diff()).into()))
}

/// Super-symmetrization across the two halves: `(T + swap T) / 2`.
pub fn symmetrize_pairs(t: &SuperTensor) -> Result<SuperTensor> {
    let k = t.slots();
    if !k.is_multiple_of(2) {
        return Err(Error::Signature("odd number of slots".into()));
    }
    let sw = permute_signed(t, &SlotPermutation::swap_halves(k / 2))?;
    Ok(t.plus(&sw).scale(&q(1, 2)))
}

/// Super-antisymmetrization across the two halves: `(T - swap T) / 2`.
pub fn antisymmetrize_pairs(t: &SuperTensor) -> Result<SuperTensor> {
    let k = t.slots();
    if !k.is_multiple_of(2) {
        return Err(Error::Signature("odd number of slots".into()));
    }
    let sw = permute_signed(t, &SlotPermutation::swap_halves(k / 2))?;
    Ok(t.minus(&sw).scale(&q(1, 2)))
}

/// Action of a supermatrix on a mixed tensor power: the Leibniz rule with
/// the Koszul sign `(-1)^{|X| (parities of earlier slots)}`.
///
/// On `V` the action is `e_i ↦ Σ_k X_ki e_k`; on `V*` it is
/// `e^j ↦ -(-1)^{|X||j|} Σ_k X_jk e^k`. On `V ⊗ V*` this is the adjoint action.
pub fn act(x: &SuperMatrix, t: &SuperTensor) -> SuperTensor {
    let dim = t.dim;
    let nt = dim.total();
    let mut out = SuperTensor::zero(dim, t.signature.clone());
    for px in 0..2u8 {
        let xp = x.part(px);
        if xp.is_zero() {
            continue;
        }
        // by_col[i] = [(k, X_ki)], by_row[j] = [(k, X_jk)]
        let mut by_col: Vec<Vec<(u8, Q)>> = vec![Vec::new(); nt];
        let mut by_row: Vec<Vec<(u8, Q)>> = vec![Vec::new(); nt];
        for (r, c, v) in xp.nonzero() {
            by_col[c].push((r as u8, v.clone()));
            by_row[r].push((c as u8, v.clone()));
        }
        for (idx, v) in &t.entries {
            let mut prefix = 0u32;
            for s in 0..idx.len() {
                let i = idx[s] as usize;
                let base = sign_q(u32::from(px) * prefix) * v;
                match t.signature[s] {
                    SlotKind::V => {
                        for (k, c) in &by_col[i] {
                            let mut ni = idx.clone();
                            ni[s] = *k;
                            out.add_owned(ni, &base * c);
                        }
                    }
                    SlotKind::Dual => {
                        let s2 = -sign_q(u32::from(px * dim.parity(i)));
                        for (k, c) in &by_row[i] {
                            let mut ni = idx.clone();
                            ni[s] = *k;
                            out.add_owned(ni, &base * c * &s2);
                        }
                    }
                }
                prefix += u32::from(dim.parity(i));
            }
        }
    }
    out
}
