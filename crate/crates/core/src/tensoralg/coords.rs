//! Coordinates of tensors in `⊗^k g` with respect to the sl(m|n) basis.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::tensor::{SlotKind, SuperTensor};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::superalgebra::Slmn;

/// Sparse coordinates: basis-index tuple `(a_1, ..., a_k)` ↦ coefficient of `x_{a_1} ⊗ ... ⊗ x_{a_k}`.
pub type GCoords = BTreeMap<Vec<u16>, Q>;

/// Coordinates of a single `(V, V*)` entry `E_ij`, cached per algebra.
pub fn g_pair_coords(alg: &Slmn) -> Vec<Vec<(u16, Q)>> {
    let t = alg.total();
    (0..t * t)
        .map(|k| alg.entry_coords(k / t, k % t).into_iter().map(|(a, c)| (a as u16, c)).collect())
        .collect()
}

/// Expands a tensor whose consecutive slot pairs all lie in g.
pub fn to_g_coords(alg: &Slmn, t: &SuperTensor) -> Result<GCoords> {
    let k2 = t.slots();
    if !k2.is_multiple_of(2) || t.signature() != SlotKind::pairs(k2 / 2).as_slice() {
        return Err(Error::Signature(format!("expected (V, V*)^k, got {:?}", t.signature())));
    }
    if !t.pairs_in_g() {
        let bad = (0..k2 / 2)
            .find(|&p| !super::contract_str(t, 2 * p, 2 * p + 1).map(|c| c.is_zero()).unwrap_or(false))
            .unwrap_or(0);
        return Err(Error::NotTraceless(2 * bad + 1, 2 * bad + 2));
    }
    let table = g_pair_coords(alg);
    let n = alg.total();
    let mut out = GCoords::new();
    for (idx, v) in t.iter() {
        let mut partial: Vec<(Vec<u16>, Q)> = vec![(Vec::with_capacity(k2 / 2), v.clone())];
        for p in 0..k2 / 2 {
            let cell = &table[idx[2 * p] as usize * n + idx[2 * p + 1] as usize];
            let mut next = Vec::with_capacity(partial.len() * cell.len());
            for (key, c) in &partial {
                for (a, w) in cell {
                    let mut k = key.clone();
                    k.push(*a);
                    next.push((k, c * w));
                }
            }
            partial = next;
        }
        for (k, c) in partial {
            let e = out.entry(k).or_insert_with(Q::zero);
            *e += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Rebuilds the tensor in `⊗^k g` from basis coordinates.
pub fn from_g_coords(alg: &Slmn, k: usize, coords: &GCoords) -> SuperTensor {
    let mut out = SuperTensor::zero(alg.dim, SlotKind::pairs(k));
    let mats: Vec<Vec<(u8, u8, Q)>> = alg
        .basis
        .iter()
        .map(|b| b.nonzero().map(|(i, j, v)| (i as u8, j as u8, v.clone())).collect())
        .collect();
    for (key, v) in coords {
        debug_assert_eq!(key.len(), k);
        let mut partial: Vec<(Vec<u8>, Q)> = vec![(Vec::with_capacity(2 * k), v.clone())];
        for &a in key {
            let mut next = Vec::new();
            for (idx, c) in &partial {
                for (i, j, w) in &mats[a as usize] {
                    let mut ni = idx.clone();
                    ni.push(*i);
                    ni.push(*j);
                    next.push((ni, c * w));
                }
            }
            partial = next;
        }
        for (idx, c) in partial {
            out.add_at(&idx, &c);
        }
    }
    out
}
