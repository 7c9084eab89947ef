//! Weight spaces and highest weight vectors in tensor powers of the adjoint
//! representation.
//!
//! Everything runs in basis coordinates of `⊗^k g`: a vector is a sparse map
//! from index tuples `(a_1, ..., a_k)` to rationals. Highest weight vectors
//! are kernels of the simple raising operators on a single weight space.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel, multimodular_rank, rank, DenseMatrix};
use crate::rational::{fmt_q, qi, sign_q, Q};
use crate::superalgebra::{Slmn, SuperMatrix};
use crate::superspace::{casimir_eigenvalue, is_dominant_regular, lambda_k, SuperDim, Weight};
use crate::tensoralg::{act, cartan_part, from_g_coords, to_g_coords, GCoords, SuperTensor};

/// Action of a supermatrix on any mixed tensor (the adjoint action on `⊗^k g`).
pub fn adjoint_act(z: &SuperMatrix, t: &SuperTensor) -> SuperTensor {
    act(z, t)
}

/// Action of basis element `z` on one basis tuple, with the Koszul sign for
/// passing `x_z` over the earlier factors.
pub fn act_on_tuple(alg: &Slmn, z: usize, key: &[u16]) -> Vec<(Vec<u16>, Q)> {
    let mut out = Vec::new();
    let pz = u32::from(alg.parity[z]);
    let mut prefix = 0u32;
    for p in 0..key.len() {
        let a = key[p] as usize;
        let s = sign_q(pz * prefix);
        for (c, v) in alg.ad_coords(z, a) {
            let mut nk = key.to_vec();
            nk[p] = *c as u16;
            out.push((nk, &s * v));
        }
        prefix += u32::from(alg.parity[a]);
    }
    out
}

/// Action of basis element `z` on a coordinate vector.
pub fn act_coords(alg: &Slmn, z: usize, v: &GCoords) -> GCoords {
    let mut out = GCoords::new();
    for (key, c) in v {
        for (nk, w) in act_on_tuple(alg, z, key) {
            *out.entry(nk).or_insert_with(Q::zero) += c * w;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

fn add_into(acc: &mut GCoords, v: &GCoords, c: &Q) {
    for (k, x) in v {
        *acc.entry(k.clone()).or_insert_with(Q::zero) += x * c;
    }
    acc.retain(|_, x| !x.is_zero());
}

/// Casimir action `Σ_a x_a y^a` on a coordinate vector of `⊗^k g`.
pub fn casimir_apply_coords(alg: &Slmn, v: &GCoords) -> GCoords {
    let parts: Vec<GCoords> = (0..alg.len())
        .into_par_iter()
        .map(|a| {
            let mut inner = GCoords::new();
            for (c, w) in alg.dual_coords(a) {
                add_into(&mut inner, &act_coords(alg, *c, v), w);
            }
            act_coords(alg, a, &inner)
        })
        .collect();
    let mut out = GCoords::new();
    for p in &parts {
        add_into(&mut out, p, &Q::one());
    }
    out
}

/// Casimir action on a tensor in `⊗^k g`.
pub fn casimir_apply(alg: &Slmn, t: &SuperTensor) -> Result<SuperTensor> {
    let k = t.slots() / 2;
    Ok(from_g_coords(alg, k, &casimir_apply_coords(alg, &to_g_coords(alg, t)?)))
}

/// Integer weight of a basis tuple.
pub fn tuple_weight(alg: &Slmn, key: &[u16]) -> Vec<i64> {
    let mut w = vec![0i64; alg.total()];
    for &a in key {
        for (x, y) in w.iter_mut().zip(&alg.weights[a as usize]) {
            *x += y;
        }
    }
    w
}

fn all_tuples(d: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d as u16).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Basis tuples of `⊗^k g` grouped by weight.
pub fn weight_spaces(alg: &Slmn, k: usize) -> BTreeMap<Vec<i64>, Vec<Vec<u16>>> {
    let mut out: BTreeMap<Vec<i64>, Vec<Vec<u16>>> = BTreeMap::new();
    for key in all_tuples(alg.len(), k) {
        out.entry(tuple_weight(alg, &key)).or_default().push(key);
    }
    out
}

/// Basis indices of the simple raising root vectors `E_{i,i+1}`.
pub fn simple_raising(alg: &Slmn) -> Vec<usize> {
    (0..alg.total() - 1).map(|i| alg.root_index(i, i + 1).unwrap()).collect()
}

/// Basis indices of all positive root vectors `E_ij`, `i < j`.
pub fn all_raising(alg: &Slmn) -> Vec<usize> {
    let t = alg.total();
    (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).map(|(i, j)| alg.root_index(i, j).unwrap()).collect()
}

/// A linearly independent family of vectors in `⊗^k g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub k: usize,
    pub vectors: Vec<GCoords>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn tensors(&self, alg: &Slmn) -> Vec<SuperTensor> {
        self.vectors.iter().map(|v| from_g_coords(alg, self.k, v)).collect()
    }
}

/// Kernel of the given raising operators on a list of vectors spanning part of one weight space.
fn raising_kernel(alg: &Slmn, raising: &[usize], vectors: &[GCoords]) -> Vec<Vec<Q>> {
    let mut rows: HashMap<(usize, Vec<u16>), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    for (col, v) in vectors.iter().enumerate() {
        for (ri, &z) in raising.iter().enumerate() {
            for (key, c) in act_coords(alg, z, v) {
                let n = rows.len();
                let r = *rows.entry((ri, key)).or_insert(n);
                entries.push((r, col, c));
            }
        }
    }
    let mut m: DenseMatrix<Q> = DenseMatrix::zeros(rows.len().max(1), vectors.len());
    for (r, c, v) in entries {
        let x = m.get(r, c).clone() + v;
        m.set(r, c, x);
    }
    kernel(&m)
}

fn combine(vectors: &[GCoords], coeffs: &[Q]) -> GCoords {
    let mut out = GCoords::new();
    for (v, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            add_into(&mut out, v, c);
        }
    }
    out
}

fn unit_vectors(keys: &[Vec<u16>]) -> Vec<GCoords> {
    keys.iter().map(|k| GCoords::from([(k.clone(), Q::one())])).collect()
}

/// Highest weight vectors of weight `λ` in `⊗^k g`, using only the simple raising operators.
pub fn highest_weight_vectors(alg: &Slmn, k: usize, lambda: &Weight) -> Result<SubspaceBasis> {
    hwv_with(alg, k, lambda, &simple_raising(alg))
}

/// Same as [`highest_weight_vectors`] but with the whole positive nilradical.
pub fn highest_weight_vectors_full(alg: &Slmn, k: usize, lambda: &Weight) -> Result<SubspaceBasis> {
    hwv_with(alg, k, lambda, &all_raising(alg))
}

fn hwv_with(alg: &Slmn, k: usize, lambda: &Weight, raising: &[usize]) -> Result<SubspaceBasis> {
    let target = lambda
        .to_ints()
        .ok_or_else(|| Error::NonIntegral { root: "-".into(), value: lambda.to_string() })?;
    let keys: Vec<Vec<u16>> =
        all_tuples(alg.len(), k).into_iter().filter(|key| tuple_weight(alg, key) == target).collect();
    Ok(hwv_on_keys(alg, k, &keys, raising))
}

fn hwv_on_keys(alg: &Slmn, k: usize, keys: &[Vec<u16>], raising: &[usize]) -> SubspaceBasis {
    if keys.is_empty() {
        return SubspaceBasis { k, vectors: Vec::new() };
    }
    let units = unit_vectors(keys);
    let vectors = raising_kernel(alg, raising, &units).iter().map(|c| combine(&units, c)).collect();
    SubspaceBasis { k, vectors }
}

/// The super swap `x_a ⊗ x_b ↦ (-1)^{|a||b|} x_b ⊗ x_a` on `g ⊗ g`.
pub fn swap_coords(alg: &Slmn, v: &GCoords) -> GCoords {
    let mut out = GCoords::new();
    for (key, c) in v {
        let s = sign_q(u32::from(alg.parity[key[0] as usize] * alg.parity[key[1] as usize]));
        out.insert(vec![key[1], key[0]], c * s);
    }
    out
}

fn span_rank(vectors: &[GCoords]) -> usize {
    let mut index: BTreeMap<&Vec<u16>, usize> = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            let n = index.len();
            index.entry(k).or_insert(n);
        }
    }
    if vectors.is_empty() || index.is_empty() {
        return 0;
    }
    let mut m = DenseMatrix::zeros(vectors.len(), index.len());
    for (r, v) in vectors.iter().enumerate() {
        for (k, c) in v {
            m.set(r, index[k], c.clone());
        }
    }
    rank(&m)
}

/// Dimensions of the symmetric and antisymmetric parts of a swap-stable subspace of `g ⊗ g`.
pub fn split_by_swap(alg: &Slmn, basis: &SubspaceBasis) -> (usize, usize) {
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    for v in &basis.vectors {
        let s = swap_coords(alg, v);
        let mut plus = v.clone();
        add_into(&mut plus, &s, &Q::one());
        let mut minus = v.clone();
        add_into(&mut minus, &s, &-Q::one());
        sym.push(plus);
        anti.push(minus);
    }
    (span_rank(&sym), span_rank(&anti))
}

/// Highest weight lines found at one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwvLine {
    pub weight: Vec<String>,
    pub label: String,
    pub weight_space_dim: usize,
    pub hwv_dim: usize,
    pub symmetric: usize,
    pub antisymmetric: usize,
    pub dominant_regular: bool,
}

/// Expected multiplicities at a weight next to what the solver found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedLine {
    pub label: String,
    pub weight: Vec<String>,
    pub expected_symmetric: usize,
    pub expected_antisymmetric: usize,
    pub found_symmetric: usize,
    pub found_antisymmetric: usize,
}

/// A weight that the Casimir bound rules out, and the number of highest weight vectors found there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedLine {
    pub label: String,
    pub weight: Vec<String>,
    pub found: usize,
    /// Set when the weight coincides with an allowed one for this `n` and is therefore not checked.
    pub coincides_with: Option<String>,
}

/// Result of decomposing `g ⊗ g` by highest weight vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpaceReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub total_dim: usize,
    pub weight_space_dim_sum: usize,
    pub weight_count: usize,
    /// Every weight carrying at least one highest weight vector.
    pub hwv: Vec<HwvLine>,
    pub expected: Vec<ExpectedLine>,
    pub excluded: Vec<ExcludedLine>,
    /// Whether the found lines are exactly the expected ones, nothing else, and nothing at excluded weights.
    pub matches: bool,
}

/// Weight builder from `(coordinate, coefficient)` pairs; ε_i is coordinate `i-1`, δ_j is `m+j-1`.
struct Labels {
    dim: SuperDim,
}

impl Labels {
    fn eps(&self, i: usize) -> usize {
        if self.dim.m == 1 && i == 2 {
            return self.del(1);
        }
        i - 1
    }

    fn del(&self, j: usize) -> usize {
        if j == 0 {
            // δ_{n-1} with n = 1 becomes ε_m
            return self.dim.m - 1;
        }
        self.dim.m + j - 1
    }

    fn weight(&self, terms: &[(usize, i64)]) -> Weight {
        let mut c = vec![0i64; self.dim.total()];
        for &(i, v) in terms {
            c[i] += v;
        }
        Weight::from_ints(self.dim, &c).expect("labels sum to zero")
    }
}

/// The seven highest weights of `g ⊗ g` as `(label, weight, symmetric, antisymmetric)` counts.
pub fn tensor_square_expected(dim: SuperDim) -> Vec<(String, Weight, usize, usize)> {
    let l = Labels { dim };
    let n = dim.n;
    let e1 = l.eps(1);
    let e2 = l.eps(2);
    let dn = l.del(n);
    let dn1 = l.del(n - 1);
    vec![
        ("2ε1-δ(n-1)-δn".into(), l.weight(&[(e1, 2), (dn1, -1), (dn, -1)]), 1, 0),
        ("ε1+ε2-2δn".into(), l.weight(&[(e1, 1), (e2, 1), (dn, -2)]), 1, 0),
        ("ε1-δn".into(), l.weight(&[(e1, 1), (dn, -1)]), 1, 1),
        ("0".into(), Weight::zero(dim), 1, 0),
        ("2ε1-2δn".into(), l.weight(&[(e1, 2), (dn, -2)]), 0, 1),
        ("ε1+ε2-δ(n-1)-δn".into(), l.weight(&[(e1, 1), (e2, 1), (dn1, -1), (dn, -1)]), 0, 1),
    ]
    .into_iter()
    .map(|(s, w, a, b): (String, Weight, usize, usize)| (format!("{s} = {w}"), w, a, b))
    .collect()
}

/// The weights ruled out for g ⊗ g by the Casimir bound.
pub fn excluded_square_weights(dim: SuperDim) -> Vec<(String, Weight)> {
    let l = Labels { dim };
    let (m, n) = (dim.m, dim.n);
    let e1 = l.eps(1);
    let e2 = l.eps(2);
    let em = l.eps(m);
    let d1 = l.del(1);
    let dn = l.del(n);
    let dn1 = l.del(n - 1);
    vec![
        ("2ε1-εm-δn", l.weight(&[(e1, 2), (em, -1), (dn, -1)])),
        ("ε1+ε2-εm-δn", l.weight(&[(e1, 1), (e2, 1), (em, -1), (dn, -1)])),
        ("ε1-εm", l.weight(&[(e1, 1), (em, -1)])),
        ("δ1-δn", l.weight(&[(d1, 1), (dn, -1)])),
        ("ε1+δ1-2δn", l.weight(&[(e1, 1), (d1, 1), (dn, -2)])),
        ("ε1+δ1-δ(n-1)-δn", l.weight(&[(e1, 1), (d1, 1), (dn1, -1), (dn, -1)])),
        ("ε1-εm+δ1-δn", l.weight(&[(e1, 1), (em, -1), (d1, 1), (dn, -1)])),
    ]
    .into_iter()
    .map(|(s, w)| (format!("{s} = {w}"), w))
    .collect()
}

/// Decomposes `g ⊗ g` by computing highest weight vectors at every weight it contains.
pub fn verify_tensor_square(m: usize, n: usize) -> Result<WeightSpaceReport> {
    let dim = SuperDim::new(m, n)?;
    dim.require_wide()?;
    let alg = Slmn::new(m, n)?;
    let spaces = weight_spaces(&alg, 2);
    let raising = simple_raising(&alg);
    let entries: Vec<(&Vec<i64>, &Vec<Vec<u16>>)> = spaces.iter().collect();
    let found: Vec<Option<HwvLine>> = entries
        .par_iter()
        .map(|(w, keys)| {
            let basis = hwv_on_keys(&alg, 2, keys, &raising);
            if basis.dim() == 0 {
                return None;
            }
            let weight = Weight::from_ints(dim, w).expect("tuple weights sum to zero");
            let (s, a) = split_by_swap(&alg, &basis);
            Some(HwvLine {
                weight: weight.to_strings(),
                label: weight.to_string(),
                weight_space_dim: keys.len(),
                hwv_dim: basis.dim(),
                symmetric: s,
                antisymmetric: a,
                dominant_regular: is_dominant_regular(&weight).unwrap_or(false),
            })
        })
        .collect();
    let hwv: Vec<HwvLine> = found.into_iter().flatten().collect();
    let lookup = |w: &Weight| hwv.iter().find(|l| l.weight == w.to_strings());

    let expected_raw = tensor_square_expected(dim);
    let mut expected = Vec::new();
    let mut matches = true;
    for (label, w, s, a) in &expected_raw {
        let (fs, fa) = lookup(w).map(|l| (l.symmetric, l.antisymmetric)).unwrap_or((0, 0));
        matches &= fs == *s && fa == *a;
        expected.push(ExpectedLine {
            label: label.clone(),
            weight: w.to_strings(),
            expected_symmetric: *s,
            expected_antisymmetric: *a,
            found_symmetric: fs,
            found_antisymmetric: fa,
        });
    }
    for line in &hwv {
        if !expected_raw.iter().any(|(_, w, _, _)| w.to_strings() == line.weight) {
            matches = false;
        }
        if line.symmetric + line.antisymmetric != line.hwv_dim {
            matches = false;
        }
    }
    let mut excluded = Vec::new();
    for (label, w) in excluded_square_weights(dim) {
        let coincides = expected_raw.iter().find(|(_, e, _, _)| *e == w).map(|(l, _, _, _)| l.clone());
        let found = lookup(&w).map(|l| l.hwv_dim).unwrap_or(0);
        if coincides.is_none() && found != 0 {
            matches = false;
        }
        excluded.push(ExcludedLine { label, weight: w.to_strings(), found, coincides_with: coincides });
    }
    let d = alg.len();
    let weight_space_dim_sum = spaces.values().map(Vec::len).sum();
    Ok(WeightSpaceReport {
        m,
        n,
        k: 2,
        total_dim: d * d,
        weight_space_dim_sum,
        weight_count: spaces.len(),
        hwv,
        expected,
        excluded,
        matches: matches && weight_space_dim_sum == d * d,
    })
}

/// One row of the Casimir exclusion arithmetic for `μ = λ^k + α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionRow {
    pub k: usize,
    pub alpha: String,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub target: Q,
    pub distinct: bool,
    /// The displayed family applies for `k ≥ n`; rows with `k < n` are informational.
    pub asserted: bool,
}

/// Casimir values of `λ^k + α` against `λ^{k+1}` for the roots the induction excludes by
/// eigenvalue (`α = 0`, `ε₁-δ_n`, `ε₂-δ_n`, `ε₁-ε_{m-1}`, `ε₂-ε_m`).
pub fn casimir_exclusions(m: usize, n: usize, kmax: usize) -> Result<Vec<ExclusionRow>> {
    let dim = SuperDim::new(m, n)?;
    dim.require_positive_wide()?;
    let l = Labels { dim };
    let roots = vec![
        ("0".to_string(), Weight::zero(dim)),
        ("ε1-δn".into(), l.weight(&[(l.eps(1), 1), (l.del(n), -1)])),
        ("ε2-δn".into(), l.weight(&[(l.eps(2), 1), (l.del(n), -1)])),
        ("ε1-ε(m-1)".into(), l.weight(&[(l.eps(1), 1), (l.eps(m - 1), -1)])),
        ("ε2-εm".into(), l.weight(&[(l.eps(2), 1), (l.eps(m), -1)])),
    ];
    let mut out = Vec::new();
    for k in 1..=kmax {
        let lk = lambda_k(k, m, n)?;
        let target = casimir_eigenvalue(&lambda_k(k + 1, m, n)?)?;
        for (label, a) in &roots {
            let value = casimir_eigenvalue(&lk.add(a)?)?;
            out.push(ExclusionRow {
                k,
                alpha: label.clone(),
                distinct: value != target,
                asserted: k >= n,
                value,
                target: target.clone(),
            });
        }
    }
    Ok(out)
}

/// Configuration of the `⊗³g` certification.
#[derive(Clone, Debug)]
pub struct Beta3Config {
    pub mem_cap_mb: u64,
}

impl Default for Beta3Config {
    fn default() -> Self {
        Beta3Config { mem_cap_mb: 4096 }
    }
}

/// Highest weight lines found inside `β₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Beta3Hwv {
    pub weight: Vec<String>,
    pub label: String,
    pub count: usize,
}

/// Exact rank accounting for `⊗³g = β₃ ⊕ I₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Beta3Report {
    pub m: usize,
    pub n: usize,
    pub dim_g: usize,
    pub dim_total: usize,
    pub dim_beta2: usize,
    pub dim_beta3: usize,
    pub dim_i3: usize,
    pub intersection_trivial: bool,
    pub hwv: Vec<Beta3Hwv>,
    pub expected_weight: Vec<String>,
    pub modular_ranks_agree: bool,
    pub largest_weight_space: usize,
    pub pass: bool,
}

struct Beta3Block {
    beta3: usize,
    i3: usize,
    trivial: bool,
    hwv: usize,
    modular_ok: bool,
}

/// Certifies the split `⊗³g = L(λ³) ⊕ I₃` weight space by weight space.
///
/// On each weight space `W`, `β₃ = β₂⊗g ∩ g⊗β₂` is the common kernel of
/// `(℘⊗1 - 1)` and `(1⊗℘ - 1)` where `℘` is the Cartan projector of `g ⊗ g`,
/// and `I₃` is the sum of their images. Ranks are computed exactly and
/// cross-checked modulo three primes.
pub fn beta3_check(m: usize, n: usize, cfg: &Beta3Config) -> Result<Beta3Report> {
    let dim = SuperDim::new(m, n)?;
    dim.require_positive_wide()?;
    let alg = Slmn::new(m, n)?;
    let d = alg.len();
    let spaces = weight_spaces(&alg, 3);
    let largest = spaces.values().map(Vec::len).max().unwrap_or(0);
    // two stacked w×w blocks plus one w×3w block, ~96 bytes per small rational
    let needed = (5 * largest * largest * 96 + d * d * d * 64) as u64 / (1 << 20) + 1;
    if needed > cfg.mem_cap_mb {
        return Err(Error::ResourceCap { needed_mb: needed, cap_mb: cfg.mem_cap_mb });
    }

    let pairs: Vec<(u16, u16)> = (0..d as u16).flat_map(|a| (0..d as u16).map(move |b| (a, b))).collect();
    let projector: Vec<Vec<((u16, u16), Q)>> = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Vec<((u16, u16), Q)>> {
            let t = alg.basis[a as usize].to_tensor().tensor(&alg.basis[b as usize].to_tensor());
            let c = to_g_coords(&alg, &cartan_part(&t)?)?;
            Ok(c.into_iter().map(|(k, v)| ((k[0], k[1]), v)).collect())
        })
        .collect::<Result<_>>()?;
    let proj = |a: u16, b: u16| &projector[a as usize * d + b as usize];
    let dim_beta2 = {
        let mut m2 = DenseMatrix::zeros(d * d, d * d);
        for (col, col_entries) in projector.iter().enumerate() {
            for ((a, b), v) in col_entries {
                m2.set(*a as usize * d + *b as usize, col, v.clone());
            }
        }
        rank(&m2)
    };

    let lambda3 = lambda_k(3, m, n)?;
    let raising = simple_raising(&alg);
    let entries: Vec<(&Vec<i64>, &Vec<Vec<u16>>)> = spaces.iter().collect();
    let blocks: Vec<(Vec<i64>, Beta3Block)> = entries
        .par_iter()
        .map(|(wt, keys)| {
            let w = keys.len();
            let index: HashMap<&Vec<u16>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
            // columns of (℘⊗1 - 1) and (1⊗℘ - 1) on this weight space
            let mut left: DenseMatrix<Q> = DenseMatrix::zeros(w, w);
            let mut right: DenseMatrix<Q> = DenseMatrix::zeros(w, w);
            for (col, key) in keys.iter().enumerate() {
                for ((a, b), v) in proj(key[0], key[1]) {
                    let r = index[&vec![*a, *b, key[2]]];
                    left.set(r, col, left.get(r, col).clone() + v);
                }
                for ((b, c), v) in proj(key[1], key[2]) {
                    let r = index[&vec![key[0], *b, *c]];
                    right.set(r, col, right.get(r, col).clone() + v);
                }
                left.set(col, col, left.get(col, col).clone() - Q::one());
                right.set(col, col, right.get(col, col).clone() - Q::one());
            }
            let stacked = left.vstack(&right);
            let beta = kernel(&stacked);
            let images = left.hstack(&right);
            let i3 = rank(&images);
            let mut all = images.clone();
            if !beta.is_empty() {
                let mut bm = DenseMatrix::zeros(w, beta.len());
                for (c, v) in beta.iter().enumerate() {
                    for (r, x) in v.iter().enumerate() {
                        bm.set(r, c, x.clone());
                    }
                }
                all = all.hstack(&bm);
            }
            let trivial = rank(&all) == i3 + beta.len();
            let modular_ok = [
                (&stacked, w - beta.len()),
                (&images, i3),
            ]
            .iter()
            .all(|(mat, r)| multimodular_rank(mat).iter().all(|x| x.is_none_or(|x| x == *r)));
            let vectors: Vec<GCoords> = beta
                .iter()
                .map(|c| {
                    keys.iter()
                        .zip(c)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k.clone(), x.clone()))
                        .collect()
                })
                .collect();
            let hwv = if vectors.is_empty() { 0 } else { raising_kernel(&alg, &raising, &vectors).len() };
            (
                wt.to_vec(),
                Beta3Block { beta3: beta.len(), i3, trivial, hwv, modular_ok },
            )
        })
        .collect();

    let mut dim_beta3 = 0;
    let mut dim_i3 = 0;
    let mut trivial = true;
    let mut modular = true;
    let mut hwv = Vec::new();
    for (w, b) in &blocks {
        dim_beta3 += b.beta3;
        dim_i3 += b.i3;
        trivial &= b.trivial;
        modular &= b.modular_ok;
        if b.hwv > 0 {
            let weight = Weight::from_ints(dim, w).expect("zero sum");
            hwv.push(Beta3Hwv { weight: weight.to_strings(), label: weight.to_string(), count: b.hwv });
        }
    }
    let total = d * d * d;
    let single = hwv.len() == 1 && hwv[0].count == 1 && hwv[0].weight == lambda3.to_strings();
    Ok(Beta3Report {
        m,
        n,
        dim_g: d,
        dim_total: total,
        dim_beta2,
        dim_beta3,
        dim_i3,
        intersection_trivial: trivial,
        hwv,
        expected_weight: lambda3.to_strings(),
        modular_ranks_agree: modular,
        largest_weight_space: largest,
        pass: single && trivial && modular && dim_beta3 + dim_i3 == total,
    })
}

/// Casimir eigenvalue check on a vector: `Some(c)` if `C v = c v`.
pub fn casimir_scalar(alg: &Slmn, v: &GCoords) -> Option<Q> {
    let cv = casimir_apply_coords(alg, v);
    let (key, x) = v.iter().next()?;
    let c = cv.get(key).cloned().unwrap_or_else(Q::zero) / x;
    let mut scaled = v.clone();
    for y in scaled.values_mut() {
        *y *= &c;
    }
    scaled.retain(|_, y| !y.is_zero());
    (scaled == cv).then_some(c)
}

/// Text form of an integer weight vector.
pub fn weight_strings(w: &[i64]) -> Vec<String> {
    w.iter().map(|&x| fmt_q(&qi(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use crate::tensoralg::{phi, symmetrize_pairs};

    fn w(dim: SuperDim, c: &[i64]) -> Weight {
        Weight::from_ints(dim, c).unwrap()
    }

    fn single(key: Vec<u16>) -> GCoords {
        GCoords::from([(key, Q::one())])
    }

    #[test]
    fn weight_spaces_cover_the_tensor_power() {
        let alg = Slmn::new(4, 1).unwrap();
        for k in 1..=2 {
            let total: usize = weight_spaces(&alg, k).values().map(Vec::len).sum();
            assert_eq!(total, alg.len().pow(k as u32));
        }
    }

    #[test]
    fn hwv_dimensions_in_the_square() {
        let alg = Slmn::new(4, 1).unwrap();
        let d = alg.dim;
        assert_eq!(highest_weight_vectors(&alg, 2, &w(d, &[1, 0, 0, 0, -1])).unwrap().dim(), 2);
        assert_eq!(highest_weight_vectors(&alg, 2, &Weight::zero(d)).unwrap().dim(), 1);
        assert_eq!(highest_weight_vectors(&alg, 1, &w(d, &[1, 0, 0, 0, -1])).unwrap().dim(), 1);
        let alg52 = Slmn::new(5, 2).unwrap();
        let excluded = w(alg52.dim, &[2, 0, 0, 0, -1, 0, -1]);
        assert_eq!(highest_weight_vectors(&alg52, 2, &excluded).unwrap().dim(), 0);
    }

    #[test]
    fn simple_roots_suffice() {
        let alg = Slmn::new(4, 1).unwrap();
        let d = alg.dim;
        for c in [[1, 0, 0, 0, -1], [0, 0, 0, 0, 0], [2, 0, 0, -1, -1], [1, 1, 0, 0, -2], [1, 0, 0, -1, 0]] {
            let lam = w(d, &c);
            let simple = highest_weight_vectors(&alg, 2, &lam).unwrap();
            let full = highest_weight_vectors_full(&alg, 2, &lam).unwrap();
            assert_eq!(simple.dim(), full.dim(), "at {lam}");
        }
    }

    #[test]
    fn tensor_square_at_4_1() {
        let r = verify_tensor_square(4, 1).unwrap();
        assert!(r.matches, "{r:#?}");
        let find = |c: &[i64]| {
            let s = weight_strings(c);
            r.hwv.iter().find(|l| l.weight == s).map(|l| (l.symmetric, l.antisymmetric))
        };
        assert_eq!(find(&[2, 0, 0, -1, -1]), Some((1, 0)));
        assert_eq!(find(&[1, 1, 0, 0, -2]), Some((1, 0)));
        assert_eq!(find(&[1, 0, 0, 0, -1]), Some((1, 1)));
        assert_eq!(find(&[0, 0, 0, 0, 0]), Some((1, 0)));
        assert_eq!(find(&[2, 0, 0, 0, -2]), Some((0, 1)));
        assert_eq!(find(&[1, 1, 0, -1, -1]), Some((0, 1)));
        assert_eq!(r.hwv.len(), 6);
        assert!(r.hwv.iter().all(|l| l.dominant_regular));
        assert!(verify_tensor_square(3, 1).is_err());
    }

    #[test]
    fn casimir_eigenvalues() {
        let alg = Slmn::new(4, 1).unwrap();
        let top = alg.root_index(0, 4).unwrap() as u16;
        assert_eq!(casimir_scalar(&alg, &single(vec![top])), Some(qi(6)));
        let e14 = alg.root_index(0, 3).unwrap() as u16;
        let mut cartan_hwv = single(vec![top, e14]);
        cartan_hwv.insert(vec![e14, top], Q::one());
        assert_eq!(casimir_scalar(&alg, &cartan_hwv), Some(qi(16)));
        let pd = phi(&SuperTensor::delta(alg.dim)).unwrap();
        assert!(casimir_apply(&alg, &pd).unwrap().is_zero());
        // the antisymmetric adjoint line
        let lam = w(alg.dim, &[1, 0, 0, 0, -1]);
        let hw = highest_weight_vectors(&alg, 2, &lam).unwrap();
        for v in &hw.vectors {
            let mut anti = v.clone();
            add_into(&mut anti, &swap_coords(&alg, v), &-Q::one());
            if !anti.is_empty() {
                assert_eq!(casimir_scalar(&alg, &anti), Some(qi(6)));
            }
        }
    }

    #[test]
    fn casimir_commutes_with_action() {
        let alg = Slmn::new(4, 1).unwrap();
        let t = symmetrize_pairs(
            &alg.basis[3].to_tensor().tensor(&(&alg.basis[7] + &alg.basis[21]).to_tensor()),
        )
        .unwrap();
        let v = to_g_coords(&alg, &t).unwrap();
        for z in (0..alg.len()).step_by(5) {
            let a = casimir_apply_coords(&alg, &act_coords(&alg, z, &v));
            let b = act_coords(&alg, z, &casimir_apply_coords(&alg, &v));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn casimir_exclusions_hold() {
        for (m, n) in [(4, 1), (6, 2)] {
            let rows = casimir_exclusions(m, n, 4).unwrap();
            assert_eq!(rows.len(), 20);
            assert_eq!(rows.iter().filter(|r| r.asserted).count(), 5 * (5 - n));
            assert!(rows.iter().filter(|r| r.asserted).all(|r| r.distinct), "{rows:#?}");
        }
    }

    #[test]
    fn beta3_resource_guard() {
        let err = beta3_check(4, 1, &Beta3Config { mem_cap_mb: 1 }).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }

    #[test]
    #[ignore = "slow: exact linear algebra on the third tensor power"]
    fn beta3_at_4_1() {
        let r = beta3_check(4, 1, &Beta3Config::default()).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.hwv[0].weight, weight_strings(&[3, 0, 0, -2, -1]));
    }
}
