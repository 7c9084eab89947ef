//! Polynomial differential operators on `m-1` even and `n` odd variables,
//! and the minimal realization `π_μ` of sl(m|n) on them.
//!
//! Variable `v` (0-based) stands for the basis vector with index `v + 1`, so
//! its parity is that of index `v + 1`. Operators are kept in normal order:
//! all `x` left of all `∂`, each block sorted by index.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::joseph::{generator, lambda_c_closed_form, FilteredElement};
use crate::linalg::EchelonBasis;
use crate::rational::{fmt_q, q, qi, sign_q, Q};
use crate::superalgebra::{bracket, killing, Slmn, SuperMatrix};
use crate::superspace::SuperDim;
use crate::tensoralg::{cartan_product, decompose_sym, symmetrize_pairs, SlotKind, SuperTensor};

/// Exponents: the first half are `x` exponents, the second half `∂` exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(Vec<u8>);

impl Mono {
    pub fn one(vars: usize) -> Self {
        Mono(vec![0; 2 * vars])
    }

    pub fn vars(&self) -> usize {
        self.0.len() / 2
    }

    pub fn x(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn d(&self, v: usize) -> u8 {
        self.0[self.vars() + v]
    }

    pub fn x_degree(&self) -> usize {
        self.0[..self.vars()].iter().map(|&e| e as usize).sum()
    }

    pub fn has_derivative(&self) -> bool {
        self.0[self.vars()..].iter().any(|&e| e > 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    X(usize),
    D(usize),
}

/// A normal-ordered element of the super Weyl algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    parity: Vec<u8>,
    terms: BTreeMap<Mono, Q>,
}

impl WeylOp {
    /// The zero operator on variables of the given parities.
    pub fn zero(parity: Vec<u8>) -> Self {
        WeylOp { parity, terms: BTreeMap::new() }
    }

    /// `m-1` even variables followed by `n` odd ones.
    pub fn zero_for(dim: SuperDim) -> Self {
        Self::zero((1..dim.total()).map(|i| dim.parity(i)).collect())
    }

    pub fn scalar(parity: Vec<u8>, c: Q) -> Self {
        let mut op = Self::zero(parity);
        let one = Mono::one(op.vars());
        op.add_term(one, c);
        op
    }

    pub fn x(parity: Vec<u8>, v: usize) -> Self {
        Self::generator(parity, Gen::X(v))
    }

    pub fn d(parity: Vec<u8>, v: usize) -> Self {
        Self::generator(parity, Gen::D(v))
    }

    fn generator(parity: Vec<u8>, g: Gen) -> Self {
        let mut op = Self::zero(parity);
        let mut mono = Mono::one(op.vars());
        match g {
            Gen::X(v) => mono.0[v] = 1,
            Gen::D(v) => mono.0[op.vars() + v] = 1,
        }
        op.add_term(mono, Q::one());
        op
    }

    /// The Euler operator `Σ x_v ∂_v`.
    pub fn euler(parity: Vec<u8>) -> Self {
        let mut op = Self::zero(parity);
        let k = op.vars();
        for v in 0..k {
            let mut mono = Mono::one(k);
            mono.0[v] = 1;
            mono.0[k + v] = 1;
            op.add_term(mono, Q::one());
        }
        op
    }

    pub fn vars(&self) -> usize {
        self.parity.len()
    }

    pub fn var_parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn plus(&self, o: &WeylOp) -> WeylOp {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &WeylOp) -> WeylOp {
        self.plus(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero(self.parity.clone());
        }
        WeylOp { parity: self.parity.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    fn mono_parity(&self, m: &Mono) -> u8 {
        let k = self.vars();
        (0..k).filter(|&v| self.parity[v] == 1).map(|v| m.0[v] + m.0[k + v]).sum::<u8>() % 2
    }

    /// `Some(p)` if every term has parity `p`; the zero operator counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|m| self.mono_parity(m));
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    /// Number of odd exponents strictly above `v` in the block starting at `base`.
    fn odd_above(&self, m: &Mono, base: usize, v: usize) -> u32 {
        ((v + 1)..self.vars()).filter(|&w| self.parity[w] == 1 && m.0[base + w] == 1).count() as u32
    }

    fn odd_below(&self, m: &Mono, base: usize, v: usize) -> u32 {
        (0..v).filter(|&w| self.parity[w] == 1 && m.0[base + w] == 1).count() as u32
    }

    /// Appends `m · g` (times `c`) to `out`.
    fn times_gen(&self, m: &Mono, c: &Q, g: Gen, out: &mut BTreeMap<Mono, Q>) {
        let k = self.vars();
        let push = |out: &mut BTreeMap<Mono, Q>, mono: Mono, v: Q| {
            let e = out.entry(mono).or_insert_with(Q::zero);
            *e += v;
        };
        match g {
            Gen::D(v) => {
                let odd = u32::from(self.parity[v]);
                if odd == 1 && m.0[k + v] == 1 {
                    return;
                }
                let mut mono = m.clone();
                mono.0[k + v] += 1;
                push(out, mono, sign_q(odd * self.odd_above(m, k, v)) * c);
            }
            Gen::X(v) => {
                let odd = u32::from(self.parity[v]);
                // moving x_v left through the ∂ block, starting with indices above v
                let s_right = odd * self.odd_above(m, k, v);
                let b = m.0[k + v];
                if b > 0 {
                    let mut mono = m.clone();
                    mono.0[k + v] -= 1;
                    push(out, mono, sign_q(s_right) * qi(i64::from(b)) * c);
                }
                if odd == 1 && m.0[v] == 1 {
                    return;
                }
                let s_self = if odd == 1 && b == 1 { 1 } else { 0 };
                let s = s_right + s_self + odd * self.odd_below(m, k, v) + odd * self.odd_above(m, 0, v);
                let mut mono = m.clone();
                mono.0[v] += 1;
                push(out, mono, sign_q(s) * c);
            }
        }
    }

    fn word(m: &Mono) -> Vec<Gen> {
        let k = m.vars();
        let mut w = Vec::new();
        for v in 0..k {
            w.extend(std::iter::repeat_n(Gen::X(v), m.x(v) as usize));
        }
        for v in 0..k {
            w.extend(std::iter::repeat_n(Gen::D(v), m.d(v) as usize));
        }
        w
    }

    /// Normal-ordered product.
    pub fn mul(&self, o: &WeylOp) -> WeylOp {
        debug_assert_eq!(self.parity, o.parity);
        let mut total: BTreeMap<Mono, Q> = BTreeMap::new();
        for (om, oc) in &o.terms {
            let mut cur: BTreeMap<Mono, Q> = self.terms.iter().map(|(m, c)| (m.clone(), c * oc)).collect();
            for g in Self::word(om) {
                let mut next = BTreeMap::new();
                for (m, c) in &cur {
                    self.times_gen(m, c, g, &mut next);
                }
                next.retain(|_, v| !v.is_zero());
                cur = next;
            }
            for (m, c) in cur {
                let e = total.entry(m).or_insert_with(Q::zero);
                *e += c;
            }
        }
        total.retain(|_, v| !v.is_zero());
        WeylOp { parity: self.parity.clone(), terms: total }
    }

    /// `[P, Q] = PQ - (-1)^{|P||Q|} QP` for homogeneous operators.
    pub fn supercomm(&self, o: &WeylOp) -> WeylOp {
        let s = u32::from(self.parity().unwrap_or(0) * o.parity().unwrap_or(0));
        self.mul(o).minus(&o.mul(self).scale(&sign_q(s)))
    }

    /// Applies the operator to a polynomial (an operator with no `∂`).
    pub fn apply(&self, f: &WeylOp) -> WeylOp {
        let mut r = self.mul(f);
        r.terms.retain(|m, _| !m.has_derivative());
        r
    }
}

/// Free-function form of [`WeylOp::mul`].
pub fn weyl_mul(p: &WeylOp, o: &WeylOp) -> WeylOp {
    p.mul(o)
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let k = self.vars();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_q(c))?;
            for v in 0..k {
                match m.x(v) {
                    0 => {}
                    1 => write!(f, "*x{}", v + 2)?,
                    e => write!(f, "*x{}^{e}", v + 2)?,
                }
            }
            for v in 0..k {
                match m.d(v) {
                    0 => {}
                    1 => write!(f, "*d{}", v + 2)?,
                    e => write!(f, "*d{}^{e}", v + 2)?,
                }
            }
        }
        Ok(())
    }
}

/// `π_μ` on every matrix unit and on the sl(m|n) basis.
#[derive(Clone, Debug)]
pub struct Realization {
    pub dim: SuperDim,
    pub mu: Q,
    /// `units[i * t + j]` is the image of `E_ij`; `E_00` maps to zero.
    units: Vec<WeylOp>,
    pub images: Vec<WeylOp>,
    /// Alternative bracket routes that were verified.
    pub routes_checked: usize,
}

impl Realization {
    pub fn unit(&self, i: usize, j: usize) -> &WeylOp {
        &self.units[i * self.dim.total() + j]
    }

    /// Image of a supertraceless matrix.
    pub fn pi(&self, x: &SuperMatrix) -> WeylOp {
        let mut out = WeylOp::zero_for(self.dim);
        for (i, j, v) in x.nonzero() {
            out = out.plus(&self.unit(i, j).scale(v));
        }
        out
    }

    pub fn scalar(&self, c: Q) -> WeylOp {
        WeylOp::scalar(WeylOp::zero_for(self.dim).parity, c)
    }
}

/// Builds `π_μ`: `E_j1 ↦ x_j`, `E_1j ↦ (μ - 𝔼)∂_j`, and everything else by brackets.
pub fn build_realization(mu: &Q, m: usize, n: usize) -> Result<Realization> {
    let dim = SuperDim::new(m, n)?;
    if m < 2 {
        return Err(Error::Realization(format!("need at least two even indices, got m = {m}")));
    }
    let t = dim.total();
    let base = WeylOp::zero_for(dim);
    let par = base.parity.clone();
    let shift = WeylOp::scalar(par.clone(), mu.clone()).minus(&WeylOp::euler(par.clone()));
    let mut units = vec![base.clone(); t * t];
    for j in 1..t {
        units[j * t] = WeylOp::x(par.clone(), j - 1);
        units[j] = shift.mul(&WeylOp::d(par.clone(), j - 1));
    }
    // [E_i1, E_1j] = E_ij - (-1)^{|i|} δ_ij E_11, and E_11 maps to zero
    for i in 1..t {
        for j in 1..t {
            units[i * t + j] = units[i * t].supercomm(&units[j]);
        }
    }
    let mut routes = 0;
    for i in 1..t {
        for j in 1..t {
            if i == j {
                continue;
            }
            for k in 1..t {
                if k == i || k == j {
                    continue;
                }
                let alt = units[i * t + k].supercomm(&units[k * t + j]);
                if alt != units[i * t + j] {
                    return Err(Error::Realization(format!(
                        "routes to E_{}{} disagree through index {}",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                routes += 1;
            }
        }
    }
    for i in 0..t {
        for j in 0..t {
            let expect = dim.parity(i) ^ dim.parity(j);
            let u = &units[i * t + j];
            if !u.is_zero() && u.parity() != Some(expect) {
                return Err(Error::Realization(format!("image of E_{}{} has the wrong parity", i + 1, j + 1)));
            }
        }
    }
    let alg = Slmn::new(m, n)?;
    let mut r = Realization { dim, mu: mu.clone(), units, images: Vec::new(), routes_checked: routes };
    r.images = alg.basis.iter().map(|b| r.pi(b)).collect();
    Ok(r)
}

/// First failing pair of the homomorphism check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomFailure {
    pub a: usize,
    pub b: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub pairs_checked: usize,
    pub failure: Option<HomFailure>,
    pub pass: bool,
}

/// Checks `[π(X), π(Y)] = π([X, Y])` on all ordered basis pairs.
pub fn check_homomorphism(pi: &Realization, alg: &Slmn) -> HomReport {
    let d = alg.len();
    let fail = (0..d * d).into_par_iter().find_first(|&k| {
        let (a, b) = (k / d, k % d);
        pi.images[a].supercomm(&pi.images[b]) != pi.pi(&bracket(&alg.basis[a], &alg.basis[b]))
    });
    let failure = fail.map(|k| {
        let (a, b) = (k / d, k % d);
        HomFailure {
            a,
            b,
            lhs: pi.images[a].supercomm(&pi.images[b]).to_string(),
            rhs: pi.pi(&bracket(&alg.basis[a], &alg.basis[b])).to_string(),
        }
    });
    HomReport { pairs_checked: d * d, pass: failure.is_none(), failure }
}

/// Image of a tensor in `⊗^k g`, multiplying factor images in slot order.
pub fn realize_tensor(pi: &Realization, t: &SuperTensor) -> Result<WeylOp> {
    let k2 = t.slots();
    if !k2.is_multiple_of(2) || t.signature() != SlotKind::pairs(k2 / 2).as_slice() {
        return Err(Error::Signature(format!("expected (V, V*)^k, got {:?}", t.signature())));
    }
    if !t.pairs_in_g() {
        return Err(Error::Realization("tensor is not supertraceless on every pair".into()));
    }
    let mut acc: BTreeMap<Mono, Q> = BTreeMap::new();
    for (idx, v) in t.iter() {
        let mut op = pi.scalar(v.clone());
        for p in 0..k2 / 2 {
            op = op.mul(pi.unit(idx[2 * p] as usize, idx[2 * p + 1] as usize));
            if op.is_zero() {
                break;
            }
        }
        for (m, c) in op.terms {
            let e = acc.entry(m).or_insert_with(Q::zero);
            *e += c;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(WeylOp { parity: WeylOp::zero_for(pi.dim).parity, terms: acc })
}

/// Image of a filtered element with λ specialised.
pub fn realize_filtered(pi: &Realization, f: &FilteredElement, lambda: &Q) -> Result<WeylOp> {
    let deg2 = f.deg2.c.plus(&f.deg2.l.scale(lambda));
    let deg1 = f.deg1.c.plus(&f.deg1.l.scale(lambda));
    Ok(realize_tensor(pi, &deg2)?.plus(&realize_tensor(pi, &deg1)?).plus(&pi.scalar(f.deg0.eval(lambda))))
}

/// A failing element with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub check: String,
    pub a: usize,
    pub b: usize,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub m: usize,
    pub n: usize,
    pub mu: String,
    pub lambda_c: String,
    pub homomorphism: bool,
    pub cde_images: bool,
    pub rela: bool,
    pub generators: bool,
    pub sym_basis_checked: usize,
    pub pairs_checked: usize,
    /// At most a few failing cases per sub-check.
    pub failing_cases: Vec<Residual>,
    pub pass: bool,
}

const MAX_REPORTED: usize = 3;

fn collect_failures(items: Vec<Option<Residual>>) -> (bool, Vec<Residual>) {
    let bad: Vec<Residual> = items.into_iter().flatten().collect();
    (bad.is_empty(), bad.into_iter().take(MAX_REPORTED).collect())
}

/// `(-1)`-symmetrised squares `x_a ⊙ x_b`, `a ≤ b`, skipping the ones that vanish.
fn sym_basis(alg: &Slmn) -> Result<Vec<(usize, usize, SuperTensor)>> {
    let d = alg.len();
    let mut out = Vec::new();
    for a in 0..d {
        for b in a..d {
            let t = alg.basis[a].to_tensor().tensor(&alg.basis[b].to_tensor());
            let s = symmetrize_pairs(&t)?;
            if !s.is_zero() {
                out.push((a, b, s));
            }
        }
    }
    Ok(out)
}

fn cde_one(pi: &Realization, a: usize, b: usize, s: &SuperTensor, lc: &Q) -> Result<Option<Residual>> {
    let parts = decompose_sym(s)?;
    let target = pi.scalar(lc * crate::tensoralg::kappa(s)?);
    for (name, part, want) in [("C", &parts.c, None), ("D", &parts.d, None), ("E", &parts.e, Some(&target))] {
        let img = realize_tensor(pi, part)?;
        let res = match want {
            None => img,
            Some(w) => img.minus(w),
        };
        if !res.is_zero() {
            return Ok(Some(Residual { check: name.into(), a, b, residual: res.to_string() }));
        }
    }
    Ok(None)
}

fn cde_residuals(
    pi: &Realization,
    sym: &[(usize, usize, SuperTensor)],
    lc: &Q,
    stop_at_first: bool,
) -> Result<Vec<Option<Residual>>> {
    if stop_at_first {
        let hit = sym.par_iter().find_map_first(|(a, b, s)| match cde_one(pi, *a, *b, s, lc) {
            Ok(None) => None,
            other => Some(other),
        });
        return Ok(vec![hit.transpose()?.flatten()]);
    }
    sym.par_iter().map(|(a, b, s)| cde_one(pi, *a, *b, s, lc)).collect()
}

/// Only the check `π(C) = 0 = π(D)`, `π(E) = λᶜ𝒦(A)` over a basis of `g ⊙ g`,
/// stopping at the first failure. Returns the failure, if any.
pub fn check_cde_images(m: usize, n: usize, mu: &Q) -> Result<Option<Residual>> {
    let alg = Slmn::new(m, n)?;
    alg.dim.require_positive_wide()?;
    let pi = build_realization(mu, m, n)?;
    let sym = sym_basis(&alg)?;
    Ok(cde_residuals(&pi, &sym, &lambda_c_closed_form(alg.dim), true)?.pop().flatten())
}

/// Checks that the quadratic generators at the critical parameter act by zero in `π_μ`.
///
/// `mu` defaults to `(n - m)/2`; other values are for negative controls.
pub fn check_joseph_annihilated(m: usize, n: usize, mu: Option<Q>) -> Result<AnnihilationReport> {
    let alg = Slmn::new(m, n)?;
    alg.dim.require_positive_wide()?;
    let mu = mu.unwrap_or_else(|| q(n as i64 - m as i64, 2));
    let lc = lambda_c_closed_form(alg.dim);
    let pi = build_realization(&mu, m, n)?;
    let hom = check_homomorphism(&pi, &alg);
    let d = alg.len();

    let sym = sym_basis(&alg)?;
    let (cde_ok, mut failing) = collect_failures(cde_residuals(&pi, &sym, &lc, false)?);

    let half = q(1, 2);
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let checks: Vec<(Option<Residual>, Option<Residual>)> = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<_> {
            let (x, y) = (&alg.basis[a], &alg.basis[b]);
            let cp = realize_tensor(&pi, &cartan_product(x, y)?)?;
            let rela = pi.images[a]
                .mul(&pi.images[b])
                .minus(&cp)
                .minus(&pi.pi(&bracket(x, y)).scale(&half))
                .minus(&pi.scalar(&lc * killing(x, y)));
            let r1 = (!rela.is_zero())
                .then(|| Residual { check: "rela".into(), a, b, residual: rela.to_string() });
            let g = realize_filtered(&pi, &generator(x, y)?, &lc)?;
            let r2 = (!g.is_zero()).then(|| Residual { check: "generator".into(), a, b, residual: g.to_string() });
            Ok((r1, r2))
        })
        .collect::<Result<_>>()?;
    let (rela, gens): (Vec<_>, Vec<_>) = checks.into_iter().unzip();
    let (rela_ok, f1) = collect_failures(rela);
    let (gen_ok, f2) = collect_failures(gens);
    failing.extend(f1);
    failing.extend(f2);

    Ok(AnnihilationReport {
        m,
        n,
        mu: fmt_q(&mu),
        lambda_c: fmt_q(&lc),
        homomorphism: hom.pass,
        cde_images: cde_ok,
        rela: rela_ok,
        generators: gen_ok,
        sym_basis_checked: sym.len(),
        pairs_checked: pairs.len(),
        failing_cases: failing,
        pass: hom.pass && cde_ok && rela_ok && gen_ok,
    })
}

/// Image of the Casimir element and how it sits in the realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CasimirImage {
    pub operator: String,
    pub commutes: bool,
    /// Value on the constant polynomial.
    pub on_constant: String,
}

pub fn casimir_image(pi: &Realization, alg: &Slmn) -> Result<CasimirImage> {
    let c = realize_tensor(pi, &alg.casimir_tensor())?;
    let commutes = pi.images.par_iter().all(|z| c.supercomm(z).is_zero());
    let one = pi.scalar(Q::one());
    let on_one = c.apply(&one);
    let value = on_one.coefficient(&Mono::one(one.vars()));
    Ok(CasimirImage { operator: c.to_string(), commutes, on_constant: fmt_q(&value) })
}

/// All polynomials of total degree at most `max_deg`.
pub fn polynomial_monomials(parity: &[u8], max_deg: usize) -> Vec<Mono> {
    let k = parity.len();
    let mut out = vec![Mono::one(k)];
    for (v, &p) in parity.iter().enumerate() {
        let cap = if p == 1 { 1 } else { max_deg as u8 };
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=cap {
                if m.x_degree() + e as usize > max_deg {
                    break;
                }
                let mut mm = m.clone();
                mm.0[v] = e;
                next.push(mm);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Dimension of the span generated from `start` by the images, staying within degree `max_deg`.
pub fn cyclic_span_dim(pi: &Realization, start: &WeylOp, max_deg: usize) -> usize {
    let monos = polynomial_monomials(&start.parity, max_deg);
    let index: BTreeMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let coords = |f: &WeylOp| -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); monos.len()];
        for (m, c) in f.terms() {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    };
    let mut basis = EchelonBasis::new(monos.len());
    let mut frontier = Vec::new();
    if let Some(v) = coords(start) {
        if basis.insert(v) {
            frontier.push(start.clone());
        }
    }
    while let Some(f) = frontier.pop() {
        for img in &pi.images {
            let g = img.apply(&f);
            if g.is_zero() {
                continue;
            }
            if let Some(v) = coords(&g) {
                if basis.insert(v) {
                    frontier.push(g);
                }
            }
        }
    }
    basis.len()
}
