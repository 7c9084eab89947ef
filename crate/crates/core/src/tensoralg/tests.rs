use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::rational::{q, qi, sign_q, Q};
use crate::superalgebra::{bracket, killing, Slmn, SuperMatrix};
use crate::superspace::SuperDim;

fn dim(m: usize, n: usize) -> SuperDim {
    SuperDim::new(m, n).unwrap()
}

fn e(d: SuperDim, i: usize, j: usize) -> SuperMatrix {
    SuperMatrix::elementary(d, i - 1, j - 1)
}

fn pair(x: &SuperMatrix, y: &SuperMatrix) -> SuperTensor {
    x.to_tensor().tensor(&y.to_tensor())
}

fn random_g(alg: &Slmn, rng: &mut ChaCha8Rng) -> SuperMatrix {
    let mut coords = Vec::new();
    for a in 0..alg.len() {
        if rng.gen_bool(0.15) {
            coords.push((a, q(rng.gen_range(-4..=4), rng.gen_range(1..=3))));
        }
    }
    alg.from_coords(&coords)
}

fn random_sym(alg: &Slmn, rng: &mut ChaCha8Rng) -> SuperTensor {
    let mut t = SuperTensor::zero(alg.dim, SlotKind::pairs(2));
    for _ in 0..3 {
        t.add_scaled(&pair(&random_g(alg, rng), &random_g(alg, rng)), &Q::one());
    }
    symmetrize_pairs(&t).unwrap()
}

fn random_tensor(d: SuperDim, sig: Vec<SlotKind>, rng: &mut ChaCha8Rng) -> SuperTensor {
    let t = d.total() as u8;
    let mut out = SuperTensor::zero(d, sig.clone());
    for _ in 0..12 {
        let idx: Vec<u8> = (0..sig.len()).map(|_| rng.gen_range(0..t)).collect();
        out.add_at(&idx, &qi(rng.gen_range(-3..=3)));
    }
    out
}

#[test]
fn swap_signs() {
    let d = dim(4, 1);
    let sw = SlotPermutation::swap_halves(2);
    let even = permute_signed(&pair(&e(d, 1, 2), &e(d, 2, 1)), &sw).unwrap();
    assert_eq!(even, pair(&e(d, 2, 1), &e(d, 1, 2)));
    let odd = permute_signed(&pair(&e(d, 1, 5), &e(d, 5, 1)), &sw).unwrap();
    assert_eq!(odd, pair(&e(d, 5, 1), &e(d, 1, 5)).scale(&-Q::one()));
}

#[test]
fn permutations_compose_with_signs() {
    let d = dim(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sig = vec![SlotKind::V, SlotKind::Dual, SlotKind::V, SlotKind::V, SlotKind::Dual];
    let p = SlotPermutation::new(vec![3, 0, 4, 1, 2]).unwrap();
    let r = SlotPermutation::new(vec![1, 2, 0, 4, 3]).unwrap();
    for _ in 0..10 {
        let t = random_tensor(d, sig.clone(), &mut rng);
        let once = permute_signed(&t, &p).unwrap();
        assert_eq!(permute_signed(&once, &p.inverse()).unwrap(), t);
        let twice = permute_signed(&once, &r).unwrap();
        assert_eq!(twice, permute_signed(&t, &r.compose(&p)).unwrap());
    }
    assert!(SlotPermutation::new(vec![0, 0, 1]).is_err());
}

#[test]
fn contraction_examples() {
    let d = dim(4, 1);
    let c = contract_str(&pair(&e(d, 1, 2), &e(d, 2, 1)), 1, 2).unwrap();
    assert_eq!(SuperMatrix::from_tensor(&c).unwrap(), e(d, 1, 1));
    let h = &e(d, 1, 1) + &e(d, 5, 5);
    assert!(contract_str(&h.to_tensor(), 0, 1).unwrap().get(&[]).is_zero());
    assert_eq!(kappa(&pair(&e(d, 1, 2), &e(d, 2, 1))).unwrap(), qi(6));
    assert_eq!(kappa(&pair(&e(d, 1, 2), &e(d, 1, 2))).unwrap(), Q::zero());
    assert!(contract_str(&pair(&e(d, 1, 2), &e(d, 2, 1)), 0, 2).is_err());
}

#[test]
fn str14_matches_displayed_formula() {
    // A^i_j^k_l ↦ Σ_i (-1)^{|i| + |i|(|k|+|j|)} A^i_j^k_i on basis tensors
    let d = dim(3, 2);
    let t = d.total() as u8;
    let p = |i: u8| u32::from(d.parity(i as usize));
    for i in 0..t {
        for j in 0..t {
            for k in 0..t {
                for l in 0..t {
                    let mut a = SuperTensor::zero(d, SlotKind::pairs(2));
                    a.add_at(&[i, j, k, l], &Q::one());
                    let got = contract_str(&a, 0, 3).unwrap();
                    let mut want = SuperTensor::zero(d, vec![SlotKind::Dual, SlotKind::V]);
                    if i == l {
                        want.add_at(&[j, k], &sign_q(p(i) + p(i) * (p(k) + p(j))));
                    }
                    assert_eq!(got, want);
                }
            }
        }
    }
}

#[test]
fn kappa_is_killing() {
    let alg = Slmn::new(4, 1).unwrap();
    for a in (0..alg.len()).step_by(3) {
        for b in (0..alg.len()).step_by(2) {
            let (x, y) = (&alg.basis[a], &alg.basis[b]);
            assert_eq!(kappa(&pair(x, y)).unwrap(), killing(x, y));
        }
    }
}

#[test]
fn phi_constants_and_conditions() {
    let k = PhiConstants::for_dim(dim(4, 1)).unwrap();
    assert_eq!((k.a.clone(), k.c1.clone(), k.c2.clone()), (q(3, 5), q(-11, 24), q(3, 8)));
    for (m, n) in [(4, 1), (5, 2), (6, 2), (1, 5)] {
        let d = dim(m, n);
        let k = PhiConstants::for_dim(d).unwrap();
        assert!(k.residuals(d).iter().all(Zero::is_zero));
    }
    assert!(PhiConstants::for_dim(dim(3, 1)).is_err());
    assert!(PhiConstants::for_dim(dim(2, 4)).is_err());
}

#[test]
fn phi_properties() {
    for (m, n) in [(4, 1), (2, 5)] {
        let d = dim(m, n);
        let t = d.total();
        let delta = SuperTensor::delta(d);
        let mut inputs = vec![delta.clone()];
        for i in 1..=t {
            for j in 1..=t {
                inputs.push(e(d, i, j).to_tensor());
            }
        }
        for b in &inputs {
            let f = phi(b).unwrap();
            assert_eq!(&contract_str(&f, 1, 2).unwrap(), b);
            assert!(contract_str(&f, 0, 1).unwrap().is_zero());
            assert!(contract_str(&f, 2, 3).unwrap().is_zero());
            assert_eq!(permute_signed(&f, &SlotPermutation::swap_halves(2)).unwrap(), f);
        }
        assert_eq!(phi(&delta).unwrap(), phi_delta_closed_form(d).unwrap());
    }
}

#[test]
fn kappa_of_phi_delta() {
    let d = dim(4, 1);
    assert_eq!(kappa(&phi(&SuperTensor::delta(d)).unwrap()).unwrap(), qi(18));
}

#[test]
fn perturbed_phi_breaks_a_condition() {
    let d = dim(4, 1);
    let base = PhiConstants::for_dim(d).unwrap();
    let eps = q(1, 1000);
    let b = (&e(d, 1, 2) + &e(d, 3, 3)).to_tensor();
    for which in 0..3 {
        let mut k = base.clone();
        match which {
            0 => k.a += &eps,
            1 => k.c1 += &eps,
            _ => k.c2 += &eps,
        }
        assert!(k.residuals(d).iter().any(|r| !r.is_zero()));
        let f = phi_with(&b, &k).unwrap();
        let ok = contract_str(&f, 1, 2).unwrap() == b && contract_str(&f, 0, 1).unwrap().is_zero();
        assert!(!ok, "perturbing constant {which} went unnoticed");
    }
}

#[test]
fn psi_properties() {
    let alg = Slmn::new(4, 1).unwrap();
    for x in &alg.basis {
        let b = x.to_tensor();
        let f = psi(&b).unwrap();
        assert_eq!(contract_str(&f, 1, 2).unwrap(), b);
        assert_eq!(antisymmetrize_pairs(&f).unwrap(), f);
        assert!(f.pairs_in_g());
        assert_eq!(f.parity(), Some(x.parity().unwrap()));
    }
    assert!(psi(&SuperTensor::delta(alg.dim)).is_err());
}

#[test]
fn chi_is_idempotent() {
    let alg = Slmn::new(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = phi(&e(alg.dim, 1, 2).to_tensor()).unwrap();
    assert_eq!(chi(&b).unwrap(), b);
    for _ in 0..20 {
        let a = random_sym(&alg, &mut rng);
        let c = chi(&a).unwrap();
        assert_eq!(chi(&c).unwrap(), c);
    }
    assert!(chi(&pair(&e(alg.dim, 1, 2), &e(alg.dim, 2, 3))).is_err());
}

#[test]
fn decomposition_parts() {
    for (m, n) in [(4, 1), (5, 2)] {
        let alg = Slmn::new(m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11 + m as u64);
        for _ in 0..15 {
            let a = random_sym(&alg, &mut rng);
            let p = decompose_sym(&a).unwrap();
            assert_eq!(p.sum(), a);
            assert!(contract_str(&p.b, 1, 2).unwrap().is_zero());
            assert!(contract_str(&p.c, 1, 2).unwrap().is_zero());
            assert!(kappa(&p.d).unwrap().is_zero());
            assert!(kappa(&p.b).unwrap().is_zero() && kappa(&p.c).unwrap().is_zero());
            assert!(antisym_upper(&p.b).unwrap().is_zero());
            assert!(sym_upper(&p.c).unwrap().is_zero());
            assert!(chi(&p.b).unwrap().is_zero() && chi(&p.c).unwrap().is_zero());
        }
    }
    let d = dim(4, 1);
    let pd = phi(&SuperTensor::delta(d)).unwrap();
    let p = decompose_sym(&pd).unwrap();
    assert!(p.b.is_zero() && p.c.is_zero() && p.d.is_zero());
    assert_eq!(p.e, pd);
}

#[test]
fn highest_root_square_is_its_own_cartan_part() {
    let d = dim(4, 1);
    // even root vector: X ⊗ X is symmetric and lies in the Cartan summand
    let x = e(d, 1, 4);
    let xx = pair(&x, &x);
    assert_eq!(symmetrize_pairs(&xx).unwrap(), xx);
    assert!(chi(&xx).unwrap().is_zero());
    assert_eq!(cartan_product(&x, &x).unwrap(), xx);
    assert!(project_offcartan(&xx).unwrap().is_zero());
    // odd root vector: X ⊗ X is super-antisymmetric, so its Cartan part vanishes
    let y = e(d, 1, 5);
    let yy = pair(&y, &y);
    assert!(symmetrize_pairs(&yy).unwrap().is_zero());
    assert!(cartan_product(&y, &y).unwrap().is_zero());
    assert_eq!(project_offcartan(&yy).unwrap(), yy);
    // the top weight 2ε₁ - ε₄ - δ₁ sits in X_{ε₁-δ₁} ⊙ X_{ε₁-ε₄}
    let top = symmetrize_pairs(&pair(&y, &x)).unwrap();
    assert_eq!(cartan_product(&y, &x).unwrap(), top);
}

#[test]
fn cartan_product_kernel_conditions() {
    let alg = Slmn::new(4, 1).unwrap();
    for a in (0..alg.len()).step_by(5) {
        for b in (0..alg.len()).step_by(3) {
            let c = cartan_product(&alg.basis[a], &alg.basis[b]).unwrap();
            assert!(kappa(&c).unwrap().is_zero());
            assert!(contract_str(&c, 1, 2).unwrap().is_zero());
        }
    }
}

#[test]
fn offcartan_projection() {
    let alg = Slmn::new(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let t = pair(&random_g(&alg, &mut rng), &random_g(&alg, &mut rng));
        let p = project_offcartan(&t).unwrap();
        assert_eq!(project_offcartan(&p).unwrap(), p);
        let anti = antisymmetrize_pairs(&t).unwrap();
        assert_eq!(project_offcartan(&anti).unwrap(), anti);
    }
}

#[test]
fn bracket_map_is_bracket() {
    let alg = Slmn::new(2, 3).unwrap();
    for a in (0..alg.len()).step_by(2) {
        for b in (0..alg.len()).step_by(3) {
            let (x, y) = (&alg.basis[a], &alg.basis[b]);
            let got = SuperMatrix::from_tensor(&bracket_map(&pair(x, y)).unwrap()).unwrap();
            assert_eq!(got, bracket(x, y));
        }
    }
}

#[test]
fn action_is_adjoint_and_a_representation() {
    let alg = Slmn::new(2, 2 + 1).unwrap();
    let d = alg.dim;
    for z in &alg.basis {
        for x in alg.basis.iter().step_by(4) {
            assert_eq!(SuperMatrix::from_tensor(&act(z, &x.to_tensor())).unwrap(), bracket(z, x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sig = vec![SlotKind::V, SlotKind::Dual, SlotKind::Dual, SlotKind::V];
    for _ in 0..10 {
        let t = random_tensor(d, sig.clone(), &mut rng);
        let a = &alg.basis[rng.gen_range(0..alg.len())];
        let b = &alg.basis[rng.gen_range(0..alg.len())];
        let s = sign_q(u32::from(a.parity().unwrap() * b.parity().unwrap()));
        let lhs = act(&bracket(a, b), &t);
        let rhs = act(a, &act(b, &t)).minus(&act(b, &act(a, &t)).scale(&s));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn operations_are_equivariant() {
    let alg = Slmn::new(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..4 {
        let a = random_sym(&alg, &mut rng);
        let b = random_g(&alg, &mut rng).to_tensor();
        let t = pair(&random_g(&alg, &mut rng), &random_g(&alg, &mut rng));
        for z in alg.basis.iter().step_by(5) {
            assert_eq!(phi(&act(z, &b)).unwrap(), act(z, &phi(&b).unwrap()));
            assert_eq!(psi(&act(z, &b)).unwrap(), act(z, &psi(&b).unwrap()));
            assert_eq!(chi(&act(z, &a)).unwrap(), act(z, &chi(&a).unwrap()));
            assert_eq!(
                contract_str(&act(z, &t), 1, 2).unwrap(),
                act(z, &contract_str(&t, 1, 2).unwrap())
            );
            assert_eq!(cartan_part(&act(z, &t)).unwrap(), act(z, &cartan_part(&t).unwrap()));
            let pa = decompose_sym(&a).unwrap();
            let pz = decompose_sym(&act(z, &a)).unwrap();
            assert_eq!(pz.c, act(z, &pa.c));
            assert_eq!(pz.d, act(z, &pa.d));
        }
    }
}

#[test]
fn casimir_tensor_is_invariant() {
    let alg = Slmn::new(4, 1).unwrap();
    let c = alg.casimir_tensor();
    assert!(c.pairs_in_g());
    for z in &alg.basis {
        assert!(act(z, &c).is_zero());
    }
}

#[test]
fn g_coordinates_round_trip() {
    let alg = Slmn::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let t = pair(&random_g(&alg, &mut rng), &random_g(&alg, &mut rng));
        let c = to_g_coords(&alg, &t).unwrap();
        assert_eq!(from_g_coords(&alg, 2, &c), t);
    }
    assert!(to_g_coords(&alg, &pair(&e(alg.dim, 1, 1), &e(alg.dim, 1, 2))).is_err());
}

#[test]
fn json_round_trip() {
    let d = dim(4, 1);
    let t = pair(&e(d, 1, 5), &(&e(d, 2, 2) - &e(d, 3, 3)).scale(&q(-1, 3)));
    let j = serde_json::to_string(&t.to_json()).unwrap();
    assert!(j.contains("\"V*\"") && j.contains("\"-1/3\""));
    let back: TensorJson = serde_json::from_str(&j).unwrap();
    assert_eq!(SuperTensor::from_json(&back).unwrap(), t);
}
