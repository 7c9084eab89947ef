//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use joseph_core::hwsolver::{
    beta3_check, casimir_scalar, casimir_exclusions, verify_tensor_square, Beta3Config,
};
use joseph_core::joseph::{derive_lambda_c, s_checks, s_tensor};
use joseph_core::rational::{q, qi, Q};
use joseph_core::superalgebra::{Slmn, SuperMatrix};
use joseph_core::superspace::{casimir_eigenvalue, lambda_k};
use joseph_core::suite::{run_suite, SuiteConfig, SuiteName};
use joseph_core::tensoralg::{
    contract_str, decompose_sym, is_g_sym, kappa, phi_with, symmetrize_pairs, GCoords, PhiConstants,
};
use joseph_core::weylreal::{build_realization, check_cde_images, check_homomorphism, check_joseph_annihilated};
use joseph_core::Error;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda_c_derivation() -> Outcome {
    // (m, n, λᶜ, left, right), worked out by hand from d = m - n
    let table = [
        (4, 1, q(-1, 32), "-3/2", "-3/4+24*lambda"),
        (5, 1, q(-1, 40), "-4", "-2+80*lambda"),
        (6, 2, q(-1, 40), "-4", "-2+80*lambda"),
        (7, 3, q(-1, 40), "-4", "-2+80*lambda"),
    ];
    for (m, n, lc, left, right) in table {
        let (l, r) = derive_lambda_c(m, n).map_err(|e| e.to_string())?;
        let d = (m + n) * (m + n) - 1;
        ensure(l == lc, || format!("({m},{n}): λᶜ = {}", r.lambda_c))?;
        ensure(r.left_scalar == left && r.right_scalar == right, || {
            format!("({m},{n}): scalars {} / {}", r.left_scalar, r.right_scalar)
        })?;
        ensure(r.per_t_consistent && r.basis_checked == d, || format!("({m},{n}): not uniform over the basis"))?;
    }
    Ok(())
}

fn tensor_square() -> Outcome {
    for (m, n) in [(4, 1), (5, 2), (6, 2)] {
        let r = verify_tensor_square(m, n).map_err(|e| e.to_string())?;
        let lines: usize = r.hwv.iter().map(|l| l.hwv_dim).sum();
        ensure(r.matches && lines == 7, || format!("({m},{n}): {lines} lines, matches = {}", r.matches))?;
        let adj = r.expected.iter().find(|e| e.label.starts_with("ε1-δn")).ok_or("no ε1-δn line")?;
        ensure(adj.found_symmetric + adj.found_antisymmetric == 2, || format!("({m},{n}): ε1-δn multiplicity"))?;
        for e in &r.expected {
            if !e.label.starts_with("ε1-δn") {
                ensure(e.found_symmetric + e.found_antisymmetric == 1, || format!("({m},{n}): {}", e.label))?;
            }
        }
        for x in r.excluded.iter().filter(|x| x.coincides_with.is_none()) {
            ensure(x.found == 0, || format!("({m},{n}): hwv at excluded {}", x.label))?;
        }
    }
    Ok(())
}

fn random_sl(alg: &Slmn, rng: &mut ChaCha8Rng) -> SuperMatrix {
    let mut x = SuperMatrix::zero(alg.dim);
    for _ in 0..3 {
        let a = rng.gen_range(0..alg.len());
        x = &x + &alg.basis[a].scale(&qi(rng.gen_range(-3..=3)));
    }
    x
}

/// Whether φ with the given constants has all three defining properties on every matrix unit.
fn phi_is_good(alg: &Slmn, k: &PhiConstants) -> Result<bool, Error> {
    let t = alg.total();
    for i in 0..t {
        for j in 0..t {
            let b = SuperMatrix::elementary(alg.dim, i, j).to_tensor();
            let p = phi_with(&b, k)?;
            if contract_str(&p, 1, 2)? != b || !contract_str(&p, 0, 1)?.is_zero() || !is_g_sym(&p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn phi_and_decomposition() -> Outcome {
    let run = || -> Result<(), Error> {
        for (m, n) in [(4, 1), (5, 2), (6, 2)] {
            let alg = Slmn::new(m, n)?;
            let k = PhiConstants::for_dim(alg.dim)?;
            assert!(k.residuals(alg.dim).iter().all(Zero::is_zero), "({m},{n}) constants");
            assert!(phi_is_good(&alg, &k)?, "({m},{n}) φ properties");
            let mut rng = ChaCha8Rng::seed_from_u64(7 + m as u64 * 31 + n as u64);
            for _ in 0..50 {
                let (x, y, z) = (random_sl(&alg, &mut rng), random_sl(&alg, &mut rng), random_sl(&alg, &mut rng));
                let t = x.to_tensor().tensor(&y.to_tensor()).plus(&y.to_tensor().tensor(&z.to_tensor()));
                let a = symmetrize_pairs(&t)?;
                let p = decompose_sym(&a)?;
                assert_eq!(p.sum(), a, "({m},{n}) A = B + C + D + E");
                assert!(contract_str(&p.b, 1, 2)?.is_zero(), "({m},{n}) str23 B");
                assert!(contract_str(&p.c, 1, 2)?.is_zero(), "({m},{n}) str23 C");
                assert!(kappa(&p.d)?.is_zero(), "({m},{n}) κ(D)");
            }
        }
        Ok(())
    };
    run().map_err(|e| e.to_string())
}

fn s_tensor_postconditions() -> Outcome {
    for (m, n) in [(4, 1), (6, 2)] {
        let alg = Slmn::new(m, n).map_err(|e| e.to_string())?;
        for (i, t) in alg.basis.iter().enumerate() {
            let c = s_tensor(t).and_then(|s| s_checks(&s)).map_err(|e| e.to_string())?;
            ensure(c.all(), || format!("({m},{n}) basis {i}: {c:?}"))?;
        }
    }
    Ok(())
}

fn realization() -> Outcome {
    for (m, n) in [(4, 1), (5, 2), (6, 2)] {
        let alg = Slmn::new(m, n).map_err(|e| e.to_string())?;
        let crit = q(n as i64 - m as i64, 2);
        for mu in [Q::zero(), crit.clone()] {
            let pi = build_realization(&mu, m, n).map_err(|e| e.to_string())?;
            let h = check_homomorphism(&pi, &alg);
            ensure(h.pass, || format!("({m},{n}) μ = {mu}: {:?}", h.failure))?;
        }
        let r = check_joseph_annihilated(m, n, None).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("({m},{n}): {:?}", r.failing_cases))?;
    }
    Ok(())
}

fn casimir_arithmetic() -> Outcome {
    for (m, n) in [(4, 1), (6, 2), (7, 3)] {
        let d = m as i64 - n as i64;
        for k in 1..=6i64 {
            let w = lambda_k(k as usize, m, n).map_err(|e| e.to_string())?;
            let c = casimir_eigenvalue(&w).map_err(|e| e.to_string())?;
            ensure(c == qi(2 * k * (k + d - 1)), || format!("({m},{n}) k = {k}: {c}"))?;
        }
        let rows = casimir_exclusions(m, n, 4).map_err(|e| e.to_string())?;
        ensure(rows.iter().filter(|r| r.asserted).all(|r| r.distinct), || format!("({m},{n}) exclusions"))?;
    }
    let alg = Slmn::new(4, 1).map_err(|e| e.to_string())?;
    let top = alg.root_index(0, 4).unwrap() as u16;
    let e14 = alg.root_index(0, 3).unwrap() as u16;
    let adj = GCoords::from([(vec![top], Q::one())]);
    ensure(casimir_scalar(&alg, &adj) == Some(qi(6)), || "adjoint hwv".into())?;
    let cartan = GCoords::from([(vec![top, e14], Q::one()), (vec![e14, top], Q::one())]);
    ensure(casimir_scalar(&alg, &cartan) == Some(qi(16)), || "Cartan hwv".into())
}

fn beta3() -> Outcome {
    let r = beta3_check(4, 1, &Beta3Config::default()).map_err(|e| e.to_string())?;
    ensure(r.dim_total == 24 * 24 * 24 && r.dim_beta3 + r.dim_i3 == r.dim_total, || {
        format!("ranks {} + {} vs {}", r.dim_beta3, r.dim_i3, r.dim_total)
    })?;
    ensure(r.intersection_trivial && r.modular_ranks_agree, || "intersection or modular ranks".into())?;
    let lambda3 = ["3", "0", "0", "-2", "-1"].map(String::from).to_vec();
    ensure(r.hwv.len() == 1 && r.hwv[0].count == 1 && r.hwv[0].weight == lambda3, || format!("{:?}", r.hwv))?;
    ensure(r.pass, || "beta3 report".into())
}

fn negative_controls() -> Outcome {
    let alg = Slmn::new(4, 1).map_err(|e| e.to_string())?;
    let k = PhiConstants::for_dim(alg.dim).map_err(|e| e.to_string())?;
    for which in 0..3 {
        let mut bad = k.clone();
        let bump = q(1, 5);
        match which {
            0 => bad.a += bump,
            1 => bad.c1 += bump,
            _ => bad.c2 += bump,
        }
        ensure(bad.residuals(alg.dim).iter().any(|r| !r.is_zero()), || format!("constant {which} residuals"))?;
        ensure(!phi_is_good(&alg, &bad).map_err(|e| e.to_string())?, || format!("constant {which} still works"))?;
    }
    for case in [(3, 1), (1, 3)] {
        let cfg = SuiteConfig { cases: vec![case], suites: vec![SuiteName::Decomposition], ..Default::default() };
        ensure(matches!(run_suite(&cfg), Err(Error::InvalidDims { .. })), || format!("{case:?} accepted"))?;
    }
    let control = check_cde_images(4, 1, &Q::zero()).map_err(|e| e.to_string())?;
    ensure(control.is_some(), || "C/D/E images hold at μ = 0".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("lambda_c derivation at (4,1), (5,1), (6,2), (7,3)", lambda_c_derivation),
        ("tensor square decomposition at (4,1), (5,2), (6,2)", tensor_square),
        ("phi projector and four-part decomposition", phi_and_decomposition),
        ("S tensor postconditions at (4,1), (6,2)", s_tensor_postconditions),
        ("realization homomorphism and annihilation", realization),
        ("Casimir arithmetic and exclusions", casimir_arithmetic),
        ("third tensor power split at (4,1)", beta3),
        ("negative controls", negative_controls),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
