//! The self-test suite: twelve exact end-to-end checks covering the Witt
//! tables, the 1D circuit decomposition, boundary forms, both descent/ascent
//! round trips, the qubit generator, time-reversal normalization, pinned
//! matrix identities, certified representatives and classification sanity.
//! All randomness is derived from one base seed; all comparisons are exact.

use std::time::Instant;

use crate::ascent::{ascend_form, ascend_unitary_hermitian, embed_form};
use crate::classify::{cg_kill_check, classify, qubit_generator_1d, representative};
use crate::descent::{boundary_form, boundary_form_of_module, boundary_module_of_unitary, descend_form};
use crate::forms::{self, random_quadratic, witt_class_f, Form, WittClass};
use crate::matrix::Mat;
use crate::ring::Poly;
use crate::unitary::{
    check_eta, check_lambda, decompose_1d_any, gen_h, gen_x, gen_z, gen_zdag, normalize_real,
    random_circuit, Flavor, Unitary,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One named check: takes the base seed, fails with a message.
pub type Check = fn(u64) -> Result<(), String>;

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn class_of(form: &Form) -> Result<WittClass, String> {
    if form.dim() == 0 {
        return Ok(WittClass::zero(
            form.p(),
            forms::witt_group(form.p(), form.sign, form.kind),
        ));
    }
    forms::witt_class(form).map_err(|e| format!("class computation failed: {e}"))
}

/// A random unit-determinant congruence over the variable-free ring.
fn random_congruence(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Mat {
    let mut e = Mat::identity(p, 0, n);
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let mut t = Mat::identity(p, 0, n);
        t.set(i, j, Poly::constant(p, 0, rng.gen_range(0..p as i64)));
        e = e.mul(&t);
    }
    e
}

// ---------------------------------------------------------------------------
// 1. Witt tables
// ---------------------------------------------------------------------------

fn witt_tables(seed: u64) -> Result<(), String> {
    let start = Instant::now();
    for p in [2u64, 3, 5, 7, 13, 17] {
        let sign: i8 = if p == 2 { -1 } else { 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100 + p);
        let mut prev: Option<(Form, WittClass)> = None;
        for i in 0..500 {
            let f = random_quadratic(&mut rng, p, sign, 8);
            let c = witt_class_f(&f).map_err(|e| e.to_string())?;
            // Additivity against the previous sample.
            if let Some((g, cg)) = &prev {
                let sum = f.dsum(g).map_err(|e| e.to_string())?;
                let csum = witt_class_f(&sum).map_err(|e| e.to_string())?;
                if csum != c.add(cg).map_err(|e| e.to_string())? {
                    return fail(format!("additivity failed at p={p}, sample {i}"));
                }
            }
            // φ ⊕ −φ is trivial.
            let opp = f.dsum(&f.neg()).map_err(|e| e.to_string())?;
            if !witt_class_f(&opp).map_err(|e| e.to_string())?.is_zero() {
                return fail(format!("phi + (-phi) not trivial at p={p}, sample {i}"));
            }
            // Stability under ⊕η and congruence.
            let stab = f
                .dsum(&forms::trivial_eta(p, 0, 1, sign))
                .map_err(|e| e.to_string())?;
            if witt_class_f(&stab).map_err(|e| e.to_string())? != c {
                return fail(format!("eta-stability failed at p={p}, sample {i}"));
            }
            let e = random_congruence(&mut rng, p, f.dim());
            if witt_class_f(&f.congruence(&e)).map_err(|e| e.to_string())? != c {
                return fail(format!("congruence invariance failed at p={p}, sample {i}"));
            }
            prev = Some((f, c));
        }
        // Generator orders.
        let order = |c: &WittClass| -> u32 {
            (1..=4)
                .find(|&k| c.times(k).is_zero())
                .expect("all classes have order dividing 4")
        };
        if p == 2 {
            let arf = Form::quadratic(-1, Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]]))
                .map_err(|e| e.to_string())?;
            if order(&witt_class_f(&arf).map_err(|e| e.to_string())?) != 2 {
                return fail("the Arf generator should have order 2");
            }
        } else {
            let d1 = Form::quadratic(1, Mat::from_ints(p, 0, &[&[1]])).map_err(|e| e.to_string())?;
            let want = if p % 4 == 3 { 4 } else { 2 };
            let got = order(&witt_class_f(&d1).map_err(|e| e.to_string())?);
            if got != want {
                return fail(format!("[diag(1)] over F_{p} has order {got}, expected {want}"));
            }
        }
    }
    let dt = start.elapsed();
    if dt.as_secs_f64() >= 10.0 {
        return fail(format!("runtime {dt:?} exceeds 10 s"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2. Exponent law
// ---------------------------------------------------------------------------

fn exponent_law(seed: u64) -> Result<(), String> {
    for p in [2u64, 3, 5, 7, 13, 17] {
        let sign: i8 = if p == 2 { -1 } else { 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 200 + p);
        for _ in 0..50 {
            let f = random_quadratic(&mut rng, p, sign, 6);
            let c = witt_class_f(&f).map_err(|e| e.to_string())?;
            if !c.times(4).is_zero() {
                return fail(format!("4*class != 0 over F_{p}"));
            }
            if (p == 2 || p % 4 == 1) && !c.times(2).is_zero() {
                return fail(format!("2*class != 0 over F_{p}"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 3. 1D decomposition
// ---------------------------------------------------------------------------

fn decomposition_1d(seed: u64) -> Result<(), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 300);
    let primes = [2u64, 3, 5];
    let mut done = 0;
    while done < 200 {
        let p = primes[done % 3];
        let q = rng.gen_range(1..=3);
        let len = rng.gen_range(1..=30);
        let c = random_circuit(&mut rng, p, 1, q, -1, len, 2, false);
        let u = c.eval().map_err(|e| e.to_string())?;
        let (lo, hi) = u.mat().z_spread(0);
        if hi - lo > 8 {
            continue; // resample within the stated spread budget
        }
        let circ = decompose_1d_any(u.mat()).map_err(|e| format!("decompose failed: {e}"))?;
        let back = circ.eval().map_err(|e| e.to_string())?;
        if back.mat() != u.mat() {
            return fail(format!("round trip mismatch at case {done} (p={p}, q={q})"));
        }
        done += 1;
    }
    let dt = start.elapsed();
    if dt.as_secs_f64() >= 30.0 {
        return fail(format!("runtime {dt:?} exceeds 30 s"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 4. Boundary-form invariance
// ---------------------------------------------------------------------------

fn boundary_invariance(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 400);
    let primes = [2u64, 3, 5];
    for case in 0..100 {
        let p = primes[case % 3];
        let q = rng.gen_range(1..=2);
        let c = random_circuit(&mut rng, p, 1, q, -1, 6, 2, true);
        let u = c.eval().map_err(|e| e.to_string())?;
        let class = class_of(&boundary_form(&u, 0, true).map_err(|e| e.to_string())?)?;
        // Elementary multipliers on both sides.
        let h = gen_h(p, 1, q, -1, rng.gen_range(0..q)).map_err(|e| e.to_string())?;
        let mut alpha = Mat::identity(p, 1, q);
        alpha.set(0, 0, Poly::var_pow(p, 1, 0, rng.gen_range(-1..=1)));
        let x = gen_x(&alpha, -1).map_err(|e| e.to_string())?;
        let mut theta = Mat::zero(p, 1, q, q);
        theta.set(
            q - 1,
            q - 1,
            Poly::var(p, 1, 0).add(&Poly::var_pow(p, 1, 0, -1)),
        );
        let z = gen_z(&theta, -1).map_err(|e| e.to_string())?;
        let zd = gen_zdag(&theta, -1).map_err(|e| e.to_string())?;
        for g in [&h, &x, &z, &zd] {
            for prod in [g.mul(&u), u.mul(g)] {
                let prod = prod.map_err(|e| e.to_string())?;
                let c2 = class_of(&boundary_form(&prod, 0, true).map_err(|e| e.to_string())?)?;
                if c2.value != class.value {
                    return fail(format!("generator multiplication moved the class (case {case})"));
                }
            }
            // Generators alone are class 0.
            let cg = class_of(&boundary_form(g, 0, true).map_err(|e| e.to_string())?)?;
            if !cg.is_zero() {
                return fail(format!("a bare generator has nonzero class (case {case})"));
            }
        }
        // Stabilization.
        let stab = u
            .hat_dsum(&Unitary::identity(p, 1, 1, Flavor::ETA_MINUS))
            .map_err(|e| e.to_string())?;
        let cs = class_of(&boundary_form(&stab, 0, true).map_err(|e| e.to_string())?)?;
        if cs.value != class.value {
            return fail(format!("stabilization moved the class (case {case})"));
        }
        // Threshold margins.
        let bm = boundary_module_of_unitary(&u, 0, None).map_err(|e| e.to_string())?;
        for margin in 1..=2 {
            let bm2 = boundary_module_of_unitary(&u, 0, Some(bm.n + margin))
                .map_err(|e| e.to_string())?;
            let f2 = boundary_form_of_module(&u, &bm2, true).map_err(|e| e.to_string())?;
            if class_of(&f2)?.value != class.value {
                return fail(format!("margin {margin} moved the class (case {case})"));
            }
        }
        // Identity alone is class 0.
        let id = Unitary::identity(p, 1, q, Flavor::ETA_MINUS);
        if !class_of(&boundary_form(&id, 0, true).map_err(|e| e.to_string())?)?.is_zero() {
            return fail("identity has nonzero class");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 5. Round trip A: form -> unitary -> form
// ---------------------------------------------------------------------------

fn round_trip_a(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 500);
    let primes = [2u64, 3, 5, 7];
    for case in 0..100 {
        let p = primes[case % 4];
        let sign: i8 = if p == 2 { -1 } else { 1 };
        let f = random_quadratic(&mut rng, p, sign, 4);
        let u = ascend_form(&f, 0).map_err(|e| format!("ascent failed: {e}"))?;
        let b = boundary_form(&u, 0, true).map_err(|e| format!("boundary failed: {e}"))?;
        let cf = witt_class_f(&f).map_err(|e| e.to_string())?;
        let cb = class_of(&b)?;
        if cb.value != cf.value {
            return fail(format!(
                "class changed: {:?} -> {:?} (case {case}, p={p}, dim {})",
                cf.value,
                cb.value,
                f.dim()
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 6. Round trip B: unitary -> form -> unitary
// ---------------------------------------------------------------------------

fn round_trip_b(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 600);
    let primes = [2u64, 3, 5];
    for case in 0..50 {
        let p = primes[case % 3];
        let q = rng.gen_range(1..=2);
        let c = random_circuit(&mut rng, p, 1, q, -1, 5, 1, true);
        let u = c.eval().map_err(|e| e.to_string())?;
        let herm = ascend_unitary_hermitian(&u, 1).map_err(|e| format!("ascent failed: {e}"))?;
        let down = descend_form(&herm, 1).map_err(|e| format!("descent failed: {e}"))?;
        if !down.flavor().eta {
            return fail(format!("descended unitary lost the eta flavor (case {case})"));
        }
        let cu = class_of(&boundary_form(&u, 0, true).map_err(|e| e.to_string())?)?;
        let cd = class_of(&boundary_form(&down, 0, true).map_err(|e| e.to_string())?)?;
        if cu.value != cd.value {
            return fail(format!(
                "boundary class changed: {:?} -> {:?} (case {case}, p={p})",
                cu.value, cd.value
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 7. Anticommuting diagram
// ---------------------------------------------------------------------------

fn anticommuting_diagram(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 700);
    let primes = [2u64, 3, 5, 7];
    for case in 0..50 {
        let p = primes[case % 4];
        let sign: i8 = if p == 2 { -1 } else { 1 };
        // A constant quadratic form embedded over F_p[y], made honestly
        // y-dependent by a unimodular congruence (class-preserving).
        let f0 = random_quadratic(&mut rng, p, sign, 3);
        let mut fy = embed_form(&f0, 0);
        let n = fy.dim();
        let mut e = Mat::identity(p, 1, n);
        for _ in 0..3 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let mut t = Mat::identity(p, 1, n);
            t.set(
                i,
                j,
                Poly::monomial(p, 1, &[rng.gen_range(-1..=1)], rng.gen_range(0..p as i64)),
            );
            e = e.mul(&t);
        }
        fy = fy.congruence(&e);
        // Upper route: lift to a unitary over F_p[y,z], take the quadratic
        // boundary along y, pass to the associated hermitian form over F_p[z].
        let u = ascend_form(&fy, 1).map_err(|e| format!("form ascent failed: {e}"))?;
        let bq = boundary_form(&u, 0, true).map_err(|e| format!("boundary failed: {e}"))?;
        let h1 = Form::hermitian(sign, bq.assoc_mat()).map_err(|e| e.to_string())?;
        // Lower route: associated hermitian form over F_p[y], descend along y,
        // lift the variable-free unitary back up in z.
        let hy = Form::hermitian(sign, fy.assoc_mat()).map_err(|e| e.to_string())?;
        let down = descend_form(&hy, 0).map_err(|e| format!("descent failed: {e}"))?;
        let h2 = if down.q() == 0 {
            Form::hermitian(sign, Mat::zero(p, 1, 0, 0)).map_err(|e| e.to_string())?
        } else {
            ascend_unitary_hermitian(&down, 0).map_err(|e| format!("unitary ascent failed: {e}"))?
        };
        let c1 = class_of(&h1)?;
        let c2 = class_of(&h2)?;
        if c1.value != c2.neg().value {
            return fail(format!(
                "routes gave {:?} and {:?}, not mutual negatives (case {case}, p={p})",
                c1.value, c2.value
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 8. Cluster-state QCA
// ---------------------------------------------------------------------------

fn cluster_state(_seed: u64) -> Result<(), String> {
    let u = qubit_generator_1d();
    if !check_eta(u.mat(), -1) {
        return fail("the qubit generator fails the eta check");
    }
    let b = boundary_form(&u, 0, true).map_err(|e| e.to_string())?;
    let c = class_of(&b)?;
    if c.value != (1, 0) {
        return fail(format!("boundary class is {:?}, expected (1, 0)", c.value));
    }
    // Image of the Z generator: X-part z + 1 + 1/z, Z-part z + 1/z — the
    // Y·X·Y pattern on three consecutive sites.
    let p = 2;
    let z = Poly::var(p, 1, 0);
    let zi = Poly::var_pow(p, 1, 0, -1);
    let yxy_x = z.add(&Poly::one(p, 1)).add(&zi);
    let yxy_z = z.add(&zi);
    if u.mat().at(0, 1) != &yxy_x || u.mat().at(1, 1) != &yxy_z {
        return fail("the Z-column is not the Y·X·Y vector");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 9. Time reversal
// ---------------------------------------------------------------------------

fn time_reversal(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 900);
    for case in 0..100 {
        let nvars = 1 + case % 2;
        let q = rng.gen_range(1..=2);
        let c = random_circuit(&mut rng, 2, nvars, q, -1, 6, 1, false);
        let v = c.eval().map_err(|e| e.to_string())?;
        let norm = normalize_real(v.mat()).map_err(|e| format!("normalization failed: {e}"))?;
        // Reality: all Pauli images of the normalized unitary are real,
        // i.e. the eta identity holds exactly.
        if !check_eta(norm.u.mat(), -1) {
            return fail(format!("normalized output is not real (case {case})"));
        }
        if norm.recompose().map_err(|e| e.to_string())? != *v.mat() {
            return fail(format!("recomposition mismatch (case {case})"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 10. Identities
// ---------------------------------------------------------------------------

fn identities(seed: u64) -> Result<(), String> {
    // (Z(1)·H)^3 = I over F_2.
    let z1 = gen_z(&Mat::from_ints(2, 0, &[&[1]]), -1).map_err(|e| e.to_string())?;
    let h = gen_h(2, 0, 1, -1, 0).map_err(|e| e.to_string())?;
    let zh = z1.mat().mul(h.mat());
    if !zh.mul(&zh).mul(&zh).is_identity() {
        return fail("(Z(1)H)^3 != I over F_2");
    }
    // The four-matrix factorization of H ⊕̂ H into shears and a slot swap.
    for p in [2u64, 3, 5] {
        for s in [-1i64, 1] {
            let e = -s;
            let a = Mat::from_ints(
                p,
                0,
                &[&[1, 0, 0, e], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
            );
            let b = Mat::from_ints(
                p,
                0,
                &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, -1, 1, 0], &[s, 0, 0, 1]],
            );
            let d = Mat::from_ints(
                p,
                0,
                &[&[0, 1, 0, 0], &[e, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, e, 0]],
            );
            let prod = a.mul(&b).mul(&a).mul(&d);
            let hq = gen_h(p, 0, 1, s as i8, 0).map_err(|e| e.to_string())?;
            let hh = hq.hat_dsum(&hq).map_err(|e| e.to_string())?;
            if prod != *hh.mat() {
                return fail(format!("four-matrix product != H+H (p={p}, s={s})"));
            }
        }
    }
    // Lifting the Fourier generator gives the negative trivial hermitian form.
    for p in [2u64, 3, 5] {
        let hm = gen_h(p, 0, 1, -1, 0).map_err(|e| e.to_string())?;
        let lifted = ascend_unitary_hermitian(&hm, 0).map_err(|e| e.to_string())?;
        if lifted.mat != Mat::from_ints(p, 1, &[&[0, -1], &[-1, 0]]) {
            return fail(format!("lift of the Fourier generator is wrong over F_{p}"));
        }
    }
    // Substituting the new variable to 1 undoes every form ascent.
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
    for p in [2u64, 3, 5, 7] {
        let sign: i8 = if p == 2 { -1 } else { 1 };
        for _ in 0..5 {
            let f = random_quadratic(&mut rng, p, sign, 3);
            let u = ascend_form(&f, 0).map_err(|e| e.to_string())?;
            if !u.mat().substitute_one(0).is_identity() {
                return fail(format!("ascent does not collapse to I at z=1 (p={p})"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 11. Representatives
// ---------------------------------------------------------------------------

fn representatives(_seed: u64) -> Result<(), String> {
    for p in [2u64, 3, 5] {
        let start = Instant::now();
        let gen_value = (1u8, 0u8);
        let r = representative(p, 3, gen_value).map_err(|e| format!("chain failed (p={p}): {e}"))?;
        let dt = start.elapsed();
        if dt.as_secs_f64() >= 5.0 {
            return fail(format!("p={p} took {dt:?}, over the 5 s budget"));
        }
        let u = &r.unitary;
        if u.nvars() != 3 {
            return fail(format!("p={p}: expected 3 variables, got {}", u.nvars()));
        }
        if !check_lambda(u.mat(), -1) {
            return fail(format!("p={p}: output fails the lambda- check"));
        }
        if !u.mat().is_unit_det() {
            return fail(format!("p={p}: determinant is not a unit"));
        }
        let collapsed = u.mat().substitute_one(2).substitute_one(1).substitute_one(0);
        if !collapsed.is_identity() {
            return fail(format!("p={p}: all-variables-to-1 does not give I"));
        }
        if r.seed_class.value != gen_value {
            return fail(format!("p={p}: seed class is {:?}", r.seed_class.value));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 12. Classification sanity
// ---------------------------------------------------------------------------

fn classification_sanity(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed + 1200);
    let primes = [2u64, 3, 5];
    for case in 0..100 {
        let p = primes[case % 3];
        let q = rng.gen_range(1..=2);
        let c = random_circuit(&mut rng, p, 2, q, -1, 5, 1, false);
        let u = c.eval().map_err(|e| e.to_string())?;
        let desc = classify(&u).map_err(|e| format!("classify failed (case {case}): {e}"))?;
        if !desc.is_zero() {
            return fail(format!("2-variable circuit classified nonzero (case {case})"));
        }
        // Coarse-graining invariance on a sample of the cases.
        if case < 9 {
            let b = 2 + (case % 3) as u32;
            let var = case % 2;
            let cg = Unitary::new(u.mat().coarse_grain(var, b).unwrap(), u.flavor())
                .map_err(|e| e.to_string())?;
            if !classify(&cg).map_err(|e| e.to_string())?.is_zero() {
                return fail(format!("coarse-grained classification moved (case {case}, b={b})"));
            }
        }
    }
    // A nonzero one-variable class is also coarse-grain invariant.
    let u = qubit_generator_1d();
    for b in [2u32, 3, 4] {
        let cg = Unitary::new(u.mat().coarse_grain(0, b).unwrap(), u.flavor())
            .map_err(|e| e.to_string())?;
        if classify(&cg).map_err(|e| e.to_string())?.value != (1, 0) {
            return fail(format!("coarse-graining the qubit generator by {b} moved the class"));
        }
    }
    // The 4-fold direct sum kills every table generator form.
    let arf = Form::quadratic(-1, Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]])).unwrap();
    if !cg_kill_check(&arf, 4).map_err(|e| e.to_string())? {
        return fail("Arf generator survives b=4");
    }
    for p in [3u64, 5, 7, 13] {
        let d1 = Form::quadratic(1, Mat::from_ints(p, 0, &[&[1]])).unwrap();
        if !cg_kill_check(&d1, 4).map_err(|e| e.to_string())? {
            return fail(format!("diag(1) over F_{p} survives b=4"));
        }
        let g = crate::fp::smallest_nonresidue(p) as i64;
        let dg = Form::quadratic(1, Mat::from_ints(p, 0, &[&[g]])).unwrap();
        if !cg_kill_check(&dg, 4).map_err(|e| e.to_string())? {
            return fail(format!("diag(g) over F_{p} survives b=4"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// The twelve named checks, in report order.
pub fn checks() -> [(&'static str, Check); 12] {
    [
        ("01 witt-tables", witt_tables),
        ("02 exponent-law", exponent_law),
        ("03 decomposition-1d", decomposition_1d),
        ("04 boundary-invariance", boundary_invariance),
        ("05 round-trip-form-unitary-form", round_trip_a),
        ("06 round-trip-unitary-form-unitary", round_trip_b),
        ("07 anticommuting-diagram", anticommuting_diagram),
        ("08 cluster-state", cluster_state),
        ("09 time-reversal", time_reversal),
        ("10 identities", identities),
        ("11 representatives", representatives),
        ("12 classification-sanity", classification_sanity),
    ]
}

/// Run every check with the given base seed, collecting the outcomes.
pub fn run(seed: u64) -> Vec<(&'static str, Result<(), String>)> {
    checks().into_iter().map(|(name, check)| (name, check(seed))).collect()
}
