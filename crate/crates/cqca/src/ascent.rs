//! Going-up maps: embedding into an extended ring, the swindle construction
//! lifting forms to unitaries in one more variable, and the explicit block
//! matrices lifting η-unitaries to hermitian or quadratic forms.

use crate::error::{Error, Result};
use crate::forms::{self, Form, FormKind};
use crate::matrix::Mat;
use crate::ring::Poly;
use crate::unitary::{check_eta, eta_mat, Flavor, Unitary};

/// View a form over a ring with one extra (unused) variable at `pos`.
pub fn embed_form(f: &Form, pos: usize) -> Form {
    Form { kind: f.kind, sign: f.sign, mat: f.mat.insert_var(pos) }
}

/// View a unitary over a ring with one extra (unused) variable at `pos`.
pub fn embed_unitary(u: &Unitary, pos: usize) -> Unitary {
    Unitary::new(u.mat().insert_var(pos), u.flavor())
        .expect("flavor checks are stable under ring extension")
}

/// Lift a nonsingular form on rank `m` to a unitary of half-dimension `m` in
/// one more variable `z` (inserted at `pos`): `U = T^{−1}·diag(zI, I)·T` where
/// `T` is the Witt-negation transition matrix of the form.  Quadratic input
/// yields an η-unitary, even hermitian input a λ-unitary, both of the input's
/// sign; substituting `z = 1` gives the identity.
pub fn ascend_form(f: &Form, pos: usize) -> Result<Unitary> {
    let s = f.sign;
    let t = match f.kind {
        FormKind::Quadratic => {
            let (_, t) = forms::witt_negative(f)?;
            t
        }
        FormKind::Hermitian => {
            if !f.is_nonsingular() {
                return Err(Error::SingularForm);
            }
            let dinv = f.mat.inverse()?;
            let psi = forms::split_hermitian(&dinv, s)?;
            let m = f.dim();
            let id = Mat::identity(f.p(), f.nvars(), m);
            let br = if s == 1 { psi.adjoint().neg() } else { psi.adjoint() };
            Mat::block2x2(&id, &psi, &id, &br)
        }
    };
    let m = f.dim();
    let tb = t.insert_var(pos);
    let p = f.p();
    let nv = f.nvars() + 1;
    let z = Poly::var(p, nv, pos);
    let mut mid = Mat::identity(p, nv, 2 * m);
    for i in 0..m {
        mid.set(i, i, z.clone());
    }
    let u = tb.inverse()?.mul(&mid).mul(&tb);
    if !u.substitute_one(pos).is_identity() {
        return Err(Error::Internal("form ascent does not evaluate to the identity".into()));
    }
    let flavor = Flavor { sign: s, eta: f.kind == FormKind::Quadratic };
    Unitary::new(u, flavor)
        .map_err(|_| Error::Internal("form ascent failed its flavor check".into()))
}

/// The four `q`-blocks of `U†ηU`, with the pairing sanity check `γ + sδ† = I`.
fn eta_conjugate_blocks(u: &Unitary) -> Result<(Mat, Mat, Mat, Mat)> {
    let q = u.q();
    let eta = eta_mat(u.p(), u.nvars(), q);
    let theta = u.mat().adjoint().mul(&eta).mul(u.mat());
    let xi = theta.submatrix(0, 0, q, q);
    let gamma = theta.submatrix(0, q, q, q);
    let delta = theta.submatrix(q, 0, q, q);
    let rho = theta.submatrix(q, q, q, q);
    let s = u.flavor().sign;
    let sd = if s == 1 { delta.adjoint() } else { delta.adjoint().neg() };
    if !gamma.add(&sd).is_identity() {
        return Err(Error::Internal("eta conjugate blocks fail the pairing identity".into()));
    }
    Ok((xi, gamma, delta, rho))
}

/// Lift an η-unitary of sign `s` to a nonsingular even hermitian form of sign
/// `−s` over the ring with one more variable `z` at `pos`:
/// `[[ξ, −zγ − sδ†],[δ + s z^{−1}γ†, (2 − z − z^{−1})ρ]]`
/// where `ξ, γ, δ, ρ` are the blocks of `U†ηU`.
pub fn ascend_unitary_hermitian(u: &Unitary, pos: usize) -> Result<Form> {
    if !u.flavor().eta || !check_eta(u.mat(), u.flavor().sign) {
        return Err(Error::FlavorCheck("eta".into(), "hermitian ascent input".into()));
    }
    let s = u.flavor().sign;
    let (xi, gamma, delta, rho) = eta_conjugate_blocks(u)?;
    let (xi, gamma, delta, rho) = (
        xi.insert_var(pos),
        gamma.insert_var(pos),
        delta.insert_var(pos),
        rho.insert_var(pos),
    );
    let p = u.p();
    let nv = u.nvars() + 1;
    let z = Poly::var(p, nv, pos);
    let zinv = Poly::var_pow(p, nv, pos, -1);
    let sgn = |m: &Mat| if s == 1 { m.clone() } else { m.neg() };
    let b12 = gamma.scalar_mul(&z).neg().sub(&sgn(&delta.adjoint()));
    let b21 = delta.add(&sgn(&gamma.adjoint().scalar_mul(&zinv)));
    let two_c = Poly::constant(p, nv, 2).sub(&z).sub(&zinv);
    let b22 = rho.scalar_mul(&two_c);
    let omega = Mat::block2x2(&xi, &b12, &b21, &b22);
    let form = Form::hermitian(-s, omega)
        .map_err(|_| Error::Internal("hermitian ascent output is not hermitian".into()))?;
    if !form.is_nonsingular() {
        return Err(Error::Internal("hermitian ascent output is singular".into()));
    }
    if !form.is_even() {
        return Err(Error::Internal("hermitian ascent output is not even".into()));
    }
    Ok(form)
}

/// Independent construction of the hermitian ascent: the five-matrix product
/// `diag(z/(z−1)·I, I) · U† · [[0, I],[s z^{−1} I, 0]] · U · diag(I, (1−z)·I)`
/// with the `z/(z−1)` factor realized by exact Laurent division.
pub fn ascend_unitary_hermitian_product(u: &Unitary, pos: usize) -> Result<Mat> {
    let s = u.flavor().sign;
    let q = u.q();
    let v = u.mat().insert_var(pos);
    let p = u.p();
    let nv = u.nvars() + 1;
    let z = Poly::var(p, nv, pos);
    let zinv = Poly::var_pow(p, nv, pos, -1);
    let mut mid = Mat::zero(p, nv, 2 * q, 2 * q);
    for i in 0..q {
        mid.set(i, q + i, Poly::one(p, nv));
        mid.set(q + i, i, zinv.scale(crate::fp::norm(p, s as i64)));
    }
    let mut right = Mat::identity(p, nv, 2 * q);
    let one_minus_z = Poly::one(p, nv).sub(&z);
    for i in 0..q {
        right.set(q + i, q + i, one_minus_z.clone());
    }
    let prod = v.adjoint().mul(&mid).mul(&v).mul(&right);
    // Multiply the top q rows by z/(z−1): exact division after scaling by z.
    let z_minus_one = z.sub(&Poly::one(p, nv));
    let mut out = prod.clone();
    for i in 0..q {
        for j in 0..2 * q {
            let scaled = prod.at(i, j).mul(&z);
            let divided = scaled.div_exact(&z_minus_one).ok_or(Error::Internal(
                "five-matrix product row is not divisible by (z - 1)".into(),
            ))?;
            out.set(i, j, divided);
        }
    }
    Ok(out)
}

/// Lift an η-unitary of sign `s` to a nonsingular quadratic form of sign `−s`:
/// `[[ξ′, −zγ],[δ, (1−z)ρ]]` with `ξ′` a splitting of `ξ`.  The associated
/// hermitian form equals [`ascend_unitary_hermitian`] exactly.
pub fn ascend_unitary_quadratic(u: &Unitary, pos: usize) -> Result<Form> {
    if !u.flavor().eta || !check_eta(u.mat(), u.flavor().sign) {
        return Err(Error::FlavorCheck("eta".into(), "quadratic ascent input".into()));
    }
    let s = u.flavor().sign;
    let t = -s;
    let (xi, gamma, delta, rho) = eta_conjugate_blocks(u)?;
    let xi_split = forms::split_hermitian(&xi, t)?;
    let (xi_split, gamma, delta, rho) = (
        xi_split.insert_var(pos),
        gamma.insert_var(pos),
        delta.insert_var(pos),
        rho.insert_var(pos),
    );
    let p = u.p();
    let nv = u.nvars() + 1;
    let z = Poly::var(p, nv, pos);
    let b12 = gamma.scalar_mul(&z).neg();
    let b22 = rho.scalar_mul(&Poly::one(p, nv).sub(&z));
    let omega = Mat::block2x2(&xi_split, &b12, &delta, &b22);
    let form = Form::quadratic(t, omega)?;
    if !form.is_nonsingular() {
        return Err(Error::Internal("quadratic ascent output is singular".into()));
    }
    // Cross-check: the associated hermitian form is the hermitian ascent.
    let herm = ascend_unitary_hermitian(u, pos)?;
    if form.assoc_mat() != herm.mat {
        return Err(Error::Internal(
            "quadratic ascent does not refine the hermitian ascent".into(),
        ));
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{trivial_eta, trivial_lambda, witt_class_1var, witt_class_f};
    use crate::unitary::{self, check_lambda, gen_h};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn embed_round_trips() {
        let f = Form::quadratic(3, Mat::from_ints(3, 0, &[&[1]]).clone()).unwrap_err();
        let _ = f; // sign validation sanity
        let f = Form::quadratic(1, Mat::from_ints(3, 0, &[&[1]])).unwrap();
        let e = embed_form(&f, 0);
        assert_eq!(e.nvars(), 1);
        assert_eq!(e.mat.substitute_one(0), f.mat);
        let h = gen_h(3, 0, 1, -1, 0).unwrap();
        let eu = embed_unitary(&h, 0);
        assert_eq!(eu.mat().substitute_one(0), *h.mat());
    }

    #[test]
    fn ascend_form_examples() {
        // φ = [[1]] over F_3, s = +1: the lifted matrix is explicit.
        let f = Form::quadratic(1, Mat::from_ints(3, 0, &[&[1]])).unwrap();
        let u = ascend_form(&f, 0).unwrap();
        let z = Poly::var(3, 1, 0);
        let want = |a: i64, b: i64| z.scale(a as u64).add(&Poly::constant(3, 1, b));
        assert_eq!(u.mat().at(0, 0), &want(2, 2));
        assert_eq!(u.mat().at(0, 1), &want(2, 1));
        assert_eq!(u.mat().at(1, 0), &want(2, 1));
        assert_eq!(u.mat().at(1, 1), &want(2, 2));
        assert!(check_lambda(u.mat(), 1));
        assert!(u.mat().substitute_one(0).is_identity());
        // φ = η: evaluates to the identity at z = 1 and is η-flavored.
        for p in [2u64, 5] {
            let eta = trivial_eta(p, 0, 1, -1);
            let u = ascend_form(&eta, 0).unwrap();
            assert!(u.flavor().eta);
            assert!(u.mat().substitute_one(0).is_identity());
        }
        // Hermitian input lifts with a λ flavor.
        let lam = trivial_lambda(5, 0, 1, -1);
        let u = ascend_form(&lam, 0).unwrap();
        assert!(!u.flavor().eta);
        assert!(check_lambda(u.mat(), -1));
    }

    #[test]
    fn hermitian_ascent_examples() {
        // H⁻ lifts to −λ⁺₁ for every p.
        for p in [2u64, 3, 5] {
            let h = gen_h(p, 0, 1, -1, 0).unwrap();
            let f = ascend_unitary_hermitian(&h, 0).unwrap();
            let want = trivial_lambda(p, 1, 1, 1).mat.neg();
            assert_eq!(f.mat, want, "p={p}");
            assert_eq!(f.sign, 1);
            // The five-matrix product agrees.
            let prod = ascend_unitary_hermitian_product(&h, 0).unwrap();
            assert_eq!(prod, f.mat);
        }
        // U = I: trivial hyperbolic block, Witt-trivial after evaluation.
        let id = Unitary::identity(3, 0, 1, Flavor::ETA_MINUS);
        let f = ascend_unitary_hermitian(&id, 0).unwrap();
        let z = Poly::var(3, 1, 0);
        assert_eq!(f.mat.at(0, 1), &z.neg());
        assert!(witt_class_1var(&f).unwrap().is_zero());
        // gen_X lifts to the same shape as the identity (class 0).
        let alpha = Mat::from_rows(3, 1, vec![vec![Poly::var_pow(3, 1, 0, 2)]]);
        let x = unitary::gen_x(&alpha, -1).unwrap();
        let fx = ascend_unitary_hermitian(&x, 1).unwrap();
        assert!(witt_class_1var(&Form {
            kind: fx.kind,
            sign: fx.sign,
            mat: fx.mat.substitute_one(0),
        })
        .unwrap()
        .is_zero());
    }

    #[test]
    fn quadratic_ascent_examples() {
        for p in [2u64, 3] {
            let h = gen_h(p, 0, 1, -1, 0).unwrap();
            let f = ascend_unitary_quadratic(&h, 0).unwrap();
            assert_eq!(f.assoc_mat(), trivial_lambda(p, 1, 1, 1).mat.neg());
            // Evaluation at z = 1 is Witt-trivial.
            let ev = Form { kind: f.kind, sign: f.sign, mat: f.mat.substitute_one(0) };
            assert!(witt_class_f(&ev).unwrap().is_zero(), "p={p}");
            // Identity input gives a trivial quadratic form.
            let id = Unitary::identity(p, 0, 1, Flavor::ETA_MINUS);
            let ft = ascend_unitary_quadratic(&id, 0).unwrap();
            let evt = Form { kind: ft.kind, sign: ft.sign, mat: ft.mat.substitute_one(0) };
            assert!(witt_class_f(&evt).unwrap().is_zero());
        }
    }

    #[test]
    fn five_matrix_agrees_on_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for p in [2u64, 3, 5] {
            for _ in 0..6 {
                let q = rng.gen_range(1..=2);
                let c = unitary::random_circuit(&mut rng, p, 1, q, -1, 6, 2, true);
                let u = c.eval().unwrap();
                assert!(u.flavor().eta);
                let f = ascend_unitary_hermitian(&u, 0).unwrap();
                let prod = ascend_unitary_hermitian_product(&u, 0).unwrap();
                assert_eq!(prod, f.mat, "p={p} q={q}");
                // And the quadratic refinement is consistent (asserted inside).
                ascend_unitary_quadratic(&u, 0).unwrap();
            }
        }
    }

    #[test]
    fn round_trip_a_classes() {
        // boundary-free version: class of ε(z = 1) of B↑(φ) constructions is
        // exercised through the descent module; here check the flavor laws and
        // the substitution identity on random forms.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5] {
            let sign = if p == 2 { -1 } else { 1 };
            for _ in 0..10 {
                let n = rng.gen_range(1..=3);
                let mat = Mat::from_fn(p, 0, n, n, |_, _| {
                    Poly::constant(p, 0, rng.gen_range(0..p as i64))
                });
                let f = match Form::quadratic(sign, mat) {
                    Ok(f) if f.is_nonsingular() => f,
                    _ => continue,
                };
                let u = ascend_form(&f, 0).unwrap();
                assert!(u.flavor().eta);
                assert_eq!(u.flavor().sign, sign);
                assert!(u.mat().substitute_one(0).is_identity());
            }
        }
    }
}
