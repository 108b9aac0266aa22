//! The end-to-end classification pipeline: the group table, complete
//! invariants for up to two variables, certified representatives built by
//! ascent chains, coarse-graining kill checks, and blending certificates.

use crate::ascent::{ascend_form, ascend_unitary_quadratic};
use crate::descent::{boundary_form, descend_form};
use crate::error::{Error, Result};
use crate::forms::{self, Form, FormKind, WittClass, WittGroup};
use crate::fp;
use crate::matrix::Mat;
use crate::ring::Poly;
use crate::unitary::{decompose_1d_any, lambda_mat, Circuit, Flavor, Gate, Unitary};

// ---------------------------------------------------------------------------
// The classification table
// ---------------------------------------------------------------------------

/// The classification group of translation-invariant Clifford QCA on `d`
/// dimensions with prime-`p` qudits, modulo shifts, circuits and
/// stabilization.
pub fn table(d: usize, p: u64) -> Result<WittGroup> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(if p == 2 {
        if d >= 3 && d % 2 == 1 {
            WittGroup::Z2
        } else {
            WittGroup::Trivial
        }
    } else if d % 4 == 3 {
        if p % 4 == 3 {
            WittGroup::Z4
        } else {
            WittGroup::Z2xZ2
        }
    } else {
        WittGroup::Trivial
    })
}

// ---------------------------------------------------------------------------
// Class descriptors
// ---------------------------------------------------------------------------

/// How a class value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Evaluated by the complete low-dimensional invariant.
    Computed,
    /// Carried along an explicit ascent chain from a seed of known class;
    /// never recomputed in three or more variables.
    CertifiedByConstruction,
}

/// The result of classifying a unitary.
#[derive(Clone, Debug)]
pub struct ClassDescriptor {
    pub d: usize,
    pub p: u64,
    pub group: WittGroup,
    pub value: (u8, u8),
    pub provenance: Provenance,
    /// For λ-flavored inputs of sign −1 in at most one variable: an elementary
    /// circuit evaluating to the input.
    pub witness: Option<Circuit>,
    /// For one- and two-variable inputs: the boundary form the class was read
    /// from (the intermediate lower-dimensional data in two variables).
    pub boundary: Option<Form>,
    /// For two-variable inputs: the variable-free unitary at the end of the
    /// boundary/descent chain.
    pub descended: Option<Unitary>,
}

impl ClassDescriptor {
    pub fn is_zero(&self) -> bool {
        self.value == (0, 0)
    }
}

impl std::fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let prov = match self.provenance {
            Provenance::Computed => "computed",
            Provenance::CertifiedByConstruction => "certified-by-construction",
        };
        match self.group {
            WittGroup::Z2xZ2 => {
                write!(f, "class ({},{}) in {} [{prov}]", self.value.0, self.value.1, self.group)
            }
            _ => write!(f, "class {} in {} [{prov}]", self.value.0, self.group),
        }
    }
}

/// Classify a unitary in at most two variables by its stored flavor: the
/// η-refined invariant when the flavor is η, the coarse one otherwise.
///
/// Zero variables always give 0; one variable gives 0 for λ-flavor (with a
/// decomposition witness when the sign is −1) and the quadratic boundary Witt
/// class for η-flavor; two variables run the boundary/descent chain down to a
/// variable-free unitary and assert the resulting class is 0.  Three or more
/// variables are refused — build such inputs with [`representative`] to carry
/// a certified class instead.
pub fn classify(u: &Unitary) -> Result<ClassDescriptor> {
    let d = u.nvars();
    let p = u.p();
    let witness = |u: &Unitary| -> Option<Circuit> {
        if u.flavor().sign == -1 {
            decompose_1d_any(u.mat()).ok()
        } else {
            None
        }
    };
    match d {
        0 => Ok(ClassDescriptor {
            d,
            p,
            group: table(0, p)?,
            value: (0, 0),
            provenance: Provenance::Computed,
            witness: witness(u),
            boundary: None,
            descended: None,
        }),
        1 => {
            if u.flavor().eta {
                let b = boundary_form(u, 0, true)?;
                let class = if b.dim() == 0 {
                    WittClass::zero(p, forms::witt_group(p, u.flavor().sign, FormKind::Quadratic))
                } else {
                    forms::witt_class_f(&b)?
                };
                Ok(ClassDescriptor {
                    d,
                    p,
                    group: class.group,
                    value: class.value,
                    provenance: Provenance::Computed,
                    witness: witness(u),
                    boundary: Some(b),
                    descended: None,
                })
            } else {
                Ok(ClassDescriptor {
                    d,
                    p,
                    group: table(1, p)?,
                    value: (0, 0),
                    provenance: Provenance::Computed,
                    witness: witness(u),
                    boundary: None,
                    descended: None,
                })
            }
        }
        2 => {
            // Boundary along the second variable (an even hermitian form over
            // a one-variable base), descent along the first, landing on a
            // variable-free unitary whose class is 0 over a field.
            let b = boundary_form(u, 1, false)?;
            let down = descend_form(&b, 0)?;
            Ok(ClassDescriptor {
                d,
                p,
                group: table(2, p)?,
                value: (0, 0),
                provenance: Provenance::Computed,
                witness: None,
                boundary: Some(b),
                descended: Some(down),
            })
        }
        _ => Err(Error::UnsupportedDimension(format!(
            "{d} variables; computed invariants stop at 2"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Certified representatives
// ---------------------------------------------------------------------------

/// A unitary whose class is certified by the ascent chain that built it.
#[derive(Clone, Debug)]
pub struct CertifiedUnitary {
    pub unitary: Unitary,
    /// The variable-free quadratic form the chain started from.
    pub seed: Form,
    pub seed_class: WittClass,
}

impl CertifiedUnitary {
    pub fn descriptor(&self) -> Result<ClassDescriptor> {
        let d = self.unitary.nvars();
        let p = self.unitary.p();
        let group = table(d, p)?;
        if self.seed_class.group != group && !self.seed_class.is_zero() {
            return Err(Error::Internal("certified class lies in the wrong group".into()));
        }
        Ok(ClassDescriptor {
            d,
            p,
            group,
            value: self.seed_class.value,
            provenance: Provenance::CertifiedByConstruction,
            witness: None,
            boundary: None,
            descended: None,
        })
    }
}

/// The hard-coded one-variable generator over qubits:
/// `[[z+1/z, z+1+1/z],[z+1+1/z, z+1/z]]`, an η⁻-unitary of boundary class
/// `1 ∈ Z/2`.
pub fn qubit_generator_1d() -> Unitary {
    let p = 2;
    let z = Poly::var(p, 1, 0);
    let zi = Poly::var_pow(p, 1, 0, -1);
    let a = z.add(&zi);
    let b = z.add(&Poly::one(p, 1)).add(&zi);
    let m = Mat::from_rows(p, 1, vec![vec![a.clone(), b.clone()], vec![b, a]]);
    Unitary::new(m, Flavor::ETA_MINUS).expect("fixed generator is eta-minus")
}

/// The variable-free seed form of class `value` for an odd-dimensional chain
/// of `k` lift steps (sign `(−1)^k`, so the chain ends at sign −1).
fn seed_form(p: u64, sign: i8, value: (u8, u8)) -> Result<Form> {
    let mut blocks: Vec<Mat> = Vec::new();
    if p == 2 {
        for _ in 0..value.0 {
            blocks.push(Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]]));
        }
    } else {
        // The quadratic form diag(c) symmetrizes to diag(2c), so dividing by 2
        // puts the square-class bookkeeping back on c itself.
        let h = fp::inv(p, 2) as i64;
        let g = fp::smallest_nonresidue(p) as i64;
        for _ in 0..value.0 {
            blocks.push(Mat::from_ints(p, 0, &[&[h]]));
        }
        for _ in 0..value.1 {
            blocks.push(Mat::from_ints(p, 0, &[&[h * g]]));
        }
    }
    let mut mat = Mat::zero(p, 0, 0, 0);
    for b in blocks {
        mat = mat.form_dsum(&b);
    }
    Form::quadratic(sign, mat)
}

/// Build a unitary of certified class `value ∈ table(d, p)` by the alternating
/// ascent chain (form → unitary → form → …), one fresh variable per step.
/// Supported dimensions: those with a nontrivial table entry, plus the
/// one-variable η-refined qubit case and class 0 anywhere (the identity).
pub fn representative(p: u64, d: usize, value: (u8, u8)) -> Result<CertifiedUnitary> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if value == (0, 0) {
        let seed = Form::quadratic(-1, Mat::zero(p, 0, 0, 0))?;
        let group = if d == 1 && p == 2 {
            forms::witt_group(2, -1, FormKind::Quadratic)
        } else {
            table(d, p)?
        };
        return Ok(CertifiedUnitary {
            unitary: Unitary::identity(p, d, 1, Flavor::ETA_MINUS),
            seed,
            seed_class: WittClass::zero(p, group),
        });
    }
    if d == 1 && p == 2 {
        if value != (1, 0) {
            return Err(Error::Inconsistent(format!(
                "no class ({},{}) in Z/2",
                value.0, value.1
            )));
        }
        let u = qubit_generator_1d();
        let seed = Form::quadratic(-1, Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]]))?;
        let seed_class = forms::witt_class_f(&seed)?;
        return Ok(CertifiedUnitary { unitary: u, seed, seed_class });
    }
    let group = table(d, p)?;
    if !group.elements().contains(&value) {
        return Err(Error::Inconsistent(format!(
            "no class ({},{}) in {group} = table({d}, {p})",
            value.0, value.1
        )));
    }
    // d odd: k = (d+1)/2 form-to-unitary lifts, k−1 sign-flipping
    // unitary-to-form lifts in between; seed sign (−1)^k makes the final
    // unitary sign −1.
    let k = (d + 1) / 2;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let seed = seed_form(p, sign, value)?;
    let seed_class = forms::witt_class_f(&seed)?;
    if seed_class.value != value {
        return Err(Error::Internal(format!(
            "seed form realizes class ({},{}) instead of ({},{})",
            seed_class.value.0, seed_class.value.1, value.0, value.1
        )));
    }
    let mut u = ascend_form(&seed, 0)?;
    while u.nvars() < d {
        let f = ascend_unitary_quadratic(&u, u.nvars())?;
        u = ascend_form(&f, f.nvars() - 1)?;
    }
    // Postconditions: λ-flavor of sign −1 and collapse to I at all-variables→1.
    if u.flavor().sign != -1 {
        return Err(Error::Internal("ascent chain ended with the wrong sign".into()));
    }
    let mut collapsed = u.mat().clone();
    for _ in 0..d {
        collapsed = collapsed.substitute_one(0);
    }
    if !collapsed.is_identity() {
        return Err(Error::Internal("representative does not collapse to I".into()));
    }
    Ok(CertifiedUnitary { unitary: u, seed, seed_class })
}

// ---------------------------------------------------------------------------
// Coarse-graining kill check
// ---------------------------------------------------------------------------

/// Whether the Witt class of the `b`-fold direct sum of `φ` vanishes — the
/// class-level consequence of coarse-graining by `b` killing the image of the
/// variable-free embedding.
pub fn cg_kill_check(form: &Form, b: u32) -> Result<bool> {
    if !form.is_nonsingular() {
        return Err(Error::SingularForm);
    }
    let mut acc = form.clone();
    for _ in 1..b {
        acc = acc.dsum(form)?;
    }
    Ok(forms::witt_class_f(&acc)?.is_zero())
}

// ---------------------------------------------------------------------------
// Blending certificates
// ---------------------------------------------------------------------------

/// A finite witness that a unitary blends into the identity along one
/// variable: an invertible, form-preserving map on a window of `z`-levels
/// agreeing with the unitary on levels ≥ `n` and with the identity on levels
/// < `−n`.
#[derive(Clone, Debug)]
pub struct BlendCertificate {
    pub var: usize,
    /// Half-width: agreement thresholds at `±n`.
    pub n: i32,
    /// Window levels `window_lo ..= window_hi`.
    pub window_lo: i32,
    pub window_hi: i32,
    pub q: usize,
    /// The interpolating map on the window, level-major over the base ring.
    pub w: Mat,
}

/// The multiplication-by-`op` operator on window levels, as in the boundary
/// module computation but callable from here.
fn windowed(op: &Mat, var: usize, lo: i32, hi: i32, out_lo: i32, out_hi: i32) -> Mat {
    let r = op.rows();
    let c = op.cols();
    let in_levels = (hi - lo + 1).max(0) as usize;
    let out_levels = (out_hi - out_lo + 1).max(0) as usize;
    let mut big = Mat::zero(op.p(), op.nvars() - 1, out_levels * r, in_levels * c);
    for ko in 0..out_levels {
        for ki in 0..in_levels {
            let layer = op.z_layer(var, (out_lo + ko as i32) - (lo + ki as i32));
            if layer.is_zero() {
                continue;
            }
            for i in 0..r {
                for j in 0..c {
                    let e = layer.at(i, j);
                    if !e.is_zero() {
                        big.set(ko * r + i, ki * c + j, e.clone());
                    }
                }
            }
        }
    }
    big
}

/// Assemble a blending certificate for a unitary given as an explicit word of
/// elementary generators (η- or λ-factors), truncating each factor at level 0:
/// variable-free factors switch from `I` to the factor at level 0; shear
/// factors keep only the off-diagonal action with input and output levels
/// ≥ 0; diagonal `X` factors with monomial entries act as a cyclic shift on
/// the nonnegative levels.  The result is checked to be invertible and
/// λ-preserving on the window and to interpolate `I` below `−n` with the
/// word's product above `n`.
pub fn blend_certificate(circuit: &Circuit, var: usize) -> Result<BlendCertificate> {
    if var >= circuit.nvars {
        return Err(Error::UnknownVariable(format!("variable index {var} out of range")));
    }
    if circuit.gates.iter().any(|g| matches!(g, Gate::Stabilize(_))) {
        return Err(Error::Inconsistent(
            "blending certificates need a fixed-width factorization (no padding tokens)".into(),
        ));
    }
    let p = circuit.p;
    let q = circuit.q;
    let s = circuit.sign;
    let u = circuit.eval()?;
    // Total reach of the word along the variable.
    let mut total: i32 = 0;
    let mut factors: Vec<Unitary> = Vec::new();
    for g in &circuit.gates {
        let f = circuit.gate_unitary(g, q)?;
        let (lo, hi) = f.mat().z_spread(var);
        total += (-lo).max(hi).max(0);
        factors.push(f);
    }
    let n = total + 1;
    let top = n + 2 * total;
    let levels = (top + n + 1) as usize;
    let base_nv = circuit.nvars - 1;
    let wrap = |lev: i32| -> i32 {
        // Cyclic on the nonnegative part [0, top].
        (lev % (top + 1) + (top + 1)) % (top + 1)
    };
    let mut w = Mat::identity(p, base_nv, levels * 2 * q);
    for (f, g) in factors.iter().zip(&circuit.gates) {
        let m = f.mat();
        let (lo, hi) = m.z_spread(var);
        let wf = if lo == 0 && hi == 0 {
            // Variable-free: identity below level 0, the factor above.
            let mut b = Mat::identity(p, base_nv, levels * 2 * q);
            let layer = m.z_layer(var, 0);
            for lev in n..=top {
                let off = (lev + n) as usize * 2 * q;
                for i in 0..2 * q {
                    for j in 0..2 * q {
                        b.set(off + i, off + j, layer.at(i, j).clone());
                    }
                }
            }
            // Levels 0..n−1 also get the factor (the switch is at 0).
            for lev in 0..n {
                let off = (lev + n) as usize * 2 * q;
                for i in 0..2 * q {
                    for j in 0..2 * q {
                        b.set(off + i, off + j, layer.at(i, j).clone());
                    }
                }
            }
            b
        } else {
            match g {
                Gate::Z(_) | Gate::Ztilde(_) | Gate::Zdag(_) => {
                    // I + off-diagonal shear restricted to levels ≥ 0 on both
                    // sides.
                    let shear = m.sub(&Mat::identity(p, circuit.nvars, 2 * q));
                    let mut b = Mat::identity(p, base_nv, levels * 2 * q);
                    let conv = windowed(&shear, var, 0, top, 0, top);
                    for i in 0..conv.rows() {
                        for j in 0..conv.cols() {
                            let e = conv.at(i, j);
                            if !e.is_zero() {
                                let off = n as usize * 2 * q;
                                b.set(off + i, off + j, b.at(off + i, off + j).add(e));
                            }
                        }
                    }
                    b
                }
                Gate::X(alpha) => {
                    // Diagonal monomial entries: cyclic shift on the
                    // nonnegative levels, per slot, on both halves.
                    let mut b = Mat::identity(p, base_nv, levels * 2 * q);
                    for t in 0..q {
                        for tt in 0..q {
                            if t != tt && !alpha.at(t, tt).is_zero() {
                                return Err(Error::Inconsistent(
                                    "blending of X factors needs a diagonal argument".into(),
                                ));
                            }
                        }
                        let a = alpha.at(t, t);
                        let terms: Vec<_> = a.terms().collect();
                        if terms.len() != 1 {
                            return Err(Error::Inconsistent(
                                "blending of X factors needs monomial entries".into(),
                            ));
                        }
                        let (exps, _) = &terms[0];
                        let k = exps[var];
                        let coef = a.coeff_of_var_power(var, k);
                        let coef_inv_adj = coef.unit_inverse().ok_or_else(|| {
                            Error::Inconsistent("X entry is not a unit over the base".into())
                        })?;
                        let coef_dual = coef_inv_adj.involute();
                        // Clear the identity on the nonnegative levels of this
                        // slot, then place the wrapped shift.
                        for lev in 0..=top {
                            let src_x = (lev + n) as usize * 2 * q + t;
                            let src_z = (lev + n) as usize * 2 * q + q + t;
                            b.set(src_x, src_x, Poly::zero(p, base_nv));
                            b.set(src_z, src_z, Poly::zero(p, base_nv));
                        }
                        for lev in 0..=top {
                            let dst = wrap(lev + k);
                            let row_x = (dst + n) as usize * 2 * q + t;
                            let col_x = (lev + n) as usize * 2 * q + t;
                            b.set(row_x, col_x, coef.clone());
                            let row_z = (dst + n) as usize * 2 * q + q + t;
                            let col_z = (lev + n) as usize * 2 * q + q + t;
                            b.set(row_z, col_z, coef_dual.clone());
                        }
                    }
                    b
                }
                Gate::H(_) | Gate::Stabilize(_) => {
                    return Err(Error::Internal("H tokens are variable-free".into()))
                }
            }
        };
        w = w.mul(&wf);
    }
    // Identity below level 0 (stronger than the < −n requirement).
    for lev in 0..(n as usize) {
        for i in 0..2 * q {
            let col = lev * 2 * q + i;
            for r in 0..w.rows() {
                let expect_one = r == col;
                let e = w.at(r, col);
                if (expect_one && !e.is_one()) || (!expect_one && !e.is_zero()) {
                    return Err(Error::Internal("blend is not the identity below the seam".into()));
                }
            }
        }
    }
    // Agreement with the full product on input levels in [n, top − total].
    let full = windowed(u.mat(), var, n, top - total, -n, top);
    for (ci, lev) in (n..=(top - total)).enumerate() {
        let col0 = (lev + n) as usize * 2 * q;
        for i in 0..2 * q {
            for r in 0..w.rows() {
                if w.at(r, col0 + i) != full.at(r, ci * 2 * q + i) {
                    return Err(Error::Internal(
                        "blend disagrees with the unitary above the seam".into(),
                    ));
                }
            }
        }
    }
    // Invertibility and form preservation on the window.
    if !w.is_unit_det() {
        return Err(Error::Internal("blend is not invertible on the window".into()));
    }
    let lam0 = lambda_mat(p, base_nv, q, s);
    let mut lam_w = Mat::zero(p, base_nv, levels * 2 * q, levels * 2 * q);
    for lev in 0..levels {
        for i in 0..2 * q {
            for j in 0..2 * q {
                let e = lam0.at(i, j);
                if !e.is_zero() {
                    lam_w.set(lev * 2 * q + i, lev * 2 * q + j, e.clone());
                }
            }
        }
    }
    if w.adjoint().mul(&lam_w).mul(&w) != lam_w {
        return Err(Error::Internal("blend does not preserve the window form".into()));
    }
    Ok(BlendCertificate { var, n, window_lo: -n, window_hi: top, q, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::random_quadratic;
    use crate::unitary::{check_lambda, random_circuit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_entries() {
        assert_eq!(table(3, 2).unwrap(), WittGroup::Z2);
        assert_eq!(table(4, 3).unwrap(), WittGroup::Trivial);
        assert_eq!(table(7, 5).unwrap(), WittGroup::Z2xZ2);
        assert_eq!(table(3, 3).unwrap(), WittGroup::Z4);
        assert_eq!(table(3, 7).unwrap(), WittGroup::Z4);
        assert_eq!(table(3, 5).unwrap(), WittGroup::Z2xZ2);
        assert_eq!(table(5, 2).unwrap(), WittGroup::Z2);
        assert_eq!(table(5, 3).unwrap(), WittGroup::Trivial);
        assert_eq!(table(0, 2).unwrap(), WittGroup::Trivial);
        assert_eq!(table(1, 13).unwrap(), WittGroup::Trivial);
        assert_eq!(table(2, 2).unwrap(), WittGroup::Trivial);
        assert!(table(3, 4).is_err());
    }

    #[test]
    fn classify_low_dimensions() {
        // Shift gate: class 0 with a witness circuit.
        let shift = crate::unitary::gen_x(
            &Mat::from_rows(3, 1, vec![vec![Poly::var(3, 1, 0)]]),
            -1,
        )
        .unwrap();
        let desc = classify(&shift).unwrap();
        assert!(desc.is_zero());
        assert!(desc.witness.is_some());
        // Qubit generator: class 1 in Z/2.
        let u = qubit_generator_1d();
        let desc = classify(&u).unwrap();
        assert_eq!(desc.group, WittGroup::Z2);
        assert_eq!(desc.value, (1, 0));
        // Variable-free unitaries are always 0.
        let id0 = Unitary::identity(5, 0, 2, Flavor::ETA_MINUS);
        assert!(classify(&id0).unwrap().is_zero());
        // Three variables refused.
        let id3 = Unitary::identity(5, 3, 1, Flavor::ETA_MINUS);
        assert!(matches!(classify(&id3), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn classify_two_vars_and_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for p in [2u64, 3] {
            for _ in 0..3 {
                let c = random_circuit(&mut rng, p, 2, 1, -1, 5, 1, false);
                let u = c.eval().unwrap();
                let desc = classify(&u).unwrap();
                assert!(desc.is_zero());
                assert!(desc.descended.is_some());
                // Coarse-graining invariance.
                let cg = Unitary::new(u.mat().coarse_grain(0, 2).unwrap(), u.flavor()).unwrap();
                assert!(classify(&cg).unwrap().is_zero());
            }
        }
        // Classification of an eta one-variable input is invariant under
        // stabilization and circuit multiplication.
        for _ in 0..4 {
            let c = random_circuit(&mut rng, 2, 1, 2, -1, 6, 2, true);
            let u = c.eval().unwrap();
            let v = classify(&u).unwrap().value;
            let stab = u
                .hat_dsum(&Unitary::identity(2, 1, 1, Flavor::ETA_MINUS))
                .unwrap();
            assert_eq!(classify(&stab).unwrap().value, v);
            let c2 = random_circuit(&mut rng, 2, 1, 2, -1, 4, 1, true);
            let prod = c2.eval().unwrap().mul(&u).unwrap();
            assert_eq!(classify(&prod).unwrap().value, v);
        }
    }

    #[test]
    fn representatives_d1() {
        let r = representative(2, 1, (1, 0)).unwrap();
        assert_eq!(r.unitary.mat(), qubit_generator_1d().mat());
        assert_eq!(classify(&r.unitary).unwrap().value, r.seed_class.value);
        let r0 = representative(7, 3, (0, 0)).unwrap();
        assert!(r0.unitary.mat().is_identity());
        assert!(representative(2, 1, (3, 0)).is_err());
        assert!(representative(3, 3, (1, 1)).is_err());
    }

    #[test]
    fn representatives_d3() {
        for (p, value) in [(2u64, (1u8, 0u8)), (3, (1, 0)), (3, (2, 0)), (5, (1, 1))] {
            let r = representative(p, 3, value).unwrap();
            let u = &r.unitary;
            assert_eq!(u.nvars(), 3);
            assert!(check_lambda(u.mat(), -1), "p={p}");
            assert!(u.mat().is_unit_det());
            assert_eq!(r.seed_class.value, value);
            let desc = r.descriptor().unwrap();
            assert_eq!(desc.provenance, Provenance::CertifiedByConstruction);
            assert_eq!(desc.value, value);
        }
    }

    #[test]
    fn cg_kill_examples() {
        // Arf generator over F_2 dies at b = 2.
        let arf = Form::quadratic(-1, Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]])).unwrap();
        assert!(cg_kill_check(&arf, 2).unwrap());
        // diag(1) over F_3 has order 4.
        let d1 = Form::quadratic(1, Mat::from_ints(3, 0, &[&[1]])).unwrap();
        assert!(!cg_kill_check(&d1, 2).unwrap());
        assert!(cg_kill_check(&d1, 4).unwrap());
        // diag(1, g) over F_5 dies at b = 2.
        let g = fp::smallest_nonresidue(5) as i64;
        let dg = Form::quadratic(1, Mat::from_ints(5, 0, &[&[1, 0], &[0, g]])).unwrap();
        assert!(cg_kill_check(&dg, 2).unwrap());
        // Everything dies at b = 4 (the groups have exponent dividing 4).
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 5, 7] {
            let sign = if p == 2 { -1 } else { 1 };
            for _ in 0..5 {
                let f = random_quadratic(&mut rng, p, sign, 3);
                assert!(cg_kill_check(&f, 4).unwrap(), "p={p}");
            }
        }
    }

    #[test]
    fn blend_examples() {
        // A variable-free word blends trivially.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut c = random_circuit(&mut rng, 3, 0, 2, -1, 5, 0, false);
        c.nvars = 1;
        c.gates = c
            .gates
            .iter()
            .map(|g| match g {
                Gate::H(t) => Gate::H(*t),
                Gate::X(m) => Gate::X(m.insert_var(0)),
                Gate::Z(m) => Gate::Z(m.insert_var(0)),
                Gate::Ztilde(m) => Gate::Ztilde(m.insert_var(0)),
                Gate::Zdag(m) => Gate::Zdag(m.insert_var(0)),
                Gate::Stabilize(k) => Gate::Stabilize(*k),
            })
            .collect();
        let cert = blend_certificate(&c, 0).unwrap();
        assert!(cert.w.is_unit_det());
        // A shear with the variable.
        let p = 3;
        let theta = Mat::from_rows(
            p,
            1,
            vec![vec![Poly::var(p, 1, 0).add(&Poly::var_pow(p, 1, 0, -1))]],
        );
        let mut c = Circuit::new(p, 1, 1, -1);
        c.gates.push(Gate::Z(theta));
        let cert = blend_certificate(&c, 0).unwrap();
        assert!(cert.n >= 1);
        // The shift gate, via cyclic interpolation.
        let mut c = Circuit::new(p, 1, 1, -1);
        c.gates.push(Gate::X(Mat::from_rows(p, 1, vec![vec![Poly::var(p, 1, 0)]])));
        let cert = blend_certificate(&c, 0).unwrap();
        assert!(cert.w.is_unit_det());
        // Mixed word.
        let mut c = Circuit::new(p, 1, 1, -1);
        c.gates.push(Gate::H(0));
        c.gates
            .push(Gate::X(Mat::from_rows(p, 1, vec![vec![Poly::var_pow(p, 1, 0, -1)]])));
        c.gates.push(Gate::Ztilde(Mat::from_rows(p, 1, vec![vec![Poly::var(p, 1, 0)]])));
        let cert = blend_certificate(&c, 0).unwrap();
        assert!(cert.window_hi > cert.n);
    }
}
