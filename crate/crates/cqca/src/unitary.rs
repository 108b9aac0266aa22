//! λ/η-unitary matrices over Laurent polynomial rings, elementary generators
//! and circuits, the Pauli transcription, time-reversal normalization over
//! qubits, and the one-variable Euclidean circuit decomposition.
//!
//! Block convention: a unitary of half-dimension `q` is a `2q × 2q` matrix
//! whose first `q` rows/columns are the X-part and last `q` the Z-part.
//! Column `j < q` is the image of the `j`-th Pauli-X generator, column `q + j`
//! the image of the `j`-th Pauli-Z generator.
//!
//! With `λ_s = [[0, I],[s·I, 0]]` and `η = [[0, I],[0, 0]]`:
//! * `U` is a λ-unitary of sign `s` when `U† λ_s U = λ_s`;
//! * `U` is an η-unitary of sign `s` when it is a λ-unitary and additionally
//!   `U† η U − η` has the shape `θ − s·θ†` — for odd `p` this is automatic,
//!   for `p = 2` it is the vanishing of the diagonal constant terms.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::pidlin::{self, laurent_divmod};
use crate::ring::Poly;

// ---------------------------------------------------------------------------
// Flavors and checks
// ---------------------------------------------------------------------------

/// The symmetry type a matrix preserves: the hermitian form `λ_s` alone, or the
/// quadratic form `η` of sign `s` up to even equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flavor {
    /// `+1` or `−1`.
    pub sign: i8,
    /// `true` for the refined quadratic (η) condition.
    pub eta: bool,
}

impl Flavor {
    pub const LAMBDA_MINUS: Flavor = Flavor { sign: -1, eta: false };
    pub const LAMBDA_PLUS: Flavor = Flavor { sign: 1, eta: false };
    pub const ETA_MINUS: Flavor = Flavor { sign: -1, eta: true };
    pub const ETA_PLUS: Flavor = Flavor { sign: 1, eta: true };
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = if self.eta { "eta" } else { "lambda" };
        let sign = if self.sign == 1 { "+" } else { "-" };
        write!(f, "{kind}{sign}")
    }
}

/// The trivial hermitian matrix `λ_s` on half-dimension `q`.
pub fn lambda_mat(p: u64, nvars: usize, q: usize, sign: i8) -> Mat {
    let mut m = Mat::zero(p, nvars, 2 * q, 2 * q);
    for i in 0..q {
        m.set(i, q + i, Poly::one(p, nvars));
        m.set(q + i, i, Poly::constant(p, nvars, sign as i64));
    }
    m
}

/// The trivial quadratic matrix `η` on half-dimension `q`.
pub fn eta_mat(p: u64, nvars: usize, q: usize) -> Mat {
    let mut m = Mat::zero(p, nvars, 2 * q, 2 * q);
    for i in 0..q {
        m.set(i, q + i, Poly::one(p, nvars));
    }
    m
}

/// Whether `U† λ_s U = λ_s` holds exactly.
pub fn check_lambda(m: &Mat, sign: i8) -> bool {
    if m.rows() != m.cols() || m.rows() % 2 != 0 {
        return false;
    }
    let lam = lambda_mat(m.p(), m.nvars(), m.rows() / 2, sign);
    m.adjoint().mul(&lam).mul(m) == lam
}

/// Whether `U` is an η-unitary of sign `s`: the λ-check plus, over `F_2`, the
/// vanishing of all diagonal constant terms of `U† η U − η`.
pub fn check_eta(m: &Mat, sign: i8) -> bool {
    if !check_lambda(m, sign) {
        return false;
    }
    if m.p() != 2 {
        return true;
    }
    let eta = eta_mat(m.p(), m.nvars(), m.rows() / 2);
    let diff = m.adjoint().mul(&eta).mul(m).sub(&eta);
    (0..diff.rows()).all(|i| diff.at(i, i).const_term() == 0)
}

/// A flavor-checked unitary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitary {
    mat: Mat,
    flavor: Flavor,
}

impl Unitary {
    pub fn new(mat: Mat, flavor: Flavor) -> Result<Unitary> {
        if mat.rows() != mat.cols() || mat.rows() % 2 != 0 {
            return Err(Error::Shape("unitary matrix must be square of even size".into()));
        }
        let ok = if flavor.eta {
            check_eta(&mat, flavor.sign)
        } else {
            check_lambda(&mat, flavor.sign)
        };
        if !ok {
            return Err(Error::FlavorCheck(
                flavor.to_string(),
                "matrix does not preserve the trivial form".into(),
            ));
        }
        Ok(Unitary { mat, flavor })
    }

    pub fn identity(p: u64, nvars: usize, q: usize, flavor: Flavor) -> Unitary {
        Unitary { mat: Mat::identity(p, nvars, 2 * q), flavor }
    }

    pub fn q(&self) -> usize {
        self.mat.rows() / 2
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn p(&self) -> u64 {
        self.mat.p()
    }

    pub fn nvars(&self) -> usize {
        self.mat.nvars()
    }

    pub fn mul(&self, other: &Unitary) -> Result<Unitary> {
        if self.flavor.sign != other.flavor.sign {
            return Err(Error::Shape("product of unitaries with different signs".into()));
        }
        // Both flavor groups are closed under products; the η property survives
        // only when both factors have it.
        let flavor = Flavor {
            sign: self.flavor.sign,
            eta: self.flavor.eta && other.flavor.eta,
        };
        Ok(Unitary { mat: self.mat.mul(&other.mat), flavor })
    }

    pub fn inverse(&self) -> Result<Unitary> {
        // U^{−1} = λ^{−1} U† λ; computed directly for exactness.
        let inv = self.mat.inverse()?;
        Unitary::new(inv, self.flavor)
    }

    pub fn hat_dsum(&self, other: &Unitary) -> Result<Unitary> {
        if self.flavor.sign != other.flavor.sign {
            return Err(Error::Shape("direct sum of unitaries with different signs".into()));
        }
        let flavor = Flavor {
            sign: self.flavor.sign,
            eta: self.flavor.eta && other.flavor.eta,
        };
        Ok(Unitary { mat: self.mat.hat_dsum(&other.mat)?, flavor })
    }
}

/// The time-reversal companion: flips the signs of the two off-diagonal
/// `q`-blocks, preserving the flavor.
pub fn trc_partner(u: &Unitary) -> Result<Unitary> {
    let q = u.q();
    let m = u.mat();
    let a = m.submatrix(0, 0, q, q);
    let b = m.submatrix(0, q, q, q).neg();
    let c = m.submatrix(q, 0, q, q).neg();
    let d = m.submatrix(q, q, q, q);
    Unitary::new(Mat::block2x2(&a, &b, &c, &d), u.flavor())
}

// ---------------------------------------------------------------------------
// Generators and circuits
// ---------------------------------------------------------------------------

/// One circuit token.  All matrix arguments are `q × q` where `q` is the
/// half-dimension current at the token's position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Fourier gate at one slot: `[[0, 1],[s, 0]]` on the slot's X/Z pair.
    H(usize),
    /// `diag(α, α^{−†})` for invertible `α`.
    X(Mat),
    /// Lower-triangular `[[I, 0],[θ, I]]` with `θ† = −s·θ` (hermitian tag).
    Z(Mat),
    /// `Z(θ − s·θ†)` for arbitrary `θ` — always η-flavored (quadratic tag).
    Ztilde(Mat),
    /// Upper-triangular `[[I, θ†],[0, I]]` with `θ† = −s·θ`.
    Zdag(Mat),
    /// Pad the ambient unitary with `k` fresh inert slots.
    Stabilize(usize),
}

/// An ordered word in the elementary generators.  Evaluation multiplies the
/// token matrices left to right: `eval([g_1, ..., g_n]) = M(g_1)···M(g_n)`.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub p: u64,
    pub nvars: usize,
    /// Half-dimension before the first token.
    pub q: usize,
    /// `+1` or `−1`.
    pub sign: i8,
    pub gates: Vec<Gate>,
}

/// The Fourier generator at `slot` of a half-dimension-`q` system.
pub fn gen_h(p: u64, nvars: usize, q: usize, sign: i8, slot: usize) -> Result<Unitary> {
    if slot >= q {
        return Err(Error::InvalidGenerator(format!("H slot {slot} out of range for q={q}")));
    }
    let mut m = Mat::identity(p, nvars, 2 * q);
    m.set(slot, slot, Poly::zero(p, nvars));
    m.set(q + slot, q + slot, Poly::zero(p, nvars));
    m.set(slot, q + slot, Poly::one(p, nvars));
    m.set(q + slot, slot, Poly::constant(p, nvars, sign as i64));
    Unitary::new(m, Flavor { sign, eta: true })
}

/// `diag(α, α^{−†})` for invertible `α`.
pub fn gen_x(alpha: &Mat, sign: i8) -> Result<Unitary> {
    if alpha.rows() != alpha.cols() {
        return Err(Error::InvalidGenerator("X argument must be square".into()));
    }
    let inv = alpha
        .inverse()
        .map_err(|_| Error::InvalidGenerator("X argument is not invertible".into()))?;
    let q = alpha.rows();
    let z = Mat::zero(alpha.p(), alpha.nvars(), q, q);
    let m = Mat::block2x2(alpha, &z, &z, &inv.adjoint());
    Unitary::new(m, Flavor { sign, eta: true })
}

/// `[[I, 0],[θ, I]]` for `θ† = −s·θ`.
pub fn gen_z(theta: &Mat, sign: i8) -> Result<Unitary> {
    check_theta(theta, sign)?;
    let q = theta.rows();
    let id = Mat::identity(theta.p(), theta.nvars(), q);
    let z = Mat::zero(theta.p(), theta.nvars(), q, q);
    let m = Mat::block2x2(&id, &z, theta, &id);
    // η-flavored exactly when the diagonal constant terms vanish (odd p: always).
    let eta = theta.p() != 2 || (0..q).all(|i| theta.at(i, i).const_term() == 0);
    Unitary::new(m, Flavor { sign, eta })
}

/// `Z(θ − s·θ†)` for arbitrary `θ`; always η-flavored.
pub fn gen_ztilde(theta: &Mat, sign: i8) -> Result<Unitary> {
    if theta.rows() != theta.cols() {
        return Err(Error::InvalidGenerator("Z argument must be square".into()));
    }
    let adj = theta.adjoint();
    let folded = if sign == 1 { theta.sub(&adj) } else { theta.add(&adj) };
    gen_z(&folded, sign)
}

/// `[[I, θ†],[0, I]]` for `θ† = −s·θ`.
pub fn gen_zdag(theta: &Mat, sign: i8) -> Result<Unitary> {
    check_theta(theta, sign)?;
    let q = theta.rows();
    let id = Mat::identity(theta.p(), theta.nvars(), q);
    let z = Mat::zero(theta.p(), theta.nvars(), q, q);
    let m = Mat::block2x2(&id, &theta.adjoint(), &z, &id);
    let eta = theta.p() != 2 || (0..q).all(|i| theta.at(i, i).const_term() == 0);
    Unitary::new(m, Flavor { sign, eta })
}

fn check_theta(theta: &Mat, sign: i8) -> Result<()> {
    if theta.rows() != theta.cols() {
        return Err(Error::InvalidGenerator("Z argument must be square".into()));
    }
    let want = if sign == 1 { theta.adjoint().neg() } else { theta.adjoint() };
    if want != *theta {
        return Err(Error::InvalidGenerator("Z argument fails θ† = −sθ".into()));
    }
    Ok(())
}

impl Circuit {
    pub fn new(p: u64, nvars: usize, q: usize, sign: i8) -> Circuit {
        Circuit { p, nvars, q, sign, gates: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The ordered product of the token matrices.
    pub fn eval(&self) -> Result<Unitary> {
        let mut q = self.q;
        let mut acc = Mat::identity(self.p, self.nvars, 2 * q);
        for g in &self.gates {
            match g {
                Gate::Stabilize(k) => {
                    let id = Mat::identity(self.p, self.nvars, 2 * k);
                    acc = acc.hat_dsum(&id)?;
                    q += k;
                }
                _ => {
                    let u = self.gate_unitary(g, q)?;
                    acc = acc.mul(u.mat());
                }
            }
        }
        // Flavor of the product: λ always holds; report η when it holds too.
        let eta = check_eta(&acc, self.sign);
        Unitary::new(acc, Flavor { sign: self.sign, eta })
    }

    /// The unitary of a single (non-padding) token at width `q`.
    pub fn gate_unitary(&self, g: &Gate, q: usize) -> Result<Unitary> {
        match g {
            Gate::H(slot) => gen_h(self.p, self.nvars, q, self.sign, *slot),
            Gate::X(alpha) => {
                if alpha.rows() != q {
                    return Err(Error::Shape("X gate size does not match circuit width".into()));
                }
                gen_x(alpha, self.sign)
            }
            Gate::Z(theta) => {
                if theta.rows() != q {
                    return Err(Error::Shape("Z gate size does not match circuit width".into()));
                }
                gen_z(theta, self.sign)
            }
            Gate::Ztilde(theta) => {
                if theta.rows() != q {
                    return Err(Error::Shape("Z gate size does not match circuit width".into()));
                }
                gen_ztilde(theta, self.sign)
            }
            Gate::Zdag(theta) => {
                if theta.rows() != q {
                    return Err(Error::Shape("Z gate size does not match circuit width".into()));
                }
                gen_zdag(theta, self.sign)
            }
            Gate::Stabilize(_) => unreachable!("handled in eval"),
        }
    }
}

// ---------------------------------------------------------------------------
// Pauli transcription
// ---------------------------------------------------------------------------

/// Whether a Pauli factor acts as an X or a Z operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliKind {
    X,
    Z,
}

/// One factor `X_g[offset]^power` or `Z_g[offset]^power` of a Pauli word
/// (phases dropped).  `gen` indexes the generator within a cell, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliFactor {
    pub kind: PauliKind,
    pub gen: usize,
    pub offset: Vec<i32>,
    pub power: i64,
}

/// Images of the `2q` single-cell Pauli generators under an automorphism,
/// as abelianized words: entries `0..q` are the images of `X_1..X_q`,
/// entries `q..2q` of `Z_1..Z_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliSpec {
    pub p: u64,
    pub dims: usize,
    pub q: usize,
    pub images: Vec<Vec<PauliFactor>>,
}

/// The column vector of a Pauli word: entry `gen − 1` (X factors) or
/// `q + gen − 1` (Z factors) accumulates `power · x^offset`.
pub fn pauli_word_to_column(
    p: u64,
    dims: usize,
    q: usize,
    word: &[PauliFactor],
) -> Result<Mat> {
    let mut col = Mat::zero(p, dims, 2 * q, 1);
    for f in word {
        if f.gen == 0 || f.gen > q {
            return Err(Error::Inconsistent(format!(
                "Pauli factor generator index {} out of range 1..={q}",
                f.gen
            )));
        }
        if f.offset.len() != dims {
            return Err(Error::Inconsistent(format!(
                "Pauli factor offset has {} coordinates, expected {dims}",
                f.offset.len()
            )));
        }
        let row = match f.kind {
            PauliKind::X => f.gen - 1,
            PauliKind::Z => q + f.gen - 1,
        };
        let add = Poly::monomial(p, dims, &f.offset, f.power);
        let cur = col.at(row, 0).add(&add);
        col.set(row, 0, cur);
    }
    Ok(col)
}

/// Build the matrix of a Pauli specification and verify that commutation is
/// preserved (the λ⁻ check); failure signals an inconsistent specification.
pub fn pauli_to_unitary(spec: &PauliSpec) -> Result<Unitary> {
    if spec.images.len() != 2 * spec.q {
        return Err(Error::Inconsistent(format!(
            "Pauli spec must list {} images, found {}",
            2 * spec.q,
            spec.images.len()
        )));
    }
    let mut m = Mat::zero(spec.p, spec.dims, 2 * spec.q, 2 * spec.q);
    for (j, word) in spec.images.iter().enumerate() {
        let col = pauli_word_to_column(spec.p, spec.dims, spec.q, word)?;
        for i in 0..2 * spec.q {
            m.set(i, j, col.at(i, 0).clone());
        }
    }
    if !check_lambda(&m, -1) {
        return Err(Error::Inconsistent(
            "Pauli images do not preserve commutation (lambda- check failed)".into(),
        ));
    }
    Unitary::new(m, Flavor::LAMBDA_MINUS)
}

/// Read a unitary's columns back into Pauli words, one factor per monomial.
pub fn unitary_to_pauli(u: &Unitary) -> PauliSpec {
    let q = u.q();
    let m = u.mat();
    let mut images = Vec::with_capacity(2 * q);
    for j in 0..2 * q {
        let mut word = Vec::new();
        for i in 0..2 * q {
            let (kind, gen) = if i < q {
                (PauliKind::X, i + 1)
            } else {
                (PauliKind::Z, i - q + 1)
            };
            for (e, c) in m.at(i, j).terms() {
                word.push(PauliFactor {
                    kind,
                    gen,
                    offset: e.clone(),
                    power: c as i64,
                });
            }
        }
        images.push(word);
    }
    PauliSpec { p: u.p(), dims: u.nvars(), q, images }
}

// ---------------------------------------------------------------------------
// Time-reversal normalization over F_2
// ---------------------------------------------------------------------------

/// The result of normalizing a qubit λ-unitary to an η-unitary: the core `u`
/// plus the pre- and post-circuits with `original = eval(pre) · u · eval(post)`.
#[derive(Clone, Debug)]
pub struct RealNormalization {
    pub u: Unitary,
    pub pre: Circuit,
    pub post: Circuit,
}

impl RealNormalization {
    /// Recompose the original matrix from the parts.
    pub fn recompose(&self) -> Result<Mat> {
        let pre = self.pre.eval()?;
        let post = self.post.eval()?;
        Ok(pre.mat().mul(self.u.mat()).mul(post.mat()))
    }
}

/// Conjugate a qubit (`p = 2`) λ-unitary `V` into an η-unitary `U` by three
/// corrective factors: `W₀` is the augmentation (all variables to 1) of `V`,
/// `P` and `F` are diagonal constant corrections read off the X- and Z-column
/// halves, giving `V = W₀ · Z(P) · U · Zdag(F)`.
pub fn normalize_real(v: &Mat) -> Result<RealNormalization> {
    if v.p() != 2 {
        return Err(Error::Inconsistent("time-reversal normalization requires p = 2".into()));
    }
    if !check_lambda(v, -1) {
        return Err(Error::FlavorCheck("lambda-".into(), "normalize_real input".into()));
    }
    let p = v.p();
    let nv = v.nvars();
    let q = v.rows() / 2;
    // W₀ = augmentation of V, an invertible constant λ-unitary.
    let w0 = v.map(|e| Poly::constant(p, nv, e.augment() as i64));
    let v1 = w0.inverse()?.mul(v);
    // P from the X-half of V₁.
    let eta = eta_mat(p, nv, q);
    let sigma = v1.submatrix(0, 0, 2 * q, q);
    let gram_x = sigma.adjoint().mul(&eta).mul(&sigma);
    let mut pmat = Mat::zero(p, nv, q, q);
    for i in 0..q {
        pmat.set(i, i, Poly::constant(p, nv, gram_x.at(i, i).const_term() as i64));
    }
    let v2 = gen_z(&pmat, -1)?.mat().mul(&v1);
    // F from the Z-half of V₂.
    let tau = v2.submatrix(0, q, 2 * q, q);
    let gram_z = tau.adjoint().mul(&eta).mul(&tau);
    let mut fmat = Mat::zero(p, nv, q, q);
    for i in 0..q {
        fmat.set(i, i, Poly::constant(p, nv, gram_z.at(i, i).const_term() as i64));
    }
    let u = v2.mul(gen_zdag(&fmat, -1)?.mat());
    if !check_eta(&u, -1) {
        return Err(Error::Internal("normalized unitary failed the eta check".into()));
    }
    // Record the factors: V = W₀ · Z(−P) · U · Zdag(−F) (signs vanish mod 2).
    let mut pre = decompose_1d_any(&w0)?;
    if !pmat.is_zero() {
        pre.gates.push(Gate::Z(pmat.neg()));
    }
    let mut post = Circuit::new(p, nv, q, -1);
    if !fmat.is_zero() {
        post.gates.push(Gate::Zdag(fmat.neg()));
    }
    let result = RealNormalization {
        u: Unitary::new(u, Flavor::ETA_MINUS)?,
        pre,
        post,
    };
    if result.recompose()? != *v {
        return Err(Error::Internal("normalization factors do not recompose".into()));
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// One-variable Euclidean decomposition (sign −1)
// ---------------------------------------------------------------------------

/// Decompose a λ⁻-unitary over `F_p[z^{±1}]` (at most one active variable)
/// into a circuit of elementary generators with `eval(circuit) = U` exactly.
pub fn decompose_1d(u: &Unitary) -> Result<Circuit> {
    if u.flavor().sign != -1 {
        return Err(Error::Inconsistent("decomposition is defined for sign −1".into()));
    }
    decompose_1d_any(u.mat())
}

/// Index of the single variable the matrix actually uses, if at most one.
fn active_var(m: &Mat) -> Result<Option<usize>> {
    let mut active = None;
    for v in 0..m.nvars() {
        let (lo, hi) = m.z_spread(v);
        if (lo, hi) != (0, 0) {
            if active.is_some() {
                return Err(Error::TooManyVariables(m.nvars()));
            }
            active = Some(v);
        }
    }
    Ok(active)
}

/// As [`decompose_1d`], but directly on a matrix satisfying the λ⁻ identity.
pub fn decompose_1d_any(m: &Mat) -> Result<Circuit> {
    if !check_lambda(m, -1) {
        return Err(Error::FlavorCheck("lambda-".into(), "decomposition input".into()));
    }
    active_var(m)?;
    let mut red = Reducer {
        v: m.clone(),
        q: m.rows() / 2,
        applied: Vec::new(),
    };
    for t in 0..red.q {
        red.reduce_x_column(t)?;
        red.reduce_z_column(t)?;
    }
    if !red.v.is_identity() {
        return Err(Error::Internal("column reduction did not reach the identity".into()));
    }
    // applied g_1, ..., g_m with g_m ··· g_1 · U = I, so U = g_1^{−1} ··· g_m^{−1}.
    let mut circ = Circuit::new(m.p(), m.nvars(), red.q, -1);
    for g in red.applied {
        for inv in invert_gate(&g, m.p(), m.nvars(), red.q) {
            circ.gates.push(inv);
        }
    }
    debug_assert_eq!(circ.eval().map(|u| u.into_mat()).ok().as_ref(), Some(m));
    Ok(circ)
}

/// Inverse of a single applied gate, as one or two circuit tokens.
fn invert_gate(g: &Gate, p: u64, nvars: usize, q: usize) -> Vec<Gate> {
    match g {
        Gate::X(a) => vec![Gate::X(a.inverse().expect("applied X gates are invertible"))],
        Gate::Z(t) => vec![Gate::Z(t.neg())],
        Gate::Zdag(t) => vec![Gate::Zdag(t.neg())],
        Gate::H(slot) => {
            // H² = diag(−1, −1) at the slot, so H^{−1} = X(−1 at slot) · H.
            let mut neg = Mat::identity(p, nvars, q);
            neg.set(*slot, *slot, Poly::constant(p, nvars, -1));
            if neg.is_identity() {
                vec![Gate::H(*slot)]
            } else {
                vec![Gate::X(neg), Gate::H(*slot)]
            }
        }
        Gate::Ztilde(_) | Gate::Stabilize(_) => unreachable!("not emitted by the reducer"),
    }
}

/// Working state: `v` is repeatedly hit by elementary left multipliers until
/// it reaches the identity; every multiplier is recorded.
struct Reducer {
    v: Mat,
    q: usize,
    applied: Vec<Gate>,
}

impl Reducer {
    fn p(&self) -> u64 {
        self.v.p()
    }

    fn nv(&self) -> usize {
        self.v.nvars()
    }

    fn apply_h(&mut self, slot: usize) {
        // Row slot ← row q+slot; row q+slot ← −(row slot).
        let q = self.q;
        for c in 0..2 * q {
            let top = self.v.at(slot, c).clone();
            let bot = self.v.at(q + slot, c).clone();
            self.v.set(slot, c, bot);
            self.v.set(q + slot, c, top.neg());
        }
        self.applied.push(Gate::H(slot));
    }

    fn apply_x(&mut self, alpha: Mat) -> Result<()> {
        let q = self.q;
        let inv_adj = alpha.inverse()?.adjoint();
        let top = alpha.mul(&self.v.submatrix(0, 0, q, 2 * q));
        let bot = inv_adj.mul(&self.v.submatrix(q, 0, q, 2 * q));
        self.v = top.vstack(&bot);
        self.applied.push(Gate::X(alpha));
        Ok(())
    }

    fn apply_z(&mut self, theta: Mat) {
        let q = self.q;
        let top = self.v.submatrix(0, 0, q, 2 * q);
        let bot = self.v.submatrix(q, 0, q, 2 * q).add(&theta.mul(&top));
        self.v = top.vstack(&bot);
        self.applied.push(Gate::Z(theta));
    }

    fn apply_zdag(&mut self, theta: Mat) {
        let q = self.q;
        let bot = self.v.submatrix(q, 0, q, 2 * q);
        let top = self.v.submatrix(0, 0, q, 2 * q).add(&theta.adjoint().mul(&bot));
        self.v = top.vstack(&bot);
        self.applied.push(Gate::Zdag(theta));
    }

    /// Elementary X: top row `r2 ← r2 − f·r1` (slot-local indices ≥ t embed as
    /// identity elsewhere).
    fn x_elementary(&mut self, r1: usize, r2: usize, f: &Poly) -> Result<()> {
        let mut a = Mat::identity(self.p(), self.nv(), self.q);
        a.set(r2, r1, f.neg());
        self.apply_x(a)
    }

    /// Elementary X acting on the *lower* half as `row r2 ← row r2 − f·row r1`:
    /// the upper action is the dual `row r1 ← row r1 + f†·row r2`.
    fn x_elementary_lower(&mut self, r1: usize, r2: usize, f: &Poly) -> Result<()> {
        let mut a = Mat::identity(self.p(), self.nv(), self.q);
        a.set(r1, r2, f.involute());
        self.apply_x(a)
    }

    /// Swap two slots in both halves (a permutation X gate).
    fn x_swap(&mut self, r1: usize, r2: usize) -> Result<()> {
        if r1 == r2 {
            return Ok(());
        }
        let mut a = Mat::identity(self.p(), self.nv(), self.q);
        a.set(r1, r1, Poly::zero(self.p(), self.nv()));
        a.set(r2, r2, Poly::zero(self.p(), self.nv()));
        a.set(r1, r2, Poly::one(self.p(), self.nv()));
        a.set(r2, r1, Poly::one(self.p(), self.nv()));
        self.apply_x(a)
    }

    fn spread(e: &Poly) -> i64 {
        pidlin::degree(e).unwrap_or(-1)
    }

    /// Euclidean reduction of the column-`col` entries in the given rows of
    /// one half to a single entry at `rows[0]` (gcd), using X gates only.
    /// `lower` selects which half the rows refer to and hence which action of
    /// the X gate is steered.
    fn euclid_rows(&mut self, col: usize, rows: &[usize], lower: bool) -> Result<()> {
        let base = if lower { self.q } else { 0 };
        loop {
            let mut nonzero: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| !self.v.at(base + r, col).is_zero())
                .collect();
            if nonzero.len() <= 1 {
                if let Some(r) = nonzero.pop() {
                    if r != rows[0] && self.v.at(base + rows[0], col).is_zero() {
                        self.x_swap(rows[0], r)?;
                    }
                }
                return Ok(());
            }
            // Pivot: minimal spread, lowest index on ties.
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&r| (Self::spread(self.v.at(base + r, col)), r))
                .unwrap();
            let pv = self.v.at(base + pivot, col).clone();
            for r in nonzero {
                if r == pivot {
                    continue;
                }
                let e = self.v.at(base + r, col).clone();
                let (quo, _rem) = laurent_divmod(&e, &pv);
                if quo.is_zero() {
                    continue;
                }
                if lower {
                    self.x_elementary_lower(pivot, r, &quo)?;
                } else {
                    self.x_elementary(pivot, r, &quo)?;
                }
            }
        }
    }

    /// Phase 1: reduce column `t` to entries only at rows `t` and `q + t`,
    /// then to `e_t` via the paired degree-reduction loop.
    fn reduce_x_column(&mut self, t: usize) -> Result<()> {
        let q = self.q;
        let upper_rows: Vec<usize> = (t..q).collect();
        let lower_tail: Vec<usize> = (t + 1..q).collect();
        // Clear the two tails; every cycle strictly lowers the degree of the
        // gcd concentrated at row t, so this terminates.
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 64 * (q + 2) * (q + 2) {
                return Err(Error::Internal("column reduction failed to stabilize".into()));
            }
            // Ensure the upper half of the column is nonzero.
            if upper_rows.iter().all(|&r| self.v.at(r, t).is_zero()) {
                let src = (t..q)
                    .find(|&r| !self.v.at(q + r, t).is_zero())
                    .ok_or_else(|| Error::Inconsistent("singular unitary column".into()))?;
                self.apply_h(src);
            }
            self.euclid_rows(t, &upper_rows, false)?;
            if lower_tail.is_empty() {
                break;
            }
            self.euclid_rows(t, &lower_tail, true)?;
            // Move the concentrated tail gcd at q+t+1 into the upper half.
            if self.v.at(q + t + 1, t).is_zero() {
                break;
            }
            self.apply_h(t + 1);
        }
        // Degree-reduction loop on the surviving pair (a, b) at rows t, q+t.
        loop {
            let a = self.v.at(t, t).clone();
            let b = self.v.at(q + t, t).clone();
            if b.is_zero() {
                if a.is_zero() {
                    return Err(Error::Inconsistent("zero column in unitary".into()));
                }
                let inv = a.unit_inverse().ok_or(Error::Internal(
                    "column gcd is not a unit; input was not unitary".into(),
                ))?;
                if !a.is_one() {
                    let mut alpha = Mat::identity(self.p(), self.nv(), q);
                    alpha.set(t, t, inv);
                    self.apply_x(alpha)?;
                }
                break;
            }
            if a.is_zero() || Self::spread(&a) > Self::spread(&b) {
                self.apply_h(t);
                continue;
            }
            // The pairing relation a†b = b†a aligns the supports, so the
            // symmetric corrector d kills both extremes of b at once.
            let var = active_var(&self.v)?;
            let ((alo, ahi), (blo, bhi)) = match var {
                Some(v) => (a.exp_range(v), b.exp_range(v)),
                None => ((0, 0), (0, 0)),
            };
            let (atop, btop) = match var {
                Some(v) => (
                    a.coeff_of_var_power(v, ahi).const_term(),
                    b.coeff_of_var_power(v, bhi).const_term(),
                ),
                None => (a.const_term(), b.const_term()),
            };
            let ratio = crate::fp::div(self.p(), btop, atop);
            let m = bhi - ahi;
            let d = if m == 0 {
                Poly::constant(self.p(), self.nv(), ratio as i64)
            } else {
                let v = var.expect("nonzero exponent span requires an active variable");
                let mut e1 = vec![0i32; self.nv()];
                e1[v] = m;
                let mut e2 = vec![0i32; self.nv()];
                e2[v] = -m;
                Poly::monomial(self.p(), self.nv(), &e1, ratio as i64)
                    .add(&Poly::monomial(self.p(), self.nv(), &e2, ratio as i64))
            };
            debug_assert_eq!(m, alo - blo, "pairing symmetry misaligned supports");
            let before = Self::spread(&b);
            let mut theta = Mat::zero(self.p(), self.nv(), q, q);
            theta.set(t, t, d.neg());
            self.apply_z(theta);
            let after = Self::spread(self.v.at(q + t, t));
            if after >= before && !self.v.at(q + t, t).is_zero() {
                return Err(Error::Internal("degree reduction made no progress".into()));
            }
        }
        Ok(())
    }

    /// Phase 2: with column `t` equal to `e_t`, the pairing forces entry
    /// `(q+t, q+t) = 1`; clear the rest of column `q + t`.
    fn reduce_z_column(&mut self, t: usize) -> Result<()> {
        let q = self.q;
        if !self.v.at(q + t, q + t).is_one() {
            return Err(Error::Internal("pairing did not normalize the dual pivot".into()));
        }
        // Clear the lower tail with X(I + e_t w†), whose lower action subtracts
        // w_j × (the 1 at row q+t) from each tail row.
        let mut needs = false;
        let mut alpha = Mat::identity(self.p(), self.nv(), q);
        for j in t + 1..q {
            let w = self.v.at(q + j, q + t);
            if !w.is_zero() {
                alpha.set(t, j, w.involute());
                needs = true;
            }
        }
        if needs {
            self.apply_x(alpha)?;
        }
        // Clear the upper half with a hermitian Zdag(θ): θ† has column t equal
        // to minus the current upper entries; the pairing makes u_t symmetric.
        let mut theta_adj = Mat::zero(self.p(), self.nv(), q, q);
        let mut any = false;
        for j in t..q {
            let u = self.v.at(j, q + t).clone();
            if !u.is_zero() {
                any = true;
                theta_adj.set(j, t, u.neg());
                if j != t {
                    theta_adj.set(t, j, u.neg().involute());
                }
            }
        }
        if any {
            // Gate argument is θ with θ† = the matrix built above.
            let theta = theta_adj.adjoint();
            check_theta(&theta, -1).map_err(|_| {
                Error::Internal("dual-column corrector is not hermitian".into())
            })?;
            self.apply_zdag(theta);
        }
        // The λ-relations force rows t and q+t of all remaining columns.
        for c in 0..2 * q {
            let want_t = if c == t { 1 } else { 0 };
            let want_qt = if c == q + t { 1 } else { 0 };
            if self.v.at(t, c).constant_value() != Some(want_t)
                || self.v.at(q + t, c).constant_value() != Some(want_qt)
            {
                return Err(Error::Internal("pairing did not standardize the slot rows".into()));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Random circuits (reproducible helpers for tests and self-checks)
// ---------------------------------------------------------------------------

use rand::Rng;

/// A random invertible `q × q` matrix built from elementary and monomial
/// factors, with z-exponents bounded by `max_exp`.
pub fn random_invertible<R: Rng>(
    rng: &mut R,
    p: u64,
    nvars: usize,
    q: usize,
    max_exp: i32,
) -> Mat {
    let mut a = Mat::identity(p, nvars, q);
    let random_poly = |rng: &mut R| {
        let mut exps = vec![0i32; nvars];
        for e in exps.iter_mut() {
            *e = rng.gen_range(-max_exp..=max_exp);
        }
        Poly::monomial(p, nvars, &exps, rng.gen_range(0..p as i64))
    };
    for _ in 0..2 * q {
        // Random unit-monomial scaling of one row.
        let mut d = Mat::identity(p, nvars, q);
        let i = rng.gen_range(0..q);
        let mut exps = vec![0i32; nvars];
        for e in exps.iter_mut() {
            *e = rng.gen_range(-max_exp..=max_exp);
        }
        d.set(i, i, Poly::monomial(p, nvars, &exps, rng.gen_range(1..p as i64)));
        a = a.mul(&d);
        // Random elementary addition.
        if q > 1 {
            let r1 = rng.gen_range(0..q);
            let mut r2 = rng.gen_range(0..q);
            while r2 == r1 {
                r2 = rng.gen_range(0..q);
            }
            let mut e = Mat::identity(p, nvars, q);
            e.set(r2, r1, random_poly(rng));
            a = a.mul(&e);
        }
    }
    a
}

/// A random `θ` with `θ† = −s·θ`, including (where the symmetry allows)
/// nonzero diagonal constants, so λ-only gates appear over `F_2`.
pub fn random_theta<R: Rng>(
    rng: &mut R,
    p: u64,
    nvars: usize,
    q: usize,
    sign: i8,
    max_exp: i32,
) -> Mat {
    let mut xi = Mat::zero(p, nvars, q, q);
    for i in 0..q {
        for j in 0..q {
            let mut exps = vec![0i32; nvars];
            for e in exps.iter_mut() {
                *e = rng.gen_range(-max_exp..=max_exp);
            }
            xi.set(i, j, Poly::monomial(p, nvars, &exps, rng.gen_range(0..p as i64)));
        }
    }
    // θ = ξ − s·ξ† is always admissible; add admissible diagonal terms.
    let adj = xi.adjoint();
    let mut theta = if sign == 1 { xi.sub(&adj) } else { xi.add(&adj) };
    for i in 0..q {
        let c = rng.gen_range(0..p as i64);
        let extra = if sign == -1 {
            // d† = d: constants allowed.
            Poly::constant(p, nvars, c)
        } else if p != 2 {
            // d† = −d: z^e − z^{−e}.
            let mut e1 = vec![0i32; nvars];
            let mut e2 = vec![0i32; nvars];
            if nvars == 0 {
                continue;
            }
            let v = rng.gen_range(0..nvars);
            let e = rng.gen_range(1..=max_exp.max(1));
            e1[v] = e;
            e2[v] = -e;
            Poly::monomial(p, nvars, &e1, c).sub(&Poly::monomial(p, nvars, &e2, c))
        } else {
            continue;
        };
        let cur = theta.at(i, i).add(&extra);
        theta.set(i, i, cur);
    }
    theta
}

/// A random circuit of `len` tokens.  With `eta_only` the word stays inside
/// the η-flavored generators (H, X, Z̃).
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    p: u64,
    nvars: usize,
    q: usize,
    sign: i8,
    len: usize,
    max_exp: i32,
    eta_only: bool,
) -> Circuit {
    let mut c = Circuit::new(p, nvars, q, sign);
    for _ in 0..len {
        let pick = rng.gen_range(0..4);
        let gate = match pick {
            0 => Gate::H(rng.gen_range(0..q)),
            1 => Gate::X(random_invertible(rng, p, nvars, q, max_exp)),
            2 if eta_only => {
                let mut xi = Mat::zero(p, nvars, q, q);
                for i in 0..q {
                    for j in 0..q {
                        let mut exps = vec![0i32; nvars];
                        for e in exps.iter_mut() {
                            *e = rng.gen_range(-max_exp..=max_exp);
                        }
                        xi.set(i, j, Poly::monomial(p, nvars, &exps, rng.gen_range(0..p as i64)));
                    }
                }
                Gate::Ztilde(xi)
            }
            2 => Gate::Z(random_theta(rng, p, nvars, q, sign, max_exp)),
            _ if eta_only => Gate::H(rng.gen_range(0..q)),
            _ => Gate::Zdag(random_theta(rng, p, nvars, q, sign, max_exp)),
        };
        c.gates.push(gate);
    }
    c
}
