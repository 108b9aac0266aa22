//! Dense matrices over the Laurent polynomial ring.
//!
//! [`Mat`] is a rectangular grid of [`Poly`] entries sharing one modulus and one
//! variable count.  Exactness is preserved everywhere: determinants use
//! fraction-free Bareiss elimination (exact divisions in the Laurent ring),
//! inverses use the fraction-free Gauss–Jordan variant and are verified against
//! `M * M^{-1} = I` before being returned.

use crate::error::{Error, Result};
use crate::ring::Poly;

/// A dense `rows x cols` matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    p: u64,
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Mat {
    // ----- constructors -----

    pub fn zero(p: u64, nvars: usize, rows: usize, cols: usize) -> Self {
        Mat { p, nvars, rows, cols, data: vec![Poly::zero(p, nvars); rows * cols] }
    }

    pub fn identity(p: u64, nvars: usize, n: usize) -> Self {
        let mut m = Mat::zero(p, nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(p, nvars));
        }
        m
    }

    pub fn from_fn(
        p: u64,
        nvars: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut m = Mat::zero(p, nvars, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(p: u64, nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Mat::zero(p, nvars, nr, nc);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    /// A square matrix of integer constants (test/embedding convenience).
    pub fn from_ints(p: u64, nvars: usize, rows: &[&[i64]]) -> Self {
        Mat::from_fn(p, nvars, rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            Poly::constant(p, nvars, rows[i][j])
        })
    }

    // ----- accessors -----

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert_eq!(v.p(), self.p);
        assert_eq!(v.nvars(), self.nvars);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    fn compat(&self, other: &Mat) {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
    }

    // ----- arithmetic -----

    pub fn add(&self, other: &Mat) -> Mat {
        self.compat(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in add");
        Mat::from_fn(self.p, self.nvars, self.rows, self.cols, |i, j| {
            self.at(i, j).add(other.at(i, j))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.map(|e| e.neg())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.compat(other);
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        if self.nvars == 0 {
            return self.mul_field(other);
        }
        let mut out = Mat::zero(self.p, self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Product of two variable-free matrices on flat `u64` buffers; avoids the
    /// polynomial overhead that dominates on large scalar matrices.
    fn mul_field(&self, other: &Mat) -> Mat {
        let p = self.p;
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let a: Vec<u64> = self.data.iter().map(|e| e.const_term()).collect();
        let b: Vec<u64> = other.data.iter().map(|e| e.const_term()).collect();
        let mut c = vec![0u64; n * l];
        for i in 0..n {
            for k in 0..m {
                let av = a[i * m + k];
                if av == 0 {
                    continue;
                }
                for j in 0..l {
                    let s = crate::fp::mul(p, av, b[k * l + j]);
                    c[i * l + j] = crate::fp::add(p, c[i * l + j], s);
                }
            }
        }
        Mat::from_fn(p, 0, n, l, |i, j| Poly::constant(p, 0, c[i * l + j] as i64))
    }

    pub fn scalar_mul(&self, s: &Poly) -> Mat {
        self.map(|e| e.mul(s))
    }

    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> Mat {
        Mat::from_fn(self.p, self.nvars, self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.p, self.nvars, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// The adjoint: transpose followed by the entrywise bar involution.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.p, self.nvars, self.cols, self.rows, |i, j| self.at(j, i).involute())
    }

    // ----- block assembly -----

    pub fn submatrix(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Mat {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols);
        Mat::from_fn(self.p, self.nvars, nrows, ncols, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn column(&self, c: usize) -> Mat {
        self.submatrix(0, c, self.rows, 1)
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        self.compat(other);
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.p, self.nvars, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        self.compat(other);
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.p, self.nvars, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Assembles a 2x2 block matrix.
    pub fn block2x2(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        a.hstack(b).vstack(&c.hstack(d))
    }

    /// Block-diagonal direct sum (used for forms).
    pub fn form_dsum(&self, other: &Mat) -> Mat {
        self.compat(other);
        let z1 = Mat::zero(self.p, self.nvars, self.rows, other.cols);
        let z2 = Mat::zero(self.p, self.nvars, other.rows, self.cols);
        Mat::block2x2(self, &z1, &z2, other)
    }

    /// The interleaved direct sum of unitaries: for `U` of half-size `q` and `V`
    /// of half-size `q'`, the X-parts are concatenated, then the Z-parts, so the
    /// result is again block-structured as a `2(q+q')`-dimensional unitary.
    pub fn hat_dsum(&self, other: &Mat) -> Result<Mat> {
        self.compat(other);
        if self.rows != self.cols || other.rows != other.cols || self.rows % 2 != 0 || other.rows % 2 != 0 {
            return Err(Error::Shape("hat_dsum needs square matrices of even size".into()));
        }
        let q1 = self.rows / 2;
        let q2 = other.rows / 2;
        let q = q1 + q2;
        let map1 = |i: usize| if i < q1 { i } else { q + (i - q1) };
        let map2 = |i: usize| if i < q2 { q1 + i } else { q + q1 + (i - q2) };
        let mut out = Mat::zero(self.p, self.nvars, 2 * q, 2 * q);
        for i in 0..2 * q1 {
            for j in 0..2 * q1 {
                out.set(map1(i), map1(j), self.at(i, j).clone());
            }
        }
        for i in 0..2 * q2 {
            for j in 0..2 * q2 {
                out.set(map2(i), map2(j), other.at(i, j).clone());
            }
        }
        Ok(out)
    }

    // ----- determinant and inverse -----

    /// Exact determinant via fraction-free Bareiss elimination with row pivoting.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(self.p, self.nvars));
        }
        if self.nvars == 0 {
            return Ok(Poly::constant(self.p, 0, self.det_field() as i64));
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Poly::one(self.p, self.nvars);
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = !sign;
                    }
                    None => return Ok(Poly::zero(self.p, self.nvars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(k, k).mul(a.at(i, j)).sub(&a.at(i, k).mul(a.at(k, j)));
                    let v = num.div_exact(&prev).ok_or_else(|| {
                        Error::Internal("Bareiss division not exact".into())
                    })?;
                    a.set(i, j, v);
                }
                a.set(i, k, Poly::zero(self.p, self.nvars));
            }
            prev = a.at(k, k).clone();
        }
        let det = a.at(n - 1, n - 1).clone();
        Ok(if sign { det.neg() } else { det })
    }

    pub fn is_unit_det(&self) -> bool {
        self.determinant().map(|d| d.is_unit()).unwrap_or(false)
    }

    /// Determinant of a variable-free matrix by Gaussian elimination on flat
    /// `u64` buffers.
    fn det_field(&self) -> u64 {
        let p = self.p;
        let n = self.rows;
        let mut a: Vec<u64> = self.data.iter().map(|e| e.const_term()).collect();
        let mut det = 1u64;
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            if r != k {
                for j in k..n {
                    a.swap(k * n + j, r * n + j);
                }
                det = crate::fp::neg(p, det);
            }
            let piv = a[k * n + k];
            det = crate::fp::mul(p, det, piv);
            let inv = crate::fp::inv(p, piv);
            for i in k + 1..n {
                let f = crate::fp::mul(p, a[i * n + k], inv);
                if f == 0 {
                    continue;
                }
                for j in k..n {
                    let s = crate::fp::mul(p, f, a[k * n + j]);
                    a[i * n + j] = crate::fp::sub(p, a[i * n + j], s);
                }
            }
        }
        det
    }

    /// Inverse of a variable-free matrix by Gauss–Jordan on flat `u64`
    /// buffers.
    fn inverse_field(&self) -> Result<Mat> {
        let p = self.p;
        let n = self.rows;
        let mut a: Vec<u64> = self.data.iter().map(|e| e.const_term()).collect();
        let mut b = vec![0u64; n * n];
        for i in 0..n {
            b[i * n + i] = 1;
        }
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return Err(Error::NotInvertible("matrix is singular".into()));
            };
            if r != k {
                for j in 0..n {
                    a.swap(k * n + j, r * n + j);
                    b.swap(k * n + j, r * n + j);
                }
            }
            let inv = crate::fp::inv(p, a[k * n + k]);
            for j in 0..n {
                a[k * n + j] = crate::fp::mul(p, a[k * n + j], inv);
                b[k * n + j] = crate::fp::mul(p, b[k * n + j], inv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * n + k];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = crate::fp::mul(p, f, a[k * n + j]);
                    a[i * n + j] = crate::fp::sub(p, a[i * n + j], s);
                    let s = crate::fp::mul(p, f, b[k * n + j]);
                    b[i * n + j] = crate::fp::sub(p, b[i * n + j], s);
                }
            }
        }
        Ok(Mat::from_fn(p, 0, n, n, |i, j| Poly::constant(p, 0, b[i * n + j] as i64)))
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }

    /// Exact inverse.  Errors unless the determinant is a unit of the Laurent
    /// ring (a nonzero scalar times a monomial).
    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if self.nvars == 0 {
            return self.inverse_field();
        }
        // Fraction-free Gauss–Jordan on [A | I]: afterwards the left block is
        // d*I with d = ±det(A) and the right block is d*A^{-1}.
        let mut a = self.hstack(&Mat::identity(self.p, self.nvars, n));
        let mut prev = Poly::one(self.p, self.nvars);
        for k in 0..n {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => a.swap_rows(k, r),
                    None => {
                        return Err(Error::NotInvertible("matrix is singular".into()));
                    }
                }
            }
            let pivot = a.at(k, k).clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let lead = a.at(i, k).clone();
                for j in 0..2 * n {
                    let num = pivot.mul(a.at(i, j)).sub(&lead.mul(a.at(k, j)));
                    let v = num
                        .div_exact(&prev)
                        .ok_or_else(|| Error::Internal("Gauss-Jordan division not exact".into()))?;
                    a.set(i, j, v);
                }
            }
            prev = pivot;
        }
        let d = a.at(n - 1, n - 1).clone();
        let dinv = d
            .unit_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("determinant {:?} is not a unit", d)))?;
        // All left-block diagonal entries equal d after the Jordan sweep; scale
        // the right block by d^{-1}, row by row (row i was scaled by its own
        // residual pivot, which equals d for every row at termination).
        for i in 0..n {
            if a.at(i, i) != &d {
                return Err(Error::Internal("Gauss-Jordan left block not scalar".into()));
            }
        }
        let inv = Mat::from_fn(self.p, self.nvars, n, n, |i, j| a.at(i, n + j).mul(&dinv));
        // Exactness self-check: guards the fraction-free bookkeeping.
        if !self.mul(&inv).is_identity() {
            return Err(Error::Internal("inverse verification failed".into()));
        }
        Ok(inv)
    }

    // ----- degree windows, substitution, coarse-graining -----

    /// The extreme exponents `(min, max)` of `var` over all entries; `(0, 0)`
    /// when the variable does not appear.
    pub fn z_spread(&self, var: usize) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        let mut seen = false;
        for e in &self.data {
            if e.is_zero() {
                continue;
            }
            let (l, h) = e.exp_range(var);
            lo = lo.min(l);
            hi = hi.max(h);
            seen = true;
        }
        if seen {
            (lo, hi)
        } else {
            (0, 0)
        }
    }

    /// Entrywise substitution of 1 for `var` (the result has one variable fewer).
    pub fn substitute_one(&self, var: usize) -> Mat {
        Mat::from_fn(self.p, self.nvars - 1, self.rows, self.cols, |i, j| {
            self.at(i, j).substitute_one(var)
        })
    }

    /// Views the matrix over a ring with one extra variable inserted at `pos`.
    pub fn insert_var(&self, pos: usize) -> Mat {
        Mat::from_fn(self.p, self.nvars + 1, self.rows, self.cols, |i, j| {
            self.at(i, j).insert_var(pos)
        })
    }

    /// The matrix of terms with exponent `power` of `var`, with `var` dropped.
    pub fn z_layer(&self, var: usize, power: i32) -> Mat {
        Mat::from_fn(self.p, self.nvars - 1, self.rows, self.cols, |i, j| {
            self.at(i, j).coeff_of_var_power(var, power)
        })
    }

    /// Coarse-graining: reinterprets `b` consecutive lattice cells along `var`
    /// as one.  Every entry `r` becomes the `b x b` matrix of multiplication by
    /// `r` on the free module with basis `1, x, ..., x^{b-1}` over the coarse
    /// ring (`x^b` = the new generator, written in the same variable slot).
    /// This is a ring homomorphism on matrices, commutes with the adjoint, and
    /// preserves unitarity flavors.
    pub fn coarse_grain(&self, var: usize, b: u32) -> Result<Mat> {
        if b == 0 {
            return Err(Error::Inconsistent("coarse-graining factor must be >= 1".into()));
        }
        let b = b as usize;
        let bi = b as i32;
        let mut out = Mat::zero(self.p, self.nvars, self.rows * b, self.cols * b);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for (e, coef) in self.at(r, c).terms() {
                    let ev = e[var];
                    for j in 0..b {
                        let t = j as i32 + ev;
                        let i = t.rem_euclid(bi) as usize;
                        let q = (t - i as i32) / bi;
                        let mut exps = e.clone();
                        exps[var] = q;
                        let add = Poly::monomial(self.p, self.nvars, &exps, coef as i64);
                        let v = out.at(r * b + i, c * b + j).add(&add);
                        out.set(r * b + i, c * b + j, v);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}[{} vars] [", self.rows, self.cols, self.p, self.nvars)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}", self.at(i, j))?;
                if j + 1 < self.cols {
                    write!(f, ", ")?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
