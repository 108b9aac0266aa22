//! Exact linear algebra over `F_p` and the Laurent ring `F_p[z^{±1}]`.
//!
//! With at most one variable the Laurent ring is a Euclidean domain: the degree
//! function is `max exponent − min exponent` and the units are the monomials.
//! This module provides Smith normal form, kernels, solving, direct-summand
//! tests and basis completion on matrices whose entries use at most one
//! variable — the engine behind the boundary-module computations.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::Poly;

/// Checks the "at most one variable" precondition.
fn check_base(m: &Mat) -> Result<()> {
    if m.nvars() > 1 {
        return Err(Error::TooManyVariables(m.nvars()));
    }
    Ok(())
}

/// The Euclidean degree: `max exponent − min exponent`; `None` for zero.
pub fn degree(a: &Poly) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    if a.nvars() == 0 {
        return Some(0);
    }
    let (lo, hi) = a.exp_range(0);
    Some(hi as i64 - lo as i64)
}

/// Division with remainder in `F_p[z^{±1}]`: `a = q*b + r` with
/// `degree(r) < degree(b)` (or `r = 0`).  Panics if `b` is zero.
pub fn laurent_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let p = a.p();
    let nv = a.nvars();
    if a.is_zero() {
        return (Poly::zero(p, nv), Poly::zero(p, nv));
    }
    if b.is_unit() {
        return (a.mul(&b.unit_inverse().unwrap()), Poly::zero(p, nv));
    }
    assert!(nv == 1, "non-unit divisor requires exactly one variable");
    // Shift so both have minimum exponent 0, divide as ordinary polynomials.
    let (alo, _) = a.exp_range(0);
    let (blo, bhi) = b.exp_range(0);
    let bdeg = (bhi - blo) as usize;
    let mut rc: Vec<u64> = vec![0; (a.exp_range(0).1 - alo) as usize + 1];
    for (e, c) in a.terms() {
        rc[(e[0] - alo) as usize] = c;
    }
    let mut bc: Vec<u64> = vec![0; bdeg + 1];
    for (e, c) in b.terms() {
        bc[(e[0] - blo) as usize] = c;
    }
    let blead = crate::fp::inv(p, bc[bdeg]);
    let mut qc: Vec<u64> = vec![0; rc.len().saturating_sub(bdeg)];
    for i in (bdeg..rc.len()).rev() {
        let c = rc[i];
        if c == 0 {
            continue;
        }
        let f = crate::fp::mul(p, c, blead);
        qc[i - bdeg] = f;
        for (j, &bcv) in bc.iter().enumerate() {
            rc[i - bdeg + j] = crate::fp::sub(p, rc[i - bdeg + j], crate::fp::mul(p, f, bcv));
        }
    }
    let mut q = Poly::zero(p, 1);
    for (i, &c) in qc.iter().enumerate() {
        if c != 0 {
            // a = z^alo * A, b = z^blo * B, A = Q*B + R  =>  q = z^{alo-blo} Q.
            q = q.add(&Poly::monomial(p, 1, &[i as i32 + alo - blo], c as i64));
        }
    }
    let mut r = Poly::zero(p, 1);
    for (i, &c) in rc.iter().enumerate().take(bdeg) {
        if c != 0 {
            r = r.add(&Poly::monomial(p, 1, &[i as i32 + alo], c as i64));
        }
    }
    (q, r)
}

/// The Smith normal form `U * M * V = D`.
pub struct Snf {
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

impl Snf {
    /// The number of nonzero diagonal invariant factors.
    pub fn rank(&self) -> usize {
        (0..self.d.rows().min(self.d.cols()))
            .take_while(|&i| !self.d.at(i, i).is_zero())
            .count()
    }
}

/// Smith normal form over `F_p` or `F_p[z^{±1}]`.  `U` and `V` have unit
/// determinants; `D` is diagonal with the divisibility chain, each invariant
/// factor normalized to a monic ordinary polynomial with minimum exponent 0.
pub fn smith_normal_form(m: &Mat) -> Result<Snf> {
    check_base(m)?;
    if m.nvars() == 0 {
        return Ok(snf_field(m));
    }
    let p = m.p();
    let nv = m.nvars();
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Mat::identity(p, nv, rows);
    let mut v = Mat::identity(p, nv, cols);

    let row_op = |d: &mut Mat, u: &mut Mat, target: usize, source: usize, factor: &Poly| {
        // row_target -= factor * row_source
        for j in 0..d.cols() {
            let val = d.at(target, j).sub(&factor.mul(d.at(source, j)));
            d.set(target, j, val);
        }
        for j in 0..u.cols() {
            let val = u.at(target, j).sub(&factor.mul(u.at(source, j)));
            u.set(target, j, val);
        }
    };
    let col_op = |d: &mut Mat, v: &mut Mat, target: usize, source: usize, factor: &Poly| {
        for i in 0..d.rows() {
            let val = d.at(i, target).sub(&d.at(i, source).mul(factor));
            d.set(i, target, val);
        }
        for i in 0..v.rows() {
            let val = v.at(i, target).sub(&v.at(i, source).mul(factor));
            v.set(i, target, val);
        }
    };
    let swap_rows = |d: &mut Mat, u: &mut Mat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for j in 0..d.cols() {
            let x = d.at(a, j).clone();
            let y = d.at(b, j).clone();
            d.set(a, j, y.neg());
            d.set(b, j, x);
        }
        for j in 0..u.cols() {
            let x = u.at(a, j).clone();
            let y = u.at(b, j).clone();
            u.set(a, j, y.neg());
            u.set(b, j, x);
        }
    };
    let swap_cols = |d: &mut Mat, v: &mut Mat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..d.rows() {
            let x = d.at(i, a).clone();
            let y = d.at(i, b).clone();
            d.set(i, a, y.neg());
            d.set(i, b, x);
        }
        for i in 0..v.rows() {
            let x = v.at(i, a).clone();
            let y = v.at(i, b).clone();
            v.set(i, a, y.neg());
            v.set(i, b, x);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        if (t..rows).all(|i| (t..cols).all(|j| d.at(i, j).is_zero())) {
            break;
        }
        loop {
            // Pivot: minimal degree among nonzero entries of the trailing
            // block, re-selected on every pass.  Division quotients are then
            // as small as possible, which is what keeps entry degrees from
            // snowballing during the Euclidean bounces.
            let mut pivot: Option<(usize, usize, i64)> = None;
            for i in t..rows {
                for j in t..cols {
                    if let Some(deg) = degree(d.at(i, j)) {
                        if pivot.map_or(true, |(_, _, pd)| deg < pd) {
                            pivot = Some((i, j, deg));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else { break };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);
            // One reduction pass on column t and row t; nonzero remainders are
            // left in place for the next (smaller) pivot to absorb.
            let mut dirty = false;
            for i in t + 1..rows {
                if d.at(i, t).is_zero() {
                    continue;
                }
                let (q, r) = laurent_divmod(d.at(i, t), d.at(t, t));
                row_op(&mut d, &mut u, i, t, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..cols {
                if d.at(t, j).is_zero() {
                    continue;
                }
                let (q, r) = laurent_divmod(d.at(t, j), d.at(t, t));
                col_op(&mut d, &mut v, j, t, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce the divisibility chain: pivot must divide every trailing entry.
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if d.at(i, j).div_exact(d.at(t, t)).is_none() {
                        // Add row i to row t and restart the clearing loop.
                        let m1 = Poly::constant(p, nv, -1);
                        row_op(&mut d, &mut u, t, i, &m1);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        // Normalize the pivot to a monic polynomial with minimum exponent 0.
        let piv = d.at(t, t).clone();
        if !piv.is_zero() {
            let (lo, hi) = if nv == 1 { piv.exp_range(0) } else { (0, 0) };
            let lead = if nv == 1 {
                piv.coeff(&[hi])
            } else {
                piv.const_term()
            };
            let shift = if nv == 1 { vec![-lo] } else { vec![] };
            let unit = Poly::monomial(p, nv, &shift, crate::fp::inv(p, lead) as i64);
            for j in 0..cols {
                let val = d.at(t, j).mul(&unit);
                d.set(t, j, val);
            }
            for j in 0..u.cols() {
                let val = u.at(t, j).mul(&unit);
                u.set(t, j, val);
            }
        }
        t += 1;
    }
    Ok(Snf { u, d, v })
}

/// Smith normal form over the field `F_p` by plain Gauss–Jordan on flat `u64`
/// buffers.  Equivalent to the generic routine but without per-entry
/// polynomial overhead, which matters for the large scalar matrices produced
/// by windowed boundary operators.
fn snf_field(m: &Mat) -> Snf {
    let p = m.p();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<u64> = (0..rows * cols)
        .map(|ix| m.at(ix / cols, ix % cols).const_term())
        .collect();
    let mut u: Vec<u64> = vec![0; rows * rows];
    let mut v: Vec<u64> = vec![0; cols * cols];
    for i in 0..rows {
        u[i * rows + i] = 1;
    }
    for j in 0..cols {
        v[j * cols + j] = 1;
    }
    // Invariant: u * m * v == a.
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i * cols + j] != 0)
        else {
            break;
        };
        if pi != t {
            for j in 0..cols {
                a.swap(t * cols + j, pi * cols + j);
            }
            for j in 0..rows {
                u.swap(t * rows + j, pi * rows + j);
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(i * cols + t, i * cols + pj);
            }
            for i in 0..cols {
                v.swap(i * cols + t, i * cols + pj);
            }
        }
        let inv = crate::fp::inv(p, a[t * cols + t]);
        for j in t..cols {
            a[t * cols + j] = crate::fp::mul(p, a[t * cols + j], inv);
        }
        for j in 0..rows {
            u[t * rows + j] = crate::fp::mul(p, u[t * rows + j], inv);
        }
        for i in t + 1..rows {
            let f = a[i * cols + t];
            if f == 0 {
                continue;
            }
            for j in t..cols {
                let s = crate::fp::mul(p, f, a[t * cols + j]);
                a[i * cols + j] = crate::fp::sub(p, a[i * cols + j], s);
            }
            for j in 0..rows {
                let s = crate::fp::mul(p, f, u[t * rows + j]);
                u[i * rows + j] = crate::fp::sub(p, u[i * rows + j], s);
            }
        }
        for j in t + 1..cols {
            let f = a[t * cols + j];
            if f == 0 {
                continue;
            }
            a[t * cols + j] = 0;
            for i in 0..cols {
                let s = crate::fp::mul(p, f, v[i * cols + t]);
                v[i * cols + j] = crate::fp::sub(p, v[i * cols + j], s);
            }
        }
        t += 1;
    }
    let nv = 0;
    let as_mat = |data: &[u64], r: usize, c: usize| {
        Mat::from_fn(p, nv, r, c, |i, j| Poly::constant(p, nv, data[i * c + j] as i64))
    };
    Snf {
        u: as_mat(&u, rows, rows),
        d: as_mat(&a, rows, cols),
        v: as_mat(&v, cols, cols),
    }
}

/// A free basis of the kernel of `M` (columns).
pub fn kernel(m: &Mat) -> Result<Mat> {
    let snf = smith_normal_form(m)?;
    let rank = snf.rank();
    Ok(snf.v.submatrix(0, rank, m.cols(), m.cols() - rank))
}

/// Solves `M x = b` exactly; `Ok(None)` when no solution exists.  `b` may have
/// several columns (each is solved independently).
pub fn solve(m: &Mat, b: &Mat) -> Result<Option<Mat>> {
    check_base(m)?;
    if b.rows() != m.rows() {
        return Err(Error::Shape("solve: right-hand side has wrong height".into()));
    }
    let snf = smith_normal_form(m)?;
    let rank = snf.rank();
    let ub = snf.u.mul(b);
    let mut y = Mat::zero(m.p(), m.nvars(), m.cols(), b.cols());
    for c in 0..b.cols() {
        for i in 0..m.rows() {
            let rhs = ub.at(i, c);
            if i < rank {
                match rhs.div_exact(snf.d.at(i, i)) {
                    Some(q) => {
                        if i < m.cols() {
                            y.set(i, c, q);
                        } else if !rhs.is_zero() {
                            return Ok(None);
                        }
                    }
                    None => return Ok(None),
                }
            } else if !rhs.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(snf.v.mul(&y)))
}

/// Whether the span of the (independent) columns of `K` is a direct summand of
/// the ambient free module: true iff all invariant factors are units.
pub fn is_direct_summand(k: &Mat) -> Result<bool> {
    let snf = smith_normal_form(k)?;
    if snf.rank() < k.cols() {
        return Err(Error::Inconsistent("columns are not independent".into()));
    }
    Ok((0..k.cols()).all(|i| snf.d.at(i, i).is_unit()))
}

/// Completes the columns of `K` (a direct summand) to a basis: returns an
/// invertible matrix whose first `k` columns equal `K` exactly.
pub fn complete_basis(k: &Mat) -> Result<Mat> {
    if !is_direct_summand(k)? {
        return Err(Error::Inconsistent("columns do not span a direct summand".into()));
    }
    let p = k.p();
    let nv = k.nvars();
    let (n, kc) = (k.rows(), k.cols());
    let snf = smith_normal_form(k)?;
    // K = U^{-1} D V^{-1}; build [D V^{-1} | (0; I)] and push through U^{-1}.
    let vinv = snf.v.inverse()?;
    let dv = snf.d.mul(&vinv); // n x k, invertible top block, zero bottom
    let mut rest = Mat::zero(p, nv, n, n - kc);
    for i in 0..n - kc {
        rest.set(kc + i, i, Poly::one(p, nv));
    }
    let uinv = snf.u.inverse()?;
    let out = uinv.mul(&dv.hstack(&rest));
    // First columns must equal K exactly.
    if out.submatrix(0, 0, n, kc) != *k {
        return Err(Error::Internal("basis completion does not extend K".into()));
    }
    if !out.determinant()?.is_unit() {
        return Err(Error::Internal("basis completion is not invertible".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64) -> Poly {
        Poly::var(p, 1, 0)
    }

    #[test]
    fn divmod_basic() {
        let p = 5;
        let a = z(p).pow(3).add(&z(p)).add(&Poly::one(p, 1));
        let b = z(p).add(&Poly::constant(p, 1, 2));
        let (q, r) = laurent_divmod(&a, &b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(degree(&r).unwrap_or(-1) < degree(&b).unwrap());
        // Laurent shifts: divisor with negative exponents.
        let a2 = a.mul_monomial(&[-2], 1);
        let b2 = b.mul_monomial(&[-4], 3);
        let (q2, r2) = laurent_divmod(&a2, &b2);
        assert_eq!(q2.mul(&b2).add(&r2), a2);
        assert!(degree(&r2).unwrap_or(-1) < degree(&b2).unwrap());
        // Unit divisor and zero-variable fallback.
        let (q3, r3) = laurent_divmod(&a, &Poly::monomial(p, 1, &[2], 3));
        assert!(r3.is_zero());
        assert_eq!(q3.mul(&Poly::monomial(p, 1, &[2], 3)), a);
    }

    #[test]
    fn snf_examples() {
        // [[z + z^2]] normalizes to 1 + z (monomial unit factored out).
        let p = 3;
        let m = Mat::from_rows(p, 1, vec![vec![z(p).add(&z(p).pow(2))]]);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.d.at(0, 0), &Poly::one(p, 1).add(&z(p)));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);

        let id = Mat::identity(p, 1, 3);
        let s = smith_normal_form(&id).unwrap();
        assert!(s.d.is_identity());

        // [[1, z],[0, 1]] has D = I (unimodular).
        let m2 = Mat::from_rows(
            p,
            1,
            vec![vec![Poly::one(p, 1), z(p)], vec![Poly::zero(p, 1), Poly::one(p, 1)]],
        );
        let s2 = smith_normal_form(&m2).unwrap();
        assert!(s2.d.is_identity());
        assert_eq!(s2.u.mul(&m2).mul(&s2.v), s2.d);
    }

    #[test]
    fn snf_random_reconstruction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for trial in 0..40 {
            let p = [2u64, 3, 5][trial % 3];
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m = Mat::from_fn(p, 1, rows, cols, |_, _| {
                let mut f = Poly::zero(p, 1);
                for _ in 0..rng.gen_range(0..3) {
                    f = f.add(&Poly::monomial(
                        p,
                        1,
                        &[rng.gen_range(-2..=2)],
                        rng.gen_range(0..p as i64),
                    ));
                }
                f
            });
            let snf = smith_normal_form(&m).unwrap();
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d, "trial {trial}");
            assert!(snf.u.determinant().unwrap().is_unit());
            assert!(snf.v.determinant().unwrap().is_unit());
            // Diagonal, divisibility chain.
            for i in 0..rows.min(cols) {
                for j in 0..cols {
                    if i != j {
                        assert!(i >= rows || snf.d.at(i, j).is_zero());
                    }
                }
                if i + 1 < rows.min(cols) && !snf.d.at(i + 1, i + 1).is_zero() {
                    assert!(snf.d.at(i + 1, i + 1).div_exact(snf.d.at(i, i)).is_some());
                }
            }
            // Kernel membership both ways.
            let ker = kernel(&m).unwrap();
            assert!(m.mul(&ker).is_zero());
            assert_eq!(ker.cols() + snf.rank(), cols);
            for c in 0..ker.cols() {
                let col = ker.column(c);
                assert!(solve(&m, &m.mul(&col)).unwrap().is_some());
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let m = Mat::from_ints(2, 1, &[&[1, 1]]).map(|e| e.clone());
        let k = kernel(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // kernel([[z, 1]]) is spanned by (1, -z) up to a unit.
        let p = 3;
        let m2 = Mat::from_rows(p, 1, vec![vec![z(p), Poly::one(p, 1)]]);
        let k2 = kernel(&m2).unwrap();
        assert_eq!(k2.cols(), 1);
        assert!(m2.mul(&k2).is_zero());
        assert!(!k2.column(0).is_zero());
        assert_eq!(kernel(&Mat::identity(p, 1, 3)).unwrap().cols(), 0);
    }

    #[test]
    fn solve_examples() {
        let p = 3;
        let m = Mat::from_rows(
            p,
            1,
            vec![vec![z(p), Poly::one(p, 1)], vec![Poly::zero(p, 1), z(p).pow(2)]],
        );
        let b = Mat::from_rows(p, 1, vec![vec![Poly::one(p, 1)], vec![z(p).pow(3)]]);
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul(&x), b);
        // Unsolvable: [[1+z]] x = 1.
        let m2 = Mat::from_rows(p, 1, vec![vec![Poly::one(p, 1).add(&z(p))]]);
        let b2 = Mat::from_rows(p, 1, vec![vec![Poly::one(p, 1)]]);
        assert!(solve(&m2, &b2).unwrap().is_none());
    }

    #[test]
    fn summand_and_completion() {
        let p = 2;
        // (1, 0) is a summand of rank 2, completed by (0, 1).
        let k = Mat::from_ints(p, 1, &[&[1], &[0]]);
        assert!(is_direct_summand(&k).unwrap());
        let basis = complete_basis(&k).unwrap();
        assert!(basis.determinant().unwrap().is_unit());
        assert_eq!(basis.submatrix(0, 0, 2, 1), k);
        // (1+z, 0) is not a summand.
        let k2 = Mat::from_rows(p, 1, vec![vec![Poly::one(p, 1).add(&z(p))], vec![Poly::zero(p, 1)]]);
        assert!(!is_direct_summand(&k2).unwrap());
        // (1, z) is unimodular, hence a summand.
        let k3 = Mat::from_rows(p, 1, vec![vec![Poly::one(p, 1)], vec![z(p)]]);
        assert!(is_direct_summand(&k3).unwrap());
        let b3 = complete_basis(&k3).unwrap();
        assert_eq!(b3.submatrix(0, 0, 2, 1), k3);
        assert!(b3.determinant().unwrap().is_unit());
        // Dependent columns are rejected.
        let k4 = Mat::from_ints(p, 1, &[&[1, 1], &[0, 0]]);
        assert!(is_direct_summand(&k4).is_err());
        // Too many variables are rejected.
        let k5 = Mat::identity(p, 2, 2);
        assert!(matches!(smith_normal_form(&k5), Err(Error::TooManyVariables(2))));
    }
}
