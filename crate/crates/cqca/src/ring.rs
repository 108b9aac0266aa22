//! Sparse Laurent polynomials over `F_p` with the inversion involution.
//!
//! A [`Poly`] lives in `F_p[x_1^{±1}, ..., x_n^{±1}]`.  Terms are stored in a
//! `BTreeMap` keyed by exponent vectors (length `n`, entries in `Z`), which gives
//! canonical ordering, cheap equality and deterministic iteration.  Zero
//! coefficients are never stored.  The bar involution sends every variable to its
//! inverse; the constant-term map reads the all-zero exponent coefficient; the
//! augmentation substitutes `1` for every variable.

use crate::fp;
use std::collections::BTreeMap;
use std::fmt;

/// A sparse Laurent polynomial over `F_p` in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Vec<i32>, u64>,
}

impl Poly {
    // ----- constructors -----

    pub fn zero(p: u64, nvars: usize) -> Self {
        Poly { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, nvars: usize, c: i64) -> Self {
        let mut poly = Poly::zero(p, nvars);
        poly.add_term(&vec![0; nvars], fp::norm(p, c));
        poly
    }

    pub fn one(p: u64, nvars: usize) -> Self {
        Poly::constant(p, nvars, 1)
    }

    /// The variable `x_idx`.
    pub fn var(p: u64, nvars: usize, idx: usize) -> Self {
        Poly::var_pow(p, nvars, idx, 1)
    }

    /// The monomial `x_idx^e`.
    pub fn var_pow(p: u64, nvars: usize, idx: usize, e: i32) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[idx] = e;
        Poly::monomial(p, nvars, &exps, 1)
    }

    /// The monomial `c * x^exps`.
    pub fn monomial(p: u64, nvars: usize, exps: &[i32], c: i64) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut poly = Poly::zero(p, nvars);
        poly.add_term(exps, fp::norm(p, c));
        poly
    }

    // ----- accessors -----

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&vec![0; self.nvars]) == 1
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(exponent vector, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exps: &[i32]) -> u64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// `Some(c)` when no variable appears (including `Some(0)` for the zero polynomial).
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, &c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: &[i32], c: u64) {
        if c % self.p == 0 {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert(0);
        *entry = fp::add(self.p, *entry, c % self.p);
        if *entry == 0 {
            self.terms.remove(exps);
        }
    }

    fn compat(&self, other: &Poly) {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.nvars, other.nvars, "mixed variable counts");
    }

    // ----- ring operations -----

    pub fn add(&self, other: &Poly) -> Poly {
        self.compat(other);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (e, c) in self.terms() {
            out.terms.insert(e.clone(), fp::neg(self.p, c));
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.compat(other);
        let mut out = Poly::zero(self.p, self.nvars);
        let mut e = vec![0i32; self.nvars];
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                for i in 0..self.nvars {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(&e, fp::mul(self.p, ca, cb));
            }
        }
        out
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: u64) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (e, co) in self.terms() {
            let v = fp::mul(self.p, co, c % self.p);
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Multiplies by the monomial `c * x^exps`.
    pub fn mul_monomial(&self, exps: &[i32], c: u64) -> Poly {
        assert_eq!(exps.len(), self.nvars);
        let mut out = Poly::zero(self.p, self.nvars);
        for (e, co) in self.terms() {
            let v = fp::mul(self.p, co, c % self.p);
            if v != 0 {
                let shifted: Vec<i32> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
                out.terms.insert(shifted, v);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(self.p, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    // ----- the structure maps -----

    /// The bar involution `x_i -> x_i^{-1}` (every exponent vector negated).
    pub fn involute(&self) -> Poly {
        let mut out = Poly::zero(self.p, self.nvars);
        for (e, c) in self.terms() {
            out.terms.insert(e.iter().map(|&x| -x).collect(), c);
        }
        out
    }

    /// The constant-term map: the coefficient of the all-zero exponent vector.
    pub fn const_term(&self) -> u64 {
        self.coeff(&vec![0; self.nvars])
    }

    /// The augmentation (all variables to 1): the sum of all coefficients.
    pub fn augment(&self) -> u64 {
        let mut s = 0;
        for (_, c) in self.terms() {
            s = fp::add(self.p, s, c);
        }
        s
    }

    /// Substitutes 1 for variable `var` and removes it from the ring
    /// (the result has one variable fewer).
    pub fn substitute_one(&self, var: usize) -> Poly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.p, self.nvars - 1);
        for (e, c) in self.terms() {
            let mut reduced = Vec::with_capacity(self.nvars - 1);
            for (i, &x) in e.iter().enumerate() {
                if i != var {
                    reduced.push(x);
                }
            }
            out.add_term(&reduced, c);
        }
        out
    }

    /// Views the polynomial over a ring with one extra variable inserted at `pos`
    /// (exponent 0 everywhere); the right inverse of [`Poly::substitute_one`].
    pub fn insert_var(&self, pos: usize) -> Poly {
        assert!(pos <= self.nvars);
        let mut out = Poly::zero(self.p, self.nvars + 1);
        for (e, c) in self.terms() {
            let mut extended = Vec::with_capacity(self.nvars + 1);
            extended.extend_from_slice(&e[..pos]);
            extended.push(0);
            extended.extend_from_slice(&e[pos..]);
            out.terms.insert(extended, c);
        }
        out
    }

    /// The exponent range `(min, max)` of variable `var`; `(0, 0)` when the
    /// variable does not appear (or the polynomial is zero).
    pub fn exp_range(&self, var: usize) -> (i32, i32) {
        assert!(var < self.nvars);
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (e, _) in self.terms() {
            lo = lo.min(e[var]);
            hi = hi.max(e[var]);
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    /// The terms whose exponent of `var` equals `e`, with that variable dropped
    /// (a polynomial in one variable fewer).
    pub fn coeff_of_var_power(&self, var: usize, power: i32) -> Poly {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.p, self.nvars - 1);
        for (e, c) in self.terms() {
            if e[var] == power {
                let mut reduced = Vec::with_capacity(self.nvars - 1);
                for (i, &x) in e.iter().enumerate() {
                    if i != var {
                        reduced.push(x);
                    }
                }
                out.terms.insert(reduced, c);
            }
        }
        out
    }

    // ----- units and exact division -----

    /// Units of the Laurent ring are the single-term polynomials `c * x^e`, `c != 0`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<Poly> {
        if !self.is_unit() {
            return None;
        }
        let (e, &c) = self.terms.iter().next().unwrap();
        let mut out = Poly::zero(self.p, self.nvars);
        out.terms.insert(e.iter().map(|&x| -x).collect(), fp::inv(self.p, c));
        Some(out)
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d` does not
    /// divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.compat(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.p, self.nvars));
        }
        // Shift both operands so all exponents are nonnegative; the quotient of the
        // shifted polynomials then also has nonnegative exponents (lowest terms in
        // each variable multiply without cancellation over an integral domain).
        let shift = |poly: &Poly| -> (Poly, Vec<i32>) {
            let mins: Vec<i32> = (0..poly.nvars).map(|v| poly.exp_range(v).0).collect();
            let neg: Vec<i32> = mins.iter().map(|&m| -m).collect();
            (poly.mul_monomial(&neg, 1), mins)
        };
        let (mut r, sa) = shift(self);
        let (dd, sd) = shift(d);
        let (ld_e, ld_c) = {
            let (e, &c) = dd.terms.iter().next_back().unwrap();
            (e.clone(), c)
        };
        let mut q = Poly::zero(self.p, self.nvars);
        while !r.is_zero() {
            let (lr_e, lr_c) = {
                let (e, &c) = r.terms.iter().next_back().unwrap();
                (e.clone(), c)
            };
            let te: Vec<i32> = lr_e.iter().zip(&ld_e).map(|(a, b)| a - b).collect();
            if te.iter().any(|&x| x < 0) {
                return None;
            }
            let tc = fp::div(self.p, lr_c, ld_c);
            let t = Poly::monomial(self.p, self.nvars, &te, tc as i64);
            q = q.add(&t);
            r = r.sub(&t.mul(&dd));
        }
        // Undo the shifts: self = x^sa * r_shift, d = x^sd * d_shift.
        let back: Vec<i32> = sa.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Some(q.mul_monomial(&back, 1))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let trivial = e.iter().all(|&x| x == 0);
            if c != 1 || trivial {
                write!(f, "{c}")?;
                if !trivial {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    if !firstv {
                        write!(f, "*")?;
                    }
                    firstv = false;
                    write!(f, "x{i}")?;
                    if x != 1 {
                        write!(f, "^{x}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Context carrying the prime modulus and the ordered variable names.
///
/// Purely a parsing/printing aid: [`Poly`] itself only knows variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCtx {
    pub p: u64,
    pub vars: Vec<String>,
}

impl RingCtx {
    pub fn new(p: u64, vars: Vec<String>) -> crate::Result<Self> {
        fp::check_prime(p)?;
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(crate::Error::Inconsistent("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(crate::Error::Inconsistent(format!("duplicate variable name `{v}`")));
            }
        }
        Ok(RingCtx { p, vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> crate::Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| crate::Error::UnknownVariable(name.to_string()))
    }

    /// The context with variable `var` removed (after a substitution).
    pub fn without_var(&self, var: usize) -> RingCtx {
        let mut vars = self.vars.clone();
        vars.remove(var);
        RingCtx { p: self.p, vars }
    }

    /// The context with a new variable appended.
    pub fn with_var(&self, name: &str) -> crate::Result<RingCtx> {
        if self.vars.iter().any(|v| v == name) {
            return Err(crate::Error::Inconsistent(format!("variable `{name}` already present")));
        }
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        Ok(RingCtx { p: self.p, vars })
    }
}
