//! Sparse exact multivariate Laurent polynomials, their fraction field, and
//! dense linear algebra over it.
//!
//! Rational functions are not reduced by full multivariate gcd; they carry a
//! content-normalized denominator and are reduced opportunistically by exact
//! division. Matrix inversion and determinants use fraction-free (Bareiss)
//! elimination so that all intermediate divisions are exact.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cartan::Rat;

/// A sparse Laurent polynomial: exponent vectors of fixed length `nvars`
/// mapped to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rat::one(), nvars)
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_int(c: i64, nvars: usize) -> Self {
        Self::constant(crate::cartan::rat(c), nvars)
    }

    pub fn monomial(c: Rat, exps: Vec<i64>) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(Rat::one(), exps)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    /// The unique term of a monomial, if any.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<&Rat> {
        self.as_monomial()
            .filter(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c)
    }

    /// All coefficients nonnegative (membership in `Q_+[Z^{+-1}]`).
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i64>, Rat>, exps: Vec<i64>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (e, c) in &other.terms {
            Self::insert_term(&mut self.terms, e.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, exps, c1 * c2);
            }
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, t)| (e.clone(), t * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[i64], c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, t)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), t * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// The bar involution `z^a -> z^{-a}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Per-variable minimum exponents over all terms.
    fn min_exps(&self) -> Vec<i64> {
        let mut mins = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e) {
                if x < *m {
                    *m = x;
                }
            }
        }
        if self.terms.is_empty() {
            mins = vec![0; self.nvars];
        }
        mins
    }

    /// Lexicographically largest exponent vector (leading term for division).
    fn lex_leading(&self) -> (&Vec<i64>, &Rat) {
        self.terms.iter().next_back().expect("nonzero polynomial")
    }

    /// Exact division in the Laurent ring; `None` when not divisible.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        // Shift both operands into the polynomial range; Laurent monomials
        // are units so only the polynomial parts decide divisibility.
        let sp = self.min_exps();
        let sq = divisor.min_exps();
        let shift: Vec<i64> = sp.iter().zip(&sq).map(|(a, b)| a - b).collect();
        let p = {
            let neg: Vec<i64> = sp.iter().map(|&x| -x).collect();
            self.mul_monomial(&neg, &Rat::one())
        };
        let q = {
            let neg: Vec<i64> = sq.iter().map(|&x| -x).collect();
            divisor.mul_monomial(&neg, &Rat::one())
        };
        let (lq_exps, lq_coef) = {
            let (e, c) = q.lex_leading();
            (e.clone(), c.clone())
        };
        let mut rem = p;
        let mut quot: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        while !rem.is_zero() {
            let (lr_exps, lr_coef) = {
                let (e, c) = rem.lex_leading();
                (e.clone(), c.clone())
            };
            let diff: Vec<i64> = lr_exps.iter().zip(&lq_exps).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&d| d < 0) {
                return None;
            }
            let coef = lr_coef / lq_coef.clone();
            rem = rem.sub(&q.mul_monomial(&diff, &coef));
            Self::insert_term(&mut quot, diff, coef);
        }
        let quotient = LaurentPoly { nvars: self.nvars, terms: quot };
        Some(quotient.mul_monomial(&shift, &Rat::one()))
    }

    /// Removes monomial and rational content; the result has minimum exponent
    /// zero in each variable and a lex-leading coefficient of +1. Returns
    /// `(normalized, content)` with `self = content * normalized`.
    pub fn extract_content(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(self.nvars), Self::one(self.nvars));
        }
        let mins = self.min_exps();
        let neg: Vec<i64> = mins.iter().map(|&x| -x).collect();
        let shifted = self.mul_monomial(&neg, &Rat::one());
        let lead = shifted.lex_leading().1.clone();
        let normalized = shifted.scale(&(Rat::one() / lead.clone()));
        (normalized, Self::monomial(lead, mins))
    }

    /// Deterministic text form, e.g. `1/(z1*z2)` style terms joined by ` + `.
    pub fn to_text(&self, var_names: &[String]) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (exps, coef) in self.terms.iter().rev() {
            let mut s = String::new();
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_names[i].clone()
                    } else {
                        let mut t = String::new();
                        write!(t, "{}^{}", var_names[i], e).unwrap();
                        t
                    }
                })
                .collect();
            let coef_str = format_rat(coef);
            if mono.is_empty() {
                s.push_str(&coef_str);
            } else if coef.is_one() {
                s.push_str(&mono.join("*"));
            } else if (-coef.clone()).is_one() {
                write!(s, "-{}", mono.join("*")).unwrap();
            } else {
                write!(s, "{}*{}", coef_str, mono.join("*")).unwrap();
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

pub fn format_rat(c: &Rat) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    if c.denom().is_one() {
        write!(s, "{}", c.numer()).unwrap();
    } else {
        write!(s, "{}/{}", c.numer(), c.denom()).unwrap();
    }
    s
}

/// An element of the fraction field `Q(Z^{+-1})`.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn from_poly(p: LaurentPoly) -> Self {
        let nvars = p.nvars();
        RationalFunction { num: p, den: LaurentPoly::one(nvars) }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() || self.den.is_one() {
            if self.num.is_zero() {
                self.den = LaurentPoly::one(self.num.nvars());
            }
            return;
        }
        // Opportunistic exact reduction, then content normalization.
        if let Some(q) = self.num.divide_exact(&self.den) {
            self.num = q;
            self.den = LaurentPoly::one(self.num.nvars());
            return;
        }
        let (den_norm, content) = self.den.extract_content();
        let inv_exps: Vec<i64> = content.as_monomial().unwrap().0.iter().map(|&e| -e).collect();
        let inv_coef = Rat::one() / content.as_monomial().unwrap().1.clone();
        self.num = self.num.mul_monomial(&inv_exps, &inv_coef);
        self.den = den_norm;
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    /// Exact reduction to a Laurent polynomial, when possible.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.divide_exact(&self.den)
        }
    }

    pub fn to_text(&self, var_names: &[String]) -> String {
        if self.den.is_one() {
            self.num.to_text(var_names)
        } else {
            let mut s = String::from("(");
            s.push_str(&self.num.to_text(var_names));
            s.push_str(") / (");
            s.push_str(&self.den.to_text(var_names));
            s.push(')');
            s
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
impl Eq for RationalFunction {}

/// A dense matrix over the fraction field.
#[derive(Debug, Clone, PartialEq)]
pub struct FFMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<RationalFunction>,
}

/// Certificate that a square matrix is singular.
#[derive(Debug, Clone)]
pub struct Singular {
    /// A nonzero vector in the right kernel.
    pub kernel: Vec<RationalFunction>,
}

impl FFMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> RationalFunction>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FFMatrix { rows, cols, entries }
    }

    pub fn from_polys(m: &[Vec<LaurentPoly>]) -> Self {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        FFMatrix::from_fn(rows, cols, |i, j| RationalFunction::from_poly(m[i][j].clone()))
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        FFMatrix::from_fn(n, n, |i, j| {
            if i == j {
                RationalFunction::one(nvars)
            } else {
                RationalFunction::zero(nvars)
            }
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!(self.cols, other.rows);
        let nvars = self.entries[0].nvars();
        FFMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RationalFunction::zero(nvars);
            for k in 0..self.cols {
                let t = self.entry(i, k).mul(other.entry(k, j));
                if !t.is_zero() {
                    acc = acc.add(&t);
                }
            }
            acc
        })
    }

    pub fn transpose(&self) -> FFMatrix {
        FFMatrix::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    /// Exact inverse via fraction-free Gauss-Jordan elimination, or a kernel
    /// certificate when singular.
    pub fn inverse(&self) -> Result<FFMatrix, Singular> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let nvars = self.entries[0].nvars();
        // Clear denominators per row: P = D * M with D diagonal polynomial.
        let mut p: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut row_scale: Vec<LaurentPoly> = Vec::with_capacity(n);
        for i in 0..n {
            let mut d = LaurentPoly::one(nvars);
            for j in 0..n {
                let den = self.entry(i, j).den();
                if !den.is_one() {
                    d = d.mul(den);
                }
            }
            let row: Vec<LaurentPoly> = (0..n)
                .map(|j| {
                    let e = self.entry(i, j);
                    d.divide_exact(e.den()).expect("row denominator divides the product").mul(e.num())
                })
                .collect();
            p.push(row);
            row_scale.push(d);
        }
        let (inv_p, det) = poly_gauss_jordan_inverse(&p).map_err(|kernel| Singular { kernel })?;
        // M^{-1} = P^{-1} D, i.e. scale column j by row_scale[j].
        let det_rf = RationalFunction::from_poly(det);
        Ok(FFMatrix::from_fn(n, n, |i, j| {
            let num = inv_p[i][j].mul(&row_scale[j]);
            RationalFunction::from_poly(num).div(&det_rf)
        }))
    }
}

/// Sparse Laurent polynomial with integer coefficients; internal fast path
/// for fraction-free elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: BTreeMap::new() }
    }

    fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nvars], BigInt::one());
        IntPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(terms: &mut BTreeMap<Vec<i64>, BigInt>, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert(&mut terms, exps, c1 * c2);
            }
        }
        IntPoly { terms }
    }

    fn sub_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            Self::insert(&mut self.terms, e.clone(), -c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            Self::insert(&mut self.terms, e.clone(), c.clone());
        }
    }

    fn neg(&self) -> Self {
        IntPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Exact division in `Z[Z^{+-1}]`; `None` if not divisible.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dl_exps, dl_coef) = divisor.terms.iter().next_back().unwrap();
        let dl_exps = dl_exps.clone();
        let dl_coef = dl_coef.clone();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while !rem.is_zero() {
            let (lr_exps, lr_coef) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (e.clone(), c.clone())
            };
            let diff: Vec<i64> = lr_exps.iter().zip(&dl_exps).map(|(a, b)| a - b).collect();
            let (q, r) = num_integer::div_rem(lr_coef, dl_coef.clone());
            if !r.is_zero() {
                return None;
            }
            // rem -= q * z^diff * divisor
            for (e, c) in &divisor.terms {
                let exps: Vec<i64> = e.iter().zip(&diff).map(|(a, b)| a + b).collect();
                Self::insert(&mut rem.terms, exps, -(c * &q));
            }
            Self::insert(&mut quot, diff, q);
        }
        Some(IntPoly { terms: quot })
    }

    pub fn to_laurent(&self, nvars: usize) -> LaurentPoly {
        LaurentPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), Rat::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl LaurentPoly {
    /// Integer-coefficient view, when all coefficients are integers.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if !c.denom().is_one() {
                return None;
            }
            terms.insert(e.clone(), c.numer().clone());
        }
        Some(IntPoly { terms })
    }
}

/// Fraction-free Gauss-Jordan over integer-coefficient polynomials with
/// fewest-terms pivoting. Returns `(det * M^{-1}, det)`.
fn int_gauss_jordan_inverse(
    m: &[Vec<IntPoly>],
    nvars: usize,
) -> Result<(Vec<Vec<IntPoly>>, IntPoly), usize> {
    let n = m.len();
    let mut a: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            for j in 0..n {
                row.push(if i == j { IntPoly::one(nvars) } else { IntPoly::zero() });
            }
            row
        })
        .collect();
    let mut prev = IntPoly::one(nvars);
    let mut sign_flips = 0usize;
    for k in 0..n {
        // fewest-terms pivot keeps the fill-in down
        let pivot_row = (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| {
                let row_terms: usize = a[r].iter().map(|p| p.num_terms()).sum();
                (a[r][k].num_terms(), row_terms, r)
            });
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Err(k),
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            sign_flips += 1;
        }
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                let row = &mut a[i];
                if i != k {
                    // still must scale the row by pivot/prev
                    for j in 0..2 * n {
                        if j == k {
                            continue;
                        }
                        if !row[j].is_zero() {
                            row[j] = pivot
                                .mul(&row[j])
                                .divide_exact(&prev)
                                .expect("fraction-free elimination divides exactly");
                        }
                    }
                }
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let mut t = pivot.mul(&a[i][j]);
                t.sub_assign(&f.mul(&a[k][j]));
                a[i][j] = t
                    .divide_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[i][k] = IntPoly::zero();
        }
        prev = pivot;
    }
    let mut det = prev;
    if sign_flips % 2 == 1 {
        det = det.neg();
        for row in a.iter_mut() {
            for j in n..2 * n {
                row[j] = row[j].neg();
            }
        }
    }
    let inv = a.into_iter().map(|row| row[n..].to_vec()).collect();
    Ok((inv, det))
}

/// Fraction-free Gauss-Jordan on a square polynomial matrix.
///
/// Returns `(det * M^{-1}, det)` with polynomial entries, or a kernel vector
/// when the matrix is singular. Integer-coefficient input takes a faster
/// integer path.
pub fn poly_gauss_jordan_inverse(
    m: &[Vec<LaurentPoly>],
) -> Result<(Vec<Vec<LaurentPoly>>, LaurentPoly), Vec<RationalFunction>> {
    let nvars = if m.is_empty() { 0 } else { m[0][0].nvars() };
    let int_rows: Option<Vec<Vec<IntPoly>>> = m
        .iter()
        .map(|row| row.iter().map(|p| p.to_int()).collect())
        .collect();
    if let Some(rows) = int_rows {
        match int_gauss_jordan_inverse(&rows, nvars) {
            Ok((inv, det)) => {
                let inv = inv
                    .into_iter()
                    .map(|row| row.into_iter().map(|p| p.to_laurent(nvars)).collect())
                    .collect();
                return Ok((inv, det.to_laurent(nvars)));
            }
            Err(col) => return Err(kernel_vector_rf(m, col)),
        }
    }
    poly_gauss_jordan_inverse_generic(m)
}

fn poly_gauss_jordan_inverse_generic(
    m: &[Vec<LaurentPoly>],
) -> Result<(Vec<Vec<LaurentPoly>>, LaurentPoly), Vec<RationalFunction>> {
    let n = m.len();
    let nvars = if n == 0 { 0 } else { m[0][0].nvars() };
    // Work on the augmented [M | I].
    let mut a: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            for j in 0..n {
                row.push(if i == j {
                    LaurentPoly::one(nvars)
                } else {
                    LaurentPoly::zero(nvars)
                });
            }
            row
        })
        .collect();
    let mut prev = LaurentPoly::one(nvars);
    let mut sign_flips = 0usize;
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[r][k].is_zero());
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Err(kernel_vector_rf(m, k)),
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            sign_flips += 1;
        }
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let t = pivot.mul(&a[i][j]).sub(&f.mul(&a[k][j]));
                a[i][j] = t
                    .divide_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[i][k] = LaurentPoly::zero(nvars);
        }
        prev = pivot;
    }
    let mut det = prev;
    if sign_flips % 2 == 1 {
        det = det.neg();
        for row in a.iter_mut() {
            for j in n..2 * n {
                row[j] = row[j].neg();
            }
        }
    }
    let inv = a.into_iter().map(|row| row[n..].to_vec()).collect();
    Ok((inv, det))
}

/// A nonzero kernel vector of a singular polynomial matrix, found by plain
/// rational-function elimination.
fn kernel_vector_rf(m: &[Vec<LaurentPoly>], _hint_col: usize) -> Vec<RationalFunction> {
    let n = m.len();
    let nvars = if n == 0 { 0 } else { m[0][0].nvars() };
    let mut a: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| (0..n).map(|j| RationalFunction::from_poly(m[i][j].clone())).collect())
        .collect();
    let mut pivot_in_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        if let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) {
            a.swap(row, r);
            let inv = a[row][col].clone();
            for j in 0..n {
                a[row][j] = a[row][j].div(&inv);
            }
            for r2 in 0..n {
                if r2 != row && !a[r2][col].is_zero() {
                    let f = a[r2][col].clone();
                    for j in 0..n {
                        let t = a[row][j].mul(&f);
                        a[r2][j] = a[r2][j].sub(&t);
                    }
                }
            }
            pivot_in_col[col] = Some(row);
            row += 1;
        }
    }
    let free_col = (0..n)
        .find(|&c| pivot_in_col[c].is_none())
        .expect("singular matrix has a free column");
    let mut kernel = vec![RationalFunction::zero(nvars); n];
    kernel[free_col] = RationalFunction::one(nvars);
    for c in 0..n {
        if let Some(r) = pivot_in_col[c] {
            kernel[c] = a[r][free_col].neg();
        }
    }
    kernel
}

/// Forward Bareiss elimination; returns the determinant of a square
/// polynomial matrix.
pub fn poly_determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    let nvars = if n == 0 { 0 } else { m[0][0].nvars() };
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    let mut a = m.to_vec();
    let mut prev = LaurentPoly::one(nvars);
    let mut sign = false;
    for k in 0..n - 1 {
        let pivot_row = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(r) => r,
            None => return LaurentPoly::zero(nvars),
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t
                    .divide_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            a[i][k] = LaurentPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Monic minimal polynomial of a square matrix over the fraction field, as the
/// coefficient list `c_0, ..., c_{d-1}, 1`.
///
/// Found as the first linear dependency among the vectorized powers
/// `I, A, A^2, ...`.
pub fn minimal_polynomial(a: &FFMatrix) -> Vec<RationalFunction> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let nvars = a.entries[0].nvars();
    let dim = n * n;
    // Echelon basis of vectorized powers with coordinates in terms of powers.
    let mut echelon: Vec<(usize, Vec<RationalFunction>, Vec<RationalFunction>)> = Vec::new();
    let mut power = FFMatrix::identity(n, nvars);
    for degree in 0..=n {
        let mut vec: Vec<RationalFunction> = power.entries.clone();
        let mut coords = vec![RationalFunction::zero(nvars); n + 2];
        coords[degree] = RationalFunction::one(nvars);
        for (lead, basis_vec, basis_coords) in &echelon {
            if !vec[*lead].is_zero() {
                let f = vec[*lead].clone();
                for j in 0..dim {
                    let t = basis_vec[j].mul(&f);
                    vec[j] = vec[j].sub(&t);
                }
                for j in 0..n + 2 {
                    let t = basis_coords[j].mul(&f);
                    coords[j] = coords[j].sub(&t);
                }
            }
        }
        if let Some(lead) = (0..dim).find(|&j| !vec[j].is_zero()) {
            let inv = vec[lead].clone();
            for j in 0..dim {
                vec[j] = vec[j].div(&inv);
            }
            for j in 0..n + 2 {
                coords[j] = coords[j].div(&inv);
            }
            echelon.push((lead, vec, coords));
            power = a.mul(&power);
        } else {
            // coords gives the dependency: sum coords[m] A^m = 0 with
            // coords[degree] = 1 (monic by construction).
            return coords[..=degree].to_vec();
        }
    }
    unreachable!("a matrix of size n has an annihilator of degree <= n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::rat;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn z(i: usize) -> LaurentPoly {
        LaurentPoly::var(i, 3)
    }

    #[test]
    fn product_and_division() {
        // (z1 - z3)(z1 + z3) = z1^2 - z3^2
        let a = z(0).sub(&z(2));
        let b = z(0).add(&z(2));
        let prod = a.mul(&b);
        assert_eq!(prod, z(0).mul(&z(0)).sub(&z(2).mul(&z(2))));
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
        // (z1 + z2) / (z1 - z2) is not exact
        let c = z(0).add(&z(1));
        let d = z(0).sub(&z(1));
        assert!(c.divide_exact(&d).is_none());
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        // (z1^{-1} + z2) divides z1^{-2} - z2^2 with quotient z1^{-1} - z2.
        let a = LaurentPoly::monomial(rat(1), vec![-1, 0, 0]).add(&z(1));
        let b = LaurentPoly::monomial(rat(1), vec![-2, 0, 0]).sub(&z(1).mul(&z(1)));
        let q = b.divide_exact(&a).unwrap();
        assert_eq!(q, LaurentPoly::monomial(rat(1), vec![-1, 0, 0]).sub(&z(1)));
    }

    #[test]
    fn rational_function_equality() {
        let a = RationalFunction::new(z(0).mul(&z(1)), z(1));
        let b = RationalFunction::from_poly(z(0));
        assert_eq!(a, b);
        let c = RationalFunction::new(z(0), z(1));
        assert_ne!(c, b);
    }

    #[test]
    fn matrix_inverse_small() {
        // [[1, z1], [0, z2]]^{-1} = [[1, -z1/z2], [0, 1/z2]]
        let m = FFMatrix::from_polys(&[
            vec![LaurentPoly::one(3), z(0)],
            vec![LaurentPoly::zero(3), z(1)],
        ]);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert_eq!(prod, FFMatrix::identity(2, 3));
    }

    #[test]
    fn singular_matrix_kernel() {
        let m = FFMatrix::from_polys(&[
            vec![z(0), z(0)],
            vec![z(1), z(1)],
        ]);
        let err = m.inverse().err().expect("singular");
        // kernel vector v with M v = 0
        let v = err.kernel;
        assert!(v.iter().any(|x| !x.is_zero()));
        for i in 0..2 {
            let mut acc = RationalFunction::zero(3);
            for j in 0..2 {
                acc = acc.add(&m.entry(i, j).mul(&v[j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        // zero 1x1 matrix -> T
        let zero = FFMatrix::from_polys(&[vec![LaurentPoly::zero(0)]]);
        let mu = minimal_polynomial(&zero);
        assert_eq!(mu.len(), 2);
        assert!(mu[0].is_zero());
        // identity 2x2 -> T - 1
        let id = FFMatrix::identity(2, 0);
        let mu = minimal_polynomial(&id);
        assert_eq!(mu.len(), 2);
        assert_eq!(mu[0], RationalFunction::from_poly(LaurentPoly::from_int(-1, 0)));
    }

    #[test]
    fn to_text_is_stable() {
        let p = z(0).add(&LaurentPoly::monomial(ratio_rat(-1, 2), vec![0, -1, 0]));
        let names: Vec<String> = ["z1", "z2", "z3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.to_text(&names), "z1 + -1/2*z2^-1");
    }

    fn ratio_rat(n: i64, d: i64) -> Rat {
        crate::cartan::ratio(n, d)
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(-3i64..4, 2),
                -4i64..5,
            ),
            0..6,
        )
        .prop_map(|terms| {
            let mut p = LaurentPoly::zero(2);
            for (exps, c) in terms {
                p = p.add(&LaurentPoly::monomial(rat(c), exps));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        }

        #[test]
        fn division_cancels_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b);
            let q = p.divide_exact(&b).expect("product is divisible");
            prop_assert_eq!(q, a);
        }

        #[test]
        fn inverse_round_trip(x in arb_poly(), y in arb_poly()) {
            // [[1, x], [y, 1 + xy]] is a product of elementary matrices,
            // hence invertible with determinant 1.
            let one = LaurentPoly::one(2);
            let m = FFMatrix::from_polys(&[
                vec![one.clone(), x.clone()],
                vec![y.clone(), one.add(&x.mul(&y))],
            ]);
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv), FFMatrix::identity(2, 2));
        }
    }
}
