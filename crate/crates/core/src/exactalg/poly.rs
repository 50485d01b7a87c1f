use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{monomials_of_degree, Monomial};
use super::{Rational, RationalMatrix, UniPoly};
use crate::{Error, Result};

/// Sparse polynomial over `Q`. Terms are kept sorted by descending grevlex
/// order with no zero coefficients, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic entry point; the operator impls assume matching dimensions.
pub fn poly_arith(a: &SparsePoly, b: &SparsePoly, op: PolyOp) -> Result<SparsePoly> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

/// `ξ_A(p) = Σ_j (A x)_j ∂p/∂x_j`.
pub fn apply_derivation(a: &RationalMatrix, p: &SparsePoly) -> Result<SparsePoly> {
    let n = p.nvars;
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.rows(),
        });
    }
    let sparse_rows: Vec<Vec<(usize, &Rational)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| !a[(j, k)].is_zero())
                .map(|k| (k, &a[(j, k)]))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(p.terms.len() * 2);
    for (m, c) in &p.terms {
        for (j, row) in sparse_rows.iter().enumerate() {
            let e = m.exp(j);
            if e == 0 || row.is_empty() {
                continue;
            }
            let ce = c * Rational::from_integer(e.into());
            for &(k, akj) in row {
                let mono = if k == j { m.clone() } else { m.moved(j, k) };
                out.push((mono, &ce * akj));
            }
        }
    }
    Ok(SparsePoly::from_unsorted(n, out))
}

/// Squarefreeness via restriction to random lines.
///
/// If `p = q²r` with `q` non-constant, then on any line `a + s·b` along which
/// `p` keeps its full degree the restriction is divisible by the square of
/// the (non-constant) restriction of `q`. So a single line giving a
/// squarefree univariate restriction of full degree certifies that `p` is
/// squarefree. Several seeded lines are tried before answering `false`.
pub fn squarefree_test(p: &SparsePoly) -> Result<bool> {
    use rand::{Rng, SeedableRng};
    let Some(deg) = p.total_degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if deg <= 1 {
        return Ok(true);
    }
    let n = p.nvars;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..12 {
        let mut draw = || -> Vec<Rational> {
            (0..n)
                .map(|_| Rational::from_integer(rng.gen_range(-60i64..=60).into()))
                .collect()
        };
        let a = draw();
        let b = draw();
        let u = p.restrict_to_line(&a, &b);
        if u.degree() == Some(deg as usize) && u.is_squarefree() {
            return Ok(true);
        }
    }
    Ok(false)
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_unsorted(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        SparsePoly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), Rational::one())],
        }
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(n, i), c.clone()))
            .collect();
        Self::from_unsorted(n, terms)
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_unsorted(nvars: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.iter().all(|(m, _)| m.nvars() == nvars));
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = merged.last() {
                        if lc.is_zero() {
                            merged.pop();
                        }
                    }
                    merged.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = merged.last() {
            if lc.is_zero() {
                merged.pop();
            }
        }
        SparsePoly {
            nvars,
            terms: merged,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree if every term has the same degree. The zero polynomial is
    /// homogeneous of every degree and reports `None` here.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Homogeneous components, keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, SparsePoly> {
        let mut by_deg: BTreeMap<u32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_deg
                .entry(m.degree())
                .or_default()
                .push((m.clone(), c.clone()));
        }
        by_deg
            .into_iter()
            .map(|(d, t)| {
                (
                    d,
                    SparsePoly {
                        nvars: self.nvars,
                        terms: t,
                    },
                )
            })
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| m.cmp(x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Divide by the grevlex leading coefficient. Returns that coefficient too.
    pub fn monic(&self) -> Option<(Rational, SparsePoly)> {
        let lc = self.terms.first()?.1.clone();
        Some((lc.clone(), self.scale(&lc.recip())))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        // Multiplying by a monomial preserves grevlex order.
        let terms = self.terms.iter().map(|(x, a)| (x.mul(m), a * c)).collect();
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| (m.bumped(i, -1), c * Rational::from_integer(m.exp(i).into())))
            .collect();
        // Dividing every term by x_i preserves a monomial order.
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn gradient(&self) -> Vec<SparsePoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        // Cache powers per variable up to the maximal exponent.
        let mut max_e = vec![0u16; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&max_e)
            .map(|(x, &k)| {
                let mut v = Vec::with_capacity(k as usize + 1);
                v.push(Rational::one());
                for j in 1..=k as usize {
                    let next = &v[j - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// `p(a + s·b)` as a polynomial in `s`.
    pub fn restrict_to_line(&self, a: &[Rational], b: &[Rational]) -> UniPoly {
        let n = self.nvars;
        assert!(a.len() == n && b.len() == n);
        let lin: Vec<UniPoly> = (0..n)
            .map(|i| UniPoly::from_coeffs(vec![a[i].clone(), b[i].clone()]))
            .collect();
        let mut cache: Vec<Vec<UniPoly>> = lin
            .iter()
            .map(|l| vec![UniPoly::one(), l.clone()])
            .collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &lin[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &SparsePoly) -> Option<SparsePoly> {
        assert_eq!(self.nvars, d.nvars);
        let (lm, lc) = d.leading_term()?.clone();
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / &lc;
            for (dm, dc) in d.terms.iter().skip(1) {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    alloc::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    alloc::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(SparsePoly::from_unsorted(self.nvars, quot))
    }

    /// Substitute `x ↦ L·x`, i.e. `x_i ↦ Σ_j L_ij x_j`.
    pub fn linear_change(&self, l: &RationalMatrix) -> Result<SparsePoly> {
        let n = self.nvars;
        if l.rows() != n || l.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: l.rows(),
            });
        }
        if l.rank() < n {
            return Err(Error::SingularMatrix);
        }
        let forms: Vec<SparsePoly> = (0..n).map(|i| SparsePoly::linear(&l.row(i))).collect();
        let mut cache: Vec<Vec<SparsePoly>> = forms
            .iter()
            .map(|f| vec![SparsePoly::one(n), f.clone()])
            .collect();
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &forms[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out.extend(t.terms);
        }
        Ok(SparsePoly::from_unsorted(n, out))
    }

    /// Sorts and merges again; a no-op on any value produced by this type.
    pub fn recanonicalize(&self) -> SparsePoly {
        SparsePoly::from_unsorted(self.nvars, self.terms.clone())
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coefficients(&self) -> Vec<Rational> {
        (0..self.nvars)
            .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
            .collect()
    }

    /// All monomials of degree `d` in descending order.
    pub fn monomial_basis(nvars: usize, d: u32) -> Vec<Monomial> {
        monomials_of_degree(nvars, d)
    }
}

fn merge_sorted(a: &SparsePoly, b: &SparsePoly, negate_b: bool) -> SparsePoly {
    assert_eq!(a.nvars, b.nvars, "polynomials live in different rings");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (am, ac) = &a.terms[i];
        let (bm, bc) = &b.terms[j];
        match am.cmp(bm) {
            core::cmp::Ordering::Greater => {
                out.push((am.clone(), ac.clone()));
                i += 1;
            }
            core::cmp::Ordering::Less => {
                out.push((bm.clone(), if negate_b { -bc } else { bc.clone() }));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                let c = if negate_b { ac - bc } else { ac + bc };
                if !c.is_zero() {
                    out.push((am.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(
        b.terms[j..]
            .iter()
            .map(|(m, c)| (m.clone(), if negate_b { -c } else { c.clone() })),
    );
    SparsePoly {
        nvars: a.nvars,
        terms: out,
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        merge_sorted(self, rhs, false)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        merge_sorted(self, rhs, true)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        SparsePoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials live in different rings");
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_monomial(m, c);
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &rhs.terms {
                out.push((am.mul(bm), ac * bc));
            }
        }
        SparsePoly::from_unsorted(self.nvars, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
