//! Linear sections `f`, their finiteness, and division in the Jacobian
//! algebra `Q[V] / (ξ_1(f), …, ξ_{n-1}(f))`.
//!
//! When `f` is finite the forms `ξ_j(f)` cut out a line `L_f` through a point
//! `v` of the open orbit, and every homogeneous `g` of degree `ℓ` splits as
//! `g = c · h^⌊ℓ/n⌋ · f^(ℓ mod n) + Σ k_j ξ_j(f)`. Evaluating at `v` gives
//! `c` at once; the `k_j` come from synthetic division by the row-reduced
//! forms, which all have the shape `x_p + m · x_s`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::divisor::DivisorData;
use crate::exactalg::{solve_sparse, Monomial, Rational, RationalMatrix, SparsePoly};
use crate::{Error, Result};

/// Linear form `f = Σ f_j x_j`; never the zero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSection {
    coefficients: Vec<Rational>,
}

impl LinearSection {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::Parse("linear section is the zero vector".into()));
        }
        Ok(LinearSection { coefficients })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn as_poly(&self) -> SparsePoly {
        SparsePoly::linear(&self.coefficients)
    }

    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        LinearSection::new(self.coefficients.iter().map(|c| c * s).collect())
    }
}

/// Row-reduced Jacobian forms, kept for the division engine.
#[derive(Clone, Debug)]
struct Reduced {
    /// `ℓ'_j = x_{pivots[j]} + slopes[j] · x_free`.
    pivots: Vec<usize>,
    slopes: Vec<Rational>,
    free: usize,
    /// `ℓ'_j = Σ_i transform[j][i] ξ_i(f)`.
    transform: RationalMatrix,
}

#[derive(Clone, Debug)]
pub struct FinitenessCertificate {
    /// Coefficient vectors of `ξ_j(f)` for the log-`h` basis.
    pub jacobian_forms: Vec<Vec<Rational>>,
    /// Spans `L_f`; normalized to 1 in the free coordinate of the row reduction.
    pub lf_direction: Option<Vec<Rational>>,
    /// `h` restricted to `s · lf_direction` is `c_h sⁿ`.
    pub c_h: Rational,
    /// `h(v) / f(v)ⁿ`, which does not depend on how `v` is scaled.
    pub kappa: Rational,
    pub rd_finite: bool,
    pub rh_finite: bool,
    f: SparsePoly,
    h: SparsePoly,
    f_at_v: Rational,
    reduced: Option<Reduced>,
}

impl FinitenessCertificate {
    pub fn f(&self) -> &SparsePoly {
        &self.f
    }

    pub fn h(&self) -> &SparsePoly {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.nvars()
    }

    pub fn jacobian_polys(&self) -> Vec<SparsePoly> {
        self.jacobian_forms
            .iter()
            .map(|r| SparsePoly::linear(r))
            .collect()
    }
}

/// `f` lies off the dual divisor.
pub fn rd_finiteness(f: &LinearSection, h_dual: &SparsePoly) -> bool {
    !h_dual.is_zero() && !h_dual.evaluate(f.coefficients()).is_zero()
}

pub fn rh_finiteness(f: &LinearSection, d: &DivisorData) -> Result<FinitenessCertificate> {
    let n = d.n;
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.len(),
        });
    }
    let jacobian_forms: Vec<Vec<Rational>> = d
        .log_h_basis
        .iter()
        .map(|a| a.vec_mul(f.coefficients()))
        .collect();
    let rd_finite = rd_finiteness(f, &d.h_dual);
    let mut cert = FinitenessCertificate {
        jacobian_forms,
        lf_direction: None,
        c_h: Rational::zero(),
        kappa: Rational::zero(),
        rd_finite,
        rh_finite: false,
        f: f.as_poly(),
        h: d.h.clone(),
        f_at_v: Rational::zero(),
        reduced: None,
    };
    let m = n - 1;
    if m == 0 {
        // Only the Euler field: L_f is the whole line.
        let v = vec![Rational::one()];
        finish(&mut cert, v, None);
        return Ok(cert);
    }
    let aug = RationalMatrix::from_fn(m, n + m, |i, j| {
        if j < n {
            cert.jacobian_forms[i][j].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let (r, pivots) = aug.rref();
    if pivots.len() < m || pivots[m - 1] >= n {
        return Ok(cert);
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .expect("one free column");
    let slopes: Vec<Rational> = (0..m).map(|j| r[(j, free)].clone()).collect();
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (j, &p) in pivots.iter().enumerate() {
        v[p] = -slopes[j].clone();
    }
    let transform = RationalMatrix::from_fn(m, m, |i, j| r[(i, n + j)].clone());
    finish(
        &mut cert,
        v,
        Some(Reduced {
            pivots,
            slopes,
            free,
            transform,
        }),
    );
    Ok(cert)
}

fn finish(cert: &mut FinitenessCertificate, v: Vec<Rational>, reduced: Option<Reduced>) {
    let n = v.len();
    cert.c_h = cert.h.evaluate(&v);
    cert.f_at_v = cert.f.evaluate(&v);
    if !cert.f_at_v.is_zero() {
        let mut fv = Rational::one();
        for _ in 0..n {
            fv *= &cert.f_at_v;
        }
        cert.kappa = &cert.c_h / fv;
    }
    cert.rh_finite = !cert.c_h.is_zero() && !cert.f_at_v.is_zero();
    cert.lf_direction = Some(v);
    cert.reduced = Some(reduced.unwrap_or(Reduced {
        pivots: Vec::new(),
        slopes: Vec::new(),
        free: 0,
        transform: RationalMatrix::zeros(0, 0),
    }));
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub c: Rational,
    /// `ℓ mod n`, the power of `f`.
    pub power_index: u32,
    /// `⌊ℓ / n⌋`, the power of `h`.
    pub h_power: u32,
    /// One quotient per log-`h` field, homogeneous of degree `ℓ - 1`.
    pub quotients: Vec<SparsePoly>,
}

impl DivisionResult {
    /// `c · h^q · f^r + Σ k_j ξ_j(f)`.
    pub fn reconstruct(&self, cert: &FinitenessCertificate) -> SparsePoly {
        let mut acc = (&cert.h.pow(self.h_power) * &cert.f.pow(self.power_index)).scale(&self.c);
        for (k, xi) in self.quotients.iter().zip(cert.jacobian_polys()) {
            acc = &acc + &(k * &xi);
        }
        acc
    }
}

fn check_input(g: &SparsePoly, cert: &FinitenessCertificate) -> Result<u32> {
    if !cert.rh_finite {
        return Err(Error::NotFinite);
    }
    if g.nvars() != cert.n() {
        return Err(Error::DimensionMismatch {
            expected: cert.n(),
            found: g.nvars(),
        });
    }
    if g.is_zero() {
        return Ok(0);
    }
    g.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

fn zero_result(n: usize, ell: u32) -> DivisionResult {
    DivisionResult {
        c: Rational::zero(),
        power_index: ell % n as u32,
        h_power: ell / n as u32,
        quotients: vec![SparsePoly::zero(n); n - 1],
    }
}

/// Division of `g` by `x_p + m · x_s`, treating `g` as univariate in `x_p`.
fn synthetic_division(
    g: &SparsePoly,
    p: usize,
    m: &Rational,
    s: usize,
) -> (SparsePoly, SparsePoly) {
    let n = g.nvars();
    let beta = -m;
    let mut quot = Vec::new();
    let mut rem = Vec::new();
    for (mono, c) in g.terms() {
        let e = mono.exp(p);
        if e == 0 {
            rem.push((mono.clone(), c.clone()));
            continue;
        }
        let base = mono.bumped(p, -(e as i32));
        // x_p^e = (x_p - β x_s) Σ_{i<e} x_p^(e-1-i) (β x_s)^i + (β x_s)^e
        let mut bpow = Rational::one();
        for i in 0..e {
            if i > 0 {
                if beta.is_zero() {
                    break;
                }
                bpow *= &beta;
            }
            let mono_q = base.bumped(p, (e - 1 - i) as i32).bumped(s, i as i32);
            quot.push((mono_q, c * &bpow));
        }
        if !beta.is_zero() {
            let last = &bpow * &beta;
            rem.push((base.bumped(s, e as i32), c * last));
        }
    }
    (
        SparsePoly::from_unsorted(n, quot),
        SparsePoly::from_unsorted(n, rem),
    )
}

pub fn divide(g: &SparsePoly, cert: &FinitenessCertificate) -> Result<DivisionResult> {
    let ell = check_input(g, cert)?;
    divide_graded(g, ell, cert)
}

/// As [`divide`], with the degree given so that `g = 0` is placed in degree `ell`.
pub fn divide_graded(
    g: &SparsePoly,
    ell: u32,
    cert: &FinitenessCertificate,
) -> Result<DivisionResult> {
    let found = check_input(g, cert)?;
    if !g.is_zero() && found != ell {
        return Err(Error::DegreeMismatch {
            expected: ell,
            found: Some(found),
        });
    }
    let n = cert.n();
    if g.is_zero() {
        return Ok(zero_result(n, ell));
    }
    let red = cert
        .reduced
        .as_ref()
        .expect("finite certificates are reduced");
    let v = cert
        .lf_direction
        .as_ref()
        .expect("finite certificates have L_f");
    let q = ell / n as u32;
    let r = ell % n as u32;
    let mut denom = Rational::one();
    for _ in 0..q {
        denom *= &cert.c_h;
    }
    for _ in 0..r {
        denom *= &cert.f_at_v;
    }
    let c = g.evaluate(v) / denom;
    let mut rest = g - &(&cert.h.pow(q) * &cert.f.pow(r)).scale(&c);
    let mut qs = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let (qj, rj) = synthetic_division(&rest, red.pivots[j], &red.slopes[j], red.free);
        qs.push(qj);
        rest = rj;
    }
    if !rest.is_zero() {
        return Err(Error::InconsistentSystem(
            "division left a non-zero remainder".into(),
        ));
    }
    let m = n - 1;
    let quotients = (0..m)
        .map(|i| {
            let mut k = SparsePoly::zero(n);
            for (j, qj) in qs.iter().enumerate() {
                let t = &red.transform[(j, i)];
                if !t.is_zero() && !qj.is_zero() {
                    k = &k + &qj.scale(t);
                }
            }
            k
        })
        .collect();
    Ok(DivisionResult {
        c,
        power_index: r,
        h_power: q,
        quotients,
    })
}

/// Independent check of [`divide`]: one dense linear system for `c` and all
/// quotient coefficients.
pub fn divide_oracle(g: &SparsePoly, cert: &FinitenessCertificate) -> Result<DivisionResult> {
    let ell = check_input(g, cert)?;
    let n = cert.n();
    if g.is_zero() {
        return Ok(zero_result(n, ell));
    }
    let q = ell / n as u32;
    let r = ell % n as u32;
    let target = SparsePoly::monomial_basis(n, ell);
    let lower = if ell == 0 {
        Vec::new()
    } else {
        SparsePoly::monomial_basis(n, ell - 1)
    };
    let index = |m: &Monomial| {
        target
            .binary_search_by(|t| m.cmp(t))
            .expect("degree matches")
    };
    let base = &cert.h.pow(q) * &cert.f.pow(r);
    let forms = cert.jacobian_polys();
    let cols = 1 + (n - 1) * lower.len();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); target.len()];
    for (mono, c) in base.terms() {
        rows[index(mono)].push((0, c.clone()));
    }
    for (j, form) in forms.iter().enumerate() {
        for (b, low) in lower.iter().enumerate() {
            let col = 1 + j * lower.len() + b;
            for (mono, c) in form.terms() {
                rows[index(&mono.mul(low))].push((col, c.clone()));
            }
        }
    }
    let mut rhs = vec![Rational::zero(); target.len()];
    for (mono, c) in g.terms() {
        rhs[index(mono)] = c.clone();
    }
    let x = solve_sparse(cols, &rows, &rhs)
        .ok_or_else(|| Error::InconsistentSystem("oracle system has no solution".into()))?;
    let quotients = (0..n - 1)
        .map(|j| {
            let terms = lower
                .iter()
                .enumerate()
                .map(|(b, low)| (low.clone(), x[1 + j * lower.len() + b].clone()))
                .collect();
            SparsePoly::from_unsorted(n, terms)
        })
        .collect();
    Ok(DivisionResult {
        c: x[0].clone(),
        power_index: r,
        h_power: q,
        quotients,
    })
}
