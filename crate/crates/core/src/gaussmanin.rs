//! Gauss–Manin data in the basis `ω_i = (-f)^(i-1) α`.
//!
//! The connection matrix is `Ω = Ω_0 + Σ_k Ω_k τ^(-k)` with `Ω_0 = N + c_0 t E_{1n}`
//! (`N` the lower shift) and `Ω_k = c_k E_{n+1-k, n}`, so only its last
//! column carries information. The `c_k` come from repeatedly splitting a
//! polynomial by [`divide`] and pushing the Jacobian part down one power of
//! `τ` with the trace trick `τ g ξ(f) α = (ξ(g) + tr(ξ) g) α`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::divisor::DivisorData;
use crate::exactalg::{
    apply_derivation, graded_dimension, int, Rational, RationalMatrix, SparsePoly,
};
use crate::sections::{divide, divide_graded, DivisionResult, FinitenessCertificate};
use crate::{Error, Result};

/// `Σ_j ξ_j(k_j) + tr(ξ_j) k_j`.
/// `nvars` is explicit because the basis is empty when `n = 1`.
pub fn trick_reduce(
    kjs: &[SparsePoly],
    log_h_basis: &[RationalMatrix],
    nvars: usize,
) -> Result<SparsePoly> {
    if kjs.len() != log_h_basis.len() {
        return Err(Error::DimensionMismatch {
            expected: log_h_basis.len(),
            found: kjs.len(),
        });
    }
    let mut degree = None;
    for k in kjs.iter().filter(|k| !k.is_zero()) {
        let d = k.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        match degree {
            Some(prev) if prev != d => {
                return Err(Error::DegreeMismatch {
                    expected: prev,
                    found: Some(d),
                })
            }
            _ => degree = Some(d),
        }
    }
    let mut acc = SparsePoly::zero(nvars);
    for (k, a) in kjs.iter().zip(log_h_basis) {
        if k.is_zero() {
            continue;
        }
        acc = &acc + &apply_derivation(a, k)?;
        let tr = a.trace();
        if !tr.is_zero() {
            acc = &acc + &k.scale(&tr);
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionCoefficients {
    /// `c_0, …, c_n`.
    pub c: Vec<Rational>,
    /// Whether `t` has been rescaled so that `c_0 = 1`.
    pub normalized: bool,
    /// The factor absorbed into `t`.
    pub t_scale: Rational,
}

impl ConnectionCoefficients {
    pub fn n(&self) -> usize {
        self.c.len() - 1
    }

    /// `Ω_k` for `k ≥ 1`; `Ω_0` depends on `t`, see [`Self::omega0_at`].
    pub fn omega(&self, k: usize) -> RationalMatrix {
        let n = self.n();
        let mut m = RationalMatrix::zeros(n, n);
        if (1..=n).contains(&k) {
            m[(n - k, n - 1)] = self.c[k].clone();
        }
        m
    }

    /// `Ω_0` at the given value of `t`.
    pub fn omega0_at(&self, t: &Rational) -> RationalMatrix {
        let n = self.n();
        let mut m = shift_matrix(n);
        m[(0, n - 1)] += &self.c[0] * t;
        m
    }
}

/// Lower shift `N`: `N e_i = e_{i+1}`.
pub fn shift_matrix(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Refuse work whose dense degree-`n` piece is too large.
pub fn check_degree_cap(n: usize, max_monomials: u128) -> Result<()> {
    let size = graded_dimension(n, n);
    if size > max_monomials {
        return Err(Error::ResourceCap {
            monomials: size,
            cap: max_monomials,
        });
    }
    Ok(())
}

/// Per-step record of the iteration.
#[derive(Clone, Debug)]
pub struct ConnectionStep {
    pub degree: u32,
    pub division: DivisionResult,
}

pub fn connection_matrix(
    d: &DivisorData,
    cert: &FinitenessCertificate,
) -> Result<ConnectionCoefficients> {
    connection_matrix_with(d, cert, divide).map(|(c, _)| c)
}

/// As [`connection_matrix`] with a pluggable division routine, also returning
/// every intermediate division.
pub fn connection_matrix_with(
    d: &DivisorData,
    cert: &FinitenessCertificate,
    mut div: impl FnMut(&SparsePoly, &FinitenessCertificate) -> Result<DivisionResult>,
) -> Result<(ConnectionCoefficients, Vec<ConnectionStep>)> {
    if !cert.rh_finite {
        return Err(Error::NotFinite);
    }
    let n = d.n;
    let minus_f = -cert.f();
    let mut g = minus_f.pow(n as u32);
    let mut c = Vec::with_capacity(n + 1);
    let mut steps = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let ell = (n - r) as u32;
        if !g.is_zero() && g.homogeneous_degree() != Some(ell) {
            return Err(Error::DegreeMismatch {
                expected: ell,
                found: g.homogeneous_degree(),
            });
        }
        let res = if g.is_zero() {
            divide_graded(&g, ell, cert)?
        } else {
            div(&g, cert)?
        };
        let sign = if r == 0 || (n - r) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        c.push(&res.c * sign);
        if r < n {
            g = trick_reduce(&res.quotients, &d.log_h_basis, d.n)?;
        }
        steps.push(ConnectionStep {
            degree: ell,
            division: res,
        });
    }
    if c[0].is_zero() {
        return Err(Error::InvalidConnection);
    }
    Ok((
        ConnectionCoefficients {
            c,
            normalized: false,
            t_scale: Rational::one(),
        },
        steps,
    ))
}

/// Absorb `c_0` into `t`. Only the entry `c_0 t` involves `t`, so the other
/// coefficients are untouched.
pub fn normalize_c0(cc: &ConnectionCoefficients) -> Result<ConnectionCoefficients> {
    let c0 = cc.c.first().ok_or(Error::InvalidConnection)?;
    if c0.is_zero() {
        return Err(Error::InvalidConnection);
    }
    let mut c = cc.c.clone();
    c[0] = Rational::one();
    Ok(ConnectionCoefficients {
        c,
        normalized: true,
        t_scale: &cc.t_scale * c0,
    })
}

/// Finite sum `Σ_m p_m τ^(-m) α`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GMElement {
    pub terms: BTreeMap<u32, SparsePoly>,
}

/// Coefficient of `t^a τ^(-m)` keyed by `(a, m)`.
pub type TauTSeries = BTreeMap<(u32, u32), Rational>;

impl GMElement {
    pub fn from_poly(p: SparsePoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(0, p);
        }
        GMElement { terms }
    }

    /// `deg(p) - m` when it is the same for every term (`deg τ = -1`).
    pub fn graded_degree(&self) -> Option<i64> {
        let mut out = None;
        for (m, p) in &self.terms {
            let d = p.homogeneous_degree()? as i64 - *m as i64;
            match out {
                Some(prev) if prev != d => return None,
                _ => out = Some(d),
            }
        }
        out
    }

    /// Coordinates in the basis `ω_1, …, ω_n`, with `h α = t α`.
    pub fn express(
        &self,
        d: &DivisorData,
        cert: &FinitenessCertificate,
    ) -> Result<Vec<TauTSeries>> {
        let n = d.n;
        let mut out = vec![TauTSeries::new(); n];
        let mut pending: BTreeMap<u32, SparsePoly> = self.terms.clone();
        while let Some((m, p)) = pending.pop_first() {
            if p.is_zero() {
                continue;
            }
            for (_, comp) in p.homogeneous_components() {
                let res = divide(&comp, cert)?;
                if !res.c.is_zero() {
                    // c h^q f^r = c (-1)^r t^q ω_{r+1}
                    let sign = if res.power_index % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    *out[res.power_index as usize]
                        .entry((res.h_power, m))
                        .or_insert_with(Rational::zero) += &res.c * sign;
                }
                let next = trick_reduce(&res.quotients, &d.log_h_basis, d.n)?;
                if !next.is_zero() {
                    let slot = pending.entry(m + 1).or_insert_with(|| SparsePoly::zero(n));
                    *slot = &*slot + &next;
                }
            }
        }
        for series in &mut out {
            series.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }
}

/// Matrix of `n t ∂_t` in the final basis: `D̃ + τ Ω_0 + A_∞`, where
/// `D̃ = diag(0, …, n-1) + k n Id` and `A_∞ = diag(-ν)`.
#[derive(Clone, Debug)]
pub struct TConnection {
    /// `i - 1 + k n - ν_i`.
    pub diagonal: Vec<Rational>,
    pub c0: Rational,
    /// Set when the divisor is not known to be reductive; the matrix is then
    /// emitted without a validity claim.
    pub non_reductive_warning: bool,
    pub flatness_holds: bool,
}

pub fn t_connection_matrix(nu: &[Rational], k: u32, c0: &Rational, reductive: bool) -> TConnection {
    let n = nu.len();
    let kn = int((k as usize * n) as i64);
    let diagonal: Vec<Rational> = nu
        .iter()
        .enumerate()
        .map(|(i, v)| int(i as i64) + &kn - v)
        .collect();
    TConnection {
        diagonal,
        c0: c0.clone(),
        non_reductive_warning: !reductive,
        flatness_holds: flatness_check(nu, k, c0),
    }
}

/// The integrability relations for `A = Ω_0(t)`, `A' = Ω_0 / n`, `B = A_∞`,
/// `B' = (A_∞ + D̃) / n`, checked as polynomial identities in `t` by comparing
/// the coefficients of `t^0` and `t^1`.
pub fn flatness_check(nu: &[Rational], k: u32, c0: &Rational) -> bool {
    let n = nu.len();
    if n == 0 {
        return true;
    }
    let nn = int(n as i64);
    let kn = int((k as usize * n) as i64);
    let b = RationalMatrix::diagonal(&nu.iter().map(|v| -v).collect::<Vec<_>>());
    let dt = RationalMatrix::diagonal(&(0..n).map(|i| int(i as i64) + &kn).collect::<Vec<_>>());
    let b_prime = (&b + &dt).scale(&nn.recip());
    let mut a_t = RationalMatrix::zeros(n, n);
    a_t[(0, n - 1)] = c0.clone();
    let parts = [shift_matrix(n), a_t];
    // Coefficient of t^e in each relation.
    for (e, a) in parts.iter().enumerate() {
        let a_prime = a.scale(&nn.recip());
        if !a.commutator(&a_prime).is_zero() {
            return false;
        }
        let t_dt_a = if e == 1 {
            a.clone()
        } else {
            RationalMatrix::zeros(n, n)
        };
        let lhs = &t_dt_a - &a_prime;
        let rhs = &a.commutator(&b_prime) - &a_prime.commutator(&b);
        if lhs != rhs {
            return false;
        }
    }
    // The cross terms of [A, A'] between t^0 and t^1 cancel by symmetry.
    b.commutator(&b_prime).is_zero()
}
