//! Linear free divisors given by a Lie-algebra presentation.
//!
//! A presentation is a list of `n` matrices `A_i`; each gives the linear
//! vector field `ξ_i = Σ_j (A_i x)_j ∂_j`. The determinant of their
//! coefficient matrix is the defining equation `h` (Saito's criterion).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactalg::{
    apply_derivation, graded_dimension, int, squarefree_test, PolyMatrix, Rational, RationalMatrix,
    SparsePoly,
};
use crate::{Error, Result};

/// Default cap on the number of monomials in a dense graded piece.
pub const DEFAULT_MAX_MONOMIALS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfdPresentation {
    pub name: String,
    pub n: usize,
    pub lie_basis: Vec<RationalMatrix>,
}

impl LfdPresentation {
    pub fn new(name: impl Into<String>, lie_basis: Vec<RationalMatrix>) -> Result<Self> {
        let n = lie_basis.len();
        for a in &lie_basis {
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.rows().max(a.cols()),
                });
            }
        }
        if n == 0 {
            return Err(Error::UnsupportedParameter("empty presentation".into()));
        }
        Ok(LfdPresentation {
            name: name.into(),
            n,
            lie_basis,
        })
    }

    /// Coefficient matrix of the fields: row `i` is `A_i · x`.
    pub fn coefficient_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_linear_fields(&self.lie_basis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reductive {
    Yes,
    No,
    Unknown,
}

impl Reductive {
    pub fn as_str(self) -> &'static str {
        match self {
            Reductive::Yes => "yes",
            Reductive::No => "no",
            Reductive::Unknown => "unknown",
        }
    }
}

/// Output of [`saito_check`].
#[derive(Clone, Debug)]
pub struct SaitoData {
    /// Reduced equation, monic for grevlex.
    pub h: SparsePoly,
    /// `det = saito_scalar · h`.
    pub saito_scalar: Rational,
}

/// Output of [`character_weights`].
#[derive(Clone, Debug)]
pub struct Weights {
    /// `ξ_{A_i}(h) = λ_i h` for the input basis.
    pub weights: Vec<Rational>,
    /// `[I, A'_..]`: identity followed by the log-`h` basis.
    pub normalized_basis: Vec<RationalMatrix>,
    pub log_h_basis: Vec<RationalMatrix>,
    /// Index into the input basis of each chosen log-`h` element.
    pub log_h_source: Vec<usize>,
}

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct LieStructure {
    pub constants: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug)]
pub struct DivisorData {
    pub n: usize,
    pub h: SparsePoly,
    pub saito_scalar: Rational,
    /// Saito determinant of the normalized basis divided by `h`.
    pub normalized_saito_scalar: Rational,
    pub weights: Vec<Rational>,
    /// Position of the Euler field in `normalized_basis` (always 0).
    pub euler_index: usize,
    pub normalized_basis: Vec<RationalMatrix>,
    pub log_h_basis: Vec<RationalMatrix>,
    pub special: bool,
    pub reductive: Reductive,
    /// Determinant of the dual fields of the normalized basis; may be zero.
    pub h_dual: SparsePoly,
}

/// Saito's criterion: the determinant is non-zero, of degree `n` and squarefree.
pub fn saito_check(p: &LfdPresentation) -> Result<SaitoData> {
    saito_check_capped(p, DEFAULT_MAX_MONOMIALS)
}

pub fn saito_check_capped(p: &LfdPresentation, max_monomials: u128) -> Result<SaitoData> {
    let n = p.n;
    let size = graded_dimension(n, n);
    if size > max_monomials {
        return Err(Error::ResourceCap {
            monomials: size,
            cap: max_monomials,
        });
    }
    let det = p.coefficient_matrix().det();
    if det.is_zero() {
        return Err(Error::DeterminantVanishes);
    }
    match det.homogeneous_degree() {
        Some(d) if d as usize == n => {}
        found => {
            return Err(Error::DegreeMismatch {
                expected: n as u32,
                found,
            })
        }
    }
    if !squarefree_test(&det)? {
        return Err(Error::NotReduced);
    }
    let (lc, h) = det.monic().expect("non-zero determinant");
    Ok(SaitoData {
        h,
        saito_scalar: lc,
    })
}

fn vectorize(ms: &[RationalMatrix]) -> RationalMatrix {
    // Column i holds the entries of ms[i].
    let rows = ms[0].rows() * ms[0].cols();
    RationalMatrix::from_fn(rows, ms.len(), |r, c| ms[c].entries()[r].clone())
}

/// Solves `M x = b` for many right-hand sides through a square invertible
/// block of the full-column-rank matrix `M`.
struct SpanSolver {
    m: RationalMatrix,
    rows: Vec<usize>,
    inv: RationalMatrix,
}

impl SpanSolver {
    fn new(m: RationalMatrix) -> Option<Self> {
        let (_, pivots) = m.transpose().rref();
        if pivots.len() < m.cols() {
            return None;
        }
        let sub = RationalMatrix::from_fn(m.cols(), m.cols(), |i, j| m[(pivots[i], j)].clone());
        let inv = sub.inverse()?;
        Some(SpanSolver {
            m,
            rows: pivots,
            inv,
        })
    }

    fn coordinates(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let sub: Vec<Rational> = self.rows.iter().map(|&r| b[r].clone()).collect();
        let x = self.inv.mul_vec(&sub);
        (self.m.mul_vec(&x) == b).then_some(x)
    }
}

/// Checks that the span of the basis is closed under commutators and returns
/// the structure constants.
pub fn lie_structure(p: &LfdPresentation) -> Result<LieStructure> {
    let n = p.n;
    let solver = SpanSolver::new(vectorize(&p.lie_basis)).ok_or(Error::DeterminantVanishes)?;
    let mut constants = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = p.lie_basis[i].commutator(&p.lie_basis[j]);
            let x = solver.coordinates(c.entries()).ok_or(Error::NotLieClosed)?;
            constants[j][i] = x.iter().map(|v| -v).collect();
            constants[i][j] = x;
        }
    }
    Ok(LieStructure { constants })
}

/// Semi-invariance weights and the split into Euler field plus log-`h` fields.
pub fn character_weights(p: &LfdPresentation, h: &SparsePoly) -> Result<Weights> {
    let n = p.n;
    let lead = h.leading_term().ok_or(Error::ZeroPolynomial)?;
    let mut weights = Vec::with_capacity(n);
    for (i, a) in p.lie_basis.iter().enumerate() {
        let xi_h = apply_derivation(a, h)?;
        let lambda = xi_h.coefficient(&lead.0) / &lead.1;
        if xi_h != h.scale(&lambda) {
            return Err(Error::NotSemiInvariant { index: i });
        }
        weights.push(lambda);
    }
    let id = RationalMatrix::identity(n);
    let solver = SpanSolver::new(vectorize(&p.lie_basis)).ok_or(Error::DeterminantVanishes)?;
    if solver.coordinates(id.entries()).is_none() {
        return Err(Error::MissingEuler);
    }
    let nn = int(n as i64);
    let shifted: Vec<RationalMatrix> = p
        .lie_basis
        .iter()
        .zip(&weights)
        .map(|(a, l)| a - &id.scale(&(l / &nn)))
        .collect();
    // Greedy choice of n-1 independent elements, in input order.
    let mut log_h_basis = Vec::new();
    let mut log_h_source = Vec::new();
    for (i, a) in shifted.iter().enumerate() {
        let mut trial = log_h_basis.clone();
        trial.push(a.clone());
        if vectorize(&trial).rank() == trial.len() {
            log_h_basis = trial;
            log_h_source.push(i);
        }
        if log_h_basis.len() == n - 1 {
            break;
        }
    }
    if log_h_basis.len() != n - 1 {
        return Err(Error::DeterminantVanishes);
    }
    let mut normalized_basis = vec![id];
    normalized_basis.extend(log_h_basis.iter().cloned());
    Ok(Weights {
        weights,
        normalized_basis,
        log_h_basis,
        log_h_source,
    })
}

/// Special iff every log-`h` field has trace zero.
pub fn specialness_check(log_h_basis: &[RationalMatrix]) -> bool {
    log_h_basis.iter().all(|a| a.trace().is_zero())
}

/// Lie-algebra test standing in for reductivity of the group: the algebra
/// splits as centre plus derived algebra, the Killing form of the derived
/// algebra is non-degenerate and the centre acts semisimply.
pub fn reductivity_check(p: &LfdPresentation, special: bool) -> Result<Reductive> {
    if !special {
        return Ok(Reductive::No);
    }
    let n = p.n;
    let lie = lie_structure(p)?;
    let c = &lie.constants;
    let bracket = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..n {
                    if !c[i][j][k].is_zero() {
                        out[k] += &s * &c[i][j][k];
                    }
                }
            }
        }
        out
    };

    let all: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| c[i][j].clone())
        .collect();
    let derived: Vec<Vec<Rational>> = if all.is_empty() {
        Vec::new()
    } else {
        let (r, piv) = RationalMatrix::from_rows(all).rref();
        (0..piv.len()).map(|i| r.row(i)).collect()
    };
    // Centre: x with Σ_i x_i c[i][j] = 0 for every j.
    let centre_eqs = RationalMatrix::from_fn(n * n, n, |r, i| c[i][r / n][r % n].clone());
    let centre = centre_eqs.kernel_basis();
    if derived.len() + centre.len() != n {
        return Ok(Reductive::Unknown);
    }
    let mut both = derived.clone();
    both.extend(centre.iter().cloned());
    if RationalMatrix::from_rows(both).rank() != n {
        return Ok(Reductive::Unknown);
    }
    let m = derived.len();
    if m > 0 {
        let basis_cols = RationalMatrix::from_fn(n, m, |r, k| derived[k][r].clone());
        let solver = SpanSolver::new(basis_cols).expect("derived basis is independent");
        let ad: Vec<RationalMatrix> = derived
            .iter()
            .map(|x| {
                let cols: Vec<Vec<Rational>> = derived
                    .iter()
                    .map(|y| {
                        solver
                            .coordinates(&bracket(x, y))
                            .expect("derived algebra is an ideal")
                    })
                    .collect();
                RationalMatrix::from_fn(m, m, |i, j| cols[j][i].clone())
            })
            .collect();
        let killing = RationalMatrix::from_fn(m, m, |a, b| (&ad[a] * &ad[b]).trace());
        if killing.determinant().is_zero() {
            return Ok(Reductive::Unknown);
        }
    }
    for z in &centre {
        let mut mat = RationalMatrix::zeros(n, n);
        for (coef, a) in z.iter().zip(&p.lie_basis) {
            if !coef.is_zero() {
                mat = &mat + &a.scale(coef);
            }
        }
        if !mat.is_semisimple() {
            return Ok(Reductive::Unknown);
        }
    }
    Ok(Reductive::Yes)
}

/// Determinant of the fields `(∂/∂y) · ᵗA · y` on the dual space.
pub fn dual_equation(normalized_basis: &[RationalMatrix]) -> SparsePoly {
    let transposed: Vec<RationalMatrix> = normalized_basis
        .iter()
        .map(RationalMatrix::transpose)
        .collect();
    PolyMatrix::from_linear_fields(&transposed).det()
}

/// Full divisor analysis in pipeline order.
pub fn analyze_divisor(p: &LfdPresentation, max_monomials: u128) -> Result<DivisorData> {
    let saito = saito_check_capped(p, max_monomials)?;
    let w = character_weights(p, &saito.h)?;
    lie_structure(p)?;
    let norm_det = PolyMatrix::from_linear_fields(&w.normalized_basis).det();
    let lead = &saito.h.leading_term().expect("h is non-zero").0;
    let normalized_saito_scalar = norm_det.coefficient(lead);
    let special = specialness_check(&w.log_h_basis);
    let reductive = reductivity_check(p, special)?;
    let h_dual = dual_equation(&w.normalized_basis);
    Ok(DivisorData {
        n: p.n,
        h: saito.h,
        saito_scalar: saito.saito_scalar,
        normalized_saito_scalar,
        weights: w.weights,
        euler_index: 0,
        normalized_basis: w.normalized_basis,
        log_h_basis: w.log_h_basis,
        special,
        reductive,
        h_dual,
    })
}

/// Substitute polynomials for the variables of `p`.
pub fn compose(p: &SparsePoly, subs: &[SparsePoly]) -> SparsePoly {
    let nv = subs.first().map_or(0, SparsePoly::nvars);
    let mut acc = SparsePoly::zero(nv);
    let mut cache: Vec<Vec<SparsePoly>> = subs
        .iter()
        .map(|s| vec![SparsePoly::one(nv), s.clone()])
        .collect();
    for (m, c) in p.terms() {
        let mut t = SparsePoly::constant(nv, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while cache[i].len() <= e as usize {
                let next = cache[i].last().unwrap() * &subs[i];
                cache[i].push(next);
            }
            t = &t * &cache[i][e as usize];
        }
        acc = &acc + &t;
    }
    acc
}

/// How an identity between polynomials was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    /// Both sides expanded and compared.
    Symbolic,
    /// Compared at seeded random rational points; a false positive needs every
    /// point to lie on a proper hypersurface.
    Evaluation { points: usize },
}

#[derive(Clone, Debug)]
pub struct HessianReport {
    /// `h_dual(∇h) = c · H · h`.
    pub c: Rational,
    /// The constant forced by the field normalization: `(-1)^(n-1) s / (n-1)`,
    /// with `s` the Saito scalar of the normalized basis.
    pub expected_c: Rational,
    pub matches_expected: bool,
    /// `c / (n-1)` so the literal constant `n-1` can be read off.
    pub ratio_to_n_minus_1: Rational,
    pub method: CheckMethod,
}

/// Above this dimension the Hessian identities are checked by evaluation.
pub const SYMBOLIC_HESSIAN_MAX_N: usize = 4;
const EVAL_POINTS: usize = 6;

pub fn hessian_matrix(h: &SparsePoly) -> PolyMatrix {
    let n = h.nvars();
    let grad = h.gradient();
    PolyMatrix::from_fn(n, n, |i, j| grad[i].derivative(j))
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| Rational::from_integer(rng.gen_range(-40i64..=40).into()))
                .collect()
        })
        .collect()
}

/// Proportionality `lhs = c · rhs` tested at sample points. Returns `None`
/// when the ratio is inconsistent or every sample has `rhs = 0`.
fn proportional_at_points(
    points: &[Vec<Rational>],
    mut lhs: impl FnMut(&[Rational]) -> Rational,
    mut rhs: impl FnMut(&[Rational]) -> Rational,
) -> Option<Rational> {
    let mut c: Option<Rational> = None;
    for pt in points {
        let l = lhs(pt);
        let r = rhs(pt);
        if r.is_zero() {
            if !l.is_zero() {
                return None;
            }
            continue;
        }
        let ratio = l / r;
        match &c {
            Some(prev) if *prev != ratio => return None,
            Some(_) => {}
            None => c = Some(ratio),
        }
    }
    c
}

pub fn hessian_identity_check(d: &DivisorData) -> Result<HessianReport> {
    let n = d.n;
    if n < 2 {
        return Err(Error::UnsupportedParameter(
            "Hessian identity needs n >= 2".into(),
        ));
    }
    if d.h_dual.is_zero() {
        return Err(Error::IdentityFails("dual equation vanishes".into()));
    }
    let sign = if (n - 1) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let n1 = int(n as i64 - 1);
    let expected_c = sign * &d.normalized_saito_scalar / &n1;
    let hess = hessian_matrix(&d.h);
    let (c, method) = if n <= SYMBOLIC_HESSIAN_MAX_N {
        let lhs = compose(&d.h_dual, &d.h.gradient());
        let rhs = &hess.det() * &d.h;
        let (lm, lc) = rhs
            .leading_term()
            .ok_or_else(|| Error::IdentityFails("Hessian vanishes".into()))?;
        let c = lhs.coefficient(lm) / lc;
        if lhs != rhs.scale(&c) {
            return Err(Error::IdentityFails(
                "h_dual(grad h) is not a multiple of H h".into(),
            ));
        }
        (c, CheckMethod::Symbolic)
    } else {
        let grad = d.h.gradient();
        let pts = sample_points(n, EVAL_POINTS, 0x4e55);
        let c = proportional_at_points(
            &pts,
            |pt| {
                let g: Vec<Rational> = grad.iter().map(|q| q.evaluate(pt)).collect();
                d.h_dual.evaluate(&g)
            },
            |pt| hess.evaluate(pt).determinant() * d.h.evaluate(pt),
        )
        .ok_or_else(|| Error::IdentityFails("h_dual(grad h) is not a multiple of H h".into()))?;
        (
            c,
            CheckMethod::Evaluation {
                points: EVAL_POINTS,
            },
        )
    };
    if c.is_zero() {
        return Err(Error::IdentityFails(
            "proportionality constant is zero".into(),
        ));
    }
    Ok(HessianReport {
        matches_expected: c == expected_c,
        ratio_to_n_minus_1: &c / &n1,
        c,
        expected_c,
        method,
    })
}

#[derive(Clone, Debug)]
pub struct B0Report {
    /// `(n-1) H = b0 · h^(n-2)`.
    pub b0: Rational,
    pub method: CheckMethod,
}

/// Leading coefficient of the b-function; skipped unless reductive.
pub fn b0_check(d: &DivisorData) -> Result<Option<B0Report>> {
    if d.reductive != Reductive::Yes {
        return Ok(None);
    }
    let n = d.n;
    if n < 2 {
        return Ok(None);
    }
    let n1 = int(n as i64 - 1);
    let hess = hessian_matrix(&d.h);
    let fail = || Error::IdentityFails("(n-1)H is not a multiple of h^(n-2)".into());
    if n <= SYMBOLIC_HESSIAN_MAX_N {
        let big_h = hess.det();
        let hp = d.h.pow(n as u32 - 2);
        let (lm, lc) = hp.leading_term().expect("h is non-zero");
        let mu = big_h.coefficient(lm) / lc;
        if big_h != hp.scale(&mu) || mu.is_zero() {
            return Err(fail());
        }
        return Ok(Some(B0Report {
            b0: mu * n1,
            method: CheckMethod::Symbolic,
        }));
    }
    let pts = sample_points(n, EVAL_POINTS, 0xb0);
    let mu = proportional_at_points(
        &pts,
        |pt| hess.evaluate(pt).determinant(),
        |pt| {
            let v = d.h.evaluate(pt);
            let mut acc = Rational::one();
            for _ in 0..n - 2 {
                acc *= &v;
            }
            acc
        },
    )
    .ok_or_else(fail)?;
    if mu.is_zero() {
        return Err(fail());
    }
    Ok(Some(B0Report {
        b0: mu * n1,
        method: CheckMethod::Evaluation {
            points: EVAL_POINTS,
        },
    }))
}
