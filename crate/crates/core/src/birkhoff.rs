//! Birkhoff normal form `Ω_0 + τ⁻¹ A_∞` with `A_∞` diagonal.
//!
//! The gauge `B = Id + Σ B_i τ^(-i)` is graded, so `B_i` lives on the `i`-th
//! superdiagonal with entries `b_i^m = (B_i)_{m-i, m}`. Writing
//! `x = diag(A_∞)` and comparing coefficients of `B X = dB/dτ + Ω B` gives
//!
//! * `x_r = b_1^r - b_1^(r+1)` for `r < n` and `x_n = b_1^n + c_1`;
//! * `[N, B_(i+1)] = B_i X + i B_i - Ω_(i+1)` for `i ≥ 1`.
//!
//! On the `i`-th superdiagonal the second relation reads
//! `b_(i+1)^(r+i) - b_(i+1)^(r+i+1) = -P^i_r` with
//! `P^i_r = -b_i^(r+i) (x_(r+i) + i) + [r = n-i] c_(i+1)`.
//! Summing over `r` telescopes to `Q^i = Σ_r P^i_r = 0`, and partial sums
//! back-fill `B_(i+1)`. Since `b_k^m` only involves `b_1^(≥m)`, `Q^i` is a
//! univariate polynomial in `b_1^(i+1)` once the higher ones are fixed.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactalg::{int, Rational, RationalMatrix, SparsePoly, UniPoly};
use crate::gaussmanin::ConnectionCoefficients;
use crate::{Error, Result};

/// Candidate roots of one `Q^i` and the one that was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootChoice {
    /// `i` in `Q^i`.
    pub equation: usize,
    pub polynomial: UniPoly,
    /// Distinct rational roots, ascending. Empty when `Q^i` vanishes identically.
    pub candidates: Vec<Rational>,
    pub chosen: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffSolution {
    pub n: usize,
    /// `b[i][m]` for `1 ≤ i < n`, `i < m ≤ n`; other slots are zero.
    pub b: Vec<Vec<Rational>>,
    /// `A_∞ = diag(-ν)`.
    pub nu1: Vec<Rational>,
    pub root_log: Vec<RootChoice>,
}

impl BirkhoffSolution {
    pub fn entry(&self, i: usize, m: usize) -> &Rational {
        &self.b[i][m]
    }

    /// `B_i` as a matrix.
    pub fn gauge(&self, i: usize) -> RationalMatrix {
        let n = self.n;
        let mut out = RationalMatrix::zeros(n, n);
        if (1..n).contains(&i) {
            for m in i + 1..=n {
                out[(m - i - 1, m - 1)] = self.b[i][m].clone();
            }
        }
        out
    }
}

/// `b_k^m` as polynomials in the unknown, for all `m ≥ lo`.
struct Table {
    n: usize,
    b: Vec<Vec<UniPoly>>,
    c: Vec<Rational>,
}

impl Table {
    fn b1(&self, m: usize) -> UniPoly {
        if m >= 2 && m <= self.n {
            self.b[1][m].clone()
        } else {
            UniPoly::zero()
        }
    }

    fn x(&self, s: usize) -> UniPoly {
        if s < self.n {
            &self.b1(s) - &self.b1(s + 1)
        } else {
            &self.b1(self.n) + &UniPoly::constant(self.c[1].clone())
        }
    }

    /// `P^k_r`.
    fn p(&self, k: usize, r: usize) -> UniPoly {
        let s = r + k;
        let shifted = &self.x(s) + &UniPoly::constant(int(k as i64));
        let mut out = -&(&self.b[k][s] * &shifted);
        if r == self.n - k {
            out = &out
                + &UniPoly::constant(self.c.get(k + 1).cloned().unwrap_or_else(Rational::zero));
        }
        out
    }

    /// Fill `b_k^m` for `2 ≤ k ≤ upto`, `m ≥ max(lo, k+1)`.
    fn fill(&mut self, lo: usize, upto: usize) {
        let n = self.n;
        for k in 2..=upto {
            for m in lo.max(k + 1)..=n {
                let mut acc = UniPoly::zero();
                for r in m - k + 1..=n - k + 1 {
                    acc = &acc + &self.p(k - 1, r);
                }
                self.b[k][m] = -&acc;
            }
        }
    }
}

fn new_table(n: usize, c: &[Rational]) -> Table {
    Table {
        n,
        b: vec![vec![UniPoly::zero(); n + 2]; n + 1],
        c: c.to_vec(),
    }
}

/// How to pick among the rational roots of `Q^i`.
pub trait RootPolicy {
    /// Index into `candidates`, given the preferred index.
    fn choose(&mut self, equation: usize, candidates: &[Rational], preferred: usize) -> usize;
}

/// The documented default.
pub struct Preferred;

impl RootPolicy for Preferred {
    fn choose(&mut self, _: usize, _: &[Rational], preferred: usize) -> usize {
        preferred
    }
}

/// Fixed choice per equation, for branch exploration.
pub struct Scripted<'a> {
    pub picks: &'a [usize],
    pub seen: Vec<usize>,
}

impl RootPolicy for Scripted<'_> {
    fn choose(&mut self, _: usize, candidates: &[Rational], _: usize) -> usize {
        let step = self.seen.len();
        self.seen.push(candidates.len());
        self.picks
            .get(step)
            .copied()
            .unwrap_or(0)
            .min(candidates.len().saturating_sub(1))
    }
}

/// Solve with the default policy: the largest rational root `b_1^(i+1)` among
/// those that make `b_i^(i+1)` vanish, or the largest root if none does.
/// On `x(xz - y²)` this reproduces the normalization `ν^(1) = (0, 7/4, 5/4)`.
pub fn solve_birkhoff(cc: &ConnectionCoefficients, special: bool) -> Result<BirkhoffSolution> {
    solve_birkhoff_with(cc, special, &mut Preferred)
}

/// `special` is accepted but unused: the vanishing preference is applied to
/// every divisor. For special ones a vanishing root exists along some branch.
pub fn solve_birkhoff_with(
    cc: &ConnectionCoefficients,
    _special: bool,
    policy: &mut dyn RootPolicy,
) -> Result<BirkhoffSolution> {
    let n = cc.n();
    if n == 0 {
        return Err(Error::UnsupportedParameter("empty connection".into()));
    }
    let mut b1: Vec<Rational> = vec![Rational::zero(); n + 2];
    let mut root_log = Vec::with_capacity(n.saturating_sub(1));
    for i in (1..n).rev() {
        let mut t = new_table(n, &cc.c);
        for m in i + 2..=n {
            t.b[1][m] = UniPoly::constant(b1[m].clone());
        }
        t.b[1][i + 1] = UniPoly::x();
        t.fill(i + 1, i);
        let mut q = UniPoly::zero();
        for r in 1..=n - i {
            q = &q + &t.p(i, r);
        }
        let (candidates, chosen) = if q.is_zero() {
            policy.choose(i, &[Rational::zero()], 0);
            (Vec::new(), Rational::zero())
        } else {
            let mut roots = q.rational_roots();
            roots.dedup();
            if roots.is_empty() {
                return Err(Error::NoRationalRoot {
                    equation: i,
                    polynomial: q.to_string(),
                });
            }
            let lead = &t.b[i][i + 1];
            let vanishing = roots.iter().rposition(|r| lead.eval(r).is_zero());
            let preferred = vanishing.unwrap_or(roots.len() - 1);
            let idx = policy.choose(i, &roots, preferred);
            let chosen = roots[idx].clone();
            (roots, chosen)
        };
        b1[i + 1] = chosen.clone();
        root_log.push(RootChoice {
            equation: i,
            polynomial: q,
            candidates,
            chosen,
        });
    }
    let mut t = new_table(n, &cc.c);
    for m in 2..=n {
        t.b[1][m] = UniPoly::constant(b1[m].clone());
    }
    t.fill(2, n - 1);
    let b: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            (0..=n)
                .map(|m| {
                    if k >= 1 && m > k {
                        t.b[k][m].coeff(0)
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let nu1: Vec<Rational> = (1..=n).map(|s| -t.x(s).coeff(0)).collect();
    let sol = BirkhoffSolution {
        n,
        b,
        nu1,
        root_log,
    };
    let check = verify_birkhoff(&sol, cc);
    if !check.holds {
        return Err(Error::InconsistentSystem(format!(
            "Birkhoff residual {}",
            check.describe()
        )));
    }
    Ok(sol)
}

/// All root-choice branches, up to `cap` solutions. Branches that end
/// without a rational root are dropped.
pub fn enumerate_branches(
    cc: &ConnectionCoefficients,
    special: bool,
    cap: usize,
) -> Result<Vec<BirkhoffSolution>> {
    let steps = cc.n().saturating_sub(1);
    let mut out = Vec::new();
    let mut first_err = None;
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let mut policy = Scripted {
            picks: &prefix,
            seen: Vec::new(),
        };
        let sol = match solve_birkhoff_with(cc, special, &mut policy) {
            Ok(sol) => sol,
            Err(e) => {
                first_err.get_or_insert(e);
                continue;
            }
        };
        if prefix.len() >= steps {
            out.push(sol);
            if out.len() >= cap {
                break;
            }
            continue;
        }
        for alt in (0..policy.seen[prefix.len()]).rev() {
            let mut next = prefix.clone();
            next.push(alt);
            stack.push(next);
        }
    }
    match (out.is_empty(), first_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

/// Residual of `B X - dB/dτ - Ω B` in `Q[t, θ]`, `θ = τ⁻¹`.
#[derive(Clone, Debug)]
pub struct BirkhoffCheck {
    pub holds: bool,
    /// Non-zero entries `(row, column, polynomial in t = x1, θ = x2)`.
    pub residual: Vec<(usize, usize, SparsePoly)>,
}

impl BirkhoffCheck {
    pub fn describe(&self) -> alloc::string::String {
        let parts: Vec<_> = self
            .residual
            .iter()
            .map(|(i, j, p)| format!("({},{}): {}", i + 1, j + 1, p))
            .collect();
        parts.join("; ")
    }
}

pub fn verify_birkhoff(sol: &BirkhoffSolution, cc: &ConnectionCoefficients) -> BirkhoffCheck {
    let n = sol.n;
    let nv = 2;
    let t = SparsePoly::var(nv, 0);
    let theta = SparsePoly::var(nv, 1);
    let konst = |r: &Rational| SparsePoly::constant(nv, r.clone());
    let zero = || SparsePoly::zero(nv);
    let mut theta_pows = vec![SparsePoly::one(nv)];
    for k in 1..=n + 1 {
        let next = &theta_pows[k - 1] * &theta;
        theta_pows.push(next);
    }
    let mat = |f: &dyn Fn(usize, usize) -> SparsePoly| -> Vec<Vec<SparsePoly>> {
        (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
    };
    let big_b = mat(&|i, j| {
        let mut e = if i == j { SparsePoly::one(nv) } else { zero() };
        if j > i && j - i < n {
            e = &e + &(&theta_pows[j - i] * &konst(&sol.b[j - i][j + 1]));
        }
        e
    });
    // dB/dτ = Σ -k B_k θ^(k+1)
    let db = mat(&|i, j| {
        if j > i {
            let k = j - i;
            &theta_pows[k + 1] * &konst(&(-&sol.b[k][j + 1] * int(k as i64)))
        } else {
            zero()
        }
    });
    let x = mat(&|i, j| {
        let mut e = zero();
        if i == j + 1 {
            e = SparsePoly::one(nv);
        }
        if i == 0 && j == n - 1 {
            e = &e + &(&t * &konst(&cc.c[0]));
        }
        if i == j {
            e = &e + &(&theta * &konst(&-&sol.nu1[i]));
        }
        e
    });
    let omega = mat(&|i, j| {
        let mut e = zero();
        if i == j + 1 {
            e = SparsePoly::one(nv);
        }
        if j == n - 1 {
            if i == 0 {
                e = &e + &(&t * &konst(&cc.c[0]));
            }
            let k = n - i;
            e = &e + &(&theta_pows[k] * &konst(&cc.c[k]));
        }
        e
    });
    let mul = |a: &Vec<Vec<SparsePoly>>, b: &Vec<Vec<SparsePoly>>| -> Vec<Vec<SparsePoly>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = zero();
                        for k in 0..n {
                            if !a[i][k].is_zero() && !b[k][j].is_zero() {
                                acc = &acc + &(&a[i][k] * &b[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let lhs = mul(&big_b, &x);
    let ob = mul(&omega, &big_b);
    let mut residual = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let r = &(&lhs[i][j] - &db[i][j]) - &ob[i][j];
            if !r.is_zero() {
                residual.push((i, j, r));
            }
        }
    }
    BirkhoffCheck {
        holds: residual.is_empty(),
        residual,
    }
}

/// `A_∞ = diag(-ν)`.
pub fn a_infinity(nu: &[Rational]) -> RationalMatrix {
    RationalMatrix::diagonal(&nu.iter().map(|v| -v).collect::<Vec<_>>())
}

/// Sum of the entries, used for trace bookkeeping.
pub fn trace_of(nu: &[Rational]) -> Rational {
    nu.iter().fold(Rational::zero(), |acc, v| acc + v)
}
