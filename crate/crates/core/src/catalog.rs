//! Example families: quiver representation spaces, normal crossings and
//! symmetric matrices, plus their preferred linear sections.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::divisor::{analyze_divisor, LfdPresentation, DEFAULT_MAX_MONOMIALS};
use crate::exactalg::{apply_derivation, int, Rational, RationalMatrix, SparsePoly};
use crate::sections::{rh_finiteness, LinearSection};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    /// Node labels with their dimensions.
    pub nodes: Vec<(String, usize)>,
    /// Arrows as `(tail, head)` indices into `nodes`.
    pub arrows: Vec<(usize, usize)>,
}

impl QuiverSpec {
    /// `Σ_a d_tail · d_head`.
    pub fn rep_dimension(&self) -> usize {
        self.arrows
            .iter()
            .map(|&(t, h)| self.nodes[t].1 * self.nodes[h].1)
            .sum()
    }

    /// `Σ_v d_v² - 1`.
    pub fn group_dimension(&self) -> usize {
        self.nodes.iter().map(|(_, d)| d * d).sum::<usize>() - 1
    }

    fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm; loops count as cycles.
        let k = self.nodes.len();
        let mut indeg = vec![0usize; k];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut stack: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        stack.push(h);
                    }
                }
            }
        }
        seen < k
    }
}

/// The action of `⊕ gl(d_v)` on `Rep(Q, d)`, minus one scalar generator.
///
/// Coordinates are the entries of the arrow matrices `X_a ∈ Mat(d_head × d_tail)`,
/// arrow by arrow, each row-major. The generator `E_pq` at node `v` acts by
/// `X_a ↦ E X_a` on arrows into `v` and `X_a ↦ -X_a E` on arrows out of `v`.
pub fn quiver_lfd(name: &str, q: &QuiverSpec) -> Result<LfdPresentation> {
    if q.nodes.is_empty() || q.nodes.iter().any(|(_, d)| *d == 0) {
        return Err(Error::UnsupportedParameter(
            "quiver needs positive dimensions".into(),
        ));
    }
    if q.arrows
        .iter()
        .any(|&(t, h)| t >= q.nodes.len() || h >= q.nodes.len())
    {
        return Err(Error::UnsupportedParameter(
            "arrow endpoint out of range".into(),
        ));
    }
    if q.has_oriented_cycle() {
        return Err(Error::UnsupportedParameter(
            "quiver has an oriented cycle".into(),
        ));
    }
    let n = q.rep_dimension();
    if n != q.group_dimension() {
        return Err(Error::DimensionMismatch {
            expected: q.group_dimension(),
            found: n,
        });
    }
    let mut offsets = Vec::with_capacity(q.arrows.len());
    let mut acc = 0;
    for &(t, h) in &q.arrows {
        offsets.push(acc);
        acc += q.nodes[t].1 * q.nodes[h].1;
    }
    let dropped = (0..q.nodes.len())
        .max_by(|&a, &b| q.nodes[a].0.cmp(&q.nodes[b].0))
        .expect("non-empty");
    let mut basis = Vec::with_capacity(n);
    for (v, (_, dv)) in q.nodes.iter().enumerate() {
        for p in 0..*dv {
            for r in 0..*dv {
                if v == dropped && p == 0 && r == 0 {
                    continue;
                }
                let mut a = RationalMatrix::zeros(n, n);
                for (idx, &(t, h)) in q.arrows.iter().enumerate() {
                    let (rows, cols) = (q.nodes[h].1, q.nodes[t].1);
                    let at = |i: usize, j: usize| offsets[idx] + i * cols + j;
                    if h == v {
                        // (E_pr X)_{p j} = X_{r j}
                        for j in 0..cols {
                            a[(at(p, j), at(r, j))] += Rational::one();
                        }
                    }
                    if t == v {
                        // (X E_pr)_{i r} = X_{i p}
                        for i in 0..rows {
                            a[(at(i, r), at(i, p))] -= Rational::one();
                        }
                    }
                }
                basis.push(a);
            }
        }
    }
    LfdPresentation::new(name, basis)
}

/// Families with a closed-form construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyId {
    NormalCrossing(usize),
    Star(usize),
    DynkinD(usize),
    E6,
    SymMatrices(usize),
}

impl FamilyId {
    /// Parses `nc:4`, `star:3`, `dynkinD:5`, `e6`, `sym:2`.
    pub fn parse(s: &str) -> Result<FamilyId> {
        let s = s.trim();
        if s == "e6" {
            return Ok(FamilyId::E6);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))?;
        let k: usize = arg
            .parse()
            .map_err(|_| Error::Parse(format!("bad family parameter {arg:?}")))?;
        let id = match kind {
            "nc" => FamilyId::NormalCrossing(k),
            "star" => FamilyId::Star(k),
            "dynkinD" => FamilyId::DynkinD(k),
            "sym" => FamilyId::SymMatrices(k),
            _ => return Err(Error::Parse(format!("unknown family {kind:?}"))),
        };
        id.validate()?;
        Ok(id)
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            FamilyId::NormalCrossing(n) => (1..=64).contains(&n),
            FamilyId::Star(m) => (2..=16).contains(&m),
            FamilyId::DynkinD(m) => (4..=16).contains(&m),
            FamilyId::E6 => true,
            FamilyId::SymMatrices(k) => (1..=8).contains(&k),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedParameter(format!(
                "{self} is out of range"
            )))
        }
    }

    /// Dimension of the representation space.
    pub fn dimension(self) -> usize {
        match self {
            FamilyId::NormalCrossing(n) => n,
            FamilyId::Star(m) => m * (m - 1),
            FamilyId::DynkinD(m) => 4 * m - 10,
            FamilyId::E6 => 22,
            FamilyId::SymMatrices(k) => k * (k + 1) / 2,
        }
    }
}

impl core::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FamilyId::NormalCrossing(n) => write!(f, "nc:{n}"),
            FamilyId::Star(m) => write!(f, "star:{m}"),
            FamilyId::DynkinD(m) => write!(f, "dynkinD:{m}"),
            FamilyId::E6 => f.write_str("e6"),
            FamilyId::SymMatrices(k) => write!(f, "sym:{k}"),
        }
    }
}

pub fn normal_crossing(n: usize) -> Result<LfdPresentation> {
    FamilyId::NormalCrossing(n).validate()?;
    LfdPresentation::new(
        format!("nc:{n}"),
        (0..n).map(|i| RationalMatrix::unit(n, i, i)).collect(),
    )
}

fn node(label: &str, d: usize) -> (String, usize) {
    (label.to_string(), d)
}

/// `m` one-dimensional sources into an `(m-1)`-dimensional centre.
pub fn star_quiver(m: usize) -> QuiverSpec {
    let mut nodes: Vec<(String, usize)> = (1..=m).map(|i| (format!("s{i:02}"), 1)).collect();
    nodes.push(node("c", m - 1));
    QuiverSpec {
        nodes,
        arrows: (0..m).map(|i| (i, m)).collect(),
    }
}

/// Highest root of `D_m`: a chain `1 → … → m-2` and two extra arms into
/// node `m-2`, dimensions `1, 2, …, 2, 1, 1`.
pub fn dynkin_d_quiver(m: usize) -> QuiverSpec {
    let label = |i: usize| format!("v{i:02}");
    let mut nodes = vec![(label(1), 1)];
    for i in 2..=m - 2 {
        nodes.push((label(i), 2));
    }
    nodes.push((label(m - 1), 1));
    nodes.push((label(m), 1));
    let mut arrows: Vec<(usize, usize)> = (0..m - 3).map(|i| (i, i + 1)).collect();
    arrows.push((m - 2, m - 3));
    arrows.push((m - 1, m - 3));
    QuiverSpec { nodes, arrows }
}

/// Highest root `(1,2,3,2,1;2)` of `E_6`, all arrows into the branch node.
pub fn e6_quiver() -> QuiverSpec {
    let nodes = vec![
        node("v1", 1),
        node("v2", 2),
        node("v3", 3),
        node("v4", 2),
        node("v5", 1),
        node("v6", 2),
    ];
    QuiverSpec {
        nodes,
        arrows: vec![(0, 1), (1, 2), (4, 3), (3, 2), (5, 2)],
    }
}

/// Upper-triangular matrices `B` acting on symmetric `S` by `ᵗB S + S B`.
/// Coordinates are `s_ij`, `i ≤ j`, row by row.
pub fn sym_matrices(k: usize) -> Result<LfdPresentation> {
    FamilyId::SymMatrices(k).validate()?;
    let n = k * (k + 1) / 2;
    let mut index = vec![vec![0usize; k]; k];
    let mut c = 0;
    for i in 0..k {
        for j in i..k {
            index[i][j] = c;
            index[j][i] = c;
            c += 1;
        }
    }
    let mut basis = Vec::with_capacity(n);
    for p in 0..k {
        for q in p..k {
            // B = E_pq: (ᵗB S)_ij = δ_iq S_pj and (S B)_ij = S_ip δ_jq.
            let mut a = RationalMatrix::zeros(n, n);
            for i in 0..k {
                for j in i..k {
                    let row = index[i][j];
                    if i == q {
                        a[(row, index[p][j])] += Rational::one();
                    }
                    if j == q {
                        a[(row, index[i][p])] += Rational::one();
                    }
                }
            }
            basis.push(a);
        }
    }
    LfdPresentation::new(format!("sym:{k}"), basis)
}

pub fn family(id: FamilyId) -> Result<LfdPresentation> {
    id.validate()?;
    match id {
        FamilyId::NormalCrossing(n) => normal_crossing(n),
        FamilyId::Star(m) => quiver_lfd(&id.to_string(), &star_quiver(m)),
        FamilyId::DynkinD(m) => quiver_lfd(&id.to_string(), &dynkin_d_quiver(m)),
        FamilyId::E6 => quiver_lfd("e6", &e6_quiver()),
        FamilyId::SymMatrices(k) => sym_matrices(k),
    }
}

/// Fixed `f` for the families that come with one.
pub fn canonical_f(id: FamilyId) -> Option<LinearSection> {
    let v: Vec<i64> = match id {
        FamilyId::NormalCrossing(n) => vec![1; n],
        // a11 + a21 + a22 + a23 in the coordinates a11, a21, a12, a22, a13, a23
        FamilyId::Star(3) => vec![1, 1, 0, 1, 0, 1],
        FamilyId::SymMatrices(2) => vec![1, 0, 1],
        FamilyId::E6 => vec![
            1, 2, 0, 1, 3, 0, 1, 3, 2, 1, 0, 2, 1, 3, 0, 1, 3, 0, 2, 1, 3, 2,
        ],
        _ => return None,
    };
    LinearSection::new(v.into_iter().map(int).collect()).ok()
}

/// A seeded random section that passes the `R_h`-finiteness test.
#[derive(Clone, Debug)]
pub struct RandomSection {
    pub section: LinearSection,
    pub attempts: u32,
}

pub const RANDOM_SECTION_ATTEMPTS: u32 = 10_000;

pub fn random_finite_f(p: &LfdPresentation, seed: u64) -> Result<RandomSection> {
    let d = analyze_divisor(p, DEFAULT_MAX_MONOMIALS)?;
    random_finite_f_for(&d, seed)
}

/// As [`random_finite_f`] for an already analysed divisor.
pub fn random_finite_f_for(d: &crate::divisor::DivisorData, seed: u64) -> Result<RandomSection> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RANDOM_SECTION_ATTEMPTS {
        let v: Vec<Rational> = (0..d.n).map(|_| int(rng.gen_range(0..=9))).collect();
        let Ok(f) = LinearSection::new(v) else {
            continue;
        };
        if rh_finiteness(&f, d)?.rh_finite {
            return Ok(RandomSection {
                section: f,
                attempts: attempt,
            });
        }
    }
    Err(Error::ExhaustedAttempts {
        attempts: RANDOM_SECTION_ATTEMPTS,
    })
}

/// All `A` with `ξ_A(h) ∈ Q·h`, as a basis in reduced echelon form.
pub fn logarithmic_algebra(h: &SparsePoly) -> Result<Vec<RationalMatrix>> {
    let n = h.nvars();
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit_images: Vec<SparsePoly> = (0..n * n)
        .map(|k| apply_derivation(&RationalMatrix::unit(n, k / n, k % n), h))
        .collect::<Result<_>>()?;
    // Unknowns: entries of A, then λ. Equations: ξ_A(h) - λ h = 0.
    let mut monos: Vec<_> = unit_images
        .iter()
        .flat_map(|p| p.terms().iter().map(|t| t.0.clone()))
        .collect();
    monos.extend(h.terms().iter().map(|t| t.0.clone()));
    monos.sort_unstable();
    monos.dedup();
    let pos = |m: &crate::exactalg::Monomial| monos.binary_search(m).expect("collected");
    let mut sys = RationalMatrix::zeros(monos.len(), n * n + 1);
    for (k, img) in unit_images.iter().enumerate() {
        for (m, c) in img.terms() {
            sys[(pos(m), k)] += c;
        }
    }
    for (m, c) in h.terms() {
        sys[(pos(m), n * n)] -= c;
    }
    let kernel = sys.kernel_basis();
    let rows: Vec<Vec<Rational>> = kernel
        .into_iter()
        .map(|mut v| {
            v.truncate(n * n);
            v
        })
        .collect();
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let (r, piv) = RationalMatrix::from_rows(rows).rref();
    Ok((0..piv.len())
        .map(|i| RationalMatrix::from_fn(n, n, |a, b| r[(i, a * n + b)].clone()))
        .collect())
}

/// Product of the 2×2 minors `m12 m13 m23 m34 m35` of a 2×5 matrix, with
/// coordinates `x_{1j}, x_{2j}` column by column. Its dual equation vanishes.
pub fn path_minors_equation() -> SparsePoly {
    let n = 10;
    let x = |r: usize, c: usize| SparsePoly::var(n, 2 * (c - 1) + (r - 1));
    let minor = |a: usize, b: usize| &(&x(1, a) * &x(2, b)) - &(&x(1, b) * &x(2, a));
    let mut h = SparsePoly::one(n);
    for (a, b) in [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5)] {
        h = &h * &minor(a, b);
    }
    h
}

pub fn path_minors() -> Result<LfdPresentation> {
    let basis = logarithmic_algebra(&path_minors_equation())?;
    if basis.len() != 10 {
        return Err(Error::DimensionMismatch {
            expected: 10,
            found: basis.len(),
        });
    }
    LfdPresentation::new("path-minors", basis)
}
