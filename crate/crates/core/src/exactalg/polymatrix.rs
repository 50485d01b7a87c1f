use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use super::{Rational, RationalMatrix, SparsePoly};

/// Square matrix of polynomials in a common ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<SparsePoly>,
}

/// Above this size the memoized cofactor expansion needs too many minors.
const COFACTOR_MAX: usize = 16;

impl PolyMatrix {
    pub fn from_fn(n: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> SparsePoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars);
                entries.push(e);
            }
        }
        PolyMatrix { n, nvars, entries }
    }

    /// Row `i` holds the coefficients of the field `ξ_{A_i}`, i.e. `A_i · x`.
    pub fn from_linear_fields(mats: &[RationalMatrix]) -> Self {
        let n = mats.len();
        Self::from_fn(n, n, |i, j| SparsePoly::linear(&mats[i].row(j)))
    }

    /// Constant matrix.
    pub fn from_rational(m: &RationalMatrix, nvars: usize) -> Self {
        Self::from_fn(m.rows(), nvars, |i, j| {
            SparsePoly::constant(nvars, m[(i, j)].clone())
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Entrywise evaluation at a point.
    pub fn evaluate(&self, point: &[Rational]) -> RationalMatrix {
        RationalMatrix::from_fn(self.n, self.n, |i, j| self[(i, j)].evaluate(point))
    }

    /// Determinant: memoized cofactor expansion when it is cheap, Bareiss otherwise.
    pub fn det(&self) -> SparsePoly {
        if self.n <= COFACTOR_MAX {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Fraction-free Gaussian elimination with exact polynomial division.
    pub fn det_bareiss(&self) -> SparsePoly {
        let n = self.n;
        if n == 0 {
            return SparsePoly::one(self.nvars);
        }
        let mut m = self.entries.clone();
        let mut prev = SparsePoly::one(self.nvars);
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                // Prefer the sparsest available pivot.
                let Some(p) = (k + 1..n)
                    .filter(|&i| !m[i * n + k].is_zero())
                    .min_by_key(|&i| m[i * n + k].len())
                else {
                    return SparsePoly::zero(self.nvars);
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = &pivot * &m[i * n + j];
                    let b = &m[i * n + k] * &m[k * n + j];
                    let num = &a - &b;
                    m[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i * n + k] = SparsePoly::zero(self.nvars);
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    /// Laplace expansion along rows with every minor on the leading rows
    /// memoized by its column set. Zero entries are skipped, which makes this
    /// fast for the sparse matrices coming from quiver actions.
    pub fn det_cofactor(&self) -> SparsePoly {
        let n = self.n;
        assert!(
            n <= COFACTOR_MAX,
            "cofactor expansion limited to n <= {COFACTOR_MAX}"
        );
        let nv = self.nvars;
        let mut layer: Vec<(u32, SparsePoly)> = alloc::vec![(0u32, SparsePoly::one(nv))];
        for row in 0..n {
            let mut next: alloc::collections::BTreeMap<u32, SparsePoly> =
                alloc::collections::BTreeMap::new();
            for (mask, minor) in &layer {
                for col in 0..n {
                    if mask & (1 << col) != 0 {
                        continue;
                    }
                    let entry = &self[(row, col)];
                    if entry.is_zero() {
                        continue;
                    }
                    // Column `col` sits after the columns of `mask` that are smaller;
                    // moving it to the last position costs that many transpositions.
                    let larger = (mask >> col).count_ones();
                    let mut term = minor * entry;
                    if larger % 2 == 1 {
                        term = -&term;
                    }
                    let key = mask | (1 << col);
                    match next.get_mut(&key) {
                        Some(acc) => *acc = &*acc + &term,
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
            layer = next.into_iter().filter(|(_, p)| !p.is_zero()).collect();
            if layer.is_empty() {
                return SparsePoly::zero(nv);
            }
        }
        layer
            .pop()
            .map(|(_, p)| p)
            .unwrap_or_else(|| SparsePoly::zero(nv))
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = SparsePoly;
    fn index(&self, (i, j): (usize, usize)) -> &SparsePoly {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut SparsePoly {
        &mut self.entries[i * self.n + j]
    }
}
