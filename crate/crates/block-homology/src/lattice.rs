//! Exact integer and rational linear algebra over lattices.
//!
//! Everything here is exact: matrices carry `BigInt` entries, vectors carry
//! `BigRational` entries, and no floating point is used anywhere.  The two
//! workhorses are the Smith normal form (with full unimodular transforms and
//! a deterministic pivot rule) and the saturated-kernel construction built
//! on top of it.  Saturation is what keeps later restriction matrices
//! integral: restricting an integer matrix to a saturated sublattice it
//! preserves again has integer entries.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{EngineError, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows of machine integers; every row must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(EngineError::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                    context: format!("row {i} of matrix"),
                });
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IntMatrix::identity(self.rows)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "matrix difference shape mismatch");
        assert_eq!(self.cols, other.cols, "matrix difference shape mismatch");
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j) - other.get(i, j));
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix applied to an integer vector.
    pub fn apply_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Matrix applied to a rational vector.
    pub fn apply_rational(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self.get(i, j).clone()) * v.get(j))
                    .sum()
            })
            .collect();
        RationalVector::new(entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[idx(i, j)] = q;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Exact inverse of a unimodular matrix: with `U A V = I` the inverse is
    /// `V U`.  Returns `None` when the matrix is not invertible over the
    /// integers.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let snf = smith_normal_form(self);
        if !snf.d.is_identity() {
            return None;
        }
        Some(snf.v.mul(&snf.u))
    }
}

/// Dense rational vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector {
    entries: Vec<BigRational>,
}

impl std::fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (j, e) in self.entries.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector {
            entries: vec![BigRational::zero(); dim],
        }
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let mut entries = Vec::with_capacity(pairs.len());
        for &(num, den) in pairs {
            if den == 0 {
                return Err(EngineError::ParseError {
                    detail: format!("rational {num}/0 has zero denominator"),
                });
            }
            entries.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
        Ok(RationalVector { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: BigRational) {
        self.entries[i] = v;
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim(), "vector sum shape mismatch");
        RationalVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim(), "vector difference shape mismatch");
        RationalVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> RationalVector {
        RationalVector::new(self.entries.iter().map(|a| -a).collect())
    }

    /// Reduce every coordinate into `[0, 1)`.
    pub fn reduce_mod_one(&self) -> RationalVector {
        RationalVector::new(self.entries.iter().map(|a| a - a.floor()).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|a| a.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V` and
/// nonnegative diagonal `D` whose entries form a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|f| !f.is_zero())
            .count()
    }
}

/// Compute the Smith normal form of `a`.
///
/// The pivot rule is deterministic: among the nonzero entries of the active
/// submatrix, pick the one of smallest absolute value, breaking ties in
/// row-major order.  Identical inputs therefore produce identical
/// decompositions on every run.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let swap_rows = |m: &mut IntMatrix, r1: usize, r2: usize| {
        if r1 == r2 {
            return;
        }
        for j in 0..m.cols() {
            let t1 = m.get(r1, j).clone();
            let t2 = m.get(r2, j).clone();
            m.set(r1, j, t2);
            m.set(r2, j, t1);
        }
    };
    let swap_cols = |m: &mut IntMatrix, c1: usize, c2: usize| {
        if c1 == c2 {
            return;
        }
        for i in 0..m.rows() {
            let t1 = m.get(i, c1).clone();
            let t2 = m.get(i, c2).clone();
            m.set(i, c1, t2);
            m.set(i, c2, t1);
        }
    };
    // row_i -= q * row_k
    let row_sub = |m: &mut IntMatrix, i: usize, k: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for j in 0..m.cols() {
            let val = m.get(i, j) - q * m.get(k, j);
            m.set(i, j, val);
        }
    };
    // col_j -= q * col_k
    let col_sub = |m: &mut IntMatrix, j: usize, k: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for i in 0..m.rows() {
            let val = m.get(i, j) - q * m.get(i, k);
            m.set(i, j, val);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Deterministic pivot: smallest |entry| among nonzero entries of the
        // active submatrix, ties broken in row-major order.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                let better = match &pivot {
                    None => true,
                    Some((pi, pj)) => d.get(i, j).abs() < d.get(*pi, *pj).abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // active submatrix is zero
        };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        // Clear row and column t; restart whenever a reduction leaves a
        // remainder (the remainder is strictly smaller, so this terminates).
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, t).div_mod_floor(d.get(t, t));
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !r.is_zero() {
                    // Remainder became the new, smaller column entry; swap it
                    // into the pivot slot and start over.
                    swap_rows(&mut d, t, i);
                    swap_rows(&mut u, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(t, j).div_mod_floor(d.get(t, t));
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !r.is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
        }

        // Divisibility fix-up: the pivot must divide every remaining entry.
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(d.get(i, j) % d.get(t, t)).is_zero() {
                    // Fold row i into row t and redo the elimination at t.
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    // Normalize diagonal signs.
    for t in 0..rows.min(cols) {
        if d.get(t, t).sign() == Sign::Minus {
            for j in 0..cols {
                let val = -d.get(t, j);
                d.set(t, j, val);
            }
            for j in 0..u.cols() {
                let val = -u.get(t, j);
                u.set(t, j, val);
            }
        }
    }

    SnfDecomposition { u, d, v }
}

/// Basis of the saturated kernel `{ x in Z^cols : B x = 0 }`.
///
/// With `U B V = D`, the kernel is spanned by the columns of `V` indexed by
/// zero invariant factors (plus any columns beyond `min(rows, cols)`).
/// Those columns extend to a basis of `Z^cols`, so the sublattice they span
/// is a direct summand — i.e. saturated: it equals its rational span
/// intersected with `Z^cols`.
pub fn saturated_kernel(b: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(b);
    let m = b.rows().min(b.cols());
    let mut keep: Vec<usize> = (0..m).filter(|&i| snf.d.get(i, i).is_zero()).collect();
    keep.extend(m..b.cols());
    let mut out = IntMatrix::zero(b.cols(), keep.len());
    for (jj, &j) in keep.iter().enumerate() {
        for i in 0..b.cols() {
            out.set(i, jj, snf.v.get(i, j).clone());
        }
    }
    out
}

/// Exact membership test for affine rational cosets on the torus: does
/// `point` lie in `base + span_Q(directions) + Z^dim`?
///
/// Transform `delta = point - base` by the `U` of the Smith normal form of
/// `directions`; the rational span becomes the span of the first `rank`
/// coordinates, and `Z^dim` maps onto itself, so membership reduces to an
/// integrality check on the remaining coordinates.
pub fn coset_contains(
    point: &RationalVector,
    base: &RationalVector,
    directions: &IntMatrix,
) -> Result<bool> {
    let dim = directions.rows();
    if point.dim() != dim {
        return Err(EngineError::DimensionMismatch {
            expected: dim,
            found: point.dim(),
            context: "coset membership: point".into(),
        });
    }
    if base.dim() != dim {
        return Err(EngineError::DimensionMismatch {
            expected: dim,
            found: base.dim(),
            context: "coset membership: base point".into(),
        });
    }
    let snf = smith_normal_form(directions);
    let rank = snf.rank();
    let delta = snf.u.apply_rational(&point.sub(base));
    Ok((rank..dim).all(|i| delta.get(i).is_integer()))
}

/// Solve `basis * x = v` over the integers; `basis` is `d x r` with
/// independent columns.  Returns `None` when no integer solution exists.
pub fn express_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.rows(), v.len(), "basis solve shape mismatch");
    let snf = smith_normal_form(basis);
    let rows = basis.rows();
    let cols = basis.cols();
    let m = rows.min(cols);
    let uv = snf.u.apply_int(v);
    let mut z = vec![BigInt::zero(); cols];
    for i in 0..rows {
        if i < m && !snf.d.get(i, i).is_zero() {
            let (q, r) = uv[i].div_rem(snf.d.get(i, i));
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !uv[i].is_zero() {
            return None;
        }
    }
    Some(snf.v.apply_int(&z))
}

/// Restriction of a `d x d` integer matrix to the sublattice spanned by the
/// columns of `basis` (assumed invariant under `m`): the `r x r` matrix `R`
/// with `m * basis = basis * R`.  `None` when the sublattice is not
/// preserved integrally.
pub fn restrict_to_basis(m: &IntMatrix, basis: &IntMatrix) -> Option<IntMatrix> {
    let r = basis.cols();
    let mut out = IntMatrix::zero(r, r);
    for j in 0..r {
        let image = m.apply_int(&basis.column(j));
        let coeffs = express_in_basis(basis, &image)?;
        for i in 0..r {
            out.set(i, j, coeffs[i].clone());
        }
    }
    Some(out)
}

/// Traces of the exterior powers of a square integer matrix: returns
/// `[e_0, ..., e_r]` where `e_k = tr(Lambda^k m)` is the `k`-th signed
/// coefficient of the characteristic polynomial
/// `det(tI - m) = sum_k (-1)^k e_k t^(r-k)`.
///
/// Uses the Faddeev–LeVerrier recurrence; every division is exact over the
/// integers.
pub fn exterior_traces(m: &IntMatrix) -> Vec<BigInt> {
    assert!(m.is_square(), "exterior traces of a non-square matrix");
    let r = m.rows();
    let mut traces = vec![BigInt::one()];
    let mut mk = IntMatrix::identity(r);
    let mut ck_prev = BigInt::zero();
    for k in 1..=r {
        // M_k = m * (M_{k-1} - c_{k-1} I)
        let mut shifted = mk.clone();
        if k > 1 {
            for i in 0..r {
                let val = shifted.get(i, i) - &ck_prev;
                shifted.set(i, i, val);
            }
        }
        mk = m.mul(&shifted);
        let trace: BigInt = (0..r).map(|i| mk.get(i, i).clone()).sum();
        let (ck, rem) = trace.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
        // e_k = (-1)^(k+1) c_k
        let ek = if k % 2 == 1 { ck.clone() } else { -ck.clone() };
        traces.push(ek);
        ck_prev = ck;
    }
    traces
}

/// `tr(Lambda^k m)`, zero when `k` exceeds the size of `m`.
pub fn lambda_trace(m: &IntMatrix, k: usize) -> BigInt {
    if k > m.rows() {
        return BigInt::zero();
    }
    exterior_traces(m)[k].clone()
}
