//! Exact arithmetic with roots of unity.
//!
//! Group-averaged dimension formulas produce integer combinations of `N`-th
//! roots of unity.  Such a combination is stored as a vector of exponent
//! buckets (`sum_k c_k zeta^k`); deciding whether it is a rational number —
//! and extracting that number — reduces the bucket polynomial modulo the
//! `N`-th cyclotomic polynomial and checks that a constant remains.  Since
//! `1, zeta, ..., zeta^(phi(N)-1)` is a basis of `Q(zeta)` over `Q`, the
//! reduction is both sound and complete.
//!
//! The module also provides small dense field arithmetic in `Q(zeta_N)`
//! (`CycloCtx` / `CycloNum`) used by rank computations over cyclotomic
//! fields.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{EngineError, Result};

/// Coefficients of the `n`-th cyclotomic polynomial, ascending degree,
/// monic, over the integers.
///
/// Computed by exact division: `Phi_n = (x^n - 1) / prod_(d | n, d < n) Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: Vec<Vec<BigInt>> = Vec::new(); // memo[k] = Phi_{k+1}
    for m in 1..=n {
        // x^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = -BigInt::one();
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                num = poly_div_exact(&num, &memo[d as usize - 1]);
            }
        }
        memo.push(num);
    }
    memo.pop().unwrap()
}

/// Exact division of integer polynomials (panics if the division is not
/// exact or the divisor is not monic up to sign of its leading term).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = degree(num);
    let dd = degree(den);
    assert!(dd <= dn, "polynomial division underflow");
    let lead = den[dd].clone();
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let coeff = &rem[k + dd] / &lead;
        assert!(
            (&rem[k + dd] % &lead).is_zero(),
            "polynomial division must be exact"
        );
        quot[k] = coeff.clone();
        for i in 0..=dd {
            let v = &rem[k + i] - &coeff * &den[i];
            rem[k + i] = v;
        }
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "polynomial division must leave no remainder"
    );
    quot
}

fn degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Integer combination of `N`-th roots of unity, stored in exponent buckets.
#[derive(Clone, Debug)]
pub struct CycloSum {
    modulus: u64,
    buckets: Vec<BigInt>,
}

impl CycloSum {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CycloSum {
            modulus,
            buckets: vec![BigInt::zero(); modulus as usize],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Add `coefficient * zeta^exponent`.
    pub fn add_term(&mut self, exponent: u64, coefficient: &BigInt) {
        let idx = (exponent % self.modulus) as usize;
        self.buckets[idx] += coefficient;
    }

    /// Reduce modulo the cyclotomic polynomial and return the value if it is
    /// rational (an integer, since the buckets are integers); otherwise
    /// report `NonIntegralDimension` with the given context string.
    pub fn to_integer(&self, context: &str) -> Result<BigInt> {
        if self
            .buckets
            .iter()
            .enumerate()
            .all(|(k, c)| k == 0 || c.is_zero())
        {
            return Ok(self.buckets[0].clone());
        }
        let phi = cyclotomic_polynomial(self.modulus);
        let mut rem = self.buckets.clone();
        let dphi = degree(&phi);
        // phi is monic, so the remainder of division by phi stays integral.
        for k in (dphi..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let coeff = rem[k].clone();
            for i in 0..=dphi {
                let v = &rem[k - dphi + i] - &coeff * &phi[i];
                rem[k - dphi + i] = v;
            }
        }
        if rem.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(EngineError::NonIntegralDimension {
                detail: format!("root-of-unity sum is irrational in {context}"),
            });
        }
        Ok(rem[0].clone())
    }

    /// Extract the value, divide by `divisor`, and require the quotient to
    /// be a nonnegative integer (the shape of every averaged dimension).
    pub fn to_dimension(&self, divisor: usize, context: &str) -> Result<usize> {
        let value = self.to_integer(context)?;
        let d = BigInt::from(divisor);
        let (q, r) = num::Integer::div_rem(&value, &d);
        if !r.is_zero() || q < BigInt::zero() {
            return Err(EngineError::NonIntegralDimension {
                detail: format!(
                    "averaged value {value}/{divisor} is not a nonnegative integer in {context}"
                ),
            });
        }
        use num::ToPrimitive;
        q.to_usize().ok_or_else(|| EngineError::InternalError {
            detail: format!("dimension overflow in {context}"),
        })
    }

    /// Extract the value and divide by `divisor` exactly, allowing negative
    /// results (used for signed Euler-characteristic style averages).
    pub fn to_signed_average(&self, divisor: usize, context: &str) -> Result<BigInt> {
        let value = self.to_integer(context)?;
        let d = BigInt::from(divisor);
        let (q, r) = num::Integer::div_rem(&value, &d);
        if !r.is_zero() {
            return Err(EngineError::NonIntegralDimension {
                detail: format!("averaged value {value}/{divisor} is not an integer in {context}"),
            });
        }
        Ok(q)
    }
}

/// Field context for `Q(zeta_n)`: elements are coordinate vectors on the
/// power basis `1, zeta, ..., zeta^(deg-1)` with `deg = deg Phi_n`.
#[derive(Clone, Debug)]
pub struct CycloCtx {
    modulus: u64,
    phi: Vec<BigRational>,
    deg: usize,
}

/// Element of `Q(zeta_n)` relative to a `CycloCtx`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNum(Vec<BigRational>);

impl CycloCtx {
    pub fn new(modulus: u64) -> Self {
        let phi_int = cyclotomic_polynomial(modulus);
        let deg = degree(&phi_int);
        let phi = phi_int
            .into_iter()
            .map(BigRational::from)
            .collect::<Vec<_>>();
        CycloCtx { modulus, phi, deg }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum(vec![BigRational::zero(); self.deg])
    }

    pub fn one(&self) -> CycloNum {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> CycloNum {
        let mut v = vec![BigRational::zero(); self.deg];
        if self.deg > 0 {
            v[0] = r;
        }
        CycloNum(v)
    }

    /// `zeta^k` as a field element.
    pub fn root_power(&self, k: u64) -> CycloNum {
        let k = (k % self.modulus) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        self.reduce(raw)
    }

    fn reduce(&self, mut raw: Vec<BigRational>) -> CycloNum {
        for k in (self.deg..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let coeff = raw[k].clone();
            raw[k] = BigRational::zero();
            // phi is monic of degree `deg`: x^k = -coeff * (phi - x^deg) shifted.
            for i in 0..self.deg {
                let v = &raw[k - self.deg + i] - &coeff * &self.phi[i];
                raw[k - self.deg + i] = v;
            }
        }
        raw.truncate(self.deg.max(1));
        raw.resize(self.deg.max(1), BigRational::zero());
        if self.deg == 0 {
            raw = vec![BigRational::zero()];
        }
        CycloNum(raw)
    }

    pub fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        CycloNum(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        CycloNum(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &CycloNum) -> CycloNum {
        CycloNum(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        let mut raw = vec![BigRational::zero(); a.0.len() + b.0.len()];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let v = &raw[i + j] + x * y;
                raw[i + j] = v;
            }
        }
        self.reduce(raw)
    }

    pub fn scale(&self, a: &CycloNum, r: &BigRational) -> CycloNum {
        CycloNum(a.0.iter().map(|x| x * r).collect())
    }

    pub fn is_zero(&self, a: &CycloNum) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }
}

/// Rank over `Q(zeta)` of a list of row vectors, by fraction-free Gaussian
/// elimination (`row := pivot * row - entry * pivot_row`), which needs no
/// field inversion.
pub fn cyclotomic_rank(ctx: &CycloCtx, rows: &[Vec<CycloNum>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut basis: Vec<Vec<CycloNum>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, &pc) in basis.iter().zip(&pivot_cols) {
            if ctx.is_zero(&r[pc]) {
                continue;
            }
            let factor = r[pc].clone();
            let pivot = b[pc].clone();
            for j in 0..width {
                let v = ctx.sub(&ctx.mul(&r[j], &pivot), &ctx.mul(&b[j], &factor));
                r[j] = v;
            }
        }
        if let Some(pc) = (0..width).find(|&j| !ctx.is_zero(&r[j])) {
            basis.push(r);
            pivot_cols.push(pc);
        }
    }
    basis.len()
}
