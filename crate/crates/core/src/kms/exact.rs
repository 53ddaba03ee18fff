//! Exact linear algebra for integer matrices: characteristic polynomials,
//! Sturm-sequence isolation of the largest real root, rational null spaces
//! and the extreme rays of `{v >= 0 : A v = 0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::VertexMatrix;

/// Dense polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly(Vec<BigRational>);

impl Poly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    #[cfg(test)]
    pub(crate) fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / divisor.lead();
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

fn to_rational_matrix(d: &VertexMatrix) -> Vec<Vec<BigRational>> {
    d.rows()
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// `det(x I - D)` by the Faddeev-LeVerrier recurrence in exact integers.
pub(crate) fn characteristic_polynomial(d: &VertexMatrix) -> Poly {
    let n = d.dim();
    let a: Vec<Vec<BigInt>> = d
        .rows()
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    trace += &a[i][l] * &m[l][i];
                }
            }
        }
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
    }
    Poly::new(coeffs.into_iter().map(BigRational::from_integer).collect())
}

struct SturmChain(Vec<Poly>);

impl SturmChain {
    fn new(p: &Poly) -> Self {
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let square_free = p.div_rem(&g).0;
        let mut chain = vec![square_free.clone(), square_free.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1.neg();
            chain.push(r);
        }
        chain.pop();
        SturmChain(chain)
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let signs: Vec<bool> = self
            .0
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_changes(a) - self.sign_changes(b)
    }
}

/// Largest real root of the characteristic polynomial of a nonnegative matrix,
/// which is its spectral radius.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct IsolatedRadius {
    /// Root lies in `(lo, hi]`.
    pub lo: BigRational,
    pub hi: BigRational,
    /// Set when the root is an integer (the only possible rational roots).
    pub exact: Option<BigInt>,
}

impl IsolatedRadius {
    pub(crate) fn approx(&self) -> f64 {
        match &self.exact {
            Some(r) => r.to_f64().unwrap_or(f64::INFINITY),
            None => ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
                .to_f64()
                .unwrap_or(f64::NAN),
        }
    }
}

pub(crate) fn isolate_spectral_radius(d: &VertexMatrix) -> IsolatedRadius {
    let bound: u64 = d.rows().iter().map(|r| r.iter().sum::<u64>()).max().unwrap_or(0);
    let zero = BigRational::zero();
    if bound == 0 {
        return IsolatedRadius { lo: zero.clone(), hi: zero, exact: Some(BigInt::zero()) };
    }
    let p = characteristic_polynomial(d);
    let chain = SturmChain::new(&p);
    let mut lo = zero.clone();
    let mut hi = BigRational::from_integer(BigInt::from(bound));
    if chain.count(&lo, &hi) == 0 {
        return IsolatedRadius { lo: zero.clone(), hi: zero, exact: Some(BigInt::zero()) };
    }
    let two = BigRational::from_integer(2.into());
    let tolerance = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
    let mut checked_integer = false;
    let mut isolated = false;
    let square_free = &chain.0[0];
    while &hi - &lo > tolerance {
        let mid = (&lo + &hi) / &two;
        if !isolated {
            if chain.count(&mid, &hi) > 0 {
                lo = mid;
            } else {
                hi = mid;
            }
            isolated = chain.count(&lo, &hi) == 1;
        } else {
            // one simple root in (lo, hi]: bisect on the sign of the square-free part
            let at_mid = square_free.eval(&mid);
            if at_mid.is_zero() {
                lo = mid.clone();
                hi = mid;
                break;
            }
            let at_hi = square_free.eval(&hi);
            if at_hi.is_zero() || at_hi.is_positive() != at_mid.is_positive() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if !checked_integer && &hi - &lo < BigRational::new(1.into(), 2.into()) {
            checked_integer = true;
            let candidate = lo.floor() + BigRational::one();
            if candidate <= hi && p.eval(&candidate).is_zero() {
                return IsolatedRadius { exact: Some(candidate.to_integer()), lo, hi };
            }
        }
    }
    if lo == hi && lo.is_integer() {
        return IsolatedRadius { exact: Some(lo.to_integer()), lo, hi };
    }
    IsolatedRadius { lo, hi, exact: None }
}

/// Row-reduce in place; returns pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : A v = 0}`, one vector per free column.
pub(crate) fn null_space(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// `D - rho I` over the rationals.
pub(crate) fn shifted(d: &VertexMatrix, rho: &BigInt) -> Vec<Vec<BigRational>> {
    let mut a = to_rational_matrix(d);
    let shift = BigRational::from_integer(rho.clone());
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= &shift;
    }
    a
}

/// Extreme rays of the cone `{v >= 0 : A v = 0}`, each normalized to sum 1,
/// ordered by support bitmask. Exponential in `cols`; callers cap the size.
pub(crate) fn nonnegative_extreme_rays(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    assert!(cols < 32);
    let mut supports: Vec<u32> = (1u32..(1 << cols)).collect();
    supports.sort_by_key(|s| (s.count_ones(), *s));
    let mut found: Vec<(u32, Vec<BigRational>)> = Vec::new();
    for s in supports {
        if found.iter().any(|(t, _)| t & s == *t) {
            continue;
        }
        let columns: Vec<usize> = (0..cols).filter(|c| s & (1 << c) != 0).collect();
        let sub: Vec<Vec<BigRational>> = a
            .iter()
            .map(|row| columns.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let basis = null_space(&sub, columns.len());
        if basis.len() != 1 {
            continue;
        }
        let v = &basis[0];
        if v.iter().any(|x| x.is_zero()) {
            continue;
        }
        let positive = v[0].is_positive();
        if v.iter().any(|x| x.is_positive() != positive) {
            continue;
        }
        let total: BigRational = v.iter().sum();
        let mut ray = vec![BigRational::zero(); cols];
        for (x, &c) in v.iter().zip(&columns) {
            ray[c] = x / &total;
        }
        found.push((s, ray));
    }
    found.sort_by_key(|(s, _)| *s);
    found.into_iter().map(|(_, r)| r).collect()
}
