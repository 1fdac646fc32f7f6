//! Truncated power series `c_0 + c_1 t + .. + c_N t^N` over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `k` accepted by [`RationalSeries::tamanoi_product`].
pub const MAX_TAMANOI_K: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `p/q` in lowest terms with `q > 0`; integers print without a slash.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(format!("`{s}` is not a rational number"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl RationalSeries {
    /// Coefficients `c_0..c_N`; `N = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least its constant term");
        RationalSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RationalSeries::new(coeffs.iter().map(|&c| integer(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        RationalSeries { coeffs: vec![BigRational::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = RationalSeries::zero(n);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `1 - t^d` truncated at `n`.
    pub fn one_minus_power(d: usize, n: usize) -> Self {
        let mut s = RationalSeries::one(n);
        if d <= n {
            s.coeffs[d] -= BigRational::one();
        }
        s
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, n: usize) -> Self {
        RationalSeries { coeffs: self.coeffs[..=n.min(self.order())].to_vec() }
    }

    /// Index of the first differing coefficient, comparing up to the common
    /// order.
    pub fn first_difference(&self, other: &RationalSeries) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    fn common_order(&self, other: &RationalSeries) -> usize {
        if self.order() != other.order() {
            log::warn!(
                "series of orders {} and {} combined; truncating to {}",
                self.order(),
                other.order(),
                self.order().min(other.order())
            );
        }
        self.order().min(other.order())
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let n = self.common_order(other);
        RationalSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        let n = self.common_order(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RationalSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<RationalSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Series("constant term is zero; no inverse".into()));
        }
        let n = self.order();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(c0.recip());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc / c0);
        }
        Ok(RationalSeries { coeffs: out })
    }

    /// Integer power by repeated squaring (negative powers invert first).
    pub fn pow_int(&self, e: i64) -> Result<RationalSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = RationalSeries::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `(1 + u)^e = Σ_j binom(e, j) u^j` with `u = self - 1`; exact
    /// falling factorials.
    pub fn pow_rational(&self, e: &BigRational) -> Result<RationalSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(format!(
                "rational power needs constant term 1, got {}",
                format_rational(&self.coeffs[0])
            )));
        }
        let n = self.order();
        let mut u = self.clone();
        u.coeffs[0] = BigRational::zero();
        let mut out = RationalSeries::one(n);
        let mut u_pow = RationalSeries::one(n);
        let mut binom = BigRational::one();
        // u^j has no terms below t^j, so j <= n suffices
        for j in 1..=n {
            binom = binom * (e - integer(j as i64 - 1)) / integer(j as i64);
            u_pow = u_pow.mul(&u);
            if binom.is_zero() {
                break;
            }
            for (o, c) in out.coeffs.iter_mut().zip(&u_pow.coeffs) {
                *o += &binom * c;
            }
        }
        Ok(out)
    }

    /// `∏ (1 - t^(r_1..r_k))^(r_2 r_3^2 .. r_k^(k-1))` over tuples with
    /// `r_1 .. r_k <= N`; `k = 0` gives `1 - t`.
    pub fn tamanoi_product(k: usize, n: usize) -> Result<RationalSeries> {
        if k > MAX_TAMANOI_K {
            return Err(Error::Series(format!("k = {k} exceeds the supported maximum {MAX_TAMANOI_K}")));
        }
        if k == 0 {
            return Ok(RationalSeries::one_minus_power(1, n));
        }
        // Collect the exponent of each factor (1 - t^d).
        let mut exponents = vec![0u64; n + 1];
        fn dfs(depth: usize, k: usize, prod: usize, weight: u64, n: usize, exps: &mut [u64]) {
            if depth == k {
                exps[prod] += weight;
                return;
            }
            let mut r = 1;
            while prod * r <= n {
                dfs(depth + 1, k, prod * r, weight * (r as u64).pow(depth as u32), n, exps);
                r += 1;
            }
        }
        dfs(0, k, 1, 1, n, &mut exponents);
        let mut out = RationalSeries::one(n);
        for (d, &e) in exponents.iter().enumerate().skip(1) {
            if e > 0 {
                out = out.mul(&RationalSeries::one_minus_power(d, n).pow_int(e as i64)?);
            }
        }
        Ok(out)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn to_file(&self) -> SeriesFile {
        SeriesFile { n: self.order(), coefficients: self.to_strings() }
    }

    pub fn from_file(f: &SeriesFile) -> Result<Self> {
        if f.coefficients.len() != f.n + 1 {
            return Err(Error::Series(format!("{} coefficients for N = {}", f.coefficients.len(), f.n)));
        }
        Ok(RationalSeries::new(f.coefficients.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?))
    }

    /// Coefficient as `i64` if it is a small integer.
    pub fn integer_coeff(&self, i: usize) -> Option<i64> {
        let c = &self.coeffs[i];
        if c.is_integer() {
            c.numer().to_i64()
        } else {
            None
        }
    }
}

/// `{N, coefficients: ["p/q", ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub coefficients: Vec<String>,
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            let body = format_rational(&abs);
            let body = if show_coeff && !abs.is_integer() && i > 0 { format!("({body})") } else { body };
            match (i, show_coeff) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "{body}t")?,
                (1, false) => f.write_str("t")?,
                (_, true) => write!(f, "{body}t^{i}")?,
                (_, false) => write!(f, "t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        RationalSeries::add(self, rhs)
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        RationalSeries::add(self, &-rhs)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        RationalSeries::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(n: usize) -> RationalSeries {
        RationalSeries::new(vec![BigRational::one(); n + 1])
    }

    fn partitions(n: usize) -> Vec<i64> {
        // p(m) by the usual dynamic programme over part sizes
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                p[m] += p[m - part];
            }
        }
        p
    }

    #[test]
    fn multiplication() {
        let a = RationalSeries::from_ints(&[3, -1, 4, 1]);
        assert_eq!(a.mul(&RationalSeries::one(3)), a);
        assert_eq!(RationalSeries::one_minus_power(1, 5).mul(&geometric(5)), RationalSeries::one(5));
        let p = RationalSeries::from_ints(&[1, 1, 0]);
        assert_eq!(p.mul(&p), RationalSeries::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = RationalSeries::from_ints(&[1, 1, 1, 1]);
        let b = RationalSeries::from_ints(&[1, 1]);
        assert_eq!(a.mul(&b), RationalSeries::from_ints(&[1, 2]));
        assert_eq!((&a + &b).order(), 1);
    }

    #[test]
    fn powers() {
        let one_minus_t = RationalSeries::one_minus_power(1, 4);
        assert_eq!(one_minus_t.pow_rational(&integer(-2)).unwrap(), RationalSeries::from_ints(&[1, 2, 3, 4, 5]));
        let a = RationalSeries::from_ints(&[1, 3, -2, 7, 0]);
        assert_eq!(a.pow_rational(&integer(0)).unwrap(), RationalSeries::one(4));
        let half = one_minus_t.pow_rational(&rational(1, 2)).unwrap();
        assert_eq!(half.mul(&half), one_minus_t);
        for e in -3..=3 {
            assert_eq!(a.pow_rational(&integer(e)).unwrap(), a.pow_int(e).unwrap(), "e = {e}");
        }
        assert!(RationalSeries::from_ints(&[2, 1]).pow_rational(&rational(1, 3)).is_err());
        assert!(RationalSeries::from_ints(&[0, 1]).inverse().is_err());
    }

    #[test]
    fn tamanoi_products() {
        assert_eq!(RationalSeries::tamanoi_product(0, 3).unwrap(), RationalSeries::from_ints(&[1, -1, 0, 0]));
        let inv = RationalSeries::tamanoi_product(1, 6).unwrap().inverse().unwrap();
        assert_eq!(inv, RationalSeries::from_ints(&partitions(6)));
        // k = 2: factors (1-t)^1 (1-t^2)^(1+2)
        let p2 = RationalSeries::tamanoi_product(2, 2).unwrap();
        assert_eq!(p2, RationalSeries::from_ints(&[1, -1, -3]));
        assert_eq!(p2.inverse().unwrap(), RationalSeries::from_ints(&[1, 1, 4]));
        for k in 0..=4 {
            let p = RationalSeries::tamanoi_product(k, 5).unwrap();
            assert!(p.is_integral());
            assert!(p.coeff(0).is_one());
        }
        assert!(RationalSeries::tamanoi_product(5, 3).is_err());
    }

    #[test]
    fn serialization() {
        let s = RationalSeries::new(vec![integer(1), integer(1), rational(3, 4), rational(-2, 6)]);
        assert_eq!(s.to_strings(), vec!["1", "1", "3/4", "-1/3"]);
        let f = s.to_file();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"N":3,"coefficients":["1","1","3/4","-1/3"]}"#);
        assert_eq!(RationalSeries::from_file(&f).unwrap(), s);
        assert_eq!(s.to_string(), "1 + t + (3/4)t^2 - (1/3)t^3 + O(t^4)");
        assert!(parse_rational("1/0").is_err());
    }
}
