//! Closed forms and recurrences for the sequences that show up as counts.
//!
//! Everything is exact big-integer arithmetic. Two entries return
//! coefficient lists instead of a single number: the Catalan polynomials
//! `G_k` and the series of `F_k = G_k / G_{k+1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SequenceId {
    Catalan,
    Narayana,
    Ballot,
    BinomTransformCatalan,
    CatalanPolyG,
    BoundedDyckF,
    XiCount,
    A002057,
    Sort123Formula,
    Pair123_321,
    OddFibonacci,
    Fubini,
    Fishburn,
}

impl SequenceId {
    pub const ALL: [SequenceId; 13] = [
        SequenceId::Catalan,
        SequenceId::Narayana,
        SequenceId::Ballot,
        SequenceId::BinomTransformCatalan,
        SequenceId::CatalanPolyG,
        SequenceId::BoundedDyckF,
        SequenceId::XiCount,
        SequenceId::A002057,
        SequenceId::Sort123Formula,
        SequenceId::Pair123_321,
        SequenceId::OddFibonacci,
        SequenceId::Fubini,
        SequenceId::Fishburn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceId::Catalan => "CATALAN",
            SequenceId::Narayana => "NARAYANA",
            SequenceId::Ballot => "BALLOT",
            SequenceId::BinomTransformCatalan => "BINOM_TRANSFORM_CATALAN",
            SequenceId::CatalanPolyG => "CATALAN_POLY_G",
            SequenceId::BoundedDyckF => "BOUNDED_DYCK_F",
            SequenceId::XiCount => "XI_COUNT",
            SequenceId::A002057 => "A002057",
            SequenceId::Sort123Formula => "SORT123_FORMULA",
            SequenceId::Pair123_321 => "PAIR123_321",
            SequenceId::OddFibonacci => "ODD_FIBONACCI",
            SequenceId::Fubini => "FUBINI",
            SequenceId::Fishburn => "FISHBURN",
        }
    }

    /// Parameter names, in order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            SequenceId::Narayana => &["n", "k"],
            SequenceId::Ballot => &["n", "k?"],
            SequenceId::CatalanPolyG => &["k"],
            SequenceId::BoundedDyckF => &["k", "terms"],
            _ => &["n"],
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceId {
    type Err = SequenceError;
    fn from_str(s: &str) -> Result<Self, SequenceError> {
        let norm = s.replace('-', "_");
        SequenceId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| SequenceError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("unknown sequence `{0}`")]
    UnknownId(String),
    #[error("{id} expects parameters ({expected}), got {got:?}")]
    Arity { id: SequenceId, expected: String, got: Vec<u64> },
    #[error("{id}: {reason}")]
    Invalid { id: SequenceId, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SequenceValue {
    Integer(#[serde(serialize_with = "crate::enumeration::serialize_decimal")] BigInt),
    /// Coefficients of `t^0, t^1, ...`.
    Coefficients(#[serde(serialize_with = "crate::enumeration::serialize_decimal_list")] Vec<BigInt>),
}

impl fmt::Display for SequenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceValue::Integer(v) => write!(f, "{v}"),
            SequenceValue::Coefficients(c) => {
                let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// `N(n,k) = binom(n,k) binom(n,k-1) / n`, for `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> BigUint {
    if n == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if k == 0 || k > n {
        return BigUint::zero();
    }
    binomial(n, k) * binomial(n, k - 1) / n
}

/// Row `n` of the Catalan triangle, built by `b(n,k) = sum_{i<=k} b(n-1,i)`.
pub fn ballot_row(n: u64) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 2..=n as usize {
        let mut next = Vec::with_capacity(m);
        let mut acc = BigUint::zero();
        for k in 0..m {
            if let Some(v) = row.get(k) {
                acc += v;
            }
            next.push(acc.clone());
        }
        row = next;
    }
    if n == 0 {
        row.clear();
    }
    row
}

/// `sum_k binom(n-1,k) C_k`.
pub fn binom_transform_catalan(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    (0..n).map(|k| binomial(n - 1, k) * catalan(k)).sum()
}

/// `G_0 = G_1 = 1`, `G_{k+1} = G_k - t G_{k-1}`.
pub fn catalan_poly_g(k: u64) -> Vec<BigInt> {
    let (mut prev, mut cur) = (vec![BigInt::one()], vec![BigInt::one()]);
    for _ in 1..k {
        let mut next = cur.clone();
        next.resize(next.len().max(prev.len() + 1), BigInt::zero());
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] -= c;
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Power-series quotient `a / b` up to `t^terms`; `b(0)` must be 1.
pub fn series_div(a: &[BigInt], b: &[BigInt], terms: usize) -> Vec<BigInt> {
    assert!(b.first().is_some_and(One::is_one), "divisor must have constant term 1");
    let mut q: Vec<BigInt> = Vec::with_capacity(terms + 1);
    for n in 0..=terms {
        let mut c = a.get(n).cloned().unwrap_or_default();
        for j in 1..=n.min(b.len().saturating_sub(1)) {
            c -= &b[j] * &q[n - j];
        }
        q.push(c);
    }
    q
}

pub fn series_mul(a: &[BigInt], b: &[BigInt], terms: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); terms + 1];
    for (i, x) in a.iter().enumerate().take(terms + 1) {
        for (j, y) in b.iter().enumerate().take(terms + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Series of `G_k / G_{k+1}`: Dyck paths of height at most `k`.
pub fn bounded_dyck_f(k: u64, terms: usize) -> Vec<BigInt> {
    series_div(&catalan_poly_g(k), &catalan_poly_g(k + 1), terms)
}

/// `sum_{t=0}^{n-1} t! (t+1)^{n-t-1}`.
pub fn xi_count(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    (0..n).map(|t| factorial(t) * BigUint::from(t + 1).pow((n - t - 1) as u32)).sum()
}

/// `C_n - 2 C_{n-1}` for `n >= 2`, and 0 at `n = 1`.
pub fn a002057(n: u64) -> BigInt {
    if n < 2 {
        return BigInt::zero();
    }
    BigInt::from(catalan(n)) - 2 * BigInt::from(catalan(n - 1))
}

/// `1 + sum_{h=1}^{n-1} (n-h) C_h`.
pub fn sort123_formula(n: u64) -> BigUint {
    BigUint::one() + (1..n).map(|h| catalan(h) * (n - h)).sum::<BigUint>()
}

/// `7 * 2^(n-4)` from `n = 4`; the first three values are 1, 2, 4.
pub fn pair123_321(n: u64) -> BigUint {
    match n {
        0 | 1 => BigUint::one(),
        2 => 2u32.into(),
        3 => 4u32.into(),
        _ => BigUint::from(7u32) << (n - 4),
    }
}

/// `f(1) = 1`, `f(2) = 2`, `f(n+1) = 3 f(n) - f(n-1)`.
pub fn odd_fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::from(2u32));
    if n <= 1 {
        return a;
    }
    for _ in 2..n {
        let c = &b * 3u32 - &a;
        a = std::mem::replace(&mut b, c);
    }
    b
}

/// Ordered set partitions: `F(n) = sum_k binom(n,k) F(n-k)`.
pub fn fubini(n: u64) -> BigUint {
    let mut f = vec![BigUint::one()];
    for m in 1..=n {
        let v = (1..=m).map(|k| binomial(m, k) * &f[(m - k) as usize]).sum();
        f.push(v);
    }
    f.pop().unwrap()
}

/// Coefficient of `t^n` in `sum_k prod_{i=1}^k (1 - (1-t)^i)`.
pub fn fishburn(n: u64) -> BigUint {
    let terms = n as usize;
    let mut total = vec![BigInt::zero(); terms + 1];
    let mut prod = vec![BigInt::one()];
    for i in 1..=terms as u64 {
        // 1 - (1-t)^i
        let factor: Vec<BigInt> = (0..=i)
            .map(|j| {
                let c = BigInt::from(binomial(i, j));
                let signed = if j % 2 == 0 { c } else { -c };
                if j == 0 { BigInt::zero() } else { -signed }
            })
            .collect();
        for (acc, c) in total.iter_mut().zip(&prod) {
            *acc += c;
        }
        prod = series_mul(&prod, &factor, terms);
    }
    for (acc, c) in total.iter_mut().zip(&prod) {
        *acc += c;
    }
    total[terms].to_biguint().expect("Fishburn numbers are positive")
}

fn arity(id: SequenceId, params: &[u64], allowed: &[usize]) -> Result<(), SequenceError> {
    if allowed.contains(&params.len()) {
        Ok(())
    } else {
        Err(SequenceError::Arity { id, expected: id.params().join(", "), got: params.to_vec() })
    }
}

fn invalid(id: SequenceId, reason: impl Into<String>) -> SequenceError {
    SequenceError::Invalid { id, reason: reason.into() }
}

fn int(v: BigUint) -> SequenceValue {
    SequenceValue::Integer(v.into())
}

/// Evaluates a catalogued sequence.
pub fn sequence_value(id: SequenceId, params: &[u64]) -> Result<SequenceValue, SequenceError> {
    use SequenceId::*;
    let need_positive = |n: u64| if n == 0 { Err(invalid(id, "n must be at least 1")) } else { Ok(n) };
    match id {
        Narayana => {
            arity(id, params, &[2])?;
            let (n, k) = (params[0], params[1]);
            if !(1..=n).contains(&k) {
                return Err(invalid(id, format!("need 1 <= k <= n, got n = {n}, k = {k}")));
            }
            Ok(int(narayana(n, k)))
        }
        Ballot => {
            arity(id, params, &[1, 2])?;
            let n = need_positive(params[0])?;
            let row = ballot_row(n);
            match params.get(1) {
                None => Ok(SequenceValue::Coefficients(row.into_iter().map(BigInt::from).collect())),
                Some(&k) if (1..=n).contains(&k) => Ok(int(row[k as usize - 1].clone())),
                Some(&k) => Err(invalid(id, format!("need 1 <= k <= n, got n = {n}, k = {k}"))),
            }
        }
        CatalanPolyG => {
            arity(id, params, &[1])?;
            Ok(SequenceValue::Coefficients(catalan_poly_g(params[0])))
        }
        BoundedDyckF => {
            arity(id, params, &[2])?;
            Ok(SequenceValue::Coefficients(bounded_dyck_f(params[0], params[1] as usize)))
        }
        _ => {
            arity(id, params, &[1])?;
            let n = params[0];
            Ok(match id {
                Catalan => int(catalan(n)),
                BinomTransformCatalan => int(binom_transform_catalan(need_positive(n)?)),
                XiCount => int(xi_count(n)),
                A002057 => SequenceValue::Integer(a002057(need_positive(n)?)),
                Sort123Formula => int(sort123_formula(need_positive(n)?)),
                Pair123_321 => int(pair123_321(need_positive(n)?)),
                OddFibonacci => int(odd_fibonacci(need_positive(n)?)),
                Fubini => int(fubini(n)),
                Fishburn => int(fishburn(n)),
                Narayana | Ballot | CatalanPolyG | BoundedDyckF => unreachable!(),
            })
        }
    }
}
