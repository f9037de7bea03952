//! Sparse polynomials in `x1..xn` and a formal parameter `b` (beta) with
//! arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of each `x` variable together with the exponent of beta.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub beta: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            x: vec![0; nvars],
            beta: 0,
        }
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    fn padded(&self, nvars: usize) -> Monomial {
        let mut x = self.x.clone();
        x.resize(nvars, 0);
        Monomial { x, beta: self.beta }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            beta: self.beta + other.beta,
        }
    }
}

/// A polynomial with integer coefficients; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The variable `x_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable x{i} outside x1..x{nvars}");
        let mut m = Monomial::one(nvars);
        m.x[i - 1] = 1;
        MultiPoly::monomial(nvars, m, 1)
    }

    pub fn beta(nvars: usize) -> Self {
        MultiPoly::monomial(
            nvars,
            Monomial {
                x: vec![0; nvars],
                beta: 1,
            },
            1,
        )
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        assert_eq!(m.x.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The same polynomial viewed in `nvars` variables (`nvars` may only
    /// grow).
    pub fn extended(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars, "cannot drop variables");
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.padded(nvars), c.clone()))
                .collect(),
        }
    }

    fn aligned(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let n = a.nvars.max(b.nvars);
        (a.extended(n), b.extended(n))
    }

    /// Largest total `x`-degree of a term; `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::x_degree).max()
    }

    /// Smallest total `x`-degree of a term; `None` for the zero polynomial.
    pub fn min_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::x_degree).min()
    }

    /// Terms of total `x`-degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Indices (1-based) of the `x` variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.x[i - 1] > 0))
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Swaps `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> MultiPoly {
        self.check_index(i);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.x.swap(i - 1, i);
            out.add_term(m, c.clone());
        }
        out
    }

    fn check_index(&self, i: usize) {
        assert!(
            i >= 1 && i < self.nvars,
            "index {i} outside 1..{}",
            self.nvars
        );
    }

    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.swap(i) == *self
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|i| self.is_symmetric_in(i))
    }

    /// `(f - s_i f) / (x_i - x_{i+1})`, by long division in `x_i`.
    ///
    /// The division peels off the terms of highest `x_i`-degree one level at
    /// a time; whatever is left at `x_i`-degree zero is the remainder, which
    /// must vanish.
    pub fn divided_difference(&self, i: usize) -> Result<MultiPoly> {
        self.check_index(i);
        let (a, b) = (i - 1, i);
        let mut rest = self - &self.swap(i);
        let mut quotient = MultiPoly::zero(self.nvars);
        let top = rest.terms.keys().map(|m| m.x[a]).max().unwrap_or(0);
        for e in (1..=top).rev() {
            let level: Vec<(Monomial, BigInt)> = rest
                .terms
                .iter()
                .filter(|(m, _)| m.x[a] == e)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            for (m, c) in level {
                let mut q = m.clone();
                q.x[a] -= 1;
                let mut shifted = q.clone();
                shifted.x[b] += 1;
                rest.add_term(m, -c.clone());
                rest.add_term(shifted, c.clone());
                quotient.add_term(q, c);
            }
        }
        if !rest.is_zero() {
            return Err(Error::InternalDivision(format!(
                "d_{i} of {self}: remainder {rest}"
            )));
        }
        Ok(quotient)
    }

    /// `d_i((1 - x_{i+1}) f)`.
    pub fn beta_divided_difference(&self, i: usize) -> Result<MultiPoly> {
        self.check_index(i);
        let factor = &MultiPoly::one(self.nvars) - &MultiPoly::var(self.nvars, i + 1);
        (&factor * self).divided_difference(i)
    }

    /// Replaces beta by a fixed integer.
    pub fn specialize_beta(&self, beta_value: i64) -> MultiPoly {
        let bv = BigInt::from(beta_value);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(
                Monomial {
                    x: m.x.clone(),
                    beta: 0,
                },
                c * num_traits::pow(bv.clone(), m.beta as usize),
            );
        }
        out
    }

    /// Substitutes `x_i = 1 - t` for every `i` and beta by `beta_value`.
    pub fn specialize_one_minus_t(&self, beta_value: i64) -> UniPoly {
        let bv = BigInt::from(beta_value);
        let mut by_degree: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            *by_degree.entry(m.x_degree()).or_default() +=
                c * num_traits::pow(bv.clone(), m.beta as usize);
        }
        let mut out = UniPoly::zero();
        for (d, c) in by_degree {
            out = &out + &UniPoly::one_minus_t_pow(d as usize).scale(&c);
        }
        out
    }

    /// Evaluates at integer points (beta included).
    pub fn eval(&self, x: &[i64], beta: i64) -> BigInt {
        assert_eq!(x.len(), self.nvars);
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone() * num_traits::pow(BigInt::from(beta), m.beta as usize);
            for (xi, &e) in x.iter().zip(&m.x) {
                v *= num_traits::pow(BigInt::from(*xi), e as usize);
            }
            total += v;
        }
        total
    }

    /// Renders using `name(i)` for `x_i` (1-based) and `b` for beta.
    pub fn to_text_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(m1, _), (m2, _)| {
            (m1.x_degree(), m1.beta, std::cmp::Reverse(&m1.x)).cmp(&(
                m2.x_degree(),
                m2.beta,
                std::cmp::Reverse(&m2.x),
            ))
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mut factors = Vec::new();
            match m.beta {
                0 => {}
                1 => factors.push("b".to_string()),
                e => factors.push(format!("b^{e}")),
            }
            for (i, &e) in m.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(i + 1)),
                    e => factors.push(format!("{}^{e}", name(i + 1))),
                }
            }
            let mag = c.abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{mag}*{}", factors.join("*"))
            };
            if k == 0 {
                out.push_str(if c.is_negative() { "-" } else { "" });
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// Coefficientwise comparison: `f` precedes `g` when every nonzero
/// coefficient of `f` has the sign of, and at most the magnitude of, the
/// matching coefficient of `g`.
pub fn precede(f: &MultiPoly, g: &MultiPoly) -> bool {
    let (f, g) = MultiPoly::aligned(f, g);
    f.terms.iter().all(|(m, a)| {
        let b = g.coeff(m);
        a.signum() == b.signum() && a.abs() <= b.abs()
    })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(|i| format!("x{i}")))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.nvars)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::aligned(self, rhs);
        let mut out = MultiPoly::zero(a.nvars);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        if rhs.nvars > self.nvars {
            *self = self.extended(rhs.nvars);
        }
        for (m, c) in &rhs.terms {
            self.add_term(m.padded(self.nvars), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        *self += &-rhs;
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    x: Vec<u32>,
    beta: u32,
    c: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = serde_json::Number::from_str(&c.to_string())
                    .map_err(serde::ser::Error::custom)?;
                Ok(TermRepr {
                    x: m.x.clone(),
                    beta: m.beta,
                    c,
                })
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        PolyRepr {
            nvars: self.nvars,
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = MultiPoly::zero(repr.nvars);
        for t in repr.terms {
            if t.x.len() != repr.nvars {
                return Err(serde::de::Error::custom(
                    "exponent vector length differs from nvars",
                ));
            }
            let c = BigInt::from_str(&t.c.to_string()).map_err(serde::de::Error::custom)?;
            p.add_term(
                Monomial {
                    x: t.x,
                    beta: t.beta,
                },
                c,
            );
        }
        Ok(p)
    }
}

/// A polynomial in one variable `t`, coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1 - t)^d`.
    pub fn one_minus_t_pow(d: usize) -> Self {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut binom = BigInt::one();
        for k in 0..=d {
            coeffs.push(if k % 2 == 0 {
                binom.clone()
            } else {
                -binom.clone()
            });
            binom = binom * (d - k) / (k + 1);
        }
        UniPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        UniPoly::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                d => format!("t^{d}"),
            };
            let body = if var.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                var
            } else {
                format!("{mag}*{var}")
            };
            if first {
                write!(f, "{}{body}", if c.is_negative() { "-" } else { "" })?;
                first = false;
            } else {
                write!(f, " {} {body}", if c.is_negative() { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs = nums
            .iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(UniPoly::new(coeffs))
    }
}
