//! Exact scalars: big rationals with a sparse-polynomial extension over
//! commuting named indeterminates (`k1`, `c3`, `k[a1.a2]`, ...).
//!
//! Rational values take a fast path; anything involving an indeterminate is
//! stored as a map from monomials to rational coefficients. A polynomial with
//! only a constant term is always normalised back to the rational variant, so
//! equality is structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Compares strings so that embedded digit runs sort numerically (`k2 < k10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(p), Some(q)) if p.is_ascii_digit() && q.is_ascii_digit() => {
                let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (dx, dy) = (&x[..lx], &y[..ly]);
                let tx = trim_zeros(dx);
                let ty = trim_zeros(dy);
                let ord = tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty)).then(lx.cmp(&ly));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[lx..];
                y = &y[ly..];
            }
            (Some(p), Some(q)) => {
                if p != q {
                    return p.cmp(q);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    &d[k.min(d.len().saturating_sub(1))..]
}

/// A named commuting indeterminate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Product of indeterminates with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn exponent(&self, v: &Var) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(v)).map(|k| self.0[k].1).unwrap_or(0)
    }

    /// Display order: higher total degree first, ties by graded reverse
    /// lexicographic order.
    fn display_cmp(&self, other: &Monomial) -> Ordering {
        let d = other.total_degree().cmp(&self.total_degree());
        if d != Ordering::Equal {
            return d;
        }
        let mut vars: Vec<&Var> = self.0.iter().chain(other.0.iter()).map(|(v, _)| v).collect();
        vars.sort();
        vars.dedup();
        for v in vars.into_iter().rev() {
            let (a, b) = (self.exponent(v), other.exponent(v));
            if a != b {
                // smaller exponent in the last differing variable ranks first
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(v.name())?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact scalar of the ground field, possibly symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    /// Invariant: at least one non-constant monomial, no zero coefficients.
    Poly(BTreeMap<Monomial, BigRational>),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coefficient::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(name: impl Into<String>) -> Self {
        let mut m = BTreeMap::new();
        m.insert(Monomial::var(Var::new(name)), BigRational::one());
        Coefficient::Poly(m)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            Coefficient::Poly(_) => None,
        }
    }

    /// True for negative rationals; polynomials are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_negative())
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Coefficient::Poly(_))
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        let mut acc = Coefficient::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Terms in canonical display order.
    pub fn terms(&self) -> Vec<(Monomial, BigRational)> {
        let mut out: Vec<(Monomial, BigRational)> = match self {
            Coefficient::Rational(r) if r.is_zero() => Vec::new(),
            Coefficient::Rational(r) => vec![(Monomial::one(), r.clone())],
            Coefficient::Poly(m) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        };
        out.sort_by(|a, b| a.0.display_cmp(&b.0));
        out
    }

    fn to_map(&self) -> BTreeMap<Monomial, BigRational> {
        match self {
            Coefficient::Rational(r) => {
                let mut m = BTreeMap::new();
                if !r.is_zero() {
                    m.insert(Monomial::one(), r.clone());
                }
                m
            }
            Coefficient::Poly(m) => m.clone(),
        }
    }

    fn from_map(mut m: BTreeMap<Monomial, BigRational>) -> Self {
        m.retain(|_, v| !v.is_zero());
        if m.keys().all(Monomial::is_one) {
            return Coefficient::Rational(m.into_values().next().unwrap_or_else(BigRational::zero));
        }
        Coefficient::Poly(m)
    }

    fn add_ref(&self, other: &Coefficient, sign: bool) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                Coefficient::Rational(if sign { a + b } else { a - b })
            }
            _ => {
                let mut m = self.to_map();
                for (k, v) in other.to_map() {
                    let e = m.entry(k).or_insert_with(BigRational::zero);
                    if sign {
                        *e += v;
                    } else {
                        *e -= v;
                    }
                }
                Coefficient::from_map(m)
            }
        }
    }

    fn mul_ref(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Rational(a), Coefficient::Poly(p)) | (Coefficient::Poly(p), Coefficient::Rational(a)) => {
                if a.is_zero() {
                    return Coefficient::zero();
                }
                Coefficient::Poly(p.iter().map(|(k, v)| (k.clone(), v * a)).collect())
            }
            (Coefficient::Poly(p), Coefficient::Poly(q)) => {
                let mut m: BTreeMap<Monomial, BigRational> = BTreeMap::new();
                for (ka, va) in p {
                    for (kb, vb) in q {
                        *m.entry(ka.mul(kb)).or_insert_with(BigRational::zero) += va * vb;
                    }
                }
                Coefficient::from_map(m)
            }
        }
    }
}

impl Default for Coefficient {
    fn default() -> Self {
        Coefficient::zero()
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient::Rational(r)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &'a Coefficient) -> Coefficient {
        self.add_ref(rhs, true)
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &'a Coefficient) -> Coefficient {
        self.add_ref(rhs, false)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &'a Coefficient) -> Coefficient {
        self.mul_ref(rhs)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Poly(p) => Coefficient::Poly(p.into_iter().map(|(k, v)| (k, -v)).collect()),
        }
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if let (Coefficient::Rational(a), Coefficient::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = self.add_ref(rhs, true);
    }
}

impl AddAssign for Coefficient {
    fn add_assign(&mut self, rhs: Coefficient) {
        *self += &rhs;
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        if let (Coefficient::Rational(a), Coefficient::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = self.add_ref(rhs, false);
    }
}

impl MulAssign<&Coefficient> for Coefficient {
    fn mul_assign(&mut self, rhs: &Coefficient) {
        if let (Coefficient::Rational(a), Coefficient::Rational(b)) = (&mut *self, rhs) {
            *a *= b;
            return;
        }
        *self = self.mul_ref(rhs);
    }
}

impl Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        let mut acc = Coefficient::zero();
        for c in iter {
            acc += &c;
        }
        acc
    }
}

impl Product for Coefficient {
    fn product<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        let mut acc = Coefficient::one();
        for c in iter {
            acc *= &c;
        }
        acc
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (mono, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mono.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let c = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(c)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Coefficient> {
        let mut acc = Coefficient::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    true
                }
                Some(b'-') => {
                    self.pos += 1;
                    false
                }
                _ if first => true,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = acc.add_ref(&t, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Coefficient> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Coefficient> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e: u32 = e.parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Coefficient> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().map_err(|_| self.err("bad integer"))?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den: BigInt = self.digits()?.parse().map_err(|_| self.err("bad integer"))?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Coefficient::Rational(BigRational::new(num, den)));
                }
                Ok(Coefficient::Rational(BigRational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                if self.src.get(self.pos) == Some(&b'[') {
                    while self.pos < self.src.len() && self.src[self.pos] != b']' {
                        self.pos += 1;
                    }
                    if self.pos == self.src.len() {
                        return Err(self.err("unterminated `[`"));
                    }
                    self.pos += 1;
                }
                Ok(Coefficient::var(String::from_utf8_lossy(&self.src[start..self.pos])))
            }
            _ => Err(self.err("expected a number, indeterminate or `(`")),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Coefficient::from_int(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
