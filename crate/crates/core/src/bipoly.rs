//! Sparse bivariate polynomials in `x`, `y` over `Q(phi)`, together with the
//! symmetric-power polynomials `P_k` and power traces `t_k`.
//!
//! With `x = alpha + beta` and `alpha * beta = 1`, `P_k(x)` is the complete
//! homogeneous sum `alpha^k + alpha^(k-1) beta + ... + beta^k` and `t_k(x)`
//! is `alpha^k + beta^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

/// Polynomial as a map from exponent pairs `(i, j)` (for `x^i y^j`) to
/// nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<TermRepr>", into = "Vec<TermRepr>")]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), GoldenRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GoldenRational::one())
    }

    pub fn constant(c: GoldenRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(n.into())
    }

    pub fn monomial(c: GoldenRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        match v {
            Var::X => Self::monomial(GoldenRational::one(), e, 0),
            Var::Y => Self::monomial(GoldenRational::one(), 0, e),
        }
    }

    /// Univariate polynomial in `v` from ascending integer coefficients.
    pub fn from_int_coeffs(v: Var, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as u32, 0, &GoldenRational::from(c));
        }
        if v == Var::Y {
            p.swap_vars()
        } else {
            p
        }
    }

    fn add_term(&mut self, i: u32, j: u32, c: &GoldenRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `((i, j), coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GoldenRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> GoldenRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(GoldenRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, j)| (i + j) as usize).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<usize> {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i as usize,
                Var::Y => j as usize,
            })
            .max()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v).is_some_and(|d| d > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    /// The constant coefficient, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<GoldenRational> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn scale(&self, c: &GoldenRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Applies `tau` to every coefficient.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c.conj())).collect(),
        }
    }

    /// Exact substitution `x <- u`, `y <- v`.
    pub fn eval(&self, u: &GoldenRational, v: &GoldenRational) -> GoldenRational {
        let (Some(dx), Some(dy)) = (self.degree_in(Var::X), self.degree_in(Var::Y)) else {
            return GoldenRational::zero();
        };
        let upow = powers(u, dx);
        let vpow = powers(v, dy);
        self.terms
            .iter()
            .fold(GoldenRational::zero(), |acc, (&(i, j), c)| {
                acc + &(c * &(&upow[i as usize] * &vpow[j as usize]))
            })
    }

    pub fn eval_int(&self, u: &GoldenInt, v: &GoldenInt) -> GoldenRational {
        self.eval(&u.clone().into(), &v.clone().into())
    }

    /// Substitutes polynomials for the variables: `f(x_sub, y_sub)`.
    pub fn compose(&self, x_sub: &BiPoly, y_sub: &BiPoly) -> BiPoly {
        let (Some(dx), Some(dy)) = (self.degree_in(Var::X), self.degree_in(Var::Y)) else {
            return BiPoly::zero();
        };
        let xp = poly_powers(x_sub, dx);
        let yp = poly_powers(y_sub, dy);
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = out + (&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    /// Coefficients `c_0..c_d` of a univariate polynomial in `v`.
    pub fn univariate_coeffs(&self, v: Var) -> Result<Vec<GoldenRational>> {
        if self.involves(v.other()) {
            return Err(Error::WrongVariable(v.other().name()));
        }
        let Some(d) = self.degree_in(v) else {
            return Ok(Vec::new());
        };
        let mut out = vec![GoldenRational::zero(); d + 1];
        for (&(i, j), c) in &self.terms {
            let e = if v == Var::X { i } else { j };
            out[e as usize] = c.clone();
        }
        Ok(out)
    }

    /// Long division of univariate polynomials in `v`: `self = q * divisor + r`
    /// with `deg r < deg divisor`.
    pub fn div_rem_univariate(&self, divisor: &BiPoly, v: Var) -> Result<(BiPoly, BiPoly)> {
        let mut rem = self.univariate_coeffs(v)?;
        let div = divisor.univariate_coeffs(v)?;
        let Some(lead) = div.last() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = lead.inv()?;
        let dd = div.len() - 1;
        let mut quot = vec![GoldenRational::zero(); rem.len().saturating_sub(dd)];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (m, d) in div.iter().enumerate() {
                rem[k - dd + m] = &rem[k - dd + m] - &(&q * d);
            }
            quot[k - dd] = q;
        }
        let build = |cs: &[GoldenRational]| {
            let mut p = BiPoly::zero();
            for (e, c) in cs.iter().enumerate() {
                p = p + BiPoly::var_pow(v, e as u32).scale(c);
            }
            p
        };
        Ok((build(&quot), build(&rem)))
    }
}

fn powers(u: &GoldenRational, n: usize) -> Vec<GoldenRational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(GoldenRational::one());
    for k in 1..=n {
        let next = &out[k - 1] * u;
        out.push(next);
    }
    out
}

fn poly_powers(p: &BiPoly, n: usize) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BiPoly::one());
    for k in 1..=n {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

macro_rules! forward_poly_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &'a BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl From<GoldenRational> for BiPoly {
    fn from(c: GoldenRational) -> Self {
        BiPoly::constant(c)
    }
}

impl From<i64> for BiPoly {
    fn from(n: i64) -> Self {
        BiPoly::int(n)
    }
}

/// Text form accepted by the expression parser, e.g. `x^2 - 2*x*y + y^2`.
/// Terms are ordered by descending total degree, then descending power of x.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let mono = monomial_text(key.0, key.1);
            let GoldenInt { a, b } = c.numer();
            let single = a.is_zero() || b.is_zero();
            let (negative, magnitude) = if single && (a.is_negative() || b.is_negative()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if single {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            let body = match (mono.is_empty(), magnitude.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            match (n, negative) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (part("x", i), part("y", j)) {
        (a, b) if a.is_empty() => b,
        (a, b) if b.is_empty() => a,
        (a, b) => format!("{a}*{b}"),
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: u32,
    j: u32,
    c: GoldenRational,
}

impl From<BiPoly> for Vec<TermRepr> {
    fn from(p: BiPoly) -> Self {
        p.terms
            .into_iter()
            .map(|((i, j), c)| TermRepr { i, j, c })
            .collect()
    }
}

impl From<Vec<TermRepr>> for BiPoly {
    fn from(v: Vec<TermRepr>) -> Self {
        let mut p = BiPoly::zero();
        for t in v {
            p.add_term(t.i, t.j, &t.c);
        }
        p
    }
}

/// `P_k` in the variable `v`: `P_0 = 1`, `P_1 = v`, `P_k = v P_{k-1} - P_{k-2}`.
pub fn pk_in(k: usize, v: Var) -> BiPoly {
    three_term(k, v, BiPoly::one())
}

/// `P_k(x)`.
pub fn pk(k: usize) -> BiPoly {
    pk_in(k, Var::X)
}

/// `P_k(y)`.
pub fn pk_y(k: usize) -> BiPoly {
    pk_in(k, Var::Y)
}

/// Power trace `t_k` in `v`: `t_0 = 2`, `t_1 = v`, `t_k = v t_{k-1} - t_{k-2}`.
pub fn tk_in(k: usize, v: Var) -> BiPoly {
    three_term(k, v, BiPoly::int(2))
}

pub fn tk(k: usize) -> BiPoly {
    tk_in(k, Var::X)
}

fn three_term(k: usize, v: Var, first: BiPoly) -> BiPoly {
    let t = BiPoly::var(v);
    let mut prev = first;
    if k == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..k {
        let next = &(&t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Indices `c` with `P_a P_b = sum of P_c`: `a+b, a+b-2, ..., |a-b|`.
pub fn pk_product(a: usize, b: usize) -> Vec<usize> {
    let lo = a.abs_diff(b);
    (lo..=a + b).rev().step_by(2).collect()
}

/// A univariate polynomial written in the basis `P_0, P_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBasisVector {
    pub var: Var,
    pub coeffs: Vec<GoldenRational>,
}

impl PBasisVector {
    pub fn coeff(&self, k: usize) -> GoldenRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GoldenRational::zero)
    }

    pub fn reconstruct(&self) -> BiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BiPoly::zero(), |acc, (k, c)| acc + pk_in(k, self.var).scale(c))
    }
}

/// Exact change of basis to `P_k`, by back-substitution from the top degree.
pub fn to_p_basis(f: &BiPoly, var: Var) -> Result<PBasisVector> {
    let mut rest = f.univariate_coeffs(var)?;
    let mut coeffs = vec![GoldenRational::zero(); rest.len()];
    for k in (0..rest.len()).rev() {
        let c = rest[k].clone();
        if c.is_zero() {
            continue;
        }
        // P_k is monic of degree k; peel it off
        let p = pk_in(k, var).univariate_coeffs(var)?;
        for (e, pc) in p.iter().enumerate() {
            rest[e] = &rest[e] - &(&c * pc);
        }
        coeffs[k] = c;
    }
    Ok(PBasisVector { var, coeffs })
}
