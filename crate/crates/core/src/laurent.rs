//! Exact multivariate Laurent polynomials over the integers.
//!
//! The ambient ring has `n` cluster variables `x1..xn`, which may carry
//! negative exponents, followed by `m` frozen variables `f1..fm`. Terms are
//! kept in an ordered map keyed by exponent vector, so two polynomials are
//! equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LaurentError;

/// Number of cluster and frozen variables in the ambient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vars {
    pub cluster: usize,
    pub frozen: usize,
}

impl Vars {
    pub fn new(cluster: usize, frozen: usize) -> Self {
        Vars { cluster, frozen }
    }

    pub fn total(&self) -> usize {
        self.cluster + self.frozen
    }
}

/// Exponent vector over all ambient variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn from_exps(exps: Vec<i32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, LaurentError> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b).ok_or(LaurentError::ExponentOverflow)?);
        }
        Ok(Monomial(out.into_boxed_slice()))
    }

    fn checked_shift(&self, shift: &[i32], negate: bool) -> Result<Monomial, LaurentError> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, s) in self.0.iter().zip(shift) {
            let v = if negate { a.checked_sub(*s) } else { a.checked_add(*s) };
            out.push(v.ok_or(LaurentError::ExponentOverflow)?);
        }
        Ok(Monomial(out.into_boxed_slice()))
    }
}

/// Monomial order used by exact division and by rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TermOrder {
    /// Total degree first, ties broken lexicographically with `x1` largest.
    #[default]
    GradedLex,
    /// Pure lexicographic order with `x1` largest.
    Lex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            TermOrder::Lex => a.0.cmp(&b.0),
        }
    }

    fn key(&self, m: &Monomial) -> Vec<i64> {
        let mut key = Vec::with_capacity(m.0.len() + 1);
        match self {
            TermOrder::GradedLex => key.push(m.degree()),
            TermOrder::Lex => key.push(0),
        }
        key.extend(m.0.iter().map(|&e| e as i64));
        key
    }

    fn unkey(key: &[i64]) -> Monomial {
        Monomial(key[1..].iter().map(|&e| e as i32).collect())
    }
}

/// A Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: Vars) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: Vars, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.total()), c.into());
        p
    }

    /// The single variable at ambient index `idx` (cluster variables first).
    pub fn variable(vars: Vars, idx: usize) -> Self {
        assert!(idx < vars.total(), "variable index out of range");
        let mut exps = vec![0; vars.total()];
        exps[idx] = 1;
        Self::monomial(vars, Monomial::from_exps(exps), BigInt::one())
    }

    pub fn monomial(vars: Vars, m: Monomial, c: BigInt) -> Self {
        assert_eq!(m.0.len(), vars.total(), "monomial length mismatch");
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(vars: Vars, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (BigInt, Vec<i32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != vars.total() {
                return Err(LaurentError::DimensionMismatch {
                    left: vars.total(),
                    right: e.len(),
                });
            }
            p.add_term(Monomial::from_exps(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> Vars {
        self.vars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.vars != other.vars {
            return Err(LaurentError::DimensionMismatch {
                left: self.vars.total(),
                right: other.vars.total(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero(self.vars));
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly { vars: self.vars, terms })
    }

    /// Multiplies by a monomial with coefficient one.
    pub fn shift(&self, by: &Monomial) -> Result<LaurentPoly, LaurentError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.checked_mul(by)?, c.clone());
        }
        Ok(LaurentPoly { vars: self.vars, terms })
    }

    pub fn pow(&self, exp: u32) -> Result<LaurentPoly, LaurentError> {
        let mut result = LaurentPoly::one(self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Componentwise minimum exponent over all terms.
    fn min_exponents(&self) -> Vec<i32> {
        let mut mins = vec![i32::MAX; self.vars.total()];
        for m in self.terms.keys() {
            for (lo, &e) in mins.iter_mut().zip(m.0.iter()) {
                *lo = (*lo).min(e);
            }
        }
        mins
    }

    /// Exact quotient under the default graded-lex order.
    pub fn div_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.div_exact_with(den, TermOrder::GradedLex)
    }

    /// Exact quotient `q` with `q * den == self`.
    ///
    /// The greatest common monomial is cleared from both operands, which turns
    /// them into ordinary polynomials; the numerator is then reduced by the
    /// single divisor on leading terms. Anything left over is reported as
    /// `NonExactDivision`.
    pub fn div_exact_with(
        &self,
        den: &LaurentPoly,
        order: TermOrder,
    ) -> Result<LaurentPoly, LaurentError> {
        self.check_vars(den)?;
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.vars));
        }
        let num_shift = self.min_exponents();
        let den_shift = den.min_exponents();

        // ordinary polynomial divisor, keyed by the term order
        let mut divisor: Vec<(Monomial, BigInt)> = Vec::with_capacity(den.terms.len());
        for (m, c) in &den.terms {
            divisor.push((m.checked_shift(&den_shift, true)?, c.clone()));
        }
        divisor.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let (lead_mono, lead_coef) = divisor.last().cloned().expect("nonzero divisor");

        let mut rem: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            rem.insert(order.key(&m.checked_shift(&num_shift, true)?), c.clone());
        }

        let mut quotient: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((key, coef)) = rem.pop_last() {
            let mono = TermOrder::unkey(&key);
            let mut q_exps = Vec::with_capacity(mono.0.len());
            for (a, b) in mono.0.iter().zip(lead_mono.0.iter()) {
                let e = a - b;
                if e < 0 {
                    return Err(LaurentError::NonExactDivision);
                }
                q_exps.push(e);
            }
            if !(&coef % &lead_coef).is_zero() {
                return Err(LaurentError::NonExactDivision);
            }
            let q_coef = &coef / &lead_coef;
            let q_mono = Monomial::from_exps(q_exps);
            for (dm, dc) in divisor.iter().rev().skip(1) {
                let k = order.key(&q_mono.checked_mul(dm)?);
                let delta = &q_coef * dc;
                match rem.get_mut(&k) {
                    Some(existing) => {
                        *existing -= delta;
                        if existing.is_zero() {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, -delta);
                    }
                }
            }
            quotient.push((q_mono, q_coef));
        }

        let net: Vec<i32> = num_shift
            .iter()
            .zip(&den_shift)
            .map(|(a, b)| a.checked_sub(*b).ok_or(LaurentError::ExponentOverflow))
            .collect::<Result<_, _>>()?;
        let mut out = LaurentPoly::zero(self.vars);
        for (m, c) in quotient {
            out.add_term(m.checked_shift(&net, false)?, c);
        }
        Ok(out)
    }

    /// Denominator vector with respect to the initial cluster variables.
    pub fn denominator_vector(&self) -> Result<Vec<i32>, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let mins = self.min_exponents();
        Ok(mins[..self.vars.cluster].iter().map(|&e| (-e).max(0)).collect())
    }

    /// True when no term carries a negative frozen exponent.
    pub fn frozen_exponents_nonnegative(&self) -> bool {
        let n = self.vars.cluster;
        self.terms.keys().all(|m| m.0[n..].iter().all(|&e| e >= 0))
    }

    /// Splits into `numerator / monomial` with a polynomial numerator.
    pub fn as_fraction(&self) -> (LaurentPoly, Monomial) {
        let total = self.vars.total();
        if self.is_zero() {
            return (self.clone(), Monomial::one(total));
        }
        let den: Vec<i32> = self.min_exponents().iter().map(|&e| (-e).max(0)).collect();
        let den = Monomial::from_exps(den);
        let num = self.shift(&den).expect("clearing denominators cannot overflow");
        (num, den)
    }

    /// Evaluates modulo a prime at the given point (all coordinates nonzero mod p).
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let inv: Vec<u64> = point.iter().map(|&a| pow_mod(a, p - 2, p)).collect();
        let pbig = BigInt::from(p);
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let mut c = c % &pbig;
            if c.is_negative() {
                c += &pbig;
            }
            let mut t: u128 = u64::try_from(c).expect("reduced coefficient") as u128;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * pow_mod(point[i], e as u64, p) as u128 % p as u128;
                } else if e < 0 {
                    t = t * pow_mod(inv[i], (-e) as u64, p) as u128 % p as u128;
                }
            }
            acc = (acc + t) % p as u128;
        }
        acc as u64
    }

    /// Pretty fraction form, e.g. `(x2^2 + 1)/x1`.
    pub fn to_fraction_string(&self) -> String {
        let (num, den) = self.as_fraction();
        let num_str = render_poly(&num);
        if den.is_one() {
            return num_str;
        }
        let den_factors = render_factors(&den, self.vars, false);
        let num_part = if num.len() > 1 { format!("({num_str})") } else { num_str };
        if den_factors.len() > 1 {
            format!("{}/({})", num_part, den_factors.join("*"))
        } else {
            format!("{}/{}", num_part, den_factors[0])
        }
    }

    /// `(coefficient, exponents)` pairs, coefficients as decimal strings.
    pub fn to_term_list(&self) -> Vec<(String, Vec<i32>)> {
        self.terms.iter().map(|(m, c)| (c.to_string(), m.0.to_vec())).collect()
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut result: u128 = 1;
    let mut b = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    base = result as u64;
    base
}

fn var_name(vars: Vars, idx: usize) -> String {
    if idx < vars.cluster {
        format!("x{}", idx + 1)
    } else {
        format!("f{}", idx - vars.cluster + 1)
    }
}

/// Variable factors of a monomial; `signed` keeps negative exponents as written.
fn render_factors(m: &Monomial, vars: Vars, signed: bool) -> Vec<String> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            let e = if signed { e } else { e.abs() };
            if e == 1 {
                var_name(vars, i)
            } else {
                format!("{}^{}", var_name(vars, i), e)
            }
        })
        .collect()
}

fn render_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &BigInt)> = p.terms.iter().collect();
    terms.sort_by(|a, b| TermOrder::GradedLex.cmp(b.0, a.0));
    let mut out = String::new();
    for (idx, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors = render_factors(m, p.vars, true);
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    /// Product form: `(x2^2 + 1)*x1^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.as_fraction();
        if den.is_one() {
            return write!(f, "{}", render_poly(&num));
        }
        let inv = Monomial::from_exps(den.0.iter().map(|e| -e).collect());
        let den_str = render_factors(&inv, self.vars, true).join("*");
        let num_str = render_poly(&num);
        if num.len() > 1 {
            write!(f, "({num_str})*{den_str}")
        } else if num_str == "1" {
            write!(f, "{den_str}")
        } else {
            write!(f, "{num_str}*{den_str}")
        }
    }
}
