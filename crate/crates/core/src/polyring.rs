//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Ring`] names the variables and fixes a monomial order. Every
//! [`Polynomial`] carries its ring and keeps its terms sorted ascending in
//! that order, so the leading term is always the last entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: variables flagged `true` form a block compared
    /// first (grevlex), ties broken by grevlex on the remaining variables.
    Block(Vec<bool>),
}

impl MonomialOrder {
    /// Compares two monomials of equal arity.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.0.iter().zip(&b.0) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => grevlex_masked(a, b, |_| true),
            MonomialOrder::Block(mask) => {
                grevlex_masked(a, b, |i| mask[i]).then_with(|| grevlex_masked(a, b, |i| !mask[i]))
            }
        }
    }
}

fn grevlex_masked(a: &Monomial, b: &Monomial, keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |m: &Monomial| -> u64 {
        m.0.iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e as u64)
            .sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.0.len()).rev() {
        if !keep(i) {
            continue;
        }
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Compares two monomials under `order`, checking arity.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    if let MonomialOrder::Block(mask) = order {
        if mask.len() != a.arity() {
            return Err(Error::ArityMismatch {
                expected: mask.len(),
                got: a.arity(),
            });
        }
    }
    Ok(order.compare(a, b))
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect()))
        } else {
            None
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Polynomial ring over the rationals: ordered variable names plus a
/// monomial order. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}; {:?}]", self.0.vars.join(","), self.0.order)
    }
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(mask) = &order {
            if mask.len() != vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block order covers {} variables, ring has {}",
                    mask.len(),
                    vars.len()
                )));
            }
        }
        Ok(Ring(Arc::new(RingData { vars, order })))
    }

    pub fn grevlex<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        Ring::new(vars, MonomialOrder::GrevLex)
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn has_same_vars(&self, other: &Ring) -> bool {
        self.0.vars == other.0.vars
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }

    pub fn var_at(&self, i: usize) -> Polynomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Polynomial::from_sorted(self.clone(), vec![(Monomial(e), Rational::one())])
    }

    /// All variables, in ring order.
    pub fn gens(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var_at(i)).collect()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self, c)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        if &order == self.order() {
            return Ok(self.clone());
        }
        Ring::new(self.0.vars.clone(), order)
    }

    /// Appends `extra` variables; the result uses grevlex.
    pub fn extend<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Ring> {
        let mut vars = self.0.vars.clone();
        vars.extend(extra.into_iter().map(Into::into));
        Ring::grevlex(vars)
    }

    /// A variable name derived from `base` that is not already in the ring.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }

    /// Block order eliminating the named variables.
    pub fn block_order(&self, eliminated: &[&str]) -> Result<MonomialOrder> {
        let mut mask = vec![false; self.nvars()];
        for name in eliminated {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            mask[i] = true;
        }
        Ok(MonomialOrder::Block(mask))
    }

    /// Ring on the listed variables only, grevlex.
    pub fn restrict(&self, keep: &[&str]) -> Result<Ring> {
        for name in keep {
            if self.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        Ring::grevlex(keep.iter().map(|s| s.to_string()))
    }

    pub fn point(&self, coords: Vec<Rational>) -> Result<RationalPoint> {
        RationalPoint::new(self, coords)
    }
}

/// A point with exact rational coordinates in some affine space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(ring: &Ring, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: ring.nvars(),
                got: coords.len(),
            });
        }
        Ok(RationalPoint(coords))
    }

    pub fn from_ints(ints: &[i64]) -> Self {
        RationalPoint(ints.iter().map(|&n| rat(n)).collect())
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Value assigned to a variable by [`Polynomial::substitute`].
#[derive(Clone, Debug)]
pub enum Value {
    Rational(Rational),
    Poly(Polynomial),
}

impl From<Rational> for Value {
    fn from(c: Rational) -> Self {
        Value::Rational(c)
    }
}

impl From<Polynomial> for Value {
    fn from(p: Polynomial) -> Self {
        Value::Poly(p)
    }
}

pub type Assignment = BTreeMap<String, Value>;

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    /// Ascending in the ring's order, no zero coefficients.
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    /// Terms must already be ascending with no zero coefficients.
    pub(crate) fn from_sorted(ring: Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial { ring, terms }
    }

    /// Terms in ascending monomial order.
    pub(crate) fn ascending_terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            if m.arity() != ring.nvars() {
                return Err(Error::ArityMismatch {
                    expected: ring.nvars(),
                    got: m.arity(),
                });
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Indices of the variables occurring with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `c * m * self`; monomial orders are multiplicative so the terms stay sorted.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `self - c * m * other`, as a single merge.
    pub fn sub_mul_term(&self, c: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, k)| (t.mul(m), -(k * c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca + cb;
                        if !s.is_zero() {
                            out.push((ma.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Removes the leading term in place and returns it.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop()
    }

    pub(crate) fn from_descending(ring: &Ring, mut desc: Vec<(Monomial, Rational)>) -> Polynomial {
        desc.reverse();
        Polynomial {
            ring: ring.clone(),
            terms: desc,
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), sign(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate { ca - cb } else { ca + cb };
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a point of the ring's affine space.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_at(&self, point: &RationalPoint) -> Result<Rational> {
        self.eval(point.coords())
    }

    /// Replaces variable `i` by `images[i]`; all images live in `target`.
    pub fn compose(&self, images: &[Polynomial], target: &Ring) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "compose: one image per variable");
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in self.terms.iter().rev() {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                t = &t * &*p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Partial substitution. Unassigned variables are carried over to
    /// `target` by name.
    pub fn substitute(&self, assignment: &Assignment, target: &Ring) -> Result<Polynomial> {
        for name in assignment.keys() {
            if self.ring.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let used = self.support_vars();
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            let image = match assignment.get(name) {
                Some(Value::Rational(c)) => target.constant(c.clone()),
                Some(Value::Poly(p)) => {
                    if p.ring() != target {
                        return Err(Error::RingMismatch(format!(
                            "value for `{name}` is not in the target ring"
                        )));
                    }
                    p.clone()
                }
                None => match target.index_of(name) {
                    Some(j) => target.var_at(j),
                    None if used.contains(&i) => return Err(Error::UnknownVariable(name.clone())),
                    None => target.zero(),
                },
            };
            images.push(image);
        }
        Ok(self.compose(&images, target))
    }

    /// Renames variables: variable `i` becomes variable `var_map[i]` of `target`.
    pub fn reindex(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[var_map[i]] += x;
                }
            }
            (Monomial(e), c.clone())
        });
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(target, acc)
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let used = self.support_vars();
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(j),
                None if used.contains(&i) => return Err(Error::UnknownVariable(name.clone())),
                None => map.push(0),
            }
        }
        Ok(self.reindex(target, &map))
    }

    pub fn with_order(&self, order: &MonomialOrder) -> Polynomial {
        if order == self.ring.order() {
            return self.clone();
        }
        let ring = self.ring.with_order(order.clone()).expect("same variables");
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Polynomial { ring, terms }
    }
}

fn fmt_rational_abs(c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let a = c.abs();
    if a.is_integer() {
        write!(f, "{}", a.numer())
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut first = true;
            if !c.abs().is_one() || m.is_one() {
                fmt_rational_abs(c, f)?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.vars()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands must share a ring")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::new(["x", "y"], MonomialOrder::Lex).unwrap();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        (r, x, y)
    }

    #[test]
    fn add_sub_mul_identities() {
        let (r, x, y) = xy();
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&rat(2)));
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        let p = &(&x * &y) + &r.constant(ratio(3, 2));
        assert_eq!(&p * &r.one(), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, x, _) = xy();
        let other = Ring::grevlex(["x", "y"]).unwrap();
        let x2 = other.var("x").unwrap();
        assert!(matches!(x.checked_add(&x2), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn invalid_rings() {
        assert!(Ring::grevlex(["a", "a"]).is_err());
        assert!(Ring::grevlex([""]).is_err());
        assert!(Ring::new(["a", "b"], MonomialOrder::Block(vec![true])).is_err());
    }

    #[test]
    fn monomial_orders() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        // lex x>y: x^2 y vs x y^2
        assert_eq!(
            compare_monomials(&m(&[2, 1]), &m(&[1, 2]), &MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_monomials(&m(&[1, 0]), &m(&[0, 1]), &MonomialOrder::GrevLex).unwrap(),
            Ordering::Greater
        );
        // block({x},{y}): y^5 < x
        let block = MonomialOrder::Block(vec![true, false]);
        assert_eq!(
            compare_monomials(&m(&[0, 5]), &m(&[1, 0]), &block).unwrap(),
            Ordering::Less
        );
        assert!(compare_monomials(&m(&[1]), &m(&[1, 0]), &MonomialOrder::Lex).is_err());
        // grevlex distinguishes from deglex: x1 x3 < x2^2 in three variables
        assert_eq!(
            MonomialOrder::GrevLex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn substitution_examples() {
        let r = Ring::grevlex(["a11", "a12", "a21", "a22"]).unwrap();
        let v = |s: &str| r.var(s).unwrap();
        let det = &(&v("a11") * &v("a22")) - &(&v("a12") * &v("a21"));
        let pt = RationalPoint::from_ints(&[1, 2, 3, 4]);
        assert_eq!(det.eval_at(&pt).unwrap(), rat(-2));

        let c = Ring::grevlex(["x1", "x2", "x3", "x4"]).unwrap();
        let w = |s: &str| c.var(s).unwrap();
        let cone = &(&w("x1") * &w("x4")) + &(&w("x2") * &w("x3"));
        assert!(cone
            .eval_at(&RationalPoint::from_ints(&[1, 0, 2, 0]))
            .unwrap()
            .is_zero());

        let mut asg = Assignment::new();
        asg.insert("a21".into(), Value::Rational(rat(0)));
        assert!(v("a21").substitute(&asg, &r).unwrap().is_zero());

        let mut bad = Assignment::new();
        bad.insert("zz".into(), Value::Rational(rat(0)));
        assert!(matches!(det.substitute(&bad, &r), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn partial_substitution_into_smaller_ring() {
        let (_, x, y) = xy();
        let small = Ring::grevlex(["y"]).unwrap();
        let p = &(&x * &y) + &x;
        let mut asg = Assignment::new();
        asg.insert("x".into(), Value::Rational(rat(3)));
        let q = p.substitute(&asg, &small).unwrap();
        let ys = small.var("y").unwrap();
        assert_eq!(q, &ys.scale(&rat(3)) + &small.constant(rat(3)));
    }

    #[test]
    fn display_and_leading_terms() {
        let (r, x, y) = xy();
        let p = &(&x.pow(2) * &y).scale(&ratio(3, 2)) - &r.one();
        assert_eq!(p.to_string(), "3/2*x^2*y - 1");
        assert_eq!(p.leading_coefficient().unwrap(), &ratio(3, 2));
        assert_eq!((-&y).to_string(), "-y");
        assert_eq!(r.zero().to_string(), "0");
    }
}
