//! Primitive integer polynomials for fraction-free Buchberger steps.
//!
//! Over the rationals every coefficient operation pays for a gcd. Scaling
//! each polynomial to a primitive integer multiple and reducing by integer
//! combinations `a*p - b*m*g` defers that cost to one content computation
//! per step.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// Ascending terms, nonzero coefficients with gcd 1, positive leading
/// coefficient.
#[derive(Clone, Debug)]
pub(super) struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

/// gcd of the coefficients, stopping early once it reaches 1.
fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl IntPoly {
    pub fn from_poly(f: &Polynomial) -> Self {
        let den = f
            .ascending_terms()
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = f
            .ascending_terms()
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        let mut p = IntPoly { terms };
        p.normalize();
        p
    }

    /// The monic rational polynomial with the same leading monomial.
    pub fn to_monic(&self, ring: &Ring) -> Polynomial {
        let lc = self.leading_coefficient().cloned().unwrap_or_else(BigInt::one);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), Rational::new(c.clone(), lc.clone())))
            .collect();
        Polynomial::from_sorted(ring.clone(), terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|(m, _)| m)
    }

    fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Divides out the content and makes the leading coefficient positive.
    fn normalize(&mut self) {
        let mut g = content(self.terms.iter().map(|(_, c)| c));
        if g.is_zero() {
            return;
        }
        if self.leading_coefficient().is_some_and(|c| c.sign() == Sign::Minus) {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }

    /// `a*self - b*m*other`, merged in `order`.
    fn lin_comb(&self, a: &BigInt, b: &BigInt, m: &Monomial, other: &IntPoly, order: &MonomialOrder) -> IntPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let scale = |c: &BigInt| if a.is_one() { c.clone() } else { c * a };
        let mut x = self.terms.iter().peekable();
        let mut y = other.terms.iter().map(|(t, c)| (t.mul(m), -(c * b))).peekable();
        loop {
            match (x.peek(), y.peek()) {
                (Some(p), Some(q)) => match order.compare(&p.0, &q.0) {
                    Ordering::Less => {
                        let (t, c) = x.next().unwrap();
                        out.push((t.clone(), scale(c)));
                    }
                    Ordering::Greater => out.push(y.next().unwrap()),
                    Ordering::Equal => {
                        let (t, c) = x.next().unwrap();
                        let (_, d) = y.next().unwrap();
                        let s = scale(c) + d;
                        if !s.is_zero() {
                            out.push((t.clone(), s));
                        }
                    }
                },
                (Some(_), None) => {
                    let (t, c) = x.next().unwrap();
                    out.push((t.clone(), scale(c)));
                }
                (None, Some(_)) => out.push(y.next().unwrap()),
                (None, None) => break,
            }
        }
        IntPoly { terms: out }
    }

    /// Primitive part of the S-polynomial.
    pub fn s_poly(f: &IntPoly, g: &IntPoly, order: &MonomialOrder) -> IntPoly {
        let (mf, cf) = f.terms.last().expect("nonzero");
        let (mg, cg) = g.terms.last().expect("nonzero");
        let l = mf.lcm(mg);
        let d = cf.gcd(cg);
        let (a, b) = (cg / &d, cf / &d);
        let uf = l.div(mf).unwrap();
        let fl = IntPoly {
            terms: f.terms.iter().map(|(t, c)| (t.mul(&uf), c * &a)).collect(),
        };
        let mut s = fl.lin_comb(&BigInt::one(), &b, &l.div(mg).unwrap(), g, order);
        s.normalize();
        s
    }

    fn reducer<'a>(m: &Monomial, basis: &'a [IntPoly]) -> Option<&'a IntPoly> {
        basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
    }

    /// One elimination of the term `(m, c)` of `p` by `g`: returns the
    /// multiplier applied to `p` and the new polynomial.
    fn eliminate(p: &IntPoly, m: &Monomial, c: &BigInt, g: &IntPoly, order: &MonomialOrder) -> (BigInt, IntPoly) {
        let (gm, gc) = g.terms.last().unwrap();
        let d = c.gcd(gc);
        let (mut a, mut b) = (gc / &d, c / &d);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        let q = p.lin_comb(&a, &b, &m.div(gm).unwrap(), g, order);
        (a, q)
    }

    /// Reduces the leading term until no leading monomial of `basis`
    /// divides it; the result is a primitive multiple.
    pub fn top_reduce(&self, basis: &[IntPoly], order: &MonomialOrder) -> IntPoly {
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.last() {
            let Some(g) = Self::reducer(m, basis) else {
                break;
            };
            let (m, c) = (m.clone(), c.clone());
            p = Self::eliminate(&p, &m, &c, g, order).1;
            p.normalize();
        }
        p
    }

    /// Every S-polynomial reduces to zero; pairs with coprime leading
    /// monomials are skipped by Buchberger's first criterion.
    pub fn is_groebner_basis(basis: &[IntPoly], order: &MonomialOrder) -> bool {
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                let (mf, mg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                if !mf.is_coprime(mg) && !Self::s_poly(f, g, order).top_reduce(basis, order).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Full reduction: no term of the result is divisible by a leading
    /// monomial of `basis`. The result is a primitive multiple of the
    /// rational normal form.
    pub fn full_reduce(&self, basis: &[IntPoly], order: &MonomialOrder) -> IntPoly {
        let mut p = self.clone();
        // Irreducible terms found so far, descending.
        let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = p.terms.last() {
            match Self::reducer(m, basis) {
                Some(g) => {
                    let (m, c) = (m.clone(), c.clone());
                    let (a, q) = Self::eliminate(&p, &m, &c, g, order);
                    p = q;
                    if !a.is_one() {
                        for (_, r) in &mut rem {
                            *r *= &a;
                        }
                    }
                    let g = content(rem.iter().chain(p.terms.iter()).map(|(_, c)| c));
                    if !g.is_one() && !g.is_zero() {
                        for (_, r) in rem.iter_mut().chain(p.terms.iter_mut()) {
                            *r = &*r / &g;
                        }
                    }
                }
                None => rem.push(p.terms.pop().unwrap()),
            }
        }
        rem.reverse();
        let mut out = IntPoly { terms: rem };
        out.normalize();
        out
    }
}
