//! Reduced Gröbner bases (Buchberger with Gebauer–Möller pair pruning and
//! the normal selection strategy) and the ideal operations built on them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

mod intpoly;

use intpoly::IntPoly;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring};

/// S-polynomial of two nonzero polynomials in the same ring.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.recip());
    a.sub_mul_term(&cg.recip(), &l.div(mg).unwrap(), g)
}

/// Full reduction of `f` by `basis` in the order of `f`'s ring. No term of
/// the result is divisible by a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.leading_term() {
        match basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
        {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let q = m.div(gm).unwrap();
                let coef = c / gc;
                p = p.sub_mul_term(&coef, &q, g);
            }
            None => rem.push(p.pop_leading().unwrap()),
        }
    }
    Polynomial::from_descending(f.ring(), rem)
}

/// True when every S-polynomial of `basis` reduces to zero against it.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !normal_form(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger {
    order: MonomialOrder,
    polys: Vec<IntPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    /// The active polynomials ascending by leading monomial, rebuilt whenever
    /// the active set changes. Trying small divisors first keeps reductions
    /// short.
    basis: Vec<IntPoly>,
}

impl Buchberger {
    fn lm(&self, k: usize) -> &Monomial {
        self.polys[k].leading_monomial().unwrap()
    }

    /// Gebauer–Möller update for a new element `h` whose leading monomial is
    /// not divisible by any active leading monomial.
    fn update(&mut self, h: IntPoly) {
        let k = self.polys.len();
        let hl = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(false);

        let mut candidates: Vec<(usize, Monomial)> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lm(g).lcm(&hl)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = (!candidates.is_empty()).then(|| candidates.remove(0)) {
            let coprime = self.lm(g1).is_coprime(&hl);
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !self.lm(*g).is_coprime(&hl))
            .map(|(g, lcm)| Pair { i: g, j: k, lcm })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = polys[p.i].leading_monomial().unwrap().lcm(&hl);
            let lj = polys[p.j].leading_monomial().unwrap().lcm(&hl);
            !(hl.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        self.pairs.extend(fresh);

        for g in 0..k {
            if self.active[g] && hl.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[k] = true;
        self.basis = (0..=k)
            .filter(|&g| self.active[g])
            .map(|g| self.polys[g].clone())
            .collect();
        let order = &self.order;
        self.basis
            .sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    }

    /// Normal strategy: smallest lcm first, then index.
    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for (n, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            let ord = self
                .order
                .compare(&p.lcm, &b.lcm)
                .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = n;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced monic Gröbner basis of `gens` in the order of their common ring,
/// sorted ascending by leading monomial. The zero ideal yields an empty basis.
///
/// Buchberger's algorithm with the normal selection strategy, run on
/// primitive integer multiples of the polynomials.
pub fn groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut state = Buchberger {
        order: ring.order().clone(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        basis: Vec::new(),
    };
    for g in gens {
        let h = IntPoly::from_poly(g).full_reduce(&state.basis, &state.order);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![ring.one()];
        }
        state.update(h);
    }
    while let Some(pair) = state.select() {
        let s = IntPoly::s_poly(&state.polys[pair.i], &state.polys[pair.j], &state.order);
        let h = s.full_reduce(&state.basis, &state.order);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![ring.one()];
        }
        state.update(h);
    }

    let minimal = state.basis;
    let mut reduced: Vec<IntPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<IntPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            minimal[i].full_reduce(&others, &state.order)
        })
        .collect();
    let order = state.order;
    reduced.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    assert!(
        IntPoly::is_groebner_basis(&reduced, &order),
        "Buchberger fixed point violated"
    );
    reduced.iter().map(|p| p.to_monic(&ring)).collect()
}

/// Powers `f^2 .. f^k` tried before the Rabinowitsch computation.
const RADICAL_POWER_TRIES: u32 = 4;
/// Stop trying powers once they get this many terms.
const RADICAL_POWER_TERMS: usize = 2000;

type GbCache = Arc<Mutex<Vec<(MonomialOrder, Arc<Vec<Polynomial>>)>>>;

/// Ideal of a polynomial ring given by generators. Gröbner bases are cached
/// per monomial order; clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: GbCache,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    /// Generators may come from any ring with the same variables; they are
    /// re-sorted into `ring`'s order. Zero generators are dropped.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut out = Vec::new();
        for g in gens {
            if !g.ring().has_same_vars(ring) {
                return Err(Error::RingMismatch(format!(
                    "generator {g} does not belong to {ring:?}"
                )));
            }
            if !g.is_zero() {
                out.push(g.with_order(ring.order()));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            cache: GbCache::default(),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, []).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [ring.one()]).unwrap()
    }

    /// Ideal generated by variables, by name.
    pub fn of_vars(ring: &Ring, names: &[&str]) -> Result<Ideal> {
        let gens = names.iter().map(|n| ring.var(n)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced basis in the ring's own order.
    pub fn groebner_basis(&self) -> Arc<Vec<Polynomial>> {
        self.groebner_basis_in(self.ring.order())
    }

    pub fn groebner_basis_in(&self, order: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some((_, gb)) = self.cache.lock().unwrap().iter().find(|(o, _)| o == order) {
            return gb.clone();
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.with_order(order)).collect();
        let gb = Arc::new(groebner_basis(&gens));
        let mut cache = self.cache.lock().unwrap();
        if let Some((_, existing)) = cache.iter().find(|(o, _)| o == order) {
            return existing.clone();
        }
        cache.push((order.clone(), gb.clone()));
        gb
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if !f.ring().has_same_vars(&self.ring) {
            return Err(Error::RingMismatch(format!("{f} is not in {:?}", self.ring)));
        }
        Ok(())
    }

    /// Normal form of `f` modulo this ideal, in the ring's order.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(normal_form(&f.with_order(self.ring.order()), &self.groebner_basis()))
    }

    /// Ideal membership.
    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Radical membership: small powers of `f` first, then the Rabinowitsch
    /// trick `1 ∈ I + (1 - t f)`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() || self.member(f)? {
            return Ok(true);
        }
        let mut power = f.clone();
        for _ in 2..=RADICAL_POWER_TRIES {
            power = &power * f;
            if power.num_terms() > RADICAL_POWER_TERMS {
                break;
            }
            if self.member(&power)? {
                return Ok(true);
            }
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.extend([t.as_str()])?;
        let tv = big.var(&t)?;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<_>>()?;
        gens.push(&big.one() - &(&tv * &f.embed(&big)?));
        Ok(Ideal::new(&big, gens)?.is_unit())
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// `I ∩ k[kept vars]`, living in the ring of the kept variables.
    pub fn eliminate(&self, drop_vars: &[&str]) -> Result<Ideal> {
        let order = self.ring.block_order(drop_vars)?;
        let kept: Vec<&str> = self
            .ring
            .vars()
            .iter()
            .map(String::as_str)
            .filter(|v| !drop_vars.contains(v))
            .collect();
        let small = self.ring.restrict(&kept)?;
        let dropped: Vec<usize> = drop_vars.iter().filter_map(|v| self.ring.index_of(v)).collect();
        let gb = self.groebner_basis_in(&order);
        let gens = gb
            .iter()
            .filter(|g| g.support_vars().iter().all(|i| !dropped.contains(i)))
            .map(|g| g.embed(&small))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&small, gens)
    }

    /// `I : g^∞`.
    pub fn saturate(&self, g: &Polynomial) -> Result<Ideal> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::Precondition("cannot saturate by the zero polynomial".into()));
        }
        if g.is_unit() {
            return Ok(self.clone());
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.extend([t.as_str()])?;
        let tv = big.var(&t)?;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|p| p.embed(&big)).collect::<Result<_>>()?;
        gens.push(&big.one() - &(&tv * &g.embed(&big)?));
        let elim = Ideal::new(&big, gens)?.eliminate(&[t.as_str()])?;
        let back = elim
            .generators()
            .iter()
            .map(|p| p.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, back)
    }

    /// Saturation by a product `g1···gk`, one factor at a time until nothing changes.
    pub fn saturate_by_factors(&self, factors: &[Polynomial]) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let before = cur.groebner_basis();
            for g in factors {
                cur = cur.saturate(g)?;
            }
            if cur.groebner_basis() == before {
                return Ok(cur);
            }
        }
    }

    /// `I : J^∞ = ∩_g I : g^∞` over the generators of `J`.
    pub fn saturate_by_ideal(&self, j: &Ideal) -> Result<Ideal> {
        if j.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if j.generators().iter().any(Polynomial::is_unit) {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal> = None;
        for g in j.generators() {
            let s = self.saturate(&g.embed(&self.ring)?)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            gens.push(g.embed(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * &b.embed(&self.ring)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J = (t·I + (1−t)·J) ∩ k[x]`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_zero() || other.is_unit() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_unit() {
            return Ideal::new(
                &self.ring,
                other
                    .gens
                    .iter()
                    .map(|g| g.embed(&self.ring))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let t = self.ring.fresh_name("t");
        let big = self.ring.extend([t.as_str()])?;
        let tv = big.var(&t)?;
        let one_minus_t = &big.one() - &tv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&tv * &g.embed(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.embed(&big)?);
        }
        let elim = Ideal::new(&big, gens)?.eliminate(&[t.as_str()])?;
        Ideal::new(
            &self.ring,
            elim.generators()
                .iter()
                .map(|p| p.embed(&self.ring))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.member(&g.embed(&self.ring)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by mutual generator membership.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Generators reduced modulo `modulo`, zeros dropped.
    pub fn reduce_modulo(&self, modulo: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::new();
        for g in &self.gens {
            let r = modulo.reduce(g)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Moves the ideal into a ring with (a superset of) the same variable names.
    pub fn embed(&self, target: &Ring) -> Result<Ideal> {
        Ideal::new(
            target,
            self.gens.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>>>()?,
        )
    }

    /// True when every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[crate::polyring::Rational]) -> Result<bool> {
        for g in &self.gens {
            if !num_traits::Zero::is_zero(&g.eval(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
