//! Constructible subsets of affine space.
//!
//! A set is a finite union of locally closed pieces `V(I) ∖ V(J)`. There is
//! no canonical form: equality is decided semantically by mutual
//! containment, and emptiness over the algebraic closure by radical
//! membership (weak Nullstellensatz) over the rationals.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{RationalPoint, Ring};

/// Zero set `V(I)`.
#[derive(Clone, Debug)]
pub struct ClosedSet {
    ideal: Ideal,
}

impl ClosedSet {
    pub fn new(ideal: Ideal) -> Self {
        ClosedSet { ideal }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    /// True when the set is the whole ambient space, i.e. the ideal is nilpotent.
    /// Over a reduced ring that means the ideal is zero.
    pub fn is_everything(&self) -> bool {
        self.ideal.groebner_basis().is_empty()
    }

    pub fn to_constructible(&self) -> ConstructibleSet {
        ConstructibleSet::closed(self.ideal.clone())
    }
}

/// `V(carrier) ∖ V(excluded)`.
#[derive(Clone, Debug)]
pub struct LocallyClosedSet {
    carrier: Ideal,
    excluded: Ideal,
}

impl LocallyClosedSet {
    pub fn new(carrier: Ideal, excluded: Ideal) -> Result<Self> {
        if carrier.ring() != excluded.ring() {
            return Err(Error::RingMismatch("carrier and excluded ideals differ in ring".into()));
        }
        Ok(LocallyClosedSet { carrier, excluded })
    }

    pub fn carrier(&self) -> &Ideal {
        &self.carrier
    }

    pub fn excluded(&self) -> &Ideal {
        &self.excluded
    }

    /// Empty iff every generator of the excluded ideal lies in `√carrier`.
    pub fn is_empty(&self) -> Result<bool> {
        if self.excluded.is_zero() {
            return Ok(true);
        }
        if self.carrier.is_unit() {
            return Ok(true);
        }
        for g in self.excluded.generators() {
            if !self.carrier.radical_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, p: &RationalPoint) -> Result<bool> {
        if !self.carrier.vanishes_at(p.coords())? {
            return Ok(false);
        }
        for g in self.excluded.generators() {
            if !g.eval(p.coords())?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Ideal of the Zariski closure, `I : J^∞`.
    pub fn closure_ideal(&self) -> Result<Ideal> {
        self.carrier.saturate_by_ideal(&self.excluded)
    }

    fn trivially_empty(&self) -> bool {
        self.excluded.is_zero() || self.carrier.generators().iter().any(|g| g.is_unit())
    }
}

/// Finite union of locally closed pieces in one ambient space.
#[derive(Clone, Debug)]
pub struct ConstructibleSet {
    ring: Ring,
    pieces: Vec<LocallyClosedSet>,
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "V{}", p.carrier)?;
            if !p.excluded.is_unit() {
                write!(f, "∖V{}", p.excluded)?;
            }
        }
        Ok(())
    }
}

impl ConstructibleSet {
    pub fn empty(ring: &Ring) -> Self {
        ConstructibleSet {
            ring: ring.clone(),
            pieces: Vec::new(),
        }
    }

    /// The whole affine space.
    pub fn ambient(ring: &Ring) -> Self {
        Self::closed(Ideal::zero(ring))
    }

    pub fn closed(ideal: Ideal) -> Self {
        let ring = ideal.ring().clone();
        let unit = Ideal::unit(&ring);
        ConstructibleSet {
            ring,
            pieces: vec![LocallyClosedSet {
                carrier: ideal,
                excluded: unit,
            }],
        }
    }

    pub fn locally_closed(carrier: Ideal, excluded: Ideal) -> Result<Self> {
        let ring = carrier.ring().clone();
        Ok(ConstructibleSet {
            ring,
            pieces: vec![LocallyClosedSet::new(carrier, excluded)?],
        })
    }

    /// Complement of `V(excluded)` in the ambient space.
    pub fn open(excluded: Ideal) -> Result<Self> {
        let ring = excluded.ring().clone();
        Self::locally_closed(Ideal::zero(&ring), excluded)
    }

    pub fn from_pieces(ring: &Ring, pieces: Vec<LocallyClosedSet>) -> Result<Self> {
        for p in &pieces {
            if p.carrier.ring() != ring {
                return Err(Error::RingMismatch("piece lives in another ring".into()));
            }
        }
        Ok(ConstructibleSet {
            ring: ring.clone(),
            pieces,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn pieces(&self) -> &[LocallyClosedSet] {
        &self.pieces
    }

    fn check(&self, other: &ConstructibleSet) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "ambient {:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    fn pruned(ring: &Ring, pieces: Vec<LocallyClosedSet>) -> Result<Self> {
        let mut kept = Vec::with_capacity(pieces.len());
        for p in pieces {
            if p.trivially_empty() || p.is_empty()? {
                continue;
            }
            kept.push(p);
        }
        Ok(ConstructibleSet {
            ring: ring.clone(),
            pieces: kept,
        })
    }

    /// Moves the set into a bigger ambient space (cylinder over it).
    pub fn embed(&self, target: &Ring) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| LocallyClosedSet::new(p.carrier.embed(target)?, p.excluded.embed(target)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstructibleSet {
            ring: target.clone(),
            pieces,
        })
    }

    pub fn union(&self, other: &ConstructibleSet) -> Result<Self> {
        self.check(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(ConstructibleSet {
            ring: self.ring.clone(),
            pieces,
        })
    }

    /// `(V(I)∖V(J)) ∩ (V(K)∖V(L)) = V(I+K) ∖ V(J·L)`, piecewise.
    pub fn intersection(&self, other: &ConstructibleSet) -> Result<Self> {
        self.check(other)?;
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push(LocallyClosedSet {
                    carrier: a.carrier.sum(&b.carrier)?,
                    excluded: a.excluded.product(&b.excluded)?,
                });
            }
        }
        Self::pruned(&self.ring, pieces)
    }

    /// `A ∖ (V(K)∖V(L)) = (A ∖ V(K)) ∪ (A ∩ V(L))`, one subtrahend piece at a time.
    pub fn difference(&self, other: &ConstructibleSet) -> Result<Self> {
        self.check(other)?;
        let mut current = self.pieces.clone();
        for b in &other.pieces {
            let mut next = Vec::new();
            for a in &current {
                next.push(LocallyClosedSet {
                    carrier: a.carrier.clone(),
                    excluded: a.excluded.product(&b.carrier)?,
                });
                if !b.excluded.is_unit() {
                    next.push(LocallyClosedSet {
                        carrier: a.carrier.sum(&b.excluded)?,
                        excluded: a.excluded.clone(),
                    });
                }
            }
            current = Self::pruned(&self.ring, next)?.pieces;
        }
        Ok(ConstructibleSet {
            ring: self.ring.clone(),
            pieces: current,
        })
    }

    pub fn complement(&self) -> Result<Self> {
        ConstructibleSet::ambient(&self.ring).difference(self)
    }

    /// Smallest closed superset: the intersection over pieces of `I : J^∞`.
    pub fn closure(&self) -> Result<ClosedSet> {
        let mut acc: Option<Ideal> = None;
        for p in &self.pieces {
            if p.trivially_empty() {
                continue;
            }
            let k = p.closure_ideal()?;
            acc = Some(match acc {
                None => k,
                Some(a) => a.intersect(&k)?,
            });
        }
        Ok(ClosedSet::new(acc.unwrap_or_else(|| Ideal::unit(&self.ring))))
    }

    pub fn is_empty(&self) -> Result<bool> {
        for p in &self.pieces {
            if !p.is_empty()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, p: &RationalPoint) -> Result<bool> {
        if p.arity() != self.ring.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.nvars(),
                got: p.arity(),
            });
        }
        for piece in &self.pieces {
            if piece.contains_point(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `T ⊆ self`.
    pub fn contains(&self, other: &ConstructibleSet) -> Result<bool> {
        self.check(other)?;
        other.difference(self)?.is_empty()
    }

    pub fn set_equals(&self, other: &ConstructibleSet) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Whether `self` is open in `ambient`: the complement `C = ambient ∖ self`
    /// must equal `closure(C) ∩ ambient`.
    pub fn is_open_in(&self, ambient: &ConstructibleSet) -> Result<bool> {
        if !ambient.contains(self)? {
            return Err(Error::Precondition("set is not contained in the ambient set".into()));
        }
        let rest = ambient.difference(self)?;
        let closed_rest = rest.closure()?.to_constructible().intersection(ambient)?;
        rest.contains(&closed_rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, Polynomial};

    fn plane() -> (Ring, Polynomial, Polynomial) {
        let r = Ring::grevlex(["x", "y"]).unwrap();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        (r, x, y)
    }

    fn v(r: &Ring, gens: Vec<Polynomial>) -> ConstructibleSet {
        ConstructibleSet::closed(Ideal::new(r, gens).unwrap())
    }

    #[test]
    fn double_complement() {
        let r = Ring::grevlex(["x"]).unwrap();
        let x = r.var("x").unwrap();
        let line = ConstructibleSet::ambient(&r);
        let vx = v(&r, vec![x]);
        let dd = line.difference(&line.difference(&vx).unwrap()).unwrap();
        assert!(dd.set_equals(&vx).unwrap());
    }

    #[test]
    fn union_of_axes() {
        let (r, x, y) = plane();
        let u = v(&r, vec![x.clone()]).union(&v(&r, vec![y.clone()])).unwrap();
        assert!(u.set_equals(&v(&r, vec![&x * &y])).unwrap());
    }

    #[test]
    fn cone_meets_fixed_plane() {
        let r = Ring::grevlex(["x1", "x2", "x3", "x4"]).unwrap();
        let w = |s: &str| r.var(s).unwrap();
        let cone = &(&w("x1") * &w("x4")) + &(&w("x2") * &w("x3"));
        let origin = Ideal::of_vars(&r, &["x1", "x2", "x3", "x4"]).unwrap();
        let x = ConstructibleSet::locally_closed(Ideal::new(&r, [cone]).unwrap(), origin.clone()).unwrap();
        let plane = ConstructibleSet::closed(Ideal::of_vars(&r, &["x2", "x4"]).unwrap());
        let expected = ConstructibleSet::locally_closed(Ideal::of_vars(&r, &["x2", "x4"]).unwrap(), origin).unwrap();
        assert!(x.intersection(&plane).unwrap().set_equals(&expected).unwrap());
        assert!(!x.is_empty().unwrap());
    }

    #[test]
    fn closure_examples() {
        let (r, x, y) = plane();
        let s =
            ConstructibleSet::locally_closed(Ideal::new(&r, [&x * &y]).unwrap(), Ideal::new(&r, [x.clone()]).unwrap())
                .unwrap();
        let c = s.closure().unwrap();
        assert!(c.ideal().equals(&Ideal::new(&r, [y.clone()]).unwrap()).unwrap());
        let c = v(&r, vec![x.clone()]).closure().unwrap();
        assert!(c.ideal().equals(&Ideal::new(&r, [x.clone()]).unwrap()).unwrap());
        assert!(ConstructibleSet::empty(&r).closure().unwrap().ideal().is_unit());
    }

    #[test]
    fn emptiness() {
        let (r, x, _) = plane();
        assert!(v(&r, vec![r.one()]).is_empty().unwrap());
        let s = ConstructibleSet::locally_closed(
            Ideal::new(&r, [x.clone()]).unwrap(),
            Ideal::new(&r, [x.clone()]).unwrap(),
        )
        .unwrap();
        assert!(s.is_empty().unwrap());
        assert!(!ConstructibleSet::ambient(&r).is_empty().unwrap());
    }

    #[test]
    fn containment_examples() {
        let (r, x, _) = plane();
        assert!(ConstructibleSet::ambient(&r).contains(&v(&r, vec![x.clone()])).unwrap());
        assert!(v(&r, vec![x.clone()]).contains(&v(&r, vec![x.pow(2)])).unwrap());
        let other = Ring::grevlex(["u"]).unwrap();
        assert!(ConstructibleSet::ambient(&r)
            .contains(&ConstructibleSet::ambient(&other))
            .is_err());
    }

    #[test]
    fn openness_examples() {
        let (r, x, _) = plane();
        let a2 = ConstructibleSet::ambient(&r);
        let open = ConstructibleSet::open(Ideal::new(&r, [x.clone()]).unwrap()).unwrap();
        assert!(open.is_open_in(&a2).unwrap());
        assert!(!v(&r, vec![x.clone()]).is_open_in(&a2).unwrap());
        assert!(a2.is_open_in(&v(&r, vec![x.clone()])).is_err());
    }

    #[test]
    fn point_membership() {
        let (r, x, y) = plane();
        let s = ConstructibleSet::locally_closed(
            Ideal::new(&r, [x.clone()]).unwrap(),
            Ideal::new(&r, [y.clone()]).unwrap(),
        )
        .unwrap();
        assert!(s.contains_point(&RationalPoint::from_ints(&[0, 2])).unwrap());
        assert!(!s.contains_point(&RationalPoint::from_ints(&[0, 0])).unwrap());
        assert!(!s.contains_point(&RationalPoint::from_ints(&[1, 2])).unwrap());
        assert!(s.contains_point(&RationalPoint::from_coords(vec![rat(0)])).is_err());
    }
}
