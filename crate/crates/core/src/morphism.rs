//! Polynomial maps between affine spaces, section certificates for
//! surjectivity, and projective-pair predicates for maps into ℙ¹.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{ClosedSet, ConstructibleSet, LocallyClosedSet};
use crate::groebner::Ideal;
use crate::polyring::{Polynomial, Rational, RationalPoint, Ring};

/// Coordinate-wise polynomial map `source → target`.
#[derive(Clone, Debug)]
pub struct PolyMap {
    source: Ring,
    target: Ring,
    coords: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source: &Ring, target: &Ring, coords: Vec<Polynomial>) -> Result<Self> {
        if coords.len() != target.nvars() {
            return Err(Error::ArityMismatch {
                expected: target.nvars(),
                got: coords.len(),
            });
        }
        let coords = coords
            .into_iter()
            .map(|c| {
                if c.ring().has_same_vars(source) {
                    Ok(c.with_order(source.order()))
                } else {
                    Err(Error::RingMismatch(format!("coordinate {c} is not on {source:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            coords,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        PolyMap::new(ring, ring, ring.gens()).unwrap()
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn apply(&self, p: &RationalPoint) -> Result<RationalPoint> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.eval(p.coords()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalPoint::from_coords(coords))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PolyMap) -> Result<PolyMap> {
        if !inner.target.has_same_vars(&self.source) {
            return Err(Error::RingMismatch("composition: target/source differ".into()));
        }
        let coords = self
            .coords
            .iter()
            .map(|c| c.compose(&inner.coords, &inner.source))
            .collect();
        PolyMap::new(&inner.source, &self.target, coords)
    }

    /// Pulls a target polynomial back to the source.
    pub fn pullback(&self, g: &Polynomial) -> Result<Polynomial> {
        if !g.ring().has_same_vars(&self.target) {
            return Err(Error::RingMismatch(format!("{g} is not on the target")));
        }
        Ok(g.compose(&self.coords, &self.source))
    }

    /// Ring holding the source variables, one helper variable and the target
    /// variables, under internal names so that the two sides never clash.
    fn graph_ring(&self) -> Result<Ring> {
        let n = self.source.nvars();
        let m = self.target.nvars();
        let names = (0..n)
            .map(|i| format!("_s{i}"))
            .chain(std::iter::once("_r".to_string()))
            .chain((0..m).map(|j| format!("_t{j}")));
        Ring::grevlex(names)
    }

    fn eliminated_names(&self) -> Vec<String> {
        (0..self.source.nvars())
            .map(|i| format!("_s{i}"))
            .chain(std::iter::once("_r".to_string()))
            .collect()
    }

    fn graph_equations(&self, graph: &Ring) -> Vec<Polynomial> {
        let n = self.source.nvars();
        let src_map: Vec<usize> = (0..n).collect();
        self.coords
            .iter()
            .enumerate()
            .map(|(j, c)| &graph.var_at(n + 1 + j) - &c.reindex(graph, &src_map))
            .collect()
    }

    /// Closure of the image of `piece` cut by `extra` target equations,
    /// one Rabinowitsch variable per excluded generator.
    fn piece_image_ideal(&self, piece: &LocallyClosedSet, extra: &Ideal) -> Result<Ideal> {
        let n = self.source.nvars();
        let m = self.target.nvars();
        let graph = self.graph_ring()?;
        let src_map: Vec<usize> = (0..n).collect();
        let tgt_map: Vec<usize> = (0..m).map(|j| n + 1 + j).collect();
        let mut base = self.graph_equations(&graph);
        base.extend(piece.carrier().generators().iter().map(|g| g.reindex(&graph, &src_map)));
        base.extend(extra.generators().iter().map(|g| g.reindex(&graph, &tgt_map)));

        let drop = self.eliminated_names();
        let drop: Vec<&str> = drop.iter().map(String::as_str).collect();
        let excluded = piece.excluded();
        let helpers: Vec<Polynomial> = if excluded.generators().iter().any(Polynomial::is_unit) {
            vec![graph.one()]
        } else {
            excluded.generators().to_vec()
        };
        let r = graph.var_at(n);
        let target_ring = Ring::grevlex((0..m).map(|j| format!("_t{j}")))?;
        let mut acc: Option<Ideal> = None;
        for g in helpers {
            let mut gens = base.clone();
            if !g.is_unit() {
                gens.push(&graph.one() - &(&r * &g.reindex(&graph, &src_map)));
            }
            let elim = Ideal::new(&graph, gens)?.eliminate(&drop)?;
            let elim = elim.embed(&target_ring)?;
            acc = Some(match acc {
                None => elim,
                Some(a) => a.intersect(&elim)?,
            });
        }
        let ideal = acc.unwrap_or_else(|| Ideal::unit(&target_ring));
        let back: Vec<usize> = (0..m).collect();
        Ideal::new(
            &self.target,
            ideal.generators().iter().map(|g| g.reindex(&self.target, &back)),
        )
    }

    fn check_source(&self, s: &ConstructibleSet) -> Result<()> {
        if s.ring() != &self.source {
            return Err(Error::RingMismatch("set is not in the source space".into()));
        }
        Ok(())
    }

    /// Zariski closure of `f(S)`.
    pub fn image_closure(&self, s: &ConstructibleSet) -> Result<ClosedSet> {
        self.check_source(s)?;
        let none = Ideal::zero(&self.target);
        let mut acc: Option<Ideal> = None;
        for piece in s.pieces() {
            let k = self.piece_image_ideal(piece, &none)?;
            acc = Some(match acc {
                None => k,
                Some(a) => a.intersect(&k)?,
            });
        }
        Ok(ClosedSet::new(acc.unwrap_or_else(|| Ideal::unit(&self.target))))
    }

    /// Whether `q ∈ f(S)` over the algebraic closure.
    pub fn point_in_image(&self, s: &ConstructibleSet, q: &RationalPoint) -> Result<bool> {
        self.check_source(s)?;
        if q.arity() != self.target.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.target.nvars(),
                got: q.arity(),
            });
        }
        let eqs = self
            .coords
            .iter()
            .zip(q.coords())
            .map(|(c, v)| c - &self.source.constant(v.clone()));
        let fiber = ConstructibleSet::closed(Ideal::new(&self.source, eqs)?);
        Ok(!s.intersection(&fiber)?.is_empty()?)
    }

    /// Equations on the target satisfied by `f(S) ∩ V(stratum)`, reduced
    /// modulo the stratum ideal.
    pub fn parametric_image_constraints(&self, s: &ConstructibleSet, stratum: &Ideal) -> Result<Ideal> {
        self.check_source(s)?;
        let stratum = stratum.embed(&self.target)?;
        let mut acc: Option<Ideal> = None;
        for piece in s.pieces() {
            let k = self.piece_image_ideal(piece, &stratum)?;
            acc = Some(match acc {
                None => k,
                Some(a) => a.intersect(&k)?,
            });
        }
        let full = acc.unwrap_or_else(|| Ideal::unit(&self.target));
        if stratum.is_zero() {
            return Ok(full);
        }
        full.reduce_modulo(&stratum)
    }
}

/// Polynomial section of a map over a stratum of its target.
///
/// The section's coordinates may use auxiliary variables `w_i` standing for
/// `1 / g_i`; every `g_i` must be invertible on the stratum.
#[derive(Clone, Debug)]
pub struct SectionSpec {
    stratum: ConstructibleSet,
    inverses: Vec<Polynomial>,
    section: PolyMap,
}

impl SectionSpec {
    /// Ring of the section's coordinates: target variables followed by the
    /// inverse variables.
    pub fn param_ring(target: &Ring, inverse_names: &[&str]) -> Result<Ring> {
        target.extend(inverse_names.iter().copied())
    }

    pub fn new(stratum: ConstructibleSet, inverses: Vec<Polynomial>, section: PolyMap) -> Result<Self> {
        let target = stratum.ring();
        if section.source().nvars() != target.nvars() + inverses.len()
            || section.source().vars()[..target.nvars()] != target.vars()[..]
        {
            return Err(Error::MalformedSection(
                "section must be defined on the stratum variables plus one variable per inverse".into(),
            ));
        }
        for g in &inverses {
            if !g.ring().has_same_vars(target) {
                return Err(Error::MalformedSection(format!(
                    "inverted polynomial {g} is not on the stratum space"
                )));
            }
        }
        Ok(SectionSpec {
            stratum,
            inverses,
            section,
        })
    }

    pub fn stratum(&self) -> &ConstructibleSet {
        &self.stratum
    }

    pub fn section(&self) -> &PolyMap {
        &self.section
    }

    /// `(w_i · g_i − 1)` on the parameter ring.
    pub fn witness_constraints(&self) -> Result<Ideal> {
        let p = self.section.source();
        let n = self.stratum.ring().nvars();
        let gens = self
            .inverses
            .iter()
            .enumerate()
            .map(|(i, g)| Ok(&(&p.var_at(n + i) * &g.embed(p)?) - &p.one()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(p, gens)
    }
}

/// Outcome of a section check with the first failing condition, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCheck {
    pub holds: bool,
    pub detail: String,
}

impl SectionCheck {
    fn fail(detail: String) -> Self {
        SectionCheck { holds: false, detail }
    }
}

/// Checks that `sec` is a section of `f` over its stratum landing in `S`.
pub fn check_section(f: &PolyMap, s: &ConstructibleSet, sec: &SectionSpec) -> Result<SectionCheck> {
    if !sec.section.target().has_same_vars(f.source()) {
        return Err(Error::MalformedSection(
            "section does not land in the map's source".into(),
        ));
    }
    if sec.stratum.ring() != f.target() {
        return Err(Error::MalformedSection("stratum is not in the map's target".into()));
    }
    if s.ring() != f.source() {
        return Err(Error::RingMismatch("set is not in the source space".into()));
    }
    let target = f.target();
    for g in &sec.inverses {
        let zeros = ConstructibleSet::closed(Ideal::new(target, [g.embed(target)?])?);
        if !sec.stratum.intersection(&zeros)?.is_empty()? {
            return Ok(SectionCheck::fail(format!("{g} vanishes somewhere on the stratum")));
        }
    }

    let params = sec.section.source();
    let witness = sec.witness_constraints()?;
    let composed = f.after(&sec.section)?;
    for piece in sec.stratum.pieces() {
        let carrier = piece.carrier().embed(params)?.sum(&witness)?;
        let excluded = piece.excluded().embed(params)?;
        let vanishing = carrier.saturate_by_ideal(&excluded)?;
        if vanishing.is_unit() {
            continue;
        }
        for (j, c) in composed.coords().iter().enumerate() {
            let diff = c - &params.var_at(j);
            if !vanishing.radical_member(&diff)? {
                return Ok(SectionCheck::fail(format!(
                    "f∘section differs from the identity in coordinate {} on V{}",
                    target.vars()[j],
                    piece.carrier()
                )));
            }
        }
        let mut landed = false;
        for s_piece in s.pieces() {
            let mut inside = true;
            for g in s_piece.carrier().generators() {
                if !vanishing.radical_member(&sec.section.pullback(g)?)? {
                    inside = false;
                    break;
                }
            }
            if !inside {
                continue;
            }
            let pulled_excl = s_piece
                .excluded()
                .generators()
                .iter()
                .map(|g| sec.section.pullback(g))
                .collect::<Result<Vec<_>>>()?;
            let hits_excluded = LocallyClosedSet::new(carrier.with_generators(pulled_excl)?, excluded.clone())?;
            if hits_excluded.is_empty()? {
                landed = true;
                break;
            }
        }
        if !landed {
            return Ok(SectionCheck::fail(format!(
                "section image over V{} is not contained in the source set",
                piece.carrier()
            )));
        }
    }
    Ok(SectionCheck {
        holds: true,
        detail: "section lands in the set and inverts the map on the stratum".into(),
    })
}

pub fn verify_section(f: &PolyMap, s: &ConstructibleSet, sec: &SectionSpec) -> Result<bool> {
    Ok(check_section(f, s, sec)?.holds)
}

/// A point `(a : b)` of ℙ¹, given by polynomials with a fallback pair used
/// where the first pair vanishes.
#[derive(Clone, Debug)]
pub struct ProjectivePairPredicate {
    first: (Polynomial, Polynomial),
    second: (Polynomial, Polynomial),
}

impl ProjectivePairPredicate {
    pub fn new(first: (Polynomial, Polynomial), second: (Polynomial, Polynomial)) -> Result<Self> {
        let ring = first.0.ring();
        for p in [&first.1, &second.0, &second.1] {
            if p.ring() != ring {
                return Err(Error::RingMismatch("projective pairs must share a ring".into()));
            }
        }
        Ok(ProjectivePairPredicate { first, second })
    }

    pub fn ring(&self) -> &Ring {
        self.first.0.ring()
    }

    pub fn first(&self) -> &(Polynomial, Polynomial) {
        &self.first
    }

    pub fn second(&self) -> &(Polynomial, Polynomial) {
        &self.second
    }

    /// Representative homogeneous coordinates at `p`.
    pub fn value_at(&self, p: &RationalPoint) -> Result<(Rational, Rational)> {
        for (a, b) in [&self.first, &self.second] {
            let u = a.eval(p.coords())?;
            let v = b.eval(p.coords())?;
            if !u.is_zero() || !v.is_zero() {
                return Ok((u, v));
            }
        }
        Err(Error::OutsideDomain(format!("both pairs vanish at {p}")))
    }

    pub fn proj_equal(&self, p: &RationalPoint, q: &RationalPoint) -> Result<bool> {
        let (u1, u2) = self.value_at(p)?;
        let (v1, v2) = self.value_at(q)?;
        Ok((u1 * v2 - u2 * v1).is_zero())
    }

    /// `f1·g2 − f2·g1`, which vanishes exactly where the two pairs agree.
    pub fn cross_product(&self) -> Polynomial {
        &(&self.first.0 * &self.second.1) - &(&self.first.1 * &self.second.0)
    }

    /// Whether the two pairs define the same point wherever both are
    /// defined on `domain`.
    pub fn check_consistent_on_overlap(&self, domain: &ConstructibleSet) -> Result<bool> {
        let cross = self.cross_product();
        for piece in domain.pieces() {
            if !piece.carrier().radical_member(&cross)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A point of the blow-up of the origin in 𝔸²: `((x, y), (u : v))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPoint {
    pub base: (Rational, Rational),
    pub direction: (Rational, Rational),
}

impl BlowupPoint {
    /// `x·v − y·u = 0`.
    pub fn incidence_holds(&self) -> bool {
        let (x, y) = &self.base;
        let (u, v) = &self.direction;
        (x * v - y * u).is_zero()
    }

    pub fn same_as(&self, other: &BlowupPoint) -> bool {
        let (u1, u2) = &self.direction;
        let (v1, v2) = &other.direction;
        self.base == other.base && (u1 * v2 - u2 * v1).is_zero()
    }
}

/// Map into the blow-up of the origin: a polynomial map to 𝔸² together
/// with a projective direction.
#[derive(Clone, Debug)]
pub struct BlowupMap {
    base: PolyMap,
    direction: ProjectivePairPredicate,
    domain: ConstructibleSet,
}

impl BlowupMap {
    pub fn new(base: PolyMap, direction: ProjectivePairPredicate, domain: ConstructibleSet) -> Result<Self> {
        if base.target().nvars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: base.target().nvars(),
            });
        }
        if direction.ring() != base.source() || domain.ring() != base.source() {
            return Err(Error::RingMismatch(
                "blow-up map components must share the source".into(),
            ));
        }
        Ok(BlowupMap {
            base,
            direction,
            domain,
        })
    }

    pub fn base(&self) -> &PolyMap {
        &self.base
    }

    pub fn direction(&self) -> &ProjectivePairPredicate {
        &self.direction
    }

    pub fn domain(&self) -> &ConstructibleSet {
        &self.domain
    }

    pub fn value_at(&self, p: &RationalPoint) -> Result<BlowupPoint> {
        let b = self.base.apply(p)?;
        let c = b.coords();
        Ok(BlowupPoint {
            base: (c[0].clone(), c[1].clone()),
            direction: self.direction.value_at(p)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn cone() -> (Ring, ConstructibleSet) {
        let r = Ring::grevlex(["x1", "x2", "x3", "x4"]).unwrap();
        let w = |s: &str| r.var(s).unwrap();
        let eq = &(&w("x1") * &w("x4")) + &(&w("x2") * &w("x3"));
        let x = ConstructibleSet::locally_closed(
            Ideal::new(&r, [eq]).unwrap(),
            Ideal::of_vars(&r, &["x1", "x2", "x3", "x4"]).unwrap(),
        )
        .unwrap();
        (r, x)
    }

    fn pi_on_cone(r: &Ring) -> (Ring, PolyMap) {
        let t = Ring::grevlex(["b2", "b4"]).unwrap();
        let f = PolyMap::new(r, &t, vec![r.var("x2").unwrap(), r.var("x4").unwrap()]).unwrap();
        (t, f)
    }

    #[test]
    fn identity_image_closure() {
        let r = Ring::grevlex(["x", "y"]).unwrap();
        let line = Ideal::new(&r, [&r.var("x").unwrap() - &r.var("y").unwrap()]).unwrap();
        let img = PolyMap::identity(&r)
            .image_closure(&ConstructibleSet::closed(line.clone()))
            .unwrap();
        assert!(img.ideal().equals(&line).unwrap());
    }

    #[test]
    fn cone_projection_is_dominant_and_hits_origin() {
        let (r, x) = cone();
        let (_, f) = pi_on_cone(&r);
        assert!(f.image_closure(&x).unwrap().is_everything());
        assert!(f.point_in_image(&x, &RationalPoint::from_ints(&[0, 0])).unwrap());
        assert!(f.point_in_image(&x, &RationalPoint::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn projection_constraints_are_trivial() {
        let r = Ring::grevlex(["x", "y"]).unwrap();
        let t = Ring::grevlex(["u"]).unwrap();
        let f = PolyMap::new(&r, &t, vec![r.var("x").unwrap()]).unwrap();
        let c = f
            .parametric_image_constraints(&ConstructibleSet::ambient(&r), &Ideal::zero(&t))
            .unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn sections_of_cone_projection() {
        let (r, x) = cone();
        let (t, f) = pi_on_cone(&r);
        let b = |s: &str| t.var(s).unwrap();
        let generic = ConstructibleSet::open(Ideal::of_vars(&t, &["b2", "b4"]).unwrap()).unwrap();
        let sigma = PolyMap::new(&t, &r, vec![t.zero(), b("b2"), t.zero(), b("b4")]).unwrap();
        let spec = SectionSpec::new(generic.clone(), vec![], sigma).unwrap();
        assert!(verify_section(&f, &x, &spec).unwrap());

        let origin = ConstructibleSet::closed(Ideal::of_vars(&t, &["b2", "b4"]).unwrap());
        let tau = PolyMap::new(&t, &r, vec![t.one(), t.zero(), t.zero(), t.zero()]).unwrap();
        assert!(verify_section(&f, &x, &SectionSpec::new(origin.clone(), vec![], tau).unwrap()).unwrap());

        let bad = PolyMap::new(&t, &r, vec![t.one(), b("b2"), t.one(), b("b4")]).unwrap();
        let check = check_section(&f, &x, &SectionSpec::new(generic, vec![], bad).unwrap()).unwrap();
        assert!(!check.holds);

        // the zero section over the origin lands outside X
        let zero = PolyMap::new(&t, &r, vec![t.zero(), t.zero(), t.zero(), t.zero()]).unwrap();
        assert!(!verify_section(&f, &x, &SectionSpec::new(origin, vec![], zero).unwrap()).unwrap());
    }

    #[test]
    fn section_with_inverse_variable() {
        // (x, z) ↦ x·z on {z ≠ 0}, over {u ≠ 0}
        let r = Ring::grevlex(["x", "z"]).unwrap();
        let t = Ring::grevlex(["u"]).unwrap();
        let f = PolyMap::new(&r, &t, vec![&r.var("x").unwrap() * &r.var("z").unwrap()]).unwrap();
        let s = ConstructibleSet::open(Ideal::of_vars(&r, &["z"]).unwrap()).unwrap();
        let stratum = ConstructibleSet::open(Ideal::of_vars(&t, &["u"]).unwrap()).unwrap();
        let p = SectionSpec::param_ring(&t, &["w"]).unwrap();
        let sec = PolyMap::new(&p, &r, vec![p.one(), p.var("u").unwrap()]).unwrap();
        let spec = SectionSpec::new(stratum.clone(), vec![t.var("u").unwrap()], sec).unwrap();
        assert!(verify_section(&f, &s, &spec).unwrap());
        // (w, u²) with w = 1/u
        let sec = PolyMap::new(&p, &r, vec![p.var("w").unwrap(), p.var("u").unwrap().pow(2)]).unwrap();
        let spec = SectionSpec::new(stratum, vec![t.var("u").unwrap()], sec).unwrap();
        assert!(verify_section(&f, &s, &spec).unwrap());
        // inverting a polynomial that vanishes on the stratum is rejected
        let everywhere = ConstructibleSet::ambient(&t);
        let sec = PolyMap::new(&p, &r, vec![p.var("w").unwrap(), p.var("u").unwrap().pow(2)]).unwrap();
        let spec = SectionSpec::new(everywhere, vec![t.var("u").unwrap()], sec).unwrap();
        assert!(!verify_section(&f, &s, &spec).unwrap());
    }

    #[test]
    fn projective_predicates() {
        let (r, x) = cone();
        let w = |s: &str| r.var(s).unwrap();
        let pred = ProjectivePairPredicate::new((w("x1"), -w("x3")), (w("x2"), w("x4"))).unwrap();
        let p = RationalPoint::from_ints(&[1, 0, 2, 0]);
        assert!(pred.proj_equal(&p, &RationalPoint::from_ints(&[3, 0, 6, 0])).unwrap());
        assert!(!pred.proj_equal(&p, &RationalPoint::from_ints(&[1, 0, 3, 0])).unwrap());
        let g = RationalPoint::from_ints(&[0, 1, 0, 1]);
        assert_eq!(pred.value_at(&g).unwrap(), (rat(1), rat(1)));
        assert!(pred.proj_equal(&g, &g).unwrap());
        assert!(matches!(
            pred.value_at(&RationalPoint::from_ints(&[0, 0, 0, 0])),
            Err(Error::OutsideDomain(_))
        ));

        assert!(pred.check_consistent_on_overlap(&x).unwrap());
        assert!(!pred
            .check_consistent_on_overlap(&ConstructibleSet::ambient(&r))
            .unwrap());
        let same = ProjectivePairPredicate::new((w("x1"), w("x2")), (w("x1"), w("x2"))).unwrap();
        assert!(same
            .check_consistent_on_overlap(&ConstructibleSet::ambient(&r))
            .unwrap());
    }
}
