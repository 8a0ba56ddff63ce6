//! Algebraic group actions given as parametrized polynomial maps.
//!
//! A group element is a tuple of parameter values satisfying a constraint
//! ideal (for a torus `s·u − 1`, with `u` standing for `s⁻¹`). The action is
//! a list of polynomials in the space variables and the parameters.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ClosedSet, ConstructibleSet};
use crate::groebner::Ideal;
use crate::morphism::{BlowupMap, PolyMap};
use crate::polyring::{Polynomial, Rational, RationalPoint, Ring};

#[derive(Clone, Debug)]
pub struct GroupActionSpec {
    name: String,
    space: Ring,
    params: Vec<String>,
    joint: Ring,
    constraint: Ideal,
    action: Vec<Polynomial>,
    identity: Vec<Rational>,
}

impl GroupActionSpec {
    /// Space variables followed by the parameters; build the constraint and
    /// the action coordinates in this ring.
    pub fn joint_ring(space: &Ring, params: &[&str]) -> Result<Ring> {
        space.extend(params.iter().copied())
    }

    pub fn new(
        name: &str,
        space: &Ring,
        params: &[&str],
        constraint: Vec<Polynomial>,
        action: Vec<Polynomial>,
        identity: Vec<Rational>,
    ) -> Result<Self> {
        let joint = Self::joint_ring(space, params)?;
        let n = space.nvars();
        if action.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: action.len(),
            });
        }
        if identity.len() != params.len() {
            return Err(Error::ArityMismatch {
                expected: params.len(),
                got: identity.len(),
            });
        }
        for c in &constraint {
            if c.support_vars().iter().any(|&i| i < n) {
                return Err(Error::Precondition(format!("constraint {c} involves space variables")));
            }
        }
        let action = action.iter().map(|a| a.embed(&joint)).collect::<Result<Vec<_>>>()?;
        let constraint = Ideal::new(
            &joint,
            constraint.iter().map(|c| c.embed(&joint)).collect::<Result<Vec<_>>>()?,
        )?;
        let spec = GroupActionSpec {
            name: name.to_string(),
            space: space.clone(),
            params: params.iter().map(|s| s.to_string()).collect(),
            joint,
            constraint,
            action,
            identity,
        };
        if !spec.is_group_element(&spec.identity)? {
            return Err(Error::Precondition("identity parameters violate the constraint".into()));
        }
        let at_identity = spec.specialize_params(&spec.identity)?;
        if at_identity != space.gens() {
            return Err(Error::Precondition(
                "the identity parameters do not act trivially".into(),
            ));
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Ring {
        &self.space
    }

    pub fn joint(&self) -> &Ring {
        &self.joint
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn constraint(&self) -> &Ideal {
        &self.constraint
    }

    pub fn action(&self) -> &[Polynomial] {
        &self.action
    }

    pub fn identity(&self) -> &[Rational] {
        &self.identity
    }

    fn joint_point(&self, x: &[Rational], g: &[Rational]) -> Vec<Rational> {
        x.iter().chain(g).cloned().collect()
    }

    pub fn is_group_element(&self, g: &[Rational]) -> Result<bool> {
        if g.len() != self.params.len() {
            return Err(Error::ArityMismatch {
                expected: self.params.len(),
                got: g.len(),
            });
        }
        let pt = self.joint_point(&vec![Rational::zero(); self.space.nvars()], g);
        self.constraint.vanishes_at(&pt)
    }

    /// The action polynomials with fixed parameter values, on the space ring.
    pub fn specialize_params(&self, g: &[Rational]) -> Result<Vec<Polynomial>> {
        let mut images = self.space.gens();
        images.extend(g.iter().map(|c| self.space.constant(c.clone())));
        Ok(self.action.iter().map(|a| a.compose(&images, &self.space)).collect())
    }

    /// `g · x`.
    pub fn apply(&self, g: &[Rational], x: &RationalPoint) -> Result<RationalPoint> {
        if x.arity() != self.space.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.space.nvars(),
                got: x.arity(),
            });
        }
        if !self.is_group_element(g)? {
            return Err(Error::Precondition("parameters violate the group constraint".into()));
        }
        let pt = self.joint_point(x.coords(), g);
        let coords = self.action.iter().map(|a| a.eval(&pt)).collect::<Result<Vec<_>>>()?;
        Ok(RationalPoint::from_coords(coords))
    }

    /// `f(g · x)` as a polynomial in space variables and parameters.
    pub fn translate(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().has_same_vars(&self.space) {
            return Err(Error::RingMismatch(format!("{f} is not on the acted space")));
        }
        Ok(f.compose(&self.action, &self.joint))
    }

    /// The action with the space variables replaced by the coordinates of `p`:
    /// polynomials in the parameters only (on the joint ring).
    fn orbit_map(&self, p: &RationalPoint) -> Result<Vec<Polynomial>> {
        if p.arity() != self.space.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.space.nvars(),
                got: p.arity(),
            });
        }
        let n = self.space.nvars();
        let images: Vec<Polynomial> = (0..self.joint.nvars())
            .map(|i| {
                if i < n {
                    self.joint.constant(p.coords()[i].clone())
                } else {
                    self.joint.var_at(i)
                }
            })
            .collect();
        Ok(self.action.iter().map(|a| a.compose(&images, &self.joint)).collect())
    }

    /// `f(g·x) − f(x)` reduces to zero modulo the constraint ideal.
    pub fn check_invariant(&self, f: &Polynomial) -> Result<bool> {
        let diff = &self.translate(f)? - &f.embed(&self.joint)?;
        self.constraint.member(&diff)
    }

    /// Invariance of `f` on the closed subset `V(domain)` of the space.
    pub fn check_invariant_modulo(&self, f: &Polynomial, domain: &Ideal) -> Result<bool> {
        let diff = &self.translate(f)? - &f.embed(&self.joint)?;
        domain.embed(&self.joint)?.sum(&self.constraint)?.radical_member(&diff)
    }

    /// Whether `V(ideal)` is mapped into itself by every group element.
    pub fn preserves(&self, ideal: &Ideal) -> Result<bool> {
        let base = ideal.embed(&self.joint)?.sum(&self.constraint)?;
        for g in ideal.generators() {
            if !base.radical_member(&self.translate(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Zariski closure of the orbit of `p`: eliminate the parameters from
    /// `(x_i − action_i(g, p)) + constraint`.
    pub fn orbit_closure(&self, p: &RationalPoint) -> Result<ClosedSet> {
        let orbit = self.orbit_map(p)?;
        let mut gens: Vec<Polynomial> = orbit
            .iter()
            .enumerate()
            .map(|(i, o)| &self.joint.var_at(i) - o)
            .collect();
        gens.extend(self.constraint.generators().iter().cloned());
        let params: Vec<&str> = self.params.iter().map(String::as_str).collect();
        let elim = Ideal::new(&self.joint, gens)?.eliminate(&params)?;
        Ok(ClosedSet::new(elim.embed(&self.space)?))
    }

    /// Whether some group parameter (over the algebraic closure) moves `p` to `q`.
    pub fn same_orbit(&self, p: &RationalPoint, q: &RationalPoint) -> Result<bool> {
        if q.arity() != self.space.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.space.nvars(),
                got: q.arity(),
            });
        }
        let orbit = self.orbit_map(p)?;
        let mut gens: Vec<Polynomial> = orbit
            .iter()
            .zip(q.coords())
            .map(|(o, c)| o - &self.joint.constant(c.clone()))
            .collect();
        gens.extend(self.constraint.generators().iter().cloned());
        Ok(!Ideal::new(&self.joint, gens)?.is_unit())
    }

    /// Every point of `stratum` is fixed by the whole group.
    pub fn fixed_stratum_check(&self, stratum: &ConstructibleSet) -> Result<bool> {
        if !stratum.ring().has_same_vars(&self.space) {
            return Err(Error::RingMismatch("stratum is not in the acted space".into()));
        }
        for piece in stratum.pieces() {
            let base = piece.carrier().embed(&self.joint)?.sum(&self.constraint)?;
            for (i, a) in self.action.iter().enumerate() {
                if !base.radical_member(&(a - &self.joint.var_at(i)))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `y0` lies in the closure of every orbit: with a symbolic base
    /// point `y`, eliminate the parameters from `x′ − action(g, y)` and check
    /// that every resulting generator vanishes identically in `y` at `x′ = y0`.
    pub fn base_in_all_orbit_closures(&self, y0: &RationalPoint) -> Result<bool> {
        let n = self.space.nvars();
        if y0.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: y0.arity(),
            });
        }
        let k = self.params.len();
        let base_names: Vec<String> = (0..n).map(|i| format!("_y{i}")).collect();
        let param_names: Vec<String> = (0..k).map(|i| format!("_g{i}")).collect();
        let image_names: Vec<String> = (0..n).map(|i| format!("_x{i}")).collect();
        let big = Ring::grevlex(base_names.iter().chain(&param_names).chain(&image_names).cloned())?;
        // joint var i (space) -> base y_i, joint var n+j (param) -> g_j
        let to_big: Vec<usize> = (0..n + k).collect();
        let mut gens: Vec<Polynomial> = self
            .action
            .iter()
            .enumerate()
            .map(|(i, a)| &big.var_at(n + k + i) - &a.reindex(&big, &to_big))
            .collect();
        gens.extend(self.constraint.generators().iter().map(|c| c.reindex(&big, &to_big)));
        let drop: Vec<&str> = param_names.iter().map(String::as_str).collect();
        let elim = Ideal::new(&big, gens)?.eliminate(&drop)?;

        let small = elim.ring().clone();
        let base_ring = Ring::grevlex(base_names.iter().cloned())?;
        let images: Vec<Polynomial> = (0..small.nvars())
            .map(|i| {
                if i < n {
                    base_ring.var_at(i)
                } else {
                    base_ring.constant(y0.coords()[i - n].clone())
                }
            })
            .collect();
        Ok(elim
            .generators()
            .iter()
            .all(|g| g.compose(&images, &base_ring).is_zero()))
    }

    /// Classifies each pair of points by orbit and by the values of an
    /// invariant map.
    pub fn separation_report(
        &self,
        map: &dyn InvariantMap,
        pairs: &[(RationalPoint, RationalPoint)],
    ) -> Result<Vec<SeparationVerdict>> {
        if !map.is_invariant_under(self)? {
            return Err(Error::NotInvariant(self.name.clone()));
        }
        pairs
            .iter()
            .map(|(p, q)| {
                Ok(if self.same_orbit(p, q)? {
                    SeparationVerdict::SameOrbit
                } else if !map.values_equal(p, q)? {
                    SeparationVerdict::Separated
                } else {
                    SeparationVerdict::Collapsed
                })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparationVerdict {
    Separated,
    SameOrbit,
    Collapsed,
}

impl fmt::Display for SeparationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparationVerdict::Separated => "separated",
            SeparationVerdict::SameOrbit => "same-orbit",
            SeparationVerdict::Collapsed => "collapsed",
        })
    }
}

/// A map that is supposed to be constant on orbits.
pub trait InvariantMap {
    fn is_invariant_under(&self, action: &GroupActionSpec) -> Result<bool>;
    fn values_equal(&self, p: &RationalPoint, q: &RationalPoint) -> Result<bool>;
}

impl InvariantMap for PolyMap {
    fn is_invariant_under(&self, action: &GroupActionSpec) -> Result<bool> {
        for c in self.coords() {
            if !action.check_invariant(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn values_equal(&self, p: &RationalPoint, q: &RationalPoint) -> Result<bool> {
        Ok(self.apply(p)? == self.apply(q)?)
    }
}

impl InvariantMap for BlowupMap {
    /// Base coordinates must be invariant; each direction pair must stay
    /// proportional to its translate on the domain.
    fn is_invariant_under(&self, action: &GroupActionSpec) -> Result<bool> {
        if !self.base().is_invariant_under(action)? {
            return Ok(false);
        }
        let pred = self.direction();
        for (a, b) in [pred.first(), pred.second()] {
            let cross = &(&action.translate(a)? * &b.embed(action.joint())?)
                - &(&action.translate(b)? * &a.embed(action.joint())?);
            for piece in self.domain().pieces() {
                let base = piece.carrier().embed(action.joint())?.sum(action.constraint())?;
                if !base.radical_member(&cross)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn values_equal(&self, p: &RationalPoint, q: &RationalPoint) -> Result<bool> {
        Ok(self.value_at(p)?.same_as(&self.value_at(q)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::ProjectivePairPredicate;
    use crate::polyring::rat;

    fn mat_ring() -> Ring {
        Ring::grevlex(["a11", "a12", "a21", "a22"]).unwrap()
    }

    fn unipotent() -> GroupActionSpec {
        let space = mat_ring();
        let j = GroupActionSpec::joint_ring(&space, &["l"]).unwrap();
        let v = |s: &str| j.var(s).unwrap();
        let action = vec![
            &v("a11") + &(&v("l") * &v("a21")),
            &v("a12") + &(&v("l") * &v("a22")),
            v("a21"),
            v("a22"),
        ];
        GroupActionSpec::new("U", &space, &["l"], vec![], action, vec![rat(0)]).unwrap()
    }

    fn scaling() -> GroupActionSpec {
        let space = Ring::grevlex(["y11", "y12", "y21", "y22"]).unwrap();
        let j = GroupActionSpec::joint_ring(&space, &["s", "u"]).unwrap();
        let s = j.var("s").unwrap();
        let action = (0..4).map(|i| &s * &j.var_at(i)).collect();
        let c = &(&s * &j.var("u").unwrap()) - &j.one();
        GroupActionSpec::new("S", &space, &["s", "u"], vec![c], action, vec![rat(1), rat(1)]).unwrap()
    }

    fn rows(a: [i64; 4]) -> RationalPoint {
        RationalPoint::from_ints(&a)
    }

    #[test]
    fn invalid_specs() {
        let space = mat_ring();
        let j = GroupActionSpec::joint_ring(&space, &["l"]).unwrap();
        let shifted: Vec<Polynomial> = (0..4).map(|i| &j.var_at(i) + &j.var("l").unwrap()).collect();
        // identity parameter 1 does not act trivially
        assert!(GroupActionSpec::new("bad", &space, &["l"], vec![], shifted, vec![rat(1)]).is_err());
        assert!(GroupActionSpec::new("bad", &space, &["l"], vec![], vec![], vec![rat(0)]).is_err());
    }

    #[test]
    fn invariants_of_unipotent_action() {
        let u = unipotent();
        let r = u.space().clone();
        let v = |s: &str| r.var(s).unwrap();
        let det = &(&v("a11") * &v("a22")) - &(&v("a12") * &v("a21"));
        assert!(u.check_invariant(&v("a21")).unwrap());
        assert!(u.check_invariant(&det).unwrap());
        assert!(!u.check_invariant(&v("a11")).unwrap());
    }

    #[test]
    fn orbit_closures() {
        let u = unipotent();
        let r = u.space().clone();
        let c = u.orbit_closure(&rows([0, 0, 1, 0])).unwrap();
        let expected = Ideal::new(
            &r,
            [
                r.var("a12").unwrap(),
                &r.var("a21").unwrap() - &r.one(),
                r.var("a22").unwrap(),
            ],
        )
        .unwrap();
        assert!(c.ideal().equals(&expected).unwrap());

        let c = u.orbit_closure(&rows([1, 0, 0, 0])).unwrap();
        let point = Ideal::new(
            &r,
            [
                &r.var("a11").unwrap() - &r.one(),
                r.var("a12").unwrap(),
                r.var("a21").unwrap(),
                r.var("a22").unwrap(),
            ],
        )
        .unwrap();
        assert!(c.ideal().equals(&point).unwrap());

        let s = scaling();
        let c = s.orbit_closure(&rows([1, 0, 0, 0])).unwrap();
        assert!(c
            .ideal()
            .equals(&Ideal::of_vars(s.space(), &["y12", "y21", "y22"]).unwrap())
            .unwrap());
    }

    #[test]
    fn orbit_membership() {
        let u = unipotent();
        assert!(u.same_orbit(&rows([0, 0, 1, 1]), &rows([3, 3, 1, 1])).unwrap());
        assert!(!u.same_orbit(&rows([1, 0, 0, 0]), &rows([2, 0, 0, 0])).unwrap());
        assert!(u.same_orbit(&rows([5, 7, 2, 3]), &rows([5, 7, 2, 3])).unwrap());
    }

    #[test]
    fn fixed_strata() {
        let u = unipotent();
        let bottom = ConstructibleSet::closed(Ideal::of_vars(u.space(), &["a21", "a22"]).unwrap());
        assert!(u.fixed_stratum_check(&bottom).unwrap());
        assert!(!u.fixed_stratum_check(&ConstructibleSet::ambient(u.space())).unwrap());
    }

    #[test]
    fn base_point_in_all_closures() {
        let s = scaling();
        assert!(s.base_in_all_orbit_closures(&rows([0, 0, 0, 0])).unwrap());
        assert!(!s.base_in_all_orbit_closures(&rows([1, 0, 0, 0])).unwrap());

        let line = Ring::grevlex(["x"]).unwrap();
        let j = GroupActionSpec::joint_ring(&line, &["l"]).unwrap();
        let t = GroupActionSpec::new(
            "T",
            &line,
            &["l"],
            vec![],
            vec![&j.var("x").unwrap() + &j.var("l").unwrap()],
            vec![rat(0)],
        )
        .unwrap();
        assert!(t.base_in_all_orbit_closures(&RationalPoint::from_ints(&[0])).unwrap());
    }

    #[test]
    fn separation_of_sample_pairs() {
        let u = unipotent();
        let r = u.space().clone();
        let t = Ring::grevlex(["b21", "b22", "d"]).unwrap();
        let v = |s: &str| r.var(s).unwrap();
        let det = &(&v("a11") * &v("a22")) - &(&v("a12") * &v("a21"));
        let pi = PolyMap::new(&r, &t, vec![v("a21"), v("a22"), det]).unwrap();
        let verdicts = u
            .separation_report(
                &pi,
                &[
                    (rows([0, 0, 1, 1]), rows([3, 3, 1, 1])),
                    (rows([1, 0, 0, 0]), rows([2, 0, 0, 0])),
                    (rows([0, 0, 1, 0]), rows([0, 0, 0, 1])),
                ],
            )
            .unwrap();
        assert_eq!(
            verdicts,
            vec![
                SeparationVerdict::SameOrbit,
                SeparationVerdict::Collapsed,
                SeparationVerdict::Separated
            ]
        );
        let bad = PolyMap::new(&r, &t, vec![v("a11"), v("a22"), v("a21")]).unwrap();
        assert!(matches!(u.separation_report(&bad, &[]), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn blowup_map_is_invariant_on_the_cone() {
        let space = Ring::grevlex(["x1", "x2", "x3", "x4"]).unwrap();
        let j = GroupActionSpec::joint_ring(&space, &["a"]).unwrap();
        let v = |s: &str| j.var(s).unwrap();
        let f = GroupActionSpec::new(
            "F",
            &space,
            &["a"],
            vec![],
            vec![
                &v("x1") + &(&v("a") * &v("x2")),
                v("x2"),
                &v("x3") - &(&v("a") * &v("x4")),
                v("x4"),
            ],
            vec![rat(0)],
        )
        .unwrap();
        let w = |s: &str| space.var(s).unwrap();
        let cone = &(&w("x1") * &w("x4")) + &(&w("x2") * &w("x3"));
        let x = ConstructibleSet::locally_closed(
            Ideal::new(&space, [cone]).unwrap(),
            Ideal::of_vars(&space, &["x1", "x2", "x3", "x4"]).unwrap(),
        )
        .unwrap();
        let plane = Ring::grevlex(["b2", "b4"]).unwrap();
        let base = PolyMap::new(&space, &plane, vec![w("x2"), w("x4")]).unwrap();
        let dir = ProjectivePairPredicate::new((w("x1"), -w("x3")), (w("x2"), w("x4"))).unwrap();
        let rho = BlowupMap::new(base, dir.clone(), x).unwrap();
        assert!(rho.is_invariant_under(&f).unwrap());
        // off the cone the direction is not invariant
        let loose = BlowupMap::new(rho.base().clone(), dir, ConstructibleSet::ambient(&space)).unwrap();
        assert!(!loose.is_invariant_under(&f).unwrap());
    }
}
