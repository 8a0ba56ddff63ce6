//! A unipotent subgroup of SO4 acting on the nonzero isotropic vectors: the
//! quotient is the blow-up of the origin in 𝔸², not Spec of the invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrices::{pt, separation_with_witnesses, SeparationCase};
use super::objects::*;
use super::{
    outcome, Basis, CheckDescriptor, CheckKind, ConclusionDescriptor, NegativeControl, Runner, ScenarioName,
    ScenarioSpec, Variant,
};
use crate::action::{InvariantMap, SeparationVerdict};
use crate::error::Result;
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::check_section;
use crate::polyring::{ratio, Polynomial, Rational, RationalPoint, Ring};

pub const INCIDENCE_SAMPLES: usize = 50;
pub const INCIDENCE_SEED: u64 = 0x5eed_0303;

const SEC: &str = "§3.3";
const REMARK: &str = "§3.3 Remark";
const PROP: &str = "§3.3 Proposition";

pub(super) fn spec() -> ScenarioSpec {
    use Basis::Verified;
    let d = |id, kind, description, paper_locus| CheckDescriptor {
        id,
        kind,
        basis: Verified,
        description,
        paper_locus,
    };
    ScenarioSpec {
        scenario: ScenarioName::Example3,
        title: "(F, H) double cosets in SO4: the blow-up quotient",
        checks: vec![
            d(
                "cone-nonempty",
                CheckKind::Image,
                "X = nonzero isotropic vectors is nonempty and contains (1,0,2,0) but not 0",
                "§3.3, \"collection of non-zero isotropic vectors\"",
            ),
            d(
                "f-in-so4",
                CheckKind::Reduction,
                "the matrices of F preserve the quadratic form and hence X",
                SEC,
            ),
            d(
                "f-invariants",
                CheckKind::Invariance,
                "x2 and x4 are F-invariant",
                "§3.3, \"freely generated by x_2 and x_4\"",
            ),
            d("pi-image-closure", CheckKind::Image, "π = (x2, x4) is dominant", SEC),
            d(
                "section-sigma",
                CheckKind::Section,
                "σ(b2, b4) = (0, b2, 0, b4) is a section of π over 𝔸² minus the origin",
                "§3.3, \"generic orbits meet the plane {x1 = x3 = 0}\"",
            ),
            d(
                "section-tau",
                CheckKind::Section,
                "τ = (1, 0, 0, 0) is a section of π over the origin",
                "§3.3, \"is surjective\"",
            ),
            d(
                "strata-cover",
                CheckKind::Section,
                "the two section strata cover 𝔸²",
                "§3.3, \"is surjective\"",
            ),
            d(
                "fixed-stratum",
                CheckKind::FixedStratum,
                "points with x2 = x4 = 0 are F-fixed",
                REMARK,
            ),
            d(
                "rho-well-defined",
                CheckKind::ProjectiveEquality,
                "(x1 : −x3) and (x2 : x4) agree on X, since x1x4 + x2x3 ∈ I_X",
                "§3.3, \"(x_2 : x_4) = (x_1 : -x_3)\"",
            ),
            d(
                "rho-invariant",
                CheckKind::Invariance,
                "ρ is constant on F-orbits",
                PROP,
            ),
            d(
                "blowup-incidence",
                CheckKind::ProjectiveEquality,
                "ρ lands in the blow-up: x·v − y·u = 0 at sampled points of X",
                "§3.3, \"blow-up of the origin\"",
            ),
            d(
                "exceptional-fiber",
                CheckKind::Image,
                "every point of the blow-up is hit, including the whole exceptional line",
                PROP,
            ),
            d(
                "phi-not-through-pi",
                CheckKind::ProjectiveEquality,
                "φ takes distinct values on the fiber of π over (0,0)",
                "§3.3, \"not continuous in (0,0)\"",
            ),
            d(
                "separation",
                CheckKind::Separation,
                "ρ separates generic orbits but collapses the fixed points z, z′",
                REMARK,
            ),
        ],
        conclusions: vec![
            ConclusionDescriptor {
                claim: "π : X → Spec C[X]^F = 𝔸² is not the categorical quotient",
                criterion: "the invariant map φ would factor through π by a map that is not continuous at (0,0)",
                premises: &[
                    "f-invariants",
                    "pi-image-closure",
                    "section-sigma",
                    "section-tau",
                    "strata-cover",
                    "rho-well-defined",
                    "rho-invariant",
                    "phi-not-through-pi",
                ],
                paper_locus: SEC,
            },
            ConclusionDescriptor {
                claim: "ρ : X → blow-up of the origin in 𝔸² is the categorical quotient",
                criterion: "universal property argument for the blow-up quotient",
                premises: &[
                    "f-invariants",
                    "rho-well-defined",
                    "rho-invariant",
                    "blowup-incidence",
                    "exceptional-fiber",
                    "section-sigma",
                    "section-tau",
                    "strata-cover",
                ],
                paper_locus: PROP,
            },
            ConclusionDescriptor {
                claim: "ρ separates orbits of points with x2 ≠ 0 or x4 ≠ 0 but fails to separate all closed orbits",
                criterion: "orbits of a unipotent group on an affine variety are closed",
                premises: &["fixed-stratum", "separation"],
                paper_locus: REMARK,
            },
        ],
        negative_control: NegativeControl {
            mutation: "σ′(b2, b4) = (1, b2, 1, b4) instead of σ",
            breaks: "section-sigma",
        },
    }
}

/// Nonzero rational points of the cone, a fifth of them on `x2 = x4 = 0`.
pub fn sample_cone_points(n: usize, seed: u64) -> Vec<RationalPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut r = || ratio(rng.gen_range(-9..=9), 1);
        let coords: Vec<Rational> = if out.len() % 5 == 0 {
            vec![r(), ratio(0, 1), r(), ratio(0, 1)]
        } else {
            let (x2, x3, mut x4) = (r(), r(), r());
            if x4 == ratio(0, 1) {
                x4 = ratio(1, 1);
            }
            let x1 = -(&x2 * &x3) / &x4;
            vec![x1, x2, x3, x4]
        };
        let p = RationalPoint::from_coords(coords);
        if !p.is_origin() {
            out.push(p);
        }
    }
    out
}

pub(super) fn run(runner: &mut Runner, variant: Variant) {
    let x = punctured_cone();
    let f = f_on_cone();
    let pi = cone_quotient_map();
    let plane = plane_ring();
    let rho = rho();

    runner.check("cone-nonempty", || {
        let empty = x.is_empty()?;
        let z = x.contains_point(&pt(&[1, 0, 2, 0]))?;
        let origin = x.contains_point(&pt(&[0, 0, 0, 0]))?;
        outcome(
            !empty && z && !origin,
            format!("X = {x}; empty: {empty}; (1,0,2,0) ∈ X: {z}; 0 ∈ X: {origin}"),
        )
    });

    runner.check("f-in-so4", || {
        let j = f.joint();
        let g = f_group_matrix(j);
        let gram = isotropic_gram(j);
        let orthogonal = mat_mul(&mat_mul(&transpose(&g), &gram), &g) == gram;
        let unitriangular = (0..4).all(|i| g[i][i] == j.one() && (0..i).all(|k| g[i][k].is_zero()));
        let stable = f.preserves(&cone_ideal())?;
        outcome(
            orthogonal && unitriangular && stable,
            format!("gᵀJg = J: {orthogonal}; unitriangular (det 1): {unitriangular}; cone F-stable: {stable}"),
        )
    });

    runner.check("f-invariants", || {
        let r = cone_ring();
        let x2 = f.check_invariant(&r.var("x2")?)?;
        let x4 = f.check_invariant(&r.var("x4")?)?;
        let x1 = f.check_invariant(&r.var("x1")?)?;
        outcome(x2 && x4 && !x1, format!("x2: {x2}; x4: {x4}; (control) x1: {x1}"))
    });

    runner.check("pi-image-closure", || {
        let c = pi.image_closure(&x)?;
        outcome(c.is_everything(), format!("closure of π(X) is V{}", c.ideal()))
    });

    runner.check("section-sigma", || {
        let chk = check_section(&pi, &x, &sigma(variant == Variant::Mutated))?;
        outcome(chk.holds, chk.detail)
    });

    runner.check("section-tau", || {
        let chk = check_section(&pi, &x, &tau())?;
        outcome(chk.holds, chk.detail)
    });

    runner.check("strata-cover", || {
        let cover = sigma(false).stratum().union(tau().stratum())?;
        let all = cover.set_equals(&ConstructibleSet::ambient(&plane))?;
        outcome(all, format!("{cover} = 𝔸²: {all}"))
    });

    runner.check("fixed-stratum", || {
        let r = cone_ring();
        let stratum = ConstructibleSet::closed(Ideal::of_vars(&r, &["x2", "x4"])?);
        let fixed = f.fixed_stratum_check(&stratum)?;
        let on_x = x.intersection(&stratum)?;
        outcome(fixed, format!("V(x2, x4) fixed by F: {fixed}; X ∩ V(x2, x4) = {on_x}"))
    });

    runner.check("rho-well-defined", || {
        let dir = rho_direction();
        let cross = dir.cross_product();
        let member = cone_ideal().member(&cross)?;
        let consistent = dir.check_consistent_on_overlap(&x)?;
        outcome(
            member && consistent,
            format!("cross product {cross} ∈ I_X: {member}; pairs agree on X: {consistent}"),
        )
    });

    runner.check("rho-invariant", || {
        let inv = rho.is_invariant_under(&f)?;
        outcome(inv, format!("ρ is F-invariant on X: {inv}"))
    });

    runner.check("blowup-incidence", || {
        let pts = sample_cone_points(INCIDENCE_SAMPLES, INCIDENCE_SEED);
        let mut bad = None;
        for p in &pts {
            if !x.contains_point(p)? || !rho.value_at(p)?.incidence_holds() {
                bad = Some(p.clone());
                break;
            }
        }
        match bad {
            None => outcome(
                true,
                format!("{} sampled points of X (seed {INCIDENCE_SEED:#x})", pts.len()),
            ),
            Some(p) => outcome(false, format!("incidence fails at {p}")),
        }
    });

    runner.check("exceptional-fiber", exceptional_fiber);

    runner.check("phi-not-through-pi", || {
        let dir = rho_direction();
        let (z, w) = (pt(&[1, 0, 2, 0]), pt(&[1, 0, 3, 0]));
        let same_base = pi.apply(&z)? == pi.apply(&w)?;
        let same_phi = dir.proj_equal(&z, &w)?;
        outcome(
            same_base && !same_phi,
            format!(
                "π{z} = π{w} = {}; φ{z} = {}, φ{w} = {} differ: {}",
                pi.apply(&z)?,
                proj(dir.value_at(&z)?),
                proj(dir.value_at(&w)?),
                !same_phi
            ),
        )
    });

    runner.check("separation", || {
        let pairs: [SeparationCase; 6] = [
            (&[1, 1, -1, 1], &[3, 1, -3, 1], SeparationVerdict::SameOrbit, Some(2)),
            (&[2, 1, -4, 2], &[0, 1, 0, 2], SeparationVerdict::SameOrbit, Some(-2)),
            (&[1, 1, -1, 1], &[0, 2, 0, 3], SeparationVerdict::Separated, None),
            (&[0, 1, 0, 1], &[0, 1, 0, 2], SeparationVerdict::Separated, None),
            (&[1, 0, 2, 0], &[1, 0, 3, 0], SeparationVerdict::Separated, None),
            (&[1, 0, 2, 0], &[3, 0, 6, 0], SeparationVerdict::Collapsed, None),
        ];
        separation_with_witnesses(&f, &rho, &pairs)
    });
}

/// The witness `(u, 0, −v, 0)` lies in X for `(u, v) ≠ 0` and maps to
/// `((0, 0), (u : v))`; over `b ≠ 0`, `ρ(σ(b)) = (b, (b2 : b4))`.
fn exceptional_fiber() -> Result<super::Outcome> {
    let p = Ring::grevlex(["u", "v"])?;
    let (u, v) = (p.var("u")?, p.var("v")?);
    let witness = vec![u.clone(), p.zero(), -&v, p.zero()];
    let on_cone = cone_equation().compose(&witness, &p).is_zero();
    let nonzero = Ideal::new(&p, witness.clone())?.equals(&Ideal::of_vars(&p, &["u", "v"])?)?;
    let base: Vec<Polynomial> = pi_coords().iter().map(|c| c.compose(&witness, &p)).collect();
    let over_origin = base.iter().all(Polynomial::is_zero);
    let dir = rho_direction();
    let (d1, d2) = dir.first();
    let direction_ok = d1.compose(&witness, &p) == u && d2.compose(&witness, &p) == v;

    let t = plane_ring();
    let sig = sigma(false);
    let images = sig.section().coords();
    let (s1, s2) = dir.second();
    let generic_ok = s1.compose(images, &t) == t.var("b2")? && s2.compose(images, &t) == t.var("b4")?;
    outcome(
        on_cone && nonzero && over_origin && direction_ok && generic_ok,
        format!(
            "(u,0,−v,0) on the cone: {on_cone}; nonzero iff (u,v) ≠ 0: {nonzero}; \
             maps to ((0,0),(u : v)): {}; ρ(σ(b)) = (b, (b2 : b4)): {generic_ok}",
            over_origin && direction_ok
        ),
    )
}

fn proj((a, b): (Rational, Rational)) -> String {
    format!("({a} : {b})")
}

fn pi_coords() -> Vec<Polynomial> {
    cone_quotient_map().coords().to_vec()
}
