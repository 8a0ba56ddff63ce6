//! The unipotent group acting on 2×2 matrices, alone and as the reduced form
//! of the (U, U) double cosets in the unitriangular 4×4 group.

use super::objects::*;
use super::{
    outcome, Basis, CheckDescriptor, CheckKind, ConclusionDescriptor, NegativeControl, Runner, ScenarioName,
    ScenarioSpec, Variant,
};
use crate::action::{GroupActionSpec, InvariantMap, SeparationVerdict};
use crate::error::Result;
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::{check_section, PolyMap, SectionSpec};
use crate::polyring::{rat, Polynomial, RationalPoint};

const EX21: &str = "§2 Example 2.1";
const EX22: &str = "§2 Example 2.2";

fn matrix_checks(with_sections_locus: &'static str) -> Vec<CheckDescriptor> {
    use Basis::Verified;
    vec![
        CheckDescriptor {
            id: "u-invariants",
            kind: CheckKind::Invariance,
            basis: Verified,
            description: "a21, a22 and det are invariant under left multiplication by U",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "pi-image-closure",
            kind: CheckKind::Image,
            basis: Verified,
            description: "the closure of π(Mat2x2) is all of 𝔸³",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "punctured-line-constraint",
            kind: CheckKind::Image,
            basis: Verified,
            description: "over b21 = b22 = 0 the image satisfies exactly the constraint d = 0",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "image-sections",
            kind: CheckKind::Section,
            basis: Verified,
            description: "polynomial sections cover 𝔸³ minus the punctured line",
            paper_locus: with_sections_locus,
        },
        CheckDescriptor {
            id: "image-membership",
            kind: CheckKind::Image,
            basis: Verified,
            description: "image membership at sample points agrees with direct fiber computation",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "punctured-line-excluded",
            kind: CheckKind::Image,
            basis: Verified,
            description: "the punctured line b21 = b22 = 0, d ≠ 0 misses the image",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "image-not-open",
            kind: CheckKind::Openness,
            basis: Verified,
            description: "the image of π is not open in 𝔸³",
            paper_locus: EX21,
        },
        CheckDescriptor {
            id: "generic-separation",
            kind: CheckKind::Separation,
            basis: Verified,
            description: "π separates U-orbits of sample points with a21 ≠ 0 or a22 ≠ 0",
            paper_locus: EX21,
        },
    ]
}

pub(super) fn background_spec() -> ScenarioSpec {
    ScenarioSpec {
        scenario: ScenarioName::Background,
        title: "U acting on 2×2 matrices by left multiplication",
        checks: matrix_checks(EX22),
        conclusions: vec![
            ConclusionDescriptor {
                claim: "U : Mat2x2 has no categorical quotient in the category of varieties",
                criterion: "an invariant morphism to Spec of the invariant ring with non-open image rules out a categorical quotient",
                premises: &["u-invariants", "pi-image-closure", "image-not-open"],
                paper_locus: EX21,
            },
            ConclusionDescriptor {
                claim: "π : Mat2x2 → π(Mat2x2) is a constructible quotient",
                criterion: "a unipotent action on a vector space with finitely generated invariants has the image of the invariant morphism as constructible quotient",
                premises: &["u-invariants", "image-sections"],
                paper_locus: EX22,
            },
        ],
        negative_control: NegativeControl {
            mutation: "claimed invariant generators {a21, a22, a11} instead of {a21, a22, det}",
            breaks: "u-invariants",
        },
    }
}

pub(super) fn example1_spec() -> ScenarioSpec {
    let mut checks = vec![
        CheckDescriptor {
            id: "stabilizer",
            kind: CheckKind::Reduction,
            basis: Basis::Verified,
            description: "the stabiliser of M in the unitriangular group is U",
            paper_locus: "§3.1, \"the stabiliser of the matrix\"",
        },
        CheckDescriptor {
            id: "coset-reduction",
            kind: CheckKind::Reduction,
            basis: Basis::Verified,
            description: "G/U ≅ 𝔸⁴ via g ↦ g·M, and U acts on it as on Mat2x2",
            paper_locus: "§3.1, \"becomes the matrix multiplication\"",
        },
    ];
    checks.extend(matrix_checks("§3.1 Proposition"));
    checks.extend([
        CheckDescriptor {
            id: "fixed-stratum",
            kind: CheckKind::FixedStratum,
            basis: Basis::Verified,
            description: "matrices with a21 = a22 = 0 are U-fixed and map to 0 ∈ 𝔸³",
            paper_locus: "§3.1 Remark",
        },
        CheckDescriptor {
            id: "fixed-pair-collapsed",
            kind: CheckKind::Separation,
            basis: Basis::Verified,
            description: "distinct fixed points lie in distinct orbits but share their π value",
            paper_locus: "§3.1 Remark",
        },
    ]);
    ScenarioSpec {
        scenario: ScenarioName::Example1,
        title: "(U, U) double cosets of the unitriangular 4×4 group",
        checks,
        conclusions: vec![
            ConclusionDescriptor {
                claim: "the double coset variety U\\G/U does not exist",
                criterion: "with commuting actions, G//(U×U) exists iff (G/U)//U does; the latter is ruled out by the non-open image criterion",
                premises: &["stabilizer", "coset-reduction", "u-invariants", "pi-image-closure", "image-not-open"],
                paper_locus: "§3.1 Proposition",
            },
            ConclusionDescriptor {
                claim: "π : G → π(G) ⊂ 𝔸³ is a constructible quotient separating generic double cosets",
                criterion: "constructible quotient of a unipotent linear action with finitely generated invariants",
                premises: &["coset-reduction", "u-invariants", "image-sections", "generic-separation"],
                paper_locus: "§3.1 Proposition",
            },
            ConclusionDescriptor {
                claim: "the constructible quotient does not separate all closed double cosets",
                criterion: "orbits of a unipotent group on an affine variety are closed",
                premises: &["coset-reduction", "fixed-stratum", "fixed-pair-collapsed"],
                paper_locus: "§3.1 Remark",
            },
        ],
        negative_control: NegativeControl {
            mutation: "claimed invariant generators {a21, a22, a11} instead of {a21, a22, det}",
            breaks: "u-invariants",
        },
    }
}

/// (p, q, expected verdict, witness parameter for same-orbit pairs)
pub(super) type SeparationCase<'a> = (&'a [i64], &'a [i64], SeparationVerdict, Option<i64>);

pub(super) fn pt(c: &[i64]) -> RationalPoint {
    RationalPoint::from_ints(c)
}

fn claimed_invariants(variant: Variant) -> Vec<(&'static str, Polynomial)> {
    let r = mat_ring();
    let mut out = vec![("a21", r.var("a21").unwrap()), ("a22", r.var("a22").unwrap())];
    match variant {
        Variant::Faithful => out.push(("det", det2(&r, MAT_VARS))),
        Variant::Mutated => out.push(("a11", r.var("a11").unwrap())),
    }
    out
}

/// Shared with the quotient-reduction step of the second example.
pub(super) fn image_not_open() -> Result<(bool, String)> {
    let pi = invariant_map();
    let ambient = ConstructibleSet::ambient(pi.source());
    let constraint = pi.parametric_image_constraints(&ambient, &bottom_zero_stratum())?;
    let image = image_set_from_constraint(&constraint)?;
    let open = image.is_open_in(&ConstructibleSet::ambient(pi.target()))?;
    Ok((
        !open,
        format!("is_open_in(π(Mat2x2), 𝔸³) = {open} for π(Mat2x2) = {image}"),
    ))
}

fn run_matrix_checks(runner: &mut Runner, variant: Variant) {
    let u = unipotent_on_mat();
    let pi = invariant_map();
    let src = ConstructibleSet::ambient(pi.source());
    let target = ConstructibleSet::ambient(pi.target());
    let constraint = pi.parametric_image_constraints(&src, &bottom_zero_stratum());
    let image = constraint.clone().and_then(|c| image_set_from_constraint(&c));

    runner.check("u-invariants", || {
        let mut parts = Vec::new();
        let mut all = true;
        for (name, f) in claimed_invariants(variant) {
            let inv = u.check_invariant(&f)?;
            all &= inv;
            if inv {
                parts.push(format!("{name} invariant"));
            } else {
                parts.push(format!("{name} NOT invariant ({name} ↦ {})", u.translate(&f)?));
            }
        }
        outcome(all, parts.join("; "))
    });

    runner.check("pi-image-closure", || {
        let c = pi.image_closure(&src)?;
        outcome(c.is_everything(), format!("closure of π(Mat2x2) is V{}", c.ideal()))
    });

    runner.check("punctured-line-constraint", || {
        let c = constraint.clone()?;
        let expected = Ideal::of_vars(pi.target(), &["d"])?;
        outcome(
            c.equals(&expected)?,
            format!("constraint over (b21, b22) is {c}; expected (d)"),
        )
    });

    runner.check("image-sections", || {
        let image = image.clone()?;
        let mut parts = Vec::new();
        let mut all = true;
        let mut cover = ConstructibleSet::empty(pi.target());
        for sec in invariant_map_sections() {
            let chk = check_section(&pi, &src, &sec)?;
            all &= chk.holds;
            parts.push(format!("over {}: {}", sec.stratum(), chk.detail));
            cover = cover.union(sec.stratum())?;
        }
        let covers = cover.set_equals(&image)?;
        parts.push(format!("strata cover the image set: {covers}"));
        outcome(all && covers, parts.join("; "))
    });

    runner.check("image-membership", || {
        let image = image.clone()?;
        let cases: [(&[i64], bool); 4] = [
            (&[0, 0, 1], false),
            (&[0, 0, 0], true),
            (&[1, 0, 0], true),
            (&[1, 1, 1], true),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (q, expected) in cases {
            let q = pt(q);
            let by_set = image.contains_point(&q)?;
            let by_fiber = pi.point_in_image(&src, &q)?;
            ok &= by_set == expected && by_fiber == expected;
            parts.push(format!("{q}: set {by_set}, fiber {by_fiber}"));
        }
        // preimage witness for (1,0,0): rows (0,0),(1,0)
        let w = pi.apply(&pt(&[0, 0, 1, 0]))?;
        ok &= w == pt(&[1, 0, 0]);
        outcome(ok, parts.join("; "))
    });

    runner.check("punctured-line-excluded", || {
        let image = image.clone()?;
        let line = punctured_line();
        let contained = image.contains(&line)?;
        let disjoint = image.intersection(&line)?.is_empty()?;
        outcome(
            !contained && disjoint,
            format!("contains(image, {line}) = {contained}; image ∩ line empty = {disjoint}"),
        )
    });

    runner.check("image-not-open", || {
        let image = image.clone()?;
        let open = image.is_open_in(&target)?;
        outcome(!open, format!("is_open_in(π(Mat2x2), 𝔸³) = {open}"))
    });

    runner.check("generic-separation", || {
        let pairs: [SeparationCase; 4] = [
            (&[0, 0, 1, 1], &[3, 3, 1, 1], SeparationVerdict::SameOrbit, Some(3)),
            (&[1, 2, 3, 4], &[7, 10, 3, 4], SeparationVerdict::SameOrbit, Some(2)),
            (&[0, 0, 1, 0], &[0, 0, 0, 1], SeparationVerdict::Separated, None),
            (&[1, 2, 3, 4], &[1, 2, 3, 5], SeparationVerdict::Separated, None),
        ];
        separation_with_witnesses(&u, &pi, &pairs)
    });
}

/// Runs `separation_report` and, for same-orbit pairs, confirms the orbit
/// relation with an actual group element.
pub(super) fn separation_with_witnesses(
    action: &GroupActionSpec,
    map: &dyn InvariantMap,
    pairs: &[SeparationCase],
) -> Result<super::Outcome> {
    let pts: Vec<(RationalPoint, RationalPoint)> = pairs.iter().map(|(p, q, _, _)| (pt(p), pt(q))).collect();
    let verdicts = action.separation_report(map, &pts)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for ((p, q), (&v, (_, _, expected, witness))) in pts.iter().zip(verdicts.iter().zip(pairs)) {
        ok &= v == *expected;
        if let Some(l) = witness {
            ok &= action.apply(&[rat(*l)], p)? == *q;
        }
        parts.push(format!("{p} vs {q}: {v}"));
    }
    outcome(ok, parts.join("; "))
}

pub(super) fn run_background(runner: &mut Runner, variant: Variant) {
    run_matrix_checks(runner, variant);
}

pub(super) fn run_example1(runner: &mut Runner, variant: Variant) {
    runner.check("stabilizer", || {
        let r = crate::polyring::Ring::grevlex(G_PARAMS)?;
        let g = unitriangular_group_matrix(&r);
        let m = stabilised_matrix(&r);
        let gm = mat_mul(&g, &m);
        let eqs: Vec<Polynomial> = gm
            .iter()
            .flatten()
            .zip(m.iter().flatten())
            .map(|(a, b)| a - b)
            .collect();
        let stab = Ideal::new(&r, eqs)?;
        let expected = Ideal::of_vars(&r, &["g13", "g14", "g23", "g24"])?;
        outcome(
            stab.equals(&expected)?,
            format!("g·M = M cuts out {stab}; g12 stays free, so the stabiliser is U"),
        )
    });

    runner.check("coset-reduction", || {
        let r = crate::polyring::Ring::grevlex(G_PARAMS)?;
        let gm = mat_mul(&unitriangular_group_matrix(&r), &stabilised_matrix(&r));
        let bottom_fixed = gm[2..] == stabilised_matrix(&r)[2..];
        // g ↦ top block of g·M, with a section 𝔸⁴ → G
        let top = vec![gm[0][0].clone(), gm[0][1].clone(), gm[1][0].clone(), gm[1][1].clone()];
        let orbit_map = PolyMap::new(&r, &mat_ring(), top)?;
        let m4 = mat_ring();
        let v = |s: &str| m4.var(s).unwrap();
        let sec = SectionSpec::new(
            ConstructibleSet::ambient(&m4),
            vec![],
            PolyMap::new(&m4, &r, vec![m4.zero(), v("a11"), v("a12"), v("a21"), v("a22")])?,
        )?;
        let onto = check_section(&orbit_map, &ConstructibleSet::ambient(&r), &sec)?;

        // u · [[A], [I]] with u = diag-block [[1, l], [0, 1]] ⊕ I
        let u = unipotent_on_mat();
        let j = u.joint();
        let l = j.var("l")?;
        let (o, z) = (j.one(), j.zero());
        let big_u = vec![
            vec![o.clone(), l, z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), z, o],
        ];
        let mut rep = vec![vec![j.var("a11")?, j.var("a12")?], vec![j.var("a21")?, j.var("a22")?]];
        rep.extend(stabilised_matrix(j)[2..].iter().cloned());
        let moved = mat_mul(&big_u, &rep);
        let acts_as_mat2 =
            moved[0..2].iter().flatten().cloned().collect::<Vec<_>>() == u.action() && moved[2..] == rep[2..];
        outcome(
            bottom_fixed && onto.holds && acts_as_mat2,
            format!(
                "g·M has bottom block I: {bottom_fixed}; top block map G → 𝔸⁴ has a section: {}; \
                 U on coset representatives [[A], [I]] is A ↦ [[1, l], [0, 1]]·A: {acts_as_mat2}",
                onto.holds
            ),
        )
    });

    run_matrix_checks(runner, variant);

    runner.check("fixed-stratum", || {
        let u = unipotent_on_mat();
        let pi = invariant_map();
        let stratum = ConstructibleSet::closed(Ideal::of_vars(&mat_ring(), &["a21", "a22"])?);
        let fixed = u.fixed_stratum_check(&stratum)?;
        let img = pi.image_closure(&stratum)?;
        let to_origin = img.ideal().equals(&Ideal::of_vars(pi.target(), &QUOTIENT_VARS)?)?;
        outcome(
            fixed && to_origin,
            format!(
                "V(a21, a22) fixed by U: {fixed}; π(V(a21, a22)) closure is V{}",
                img.ideal()
            ),
        )
    });

    runner.check("fixed-pair-collapsed", || {
        let pairs: [SeparationCase; 2] = [
            (&[1, 0, 0, 0], &[2, 0, 0, 0], SeparationVerdict::Collapsed, None),
            (&[0, 1, 0, 0], &[5, -3, 0, 0], SeparationVerdict::Collapsed, None),
        ];
        separation_with_witnesses(&unipotent_on_mat(), &invariant_map(), &pairs)
    });
}
