//! `F = U × S` acting on `W`, the 4×2 matrices with nonzero columns: the
//! torus quotient erases the bottom half, leaving `U` on 2×2 matrices.

use super::matrices::image_not_open;
use super::objects::*;
use super::{
    outcome, Basis, CheckDescriptor, CheckKind, ConclusionDescriptor, NegativeControl, Runner, ScenarioName,
    ScenarioSpec, Variant,
};
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::{check_section, PolyMap, SectionSpec};
use crate::polyring::{Polynomial, RationalPoint};

const PROP: &str = "§3.2 Proposition";
const LEMMA: &str = "Lemma 2.3, applied in §3.2";

const LEMMA_PREMISES: &[&str] = &[
    "w-s-stable",
    "w-open",
    "lemma-base-point",
    "x0-dense",
    "x0-times-y-in-w",
    "pr-dominant",
    "pr-surjective",
    "pr-s-invariant",
];

pub(super) fn spec() -> ScenarioSpec {
    use Basis::Verified;
    let d = |id, kind, basis, description, paper_locus| CheckDescriptor {
        id,
        kind,
        basis,
        description,
        paper_locus,
    };
    ScenarioSpec {
        scenario: ScenarioName::Example2,
        title: "(F, H) double cosets in GL4 with F = U × S",
        checks: vec![
            d("f-splits", CheckKind::Reduction, Verified,
              "F = U × S: the top half moves by U only, the bottom half by S only", "§3.2"),
            d("w-s-stable", CheckKind::LemmaPremise, Verified,
              "W is stable under F", LEMMA),
            d("w-open", CheckKind::LemmaPremise, Basis::ByRepresentation,
              "W is open in X × Y: it is encoded as 𝔸⁸ minus a closed set", LEMMA),
            d("lemma-base-point", CheckKind::LemmaPremise, Verified,
              "0 lies in the closure of every S-orbit on the bottom half Y", LEMMA),
            d("x0-dense", CheckKind::LemmaPremise, Verified,
              "X0 (top halves with nonzero columns) is dense in X", LEMMA),
            d("x0-times-y-in-w", CheckKind::LemmaPremise, Verified,
              "W contains X0 × Y", LEMMA),
            d("pr-dominant", CheckKind::Image, Verified,
              "pr(W) satisfies no polynomial constraint", "§3.2, \"pr(W) = X\""),
            d("pr-surjective", CheckKind::Section, Verified,
              "A ↦ (A, I) is a section of pr landing in W", "§3.2, \"pr(W) = X\""),
            d("pr-s-invariant", CheckKind::Invariance, Verified,
              "the coordinates of pr are S-invariant", "§3.2, \"erases the bottom half\""),
            d("w-rank-two-variant", CheckKind::LemmaPremise, Verified,
              "the lemma premises also hold for the rank-two 4×2 matrices with X0 = GL2", LEMMA),
            d("mat2-quotient-obstruction", CheckKind::Openness, Verified,
              "the image of the U-invariant morphism on Mat2x2 is not open", "§3.2, via §2 Example 2.1"),
        ],
        conclusions: vec![
            ConclusionDescriptor {
                claim: "pr : W → Mat2x2 is the categorical quotient for S : W, also among constructible spaces",
                criterion: "an invariant surjection X × Y ⊇ W → X with a point of Y in every orbit closure is a categorical quotient",
                premises: LEMMA_PREMISES,
                paper_locus: LEMMA,
            },
            ConclusionDescriptor {
                claim: "the double coset variety F\\GL4/H does not exist",
                criterion: "with commuting actions, W//F exists iff (W//S)//U = Mat2x2//U does; the latter is ruled out by the non-open image criterion",
                premises: &[
                    "f-splits", "w-s-stable", "w-open", "lemma-base-point", "x0-dense", "x0-times-y-in-w",
                    "pr-dominant", "pr-surjective", "pr-s-invariant", "mat2-quotient-obstruction",
                ],
                paper_locus: PROP,
            },
            ConclusionDescriptor {
                claim: "F\\GL4/H exists as a constructible space",
                criterion: "constructible quotients of the commuting actions S : W and U : Mat2x2 compose",
                premises: &[
                    "f-splits", "w-s-stable", "w-open", "lemma-base-point", "x0-dense", "x0-times-y-in-w",
                    "pr-dominant", "pr-surjective", "pr-s-invariant",
                ],
                paper_locus: PROP,
            },
        ],
        negative_control: NegativeControl {
            mutation: "base point y0 = (1, 0, 0, 0) instead of 0",
            breaks: "lemma-base-point",
        },
    }
}

/// Section `A ↦ (A, I)` over the whole top half.
fn identity_bottom_section() -> crate::error::Result<SectionSpec> {
    let t = top_ring();
    let mut coords: Vec<Polynomial> = W_TOP.iter().map(|n| t.var(n).unwrap()).collect();
    coords.extend([t.one(), t.zero(), t.zero(), t.one()]);
    SectionSpec::new(
        ConstructibleSet::ambient(&t),
        vec![],
        PolyMap::new(&t, &w_ring(), coords)?,
    )
}

pub(super) fn run(runner: &mut Runner, variant: Variant) {
    let w = w_nonzero_columns();
    let wr = w_ring();
    let pr = erase_bottom();
    let f = f_on_w(true);
    let s = f_on_w(false);

    runner.check("f-splits", || {
        let u = unipotent_on_top();
        let top_ok = (0..4).all(|i| {
            u.action()[i]
                .embed(f.joint())
                .map(|p| p == f.action()[i])
                .unwrap_or(false)
        });
        let sv = f.joint().var("s")?;
        let bottom_ok = (4..8).all(|i| f.action()[i] == &sv * &f.joint().var_at(i));
        outcome(
            top_ok && bottom_ok,
            format!("top half by [[1, a], [0, 1]]: {top_ok}; bottom half scaled by s: {bottom_ok}"),
        )
    });

    runner.check("w-s-stable", || {
        let col1 = Ideal::of_vars(&wr, &["x11", "x21", "y11", "y21"])?;
        let col2 = Ideal::of_vars(&wr, &["x12", "x22", "y12", "y22"])?;
        let stable = f.preserves(&col1)? && f.preserves(&col2)?;
        outcome(stable, format!("both zero-column loci are F-stable: {stable}"))
    });

    runner.check("w-open", || {
        let open = w.pieces().iter().all(|p| p.carrier().is_zero());
        outcome(open, format!("W = {w}; every piece has carrier 𝔸⁸"))
    });

    runner.check("lemma-base-point", || {
        let y0 = match variant {
            Variant::Faithful => RationalPoint::from_ints(&[0, 0, 0, 0]),
            Variant::Mutated => RationalPoint::from_ints(&[1, 0, 0, 0]),
        };
        let yes = scaling_on_bottom().base_in_all_orbit_closures(&y0)?;
        outcome(yes, format!("y0 = {y0} in the closure of every S-orbit on Y: {yes}"))
    });

    runner.check("x0-dense", || {
        let c = x0_nonzero_columns().closure()?;
        outcome(c.is_everything(), format!("closure of X0 is V{}", c.ideal()))
    });

    runner.check("x0-times-y-in-w", || {
        let prod = x0_nonzero_columns().embed(&wr)?;
        let yes = w.contains(&prod)?;
        outcome(yes, format!("contains(W, X0 × Y) = {yes}"))
    });

    runner.check("pr-dominant", || {
        let c = pr.parametric_image_constraints(&w, &Ideal::zero(pr.target()))?;
        outcome(c.is_zero(), format!("constraints on pr(W): {c}"))
    });

    runner.check("pr-surjective", || {
        let chk = check_section(&pr, &w, &identity_bottom_section()?)?;
        outcome(chk.holds, chk.detail)
    });

    runner.check("pr-s-invariant", || {
        let inv = pr
            .coords()
            .iter()
            .map(|c| s.check_invariant(c))
            .collect::<crate::error::Result<Vec<_>>>()?;
        let all = inv.iter().all(|&b| b);
        outcome(all, format!("x11, x12, x21, x22 invariant under S: {all}"))
    });

    runner.check("w-rank-two-variant", || {
        let w2 = w_rank_two();
        let t = top_ring();
        let gl2 = ConstructibleSet::open(Ideal::new(&t, [det2(&t, W_TOP)])?)?;
        let dense = gl2.closure()?.is_everything();
        let contains = w2.contains(&gl2.embed(&wr)?)?;
        let minors = Ideal::new(&wr, w2.pieces()[0].excluded().generators().to_vec())?;
        let stable = f.preserves(&minors)?;
        let chk = check_section(&pr, &w2, &identity_bottom_section()?)?;
        outcome(
            dense && contains && stable && chk.holds,
            format!(
                "GL2 dense: {dense}; contains(W', GL2 × Y): {contains}; W' F-stable: {stable}; section lands in W': {}",
                chk.holds
            ),
        )
    });

    runner.check("mat2-quotient-obstruction", || {
        let (pass, detail) = image_not_open()?;
        outcome(pass, detail)
    });
}
