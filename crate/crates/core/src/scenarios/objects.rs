//! The concrete rings, actions, maps and sets the scenarios are built from.

use crate::action::GroupActionSpec;
use crate::error::Result;
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::{BlowupMap, PolyMap, ProjectivePairPredicate, SectionSpec};
use crate::polyring::{rat, Polynomial, Ring};

pub type Matrix = Vec<Vec<Polynomial>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let ring = a[0][0].ring().clone();
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(ring.zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    (0..a[0].len())
        .map(|j| (0..a.len()).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Integer matrix lifted into `ring`.
pub fn int_matrix(ring: &Ring, rows: &[&[i64]]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&c| ring.constant(rat(c))).collect())
        .collect()
}

fn var_matrix(ring: &Ring, names: &[&[&str]]) -> Matrix {
    names
        .iter()
        .map(|r| r.iter().map(|n| ring.var(n).unwrap()).collect())
        .collect()
}

pub const MAT_VARS: [&str; 4] = ["a11", "a12", "a21", "a22"];
pub const QUOTIENT_VARS: [&str; 3] = ["b21", "b22", "d"];

pub fn mat_ring() -> Ring {
    Ring::grevlex(MAT_VARS).unwrap()
}

pub fn det2(ring: &Ring, names: [&str; 4]) -> Polynomial {
    let v = |s: &str| ring.var(s).unwrap();
    &(&v(names[0]) * &v(names[3])) - &(&v(names[1]) * &v(names[2]))
}

/// One-parameter unipotent group `[[1, l], [0, 1]]` acting on 2×2 matrices
/// by left multiplication.
pub fn unipotent_on_mat() -> GroupActionSpec {
    let space = mat_ring();
    let joint = GroupActionSpec::joint_ring(&space, &["l"]).unwrap();
    let l = joint.var("l").unwrap();
    let g = vec![vec![joint.one(), l], vec![joint.zero(), joint.one()]];
    let a = var_matrix(&joint, &[&["a11", "a12"], &["a21", "a22"]]);
    let ga = mat_mul(&g, &a);
    let action = vec![ga[0][0].clone(), ga[0][1].clone(), ga[1][0].clone(), ga[1][1].clone()];
    GroupActionSpec::new("U", &space, &["l"], vec![], action, vec![rat(0)]).unwrap()
}

pub fn quotient_ring() -> Ring {
    Ring::grevlex(QUOTIENT_VARS).unwrap()
}

/// `π = (a21, a22, det)` from 2×2 matrices to 𝔸³.
pub fn invariant_map() -> PolyMap {
    let r = mat_ring();
    let coords = vec![r.var("a21").unwrap(), r.var("a22").unwrap(), det2(&r, MAT_VARS)];
    PolyMap::new(&r, &quotient_ring(), coords).unwrap()
}

/// The stratum `b21 = b22 = 0` of the quotient space.
pub fn bottom_zero_stratum() -> Ideal {
    Ideal::of_vars(&quotient_ring(), &["b21", "b22"]).unwrap()
}

/// `{b21 = b22 = 0, d ≠ 0}`.
pub fn punctured_line() -> ConstructibleSet {
    let t = quotient_ring();
    ConstructibleSet::locally_closed(bottom_zero_stratum(), Ideal::of_vars(&t, &["d"]).unwrap()).unwrap()
}

/// 𝔸³ minus the locus excluded by `constraint` over the stratum `b21 = b22 = 0`.
pub fn image_set_from_constraint(constraint: &Ideal) -> Result<ConstructibleSet> {
    let t = quotient_ring();
    let excluded = ConstructibleSet::locally_closed(bottom_zero_stratum(), constraint.embed(&t)?)?;
    ConstructibleSet::ambient(&t).difference(&excluded)
}

/// Polynomial sections of `π` over `{b21 ≠ 0}`, `{b22 ≠ 0}` and `V(b21, b22, d)`.
pub fn invariant_map_sections() -> Vec<SectionSpec> {
    let t = quotient_ring();
    let src = mat_ring();
    let p = SectionSpec::param_ring(&t, &["w"]).unwrap();
    let v = |s: &str| p.var(s).unwrap();
    let dw = &v("d") * &v("w");
    let first = SectionSpec::new(
        ConstructibleSet::open(Ideal::of_vars(&t, &["b21"]).unwrap()).unwrap(),
        vec![t.var("b21").unwrap()],
        PolyMap::new(&p, &src, vec![p.zero(), -&dw, v("b21"), v("b22")]).unwrap(),
    )
    .unwrap();
    let second = SectionSpec::new(
        ConstructibleSet::open(Ideal::of_vars(&t, &["b22"]).unwrap()).unwrap(),
        vec![t.var("b22").unwrap()],
        PolyMap::new(&p, &src, vec![dw, p.zero(), v("b21"), v("b22")]).unwrap(),
    )
    .unwrap();
    let b = |s: &str| t.var(s).unwrap();
    let third = SectionSpec::new(
        ConstructibleSet::closed(Ideal::of_vars(&t, &["b21", "b22", "d"]).unwrap()),
        vec![],
        PolyMap::new(&t, &src, vec![t.zero(), t.zero(), b("b21"), b("b22")]).unwrap(),
    )
    .unwrap();
    vec![first, second, third]
}

pub const G_PARAMS: [&str; 5] = ["g12", "g13", "g14", "g23", "g24"];

/// Upper unitriangular 4×4 matrices with `g34 = 0`, as a polynomial matrix.
pub fn unitriangular_group_matrix(ring: &Ring) -> Matrix {
    let v = |s: &str| ring.var(s).unwrap();
    let (o, z) = (ring.one(), ring.zero());
    vec![
        vec![o.clone(), v("g12"), v("g13"), v("g14")],
        vec![z.clone(), o.clone(), v("g23"), v("g24")],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, o],
    ]
}

/// The 4×2 matrix whose stabiliser is the subgroup `U`.
pub fn stabilised_matrix(ring: &Ring) -> Matrix {
    int_matrix(ring, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]])
}

pub const W_TOP: [&str; 4] = ["x11", "x12", "x21", "x22"];
pub const W_BOTTOM: [&str; 4] = ["y11", "y12", "y21", "y22"];

pub fn w_ring() -> Ring {
    Ring::grevlex(W_TOP.iter().chain(W_BOTTOM.iter()).copied()).unwrap()
}

pub fn top_ring() -> Ring {
    Ring::grevlex(W_TOP).unwrap()
}

pub fn bottom_ring() -> Ring {
    Ring::grevlex(W_BOTTOM).unwrap()
}

/// 4×2 matrices with both columns nonzero.
pub fn w_nonzero_columns() -> ConstructibleSet {
    let r = w_ring();
    let col1 = Ideal::of_vars(&r, &["x11", "x21", "y11", "y21"]).unwrap();
    let col2 = Ideal::of_vars(&r, &["x12", "x22", "y12", "y22"]).unwrap();
    let bad = ConstructibleSet::closed(col1)
        .union(&ConstructibleSet::closed(col2))
        .unwrap();
    ConstructibleSet::ambient(&r).difference(&bad).unwrap()
}

/// Top halves with both columns nonzero.
pub fn x0_nonzero_columns() -> ConstructibleSet {
    let r = top_ring();
    let col1 = Ideal::of_vars(&r, &["x11", "x21"]).unwrap();
    let col2 = Ideal::of_vars(&r, &["x12", "x22"]).unwrap();
    let bad = ConstructibleSet::closed(col1)
        .union(&ConstructibleSet::closed(col2))
        .unwrap();
    ConstructibleSet::ambient(&r).difference(&bad).unwrap()
}

/// 4×2 matrices of rank two (the orbit of the stabilised matrix under GL4).
pub fn w_rank_two() -> ConstructibleSet {
    let r = w_ring();
    let rows = [("x11", "x12"), ("x21", "x22"), ("y11", "y12"), ("y21", "y22")];
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            minors.push(det2(&r, [rows[i].0, rows[i].1, rows[j].0, rows[j].1]));
        }
    }
    ConstructibleSet::open(Ideal::new(&r, minors).unwrap()).unwrap()
}

/// Torus `s` scaling the bottom 2×2 block; `u` stands for `s⁻¹`.
pub fn scaling_on_bottom() -> GroupActionSpec {
    let space = bottom_ring();
    let joint = GroupActionSpec::joint_ring(&space, &["s", "u"]).unwrap();
    let s = joint.var("s").unwrap();
    let action = (0..4).map(|i| &s * &joint.var_at(i)).collect();
    let c = &(&s * &joint.var("u").unwrap()) - &joint.one();
    GroupActionSpec::new("S", &space, &["s", "u"], vec![c], action, vec![rat(1), rat(1)]).unwrap()
}

/// `F = U × S` acting on 4×2 matrices by left multiplication with
/// `[[1, a, 0, 0], [0, 1, 0, 0], [0, 0, s, 0], [0, 0, 0, s]]`.
pub fn f_on_w(include_unipotent: bool) -> GroupActionSpec {
    let space = w_ring();
    let params: &[&str] = if include_unipotent {
        &["a", "s", "u"]
    } else {
        &["s", "u"]
    };
    let joint = GroupActionSpec::joint_ring(&space, params).unwrap();
    let s = joint.var("s").unwrap();
    let a = if include_unipotent {
        joint.var("a").unwrap()
    } else {
        joint.zero()
    };
    let (o, z) = (joint.one(), joint.zero());
    let g = vec![
        vec![o.clone(), a, z.clone(), z.clone()],
        vec![z.clone(), o, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), s.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, s.clone()],
    ];
    let m = var_matrix(
        &joint,
        &[&["x11", "x12"], &["x21", "x22"], &["y11", "y12"], &["y21", "y22"]],
    );
    let gm = mat_mul(&g, &m);
    let action = gm.iter().flatten().cloned().collect();
    let c = &(&s * &joint.var("u").unwrap()) - &joint.one();
    let identity = if include_unipotent {
        vec![rat(0), rat(1), rat(1)]
    } else {
        vec![rat(1), rat(1)]
    };
    let name = if include_unipotent { "F" } else { "S" };
    GroupActionSpec::new(name, &space, params, vec![c], action, identity).unwrap()
}

/// Projection erasing the bottom half.
pub fn erase_bottom() -> PolyMap {
    let w = w_ring();
    let coords = W_TOP.iter().map(|n| w.var(n).unwrap()).collect();
    PolyMap::new(&w, &top_ring(), coords).unwrap()
}

/// Same unipotent action as [`unipotent_on_mat`], written on the top-half variables.
pub fn unipotent_on_top() -> GroupActionSpec {
    let space = top_ring();
    let joint = GroupActionSpec::joint_ring(&space, &["a"]).unwrap();
    let a = joint.var("a").unwrap();
    let g = vec![vec![joint.one(), a], vec![joint.zero(), joint.one()]];
    let m = var_matrix(&joint, &[&["x11", "x12"], &["x21", "x22"]]);
    let gm = mat_mul(&g, &m);
    let action = gm.iter().flatten().cloned().collect();
    GroupActionSpec::new("U", &space, &["a"], vec![], action, vec![rat(0)]).unwrap()
}

pub const CONE_VARS: [&str; 4] = ["x1", "x2", "x3", "x4"];

pub fn cone_ring() -> Ring {
    Ring::grevlex(CONE_VARS).unwrap()
}

pub fn cone_equation() -> Polynomial {
    let r = cone_ring();
    let v = |s: &str| r.var(s).unwrap();
    &(&v("x1") * &v("x4")) + &(&v("x2") * &v("x3"))
}

pub fn cone_ideal() -> Ideal {
    Ideal::new(&cone_ring(), [cone_equation()]).unwrap()
}

/// Nonzero isotropic vectors.
pub fn punctured_cone() -> ConstructibleSet {
    let r = cone_ring();
    ConstructibleSet::locally_closed(cone_ideal(), Ideal::of_vars(&r, &CONE_VARS).unwrap()).unwrap()
}

/// Gram matrix of the form with `(e1, e4) = (e2, e3) = 1`.
pub fn isotropic_gram(ring: &Ring) -> Matrix {
    int_matrix(ring, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]])
}

pub fn f_group_matrix(ring: &Ring) -> Matrix {
    let a = ring.var("a").unwrap();
    let (o, z) = (ring.one(), ring.zero());
    vec![
        vec![o.clone(), a.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), -&a],
        vec![z.clone(), z.clone(), z, o],
    ]
}

/// The unipotent subgroup of SO4 acting on 𝔸⁴ ⊃ X by matrix multiplication.
pub fn f_on_cone() -> GroupActionSpec {
    let space = cone_ring();
    let joint = GroupActionSpec::joint_ring(&space, &["a"]).unwrap();
    let g = f_group_matrix(&joint);
    let x: Matrix = CONE_VARS.iter().map(|n| vec![joint.var(n).unwrap()]).collect();
    let gx = mat_mul(&g, &x);
    let action = gx.into_iter().map(|row| row[0].clone()).collect();
    GroupActionSpec::new("F", &space, &["a"], vec![], action, vec![rat(0)]).unwrap()
}

pub fn plane_ring() -> Ring {
    Ring::grevlex(["b2", "b4"]).unwrap()
}

/// `π = (x2, x4)`.
pub fn cone_quotient_map() -> PolyMap {
    let r = cone_ring();
    PolyMap::new(&r, &plane_ring(), vec![r.var("x2").unwrap(), r.var("x4").unwrap()]).unwrap()
}

/// `(x1 : −x3)`, falling back to `(x2 : x4)`.
pub fn rho_direction() -> ProjectivePairPredicate {
    let r = cone_ring();
    let v = |s: &str| r.var(s).unwrap();
    ProjectivePairPredicate::new((v("x1"), -v("x3")), (v("x2"), v("x4"))).unwrap()
}

pub fn rho() -> BlowupMap {
    BlowupMap::new(cone_quotient_map(), rho_direction(), punctured_cone()).unwrap()
}

/// `σ(b2, b4) = (0, b2, 0, b4)` over `𝔸² ∖ {0}`; the mutated form is `(1, b2, 1, b4)`.
pub fn sigma(mutated: bool) -> SectionSpec {
    let t = plane_ring();
    let b = |s: &str| t.var(s).unwrap();
    let filler = if mutated { t.one() } else { t.zero() };
    SectionSpec::new(
        ConstructibleSet::open(Ideal::of_vars(&t, &["b2", "b4"]).unwrap()).unwrap(),
        vec![],
        PolyMap::new(&t, &cone_ring(), vec![filler.clone(), b("b2"), filler, b("b4")]).unwrap(),
    )
    .unwrap()
}

/// `τ = (1, 0, 0, 0)` over the origin.
pub fn tau() -> SectionSpec {
    let t = plane_ring();
    SectionSpec::new(
        ConstructibleSet::closed(Ideal::of_vars(&t, &["b2", "b4"]).unwrap()),
        vec![],
        PolyMap::new(&t, &cone_ring(), vec![t.one(), t.zero(), t.zero(), t.zero()]).unwrap(),
    )
    .unwrap()
}
