//! Brute-force cross-checks over small prime fields.
//!
//! Polynomials with rational coefficients are reduced mod `p` (a denominator
//! divisible by `p` is a guard violation) and evaluated at every point of
//! `𝔽ₚⁿ`. The oracle only falsifies: agreement over `𝔽ₚ` proves nothing over ℂ,
//! so it is run only on claims whose proofs do not depend on the field.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::action::GroupActionSpec;
use crate::error::{Error, Result};
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::{PolyMap, ProjectivePairPredicate};
use crate::polyring::{Polynomial, Rational};
use crate::scenarios::objects::*;
use crate::scenarios::{CheckResult, Report, ScenarioName, Status, Variant};

pub const DEFAULT_PRIMES: [u64; 3] = [3, 5, 7];

/// Comma-separated list of primes overriding [`DEFAULT_PRIMES`].
pub const PRIMES_ENV: &str = "DCOSET_PRIMES";

/// Largest point count a single enumeration may visit.
pub const MAX_POINTS: u64 = 1 << 20;

/// Primes from `DCOSET_PRIMES`, or the defaults.
pub fn default_primes() -> Result<Vec<u64>> {
    match std::env::var(PRIMES_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Guard(format!("{PRIMES_ENV}: `{}` is not a number", t.trim())))
            })
            .collect(),
        _ => Ok(DEFAULT_PRIMES.to_vec()),
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpConfig {
    p: u64,
}

impl FpConfig {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Guard(format!("{p} is not prime")));
        }
        if p > 1 << 16 {
            return Err(Error::Guard(format!("{p} is too large for exhaustive enumeration")));
        }
        Ok(FpConfig { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `pⁿ`, refusing spaces beyond [`MAX_POINTS`].
    pub fn space_size(&self, n: usize) -> Result<u64> {
        let mut size: u64 = 1;
        for _ in 0..n {
            size = size.saturating_mul(self.p);
            if size > MAX_POINTS {
                return Err(Error::Guard(format!(
                    "𝔽{}^{n} has more than {MAX_POINTS} points",
                    self.p
                )));
            }
        }
        Ok(size)
    }

    fn reduce(&self, c: &Rational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = c.denom().clone() % &p;
        if den.is_zero() {
            return Err(Error::Guard(format!("{} divides the denominator of {c}", self.p)));
        }
        let num = ((c.numer() % &p) + &p) % &p;
        let num = num.to_u64().expect("residue fits");
        let inv = self.pow(den.to_u64().expect("residue fits"), self.p - 2);
        Ok(num * inv % self.p)
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }

    /// The `index`-th point of `𝔽ₚⁿ` in lexicographic order.
    pub fn point(&self, n: usize, mut index: u64) -> Vec<u64> {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = index % self.p;
            index /= self.p;
        }
        out
    }

    pub fn index(&self, x: &[u64]) -> u64 {
        x.iter().fold(0, |acc, &c| acc * self.p + c)
    }
}

/// A polynomial reduced mod p.
#[derive(Clone, Debug)]
pub struct FpPoly {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
}

impl FpPoly {
    pub fn reduce(f: &Polynomial, cfg: FpConfig) -> Result<Self> {
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            let c = cfg.reduce(c)?;
            if c != 0 {
                terms.push((m.exponents().to_vec(), c));
            }
        }
        Ok(FpPoly { p: cfg.p, terms })
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mut t = *c;
            for (&xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    t = t * xi % p;
                }
            }
            (acc + t) % p
        })
    }
}

fn reduce_all(fs: &[Polynomial], cfg: FpConfig) -> Result<Vec<FpPoly>> {
    fs.iter().map(|f| FpPoly::reduce(f, cfg)).collect()
}

fn eval_all(fs: &[FpPoly], x: &[u64]) -> Vec<u64> {
    fs.iter().map(|f| f.eval(x)).collect()
}

/// Membership in a constructible set, evaluated over 𝔽ₚ.
#[derive(Clone, Debug)]
pub struct FpSet {
    pieces: Vec<(Vec<FpPoly>, Vec<FpPoly>)>,
}

impl FpSet {
    pub fn new(set: &ConstructibleSet, cfg: FpConfig) -> Result<Self> {
        let pieces = set
            .pieces()
            .iter()
            .map(|piece| {
                Ok((
                    reduce_all(piece.carrier().generators(), cfg)?,
                    reduce_all(piece.excluded().generators(), cfg)?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(FpSet { pieces })
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.pieces.iter().any(|(carrier, excluded)| {
            carrier.iter().all(|g| g.eval(x) == 0) && excluded.iter().any(|g| g.eval(x) != 0)
        })
    }
}

/// `f(S(𝔽ₚ))` and the size of the target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCensus {
    pub points: BTreeSet<Vec<u64>>,
    /// Points of `S` found; a fiber search stops at one per image point.
    pub source_points: u64,
    pub target_size: u64,
}

impl ImageCensus {
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }
}

/// Exact image of the points of the source satisfying `pred`.
pub fn enumerate_image(f: &PolyMap, pred: &(dyn Fn(&[u64]) -> bool + Sync), cfg: FpConfig) -> Result<ImageCensus> {
    let n = f.source().nvars();
    let size = cfg.space_size(n)?;
    let target_size = cfg.space_size(f.target().nvars())?;
    let coords = reduce_all(f.coords(), cfg)?;
    let hits: Vec<Vec<u64>> = (0..size)
        .into_par_iter()
        .filter_map(|i| {
            let x = cfg.point(n, i);
            pred(&x).then(|| eval_all(&coords, &x))
        })
        .collect();
    Ok(ImageCensus {
        source_points: hits.len() as u64,
        points: hits.into_iter().collect(),
        target_size,
    })
}

/// Image of `S(𝔽ₚ)` under projection to the first `kept` coordinates, by
/// searching each fiber `{x} × 𝔽ₚ^(n−kept)` until a point of `S` turns up.
pub fn enumerate_projection_image(
    n: usize,
    kept: usize,
    pred: &(dyn Fn(&[u64]) -> bool + Sync),
    cfg: FpConfig,
) -> Result<ImageCensus> {
    let base = cfg.space_size(kept)?;
    let fiber = cfg.space_size(n - kept)?;
    let points: BTreeSet<Vec<u64>> = (0..base)
        .into_par_iter()
        .filter_map(|i| {
            let head = cfg.point(kept, i);
            (0..fiber)
                .any(|j| {
                    let mut x = head.clone();
                    x.extend(cfg.point(n - kept, j));
                    pred(&x)
                })
                .then_some(head)
        })
        .collect();
    Ok(ImageCensus {
        source_points: points.len() as u64,
        points,
        target_size: base,
    })
}

/// Parameter tuples in `𝔽ₚᵏ` satisfying the constraint ideal.
pub fn group_elements(a: &GroupActionSpec, cfg: FpConfig) -> Result<Vec<Vec<u64>>> {
    let n = a.space().nvars();
    let k = a.params().len();
    let constraint = reduce_all(a.constraint().generators(), cfg)?;
    let size = cfg.space_size(k)?;
    let mut out = Vec::new();
    for i in 0..size {
        let g = cfg.point(k, i);
        let mut joint = vec![0; n];
        joint.extend(&g);
        if constraint.iter().all(|c| c.eval(&joint) == 0) {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err(Error::Precondition(format!("{} has no 𝔽{} points", a.name(), cfg.p)));
    }
    Ok(out)
}

/// Orbit partition of the domain's `𝔽ₚ`-points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub domain_points: usize,
    pub group_order: usize,
    /// Orbits as sorted point lists, ordered by their smallest point.
    pub orbits: Vec<Vec<Vec<u64>>>,
}

impl OrbitCensus {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit size → number of orbits of that size.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for o in &self.orbits {
            *h.entry(o.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn fixed_points(&self) -> Vec<Vec<u64>> {
        self.orbits
            .iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0].clone())
            .collect()
    }

    /// Sizes sum to the domain and divide the group order.
    pub fn is_partition(&self) -> bool {
        let total: usize = self.orbits.iter().map(Vec::len).sum();
        total == self.domain_points && self.orbits.iter().all(|o| self.group_order.is_multiple_of(o.len()))
    }
}

pub fn format_histogram(h: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Partitions the domain into orbits; errors if an orbit leaves the domain.
pub fn enumerate_orbits(
    a: &GroupActionSpec,
    domain: &(dyn Fn(&[u64]) -> bool + Sync),
    cfg: FpConfig,
) -> Result<OrbitCensus> {
    let n = a.space().nvars();
    let size = cfg.space_size(n)?;
    let group = group_elements(a, cfg)?;
    let action = reduce_all(a.action(), cfg)?;
    let mut seen = vec![false; size as usize];
    let mut orbits = Vec::new();
    let mut domain_points = 0;
    for i in 0..size {
        let x = cfg.point(n, i);
        if !domain(&x) {
            continue;
        }
        domain_points += 1;
        if seen[i as usize] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in &group {
            let mut joint = x.clone();
            joint.extend(g);
            let y = eval_all(&action, &joint);
            if !domain(&y) {
                return Err(Error::Precondition(format!(
                    "{} moves {} out of the domain",
                    a.name(),
                    fmt_point(&x)
                )));
            }
            seen[cfg.index(&y) as usize] = true;
            orbit.insert(y);
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(OrbitCensus {
        domain_points,
        group_order: group.len(),
        orbits,
    })
}

fn fmt_point(x: &[u64]) -> String {
    let parts: Vec<String> = x.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Builds an oracle report; every check here has a field-independent proof.
struct OracleReport {
    scenario: String,
    checks: Vec<CheckResult>,
}

impl OracleReport {
    fn push(&mut self, id: &str, locus: &str, result: Result<(bool, String)>) {
        let (status, detail) = match result {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(CheckResult {
            id: id.to_string(),
            status,
            detail: format!("enumerated: {detail}"),
            paper_locus: locus.to_string(),
        });
    }

    fn finish(self) -> Report {
        let verdict = if self.checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            scenario: self.scenario,
            checks: self.checks,
            conclusions: Vec::new(),
            verdict,
        }
    }
}

/// Pointwise comparison of a predicted image with an enumerated one.
fn agreement(predicted: &FpSet, census: &ImageCensus, n: usize, cfg: FpConfig) -> (bool, String) {
    let mut agree = 0;
    let mut witness = None;
    for i in 0..census.target_size {
        let q = cfg.point(n, i);
        if predicted.contains(&q) == census.points.contains(&q) {
            agree += 1;
        } else if witness.is_none() {
            witness = Some(q);
        }
    }
    let mut detail = format!(
        "{agree}/{} points agree; image cardinality {}/{}",
        census.target_size,
        census.cardinality(),
        census.target_size
    );
    if let Some(q) = &witness {
        detail.push_str(&format!(
            "; mismatch at {}: predicted {}, enumerated {}",
            fmt_point(q),
            predicted.contains(q),
            census.points.contains(q)
        ));
    }
    (witness.is_none(), detail)
}

fn census_detail(c: &OrbitCensus) -> String {
    format!(
        "{} points, {} orbits, sizes {}; group order {}; partition: {}",
        c.domain_points,
        c.orbit_count(),
        format_histogram(&c.histogram()),
        c.group_order,
        c.is_partition()
    )
}

/// Fixed points of the census coincide with the points of `stratum` in the domain.
fn fixed_match(c: &OrbitCensus, stratum: &FpSet) -> (bool, String) {
    let fixed: BTreeSet<Vec<u64>> = c.fixed_points().into_iter().collect();
    let on_stratum: BTreeSet<Vec<u64>> = c
        .orbits
        .iter()
        .flatten()
        .filter(|x| stratum.contains(x))
        .cloned()
        .collect();
    let ok = fixed == on_stratum;
    let mut detail = format!("{} fixed points, {} stratum points", fixed.len(), on_stratum.len());
    if let Some(x) = fixed.symmetric_difference(&on_stratum).next() {
        detail.push_str(&format!("; differ at {}", fmt_point(x)));
    }
    (ok, detail)
}

/// Projective class of a pair mod p, normalized so its first nonzero entry is 1.
fn normalize(pair: (u64, u64), cfg: FpConfig) -> (u64, u64) {
    let p = cfg.p;
    let lead = if pair.0 != 0 { pair.0 } else { pair.1 };
    let inv = cfg.pow(lead, p - 2);
    (pair.0 * inv % p, pair.1 * inv % p)
}

struct FpPair {
    first: (FpPoly, FpPoly),
    second: (FpPoly, FpPoly),
}

impl FpPair {
    fn new(pred: &ProjectivePairPredicate, cfg: FpConfig) -> Result<Self> {
        let r = |f: &Polynomial| FpPoly::reduce(f, cfg);
        Ok(FpPair {
            first: (r(&pred.first().0)?, r(&pred.first().1)?),
            second: (r(&pred.second().0)?, r(&pred.second().1)?),
        })
    }

    fn value(&self, x: &[u64], cfg: FpConfig) -> Option<(u64, u64)> {
        for (a, b) in [&self.first, &self.second] {
            let v = (a.eval(x), b.eval(x));
            if v != (0, 0) {
                return Some(normalize(v, cfg));
            }
        }
        None
    }
}

/// Runs the scenario's finite-field shadows at one prime.
pub fn cross_check(name: ScenarioName, variant: Variant, cfg: FpConfig) -> Result<Report> {
    let mut rep = OracleReport {
        scenario: format!("{name} over F{}", cfg.p),
        checks: Vec::new(),
    };
    match name {
        ScenarioName::Background | ScenarioName::Example1 => matrices(&mut rep, variant, cfg)?,
        ScenarioName::Example2 => example2(&mut rep, variant, cfg)?,
        ScenarioName::Example3 => example3(&mut rep, variant, cfg)?,
    }
    Ok(rep.finish())
}

fn matrices(rep: &mut OracleReport, variant: Variant, cfg: FpConfig) -> Result<()> {
    let pi = invariant_map();
    let src = ConstructibleSet::ambient(pi.source());
    let predicted = match variant {
        Variant::Faithful => {
            let c = pi.parametric_image_constraints(&src, &bottom_zero_stratum())?;
            image_set_from_constraint(&c)?
        }
        Variant::Mutated => image_set_from_constraint(&Ideal::zero(pi.target()))?,
    };
    let predicted = FpSet::new(&predicted, cfg)?;
    rep.push(
        "image-agreement",
        "§2 Example 2.1",
        enumerate_image(&pi, &|_| true, cfg).map(|c| agreement(&predicted, &c, 3, cfg)),
    );

    let u = unipotent_on_mat();
    let census = enumerate_orbits(&u, &|_| true, cfg);
    rep.push(
        "orbit-census",
        "§3.1",
        census
            .as_ref()
            .map(|c| (c.is_partition(), census_detail(c)))
            .map_err(Clone::clone),
    );
    let stratum = FpSet::new(
        &ConstructibleSet::closed(Ideal::of_vars(&mat_ring(), &["a21", "a22"])?),
        cfg,
    )?;
    rep.push(
        "fixed-points-match-stratum",
        "§3.1 Remark",
        census.as_ref().map(|c| fixed_match(c, &stratum)).map_err(Clone::clone),
    );
    let coords = reduce_all(pi.coords(), cfg)?;
    rep.push(
        "separation-shadow",
        "§2 Example 2.1",
        census.as_ref().map_err(Clone::clone).map(|c| {
            let moving: Vec<&Vec<Vec<u64>>> = c.orbits.iter().filter(|o| o.len() > 1).collect();
            let values: BTreeSet<Vec<u64>> = moving.iter().map(|o| eval_all(&coords, &o[0])).collect();
            let fixed_to_zero = c.fixed_points().iter().all(|x| eval_all(&coords, x) == vec![0, 0, 0]);
            (
                values.len() == moving.len() && fixed_to_zero,
                format!(
                    "{} non-fixed orbits have {} distinct π values; all fixed points map to 0: {fixed_to_zero}",
                    moving.len(),
                    values.len()
                ),
            )
        }),
    );
    Ok(())
}

fn example2(rep: &mut OracleReport, variant: Variant, cfg: FpConfig) -> Result<()> {
    let w = FpSet::new(&w_nonzero_columns(), cfg)?;
    rep.push(
        "pr-image-agreement",
        "§3.2, \"pr(W) = X\"",
        enumerate_projection_image(8, 4, &|x| w.contains(x), cfg).map(|c| {
            let all = FpSet::new(&ConstructibleSet::ambient(&top_ring()), cfg).expect("integral");
            agreement(&all, &c, 4, cfg)
        }),
    );
    let s = scaling_on_bottom();
    let census = enumerate_orbits(&s, &|_| true, cfg);
    rep.push(
        "s-orbit-census",
        "Lemma 2.3, applied in §3.2",
        census
            .as_ref()
            .map(|c| (c.is_partition(), census_detail(c)))
            .map_err(Clone::clone),
    );
    // a point in every orbit closure equals every fixed point
    let y0: Vec<u64> = match variant {
        Variant::Faithful => vec![0, 0, 0, 0],
        Variant::Mutated => vec![1, 0, 0, 0],
    };
    rep.push(
        "base-point-shadow",
        "Lemma 2.3, applied in §3.2",
        census.as_ref().map_err(Clone::clone).map(|c| {
            let fixed = c.fixed_points();
            (
                fixed == vec![y0.clone()],
                format!(
                    "S-fixed points [{}]; base point {}",
                    fixed.iter().map(|x| fmt_point(x)).collect::<Vec<_>>().join(", "),
                    fmt_point(&y0)
                ),
            )
        }),
    );
    Ok(())
}

fn example3(rep: &mut OracleReport, variant: Variant, cfg: FpConfig) -> Result<()> {
    let x = FpSet::new(&punctured_cone(), cfg)?;
    let pi = cone_quotient_map();
    let plane = FpSet::new(&ConstructibleSet::ambient(&plane_ring()), cfg)?;
    rep.push(
        "pi-image-agreement",
        "§3.3, \"is surjective\"",
        enumerate_image(&pi, &|p| x.contains(p), cfg).map(|c| agreement(&plane, &c, 2, cfg)),
    );

    let sections = [sigma(variant == Variant::Mutated), tau()];
    let reduced: Vec<(FpSet, Vec<FpPoly>)> = sections
        .iter()
        .map(|s| Ok((FpSet::new(s.stratum(), cfg)?, reduce_all(s.section().coords(), cfg)?)))
        .collect::<Result<_>>()?;
    let pi_coords = reduce_all(pi.coords(), cfg)?;
    let mut bad = None;
    let size = cfg.space_size(2)?;
    for i in 0..size {
        let q = cfg.point(2, i);
        let ok = reduced.iter().filter(|(st, _)| st.contains(&q)).all(|(_, sec)| {
            let p = eval_all(sec, &q);
            x.contains(&p) && eval_all(&pi_coords, &p) == q
        });
        if !ok && bad.is_none() {
            bad = Some(q);
        }
    }
    rep.push(
        "sections-mod-p",
        "§3.3, \"generic orbits meet the plane {x1 = x3 = 0}\"",
        Ok(match bad {
            None => (true, format!("σ and τ land in X and invert π at all {size} points")),
            Some(q) => (false, format!("section fails at {}", fmt_point(&q))),
        }),
    );

    let f = f_on_cone();
    let census = enumerate_orbits(&f, &|p| x.contains(p), cfg);
    rep.push(
        "orbit-census",
        "§3.3",
        census
            .as_ref()
            .map(|c| (c.is_partition(), census_detail(c)))
            .map_err(Clone::clone),
    );
    let stratum = FpSet::new(
        &ConstructibleSet::closed(Ideal::of_vars(&cone_ring(), &["x2", "x4"])?),
        cfg,
    )?;
    rep.push(
        "fixed-points-match-stratum",
        "§3.3 Remark",
        census.as_ref().map(|c| fixed_match(c, &stratum)).map_err(Clone::clone),
    );

    let dir = FpPair::new(&rho_direction(), cfg)?;
    rep.push(
        "rho-shadow",
        "§3.3 Remark",
        census.as_ref().map_err(Clone::clone).map(|c| {
            let rho = |p: &[u64]| (eval_all(&pi_coords, p), dir.value(p, cfg));
            let moving: BTreeSet<_> = c.orbits.iter().filter(|o| o.len() > 1).map(|o| rho(&o[0])).collect();
            let n_moving = c.orbits.iter().filter(|o| o.len() > 1).count();
            let mut classes: BTreeMap<_, usize> = BTreeMap::new();
            for z in c.fixed_points() {
                *classes.entry(rho(&z)).or_insert(0) += 1;
            }
            let collapse = classes.values().all(|&k| k == (cfg.p - 1) as usize);
            (
                moving.len() == n_moving && collapse,
                format!(
                    "{n_moving} non-fixed orbits have {} distinct ρ values; fixed points fall into {} ρ-classes of sizes {:?}",
                    moving.len(),
                    classes.len(),
                    classes.values().collect::<BTreeSet<_>>()
                ),
            )
        }),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{ratio, Ring};

    fn cfg(p: u64) -> FpConfig {
        FpConfig::new(p).unwrap()
    }

    #[test]
    fn config_guards() {
        assert!(FpConfig::new(4).is_err());
        assert!(FpConfig::new(1).is_err());
        assert!(FpConfig::new(7).is_ok());
        let r = Ring::grevlex(["x"]).unwrap();
        let f = r.var("x").unwrap().scale(&ratio(1, 3));
        assert!(matches!(FpPoly::reduce(&f, cfg(3)), Err(Error::Guard(_))));
        // 1/3 = 5 mod 7
        assert_eq!(FpPoly::reduce(&f, cfg(7)).unwrap().eval(&[1]), 5);
        assert!(cfg(7).space_size(8).is_err());
    }

    #[test]
    fn example21_image_sizes() {
        for (p, size) in [(3, 25), (5, 121)] {
            let c = enumerate_image(&invariant_map(), &|_| true, cfg(p)).unwrap();
            assert_eq!(c.cardinality(), size);
            for d in 1..p {
                assert!(!c.points.contains(&vec![0, 0, d]));
            }
        }
    }

    #[test]
    fn cone_image_is_whole_plane() {
        let x = FpSet::new(&punctured_cone(), cfg(3)).unwrap();
        let c = enumerate_image(&cone_quotient_map(), &|p| x.contains(p), cfg(3)).unwrap();
        assert_eq!(c.cardinality(), 9);
    }

    #[test]
    fn orbit_censuses() {
        let u = enumerate_orbits(&unipotent_on_mat(), &|_| true, cfg(3)).unwrap();
        assert_eq!(u.orbit_count(), 33);
        assert_eq!(u.histogram(), BTreeMap::from([(1, 9), (3, 24)]));
        assert!(u.is_partition());

        let x = FpSet::new(&punctured_cone(), cfg(3)).unwrap();
        let f = enumerate_orbits(&f_on_cone(), &|p| x.contains(p), cfg(3)).unwrap();
        assert_eq!(f.domain_points, 32);
        assert_eq!(f.orbit_count(), 16);
        assert_eq!(f.histogram(), BTreeMap::from([(1, 8), (3, 8)]));

        let s = enumerate_orbits(&scaling_on_bottom(), &|_| true, cfg(5)).unwrap();
        assert_eq!(s.group_order, 4);
        assert!(s.is_partition());
        assert_eq!(s.fixed_points(), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn trivial_action_has_singleton_orbits() {
        let space = Ring::grevlex(["x", "y"]).unwrap();
        let j = GroupActionSpec::joint_ring(&space, &["l"]).unwrap();
        let a = GroupActionSpec::new("T", &space, &["l"], vec![], j.gens()[..2].to_vec(), vec![ratio(0, 1)]).unwrap();
        let c = enumerate_orbits(&a, &|_| true, cfg(3)).unwrap();
        assert_eq!(c.histogram(), BTreeMap::from([(1, 9)]));
    }

    #[test]
    fn image_is_monotone_under_relaxation() {
        let strict = enumerate_image(&invariant_map(), &|x| x[0] == 0, cfg(3)).unwrap();
        let loose = enumerate_image(&invariant_map(), &|_| true, cfg(3)).unwrap();
        assert!(strict.points.is_subset(&loose.points));
    }

    #[test]
    fn cross_checks_pass_and_mutation_is_caught() {
        for name in ScenarioName::ALL {
            for p in [3, 5] {
                let r = cross_check(name, Variant::Faithful, cfg(p)).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        let r = cross_check(ScenarioName::Example1, Variant::Faithful, cfg(3)).unwrap();
        assert!(r.checks[0]
            .detail
            .contains("27/27 points agree; image cardinality 25/27"));
        let r = cross_check(ScenarioName::Example1, Variant::Faithful, cfg(5)).unwrap();
        assert!(r.checks[0]
            .detail
            .contains("125/125 points agree; image cardinality 121/125"));
        let m = cross_check(ScenarioName::Example1, Variant::Mutated, cfg(3)).unwrap();
        assert_eq!(m.failed_checks(), vec!["image-agreement"]);
        assert!(
            m.checks[0].detail.contains("mismatch at (0,0,1)"),
            "{}",
            m.checks[0].detail
        );
        for name in [ScenarioName::Example2, ScenarioName::Example3] {
            let m = cross_check(name, Variant::Mutated, cfg(3)).unwrap();
            assert_eq!(m.failed_checks().len(), 1, "{m}");
        }
    }
}
