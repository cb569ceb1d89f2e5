//! Descriptions of rational maps between toric varieties: tuples of
//! multi-valued sections, one per target Cox variable, together with the
//! checks that they define a map and the operations that change a
//! description without changing the map.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::groebner::{GroebnerError, Ideal};
use crate::lattice_fan::{integer_kernel, rank, solve_columns, Cone, ConeGeometry, StarQuotient};
use crate::polynomial::{
    coprime_refinement, is_homogeneous, multiplicity, order_along, Polynomial, RationalSection,
};
use crate::radical_sections::{build_map_ring, Component, MapRing, RadicalError, RadicalSection, RadicalTerm};
use crate::toric_variety::{minimal_covers, ToricVariety, VarietyError};
use crate::util::{combinations, int_rat};
use crate::Rat;

/// Upper bound on completion passes; each pass removes one disagreement
/// divisor, so this is only a guard against bad input.
const MAX_COMPLETION_STEPS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    Radical(RadicalError),
    Variety(VarietyError),
    Groebner(GroebnerError),
    ComponentCount { expected: usize, got: usize },
    /// Descriptions do not share source/target, or cannot be composed.
    Mismatch,
    /// Rescaling vector is not in `ker L ⊗ Q`.
    NotInKernel,
    NotHomogeneous,
    NotRelevant,
    InhomogeneousDivisor,
    /// A denominator of the outer map pulls back to zero.
    DenominatorVanishes,
    AssignmentCount { expected: usize, got: usize },
    InconsistentAssignments,
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Radical(e) => write!(f, "{}", e),
            MapError::Variety(e) => write!(f, "{}", e),
            MapError::Groebner(e) => write!(f, "{}", e),
            MapError::ComponentCount { expected, got } => {
                write!(f, "expected {} components, got {}", expected, got)
            }
            MapError::Mismatch => f.write_str("source and target do not match"),
            MapError::NotInKernel => f.write_str("rescaling vector is not in ker L"),
            MapError::NotHomogeneous => f.write_str("description fails the homogeneity condition"),
            MapError::NotRelevant => f.write_str("description fails the relevance condition"),
            MapError::InhomogeneousDivisor => f.write_str("divisor polynomial is not homogeneous"),
            MapError::DenominatorVanishes => f.write_str("a denominator pulls back to zero"),
            MapError::AssignmentCount { expected, got } => {
                write!(f, "expected {} assignments, got {}", expected, got)
            }
            MapError::InconsistentAssignments => f.write_str("assignments are not degree-zero pullbacks"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MapError {}

impl From<RadicalError> for MapError {
    fn from(e: RadicalError) -> Self {
        MapError::Radical(e)
    }
}

impl From<VarietyError> for MapError {
    fn from(e: VarietyError) -> Self {
        MapError::Variety(e)
    }
}

impl From<GroebnerError> for MapError {
    fn from(e: GroebnerError) -> Self {
        MapError::Groebner(e)
    }
}

/// `Φ*y_i` for every target variable `y_i`, all in one map ring over the
/// source Cox ring.
#[derive(Clone, Debug)]
pub struct Description {
    source: Arc<ToricVariety>,
    target: Arc<ToricVariety>,
    ring: Arc<MapRing>,
    components: Vec<RadicalSection>,
}

impl Description {
    /// Build from sums of radical terms; empty components are zero.
    pub fn new(source: Arc<ToricVariety>, target: Arc<ToricVariety>, comps: &[Component]) -> Result<Self, MapError> {
        if comps.len() != target.nvars() {
            return Err(MapError::ComponentCount { expected: target.nvars(), got: comps.len() });
        }
        let (ring, components) = build_map_ring(source.grading(), comps)?;
        Ok(Description { source, target, ring, components })
    }

    /// Build from polynomial components.
    pub fn from_polynomials(
        source: Arc<ToricVariety>,
        target: Arc<ToricVariety>,
        polys: &[Polynomial],
    ) -> Result<Self, MapError> {
        let comps: Vec<Component> = polys
            .iter()
            .map(|p| if p.is_zero() { Vec::new() } else { vec![RadicalTerm::section(RationalSection::from_poly(p.clone()))] })
            .collect();
        Description::new(source, target, &comps)
    }

    pub fn identity(x: Arc<ToricVariety>) -> Self {
        let n = x.nvars();
        let polys: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        Description::from_polynomials(x.clone(), x, &polys).expect("identity description")
    }

    pub fn source(&self) -> &Arc<ToricVariety> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ToricVariety> {
        &self.target
    }

    pub fn ring(&self) -> &Arc<MapRing> {
        &self.ring
    }

    pub fn components(&self) -> &[RadicalSection] {
        &self.components
    }

    /// Indices of the zero components.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| self.components[i].is_zero()).collect()
    }

    /// Indices of the nonzero components.
    pub fn support(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&i| !self.components[i].is_zero()).collect()
    }

    pub fn component_strings(&self) -> Vec<String> {
        self.components.iter().map(|c| c.to_string_with(self.source.names())).collect()
    }

    fn terms(&self) -> Vec<Component> {
        self.components.iter().map(|c| if c.is_zero() { Vec::new() } else { vec![c.to_term()] }).collect()
    }

    fn rebuild(&self, comps: &[Component]) -> Result<Description, MapError> {
        Description::new(self.source.clone(), self.target.clone(), comps)
    }

    /// Pullback of the Laurent monomial `y^e`.
    pub fn pullback_monomial(&self, e: &[i64]) -> Result<RadicalSection, MapError> {
        let mut out = RadicalSection::from_rational(&self.ring, RationalSection::one(self.ring.nvars));
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                out = out.mul(&self.components[i].pow(k)?)?;
            }
        }
        Ok(out)
    }

    /// Pullback of a target polynomial; fails with `MixedRadicals` when the
    /// monomials pull back to different radical parts.
    pub fn pullback_polynomial(&self, p: &Polynomial) -> Result<RadicalSection, MapError> {
        let mut out = RadicalSection::from_rational(&self.ring, RationalSection::zero(self.ring.nvars));
        for (e, c) in p.terms() {
            let s: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            let m = self.pullback_monomial(&s)?;
            let scaled = m.mul(&RadicalSection::from_rational(&self.ring, RationalSection::constant(self.ring.nvars, c.clone())))?;
            out = out.add(&scaled)?;
        }
        Ok(out)
    }

    pub fn pullback_section(&self, q: &RationalSection) -> Result<RadicalSection, MapError> {
        let num = self.pullback_polynomial(q.numerator())?;
        let den = self.pullback_polynomial(q.denominator())?;
        if den.is_zero() {
            return Err(MapError::DenominatorVanishes);
        }
        Ok(num.div(&den)?)
    }

    /// Run both checks; on success return the zero cone `σ` as variable
    /// indices.
    pub fn validate(&self) -> Result<Vec<usize>, MapError> {
        if let Homogeneity::Fail { .. } = check_homogeneity(self) {
            return Err(MapError::NotHomogeneous);
        }
        let r = check_relevance(self);
        if !r.passed {
            return Err(MapError::NotRelevant);
        }
        Ok(r.sigma.unwrap_or_default())
    }
}

// ---------------------------------------------------------------------------
// checks

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomogeneityFailure {
    NotSingleValued,
    NonzeroDegree,
    Inhomogeneous,
}

#[derive(Clone, Debug)]
pub enum Homogeneity {
    Pass,
    Fail { witness: RationalSection, pullback: RadicalSection, reason: HomogeneityFailure },
}

impl Homogeneity {
    pub fn passed(&self) -> bool {
        matches!(self, Homogeneity::Pass)
    }
}

/// Every degree-zero generator on the nonzero components must pull back to
/// a single-valued section of degree zero. The first failure is returned.
pub fn check_homogeneity(phi: &Description) -> Homogeneity {
    let t = phi.support();
    let gens = match phi.target.degree0_generators(&t) {
        Ok(g) => g,
        Err(_) => return Homogeneity::Pass,
    };
    for g in gens {
        let e = laurent_exponents(&g);
        let b = phi.pullback_monomial(&e).expect("support components are invertible");
        let reason = if !b.is_single_valued() {
            Some(HomogeneityFailure::NotSingleValued)
        } else {
            match b.degree() {
                None => Some(HomogeneityFailure::Inhomogeneous),
                Some(d) if !d.is_zero() => Some(HomogeneityFailure::NonzeroDegree),
                Some(_) => None,
            }
        };
        if let Some(reason) = reason {
            return Homogeneity::Fail { witness: g, pullback: b, reason };
        }
    }
    Homogeneity::Pass
}

/// Exponent vector of a Laurent monomial section.
pub(crate) fn laurent_exponents(q: &RationalSection) -> Vec<i64> {
    let n = q.nvars();
    let (ne, _) = q.numerator().terms().next().expect("nonzero monomial");
    let (de, _) = q.denominator().terms().next().expect("nonzero monomial");
    (0..n).map(|i| ne[i] as i64 - de[i] as i64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelevanceTest {
    /// zero rays lie in one cone of the target fan
    Cone,
    /// fanless target: the kernel of `Φ*` does not contain `B_Y`
    Kernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relevance {
    pub passed: bool,
    pub test: RelevanceTest,
    /// smallest cone containing the zero rays (fan targets), or the zero
    /// set itself (fanless targets)
    pub sigma: Option<Vec<usize>>,
}

pub fn check_relevance(phi: &Description) -> Relevance {
    let zeros = phi.zero_set();
    match phi.target.fan() {
        Ok(fan) => match fan.minimal_containing_cone(&zeros) {
            Some(c) => Relevance { passed: true, test: RelevanceTest::Cone, sigma: Some(c.rays) },
            None => Relevance { passed: false, test: RelevanceTest::Cone, sigma: None },
        },
        Err(_) => {
            // a monomial lies in ker Φ* iff it involves a zero component
            let passed = phi
                .target
                .irrelevant_monomials()
                .iter()
                .any(|m| zeros.iter().all(|&i| m[i] == 0));
            Relevance { passed, test: RelevanceTest::Kernel, sigma: if passed { Some(zeros) } else { None } }
        }
    }
}

// ---------------------------------------------------------------------------
// normalization and rescaling

/// Zero out every component whose ray lies in `σ`.
pub fn normalize_zero_strata(phi: &Description) -> Result<Description, MapError> {
    let sigma = phi.validate()?;
    if sigma.iter().all(|&i| phi.components[i].is_zero()) {
        return Ok(phi.clone());
    }
    let mut comps = phi.terms();
    for &i in &sigma {
        comps[i].clear();
    }
    phi.rebuild(&comps)
}

/// `f^w · Φ` for `w ∈ ker L ⊗ Q`.
pub fn rescale(phi: &Description, f: &Polynomial, w: &[Rat]) -> Result<Description, MapError> {
    let n = phi.target.nvars();
    if w.len() != n {
        return Err(MapError::ComponentCount { expected: n, got: w.len() });
    }
    if f.is_zero() || !is_homogeneous(f, phi.source.grading()) {
        return Err(MapError::InhomogeneousDivisor);
    }
    let sigma = phi.validate()?;
    // ker L = (free grading rows) + span of the σ coordinates
    let mut rows: Vec<Vec<Rat>> = phi.target.grading().free.iter().map(|r| r.iter().map(int_rat).collect()).collect();
    for &i in &sigma {
        rows.push((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect());
    }
    let base = rank(&rows);
    rows.push(w.to_vec());
    if rank(&rows) != base {
        return Err(MapError::NotInKernel);
    }
    rescale_unchecked(phi, f, w)
}

fn rescale_unchecked(phi: &Description, f: &Polynomial, w: &[Rat]) -> Result<Description, MapError> {
    let fq = RationalSection::from_poly(f.clone());
    let comps: Vec<Component> = phi
        .components
        .iter()
        .zip(w)
        .map(|(c, wi)| {
            if c.is_zero() {
                Vec::new()
            } else if wi.is_zero() {
                vec![c.to_term()]
            } else {
                let mut t = c.to_term();
                t.factors.push((fq.clone(), wi.clone()));
                vec![t]
            }
        })
        .collect();
    phi.rebuild(&comps)
}

// ---------------------------------------------------------------------------
// completion

/// One rescaling step of [`complete`] along the divisor `(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionStep {
    pub divisor: Polynomial,
    /// orders of the components along `f` before the step
    pub nu0: Vec<Rat>,
    /// the lifted vector, supported on `τ_star`
    pub v_prime: Vec<Rat>,
    /// `nu0 - v_prime`; the step multiplies by `f^{-nu}`
    pub nu: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub description: Description,
    pub steps: Vec<CompletionStep>,
}

/// Order of vanishing of a nonzero radical section along `f`.
pub fn order_of(b: &RadicalSection, f: &Polynomial) -> Rat {
    let mut o = Rat::from_integer(order_along(f, b.rational_part()).expect("nonzero section").into());
    for (j, &l) in b.exponents().iter().enumerate() {
        if l > 0 {
            let (g, r) = &b.ring().generators[j];
            let m = multiplicity(f, g);
            if m > 0 {
                o += Rat::new(BigInt::from(l) * BigInt::from(m), BigInt::from(*r));
            }
        }
    }
    o
}

/// Coprime basis of every polynomial appearing in the description,
/// restricted to homogeneous divisors not contained in the irrelevant locus.
pub fn candidate_divisors(phi: &Description) -> Vec<Polynomial> {
    let mut polys = Vec::new();
    for c in phi.components.iter().filter(|c| !c.is_zero()) {
        polys.push(c.rational_part().numerator().clone());
        polys.push(c.rational_part().denominator().clone());
    }
    polys.extend(phi.ring.generators.iter().map(|(g, _)| g.clone()));
    let basis = match coprime_refinement(&polys) {
        Ok(r) => r.basis,
        Err(_) => return Vec::new(),
    };
    let irrel = phi.source.irrelevant_components();
    basis
        .into_iter()
        .filter(|f| is_homogeneous(f, phi.source.grading()))
        .filter(|f| {
            let vars = f.variables();
            !(f.is_monomial() && vars.len() == 1 && irrel.contains(&vars))
        })
        .collect()
}

/// Complete description of the same map, with the trace of the rescaling
/// steps applied.
pub fn complete(phi: &Description) -> Result<Completion, MapError> {
    phi.source.fan()?;
    let fan = phi.target.fan()?;
    let sigma = phi.validate()?;
    let mut cur = normalize_zero_strata(phi)?;
    let sq = fan.star_and_quotient(&Cone::new(sigma.clone())).map_err(VarietyError::Fan)?;
    let n = phi.target.nvars();
    let mut steps = Vec::new();
    'outer: for _ in 0..MAX_COMPLETION_STEPS {
        for f in candidate_divisors(&cur) {
            let v: Vec<Rat> =
                cur.components.iter().map(|c| if c.is_zero() { Rat::zero() } else { order_of(c, &f) }).collect();
            if agrees_along(&cur, &v) {
                continue;
            }
            let lv = sq.l.mul_rat_vec(&v);
            let vp = match lift_to_star(&sq, &sigma, &lv, n) {
                Some(x) => x,
                None => continue,
            };
            let w: Vec<Rat> = vp.iter().zip(&v).map(|(a, b)| a - b).collect();
            if w.iter().all(|x| x.is_zero()) {
                continue;
            }
            cur = rescale_unchecked(&cur, &f, &w)?;
            let nu = v.iter().zip(&vp).map(|(a, b)| a - b).collect();
            steps.push(CompletionStep { divisor: f, nu0: v, v_prime: vp, nu });
            continue 'outer;
        }
        break;
    }
    Ok(Completion { description: cur, steps })
}

/// At a general point of `(f)` the description evaluates outside `Z_Y`.
fn agrees_along(phi: &Description, v: &[Rat]) -> bool {
    if v.iter().any(|x| x.is_negative()) {
        return false;
    }
    let fan = match phi.target.fan() {
        Ok(f) => f,
        Err(_) => return false,
    };
    let on: Vec<usize> = (0..v.len()).filter(|&i| v[i].is_positive() || phi.components[i].is_zero()).collect();
    fan.minimal_containing_cone(&on).is_some()
}

/// A nonnegative `v'`, supported on the rays of a star cone mapping into the
/// smallest quotient face containing `lv`, with `L v' = lv`. Among basic
/// solutions the first in lexicographic order of supports is chosen.
fn lift_to_star(sq: &StarQuotient, sigma: &[usize], lv: &[Rat], n: usize) -> Option<Vec<Rat>> {
    if lv.iter().all(|x| x.is_zero()) {
        return Some(vec![Rat::zero(); n]);
    }
    let qdim = sq.l.rows();
    let col = |i: usize| -> Vec<Rat> { sq.l.col(i).iter().map(int_rat).collect() };
    for c in sq.star.maximal_cones() {
        let idx: Vec<usize> = c.rays.iter().copied().filter(|r| !sigma.contains(r)).collect();
        let g = ConeGeometry::new(idx.iter().map(|&i| col(i)).collect(), qdim);
        if !g.contains(lv) {
            continue;
        }
        let face: Vec<usize> = g.min_face(&[lv.to_vec()]).into_iter().map(|k| idx[k]).collect();
        for k in 1..=face.len() {
            for sub in combinations(face.len(), k) {
                let cols: Vec<Vec<Rat>> = sub.iter().map(|&s| col(face[s])).collect();
                if rank(&cols) < k {
                    continue;
                }
                if let Some(x) = solve_columns(&cols, lv) {
                    if x.iter().all(|t| !t.is_negative()) {
                        let mut out = vec![Rat::zero(); n];
                        for (s, t) in sub.iter().zip(x) {
                            out[face[*s]] = t;
                        }
                        return Some(out);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// agreement locus

/// Complement data of the agreement locus: the point must avoid
/// `V(denominator)`, the source irrelevant locus, and every `V(ideal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementLocus {
    pub denominator: Polynomial,
    /// per irrelevant component of the target (its variables), the ideal of
    /// ceilings of the corresponding components
    pub components: Vec<(Vec<usize>, Ideal)>,
}

pub fn agreement_locus(phi: &Description) -> AgreementLocus {
    let n = phi.source.nvars();
    let components = phi
        .target
        .irrelevant_components()
        .into_iter()
        .map(|vars| {
            let gens = vars.iter().map(|&i| phi.components[i].ceiling().numerator().clone()).collect();
            (vars, Ideal::new(n, gens))
        })
        .collect();
    AgreementLocus { denominator: phi.ring.inverted_denominator.clone(), components }
}

impl AgreementLocus {
    pub fn contains(&self, source: &ToricVariety, point: &[Rat]) -> bool {
        if self.denominator.eval(point).is_zero() {
            return false;
        }
        if in_irrelevant_locus(source, point) {
            return false;
        }
        self.components.iter().all(|(_, ideal)| ideal.generators().iter().any(|g| !g.eval(point).is_zero()))
    }

    /// For monomial data, the coordinate strata (variable sets) making up
    /// the disagreement locus outside `Z_X`; `None` otherwise.
    pub fn disagreement_strata(&self, source: &ToricVariety) -> Option<Vec<Vec<usize>>> {
        if !self.denominator.is_monomial() {
            return None;
        }
        let mut strata: Vec<Vec<usize>> = self.denominator.variables().into_iter().map(|i| vec![i]).collect();
        for (_, ideal) in &self.components {
            if ideal.generators().iter().any(|g| !g.is_monomial()) {
                return None;
            }
            let exps: Vec<Vec<u32>> = ideal.generators().iter().map(|g| g.terms().next().unwrap().0.clone()).collect();
            strata.extend(minimal_covers(&exps));
        }
        let irrel = source.irrelevant_components();
        strata.retain(|s| !irrel.iter().any(|c| c.iter().all(|i| s.contains(i))));
        for s in strata.iter_mut() {
            s.sort_unstable();
        }
        strata.sort();
        strata.dedup();
        let minimal: Vec<Vec<usize>> = strata
            .iter()
            .filter(|s| !strata.iter().any(|t| t != *s && t.iter().all(|i| s.contains(i))))
            .cloned()
            .collect();
        Some(minimal)
    }
}

pub(crate) fn in_irrelevant_locus(x: &ToricVariety, point: &[Rat]) -> bool {
    !x.irrelevant_monomials()
        .iter()
        .any(|m| m.iter().zip(point).all(|(&e, p)| e == 0 || !p.is_zero()))
}

// ---------------------------------------------------------------------------
// composition, equality, construction from pullbacks

/// `Ψ ∘ Φ` for `Φ: X -> Y` and `Ψ: Y -> Z`.
pub fn compose(psi: &Description, phi: &Description) -> Result<Description, MapError> {
    if psi.source.nvars() != phi.target.nvars() || psi.source.grading() != phi.target.grading() {
        return Err(MapError::Mismatch);
    }
    let mut comps: Vec<Component> = Vec::new();
    for b in &psi.components {
        if b.is_zero() {
            comps.push(Vec::new());
            continue;
        }
        let r = phi.pullback_section(b.rational_part())?;
        if r.is_zero() {
            comps.push(Vec::new());
            continue;
        }
        let mut term = r.to_term();
        let mut zero = false;
        for (j, &l) in b.exponents().iter().enumerate() {
            if l == 0 {
                continue;
            }
            let (g, rj) = &b.ring().generators[j];
            let pg = phi.pullback_polynomial(g)?;
            if pg.is_zero() {
                zero = true;
                break;
            }
            term = term.mul(&pg.to_term().pow(&Rat::new(l.into(), (*rj).into()))?);
        }
        comps.push(if zero { Vec::new() } else { vec![term] });
    }
    let out = Description::new(phi.source.clone(), psi.target.clone(), &comps)?;
    if !check_relevance(&out).passed {
        return Err(MapError::NotRelevant);
    }
    Ok(out)
}

/// Whether two valid descriptions define the same rational map.
pub fn same_map(a: &Description, b: &Description) -> Result<bool, MapError> {
    if a.source.names().len() != b.source.names().len()
        || a.source.grading() != b.source.grading()
        || a.target.grading() != b.target.grading()
    {
        return Err(MapError::Mismatch);
    }
    let a = normalize_zero_strata(a)?;
    let b = normalize_zero_strata(b)?;
    if a.zero_set() != b.zero_set() {
        return Ok(false);
    }
    let t = a.support();
    for g in a.target.degree0_generators(&t)? {
        let e = laurent_exponents(&g);
        let pa = a.pullback_monomial(&e)?;
        let pb = b.pullback_monomial(&e)?;
        if !pa.is_single_valued() || !pb.is_single_valued() {
            return Err(MapError::NotHomogeneous);
        }
        if pa.floor() != pb.floor() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A description whose pullbacks of the degree-zero generators on the
/// complement of `zero_set` are the given sections. Variables not fixed by
/// a generator are sent to 1.
pub fn describe_from_pullbacks(
    source: Arc<ToricVariety>,
    target: Arc<ToricVariety>,
    assignments: &[RationalSection],
    zero_set: &[usize],
) -> Result<Description, MapError> {
    let n = target.nvars();
    let m = source.nvars();
    let t: Vec<usize> = (0..n).filter(|i| !zero_set.contains(i)).collect();
    let g = target.grading().restrict(&t);
    let ker = integer_kernel(&g.matrix(), &g.orders);
    if ker.len() != assignments.len() {
        return Err(MapError::AssignmentCount { expected: ker.len(), got: assignments.len() });
    }
    let one = RadicalTerm::constant(Rat::one());
    let mut values: Vec<Option<RadicalTerm>> = vec![None; t.len()];
    // generators come in Hermite form with increasing rightmost pivots
    let mut order: Vec<(usize, usize)> = ker
        .iter()
        .enumerate()
        .map(|(k, v)| (v.iter().rposition(|x| !x.is_zero()).expect("nonzero kernel vector"), k))
        .collect();
    order.sort_unstable();
    let mut next = 0;
    for p in 0..t.len() {
        if next < order.len() && order[next].0 == p {
            let k = order[next].1;
            next += 1;
            let v = &ker[k];
            let d = v[p].clone();
            let mut term = RadicalTerm::section(assignments[k].clone());
            for i in 0..p {
                if !v[i].is_zero() {
                    let e = -Rat::from_integer(v[i].clone());
                    term = term.mul(&values[i].clone().unwrap().pow(&e)?);
                }
            }
            let d = if d.is_negative() { -d } else { d };
            let sign = if v[p].is_negative() { -Rat::one() } else { Rat::one() };
            values[p] = Some(term.pow(&(sign / Rat::from_integer(d)))?);
        } else {
            values[p] = Some(one.clone());
        }
    }
    let mut comps: Vec<Component> = vec![Vec::new(); n];
    for (k, &i) in t.iter().enumerate() {
        comps[i] = vec![values[k].take().unwrap()];
    }
    let _ = m;
    let out = Description::new(source, target.clone(), &comps)?;
    for (v, a) in target.degree0_generators(&t)?.iter().zip(assignments) {
        let pb = out.pullback_monomial(&laurent_exponents(v))?;
        if !pb.is_single_valued() || pb.floor() != *a {
            return Err(MapError::InconsistentAssignments);
        }
    }
    Ok(out)
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.component_strings().join(", "))
    }
}

/// Textual form of a degree-zero witness, using target names.
pub fn witness_string(phi: &Description, w: &RationalSection) -> String {
    w.to_string_with(phi.target.names())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_fan::Fan;
    use crate::util::rat;

    fn p1() -> Arc<ToricVariety> {
        let f = Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
        Arc::new(ToricVariety::from_fan(f, None).unwrap())
    }

    fn p112() -> Arc<ToricVariety> {
        let f = Fan::new(2, vec![vec![-1, -2], vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        Arc::new(ToricVariety::from_fan(f, None).unwrap())
    }

    fn p123() -> Arc<ToricVariety> {
        let f = Fan::new(2, vec![vec![-2, -3], vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        Arc::new(ToricVariety::from_fan(f, Some(vec!["y1".into(), "y2".into(), "y3".into()])).unwrap())
    }

    fn y_622() -> Arc<ToricVariety> {
        let f = Fan::new(
            2,
            vec![vec![-2, -3], vec![1, 1], vec![0, 1], vec![0, -1]],
            vec![vec![1, 3], vec![1, 2], vec![0, 3], vec![0, 2]],
        )
        .unwrap();
        let names = (1..=4).map(|i| format!("y{}", i)).collect();
        Arc::new(ToricVariety::from_fan(f, Some(names)).unwrap())
    }

    fn poly(x: &ToricVariety, s: &str) -> Polynomial {
        x.parse_polynomial(s).unwrap()
    }

    fn sec(x: &ToricVariety, s: &str) -> RadicalTerm {
        RadicalTerm::section(RationalSection::from_poly(poly(x, s)))
    }

    fn root(x: &ToricVariety, s: &str, r: u32) -> RadicalTerm {
        RadicalTerm::root(RationalSection::from_poly(poly(x, s)), r)
    }

    fn polys(x: &ToricVariety, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| poly(x, s)).collect()
    }

    #[test]
    fn homogeneity_witness_and_pass() {
        let x = p112();
        let y = p123();
        let f = "x1^3 - x2*x3";
        let bad = Description::new(x.clone(), y.clone(), &[vec![root(&x, "x1", 2)], vec![sec(&x, "x2")], vec![root(&x, f, 2)]]).unwrap();
        match check_homogeneity(&bad) {
            Homogeneity::Fail { witness, reason, .. } => {
                assert_eq!(witness_string(&bad, &witness), "y3/y1^3");
                assert_eq!(reason, HomogeneityFailure::NotSingleValued);
            }
            Homogeneity::Pass => panic!("expected failure"),
        }
        let a = root(&x, f, 2);
        let a3 = a.pow(&rat(3)).unwrap();
        let third = vec![a3, a.mul(&sec(&x, "x1*x3"))];
        let good = Description::new(x.clone(), y, &[vec![a], vec![sec(&x, "x2^3")], third]).unwrap();
        assert!(check_homogeneity(&good).passed());
        assert!(check_homogeneity(&Description::identity(p1())).passed());
    }

    #[test]
    fn relevance() {
        let x = p1();
        let d = Description::from_polynomials(x.clone(), x.clone(), &polys(&x, &["x1", "0"])).unwrap();
        let r = check_relevance(&d);
        assert!(r.passed);
        assert_eq!(r.sigma, Some(vec![1]));
        let z = Description::from_polynomials(x.clone(), x.clone(), &polys(&x, &["0", "0"])).unwrap();
        assert!(!check_relevance(&z).passed);

        let y = p112();
        let e = Description::new(x.clone(), y, &[vec![root(&x, "x1", 2)], vec![], vec![sec(&x, "x2")]]).unwrap();
        let r = check_relevance(&e);
        assert!(r.passed);
        assert_eq!(r.sigma, Some(vec![1]));
        assert!(check_homogeneity(&e).passed());
    }

    #[test]
    fn fanless_relevance_uses_kernel_test() {
        let y = Arc::new(ToricVariety::from_cox_data(vec![vec![1, 1]], vec![], vec![vec![1, 0], vec![0, 1]], None).unwrap());
        let x = p1();
        let d = Description::from_polynomials(x.clone(), y.clone(), &polys(&x, &["x1", "0"])).unwrap();
        let r = check_relevance(&d);
        assert_eq!(r.test, RelevanceTest::Kernel);
        assert!(r.passed);
        let z = Description::from_polynomials(x.clone(), y, &polys(&x, &["0", "0"])).unwrap();
        assert!(!check_relevance(&z).passed);
    }

    #[test]
    fn rescale_and_complete_on_p1() {
        let x = p1();
        let phi = Description::from_polynomials(x.clone(), x.clone(), &polys(&x, &["x1^3", "x1^2*x2"])).unwrap();
        let f = poly(&x, "x1");
        let r = rescale(&phi, &f, &[rat(-2), rat(-2)]).unwrap();
        assert_eq!(r.component_strings(), vec!["x1", "x2"]);
        assert_eq!(rescale(&phi, &f, &[rat(-2), rat(-1)]).unwrap_err(), MapError::NotInKernel);
        assert!(same_map(&phi, &r).unwrap());

        let c = complete(&phi).unwrap();
        assert_eq!(c.description.component_strings(), vec!["x1", "x2"]);
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.steps[0].nu0, vec![rat(3), rat(2)]);
        assert_eq!(c.steps[0].nu, vec![rat(2), rat(2)]);

        let loc = agreement_locus(&phi);
        assert_eq!(loc.disagreement_strata(&x), Some(vec![vec![0]]));
        let loc = agreement_locus(&c.description);
        assert_eq!(loc.disagreement_strata(&x), Some(vec![]));
    }

    #[test]
    fn complete_from_function_field_data() {
        let x = p1();
        let d = describe_from_pullbacks(x.clone(), x.clone(), &[RationalSection::new(poly(&x, "x2"), poly(&x, "x1"))], &[]).unwrap();
        assert_eq!(d.component_strings(), vec!["1", "x2/x1"]);
        let c = complete(&d).unwrap();
        assert!(same_map(&c.description, &Description::identity(x.clone())).unwrap());
        assert_eq!(c.description.component_strings(), vec!["x1", "x2"]);
    }

    #[test]
    fn describe_embedding() {
        let x = p1();
        let y = p112();
        let a = RationalSection::new(poly(&x, "x2"), poly(&x, "x1"));
        let d = describe_from_pullbacks(x.clone(), y.clone(), &[a], &[1]).unwrap();
        assert_eq!(d.component_strings(), vec!["1", "0", "x2/x1"]);
        let e = Description::new(x.clone(), y, &[vec![root(&x, "x1", 2)], vec![], vec![sec(&x, "x2")]]).unwrap();
        assert!(same_map(&d, &e).unwrap());

        let c = describe_from_pullbacks(x.clone(), x.clone(), &[RationalSection::one(2)], &[]).unwrap();
        assert_eq!(c.component_strings(), vec!["1", "1"]);
    }

    #[test]
    fn section_622_completion_and_composition() {
        let x = p112();
        let y = y_622();
        let phi = Description::from_polynomials(x.clone(), y.clone(), &polys(&x, &["x1", "x1*x2", "x1*x3", "x1*x2"])).unwrap();
        let psi = Description::from_polynomials(y.clone(), x.clone(), &polys(&y, &["y1^2*y4", "y2*y4", "y1*y2*y3*y4"])).unwrap();
        assert!(check_homogeneity(&phi).passed() && check_relevance(&phi).passed);
        assert!(check_homogeneity(&psi).passed() && check_relevance(&psi).passed);

        let cphi = complete(&phi).unwrap().description;
        assert_eq!(cphi.component_strings(), vec!["root(x1, 2)", "x2", "x3", "x2 * root(x1, 2)"]);
        let cpsi = complete(&psi).unwrap().description;
        assert_eq!(cpsi.component_strings(), vec!["y1^2 * root(y4, 2)", "y2 * root(y4, 2)", "y1*y2*y3"]);
        assert!(same_map(&phi, &cphi).unwrap());

        let strata = agreement_locus(&cpsi).disagreement_strata(&y).unwrap();
        assert_eq!(strata, vec![vec![0, 3], vec![1, 3]]);
        let strata = agreement_locus(&cphi).disagreement_strata(&x).unwrap();
        assert_eq!(strata.len(), 3);

        let id_x = compose(&cpsi, &cphi).unwrap();
        assert!(same_map(&id_x, &Description::identity(x.clone())).unwrap());
        let id_y = compose(&cphi, &cpsi).unwrap();
        assert!(same_map(&id_y, &Description::identity(y.clone())).unwrap());
    }

    #[test]
    fn same_map_distinguishes() {
        let x = p1();
        let a = Description::identity(x.clone());
        let b = Description::from_polynomials(x.clone(), x.clone(), &polys(&x, &["x2", "x1"])).unwrap();
        assert!(!same_map(&a, &b).unwrap());
        assert!(same_map(&compose(&a, &b).unwrap(), &b).unwrap());
    }

    #[test]
    fn flop_base_parametrized_descriptions() {
        let c = Arc::new(ToricVariety::from_fan(Fan::new(1, vec![vec![1]], vec![vec![0]]).unwrap(), Some(vec!["x".into()])).unwrap());
        let y = Arc::new(ToricVariety::from_cox_data(vec![vec![1, 1, -1, -1]], vec![], vec![], None).unwrap());
        let t0 = Description::from_polynomials(c.clone(), y.clone(), &polys(&c, &["1", "1", "x", "x"])).unwrap();
        let h = root(&c, "x", 2);
        let th = Description::new(c.clone(), y, &[vec![h.clone()], vec![h.clone()], vec![h.clone()], vec![h]]).unwrap();
        assert!(check_homogeneity(&th).passed());
        assert!(same_map(&t0, &th).unwrap());
    }

    #[test]
    fn normalization() {
        let x = p1();
        let d = Description::identity(x.clone());
        assert_eq!(normalize_zero_strata(&d).unwrap().component_strings(), d.component_strings());
        let y = Arc::new(ToricVariety::from_cox_data(vec![vec![1, 1, -1, -1]], vec![], vec![vec![1, 1, 0, 0]], None).unwrap());
        let e = Description::from_polynomials(x.clone(), y, &polys(&x, &["x1", "x2", "0", "0"])).unwrap();
        let n = normalize_zero_strata(&e).unwrap();
        assert_eq!(n.component_strings(), vec!["x1", "x2", "0", "0"]);
        assert_eq!(normalize_zero_strata(&n).unwrap().component_strings(), n.component_strings());
    }
}
