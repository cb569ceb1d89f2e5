//! Images and preimages of subschemes under a description, pullback of
//! divisors, and evaluation at rational points.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::groebner::{self, GroebnerError, Ideal};
use crate::lattice_fan::integer_kernel;
use crate::map_calculus::{agreement_locus, in_irrelevant_locus, Description, MapError};
use crate::polynomial::{Polynomial, RationalSection};
use crate::radical_sections::{evaluate, AlgebraicValue, RadicalSection};
use crate::{Interrupt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeError {
    Map(MapError),
    Groebner(GroebnerError),
    /// The input ideal is not homogeneous for the relevant grading.
    Inhomogeneous,
    /// The section vanishes on the image of the map.
    VanishesOnImage,
    /// Point has the wrong number of coordinates.
    Arity,
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::Map(e) => write!(f, "{}", e),
            SchemeError::Groebner(e) => write!(f, "{}", e),
            SchemeError::Inhomogeneous => f.write_str("ideal is not homogeneous"),
            SchemeError::VanishesOnImage => f.write_str("section vanishes on the image"),
            SchemeError::Arity => f.write_str("point has the wrong number of coordinates"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SchemeError {}

impl From<MapError> for SchemeError {
    fn from(e: MapError) -> Self {
        SchemeError::Map(e)
    }
}

impl From<GroebnerError> for SchemeError {
    fn from(e: GroebnerError) -> Self {
        SchemeError::Groebner(e)
    }
}

impl From<crate::radical_sections::RadicalError> for SchemeError {
    fn from(e: crate::radical_sections::RadicalError) -> Self {
        SchemeError::Map(MapError::Radical(e))
    }
}

/// Where a computed ideal is guaranteed to describe the geometric answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Everywhere,
    /// on the preimage of the smooth locus of the target
    SmoothLocusOfTarget,
    /// on the interior of the agreement locus
    AgreementInterior,
}

impl Validity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Validity::Everywhere => "everywhere",
            Validity::SmoothLocusOfTarget => "smooth-locus-of-target",
            Validity::AgreementInterior => "agreement-interior",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusReport {
    pub ideal: Ideal,
    pub validity: Validity,
    pub notes: Vec<String>,
}

/// The description has empty disagreement locus (decided on monomial data
/// only; anything else counts as not complete).
fn known_complete(phi: &Description) -> bool {
    matches!(agreement_locus(phi).disagreement_strata(phi.source()), Some(s) if s.is_empty())
}

fn preimage_validity(phi: &Description) -> Validity {
    if !known_complete(phi) {
        return Validity::AgreementInterior;
    }
    match phi.target().is_smooth() {
        Ok(true) => Validity::Everywhere,
        _ => Validity::SmoothLocusOfTarget,
    }
}

/// Graph ideal in `Q[x, α, u, y]` with the extra source equations, then
/// eliminate down to `y` and take the homogeneous part.
fn image_pipeline(phi: &Description, extra: &[Polynomial], intr: &dyn Interrupt) -> Result<Ideal, SchemeError> {
    let ring = phi.ring();
    let m = ring.nvars;
    let k = ring.generators.len();
    let n = phi.target().nvars();
    let total = m + k + 1 + n;
    let xmap: Vec<usize> = (0..m).collect();
    let lift = |p: &Polynomial| p.rename(total, &xmap);
    let alpha = |j: usize| Polynomial::var(total, m + j);
    let u = Polynomial::var(total, m + k);
    let y = |i: usize| Polynomial::var(total, m + k + 1 + i);

    let mut gens = Vec::new();
    for (i, c) in phi.components().iter().enumerate() {
        if c.is_zero() {
            gens.push(y(i));
            continue;
        }
        let q = c.rational_part();
        let mut rhs = lift(q.numerator());
        for (j, &l) in c.exponents().iter().enumerate() {
            if l > 0 {
                rhs = &rhs * &alpha(j).pow(l);
            }
        }
        gens.push(&(&y(i) * &lift(q.denominator())) - &rhs);
    }
    for (j, (g, r)) in ring.generators.iter().enumerate() {
        gens.push(&alpha(j).pow(*r) - &lift(g));
    }
    if !ring.inverted_denominator.is_constant() {
        gens.push(&Polynomial::one(total) - &(&u * &lift(&ring.inverted_denominator)));
    }
    gens.extend(extra.iter().map(lift));
    let keep: Vec<usize> = (m + k + 1..total).collect();
    let e = groebner::eliminate(&Ideal::new(total, gens), &keep, intr)?;
    let back: Vec<usize> = (0..total).map(|v| v.saturating_sub(m + k + 1).min(n.saturating_sub(1))).collect();
    let kernel = Ideal::new(n, e.generators().iter().map(|g| g.rename(n, &back)).collect());
    Ok(groebner::homogeneous_part(&kernel, phi.target().grading(), intr)?)
}

/// Closure of the image: the homogeneous part of `ker Φ*`.
pub fn image_closure(phi: &Description, intr: &dyn Interrupt) -> Result<Ideal, SchemeError> {
    image_pipeline(phi, &[], intr)
}

/// Scheme-theoretic image of the subscheme `V(I_A)`. `I_A` is saturated at
/// the irrelevant ideal first.
pub fn image_of_subscheme(phi: &Description, ia: &Ideal, intr: &dyn Interrupt) -> Result<LocusReport, SchemeError> {
    let x = phi.source();
    if !groebner::is_homogeneous_ideal(ia, x.grading()) {
        return Err(SchemeError::Inhomogeneous);
    }
    let mut notes = Vec::new();
    let sat = x.saturate_irrelevant(ia, intr)?;
    if !groebner::ideals_equal(&sat, ia, intr)? {
        notes.push(format!("input ideal replaced by its saturation {}", sat.to_string_with(x.names())));
    }
    let ideal = image_pipeline(phi, sat.generators(), intr)?;
    let validity = if known_complete(phi) { Validity::Everywhere } else { Validity::AgreementInterior };
    Ok(LocusReport { ideal, validity, notes })
}

/// `⟨⌈Φ*f⌉ : f ∈ gens⟩`, intersected with the polynomial ring and, on
/// request, saturated at the irrelevant ideal of the source.
pub fn preimage_ideal(
    phi: &Description,
    gens: &[Polynomial],
    saturate: bool,
    intr: &dyn Interrupt,
) -> Result<LocusReport, SchemeError> {
    let y = phi.target();
    let x = phi.source();
    if gens.iter().any(|g| !crate::polynomial::is_homogeneous(g, y.grading())) {
        return Err(SchemeError::Inhomogeneous);
    }
    let m = x.nvars();
    let mut out = Vec::new();
    for g in gens {
        let b = phi.pullback_polynomial(g)?;
        if !b.is_zero() {
            out.push(b.ceiling().numerator().clone());
        }
    }
    let mut ideal = Ideal::new(m, out);
    let mut notes = Vec::new();
    let d = &phi.ring().inverted_denominator;
    if !d.is_constant() {
        ideal = groebner::saturate_by_poly(&ideal, d, intr)?;
        notes.push(format!("saturated at the denominator {}", d.to_string_with(x.names())));
    }
    if saturate {
        ideal = x.saturate_irrelevant(&ideal, intr)?;
        notes.push(String::from("saturated at the irrelevant ideal of the source"));
    }
    Ok(LocusReport { ideal, validity: preimage_validity(phi), notes })
}

/// Pullback of a Cartier divisor `(f)`.
#[derive(Clone, Debug)]
pub struct DivisorPullback {
    /// `⌈Φ*f⌉`
    pub divisor: RationalSection,
    /// `Φ*f / ⌈Φ*f⌉`
    pub unit: RadicalSection,
    pub report: LocusReport,
}

pub fn pullback_divisor(phi: &Description, f: &RationalSection) -> Result<DivisorPullback, SchemeError> {
    let y = phi.target();
    if f.is_zero() || crate::polynomial::section_degree(f, y.grading()).is_none() {
        return Err(SchemeError::Inhomogeneous);
    }
    let b = phi.pullback_section(f)?;
    if b.is_zero() {
        return Err(SchemeError::VanishesOnImage);
    }
    let divisor = b.ceiling();
    let unit = b.div(&RadicalSection::from_rational(phi.ring(), divisor.clone()))?;
    let m = phi.source().nvars();
    let ideal = Ideal::new(m, vec![divisor.numerator().clone()]);
    let mut notes = Vec::new();
    if !divisor.denominator().is_constant() {
        notes.push(format!("pole along {}", divisor.denominator().to_string_with(phi.source().names())));
    }
    Ok(DivisorPullback { divisor, unit, report: LocusReport { ideal, validity: preimage_validity(phi), notes } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Undefined {
    /// the point lies in the irrelevant locus of the source
    SourceIrrelevant,
    /// a denominator of the description vanishes
    NotRegular,
    /// the values lie in the irrelevant locus of the target
    TargetIrrelevant,
    /// branch values do not lie in one orbit
    BranchesDisagree,
}

impl Undefined {
    pub fn as_str(&self) -> &'static str {
        match self {
            Undefined::SourceIrrelevant => "point lies in the irrelevant locus of the source",
            Undefined::NotRegular => "a denominator vanishes at the point",
            Undefined::TargetIrrelevant => "values lie in the irrelevant locus of the target",
            Undefined::BranchesDisagree => "root branches give different target points",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointImage {
    /// representative Cox coordinates (principal branch) and the number of
    /// branch tuples checked
    Defined { values: Vec<AlgebraicValue>, branches: usize },
    Undefined(Undefined),
}

/// Image of the point with Cox coordinates `xi`.
pub fn map_point(phi: &Description, xi: &[Rat]) -> Result<PointImage, SchemeError> {
    let x = phi.source();
    let y = phi.target();
    if xi.len() != x.nvars() {
        return Err(SchemeError::Arity);
    }
    if in_irrelevant_locus(x, xi) {
        return Ok(PointImage::Undefined(Undefined::SourceIrrelevant));
    }
    if phi.ring().inverted_denominator.eval(xi).is_zero() {
        return Ok(PointImage::Undefined(Undefined::NotRegular));
    }
    let branches = evaluate(phi.components(), xi)?;
    let principal = branches[0].clone();
    let pattern = |v: &[AlgebraicValue]| -> Vec<bool> { v.iter().map(|a| a.is_zero()).collect() };
    let zeros = pattern(&principal);
    let ypt: Vec<Rat> = zeros.iter().map(|&z| if z { Rat::zero() } else { Rat::one() }).collect();
    if in_irrelevant_locus(y, &ypt) {
        return Ok(PointImage::Undefined(Undefined::TargetIrrelevant));
    }
    let support: Vec<usize> = (0..zeros.len()).filter(|&i| !zeros[i]).collect();
    let g = y.grading().restrict(&support);
    let chars = integer_kernel(&g.matrix(), &g.orders);
    for b in &branches[1..] {
        if pattern(b) != zeros {
            return Ok(PointImage::Undefined(Undefined::BranchesDisagree));
        }
        for ch in &chars {
            // ∏ b^m = ∏ p^m, cleared of negative exponents
            let mut lhs = AlgebraicValue::from_rat(&Rat::one());
            let mut rhs = AlgebraicValue::from_rat(&Rat::one());
            for (k, &i) in support.iter().enumerate() {
                let e = i64::try_from(&ch[k]).expect("character exponent overflow");
                let p = e.unsigned_abs() as u32;
                if e > 0 {
                    lhs = lhs.mul(&b[i].pow(p));
                    rhs = rhs.mul(&principal[i].pow(p));
                } else if e < 0 {
                    lhs = lhs.mul(&principal[i].pow(p));
                    rhs = rhs.mul(&b[i].pow(p));
                }
            }
            if lhs != rhs {
                return Ok(PointImage::Undefined(Undefined::BranchesDisagree));
            }
        }
    }
    Ok(PointImage::Defined { values: principal, branches: branches.len() })
}
