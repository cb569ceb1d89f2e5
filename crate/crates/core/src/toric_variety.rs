//! Toric varieties as Cox data: grading of the Cox ring, irrelevant ideal,
//! degree-zero Laurent monomials and homogeneous localizations.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::groebner::{self, GroebnerError, Ideal};
use crate::lattice_fan::{
    hermite_basis, integer_kernel, smith_normal_form, AbelianGroupPresentation, Fan, FanError, IntMatrix,
};
use crate::polynomial::{self, default_names, gcd, section_degree, Grading, Polynomial, RationalSection};
use crate::Interrupt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyError {
    Fan(FanError),
    /// Variable names do not match the number of rays.
    NameCount { expected: usize, got: usize },
    DuplicateName(String),
    /// A weight row or irrelevant monomial has the wrong length.
    Arity,
    /// Torsion orders must be at least 2 and match the torsion rows.
    TorsionOrder,
    /// The operation needs a fan but the variety was built from Cox data.
    FanRequired,
    Inhomogeneous,
    EmptySupport,
}

impl From<FanError> for VarietyError {
    fn from(e: FanError) -> Self {
        VarietyError::Fan(e)
    }
}

impl fmt::Display for VarietyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyError::Fan(e) => write!(f, "invalid fan: {}", e),
            VarietyError::NameCount { expected, got } => {
                write!(f, "expected {} variable names, got {}", expected, got)
            }
            VarietyError::DuplicateName(n) => write!(f, "duplicate variable name '{}'", n),
            VarietyError::Arity => f.write_str("weight or monomial arity does not match the number of variables"),
            VarietyError::TorsionOrder => f.write_str("inconsistent torsion orders"),
            VarietyError::FanRequired => f.write_str("fan required: variety was given by Cox data only"),
            VarietyError::Inhomogeneous => f.write_str("polynomial is not homogeneous"),
            VarietyError::EmptySupport => f.write_str("empty set of variables"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VarietyError {}

#[derive(Clone, Debug)]
pub struct ToricVariety {
    fan: Option<Fan>,
    names: Vec<String>,
    grading: Grading,
    class_group: AbelianGroupPresentation,
    /// exponent vectors of the irrelevant monomials, one per maximal cone
    irrelevant: Vec<Vec<u32>>,
    degree0: Vec<Vec<BigInt>>,
}

fn check_names(names: &[String]) -> Result<(), VarietyError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(VarietyError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

impl ToricVariety {
    /// Cox data of a fan. `names` may cover the rays only (virtual-ray
    /// variables then get names `v1, v2, ...`) or all rays.
    pub fn from_fan(fan: Fan, names: Option<Vec<String>>) -> Result<Self, VarietyError> {
        let nreal = fan.rays().len();
        let n = nreal + fan.virtual_rays().len();
        let names = match names {
            None => {
                let mut v = default_names("x", nreal);
                v.extend(default_names("v", n - nreal));
                v
            }
            Some(mut v) if v.len() == nreal && n > nreal => {
                v.extend(default_names("v", n - nreal));
                v
            }
            Some(v) if v.len() == n => v,
            Some(v) => return Err(VarietyError::NameCount { expected: nreal, got: v.len() }),
        };
        check_names(&names)?;

        // Cl = Z^n / image of the transposed ray matrix
        let rt = fan.ray_matrix().transpose();
        let s = smith_normal_form(&rt);
        let diag = s.diagonal();
        let rank = s.rank();
        let free_rows: Vec<Vec<BigInt>> = (rank..n).map(|i| s.u.row(i)).collect();
        let free = hermite_basis(&free_rows, n);
        let mut torsion = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in diag.iter().enumerate().take(rank) {
            if d.abs() > BigInt::one() {
                torsion.push(s.u.row(i));
                orders.push(d.abs());
            }
        }
        let grading = Grading::new(n, free, torsion, orders.clone());
        let class_group = AbelianGroupPresentation { free_rank: n - rank, torsion_orders: orders };

        let irrelevant = fan
            .maximal_cones()
            .iter()
            .map(|c| (0..n).map(|i| u32::from(!c.contains_ray(i))).collect())
            .collect();
        let degree0 = integer_kernel(&grading.matrix(), &grading.orders);
        Ok(ToricVariety { fan: Some(fan), names, grading, class_group, irrelevant, degree0 })
    }

    /// A fanless variety from weights, torsion rows (with orders) and the
    /// irrelevant monomials (exponent vectors).
    pub fn from_cox_data(
        weights: Vec<Vec<i64>>,
        torsion: Vec<(Vec<i64>, i64)>,
        irrelevant: Vec<Vec<u32>>,
        names: Option<Vec<String>>,
    ) -> Result<Self, VarietyError> {
        let n = weights
            .first()
            .map(|r| r.len())
            .or_else(|| torsion.first().map(|r| r.0.len()))
            .or_else(|| names.as_ref().map(|v| v.len()))
            .ok_or(VarietyError::Arity)?;
        if weights.iter().any(|r| r.len() != n) || torsion.iter().any(|r| r.0.len() != n) {
            return Err(VarietyError::Arity);
        }
        if irrelevant.iter().any(|m| m.len() != n) {
            return Err(VarietyError::Arity);
        }
        if torsion.iter().any(|(_, o)| *o < 2) {
            return Err(VarietyError::TorsionOrder);
        }
        let names = names.unwrap_or_else(|| default_names("x", n));
        if names.len() != n {
            return Err(VarietyError::NameCount { expected: n, got: names.len() });
        }
        check_names(&names)?;
        let big = |r: &Vec<i64>| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let grading = Grading::new(
            n,
            weights.iter().map(big).collect(),
            torsion.iter().map(|(r, _)| big(r)).collect(),
            torsion.iter().map(|(_, o)| BigInt::from(*o)).collect(),
        );
        let degree0 = integer_kernel(&grading.matrix(), &grading.orders);
        let class_group = class_group_of(&grading, &degree0);
        let irrelevant = if irrelevant.is_empty() { vec![vec![0; n]] } else { irrelevant };
        Ok(ToricVariety { fan: None, names, grading, class_group, irrelevant, degree0 })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn class_group(&self) -> &AbelianGroupPresentation {
        &self.class_group
    }

    pub fn has_fan(&self) -> bool {
        self.fan.is_some()
    }

    pub fn fan(&self) -> Result<&Fan, VarietyError> {
        self.fan.as_ref().ok_or(VarietyError::FanRequired)
    }

    /// Number of variables coming from actual (non-virtual) rays.
    pub fn real_rays(&self) -> usize {
        self.fan.as_ref().map_or(self.nvars(), |f| f.rays().len())
    }

    pub fn is_virtual(&self, i: usize) -> bool {
        i >= self.real_rays()
    }

    pub fn irrelevant_monomials(&self) -> &[Vec<u32>] {
        &self.irrelevant
    }

    pub fn irrelevant_ideal(&self) -> Ideal {
        let n = self.nvars();
        Ideal::new(n, self.irrelevant.iter().map(|e| Polynomial::monomial(n, e.clone(), crate::Rat::one())).collect())
    }

    /// Variable sets of the components of the irrelevant locus, i.e. the
    /// minimal primes `<x_i : i in S>` of the irrelevant ideal.
    pub fn irrelevant_components(&self) -> Vec<Vec<usize>> {
        minimal_covers(&self.irrelevant)
    }

    /// Basis of the lattice of degree-zero Laurent exponents.
    pub fn degree0_lattice(&self) -> &[Vec<BigInt>] {
        &self.degree0
    }

    /// Laurent monomials in `support` generating the degree-zero part of the
    /// field `Q(x_i : i in support)`.
    pub fn degree0_generators(&self, support: &[usize]) -> Result<Vec<RationalSection>, VarietyError> {
        if support.is_empty() {
            return Err(VarietyError::EmptySupport);
        }
        let n = self.nvars();
        let g = self.grading.restrict(support);
        let ker = integer_kernel(&g.matrix(), &g.orders);
        Ok(ker
            .iter()
            .map(|v| {
                let mut e = vec![0i64; n];
                for (k, &i) in support.iter().enumerate() {
                    e[i] = i64::try_from(&v[k]).expect("exponent overflow");
                }
                RationalSection::laurent_monomial(n, &e)
            })
            .collect())
    }

    /// Whether `q` lies in the homogeneous localization `S[h^-1]_0`.
    pub fn chart_ring_membership(&self, h: &Polynomial, q: &RationalSection) -> Result<bool, VarietyError> {
        if h.is_zero() || !polynomial::is_homogeneous(h, &self.grading) {
            return Err(VarietyError::Inhomogeneous);
        }
        if q.is_zero() {
            return Ok(true);
        }
        match section_degree(q, &self.grading) {
            Some(d) if d.is_zero() => {}
            _ => return Ok(false),
        }
        let mut d = q.denominator().clone();
        loop {
            if d.is_constant() {
                return Ok(true);
            }
            let g = gcd(&d, h);
            if g.is_constant() {
                return Ok(false);
            }
            d = d.exact_div(&g).unwrap();
        }
    }

    /// True iff no power of the irrelevant ideal lies in `I`.
    pub fn is_relevant_ideal(&self, ideal: &Ideal, intr: &dyn Interrupt) -> Result<bool, GroebnerError> {
        let n = self.nvars();
        for e in &self.irrelevant {
            let mu = Polynomial::monomial(n, e.clone(), crate::Rat::one());
            let s = groebner::saturate_by_poly(ideal, &mu, intr)?;
            if !groebner::ideal_membership(&Polynomial::one(n), &s, intr)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `(I : B^∞)`
    pub fn saturate_irrelevant(&self, ideal: &Ideal, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
        groebner::saturate(ideal, &self.irrelevant_ideal(), intr)
    }

    /// Whether the fan is complete; `FanRequired` for Cox data.
    pub fn is_complete(&self) -> Result<bool, VarietyError> {
        Ok(self.fan()?.is_complete())
    }

    pub fn is_smooth(&self) -> Result<bool, VarietyError> {
        Ok(self.fan()?.is_smooth())
    }

    pub fn parse_polynomial(&self, s: &str) -> Result<Polynomial, polynomial::PolyParseError> {
        Polynomial::parse(s, &self.names)
    }
}

fn class_group_of(g: &Grading, kernel: &[Vec<BigInt>]) -> AbelianGroupPresentation {
    // Cl = Z^n / (degree-zero lattice)
    let n = g.nvars;
    let s = smith_normal_form(&IntMatrix::from_rows(kernel.to_vec(), n));
    let torsion_orders = s.diagonal().into_iter().filter(|d| d.abs() > BigInt::one()).map(|d| d.abs()).collect();
    AbelianGroupPresentation { free_rank: n - s.rank(), torsion_orders }
}

/// Minimal sets of variables meeting the support of every monomial.
pub(crate) fn minimal_covers(monomials: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut covers: Vec<Vec<usize>> = vec![Vec::new()];
    for m in monomials {
        let support: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
        if support.is_empty() {
            return Vec::new();
        }
        let mut next: Vec<Vec<usize>> = Vec::new();
        for c in &covers {
            if c.iter().any(|i| support.contains(i)) {
                next.push(c.clone());
            } else {
                for &i in &support {
                    let mut d = c.clone();
                    d.push(i);
                    d.sort_unstable();
                    next.push(d);
                }
            }
        }
        next.sort();
        next.dedup();
        let minimal: Vec<Vec<usize>> = next
            .iter()
            .filter(|c| !next.iter().any(|d| d != *c && d.iter().all(|i| c.contains(i))))
            .cloned()
            .collect();
        covers = minimal;
    }
    covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    covers
}

/// Two gradings of the same ring define the same class group quotient.
pub fn gradings_equivalent(a: &Grading, b: &Grading) -> bool {
    a.nvars == b.nvars && integer_kernel(&a.matrix(), &a.orders) == integer_kernel(&b.matrix(), &b.orders)
}

/// A closed subscheme given by a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct Subscheme {
    ideal: Ideal,
}

impl Subscheme {
    pub fn new(x: &ToricVariety, ideal: Ideal) -> Result<Self, VarietyError> {
        if ideal.nvars() != x.nvars() {
            return Err(VarietyError::Arity);
        }
        if !groebner::is_homogeneous_ideal(&ideal, x.grading()) {
            return Err(VarietyError::Inhomogeneous);
        }
        Ok(Subscheme { ideal })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Same subscheme: equal saturations at the irrelevant ideal.
    pub fn same_as(&self, other: &Subscheme, x: &ToricVariety, intr: &dyn Interrupt) -> Result<bool, GroebnerError> {
        let a = x.saturate_irrelevant(&self.ideal, intr)?;
        let b = x.saturate_irrelevant(&other.ideal, intr)?;
        groebner::ideals_equal(&a, &b, intr)
    }
}

impl fmt::Display for ToricVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .grading
            .free
            .iter()
            .map(|r| format!("{:?}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .collect();
        write!(f, "Cox ring Q[{}] graded by {}", self.names.join(", "), rows.join(" "))
    }
}
