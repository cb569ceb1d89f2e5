//! Multi-valued sections `R · ∏ α_j^{l_j}` with `α_j^{r_j} = g_j`, the map
//! rings they live in, floors and ceilings, and exact evaluation at rational
//! points with consistent root branches.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groebner::Ideal;
use crate::polynomial::{
    coprime_refinement, section_degree, DegreeVector, Grading, Polynomial, RationalSection,
};
use crate::util::{rat_mod, rational_root};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalError {
    ZeroRadicand,
    /// A constant factor would need an irrational root, e.g. `root(2, 2)`.
    IrrationalConstant,
    /// Sum of terms with different radical parts.
    MixedRadicals,
    DifferentRings,
    DivisionByZero,
    /// The point lies in the zero locus of the inverted denominator.
    NotRegular,
}

impl fmt::Display for RadicalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RadicalError::ZeroRadicand => "zero radicand",
            RadicalError::IrrationalConstant => "constant radical is not rational",
            RadicalError::MixedRadicals => "sum of sections with different radical parts is not homogeneous",
            RadicalError::DifferentRings => "sections live in different map rings",
            RadicalError::DivisionByZero => "division by zero section",
            RadicalError::NotRegular => "point is outside the regular locus",
        };
        f.write_str(s)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RadicalError {}

/// `S[g^-1][α_1, ..., α_k] / (α_j^{r_j} - g_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRing {
    pub nvars: usize,
    pub grading: Grading,
    /// `(g_j, r_j)`: square-free, pairwise coprime, non-constant, `r_j >= 2`
    pub generators: Vec<(Polynomial, u32)>,
    pub inverted_denominator: Polynomial,
}

impl MapRing {
    pub fn trivial(grading: Grading) -> Arc<MapRing> {
        let n = grading.nvars;
        Arc::new(MapRing { nvars: n, grading, generators: Vec::new(), inverted_denominator: Polynomial::one(n) })
    }
}

/// `R · ∏ α_j^{l_j}` with `0 <= l_j < r_j`.
#[derive(Clone, Debug)]
pub struct RadicalSection {
    rational: RationalSection,
    exps: Vec<u32>,
    ring: Arc<MapRing>,
}

impl PartialEq for RadicalSection {
    fn eq(&self, o: &Self) -> bool {
        self.rational == o.rational && self.exps == o.exps && *self.ring == *o.ring
    }
}

impl Eq for RadicalSection {}

/// A product `c · ∏ q_i^{p_i}` of rational sections to rational powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalTerm {
    pub coeff: Rat,
    pub factors: Vec<(RationalSection, Rat)>,
}

impl RadicalTerm {
    pub fn constant(c: Rat) -> Self {
        RadicalTerm { coeff: c, factors: Vec::new() }
    }

    pub fn section(q: RationalSection) -> Self {
        RadicalTerm { coeff: Rat::one(), factors: vec![(q, Rat::one())] }
    }

    pub fn root(q: RationalSection, r: u32) -> Self {
        RadicalTerm { coeff: Rat::one(), factors: vec![(q, Rat::new(1.into(), r.into()))] }
    }

    pub fn mul(&self, o: &RadicalTerm) -> RadicalTerm {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        RadicalTerm { coeff: &self.coeff * &o.coeff, factors: f }
    }

    pub fn pow(&self, p: &Rat) -> Result<RadicalTerm, RadicalError> {
        let c = rat_power(&self.coeff, p).ok_or(RadicalError::IrrationalConstant)?;
        Ok(RadicalTerm { coeff: c, factors: self.factors.iter().map(|(q, e)| (q.clone(), e * p)).collect() })
    }
}

/// `c^p` when rational.
fn rat_power(c: &Rat, p: &Rat) -> Option<Rat> {
    if c.is_zero() {
        return if p.is_positive() { Some(Rat::zero()) } else { None };
    }
    let num = p.numer();
    let den = u32::try_from(p.denom()).ok()?;
    let k = i64::try_from(num).ok()?;
    let raised = crate::util::rat_pow(c, k);
    rational_root(&raised, den)
}

/// Sum of terms per component. Components may be empty (zero).
pub type Component = Vec<RadicalTerm>;

struct Flat {
    coeff: Rat,
    /// per basis element, total rational exponent
    exps: Vec<Rat>,
}

/// Build the smallest map ring containing every component and rewrite each
/// component in canonical form.
pub fn build_map_ring(
    grading: &Grading,
    components: &[Component],
) -> Result<(Arc<MapRing>, Vec<RadicalSection>), RadicalError> {
    let n = grading.nvars;
    let mut polys: Vec<Polynomial> = Vec::new();
    for c in components {
        for t in c {
            if t.coeff.is_zero() {
                continue;
            }
            for (q, _) in &t.factors {
                if q.is_zero() {
                    return Err(RadicalError::ZeroRadicand);
                }
                polys.push(q.numerator().clone());
                polys.push(q.denominator().clone());
            }
        }
    }
    let refinement = coprime_refinement(&polys).map_err(|_| RadicalError::ZeroRadicand)?;
    let mut basis = refinement.basis.clone();
    let k = basis.len();

    // flatten every term over the basis; retry with sign flips of basis
    // elements if a negative constant lands under an even root
    let flatten = |flips: &[bool]| -> Result<Vec<Vec<Flat>>, RadicalError> {
        let mut out = Vec::new();
        let mut idx = 0;
        for c in components {
            let mut terms = Vec::new();
            for t in c {
                if t.coeff.is_zero() {
                    continue;
                }
                let mut exps = vec![Rat::zero(); k];
                let mut coeff = t.coeff.clone();
                for (_, p) in &t.factors {
                    for part in 0..2 {
                        let row = &refinement.exponents[idx + part];
                        let mut u = refinement.units[idx + part].clone();
                        for j in 0..k {
                            if flips[j] && row[j] % 2 != 0 {
                                u = -u;
                            }
                        }
                        let sign = if part == 0 { p.clone() } else { -p.clone() };
                        coeff *= rat_power(&u, &sign).ok_or(RadicalError::IrrationalConstant)?;
                        for j in 0..k {
                            exps[j] += Rat::from_integer(row[j].into()) * &sign;
                        }
                    }
                    idx += 2;
                }
                terms.push(Flat { coeff, exps });
            }
            out.push(terms);
        }
        Ok(out)
    };

    let mut flips = vec![false; k];
    let flat = match flatten(&flips) {
        Ok(f) => f,
        Err(e) => {
            let mut found = None;
            if k <= 10 {
                for mask in 1u32..(1 << k) {
                    let fl: Vec<bool> = (0..k).map(|j| mask & (1 << j) != 0).collect();
                    if let Ok(f) = flatten(&fl) {
                        flips = fl;
                        found = Some(f);
                        break;
                    }
                }
            }
            found.ok_or(e)?
        }
    };
    for j in 0..k {
        if flips[j] {
            basis[j] = -&basis[j];
        }
    }

    let mut roots = vec![1u32; k];
    for c in &flat {
        for t in c {
            for j in 0..k {
                let d = u32::try_from(t.exps[j].denom()).expect("root index overflow");
                roots[j] = crate::util::lcm_u32(roots[j], d);
            }
        }
    }
    let gen_index: Vec<Option<usize>> = {
        let mut next = 0;
        roots
            .iter()
            .map(|&r| {
                if r > 1 {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let generators: Vec<(Polynomial, u32)> =
        (0..k).filter(|&j| roots[j] > 1).map(|j| (basis[j].clone(), roots[j])).collect();
    let ngen = generators.len();

    let mut out_rational: Vec<(RationalSection, Vec<u32>)> = Vec::new();
    for c in &flat {
        let mut acc: Option<(RationalSection, Vec<u32>)> = None;
        for t in c {
            let mut l = vec![0u32; ngen];
            let mut rational = RationalSection::constant(n, t.coeff.clone());
            for j in 0..k {
                let a = &t.exps[j] * Rat::from_integer(roots[j].into());
                debug_assert!(a.is_integer());
                let a = a.to_integer();
                let r = BigInt::from(roots[j]);
                let (q, rem) = a.div_mod_floor(&r);
                if let Some(g) = gen_index[j] {
                    l[g] = u32::try_from(&rem).unwrap();
                }
                let q = i64::try_from(&q).expect("exponent overflow");
                if q != 0 {
                    rational = &rational * &RationalSection::from_poly(basis[j].clone()).pow(q);
                }
            }
            acc = Some(match acc {
                None => (rational, l),
                Some((r0, l0)) => {
                    if l0 != l {
                        return Err(RadicalError::MixedRadicals);
                    }
                    (&r0 + &rational, l0)
                }
            });
        }
        let (r, l) = acc.unwrap_or_else(|| (RationalSection::zero(n), vec![0; ngen]));
        if r.is_zero() {
            out_rational.push((r, vec![0; ngen]));
        } else {
            out_rational.push((r, l));
        }
    }

    let mut den = Polynomial::one(n);
    for (r, _) in &out_rational {
        let d = r.denominator();
        if !d.is_constant() {
            let g = crate::polynomial::gcd(&den, d);
            den = &den * &d.exact_div(&g).unwrap();
        }
    }
    let ring = Arc::new(MapRing { nvars: n, grading: grading.clone(), generators, inverted_denominator: den.normalized() });
    let sections = out_rational.into_iter().map(|(rational, exps)| RadicalSection { rational, exps, ring: ring.clone() }).collect();
    Ok((ring, sections))
}

/// Map ring for single radicals `q_i^{1/r_i}`.
pub fn build_from_radicands(
    grading: &Grading,
    inputs: &[(RationalSection, u32)],
) -> Result<(Arc<MapRing>, Vec<RadicalSection>), RadicalError> {
    let comps: Vec<Component> = inputs.iter().map(|(q, r)| vec![RadicalTerm::root(q.clone(), *r)]).collect();
    build_map_ring(grading, &comps)
}

impl RadicalSection {
    pub fn from_rational(ring: &Arc<MapRing>, q: RationalSection) -> Self {
        RadicalSection { rational: q, exps: vec![0; ring.generators.len()], ring: ring.clone() }
    }

    pub fn ring(&self) -> &Arc<MapRing> {
        &self.ring
    }

    pub fn rational_part(&self) -> &RationalSection {
        &self.rational
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_single_valued(&self) -> bool {
        self.exps.iter().all(|&l| l == 0)
    }

    pub fn floor(&self) -> RationalSection {
        self.rational.clone()
    }

    pub fn ceiling(&self) -> RationalSection {
        let mut c = self.rational.clone();
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                c = &c * &RationalSection::from_poly(self.ring.generators[j].0.clone());
            }
        }
        c
    }

    /// Smallest `e >= 1` with `self^e` single-valued, and that power.
    pub fn single_valued_power(&self) -> (u32, RationalSection) {
        let mut e = 1u32;
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                let r = self.ring.generators[j].1;
                e = crate::util::lcm_u32(e, r / (l as u64).gcd(&(r as u64)) as u32);
            }
        }
        (e, self.pow(e as i64).unwrap().rational)
    }

    fn check_ring(&self, o: &RadicalSection) -> Result<(), RadicalError> {
        if Arc::ptr_eq(&self.ring, &o.ring) || *self.ring == *o.ring {
            Ok(())
        } else {
            Err(RadicalError::DifferentRings)
        }
    }

    pub fn mul(&self, o: &RadicalSection) -> Result<RadicalSection, RadicalError> {
        self.check_ring(o)?;
        let mut rational = &self.rational * &o.rational;
        let mut exps = Vec::with_capacity(self.exps.len());
        for (j, (a, b)) in self.exps.iter().zip(o.exps.iter()).enumerate() {
            let (g, r) = &self.ring.generators[j];
            let mut l = a + b;
            if l >= *r {
                l -= r;
                rational = &rational * &RationalSection::from_poly(g.clone());
            }
            exps.push(l);
        }
        if rational.is_zero() {
            exps.iter_mut().for_each(|l| *l = 0);
        }
        Ok(RadicalSection { rational, exps, ring: self.ring.clone() })
    }

    pub fn inverse(&self) -> Result<RadicalSection, RadicalError> {
        let mut rational = self.rational.inverse().ok_or(RadicalError::DivisionByZero)?;
        let mut exps = Vec::with_capacity(self.exps.len());
        for (j, &l) in self.exps.iter().enumerate() {
            let (g, r) = &self.ring.generators[j];
            if l == 0 {
                exps.push(0);
            } else {
                rational = &rational * &RationalSection::from_poly(g.clone()).inverse().unwrap();
                exps.push(r - l);
            }
        }
        Ok(RadicalSection { rational, exps, ring: self.ring.clone() })
    }

    pub fn div(&self, o: &RadicalSection) -> Result<RadicalSection, RadicalError> {
        self.mul(&o.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<RadicalSection, RadicalError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = RadicalSection::from_rational(&self.ring, RationalSection::one(self.ring.nvars));
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    pub fn add(&self, o: &RadicalSection) -> Result<RadicalSection, RadicalError> {
        self.check_ring(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.exps != o.exps {
            return Err(RadicalError::MixedRadicals);
        }
        let rational = &self.rational + &o.rational;
        let exps = if rational.is_zero() { vec![0; self.exps.len()] } else { self.exps.clone() };
        Ok(RadicalSection { rational, exps, ring: self.ring.clone() })
    }

    pub fn neg(&self) -> RadicalSection {
        RadicalSection { rational: -&self.rational, exps: self.exps.clone(), ring: self.ring.clone() }
    }

    pub fn sub(&self, o: &RadicalSection) -> Result<RadicalSection, RadicalError> {
        self.add(&o.neg())
    }

    /// Degree `deg R + Σ l_j/r_j · deg g_j`; `None` if some part is
    /// inhomogeneous or the section is zero.
    pub fn degree(&self) -> Option<DegreeVector> {
        let gr = &self.ring.grading;
        let mut d = section_degree(&self.rational, gr)?;
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                let (g, r) = &self.ring.generators[j];
                let dg = crate::polynomial::degree_of(g, gr)?;
                d = gr.add(&d, &gr.scale(&dg, &Rat::new(l.into(), (*r).into())));
            }
        }
        Some(d)
    }

    /// Same value written as a term, for rebuilding in another ring.
    pub fn to_term(&self) -> RadicalTerm {
        let mut t = RadicalTerm::section(self.rational.clone());
        for (j, &l) in self.exps.iter().enumerate() {
            if l > 0 {
                let (g, r) = &self.ring.generators[j];
                t.factors.push((RationalSection::from_poly(g.clone()), Rat::new(l.into(), (*r).into())));
            }
        }
        t
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let rs = self.rational.to_string_with(names);
        let single = self.is_single_valued();
        if single || rs != "1" {
            if single || !(self.rational.is_polynomial() && self.rational.numerator().num_terms() > 1) {
                parts.push(rs);
            } else {
                parts.push(format!("({})", rs));
            }
        }
        for (j, &l) in self.exps.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let (g, r) = &self.ring.generators[j];
            let base = format!("root({}, {})", g.to_string_with(names), r);
            parts.push(if l == 1 { base } else { format!("{}^{}", base, l) });
        }
        parts.join(" * ")
    }
}

impl fmt::Display for RadicalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::polynomial::default_names("x", self.ring.nvars);
        f.write_str(&self.to_string_with(&names))
    }
}

/// `I ∩ S[g^-1]` for the ideal generated by the sections: the ideal of their
/// ceilings, given by numerators (denominators are units there).
pub fn eliminate_to_base(nvars: usize, gens: &[RadicalSection]) -> Ideal {
    Ideal::new(nvars, gens.iter().map(|b| b.ceiling().numerator().clone()).collect())
}

// ---------------------------------------------------------------------------
// exact values

/// `modulus^{1/index} · e^{2πi·phase}` with `phase ∈ [0, 1)` and the index
/// minimal. Zero is `(0, 1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicValue {
    pub modulus: Rat,
    pub index: u32,
    pub phase: Rat,
}

fn small_primes(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl AlgebraicValue {
    pub fn zero() -> Self {
        AlgebraicValue { modulus: Rat::zero(), index: 1, phase: Rat::zero() }
    }

    pub fn from_rat(c: &Rat) -> Self {
        let phase = if c.is_negative() { Rat::new(1.into(), 2.into()) } else { Rat::zero() };
        AlgebraicValue { modulus: c.abs(), index: 1, phase }
    }

    /// Principal `r`-th root of a rational.
    pub fn principal_root(c: &Rat, r: u32) -> Self {
        let phase = if c.is_negative() { Rat::new(1.into(), (2 * r).into()) } else { Rat::zero() };
        AlgebraicValue { modulus: c.abs(), index: r, phase }.canonical()
    }

    pub fn root_of_unity(k: i64, r: u32) -> Self {
        AlgebraicValue { modulus: Rat::one(), index: 1, phase: rat_mod(&Rat::new(k.into(), r.into()), &Rat::one()) }
    }

    pub fn is_zero(&self) -> bool {
        self.modulus.is_zero()
    }

    fn canonical(mut self) -> Self {
        if self.modulus.is_zero() {
            return AlgebraicValue::zero();
        }
        self.phase = rat_mod(&self.phase, &Rat::one());
        for p in small_primes(self.index) {
            while self.index.is_multiple_of(p) {
                match rational_root(&self.modulus, p) {
                    Some(m) => {
                        self.modulus = m;
                        self.index /= p;
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn mul(&self, o: &AlgebraicValue) -> AlgebraicValue {
        if self.is_zero() || o.is_zero() {
            return AlgebraicValue::zero();
        }
        let r = crate::util::lcm_u32(self.index, o.index);
        let m = num_traits::pow(self.modulus.clone(), (r / self.index) as usize)
            * num_traits::pow(o.modulus.clone(), (r / o.index) as usize);
        AlgebraicValue { modulus: m, index: r, phase: &self.phase + &o.phase }.canonical()
    }

    pub fn pow(&self, k: u32) -> AlgebraicValue {
        let mut out = AlgebraicValue::from_rat(&Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.index != 1 {
            return None;
        }
        if self.phase.is_zero() {
            Some(self.modulus.clone())
        } else if self.phase == Rat::new(1.into(), 2.into()) {
            Some(-self.modulus.clone())
        } else {
            None
        }
    }

    /// Real modulus raised to an integer power, exactly: `|v|^{index}`.
    pub fn modulus_power(&self) -> (Rat, u32) {
        (self.modulus.clone(), self.index)
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let m = if self.index == 1 { self.modulus.to_string() } else { format!("{}^(1/{})", self.modulus, self.index) };
        if self.phase.is_zero() {
            f.write_str(&m)
        } else {
            write!(f, "{}*exp(2*pi*i*{})", m, self.phase)
        }
    }
}

/// All values of the sections at a rational point, one vector per
/// consistent choice of root branches (duplicates removed, first choice is
/// the principal one).
pub fn evaluate(sections: &[RadicalSection], point: &[Rat]) -> Result<Vec<Vec<AlgebraicValue>>, RadicalError> {
    let ring = match sections.first() {
        Some(s) => s.ring.clone(),
        None => return Ok(vec![Vec::new()]),
    };
    for s in sections {
        s.check_ring(&RadicalSection { rational: RationalSection::one(ring.nvars), exps: vec![], ring: ring.clone() })?;
    }
    if ring.inverted_denominator.eval(point).is_zero() {
        return Err(RadicalError::NotRegular);
    }
    let mut rational_values = Vec::new();
    for s in sections {
        rational_values.push(s.rational.eval(point).ok_or(RadicalError::NotRegular)?);
    }
    let omegas: Vec<AlgebraicValue> =
        ring.generators.iter().map(|(g, r)| AlgebraicValue::principal_root(&g.eval(point), *r)).collect();
    let used: Vec<usize> = (0..ring.generators.len())
        .filter(|&j| sections.iter().any(|s| s.exps[j] > 0) && !omegas[j].is_zero())
        .collect();
    let mut out: Vec<Vec<AlgebraicValue>> = Vec::new();
    let mut branch = vec![0u32; used.len()];
    loop {
        let mut vals = Vec::new();
        for (s, rv) in sections.iter().zip(rational_values.iter()) {
            let mut v = AlgebraicValue::from_rat(rv);
            for (j, &l) in s.exps.iter().enumerate() {
                if l == 0 {
                    continue;
                }
                let mut w = omegas[j].clone();
                if let Some(pos) = used.iter().position(|&u| u == j) {
                    w = w.mul(&AlgebraicValue::root_of_unity(branch[pos] as i64, ring.generators[j].1));
                }
                v = v.mul(&w.pow(l));
            }
            vals.push(v);
        }
        if !out.contains(&vals) {
            out.push(vals);
        }
        // next branch
        let mut i = 0;
        loop {
            if i == used.len() {
                return Ok(out);
            }
            branch[i] += 1;
            if branch[i] < ring.generators[used[i]].1 {
                break;
            }
            branch[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::default_names;
    use crate::util::rat;

    fn names(n: usize) -> Vec<String> {
        default_names("x", n)
    }

    fn q(s: &str, n: usize) -> RationalSection {
        RationalSection::from_poly(Polynomial::parse(s, &names(n)).unwrap())
    }

    fn g(n: usize) -> Grading {
        Grading::from_i64(&[vec![1; n]])
    }

    #[test]
    fn build_simple() {
        let (ring, s) = build_from_radicands(&g(1), &[(q("x1", 1), 2)]).unwrap();
        assert_eq!(ring.generators, vec![(Polynomial::var(1, 0), 2)]);
        assert_eq!(s[0].exponents(), &[1]);
        assert_eq!(s[0].to_string(), "root(x1, 2)");
        assert!(!s[0].is_single_valued());
        assert_eq!(s[0].floor(), RationalSection::one(1));
        assert_eq!(s[0].ceiling(), q("x1", 1));
        let sq = s[0].mul(&s[0]).unwrap();
        assert!(sq.is_single_valued());
        assert_eq!(sq.floor(), q("x1", 1));
    }

    #[test]
    fn build_merges_roots() {
        // (s, 6), (s^3, 2): s^{3/2} = s * alpha^3
        let (ring, s) = build_from_radicands(&g(2), &[(q("x1", 2), 6), (q("x1^3", 2), 2)]).unwrap();
        assert_eq!(ring.generators, vec![(Polynomial::var(2, 0), 6)]);
        assert_eq!(s[1].exponents(), &[3]);
        assert_eq!(s[1].floor(), q("x1", 2));
        // (x1 x2^2)^{1/4} = x1^{1/4} x2^{1/2}
        let (ring, s) = build_from_radicands(&g(2), &[(q("x1*x2^2", 2), 4)]).unwrap();
        assert_eq!(ring.generators, vec![(Polynomial::var(2, 0), 4), (Polynomial::var(2, 1), 2)]);
        assert_eq!(s[0].exponents(), &[1, 1]);
    }

    #[test]
    fn products_fold() {
        let comps = vec![
            vec![RadicalTerm::root(q("x1", 2), 2)],
            vec![RadicalTerm::section(q("x2", 2)).mul(&RadicalTerm::root(q("x1", 2), 2))],
        ];
        let (_, s) = build_map_ring(&g(2), &comps).unwrap();
        assert_eq!(s[0].mul(&s[1]).unwrap().floor(), q("x1*x2", 2));
        let (_, s) = build_from_radicands(&g(4), &[(q("x4", 4), 3)]).unwrap();
        let a = &s[0];
        assert_eq!(a.pow(2).unwrap().mul(a).unwrap().floor(), q("x4", 4));
        assert_eq!(a.div(a).unwrap().floor(), RationalSection::one(4));
    }

    #[test]
    fn floor_and_ceiling() {
        // (t^2 + s) * s^{3/2} over (s, 6)
        let comps = vec![
            vec![RadicalTerm::root(q("x1", 2), 6)],
            vec![RadicalTerm::section(q("x2^2 + x1", 2)).mul(&RadicalTerm {
                coeff: rat(1),
                factors: vec![(q("x1", 2), Rat::new(3.into(), 2.into()))],
            })],
        ];
        let (_, s) = build_map_ring(&g(2), &comps).unwrap();
        assert_eq!(s[1].floor(), q("x1*(x2^2 + x1)", 2));
        assert_eq!(s[1].ceiling(), q("x1^2*(x2^2 + x1)", 2));
        let inv = s[1].inverse().unwrap();
        assert_eq!(inv.floor(), s[1].ceiling().inverse().unwrap());
    }

    #[test]
    fn mixed_sums_rejected() {
        let comps = vec![vec![RadicalTerm::root(q("x1", 2), 2), RadicalTerm::section(q("x2", 2))]];
        assert_eq!(build_map_ring(&g(2), &comps).unwrap_err(), RadicalError::MixedRadicals);
        assert_eq!(build_from_radicands(&g(1), &[(q("2", 1), 2)]).unwrap_err(), RadicalError::IrrationalConstant);
        // negative unit under an even root is absorbed by the sign of the radicand
        let (ring, _) = build_from_radicands(&g(2), &[(q("x2 - x1", 2), 2)]).unwrap();
        assert_eq!(ring.generators[0].0, Polynomial::parse("x2 - x1", &names(2)).unwrap());
    }

    #[test]
    fn elimination_to_base() {
        let comps = vec![
            vec![RadicalTerm::section(q("x2", 2)).mul(&RadicalTerm::root(q("x1", 2), 2))],
            vec![RadicalTerm::section(q("x1", 2))],
        ];
        let (_, s) = build_map_ring(&g(2), &comps).unwrap();
        let i = eliminate_to_base(2, &s);
        let gb = crate::groebner::canonical(&i, &crate::Never).unwrap();
        assert_eq!(gb.generators(), &[Polynomial::var(2, 0)]);
    }

    #[test]
    fn evaluation_branches() {
        // (s^{1/6}, s^{3/2}(t^2 + s)) at (64, -1)
        let comps = vec![
            vec![RadicalTerm::root(q("x1", 2), 6)],
            vec![RadicalTerm::section(q("x2^2 + x1", 2)).mul(&RadicalTerm {
                coeff: rat(1),
                factors: vec![(q("x1", 2), Rat::new(3.into(), 2.into()))],
            })],
        ];
        let (_, s) = build_map_ring(&g(2), &comps).unwrap();
        let vals = evaluate(&s, &[rat(64), rat(-1)]).unwrap();
        assert_eq!(vals.len(), 6);
        assert_eq!(vals[0], vec![AlgebraicValue::from_rat(&rat(2)), AlgebraicValue::from_rat(&rat(33280))]);
        let bad = vec![AlgebraicValue::from_rat(&rat(2)), AlgebraicValue::from_rat(&rat(-33280))];
        assert!(!vals.contains(&bad));
        assert!(vals.contains(&vec![
            AlgebraicValue::from_rat(&rat(-2)),
            AlgebraicValue::from_rat(&rat(-33280))
        ]));

        // (sqrt(x1), 0, x2)
        let comps = vec![vec![RadicalTerm::root(q("x1", 2), 2)], vec![], vec![RadicalTerm::section(q("x2", 2))]];
        let (_, s) = build_map_ring(&g(2), &comps).unwrap();
        let v = evaluate(&s, &[rat(0), rat(1)]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0][2], AlgebraicValue::from_rat(&rat(1)));
        let v = evaluate(&s, &[rat(1), rat(0)]).unwrap();
        let r: Vec<Vec<Option<Rat>>> = v.iter().map(|p| p.iter().map(|x| x.as_rational()).collect()).collect();
        assert_eq!(r, vec![vec![Some(rat(1)), Some(rat(0)), Some(rat(0))], vec![Some(rat(-1)), Some(rat(0)), Some(rat(0))]]);
    }

    #[test]
    fn algebraic_values() {
        let a = AlgebraicValue::principal_root(&rat(-8), 3);
        assert_eq!(a.modulus, rat(2));
        assert_eq!(a.index, 1);
        assert_eq!(a.phase, Rat::new(1.into(), 6.into()));
        assert_eq!(a.pow(3).as_rational(), Some(rat(-8)));
        let b = AlgebraicValue::principal_root(&rat(2), 2);
        assert_eq!(b.mul(&b).as_rational(), Some(rat(2)));
    }
}
