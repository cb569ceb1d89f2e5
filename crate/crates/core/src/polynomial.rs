//! Sparse multivariate polynomials over Q, rational sections, gcds,
//! square-free parts, coprime refinement and multigradings.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::util::{int_rat, rat_mod};
use crate::Rat;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rat)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing lexicographic order (x1 > x2 > ...).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.involves(i)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c * Rat::from_integer(e[i].into()));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `images[i]` for the i-th variable. All images share one ring.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let n = images.first().map_or(0, |p| p.nvars);
        let mut out = Polynomial::zero(n);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Move variable `i` to variable `map[i]` of a ring with `nvars` variables.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; nvars];
                for (i, &k) in e.iter().enumerate() {
                    f[map[i]] += k;
                }
                (f, c.clone())
            }),
        )
    }

    /// Embed into a ring with more variables, keeping indices.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.rename(nvars, &map)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rat::one()
        } else {
            Rat::new(num, den)
        }
    }

    /// Scale to content one with a positive lexicographically leading
    /// coefficient. Zero stays zero.
    pub fn normalized(&self) -> Polynomial {
        self.split_unit().1
    }

    /// `(c, p)` with `self = c * p` and `p` normalized.
    pub fn split_unit(&self) -> (Rat, Polynomial) {
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let mut c = self.content();
        if self.leading_term().unwrap().1.is_negative() {
            c = -c;
        }
        (c.clone(), self.scale(&c.recip()))
    }

    pub fn is_normalized(&self) -> bool {
        !self.is_zero() && *self == self.normalized()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading_term().unwrap();
        let mut q = Polynomial::zero(self.nvars);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading_term() {
            if !re.iter().zip(de.iter()).all(|(a, b)| a >= b) {
                return None;
            }
            let m: Exponents = re.iter().zip(de.iter()).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            r = &r - &d.mul_monomial(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); d + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, i: usize) -> Polynomial {
        self.coefficients_in(i).pop().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    fn var_power(&self, i: usize, k: u32) -> Exponents {
        let mut e = vec![0; self.nvars];
        e[i] = k;
        e
    }

    /// Evaluate against variable names (`x1`, ... by default).
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names: Some(names) }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }

    /// Parse `3/2*x1^2*x2 - x3` style text against the given variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<Polynomial, PolyParseError> {
        let mut p = PolyParser { s: text.as_bytes(), pos: 0, names };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected input"));
        }
        Ok(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyDisplay { p: self, names: None })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyDisplay { p: self, names: None })
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    names: Option<&'a [String]>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.p.terms().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                parts.push(a.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = match self.names {
                    Some(n) => n[i].clone(),
                    None => format!("x{}", i + 1),
                };
                if x == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{}^{}", name, x));
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                assert_eq!(self.nvars, rhs.nvars, "polynomials live in different rings");
                let f: fn(&Polynomial, &Polynomial) -> Polynomial = $body;
                f(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let mut p = a.clone();
    for (e, c) in &b.terms {
        p.add_term(e.clone(), c.clone());
    }
    p
});

binop!(Sub, sub, |a, b| {
    let mut p = a.clone();
    for (e, c) in &b.terms {
        p.add_term(e.clone(), -c.clone());
    }
    p
});

binop!(Mul, mul, |a, b| {
    let mut p = Polynomial::zero(a.nvars);
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            p.add_term(e1.iter().zip(e2).map(|(x, y)| x + y).collect(), c1 * c2);
        }
    }
    p
});

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rat::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Total order used to sort bases deterministically: by total degree, then
/// term by term with lexicographically larger exponents first.
pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        let mut ia = a.terms();
        let mut ib = b.terms();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    let o = eb.cmp(ea).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    })
}

// ---------------------------------------------------------------------------
// gcd and friends

/// Greatest common divisor, normalized. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars, g.nvars);
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    gcd_rec(&f.normalized(), &g.normalized())
}

fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars;
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    if f == g {
        return f.normalized();
    }
    let v = (0..n).find(|&i| f.involves(i) || g.involves(i)).unwrap();
    if !f.involves(v) {
        return gcd_rec(f, &content_in(g, v));
    }
    if !g.involves(v) {
        return gcd_rec(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_rec(&cf, &cg);
    let pf = f.exact_div(&cf).unwrap().normalized();
    let pg = g.exact_div(&cg).unwrap().normalized();
    let (mut a, mut b) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
    let last = loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break b;
        }
        if !r.involves(v) {
            break Polynomial::one(n);
        }
        a = b;
        b = primitive_in(&r, v);
    };
    (&c * &primitive_in(&last, v)).normalized()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `x_v`.
fn content_in(f: &Polynomial, v: usize) -> Polynomial {
    let mut acc: Option<Polynomial> = None;
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c.normalized(),
            Some(a) => gcd_rec(&a, &c.normalized()),
        });
        if acc.as_ref().unwrap().is_constant() {
            return Polynomial::one(f.nvars);
        }
    }
    acc.unwrap_or_else(|| Polynomial::zero(f.nvars))
}

fn primitive_in(f: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(f, v);
    f.exact_div(&c).unwrap().normalized()
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = b.degree_in(v);
    let lb = b.leading_coefficient_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let k = r.degree_in(v) - n;
        let lr = r.leading_coefficient_in(v);
        let t = lr.mul_monomial(&r.var_power(v, k), &Rat::one());
        r = &(&lb * &r) - &(&t * b);
    }
    r
}

/// Product of the distinct irreducible factors of `f`, normalized.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut g = f.normalized();
    for i in f.variables() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &f.derivative(i));
    }
    Ok(f.exact_div(&g).unwrap().normalized())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    Zero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Zero => f.write_str("zero polynomial not allowed here"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PolyError {}

/// A coprime basis together with the factorization of each input over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// square-free, pairwise coprime, normalized, non-constant
    pub basis: Vec<Polynomial>,
    /// `exponents[i][j]` is the power of `basis[j]` in input `i`
    pub exponents: Vec<Vec<i64>>,
    /// `input[i] = units[i] * prod_j basis[j]^exponents[i][j]`
    pub units: Vec<Rat>,
}

/// Coprime refinement of nonzero polynomials.
pub fn coprime_refinement(fs: &[Polynomial]) -> Result<Refinement, PolyError> {
    let n = match fs.first() {
        Some(f) => f.nvars,
        None => return Ok(Refinement { basis: Vec::new(), exponents: Vec::new(), units: Vec::new() }),
    };
    if fs.iter().any(|f| f.is_zero()) {
        return Err(PolyError::Zero);
    }
    let mut s: Vec<Polynomial> = Vec::new();
    for f in fs {
        let p = f.normalized();
        if !p.is_constant() && !s.contains(&p) {
            s.push(p);
        }
    }
    'outer: loop {
        for i in 0..s.len() {
            let sf = squarefree_part(&s[i])?;
            if sf != s[i] {
                let rest = s[i].exact_div(&sf).unwrap().normalized();
                s[i] = sf;
                s.push(rest);
                s.retain(|p| !p.is_constant());
                continue 'outer;
            }
        }
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let g = gcd(&s[i], &s[j]);
                if !g.is_constant() {
                    let a = s[i].exact_div(&g).unwrap().normalized();
                    let b = s[j].exact_div(&g).unwrap().normalized();
                    s[i] = a;
                    s[j] = b;
                    s.push(g);
                    s.retain(|p| !p.is_constant());
                    continue 'outer;
                }
            }
        }
        break;
    }
    s.sort_by(canonical_cmp);
    let mut exponents = Vec::new();
    let mut units = Vec::new();
    for f in fs {
        let mut rem = f.clone();
        let mut row = vec![0i64; s.len()];
        for (j, b) in s.iter().enumerate() {
            while let Some(q) = rem.exact_div(b) {
                rem = q;
                row[j] += 1;
            }
        }
        let u = rem.as_constant().expect("refinement must reconstruct every input");
        let _ = n;
        exponents.push(row);
        units.push(u);
    }
    Ok(Refinement { basis: s, exponents, units })
}

/// Coprime refinement of rational sections: exponents may be negative.
pub fn coprime_refinement_sections(qs: &[RationalSection]) -> Result<Refinement, PolyError> {
    let mut polys = Vec::new();
    for q in qs {
        if q.is_zero() {
            return Err(PolyError::Zero);
        }
        polys.push(q.num.clone());
        polys.push(q.den.clone());
    }
    let r = coprime_refinement(&polys)?;
    let mut exponents = Vec::new();
    let mut units = Vec::new();
    for i in 0..qs.len() {
        let a = &r.exponents[2 * i];
        let b = &r.exponents[2 * i + 1];
        exponents.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
        units.push(&r.units[2 * i] / &r.units[2 * i + 1]);
    }
    Ok(Refinement { basis: r.basis, exponents, units })
}

/// Multiplicity of `f` in a polynomial, counted by repeated exact division.
pub fn multiplicity(f: &Polynomial, p: &Polynomial) -> u32 {
    if p.is_zero() || f.is_constant() {
        return 0;
    }
    let mut k = 0;
    let mut r = p.clone();
    while let Some(q) = r.exact_div(f) {
        r = q;
        k += 1;
    }
    k
}

/// `ord_f(numerator) - ord_f(denominator)`.
pub fn order_along(f: &Polynomial, q: &RationalSection) -> Result<i64, PolyError> {
    if q.is_zero() {
        return Err(PolyError::Zero);
    }
    Ok(multiplicity(f, &q.num) as i64 - multiplicity(f, &q.den) as i64)
}

// ---------------------------------------------------------------------------
// rational sections

/// A reduced quotient of polynomials; the denominator is normalized.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSection {
    num: Polynomial,
    den: Polynomial,
}

impl RationalSection {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let n = num.nvars;
            return RationalSection { num, den: Polynomial::one(n) };
        }
        let g = gcd(&num, &den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let (c, den) = den.split_unit();
        RationalSection { num: num.scale(&c.recip()), den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars;
        RationalSection { num: p, den: Polynomial::one(n) }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    /// Laurent monomial `prod x_i^{e_i}`.
    pub fn laurent_monomial(nvars: usize, e: &[i64]) -> Self {
        let num: Exponents = e.iter().map(|&x| if x > 0 { x as u32 } else { 0 }).collect();
        let den: Exponents = e.iter().map(|&x| if x < 0 { (-x) as u32 } else { 0 }).collect();
        RationalSection {
            num: Polynomial::monomial(nvars, num, Rat::one()),
            den: Polynomial::monomial(nvars, den, Rat::one()),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RationalSection::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e >= 0 {
            RationalSection { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
        } else {
            let inv = self.inverse().expect("negative power of zero");
            inv.pow(-e)
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RationalSection::new(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> SectionDisplay<'a> {
        SectionDisplay { q: self, names: Some(names) }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.display(names).to_string()
    }
}

impl Add<&RationalSection> for &RationalSection {
    type Output = RationalSection;
    fn add(self, b: &RationalSection) -> RationalSection {
        if self.den == b.den {
            return RationalSection::new(&self.num + &b.num, self.den.clone());
        }
        RationalSection::new(&(&self.num * &b.den) + &(&b.num * &self.den), &self.den * &b.den)
    }
}

impl Sub<&RationalSection> for &RationalSection {
    type Output = RationalSection;
    fn sub(self, b: &RationalSection) -> RationalSection {
        self + &(-b)
    }
}

impl Neg for &RationalSection {
    type Output = RationalSection;
    fn neg(self) -> RationalSection {
        RationalSection { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&RationalSection> for &RationalSection {
    type Output = RationalSection;
    fn mul(self, b: &RationalSection) -> RationalSection {
        RationalSection::new(&self.num * &b.num, &self.den * &b.den)
    }
}

impl RationalSection {
    pub fn div(&self, b: &RationalSection) -> Option<RationalSection> {
        Some(self * &b.inverse()?)
    }
}

impl fmt::Debug for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", SectionDisplay { q: self, names: None })
    }
}

impl fmt::Display for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", SectionDisplay { q: self, names: None })
    }
}

pub struct SectionDisplay<'a> {
    q: &'a RationalSection,
    names: Option<&'a [String]>,
}

impl fmt::Display for SectionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Polynomial| PolyDisplay { p, names: self.names }.to_string();
        if self.q.den.is_constant() {
            return f.write_str(&show(&self.q.num));
        }
        let num = show(&self.q.num);
        let num = if self.q.num.num_terms() > 1 { format!("({})", num) } else { num };
        let den = show(&self.q.den);
        let den = if self.q.den.num_terms() > 1 || !self.q.den.is_monomial() || den.contains('*') {
            format!("({})", den)
        } else {
            den
        };
        write!(f, "{}/{}", num, den)
    }
}

// ---------------------------------------------------------------------------
// gradings

/// A grading of `Q[x_1..x_n]` by `Z^f ⊕ ⊕ Z/t_k`: one integer row per free
/// generator and one row per torsion factor (read modulo its order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub nvars: usize,
    pub free: Vec<Vec<BigInt>>,
    pub torsion: Vec<Vec<BigInt>>,
    pub orders: Vec<BigInt>,
}

/// A degree with rational free part and torsion residues in `[0, t_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeVector {
    pub free: Vec<Rat>,
    pub torsion: Vec<Rat>,
}

impl DegreeVector {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|x| x.is_zero()) && self.torsion.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.free.iter().chain(self.torsion.iter()).map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Grading {
    pub fn new(nvars: usize, free: Vec<Vec<BigInt>>, torsion: Vec<Vec<BigInt>>, orders: Vec<BigInt>) -> Self {
        assert!(free.iter().chain(torsion.iter()).all(|r| r.len() == nvars));
        assert_eq!(torsion.len(), orders.len());
        let torsion = torsion
            .into_iter()
            .zip(orders.iter())
            .map(|(r, o)| r.into_iter().map(|x| x.mod_floor(o)).collect())
            .collect();
        Grading { nvars, free, torsion, orders }
    }

    pub fn from_i64(free: &[Vec<i64>]) -> Self {
        let n = free.first().map_or(0, |r| r.len());
        Grading::new(n, free.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect(), Vec::new(), Vec::new())
    }

    pub fn trivial(nvars: usize) -> Self {
        Grading::new(nvars, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn zero_degree(&self) -> DegreeVector {
        DegreeVector { free: vec![Rat::zero(); self.free.len()], torsion: vec![Rat::zero(); self.torsion.len()] }
    }

    pub fn reduce(&self, d: DegreeVector) -> DegreeVector {
        let torsion = d.torsion.iter().zip(self.orders.iter()).map(|(x, o)| rat_mod(x, &int_rat(o))).collect();
        DegreeVector { free: d.free, torsion }
    }

    pub fn degree_of_signed(&self, e: &[i64]) -> DegreeVector {
        assert_eq!(e.len(), self.nvars);
        let row = |r: &Vec<BigInt>| {
            int_rat(&r.iter().zip(e).fold(BigInt::zero(), |acc, (w, &k)| acc + w * BigInt::from(k)))
        };
        self.reduce(DegreeVector { free: self.free.iter().map(row).collect(), torsion: self.torsion.iter().map(row).collect() })
    }

    pub fn degree_of_exponents(&self, e: &[u32]) -> DegreeVector {
        let s: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        self.degree_of_signed(&s)
    }

    pub fn add(&self, a: &DegreeVector, b: &DegreeVector) -> DegreeVector {
        self.reduce(DegreeVector {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn scale(&self, a: &DegreeVector, q: &Rat) -> DegreeVector {
        self.reduce(DegreeVector {
            free: a.free.iter().map(|x| x * q).collect(),
            torsion: a.torsion.iter().map(|x| x * q).collect(),
        })
    }

    pub fn sub(&self, a: &DegreeVector, b: &DegreeVector) -> DegreeVector {
        self.add(a, &self.scale(b, &-Rat::one()))
    }

    /// Degree of a variable.
    pub fn var_degree(&self, i: usize) -> DegreeVector {
        let mut e = vec![0i64; self.nvars];
        e[i] = 1;
        self.degree_of_signed(&e)
    }

    /// Same grading restricted to a subset of the variables.
    pub fn restrict(&self, vars: &[usize]) -> Grading {
        let pick = |r: &Vec<BigInt>| vars.iter().map(|&i| r[i].clone()).collect::<Vec<_>>();
        Grading::new(vars.len(), self.free.iter().map(pick).collect(), self.torsion.iter().map(pick).collect(), self.orders.clone())
    }

    /// Stack free rows then torsion rows into one integer matrix.
    pub fn matrix(&self) -> crate::lattice_fan::IntMatrix {
        let mut rows = self.free.clone();
        rows.extend(self.torsion.iter().cloned());
        crate::lattice_fan::IntMatrix::from_rows(rows, self.nvars)
    }
}

/// Common degree of all terms; `None` for zero or inhomogeneous input.
pub fn degree_of(f: &Polynomial, grading: &Grading) -> Option<DegreeVector> {
    let mut out: Option<DegreeVector> = None;
    for e in f.terms.keys() {
        let d = grading.degree_of_exponents(e);
        match &out {
            None => out = Some(d),
            Some(o) if *o == d => {}
            Some(_) => return None,
        }
    }
    out
}

pub fn is_homogeneous(f: &Polynomial, grading: &Grading) -> bool {
    f.is_zero() || degree_of(f, grading).is_some()
}

/// Degree of a rational section, `None` if numerator or denominator is
/// inhomogeneous (or the section is zero).
pub fn section_degree(q: &RationalSection, grading: &Grading) -> Option<DegreeVector> {
    let a = degree_of(&q.num, grading)?;
    let b = degree_of(&q.den, grading)?;
    Some(grading.sub(&a, &b))
}

/// Split into homogeneous components, ordered by degree.
pub fn homogeneous_components(f: &Polynomial, grading: &Grading) -> Vec<(DegreeVector, Polynomial)> {
    let mut out: Vec<(DegreeVector, Polynomial)> = Vec::new();
    for (e, c) in &f.terms {
        let d = grading.degree_of_exponents(e);
        match out.iter_mut().find(|(k, _)| *k == d) {
            Some((_, p)) => p.add_term(e.clone(), c.clone()),
            None => out.push((d, Polynomial::monomial(f.nvars, e.clone(), c.clone()))),
        }
    }
    out.sort_by(|a, b| a.0.free.cmp(&b.0.free).then_with(|| a.0.torsion.cmp(&b.0.torsion)));
    out
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PolyParseError {}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl PolyParser<'_> {
    fn err(&self, m: &str) -> PolyParseError {
        PolyParseError { pos: self.pos, message: m.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Polynomial, PolyParseError> {
        let n = self.names.len();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => break,
            }
        }
        debug_assert_eq!(acc.nvars, n);
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return Err(PolyParseError { pos: at, message: "can only divide by a nonzero constant".into() }),
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let k: u32 = core::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyParseError> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = core::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(Polynomial::constant(n, Rat::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match self.names.iter().position(|x| x == name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => Err(PolyParseError { pos: start, message: format!("unknown variable '{}'", name) }),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// `x1, ..., xn`
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{}{}", prefix, i)).collect()
}
