//! Buchberger's algorithm over Q and the ideal operations built on it:
//! membership, elimination, saturation, intersection and the largest
//! homogeneous subideal for a (possibly torsion) grading.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polynomial::{Exponents, Grading, Polynomial};
use crate::{Interrupt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// `x1 > x2 > ...`
    Lex,
    DegRevLex,
    /// Degrevlex on the flagged variables, then degrevlex on the rest.
    /// Any monomial involving a flagged variable beats every monomial
    /// that does not.
    Elimination(Vec<bool>),
    /// Nonnegative weight first, degrevlex to break ties.
    Weighted(Vec<u32>),
}

fn degrevlex_on(a: &[u32], b: &[u32], pick: impl Fn(usize) -> bool) -> Ordering {
    let da: u64 = a.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, &x)| x as u64).sum();
    let db: u64 = b.iter().enumerate().filter(|(i, _)| pick(*i)).map(|(_, &x)| x as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if pick(i) && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex_on(a, b, |_| true),
            MonomialOrder::Elimination(mask) => {
                degrevlex_on(a, b, |i| mask[i]).then_with(|| degrevlex_on(a, b, |i| !mask[i]))
            }
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.iter().zip(w).map(|(&x, &y)| x as u64 * y as u64).sum();
                let wb: u64 = b.iter().zip(w).map(|(&x, &y)| x as u64 * y as u64).sum();
                wa.cmp(&wb).then_with(|| degrevlex_on(a, b, |_| true))
            }
        }
    }

    pub fn eliminating(nvars: usize, vars: &[usize]) -> Self {
        let mut m = vec![false; nvars];
        for &v in vars {
            m[v] = true;
        }
        MonomialOrder::Elimination(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerError {
    Interrupted,
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::Interrupted => f.write_str("Groebner computation interrupted"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GroebnerError {}

/// An ideal of `Q[x_1..x_n]` given by generators. Zero generators are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Self {
        assert!(generators.iter().all(|g| g.nvars() == nvars));
        Ideal { nvars, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, generators: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, generators: vec![Polynomial::one(nvars)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                g.push(a * b);
            }
        }
        Ideal::new(self.nvars, g)
    }

    pub fn extend_vars(&self, nvars: usize) -> Ideal {
        Ideal::new(nvars, self.generators.iter().map(|g| g.extend_vars(nvars)).collect())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string_with(names)).collect();
        alloc::format!("<{}>", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ">")
    }
}

// ---------------------------------------------------------------------------
// engine

type Term = (Exponents, Rat);

/// Terms sorted ascending, leading term last.
#[derive(Clone)]
struct GPoly {
    terms: Vec<Term>,
    sugar: u32,
}

impl GPoly {
    fn lm(&self) -> &Exponents {
        &self.terms.last().unwrap().0
    }
}

fn to_terms(p: &Polynomial, ord: &MonomialOrder) -> Vec<Term> {
    let mut t: Vec<Term> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    t.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    t
}

fn from_terms(nvars: usize, t: Vec<Term>) -> Polynomial {
    Polynomial::from_terms(nvars, t)
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn make_monic(t: &mut [Term]) {
    if let Some(lc) = t.last().map(|x| x.1.clone()) {
        if !lc.is_one() {
            let inv = lc.recip();
            for x in t.iter_mut() {
                x.1 *= &inv;
            }
        }
    }
}

/// `p - c * x^m * g`, all ascending.
fn sub_mul(p: &[Term], g: &[Term], m: &[u32], c: &Rat, ord: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Exponents { t.0.iter().zip(m).map(|(a, b)| a + b).collect() };
    let mut gj: Option<Exponents> = g.first().map(shifted);
    while i < p.len() || j < g.len() {
        let o = match (&gj, p.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(e), Some(t)) => ord.cmp(&t.0, e),
        };
        match o {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gj.take().unwrap(), -(c * &g[j].1)));
                j += 1;
                gj = g.get(j).map(shifted);
            }
            Ordering::Equal => {
                let v = &p[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((gj.take().unwrap(), v));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(shifted);
            }
        }
    }
    out
}

fn normal_form_terms(
    p: Vec<Term>,
    basis: &[&GPoly],
    ord: &MonomialOrder,
    intr: &dyn Interrupt,
) -> Result<Vec<Term>, GroebnerError> {
    let mut p = p;
    let mut rem: Vec<Term> = Vec::new();
    let mut steps = 0u32;
    while let Some((m, c)) = p.last() {
        steps += 1;
        if steps.is_multiple_of(256) && intr.interrupted() {
            return Err(GroebnerError::Interrupted);
        }
        match basis.iter().find(|g| divides(g.lm(), m)) {
            Some(g) => {
                let q: Exponents = m.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = c / &g.terms.last().unwrap().1;
                p = sub_mul(&p, &g.terms, &q, &c, ord);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    Ok(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    sugar: u32,
}

fn s_poly(a: &GPoly, b: &GPoly, l: &[u32], ord: &MonomialOrder) -> Vec<Term> {
    let ma: Exponents = l.iter().zip(a.lm()).map(|(x, y)| x - y).collect();
    let mb: Exponents = l.iter().zip(b.lm()).map(|(x, y)| x - y).collect();
    let ca = a.terms.last().unwrap().1.recip();
    let cb = b.terms.last().unwrap().1.recip();
    let pa = sub_mul(&[], &a.terms, &ma, &-ca, ord);
    sub_mul(&pa, &b.terms, &mb, &cb, ord)
}

/// Reduced Gröbner basis, monic, sorted by leading monomial (ascending).
pub fn groebner_basis(
    ideal: &Ideal,
    ord: &MonomialOrder,
    intr: &dyn Interrupt,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let n = ideal.nvars;
    let mut polys: Vec<GPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<GPoly> = ideal
        .generators
        .iter()
        .map(|g| {
            let mut t = to_terms(g, ord);
            make_monic(&mut t);
            GPoly { sugar: g.total_degree(), terms: t }
        })
        .collect();
    inputs.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in inputs {
        let refs: Vec<&GPoly> = active.iter().map(|&k| &polys[k]).collect();
        let mut t = normal_form_terms(g.terms, &refs, ord, intr)?;
        if t.is_empty() {
            continue;
        }
        make_monic(&mut t);
        insert(&mut polys, &mut active, &mut pairs, GPoly { terms: t, sugar: g.sugar });
    }

    while !pairs.is_empty() {
        if intr.interrupted() {
            return Err(GroebnerError::Interrupted);
        }
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            if a.sugar < b.sugar || (a.sugar == b.sugar && ord.cmp(&a.lcm, &b.lcm) == Ordering::Less) {
                best = k;
            }
        }
        let pr = pairs.swap_remove(best);
        let s = s_poly(&polys[pr.i], &polys[pr.j], &pr.lcm, ord);
        let refs: Vec<&GPoly> = active.iter().map(|&k| &polys[k]).collect();
        let mut h = normal_form_terms(s, &refs, ord, intr)?;
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        insert(&mut polys, &mut active, &mut pairs, GPoly { terms: h, sugar: pr.sugar });
    }

    // minimalize and interreduce
    let mut basis: Vec<GPoly> = Vec::new();
    let mut cand: Vec<&GPoly> = active.iter().map(|&k| &polys[k]).collect();
    cand.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for (k, g) in cand.iter().enumerate() {
        let redundant = cand.iter().enumerate().any(|(l, h)| {
            l != k && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || l < k)
        });
        if !redundant {
            basis.push((*g).clone());
        }
    }
    let mut out = Vec::new();
    for k in 0..basis.len() {
        let others: Vec<&GPoly> = basis.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g).collect();
        let lead = basis[k].terms.last().unwrap().clone();
        let tail = basis[k].terms[..basis[k].terms.len() - 1].to_vec();
        let mut t = normal_form_terms(tail, &others, ord, intr)?;
        t.push(lead);
        make_monic(&mut t);
        out.push(from_terms(n, t));
    }
    Ok(out)
}

fn insert(polys: &mut Vec<GPoly>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: GPoly) {
    let hi = polys.len();
    let hlm = h.lm().clone();
    polys.push(h);
    let sugar_of = |polys: &Vec<GPoly>, g: usize, l: &[u32]| {
        let a = polys[hi].sugar + deg(l) - deg(polys[hi].lm());
        let b = polys[g].sugar + deg(l) - deg(polys[g].lm());
        a.max(b)
    };

    // Gebauer-Moeller criteria
    let mut c: Vec<(usize, Exponents)> = active.iter().map(|&g| (g, lcm(&hlm, polys[g].lm()))).collect();
    let mut d: Vec<(usize, Exponents)> = Vec::new();
    while let Some((g1, l1)) = c.pop() {
        let keep = coprime(&hlm, polys[g1].lm())
            || (!c.iter().any(|(_, l2)| divides(l2, &l1)) && !d.iter().any(|(_, l2)| divides(l2, &l1)));
        if keep {
            d.push((g1, l1));
        }
    }
    let e: Vec<(usize, Exponents)> = d.into_iter().filter(|(g, _)| !coprime(&hlm, polys[*g].lm())).collect();
    pairs.retain(|p| {
        !(divides(&hlm, &p.lcm)
            && lcm(polys[p.i].lm(), &hlm) != p.lcm
            && lcm(&hlm, polys[p.j].lm()) != p.lcm)
    });
    for (g, l) in e {
        let s = sugar_of(polys, g, &l);
        pairs.push(Pair { i: g, j: hi, lcm: l, sugar: s });
    }
    active.retain(|&g| !divides(&hlm, polys[g].lm()));
    active.push(hi);
}

/// Normal form of `f` with respect to a Gröbner basis for `ord`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let gs: Vec<GPoly> = basis.iter().map(|g| GPoly { terms: to_terms(g, ord), sugar: 0 }).collect();
    let refs: Vec<&GPoly> = gs.iter().collect();
    let t = normal_form_terms(to_terms(f, ord), &refs, ord, &crate::Never).unwrap();
    from_terms(f.nvars(), t)
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal, intr: &dyn Interrupt) -> Result<bool, GroebnerError> {
    if f.is_zero() {
        return Ok(true);
    }
    let ord = MonomialOrder::DegRevLex;
    let gb = groebner_basis(ideal, &ord, intr)?;
    Ok(reduce(f, &gb, &ord).is_zero())
}

/// `I ⊆ J`
pub fn ideal_contains(j: &Ideal, i: &Ideal, intr: &dyn Interrupt) -> Result<bool, GroebnerError> {
    let ord = MonomialOrder::DegRevLex;
    let gb = groebner_basis(j, &ord, intr)?;
    Ok(i.generators.iter().all(|f| reduce(f, &gb, &ord).is_zero()))
}

pub fn ideals_equal(a: &Ideal, b: &Ideal, intr: &dyn Interrupt) -> Result<bool, GroebnerError> {
    let ord = MonomialOrder::DegRevLex;
    Ok(groebner_basis(a, &ord, intr)? == groebner_basis(b, &ord, intr)?)
}

/// Reduced degrevlex basis as a new ideal; a canonical form for comparison
/// and printing.
pub fn canonical(ideal: &Ideal, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    Ok(Ideal::new(ideal.nvars, groebner_basis(ideal, &MonomialOrder::DegRevLex, intr)?))
}

/// `I ∩ Q[keep]`, still written in the ambient ring.
pub fn eliminate(ideal: &Ideal, keep: &[usize], intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars;
    let drop: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    if drop.is_empty() {
        return Ok(ideal.clone());
    }
    let gb = groebner_basis(ideal, &MonomialOrder::eliminating(n, &drop), intr)?;
    Ok(Ideal::new(n, gb.into_iter().filter(|g| drop.iter().all(|&v| !g.involves(v))).collect()))
}

/// `(I : f^∞)` via `(I + <1 - t f>) ∩ Q[x]`.
pub fn saturate_by_poly(ideal: &Ideal, f: &Polynomial, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars;
    if f.is_zero() {
        return Ok(Ideal::unit(n));
    }
    if f.is_constant() || ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let mut big = ideal.extend_vars(n + 1);
    let t = Polynomial::var(n + 1, n);
    big.generators.push(&Polynomial::one(n + 1) - &(&t * &f.extend_vars(n + 1)));
    let keep: Vec<usize> = (0..n).collect();
    let e = eliminate(&big, &keep, intr)?;
    let back: Vec<usize> = (0..=n).map(|i| i.min(n - 1)).collect();
    Ok(Ideal::new(n, e.generators.iter().map(|g| g.rename(n, &back)).collect()))
}

/// `I ∩ J` via `t I + (1 - t) J` eliminating `t`.
pub fn intersect(a: &Ideal, b: &Ideal, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    let n = a.nvars;
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(n));
    }
    let t = Polynomial::var(n + 1, n);
    let omt = &Polynomial::one(n + 1) - &t;
    let mut gens: Vec<Polynomial> = a.generators.iter().map(|g| &t * &g.extend_vars(n + 1)).collect();
    gens.extend(b.generators.iter().map(|g| &omt * &g.extend_vars(n + 1)));
    let keep: Vec<usize> = (0..n).collect();
    let e = eliminate(&Ideal::new(n + 1, gens), &keep, intr)?;
    let back: Vec<usize> = (0..=n).map(|i| i.min(n - 1)).collect();
    Ok(Ideal::new(n, e.generators.iter().map(|g| g.rename(n, &back)).collect()))
}

/// `(I : J^∞) = ∩_g (I : g^∞)` over the generators `g` of `J`.
pub fn saturate(ideal: &Ideal, j: &Ideal, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars;
    if j.is_zero() {
        return Ok(Ideal::unit(n));
    }
    let mut acc: Option<Ideal> = None;
    for g in &j.generators {
        let s = saturate_by_poly(ideal, g, intr)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s, intr)?,
        });
    }
    canonical(&acc.unwrap(), intr)
}

/// Largest homogeneous ideal contained in `I`.
///
/// Each variable `x_j` is replaced by `t^{w_j} z^{a_j} x_j`, where `w_j` is
/// its free degree and `a_j` its torsion degree, the relations
/// `z_k^{n_k} = 1` and `u·∏t = 1` are added, and `t, z, u` are eliminated.
pub fn homogeneous_part(ideal: &Ideal, grading: &Grading, intr: &dyn Interrupt) -> Result<Ideal, GroebnerError> {
    let n = ideal.nvars;
    assert_eq!(grading.nvars, n);
    let f = grading.free.len();
    let tor = grading.torsion.len();
    if ideal.is_zero() || f + tor == 0 {
        return canonical(ideal, intr);
    }
    if ideal.generators.iter().all(|g| crate::polynomial::is_homogeneous(g, grading)) {
        return canonical(ideal, intr);
    }
    let big = n + f + tor + 1;
    let mut gens = Vec::new();
    for g in &ideal.generators {
        let mut terms: Vec<(Vec<i64>, Rat)> = Vec::new();
        for (e, c) in g.terms() {
            let mut x = vec![0i64; big];
            for (j, &k) in e.iter().enumerate() {
                x[j] = k as i64;
            }
            for (r, row) in grading.free.iter().enumerate() {
                x[n + r] = dot(row, e);
            }
            for (r, row) in grading.torsion.iter().enumerate() {
                let o: i64 = to_i64(&grading.orders[r]);
                x[n + f + r] = dot(row, e).rem_euclid(o);
            }
            terms.push((x, c.clone()));
        }
        for r in 0..f {
            let m = terms.iter().map(|(x, _)| x[n + r]).min().unwrap();
            for (x, _) in terms.iter_mut() {
                x[n + r] -= m;
            }
        }
        gens.push(Polynomial::from_terms(big, terms.into_iter().map(|(x, c)| (x.into_iter().map(|v| v as u32).collect(), c))));
    }
    for r in 0..tor {
        let o = to_i64(&grading.orders[r]) as u32;
        let mut e = vec![0u32; big];
        e[n + f + r] = o;
        gens.push(&Polynomial::monomial(big, e, Rat::one()) - &Polynomial::one(big));
    }
    let mut e = vec![0u32; big];
    for r in 0..f {
        e[n + r] = 1;
    }
    e[big - 1] = 1;
    gens.push(&Polynomial::one(big) - &Polynomial::monomial(big, e, Rat::one()));
    let keep: Vec<usize> = (0..n).collect();
    let el = eliminate(&Ideal::new(big, gens), &keep, intr)?;
    let back: Vec<usize> = (0..big).map(|i| i.min(n - 1)).collect();
    Ok(Ideal::new(n, el.generators.iter().map(|g| g.rename(n, &back)).collect()))
}

fn dot(row: &[BigInt], e: &[u32]) -> i64 {
    let s: BigInt = row.iter().zip(e).map(|(w, &k)| w * BigInt::from(k)).sum();
    to_i64(&s)
}

fn to_i64(b: &BigInt) -> i64 {
    use num_traits::ToPrimitive;
    b.to_i64().expect("degree out of range")
}

/// Whether every generator is homogeneous for the grading.
pub fn is_homogeneous_ideal(ideal: &Ideal, grading: &Grading) -> bool {
    ideal.generators.iter().all(|g| crate::polynomial::is_homogeneous(g, grading))
}

#[allow(dead_code)]
fn leading_coefficient_sign(p: &Polynomial) -> bool {
    p.leading_term().is_none_or(|(_, c)| c.is_positive())
}
