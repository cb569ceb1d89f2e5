//! Name resolution, construction of varieties/maps/ideals, and the command
//! loop.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, ToPrimitive, Zero};
use toricmap_core::groebner::Ideal;
use toricmap_core::lattice_fan::Fan;
use toricmap_core::map_calculus::{
    check_homogeneity, check_relevance, complete, compose, same_map, witness_string, Description, Homogeneity,
    HomogeneityFailure, RelevanceTest,
};
use toricmap_core::polynomial::{Polynomial, RationalSection};
use toricmap_core::radical_sections::{Component, RadicalTerm};
use toricmap_core::scheme_ops::{
    image_closure, image_of_subscheme, map_point, preimage_ideal, pullback_divisor, LocusReport, PointImage,
};
use toricmap_core::toric_variety::ToricVariety;
use toricmap_core::{Interrupt, Rat};

use crate::dsl::{Command, Expr, ExprKind, Ident, Item, Pos, Script, ScriptError, VarietyBody};
use crate::output::{HomogeneityReport, OutputRecord, Payload, RelevanceReport, StepReport};

// ---------------------------------------------------------------------------
// expressions

fn rat_string(q: &Rat) -> String {
    q.to_string()
}

/// Value of an expression without variables.
fn const_eval(e: &Expr) -> Result<Rat, ScriptError> {
    let err = |m: &str| Err(ScriptError::type_error(e.pos, m));
    Ok(match &e.kind {
        ExprKind::Num(n) => Rat::from_integer(n.clone()),
        ExprKind::Var(v) => return err(&format!("expected a rational number, found variable `{}`", v)),
        ExprKind::Neg(a) => -const_eval(a)?,
        ExprKind::Add(a, b) => const_eval(a)? + const_eval(b)?,
        ExprKind::Sub(a, b) => const_eval(a)? - const_eval(b)?,
        ExprKind::Mul(a, b) => const_eval(a)? * const_eval(b)?,
        ExprKind::Div(a, b) => {
            let d = const_eval(b)?;
            if d.is_zero() {
                return Err(ScriptError::type_error(b.pos, "division by zero"));
            }
            const_eval(a)? / d
        }
        ExprKind::Pow(a, b) => {
            let base = const_eval(a)?;
            let k = const_eval(b)?;
            match (k.is_integer(), k.to_integer().to_i32()) {
                (true, Some(k)) if !(base.is_zero() && k < 0) => num_traits::pow::Pow::pow(&base, k),
                _ => return err("expected a rational number"),
            }
        }
        ExprKind::Root(..) => return err("expected a rational number"),
    })
}

/// The single rational section represented by `terms`, when every exponent
/// is an integer.
fn rational_of(terms: &[RadicalTerm], n: usize) -> Option<RationalSection> {
    let mut sum = RationalSection::zero(n);
    for t in terms {
        let mut acc = RationalSection::constant(n, t.coeff.clone());
        for (q, p) in &t.factors {
            if !p.is_integer() {
                return None;
            }
            acc = &acc * &q.pow(p.to_integer().to_i64()?);
        }
        sum = &sum + &acc;
    }
    Some(sum)
}

fn collapse(terms: Component, n: usize) -> Component {
    match rational_of(&terms, n) {
        Some(q) if q.is_zero() => Vec::new(),
        Some(q) => match q.as_constant() {
            Some(c) => vec![RadicalTerm::constant(c)],
            None => vec![RadicalTerm::section(q)],
        },
        None => terms.into_iter().filter(|t| !t.coeff.is_zero()).collect(),
    }
}

/// Evaluate an expression over the variables `names` into a sum of radical
/// terms.
fn eval_expr(e: &Expr, names: &[String]) -> Result<Component, ScriptError> {
    let n = names.len();
    let err = |pos: Pos, m: String| ScriptError::type_error(pos, m);
    let out = match &e.kind {
        ExprKind::Num(v) => vec![RadicalTerm::constant(Rat::from_integer(v.clone()))],
        ExprKind::Var(v) => match names.iter().position(|x| x == v) {
            Some(i) => vec![RadicalTerm::section(RationalSection::from_poly(Polynomial::var(n, i)))],
            None => return Err(err(e.pos, format!("unknown variable `{}`", v))),
        },
        ExprKind::Neg(a) => eval_expr(a, names)?
            .into_iter()
            .map(|t| RadicalTerm { coeff: -t.coeff, factors: t.factors })
            .collect(),
        ExprKind::Add(a, b) => {
            let mut v = eval_expr(a, names)?;
            v.extend(eval_expr(b, names)?);
            v
        }
        ExprKind::Sub(a, b) => {
            let mut v = eval_expr(a, names)?;
            v.extend(eval_expr(b, names)?.into_iter().map(|t| RadicalTerm { coeff: -t.coeff, factors: t.factors }));
            v
        }
        ExprKind::Mul(a, b) => {
            let (x, y) = (eval_expr(a, names)?, eval_expr(b, names)?);
            x.iter().flat_map(|s| y.iter().map(move |t| s.mul(t))).collect()
        }
        ExprKind::Div(a, b) => {
            let x = eval_expr(a, names)?;
            let y = eval_expr(b, names)?;
            let inv = match y.as_slice() {
                [] => return Err(err(b.pos, "division by zero".into())),
                [t] if !t.coeff.is_zero() => RadicalTerm {
                    coeff: t.coeff.recip(),
                    factors: t.factors.iter().map(|(q, p)| (q.clone(), -p)).collect(),
                },
                _ => return Err(err(b.pos, "cannot divide by a sum of radical terms".into())),
            };
            x.iter().map(|s| s.mul(&inv)).collect()
        }
        ExprKind::Pow(a, b) => {
            let p = const_eval(b)?;
            power(eval_expr(a, names)?, &p, a.pos, n)?
        }
        ExprKind::Root(a, r) => power(eval_expr(a, names)?, &Rat::new(1.into(), (*r).into()), a.pos, n)?,
    };
    Ok(collapse(out, n))
}

fn power(base: Component, p: &Rat, pos: Pos, n: usize) -> Result<Component, ScriptError> {
    match base.as_slice() {
        [] if p.is_positive() => Ok(Vec::new()),
        [] => Err(ScriptError::type_error(pos, "zero raised to a non-positive power")),
        [t] => t.pow(p).map(|t| vec![t]).map_err(|e| ScriptError::type_error(pos, e.to_string())),
        _ if p.is_integer() && !p.is_negative() => {
            let k = p.to_integer().to_u32().ok_or_else(|| ScriptError::type_error(pos, "exponent too large"))?;
            let mut acc = vec![RadicalTerm::constant(Rat::one())];
            for _ in 0..k {
                acc = collapse(acc.iter().flat_map(|s| base.iter().map(move |t| s.mul(t))).collect(), n);
            }
            Ok(acc)
        }
        _ => Err(ScriptError::type_error(pos, "cannot take a fractional or negative power of a sum of radical terms")),
    }
}

fn section_expr(e: &Expr, names: &[String]) -> Result<RationalSection, ScriptError> {
    let terms = eval_expr(e, names)?;
    rational_of(&terms, names.len())
        .ok_or_else(|| ScriptError::type_error(e.pos, "expected a rational function, found a radical"))
}

fn polynomial_expr(e: &Expr, names: &[String]) -> Result<Polynomial, ScriptError> {
    let q = section_expr(e, names)?;
    match q.denominator().as_constant() {
        Some(c) => Ok(q.numerator().scale(&c.recip())),
        None => Err(ScriptError::type_error(e.pos, "expected a polynomial")),
    }
}

// ---------------------------------------------------------------------------
// declarations

fn build_variety(body: &VarietyBody, vars: Option<Vec<String>>, pos: Pos) -> Result<ToricVariety, ScriptError> {
    let err = |m: String| ScriptError::type_error(pos, m);
    match body {
        VarietyBody::Fan { rays, cones } => {
            let dim = rays.first().map(|r| r.len()).ok_or_else(|| err("a fan needs at least one ray".into()))?;
            let mut zero_based = Vec::new();
            for c in cones {
                let mut cone = Vec::new();
                for &i in c {
                    if i < 1 || i as usize > rays.len() {
                        return Err(err(format!("cone index {} out of range 1..{}", i, rays.len())));
                    }
                    cone.push(i as usize - 1);
                }
                zero_based.push(cone);
            }
            let fan = Fan::new(dim, rays.clone(), zero_based).map_err(|e| err(e.to_string()))?;
            ToricVariety::from_fan(fan, vars).map_err(|e| err(e.to_string()))
        }
        VarietyBody::Cox { weights, torsion, irrelevant } => {
            if torsion.len() > weights.len() {
                return Err(err("more torsion orders than weight rows".into()));
            }
            let nfree = weights.len() - torsion.len();
            let n = weights.first().map(|r| r.len()).or(vars.as_ref().map(|v| v.len()));
            let n = n.ok_or_else(|| err("cannot infer the number of variables; give `weights` or `vars`".into()))?;
            let names = vars.clone().unwrap_or_else(|| (1..=n).map(|i| format!("x{}", i)).collect());
            let mut mons = Vec::new();
            for m in irrelevant {
                let mut e = vec![0u32; n];
                for v in m {
                    match names.iter().position(|x| *x == v.name) {
                        Some(i) => e[i] += 1,
                        None => return Err(ScriptError::type_error(v.pos, format!("unknown variable `{}`", v.name))),
                    }
                }
                mons.push(e);
            }
            let tors = weights[nfree..].iter().cloned().zip(torsion.iter().cloned()).collect();
            ToricVariety::from_cox_data(weights[..nfree].to_vec(), tors, mons, vars).map_err(|e| err(e.to_string()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Variety,
    Map,
    Ideal,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Variety => "variety",
            Kind::Map => "map",
            Kind::Ideal => "ideal",
        }
    }
}

/// Static view of a map: its source and target variety names.
#[derive(Clone, Debug)]
struct MapSig {
    source: String,
    target: String,
}

/// A checked script ready to run.
#[derive(Debug)]
pub struct Program {
    varieties: BTreeMap<String, Arc<ToricVariety>>,
    maps: BTreeMap<String, Description>,
    ideals: BTreeMap<String, (String, Ideal)>,
    steps: Vec<Step>,
}

/// A command with its operands resolved.
#[derive(Debug)]
enum Step {
    Check(String),
    Complete(String),
    Eval(String, Vec<Rat>),
    Compose { outer: String, inner: String, name: String },
    Image(String, Option<String>),
    Preimage(String, String, bool),
    Pullback(String, RationalSection),
    SameMap(String, String),
}

struct Scope {
    kinds: BTreeMap<String, Kind>,
    varieties: BTreeMap<String, Arc<ToricVariety>>,
    sigs: BTreeMap<String, MapSig>,
    ideal_on: BTreeMap<String, String>,
}

impl Scope {
    fn declare(&mut self, id: &Ident, kind: Kind) -> Result<(), ScriptError> {
        if let Some(k) = self.kinds.get(&id.name) {
            return Err(ScriptError::type_error(id.pos, format!("`{}` is already declared as a {}", id.name, k.as_str())));
        }
        self.kinds.insert(id.name.clone(), kind);
        Ok(())
    }

    fn expect(&self, id: &Ident, kind: Kind) -> Result<(), ScriptError> {
        match self.kinds.get(&id.name) {
            Some(k) if *k == kind => Ok(()),
            Some(k) => Err(ScriptError::type_error(
                id.pos,
                format!("`{}` is a {}, expected a {}", id.name, k.as_str(), kind.as_str()),
            )),
            None => Err(ScriptError::type_error(id.pos, format!("unknown {} `{}`", kind.as_str(), id.name))),
        }
    }

    fn variety(&self, id: &Ident) -> Result<Arc<ToricVariety>, ScriptError> {
        self.expect(id, Kind::Variety)?;
        Ok(self.varieties[&id.name].clone())
    }

    fn map(&self, id: &Ident) -> Result<MapSig, ScriptError> {
        self.expect(id, Kind::Map)?;
        Ok(self.sigs[&id.name].clone())
    }

    fn ideal(&self, id: &Ident) -> Result<String, ScriptError> {
        self.expect(id, Kind::Ideal)?;
        Ok(self.ideal_on[&id.name].clone())
    }
}

/// Resolve names, build every declared object and type-check commands.
pub fn compile(script: &Script) -> Result<Program, ScriptError> {
    let mut scope = Scope {
        kinds: BTreeMap::new(),
        varieties: BTreeMap::new(),
        sigs: BTreeMap::new(),
        ideal_on: BTreeMap::new(),
    };
    let mut maps = BTreeMap::new();
    let mut ideals = BTreeMap::new();
    let mut steps = Vec::new();
    for item in &script.items {
        match item {
            Item::Variety(v) => {
                scope.declare(&v.name, Kind::Variety)?;
                let vars = v.vars.as_ref().map(|vs| vs.iter().map(|i| i.name.clone()).collect());
                let x = build_variety(&v.body, vars, v.name.pos)?;
                scope.varieties.insert(v.name.name.clone(), Arc::new(x));
            }
            Item::Map(m) => {
                scope.declare(&m.name, Kind::Map)?;
                let x = scope.variety(&m.source)?;
                let y = scope.variety(&m.target)?;
                let mut comps: Vec<Option<Component>> = vec![None; y.nvars()];
                for (var, e) in &m.assignments {
                    let i = y.var_index(&var.name).ok_or_else(|| {
                        ScriptError::type_error(var.pos, format!("`{}` is not a coordinate of `{}`", var.name, m.target.name))
                    })?;
                    if comps[i].is_some() {
                        return Err(ScriptError::type_error(var.pos, format!("`{}` assigned twice", var.name)));
                    }
                    comps[i] = Some(eval_expr(e, x.names())?);
                }
                let missing: Vec<&str> =
                    (0..y.nvars()).filter(|&i| comps[i].is_none()).map(|i| y.names()[i].as_str()).collect();
                if !missing.is_empty() {
                    return Err(ScriptError::type_error(m.name.pos, format!("missing assignment for {}", missing.join(", "))));
                }
                let comps: Vec<Component> = comps.into_iter().map(Option::unwrap).collect();
                let d = Description::new(x, y, &comps).map_err(|e| ScriptError::type_error(m.name.pos, e.to_string()))?;
                scope.sigs.insert(m.name.name.clone(), MapSig { source: m.source.name.clone(), target: m.target.name.clone() });
                maps.insert(m.name.name.clone(), d);
            }
            Item::Ideal(i) => {
                scope.declare(&i.name, Kind::Ideal)?;
                let x = scope.variety(&i.on)?;
                let gens = i.gens.iter().map(|g| polynomial_expr(g, x.names())).collect::<Result<Vec<_>, _>>()?;
                scope.ideal_on.insert(i.name.name.clone(), i.on.name.clone());
                ideals.insert(i.name.name.clone(), (i.on.name.clone(), Ideal::new(x.nvars(), gens)));
            }
            Item::Command(c) => steps.push(resolve(&mut scope, &c.command, c.pos)?),
        }
    }
    Ok(Program { varieties: scope.varieties, maps, ideals, steps })
}

fn resolve(scope: &mut Scope, c: &Command, pos: Pos) -> Result<Step, ScriptError> {
    let mismatch = |id: &Ident, m: String| ScriptError::type_error(id.pos, m);
    Ok(match c {
        Command::Check(m) => {
            scope.map(m)?;
            Step::Check(m.name.clone())
        }
        Command::Complete(m) => {
            scope.map(m)?;
            Step::Complete(m.name.clone())
        }
        Command::Eval { map, point } => {
            let sig = scope.map(map)?;
            let n = scope.varieties[&sig.source].nvars();
            if point.len() != n {
                return Err(ScriptError::type_error(pos, format!("point has {} coordinates, `{}` has {}", point.len(), sig.source, n)));
            }
            Step::Eval(map.name.clone(), point.iter().map(const_eval).collect::<Result<_, _>>()?)
        }
        Command::Compose { outer, inner, name } => {
            let o = scope.map(outer)?;
            let i = scope.map(inner)?;
            if i.target != o.source {
                return Err(mismatch(
                    outer,
                    format!("cannot compose: `{}` maps to `{}` but `{}` starts at `{}`", inner.name, i.target, outer.name, o.source),
                ));
            }
            scope.declare(name, Kind::Map)?;
            scope.sigs.insert(name.name.clone(), MapSig { source: i.source, target: o.target });
            Step::Compose { outer: outer.name.clone(), inner: inner.name.clone(), name: name.name.clone() }
        }
        Command::Image { map, ideal } => {
            let sig = scope.map(map)?;
            if let Some(i) = ideal {
                let on = scope.ideal(i)?;
                if on != sig.source {
                    return Err(mismatch(i, format!("`{}` lives on `{}`, not on the source `{}`", i.name, on, sig.source)));
                }
            }
            Step::Image(map.name.clone(), ideal.as_ref().map(|i| i.name.clone()))
        }
        Command::Preimage { map, ideal, saturate } => {
            let sig = scope.map(map)?;
            let on = scope.ideal(ideal)?;
            if on != sig.target {
                return Err(mismatch(ideal, format!("`{}` lives on `{}`, not on the target `{}`", ideal.name, on, sig.target)));
            }
            Step::Preimage(map.name.clone(), ideal.name.clone(), *saturate)
        }
        Command::Pullback { map, expr } => {
            let sig = scope.map(map)?;
            let y = &scope.varieties[&sig.target];
            Step::Pullback(map.name.clone(), section_expr(expr, y.names())?)
        }
        Command::SameMap(a, b) => {
            let sa = scope.map(a)?;
            let sb = scope.map(b)?;
            if sa.source != sb.source || sa.target != sb.target {
                return Err(mismatch(b, format!("`{}` and `{}` have different sources or targets", a.name, b.name)));
            }
            Step::SameMap(a.name.clone(), b.name.clone())
        }
    })
}

// ---------------------------------------------------------------------------
// running

fn locus(report: LocusReport, names: &[String]) -> (Payload, Option<String>) {
    let generators = report.ideal.generators().iter().map(|g| g.to_string_with(names)).collect();
    (Payload::Ideal { generators, notes: report.notes }, Some(report.validity.as_str().to_string()))
}

fn reason_str(r: HomogeneityFailure) -> &'static str {
    match r {
        HomogeneityFailure::NotSingleValued => "pullback is not single-valued",
        HomogeneityFailure::NonzeroDegree => "pullback has nonzero degree",
        HomogeneityFailure::Inhomogeneous => "pullback is not homogeneous",
    }
}

impl Program {
    pub fn variety(&self, name: &str) -> Option<&Arc<ToricVariety>> {
        self.varieties.get(name)
    }

    pub fn map(&self, name: &str) -> Option<&Description> {
        self.maps.get(name)
    }

    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.get(name).map(|(_, i)| i)
    }

    /// Run all commands in order. A failing command is recorded and the
    /// loop continues; maps defined by failed `compose` commands stay
    /// undefined for later commands.
    pub fn run(&mut self, intr: &dyn Interrupt) -> Vec<OutputRecord> {
        let steps = std::mem::take(&mut self.steps);
        let mut out = Vec::new();
        for step in &steps {
            let start = Instant::now();
            let command = self.echo(step);
            let (outcome, validity) = match self.execute(step, intr) {
                Ok((p, v)) => (Ok(p), v),
                Err(e) => (Err(e), None),
            };
            out.push(OutputRecord { command, outcome, validity, elapsed: start.elapsed() });
        }
        self.steps = steps;
        out
    }

    fn echo(&self, step: &Step) -> String {
        match step {
            Step::Check(m) => format!("check {}", m),
            Step::Complete(m) => format!("complete {}", m),
            Step::Eval(m, p) => format!("eval {} at [{}]", m, p.iter().map(rat_string).collect::<Vec<_>>().join(", ")),
            Step::Compose { outer, inner, name } => format!("compose {} {} as {}", outer, inner, name),
            Step::Image(m, Some(i)) => format!("image {} of {}", m, i),
            Step::Image(m, None) => format!("image {}", m),
            Step::Preimage(m, i, s) => format!("preimage {} of {}{}", m, i, if *s { " saturate" } else { "" }),
            Step::Pullback(m, q) => {
                let names = self.maps.get(m).map(|d| d.target().names().to_vec()).unwrap_or_default();
                format!("pullback {} of {}", m, if names.is_empty() { q.to_string() } else { q.to_string_with(&names) })
            }
            Step::SameMap(a, b) => format!("same_map {} {}", a, b),
        }
    }

    fn get(&self, name: &str) -> Result<&Description, String> {
        self.maps.get(name).ok_or_else(|| format!("map `{}` is undefined because an earlier command failed", name))
    }

    fn execute(&mut self, step: &Step, intr: &dyn Interrupt) -> Result<(Payload, Option<String>), String> {
        let s = |e: &dyn std::fmt::Display| e.to_string();
        match step {
            Step::Check(m) => {
                let d = self.get(m)?;
                let hom = check_homogeneity(d);
                let rel = check_relevance(d);
                let verdict = if hom.passed() && rel.passed { "PASS" } else { "FAIL" };
                let homogeneity = match hom {
                    Homogeneity::Pass => HomogeneityReport { passed: true, witness: None, pullback: None, reason: None },
                    Homogeneity::Fail { witness, pullback, reason } => HomogeneityReport {
                        passed: false,
                        witness: Some(witness_string(d, &witness)),
                        pullback: Some(pullback.to_string_with(d.source().names())),
                        reason: Some(reason_str(reason).to_string()),
                    },
                };
                let test = match rel.test {
                    RelevanceTest::Cone => "cone",
                    RelevanceTest::Kernel => "kernel",
                };
                let names = d.target().names();
                let relevance = RelevanceReport {
                    passed: rel.passed,
                    test: test.to_string(),
                    sigma: rel.sigma.map(|s| s.iter().map(|&i| names[i].clone()).collect()),
                };
                Ok((Payload::Verdict { verdict: verdict.to_string(), homogeneity, relevance }, None))
            }
            Step::Complete(m) => {
                let d = self.get(m)?;
                let c = complete(d).map_err(|e| s(&e))?;
                let names = d.source().names();
                let q = |v: &[Rat]| v.iter().map(rat_string).collect();
                let steps = c
                    .steps
                    .iter()
                    .map(|st| StepReport {
                        divisor: st.divisor.to_string_with(names),
                        nu0: q(&st.nu0),
                        v_prime: q(&st.v_prime),
                        nu: q(&st.nu),
                    })
                    .collect();
                Ok((Payload::Description { components: c.description.component_strings(), steps }, None))
            }
            Step::Eval(m, point) => {
                let d = self.get(m)?;
                let payload = match map_point(d, point).map_err(|e| s(&e))? {
                    PointImage::Defined { values, branches } => Payload::Point {
                        defined: true,
                        values: values.iter().map(|v| v.to_string()).collect(),
                        branches,
                        reason: None,
                    },
                    PointImage::Undefined(u) => {
                        Payload::Point { defined: false, values: Vec::new(), branches: 0, reason: Some(u.as_str().to_string()) }
                    }
                };
                Ok((payload, None))
            }
            Step::Compose { outer, inner, name } => {
                let c = compose(self.get(outer)?, self.get(inner)?).map_err(|e| s(&e))?;
                let components = c.component_strings();
                self.maps.insert(name.clone(), c);
                Ok((Payload::Description { components, steps: Vec::new() }, None))
            }
            Step::Image(m, None) => {
                let d = self.get(m)?;
                let i = image_closure(d, intr).map_err(|e| s(&e))?;
                let generators = i.generators().iter().map(|g| g.to_string_with(d.target().names())).collect();
                Ok((Payload::Ideal { generators, notes: Vec::new() }, Some("everywhere".to_string())))
            }
            Step::Image(m, Some(i)) => {
                let d = self.get(m)?;
                let r = image_of_subscheme(d, &self.ideals[i].1, intr).map_err(|e| s(&e))?;
                Ok(locus(r, d.target().names()))
            }
            Step::Preimage(m, i, sat) => {
                let d = self.get(m)?;
                let r = preimage_ideal(d, self.ideals[i].1.generators(), *sat, intr).map_err(|e| s(&e))?;
                Ok(locus(r, d.source().names()))
            }
            Step::Pullback(m, f) => {
                let d = self.get(m)?;
                let p = pullback_divisor(d, f).map_err(|e| s(&e))?;
                let names = d.source().names();
                let payload = Payload::Divisor {
                    divisor: p.divisor.to_string_with(names),
                    unit: p.unit.to_string_with(names),
                    generators: p.report.ideal.generators().iter().map(|g| g.to_string_with(names)).collect(),
                    notes: p.report.notes.clone(),
                };
                Ok((payload, Some(p.report.validity.as_str().to_string())))
            }
            Step::SameMap(a, b) => {
                let same = same_map(self.get(a)?, self.get(b)?).map_err(|e| s(&e))?;
                Ok((Payload::Same { same }, None))
            }
        }
    }
}

/// Interrupt that fires once a wall-clock deadline has passed.
#[derive(Clone, Copy, Debug)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(d: Duration) -> Self {
        Deadline(Some(Instant::now() + d))
    }
}

impl Interrupt for Deadline {
    fn interrupted(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}
