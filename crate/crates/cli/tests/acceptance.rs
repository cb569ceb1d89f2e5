//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p toricmap --test acceptance`.

#[path = "../../core/tests/common/mod.rs"]
mod common;
#[path = "../../core/tests/props/mod.rs"]
mod props;

use std::path::Path;
use std::time::{Duration, Instant};

use toricmap::{compile, parse, Payload, Program};
use toricmap_core::groebner::{ideals_equal, saturate, Ideal};
use toricmap_core::map_calculus::{
    agreement_locus, check_homogeneity, complete, compose, same_map, Description, Homogeneity,
};
use toricmap_core::polynomial::RationalSection;
use toricmap_core::radical_sections::{evaluate, AlgebraicValue};
use toricmap_core::scheme_ops::{image_closure, map_point, preimage_ideal, pullback_divisor, PointImage, Validity};
use toricmap_core::{Never, Rat};

/// Every fixture must finish within this wall-clock budget.
const FIXTURE_BUDGET: Duration = Duration::from_secs(10);
/// Randomized cases per property suite.
const PROPERTY_CASES: u32 = 256;
/// Smallest case count the suites may be run with.
const MIN_PROPERTY_CASES: u32 = 200;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> Result<Program, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{}.tm", name));
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let script = parse(&text).map_err(|e| e.to_string())?;
    compile(&script).map_err(|e| e.to_string())
}

fn map<'a>(p: &'a Program, name: &str) -> Result<&'a Description, String> {
    p.map(name).ok_or_else(|| format!("fixture has no map `{}`", name))
}

fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn strings(v: &[AlgebraicValue]) -> Vec<String> {
    v.iter().map(|a| a.to_string()).collect()
}

fn section(d: &Description, on_target: bool, s: &str) -> Result<RationalSection, String> {
    let x = if on_target { d.target() } else { d.source() };
    x.parse_polynomial(s).map(RationalSection::from_poly).map_err(|e| e.to_string())
}

fn poly_ideal(x: &toricmap_core::toric_variety::ToricVariety, gens: &[&str]) -> Result<Ideal, String> {
    let ps = gens.iter().map(|g| x.parse_polynomial(g).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(x.nvars(), ps))
}

fn criterion_1() -> Check {
    let p = load("line_on_quadric")?;
    let f = map(&p, "f")?;
    match map_point(f, &[q(0), q(1)]).map_err(|e| e.to_string())? {
        PointImage::Defined { values, .. } => {
            ensure(strings(&values) == ["0", "0", "1"], || format!("image of [0,1] is {:?}", strings(&values)))?
        }
        other => return Err(format!("[0,1] not mapped: {:?}", other)),
    }
    let branches = evaluate(f.components(), &[q(1), q(0)]).map_err(|e| e.to_string())?;
    ensure(branches.len() == 2, || format!("{} branch tuples at [1,0]", branches.len()))?;
    ensure(strings(&branches[0]) != strings(&branches[1]), || "branches coincide".into())?;
    ensure(matches!(map_point(f, &[q(1), q(0)]), Ok(PointImage::Defined { branches: 2, .. })), || {
        "branches at [1,0] not orbit-equal".into()
    })?;
    let pb = pullback_divisor(f, &section(f, true, "y3")?).map_err(|e| e.to_string())?;
    ensure(pb.divisor == section(f, false, "x2")?, || format!("pullback of y3 is {}", pb.divisor))?;
    ensure(pb.unit.is_single_valued() && pb.unit.floor() == RationalSection::one(2), || {
        format!("unit residual {}", pb.unit)
    })
}

fn criterion_2() -> Check {
    let p = load("half_singularity")?;
    let f = map(&p, "f")?;
    ensure(check_homogeneity(f).passed(), || "check fails".into())?;
    let q_map = map(&p, "q")?;
    let qf = compose(q_map, f).map_err(|e| e.to_string())?;
    ensure(qf.component_strings() == ["x1", "x1*x2", "x1*x2^2"], || format!("composite {:?}", qf.component_strings()))?;
    for (m, expect) in [("y1^2", "x1"), ("y1*y2", "x1*x2"), ("y2^2", "x1*x2^2")] {
        let b = f.pullback_section(&section(f, true, m)?).map_err(|e| e.to_string())?;
        ensure(b.is_single_valued() && b.floor() == section(f, false, expect)?, || format!("pullback of {} is {}", m, b))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let p = load("fake_wps")?;
    let b = map(&p, "b")?;
    ensure(check_homogeneity(b).passed(), || "blow-down fails homogeneity".into())?;
    let x4 = b.source().parse_polynomial("x4").map_err(|e| e.to_string())?;
    ensure(b.ring().generators == vec![(x4, 3)], || format!("ring generators {:?}", b.ring().generators))?;
    ensure(!check_homogeneity(map(&p, "bad")?).passed(), || "map without roots passes".into())
}

fn criterion_4() -> Check {
    let p = load("z2_quotient")?;
    let f = map(&p, "f")?;
    let x = f.source();
    let a1 = preimage_ideal(f, p.ideal("A").unwrap().generators(), false, &Never).map_err(|e| e.to_string())?;
    let a2 = preimage_ideal(f, p.ideal("B").unwrap().generators(), false, &Never).map_err(|e| e.to_string())?;
    ensure(a1.ideal == poly_ideal(x, &["x1"])?, || format!("preimage of <y1> is {:?}", a1.ideal))?;
    ensure(a2.ideal == poly_ideal(x, &["x1^2", "x1*x2"])?, || format!("preimage of <y1^2, y1*y2> is {:?}", a2.ideal))?;
    ensure(a1.validity == Validity::SmoothLocusOfTarget, || format!("validity {:?}", a1.validity))?;
    // the singular point of the target is y1 = y2 = 0; restrict away from
    // its preimage
    let sing = poly_ideal(x, &["x1", "x2"])?;
    let s1 = saturate(&a1.ideal, &sing, &Never).map_err(|e| e.to_string())?;
    let s2 = saturate(&a2.ideal, &sing, &Never).map_err(|e| e.to_string())?;
    ensure(ideals_equal(&s1, &s2, &Never).map_err(|e| e.to_string())?, || "schemes differ on the smooth locus".into())?;
    ensure(!ideals_equal(&a1.ideal, &a2.ideal, &Never).map_err(|e| e.to_string())?, || "ideals agree everywhere".into())
}

fn criterion_5() -> Check {
    let p = load("diagonal")?;
    let d = map(&p, "d")?;
    let img = image_closure(d, &Never).map_err(|e| e.to_string())?;
    let g = d.target().parse_polynomial("y1*y4 - y2*y3").map_err(|e| e.to_string())?;
    ensure(img.generators().len() == 1 && (img.generators()[0] == g || img.generators()[0] == -&g), || {
        format!("image ideal {}", img.to_string_with(d.target().names()))
    })
}

fn criterion_6() -> Check {
    let p = load("cube_identity")?;
    let f = map(&p, "f")?;
    let c = complete(f).map_err(|e| e.to_string())?;
    ensure(c.description.component_strings() == ["x1", "x2"], || format!("completion {:?}", c.description.component_strings()))?;
    ensure(same_map(&c.description, map(&p, "id")?).map_err(|e| e.to_string())?, || "not the identity".into())?;
    ensure(c.steps.len() == 1, || format!("{} steps", c.steps.len()))?;
    ensure(c.steps[0].nu0 == [q(3), q(2)] && c.steps[0].nu == [q(2), q(2)], || {
        format!("nu0 = {:?}, nu = {:?}", c.steps[0].nu0, c.steps[0].nu)
    })
}

fn criterion_7() -> Check {
    let p = load("two_maps")?;
    let (phi, psi) = (map(&p, "phi")?, map(&p, "psi")?);
    let err = |e: toricmap_core::map_calculus::MapError| e.to_string();
    ensure(same_map(&compose(psi, phi).map_err(err)?, map(&p, "idx")?).map_err(err)?, || "psi . phi is not id".into())?;
    ensure(same_map(&compose(phi, psi).map_err(err)?, map(&p, "idy")?).map_err(err)?, || "phi . psi is not id".into())?;
    let cphi = complete(phi).map_err(err)?.description;
    let cpsi = complete(psi).map_err(err)?.description;
    let want_phi = ["root(x1, 2)", "x2", "x3", "x2 * root(x1, 2)"];
    let want_psi = ["y1^2 * root(y4, 2)", "y2 * root(y4, 2)", "y1*y2*y3"];
    ensure(cphi.component_strings() == want_phi, || format!("complete phi = {:?}", cphi.component_strings()))?;
    ensure(cpsi.component_strings() == want_psi, || format!("complete psi = {:?}", cpsi.component_strings()))?;
    let s_phi = agreement_locus(&cphi).disagreement_strata(cphi.source());
    let s_psi = agreement_locus(&cpsi).disagreement_strata(cpsi.source());
    ensure(s_phi == Some(vec![vec![0, 1], vec![0, 2], vec![1, 2]]), || format!("phi indeterminacy {:?}", s_phi))?;
    ensure(s_psi == Some(vec![vec![0, 3], vec![1, 3]]), || format!("psi indeterminacy {:?}", s_psi))
}

fn criterion_8() -> Check {
    let p = load("cube_fan")?;
    let y = p.variety("Y").unwrap();
    let fan = y.fan().map_err(|e| e.to_string())?;
    ensure(fan.rays().len() == 8 && fan.maximal_cones().len() == 6, || "wrong fan size".into())?;
    ensure(y.class_group().free_rank == 5, || format!("Cl free rank {}", y.class_group().free_rank))?;
    let phi1 = map(&p, "phi1")?;
    let r = preimage_ideal(phi1, p.ideal("P").unwrap().generators(), true, &Never).map_err(|e| e.to_string())?;
    let expect = poly_ideal(phi1.source(), &["x1 - x2", "x3 - 1/3*x4"])?;
    ensure(ideals_equal(&r.ideal, &expect, &Never).map_err(|e| e.to_string())?, || {
        format!("saturated preimage {}", r.ideal.to_string_with(phi1.source().names()))
    })?;
    let phi0 = map(&p, "phi0")?;
    let f = y.parse_polynomial("y1^2*y3^2*y4 - y6^2*y8^2").map_err(|e| e.to_string())?;
    ensure(phi0.pullback_polynomial(&f).map_err(|e| e.to_string())?.is_zero(), || "f does not pull back to 0".into())
}

fn criterion_9() -> Check {
    let p = load("branches")?;
    let m = map(&p, "m")?;
    let vals = evaluate(m.components(), &[q(64), q(-1)]).map_err(|e| e.to_string())?;
    ensure(vals.len() == 6, || format!("{} branch tuples", vals.len()))?;
    let excluded = vec![AlgebraicValue::from_rat(&q(2)), AlgebraicValue::from_rat(&q(-512 * 65))];
    let principal = vec![AlgebraicValue::from_rat(&q(2)), AlgebraicValue::from_rat(&q(512 * 65))];
    ensure(!vals.contains(&excluded), || "(2, -512*65) is listed".into())?;
    ensure(vals[0] == principal, || format!("principal branch {:?}", strings(&vals[0])))
}

fn criterion_10() -> Check {
    ensure(PROPERTY_CASES >= MIN_PROPERTY_CASES, || "too few cases".into())?;
    let mut failures = Vec::new();
    for (name, suite) in props::SUITES {
        if let Err(e) = suite(PROPERTY_CASES) {
            failures.push(format!("{}: {}", name, e));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn criterion_11() -> Check {
    let p = load("p112_to_p123")?;
    let bad = map(&p, "bad")?;
    match check_homogeneity(bad) {
        Homogeneity::Fail { witness, .. } => {
            let w = witness.to_string_with(bad.target().names());
            ensure(w == "y3/y1^3", || format!("witness {}", w))?;
        }
        Homogeneity::Pass => return Err("first map passes".into()),
    }
    ensure(check_homogeneity(map(&p, "good")?).passed(), || "corrected map fails".into())?;
    // the CLI reports the same verdicts
    let records = toricmap::run_script(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/p112_to_p123.tm")).unwrap(),
        &Never,
    )
    .map_err(|e| e.to_string())?;
    let verdicts: Vec<String> = records
        .iter()
        .filter_map(|r| match r.payload() {
            Some(Payload::Verdict { verdict, .. }) => Some(verdict.clone()),
            _ => None,
        })
        .collect();
    ensure(verdicts == ["FAIL", "PASS"], || format!("CLI verdicts {:?}", verdicts))
}

fn main() {
    let criteria: [(&str, fn() -> Check, bool); 11] = [
        ("line on P(1,1,2): point images, branch orbits, pullback of y3", criterion_1, true),
        ("half-singularity blow-up: check and invariant pullbacks", criterion_2, true),
        ("fake weighted projective blow-down: Z/3 torsion and ring generator", criterion_3, true),
        ("Z/2 quotient preimages agree on the smooth locus", criterion_4, true),
        ("image closure of the diagonal", criterion_5, true),
        ("completion of (x1^3, x1^2*x2)", criterion_6, true),
        ("mutually inverse maps, completions, indeterminacy", criterion_7, true),
        ("cube fan: Cl rank, saturated preimage, vanishing pullback", criterion_8, true),
        ("six branch tuples at (64, -1)", criterion_9, true),
        ("property suites", criterion_10, false),
        ("homogeneity witness y3/y1^3 and corrected map", criterion_11, true),
    ];
    let mut failed = 0;
    for (i, (label, run, budgeted)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        if result.is_ok() && *budgeted && elapsed > FIXTURE_BUDGET {
            result = Err(format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), FIXTURE_BUDGET.as_secs()));
        }
        match result {
            Ok(()) => println!("PASS [{:>2}] {} ({:.2}s)", i + 1, label, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {}", i + 1, label, e);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
