#![allow(dead_code)]

use std::sync::Arc;

use toricmap_core::lattice_fan::Fan;
use toricmap_core::polynomial::{Polynomial, RationalSection};
use toricmap_core::radical_sections::{Component, RadicalTerm};
use toricmap_core::toric_variety::ToricVariety;
use toricmap_core::Rat;

pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{}{}", prefix, i)).collect()
}

pub fn fan_variety(
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    prefix: &str,
) -> Arc<ToricVariety> {
    let n = rays.len();
    let f = Fan::new(dim, rays, cones).unwrap();
    Arc::new(ToricVariety::from_fan(f, Some(names(prefix, n))).unwrap())
}

pub fn p1(prefix: &str) -> Arc<ToricVariety> {
    fan_variety(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]], prefix)
}

pub fn p2(prefix: &str) -> Arc<ToricVariety> {
    fan_variety(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        prefix,
    )
}

/// P(1,1,2); the third variable has weight 2.
pub fn p112(prefix: &str) -> Arc<ToricVariety> {
    fan_variety(
        2,
        vec![vec![-1, -2], vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        prefix,
    )
}

pub fn p123(prefix: &str) -> Arc<ToricVariety> {
    fan_variety(
        2,
        vec![vec![-2, -3], vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        prefix,
    )
}

pub fn p1xp1(prefix: &str) -> Arc<ToricVariety> {
    fan_variety(
        2,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        prefix,
    )
}

/// The target of the two mutually inverse maps with P(1,1,2).
pub fn y_two_maps() -> Arc<ToricVariety> {
    fan_variety(
        2,
        vec![vec![-2, -3], vec![1, 1], vec![0, 1], vec![0, -1]],
        vec![vec![1, 3], vec![1, 2], vec![0, 3], vec![0, 2]],
        "y",
    )
}

/// Complete, non-projective threefold from a cube with one perturbed ray.
pub fn cube_fan() -> Arc<ToricVariety> {
    let rays = vec![
        vec![1, 1, 1],
        vec![1, 1, -1],
        vec![1, -1, 1],
        vec![2, -1, -1],
        vec![-1, 1, 1],
        vec![-1, 1, -1],
        vec![-1, -1, 1],
        vec![-1, -1, -1],
    ];
    let cones = [
        [1, 2, 3, 4],
        [5, 6, 7, 8],
        [1, 2, 5, 6],
        [3, 4, 7, 8],
        [1, 3, 5, 7],
        [2, 4, 6, 8],
    ];
    let cones = cones
        .iter()
        .map(|c| c.iter().map(|i| i - 1).collect())
        .collect();
    fan_variety(3, rays, cones, "y")
}

pub fn poly(x: &ToricVariety, s: &str) -> Polynomial {
    x.parse_polynomial(s).unwrap()
}

pub fn polys(x: &ToricVariety, ss: &[&str]) -> Vec<Polynomial> {
    ss.iter().map(|s| poly(x, s)).collect()
}

pub fn sec(x: &ToricVariety, s: &str) -> RadicalTerm {
    RadicalTerm::section(RationalSection::from_poly(poly(x, s)))
}

/// `g^{p}` for a rational power.
pub fn power(x: &ToricVariety, g: &str, p: Rat) -> RadicalTerm {
    RadicalTerm {
        coeff: q(1),
        factors: vec![(RationalSection::from_poly(poly(x, g)), p)],
    }
}

pub fn comp(terms: Vec<RadicalTerm>) -> Component {
    terms
}
