use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rat;

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub(crate) fn int_rat(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// All `k`-subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

/// Exact `n`-th root of a rational, if it exists. Negative inputs are
/// accepted for odd `n`.
pub(crate) fn rational_root(q: &Rat, n: u32) -> Option<Rat> {
    if n == 1 || q.is_zero() {
        return Some(q.clone());
    }
    let neg = q.is_negative();
    if neg && n.is_multiple_of(2) {
        return None;
    }
    let a = q.abs();
    let num = exact_root(a.numer(), n)?;
    let den = exact_root(a.denom(), n)?;
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// `q^e` for a signed integer exponent.
pub(crate) fn rat_pow(q: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Reduce `q` into `[0, m)`.
pub(crate) fn rat_mod(q: &Rat, m: &Rat) -> Rat {
    let k = (q / m).floor();
    q - k * m
}
