//! Test-side oracles. Deliberately share no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Every permutation of `0..n` as an image vector.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for p in &out {
            for pos in 0..=k {
                let mut v = p.clone();
                v.insert(pos, k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Cycle of each point, as (cycle id, cycle lengths).
pub fn cycles(perm: &[usize]) -> (Vec<usize>, Vec<u64>) {
    let mut id = vec![usize::MAX; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        if id[s] != usize::MAX {
            continue;
        }
        let mut i = s;
        let mut len = 0;
        while id[i] == usize::MAX {
            id[i] = lens.len();
            i = perm[i];
            len += 1;
        }
        lens.push(len);
    }
    (id, lens)
}

pub fn sorted_type(perm: &[usize]) -> Vec<u64> {
    let mut t = cycles(perm).1;
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

pub fn order(lens: &[u64]) -> u64 {
    lens.iter().fold(1, |acc, &l| acc / gcd(acc, l) * l)
}

pub fn sign(lens: &[u64]) -> i64 {
    if lens.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Order of `g^r` for a permutation with cycle lengths `lens`.
pub fn power_order(lens: &[u64], r: u64) -> u64 {
    order(&lens.iter().map(|&l| l / gcd(l, r)).collect::<Vec<_>>())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Partitions of `n` as descending part lists.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the conjugacy class of the given type, `n! / prod(d^k k!)`.
pub fn class_size(parts: &[u64]) -> BigInt {
    let n: u64 = parts.iter().sum();
    let mut z = BigInt::from(1);
    let mut i = 0;
    while i < parts.len() {
        let d = parts[i];
        let k = parts[i..].iter().take_while(|&&p| p == d).count() as u64;
        z *= BigInt::from(d).pow(k as u32) * factorial(k);
        i += k as usize;
    }
    factorial(n) / z
}
