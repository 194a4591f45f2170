#![allow(dead_code)]

use std::sync::Arc;

use duval_core::gfpoly::{Monomial, PolyFp, Ring};
use proptest::prelude::*;

pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 101];

pub fn ring(p: u64) -> Arc<Ring> {
    Ring::new(p, &["x", "y", "z"]).unwrap()
}

/// Polynomials with up to `max_terms` terms and exponents `<= max_exp` in x, y, z.
pub fn poly_in(ring: Arc<Ring>, max_terms: usize, max_exp: u32) -> impl Strategy<Value = PolyFp> {
    let n = ring.nvars();
    prop::collection::vec(
        (any::<i64>(), prop::collection::vec(0..=max_exp, n)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        PolyFp::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(c, e)| (Monomial::from_exponents(e), c % 1_000_003)),
        )
    })
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

/// Triples of polynomials over a common random prime field.
pub fn triple() -> impl Strategy<Value = (PolyFp, PolyFp, PolyFp)> {
    prime().prop_flat_map(|p| {
        let r = ring(p);
        (
            poly_in(r.clone(), 5, 3),
            poly_in(r.clone(), 5, 3),
            poly_in(r, 5, 3),
        )
    })
}

/// Dense `a^e mod p` without touching the library field code.
pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Row-reduced span over F_p of dense vectors; returns the rank.
pub struct Echelon {
    p: u64,
    /// pivot column -> row normalised to 1 at the pivot
    rows: std::collections::BTreeMap<usize, Vec<u64>>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Echelon { p, rows: Default::default() }
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        loop {
            let Some(lead) = v.iter().position(|&c| c != 0) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let c = v[lead];
                    for (a, b) in v.iter_mut().zip(row) {
                        *a = (*a + p - c * b % p) % p;
                    }
                }
                None => {
                    let s = inv(v[lead], p);
                    for a in v.iter_mut() {
                        *a = *a * s % p;
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
    }

    /// Whether `v` lies in the span, without modifying it.
    pub fn contains(&self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        loop {
            let Some(lead) = v.iter().position(|&c| c != 0) else {
                return true;
            };
            let Some(row) = self.rows.get(&lead) else {
                return false;
            };
            let c = v[lead];
            for (a, b) in v.iter_mut().zip(row) {
                *a = (*a + p - c * b % p) % p;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
