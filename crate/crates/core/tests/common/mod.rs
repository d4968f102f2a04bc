#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use tlwg_core::nc2::enumerate_nc2;
use tlwg_core::Pairing;

pub fn pr(s: &str) -> Pairing {
    s.parse().unwrap()
}

pub fn all(k: usize) -> &'static [Pairing] {
    static CACHE: OnceLock<Vec<Vec<Pairing>>> = OnceLock::new();
    &CACHE.get_or_init(|| (1..=7).map(|k| enumerate_nc2(k).unwrap()).collect())[k - 1]
}

pub fn pairing(k: usize) -> impl Strategy<Value = Pairing> {
    (0..all(k).len()).prop_map(move |i| all(k)[i].clone())
}

/// A random pairing with half-size in `lo..=hi`.
pub fn any_pairing(lo: usize, hi: usize) -> impl Strategy<Value = Pairing> {
    (lo..=hi).prop_flat_map(pairing)
}

/// Two random pairings of the same half-size in `lo..=hi`.
pub fn pair_of(lo: usize, hi: usize) -> impl Strategy<Value = (Pairing, Pairing)> {
    (lo..=hi).prop_flat_map(|k| (pairing(k), pairing(k)))
}

pub fn triple_of(lo: usize, hi: usize) -> impl Strategy<Value = (Pairing, Pairing, Pairing)> {
    (lo..=hi).prop_flat_map(|k| (pairing(k), pairing(k), pairing(k)))
}
