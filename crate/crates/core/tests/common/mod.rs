#![allow(dead_code)]

use elliptic_sixj::{cplx, Params, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A point on the annulus `lo ≤ |x| ≤ hi` with uniform argument.
pub fn annulus(r: &mut ChaCha20Rng, lo: f64, hi: f64) -> C64 {
    let rad = r.random_range(lo..hi);
    let ang = r.random_range(0.0..std::f64::consts::TAU);
    C64::from_polar(rad, ang)
}

pub fn spectral(r: &mut ChaCha20Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| annulus(r, 0.5, 2.0)).collect()
}

pub fn lambda(r: &mut ChaCha20Rng) -> C64 {
    cplx(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

pub fn params(r: &mut ChaCha20Rng) -> Params {
    let p = annulus(r, 0.0, 0.5);
    let q = annulus(r, 0.4, 0.9);
    Params::new(p, q).unwrap()
}

pub fn canonical() -> Params {
    Params::new(cplx(0.13, 0.21), cplx(0.55, 0.3)).unwrap()
}
