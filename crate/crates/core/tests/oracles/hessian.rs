// SPDX-License-Identifier: Apache-2.0

//! Finite-difference Hessian oracle for the charge–dipole potential
//! `V(r) = q p·r / (4π ε_r ε₀ |r|³)`.
//!
//! The step is `h = 1e-6 |a|`, so plain f64 second differences would lose
//! about `ε·|a|²/h² ≈ 2e-4` to cancellation. `V` is evaluated in
//! double-double arithmetic instead. Division goes through a
//! Newton-refined reciprocal because the crate's own quotient is only
//! accurate to about 2e-17.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twofloat::TwoFloat;

const PI: f64 = std::f64::consts::PI;

pub struct Config {
    pub charge: f64,
    pub dipole: [f64; 3],
    pub standoff: [f64; 3],
    pub epsilon_r: f64,
}

fn recip(x: TwoFloat) -> TwoFloat {
    let one = TwoFloat::from(1.0);
    let y = TwoFloat::from(1.0 / x.hi());
    let y = y + y * (one - x * y);
    y + y * (one - x * y)
}

pub fn potential(c: &Config, r: [TwoFloat; 3], eps0: f64) -> TwoFloat {
    let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    let r3 = r2 * r2.sqrt();
    let p_dot_r = r[0] * c.dipole[0] + r[1] * c.dipole[1] + r[2] * c.dipole[2];
    let k = TwoFloat::from(c.charge) * recip(TwoFloat::from(4.0 * PI) * c.epsilon_r * eps0);
    k * p_dot_r * recip(r3)
}

#[allow(clippy::needless_range_loop)]
pub fn finite_difference(c: &Config, eps0: f64) -> [[f64; 3]; 3] {
    let a = c.standoff;
    let h = 1e-6 * (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let at = |di: [f64; 3]| {
        let r = [0, 1, 2].map(|k| TwoFloat::from(a[k]) + TwoFloat::from(di[k]));
        potential(c, r, eps0)
    };
    let step = |i: usize, s: f64| {
        let mut d = [0.0; 3];
        d[i] = s * h;
        d
    };
    let step2 = |i: usize, si: f64, j: usize, sj: f64| {
        let mut d = [0.0; 3];
        d[i] += si * h;
        d[j] += sj * h;
        d
    };
    let v0 = at([0.0; 3]);
    let h2 = TwoFloat::from(h) * h;
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let value = if i == j {
                (at(step(i, 1.0)) - v0 * 2.0 + at(step(i, -1.0))) * recip(h2)
            } else {
                (at(step2(i, 1.0, j, 1.0))
                    - at(step2(i, 1.0, j, -1.0))
                    - at(step2(i, -1.0, j, 1.0))
                    + at(step2(i, -1.0, j, -1.0)))
                    * recip(h2 * 4.0)
            };
            m[i][j] = value.hi();
        }
    }
    m
}

pub fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.map(|x| x / n);
        }
    }
}

pub fn random_config(rng: &mut ChaCha8Rng, debye: f64, e: f64) -> Config {
    let a_len = 10f64.powf(rng.gen_range(-9.0..-7.0));
    let p_len = rng.gen_range(1.0..2000.0) * debye;
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Config {
        charge: sign * rng.gen_range(1..=20) as f64 * e,
        dipole: unit_vector(rng).map(|x| x * p_len),
        standoff: unit_vector(rng).map(|x| x * a_len),
        epsilon_r: rng.gen_range(1.0..80.0),
    }
}
