// SPDX-License-Identifier: Apache-2.0

//! Gravitational interaction of two uniform unit spheres by quadrature.
//!
//! Units: `G = m = R = 1`. Sphere A sits at the origin, sphere B at
//! distance `d`. The energy is the potential of A integrated over the mass
//! of B, organized in shells of radius `t` about A's centre; the fraction
//! of each shell inside B is the spherical-cap fraction
//! `(1 − (t − d)²) / (4 t d)`.

/// Potential of a uniform unit sphere at distance `t` from its centre.
fn potential(t: f64) -> f64 {
    if t < 1.0 {
        -(3.0 - t * t) / 2.0
    } else {
        -1.0 / t
    }
}

/// Fraction of the shell of radius `t` about A that lies inside B.
fn shell_fraction(t: f64, d: f64) -> f64 {
    if d == 0.0 {
        return if t < 1.0 { 1.0 } else { 0.0 };
    }
    if t <= 1.0 - d {
        1.0
    } else if t < (d - 1.0).abs() || t > d + 1.0 {
        0.0
    } else {
        ((1.0 - (t - d) * (t - d)) / (4.0 * t * d)).clamp(0.0, 1.0)
    }
}

/// Composite 4-point Gauss–Legendre. Only interior points are sampled, so
/// jumps at the piece ends do not matter.
fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, pieces: usize) -> f64 {
    const NODES: [(f64, f64); 4] = [
        (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
        (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    ];
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let mid = a + (k as f64 + 0.5) * h;
            NODES
                .iter()
                .map(|(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Interaction energy `U(d)` in units of `G m² / R`.
pub fn interaction(d: f64) -> f64 {
    let density = 3.0 / (4.0 * std::f64::consts::PI);
    let integrand =
        |t: f64| potential(t) * density * 4.0 * std::f64::consts::PI * t * t * shell_fraction(t, d);
    let mut breaks = vec![0.0, (1.0 - d).abs(), 1.0, 1.0 + d];
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    breaks
        .windows(2)
        .map(|w| gauss_legendre(integrand, w[0], w[1], 200))
        .sum()
}
