//! Gauss–Legendre rules and collapsed-coordinate rules on simplices.

use alloc::vec;
use alloc::vec::Vec;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = vec![(0.0, 0.0); n];
    let pi = core::f64::consts::PI;
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(pi * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| ((x + 1.0) / 2.0, w / 2.0))
        .collect()
}

/// Points and weights integrating over `Δ^d = {x ≥ 0, Σx ≤ 1}` (Lebesgue
/// measure), from the Duffy collapse of the cube `[0,1]^d`. Exact for
/// polynomials of total degree `< 2n − d + 1`.
pub fn simplex_rule(d: usize, n: usize) -> Vec<(Vec<f64>, f64)> {
    let line = gauss_legendre_unit(n);
    let mut out = vec![(Vec::new(), 1.0)];
    // x_1 = u_1, x_2 = (1 − u_1) u_2, x_3 = (1 − u_1)(1 − u_2) u_3, …
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * n);
        for (pt, w) in &out {
            let used: f64 = pt.iter().sum();
            let rest = 1.0 - used;
            for &(u, wu) in &line {
                let mut p = pt.clone();
                p.push(rest * u);
                next.push((p, w * wu * rest));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_legendre(5);
        let sum: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((sum - 2.0).abs() < 1e-14);
        let x8: f64 = rule.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((x8 - 2.0 / 9.0).abs() < 1e-14);
        let big = gauss_legendre(32);
        let x40: f64 = big.iter().map(|(x, w)| w * x.powi(40)).sum();
        assert!((x40 - 2.0 / 41.0).abs() < 1e-13);
    }

    #[test]
    fn triangle_moments() {
        let rule = simplex_rule(2, 6);
        let area: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((area - 0.5).abs() < 1e-14);
        let m: f64 = rule.iter().map(|(p, w)| w * p[0]).sum();
        assert!((m - 1.0 / 6.0).abs() < 1e-14);
        let vol3: f64 = simplex_rule(3, 4).iter().map(|(_, w)| w).sum();
        assert!((vol3 - 1.0 / 6.0).abs() < 1e-14);
    }
}
