//! Finite-difference Mathieu oracle shared by the integration tests.
//!
//! A class `(i, j)` is determined by its values on `[0, π/2]`: the reflection
//! parity is `(-1)^i` about `0` and `(-1)^(i+j)` about `π/2`. Even reflection
//! gives a Neumann end, odd reflection a Dirichlet end.
#![allow(dead_code)]

use std::f64::consts::PI;

use subspec::mathieu::ParityClass;

/// k-th eigenvalue of the second-order FD operator on `[0, π/2]` with `m`
/// intervals.
pub fn fd_eigenvalue(q: f64, class: ParityClass, k: usize, m: usize) -> f64 {
    let h = 0.5 * PI / m as f64;
    let neumann_left = class.i() == 0;
    let neumann_right = (class.i() + class.j()) % 2 == 0;
    let first = if neumann_left { 0 } else { 1 };
    let last = if neumann_right { m } else { m - 1 };
    let n = last - first + 1;
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(n);
    let mut off2 = Vec::with_capacity(n - 1);
    for p in first..=last {
        let phi = p as f64 * h;
        diag.push(2.0 * inv_h2 + q * phi.sin().powi(2));
    }
    // Ghost-point Neumann rows couple with weight 2; the product of the
    // two off-diagonal entries is what the characteristic polynomial sees.
    for p in first..last {
        let mut prod = inv_h2 * inv_h2;
        if (p == 0 && neumann_left) || (p + 1 == m && neumann_right) {
            prod *= 2.0;
        }
        off2.push(prod);
    }
    let count = |x: f64| {
        let mut c = 0;
        let mut d = diag[0] - x;
        if d < 0.0 {
            c += 1;
        }
        for i in 1..n {
            d = diag[i] - x - off2[i - 1] / if d == 0.0 { 1e-300 } else { d };
            if d < 0.0 {
                c += 1;
            }
        }
        c
    };
    let (mut lo, mut hi) = (-q.abs() - 1.0, 4.0 * inv_h2 + q.abs() + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Richardson extrapolation of the O(h²) FD eigenvalue.
pub fn fd_oracle(q: f64, class: ParityClass, k: usize) -> f64 {
    let coarse = fd_eigenvalue(q, class, k, 1024);
    let fine = fd_eigenvalue(q, class, k, 2048);
    (4.0 * fine - coarse) / 3.0
}
