//! Real symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues are located one at a time by bisection on Sturm sequence
//! counts; eigenvectors come from inverse iteration with a partially pivoted
//! LU factorization of the shifted matrix.

/// A real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    /// Panics unless `off.len() + 1 == diag.len()` and the matrix is non-empty.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty tridiagonal matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn max_abs_entry(&self) -> f64 {
        self.diag
            .iter()
            .chain(self.off.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let max_off2 = self.off.iter().fold(1.0_f64, |m, e| m.max(e * e));
        let pivmin = f64::MIN_POSITIVE * max_off2;
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let e = self.off[i - 1];
            d = (self.diag[i] - x) - e * e / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based).
    ///
    /// `hint` is an optional interval believed to contain it; it is checked
    /// against Sturm counts and replaced by the Gershgorin interval when wrong.
    pub fn eigenvalue(&self, k: usize, hint: Option<(f64, f64)>) -> f64 {
        assert!(k < self.dim(), "eigenvalue index {k} out of range");
        let (mut lo, mut hi) = match hint {
            Some((a, b)) if self.count_below(a) <= k && self.count_below(b) > k => (a, b),
            _ => {
                let (a, b) = self.gershgorin();
                let pad = f64::EPSILON * (a.abs() + b.abs()) + f64::MIN_POSITIVE;
                (a - pad, b + pad)
            }
        };
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit eigenvector for the (simple, well separated) eigenvalue `lambda`.
    ///
    /// The overall sign is arbitrary.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let lu = ShiftedLu::factor(self, lambda);
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.754_877_666).sin())
            .collect();
        normalize(&mut v);
        for _ in 0..6 {
            let mut x = v.clone();
            lu.solve(&mut x);
            normalize(&mut x);
            let dot: f64 = x.iter().zip(&v).map(|(a, b)| a * b).sum();
            let done = 1.0 - dot.abs() < 4.0 * f64::EPSILON;
            v = x;
            if done {
                break;
            }
        }
        v
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// `x^T A x` computed from the bands.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut s = 0.0;
        for i in 0..n {
            s += self.diag[i] * x[i] * x[i];
        }
        for i in 0..n - 1 {
            s += 2.0 * self.off[i] * x[i] * x[i + 1];
        }
        s
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
}

/// LU factorization with partial pivoting of `A - shift * I` (the `?gttrf`
/// layout: unit lower bidiagonal `L` with pivots, upper `U` with two
/// superdiagonals).
struct ShiftedLu {
    l: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(a: &SymTridiag, shift: f64) -> Self {
        let n = a.dim();
        let tiny = f64::EPSILON * a.max_abs_entry().max(shift.abs()).max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = a.diag.iter().map(|v| v - shift).collect();
        let mut l = a.off.clone();
        let mut du = a.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= l[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = if d[i] < 0.0 { -tiny } else { tiny };
                }
                let fact = l[i] / d[i];
                l[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / l[i];
                d[i] = l[i];
                l[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 1 < n - 1 {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = if d[n - 1] < 0.0 { -tiny } else { tiny };
        }
        Self {
            l,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.l[i] * b[i];
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(a: &SymTridiag) -> Vec<Vec<f64>> {
        let n = a.dim();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = a.diag[i];
            if i + 1 < n {
                m[i][i + 1] = a.off[i];
                m[i + 1][i] = a.off[i];
            }
        }
        m
    }

    // Cyclic Jacobi on the dense matrix: an independent eigenvalue route.
    fn jacobi_eigenvalues(mut m: Vec<Vec<f64>>) -> Vec<f64> {
        let n = m.len();
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[i][j] * m[i][j])
                .sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if m[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[k][p];
                        let mkq = m[k][q];
                        m[k][p] = c * mkp - s * mkq;
                        m[k][q] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[p][k];
                        let mqk = m[q][k];
                        m[p][k] = c * mpk - s * mqk;
                        m[q][k] = s * mpk + c * mqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    fn sample_matrix(n: usize) -> SymTridiag {
        let diag = (0..n).map(|i| ((i * 7 % 5) as f64) - 1.5 + 0.3 * i as f64).collect();
        let off = (0..n - 1).map(|i| 0.7 + 0.1 * ((i * 3 % 4) as f64)).collect();
        SymTridiag::new(diag, off)
    }

    #[test]
    fn bisection_matches_jacobi() {
        let a = sample_matrix(12);
        let reference = jacobi_eigenvalues(dense(&a));
        for (k, want) in reference.iter().enumerate() {
            let got = a.eigenvalue(k, None);
            assert!((got - want).abs() < 1e-12, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn inverse_iteration_residual() {
        let a = sample_matrix(20);
        for k in 0..20 {
            let lambda = a.eigenvalue(k, None);
            let v = a.eigenvector(lambda);
            let av = a.matvec(&v);
            let res: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - lambda * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-12, "k={k} residual {res}");
            assert!((a.quadratic_form(&v) - lambda).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_hint_falls_back() {
        let a = sample_matrix(8);
        let good = a.eigenvalue(3, None);
        let hinted = a.eigenvalue(3, Some((100.0, 200.0)));
        assert_eq!(good, hinted);
    }

    #[test]
    fn count_below_diagonal_matrix() {
        let a = SymTridiag::new(vec![1.0, 4.0, 9.0], vec![0.0, 0.0]);
        assert_eq!(a.count_below(0.5), 0);
        assert_eq!(a.count_below(4.5), 2);
        assert_eq!(a.count_below(100.0), 3);
        assert_eq!(a.eigenvalue(1, None), 4.0);
    }
}
