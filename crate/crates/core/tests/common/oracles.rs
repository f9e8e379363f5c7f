//! Reference implementations written without reference to the library's
//! own formulas: interface matching via 2x2 matrices, the textbook barrier
//! transmission, and direct integration of the Schrodinger equation.

use barrier_rhs::Complex64;

type M2 = [[Complex64; 2]; 2];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn inv(a: &M2) -> M2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

fn apply(a: &M2, v: [Complex64; 2]) -> [Complex64; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Maps plane-wave amplitudes `(alpha, beta)` of `alpha e^{iKx} + beta e^{-iKx}`
/// to `(psi, psi')` at `x0`.
fn basis(kk: Complex64, x0: f64) -> M2 {
    let ep = (I * kk * x0).exp();
    let em = (-I * kk * x0).exp();
    [[ep, em], [I * kk * ep, -I * kk * em]]
}

#[derive(Debug, Clone, Copy)]
pub struct TransferAmplitudes {
    pub t: Complex64,
    pub r_l: Complex64,
    pub r_r: Complex64,
    /// Interior `(A, B)` of `A e^{iqx} + B e^{-iqx}` for each incidence.
    pub interior_left: (Complex64, Complex64),
    pub interior_right: (Complex64, Complex64),
}

/// Amplitudes for the barrier of height `v0` on `[a, b]` with `hbar = m = 1`
/// scaled by `s = 2m/hbar^2`, via interface matching.
pub fn transfer_matrix(k: Complex64, v0: f64, a: f64, b: f64, s: f64) -> TransferAmplitudes {
    let q = (k * k - s * v0).sqrt();
    let into_mid = mul(&inv(&basis(q, a)), &basis(k, a));
    let total = mul(&mul(&inv(&basis(k, b)), &basis(q, b)), &into_mid);

    // Left incidence: left (1, R_l) -> right (T, 0).
    let r_l = -total[1][0] / total[1][1];
    let t_left = total[0][0] + total[0][1] * r_l;
    let mid_l = apply(&into_mid, [Complex64::new(1.0, 0.0), r_l]);

    // Right incidence: left (0, T) -> right (R_r, 1).
    let t_right = 1.0 / total[1][1];
    let r_r = total[0][1] * t_right;
    let mid_r = apply(&into_mid, [Complex64::new(0.0, 0.0), t_right]);

    assert!((t_left - t_right).norm() < 1e-9 * (1.0 + t_left.norm()));
    TransferAmplitudes {
        t: t_left,
        r_l,
        r_r,
        interior_left: (mid_l[0], mid_l[1]),
        interior_right: (mid_r[0], mid_r[1]),
    }
}

/// Textbook `|T|^2` for a rectangular barrier below its top, `hbar = m = 1`.
pub fn barrier_transmission_below(e: f64, v0: f64, width: f64) -> f64 {
    let kappa = (2.0 * (v0 - e)).sqrt();
    let sh = (kappa * width).sinh();
    1.0 / (1.0 + v0 * v0 * sh * sh / (4.0 * e * (v0 - e)))
}

/// Textbook `|T|^2` above the top, `hbar = m = 1`.
pub fn barrier_transmission_above(e: f64, v0: f64, width: f64) -> f64 {
    let kq = (2.0 * (e - v0)).sqrt();
    let sn = (kq * width).sin();
    1.0 / (1.0 + v0 * v0 * sn * sn / (4.0 * e * (e - v0)))
}

/// Integrates `psi'' = s (V(x) - E) psi` with classical RK4 from `x0` to `x1`.
pub fn rk4_schrodinger(
    e: f64,
    potential: impl Fn(f64) -> f64,
    s: f64,
    x0: f64,
    x1: f64,
    init: (Complex64, Complex64),
    steps: usize,
) -> (Complex64, Complex64) {
    let h = (x1 - x0) / steps as f64;
    let rhs = |x: f64, y: (Complex64, Complex64)| (y.1, y.0 * (s * (potential(x) - e)));
    let mut y = init;
    let mut x = x0;
    for _ in 0..steps {
        let k1 = rhs(x, y);
        let k2 = rhs(x + 0.5 * h, (y.0 + k1.0 * (0.5 * h), y.1 + k1.1 * (0.5 * h)));
        let k3 = rhs(x + 0.5 * h, (y.0 + k2.0 * (0.5 * h), y.1 + k2.1 * (0.5 * h)));
        let k4 = rhs(x + h, (y.0 + k3.0 * h, y.1 + k3.1 * h));
        y = (
            y.0 + (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0),
            y.1 + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0),
        );
        x += h;
    }
    y
}

/// Free-space resolvent kernel of `-(1/s) d^2/dx^2` at physical wavenumber `k`
/// (`Im k > 0`), with `s = 2m/hbar^2`.
pub fn free_green(k: Complex64, x: f64, xp: f64, m: f64, hbar: f64) -> Complex64 {
    m / (I * hbar * hbar * k) * (I * k * (x - xp).abs()).exp()
}
