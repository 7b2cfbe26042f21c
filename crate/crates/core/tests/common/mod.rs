//! Independent reference implementations used by the integration tests.
//! Nothing here touches the beta matrices.
#![allow(dead_code)]

use std::sync::OnceLock;

use kdp::{BetaRep64, EMFields64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rep() -> &'static BetaRep64 {
    static REP: OnceLock<BetaRep64> = OnceLock::new();
    REP.get_or_init(|| BetaRep64::standard().expect("standard representation"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec3(r: &mut impl Rng, scale: f64) -> [f64; 3] {
    std::array::from_fn(|_| r.random_range(-scale..scale))
}

pub fn random_unit(r: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = random_vec3(r, 1.0);
        let n = norm(v);
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

pub fn random_fields(r: &mut impl Rng, scale: f64) -> EMFields64 {
    EMFields64::new(
        random_vec3(r, scale),
        random_vec3(r, scale),
        random_vec3(r, scale),
        r.random_range(-scale..scale),
    )
}

pub fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Rodrigues' formula, right-handed active rotation.
pub fn rodrigues(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
    let n = axis.map(|x| x / norm(axis));
    let (s, c) = angle.sin_cos();
    let nxv = cross(n, v);
    let nv = dot(n, v);
    std::array::from_fn(|k| v[k] * c + nxv[k] * s + n[k] * nv * (1.0 - c))
}

pub type Mat4 = [[f64; 4]; 4];

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn mat4_transpose(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Coordinate map of a frame moving with rapidity `chi` along unit `n`.
pub fn boost_matrix(n: [f64; 3], chi: f64) -> Mat4 {
    let n = n.map(|x| x / norm(n));
    let (g, gv) = (chi.cosh(), chi.sinh());
    let mut l = [[0.0; 4]; 4];
    l[0][0] = g;
    for i in 0..3 {
        l[0][i + 1] = -gv * n[i];
        l[i + 1][0] = -gv * n[i];
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            l[i + 1][j + 1] = delta + (g - 1.0) * n[i] * n[j];
        }
    }
    l
}

/// Active rotation acting on spatial coordinates.
pub fn rotation_matrix(axis: [f64; 3], angle: f64) -> Mat4 {
    let mut l = [[0.0; 4]; 4];
    l[0][0] = 1.0;
    for j in 0..3 {
        let mut e = [0.0; 3];
        e[j] = 1.0;
        let col = rodrigues(axis, angle, e);
        for i in 0..3 {
            l[i + 1][j + 1] = col[i];
        }
    }
    l
}

/// Field tensor `F^{mu nu}` with `F^{0i} = -E_i`, `F^{ij} = -eps_ijk H_k`.
pub fn field_tensor(e: [f64; 3], h: [f64; 3]) -> Mat4 {
    let mut f = [[0.0; 4]; 4];
    for i in 0..3 {
        f[0][i + 1] = -e[i];
        f[i + 1][0] = e[i];
    }
    f[1][2] = -h[2];
    f[2][1] = h[2];
    f[2][3] = -h[0];
    f[3][2] = h[0];
    f[3][1] = -h[1];
    f[1][3] = h[1];
    f
}

pub fn fields_from_tensor(f: &Mat4) -> ([f64; 3], [f64; 3]) {
    let e = [-f[0][1], -f[0][2], -f[0][3]];
    let h = [-f[2][3], -f[3][1], -f[1][2]];
    (e, h)
}

/// Classical transformation: `F' = L F L^T`, `A'^mu = L A^mu`.
pub fn transform_fields(l: &Mat4, f: &EMFields64) -> EMFields64 {
    let ft = mat4_mul(&mat4_mul(l, &field_tensor(f.e, f.h)), &mat4_transpose(l));
    let (e, h) = fields_from_tensor(&ft);
    let a4 = [f.a0, f.a[0], f.a[1], f.a[2]];
    let a4p: [f64; 4] = std::array::from_fn(|m| (0..4).map(|n| l[m][n] * a4[n]).sum());
    EMFields64::new(e, h, [a4p[1], a4p[2], a4p[3]], a4p[0])
}

/// Lower-index rank-2 tensor under `L`: raise, transform, lower.
pub fn transform_lower_tensor(l: &Mat4, t: &Mat4) -> Mat4 {
    let up: Mat4 =
        std::array::from_fn(|m| std::array::from_fn(|n| METRIC[m] * t[m][n] * METRIC[n]));
    let upt = mat4_mul(&mat4_mul(l, &up), &mat4_transpose(l));
    std::array::from_fn(|m| std::array::from_fn(|n| METRIC[m] * upt[m][n] * METRIC[n]))
}

/// Minus the lower-index Maxwell stress-energy tensor: `-u` in the corner,
/// `(E x H)_i` in the mixed slots.
pub fn stress_energy(e: [f64; 3], h: [f64; 3]) -> Mat4 {
    let u = (dot(e, e) + dot(h, h)) / 2.0;
    let s = cross(e, h);
    let mut t = [[0.0; 4]; 4];
    t[0][0] = -u;
    for i in 0..3 {
        t[0][i + 1] = s[i];
        t[i + 1][0] = s[i];
        for j in 0..3 {
            let delta = if i == j { u } else { 0.0 };
            t[i + 1][j + 1] = e[i] * e[j] + h[i] * h[j] - delta;
        }
    }
    t
}

pub fn max_field_diff(a: &EMFields64, b: &EMFields64) -> f64 {
    let pa =
        a.e.iter()
            .chain(&a.h)
            .chain(&a.a)
            .chain(std::iter::once(&a.a0));
    let pb =
        b.e.iter()
            .chain(&b.h)
            .chain(&b.a)
            .chain(std::iter::once(&b.a0));
    pa.zip(pb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Analytic transverse plane wave `E = pol amp cos(k.x - |k| c t)`,
/// `H = k_hat x E`, `A = pol amp sin(k.x - |k| c t) / |k|`, `A0 = 0`.
pub fn plane_wave_at(
    k: [f64; 3],
    pol: [f64; 3],
    amp: f64,
    x: [f64; 3],
    t: f64,
    c: f64,
) -> EMFields64 {
    let kn = norm(k);
    let phase = dot(k, x) - kn * c * t;
    let e = pol.map(|p| p * amp * phase.cos());
    let h = cross(k.map(|v| v / kn), e);
    let a = pol.map(|p| p * amp * phase.sin() / kn);
    EMFields64::new(e, h, a, 0.0)
}

/// Least-squares slope of `log(err)` against `log(dx)`.
pub fn fitted_order(dx: &[f64], err: &[f64]) -> f64 {
    let xs: Vec<f64> = dx.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
