//! Sphere moments of normal cones: the tensors
//! `Θ_s(P, F) = (1/(s! ω_{n−k+s})) ∫_{N(P,F) ∩ S^{n−1}} u^s dH^{n−k−1}`.
//!
//! The cone splits into a lineality subspace and a pointed part; the sphere
//! integral factorizes over the spherical join.  All branches are exact
//! except the full 3-dimensional pointed cone (a vertex of a 3-polytope)
//! with `s ≥ 1`, which uses adaptive quadrature to absolute tolerance
//! below 1e-10.

use crate::coefficients::{gamma_half, omega_f64};
use crate::polytope::linalg::*;
use crate::polytope::{Cone, Face, Pointed, Polytope};
use crate::symtensor::{MultiIndex, SymTensor};

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

fn binom(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `∫_0^θ cos^a φ sin^b φ dφ`, by the standard power reductions.
pub fn trig_integral(a: u32, b: u32, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    if a >= 2 {
        c.powi(a as i32 - 1) * s.powi(b as i32 + 1) / (a + b) as f64
            + (a - 1) as f64 / (a + b) as f64 * trig_integral(a - 2, b, theta)
    } else if b >= 2 {
        -c.powi(a as i32 + 1) * s.powi(b as i32 - 1) / (a + b) as f64
            + (b - 1) as f64 / (a + b) as f64 * trig_integral(a, b - 2, theta)
    } else {
        match (a, b) {
            (0, 0) => theta,
            (1, 0) => s,
            (0, 1) => 1.0 - c,
            (1, 1) => s * s / 2.0,
            _ => unreachable!(),
        }
    }
}

/// Moment tensor of the unit sphere of a subspace with orthonormal basis
/// `frame`: `∫_{S(L)} b^m dH^{ℓ−1}`, exact via gamma factors.
fn lineality_sphere_moment(frame: &[Vec3], m: u32, dim: usize) -> SymTensor {
    let ell = frame.len();
    let mut out = SymTensor::zero(dim, m);
    for beta in MultiIndex::all(ell, m) {
        if beta.0.iter().any(|&b| b % 2 == 1) {
            continue;
        }
        // ∫_{S^{ℓ−1}} ∏ y_t^{β_t} dσ = 2 ∏ Γ((β_t+1)/2) / Γ((m+ℓ)/2)
        let mut c = 2.0;
        for &bt in &beta.0 {
            c *= gamma_half(bt as i64 + 1).expect("positive arg").to_f64();
        }
        c /= gamma_half(m as i64 + ell as i64).expect("positive arg").to_f64();
        c *= beta.multinomial();
        let mut term = SymTensor::scalar(dim, c);
        for (t, &bt) in beta.0.iter().enumerate() {
            if bt > 0 {
                let pw = SymTensor::tensor_power(&frame[t][..dim], bt);
                term = term.sym_product(&pw).expect("same dim");
            }
        }
        out = SymTensor::combine(&[(1.0, &out), (1.0, &term)]).expect("same shape");
    }
    out
}

/// Unnormalized moment of the pointed section: `∫_{C ∩ S^{q−1}} a^i dH^{q−1}`.
fn pointed_moment(pointed: &Pointed, i: u32, dim: usize) -> SymTensor {
    match pointed {
        Pointed::Zero => unreachable!("handled by the caller"),
        Pointed::Ray(g) => SymTensor::tensor_power(&g[..dim], i),
        Pointed::Arc { e, f, angle } => {
            let mut out = SymTensor::zero(dim, i);
            for t in 0..=i {
                let w = binom(i, t) * trig_integral(t, i - t, *angle);
                let term = SymTensor::tensor_power(&e[..dim], t)
                    .sym_product(&SymTensor::tensor_power(&f[..dim], i - t))
                    .expect("same dim");
                out = SymTensor::combine(&[(1.0, &out), (w, &term)]).expect("same shape");
            }
            out
        }
        Pointed::SphericalPolygon(gens) => spherical_polygon_moment(gens, i),
    }
}

/// Solid angle of the convex spherical polygon with cyclically ordered unit
/// vertices, by the fan of spherical triangles.
pub fn solid_angle(gens: &[Vec3]) -> f64 {
    let mut total = 0.0;
    for i in 1..gens.len() - 1 {
        let (a, b, c) = (&gens[0], &gens[i], &gens[i + 1]);
        let num = dot(a, &cross(b, c));
        let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
        total += 2.0 * f64::atan2(num, den);
    }
    total.abs()
}

const QUAD_TOL: f64 = 1e-11;
const QUAD_MAX_DEPTH: u32 = 14;

/// Fixed product Gauss rule on the planar triangle `(a, b, c)`, evaluated on
/// the radial projection to the sphere: for each monomial `u^α`,
/// `∫ (x/‖x‖)^α · h/‖x‖³ dA` where `h` is the plane's distance to the origin.
fn tri_rule(a: &Vec3, b: &Vec3, c: &Vec3, mons: &[MultiIndex], out: &mut [f64]) {
    // 5-point Gauss–Legendre on [0, 1]
    const GL_X: [f64; 5] = [
        0.046910077030668,
        0.230765344947158,
        0.5,
        0.769234655052842,
        0.953089922969332,
    ];
    const GL_W: [f64; 5] = [
        0.118463442528095,
        0.239314335249683,
        0.284444444444444,
        0.239314335249683,
        0.118463442528095,
    ];
    let nvec = cross(&sub(b, a), &sub(c, a));
    let two_area = norm(&nvec);
    if two_area < 1e-300 {
        return;
    }
    let h = dot(&nvec, a).abs() / two_area;
    for (iu, &u) in GL_X.iter().enumerate() {
        for (iv, &v) in GL_X.iter().enumerate() {
            // Duffy map of the unit square onto the triangle
            let x = [
                a[0] + u * (b[0] - a[0]) + u * v * (c[0] - b[0]),
                a[1] + u * (b[1] - a[1]) + u * v * (c[1] - b[1]),
                a[2] + u * (b[2] - a[2]) + u * v * (c[2] - b[2]),
            ];
            let r = norm(&x);
            let w = GL_W[iu] * GL_W[iv] * u * two_area * h / (r * r * r);
            let dir = scale(&x, 1.0 / r);
            for (t, mon) in mons.iter().enumerate() {
                let mut val = w;
                for (coord, &e) in mon.0.iter().enumerate() {
                    val *= dir[coord].powi(e as i32);
                }
                out[t] += val;
            }
        }
    }
}

fn tri_adaptive(
    a: &Vec3,
    b: &Vec3,
    c: &Vec3,
    mons: &[MultiIndex],
    depth: u32,
    acc: &mut [f64],
) {
    let mut coarse = vec![0.0; mons.len()];
    tri_rule(a, b, c, mons, &mut coarse);
    let mab = normalize(&lerp(a, b, 0.5));
    let mbc = normalize(&lerp(b, c, 0.5));
    let mca = normalize(&lerp(c, a, 0.5));
    let mut fine = vec![0.0; mons.len()];
    tri_rule(a, &mab, &mca, mons, &mut fine);
    tri_rule(&mab, b, &mbc, mons, &mut fine);
    tri_rule(&mca, &mbc, c, mons, &mut fine);
    tri_rule(&mab, &mbc, &mca, mons, &mut fine);
    let err = coarse
        .iter()
        .zip(&fine)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0_f64, f64::max);
    if err < QUAD_TOL || depth >= QUAD_MAX_DEPTH {
        for (t, v) in fine.iter().enumerate() {
            acc[t] += v;
        }
    } else {
        tri_adaptive(a, &mab, &mca, mons, depth + 1, acc);
        tri_adaptive(&mab, b, &mbc, mons, depth + 1, acc);
        tri_adaptive(&mca, &mbc, c, mons, depth + 1, acc);
        tri_adaptive(&mab, &mbc, &mca, mons, depth + 1, acc);
    }
}

/// `∫ over the spherical polygon of u^s dσ` as a rank-`s` tensor in `R³`:
/// exact solid angle for `s = 0`, adaptive quadrature otherwise.
fn spherical_polygon_moment(gens: &[Vec3], s: u32) -> SymTensor {
    let mut out = SymTensor::zero(3, s);
    if s == 0 {
        out.set_coeff(MultiIndex(vec![0, 0, 0]), solid_angle(gens));
        return out;
    }
    let mons = MultiIndex::all(3, s);
    let mut acc = vec![0.0; mons.len()];
    for i in 1..gens.len() - 1 {
        let (a, b, c) = (gens[0], gens[i], gens[i + 1]);
        if dot(&a, &cross(&b, &c)).abs() < 1e-14 {
            continue;
        }
        tri_adaptive(&a, &b, &c, &mons, 0, &mut acc);
    }
    for (mon, v) in mons.into_iter().zip(acc) {
        if v != 0.0 {
            // polynomial coefficient = multiplicity × monomial integral
            let mult = mon.multinomial();
            out.set_coeff(mon, mult * v);
        }
    }
    out
}

/// Raw cone-sphere moment `∫_{N ∩ S^{n−1}} u^s dH^{n−k−1}` via the join
/// factorization of the cone into lineality and pointed sections.
pub fn cone_sphere_moment(cone: &Cone, s: u32, dim: usize) -> SymTensor {
    let ell = cone.lineality.len();
    let q = cone.pointed_dim();
    if q == 0 && ell == 0 {
        return SymTensor::zero(dim, s);
    }
    if q == 0 {
        return lineality_sphere_moment(&cone.lineality, s, dim);
    }
    if ell == 0 {
        return pointed_moment(&cone.pointed, s, dim);
    }
    // spherical join: u = cos φ · a + sin φ · b
    let mut out = SymTensor::zero(dim, s);
    for i in 0..=s {
        // ∫_0^{π/2} cos^{i+q−1} sin^{s−i+ℓ−1} dφ, as a half-beta value
        let hb = gamma_half(i as i64 + q as i64).expect("positive").to_f64()
            * gamma_half((s - i) as i64 + ell as i64).expect("positive").to_f64()
            / (2.0 * gamma_half(s as i64 + q as i64 + ell as i64).expect("positive").to_f64());
        let w = binom(s, i) * hb;
        let term = pointed_moment(&cone.pointed, i, dim)
            .sym_product(&lineality_sphere_moment(&cone.lineality, s - i, dim))
            .expect("same dim");
        out = SymTensor::combine(&[(1.0, &out), (w, &term)]).expect("same shape");
    }
    out
}

/// The normalized support-measure tensor `Θ_s(P, F)`; zero for `s < 0`.
pub fn theta(p: &Polytope, face: &Face, s: i64) -> SymTensor {
    let n = p.dim();
    if s < 0 {
        return SymTensor::zero(n, 0);
    }
    let s = s as u32;
    let k = face.dim;
    if k == n && s == 0 {
        // Θ_0(P, P) := 1, the continuation of the Weyl normalization from
        // lower-dimensional top faces (where N ∩ S is the lineality sphere
        // of measure ω_{n−k})
        return SymTensor::scalar(n, 1.0);
    }
    let cone = p.normal_cone(face);
    let raw = cone_sphere_moment(&cone, s, n);
    let norm_const = factorial(s) * omega_f64((n - k + s as usize) as i64);
    raw.scale(1.0 / norm_const)
}
