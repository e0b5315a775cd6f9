//! Small fixed-size vector helpers.  All geometry lives in padded 3-vectors;
//! 2-dimensional data keeps its third coordinate at zero.

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm2(a: &Vec3) -> f64 {
    dot(a, a)
}

pub fn norm(a: &Vec3) -> f64 {
    norm2(a).sqrt()
}

pub fn normalize(a: &Vec3) -> Vec3 {
    let n = norm(a);
    debug_assert!(n > 0.0);
    scale(a, 1.0 / n)
}

pub fn dist(a: &Vec3, b: &Vec3) -> f64 {
    norm(&sub(a, b))
}

pub fn lerp(a: &Vec3, b: &Vec3, t: f64) -> Vec3 {
    [
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    ]
}

/// Residual of `v` after removing its projection onto an orthonormal family.
pub fn residual(v: &Vec3, basis: &[Vec3]) -> Vec3 {
    let mut r = *v;
    for b in basis {
        r = sub(&r, &scale(b, dot(&r, b)));
    }
    r
}

/// Extends an orthonormal family by `v` if it is independent within `tol`.
pub fn gram_schmidt_extend(basis: &mut Vec<Vec3>, v: &Vec3, tol: f64) -> bool {
    let r = residual(v, basis);
    if norm(&r) > tol {
        basis.push(normalize(&r));
        true
    } else {
        false
    }
}

/// Orthonormal basis of the orthogonal complement within `R^dim`.
pub fn complement_basis(basis: &[Vec3], dim: usize) -> Vec<Vec3> {
    let mut full = basis.to_vec();
    let mut comp = Vec::new();
    for i in 0..dim {
        let mut e = [0.0; 3];
        e[i] = 1.0;
        if gram_schmidt_extend(&mut full, &e, 1e-9) {
            comp.push(*full.last().unwrap());
        }
    }
    comp
}

/// Two orthonormal vectors spanning the plane orthogonal to a unit vector.
pub fn orthonormal_frame(n: &Vec3) -> (Vec3, Vec3) {
    let pick = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e = normalize(&sub(&pick, &scale(n, dot(&pick, n))));
    let f = cross(n, &e);
    (e, f)
}
