//! Seeded random polytope generators used by the verification suites.

use super::linalg::*;
use super::Polytope;
use rand::Rng;

/// Random convex polygon: `v` directions sorted around the circle with
/// jittered radii.  Retries until the hull is genuinely 2-dimensional.
pub fn random_polygon<R: Rng>(rng: &mut R, v: usize) -> Polytope {
    assert!(v >= 3);
    loop {
        let mut angles: Vec<f64> = (0..v)
            .map(|_| rng.gen::<f64>() * std::f64::consts::TAU)
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Vec3> = angles
            .iter()
            .map(|&t| {
                let r = 0.6 + 0.8 * rng.gen::<f64>();
                [r * t.cos(), r * t.sin(), 0.0]
            })
            .collect();
        let p = Polytope::build(&pts, 2).unwrap();
        if p.lattice_dim() == 2 {
            return p;
        }
    }
}

/// Random 3-polytope: convex hull of `v` points drawn uniformly on the unit
/// sphere.  Retries until the hull is full-dimensional.
pub fn random_polytope3<R: Rng>(rng: &mut R, v: usize) -> Polytope {
    assert!(v >= 4);
    loop {
        let pts: Vec<Vec3> = (0..v)
            .map(|_| {
                loop {
                    let p = [
                        rng.gen::<f64>() * 2.0 - 1.0,
                        rng.gen::<f64>() * 2.0 - 1.0,
                        rng.gen::<f64>() * 2.0 - 1.0,
                    ];
                    let n = norm(&p);
                    if n > 1e-3 && n <= 1.0 {
                        break scale(&p, 1.0 / n);
                    }
                }
            })
            .collect();
        let p = Polytope::build(&pts, 3).unwrap();
        if p.lattice_dim() == 3 {
            return p;
        }
    }
}
