//! Seeded Monte Carlo estimators for the motion-group and flat integrals:
//! kinematic integrals over rigid motions, Crofton integrals over flats, and
//! a hit-or-miss estimator for parallel volumes.
//!
//! Sampling is batched; every batch owns a counter-based RNG stream derived
//! from the experiment seed, and batch results are merged in index order, so
//! estimates are byte-identical for any worker count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::polytope::linalg::*;
use crate::polytope::{clip, Flat, Polytope};
use crate::symtensor::{MultiIndex, SymTensor};
use crate::valuations::{minkowski_tensor, ValError};

/// Default number of samples per RNG batch.
pub const BATCH_SIZE: u64 = 2048;

#[derive(Debug, Clone, Copy)]
pub struct McSettings {
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; 0 lets the runtime decide.
    pub workers: usize,
}

/// A component-wise Monte Carlo estimate of a symmetric tensor.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub mean: SymTensor,
    /// Standard error of each polynomial coefficient, same shape as `mean`.
    pub stderr: SymTensor,
    pub samples: u64,
    pub seed: u64,
    pub window_volume: f64,
}

/// A rotation matrix together with a translation.
#[derive(Debug, Clone, Copy)]
pub struct RigidMotion {
    pub rot: [[f64; 3]; 3],
    pub t: Vec3,
}

fn gauss_pair<R: Rng>(rng: &mut R) -> (f64, f64) {
    // Box–Muller
    let u1: f64 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let th = std::f64::consts::TAU * u2;
    (r * th.cos(), r * th.sin())
}

/// Haar-uniform rotation of `R^n` (n = 2 or 3), padded to a 3×3 matrix.
pub fn sample_rotation<R: Rng>(rng: &mut R, n: usize) -> [[f64; 3]; 3] {
    match n {
        2 => {
            let th = rng.gen::<f64>() * std::f64::consts::TAU;
            let (s, c) = th.sin_cos();
            [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
        }
        3 => {
            // uniform unit quaternion
            let (a, b) = gauss_pair(rng);
            let (c, d) = gauss_pair(rng);
            let q = [a, b, c, d];
            let nq = (q.iter().map(|x| x * x).sum::<f64>()).sqrt();
            let (w, x, y, z) = (q[0] / nq, q[1] / nq, q[2] / nq, q[3] / nq);
            [
                [
                    1.0 - 2.0 * (y * y + z * z),
                    2.0 * (x * y - w * z),
                    2.0 * (x * z + w * y),
                ],
                [
                    2.0 * (x * y + w * z),
                    1.0 - 2.0 * (x * x + z * z),
                    2.0 * (y * z - w * x),
                ],
                [
                    2.0 * (x * z - w * y),
                    2.0 * (y * z + w * x),
                    1.0 - 2.0 * (x * x + y * y),
                ],
            ]
        }
        _ => unreachable!("ambient dimension is 2 or 3"),
    }
}

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch.wrapping_add(1));
    rng
}

struct Accum {
    sum: Vec<f64>,
    sumsq: Vec<f64>,
}

/// Runs `settings.samples` evaluations of `f` (one value vector per sample)
/// over order-stable batches and assembles mean and standard error.
fn run_batches<F>(
    settings: &McSettings,
    dim: usize,
    rank: u32,
    window_volume: f64,
    f: F,
) -> Estimate
where
    F: Fn(&mut ChaCha8Rng, &[MultiIndex], &mut [f64]) + Sync,
{
    let mons = MultiIndex::all(dim, rank);
    let nb = settings.samples.div_ceil(BATCH_SIZE);
    let run = || -> Vec<Accum> {
        (0..nb)
            .into_par_iter()
            .map(|b| {
                let mut rng = batch_rng(settings.seed, b);
                let count = BATCH_SIZE.min(settings.samples - b * BATCH_SIZE);
                let mut sum = vec![0.0; mons.len()];
                let mut sumsq = vec![0.0; mons.len()];
                let mut val = vec![0.0; mons.len()];
                for _ in 0..count {
                    val.iter_mut().for_each(|v| *v = 0.0);
                    f(&mut rng, &mons, &mut val);
                    for (i, v) in val.iter().enumerate() {
                        sum[i] += v;
                        sumsq[i] += v * v;
                    }
                }
                Accum { sum, sumsq }
            })
            .collect()
    };
    let parts = if settings.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(settings.workers)
            .build()
            .expect("thread pool")
            .install(run)
    } else {
        run()
    };
    // merge strictly in batch order for bit-stable results
    let mut sum = vec![0.0; mons.len()];
    let mut sumsq = vec![0.0; mons.len()];
    for part in parts {
        for i in 0..sum.len() {
            sum[i] += part.sum[i];
            sumsq[i] += part.sumsq[i];
        }
    }
    let ns = settings.samples as f64;
    let mut mean = SymTensor::zero(dim, rank);
    let mut stderr = SymTensor::zero(dim, rank);
    for (i, mon) in mons.iter().enumerate() {
        let m = sum[i] / ns;
        let var = ((sumsq[i] / ns - m * m).max(0.0)) / (ns - 1.0).max(1.0);
        if m != 0.0 {
            mean.set_coeff(mon.clone(), m);
        }
        let se = var.sqrt();
        if se != 0.0 {
            stderr.set_coeff(mon.clone(), se);
        }
    }
    Estimate {
        mean,
        stderr,
        samples: settings.samples,
        seed: settings.seed,
        window_volume,
    }
}

/// Estimates `∫ Φ_j^{r,s}(K ∩ gK′) μ(dg)` with `μ` the product of the Haar
/// probability on rotations and Lebesgue measure on translations.
pub fn estimate_kinematic(
    body: &Polytope,
    other: &Polytope,
    j: i64,
    r: i64,
    s: i64,
    settings: &McSettings,
) -> Result<Estimate, ValError> {
    let n = body.dim();
    let rank = (r.max(0) + s.max(0)) as u32;
    // recenter the moving body at the origin (the integral is invariant
    // under translations of K′); rotations then keep it inside the ball of
    // its bbox radius, giving a tight rotation-independent window
    let ob = other.bbox();
    let oc = scale(&add(&ob.lo, &ob.hi), 0.5);
    let centered = other.translate(&scale(&oc, -1.0));
    let orad = dist(&ob.hi, &ob.lo) / 2.0;
    let kb = body.bbox();
    let mut lo = [0.0; 3];
    let mut hi = [0.0; 3];
    for i in 0..n {
        lo[i] = kb.lo[i] - orad;
        hi[i] = kb.hi[i] + orad;
    }
    let window: f64 = (0..n).map(|i| hi[i] - lo[i]).product();
    let est = run_batches(settings, n, rank, window, |rng, mons, out| {
        let rot = sample_rotation(rng, n);
        let mut t = [0.0; 3];
        for i in 0..n {
            t[i] = lo[i] + rng.gen::<f64>() * (hi[i] - lo[i]);
        }
        let moved = centered.transform(&rot, &t);
        if let Some(cap) = clip::intersect(body, &moved) {
            if let Ok(phi) = minkowski_tensor(&cap, j, r, s) {
                for (i, mon) in mons.iter().enumerate() {
                    out[i] = window * phi.coeff(mon);
                }
            }
        }
    });
    Ok(est)
}

/// Estimates `∫ Φ_j^{r,s}(K ∩ E) μ_k(dE)` over `k`-flats, with `μ_k` the
/// product of the Haar probability on the Grassmannian and Lebesgue measure
/// on the orthogonal complement.
pub fn estimate_crofton(
    body: &Polytope,
    k: i64,
    j: i64,
    r: i64,
    s: i64,
    settings: &McSettings,
) -> Result<Estimate, ValError> {
    let n = body.dim();
    let rank = (r.max(0) + s.max(0)) as u32;
    let kb = body.bbox();
    let center = scale(&add(&kb.lo, &kb.hi), 0.5);
    let radius = dist(&kb.hi, &kb.lo) / 2.0;
    let q = n - k as usize; // codimension
    let window = (2.0 * radius).powi(q as i32);
    let est = run_batches(settings, n, rank, window, |rng, mons, out| {
        let rot = sample_rotation(rng, n);
        // rotate the standard frame: first k columns span the flat
        let col = |c: usize| -> Vec3 { [rot[0][c], rot[1][c], rot[2][c]] };
        let basis: Vec<Vec3> = (0..k as usize).map(|c| col(c)).collect();
        let mut anchor = center;
        for c in k as usize..n {
            let b = col(c);
            let off = (rng.gen::<f64>() * 2.0 - 1.0) * radius;
            anchor = add(&anchor, &scale(&b, off));
        }
        let flat = Flat::new(basis, anchor).expect("rotated frame is orthonormal");
        if let Some(sec) = clip::slice_flat(body, &flat) {
            if let Ok(phi) = minkowski_tensor(&sec, j, r, s) {
                for (i, mon) in mons.iter().enumerate() {
                    out[i] = window * phi.coeff(mon);
                }
            }
        }
    });
    Ok(est)
}

/// Hit-or-miss estimate of the parallel-body volume `V_n(K ⊕ εBⁿ)`.
pub fn estimate_parallel_volume(
    body: &Polytope,
    eps: f64,
    settings: &McSettings,
) -> Result<Estimate, ValError> {
    let n = body.dim();
    let bb = body.bbox().inflate(eps);
    let window = bb.volume();
    let est = run_batches(settings, n, 0, window, |rng, _mons, out| {
        let mut x = [0.0; 3];
        for i in 0..n {
            x[i] = bb.lo[i] + rng.gen::<f64>() * (bb.hi[i] - bb.lo[i]);
        }
        let (_, d) = body.project_point(&x);
        if d <= eps {
            out[0] = window;
        }
    });
    Ok(est)
}

/// Outcome of comparing an estimate against an exact tensor.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub max_z: f64,
    pub max_abs_dev: f64,
    pub pass: bool,
}

/// Compares component-wise: each coefficient must lie within `zmax` standard
/// errors of the exact value; coefficients whose standard error is
/// numerically zero must agree to absolute tolerance 1e-10.
pub fn compare(est: &Estimate, exact: &SymTensor, zmax: f64) -> Comparison {
    let mut max_z = 0.0_f64;
    let mut max_dev = 0.0_f64;
    let mut pass = true;
    for mon in MultiIndex::all(exact.dim(), exact.rank()) {
        let dev = (est.mean.coeff(&mon) - exact.coeff(&mon)).abs();
        let se = est.stderr.coeff(&mon);
        max_dev = max_dev.max(dev);
        if se < 1e-14 {
            if dev > 1e-10 {
                pass = false;
            }
        } else {
            let z = dev / se;
            max_z = max_z.max(z);
            if z > zmax {
                pass = false;
            }
        }
    }
    Comparison {
        max_z,
        max_abs_dev: max_dev,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_square() -> Polytope {
        Polytope::from_json(r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap()
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut rng = batch_rng(1, 0);
        for n in [2usize, 3] {
            for _ in 0..50 {
                let m = sample_rotation(&mut rng, n);
                for i in 0..3 {
                    for k in 0..3 {
                        let d: f64 = (0..3).map(|t| m[t][i] * m[t][k]).sum();
                        let want = if i == k { 1.0 } else { 0.0 };
                        assert!((d - want).abs() < 1e-12);
                    }
                }
                // proper rotation
                let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                assert!((det - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parallel_volume_of_square() {
        let s = unit_square();
        let settings = McSettings {
            samples: 200_000,
            seed: 42,
            workers: 0,
        };
        let est = estimate_parallel_volume(&s, 1.0, &settings).unwrap();
        let exact = SymTensor::scalar(2, 5.0 + PI);
        let cmp = compare(&est, &exact, 4.0);
        assert!(cmp.pass, "z = {}", cmp.max_z);
    }

    #[test]
    fn determinism_across_worker_counts() {
        let s = unit_square();
        let mk = |w| McSettings {
            samples: 5_000,
            seed: 7,
            workers: w,
        };
        let a = estimate_kinematic(&s, &s, 0, 0, 0, &mk(1)).unwrap();
        let b = estimate_kinematic(&s, &s, 0, 0, 0, &mk(4)).unwrap();
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.stderr, b.stderr);
    }

    #[test]
    fn kinematic_euler_two_squares() {
        let s = unit_square();
        let settings = McSettings {
            samples: 40_000,
            seed: 3,
            workers: 0,
        };
        let est = estimate_kinematic(&s, &s, 0, 0, 0, &settings).unwrap();
        let exact = SymTensor::scalar(2, 2.0 + 8.0 / PI);
        let cmp = compare(&est, &exact, 4.0);
        assert!(cmp.pass, "z = {}, mean = {:?}", cmp.max_z, est.mean);
    }

    #[test]
    fn crofton_lines_through_square() {
        let s = unit_square();
        let settings = McSettings {
            samples: 40_000,
            seed: 5,
            workers: 0,
        };
        let est = estimate_crofton(&s, 1, 0, 0, 0, &settings).unwrap();
        let exact = SymTensor::scalar(2, 4.0 / PI);
        let cmp = compare(&est, &exact, 4.0);
        assert!(cmp.pass, "z = {}, mean = {:?}", cmp.max_z, est.mean);
    }
}
