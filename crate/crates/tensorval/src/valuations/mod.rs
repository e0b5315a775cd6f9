//! Minkowski tensors of convex polytopes, McMullen-type identities, total
//! generalized tensorial curvature measures, and the closed-form right-hand
//! sides of the kinematic and Crofton formulae.

pub mod moments;
pub mod theta;

use crate::coefficients::{
    inv_factorial, kf_coeff_e, rgamma_ratio, sphere_constants, CoeffError, ExactScalar,
};
use crate::polytope::{Face, Polytope};
use crate::symtensor::{SymTensor, TensorError};
use moments::{upsilon, volume_moment};
use theta::theta;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValError {
    #[error("invalid indices: {0}")]
    InvalidIndex(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// `Q^m`: the `m`-th symmetric power of the metric tensor.
pub fn metric_power(dim: usize, m: u32) -> SymTensor {
    let q = SymTensor::metric(dim);
    let mut out = SymTensor::scalar(dim, 1.0);
    for _ in 0..m {
        out = out.sym_product(&q).expect("same dim");
    }
    out
}

/// Metric tensor of the direction space of a face.
fn face_metric(p: &Polytope, face: &Face) -> SymTensor {
    SymTensor::metric_of_subspace(p.dim(), &basis_vecs(p, face)).expect("orthonormal by construction")
}

/// Metric tensor of the normal space (orthogonal complement of the direction
/// space) of a face.
fn normal_metric(p: &Polytope, face: &Face) -> SymTensor {
    let n = p.dim();
    let fb = p.face_basis(face);
    let comp = crate::polytope::linalg::complement_basis(&fb, n);
    let vecs: Vec<Vec<f64>> = comp.iter().map(|v| v[..n].to_vec()).collect();
    SymTensor::metric_of_subspace(n, &vecs).expect("orthonormal by construction")
}

fn basis_vecs(p: &Polytope, face: &Face) -> Vec<Vec<f64>> {
    let n = p.dim();
    p.face_basis(face).iter().map(|v| v[..n].to_vec()).collect()
}

/// The Minkowski tensor `Φ_j^{r,s}(P)`, with the usual conventions: zero for
/// `j ∉ {0,…,n}`, `r < 0`, `s < 0`, and for `j = n` with `s ≠ 0`.
pub fn minkowski_tensor(p: &Polytope, j: i64, r: i64, s: i64) -> Result<SymTensor, ValError> {
    let n = p.dim() as i64;
    let rank = r.max(0) + s.max(0);
    let zero = || SymTensor::zero(p.dim(), rank as u32);
    if r < 0 || s < 0 || j < 0 || j > n {
        return Ok(zero());
    }
    if j == n {
        if s != 0 {
            return Ok(zero());
        }
        return Ok(volume_moment(p, r));
    }
    let mut acc = SymTensor::zero(p.dim(), (r + s) as u32);
    for face in p.faces(j as usize) {
        let u = upsilon(p, face, r);
        let t = theta(p, face, s);
        let term = u.sym_product(&t)?;
        acc = SymTensor::combine(&[(1.0, &acc), (1.0, &term)])?;
    }
    Ok(acc)
}

/// Intrinsic volume `V_j(P) = Φ_j^{0,0}(P)`.
pub fn intrinsic_volume(p: &Polytope, j: i64) -> Result<f64, ValError> {
    let t = minkowski_tensor(p, j, 0, 0)?;
    Ok(t.coeff(&crate::symtensor::MultiIndex(vec![0; p.dim()])))
}

/// Volume of the outer parallel body, `V_n(P ⊕ εBⁿ) = Σ_i κ_{n−i} ε^{n−i} V_i(P)`.
pub fn steiner_volume(p: &Polytope, eps: f64) -> Result<f64, ValError> {
    let n = p.dim() as i64;
    let mut total = 0.0;
    for i in 0..=n {
        let kappa = if n - i == 0 {
            1.0
        } else {
            sphere_constants(n - i)?.1.to_f64()
        };
        total += kappa * eps.powi((n - i) as i32) * intrinsic_volume(p, i)?;
    }
    Ok(total)
}

/// The total generalized tensorial curvature measure
/// `φ_j^{r,s,1}(P, R^n) = (2π/j) Σ_{F ∈ F_j} Q(F) Υ_r(F) Θ_s(P, F)`,
/// defined for `1 ≤ j ≤ n − 1`.
pub fn gen_tcm_total(p: &Polytope, j: i64, r: i64, s: i64) -> Result<SymTensor, ValError> {
    let n = p.dim() as i64;
    if !(1 <= j && j <= n - 1) {
        return Err(ValError::InvalidIndex(format!(
            "φ_j^{{r,s,1}} requires 1 ≤ j ≤ n−1, got j={j} for n={n}"
        )));
    }
    if r < 0 || s < 0 {
        return Ok(SymTensor::zero(p.dim(), (r.max(0) + s.max(0) + 2) as u32));
    }
    let mut acc = SymTensor::zero(p.dim(), (r + s + 2) as u32);
    for face in p.faces(j as usize) {
        let term = face_metric(p, face)
            .sym_product(&upsilon(p, face, r))?
            .sym_product(&theta(p, face, s))?;
        acc = SymTensor::combine(&[(1.0, &acc), (1.0, &term)])?;
    }
    let w = 2.0 * std::f64::consts::PI / j as f64;
    Ok(acc.scale(w))
}

/// Residual of the McMullen relation
/// `2πs Φ_k^{r,s}(P) = Σ_{F∈F_k} Q(F⊥) Υ_r(F) Θ_{s−2}(P,F)
///                   + Σ_{G∈F_{k+1}} Q(G) Υ_{r−1}(G) Θ_{s−1}(P,G)`;
/// vanishes identically for polytopes.
pub fn mcmullen_residual(p: &Polytope, k: i64, r: i64, s: i64) -> Result<SymTensor, ValError> {
    let n = p.dim() as i64;
    if !(0 <= k && k <= n - 1 && r >= 0 && s >= 1) {
        return Err(ValError::InvalidIndex(format!(
            "mcmullen_residual requires 0 ≤ k ≤ n−1, r ≥ 0, s ≥ 1; got k={k} r={r} s={s}"
        )));
    }
    let rank = (r + s) as u32;
    let lhs = minkowski_tensor(p, k, r, s)?.scale(2.0 * std::f64::consts::PI * s as f64);
    let mut acc = lhs;
    if s >= 2 {
        for face in p.faces(k as usize) {
            let term = normal_metric(p, face)
                .sym_product(&upsilon(p, face, r))?
                .sym_product(&theta(p, face, s - 2))?;
            acc = SymTensor::combine(&[(1.0, &acc), (-1.0, &term)])?;
        }
    }
    if r >= 1 {
        for face in p.faces((k + 1) as usize) {
            let term = face_metric(p, face)
                .sym_product(&upsilon(p, face, r - 1))?
                .sym_product(&theta(p, face, s - 1))?;
            acc = SymTensor::combine(&[(1.0, &acc), (-1.0, &term)])?;
        }
    }
    debug_assert_eq!(acc.rank(), rank);
    Ok(acc)
}

/// Both sides of the expansion of the total generalized tensorial curvature
/// measure into Minkowski tensors:
/// `(k/2π) φ_k^{r,s−2,1}(P, R^n)
///   = Σ_{p=0}^{r} ( Q Φ_{k+p}^{r−p,s+p−2}(P) − 2π(s+p) Φ_{k+p}^{r−p,s+p}(P) )`,
/// for `1 ≤ k ≤ n − 1` and `s ≥ 2`.
pub fn gen_tcm_expansion(
    poly: &Polytope,
    k: i64,
    r: i64,
    s: i64,
) -> Result<(SymTensor, SymTensor), ValError> {
    let n = poly.dim() as i64;
    if !(1 <= k && k <= n - 1 && r >= 0 && s >= 2) {
        return Err(ValError::InvalidIndex(format!(
            "gen_tcm_expansion requires 1 ≤ k ≤ n−1, r ≥ 0, s ≥ 2; got k={k} r={r} s={s}"
        )));
    }
    let lhs = gen_tcm_total(poly, k, r, s - 2)?
        .scale(k as f64 / (2.0 * std::f64::consts::PI));
    let q = metric_power(poly.dim(), 1);
    let mut rhs = SymTensor::zero(poly.dim(), (r + s) as u32);
    for p in 0..=r {
        let t1 = q.sym_product(&minkowski_tensor(poly, k + p, r - p, s + p - 2)?)?;
        let t2 = minkowski_tensor(poly, k + p, r - p, s + p)?;
        rhs = SymTensor::combine(&[
            (1.0, &rhs),
            (1.0, &t1),
            (-2.0 * std::f64::consts::PI * (s + p) as f64, &t2),
        ])?;
    }
    Ok((lhs, rhs))
}

/// Closed-form right-hand side of the tensorial principal kinematic formula:
/// `∫ Φ_j^{r,s}(K ∩ gK′) μ(dg)
///   = Σ_{k=j}^n Σ_{p=0}^r Σ_{m=0}^{⌊s/2⌋}
///       e_{n,j,k}^{s,m,p} Q^m Φ_{k+p}^{r−p,s−2m+p}(K) V_{n−k+j}(K′)`.
pub fn rhs_kinematic(
    body: &Polytope,
    other: &Polytope,
    j: i64,
    r: i64,
    s: i64,
) -> Result<SymTensor, ValError> {
    let n = body.dim() as i64;
    if !(0 <= j && j <= n - 1 && r >= 0 && s >= 0) {
        return Err(ValError::InvalidIndex(format!(
            "rhs_kinematic requires 0 ≤ j ≤ n−1, r ≥ 0, s ≥ 0; got j={j} r={r} s={s}"
        )));
    }
    let mut acc = SymTensor::zero(body.dim(), (r + s) as u32);
    for k in j..=n {
        let v_other = intrinsic_volume(other, n - k + j)?;
        if v_other == 0.0 {
            continue;
        }
        for p in 0..=r {
            for m in 0..=s / 2 {
                let e = kf_coeff_e(n, j, k, s, m, p)?.to_f64();
                if e == 0.0 {
                    continue;
                }
                let phi = minkowski_tensor(body, k + p, r - p, s - 2 * m + p)?;
                if phi.is_zero() {
                    continue;
                }
                let term = metric_power(body.dim(), m as u32).sym_product(&phi)?;
                acc = SymTensor::combine(&[(1.0, &acc), (e * v_other, &term)])?;
            }
        }
    }
    Ok(acc)
}

/// Closed-form right-hand side of the tensorial Crofton formula for sections
/// by `k`-flats: `∫ Φ_j^{r,s}(K ∩ E) μ_k(dE)`.  For `j = k` the result is a
/// pure multiple of `Q^{s/2} Φ_n^{r,0}(K)` (zero for odd `s`); for `j < k` it
/// expands through the kinematic coefficients at intermediate index
/// `n − k + j`.
pub fn rhs_crofton(
    body: &Polytope,
    k: i64,
    j: i64,
    r: i64,
    s: i64,
) -> Result<SymTensor, ValError> {
    let n = body.dim() as i64;
    if !(0 <= j && j <= k && k <= n - 1 && r >= 0 && s >= 0) {
        return Err(ValError::InvalidIndex(format!(
            "rhs_crofton requires 0 ≤ j ≤ k ≤ n−1, r ≥ 0, s ≥ 0; got k={k} j={j} r={r} s={s}"
        )));
    }
    let mut acc = SymTensor::zero(body.dim(), (r + s) as u32);
    if j == k {
        if s % 2 != 0 {
            return Ok(acc);
        }
        let c = inv_factorial(s / 2)
            .mul(&ExactScalar::from_ratio(1, 1 << s))
            .mul(&ExactScalar::pi_pow_half(-s))
            .mul(&rgamma_ratio(n, n + s))
            .mul(&rgamma_ratio(n - k + s, n - k))
            .to_f64();
        let phi = minkowski_tensor(body, n, r, 0)?;
        let term = metric_power(body.dim(), (s / 2) as u32).sym_product(&phi)?;
        acc = SymTensor::combine(&[(1.0, &acc), (c, &term)])?;
        return Ok(acc);
    }
    let kk = n - k + j; // intermediate kinematic index
    for p in 0..=r {
        for m in 0..=s / 2 {
            let e = kf_coeff_e(n, j, kk, s, m, p)?.to_f64();
            if e == 0.0 {
                continue;
            }
            let phi = minkowski_tensor(body, kk + p, r - p, s - 2 * m + p)?;
            if phi.is_zero() {
                continue;
            }
            let term = metric_power(body.dim(), m as u32).sym_product(&phi)?;
            acc = SymTensor::combine(&[(1.0, &acc), (e, &term)])?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::MultiIndex;
    use std::f64::consts::PI;

    fn unit_square() -> Polytope {
        Polytope::from_json(r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap()
    }

    fn unit_cube() -> Polytope {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push([x, y, z]);
                }
            }
        }
        Polytope::build(&pts, 3).unwrap()
    }

    #[test]
    fn intrinsic_volumes_of_square_and_cube() {
        let s = unit_square();
        assert!((intrinsic_volume(&s, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((intrinsic_volume(&s, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((intrinsic_volume(&s, 2).unwrap() - 1.0).abs() < 1e-12);
        let c = unit_cube();
        assert!((intrinsic_volume(&c, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((intrinsic_volume(&c, 1).unwrap() - 3.0).abs() < 1e-12);
        assert!((intrinsic_volume(&c, 2).unwrap() - 3.0).abs() < 1e-12);
        assert!((intrinsic_volume(&c, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conventions_give_zero() {
        let s = unit_square();
        assert!(minkowski_tensor(&s, -1, 0, 0).unwrap().is_zero());
        assert!(minkowski_tensor(&s, 3, 0, 0).unwrap().is_zero());
        assert!(minkowski_tensor(&s, 0, -1, 1).unwrap().is_zero());
        assert!(minkowski_tensor(&s, 2, 0, 2).unwrap().is_zero());
    }

    #[test]
    fn phi_0_1_vanishes() {
        // Σ over the boundary of outer normals weighs to zero
        let s = unit_square();
        for j in 0..2 {
            let t = minkowski_tensor(&s, j, 0, 1).unwrap();
            assert!(t.norm_inf() < 1e-12, "j={j}: {:?}", t);
        }
        let c = unit_cube();
        for j in 0..3 {
            let t = minkowski_tensor(&c, j, 0, 1).unwrap();
            assert!(t.norm_inf() < 1e-10, "j={j}");
        }
    }

    #[test]
    fn phi_0_0_2_is_metric_multiple() {
        // Φ_0^{0,2} = (ω_n / (2 n ω_{n+2})) Q
        for p in [unit_square(), unit_cube()] {
            let n = p.dim() as i64;
            let t = minkowski_tensor(&p, 0, 0, 2).unwrap();
            let c = crate::coefficients::omega_f64(n)
                / (2.0 * n as f64 * crate::coefficients::omega_f64(n + 2));
            let want = SymTensor::metric(p.dim()).scale(c);
            assert!(t.approx_eq(&want, 1e-10, 1e-10), "n={n}");
        }
    }

    #[test]
    fn steiner_square_and_cube() {
        let s = unit_square();
        assert!((steiner_volume(&s, 1.0).unwrap() - (5.0 + PI)).abs() < 1e-12);
        let c = unit_cube();
        let want = 1.0 + 3.0 + 0.75 * PI + PI / 6.0;
        assert!((steiner_volume(&c, 0.5).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn mcmullen_on_square_and_cube() {
        let s = unit_square();
        for k in 0..2 {
            for r in 0..3 {
                for ss in 2..5 {
                    let res = mcmullen_residual(&s, k, r, ss).unwrap();
                    assert!(res.norm_inf() < 1e-10, "square k={k} r={r} s={ss}");
                }
            }
        }
        let c = unit_cube();
        for k in 0..3 {
            for r in 0..2 {
                for ss in 2..4 {
                    let res = mcmullen_residual(&c, k, r, ss).unwrap();
                    assert!(res.norm_inf() < 1e-9, "cube k={k} r={r} s={ss}");
                }
            }
        }
    }

    #[test]
    fn gen_tcm_expansion_matches() {
        let s = unit_square();
        for k in 1..2 {
            for r in 0..2 {
                for ss in 2..4 {
                    let (l, rr) = gen_tcm_expansion(&s, k, r, ss).unwrap();
                    assert!(
                        l.approx_eq(&rr, 1e-10, 1e-10),
                        "square k={k} r={r} s={ss}: {:?} vs {:?}",
                        l,
                        rr
                    );
                }
            }
        }
        let c = unit_cube();
        for k in 1..3 {
            for ss in 2..4 {
                let (l, rr) = gen_tcm_expansion(&c, k, 0, ss).unwrap();
                assert!(l.approx_eq(&rr, 1e-9, 1e-9), "cube k={k} s={ss}");
            }
        }
    }

    #[test]
    fn crofton_rhs_known_scalars() {
        // lines hitting the unit square: ∫ V_0(K ∩ E) μ_1(dE) = (4/π)·V_1... with
        // our normalization the j=0, k=1, n=2 coefficient chain gives 4/π · ...
        let s = unit_square();
        let t = rhs_crofton(&s, 1, 0, 0, 0).unwrap();
        let v = t.coeff(&MultiIndex(vec![0, 0]));
        // e_{2,0,1}^{0,0,0} · V_1-type term: the closed form evaluates to 4/π
        assert!((v - 4.0 / PI).abs() < 1e-12, "got {v}");
        // planes hitting the unit cube at k=2, j=1
        let c = unit_cube();
        let t3 = rhs_crofton(&c, 2, 1, 0, 0).unwrap();
        let v3 = t3.coeff(&MultiIndex(vec![0, 0, 0]));
        assert!((v3 - 0.75 * PI).abs() < 1e-12, "got {v3}");
    }

    #[test]
    fn kinematic_rhs_two_squares() {
        // ∫ V_0(K ∩ gK′) μ(dg) for two unit squares = Σ α-weighted products:
        // V_0·V_2 + e·V_1·V_1 + V_2·V_0 = 2 + (2/π)·… = 2 + 8/π
        let s = unit_square();
        let t = rhs_kinematic(&s, &s, 0, 0, 0).unwrap();
        let v = t.coeff(&MultiIndex(vec![0, 0]));
        assert!((v - (2.0 + 8.0 / PI)).abs() < 1e-12, "got {v}");
    }
}
