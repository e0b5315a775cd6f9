//! Exact monomial moments over faces: simplex moments in barycentric form,
//! the face moment tensors `Υ_r`, and the volume moment tensor.

use std::collections::BTreeMap;

use crate::polytope::linalg::*;
use crate::polytope::{Face, Polytope};
use crate::symtensor::{MultiIndex, SymTensor};

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|i| i as f64).product()
}

/// `k`-dimensional volume of a simplex given as `k+1` points.
fn simplex_volume(simplex: &[Vec3]) -> f64 {
    match simplex.len() {
        1 => 1.0,
        2 => dist(&simplex[0], &simplex[1]),
        3 => {
            let u = sub(&simplex[1], &simplex[0]);
            let v = sub(&simplex[2], &simplex[0]);
            norm(&cross(&u, &v)) / 2.0
        }
        4 => {
            let u = sub(&simplex[1], &simplex[0]);
            let v = sub(&simplex[2], &simplex[0]);
            let w = sub(&simplex[3], &simplex[0]);
            dot(&u, &cross(&v, &w)).abs() / 6.0
        }
        _ => unreachable!(),
    }
}

type BaryPoly = BTreeMap<MultiIndex, f64>;

fn poly_mul(a: &BaryPoly, b: &BaryPoly) -> BaryPoly {
    let mut out = BaryPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = MultiIndex(
                ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect(),
            );
            *out.entry(m).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// Exact moment `∫_Δ x^a dH^k` of a monomial over a simplex, via the
/// barycentric formula `∫_Δ λ^b dH^k = k! vol(Δ) ∏ b_t! / (k + |b|)!`.
pub fn simplex_moment(simplex: &[Vec3], a: &MultiIndex) -> f64 {
    let k = simplex.len() - 1;
    let vol = simplex_volume(simplex);
    if vol == 0.0 {
        return 0.0;
    }
    // expand x^a = ∏_i (Σ_t λ_t v_{t,i})^{a_i} as a polynomial in λ
    let mut poly = BaryPoly::new();
    poly.insert(MultiIndex(vec![0; k + 1]), 1.0);
    for (i, &ai) in a.0.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut pow = BaryPoly::new();
        for b in MultiIndex::all(k + 1, ai) {
            let mut c = b.multinomial();
            for (t, &bt) in b.0.iter().enumerate() {
                c *= simplex[t][i].powi(bt as i32);
            }
            if c != 0.0 {
                pow.insert(b, c);
            }
        }
        poly = poly_mul(&poly, &pow);
    }
    let kf = factorial(k as u32);
    let mut total = 0.0;
    for (b, c) in &poly {
        let deg = b.degree();
        let prod: f64 = b.0.iter().map(|&bt| factorial(bt)).product();
        total += c * kf * vol * prod / factorial(k as u32 + deg);
    }
    total
}

/// Exact monomial moment `∫_F x^a dH^dim(F)` over a face (point evaluation
/// for vertices).
pub fn face_moment(p: &Polytope, face: &Face, a: &MultiIndex) -> f64 {
    p.face_simplices(face)
        .iter()
        .map(|s| simplex_moment(s, a))
        .sum()
}

/// The moment tensor `Υ_r(F) = (1/r!) ∫_F x^r dH^dim(F)`; zero for `r < 0`.
pub fn upsilon(p: &Polytope, face: &Face, r: i64) -> SymTensor {
    let n = p.dim();
    if r < 0 {
        return SymTensor::zero(n, 0);
    }
    let r = r as u32;
    let mut t = SymTensor::zero(n, r);
    let rf = factorial(r);
    let simplices = p.face_simplices(face);
    for a in MultiIndex::all(n, r) {
        let moment: f64 = simplices.iter().map(|s| simplex_moment(s, &a)).sum();
        if moment != 0.0 {
            t.set_coeff(a.clone(), a.multinomial() / rf * moment);
        }
    }
    t
}

/// The volume moment `Φ_n^{r,0}(P) = (1/r!) ∫_P x^r dH^n`; zero when the
/// polytope is not full-dimensional.
pub fn volume_moment(p: &Polytope, r: i64) -> SymTensor {
    let n = p.dim();
    if r < 0 {
        return SymTensor::zero(n, 0);
    }
    if !p.is_full_dimensional() {
        return SymTensor::zero(n, r as u32);
    }
    let top = &p.faces(n)[0];
    upsilon(p, top, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn segment_moments() {
        // ∫_0^1 x^k dx on the x-axis segment
        let seg = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
        for k in 0..5u32 {
            let m = simplex_moment(&seg, &mi(&[k, 0]));
            assert!((m - 1.0 / (k as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn triangle_moments() {
        // standard triangle: ∫ x^a y^b dA = a! b! / (a+b+2)!
        let tri = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        for (a, b, want) in [
            (0u32, 0u32, 0.5),
            (1, 0, 1.0 / 6.0),
            (1, 1, 1.0 / 24.0),
            (2, 0, 1.0 / 12.0),
            (2, 1, 1.0 / 60.0),
        ] {
            let m = simplex_moment(&tri, &mi(&[a, b]));
            assert!((m - want).abs() < 1e-14, "a={a} b={b}: {m} vs {want}");
        }
    }

    #[test]
    fn tetrahedron_moments() {
        let tet = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        // ∫ x^a y^b z^c dV = a! b! c! / (a+b+c+3)!
        let m = simplex_moment(&tet, &mi(&[1, 1, 1]));
        assert!((m - 1.0 / 720.0).abs() < 1e-15);
        let m0 = simplex_moment(&tet, &mi(&[0, 0, 0]));
        assert!((m0 - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn translated_square_volume_moment() {
        // ∫ over [1,2]×[3,4] of x y = (3/2)·(7/2)
        let p = Polytope::from_json(r#"{"dim": 2, "vertices": [[1,3],[2,3],[2,4],[1,4]]}"#)
            .unwrap();
        let t = volume_moment(&p, 2);
        // Φ_n^{2,0} coefficient at x y is multinom(2,(1,1))/2! · ∫xy = ∫xy
        assert!((t.coeff(&mi(&[1, 1])) - 1.5 * 3.5).abs() < 1e-12);
        // and at x²: (1/2)∫x² = (1/2)(7/3)
        assert!((t.coeff(&mi(&[2, 0])) - 7.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn vertex_upsilon_is_point_power() {
        let p = Polytope::from_json(r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#)
            .unwrap();
        let vtx = p
            .faces(0)
            .iter()
            .find(|f| dist(&p.vertices()[f.vertices[0]], &[1.0, 1.0, 0.0]) < 1e-12)
            .unwrap();
        let u2 = upsilon(&p, vtx, 2);
        // (1/2!)(1,1)^2: polynomial (x+y)²/2
        assert!((u2.coeff(&mi(&[2, 0])) - 0.5).abs() < 1e-14);
        assert!((u2.coeff(&mi(&[1, 1])) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cube_volume_and_facet_measure_via_moments() {
        let mut pts = Vec::new();
        for x in [0.0, 2.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push([x, y, z]);
                }
            }
        }
        let p = Polytope::build(&pts, 3).unwrap();
        let v = volume_moment(&p, 0);
        assert!((v.coeff(&MultiIndex(vec![0, 0, 0])) - 2.0).abs() < 1e-12);
        for f in p.faces(2) {
            let m = face_moment(&p, f, &mi(&[0, 0, 0]));
            assert!((m - p.face_measure(f)).abs() < 1e-12);
        }
    }
}
