//! Intersection machinery: halfspace clipping, polytope ∩ polytope, and
//! sections by affine flats.  Every operation returns a freshly rebuilt
//! polytope so face lattices stay consistent, with `None` for an empty
//! intersection.

use super::linalg::*;
use super::{Flat, Polytope, GEOM_EPS};

/// Halfspace description `{x : n·x ≤ c}` of a polytope: its facet
/// inequalities plus a pair of opposing halfspaces for every direction
/// orthogonal to the affine hull.
pub fn halfspaces(p: &Polytope) -> Vec<(Vec3, f64)> {
    let mut hs: Vec<(Vec3, f64)> = p.facet_planes().to_vec();
    let anchor = p.vertices()[0];
    for b in complement_basis(p.hull_basis(), p.dim()) {
        let c = dot(&b, &anchor);
        hs.push((b, c));
        hs.push((scale(&b, -1.0), -c));
    }
    hs
}

/// Clips by `{x : n·x ≤ c}`.  Vertices within `GEOM_EPS` of the boundary are
/// kept; the result is rebuilt from surviving vertices and edge crossings.
pub fn clip_halfspace(p: &Polytope, n: &Vec3, c: f64) -> Option<Polytope> {
    let d: Vec<f64> = p.vertices().iter().map(|v| dot(n, v) - c).collect();
    if d.iter().all(|&x| x <= GEOM_EPS) {
        return Some(p.clone());
    }
    let mut pts: Vec<Vec3> = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if d[i] <= GEOM_EPS {
            pts.push(*v);
        }
    }
    for e in p.edges() {
        let (a, b) = (e.vertices[0], e.vertices[1]);
        if (d[a] < -GEOM_EPS && d[b] > GEOM_EPS) || (d[b] < -GEOM_EPS && d[a] > GEOM_EPS) {
            let t = d[a] / (d[a] - d[b]);
            pts.push(lerp(&p.vertices()[a], &p.vertices()[b], t));
        }
    }
    if pts.is_empty() {
        return None;
    }
    Polytope::build(&pts, p.dim()).ok()
}

/// The convex polytope `A ∩ B`, or `None` if the intersection is empty.
pub fn intersect(a: &Polytope, b: &Polytope) -> Option<Polytope> {
    let mut cur = a.clone();
    for (n, c) in halfspaces(b) {
        cur = clip_halfspace(&cur, &n, c)?;
    }
    Some(cur)
}

/// Section by the hyperplane `{x : n·x = c}` (on-plane vertices plus strict
/// edge crossings, rebuilt).
pub fn slice_hyperplane(p: &Polytope, n: &Vec3, c: f64) -> Option<Polytope> {
    let d: Vec<f64> = p.vertices().iter().map(|v| dot(n, v) - c).collect();
    let mut pts: Vec<Vec3> = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if d[i].abs() <= GEOM_EPS {
            pts.push(*v);
        }
    }
    for e in p.edges() {
        let (a, b) = (e.vertices[0], e.vertices[1]);
        if (d[a] < -GEOM_EPS && d[b] > GEOM_EPS) || (d[b] < -GEOM_EPS && d[a] > GEOM_EPS) {
            let t = d[a] / (d[a] - d[b]);
            pts.push(lerp(&p.vertices()[a], &p.vertices()[b], t));
        }
    }
    if pts.is_empty() {
        return None;
    }
    Polytope::build(&pts, p.dim()).ok()
}

/// Section by an affine flat, realized as successive hyperplane slices along
/// an orthonormal basis of the flat's orthogonal complement.
pub fn slice_flat(p: &Polytope, flat: &Flat) -> Option<Polytope> {
    let mut cur = p.clone();
    for n in complement_basis(&flat.basis, p.dim()) {
        cur = slice_hyperplane(&cur, &n, dot(&n, &flat.anchor))?;
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn clip_square_to_triangle() {
        let s = unit_square();
        let t = clip_halfspace(&s, &normalize(&[1.0, 1.0, 0.0]), 0.5 * 2.0_f64.sqrt() * 0.5)
            .unwrap();
        assert_eq!(t.lattice_dim(), 2);
        let tri = &t.faces(2)[0];
        assert!((t.face_measure(tri) - 0.125).abs() < 1e-10);
    }

    #[test]
    fn overlapping_squares() {
        let a = unit_square();
        let b = a.translate(&[0.5, 0.5, 0.0]);
        let i = intersect(&a, &b).unwrap();
        assert!((i.face_measure(&i.faces(2)[0]) - 0.25).abs() < 1e-10);
    }

    #[test]
    fn disjoint_squares() {
        let a = unit_square();
        let b = a.translate(&[3.0, 0.0, 0.0]);
        assert!(intersect(&a, &b).is_none());
    }

    #[test]
    fn touching_squares_intersect_in_an_edge() {
        let a = unit_square();
        let b = a.translate(&[1.0, 0.0, 0.0]);
        let i = intersect(&a, &b).unwrap();
        assert_eq!(i.lattice_dim(), 1);
        assert!((i.face_measure(&i.faces(1)[0]) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cube_intersection_volume() {
        let a = unit_cube();
        let b = a.translate(&[0.25, 0.25, 0.25]);
        let i = intersect(&a, &b).unwrap();
        assert!((i.face_measure(&i.faces(3)[0]) - 0.75_f64.powi(3)).abs() < 1e-10);
    }

    #[test]
    fn line_section_of_square() {
        let s = unit_square();
        let flat = Flat::new(vec![[1.0, 0.0, 0.0]], [0.0, 0.5, 0.0]).unwrap();
        let sec = slice_flat(&s, &flat).unwrap();
        assert_eq!(sec.lattice_dim(), 1);
        assert!((sec.face_measure(&sec.faces(1)[0]) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn plane_section_of_cube() {
        let c = unit_cube();
        // diagonal plane through the mid cross-section
        let n = normalize(&[1.0, 1.0, 0.0]);
        let sec = slice_hyperplane(&c, &n, dot(&n, &[0.5, 0.5, 0.0])).unwrap();
        assert_eq!(sec.lattice_dim(), 2);
        assert!((sec.face_measure(&sec.faces(2)[0]) - 2.0_f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn missing_flat_gives_none() {
        let s = unit_square();
        let flat = Flat::new(vec![[1.0, 0.0, 0.0]], [0.0, 5.0, 0.0]).unwrap();
        assert!(slice_flat(&s, &flat).is_none());
    }
}
