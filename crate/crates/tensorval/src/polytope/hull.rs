//! Convex hulls in local coordinates: monotone chain in the plane and a
//! supporting-plane enumeration in three dimensions that yields merged
//! (coplanar) facets directly.

use super::linalg::*;

/// Tolerance for hull predicates, on unit-scale (desk scale) coordinates.
const EPS: f64 = 1e-9;

/// Indices of the convex hull of planar points (x, y in the first two
/// coordinates), counterclockwise, collinear points dropped.
pub fn hull2d(points: &[Vec3]) -> Vec<usize> {
    let scale = points
        .iter()
        .flat_map(|p| [p[0].abs(), p[1].abs()])
        .fold(1.0_f64, f64::max);
    let eps = EPS * scale * scale;
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .partial_cmp(&points[b][0])
            .unwrap()
            .then(points[a][1].partial_cmp(&points[b][1]).unwrap())
    });
    idx.dedup_by(|&mut a, &mut b| dist(&points[a], &points[b]) <= EPS);
    if idx.len() <= 2 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| -> f64 {
        let (p, q, r) = (&points[o], &points[a], &points[b]);
        (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    };
    let build = |iter: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut h: Vec<usize> = Vec::new();
        for i in iter {
            while h.len() >= 2 && turn(h[h.len() - 2], h[h.len() - 1], i) <= eps {
                h.pop();
            }
            h.push(i);
        }
        h
    };
    let mut lower = build(&mut idx.iter().copied());
    let mut upper = build(&mut idx.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    lower
}

/// A merged facet of a 3-dimensional hull: outward plane and the vertex cycle
/// (counterclockwise as seen from outside).
pub struct Facet3 {
    pub normal: Vec3,
    pub offset: f64,
    pub cycle: Vec<usize>,
}

/// Facets of the convex hull of full-dimensional points in local coordinates,
/// by enumeration of supporting planes.  Coplanar triangles merge into one
/// facet (alignment and offset tolerance 1e-9).
pub fn hull3d(points: &[Vec3]) -> Vec<Facet3> {
    let n = points.len();
    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    let mut push_plane = |nrm: Vec3, off: f64| {
        for (pn, po) in planes.iter() {
            if dist(pn, &nrm) <= EPS && (po - off).abs() <= EPS {
                return;
            }
        }
        planes.push((nrm, off));
    };
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let c = cross(&sub(&points[j], &points[i]), &sub(&points[k], &points[i]));
                if norm(&c) <= EPS {
                    continue;
                }
                let nrm = normalize(&c);
                let off = dot(&nrm, &points[i]);
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for p in points {
                    let d = dot(&nrm, p) - off;
                    lo = lo.min(d);
                    hi = hi.max(d);
                }
                if hi <= EPS {
                    push_plane(nrm, off);
                } else if lo >= -EPS {
                    push_plane(scale(&nrm, -1.0), -off);
                }
            }
        }
    }
    let mut facets = Vec::new();
    for (nrm, off) in planes {
        let on: Vec<usize> = (0..n)
            .filter(|&i| (dot(&nrm, &points[i]) - off).abs() <= EPS)
            .collect();
        if on.len() < 3 {
            continue;
        }
        // order the incident points counterclockwise around the outward normal
        let (e, f) = orthonormal_frame(&nrm);
        let local: Vec<Vec3> = on
            .iter()
            .map(|&i| [dot(&points[i], &e), dot(&points[i], &f), 0.0])
            .collect();
        let cycle2d = hull2d(&local);
        if cycle2d.len() < 3 {
            continue;
        }
        facets.push(Facet3 {
            normal: nrm,
            offset: off,
            cycle: cycle2d.into_iter().map(|l| on[l]).collect(),
        });
    }
    facets
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull2d_square_with_interior_point() {
        let pts = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.5, 0.5, 0.0],
            [0.5, 0.0, 0.0], // edge midpoint, collinear
        ];
        let h = hull2d(&pts);
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&4));
        assert!(!h.contains(&5));
    }

    #[test]
    fn hull3d_cube() {
        let mut pts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    pts.push([x, y, z]);
                }
            }
        }
        pts.push([0.5, 0.5, 0.5]);
        let facets = hull3d(&pts);
        assert_eq!(facets.len(), 6);
        for f in &facets {
            assert_eq!(f.cycle.len(), 4);
            assert!(!f.cycle.contains(&8));
        }
    }
}
