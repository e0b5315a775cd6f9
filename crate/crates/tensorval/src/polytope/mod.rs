//! Geometry backend for convex polytopes in ambient dimension 2 or 3:
//! convex hulls with full face lattices, face measures, normal cones with
//! lineality, polytope and flat intersections, and metric projection.
//!
//! Lower-dimensional polytopes (points, segments, planar polygons in `R³`)
//! are first hulled inside their affine hull and then re-embedded, so one
//! lattice builder covers every degenerate case.

pub mod clip;
pub mod generators;
pub mod hull;
pub mod linalg;

use linalg::*;
use serde::Deserialize;
use thiserror::Error;

/// Vertex dedup / incidence tolerance on desk-scale coordinates.
pub(crate) const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyInput,
    #[error("ambient dimension must be 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("face lattice inconsistency: {0}")]
    Lattice(String),
    #[error("flat basis is not orthonormal within tolerance")]
    BadFlat,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A face of the lattice.  `vertices` holds indices into the polytope's
/// vertex list; for 2-dimensional faces it is the boundary cycle in
/// counterclockwise order (as seen from the outward side).
#[derive(Debug, Clone)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl Face {
    fn vertex_set(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        let set = self.vertex_set();
        other.vertices.iter().all(|v| set.binary_search(v).is_ok())
    }
}

/// Pointed part of a normal cone, expressed through its extreme structure.
#[derive(Debug, Clone)]
pub enum Pointed {
    /// `{0}` — the face is the whole polytope.
    Zero,
    /// A single extreme ray (unit vector).
    Ray(Vec3),
    /// A planar cone: directions `cos φ · e + sin φ · f` for `φ ∈ [0, angle]`,
    /// with `angle < π`.
    Arc { e: Vec3, f: Vec3, angle: f64 },
    /// A full-dimensional pointed cone in `R³`; the unit generators are the
    /// incident facet normals, in cyclic order around the cone axis.
    SphericalPolygon(Vec<Vec3>),
}

/// Normal cone `N(P, F)` split into lineality subspace and pointed part.
#[derive(Debug, Clone)]
pub struct Cone {
    /// Orthonormal basis of the lineality space, `(aff P)⊥`.
    pub lineality: Vec<Vec3>,
    pub pointed: Pointed,
}

impl Cone {
    pub fn pointed_dim(&self) -> usize {
        match &self.pointed {
            Pointed::Zero => 0,
            Pointed::Ray(_) => 1,
            Pointed::Arc { .. } => 2,
            Pointed::SphericalPolygon(_) => 3,
        }
    }

    /// Unit generators of the pointed part.
    pub fn generators(&self) -> Vec<Vec3> {
        match &self.pointed {
            Pointed::Zero => Vec::new(),
            Pointed::Ray(g) => vec![*g],
            Pointed::Arc { e, f, angle } => {
                vec![*e, add(&scale(e, angle.cos()), &scale(f, angle.sin()))]
            }
            Pointed::SphericalPolygon(gens) => gens.clone(),
        }
    }
}

/// Axis-aligned box in the ambient space.
#[derive(Debug, Clone, Copy)]
pub struct Aabb {
    pub lo: Vec3,
    pub hi: Vec3,
    pub dim: usize,
}

impl Aabb {
    pub fn volume(&self) -> f64 {
        (0..self.dim).map(|i| self.hi[i] - self.lo[i]).product()
    }

    pub fn inflate(&self, eps: f64) -> Aabb {
        let mut b = *self;
        for i in 0..self.dim {
            b.lo[i] -= eps;
            b.hi[i] += eps;
        }
        b
    }
}

/// An affine flat `E` of dimension `k`, given by an orthonormal basis of its
/// direction space `E⁰` and a point on `E`.
#[derive(Debug, Clone)]
pub struct Flat {
    pub basis: Vec<Vec3>,
    pub anchor: Vec3,
}

impl Flat {
    pub fn new(basis: Vec<Vec3>, anchor: Vec3) -> Result<Self, GeomError> {
        for (i, b) in basis.iter().enumerate() {
            for (k, c) in basis.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                if (dot(b, c) - want).abs() > 1e-12 {
                    return Err(GeomError::BadFlat);
                }
            }
        }
        Ok(Flat { basis, anchor })
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }
}

/// Convex polytope with full face lattice.  `faces[j]` lists the
/// `j`-dimensional faces for `j = 0, …, lattice_dim`; the top entry is the
/// polytope itself (improper face).
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec3>,
    lattice_dim: usize,
    faces: Vec<Vec<Face>>,
    /// Orthonormal direction basis of the affine hull.
    hull_basis: Vec<Vec3>,
    anchor: Vec3,
    /// Outward unit normals within the affine hull and plane offsets,
    /// aligned with `faces[lattice_dim − 1]`.
    facet_planes: Vec<(Vec3, f64)>,
}

#[derive(Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl Polytope {
    /// Convex hull of a point set with full face lattice.  Lower-dimensional
    /// hulls are supported; `lattice_dim` records the intrinsic dimension.
    ///
    /// Near-degenerate inputs (slivers whose affine rank is ambiguous at the
    /// base tolerance) are retried with a coarser rank tolerance, collapsing
    /// them to the nearby lower-dimensional hull.
    pub fn build(points: &[Vec3], dim: usize) -> Result<Polytope, GeomError> {
        if !(dim == 2 || dim == 3) {
            return Err(GeomError::UnsupportedDimension(dim));
        }
        // dedup
        let mut pts: Vec<Vec3> = Vec::new();
        for p in points {
            debug_assert!(dim == 3 || p[2] == 0.0);
            if pts.iter().all(|q| dist(p, q) > GEOM_EPS) {
                pts.push(*p);
            }
        }
        if pts.is_empty() {
            return Err(GeomError::EmptyInput);
        }
        let mut tol = GEOM_EPS;
        for _ in 0..3 {
            match Self::build_at(&pts, dim, tol) {
                Ok(p) => return Ok(p),
                Err(_) => tol *= 100.0,
            }
        }
        Self::build_at(&pts, dim, tol)
    }

    fn build_at(pts: &[Vec3], dim: usize, rank_tol: f64) -> Result<Polytope, GeomError> {
        // affine hull
        let anchor = pts[0];
        let mut basis: Vec<Vec3> = Vec::new();
        for p in pts {
            gram_schmidt_extend(&mut basis, &sub(p, &anchor), rank_tol);
        }
        let d = basis.len();
        let local: Vec<Vec3> = pts
            .iter()
            .map(|p| {
                let r = sub(p, &anchor);
                let mut u = [0.0; 3];
                for (i, b) in basis.iter().enumerate() {
                    u[i] = dot(&r, b);
                }
                u
            })
            .collect();
        let lift_dir = |u: &Vec3| -> Vec3 {
            let mut x = [0.0; 3];
            for (i, b) in basis.iter().enumerate() {
                x = add(&x, &scale(b, u[i]));
            }
            x
        };

        let mut p = Polytope {
            dim,
            vertices: Vec::new(),
            lattice_dim: d,
            faces: vec![Vec::new(); d + 1],
            hull_basis: basis.clone(),
            anchor,
            facet_planes: Vec::new(),
        };
        match d {
            0 => {
                p.vertices.push(anchor);
                p.faces[0].push(Face { dim: 0, vertices: vec![0] });
            }
            1 => {
                let (mut lo, mut hi) = (0usize, 0usize);
                for (i, u) in local.iter().enumerate() {
                    if u[0] < local[lo][0] {
                        lo = i;
                    }
                    if u[0] > local[hi][0] {
                        hi = i;
                    }
                }
                p.vertices = vec![pts[lo], pts[hi]];
                p.faces[0].push(Face { dim: 0, vertices: vec![0] });
                p.faces[0].push(Face { dim: 0, vertices: vec![1] });
                p.faces[1].push(Face { dim: 1, vertices: vec![0, 1] });
                let b1 = basis[0];
                p.facet_planes = vec![
                    (scale(&b1, -1.0), -dot(&b1, &pts[lo])),
                    (b1, dot(&b1, &pts[hi])),
                ];
            }
            2 => {
                let cyc = hull::hull2d(&local);
                if cyc.len() < 3 {
                    return Err(GeomError::Lattice(
                        "rank-2 point set collapsed to a degenerate hull".into(),
                    ));
                }
                let v = cyc.len();
                p.vertices = cyc.iter().map(|&i| pts[i]).collect();
                for i in 0..v {
                    p.faces[0].push(Face { dim: 0, vertices: vec![i] });
                }
                // plane normal of the hull (for 2D embedded in R³ this is the
                // lift of the local z axis; edges get in-plane normals)
                for i in 0..v {
                    let a = cyc[i];
                    let b = cyc[(i + 1) % v];
                    p.faces[1].push(Face { dim: 1, vertices: vec![i, (i + 1) % v] });
                    let e = sub(&local[b], &local[a]);
                    let len = norm(&e);
                    // CCW polygon: outward normal is the right-hand rotation
                    let nloc = [e[1] / len, -e[0] / len, 0.0];
                    let namb = lift_dir(&nloc);
                    p.facet_planes.push((namb, dot(&namb, &pts[a])));
                }
                p.faces[2].push(Face { dim: 2, vertices: (0..v).collect() });
            }
            3 => {
                let facets = hull::hull3d(&local);
                if facets.len() < 4 {
                    return Err(GeomError::Lattice(
                        "rank-3 point set collapsed to a degenerate hull".into(),
                    ));
                }
                // collect hull vertices
                let mut map = vec![usize::MAX; pts.len()];
                for f in &facets {
                    for &i in &f.cycle {
                        if map[i] == usize::MAX {
                            map[i] = p.vertices.len();
                            p.vertices.push(pts[i]);
                        }
                    }
                }
                for i in 0..p.vertices.len() {
                    p.faces[0].push(Face { dim: 0, vertices: vec![i] });
                }
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for f in &facets {
                    let cyc: Vec<usize> = f.cycle.iter().map(|&i| map[i]).collect();
                    for t in 0..cyc.len() {
                        let a = cyc[t];
                        let b = cyc[(t + 1) % cyc.len()];
                        let key = (a.min(b), a.max(b));
                        if !edges.contains(&key) {
                            edges.push(key);
                        }
                    }
                    let namb = lift_dir(&f.normal);
                    p.facet_planes.push((namb, dot(&namb, &p.vertices[cyc[0]])));
                    p.faces[2].push(Face { dim: 2, vertices: cyc });
                }
                edges.sort_unstable();
                for (a, b) in edges {
                    p.faces[1].push(Face { dim: 1, vertices: vec![a, b] });
                }
                p.faces[3].push(Face {
                    dim: 3,
                    vertices: (0..p.vertices.len()).collect(),
                });
                let (v, e, f) = (p.faces[0].len(), p.faces[1].len(), p.faces[2].len());
                if v + f != e + 2 {
                    return Err(GeomError::Lattice(format!(
                        "Euler relation violated: V={v} E={e} F={f}"
                    )));
                }
            }
            _ => unreachable!(),
        }
        Ok(p)
    }

    /// Parses the `{"dim": n, "vertices": [[…], …]}` JSON form.
    pub fn from_json(text: &str) -> Result<Polytope, GeomError> {
        let pj: PolytopeJson =
            serde_json::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))?;
        let pts: Vec<Vec3> = pj
            .vertices
            .iter()
            .map(|v| {
                let mut p = [0.0; 3];
                for (i, &c) in v.iter().take(3).enumerate() {
                    p[i] = c;
                }
                p
            })
            .collect();
        Polytope::build(&pts, pj.dim)
    }

    /// Reads the vertex block of an OFF file; the lattice is rebuilt from the
    /// vertices (face records in the file are ignored).
    pub fn from_off(text: &str) -> Result<Polytope, GeomError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or(GeomError::Parse("empty OFF file".into()))?;
        if header != "OFF" {
            return Err(GeomError::Parse("missing OFF header".into()));
        }
        let counts = lines.next().ok_or(GeomError::Parse("missing counts".into()))?;
        let nv: usize = counts
            .split_whitespace()
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(GeomError::Parse("bad vertex count".into()))?;
        let mut pts = Vec::with_capacity(nv);
        for _ in 0..nv {
            let line = lines.next().ok_or(GeomError::Parse("truncated vertices".into()))?;
            let c: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| GeomError::Parse(e.to_string()))?;
            let mut p = [0.0; 3];
            for (i, &x) in c.iter().take(3).enumerate() {
                p[i] = x;
            }
            pts.push(p);
        }
        let dim = if pts.iter().all(|p| p[2] == 0.0) { 2 } else { 3 };
        Polytope::build(&pts, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn hull_basis(&self) -> &[Vec3] {
        &self.hull_basis
    }

    /// Faces of dimension `j` (empty above `lattice_dim`).
    pub fn faces(&self, j: usize) -> &[Face] {
        if j <= self.lattice_dim {
            &self.faces[j]
        } else {
            &[]
        }
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.lattice_dim == self.dim
    }

    pub fn bbox(&self) -> Aabb {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for i in 0..3 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        for i in self.dim..3 {
            lo[i] = 0.0;
            hi[i] = 0.0;
        }
        Aabb { lo, hi, dim: self.dim }
    }

    pub fn translate(&self, t: &Vec3) -> Polytope {
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = add(v, t);
        }
        p.anchor = add(&p.anchor, t);
        for (i, (n, c)) in self.facet_planes.iter().enumerate() {
            p.facet_planes[i] = (*n, c + dot(n, t));
        }
        p
    }

    /// Applies `x ↦ R x + t`; the combinatorial lattice is preserved.
    pub fn transform(&self, rot: &[[f64; 3]; 3], t: &Vec3) -> Polytope {
        let app = |v: &Vec3| -> Vec3 {
            [
                rot[0][0] * v[0] + rot[0][1] * v[1] + rot[0][2] * v[2],
                rot[1][0] * v[0] + rot[1][1] * v[1] + rot[1][2] * v[2],
                rot[2][0] * v[0] + rot[2][1] * v[1] + rot[2][2] * v[2],
            ]
        };
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = add(&app(v), t);
        }
        p.anchor = add(&app(&p.anchor), t);
        for b in &mut p.hull_basis {
            *b = app(b);
        }
        for (i, (n, _)) in self.facet_planes.iter().enumerate() {
            let n2 = app(n);
            let on_face = p.vertices[self.faces[self.lattice_dim - 1][i].vertices[0]];
            p.facet_planes[i] = (n2, dot(&n2, &on_face));
        }
        p
    }

    /// Membership within tolerance (distance to the affine hull plus all
    /// facet half-space constraints).
    pub fn contains(&self, x: &Vec3, tol: f64) -> bool {
        let r = residual(&sub(x, &self.anchor), &self.hull_basis);
        if norm(&r) > tol {
            return false;
        }
        self.facet_planes.iter().all(|(n, c)| dot(n, x) <= c + tol)
    }

    /// `j`-dimensional Hausdorff measure of a face (counting measure for
    /// vertices).
    pub fn face_measure(&self, face: &Face) -> f64 {
        match face.dim {
            0 => 1.0,
            1 => dist(
                &self.vertices[face.vertices[0]],
                &self.vertices[face.vertices[1]],
            ),
            2 => {
                let vs = &face.vertices;
                let a = &self.vertices[vs[0]];
                let mut area = 0.0;
                for i in 1..vs.len() - 1 {
                    let b = &self.vertices[vs[i]];
                    let c = &self.vertices[vs[i + 1]];
                    area += norm(&cross(&sub(b, a), &sub(c, a))) / 2.0;
                }
                area
            }
            3 => {
                // divergence theorem over outward-oriented facet cycles
                let mut six_v = 0.0;
                for f in &self.faces[2] {
                    let a = &self.vertices[f.vertices[0]];
                    for i in 1..f.vertices.len() - 1 {
                        let b = &self.vertices[f.vertices[i]];
                        let c = &self.vertices[f.vertices[i + 1]];
                        six_v += dot(a, &cross(b, c));
                    }
                }
                six_v.abs() / 6.0
            }
            _ => unreachable!(),
        }
    }

    /// Orthonormal basis of the direction space of a face.
    pub fn face_basis(&self, face: &Face) -> Vec<Vec3> {
        let mut basis = Vec::new();
        let v0 = &self.vertices[face.vertices[0]];
        for &i in &face.vertices[1..] {
            gram_schmidt_extend(&mut basis, &sub(&self.vertices[i], v0), GEOM_EPS);
            if basis.len() == face.dim {
                break;
            }
        }
        debug_assert_eq!(basis.len(), face.dim);
        basis
    }

    /// Decomposes a face into simplices (lists of `dim+1` vertex positions).
    pub fn face_simplices(&self, face: &Face) -> Vec<Vec<Vec3>> {
        let v = |i: usize| self.vertices[i];
        match face.dim {
            0 => vec![vec![v(face.vertices[0])]],
            1 => vec![vec![v(face.vertices[0]), v(face.vertices[1])]],
            2 => {
                let vs = &face.vertices;
                (1..vs.len() - 1)
                    .map(|i| vec![v(vs[0]), v(vs[i]), v(vs[i + 1])])
                    .collect()
            }
            3 => {
                let mut c = [0.0; 3];
                for &i in &face.vertices {
                    c = add(&c, &self.vertices[i]);
                }
                let c = scale(&c, 1.0 / face.vertices.len() as f64);
                let mut out = Vec::new();
                for f in &self.faces[2] {
                    let vs = &f.vertices;
                    for i in 1..vs.len() - 1 {
                        out.push(vec![c, v(vs[0]), v(vs[i]), v(vs[i + 1])]);
                    }
                }
                out
            }
            _ => unreachable!(),
        }
    }

    /// Facets (within the affine hull) incident to a face, as indices into
    /// `faces(lattice_dim − 1)`.
    fn incident_facets(&self, face: &Face) -> Vec<usize> {
        self.faces[self.lattice_dim - 1]
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains_face(face))
            .map(|(i, _)| i)
            .collect()
    }

    /// The normal cone `N(P, F)`, split into the lineality space
    /// `(aff P)⊥` and the pointed part within the affine hull.
    pub fn normal_cone(&self, face: &Face) -> Cone {
        let lineality = complement_basis(&self.hull_basis, self.dim);
        let d = self.lattice_dim;
        let k = face.dim;
        let pointed = if k == d {
            Pointed::Zero
        } else if k == d - 1 {
            let idx = self.incident_facets(face);
            debug_assert_eq!(idx.len(), 1);
            Pointed::Ray(self.facet_planes[idx[0]].0)
        } else if d - k == 2 {
            // vertex of a polygon, or edge of a 3-polytope: planar cone
            let idx = self.incident_facets(face);
            debug_assert_eq!(idx.len(), 2, "expected two incident facets");
            let g1 = self.facet_planes[idx[0]].0;
            let g2 = self.facet_planes[idx[1]].0;
            let e = g1;
            let r = sub(&g2, &scale(&e, dot(&g2, &e)));
            let f = normalize(&r);
            let angle = dot(&g1, &g2).clamp(-1.0, 1.0).acos();
            Pointed::Arc { e, f, angle }
        } else {
            // vertex of a 3-polytope: order the incident facet normals
            debug_assert!(d == 3 && k == 0);
            let idx = self.incident_facets(face);
            let mut axis = [0.0; 3];
            for &i in &idx {
                axis = add(&axis, &self.facet_planes[i].0);
            }
            let axis = normalize(&axis);
            let (e, f) = orthonormal_frame(&axis);
            let mut gens: Vec<Vec3> = idx.iter().map(|&i| self.facet_planes[i].0).collect();
            gens.sort_by(|a, b| {
                let ta = f64::atan2(dot(a, &f), dot(a, &e));
                let tb = f64::atan2(dot(b, &f), dot(b, &e));
                ta.partial_cmp(&tb).unwrap()
            });
            Pointed::SphericalPolygon(gens)
        };
        Cone { lineality, pointed }
    }

    /// Metric projection: nearest point of the polytope and the distance.
    pub fn project_point(&self, x: &Vec3) -> (Vec3, f64) {
        if self.contains(x, 1e-12) {
            return (*x, 0.0);
        }
        let mut best = (*x, f64::INFINITY);
        for j in 0..=self.lattice_dim {
            for face in &self.faces[j] {
                let v0 = self.vertices[face.vertices[0]];
                let p = if face.dim == 0 {
                    v0
                } else {
                    let basis = self.face_basis(face);
                    let r = sub(x, &v0);
                    let mut p = v0;
                    for b in &basis {
                        p = add(&p, &scale(b, dot(&r, b)));
                    }
                    p
                };
                if self.face_contains_point(face, &p) {
                    let d = dist(x, &p);
                    if d < best.1 {
                        best = (p, d);
                    }
                }
            }
        }
        best
    }

    fn face_contains_point(&self, face: &Face, p: &Vec3) -> bool {
        match face.dim {
            0 => true,
            1 => {
                let a = self.vertices[face.vertices[0]];
                let b = self.vertices[face.vertices[1]];
                let t = dot(&sub(p, &a), &sub(&b, &a)) / norm2(&sub(&b, &a));
                (-GEOM_EPS..=1.0 + GEOM_EPS).contains(&t)
            }
            2 => {
                let vs = &face.vertices;
                let a = self.vertices[vs[0]];
                let b = self.vertices[vs[1]];
                let c = self.vertices[vs[vs.len() - 1]];
                let n = cross(&sub(&b, &a), &sub(&c, &a));
                let n = normalize(&n);
                (0..vs.len()).all(|i| {
                    let u = self.vertices[vs[i]];
                    let v = self.vertices[vs[(i + 1) % vs.len()]];
                    let edge_n = cross(&n, &sub(&v, &u));
                    // interior lies on the side of the centroid
                    let mut cent = [0.0; 3];
                    for &w in vs.iter() {
                        cent = add(&cent, &self.vertices[w]);
                    }
                    let cent = scale(&cent, 1.0 / vs.len() as f64);
                    let sgn = dot(&edge_n, &sub(&cent, &u)).signum();
                    sgn * dot(&edge_n, &sub(p, &u)) >= -GEOM_EPS
                })
            }
            3 => self.contains(p, GEOM_EPS),
            _ => unreachable!(),
        }
    }

    pub(crate) fn facet_planes(&self) -> &[(Vec3, f64)] {
        &self.facet_planes
    }

    pub(crate) fn edges(&self) -> &[Face] {
        if self.lattice_dim >= 1 {
            &self.faces[1]
        } else {
            &[]
        }
    }
}

/// Axis-aligned box containing `{t : A ∩ (B + t) ≠ ∅}`, computed as
/// `bbox(A) ⊕ (−bbox(B))`.
pub fn translation_window(a: &Polytope, b: &Polytope) -> Aabb {
    let ba = a.bbox();
    let bb = b.bbox();
    Aabb {
        lo: sub(&ba.lo, &bb.hi),
        hi: sub(&ba.hi, &bb.lo),
        dim: a.dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unit_square() -> Polytope {
        Polytope::build(
            &[
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 1.0, 0.0],
            ],
            2,
        )
        .unwrap()
    }

    pub(crate) fn unit_cube() -> Polytope {
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
    fn square_lattice_counts() {
        let p = unit_square();
        assert_eq!(p.face_counts(), vec![4, 4, 1]);
    }

    #[test]
    fn cube_lattice_counts() {
        let p = unit_cube();
        assert_eq!(p.face_counts(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn collinear_points_make_a_segment() {
        let p = Polytope::build(
            &[[0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [1.0, 0.0, 0.0]],
            2,
        )
        .unwrap();
        assert_eq!(p.lattice_dim(), 1);
        assert_eq!(p.faces(0).len(), 2);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(Polytope::build(&[], 2).is_err());
    }

    #[test]
    fn face_measures() {
        let c = unit_cube();
        let facet = &c.faces(2)[0];
        assert!((c.face_measure(facet) - 1.0).abs() < 1e-12);
        let top = &c.faces(3)[0];
        assert!((c.face_measure(top) - 1.0).abs() < 1e-12);
        let seg = Polytope::build(&[[0.0, 0.0, 0.0], [1.0, 1.0, 0.0]], 2).unwrap();
        let e = &seg.faces(1)[0];
        assert!((seg.face_measure(e) - 2.0_f64.sqrt()).abs() < 1e-12);
        let v = &seg.faces(0)[0];
        assert!((seg.face_measure(v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cube_facet_normal_cone() {
        let c = unit_cube();
        let facet = c
            .faces(2)
            .iter()
            .find(|f| f.vertices.iter().all(|&i| c.vertices()[i][2] == 1.0))
            .unwrap();
        let cone = c.normal_cone(facet);
        assert!(cone.lineality.is_empty());
        match cone.pointed {
            Pointed::Ray(g) => assert!(dist(&g, &[0.0, 0.0, 1.0]) < 1e-12),
            _ => panic!("expected a ray"),
        }
    }

    #[test]
    fn square_vertex_normal_cone() {
        let s = unit_square();
        let vtx = s
            .faces(0)
            .iter()
            .find(|f| dist(&s.vertices()[f.vertices[0]], &[0.0, 0.0, 0.0]) < 1e-12)
            .unwrap();
        let cone = s.normal_cone(vtx);
        assert!(cone.lineality.is_empty());
        match cone.pointed {
            Pointed::Arc { angle, .. } => assert!((angle - std::f64::consts::FRAC_PI_2) < 1e-12),
            _ => panic!("expected an arc"),
        }
        let gens = cone.generators();
        // spanned by −e1 and −e2 in some order
        assert!(gens
            .iter()
            .any(|g| dist(g, &[-1.0, 0.0, 0.0]) < 1e-9 || dist(g, &[0.0, -1.0, 0.0]) < 1e-9));
    }

    #[test]
    fn segment_endpoint_cone_has_lineality() {
        let seg = Polytope::build(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], 2).unwrap();
        let origin_vtx = seg
            .faces(0)
            .iter()
            .find(|f| dist(&seg.vertices()[f.vertices[0]], &[0.0, 0.0, 0.0]) < 1e-12)
            .unwrap();
        let cone = seg.normal_cone(origin_vtx);
        assert_eq!(cone.lineality.len(), 1);
        assert!(cone.lineality[0][1].abs() > 0.99);
        match cone.pointed {
            Pointed::Ray(g) => assert!(dist(&g, &[-1.0, 0.0, 0.0]) < 1e-12),
            _ => panic!("expected a ray"),
        }
    }

    #[test]
    fn project_point_cases() {
        let s = unit_square();
        let (p, d) = s.project_point(&[2.0, 0.5, 0.0]);
        assert!(dist(&p, &[1.0, 0.5, 0.0]) < 1e-12);
        assert!((d - 1.0).abs() < 1e-12);
        let (_, d0) = s.project_point(&[0.3, 0.7, 0.0]);
        assert_eq!(d0, 0.0);
        let (p2, d2) = s.project_point(&[2.0, 2.0, 0.0]);
        assert!(dist(&p2, &[1.0, 1.0, 0.0]) < 1e-12);
        assert!((d2 - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn projection_variational_inequality() {
        let c = unit_cube();
        let x = [1.7, -0.3, 2.2];
        let (p, _) = c.project_point(&x);
        for y in c.vertices() {
            assert!(dot(&sub(&x, &p), &sub(y, &p)) <= 1e-10);
        }
    }

    #[test]
    fn translation_window_examples() {
        let s = unit_square();
        let w = translation_window(&s, &s);
        assert!((w.volume() - 4.0).abs() < 1e-12);
        let c = unit_cube();
        let w3 = translation_window(&c, &c);
        assert!((w3.volume() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn json_and_off_import() {
        let p = Polytope::from_json(r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#)
            .unwrap();
        assert_eq!(p.face_counts(), vec![4, 4, 1]);
        let off = "OFF\n4 0 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n";
        let q = Polytope::from_off(off).unwrap();
        assert_eq!(q.face_counts(), vec![4, 4, 1]);
    }
}
