//! Lattice polytopes from vertex data: exact hulls, facets, face lattices,
//! lattice point enumeration, and the named constructors used throughout the
//! paper-scale computations.

pub(crate) mod hull;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{
    affine_lattice_basis, solve_integer, solve_rational, Int, IntMatrix, IntVec, Rat, RatVec,
};
use crate::util::BitSet;
use crate::{Error, Result};

/// Affine chart of a polytope: `origin` plus the rows of `basis` generate the
/// saturated affine lattice `M_P` of the polytope, in which facet normals and
/// lattice widths live.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub origin: IntVec,
    pub basis: Vec<IntVec>,
    ambient_dim: usize,
}

impl AffineChart {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Chart coordinates of an ambient lattice point, if it lies in the
    /// affine lattice `origin + M_P`.
    pub fn to_chart(&self, ambient: &IntVec) -> Option<IntVec> {
        if self.basis.is_empty() {
            return (ambient == &self.origin).then(IntVec::default);
        }
        let rhs = ambient.sub(&self.origin);
        let bt = IntMatrix::from_rows(self.basis.clone()).transpose();
        solve_integer(&bt, &rhs)
    }

    /// Chart coordinates of a rational point in the affine span.
    pub fn to_chart_rat(&self, ambient: &RatVec) -> Option<RatVec> {
        if self.basis.is_empty() {
            let origin = self.origin.to_rat();
            return (ambient == &origin).then(RatVec::default);
        }
        let rhs = ambient.sub(&self.origin.to_rat());
        let bt = IntMatrix::from_rows(self.basis.clone()).transpose();
        let (particular, kernel) = solve_rational(&bt, &rhs)?;
        if !kernel.is_empty() {
            return None; // basis rows are independent, so this cannot happen
        }
        // Verify exactness (solve_rational already guarantees consistency).
        Some(particular)
    }

    pub fn to_ambient(&self, chart: &IntVec) -> IntVec {
        let mut out = self.origin.clone();
        for (c, b) in chart.iter().zip(&self.basis) {
            out = out.add(&b.scale(c));
        }
        out
    }

    pub fn to_ambient_rat(&self, chart: &RatVec) -> RatVec {
        let mut out = self.origin.to_rat();
        for (c, b) in chart.0.iter().zip(&self.basis) {
            out = out.add(&b.to_rat().scale(c));
        }
        out
    }
}

/// A facet inequality `normal . x >= offset` in chart coordinates, with the
/// primitive inward normal and the mask of vertices saturating it.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Int,
    pub vertex_mask: BitSet,
}

#[derive(Debug)]
struct Geometry {
    chart: AffineChart,
    chart_vertices: Vec<IntVec>,
    facets: Vec<Facet>,
}

/// A lattice polytope, stored by its (deduplicated, hull-minimal) vertex set
/// in ambient coordinates. Facet data and the affine chart are computed once
/// on first use and shared afterwards; the value is immutable.
#[derive(Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<IntVec>,
    geometry: OnceLock<Geometry>,
    lattice_points: OnceLock<Vec<IntVec>>,
    face_poset: OnceLock<FacePoset>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            geometry: OnceLock::new(),
            lattice_points: OnceLock::new(),
            face_poset: OnceLock::new(),
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}
impl Eq for LatticePolytope {}

impl PartialOrd for LatticePolytope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LatticePolytope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient_dim, &self.vertices).cmp(&(other.ambient_dim, &other.vertices))
    }
}

/// A face of a polytope: the face as a polytope of its own, together with the
/// indices of the parent facets it saturates.
#[derive(Clone, Debug)]
pub struct Face {
    pub polytope: LatticePolytope,
    pub defining_facets: Vec<usize>,
}

/// All faces of a polytope (excluding the empty face, including the polytope
/// itself), graded by dimension. Vertex masks refer to the parent's vertex
/// ordering.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub faces: Vec<PosetFace>,
}

#[derive(Clone, Debug)]
pub struct PosetFace {
    pub dim: usize,
    pub vertex_mask: BitSet,
    /// Indices of parent facets containing this face.
    pub facet_set: Vec<usize>,
}

impl FacePoset {
    pub fn f_vector(&self) -> Vec<usize> {
        let maxdim = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut f = vec![0; maxdim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Containment: faces of a polytope are ordered by vertex-set inclusion.
    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        self.faces[inner].vertex_mask.is_subset_of(&self.faces[outer].vertex_mask)
    }
}

impl LatticePolytope {
    /// Convex hull of the given points. Dimension, vertex set and facet data
    /// are all derived exactly; vertices come out lexicographically sorted.
    pub fn from_points(points: Vec<IntVec>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::BadParameter("empty point set".into()));
        };
        let ambient_dim = first.len();
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::RaggedInput(ambient_dim, p.len()));
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();

        let (origin, basis) = affine_lattice_basis(&points);
        let chart = AffineChart {
            origin,
            basis,
            ambient_dim,
        };
        if chart.dim() == 0 {
            return Ok(LatticePolytope {
                ambient_dim,
                vertices: points,
                geometry: OnceLock::new(),
                lattice_points: OnceLock::new(),
                face_poset: OnceLock::new(),
            });
        }
        let chart_points: Vec<IntVec> = points
            .iter()
            .map(|p| chart.to_chart(p).expect("input point lies in its own affine lattice"))
            .collect();
        let hull = hull::convex_hull(&chart_points, chart.dim());
        let vertices: Vec<IntVec> = hull.vertex_indices.iter().map(|&i| points[i].clone()).collect();
        // Input was sorted, so the vertex subset is sorted as well.
        Ok(LatticePolytope {
            ambient_dim,
            vertices,
            geometry: OnceLock::new(),
            lattice_points: OnceLock::new(),
            face_poset: OnceLock::new(),
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::from_points(points.iter().map(|p| IntVec::from_i64(p)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn geometry(&self) -> &Geometry {
        self.geometry.get_or_init(|| {
            let (origin, basis) = affine_lattice_basis(&self.vertices);
            let chart = AffineChart {
                origin,
                basis,
                ambient_dim: self.ambient_dim,
            };
            let chart_vertices: Vec<IntVec> = self
                .vertices
                .iter()
                .map(|p| chart.to_chart(p).expect("vertex lies in affine lattice"))
                .collect();
            let facets = if chart.dim() == 0 {
                Vec::new()
            } else {
                let hull = hull::convex_hull(&chart_vertices, chart.dim());
                debug_assert_eq!(hull.vertex_indices.len(), chart_vertices.len());
                hull.facets
                    .into_iter()
                    .map(|f| Facet {
                        normal: f.normal,
                        offset: f.offset,
                        vertex_mask: f.tight,
                    })
                    .collect()
            };
            Geometry {
                chart,
                chart_vertices,
                facets,
            }
        })
    }

    pub fn chart(&self) -> &AffineChart {
        &self.geometry().chart
    }

    pub fn chart_vertices(&self) -> &[IntVec] {
        &self.geometry().chart_vertices
    }

    /// Dimension of the polytope (rank of its affine lattice).
    pub fn dim(&self) -> usize {
        self.geometry().chart.dim()
    }

    /// Irredundant facet list in affine-lattice coordinates, primitive inward
    /// normals. Errors on 0-dimensional polytopes.
    pub fn facets(&self) -> Result<&[Facet]> {
        if self.dim() == 0 {
            return Err(Error::NoFacets);
        }
        Ok(&self.geometry().facets)
    }

    /// Exact integer points of the polytope, lexicographically sorted.
    pub fn lattice_points(&self) -> &[IntVec] {
        self.lattice_points.get_or_init(|| {
            let dim = self.dim();
            if dim == 0 {
                return self.vertices.clone();
            }
            let geo = self.geometry();
            let d = dim;
            let mut lo = vec![Int::zero(); d];
            let mut hi = vec![Int::zero(); d];
            for j in 0..d {
                let column: Vec<&Int> = geo.chart_vertices.iter().map(|v| &v[j]).collect();
                lo[j] = (*column.iter().min().unwrap()).clone();
                hi[j] = (*column.iter().max().unwrap()).clone();
            }
            let mut out = Vec::new();
            let mut current = IntVec::zeros(d);
            enumerate_rec(geo, &lo, &hi, 0, &mut current, &mut out);
            let mut ambient: Vec<IntVec> = out.iter().map(|c| geo.chart.to_ambient(c)).collect();
            ambient.sort();
            ambient
        })
    }

    /// True iff every vertex of `other` satisfies every facet inequality.
    pub fn contains_polytope(&self, other: &LatticePolytope) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(other.vertices.iter().all(|v| self.contains_point(v)))
    }

    pub fn contains_point(&self, ambient: &IntVec) -> bool {
        if self.dim() == 0 {
            return ambient == &self.vertices[0];
        }
        let geo = self.geometry();
        let Some(c) = geo.chart.to_chart(ambient) else {
            // Not in the affine lattice. It could still be in the affine span
            // only for non-lattice points, which integer inputs are not.
            return !self.affine_span_contains(ambient);
        };
        geo.facets.iter().all(|f| f.normal.dot(&c) >= f.offset)
    }

    fn affine_span_contains(&self, ambient: &IntVec) -> bool {
        let geo = self.geometry();
        if geo.chart.basis.is_empty() {
            return ambient == &geo.chart.origin;
        }
        let bt = IntMatrix::from_rows(geo.chart.basis.clone()).transpose();
        solve_rational(&bt, &ambient.sub(&geo.chart.origin).to_rat()).is_some()
    }

    pub fn contains_rat_point(&self, ambient: &RatVec) -> bool {
        if self.dim() == 0 {
            return ambient == &self.vertices[0].to_rat();
        }
        let geo = self.geometry();
        let Some(c) = geo.chart.to_chart_rat(ambient) else {
            return false;
        };
        geo.facets.iter().all(|f| {
            let val: Rat = f.normal.iter().zip(&c.0).map(|(n, x)| Rat::from_integer(n.clone()) * x).sum();
            val >= Rat::from_integer(f.offset.clone())
        })
    }

    /// True iff `face` is a face of `self` (including `self` itself).
    pub fn is_face_of(&self, face: &LatticePolytope) -> Result<bool> {
        if !self.contains_polytope(face)? {
            return Err(Error::NotContained);
        }
        if self.dim() == 0 {
            return Ok(face.vertices == self.vertices);
        }
        let geo = self.geometry();
        // Every vertex of `face` must be a vertex of `self`, and the set of
        // vertices saturating the common facet set must be exactly them.
        let mut indices = Vec::new();
        for v in &face.vertices {
            match self.vertices.binary_search(v) {
                Ok(i) => indices.push(i),
                Err(_) => return Ok(false),
            }
        }
        let common: Vec<usize> = (0..geo.facets.len())
            .filter(|&fi| indices.iter().all(|&vi| geo.facets[fi].vertex_mask.contains(vi)))
            .collect();
        let closure: Vec<usize> = (0..self.vertices.len())
            .filter(|&vi| common.iter().all(|&fi| geo.facets[fi].vertex_mask.contains(vi)))
            .collect();
        Ok(closure == indices)
    }

    /// True iff `face` is contained in some facet of `self`.
    pub fn is_in_boundary(&self, face: &LatticePolytope) -> Result<bool> {
        if !self.contains_polytope(face)? {
            return Err(Error::NotContained);
        }
        if self.dim() == 0 {
            return Ok(false);
        }
        let geo = self.geometry();
        for f in &geo.facets {
            let all_on = face.vertices.iter().all(|v| {
                let c = geo.chart.to_chart(v);
                match c {
                    Some(c) => f.normal.dot(&c) == f.offset,
                    None => false,
                }
            });
            if all_on {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The full face lattice, excluding the empty face.
    pub fn face_lattice(&self) -> &FacePoset {
        self.face_poset.get_or_init(|| {
            let n = self.vertices.len();
            if self.dim() == 0 {
                return FacePoset {
                    faces: vec![PosetFace {
                        dim: 0,
                        vertex_mask: BitSet::from_indices(1, [0]),
                        facet_set: Vec::new(),
                    }],
                };
            }
            let geo = self.geometry();
            let facets = &geo.facets;
            let closure = |mask: &BitSet| -> (BitSet, Vec<usize>) {
                let mut fs = Vec::new();
                for (fi, f) in facets.iter().enumerate() {
                    if mask.is_subset_of(&f.vertex_mask) {
                        fs.push(fi);
                    }
                }
                let mut closed = BitSet::new(n);
                for i in 0..n {
                    closed.insert(i);
                }
                for &fi in &fs {
                    closed.intersect_with(&facets[fi].vertex_mask);
                }
                (closed, fs)
            };
            let full = BitSet::from_indices(n, 0..n);
            let mut seen: BTreeMap<BitSet, Vec<usize>> = BTreeMap::new();
            let mut queue = vec![full.clone()];
            seen.insert(full, Vec::new());
            while let Some(mask) = queue.pop() {
                for f in facets {
                    let sub = mask.intersection(&f.vertex_mask);
                    if sub.is_empty() || sub == mask {
                        continue;
                    }
                    let (closed, fs) = closure(&sub);
                    if !seen.contains_key(&closed) {
                        queue.push(closed.clone());
                        seen.insert(closed, fs);
                    }
                }
            }
            let mut faces: Vec<PosetFace> = seen
                .into_iter()
                .map(|(mask, facet_set)| {
                    let pts: Vec<&IntVec> =
                        mask.iter_ones().map(|i| &geo.chart_vertices[i]).collect();
                    PosetFace {
                        dim: affine_rank_refs(&pts),
                        vertex_mask: mask,
                        facet_set,
                    }
                })
                .collect();
            faces.sort_by(|a, b| (a.dim, &a.vertex_mask).cmp(&(b.dim, &b.vertex_mask)));
            FacePoset { faces }
        })
    }

    /// Materialize a poset face as a standalone polytope plus its defining
    /// facet indices.
    pub fn face(&self, poset_face: &PosetFace) -> Face {
        let verts: Vec<IntVec> = poset_face
            .vertex_mask
            .iter_ones()
            .map(|i| self.vertices[i].clone())
            .collect();
        Face {
            polytope: LatticePolytope::from_points(verts).expect("face vertices are valid"),
            defining_facets: poset_face.facet_set.clone(),
        }
    }

    /// Lattice length of a segment: gcd of the coordinate differences.
    pub fn lattice_length(&self) -> Result<Int> {
        if self.dim() != 1 || self.vertices.len() != 2 {
            return Err(Error::NotASegment);
        }
        Ok(self.vertices[1].sub(&self.vertices[0]).content())
    }

    /// Normalized volume with respect to the affine lattice of the polytope
    /// (a unimodular simplex has normalized volume 1).
    pub fn normalized_volume(&self) -> Int {
        let dim = self.dim();
        if dim == 0 {
            return Int::one();
        }
        if dim == 1 {
            return self.lattice_length().expect("dim-1 polytope is a segment");
        }
        let geo = self.geometry();
        let apex = &geo.chart_vertices[0];
        let mut total = Int::zero();
        for f in &geo.facets {
            let dist = f.normal.dot(apex) - &f.offset;
            if dist.is_zero() {
                continue;
            }
            let facet_polytope = LatticePolytope::from_points(
                f.vertex_mask.iter_ones().map(|i| self.vertices[i].clone()).collect(),
            )
            .expect("facet vertices are valid");
            total += dist * facet_polytope.normalized_volume();
        }
        total
    }

    /// Product polytope `self x other`.
    pub fn product(&self, other: &LatticePolytope) -> LatticePolytope {
        let mut points = Vec::with_capacity(self.vertex_count() * other.vertex_count());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut coords = a.0.clone();
                coords.extend(b.0.iter().cloned());
                points.push(IntVec(coords));
            }
        }
        LatticePolytope::from_points(points).expect("product of valid polytopes")
    }

    /// Apply an affine map `x -> A x + b` in ambient coordinates.
    pub fn affine_image(&self, a: &IntMatrix, b: &IntVec) -> LatticePolytope {
        LatticePolytope::from_points(
            self.vertices.iter().map(|v| a.mul_vec(v).add(b)).collect(),
        )
        .expect("affine image of valid polytope")
    }
}

fn affine_rank_refs(points: &[&IntVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<IntVec> = points[1..].iter().map(|p| p.sub(base)).collect();
    IntMatrix::from_rows(diffs).rank()
}

fn enumerate_rec(
    geo: &Geometry,
    lo: &[Int],
    hi: &[Int],
    depth: usize,
    current: &mut IntVec,
    out: &mut Vec<IntVec>,
) {
    let d = lo.len();
    if depth == d {
        if geo.facets.iter().all(|f| f.normal.dot(current) >= f.offset) {
            out.push(current.clone());
        }
        return;
    }
    let mut x = lo[depth].clone();
    while x <= hi[depth] {
        current[depth] = x.clone();
        // Sound interval pruning: for each facet, the best achievable value
        // of normal . x over the remaining coordinate box must reach offset.
        let feasible = geo.facets.iter().all(|f| {
            let mut best: Int = f.normal.0[..=depth]
                .iter()
                .zip(&current.0[..=depth])
                .map(|(n, c)| n * c)
                .sum();
            for j in depth + 1..d {
                let n = &f.normal[j];
                if n.is_positive() {
                    best += n * &hi[j];
                } else {
                    best += n * &lo[j];
                }
            }
            best >= f.offset
        });
        if feasible {
            enumerate_rec(geo, lo, hi, depth + 1, current, out);
        }
        x += Int::one();
    }
}

// ---------------------------------------------------------------------------
// Named constructors
// ---------------------------------------------------------------------------

/// `d` times the unimodular `n`-simplex, corner form: `{x >= 0, sum x <= d}`.
pub fn dilated_simplex(n: usize, d: i64) -> Result<LatticePolytope> {
    if n == 0 || d <= 0 {
        return Err(Error::BadParameter(format!("dilated_simplex({n}, {d})")));
    }
    let mut points = vec![IntVec::zeros(n)];
    for i in 0..n {
        let mut e = IntVec::zeros(n);
        e[i] = Int::from(d);
        points.push(e);
    }
    LatticePolytope::from_points(points)
}

/// `conv{d e_0, ..., d e_k}` in `R^{k+1}`: the degree-`d` simplex in
/// homogeneous exponent coordinates (dimension `k`).
pub fn homogeneous_simplex(k: usize, d: i64) -> Result<LatticePolytope> {
    if d <= 0 {
        return Err(Error::BadParameter(format!("homogeneous_simplex({k}, {d})")));
    }
    let mut points = Vec::new();
    for i in 0..=k {
        let mut e = IntVec::zeros(k + 1);
        e[i] = Int::from(d);
        points.push(e);
    }
    LatticePolytope::from_points(points)
}

/// Newton polytope of the Hassett–Pirutka–Tschinkel quartic: the convex hull
/// of six points in `R^5`, of dimension 5.
pub fn hpt_polytope() -> LatticePolytope {
    LatticePolytope::from_i64(&[
        &[0, 0, 0, 0, 0],
        &[2, 0, 0, 0, 0],
        &[0, 2, 0, 0, 0],
        &[1, 1, 2, 0, 0],
        &[1, 0, 0, 2, 0],
        &[0, 1, 0, 0, 2],
    ])
    .expect("hpt polytope is valid")
}

/// Newton polytope of a quartic double `n`-fold:
/// `{u in R^{n+1} : u >= 0, u_1 + ... + u_n + 2 u_{n+1} <= 4}`.
pub fn quartic_double_polytope(n: usize) -> Result<LatticePolytope> {
    if n == 0 {
        return Err(Error::BadParameter("quartic_double_polytope(0)".into()));
    }
    let mut points = vec![IntVec::zeros(n + 1)];
    for i in 0..n {
        let mut e = IntVec::zeros(n + 1);
        e[i] = Int::from(4);
        points.push(e);
    }
    let mut e = IntVec::zeros(n + 1);
    e[n] = Int::from(2);
    points.push(e);
    LatticePolytope::from_points(points)
}

/// `a Δ_l x b Δ_m`: the Newton polytope of a bidegree `(a, b)` hypersurface
/// in `P^l x P^m`, corner form in `R^{l+m}`.
pub fn bidegree_box(l: usize, m: usize, a: i64, b: i64) -> Result<LatticePolytope> {
    if l == 0 || m == 0 || a <= 0 || b <= 0 {
        return Err(Error::BadParameter(format!("bidegree_box({l}, {m}, {a}, {b})")));
    }
    Ok(dilated_simplex(l, a)?.product(&dilated_simplex(m, b)?))
}

/// The simplex `conv{(6,14,17,65), e_1, e_2, e_3, e_4}` whose only lattice
/// points are its vertices.
pub fn hz_polytope() -> LatticePolytope {
    LatticePolytope::from_i64(&[
        &[6, 14, 17, 65],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ])
    .expect("hz polytope is valid")
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

/// Wire format: `{"ambient_dim": n, "vertices": [[..], ..]}` with coordinates
/// as unbounded decimal strings. Canonical serialization sorts vertices
/// lexicographically (which `from_points` already guarantees).
#[derive(Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    pub vertices: Vec<IntVec>,
}

impl LatticePolytope {
    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
        }
    }

    pub fn from_json(json: PolytopeJson) -> Result<Self> {
        if json.vertices.is_empty() {
            return Err(Error::schema("vertices", "must be non-empty"));
        }
        for v in &json.vertices {
            if v.len() != json.ambient_dim {
                return Err(Error::schema(
                    "vertices",
                    format!("point of length {} does not match ambient_dim {}", v.len(), json.ambient_dim),
                ));
            }
        }
        LatticePolytope::from_points(json.vertices)
    }
}

// Vertex-facet incidence helpers shared with the subdivision module.
impl LatticePolytope {
    /// Evaluate `point` (ambient) against facet `fi`; `None` if the point is
    /// outside the affine lattice of the polytope.
    pub fn facet_value(&self, fi: usize, ambient: &IntVec) -> Option<Int> {
        let geo = self.geometry();
        let c = geo.chart.to_chart(ambient)?;
        let f = &geo.facets[fi];
        Some(f.normal.dot(&c) - &f.offset)
    }

    pub fn facet_count(&self) -> usize {
        if self.dim() == 0 {
            0
        } else {
            self.geometry().facets.len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colinear_midpoint_removed() {
        let p = LatticePolytope::from_i64(&[&[0, 0], &[2, 0], &[1, 0]]).unwrap();
        assert_eq!(p.vertices(), &[IntVec::from_i64(&[0, 0]), IntVec::from_i64(&[2, 0])]);
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn hpt_six_vertices_dim_five() {
        let p = hpt_polytope();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.dim(), 5);
    }

    #[test]
    fn single_point() {
        let p = LatticePolytope::from_i64(&[&[7, 3]]).unwrap();
        assert_eq!(p.dim(), 0);
        assert!(matches!(p.facets(), Err(Error::NoFacets)));
        assert_eq!(p.lattice_points().len(), 1);
    }

    #[test]
    fn triangle_facets() {
        let p = dilated_simplex(2, 2).unwrap();
        assert_eq!(p.facets().unwrap().len(), 3);
    }

    #[test]
    fn cube_facets() {
        let p = LatticePolytope::from_i64(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ])
        .unwrap();
        assert_eq!(p.facets().unwrap().len(), 6);
        assert_eq!(p.face_lattice().f_vector(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn product_facet_and_vertex_counts() {
        let p = bidegree_box(1, 4, 2, 3).unwrap();
        assert_eq!(p.facets().unwrap().len(), 7);
        assert_eq!(p.face_lattice().f_vector()[0], 10);
        assert_eq!(p.lattice_points().len(), 105);
    }

    #[test]
    fn simplex_lattice_point_count() {
        let p = dilated_simplex(4, 3).unwrap();
        assert_eq!(p.lattice_points().len(), 35);
    }

    #[test]
    fn hz_lattice_points_are_vertices() {
        let p = hz_polytope();
        let pts = p.lattice_points();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts, p.vertices());
    }

    #[test]
    fn square_face_lattice() {
        let p = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(p.face_lattice().f_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn simplex_face_lattice() {
        let p = dilated_simplex(3, 1).unwrap();
        assert_eq!(p.face_lattice().f_vector(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn containment() {
        let small = dilated_simplex(2, 1).unwrap();
        let big = dilated_simplex(2, 2).unwrap();
        assert!(big.contains_polytope(&small).unwrap());
        assert!(!small.contains_polytope(&big).unwrap());
        assert!(big.contains_polytope(&big).unwrap());
        let hpt = hpt_polytope();
        let box23 = bidegree_box(1, 4, 2, 3).unwrap();
        assert!(box23.contains_polytope(&hpt).unwrap());
    }

    #[test]
    fn boundary_tests() {
        let big = dilated_simplex(2, 2).unwrap();
        let edge = LatticePolytope::from_i64(&[&[0, 0], &[2, 0]]).unwrap();
        assert!(big.is_in_boundary(&edge).unwrap());
        assert!(!big.is_in_boundary(&big).unwrap());
        assert!(big.is_face_of(&edge).unwrap());
        let inner = LatticePolytope::from_i64(&[&[0, 0], &[1, 1]]).unwrap();
        assert!(!big.is_in_boundary(&inner).unwrap());
        assert!(!big.is_face_of(&inner).unwrap());
        let outside = LatticePolytope::from_i64(&[&[5, 5]]).unwrap();
        assert!(matches!(big.is_in_boundary(&outside), Err(Error::NotContained)));
    }

    #[test]
    fn quartic_double_vertices() {
        let p = quartic_double_polytope(4).unwrap();
        assert_eq!(p.dim(), 5);
        assert_eq!(p.vertex_count(), 6);
        // Facets are exactly u_i >= 0 and u_1+..+u_4+2u_5 <= 4.
        assert_eq!(p.facets().unwrap().len(), 6);
    }

    #[test]
    fn lattice_length_cases() {
        let s = LatticePolytope::from_i64(&[&[0, 0], &[2, 2]]).unwrap();
        assert_eq!(s.lattice_length().unwrap(), Int::from(2));
        let s = LatticePolytope::from_i64(&[&[0, 0], &[1, 3]]).unwrap();
        assert_eq!(s.lattice_length().unwrap(), Int::from(1));
        let s = LatticePolytope::from_i64(&[&[1, 1, 1], &[1, 1, 5]]).unwrap();
        assert_eq!(s.lattice_length().unwrap(), Int::from(4));
        let t = dilated_simplex(2, 1).unwrap();
        assert!(matches!(t.lattice_length(), Err(Error::NotASegment)));
    }

    #[test]
    fn normalized_volumes() {
        assert_eq!(dilated_simplex(2, 2).unwrap().normalized_volume(), Int::from(4));
        assert_eq!(dilated_simplex(3, 2).unwrap().normalized_volume(), Int::from(8));
        assert_eq!(dilated_simplex(3, 1).unwrap().normalized_volume(), Int::from(1));
        let square = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(square.normalized_volume(), Int::from(2));
    }

    #[test]
    fn hull_idempotent() {
        let p = bidegree_box(2, 2, 2, 2).unwrap();
        let q = LatticePolytope::from_points(p.vertices().to_vec()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn euler_relation() {
        for p in [
            dilated_simplex(3, 2).unwrap(),
            bidegree_box(1, 2, 2, 2).unwrap(),
            hpt_polytope(),
        ] {
            let mut sum = 0i64;
            for f in &p.face_lattice().faces {
                sum += if f.dim % 2 == 0 { 1 } else { -1 };
            }
            assert_eq!(sum, 1, "euler relation fails for {:?}", p.vertices());
        }
    }

    #[test]
    fn json_round_trip() {
        let p = hpt_polytope();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LatticePolytope::from_json(back).unwrap(), p);
    }

    #[test]
    fn non_full_dimensional_chart() {
        // Homogeneous quartic triangle in R^3: dimension 2.
        let p = homogeneous_simplex(2, 4).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.facets().unwrap().len(), 3);
        assert_eq!(p.lattice_points().len(), 15);
    }
}
