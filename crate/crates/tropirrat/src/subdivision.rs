//! Regular integral polyhedral subdivisions: lower convex envelopes of lifted
//! lattice-point configurations, hyperplane slicings, and the squared-distance
//! lifting, together with interior-face extraction and the Euler identity
//! check used to validate every constructed subdivision.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{
    deserialize_rat, serialize_rat, solve_rational, Int, IntMatrix, IntVec, Rat, RatVec,
};
use crate::polytope::hull;
use crate::polytope::{LatticePolytope, PolytopeJson};
use crate::util::BitSet;
use crate::{Error, Result};

/// Exact rational heights on the lattice points of a polytope.
#[derive(Clone, Debug)]
pub struct Lifting {
    polytope: LatticePolytope,
    heights: BTreeMap<IntVec, Rat>,
}

impl Lifting {
    /// The heights must be defined on exactly the lattice points of the
    /// polytope.
    pub fn new(polytope: LatticePolytope, heights: BTreeMap<IntVec, Rat>) -> Result<Self> {
        let pts = polytope.lattice_points();
        if heights.len() != pts.len() {
            return Err(Error::BadLifting(format!(
                "lifting has {} heights but the polytope has {} lattice points",
                heights.len(),
                pts.len()
            )));
        }
        for p in pts {
            if !heights.contains_key(p) {
                return Err(Error::BadLifting(format!("missing height for lattice point {p}")));
            }
        }
        Ok(Lifting { polytope, heights })
    }

    pub fn constant(polytope: LatticePolytope, value: Rat) -> Self {
        let heights = polytope
            .lattice_points()
            .iter()
            .map(|p| (p.clone(), value.clone()))
            .collect();
        Lifting { polytope, heights }
    }

    /// Build from a height function evaluated at every lattice point.
    pub fn from_fn(polytope: LatticePolytope, f: impl Fn(&IntVec) -> Rat) -> Self {
        let heights = polytope
            .lattice_points()
            .iter()
            .map(|p| (p.clone(), f(p)))
            .collect();
        Lifting { polytope, heights }
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn height(&self, point: &IntVec) -> &Rat {
        &self.heights[point]
    }

    pub fn heights(&self) -> &BTreeMap<IntVec, Rat> {
        &self.heights
    }
}

/// Where a subdivision came from; carries the convex witness for regularity.
#[derive(Clone, Debug)]
pub enum Provenance {
    /// The trivial subdivision (a single cell).
    Trivial,
    /// Lower convex envelope of a lifting.
    LowerEnvelope(Lifting),
    /// Hyperplane slicing, with the equivalent convex piecewise-linear
    /// witness lifting.
    Slicing {
        functional: IntVec,
        levels: Vec<Int>,
        witness: Lifting,
    },
}

/// One face of a subdivision, identified by its vertex set.
#[derive(Clone, Debug)]
pub struct SubFace {
    pub dim: usize,
    /// Mask over the subdivision's vertex list.
    pub vertices: BitSet,
    /// True iff the face is contained in some facet of the parent.
    pub boundary: bool,
}

/// A polyhedral subdivision of a lattice polytope with its full face poset.
#[derive(Clone, Debug)]
pub struct Subdivision {
    parent: LatticePolytope,
    /// All vertices of the subdivision, lexicographically sorted (ambient).
    verts: Vec<IntVec>,
    /// Maximal cells, sorted by vertex list.
    cells: Vec<LatticePolytope>,
    /// All faces of all cells, deduplicated by vertex set and sorted by
    /// (dim, vertex mask).
    faces: Vec<SubFace>,
    provenance: Provenance,
}

impl Subdivision {
    pub fn parent(&self) -> &LatticePolytope {
        &self.parent
    }

    pub fn cells(&self) -> &[LatticePolytope] {
        &self.cells
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.verts
    }

    pub fn faces(&self) -> &[SubFace] {
        &self.faces
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The face as a standalone polytope.
    pub fn face_polytope(&self, face: usize) -> LatticePolytope {
        let pts: Vec<IntVec> = self.faces[face]
            .vertices
            .iter_ones()
            .map(|i| self.verts[i].clone())
            .collect();
        LatticePolytope::from_points(pts).expect("face vertices are valid")
    }

    /// Indices of the faces not contained in the boundary of the parent.
    pub fn interior_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| !self.faces[i].boundary).collect()
    }

    /// Face counts per dimension `0 ..= dim(parent)`, over the whole poset.
    pub fn face_count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.parent.dim() + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        counts
    }

    /// The alternating sum over interior faces containing the given face:
    /// `sum_{interior e >= face} (-1)^(dim(parent) - dim(e))`. Equals 1 for
    /// every face of a polyhedral subdivision of a polytope.
    pub fn euler_interior_identity(&self, face: usize) -> i64 {
        let mask = &self.faces[face].vertices;
        let pd = self.parent.dim();
        let mut sum = 0i64;
        for f in &self.faces {
            if !f.boundary && mask.is_subset_of(&f.vertices) {
                sum += if (pd - f.dim) % 2 == 0 { 1 } else { -1 };
            }
        }
        sum
    }

    /// Index of the face with the given vertex set, if present.
    pub fn find_face(&self, polytope: &LatticePolytope) -> Option<usize> {
        let mask = self.mask_of(polytope.vertices())?;
        self.faces.iter().position(|f| f.vertices == mask)
    }

    fn mask_of(&self, vertices: &[IntVec]) -> Option<BitSet> {
        let mut mask = BitSet::new(self.verts.len());
        for v in vertices {
            match self.verts.binary_search(v) {
                Ok(i) => mask.insert(i),
                Err(_) => return None,
            }
        }
        Some(mask)
    }

    /// Apply an affine map `x -> A x + b` (a lattice isomorphism on the
    /// relevant affine lattices) to the whole subdivision.
    pub fn affine_image(&self, a: &IntMatrix, b: &IntVec) -> Subdivision {
        let parent = self.parent.affine_image(a, b);
        let cells: Vec<LatticePolytope> =
            self.cells.iter().map(|c| c.affine_image(a, b)).collect();
        build_from_cells(parent, cells, Provenance::Trivial)
            .expect("affine image of a subdivision is a subdivision")
    }

    /// Transport the subdivision onto `target` through a pointwise lattice
    /// isomorphism (for example a chart-level unimodular map composed with
    /// the chart embeddings). The witness lifting travels along.
    pub fn transport(
        &self,
        target: &LatticePolytope,
        map: impl Fn(&IntVec) -> IntVec,
    ) -> Result<Subdivision> {
        let cells: Vec<LatticePolytope> = self
            .cells
            .iter()
            .map(|c| LatticePolytope::from_points(c.vertices().iter().map(&map).collect()))
            .collect::<Result<_>>()?;
        let provenance = match &self.provenance {
            Provenance::LowerEnvelope(l) | Provenance::Slicing { witness: l, .. } => {
                let mut heights = BTreeMap::new();
                for (p, h) in l.heights() {
                    heights.insert(map(p), h.clone());
                }
                Provenance::LowerEnvelope(Lifting::new(target.clone(), heights)?)
            }
            Provenance::Trivial => Provenance::Trivial,
        };
        build_from_cells(target.clone(), cells, provenance)
    }
}

/// Assemble the face poset from a parent polytope and its maximal cells.
fn build_from_cells(
    parent: LatticePolytope,
    mut cells: Vec<LatticePolytope>,
    provenance: Provenance,
) -> Result<Subdivision> {
    cells.sort();
    let mut verts: Vec<IntVec> = cells
        .iter()
        .flat_map(|c| c.vertices().iter().cloned())
        .collect();
    verts.sort();
    verts.dedup();
    let n = verts.len();
    let index_of = |v: &IntVec| verts.binary_search(v).expect("cell vertex registered");

    let mut face_masks: BTreeMap<BitSet, usize> = BTreeMap::new();
    for cell in &cells {
        let lattice = cell.face_lattice();
        for f in &lattice.faces {
            let mut mask = BitSet::new(n);
            for vi in f.vertex_mask.iter_ones() {
                mask.insert(index_of(&cell.vertices()[vi]));
            }
            face_masks.entry(mask).or_insert(f.dim);
        }
    }

    // Boundary flags: a face lies in the boundary iff all its vertices
    // saturate a common facet of the parent.
    let parent_facet_masks: Vec<BitSet> = if parent.dim() == 0 {
        Vec::new()
    } else {
        (0..parent.facet_count())
            .map(|fi| {
                let mut mask = BitSet::new(n);
                for (i, v) in verts.iter().enumerate() {
                    if parent.facet_value(fi, v).map(|x| x.is_zero()).unwrap_or(false) {
                        mask.insert(i);
                    }
                }
                mask
            })
            .collect()
    };

    let mut faces: Vec<SubFace> = face_masks
        .into_iter()
        .map(|(mask, dim)| {
            let boundary = parent_facet_masks.iter().any(|fm| mask.is_subset_of(fm));
            SubFace {
                dim,
                vertices: mask,
                boundary,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    Ok(Subdivision {
        parent,
        verts,
        cells,
        faces,
        provenance,
    })
}

fn trivial_subdivision(parent: LatticePolytope, provenance: Provenance) -> Subdivision {
    let cell = parent.clone();
    build_from_cells(parent, vec![cell], provenance).expect("trivial subdivision")
}

/// The Newton-subdivision construction: lift each lattice point by its
/// height, take the convex hull one dimension up, and project the facets
/// whose inward normal has positive last coordinate back down.
pub fn lower_envelope_subdivision(lifting: &Lifting) -> Subdivision {
    let parent = lifting.polytope().clone();
    let d = parent.dim();
    if d == 0 {
        return trivial_subdivision(parent, Provenance::LowerEnvelope(lifting.clone()));
    }
    let chart = parent.chart();
    let points = parent.lattice_points();
    let chart_points: Vec<IntVec> = points
        .iter()
        .map(|p| chart.to_chart(p).expect("lattice point in affine lattice"))
        .collect();

    // Clear denominators with one common scale; scaling the height axis by a
    // positive factor does not change the lower-facet structure.
    let mut scale = Int::one();
    for p in points {
        scale = scale.lcm(lifting.height(p).denom());
    }
    let lifted: Vec<IntVec> = chart_points
        .iter()
        .zip(points)
        .map(|(c, p)| {
            let h = lifting.height(p);
            let h_scaled = h.numer() * (&scale / h.denom());
            let mut coords = c.0.clone();
            coords.push(h_scaled);
            IntVec(coords)
        })
        .collect();

    // Heights affine over the polytope give the trivial subdivision.
    let base = &lifted[0];
    let diffs: Vec<IntVec> = lifted[1..].iter().map(|p| p.sub(base)).collect();
    if IntMatrix::from_rows(diffs).rank() <= d {
        return trivial_subdivision(parent, Provenance::LowerEnvelope(lifting.clone()));
    }

    let hull = hull::convex_hull(&lifted, d + 1);
    let mut cells = Vec::new();
    for facet in &hull.facets {
        if !facet.normal[d].is_positive() {
            continue;
        }
        let cell_points: Vec<IntVec> = facet
            .tight
            .iter_ones()
            .map(|i| points[i].clone())
            .collect();
        cells.push(LatticePolytope::from_points(cell_points).expect("cell points are valid"));
    }
    build_from_cells(parent, cells, Provenance::LowerEnvelope(lifting.clone()))
        .expect("lower envelope produces a subdivision")
}

/// Slice a polytope by the level sets of an integral functional.
///
/// Cells are `P ∩ {a <= functional . x <= b}` for consecutive relevant
/// levels. Every cell vertex must be a lattice point, otherwise the slicing
/// is not integral and the error pinpoints the offending vertex.
pub fn slice_subdivision(
    p: &LatticePolytope,
    functional: &IntVec,
    levels: &[Int],
) -> Result<Subdivision> {
    if functional.is_zero() {
        return Err(Error::BadParameter("slice functional must be nonzero".into()));
    }
    if functional.len() != p.ambient_dim() {
        return Err(Error::DimMismatch(functional.len(), p.ambient_dim()));
    }
    if levels.is_empty() {
        return Err(Error::BadParameter("levels must be non-empty".into()));
    }
    for w in levels.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::BadParameter("levels must be strictly increasing".into()));
        }
    }
    let evals: Vec<Int> = p.vertices().iter().map(|v| functional.dot(v)).collect();
    let emin = evals.iter().min().unwrap().clone();
    let emax = evals.iter().max().unwrap().clone();
    let used: Vec<Int> = levels
        .iter()
        .filter(|a| **a > emin && **a < emax)
        .cloned()
        .collect();

    let witness = Lifting::from_fn(p.clone(), |m| {
        let v = functional.dot(m);
        let mut h = Rat::zero();
        for a in &used {
            let excess = &v - a;
            if excess.is_positive() {
                h += Rat::from_integer(excess);
            }
        }
        h
    });
    let provenance = Provenance::Slicing {
        functional: functional.clone(),
        levels: used.clone(),
        witness,
    };
    if used.is_empty() {
        return Ok(trivial_subdivision(p.clone(), provenance));
    }

    let mut breaks = vec![emin.clone()];
    breaks.extend(used.iter().cloned());
    breaks.push(emax.clone());

    // Candidate points at each break level: polytope vertices on the level
    // plus edge/hyperplane intersections, which must be integral.
    let edges: Vec<(usize, usize)> = p
        .face_lattice()
        .faces
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| {
            let vs: Vec<usize> = f.vertex_mask.iter_ones().collect();
            (vs[0], vs[vs.len() - 1])
        })
        .collect();
    let mut at_level: BTreeMap<Int, Vec<IntVec>> = BTreeMap::new();
    for a in &used {
        let mut pts = Vec::new();
        for (i, v) in p.vertices().iter().enumerate() {
            if &evals[i] == a {
                pts.push(v.clone());
            }
        }
        for &(i, j) in &edges {
            let (ei, ej) = (&evals[i], &evals[j]);
            let (lo, hi, vl, vh) = if ei <= ej { (ei, ej, i, j) } else { (ej, ei, j, i) };
            if lo < a && a < hi {
                let t = Rat::new(a - lo, hi - lo);
                let u = &p.vertices()[vl];
                let w = &p.vertices()[vh];
                let z = RatVec(
                    u.iter()
                        .zip(w.iter())
                        .map(|(ux, wx)| Rat::from_integer(ux.clone()) + &t * Rat::from_integer(wx - ux))
                        .collect(),
                );
                match z.to_int() {
                    Some(zi) => pts.push(zi),
                    None => {
                        let coords: Vec<String> = z.0.iter().map(|c| c.to_string()).collect();
                        return Err(Error::NotIntegral(format!("({})", coords.join(", "))));
                    }
                }
            }
        }
        at_level.insert(a.clone(), pts);
    }

    let mut cells = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mut pts: Vec<IntVec> = p
            .vertices()
            .iter()
            .enumerate()
            .filter(|(i, _)| &evals[*i] >= a && &evals[*i] <= b)
            .map(|(_, v)| v.clone())
            .collect();
        if let Some(extra) = at_level.get(a) {
            pts.extend(extra.iter().cloned());
        }
        if let Some(extra) = at_level.get(b) {
            pts.extend(extra.iter().cloned());
        }
        cells.push(LatticePolytope::from_points(pts).expect("slab points are valid"));
    }
    build_from_cells(p.clone(), cells, provenance)
}

/// Exact squared Euclidean distance from a lattice point to a polytope.
///
/// Every face of the target is tried: project orthogonally onto the face's
/// affine hull, keep the projection when it lands inside the polytope, and
/// take the minimum over all faces (vertices always give a candidate).
pub fn nearest_point_sq_dist(t: &LatticePolytope, x: &IntVec) -> Result<Rat> {
    if t.ambient_dim() != x.len() {
        return Err(Error::DimMismatch(t.ambient_dim(), x.len()));
    }
    let xr = x.to_rat();
    let mut best: Option<Rat> = None;
    let lattice = t.face_lattice();
    for face in &lattice.faces {
        let vs: Vec<&IntVec> = face.vertex_mask.iter_ones().map(|i| &t.vertices()[i]).collect();
        let z = project_affine(&vs, &xr);
        if !t.contains_rat_point(&z) {
            continue;
        }
        let d2 = xr.sub(&z).norm_sq();
        best = Some(match best {
            None => d2,
            Some(b) => b.min(d2),
        });
    }
    Ok(best.expect("vertex projections always give a candidate"))
}

/// Orthogonal projection of `x` onto the affine hull of the given points.
fn project_affine(points: &[&IntVec], x: &RatVec) -> RatVec {
    let base = points[0];
    // Greedy linearly independent difference set.
    let mut dirs: Vec<IntVec> = Vec::new();
    let mut rank = 0;
    for p in &points[1..] {
        let mut trial = dirs.clone();
        trial.push(p.sub(base));
        let r = IntMatrix::from_rows(trial.clone()).rank();
        if r > rank {
            dirs = trial;
            rank = r;
        }
    }
    if dirs.is_empty() {
        return base.to_rat();
    }
    let k = dirs.len();
    // Normal equations (D D^T) lambda = D (x - base), exact over Q.
    let mut gram = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dirs[i].dot(&dirs[j]);
        }
    }
    let rhs_vec = x.sub(&base.to_rat());
    let rhs = RatVec(
        (0..k)
            .map(|i| {
                dirs[i]
                    .iter()
                    .zip(&rhs_vec.0)
                    .map(|(d, r)| Rat::from_integer(d.clone()) * r)
                    .sum()
            })
            .collect(),
    );
    let (lambda, kernel) = solve_rational(&gram, &rhs).expect("gram matrix is positive definite");
    debug_assert!(kernel.is_empty());
    let mut z = base.to_rat();
    for (l, dir) in lambda.0.iter().zip(&dirs) {
        z = z.add(&dir.to_rat().scale(l));
    }
    z
}

/// The squared-distance lifting: each lattice point of `p` is lifted by its
/// exact squared distance to the polytope `t`.
pub fn distance_lifting(p: &LatticePolytope, t: &LatticePolytope) -> Result<Lifting> {
    if p.ambient_dim() != t.ambient_dim() {
        return Err(Error::DimMismatch(p.ambient_dim(), t.ambient_dim()));
    }
    let mut heights = BTreeMap::new();
    for m in p.lattice_points() {
        heights.insert(m.clone(), nearest_point_sq_dist(t, m)?);
    }
    Lifting::new(p.clone(), heights)
}

/// The discrete variant: each lattice point of `p` is lifted by its squared
/// distance to the nearest lattice point of `t`.
///
/// This is the lifting behind the published 26-cell subdivision of the
/// bidegree-(2,3) box: minimizing over the twelve lattice points of the
/// target instead of the whole polytope leaves the target as a single cell
/// and produces far coarser cells in the bulk. Both liftings vanish exactly
/// on the lattice points of `p ∩ t`.
pub fn lattice_distance_lifting(p: &LatticePolytope, t: &LatticePolytope) -> Result<Lifting> {
    if p.ambient_dim() != t.ambient_dim() {
        return Err(Error::DimMismatch(p.ambient_dim(), t.ambient_dim()));
    }
    let sites = t.lattice_points();
    let mut heights = BTreeMap::new();
    for m in p.lattice_points() {
        let h = sites
            .iter()
            .map(|z| {
                let d = m.sub(z);
                Rat::from_integer(d.dot(&d))
            })
            .min()
            .expect("target has a lattice point");
        heights.insert(m.clone(), h);
    }
    Lifting::new(p.clone(), heights)
}

// ---------------------------------------------------------------------------
// JSON schemas
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct HeightJson {
    pub point: IntVec,
    #[serde(serialize_with = "serialize_rat", deserialize_with = "deserialize_rat")]
    pub value: Rat,
}

/// Wire format: `{"polytope": .., "heights": [{"point": .., "value": "p/q"}]}`
/// with every lattice point of the polytope appearing exactly once.
#[derive(Serialize, Deserialize)]
pub struct LiftingJson {
    pub polytope: PolytopeJson,
    pub heights: Vec<HeightJson>,
}

impl Lifting {
    pub fn to_json(&self) -> LiftingJson {
        LiftingJson {
            polytope: self.polytope.to_json(),
            heights: self
                .heights
                .iter()
                .map(|(p, v)| HeightJson {
                    point: p.clone(),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: LiftingJson) -> Result<Self> {
        if json.heights.is_empty() {
            return Err(Error::schema("heights", "must be non-empty"));
        }
        let polytope = LatticePolytope::from_json(json.polytope)?;
        let mut heights = BTreeMap::new();
        for h in json.heights {
            if heights.insert(h.point.clone(), h.value).is_some() {
                return Err(Error::schema(
                    "heights",
                    format!("lattice point {} appears twice", h.point),
                ));
            }
        }
        Lifting::new(polytope, heights)
    }
}

#[derive(Serialize, Deserialize)]
pub struct SubFaceJson {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub boundary: bool,
}

#[derive(Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub polytope: PolytopeJson,
    pub vertices: Vec<IntVec>,
    pub cells: Vec<Vec<IntVec>>,
    pub faces: Vec<SubFaceJson>,
}

impl Subdivision {
    pub fn to_json(&self) -> SubdivisionJson {
        SubdivisionJson {
            polytope: self.parent.to_json(),
            vertices: self.verts.clone(),
            cells: self.cells.iter().map(|c| c.vertices().to_vec()).collect(),
            faces: self
                .faces
                .iter()
                .map(|f| SubFaceJson {
                    dim: f.dim,
                    vertices: f.vertices.iter_ones().collect(),
                    boundary: f.boundary,
                })
                .collect(),
        }
    }
}
