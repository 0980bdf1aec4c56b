//! Rationality classification of faces: lattice-width certificates,
//! unimodular equivalence search, alcove triangulations of dilated simplices,
//! and the citation-backed registry of known stably (ir)rational polytopes.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{primitive_part, solve_rational, Int, IntMatrix, IntVec, Rat, RatVec};
use crate::polytope::{
    bidegree_box, dilated_simplex, hpt_polytope, quartic_double_polytope, LatticePolytope,
};
use crate::subdivision::{lower_envelope_subdivision, Lifting, Subdivision};
use crate::{Error, Result};

/// Outcome of the complete width-1 decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WidthOneOutcome {
    /// A primitive functional on the affine lattice taking exactly two
    /// consecutive values on the vertices.
    Witness(IntVec),
    /// Certified: no width-1 functional exists.
    Absent,
    /// Vertex count exceeded the decision threshold and the bounded search
    /// found nothing; absence is not certified.
    AbsentBounded,
}

/// Tuning knobs for the width and registry searches.
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Complete two-coloring decision up to this many vertices.
    pub width_vertex_threshold: usize,
    /// Sup-norm box for the bounded width search (TROPIRRAT_WIDTH_BOUND).
    pub width_search_bound: i64,
    /// Largest dilation factor probed when matching dilated-simplex shapes.
    pub simplex_family_max_degree: i64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        let width_search_bound = std::env::var("TROPIRRAT_WIDTH_BOUND")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(4);
        ClassifyOptions {
            width_vertex_threshold: 20,
            width_search_bound,
            simplex_family_max_degree: 16,
        }
    }
}

/// Decide whether the polytope has lattice width one in its affine lattice.
///
/// For each bipartition of the vertex set into a level-`a` part and a
/// level-`a+1` part, solve the integer linear system pinning the functional;
/// any solution is automatically primitive since it takes two consecutive
/// values somewhere. Complete for vertex counts up to the threshold.
pub fn width_le_one(p: &LatticePolytope, options: &ClassifyOptions) -> Result<WidthOneOutcome> {
    let d = p.dim();
    if d == 0 {
        return Err(Error::BadParameter("width of a point is undefined".into()));
    }
    let verts = p.chart_vertices();
    let k = verts.len();
    // Cheap pre-pass: a small box search often finds a witness immediately.
    let (value, witness) = width_upper_chart(verts, d, 2);
    if value == Int::one() {
        return Ok(WidthOneOutcome::Witness(witness));
    }
    if k > options.width_vertex_threshold {
        let (value, witness) = width_upper_chart(verts, d, options.width_search_bound);
        if value == Int::one() {
            return Ok(WidthOneOutcome::Witness(witness));
        }
        return Ok(WidthOneOutcome::AbsentBounded);
    }
    // Vertex 0 sits at level a; every nonempty subset of the rest at a+1.
    for mask in 1u64..(1u64 << (k - 1)) {
        let side_b: Vec<usize> = (1..k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let side_a: Vec<usize> =
            (0..k).filter(|i| *i == 0 || (*i >= 1 && mask >> (i - 1) & 1 == 0)).collect();
        let v0 = &verts[side_a[0]];
        let w0 = &verts[side_b[0]];
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &i in &side_a[1..] {
            rows.push(verts[i].sub(v0));
            rhs.push(Int::zero());
        }
        for &j in &side_b[1..] {
            rows.push(verts[j].sub(w0));
            rhs.push(Int::zero());
        }
        rows.push(w0.sub(v0));
        rhs.push(Int::one());
        let a = IntMatrix::from_rows(rows);
        if let Some(l) = crate::linalg::solve_integer(&a, &IntVec(rhs)) {
            debug_assert!(width_witness_ok(verts, &l));
            return Ok(WidthOneOutcome::Witness(l));
        }
    }
    Ok(WidthOneOutcome::Absent)
}

fn width_witness_ok(verts: &[IntVec], l: &IntVec) -> bool {
    let vals: Vec<Int> = verts.iter().map(|v| l.dot(v)).collect();
    let min = vals.iter().min().unwrap();
    let max = vals.iter().max().unwrap();
    max - min == Int::one()
}

/// Bounded-box width search: the minimum of (max - min) over primitive dual
/// vectors with sup-norm at most `bound`, an upper bound for the true width.
pub fn width_upper(p: &LatticePolytope, bound: i64) -> Result<(Int, IntVec)> {
    let d = p.dim();
    if d == 0 {
        return Err(Error::BadParameter("width of a point is undefined".into()));
    }
    Ok(width_upper_chart(p.chart_vertices(), d, bound))
}

fn width_upper_chart(verts: &[IntVec], d: usize, bound: i64) -> (Int, IntVec) {
    let mut best: Option<(Int, IntVec)> = None;
    let mut l = vec![-bound; d];
    loop {
        if !l.iter().all(|&x| x == 0) {
            // Skip antipodes: first nonzero entry positive.
            let lead_positive = matches!(l.iter().find(|&&x| x != 0), Some(&x) if x > 0);
            if lead_positive {
                let lv = IntVec::from_i64(&l);
                let vals: Vec<Int> = verts.iter().map(|v| lv.dot(v)).collect();
                let span = vals.iter().max().unwrap() - vals.iter().min().unwrap();
                if !span.is_zero() {
                    let better = match &best {
                        None => true,
                        Some((b, _)) => &span < b,
                    };
                    if better {
                        let witness = primitive_part(&lv).expect("nonzero");
                        best = Some((span, witness));
                    }
                }
            }
        }
        // Odometer over [-bound, bound]^d, last coordinate fastest.
        let mut i = d;
        loop {
            if i == 0 {
                return best.expect("nonzero functional exists in the box");
            }
            i -= 1;
            if l[i] < bound {
                l[i] += 1;
                break;
            }
            l[i] = -bound;
        }
    }
}

/// Search for a lattice isomorphism (in affine-lattice coordinates) mapping
/// the vertex set of `p` onto the vertex set of `q`.
///
/// Returns `(A, b)` with `x -> A x + b` on chart coordinates, `|det A| = 1`.
/// The backtracking search is pruned by dimension, vertex count, lattice
/// point count, the edge lattice-length multiset, and pairwise lattice
/// lengths along the candidate frame.
pub fn unimodular_equivalent(
    p: &LatticePolytope,
    q: &LatticePolytope,
) -> Option<(IntMatrix, IntVec)> {
    let d = p.dim();
    if d != q.dim() || p.vertex_count() != q.vertex_count() {
        return None;
    }
    if p.lattice_points().len() != q.lattice_points().len() {
        return None;
    }
    if d == 0 {
        return Some((IntMatrix::identity(0), IntVec::default()));
    }
    if edge_length_multiset(p) != edge_length_multiset(q) {
        return None;
    }
    let vp = p.chart_vertices();
    let vq = q.chart_vertices();
    let k = vp.len();

    // Affinely independent frame in p.
    let mut frame: Vec<usize> = vec![0];
    let mut rank = 0;
    for i in 1..k {
        let rows: Vec<IntVec> = frame
            .iter()
            .skip(1)
            .chain(std::iter::once(&i))
            .map(|&j| vp[j].sub(&vp[frame[0]]))
            .collect();
        let r = IntMatrix::from_rows(rows).rank();
        if r > rank {
            frame.push(i);
            rank = r;
        }
        if rank == d {
            break;
        }
    }
    debug_assert_eq!(frame.len(), d + 1);

    let content_pair = |a: &IntVec, b: &IntVec| a.sub(b).content();

    // Depth-first over candidate frames in q; each complete frame is tested
    // for an integral unimodular solution mapping all vertices.
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(partial) = stack.pop() {
        if partial.len() == d + 1 {
            if let Some(map) = solve_frame(&frame, &partial, vp, vq) {
                return Some(map);
            }
            continue;
        }
        let t = partial.len();
        for cand in (0..k).rev() {
            if partial.contains(&cand) {
                continue;
            }
            let ok = (0..t).all(|s| {
                content_pair(&vp[frame[s]], &vp[frame[t]])
                    == content_pair(&vq[partial[s]], &vq[cand])
            });
            if ok {
                let mut next = partial.clone();
                next.push(cand);
                stack.push(next);
            }
        }
    }
    None
}

fn solve_frame(
    frame: &[usize],
    images: &[usize],
    vp: &[IntVec],
    vq: &[IntVec],
) -> Option<(IntMatrix, IntVec)> {
    let d = frame.len() - 1;
    // Columns of x: frame differences; columns of y: image differences.
    let mut x = IntMatrix::zeros(d, d);
    let mut y = IntMatrix::zeros(d, d);
    for t in 1..=d {
        let dx = vp[frame[t]].sub(&vp[frame[0]]);
        let dy = vq[images[t]].sub(&vq[images[0]]);
        for r in 0..d {
            x[(r, t - 1)] = dx[r].clone();
            y[(r, t - 1)] = dy[r].clone();
        }
    }
    // A satisfies A x = y; solve x^T A^T = y^T row by row over Q.
    let xt = x.transpose();
    let mut a = IntMatrix::zeros(d, d);
    for r in 0..d {
        let rhs = RatVec((0..d).map(|c| Rat::from_integer(y[(r, c)].clone())).collect());
        let (sol, _) = solve_rational(&xt, &rhs)?;
        let sol = sol.to_int()?;
        for c in 0..d {
            a[(r, c)] = sol[c].clone();
        }
    }
    if a.det().abs() != Int::one() {
        return None;
    }
    let b = vq[images[0]].sub(&a.mul_vec(&vp[frame[0]]));
    // The affine map must send the vertex set bijectively onto the target.
    let mut mapped: Vec<IntVec> = vp.iter().map(|v| a.mul_vec(v).add(&b)).collect();
    mapped.sort();
    let mut target: Vec<IntVec> = vq.to_vec();
    target.sort();
    (mapped == target).then_some((a, b))
}

fn edge_length_multiset(p: &LatticePolytope) -> Vec<Int> {
    if p.dim() <= 1 {
        return p.lattice_length().map(|l| vec![l]).unwrap_or_default();
    }
    let mut lengths: Vec<Int> = p
        .face_lattice()
        .faces
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| {
            let vs: Vec<usize> = f.vertex_mask.iter_ones().collect();
            p.vertices()[vs[0]].sub(&p.vertices()[vs[vs.len() - 1]]).content()
        })
        .collect();
    lengths.sort();
    lengths
}

/// A regular unimodular triangulation of the dilated simplex `d Δ_n`,
/// produced by the alcove lifting and then verified cell by cell.
pub struct AlcoveTriangulation {
    pub subdivision: Subdivision,
    pub simplices: Vec<LatticePolytope>,
    /// All cells are unimodular simplices, there are `d^n` of them, and
    /// their normalized volumes add up to the parent's.
    pub verified: bool,
}

pub fn alcove_triangulation(n: usize, d: i64) -> Result<AlcoveTriangulation> {
    let parent = dilated_simplex(n, d)?;
    let lifting = alcove_lifting(&parent);
    let subdivision = lower_envelope_subdivision(&lifting);
    let simplices = subdivision.cells().to_vec();
    let mut verified = simplices.len() as i64 == d.pow(n as u32);
    let mut covered = Int::zero();
    for cell in &simplices {
        if cell.vertex_count() != n + 1 || cell.dim() != n || cell.normalized_volume() != Int::one()
        {
            verified = false;
        }
        covered += cell.normalized_volume();
    }
    verified = verified && covered == parent.normalized_volume();
    Ok(AlcoveTriangulation {
        subdivision,
        simplices,
        verified,
    })
}

/// The convex lifting whose domains of linearity are the type-A alcoves:
/// for every consecutive coordinate sum `s = x_i + .. + x_j` and every
/// integer threshold `k`, add the kink `max(0, s - k)`.
pub fn alcove_lifting(p: &LatticePolytope) -> Lifting {
    let n = p.ambient_dim();
    let max_sum: Int = p
        .vertices()
        .iter()
        .map(|v| v.iter().sum::<Int>())
        .max()
        .unwrap_or_else(Int::zero);
    Lifting::from_fn(p.clone(), move |m| {
        let mut h = Int::zero();
        for i in 0..n {
            let mut s = Int::zero();
            for j in i..n {
                s += &m[j];
                let mut k = Int::one();
                while k < max_sum {
                    let excess = &s - &k;
                    if excess.is_positive() {
                        h += excess;
                    }
                    k += Int::one();
                }
            }
        }
        Rat::from_integer(h)
    })
}

// ---------------------------------------------------------------------------
// Known-polytope registry
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DbStatus {
    Irrational,
    Rational,
}

#[derive(Clone, Debug)]
pub struct DbEntry {
    pub key: String,
    pub polytope: LatticePolytope,
    pub status: DbStatus,
    pub citation: String,
}

/// Registry of lattice polytopes with known stable-rationality status.
#[derive(Clone, Debug, Default)]
pub struct KnownPolytopeDb {
    entries: Vec<DbEntry>,
}

impl KnownPolytopeDb {
    pub fn new(entries: Vec<DbEntry>) -> Self {
        KnownPolytopeDb { entries }
    }

    pub fn entries(&self) -> &[DbEntry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&DbEntry> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// The registry shipped with the tool. Every entry carries the citation
    /// backing its status.
    pub fn builtin() -> Self {
        let case_a = LatticePolytope::from_i64(&[
            &[0, 3, 0, 0, 0],
            &[1, 3, 0, 0, 0],
            &[2, 2, 1, 0, 0],
            &[1, 1, 2, 0, 0],
            &[2, 1, 2, 0, 0],
            &[0, 1, 0, 2, 0],
            &[1, 1, 0, 2, 0],
            &[1, 1, 0, 0, 2],
            &[2, 1, 0, 0, 2],
        ])
        .expect("case (a) polytope");
        let case_b = LatticePolytope::from_i64(&[
            &[2, 0, 0, 0, 0],
            &[0, 2, 0, 0, 0],
            &[1, 1, 2, 0, 0],
            &[0, 1, 0, 2, 0],
            &[1, 0, 0, 0, 2],
        ])
        .expect("case (b) polytope");
        KnownPolytopeDb::new(vec![
            DbEntry {
                key: "hpt-quartic".into(),
                polytope: hpt_polytope(),
                status: DbStatus::Irrational,
                citation: "Hassett-Pirutka-Tschinkel quartic: a very general hypersurface with this Newton polytope admits no decomposition of the diagonal (Hassett-Pirutka-Tschinkel; Schreieder)".into(),
            },
            DbEntry {
                key: "quartic-double-3".into(),
                polytope: quartic_double_polytope(3).expect("valid"),
                status: DbStatus::Irrational,
                citation: "a very general quartic double threefold is stably irrational (Voisin; Artin-Mumford example)".into(),
            },
            DbEntry {
                key: "quartic-double-4".into(),
                polytope: quartic_double_polytope(4).expect("valid"),
                status: DbStatus::Irrational,
                citation: "a very general quartic double fourfold is stably irrational (Hassett-Pirutka-Tschinkel)".into(),
            },
            DbEntry {
                key: "bideg-22-1-1".into(),
                polytope: bidegree_box(1, 1, 2, 2).expect("valid"),
                status: DbStatus::Irrational,
                citation: "a smooth (2,2) curve in P^1 x P^1 has genus one, hence is not stably rational".into(),
            },
            DbEntry {
                key: "bideg-22-2-2".into(),
                polytope: bidegree_box(2, 2, 2, 2).expect("valid"),
                status: DbStatus::Irrational,
                citation: "a very general (2,2) divisor in P^2 x P^2 is stably irrational (Hassett-Tschinkel)".into(),
            },
            DbEntry {
                key: "bideg-22-2-3".into(),
                polytope: bidegree_box(2, 3, 2, 2).expect("valid"),
                status: DbStatus::Irrational,
                citation: "a very general (2,2) divisor in P^2 x P^3 is stably irrational (Hassett-Pirutka-Tschinkel)".into(),
            },
            DbEntry {
                key: "p1p4-case-a".into(),
                polytope: case_a,
                status: DbStatus::Rational,
                citation: "translating by (0,-1,0,0,0) exhibits the very general hypersurface as a quadric bundle over P^1, hence rational".into(),
            },
            DbEntry {
                key: "p1p4-case-b".into(),
                polytope: case_b,
                status: DbStatus::Rational,
                citation: "projection onto the last three exponents exhibits a conic bundle with a section, hence rational".into(),
            },
        ])
    }
}

/// Classification verdict for a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalityStatus {
    StablyRational(RationalReason),
    KnownIrrational { key: String, citation: String },
    Unknown { face: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalReason {
    /// Dimension at most one: empty or finitely many points.
    LowDim,
    /// Lattice width one, with the witness functional (chart coordinates).
    WidthOne(IntVec),
    /// Matches a rational registry entry through a unimodular map.
    DbMatch {
        key: String,
        map: (IntMatrix, IntVec),
        citation: String,
    },
    /// Certified by a supplied unimodular triangulation (used by the
    /// variation checks, never by direct classification).
    UnimodularTriangulation,
}

impl RationalityStatus {
    pub fn is_rational(&self) -> bool {
        matches!(self, RationalityStatus::StablyRational(_))
    }

    pub fn constructor_tag(&self) -> &'static str {
        match self {
            RationalityStatus::StablyRational(RationalReason::LowDim) => "low-dim",
            RationalityStatus::StablyRational(RationalReason::WidthOne(_)) => "width-one",
            RationalityStatus::StablyRational(RationalReason::DbMatch { .. }) => "db-match",
            RationalityStatus::StablyRational(RationalReason::UnimodularTriangulation) => {
                "unimodular-triangulation"
            }
            RationalityStatus::KnownIrrational { .. } => "known-irrational",
            RationalityStatus::Unknown { .. } => "unknown",
        }
    }

    pub fn citation(&self) -> Option<&str> {
        match self {
            RationalityStatus::KnownIrrational { citation, .. } => Some(citation),
            RationalityStatus::StablyRational(RationalReason::DbMatch { citation, .. }) => {
                Some(citation)
            }
            _ => None,
        }
    }
}

/// The published dimension bound for stably irrational hypersurfaces of even
/// degree `d >= 4`: `2^(d-2) + 3d/2 - 5`.
pub fn schreieder_even_bound(d: i64) -> Result<Int> {
    if d < 4 || d % 2 != 0 {
        return Err(Error::BadDegree(d));
    }
    let two = Int::from(2);
    Ok(num_traits::pow::pow(two, (d - 2) as usize) + Int::from(3 * d / 2 - 5))
}

/// Does a very general degree-`deg` hypersurface of dimension `hdim` fall in
/// a published stable-irrationality range?
fn simplex_family_irrational(deg: i64, hdim: i64) -> Option<String> {
    if hdim < 3 || deg < 4 {
        return None;
    }
    // deg >= log2(hdim) + 2, i.e. 2^(deg-2) >= hdim.
    if deg > 62 || (1i64 << (deg - 2)) >= hdim {
        return Some(format!(
            "a very general degree-{deg} hypersurface of dimension {hdim} is stably irrational (Schreieder: degree >= log2(dim) + 2)"
        ));
    }
    // Even-degree refinement: any even e <= deg with hdim <= 2^(e-2) + 3e/2 - 5.
    let mut e = 4;
    while e <= deg {
        if let Ok(bound) = schreieder_even_bound(e) {
            if Int::from(hdim) <= bound {
                return Some(format!(
                    "a very general degree-{deg} hypersurface of dimension {hdim} is stably irrational (even-degree bound at degree {e}: dim <= {bound})"
                ));
            }
        }
        e += 2;
    }
    None
}

/// Classify one face of a subdivision.
///
/// Decision order: dimension at most 1; width-1 certificate; registry match
/// (rational entries first, then irrational); dilated-simplex family rule;
/// otherwise the face stays unknown. Every positive verdict carries its
/// witness or citation.
pub fn classify_face(
    face: &LatticePolytope,
    face_id: usize,
    db: &KnownPolytopeDb,
    options: &ClassifyOptions,
) -> RationalityStatus {
    if face.dim() <= 1 {
        return RationalityStatus::StablyRational(RationalReason::LowDim);
    }
    if let Ok(WidthOneOutcome::Witness(l)) = width_le_one(face, options) {
        return RationalityStatus::StablyRational(RationalReason::WidthOne(l));
    }
    for entry in db.entries() {
        if entry.status != DbStatus::Rational {
            continue;
        }
        if let Some(map) = unimodular_equivalent(face, &entry.polytope) {
            return RationalityStatus::StablyRational(RationalReason::DbMatch {
                key: entry.key.clone(),
                map,
                citation: entry.citation.clone(),
            });
        }
    }
    for entry in db.entries() {
        if entry.status != DbStatus::Irrational {
            continue;
        }
        if unimodular_equivalent(face, &entry.polytope).is_some() {
            return RationalityStatus::KnownIrrational {
                key: entry.key.clone(),
                citation: entry.citation.clone(),
            };
        }
    }
    // Parametric family: dilated simplices in published irrational ranges.
    let n1 = face.dim();
    let nvol = face.normalized_volume();
    for deg in 1..=options.simplex_family_max_degree {
        let target = num_traits::pow::pow(Int::from(deg), n1);
        if target > nvol {
            break;
        }
        if target == nvol {
            if let Ok(simplex) = dilated_simplex(n1, deg) {
                if unimodular_equivalent(face, &simplex).is_some() {
                    if let Some(citation) = simplex_family_irrational(deg, n1 as i64 - 1) {
                        return RationalityStatus::KnownIrrational {
                            key: format!("param:simplex-deg{}-dim{}", deg, n1 - 1),
                            citation,
                        };
                    }
                }
            }
        }
    }
    RationalityStatus::Unknown { face: face_id }
}

// ---------------------------------------------------------------------------
// Registry JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct DbEntryJson {
    pub key: String,
    pub vertices: Vec<IntVec>,
    pub status: DbStatus,
    pub citation: String,
}

impl KnownPolytopeDb {
    pub fn to_json(&self) -> Vec<DbEntryJson> {
        self.entries
            .iter()
            .map(|e| DbEntryJson {
                key: e.key.clone(),
                vertices: e.polytope.vertices().to_vec(),
                status: e.status,
                citation: e.citation.clone(),
            })
            .collect()
    }

    pub fn from_json(entries: Vec<DbEntryJson>) -> Result<Self> {
        let mut out = Vec::new();
        for e in entries {
            if e.vertices.is_empty() {
                return Err(Error::schema(
                    "vertices",
                    format!("entry `{}` has no vertices", e.key),
                ));
            }
            out.push(DbEntry {
                key: e.key,
                polytope: LatticePolytope::from_points(e.vertices)?,
                status: e.status,
                citation: e.citation,
            });
        }
        Ok(KnownPolytopeDb::new(out))
    }
}
