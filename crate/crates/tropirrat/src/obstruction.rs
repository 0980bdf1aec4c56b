//! The symbolic obstruction calculus: formal sums over stable-birational
//! class tags, the alternating-sum verdict engine with sound wildcard
//! semantics for unclassified faces, variation-certificate checks, and the
//! combinatorial calculators for complete-intersection degenerations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{classify_face, ClassifyOptions, KnownPolytopeDb, RationalityStatus};
use crate::linalg::Int;
use crate::polytope::LatticePolytope;
use crate::subdivision::Subdivision;
use crate::{Error, Result};

/// A stable-birational class tag. `Point` is the class of stably rational
/// varieties; `Known` tags come from the registry and are asserted distinct
/// from `Point`; `Unknown` tags are free wildcards indexed by face id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SbTag {
    Point,
    Known(String),
    Unknown(usize),
}

impl fmt::Display for SbTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SbTag::Point => write!(f, "point"),
            SbTag::Known(k) => write!(f, "known:{k}"),
            SbTag::Unknown(i) => write!(f, "unknown:{i}"),
        }
    }
}

impl SbTag {
    pub fn parse(s: &str) -> Result<SbTag> {
        if s == "point" {
            return Ok(SbTag::Point);
        }
        if let Some(k) = s.strip_prefix("known:") {
            return Ok(SbTag::Known(k.to_string()));
        }
        if let Some(i) = s.strip_prefix("unknown:") {
            let id = i
                .parse()
                .map_err(|_| Error::schema("tag", format!("bad unknown id `{i}`")))?;
            return Ok(SbTag::Unknown(id));
        }
        Err(Error::schema("tag", format!("unrecognized tag `{s}`")))
    }
}

/// An element of the free abelian group on stable-birational tags.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum {
    coeffs: BTreeMap<SbTag, Int>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn add_term(&mut self, tag: SbTag, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(tag).or_insert_with(Int::zero);
        *entry += coeff;
        if entry.is_zero() {
            let tag = self
                .coeffs
                .iter()
                .find(|(_, c)| c.is_zero())
                .map(|(t, _)| t.clone())
                .unwrap();
            self.coeffs.remove(&tag);
        }
    }

    pub fn coefficient(&self, tag: &SbTag) -> Int {
        self.coeffs.get(tag).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SbTag, &Int)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (tag, coeff) in &self.coeffs {
            if first {
                write!(f, "{coeff}*[{tag}]")?;
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - {}*[{tag}]", -coeff)?;
            } else {
                write!(f, " + {coeff}*[{tag}]")?;
            }
        }
        Ok(())
    }
}

/// Assumptions constraining the wildcard search: forced equalities (for
/// symmetric coefficient choices), forced distinctness, and extra
/// not-a-point assertions.
#[derive(Clone, Debug, Default)]
pub struct Assumptions {
    pub equal: Vec<(SbTag, SbTag)>,
    pub distinct: Vec<(SbTag, SbTag)>,
    pub not_point: Vec<SbTag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nontrivial,
    Inconclusive,
}

/// Machine-readable log of the verdict computation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerdictTranscript {
    /// The sum after applying equality assumptions, rendered per tag.
    pub merged_sum: Vec<(String, String)>,
    pub target: String,
    pub strategy: String,
    /// A substitution reaching the target, when one exists.
    pub witness: Option<Vec<String>>,
}

struct TagClass {
    representative: SbTag,
    coeff: Int,
    not_point: bool,
}

/// Compute the signed obstruction sum over the interior faces of a
/// subdivision.
///
/// Faces contribute by dimension: nothing in dimension 0, `lattice_length`
/// copies of `Point` in dimension 1, and a single class in dimension at
/// least 2 (the point class when certified stably rational, the registry
/// class when known irrational, a wildcard otherwise), all with sign
/// `(-1)^dim`.
pub fn obstruction_sum(
    sub: &Subdivision,
    statuses: &BTreeMap<usize, RationalityStatus>,
) -> Result<FormalSum> {
    let mut sum = FormalSum::zero();
    for face_id in sub.interior_faces() {
        let face = &sub.faces()[face_id];
        let sign = if face.dim % 2 == 0 { Int::one() } else { -Int::one() };
        match face.dim {
            0 => {}
            1 => {
                let length = sub
                    .face_polytope(face_id)
                    .lattice_length()
                    .expect("dim-1 face is a segment");
                sum.add_term(SbTag::Point, sign * length);
            }
            _ => {
                let status = statuses
                    .get(&face_id)
                    .ok_or(Error::UnclassifiedFace(face_id))?;
                let tag = match status {
                    RationalityStatus::StablyRational(_) => SbTag::Point,
                    RationalityStatus::KnownIrrational { key, .. } => SbTag::Known(key.clone()),
                    RationalityStatus::Unknown { face } => SbTag::Unknown(*face),
                };
                sum.add_term(tag, sign);
            }
        }
    }
    Ok(sum)
}

/// Decide whether the obstruction sum can possibly equal the target class
/// `(-1)^dim_delta * [Point]` under some assignment of the wildcard tags.
///
/// A substitution may merge unknown tags with each other, with known tags,
/// or with the point class, and may merge known tags with each other unless
/// distinctness is asserted; known tags never equal the point class. The
/// verdict is `Nontrivial` exactly when no admissible assignment reaches the
/// target, via an exhaustive search over class partitions (with a complete
/// shortcut when all non-point coefficients share a sign).
pub fn verdict(
    sum: &FormalSum,
    dim_delta: usize,
    assumptions: &Assumptions,
) -> Result<(Verdict, VerdictTranscript)> {
    // Union-find over every mentioned tag plus Point.
    let mut tags: BTreeSet<SbTag> = sum.terms().map(|(t, _)| t.clone()).collect();
    tags.insert(SbTag::Point);
    for (a, b) in assumptions.equal.iter().chain(&assumptions.distinct) {
        tags.insert(a.clone());
        tags.insert(b.clone());
    }
    for t in &assumptions.not_point {
        tags.insert(t.clone());
    }
    let tag_list: Vec<SbTag> = tags.into_iter().collect();
    let index = |t: &SbTag| tag_list.binary_search(t).expect("tag registered");
    let mut parent: Vec<usize> = (0..tag_list.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for (a, b) in &assumptions.equal {
        let (ra, rb) = (find(&mut parent, index(a)), find(&mut parent, index(b)));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    // Consistency checks.
    for (a, b) in &assumptions.distinct {
        if a == b || find(&mut parent, index(a)) == find(&mut parent, index(b)) {
            return Err(Error::BadAssumptions(format!(
                "tags {a} and {b} are asserted both equal and distinct"
            )));
        }
    }
    let point_root = find(&mut parent, index(&SbTag::Point));
    for (i, t) in tag_list.iter().enumerate() {
        if matches!(t, SbTag::Known(_)) && find(&mut parent, i) == point_root {
            return Err(Error::BadAssumptions(format!(
                "known tag {t} is forced equal to the point class"
            )));
        }
    }
    for t in &assumptions.not_point {
        if find(&mut parent, index(t)) == point_root {
            return Err(Error::BadAssumptions(format!(
                "tag {t} is asserted not-point but forced equal to point"
            )));
        }
    }

    // Merge coefficients per class.
    let mut class_coeff: BTreeMap<usize, Int> = BTreeMap::new();
    for (t, c) in sum.terms() {
        *class_coeff.entry(find(&mut parent, index(t))).or_insert_with(Int::zero) += c;
    }
    let not_point_roots: BTreeSet<usize> = assumptions
        .not_point
        .iter()
        .map(|t| find(&mut parent, index(t)))
        .collect();
    let point_coeff = class_coeff.remove(&point_root).unwrap_or_else(Int::zero);

    let mut classes: Vec<TagClass> = Vec::new();
    let mut root_to_class: BTreeMap<usize, usize> = BTreeMap::new();
    for (root, coeff) in &class_coeff {
        let members: Vec<&SbTag> = tag_list
            .iter()
            .enumerate()
            .filter(|(i, _)| find(&mut parent, *i) == *root)
            .map(|(_, t)| t)
            .collect();
        let has_known = members.iter().any(|t| matches!(t, SbTag::Known(_)));
        let representative = members
            .iter()
            .find(|t| matches!(t, SbTag::Known(_)))
            .cloned()
            .unwrap_or(members[0])
            .clone();
        if coeff.is_zero() {
            // A class with vanishing coefficient can always sit in its own
            // fresh class, so it never constrains the search.
            continue;
        }
        root_to_class.insert(*root, classes.len());
        classes.push(TagClass {
            representative,
            coeff: coeff.clone(),
            not_point: has_known || not_point_roots.contains(root),
        });
    }
    // Distinctness edges between surviving classes / against the point class.
    let mut distinct_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut distinct_from_point: BTreeSet<usize> = BTreeSet::new();
    for (a, b) in &assumptions.distinct {
        let (ra, rb) = (find(&mut parent, index(a)), find(&mut parent, index(b)));
        match (
            root_to_class.get(&ra).copied(),
            root_to_class.get(&rb).copied(),
        ) {
            (Some(ca), Some(cb)) => {
                distinct_pairs.insert((ca.min(cb), ca.max(cb)));
            }
            (Some(ca), None) if rb == point_root => {
                distinct_from_point.insert(ca);
            }
            (None, Some(cb)) if ra == point_root => {
                distinct_from_point.insert(cb);
            }
            // Distinctness involving dropped (zero-coefficient) classes is
            // vacuous: they take fresh values.
            _ => {}
        }
    }

    let target = if dim_delta % 2 == 0 { Int::one() } else { -Int::one() };
    let mut transcript = VerdictTranscript {
        merged_sum: {
            let mut v: Vec<(String, String)> = classes
                .iter()
                .map(|c| (c.representative.to_string(), c.coeff.to_string()))
                .collect();
            if !point_coeff.is_zero() {
                v.push((SbTag::Point.to_string(), point_coeff.to_string()));
            }
            v.sort();
            v
        },
        target: format!("{target}*[point]"),
        strategy: String::new(),
        witness: None,
    };

    // Complete shortcut: if every class coefficient has the same strict
    // sign, no nonempty zero-sum block exists, so every class must join the
    // point block.
    let all_positive = classes.iter().all(|c| c.coeff.is_positive());
    let all_negative = classes.iter().all(|c| c.coeff.is_negative());
    if all_positive || all_negative {
        transcript.strategy = format!(
            "uniform-sign reduction over {} merged classes",
            classes.len()
        );
        let blocked = classes.iter().enumerate().any(|(i, c)| {
            c.not_point || distinct_from_point.contains(&i)
        }) || !distinct_pairs.is_empty();
        let total: Int = classes.iter().map(|c| c.coeff.clone()).sum::<Int>() + &point_coeff;
        if !blocked && total == target {
            transcript.witness = Some(
                classes
                    .iter()
                    .map(|c| format!("{} -> point", c.representative))
                    .collect(),
            );
            return Ok((Verdict::Inconclusive, transcript));
        }
        return Ok((Verdict::Nontrivial, transcript));
    }

    // Exhaustive search over set partitions of the classes. Block 0 is the
    // point block; further blocks are fresh non-point classes (a block
    // containing a known tag is that known class).
    const SEARCH_CAP: usize = 24;
    if classes.len() > SEARCH_CAP {
        return Err(Error::BadParameter(format!(
            "substitution search over {} classes exceeds the supported size",
            classes.len()
        )));
    }
    transcript.strategy = format!("exhaustive partition search over {} classes", classes.len());
    let n = classes.len();
    let mut assignment: Vec<usize> = vec![usize::MAX; n];
    let mut block_sums: Vec<Int> = vec![point_coeff.clone()];
    let witness = search_partitions(
        0,
        n,
        &classes,
        &distinct_pairs,
        &distinct_from_point,
        &mut assignment,
        &mut block_sums,
        &target,
    );
    match witness {
        Some(assign) => {
            transcript.witness = Some(
                assign
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        if b == 0 {
                            format!("{} -> point", classes[i].representative)
                        } else {
                            format!("{} -> class#{b}", classes[i].representative)
                        }
                    })
                    .collect(),
            );
            Ok((Verdict::Inconclusive, transcript))
        }
        None => Ok((Verdict::Nontrivial, transcript)),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_partitions(
    i: usize,
    n: usize,
    classes: &[TagClass],
    distinct_pairs: &BTreeSet<(usize, usize)>,
    distinct_from_point: &BTreeSet<usize>,
    assignment: &mut Vec<usize>,
    block_sums: &mut Vec<Int>,
    target: &Int,
) -> Option<Vec<usize>> {
    if i == n {
        if &block_sums[0] == target && block_sums[1..].iter().all(|s| s.is_zero()) {
            return Some(assignment.clone());
        }
        return None;
    }
    let class = &classes[i];
    let used = block_sums.len();
    // Existing blocks (0 = point) or one fresh block.
    for b in 0..=used {
        if b == 0 && (class.not_point || distinct_from_point.contains(&i)) {
            continue;
        }
        let conflict = (0..i).any(|j| {
            assignment[j] == b && distinct_pairs.contains(&(j.min(i), j.max(i)))
        });
        if conflict {
            continue;
        }
        if b == used {
            block_sums.push(class.coeff.clone());
        } else {
            block_sums[b] += &class.coeff;
        }
        assignment[i] = b;
        if let Some(w) = search_partitions(
            i + 1,
            n,
            classes,
            distinct_pairs,
            distinct_from_point,
            assignment,
            block_sums,
            target,
        ) {
            return Some(w);
        }
        assignment[i] = usize::MAX;
        if b == used {
            block_sums.pop();
        } else {
            block_sums[b] -= &class.coeff;
        }
    }
    None
}

/// Fast positive criterion: exactly one interior face is known irrational
/// and every other interior face carries a stably-rational certificate.
pub fn check_irratpol(
    sub: &Subdivision,
    statuses: &BTreeMap<usize, RationalityStatus>,
) -> bool {
    let mut irrational = 0usize;
    for face_id in sub.interior_faces() {
        let face = &sub.faces()[face_id];
        if face.dim <= 1 {
            continue; // stably rational by definition
        }
        match statuses.get(&face_id) {
            Some(RationalityStatus::StablyRational(_)) => {}
            Some(RationalityStatus::KnownIrrational { .. }) => irrational += 1,
            _ => return false,
        }
    }
    irrational == 1
}

// ---------------------------------------------------------------------------
// Variation certificate
// ---------------------------------------------------------------------------

/// Result of checking the side conditions that allow varying the stable
/// birational type while preserving a boundary face.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariationReport {
    /// The face lies in the boundary of the parent.
    pub boundary_precondition: bool,
    /// (a) The face is a face of the subdivision.
    pub face_in_subdivision: bool,
    /// (b) Interior faces meeting the chosen face, with failures listed.
    pub meeting_faces_rational: bool,
    pub meeting_failures: Vec<usize>,
    /// (c) Per interior face: does the supplied refinement certify it?
    pub refinements_ok: bool,
    pub refinement_failures: Vec<(usize, String)>,
}

impl VariationReport {
    pub fn pass(&self) -> bool {
        self.boundary_precondition
            && self.face_in_subdivision
            && self.meeting_faces_rational
            && self.refinements_ok
    }
}

/// Check conditions (a)-(c) for the variation argument: the boundary face
/// `delta` is a face of `sub`; every interior face of `sub` meeting `delta`
/// is certified stably rational; and every interior face of `sub` carries a
/// supplied regular integral refinement all of whose own interior faces are
/// certified stably rational.
pub fn check_variation_certificate(
    parent: &LatticePolytope,
    delta: &LatticePolytope,
    sub: &Subdivision,
    refinements: &BTreeMap<usize, Subdivision>,
    db: &KnownPolytopeDb,
    options: &ClassifyOptions,
) -> Result<VariationReport> {
    let boundary_precondition = parent.is_in_boundary(delta)?;
    let delta_face = sub.find_face(delta);
    let face_in_subdivision = delta_face.is_some();

    let mut meeting_failures = Vec::new();
    if let Some(df) = delta_face {
        let delta_mask = &sub.faces()[df].vertices;
        for face_id in sub.interior_faces() {
            let face = &sub.faces()[face_id];
            if face.vertices.intersection(delta_mask).is_empty() {
                continue;
            }
            if face.dim <= 1 {
                continue;
            }
            let poly = sub.face_polytope(face_id);
            if !classify_face(&poly, face_id, db, options).is_rational() {
                meeting_failures.push(face_id);
            }
        }
    }

    let mut refinement_failures = Vec::new();
    for face_id in sub.interior_faces() {
        let face_poly = sub.face_polytope(face_id);
        let Some(refinement) = refinements.get(&face_id) else {
            refinement_failures.push((face_id, "no refinement supplied".to_string()));
            continue;
        };
        if refinement.parent() != &face_poly {
            refinement_failures.push((
                face_id,
                "refinement parent does not match the face".to_string(),
            ));
            continue;
        }
        // Integrality: cell vertices must be lattice points of the face
        // (they are integer vectors by construction; containment is the
        // real check).
        let mut integral = true;
        for cell in refinement.cells() {
            if !face_poly.contains_polytope(cell)? {
                integral = false;
            }
        }
        if !integral {
            refinement_failures.push((face_id, "refinement cells leave the face".to_string()));
            continue;
        }
        for inner_id in refinement.interior_faces() {
            let inner = &refinement.faces()[inner_id];
            if inner.dim <= 1 {
                continue;
            }
            let poly = refinement.face_polytope(inner_id);
            if !classify_face(&poly, inner_id, db, options).is_rational() {
                refinement_failures.push((
                    face_id,
                    format!("interior face {inner_id} of the refinement is not certified"),
                ));
            }
        }
    }

    Ok(VariationReport {
        boundary_precondition,
        face_in_subdivision,
        meeting_faces_rational: meeting_failures.is_empty(),
        meeting_failures,
        refinements_ok: refinement_failures.is_empty(),
        refinement_failures,
    })
}

// ---------------------------------------------------------------------------
// Complete-intersection calculators
// ---------------------------------------------------------------------------

/// The alternating sum over admissible coordinate subsets arising from
/// degenerating a complete intersection of multidegree `(d_1, .., d_{r-1}, *)`
/// into coordinate strata.
pub struct StrataSum {
    /// Coefficient per admissible subset of `{(i, j)}`.
    pub terms: BTreeMap<Vec<(u32, u32)>, Int>,
    /// The full set: the deepest stratum.
    pub full_set: Vec<(u32, u32)>,
}

impl StrataSum {
    pub fn admissible_count(&self) -> usize {
        self.terms.len()
    }

    pub fn full_coefficient(&self) -> Int {
        self.terms.get(&self.full_set).cloned().unwrap_or_else(Int::zero)
    }
}

/// Enumerate admissible subsets (hitting every row `i`) of the index set
/// `{(i, j) : 1 <= i <= r-1, 1 <= j <= d_i}` with signs `(-1)^(|T| - r + 1)`.
pub fn ci_strata_sum(degrees: &[u32]) -> Result<StrataSum> {
    if degrees.is_empty() {
        return Err(Error::BadParameter(
            "need at least one degree (r >= 2)".into(),
        ));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(Error::BadParameter("degrees must be positive".into()));
    }
    let total: u32 = degrees.iter().sum();
    if total > 22 {
        return Err(Error::BadParameter(format!(
            "strata enumeration over 2^{total} subsets is not supported"
        )));
    }
    let mut elements: Vec<(u32, u32)> = Vec::new();
    for (i, &d) in degrees.iter().enumerate() {
        for j in 1..=d {
            elements.push((i as u32 + 1, j));
        }
    }
    let n = elements.len();
    let r_minus_1 = degrees.len() as u32;
    let mut terms = BTreeMap::new();
    for mask in 1u64..(1u64 << n) {
        let subset: Vec<(u32, u32)> = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| elements[b])
            .collect();
        let hits: BTreeSet<u32> = subset.iter().map(|(i, _)| *i).collect();
        if hits.len() as u32 != r_minus_1 {
            continue;
        }
        let size = subset.len() as u32;
        // (-1)^(|T| - r + 1) = (-1)^(|T| - (r-1)) with r - 1 rows.
        let sign = if (size + r_minus_1).is_even() {
            Int::one()
        } else {
            -Int::one()
        };
        terms.insert(subset, sign);
    }
    Ok(StrataSum {
        terms,
        full_set: elements,
    })
}

/// If `d` is a prime power `p^nu`, certify that `p` divides the first `d-1`
/// binomial coefficients `C(d, 1), .., C(d, d-1)`.
pub fn prime_power_binomial_certificate(d: u64) -> Option<(u64, u32, Vec<Int>)> {
    if d < 2 {
        return None;
    }
    let mut m = d;
    let mut p = 0u64;
    for q in 2.. {
        if q * q > m {
            break;
        }
        if m % q == 0 {
            p = q;
            while m % q == 0 {
                m /= q;
            }
            break;
        }
    }
    let (p, nu) = if p == 0 {
        (d, 1u32) // d itself is prime
    } else {
        if m != 1 {
            return None; // a second prime divides d
        }
        let mut nu = 0u32;
        let mut t = d;
        while t % p == 0 {
            t /= p;
            nu += 1;
        }
        if t != 1 {
            return None;
        }
        (p, nu)
    };
    let mut coeffs = Vec::with_capacity((d - 1) as usize);
    let mut binom = Int::one();
    let p_int = Int::from(p);
    for j in 1..d {
        binom = binom * Int::from(d - j + 1) / Int::from(j);
        if !(binom.clone() % &p_int).is_zero() {
            return None;
        }
        coeffs.push(binom.clone());
    }
    Some((p, nu, coeffs))
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct FaceReportJson {
    pub id: usize,
    pub dim: usize,
    pub boundary: bool,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct SumTermJson {
    pub tag: String,
    pub coeff: String,
}

/// The machine-checkable transcript of a full obstruction run.
#[derive(Serialize, Deserialize)]
pub struct Certificate {
    pub polytope: crate::polytope::PolytopeJson,
    pub subdivision: crate::subdivision::SubdivisionJson,
    pub faces: Vec<FaceReportJson>,
    pub formal_sum: Vec<SumTermJson>,
    pub assumptions: Vec<String>,
    pub verdict: Verdict,
    pub transcript: VerdictTranscript,
    /// Set when the polytope is not full-dimensional in its ambient space;
    /// the target exponent uses the polytope dimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_note: Option<String>,
}

/// Classify every interior face, build the obstruction sum, and run the
/// verdict search. `require_classified` turns wildcard faces into an error.
pub fn certify(
    sub: &Subdivision,
    db: &KnownPolytopeDb,
    options: &ClassifyOptions,
    assumptions: &Assumptions,
    require_classified: bool,
) -> Result<(Certificate, BTreeMap<usize, RationalityStatus>)> {
    let mut statuses = BTreeMap::new();
    for face_id in sub.interior_faces() {
        let poly = sub.face_polytope(face_id);
        let status = classify_face(&poly, face_id, db, options);
        if require_classified {
            if let RationalityStatus::Unknown { .. } = status {
                return Err(Error::UnclassifiedFace(face_id));
            }
        }
        statuses.insert(face_id, status);
    }
    let sum = obstruction_sum(sub, &statuses)?;
    let (verdict_value, transcript) = verdict(&sum, sub.parent().dim(), assumptions)?;
    let faces = sub
        .interior_faces()
        .into_iter()
        .map(|id| {
            let status = &statuses[&id];
            FaceReportJson {
                id,
                dim: sub.faces()[id].dim,
                boundary: false,
                status: status.constructor_tag().to_string(),
                citation: status.citation().map(|s| s.to_string()),
            }
        })
        .collect();
    let dimension_note = (sub.parent().dim() != sub.parent().ambient_dim()).then(|| {
        format!(
            "polytope has dimension {} inside ambient dimension {}; the target exponent uses the polytope dimension",
            sub.parent().dim(),
            sub.parent().ambient_dim()
        )
    });
    let certificate = Certificate {
        polytope: sub.parent().to_json(),
        subdivision: sub.to_json(),
        faces,
        formal_sum: sum
            .terms()
            .map(|(t, c)| SumTermJson {
                tag: t.to_string(),
                coeff: c.to_string(),
            })
            .collect(),
        assumptions: assumptions
            .equal
            .iter()
            .map(|(a, b)| format!("equal {a} {b}"))
            .chain(
                assumptions
                    .distinct
                    .iter()
                    .map(|(a, b)| format!("distinct {a} {b}")),
            )
            .chain(assumptions.not_point.iter().map(|t| format!("not-point {t}")))
            .collect(),
        verdict: verdict_value,
        transcript,
        dimension_note,
    };
    Ok((certificate, statuses))
}

/// Assumptions wire format: tags in their string form.
#[derive(Serialize, Deserialize, Default)]
pub struct AssumptionsJson {
    #[serde(default)]
    pub equal: Vec<(String, String)>,
    #[serde(default)]
    pub distinct: Vec<(String, String)>,
    #[serde(default)]
    pub not_point: Vec<String>,
}

impl Assumptions {
    pub fn from_json(json: AssumptionsJson) -> Result<Self> {
        let parse_pair = |(a, b): &(String, String)| -> Result<(SbTag, SbTag)> {
            Ok((SbTag::parse(a)?, SbTag::parse(b)?))
        };
        Ok(Assumptions {
            equal: json.equal.iter().map(&parse_pair).collect::<Result<_>>()?,
            distinct: json.distinct.iter().map(&parse_pair).collect::<Result<_>>()?,
            not_point: json
                .not_point
                .iter()
                .map(|t| SbTag::parse(t))
                .collect::<Result<_>>()?,
        })
    }
}
