//! Exact incremental convex hull (beneath-beyond) over the integers.
//!
//! Facets are maintained as supporting hyperplanes with full point-incidence
//! masks, so degenerate (non-simplicial) configurations need no perturbation:
//! a facet is one hyperplane regardless of how many input points it carries.
//! New facets after an insertion come from pencil combinations of an
//! adjacent (beneath, beyond) facet pair, the dual of the classical double
//! description step.

use num_traits::{Signed, Zero};

use crate::linalg::{kernel_int, primitive_part, Int, IntMatrix, IntVec};
use crate::util::BitSet;

/// A facet of the hull: `normal . x >= offset` for every hull point, with
/// equality exactly on `tight`. Normals are primitive and point inward.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub normal: IntVec,
    pub offset: Int,
    pub tight: BitSet,
}

pub struct Hull {
    pub facets: Vec<HullFacet>,
    /// Indices of input points that are vertices of the hull.
    pub vertex_indices: Vec<usize>,
}

fn affine_rank(points: &[&IntVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<IntVec> = points[1..].iter().map(|p| p.sub(base)).collect();
    IntMatrix::from_rows(diffs).rank()
}

/// Greedily select indices of `dim + 1` affinely independent points.
fn seed_simplex(points: &[IntVec], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = vec![0];
    let mut rank = 0;
    for (i, _) in points.iter().enumerate().skip(1) {
        if rank == dim {
            break;
        }
        let mut trial: Vec<&IntVec> = chosen.iter().map(|&j| &points[j]).collect();
        trial.push(&points[i]);
        let r = affine_rank(&trial);
        if r > rank {
            chosen.push(i);
            rank = r;
        }
    }
    assert_eq!(rank, dim, "input points do not affinely span dimension {dim}");
    chosen
}

/// Primitive inward normal and offset of the hyperplane through the given
/// points, oriented so that `reference` lies on the `>=` side.
fn hyperplane_through(points: &[&IntVec], reference: &IntVec, dim: usize) -> (IntVec, Int) {
    let base = points[0];
    let diffs: Vec<IntVec> = points[1..].iter().map(|p| p.sub(base)).collect();
    let mut matrix = IntMatrix::zeros(diffs.len(), dim);
    for (i, d) in diffs.iter().enumerate() {
        for j in 0..dim {
            matrix[(i, j)] = d[j].clone();
        }
    }
    let kernel = kernel_int(&matrix);
    assert_eq!(kernel.len(), 1, "hyperplane points must have affine rank dim-1");
    let mut normal = kernel.into_iter().next().unwrap();
    let mut offset = normal.dot(base);
    let side = normal.dot(reference) - &offset;
    assert!(!side.is_zero(), "reference point lies on the hyperplane");
    if side.is_negative() {
        normal = normal.neg();
        offset = -offset;
    }
    (normal, offset)
}

/// Convex hull of a full-dimensional set of distinct points in `Z^dim`.
pub fn convex_hull(points: &[IntVec], dim: usize) -> Hull {
    assert!(dim >= 1, "hull needs dimension >= 1");
    let n = points.len();
    let seed = seed_simplex(points, dim);
    let in_seed = BitSet::from_indices(n, seed.iter().copied());

    // Mark all seed points as processed (their indices may be scattered),
    // plus every earlier point once it is inserted. For tight-mask purposes
    // we track processed indices explicitly.
    let mut processed = BitSet::new(n);
    for &i in &seed {
        processed.insert(i);
    }

    let recompute_tight = |processed: &BitSet, normal: &IntVec, offset: &Int| -> BitSet {
        let mut mask = BitSet::new(n);
        for i in processed.iter_ones() {
            if &normal.dot(&points[i]) == offset {
                mask.insert(i);
            }
        }
        mask
    };

    let mut facets: Vec<HullFacet> = Vec::new();
    for (omit_pos, &omit) in seed.iter().enumerate() {
        let face_pts: Vec<&IntVec> = seed
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != omit_pos)
            .map(|(_, &j)| &points[j])
            .collect();
        let (normal, offset) = hyperplane_through(&face_pts, &points[omit], dim);
        let tight = recompute_tight(&processed, &normal, &offset);
        facets.push(HullFacet { normal, offset, tight });
    }

    for idx in 0..n {
        if in_seed.contains(idx) {
            continue;
        }
        let p = &points[idx];
        let evals: Vec<Int> = facets.iter().map(|f| f.normal.dot(p) - &f.offset).collect();
        processed.insert(idx);
        if evals.iter().all(|e| !e.is_negative()) {
            for (f, e) in facets.iter_mut().zip(&evals) {
                if e.is_zero() {
                    f.tight.insert(idx);
                }
            }
            continue;
        }
        let beyond: Vec<usize> = (0..facets.len()).filter(|&i| evals[i].is_negative()).collect();
        let beneath: Vec<usize> = (0..facets.len()).filter(|&i| evals[i].is_positive()).collect();

        let mut new_facets: Vec<HullFacet> = Vec::new();
        for &b in &beyond {
            for &a in &beneath {
                let ridge = facets[a].tight.intersection(&facets[b].tight);
                let blocked = (0..facets.len()).any(|c| {
                    c != a && c != b && ridge.is_subset_of(&facets[c].tight)
                });
                if blocked {
                    continue;
                }
                // Pencil combination vanishing at p, nonnegative on the hull.
                let (ea, eb) = (&evals[a], &evals[b]);
                let raw = IntVec(
                    facets[b]
                        .normal
                        .iter()
                        .zip(facets[a].normal.iter())
                        .map(|(nb, na)| ea * nb - eb * na)
                        .collect(),
                );
                let raw_offset = ea * &facets[b].offset - eb * &facets[a].offset;
                let normal = primitive_part(&raw).expect("pencil combination is nonzero");
                let g = &raw[raw.iter().position(|x| !x.is_zero()).unwrap()]
                    / &normal[normal.iter().position(|x| !x.is_zero()).unwrap()];
                let offset = raw_offset / g;
                if new_facets.iter().any(|f| f.normal == normal && f.offset == offset) {
                    continue;
                }
                let tight = recompute_tight(&processed, &normal, &offset);
                new_facets.push(HullFacet { normal, offset, tight });
            }
        }
        let mut next: Vec<HullFacet> = Vec::with_capacity(beneath.len() + new_facets.len());
        for (i, mut f) in facets.into_iter().enumerate() {
            if evals[i].is_positive() {
                next.push(f);
            } else if evals[i].is_zero() {
                f.tight.insert(idx);
                next.push(f);
            }
        }
        next.extend(new_facets);
        facets = next;
    }

    facets.sort_by(|a, b| (&a.normal.0, &a.offset).cmp(&(&b.normal.0, &b.offset)));

    // A point is a vertex iff its tight facet normals span the whole space.
    let mut vertex_indices = Vec::new();
    for i in 0..n {
        let normals: Vec<IntVec> = facets
            .iter()
            .filter(|f| f.tight.contains(i))
            .map(|f| f.normal.clone())
            .collect();
        if normals.len() >= dim && IntMatrix::from_rows(normals).rank() == dim {
            vertex_indices.push(i);
        }
    }
    Hull { facets, vertex_indices }
}
