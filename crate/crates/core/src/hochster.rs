//! Hochster's formula: the independent route to the bigraded Betti numbers.
//!
//! b^{-i,2j} = sum over |W| = j of dim H~_{j-i-1}(K_W), where K_W is the full
//! subcomplex on the vertex subset W. Reduced homology is computed over the
//! chosen prime field from boundary-matrix ranks with the augmentation map;
//! the empty complex has H~_{-1} = k, which makes W = {} contribute exactly
//! the (0,0) entry.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{self, PrimeField, SparseMatrix};
use crate::util::mask_to_vertices;

/// Default cap on vertex count for the 2^m subset sweep.
pub const DEFAULT_HOCHSTER_CAP: usize = 18;

/// The full subcomplex K_W: every face of the parent contained in W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSubcomplex {
    w: u32,
    /// Nonempty faces, grouped by vertex count (index s holds the s-vertex
    /// faces); the empty face is implicit.
    faces_by_size: Vec<Vec<u32>>,
}

impl FullSubcomplex {
    pub fn vertex_set(&self) -> Vec<usize> {
        mask_to_vertices(self.w)
    }

    pub fn is_empty(&self) -> bool {
        self.faces_by_size.iter().all(|g| g.is_empty())
    }

    pub fn faces(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces_by_size.iter().flatten().copied()
    }
}

/// Restrict K to the vertex subset W (1-based labels).
pub fn restrict(k: &SimplicialComplex, w: &[usize]) -> Result<FullSubcomplex> {
    let mut mask = 0u32;
    for &v in w {
        if v == 0 || v > k.m() {
            return Err(Error::VertexOutOfRange { vertex: v, m: k.m() });
        }
        mask |= 1 << (v - 1);
    }
    Ok(restrict_mask(&k.all_faces(), k.m(), mask))
}

fn restrict_mask(parent_faces: &[u32], m: usize, w: u32) -> FullSubcomplex {
    let mut faces_by_size: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for &face in parent_faces {
        if face != 0 && face & !w == 0 {
            faces_by_size[face.count_ones() as usize].push(face);
        }
    }
    faces_by_size.truncate(
        faces_by_size
            .iter()
            .rposition(|g| !g.is_empty())
            .map_or(0, |t| t + 1),
    );
    FullSubcomplex { w, faces_by_size }
}

/// Reduced homology dimensions over F: index 0 is H~_{-1}, index k+1 is H~_k.
/// Simplices are oriented by ascending vertex order with alternating
/// boundary signs. The empty complex yields H~_{-1} = 1 and nothing else.
pub fn reduced_homology_dims(c: &FullSubcomplex, field: PrimeField) -> Vec<usize> {
    if c.is_empty() {
        return vec![1];
    }
    let top = c.faces_by_size.len() - 1; // largest face size
    // rank of the boundary map from s-vertex faces to (s-1)-vertex faces,
    // with the augmentation at s = 1
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        let src = &c.faces_by_size[s];
        if src.is_empty() {
            continue;
        }
        let mat = if s == 1 {
            SparseMatrix::from_triplets(
                1,
                src.len(),
                src.iter().enumerate().map(|(j, _)| (0, j, 1)),
                field,
            )
            .expect("in range")
        } else {
            let dst = &c.faces_by_size[s - 1];
            let index: HashMap<u32, usize> =
                dst.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let mut triplets = Vec::new();
            for (j, &face) in src.iter().enumerate() {
                let mut rest = face;
                let mut pos = 0usize;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    let sub = face & !bit;
                    let v = if pos % 2 == 0 { 1 } else { field.neg(1) };
                    triplets.push((index[&sub], j, v));
                    pos += 1;
                }
            }
            SparseMatrix::from_triplets(dst.len(), src.len(), triplets, field)
                .expect("in range")
        };
        ranks[s] = linalg::rank(&mat, field);
    }
    // H~_{k} = dim C_k - rank d_k - rank d_{k+1}, chain group C_k indexed by
    // (k+1)-vertex faces and C_{-1} the one-dimensional augmentation spot.
    let mut dims = Vec::with_capacity(top + 1);
    dims.push(1 - ranks[1].min(1)); // H~_{-1}
    for s in 1..=top {
        let dim_c = c.faces_by_size[s].len();
        dims.push(dim_c - ranks[s] - ranks[s + 1]);
    }
    dims
}

pub fn hochster_betti(k: &SimplicialComplex, field: PrimeField) -> Result<BettiTable> {
    hochster_betti_with_cap(k, field, DEFAULT_HOCHSTER_CAP)
}

/// Sum the reduced homology of every full subcomplex into the Betti table.
/// Subsets are independent work items; the sweep is a parallel map with an
/// associative merge, so the result is schedule-independent.
pub fn hochster_betti_with_cap(
    k: &SimplicialComplex,
    field: PrimeField,
    cap: usize,
) -> Result<BettiTable> {
    let m = k.m();
    if m > cap {
        return Err(Error::CapExceeded {
            what: "hochster m",
            got: m,
            cap,
        });
    }
    let faces = k.all_faces();
    let merged = (0u32..1 << m)
        .into_par_iter()
        .fold(
            HashMap::<(usize, usize), usize>::new,
            |mut acc, w| {
                let sub = restrict_mask(&faces, m, w);
                let j = w.count_ones() as usize;
                for (slot, dim) in reduced_homology_dims(&sub, field).into_iter().enumerate() {
                    if dim == 0 {
                        continue;
                    }
                    // slot holds H~_{slot-1} = H~_{j-i-1}, so i = j - slot
                    let i = j - slot;
                    *acc.entry((i, 2 * j)).or_insert(0) += dim;
                }
                acc
            },
        )
        .reduce(HashMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        });
    let mut table = BettiTable::new(m, k.polytope_dim());
    for ((i, two_j), dim) in merged {
        table.add(i, two_j, dim);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{f_vector, polygon, simplex_boundary, stacked_sphere};

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn restrict_examples() {
        let pent = polygon(5).unwrap();
        // {1,3} is a non-face: two isolated vertices
        let sub = restrict(&pent, &[1, 3]).unwrap();
        assert_eq!(sub.faces().count(), 2);
        assert_eq!(reduced_homology_dims(&sub, f()), vec![0, 1]);
        // {1,2} spans an edge: contractible
        let sub = restrict(&pent, &[1, 2]).unwrap();
        assert_eq!(reduced_homology_dims(&sub, f()), vec![0, 0, 0]);
        // empty W: empty complex with H~_{-1} = 1
        let sub = restrict(&pent, &[]).unwrap();
        assert!(sub.is_empty());
        assert_eq!(reduced_homology_dims(&sub, f()), vec![1]);
    }

    #[test]
    fn cycle_has_h1() {
        let pent = polygon(5).unwrap();
        let sub = restrict(&pent, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(reduced_homology_dims(&sub, f()), vec![0, 0, 1]);
        // and over GF(2)
        assert_eq!(
            reduced_homology_dims(&sub, PrimeField::gf2()),
            vec![0, 0, 1]
        );
    }

    #[test]
    fn sphere_homology() {
        let s2 = simplex_boundary(3).unwrap();
        let sub = restrict(&s2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(reduced_homology_dims(&sub, f()), vec![0, 0, 0, 1]);
    }

    #[test]
    fn pentagon_table_via_hochster() {
        let t = hochster_betti(&polygon(5).unwrap(), f()).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 4), 5);
        assert_eq!(t.get(2, 6), 5);
        assert_eq!(t.get(3, 10), 1);
        assert_eq!(t.totals(), vec![1, 0, 0, 5, 5, 0, 0, 1]);
    }

    #[test]
    fn hexagon_nonedges() {
        let hex = polygon(6).unwrap();
        let t = hochster_betti(&hex, f()).unwrap();
        // nine non-edge pairs: C(6,2) - 6
        assert_eq!(t.get(1, 4), 9);
        let f1 = f_vector(&hex).f(1);
        assert_eq!(t.get(1, 4) as i64, crate::util::binomial(6, 2) - f1);
    }

    #[test]
    fn simplex_boundary_only_full_set_contributes() {
        for n in 2..=4usize {
            let t = hochster_betti(&simplex_boundary(n).unwrap(), f()).unwrap();
            assert_eq!(t.get(0, 0), 1);
            assert_eq!(t.get(1, 2 * n + 2), 1);
            assert_eq!(t.iter().count(), 2);
        }
    }

    #[test]
    fn relabeling_invariance() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let k = stacked_sphere(2, 7, 5).unwrap();
        let base = hochster_betti(&k, f()).unwrap();
        for _ in 0..4 {
            let mut perm: Vec<usize> = (1..=7).collect();
            perm.shuffle(&mut rng);
            let relabeled = k.relabel(&perm).unwrap();
            assert_eq!(hochster_betti(&relabeled, f()).unwrap(), base);
        }
    }

    #[test]
    fn euler_characteristic_cross_check() {
        // For each W: sum (-1)^k dim H~_k = reduced Euler characteristic from
        // face counts (rank-nullity).
        let k = stacked_sphere(2, 6, 9).unwrap();
        let faces = k.all_faces();
        for w in 0u32..1 << 6 {
            let sub = restrict_mask(&faces, 6, w);
            let dims = reduced_homology_dims(&sub, f());
            // sign (-1)^k at homological degree k = slot - 1
            let homological: i64 = dims
                .iter()
                .enumerate()
                .map(|(slot, &d)| if slot % 2 == 1 { d as i64 } else { -(d as i64) })
                .sum();
            let combinatorial: i64 = -1
                + sub
                    .faces()
                    .map(|face| if face.count_ones() % 2 == 1 { 1 } else { -1 })
                    .sum::<i64>();
            assert_eq!(homological, combinatorial, "W = {w:#b}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let k = polygon(9).unwrap();
        assert!(matches!(
            hochster_betti_with_cap(&k, f(), 8),
            Err(Error::CapExceeded { .. })
        ));
    }
}
