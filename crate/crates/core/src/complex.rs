//! Simplicial complexes and simple-polytope combinatorics.
//!
//! A complex is stored by its inclusion-maximal faces (facets) over vertices
//! 1..m. The "polytopal" flag asserts the complex is the dual boundary
//! complex K_P of a simple polytope; it is checked up to purity and the
//! pseudomanifold condition (sphere certification is out of reach), and
//! downstream duality checks report failure rather than trusting it blindly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{binomial, k_submasks, mask_to_vertices, subset_lex_cmp, submasks, vertices_to_mask};

/// Hard cap on vertex count: faces fit one machine word as bitsets.
pub const MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<u32>,
    polytopal: bool,
    name: Option<String>,
}

impl SimplicialComplex {
    /// Validate and build a complex from 1-based vertex subsets.
    /// Duplicate and contained facets are dropped; ghost vertices (labels in
    /// 1..m missing from every facet) are rejected, not renumbered.
    pub fn build(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m == 0 || facets.is_empty() || facets.iter().any(|f| f.is_empty()) {
            return Err(Error::EmptyInput);
        }
        if m > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "m",
                got: m,
                cap: MAX_VERTICES,
            });
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            for &v in f {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            masks.push(vertices_to_mask(f));
        }
        masks.sort_unstable();
        masks.dedup();
        // antichain: drop any facet contained in another
        let kept: Vec<u32> = masks
            .iter()
            .copied()
            .filter(|&f| !masks.iter().any(|&g| g != f && f & g == f))
            .collect();
        let covered = kept.iter().fold(0u32, |acc, &f| acc | f);
        for v in 1..=m {
            if covered & (1 << (v - 1)) == 0 {
                return Err(Error::GhostVertex { vertex: v });
            }
        }
        Ok(SimplicialComplex {
            m,
            facets: kept,
            polytopal: false,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Assert a declared dimension; rejects mismatch with the actual facets.
    pub fn with_dim_hint(self, dim: usize) -> Result<Self> {
        if self.dim() != dim {
            return Err(Error::Parse(format!(
                "declared dimension {dim} but facets have dimension {}",
                self.dim()
            )));
        }
        Ok(self)
    }

    /// Flag the complex as the dual complex of a simple polytope. Checks
    /// purity and that every ridge lies in exactly two facets; sphereness
    /// itself is trusted.
    pub fn flagged_polytopal(mut self) -> Result<Self> {
        let n = self.facets[0].count_ones() as usize;
        if self.facets.iter().any(|f| f.count_ones() as usize != n) {
            return Err(Error::NotPure);
        }
        // every (n-2)-face in exactly two facets
        let mut ridge_counts = std::collections::HashMap::new();
        for &f in &self.facets {
            for r in k_submasks(f, n - 1) {
                *ridge_counts.entry(r).or_insert(0usize) += 1;
            }
        }
        if let Some((_, &count)) = ridge_counts.iter().find(|&(_, &c)| c != 2) {
            return Err(Error::NotPseudomanifold { count });
        }
        self.polytopal = true;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facet_masks(&self) -> &[u32] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<u32> = self.facets.clone();
        out.sort_by(|&a, &b| subset_lex_cmp(a, b));
        out.into_iter().map(mask_to_vertices).collect()
    }

    pub fn is_polytopal(&self) -> bool {
        self.polytopal
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Dimension of the complex (max facet size minus one).
    pub fn dim(&self) -> usize {
        self.facets
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap()
            - 1
    }

    /// n = dim + 1, the dimension of the underlying simple polytope.
    pub fn polytope_dim(&self) -> usize {
        self.dim() + 1
    }

    pub fn is_face(&self, mask: u32) -> bool {
        self.facets.iter().any(|&f| mask & f == mask)
    }

    /// All faces including the empty one, deduplicated via a 2^m bitset.
    pub fn all_faces(&self) -> Vec<u32> {
        let mut seen = vec![0u64; (1usize << self.m).div_ceil(64)];
        let mut out = Vec::new();
        for &f in &self.facets {
            for s in submasks(f) {
                let idx = s as usize;
                let (w, b) = (idx / 64, idx % 64);
                if seen[w] & (1 << b) == 0 {
                    seen[w] |= 1 << b;
                    out.push(s);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Apply a vertex relabeling given as a permutation of 1..m.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|&f| mask_to_vertices(f).into_iter().map(|v| perm[v - 1]).collect())
            .collect();
        let mut out = SimplicialComplex::build(self.m, &facets)?;
        out.polytopal = self.polytopal;
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// JSON interchange format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polytopal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl SimplicialComplex {
    /// Canonical JSON: facets sorted lexicographically.
    pub fn to_json(&self) -> String {
        let doc = ComplexJson {
            m: self.m,
            facets: self.facets(),
            polytopal: self.polytopal.then_some(true),
            name: self.name.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut k = SimplicialComplex::build(doc.m, &doc.facets)?;
        if doc.polytopal == Some(true) {
            k = k.flagged_polytopal()?;
        }
        if let Some(name) = doc.name {
            k = k.with_name(name);
        }
        Ok(k)
    }
}

// ---------------------------------------------------------------------------
// Named generators
// ---------------------------------------------------------------------------

/// The m-cycle: dual complex of a convex m-gon.
pub fn polygon(m: usize) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::Parse(format!("polygon requires m >= 3, got {m}")));
    }
    let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, i % m + 1]).collect();
    SimplicialComplex::build(m, &facets)?
        .flagged_polytopal()
        .map(|k| k.with_name(format!("polygon:{m}")))
}

/// Boundary of the n-simplex on n+1 vertices (dual complex of the simplex).
pub fn simplex_boundary(n: usize) -> Result<SimplicialComplex> {
    if n < 1 {
        return Err(Error::Parse("simplex boundary requires n >= 1".into()));
    }
    let m = n + 1;
    if m > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "m",
            got: m,
            cap: MAX_VERTICES,
        });
    }
    let all: Vec<usize> = (1..=m).collect();
    let facets: Vec<Vec<usize>> = (0..m)
        .map(|skip| {
            all.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    SimplicialComplex::build(m, &facets)?
        .flagged_polytopal()
        .map(|k| k.with_name(format!("simplex-boundary:{n}")))
}

/// Full simplex on m vertices (dual of the unbounded orthant; not polytopal).
pub fn full_simplex(m: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::build(m, &[(1..=m).collect()])
}

/// Join K1 * K2: the dual complex of the product polytope P1 x P2.
/// Vertices of K2 are shifted past those of K1.
pub fn product_dual(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    let m = k1.m + k2.m;
    if m > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "m",
            got: m,
            cap: MAX_VERTICES,
        });
    }
    let mut facets = Vec::with_capacity(k1.facets.len() * k2.facets.len());
    for &f1 in &k1.facets {
        for &f2 in &k2.facets {
            let joined = f1 | (f2 << k1.m);
            facets.push(mask_to_vertices(joined));
        }
    }
    let mut out = SimplicialComplex::build(m, &facets)?;
    if k1.polytopal && k2.polytopal {
        out = out.flagged_polytopal()?;
    }
    Ok(out)
}

/// Dual complex of the cyclic polytope C^n_k via Gale's evenness condition:
/// an n-subset S of 1..k is a facet iff every maximal run of consecutive
/// integers in S touching neither 1 nor k has even length.
pub fn cyclic_dual(n: usize, k: usize) -> Result<SimplicialComplex> {
    if n < 2 || k < n + 1 {
        return Err(Error::Parse(format!(
            "cyclic dual requires n >= 2 and k >= n+1, got n={n}, k={k}"
        )));
    }
    if k > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "m",
            got: k,
            cap: MAX_VERTICES,
        });
    }
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut facets = Vec::new();
    for s in k_submasks(full, n) {
        if gale_even(s, k) {
            facets.push(mask_to_vertices(s));
        }
    }
    SimplicialComplex::build(k, &facets)?
        .flagged_polytopal()
        .map(|c| c.with_name(format!("cyclic-dual:{n},{k}")))
}

fn gale_even(s: u32, k: usize) -> bool {
    let verts = mask_to_vertices(s);
    let mut i = 0;
    while i < verts.len() {
        let start = verts[i];
        let mut end = start;
        while i + 1 < verts.len() && verts[i + 1] == end + 1 {
            i += 1;
            end += 1;
        }
        let touches_boundary = start == 1 || end == k;
        if !touches_boundary && (end - start + 1) % 2 == 1 {
            return false;
        }
        i += 1;
    }
    true
}

/// Random stacked d-sphere on m vertices: repeated stellar subdivision of a
/// facet of the simplex boundary. Always polytopal (boundary of a stacked
/// polytope); deterministic given the seed.
pub fn stacked_sphere(d: usize, m: usize, seed: u64) -> Result<SimplicialComplex> {
    use rand::prelude::*;
    if d < 1 || m < d + 2 {
        return Err(Error::Parse(format!(
            "stacked sphere requires d >= 1 and m >= d+2, got d={d}, m={m}"
        )));
    }
    if m > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "m",
            got: m,
            cap: MAX_VERTICES,
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // d-sphere = boundary of the (d+1)-simplex on d+2 vertices
    let mut facets: Vec<u32> = simplex_boundary(d + 1)?.facets.clone();
    for v in d + 3..=m {
        let at = rng.gen_range(0..facets.len());
        let old = facets.swap_remove(at);
        let newbit = 1u32 << (v - 1);
        for drop in mask_to_vertices(old) {
            facets.push((old & !(1 << (drop - 1))) | newbit);
        }
    }
    let lists: Vec<Vec<usize>> = facets.iter().map(|&f| mask_to_vertices(f)).collect();
    SimplicialComplex::build(m, &lists)?
        .flagged_polytopal()
        .map(|k| k.with_name(format!("stacked:{d},{m},{seed}")))
}

// ---------------------------------------------------------------------------
// f- and h-vectors
// ---------------------------------------------------------------------------

/// Face counts (f_-1, f_0, ..., f_{n-1}) with f_-1 = 1; `entries[j]` is
/// f_{j-1}, the number of faces with j vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl FVector {
    /// f_i for i in -1..=n-1.
    pub fn f(&self, i: isize) -> i64 {
        let idx = i + 1;
        if idx < 0 || idx as usize >= self.entries.len() {
            0
        } else {
            self.entries[idx as usize]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVector {
    pub n: usize,
    pub entries: Vec<i64>,
}

pub fn f_vector(k: &SimplicialComplex) -> FVector {
    let n = k.polytope_dim();
    let mut entries = vec![0i64; n + 1];
    for face in k.all_faces() {
        entries[face.count_ones() as usize] += 1;
    }
    debug_assert_eq!(entries[0], 1);
    FVector { n, entries }
}

/// h_k = sum_i (-1)^{k-i} C(n-i, k-i) f_{i-1}.
pub fn f_to_h(f: &FVector) -> HVector {
    let n = f.n;
    let entries = (0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(n - i, k - i) * f.f(i as isize - 1)
                })
                .sum()
        })
        .collect();
    HVector { n, entries }
}

/// Inverse of `f_to_h`: f_{j-1} = sum_k C(n-k, n-j) h_k.
pub fn h_to_f(h: &HVector) -> FVector {
    let n = h.n;
    let entries = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|k| binomial(n - k, n - j) * h.entries[k])
                .sum()
        })
        .collect();
    FVector { n, entries }
}

// ---------------------------------------------------------------------------
// Primitive collections, neighbourliness, cube counts
// ---------------------------------------------------------------------------

/// Minimal non-faces as bitmasks, sorted lexicographically.
pub fn primitive_collection_masks(k: &SimplicialComplex) -> Vec<u32> {
    let faces = k.all_faces();
    let mut out: Vec<u32> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &face in &faces {
        for v in 1..=k.m {
            let bit = 1u32 << (v - 1);
            if face & bit != 0 {
                continue;
            }
            let cand = face | bit;
            if k.is_face(cand) || !seen.insert(cand) {
                continue;
            }
            let minimal = mask_to_vertices(cand)
                .iter()
                .all(|&w| k.is_face(cand & !(1 << (w - 1))));
            if minimal {
                out.push(cand);
            }
        }
    }
    out.sort_by(|&a, &b| subset_lex_cmp(a, b));
    out.dedup();
    out
}

/// Minimal non-faces as vertex lists, sorted lexicographically.
pub fn primitive_collections(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    primitive_collection_masks(k)
        .into_iter()
        .map(mask_to_vertices)
        .collect()
}

/// Largest q such that K is q-neighbourly: one less than the smallest
/// primitive collection. The full simplex has none and returns m
/// (degenerate case).
pub fn neighbourliness(k: &SimplicialComplex) -> usize {
    primitive_collection_masks(k)
        .iter()
        .map(|p| p.count_ones() as usize)
        .min()
        .map_or(k.m, |s| s - 1)
}

/// All degree-s monomials of the face ring k(K): exponent vectors (indexed
/// by vertex-1) whose support spans a face, in sorted order.
pub fn face_monomials(k: &SimplicialComplex, s: usize) -> Vec<Vec<u8>> {
    fn rec(
        k: &SimplicialComplex,
        cur: &mut Vec<u8>,
        from: usize,
        left: usize,
        support: u32,
        out: &mut Vec<Vec<u8>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in from..cur.len() {
            let new_support = support | 1 << v;
            if !k.is_face(new_support) {
                continue;
            }
            for e in 1..=left {
                cur[v] = e as u8;
                rec(k, cur, v + 1, left - e, new_support, out);
            }
            cur[v] = 0;
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; k.m()];
    rec(k, &mut cur, 0, s, 0, &mut out);
    out.sort();
    out
}

/// Number of k-cubes in the cubical subdivision of the polytope:
/// c_k = sum_i f_{n-i-1} C(n-i, k).
pub fn cube_counts(f: &FVector) -> Vec<i64> {
    let n = f.n;
    (0..=n)
        .map(|k| {
            (0..=n - k)
                .map(|i| f.f(n as isize - i as isize - 1) * binomial(n - i, k))
                .sum()
        })
        .collect()
}
