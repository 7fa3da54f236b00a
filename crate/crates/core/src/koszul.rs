//! The reduced Koszul complex A of a face ring and everything computed from
//! it: bigraded Betti numbers, cohomology representatives, cup products, the
//! fundamental class and Poincaré pairing, quotient cohomology for torus
//! subgroups, and homotopy-group generators.
//!
//! A is spanned by monomials v_sigma (x) u_tau with sigma a face disjoint
//! from tau; bideg v_i = (0,2), bideg u_i = (-1,2). The differential moves a
//! u-index into the v-part when the enlarged set is still a face:
//!
//!   d(v_sigma (x) u_{j_1..j_q}) =
//!     sum_k (-1)^{k+1} [sigma + j_k is a face] v_{sigma+j_k} (x) u_{..^j_k..}
//!
//! The sign convention (ascending tau, k-th removal carries (-1)^{k+1}) is
//! fixed for reproducibility; any consistent derivation convention yields the
//! same Betti numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::complex::{f_vector, face_monomials, FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, PrimeField, SparseMatrix};
use crate::util::{binomial, k_submasks, mask_to_vertices, subset_lex_cmp, vertices_to_mask};

/// Refuse Koszul computations whose total basis (counted exactly from the
/// f-vector) exceeds this many monomials.
pub const KOSZUL_BASIS_LIMIT: i64 = 20_000_000;

/// Default vertex cap per field: GF(2) elimination is cheap enough for 14.
pub fn default_cap_m(field: PrimeField) -> usize {
    if field.modulus() == 2 {
        14
    } else {
        12
    }
}

/// A basis monomial v_sigma (x) u_tau of the reduced complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KoszulMonomial {
    pub sigma: u32,
    pub tau: u32,
}

impl KoszulMonomial {
    /// Bidegree (-q, 2r) with q = |tau|, r = |sigma| + |tau|.
    pub fn bidegree(self) -> (i64, usize) {
        let q = self.tau.count_ones() as usize;
        let r = q + self.sigma.count_ones() as usize;
        (-(q as i64), 2 * r)
    }

    pub fn sigma_vertices(self) -> Vec<usize> {
        mask_to_vertices(self.sigma)
    }

    pub fn tau_vertices(self) -> Vec<usize> {
        mask_to_vertices(self.tau)
    }
}

/// A field-coefficient combination of Koszul monomials in one bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulCochain {
    field: PrimeField,
    q: usize,
    two_r: usize,
    terms: BTreeMap<(u32, u32), u32>,
}

impl KoszulCochain {
    pub fn zero(field: PrimeField, q: usize, two_r: usize) -> Self {
        KoszulCochain {
            field,
            q,
            two_r,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(field: PrimeField) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0u32, 0u32), 1u32);
        KoszulCochain {
            field,
            q: 0,
            two_r: 0,
            terms,
        }
    }

    /// The basis monomial itself as a cochain with coefficient one.
    pub fn from_monomial(
        k: &SimplicialComplex,
        field: PrimeField,
        mono: KoszulMonomial,
    ) -> Result<Self> {
        Self::from_terms(
            k,
            field,
            &[(mono.sigma_vertices(), mono.tau_vertices(), 1)],
        )
    }

    /// Build from (sigma, tau, coefficient) triples of 1-based vertex lists.
    /// Every sigma must span a face disjoint from its tau, and all terms must
    /// share one bidegree.
    pub fn from_terms(
        k: &SimplicialComplex,
        field: PrimeField,
        terms: &[(Vec<usize>, Vec<usize>, i64)],
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyInput);
        }
        let q = terms[0].1.len();
        let two_r = 2 * (terms[0].0.len() + q);
        let mut out = KoszulCochain::zero(field, q, two_r);
        for (sv, tv, c) in terms {
            for &v in sv.iter().chain(tv.iter()) {
                if v == 0 || v > k.m() {
                    return Err(Error::VertexOutOfRange { vertex: v, m: k.m() });
                }
            }
            let sigma = vertices_to_mask(sv);
            let tau = vertices_to_mask(tv);
            if sigma & tau != 0 || !k.is_face(sigma) {
                return Err(Error::Parse(format!(
                    "invalid monomial v{sv:?} u{tv:?}: sigma must be a face disjoint from tau"
                )));
            }
            if tv.len() != q || 2 * (sv.len() + tv.len()) != two_r {
                return Err(Error::Parse("mixed bidegrees in cochain".into()));
            }
            out.accumulate(sigma, tau, field.reduce_i64(*c));
        }
        Ok(out)
    }

    fn accumulate(&mut self, sigma: u32, tau: u32, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry((sigma, tau)).or_insert(0);
        *e = self.field.add(*e, coeff);
        if *e == 0 {
            self.terms.remove(&(sigma, tau));
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Bidegree (-q, 2r).
    pub fn bidegree(&self) -> (i64, usize) {
        (-(self.q as i64), self.two_r)
    }

    /// Totalized cohomological degree 2r - q.
    pub fn total_degree(&self) -> usize {
        self.two_r - self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (KoszulMonomial, u32)> + '_ {
        self.terms
            .iter()
            .map(|(&(sigma, tau), &c)| (KoszulMonomial { sigma, tau }, c))
    }

    pub fn scaled(&self, factor: u32) -> Self {
        let mut out = KoszulCochain::zero(self.field, self.q, self.two_r);
        for (&key, &c) in &self.terms {
            let v = self.field.mul(c, factor);
            if v != 0 {
                out.terms.insert(key, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &KoszulCochain) -> Self {
        let mut out = self.clone();
        for (&(s, t), &c) in &other.terms {
            out.accumulate(s, t, other.field.neg(c));
        }
        out
    }
}

impl fmt::Display for KoszulCochain {
    /// Signed monomial sum with ascending indices, e.g. `+v1v2u3u4u5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            subset_lex_cmp(a.0, b.0).then_with(|| subset_lex_cmp(a.1, b.1))
        });
        for (s, t) in keys {
            let c = self.field.balanced(self.terms[&(s, t)]);
            let sign = if c < 0 { '-' } else { '+' };
            write!(f, "{sign}")?;
            let mag = c.unsigned_abs();
            if mag != 1 || (s == 0 && t == 0) {
                write!(f, "{mag}")?;
            }
            for v in mask_to_vertices(s) {
                write!(f, "v{v}")?;
            }
            for v in mask_to_vertices(t) {
                write!(f, "u{v}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Strata and the differential
// ---------------------------------------------------------------------------

/// dim A^{-q,2r} by the closed formula f_{r-q-1} * C(m-r+q, q).
pub fn stratum_dimension(f: &FVector, m: usize, q: usize, r: usize) -> i64 {
    if q > m || r > m || r < q || m + q < r {
        return 0;
    }
    f.f(r as isize - q as isize - 1) * binomial(m - r + q, q)
}

fn faces_by_size(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); k.polytope_dim() + 1];
    for face in k.all_faces() {
        by_size[face.count_ones() as usize].push(face);
    }
    for group in &mut by_size {
        group.sort_by(|&a, &b| subset_lex_cmp(a, b));
    }
    by_size
}

fn stratum_from(faces: &[Vec<u32>], m: usize, q: usize, r: usize) -> Vec<(u32, u32)> {
    if r < q {
        return Vec::new();
    }
    let s = r - q;
    if s >= faces.len() {
        return Vec::new();
    }
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut out = Vec::new();
    for &sigma in &faces[s] {
        let mut taus = k_submasks(full & !sigma, q);
        taus.sort_by(|&a, &b| subset_lex_cmp(a, b));
        for tau in taus {
            out.push((sigma, tau));
        }
    }
    out
}

/// Basis monomials of A^{-q,2r} sorted by (sigma lex, tau lex).
pub fn stratum_basis(k: &SimplicialComplex, q: usize, r: usize) -> Vec<KoszulMonomial> {
    stratum_from(&faces_by_size(k), k.m(), q, r)
        .into_iter()
        .map(|(sigma, tau)| KoszulMonomial { sigma, tau })
        .collect()
}

fn monomial_differential(
    k: &SimplicialComplex,
    sigma: u32,
    tau: u32,
) -> Vec<((u32, u32), bool)> {
    // ((sigma', tau'), negative?)
    let mut out = Vec::new();
    let mut rest = tau;
    let mut pos = 0usize;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        pos += 1;
        let bigger = sigma | bit;
        if k.is_face(bigger) {
            out.push(((bigger, tau & !bit), pos % 2 == 0));
        }
    }
    out
}

/// The Koszul differential of a cochain; bidegree shifts by (1, 0).
pub fn differential(k: &SimplicialComplex, c: &KoszulCochain) -> KoszulCochain {
    let field = c.field;
    let mut out = KoszulCochain::zero(field, c.q.saturating_sub(1), c.two_r);
    for (&(sigma, tau), &coeff) in &c.terms {
        for ((s2, t2), neg) in monomial_differential(k, sigma, tau) {
            let v = if neg { field.neg(coeff) } else { coeff };
            out.accumulate(s2, t2, v);
        }
    }
    out
}

pub fn is_cocycle(k: &SimplicialComplex, c: &KoszulCochain) -> bool {
    differential(k, c).is_zero()
}

fn diff_matrix(
    k: &SimplicialComplex,
    field: PrimeField,
    src: &[(u32, u32)],
    dst: &[(u32, u32)],
) -> SparseMatrix {
    let index: HashMap<(u32, u32), usize> =
        dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut triplets = Vec::new();
    for (col, &(sigma, tau)) in src.iter().enumerate() {
        for (target, neg) in monomial_differential(k, sigma, tau) {
            let row = index[&target];
            let v = if neg { field.neg(1) } else { 1 };
            triplets.push((row, col, v));
        }
    }
    SparseMatrix::from_triplets(dst.len(), src.len(), triplets, field).expect("in range")
}

// ---------------------------------------------------------------------------
// Bigraded Betti numbers
// ---------------------------------------------------------------------------

/// Estimated total basis size of A (exact, from the f-vector).
pub fn basis_estimate(k: &SimplicialComplex) -> i64 {
    let f = f_vector(k);
    let m = k.m();
    (0..=f.n)
        .map(|j| f.f(j as isize - 1) * (1i64 << (m - j)))
        .sum()
}

pub fn koszul_betti(k: &SimplicialComplex, field: PrimeField) -> Result<BettiTable> {
    koszul_betti_with_cap(k, field, default_cap_m(field))
}

pub fn koszul_betti_with_cap(
    k: &SimplicialComplex,
    field: PrimeField,
    cap_m: usize,
) -> Result<BettiTable> {
    if k.m() > cap_m {
        return Err(Error::CapExceeded {
            what: "koszul m",
            got: k.m(),
            cap: cap_m,
        });
    }
    let est = basis_estimate(k);
    if est > KOSZUL_BASIS_LIMIT {
        return Err(Error::CapExceeded {
            what: "koszul basis size",
            got: est as usize,
            cap: KOSZUL_BASIS_LIMIT as usize,
        });
    }
    let m = k.m();
    let n = k.polytope_dim();
    let faces = faces_by_size(k);

    // Internal degrees 2r are independent complexes; compute them in parallel.
    let per_r: Vec<Vec<(usize, usize, usize)>> = (0..=m)
        .into_par_iter()
        .map(|r| {
            let q_lo = r.saturating_sub(n);
            let mut entries = Vec::new();
            let mut strata: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
            for q in q_lo..=r {
                strata.insert(q, stratum_from(&faces, m, q, r));
            }
            let empty: Vec<(u32, u32)> = Vec::new();
            let mut rank_out: BTreeMap<usize, usize> = BTreeMap::new();
            for q in q_lo..=r {
                let src = &strata[&q];
                if src.is_empty() {
                    rank_out.insert(q, 0);
                    continue;
                }
                let dst = if q == 0 {
                    &empty
                } else {
                    strata.get(&(q - 1)).unwrap_or(&empty)
                };
                let mat = diff_matrix(k, field, src, dst);
                rank_out.insert(q, linalg::rank(&mat, field));
            }
            for q in q_lo..=r {
                let dim = strata[&q].len();
                if dim == 0 {
                    continue;
                }
                let out = rank_out[&q];
                let into = rank_out.get(&(q + 1)).copied().unwrap_or(0);
                let b = dim - out - into;
                if b > 0 {
                    entries.push((q, 2 * r, b));
                }
            }
            entries
        })
        .collect();

    let mut table = BettiTable::new(m, n);
    for entries in per_r {
        for (q, two_r, b) in entries {
            table.add(q, two_r, b);
        }
    }
    Ok(table)
}

/// Cocycle representatives of a basis of the cohomology at bidegree
/// (-q, 2r), echelon-normalized against the coboundary space for
/// run-to-run determinism.
pub fn cohomology_basis(
    k: &SimplicialComplex,
    field: PrimeField,
    q: usize,
    r: usize,
) -> Result<Vec<KoszulCochain>> {
    let est = basis_estimate(k);
    if est > KOSZUL_BASIS_LIMIT {
        return Err(Error::CapExceeded {
            what: "koszul basis size",
            got: est as usize,
            cap: KOSZUL_BASIS_LIMIT as usize,
        });
    }
    let faces = faces_by_size(k);
    let m = k.m();
    let here = stratum_from(&faces, m, q, r);
    if here.is_empty() {
        return Ok(Vec::new());
    }
    let below = if q == 0 {
        Vec::new()
    } else {
        stratum_from(&faces, m, q - 1, r)
    };
    let above = stratum_from(&faces, m, q + 1, r);
    let d_out = diff_matrix(k, field, &here, &below);
    let d_in = diff_matrix(k, field, &above, &here);
    let reps = linalg::cokernel_basis(&d_in, &d_out, field)?;
    Ok(reps
        .into_iter()
        .map(|v| {
            let mut c = KoszulCochain::zero(field, q, 2 * r);
            for (i, &x) in v.iter().enumerate() {
                if x != 0 {
                    c.terms.insert(here[i], x);
                }
            }
            c
        })
        .collect())
}

/// Whether the class of `c` vanishes (c is a coboundary).
pub fn is_coboundary(k: &SimplicialComplex, field: PrimeField, c: &KoszulCochain) -> Result<bool> {
    if !is_cocycle(k, c) {
        return Err(Error::NotACocycle);
    }
    if c.is_zero() {
        return Ok(true);
    }
    let faces = faces_by_size(k);
    let m = k.m();
    let r = c.two_r / 2;
    let here = stratum_from(&faces, m, c.q, r);
    let index: HashMap<(u32, u32), usize> =
        here.iter().enumerate().map(|(i, &mono)| (mono, i)).collect();
    let mut target = vec![0u32; here.len()];
    for (&key, &v) in &c.terms {
        target[index[&key]] = v;
    }
    let above = stratum_from(&faces, m, c.q + 1, r);
    let d_in = diff_matrix(k, field, &above, &here);
    let cols: Vec<Vec<u32>> = {
        let dense = d_in.to_dense();
        (0..above.len())
            .map(|j| (0..here.len()).map(|i| dense[i][j]).collect())
            .collect()
    };
    Ok(linalg::solve_in_span(&cols, &target, field).is_some())
}

/// Whether two cocycles represent the same cohomology class.
pub fn classes_equal(
    k: &SimplicialComplex,
    field: PrimeField,
    a: &KoszulCochain,
    b: &KoszulCochain,
) -> Result<bool> {
    if a.bidegree() != b.bidegree() {
        return Ok(false);
    }
    is_coboundary(k, field, &a.sub(b))
}

// ---------------------------------------------------------------------------
// Cup products
// ---------------------------------------------------------------------------

// Monomials of the ambient complex k(P) (x) Lambda[u]: exponents up to 3 are
// packed two bits per vertex. Products of square-free cochains and their
// homotopy reductions never exceed exponent 2.
type BigTerm = (u64, u32);

fn pack_squarefree(mask: u32) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros();
        out |= 1u64 << (2 * v);
        m &= m - 1;
    }
    out
}

fn exp_at(exps: u64, v0: u32) -> u64 {
    (exps >> (2 * v0)) & 3
}

fn support(exps: u64, m: usize) -> u32 {
    let mut out = 0u32;
    for v0 in 0..m as u32 {
        if exp_at(exps, v0) != 0 {
            out |= 1 << v0;
        }
    }
    out
}

fn big_differential(k: &SimplicialComplex, exps: u64, tau: u32) -> Vec<(BigTerm, bool)> {
    let mut out = Vec::new();
    let mut rest = tau;
    let mut pos = 0usize;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest &= rest - 1;
        pos += 1;
        let v0 = bit.trailing_zeros();
        let new_exps = exps + (1u64 << (2 * v0));
        if k.is_face(support(new_exps, k.m())) {
            out.push(((new_exps, tau & !bit), pos % 2 == 0));
        }
    }
    out
}

/// Cup product of two cocycles, reduced to a representative inside A.
///
/// Termwise: overlapping u-parts kill a term, the u-shuffle contributes its
/// sign, and v-parts multiply in the face ring (non-face support is zero).
/// Terms that leave A (a squared v) are rewritten modulo coboundaries by the
/// variable-by-variable contraction v_j^2 -> v_j u_j; one sweep per vertex
/// lands the cocycle back in A.
pub fn cup_product(
    k: &SimplicialComplex,
    field: PrimeField,
    a: &KoszulCochain,
    b: &KoszulCochain,
) -> Result<KoszulCochain> {
    if !is_cocycle(k, a) || !is_cocycle(k, b) {
        return Err(Error::NotACocycle);
    }
    let q = a.q + b.q;
    let two_r = a.two_r + b.two_r;
    let mut big: BTreeMap<BigTerm, u32> = BTreeMap::new();
    let acc = |map: &mut BTreeMap<BigTerm, u32>, key: BigTerm, v: u32| {
        if v == 0 {
            return;
        }
        let e = map.entry(key).or_insert(0);
        *e = field.add(*e, v);
        if *e == 0 {
            map.remove(&key);
        }
    };

    for (&(s1, t1), &c1) in &a.terms {
        for (&(s2, t2), &c2) in &b.terms {
            if t1 & t2 != 0 {
                continue;
            }
            if !k.is_face(s1 | s2) {
                continue;
            }
            // shuffle sign: inversions between the ascending tau lists
            let mut inversions = 0u32;
            let mut rest = t1;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                inversions += (t2 & (bit - 1)).count_ones();
            }
            let mut coeff = field.mul(c1, c2);
            if inversions % 2 == 1 {
                coeff = field.neg(coeff);
            }
            let exps = pack_squarefree(s1) + pack_squarefree(s2);
            acc(&mut big, (exps, t1 | t2), coeff);
        }
    }

    // Homotopy sweep: after pass j the cochain has no v_j^2 and no v_j u_j.
    for v0 in 0..k.m() as u32 {
        let mut correction: BTreeMap<BigTerm, u32> = BTreeMap::new();
        for (&(exps, tau), &c) in &big {
            if exp_at(exps, v0) >= 2 && tau & (1 << v0) == 0 {
                let below = ((1u32 << v0) - 1) & tau;
                let mut v = c;
                if below.count_ones() % 2 == 1 {
                    v = field.neg(v);
                }
                acc(
                    &mut correction,
                    (exps - (1u64 << (2 * v0)), tau | (1 << v0)),
                    v,
                );
            }
        }
        if correction.is_empty() {
            continue;
        }
        for (&(exps, tau), &c) in correction.iter() {
            for ((e2, t2), neg) in big_differential(k, exps, tau) {
                let v = if neg { field.neg(c) } else { c };
                acc(&mut big, (e2, t2), field.neg(v));
            }
        }
    }

    let mut out = KoszulCochain::zero(field, q, two_r);
    for (&(exps, tau), &c) in &big {
        let sigma = support(exps, k.m());
        debug_assert!(
            sigma & tau == 0 && pack_squarefree(sigma) == exps,
            "reduction left the subcomplex A"
        );
        out.accumulate(sigma, tau, c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Fundamental class and Poincaré pairing
// ---------------------------------------------------------------------------

/// The cocycle v_{i_1..i_n} (x) u_{complement} on the lexicographically first
/// facet; spans the one-dimensional top stratum (-(m-n), 2m).
pub fn fundamental_class(k: &SimplicialComplex, field: PrimeField) -> Result<KoszulCochain> {
    if !k.is_polytopal() {
        return Err(Error::NotPolytopal("fundamental_class"));
    }
    let m = k.m();
    let n = k.polytope_dim();
    let faces = faces_by_size(k);
    let top = stratum_from(&faces, m, m - n, m);
    let below = stratum_from(&faces, m, m - n + 1, m);
    let d_in = diff_matrix(k, field, &below, &top);
    let b_top = top.len() - linalg::rank(&d_in, field);
    if b_top != 1 {
        return Err(Error::TopStratumNotOneDimensional { dim: b_top });
    }
    let full = (1u32 << m) - 1;
    let first_facet = *k
        .facet_masks()
        .iter()
        .min_by(|&&a, &&b| subset_lex_cmp(a, b))
        .expect("nonempty");
    let mut c = KoszulCochain::zero(field, m - n, 2 * m);
    c.terms.insert((first_facet, full & !first_facet), 1);
    Ok(c)
}

/// Coefficient of the class of a top-stratum cocycle against the fundamental
/// class.
pub fn express_against_fundamental(
    k: &SimplicialComplex,
    field: PrimeField,
    c: &KoszulCochain,
) -> Result<u32> {
    let m = k.m();
    let n = k.polytope_dim();
    let fund = fundamental_class(k, field)?;
    if c.bidegree() != fund.bidegree() {
        return Err(Error::ShapeMismatch {
            expected: format!("bidegree {:?}", fund.bidegree()),
            got: format!("{:?}", c.bidegree()),
        });
    }
    let faces = faces_by_size(k);
    let top = stratum_from(&faces, m, m - n, m);
    let index: HashMap<(u32, u32), usize> =
        top.iter().enumerate().map(|(i, &mono)| (mono, i)).collect();
    let below = stratum_from(&faces, m, m - n + 1, m);
    let d_in = diff_matrix(k, field, &below, &top);
    let dense = d_in.to_dense();
    let mut cols: Vec<Vec<u32>> = (0..below.len())
        .map(|j| (0..top.len()).map(|i| dense[i][j]).collect())
        .collect();
    let mut fund_vec = vec![0u32; top.len()];
    for (&key, &v) in &fund.terms {
        fund_vec[index[&key]] = v;
    }
    cols.push(fund_vec);
    let mut target = vec![0u32; top.len()];
    for (&key, &v) in &c.terms {
        target[index[&key]] = v;
    }
    let solution =
        linalg::solve_in_span(&cols, &target, field).ok_or(Error::SingularPairing)?;
    Ok(*solution.last().expect("fund column present"))
}

/// Matrix of the Poincaré pairing H^{-q,2r} x H^{-(m-n-q),2(m-r)} -> k,
/// entries expressed against the fundamental class. Errors with
/// `SingularPairing` when the pairing degenerates (non-sphere input).
pub fn pairing_matrix(
    k: &SimplicialComplex,
    field: PrimeField,
    q: usize,
    r: usize,
) -> Result<Vec<Vec<u32>>> {
    if !k.is_polytopal() {
        return Err(Error::NotPolytopal("pairing_matrix"));
    }
    let m = k.m();
    let n = k.polytope_dim();
    if q > m - n || r > m {
        return Err(Error::ShapeMismatch {
            expected: format!("q <= {}, r <= {m}", m - n),
            got: format!("q={q}, r={r}"),
        });
    }
    let left = cohomology_basis(k, field, q, r)?;
    let right = cohomology_basis(k, field, m - n - q, m - r)?;
    if left.len() != right.len() {
        return Err(Error::SingularPairing);
    }
    let size = left.len();
    let mut mat = vec![vec![0u32; size]; size];
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let prod = cup_product(k, field, a, b)?;
            mat[i][j] = if prod.is_zero() {
                0
            } else {
                express_against_fundamental(k, field, &prod)?
            };
        }
    }
    let mut probe = mat.clone();
    let (rank, _) = linalg::rref_in_place(&mut probe, field);
    if rank != size {
        return Err(Error::SingularPairing);
    }
    Ok(mat)
}

// ---------------------------------------------------------------------------
// Quotient cohomology for torus subgroups (rows t_i of an integer matrix)
// ---------------------------------------------------------------------------

/// Graded dimensions of H^*(Y_(r)) for the quotient of the moment-angle
/// manifold by the rank-r subgroup with kernel-basis rows `t`: the cohomology
/// of k(P) (x) Lambda[u_1..u_{m-r}] with d(u_i) = t_{i1} v_1 + ... + t_{im} v_m,
/// truncated to total degree <= max_total_degree.
pub fn quotient_betti(
    k: &SimplicialComplex,
    t: &[Vec<i64>],
    field: PrimeField,
    max_total_degree: usize,
) -> Result<Vec<usize>> {
    let m = k.m();
    let rows = t.len();
    if rows > m || t.iter().any(|row| row.len() != m) {
        return Err(Error::ShapeMismatch {
            expected: format!("(m-r) x {m} with m-r <= {m}"),
            got: format!("{} x {}", rows, t.first().map_or(0, |r| r.len())),
        });
    }
    let rational_rank = linalg::smith_diagonal(t)
        .iter()
        .filter(|d| !num_traits::Zero::is_zero(*d))
        .count();
    if rational_rank != rows {
        return Err(Error::DegenerateT);
    }
    // the quotient manifold has dimension n + rows = m + n - r
    let manifold_dim = k.polytope_dim() + rows;
    if max_total_degree > manifold_dim {
        return Err(Error::CapExceeded {
            what: "quotient total degree",
            got: max_total_degree,
            cap: manifold_dim,
        });
    }
    let max_internal = max_total_degree + rows; // 2j <= max_total + (m-r)
    let mut dims = vec![0usize; max_total_degree + 1];

    // The complex splits by internal degree 2j.
    let per_j: Vec<Vec<(usize, usize)>> = (0..=max_internal / 2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let mut levels: Vec<Vec<(Vec<u8>, u32)>> = Vec::new(); // (exponents, u-set)
            let q_hi = rows.min(j);
            for q in 0..=q_hi {
                let mut level = Vec::new();
                let monos = face_monomials(k, j - q);
                let full = if rows == 0 { 0 } else { (1u32 << rows) - 1 };
                for tau in k_submasks(full, q) {
                    for mono in &monos {
                        level.push((mono.clone(), tau));
                    }
                }
                levels.push(level);
            }
            let mut rank_out = vec![0usize; q_hi + 2];
            for q in 1..=q_hi {
                rank_out[q] = quotient_diff_rank(k, t, field, &levels[q], &levels[q - 1]);
            }
            let mut out = Vec::new();
            for q in 0..=q_hi {
                let dim = levels[q].len();
                let into = if q < q_hi { rank_out[q + 1] } else { 0 };
                let b = dim - rank_out[q] - into;
                if b > 0 && 2 * j >= q {
                    out.push((2 * j - q, b));
                }
            }
            out
        })
        .collect();

    for entries in per_j {
        for (deg, b) in entries {
            if deg <= max_total_degree {
                dims[deg] += b;
            }
        }
    }
    Ok(dims)
}

fn quotient_diff_rank(
    k: &SimplicialComplex,
    t: &[Vec<i64>],
    field: PrimeField,
    src: &[(Vec<u8>, u32)],
    dst: &[(Vec<u8>, u32)],
) -> usize {
    if src.is_empty() || dst.is_empty() {
        return 0;
    }
    let index: HashMap<(Vec<u8>, u32), usize> = dst
        .iter()
        .enumerate()
        .map(|(i, mono)| (mono.clone(), i))
        .collect();
    let mut triplets = Vec::new();
    for (col, (mono, tau)) in src.iter().enumerate() {
        let mut rest = *tau;
        let mut pos = 0usize;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            pos += 1;
            let ui = bit.trailing_zeros() as usize; // row index into t
            for (v, &coef) in t[ui].iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let mut bumped = mono.clone();
                bumped[v] += 1;
                let support = bumped
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &e)| if e > 0 { acc | 1 << i } else { acc });
                if !k.is_face(support) {
                    continue;
                }
                let mut val = field.reduce_i64(coef);
                if pos % 2 == 0 {
                    val = field.neg(val);
                }
                if val != 0 {
                    triplets.push((index[&(bumped, tau & !bit)], col, val));
                }
            }
        }
    }
    let mat = SparseMatrix::from_triplets(dst.len(), src.len(), triplets, field)
        .expect("indices in range");
    linalg::rank(&mat, field)
}

// ---------------------------------------------------------------------------
// Homotopy-group generators
// ---------------------------------------------------------------------------

/// (q, generators) where q is the neighbourliness and the generators are the
/// primitive collections of size q+1: a basis of pi_{2q+1} of the
/// moment-angle manifold.
pub fn pi_generators(k: &SimplicialComplex) -> (usize, Vec<Vec<usize>>) {
    let q = crate::complex::neighbourliness(k);
    let gens = crate::complex::primitive_collections(k)
        .into_iter()
        .filter(|p| p.len() == q + 1)
        .collect();
    (q, gens)
}
