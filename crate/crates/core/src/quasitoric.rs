//! Characteristic functions, torus-subgroup freeness, quasitoric manifold
//! cohomology, the mod-2 small-cover search, and the diagonal-circle
//! neighbourliness criterion.

use serde::{Deserialize, Serialize};

use crate::complex::{face_monomials, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, smith_diagonal, PrimeField, SparseMatrix};
use crate::util::mask_to_vertices;

/// Default cap on the exhaustive mod-2 characteristic search.
pub const DEFAULT_SMALLCOVER_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharModulus {
    Integer,
    Mod2,
}

/// Row i is the vector assigned to facet F_i (vertex i of K): an m x n
/// integer matrix, or its mod-2 analogue with entries in {0,1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrix {
    pub modulus: CharModulus,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct CharMatrixJson {
    #[serde(rename = "mod")]
    modulus: u8,
    rows: Vec<Vec<i64>>,
}

impl CharMatrix {
    pub fn integer(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::validate_shape(&rows)?;
        Ok(CharMatrix {
            modulus: CharModulus::Integer,
            rows,
        })
    }

    pub fn mod2(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::validate_shape(&rows)?;
        if rows.iter().flatten().any(|&x| x != 0 && x != 1) {
            return Err(Error::Parse("mod-2 entries must be 0 or 1".into()));
        }
        Ok(CharMatrix {
            modulus: CharModulus::Mod2,
            rows,
        })
    }

    fn validate_shape(rows: &[Vec<i64>]) -> Result<()> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::ShapeMismatch {
                expected: "rectangular nonempty matrix".into(),
                got: "ragged or empty rows".into(),
            });
        }
        if rows.iter().any(|r| r.iter().all(|&x| x == 0)) {
            return Err(Error::Parse("characteristic rows must be nonzero".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn to_json(&self) -> String {
        let doc = CharMatrixJson {
            modulus: match self.modulus {
                CharModulus::Integer => 0,
                CharModulus::Mod2 => 2,
            },
            rows: self.rows.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CharMatrixJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match doc.modulus {
            0 => CharMatrix::integer(doc.rows),
            2 => CharMatrix::mod2(doc.rows),
            other => Err(Error::Parse(format!("unsupported modulus {other}"))),
        }
    }
}

/// An integer m x r matrix whose columns define a rank-r torus subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl SubgroupMatrix {
    /// Columns must be linearly independent over the rationals.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::ShapeMismatch {
                expected: "rectangular nonempty matrix".into(),
                got: "ragged or empty rows".into(),
            });
        }
        let r = rows[0].len();
        if r > rows.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("r <= m = {}", rows.len()),
                got: format!("r = {r}"),
            });
        }
        let rank = smith_diagonal(&rows)
            .iter()
            .filter(|d| !num_traits::Zero::is_zero(*d))
            .count();
        if rank != r {
            return Err(Error::DegenerateT);
        }
        Ok(SubgroupMatrix { rows })
    }

    /// The diagonal circle: a single column of m ones.
    pub fn diagonal_circle(m: usize) -> Self {
        SubgroupMatrix {
            rows: vec![vec![1]; m],
        }
    }

    pub fn r(&self) -> usize {
        self.rows[0].len()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            rows: &'a [Vec<i64>],
        }
        serde_json::to_string_pretty(&Doc { rows: &self.rows }).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            rows: Vec<Vec<i64>>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        SubgroupMatrix::new(doc.rows)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Facets (vertex sets of K) where the condition fails.
    pub offending: Vec<Vec<usize>>,
}

// ---------------------------------------------------------------------------
// Characteristic-function validation
// ---------------------------------------------------------------------------

/// Check that the rows at every facet of K form a basis: determinant +-1 for
/// integer matrices, nonsingular over GF(2) for mod-2 ones.
pub fn validate_characteristic(k: &SimplicialComplex, l: &CharMatrix) -> Result<Verdict> {
    if !k.is_polytopal() {
        return Err(Error::NotPolytopal("validate_characteristic"));
    }
    let n = k.polytope_dim();
    if l.rows.len() != k.m() || l.n() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{} x {n}", k.m()),
            got: format!("{} x {}", l.rows.len(), l.n()),
        });
    }
    let gf2 = PrimeField::gf2();
    let mut offending = Vec::new();
    for &facet in k.facet_masks() {
        let verts = mask_to_vertices(facet);
        let minor: Vec<Vec<i64>> = verts.iter().map(|&v| l.rows[v - 1].clone()).collect();
        let ok = match l.modulus {
            CharModulus::Integer => {
                let d = smith_diagonal(&minor);
                d.len() == n && d.iter().all(num_traits::One::is_one)
            }
            CharModulus::Mod2 => {
                let dense: Vec<Vec<u32>> = minor
                    .iter()
                    .map(|row| row.iter().map(|&x| gf2.reduce_i64(x)).collect())
                    .collect();
                let mat = SparseMatrix::from_dense(&dense, gf2);
                linalg::rank(&mat, gf2) == n
            }
        };
        if !ok {
            offending.push(verts);
        }
    }
    offending.sort();
    Ok(Verdict {
        pass: offending.is_empty(),
        offending,
    })
}

// ---------------------------------------------------------------------------
// Freeness of torus subgroups
// ---------------------------------------------------------------------------

/// The subgroup acts freely iff for every facet {i_1..i_n} of K, deleting
/// those rows of S leaves an (m-n) x r matrix whose columns span a direct
/// summand: all Smith invariant factors equal one.
pub fn freeness_check(k: &SimplicialComplex, s: &SubgroupMatrix) -> Result<Verdict> {
    if !k.is_polytopal() {
        return Err(Error::NotPolytopal("freeness_check"));
    }
    if s.rows.len() != k.m() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} rows", k.m()),
            got: format!("{}", s.rows.len()),
        });
    }
    let r = s.r();
    let mut offending = Vec::new();
    for &facet in k.facet_masks() {
        let remaining: Vec<Vec<i64>> = (1..=k.m())
            .filter(|&v| facet & (1 << (v - 1)) == 0)
            .map(|v| s.rows[v - 1].clone())
            .collect();
        let d = smith_diagonal(&remaining);
        let ok = d.len() >= r
            && d.iter().take(r).all(num_traits::One::is_one)
            && d.iter().skip(r).all(num_traits::Zero::is_zero);
        if !ok {
            offending.push(mask_to_vertices(facet));
        }
    }
    offending.sort();
    Ok(Verdict {
        pass: offending.is_empty(),
        offending,
    })
}

// ---------------------------------------------------------------------------
// Quasitoric cohomology
// ---------------------------------------------------------------------------

/// Graded dimensions of k(P)/(I+J) in degrees 0, 2, ..., 2n, where J is
/// generated by the linear forms of the characteristic matrix. Requires the
/// matrix to validate; dimension 2i then carries h_i.
pub fn quasitoric_betti(
    k: &SimplicialComplex,
    l: &CharMatrix,
    field: PrimeField,
) -> Result<Vec<usize>> {
    let verdict = validate_characteristic(k, l)?;
    if !verdict.pass {
        return Err(Error::InvalidCharacteristic(verdict.offending));
    }
    if l.modulus == CharModulus::Mod2 && field.modulus() != 2 {
        return Err(Error::Parse(
            "mod-2 characteristic matrices pair with GF(2) coefficients".into(),
        ));
    }
    let n = k.polytope_dim();
    let mut dims = Vec::with_capacity(n + 1);
    dims.push(1);
    let mut below = face_monomials(k, 0);
    for s in 1..=n {
        let here = face_monomials(k, s);
        let index: std::collections::HashMap<&Vec<u8>, usize> =
            here.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
        let mut triplets = Vec::new();
        let mut col = 0usize;
        for mono in &below {
            for j in 0..n {
                for (v, row) in l.rows.iter().enumerate() {
                    let coef = field.reduce_i64(row[j]);
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
                    triplets.push((index[&bumped], col, coef));
                }
                col += 1;
            }
        }
        let mat = SparseMatrix::from_triplets(here.len(), col, triplets, field)
            .expect("indices in range");
        dims.push(here.len() - linalg::rank(&mat, field));
        below = here;
    }
    Ok(dims)
}

// ---------------------------------------------------------------------------
// Mod-2 characteristic search (small covers)
// ---------------------------------------------------------------------------

/// Exhaustive backtracking search for a mod-2 characteristic function:
/// assign nonzero vectors of GF(2)^n to vertices, most-constrained vertex
/// first, pruning as soon as any fully assigned facet becomes singular.
/// Returns the first witness in the fixed search order, or None once the
/// space is exhausted.
pub fn search_mod2_characteristic(k: &SimplicialComplex) -> Result<Option<CharMatrix>> {
    search_mod2_with_cap(k, DEFAULT_SMALLCOVER_CAP)
}

pub fn search_mod2_with_cap(
    k: &SimplicialComplex,
    cap: usize,
) -> Result<Option<CharMatrix>> {
    if !k.is_polytopal() {
        return Err(Error::NotPolytopal("search_mod2_characteristic"));
    }
    let m = k.m();
    if m > cap {
        return Err(Error::CapExceeded {
            what: "smallcover m",
            got: m,
            cap,
        });
    }
    let n = k.polytope_dim();
    // vertices ordered by facet degree, descending
    let mut order: Vec<usize> = (1..=m).collect();
    let degree = |v: usize| {
        k.facet_masks()
            .iter()
            .filter(|&&f| f & (1 << (v - 1)) != 0)
            .count()
    };
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));
    let position: Vec<usize> = {
        let mut pos = vec![0usize; m + 1];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    // facets become checkable once their last-ordered vertex is assigned
    let mut check_at: Vec<Vec<u32>> = vec![Vec::new(); m];
    for &facet in k.facet_masks() {
        let last = mask_to_vertices(facet)
            .iter()
            .map(|&v| position[v])
            .max()
            .expect("nonempty facet");
        check_at[last].push(facet);
    }

    let candidates: Vec<u32> = (1..(1u32 << n)).collect();
    let mut assignment = vec![0u32; m + 1]; // vertex -> GF(2)^n vector

    fn independent(vectors: &[u32]) -> bool {
        let mut basis: Vec<u32> = Vec::new();
        for &v in vectors {
            let mut x = v;
            for &b in &basis {
                let pivot = 1u32 << (31 - b.leading_zeros());
                if x & pivot != 0 {
                    x ^= b;
                }
            }
            if x == 0 {
                return false;
            }
            basis.push(x);
        }
        true
    }

    fn backtrack(
        depth: usize,
        order: &[usize],
        check_at: &[Vec<u32>],
        candidates: &[u32],
        assignment: &mut Vec<u32>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for &cand in candidates {
            assignment[v] = cand;
            let ok = check_at[depth].iter().all(|&facet| {
                let vs: Vec<u32> = mask_to_vertices(facet)
                    .iter()
                    .map(|&w| assignment[w])
                    .collect();
                independent(&vs)
            });
            if ok && backtrack(depth + 1, order, check_at, candidates, assignment) {
                return true;
            }
        }
        assignment[v] = 0;
        false
    }

    if backtrack(0, &order, &check_at, &candidates, &mut assignment) {
        let rows: Vec<Vec<i64>> = (1..=m)
            .map(|v| {
                (0..n)
                    .map(|j| i64::from(assignment[v] >> j & 1))
                    .collect()
            })
            .collect();
        Ok(Some(CharMatrix::mod2(rows)?))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Diagonal circle and neighbourliness
// ---------------------------------------------------------------------------

/// Whether the q-th power of the degree-two class survives in
/// k(P)/(v_1 = ... = v_m): true exactly when K is q-neighbourly.
pub fn diagonal_power_check(k: &SimplicialComplex, q: usize, field: PrimeField) -> bool {
    if q == 0 {
        return true;
    }
    let m = k.m();
    let here = face_monomials(k, q);
    let index: std::collections::HashMap<&Vec<u8>, usize> =
        here.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
    let below = face_monomials(k, q - 1);
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for mono in &below {
        for i in 0..m - 1 {
            // the column of (v_i - v_m) * mono
            let mut col = vec![0u32; here.len()];
            for (v, sign) in [(i, false), (m - 1, true)] {
                let mut bumped = mono.clone();
                bumped[v] += 1;
                let support = bumped
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (w, &e)| if e > 0 { acc | 1 << w } else { acc });
                if !k.is_face(support) {
                    continue;
                }
                let val = if sign { field.neg(1) } else { 1 };
                let slot = &mut col[index[&bumped]];
                *slot = field.add(*slot, val);
            }
            cols.push(col);
        }
    }
    // v_m^q as the reference representative of the diagonal class power
    let mut target = vec![0u32; here.len()];
    let mut vmq = vec![0u8; m];
    vmq[m - 1] = q as u8;
    target[index[&vmq]] = 1;
    linalg::solve_in_span(&cols, &target, field).is_none()
}
