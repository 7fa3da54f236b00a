//! Exact linear algebra: prime-field arithmetic, sparse rank and cokernel
//! bases over GF(p), and integer Smith normal form.
//!
//! All computations are exact. Field elimination works mod p; the Smith form
//! uses integer arithmetic with automatic promotion to arbitrary precision,
//! never modular reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A prime field GF(p). Supported moduli: 2 and odd primes below 2^31.
/// Elements are `u32` values reduced to `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

/// Default odd modulus, large enough that random small complexes rarely hit
/// characteristic-dependent torsion.
pub const DEFAULT_PRIME: u32 = 32003;

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (p > 2 && p % 2 == 0) || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn gf2() -> Self {
        PrimeField { p: 2 }
    }

    pub const fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary signed integer into `0..p`.
    pub fn reduce_i64(self, x: i64) -> u32 {
        let r = x.rem_euclid(self.p as i64);
        r as u32
    }

    /// Balanced representative in `-(p-1)/2 ..= (p-1)/2` (for display).
    pub fn balanced(self, a: u32) -> i64 {
        if self.p > 2 && a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Sparse matrix over a prime field: only nonzero entries are stored,
/// one per (row, col).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, u32)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Build from triplets; duplicate positions are summed mod p and zeros
    /// dropped, so the stored form satisfies the no-dup/no-zero invariant.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u32)>,
        field: PrimeField,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::ShapeMismatch {
                    expected: format!("{rows}x{cols}"),
                    got: format!("entry at ({r},{c})"),
                });
            }
            let e = acc.entry((r, c)).or_insert(0);
            *e = field.add(*e, v % field.modulus());
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(SparseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_dense(dense: &[Vec<u32>], field: PrimeField) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let v = v % field.modulus();
                if v != 0 {
                    entries.push((r, c, v));
                }
            }
        }
        SparseMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<(usize, usize, u32)> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable();
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, u32)] {
        &self.entries
    }

    /// Matrix-vector product over the field.
    pub fn apply(&self, x: &[u32], field: PrimeField) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.cols);
        let mut y = vec![0u32; self.rows];
        for &(r, c, v) in &self.entries {
            y[r] = field.add(y[r], field.mul(v, x[c]));
        }
        y
    }
}

/// Exact rank over GF(p).
///
/// Sparse elimination picks pivots by a Markowitz-style count (sparsest
/// active row, then least-populated column within it) and falls back to
/// dense elimination once fill-in of the active submatrix exceeds 30%.
pub fn rank(m: &SparseMatrix, field: PrimeField) -> usize {
    let mut rows: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); m.rows];
    for &(r, c, v) in &m.entries {
        rows[r].insert(c, v);
    }
    let mut col_count = vec![0usize; m.cols];
    for row in &rows {
        for &c in row.keys() {
            col_count[c] += 1;
        }
    }
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut rank = 0usize;

    loop {
        let live: Vec<usize> = (0..m.rows).filter(|&i| active[i]).collect();
        if live.is_empty() {
            return rank;
        }
        let nnz: usize = live.iter().map(|&i| rows[i].len()).sum();
        let live_cols = col_count.iter().filter(|&&c| c > 0).count();
        // Dense fallback once fill-in of the active block passes 30%,
        // bounded so the dense copy stays within 64 MB.
        if live.len() > 64
            && nnz * 10 > 3 * live.len() * live_cols.max(1)
            && live.len() * live_cols <= 16_000_000
        {
            let col_map: Vec<usize> = (0..m.cols).filter(|&c| col_count[c] > 0).collect();
            let index_of: BTreeMap<usize, usize> =
                col_map.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let mut dense = Vec::with_capacity(live.len());
            for &i in &live {
                let mut row = vec![0u32; col_map.len()];
                for (&c, &v) in rows[i].iter() {
                    row[index_of[&c]] = v;
                }
                dense.push(row);
            }
            let (r, _) = rref_in_place(&mut dense, field);
            return rank + r;
        }

        // Markowitz-style pivot: sparsest row, then rarest column inside it.
        let &pivot_row = live
            .iter()
            .min_by_key(|&&i| rows[i].len())
            .expect("nonempty");
        let (&pivot_col, &pivot_val) = rows[pivot_row]
            .iter()
            .min_by_key(|&(&c, _)| (col_count[c], c))
            .expect("active row nonempty");

        rank += 1;
        active[pivot_row] = false;
        let inv = field.inv(pivot_val);
        let pivot: Vec<(usize, u32)> = rows[pivot_row]
            .iter()
            .map(|(&c, &v)| (c, field.mul(v, inv)))
            .collect();
        for &(c, _) in &pivot {
            col_count[c] -= 1;
        }

        for i in 0..m.rows {
            if !active[i] {
                continue;
            }
            let factor = match rows[i].get(&pivot_col) {
                Some(&f) => f,
                None => continue,
            };
            for &(c, pv) in &pivot {
                let delta = field.mul(factor, pv);
                let entry = rows[i].entry(c).or_insert(0);
                let had = *entry != 0;
                *entry = field.sub(*entry, delta);
                let has = *entry != 0;
                if !has {
                    rows[i].remove(&c);
                }
                match (had, has) {
                    (false, true) => col_count[c] += 1,
                    (true, false) => col_count[c] -= 1,
                    _ => {}
                }
            }
            if rows[i].is_empty() {
                active[i] = false;
            }
        }
    }
}

/// In-place reduced row echelon form; returns (rank, pivot columns).
pub fn rref_in_place(mat: &mut [Vec<u32>], field: PrimeField) -> (usize, Vec<usize>) {
    if mat.is_empty() || mat[0].is_empty() {
        return (0, Vec::new());
    }
    let rows = mat.len();
    let cols = mat[0].len();
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = field.inv(mat[rank][col]);
        for c in col..cols {
            mat[rank][c] = field.mul(mat[rank][c], inv);
        }
        for r in 0..rows {
            if r != rank && mat[r][col] != 0 {
                let f = mat[r][col];
                for c in col..cols {
                    let t = field.mul(f, mat[rank][c]);
                    mat[r][c] = field.sub(mat[r][c], t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, pivots)
}

/// Basis of the kernel of `m` (as column vectors of length `cols`),
/// computed densely; deterministic given the matrix.
pub fn kernel_basis(m: &SparseMatrix, field: PrimeField) -> Vec<Vec<u32>> {
    let mut dense = m.to_dense();
    if m.cols == 0 {
        return Vec::new();
    }
    if dense.is_empty() {
        dense.push(vec![0u32; m.cols]);
    }
    let (_, pivots) = rref_in_place(&mut dense, field);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec_ = vec![0u32; m.cols];
        vec_[free] = 1;
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(r) = slot {
                vec_[c] = field.neg(dense[*r][free]);
            }
        }
        basis.push(vec_);
    }
    basis
}

/// Coset representatives of ker(d_out)/im(d_in).
///
/// `d_in` and `d_out` must compose to zero (d_out ∘ d_in = 0); a nonzero
/// composition signals a differential bug and is reported as an error.
/// Representatives are echelon-normalized against the image so the output
/// is deterministic across runs.
pub fn cokernel_basis(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    field: PrimeField,
) -> Result<Vec<Vec<u32>>> {
    if d_in.rows != d_out.cols {
        return Err(Error::ShapeMismatch {
            expected: format!("d_in rows == d_out cols ({})", d_out.cols),
            got: format!("{}", d_in.rows),
        });
    }
    if !compose_is_zero(d_out, d_in, field) {
        return Err(Error::ComposeNotZero);
    }
    let dim = d_out.cols;
    // Echelon set seeded with the image of d_in.
    let mut echelon: Vec<Vec<u32>> = Vec::new();
    let mut lead_of: BTreeMap<usize, usize> = BTreeMap::new();
    let insert = |v: Vec<u32>,
                      echelon: &mut Vec<Vec<u32>>,
                      lead_of: &mut BTreeMap<usize, usize>|
     -> Option<Vec<u32>> {
        let mut v = v;
        loop {
            let lead = v.iter().position(|&x| x != 0)?;
            match lead_of.get(&lead) {
                Some(&idx) => {
                    let f = v[lead];
                    let row = echelon[idx].clone();
                    for (x, y) in v.iter_mut().zip(row.iter()) {
                        *x = field.sub(*x, field.mul(f, *y));
                    }
                }
                None => {
                    let inv = field.inv(v[lead]);
                    for x in v.iter_mut() {
                        *x = field.mul(*x, inv);
                    }
                    lead_of.insert(lead, echelon.len());
                    echelon.push(v.clone());
                    return Some(v);
                }
            }
        }
    };

    let mut image_cols = vec![vec![0u32; d_in.rows]; d_in.cols];
    for &(r, c, v) in &d_in.entries {
        image_cols[c][r] = v;
    }
    let mut image_rank = 0usize;
    for col in image_cols {
        if insert(col, &mut echelon, &mut lead_of).is_some() {
            image_rank += 1;
        }
    }

    let mut reps = Vec::new();
    for k in kernel_basis(d_out, field) {
        if let Some(normalized) = insert(k, &mut echelon, &mut lead_of) {
            reps.push(normalized);
        }
    }
    debug_assert_eq!(reps.len() + image_rank, dim - rank(d_out, field));
    Ok(reps)
}

/// True iff a·b = 0 over the field.
pub fn compose_is_zero(a: &SparseMatrix, b: &SparseMatrix, field: PrimeField) -> bool {
    if a.cols != b.rows {
        return false;
    }
    // a: (n x m), b: (m x k). Accumulate products keyed by (row of a, col of b).
    let mut b_by_row: Vec<Vec<(usize, u32)>> = vec![Vec::new(); b.rows];
    for &(r, c, v) in &b.entries {
        b_by_row[r].push((c, v));
    }
    let mut acc: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for &(r, mid, va) in &a.entries {
        for &(c, vb) in &b_by_row[mid] {
            let e = acc.entry((r, c)).or_insert(0);
            *e = field.add(*e, field.mul(va, vb));
        }
    }
    acc.values().all(|&v| v == 0)
}

/// Whether `target` lies in the column span of `cols`; if so, returns the
/// coefficient vector of one representation.
pub fn solve_in_span(
    cols: &[Vec<u32>],
    target: &[u32],
    field: PrimeField,
) -> Option<Vec<u32>> {
    let dim = target.len();
    let n = cols.len();
    let mut aug: Vec<Vec<u32>> = (0..dim)
        .map(|r| {
            let mut row: Vec<u32> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    if aug.is_empty() {
        aug.push(vec![0; n + 1]);
    }
    let (_, pivots) = rref_in_place(&mut aug, field);
    if pivots.contains(&n) {
        return None; // inconsistent: target not in span
    }
    let mut x = vec![0u32; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Integer Smith normal form
// ---------------------------------------------------------------------------

/// Invariant factors d_1 | d_2 | ... of an integer matrix, nonnegative and in
/// divisibility order. Intermediate arithmetic runs in i128 and promotes to
/// arbitrary precision on overflow; it is never modular.
pub fn smith_diagonal(mat: &[Vec<i64>]) -> Vec<BigInt> {
    if let Some(d) = snf_i128(mat) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let big: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    snf_bigint(big, false).0
}

/// Integer basis of the kernel of the map Z^cols -> Z^rows given by `mat`.
/// The returned columns span the kernel as a direct summand of Z^cols.
pub fn integer_kernel_basis(mat: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let big: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (diag, v) = snf_bigint(big, true);
    let v = v.expect("transform requested");
    let rank_ = diag.iter().filter(|d| !d.is_zero()).count();
    let mut basis = Vec::new();
    for j in rank_..cols {
        let mut col = Vec::with_capacity(cols);
        for row in v.iter().take(cols) {
            let x = &row[j];
            let as_i64 = i64::try_from(x.clone()).map_err(|_| Error::Parse(
                "kernel basis entry exceeds i64".into(),
            ))?;
            col.push(as_i64);
        }
        basis.push(col);
    }
    let _ = rows;
    Ok(basis)
}

fn snf_i128(mat: &[Vec<i64>]) -> Option<Vec<i128>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = mat
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(n, 0);
                return Some(diag);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            // Clear column k below the pivot.
            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k] != 0 {
                    let q = a[i][k].checked_div(a[k][k])?;
                    for j in k..cols {
                        let t = q.checked_mul(a[k][j])?;
                        a[i][j] = a[i][j].checked_sub(t)?;
                    }
                    if a[i][k] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Clear row k right of the pivot.
            for j in k + 1..cols {
                if a[k][j] != 0 {
                    let q = a[k][j].checked_div(a[k][k])?;
                    for row in a.iter_mut().take(rows).skip(k) {
                        let t = q.checked_mul(row[k])?;
                        row[j] = row[j].checked_sub(t)?;
                    }
                    if a[k][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility sweep: pivot must divide the trailing block.
            let d = a[k][k];
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a[i][j] % d != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in k..cols {
                        a[k][j] = a[k][j].checked_add(a[i][j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[k][k].abs());
    }
    Some(diag)
}

fn snf_bigint(
    mut a: Vec<Vec<BigInt>>,
    want_v: bool,
) -> (Vec<BigInt>, Option<Vec<Vec<BigInt>>>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let n = rows.min(cols);
    let mut v: Option<Vec<Vec<BigInt>>> = want_v.then(|| {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    });
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Option<Vec<Vec<BigInt>>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        if let Some(v) = v {
            for row in v.iter_mut() {
                row.swap(x, y);
            }
        }
    };
    let addmul_col =
        |a: &mut Vec<Vec<BigInt>>, v: &mut Option<Vec<Vec<BigInt>>>, dst: usize, src: usize, q: &BigInt| {
            for row in a.iter_mut() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
            if let Some(v) = v {
                for row in v.iter_mut() {
                    let t = &row[src] * q;
                    row[dst] -= t;
                }
            }
        };

    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !a[i][j].is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(n, BigInt::zero());
                let out_v = finalize_v(v);
                return (diag, out_v);
            };
            a.swap(k, pi);
            swap_cols(&mut a, &mut v, k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if !a[i][k].is_zero() {
                    let q = div_round(&a[i][k], &a[k][k]);
                    for j in k..cols {
                        let t = &a[k][j] * &q;
                        a[i][j] -= t;
                    }
                    if !a[i][k].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in k + 1..cols {
                if !a[k][j].is_zero() {
                    let q = div_round(&a[k][j], &a[k][k]);
                    addmul_col(&mut a, &mut v, j, k, &q);
                    if !a[k][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let d = a[k][k].clone();
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[i][j] % &d).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in k..cols {
                        let t = a[i][j].clone();
                        a[k][j] += t;
                    }
                }
                None => break,
            }
        }
        diag.push(a[k][k].abs());
    }
    (diag, finalize_v(v))
}

fn finalize_v(v: Option<Vec<Vec<BigInt>>>) -> Option<Vec<Vec<BigInt>>> {
    v
}

/// Truncated division biased toward small remainders.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32001).is_err()); // 3 * 10667
    }

    #[test]
    fn field_ops() {
        let f = gf(32003);
        for a in [1u32, 2, 5, 32002, 16001] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.sub(0, 1), 32002);
        assert_eq!(f.balanced(32002), -1);
        let f2 = gf(2);
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.inv(1), 1);
    }

    #[test]
    fn rank_zero_matrix() {
        let m = SparseMatrix::zero(3, 4);
        assert_eq!(rank(&m, gf(2)), 0);
        assert_eq!(rank(&m, gf(32003)), 0);
    }

    #[test]
    fn rank_identity() {
        let f = gf(32003);
        let m = SparseMatrix::from_triplets(5, 5, (0..5).map(|i| (i, i, 1)), f).unwrap();
        assert_eq!(rank(&m, f), 5);
    }

    #[test]
    fn rank_cycle_boundary_gf2() {
        // d1 of the 5-cycle: edges {i, i+1 mod 5}, rows = vertices.
        let f = gf(2);
        let mut t = Vec::new();
        for e in 0..5usize {
            t.push((e, e, 1));
            t.push(((e + 1) % 5, e, 1));
        }
        let m = SparseMatrix::from_triplets(5, 5, t, f).unwrap().transpose();
        // rows = edges? rank is transpose-invariant anyway; incidence rank of a
        // connected graph on 5 vertices is 4.
        assert_eq!(rank(&m, f), 4);
        assert_eq!(rank(&m.transpose(), f), 4);
    }

    #[test]
    fn kernel_of_incidence() {
        let f = gf(32003);
        // 1 x 3 all-ones row: kernel has dim 2.
        let m = SparseMatrix::from_dense(&[vec![1, 1, 1]], f);
        let k = kernel_basis(&m, f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v, f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cokernel_trivial_cases() {
        let f = gf(32003);
        // d_in = 0 (from nothing), d_out = 0 (to nothing), dim 3.
        let d_in = SparseMatrix::zero(3, 0);
        let d_out = SparseMatrix::zero(0, 3);
        let reps = cokernel_basis(&d_in, &d_out, f).unwrap();
        assert_eq!(reps.len(), 3);

        // d_out injective -> empty basis.
        let d_out = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1], vec![0, 0]], f);
        let d_in = SparseMatrix::zero(2, 0);
        assert!(cokernel_basis(&d_in, &d_out, f).unwrap().is_empty());
    }

    #[test]
    fn cokernel_rejects_bad_composition() {
        let f = gf(32003);
        let d_in = SparseMatrix::from_dense(&[vec![1], vec![0]], f);
        let d_out = SparseMatrix::from_dense(&[vec![1, 0]], f);
        assert_eq!(
            cokernel_basis(&d_in, &d_out, f).unwrap_err(),
            Error::ComposeNotZero
        );
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_diagonal(&[vec![2]]), vec![BigInt::from(2)]);
        let id_in_tall = vec![vec![1, 0], vec![0, 1], vec![0, 0]];
        assert_eq!(
            smith_diagonal(&id_in_tall),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        // Columns spanning a direct summand.
        let m = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(smith_diagonal(&m), vec![BigInt::from(1), BigInt::from(1)]);
        // Non-summand column.
        assert_eq!(smith_diagonal(&[vec![2], vec![4]]), vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_divisibility_order() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let d = smith_diagonal(&m);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn integer_kernel() {
        // Kernel of [1 1 1]: rank-2 summand.
        let basis = integer_kernel_basis(&[vec![1, 1, 1]]).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        // Stack the basis as columns: must be a direct summand.
        let cols: Vec<Vec<i64>> = (0..3)
            .map(|r| basis.iter().map(|b| b[r]).collect())
            .collect();
        let d = smith_diagonal(&cols);
        assert!(d.iter().all(|x| x == &BigInt::one()));
    }

    /// Independent oracle: the k-th determinantal divisor D_k is the gcd of
    /// all k x k minors, and the invariant factors are d_k = D_k / D_{k-1}.
    fn snf_via_minor_gcds(mat: &[Vec<i64>]) -> Vec<BigInt> {
        fn det(mat: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.len() == 1 {
                return BigInt::from(mat[rows[0]][cols[0]]);
            }
            let mut acc = BigInt::zero();
            for (i, &r) in rows.iter().enumerate() {
                let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
                let sub = det(mat, &rest, &cols[1..]);
                let term = BigInt::from(mat[r][cols[0]]) * sub;
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur: Vec<usize> = (0..k).collect();
            if k > n {
                return out;
            }
            loop {
                out.push(cur.clone());
                let mut i = k;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if cur[i] != i + n - k {
                        cur[i] += 1;
                        for j in i + 1..k {
                            cur[j] = cur[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        fn gcd(a: BigInt, b: BigInt) -> BigInt {
            let (mut a, mut b) = (a.abs(), b.abs());
            while !b.is_zero() {
                let r = &a % &b;
                a = b;
                b = r;
            }
            a
        }
        let (rows, cols) = (mat.len(), mat[0].len());
        let mut divisors = vec![BigInt::one()];
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    g = gcd(g, det(mat, &rs, &cs));
                }
            }
            divisors.push(g);
        }
        let mut out = Vec::new();
        for k in 1..divisors.len() {
            if divisors[k].is_zero() {
                out.push(BigInt::zero());
            } else {
                out.push(&divisors[k] / &divisors[k - 1]);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn snf_matches_minor_gcd_oracle(seed in 0u64..300) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rows = rng.gen_range(1..5usize);
            let cols = rng.gen_range(1..5usize);
            let mat: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            prop_assert_eq!(smith_diagonal(&mat), snf_via_minor_gcds(&mat));
        }

        #[test]
        fn rank_transpose_invariant(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = if seed % 2 == 0 { gf(2) } else { gf(32003) };
            let rows = rng.gen_range(1..8usize);
            let cols = rng.gen_range(1..8usize);
            let mut t = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.4) {
                        t.push((r, c, rng.gen_range(1..f.modulus())));
                    }
                }
            }
            let m = SparseMatrix::from_triplets(rows, cols, t, f).unwrap();
            let rk = rank(&m, f);
            prop_assert_eq!(rk, rank(&m.transpose(), f));
            prop_assert!(rk <= rows.min(cols));
        }

        #[test]
        fn cokernel_dimension_formula(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = gf(32003);
            // Random chain spot: C2 -> C1 -> C0 with d_out*d_in = 0 by
            // construction (d_in maps into ker d_out).
            let c1 = rng.gen_range(1..7usize);
            let c0 = rng.gen_range(1..7usize);
            let mut t = Vec::new();
            for r in 0..c0 {
                for c in 0..c1 {
                    if rng.gen_bool(0.4) {
                        t.push((r, c, rng.gen_range(1..f.modulus())));
                    }
                }
            }
            let d_out = SparseMatrix::from_triplets(c0, c1, t, f).unwrap();
            let kern = kernel_basis(&d_out, f);
            // d_in: pick a few kernel vectors as columns.
            let take = kern.len().min(rng.gen_range(0..3usize));
            let mut t = Vec::new();
            for (j, v) in kern.iter().take(take).enumerate() {
                for (r, &x) in v.iter().enumerate() {
                    if x != 0 {
                        t.push((r, j, x));
                    }
                }
            }
            let d_in = SparseMatrix::from_triplets(c1, take, t, f).unwrap();
            let reps = cokernel_basis(&d_in, &d_out, f).unwrap();
            let expect = (c1 - rank(&d_out, f)) - rank(&d_in, f);
            prop_assert_eq!(reps.len(), expect);
        }
    }
}
