//! The bigraded Betti table b^{-i,2j} and its totalization.
//!
//! Both computation pipelines (Koszul and Hochster) produce this table; the
//! entry at (-i, 2j) is the dimension of the Tor module of the face ring in
//! external degree -i and internal degree 2j.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub m: usize,
    pub n: usize,
    /// (i, 2j) -> dimension, keyed by the positive index i of bidegree (-i, 2j).
    entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn new(m: usize, n: usize) -> Self {
        BettiTable {
            m,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, two_j: usize, dim: usize) {
        if dim > 0 {
            *self.entries.entry((i, two_j)).or_insert(0) += dim;
        }
    }

    pub fn set(&mut self, i: usize, two_j: usize, dim: usize) {
        if dim > 0 {
            self.entries.insert((i, two_j), dim);
        } else {
            self.entries.remove(&(i, two_j));
        }
    }

    pub fn get(&self, i: usize, two_j: usize) -> usize {
        self.entries.get(&(i, two_j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Total Betti numbers b^k = sum over 2j - i = k; index 0..=m+n.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.m + self.n + 1];
        for (&(i, two_j), &dim) in &self.entries {
            let k = two_j - i;
            if k < out.len() {
                out[k] += dim;
            }
        }
        out
    }

    /// Entrywise difference; empty means the tables agree.
    pub fn diff(&self, other: &BettiTable) -> Vec<BettiDiff> {
        let mut keys: Vec<(usize, usize)> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(i, two_j)| {
                let (a, b) = (self.get(i, two_j), other.get(i, two_j));
                (a != b).then_some(BettiDiff {
                    i: -(i as i64),
                    two_j,
                    left: a,
                    right: b,
                })
            })
            .collect()
    }

    /// Bigraded convolution: the table of a join K1 * K2.
    pub fn convolution(&self, other: &BettiTable) -> BettiTable {
        let mut out = BettiTable::new(self.m + other.m, self.n + other.n);
        for (&(i1, j1), &d1) in &self.entries {
            for (&(i2, j2), &d2) in &other.entries {
                out.add(i1 + i2, j1 + j2, d1 * d2);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            m: usize,
            n: usize,
            entries: Vec<(i64, usize, usize)>,
        }
        let entries = self
            .entries
            .iter()
            .map(|(&(i, two_j), &dim)| (-(i as i64), two_j, dim))
            .collect();
        serde_json::to_string_pretty(&Doc {
            m: self.m,
            n: self.n,
            entries,
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Doc {
            m: usize,
            n: usize,
            entries: Vec<(i64, usize, usize)>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut t = BettiTable::new(doc.m, doc.n);
        for (i, two_j, dim) in doc.entries {
            if i > 0 || two_j % 2 != 0 {
                return Err(Error::Parse(format!(
                    "bad bidegree ({i}, {two_j}) in Betti table"
                )));
            }
            t.set((-i) as usize, two_j, dim);
        }
        Ok(t)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,2j,dim\n");
        for (&(i, two_j), &dim) in &self.entries {
            s.push_str(&format!("{},{},{}\n", -(i as i64), two_j, dim));
        }
        s
    }

    /// LaTeX grid with rows 2j and columns -i, for side-by-side reading of
    /// the bigraded table.
    pub fn to_latex(&self) -> String {
        let imax = self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let jmax = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut s = String::new();
        s.push_str(&format!(
            "\\begin{{array}}{{r|{}}}\n",
            "c".repeat(imax + 1)
        ));
        s.push_str("2j");
        for i in 0..=imax {
            if i == 0 {
                s.push_str(" & 0");
            } else {
                s.push_str(&format!(" & -{i}"));
            }
        }
        s.push_str(" \\\\\\hline\n");
        for two_j in (0..=jmax).step_by(2) {
            s.push_str(&format!("{two_j}"));
            for i in 0..=imax {
                let d = self.get(i, two_j);
                if d == 0 {
                    s.push_str(" & \\cdot");
                } else {
                    s.push_str(&format!(" & {d}"));
                }
            }
            s.push_str(" \\\\\n");
        }
        s.push_str("\\end{array}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiDiff {
    pub i: i64,
    pub two_j: usize,
    pub left: usize,
    pub right: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon_table() -> BettiTable {
        let mut t = BettiTable::new(5, 2);
        t.set(0, 0, 1);
        t.set(1, 4, 5);
        t.set(2, 6, 5);
        t.set(3, 10, 1);
        t
    }

    #[test]
    fn totals_of_pentagon() {
        assert_eq!(pentagon_table().totals(), vec![1, 0, 0, 5, 5, 0, 0, 1]);
    }

    #[test]
    fn totals_of_spheres() {
        // two points: table (0,0):1, (-1,4):1 -> S^3
        let mut t = BettiTable::new(2, 1);
        t.set(0, 0, 1);
        t.set(1, 4, 1);
        assert_eq!(t.totals(), vec![1, 0, 0, 1]);
        // square: S^3 x S^3
        let mut t = BettiTable::new(4, 2);
        t.set(0, 0, 1);
        t.set(1, 4, 2);
        t.set(2, 8, 1);
        assert_eq!(t.totals(), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn diff_and_json_roundtrip() {
        let t = pentagon_table();
        assert!(t.diff(&t).is_empty());
        let mut corrupted = t.clone();
        corrupted.set(1, 4, 4);
        let d = t.diff(&corrupted);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].i, d[0].two_j, d[0].left, d[0].right), (-1, 4, 5, 4));

        let back = BettiTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn convolution_squares() {
        // two points convolved with itself = the square's table
        let mut s3 = BettiTable::new(2, 1);
        s3.set(0, 0, 1);
        s3.set(1, 4, 1);
        let sq = s3.convolution(&s3);
        assert_eq!(sq.get(0, 0), 1);
        assert_eq!(sq.get(1, 4), 2);
        assert_eq!(sq.get(2, 8), 1);
        assert_eq!(sq.totals(), vec![1, 0, 0, 2, 0, 0, 1]);
    }
}
