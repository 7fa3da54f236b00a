//! Bitmask subsets and small combinatorics shared across modules.
//! Vertices are 1-based externally; bit `v-1` of a `u32` mask internally.

use std::cmp::Ordering;

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: i64 = 1;
    for i in 0..k {
        num = num * (n - i) as i64 / (i + 1) as i64;
    }
    num
}

pub fn mask_to_vertices(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

pub fn vertices_to_mask(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1))
}

/// Lexicographic order on subsets viewed as ascending vertex lists
/// ([1,2,4] < [1,3], prefixes first).
pub fn subset_lex_cmp(a: u32, b: u32) -> Ordering {
    let (mut x, mut y) = (a, b);
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (vx, vy) = (x.trailing_zeros(), y.trailing_zeros());
        match vx.cmp(&vy) {
            Ordering::Equal => {
                x &= x - 1;
                y &= y - 1;
            }
            other => return other,
        }
    }
}

/// All submasks of `mask`, including the empty set and `mask` itself.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut s = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            done = true;
        } else {
            s = (s - 1) & mask;
        }
        Some(cur)
    })
}

/// The k-element submasks of `mask`, in ascending mask order.
pub fn k_submasks(mask: u32, k: usize) -> Vec<u32> {
    let bits = mask_to_vertices(mask);
    let n = bits.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let m = idx
            .iter()
            .fold(0u32, |acc, &i| acc | 1 << (bits[i] - 1));
        out.push(m);
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_unstable();
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order() {
        let a = vertices_to_mask(&[1, 3]);
        let b = vertices_to_mask(&[2, 3]);
        let c = vertices_to_mask(&[1, 4]);
        let d = vertices_to_mask(&[1, 3, 4]);
        assert_eq!(subset_lex_cmp(a, b), Ordering::Less);
        assert_eq!(subset_lex_cmp(c, b), Ordering::Less);
        assert_eq!(subset_lex_cmp(a, d), Ordering::Less); // prefix first
        assert_eq!(subset_lex_cmp(d, c), Ordering::Less); // [1,3,4] < [1,4]
    }

    #[test]
    fn submask_count() {
        assert_eq!(submasks(0b1011).count(), 8);
        assert_eq!(k_submasks(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert!(k_submasks(0b11, 3).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(24, 12), 2_704_156);
    }
}
