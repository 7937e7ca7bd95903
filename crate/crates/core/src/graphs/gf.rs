//! Minimal prime-field arithmetic for F_2 and F_3, plus row-reduced echelon
//! form and subspace enumeration. Nothing here generalizes past q = 3; the
//! shipped constructors never need more.

/// Field order; only 2 and 3 are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf(pub u8);

impl Gf {
    pub fn new(q: u8) -> Option<Gf> {
        if q == 2 || q == 3 {
            Some(Gf(q))
        } else {
            None
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    /// Inverse table: 1⁻¹ = 1 over F_2; 1⁻¹ = 1, 2⁻¹ = 2 over F_3.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        match (self.0, a) {
            (2, 1) => 1,
            (3, 1) => 1,
            (3, 2) => 2,
            _ => unreachable!("no inverse for {a} mod {}", self.0),
        }
    }
}

/// Row vector over F_q.
pub type Row = Vec<u8>;

/// In-place row reduction to reduced row echelon form; returns the rank.
/// Zero rows are removed.
pub fn rref(field: Gf, rows: &mut Vec<Row>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = field.inv(rows[pivot_row][col]);
        for x in rows[pivot_row].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    let sub = field.mul(f, rows[pivot_row][c]);
                    rows[r][c] = field.sub(rows[r][c], sub);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows.len()
}

/// Rank of the row span.
pub fn rank(field: Gf, rows: &[Row]) -> usize {
    let mut work: Vec<Row> = rows.to_vec();
    rref(field, &mut work)
}

/// Canonical basis of a subspace: the RREF rows.
pub fn canonical_basis(field: Gf, rows: &[Row]) -> Vec<Row> {
    let mut work: Vec<Row> = rows.to_vec();
    rref(field, &mut work);
    work
}

/// dim(span(a) + span(b)), computed from the stacked rows.
pub fn sum_dim(field: Gf, a: &[Row], b: &[Row]) -> usize {
    let mut work: Vec<Row> = a.iter().chain(b.iter()).cloned().collect();
    rref(field, &mut work)
}

/// Is span(sub) contained in span(sup)?
pub fn subspace_contains(field: Gf, sup: &[Row], sub: &[Row]) -> bool {
    sum_dim(field, sup, sub) == rank(field, sup)
}

/// All `k`-dimensional subspaces of F_q^n, each as its canonical RREF basis.
/// Enumerates pivot-column sets and the free entries of the echelon form, so
/// every subspace appears exactly once.
pub fn subspaces(field: Gf, n: usize, k: usize) -> Vec<Vec<Row>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free positions: (row i, col j) with j > pivots[i], j not a pivot
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let q = field.0 as usize;
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut basis: Vec<Row> = vec![vec![0u8; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for &(i, j) in &free {
                basis[i][j] = (code % q) as u8;
                code /= q;
            }
            out.push(basis);
        }
        // next pivot combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] != i + n - k {
                break;
            }
        }
        pivots[i] += 1;
        for j in (i + 1)..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

/// Label string for a canonical basis: rows as digit strings joined by `;`.
/// The zero subspace is `"0"`.
pub fn basis_label(basis: &[Row]) -> String {
    if basis.is_empty() {
        return "0".to_string();
    }
    basis
        .iter()
        .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qbinomial, rat};

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (q, n) in [(2u8, 4usize), (2, 5), (3, 3), (3, 4)] {
            let field = Gf::new(q).unwrap();
            for k in 0..=n {
                let count = subspaces(field, n, k).len() as i64;
                assert_eq!(
                    rat(count),
                    qbinomial(n as u32, k as u32, q as i64).unwrap(),
                    "q={q} n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn subspaces_are_canonical_and_distinct() {
        let field = Gf(2);
        let subs = subspaces(field, 4, 2);
        let mut labels: Vec<String> = subs.iter().map(|b| basis_label(b)).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 35);
        for b in &subs {
            assert_eq!(canonical_basis(field, b), *b);
            assert_eq!(rank(field, b), 2);
        }
    }

    #[test]
    fn rank_and_containment_f3() {
        let field = Gf(3);
        let a = vec![vec![1, 2, 0], vec![0, 1, 1]];
        assert_eq!(rank(field, &a), 2);
        let sub = vec![vec![1, 0, 1]]; // = row0 + row1 over F_3: (1,2,0)+(0,1,1) = (1,0,1)
        assert!(subspace_contains(field, &a, &sub));
        let not_sub = vec![vec![0, 0, 1]];
        assert!(!subspace_contains(field, &a, &not_sub));
    }
}
