//! Binary matrices and consecutive-ones ordering, with a permutation
//! brute-force oracle for validation.

use crate::error::{Error, Result};
use pq_tree::PQTree;

/// Which end of a matrix an external column occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtSide {
    Left,
    Right,
    Root,
}

/// Column provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColLabel {
    /// Plain column (CLI input and tests).
    Plain(usize),
    /// Lowest-P-child node id in a split tree.
    LowestPChild(usize),
    External(ExtSide),
}

/// Row kinds created per (P-node, cluster).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    R0,
    R1,
    R2,
}

/// Row provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabel {
    Plain(usize),
    /// Initialization row of a non-leaf split-tree node.
    Init(usize),
    /// All-ones-except-one guard row for an external column.
    Guard(ExtSide),
    Cluster { p_node: usize, cluster: usize, kind: RowKind },
}

#[derive(Debug, Clone)]
pub struct BinaryMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<bool>>,
    pub col_labels: Vec<ColLabel>,
    pub row_labels: Vec<RowLabel>,
}

impl BinaryMatrix {
    pub fn new(cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: Vec::new(),
            col_labels: (0..cols).map(ColLabel::Plain).collect(),
            row_labels: Vec::new(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        let mut m = BinaryMatrix::new(cols);
        for (i, r) in rows.into_iter().enumerate() {
            m.rows.push(r);
            m.row_labels.push(RowLabel::Plain(i));
        }
        m
    }

    pub fn push_row(&mut self, label: RowLabel) -> usize {
        self.rows.push(vec![false; self.cols]);
        self.row_labels.push(label);
        self.rows.len() - 1
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.rows[row][col] = true;
    }

    /// True iff every row has its 1s consecutive under the given column
    /// order (a permutation of 0..cols as original column indices).
    pub fn is_consecutive_under(&self, order: &[usize]) -> bool {
        debug_assert_eq!(order.len(), self.cols);
        self.rows.iter().all(|row| {
            let mut first = None;
            let mut last = 0;
            let mut count = 0;
            for (pos, &c) in order.iter().enumerate() {
                if row[c] {
                    if first.is_none() {
                        first = Some(pos);
                    }
                    last = pos;
                    count += 1;
                }
            }
            match first {
                None => true,
                Some(f) => last - f + 1 == count,
            }
        })
    }
}

/// Tie-break rule for choosing among valid orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically least sequence of original column indices.
    LexLeast,
    /// Lexicographically greatest (the reversed tie-break used by the
    /// stability checks).
    LexGreatest,
}

/// A column permutation making every row of the form 0*1*0*, or `None` iff
/// none exists. Deterministic: returns the lexicographically least valid
/// ordering (under `TieBreak::LexLeast`).
pub fn c1p_order(m: &BinaryMatrix) -> Option<Vec<usize>> {
    c1p_order_with(m, TieBreak::LexLeast)
}

pub fn c1p_order_with(m: &BinaryMatrix, tie: TieBreak) -> Option<Vec<usize>> {
    if m.cols == 0 {
        return Some(vec![]);
    }
    // Leaf relabeling makes "lexicographically greatest" reuse the
    // order-reversing map through the same minimizing sort.
    let map = |c: usize| match tie {
        TieBreak::LexLeast => c,
        TieBreak::LexGreatest => m.cols - 1 - c,
    };
    let leaves: Vec<usize> = (0..m.cols).map(map).collect();
    let mut tree = PQTree::from_leaves(&leaves).expect("distinct leaves");
    for row in &m.rows {
        let set: Vec<usize> = (0..m.cols).filter(|&c| row[c]).map(map).collect();
        if set.is_empty() {
            continue;
        }
        tree = match tree.reduction(&set) {
            Ok(t) => t,
            Err(_) => return None,
        };
    }
    tree.sort_lexicographically();
    let order: Vec<usize> = tree.frontier().into_iter().map(map).collect();
    debug_assert!(m.is_consecutive_under(&order));
    Some(order)
}

/// Lexicographically next permutation in place; false once wrapped.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Same contract as [`c1p_order`], by exhausting column permutations in
/// lexicographic order. Refuses matrices with more than 9 columns.
pub fn c1p_naive(m: &BinaryMatrix) -> Result<Option<Vec<usize>>> {
    if m.cols > 9 {
        return Err(Error::TooManyColumns(m.cols));
    }
    let mut perm: Vec<usize> = (0..m.cols).collect();
    loop {
        if m.is_consecutive_under(&perm) {
            return Ok(Some(perm));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[u8]]) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&b| b != 0).collect()).collect(),
        )
    }

    #[test]
    fn two_overlapping_rows_identity_works() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let order = c1p_order(&m).unwrap();
        assert!(m.is_consecutive_under(&order));
        assert_eq!(order, vec![0, 1, 2]);
    }

    #[test]
    fn cyclic_overlap_has_no_ordering() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(c1p_order(&m).is_none());
        assert!(c1p_naive(&m).unwrap().is_none());
    }

    #[test]
    fn all_zero_matrix_gives_identity() {
        let m = mat(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(c1p_order(&m).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn single_column_and_all_ones() {
        let m = mat(&[&[1]]);
        assert_eq!(c1p_order(&m).unwrap(), vec![0]);
        let m2 = mat(&[&[1, 1, 1]]);
        assert_eq!(c1p_order(&m2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn naive_rejects_wide_matrices() {
        let m = BinaryMatrix::new(10);
        assert!(matches!(c1p_naive(&m), Err(Error::TooManyColumns(10))));
    }

    #[test]
    fn agrees_with_naive_on_all_3x3() {
        for bits in 0..512u32 {
            let rows: Vec<Vec<bool>> = (0..3)
                .map(|r| (0..3).map(|c| bits >> (3 * r + c) & 1 == 1).collect())
                .collect();
            let m = BinaryMatrix::from_rows(rows);
            let fast = c1p_order(&m);
            let slow = c1p_naive(&m).unwrap();
            assert_eq!(fast, slow, "matrix bits {bits:#b}");
        }
    }

    #[test]
    fn lex_greatest_is_reverse_world_least() {
        let m = mat(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let least = c1p_order_with(&m, TieBreak::LexLeast).unwrap();
        let greatest = c1p_order_with(&m, TieBreak::LexGreatest).unwrap();
        assert!(m.is_consecutive_under(&least));
        assert!(m.is_consecutive_under(&greatest));
        assert_eq!(least, vec![0, 1, 2, 3]);
        assert_eq!(greatest, vec![3, 2, 1, 0]);
    }

    proptest! {
        #[test]
        fn feasibility_matches_naive_and_orders_verify(
            rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 6), 0..6)
        ) {
            let m = BinaryMatrix::from_rows(rows);
            let fast = c1p_order(&m);
            let slow = c1p_naive(&m).unwrap();
            prop_assert_eq!(fast.is_some(), slow.is_some());
            if let Some(o) = &fast {
                prop_assert!(m.is_consecutive_under(o));
            }
            if let Some(o) = c1p_order_with(&m, TieBreak::LexGreatest) {
                prop_assert!(m.is_consecutive_under(&o));
            }
        }

        #[test]
        fn answer_invariant_under_row_and_column_permutation(
            rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 5), 1..5),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let m = BinaryMatrix::from_rows(rows.clone());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut cperm: Vec<usize> = (0..5).collect();
            cperm.shuffle(&mut rng);
            let mut shuffled_rows: Vec<Vec<bool>> =
                rows.iter().map(|r| cperm.iter().map(|&c| r[c]).collect()).collect();
            shuffled_rows.shuffle(&mut rng);
            let m2 = BinaryMatrix::from_rows(shuffled_rows);
            prop_assert_eq!(c1p_order(&m).is_some(), c1p_order(&m2).is_some());
        }
    }
}
