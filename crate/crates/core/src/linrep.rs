//! Exact rational matrices for the two standard constructions: the frame
//! matrix of a multiplicatively labelled graph (tail entry 1, head entry
//! -gamma) and the lift matrix of an additively labelled graph (signed
//! incidence matrix with the label vector appended as an extra row).
//! Column matroids come from fraction-free elimination over big integers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::label::{GroupKind, GroupValue, LabelledGraph};
use crate::matroid::ExplicitMatroid;
use crate::subset::{k_subsets_of, Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    entries: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len()
            || entries.iter().any(|r| r.len() != col_labels.len())
        {
            return Err(Error::InvalidParameter("inconsistent matrix shape".into()));
        }
        Ok(RationalMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        RationalMatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            entries,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    /// Integerized copies of the selected columns (denominators cleared
    /// per column, which preserves linear independence).
    fn integer_columns(&self, cols: &[usize]) -> Vec<Vec<BigInt>> {
        cols.iter()
            .map(|&j| {
                let mut lcm = BigInt::one();
                for i in 0..self.n_rows() {
                    let d = self.entries[i][j].denom().clone();
                    lcm = num::integer::lcm(lcm, d);
                }
                (0..self.n_rows())
                    .map(|i| {
                        let e = &self.entries[i][j];
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank of the selected columns and the pivot rows used, via Bareiss
    /// fraction-free elimination. Pivots are the first nonzero entry in
    /// column order, rows in stored (vertex) order.
    pub fn rank_of_columns(&self, cols: &[usize]) -> (usize, Vec<usize>) {
        let mut m = self.integer_columns(cols);
        let ncols = m.len();
        let nrows = self.n_rows();
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut used = vec![false; nrows];
        let mut prev = BigInt::one();
        for c in 0..ncols {
            let Some(p) = (0..nrows).find(|&r| !used[r] && !m[c][r].is_zero()) else {
                continue;
            };
            used[p] = true;
            pivot_rows.push(p);
            let pivot = m[c][p].clone();
            let (left, right) = m.split_at_mut(c + 1);
            let pivot_col = &left[c];
            for col in right {
                let factor = col[p].clone();
                for r in 0..nrows {
                    if used[r] {
                        continue;
                    }
                    col[r] = (&col[r] * &pivot - &factor * &pivot_col[r]) / &prev;
                }
            }
            prev = pivot;
        }
        (pivot_rows.len(), pivot_rows)
    }

    pub fn rank(&self) -> usize {
        let cols: Vec<usize> = (0..self.n_cols()).collect();
        self.rank_of_columns(&cols).0
    }

    /// Tab-separated export: header of column names, then rows of `p/q`.
    pub fn export(&self) -> String {
        let mut out = self.col_labels.join("\t");
        out.push('\n');
        for row in &self.entries {
            let line: Vec<String> = row
                .iter()
                .map(|e| format!("{}/{}", e.numer(), e.denom()))
                .collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// The frame construction: column e has 1 at the tail and -gamma(e) at the head.
pub fn frame_matrix(lg: &LabelledGraph) -> Result<RationalMatrix> {
    if lg.kind() != GroupKind::Multiplicative {
        return Err(Error::GroupMismatch { expected: "Q+" });
    }
    if lg.has_loops() {
        return Err(Error::LoopPresent("frame matrix of a loopy graph".into()));
    }
    let g = lg.graph();
    let mut entries =
        vec![vec![BigRational::zero(); g.n_edges()]; g.n_vertices()];
    for (j, e) in g.edges().iter().enumerate() {
        let gamma = match lg.label(j) {
            GroupValue::Mul(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            GroupValue::Add(_) => unreachable!("kind checked"),
        };
        entries[e.u][j] = BigRational::one();
        entries[e.v][j] = -gamma;
    }
    RationalMatrix::new(g.vertices().to_vec(), g.edge_names(), entries)
}

/// The lift construction: signed incidence matrix (head +1, tail -1) with the
/// label vector appended as a final row.
pub fn lift_matrix(lg: &LabelledGraph) -> Result<RationalMatrix> {
    if lg.kind() != GroupKind::Additive {
        return Err(Error::GroupMismatch { expected: "Z" });
    }
    if lg.has_loops() {
        return Err(Error::LoopPresent("lift matrix of a loopy graph".into()));
    }
    let g = lg.graph();
    let mut entries =
        vec![vec![BigRational::zero(); g.n_edges()]; g.n_vertices() + 1];
    for (j, e) in g.edges().iter().enumerate() {
        let gamma = match lg.label(j) {
            GroupValue::Add(n) => BigRational::from_integer(BigInt::from(n)),
            GroupValue::Mul(_) => unreachable!("kind checked"),
        };
        entries[e.v][j] = BigRational::one();
        entries[e.u][j] = -BigRational::one();
        entries[g.n_vertices()][j] = gamma;
    }
    let mut rows = g.vertices().to_vec();
    rows.push("[gain]".to_string());
    RationalMatrix::new(rows, g.edge_names(), entries)
}

/// The matroid of linear independence over the rationals on the columns.
pub fn column_matroid(a: &RationalMatrix) -> Result<ExplicitMatroid> {
    let n = a.n_cols();
    if n > MAX_ELEMENTS {
        return Err(Error::TooManyElements(n));
    }
    let r = a.rank();
    let bases: Vec<Subset> = k_subsets_of(Subset::full(n), r)
        .into_iter()
        .filter(|s| {
            let cols: Vec<usize> = s.iter().collect();
            a.rank_of_columns(&cols).0 == r
        })
        .collect();
    ExplicitMatroid::from_bases(a.col_labels.clone(), bases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn single_edge(label: GroupValue, kind: GroupKind) -> LabelledGraph {
        let g = Multigraph::new(
            vec!["u".into(), "v".into()],
            vec![("e".into(), "u".into(), "v".into())],
        )
        .unwrap();
        LabelledGraph::new(g, kind, vec![("e".into(), label)]).unwrap()
    }

    #[test]
    fn frame_column_entries() {
        let lg = single_edge(
            GroupValue::multiplicative(3, 1).unwrap(),
            GroupKind::Multiplicative,
        );
        let a = frame_matrix(&lg).unwrap();
        assert_eq!(*a.entry(0, 0), BigRational::one());
        assert_eq!(*a.entry(1, 0), -BigRational::from_integer(3.into()));
        // identity label gives the signed incidence column
        let lg1 = single_edge(
            GroupValue::multiplicative(1, 1).unwrap(),
            GroupKind::Multiplicative,
        );
        let a1 = frame_matrix(&lg1).unwrap();
        assert_eq!(*a1.entry(1, 0), -BigRational::one());
    }

    #[test]
    fn lift_column_entries() {
        let lg = single_edge(GroupValue::Add(1), GroupKind::Additive);
        let a = lift_matrix(&lg).unwrap();
        assert_eq!(*a.entry(1, 0), BigRational::one()); // head v
        assert_eq!(*a.entry(0, 0), -BigRational::one()); // tail u
        assert_eq!(*a.entry(2, 0), BigRational::one()); // gain row
    }

    #[test]
    fn triangle_identity_labels_has_rank_two() {
        let g = Multigraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let lg = LabelledGraph::new(g, GroupKind::Multiplicative, vec![]).unwrap();
        assert_eq!(frame_matrix(&lg).unwrap().rank(), 2);
    }

    #[test]
    fn group_and_loop_preconditions() {
        let lg = single_edge(GroupValue::Add(1), GroupKind::Additive);
        assert!(frame_matrix(&lg).is_err());
        let lgm = single_edge(
            GroupValue::multiplicative(2, 1).unwrap(),
            GroupKind::Multiplicative,
        );
        assert!(lift_matrix(&lgm).is_err());
        let loopy = Multigraph::new(
            vec!["u".into()],
            vec![("l".into(), "u".into(), "u".into())],
        )
        .unwrap();
        let lg_loop = LabelledGraph::new(loopy, GroupKind::Multiplicative, vec![]).unwrap();
        assert!(frame_matrix(&lg_loop).is_err());
    }

    #[test]
    fn identity_matrix_is_free() {
        let m = column_matroid(&RationalMatrix::identity(4)).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(m.bases().len(), 1);
    }

    #[test]
    fn general_position_columns_are_uniform() {
        // columns (1,0), (0,1), (1,1), (1,2): pairwise non-proportional
        let cols = [(1i64, 0i64), (0, 1), (1, 1), (1, 2)];
        let entries: Vec<Vec<BigRational>> = (0..2)
            .map(|r| {
                cols.iter()
                    .map(|&(a, b)| {
                        BigRational::from_integer(if r == 0 { a } else { b }.into())
                    })
                    .collect()
            })
            .collect();
        let a = RationalMatrix::new(
            vec!["r0".into(), "r1".into()],
            (0..4).map(|i| format!("c{i}")).collect(),
            entries,
        )
        .unwrap();
        // oracle: pairwise proportionality check says every pair independent
        for i in 0..4 {
            for j in i + 1..4 {
                let (a0, a1) = cols[i];
                let (b0, b1) = cols[j];
                assert_ne!(a0 * b1, a1 * b0, "columns {i},{j} proportional");
            }
        }
        let m = column_matroid(&a).unwrap();
        assert!(m.equal(&{
            let u = ExplicitMatroid::from_bases(
                m.ground_names().to_vec(),
                k_subsets_of(Subset::full(4), 2),
            )
            .unwrap();
            u
        })
        .unwrap());
    }

    #[test]
    fn deterministic_pivots() {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let lg = LabelledGraph::new(
            g,
            GroupKind::Additive,
            vec![("e4".into(), GroupValue::Add(1))],
        )
        .unwrap();
        let a = lift_matrix(&lg).unwrap();
        let cols: Vec<usize> = (0..a.n_cols()).collect();
        let first = a.rank_of_columns(&cols);
        let second = a.rank_of_columns(&cols);
        assert_eq!(first, second);
    }

    #[test]
    fn lift_rank_is_incidence_rank_plus_unbalance() {
        // connected graphs: rank(lift matrix) = rank(incidence) + 1 iff some
        // cycle is unbalanced
        let g = Multigraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        for labels in [vec![], vec![("e0".to_string(), GroupValue::Add(1))]] {
            let lg = LabelledGraph::new(g.clone(), GroupKind::Additive, labels.clone()).unwrap();
            let a = lift_matrix(&lg).unwrap();
            let bg = lg.balanced_cycles().unwrap();
            let unbalanced = bg.has_unbalanced_cycle_within(g.full_edge_set());
            assert_eq!(a.rank(), 2 + usize::from(unbalanced));
        }
    }

    #[test]
    fn export_format() {
        let lg = single_edge(GroupValue::Add(2), GroupKind::Additive);
        let a = lift_matrix(&lg).unwrap();
        let text = a.export();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "e");
        assert_eq!(lines.next().unwrap(), "-1/1");
        assert_eq!(lines.next().unwrap(), "1/1");
        assert_eq!(lines.next().unwrap(), "2/1");
    }
}
