//! Dense adjacency matrices for P3, complete graphs, Kronecker products and
//! NEPS products of P3, plus dictionary-order vertex indexing.

use std::collections::VecDeque;
use std::fmt;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::gf2::Basis;

pub type RealMatrix = DMatrix<f64>;

/// Largest number of P3 factors whose 3^n vertex count fits comfortably in
/// `usize` arithmetic here. Memory is the real limit and is policed by callers.
pub const MAX_FACTORS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("complete graph needs at least 2 vertices, got {0}")]
    CompleteTooSmall(usize),
    #[error("vertex coordinate {0} is outside {{1, 2, 3}}")]
    BadCoordinate(u8),
    #[error("vertex label needs at least one coordinate")]
    EmptyLabel,
    #[error("vertex index {index} out of range for {n} factors (3^n = {order})")]
    IndexOutOfRange {
        index: usize,
        n: usize,
        order: usize,
    },
    #[error("coordinate j = {j} out of range 1..={n}")]
    CoordinateOutOfRange { j: usize, n: usize },
    #[error("{0} P3 factors is too many for a dense adjacency matrix")]
    TooManyFactors(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Adjacency matrix of the path 1 - 2 - 3.
pub fn path3() -> RealMatrix {
    RealMatrix::from_row_slice(3, 3, &[0., 1., 0., 1., 0., 1., 0., 1., 0.])
}

/// J − I of order `m`.
pub fn complete_graph(m: usize) -> Result<RealMatrix, GraphError> {
    if m < 2 {
        return Err(GraphError::CompleteTooSmall(m));
    }
    Ok(RealMatrix::from_fn(
        m,
        m,
        |i, j| if i == j { 0. } else { 1. },
    ))
}

pub fn kron(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    a.kronecker(b)
}

pub fn order_for(n: usize) -> Result<usize, GraphError> {
    if n > MAX_FACTORS {
        return Err(GraphError::TooManyFactors(n));
    }
    Ok(3usize.pow(n as u32))
}

/// Step between consecutive values of coordinate `j` (1-based) in
/// dictionary order: 3^(n - j).
pub fn stride(n: usize, j: usize) -> usize {
    3usize.pow((n - j) as u32)
}

// P3 neighbours by 0-based digit: 1 ~ 2, 2 ~ 1, 3
const P3_NEIGHBOURS: [&[usize]; 3] = [&[1], &[0, 2], &[1]];

/// Adjacency of NEPS(P3, ..., P3; Ω) in dictionary order.
///
/// Each row β contributes the edges that move every coordinate in the
/// support of β along an edge of P3 and keep the others fixed. Distinct rows
/// move distinct coordinate sets, so their edge sets are disjoint and the
/// result stays 0/1.
pub fn neps_adjacency(basis: &Basis) -> Result<RealMatrix, GraphError> {
    let n = basis.n();
    let order = order_for(n)?;
    let mut adj = RealMatrix::zeros(order, order);
    let supports: Vec<Vec<usize>> = basis.iter().map(|b| b.support()).collect();
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    for x in 0..order {
        for support in &supports {
            frontier.clear();
            frontier.push(x);
            for &j in support {
                let s = stride(n, j);
                let d = (x / s) % 3;
                next.clear();
                for &y in &frontier {
                    for &nd in P3_NEIGHBOURS[d] {
                        next.push(y - d * s + nd * s);
                    }
                }
                std::mem::swap(&mut frontier, &mut next);
            }
            for &y in &frontier {
                adj[(x, y)] += 1.0;
            }
        }
    }
    Ok(adj)
}

/// A vertex of a NEPS of P3, one coordinate in {1, 2, 3} per factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    coords: Vec<u8>,
}

impl VertexLabel {
    pub fn new(coords: Vec<u8>) -> Result<Self, GraphError> {
        if coords.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        if let Some(&bad) = coords.iter().find(|&&c| !(1..=3).contains(&c)) {
            return Err(GraphError::BadCoordinate(bad));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// The all-2 vertex.
    pub fn center(n: usize) -> Self {
        Self { coords: vec![2; n] }
    }

    /// U_j: all 2 except coordinate `j` set to 1.
    pub fn u(n: usize, j: usize) -> Self {
        let mut coords = vec![2; n];
        coords[j - 1] = 1;
        Self { coords }
    }

    /// V_j: all 2 except coordinate `j` set to 3.
    pub fn v(n: usize, j: usize) -> Self {
        let mut coords = vec![2; n];
        coords[j - 1] = 3;
        Self { coords }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// 0-based dictionary index: Σ (v_i − 1)·3^(n−i).
pub fn vertex_index(label: &VertexLabel) -> usize {
    label
        .coords
        .iter()
        .fold(0usize, |acc, &c| acc * 3 + (c as usize - 1))
}

pub fn vertex_label(index: usize, n: usize) -> Result<VertexLabel, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyLabel);
    }
    let order = order_for(n)?;
    if index >= order {
        return Err(GraphError::IndexOutOfRange { index, n, order });
    }
    let mut coords = vec![0u8; n];
    let mut rest = index;
    for c in coords.iter_mut().rev() {
        *c = (rest % 3) as u8 + 1;
        rest /= 3;
    }
    Ok(VertexLabel { coords })
}

/// Index of (2, ..., 2), which is (3^n − 1)/2.
pub fn center_index(n: usize) -> usize {
    (3usize.pow(n as u32) - 1) / 2
}

fn check_coordinate(n: usize, j: usize) -> Result<(), GraphError> {
    if j == 0 || j > n {
        return Err(GraphError::CoordinateOutOfRange { j, n });
    }
    Ok(())
}

pub fn u_index(n: usize, j: usize) -> Result<usize, GraphError> {
    check_coordinate(n, j)?;
    Ok(center_index(n) - stride(n, j))
}

pub fn v_index(n: usize, j: usize) -> Result<usize, GraphError> {
    check_coordinate(n, j)?;
    Ok(center_index(n) + stride(n, j))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Component id per vertex; ids are numbered by lowest member.
    pub labels: Vec<usize>,
}

impl Components {
    /// Component sizes indexed by id.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Breadth-first component labelling; any nonzero entry is an edge.
pub fn connected_components(adj: &RealMatrix) -> Result<Components, GraphError> {
    let (rows, cols) = adj.shape();
    if rows != cols {
        return Err(GraphError::NotSquare { rows, cols });
    }
    let mut labels = vec![usize::MAX; rows];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..rows {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for y in 0..rows {
                if adj[(x, y)] != 0.0 && labels[y] == usize::MAX {
                    labels[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    Ok(Components { count, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{rank_gf2, BitVector};
    use proptest::prelude::*;

    fn basis(rows: &[&str]) -> Basis {
        Basis::from_strs(rows).unwrap()
    }

    fn is_adjacency(a: &RealMatrix) -> bool {
        a.is_square()
            && (0..a.nrows()).all(|i| a[(i, i)] == 0.0)
            && a.iter().all(|&x| x == 0.0 || x == 1.0)
            && a == &a.transpose()
    }

    /// Adjacency straight from the NEPS definition over vertex labels.
    fn definitional_neps(b: &Basis) -> RealMatrix {
        let n = b.n();
        let order = 3usize.pow(n as u32);
        let labels: Vec<_> = (0..order).map(|i| vertex_label(i, n).unwrap()).collect();
        RealMatrix::from_fn(order, order, |x, y| {
            let (lx, ly) = (labels[x].coords(), labels[y].coords());
            let hit = b.iter().any(|beta| {
                (1..=n).all(|i| {
                    let (a, c) = (lx[i - 1], ly[i - 1]);
                    if beta.get(i) {
                        a.abs_diff(c) == 1
                    } else {
                        a == c
                    }
                })
            });
            if hit {
                1.0
            } else {
                0.0
            }
        })
    }

    #[test]
    fn path3_shape() {
        let a = path3();
        assert_eq!(
            a,
            RealMatrix::from_row_slice(3, 3, &[0., 1., 0., 1., 0., 1., 0., 1., 0.])
        );
        assert!(is_adjacency(&a));
        let sums: Vec<f64> = a.row_iter().map(|r| r.sum()).collect();
        assert_eq!(sums, vec![1., 2., 1.]);
    }

    #[test]
    fn complete_graph_examples() {
        assert_eq!(
            complete_graph(2).unwrap(),
            RealMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.])
        );
        let k3 = complete_graph(3).unwrap();
        assert!(k3.row_iter().all(|r| r.sum() == 2.0));
        let mut ev: Vec<f64> = complete_graph(4)
            .unwrap()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([-1., -1., -1., 3.]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(complete_graph(1), Err(GraphError::CompleteTooSmall(1)));
    }

    #[test]
    fn kron_examples() {
        let b = path3();
        let k = kron(&RealMatrix::identity(2, 2), &b);
        assert_eq!(k.view((0, 0), (3, 3)), b);
        assert_eq!(k.view((3, 3), (3, 3)), b);
        assert!(k.view((0, 3), (3, 3)).iter().all(|&x| x == 0.0));

        let pp = kron(&path3(), &path3());
        let idx = |a: u8, c: u8| vertex_index(&VertexLabel::new(vec![a, c]).unwrap());
        assert_eq!(pp[(idx(2, 2), idx(1, 1))], 1.0);
        assert_eq!(pp.sum(), path3().sum() * path3().sum());
    }

    #[test]
    fn kron_is_associative() {
        let a = complete_graph(2).unwrap();
        let b = path3();
        let c = complete_graph(3).unwrap();
        assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn neps_examples() {
        assert_eq!(neps_adjacency(&basis(&["1"])).unwrap(), path3());

        let cart = neps_adjacency(&basis(&["10", "01"])).unwrap();
        let i3 = RealMatrix::identity(3, 3);
        assert_eq!(cart, kron(&path3(), &i3) + kron(&i3, &path3()));
        let v11 = vertex_index(&VertexLabel::new(vec![1, 1]).unwrap());
        assert_eq!(cart.row(v11).sum(), 2.0);

        assert_eq!(
            neps_adjacency(&basis(&["11"])).unwrap(),
            kron(&path3(), &path3())
        );
    }

    #[test]
    fn neps_matches_definition_exhaustively_n3() {
        let all = crate::gf2::nonzero_vectors(3).unwrap();
        for mask in 1u32..(1 << all.len()) {
            let rows: Vec<BitVector> = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let b = Basis::new(3, rows).unwrap();
            let a = neps_adjacency(&b).unwrap();
            assert!(is_adjacency(&a), "{b:?}");
            assert_eq!(a, definitional_neps(&b), "{b:?}");
        }
    }

    #[test]
    fn center_degree_is_sum_of_powers_of_two() {
        for n in 1..=4 {
            let all = crate::gf2::nonzero_vectors(n).unwrap();
            // a handful of sub-bases per n
            for mask in [1u64, 3, 5, 0b1011, (1 << all.len()) - 1] {
                let rows: Vec<_> = (0..all.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| all[i])
                    .collect();
                if rows.is_empty() {
                    continue;
                }
                let b = Basis::new(n, rows).unwrap();
                let a = neps_adjacency(&b).unwrap();
                let expected: f64 = b.iter().map(|r| 2f64.powi(r.weight() as i32)).sum();
                assert_eq!(a.row(center_index(n)).sum(), expected);
            }
        }
    }

    #[test]
    fn index_examples() {
        for n in 1..=6 {
            let c = center_index(n);
            assert_eq!(
                vertex_index(&VertexLabel::center(n)),
                (3usize.pow(n as u32) - 1) / 2
            );
            let mut low = vec![2u8; n];
            low[n - 1] = 1;
            let mut high = vec![2u8; n];
            high[n - 1] = 3;
            assert_eq!(vertex_index(&VertexLabel::new(low).unwrap()), c - 1);
            assert_eq!(vertex_index(&VertexLabel::new(high).unwrap()), c + 1);
        }
    }

    #[test]
    fn u_v_indices_match_enumeration() {
        for n in 1..=3 {
            let order = 3usize.pow(n as u32);
            for j in 1..=n {
                let u = (0..order)
                    .find(|&i| vertex_label(i, n).unwrap() == VertexLabel::u(n, j))
                    .unwrap();
                let v = (0..order)
                    .find(|&i| vertex_label(i, n).unwrap() == VertexLabel::v(n, j))
                    .unwrap();
                assert_eq!(u_index(n, j).unwrap(), u);
                assert_eq!(v_index(n, j).unwrap(), v);
                assert_eq!(u, center_index(n) - 3usize.pow((n - j) as u32));
            }
        }
        assert!(u_index(2, 3).is_err());
    }

    #[test]
    fn label_errors() {
        assert_eq!(
            VertexLabel::new(vec![1, 4]),
            Err(GraphError::BadCoordinate(4))
        );
        assert_eq!(VertexLabel::new(vec![]), Err(GraphError::EmptyLabel));
        assert!(vertex_label(9, 2).is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(connected_components(&path3()).unwrap().count, 1);

        let c = connected_components(&neps_adjacency(&basis(&["11"])).unwrap()).unwrap();
        assert_eq!(c.count, 2);
        let mut sizes = c.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 5]);
        assert_eq!(rank_gf2(&basis(&["11"])), 1);

        let c = connected_components(&neps_adjacency(&basis(&["10", "01"])).unwrap()).unwrap();
        assert_eq!(c.count, 1);
    }

    proptest! {
        #[test]
        fn index_round_trip(n in 1usize..=6, seed in any::<usize>()) {
            let order = 3usize.pow(n as u32);
            let i = seed % order;
            let label = vertex_label(i, n).unwrap();
            prop_assert_eq!(vertex_index(&label), i);
        }

        #[test]
        fn connected_iff_full_rank(n in 1usize..=4, mask in 1u64..u64::MAX) {
            let all = crate::gf2::nonzero_vectors(n).unwrap();
            let rows: Vec<_> = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            prop_assume!(!rows.is_empty());
            let b = Basis::new(n, rows).unwrap();
            let comps = connected_components(&neps_adjacency(&b).unwrap()).unwrap();
            prop_assert_eq!(comps.count == 1, rank_gf2(&b) == n);
        }
    }

    #[test]
    fn full_index_round_trip_n6() {
        let n = 6;
        for i in 0..3usize.pow(n as u32) {
            assert_eq!(vertex_index(&vertex_label(i, n).unwrap()), i);
        }
    }
}
