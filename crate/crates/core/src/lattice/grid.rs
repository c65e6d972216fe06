//! Six-vertex configurations with domain wall boundary conditions.
//!
//! Orientation conventions: rows `k = 1..=N` run top to bottom, columns
//! `alpha = 1..=N` run right to left. Cells are stored row-major in
//! left-to-right order; use [`Grid::cell`] for the `(k, alpha)` view.

use crate::error::{Error, Result};

/// Default enumeration cap (N = 8 has 10 850 216 configurations).
pub const DEFAULT_SIZE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightClass {
    A,
    B,
    C,
}

/// The six ice-rule vertex states.
///
/// | type | vertical arrows | horizontal arrows |
/// |------|-----------------|-------------------|
/// | 1    | up, up          | right, right      |
/// | 2    | down, down      | left, left        |
/// | 3    | down, down      | right, right      |
/// | 4    | up, up          | left, left        |
/// | 5    | into the vertex | out of the vertex |
/// | 6    | out of vertex   | into the vertex   |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum VertexType {
    T1 = 1,
    T2 = 2,
    T3 = 3,
    T4 = 4,
    T5 = 5,
    T6 = 6,
}

impl VertexType {
    pub const ALL: [VertexType; 6] = [
        VertexType::T1,
        VertexType::T2,
        VertexType::T3,
        VertexType::T4,
        VertexType::T5,
        VertexType::T6,
    ];

    pub fn label(self) -> u8 {
        self as u8
    }

    pub fn from_label(label: u8) -> Option<Self> {
        VertexType::ALL.get(label.checked_sub(1)? as usize).copied()
    }

    pub fn weight_class(self) -> WeightClass {
        match self {
            VertexType::T1 | VertexType::T2 => WeightClass::A,
            VertexType::T3 | VertexType::T4 => WeightClass::B,
            VertexType::T5 | VertexType::T6 => WeightClass::C,
        }
    }

    /// Arrow on the upper vertical edge points down.
    pub fn top_points_down(self) -> bool {
        matches!(self, VertexType::T2 | VertexType::T3 | VertexType::T5)
    }

    /// Arrow on the lower vertical edge points up.
    pub fn bottom_points_up(self) -> bool {
        matches!(self, VertexType::T1 | VertexType::T4 | VertexType::T5)
    }

    /// Arrow on the left horizontal edge points left.
    pub fn left_points_left(self) -> bool {
        matches!(self, VertexType::T2 | VertexType::T4 | VertexType::T5)
    }

    /// Arrow on the right horizontal edge points right.
    pub fn right_points_right(self) -> bool {
        matches!(self, VertexType::T1 | VertexType::T3 | VertexType::T5)
    }

    /// Types compatible with a given upper and left edge.
    fn completions(top_down: bool, left_left: bool) -> &'static [VertexType] {
        match (top_down, left_left) {
            (true, true) => &[VertexType::T2, VertexType::T5],
            (true, false) => &[VertexType::T3],
            (false, true) => &[VertexType::T4],
            (false, false) => &[VertexType::T1, VertexType::T6],
        }
    }
}

/// An `N x N` DWBC configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
    cells: Vec<VertexType>,
}

impl Grid {
    /// Builds a grid from cells listed row-major, left to right, and checks
    /// edge consistency and the boundary conditions.
    pub fn from_cells(n: usize, cells: Vec<VertexType>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {n}x{n} grid",
                cells.len()
            )));
        }
        let grid = Grid { n, cells };
        if !grid.is_valid() {
            return Err(Error::DimensionMismatch(
                "cells violate the ice rule or domain wall boundary".into(),
            ));
        }
        Ok(grid)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[VertexType] {
        &self.cells
    }

    /// Cell on row `k` (from the top) and column `alpha` (from the right),
    /// both 1-based.
    pub fn cell(&self, k: usize, alpha: usize) -> VertexType {
        self.cells[(k - 1) * self.n + (self.n - alpha)]
    }

    /// Shared edges agree and all boundary arrows follow DWBC.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let at = |i: usize, j: usize| self.cells[i * n + j];
        for i in 0..n {
            for j in 0..n {
                let v = at(i, j);
                let top_ok = if i == 0 {
                    v.top_points_down()
                } else {
                    at(i - 1, j).bottom_points_up() != v.top_points_down()
                };
                let left_ok = if j == 0 {
                    v.left_points_left()
                } else {
                    at(i, j - 1).right_points_right() != v.left_points_left()
                };
                let bottom_ok = i + 1 < n || v.bottom_points_up();
                let right_ok = j + 1 < n || v.right_points_right();
                if !(top_ok && left_ok && bottom_ok && right_ok) {
                    return false;
                }
            }
        }
        true
    }

    /// Counts `n_1..n_6` indexed by label minus one.
    pub fn type_counts(&self) -> [usize; 6] {
        let mut counts = [0; 6];
        for v in &self.cells {
            counts[v.label() as usize - 1] += 1;
        }
        counts
    }

    /// Column (from the right) of the type-5 vertex in row `k`, if unique.
    pub fn c_vertex_position(&self, k: usize) -> Option<usize> {
        let mut found = None;
        for alpha in 1..=self.n {
            if self.cell(k, alpha) == VertexType::T5 {
                if found.is_some() {
                    return None;
                }
                found = Some(alpha);
            }
        }
        found
    }

    /// Whether the horizontal edge of row `k` between columns `r` and
    /// `r + 1` carries a left-pointing arrow (`r = N` is the left boundary).
    pub fn edge_points_left(&self, k: usize, r: usize) -> bool {
        self.cell(k, r).left_points_left()
    }

    pub fn to_asm(&self) -> AsmMatrix {
        grid_to_asm(self)
    }
}

/// Type 5 maps to `+1`, type 6 to `-1`, the rest to `0`. The matrix is laid
/// out as drawn: row 0 on top, column 0 on the left.
pub fn grid_to_asm(grid: &Grid) -> AsmMatrix {
    AsmMatrix {
        n: grid.n,
        entries: grid
            .cells
            .iter()
            .map(|v| match v {
                VertexType::T5 => 1,
                VertexType::T6 => -1,
                _ => 0,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsmMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl AsmMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)` with columns left to right.
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    pub fn minus_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -1).count()
    }

    /// Row and column sums are one and nonzero entries alternate in sign,
    /// starting and ending with `+1`.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let line_ok = |line: &mut dyn Iterator<Item = i8>| {
            let mut partial = 0i32;
            for e in line {
                if !(-1..=1).contains(&e) {
                    return false;
                }
                partial += e as i32;
                if !(0..=1).contains(&partial) {
                    return false;
                }
            }
            partial == 1
        };
        (0..n).all(|i| line_ok(&mut (0..n).map(|j| self.get(i, j))))
            && (0..n).all(|j| line_ok(&mut (0..n).map(|i| self.get(i, j))))
    }
}

/// Lending walker over all DWBC configurations in depth-first row-major
/// order. Memory is `O(N^2)` for the current partial grid.
pub(crate) struct DwbcWalker {
    n: usize,
    cells: Vec<VertexType>,
    next_choice: Vec<u8>,
    depth: usize,
    started: bool,
    done: bool,
}

impl DwbcWalker {
    pub(crate) fn new(n: usize) -> Self {
        DwbcWalker {
            n,
            cells: vec![VertexType::T1; n * n],
            next_choice: vec![0; n * n + 1],
            depth: 0,
            started: false,
            done: n == 0,
        }
    }

    fn candidates(&self, pos: usize) -> impl Iterator<Item = VertexType> + '_ {
        let n = self.n;
        let (i, j) = (pos / n, pos % n);
        let top_down = i == 0 || !self.cells[pos - n].bottom_points_up();
        let left_left = j == 0 || !self.cells[pos - 1].right_points_right();
        VertexType::completions(top_down, left_left)
            .iter()
            .copied()
            .filter(move |v| {
                (j + 1 < n || v.right_points_right()) && (i + 1 < n || v.bottom_points_up())
            })
    }

    /// Advances to the next complete configuration.
    pub(crate) fn advance(&mut self) -> Option<&[VertexType]> {
        if self.done {
            return None;
        }
        let total = self.n * self.n;
        if self.started {
            // resume by backtracking out of the last leaf
            self.depth -= 1;
        }
        self.started = true;
        loop {
            if self.depth == total {
                return Some(&self.cells);
            }
            let k = self.next_choice[self.depth] as usize;
            let choice = self.candidates(self.depth).nth(k);
            match choice {
                Some(v) => {
                    self.cells[self.depth] = v;
                    self.next_choice[self.depth] += 1;
                    self.depth += 1;
                    self.next_choice[self.depth] = 0;
                }
                None => {
                    if self.depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

/// Iterator over all DWBC grids of size `n`.
pub struct DwbcIter {
    walker: DwbcWalker,
}

impl Iterator for DwbcIter {
    type Item = Grid;

    fn next(&mut self) -> Option<Grid> {
        let n = self.walker.n;
        self.walker.advance().map(|cells| Grid {
            n,
            cells: cells.to_vec(),
        })
    }
}

/// Every DWBC configuration of size `n`, each exactly once, with the default
/// size cap.
pub fn enumerate_dwbc(n: usize) -> Result<DwbcIter> {
    enumerate_dwbc_capped(n, DEFAULT_SIZE_CAP)
}

pub fn enumerate_dwbc_capped(n: usize, cap: usize) -> Result<DwbcIter> {
    check_size(n, cap)?;
    Ok(DwbcIter {
        walker: DwbcWalker::new(n),
    })
}

pub(crate) fn check_size(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyLattice);
    }
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn single_cell_is_type_five() {
        let grids: Vec<_> = enumerate_dwbc(1).unwrap().collect();
        assert_eq!(grids.len(), 1);
        assert_eq!(grids[0].cells(), &[VertexType::T5]);
        assert_eq!(grids[0].to_asm().rows(), vec![vec![1]]);
    }

    #[test]
    fn two_by_two_grids_are_permutations() {
        let asms: HashSet<_> = enumerate_dwbc(2)
            .unwrap()
            .map(|g| g.to_asm().rows())
            .collect();
        let expected: HashSet<_> = [vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]
            .into_iter()
            .collect();
        assert_eq!(asms, expected);
    }

    #[test]
    fn counts_for_small_sizes() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_dwbc(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429]);
    }

    #[test]
    fn four_by_four_bijection() {
        let grids: Vec<_> = enumerate_dwbc(4).unwrap().collect();
        let asms: HashSet<_> = grids.iter().map(Grid::to_asm).collect();
        assert_eq!(asms.len(), 42);
        assert!(asms.iter().all(AsmMatrix::is_valid));
    }

    #[test]
    fn boundary_rows_have_single_c_vertex() {
        for n in 1..=5 {
            for g in enumerate_dwbc(n).unwrap() {
                assert!(g.is_valid());
                assert_eq!(g.type_counts().iter().sum::<usize>(), n * n);
                for k in [1, n] {
                    assert!(g.c_vertex_position(k).is_some());
                    assert!((1..=n).all(|a| g.cell(k, a) != VertexType::T6));
                }
            }
        }
    }

    #[test]
    fn cap_and_empty_are_errors() {
        assert_eq!(
            enumerate_dwbc(9).err(),
            Some(Error::SizeCapExceeded { n: 9, cap: 8 })
        );
        assert_eq!(enumerate_dwbc(0).err(), Some(Error::EmptyLattice));
        assert!(enumerate_dwbc_capped(9, 9).is_ok());
    }

    #[test]
    fn from_cells_rejects_broken_boundary() {
        assert!(Grid::from_cells(1, vec![VertexType::T6]).is_err());
        assert!(Grid::from_cells(1, vec![VertexType::T5]).is_ok());
    }

    #[test]
    fn label_round_trip() {
        for v in VertexType::ALL {
            assert_eq!(VertexType::from_label(v.label()), Some(v));
        }
        assert_eq!(VertexType::from_label(0), None);
        assert_eq!(VertexType::from_label(7), None);
    }
}
