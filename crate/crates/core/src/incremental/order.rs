use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dbm::bar;
use crate::error::{OctError, Result};

/// A visiting order over every cell of a `2n × 2n` matrix, for the in-place
/// algorithms. Each cell appears exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalOrder {
    dim: usize,
    cells: Vec<(usize, usize)>,
}

impl TraversalOrder {
    /// Builds an order from an explicit cell sequence, rejecting anything
    /// that is not a permutation of the matrix cells.
    pub fn from_cells(n: usize, cells: Vec<(usize, usize)>) -> Result<Self> {
        let dim = 2 * n;
        if cells.len() != dim * dim {
            return Err(OctError::InvalidTraversal(format!(
                "{} cells listed, matrix has {}",
                cells.len(),
                dim * dim
            )));
        }
        let mut seen = vec![false; dim * dim];
        for &(i, j) in &cells {
            if i >= dim || j >= dim {
                return Err(OctError::InvalidTraversal(format!("cell ({i}, {j}) outside {dim}x{dim}")));
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(OctError::InvalidTraversal(format!("cell ({i}, {j}) visited twice")));
            }
        }
        Ok(TraversalOrder { dim, cells })
    }

    pub fn row_major(n: usize) -> Self {
        let dim = 2 * n;
        let cells = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect();
        TraversalOrder { dim, cells }
    }

    pub fn column_major(n: usize) -> Self {
        let dim = 2 * n;
        let cells = (0..dim).flat_map(|j| (0..dim).map(move |i| (i, j))).collect();
        TraversalOrder { dim, cells }
    }

    pub fn reverse_row_major(n: usize) -> Self {
        let mut o = Self::row_major(n);
        o.cells.reverse();
        o
    }

    /// Uniformly shuffled cells, reproducible from `seed`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut o = Self::row_major(n);
        o.cells.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        o
    }

    /// Shuffled key cells followed by shuffled non-key cells.
    pub fn random_key_first(n: usize, seed: u64) -> Self {
        Self::random(n, seed).keys_first()
    }

    /// Moves the key cells `(i, bar i)` to the front, keeping the relative
    /// order within both groups.
    pub fn keys_first(self) -> Self {
        let (mut keys, rest): (Vec<_>, Vec<_>) = self.cells.into_iter().partition(|&(i, j)| j == bar(i));
        keys.extend(rest);
        TraversalOrder { dim: self.dim, cells: keys }
    }

    /// True when every key cell comes before every other cell.
    pub fn is_key_first(&self) -> bool {
        self.cells[..self.dim].iter().all(|&(i, j)| j == bar(i))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }
}
