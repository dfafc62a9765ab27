//! Gauss–Jordan elimination over GF(2).

use std::cmp::Ordering;

use super::VertexSet;

/// One linear equation `coeffs · x = rhs` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: VertexSet,
    pub rhs: bool,
}

/// Solution space of an affine system: `particular + span(kernel)`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: VertexSet,
    pub kernel: Vec<VertexSet>,
}

/// Kernel dimension up to which [`AffineSolution::min_weight`] enumerates the
/// whole coset.
pub const EXHAUSTIVE_KERNEL_DIM: usize = 16;

impl AffineSolution {
    /// The solution of minimum cardinality, lexicographically smallest among
    /// those. Exact when the kernel dimension is at most
    /// [`EXHAUSTIVE_KERNEL_DIM`]; otherwise the reduced-echelon particular
    /// solution (free variables zero) is returned.
    pub fn min_weight(&self) -> VertexSet {
        let d = self.kernel.len();
        if d > EXHAUSTIVE_KERNEL_DIM {
            return self.particular.clone();
        }
        let mut best = self.particular.clone();
        let mut current = self.particular.clone();
        // Gray-code walk over the coset.
        for i in 1u64..(1u64 << d) {
            let flip = i.trailing_zeros() as usize;
            current ^= &self.kernel[flip];
            if better(&current, &best) {
                best = current.clone();
            }
        }
        best
    }
}

fn better(a: &VertexSet, b: &VertexSet) -> bool {
    match a.len().cmp(&b.len()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.cmp_lex(b) == Ordering::Less,
    }
}

/// Solves `equations` for unknowns indexed `0..ncols`. Returns `None` when
/// the system is inconsistent.
pub fn solve(equations: &[Equation], ncols: usize) -> Option<AffineSolution> {
    let mut rows: Vec<Equation> = equations.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].coeffs.contains(col)) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot, tail) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row.coeffs.contains(col) {
                row.coeffs ^= &pivot.coeffs;
                row.rhs ^= pivot.rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.rhs) {
        return None;
    }
    let mut particular = VertexSet::empty(ncols);
    for (i, &col) in pivots.iter().enumerate() {
        if rows[i].rhs {
            particular.insert(col);
        }
    }
    let pivot_set = VertexSet::from_ids(ncols, pivots.iter().copied());
    let kernel = (0..ncols)
        .filter(|&f| !pivot_set.contains(f))
        .map(|f| {
            let mut v = VertexSet::singleton(ncols, f);
            for (i, &col) in pivots.iter().enumerate() {
                if rows[i].coeffs.contains(f) {
                    v.insert(col);
                }
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

/// GF(2) rank of a list of row vectors.
pub fn rank(rows: &[VertexSet]) -> usize {
    let Some(width) = rows.first().map(VertexSet::width) else {
        return 0;
    };
    let mut rows = rows.to_vec();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].contains(col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row.contains(col) {
                *row ^= &pivot;
            }
        }
        r += 1;
    }
    r
}

/// Whether two families of rows span the same GF(2) space.
pub fn same_row_space(a: &[VertexSet], b: &[VertexSet]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let joint: Vec<VertexSet> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&joint) == ra
}

/// Finds coefficients `c` with `Σ c_i rows[i] = target`, if any.
pub fn express(rows: &[VertexSet], target: &VertexSet) -> Option<VertexSet> {
    let m = rows.len();
    let eqs: Vec<Equation> = (0..target.width())
        .map(|bit| Equation {
            coeffs: VertexSet::from_ids(m, (0..m).filter(|&i| rows[i].contains(bit))),
            rhs: target.contains(bit),
        })
        .collect();
    solve(&eqs, m).map(|s| s.particular)
}
