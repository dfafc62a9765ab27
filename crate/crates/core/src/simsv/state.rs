use num_complex::Complex64 as C64;

use super::matrix::Matrix;

/// A batch of register states: `cols` columns, each a vector over the
/// computational basis of `register` (bit `k` of a row index is
/// `register[k]`). Stored row-major so a row is one basis amplitude across
/// all columns.
#[derive(Clone, Debug)]
pub(crate) struct Batch {
    pub register: Vec<usize>,
    pub cols: usize,
    pub data: Vec<C64>,
}

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

impl Batch {
    /// Identity on the inputs: column `c` is the basis state `c`.
    pub fn identity(inputs: Vec<usize>) -> Self {
        let dim = 1usize << inputs.len();
        Self {
            register: inputs,
            cols: dim,
            data: Matrix::identity(dim).data,
        }
    }

    /// One state given by its amplitudes over `register`.
    pub fn single(register: Vec<usize>, amplitudes: Vec<C64>) -> Self {
        assert_eq!(amplitudes.len(), 1 << register.len());
        Self {
            register,
            cols: 1,
            data: amplitudes,
        }
    }

    fn position(&self, q: usize) -> usize {
        self.register
            .iter()
            .position(|&r| r == q)
            .expect("qubit is live")
    }

    fn rows(&self) -> usize {
        self.data.len() / self.cols
    }

    /// Appends `q` in `|+⟩` as the new highest bit.
    pub fn add_plus(&mut self, q: usize) {
        let old = self.data.len();
        self.data.reserve(old);
        for x in self.data.iter_mut() {
            *x *= H;
        }
        self.data.extend_from_within(..old);
        self.register.push(q);
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let mask = (1 << self.position(a)) | (1 << self.position(b));
        let cols = self.cols;
        for r in 0..self.rows() {
            if r & mask == mask {
                for x in &mut self.data[r * cols..(r + 1) * cols] {
                    *x = -*x;
                }
            }
        }
    }

    pub fn x(&mut self, q: usize) {
        let bit = 1 << self.position(q);
        let cols = self.cols;
        for r in 0..self.rows() {
            if r & bit == 0 {
                let (lo, hi) = self.data.split_at_mut((r | bit) * cols);
                lo[r * cols..(r + 1) * cols].swap_with_slice(&mut hi[..cols]);
            }
        }
    }

    pub fn z(&mut self, q: usize) {
        let bit = 1 << self.position(q);
        let cols = self.cols;
        for r in 0..self.rows() {
            if r & bit != 0 {
                for x in &mut self.data[r * cols..(r + 1) * cols] {
                    *x = -*x;
                }
            }
        }
    }

    /// Contracts `q` with the bra `⟨b|` and drops it from the register.
    pub fn project(&self, q: usize, bra: [C64; 2]) -> Batch {
        let k = self.position(q);
        let cols = self.cols;
        let low = (1usize << k) - 1;
        let rows = self.rows() / 2;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let r0 = (r & low) | ((r & !low) << 1);
            let r1 = r0 | (1 << k);
            for c in 0..cols {
                data.push(bra[0] * self.data[r0 * cols + c] + bra[1] * self.data[r1 * cols + c]);
            }
        }
        let mut register = self.register.clone();
        register.remove(k);
        Batch {
            register,
            cols,
            data,
        }
    }

    /// Reorders the rows so bit `k` stands for `order[k]`.
    pub fn into_matrix(self, order: &[usize]) -> Matrix {
        assert_eq!(order.len(), self.register.len());
        let pos: Vec<usize> = order.iter().map(|&q| self.position(q)).collect();
        let rows = self.rows();
        let cols = self.cols;
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            let mut src = 0;
            for (k, &p) in pos.iter().enumerate() {
                if (r >> k) & 1 == 1 {
                    src |= 1 << p;
                }
            }
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src * cols..(src + 1) * cols]);
        }
        m
    }
}
