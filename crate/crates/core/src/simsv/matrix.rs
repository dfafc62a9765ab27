use num_complex::Complex64 as C64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self† · self`.
    pub fn gram(&self) -> Matrix {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for i in 0..self.cols {
                let a = row[i].conj();
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..self.cols {
                    g.data[i * self.cols + j] += a * row[j];
                }
            }
        }
        g
    }

    pub fn scale(&self, k: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Index of the entry of largest modulus (first on ties).
    pub fn argmax(&self) -> usize {
        argmax(&self.data)
    }
}

pub(crate) fn argmax(v: &[C64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.norm_sqr() > v[best].norm_sqr() {
            best = i;
        }
    }
    best
}

pub(crate) fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖b − e^{iθ} a‖`, with `θ` aligning the phases of the largest entry of `a`.
pub(crate) fn phase_aligned_distance(a: &[C64], b: &[C64]) -> f64 {
    let j = argmax(a);
    let phase = if a[j].norm() > 0.0 && b[j].norm() > 0.0 {
        let r = b[j] / a[j];
        r / r.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (y - x * phase).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `min_θ ‖b̂ − e^{iθ} â‖` for the normalized vectors; `None` when either
/// is (numerically) zero.
pub(crate) fn projective_distance(a: &[C64], b: &[C64], zero: f64) -> Option<f64> {
    let na = norm(a);
    let nb = norm(b);
    if na <= zero || nb <= zero {
        return None;
    }
    let inner: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if inner.norm() > 0.0 {
        inner / inner.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    // Computed as a difference rather than from the overlap, which would
    // lose half the significant digits near zero.
    Some(
        a.iter()
            .zip(b)
            .map(|(x, y)| (y / nb - x * phase / na).norm_sqr())
            .sum::<f64>()
            .sqrt(),
    )
}
