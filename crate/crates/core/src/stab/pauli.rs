use std::fmt;

use num_complex::Complex64 as C64;

use crate::gf2graph::{Axis, VertexSet};

/// `i^phase · X_x · Z_z` on `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub phase: u8,
    pub x: VertexSet,
    pub z: VertexSet,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: VertexSet::empty(n),
            z: VertexSet::empty(n),
        }
    }

    pub fn from_parts(phase: u8, x: VertexSet, z: VertexSet) -> Self {
        assert_eq!(x.width(), z.width());
        Self { phase: phase % 4, x, z }
    }

    /// `X_v`, `Y_v = i X_v Z_v` or `Z_v`.
    pub fn single(n: usize, v: usize, axis: Axis) -> Self {
        let mut p = Self::identity(n);
        match axis {
            Axis::X => p.x.insert(v),
            Axis::Z => p.z.insert(v),
            Axis::Y => {
                p.x.insert(v);
                p.z.insert(v);
                p.phase = 1;
            }
        }
        p
    }

    /// `X_x Z_z` with phase +1.
    pub fn xz(x: VertexSet, z: VertexSet) -> Self {
        Self::from_parts(0, x, z)
    }

    pub fn n(&self) -> usize {
        self.x.width()
    }

    pub fn support(&self) -> VertexSet {
        self.x.union(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_empty() && self.z.is_empty()
    }

    pub fn neg(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            ..self.clone()
        }
    }

    /// `self · other`; moving `Z_z` past `X_{x'}` costs `(−1)^{|z ∩ x'|}`.
    pub fn mul(&self, other: &Self) -> Self {
        let swap = self.z.intersection(&other.x).len() as u8;
        Self {
            phase: (self.phase + other.phase + 2 * (swap % 2)) % 4,
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
        }
    }

    pub fn commutes(&self, other: &Self) -> bool {
        (self.x.intersection(&other.z).len() + self.z.intersection(&other.x).len()) % 2 == 0
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == self.x.intersection(&self.z).len() % 2
    }

    /// `(x | z)` as one row of width `2n`.
    pub fn symplectic(&self) -> VertexSet {
        let n = self.n();
        VertexSet::from_ids(2 * n, self.x.iter().chain(self.z.iter().map(|v| v + n)))
    }

    /// Conjugation by `CZ_{ab}`: `X_a ↦ X_a Z_b`, `X_b ↦ Z_a X_b`.
    pub fn conjugate_cz(&mut self, a: usize, b: usize) {
        let (xa, xb) = (self.x.contains(a), self.x.contains(b));
        if xa {
            self.z.toggle(b);
        }
        if xb {
            self.z.toggle(a);
        }
        if xa && xb {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Conjugation by `X_q` (flips the sign when `Z_q` appears).
    pub fn conjugate_x(&mut self, q: usize) {
        if self.z.contains(q) {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Conjugation by `Z_q`.
    pub fn conjugate_z(&mut self, q: usize) {
        if self.x.contains(q) {
            self.phase = (self.phase + 2) % 4;
        }
    }

    /// Applies the operator to a dense vector over `register` (bit `k` of a
    /// basis index is `register[k]`).
    pub fn apply(&self, register: &[usize], v: &[C64]) -> Vec<C64> {
        let mask = |s: &VertexSet| {
            register
                .iter()
                .enumerate()
                .filter(|(_, &q)| s.contains(q))
                .fold(0usize, |m, (k, _)| m | 1 << k)
        };
        assert!(self.support().iter().all(|q| register.contains(&q)));
        let (xm, zm) = (mask(&self.x), mask(&self.z));
        let scale = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, -1.0),
        ][self.phase as usize];
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (b, &amp) in v.iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ xm] = amp * scale * sign;
        }
        out
    }
}

impl fmt::Display for PauliOperator {
    /// `+XIZY`-style, qubit 0 first, with the phase of the Y-normal form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ys = self.x.intersection(&self.z).len() as u8;
        let phase = (self.phase + 4 - ys % 4) % 4;
        f.write_str(["+", "+i", "-", "-i"][phase as usize])?;
        for q in 0..self.n() {
            let c = match (self.x.contains(q), self.z.contains(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
