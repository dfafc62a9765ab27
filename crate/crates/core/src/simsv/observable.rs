use num_complex::Complex64 as C64;

use super::SimError;
use crate::gf2graph::MeasurementLabel;
use crate::pattern::Angle;

/// `O_{λ,α}` with its `+1` and `−1` eigenvectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observable {
    pub label: MeasurementLabel,
    pub angle: Angle,
    /// Bloch vector `(n_x, n_y, n_z)` with `O = n · σ`.
    pub bloch: [f64; 3],
    /// `eigenvectors[s]` has eigenvalue `(−1)^s`.
    pub eigenvectors: [[C64; 2]; 2],
}

/// `cos` and `sin`, exact at multiples of π/2 given exactly.
fn cos_sin(angle: Angle) -> (f64, f64) {
    match angle.exact() {
        Some((0, _)) => (1.0, 0.0),
        Some((1, 2)) => (0.0, 1.0),
        Some((1, 1)) => (-1.0, 0.0),
        Some((3, 2)) => (0.0, -1.0),
        _ => (angle.radians().cos(), angle.radians().sin()),
    }
}

pub fn eigenpair(label: MeasurementLabel, angle: Angle) -> Result<Observable, SimError> {
    use MeasurementLabel as L;
    let (c, s) = cos_sin(angle);
    let sign = if angle.is_pi() { -1.0 } else { 1.0 };
    let bloch = match label {
        L::XY => [c, s, 0.0],
        L::YZ => [0.0, c, s],
        L::XZ => [s, 0.0, c],
        _ if !angle.is_pauli() => return Err(SimError::PauliAngle(label, angle.radians())),
        L::X => [sign, 0.0, 0.0],
        L::Y => [0.0, sign, 0.0],
        L::Z => [0.0, 0.0, sign],
    };
    Ok(Observable {
        label,
        angle,
        bloch,
        eigenvectors: eigenvectors(bloch),
    })
}

/// Eigenvectors of `n · σ`; the first nonzero amplitude is real positive.
fn eigenvectors([nx, ny, nz]: [f64; 3]) -> [[C64; 2]; 2] {
    let off = C64::new(nx, ny);
    let normalize = |a: C64, b: C64| {
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        [a / r, b / r]
    };
    let plus = if 1.0 + nz > 1e-12 {
        normalize(C64::new(1.0 + nz, 0.0), off)
    } else {
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
    };
    let minus = if 1.0 - nz > 1e-12 {
        normalize(C64::new(1.0 - nz, 0.0), -off)
    } else {
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
    };
    [plus, minus]
}

impl Observable {
    /// The 2×2 matrix `n · σ`, row-major.
    pub fn matrix(&self) -> [[C64; 2]; 2] {
        let [nx, ny, nz] = self.bloch;
        [
            [C64::new(nz, 0.0), C64::new(nx, -ny)],
            [C64::new(nx, ny), C64::new(-nz, 0.0)],
        ]
    }

    /// `⟨φ_s|` as the conjugated amplitudes.
    pub fn bra(&self, s: bool) -> [C64; 2] {
        let v = self.eigenvectors[s as usize];
        [v[0].conj(), v[1].conj()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    fn check_eigen(o: &Observable) {
        let m = o.matrix();
        for (s, v) in o.eigenvectors.iter().enumerate() {
            let ev = if s == 0 { 1.0 } else { -1.0 };
            for r in 0..2 {
                let mv = m[r][0] * v[0] + m[r][1] * v[1];
                assert!(close(mv, v[r] * ev), "{o:?}");
            }
            let first = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
            assert!(first.im.abs() < 1e-15 && first.re > 0.0);
        }
        let [a, b] = o.eigenvectors;
        assert!((a[0].conj() * b[0] + a[1].conj() * b[1]).norm() < 1e-12);
    }

    #[test]
    fn x_eigenbasis() {
        let o = eigenpair(MeasurementLabel::X, Angle::ZERO).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(o.eigenvectors[0][0], C64::new(h, 0.0)));
        assert!(close(o.eigenvectors[0][1], C64::new(h, 0.0)));
        assert!(close(o.eigenvectors[1][1], C64::new(-h, 0.0)));
        let flipped = eigenpair(MeasurementLabel::X, Angle::PI).unwrap();
        assert_eq!(flipped.eigenvectors[0], o.eigenvectors[1]);
        assert_eq!(flipped.eigenvectors[1], o.eigenvectors[0]);
        assert!(eigenpair(MeasurementLabel::Z, Angle::from_ratio(1, 2)).is_err());
    }

    #[test]
    fn every_label_and_angle_is_an_eigenbasis() {
        for label in MeasurementLabel::ALL {
            let angles: Vec<Angle> = if label.is_pauli() {
                vec![Angle::ZERO, Angle::PI]
            } else {
                (0..16)
                    .map(|k| Angle::from_ratio(k, 8))
                    .chain([0.3, 2.1, 4.0, 6.2].map(Angle::from_radians))
                    .collect()
            };
            for a in angles {
                check_eigen(&eigenpair(label, a).unwrap());
            }
        }
    }

    #[test]
    fn zx_plane_matches_cos_z_plus_sin_x() {
        let a = Angle::from_radians(0.7);
        let o = eigenpair(MeasurementLabel::XZ, a).unwrap();
        let m = o.matrix();
        assert!(close(m[0][0], C64::new(0.7f64.cos(), 0.0)));
        assert!(close(m[0][1], C64::new(0.7f64.sin(), 0.0)));
    }
}
