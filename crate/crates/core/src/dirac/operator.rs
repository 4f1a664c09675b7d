use num_complex::Complex64;
use serde::Serialize;

use super::eigen::ComplexMatrix;
use super::slash::{a_slash_printed, connection_scalars, ScalarPlacement, Spinor2};
use super::DiracError;
use crate::fixtures::Fixtures;
use crate::linalg::Matrix;
use crate::qparams::{QMode, QParams};
use crate::riemannian::SpinConnection;
use crate::scalars::{Field, GaussianRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiracOptions {
    pub placement: ScalarPlacement,
    /// `false` gives the bare `∂̸`.
    pub with_connection: bool,
}

impl Default for DiracOptions {
    fn default() -> Self {
        DiracOptions {
            placement: ScalarPlacement::Displayed,
            with_connection: true,
        }
    }
}

/// The unnormalized Dirac operator on the 32-dimensional spinor space.
#[derive(Clone, Debug)]
pub struct DiracMatrix {
    pub mode: QMode,
    pub options: DiracOptions,
    pub scalars: Spinor2<GaussianRational>,
    pub exact: Matrix<GaussianRational>,
    pub matrix: ComplexMatrix,
}

pub const SPINOR_DIM: usize = 32;
const BLOCK: usize = 16;

impl DiracMatrix {
    /// `[[R_α − I, R_β], [R_β*, R_δ − I]] + c ⊗ I₁₆` with the printed
    /// translation matrices and `R_δ = R_α`.
    pub fn assemble(
        fx: &Fixtures,
        mode: QMode,
        scalars: Spinor2<GaussianRational>,
        options: DiracOptions,
    ) -> Result<Self, DiracError> {
        let q = mode.value().ok_or(DiracError::UnsupportedMode(mode))?;
        let ra = fx.translation.matrix("R_alpha")?.evaluate(&q);
        let rb = fx.translation.matrix("R_beta")?.evaluate(&q);
        let rbs = fx.translation.matrix("R_beta_star")?.evaluate(&q);
        let blocks = [[&ra, &rb], [&rbs, &ra]];
        let mut exact = Matrix::zeros(SPINOR_DIM, SPINOR_DIM);
        for (a, row) in blocks.iter().enumerate() {
            for (b, blk) in row.iter().enumerate() {
                for i in 0..BLOCK {
                    for j in 0..BLOCK {
                        exact[(a * BLOCK + i, b * BLOCK + j)] = blk[(i, j)].clone();
                    }
                    let d = &mut exact[(a * BLOCK + i, b * BLOCK + i)];
                    if a == b {
                        *d = d.clone() - GaussianRational::one();
                    }
                    if options.with_connection {
                        *d = d.clone() + &scalars[a][b];
                    }
                }
            }
        }
        let matrix = ComplexMatrix::from_fn(SPINOR_DIM, |i, j| exact[(i, j)].to_complex());
        Ok(DiracMatrix {
            mode,
            options,
            scalars,
            exact,
            matrix,
        })
    }

    pub fn trace(&self) -> GaussianRational {
        self.exact.trace()
    }

    pub fn scalars_complex(&self) -> [[Complex64; 2]; 2] {
        self.scalars.clone().map(|r| r.map(|x| x.to_complex()))
    }
}

/// The connection block from the printed closed-form connection.
pub fn printed_scalars(
    fx: &Fixtures,
    mode: QMode,
    placement: ScalarPlacement,
) -> Result<Spinor2<GaussianRational>, DiracError> {
    let p = QParams::at(mode).ok_or(DiracError::UnsupportedMode(mode))?;
    let conn = SpinConnection::printed(&fx.connection, &p)?;
    Ok(connection_scalars(&a_slash_printed(&conn, &p)?, placement))
}

pub fn build_dirac(
    fx: &Fixtures,
    mode: QMode,
    options: DiracOptions,
) -> Result<DiracMatrix, DiracError> {
    let c = printed_scalars(fx, mode, options.placement)?;
    DiracMatrix::assemble(fx, mode, c, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_modes_give_conjugate_matrices() {
        let fx = Fixtures::embedded().unwrap();
        let plus = build_dirac(&fx, QMode::PlusI, DiracOptions::default()).unwrap();
        let minus = build_dirac(&fx, QMode::MinusI, DiracOptions::default()).unwrap();
        assert_eq!(plus.matrix.conj().max_abs_diff(&minus.matrix), 0.0);
    }

    #[test]
    fn trace_at_one() {
        let fx = Fixtures::embedded().unwrap();
        let d = build_dirac(&fx, QMode::One, DiracOptions::default()).unwrap();
        let ra = fx
            .translation
            .matrix("R_alpha")
            .unwrap()
            .evaluate(&GaussianRational::one());
        let c = &d.scalars;
        let expect = (c[0][0].clone() + &c[1][1]) * &GaussianRational::from_int(16)
            + (ra.trace() - GaussianRational::from_int(16)) * &GaussianRational::from_int(2);
        assert_eq!(d.trace(), expect);
    }

    #[test]
    fn generic_mode_is_rejected() {
        let fx = Fixtures::embedded().unwrap();
        assert!(build_dirac(&fx, QMode::Generic, DiracOptions::default()).is_err());
    }
}
