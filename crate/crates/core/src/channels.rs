//! Channels stored by their Choi matrix `J = (id ⊗ Φ)(Ω⁺_{d_in})`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{self, max_abs_diff, ComplexMatrix, ComplexVector};
use crate::states::{partial_trace, purify, DensityMatrix, PureState};

/// Tolerance on `Tr_out J = 1/d_in` when wrapping an arbitrary Choi matrix.
pub const TRACE_PRESERVING_TOL: f64 = 1e-6;

/// `(1/sqrt(d)) sum_i |ii>`.
pub fn maximally_entangled(d: usize) -> Result<PureState> {
    if d == 0 {
        return Err(Error::BadParameter("dimension must be at least 1".into()));
    }
    let w = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = ComplexVector::zeros(d * d);
    for i in 0..d {
        v[i * d + i] = w;
    }
    PureState::normalized(vec![d, d], v)
}

fn matrix_unit(d: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut e = ComplexMatrix::zeros(d, d);
    e[(i, j)] = Complex64::new(1.0, 0.0);
    e
}

/// A completely positive trace-preserving map `M(d_in) -> M(d_out)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiChannel {
    d_in: usize,
    d_out: usize,
    choi: DensityMatrix,
}

impl ChoiChannel {
    /// Wraps a Choi state, checking its dims and `Tr_out J = 1/d_in` to
    /// [`TRACE_PRESERVING_TOL`].
    pub fn from_choi(choi: DensityMatrix, d_in: usize, d_out: usize) -> Result<Self> {
        if choi.dims() != [d_in, d_out] {
            return Err(Error::DimensionMismatch(format!(
                "Choi state has dims {:?}, channel needs [{d_in}, {d_out}]",
                choi.dims()
            )));
        }
        let marginal = partial_trace(&choi, &[0])?;
        let expected = kernels::identity(d_in) * Complex64::new(1.0 / d_in as f64, 0.0);
        let deviation = max_abs_diff(marginal.matrix(), &expected);
        if deviation > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { d_in, d_out, choi })
    }

    /// Builds the Choi state `(1/d_in) sum_ij |i><j| ⊗ Φ(|i><j|)` from the
    /// action of the map on matrix units.
    pub fn from_action(
        d_in: usize,
        d_out: usize,
        action: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        if d_in == 0 || d_out == 0 {
            return Err(Error::BadParameter(
                "channel dimensions must be positive".into(),
            ));
        }
        let n = d_in * d_out;
        let scale = Complex64::new(1.0 / d_in as f64, 0.0);
        let mut j = ComplexMatrix::zeros(n, n);
        for a in 0..d_in {
            for b in 0..d_in {
                let out = action(&matrix_unit(d_in, a, b));
                if out.shape() != (d_out, d_out) {
                    return Err(Error::DimensionMismatch(format!(
                        "map produced a {:?} matrix, expected {d_out}x{d_out}",
                        out.shape()
                    )));
                }
                j.view_mut((a * d_out, b * d_out), (d_out, d_out))
                    .copy_from(&(out * scale));
            }
        }
        let choi = DensityMatrix::new(vec![d_in, d_out], j)?;
        Self::from_choi(choi, d_in, d_out)
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::from_action(d, d, |x| x.clone())
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn choi(&self) -> &DensityMatrix {
        &self.choi
    }

    /// `Φ(X) = d_in Tr_in[(X^T ⊗ 1) J]`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.shape() != (self.d_in, self.d_in) {
            return Err(Error::DimensionMismatch(format!(
                "input is {:?}, channel expects {}x{}",
                x.shape(),
                self.d_in,
                self.d_in
            )));
        }
        let (din, dout) = (self.d_in, self.d_out);
        let j = self.choi.matrix();
        let mut out = ComplexMatrix::zeros(dout, dout);
        for a in 0..din {
            for b in 0..din {
                let w = x[(a, b)];
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out += j.view((a * dout, b * dout), (dout, dout)) * w;
            }
        }
        Ok(out * Complex64::new(din as f64, 0.0))
    }

    /// Complementary channel from the canonical purification of `J`: the
    /// environment register becomes the output, so `d_env = rank J`.
    pub fn complement(&self, rank_tol: f64) -> Result<ChoiChannel> {
        let psi = purify(&self.choi, rank_tol)?;
        let d_env = psi.dims()[2];
        Ok(ChoiChannel {
            d_in: self.d_in,
            d_out: d_env,
            choi: psi.rho_ae(),
        })
    }
}

/// Qutrit Werner–Holevo channel `X -> (Tr(X) 1 - X^T) / 2`; its Choi state is
/// the normalized antisymmetric projector `(1 - SWAP) / 6`.
pub fn werner_holevo() -> ChoiChannel {
    ChoiChannel::from_action(3, 3, |x| {
        (kernels::identity(3) * kernels::trace(x) - x.transpose()) * Complex64::new(0.5, 0.0)
    })
    .expect("Werner-Holevo map is a channel")
}

/// `X -> (1 - q) X + q Tr(X) 1/d`.
pub fn depolarizing(d: usize, q: f64) -> Result<ChoiChannel> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::BadParameter(format!(
            "depolarizing parameter must lie in [0, 1], got {q}"
        )));
    }
    ChoiChannel::from_action(d, d, |x| {
        x * Complex64::new(1.0 - q, 0.0)
            + kernels::identity(d) * (kernels::trace(x) * (q / d as f64))
    })
}

/// `X -> (X ⊕ Λ(X)) / 2` with `Λ` depolarizing with parameter `q`.
///
/// The output space has dimension `2 d`; `X` occupies block indices
/// `0..d` and `Λ(X)` occupies `d..2d`. For `0 < q < 1`, `rank J = d^2 + 1`
/// while `rank J_B = 2 d`, so the complementary Choi state is low rank.
pub fn direct_sum_channel(d: usize, q: f64) -> Result<ChoiChannel> {
    if d < 2 {
        return Err(Error::BadParameter(format!(
            "input dimension must be at least 2, got {d}"
        )));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::BadParameter(format!(
            "depolarizing parameter must lie in (0, 1), got {q}"
        )));
    }
    let dep = depolarizing(d, q)?;
    ChoiChannel::from_action(d, 2 * d, |x| {
        let mut out = ComplexMatrix::zeros(2 * d, 2 * d);
        let half = Complex64::new(0.5, 0.0);
        out.view_mut((0, 0), (d, d)).copy_from(&(x * half));
        let lx = dep.apply(x).expect("dimensions match");
        out.view_mut((d, d), (d, d)).copy_from(&(lx * half));
        out
    })
}

/// Capacity statements obtained from a distillation rate of the Choi state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityBounds {
    /// Teleporting distilled ebits: `Q >= D`.
    pub q_lower: f64,
    /// Implementing the channel by teleportation through its Choi state,
    /// which succeeds with probability `1/d_in^2`: `Q <= d_in^2 D`. Only an
    /// upper bound when the supplied rate is the exact distillable
    /// entanglement rather than a lower bound on it.
    pub q_upper_if_exact: f64,
}

pub fn capacity_bounds_from_distillation(d_in: usize, distill_rate: f64) -> Result<CapacityBounds> {
    if !distill_rate.is_finite() || distill_rate < 0.0 {
        return Err(Error::BadParameter(format!(
            "distillation rate must be finite and non-negative, got {distill_rate}"
        )));
    }
    Ok(CapacityBounds {
        q_lower: distill_rate,
        q_upper_if_exact: (d_in * d_in) as f64 * distill_rate,
    })
}
