use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;

use crate::error::{DmtError, Result};

/// Instantaneous hop capacity log2 det(I + (snr / m_tx) H H^H) in bits per
/// channel use, via a Cholesky factorization of the positive-definite Gram
/// matrix.
pub fn hop_capacity(h: &DMatrix<Complex64>, snr: f64, m_tx: usize) -> Result<f64> {
    if m_tx == 0 {
        return Err(DmtError::Domain("transmit antenna count must be positive".into()));
    }
    scaled_log_det(h, snr / m_tx as f64)
}

/// Cut-set variant without the per-antenna power split:
/// log2 det(I + snr H H^H).
pub fn cutset_capacity(h: &DMatrix<Complex64>, snr: f64) -> Result<f64> {
    scaled_log_det(h, snr)
}

fn scaled_log_det(h: &DMatrix<Complex64>, scale: f64) -> Result<f64> {
    if !(scale > 0.0) {
        return Err(DmtError::Domain(format!("snr must be positive, got scale {scale}")));
    }
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(DmtError::Domain("non-finite channel entry".into()));
    }
    let rows = h.nrows();
    let mut gram = h * h.adjoint();
    gram *= Complex64::new(scale, 0.0);
    for i in 0..rows {
        gram[(i, i)] += Complex64::new(1.0, 0.0);
    }
    let chol = Cholesky::new(gram)
        .ok_or_else(|| DmtError::Numerical("Cholesky failed on I + scale * H H^H".into()))?;
    let log_det: f64 = (0..rows).map(|i| chol.l_dirty()[(i, i)].re.ln()).sum();
    Ok(2.0 * log_det / std::f64::consts::LN_2)
}
