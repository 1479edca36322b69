//! Orthonormal fast Walsh-Hadamard transform.

use crate::error::{Error, Result};

/// In-place orthonormal Walsh-Hadamard transform (Sylvester ordering).
/// The length must be a power of two.
pub fn fwht_in_place(data: &mut [f64]) -> Result<()> {
    let len = data.len();
    if !len.is_power_of_two() {
        return Err(Error::invalid(
            "Walsh-Hadamard transform",
            format!("length must be a power of two, got {len}"),
        ));
    }
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    let scale = 1.0 / (len as f64).sqrt();
    data.iter_mut().for_each(|v| *v *= scale);
    Ok(())
}

pub fn fwht(x: &[f64]) -> Result<Vec<f64>> {
    let mut out = x.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}
