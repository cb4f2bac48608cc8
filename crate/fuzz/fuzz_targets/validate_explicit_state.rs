#![no_main]

use gaussdist::gaussian::validate_state;
use gaussdist::hat::hat;
use libfuzzer_sys::fuzz_target;
use nalgebra::{DMatrix, DVector};

// First byte picks 1 to 3 modes; the rest is read as little-endian f64s,
// mean first, then the covariance row by row.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let modes = 1 + (head % 3) as usize;
    let n = 2 * modes;
    let values: Vec<f64> = rest.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    if values.len() < n + n * n {
        return;
    }
    let mean = DVector::from_column_slice(&values[..n]);
    let cov = DMatrix::from_row_slice(n, n, &values[n..n + n * n]);
    let Ok(state) = validate_state(mean, cov) else { return };
    let _ = state.classify();
    let moderate = state.cov().amax() < 1e100;
    if let Ok(h) = hat(state.cov()) {
        assert!(!moderate || h.hat.iter().all(|x| x.is_finite()));
    }
});
