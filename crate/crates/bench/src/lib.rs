//! Shared inputs for the benchmarks.

use kgring_core::angular::QuantumNumbers;
use kgring_core::model::ModelParams;
use kgring_core::radial::SpectrumRequest;

/// `mu = a0 = r0 = 1` with a ring term, in `dim` dimensions.
pub fn params(dim: u32, beta: f64) -> ModelParams {
    ModelParams::new(1.0, 1.0, 1.0, beta, dim).expect("valid parameters")
}

pub fn level(dim: u32, n: u32) -> QuantumNumbers {
    QuantumNumbers::new(n, 1, vec![1; dim.saturating_sub(3) as usize], 1)
}

/// Window wide enough for the first few levels.
pub fn request(dim: u32, beta: f64, n: u32) -> SpectrumRequest {
    SpectrumRequest::new(params(dim, beta), level(dim, n)).with_window(-1.0 + 1e-6, 40.0).with_points(4000)
}
