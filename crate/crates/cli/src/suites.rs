//! Fixed and random state pairs for `verify`.

use gaussdist::fock::StateBuilder;
use gaussdist::sampling::random_builder_pairs;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPair {
    pub label: String,
    pub first: StateBuilder,
    pub second: StateBuilder,
}

impl LabeledPair {
    fn new(label: &str, first: StateBuilder, second: StateBuilder) -> Self {
        Self { label: label.into(), first, second }
    }
}

pub fn canonical_pairs() -> Vec<LabeledPair> {
    use StateBuilder as B;
    let vacuum2 = B::vacuum_of(2);
    vec![
        LabeledPair::new("vacuum vs vacuum", B::Vacuum, B::Vacuum),
        LabeledPair::new("thermal(2) vs vacuum", B::Thermal { nbar: 2.0 }, B::Vacuum),
        LabeledPair::new("coherent(1) vs vacuum", B::Coherent { z: C64::new(1.0, 0.0) }, B::Vacuum),
        LabeledPair::new("squeezed(0.5) vs vacuum", B::Squeezed { r: 0.5, phi: 0.0 }, B::Vacuum),
        LabeledPair::new("coherent(1) vs thermal(1)", B::Coherent { z: C64::new(1.0, 0.0) }, B::Thermal { nbar: 1.0 }),
        LabeledPair::new("two-mode squeezed(0.4) vs vacuum", B::TwoModeSqueezed { r: 0.4 }, vacuum2),
        LabeledPair::new(
            "squeezed(0.3, pi/3) vs coherent(0.5+0.5i)",
            B::Squeezed { r: 0.3, phi: PI / 3.0 },
            B::Coherent { z: C64::new(0.5, 0.5) },
        ),
        LabeledPair::new("thermal(0.5) vs thermal(1.5)", B::Thermal { nbar: 0.5 }, B::Thermal { nbar: 1.5 }),
        LabeledPair::new(
            "displaced squeezed thermal vs thermal(0.3)",
            B::DisplacedSqueezedThermal { z: C64::new(0.4, -0.3), r: 0.25, phi: 0.8, nbar: 0.4 },
            B::Thermal { nbar: 0.3 },
        ),
        LabeledPair::new(
            "coherent x thermal vs squeezed x vacuum",
            B::Product { factors: vec![B::Coherent { z: C64::new(0.3, 0.2) }, B::Thermal { nbar: 0.3 }] },
            B::Product { factors: vec![B::Squeezed { r: 0.2, phi: 0.0 }, B::Vacuum] },
        ),
    ]
}

pub fn random_pairs(seed: u64, count: usize) -> Vec<LabeledPair> {
    random_builder_pairs(seed, count)
        .into_iter()
        .enumerate()
        .map(|(i, (first, second))| LabeledPair { label: format!("random #{i} (seed {seed})"), first, second })
        .collect()
}

/// The thermal-against-vacuum grid of the asymptotic suite.
pub const ASYMPTOTIC_GRID: [f64; 3] = [1e-1, 1e-2, 1e-3];
