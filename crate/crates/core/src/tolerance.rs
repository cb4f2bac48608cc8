//! Numerical tolerances shared by every module.
//!
//! Values marked relative are scaled by the norm of the quantity they guard.

/// Slack allowed on the uncertainty relation `cov + (i/2)Δ ⪰ 0`.
pub const PSD: f64 = 1e-9;
/// Relative size of the antisymmetric part tolerated before symmetrization.
pub const SYM: f64 = 1e-12;
/// Distance of a symplectic eigenvalue from 1/2 still counted as pure.
pub const PURE: f64 = 1e-9;
/// Commutator norm `‖αΔ − Δα‖` still counted as gauge invariant.
pub const COMM: f64 = 1e-9;
/// Relative residual of `S Δ Sᵀ = Δ`.
pub const SYMP: f64 = 1e-10;
/// Relative residual of `S D Sᵀ = α`.
pub const RECON: f64 = 1e-10;
/// Relative residual of the hat-transform defining equations.
pub const HAT: f64 = 1e-8;
/// Relative slack on closed-form inequalities.
pub const REL: f64 = 1e-9;
/// Agreement between the two evaluation routes of `Tr δ`.
pub const IDENTITY: f64 = 1e-8;
/// Agreement between closed-form values and the truncated Fock oracle.
pub const TRUNCATION: f64 = 1e-6;
/// Eigenvalues of a density matrix above `-CLAMP` are clamped to zero.
pub const CLAMP: f64 = 1e-10;
