//! Computational number theory around Dedekind zeta functions: exact
//! Dirichlet-coefficient sieves over ideal norms, Mertens-type summatory
//! asymptotics, the discrete measures m_q and their limit, and the
//! Mellin-transform machinery tying the two together.
//!
//! Everything is organized around three exact integer tables per number
//! field — ideal counts a_K(m), totient sums S_phi(m), and Moebius sums
//! S_mu(m) — built by an Euler-product sieve from the splitting of
//! rational primes. Analytic quantities (zeta values, residues, Mellin
//! transforms) are derived from the tables or from Hurwitz-zeta
//! continuation for quadratic fields.

pub mod cache;
pub mod error;
pub mod field;
pub mod measure;
pub mod mellin;
pub mod poly;
pub mod sieve;
pub mod special;
pub mod splitting;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{FieldInvariants, FieldKind, KappaMethod, NumberField};
pub use measure::{
    critical_exponent_scan, error_curve, exponent_fit, geometric_grid, m_limit, m_q,
    required_bound, ExponentFit, MeasureSample, ScanCurve, Smoothness, TestFunction,
};
pub use mellin::{
    decay_profile, extrapolate_to_zero, inversion_check, m_star, mellin_closed, mellin_numeric,
    DecayProfile, InversionCheck, MellinMethod, MellinPoint,
};
pub use sieve::{
    build_all_tables, build_table, mertens_report, oracle_gaussian_count, oracle_quadratic_count,
    summatory, CoeffKind, CoeffTable, CoeffValues, SummatoryResult,
};
pub use splitting::{
    chi_d, kronecker, prime_ideals_up_to, primes_up_to, split_prime, PrimeIdealClassList,
    PrimeSplit, SplitEntry,
};
pub use zeta::{
    compute_invariants, functional_equation_check, kappa_regression, l_function, lindelof_probe,
    phi_ratio, residue_kappa, riemann_zeta, xi_completed, zeta_any, zeta_quadratic, zeta_series,
    ComplexValue, NuFit,
};
