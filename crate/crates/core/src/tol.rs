//! Central tolerance constants. Every threshold used by the verifiers is
//! defined here, next to a note on where it comes from.

/// Representation invariants (unitarity, anti-Hermitian-ness, constraints
/// forced exactly by construction). f64 arithmetic on products of a few
/// dozen small matrices stays far below this.
pub const EPS_REPR: f64 = 1e-12;

/// Algebraic identities checked by sampling (homomorphism properties,
/// Ad-invariance, equivariance chains). Slightly looser than `EPS_REPR`
/// to absorb longer operation chains.
pub const EPS_NUM: f64 = 1e-10;

/// Step for central differences of first derivatives where the quantity
/// compared is itself O(1).
pub const FD_STEP: f64 = 1e-4;

/// Step for central differences used only as a cross-check of a closed
/// form (generating vector fields, holonomy variations).
pub const FD_STEP_FINE: f64 = 1e-5;

/// Exterior-derivative residual for the 2-form identity, with step
/// `FD_STEP`: truncation is O(h^2) times third derivatives of order one.
pub const QH1_TOL: f64 = 1e-6;

/// Moment-map condition residual (closed-form differentials).
pub const QH2_TOL: f64 = 1e-6;

/// Singular values below this ratio of the largest count as zero in the
/// nondegeneracy rank test.
pub const QH3_SV_RATIO: f64 = 1e-8;

/// Cross-check residual for closed forms vs. finite differences.
pub const CROSSCHECK_TOL: f64 = 1e-8;

/// Loop-space residuals at the reference grid sizes: O(N^-2) quadrature
/// error with smooth trigonometric test data.
pub const LOOP_TOL: f64 = 1e-4;

/// Minimal measured convergence order across grid doublings.
pub const LOOP_ORDER_MIN: f64 = 1.9;

/// Exact-identity tolerance (constructor-forced relations, dictionaries).
pub const EPS_EXACT: f64 = 1e-10;

/// Enumeration guard: largest brute-force search space.
pub const ENUM_GUARD: u64 = 10_000_000;
