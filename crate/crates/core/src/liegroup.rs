//! Matrix Lie group substrate: su(n) and so(n) elements, the exponential,
//! the adjoint action, an Ad-invariant inner product, finite-order
//! automorphisms, and seeded samplers.

use crate::linalg::{self, CMat};
use crate::tol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("matrix is not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("automorphism failed validation: {0}")]
    BadAutomorphism(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Supported compact group families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Su(usize),
    So(usize),
}

impl GroupKind {
    pub fn matrix_size(&self) -> usize {
        match self {
            GroupKind::Su(n) | GroupKind::So(n) => *n,
        }
    }

    /// Real dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        match self {
            GroupKind::Su(n) => n * n - 1,
            GroupKind::So(n) => n * (n - 1) / 2,
        }
    }
}

/// Element of the Lie algebra su(n) (anti-Hermitian traceless) or so(n)
/// (real antisymmetric), stored as a complex matrix.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    pub m: CMat,
    pub kind: GroupKind,
}

/// Element of SU(n) or SO(n), stored as a complex matrix.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub m: CMat,
    pub kind: GroupKind,
}

impl AlgebraElement {
    pub fn new(m: CMat, kind: GroupKind) -> Result<Self, GroupError> {
        let x = Self { m, kind };
        x.validate()?;
        Ok(x)
    }

    /// Wrap without validating; for internal arithmetic whose closure in the
    /// algebra is guaranteed by construction.
    pub fn raw(m: CMat, kind: GroupKind) -> Self {
        Self { m, kind }
    }

    pub fn zero(kind: GroupKind) -> Self {
        let n = kind.matrix_size();
        Self::raw(CMat::zeros(n, n), kind)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.kind.matrix_size();
        if self.m.nrows() != n || self.m.ncols() != n {
            return Err(GroupError::Shape(format!(
                "expected {n}x{n}, got {}x{}",
                self.m.nrows(),
                self.m.ncols()
            )));
        }
        let anti = linalg::frob_norm(&(&self.m + &self.m.adjoint()));
        if anti > tol::EPS_REPR {
            return Err(GroupError::NotInAlgebra(format!("not anti-Hermitian ({anti:.2e})")));
        }
        match self.kind {
            GroupKind::Su(_) => {
                let tr = self.m.trace().norm();
                if tr > tol::EPS_REPR {
                    return Err(GroupError::NotInAlgebra(format!("trace {tr:.2e} != 0")));
                }
            }
            GroupKind::So(_) => {
                let imag: f64 = self.m.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
                if imag > tol::EPS_REPR {
                    return Err(GroupError::NotInAlgebra(format!("not real ({imag:.2e})")));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::raw(&self.m + &other.m, self.kind)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::raw(&self.m - &other.m, self.kind)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::raw(self.m.map(|z| z * c), self.kind)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Self::raw(&self.m * &other.m - &other.m * &self.m, self.kind)
    }

    pub fn norm(&self) -> f64 {
        linalg::frob_norm(&self.m)
    }

    /// Project onto the algebra: anti-Hermitian part, minus trace for su(n),
    /// real part for so(n). Used to clean numerical drift, e.g. after logs.
    pub fn project(m: &CMat, kind: GroupKind) -> Self {
        let n = kind.matrix_size();
        let mut a = (m - m.adjoint()).map(|z| z * 0.5);
        match kind {
            GroupKind::Su(_) => {
                let t = a.trace() / Complex64::new(n as f64, 0.0);
                for i in 0..n {
                    a[(i, i)] -= t;
                }
            }
            GroupKind::So(_) => {
                a = a.map(|z| Complex64::new(z.re, 0.0));
            }
        }
        Self::raw(a, kind)
    }
}

impl GroupElement {
    pub fn new(m: CMat, kind: GroupKind) -> Result<Self, GroupError> {
        let g = Self { m, kind };
        g.validate()?;
        Ok(g)
    }

    pub fn raw(m: CMat, kind: GroupKind) -> Self {
        Self { m, kind }
    }

    pub fn identity(kind: GroupKind) -> Self {
        Self::raw(linalg::eye(kind.matrix_size()), kind)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.kind.matrix_size();
        if self.m.nrows() != n || self.m.ncols() != n {
            return Err(GroupError::Shape(format!(
                "expected {n}x{n}, got {}x{}",
                self.m.nrows(),
                self.m.ncols()
            )));
        }
        let uni = linalg::dist(&(&self.m.adjoint() * &self.m), &linalg::eye(n));
        if uni > tol::EPS_REPR {
            return Err(GroupError::NotInGroup(format!("not unitary ({uni:.2e})")));
        }
        let det = self.m.determinant();
        if (det - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(GroupError::NotInGroup(format!("det {det} != 1")));
        }
        if let GroupKind::So(_) = self.kind {
            let imag: f64 = self.m.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
            if imag > tol::EPS_REPR {
                return Err(GroupError::NotInGroup(format!("not real ({imag:.2e})")));
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::raw(&self.m * &other.m, self.kind)
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.m.adjoint(), self.kind)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        linalg::dist(&self.m, &other.m)
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        linalg::dist(&self.m, &linalg::eye(self.kind.matrix_size())) <= eps
    }

    /// Left-trivialized logarithm of `self⁻¹ · other`, projected onto the
    /// algebra.
    pub fn log_from(&self, other: &Self) -> AlgebraElement {
        let rel = self.inverse().mul(other);
        AlgebraElement::project(&linalg::logm(&rel.m), self.kind)
    }
}

/// exp: algebra to group.
pub fn exp(x: &AlgebraElement) -> GroupElement {
    GroupElement::raw(linalg::expm(&x.m), x.kind)
}

/// Adjoint action Ad_g X = g X g⁻¹.
pub fn ad(g: &GroupElement, x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::raw(&g.m * &x.m * g.m.adjoint(), x.kind)
}

/// Ad-invariant inner product (X, Y) = -scale · Re tr(XY).
#[derive(Debug, Clone, Copy)]
pub struct InnerProduct {
    pub scale: f64,
}

impl Default for InnerProduct {
    fn default() -> Self {
        Self { scale: 1.0 }
    }
}

impl InnerProduct {
    pub fn new(scale: f64) -> Self {
        assert!(scale > 0.0, "inner product scale must be positive");
        Self { scale }
    }

    pub fn pair(&self, x: &AlgebraElement, y: &AlgebraElement) -> f64 {
        -self.scale * (&x.m * &y.m).trace().re
    }

    pub fn norm(&self, x: &AlgebraElement) -> f64 {
        self.pair(x, x).max(0.0).sqrt()
    }
}

/// Automorphism of G: g ↦ w τ(g) w⁻¹ where τ is entrywise complex
/// conjugation when `outer` is set and the identity otherwise. Closed under
/// composition and inversion; applies to both group and algebra elements.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub outer: bool,
    pub by: GroupElement,
    pub declared_order: usize,
}

fn conj_mat(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

impl Automorphism {
    pub fn identity(kind: GroupKind) -> Self {
        Self {
            outer: false,
            by: GroupElement::identity(kind),
            declared_order: 1,
        }
    }

    pub fn inner(by: GroupElement, declared_order: usize) -> Self {
        Self {
            outer: false,
            by,
            declared_order,
        }
    }

    /// Composite of the canonical outer representative (entrywise
    /// conjugation) with an inner part.
    pub fn outer_composite(by: GroupElement, declared_order: usize) -> Self {
        Self {
            outer: true,
            by,
            declared_order,
        }
    }

    pub fn is_identity_data(&self) -> bool {
        !self.outer && self.by.is_identity(tol::EPS_REPR)
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let core = if self.outer { conj_mat(&g.m) } else { g.m.clone() };
        GroupElement::raw(&self.by.m * core * self.by.m.adjoint(), g.kind)
    }

    pub fn apply_alg(&self, x: &AlgebraElement) -> AlgebraElement {
        let core = if self.outer { conj_mat(&x.m) } else { x.m.clone() };
        AlgebraElement::raw(&self.by.m * core * self.by.m.adjoint(), x.kind)
    }

    /// κ₁ ∘ κ₂ (apply κ₂ first).
    pub fn compose(&self, other: &Self) -> Self {
        let core = if self.outer {
            conj_mat(&other.by.m)
        } else {
            other.by.m.clone()
        };
        Self {
            outer: self.outer ^ other.outer,
            by: GroupElement::raw(&self.by.m * core, self.by.kind),
            declared_order: self.declared_order.max(other.declared_order),
        }
    }

    pub fn inverse(&self) -> Self {
        if self.outer {
            // (w τ)⁻¹ = τ(w)⁻¹ τ
            Self {
                outer: true,
                by: GroupElement::raw(conj_mat(&self.by.m).adjoint(), self.by.kind),
                declared_order: self.declared_order,
            }
        } else {
            Self {
                outer: false,
                by: self.by.inverse(),
                declared_order: self.declared_order,
            }
        }
    }

    /// Empirical validation on a seeded panel: order, homomorphism property,
    /// and inner-product invariance.
    pub fn validate(&self, metric: &InnerProduct, seed: u64) -> Result<(), GroupError> {
        let kind = self.by.kind;
        let mut rng = crate::liegroup::seeded_rng(seed);
        for _ in 0..64 {
            let g = random_group_element(kind, &mut rng);
            let mut h = g.clone();
            for _ in 0..self.declared_order {
                h = self.apply(&h);
            }
            if h.dist(&g) > 1e-10 {
                return Err(GroupError::BadAutomorphism(format!(
                    "declared order {} not satisfied ({:.2e})",
                    self.declared_order,
                    h.dist(&g)
                )));
            }
            let x = random_algebra_element(kind, &mut rng);
            let y = random_algebra_element(kind, &mut rng);
            let before = metric.pair(&x, &y);
            let after = metric.pair(&self.apply_alg(&x), &self.apply_alg(&y));
            if (before - after).abs() > tol::EPS_NUM * (1.0 + before.abs()) {
                return Err(GroupError::BadAutomorphism(format!(
                    "inner product not preserved ({:.2e})",
                    (before - after).abs()
                )));
            }
            let g2 = random_group_element(kind, &mut rng);
            let lhs = self.apply(&g.mul(&g2));
            let rhs = self.apply(&g).mul(&self.apply(&g2));
            if lhs.dist(&rhs) > tol::EPS_NUM {
                return Err(GroupError::BadAutomorphism("not a homomorphism".into()));
            }
        }
        Ok(())
    }
}

/// Orthogonal basis of the algebra with respect to -Re tr(XY). Off-diagonal
/// pairs have squared norm 2; the diagonal chain elements diag(i,..,i,-k·i)
/// have squared norm k(k+1).
pub fn algebra_basis(kind: GroupKind) -> Vec<AlgebraElement> {
    let n = kind.matrix_size();
    let mut basis = Vec::with_capacity(kind.dim());
    match kind {
        GroupKind::Su(_) => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut a = CMat::zeros(n, n);
                    a[(i, j)] = Complex64::new(1.0, 0.0);
                    a[(j, i)] = Complex64::new(-1.0, 0.0);
                    basis.push(AlgebraElement::raw(a, kind));
                    let mut b = CMat::zeros(n, n);
                    b[(i, j)] = Complex64::new(0.0, 1.0);
                    b[(j, i)] = Complex64::new(0.0, 1.0);
                    basis.push(AlgebraElement::raw(b, kind));
                }
            }
            for k in 1..n {
                let mut d = CMat::zeros(n, n);
                for i in 0..k {
                    d[(i, i)] = Complex64::new(0.0, 1.0);
                }
                d[(k, k)] = Complex64::new(0.0, -(k as f64));
                basis.push(AlgebraElement::raw(d, kind));
            }
        }
        GroupKind::So(_) => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut a = CMat::zeros(n, n);
                    a[(i, j)] = Complex64::new(1.0, 0.0);
                    a[(j, i)] = Complex64::new(-1.0, 0.0);
                    basis.push(AlgebraElement::raw(a, kind));
                }
            }
        }
    }
    basis
}

/// Coefficients of `x` in `algebra_basis` with respect to the metric.
pub fn algebra_coords(x: &AlgebraElement, metric: &InnerProduct) -> Vec<f64> {
    let basis = algebra_basis(x.kind);
    gram_solve(&basis, x, metric)
}

fn gram_solve(basis: &[AlgebraElement], x: &AlgebraElement, metric: &InnerProduct) -> Vec<f64> {
    let d = basis.len();
    let mut g = DMatrix::<f64>::zeros(d, d);
    let mut rhs = DMatrix::<f64>::zeros(d, 1);
    for i in 0..d {
        for j in 0..d {
            g[(i, j)] = metric.pair(&basis[i], &basis[j]);
        }
        rhs[(i, 0)] = metric.pair(&basis[i], x);
    }
    let sol = g.lu().solve(&rhs).expect("algebra basis is degenerate");
    (0..d).map(|i| sol[(i, 0)]).collect()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniforms per draw keeps the stream simple and seeded.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Gaussian draw in the algebra: independent N(0,1) coefficients over the
/// orthogonal basis, so E(X,X) = Σ_b (b,b) at scale 1.
pub fn random_algebra_element(kind: GroupKind, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let basis = algebra_basis(kind);
    let mut acc = AlgebraElement::zero(kind);
    for b in &basis {
        acc = acc.add(&b.scale(gaussian(rng)));
    }
    acc
}

/// Group draw: exponential of a scaled Gaussian algebra draw.
pub fn random_group_element(kind: GroupKind, rng: &mut ChaCha8Rng) -> GroupElement {
    let x = random_algebra_element(kind, rng).scale(0.45 / (kind.dim() as f64).sqrt());
    exp(&x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> GroupKind {
        GroupKind::Su(2)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = exp(&AlgebraElement::zero(su2()));
        assert!(e.is_identity(1e-15));
    }

    #[test]
    fn exp_diagonal_closed_form() {
        // exp(diag(iθ, -iθ)) = diag(e^{iθ}, e^{-iθ})
        let theta = 0.7;
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = Complex64::new(0.0, theta);
        m[(1, 1)] = Complex64::new(0.0, -theta);
        let g = exp(&AlgebraElement::raw(m, su2()));
        let mut expect = CMat::zeros(2, 2);
        expect[(0, 0)] = Complex64::new(theta.cos(), theta.sin());
        expect[(1, 1)] = Complex64::new(theta.cos(), -theta.sin());
        assert!(linalg::dist(&g.m, &expect) < 1e-14);
    }

    #[test]
    fn exp_lands_in_group_panel() {
        let mut rng = seeded_rng(11);
        for _ in 0..1000 {
            let x = random_algebra_element(su2(), &mut rng).scale(0.5);
            let g = exp(&x);
            assert!(g.validate().is_ok());
        }
    }

    #[test]
    fn exp_inverse_identity() {
        let mut rng = seeded_rng(5);
        for _ in 0..50 {
            let x = random_algebra_element(su2(), &mut rng).scale(1.5);
            assert!(x.norm() <= 5.0);
            let p = exp(&x).mul(&exp(&x.scale(-1.0)));
            assert!(p.is_identity(1e-12));
        }
    }

    #[test]
    fn exp_derivative_at_zero() {
        // d/dt exp(tX)|_0 = X via central differences.
        let mut rng = seeded_rng(7);
        let x = random_algebra_element(su2(), &mut rng);
        let h = 1e-5;
        let d = (&exp(&x.scale(h)).m - &exp(&x.scale(-h)).m).map(|z| z / (2.0 * h));
        assert!(linalg::dist(&d, &x.m) < 1e-8);
    }

    #[test]
    fn ad_identity_and_composition() {
        let mut rng = seeded_rng(13);
        let x = random_algebra_element(su2(), &mut rng);
        let e = GroupElement::identity(su2());
        assert!((ad(&e, &x).sub(&x)).norm() < 1e-15);
        let g = random_group_element(su2(), &mut rng);
        let h = random_group_element(su2(), &mut rng);
        let lhs = ad(&g.mul(&h), &x);
        let rhs = ad(&g, &ad(&h, &x));
        assert!(lhs.sub(&rhs).norm() < 1e-12);
    }

    #[test]
    fn inner_product_values_and_invariance() {
        let metric = InnerProduct::default();
        let kind = su2();
        let y = random_algebra_element(kind, &mut seeded_rng(3));
        assert_eq!(metric.pair(&AlgebraElement::zero(kind), &y), 0.0);
        // X = diag(i, -i): (X, X) = -tr(diag(-1,-1)) = 2.
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = Complex64::new(0.0, 1.0);
        m[(1, 1)] = Complex64::new(0.0, -1.0);
        let x = AlgebraElement::raw(m, kind);
        assert!((metric.pair(&x, &x) - 2.0).abs() < 1e-14);
        let scaled = InnerProduct::new(2.5);
        assert!((scaled.pair(&x, &x) - 5.0).abs() < 1e-14);
        let mut rng = seeded_rng(17);
        for _ in 0..100 {
            let g = random_group_element(kind, &mut rng);
            let a = random_algebra_element(kind, &mut rng);
            let b = random_algebra_element(kind, &mut rng);
            let lhs = metric.pair(&ad(&g, &a), &ad(&g, &b));
            let rhs = metric.pair(&a, &b);
            assert!((lhs - rhs).abs() < tol::EPS_NUM * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn automorphism_identity_and_inner() {
        let kind = su2();
        let metric = InnerProduct::default();
        let mut rng = seeded_rng(23);
        let g = random_group_element(kind, &mut rng);
        let id = Automorphism::identity(kind);
        assert!(id.apply(&g).dist(&g) < 1e-15);
        let w = random_group_element(kind, &mut rng);
        let k = Automorphism::inner(w.clone(), 1000);
        // homomorphism panel is part of validate(); declared order is wrong
        // on purpose so only check the homomorphism/invariance by hand
        let a = random_group_element(kind, &mut rng);
        let b = random_group_element(kind, &mut rng);
        let lhs = k.apply(&a.mul(&b));
        let rhs = k.apply(&a).mul(&k.apply(&b));
        assert!(lhs.dist(&rhs) < tol::EPS_NUM);
        let _ = metric;
    }

    #[test]
    fn outer_conjugation_has_order_two() {
        let kind = GroupKind::Su(3);
        let metric = InnerProduct::default();
        let k = Automorphism::outer_composite(GroupElement::identity(kind), 2);
        k.validate(&metric, 31).unwrap();
        let mut rng = seeded_rng(37);
        let g = random_group_element(kind, &mut rng);
        assert!(k.apply(&k.apply(&g)).dist(&g) < 1e-13);
    }

    #[test]
    fn automorphism_compose_and_inverse() {
        let kind = GroupKind::Su(3);
        let mut rng = seeded_rng(41);
        let w1 = random_group_element(kind, &mut rng);
        let w2 = random_group_element(kind, &mut rng);
        let k1 = Automorphism::outer_composite(w1, 4);
        let k2 = Automorphism::inner(w2, 4);
        let g = random_group_element(kind, &mut rng);
        let lhs = k1.compose(&k2).apply(&g);
        let rhs = k1.apply(&k2.apply(&g));
        assert!(lhs.dist(&rhs) < 1e-12);
        let inv = k1.inverse();
        assert!(inv.apply(&k1.apply(&g)).dist(&g) < 1e-12);
        assert!(k1.apply(&inv.apply(&g)).dist(&g) < 1e-12);
    }

    #[test]
    fn samplers_are_deterministic() {
        for seed in [1u64, 2, 3] {
            let a = random_group_element(su2(), &mut seeded_rng(seed));
            let b = random_group_element(su2(), &mut seeded_rng(seed));
            assert_eq!(a.m, b.m);
        }
    }

    #[test]
    fn sampler_mean_square_norm() {
        // (X,X) = Σ c_b² (b,b) with c_b iid N(0,1): mean Σ(b,b), variance
        // 2·Σ(b,b)². Monte-Carlo mean must land within 3σ of the analytic
        // value.
        let metric = InnerProduct::default();
        for kind in [GroupKind::Su(2), GroupKind::Su(3)] {
            let basis = algebra_basis(kind);
            let expected: f64 = basis.iter().map(|b| metric.pair(b, b)).sum();
            let variance: f64 = basis
                .iter()
                .map(|b| 2.0 * metric.pair(b, b).powi(2))
                .sum();
            let k = 2000;
            let mut rng = seeded_rng(101);
            let mean: f64 = (0..k)
                .map(|_| {
                    let x = random_algebra_element(kind, &mut rng);
                    metric.pair(&x, &x)
                })
                .sum::<f64>()
                / k as f64;
            let sigma = (variance / k as f64).sqrt();
            assert!(
                (mean - expected).abs() < 3.0 * sigma,
                "mean {mean} vs expected {expected} (3σ = {})",
                3.0 * sigma
            );
        }
    }

    #[test]
    fn algebra_basis_is_orthogonal() {
        let metric = InnerProduct::default();
        for kind in [GroupKind::Su(2), GroupKind::Su(3), GroupKind::So(3)] {
            let basis = algebra_basis(kind);
            assert_eq!(basis.len(), kind.dim());
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let p = metric.pair(a, b);
                    if i == j {
                        assert!(p > 0.0);
                    } else {
                        assert!(p.abs() < 1e-14, "basis {i},{j} not orthogonal: {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn so3_elements_are_real() {
        let kind = GroupKind::So(3);
        let mut rng = seeded_rng(55);
        for _ in 0..50 {
            let x = random_algebra_element(kind, &mut rng);
            x.validate().unwrap();
            let g = exp(&x.scale(0.3));
            g.validate().unwrap();
        }
    }

    #[test]
    fn algebra_coords_roundtrip() {
        let metric = InnerProduct::new(1.7);
        for kind in [GroupKind::Su(2), GroupKind::Su(3), GroupKind::So(3)] {
            let mut rng = seeded_rng(77);
            let x = random_algebra_element(kind, &mut rng);
            let coords = algebra_coords(&x, &metric);
            let basis = algebra_basis(kind);
            let mut acc = AlgebraElement::zero(kind);
            for (c, b) in coords.iter().zip(basis.iter()) {
                acc = acc.add(&b.scale(*c));
            }
            assert!(acc.sub(&x).norm() < 1e-10);
        }
    }
}
