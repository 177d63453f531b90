//! Bitorsors over product groups, in the canonical model: the underlying
//! set is the product group itself, the left action is plain coordinatewise
//! multiplication, and the right action is twisted by an index permutation
//! plus one automorphism per index. Products, inverses, symmetry actions,
//! and fixed sub-bitorsors all stay inside this model.

use crate::finite::FiniteGroup;
use crate::liegroup::{
    self, AlgebraElement, Automorphism, GroupElement, GroupKind, InnerProduct,
};
use crate::tol;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BitorsorError {
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("no symmetry action present")]
    NoGamma,
    #[error("no fixed points found")]
    EmptyFixedSet,
    #[error("incompatible bitorsors: {0}")]
    Incompatible(String),
}

/// Group operations needed by the bitorsor layer, implemented for matrix
/// groups and for Cayley-table groups.
pub trait GroupCtx: Clone {
    type Elem: Clone + std::fmt::Debug;
    type Aut: Clone + std::fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn aut_identity(&self) -> Self::Aut;
    fn aut_apply(&self, k: &Self::Aut, x: &Self::Elem) -> Self::Elem;
    /// k1 ∘ k2 (apply k2 first).
    fn aut_compose(&self, k1: &Self::Aut, k2: &Self::Aut) -> Self::Aut;
    fn aut_inverse(&self, k: &Self::Aut) -> Self::Aut;
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    /// All elements, for finite groups; None for Lie groups.
    fn all(&self) -> Option<Vec<Self::Elem>>;
}

/// Matrix-group context.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub kind: GroupKind,
}

impl GroupCtx for MatrixGroup {
    type Elem = GroupElement;
    type Aut = Automorphism;

    fn identity(&self) -> GroupElement {
        GroupElement::identity(self.kind)
    }
    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.mul(b)
    }
    fn inverse(&self, a: &GroupElement) -> GroupElement {
        a.inverse()
    }
    fn aut_identity(&self) -> Automorphism {
        Automorphism::identity(self.kind)
    }
    fn aut_apply(&self, k: &Automorphism, x: &GroupElement) -> GroupElement {
        k.apply(x)
    }
    fn aut_compose(&self, k1: &Automorphism, k2: &Automorphism) -> Automorphism {
        k1.compose(k2)
    }
    fn aut_inverse(&self, k: &Automorphism) -> Automorphism {
        k.inverse()
    }
    fn distance(&self, a: &GroupElement, b: &GroupElement) -> f64 {
        a.dist(b)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> GroupElement {
        liegroup::random_group_element(self.kind, rng)
    }
    fn all(&self) -> Option<Vec<GroupElement>> {
        None
    }
}

/// Cayley-table context; automorphisms are element permutations.
#[derive(Debug, Clone)]
pub struct TableGroup {
    pub group: Arc<FiniteGroup>,
}

impl GroupCtx for TableGroup {
    type Elem = usize;
    type Aut = Vec<usize>;

    fn identity(&self) -> usize {
        self.group.identity
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.group.mul(*a, *b)
    }
    fn inverse(&self, a: &usize) -> usize {
        self.group.inv(*a)
    }
    fn aut_identity(&self) -> Vec<usize> {
        (0..self.group.len()).collect()
    }
    fn aut_apply(&self, k: &Vec<usize>, x: &usize) -> usize {
        k[*x]
    }
    fn aut_compose(&self, k1: &Vec<usize>, k2: &Vec<usize>) -> Vec<usize> {
        k2.iter().map(|&x| k1[x]).collect()
    }
    fn aut_inverse(&self, k: &Vec<usize>) -> Vec<usize> {
        let mut inv = vec![0; k.len()];
        for (i, &v) in k.iter().enumerate() {
            inv[v] = i;
        }
        inv
    }
    fn distance(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> usize {
        use rand::Rng;
        rng.gen_range(0..self.group.len())
    }
    fn all(&self) -> Option<Vec<usize>> {
        Some((0..self.group.len()).collect())
    }
}

/// Twisted endomorphism data on a product group: (T x)_i = aut_i(x_{perm(i)}).
/// Composition and inverse follow the usual rules for such maps.
#[derive(Debug, Clone)]
pub struct Twist<C: GroupCtx> {
    pub perm: Vec<usize>,
    pub auts: Vec<C::Aut>,
}

impl<C: GroupCtx> Twist<C> {
    pub fn identity(ctx: &C, n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            auts: vec![ctx.aut_identity(); n],
        }
    }

    pub fn single(aut: C::Aut) -> Self {
        Self {
            perm: vec![0],
            auts: vec![aut],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, ctx: &C, xs: &[C::Elem]) -> Vec<C::Elem> {
        (0..self.len())
            .map(|i| ctx.aut_apply(&self.auts[i], &xs[self.perm[i]]))
            .collect()
    }

    pub fn perm_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v] = i;
        }
        inv
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, ctx: &C, other: &Self) -> Self {
        let perm = (0..self.len())
            .map(|i| other.perm[self.perm[i]])
            .collect();
        let auts = (0..self.len())
            .map(|i| ctx.aut_compose(&self.auts[i], &other.auts[self.perm[i]]))
            .collect();
        Self { perm, auts }
    }

    pub fn inverse(&self, ctx: &C) -> Self {
        let pinv = self.perm_inverse();
        let auts = (0..self.len())
            .map(|j| ctx.aut_inverse(&self.auts[pinv[j]]))
            .collect();
        Self { perm: pinv, auts }
    }

    /// Block-diagonal concatenation.
    pub fn concat(&self, other: &Self) -> Self {
        let n = self.len();
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|&p| p + n));
        let mut auts = self.auts.clone();
        auts.extend(other.auts.iter().cloned());
        Self { perm, auts }
    }

    /// Restriction to a coordinate block; the block must be invariant.
    pub fn restrict(&self, block: &[usize]) -> Result<Self, BitorsorError> {
        let pos: std::collections::HashMap<usize, usize> =
            block.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut perm = Vec::with_capacity(block.len());
        let mut auts = Vec::with_capacity(block.len());
        for &b in block {
            let target = self.perm[b];
            let Some(&local) = pos.get(&target) else {
                return Err(BitorsorError::IndexMismatch(format!(
                    "block not invariant under the twist: {b} -> {target}"
                )));
            };
            perm.push(local);
            auts.push(self.auts[b].clone());
        }
        Ok(Self { perm, auts })
    }
}

/// Affine twisted map on points: x_i ↦ left_i · aut_i(x_{perm(i)}) · right_i.
/// This family is closed under the bitorsor product and inverse
/// constructions, and covers every symmetry action that appears here.
#[derive(Debug, Clone)]
pub struct PointMap<C: GroupCtx> {
    pub left: Vec<C::Elem>,
    pub twist: Twist<C>,
    pub right: Vec<C::Elem>,
}

impl<C: GroupCtx> PointMap<C> {
    pub fn from_twist(ctx: &C, twist: Twist<C>) -> Self {
        let n = twist.len();
        Self {
            left: vec![ctx.identity(); n],
            twist,
            right: vec![ctx.identity(); n],
        }
    }

    pub fn identity(ctx: &C, n: usize) -> Self {
        Self::from_twist(ctx, Twist::identity(ctx, n))
    }

    pub fn len(&self) -> usize {
        self.twist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twist.is_empty()
    }

    pub fn apply(&self, ctx: &C, xs: &[C::Elem]) -> Vec<C::Elem> {
        (0..self.len())
            .map(|i| {
                let core = ctx.aut_apply(&self.twist.auts[i], &xs[self.twist.perm[i]]);
                ctx.mul(&ctx.mul(&self.left[i], &core), &self.right[i])
            })
            .collect()
    }

    pub fn is_pure(&self, ctx: &C) -> bool {
        self.left
            .iter()
            .chain(self.right.iter())
            .all(|e| ctx.distance(e, &ctx.identity()) <= tol::EPS_REPR)
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self {
            left: self
                .left
                .iter()
                .chain(other.left.iter())
                .cloned()
                .collect(),
            twist: self.twist.concat(&other.twist),
            right: self
                .right
                .iter()
                .chain(other.right.iter())
                .cloned()
                .collect(),
        }
    }
}

/// Symmetry data on a bitorsor: a cyclic group of order `order`, acting on
/// the underlying product group through `on_group` and on the points of the
/// bitorsor through `on_points` (both generator data).
#[derive(Debug, Clone)]
pub struct GammaAction<C: GroupCtx> {
    pub order: usize,
    pub on_group: Twist<C>,
    pub on_points: PointMap<C>,
}

impl<C: GroupCtx> GammaAction<C> {
    pub fn act_group(&self, ctx: &C, l: i64, g: &[C::Elem]) -> Vec<C::Elem> {
        let l = l.rem_euclid(self.order as i64);
        let mut out = g.to_vec();
        for _ in 0..l {
            out = self.on_group.apply(ctx, &out);
        }
        out
    }

    pub fn act_points(&self, ctx: &C, l: i64, x: &[C::Elem]) -> Vec<C::Elem> {
        let l = l.rem_euclid(self.order as i64);
        let mut out = x.to_vec();
        for _ in 0..l {
            out = self.on_points.apply(ctx, &out);
        }
        out
    }
}

/// Bitorsor over the product group `G^n` in the canonical model.
#[derive(Debug, Clone)]
pub struct Bitorsor<C: GroupCtx> {
    pub ctx: C,
    pub twist: Twist<C>,
    pub gamma: Option<GammaAction<C>>,
}

pub type MatrixBitorsor = Bitorsor<MatrixGroup>;

impl<C: GroupCtx> Bitorsor<C> {
    pub fn new(ctx: C, twist: Twist<C>) -> Self {
        Self {
            ctx,
            twist,
            gamma: None,
        }
    }

    pub fn trivial(ctx: C, n: usize) -> Self {
        let twist = Twist::identity(&ctx, n);
        Self::new(ctx, twist)
    }

    pub fn with_gamma(mut self, gamma: GammaAction<C>) -> Self {
        assert_eq!(gamma.on_group.len(), self.len(), "gamma group action size");
        assert_eq!(gamma.on_points.len(), self.len(), "gamma point action size");
        self.gamma = Some(gamma);
        self
    }

    pub fn len(&self) -> usize {
        self.twist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twist.is_empty()
    }

    pub fn identity_point(&self) -> Vec<C::Elem> {
        vec![self.ctx.identity(); self.len()]
    }

    pub fn random_point(&self, rng: &mut ChaCha8Rng) -> Vec<C::Elem> {
        (0..self.len()).map(|_| self.ctx.random(rng)).collect()
    }

    pub fn random_group(&self, rng: &mut ChaCha8Rng) -> Vec<C::Elem> {
        self.random_point(rng)
    }

    /// (g·x)_i = g_i x_i.
    pub fn left_act(&self, g: &[C::Elem], x: &[C::Elem]) -> Vec<C::Elem> {
        assert_eq!(g.len(), self.len());
        assert_eq!(x.len(), self.len());
        (0..self.len())
            .map(|i| self.ctx.mul(&g[i], &x[i]))
            .collect()
    }

    /// (x·g)_i = x_i · aut_i(g_{σ(i)}).
    pub fn right_act(&self, x: &[C::Elem], g: &[C::Elem]) -> Vec<C::Elem> {
        assert_eq!(g.len(), self.len());
        assert_eq!(x.len(), self.len());
        (0..self.len())
            .map(|i| {
                self.ctx.mul(
                    &x[i],
                    &self
                        .ctx
                        .aut_apply(&self.twist.auts[i], &g[self.twist.perm[i]]),
                )
            })
            .collect()
    }

    /// Conjugation g · x · g⁻¹ through both actions.
    pub fn conj_act(&self, g: &[C::Elem], x: &[C::Elem]) -> Vec<C::Elem> {
        let ginv: Vec<C::Elem> = g.iter().map(|e| self.ctx.inverse(e)).collect();
        self.right_act(&self.left_act(g, x), &ginv)
    }

    /// The unique g with g·x = y.
    pub fn solve_left(&self, x: &[C::Elem], y: &[C::Elem]) -> Vec<C::Elem> {
        (0..self.len())
            .map(|i| self.ctx.mul(&y[i], &self.ctx.inverse(&x[i])))
            .collect()
    }

    /// The unique g with x·g = y.
    pub fn solve_right(&self, x: &[C::Elem], y: &[C::Elem]) -> Vec<C::Elem> {
        let pinv = self.twist.perm_inverse();
        (0..self.len())
            .map(|j| {
                let i = pinv[j];
                let rel = self.ctx.mul(&self.ctx.inverse(&x[i]), &y[i]);
                self.ctx
                    .aut_apply(&self.ctx.aut_inverse(&self.twist.auts[i]), &rel)
            })
            .collect()
    }

    pub fn point_distance(&self, x: &[C::Elem], y: &[C::Elem]) -> f64 {
        x.iter()
            .zip(y.iter())
            .map(|(a, b)| self.ctx.distance(a, b))
            .fold(0.0, f64::max)
    }

    /// Product bitorsor in the canonical model; the carrier map is
    /// `product_carrier`. Twists compose; the symmetry action is transported
    /// through the carrier.
    pub fn product(&self, other: &Self) -> Result<Self, BitorsorError> {
        if self.len() != other.len() {
            return Err(BitorsorError::Incompatible(format!(
                "product of bitorsors with {} vs {} coordinates",
                self.len(),
                other.len()
            )));
        }
        let ctx = self.ctx.clone();
        let twist = self.twist.compose(&ctx, &other.twist);
        let gamma = match (&self.gamma, &other.gamma) {
            (Some(g1), Some(g2)) => {
                assert_eq!(g1.order, g2.order, "product of bitorsors with different symmetry orders");
                Some(GammaAction {
                    order: g1.order,
                    on_group: g1.on_group.clone(),
                    on_points: product_gamma_points(&ctx, &self.twist, &g1.on_points, &g2.on_points),
                })
            }
            (None, None) => None,
            _ => {
                return Err(BitorsorError::Incompatible(
                    "product of bitorsors where only one carries a symmetry action".into(),
                ))
            }
        };
        Ok(Self { ctx, twist, gamma })
    }

    /// Carrier of the product: (x, y) ↦ x · T₁(y) coordinatewise.
    pub fn product_carrier(&self, x: &[C::Elem], y: &[C::Elem]) -> Vec<C::Elem> {
        let ty = self.twist.apply(&self.ctx, y);
        (0..self.len())
            .map(|i| self.ctx.mul(&x[i], &ty[i]))
            .collect()
    }

    /// Inverse bitorsor; the carrier map is `inverse_carrier`.
    pub fn inverse_bitorsor(&self) -> Self {
        let ctx = self.ctx.clone();
        let twist = self.twist.inverse(&ctx);
        let gamma = self.gamma.as_ref().map(|g| GammaAction {
            order: g.order,
            on_group: g.on_group.clone(),
            on_points: inverse_gamma_points(&ctx, &self.twist, &g.on_points),
        });
        Self { ctx, twist, gamma }
    }

    /// Carrier of the inverse: ι(x)_j = aut_{σ⁻¹(j)}⁻¹(x_{σ⁻¹(j)}⁻¹).
    pub fn inverse_carrier(&self, x: &[C::Elem]) -> Vec<C::Elem> {
        let pinv = self.twist.perm_inverse();
        (0..self.len())
            .map(|j| {
                let i = pinv[j];
                self.ctx.aut_apply(
                    &self.ctx.aut_inverse(&self.twist.auts[i]),
                    &self.ctx.inverse(&x[i]),
                )
            })
            .collect()
    }

    /// Block-diagonal concatenation of bitorsors over the same group.
    pub fn concat(&self, other: &Self) -> Self {
        let gamma = match (&self.gamma, &other.gamma) {
            (Some(g1), Some(g2)) => Some(GammaAction {
                order: g1.order,
                on_group: g1.on_group.concat(&g2.on_group),
                on_points: g1.on_points.concat(&g2.on_points),
            }),
            _ => None,
        };
        Self {
            ctx: self.ctx.clone(),
            twist: self.twist.concat(&other.twist),
            gamma,
        }
    }

    pub fn gamma_act(&self, l: i64, x: &[C::Elem]) -> Result<Vec<C::Elem>, BitorsorError> {
        let g = self.gamma.as_ref().ok_or(BitorsorError::NoGamma)?;
        Ok(g.act_points(&self.ctx, l, x))
    }

    pub fn is_gamma_fixed(&self, x: &[C::Elem], eps: f64) -> Result<bool, BitorsorError> {
        let g = self.gamma.as_ref().ok_or(BitorsorError::NoGamma)?;
        let moved = g.act_points(&self.ctx, 1, x);
        Ok(self.point_distance(x, &moved) <= eps)
    }
}

/// Point action of the symmetry group on the product model, transported
/// through the carrier r(x, y) = x·T₁(y) by decomposing through the
/// identity representative of the first factor:
///   (φ·z)_i = l1_i · aut1_i(l2_{σ₁(i)})
///             · [aut1_i ∘ a2_{σ₁(i)} ∘ aut1_{Π(i)}⁻¹](z_{Π(i)}· ...)
/// with Π = σ₁⁻¹ ∘ π₂ ∘ σ₁ and the right multipliers transported the same
/// way. Derivation: r(φ·e, φ·y) with y = carrier-preimage of z.
fn product_gamma_points<C: GroupCtx>(
    ctx: &C,
    twist1: &Twist<C>,
    g1: &PointMap<C>,
    g2: &PointMap<C>,
) -> PointMap<C> {
    let n = twist1.len();
    let s1 = &twist1.perm;
    let s1inv = twist1.perm_inverse();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut perm = Vec::with_capacity(n);
    let mut auts = Vec::with_capacity(n);
    for i in 0..n {
        let k = s1[i];
        // φ·e on factor 1 contributes l1_i · r1_i on the left of everything.
        let phi_e = ctx.mul(&g1.left[i], &g1.right[i]);
        let j = s1inv[g2.twist.perm[k]];
        perm.push(j);
        let aut = ctx.aut_compose(
            &ctx.aut_compose(&twist1.auts[i], &g2.twist.auts[k]),
            &ctx.aut_inverse(&twist1.auts[s1inv[g2.twist.perm[k]]]),
        );
        auts.push(aut);
        left.push(ctx.mul(&phi_e, &ctx.aut_apply(&twist1.auts[i], &g2.left[k])));
        right.push(ctx.aut_apply(&twist1.auts[i], &g2.right[k]));
    }
    PointMap {
        left,
        twist: Twist { perm, auts },
        right,
    }
}

/// Point action on the inverse model: φ·ι(x) = ι(φ·x) expressed in the
/// inverse carrier's own coordinates. With carrier
/// ι(x)_j = aut_{σ⁻¹(j)}⁻¹(x_{σ⁻¹(j)}⁻¹) and factor action
/// (φ·x)_i = l_i · a_i(x_{π(i)}) · r_i, writing i = σ⁻¹(j):
///   ι(φ·x)_j = aut_i⁻¹(r_i⁻¹) · [aut_i⁻¹ ∘ a_i ∘ aut_{π(i)}](ι(x)_{σ(π(i))})
///              · aut_i⁻¹(l_i⁻¹).
fn inverse_gamma_points<C: GroupCtx>(
    ctx: &C,
    twist: &Twist<C>,
    g: &PointMap<C>,
) -> PointMap<C> {
    let n = twist.len();
    let pinv = twist.perm_inverse();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut perm = Vec::with_capacity(n);
    let mut auts = Vec::with_capacity(n);
    for j in 0..n {
        let i = pinv[j];
        let aut_i_inv = ctx.aut_inverse(&twist.auts[i]);
        let pi_i = g.twist.perm[i];
        perm.push(twist.perm[pi_i]);
        auts.push(ctx.aut_compose(
            &ctx.aut_compose(&aut_i_inv, &g.twist.auts[i]),
            &twist.auts[pi_i],
        ));
        left.push(ctx.aut_apply(&aut_i_inv, &ctx.inverse(&g.right[i])));
        right.push(ctx.aut_apply(&aut_i_inv, &ctx.inverse(&g.left[i])));
    }
    PointMap {
        left,
        twist: Twist { perm, auts },
        right,
    }
}

/// Parametrized fixed sub-bitorsor over the fixed subgroup: membership
/// checks, a base point, and (for matrix groups) the averaged subalgebra.
pub enum FixedSet<C: GroupCtx> {
    /// Fixed points exist; `base` is one of them.
    Nonempty { base: Vec<C::Elem> },
    /// No fixed point was found (exhaustively for finite groups).
    Empty,
}

impl<C: GroupCtx> Bitorsor<C> {
    /// Locate the fixed-point set of the symmetry action. For finite groups
    /// this enumerates; for Lie groups it checks the identity-coordinate
    /// point, which is fixed for every action arising here.
    pub fn fixed_set(&self) -> Result<FixedSet<C>, BitorsorError> {
        let gamma = self.gamma.as_ref().ok_or(BitorsorError::NoGamma)?;
        if let Some(all) = self.ctx.all() {
            let n = self.len();
            let total = (all.len() as u64).checked_pow(n as u32);
            if total.map_or(true, |t| t > tol::ENUM_GUARD) {
                return Err(BitorsorError::Incompatible(
                    "fixed-set enumeration too large".into(),
                ));
            }
            let mut idx = vec![0usize; n];
            loop {
                let point: Vec<C::Elem> = idx.iter().map(|&i| all[i].clone()).collect();
                let moved = gamma.act_points(&self.ctx, 1, &point);
                if self.point_distance(&point, &moved) == 0.0 {
                    return Ok(FixedSet::Nonempty { base: point });
                }
                let mut j = 0;
                loop {
                    if j == n {
                        return Ok(FixedSet::Empty);
                    }
                    idx[j] += 1;
                    if idx[j] < all.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
        } else {
            let e = self.identity_point();
            if self.is_gamma_fixed(&e, tol::EPS_NUM)? {
                Ok(FixedSet::Nonempty { base: e })
            } else {
                Ok(FixedSet::Empty)
            }
        }
    }

    /// All fixed points, finite groups only.
    pub fn enumerate_fixed(&self) -> Result<Vec<Vec<C::Elem>>, BitorsorError> {
        let gamma = self.gamma.as_ref().ok_or(BitorsorError::NoGamma)?;
        let all = self
            .ctx
            .all()
            .ok_or_else(|| BitorsorError::Incompatible("enumeration needs a finite group".into()))?;
        let n = self.len();
        let total = (all.len() as u64).checked_pow(n as u32);
        if total.map_or(true, |t| t > tol::ENUM_GUARD) {
            return Err(BitorsorError::Incompatible("fixed-set enumeration too large".into()));
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        'outer: loop {
            let point: Vec<C::Elem> = idx.iter().map(|&i| all[i].clone()).collect();
            let moved = gamma.act_points(&self.ctx, 1, &point);
            if self.point_distance(&point, &moved) == 0.0 {
                out.push(point);
            }
            let mut j = 0;
            loop {
                if j == n {
                    break 'outer;
                }
                idx[j] += 1;
                if idx[j] < all.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
        Ok(out)
    }
}

impl Bitorsor<MatrixGroup> {
    /// Algebra-level application of the twist (needed by the 2-form layer).
    pub fn twist_alg(&self, xs: &[AlgebraElement]) -> Vec<AlgebraElement> {
        apply_twist_alg(&self.twist, xs)
    }

    /// Basis of the fixed subalgebra of the product algebra under the
    /// symmetry action on the group, via averaging and rank reduction.
    pub fn fixed_subalgebra_basis(&self, metric: &InnerProduct) -> Vec<Vec<AlgebraElement>> {
        let Some(gamma) = &self.gamma else {
            // no symmetry: everything is fixed
            return full_product_basis(self.ctx.kind, self.len());
        };
        let full = full_product_basis(self.ctx.kind, self.len());
        let averaged: Vec<Vec<AlgebraElement>> = full
            .iter()
            .map(|v| average_alg_vector(&gamma.on_group, gamma.order, v))
            .collect();
        orthonormalize_vectors(averaged, metric)
    }

    /// Γ-fixed random point: the identity-coordinate base point translated
    /// by the exponential of a random fixed algebra vector.
    pub fn random_fixed_point(
        &self,
        metric: &InnerProduct,
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<GroupElement>, BitorsorError> {
        let FixedSet::Nonempty { base } = self.fixed_set()? else {
            return Err(BitorsorError::EmptyFixedSet);
        };
        let basis = self.fixed_subalgebra_basis(metric);
        if basis.is_empty() {
            return Ok(base);
        }
        let mut accum = vec![AlgebraElement::zero(self.ctx.kind); self.len()];
        use rand::Rng;
        for b in &basis {
            let c: f64 = rng.gen_range(-0.9..0.9);
            for (a, x) in accum.iter_mut().zip(b.iter()) {
                *a = a.add(&x.scale(c));
            }
        }
        let h: Vec<GroupElement> = accum.iter().map(liegroup::exp).collect();
        Ok(self.left_act(&h, &base))
    }
}

/// Apply a matrix twist at algebra level.
pub fn apply_twist_alg(twist: &Twist<MatrixGroup>, xs: &[AlgebraElement]) -> Vec<AlgebraElement> {
    (0..twist.len())
        .map(|i| twist.auts[i].apply_alg(&xs[twist.perm[i]]))
        .collect()
}

/// Standard basis of the product algebra g^n: one algebra basis element in
/// one slot, zero elsewhere.
pub fn full_product_basis(kind: GroupKind, n: usize) -> Vec<Vec<AlgebraElement>> {
    let basis = liegroup::algebra_basis(kind);
    let mut out = Vec::with_capacity(n * basis.len());
    for slot in 0..n {
        for b in &basis {
            let mut v = vec![AlgebraElement::zero(kind); n];
            v[slot] = b.clone();
            out.push(v);
        }
    }
    out
}

/// Average an algebra vector over the cyclic action generated by `gen`.
pub fn average_alg_vector(
    gen: &Twist<MatrixGroup>,
    order: usize,
    v: &[AlgebraElement],
) -> Vec<AlgebraElement> {
    let n = v.len();
    let kind = v[0].kind;
    let mut acc: Vec<AlgebraElement> = v.to_vec();
    let mut cur: Vec<AlgebraElement> = v.to_vec();
    for _ in 1..order {
        cur = apply_twist_alg(gen, &cur);
        for i in 0..n {
            acc[i] = acc[i].add(&cur[i]);
        }
    }
    acc.iter().map(|x| x.scale(1.0 / order as f64)).collect()
}

fn product_pair(metric: &InnerProduct, a: &[AlgebraElement], b: &[AlgebraElement]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| metric.pair(x, y)).sum()
}

/// Gram–Schmidt over product-algebra vectors, dropping near-zero residuals.
pub fn orthonormalize_vectors(
    vs: Vec<Vec<AlgebraElement>>,
    metric: &InnerProduct,
) -> Vec<Vec<AlgebraElement>> {
    let mut out: Vec<Vec<AlgebraElement>> = Vec::new();
    for mut v in vs {
        for u in &out {
            let c = product_pair(metric, &v, u);
            for i in 0..v.len() {
                v[i] = v[i].sub(&u[i].scale(c));
            }
        }
        let norm = product_pair(metric, &v, &v).max(0.0).sqrt();
        if norm > 1e-8 {
            let inv = 1.0 / norm;
            out.push(v.iter().map(|x| x.scale(inv)).collect());
        }
    }
    out
}

/// The canonical map fixed(B₁)·fixed(B₂) → fixed(B₁·B₂) through the product
/// carrier: checks that the image is fixed and that the map intertwines the
/// restricted left and right actions. Returns the worst residual.
pub fn canonical_fixed_product_residual<C: GroupCtx>(
    b1: &Bitorsor<C>,
    b2: &Bitorsor<C>,
    x1: &[C::Elem],
    x2: &[C::Elem],
    h: &[C::Elem],
) -> Result<f64, BitorsorError> {
    let prod = b1.product(b2)?;
    let z = b1.product_carrier(x1, x2);
    let mut worst: f64 = 0.0;
    // image is fixed
    let moved = prod.gamma_act(1, &z)?;
    worst = worst.max(prod.point_distance(&z, &moved));
    // left equivariance: Φ(h·x1, x2) = h·Φ(x1, x2)
    let lhs = b1.product_carrier(&b1.left_act(h, x1), x2);
    let rhs = prod.left_act(h, &z);
    worst = worst.max(prod.point_distance(&lhs, &rhs));
    // right equivariance: Φ(x1, x2·h) = Φ(x1, x2)·h
    let lhs = b1.product_carrier(x1, &b2.right_act(x2, h));
    let rhs = prod.right_act(&z, h);
    worst = worst.max(prod.point_distance(&lhs, &rhs));
    Ok(worst)
}
