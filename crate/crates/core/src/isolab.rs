//! Tangent orbits of the parabolic `P_k` of `Sp(2N)` acting on the tangent space of the
//! isotropic Grassmannian `IG(k, 2N)`.
//!
//! A tangent vector at `E_k = <e_1, ..., e_k>` is a pair `(sigma, H)`: `sigma` is a symmetric
//! `k x k` matrix (a quadratic form on `E_k`) and `H` is a `k x 2(N-k)` matrix whose row `i` is
//! the image of `e_i` in `E_k^perp / E_k`. The columns of `H` follow the basis
//! `e_{k+1}, ..., e_N, e_{-N}, ..., e_{-k-1}`, on which the form is `Omega_{N-k}`.

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::symplectic::{omega_matrix, random_symplectic};
use crate::exactla::{int, ratio, QMatrix, Rational};
use crate::poset::HasseDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsoContext {
    n: usize,
    k: usize,
}

impl IsoContext {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k + 1 > n {
            return Err(Error::InvalidContext { n, k });
        }
        Ok(IsoContext { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `N - k`; the quotient `E_k^perp / E_k` has dimension `2m`.
    pub fn m(&self) -> usize {
        self.n - self.k
    }

    /// `dim IG(k, 2N) = k(4N - 3k + 1) / 2`.
    pub fn dim(&self) -> usize {
        self.k * (4 * self.n - 3 * self.k + 1) / 2
    }

    pub fn name(&self) -> String {
        format!("IG({},{})", self.k, 2 * self.n)
    }

    /// Column of `H` holding the coordinate of `e_label`, for `k < |label| <= N`.
    pub fn h_column(&self, label: i64) -> Result<usize> {
        let (k, n, m) = (self.k as i64, self.n as i64, self.m());
        let a = label.abs();
        if a <= k || a > n {
            return Err(Error::IndexOutOfRange(label));
        }
        Ok(if label > 0 {
            (label - k - 1) as usize
        } else {
            2 * m - (a - k) as usize
        })
    }

    fn check_dual(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.k {
            return Err(Error::IndexOutOfRange(i as i64));
        }
        Ok(())
    }
}

/// Orbit label `(r, h, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitTriplet {
    pub r: usize,
    pub h: usize,
    pub t: usize,
}

impl OrbitTriplet {
    pub const fn new(r: usize, h: usize, t: usize) -> Self {
        OrbitTriplet { r, h, t }
    }

    pub fn is_zero(&self) -> bool {
        *self == OrbitTriplet::new(0, 0, 0)
    }

    /// Constraints cutting out the orbits of `P_k`.
    pub fn is_valid(&self, ctx: &IsoContext) -> bool {
        let (k, m) = (ctx.k(), ctx.m());
        let OrbitTriplet { r, h, t } = *self;
        r <= k && h <= (k - r).min(2 * m) && t <= h.min(m) && (h - t) % 2 == 0 && h + t <= 2 * m
    }

    fn check(&self, ctx: &IsoContext) -> Result<()> {
        if self.is_valid(ctx) {
            Ok(())
        } else {
            Err(Error::InvalidTriplet(self.to_string()))
        }
    }

    pub fn tangential_identifiable(&self) -> bool {
        self.r + self.h >= 3
    }
}

impl fmt::Display for OrbitTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.h, self.t)
    }
}

impl Serialize for OrbitTriplet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.r, self.h, self.t].serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbitTriplet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [r, h, t] = <[usize; 3]>::deserialize(d)?;
        Ok(OrbitTriplet { r, h, t })
    }
}

/// Tangent vector `sigma + H` at `E_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentElement {
    sigma: QMatrix,
    h: QMatrix,
}

impl TangentElement {
    pub fn new(ctx: &IsoContext, sigma: QMatrix, h: QMatrix) -> Result<Self> {
        let (k, m) = (ctx.k(), ctx.m());
        if (sigma.rows(), sigma.cols()) != (k, k) || (h.rows(), h.cols()) != (k, 2 * m) {
            return Err(Error::DimensionMismatch(format!(
                "expected sigma {k}x{k} and H {k}x{}, got {}x{} and {}x{}",
                2 * m,
                sigma.rows(),
                sigma.cols(),
                h.rows(),
                h.cols()
            )));
        }
        if !sigma.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(TangentElement { sigma, h })
    }

    pub fn zero(ctx: &IsoContext) -> Self {
        TangentElement {
            sigma: QMatrix::zeros(ctx.k(), ctx.k()),
            h: QMatrix::zeros(ctx.k(), 2 * ctx.m()),
        }
    }

    pub fn sigma(&self) -> &QMatrix {
        &self.sigma
    }

    pub fn h(&self) -> &QMatrix {
        &self.h
    }

    /// Adds `c e_{-i}^2`.
    pub fn add_square(&mut self, ctx: &IsoContext, i: usize, c: &Rational) -> Result<()> {
        ctx.check_dual(i)?;
        let v = self.sigma.get(i - 1, i - 1) + c;
        self.sigma.set(i - 1, i - 1, v);
        Ok(())
    }

    /// Adds `c e_{-i} ⊗ e_label`.
    pub fn add_tensor(&mut self, ctx: &IsoContext, i: usize, label: i64, c: &Rational) -> Result<()> {
        ctx.check_dual(i)?;
        let col = ctx.h_column(label)?;
        let v = self.h.get(i - 1, col) + c;
        self.h.set(i - 1, col, v);
        Ok(())
    }

    pub fn add(&self, other: &TangentElement) -> TangentElement {
        TangentElement {
            sigma: self.sigma.add(&other.sigma),
            h: self.h.add(&other.h),
        }
    }

    pub fn scale(&self, c: &Rational) -> TangentElement {
        TangentElement {
            sigma: self.sigma.scale(c),
            h: self.h.scale(c),
        }
    }
}

/// Rank of `sigma`, rank of `H` on `ker sigma`, and the isotropic part of that image.
pub fn classify(ctx: &IsoContext, x: &TangentElement) -> Result<OrbitTriplet> {
    let (k, m) = (ctx.k(), ctx.m());
    if (x.sigma.rows(), x.h.rows(), x.h.cols()) != (k, k, 2 * m) {
        return Err(Error::DimensionMismatch("element does not match context".into()));
    }
    let r = x.sigma.rank();
    let kernel = x.sigma.nullspace();
    let image = kernel.mul(&x.h).row_space();
    let h = image.rows();
    let w = image.mul(&omega_matrix(m)).mul(&image.transpose()).rank();
    Ok(OrbitTriplet::new(r, h, h - w))
}

/// `sigma_r = e_{-k}^2 + ... + e_{-k+r-1}^2`.
fn add_sigma(ctx: &IsoContext, x: &mut TangentElement, r: usize) -> Result<()> {
    let k = ctx.k();
    for i in k + 1 - r..=k {
        x.add_square(ctx, i, &Rational::one())?;
    }
    Ok(())
}

/// Adds the normal form `H_(h,t)`: `t` isotropic rows followed by `(h-t)/2` hyperbolic pairs.
fn add_normal_h(ctx: &IsoContext, x: &mut TangentElement, h: usize, t: usize) -> Result<()> {
    let k = ctx.k() as i64;
    let s = (h - t) / 2;
    let one = Rational::one();
    for i in 1..=t {
        x.add_tensor(ctx, i, k + i as i64, &one)?;
    }
    for i in 1..=s {
        x.add_tensor(ctx, t + i, k + (t + i) as i64, &one)?;
        x.add_tensor(ctx, t + s + i, -(k + (t + i) as i64), &one)?;
    }
    Ok(())
}

/// Normal form `sigma_r + H_(h,t)` of the orbit.
pub fn representative(ctx: &IsoContext, o: OrbitTriplet) -> Result<TangentElement> {
    o.check(ctx)?;
    let mut x = TangentElement::zero(ctx);
    add_sigma(ctx, &mut x, o.r)?;
    add_normal_h(ctx, &mut x, o.h, o.t)?;
    Ok(x)
}

/// `r(r+1)/2 + (r+h)(2N-k-r) + t(t+1)/2 - h^2 - t^2`.
pub fn orbit_dim(ctx: &IsoContext, o: OrbitTriplet) -> Result<usize> {
    o.check(ctx)?;
    let (n, k) = (ctx.n() as i64, ctx.k() as i64);
    let (r, h, t) = (o.r as i64, o.h as i64, o.t as i64);
    let d = r * (r + 1) / 2 + (r + h) * (2 * n - k - r) + t * (t + 1) / 2 - h * h - t * t;
    Ok(d as usize)
}

/// All orbit labels, sorted by dimension and then by label.
pub fn enumerate_orbits(ctx: &IsoContext) -> Vec<OrbitTriplet> {
    let (k, m) = (ctx.k(), ctx.m());
    let mut out: Vec<OrbitTriplet> = (0..=k)
        .flat_map(|r| (0..=2 * m).flat_map(move |h| (0..=m).map(move |t| OrbitTriplet::new(r, h, t))))
        .filter(|o| o.is_valid(ctx))
        .collect();
    out.sort_by_key(|&o| (orbit_dim(ctx, o).expect("valid"), o));
    out
}

/// Element of `P_k`, stored as the assembled `2N x 2N` matrix and its inverse together with
/// its Levi and unipotent factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: QMatrix,
    pub inverse: QMatrix,
    pub levi_gl: QMatrix,
    pub levi_sp: QMatrix,
    pub unip_a: QMatrix,
    pub unip_b: QMatrix,
}

fn anti_identity(k: usize) -> QMatrix {
    QMatrix::from_fn(k, k, |i, j| if i + j + 1 == k { Rational::one() } else { Rational::zero() })
}

impl GroupElement {
    pub fn identity(ctx: &IsoContext) -> Self {
        let (k, m) = (ctx.k(), ctx.m());
        Self::assemble(
            ctx,
            (QMatrix::identity(k), QMatrix::identity(k)),
            (QMatrix::identity(2 * m), QMatrix::identity(2 * m)),
            QMatrix::zeros(k, 2 * m),
            QMatrix::zeros(k, k),
        )
        .expect("identity is valid")
    }

    /// Levi factor `diag(G, S, J G^{-T} J)` times the unipotent factor
    /// `[[I, A, B], [0, I, Omega A^T J], [0, 0, I]]`.
    ///
    /// `B` must satisfy `B J - J B^T = A Omega A^T`.
    pub fn assemble(
        ctx: &IsoContext,
        (g, g_inv): (QMatrix, QMatrix),
        (s, s_inv): (QMatrix, QMatrix),
        a: QMatrix,
        b: QMatrix,
    ) -> Result<Self> {
        let (k, m) = (ctx.k(), ctx.m());
        let d = 2 * ctx.n();
        let j = anti_identity(k);
        let om = omega_matrix(m);
        if b.mul(&j).sub(&j.mul(&b.transpose())) != a.mul(&om).mul(&a.transpose()) {
            return Err(Error::DimensionMismatch("unipotent block violates B J - J B^T = A Omega A^T".into()));
        }
        let c = om.mul(&a.transpose()).mul(&j);
        let mut levi = QMatrix::zeros(d, d);
        levi.set_block(0, 0, &g);
        levi.set_block(k, k, &s);
        levi.set_block(k + 2 * m, k + 2 * m, &j.mul(&g_inv.transpose()).mul(&j));
        let mut levi_inv = QMatrix::zeros(d, d);
        levi_inv.set_block(0, 0, &g_inv);
        levi_inv.set_block(k, k, &s_inv);
        levi_inv.set_block(k + 2 * m, k + 2 * m, &j.mul(&g.transpose()).mul(&j));
        let mut nil = QMatrix::zeros(d, d);
        nil.set_block(0, k, &a);
        nil.set_block(0, k + 2 * m, &b);
        nil.set_block(k, k + 2 * m, &c);
        let id = QMatrix::identity(d);
        let unip = id.add(&nil);
        let unip_inv = id.sub(&nil).add(&nil.mul(&nil));
        Ok(GroupElement {
            matrix: levi.mul(&unip),
            inverse: unip_inv.mul(&levi_inv),
            levi_gl: g,
            levi_sp: s,
            unip_a: a,
            unip_b: b,
        })
    }
}

fn random_unimodular(k: usize, steps: usize, rng: &mut impl Rng) -> (QMatrix, QMatrix) {
    let mut g = QMatrix::identity(k);
    let mut g_inv = QMatrix::identity(k);
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let mut e = QMatrix::identity(k);
        let mut e_inv = QMatrix::identity(k);
        if i == j {
            e.set(i, i, int(-1));
            e_inv.set(i, i, int(-1));
        } else {
            let c = rng.gen_range(-2..=2);
            e.set(i, j, int(c));
            e_inv.set(i, j, int(-c));
        }
        g = g.mul(&e);
        g_inv = e_inv.mul(&g_inv);
    }
    (g, g_inv)
}

/// Random element of `P_k` with small integer parameters.
pub fn random_group_element(ctx: &IsoContext, rng: &mut impl Rng) -> GroupElement {
    let (k, m) = (ctx.k(), ctx.m());
    let gl = random_unimodular(k, 3 * k, rng);
    let sp = random_symplectic(m, 4 * m + 2, rng);
    let a = QMatrix::from_fn(k, 2 * m, |_, _| int(rng.gen_range(-3..=3)));
    let mut sym = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = int(rng.gen_range(-3..=3));
            sym.set(i, j, v.clone());
            sym.set(j, i, v);
        }
    }
    let y = a
        .mul(&omega_matrix(m))
        .mul(&a.transpose())
        .scale(&ratio(1, 2))
        .add(&sym);
    let b = y.mul(&anti_identity(k));
    GroupElement::assemble(ctx, gl, sp, a, b).expect("constructed to satisfy the unipotent relation")
}

/// Induced action on `T = Hom(E_k, V/E_k)`: `phi -> g|_{V/E} ∘ phi ∘ (g|_E)^{-1}`.
pub fn act(ctx: &IsoContext, g: &GroupElement, x: &TangentElement) -> Result<TangentElement> {
    let (k, m) = (ctx.k(), ctx.m());
    let d = 2 * ctx.n();
    if g.matrix.rows() != d {
        return Err(Error::DimensionMismatch("group element does not match context".into()));
    }
    let j = anti_identity(k);
    let g11_inv = g.inverse.block(0, 0, k, k);
    let g22 = g.matrix.block(k, k, 2 * m, 2 * m);
    let g23 = g.matrix.block(k, k + 2 * m, 2 * m, k);
    let g33 = g.matrix.block(k + 2 * m, k + 2 * m, k, k);
    let x21 = x.h.transpose();
    let x31 = j.mul(&x.sigma).scale(&int(-1));
    let y21 = g22.mul(&x21).add(&g23.mul(&x31)).mul(&g11_inv);
    let y31 = g33.mul(&x31).mul(&g11_inv);
    TangentElement::new(ctx, j.mul(&y31).scale(&int(-1)), y21.transpose())
}

/// Random integer element of the tangent space with entries in `-bound..=bound`.
pub fn random_tangent_element(ctx: &IsoContext, bound: i64, rng: &mut impl Rng) -> TangentElement {
    let (k, m) = (ctx.k(), ctx.m());
    let mut sigma = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = int(rng.gen_range(-bound..=bound));
            sigma.set(i, j, v.clone());
            sigma.set(j, i, v);
        }
    }
    let h = QMatrix::from_fn(k, 2 * m, |_, _| int(rng.gen_range(-bound..=bound)));
    TangentElement { sigma, h }
}

/// The four minimal degenerations, plus the one into the divisor `(k-1, 1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Eta,
}

impl Move {
    pub const MINIMAL: [Move; 4] = [Move::Alpha, Move::Beta, Move::Gamma, Move::Delta];

    /// Orbit reached from `o` by this move, if the shift stays in range.
    pub fn target(self, ctx: &IsoContext, o: OrbitTriplet) -> Option<OrbitTriplet> {
        let (r, h, t) = (o.r as i64, o.h as i64, o.t as i64);
        let (dr, dh, dt) = match self {
            Move::Alpha => (0, 1, 1),
            Move::Beta => (0, 1, -1),
            Move::Gamma => (1, -1, 1),
            Move::Delta => (1, -1, -1),
            Move::Eta => return Some(OrbitTriplet::new(ctx.k() - 1, 1, 1)),
        };
        let (r2, h2, t2) = (r + dr, h + dh, t + dt);
        if r2 < 0 || h2 < 0 || t2 < 0 {
            return None;
        }
        let next = OrbitTriplet::new(r2 as usize, h2 as usize, t2 as usize);
        next.is_valid(ctx).then_some(next)
    }

    pub fn name(self) -> &'static str {
        match self {
            Move::Alpha => "alpha",
            Move::Beta => "beta",
            Move::Gamma => "gamma",
            Move::Delta => "delta",
            Move::Eta => "eta",
        }
    }
}

/// How the curve parameter enters a witness family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficient {
    /// `1 / eps`, tending to 0.
    InvEps,
    /// `1 / eps - 1`, tending to -1.
    InvEpsMinusOne,
}

impl Coefficient {
    pub fn at(self, eps: &Rational) -> Rational {
        match self {
            Coefficient::InvEps => eps.recip(),
            Coefficient::InvEpsMinusOne => eps.recip() - Rational::one(),
        }
    }

    pub fn limit(self) -> Rational {
        match self {
            Coefficient::InvEps => Rational::zero(),
            Coefficient::InvEpsMinusOne => -Rational::one(),
        }
    }
}

/// Curve `base + c(eps) direction` lying in `upper` for finite `eps > 0` and tending to a point
/// of `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationWitness {
    pub lower: OrbitTriplet,
    pub upper: OrbitTriplet,
    pub kind: Move,
    pub base: TangentElement,
    pub direction: TangentElement,
    pub coefficient: Coefficient,
}

impl DegenerationWitness {
    pub fn at(&self, eps: &Rational) -> TangentElement {
        self.base.add(&self.direction.scale(&self.coefficient.at(eps)))
    }

    pub fn limit(&self) -> TangentElement {
        self.base.add(&self.direction.scale(&self.coefficient.limit()))
    }
}

/// Explicit curve realising `lower ⊂ closure(upper)` for a minimal move or for the divisor.
pub fn degeneration_witness(
    ctx: &IsoContext,
    lower: OrbitTriplet,
    upper: OrbitTriplet,
) -> Result<DegenerationWitness> {
    lower.check(ctx)?;
    upper.check(ctx)?;
    let kind = Move::MINIMAL
        .into_iter()
        .find(|mv| mv.target(ctx, lower) == Some(upper))
        .or_else(|| {
            let divisor = OrbitTriplet::new(ctx.k() - 1, 1, 1);
            (upper == divisor && lower != divisor && lower.r < ctx.k()).then_some(Move::Eta)
        })
        .ok_or_else(|| Error::NoWitness {
            lower: lower.to_string(),
            upper: upper.to_string(),
        })?;
    let k = ctx.k();
    let OrbitTriplet { r, h, t } = lower;
    let s = (h - t) / 2;
    let one = Rational::one();
    let mut base = TangentElement::zero(ctx);
    let mut direction = TangentElement::zero(ctx);
    let coefficient = match kind {
        Move::Alpha => {
            add_sigma(ctx, &mut base, r)?;
            add_normal_h(ctx, &mut base, h, t)?;
            direction.add_tensor(ctx, h + 1, (k + t + s + 1) as i64, &one)?;
            Coefficient::InvEps
        }
        Move::Beta => {
            add_sigma(ctx, &mut base, r)?;
            add_normal_h(ctx, &mut base, h + 1, t - 1)?;
            direction.add_tensor(ctx, t + s + 1, -((k + t) as i64), &one)?;
            Coefficient::InvEpsMinusOne
        }
        Move::Gamma => {
            add_sigma(ctx, &mut base, r)?;
            add_normal_h(ctx, &mut base, h, t)?;
            direction.add_square(ctx, h, &one)?;
            Coefficient::InvEps
        }
        Move::Delta => {
            add_sigma(ctx, &mut base, r + 1)?;
            add_normal_h(ctx, &mut base, h - 1, t - 1)?;
            base.add_tensor(ctx, k, (k + t + s) as i64, &one)?;
            direction.add_square(ctx, k, &one)?;
            Coefficient::InvEpsMinusOne
        }
        Move::Eta => {
            add_sigma(ctx, &mut base, r)?;
            add_normal_h(ctx, &mut base, h, t)?;
            for i in 2..=k - r {
                direction.add_square(ctx, i, &one)?;
            }
            if h == 0 {
                direction.add_tensor(ctx, 1, (k + 1) as i64, &one)?;
            }
            Coefficient::InvEps
        }
    };
    Ok(DegenerationWitness {
        lower,
        upper,
        kind,
        base,
        direction,
        coefficient,
    })
}

/// Orbit node of a closure diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoOrbit {
    pub triplet: OrbitTriplet,
    pub dim: usize,
}

/// Closure order of the tangent orbits, generated by the minimal moves.
pub fn build_hasse(ctx: &IsoContext) -> HasseDiagram<IsoOrbit> {
    let orbits = enumerate_orbits(ctx);
    let index = |o: OrbitTriplet| orbits.iter().position(|&p| p == o);
    let relations: Vec<(usize, usize, Option<String>)> = orbits
        .iter()
        .enumerate()
        .flat_map(|(i, &o)| {
            Move::MINIMAL.into_iter().filter_map(move |mv| {
                let target = mv.target(ctx, o)?;
                Some((i, target, mv))
            })
        })
        .filter_map(|(i, target, mv)| Some((i, index(target)?, Some(mv.name().to_string()))))
        .collect();
    let nodes = orbits
        .iter()
        .map(|&o| IsoOrbit {
            triplet: o,
            dim: orbit_dim(ctx, o).expect("enumerated orbits are valid"),
        })
        .collect();
    HasseDiagram::from_relations(nodes, relations).expect("moves raise dimension, so no cycles")
}

/// Node of the tangential-orbit graph: the variety itself, or the tangential orbit of a
/// tangent orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentialNode {
    pub label: String,
    pub members: Vec<OrbitTriplet>,
    pub tangential_identifiable: bool,
}

/// Quotient of the closure diagram: `(1,0,0)` and `(0,1,1)` become the variety, `(0,0,0)` is
/// dropped.
pub fn tangential_graph(ctx: &IsoContext) -> HasseDiagram<TangentialNode> {
    let hasse = build_hasse(ctx);
    let base_members = [OrbitTriplet::new(1, 0, 0), OrbitTriplet::new(0, 1, 1)];
    let mut nodes = vec![TangentialNode {
        label: ctx.name(),
        members: base_members.to_vec(),
        tangential_identifiable: false,
    }];
    let mut map = vec![None; hasse.node_count()];
    for (i, o) in hasse.nodes.iter().enumerate() {
        if o.triplet.is_zero() {
            continue;
        }
        if base_members.contains(&o.triplet) {
            map[i] = Some(0);
            continue;
        }
        map[i] = Some(nodes.len());
        nodes.push(TangentialNode {
            label: format!("Theta{}", o.triplet),
            members: vec![o.triplet],
            tangential_identifiable: o.triplet.tangential_identifiable(),
        });
    }
    let relations: Vec<(usize, usize, Option<String>)> = hasse
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = (map[e.lower]?, map[e.upper]?);
            (a != b).then_some((a, b, None))
        })
        .collect();
    HasseDiagram::from_relations(nodes, relations).expect("quotient of a graded order is acyclic")
}

/// Independent cross-checks: the action via conjugation inside `sp(2N)` and orbit dimensions
/// via the rank of the infinitesimal action.
pub mod oracle {
    use super::*;

    fn block_of(ctx: &IsoContext, i: usize) -> usize {
        let (k, m) = (ctx.k(), ctx.m());
        if i < k {
            0
        } else if i < k + 2 * m {
            1
        } else {
            2
        }
    }

    /// Lift of `x` to the strictly block-lower part of `sp(2N)`.
    pub fn lie_lift(ctx: &IsoContext, x: &TangentElement) -> QMatrix {
        let (k, m) = (ctx.k(), ctx.m());
        let d = 2 * ctx.n();
        let j = anti_identity(k);
        let om = omega_matrix(m);
        let mut out = QMatrix::zeros(d, d);
        out.set_block(k, 0, &x.h.transpose());
        out.set_block(k + 2 * m, 0, &j.mul(&x.sigma).scale(&int(-1)));
        out.set_block(k + 2 * m, k, &j.mul(&x.h).mul(&om).scale(&int(-1)));
        out
    }

    pub fn is_in_sp(x: &QMatrix) -> bool {
        let om = omega_matrix(x.rows() / 2);
        let p = om.mul(x);
        p == p.transpose()
    }

    /// Projection of a `2N x 2N` matrix to the tangent space (its first block column below `E_k`).
    pub fn project(ctx: &IsoContext, y: &QMatrix) -> Result<TangentElement> {
        let (k, m) = (ctx.k(), ctx.m());
        let j = anti_identity(k);
        let x21 = y.block(k, 0, 2 * m, k);
        let x31 = y.block(k + 2 * m, 0, k, k);
        TangentElement::new(ctx, j.mul(&x31).scale(&int(-1)), x21.transpose())
    }

    /// `Ad(g) x` modulo the parabolic subalgebra.
    pub fn act_by_conjugation(ctx: &IsoContext, g: &GroupElement, x: &TangentElement) -> Result<TangentElement> {
        let y = g.matrix.mul(&lie_lift(ctx, x)).mul(&g.inverse);
        project(ctx, &y)
    }

    /// Basis of the parabolic subalgebra `p_k`.
    pub fn parabolic_basis(ctx: &IsoContext) -> Vec<QMatrix> {
        let d = 2 * ctx.n();
        let om_t = omega_matrix(ctx.n()).transpose();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a..d {
                let mut s = QMatrix::zeros(d, d);
                s.set(a, b, Rational::one());
                s.set(b, a, Rational::one());
                let x = om_t.mul(&s);
                let lower = (0..d).any(|i| {
                    (0..d).any(|j| block_of(ctx, i) > block_of(ctx, j) && !x.get(i, j).is_zero())
                });
                if !lower {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Dimension of the orbit through `x`: rank of `xi -> [xi, x]` on `p_k`.
    pub fn orbit_dim_infinitesimal(ctx: &IsoContext, x: &TangentElement) -> Result<usize> {
        let lifted = lie_lift(ctx, x);
        let mut rows = Vec::new();
        for xi in parabolic_basis(ctx) {
            let bracket = xi.mul(&lifted).sub(&lifted.mul(&xi));
            let y = project(ctx, &bracket)?;
            let mut v: Vec<Rational> = y.sigma().row_vecs().concat();
            v.extend(y.h().row_vecs().concat());
            rows.push(v);
        }
        let width = rows.first().map_or(0, Vec::len);
        Ok(QMatrix::from_row_list(rows, width).rank())
    }
}
