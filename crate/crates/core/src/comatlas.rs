//! Secant and tangential orbit atlas of the cominuscule varieties `G/P_k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::ext::linear_map_kernel;
use crate::exactla::{int, ExtVector, IndexSpace, QMatrix, Rational};
use crate::poset::HasseDiagram;
use crate::rootsys::{DynkinType, Family, RootSystem};
use crate::weylcomb::{max_orthogonal_cascade, OrthogonalCascade};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `Gr(k, n)` with `2k <= n`.
    Grassmannian { k: usize, n: usize },
    /// Smooth quadric hypersurface `Q_m`.
    Quadric { m: usize },
    /// `LG(n, 2n)`.
    Lagrangian { n: usize },
    /// Spinor variety `S_n`; `plus` selects the half-spin node `n`.
    Spinor { n: usize, plus: bool },
    CayleyPlane,
    Freudenthal,
}

impl FamilyKind {
    pub fn name(&self) -> String {
        match *self {
            FamilyKind::Grassmannian { k, n } => format!("Gr({k},{n})"),
            FamilyKind::Quadric { m } => format!("Q_{m}"),
            FamilyKind::Lagrangian { n } => format!("LG({n},{})", 2 * n),
            FamilyKind::Spinor { n, plus } => format!("S_{n}{}", if plus { "+" } else { "-" }),
            FamilyKind::CayleyPlane => "OP2".into(),
            FamilyKind::Freudenthal => "E7/P7".into(),
        }
    }

    /// Isomorphic to a smooth quadric (including the low-rank coincidences).
    pub fn is_quadric(&self) -> bool {
        matches!(
            *self,
            FamilyKind::Quadric { .. }
                | FamilyKind::Grassmannian { k: 2, n: 4 }
                | FamilyKind::Lagrangian { n: 2 }
                | FamilyKind::Spinor { n: 4, .. }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillStatus {
    Defective,
    Overfills,
    PerfectlyFills,
    NondefectiveProper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CominusculeFamily {
    pub dynkin: DynkinType,
    pub node: usize,
    pub kind: FamilyKind,
    pub name: String,
    pub dim_x: u64,
    /// Dimension of the ambient projective space.
    pub ambient_dim: u64,
    pub d: usize,
    pub sigma2_dim: u64,
    pub fill_status: FillStatus,
    pub cascade: OrthogonalCascade,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn family_kind(dynkin: DynkinType, node: usize) -> FamilyKind {
    let n = dynkin.rank();
    match dynkin.family() {
        Family::A => {
            let big = n + 1;
            FamilyKind::Grassmannian {
                k: node.min(big - node),
                n: big,
            }
        }
        Family::B => FamilyKind::Quadric { m: 2 * n - 1 },
        Family::C => FamilyKind::Lagrangian { n },
        Family::D if node == 1 => FamilyKind::Quadric { m: 2 * n - 2 },
        Family::D => FamilyKind::Spinor {
            n,
            plus: node == n,
        },
        Family::E if n == 6 => FamilyKind::CayleyPlane,
        _ => FamilyKind::Freudenthal,
    }
}

fn ambient_dim(kind: FamilyKind) -> u64 {
    match kind {
        FamilyKind::Grassmannian { k, n } => binomial(n as u64, k as u64) - 1,
        FamilyKind::Quadric { m } => m as u64 + 1,
        FamilyKind::Lagrangian { n } => {
            let n = n as u64;
            binomial(2 * n, n) - binomial(2 * n, n.saturating_sub(2)) * u64::from(n >= 2) - 1
        }
        FamilyKind::Spinor { n, .. } => (1u64 << (n - 1)) - 1,
        FamilyKind::CayleyPlane => 26,
        FamilyKind::Freudenthal => 55,
    }
}

fn sigma2_dim(kind: FamilyKind, dim_x: u64, ambient: u64) -> u64 {
    let generic = (2 * dim_x + 1).min(ambient);
    match kind {
        FamilyKind::Grassmannian { k: 2, n } if n >= 6 => 4 * n as u64 - 11,
        FamilyKind::CayleyPlane => 25,
        _ => generic,
    }
}

fn fill_status(dim_x: u64, ambient: u64, s2: u64) -> FillStatus {
    let expected = (2 * dim_x + 1).min(ambient);
    if s2 < expected {
        FillStatus::Defective
    } else if s2 == ambient && ambient < 2 * dim_x + 1 {
        FillStatus::Overfills
    } else if s2 == ambient {
        FillStatus::PerfectlyFills
    } else {
        FillStatus::NondefectiveProper
    }
}

/// Identifies `G/P_k` for a cominuscule node and tabulates its secant invariants.
pub fn classify_family(dynkin: DynkinType, node: usize) -> Result<CominusculeFamily> {
    let sys = RootSystem::new(dynkin);
    if !sys.is_cominuscule(node)? {
        return Err(Error::NotCominuscule {
            dynkin: dynkin.to_string(),
            node,
            coefficient: sys.longest_root().coeff(node),
        });
    }
    let kind = family_kind(dynkin, node);
    let cascade = max_orthogonal_cascade(&sys, node)?;
    let dim_x = sys.graded_positive(node)?.len() as u64;
    let ambient = ambient_dim(kind);
    let s2 = sigma2_dim(kind, dim_x, ambient);
    Ok(CominusculeFamily {
        dynkin,
        node,
        kind,
        name: kind.name(),
        dim_x,
        ambient_dim: ambient,
        d: cascade.len(),
        sigma2_dim: s2,
        fill_status: fill_status(dim_x, ambient, s2),
        cascade,
    })
}

/// Every cominuscule `(type, node)` with rank at most `max_rank`.
pub fn all_families(max_rank: usize) -> Vec<CominusculeFamily> {
    DynkinType::all_up_to(max_rank)
        .into_iter()
        .flat_map(|t| (1..=t.rank()).filter_map(move |k| classify_family(t, k).ok()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "j", rename_all = "snake_case")]
pub enum OrbitLabel {
    /// The variety itself, `Sigma_1 = Theta_1`.
    Base,
    /// `Sigma_2 = Theta_2` for `j = 2`, the secant orbit `Sigma_j` for `j >= 3`.
    Sigma(usize),
    /// Tangential orbit `Theta_j`, `j >= 3`.
    Theta(usize),
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Base => write!(f, "X"),
            OrbitLabel::Sigma(2) => write!(f, "Sigma2"),
            OrbitLabel::Sigma(j) => write!(f, "Sigma{j}"),
            OrbitLabel::Theta(j) => write!(f, "Theta{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identifiability {
    RankOne,
    Unidentifiable,
    TangentialIdentifiable,
    Identifiable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularSet {
    Empty,
    Variety,
    Sigma2Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularLocus {
    pub set: SingularSet,
    /// `0` for the empty set.
    pub dim: u64,
}

/// Image in `sigma_2` of the Terracini locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerraciniLocus {
    Empty,
    /// Pairs spanning secant lines through points of the variety.
    OverVariety,
    /// Pairs over the closure of `Sigma_2`.
    OverSigma2Closure,
    /// The variety is a projective space.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitNode {
    pub label: OrbitLabel,
    pub dim: Option<u64>,
    pub identifiability: Identifiability,
    pub decomposition_locus_dim: Option<u64>,
    pub smooth_in_secant: bool,
    pub in_terracini_image: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<ExtVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LociReport {
    pub family: String,
    pub decomposition_locus_dim: Option<u64>,
    pub singular_locus: SingularLocus,
    pub terracini: TerraciniLocus,
}

/// Dimension of the decomposition locus of a point of `Sigma_2`.
fn sigma2_decomposition_dim(fam: &CominusculeFamily) -> Option<u64> {
    if fam.d < 2 {
        return None;
    }
    Some(match fam.kind {
        FamilyKind::Grassmannian { .. } => 4,
        FamilyKind::Quadric { m } => m as u64,
        FamilyKind::Lagrangian { .. } => 3,
        FamilyKind::Spinor { .. } => 6,
        FamilyKind::CayleyPlane => 8,
        FamilyKind::Freudenthal => 10,
    })
}

/// Dimension of `Sigma_2` where it is known.
fn sigma2_orbit_dim(fam: &CominusculeFamily) -> Option<u64> {
    if fam.d == 2 {
        return Some(fam.sigma2_dim);
    }
    match fam.kind {
        FamilyKind::Grassmannian { k, n } => {
            let (k, n) = (k as u64, n as u64);
            Some(k * (n - k) + 2 * n - 7)
        }
        FamilyKind::Lagrangian { n } => {
            let n = n as u64;
            Some(n * (n + 1) / 2 + 2 * n - 3)
        }
        FamilyKind::Spinor { n, .. } => {
            let n = n as u64;
            Some(n * (n - 1) / 2 + 4 * n - 15)
        }
        _ => None,
    }
}

pub fn singular_locus(fam: &CominusculeFamily) -> SingularLocus {
    if fam.sigma2_dim == fam.ambient_dim {
        SingularLocus {
            set: SingularSet::Empty,
            dim: 0,
        }
    } else if fam.d == 2 {
        SingularLocus {
            set: SingularSet::Variety,
            dim: fam.dim_x,
        }
    } else {
        SingularLocus {
            set: SingularSet::Sigma2Closure,
            dim: sigma2_orbit_dim(fam).expect("Sigma_2 dimension known for every singular case"),
        }
    }
}

pub fn terracini_locus(fam: &CominusculeFamily) -> TerraciniLocus {
    match fam.d {
        0 | 1 => TerraciniLocus::NotApplicable,
        2 if fam.kind.is_quadric() => TerraciniLocus::Empty,
        2 => TerraciniLocus::OverVariety,
        _ => TerraciniLocus::OverSigma2Closure,
    }
}

pub fn loci_report(fam: &CominusculeFamily) -> LociReport {
    LociReport {
        family: fam.name.clone(),
        decomposition_locus_dim: sigma2_decomposition_dim(fam),
        singular_locus: singular_locus(fam),
        terracini: terracini_locus(fam),
    }
}

/// Orbit poset template instantiated at `d`, with verdicts and representatives.
pub fn build_orbit_poset(fam: &CominusculeFamily) -> HasseDiagram<OrbitNode> {
    let d = fam.d;
    let mut labels = vec![OrbitLabel::Base];
    if d >= 2 {
        labels.push(OrbitLabel::Sigma(2));
    }
    labels.extend((3..=d).map(OrbitLabel::Theta));
    labels.extend((3..=d).map(OrbitLabel::Sigma));
    let index = |l: OrbitLabel| labels.iter().position(|&x| x == l).expect("label present");
    let mut relations = Vec::new();
    if d >= 2 {
        relations.push((index(OrbitLabel::Base), index(OrbitLabel::Sigma(2))));
    }
    for j in 3..=d {
        let prev_theta = if j == 3 { OrbitLabel::Sigma(2) } else { OrbitLabel::Theta(j - 1) };
        relations.push((index(prev_theta), index(OrbitLabel::Theta(j))));
        relations.push((index(OrbitLabel::Theta(j)), index(OrbitLabel::Sigma(j))));
        if j > 3 {
            relations.push((index(OrbitLabel::Sigma(j - 1)), index(OrbitLabel::Sigma(j))));
        }
    }
    let secants = secant_representatives(fam).ok();
    let tangents = tangent_representatives(fam).ok();
    let sing = singular_locus(fam).set;
    let terr = terracini_locus(fam);
    let nodes = labels
        .iter()
        .map(|&label| {
            let (identifiability, dim) = match label {
                OrbitLabel::Base => (Identifiability::RankOne, Some(fam.dim_x)),
                OrbitLabel::Sigma(2) => (Identifiability::Unidentifiable, sigma2_orbit_dim(fam)),
                OrbitLabel::Sigma(j) => (
                    Identifiability::Identifiable,
                    (j == d).then_some(fam.sigma2_dim),
                ),
                OrbitLabel::Theta(j) => (
                    Identifiability::TangentialIdentifiable,
                    (j == d).then_some(2 * fam.dim_x),
                ),
            };
            let smooth_in_secant = match label {
                OrbitLabel::Base => sing == SingularSet::Empty,
                OrbitLabel::Sigma(2) => sing != SingularSet::Sigma2Closure,
                _ => true,
            };
            let in_terracini_image = match label {
                OrbitLabel::Base => {
                    matches!(terr, TerraciniLocus::OverVariety | TerraciniLocus::OverSigma2Closure)
                }
                OrbitLabel::Sigma(2) => terr == TerraciniLocus::OverSigma2Closure,
                _ => false,
            };
            let representative = match label {
                OrbitLabel::Base => secants.as_ref().map(|s| s[0].clone()),
                OrbitLabel::Sigma(j) => secants.as_ref().map(|s| s[j - 1].clone()),
                OrbitLabel::Theta(j) => tangents.as_ref().map(|t| t[j - 1].point.clone()),
            };
            OrbitNode {
                label,
                dim,
                identifiability,
                decomposition_locus_dim: match label {
                    OrbitLabel::Sigma(2) => sigma2_decomposition_dim(fam),
                    _ => None,
                },
                smooth_in_secant,
                in_terracini_image,
                representative,
            }
        })
        .collect();
    let relations = relations.into_iter().map(|(a, b)| (a, b, None));
    HasseDiagram::from_relations(nodes, relations).expect("template is a DAG")
}

fn no_model(fam: &CominusculeFamily) -> Error {
    Error::NoVectorModel(fam.name.clone())
}

fn blade(space: IndexSpace, labels: impl IntoIterator<Item = i64>) -> ExtVector {
    let labels: Vec<i64> = labels.into_iter().collect();
    ExtVector::blade(space, &labels).expect("labels in range")
}

/// Clifford multiplication by `e_1 + e_1^*`, exchanging the two half-spin representations.
fn clifford_swap(psi: &ExtVector) -> ExtVector {
    let n = psi.dim();
    let e1 = ExtVector::basis_vector(psi.space(), 0);
    let mut f = vec![int(0); n];
    f[0] = int(1);
    e1.wedge(psi).add(&psi.interior(&f))
}

/// Points `x_j` of `Sigma_j`, `j = 1..=d` (with `x_1` on the variety).
pub fn secant_representatives(fam: &CominusculeFamily) -> Result<Vec<ExtVector>> {
    let d = fam.d as i64;
    match fam.kind {
        FamilyKind::Grassmannian { k, n } => {
            let (k, sp) = (k as i64, IndexSpace::Plain(n));
            let base = blade(sp, 1..=k);
            Ok((1..=d)
                .map(|j| base.add(&blade(sp, (k + 1..=k + j).chain(j + 1..=k))))
                .collect())
        }
        FamilyKind::Lagrangian { n } => {
            let (n, sp) = (n as i64, IndexSpace::Signed(n));
            let base = blade(sp, 1..=n);
            Ok((1..=d)
                .map(|j| base.add(&blade(sp, (j + 1..=n).chain((1..=j).map(|i| -i)))))
                .collect())
        }
        FamilyKind::Spinor { n, plus } => {
            let sp = IndexSpace::Plain(n);
            Ok((1..=d)
                .map(|j| {
                    let x = ExtVector::one(sp).add(&blade(sp, 1..=2 * j));
                    if plus {
                        x
                    } else {
                        clifford_swap(&x)
                    }
                })
                .collect())
        }
        _ => Err(no_model(fam)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentRepresentative {
    pub rank: usize,
    /// Tangent direction at the base point.
    pub theta: ExtVector,
    /// Base point plus the tangent direction, a point of `Theta_rank`.
    pub point: ExtVector,
}

/// Tangent directions `theta_j` of rank `j` at the base point, `j = 1..=d`.
pub fn tangent_representatives(fam: &CominusculeFamily) -> Result<Vec<TangentRepresentative>> {
    let d = fam.d as i64;
    let (base, thetas): (ExtVector, Vec<ExtVector>) = match fam.kind {
        FamilyKind::Grassmannian { k, n } => {
            let (k, sp) = (k as i64, IndexSpace::Plain(n));
            let thetas = (1..=d)
                .map(|j| {
                    (1..=j).fold(ExtVector::zero(sp), |acc, i| {
                        acc.add(&blade(sp, (1..=k).map(|l| if l == i { k + i } else { l })))
                    })
                })
                .collect();
            (blade(sp, 1..=k), thetas)
        }
        FamilyKind::Lagrangian { n } => {
            let (n, sp) = (n as i64, IndexSpace::Signed(n));
            let thetas = (1..=d)
                .map(|j| {
                    (1..=j).fold(ExtVector::zero(sp), |acc, i| {
                        let sign = if i % 2 == 1 { 1 } else { -1 };
                        let b = blade(sp, (1..=n).filter(|&l| l != i).chain([-i]));
                        acc.add(&b.scale(&int(sign)))
                    })
                })
                .collect();
            (blade(sp, 1..=n), thetas)
        }
        FamilyKind::Spinor { n, plus } => {
            let sp = IndexSpace::Plain(n);
            let thetas: Vec<ExtVector> = (1..=d)
                .map(|j| {
                    (1..=j).fold(ExtVector::zero(sp), |acc, i| acc.add(&blade(sp, [2 * i - 1, 2 * i])))
                })
                .collect();
            let base = ExtVector::one(sp);
            if plus {
                (base, thetas)
            } else {
                (clifford_swap(&base), thetas.iter().map(clifford_swap).collect())
            }
        }
        _ => return Err(no_model(fam)),
    };
    Ok(thetas
        .into_iter()
        .enumerate()
        .map(|(j, theta)| TangentRepresentative {
            rank: j + 1,
            point: base.add(&theta),
            theta,
        })
        .collect())
}

/// Annihilator of a spinor in `C^n ⊕ (C^n)^*` under `(v, f) -> v ∧ psi + i_f psi`.
pub fn clifford_annihilator(psi: &ExtVector) -> QMatrix {
    let n = psi.dim();
    let mut images: Vec<ExtVector> = (0..n)
        .map(|p| ExtVector::basis_vector(psi.space(), p).wedge(psi))
        .collect();
    images.extend((0..n).map(|p| {
        let mut f = vec![int(0); n];
        f[p] = int(1);
        psi.interior(&f)
    }));
    linear_map_kernel(&images, 2 * n)
}

/// Coefficient matrix of a tangent vector at `e_1 ∧ ... ∧ e_k` in `∧^k C^n`: entry `(i, a)` is
/// the coefficient of `e_i` replaced in place by `e_{k+a+1}`.
pub fn grassmann_tangent_matrix(theta: &ExtVector, k: usize) -> QMatrix {
    let n = theta.dim();
    let sp = theta.space();
    QMatrix::from_fn(k, n - k, |i, a| {
        let b = blade(
            sp,
            (1..=k as i64).map(|l| if l == i as i64 + 1 { (k + a + 1) as i64 } else { l }),
        );
        coefficient_along(theta, &b)
    })
}

/// Symmetric matrix of a tangent vector at `e_1 ∧ ... ∧ e_n` in `∧^n C^{2n}`: entry `(i, a)`
/// is the coefficient of `e_{i+1}` replaced in place by `e_{-(a+1)}`.
pub fn lagrangian_tangent_matrix(theta: &ExtVector) -> QMatrix {
    let sp = theta.space();
    let n = theta.dim() / 2;
    QMatrix::from_fn(n, n, |i, a| {
        let b = blade(
            sp,
            (1..=n as i64).map(|l| if l == i as i64 + 1 { -(a as i64 + 1) } else { l }),
        );
        coefficient_along(theta, &b)
    })
}

fn coefficient_along(v: &ExtVector, unit: &ExtVector) -> Rational {
    let (mask, sign) = unit.terms().next().expect("nonzero blade");
    v.coefficient(mask) * sign
}
