use rand::Rng;

use super::ext::{blade_positions, linear_map_kernel, ExtVector, IndexSpace};
use super::matrix::QMatrix;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// `[[0, J_m], [-J_m, 0]]` with `J_m` the anti-diagonal matrix of ones.
pub fn omega_matrix(m: usize) -> QMatrix {
    QMatrix::from_fn(2 * m, 2 * m, |i, j| int(omega_entry(m, i, j)))
}

/// Entry of `Omega_m` at positions `(i, j)`.
pub fn omega_entry(m: usize, i: usize, j: usize) -> i64 {
    if i < m && j >= m && i + (j - m) == m - 1 {
        1
    } else if i >= m && j < m && (i - m) + j == m - 1 {
        -1
    } else {
        0
    }
}

/// Position of the basis vector paired with `p` by the form.
pub fn partner(m: usize, p: usize) -> usize {
    2 * m - 1 - p
}

pub fn is_symplectic(g: &QMatrix, omega: &QMatrix) -> bool {
    g.is_square() && g.rows() == omega.rows() && &g.transpose().mul(omega).mul(g) == omega
}

fn signed_half(q: &ExtVector) -> Result<usize> {
    match q.space() {
        IndexSpace::Signed(n) => Ok(n),
        IndexSpace::Plain(_) => Err(Error::DimensionMismatch(
            "symplectic operation on an unsigned space".into(),
        )),
    }
}

/// Kernel of `v -> sum_j (-1)^(j+1) omega(v, q_j) q_hat_j`, extended linearly in `q`.
pub fn psi_kernel(q: &ExtVector) -> Result<QMatrix> {
    let n = signed_half(q)?;
    let images: Vec<ExtVector> = (0..2 * n)
        .map(|p| {
            let f: Vec<Rational> = (0..2 * n).map(|x| int(omega_entry(n, p, x))).collect();
            q.interior(&f)
        })
        .collect();
    Ok(linear_map_kernel(&images, 2 * n))
}

/// Contraction with the symplectic form, lowering degree by two.
pub fn form_contraction(q: &ExtVector) -> Result<ExtVector> {
    let n = signed_half(q)?;
    let mut out = ExtVector::zero(q.space());
    for (mask, c) in q.terms() {
        let ps: Vec<usize> = blade_positions(mask).collect();
        for a in 0..ps.len() {
            for b in a + 1..ps.len() {
                let w = omega_entry(n, ps[a], ps[b]);
                if w == 0 {
                    continue;
                }
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let rest = mask & !(1 << ps[a]) & !(1 << ps[b]);
                out.add_term(rest, c * int(sign * w));
            }
        }
    }
    Ok(out)
}

pub fn is_primitive(q: &ExtVector) -> Result<bool> {
    Ok(form_contraction(q)?.is_zero())
}

/// Dimension of the primitive part of `∧^degree` of the `2n`-dimensional symplectic space.
pub fn primitive_dimension(n: usize, degree: usize) -> usize {
    let space = IndexSpace::Signed(n);
    let blades: Vec<u64> = (0u64..1 << (2 * n))
        .filter(|m| m.count_ones() as usize == degree)
        .collect();
    let images: Vec<ExtVector> = blades
        .iter()
        .map(|&m| form_contraction(&ExtVector::from_blade(space, m, int(1))).expect("signed space"))
        .collect();
    linear_map_kernel(&images, blades.len()).rows()
}

pub fn span_dim(a: &QMatrix) -> usize {
    a.rank()
}

pub fn sum_dim(a: &QMatrix, b: &QMatrix) -> usize {
    a.vstack(b).rank()
}

pub fn intersection_dim(a: &QMatrix, b: &QMatrix) -> usize {
    span_dim(a) + span_dim(b) - sum_dim(a, b)
}

/// Rows spanning the symplectic orthogonal of the row span of `a`.
pub fn symplectic_perp(a: &QMatrix) -> QMatrix {
    let m = a.cols() / 2;
    a.mul(&omega_matrix(m)).nullspace()
}

pub fn is_isotropic(a: &QMatrix) -> bool {
    let m = a.cols() / 2;
    a.mul(&omega_matrix(m)).mul(&a.transpose()).is_zero()
}

/// `N - dim(a ∩ b)` for Lagrangian subspaces given by spanning rows.
pub fn hamming_distance(a: &QMatrix, b: &QMatrix) -> usize {
    let n = a.cols() / 2;
    n - intersection_dim(a, b)
}

/// Random integer symplectic matrix of `Sp(2m)` with its inverse, built from transvections.
pub fn random_symplectic(m: usize, steps: usize, rng: &mut impl Rng) -> (QMatrix, QMatrix) {
    let omega = omega_matrix(m);
    let mut g = QMatrix::identity(2 * m);
    let mut g_inv = QMatrix::identity(2 * m);
    for _ in 0..steps {
        let v: Vec<i64> = (0..2 * m).map(|_| rng.gen_range(-1..=1)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let c = rng.gen_range(-3..=3);
        if c == 0 {
            continue;
        }
        let t = transvection(&v, c, &omega);
        let t_inv = transvection(&v, -c, &omega);
        g = g.mul(&t);
        g_inv = t_inv.mul(&g_inv);
    }
    (g, g_inv)
}

/// `x -> x + c omega(x, v) v`.
fn transvection(v: &[i64], c: i64, omega: &QMatrix) -> QMatrix {
    let n = v.len();
    let col = QMatrix::from_fn(n, 1, |i, _| int(v[i]));
    let vvt = col.mul(&col.transpose());
    let update = vvt.mul(omega).scale(&int(-c));
    QMatrix::identity(n).add(&update)
}
