//! Orthogonal root cascades in the unipotent radical of a maximal parabolic and the Weyl
//! words they generate.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{int, Rational};
use crate::rootsys::{inner_with, Family, Root, RootSystem};

/// Maximal sequence of mutually orthogonal long roots of the graded part `Phi_k^+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalCascade {
    pub node: usize,
    pub roots: Vec<Root>,
}

impl OrthogonalCascade {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Product `s_{beta_1} ... s_{beta_j}` of reflections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylWord {
    pub reflections: Vec<Root>,
}

/// Long roots of `Phi_k^+` in candidate order: earliest support start, then height, then
/// lexicographic.
fn ordered_candidates(sys: &RootSystem, node: usize) -> Result<Vec<Root>> {
    let mut roots: Vec<Root> = sys
        .graded_positive(node)?
        .into_iter()
        .filter(|r| sys.is_long(r))
        .collect();
    roots.sort_by(|a, b| {
        (a.support_start(), a.height(), &a.0).cmp(&(b.support_start(), b.height(), &b.0))
    });
    Ok(roots)
}

type Bits = Vec<u64>;

fn orthogonality_graph(sys: &RootSystem, roots: &[Root]) -> (Vec<Bits>, Bits) {
    let n = roots.len();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; n];
    let mut all = vec![0u64; words];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
        for j in 0..n {
            if i != j && sys.inner(&roots[i], &roots[j]) == 0 {
                adj[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    (adj, all)
}

fn popcount(s: &[u64]) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &[u64], b: &[u64]) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn first_bit(s: &[u64]) -> Option<usize> {
    let w = s.iter().position(|&x| x != 0)?;
    Some(w * 64 + s[w].trailing_zeros() as usize)
}

fn clear(s: &mut [u64], v: usize) {
    s[v / 64] &= !(1 << (v % 64));
}

/// Plain greedy: repeatedly take the first remaining candidate orthogonal to all chosen roots.
pub fn greedy_cascade(sys: &RootSystem, node: usize) -> Result<OrthogonalCascade> {
    let mut candidates = ordered_candidates(sys, node)?;
    let mut roots = Vec::new();
    while !candidates.is_empty() {
        let best = candidates.remove(0);
        candidates.retain(|r| sys.inner(r, &best) == 0);
        roots.push(best);
    }
    Ok(OrthogonalCascade { node, roots })
}

/// First maximum-size set of mutually orthogonal long roots of `Phi_k^+`, in candidate order.
///
/// Agrees with [`greedy_cascade`] whenever the greedy choice is already maximal, which covers
/// every cominuscule node.
pub fn max_orthogonal_cascade(sys: &RootSystem, node: usize) -> Result<OrthogonalCascade> {
    let candidates = ordered_candidates(sys, node)?;
    let (adj, all) = orthogonality_graph(sys, &candidates);
    let mut best = Vec::new();
    first_maximum(&adj, all, &mut Vec::new(), &mut best);
    Ok(OrthogonalCascade {
        node,
        roots: best.into_iter().map(|i| candidates[i].clone()).collect(),
    })
}

fn first_maximum(adj: &[Bits], mut cand: Bits, path: &mut Vec<usize>, best: &mut Vec<usize>) {
    if path.len() > best.len() {
        *best = path.clone();
    }
    while let Some(v) = first_bit(&cand) {
        if path.len() + popcount(&cand) <= best.len() {
            return;
        }
        clear(&mut cand, v);
        path.push(v);
        first_maximum(adj, and(&cand, &adj[v]), path, best);
        path.pop();
    }
}

/// Size of a largest set of mutually orthogonal long roots in `Phi_k^+`, by pivoted
/// Bron-Kerbosch enumeration of maximal orthogonal sets. Cross-check for the cascade.
pub fn exhaustive_cascade_length(sys: &RootSystem, node: usize) -> Result<usize> {
    let mut roots = ordered_candidates(sys, node)?;
    roots.reverse();
    let (adj, all) = orthogonality_graph(sys, &roots);
    let none = vec![0u64; all.len()];
    Ok(bron_kerbosch(&adj, 0, all, none))
}

fn bron_kerbosch(adj: &[Bits], size: usize, mut p: Bits, mut x: Bits) -> usize {
    let px: Bits = p.iter().zip(&x).map(|(a, b)| a | b).collect();
    let Some(_) = first_bit(&px) else {
        return size;
    };
    let mut pivot = 0;
    let mut pivot_deg = 0;
    let mut scan = px.clone();
    let mut first = true;
    while let Some(u) = first_bit(&scan) {
        clear(&mut scan, u);
        let deg = popcount(&and(&p, &adj[u]));
        if first || deg > pivot_deg {
            pivot = u;
            pivot_deg = deg;
            first = false;
        }
    }
    let mut todo: Bits = p.iter().zip(&adj[pivot]).map(|(a, n)| a & !n).collect();
    let mut best = size;
    while let Some(v) = first_bit(&todo) {
        clear(&mut todo, v);
        best = best.max(bron_kerbosch(adj, size + 1, and(&p, &adj[v]), and(&x, &adj[v])));
        clear(&mut p, v);
        x[v / 64] |= 1 << (v % 64);
    }
    best
}

/// Weyl words `w_j = s_{beta_1} ... s_{beta_j}` for `j = 1..=d`.
pub fn weyl_words(cascade: &OrthogonalCascade) -> Vec<WeylWord> {
    (1..=cascade.len())
        .map(|j| WeylWord {
            reflections: cascade.roots[..j].to_vec(),
        })
        .collect()
}

/// Reflection of a rational vector in simple-root coordinates through `beta`.
pub fn reflect(sys: &RootSystem, beta: &Root, v: &[Rational]) -> Result<Vec<Rational>> {
    if !sys.is_root(beta) {
        return Err(Error::NotARoot(beta.0.clone()));
    }
    if v.len() != sys.rank() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in rank {}",
            v.len(),
            sys.rank()
        )));
    }
    let gram = sys.gram();
    let mut vb = Rational::zero();
    for (i, vi) in v.iter().enumerate() {
        let s: i64 = (0..sys.rank()).map(|j| gram[i][j] * beta.0[j]).sum();
        vb += vi * int(s);
    }
    let c = vb * int(2) / int(sys.length_sq(beta));
    Ok(v.iter()
        .zip(&beta.0)
        .map(|(x, &b)| x - &c * int(b))
        .collect())
}

impl WeylWord {
    /// Applies the word to a vector; the rightmost reflection acts first.
    pub fn apply(&self, sys: &RootSystem, v: &[Rational]) -> Result<Vec<Rational>> {
        self.reflections
            .iter()
            .rev()
            .try_fold(v.to_vec(), |acc, beta| reflect(sys, beta, &acc))
    }

    pub fn apply_root(&self, sys: &RootSystem, r: &Root) -> Result<Root> {
        let v: Vec<Rational> = r.0.iter().map(|&c| int(c)).collect();
        let out = self.apply(sys, &v)?;
        Ok(Root(out.iter().map(|x| x.to_integer().try_into().expect("small")).collect()))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, sys: &RootSystem) -> Result<usize> {
        let mut count = 0;
        for r in sys.positive_roots() {
            if !self.apply_root(sys, r)?.is_positive() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// For type `A_n`, the permutation of `1..=n+1` realising the word (one-line notation).
    pub fn type_a_permutation(&self, sys: &RootSystem) -> Result<Vec<usize>> {
        if sys.dynkin().family() != Family::A {
            return Err(Error::UnsupportedType(sys.dynkin().to_string()));
        }
        let n = sys.rank() + 1;
        let mut perm: Vec<usize> = (1..=n).collect();
        for beta in self.reflections.iter().rev() {
            let (a, b) = type_a_pair(beta);
            for p in perm.iter_mut() {
                if *p == a {
                    *p = b;
                } else if *p == b {
                    *p = a;
                }
            }
        }
        Ok(perm)
    }
}

/// For a positive type-A root `eps_a - eps_b`, returns `(a, b)`.
pub fn type_a_pair(beta: &Root) -> (usize, usize) {
    let start = beta.support_start();
    let len = beta.0.iter().filter(|&&c| c != 0).count();
    (start + 1, start + len + 1)
}

/// `true` if all roots of the cascade are pairwise orthogonal.
pub fn is_orthogonal(sys: &RootSystem, roots: &[Root]) -> bool {
    roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| inner_with(sys.gram(), &a.0, &b.0) == 0))
}
