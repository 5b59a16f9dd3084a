//! Root systems of simple Lie algebras from Bourbaki-numbered Cartan matrices.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted for the classical families.
pub const CLASSICAL_RANK_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=CLASSICAL_RANK_CAP).contains(&rank),
            Family::B | Family::C => (2..=CLASSICAL_RANK_CAP).contains(&rank),
            Family::D => (3..=CLASSICAL_RANK_CAP).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every supported type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<DynkinType> {
        use Family::*;
        [A, B, C, D, E, F, G]
            .into_iter()
            .flat_map(|f| (1..=max_rank).filter_map(move |r| DynkinType::new(f, r).ok()))
            .collect()
    }

    /// Cartan matrix `a_ij = 2 (alpha_i | alpha_j) / (alpha_j | alpha_j)`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            Family::F => (0..3).for_each(|i| link(i, i + 1)),
            Family::G => link(0, 1),
        }
        match self.family {
            Family::B => a[n - 2][n - 1] = -2,
            Family::C => a[n - 1][n - 2] = -2,
            Family::F => a[1][2] = -2,
            Family::G => a[1][0] = -3,
            _ => {}
        }
        a
    }

    /// Squared lengths of the simple roots, normalised so that short roots have length 2.
    pub fn simple_lengths(self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::B => (0..n).map(|i| if i < n - 1 { 4 } else { 2 }).collect(),
            Family::C => (0..n).map(|i| if i < n - 1 { 2 } else { 4 }).collect(),
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![2, 6],
            _ => vec![2; n],
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Dynkin type".into()))?;
        let family = parse_family(&letter.to_string())?;
        let digits = chars.as_str();
        if digits.is_empty() || digits.len() > 3 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad Dynkin type `{s}`")));
        }
        let rank = digits.parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
        DynkinType::new(family, rank)
    }
}

pub fn parse_family(s: &str) -> Result<Family> {
    Ok(match s.trim().to_ascii_uppercase().as_str() {
        "A" => Family::A,
        "B" => Family::B,
        "C" => Family::C,
        "D" => Family::D,
        "E" => Family::E,
        "F" => Family::F,
        "G" => Family::G,
        other => return Err(Error::Parse(format!("unknown family `{other}`"))),
    })
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Root written in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn coeff(&self, node: usize) -> i64 {
        self.0[node - 1]
    }

    /// Index of the first simple root in the support (0-based).
    pub fn support_start(&self) -> usize {
        self.0.iter().position(|&c| c != 0).unwrap_or(self.0.len())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    dynkin: DynkinType,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    roots: Vec<Root>,
    positive: Vec<Root>,
    lookup: HashSet<Root>,
    longest: Root,
}

impl RootSystem {
    pub fn new(dynkin: DynkinType) -> Self {
        let cartan = dynkin.cartan_matrix();
        let lengths = dynkin.simple_lengths();
        let n = dynkin.rank();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * lengths[j] / 2).collect())
            .collect();
        let simple: Vec<Root> = (0..n)
            .map(|i| Root((0..n).map(|j| i64::from(i == j)).collect()))
            .collect();
        let mut lookup: HashSet<Root> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Root> = simple.into_iter().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta.0[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image.0[i] -= pairing;
                if lookup.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<Root> = lookup.iter().cloned().collect();
        roots.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));
        let positive: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();
        let longest = positive.last().expect("nonempty root system").clone();
        RootSystem {
            dynkin,
            cartan,
            gram,
            lengths,
            roots,
            positive,
            lookup,
            longest,
        }
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix of the simple roots.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn simple_lengths(&self) -> &[i64] {
        &self.lengths
    }

    /// All roots sorted by height, then lexicographically.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.lookup.contains(v)
    }

    pub fn longest_root(&self) -> &Root {
        &self.longest
    }

    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        inner_with(&self.gram, &a.0, &b.0)
    }

    pub fn length_sq(&self, a: &Root) -> i64 {
        self.inner(a, a)
    }

    pub fn long_length(&self) -> i64 {
        *self.lengths.iter().max().expect("rank >= 1")
    }

    pub fn is_long(&self, a: &Root) -> bool {
        self.length_sq(a) == self.long_length()
    }

    /// Cartan number `<beta | alpha> = 2 (beta | alpha) / (alpha | alpha)`.
    pub fn cartan_number(&self, beta: &Root, alpha: &Root) -> Result<i64> {
        for r in [beta, alpha] {
            if !self.is_root(r) {
                return Err(Error::NotARoot(r.0.clone()));
            }
        }
        Ok(2 * self.inner(beta, alpha) / self.length_sq(alpha))
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank() {
            return Err(Error::NodeOutOfRange {
                dynkin: self.dynkin.to_string(),
                node,
            });
        }
        Ok(())
    }

    /// Positive roots with positive coefficient on `node` (the roots of the unipotent radical).
    pub fn graded_positive(&self, node: usize) -> Result<Vec<Root>> {
        self.check_node(node)?;
        Ok(self.positive.iter().filter(|r| r.coeff(node) > 0).cloned().collect())
    }

    /// Roots of the Levi factor: coefficient zero on `node`.
    pub fn levi_roots(&self, node: usize) -> Result<Vec<Root>> {
        self.check_node(node)?;
        Ok(self.roots.iter().filter(|r| r.coeff(node) == 0).cloned().collect())
    }

    pub fn is_cominuscule(&self, node: usize) -> Result<bool> {
        self.check_node(node)?;
        Ok(self.longest.coeff(node) == 1)
    }

    /// Nilpotency class of the unipotent radical of the parabolic obtained by removing `nodes`.
    pub fn nilpotency_class(&self, nodes: &[usize]) -> Result<i64> {
        nodes.iter().try_fold(0, |acc, &k| {
            self.check_node(k)?;
            Ok(acc + self.longest.coeff(k))
        })
    }

    /// Nodes adjacent to `node` in the Dynkin diagram.
    pub fn neighbours(&self, node: usize) -> Result<Vec<usize>> {
        self.check_node(node)?;
        Ok((1..=self.rank())
            .filter(|&j| j != node && self.cartan[node - 1][j - 1] != 0)
            .collect())
    }

    /// Dimension of the homogeneous space of the Levi factor obtained by marking the neighbours of
    /// `node` on the diagram with `node` removed.
    pub fn marked_levi_quotient_dim(&self, node: usize) -> Result<usize> {
        let nb = self.neighbours(node)?;
        Ok(self
            .positive
            .iter()
            .filter(|r| r.coeff(node) == 0 && nb.iter().any(|&j| r.coeff(j) > 0))
            .count())
    }
}

pub(crate) fn inner_with(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    a.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| x * b.iter().zip(&gram[i]).map(|(y, g)| y * g).sum::<i64>())
        .sum()
}
