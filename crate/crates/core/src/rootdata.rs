//! Finite root systems of types A–G in Bourbaki numbering.
//!
//! Roots are integer vectors in the simple-root basis; weights are integer
//! vectors in the fundamental-weight basis. The Cartan matrix is stored as
//! `cartan[i][j] = ⟨α_i∨, α_j⟩`, so column `j` is α_j written in fundamental
//! weights.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return Err(Error::UnknownType(c.to_string())),
        })
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A type label such as `G2` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub kind: CartanType,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        if !kind.admits_rank(rank) {
            return Err(Error::RankOutOfRange {
                kind: kind.letter(),
                rank,
            });
        }
        Ok(TypeLabel { kind, rank })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = CartanType::from_letter(chars.next().ok_or_else(|| Error::UnknownType(s.into()))?)?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        TypeLabel::new(kind, rank)
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, n: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * n).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    label: TypeLabel,
    cartan: Vec<Vec<i64>>,
    /// d_i = (α_i, α_i)/2
    symmetrizer: Vec<i64>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn cartan_matrix(kind: CartanType, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    let mut d = vec![1i64; n];
    match kind {
        CartanType::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        CartanType::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // α_n short
            c[n - 1][n - 2] = -2;
            d = vec![2; n];
            d[n - 1] = 1;
        }
        CartanType::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // α_n long
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        CartanType::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        CartanType::E => {
            // 1-3-4-5-6-7-8 with 2 attached to 4
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        CartanType::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        CartanType::G => {
            // α_1 short
            c[0][1] = -3;
            c[1][0] = -1;
            d = vec![1, 3];
        }
    }
    (c, d)
}

impl RootSystem {
    /// Builds the root system by closing the simple roots under the simple
    /// reflections; positive roots are ordered by height, then by
    /// coefficient vector in descending lexicographic order (so α_1, …, α_r
    /// come first).
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let label = TypeLabel::new(kind, rank)?;
        let (cartan, symmetrizer) = cartan_matrix(kind, rank);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut a = vec![0; rank];
            a[i] = 1;
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                let mut img = beta.clone();
                img[i] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut index = HashMap::new();
        for (i, r) in positive.iter().enumerate() {
            index.insert(r.clone(), i);
        }
        Ok(RootSystem {
            label,
            cartan,
            symmetrizer,
            positive,
            index,
        })
    }

    pub fn from_label(label: TypeLabel) -> Result<Self> {
        Self::new(label.kind, label.rank)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Index of a positive root in [`RootSystem::positive_roots`].
    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if v.iter().all(|&c| c >= 0) {
            self.index.contains_key(v)
        } else if v.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            self.index.contains_key(&neg)
        } else {
            false
        }
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Symmetric form on the root lattice, normalised so short roots of
    /// simply-laced components have length² 2.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += x[i] * self.symmetrizer[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    /// Coefficients of β∨ in the simple coroots.
    pub fn coroot_coeffs(&self, beta: &[i64]) -> Vec<i64> {
        let norm = self.inner(beta, beta);
        beta.iter()
            .zip(&self.symmetrizer)
            .map(|(&k, &d)| {
                let num = k * 2 * d;
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect()
    }

    /// ⟨μ, β∨⟩ for μ in fundamental weights.
    pub fn pairing(&self, mu: &Weight, beta: &[i64]) -> i64 {
        self.coroot_coeffs(beta).iter().zip(&mu.0).map(|(c, m)| c * m).sum()
    }

    /// A root-lattice vector expressed in fundamental weights.
    pub fn to_weight(&self, root: &[i64]) -> Weight {
        let r = self.rank();
        Weight((0..r).map(|i| (0..r).map(|j| self.cartan[i][j] * root[j]).sum()).collect())
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().expect("nonempty")
    }

    /// Coefficients of 2ρ = Σ_{β>0} β in the simple roots, and their maximum.
    pub fn two_rho_coefficients(&self) -> (Vec<i64>, i64) {
        let mut coeffs = vec![0; self.rank()];
        for beta in &self.positive {
            for (c, b) in coeffs.iter_mut().zip(beta) {
                *c += b;
            }
        }
        let a = *coeffs.iter().max().unwrap();
        (coeffs, a)
    }

    /// h = 1 + height of the highest root.
    pub fn coxeter_number(&self) -> i64 {
        1 + Self::height(self.highest_root())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// ⟨λ+ρ, β∨⟩ for every positive root β, in positive-root order.
    pub fn pairing_vector(&self, lambda: &Weight) -> Vec<i64> {
        let shifted = lambda.add(&self.rho());
        self.positive.iter().map(|b| self.pairing(&shifted, b)).collect()
    }

    /// Simple reflection s_i acting on a weight.
    pub fn reflect(&self, mu: &Weight, i: usize) -> Weight {
        let k = mu.0[i];
        let alpha = self.cartan.iter().map(|row| row[i]).collect::<Vec<_>>();
        Weight(mu.0.iter().zip(alpha).map(|(m, a)| m - k * a).collect())
    }

    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    fn cartan_adjugate(&self) -> (Vec<Vec<i64>>, i64) {
        let n = self.rank();
        let m: Vec<Vec<i128>> = self.cartan.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let det = determinant(&m);
        let mut adj = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i128>> = m
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != j)
                    .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[i][j] = (sign * determinant(&minor)) as i64;
            }
        }
        (adj, det as i64)
    }

    /// Determinant of the Cartan matrix (order of the fundamental group).
    pub fn cartan_determinant(&self) -> i64 {
        self.cartan_adjugate().1
    }

    /// Whether a weight difference lies in Σ ℤ≥0 α_i.
    pub fn in_positive_root_cone(&self, diff: &Weight) -> bool {
        let (adj, det) = self.cartan_adjugate();
        adj.iter().all(|row| {
            let v: i64 = row.iter().zip(&diff.0).map(|(a, b)| a * b).sum();
            v >= 0 && v % det == 0
        })
    }

    /// Weight multiplicities of the Weyl module V(λ) (Freudenthal).
    pub fn weyl_module_weights(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        if lambda.0.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: lambda.0.len(),
            });
        }
        if lambda.0.iter().any(|&k| k < 0) {
            return Err(Error::NotDominant);
        }
        let r = self.rank();
        let simple: Vec<Weight> = (0..r)
            .map(|j| {
                let mut e = vec![0; r];
                e[j] = 1;
                self.to_weight(&e)
            })
            .collect();
        // all weights, by walking down from λ
        let mut support: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::from([lambda.clone()]);
        support.insert(lambda.clone());
        while let Some(mu) = queue.pop_front() {
            for a in &simple {
                let nu = mu.sub(a);
                if support.contains(&nu) {
                    continue;
                }
                let dom = self.dominant_conjugate(&nu);
                if self.in_positive_root_cone(&lambda.sub(&dom)) {
                    support.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        let mut dominant: Vec<Weight> = support.iter().filter(|w| w.0.iter().all(|&c| c >= 0)).cloned().collect();
        // higher weights first: sort by depth below λ
        let (adj, det) = self.cartan_adjugate();
        let depth = |w: &Weight| -> i64 {
            let diff = lambda.sub(w);
            adj.iter().map(|row| row.iter().zip(&diff.0).map(|(a, b)| a * b).sum::<i64>()).sum::<i64>() / det
        };
        dominant.sort_by_key(|w| (depth(w), std::cmp::Reverse(w.clone())));
        let lam_rho = lambda.add(&self.rho());
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        for mu in &dominant {
            if mu == lambda {
                mult.insert(mu.clone(), 1);
                continue;
            }
            // (λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = (λ−μ, λ+μ+2ρ)
            let diff_root = {
                let diff = lambda.sub(mu);
                adj.iter()
                    .map(|row| row.iter().zip(&diff.0).map(|(a, b)| a * b).sum::<i64>() / det)
                    .collect::<Vec<_>>()
            };
            let sum = lam_rho.add(mu).add(&self.rho());
            let denom = self.weight_root_inner(&sum, &diff_root);
            let mut num: i64 = 0;
            for beta in &self.positive {
                let bw = self.to_weight(beta);
                let mut k = 1;
                loop {
                    let nu = mu.add(&bw.scaled(k));
                    let dom = self.dominant_conjugate(&nu);
                    let m = *mult.get(&dom).unwrap_or(&0);
                    if m == 0 {
                        break;
                    }
                    num += 2 * m as i64 * self.weight_root_inner(&nu, beta);
                    k += 1;
                }
            }
            debug_assert!(denom > 0 && num % denom == 0);
            mult.insert(mu.clone(), (num / denom) as u64);
        }
        Ok(support
            .into_iter()
            .map(|w| {
                let m = mult[&self.dominant_conjugate(&w)];
                (w, m)
            })
            .filter(|(_, m)| *m > 0)
            .collect())
    }

    /// (μ, β) for a weight μ and a root-lattice vector β; (ω_i, α_j) = δ_ij d_j.
    pub fn weight_root_inner(&self, mu: &Weight, beta: &[i64]) -> i64 {
        mu.0.iter()
            .zip(beta)
            .zip(&self.symmetrizer)
            .map(|((m, b), d)| m * b * d)
            .sum()
    }

    /// Band vector ⌊⟨λ+ρ, β∨⟩/p⌋ over positive roots, plus the number of
    /// dominant alcoves whose band vector is componentwise below it.
    pub fn alcove_bands(&self, lambda: &Weight, p: u64) -> Result<AlcoveReport> {
        crate::primefield::check_prime(p)?;
        let pairings = self.pairing_vector(lambda);
        if pairings.iter().any(|&x| x <= 0) {
            return Err(Error::NotDominant);
        }
        if let Some(i) = pairings.iter().position(|&x| x % p as i64 == 0) {
            return Err(Error::OnWall(i));
        }
        let p = p as i64;
        let bands: Vec<i64> = pairings.iter().map(|x| x.div_euclid(p)).collect();
        let count_below = if self.rank() <= 2 {
            Some(self.dominant_alcoves_below(&bands, p))
        } else {
            None
        };
        Ok(AlcoveReport {
            pairings,
            bands,
            count_below,
        })
    }

    // Alcoves are sampled on the lattice (1/K)·X with K = 2h, fine enough
    // that every alcove of the dilated affine arrangement has a sample point
    // off the walls.
    fn dominant_alcoves_below(&self, bands: &[i64], p: i64) -> usize {
        let r = self.rank();
        let k = 2 * self.coxeter_number();
        let simple_bound: Vec<i64> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                let idx = self.positive_index(&e).unwrap();
                k * p * (bands[idx] + 1)
            })
            .collect();
        let coroots: Vec<Vec<i64>> = self.positive.iter().map(|b| self.coroot_coeffs(b)).collect();
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut point = vec![1i64; r];
        loop {
            let pair: Vec<i64> = coroots.iter().map(|c| c.iter().zip(&point).map(|(a, b)| a * b).sum()).collect();
            if pair.iter().all(|x| x % (k * p) != 0) {
                let b: Vec<i64> = pair.iter().map(|x| x.div_euclid(k * p)).collect();
                if b.iter().zip(bands).all(|(x, y)| x <= y) && b != bands {
                    found.insert(b);
                }
            }
            // odometer over [1, bound]^r
            let mut i = 0;
            loop {
                if i == r {
                    return found.len();
                }
                point[i] += 1;
                if point[i] <= simple_bound[i] {
                    break;
                }
                point[i] = 1;
                i += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveReport {
    pub pairings: Vec<i64>,
    pub bands: Vec<i64>,
    /// Only computed for rank ≤ 2.
    pub count_below: Option<usize>,
}

fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * determinant(&minor)
        })
        .sum()
}

/// Height ξ of a finite weight set: the least n ≥ 1 such that X ∩ (X + nα)
/// is empty for every root α.
pub fn weight_set_height(weights: &BTreeSet<Weight>, roots: &[Weight]) -> u64 {
    if weights.is_empty() {
        return 1;
    }
    let mut n = 1i64;
    loop {
        let clash = roots.iter().any(|a| {
            let shift = a.scaled(n);
            weights.iter().any(|w| weights.contains(&w.add(&shift)))
        });
        if !clash {
            return n as u64;
        }
        n += 1;
    }
}
