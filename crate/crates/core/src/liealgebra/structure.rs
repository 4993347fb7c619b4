//! Integral structure constants of the Chevalley basis.
//!
//! The constants N_{α,β} are fixed by declaring every extraspecial pair to
//! have positive sign and propagating through the standard identities
//! relating N on rotated and negated triples and quadruples. The resulting
//! table is checked for antisymmetry and the Jacobi identity on every basis
//! triple before it is handed out.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, TypeLabel};

/// Sparse bracket table over ℤ in the ordered basis
/// (negative roots, Cartan h_1..h_r, positive roots).
#[derive(Debug)]
pub struct ChevalleyTable {
    pub dim: usize,
    pub rank: usize,
    /// Root (simple-root coordinates) of each basis element; zero for h_i.
    pub grades: Vec<Vec<i64>>,
    pub brackets: Vec<Vec<(usize, i64)>>,
}

impl ChevalleyTable {
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.brackets[a * self.dim + b]
    }

    pub fn num_positive(&self) -> usize {
        (self.dim - self.rank) / 2
    }

    /// Basis index of the root vector for `root` (of either sign).
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        let np = self.num_positive();
        (0..self.dim)
            .filter(|&i| i < np || i >= np + self.rank)
            .find(|&i| self.grades[i] == root)
    }
}

struct NCalc<'a> {
    rs: &'a RootSystem,
    /// positive roots at 0..P, their negatives at P..2P
    roots: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, usize>,
    memo: HashMap<(usize, usize), i64>,
    np: usize,
}

impl<'a> NCalc<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let np = rs.num_positive();
        let mut roots: Vec<Vec<i64>> = rs.positive_roots().to_vec();
        roots.extend(rs.positive_roots().iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let lookup = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        NCalc {
            rs,
            roots,
            lookup,
            memo: HashMap::new(),
            np,
        }
    }

    fn neg(&self, i: usize) -> usize {
        if i < self.np {
            i + self.np
        } else {
            i - self.np
        }
    }

    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.lookup.get(&s).copied()
    }

    fn diff(&self, a: usize, b: usize) -> Option<usize> {
        self.sum(a, self.neg(b))
    }

    fn norm(&self, i: usize) -> i64 {
        self.rs.inner(&self.roots[i], &self.roots[i])
    }

    /// Largest r with β − rα a root.
    fn string_below(&self, alpha: usize, beta: usize) -> i64 {
        let mut r = 0;
        let mut cur = beta;
        while let Some(next) = self.diff(cur, alpha) {
            r += 1;
            cur = next;
        }
        r
    }

    fn extraspecial(&self, xi: usize) -> (usize, usize) {
        (0..self.np)
            .find_map(|g| self.diff(xi, g).filter(|&d| d < self.np).map(|d| (g, d)))
            .expect("non-simple positive root has an extraspecial pair")
    }

    fn n(&mut self, a: usize, b: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let v = self.compute(a, b);
        self.memo.insert((a, b), v);
        v
    }

    fn compute(&mut self, a: usize, b: usize) -> i64 {
        let Some(s) = self.sum(a, b) else {
            return 0;
        };
        let (pa, pb) = (a < self.np, b < self.np);
        match (pa, pb) {
            (true, true) => {
                if a > b {
                    return -self.n(b, a);
                }
                let (g, d) = self.extraspecial(s);
                if a == g {
                    return self.string_below(g, d) + 1;
                }
                let xi_norm = self.norm(s);
                let n_gd = self.n(g, d);
                let mut acc = Rational64::from_integer(0);
                if let Some(bg) = self.diff(b, g) {
                    let t = self.n(b, self.neg(g)) * self.n(a, self.neg(d));
                    acc += Rational64::new(t, self.norm(bg));
                }
                if let Some(ag) = self.diff(a, g) {
                    let t = self.n(self.neg(g), a) * self.n(b, self.neg(d));
                    acc += Rational64::new(t, self.norm(ag));
                }
                let v = acc * Rational64::new(xi_norm, n_gd);
                assert!(v.is_integer(), "non-integral structure constant");
                v.to_integer()
            }
            (false, false) => -self.n(self.neg(a), self.neg(b)),
            (false, true) => -self.n(b, a),
            (true, false) => {
                // a + b + (−s) = 0
                if s < self.np {
                    let v = Rational64::new(self.norm(s), self.norm(a)) * -self.n(self.neg(b), s);
                    assert!(v.is_integer());
                    v.to_integer()
                } else {
                    let v = Rational64::new(self.norm(s), self.norm(b)) * self.n(self.neg(s), a);
                    assert!(v.is_integer());
                    v.to_integer()
                }
            }
        }
    }
}

fn build(rs: &RootSystem) -> Result<ChevalleyTable> {
    let r = rs.rank();
    let np = rs.num_positive();
    let dim = 2 * np + r;
    let mut calc = NCalc::new(rs);
    // basis index -> Some(root index in calc) or None for Cartan
    let mut root_of: Vec<Option<usize>> = Vec::with_capacity(dim);
    for i in (0..np).rev() {
        root_of.push(Some(i + np));
    }
    root_of.extend(std::iter::repeat(None).take(r));
    root_of.extend((0..np).map(Some));
    let mut basis_of_root = vec![0usize; 2 * np];
    for (bi, ro) in root_of.iter().enumerate() {
        if let Some(ri) = ro {
            basis_of_root[*ri] = bi;
        }
    }
    let grades: Vec<Vec<i64>> = root_of
        .iter()
        .map(|ro| ro.map_or(vec![0; r], |ri| calc.roots[ri].clone()))
        .collect();

    let mut brackets = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            let entry = match (root_of[x], root_of[y]) {
                (None, None) => Vec::new(),
                (None, Some(rb)) => {
                    let i = x - np;
                    let c: i64 = (0..r).map(|j| rs.cartan()[i][j] * calc.roots[rb][j]).sum();
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(y, c)]
                    }
                }
                (Some(ra), None) => {
                    let i = y - np;
                    let c: i64 = (0..r).map(|j| rs.cartan()[i][j] * calc.roots[ra][j]).sum();
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(x, -c)]
                    }
                }
                (Some(ra), Some(rb)) => {
                    if calc.neg(ra) == rb {
                        // [e_α, e_{−α}] = h_α
                        let coroot = rs.coroot_coeffs(&calc.roots[ra]);
                        coroot
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(i, &c)| (np + i, c))
                            .collect()
                    } else {
                        match calc.sum(ra, rb) {
                            Some(s) => {
                                let n = calc.n(ra, rb);
                                vec![(basis_of_root[s], n)]
                            }
                            None => Vec::new(),
                        }
                    }
                }
            };
            brackets[x * dim + y] = entry;
        }
    }
    let table = ChevalleyTable {
        dim,
        rank: r,
        grades,
        brackets,
    };
    verify(&table)?;
    Ok(table)
}

fn accumulate(acc: &mut Vec<(usize, i64)>, idx: usize, c: i64) {
    if let Some(slot) = acc.iter_mut().find(|(i, _)| *i == idx) {
        slot.1 += c;
    } else {
        acc.push((idx, c));
    }
}

fn verify(t: &ChevalleyTable) -> Result<()> {
    let n = t.dim;
    for a in 0..n {
        for b in 0..n {
            let mut sum: Vec<(usize, i64)> = t.bracket(a, b).to_vec();
            for &(i, c) in t.bracket(b, a) {
                accumulate(&mut sum, i, c);
            }
            if sum.iter().any(|&(_, c)| c != 0) {
                return Err(Error::JacobiFailure(a, b, b));
            }
        }
    }
    let mut acc: Vec<(usize, i64)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                acc.clear();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    for &(i, k) in t.bracket(x, y) {
                        for &(j, l) in t.bracket(i, z) {
                            accumulate(&mut acc, j, k * l);
                        }
                    }
                }
                if acc.iter().any(|&(_, v)| v != 0) {
                    return Err(Error::JacobiFailure(a, b, c));
                }
            }
        }
    }
    Ok(())
}

/// The verified integral table for a root system; computed once per type.
pub fn chevalley_table(rs: &RootSystem) -> Result<Arc<ChevalleyTable>> {
    static CACHE: OnceLock<Mutex<HashMap<TypeLabel, Arc<ChevalleyTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&rs.label()) {
        return Ok(t.clone());
    }
    let table = Arc::new(build(rs)?);
    cache.lock().unwrap().insert(rs.label(), table.clone());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanType;

    #[test]
    fn every_type_up_to_rank_four_passes_jacobi() {
        for label in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"] {
            let rs = RootSystem::from_label(label.parse().unwrap()).unwrap();
            let t = chevalley_table(&rs).unwrap();
            assert_eq!(t.dim, 2 * rs.num_positive() + rs.rank(), "{label}");
        }
    }

    #[test]
    fn extraspecial_pairs_are_positive() {
        let rs = RootSystem::new(CartanType::G, 2).unwrap();
        let mut calc = NCalc::new(&rs);
        for xi in rs.rank()..rs.num_positive() {
            let (g, d) = calc.extraspecial(xi);
            assert!(calc.n(g, d) > 0);
        }
    }

    #[test]
    fn structure_constants_are_string_lengths() {
        // |N_{α,β}| = r + 1 whenever α + β is a root
        let rs = RootSystem::new(CartanType::G, 2).unwrap();
        let mut calc = NCalc::new(&rs);
        let total = 2 * rs.num_positive();
        for a in 0..total {
            for b in 0..total {
                if a != calc.neg(b) && calc.sum(a, b).is_some() {
                    let r = calc.string_below(a, b);
                    assert_eq!(calc.n(a, b).abs(), r + 1);
                }
            }
        }
    }
}
