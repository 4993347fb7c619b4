//! Chevalley-basis restricted Lie algebras over F_p.
//!
//! Basis order is fixed throughout the crate: negative root vectors (highest
//! root first), then h_1..h_r, then positive root vectors (simple roots
//! first). For sl₂ this is (f, h, e). This is also the PBW order used by
//! [`crate::u0algebra`].

pub mod classical;
pub mod structure;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primefield::{add_mod, check_prime, mul_mod, reduce, FpMatrix, Subspace};
use crate::rootdata::{CartanType, RootSystem};

pub use structure::{chevalley_table, ChevalleyTable};

/// Coefficient vector of a Lie algebra element in the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieElement(pub Vec<u32>);

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement(vec![0; dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LieElement(v)
    }

    pub fn from_signed(coeffs: &[i64], p: u32) -> Self {
        LieElement(coeffs.iter().map(|&c| reduce(c, p)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn scaled(&self, s: u32, p: u32) -> Self {
        LieElement(self.0.iter().map(|&c| mul_mod(c, s % p, p)).collect())
    }

    pub fn add(&self, other: &LieElement, p: u32) -> Self {
        LieElement(self.0.iter().zip(&other.0).map(|(&a, &b)| add_mod(a, b, p)).collect())
    }

    pub fn neg(&self, p: u32) -> Self {
        self.scaled(p - 1, p)
    }

    /// Support as (index, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }
}

/// A restricted Lie algebra over F_p given by structure constants and the
/// values of the p-operation on the basis.
#[derive(Debug)]
pub struct RestrictedLieAlgebra {
    root_system: Option<RootSystem>,
    p: u32,
    dim: usize,
    rank: usize,
    labels: Vec<String>,
    grades: Vec<Vec<i64>>,
    brackets: Vec<Vec<(usize, u32)>>,
    p_map: Vec<Vec<(usize, u32)>>,
    centre: OnceLock<Vec<LieElement>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSubalgebra {
    pub basis: Vec<LieElement>,
    /// Whether the subalgebra is also closed under x ↦ x^[p].
    pub restricted_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub samples: usize,
    pub seed: u64,
    pub failures: usize,
}

impl GeneratedSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub points: Vec<LieElement>,
    /// dim of the span of the cone (the subalgebra 𝔤₁ is generated by it)
    pub span_dim: usize,
}

/// Largest algebra for which the cone is enumerated point by point.
pub const CONE_DIM_CAP: usize = 10;
/// Largest number of F_p-points scanned during cone enumeration.
pub const CONE_POINT_CAP: u128 = 2_000_000;

impl RestrictedLieAlgebra {
    /// The Chevalley algebra of `rs` reduced mod p, with h_i^[p] = h_i and
    /// e_α^[p] = 0.
    pub fn chevalley(rs: &RootSystem, p: u64) -> Result<Arc<Self>> {
        let p = check_prime(p)?;
        let table = chevalley_table(rs)?;
        let np = table.num_positive();
        let r = table.rank;
        let dim = table.dim;
        let brackets = table
            .brackets
            .iter()
            .map(|entry| {
                entry
                    .iter()
                    .map(|&(i, c)| (i, reduce(c, p)))
                    .filter(|&(_, c)| c != 0)
                    .collect()
            })
            .collect();
        let p_map = (0..dim)
            .map(|i| if i >= np && i < np + r { vec![(i, 1)] } else { Vec::new() })
            .collect();
        let labels = (0..dim)
            .map(|i| {
                if i >= np && i < np + r {
                    format!("h{}", i - np + 1)
                } else {
                    let g = &table.grades[i];
                    let neg = g.iter().any(|&c| c < 0);
                    let body: Vec<String> = g.iter().map(|c| c.abs().to_string()).collect();
                    format!("{}({})", if neg { "f" } else { "e" }, body.join(","))
                }
            })
            .collect();
        Ok(Arc::new(RestrictedLieAlgebra {
            root_system: Some(rs.clone()),
            p,
            dim,
            rank: r,
            labels,
            grades: table.grades.clone(),
            brackets,
            p_map,
            centre: OnceLock::new(),
        }))
    }

    /// sl₂ with basis (f, h, e).
    pub fn sl2(p: u64) -> Result<Arc<Self>> {
        Self::chevalley(&RootSystem::new(CartanType::A, 1)?, p)
    }

    /// The zero algebra.
    pub fn zero(p: u64) -> Result<Arc<Self>> {
        let p = check_prime(p)?;
        Ok(Arc::new(RestrictedLieAlgebra {
            root_system: None,
            p,
            dim: 0,
            rank: 0,
            labels: Vec::new(),
            grades: Vec::new(),
            brackets: Vec::new(),
            p_map: Vec::new(),
            centre: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.root_system.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_positive(&self) -> usize {
        (self.dim - self.rank) / 2
    }

    /// Root-lattice grade of each basis element (zero on the Cartan part).
    pub fn grades(&self) -> &[Vec<i64>] {
        &self.grades
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        let np = self.num_positive();
        i >= np && i < np + self.rank
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Basis index of e_α for a root α of either sign.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        (0..self.dim).find(|&i| !self.is_cartan(i) && self.grades[i] == root)
    }

    /// Indices of all root vectors, negative ones first.
    pub fn root_vector_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| !self.is_cartan(i)).collect()
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        LieElement::basis(self.dim, i)
    }

    pub fn element(&self, coeffs: &[i64]) -> LieElement {
        assert_eq!(coeffs.len(), self.dim);
        LieElement::from_signed(coeffs, self.p)
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, u32)] {
        &self.brackets[a * self.dim + b]
    }

    pub fn p_power_basis(&self, a: usize) -> &[(usize, u32)] {
        &self.p_map[a]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let p = self.p;
        let mut out = vec![0u32; self.dim];
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = mul_mod(ca, cb, p);
                for &(d, s) in self.bracket_basis(a, b) {
                    out[d] = add_mod(out[d], mul_mod(c, s, p), p);
                }
            }
        }
        LieElement(out)
    }

    /// Matrix of y ↦ [x, y].
    pub fn adjoint_matrix(&self, x: &LieElement) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, self.dim, self.dim);
        for (a, ca) in x.terms() {
            for b in 0..self.dim {
                for &(d, s) in self.bracket_basis(a, b) {
                    let cur = m.get(d, b);
                    m.set(d, b, add_mod(cur, mul_mod(ca, s, self.p), self.p));
                }
            }
        }
        m
    }

    /// Basis of Z(𝔤) = ∩ ker ad(x_i), obtained by intersecting kernels one
    /// basis element at a time inside the running solution space.
    pub fn centre(&self) -> &[LieElement] {
        self.centre.get_or_init(|| {
            let n = self.dim;
            let mut current: Vec<Vec<u32>> = (0..n).map(|i| LieElement::basis(n, i).0).collect();
            // Cartan elements first: they cut the space down fastest
            let order: Vec<usize> = (0..n).filter(|&i| self.is_cartan(i)).chain((0..n).filter(|&i| !self.is_cartan(i))).collect();
            for a in order {
                if current.is_empty() {
                    break;
                }
                let images: Vec<Vec<u32>> = current
                    .iter()
                    .map(|v| self.bracket(&self.basis_element(a), &LieElement(v.clone())).0)
                    .collect();
                let m = FpMatrix::from_columns(self.p, n, &images);
                let kernel = m.nullspace();
                current = kernel
                    .iter()
                    .map(|coeffs| {
                        let mut v = vec![0u32; n];
                        for (c, basis) in coeffs.iter().zip(&current) {
                            if *c == 0 {
                                continue;
                            }
                            for (x, &b) in v.iter_mut().zip(basis) {
                                *x = add_mod(*x, mul_mod(*c, b, self.p), self.p);
                            }
                        }
                        v
                    })
                    .collect();
            }
            let span = Subspace::spanned_by(self.p, n, &current);
            span.basis().iter().map(|v| LieElement(v.clone())).collect()
        })
    }

    pub fn has_trivial_centre(&self) -> bool {
        self.centre().is_empty()
    }

    /// x^[p] through Jacobson's formula, starting from the basis values.
    pub fn p_power(&self, x: &LieElement) -> LieElement {
        let p = self.p;
        let n = self.dim;
        let mut acc = LieElement::zero(n);
        let mut acc_p = LieElement::zero(n);
        for (k, c) in x.terms() {
            let b = LieElement::basis(n, k).scaled(c, p);
            // (c x_k)^[p] = c^p x_k^[p] = c x_k^[p]
            for &(d, s) in self.p_power_basis(k) {
                acc_p.0[d] = add_mod(acc_p.0[d], mul_mod(c, s, p), p);
            }
            if !acc.is_zero() {
                let s = self.jacobson_terms(&acc, &b);
                acc_p = acc_p.add(&s, p);
            }
            acc = acc.add(&b, p);
        }
        acc_p
    }

    /// Σ_i s_i(a, b) where i·s_i is the coefficient of t^{i−1} in
    /// ad(t·a + b)^{p−1}(a).
    fn jacobson_terms(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let p = self.p;
        let n = self.dim;
        let pu = p as usize;
        // poly[k] = coefficient of t^k
        let mut poly: Vec<LieElement> = vec![LieElement::zero(n); pu];
        poly[0] = a.clone();
        for _ in 0..pu - 1 {
            let mut next = vec![LieElement::zero(n); pu];
            for k in 0..pu {
                if poly[k].is_zero() {
                    continue;
                }
                next[k] = next[k].add(&self.bracket(b, &poly[k]), p);
                if k + 1 < pu {
                    next[k + 1] = next[k + 1].add(&self.bracket(a, &poly[k]), p);
                }
            }
            poly = next;
        }
        let mut out = LieElement::zero(n);
        for i in 1..pu {
            let inv = crate::primefield::inv_mod(i as u32, p).unwrap();
            out = out.add(&poly[i - 1].scaled(inv, p), p);
        }
        out
    }

    /// x^[p] = 0. Decided through ad(x)^p when the adjoint representation
    /// is faithful, otherwise through the p-operation itself.
    pub fn is_p_nilpotent(&self, x: &LieElement) -> bool {
        if x.is_zero() {
            return true;
        }
        if self.has_trivial_centre() {
            self.adjoint_matrix(x).pow(self.p as u64).is_zero()
        } else {
            self.p_power(x).is_zero()
        }
    }

    /// Smallest bracket-closed subspace containing `gens`.
    pub fn generated_subalgebra(&self, gens: &[LieElement]) -> GeneratedSubalgebra {
        let p = self.p;
        let mut span = Subspace::new(p, self.dim);
        let mut elems: Vec<LieElement> = Vec::new();
        for g in gens {
            if span.insert(&g.0) {
                elems.push(g.clone());
            }
        }
        let mut i = 0;
        while i < elems.len() {
            for j in 0..i {
                let c = self.bracket(&elems[i], &elems[j]);
                if span.insert(&c.0) {
                    elems.push(c);
                }
            }
            i += 1;
        }
        let basis: Vec<LieElement> = span.basis().iter().map(|v| LieElement(v.clone())).collect();
        let restricted_closed = basis.iter().all(|b| span.contains(&self.p_power(b).0));
        GeneratedSubalgebra {
            basis,
            restricted_closed,
        }
    }

    pub fn is_bracket_closed(&self, basis: &[LieElement]) -> bool {
        let span = Subspace::spanned_by(self.p, self.dim, basis.iter().map(|b| &b.0));
        basis
            .iter()
            .all(|x| basis.iter().all(|y| span.contains(&self.bracket(x, y).0)))
    }

    pub fn np_cone_points_feasible(&self) -> bool {
        self.dim <= CONE_DIM_CAP && (self.p as u128).pow(self.dim as u32) <= CONE_POINT_CAP
    }

    /// Every F_p-point of the p-nilpotent cone, in odometer order (first
    /// basis coordinate fastest).
    pub fn np_cone_points(&self) -> Result<ConeReport> {
        if self.dim > CONE_DIM_CAP {
            return Err(Error::CapExceeded {
                what: "cone enumeration (algebra dimension)",
                needed: self.dim as u128,
                bound: CONE_DIM_CAP as u128,
            });
        }
        let total = (self.p as u128).pow(self.dim as u32);
        if total > CONE_POINT_CAP {
            return Err(Error::CapExceeded {
                what: "cone enumeration (F_p-points)",
                needed: total,
                bound: CONE_POINT_CAP,
            });
        }
        let mut points = Vec::new();
        let mut span = Subspace::new(self.p, self.dim);
        let mut cur = LieElement::zero(self.dim);
        loop {
            if self.is_p_nilpotent(&cur) {
                span.insert(&cur.0);
                points.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Ok(ConeReport {
                        points,
                        span_dim: span.dim(),
                    });
                }
                cur.0[i] += 1;
                if cur.0[i] < self.p {
                    break;
                }
                cur.0[i] = 0;
                i += 1;
            }
        }
    }

    /// Jacobi identity and [x, x] = 0 on seeded random triples.
    pub fn jacobi_check(&self, samples: usize, seed: u64) -> JacobiReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = || LieElement((0..self.dim).map(|_| rng.gen_range(0..self.p)).collect());
        let mut failures = 0;
        for _ in 0..samples {
            let (x, y, z) = (random(), random(), random());
            let cyclic = self
                .bracket(&x, &self.bracket(&y, &z))
                .add(&self.bracket(&y, &self.bracket(&z, &x)), self.p)
                .add(&self.bracket(&z, &self.bracket(&x, &y)), self.p);
            if !cyclic.is_zero() || !self.bracket(&x, &x).is_zero() {
                failures += 1;
            }
        }
        JacobiReport { samples, seed, failures }
    }

    /// Distinct root-lattice grades present in the basis.
    pub fn weight_set(&self) -> BTreeSet<Vec<i64>> {
        self.grades.iter().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(p: u64) -> Arc<RestrictedLieAlgebra> {
        RestrictedLieAlgebra::sl2(p).unwrap()
    }

    const F: usize = 0;
    const H: usize = 1;
    const E: usize = 2;

    #[test]
    fn jacobi_on_random_triples() {
        for label in ["A2", "G2", "C3"] {
            let rs = RootSystem::from_label(label.parse().unwrap()).unwrap();
            let r = RestrictedLieAlgebra::chevalley(&rs, 5).unwrap().jacobi_check(50, 7);
            assert_eq!(r.failures, 0, "{label}");
        }
    }

    #[test]
    fn sl2_relations() {
        let g = sl2(5);
        assert_eq!(g.dim(), 3);
        assert_eq!(g.labels(), &["f(1)", "h1", "e(1)"]);
        let (e, f, h) = (g.basis_element(E), g.basis_element(F), g.basis_element(H));
        assert_eq!(g.bracket(&h, &e), g.element(&[0, 0, 2]));
        assert_eq!(g.bracket(&h, &f), g.element(&[-2, 0, 0]));
        assert_eq!(g.bracket(&e, &f), h);
    }

    #[test]
    fn dimensions() {
        let g2 = RestrictedLieAlgebra::chevalley(&RootSystem::new(CartanType::G, 2).unwrap(), 3).unwrap();
        assert_eq!(g2.dim(), 14);
        let a2 = RestrictedLieAlgebra::chevalley(&RootSystem::new(CartanType::A, 2).unwrap(), 3).unwrap();
        assert_eq!(a2.dim(), 8);
    }

    #[test]
    fn adjoint_examples() {
        let g = sl2(5);
        assert!(g.adjoint_matrix(&LieElement::zero(3)).is_zero());
        assert!(sl2(2).adjoint_matrix(&sl2(2).basis_element(H)).is_zero());
        let ade = g.adjoint_matrix(&g.basis_element(E));
        assert!(ade.pow(3).is_zero());
        let sq = ade.pow(2);
        assert!(!sq.is_zero());
        // ad(e)²(f) = −2e
        assert_eq!(sq.apply(&[1, 0, 0]), vec![0, 0, 3]);
    }

    #[test]
    fn centre_examples() {
        assert!(sl2(5).centre().is_empty());
        let c = sl2(2).centre().to_vec();
        assert_eq!(c, vec![LieElement(vec![0, 1, 0])]);
        let a4 = RestrictedLieAlgebra::chevalley(&RootSystem::new(CartanType::A, 4).unwrap(), 5).unwrap();
        assert_eq!(a4.centre().len(), 1);
    }

    #[test]
    fn p_nilpotence_examples() {
        for p in [2u64, 3, 5, 7] {
            let g = sl2(p);
            assert!(g.is_p_nilpotent(&g.basis_element(E)));
            assert!(g.is_p_nilpotent(&g.basis_element(F)));
            if p > 2 {
                assert!(!g.is_p_nilpotent(&g.basis_element(H)));
            }
        }
    }

    #[test]
    fn restrictedness_on_basis() {
        for label in ["A1", "A2", "B2", "G2"] {
            let rs = RootSystem::from_label(label.parse().unwrap()).unwrap();
            for p in [2u64, 3, 5] {
                let g = RestrictedLieAlgebra::chevalley(&rs, p).unwrap();
                for i in 0..g.dim() {
                    let x = g.basis_element(i);
                    let lhs = g.adjoint_matrix(&g.p_power(&x));
                    let rhs = g.adjoint_matrix(&x).pow(p);
                    assert_eq!(lhs, rhs, "{label} p={p} basis {i}");
                }
            }
        }
    }

    #[test]
    fn generated_subalgebra_examples() {
        let g = sl2(5);
        let all = g.generated_subalgebra(&[g.basis_element(E), g.basis_element(F)]);
        assert_eq!(all.dim(), 3);
        assert!(all.restricted_closed);
        let line = g.generated_subalgebra(&[g.basis_element(E)]);
        assert_eq!(line.basis, vec![g.basis_element(E)]);
        assert!(line.restricted_closed);
        // span{h} is closed under [p] since h^[p] = h
        let torus = g.generated_subalgebra(&[g.basis_element(H)]);
        assert!(torus.restricted_closed && g.is_bracket_closed(&torus.basis));
    }

    #[test]
    fn cone_sl2_p3_has_nine_points() {
        let g = sl2(3);
        let cone = g.np_cone_points().unwrap();
        assert_eq!(cone.points.len(), 9);
        assert_eq!(cone.span_dim, 3);
        let full = g.generated_subalgebra(&cone.points);
        assert_eq!(full.dim(), 3);
    }

    #[test]
    fn cone_of_zero_algebra() {
        let z = RestrictedLieAlgebra::zero(3).unwrap();
        let cone = z.np_cone_points().unwrap();
        assert_eq!(cone.points, vec![LieElement(vec![])]);
        assert_eq!(cone.span_dim, 0);
    }

    #[test]
    fn cone_cap_is_enforced() {
        let g2 = RestrictedLieAlgebra::chevalley(&RootSystem::new(CartanType::G, 2).unwrap(), 2).unwrap();
        assert!(matches!(g2.np_cone_points(), Err(Error::CapExceeded { .. })));
    }
}
