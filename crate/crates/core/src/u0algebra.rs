//! The restricted enveloping algebra U₀(𝔤) in its PBW basis.
//!
//! A monomial is an exponent vector over the Lie basis (in the crate-wide
//! order), each exponent below p. Products are straightened by commuting
//! generators into place and replacing x^p with x^[p]. Left multiplication
//! of a single generator onto a monomial is memoized.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealgebra::{LieElement, RestrictedLieAlgebra};
use crate::primefield::{add_mod, binom_residue, factorial_inverse_residue, mul_mod, sub_mod, FpMatrix, Subspace};

/// Largest U₀ dimension for which dense vectors and matrices are formed.
pub const DENSE_DIM_CAP: u128 = 8192;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwMonomial(pub Vec<u8>);

impl PbwMonomial {
    pub fn one(dim: usize) -> Self {
        PbwMonomial(vec![0; dim])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&k| k as u32).sum()
    }

    /// Generator indices of the ordered word, with multiplicity.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
            .collect()
    }
}

type Terms = BTreeMap<PbwMonomial, u32>;

fn accumulate(terms: &mut Terms, m: &PbwMonomial, c: u32, p: u32) {
    if c == 0 {
        return;
    }
    let slot = terms.entry(m.clone()).or_insert(0);
    *slot = add_mod(*slot, c, p);
    if *slot == 0 {
        terms.remove(m);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U0Element {
    p: u32,
    dim: usize,
    terms: Terms,
}

impl U0Element {
    pub fn zero(p: u32, dim: usize) -> Self {
        U0Element {
            p,
            dim,
            terms: Terms::new(),
        }
    }

    pub fn monomial(p: u32, m: PbwMonomial) -> Self {
        let dim = m.0.len();
        let mut terms = Terms::new();
        terms.insert(m, 1 % p);
        U0Element { p, dim, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &U0Element) -> U0Element {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            accumulate(&mut out.terms, m, c, self.p);
        }
        out
    }

    pub fn sub(&self, other: &U0Element) -> U0Element {
        self.add(&other.scaled(self.p - 1))
    }

    pub fn scaled(&self, s: u32) -> U0Element {
        let mut out = U0Element::zero(self.p, self.dim);
        for (m, c) in self.terms() {
            accumulate(&mut out.terms, m, mul_mod(c, s % self.p, self.p), self.p);
        }
        out
    }

    /// Lowest PBW degree among the terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(PbwMonomial::degree).min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    p: u32,
    terms: BTreeMap<(PbwMonomial, PbwMonomial), u32>,
}

impl TensorElement {
    pub fn zero(p: u32) -> Self {
        TensorElement {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(a: &U0Element, b: &U0Element) -> Self {
        let mut t = TensorElement::zero(a.p);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.push(ma.clone(), mb.clone(), mul_mod(ca, cb, a.p));
            }
        }
        t
    }

    fn push(&mut self, a: PbwMonomial, b: PbwMonomial, c: u32) {
        if c == 0 {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = add_mod(*slot, c, self.p);
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &PbwMonomial, u32)> {
        self.terms.iter().map(|((a, b), &c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.push(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.push(a.clone(), b.clone(), sub_mod(0, c, self.p));
        }
        out
    }
}

/// Δ(e^x) − e^x ⊗ e^x measured in PBW degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub p: u32,
    /// ⌊(p+1)/2⌋
    pub expected_bound: u32,
    /// min over surviving terms a ⊗ b of max(deg a, deg b)
    pub max_factor_degree: Option<u32>,
    /// min over surviving terms of deg a + deg b
    pub total_degree: Option<u32>,
    pub surviving_terms: usize,
}

impl DeviationReport {
    pub fn meets_bound(&self) -> bool {
        self.max_factor_degree.map_or(true, |d| d >= self.expected_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverEnvReport {
    pub p: u32,
    pub u0_dim: usize,
    /// exponent ⌊(p+1)/2⌋ applied to every root vector
    pub exponent: u32,
    pub ideal_dim_closure: usize,
    pub ideal_dim_products: usize,
    pub quotient_dim: usize,
}

/// Failure counts of the bialgebra and antipode identities over all PBW
/// monomials m and generators x.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfReport {
    pub p: u32,
    pub monomials: usize,
    /// Δ(x·m) = Δ(x)Δ(m)
    pub coproduct_failures: usize,
    /// (ε⊗id)Δ(m) = m = (id⊗ε)Δ(m), ε(x·m) = 0
    pub counit_failures: usize,
    /// m(S⊗id)Δ(m) = ε(m)1 = m(id⊗S)Δ(m), S(x·m) = S(m)S(x)
    pub antipode_failures: usize,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.coproduct_failures == 0 && self.counit_failures == 0 && self.antipode_failures == 0
    }
}

type Memo = RwLock<HashMap<(usize, Vec<u8>), Arc<Vec<(PbwMonomial, u32)>>>>;

pub struct U0Algebra {
    lie: Arc<RestrictedLieAlgebra>,
    p: u32,
    dim: usize,
    memo: Memo,
}

impl std::fmt::Debug for U0Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("U0Algebra").field("p", &self.p).field("lie_dim", &self.dim).finish()
    }
}

impl U0Algebra {
    pub fn new(lie: Arc<RestrictedLieAlgebra>) -> Result<Arc<Self>> {
        let p = lie.p();
        if p > u8::MAX as u32 {
            return Err(Error::Invalid(format!("U₀ exponents are stored in a byte; p = {p} is too large")));
        }
        let dim = lie.dim();
        Ok(Arc::new(U0Algebra {
            lie,
            p,
            dim,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn lie(&self) -> &Arc<RestrictedLieAlgebra> {
        &self.lie
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// p^{dim 𝔤}
    pub fn dimension(&self) -> u128 {
        (self.p as u128).saturating_pow(self.dim as u32)
    }

    pub fn one(&self) -> U0Element {
        U0Element::monomial(self.p, PbwMonomial::one(self.dim))
    }

    pub fn zero(&self) -> U0Element {
        U0Element::zero(self.p, self.dim)
    }

    pub fn generator(&self, i: usize) -> U0Element {
        let mut m = PbwMonomial::one(self.dim);
        m.0[i] = 1;
        U0Element::monomial(self.p, m)
    }

    pub fn from_lie(&self, x: &LieElement) -> U0Element {
        let mut out = self.zero();
        for (i, c) in x.terms() {
            let mut m = PbwMonomial::one(self.dim);
            m.0[i] = 1;
            accumulate(&mut out.terms, &m, c, self.p);
        }
        out
    }

    fn gen_times_monomial(&self, i: usize, m: &[u8]) -> Arc<Vec<(PbwMonomial, u32)>> {
        let key = (i, m.to_vec());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.straighten(i, m));
        self.memo.write().unwrap().entry(key).or_insert(v).clone()
    }

    fn straighten(&self, i: usize, m: &[u8]) -> Vec<(PbwMonomial, u32)> {
        let p = self.p;
        let first = m.iter().position(|&k| k > 0);
        let mut out = Terms::new();
        match first {
            Some(j) if j < i => {
                // x_i x_j rest = x_j (x_i rest) + [x_i, x_j] rest
                let mut rest = m.to_vec();
                rest[j] -= 1;
                for (mono, c) in self.gen_times_monomial(i, &rest).iter() {
                    for (mono2, c2) in self.gen_times_monomial(j, &mono.0).iter() {
                        accumulate(&mut out, mono2, mul_mod(*c, *c2, p), p);
                    }
                }
                for &(d, s) in self.lie.bracket_basis(i, j) {
                    for (mono, c) in self.gen_times_monomial(d, &rest).iter() {
                        accumulate(&mut out, mono, mul_mod(s, *c, p), p);
                    }
                }
            }
            Some(j) if j == i && m[i] as u32 + 1 == p => {
                let mut rest = m.to_vec();
                rest[i] = 0;
                for &(d, s) in self.lie.p_power_basis(i) {
                    for (mono, c) in self.gen_times_monomial(d, &rest).iter() {
                        accumulate(&mut out, mono, mul_mod(s, *c, p), p);
                    }
                }
            }
            _ => {
                let mut mono = m.to_vec();
                mono[i] += 1;
                out.insert(PbwMonomial(mono), 1);
            }
        }
        out.into_iter().collect()
    }

    /// x_i · a
    pub fn left_mul_generator(&self, i: usize, a: &U0Element) -> U0Element {
        let p = self.p;
        let mut out = self.zero();
        for (m, c) in a.terms() {
            for (mono, s) in self.gen_times_monomial(i, &m.0).iter() {
                accumulate(&mut out.terms, mono, mul_mod(c, *s, p), p);
            }
        }
        out
    }

    pub fn monomial_times(&self, m: &PbwMonomial, b: &U0Element) -> U0Element {
        let mut cur = b.clone();
        for &g in m.word().iter().rev() {
            cur = self.left_mul_generator(g, &cur);
        }
        cur
    }

    pub fn multiply(&self, a: &U0Element, b: &U0Element) -> U0Element {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            out = out.add(&self.monomial_times(m, b).scaled(c));
        }
        out
    }

    pub fn power(&self, a: &U0Element, k: u32) -> U0Element {
        (0..k).fold(self.one(), |acc, _| self.multiply(&acc, a))
    }

    pub fn counit(&self, a: &U0Element) -> u32 {
        a.coefficient(&PbwMonomial::one(self.dim))
    }

    /// Δ on the PBW basis: x^k ↦ Σ_{j ≤ k} Π binom(k_i, j_i) x^j ⊗ x^{k−j}.
    pub fn coproduct(&self, a: &U0Element) -> TensorElement {
        let p = self.p;
        let mut t = TensorElement::zero(p);
        for (m, c) in a.terms() {
            let mut j = vec![0u8; self.dim];
            loop {
                let mut coeff = c;
                for (&ki, &ji) in m.0.iter().zip(&j) {
                    coeff = mul_mod(coeff, binom_residue(ki as i64, ji as u64, p), p);
                }
                let rest: Vec<u8> = m.0.iter().zip(&j).map(|(k, ji)| k - ji).collect();
                t.push(PbwMonomial(j.clone()), PbwMonomial(rest), coeff);
                // odometer over 0 ≤ j ≤ k
                let mut idx = 0;
                loop {
                    if idx == self.dim {
                        break;
                    }
                    if j[idx] < m.0[idx] {
                        j[idx] += 1;
                        break;
                    }
                    j[idx] = 0;
                    idx += 1;
                }
                if idx == self.dim {
                    break;
                }
            }
        }
        t
    }

    pub fn tensor_multiply(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let p = self.p;
        let mut out = TensorElement::zero(p);
        for (a1, a2, ca) in a.terms() {
            for (b1, b2, cb) in b.terms() {
                let left = self.monomial_times(a1, &U0Element::monomial(p, b1.clone()));
                let right = self.monomial_times(a2, &U0Element::monomial(p, b2.clone()));
                let c = mul_mod(ca, cb, p);
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        out.push(l.clone(), r.clone(), mul_mod(c, mul_mod(cl, cr, p), p));
                    }
                }
            }
        }
        out
    }

    /// m ⊗ n ↦ m·n
    pub fn multiply_tensor(&self, t: &TensorElement) -> U0Element {
        let mut out = self.zero();
        for (a, b, c) in t.terms() {
            out = out.add(&self.monomial_times(a, &U0Element::monomial(self.p, b.clone())).scaled(c));
        }
        out
    }

    /// (S ⊗ id) applied termwise.
    pub fn antipode_left(&self, t: &TensorElement) -> TensorElement {
        let p = self.p;
        let mut out = TensorElement::zero(p);
        for (a, b, c) in t.terms() {
            let s = self.antipode(&U0Element::monomial(p, a.clone()));
            for (m, cm) in s.terms() {
                out.push(m.clone(), b.clone(), mul_mod(c, cm, p));
            }
        }
        out
    }

    /// S(x_1 ⋯ x_n) = (−1)^n x_n ⋯ x_1.
    pub fn antipode(&self, a: &U0Element) -> U0Element {
        let p = self.p;
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let mut cur = self.one();
            let word = m.word();
            for &g in &word {
                cur = self.left_mul_generator(g, &cur);
            }
            let sign = if word.len() % 2 == 1 { p - 1 } else { 1 };
            out = out.add(&cur.scaled(mul_mod(c, sign, p)));
        }
        out
    }

    pub fn hopf_axioms(&self) -> Result<HopfReport> {
        let n = self.dense_dim()?;
        let p = self.p;
        let mut report = HopfReport {
            p,
            monomials: n,
            coproduct_failures: 0,
            counit_failures: 0,
            antipode_failures: 0,
        };
        let gens: Vec<U0Element> = (0..self.dim).map(|i| self.generator(i)).collect();
        let gen_coproducts: Vec<TensorElement> = gens.iter().map(|g| self.coproduct(g)).collect();
        let gen_antipodes: Vec<U0Element> = gens.iter().map(|g| self.antipode(g)).collect();
        for idx in 0..n {
            let m = U0Element::monomial(p, self.monomial_at(idx));
            let dm = self.coproduct(&m);
            let mut left = U0Element::zero(p, self.dim);
            let mut right = U0Element::zero(p, self.dim);
            for (a, b, c) in dm.terms() {
                let one = PbwMonomial::one(self.dim);
                if *a == one {
                    left = left.add(&U0Element::monomial(p, b.clone()).scaled(c));
                }
                if *b == one {
                    right = right.add(&U0Element::monomial(p, a.clone()).scaled(c));
                }
            }
            if left != m || right != m {
                report.counit_failures += 1;
            }
            let unit = self.one().scaled(self.counit(&m));
            let s_left = self.multiply_tensor(&self.antipode_left(&dm));
            let mut s_right = self.zero();
            for (a, b, c) in dm.terms() {
                let sb = self.antipode(&U0Element::monomial(p, b.clone()));
                s_right = s_right.add(&self.monomial_times(a, &sb).scaled(c));
            }
            if s_left != unit || s_right != unit {
                report.antipode_failures += 1;
            }
            let sm = self.antipode(&m);
            for i in 0..self.dim {
                let xm = self.left_mul_generator(i, &m);
                if self.coproduct(&xm) != self.tensor_multiply(&gen_coproducts[i], &dm) {
                    report.coproduct_failures += 1;
                }
                if self.counit(&xm) != 0 {
                    report.counit_failures += 1;
                }
                if self.antipode(&xm) != self.multiply(&sm, &gen_antipodes[i]) {
                    report.antipode_failures += 1;
                }
            }
        }
        Ok(report)
    }

    /// e^x = Σ_{k<p} x^k / k! for p-nilpotent x.
    pub fn exp_element(&self, x: &LieElement) -> Result<U0Element> {
        if !self.lie.is_p_nilpotent(x) {
            return Err(Error::NotPNilpotent);
        }
        let xu = self.from_lie(x);
        let mut out = self.one();
        let mut pow = self.one();
        for k in 1..self.p as u64 {
            pow = self.multiply(&pow, &xu);
            out = out.add(&pow.scaled(factorial_inverse_residue(k, self.p)?));
        }
        Ok(out)
    }

    pub fn deviation(&self, x: &LieElement) -> Result<DeviationReport> {
        let ex = self.exp_element(x)?;
        let diff = self.coproduct(&ex).sub(&TensorElement::pure(&ex, &ex));
        let max_factor_degree = diff.terms().map(|(a, b, _)| a.degree().max(b.degree())).min();
        let total_degree = diff.terms().map(|(a, b, _)| a.degree() + b.degree()).min();
        Ok(DeviationReport {
            p: self.p,
            expected_bound: (self.p + 1) / 2,
            max_factor_degree,
            total_degree,
            surviving_terms: diff.len(),
        })
    }

    fn dense_dim(&self) -> Result<usize> {
        let n = self.dimension();
        if n > DENSE_DIM_CAP {
            return Err(Error::CapExceeded {
                what: "dense U₀ computation",
                needed: n,
                bound: DENSE_DIM_CAP,
            });
        }
        Ok(n as usize)
    }

    /// Position of a monomial in the dense basis (first exponent least significant).
    pub fn monomial_index(&self, m: &PbwMonomial) -> usize {
        m.0.iter().rev().fold(0usize, |acc, &k| acc * self.p as usize + k as usize)
    }

    pub fn monomial_at(&self, mut idx: usize) -> PbwMonomial {
        let p = self.p as usize;
        let mut v = vec![0u8; self.dim];
        for slot in v.iter_mut() {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        PbwMonomial(v)
    }

    pub fn to_dense(&self, a: &U0Element) -> Result<Vec<u32>> {
        let n = self.dense_dim()?;
        let mut v = vec![0u32; n];
        for (m, c) in a.terms() {
            v[self.monomial_index(m)] = c;
        }
        Ok(v)
    }

    pub fn from_dense(&self, v: &[u32]) -> U0Element {
        let mut out = self.zero();
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                out.terms.insert(self.monomial_at(i), c);
            }
        }
        out
    }

    /// Matrix of b ↦ a·b on the PBW basis.
    pub fn left_matrix(&self, a: &U0Element) -> Result<FpMatrix> {
        let n = self.dense_dim()?;
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|j| self.to_dense(&self.multiply(a, &U0Element::monomial(self.p, self.monomial_at(j)))))
            .collect::<Result<_>>()?;
        Ok(FpMatrix::from_columns(self.p, n, &cols))
    }

    /// Grade of a monomial in simple-root coordinates.
    pub fn monomial_grade(&self, m: &PbwMonomial) -> Vec<i64> {
        let mut g = vec![0i64; self.lie.rank()];
        for (i, &k) in m.0.iter().enumerate() {
            for (x, &y) in g.iter_mut().zip(&self.lie.grades()[i]) {
                *x += k as i64 * y;
            }
        }
        g
    }

    fn over_env_generators(&self) -> Vec<U0Element> {
        let exponent = (self.p + 1) / 2;
        self.lie
            .root_vector_indices()
            .into_iter()
            .map(|i| {
                let mut m = PbwMonomial::one(self.dim);
                m.0[i] = exponent as u8;
                U0Element::monomial(self.p, m)
            })
            .collect()
    }

    /// Ideal as the fixpoint of left and right multiplication by the Lie
    /// basis applied to the generator span.
    fn ideal_by_closure(&self) -> Result<Subspace> {
        let n = self.dense_dim()?;
        let mut span = Subspace::new(self.p, n);
        let mut queue: Vec<U0Element> = Vec::new();
        for g in self.over_env_generators() {
            if span.insert(&self.to_dense(&g)?) {
                queue.push(g);
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.dim {
                let gen = self.generator(i);
                for w in [self.left_mul_generator(i, &v), self.multiply(&v, &gen)] {
                    if span.insert(&self.to_dense(&w)?) {
                        queue.push(w);
                    }
                }
            }
        }
        Ok(span)
    }

    /// Ideal as the span of m·g·m' over all PBW monomials m, m'.
    fn ideal_by_products(&self) -> Result<Subspace> {
        let n = self.dense_dim()?;
        let monomials: Vec<PbwMonomial> = (0..n).map(|i| self.monomial_at(i)).collect();
        let mut left = Subspace::new(self.p, n);
        for g in self.over_env_generators() {
            for m in &monomials {
                left.insert(&self.to_dense(&self.monomial_times(m, &g))?);
            }
        }
        let mut two_sided = Subspace::new(self.p, n);
        for v in left.basis() {
            let ve = self.from_dense(v);
            for m in &monomials {
                let w = self.multiply(&ve, &U0Element::monomial(self.p, m.clone()));
                two_sided.insert(&self.to_dense(&w)?);
            }
        }
        Ok(two_sided)
    }

    /// dim U₀(𝔤)/⟨e_α^{⌊(p+1)/2⌋} : α ∈ Φ⟩, computed two independent ways.
    pub fn over_env_dimension(&self) -> Result<OverEnvReport> {
        let n = self.dense_dim()?;
        let a = self.ideal_by_closure()?;
        let b = self.ideal_by_products()?;
        if !a.same_as(&b) {
            return Err(Error::OracleMismatch {
                what: "over-restricted enveloping ideal",
                left: a.dim(),
                right: b.dim(),
            });
        }
        Ok(OverEnvReport {
            p: self.p,
            u0_dim: n,
            exponent: (self.p + 1) / 2,
            ideal_dim_closure: a.dim(),
            ideal_dim_products: b.dim(),
            quotient_dim: n - a.dim(),
        })
    }
}
