//! Finite matrix groups generated by truncated exponentials.
//!
//! Groups are enumerated breadth-first. Elements are discovered in order of
//! (parent discovery index, generator index), so the recorded word of each
//! element is its shortest word that is lexicographically least among
//! shortest words.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealgebra::{LieElement, RestrictedLieAlgebra};
use crate::primefield::{factorial_inverse, DualMatrix, DualScalar, FpMatrix, PrimeScalar, Subspace};
use crate::repmod::{adjoint_rep, truncated_exp, Representation};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;
pub const ELEMENT_CAP_ENV: &str = "OVERRES_ELEMENT_CAP";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Element cap from the environment, falling back to the default.
pub fn element_cap() -> usize {
    std::env::var(ELEMENT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<FpMatrix>,
    labels: Vec<String>,
    elements: Vec<FpMatrix>,
    index: HashMap<Vec<u8>, usize>,
    /// (parent, generator) for every element but the identity
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<u32>,
    closed: bool,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn elements(&self) -> &[FpMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[FpMatrix] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, m: &FpMatrix) -> Option<usize> {
        self.index.get(&m.canonical_bytes()).copied()
    }

    pub fn contains(&self, m: &FpMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// Canonical word of element `i` as generator indices, left to right.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((parent, g)) = self.parent[i] {
            w.push(g);
            i = parent;
        }
        w.reverse();
        w
    }

    pub fn evaluate_word(&self, word: &[usize]) -> FpMatrix {
        let id = self.elements[0].clone();
        word.iter().fold(id, |acc, &g| acc.mul(&self.generators[g]))
    }

    /// Maximal word length over the group.
    pub fn diameter(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> &FpMatrix {
        &self.elements[rng.gen_range(0..self.elements.len())]
    }

    pub fn report(&self) -> GroupReport {
        GroupReport {
            schema_version: REPORT_SCHEMA_VERSION,
            order: self.order(),
            diameter: self.diameter(),
            closed: self.closed,
            generator_labels: self.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema_version: u32,
    pub order: usize,
    pub diameter: u32,
    pub closed: bool,
    pub generator_labels: Vec<String>,
}

/// Breadth-first closure of `generators` inside GL_n(F_p).
pub fn generate_group(generators: Vec<FpMatrix>, labels: Vec<String>, cap: usize) -> Result<MatrixGroup> {
    let (p, n) = match generators.first() {
        Some(g) => (g.modulus(), g.rows()),
        None => return Err(Error::Invalid("no generators".into())),
    };
    for g in &generators {
        if g.rows() != n || !g.is_square() {
            return Err(Error::DimensionMismatch { expected: n, got: g.rows() });
        }
        if g.rank() != n {
            return Err(Error::Singular);
        }
    }
    let id = FpMatrix::identity(p, n);
    let mut group = MatrixGroup {
        generators,
        labels,
        elements: vec![id.clone()],
        index: HashMap::from([(id.canonical_bytes(), 0)]),
        parent: vec![None],
        depth: vec![0],
        closed: true,
    };
    let mut head = 0;
    while head < group.elements.len() {
        for gi in 0..group.generators.len() {
            let next = group.elements[head].mul(&group.generators[gi]);
            let key = next.canonical_bytes();
            if group.index.contains_key(&key) {
                continue;
            }
            if group.elements.len() >= cap {
                group.closed = false;
                return Ok(group);
            }
            group.index.insert(key, group.elements.len());
            group.parent.push(Some((head, gi)));
            group.depth.push(group.depth[head] + 1);
            group.elements.push(next);
        }
        head += 1;
    }
    Ok(group)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorPolicy {
    /// e^{θ(t e_α)} for every root α and t ∈ F_p^×
    RootExponentials,
    /// e^{θ(x)} for every nonzero F_p-point x of the p-nilpotent cone
    FullCone,
}

/// Lie elements whose exponentials generate under the given policy.
pub fn generator_elements(alg: &RestrictedLieAlgebra, policy: GeneratorPolicy) -> Result<Vec<(LieElement, String)>> {
    let p = alg.p();
    Ok(match policy {
        GeneratorPolicy::RootExponentials => alg
            .root_vector_indices()
            .into_iter()
            .flat_map(|i| {
                (1..p).map(move |t| (LieElement::basis(alg.dim(), i).scaled(t, p), format!("exp({}·{})", t, alg.labels()[i])))
            })
            .collect(),
        GeneratorPolicy::FullCone => alg
            .np_cone_points()?
            .points
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| {
                let label = format!("exp{:?}", x.0);
                (x, label)
            })
            .collect(),
    })
}

pub fn pseudo_chevalley_group(rep: &Representation, policy: GeneratorPolicy, cap: usize) -> Result<MatrixGroup> {
    let gens = generator_elements(rep.algebra(), policy)?;
    let mut mats = Vec::with_capacity(gens.len());
    let mut labels = Vec::with_capacity(gens.len());
    for (x, label) in gens {
        mats.push(truncated_exp(&rep.theta(&x))?);
        labels.push(label);
    }
    if mats.is_empty() {
        mats.push(FpMatrix::identity(rep.p(), rep.dim()));
        labels.push("1".into());
    }
    generate_group(mats, labels, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolicyComparison {
    pub root_order: usize,
    pub cone_order: usize,
    pub equal: bool,
}

/// The root-exponential group sits inside the full-cone group, so equal
/// orders mean equal groups.
pub fn compare_policies(rep: &Representation, cap: usize) -> Result<PolicyComparison> {
    let a = pseudo_chevalley_group(rep, GeneratorPolicy::RootExponentials, cap)?;
    let b = pseudo_chevalley_group(rep, GeneratorPolicy::FullCone, cap)?;
    Ok(PolicyComparison {
        root_order: a.order(),
        cone_order: b.order(),
        equal: a.is_closed() && b.is_closed() && a.order() == b.order(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiReport {
    pub schema_version: u32,
    pub order_v: usize,
    pub order_g: usize,
    pub order_graph: usize,
    /// first projection of the graph subgroup is injective
    pub is_function: bool,
    pub kernel: Vec<FpMatrix>,
    pub kernel_central: bool,
    /// kernel commutes with θ(y) for every basis element y
    pub kernel_in_aut: bool,
    /// |G_V| = |ker| · |G_𝔤|
    pub lagrange: bool,
}

impl PhiReport {
    pub fn kernel_order(&self) -> usize {
        self.kernel.len()
    }
}

/// Graph-subgroup test on paired generators (a_i on V, b_i on 𝔤).
pub fn build_phi_from_pairs(pairs: &[(FpMatrix, FpMatrix)], theta_basis: &[FpMatrix], cap: usize) -> Result<PhiReport> {
    let labels: Vec<String> = (0..pairs.len()).map(|i| format!("g{i}")).collect();
    let gv = generate_group(pairs.iter().map(|(a, _)| a.clone()).collect(), labels.clone(), cap)?;
    let gg = generate_group(pairs.iter().map(|(_, b)| b.clone()).collect(), labels.clone(), cap)?;
    let graph = generate_group(
        pairs.iter().map(|(a, b)| FpMatrix::block_diagonal(a, b)).collect(),
        labels,
        cap,
    )?;
    if !(gv.is_closed() && gg.is_closed() && graph.is_closed()) {
        return Err(Error::CapExceeded {
            what: "graph subgroup enumeration",
            needed: cap as u128 + 1,
            bound: cap as u128,
        });
    }
    let nv = pairs[0].0.rows();
    let ng = pairs[0].1.rows();
    let kernel: Vec<FpMatrix> = graph
        .elements()
        .iter()
        .filter(|m| m.sub_block(nv, nv, ng, ng).is_identity())
        .map(|m| m.sub_block(0, 0, nv, nv))
        .collect();
    let kernel_central = kernel
        .iter()
        .all(|k| gv.elements().iter().all(|g| k.mul(g) == g.mul(k)));
    let kernel_in_aut = kernel
        .iter()
        .all(|k| theta_basis.iter().all(|t| k.mul(t) == t.mul(k)));
    let is_function = graph.order() == gv.order();
    Ok(PhiReport {
        schema_version: REPORT_SCHEMA_VERSION,
        order_v: gv.order(),
        order_g: gg.order(),
        order_graph: graph.order(),
        is_function,
        lagrange: gv.order() == kernel.len() * gg.order(),
        kernel,
        kernel_central,
        kernel_in_aut,
    })
}

/// φ: G_V → G_𝔤 through paired exponentials e^{θ(x)} ↔ e^{ad x}.
pub fn build_phi(rep: &Representation, policy: GeneratorPolicy, cap: usize) -> Result<PhiReport> {
    let alg = rep.algebra();
    let ad = adjoint_rep(alg)?;
    let mut pairs = Vec::new();
    for (x, _) in generator_elements(alg, policy)? {
        pairs.push((truncated_exp(&rep.theta(&x))?, truncated_exp(&ad.theta(&x))?));
    }
    if pairs.is_empty() {
        pairs.push((FpMatrix::identity(rep.p(), rep.dim()), FpMatrix::identity(rep.p(), ad.dim())));
    }
    let theta_basis: Vec<FpMatrix> = (0..alg.dim()).map(|i| rep.basis_matrix(i).clone()).collect();
    build_phi_from_pairs(&pairs, &theta_basis, cap)
}

/// t ↦ e^{θ(t x)} evaluated at t = a + ε.
pub fn dual_exp(theta_x: &FpMatrix, a: PrimeScalar) -> Result<DualMatrix> {
    let p = theta_x.modulus();
    let n = theta_x.rows();
    if !theta_x.pow(p as u64).is_zero() {
        return Err(Error::NotPNilpotent);
    }
    let t = DualScalar::variable(a);
    let m = DualMatrix::new(theta_x.clone(), FpMatrix::zeros(p, n, n));
    let mut out = DualMatrix::identity(p, n);
    let mut pow = DualMatrix::identity(p, n);
    for k in 1..p as u64 {
        pow = pow.mul(&m.scale(t));
        out.add_assign(&pow.scale(DualScalar::constant(factorial_inverse(k, p as u64)?)));
    }
    Ok(out)
}

/// Derivative of t ↦ e^{θ(t x)} at t = 0.
pub fn first_order_coefficient(theta_x: &FpMatrix) -> Result<FpMatrix> {
    Ok(dual_exp(theta_x, PrimeScalar::zero(theta_x.modulus()))?.slope)
}

/// The derivative of t ↦ e^{θ(tx)} at 0 equals θ(x) for every x.
pub fn first_order_check(rep: &Representation, xs: &[LieElement]) -> Result<bool> {
    for x in xs {
        let tx = rep.theta(x);
        if first_order_coefficient(&tx)? != tx {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TangentReport {
    pub dim: usize,
    pub theta_g0_dim: usize,
    /// dim span{θ(x) : x in the generating set}
    pub theta_g1_dim: usize,
    pub equals_theta_g0: bool,
    pub stabilized: bool,
    pub random_samples: usize,
}

fn matrix_span(p: u32, n: usize, mats: impl IntoIterator<Item = FpMatrix>) -> Subspace {
    let mut s = Subspace::new(p, n * n);
    for m in mats {
        s.insert(&m.flatten());
    }
    s
}

fn unflatten(p: u32, n: usize, v: &[u32]) -> FpMatrix {
    let cols: Vec<Vec<u32>> = (0..n).map(|c| (0..n).map(|r| v[r * n + c]).collect()).collect();
    FpMatrix::from_columns(p, n, &cols)
}

/// Span of the left-translated differentials g⁻¹·dg along every generating
/// family, closed under conjugation by the generators and by random
/// elements of `group`.
pub fn tangent_space(rep: &Representation, xs: &[LieElement], group: &MatrixGroup, samples: usize, seed: u64) -> Result<TangentReport> {
    let p = rep.p();
    let n = rep.dim();
    let mut span = Subspace::new(p, n * n);
    let mut conjugators: Vec<FpMatrix> = Vec::new();
    for x in xs {
        let tx = rep.theta(x);
        for a in PrimeScalar::all(p) {
            let d = dual_exp(&tx, a)?;
            let inv = d.value.inverse()?;
            span.insert(&inv.mul(&d.slope).flatten());
            conjugators.push(d.value);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let close_under = |span: &mut Subspace, gs: &[FpMatrix]| -> Result<bool> {
        let mut grew = false;
        loop {
            let mut changed = false;
            let basis: Vec<Vec<u32>> = span.basis().to_vec();
            for g in gs {
                let gi = g.inverse()?;
                for v in &basis {
                    let m = unflatten(p, n, v);
                    if span.insert(&g.mul(&m).mul(&gi).flatten()) {
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(grew);
            }
            grew = true;
        }
    };
    let random: Vec<FpMatrix> = (0..samples).map(|_| group.random_element(&mut rng).clone()).collect();
    close_under(&mut span, &conjugators)?;
    close_under(&mut span, &random)?;
    let extra: Vec<FpMatrix> = (0..samples).map(|_| group.random_element(&mut rng).clone()).collect();
    let stabilized = !close_under(&mut span, &extra)?;

    let alg = rep.algebra();
    let g0 = alg.generated_subalgebra(xs);
    let theta_g0 = matrix_span(p, n, g0.basis.iter().map(|b| rep.theta(b)));
    let theta_g1 = matrix_span(p, n, xs.iter().map(|x| rep.theta(x)));
    Ok(TangentReport {
        dim: span.dim(),
        theta_g0_dim: theta_g0.dim(),
        theta_g1_dim: theta_g1.dim(),
        equals_theta_g0: span.same_as(&theta_g0),
        stabilized,
        random_samples: 2 * samples,
    })
}

pub fn word_diameter(group: &MatrixGroup) -> u32 {
    group.diameter()
}
