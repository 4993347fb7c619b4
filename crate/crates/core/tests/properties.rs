use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use overres::bounds::{centre_dim, table1_labels};
use overres::frobkernels::{build_phi_n, n_threshold, DividedKind, DividedPowerAction};
use overres::groupgen::{generate_group, pseudo_chevalley_group, GeneratorPolicy, MatrixGroup};
use overres::liealgebra::{LieElement, RestrictedLieAlgebra};
use overres::primefield::{binom_mod, FpMatrix, PrimeScalar};
use overres::repmod::{exp_operator, is_over_restricted, weyl_module_sl2, ConeMode};
use overres::rootdata::RootSystem;
use overres::u0algebra::{PbwMonomial, U0Algebra, U0Element};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn algebra(label: &str, p: u64) -> Arc<RestrictedLieAlgebra> {
    RestrictedLieAlgebra::chevalley(&RootSystem::from_label(label.parse().unwrap()).unwrap(), p).unwrap()
}

fn element(alg: &RestrictedLieAlgebra, raw: &[u32]) -> LieElement {
    LieElement(raw.iter().take(alg.dim()).map(|c| c % alg.p()).collect())
}

const JACOBI_TYPES: [(&str, usize); 5] = [("A2", 8), ("B2", 10), ("G2", 14), ("A3", 15), ("C3", 21)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobi_identity(t in 0..JACOBI_TYPES.len(), pi in 0..PRIMES.len(), raw in prop::collection::vec(any::<u32>(), 63)) {
        let alg = algebra(JACOBI_TYPES[t].0, PRIMES[pi]);
        let n = JACOBI_TYPES[t].1;
        prop_assert_eq!(alg.dim(), n);
        let (x, y, z) = (element(&alg, &raw[..n]), element(&alg, &raw[21..21 + n]), element(&alg, &raw[42..42 + n]));
        let p = alg.p();
        let sum = alg
            .bracket(&x, &alg.bracket(&y, &z))
            .add(&alg.bracket(&y, &alg.bracket(&z, &x)), p)
            .add(&alg.bracket(&z, &alg.bracket(&x, &y)), p);
        prop_assert!(sum.is_zero());
        prop_assert_eq!(alg.bracket(&x, &y), alg.bracket(&y, &x).neg(p));
    }

    #[test]
    fn group_closure(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = sl2_natural_group(5);
        let a = &g.elements()[i.index(g.order())];
        let b = &g.elements()[j.index(g.order())];
        prop_assert!(g.contains(&a.mul(b)));
        prop_assert!(g.contains(&a.inverse().unwrap()));
    }
}

fn sl2_natural_group(p: u64) -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| pseudo_chevalley_group(&weyl_module_sl2(1, p).unwrap(), GeneratorPolicy::RootExponentials, 10_000).unwrap())
}

fn u0_cases() -> &'static Vec<Arc<U0Algebra>> {
    static U: OnceLock<Vec<Arc<U0Algebra>>> = OnceLock::new();
    U.get_or_init(|| {
        let mut out: Vec<_> = [2u64, 3, 5].iter().map(|&p| U0Algebra::new(RestrictedLieAlgebra::sl2(p).unwrap()).unwrap()).collect();
        out.push(U0Algebra::new(algebra("A2", 2)).unwrap());
        out.push(U0Algebra::new(algebra("B2", 2)).unwrap());
        out
    })
}

/// A sum of up to three PBW monomials drawn from raw words.
fn u0_element(u: &U0Algebra, raw: &[(u32, Vec<u8>)]) -> U0Element {
    let dim = u.lie().dim();
    let mut out = u.zero();
    for (c, exps) in raw {
        let m = PbwMonomial(exps.iter().take(dim).map(|e| e % u.p() as u8).collect());
        out = out.add(&U0Element::monomial(u.p(), m).scaled(c % u.p()));
    }
    out
}

fn raw_u0() -> impl Strategy<Value = Vec<(u32, Vec<u8>)>> {
    prop::collection::vec((any::<u32>(), prop::collection::vec(0u8..5, 10)), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn u0_associativity(k in 0..5usize, a in raw_u0(), b in raw_u0(), c in raw_u0()) {
        let u = &u0_cases()[k];
        let (a, b, c) = (u0_element(u, &a), u0_element(u, &b), u0_element(u, &c));
        prop_assert_eq!(u.multiply(&u.multiply(&a, &b), &c), u.multiply(&a, &u.multiply(&b, &c)));
    }

    #[test]
    fn hopf_compatibility(k in 0..4usize, a in raw_u0(), b in raw_u0()) {
        let u = &u0_cases()[k];
        let (a, b) = (u0_element(u, &a), u0_element(u, &b));
        let ab = u.multiply(&a, &b);
        prop_assert_eq!(u.coproduct(&ab), u.tensor_multiply(&u.coproduct(&a), &u.coproduct(&b)));
        prop_assert_eq!(u.antipode(&ab), u.multiply(&u.antipode(&b), &u.antipode(&a)));
        let p = u.p() as u64;
        prop_assert_eq!(u.counit(&ab) as u64, u.counit(&a) as u64 * u.counit(&b) as u64 % p);
    }

    #[test]
    fn exp_is_additive_on_over_restricted_modules(pi in 1..4usize, m in 0u64..4, s in any::<u32>(), t in any::<u32>(), idx in any::<prop::sample::Index>()) {
        let p = PRIMES[pi];
        let m = m % ((p + 1) / 2);
        let v = weyl_module_sl2(m, p).unwrap();
        let cone = v.algebra().np_cone_points().unwrap().points;
        let x = &cone[idx.index(cone.len())];
        let (s, t) = (PrimeScalar::new(s as i64, p as u32), PrimeScalar::new(t as i64, p as u32));
        let lhs = exp_operator(&v, x, s).unwrap().mul(&exp_operator(&v, x, t).unwrap());
        prop_assert_eq!(lhs, exp_operator(&v, x, s + t).unwrap());
    }

    #[test]
    fn divided_power_multiplication(pi in 0..3usize, n in 1u32..4, m in 0u64..30, i in any::<u64>(), j in any::<u64>()) {
        let p = PRIMES[pi];
        let q = p.pow(n);
        prop_assume!(q <= 125);
        let a = DividedPowerAction::new(m, p, n).unwrap();
        let (i, j) = (i % q, j % q);
        prop_assume!(i + j < q);
        let c = binom_mod((i + j) as i64, i, p).unwrap().residue();
        for kind in [DividedKind::E, DividedKind::F] {
            let lhs = a.matrix(kind, i).mul(a.matrix(kind, j));
            prop_assert_eq!(lhs, a.matrix(kind, i + j).scale(c));
        }
    }
}

#[test]
fn over_restricted_exactly_below_half() {
    for p in [2u64, 3, 5, 7, 11] {
        for m in 0..p {
            let v = weyl_module_sl2(m, p).unwrap();
            let r = is_over_restricted(&v, ConeMode::Exhaustive).unwrap();
            assert_eq!(r.holds, m + 1 <= (p + 1) / 2, "p={p} m={m}");
            assert!(r.certifying);
        }
    }
}

#[test]
fn n_over_restricted_exactly_below_threshold() {
    for p in [2u64, 3] {
        for n in 1..=3 {
            let t = n_threshold(p, n);
            for m in 0..=p.pow(n) {
                let a = DividedPowerAction::new(m, p, n).unwrap();
                assert_eq!(a.is_n_over_restricted(), m + 1 <= t, "p={p} n={n} m={m}");
            }
        }
    }
}

#[test]
fn abs_n_chev_on_passing_cases() {
    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        for m in 0..n_threshold(p, n) {
            let r = DividedPowerAction::new(m, p, n).unwrap().abs_n_chev_exhaustive();
            assert!(r.n_over_restricted && r.passed(), "{r:?}");
        }
    }
}

#[test]
fn phi_for_frobenius_kernels_is_a_function() {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 1)] {
        for m in 1..n_threshold(p, n) {
            let r = build_phi_n(m, p, n, 100_000).unwrap();
            assert!(r.is_function && r.kernel_central && r.kernel_in_aut, "p={p} n={n} m={m}");
            assert_eq!(r.order_v, r.order_graph);
        }
    }
}

#[test]
fn centre_dimension_is_cartan_corank() {
    for label in table1_labels() {
        let rs = RootSystem::from_label(label).unwrap();
        for p in PRIMES {
            let cartan = FpMatrix::from_rows(p as u32, rs.cartan());
            assert_eq!(centre_dim(label, p).unwrap(), rs.rank() - cartan.rank(), "{label} p={p}");
        }
    }
}

#[test]
fn group_from_generators_matches_classical_orders() {
    // |SL₂(F_p)| = p(p²−1)
    for p in [2u64, 3, 5, 7] {
        let v = weyl_module_sl2(1, p).unwrap();
        let g = pseudo_chevalley_group(&v, GeneratorPolicy::RootExponentials, 10_000).unwrap();
        assert_eq!(g.order() as u64, p * (p * p - 1));
        let again = generate_group(g.generators().to_vec(), g.labels().to_vec(), 10_000).unwrap();
        assert_eq!(again.order(), g.order());
    }
}
