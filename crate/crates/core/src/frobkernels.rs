//! Divided-power operators on the sl₂ Weyl modules V(m) and the
//! one-parameter families Y_{±α}(t) built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupgen::{build_phi_from_pairs, PhiReport};
use crate::primefield::{binom_residue, check_prime, FpMatrix, PrimeScalar};

/// Largest p^n for which all divided powers below p^n are tabulated.
pub const DIVIDED_POWER_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DividedKind {
    /// e^{(k)}
    E,
    /// f^{(k)}
    F,
    /// (h choose k)
    HBinom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSign {
    Positive,
    Negative,
}

/// Matrix of a divided-power basis element on V(m), basis v_0..v_m.
pub fn divided_matrix(kind: DividedKind, k: u64, m: u64, p: u64) -> Result<FpMatrix> {
    let p = check_prime(p)?;
    Ok(divided_residues(kind, k, m, p))
}

fn divided_residues(kind: DividedKind, k: u64, m: u64, p: u32) -> FpMatrix {
    let n = m as usize + 1;
    let mut out = FpMatrix::zeros(p, n, n);
    let (mi, ki) = (m as i64, k as i64);
    for i in 0..n {
        let ii = i as i64;
        match kind {
            DividedKind::E if i as u64 >= k => {
                out.set(i - k as usize, i, binom_residue(mi - ii + ki, k, p));
            }
            DividedKind::F if i as u64 + k <= m => {
                out.set(i + k as usize, i, binom_residue(ii + ki, k, p));
            }
            DividedKind::HBinom => out.set(i, i, binom_residue(mi - 2 * ii, k, p)),
            _ => {}
        }
    }
    out
}

/// ⌊(p^n + 1)/2⌋
pub fn n_threshold(p: u64, n: u32) -> u64 {
    (p.pow(n) + 1) / 2
}

/// The action of Dist(G_(n)) on V(m) through its divided-power basis.
#[derive(Clone, Debug)]
pub struct DividedPowerAction {
    m: u64,
    p: u32,
    n: u32,
    q: u64,
    e: Vec<FpMatrix>,
    f: Vec<FpMatrix>,
    h: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsNChevReport {
    pub m: u64,
    pub p: u32,
    pub n: u32,
    pub n_over_restricted: bool,
    pub checks: usize,
    pub failures: usize,
}

impl AbsNChevReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl DividedPowerAction {
    pub fn new(m: u64, p: u64, n: u32) -> Result<Self> {
        let p32 = check_prime(p)?;
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        let q = p.checked_pow(n).filter(|&q| q <= DIVIDED_POWER_CAP).ok_or(Error::CapExceeded {
            what: "divided powers below p^n",
            needed: (p as u128).saturating_pow(n),
            bound: DIVIDED_POWER_CAP as u128,
        })?;
        let table = |kind| (0..q).map(|k| divided_residues(kind, k, m, p32)).collect::<Vec<_>>();
        Ok(DividedPowerAction {
            m,
            p: p32,
            n,
            q,
            e: table(DividedKind::E),
            f: table(DividedKind::F),
            h: table(DividedKind::HBinom),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// p^n
    pub fn order_bound(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.m as usize + 1
    }

    pub fn matrix(&self, kind: DividedKind, k: u64) -> &FpMatrix {
        let table = match kind {
            DividedKind::E => &self.e,
            DividedKind::F => &self.f,
            DividedKind::HBinom => &self.h,
        };
        &table[k as usize]
    }

    fn family(&self, sign: RootSign) -> &[FpMatrix] {
        match sign {
            RootSign::Positive => &self.e,
            RootSign::Negative => &self.f,
        }
    }

    /// Y_{±α}(t) = Σ_{k<p^n} t^k X^{(k)}
    pub fn y_operator(&self, sign: RootSign, t: PrimeScalar) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.dim(), self.dim());
        let mut tk = PrimeScalar::one(self.p);
        for x in self.family(sign) {
            out.add_scaled(x, tk.residue());
            tk = tk * t;
        }
        out
    }

    /// θ(e^{(k)}) = θ(f^{(k)}) = 0 for ⌊(p^n+1)/2⌋ ≤ k < p^n.
    pub fn is_n_over_restricted(&self) -> bool {
        let lo = n_threshold(self.p as u64, self.n) as usize;
        (lo..self.q as usize).all(|k| self.e[k].is_zero() && self.f[k].is_zero())
    }

    /// Σ_{k<p^n} Σ_{i+j=k} t^k (−1)^j X^{(i)} d X^{(j)}: the adjoint action
    /// of Z(t) through Δ(X^{(k)}) = Σ X^{(i)} ⊗ X^{(j)} and S(X^{(j)}) = (−1)^j X^{(j)}.
    pub fn hopf_conjugate(&self, sign: RootSign, t: PrimeScalar, d: &FpMatrix) -> FpMatrix {
        let fam = self.family(sign);
        let p = self.p;
        let n = self.dim();
        let mut out = FpMatrix::zeros(p, n, n);
        let q = self.q as usize;
        for i in 0..q {
            if fam[i].is_zero() {
                continue;
            }
            let left = fam[i].mul(d);
            for j in 0..q - i {
                if fam[j].is_zero() {
                    continue;
                }
                let mut c = t.pow((i + j) as u64);
                if j % 2 == 1 {
                    c = -c;
                }
                if c.is_zero() {
                    continue;
                }
                out.add_scaled(&left.mul(&fam[j]), c.residue());
            }
        }
        out
    }

    /// Hopf expansion against Y(t) d Y(−t).
    pub fn verify_abs_n_chev(&self, sign: RootSign, t: PrimeScalar, d: &FpMatrix) -> bool {
        let lhs = self.hopf_conjugate(sign, t, d);
        let rhs = self.y_operator(sign, t).mul(d).mul(&self.y_operator(sign, -t));
        lhs == rhs
    }

    /// Elementary matrices together with every tabulated divided power.
    pub fn spanning_operators(&self) -> Vec<FpMatrix> {
        let n = self.dim();
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let mut m = FpMatrix::zeros(self.p, n, n);
                m.set(r, c, 1);
                out.push(m);
            }
        }
        out.extend(self.e.iter().chain(&self.f).chain(&self.h).cloned());
        out
    }

    /// verify_abs_n_chev over both signs, every t ∈ F_p and every spanning operator.
    pub fn abs_n_chev_exhaustive(&self) -> AbsNChevReport {
        let ops = self.spanning_operators();
        let mut checks = 0;
        let mut failures = 0;
        for sign in [RootSign::Positive, RootSign::Negative] {
            for t in PrimeScalar::all(self.p) {
                for d in &ops {
                    checks += 1;
                    if !self.verify_abs_n_chev(sign, t, d) {
                        failures += 1;
                    }
                }
            }
        }
        AbsNChevReport {
            m: self.m,
            p: self.p,
            n: self.n,
            n_over_restricted: self.is_n_over_restricted(),
            checks,
            failures,
        }
    }

    /// Y_{±α}(t) for t ∈ F_p^×.
    pub fn y_generators(&self) -> Vec<FpMatrix> {
        let mut out = Vec::new();
        for sign in [RootSign::Positive, RootSign::Negative] {
            for t in PrimeScalar::all(self.p).filter(|t| !t.is_zero()) {
                out.push(self.y_operator(sign, t));
            }
        }
        out
    }
}

/// φ: G_(n),V(m) → G_(n),𝔤 by the graph construction, with 𝔤 realized as V(2).
pub fn build_phi_n(m: u64, p: u64, n: u32, cap: usize) -> Result<PhiReport> {
    let v = DividedPowerAction::new(m, p, n)?;
    let g = DividedPowerAction::new(2, p, n)?;
    let pairs: Vec<(FpMatrix, FpMatrix)> = v.y_generators().into_iter().zip(g.y_generators()).collect();
    let theta_basis: Vec<FpMatrix> = (1..v.order_bound())
        .flat_map(|k| [v.matrix(DividedKind::E, k).clone(), v.matrix(DividedKind::F, k).clone(), v.matrix(DividedKind::HBinom, k).clone()])
        .collect();
    build_phi_from_pairs(&pairs, &theta_basis, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primefield::factorial_inverse;
    use crate::repmod::{exp_operator, weyl_module_sl2};

    #[test]
    fn small_divided_powers_match_ordinary_powers() {
        for p in [3u64, 5, 7] {
            for m in 0..8 {
                let v = weyl_module_sl2(m, p).unwrap();
                let e = v.basis_matrix(2);
                for k in 0..p {
                    let expected = e.pow(k).scale(factorial_inverse(k, p).unwrap().residue());
                    assert_eq!(divided_matrix(DividedKind::E, k, m, p).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        let e2 = divided_matrix(DividedKind::E, 2, 3, 2).unwrap();
        assert_eq!(e2.get(0, 2), 1);
        assert!(divided_matrix(DividedKind::E, 5, 4, 7).unwrap().is_zero());
        assert!(divided_matrix(DividedKind::F, 5, 4, 7).unwrap().is_zero());
    }

    #[test]
    fn y_operator_examples() {
        let a = DividedPowerAction::new(3, 2, 3).unwrap();
        for sign in [RootSign::Positive, RootSign::Negative] {
            assert!(a.y_operator(sign, PrimeScalar::new(0, 2)).is_identity());
            for t in PrimeScalar::all(2) {
                for s in PrimeScalar::all(2) {
                    assert_eq!(a.y_operator(sign, t).mul(&a.y_operator(sign, s)), a.y_operator(sign, t + s));
                }
            }
        }
        let v = weyl_module_sl2(3, 5).unwrap();
        let a = DividedPowerAction::new(3, 5, 1).unwrap();
        let e = v.algebra().basis_element(2);
        for t in PrimeScalar::all(5) {
            assert_eq!(a.y_operator(RootSign::Positive, t), exp_operator(&v, &e, t).unwrap());
        }
    }

    #[test]
    fn n_over_restricted_examples() {
        assert!(DividedPowerAction::new(3, 2, 3).unwrap().is_n_over_restricted());
        assert!(!DividedPowerAction::new(4, 2, 3).unwrap().is_n_over_restricted());
        assert!(DividedPowerAction::new(0, 2, 1).unwrap().is_n_over_restricted());
        for m in 1..4 {
            assert!(!DividedPowerAction::new(m, 2, 1).unwrap().is_n_over_restricted());
        }
    }

    #[test]
    fn abs_n_chev_examples() {
        let a = DividedPowerAction::new(3, 2, 3).unwrap();
        let f = a.matrix(DividedKind::F, 1).clone();
        for t in PrimeScalar::all(2) {
            assert!(a.verify_abs_n_chev(RootSign::Positive, t, &f));
        }
        assert!(a.verify_abs_n_chev(RootSign::Positive, PrimeScalar::new(0, 2), &f));
        assert!(a.abs_n_chev_exhaustive().passed());
    }

    #[test]
    fn phi_for_frobenius_kernels() {
        let r = build_phi_n(1, 2, 3, 100_000).unwrap();
        assert!(r.is_function && r.kernel_in_aut);
        assert_eq!((r.order_v, r.order_g), (6, 6));
    }
}
