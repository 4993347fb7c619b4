//! Matrix realizations of the classical algebras sl_{n+1}, so_{2n+1},
//! sp_{2n}, so_{2n}, used as an independent check on the structure-constant
//! table: root vectors are built from the Chevalley generators as iterated
//! commutators normalised along extraspecial pairs, and every bracket in the
//! table must then hold as an identity of rational matrices.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::liealgebra::structure::ChevalleyTable;
use crate::rootdata::{CartanType, RootSystem};

#[derive(Clone, Debug, PartialEq)]
struct QMatrix {
    n: usize,
    data: Vec<Rational64>,
}

impl QMatrix {
    fn zero(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Rational64::from_integer(0); n * n],
        }
    }

    fn unit(n: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zero(n);
        for &(i, j, v) in entries {
            m.data[i * n + j] += Rational64::from_integer(v);
        }
        m
    }

    fn mul(&self, o: &QMatrix) -> QMatrix {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Rational64::from_integer(0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        out
    }

    fn bracket(&self, o: &QMatrix) -> QMatrix {
        let mut a = self.mul(o);
        let b = o.mul(self);
        for (x, y) in a.data.iter_mut().zip(b.data) {
            *x -= y;
        }
        a
    }

    fn scaled(&self, s: Rational64) -> QMatrix {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn add_scaled(&mut self, o: &QMatrix, s: Rational64) {
        for (x, y) in self.data.iter_mut().zip(&o.data) {
            *x += y * s;
        }
    }
}

/// Chevalley generators (e_i, f_i) of a classical type in its natural
/// representation; `None` for exceptional types.
fn generators(rs: &RootSystem) -> Option<(Vec<QMatrix>, Vec<QMatrix>)> {
    let n = rs.rank();
    let (size, e, f): (usize, Vec<Vec<(usize, usize, i64)>>, Vec<Vec<(usize, usize, i64)>>) = match rs.label().kind {
        CartanType::A => {
            let e = (0..n).map(|i| vec![(i, i + 1, 1)]).collect();
            let f = (0..n).map(|i| vec![(i + 1, i, 1)]).collect();
            (n + 1, e, f)
        }
        CartanType::B | CartanType::C | CartanType::D => {
            // index k ↔ ε_k, n + k ↔ −ε_k, 2n ↔ zero weight (type B)
            let mut e: Vec<Vec<(usize, usize, i64)>> = (0..n - 1)
                .map(|i| vec![(i, i + 1, 1), (n + i + 1, n + i, -1)])
                .collect();
            let mut f: Vec<Vec<(usize, usize, i64)>> = (0..n - 1)
                .map(|i| vec![(i + 1, i, 1), (n + i, n + i + 1, -1)])
                .collect();
            let last = n - 1;
            let size = match rs.label().kind {
                CartanType::B => {
                    let z = 2 * n;
                    e.push(vec![(last, z, 1), (z, n + last, -1)]);
                    f.push(vec![(z, last, 2), (n + last, z, -2)]);
                    2 * n + 1
                }
                CartanType::C => {
                    e.push(vec![(last, n + last, 1)]);
                    f.push(vec![(n + last, last, 1)]);
                    2 * n
                }
                _ => {
                    // ε_{n−1} + ε_n
                    let a = n - 2;
                    e.push(vec![(a, n + last, 1), (last, n + a, -1)]);
                    f.push(vec![(n + last, a, 1), (n + a, last, -1)]);
                    2 * n
                }
            };
            (size, e, f)
        }
        _ => return None,
    };
    Some((
        e.iter().map(|x| QMatrix::unit(size, x)).collect(),
        f.iter().map(|x| QMatrix::unit(size, x)).collect(),
    ))
}

/// Checks the integral table against the natural matrix realization.
/// Returns `Ok(false)` for exceptional types, where no realization is held.
pub fn cross_check(rs: &RootSystem, table: &ChevalleyTable) -> Result<bool> {
    let Some((e, f)) = generators(rs) else {
        return Ok(false);
    };
    let r = rs.rank();
    let np = rs.num_positive();
    let h: Vec<QMatrix> = (0..r).map(|i| e[i].bracket(&f[i])).collect();
    let q = |v: i64| Rational64::from_integer(v);
    // Serre-type relations among generators
    for i in 0..r {
        for j in 0..r {
            let c = rs.cartan()[i][j];
            if h[i].bracket(&e[j]) != e[j].scaled(q(c)) || h[i].bracket(&f[j]) != f[j].scaled(q(-c)) {
                return Err(Error::Invalid(format!("realization of {} violates [h, e] relations", rs.label())));
            }
            if i != j && e[i].bracket(&f[j]) != QMatrix::zero(e[i].n) {
                return Err(Error::Invalid(format!("realization of {} violates [e_i, f_j] = 0", rs.label())));
            }
        }
    }
    let roots = rs.positive_roots();
    let mut pos: Vec<QMatrix> = Vec::with_capacity(np);
    let mut neg: Vec<QMatrix> = Vec::with_capacity(np);
    for (k, xi) in roots.iter().enumerate() {
        if k < r {
            pos.push(e[k].clone());
            neg.push(f[k].clone());
            continue;
        }
        // extraspecial pair: least simple α_i with ξ − α_i a root
        let (i, d) = (0..r)
            .find_map(|i| {
                let mut delta = xi.clone();
                delta[i] -= 1;
                rs.positive_index(&delta).map(|d| (i, d))
            })
            .unwrap();
        let mut s = 0;
        let mut cur = roots[d].clone();
        loop {
            cur[i] -= 1;
            if rs.positive_index(&cur).is_none() {
                break;
            }
            s += 1;
        }
        let scale = Rational64::new(1, s + 1);
        pos.push(e[i].bracket(&pos[d]).scaled(scale));
        neg.push(f[i].bracket(&neg[d]).scaled(-scale));
    }
    let basis: Vec<&QMatrix> = (0..table.dim)
        .map(|b| {
            if b < np {
                &neg[np - 1 - b]
            } else if b < np + r {
                &h[b - np]
            } else {
                &pos[b - np - r]
            }
        })
        .collect();
    for a in 0..table.dim {
        for b in 0..table.dim {
            let lhs = basis[a].bracket(basis[b]);
            let mut rhs = QMatrix::zero(lhs.n);
            for &(d, c) in table.bracket(a, b) {
                rhs.add_scaled(basis[d], q(c));
            }
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "structure constant mismatch for {} on basis pair ({a}, {b})",
                    rs.label()
                )));
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealgebra::structure::chevalley_table;

    #[test]
    fn classical_tables_match_matrix_realizations() {
        for label in ["A1", "A2", "A3", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5"] {
            let rs = RootSystem::from_label(label.parse().unwrap()).unwrap();
            let t = chevalley_table(&rs).unwrap();
            assert!(cross_check(&rs, &t).unwrap(), "{label}");
        }
    }

    #[test]
    fn exceptional_types_have_no_realization() {
        let rs = RootSystem::new(CartanType::G, 2).unwrap();
        let t = chevalley_table(&rs).unwrap();
        assert!(!cross_check(&rs, &t).unwrap());
    }
}
