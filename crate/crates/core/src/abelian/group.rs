use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, smith_normal_form_cols, IntMatrix};
use crate::error::{Error, Result};

/// Invariant-factor presentation `Z_{d_1} + Z_{d_2} + ...` with
/// `d_1 | d_2 | ...`, no factor equal to 1, and 0 standing for `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbPresentation {
    factors: Vec<u64>,
}

impl FinAbPresentation {
    pub fn trivial() -> Self {
        FinAbPresentation { factors: vec![] }
    }

    /// Checks that `factors` is already canonical.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let canon = Self::from_cyclic_orders(factors.iter().copied());
        if canon.factors != factors {
            return Err(Error::PreconditionFailed(format!(
                "{factors:?} is not an invariant-factor list (canonical: {:?})",
                canon.factors
            )));
        }
        Ok(canon)
    }

    /// Canonical form of `Z_{o_1} + Z_{o_2} + ...` for arbitrary orders
    /// (1 is dropped, 0 is infinite cyclic).
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let orders: Vec<u64> = orders.into_iter().filter(|&o| o != 1).collect();
        let n = orders.len();
        let m: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(orders[i]) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let (d, _, _) = smith_normal_form_cols(&m);
        Self::from_diagonal((0..n).map(|i| d[i][i].clone()))
    }

    fn from_diagonal(diag: impl IntoIterator<Item = BigInt>) -> Self {
        let mut finite = Vec::new();
        let mut free = 0;
        for x in diag {
            if x.is_zero() {
                free += 1;
            } else if !x.is_one() {
                finite.push(x.abs().to_u64().expect("invariant factor exceeds u64"));
            }
        }
        finite.extend(std::iter::repeat_n(0, free));
        FinAbPresentation { factors: finite }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f == 0).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.is_finite()
            .then(|| self.factors.iter().map(|&f| f as u128).product())
    }

    /// Multiset of prime powers of the torsion part, sorted.
    pub fn primary_decomposition(&self) -> PrimaryDecomposition {
        let mut prime_powers = Vec::new();
        for &f in self.factors.iter().filter(|&&f| f > 1) {
            let mut rest = f;
            let mut p = 2;
            while p * p <= rest {
                if rest % p == 0 {
                    let mut q = 1;
                    while rest % p == 0 {
                        rest /= p;
                        q *= p;
                    }
                    prime_powers.push(q);
                }
                p += 1;
            }
            if rest > 1 {
                prime_powers.push(rest);
            }
        }
        prime_powers.sort_unstable();
        PrimaryDecomposition {
            free_rank: self.free_rank(),
            prime_powers,
        }
    }
}

impl fmt::Display for FinAbPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&d| if d == 0 { "Z".into() } else { format!("Z_{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub free_rank: usize,
    pub prime_powers: Vec<u64>,
}

pub fn iso_eq(a: &FinAbPresentation, b: &FinAbPresentation) -> bool {
    a == b
}

fn check_ambient(ambient: &[u64], elements: &[Vec<i64>]) -> Result<()> {
    if ambient.contains(&0) {
        return Err(Error::PreconditionFailed("ambient group must be finite".into()));
    }
    for v in elements {
        if v.len() != ambient.len() {
            return Err(Error::CoordinateOutOfRange(format!(
                "{v:?} has length {}, ambient has {}",
                v.len(),
                ambient.len()
            )));
        }
        if let Some((x, m)) = v.iter().zip(ambient).find(|(&x, &m)| x < 0 || x as u64 >= m) {
            return Err(Error::CoordinateOutOfRange(format!("{x} not in 0..{m} ({v:?})")));
        }
    }
    Ok(())
}

/// A cyclic decomposition of a subgroup of `Z_{m_1} + ... + Z_{m_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDecomposition {
    pub presentation: FinAbPresentation,
    /// `(generator, order)`, one per invariant factor, in order.
    pub generators: Vec<(Vec<i64>, u64)>,
}

/// The subgroup of `Z_{m_1} + ... + Z_{m_n}` generated by `elements`,
/// together with generators realizing its invariant factors.
///
/// With `L` the row lattice of the elements and the relations `m_j e_j`,
/// the subgroup is `L / L0` for `L0 = diag(m) Z^n`. In a basis `B` of `L`,
/// `L0` is spanned by the rows of `diag(m) B^-1`, whose SNF gives the answer.
pub fn subgroup_decomposition(
    ambient: &[u64],
    elements: &[Vec<i64>],
) -> Result<SubgroupDecomposition> {
    check_ambient(ambient, elements)?;
    let n = ambient.len();
    if n == 0 {
        return Ok(SubgroupDecomposition {
            presentation: FinAbPresentation::trivial(),
            generators: vec![],
        });
    }
    let mut stacked: IntMatrix = elements
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for (j, &m) in ambient.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n];
        row[j] = BigInt::from(m);
        stacked.push(row);
    }
    let (d, v, v_inv) = smith_normal_form_cols(&stacked);
    // B = D_n * V^-1 ; B^-1 = V * D_n^-1
    let dn: Vec<BigInt> = (0..n).map(|i| d[i][i].clone()).collect();
    let basis: IntMatrix = (0..n)
        .map(|i| v_inv[i].iter().map(|x| x * &dn[i]).collect())
        .collect();
    let c: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = BigInt::from(ambient[i]) * &v[i][j];
                    let (q, r) = x.div_rem(&dn[j]);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect()
        })
        .collect();
    let s = smith_normal_form(&c);
    let diag = s.diagonal();
    let mut generators = Vec::new();
    for (i, di) in diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let coords: Vec<i64> = (0..n)
            .map(|j| {
                let x = (0..n).fold(BigInt::zero(), |acc, k| acc + &s.v_inv[i][k] * &basis[k][j]);
                x.mod_floor(&BigInt::from(ambient[j])).to_i64().unwrap()
            })
            .collect();
        generators.push((coords, di.to_u64().expect("order fits u64")));
    }
    Ok(SubgroupDecomposition {
        presentation: FinAbPresentation::from_diagonal(diag),
        generators,
    })
}

pub fn subgroup_from_elements(ambient: &[u64], elements: &[Vec<i64>]) -> Result<FinAbPresentation> {
    Ok(subgroup_decomposition(ambient, elements)?.presentation)
}

/// Order of `v` in `Z_{m_1} + ... + Z_{m_n}`.
pub fn element_order(ambient: &[u64], v: &[i64]) -> u64 {
    v.iter().zip(ambient).fold(1u64, |acc, (&x, &m)| {
        let g = (x.rem_euclid(m as i64) as u64).gcd(&m);
        acc.lcm(&(m / g))
    })
}

/// Solves `x * rows = target` over the integers.
pub fn solve_integer(rows: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = rows.len();
    let n = target.len();
    if s == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let snf = smith_normal_form(rows);
    // x U^-1 D = b V
    let bv: Vec<BigInt> = (0..n)
        .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &target[k] * &snf.v[k][j]))
        .collect();
    let mut z = vec![BigInt::zero(); s];
    for (j, b) in bv.iter().enumerate() {
        let dj = if j < s { snf.d[j][j].clone() } else { BigInt::zero() };
        if dj.is_zero() {
            if !b.is_zero() {
                return None;
            }
            continue;
        }
        let (q, r) = b.div_rem(&dj);
        if !r.is_zero() {
            return None;
        }
        z[j] = q;
    }
    Some(
        (0..s)
            .map(|j| (0..s).fold(BigInt::zero(), |acc, k| acc + &z[k] * &snf.u[k][j]))
            .collect(),
    )
}

/// A homomorphism given on generators: row `i` is the image of the `i`-th
/// source generator in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrixHom {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl IntMatrixHom {
    pub fn new(source: Vec<u64>, target: Vec<u64>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != source.len() || matrix.iter().any(|r| r.len() != target.len()) {
            return Err(Error::PreconditionFailed("matrix shape does not match".into()));
        }
        for (row, &o) in matrix.iter().zip(&source) {
            for (&x, &m) in row.iter().zip(&target) {
                let killed = match (o, m) {
                    (_, 0) => o == 0 || x == 0,
                    (0, _) => true,
                    _ => ((o as i128 * x as i128).rem_euclid(m as i128)) == 0,
                };
                if !killed {
                    return Err(Error::PreconditionFailed(format!(
                        "image {row:?} is not killed by the source order {o}"
                    )));
                }
            }
        }
        Ok(IntMatrixHom {
            source,
            target,
            matrix,
        })
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.target.len())
            .map(|j| {
                let s: i128 = v
                    .iter()
                    .zip(&self.matrix)
                    .map(|(&a, row)| a as i128 * row[j] as i128)
                    .sum();
                match self.target[j] {
                    0 => s as i64,
                    m => s.rem_euclid(m as i128) as i64,
                }
            })
            .collect()
    }

    /// Image subgroup; the target must be finite.
    pub fn image(&self) -> Result<FinAbPresentation> {
        let rows: Vec<Vec<i64>> = self.matrix.iter().map(|r| self.apply_row(r)).collect();
        subgroup_from_elements(&self.target, &rows)
    }

    fn apply_row(&self, r: &[i64]) -> Vec<i64> {
        r.iter()
            .zip(&self.target)
            .map(|(&x, &m)| if m == 0 { x } else { x.rem_euclid(m as i64) })
            .collect()
    }
}

/// Brute-force closure of `elements` under addition; used as an oracle.
pub fn closure(ambient: &[u64], elements: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    let zero = vec![0i64; ambient.len()];
    let mut frontier = vec![zero.clone()];
    seen.insert(zero, ());
    while let Some(x) = frontier.pop() {
        for g in elements {
            let y: Vec<i64> = x
                .iter()
                .zip(g)
                .zip(ambient)
                .map(|((&a, &b), &m)| (a + b).rem_euclid(m as i64))
                .collect();
            if seen.insert(y.clone(), ()).is_none() {
                frontier.push(y);
            }
        }
    }
    seen.into_keys().collect()
}
