//! Admissibility predicates applied to numerical candidates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::basket::{gorenstein_index, residue, Basket};
use crate::error::{Error, Result};
use crate::invariants::{dim_antican_exact, euler_characteristic, NumericalFano};
use crate::rational::Rational;

/// Largest assignment space `prod r_P` that [`torsion_feasible`] accepts.
pub const TORSION_ASSIGNMENT_CAP: u128 = 10_000_000;

/// Kawamata's cases for the reflexive cotangent sheaf, with the
/// destabilizing slopes replaced by their extremal value `1/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityCase {
    Semistable,
    Rank2,
    Rank1Semi,
    Rank1Unstable,
}

impl StabilityCase {
    pub const ALL: [StabilityCase; 4] = [
        StabilityCase::Semistable,
        StabilityCase::Rank2,
        StabilityCase::Rank1Semi,
        StabilityCase::Rank1Unstable,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            StabilityCase::Semistable => "semistable",
            StabilityCase::Rank2 => "rank2",
            StabilityCase::Rank1Semi => "rank1_semi",
            StabilityCase::Rank1Unstable => "rank1_unstable",
        }
    }

    pub fn min_q(self) -> u32 {
        match self {
            StabilityCase::Semistable => 1,
            StabilityCase::Rank2 => 2,
            StabilityCase::Rank1Semi | StabilityCase::Rank1Unstable => 4,
        }
    }

    /// Multiplier `m(q)` of `-K^3` in the case's inequality, normalized so the
    /// inequality reads `m(q) * (-K^3) <= -K.c2`.
    pub fn coefficient(self, q: u32) -> Rational {
        let (n, d) = self.coefficient_parts(q);
        Rational::from_i128(n, d)
    }

    /// `m(q)` as an unreduced fraction `(numerator, denominator)`.
    pub fn coefficient_parts(self, q: u32) -> (i128, i128) {
        let q = q as i128;
        match self {
            StabilityCase::Semistable => (1, 3),
            // (1/q)(4 - 3/q) / 4
            StabilityCase::Rank2 => (4 * q - 3, 4 * q * q),
            // (1 - 1/q)(1 + 3/q) / 4
            StabilityCase::Rank1Semi => ((q - 1) * (q + 3), 4 * q * q),
            // (1/q)(2 - 3/q)
            StabilityCase::Rank1Unstable => (2 * q - 3, q * q),
        }
    }

    pub fn holds(self, q: u32, minus_k_cubed: &Rational, kc2: &Rational) -> bool {
        &(self.coefficient(q) * minus_k_cubed) <= kc2
    }

    /// Largest degree this case admits, `-K.c2 / m(q)`.
    pub fn degree_bound(self, q: u32, kc2: &Rational) -> Option<Rational> {
        let m = self.coefficient(q);
        m.is_positive().then(|| kc2 / m)
    }
}

/// Cases available at index `q`: only semistable for `q = 1`, semistable or
/// rank 2 for `q <= 3`, all four otherwise.
pub fn allowed_cases(q: u32) -> &'static [StabilityCase] {
    match q {
        0 | 1 => &StabilityCase::ALL[..1],
        2 | 3 => &StabilityCase::ALL[..2],
        _ => &StabilityCase::ALL,
    }
}

pub fn stability_pass(q: u32, minus_k_cubed: &Rational, kc2: &Rational) -> bool {
    allowed_cases(q)
        .iter()
        .any(|c| c.holds(q, minus_k_cubed, kc2))
}

/// Largest degree passing [`stability_pass`] at `(q, kc2)`.
pub fn stability_degree_bound(q: u32, kc2: &Rational) -> Option<Rational> {
    allowed_cases(q)
        .iter()
        .filter_map(|c| c.degree_bound(q, kc2))
        .max()
}

/// `chi(tL) = 0` for `-q < t < 0`, and `chi(tL)` integral for `1 <= t <= q`.
pub fn vanishing_pass(fano: &NumericalFano) -> bool {
    let q = fano.q as i64;
    (-q + 1..0).all(|t| euler_characteristic(fano, t).is_zero())
        && (1..=q).all(|t| euler_characteristic(fano, t).is_integer())
}

/// `N * (-K^3)` integral for `N = lcm(r_P)`, and `dim |-K|` a non-negative integer.
pub fn integrality_pass(basket: &Basket, _q: u32, minus_k_cubed: &Rational) -> bool {
    let n = gorenstein_index(basket) as i64;
    if !minus_k_cubed.mul_int(n).is_integer() {
        return false;
    }
    let dim = dim_antican_exact(basket, minus_k_cubed);
    dim.is_integer() && !dim.is_negative()
}

/// Whether some local-index assignment `(i_P)`, not all zero, satisfies
/// `sum res(b i)(r - res(b i)) / (2r) = 2`. A `false` answer rules out
/// torsion in the class group.
pub fn torsion_feasible(basket: &Basket) -> Result<bool> {
    let size = basket
        .indices()
        .try_fold(1u128, |acc, r| acc.checked_mul(r as u128));
    match size {
        Some(size) if size <= TORSION_ASSIGNMENT_CAP => {}
        size => {
            return Err(Error::TorsionCap {
                basket: basket.to_string(),
                size: size.unwrap_or(u128::MAX),
                cap: TORSION_ASSIGNMENT_CAP,
            })
        }
    }
    // Work in units of 1/(2N); the target 2 becomes 4N.
    let n = gorenstein_index(basket) as i64;
    let target = 4 * n;
    let mut reachable: BTreeSet<i64> = BTreeSet::from([0]);
    for p in basket.points() {
        let (r, b) = (p.r as i64, p.b as i64);
        let terms: BTreeSet<i64> = (0..r)
            .map(|i| {
                let o = residue(b, i, r);
                o * (r - o) * (n / r)
            })
            .collect();
        reachable = reachable
            .iter()
            .flat_map(|s| terms.iter().map(move |t| s + t))
            .filter(|&s| s <= target)
            .collect();
    }
    Ok(reachable.contains(&target))
}
