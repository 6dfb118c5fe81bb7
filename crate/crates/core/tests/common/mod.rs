//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use num_integer::Integer;
use proptest::prelude::*;
use qfano_core::basket::{residue, Basket, SingularityPoint};
use qfano_core::invariants::NumericalFano;
use qfano_core::rational::Rational;

pub fn canonical_points(max_r: u32) -> Vec<SingularityPoint> {
    let mut v = Vec::new();
    for r in 2..=max_r {
        for b in 1..=r / 2 {
            if r.gcd(&b) == 1 {
                v.push(SingularityPoint { r, b });
            }
        }
    }
    v
}

/// Counts non-empty multisets with `sum (r - 1/r) <= cap` by a knapsack over
/// integer weights in units of `1/L`, `L = lcm(2..=max_r)`.
pub fn basket_count_oracle(cap_num: u64, cap_den: u64) -> u64 {
    let max_r = (2..)
        .take_while(|&r: &u64| (r * r - 1) * cap_den <= r * cap_num)
        .last()
        .unwrap_or(1);
    let l = (2..=max_r).fold(1u64, |a, r| a.lcm(&r));
    let budget = (cap_num * l / cap_den) as usize;
    // ways[s] = number of multisets of total scaled weight exactly s
    let mut ways = vec![0u64; budget + 1];
    ways[0] = 1;
    for p in canonical_points(max_r as u32) {
        let r = p.r as u64;
        let w = ((r * r - 1) * (l / r)) as usize;
        for s in w..=budget {
            ways[s] += ways[s - w];
        }
    }
    ways.iter().sum::<u64>() - 1
}

pub fn torsion_brute_force(basket: &Basket) -> bool {
    let pts = basket.points();
    let n = basket.gorenstein_index() as i64;
    let mut idx = vec![0i64; pts.len()];
    loop {
        // advance odometer; the all-zero assignment is skipped
        let mut k = 0;
        loop {
            if k == pts.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < pts[k].r as i64 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        let total: i64 = pts
            .iter()
            .zip(&idx)
            .map(|(p, &i)| {
                let (r, b) = (p.r as i64, p.b as i64);
                let o = residue(b, i, r);
                o * (r - o) * (n / r)
            })
            .sum();
        if total == 4 * n {
            return true;
        }
    }
}

pub fn point_strategy() -> impl Strategy<Value = SingularityPoint> {
    let pts = canonical_points(13);
    (0..pts.len()).prop_map(move |k| pts[k])
}

/// Random valid `NumericalFano`: basket with `-K.c2 >= 0`, coprime `q`, `L^3 > 0`.
pub fn fano_strategy() -> impl Strategy<Value = NumericalFano> {
    (
        prop::collection::vec(point_strategy(), 0..4),
        1u32..25,
        1i64..400,
        1i64..60,
    )
        .prop_filter_map("invalid numerical data", |(pts, q, num, den)| {
            NumericalFano::new(Basket::new(pts), q, Rational::new(num, den)).ok()
        })
}
