//! Terminal weighted projective 3-spaces `P(a0, a1, a2, a3)`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::basket::{Basket, SingularityPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sorted positive weights `a0 <= a1 <= a2 <= a3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector([u64; 4]);

impl WeightVector {
    pub fn new(mut weights: [u64; 4]) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::NotWellFormed(weights));
        }
        weights.sort_unstable();
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> [u64; 4] {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// No three weights share a common factor.
    pub fn is_well_formed(&self) -> bool {
        let a = self.0;
        (0..4).all(|skip| {
            let g = (0..4)
                .filter(|&k| k != skip)
                .fold(0u64, |g, k| g.gcd(&a[k]));
            g == 1
        })
    }

    /// The other three weights, seen from vertex `i`.
    fn others(&self, i: usize) -> [u64; 3] {
        let mut out = [0; 3];
        let mut k = 0;
        for (j, &w) in self.0.iter().enumerate() {
            if j != i {
                out[k] = w;
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "P({a},{b},{c},{d})")
    }
}

/// Reid–Tai: `1/r(w1, w2, w3)` is terminal iff every `k` in `[1, r)` has age
/// `sum (k w_i mod r) / r > 1`.
pub fn reid_tai_terminal(r: u64, weights: [u64; 3]) -> bool {
    (1..r).all(|k| weights.iter().map(|w| (k * w) % r).sum::<u64>() > r)
}

pub fn is_terminal_wps(w: &WeightVector) -> Result<bool> {
    if !w.is_well_formed() {
        return Err(Error::NotWellFormed(w.0));
    }
    let a = w.0;
    let pairwise = (0..4).all(|i| (i + 1..4).all(|j| a[i].gcd(&a[j]) == 1));
    if !pairwise {
        return Ok(false);
    }
    Ok((0..4)
        .filter(|&i| a[i] > 1)
        .all(|i| reid_tai_terminal(a[i], w.others(i))))
}

/// Number of monomials of weighted degree `degree`.
pub fn count_monomials(weights: &[u64], degree: u64) -> u64 {
    let d = degree as usize;
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        for k in w..=d {
            ways[k] += ways[k - w];
        }
    }
    ways[d]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpsInvariants {
    pub minus_k_cubed: Rational,
    pub index: u64,
    pub antican_dim: i64,
}

/// `-K^3 = (sum a)^3 / prod a`, Fano index `sum a`, and `dim |-K|` by
/// counting monomials of degree `sum a`.
pub fn wps_invariants(w: &WeightVector) -> Result<WpsInvariants> {
    if !w.is_well_formed() {
        return Err(Error::NotWellFormed(w.0));
    }
    let s = w.sum();
    let prod: u64 = w.0.iter().product();
    let minus_k_cubed = Rational::from_i128((s as i128).pow(3), prod as i128);
    Ok(WpsInvariants {
        minus_k_cubed,
        index: s,
        antican_dim: count_monomials(&w.0, s) as i64 - 1,
    })
}

/// `dim |O(t)|`, or `-1` when there are no sections.
pub fn wps_linear_system_dim(w: &WeightVector, t: u64) -> i64 {
    count_monomials(&w.0, t) as i64 - 1
}

/// The basket of a terminal space: one point per vertex with `a_i > 1`,
/// written as `1/r(1, -1, b)` after rescaling.
pub fn wps_basket(w: &WeightVector) -> Result<Basket> {
    if !is_terminal_wps(w)? {
        return Err(Error::Domain(format!("{w} is not terminal")));
    }
    let mut points = Vec::new();
    for (i, &r) in w.0.iter().enumerate() {
        if r == 1 {
            continue;
        }
        let o = w.others(i).map(|x| x % r);
        let (x, c) = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
            .iter()
            .find(|&&(j, k, _)| (o[j] + o[k]) % r == 0)
            .map(|&(j, _, l)| (o[j], o[l]))
            .ok_or_else(|| {
                Error::Domain(format!("vertex {r} of {w} is not of type 1/r(1,-1,b)"))
            })?;
        let x_inv = (x as i64).extended_gcd(&(r as i64)).x.rem_euclid(r as i64) as u64;
        let b = (c * x_inv) % r;
        points.push(SingularityPoint::new(r as u32, b as u32)?);
    }
    Ok(Basket::new(points))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpsRow {
    pub weights: WeightVector,
    pub invariants: WpsInvariants,
}

/// All terminal well-formed weight vectors with `a3 <= max_weight`, sorted.
pub fn scan_wps(max_weight: u64) -> Vec<WpsRow> {
    let mut rows = Vec::new();
    for a0 in 1..=max_weight {
        for a1 in a0..=max_weight {
            if a0.gcd(&a1) != 1 {
                continue;
            }
            for a2 in a1..=max_weight {
                if a0.gcd(&a2) != 1 || a1.gcd(&a2) != 1 {
                    continue;
                }
                for a3 in a2..=max_weight {
                    let w = WeightVector([a0, a1, a2, a3]);
                    if w.is_well_formed() && is_terminal_wps(&w) == Ok(true) {
                        let invariants = wps_invariants(&w).expect("well-formed");
                        rows.push(WpsRow {
                            weights: w,
                            invariants,
                        });
                    }
                }
            }
        }
    }
    rows
}
