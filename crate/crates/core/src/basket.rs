//! Baskets of terminal cyclic quotient points and their local
//! Riemann–Roch contributions.
//!
//! A point `(r, b)` stands for a cyclic quotient of type `1/r(b, 1, -1)`,
//! stored with `1 <= b <= r/2` and `gcd(r, b) = 1`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityPoint {
    pub r: u32,
    pub b: u32,
}

impl SingularityPoint {
    /// Builds a point, folding `b` into `[1, r/2]` via `b -> r - b`.
    pub fn new(r: u32, b: u32) -> Result<Self> {
        let entry = || format!("{r}:{b}");
        if r < 2 {
            return Err(Error::ParseBasket {
                entry: entry(),
                reason: "index r must be at least 2".into(),
            });
        }
        let b = b % r;
        if b == 0 {
            return Err(Error::ParseBasket {
                entry: entry(),
                reason: "b is divisible by r".into(),
            });
        }
        if r.gcd(&b) != 1 {
            return Err(Error::ParseBasket {
                entry: entry(),
                reason: "gcd(r, b) != 1".into(),
            });
        }
        let b = if 2 * b > r { r - b } else { b };
        Ok(SingularityPoint { r, b })
    }

    /// `r - 1/r`, the point's share of `24 - (-K.c2)`.
    pub fn weight(&self) -> Rational {
        let r = self.r as i64;
        Rational::new(r * r - 1, r)
    }
}

impl fmt::Display for SingularityPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.r, self.b)
    }
}

/// Local index `i` of a divisor at a point: `D ~ i K_X` near the point, `0 <= i < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalIndex(pub u32);

/// Canonical multiset of points, kept sorted by `(r, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    points: Vec<SingularityPoint>,
}

impl Basket {
    pub fn new(mut points: Vec<SingularityPoint>) -> Self {
        points.sort_unstable();
        Basket { points }
    }

    pub fn empty() -> Self {
        Basket::default()
    }

    /// Builds a basket from `(r, b)` pairs, normalizing each one.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(r, b)| SingularityPoint::new(r, b))
            .collect::<Result<Vec<_>>>()
            .map(Basket::new)
    }

    pub fn points(&self) -> &[SingularityPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.points.iter().map(|p| p.r)
    }

    pub fn sum(&self) -> Rational {
        basket_sum(self)
    }

    pub fn gorenstein_index(&self) -> u64 {
        gorenstein_index(self)
    }

    /// Index list in the short form `(2, 6)` used for tables.
    pub fn index_label(&self) -> String {
        let rs: Vec<String> = self.indices().map(|r| r.to_string()).collect();
        format!("({})", rs.join(", "))
    }

    pub fn is_coprime_to(&self, q: u64) -> bool {
        self.indices().all(|r| (r as u64).gcd(&q) == 1)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_basket(s)
    }
}

/// Parses `r:b,r:b,...`; the empty string is the empty basket.
pub fn parse_basket(text: &str) -> Result<Basket> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Basket::empty());
    }
    let mut points = Vec::new();
    for entry in text.split(',') {
        let entry = entry.trim();
        let bad = |reason: &str| Error::ParseBasket {
            entry: entry.to_string(),
            reason: reason.to_string(),
        };
        let (r, b) = entry.split_once(':').ok_or_else(|| bad("expected `r:b`"))?;
        let r: u32 = r
            .trim()
            .parse()
            .map_err(|_| bad("r is not a decimal integer"))?;
        let b: u32 = b
            .trim()
            .parse()
            .map_err(|_| bad("b is not a decimal integer"))?;
        let p = SingularityPoint::new(r, b).map_err(|e| match e {
            Error::ParseBasket { reason, .. } => bad(&reason),
            other => other,
        })?;
        points.push(p);
    }
    Ok(Basket::new(points))
}

/// `(b * j) mod r` in `[0, r)`.
pub fn residue(b: i64, j: i64, r: i64) -> i64 {
    assert!(r >= 1);
    (b * j).rem_euclid(r)
}

/// Local index of `tL` at `point` when `-K ~ qL`: the unique `i` in `[0, r)`
/// with `q*i ≡ -t (mod r)`.
pub fn local_index(q: i64, t: i64, point: &SingularityPoint) -> Result<LocalIndex> {
    let r = point.r as i64;
    let g = q.extended_gcd(&r);
    if g.gcd != 1 {
        return Err(Error::NoLocalIndex { q, r });
    }
    let q_inv = g.x.rem_euclid(r);
    let i = ((-t).rem_euclid(r) * q_inv).rem_euclid(r);
    Ok(LocalIndex(i as u32))
}

/// `c_P(D) = -i(r^2-1)/(12r) + sum_{j=1}^{i-1} res(bj)(r - res(bj))/(2r)`.
pub fn correction_term(point: &SingularityPoint, i: LocalIndex) -> Rational {
    let r = point.r as i64;
    Rational::new(scaled_correction(point, i.0), 12 * r)
}

/// `12 r c_P` for local index `i`, an integer.
pub(crate) fn scaled_correction(point: &SingularityPoint, i: u32) -> i64 {
    let r = point.r as i64;
    let b = point.b as i64;
    let i = i as i64;
    let tail: i64 = (1..i)
        .map(|j| {
            let o = residue(b, j, r);
            o * (r - o)
        })
        .sum();
    -i * (r * r - 1) + 6 * tail
}

/// `12 r c_P(i)` for every `i` in `[0, r)`.
pub(crate) fn scaled_correction_table(point: &SingularityPoint) -> Vec<i64> {
    let r = point.r as i64;
    let b = point.b as i64;
    let mut out = Vec::with_capacity(point.r as usize);
    let mut tail = 0i64;
    for i in 0..r {
        if i >= 2 {
            let o = residue(b, i - 1, r);
            tail += o * (r - o);
        }
        out.push(-i * (r * r - 1) + 6 * tail);
    }
    out
}

/// `sum_P (r_P - 1/r_P)`.
pub fn basket_sum(basket: &Basket) -> Rational {
    basket.points().iter().map(SingularityPoint::weight).sum()
}

/// lcm of the point indices; 1 for the empty basket.
pub fn gorenstein_index(basket: &Basket) -> u64 {
    basket.indices().fold(1u64, |acc, r| acc.lcm(&(r as u64)))
}
