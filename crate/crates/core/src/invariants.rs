//! Global Riemann–Roch quantities of a numerical Fano threefold with
//! `-K ~ qL`: `-K.c2`, `L^3`, `chi(tL)` and the anticanonical dimension.

use crate::basket::{basket_sum, correction_term, local_index, Basket};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Numerical data `(basket, q, L^3)` together with the derived intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalFano {
    pub basket: Basket,
    pub q: u32,
    pub l_cubed: Rational,
    pub minus_k_cubed: Rational,
    pub kc2: Rational,
    pub l_c2: Rational,
}

impl NumericalFano {
    /// Checks `gcd(q, r) = 1`, `L^3 > 0` and `-K.c2 >= 0`.
    pub fn new(basket: Basket, q: u32, l_cubed: Rational) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("Fano index must be positive".into()));
        }
        if let Some(r) = basket.indices().find(|&r| num_integer::gcd(r, q) != 1) {
            return Err(Error::NoLocalIndex {
                q: q as i64,
                r: r as i64,
            });
        }
        if !l_cubed.is_positive() {
            return Err(Error::Domain(format!("L^3 = {l_cubed} is not positive")));
        }
        let kc2 = minus_k_dot_c2(&basket);
        if kc2.is_negative() {
            return Err(Error::Domain(format!("-K.c2 = {kc2} is negative")));
        }
        let q3 = (q as i64).pow(3);
        Ok(NumericalFano {
            minus_k_cubed: &l_cubed * q3,
            l_c2: &kc2 / q as i64,
            basket,
            q,
            l_cubed,
            kc2,
        })
    }

    /// For `q >= 3`, with `L^3` taken from the vanishing of `chi(-L)`.
    pub fn from_vanishing(basket: Basket, q: u32) -> Result<Self> {
        let l3 = l_cubed(&basket, q)?;
        NumericalFano::new(basket, q, l3)
    }

    /// From the anticanonical degree `-K^3`, so `L^3 = -K^3 / q^3`.
    pub fn from_degree(basket: Basket, q: u32, minus_k_cubed: &Rational) -> Result<Self> {
        let l3 = minus_k_cubed / (q as i64).pow(3);
        NumericalFano::new(basket, q, l3)
    }
}

/// `-K.c2 = 24 - sum (r - 1/r)`. Negative values are returned as is.
pub fn minus_k_dot_c2(basket: &Basket) -> Rational {
    Rational::from_integer(24) - basket_sum(basket)
}

fn corrections(basket: &Basket, q: u32, t: i64) -> Result<Rational> {
    let mut acc = Rational::zero();
    for p in basket.points() {
        acc += correction_term(p, local_index(q as i64, t, p)?);
    }
    Ok(acc)
}

/// `L^3 = 12/((q-1)(q-2)) * (1 - L.c2/12 + sum c_P(-L))`, valid for `q >= 3`.
pub fn l_cubed(basket: &Basket, q: u32) -> Result<Rational> {
    if q <= 2 {
        return Err(Error::Domain(format!(
            "L^3 is not determined by chi(-L) = 0 for q = {q}"
        )));
    }
    let q = q as i64;
    let l_c2 = minus_k_dot_c2(basket) / q;
    let inner = Rational::one() - l_c2 / 12 + corrections(basket, q as u32, -1)?;
    Ok(inner * Rational::new(12, (q - 1) * (q - 2)))
}

/// `chi(tL) = 1 + t(q+t)(q+2t)/12 L^3 + t L.c2/12 + sum c_P(tL)`.
pub fn euler_characteristic(fano: &NumericalFano, t: i64) -> Rational {
    let q = fano.q as i64;
    let cubic = Rational::new(t * (q + t) * (q + 2 * t), 12) * &fano.l_cubed;
    let linear = &fano.l_c2 * t / 12;
    let local =
        corrections(&fano.basket, fano.q, t).expect("index coprimality checked on construction");
    Rational::one() + cubic + linear + local
}

/// `dim |tL| = chi(tL) - 1` for `t >= 1`.
pub fn dim_linear_system(fano: &NumericalFano, t: i64) -> Result<i64> {
    if t < 1 {
        return Err(Error::Domain(format!("dim |tL| needs t >= 1, got {t}")));
    }
    let chi = euler_characteristic(fano, t);
    match chi.to_i64() {
        Some(c) if c >= 1 => Ok(c - 1),
        _ => Err(Error::Inconsistent {
            t,
            value: chi.to_string(),
        }),
    }
}

/// `dim |-K| = -K^3/2 + 2 - sum b(r-b)/(2r)`.
pub fn dim_antican_exact(basket: &Basket, minus_k_cubed: &Rational) -> Rational {
    let local: Rational = basket
        .points()
        .iter()
        .map(|p| {
            let (r, b) = (p.r as i64, p.b as i64);
            Rational::new(b * (r - b), 2 * r)
        })
        .sum();
    minus_k_cubed / 2 + 2 - local
}

/// `(lower, upper) = (-K^3/2 - 2, -K^3/2 + 2 - sum (1 - 1/r)/2)`.
pub fn antican_bounds(basket: &Basket, minus_k_cubed: &Rational) -> (Rational, Rational) {
    let half = minus_k_cubed / 2;
    let slack: Rational = basket
        .points()
        .iter()
        .map(|p| Rational::new(p.r as i64 - 1, 2 * p.r as i64))
        .sum();
    (&half - 2, half + 2 - slack)
}
