//! Exhaustive search over (basket, index) pairs.
//!
//! Baskets are streamed in lexicographic order of their sorted point list.
//! The stream is split by its smallest point so that workers can each
//! restart it from a fixed head; results are merged and sorted, so the
//! output never depends on the number of workers.

use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basket::{
    gorenstein_index, local_index, scaled_correction_table, Basket, SingularityPoint,
};
use crate::error::{Error, Result};
use crate::filters::{
    allowed_cases, integrality_pass, stability_degree_bound, stability_pass, torsion_feasible,
    vanishing_pass,
};
use crate::invariants::{euler_characteristic, l_cubed, minus_k_dot_c2, NumericalFano};
use crate::rational::Rational;

/// Default degree threshold, `-K^3 >= 125/2`.
pub fn default_min_degree() -> Rational {
    Rational::new(125, 2)
}

/// Upper end of the index range for a basket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QMax {
    /// `4 * lcm(r_P)`.
    Auto,
    /// `min(n, 4 * lcm(r_P))`.
    Fixed(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Strict,
    /// Also admits the printed `q = 1`, `B = (2)` interval up to `74 - 9/2`.
    PaperSlack,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub min_degree: Rational,
    pub q_min: u32,
    pub q_max: QMax,
    pub mode: Mode,
    pub jobs: usize,
    pub basket_sum_cap: Rational,
    /// Permit `basket_sum_cap < 24`, which makes the search incomplete.
    pub allow_partial_cap: bool,
    /// For `q <= 3` skip baskets with `-K.c2 < 125/8` or `sum r > 10`.
    /// Only sound for `min_degree >= 125/2`; ignored otherwise.
    pub prune_low_index: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            min_degree: default_min_degree(),
            q_min: 1,
            q_max: QMax::Auto,
            mode: Mode::Strict,
            jobs: 1,
            basket_sum_cap: Rational::from_integer(24),
            allow_partial_cap: false,
            prune_low_index: false,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.min_degree.is_positive() {
            return Err(Error::Config(format!(
                "min_degree must be positive, got {}",
                self.min_degree
            )));
        }
        if self.basket_sum_cap > 24 {
            return Err(Error::Config(format!(
                "basket_sum_cap {} exceeds 24",
                self.basket_sum_cap
            )));
        }
        if self.basket_sum_cap < 24 && !self.allow_partial_cap {
            return Err(Error::Config(format!(
                "basket_sum_cap {} < 24 truncates the search; set allow_partial_cap to override",
                self.basket_sum_cap
            )));
        }
        if !self.basket_sum_cap.is_positive() {
            return Err(Error::Config("basket_sum_cap must be positive".into()));
        }
        if self.q_min == 0 {
            return Err(Error::Config("q_min must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    fn q_ceiling(&self) -> Option<u32> {
        match self.q_max {
            QMax::Auto => None,
            QMax::Fixed(n) => Some(n),
        }
    }

    fn low_pruning_active(&self) -> bool {
        self.prune_low_index && self.min_degree >= default_min_degree()
    }
}

/// A numerical candidate that survived every filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCandidate {
    pub basket: Basket,
    pub q: u32,
    pub l_cubed: Rational,
    pub minus_k_cubed: Rational,
    pub kc2: Rational,
    /// `dims[t - 1] = dim |tL|` for `t = 1..=q`.
    pub dims: Vec<i64>,
    pub antican_dim: i64,
}

impl FanoCandidate {
    pub fn dim(&self, t: u32) -> Option<i64> {
        (t >= 1)
            .then(|| self.dims.get(t as usize - 1).copied())
            .flatten()
    }

    /// Output order: `q` descending, then basket, then degree.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other
            .q
            .cmp(&self.q)
            .then_with(|| self.basket.cmp(&other.basket))
            .then_with(|| self.minus_k_cubed.cmp(&other.minus_k_cubed))
    }
}

#[derive(Debug)]
struct CatalogEntry {
    point: SingularityPoint,
    weight: Rational,
}

/// All canonical points of weight `r - 1/r <= cap`, sorted by `(r, b)`.
fn point_catalog(cap: &Rational) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for r in 2u32.. {
        let weight = SingularityPoint { r, b: 1 }.weight();
        if &weight > cap {
            break;
        }
        for b in 1..=r / 2 {
            if r.gcd(&b) == 1 {
                out.push(CatalogEntry {
                    point: SingularityPoint { r, b },
                    weight: weight.clone(),
                });
            }
        }
    }
    out
}

/// Lexicographic stream of non-empty baskets with `sum (r - 1/r) <= cap`.
pub struct BasketStream {
    catalog: Arc<Vec<CatalogEntry>>,
    cap: Rational,
    /// (catalog index, remaining budget after taking it)
    stack: Vec<(usize, Rational)>,
    head: Option<usize>,
    started: bool,
    done: bool,
}

impl BasketStream {
    fn new(catalog: Arc<Vec<CatalogEntry>>, cap: Rational, head: Option<usize>) -> Self {
        BasketStream {
            catalog,
            cap,
            stack: Vec::new(),
            head,
            started: false,
            done: false,
        }
    }

    /// Number of distinct heads (smallest points) for this cap.
    pub fn head_count(&self) -> usize {
        self.catalog.len()
    }

    /// The sub-stream of baskets whose smallest point is catalog entry `head`.
    pub fn restart_from(&self, head: usize) -> BasketStream {
        BasketStream::new(Arc::clone(&self.catalog), self.cap.clone(), Some(head))
    }

    fn current(&self) -> Basket {
        Basket::new(
            self.stack
                .iter()
                .map(|(k, _)| self.catalog[*k].point)
                .collect(),
        )
    }

    fn try_push(&mut self, k: usize, budget: &Rational) -> bool {
        match self.catalog.get(k) {
            Some(e) if &e.weight <= budget => {
                let rest = budget - &e.weight;
                self.stack.push((k, rest));
                true
            }
            _ => false,
        }
    }

    fn step(&mut self) -> bool {
        if !self.started {
            self.started = true;
            let cap = self.cap.clone();
            return self.try_push(self.head.unwrap_or(0), &cap);
        }
        // Extend by a copy of the largest point.
        if let Some((k, rest)) = self.stack.last().cloned() {
            if self.try_push(k, &rest) {
                return true;
            }
        }
        // Otherwise advance the deepest slot that can still move.
        while let Some((k, _)) = self.stack.pop() {
            let budget = match self.stack.last() {
                Some((_, rest)) => rest.clone(),
                None if self.head.is_some() => return false,
                None => self.cap.clone(),
            };
            if self.try_push(k + 1, &budget) {
                return true;
            }
        }
        false
    }
}

impl Iterator for BasketStream {
    type Item = Basket;

    fn next(&mut self) -> Option<Basket> {
        if self.done {
            return None;
        }
        if self.step() {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}

pub fn enumerate_baskets(cap: &Rational) -> BasketStream {
    BasketStream::new(Arc::new(point_catalog(cap)), cap.clone(), None)
}

/// Admissible indices `q` for a basket, ascending: `q_min <= q <= 4 lcm(r_P)`,
/// coprime to every `r_P`, optionally capped by a fixed maximum.
pub fn candidate_indices(basket: &Basket, cfg: &SearchConfig) -> Vec<u32> {
    let bound = 4 * gorenstein_index(basket);
    let hi = cfg.q_ceiling().map_or(bound, |n| bound.min(n as u64));
    (cfg.q_min as u64..=hi)
        .filter(|&q| basket.is_coprime_to(q))
        .map(|q| q as u32)
        .collect()
}

/// Integer data for the exact screen of one basket.
///
/// With `M = 12 (q-1)(q-2) N q` every quantity below is an integer:
/// `L^3 = 12 A / M`, `-K.c2 = K / N`, `12 r c_P = table[i]`, and
/// `M chi(tL) = M + t(q+t)(q+2t) A + (q-1)(q-2) (t K + q sum_P table_P[i_t] N / r_P)`.
struct ScaledBasket {
    n: i128,
    /// `N * (-K.c2)`
    kc2_n: i128,
    points: Vec<ScaledPoint>,
}

struct ScaledPoint {
    r: i64,
    cofactor: i128,
    table: Vec<i64>,
}

/// Outcome of the integer screen for one index.
enum Screen {
    Reject,
    /// Passed, or arithmetic left `i128`; the exact pipeline decides.
    Undecided,
}

impl ScaledBasket {
    fn new(basket: &Basket) -> Self {
        let n = gorenstein_index(basket) as i128;
        let mut kc2_n = 24 * n;
        let mut points = Vec::with_capacity(basket.len());
        for p in basket.points() {
            let r = p.r as i128;
            kc2_n -= n * r - n / r;
            points.push(ScaledPoint {
                r: p.r as i64,
                cofactor: n / r,
                table: scaled_correction_table(p),
            });
        }
        ScaledBasket { n, kc2_n, points }
    }

    fn inverses(&self, q: u32) -> Vec<i64> {
        self.points
            .iter()
            .map(|p| (q as i64).extended_gcd(&p.r).x.rem_euclid(p.r))
            .collect()
    }

    /// `sum_P table_P[i_t] * N / r_P` where `q i_t ≡ -t (mod r_P)`.
    fn local_sum(&self, t: i64, q_inv: &[i64]) -> i128 {
        self.points
            .iter()
            .zip(q_inv)
            .map(|(p, inv)| {
                let i = ((-t).rem_euclid(p.r) * inv).rem_euclid(p.r);
                p.table[i as usize] as i128 * p.cofactor
            })
            .sum()
    }

    /// `A` with `L^3 = A / ((q-1)(q-2) N q)`.
    #[cfg(test)]
    fn l_cubed_numerator(&self, q: u32) -> i128 {
        let q_inv = self.inverses(q);
        self.l_cubed_numerator_with(q, &q_inv)
    }

    fn l_cubed_numerator_with(&self, q: u32, q_inv: &[i64]) -> i128 {
        let q = q as i128;
        12 * self.n * q - self.kc2_n + q * self.local_sum(-1, q_inv)
    }

    /// `M chi(tL)` for `M = 12 (q-1)(q-2) N q`, `None` on overflow.
    fn scaled_chi(&self, q: u32, t: i64, a: i128, q_inv: &[i64]) -> Option<i128> {
        let (q, t) = (q as i128, t as i128);
        let m = 12 * (q - 1) * (q - 2) * self.n * q;
        let cubic = (t * (q + t) * (q + 2 * t)).checked_mul(a)?;
        let local = (q * self.local_sum(t as i64, q_inv)).checked_add(t * self.kc2_n)?;
        let rest = ((q - 1) * (q - 2)).checked_mul(local)?;
        m.checked_add(cubic)?.checked_add(rest)
    }

    fn screen(&self, q: u32, min: &Rational, min_small: Option<(i128, i128)>) -> Screen {
        let q_inv = self.inverses(q);
        let a = self.l_cubed_numerator_with(q, &q_inv);
        if a <= 0 || !degree_at_least(q, a, self.n, min, min_small) {
            return Screen::Reject;
        }
        // -K^3 = dn / dd
        let qq = q as i128;
        let dn = qq * qq * a;
        let dd = (qq - 1) * (qq - 2) * self.n;
        let stable = allowed_cases(q).iter().any(|c| {
            let (cn, cd) = c.coefficient_parts(q);
            // cn/cd * dn/dd <= K/N
            match (
                cn.checked_mul(dn).and_then(|x| x.checked_mul(self.n)),
                self.kc2_n.checked_mul(cd).and_then(|x| x.checked_mul(dd)),
            ) {
                (Some(lhs), Some(rhs)) => lhs <= rhs,
                _ => true,
            }
        });
        if !stable {
            return Screen::Reject;
        }
        let m = 12 * (qq - 1) * (qq - 2) * self.n * qq;
        for t in (1 - q as i64..0).rev() {
            match self.scaled_chi(q, t, a, &q_inv) {
                Some(0) | None => {}
                Some(_) => return Screen::Reject,
            }
        }
        for t in 1..=q as i64 {
            match self.scaled_chi(q, t, a, &q_inv) {
                Some(x) if x % m != 0 || x < 0 => return Screen::Reject,
                _ => {}
            }
        }
        Screen::Undecided
    }
}

/// `(numerator, denominator)` of a positive rational, if both fit in `i128`.
fn small_fraction(x: &Rational) -> Option<(i128, i128)> {
    Some((x.numer().to_i128()?, x.denom().to_i128()?))
}

fn degree_at_least(
    q: u32,
    a: i128,
    n: i128,
    min: &Rational,
    min_small: Option<(i128, i128)>,
) -> bool {
    let q = q as i128;
    let den = (q - 1) * (q - 2) * n;
    let num = q * q * a;
    if let Some((mn, md)) = min_small {
        if let (Some(lhs), Some(rhs)) = (num.checked_mul(md), mn.checked_mul(den)) {
            return lhs >= rhs;
        }
    }
    &Rational::from_i128(num, den) >= min
}

/// Remaining filters and the `dim |tL|` table for a positioned candidate.
fn finish(fano: NumericalFano) -> Result<Option<FanoCandidate>> {
    if !vanishing_pass(&fano) || !integrality_pass(&fano.basket, fano.q, &fano.minus_k_cubed) {
        return Ok(None);
    }
    let mut dims = Vec::with_capacity(fano.q as usize);
    for t in 1..=fano.q as i64 {
        let chi = euler_characteristic(&fano, t);
        // h^0(tL) = chi(tL) >= 0
        match chi.to_i64() {
            Some(c) if c >= 0 => dims.push(c - 1),
            _ => return Ok(None),
        }
    }
    if torsion_feasible(&fano.basket)? {
        return Ok(None);
    }
    let antican_dim = *dims.last().expect("q >= 1");
    Ok(Some(FanoCandidate {
        basket: fano.basket,
        q: fano.q,
        l_cubed: fano.l_cubed,
        minus_k_cubed: fano.minus_k_cubed,
        kc2: fano.kc2,
        dims,
        antican_dim,
    }))
}

fn high_for_basket(
    basket: &Basket,
    cfg: &SearchConfig,
    min_small: Option<(i128, i128)>,
) -> Result<Vec<FanoCandidate>> {
    let kc2 = minus_k_dot_c2(basket);
    if kc2.is_negative() {
        return Ok(Vec::new());
    }
    let scaled = ScaledBasket::new(basket);
    let mut out = Vec::new();
    for q in candidate_indices(basket, cfg) {
        if q < 3 {
            continue;
        }
        if cfg.low_pruning_active() && q == 3 && !low_index_prune_ok(basket, &kc2) {
            continue;
        }
        if let Screen::Reject = scaled.screen(q, &cfg.min_degree, min_small) {
            continue;
        }
        let l3 = l_cubed(basket, q)?;
        if !l3.is_positive() || &l3 * (q as i64).pow(3) < cfg.min_degree {
            continue;
        }
        let fano = NumericalFano::new(basket.clone(), q, l3)?;
        if !stability_pass(q, &fano.minus_k_cubed, &fano.kc2) {
            continue;
        }
        if let Some(c) = finish(fano)? {
            out.push(c);
        }
    }
    Ok(out)
}

fn low_index_prune_ok(basket: &Basket, kc2: &Rational) -> bool {
    kc2 >= &Rational::new(125, 8) && basket.indices().map(|r| r as u64).sum::<u64>() <= 10
}

/// Looser degree bound `74 - 9/2` for `q = 1`, `B = (2)` in paper-slack mode.
fn slack_bound(basket: &Basket, q: u32, mode: Mode) -> Option<Rational> {
    let single_two = basket.points() == [SingularityPoint { r: 2, b: 1 }];
    (mode == Mode::PaperSlack && q == 1 && single_two).then(|| Rational::new(139, 2))
}

fn low_for_basket(basket: &Basket, cfg: &SearchConfig) -> Result<Vec<FanoCandidate>> {
    let kc2 = minus_k_dot_c2(basket);
    if kc2.is_negative() {
        return Ok(Vec::new());
    }
    if cfg.low_pruning_active() && !low_index_prune_ok(basket, &kc2) {
        return Ok(Vec::new());
    }
    let n = gorenstein_index(basket) as i64;
    let mut out = Vec::new();
    for q in candidate_indices(basket, cfg) {
        if q > 2 {
            break;
        }
        let Some(strict) = stability_degree_bound(q, &kc2) else {
            continue;
        };
        let slack = slack_bound(basket, q, cfg.mode);
        let upper = match &slack {
            Some(s) if s > &strict => s.clone(),
            _ => strict,
        };
        let lo = cfg.min_degree.mul_int(n).ceil();
        let hi = upper.mul_int(n).floor();
        let mut k = lo;
        while k <= hi {
            let d = Rational::from(k.clone()) / n;
            k += 1;
            let stable = stability_pass(q, &d, &kc2) || slack.as_ref().is_some_and(|s| &d <= s);
            if !stable || !integrality_pass(basket, q, &d) {
                continue;
            }
            let fano = NumericalFano::from_degree(basket.clone(), q, &d)?;
            if let Some(c) = finish(fano)? {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn run_partitioned<F>(cfg: &SearchConfig, per_basket: F) -> Result<Vec<FanoCandidate>>
where
    F: Fn(&Basket) -> Result<Vec<FanoCandidate>> + Sync,
{
    cfg.validate()?;
    let stream = enumerate_baskets(&cfg.basket_sum_cap);
    let heads: Vec<usize> = (0..stream.head_count()).collect();
    let slice = |h: usize| -> Result<Vec<FanoCandidate>> {
        let mut found = Vec::new();
        for basket in stream.restart_from(h) {
            found.extend(per_basket(&basket)?);
        }
        Ok(found)
    };
    // jobs == 1 stays on the calling thread (no pool on targets without threads)
    let parts = if cfg.jobs == 1 {
        heads
            .iter()
            .map(|&h| slice(h))
            .collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| {
            heads
                .par_iter()
                .map(|&h| slice(h))
                .collect::<Result<Vec<_>>>()
        })?
    };
    let mut all: Vec<FanoCandidate> = parts.into_iter().flatten().collect();
    all.sort_by(FanoCandidate::canonical_cmp);
    Ok(all)
}

/// Candidates with `q >= 3`, where `L^3` is forced by `chi(-L) = 0`.
pub fn classify_high(cfg: &SearchConfig) -> Result<Vec<FanoCandidate>> {
    let min_small = small_fraction(&cfg.min_degree);
    run_partitioned(cfg, |b| high_for_basket(b, cfg, min_small))
}

/// Candidates with `q` in `{1, 2}`, scanning the admissible degree grid.
pub fn classify_low(cfg: &SearchConfig) -> Result<Vec<FanoCandidate>> {
    run_partitioned(cfg, |b| low_for_basket(b, cfg))
}

/// Both ranges, merged in canonical order.
pub fn classify(cfg: &SearchConfig) -> Result<Vec<FanoCandidate>> {
    let mut all = classify_low(cfg)?;
    all.extend(classify_high(cfg)?);
    all.sort_by(FanoCandidate::canonical_cmp);
    Ok(all)
}

/// Recomputes every predicate for a candidate from its basket, index and degree.
pub fn recheck(c: &FanoCandidate, mode: Mode) -> bool {
    let Ok(fano) = NumericalFano::from_degree(c.basket.clone(), c.q, &c.minus_k_cubed) else {
        return false;
    };
    if c.q >= 3 && l_cubed(&c.basket, c.q).ok().as_ref() != Some(&fano.l_cubed) {
        return false;
    }
    let stable = stability_pass(c.q, &fano.minus_k_cubed, &fano.kc2)
        || slack_bound(&c.basket, c.q, mode).is_some_and(|s| fano.minus_k_cubed <= s);
    let local_ok = c
        .basket
        .points()
        .iter()
        .all(|p| local_index(c.q as i64, -1, p).is_ok());
    stable
        && local_ok
        && fano.kc2 == c.kc2
        && fano.l_cubed == c.l_cubed
        && vanishing_pass(&fano)
        && integrality_pass(&c.basket, c.q, &c.minus_k_cubed)
        && torsion_feasible(&c.basket) == Ok(false)
        && (1..=c.q).all(|t| euler_characteristic(&fano, t as i64) == c.dims[t as usize - 1] + 1)
        && c.antican_dim == c.dims[c.q as usize - 1]
}
