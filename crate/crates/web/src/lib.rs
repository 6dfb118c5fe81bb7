//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and run natively too.

use qfano_core::basket::SingularityPoint;
use qfano_core::invariants::euler_characteristic;
use qfano_core::search::{classify, classify_high};
use qfano_core::wps::{scan_wps, wps_basket};
use qfano_core::{parse_basket, Mode, NumericalFano, QMax, Rational, SearchConfig};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Wider ranges only slow the page down.
pub const MAX_T_SPAN: i64 = 200;
pub const MAX_WPS_WEIGHT: u64 = 60;

#[derive(Serialize)]
struct RrPoint {
    t: i64,
    chi: String,
    chi_value: f64,
    dim: Option<i64>,
}

#[derive(Serialize)]
struct RrTable {
    q: u32,
    basket: String,
    degree: String,
    l_cubed: String,
    kc2: String,
    points: Vec<RrPoint>,
}

#[derive(Serialize)]
struct Candidate {
    q: u32,
    basket: Vec<SingularityPoint>,
    label: String,
    degree: String,
    degree_value: f64,
    l_cubed: String,
    kc2: String,
    dims: Vec<i64>,
    antican_dim: i64,
}

#[derive(Serialize)]
struct Space {
    weights: [u64; 4],
    degree: String,
    degree_value: f64,
    index: u64,
    antican_dim: i64,
    basket: String,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn optional_rational(s: &str) -> Result<Option<Rational>, String> {
    let s = s.trim();
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse()
            .map(Some)
            .map_err(|e: qfano_core::Error| e.to_string())
    }
}

/// `chi(tL)` and `dim |tL|` for `t_min <= t <= t_max`. `l_cubed` may be empty
/// when `q >= 3`.
pub fn rr_json(
    basket: &str,
    q: u32,
    l_cubed: &str,
    t_min: i64,
    t_max: i64,
) -> Result<String, String> {
    if t_max < t_min || t_max - t_min > MAX_T_SPAN {
        return Err(format!(
            "t range must be non-empty and at most {MAX_T_SPAN} wide"
        ));
    }
    let basket = parse_basket(basket).map_err(|e| e.to_string())?;
    let fano = match optional_rational(l_cubed)? {
        Some(l3) => NumericalFano::new(basket, q, l3),
        None if q >= 3 => NumericalFano::from_vanishing(basket, q),
        None => return Err("q <= 2 needs L^3".into()),
    }
    .map_err(|e| e.to_string())?;
    let points = (t_min..=t_max)
        .map(|t| {
            let chi = euler_characteristic(&fano, t);
            let dim = (t >= 1 && chi.is_integer() && !chi.is_negative())
                .then(|| chi.to_i64().map(|c| c - 1))
                .flatten();
            RrPoint {
                t,
                chi_value: chi.to_f64(),
                chi: chi.to_string(),
                dim,
            }
        })
        .collect();
    to_json(&RrTable {
        q: fano.q,
        basket: fano.basket.to_string(),
        degree: fano.minus_k_cubed.to_string(),
        l_cubed: fano.l_cubed.to_string(),
        kc2: fano.kc2.to_string(),
        points,
    })
}

/// Terminal weighted projective 3-spaces with weights up to `max_weight`.
pub fn wps_json(max_weight: u64) -> Result<String, String> {
    if max_weight > MAX_WPS_WEIGHT {
        return Err(format!("max weight is limited to {MAX_WPS_WEIGHT} here"));
    }
    let spaces = scan_wps(max_weight)
        .into_iter()
        .map(|row| {
            let basket = wps_basket(&row.weights).map_err(|e| e.to_string())?;
            Ok(Space {
                weights: row.weights.weights(),
                degree_value: row.invariants.minus_k_cubed.to_f64(),
                degree: row.invariants.minus_k_cubed.to_string(),
                index: row.invariants.index,
                antican_dim: row.invariants.antican_dim,
                basket: basket.to_string(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    to_json(&spaces)
}

/// Candidates with `-K^3 >= min_degree` and `q >= q_min`, single-threaded.
pub fn search_json(min_degree: &str, q_min: u32, paper_slack: bool) -> Result<String, String> {
    let min_degree: Rational = min_degree
        .trim()
        .parse()
        .map_err(|e: qfano_core::Error| e.to_string())?;
    let cfg = SearchConfig {
        min_degree,
        q_min,
        q_max: QMax::Auto,
        mode: if paper_slack {
            Mode::PaperSlack
        } else {
            Mode::Strict
        },
        jobs: 1,
        ..SearchConfig::default()
    };
    let found = if q_min >= 3 {
        classify_high(&cfg)
    } else {
        classify(&cfg)
    }
    .map_err(|e| e.to_string())?;
    let out: Vec<Candidate> = found
        .iter()
        .map(|c| Candidate {
            q: c.q,
            basket: c.basket.points().to_vec(),
            label: c.basket.index_label(),
            degree: c.minus_k_cubed.to_string(),
            degree_value: c.minus_k_cubed.to_f64(),
            l_cubed: c.l_cubed.to_string(),
            kc2: c.kc2.to_string(),
            dims: c.dims.clone(),
            antican_dim: c.antican_dim,
        })
        .collect();
    to_json(&out)
}

#[wasm_bindgen]
pub fn rr_table(
    basket: &str,
    q: u32,
    l_cubed: &str,
    t_min: i32,
    t_max: i32,
) -> Result<String, JsError> {
    rr_json(basket, q, l_cubed, t_min as i64, t_max as i64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn wps_scan(max_weight: u32) -> Result<String, JsError> {
    wps_json(max_weight as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn search(min_degree: &str, q_min: u32, paper_slack: bool) -> Result<String, JsError> {
    search_json(min_degree, q_min, paper_slack).map_err(|e| JsError::new(&e))
}
