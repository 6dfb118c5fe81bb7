//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{basket_count_oracle, canonical_points, fano_strategy};
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use qfano_core::basket::{
    correction_term, local_index, parse_basket, Basket, LocalIndex, SingularityPoint,
};
use qfano_core::filters::torsion_feasible;
use qfano_core::invariants::{dim_antican_exact, euler_characteristic};
use qfano_core::rational::{rat, Rational};
use qfano_core::search::{
    classify, classify_high, classify_low, enumerate_baskets, FanoCandidate, Mode, QMax,
    SearchConfig,
};
use qfano_core::wps::scan_wps;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn describe(c: &FanoCandidate) -> String {
    format!(
        "q={} B=[{}] -K^3={} dims={:?}",
        c.q, c.basket, c.minus_k_cubed, c.dims
    )
}

fn correction_table() -> Outcome {
    // (r, b, i, c)
    let rows = [
        (2, 1, 1, "-1/8"),
        (4, 1, 1, "-5/16"),
        (5, 2, 3, "-1/5"),
        (7, 3, 2, "-2/7"),
        (7, 2, 2, "-3/7"),
        (7, 1, 2, "-5/7"),
        (8, 3, 5, "-5/32"),
    ];
    for (r, b, i, want) in rows {
        let p = SingularityPoint::new(r, b).map_err(|e| e.to_string())?;
        let got = correction_term(&p, LocalIndex(i));
        ensure(got == rat(want), || {
            format!("c for 1/{r}(1,-1,{b}) at i={i}: {got} != {want}")
        })?;
        // the listed index is that of L at q = 3
        let at_l = local_index(3, 1, &p).map_err(|e| e.to_string())?;
        ensure(at_l == LocalIndex(i), || {
            format!("local index of L at 1/{r}: {} != {i}", at_l.0)
        })?;
    }
    Ok(format!("{} values exact", rows.len()))
}

/// `(q, basket, -K^3, [(t, dim |tL|)], dim |-K|)`
type Row = (u32, &'static str, &'static str, &'static [(u32, i64)], i64);

const HIGH_ROWS: [Row; 9] = [
    (4, "5:1", "384/5", &[(1, 3), (2, 10)], 40),
    (4, "5:1,5:2", "64", &[(1, 2), (2, 8)], 33),
    (5, "2:1", "125/2", &[(1, 2), (2, 6)], 33),
    (5, "2:1,6:1", "250/3", &[(1, 2), (2, 7)], 43),
    (5, "7:2", "500/7", &[(1, 2), (2, 6)], 37),
    (5, "2:1,2:1,3:1,6:1", "125/2", &[(1, 1), (2, 5)], 32),
    (6, "5:2,7:1", "2592/35", &[(1, 1), (2, 4)], 38),
    (7, "3:1,9:2", "686/9", &[(1, 1), (2, 3)], 39),
    (7, "2:1,10:3", "343/5", &[(1, 1), (2, 3), (3, 6)], 35),
];

const LOW_ROWS: [Row; 6] = [
    (1, "2:1", "125/2", &[], 33),
    (1, "2:1", "129/2", &[], 34),
    (1, "2:1", "133/2", &[], 35),
    (1, "2:1,2:1", "63", &[], 33),
    (1, "3:1", "188/3", &[], 33),
    (2, "3:1", "200/3", &[(1, 9)], 35),
];

fn match_rows(expected: &[Row], found: &[FanoCandidate]) -> Result<(), String> {
    ensure(found.len() == expected.len(), || {
        format!(
            "{} candidates, expected {}: {}",
            found.len(),
            expected.len(),
            found.iter().map(describe).collect::<Vec<_>>().join("; ")
        )
    })?;
    for &(q, b, d, dims, antican) in expected {
        let basket = parse_basket(b).unwrap();
        let c = found
            .iter()
            .find(|c| c.q == q && c.basket == basket && c.minus_k_cubed == rat(d))
            .ok_or_else(|| format!("missing q={q} B=[{b}] -K^3={d}"))?;
        for &(t, dim) in dims {
            ensure(c.dim(t) == Some(dim), || {
                format!("{}: dim|{t}L| expected {dim}", describe(c))
            })?;
        }
        ensure(c.antican_dim == antican, || {
            format!("{}: dim|-K| expected {antican}", describe(c))
        })?;
    }
    Ok(())
}

fn high_search() -> Result<(Vec<FanoCandidate>, Duration), String> {
    let cfg = SearchConfig {
        q_min: 4,
        jobs: 1,
        ..SearchConfig::default()
    };
    let start = Instant::now();
    let found = classify_high(&cfg).map_err(|e| e.to_string())?;
    Ok((found, start.elapsed()))
}

fn high_reproduction() -> Outcome {
    let (found, elapsed) = high_search()?;
    match_rows(&HIGH_ROWS, &found)?;
    ensure(elapsed <= Duration::from_secs(300), || {
        format!("took {elapsed:?}, limit 5 min")
    })?;
    Ok(format!(
        "9 candidates, all fields equal, {:.2}s single-threaded",
        elapsed.as_secs_f64()
    ))
}

fn index_three_empty() -> Outcome {
    let cfg = SearchConfig {
        q_min: 3,
        q_max: QMax::Fixed(3),
        ..SearchConfig::default()
    };
    let found = classify_high(&cfg).map_err(|e| e.to_string())?;
    ensure(found.is_empty(), || {
        format!(
            "unexpected: {}",
            found.iter().map(describe).collect::<Vec<_>>().join("; ")
        )
    })?;
    Ok("no candidates at q=3".into())
}

fn low_reproduction() -> Outcome {
    let strict = SearchConfig {
        q_max: QMax::Fixed(3),
        ..SearchConfig::default()
    };
    let found = classify(&strict).map_err(|e| e.to_string())?;
    match_rows(&LOW_ROWS, &found).map_err(|e| format!("strict: {e}"))?;
    let q2 = found.iter().find(|c| c.q == 2).unwrap();
    ensure(q2.l_cubed == rat("25/3"), || {
        format!("q=2 L^3 = {}", q2.l_cubed)
    })?;

    let slack = SearchConfig {
        mode: Mode::PaperSlack,
        ..strict
    };
    let found = classify(&slack).map_err(|e| e.to_string())?;
    let mut rows = LOW_ROWS.to_vec();
    rows.push((1, "2:1", "137/2", &[], 36));
    match_rows(&rows, &found).map_err(|e| format!("paper-slack: {e}"))?;
    Ok("strict 6 rows; paper-slack adds B=(2) at 137/2".into())
}

fn top_degree() -> Outcome {
    let at = |d: &str| {
        classify_high(&SearchConfig {
            q_min: 4,
            min_degree: rat(d),
            ..SearchConfig::default()
        })
    };
    let top = at("250/3").map_err(|e| e.to_string())?;
    ensure(
        top.len() == 1 && top[0].q == 5 && top[0].basket == parse_basket("2:1,6:1").unwrap(),
        || {
            format!(
                "at 250/3: {}",
                top.iter().map(describe).collect::<Vec<_>>().join("; ")
            )
        },
    )?;
    let above = at("84").map_err(|e| e.to_string())?;
    ensure(above.is_empty(), || {
        format!("at 84: {} candidates", above.len())
    })?;
    Ok("250/3 -> {q=5, B=(2,6)}; 84 -> empty".into())
}

fn torsion() -> Outcome {
    let mut baskets: Vec<Basket> = HIGH_ROWS
        .iter()
        .chain(&LOW_ROWS)
        .map(|r| parse_basket(r.1).unwrap())
        .collect();
    baskets.sort();
    baskets.dedup();
    for b in &baskets {
        ensure(torsion_feasible(b) == Ok(false), || {
            format!("[{b}] reported feasible")
        })?;
    }
    let sixteen = Basket::from_pairs(&[(2, 1); 16]).map_err(|e| e.to_string())?;
    ensure(torsion_feasible(&sixteen) == Ok(true), || {
        "16 x (2,1) reported infeasible".into()
    })?;
    Ok(format!(
        "{} baskets infeasible; 16 x (2,1) feasible",
        baskets.len()
    ))
}

fn toric() -> Outcome {
    let rows = scan_wps(30);
    let weights: Vec<[u64; 4]> = rows.iter().map(|r| r.weights.weights()).collect();
    ensure(rows.len() == 7, || {
        format!("{} spaces: {weights:?}", rows.len())
    })?;
    let p1112 = rows
        .iter()
        .find(|r| r.weights.weights() == [1, 1, 1, 2])
        .ok_or("P(1,1,1,2) missing")?;
    ensure(
        p1112.invariants.minus_k_cubed == rat("125/2") && p1112.invariants.antican_dim == 33,
        || format!("P(1,1,1,2): {:?}", p1112.invariants),
    )?;
    let others = rows.iter().filter(|r| r.weights.weights() != [1, 1, 1, 1]);
    let max_deg = others
        .clone()
        .map(|r| r.invariants.minus_k_cubed.clone())
        .max();
    let max_dim = others.map(|r| r.invariants.antican_dim).max();
    ensure(max_deg == Some(rat("125/2")), || {
        format!("max degree {max_deg:?}")
    })?;
    ensure(max_dim == Some(33), || format!("max dim {max_dim:?}"))?;
    Ok("7 spaces; max (-K^3, dim|-K|) off P^3 = (125/2, 33)".into())
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 512,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&fano_strategy(), |f| {
            let q = f.q as i64;
            for t in -2 * q..=q {
                let sum = euler_characteristic(&f, t) + euler_characteristic(&f, -q - t);
                if !sum.is_zero() {
                    return Err(TestCaseError::fail(format!("antisymmetry at t={t}")));
                }
            }
            if euler_characteristic(&f, 0) != Rational::one() {
                return Err(TestCaseError::fail("chi(0) != 1"));
            }
            if euler_characteristic(&f, q) - 1 != dim_antican_exact(&f.basket, &f.minus_k_cubed) {
                return Err(TestCaseError::fail("chi(qL) - 1 != dim_antican_exact"));
            }
            Ok(())
        })
        .map_err(|e| format!("Riemann–Roch properties: {e}"))?;

    for r in 2..=30u32 {
        for b in 1..r {
            let (Ok(p), Ok(flip)) = (SingularityPoint::new(r, b), SingularityPoint::new(r, r - b))
            else {
                continue;
            };
            for i in 0..r {
                let (x, y) = (
                    correction_term(&p, LocalIndex(i)),
                    correction_term(&flip, LocalIndex(i)),
                );
                ensure(x == y, || format!("flip at r={r} b={b} i={i}: {x} != {y}"))?;
            }
        }
    }
    ensure(canonical_points(30).len() > 100, || {
        "point catalog too small".into()
    })?;

    for (n, d) in [(1, 1), (2, 1), (3, 1), (7, 2), (4, 1), (9, 2), (5, 1)] {
        let got = enumerate_baskets(&Rational::new(n as i64, d as i64)).count() as u64;
        let want = basket_count_oracle(n, d);
        ensure(got == want, || {
            format!("basket count at cap {n}/{d}: {got} != {want}")
        })?;
    }

    let cfg = |jobs| SearchConfig {
        jobs,
        ..SearchConfig::default()
    };
    let one = classify(&cfg(1)).map_err(|e| e.to_string())?;
    let eight = classify(&cfg(8)).map_err(|e| e.to_string())?;
    ensure(one == eight, || "jobs=1 and jobs=8 differ".into())?;
    let (h1, l1) = (
        classify_high(&cfg(1)).unwrap(),
        classify_low(&cfg(1)).unwrap(),
    );
    ensure(h1.len() + l1.len() == one.len(), || {
        "merged search length mismatch".into()
    })?;
    Ok("antisymmetry, chi(0), flip invariance, chi(qL) identity, counts, determinism".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("correction-term table", correction_table),
        ("index >= 4 reproduction", high_reproduction),
        ("q=3 emptiness", index_three_empty),
        ("q <= 2 reproduction", low_reproduction),
        ("top degree 250/3", top_degree),
        ("torsion", torsion),
        ("toric spaces", toric),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
