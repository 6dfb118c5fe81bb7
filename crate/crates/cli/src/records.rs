//! Stable output records. Field order here is the on-the-wire key order.

use std::fmt;

use qfano_core::basket::SingularityPoint;
use qfano_core::reproduce::Report;
use qfano_core::wps::WpsRow;
use qfano_core::{Basket, FanoCandidate, Rational};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `dim |tL|` for `t = 1..=q`, serialized as `{"1": d1, "2": d2, ...}` in numeric order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dims(pub Vec<i64>);

impl Serialize for Dims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, d) in self.0.iter().enumerate() {
            map.serialize_entry(&(k + 1).to_string(), d)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Dims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct DimsVisitor;

        impl<'de> Visitor<'de> for DimsVisitor {
            type Value = Dims;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map with keys \"1\", \"2\", ... in order")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Dims, A::Error> {
                let mut dims = Vec::new();
                while let Some((key, value)) = map.next_entry::<String, i64>()? {
                    if key != (dims.len() + 1).to_string() {
                        return Err(de::Error::custom(format!("unexpected dims key `{key}`")));
                    }
                    dims.push(value);
                }
                Ok(Dims(dims))
            }
        }

        d.deserialize_map(DimsVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateRecord {
    pub q: u32,
    pub basket: Vec<SingularityPoint>,
    pub degree: Rational,
    pub l_cubed: Rational,
    pub kc2: Rational,
    pub dims: Dims,
    pub antican_dim: i64,
}

impl From<&FanoCandidate> for CandidateRecord {
    fn from(c: &FanoCandidate) -> Self {
        CandidateRecord {
            q: c.q,
            basket: c.basket.points().to_vec(),
            degree: c.minus_k_cubed.clone(),
            l_cubed: c.l_cubed.clone(),
            kc2: c.kc2.clone(),
            dims: Dims(c.dims.clone()),
            antican_dim: c.antican_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WpsRecord {
    pub weights: [u64; 4],
    pub degree: Rational,
    pub index: u64,
    pub antican_dim: i64,
    pub basket: Vec<SingularityPoint>,
}

impl WpsRecord {
    pub fn new(row: &WpsRow, basket: &Basket) -> Self {
        WpsRecord {
            weights: row.weights.weights(),
            degree: row.invariants.minus_k_cubed.clone(),
            index: row.invariants.index,
            antican_dim: row.invariants.antican_dim,
            basket: basket.points().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRecord {
    pub target: String,
    pub pass: bool,
    pub summary: String,
    pub diffs: Vec<String>,
}

impl From<&Report> for ReportRecord {
    fn from(r: &Report) -> Self {
        ReportRecord {
            target: r.target.name().to_string(),
            pass: r.pass,
            summary: r.summary.clone(),
            diffs: r.diffs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RrValue {
    pub t: i64,
    pub chi: Rational,
    /// `None` when `chi(tL)` is not a non-negative integer or `t < 1`.
    pub dim: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RrRecord {
    pub q: u32,
    pub basket: Vec<SingularityPoint>,
    pub degree: Rational,
    pub l_cubed: Rational,
    pub kc2: Rational,
    pub values: Vec<RrValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionRecord {
    pub basket: Vec<SingularityPoint>,
    pub feasible: bool,
}

/// Writes one compact JSON document per line.
pub fn write_json_lines<T: Serialize>(
    out: &mut dyn std::io::Write,
    records: &[T],
) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

/// CSV with a `dim1..dimQ` block, `Q` the largest index present.
pub fn candidates_csv(
    out: &mut dyn std::io::Write,
    records: &[CandidateRecord],
) -> csv::Result<()> {
    let width = records.iter().map(|r| r.dims.0.len()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "q".to_string(),
        "basket".into(),
        "degree".into(),
        "l_cubed".into(),
        "kc2".into(),
    ];
    header.extend((1..=width).map(|t| format!("dim{t}")));
    header.push("antican_dim".into());
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.q.to_string(),
            basket_text(&r.basket),
            r.degree.to_string(),
            r.l_cubed.to_string(),
            r.kc2.to_string(),
        ];
        row.extend((0..width).map(|k| r.dims.0.get(k).map(i64::to_string).unwrap_or_default()));
        row.push(r.antican_dim.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn wps_csv(out: &mut dyn std::io::Write, records: &[WpsRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "a0",
        "a1",
        "a2",
        "a3",
        "degree",
        "index",
        "antican_dim",
        "basket",
    ])?;
    for r in records {
        let mut row: Vec<String> = r.weights.iter().map(u64::to_string).collect();
        row.extend([
            r.degree.to_string(),
            r.index.to_string(),
            r.antican_dim.to_string(),
            basket_text(&r.basket),
        ]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn basket_text(points: &[SingularityPoint]) -> String {
    Basket::new(points.to_vec()).to_string()
}
