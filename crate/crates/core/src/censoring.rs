//! Right-censored samples `(Z, delta)` kept in order-statistic form.

use std::io::{Read, Write};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Observations `Z_{1:n} <= ... <= Z_{n:n}` with their concomitant indicators.
///
/// `delta[i]` is `true` when the `i`-th order statistic is an uncensored
/// lifetime (`X <= Y`). Ties in `z` keep their input order.
#[derive(Debug, Clone, PartialEq)]
pub struct CensoredSample {
    z: Vec<f64>,
    delta: Vec<bool>,
}

impl CensoredSample {
    /// Sorts `(z, delta)` pairs by `z` (stable) after validating them.
    pub fn from_pairs(mut rows: Vec<(f64, bool)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::TooSmall(rows.len()));
        }
        for (row, &(z, _)) in rows.iter().enumerate() {
            if !(z > 0.0) || z.is_infinite() {
                return Err(Error::Parse {
                    row,
                    msg: format!("observation {z} must be positive and finite"),
                });
            }
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (z, delta) = rows.into_iter().unzip();
        Ok(Self { z, delta })
    }

    /// Wraps data already in order-statistic form. Callers guarantee the invariants.
    pub(crate) fn from_sorted(z: Vec<f64>, delta: Vec<bool>) -> Self {
        debug_assert_eq!(z.len(), delta.len());
        debug_assert!(z.windows(2).all(|w| w[0] <= w[1]));
        Self { z, delta }
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn delta(&self) -> &[bool] {
        &self.delta
    }

    /// `Z_{i:n}` with the 1-based index used in the formulas.
    #[inline]
    pub fn order_stat(&self, i: usize) -> f64 {
        self.z[i - 1]
    }

    pub fn uncensored_count(&self) -> usize {
        self.delta.iter().filter(|&&d| d).count()
    }

    /// The sample with every observation multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain {
                what: "scale",
                value: c,
            });
        }
        Ok(Self {
            z: self.z.iter().map(|z| z * c).collect(),
            delta: self.delta.clone(),
        })
    }

    /// Rows `(z, delta)` in order-statistic order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, u8)> + '_ {
        self.z
            .iter()
            .zip(&self.delta)
            .map(|(&z, &d)| (z, u8::from(d)))
    }

    /// Reads the `z,delta` CSV format (header required, rows in any order).
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            z: f64,
            delta: String,
        }

        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if !headers.iter().any(|h| h == "z") || !headers.iter().any(|h| h == "delta") {
            return Err(Error::Parse {
                row: 0,
                msg: format!("header must contain `z` and `delta`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
            });
        }
        let mut rows = Vec::new();
        for (row, record) in rdr.deserialize::<Row>().enumerate() {
            let record = record.map_err(|e| Error::Parse {
                row,
                msg: e.to_string(),
            })?;
            let delta = match record.delta.as_str() {
                "0" => 0,
                "1" => 1,
                other => {
                    return Err(Error::Parse {
                        row,
                        msg: format!("delta must be 0 or 1, found `{other}`"),
                    })
                }
            };
            rows.push((record.z, delta));
        }
        load_sample(rows)
    }

    /// Writes the `z,delta` CSV format in order-statistic order.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["z", "delta"])?;
        for (z, d) in self.rows() {
            wtr.write_record([z.to_string(), d.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Observes `Z = min(X, Y)` and `delta = 1{X <= Y}` pairwise, then sorts by `Z`.
pub fn censor(x: &[f64], y: &[f64]) -> Result<CensoredSample> {
    if x.len() != y.len() {
        return Err(Error::Shape {
            left: x.len(),
            right: y.len(),
        });
    }
    for (what, values) in [("x", x), ("y", y)] {
        if let Some(&bad) = values.iter().find(|&&v| !(v > 0.0)) {
            return Err(Error::Domain { what, value: bad });
        }
    }
    let rows = x
        .iter()
        .zip(y)
        .map(|(&x, &y)| if x <= y { (x, true) } else { (y, false) })
        .collect();
    CensoredSample::from_pairs(rows)
}

/// Builds a sample from `(z, delta)` rows with `delta` in `{0, 1}`.
pub fn load_sample<I>(rows: I) -> Result<CensoredSample>
where
    I: IntoIterator<Item = (f64, u8)>,
{
    let mut pairs = Vec::new();
    for (row, (z, d)) in rows.into_iter().enumerate() {
        let delta = match d {
            0 => false,
            1 => true,
            other => {
                return Err(Error::Parse {
                    row,
                    msg: format!("delta must be 0 or 1, found {other}"),
                })
            }
        };
        pairs.push((z, delta));
    }
    CensoredSample::from_pairs(pairs)
}
