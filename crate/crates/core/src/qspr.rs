//! Boiling-point regressions on alcohol skeletons.
//!
//! A model is an affine function of the descriptors
//!
//! | term   | descriptor                          | coefficient |
//! |--------|-------------------------------------|-------------|
//! | `wio3` | cube root of the oxygen distance    | `b1`        |
//! | `n1`…`n4` | number of vertices of degree 1…4 | `c1`…`c4`   |
//! | `s2`   | sub-root of degree 2                | `b2`        |
//! | `m2`   | second Zagreb index                 | `b3`        |
//!
//! plus the intercept `b0`. Terms not marked active carry a coefficient of
//! exactly zero. Models serialize as
//! `{"b0":…,"b1":…,"b2":…,"b3":…,"c":[c1,c2,c3,c4],"active":["wio3",…]}`.
//!
//! Datasets are CSV files with header `name,skeleton,bp_celsius`. The tree
//! grammar uses commas, so a skeleton may be written unquoted: every field
//! between the first and the last is joined back together. Names containing
//! commas must be quoted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::{degree_counts, oxygen_distance, second_zagreb, subroot_indicator, DegreeCostVector};
use crate::tree::{PendentRootedTree, TreeEncoding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Wio3,
    N1,
    N2,
    N3,
    N4,
    S2,
    M2,
}

impl Term {
    pub const ALL: [Term; 7] = [Term::Wio3, Term::N1, Term::N2, Term::N3, Term::N4, Term::S2, Term::M2];

    pub fn name(self) -> &'static str {
        match self {
            Term::Wio3 => "wio3",
            Term::N1 => "n1",
            Term::N2 => "n2",
            Term::N3 => "n3",
            Term::N4 => "n4",
            Term::S2 => "s2",
            Term::M2 => "m2",
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Term::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown regression term {s:?}")))
    }
}

/// Parses a comma-separated term list such as `wio3,n2,n3,s2,m2`.
pub fn parse_terms(list: &str) -> Result<BTreeSet<Term>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Term::from_str)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelJson", into = "ModelJson")]
pub struct RegressionModel {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub c: DegreeCostVector,
    pub active: BTreeSet<Term>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    b0: f64,
    b1: f64,
    b2: f64,
    b3: f64,
    c: [f64; 4],
    active: Vec<Term>,
}

impl TryFrom<ModelJson> for RegressionModel {
    type Error = Error;

    fn try_from(j: ModelJson) -> Result<Self> {
        let m = RegressionModel {
            b0: j.b0,
            b1: j.b1,
            b2: j.b2,
            b3: j.b3,
            c: DegreeCostVector::try_from(j.c)?,
            active: j.active.into_iter().collect(),
        };
        m.validate()?;
        Ok(m)
    }
}

impl From<RegressionModel> for ModelJson {
    fn from(m: RegressionModel) -> Self {
        ModelJson {
            b0: m.b0,
            b1: m.b1,
            b2: m.b2,
            b3: m.b3,
            c: m.c.as_array(),
            active: m.active.into_iter().collect(),
        }
    }
}

impl RegressionModel {
    fn from_parts(b: [f64; 4], c: [f64; 4], active: &[Term]) -> Self {
        RegressionModel {
            b0: b[0],
            b1: b[1],
            b2: b[2],
            b3: b[3],
            c: DegreeCostVector {
                c1: c[0],
                c2: c[1],
                c3: c[2],
                c4: c[3],
            },
            active: active.iter().copied().collect(),
        }
    }

    /// The basic regression with the distance, degree-2/3 counts, sub-root
    /// and second Zagreb terms.
    pub fn basic() -> Self {
        Self::from_parts(
            [35.245, 12.233, 9.170, 1.486],
            [0.0, 9.514, 9.380, 0.0],
            &[Term::Wio3, Term::N2, Term::N3, Term::S2, Term::M2],
        )
    }

    /// The regression without the distance term.
    pub fn regression_i() -> Self {
        Self::from_parts(
            [50.626, 0.0, 11.295, 1.000],
            [0.0, 14.534, 20.172, 17.015],
            &[Term::N2, Term::N3, Term::N4, Term::S2, Term::M2],
        )
    }

    /// The regression without the second Zagreb term.
    pub fn regression_ii() -> Self {
        Self::from_parts(
            [44.134, 3.851, 10.980, 0.0],
            [0.0, 17.727, 29.673, 36.470],
            &[Term::Wio3, Term::N2, Term::N3, Term::N4, Term::S2],
        )
    }

    /// Preset by name: `basic`/`bp0`, `reg1`/`bp1`, `reg2`/`bp2`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "basic" | "bp0" => Ok(Self::basic()),
            "reg1" | "bp1" => Ok(Self::regression_i()),
            "reg2" | "bp2" => Ok(Self::regression_ii()),
            other => Err(Error::InvalidArgument(format!(
                "unknown model {other:?}; expected basic, reg1 or reg2"
            ))),
        }
    }

    pub fn coefficient(&self, term: Term) -> f64 {
        match term {
            Term::Wio3 => self.b1,
            Term::N1 => self.c.c1,
            Term::N2 => self.c.c2,
            Term::N3 => self.c.c3,
            Term::N4 => self.c.c4,
            Term::S2 => self.b2,
            Term::M2 => self.b3,
        }
    }

    fn coefficient_mut(&mut self, term: Term) -> &mut f64 {
        match term {
            Term::Wio3 => &mut self.b1,
            Term::N1 => &mut self.c.c1,
            Term::N2 => &mut self.c.c2,
            Term::N3 => &mut self.c.c3,
            Term::N4 => &mut self.c.c4,
            Term::S2 => &mut self.b2,
            Term::M2 => &mut self.b3,
        }
    }

    /// Finite coefficients, and exactly zero for every inactive term.
    pub fn validate(&self) -> Result<()> {
        if !self.b0.is_finite() {
            return Err(Error::InvalidArgument("intercept is not finite".into()));
        }
        for t in Term::ALL {
            let v = self.coefficient(t);
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient of {t} is not finite")));
            }
            if !self.active.contains(&t) && v != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "term {t} is inactive but has coefficient {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, d: &DescriptorVector) -> f64 {
        self.b0
            + self
                .active
                .iter()
                .map(|&t| self.coefficient(t) * d.value(t))
                .sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptorVector {
    pub wio: u64,
    pub wio_cuberoot: f64,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
    pub s2: u8,
    pub m2: u64,
}

impl DescriptorVector {
    pub fn value(&self, term: Term) -> f64 {
        match term {
            Term::Wio3 => self.wio_cuberoot,
            Term::N1 => self.n1 as f64,
            Term::N2 => self.n2 as f64,
            Term::N3 => self.n3 as f64,
            Term::N4 => self.n4 as f64,
            Term::S2 => self.s2 as f64,
            Term::M2 => self.m2 as f64,
        }
    }
}

pub fn descriptors(t: &PendentRootedTree) -> Result<DescriptorVector> {
    if t.order() < 3 {
        return Err(Error::OrderOutOfRange {
            order: t.order(),
            min: 3,
            max: usize::MAX,
        });
    }
    let counts = degree_counts(t)?;
    let wio = oxygen_distance(t);
    Ok(DescriptorVector {
        wio,
        wio_cuberoot: (wio as f64).cbrt(),
        n1: counts.n1,
        n2: counts.n2,
        n3: counts.n3,
        n4: counts.n4,
        s2: subroot_indicator(t, 2)?,
        m2: second_zagreb(t),
    })
}

/// Predicted boiling point in °C.
pub fn predict(m: &RegressionModel, t: &PendentRootedTree) -> Result<f64> {
    Ok(m.evaluate(&descriptors(t)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataRecord {
    pub name: String,
    pub skeleton: TreeEncoding,
    pub bp_celsius: f64,
}

impl DataRecord {
    pub fn new(name: impl Into<String>, skeleton: &str, bp_celsius: f64) -> Result<Self> {
        let t = PendentRootedTree::parse(skeleton)?;
        if t.order() < 3 {
            return Err(Error::OrderOutOfRange {
                order: t.order(),
                min: 3,
                max: usize::MAX,
            });
        }
        Ok(DataRecord {
            name: name.into(),
            skeleton: TreeEncoding::new(skeleton),
            bp_celsius,
        })
    }

    pub fn tree(&self) -> PendentRootedTree {
        PendentRootedTree::parse(self.skeleton.as_str()).expect("validated on construction")
    }
}

/// Least-squares fit of the intercept and the `active` coefficients.
pub fn fit(data: &[DataRecord], active: &BTreeSet<Term>) -> Result<RegressionModel> {
    let terms: Vec<Term> = active.iter().copied().collect();
    let p = terms.len() + 1;
    if data.len() <= p {
        return Err(Error::InsufficientData {
            records: data.len(),
            coefficients: p,
        });
    }
    let rows: Vec<DescriptorVector> = data.iter().map(|r| descriptors(&r.tree())).collect::<Result<_>>()?;
    let a = DMatrix::from_fn(data.len(), p, |i, j| if j == 0 { 1.0 } else { rows[i].value(terms[j - 1]) });
    let y = DVector::from_iterator(data.len(), data.iter().map(|r| r.bp_celsius));

    let dependent = dependent_columns(&a);
    if !dependent.is_empty() {
        let names = dependent
            .into_iter()
            .map(|j| if j == 0 { "intercept".to_string() } else { terms[j - 1].to_string() })
            .collect();
        return Err(Error::RankDeficient { columns: names });
    }

    let qr = a.qr();
    let qty = qr.q().transpose() * &y;
    let x = qr
        .r()
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::RankDeficient { columns: Vec::new() })?;

    let mut model = RegressionModel {
        b0: x[0],
        b1: 0.0,
        b2: 0.0,
        b3: 0.0,
        c: DegreeCostVector::default(),
        active: active.clone(),
    };
    for (j, &t) in terms.iter().enumerate() {
        *model.coefficient_mut(t) = x[j + 1];
    }
    Ok(model)
}

fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-9 * max).count()
}

/// Columns that add nothing to the span of the columns before them.
fn dependent_columns(a: &DMatrix<f64>) -> Vec<usize> {
    if numerical_rank(a) == a.ncols() {
        return Vec::new();
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut dependent = Vec::new();
    for j in 0..a.ncols() {
        let mut cols = kept.clone();
        cols.push(j);
        let sub = a.select_columns(&cols);
        if numerical_rank(&sub) == cols.len() {
            kept.push(j);
        } else {
            dependent.push(j);
        }
    }
    dependent
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionStats {
    /// Pearson correlation of predictions with observations; 0 when the
    /// predictions are constant.
    pub correlation: f64,
    /// `sqrt(Σ residual² / (N − 1))` in °C.
    pub sd: f64,
    pub records: usize,
}

pub fn precision(m: &RegressionModel, data: &[DataRecord]) -> Result<PrecisionStats> {
    if data.len() < 2 {
        return Err(Error::InsufficientData {
            records: data.len(),
            coefficients: 2,
        });
    }
    let obs: Vec<f64> = data.iter().map(|r| r.bp_celsius).collect();
    let pred: Vec<f64> = data.iter().map(|r| predict(m, &r.tree())).collect::<Result<_>>()?;
    let n = obs.len() as f64;
    let mean_o = obs.iter().sum::<f64>() / n;
    let mean_p = pred.iter().sum::<f64>() / n;
    let so: f64 = obs.iter().map(|o| (o - mean_o).powi(2)).sum();
    if so == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let sp: f64 = pred.iter().map(|p| (p - mean_p).powi(2)).sum();
    let cov: f64 = obs.iter().zip(&pred).map(|(o, p)| (o - mean_o) * (p - mean_p)).sum();
    let correlation = if sp == 0.0 {
        0.0
    } else {
        (cov / (so.sqrt() * sp.sqrt())).clamp(-1.0, 1.0)
    };
    let ss: f64 = obs.iter().zip(&pred).map(|(o, p)| (p - o).powi(2)).sum();
    Ok(PrecisionStats {
        correlation,
        sd: (ss / (n - 1.0)).sqrt(),
        records: data.len(),
    })
}

const HEADER: [&str; 3] = ["name", "skeleton", "bp_celsius"];

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDataset {
    pub records: Vec<DataRecord>,
    /// Non-fatal findings such as repeated skeletons.
    pub warnings: Vec<String>,
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<LoadedDataset> {
    let mut text = String::new();
    std::fs::File::open(path.as_ref())?.read_to_string(&mut text)?;
    parse_dataset(&text)
}

/// 1-based column of `needle` in `line`, searching from byte `from`.
fn column_of(line: &str, needle: &str, from: usize) -> usize {
    line.get(from..)
        .and_then(|rest| rest.find(needle))
        .map(|i| from + i + 1)
        .unwrap_or(1)
}

pub fn parse_dataset(text: &str) -> Result<LoadedDataset> {
    let lines: Vec<&str> = text.lines().collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: BTreeMap<TreeEncoding, (usize, String)> = BTreeMap::new();
    let mut header_seen = false;
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::Dataset {
                line,
                column: 1,
                message: e.to_string(),
            }
        })?;
        let line_no = row.position().map(|p| p.line() as usize).unwrap_or(0);
        let raw = lines.get(line_no.saturating_sub(1)).copied().unwrap_or("");
        if row.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if !header_seen {
            let fields: Vec<&str> = row.iter().map(str::trim).collect();
            if fields != HEADER {
                return Err(Error::Dataset {
                    line: line_no,
                    column: 1,
                    message: format!("expected header {:?}, found {:?}", HEADER.join(","), raw),
                });
            }
            header_seen = true;
            continue;
        }
        if row.len() < 3 {
            return Err(Error::Dataset {
                line: line_no,
                column: 1,
                message: "expected three fields: name, skeleton, bp_celsius".into(),
            });
        }
        let name = row[0].trim().to_string();
        let last = row[row.len() - 1].trim();
        let skeleton: String = (1..row.len() - 1)
            .map(|i| &row[i])
            .collect::<Vec<_>>()
            .join(",")
            .trim()
            .to_string();
        let skel_col = column_of(raw, &skeleton, 0);
        let bp: f64 = last.parse().map_err(|_| Error::Dataset {
            line: line_no,
            column: raw.rfind(last).map(|i| i + 1).unwrap_or(1),
            message: format!("boiling point {last:?} is not a number"),
        })?;
        if !bp.is_finite() {
            return Err(Error::Dataset {
                line: line_no,
                column: raw.rfind(last).map(|i| i + 1).unwrap_or(1),
                message: format!("boiling point {last:?} is not finite"),
            });
        }
        let record = DataRecord::new(name.clone(), &skeleton, bp).map_err(|e| match e {
            Error::Syntax { position, message } => Error::Dataset {
                line: line_no,
                column: skel_col + position,
                message,
            },
            other => Error::Dataset {
                line: line_no,
                column: skel_col,
                message: other.to_string(),
            },
        })?;
        let canonical = record.tree().canonical_form();
        if let Some((prev_line, prev_name)) = seen.get(&canonical) {
            let w = format!(
                "line {line_no}: skeleton of {name:?} ({canonical}) repeats line {prev_line} ({prev_name:?}); both kept"
            );
            log::warn!("{w}");
            warnings.push(w);
        } else {
            seen.insert(canonical, (line_no, name));
        }
        records.push(record);
    }
    if !header_seen {
        return Err(Error::Dataset {
            line: 1,
            column: 1,
            message: "missing header".into(),
        });
    }
    Ok(LoadedDataset { records, warnings })
}

pub fn save_dataset(path: impl AsRef<Path>, records: &[DataRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref()).map_err(|e| Error::Io(e.to_string()))?;
    w.write_record(HEADER).map_err(|e| Error::Io(e.to_string()))?;
    for r in records {
        w.write_record([r.name.as_str(), r.skeleton.as_str(), &r.bp_celsius.to_string()])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
