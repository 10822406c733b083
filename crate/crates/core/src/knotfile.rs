//! JSON knot descriptions: named matrices, knots (sums or satellites) and
//! search configuration. See `data/knotfile.schema.json`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::etacalc::{AxisClasses, Orbit, SatelliteKnot, Stage};
use crate::matrix::Matrix;
use crate::obstruct::Config;
use crate::polyring::LaurentPoly;
use crate::seifert::{metabolic_realization, realization_metabolizer, SeifertMatrix, SeifertSum, SumPart};

pub const BUNDLED: &str = include_str!("../data/bundled_knots.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    matrices: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    knots: BTreeMap<String, RawKnot>,
    #[serde(default)]
    config: RawConfig,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMatrix {
    Rows(Vec<Vec<i64>>),
    Realize { realize: Vec<i64> },
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawKnot {
    Matrix(String),
    Sum(Vec<RawPart>),
    Satellite(RawSatellite),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    matrix: String,
    #[serde(default = "one")]
    copies: u64,
    #[serde(default)]
    negate: bool,
}

fn one() -> u64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSatellite {
    orbit: RawOrbit,
    #[serde(default)]
    stages: Vec<RawStage>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    matrix: String,
    #[serde(default)]
    ribbon: bool,
    #[serde(default)]
    slice: bool,
    #[serde(default)]
    metabolizer_family: Option<RawFamily>,
    #[serde(default)]
    eta_bound: Option<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawFamily {
    Vectors(Vec<Vec<i64>>),
    Keyword(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStage {
    /// Name of a matrix or sum knot.
    companion: String,
    #[serde(default = "one")]
    copies: u64,
    axis: BTreeMap<String, RawAxis>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAxis {
    List(Vec<Vec<i64>>),
    Keyword(String),
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    max_k: Option<u32>,
    max_group: Option<u128>,
    max_order: Option<u64>,
    max_root: Option<u64>,
    tolerance: Option<f64>,
}

#[derive(Clone, Debug)]
pub enum Knot {
    Sum(SeifertSum),
    Satellite(SatelliteKnot),
}

impl Knot {
    /// Seifert data of the knot. A satellite along axes in the second
    /// derived subgroup shares its Seifert form with the orbit.
    pub fn seifert_sum(&self, name: &str) -> SeifertSum {
        match self {
            Knot::Sum(s) => s.clone(),
            Knot::Satellite(s) => SeifertSum::single(name, s.orbit.matrix.clone()),
        }
    }

    pub fn satellite(&self) -> Option<&SatelliteKnot> {
        match self {
            Knot::Satellite(s) => Some(s),
            Knot::Sum(_) => None,
        }
    }

    /// The knot as a satellite with no stages when it is a single matrix.
    pub fn as_satellite(&self) -> Result<SatelliteKnot> {
        match self {
            Knot::Satellite(s) => Ok(s.clone()),
            Knot::Sum(s) => Ok(SatelliteKnot::new(Orbit::plain(s.materialize()), Vec::new())),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct KnotFile {
    pub matrices: BTreeMap<String, SeifertMatrix>,
    pub knots: BTreeMap<String, Knot>,
    pub config: Config,
    pub tolerance: Option<f64>,
}

impl KnotFile {
    pub fn bundled() -> Result<Self> {
        Self::parse(BUNDLED)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::default().merge(text)
    }

    /// Adds the entries of `text`, which may refer to names already loaded.
    pub fn merge(mut self, text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        for (name, m) in raw.matrices {
            let a = match m {
                RawMatrix::Rows(rows) => {
                    if let Some(r) = rows.iter().find(|r| r.len() != rows.len()) {
                        return Err(Error::InvalidSeifert {
                            name: Some(name),
                            reason: format!("row of length {} in a {}-row matrix", r.len(), rows.len()),
                        });
                    }
                    SeifertMatrix::named(Matrix::from_rows(&rows), Some(&name))?
                }
                RawMatrix::Realize { realize } => metabolic_realization(&LaurentPoly::from_i64s(&realize, 0))
                    .map_err(|e| Error::InvalidSeifert { name: Some(name.clone()), reason: e.to_string() })?,
            };
            self.matrices.insert(name, a);
        }
        // sums first so satellites can name them as companions
        let (sats, sums): (Vec<_>, Vec<_>) =
            raw.knots.into_iter().partition(|(_, k)| matches!(k, RawKnot::Satellite(_)));
        for (name, k) in sums.into_iter().chain(sats) {
            let knot = self.resolve(&name, k)?;
            self.knots.insert(name, knot);
        }
        let c = raw.config;
        if let Some(v) = c.max_k {
            self.config.max_k = v;
        }
        if let Some(v) = c.max_group {
            self.config.max_group = v;
        }
        if let Some(v) = c.max_order {
            self.config.max_order = v;
        }
        if let Some(v) = c.max_root {
            self.config.max_root = v;
        }
        if c.tolerance.is_some() {
            self.tolerance = c.tolerance;
        }
        Ok(self)
    }

    fn matrix(&self, knot: &str, name: &str) -> Result<&SeifertMatrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::Parse(format!("knot '{knot}': unknown matrix '{name}'")))
    }

    fn resolve(&self, name: &str, k: RawKnot) -> Result<Knot> {
        match k {
            RawKnot::Matrix(m) => Ok(Knot::Sum(SeifertSum::single(&m, self.matrix(name, &m)?.clone()))),
            RawKnot::Sum(parts) => {
                let parts = parts
                    .into_iter()
                    .map(|p| {
                        Ok(SumPart {
                            matrix: self.matrix(name, &p.matrix)?.clone(),
                            label: p.matrix,
                            copies: p.copies,
                            negate: p.negate,
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(Knot::Sum(SeifertSum::new(parts)))
            }
            RawKnot::Satellite(s) => {
                let matrix = self.matrix(name, &s.orbit.matrix)?.clone();
                let metabolizer_family = match s.orbit.metabolizer_family {
                    None => None,
                    Some(RawFamily::Vectors(v)) => Some(v),
                    Some(RawFamily::Keyword(w)) if w == "realization" => Some(realization_metabolizer(matrix.genus())),
                    Some(RawFamily::Keyword(w)) => {
                        return Err(Error::Parse(format!("knot '{name}': unknown metabolizer family '{w}'")))
                    }
                };
                let orbit = Orbit {
                    matrix,
                    ribbon: s.orbit.ribbon,
                    slice: s.orbit.slice || s.orbit.ribbon,
                    metabolizer_family,
                    eta_bound: s.orbit.eta_bound,
                };
                let mut stages = Vec::new();
                for st in s.stages {
                    let companion = match self.knots.get(&st.companion) {
                        Some(Knot::Sum(c)) => c.clone(),
                        Some(Knot::Satellite(_)) => {
                            return Err(Error::Parse(format!(
                                "knot '{name}': companion '{}' must be a matrix or a sum",
                                st.companion
                            )))
                        }
                        None => SeifertSum::single(&st.companion, self.matrix(name, &st.companion)?.clone()),
                    };
                    let mut axis = BTreeMap::new();
                    for (k, a) in st.axis {
                        let k: u32 = k
                            .parse()
                            .map_err(|_| Error::Parse(format!("knot '{name}': axis level '{k}' is not an integer")))?;
                        let a = match a {
                            RawAxis::List(v) => AxisClasses::List(v),
                            RawAxis::Keyword(w) if w == "all" => AxisClasses::All,
                            RawAxis::Keyword(w) => {
                                return Err(Error::Parse(format!("knot '{name}': unknown axis keyword '{w}'")))
                            }
                        };
                        axis.insert(k, a);
                    }
                    stages.push(Stage { companion: companion.times(st.copies), axis });
                }
                Ok(Knot::Satellite(SatelliteKnot::new(orbit, stages)))
            }
        }
    }

    pub fn knot(&self, name: &str) -> Result<&Knot> {
        self.knots.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.knots.keys().map(String::as_str).collect();
            Error::Parse(format!("unknown knot '{name}' (known: {})", known.join(", ")))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::library::*;

    #[test]
    fn bundled_library_loads() {
        let f = KnotFile::bundled().unwrap();
        assert_eq!(f.matrices["B1"], b1());
        assert_eq!(f.matrices["B3"], b3());
        assert_eq!(f.matrices["PHI30SQ"], phi30_squared());
        match f.knot("D").unwrap() {
            Knot::Sum(s) => assert_eq!(*s, d_sum()),
            _ => panic!(),
        }
        let ex4 = f.knot("example4").unwrap().satellite().unwrap();
        let reference = crate::obstruct::example_four_satellite().unwrap();
        assert_eq!(ex4.stages[0].axis, reference.stages[0].axis);
        assert_eq!(ex4.orbit.metabolizer_family, reference.orbit.metabolizer_family);
    }

    #[test]
    fn rejects_bad_input() {
        let e = KnotFile::parse(r#"{"matrices": {"bad": [[1, 0], [0, 1]]}}"#).unwrap_err();
        assert!(e.to_string().contains("bad"), "{e}");
        let e = KnotFile::parse("{\n  \"matrices\": {\n    \"x\": [[1,1],[0,1]],\n  }\n}").unwrap_err();
        assert!(e.to_string().contains("line 4"), "{e}");
        let e = KnotFile::parse(r#"{"knots": {"k": {"matrix": "nope"}}}"#).unwrap_err();
        assert!(e.to_string().contains("nope"));
    }

    #[test]
    fn missing_axis_surfaces_in_the_sweep() {
        let f = KnotFile::bundled()
            .unwrap()
            .merge(r#"{"knots": {"s": {"satellite": {"orbit": {"matrix": "PSQ"}, "stages": [{"companion": "B2", "axis": {"2": [[1,0,0,0]]}}]}}}}"#)
            .unwrap();
        let s = f.knot("s").unwrap().as_satellite().unwrap();
        let err = crate::obstruct::se_sweep(&s, 4, crate::obstruct::Mode::Slice, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::MissingAxis { stage: 0, k: 4 }));
    }
}
