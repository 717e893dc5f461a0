//! JSON file formats for fans and dimension functions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use fanlab_core::exactlin::Int;
use fanlab_core::fan::Fan;
use fanlab_core::polymat::{subset_label, DimFunction, MAX_N};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `{"dim": d, "rays": [[int, ...], ...], "cones": [[idx, ...], ...]}` with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> FanFile {
        let rays = fan
            .rays()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("ray entries fit in i64")).collect())
            .collect();
        FanFile { dim: fan.dim(), rays, cones: fan.max_cones().to_vec() }
    }

    pub fn to_fan(&self) -> Result<Fan, CliError> {
        let rays = self.rays.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Fan::new(self.dim, rays, self.cones.clone()).map_err(|e| CliError::Schema(e.to_string()))
    }
}

/// Subset values keyed by sorted 1-based digit strings, or as `[[elements], value]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Values {
    Labels(BTreeMap<String, i64>),
    Pairs(Vec<(Vec<usize>, i64)>),
}

/// `{"N": n, "b": {"1": ..., "12": ..., ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimFunctionFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub b: Values,
}

impl DimFunctionFile {
    pub fn from_dimfn(b: &DimFunction) -> DimFunctionFile {
        let n = b.n();
        let mut out = Vec::new();
        for m in 1u32..1 << n {
            let elems: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect();
            out.push((elems, b.get(m)));
        }
        let b = if n <= 9 {
            Values::Labels(out.into_iter().map(|(e, v)| (e.iter().map(|x| x.to_string()).collect(), v)).collect())
        } else {
            Values::Pairs(out)
        };
        DimFunctionFile { n, b }
    }

    pub fn to_dimfn(&self) -> Result<DimFunction, CliError> {
        let n = self.n;
        if n == 0 || n > MAX_N {
            return Err(CliError::Schema(format!("N = {n} is outside 1..={MAX_N}")));
        }
        let mut values = vec![None; 1 << n];
        values[0] = Some(0);
        let mut put = |elems: Vec<usize>, v: i64, key: &str| -> Result<(), CliError> {
            let mut e = elems;
            e.sort_unstable();
            if e.is_empty() || e.windows(2).any(|w| w[0] == w[1]) || e.iter().any(|&x| x == 0 || x > n) {
                return Err(CliError::Schema(format!("bad subset key {key:?}")));
            }
            let m = e.iter().fold(0usize, |m, &x| m | 1 << (x - 1));
            if values[m].replace(v).is_some() {
                return Err(CliError::Schema(format!("subset {key:?} given twice")));
            }
            Ok(())
        };
        match &self.b {
            Values::Labels(map) => {
                if n > 9 {
                    return Err(CliError::Schema("digit labels need N <= 9; use element lists".into()));
                }
                for (k, &v) in map {
                    let elems = k
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| CliError::Schema(format!("bad subset key {k:?}")))?;
                    put(elems, v, k)?;
                }
            }
            Values::Pairs(pairs) => {
                for (e, v) in pairs {
                    put(e.clone(), *v, &format!("{e:?}"))?;
                }
            }
        }
        let values: Vec<i64> = values
            .iter()
            .enumerate()
            .map(|(m, v)| v.ok_or_else(|| CliError::Schema(format!("missing value for subset {}", subset_label(m as u32)))))
            .collect::<Result<_, _>>()?;
        Ok(DimFunction::new(n, values)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

pub fn read_fan(path: &Path) -> Result<Fan, CliError> {
    let file: FanFile =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    file.to_fan()
}

pub fn read_dimfn(path: &Path) -> Result<DimFunction, CliError> {
    let file: DimFunctionFile =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    file.to_dimfn()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    fs::write(path, s).map_err(|e| CliError::Io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimfn_round_trip() {
        let text = r#"{"N": 2, "b": {"1": 1, "2": 2, "12": 3}}"#;
        let f: DimFunctionFile = serde_json::from_str(text).unwrap();
        let b = f.to_dimfn().unwrap();
        assert_eq!(b.values(), &[0, 1, 2, 3]);
        assert_eq!(DimFunctionFile::from_dimfn(&b), f);
        let pairs: DimFunctionFile = serde_json::from_str(r#"{"N": 2, "b": [[[1], 1], [[2], 2], [[2, 1], 3]]}"#).unwrap();
        assert_eq!(pairs.to_dimfn().unwrap(), b);
    }

    #[test]
    fn dimfn_schema_errors() {
        for text in [
            r#"{"N": 2, "b": {"1": 1, "12": 3}}"#,
            r#"{"N": 2, "b": {"1": 1, "2": 1, "3": 1, "12": 3}}"#,
            r#"{"N": 2, "b": {"1": 1, "2": 1, "21": 2, "12": 3}}"#,
        ] {
            let f: DimFunctionFile = serde_json::from_str(text).unwrap();
            assert!(matches!(f.to_dimfn(), Err(CliError::Schema(_))), "{text}");
        }
        let f: DimFunctionFile = serde_json::from_str(r#"{"N": 2, "b": {"1": -1, "2": 1, "12": 3}}"#).unwrap();
        assert!(matches!(f.to_dimfn(), Err(CliError::Domain(_))));
    }
}
