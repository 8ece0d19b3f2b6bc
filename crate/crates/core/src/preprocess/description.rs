// Copyright 2026 The apriori-goal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Column descriptions: what each table column is and how it is binarized.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Target,
    Continuous,
    Categorical,
}

/// Category labels for categorical and target columns, bin boundaries for
/// continuous ones.
#[derive(Clone, Debug, PartialEq)]
pub enum ColumnValues {
    Labels(Vec<String>),
    Boundaries(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnDescriptor {
    pub name: String,
    pub kind: ColumnKind,
    pub short_name: String,
    pub class_count: usize,
    pub values: ColumnValues,
    pub full_name: String,
}

impl ColumnDescriptor {
    pub fn labels(&self) -> Option<&[String]> {
        match &self.values {
            ColumnValues::Labels(l) => Some(l),
            ColumnValues::Boundaries(_) => None,
        }
    }

    pub fn boundaries(&self) -> Option<&[f64]> {
        match &self.values {
            ColumnValues::Boundaries(b) => Some(b),
            ColumnValues::Labels(_) => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.class_count < 2 {
            return Err(Error::ClassCount(self.name.clone()));
        }
        match &self.values {
            ColumnValues::Boundaries(b) => {
                if b.len() + 1 != self.class_count {
                    return Err(Error::BoundaryCount(self.name.clone(), self.class_count - 1, b.len()));
                }
                if b.iter().any(|v| !v.is_finite()) || b.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::NonAscendingBoundaries(self.name.clone()));
                }
            }
            ColumnValues::Labels(labels) => {
                let distinct: HashSet<&String> = labels.iter().collect();
                if labels.len() != self.class_count || distinct.len() != labels.len() {
                    return Err(Error::LabelCount(self.name.clone(), self.class_count, distinct.len()));
                }
            }
        }
        Ok(())
    }
}

/// A validated table description, columns in table order.
#[derive(Clone, Debug, PartialEq)]
pub struct Description {
    columns: Vec<ColumnDescriptor>,
    target: usize,
}

impl Description {
    pub fn new(columns: Vec<ColumnDescriptor>) -> Result<Self> {
        let mut target = None;
        for (i, c) in columns.iter().enumerate() {
            if c.kind == ColumnKind::Target {
                if let Some(t) = target {
                    let first: &ColumnDescriptor = &columns[t];
                    return Err(Error::MultipleTargets(first.name.clone(), c.name.clone()));
                }
                target = Some(i);
            }
        }
        let target = target.ok_or(Error::NoTarget)?;

        let mut names = HashSet::new();
        let mut shorts = HashSet::new();
        for c in &columns {
            if !names.insert(c.name.as_str()) {
                return Err(Error::DuplicateName("column", c.name.clone()));
            }
            if !shorts.insert(c.short_name.as_str()) {
                return Err(Error::DuplicateName("short", c.short_name.clone()));
            }
            c.validate()?;
        }
        Ok(Description { columns, target })
    }

    pub fn columns(&self) -> &[ColumnDescriptor] {
        &self.columns
    }

    pub fn target_index(&self) -> usize {
        self.target
    }

    pub fn target(&self) -> &ColumnDescriptor {
        &self.columns[self.target]
    }

    pub fn goal_labels(&self) -> &[String] {
        self.target().labels().expect("target columns carry labels")
    }

    /// Non-target columns in table order.
    pub fn inputs(&self) -> impl Iterator<Item = &ColumnDescriptor> {
        self.columns.iter().filter(|c| c.kind != ColumnKind::Target)
    }

    pub fn to_json(&self) -> String {
        let doc = RawDescription {
            columns: self
                .columns
                .iter()
                .map(|c| RawColumn {
                    name: c.name.clone(),
                    kind: c.kind,
                    short: c.short_name.clone(),
                    classes: c.class_count,
                    values: match &c.values {
                        ColumnValues::Labels(l) => l.iter().cloned().map(serde_json::Value::from).collect(),
                        ColumnValues::Boundaries(b) => b.iter().copied().map(serde_json::Value::from).collect(),
                    },
                    full_name: c.full_name.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("description serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawDescription {
    columns: Vec<RawColumn>,
}

#[derive(Serialize, Deserialize)]
struct RawColumn {
    name: String,
    kind: ColumnKind,
    short: String,
    classes: usize,
    values: Vec<serde_json::Value>,
    #[serde(default)]
    full_name: String,
}

fn label_of(column: &str, v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(Error::InvalidColumn(column.to_string(), format!("label {other} is not a string"))),
    }
}

/// Parses a JSON table description.
pub fn parse_description(text: &str) -> Result<Description> {
    let raw: RawDescription = serde_json::from_str(text)?;
    let mut columns = Vec::with_capacity(raw.columns.len());
    for c in raw.columns {
        let values = match c.kind {
            ColumnKind::Continuous => ColumnValues::Boundaries(
                c.values
                    .iter()
                    .map(|v| {
                        v.as_f64().ok_or_else(|| {
                            Error::InvalidColumn(c.name.clone(), format!("boundary {v} is not a number"))
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            ColumnKind::Target | ColumnKind::Categorical => {
                ColumnValues::Labels(c.values.iter().map(|v| label_of(&c.name, v)).collect::<Result<_>>()?)
            }
        };
        let full_name = if c.full_name.is_empty() { c.name.clone() } else { c.full_name };
        columns.push(ColumnDescriptor {
            name: c.name,
            kind: c.kind,
            short_name: c.short,
            class_count: c.classes,
            values,
            full_name,
        });
    }
    Description::new(columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"columns": [
        {"name": "Diag", "kind": "target", "short": "D", "classes": 3, "values": ["a", "b", "c"], "full_name": "Diagnosis"},
        {"name": "Temp", "kind": "continuous", "short": "T", "classes": 3, "values": [36.0, 37.2], "full_name": "Temperature"}
    ]}"#;

    #[test]
    fn minimal_description() {
        let d = parse_description(MINIMAL).unwrap();
        assert_eq!(d.columns().len(), 2);
        assert_eq!(d.columns().iter().filter(|c| c.kind == ColumnKind::Target).count(), 1);
        assert_eq!(d.target().name, "Diag");
        assert_eq!(d.columns()[1].boundaries(), Some(&[36.0, 37.2][..]));
        assert_eq!(parse_description(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn two_targets_rejected() {
        let text = r#"{"columns": [
            {"name": "A", "kind": "target", "short": "A", "classes": 2, "values": ["x", "y"]},
            {"name": "B", "kind": "target", "short": "B", "classes": 2, "values": ["x", "y"]}
        ]}"#;
        let err = parse_description(text).unwrap_err();
        assert!(matches!(err, Error::MultipleTargets(..)));
        assert!(err.to_string().contains("multiple targets"));
    }

    #[test]
    fn missing_target_rejected() {
        let text = r#"{"columns": [
            {"name": "A", "kind": "categorical", "short": "A", "classes": 2, "values": ["x", "y"]}
        ]}"#;
        assert!(matches!(parse_description(text), Err(Error::NoTarget)));
    }

    #[test]
    fn boundary_count_checked() {
        let text = r#"{"columns": [
            {"name": "D", "kind": "target", "short": "D", "classes": 2, "values": ["x", "y"]},
            {"name": "T", "kind": "continuous", "short": "T", "classes": 3, "values": [1, 2, 3]}
        ]}"#;
        let err = parse_description(text).unwrap_err();
        assert!(matches!(err, Error::BoundaryCount(_, 2, 3)));
        assert!(err.to_string().contains("boundary count must be class_count − 1"));
    }

    #[test]
    fn non_ascending_boundaries_rejected() {
        let text = r#"{"columns": [
            {"name": "D", "kind": "target", "short": "D", "classes": 2, "values": ["x", "y"]},
            {"name": "T", "kind": "continuous", "short": "T", "classes": 3, "values": [2.0, 2.0]}
        ]}"#;
        assert!(matches!(parse_description(text), Err(Error::NonAscendingBoundaries(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let text = r#"{"columns": [
            {"name": "D", "kind": "target", "short": "D", "classes": 2, "values": ["x", "y"]},
            {"name": "A", "kind": "categorical", "short": "A", "classes": 2, "values": ["x", "y"]},
            {"name": "B", "kind": "categorical", "short": "A", "classes": 2, "values": ["x", "y"]}
        ]}"#;
        assert!(matches!(parse_description(text), Err(Error::DuplicateName("short", _))));
        let text = text.replace(
            r#""name": "B", "kind": "categorical", "short": "A""#,
            r#""name": "A", "kind": "categorical", "short": "B""#,
        );
        assert!(matches!(parse_description(&text), Err(Error::DuplicateName("column", _))));
    }

    #[test]
    fn label_checks() {
        let text = r#"{"columns": [
            {"name": "D", "kind": "target", "short": "D", "classes": 2, "values": ["x", "x"]}
        ]}"#;
        assert!(matches!(parse_description(text), Err(Error::LabelCount(..))));
        let text = r#"{"columns": [
            {"name": "D", "kind": "target", "short": "D", "classes": 1, "values": ["x"]}
        ]}"#;
        assert!(matches!(parse_description(text), Err(Error::ClassCount(_))));
    }
}
