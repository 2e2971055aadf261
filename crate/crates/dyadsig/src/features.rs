//! Named feature vectors and the subject-by-feature matrix.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Ordered list of named scalar features for one subject.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector {
    names: Vec<String>,
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn new() -> FeatureVector {
        FeatureVector::default()
    }

    pub fn with_capacity(n: usize) -> FeatureVector {
        FeatureVector {
            names: Vec::with_capacity(n),
            values: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.names.push(name.into());
        self.values.push(value);
    }

    /// Appends another vector, keeping its order.
    pub fn extend(&mut self, other: FeatureVector) {
        self.names.extend(other.names);
        self.values.extend(other.values);
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.values[i])
    }

    /// Checks the vector is usable as a matrix row: unique names, finite
    /// values.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for name in &self.names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateFeature { name: name.clone() });
            }
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "feature values",
            });
        }
        Ok(())
    }
}

/// Subjects-by-features matrix with row and column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    feature_names: Vec<String>,
    subject_ids: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    /// Stacks per-subject vectors; every row must share the first row's
    /// feature names in the same order.
    pub fn from_rows(subject_ids: Vec<String>, vectors: Vec<FeatureVector>) -> Result<FeatureMatrix> {
        if subject_ids.len() != vectors.len() {
            return Err(Error::LengthMismatch {
                left: subject_ids.len(),
                right: vectors.len(),
            });
        }
        if vectors.is_empty() {
            return Err(Error::EmptyDataset);
        }
        vectors[0].validate()?;
        let feature_names = vectors[0].names().to_vec();
        let mut rows = Vec::with_capacity(vectors.len());
        for v in &vectors {
            if v.names() != feature_names.as_slice() {
                return Err(Error::InvalidParam(
                    "feature vectors disagree on names or order".into(),
                ));
            }
            rows.push(v.values().to_vec());
        }
        Ok(FeatureMatrix {
            feature_names,
            subject_ids,
            rows,
        })
    }

    pub(crate) fn from_parts(
        feature_names: Vec<String>,
        subject_ids: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> FeatureMatrix {
        debug_assert!(rows.iter().all(|r| r.len() == feature_names.len()));
        debug_assert_eq!(subject_ids.len(), rows.len());
        FeatureMatrix {
            feature_names,
            subject_ids,
            rows,
        }
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn subject_ids(&self) -> &[String] {
        &self.subject_ids
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n_subjects(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Keeps only the subjects whose index appears in `keep`, in that order.
    pub fn select_subjects(&self, keep: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            subject_ids: keep.iter().map(|&i| self.subject_ids[i].clone()).collect(),
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}
