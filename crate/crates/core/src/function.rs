//! Constructible functions on a simplicial complex.
//!
//! A function is stored as one value per open simplex, indexed like
//! [`SimplicialComplex::simplices`]. Every function is bound to a complex
//! through an `Arc`; binary operations require both operands to share it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::dyadic::Dyadic;
use crate::labels::StratumLabeling;
use crate::scalar::{ExactScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error("functions are bound to different complexes")]
    ComplexMismatch,
    #[error("value vector has {got} entries, complex has {expected} simplices")]
    WrongLength { expected: usize, got: usize },
    #[error("not a subcomplex: simplex {0:?} is missing from the function's complex")]
    NotASubcomplex(Vec<String>),
    #[error("labeling does not belong to this complex")]
    LabelingMismatch,
    #[error("function is not constant on label {label:?}: {first:?} has {first_value}, {second:?} has {second_value}")]
    NotConstantOnLabel {
        label: String,
        first: Vec<String>,
        first_value: String,
        second: Vec<String>,
        second_value: String,
    },
}

/// A function constant on each open simplex of its complex.
#[derive(Clone)]
pub struct ConstructibleFunction<T = Dyadic> {
    complex: Arc<SimplicialComplex>,
    values: Vec<T>,
}

impl<T: Scalar> PartialEq for ConstructibleFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.complex, &other.complex) && self.values == other.values
    }
}

impl<T: ExactScalar> Eq for ConstructibleFunction<T> {}

impl<T: fmt::Debug> fmt::Debug for ConstructibleFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Parity of an Euler integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
    NonInteger,
}

impl<T: Scalar> ConstructibleFunction<T> {
    pub fn from_values(
        complex: Arc<SimplicialComplex>,
        values: Vec<T>,
    ) -> Result<Self, FunctionError> {
        if values.len() != complex.len() {
            return Err(FunctionError::WrongLength {
                expected: complex.len(),
                got: values.len(),
            });
        }
        Ok(ConstructibleFunction { complex, values })
    }

    pub fn from_fn(complex: Arc<SimplicialComplex>, f: impl FnMut(&Simplex) -> T) -> Self {
        let values = complex.simplices().iter().map(f).collect();
        ConstructibleFunction { complex, values }
    }

    /// The characteristic function 1_K.
    pub fn indicator(complex: Arc<SimplicialComplex>) -> Self {
        Self::constant(complex, T::one())
    }

    pub fn constant(complex: Arc<SimplicialComplex>, value: T) -> Self {
        let values = vec![value; complex.len()];
        ConstructibleFunction { complex, values }
    }

    pub fn zero(complex: Arc<SimplicialComplex>) -> Self {
        Self::constant(complex, T::zero())
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn value(&self, s: &Simplex) -> Option<&T> {
        self.complex.index_of(s).map(|i| &self.values[i])
    }

    pub fn is_bound_to(&self, complex: &Arc<SimplicialComplex>) -> bool {
        same_complex(&self.complex, complex)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&T, &T) -> T) -> Result<Self, FunctionError> {
        if !same_complex(&self.complex, &other.complex) {
            return Err(FunctionError::ComplexMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(ConstructibleFunction {
            complex: Arc::clone(&self.complex),
            values,
        })
    }

    pub fn map(&self, op: impl Fn(&T) -> T) -> Self {
        ConstructibleFunction {
            complex: Arc::clone(&self.complex),
            values: self.values.iter().map(op).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FunctionError> {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FunctionError> {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FunctionError> {
        self.zip_with(other, |a, b| a.clone() * b)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// ∫ f = Σ (−1)^dim σ f(σ).
    pub fn euler_integral(&self) -> T {
        let mut even = T::zero();
        let mut odd = T::zero();
        for (s, v) in self.complex.simplices().iter().zip(&self.values) {
            if s.dim() % 2 == 0 {
                even = even + v;
            } else {
                odd = odd + v;
            }
        }
        even - odd
    }

    /// Largest dimension of a simplex where the value is nonzero.
    pub fn support_dimension(&self) -> Option<usize> {
        // Simplices are sorted by dimension.
        self.complex
            .simplices()
            .iter()
            .zip(&self.values)
            .rev()
            .find(|(_, v)| !v.is_zero())
            .map(|(s, _)| s.dim())
    }

    pub fn support(&self) -> Vec<&Simplex> {
        self.complex
            .simplices()
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    /// The restriction to a subcomplex `sub` of this function's complex.
    pub fn restrict(&self, sub: &Arc<SimplicialComplex>) -> Result<Self, FunctionError> {
        let values = sub
            .simplices()
            .iter()
            .map(|s| {
                self.complex
                    .index_of(s)
                    .map(|i| self.values[i].clone())
                    .ok_or_else(|| FunctionError::NotASubcomplex(sub.simplex_names(s)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConstructibleFunction {
            complex: Arc::clone(sub),
            values,
        })
    }

    pub fn is_integer_valued(&self) -> bool {
        self.values.iter().all(T::is_integer)
    }

    /// First simplex (canonical order) with a non-integer value.
    pub fn first_non_integer(&self) -> Option<(usize, &T)> {
        self.values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_integer())
    }

    /// Per-label values; fails if the function is not constant on some label.
    pub fn values_by_label(
        &self,
        labeling: &StratumLabeling,
    ) -> Result<BTreeMap<String, T>, FunctionError> {
        if labeling.len() != self.values.len() {
            return Err(FunctionError::LabelingMismatch);
        }
        let mut seen: BTreeMap<String, (usize, T)> = BTreeMap::new();
        for (i, v) in self.values.iter().enumerate() {
            let label = labeling.label_at(i);
            match seen.get(label) {
                None => {
                    seen.insert(label.to_string(), (i, v.clone()));
                }
                Some((j, w)) if w != v => {
                    let simplices = self.complex.simplices();
                    return Err(FunctionError::NotConstantOnLabel {
                        label: label.to_string(),
                        first: self.complex.simplex_names(&simplices[*j]),
                        first_value: w.to_string(),
                        second: self.complex.simplex_names(&simplices[i]),
                        second_value: v.to_string(),
                    });
                }
                Some(_) => {}
            }
        }
        Ok(seen.into_iter().map(|(k, (_, v))| (k, v)).collect())
    }
}

impl<T: ExactScalar> ConstructibleFunction<T> {
    /// Whether every value is an even integer.
    pub fn is_even_valued(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.to_integer().is_some_and(|n| n.is_even()))
    }

    pub fn parity_of_integral(&self) -> Parity {
        if !self.is_integer_valued() {
            return Parity::NonInteger;
        }
        match self.euler_integral().to_integer() {
            Some(n) if n.is_even() => Parity::Even,
            Some(_) => Parity::Odd,
            None => Parity::NonInteger,
        }
    }

    /// The integral as an integer, when the function is integer-valued.
    pub fn integer_integral(&self) -> Option<BigInt> {
        if self.is_integer_valued() {
            self.euler_integral().to_integer()
        } else {
            None
        }
    }
}
