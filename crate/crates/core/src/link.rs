//! The link operator Λ, its half Λ̃ = ½Λ and the complement Ω̃ = id − Λ̃.
//!
//! `(Λf)(p)` is the Euler integral of `f` over the link of `p`. For a point
//! inside a k-simplex σ the small sphere around it meets σ itself in an
//! S^(k−1) and every strict coface τ in an open cell of dimension dim τ − 1,
//! which gives the closed form
//!
//! ```text
//! (Λf)(σ) = (1 + (−1)^(k−1)) f(σ) + Σ_{τ ⊋ σ} (−1)^(dim τ − 1) f(τ)
//! ```
//!
//! [`link_transform_oracle`] evaluates the same quantity on the barycentric
//! subdivision instead, and the two are checked against each other in tests.

use crate::complex::{Simplex, SimplicialComplex};
use crate::function::ConstructibleFunction;
use crate::scalar::Scalar;

/// Λ, by the closed coface formula.
pub fn link_transform<T: Scalar>(f: &ConstructibleFunction<T>) -> ConstructibleFunction<T> {
    let complex = f.complex();
    let values = f.values();
    let cofaces = complex.cofaces();
    let out = complex
        .simplices()
        .iter()
        .enumerate()
        .map(|(i, sigma)| {
            let mut acc = if sigma.dim() % 2 == 1 {
                values[i].clone() + &values[i]
            } else {
                T::zero()
            };
            for &j in &cofaces[i] {
                let tau = &complex.simplices()[j];
                // (−1)^(dim τ − 1)
                if tau.dim() % 2 == 1 {
                    acc = acc + &values[j];
                } else {
                    acc = acc - &values[j];
                }
            }
            acc
        })
        .collect();
    ConstructibleFunction::from_values(complex.clone(), out).expect("length preserved")
}

/// Λ̃ = ½Λ.
pub fn half_link<T: Scalar>(f: &ConstructibleFunction<T>) -> ConstructibleFunction<T> {
    link_transform(f).map(T::half)
}

/// Ω̃ = id − Λ̃.
pub fn omega<T: Scalar>(f: &ConstructibleFunction<T>) -> ConstructibleFunction<T> {
    f.sub(&half_link(f)).expect("same complex")
}

/// Λ evaluated independently on the barycentric subdivision: for each σ, the
/// link of the barycenter σ̂ is the boundary of the closed star of σ̂, and each
/// simplex δ of it contributes (−1)^dim δ times the value of `f` on the
/// carrier of the chain δ ∪ {σ̂}.
pub fn link_transform_oracle<T: Scalar>(f: &ConstructibleFunction<T>) -> ConstructibleFunction<T> {
    let complex = f.complex();
    let sd = complex.barycentric_subdivision();
    let values = f.values();
    let out = (0..complex.len())
        .map(|i| {
            let hat = sd.barycenter(i);
            let link = sd
                .complex
                .link(&Simplex::vertex(hat))
                .expect("barycenter is a vertex of the subdivision");
            link.simplices().iter().fold(T::zero(), |acc, delta| {
                let chain = delta.with_vertex(hat);
                let carrier = sd.carrier[sd
                    .complex
                    .index_of(&chain)
                    .expect("chain through the barycenter")];
                if delta.dim() % 2 == 0 {
                    acc + &values[carrier]
                } else {
                    acc - &values[carrier]
                }
            })
        })
        .collect();
    ConstructibleFunction::from_values(complex.clone(), out).expect("length preserved")
}

/// Euler characteristic of the point link of every simplex, i.e. Λ1.
pub fn link_euler_characteristics(complex: &SimplicialComplex) -> Vec<i64> {
    complex
        .simplices()
        .iter()
        .map(|s| {
            complex
                .point_link(s)
                .expect("simplex of the complex")
                .euler_characteristic()
        })
        .collect()
}
