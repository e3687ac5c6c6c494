use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Element;
use crate::graded::GradedAlgebra;
use crate::linalg::{space_size, vector_from_index, Echelon};
use crate::scalar::Scalar;

/// Largest candidate count enumerated over a finite field.
pub const FREENESS_ENUMERATION_CAP: u64 = 1 << 20;

const RATIONAL_SAMPLES: usize = 256;

/// Whether `R_s` is free of rank one as a left `R_{c(s)}`-module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Freeness {
    /// `x ↦ x·generator` is a bijection `R_{c(s)} → R_s`.
    Free { generator: Element },
    /// The dimensions differ, so no generator can exist.
    NotFreeByDimension { module_dim: usize, component_dim: usize },
    /// Every candidate generator was checked and none works.
    NotFree { candidates_checked: u64 },
    /// No generator found among the sampled candidates.
    Undetermined { candidates_checked: u64 },
}

impl Freeness {
    /// `Some(true)` free, `Some(false)` not free, `None` undetermined.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Freeness::Free { .. } => Some(true),
            Freeness::NotFreeByDimension { .. } | Freeness::NotFree { .. } => Some(false),
            Freeness::Undetermined { .. } => None,
        }
    }
}

fn generates(a: &GradedAlgebra, module_basis: &[usize], u: &[Scalar]) -> bool {
    let alg = a.algebra();
    let mut e = Echelon::new(a.field(), a.dim());
    module_basis
        .iter()
        .all(|&i| e.insert(&alg.mul_slices(alg.basis_element(i).coeffs(), u)))
}

fn embed(a: &GradedAlgebra, basis: &[usize], coords: &[Scalar]) -> Vec<Scalar> {
    let mut v = vec![a.field().zero(); a.dim()];
    for (&i, c) in basis.iter().zip(coords) {
        v[i] = c.clone();
    }
    v
}

/// Searches for `u ∈ R_s` such that right multiplication by `u` maps
/// `R_{c(s)}` bijectively onto `R_s`.
///
/// Unequal dimensions settle the question immediately. Otherwise finite
/// fields are enumerated exhaustively below [`FREENESS_ENUMERATION_CAP`];
/// larger or infinite searches sample candidates from a fixed seed.
pub fn is_free_rank_one(a: &GradedAlgebra, s: usize) -> Freeness {
    let g = a.groupoid();
    let target = a.basis_of_degree(s);
    let module_basis = a.basis_of_degree(g.id(g.cod(s)));
    if module_basis.len() != target.len() {
        return Freeness::NotFreeByDimension {
            module_dim: module_basis.len(),
            component_dim: target.len(),
        };
    }
    let f = a.field();
    let k = target.len();
    if k == 0 {
        return Freeness::Free {
            generator: a.algebra().zero(),
        };
    }
    match space_size(f, k).filter(|&n| n <= FREENESS_ENUMERATION_CAP) {
        Some(total) => {
            for idx in 1..total {
                let u = embed(a, target, &vector_from_index(f, k, idx));
                if generates(a, module_basis, &u) {
                    return Freeness::Free {
                        generator: Element::new(u),
                    };
                }
            }
            Freeness::NotFree {
                candidates_checked: total.saturating_sub(1),
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut checked = 0;
            for _ in 0..RATIONAL_SAMPLES {
                let coords: Vec<Scalar> = match f.size() {
                    Some(p) => (0..k).map(|_| f.element(rng.random_range(0..p))).collect(),
                    None => (0..k).map(|_| f.from_i64(rng.random_range(-3..=3))).collect(),
                };
                checked += 1;
                let u = embed(a, target, &coords);
                if generates(a, module_basis, &u) {
                    return Freeness::Free {
                        generator: Element::new(u),
                    };
                }
            }
            Freeness::Undetermined {
                candidates_checked: checked,
            }
        }
    }
}
