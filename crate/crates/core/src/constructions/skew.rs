use serde::Serialize;

use crate::algebra::{Algebra, AxiomViolation, Element};
use crate::graded::GradedAlgebra;
use crate::groupoid::{Groupoid, GroupoidError};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

use super::ConstructionError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SkewViolation {
    /// A component ring fails its own axioms.
    Component { object: usize, violation: AxiomViolation },
    /// `σ_s(1) != 1`.
    NotUnital { morphism: usize },
    /// `σ_s(b_i b_j) != σ_s(b_i) σ_s(b_j)`.
    NotMultiplicative { morphism: usize, i: usize, j: usize },
    /// `σ_e` is not the identity map of `A_e`.
    IdentityNotId { object: usize },
    /// `σ_s ∘ σ_t != σ_{st}`.
    NotFunctorial { s: usize, t: usize },
}

/// `{A, G, σ}`: one ring `A_e` per object and ring maps
/// `σ_s : A_{d(s)} → A_{c(s)}` stored as matrices whose rows are the images
/// of the basis of `A_{d(s)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSystem {
    groupoid: Groupoid,
    components: Vec<Algebra>,
    sigma: Vec<Matrix>,
    offsets: Vec<usize>,
}

impl SkewSystem {
    pub fn new(groupoid: Groupoid, components: Vec<Algebra>, sigma: Vec<Matrix>) -> Result<SkewSystem, ConstructionError> {
        let report = groupoid.validate();
        if !report.is_valid() {
            return Err(GroupoidError::Invalid(format!("{:?}", report.violations)).into());
        }
        if components.len() != groupoid.objects() {
            return Err(ConstructionError::Shape(format!(
                "{} component rings for {} objects",
                components.len(),
                groupoid.objects()
            )));
        }
        if sigma.len() != groupoid.morphisms() {
            return Err(ConstructionError::Shape(format!(
                "{} σ maps for {} morphisms",
                sigma.len(),
                groupoid.morphisms()
            )));
        }
        let field = components[0].field();
        if let Some(c) = components.iter().find(|c| c.field() != field) {
            return Err(ConstructionError::Shape(format!(
                "component rings over {} and {}",
                field,
                c.field()
            )));
        }
        for (s, m) in sigma.iter().enumerate() {
            let (d, c) = (groupoid.dom(s), groupoid.cod(s));
            if m.field() != field || m.rows() != components[d].dim() || m.cols() != components[c].dim() {
                return Err(ConstructionError::Shape(format!(
                    "σ_{s} must be a {}x{} matrix over {field}",
                    components[d].dim(),
                    components[c].dim()
                )));
            }
        }
        let mut offsets = Vec::with_capacity(groupoid.morphisms());
        let mut acc = 0;
        for s in 0..groupoid.morphisms() {
            offsets.push(acc);
            acc += components[groupoid.cod(s)].dim();
        }
        Ok(SkewSystem {
            groupoid,
            components,
            sigma,
            offsets,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn components(&self) -> &[Algebra] {
        &self.components
    }

    pub fn sigma(&self) -> &[Matrix] {
        &self.sigma
    }

    pub fn field(&self) -> Field {
        self.components[0].field()
    }

    /// Whether every `A_e` is commutative.
    pub fn coefficients_commutative(&self) -> bool {
        self.components.iter().all(Algebra::is_commutative)
    }

    /// Index of the basis vector `b_k u_s` of the skew algebra, where `b_k`
    /// is the `k`-th basis vector of `A_{c(s)}`.
    pub fn basis_index(&self, s: usize, k: usize) -> usize {
        self.offsets[s] + k
    }

    pub fn apply_sigma(&self, s: usize, a: &[Scalar]) -> Vec<Scalar> {
        self.sigma[s].apply_row(a)
    }

    pub fn validate(&self) -> Vec<SkewViolation> {
        let g = &self.groupoid;
        let mut v = Vec::new();
        for (object, comp) in self.components.iter().enumerate() {
            v.extend(
                comp.axiom_violations()
                    .into_iter()
                    .map(|violation| SkewViolation::Component { object, violation }),
            );
        }
        for s in 0..g.morphisms() {
            let (src, dst) = (&self.components[g.dom(s)], &self.components[g.cod(s)]);
            if self.apply_sigma(s, src.unit().coeffs()) != dst.unit().coeffs() {
                v.push(SkewViolation::NotUnital { morphism: s });
            }
            let images = self.sigma[s].row_vecs();
            for i in 0..src.dim() {
                for j in 0..src.dim() {
                    let lhs = self.apply_sigma(s, &src.mul_slices(src.basis_element(i).coeffs(), src.basis_element(j).coeffs()));
                    let rhs = dst.mul_slices(&images[i], &images[j]);
                    if lhs != rhs {
                        v.push(SkewViolation::NotMultiplicative { morphism: s, i, j });
                    }
                }
            }
        }
        for object in 0..g.objects() {
            if let Some(e) = g.identity(object) {
                let n = self.components[object].dim();
                if self.sigma[e] != Matrix::identity(self.field(), n) {
                    v.push(SkewViolation::IdentityNotId { object });
                }
            }
        }
        for s in 0..g.morphisms() {
            for t in 0..g.morphisms() {
                let Some(st) = g.compose(s, t) else { continue };
                let composed = self.sigma[t].mul(&self.sigma[s]).expect("shapes agree");
                if composed != self.sigma[st] {
                    v.push(SkewViolation::NotFunctorial { s, t });
                }
            }
        }
        v
    }

    /// `A ⋊^σ G` with basis `{b u_s}` and `(a u_s)(b u_t) = a σ_s(b) u_{st}`
    /// when `(s, t)` is composable, zero otherwise.
    pub fn build(&self) -> Result<GradedAlgebra, ConstructionError> {
        if let Some(first) = self.validate().into_iter().next() {
            return Err(ConstructionError::SkewAxiom(first));
        }
        let g = &self.groupoid;
        let f = self.field();
        let m = g.morphisms();
        let dim = self.offsets[m - 1] + self.components[g.cod(m - 1)].dim();
        let mut constants = Vec::new();
        for s in 0..m {
            let target = &self.components[g.cod(s)];
            for t in 0..m {
                let Some(st) = g.compose(s, t) else { continue };
                for j in 0..self.components[g.cod(t)].dim() {
                    let image = self.sigma[s].row(j);
                    for i in 0..target.dim() {
                        let prod = target.mul_slices(target.basis_element(i).coeffs(), image);
                        for (l, c) in prod.into_iter().enumerate() {
                            if !c.is_zero() {
                                constants.push((self.basis_index(s, i), self.basis_index(t, j), self.basis_index(st, l), c));
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![f.zero(); dim];
        for (object, comp) in self.components.iter().enumerate() {
            let e = g.id(object);
            for (k, c) in comp.unit().coeffs().iter().enumerate() {
                unit[self.basis_index(e, k)] = c.clone();
            }
        }
        let mut degree = Vec::with_capacity(dim);
        let mut labels = Vec::with_capacity(dim);
        for s in 0..m {
            let n = self.components[g.cod(s)].dim();
            for k in 0..n {
                degree.push(s);
                labels.push(if n == 1 {
                    format!("u{}", g.name(s))
                } else {
                    format!("a{k}u{}", g.name(s))
                });
            }
        }
        let algebra = Algebra::new(f, dim, constants, Element::new(unit))?;
        Ok(GradedAlgebra::new(g.clone(), algebra, degree)?.with_labels(labels)?)
    }

    /// The additive map `Σ a_s u_s ↦ Σ a_s` into `A = ⊕ A_e`, with `A`
    /// coordinatized by the identity-degree basis vectors.
    pub fn augmentation(&self, x: &Element) -> Element {
        let g = &self.groupoid;
        let f = self.field();
        let dim = x.len();
        let mut out = vec![f.zero(); dim];
        for s in 0..g.morphisms() {
            let e = g.id(g.cod(s));
            for k in 0..self.components[g.cod(s)].dim() {
                let src = self.basis_index(s, k);
                let dst = self.basis_index(e, k);
                out[dst] = &out[dst] + &x.coeffs()[src];
            }
        }
        Element::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::groupoid::{build_group, cyclic_table};

    #[test]
    fn swap_system_is_four_dimensional() {
        let sys = catalog::skew_swap(Field::Rational);
        assert!(sys.validate().is_empty());
        let a = sys.build().unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.validate_grading().is_valid());
        assert!(a.is_strongly_graded().unwrap().holds);
    }

    #[test]
    fn trivial_groupoid_returns_the_ring() {
        let g = build_group(&cyclic_table(1)).unwrap();
        let ring = Algebra::split(Field::Rational, 2);
        let sys = SkewSystem::new(g, vec![ring.clone()], vec![Matrix::identity(Field::Rational, 2)]).unwrap();
        let a = sys.build().unwrap();
        assert_eq!(a.algebra().constants(), ring.constants());
        assert_eq!(a.unit(), ring.unit());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let f = Field::Rational;
        let g = build_group(&cyclic_table(2)).unwrap();
        // (x, y) ↦ (x + y, 0) is neither unital nor multiplicative.
        let bad = Matrix::from_i64(f, &[&[1, 0], &[1, 0]]);
        let sys = SkewSystem::new(g, vec![Algebra::split(f, 2)], vec![Matrix::identity(f, 2), bad]).unwrap();
        let v = sys.validate();
        assert!(v.iter().any(|x| matches!(x, SkewViolation::NotMultiplicative { morphism: 1, .. })));
        assert!(matches!(sys.build(), Err(ConstructionError::SkewAxiom(_))));
    }
}
