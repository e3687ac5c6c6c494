use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::graded::GradedAlgebra;
use crate::groupoid::{Groupoid, GroupoidError};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

use super::ConstructionError;

/// A violated crossed-system condition. Basis vectors of `A` are referred to
/// by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossedViolation {
    /// `σ_s` is not a unital ring endomorphism of `A`.
    NotEndomorphism { s: usize },
    /// `σ_e != id_A`.
    IdentityNotId,
    /// `α(s, e) = α(e, s) = 1_A` fails.
    AlphaNotNormalized { s: usize },
    /// `α(s,t) α(st,r) = σ_s(α(t,r)) α(s,tr)` fails.
    Cocycle { s: usize, t: usize, r: usize },
    /// `σ_s(σ_t(a)) α(s,t) = α(s,t) σ_{st}(a)` fails for basis vector `a`.
    Twisted { s: usize, t: usize, a: usize },
}

/// `{A, G, σ, α}` over a group `G` (a one-object groupoid).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedSystem {
    group: Groupoid,
    ring: Algebra,
    sigma: Vec<Matrix>,
    alpha: Vec<Vec<Element>>,
}

impl CrossedSystem {
    pub fn new(group: Groupoid, ring: Algebra, sigma: Vec<Matrix>, alpha: Vec<Vec<Element>>) -> Result<CrossedSystem, ConstructionError> {
        if group.objects() != 1 {
            return Err(ConstructionError::NotAGroup);
        }
        let report = group.validate();
        if !report.is_valid() {
            return Err(GroupoidError::Invalid(format!("{:?}", report.violations)).into());
        }
        let n = group.morphisms();
        let (f, d) = (ring.field(), ring.dim());
        if sigma.len() != n || sigma.iter().any(|m| m.rows() != d || m.cols() != d || m.field() != f) {
            return Err(ConstructionError::Shape(format!("need {n} σ matrices of size {d}x{d} over {f}")));
        }
        if alpha.len() != n || alpha.iter().any(|row| row.len() != n) {
            return Err(ConstructionError::Shape(format!("α must be a {n}x{n} table")));
        }
        for x in alpha.iter().flatten() {
            ring.check_element(x)?;
        }
        Ok(CrossedSystem { group, ring, sigma, alpha })
    }

    pub fn group(&self) -> &Groupoid {
        &self.group
    }

    pub fn ring(&self) -> &Algebra {
        &self.ring
    }

    pub fn sigma(&self) -> &[Matrix] {
        &self.sigma
    }

    pub fn alpha(&self, s: usize, t: usize) -> &Element {
        &self.alpha[s][t]
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn apply_sigma(&self, s: usize, a: &Element) -> Element {
        Element::new(self.sigma[s].apply_row(a.coeffs()))
    }

    fn identity(&self) -> usize {
        self.group.id(0)
    }

    pub fn validate(&self) -> Vec<CrossedViolation> {
        let a = &self.ring;
        let n = self.group.morphisms();
        let e = self.identity();
        let mut v = Vec::new();
        for s in 0..n {
            let unital = self.apply_sigma(s, a.unit()) == *a.unit();
            let multiplicative = (0..a.dim()).all(|i| {
                (0..a.dim()).all(|j| {
                    let (bi, bj) = (a.basis_element(i), a.basis_element(j));
                    self.apply_sigma(s, &a.mul(&bi, &bj)) == a.mul(&self.apply_sigma(s, &bi), &self.apply_sigma(s, &bj))
                })
            });
            if !(unital && multiplicative) {
                v.push(CrossedViolation::NotEndomorphism { s });
            }
        }
        if self.sigma[e] != Matrix::identity(self.field(), a.dim()) {
            v.push(CrossedViolation::IdentityNotId);
        }
        for s in 0..n {
            if self.alpha[s][e] != *a.unit() || self.alpha[e][s] != *a.unit() {
                v.push(CrossedViolation::AlphaNotNormalized { s });
            }
        }
        let g = &self.group;
        let c = |s: usize, t: usize| g.compose(s, t).expect("group product");
        for s in 0..n {
            for t in 0..n {
                for r in 0..n {
                    let lhs = a.mul(&self.alpha[s][t], &self.alpha[c(s, t)][r]);
                    let rhs = a.mul(&self.apply_sigma(s, &self.alpha[t][r]), &self.alpha[s][c(t, r)]);
                    if lhs != rhs {
                        v.push(CrossedViolation::Cocycle { s, t, r });
                    }
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                let al = &self.alpha[s][t];
                for i in 0..a.dim() {
                    let b = a.basis_element(i);
                    let lhs = a.mul(&self.apply_sigma(s, &self.apply_sigma(t, &b)), al);
                    let rhs = a.mul(al, &self.apply_sigma(c(s, t), &b));
                    if lhs != rhs {
                        v.push(CrossedViolation::Twisted { s, t, a: i });
                    }
                }
            }
        }
        v
    }

    /// Index of `b_k u_s`.
    pub fn basis_index(&self, s: usize, k: usize) -> usize {
        s * self.ring.dim() + k
    }

    /// `A ⋊_α^σ G` with `(a u_s)(b u_t) = a σ_s(b) α(s,t) u_{st}`.
    pub fn build(&self) -> Result<GradedAlgebra, ConstructionError> {
        if let Some(first) = self.validate().into_iter().next() {
            return Err(ConstructionError::CrossedAxiom(first));
        }
        let a = &self.ring;
        let g = &self.group;
        let f = self.field();
        let (n, d) = (g.morphisms(), a.dim());
        let mut constants = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let st = g.compose(s, t).expect("group product");
                for j in 0..d {
                    let image = self.apply_sigma(s, &a.basis_element(j));
                    for i in 0..d {
                        let prod = a.mul(&a.mul(&a.basis_element(i), &image), &self.alpha[s][t]);
                        for (l, c) in prod.into_coeffs().into_iter().enumerate() {
                            if !c.is_zero() {
                                constants.push((self.basis_index(s, i), self.basis_index(t, j), self.basis_index(st, l), c));
                            }
                        }
                    }
                }
            }
        }
        let mut unit: Vec<Scalar> = vec![f.zero(); n * d];
        for (k, c) in a.unit().coeffs().iter().enumerate() {
            unit[self.basis_index(self.identity(), k)] = c.clone();
        }
        let degree = (0..n).flat_map(|s| std::iter::repeat_n(s, d)).collect();
        let labels = (0..n)
            .flat_map(|s| {
                (0..d).map(move |k| if d == 1 { format!("u{}", g.name(s)) } else { format!("a{k}u{}", g.name(s)) })
            })
            .collect();
        let algebra = Algebra::new(f, n * d, constants, Element::new(unit))?;
        Ok(GradedAlgebra::new(g.clone(), algebra, degree)?.with_labels(labels)?)
    }

    /// Whether every `σ_s` is bijective (an automorphism).
    pub fn sigma_automorphic(&self) -> bool {
        self.sigma.iter().all(|m| m.rank() == self.ring.dim())
    }

    /// Whether no `α(s, s^{-1})` is a zero divisor in `A`.
    pub fn alpha_regular(&self) -> bool {
        (0..self.group.morphisms()).all(|s| {
            let inv = self.group.inverse(s).expect("groups have inverses");
            !self.ring.is_zero_divisor(&self.alpha[s][inv])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_twist_gives_group_algebra() {
        let sys = catalog::crossed_scalar_twist(Field::Rational, 1);
        let a = sys.build().unwrap();
        let g = a.named("ug");
        assert_eq!(a.mul(&g, &g), a.named("ue"));
    }

    #[test]
    fn minus_one_twist_squares_to_minus_one() {
        let sys = catalog::crossed_scalar_twist(Field::Rational, -1);
        assert!(sys.validate().is_empty());
        let a = sys.build().unwrap();
        let g = a.named("ug");
        assert_eq!(a.mul(&g, &g), a.named("ue").scale(&Field::Rational.from_i64(-1)));
        assert!(a.validate_grading().is_valid());
        assert!(a.is_strongly_graded().unwrap().holds);
    }

    #[test]
    fn zero_twist_loads_but_is_not_strong() {
        let sys = catalog::crossed_scalar_twist(Field::Rational, 0);
        assert!(sys.validate().is_empty());
        assert!(!sys.alpha_regular());
        let a = sys.build().unwrap();
        assert!(!a.is_strongly_graded().unwrap().holds);
    }

    #[test]
    fn unnormalized_alpha_is_rejected() {
        let sys = catalog::crossed_scalar_twist(Field::Rational, -1);
        let f = Field::Rational;
        let mut alpha = vec![vec![Element::basis(f, 1, 0); 2]; 2];
        alpha[0][1] = Element::new(vec![f.from_i64(2)]);
        let bad = CrossedSystem::new(sys.group().clone(), sys.ring().clone(), sys.sigma().to_vec(), alpha).unwrap();
        assert!(bad.validate().contains(&CrossedViolation::AlphaNotNormalized { s: 1 }));
        assert!(matches!(bad.build(), Err(ConstructionError::CrossedAxiom(_))));
    }
}
