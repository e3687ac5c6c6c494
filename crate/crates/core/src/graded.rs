//! Algebras graded by a finite category or groupoid.
//!
//! Every basis vector carries a degree (a morphism), so the homogeneous
//! component `R_s` is the span of the basis vectors of degree `s`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AxiomViolation, Element};
use crate::groupoid::{Groupoid, GroupoidError};
use crate::linalg::Subspace;
use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("degree list has {found} entries, algebra has dimension {dim}")]
    DegreeLength { dim: usize, found: usize },
    #[error("basis vector {basis} has degree {degree}, which is not a morphism")]
    DegreeOutOfRange { basis: usize, degree: usize },
    #[error("the grading groupoid has no inverse table")]
    MissingInverses,
    #[error("the grading category is not cancellable")]
    NotCancellable,
    #[error("the unit has a nonzero component at non-identity degree {morphism}")]
    NonIdentityUnitComponent { morphism: usize },
    #[error("basis vector {basis} has degree {degree} outside the support subcategory")]
    OutsideSupport { basis: usize, degree: usize },
    #[error("label list has {found} entries, expected {dim}")]
    LabelLength { dim: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradingViolation {
    /// `b_i b_j` has a nonzero coefficient at `b_k` although `deg(i)`,
    /// `deg(j)` are not composable.
    NonComposable { i: usize, j: usize, k: usize },
    /// `b_i b_j` has a nonzero coefficient at `b_k` with
    /// `deg(k) != deg(i)∘deg(j)`.
    WrongDegree { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub axioms: Vec<AxiomViolation>,
    pub grading: Vec<GradingViolation>,
}

impl GradingReport {
    pub fn is_valid(&self) -> bool {
        self.axioms.is_empty() && self.grading.is_empty()
    }
}

/// Outcome of the strong grading test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongGrading {
    pub holds: bool,
    pub failure: Option<StrongFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongFailure {
    pub morphism: usize,
    /// `span(R_s R_{s^-1})`.
    pub achieved: Subspace,
    /// `R_{c(s)}`.
    pub expected: Subspace,
}

/// The support subcategory `H` and the algebra re-graded by it.
#[derive(Debug, Clone)]
pub struct Support {
    /// Original indices of the objects of `H`.
    pub objects: Vec<usize>,
    /// Original indices of the morphisms of `H`.
    pub morphisms: Vec<usize>,
    pub algebra: GradedAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    groupoid: Groupoid,
    algebra: Algebra,
    degree: Vec<usize>,
    labels: Option<Vec<String>>,
    by_degree: Vec<Vec<usize>>,
}

impl GradedAlgebra {
    pub fn new(groupoid: Groupoid, algebra: Algebra, degree: Vec<usize>) -> Result<GradedAlgebra, GradedError> {
        if degree.len() != algebra.dim() {
            return Err(GradedError::DegreeLength {
                dim: algebra.dim(),
                found: degree.len(),
            });
        }
        let mut by_degree = vec![Vec::new(); groupoid.morphisms()];
        for (basis, &d) in degree.iter().enumerate() {
            if d >= groupoid.morphisms() {
                return Err(GradedError::DegreeOutOfRange { basis, degree: d });
            }
            by_degree[d].push(basis);
        }
        Ok(GradedAlgebra {
            groupoid,
            algebra,
            degree,
            labels: None,
            by_degree,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<GradedAlgebra, GradedError> {
        if labels.len() != self.dim() {
            return Err(GradedError::LabelLength {
                dim: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn unit(&self) -> &Element {
        self.algebra.unit()
    }

    pub fn degree(&self, basis: usize) -> usize {
        self.degree[basis]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, basis: usize) -> String {
        match &self.labels {
            Some(l) => l[basis].clone(),
            None => format!("b{basis}"),
        }
    }

    /// Basis index with the given label.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Basis vector by label; panics if absent.
    pub fn named(&self, label: &str) -> Element {
        let i = self.basis_index(label).unwrap_or_else(|| panic!("no basis vector {label}"));
        self.algebra.basis_element(i)
    }

    /// Renders an element as `c·label + ...`.
    pub fn render(&self, x: &Element) -> String {
        let terms: Vec<String> = x
            .support()
            .map(|i| {
                let c = &x.coeffs()[i];
                if c.is_one() {
                    self.label(i)
                } else {
                    format!("({c})·{}", self.label(i))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.algebra.mul(x, y)
    }

    pub fn try_mul(&self, x: &Element, y: &Element) -> Result<Element, GradedError> {
        Ok(self.algebra.try_mul(x, y)?)
    }

    pub fn basis_of_degree(&self, s: usize) -> &[usize] {
        &self.by_degree[s]
    }

    /// Projection of `x` onto `R_s`.
    pub fn component(&self, x: &Element, s: usize) -> Element {
        let f = self.field();
        Element::new(
            x.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if self.degree[i] == s { c.clone() } else { f.zero() })
                .collect(),
        )
    }

    /// `R_s` as a subspace.
    pub fn component_space(&self, s: usize) -> Subspace {
        let f = self.field();
        let vectors: Vec<Element> = self.by_degree[s].iter().map(|&i| self.algebra.basis_element(i)).collect();
        Subspace::span_of(f, self.dim(), vectors.iter().map(Element::coeffs))
    }

    /// Span of the components at the given degrees.
    pub fn components_space(&self, degrees: impl IntoIterator<Item = usize>) -> Subspace {
        let vectors: Vec<Element> = degrees
            .into_iter()
            .flat_map(|s| self.by_degree[s].iter().map(|&i| self.algebra.basis_element(i)))
            .collect();
        Subspace::span_of(self.field(), self.dim(), vectors.iter().map(Element::coeffs))
    }

    /// `span(R_s R_t)`.
    pub fn product_span(&self, s: usize, t: usize) -> Subspace {
        self.algebra.product_span(&self.component_space(s), &self.component_space(t))
    }

    /// `R_0`, the span of all identity-degree basis vectors.
    pub fn principal_component(&self) -> Subspace {
        let ids: Vec<usize> = (0..self.groupoid.objects())
            .filter_map(|o| self.groupoid.identity(o))
            .collect();
        self.components_space(ids)
    }

    /// Associativity, unit laws and the grading law on basis products.
    pub fn validate_grading(&self) -> GradingReport {
        let mut grading = Vec::new();
        let g = &self.groupoid;
        for &(i, j, k, _) in self.algebra.constants() {
            let (s, t) = (self.degree[i], self.degree[j]);
            match g.compose(s, t) {
                Some(st) if g.dom(s) == g.cod(t) => {
                    if self.degree[k] != st {
                        grading.push(GradingViolation::WrongDegree { i, j, k });
                    }
                }
                _ => grading.push(GradingViolation::NonComposable { i, j, k }),
            }
        }
        GradingReport {
            axioms: self.algebra.axiom_violations(),
            grading,
        }
    }

    /// `1_e` for every object `e`, after checking that the unit has no
    /// component at a non-identity degree.
    pub fn identity_decomposition(&self) -> Result<Vec<Element>, GradedError> {
        if !self.groupoid.is_cancellable() {
            return Err(GradedError::NotCancellable);
        }
        let unit = self.unit();
        for s in 0..self.groupoid.morphisms() {
            if !self.groupoid.is_identity(s) && !self.component(unit, s).is_zero() {
                return Err(GradedError::NonIdentityUnitComponent { morphism: s });
            }
        }
        Ok((0..self.groupoid.objects())
            .map(|o| match self.groupoid.identity(o) {
                Some(e) => self.component(unit, e),
                None => self.algebra.zero(),
            })
            .collect())
    }

    /// `H = {s : 1_{d(s)} ≠ 0 ≠ 1_{c(s)}}` and the algebra graded by `H`.
    pub fn support_subcategory(&self) -> Result<Support, GradedError> {
        let ones = self.identity_decomposition()?;
        let objects: Vec<usize> = (0..self.groupoid.objects()).filter(|&o| !ones[o].is_zero()).collect();
        let (h, morphisms) = self.groupoid.restrict(&objects);
        let mut remap = vec![None; self.groupoid.morphisms()];
        for (new, &old) in morphisms.iter().enumerate() {
            remap[old] = Some(new);
        }
        let degree = self
            .degree
            .iter()
            .enumerate()
            .map(|(basis, &d)| remap[d].ok_or(GradedError::OutsideSupport { basis, degree: d }))
            .collect::<Result<Vec<_>, _>>()?;
        let mut algebra = GradedAlgebra::new(h, self.algebra.clone(), degree)?;
        algebra.labels = self.labels.clone();
        Ok(Support {
            objects,
            morphisms,
            algebra,
        })
    }

    /// Strong grading through the reduction `R_s R_{s^-1} = R_{c(s)}` for
    /// every morphism `s`. Reports the first failing morphism.
    pub fn is_strongly_graded(&self) -> Result<StrongGrading, GradedError> {
        let g = &self.groupoid;
        if !g.has_inverses() {
            return Err(GradedError::MissingInverses);
        }
        for s in 0..g.morphisms() {
            let inv = g.inverse(s).unwrap();
            let achieved = self.product_span(s, inv);
            let expected = self.component_space(g.id(g.cod(s)));
            if achieved != expected {
                return Ok(StrongGrading {
                    holds: false,
                    failure: Some(StrongFailure {
                        morphism: s,
                        achieved,
                        expected,
                    }),
                });
            }
        }
        Ok(StrongGrading {
            holds: true,
            failure: None,
        })
    }

    /// `span(R_s R_t) == R_{st}` for every composable pair, in index order.
    pub fn strong_grading_by_pairs(&self) -> Vec<(usize, usize, bool)> {
        let g = &self.groupoid;
        let mut out = Vec::new();
        for s in 0..g.morphisms() {
            for t in 0..g.morphisms() {
                if let Some(st) = g.compose(s, t) {
                    out.push((s, t, self.product_span(s, t) == self.component_space(st)));
                }
            }
        }
        out
    }

    /// Copy with one basis vector removed together with every structure
    /// constant that mentions it. Used to build mutated fixtures.
    pub fn without_basis_vector(&self, removed: usize) -> Result<GradedAlgebra, GradedError> {
        let shift = |i: usize| if i > removed { i - 1 } else { i };
        let constants = self
            .algebra
            .constants()
            .iter()
            .filter(|(i, j, k, _)| ![i, j, k].contains(&&removed))
            .map(|(i, j, k, c)| (shift(*i), shift(*j), shift(*k), c.clone()))
            .collect();
        let unit: Vec<_> = self
            .unit()
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != removed)
            .map(|(_, c)| c.clone())
            .collect();
        let algebra = Algebra::new(self.field(), self.dim() - 1, constants, Element::new(unit))?;
        let degree = self
            .degree
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != removed)
            .map(|(_, d)| *d)
            .collect();
        let mut out = GradedAlgebra::new(self.groupoid.clone(), algebra, degree)?;
        if let Some(l) = &self.labels {
            out.labels = Some(l.iter().enumerate().filter(|(i, _)| *i != removed).map(|(_, s)| s.clone()).collect());
        }
        Ok(out)
    }

    /// Copy with the structure constant at `(i, j, k)` deleted.
    pub fn without_constant(&self, i: usize, j: usize, k: usize) -> Result<GradedAlgebra, GradedError> {
        let constants = self
            .algebra
            .constants()
            .iter()
            .filter(|c| (c.0, c.1, c.2) != (i, j, k))
            .cloned()
            .collect();
        let algebra = Algebra::new(self.field(), self.dim(), constants, self.unit().clone())?;
        let mut out = GradedAlgebra::new(self.groupoid.clone(), algebra, self.degree.clone())?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// The algebra with the grading and labels replaced.
    pub fn regrade(&self, groupoid: Groupoid, degree: Vec<usize>) -> Result<GradedAlgebra, GradedError> {
        let mut out = GradedAlgebra::new(groupoid, self.algebra.clone(), degree)?;
        out.labels = self.labels.clone();
        Ok(out)
    }
}

/// Group algebra `K[G]` of a one-object groupoid, basis `u_g` of degree `g`.
pub fn group_algebra(group: &Groupoid, field: Field) -> Result<GradedAlgebra, GradedError> {
    let n = group.morphisms();
    let constants = (0..n)
        .flat_map(|a| (0..n).filter_map(move |b| group.compose(a, b).map(|ab| (a, b, ab, field.one()))))
        .collect();
    let unit = Element::basis(field, n, group.id(0));
    let algebra = Algebra::new(field, n, constants, unit)?;
    let labels = (0..n).map(|g| format!("u{}", group.name(g))).collect();
    GradedAlgebra::new(group.clone(), algebra, (0..n).collect())?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{build_group, cyclic_table};

    fn kz2(f: Field) -> GradedAlgebra {
        group_algebra(&build_group(&cyclic_table(2)).unwrap(), f).unwrap()
    }

    #[test]
    fn group_algebra_is_strongly_graded() {
        let a = kz2(Field::Rational);
        assert!(a.validate_grading().is_valid());
        assert!(a.is_strongly_graded().unwrap().holds);
        assert_eq!(a.principal_component().dim(), 1);
        let ones = a.identity_decomposition().unwrap();
        assert_eq!(ones, vec![a.unit().clone()]);
    }

    #[test]
    fn components_reconstruct() {
        let a = kz2(Field::Prime(3));
        let f = a.field();
        let x = Element::new(vec![f.from_i64(2), f.from_i64(1)]);
        let sum = (0..2).fold(a.algebra().zero(), |acc, s| acc.add(&a.component(&x, s)));
        assert_eq!(sum, x);
        let h = a.algebra().basis_element(1);
        assert_eq!(a.component(&h, 1), h);
        assert!(a.component(&h, 0).is_zero());
    }

    #[test]
    fn illegal_degree_crossing_is_reported() {
        let a = kz2(Field::Rational);
        // Regrade so that u_g u_g = u_e lands in the wrong degree.
        let g = a.groupoid().clone();
        let bad = a.regrade(g, vec![1, 1]).unwrap();
        let r = bad.validate_grading();
        assert!(r.grading.iter().any(|v| matches!(v, GradingViolation::WrongDegree { .. })));
    }

    #[test]
    fn missing_inverses_is_an_error() {
        let a = kz2(Field::Rational);
        let mut fx = a.groupoid().to_fixture();
        fx.inverse = None;
        let g = Groupoid::from_fixture(&fx).unwrap();
        let b = a.regrade(g, vec![0, 1]).unwrap();
        assert_eq!(b.is_strongly_graded(), Err(GradedError::MissingInverses));
    }

    #[test]
    fn degree_validation() {
        let a = kz2(Field::Rational);
        let g = a.groupoid().clone();
        assert_eq!(
            a.regrade(g.clone(), vec![0]),
            Err(GradedError::DegreeLength { dim: 2, found: 1 })
        );
        assert_eq!(
            a.regrade(g, vec![0, 7]),
            Err(GradedError::DegreeOutOfRange { basis: 1, degree: 7 })
        );
    }
}
