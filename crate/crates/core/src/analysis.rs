//! Commutants, centers, and the σ-action that a strong grading induces on
//! the commutants of the identity components.
//!
//! The σ-maps act on the corner commutants
//! `C_e = {x ∈ 1_e R 1_e : x y = y x for all y ∈ R_e}`. Elements of the full
//! commutant `C_R(R_e)` may carry pieces outside the corner `1_e R 1_e`
//! (for instance `1_f` commutes with `R_e` when `f ≠ e`), and on those
//! pieces `x ↦ 1_e x 1_e` is not the identity, so the corner is the domain
//! on which `σ_e = id` holds.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Element;
use crate::graded::{GradedAlgebra, GradedError};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("the principal component is not commutative")]
    NonCommutativePrincipal,
    #[error("the algebra is not strongly graded at morphism {morphism}")]
    NotStronglyGraded { morphism: usize },
    #[error("the element is outside the domain of σ_{morphism}")]
    OutsideDomain { morphism: usize },
    #[error("σ_{morphism} maps a domain basis vector outside the target commutant")]
    ImageOutsideCommutant { morphism: usize, image: Element },
    #[error("section for morphism {morphism} is invalid: {reason}")]
    InvalidSection { morphism: usize, reason: String },
}

/// `{x ∈ candidates : x y = y x for every y in against}`.
fn commuting_part<'a>(a: &GradedAlgebra, candidates: &Subspace, against: impl IntoIterator<Item = &'a [Scalar]>) -> Subspace {
    let alg = a.algebra();
    let f = a.field();
    let ys: Vec<&[Scalar]> = against.into_iter().collect();
    if ys.is_empty() || candidates.is_zero() {
        return candidates.clone();
    }
    // Row k holds the commutators [v_k, y] for every y, side by side; the
    // left kernel gives the coefficient vectors of commuting combinations.
    let mut m = Matrix::zeros(f, 0, ys.len() * a.dim());
    for v in candidates.vectors() {
        let mut row = Vec::with_capacity(ys.len() * a.dim());
        for y in &ys {
            let vy = alg.mul_slices(v, y);
            let yv = alg.mul_slices(y, v);
            row.extend(vy.iter().zip(&yv).map(|(p, q)| p - q));
        }
        m.push_row(&row);
    }
    let kernel = m.transpose().nullspace();
    let mut out = Matrix::zeros(f, 0, a.dim());
    for k in 0..kernel.rows() {
        out.push_row(&candidates.combine(kernel.row(k)));
    }
    Subspace::span(&out)
}

/// `C_R(S)`: every element of the algebra commuting with all of `s`.
pub fn commutant(a: &GradedAlgebra, s: &Subspace) -> Subspace {
    commuting_part(a, &Subspace::full(a.field(), a.dim()), s.vectors())
}

/// `Z(R)`, computed as the commutant of the whole algebra.
pub fn center_direct(a: &GradedAlgebra) -> Subspace {
    commutant(a, &Subspace::full(a.field(), a.dim()))
}

/// Center of the subalgebra spanned by `s`: `s ∩ C_R(s)`.
pub fn center_of_subalgebra(a: &GradedAlgebra, s: &Subspace) -> Subspace {
    commuting_part(a, s, s.vectors())
}

/// `Z(R_0)`.
pub fn principal_center(a: &GradedAlgebra) -> Subspace {
    center_of_subalgebra(a, &a.principal_component())
}

/// Whether the span of `s` is closed under products and commutative on its
/// basis.
fn is_commutative_span(a: &GradedAlgebra, s: &Subspace) -> bool {
    let alg = a.algebra();
    let vs: Vec<&[Scalar]> = s.vectors().collect();
    vs.iter()
        .enumerate()
        .all(|(i, x)| vs[i + 1..].iter().all(|y| alg.mul_slices(x, y) == alg.mul_slices(y, x)))
}

/// Whether `R_0` equals its own commutant.
pub fn is_maximal_commutative(a: &GradedAlgebra) -> Result<bool, AnalysisError> {
    let r0 = a.principal_component();
    if !is_commutative_span(a, &r0) {
        return Err(AnalysisError::NonCommutativePrincipal);
    }
    Ok(commutant(a, &r0) == r0)
}

/// Whether `R_0` is commutative.
pub fn principal_is_commutative(a: &GradedAlgebra) -> bool {
    is_commutative_span(a, &a.principal_component())
}

/// `C_{R_s}(X) = {r ∈ R_s : r x = x r for all x ∈ X}`.
fn component_commutant(a: &GradedAlgebra, s: usize, x: &Subspace) -> Subspace {
    commuting_part(a, &a.component_space(s), x.vectors())
}

/// `C_R(R_0)` split by degree: `C_R(R_0)_s = C_R(R_0) ∩ R_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedCommutant {
    pub commutant: Subspace,
    pub components: Vec<Subspace>,
}

pub fn graded_commutant(a: &GradedAlgebra) -> GradedCommutant {
    let commutant = commutant(a, &a.principal_component());
    let components = (0..a.groupoid().morphisms())
        .map(|s| {
            commutant
                .intersect(&a.component_space(s))
                .expect("same ambient space")
        })
        .collect();
    GradedCommutant { commutant, components }
}

/// Outcome of one named structural check, with the morphisms (or pairs)
/// at which it failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
    pub failures: Vec<Vec<usize>>,
}

impl NamedCheck {
    fn new(name: &str, failures: Vec<Vec<usize>>) -> NamedCheck {
        NamedCheck {
            name: name.to_string(),
            holds: failures.is_empty(),
            failures,
        }
    }

    fn not_applicable(name: &str) -> NamedCheck {
        NamedCheck {
            name: format!("{name} (not applicable)"),
            holds: true,
            failures: Vec::new(),
        }
    }
}

/// For a graded subspace `A = ⊕_u A_u`, checks
/// `C_R(A)_s = ∩_u C_{R_s}(A_u)` for every `s`, and that
/// `C_R(A)_s C_R(A)_t` lies in `C_R(A)_{st}` (or is zero when `(s, t)` is
/// not composable).
pub fn check_commutant_of_graded(a: &GradedAlgebra, parts: &[Subspace], label: &str) -> Vec<NamedCheck> {
    let g = a.groupoid();
    let f = a.field();
    let whole = Subspace::span_of(f, a.dim(), parts.iter().flat_map(|p| p.vectors()));
    let c = commutant(a, &whole);
    let cs: Vec<Subspace> = (0..g.morphisms())
        .map(|s| c.intersect(&a.component_space(s)).expect("same ambient"))
        .collect();
    let mut fail_a = Vec::new();
    for (s, c_s) in cs.iter().enumerate() {
        let mut rhs = a.component_space(s);
        for p in parts {
            rhs = rhs.intersect(&component_commutant(a, s, p)).expect("same ambient");
        }
        if *c_s != rhs {
            fail_a.push(vec![s]);
        }
    }
    let alg = a.algebra();
    let mut fail_b = Vec::new();
    for s in 0..g.morphisms() {
        for t in 0..g.morphisms() {
            let ok = cs[s].vectors().all(|x| {
                cs[t].vectors().all(|y| {
                    let p = alg.mul_slices(x, y);
                    match g.compose(s, t) {
                        Some(st) => cs[st].contains(&p),
                        None => p.iter().all(Scalar::is_zero),
                    }
                })
            });
            if !ok {
                fail_b.push(vec![s, t]);
            }
        }
    }
    vec![
        NamedCheck::new(&format!("commutant_by_degree_{label}"), fail_a),
        NamedCheck::new(&format!("commutant_products_{label}"), fail_b),
    ]
}

/// Checks the description of `C_R(R_0)` by degree:
///
/// - the graded pieces of `C_R(A)` for `A = R_0` and `A = R`, and their
///   products;
/// - `C_R(R_0)_s = C_{R_s}(R_{d(s)})` when `c(s) = d(s)`, and otherwise
///   `{r ∈ R_s : R_{c(s)} r = r R_{d(s)} = 0}`;
/// - with `1_R ∈ R_0`, `C_R(R_0)_s = 0` whenever `c(s) ≠ d(s)`;
/// - `C_R(R_0) = ⊕_s C_R(R_0)_s`.
pub fn check_graded_commutant(a: &GradedAlgebra) -> Vec<NamedCheck> {
    let g = a.groupoid();
    let f = a.field();
    let n = g.morphisms();
    let principal: Vec<Subspace> = (0..n)
        .map(|s| {
            if g.is_identity(s) {
                a.component_space(s)
            } else {
                Subspace::zero(f, a.dim())
            }
        })
        .collect();
    let whole: Vec<Subspace> = (0..n).map(|s| a.component_space(s)).collect();
    let mut checks = check_commutant_of_graded(a, &principal, "principal");
    checks.extend(check_commutant_of_graded(a, &whole, "whole"));

    let gc = graded_commutant(a);
    let mut fail_c = Vec::new();
    for s in 0..n {
        let (c, d) = (g.cod(s), g.dom(s));
        let expected = if c == d {
            match g.identity(d) {
                Some(e) => component_commutant(a, s, &a.component_space(e)),
                None => a.component_space(s),
            }
        } else {
            annihilated_part(a, s)
        };
        if gc.components[s] != expected {
            fail_c.push(vec![s]);
        }
    }
    checks.push(NamedCheck::new("commutant_degree_formula", fail_c));

    let unit_in_principal = a.principal_component().contains(a.unit().coeffs());
    if unit_in_principal {
        let fail_d = (0..n)
            .filter(|&s| g.cod(s) != g.dom(s) && !gc.components[s].is_zero())
            .map(|s| vec![s])
            .collect();
        checks.push(NamedCheck::new("commutant_off_diagonal_zero", fail_d));
    } else {
        checks.push(NamedCheck::not_applicable("commutant_off_diagonal_zero"));
    }

    let sum = Subspace::span_of(f, a.dim(), gc.components.iter().flat_map(|c| c.vectors()));
    let graded = if sum == gc.commutant { Vec::new() } else { vec![vec![]] };
    checks.push(NamedCheck::new("commutant_is_graded", graded));
    checks
}

/// `{r ∈ R_s : R_{c(s)} r = 0 and r R_{d(s)} = 0}`, the description of
/// `C_R(R_0)_s` for `c(s) ≠ d(s)` that makes no use of a unit.
fn annihilated_part(a: &GradedAlgebra, s: usize) -> Subspace {
    let g = a.groupoid();
    let alg = a.algebra();
    let f = a.field();
    let rs = a.component_space(s);
    let left = g.identity(g.cod(s)).map(|e| a.component_space(e));
    let right = g.identity(g.dom(s)).map(|e| a.component_space(e));
    let mut rows = Vec::new();
    for v in rs.vectors() {
        let mut row = Vec::new();
        if let Some(l) = &left {
            for y in l.vectors() {
                row.extend(alg.mul_slices(y, v));
            }
        }
        if let Some(r) = &right {
            for y in r.vectors() {
                row.extend(alg.mul_slices(v, y));
            }
        }
        rows.push(row);
    }
    if rows.first().is_none_or(|r| r.is_empty()) {
        return rs;
    }
    let width = rows[0].len();
    let m = Matrix::from_rows(f, width, rows).expect("rows of equal width");
    let kernel = m.transpose().nullspace();
    let mut out = Matrix::zeros(f, 0, a.dim());
    for k in 0..kernel.rows() {
        out.push_row(&rs.combine(kernel.row(k)));
    }
    Subspace::span(&out)
}

/// Checks the four parts of the unit and support lemma for gradings by a
/// cancellable category:
///
/// - the unit lies in `R_0`;
/// - `H = {s : 1_{d(s)} ≠ 0 ≠ 1_{c(s)}}` is a subcategory carrying the
///   whole algebra;
/// - `H` is closed under inverses when the grading category has them;
/// - for every invertible `s`, `R_s R_{s^-1} = R_{c(s)}` exactly when
///   `R_s R_t = R_{st}` for every `t` with `d(s) = c(t)`.
pub fn check_unit_lemma(a: &GradedAlgebra) -> Vec<NamedCheck> {
    let g = a.groupoid();
    if !g.is_cancellable() {
        return ["unit_in_principal", "support_subcategory", "support_inverses", "strong_reduction"]
            .iter()
            .map(|n| NamedCheck::not_applicable(n))
            .collect();
    }
    let mut checks = Vec::new();
    let ones = a.identity_decomposition();
    let unit_ok = match &ones {
        Ok(parts) => {
            let sum = parts.iter().fold(a.algebra().zero(), |acc, x| acc.add(x));
            sum == *a.unit()
        }
        Err(_) => false,
    };
    checks.push(NamedCheck::new("unit_in_principal", if unit_ok { vec![] } else { vec![vec![]] }));

    let Ok(ones) = ones else {
        checks.push(NamedCheck::new("support_subcategory", vec![vec![]]));
        return checks;
    };
    let in_h = |s: usize| !ones[g.dom(s)].is_zero() && !ones[g.cod(s)].is_zero();
    let mut fail_b = Vec::new();
    for s in (0..g.morphisms()).filter(|&s| in_h(s)) {
        for t in (0..g.morphisms()).filter(|&t| in_h(t)) {
            if let Some(st) = g.compose(s, t) {
                if !in_h(st) {
                    fail_b.push(vec![s, t]);
                }
            }
        }
    }
    for b in 0..a.dim() {
        if !in_h(a.degree(b)) {
            fail_b.push(vec![a.degree(b)]);
        }
    }
    checks.push(NamedCheck::new("support_subcategory", fail_b));

    if g.has_inverses() {
        let fail_c = (0..g.morphisms())
            .filter(|&s| in_h(s) && !in_h(g.inverse(s).unwrap()))
            .map(|s| vec![s])
            .collect();
        checks.push(NamedCheck::new("support_inverses", fail_c));
        let mut fail_d = Vec::new();
        for s in 0..g.morphisms() {
            let inv = g.inverse(s).unwrap();
            let reduced = a.product_span(s, inv) == a.component_space(g.id(g.cod(s)));
            let full = (0..g.morphisms())
                .filter_map(|t| g.compose(s, t).map(|st| (t, st)))
                .all(|(t, st)| a.product_span(s, t) == a.component_space(st));
            if reduced != full {
                fail_d.push(vec![s]);
            }
        }
        checks.push(NamedCheck::new("strong_reduction", fail_d));
    } else {
        checks.push(NamedCheck::not_applicable("support_inverses"));
        checks.push(NamedCheck::not_applicable("strong_reduction"));
    }
    checks
}

/// `1_e R 1_e`, the span of the components `R_s` with `c(s) = d(s) = e`.
pub fn corner(a: &GradedAlgebra, object: usize) -> Subspace {
    let g = a.groupoid();
    a.components_space((0..g.morphisms()).filter(|&s| g.cod(s) == object && g.dom(s) == object))
}

/// `C_e`: elements of the corner `1_e R 1_e` commuting with `R_e`.
pub fn corner_commutant(a: &GradedAlgebra, object: usize) -> Subspace {
    let re = identity_component(a, object);
    commuting_part(a, &corner(a, object), re.vectors())
}

/// `Z(R_e)`.
pub fn identity_center(a: &GradedAlgebra, object: usize) -> Subspace {
    center_of_subalgebra(a, &identity_component(a, object))
}

fn identity_component(a: &GradedAlgebra, object: usize) -> Subspace {
    match a.groupoid().identity(object) {
        Some(e) => a.component_space(e),
        None => Subspace::zero(a.field(), a.dim()),
    }
}

/// Pairs `(a_i, b_i)` with `a_i ∈ R_s`, `b_i ∈ R_{s^-1}` and
/// `Σ a_i b_i = 1_{c(s)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaSection {
    pub morphism: usize,
    pub pairs: Vec<(Element, Element)>,
}

impl SigmaSection {
    /// Validates degrees and the sum condition.
    pub fn new(a: &GradedAlgebra, morphism: usize, pairs: Vec<(Element, Element)>) -> Result<SigmaSection, AnalysisError> {
        let g = a.groupoid();
        let inv = g.inverse(morphism).ok_or(GradedError::MissingInverses)?;
        let invalid = |reason: &str| AnalysisError::InvalidSection {
            morphism,
            reason: reason.to_string(),
        };
        let (rs, rinv) = (a.component_space(morphism), a.component_space(inv));
        let mut sum = a.algebra().zero();
        for (x, y) in &pairs {
            a.algebra().check_element(x).map_err(GradedError::from)?;
            a.algebra().check_element(y).map_err(GradedError::from)?;
            if !rs.contains(x.coeffs()) || !rinv.contains(y.coeffs()) {
                return Err(invalid("a pair is not homogeneous of degrees (s, s^-1)"));
            }
            sum = sum.add(&a.mul(x, y));
        }
        let one = a.component(a.unit(), g.id(g.cod(morphism)));
        if sum != one {
            return Err(invalid("the products do not sum to 1_c(s)"));
        }
        Ok(SigmaSection { morphism, pairs })
    }

    /// `Σ a_i x b_i`.
    pub fn apply(&self, a: &GradedAlgebra, x: &Element) -> Element {
        self.pairs
            .iter()
            .fold(a.algebra().zero(), |acc, (p, q)| acc.add(&a.mul(&a.mul(p, x), q)))
    }
}

/// The linear system `Σ c_ij (r_i r'_j) = 1_{c(s)}` over basis vectors
/// `r_i` of `R_s` and `r'_j` of `R_{s^-1}`: its matrix (one column per
/// unknown), the unknown index pairs and the right-hand side.
fn section_system(a: &GradedAlgebra, s: usize) -> (Matrix, Vec<(usize, usize)>, Vec<Scalar>) {
    let g = a.groupoid();
    let inv = g.inverse(s).expect("checked by caller");
    let unknowns: Vec<(usize, usize)> = a
        .basis_of_degree(s)
        .iter()
        .flat_map(|&i| a.basis_of_degree(inv).iter().map(move |&j| (i, j)))
        .collect();
    let alg = a.algebra();
    let mut columns = Matrix::zeros(a.field(), 0, a.dim());
    for &(i, j) in &unknowns {
        columns.push_row(&alg.mul(&alg.basis_element(i), &alg.basis_element(j)).into_coeffs());
    }
    let target = a.component(a.unit(), g.id(g.cod(s))).into_coeffs();
    (columns.transpose(), unknowns, target)
}

fn section_from_coefficients(a: &GradedAlgebra, s: usize, unknowns: &[(usize, usize)], c: &[Scalar]) -> SigmaSection {
    let alg = a.algebra();
    let mut pairs: Vec<(Element, Element)> = Vec::new();
    for &i in a.basis_of_degree(s) {
        let partner = unknowns
            .iter()
            .zip(c)
            .filter(|((ii, _), _)| *ii == i)
            .fold(alg.zero(), |acc, ((_, j), k)| acc.add(&alg.basis_element(*j).scale(k)));
        if !partner.is_zero() {
            pairs.push((alg.basis_element(i), partner));
        }
    }
    SigmaSection { morphism: s, pairs }
}

/// The canonical section: `(1_e, 1_e)` for an identity `e`, otherwise the
/// solution of the section system with every free coefficient zero.
pub fn find_sigma_section(a: &GradedAlgebra, s: usize) -> Result<SigmaSection, AnalysisError> {
    let g = a.groupoid();
    if !g.has_inverses() {
        return Err(GradedError::MissingInverses.into());
    }
    if g.is_identity(s) {
        let one = a.component(a.unit(), s);
        return Ok(SigmaSection {
            morphism: s,
            pairs: vec![(one.clone(), one)],
        });
    }
    let (m, unknowns, target) = section_system(a, s);
    let c = m.solve(&target).ok_or(AnalysisError::NotStronglyGraded { morphism: s })?;
    Ok(section_from_coefficients(a, s, &unknowns, &c))
}

/// A second section for the independence test: the rref solution shifted by
/// the first kernel vector of the section system, or for an identity the
/// rref solution itself. `None` when no distinct solution exists.
pub fn alternate_sigma_section(a: &GradedAlgebra, s: usize) -> Result<Option<SigmaSection>, AnalysisError> {
    let g = a.groupoid();
    if !g.has_inverses() {
        return Err(GradedError::MissingInverses.into());
    }
    let (m, unknowns, target) = section_system(a, s);
    let c = m.solve(&target).ok_or(AnalysisError::NotStronglyGraded { morphism: s })?;
    let kernel = m.nullspace();
    if kernel.rows() > 0 {
        let shifted: Vec<Scalar> = c.iter().zip(kernel.row(0)).map(|(x, y)| x + y).collect();
        return Ok(Some(section_from_coefficients(a, s, &unknowns, &shifted)));
    }
    if g.is_identity(s) {
        return Ok(Some(section_from_coefficients(a, s, &unknowns, &c)));
    }
    Ok(None)
}

/// The σ-action: one section per morphism, the corner commutants `C_e`,
/// and for each `s` the matrix of `σ_s : C_{d(s)} → C_{c(s)}` in their
/// rref bases (rows are images of domain basis vectors).
#[derive(Debug, Clone)]
pub struct SigmaAction<'a> {
    algebra: &'a GradedAlgebra,
    sections: Vec<SigmaSection>,
    domains: Vec<Subspace>,
    matrices: Vec<Matrix>,
}

impl<'a> SigmaAction<'a> {
    pub fn new(a: &'a GradedAlgebra) -> Result<SigmaAction<'a>, AnalysisError> {
        let strong = a.is_strongly_graded()?;
        if let Some(fail) = strong.failure {
            return Err(AnalysisError::NotStronglyGraded { morphism: fail.morphism });
        }
        let g = a.groupoid();
        let domains: Vec<Subspace> = (0..g.objects()).map(|o| corner_commutant(a, o)).collect();
        let sections = (0..g.morphisms())
            .map(|s| find_sigma_section(a, s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut matrices = Vec::with_capacity(g.morphisms());
        for (s, section) in sections.iter().enumerate() {
            let (src, dst) = (&domains[g.dom(s)], &domains[g.cod(s)]);
            let mut m = Matrix::zeros(a.field(), 0, dst.dim());
            for x in src.vectors() {
                let image = section.apply(a, &Element::new(x.to_vec()));
                let coords = dst
                    .coordinates(image.coeffs())
                    .ok_or(AnalysisError::ImageOutsideCommutant { morphism: s, image })?;
                m.push_row(&coords);
            }
            matrices.push(m);
        }
        Ok(SigmaAction {
            algebra: a,
            sections,
            domains,
            matrices,
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        self.algebra
    }

    pub fn section(&self, s: usize) -> &SigmaSection {
        &self.sections[s]
    }

    /// `C_e` for the object `e`.
    pub fn domain(&self, object: usize) -> &Subspace {
        &self.domains[object]
    }

    pub fn matrix(&self, s: usize) -> &Matrix {
        &self.matrices[s]
    }

    /// `σ_s(x) = Σ a_i x b_i` for `x ∈ C_{d(s)}`.
    pub fn apply(&self, s: usize, x: &Element) -> Result<Element, AnalysisError> {
        let d = self.algebra.groupoid().dom(s);
        if x.len() != self.algebra.dim() || !self.domains[d].contains(x.coeffs()) {
            return Err(AnalysisError::OutsideDomain { morphism: s });
        }
        Ok(self.sections[s].apply(self.algebra, x))
    }
}

/// `σ_s(x)` using the canonical sections.
pub fn sigma_apply(act: &SigmaAction<'_>, s: usize, x: &Element) -> Result<Element, AnalysisError> {
    act.apply(s, x)
}

/// One σ-functor check at a morphism or pair, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub name: String,
    pub morphisms: Vec<usize>,
    pub passed: bool,
    pub witness: Option<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndependenceStatus {
    /// Two distinct sections were compared.
    Checked,
    /// The section system has a unique solution, so there is nothing to
    /// compare.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionIndependence {
    pub morphism: usize,
    pub status: IndependenceStatus,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub passed: bool,
    pub checks: Vec<SigmaCheck>,
    pub independence: Vec<SectionIndependence>,
}

impl SigmaReport {
    /// Whether every check of the given name passed.
    pub fn all_pass(&self, name: &str) -> bool {
        self.checks.iter().filter(|c| c.name == name).all(|c| c.passed)
    }
}

fn check(name: &str, morphisms: Vec<usize>, witness: Option<Element>) -> SigmaCheck {
    SigmaCheck {
        name: name.to_string(),
        morphisms,
        passed: witness.is_none(),
        witness,
    }
}

/// Verifies the σ-action on a strongly graded algebra, on bases of the
/// corner commutants:
///
/// - `commutant_closure`: `σ_s` maps `C_{d(s)}` into `C_{c(s)}`;
/// - `center_closure`: `σ_s` maps `Z(R_{d(s)})` into `Z(R_{c(s)})`;
/// - `identity`: `σ_e` is the identity map;
/// - `unital`: `σ_s(1_{d(s)}) = 1_{c(s)}`;
/// - `composition`: `σ_{st} = σ_s ∘ σ_t` for composable pairs;
/// - `multiplicative`: `σ_s(xy) = σ_s(x) σ_s(y)`;
/// - `characterization`: `σ_s(x) r = r x` for basis `r` of `R_s`, and
///   `σ_s(x) 1_{c(s)} = σ_s(x)`;
///
/// plus independence of the chosen section.
pub fn check_sigma_functor(a: &GradedAlgebra) -> Result<SigmaReport, AnalysisError> {
    let g = a.groupoid();
    let strong = a.is_strongly_graded()?;
    if let Some(fail) = strong.failure {
        return Err(AnalysisError::NotStronglyGraded { morphism: fail.morphism });
    }
    let alg = a.algebra();
    let domains: Vec<Subspace> = (0..g.objects()).map(|o| corner_commutant(a, o)).collect();
    let centers: Vec<Subspace> = (0..g.objects()).map(|o| identity_center(a, o)).collect();
    let sections = (0..g.morphisms())
        .map(|s| find_sigma_section(a, s))
        .collect::<Result<Vec<_>, _>>()?;
    let basis = |sub: &Subspace| -> Vec<Element> { sub.vectors().map(|v| Element::new(v.to_vec())).collect() };
    let mut checks = Vec::new();

    for s in 0..g.morphisms() {
        let (d, c) = (g.dom(s), g.cod(s));
        let bad = basis(&domains[d])
            .into_iter()
            .map(|x| sections[s].apply(a, &x))
            .find(|y| !domains[c].contains(y.coeffs()));
        checks.push(check("commutant_closure", vec![s], bad));
        let bad = basis(&centers[d])
            .into_iter()
            .map(|x| sections[s].apply(a, &x))
            .find(|y| !centers[c].contains(y.coeffs()));
        checks.push(check("center_closure", vec![s], bad));
    }
    if checks.iter().any(|c| !c.passed) {
        return Ok(SigmaReport {
            passed: false,
            checks,
            independence: Vec::new(),
        });
    }
    let act = SigmaAction::new(a)?;

    for o in 0..g.objects() {
        let Some(e) = g.identity(o) else { continue };
        let m = act.matrix(e);
        let bad = (*m != Matrix::identity(a.field(), m.rows())).then(|| {
            let k = (0..m.rows())
                .find(|&k| (0..m.cols()).any(|l| *m.get(k, l) != if k == l { a.field().one() } else { a.field().zero() }))
                .expect("some row differs");
            Element::new(domains[o].basis().row(k).to_vec())
        });
        checks.push(check("identity", vec![e], bad));
    }
    for s in 0..g.morphisms() {
        let one_d = a.component(a.unit(), g.id(g.dom(s)));
        let one_c = a.component(a.unit(), g.id(g.cod(s)));
        let image = sections[s].apply(a, &one_d);
        checks.push(check("unital", vec![s], (image != one_c).then_some(image)));
    }
    for s in 0..g.morphisms() {
        for t in 0..g.morphisms() {
            let Some(st) = g.compose(s, t) else { continue };
            let composed = act.matrix(t).mul(act.matrix(s)).expect("shapes agree");
            let bad = (composed != *act.matrix(st)).then(|| {
                let k = (0..composed.rows())
                    .find(|&k| composed.row(k) != act.matrix(st).row(k))
                    .expect("some row differs");
                Element::new(domains[g.dom(t)].basis().row(k).to_vec())
            });
            checks.push(check("composition", vec![s, t], bad));
        }
    }
    for s in 0..g.morphisms() {
        let dom = basis(&domains[g.dom(s)]);
        let mut bad = None;
        'outer: for x in &dom {
            for y in &dom {
                let lhs = sections[s].apply(a, &a.mul(x, y));
                let rhs = a.mul(&sections[s].apply(a, x), &sections[s].apply(a, y));
                if lhs != rhs {
                    bad = Some(x.clone());
                    break 'outer;
                }
            }
        }
        checks.push(check("multiplicative", vec![s], bad));
    }
    for s in 0..g.morphisms() {
        let one_c = a.component(a.unit(), g.id(g.cod(s)));
        let bad = basis(&domains[g.dom(s)]).into_iter().find(|x| {
            let sx = sections[s].apply(a, x);
            a.mul(&sx, &one_c) != sx
                || a.basis_of_degree(s).iter().any(|&r| {
                    let r = alg.basis_element(r);
                    a.mul(&sx, &r) != a.mul(&r, x)
                })
        });
        checks.push(check("characterization", vec![s], bad));
    }

    let mut independence = Vec::new();
    for s in 0..g.morphisms() {
        match alternate_sigma_section(a, s)? {
            Some(alt) => {
                let same = basis(&domains[g.dom(s)])
                    .iter()
                    .all(|x| alt.apply(a, x) == sections[s].apply(a, x));
                independence.push(SectionIndependence {
                    morphism: s,
                    status: IndependenceStatus::Checked,
                    passed: same,
                });
            }
            None => independence.push(SectionIndependence {
                morphism: s,
                status: IndependenceStatus::Vacuous,
                passed: true,
            }),
        }
    }
    let passed = checks.iter().all(|c| c.passed) && independence.iter().all(|i| i.passed);
    Ok(SigmaReport {
        passed,
        checks,
        independence,
    })
}

/// The center as the set of `Σ_e x_e` with `x_e ∈ C_e` and
/// `σ_s(x_{d(s)}) = x_{c(s)}` for every morphism `s`.
pub fn center_via_sigma(a: &GradedAlgebra) -> Result<Subspace, AnalysisError> {
    let act = SigmaAction::new(a)?;
    let g = a.groupoid();
    let f = a.field();
    let mut offsets = Vec::with_capacity(g.objects());
    let mut total = 0;
    for o in 0..g.objects() {
        offsets.push(total);
        total += act.domain(o).dim();
    }
    // One column per scalar equation coords(x_d)·M_s - coords(x_c) = 0; the
    // solutions are the left kernel of the coefficient matrix.
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for s in 0..g.morphisms() {
        let (d, c) = (g.dom(s), g.cod(s));
        let m = act.matrix(s);
        for l in 0..act.domain(c).dim() {
            let mut col = vec![f.zero(); total];
            for k in 0..act.domain(d).dim() {
                col[offsets[d] + k] = m.get(k, l).clone();
            }
            col[offsets[c] + l] = &col[offsets[c] + l] - &f.one();
            columns.push(col);
        }
    }
    let solutions = if columns.is_empty() {
        Matrix::identity(f, total)
    } else {
        Matrix::from_rows(f, total, columns).expect("rectangular").nullspace()
    };
    let mut out = Matrix::zeros(f, 0, a.dim());
    for k in 0..solutions.rows() {
        let v = solutions.row(k);
        let mut x = vec![f.zero(); a.dim()];
        for o in 0..g.objects() {
            let piece = act.domain(o).combine(&v[offsets[o]..offsets[o] + act.domain(o).dim()]);
            for (xi, p) in x.iter_mut().zip(piece) {
                *xi = &*xi + &p;
            }
        }
        out.push_row(&x);
    }
    Ok(Subspace::span(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Field;

    fn span_of_labels(a: &GradedAlgebra, sums: &[&[&str]]) -> Subspace {
        let vs: Vec<Element> = sums
            .iter()
            .map(|labels| labels.iter().fold(a.algebra().zero(), |acc, l| acc.add(&a.named(l))))
            .collect();
        Subspace::span_of(a.field(), a.dim(), vs.iter().map(Element::coeffs))
    }

    /// Brute-force centralizer: test each basis vector and each pair sum of
    /// matrix units against every basis vector of `against`.
    fn commuting_units(a: &GradedAlgebra, against: &Subspace) -> Vec<String> {
        (0..a.dim())
            .filter(|&i| {
                let x = a.algebra().basis_element(i);
                against.vectors().all(|y| {
                    let y = Element::new(y.to_vec());
                    a.mul(&x, &y) == a.mul(&y, &x)
                })
            })
            .map(|i| a.label(i))
            .collect()
    }

    #[test]
    fn rex_center_is_two_dimensional() {
        let a = catalog::rex(Field::Rational);
        let z = center_direct(&a);
        assert_eq!(z, span_of_labels(&a, &[&["e11", "e22"], &["e33", "e44", "e55"]]));
        assert_eq!(center_via_sigma(&a).unwrap(), z);
    }

    #[test]
    fn rex_commutant_of_principal_component() {
        let a = catalog::rex(Field::Rational);
        let c = commutant(&a, &a.principal_component());
        // Among single matrix units only the diagonal ones outside the 2x2
        // block on {4, 5} commute with R_0.
        assert_eq!(commuting_units(&a, &a.principal_component()), vec!["e11", "e22", "e33"]);
        assert_eq!(c, span_of_labels(&a, &[&["e11"], &["e22"], &["e33"], &["e44", "e55"]]));
        assert!(matches!(is_maximal_commutative(&a), Err(AnalysisError::NonCommutativePrincipal)));
        let gc = graded_commutant(&a);
        for s in [1, 2] {
            assert!(gc.components[s].is_zero());
        }
    }

    #[test]
    fn swap_algebra_is_maximal_commutative_with_scalar_center() {
        let a = catalog::skew_swap(Field::Rational).build().unwrap();
        assert!(is_maximal_commutative(&a).unwrap());
        assert_eq!(center_direct(&a).dim(), 1);
        assert!(graded_commutant(&a).components[1].is_zero());
        assert_eq!(center_via_sigma(&a).unwrap(), center_direct(&a));
    }

    #[test]
    fn group_algebra_is_not_maximal_commutative() {
        let a = catalog::kz2(Field::Prime(3));
        assert!(!is_maximal_commutative(&a).unwrap());
        let gc = graded_commutant(&a);
        assert_eq!(gc.components[0].dim(), 1);
        assert_eq!(gc.components[1].dim(), 1);
        assert_eq!(center_direct(&a).dim(), 2);
    }

    #[test]
    fn rex_sections() {
        let a = catalog::rex(Field::Rational);
        let sec = find_sigma_section(&a, 1).unwrap();
        let expected = vec![
            (a.named("e12"), a.named("e21")),
            (a.named("e34"), a.named("e43")),
        ];
        assert_eq!(sec.pairs, expected);
        let e = find_sigma_section(&a, 0).unwrap();
        assert_eq!(e.pairs.len(), 1);
        assert_eq!(e.pairs[0].0, a.named("e11").add(&a.named("e33")));
        let alt = alternate_sigma_section(&a, 1).unwrap().unwrap();
        assert_ne!(alt, sec);
        assert!(SigmaSection::new(&a, 1, alt.pairs.clone()).is_ok());
    }

    #[test]
    fn rex_sigma_of_e22() {
        let a = catalog::rex(Field::Rational);
        let act = SigmaAction::new(&a).unwrap();
        let y = sigma_apply(&act, 1, &a.named("e22")).unwrap();
        assert_eq!(y, a.named("e11"));
        let err = sigma_apply(&act, 1, &a.named("e11")).unwrap_err();
        assert_eq!(err, AnalysisError::OutsideDomain { morphism: 1 });
    }

    #[test]
    fn swap_sigma_swaps_coordinates() {
        let a = catalog::skew_swap(Field::Rational).build().unwrap();
        let act = SigmaAction::new(&a).unwrap();
        let x = a.algebra().basis_element(0);
        assert_eq!(sigma_apply(&act, 1, &x).unwrap(), a.algebra().basis_element(1));
    }

    #[test]
    fn corrupted_section_is_rejected() {
        let a = catalog::rex(Field::Rational);
        let bad = vec![(a.named("e12"), a.named("e21"))];
        assert!(matches!(
            SigmaSection::new(&a, 1, bad),
            Err(AnalysisError::InvalidSection { morphism: 1, .. })
        ));
    }

    #[test]
    fn functor_checks_pass() {
        for a in [
            catalog::rex(Field::Rational),
            catalog::rex(Field::Prime(2)),
            catalog::kz2(Field::Rational),
            catalog::skew_swap(Field::Prime(2)).build().unwrap(),
            catalog::skew_g2(Field::Prime(3)).build().unwrap(),
        ] {
            let r = check_sigma_functor(&a).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn structural_checks_hold_on_examples() {
        for a in [
            catalog::rex(Field::Rational),
            catalog::kz2(Field::Prime(2)),
            catalog::skew_swap(Field::Rational).build().unwrap(),
        ] {
            for c in check_graded_commutant(&a).into_iter().chain(check_unit_lemma(&a)) {
                assert!(c.holds, "{c:?}");
            }
        }
    }

    #[test]
    fn weak_grading_has_no_section() {
        let a = catalog::crossed_scalar_twist(Field::Rational, 0).build().unwrap();
        assert_eq!(
            find_sigma_section(&a, 1).unwrap_err(),
            AnalysisError::NotStronglyGraded { morphism: 1 }
        );
    }
}
