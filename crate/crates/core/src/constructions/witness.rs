use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::graded::GradedAlgebra;
use crate::groupoid::Groupoid;
use crate::scalar::Field;

use super::{build_matrix_graded, is_free_rank_one, ConstructionError, Freeness, MatrixGradingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// One object and only its identity: the ring is the field itself.
    Trivial,
    /// One object with a nonidentity morphism.
    Group,
    /// Two or more objects.
    Connected,
}

/// What was built for one connected component, in original indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub kind: ComponentKind,
    /// The section `s_1..s_{n+1}` handed to the matrix construction.
    pub section: Vec<usize>,
    /// `dim R_s` for every morphism of the component.
    pub component_dims: Vec<(usize, usize)>,
    /// The chosen base object `e = c(t_1)`.
    pub base_object: usize,
    /// Number of morphisms with domain `e`, written `m` when the dimension
    /// count `dim R_e = m + 3`, `dim R_{t_1} = m + 1` is stated.
    pub morphisms_from_base: usize,
    /// First morphism whose component is not free of rank one over
    /// `R_{c(s)}`, together with the verdict.
    pub non_free_witness: Option<(usize, Freeness)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub field: String,
    pub dim: usize,
    pub strongly_graded: bool,
    /// Every component with a nonidentity morphism has a non-free degree.
    pub non_free_witness_present: bool,
    pub components: Vec<ComponentReport>,
}

/// Section for one connected component, in local morphism indices, plus the
/// base object and the component kind.
fn section_for(g: &Groupoid) -> (Vec<usize>, usize, ComponentKind) {
    let m = g.morphisms();
    if g.objects() == 1 {
        let e = g.id(0);
        if m == 1 {
            return (vec![e], 0, ComponentKind::Trivial);
        }
        let mut section: Vec<usize> = (0..m).filter(|&s| s != e).collect();
        section.extend([e, e]);
        return (section, 0, ComponentKind::Group);
    }
    let t1 = (0..m).find(|&s| g.dom(s) != g.cod(s)).expect("connected with two objects");
    let base = g.cod(t1);
    let e = g.id(base);
    let mut section = vec![t1];
    section.extend((0..m).filter(|&s| s != t1 && s != e));
    section.extend([e, e]);
    (section, base, ComponentKind::Connected)
}

/// Block-diagonal sum of algebras, with basis offsets in order.
fn direct_sum(field: Field, parts: &[&Algebra]) -> Result<Algebra, ConstructionError> {
    let dim: usize = parts.iter().map(|a| a.dim()).sum();
    let mut constants = Vec::new();
    let mut unit = Vec::with_capacity(dim);
    let mut offset = 0;
    for a in parts {
        constants.extend(
            a.constants()
                .iter()
                .map(|(i, j, k, c)| (i + offset, j + offset, k + offset, c.clone())),
        );
        unit.extend(a.unit().coeffs().iter().cloned());
        offset += a.dim();
    }
    Ok(Algebra::new(field, dim, constants, Element::new(unit))?)
}

/// A ring strongly graded by `g` in which some component is not free of
/// rank one, assembled component by component from the matrix construction.
///
/// For a component with two or more objects, `t_1` is the lowest-index
/// morphism between distinct objects, `e = c(t_1)`, the remaining
/// non-identity-of-`e` morphisms follow in index order, and the identity
/// of `e` closes the list twice. A one-object group uses all of its
/// elements with the identity repeated. A lone identity gives the field.
pub fn build_theorem5_witness(g: &Groupoid, field: Field) -> Result<(GradedAlgebra, WitnessReport), ConstructionError> {
    g.require_valid_groupoid()?;
    if (0..g.morphisms()).all(|s| g.is_identity(s)) {
        return Err(ConstructionError::NoNonIdentityMorphism);
    }
    let mut built = Vec::new();
    let mut reports = Vec::new();
    for comp in g.connected_components()? {
        let local = &comp.groupoid;
        let (section, base, kind) = section_for(local);
        let a = build_matrix_graded(&MatrixGradingSpec {
            groupoid: local.clone(),
            field,
            section: section.clone(),
        })?;
        let component_dims = (0..local.morphisms())
            .map(|s| (comp.morphisms[s], a.basis_of_degree(s).len()))
            .collect();
        let non_free_witness = if kind == ComponentKind::Trivial {
            None
        } else {
            (0..local.morphisms())
                .map(|s| (s, is_free_rank_one(&a, s)))
                .find(|(_, v)| v.decided() == Some(false))
                .map(|(s, v)| (comp.morphisms[s], v))
        };
        reports.push(ComponentReport {
            objects: comp.objects.clone(),
            morphisms: comp.morphisms.clone(),
            kind,
            section: section.iter().map(|&s| comp.morphisms[s]).collect(),
            component_dims,
            base_object: comp.objects[base],
            morphisms_from_base: (0..local.morphisms()).filter(|&s| local.dom(s) == base).count(),
            non_free_witness,
        });
        built.push((comp, a));
    }
    let algebra = direct_sum(field, &built.iter().map(|(_, a)| a.algebra()).collect::<Vec<_>>())?;
    let several = built.len() > 1;
    let mut degree = Vec::with_capacity(algebra.dim());
    let mut labels = Vec::with_capacity(algebra.dim());
    for (idx, (comp, a)) in built.iter().enumerate() {
        for b in 0..a.dim() {
            degree.push(comp.morphisms[a.degree(b)]);
            labels.push(if several { format!("c{idx}.{}", a.label(b)) } else { a.label(b) });
        }
    }
    let out = GradedAlgebra::new(g.clone(), algebra, degree)?.with_labels(labels)?;
    let strongly_graded = out.is_strongly_graded()?.holds;
    let non_free_witness_present = reports
        .iter()
        .filter(|r| r.kind != ComponentKind::Trivial)
        .all(|r| r.non_free_witness.is_some());
    let report = WitnessReport {
        field: field.to_string(),
        dim: out.dim(),
        strongly_graded,
        non_free_witness_present,
        components: reports,
    };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{build_group, build_thin_connected, cyclic_table, disjoint_union};

    #[test]
    fn g2_section_and_dimensions() {
        let g = build_thin_connected(2).unwrap();
        let (a, report) = build_theorem5_witness(&g, Field::Prime(2)).unwrap();
        let c = &report.components[0];
        // t_1 = s, then t and f, then e twice.
        assert_eq!(c.section, vec![1, 2, 3, 0, 0]);
        assert_eq!(c.component_dims, vec![(0, 5), (1, 3), (2, 3), (3, 2)]);
        assert_eq!(c.morphisms_from_base, 2);
        assert!(report.strongly_graded);
        assert!(report.non_free_witness_present);
        assert!(a.validate_grading().is_valid());
    }

    #[test]
    fn group_component_dimensions() {
        let g = build_group(&cyclic_table(2)).unwrap();
        let (a, report) = build_theorem5_witness(&g, Field::Rational).unwrap();
        // Section (g, e, e): R_e holds e11 and the 2x2 block on the two
        // copies of e, R_g the four units pairing g with a copy of e.
        assert_eq!(report.components[0].component_dims, vec![(0, 5), (1, 4)]);
        assert_eq!(a.dim(), 9);
        assert!(report.strongly_graded);
        assert_eq!(
            report.components[0].non_free_witness.as_ref().map(|w| w.0),
            Some(1)
        );
    }

    #[test]
    fn only_identities_is_rejected() {
        let t = build_group(&cyclic_table(1)).unwrap();
        let g = disjoint_union(&[t.clone(), t]).unwrap();
        assert_eq!(
            build_theorem5_witness(&g, Field::Prime(2)).unwrap_err(),
            ConstructionError::NoNonIdentityMorphism
        );
    }

    #[test]
    fn trivial_component_is_the_field() {
        let t = build_group(&cyclic_table(1)).unwrap();
        let g = disjoint_union(&[t, build_thin_connected(2).unwrap()]).unwrap();
        let (a, report) = build_theorem5_witness(&g, Field::Prime(2)).unwrap();
        assert_eq!(report.components[0].kind, ComponentKind::Trivial);
        assert_eq!(report.components[0].component_dims, vec![(0, 1)]);
        assert_eq!(a.dim(), 1 + 13);
        assert!(report.strongly_graded);
        assert!(report.non_free_witness_present);
    }
}
