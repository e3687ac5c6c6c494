use crate::algebra::{Algebra, Element};
use crate::graded::GradedAlgebra;
use crate::groupoid::Groupoid;
use crate::scalar::Field;

use super::ConstructionError;

/// Data for the graded subalgebra of `M_n(K)`: the matrix unit `e_ij` gets
/// degree `s` whenever `s_i ∘ s = s_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGradingSpec {
    pub groupoid: Groupoid,
    pub field: Field,
    /// `s_1..s_n`; repetitions allowed.
    pub section: Vec<usize>,
}

fn unit_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{},{}", i + 1, j + 1)
    }
}

/// Builds `R = ⊕_s R_s` with `R_s = span{e_ij : (i, j) ∈ X_s}`.
///
/// The basis is the set of matrix units lying in some `X_s`, in row-major
/// order, with labels `e11`, `e12`, ... (1-based).
pub fn build_matrix_graded(spec: &MatrixGradingSpec) -> Result<GradedAlgebra, ConstructionError> {
    let g = &spec.groupoid;
    let n = spec.section.len();
    if n == 0 {
        return Err(ConstructionError::EmptySection);
    }
    if let Some(&bad) = spec.section.iter().find(|&&s| s >= g.morphisms()) {
        return Err(ConstructionError::SectionOutOfRange(bad));
    }
    if !g.is_cancellable() {
        return Err(ConstructionError::NotCancellable);
    }
    let f = spec.field;
    // degree_of[i][j] = the s with (i, j) ∈ X_s.
    let mut degree_of = vec![vec![None; n]; n];
    for (i, &si) in spec.section.iter().enumerate() {
        for (j, &sj) in spec.section.iter().enumerate() {
            for s in 0..g.morphisms() {
                if g.dom(si) == g.cod(s) && g.compose(si, s) == Some(sj) {
                    // The sets X_s are pairwise disjoint for cancellable G.
                    if degree_of[i][j].replace(s).is_some() {
                        return Err(ConstructionError::OverlappingDegrees { i, j });
                    }
                }
            }
        }
    }
    let mut index = vec![vec![None; n]; n];
    let mut degree = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if let Some(s) = degree_of[i][j] {
                index[i][j] = Some(degree.len());
                degree.push(s);
                labels.push(unit_label(n, i, j));
            }
        }
    }
    let dim = degree.len();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let Some(a) = index[i][j] else { continue };
            for k in 0..n {
                let Some(b) = index[j][k] else { continue };
                let c = index[i][k].ok_or_else(|| {
                    ConstructionError::Shape(format!("product e{i}{j}·e{j}{k} leaves the subalgebra"))
                })?;
                constants.push((a, b, c, f.one()));
            }
        }
    }
    let mut unit = vec![f.zero(); dim];
    for (i, row) in index.iter().enumerate() {
        if let Some(d) = row[i] {
            unit[d] = f.one();
        }
    }
    let algebra = Algebra::new(f, dim, constants, Element::new(unit))?;
    Ok(GradedAlgebra::new(g.clone(), algebra, degree)?.with_labels(labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{build_group, build_thin_connected, cyclic_table};

    #[test]
    fn single_unit_is_the_field() {
        let g = build_group(&cyclic_table(1)).unwrap();
        let a = build_matrix_graded(&MatrixGradingSpec {
            groupoid: g,
            field: Field::Rational,
            section: vec![0],
        })
        .unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.validate_grading().is_valid());
    }

    #[test]
    fn group_section_gives_permutation_components() {
        // Each X_s is the graph of the permutation i ↦ j with g_i s = g_j.
        let g = build_group(&cyclic_table(3)).unwrap();
        let a = build_matrix_graded(&MatrixGradingSpec {
            groupoid: g,
            field: Field::Prime(2),
            section: vec![0, 1, 2],
        })
        .unwrap();
        for s in 0..3 {
            assert_eq!(a.basis_of_degree(s).len(), 3);
        }
        assert!(a.validate_grading().is_valid());
        assert!(a.is_strongly_graded().unwrap().holds);
    }

    #[test]
    fn rejects_bad_input() {
        let g = build_thin_connected(2).unwrap();
        let spec = |section: Vec<usize>| MatrixGradingSpec {
            groupoid: g.clone(),
            field: Field::Rational,
            section,
        };
        assert_eq!(build_matrix_graded(&spec(vec![])), Err(ConstructionError::EmptySection));
        assert_eq!(
            build_matrix_graded(&spec(vec![0, 4])),
            Err(ConstructionError::SectionOutOfRange(4))
        );
        let monoid = Groupoid::new(
            1,
            vec![0, 0],
            vec![0, 0],
            vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
            None,
        )
        .unwrap();
        assert_eq!(
            build_matrix_graded(&MatrixGradingSpec {
                groupoid: monoid,
                field: Field::Rational,
                section: vec![0],
            }),
            Err(ConstructionError::NotCancellable)
        );
    }
}
