//! Small named examples used by the tests, the bundled fixtures and the CLI.

use crate::algebra::{Algebra, Element};
use crate::constructions::{build_matrix_graded, CrossedSystem, MatrixGradingSpec, SkewSystem};
use crate::graded::{group_algebra, GradedAlgebra};
use crate::groupoid::{build_group, build_thin_connected, cyclic_table, Groupoid};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// The thin connected groupoid on two objects: `e`, `s: f -> e`,
/// `t: e -> f`, `f`.
pub fn g2() -> Groupoid {
    build_thin_connected(2).expect("two objects")
}

/// The cyclic group of order two with elements named `e` and `g`.
pub fn z2() -> Groupoid {
    build_group(&cyclic_table(2))
        .and_then(|g| g.with_names(vec!["e".into(), "g".into()]))
        .expect("Z2 table")
}

/// The matrix construction over `G2` with section `(e, s, t, f, f)`.
pub fn rex(field: Field) -> GradedAlgebra {
    build_matrix_graded(&MatrixGradingSpec {
        groupoid: g2(),
        field,
        section: vec![0, 1, 2, 3, 3],
    })
    .expect("valid section")
}

/// The group algebra `K[Z2]`.
pub fn kz2(field: Field) -> GradedAlgebra {
    group_algebra(&z2(), field).expect("group algebra")
}

/// `Z2` acting on `K × K` by swapping the coordinates.
pub fn skew_swap(field: Field) -> SkewSystem {
    let swap = Matrix::from_i64(field, &[&[0, 1], &[1, 0]]);
    SkewSystem::new(z2(), vec![Algebra::split(field, 2)], vec![Matrix::identity(field, 2), swap])
        .expect("well-shaped")
}

/// `Z2` acting trivially on `K × K`, giving the group algebra `(K × K)[Z2]`.
pub fn skew_pair_trivial(field: Field) -> SkewSystem {
    SkewSystem::new(
        z2(),
        vec![Algebra::split(field, 2)],
        vec![Matrix::identity(field, 2), Matrix::identity(field, 2)],
    )
    .expect("well-shaped")
}

/// `Z2` acting trivially on `K`, giving the group algebra `K[Z2]` as a
/// skew category algebra.
pub fn skew_group_algebra(field: Field) -> SkewSystem {
    let id = Matrix::identity(field, 1);
    SkewSystem::new(z2(), vec![Algebra::ground_field(field)], vec![id.clone(), id]).expect("well-shaped")
}

/// `G2` with `A_e = A_f = K` and every `σ_s` the identity of `K`.
pub fn skew_g2(field: Field) -> SkewSystem {
    let id = Matrix::identity(field, 1);
    SkewSystem::new(
        g2(),
        vec![Algebra::ground_field(field), Algebra::ground_field(field)],
        vec![id; 4],
    )
    .expect("well-shaped")
}

/// `K` over `Z2` with trivial action and `α(g, g) = c`, the other values
/// of the cocycle being `1`.
pub fn crossed_scalar_twist(field: Field, c: i64) -> CrossedSystem {
    let one = Element::basis(field, 1, 0);
    let mut alpha = vec![vec![one; 2]; 2];
    alpha[1][1] = Element::new(vec![field.from_i64(c)]);
    let id = Matrix::identity(field, 1);
    CrossedSystem::new(z2(), Algebra::ground_field(field), vec![id.clone(), id], alpha).expect("well-shaped")
}
