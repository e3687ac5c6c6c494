//! JSON fixtures for groupoids, graded algebras, skew systems and crossed
//! systems.
//!
//! Scalars are written as strings without the field suffix, since every
//! fixture names its field once. Output goes through `serde_json::Value`,
//! whose maps keep keys sorted, so writing a loaded fixture reproduces the
//! input byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::constructions::{ConstructionError, CrossedSystem, SkewSystem};
use crate::graded::{GradedAlgebra, GradedError};
use crate::groupoid::{Groupoid, GroupoidError, GroupoidFixture};
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldDescriptor, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("shape error: {0}")]
    Shape(String),
}

/// A scalar as written in fixtures: `"-3/4"` or a residue such as `"1"`.
pub fn scalar_text(x: &Scalar) -> String {
    match x {
        Scalar::Mod { r, .. } => r.to_string(),
        q => q.to_string(),
    }
}

fn parse_all(field: Field, xs: &[String]) -> Result<Vec<Scalar>, FixtureError> {
    xs.iter().map(|x| Ok(Scalar::parse(x, field)?)).collect()
}

/// Multiplication table and unit of an ungraded algebra.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RingFixture {
    pub dim: usize,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
}

impl RingFixture {
    pub fn from_algebra(a: &Algebra) -> RingFixture {
        RingFixture {
            dim: a.dim(),
            structure: a
                .constants()
                .iter()
                .map(|(i, j, k, c)| (*i, *j, *k, scalar_text(c)))
                .collect(),
            unit: a.unit().coeffs().iter().map(scalar_text).collect(),
        }
    }

    pub fn to_algebra(&self, field: Field) -> Result<Algebra, FixtureError> {
        let constants = self
            .structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, Scalar::parse(c, field)?)))
            .collect::<Result<Vec<_>, FixtureError>>()?;
        Ok(Algebra::new(
            field,
            self.dim,
            constants,
            Element::new(parse_all(field, &self.unit)?),
        )?)
    }
}

/// A graded algebra: groupoid, degree of each basis vector, structure
/// constants `[i, j, k, c]` meaning `b_i b_j` has `c` at `b_k`, unit and
/// field, plus optional basis labels.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFixture {
    pub groupoid: GroupoidFixture,
    pub dim: usize,
    pub degree: Vec<usize>,
    pub structure: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub field: FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraFixture {
    pub fn from_graded(a: &GradedAlgebra) -> AlgebraFixture {
        let ring = RingFixture::from_algebra(a.algebra());
        AlgebraFixture {
            groupoid: a.groupoid().to_fixture(),
            dim: ring.dim,
            degree: a.degrees().to_vec(),
            structure: ring.structure,
            unit: ring.unit,
            field: a.field().into(),
            labels: a.labels().map(<[String]>::to_vec),
        }
    }

    /// Rebuilds the algebra. Only shapes and index ranges are checked; the
    /// axioms are left to the validators so broken fixtures can be reported.
    pub fn to_graded(&self) -> Result<GradedAlgebra, FixtureError> {
        let field = Field::try_from(&self.field)?;
        let groupoid = Groupoid::from_fixture(&self.groupoid)?;
        let ring = RingFixture {
            dim: self.dim,
            structure: self.structure.clone(),
            unit: self.unit.clone(),
        };
        let a = GradedAlgebra::new(groupoid, ring.to_algebra(field)?, self.degree.clone())?;
        Ok(match &self.labels {
            Some(l) => a.with_labels(l.clone())?,
            None => a,
        })
    }
}

fn matrix_text(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(scalar_text).collect()).collect()
}

fn parse_matrix(field: Field, cols: usize, rows: &[Vec<String>]) -> Result<Matrix, FixtureError> {
    let rows = rows.iter().map(|r| parse_all(field, r)).collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, cols, rows).map_err(|e| FixtureError::Shape(e.to_string()))
}

/// A skew system: one coefficient ring per object and, for each morphism
/// `s`, the matrix of `σ_s: A_{d(s)} -> A_{c(s)}` whose rows are the images
/// of the basis of `A_{d(s)}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SkewFixture {
    pub groupoid: GroupoidFixture,
    pub field: FieldDescriptor,
    pub components: Vec<RingFixture>,
    pub sigma: Vec<Vec<Vec<String>>>,
}

impl SkewFixture {
    pub fn from_system(sys: &SkewSystem) -> SkewFixture {
        SkewFixture {
            groupoid: sys.groupoid().to_fixture(),
            field: sys.field().into(),
            components: sys.components().iter().map(RingFixture::from_algebra).collect(),
            sigma: sys.sigma().iter().map(matrix_text).collect(),
        }
    }

    pub fn to_system(&self) -> Result<SkewSystem, FixtureError> {
        let field = Field::try_from(&self.field)?;
        let groupoid = Groupoid::from_fixture(&self.groupoid)?;
        let components = self
            .components
            .iter()
            .map(|c| c.to_algebra(field))
            .collect::<Result<Vec<_>, _>>()?;
        if self.sigma.len() != groupoid.morphisms() {
            return Err(FixtureError::Shape(format!(
                "{} sigma matrices for {} morphisms",
                self.sigma.len(),
                groupoid.morphisms()
            )));
        }
        let mut sigma = Vec::with_capacity(self.sigma.len());
        for (s, rows) in self.sigma.iter().enumerate() {
            let cols = components
                .get(groupoid.cod(s))
                .map(Algebra::dim)
                .ok_or_else(|| FixtureError::Shape(format!("no coefficient ring for object {}", groupoid.cod(s))))?;
            sigma.push(parse_matrix(field, cols, rows)?);
        }
        Ok(SkewSystem::new(groupoid, components, sigma)?)
    }
}

/// A crossed system over a group: the ring `A`, the automorphism matrices
/// `σ_s` and the cocycle values `α(s, t)` as elements of `A`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CrossedFixture {
    pub group: GroupoidFixture,
    pub field: FieldDescriptor,
    pub ring: RingFixture,
    pub sigma: Vec<Vec<Vec<String>>>,
    pub alpha: Vec<Vec<Vec<String>>>,
}

impl CrossedFixture {
    pub fn from_system(sys: &CrossedSystem) -> CrossedFixture {
        let n = sys.group().morphisms();
        CrossedFixture {
            group: sys.group().to_fixture(),
            field: sys.field().into(),
            ring: RingFixture::from_algebra(sys.ring()),
            sigma: sys.sigma().iter().map(matrix_text).collect(),
            alpha: (0..n)
                .map(|s| {
                    (0..n)
                        .map(|t| sys.alpha(s, t).coeffs().iter().map(scalar_text).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<CrossedSystem, FixtureError> {
        let field = Field::try_from(&self.field)?;
        let group = Groupoid::from_fixture(&self.group)?;
        let ring = self.ring.to_algebra(field)?;
        let sigma = self
            .sigma
            .iter()
            .map(|rows| parse_matrix(field, ring.dim(), rows))
            .collect::<Result<Vec<_>, _>>()?;
        let alpha = self
            .alpha
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Ok(Element::new(parse_all(field, x)?)))
                    .collect::<Result<Vec<_>, FixtureError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CrossedSystem::new(group, ring, sigma, alpha)?)
    }
}

/// Any fixture the tools understand, told apart by its keys.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Fixture {
    Algebra(AlgebraFixture),
    Skew(SkewFixture),
    Crossed(CrossedFixture),
    Groupoid(GroupoidFixture),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Algebra(_) => "algebra",
            Fixture::Skew(_) => "skew",
            Fixture::Crossed(_) => "crossed",
            Fixture::Groupoid(_) => "groupoid",
        }
    }

    /// The graded algebra this fixture describes, building skew and
    /// crossed systems on the way. Groupoids have none.
    pub fn graded(&self) -> Result<Option<GradedAlgebra>, FixtureError> {
        Ok(match self {
            Fixture::Algebra(f) => Some(f.to_graded()?),
            Fixture::Skew(f) => Some(f.to_system()?.build()?),
            Fixture::Crossed(f) => Some(f.to_system()?.build()?),
            Fixture::Groupoid(_) => None,
        })
    }
}

/// Reads any fixture from JSON text.
pub fn parse(text: &str) -> Result<Fixture, FixtureError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    Ok(serde_json::from_value(value)?)
}

/// Pretty JSON with keys sorted at every level and a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let value = serde_json::to_value(x).expect("fixtures serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_round_trip_is_byte_stable() {
        for a in [catalog::rex(Field::Rational), catalog::rex(Field::Prime(2)), catalog::kz2(Field::Prime(3))] {
            let text = to_json(&AlgebraFixture::from_graded(&a));
            let back = match parse(&text).unwrap() {
                Fixture::Algebra(f) => f.to_graded().unwrap(),
                other => panic!("parsed as {}", other.kind()),
            };
            assert_eq!(back.algebra(), a.algebra());
            assert_eq!(back.degrees(), a.degrees());
            assert_eq!(to_json(&AlgebraFixture::from_graded(&back)), text);
        }
    }

    #[test]
    fn systems_round_trip() {
        let skew = catalog::skew_swap(Field::Prime(2));
        let text = to_json(&SkewFixture::from_system(&skew));
        let Fixture::Skew(f) = parse(&text).unwrap() else { panic!("not a skew fixture") };
        assert_eq!(f.to_system().unwrap().build().unwrap().algebra(), skew.build().unwrap().algebra());
        assert_eq!(to_json(&f), text);

        let crossed = catalog::crossed_scalar_twist(Field::Rational, -1);
        let text = to_json(&CrossedFixture::from_system(&crossed));
        let Fixture::Crossed(f) = parse(&text).unwrap() else { panic!("not a crossed fixture") };
        assert_eq!(f.to_system().unwrap().build().unwrap().algebra(), crossed.build().unwrap().algebra());
        assert_eq!(to_json(&f), text);
    }

    #[test]
    fn groupoids_are_recognized() {
        let text = to_json(&catalog::g2().to_fixture());
        assert_eq!(parse(&text).unwrap().kind(), "groupoid");
    }

    #[test]
    fn keys_are_sorted() {
        let text = to_json(&AlgebraFixture::from_graded(&catalog::kz2(Field::Prime(2))));
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn bad_scalars_are_rejected() {
        let mut f = AlgebraFixture::from_graded(&catalog::kz2(Field::Rational));
        f.unit[0] = "one".into();
        assert!(matches!(f.to_graded(), Err(FixtureError::Scalar(_))));
    }
}
