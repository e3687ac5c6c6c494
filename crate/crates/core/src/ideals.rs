//! Two-sided ideals and the checks that nonzero ideals meet a given
//! subspace.
//!
//! Every nonzero ideal contains a nonzero principal ideal, so "every
//! nonzero ideal meets `T`" reduces to "the ideal generated by each nonzero
//! element meets `T`". The exhaustive checks enumerate all nonzero elements
//! over a finite field; the sampled checks draw elements from a seeded
//! generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Element;
use crate::analysis::{self, AnalysisError};
use crate::constructions::{ConstructionError, CrossedSystem, SkewSystem};
use crate::graded::{GradedAlgebra, GradedError};
use crate::linalg::{space_size, vector_from_index, Echelon, Subspace};
use crate::scalar::{Field, Scalar};

/// Default limit on the number of elements an exhaustive run may visit.
pub const DEFAULT_MAX_EXHAUSTIVE: u64 = 1 << 20;

/// Environment variable that overrides [`DEFAULT_MAX_EXHAUSTIVE`].
pub const MAX_EXHAUSTIVE_ENV: &str = "GRL_MAX_EXHAUSTIVE";

/// The exhaustive cap from `GRL_MAX_EXHAUSTIVE`, or the default when the
/// variable is unset or unparsable.
pub fn max_exhaustive_from_env() -> u64 {
    std::env::var(MAX_EXHAUSTIVE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EXHAUSTIVE)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("exhaustive mode needs a finite field, got {0}")]
    InfiniteField(Field),
    #[error("exhaustive mode would visit {count} elements, above the cap of {cap}")]
    TooLarge { count: String, cap: u64 },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("sampled mode needs at least one trial")]
    NoTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    /// Largest number of nonzero elements an exhaustive run may visit.
    pub max_exhaustive: u64,
}

impl CheckOptions {
    pub fn exhaustive() -> CheckOptions {
        CheckOptions {
            mode: Mode::Exhaustive,
            max_exhaustive: DEFAULT_MAX_EXHAUSTIVE,
        }
    }

    pub fn sampled(trials: u64, seed: u64) -> CheckOptions {
        CheckOptions {
            mode: Mode::Sampled { trials, seed },
            max_exhaustive: DEFAULT_MAX_EXHAUSTIVE,
        }
    }
}

/// A two-sided ideal, stored as its rref basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ideal {
    pub basis: Subspace,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }
}

/// Work-queue closure: every newly added vector is multiplied on both sides
/// by every basis vector until nothing new appears. If `stop` is given, the
/// closure returns early as soon as it contains a nonzero vector of it.
fn closure_until(a: &GradedAlgebra, generators: &[&[Scalar]], stop: Option<&Echelon>) -> (Echelon, bool) {
    let alg = a.algebra();
    let mut e = Echelon::new(a.field(), a.dim());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    let mut hit = false;
    let push = |v: Vec<Scalar>, e: &mut Echelon, queue: &mut Vec<Vec<Scalar>>, hit: &mut bool| {
        if e.insert(&v) {
            if let Some(t) = stop {
                if t.contains(&v) {
                    *hit = true;
                }
            }
            queue.push(v);
        }
    };
    for g in generators {
        push(g.to_vec(), &mut e, &mut queue, &mut hit);
    }
    while let Some(v) = queue.pop() {
        if hit || e.is_full() {
            break;
        }
        for i in 0..a.dim() {
            let b = alg.basis_element(i);
            push(alg.mul_slices(b.coeffs(), &v), &mut e, &mut queue, &mut hit);
            push(alg.mul_slices(&v, b.coeffs()), &mut e, &mut queue, &mut hit);
            if hit {
                break;
            }
        }
    }
    (e, hit)
}

/// The smallest two-sided ideal containing `generators`.
pub fn ideal_closure(a: &GradedAlgebra, generators: &[Element]) -> Ideal {
    let gens: Vec<&[Scalar]> = generators.iter().map(Element::coeffs).collect();
    Ideal {
        basis: closure_until(a, &gens, None).0.into_subspace(),
    }
}

/// `I ∩ S`.
pub fn intersect_with(i: &Ideal, s: &Subspace) -> Result<Subspace, IdealError> {
    i.basis
        .intersect(s)
        .map_err(|e| IdealError::Hypothesis(format!("subspace does not fit the algebra: {e}")))
}

/// Whether the ideal generated by `x` meets `target` in a nonzero vector.
pub fn principal_ideal_meets(a: &GradedAlgebra, x: &[Scalar], target: &Subspace) -> bool {
    let t = target.echelon();
    if t.contains(x) && x.iter().any(|c| !c.is_zero()) {
        return true;
    }
    let (closure, hit) = closure_until(a, &[x], Some(&t));
    if hit {
        return true;
    }
    !closure.into_subspace().intersect(target).expect("same ambient").is_zero()
}

/// Result of the nonzero ideal property test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonzeroIdealReport {
    pub holds: bool,
    /// Dimension of `{x ∈ R_s : x R_{s^-1} = 0}` for each morphism `s`.
    pub kernel_dims: Vec<usize>,
    /// First morphism with a nonzero kernel and a nonzero element of it.
    pub witness: Option<(usize, Element)>,
}

/// For each `s`, the left kernel `{x ∈ R_s : x y = 0 for all y ∈ R_{s^-1}}`;
/// the property holds when all of them vanish.
pub fn nonzero_ideal_property(a: &GradedAlgebra) -> Result<NonzeroIdealReport, IdealError> {
    let g = a.groupoid();
    if !g.has_inverses() {
        return Err(GradedError::MissingInverses.into());
    }
    let alg = a.algebra();
    let f = a.field();
    let mut kernel_dims = Vec::with_capacity(g.morphisms());
    let mut witness = None;
    for s in 0..g.morphisms() {
        let inv = g.inverse(s).unwrap();
        let rs = a.basis_of_degree(s);
        let rinv = a.basis_of_degree(inv);
        let kernel = if rs.is_empty() {
            Vec::new()
        } else if rinv.is_empty() {
            rs.iter().map(|&i| alg.basis_element(i)).collect()
        } else {
            let rows: Vec<Vec<Scalar>> = rs
                .iter()
                .map(|&i| {
                    rinv.iter()
                        .flat_map(|&j| alg.basis_product(i, j).iter().fold(vec![f.zero(); a.dim()], |mut acc, (k, c)| {
                            acc[*k] = c.clone();
                            acc
                        }))
                        .collect()
                })
                .collect();
            let width = rows[0].len();
            let m = crate::linalg::Matrix::from_rows(f, width, rows).expect("rectangular");
            let null = m.transpose().nullspace();
            (0..null.rows())
                .map(|k| {
                    let mut x = vec![f.zero(); a.dim()];
                    for (&i, c) in rs.iter().zip(null.row(k)) {
                        x[i] = c.clone();
                    }
                    Element::new(x)
                })
                .collect()
        };
        if witness.is_none() {
            if let Some(x) = kernel.first() {
                witness = Some((s, x.clone()));
            }
        }
        kernel_dims.push(kernel.len());
    }
    Ok(NonzeroIdealReport {
        holds: witness.is_none(),
        kernel_dims,
        witness,
    })
}

/// Outcome of a principal-ideal sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub mode: Mode,
    pub instances_checked: u64,
    /// Coefficients of every element whose ideal missed the target.
    pub failures: Vec<Vec<String>>,
    pub target_dim: usize,
    /// Whether the principal component is commutative (recorded, not
    /// required).
    pub principal_commutative: bool,
    pub obligation: String,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const OBLIGATION: &str = "every nonzero two-sided ideal contains the principal ideal of one of its nonzero elements, so checking principal ideals suffices";

/// Elements to try under `options`, in a fixed order.
fn candidates(a: &GradedAlgebra, options: &CheckOptions) -> Result<Vec<Vec<Scalar>>, IdealError> {
    let f = a.field();
    match options.mode {
        Mode::Exhaustive => {
            if !f.is_finite() {
                return Err(IdealError::InfiniteField(f));
            }
            let total = space_size(f, a.dim());
            match total {
                Some(n) if n - 1 <= options.max_exhaustive => {
                    Ok((1..n).map(|i| vector_from_index(f, a.dim(), i)).collect())
                }
                _ => Err(IdealError::TooLarge {
                    count: match total {
                        Some(n) => (n - 1).to_string(),
                        None => format!("{}^{} - 1", f.size().unwrap(), a.dim()),
                    },
                    cap: options.max_exhaustive,
                }),
            }
        }
        Mode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(IdealError::NoTrials);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(trials as usize);
            while (out.len() as u64) < trials {
                let v: Vec<Scalar> = match f.size() {
                    Some(p) => (0..a.dim()).map(|_| f.element(rng.random_range(0..p))).collect(),
                    None => (0..a.dim()).map(|_| f.from_i64(rng.random_range(-3..=3))).collect(),
                };
                if v.iter().any(|c| !c.is_zero()) {
                    out.push(v);
                }
            }
            Ok(out)
        }
    }
}

/// Whether the principal ideal of every candidate meets `target`; failures
/// are collected in candidate order regardless of thread scheduling.
pub fn sweep_principal_ideals(
    a: &GradedAlgebra,
    target: &Subspace,
    theorem: &str,
    options: &CheckOptions,
) -> Result<TheoremReport, IdealError> {
    let xs = candidates(a, options)?;
    let failures: Vec<Vec<String>> = xs
        .par_iter()
        .filter(|x| !principal_ideal_meets(a, x, target))
        .map(|x| x.iter().map(Scalar::to_string).collect())
        .collect();
    Ok(TheoremReport {
        theorem: theorem.to_string(),
        mode: options.mode,
        instances_checked: xs.len() as u64,
        failures,
        target_dim: target.dim(),
        principal_commutative: analysis::principal_is_commutative(a),
        obligation: OBLIGATION.to_string(),
    })
}

fn require(cond: bool, what: &str) -> Result<(), IdealError> {
    if cond {
        Ok(())
    } else {
        Err(IdealError::Hypothesis(what.to_string()))
    }
}

/// With the nonzero ideal property, every nonzero ideal meets the
/// commutant of `Z(R_0)`.
pub fn verify_theorem3(a: &GradedAlgebra, options: &CheckOptions) -> Result<TheoremReport, IdealError> {
    require(
        nonzero_ideal_property(a)?.holds,
        "the nonzero ideal property fails",
    )?;
    let target = analysis::commutant(a, &analysis::principal_center(a));
    sweep_principal_ideals(a, &target, "t3", options)
}

/// Group-graded case: for a strongly graded group-graded algebra with
/// commutative `R_e`, every nonzero ideal meets the commutant of `R_e`.
pub fn verify_theorem1(a: &GradedAlgebra, options: &CheckOptions) -> Result<TheoremReport, IdealError> {
    require(a.groupoid().objects() == 1, "the grading groupoid must be a group")?;
    require(a.is_strongly_graded()?.holds, "the algebra is not strongly graded")?;
    require(
        analysis::principal_is_commutative(a),
        "the identity component is not commutative",
    )?;
    let target = analysis::commutant(a, &a.principal_component());
    sweep_principal_ideals(a, &target, "t1", options)
}

/// Crossed products with commutative `A`, bijective `σ_s` and `α(s, s^-1)`
/// not a zero divisor: every nonzero ideal meets the commutant of `A`.
pub fn verify_theorem2(sys: &CrossedSystem, options: &CheckOptions) -> Result<TheoremReport, IdealError> {
    require(sys.ring().is_commutative(), "A is not commutative")?;
    require(sys.sigma_automorphic(), "some σ_s is not bijective")?;
    require(sys.alpha_regular(), "some α(s, s^-1) is a zero divisor")?;
    let a = sys.build()?;
    let target = analysis::commutant(&a, &a.principal_component());
    sweep_principal_ideals(&a, &target, "t2", options)
}

/// With the nonzero ideal property and `R_0` maximal commutative, every
/// nonzero ideal meets `R_0`.
pub fn verify_corollary(a: &GradedAlgebra, options: &CheckOptions) -> Result<TheoremReport, IdealError> {
    require(
        nonzero_ideal_property(a)?.holds,
        "the nonzero ideal property fails",
    )?;
    let maximal = match analysis::is_maximal_commutative(a) {
        Ok(m) => m,
        Err(AnalysisError::NonCommutativePrincipal) => false,
        Err(e) => return Err(e.into()),
    };
    require(maximal, "the principal component is not maximal commutative")?;
    sweep_principal_ideals(a, &a.principal_component(), "corollary", options)
}

/// The explicit ideal with zero intersection with `A`, generated by
/// `r u_{c(s)} - r u_s` for a nonidentity endomorphism `s` and `r u_s` in
/// the commutant of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingIdeal {
    pub morphism: usize,
    pub generator: Element,
    pub ideal_dim: usize,
    pub intersection_dim: usize,
    /// `Σ a_s u_s ↦ Σ a_s` vanishes on every basis vector of the ideal.
    pub augmentation_vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem4Report {
    pub theorem: String,
    pub mode: Mode,
    pub maximal_commutative: bool,
    pub instances_checked: u64,
    /// Elements whose principal ideal misses `A`.
    pub failures: Vec<Vec<String>>,
    /// Whether every checked principal ideal meets `A`.
    pub all_ideals_meet: bool,
    /// `maximal_commutative == all_ideals_meet`; in sampled mode a missing
    /// failure only fails to refute the converse.
    pub biconditional_holds: bool,
    pub separating_ideal: Option<SeparatingIdeal>,
}

impl Theorem4Report {
    pub fn passed(&self) -> bool {
        self.biconditional_holds
            && self
                .separating_ideal
                .as_ref()
                .is_none_or(|s| s.intersection_dim == 0 && s.augmentation_vanishes && s.ideal_dim > 0)
    }
}

/// Builds the separating ideal when `A` is not maximal commutative.
pub fn separating_ideal(sys: &SkewSystem, a: &GradedAlgebra) -> Option<SeparatingIdeal> {
    let g = sys.groupoid();
    let gc = analysis::graded_commutant(a);
    let s = (0..g.morphisms()).find(|&s| !g.is_identity(s) && !gc.components[s].is_zero())?;
    let x = gc.components[s].vectors().next()?.to_vec();
    let e = g.id(g.cod(s));
    let f = a.field();
    let mut generator = vec![f.zero(); a.dim()];
    for k in 0..sys.components()[g.cod(s)].dim() {
        let r = &x[sys.basis_index(s, k)];
        generator[sys.basis_index(e, k)] = r.clone();
        generator[sys.basis_index(s, k)] = -r;
    }
    let generator = Element::new(generator);
    let ideal = ideal_closure(a, std::slice::from_ref(&generator));
    let intersection = ideal.basis.intersect(&a.principal_component()).expect("same ambient");
    let augmentation_vanishes = ideal
        .basis
        .vectors()
        .all(|v| sys.augmentation(&Element::new(v.to_vec())).is_zero());
    Some(SeparatingIdeal {
        morphism: s,
        generator,
        ideal_dim: ideal.dim(),
        intersection_dim: intersection.dim(),
        augmentation_vanishes,
    })
}

/// For a skew category algebra with commutative coefficient rings: `A` is
/// maximal commutative exactly when every nonzero ideal meets `A`. Both
/// sides are computed independently and compared.
pub fn verify_theorem4(sys: &SkewSystem, options: &CheckOptions) -> Result<Theorem4Report, IdealError> {
    require(sys.coefficients_commutative(), "some A_e is not commutative")?;
    let a = sys.build()?;
    let maximal = analysis::is_maximal_commutative(&a)?;
    let sweep = sweep_principal_ideals(&a, &a.principal_component(), "t4", options)?;
    let all_ideals_meet = sweep.failures.is_empty();
    let biconditional_holds = match options.mode {
        Mode::Exhaustive => maximal == all_ideals_meet,
        Mode::Sampled { .. } => !maximal || all_ideals_meet,
    };
    let separating = if maximal { None } else { separating_ideal(sys, &a) };
    Ok(Theorem4Report {
        theorem: "t4".into(),
        mode: options.mode,
        maximal_commutative: maximal,
        instances_checked: sweep.instances_checked,
        failures: sweep.failures,
        all_ideals_meet,
        biconditional_holds,
        separating_ideal: separating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn gf2() -> Field {
        Field::Prime(2)
    }

    /// Reference closure: repeatedly multiply the whole current basis by the
    /// whole algebra basis until the dimension stops growing.
    fn naive_closure(a: &GradedAlgebra, gens: &[Element]) -> Subspace {
        let alg = a.algebra();
        let mut current = Subspace::span_of(a.field(), a.dim(), gens.iter().map(Element::coeffs));
        loop {
            let mut vs: Vec<Vec<Scalar>> = current.vectors().map(<[Scalar]>::to_vec).collect();
            for v in current.vectors() {
                for i in 0..a.dim() {
                    let b = alg.basis_element(i);
                    vs.push(alg.mul_slices(b.coeffs(), v));
                    vs.push(alg.mul_slices(v, b.coeffs()));
                }
            }
            let next = Subspace::span_of(a.field(), a.dim(), vs.iter().map(Vec::as_slice));
            if next == current {
                return current;
            }
            current = next;
        }
    }

    #[test]
    fn closure_of_unit_and_of_nothing() {
        let a = catalog::rex(gf2());
        assert_eq!(ideal_closure(&a, std::slice::from_ref(a.unit())).dim(), 13);
        assert!(ideal_closure(&a, &[]).is_zero());
    }

    #[test]
    fn closure_matches_naive_closure() {
        let a = catalog::rex(Field::Rational);
        for label in ["e11", "e45", "e35", "e22"] {
            let x = a.named(label);
            assert_eq!(ideal_closure(&a, std::slice::from_ref(&x)).basis, naive_closure(&a, &[x]));
        }
    }

    #[test]
    fn trivial_action_ideal_misses_a() {
        let sys = catalog::skew_pair_trivial(Field::Rational);
        let a = sys.build().unwrap();
        // r (u_e - u_g) with r = (1, 1).
        let gen = a.algebra().basis_element(0).add(&a.algebra().basis_element(1))
            .sub(&a.algebra().basis_element(2))
            .sub(&a.algebra().basis_element(3));
        let ideal = ideal_closure(&a, &[gen]);
        assert!(!ideal.is_zero());
        assert!(intersect_with(&ideal, &a.principal_component()).unwrap().is_zero());
        for v in ideal.basis.vectors() {
            assert!(sys.augmentation(&Element::new(v.to_vec())).is_zero());
        }
    }

    #[test]
    fn nonzero_ideal_property_examples() {
        assert!(nonzero_ideal_property(&catalog::rex(Field::Rational)).unwrap().holds);
        let bad = catalog::crossed_scalar_twist(Field::Rational, 0).build().unwrap();
        let r = nonzero_ideal_property(&bad).unwrap();
        assert!(!r.holds);
        let (s, x) = r.witness.unwrap();
        assert_eq!(s, 1);
        assert!(!x.is_zero());
        assert!(a_times_component_is_zero(&bad, &x, 1));
    }

    fn a_times_component_is_zero(a: &GradedAlgebra, x: &Element, inv: usize) -> bool {
        a.basis_of_degree(inv)
            .iter()
            .all(|&j| a.mul(x, &a.algebra().basis_element(j)).is_zero())
    }

    #[test]
    fn theorem3_on_small_examples() {
        let r = verify_theorem3(&catalog::kz2(Field::Prime(3)), &CheckOptions::exhaustive()).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances_checked, 8);
        assert_eq!(r.target_dim, 2);
        let s = verify_theorem3(&catalog::rex(Field::Rational), &CheckOptions::sampled(20, 7)).unwrap();
        assert!(s.passed());
        assert_eq!(s.instances_checked, 20);
    }

    #[test]
    fn exhaustive_limits() {
        let a = catalog::rex(gf2());
        let tight = CheckOptions {
            mode: Mode::Exhaustive,
            max_exhaustive: 100,
        };
        assert!(matches!(verify_theorem3(&a, &tight), Err(IdealError::TooLarge { .. })));
        assert!(matches!(
            verify_theorem3(&catalog::rex(Field::Rational), &CheckOptions::exhaustive()),
            Err(IdealError::InfiniteField(_))
        ));
    }

    #[test]
    fn theorem4_both_branches() {
        let swap = verify_theorem4(&catalog::skew_swap(gf2()), &CheckOptions::exhaustive()).unwrap();
        assert!(swap.maximal_commutative && swap.all_ideals_meet && swap.passed());
        assert_eq!(swap.instances_checked, 15);
        let trivial = verify_theorem4(&catalog::skew_group_algebra(gf2()), &CheckOptions::exhaustive()).unwrap();
        assert!(!trivial.maximal_commutative && !trivial.all_ideals_meet && trivial.passed());
        let sep = trivial.separating_ideal.unwrap();
        assert_eq!((sep.morphism, sep.ideal_dim, sep.intersection_dim), (1, 1, 0));
    }

    #[test]
    fn corollary_and_specializations() {
        let swap = catalog::skew_swap(gf2()).build().unwrap();
        assert!(verify_corollary(&swap, &CheckOptions::exhaustive()).unwrap().passed());
        assert!(matches!(
            verify_corollary(&catalog::kz2(gf2()), &CheckOptions::exhaustive()),
            Err(IdealError::Hypothesis(_))
        ));
        assert!(verify_theorem1(&catalog::kz2(Field::Prime(3)), &CheckOptions::exhaustive()).unwrap().passed());
        let twist = catalog::crossed_scalar_twist(Field::Prime(3), -1);
        assert!(verify_theorem2(&twist, &CheckOptions::exhaustive()).unwrap().passed());
        let degenerate = catalog::crossed_scalar_twist(Field::Prime(3), 0);
        assert!(matches!(
            verify_theorem2(&degenerate, &CheckOptions::exhaustive()),
            Err(IdealError::Hypothesis(_))
        ));
    }

    #[test]
    fn sampled_runs_are_reproducible() {
        let a = catalog::rex(Field::Prime(5));
        let o = CheckOptions::sampled(30, 42);
        assert_eq!(verify_theorem3(&a, &o).unwrap(), verify_theorem3(&a, &o).unwrap());
    }
}
