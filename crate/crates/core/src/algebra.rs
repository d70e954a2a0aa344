//! The index-level Δ-algebra of spherical and confluent spherical functions:
//! `φ_{λ₁} + φ_{λ₂} := φ_{λ₁+λ₂}`, `α φ_λ := φ_{αλ}`, `φ_{λ₁}·φ_{λ₂} := φ_{λ₁λ₂}`,
//! and `σ(φ_λ) = φ^σ_λ`.
//!
//! Elements are compared up to the Weyl action `λ ~ −λ`. The operations act
//! on indices; the evaluator travels with the element unchanged.

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::sync::Arc;

use num::complex::Complex;
use num::{BigInt, BigRational, One, Zero};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expansions::confluent_spherical;
use crate::group::{hyp_params, GroupRank1, SpectralParam};
use crate::radial_ode::to_hypergeometric_z;
use crate::special_fn::{gauss_2f1, BesselMode};

/// Scalars usable as indices.
pub trait IndexField:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
}

impl<T> IndexField for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Add<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Zero
        + One
{
}

/// Exact complex rationals.
pub type ExactIndex = Complex<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Spherical,
    Confluent,
}

/// Evaluates a family member `(family, λ, t) ↦ value`.
pub type Evaluator = Arc<dyn Fn(Family, SpectralParam, f64) -> Result<Complex64> + Send + Sync>;

/// Spherical members through the Gauss series, confluent ones through the
/// `M = 0` expansion.
pub fn group_evaluator(g: GroupRank1, mode: BesselMode) -> Evaluator {
    Arc::new(move |family, lam, t| match family {
        Family::Spherical => Ok(gauss_2f1(
            &hyp_params(&g, lam),
            Complex64::new(to_hypergeometric_z(t), 0.0),
            1e-14,
        )?
        .value),
        Family::Confluent => confluent_spherical(&g, lam, t, mode),
    })
}

#[derive(Clone)]
pub struct IndexedFunction<K = Complex64> {
    index: K,
    family: Family,
    evaluator: Option<Evaluator>,
}

impl<K: fmt::Debug> fmt::Debug for IndexedFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexedFunction")
            .field("index", &self.index)
            .field("family", &self.family)
            .field("evaluator", &self.evaluator.is_some())
            .finish()
    }
}

/// Weyl-orbit equality: same family and `λ₂ = ±λ₁`.
impl<K: IndexField> PartialEq for IndexedFunction<K> {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
            && (self.index == other.index || self.index == -other.index.clone())
    }
}

impl<K: IndexField> IndexedFunction<K> {
    pub fn new(family: Family, index: K) -> Self {
        IndexedFunction {
            index,
            family,
            evaluator: None,
        }
    }

    pub fn spherical(index: K) -> Self {
        Self::new(Family::Spherical, index)
    }

    pub fn confluent(index: K) -> Self {
        Self::new(Family::Confluent, index)
    }

    pub fn with_evaluator(mut self, evaluator: Evaluator) -> Self {
        self.evaluator = Some(evaluator);
        self
    }

    /// `Ξ = φ₀`, the additive identity.
    pub fn xi(family: Family) -> Self {
        Self::new(family, K::zero())
    }

    /// `φ₁`, the multiplicative identity.
    pub fn unit(family: Family) -> Self {
        Self::new(family, K::one())
    }

    pub fn index(&self) -> &K {
        &self.index
    }

    pub fn family(&self) -> Family {
        self.family
    }

    fn with_index(&self, index: K) -> Self {
        IndexedFunction {
            index,
            family: self.family,
            evaluator: self.evaluator.clone(),
        }
    }
}

impl IndexedFunction<Complex64> {
    pub fn spectral(&self) -> SpectralParam {
        SpectralParam(self.index)
    }

    pub fn evaluate(&self, t: f64) -> Result<Complex64> {
        let eval = self
            .evaluator
            .as_ref()
            .ok_or_else(|| Error::domain("element has no evaluator"))?;
        eval(self.family, self.spectral(), t)
    }
}

fn same_family<K>(x: &IndexedFunction<K>, y: &IndexedFunction<K>) -> Result<()> {
    if x.family == y.family {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "family mismatch: {:?} vs {:?}",
            x.family, y.family
        )))
    }
}

pub fn delta_add<K: IndexField>(
    x: &IndexedFunction<K>,
    y: &IndexedFunction<K>,
) -> Result<IndexedFunction<K>> {
    same_family(x, y)?;
    Ok(x.with_index(x.index.clone() + y.index.clone()))
}

pub fn delta_scale<K: IndexField>(alpha: &K, x: &IndexedFunction<K>) -> IndexedFunction<K> {
    x.with_index(alpha.clone() * x.index.clone())
}

pub fn delta_mul<K: IndexField>(
    x: &IndexedFunction<K>,
    y: &IndexedFunction<K>,
) -> Result<IndexedFunction<K>> {
    same_family(x, y)?;
    Ok(x.with_index(x.index.clone() * y.index.clone()))
}

/// `σ(φ_λ) = φ^σ_λ`.
pub fn sigma_map<K: IndexField>(x: &IndexedFunction<K>) -> Result<IndexedFunction<K>> {
    if x.family != Family::Spherical {
        return Err(Error::domain("σ is defined on spherical elements"));
    }
    Ok(IndexedFunction {
        index: x.index.clone(),
        family: Family::Confluent,
        evaluator: x.evaluator.clone(),
    })
}

/// Pass count for one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub label: &'static str,
    pub statement: &'static str,
    pub passed: usize,
    pub trials: usize,
}

impl AxiomResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

impl fmt::Display for AxiomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "pass" } else { "FAIL" };
        write!(
            f,
            "({:<4}) {:<44} {}/{} {verdict}",
            self.label, self.statement, self.passed, self.trials
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub seed: u64,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(AxiomResult::ok)
    }
}

type Element = IndexedFunction<ExactIndex>;

struct Sample {
    x: Element,
    y: Element,
    z: Element,
    alpha: ExactIndex,
    beta: ExactIndex,
}

type Check = fn(&Sample) -> Result<bool>;

const AXIOMS: [(&str, &str, Check); 15] = [
    ("i", "φ_a + φ_b = φ_{a+b}", |s| {
        Ok(*delta_add(&s.x, &s.y)?.index() == s.x.index.clone() + s.y.index.clone())
    }),
    ("ii", "φ_a + (φ_b + φ_c) = (φ_a + φ_b) + φ_c", |s| {
        Ok(delta_add(&s.x, &delta_add(&s.y, &s.z)?)? == delta_add(&delta_add(&s.x, &s.y)?, &s.z)?)
    }),
    ("iii", "Ξ + φ_a = φ_a = φ_a + Ξ", |s| {
        let xi = Element::xi(s.x.family);
        Ok(delta_add(&xi, &s.x)? == s.x && delta_add(&s.x, &xi)? == s.x)
    }),
    ("iv", "φ_{-a} + φ_a = Ξ = φ_a + φ_{-a}", |s| {
        let neg = s.x.with_index(-s.x.index.clone());
        let xi = Element::xi(s.x.family);
        Ok(delta_add(&neg, &s.x)? == xi && delta_add(&s.x, &neg)? == xi)
    }),
    ("v", "φ_a + φ_b = φ_b + φ_a", |s| {
        Ok(delta_add(&s.x, &s.y)? == delta_add(&s.y, &s.x)?)
    }),
    ("vi", "α φ_a = φ_{αa}", |s| {
        Ok(*delta_scale(&s.alpha, &s.x).index() == s.alpha.clone() * s.x.index.clone())
    }),
    ("vii", "α(β φ_a) = (αβ) φ_a", |s| {
        Ok(delta_scale(&s.alpha, &delta_scale(&s.beta, &s.x))
            == delta_scale(&(s.alpha.clone() * s.beta.clone()), &s.x))
    }),
    ("viii", "1 φ_a = φ_a", |s| {
        Ok(delta_scale(&ExactIndex::one(), &s.x) == s.x)
    }),
    ("ix", "α(φ_a + φ_b) = α φ_a + α φ_b", |s| {
        Ok(delta_scale(&s.alpha, &delta_add(&s.x, &s.y)?)
            == delta_add(&delta_scale(&s.alpha, &s.x), &delta_scale(&s.alpha, &s.y))?)
    }),
    ("x", "(α + β) φ_a = α φ_a + β φ_a", |s| {
        Ok(delta_scale(&(s.alpha.clone() + s.beta.clone()), &s.x)
            == delta_add(&delta_scale(&s.alpha, &s.x), &delta_scale(&s.beta, &s.x))?)
    }),
    ("xi", "φ_a · φ_b = φ_{ab}", |s| {
        Ok(*delta_mul(&s.x, &s.y)?.index() == s.x.index.clone() * s.y.index.clone())
    }),
    (
        "xii",
        "φ_a · (φ_b · φ_c) = (φ_a · φ_b) · φ_c",
        |s| {
            Ok(delta_mul(&s.x, &delta_mul(&s.y, &s.z)?)?
                == delta_mul(&delta_mul(&s.x, &s.y)?, &s.z)?)
        },
    ),
    ("xiii", "φ_1 · φ_a = φ_a = φ_a · φ_1", |s| {
        let one = Element::unit(s.x.family);
        Ok(delta_mul(&one, &s.x)? == s.x && delta_mul(&s.x, &one)? == s.x)
    }),
    (
        "xiv",
        "(φ_a + φ_b) · φ_c = φ_a · φ_c + φ_b · φ_c",
        |s| {
            Ok(delta_mul(&delta_add(&s.x, &s.y)?, &s.z)?
                == delta_add(&delta_mul(&s.x, &s.z)?, &delta_mul(&s.y, &s.z)?)?)
        },
    ),
    (
        "xv",
        "φ_a · (φ_b + φ_c) = φ_a · φ_b + φ_a · φ_c",
        |s| {
            Ok(delta_mul(&s.x, &delta_add(&s.y, &s.z)?)?
                == delta_add(&delta_mul(&s.x, &s.y)?, &delta_mul(&s.x, &s.z)?)?)
        },
    ),
];

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-100..=100);
    let den: i64 = rng.gen_range(1..=100);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random Gaussian rational with numerators in `[−100, 100]` and
/// denominators in `[1, 100]`.
pub fn random_exact_index(rng: &mut ChaCha8Rng) -> ExactIndex {
    Complex::new(random_rational(rng), random_rational(rng))
}

/// Checks the fifteen axioms on `trials` random samples per family, in exact
/// arithmetic. A trial passes only if it holds for both families.
pub fn check_axioms(trials: usize, seed: u64) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = [0usize; 15];
    for _ in 0..trials {
        let mut ok = [true; 15];
        for family in [Family::Spherical, Family::Confluent] {
            let sample = Sample {
                x: Element::new(family, random_exact_index(&mut rng)),
                y: Element::new(family, random_exact_index(&mut rng)),
                z: Element::new(family, random_exact_index(&mut rng)),
                alpha: random_exact_index(&mut rng),
                beta: random_exact_index(&mut rng),
            };
            for (i, (_, _, check)) in AXIOMS.iter().enumerate() {
                ok[i] &= check(&sample)?;
            }
        }
        for (count, ok) in passed.iter_mut().zip(ok) {
            *count += usize::from(ok);
        }
    }
    let results = AXIOMS
        .iter()
        .zip(passed)
        .map(|(&(label, statement, _), passed)| AxiomResult {
            label,
            statement,
            passed,
            trials,
        })
        .collect();
    Ok(AxiomReport { seed, results })
}
