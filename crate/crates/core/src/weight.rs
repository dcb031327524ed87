//! Weights, the dot-action, lattice predicates, linkage, integral root
//! subsystems, facets and the translation-equivalence condition checker.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, WeylElement};
use crate::scalar::{int, IntegerClass, Rational, Scalar};

/// A weight in `t*_E`, in the ambient coordinates of its root datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<Scalar>);

impl Weight {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Scalar::zero(); rank])
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn rational_coords(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(|c| c.as_rational().cloned()).collect()
    }

    /// Integer coordinates, if the weight is algebraic and fits in `i64`.
    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| match c.classify_integer() {
                IntegerClass::Integer(n) => i64::try_from(n).ok(),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeClass {
    pub algebraic: bool,
    pub integral: bool,
}

/// Sign of `<λ+ρ, α^v>` on an integral root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    fn of(r: &Rational) -> Sign {
        match r.cmp(&Rational::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    /// Whether `other` lies in the closure of the stratum `self`.
    pub fn closure_contains(self, other: Sign) -> bool {
        other == Sign::Zero || other == self
    }
}

/// `Φ_[λ]`, `Φ_[λ]^+` (as indices into [`RootDatum::roots`]) and `W_[λ]`.
#[derive(Debug, Clone)]
pub struct IntegralSubsystem {
    pub roots: Vec<usize>,
    pub positive: Vec<usize>,
    pub group: Vec<WeylElement>,
}

/// Sign pattern of a weight on `Φ_[λ]^+`, keyed by root index.
pub type FacetSignature = BTreeMap<usize, Sign>;

/// Outcome of checking the hypotheses of the translation equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub compatible: bool,
    pub antidominant_first: bool,
    pub antidominant_second: bool,
    pub stabilizers_equal: bool,
    pub key_condition: bool,
    pub failures: Vec<String>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RootDatum {
    /// `w · λ = w(λ + ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
        self.check_rank(lambda)?;
        let rho = self.rho();
        let shifted = lambda.add(&rho);
        Ok(Weight::new(w.act(shifted.coords())).sub(&rho))
    }

    pub fn linear_action(&self, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
        self.check_rank(lambda)?;
        Ok(Weight::new(w.act(lambda.coords())))
    }

    pub fn lattice_class(&self, lambda: &Weight) -> LatticeClass {
        let algebraic = lambda.coords().iter().all(Scalar::is_integer);
        let integral = self
            .roots()
            .iter()
            .all(|r| self.pairing(lambda, &r.coroot).is_integer());
        LatticeClass {
            algebraic,
            integral,
        }
    }

    pub fn is_integral(&self, lambda: &Weight) -> bool {
        self.lattice_class(lambda).integral
    }

    pub fn is_algebraic(&self, lambda: &Weight) -> bool {
        self.lattice_class(lambda).algebraic
    }

    /// `<λ + ρ, α^v>` for a root given by index.
    pub fn shifted_pairing(&self, lambda: &Weight, root: usize) -> Scalar {
        let coroot = &self.roots()[root].coroot;
        let rho_pair: i64 = self.two_rho().iter().zip(coroot).map(|(a, b)| a * b).sum();
        &self.pairing(lambda, coroot) + &Scalar::from(Rational::new(rho_pair.into(), 2.into()))
    }

    /// `<λ+ρ, α^v> ∉ Z_{≥1}` for every positive root.
    pub fn is_antidominant(&self, lambda: &Weight) -> bool {
        (0..self.positive_roots().len())
            .all(|i| !self.shifted_pairing(lambda, i).is_integer_at_least(1))
    }

    /// The dominant weight `ν̄` in the linear orbit of an integral `ν`, and
    /// `w` with `w(ν) = ν̄`.
    pub fn dominant_conjugate(&self, nu: &Weight) -> Result<(Weight, WeylElement)> {
        self.check_rank(nu)?;
        if !self.is_integral(nu) {
            return Err(Error::NotIntegral);
        }
        let mut current = nu.clone();
        let mut word: Vec<usize> = Vec::new();
        'outer: loop {
            for (i, c) in self.simple_coroots().iter().enumerate() {
                let p = self.pairing(&current, c);
                if p.rational_sign() == Some(Ordering::Less) {
                    // s_i(x) = x - <x, α_i^v> α_i
                    let root = &self.simple_roots()[i];
                    current = Weight::new(
                        current
                            .coords()
                            .iter()
                            .zip(root)
                            .map(|(x, &a)| x - &p.scale_int(a))
                            .collect(),
                    );
                    word.insert(0, i);
                    continue 'outer;
                }
            }
            break;
        }
        let w = self.element_from_word(&word)?;
        Ok((current, w))
    }

    /// The stabilizer `W°_λ` of `λ` for the dot-action.
    pub fn dot_stabilizer(&self, lambda: &Weight) -> Result<Vec<WeylElement>> {
        self.check_rank(lambda)?;
        let g = self.weyl_group()?;
        let mut out = Vec::new();
        for w in g.elements() {
            if &self.dot_action(w, lambda)? == lambda {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// Some `w` with `w · λ = μ`, i.e. a witness that `|λ| = |μ|`.
    pub fn dot_conjugating_element(
        &self,
        lambda: &Weight,
        mu: &Weight,
    ) -> Result<Option<WeylElement>> {
        self.check_rank(lambda)?;
        self.check_rank(mu)?;
        let g = self.weyl_group()?;
        for w in g.elements() {
            if &self.dot_action(w, lambda)? == mu {
                return Ok(Some(w.clone()));
            }
        }
        Ok(None)
    }

    pub fn is_linked(&self, lambda: &Weight, mu: &Weight) -> Result<bool> {
        Ok(self.dot_conjugating_element(lambda, mu)?.is_some())
    }

    pub fn integral_subsystem(&self, lambda: &Weight) -> Result<IntegralSubsystem> {
        self.check_rank(lambda)?;
        let roots: Vec<usize> = (0..self.roots().len())
            .filter(|&i| self.pairing(lambda, &self.roots()[i].coroot).is_integer())
            .collect();
        let positive = roots
            .iter()
            .copied()
            .filter(|&i| self.is_positive_root_index(i))
            .collect();
        let g = self.weyl_group()?;
        let mut group = Vec::new();
        for w in g.elements() {
            let diff = self.dot_action(w, lambda)?.sub(lambda);
            if self.in_root_lattice(&diff) {
                group.push(w.clone());
            }
        }
        Ok(IntegralSubsystem {
            roots,
            positive,
            group,
        })
    }

    /// Integral positive roots `Φ_[λ]^+`, without touching the Weyl group.
    pub fn integral_positive_roots(&self, lambda: &Weight) -> Vec<usize> {
        (0..self.positive_roots().len())
            .filter(|&i| self.pairing(lambda, &self.roots()[i].coroot).is_integer())
            .collect()
    }

    /// Sign of `<λ+ρ, α^v>` on each `α ∈ Φ_[λ]^+`.
    pub fn facet_signature(&self, lambda: &Weight) -> FacetSignature {
        self.integral_positive_roots(lambda)
            .into_iter()
            .map(|i| {
                let p = self.shifted_pairing(lambda, i);
                let r = p.as_rational().expect("integral root gives a rational pairing");
                (i, Sign::of(r))
            })
            .collect()
    }

    pub fn difference_is_integral(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.is_integral(&mu.sub(lambda))
    }

    /// Whether `μ^♮` lies in the closure of the facet containing `λ^♮`.
    pub fn key_condition(&self, lambda: &Weight, mu: &Weight) -> Result<bool> {
        self.check_rank(lambda)?;
        self.check_rank(mu)?;
        if !self.difference_is_integral(lambda, mu) {
            return Err(Error::NotComparable);
        }
        let sl = self.facet_signature(lambda);
        let sm = self.facet_signature(mu);
        debug_assert_eq!(sl.keys().collect::<Vec<_>>(), sm.keys().collect::<Vec<_>>());
        Ok(sl.iter().all(|(i, s)| s.closure_contains(sm[i])))
    }

    /// Evaluates conditions (i)–(iii) of the translation equivalence and the
    /// facet-closure condition, each independently.
    pub fn check_translation_conditions(
        &self,
        lambda: &Weight,
        mu: &Weight,
    ) -> Result<ConditionReport> {
        self.check_rank(lambda)?;
        self.check_rank(mu)?;
        let compatible = self.is_algebraic(&mu.sub(lambda));
        let antidominant_first = self.is_antidominant(lambda);
        let antidominant_second = self.is_antidominant(mu);
        let stab = |w: &Weight| -> Result<HashSet<WeylElement>> {
            Ok(self.dot_stabilizer(w)?.into_iter().collect())
        };
        let stabilizers_equal = stab(lambda)? == stab(mu)?;
        let key_condition = match self.key_condition(lambda, mu) {
            Ok(b) => b,
            Err(Error::NotComparable) => false,
            Err(e) => return Err(e),
        };
        let failures = [
            ("compatible", compatible),
            ("antidominant_first", antidominant_first),
            ("antidominant_second", antidominant_second),
            ("stabilizers_equal", stabilizers_equal),
            ("key_condition", key_condition),
        ]
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.to_string())
        .collect();
        Ok(ConditionReport {
            compatible,
            antidominant_first,
            antidominant_second,
            stabilizers_equal,
            key_condition,
            failures,
        })
    }

    /// Lifts an algebraic weight to its character exponents.
    pub fn algebraic_coords(&self, lambda: &Weight) -> Result<Vec<i64>> {
        lambda.int_coords().ok_or(Error::NotAlgebraic)
    }
}

/// `x ↦ x·k` on every coordinate.
pub fn scale_weight(lambda: &Weight, k: i64) -> Weight {
    Weight::new(lambda.coords().iter().map(|c| c.scale(&int(k))).collect())
}
