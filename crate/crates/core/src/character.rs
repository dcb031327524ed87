//! Characters of `Q_p^×` and of the torus `T`, with the character-level
//! dot-action `w·τ = w(τ) γ_w |γ_w|`.
//!
//! A character of `Q_p^×` is recorded by its weight `w(δ)`, the valuation
//! `v_p(δ(p))` and a tame part in the free abelian group on named generators.
//! `|x|` sends `p` to `p^{-1}`, so it has valuation `-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, WeylElement};
use crate::scalar::{format_rational, int, rational_string, IntegerClass, Rational, Scalar};
use crate::weight::Weight;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PadicCharacter {
    pub wt: Scalar,
    #[serde(with = "rational_string")]
    pub vp: Rational,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tame: BTreeMap<String, i64>,
}

impl PadicCharacter {
    pub fn new(wt: Scalar, vp: Rational) -> Self {
        PadicCharacter {
            wt,
            vp,
            tame: BTreeMap::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `x`, the identity character.
    pub fn x() -> Self {
        Self::new(Scalar::one(), Rational::one())
    }

    /// `|x|`.
    pub fn abs_x() -> Self {
        Self::new(Scalar::zero(), int(-1))
    }

    /// A user-declared character carrying its own fresh generator `name`.
    pub fn declared(name: &str, wt: Scalar, vp: Rational) -> Self {
        let mut c = Self::new(wt, vp);
        c.tame.insert(name.to_string(), 1);
        c
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut tame = self.tame.clone();
        for (g, e) in &other.tame {
            let v = tame.entry(g.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                tame.remove(g);
            }
        }
        PadicCharacter {
            wt: &self.wt + &other.wt,
            vp: &self.vp + &other.vp,
            tame,
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::trivial();
        }
        PadicCharacter {
            wt: self.wt.scale_int(k),
            vp: &self.vp * int(k),
            tame: self.tame.iter().map(|(g, e)| (g.clone(), e * k)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn tame_trivial(&self) -> bool {
        self.tame.is_empty()
    }

    /// `x^k` for an integer `k`, if this character is one.
    pub fn algebraic_exponent(&self) -> Option<i64> {
        match self.wt.classify_integer() {
            IntegerClass::Integer(k) if self.tame.is_empty() && self.vp == Rational::from(k.clone()) => {
                i64::try_from(k).ok()
            }
            _ => None,
        }
    }

    pub fn is_algebraic(&self) -> bool {
        self.algebraic_exponent().is_some()
    }
}

impl fmt::Display for PadicCharacter {
    /// `x^a|x|^b` times tame generators; `|x|^b` carries `vp = a - b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.wt.as_rational() {
            Some(a) => {
                let b = a - &self.vp;
                if !a.is_zero() {
                    parts.push(if a.is_one() {
                        "x".to_string()
                    } else {
                        format!("x^{}", fmt_exp(a))
                    });
                }
                if !b.is_zero() {
                    parts.push(if b.is_one() {
                        "|x|".to_string()
                    } else {
                        format!("|x|^{}", fmt_exp(&b))
                    });
                }
            }
            None => parts.push(format!("[wt={}, vp={}]", self.wt, format_rational(&self.vp))),
        }
        for (g, e) in &self.tame {
            parts.push(if *e == 1 { g.clone() } else { format!("{g}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

fn fmt_exp(r: &Rational) -> String {
    if r.is_integer() && *r > Rational::zero() {
        format_rational(r)
    } else {
        format!("({})", format_rational(r))
    }
}

/// A character of `T`, one component per coordinate of `X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TCharacter(Vec<PadicCharacter>);

impl TCharacter {
    pub fn new(components: Vec<PadicCharacter>) -> Self {
        TCharacter(components)
    }

    pub fn trivial(rank: usize) -> Self {
        TCharacter(vec![PadicCharacter::trivial(); rank])
    }

    /// The algebraic character `x^{v}`.
    pub fn algebraic(v: &[i64]) -> Self {
        TCharacter(v.iter().map(|&k| PadicCharacter::x().pow(k)).collect())
    }

    /// The smooth character `|x|^{v}`.
    pub fn smooth_abs(v: &[i64]) -> Self {
        TCharacter(v.iter().map(|&k| PadicCharacter::abs_x().pow(k)).collect())
    }

    pub fn components(&self) -> &[PadicCharacter] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn derivative(&self) -> Weight {
        Weight::new(self.0.iter().map(|c| c.wt.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        TCharacter(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn inv(&self) -> Self {
        TCharacter(self.0.iter().map(PadicCharacter::inv).collect())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Multiplies every component by the same character.
    pub fn twist(&self, theta: &PadicCharacter) -> Self {
        TCharacter(self.0.iter().map(|c| c.mul(theta)).collect())
    }

    /// Exponents `v` with `self = x^{v}`.
    pub fn algebraic_exponents(&self) -> Option<Vec<i64>> {
        self.0.iter().map(PadicCharacter::algebraic_exponent).collect()
    }

    pub fn is_algebraic(&self) -> bool {
        self.algebraic_exponents().is_some()
    }
}

impl fmt::Display for TCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

impl RootDatum {
    fn check_char_rank(&self, tau: &TCharacter) -> Result<()> {
        if tau.rank() != self.rank() {
            return Err(Error::RankMismatch(format!(
                "character has {} components, datum has rank {}",
                tau.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `w(τ)`: component `i` is `Π_j τ_j^{M_ij}` for the matrix `M` of `w`.
    pub fn char_linear_action(&self, w: &WeylElement, tau: &TCharacter) -> Result<TCharacter> {
        self.check_char_rank(tau)?;
        let m = w.matrix();
        let n = self.rank();
        Ok(TCharacter(
            (0..n)
                .map(|i| {
                    (0..n).fold(PadicCharacter::trivial(), |acc, j| {
                        acc.mul(&tau.0[j].pow(m.get(i, j)))
                    })
                })
                .collect(),
        ))
    }

    /// `(γ_w, |γ_w|)` with `dγ_w = w(ρ) - ρ`.
    pub fn gamma_w(&self, w: &WeylElement) -> (TCharacter, TCharacter) {
        let two_rho = self.two_rho();
        let moved = w.act_int(two_rho);
        let c: Vec<i64> = moved
            .iter()
            .zip(two_rho)
            .map(|(a, b)| {
                let d = a - b;
                assert_eq!(d % 2, 0, "w(ρ) - ρ must be integral");
                d / 2
            })
            .collect();
        (TCharacter::algebraic(&c), TCharacter::smooth_abs(&c))
    }

    /// `w·τ = w(τ) γ_w |γ_w|`.
    pub fn char_dot_action(&self, w: &WeylElement, tau: &TCharacter) -> Result<TCharacter> {
        let (g, a) = self.gamma_w(w);
        Ok(self.char_linear_action(w, tau)?.mul(&g).mul(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pc(wt: i64, vp: i64) -> PadicCharacter {
        PadicCharacter::new(Scalar::from_int(wt), int(vp))
    }

    #[test]
    fn builtins_and_arith() {
        let x = PadicCharacter::x();
        let a = PadicCharacter::abs_x();
        assert_eq!(x.mul(&a), pc(1, 0));
        assert_eq!(x.pow(2).mul(&a).inv(), pc(-2, -1));
        let theta = PadicCharacter::declared("theta", Scalar::zero(), int(-1));
        assert_ne!(theta, a);
        assert_eq!(theta.div(&theta), PadicCharacter::trivial());
        assert!(x.pow(-3).is_algebraic());
        assert!(!a.is_algebraic());
        assert!(!x.mul(&theta).div(&a).is_algebraic());
    }

    #[test]
    fn display() {
        assert_eq!(PadicCharacter::x().to_string(), "x");
        assert_eq!(PadicCharacter::abs_x().to_string(), "|x|");
        assert_eq!(PadicCharacter::trivial().to_string(), "1");
        assert_eq!(pc(2, 1).to_string(), "x^2|x|");
        assert_eq!(pc(-1, -2).to_string(), "x^(-1)|x|");
        let d = PadicCharacter::declared("d", Scalar::symbol("t"), rat(1, 2));
        assert_eq!(d.to_string(), "[wt=t, vp=1/2]d");
    }

    #[test]
    fn json_round_trip() {
        let d = PadicCharacter::declared("d1", Scalar::symbol("t"), int(1));
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(j, r#"{"wt":{"rat":"0","sym":{"t":"1"}},"vp":"1","tame":{"d1":1}}"#);
        assert_eq!(serde_json::from_str::<PadicCharacter>(&j).unwrap(), d);
        let short: PadicCharacter = serde_json::from_str(r#"{"wt":2,"vp":"1/2"}"#).unwrap();
        assert_eq!(short, PadicCharacter::new(Scalar::from_int(2), rat(1, 2)));
    }

    #[test]
    fn gamma_gl2_w0() {
        let rd = RootDatum::preset("GL2").unwrap();
        let w0 = rd.weyl_group().unwrap().longest().clone();
        let (g, a) = rd.gamma_w(&w0);
        assert_eq!(g, TCharacter::new(vec![pc(-1, -1), pc(1, 1)]));
        assert_eq!(a, TCharacter::new(vec![pc(0, 1), pc(0, -1)]));
        let e = WeylElement::identity(2);
        assert_eq!(rd.gamma_w(&e), (TCharacter::trivial(2), TCharacter::trivial(2)));
    }

    #[test]
    fn gamma_gl3_s1() {
        let rd = RootDatum::preset("GL3").unwrap();
        let s1 = rd.element_from_word(&[0]).unwrap();
        let (g, _) = rd.gamma_w(&s1);
        assert_eq!(g.derivative(), Weight::from_ints(&[-1, 1, 0]));
    }

    #[test]
    fn w0_action_gl2_is_the_swap_formula() {
        let rd = RootDatum::preset("GL2").unwrap();
        let w0 = rd.weyl_group().unwrap().longest().clone();
        let t1 = PadicCharacter::declared("theta1", Scalar::symbol("a"), rat(1, 3));
        let t2 = PadicCharacter::declared("theta2", Scalar::symbol("c"), rat(-2, 5));
        let tau = TCharacter::new(vec![t1.clone(), t2.clone()]);
        let xax = PadicCharacter::x().mul(&PadicCharacter::abs_x());
        let expect = TCharacter::new(vec![t2.div(&xax), t1.mul(&xax)]);
        let got = rd.char_dot_action(&w0, &tau).unwrap();
        assert_eq!(got, expect);
        assert_eq!(rd.char_dot_action(&w0, &got).unwrap(), tau);
        assert_eq!(rd.char_dot_action(&WeylElement::identity(2), &tau).unwrap(), tau);
    }

    #[test]
    fn derivative_compatibility_on_presets() {
        for name in ["GL3", "B2", "G2", "SL3", "PGL2"] {
            let rd = RootDatum::preset(name).unwrap();
            let n = rd.rank();
            let tau = TCharacter::new(
                (0..n)
                    .map(|i| {
                        PadicCharacter::declared(
                            &format!("g{i}"),
                            &Scalar::symbol("t").scale_int(i as i64 + 1) + &Scalar::from(rat(1, i as i64 + 2)),
                            rat(i as i64, 3),
                        )
                    })
                    .collect(),
            );
            for w in rd.weyl_group().unwrap().elements() {
                let lhs = rd.char_dot_action(w, &tau).unwrap().derivative();
                let rhs = rd.dot_action(w, &tau.derivative()).unwrap();
                assert_eq!(lhs, rhs, "{name} {w}");
            }
        }
    }
}
