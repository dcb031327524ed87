//! Trianguline parameters `s = (δ₁, δ₂, L)` for `GL2(Q_p)`: classification,
//! the character `λ̃(s)`, the two-term principal-series sequence of `Π(s)^la`
//! and its twisted translation.
//!
//! Wherever the pairing of `ν = w₁ε₁ + w₂ε₂` with the coroot enters the
//! twist conditions we use `n(ν) = (w₁ - w₂)/2`. The general pairing in
//! `weight` gives `w₁ - w₂`; with `n(ν)` the identities
//! `u(ŝ) = u(s) + n(ν)` and `w(ŝ) = w(s) + 2n(ν)` hold exactly.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::character::{PadicCharacter, TCharacter};
use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, WeylElement};
use crate::scalar::{int, rat, rational_string, IntegerClass, Rational, Scalar};
use crate::translation::PrincipalSeriesDual;

fn gl2() -> &'static RootDatum {
    static GL2: OnceLock<RootDatum> = OnceLock::new();
    GL2.get_or_init(|| RootDatum::preset("GL2").expect("GL2 preset"))
}

fn w0() -> WeylElement {
    gl2().element_from_word(&[0]).expect("simple reflection")
}

/// The L-invariant: `∞` or an opaque finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum LInvariant {
    #[default]
    Infinity,
    Finite(String),
}

impl Serialize for LInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LInvariant::Infinity => s.serialize_str("inf"),
            LInvariant::Finite(label) => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("finite", label)?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for LInvariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Finite { finite: String },
        }
        match Raw::deserialize(d)? {
            Raw::Name(n) if n == "inf" || n == "infinity" => Ok(LInvariant::Infinity),
            Raw::Name(n) => Err(serde::de::Error::custom(format!(
                "L must be \"inf\" or {{\"finite\": ..}}, got `{n}`"
            ))),
            Raw::Finite { finite } => Ok(LInvariant::Finite(finite)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangulinePoint {
    pub d1: PadicCharacter,
    pub d2: PadicCharacter,
    #[serde(rename = "L", default)]
    pub l: LInvariant,
}

impl TriangulinePoint {
    pub fn new(d1: PadicCharacter, d2: PadicCharacter) -> Self {
        TriangulinePoint {
            d1,
            d2,
            l: LInvariant::Infinity,
        }
    }

    /// `u(s) = v_p(δ₁(p))`.
    pub fn u(&self) -> Rational {
        self.d1.vp.clone()
    }

    /// `w(s) = w(δ₁) - w(δ₂)`.
    pub fn w(&self) -> Scalar {
        &self.d1.wt - &self.d2.wt
    }

    /// `δ₁ δ₂^{-1}`.
    pub fn ratio(&self) -> PadicCharacter {
        self.d1.div(&self.d2)
    }
}

impl fmt::Display for TriangulinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match &self.l {
            LInvariant::Infinity => "∞".to_string(),
            LInvariant::Finite(s) => s.clone(),
        };
        write!(f, "({}, {}, {})", self.d1, self.d2, l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    Ng,
    Cris,
    St,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "in_Zsp")]
    pub in_zsp: bool,
    #[serde(rename = "in_Zsp_prime")]
    pub in_zsp_prime: bool,
    #[serde(rename = "in_Sstar")]
    pub in_sstar: bool,
    pub stratum: Stratum,
    #[serde(rename = "in_Sirr")]
    pub in_sirr: bool,
    pub generic: bool,
    #[serde(with = "rational_string")]
    pub u: Rational,
    pub w: Scalar,
}

/// `δ₁δ₂^{-1} = x^i|x|` with `i ≥ 1`.
fn ratio_in_zsp(q: &PadicCharacter) -> bool {
    match q.wt.classify_integer() {
        IntegerClass::Integer(i) => {
            q.tame_trivial() && i >= 1.into() && q.vp == Rational::from(i) - Rational::one()
        }
        _ => false,
    }
}

/// `δ₁δ₂^{-1} = x^{-i}` with `i ≥ 0`.
fn ratio_in_zsp_prime(q: &PadicCharacter) -> bool {
    match q.wt.classify_integer() {
        IntegerClass::Integer(i) => q.tame_trivial() && i <= 0.into() && q.vp == Rational::from(i),
        _ => false,
    }
}

pub fn invariants_of(s: &TriangulinePoint) -> (Rational, Scalar) {
    (s.u(), s.w())
}

pub fn classify_point(s: &TriangulinePoint) -> Result<Classification> {
    let q = s.ratio();
    let in_zsp = ratio_in_zsp(&q);
    let in_zsp_prime = ratio_in_zsp_prime(&q);
    if matches!(s.l, LInvariant::Finite(_)) && !in_zsp && !in_zsp_prime {
        return Err(Error::MalformedPoint);
    }
    let u = s.u();
    let w = s.w();
    let in_sstar = (&s.d1.vp + &s.d2.vp).is_zero() && u > Rational::zero();
    let stratum = if !in_sstar {
        Stratum::None
    } else if !w.is_integer_at_least(1) {
        Stratum::Ng
    } else if &u < w.as_rational().expect("integer w") {
        match s.l {
            LInvariant::Infinity => Stratum::Cris,
            LInvariant::Finite(_) => Stratum::St,
        }
    } else {
        Stratum::None
    };
    let in_sirr = stratum != Stratum::None;
    Ok(Classification {
        in_zsp,
        in_zsp_prime,
        in_sstar,
        stratum,
        in_sirr,
        generic: in_sirr && !in_zsp,
        u,
        w,
    })
}

/// `λ̃(s) = δ₂^{-1} ⊗ δ₁^{-1} x|x|`.
pub fn lambda_of(s: &TriangulinePoint) -> TCharacter {
    let xax = PadicCharacter::x().mul(&PadicCharacter::abs_x());
    TCharacter::new(vec![s.d2.inv(), s.d1.inv().mul(&xax)])
}

/// Dual of `0 → B^la(δ₁,δ₂) → Π(s)^la → B^la(δ₂,δ₁) → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSequence {
    pub sub: PrincipalSeriesDual,
    pub quot: PrincipalSeriesDual,
}

fn require_generic(s: &TriangulinePoint) -> Result<Classification> {
    let c = classify_point(s)?;
    if !c.in_sirr {
        return Err(Error::NotIrreducibleLocus);
    }
    if !c.generic {
        return Err(Error::NotGeneric);
    }
    Ok(c)
}

pub fn dual_sequence(s: &TriangulinePoint) -> Result<DualSequence> {
    require_generic(s)?;
    let lambda = lambda_of(s);
    let sub = gl2().char_dot_action(&w0(), &lambda)?;
    Ok(DualSequence {
        sub: PrincipalSeriesDual::new(sub),
        quot: PrincipalSeriesDual::new(lambda),
    })
}

/// The four twist conditions, each evaluated on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    #[serde(with = "rational_string")]
    pub n: Rational,
    pub cond_theta: bool,
    pub cond1: bool,
    pub cond3: bool,
    pub cond2: bool,
    pub failures: Vec<String>,
}

impl TwistReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `n(ν) = (w₁ - w₂)/2`.
pub fn n_of(w1: i64, w2: i64) -> Rational {
    rat(w1 - w2, 2)
}

pub fn check_twist_conditions(
    s: &TriangulinePoint,
    w1: i64,
    w2: i64,
    theta: &PadicCharacter,
) -> TwistReport {
    let n = n_of(w1, w2);
    let u = s.u();
    let w = s.w();
    let cond_theta = theta.vp == rat(-(w1 + w2), 2);
    let cond1 = &u + &n > Rational::zero();
    let cond3 = match w.classify_integer() {
        IntegerClass::Integer(k) if k > 0.into() => Rational::from(k) + &n - &u > Rational::zero(),
        _ => true,
    };
    let cond2 = match w.classify_integer() {
        IntegerClass::Integer(k) => {
            let k = Rational::from(k);
            let shifted = &k + &n * int(2);
            k.cmp(&Rational::zero()) == shifted.cmp(&Rational::zero())
        }
        _ => true,
    };
    let failures = [
        ("cond_theta", cond_theta),
        ("cond1", cond1),
        ("cond3", cond3),
        ("cond2", cond2),
    ]
    .iter()
    .filter(|(_, ok)| !ok)
    .map(|(name, _)| name.to_string())
    .collect();
    TwistReport {
        n,
        cond_theta,
        cond1,
        cond3,
        cond2,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HatResult {
    pub s_hat: TriangulinePoint,
    pub mu_tilde: TCharacter,
}

fn verify(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OracleMismatch(what.to_string()))
    }
}

/// `ŝ = (δ₁x^{-w₂}θ^{-1}, δ₂x^{-w₁}θ^{-1}, ∞)` and `μ̃ = λ̃ ν̃ (θ ⊗ θ)`.
pub fn hat_construction(
    s: &TriangulinePoint,
    w1: i64,
    w2: i64,
    theta: &PadicCharacter,
) -> Result<HatResult> {
    require_generic(s)?;
    let report = check_twist_conditions(s, w1, w2, theta);
    if !report.all_hold() {
        return Err(Error::ConditionsFailed(report.failures));
    }
    let x = PadicCharacter::x();
    let s_hat = TriangulinePoint::new(
        s.d1.mul(&x.pow(-w2)).div(theta),
        s.d2.mul(&x.pow(-w1)).div(theta),
    );
    let nu = TCharacter::algebraic(&[w1, w2]);
    let mu_tilde = lambda_of(s).mul(&nu).twist(theta);

    let n = &report.n;
    verify((&s_hat.d1.vp + &s_hat.d2.vp).is_zero(), "valuations of ŝ do not sum to 0")?;
    verify(s_hat.u() == s.u() + n, "u(ŝ) ≠ u(s) + n(ν)")?;
    verify(s_hat.w() == &s.w() + &Scalar::from(n * int(2)), "w(ŝ) ≠ w(s) + 2n(ν)")?;
    verify(mu_tilde == lambda_of(&s_hat), "μ̃ ≠ λ̃(ŝ)")?;
    Ok(HatResult { s_hat, mu_tilde })
}

/// `T_{u·λ}^{u·μ} = T_λ^μ`: look for a representative pair in which the
/// closed formula applies to `term`.
fn translate_term(lambda_t: &TCharacter, mu_t: &TCharacter, term: &TCharacter) -> Result<TCharacter> {
    let rd = gl2();
    for u in rd.weyl_group()?.elements() {
        let l = rd.char_dot_action(u, lambda_t)?;
        let m = rd.char_dot_action(u, mu_t)?;
        if let Some(w) = rd.integral_dot_preimage(&l, term)? {
            if rd.translation_preconditions(&l, &m, &w)?.is_empty() {
                return Ok(rd.translate_principal_series(&l, &m, &w)?.inducing);
            }
        }
    }
    Err(Error::OracleMismatch(format!(
        "no representative pair translates D(G) ⊗ E_{{{term}}}"
    )))
}

/// `(θ ∘ det) ⊗ T_λ^μ` applied to both terms of `dual_sequence(s)`.
pub fn twisted_translate_pi(
    s: &TriangulinePoint,
    w1: i64,
    w2: i64,
    theta: &PadicCharacter,
) -> Result<DualSequence> {
    let hat = hat_construction(s, w1, w2, theta)?;
    let seq = dual_sequence(s)?;
    let lambda = lambda_of(s);
    let mu_untwisted = lambda.mul(&TCharacter::algebraic(&[w1, w2]));
    let sub = translate_term(&lambda, &mu_untwisted, &seq.sub.inducing)?.twist(theta);
    let quot = translate_term(&lambda, &mu_untwisted, &seq.quot.inducing)?.twist(theta);
    let out = DualSequence {
        sub: PrincipalSeriesDual::new(sub),
        quot: PrincipalSeriesDual::new(quot),
    };

    let c = classify_point(&hat.s_hat)?;
    verify(c.generic && c.in_sirr, "ŝ is not a generic point of S_irr")?;
    let expected = dual_sequence(&hat.s_hat)?;
    verify(out == expected, "translated sequence differs from the sequence of ŝ")?;
    Ok(out)
}
