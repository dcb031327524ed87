//! Translation functors on Verma objects `M^B(τ)` and principal-series duals
//! `D(G) ⊗_{D(B)} E_τ`, at the level of characters.
//!
//! `translate_verma` uses the closed formula `M^B(w·λ̃) ↦ M^B(w·μ̃)` and then
//! recomputes the answer by brute force: filter `L(ν̄) ⊗ M` by the weights of
//! `L(ν̄)` and keep the subquotients in the block of `μ`. A disagreement is an
//! `OracleMismatch`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::character::TCharacter;
use crate::error::{Error, Result};
use crate::root_datum::{RootDatum, WeylElement};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VermaObject {
    pub hw: TCharacter,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl VermaObject {
    pub fn new(hw: TCharacter) -> Self {
        VermaObject { hw, label: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrincipalSeriesDual {
    pub inducing: TCharacter,
}

impl PrincipalSeriesDual {
    pub fn new(inducing: TCharacter) -> Self {
        PrincipalSeriesDual { inducing }
    }

    /// `D(G) ⊗_{D(B)} M^B(τ)` for `P = B`, which is `D(G) ⊗_{D(B)} E_τ`.
    pub fn from_verma(m: &VermaObject) -> Self {
        PrincipalSeriesDual::new(m.hw.clone())
    }
}

/// Subquotients of a filtration, with multiplicity. Extension data is not
/// recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalModule {
    summands: BTreeMap<TCharacter, u64>,
}

impl FormalModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: &VermaObject) -> Self {
        let mut f = Self::new();
        f.add(m.hw.clone(), 1);
        f
    }

    pub fn add(&mut self, hw: TCharacter, mult: u64) {
        if mult > 0 {
            *self.summands.entry(hw).or_insert(0) += mult;
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &FormalModule) -> FormalModule {
        let mut out = self.clone();
        for (hw, m) in &other.summands {
            out.add(hw.clone(), *m);
        }
        out
    }

    pub fn summands(&self) -> impl Iterator<Item = (VermaObject, u64)> + '_ {
        self.summands.iter().map(|(hw, &m)| (VermaObject::new(hw.clone()), m))
    }

    pub fn multiplicity(&self, hw: &TCharacter) -> u64 {
        self.summands.get(hw).copied().unwrap_or(0)
    }

    /// Total number of subquotients, with multiplicity.
    pub fn len(&self) -> u64 {
        self.summands.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The unique summand, if there is exactly one with multiplicity one.
    pub fn as_single(&self) -> Option<VermaObject> {
        match self.summands.iter().next() {
            Some((hw, 1)) if self.summands.len() == 1 => Some(VermaObject::new(hw.clone())),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SummandJson {
    hw: TCharacter,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct FormalModuleJson {
    summands: Vec<SummandJson>,
}

impl Serialize for FormalModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormalModuleJson {
            summands: self
                .summands
                .iter()
                .map(|(hw, &mult)| SummandJson { hw: hw.clone(), mult })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FormalModuleJson::deserialize(d)?;
        let mut f = FormalModule::new();
        for s in raw.summands {
            f.add(s.hw, s.mult);
        }
        Ok(f)
    }
}

impl RootDatum {
    /// Subquotients `M^B(x^{ν₁} τ)` of `L(ν̄) ⊗ M^B(τ)`, one per weight `ν₁`
    /// of `L(ν̄)` counted with multiplicity.
    pub fn tensor_filtration(&self, m: &VermaObject, nu_bar: &Weight) -> Result<FormalModule> {
        let weights = self.weight_multiplicities(nu_bar)?;
        let mut out = FormalModule::new();
        for (nu1, mult) in weights.iter() {
            let lift = TCharacter::algebraic(&nu1.int_coords().expect("weights of L(ν̄) are algebraic"));
            out.add(lift.mul(&m.hw), mult);
        }
        Ok(out)
    }

    /// Keeps the summands whose derivative lies in `W·μ`.
    pub fn project_linkage(&self, f: &FormalModule, mu: &Weight) -> Result<FormalModule> {
        let mut out = FormalModule::new();
        for (hw, &mult) in &f.summands {
            if self.is_linked(mu, &hw.derivative())? {
                out.add(hw.clone(), mult);
            }
        }
        Ok(out)
    }

    /// `pr_{|μ|}(L(ν̄) ⊗ pr_{|λ|}(M))` computed on the filtration, with no
    /// use of the facet condition.
    pub fn brute_force_translate(
        &self,
        m: &VermaObject,
        lambda: &Weight,
        mu: &Weight,
        nu_bar: &Weight,
    ) -> Result<FormalModule> {
        self.brute_force_translate_module(&FormalModule::single(m), lambda, mu, nu_bar)
    }

    pub fn brute_force_translate_module(
        &self,
        f: &FormalModule,
        lambda: &Weight,
        mu: &Weight,
        nu_bar: &Weight,
    ) -> Result<FormalModule> {
        let block = self.project_linkage(f, lambda)?;
        let mut out = FormalModule::new();
        for (m, mult) in block.summands() {
            let filtered = self.project_linkage(&self.tensor_filtration(&m, nu_bar)?, mu)?;
            for (n, k) in filtered.summands() {
                out.add(n.hw, k * mult);
            }
        }
        Ok(out)
    }

    /// Names of the hypotheses of `translate_verma` that fail.
    pub fn translation_preconditions(
        &self,
        lambda_t: &TCharacter,
        mu_t: &TCharacter,
        w: &WeylElement,
    ) -> Result<Vec<String>> {
        let lambda = lambda_t.derivative();
        let mu = mu_t.derivative();
        self.check_rank(&lambda)?;
        self.check_rank(&mu)?;
        let mut failed = Vec::new();
        if !mu_t.div(lambda_t).is_algebraic() {
            failed.push("compatible");
        }
        if !self.is_antidominant(&lambda) {
            failed.push("antidominant_first");
        }
        if !self.is_antidominant(&mu) {
            failed.push("antidominant_second");
        }
        match self.key_condition(&lambda, &mu) {
            Ok(true) => {}
            Ok(false) | Err(Error::NotComparable) => failed.push("key_condition"),
            Err(e) => return Err(e),
        }
        let moved = self.dot_action(w, &lambda)?.sub(&lambda);
        if !self.in_root_lattice(&moved) {
            failed.push("integral_weyl_group");
        }
        Ok(failed.into_iter().map(String::from).collect())
    }

    /// `T_λ^μ(M^B(w·λ̃)) = M^B(w·μ̃)`, checked against the brute-force
    /// computation.
    pub fn translate_verma(
        &self,
        lambda_t: &TCharacter,
        mu_t: &TCharacter,
        w: &WeylElement,
    ) -> Result<VermaObject> {
        let failed = self.translation_preconditions(lambda_t, mu_t, w)?;
        if !failed.is_empty() {
            return Err(Error::PreconditionFailed(failed));
        }
        let lambda = lambda_t.derivative();
        let mu = mu_t.derivative();
        let result = VermaObject::new(self.char_dot_action(w, mu_t)?);

        let (nu_bar, _) = self.dominant_conjugate(&mu.sub(&lambda))?;
        let source = VermaObject::new(self.char_dot_action(w, lambda_t)?);
        let brute = self.brute_force_translate(&source, &lambda, &mu, &nu_bar)?;
        if brute.as_single().as_ref() != Some(&result) {
            return Err(Error::OracleMismatch(format!(
                "translation of M^B({}) gave {} summands, expected exactly M^B({})",
                source.hw,
                brute.len(),
                result.hw
            )));
        }
        Ok(result)
    }

    /// `T_λ^μ(D(G) ⊗ E_{w·λ̃}) = D(G) ⊗ E_{w·μ̃}`, via the Verma computation.
    pub fn translate_principal_series(
        &self,
        lambda_t: &TCharacter,
        mu_t: &TCharacter,
        w: &WeylElement,
    ) -> Result<PrincipalSeriesDual> {
        let m = self.translate_verma(lambda_t, mu_t, w)?;
        Ok(PrincipalSeriesDual::from_verma(&m))
    }

    /// Some `w ∈ W_[λ]` with `w·λ̃ = τ`, if any.
    pub fn integral_dot_preimage(&self, lambda_t: &TCharacter, tau: &TCharacter) -> Result<Option<WeylElement>> {
        let lambda = lambda_t.derivative();
        for w in self.weyl_group()?.elements() {
            if &self.char_dot_action(w, lambda_t)? == tau
                && self.in_root_lattice(&self.dot_action(w, &lambda)?.sub(&lambda))
            {
                return Ok(Some(w.clone()));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::PadicCharacter;
    use crate::scalar::{int, rat, Scalar};

    fn gl2() -> RootDatum {
        RootDatum::preset("GL2").unwrap()
    }

    fn lam(wts: &[i64]) -> TCharacter {
        TCharacter::new(
            wts.iter()
                .enumerate()
                .map(|(i, &k)| PadicCharacter::declared(&format!("chi{}", i + 1), Scalar::from_int(k), rat(1, 3)))
                .collect(),
        )
    }

    #[test]
    fn filtration_gl2_adjoint() {
        let rd = gl2();
        let m = VermaObject::new(lam(&[-1, 1]));
        let f = rd.tensor_filtration(&m, &Weight::from_ints(&[1, -1])).unwrap();
        let ders: Vec<Weight> = f.summands().map(|(v, _)| v.hw.derivative()).collect();
        assert_eq!(f.len(), 3);
        for d in [[0, 0], [-1, 1], [-2, 2]] {
            assert!(ders.contains(&Weight::from_ints(&d)));
        }
        let p = rd.project_linkage(&f, &Weight::from_ints(&[-2, 2])).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.summands().next().unwrap().0.hw.derivative(), Weight::from_ints(&[-2, 2]));
        assert_eq!(rd.project_linkage(&p, &Weight::from_ints(&[-2, 2])).unwrap(), p);
        assert!(rd.project_linkage(&f, &Weight::from_ints(&[5, 7])).unwrap().is_empty());
    }

    #[test]
    fn filtration_sizes() {
        let rd = gl2();
        let m = VermaObject::new(lam(&[-1, 1]));
        let f = rd.tensor_filtration(&m, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.len(), 1);
        let rd3 = RootDatum::preset("GL3").unwrap();
        let m3 = VermaObject::new(TCharacter::trivial(3));
        assert_eq!(rd3.tensor_filtration(&m3, &Weight::from_ints(&[1, 0, -1])).unwrap().len(), 8);
        assert_eq!(
            rd.tensor_filtration(&m, &Weight::from_ints(&[-1, 1])).unwrap_err(),
            Error::NotDominant
        );
    }

    #[test]
    fn translate_gl2_regular() {
        let rd = gl2();
        let l = lam(&[-1, 1]);
        let mu = TCharacter::algebraic(&[-1, 1]).mul(&l);
        let e = WeylElement::identity(2);
        let out = rd.translate_verma(&l, &mu, &e).unwrap();
        assert_eq!(out.hw, mu);
        assert_eq!(out.hw.derivative(), Weight::from_ints(&[-2, 2]));
        let ps = rd.translate_principal_series(&l, &mu, &e).unwrap();
        assert_eq!(ps.inducing.derivative(), Weight::from_ints(&[-2, 2]));

        let w0 = rd.weyl_group().unwrap().longest().clone();
        let out = rd.translate_verma(&l, &mu, &w0).unwrap();
        assert_eq!(out.hw, rd.char_dot_action(&w0, &mu).unwrap());
    }

    #[test]
    fn trivial_translation_is_identity() {
        let rd = gl2();
        let l = lam(&[-1, 1]);
        for w in rd.weyl_group().unwrap().elements() {
            let out = rd.translate_verma(&l, &l, w).unwrap();
            assert_eq!(out.hw, rd.char_dot_action(w, &l).unwrap());
        }
    }

    #[test]
    fn translate_gl2_singular() {
        let rd = gl2();
        let l = lam(&[0, 1]);
        let mu = TCharacter::algebraic(&[1, 1]).mul(&l);
        let out = rd.translate_verma(&l, &mu, &WeylElement::identity(2)).unwrap();
        assert_eq!(out.hw.derivative(), Weight::from_ints(&[1, 2]));
    }

    #[test]
    fn preconditions_are_named() {
        let rd = gl2();
        let l = lam(&[0, 1]);
        let mu = TCharacter::algebraic(&[-1, 0]).mul(&l);
        let err = rd.translate_verma(&l, &mu, &WeylElement::identity(2)).unwrap_err();
        assert_eq!(err, Error::PreconditionFailed(vec!["key_condition".into()]));
        let dominant = lam(&[1, 0]);
        let err = rd.translate_verma(&dominant, &dominant, &WeylElement::identity(2)).unwrap_err();
        assert_eq!(
            err,
            Error::PreconditionFailed(vec!["antidominant_first".into(), "antidominant_second".into()])
        );
        let odd = l.mul(&TCharacter::new(vec![PadicCharacter::abs_x(), PadicCharacter::trivial()]));
        let err = rd.translate_verma(&l, &odd, &WeylElement::identity(2)).unwrap_err();
        assert_eq!(err.failures(), vec!["compatible".to_string()]);

        let t = TCharacter::new(vec![
            PadicCharacter::new(Scalar::symbol("t"), int(0)),
            PadicCharacter::trivial(),
        ]);
        let w0 = rd.weyl_group().unwrap().longest().clone();
        let err = rd.translate_verma(&t, &t, &w0).unwrap_err();
        assert_eq!(err.failures(), vec!["integral_weyl_group".to_string()]);
    }

    #[test]
    fn brute_force_on_key_condition_violation() {
        let rd = gl2();
        let l = VermaObject::new(lam(&[0, 1]));
        let f = rd
            .brute_force_translate(&l, &Weight::from_ints(&[0, 1]), &Weight::from_ints(&[-1, 1]), &Weight::from_ints(&[0, -1]))
            .unwrap();
        // both subquotients (0,0) and (-1,1) lie in the block of μ
        assert_eq!(f.len(), 2);
        let unlinked = rd
            .brute_force_translate(&l, &Weight::from_ints(&[5, 5]), &Weight::from_ints(&[-1, 1]), &Weight::from_ints(&[0, -1]))
            .unwrap();
        assert!(unlinked.is_empty());
    }

    #[test]
    fn json_shapes() {
        let f = FormalModule::single(&VermaObject::new(TCharacter::algebraic(&[1])));
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"summands":[{"hw":[{"wt":{"rat":"1"},"vp":"1"}],"mult":1}]}"#);
        assert_eq!(serde_json::from_str::<FormalModule>(&j).unwrap(), f);
        let v = serde_json::to_string(&VermaObject::new(TCharacter::trivial(1))).unwrap();
        assert_eq!(v, r#"{"hw":[{"wt":{"rat":"0"},"vp":"0"}]}"#);
    }
}
