//! Weights and multiplicities of the finite-dimensional irreducible `L(ν̄)`.
//!
//! Multiplicities come from Freudenthal's recursion over the saturated weight
//! set, using the W-invariant form `(x, y) = Σ_{α>0} <x,α^v><y,α^v>`. The
//! form vanishes on the central directions of a non-semisimple datum, which
//! is harmless: every weight of `L(ν̄)` differs from `ν̄` by a root-lattice
//! element.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::scalar::Rational;
use crate::weight::Weight;

/// The weights of `L(highest)` with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    highest: Weight,
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Total dimension.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            weight: &'a Weight,
            mult: u64,
        }
        let list: Vec<Entry> = self
            .entries
            .iter()
            .map(|(weight, &mult)| Entry { weight, mult })
            .collect();
        let mut st = s.serialize_struct("WeightMultiset", 3)?;
        st.serialize_field("highest", &self.highest)?;
        st.serialize_field("dimension", &self.dimension())?;
        st.serialize_field("weights", &list)?;
        st.end()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    /// Integer coordinates of a dominant algebraic weight.
    pub(crate) fn dominant_algebraic(&self, highest: &Weight) -> Result<Vec<i64>> {
        self.check_rank(highest)?;
        let hw = highest.int_coords().ok_or(Error::NotAlgebraic)?;
        if self.simple_coroots().iter().any(|c| dot(&hw, c) < 0) {
            return Err(Error::NotDominant);
        }
        Ok(hw)
    }

    fn dominant_conjugate_int(&self, v: &[i64]) -> Vec<i64> {
        let mut cur = v.to_vec();
        'outer: loop {
            for (root, co) in self.simple_roots().iter().zip(self.simple_coroots()) {
                let p = dot(&cur, co);
                if p < 0 {
                    for (x, a) in cur.iter_mut().zip(root) {
                        *x -= p * a;
                    }
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    fn form(&self, x: &[i64], y: &[i64]) -> i128 {
        self.positive_roots()
            .iter()
            .map(|r| dot(x, &r.coroot) as i128 * dot(y, &r.coroot) as i128)
            .sum()
    }

    /// Depth of `highest - v` in simple roots, if it is in `Q^+`.
    fn depth_below(&self, hw: &[i64], v: &[i64]) -> Option<i64> {
        let diff: Vec<i64> = hw.iter().zip(v).map(|(a, b)| a - b).collect();
        let c = self.root_coords_int(&diff)?;
        c.iter().all(|&x| x >= 0).then(|| c.iter().sum())
    }

    /// All weights of `L(ν̄)` with exact multiplicities.
    pub fn weight_multiplicities(&self, highest: &Weight) -> Result<WeightMultiset> {
        let hw = self.dominant_algebraic(highest)?;

        // saturated weight set, reached from ν̄ by lowering with simple roots
        let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
        depth.insert(hw.clone(), 0);
        let mut queue = VecDeque::from([hw.clone()]);
        while let Some(k) = queue.pop_front() {
            for root in self.simple_roots() {
                let next: Vec<i64> = k.iter().zip(root).map(|(a, b)| a - b).collect();
                if depth.contains_key(&next) {
                    continue;
                }
                let dom = self.dominant_conjugate_int(&next);
                if self.depth_below(&hw, &dom).is_some() {
                    let d = self.depth_below(&hw, &next).expect("lowered from ν̄");
                    depth.insert(next.clone(), d);
                    queue.push_back(next);
                }
            }
        }

        let mut order: Vec<&Vec<i64>> = depth.keys().collect();
        order.sort_by_key(|k| (depth[*k], (*k).clone()));

        let two_rho = self.two_rho();
        let hw_plus: Vec<i64> = hw.iter().zip(two_rho).map(|(a, b)| a + b).collect();
        let members: HashSet<&Vec<i64>> = depth.keys().collect();
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        for k in order {
            if *k == hw {
                mult.insert(k.clone(), 1);
                continue;
            }
            // (|ν̄+ρ|² - |κ+ρ|²) m(κ) = 2 Σ_{α>0} Σ_{j≥1} (κ+jα, α) m(κ+jα)
            let mut rhs: i128 = 0;
            for r in self.positive_roots() {
                let mut up: Vec<i64> = k.clone();
                loop {
                    for (x, a) in up.iter_mut().zip(&r.vector) {
                        *x += a;
                    }
                    if !members.contains(&up) {
                        break;
                    }
                    rhs += self.form(&up, &r.vector) * mult[&up] as i128;
                }
            }
            rhs *= 2;
            let diff: Vec<i64> = hw.iter().zip(k).map(|(a, b)| a - b).collect();
            let sum: Vec<i64> = hw_plus.iter().zip(k).map(|(a, b)| a + b).collect();
            let lhs = self.form(&diff, &sum);
            assert!(lhs > 0, "Freudenthal denominator must be positive below ν̄");
            assert_eq!(rhs % lhs, 0, "Freudenthal recursion must divide exactly");
            let m = rhs / lhs;
            mult.insert(k.clone(), u64::try_from(m).expect("nonnegative multiplicity"));
        }

        let entries = mult
            .into_iter()
            .filter(|(_, m)| *m > 0)
            .map(|(k, m)| (Weight::from_ints(&k), m))
            .collect();
        Ok(WeightMultiset {
            highest: highest.clone(),
            entries,
        })
    }

    /// `Π_{α>0} <ν̄+ρ, α^v> / <ρ, α^v>`.
    pub fn weyl_dimension(&self, highest: &Weight) -> Result<u64> {
        let hw = self.dominant_algebraic(highest)?;
        let mut acc = Rational::one();
        for r in self.positive_roots() {
            let rho2 = dot(self.two_rho(), &r.coroot);
            let num = 2 * dot(&hw, &r.coroot) + rho2;
            acc *= Rational::new(BigInt::from(num), BigInt::from(rho2));
        }
        assert!(acc.is_integer());
        Ok(acc.to_integer().to_u64().expect("dimension fits in u64"))
    }
}
