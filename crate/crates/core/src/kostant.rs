//! Kostant's multiplicity formula, kept as an independent check on the
//! Freudenthal recursion in `reps`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::weight::Weight;

/// Number of ways to write `target` (simple-root coordinates) as a sum of
/// positive roots, the roots taken from `roots[k..]`.
struct Partitions<'a> {
    roots: Vec<&'a [i64]>,
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl<'a> Partitions<'a> {
    fn count(&mut self, target: &[i64], k: usize) -> u64 {
        if target.iter().any(|&c| c < 0) {
            return 0;
        }
        if k == self.roots.len() {
            return u64::from(target.iter().all(|&c| c == 0));
        }
        let key = (target.to_vec(), k);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let root = self.roots[k];
        let mut cur = target.to_vec();
        let mut total = 0;
        while cur.iter().all(|&c| c >= 0) {
            total += self.count(&cur, k + 1);
            for (c, r) in cur.iter_mut().zip(root) {
                *c -= r;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// `m_{ν̄}(κ) = Σ_w ε(w) P(w(ν̄+ρ) - (κ+ρ))`.
pub fn kostant_multiplicity(rd: &RootDatum, highest: &Weight, kappa: &Weight) -> Result<u64> {
    let hw = rd.dominant_algebraic(highest)?;
    rd.check_rank(kappa)?;
    let k = kappa.int_coords().ok_or(Error::NotAlgebraic)?;
    let group = rd.weyl_group()?;
    let two_rho = rd.two_rho();
    let mut parts = Partitions {
        roots: rd.positive_roots().iter().map(|r| r.simple_coords.as_slice()).collect(),
        memo: HashMap::new(),
    };
    let mut acc: i64 = 0;
    for w in group.elements() {
        let wn = w.act_int(&hw);
        let wr = w.act_int(two_rho);
        let v: Vec<i64> = (0..hw.len())
            .map(|i| wn[i] + (wr[i] - two_rho[i]) / 2 - k[i])
            .collect();
        if let Some(c) = rd.root_coords_int(&v) {
            acc += w.sign() * parts.count(&c, 0) as i64;
        }
    }
    u64::try_from(acc).map_err(|_| Error::OracleMismatch("negative Kostant sum".into()))
}
