//! Exhaustive check that the mod-`p` lattice behind `H_k` is full.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use super::{mycroft_generators, mycroft_lattice, smallest_prime_factor};
use crate::error::{Error, Result};
use crate::lattice::s_vectors;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub p: usize,
    pub k: usize,
    /// Size of `L` as a subgroup of `Z_p^p`.
    pub lattice_size: usize,
    pub transferrals_checked: usize,
    pub transferral_free: bool,
    pub vectors_checked: usize,
    /// First `(k−1)`-vector with no completing unit vector.
    pub completion_failure: Option<Vec<i64>>,
    /// Whether Hermite-form membership matches the enumerated subgroup on all of `Z_p^p`.
    pub hnf_agrees: bool,
    pub passed: bool,
}

fn reduce(v: &[i64], p: i64) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(p)).collect()
}

/// Enumerates `L = span{v_1, ..., v_{p−1}}` inside `Z_p^p` element by element
/// and checks transferral-freeness and the completion property directly.
pub fn verify_claim_41(p: usize, k: usize) -> Result<ClaimReport> {
    if k < 2 || smallest_prime_factor(k) != Some(p) {
        return Err(Error::invalid(format!(
            "p = {p} must be the smallest prime factor of k = {k}"
        )));
    }
    if p > 7 {
        return Err(Error::UnsupportedParameter(format!(
            "exhaustive enumeration over Z_{p}^{p} is too large"
        )));
    }
    let pi = p as i64;
    let gens = mycroft_generators(p);
    let mut members: HashSet<Vec<i64>> = HashSet::new();
    for coeffs in (0..gens.len()).map(|_| 0..pi).multi_cartesian_product() {
        let mut v = vec![0i64; p];
        for (c, g) in coeffs.iter().zip(&gens) {
            for (x, y) in v.iter_mut().zip(g) {
                *x += c * y;
            }
        }
        members.insert(reduce(&v, pi));
    }
    if gens.is_empty() {
        members.insert(vec![0; p]);
    }

    let mut transferrals = 0;
    let mut transferral_free = true;
    for (i, j) in (0..p).cartesian_product(0..p).filter(|(i, j)| i != j) {
        transferrals += 1;
        let mut t = vec![0i64; p];
        t[i] = 1;
        t[j] = -1;
        if members.contains(&reduce(&t, pi)) {
            transferral_free = false;
        }
    }

    let vectors = s_vectors(p, k - 1);
    let completion_failure = vectors
        .iter()
        .find(|v| {
            !(0..p).any(|i| {
                let mut w = v.coords().to_vec();
                w[i] += 1;
                members.contains(&reduce(&w, pi))
            })
        })
        .map(|v| v.coords().to_vec());

    let lattice = mycroft_lattice(p)?;
    let mut hnf_agrees = true;
    for v in (0..p).map(|_| 0..pi).multi_cartesian_product() {
        if lattice.contains(&v)? != members.contains(&v) {
            hnf_agrees = false;
            break;
        }
    }

    Ok(ClaimReport {
        p,
        k,
        lattice_size: members.len(),
        transferrals_checked: transferrals,
        transferral_free,
        vectors_checked: vectors.len(),
        passed: transferral_free && completion_failure.is_none() && hnf_agrees,
        completion_failure,
        hnf_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_pass() {
        for (p, k) in [(2, 4), (3, 3), (5, 5), (2, 6), (3, 9)] {
            let r = verify_claim_41(p, k).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.lattice_size, p.pow(p as u32 - 1));
            assert_eq!(r.transferrals_checked, p * (p - 1));
        }
    }

    #[test]
    fn rejects_wrong_prime() {
        assert!(verify_claim_41(3, 6).is_err());
        assert!(verify_claim_41(4, 4).is_err());
    }
}
