//! Randomized cross-check of claimed identities at rational points.
//!
//! Every atom (coordinate, exponential, parameter) gets an independent
//! random rational with numerator and denominator in `[1, 10^6]`. Each side
//! of an identity is evaluated separately and compared exactly, so the check
//! never goes through the canonical simplifier's zero test.

use std::collections::BTreeSet;

use pseudosym_expr::{Assignment, Atom, ExprError, IBig, RBig};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::Identity;
use crate::tensor::Tensor;

pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_SEED: u64 = 42;
pub const GRID_MAX: u64 = 1_000_000;
/// Zero-denominator resamples allowed per identity before giving up on it.
pub const MAX_DENOMINATOR_HITS: usize = 1000;
/// Components drawn from the support of each side per sample.
pub const COMPONENTS_PER_TENSOR: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Agrees,
    Disagrees,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub label: String,
    pub status: CheckStatus,
    /// Samples at which some evaluated component was nonzero.
    pub disagreeing_samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub seed: u64,
    pub identities: usize,
    pub disagreements: usize,
    pub inconclusive: usize,
    pub checks: Vec<IdentityCheck>,
}

fn random_rational(rng: &mut ChaCha8Rng) -> RBig {
    let p = rng.random_range(1..=GRID_MAX);
    let q = rng.random_range(1..=GRID_MAX);
    RBig::from_parts_signed(IBig::from(p), IBig::from(q))
}

fn support(t: &Tensor) -> Vec<usize> {
    t.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect()
}

fn identity_atoms(id: &Identity) -> Vec<Atom> {
    let mut atoms = BTreeSet::new();
    let tensors = std::iter::once(&id.lhs).chain(id.terms.iter().map(|(_, t)| t));
    for c in tensors.flat_map(|t| t.components()).chain(id.terms.iter().map(|(c, _)| c)) {
        atoms.extend(c.atoms());
    }
    atoms.into_iter().collect()
}

/// `lhs_c - Σ coef_j (term_j)_c` at one point.
fn residual_at(id: &Identity, coefs: &[RBig], c: usize, at: &Assignment) -> Result<RBig, ExprError> {
    let mut v = id.lhs.components()[c].evaluate_rational(at)?;
    for ((_, t), k) in id.terms.iter().zip(coefs) {
        let comp = &t.components()[c];
        if !comp.is_zero() {
            v -= k * comp.evaluate_rational(at)?;
        }
    }
    Ok(v)
}

fn sample_once(
    id: &Identity,
    atoms: &[Atom],
    supports: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Result<bool, ExprError> {
    let at: Assignment = atoms.iter().map(|&a| (a, random_rational(rng))).collect();
    let coefs = id
        .terms
        .iter()
        .map(|(c, _)| c.evaluate_rational(&at))
        .collect::<Result<Vec<_>, _>>()?;
    let mut comps = BTreeSet::new();
    for s in supports {
        if s.len() <= COMPONENTS_PER_TENSOR {
            comps.extend(s.iter().copied());
        } else {
            comps.extend(sample(rng, s.len(), COMPONENTS_PER_TENSOR).iter().map(|i| s[i]));
        }
    }
    for c in comps {
        if residual_at(id, &coefs, c, &at)? != RBig::ZERO {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks one identity at `samples` points drawn from stream `stream` of `seed`.
pub fn check_identity(id: &Identity, samples: usize, seed: u64, stream: u64) -> IdentityCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let atoms = identity_atoms(id);
    let mut supports = vec![support(&id.lhs)];
    supports.extend(id.terms.iter().map(|(_, t)| support(t)));
    let mut hits = 0;
    let mut done = 0;
    let mut disagreeing = 0;
    while done < samples {
        match sample_once(id, &atoms, &supports, &mut rng) {
            Ok(ok) => {
                done += 1;
                if !ok {
                    disagreeing += 1;
                }
            }
            Err(ExprError::ZeroDenominator) => {
                hits += 1;
                if hits >= MAX_DENOMINATOR_HITS {
                    return IdentityCheck {
                        label: id.label.clone(),
                        status: CheckStatus::Inconclusive,
                        disagreeing_samples: disagreeing,
                    };
                }
            }
            Err(e) => panic!("oracle evaluation failed for {}: {e}", id.label),
        }
    }
    IdentityCheck {
        label: id.label.clone(),
        status: if disagreeing == 0 {
            CheckStatus::Agrees
        } else {
            CheckStatus::Disagrees
        },
        disagreeing_samples: disagreeing,
    }
}

/// Checks every identity; identity `i` uses ChaCha stream `i`, so the result
/// does not depend on scheduling.
pub fn oracle_crosscheck(identities: &[Identity], samples: usize, seed: u64) -> OracleSummary {
    assert!(samples >= 1, "oracle needs at least one sample");
    let checks: Vec<IdentityCheck> = identities
        .par_iter()
        .enumerate()
        .map(|(i, id)| check_identity(id, samples, seed, i as u64))
        .collect();
    let count = |s: CheckStatus| checks.iter().filter(|c| c.status == s).count();
    OracleSummary {
        samples,
        seed,
        identities: checks.len(),
        disagreements: count(CheckStatus::Disagrees),
        inconclusive: count(CheckStatus::Inconclusive),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pseudosym_expr::Expr;

    fn scalar(e: Expr) -> Tensor {
        Tensor::from_components(1, 1, vec![e])
    }

    #[test]
    fn trivial_identity_agrees() {
        let id = Identity::new("0 = 0", Tensor::zeros(3, 2), vec![]);
        assert_eq!(check_identity(&id, 5, 1, 0).status, CheckStatus::Agrees);
    }

    #[test]
    fn true_and_perturbed_scalar_identity() {
        // (t - 1)/(x (t - 1)) = 1/x with t = e^{x}
        let x = Expr::coord(0);
        let t = Expr::exp_coord(0, 1);
        let lhs = &(&t - &Expr::one()) / &(&x * &(&t - &Expr::one()));
        let id = Identity::new("ok", scalar(lhs.clone()), vec![(x.recip().unwrap(), scalar(Expr::one()))]);
        assert_eq!(check_identity(&id, 50, 42, 0).status, CheckStatus::Agrees);
        let bad = Identity::new(
            "bad",
            scalar(lhs),
            vec![(&x.recip().unwrap() + &Expr::one(), scalar(Expr::one()))],
        );
        let r = check_identity(&bad, 50, 42, 0);
        assert_eq!(r.status, CheckStatus::Disagrees);
        assert_eq!(r.disagreeing_samples, 50);
    }

    #[test]
    fn seeded_runs_repeat() {
        let x = Expr::coord(0);
        let ids = vec![
            Identity::new("a", scalar(&x * &x), vec![(x.clone(), scalar(x.clone()))]),
            Identity::new("b", scalar(x.clone()), vec![(Expr::one(), scalar(Expr::one()))]),
        ];
        let a = oracle_crosscheck(&ids, 10, 7);
        assert_eq!(a, oracle_crosscheck(&ids, 10, 7));
        assert_eq!((a.identities, a.disagreements), (2, 1));
    }
}
