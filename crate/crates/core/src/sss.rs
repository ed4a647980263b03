//! Massey secret sharing on the dual of a trace code.
//!
//! The secret sits at coordinate 0 of a dual codeword `t = uH`; participant
//! `i` (for `1 <= i <= n-1`) holds `t_i`. Minimal access sets correspond to
//! minimal codewords of the code itself whose coordinate 0 is 1.

use crate::code::TraceCode;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::prime::{mod_inv, mod_mul, PrimeElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct MasseyScheme {
    code: TraceCode,
    dual: Matrix,
}

/// Shares produced by one deal, with the secret kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareDeal {
    pub secret: PrimeElement,
    pub seed: u64,
    /// `shares[i - 1]` belongs to participant `i`
    pub shares: Vec<PrimeElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Recovery {
    Secret { secret: PrimeElement },
    NotAnAccessSet,
}

impl MasseyScheme {
    /// Uses the reduced echelon basis of the dual as `H`.
    pub fn setup(code: &TraceCode) -> Result<Self> {
        MasseyScheme::with_dual_basis(code, code.dual_generator())
    }

    /// Uses a caller-supplied basis of the dual code.
    pub fn with_dual_basis(code: &TraceCode, dual: Matrix) -> Result<Self> {
        if code.n() < 2 {
            return Err(Error::Invalid("scheme needs length at least 2".into()));
        }
        if code.k() == 0 {
            return Err(Error::Invalid("scheme needs a nonzero code".into()));
        }
        if code.n() == code.k() {
            return Err(Error::TrivialDual);
        }
        if dual.cols() != code.n()
            || dual.rows() != code.n() - code.k()
            || dual.rank() != dual.rows()
            || !code.generator().mul(&dual.transpose()).is_zero()
        {
            return Err(Error::Invalid(
                "matrix is not a basis of the dual code".into(),
            ));
        }
        if dual.column(0).iter().all(|&x| x == 0) {
            return Err(Error::DegenerateSecret);
        }
        Ok(MasseyScheme {
            code: code.clone(),
            dual,
        })
    }

    pub fn code(&self) -> &TraceCode {
        &self.code
    }

    pub fn dual(&self) -> &Matrix {
        &self.dual
    }

    pub fn participants(&self) -> usize {
        self.code.n() - 1
    }

    fn p(&self) -> u32 {
        self.code.p()
    }

    /// Draws `u` uniformly from `{u : u . h_0 = s}` and hands out `uH`.
    ///
    /// The generator is ChaCha8 seeded with `seed`; coordinates of `u` other
    /// than the first with `h_0` nonzero are drawn in index order, and that
    /// one is solved for.
    pub fn deal(&self, secret: PrimeElement, seed: u64) -> ShareDeal {
        let p = self.p();
        let h0 = self.dual.column(0);
        let pivot = h0.iter().position(|&x| x != 0).expect("h_0 is nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut u = vec![0u32; h0.len()];
        let mut acc = 0u32;
        for (i, ui) in u.iter_mut().enumerate() {
            if i != pivot {
                *ui = rng.gen_range(0..p);
                acc = (acc + mod_mul(*ui, h0[i], p)) % p;
            }
        }
        let rest = (secret.value() % p + p - acc) % p;
        u[pivot] = mod_mul(rest, mod_inv(h0[pivot], p).expect("nonzero"), p);
        let t = self.dual.left_mul(&u);
        debug_assert_eq!(t[0], secret.value());
        ShareDeal {
            secret,
            seed,
            shares: t[1..]
                .iter()
                .map(|&v| PrimeElement::from_reduced(v))
                .collect(),
        }
    }

    /// Recovers the secret from the shares of the given participants.
    ///
    /// When every participant contributes, the padded share vector is also
    /// checked against the dual code.
    pub fn recover(&self, indices: &[usize], shares: &[PrimeElement]) -> Result<Recovery> {
        let p = self.p();
        let max = self.participants();
        if indices.len() != shares.len() {
            return Err(Error::Invalid(format!(
                "{} indices but {} shares",
                indices.len(),
                shares.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for (&i, s) in indices.iter().zip(shares) {
            if i == 0 || i > max {
                return Err(Error::ParticipantOutOfRange { index: i, max });
            }
            if !seen.insert(i) {
                return Err(Error::Invalid(format!("participant {i} listed twice")));
            }
            if s.value() >= p {
                return Err(Error::NotAResidue {
                    value: u64::from(s.value()),
                    p,
                });
            }
        }
        let r = self.dual.rows();
        let rows: Vec<Vec<u32>> = (0..r)
            .map(|row| indices.iter().map(|&i| self.dual.get(row, i)).collect())
            .collect();
        let system = Matrix::from_rows(&rows, indices.len(), p);
        let Some(x) = system.solve(&self.dual.column(0)) else {
            return Ok(Recovery::NotAnAccessSet);
        };
        let secret = x
            .iter()
            .zip(shares)
            .fold(0, |acc, (&xj, s)| (acc + mod_mul(xj, s.value(), p)) % p);
        if indices.len() == max {
            let mut t = vec![0u32; self.code.n()];
            t[0] = secret;
            for (&i, s) in indices.iter().zip(shares) {
                t[i] = s.value();
            }
            let syndrome = self.code.generator().mul_vec(&t);
            if syndrome.iter().any(|&v| v != 0) {
                return Err(Error::InconsistentShares);
            }
        }
        Ok(Recovery::Secret {
            secret: PrimeElement::from_reduced(secret),
        })
    }
}

/// Support of a vector as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Support(Vec<u64>);

impl Support {
    fn of(c: &[u32]) -> Self {
        let mut bits = vec![0u64; c.len().div_ceil(64)];
        for (i, &x) in c.iter().enumerate() {
            if x != 0 {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        Support(bits)
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn is_subset_of(&self, other: &Support) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Nonzero codewords whose support properly contains no other nonzero
/// codeword's support, in message order.
pub fn minimal_codewords(code: &TraceCode) -> Result<Vec<Vec<u32>>> {
    let words: Vec<Vec<u32>> = code
        .codewords()?
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect();
    let supports: Vec<Support> = words.iter().map(|c| Support::of(c)).collect();
    let mut distinct: Vec<(u32, Support)> = supports
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|s| (s.len(), s))
        .collect();
    distinct.sort();
    let minimal_supports: BTreeSet<&Support> = distinct
        .par_iter()
        .filter(|(size, s)| {
            !distinct
                .iter()
                .take_while(|(other, _)| other < size)
                .any(|(_, t)| t.is_subset_of(s))
        })
        .map(|(_, s)| s)
        .collect();
    Ok(words
        .into_iter()
        .zip(&supports)
        .filter(|(_, s)| minimal_supports.contains(s))
        .map(|(c, _)| c)
        .collect())
}

/// Minimal access sets of the scheme on the dual of `code`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AccessStructure {
    pub participants: usize,
    /// sorted participant indices, sets in lexicographic order
    pub minimal_access_sets: Vec<Vec<usize>>,
    pub per_participant_count: BTreeMap<usize, u64>,
    pub dictators: Vec<usize>,
    /// whether every nonzero codeword of the code is minimal
    pub all_codewords_minimal: bool,
}

impl AccessStructure {
    pub fn len(&self) -> usize {
        self.minimal_access_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minimal_access_sets.is_empty()
    }

    /// Number of minimal access sets containing both `i` and `j`, for `i < j`.
    pub fn pair_counts(&self) -> BTreeMap<(usize, usize), u64> {
        let mut counts = BTreeMap::new();
        for i in 1..=self.participants {
            for j in i + 1..=self.participants {
                counts.insert((i, j), 0);
            }
        }
        for set in &self.minimal_access_sets {
            for (a, &i) in set.iter().enumerate() {
                for &j in &set[a + 1..] {
                    *counts.get_mut(&(i, j)).expect("indices in range") += 1;
                }
            }
        }
        counts
    }
}

pub fn access_structure(code: &TraceCode) -> Result<AccessStructure> {
    let p = code.p();
    let total_nonzero = u64::from(p).pow(code.k() as u32) - 1;
    let minimal = minimal_codewords(code)?;
    let all_codewords_minimal = minimal.len() as u64 == total_nonzero;
    let sets: BTreeSet<Vec<usize>> = minimal
        .iter()
        .filter(|c| c[0] != 0)
        .map(|c| {
            // scaling by c_0^{-1} does not move the support
            (1..c.len()).filter(|&i| c[i] != 0).collect()
        })
        .collect();
    let participants = code.n() - 1;
    let mut per_participant_count: BTreeMap<usize, u64> =
        (1..=participants).map(|i| (i, 0)).collect();
    for set in &sets {
        for i in set {
            *per_participant_count.get_mut(i).expect("in range") += 1;
        }
    }
    let dictators = if sets.is_empty() {
        Vec::new()
    } else {
        per_participant_count
            .iter()
            .filter(|&(_, &c)| c == sets.len() as u64)
            .map(|(&i, _)| i)
            .collect()
    };
    Ok(AccessStructure {
        participants,
        minimal_access_sets: sets.into_iter().collect(),
        per_participant_count,
        dictators,
        all_codewords_minimal,
    })
}

/// Participants whose generator column is a scalar multiple of column 0.
pub fn proportional_columns(code: &TraceCode) -> Vec<usize> {
    let g = code.generator();
    let p = code.p();
    let g0 = g.column(0);
    (1..code.n())
        .filter(|&i| {
            let gi = g.column(i);
            (1..p).any(|a| g0.iter().zip(&gi).all(|(&x, &y)| mod_mul(a, x, p) == y))
        })
        .collect()
}

/// Counts predicted when every nonzero codeword is minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoreticalStats {
    pub minimal_access_sets: u128,
    /// sets containing a given group of `t` participants (for dual distance 2,
    /// a participant whose column is not proportional to column 0)
    pub per_group: u128,
    pub t: u32,
}

/// Membership counts for groups of `t` participants in a scheme built from
/// an `[n, k]` code with dual distance `d_dual`.
///
/// For `d_dual >= 3` requires `1 <= t <= min(k-1, d_dual-2)`; for
/// `d_dual = 2` only `t = 1` is meaningful.
pub fn theoretical_stats(p: u32, k: u32, d_dual: u32, t: u32) -> Result<TheoreticalStats> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let p128 = u128::from(p);
    let total = p128.pow(k - 1);
    let per_group = match d_dual {
        0 | 1 => {
            return Err(Error::Invalid(format!(
                "dual distance {d_dual} has no access structure formula"
            )))
        }
        2 => {
            if t != 1 || k < 2 {
                return Err(Error::Invalid(format!(
                    "t = {t} outside 1..=1 for dual distance 2"
                )));
            }
            (p128 - 1) * p128.pow(k - 2)
        }
        _ => {
            let hi = (k - 1).min(d_dual - 2);
            if t == 0 || t > hi {
                return Err(Error::Invalid(format!("t = {t} outside 1..={hi}")));
            }
            (p128 - 1).pow(t) * p128.pow(k - t - 1)
        }
    };
    Ok(TheoreticalStats {
        minimal_access_sets: total,
        per_group,
        t,
    })
}

/// Two candidate participant counts for the punctured odd-m scheme: the
/// roster size `n - 1` and the closed form `p^{m-2}`. They differ in general
/// and are reported side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParticipantCounts {
    pub roster: u64,
    pub closed_form: u64,
    pub agree: bool,
}

pub fn participant_counts(scheme: &MasseyScheme) -> ParticipantCounts {
    let ctx = scheme.code.field();
    let roster = scheme.participants() as u64;
    let closed_form = u64::from(ctx.p()).pow(ctx.m().saturating_sub(2));
    ParticipantCounts {
        roster,
        closed_form,
        agree: roster == closed_form,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleShare {
    pub participant: usize,
    pub value: u32,
}

/// Shares as written to disk; the secret is never included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareBundle {
    pub p: u32,
    pub m: u32,
    pub kind: String,
    pub modulus: Vec<u32>,
    pub seed: u64,
    pub shares: Vec<BundleShare>,
}

impl ShareBundle {
    pub fn new(scheme: &MasseyScheme, deal: &ShareDeal) -> Self {
        let ctx = scheme.code.field();
        ShareBundle {
            p: ctx.p(),
            m: ctx.m(),
            kind: scheme.code.defining_set().kind().label(),
            modulus: ctx.modulus().to_vec(),
            seed: deal.seed,
            shares: deal
                .shares
                .iter()
                .enumerate()
                .map(|(i, s)| BundleShare {
                    participant: i + 1,
                    value: s.value(),
                })
                .collect(),
        }
    }

    /// Share values of the given participants, in the order given.
    pub fn select(&self, coalition: &[usize]) -> Result<Vec<PrimeElement>> {
        coalition
            .iter()
            .map(|&i| {
                let share = self.shares.iter().find(|s| s.participant == i).ok_or(
                    Error::ParticipantOutOfRange {
                        index: i,
                        max: self.shares.len(),
                    },
                )?;
                PrimeElement::new(u64::from(share.value), self.p)
            })
            .collect()
    }
}
