//! Complete SUBSET-SUM deciders: a brute-force oracle, the meet-in-the-middle
//! solver, and the three strategies for deciding an `(n+1)`-weight instance
//! through its two related `n`-weight subproblems. Every solver reports its
//! element-operation counters alongside the verdict.

use std::ops::Range;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::costmodel::{analytic_cost, CostRecorder, Strategy, StrategyCost};
use crate::halfsum::{two_pointer_scan, HalfSumTable};
use crate::problem::{verify, CapacityError, Certificate, Instance, InstanceError, Verdict, Wide};

/// Largest dimension the brute-force enumeration will accept.
pub const MAX_BRUTE_N: usize = 26;

/// Which decider ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "brute")]
    BruteForce,
    #[serde(rename = "mitm")]
    MeetInMiddle,
    #[serde(rename = "pair-independent")]
    PairIndependent,
    #[serde(rename = "pair-shared")]
    PairSharedSort,
    #[serde(rename = "pair-merged")]
    PairMerged,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::BruteForce,
        Algorithm::MeetInMiddle,
        Algorithm::PairIndependent,
        Algorithm::PairSharedSort,
        Algorithm::PairMerged,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::MeetInMiddle => "mitm",
            Algorithm::PairIndependent => "pair-independent",
            Algorithm::PairSharedSort => "pair-shared",
            Algorithm::PairMerged => "pair-merged",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected brute, mitm, pair-independent, pair-shared, or pair-merged)"))
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("pair strategies need at least two weights, got {n}")]
    PairDimension { n: usize },
}

impl From<InstanceError> for SolveError {
    fn from(e: InstanceError) -> Self {
        match e {
            // prefix instances of an accepted instance are never empty here
            InstanceError::Empty => unreachable!("pair prefixes have at least one weight"),
            InstanceError::Capacity(c) => SolveError::Capacity(c),
        }
    }
}

/// Verdict plus counters for one solving run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub verdict: Verdict,
    pub cost: StrategyCost,
}

/// The two subproblem verdicts behind a pair-strategy run.
///
/// `base` answers target `b` over the `n`-weight prefix and `shifted`
/// answers `b - a_n`. The merged strategy's single scan stops at its first
/// match, so it proves only the matched branch; the other stays `None`.
/// When no match exists the scan exhausts the whole union, which settles
/// both branches, and an unmatched merged run therefore reports both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub base: Option<Verdict>,
    pub shifted: Option<Verdict>,
    pub combined: bool,
}

impl PairVerdict {
    fn consistent(&self) -> bool {
        let any_solvable = [&self.base, &self.shifted]
            .into_iter()
            .flatten()
            .any(Verdict::is_solvable);
        self.combined == any_solvable
    }
}

/// Exhaustive oracle: walks all `2^n` selections in increasing binary order
/// (first coordinate in the most significant position, so the order is
/// lexicographic) and returns the first witness, if any.
///
/// Counters: `elements_scanned` and `comparisons` both record the number of
/// selections examined, which is exactly `2^n` on unsolvable instances.
pub fn brute_force(inst: &Instance) -> Result<SolveReport, SolveError> {
    let n = inst.n();
    if n > MAX_BRUTE_N {
        return Err(CapacityError::BruteDimension { n, max: MAX_BRUTE_N }.into());
    }
    let start = Instant::now();

    // Bit j of the counter holds coordinate n-1-j, so counting up walks
    // selections lexicographically. Incrementing flips a run of trailing
    // ones and sets the bit above it; with per-bit weights and their prefix
    // sums precomputed, each step updates the running sum in O(1).
    let bit_weight: Vec<Wide> = (0..n).map(|j| inst.weights()[n - 1 - j]).collect();
    let mut prefix = vec![0 as Wide; n + 1];
    for j in 0..n {
        prefix[j + 1] = prefix[j] + bit_weight[j];
    }

    let target = inst.target();
    let total: u64 = 1 << n;
    let mut code: u64 = 0;
    let mut sum: Wide = 0;
    let mut examined: u64 = 0;
    let witness = loop {
        examined += 1;
        if sum == target {
            break Some(code);
        }
        code += 1;
        if code == total {
            break None;
        }
        let flipped = code.trailing_zeros() as usize;
        sum += bit_weight[flipped];
        sum -= prefix[flipped];
    };

    let verdict = match witness {
        Some(code) => {
            let bits: Vec<bool> = (0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect();
            Verdict::Solvable(Certificate::new(bits))
        }
        None => Verdict::Unsolvable,
    };

    let mut rec = CostRecorder::new();
    rec.charge_scan(examined, examined);
    Ok(SolveReport {
        algorithm: Algorithm::BruteForce,
        verdict,
        cost: rec.finish(start.elapsed(), None),
    })
}

/// Splits the coordinates at `⌈n/2⌉`, enumerates both halves, and scans
/// `b − S⁻` against `S⁺` for a common value. A match decodes into a full
/// certificate from the two half masks.
pub fn meet_in_middle(inst: &Instance) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let mut rec = CostRecorder::new();
    let verdict = mitm_core(inst, &mut rec)?;
    Ok(SolveReport {
        algorithm: Algorithm::MeetInMiddle,
        verdict,
        cost: rec.finish(start.elapsed(), None),
    })
}

fn mitm_core(inst: &Instance, rec: &mut CostRecorder) -> Result<Verdict, SolveError> {
    let n = inst.n();
    let split = n.div_ceil(2);
    let plus = HalfSumTable::enumerate(inst.weights(), 0..split)?;
    let minus = HalfSumTable::enumerate(inst.weights(), split..n)?;
    let left = minus.shift_negate(inst.target())?;
    rec.charge_sort(left.len());
    rec.charge_sort(plus.len());
    let scan = two_pointer_scan(&left, &plus);
    rec.record_scan(&scan);
    Ok(match (scan.left_index, scan.right_index) {
        (Some(li), Some(ri)) => {
            let cert = certificate_from_masks(
                n,
                &[
                    (plus.range(), plus.entries()[ri].mask),
                    (left.range(), left.entries()[li].mask),
                ],
            );
            debug_assert!(verify(inst, &cert));
            Verdict::Solvable(cert)
        }
        _ => Verdict::Unsolvable,
    })
}

/// Solves both subproblems of an `(n+1)`-weight instance from scratch with
/// two full meet-in-the-middle runs over the `n`-weight prefix.
pub fn solve_pair_independent(inst: &Instance) -> Result<(PairVerdict, SolveReport), SolveError> {
    let start = Instant::now();
    let (prefix_n, base_inst, shifted_inst) = pair_subproblems(inst)?;
    let mut rec = CostRecorder::new();
    let base = mitm_core(&base_inst, &mut rec)?;
    let shifted = mitm_core(&shifted_inst, &mut rec)?;
    let pair = PairVerdict {
        combined: base.is_solvable() || shifted.is_solvable(),
        base: Some(base),
        shifted: Some(shifted),
    };
    debug_assert!(pair.consistent());
    let report = pair_report(
        inst,
        Algorithm::PairIndependent,
        Strategy::Independent,
        prefix_n,
        &pair,
        rec,
        start,
    );
    Ok((pair, report))
}

/// Sorts the prefix's half tables once and scans them twice, against the
/// targets `b` and `b - a_n`.
pub fn solve_pair_shared_sort(inst: &Instance) -> Result<(PairVerdict, SolveReport), SolveError> {
    let start = Instant::now();
    let (prefix_n, base_inst, shifted_inst) = pair_subproblems(inst)?;
    let split = prefix_n.div_ceil(2);
    let plus = HalfSumTable::enumerate(inst.weights(), 0..split)?;
    let minus = HalfSumTable::enumerate(inst.weights(), split..prefix_n)?;
    let mut rec = CostRecorder::new();
    rec.charge_sort(minus.len() + plus.len());

    let scan_target = |target: Wide, rec: &mut CostRecorder| -> Result<Verdict, SolveError> {
        let left = minus.shift_negate(target)?;
        let scan = two_pointer_scan(&left, &plus);
        rec.record_scan(&scan);
        Ok(match (scan.left_index, scan.right_index) {
            (Some(li), Some(ri)) => Verdict::Solvable(certificate_from_masks(
                prefix_n,
                &[
                    (plus.range(), plus.entries()[ri].mask),
                    (left.range(), left.entries()[li].mask),
                ],
            )),
            _ => Verdict::Unsolvable,
        })
    };

    let base = scan_target(base_inst.target(), &mut rec)?;
    let shifted = scan_target(shifted_inst.target(), &mut rec)?;
    let pair = PairVerdict {
        combined: base.is_solvable() || shifted.is_solvable(),
        base: Some(base),
        shifted: Some(shifted),
    };
    debug_assert!(pair.consistent());
    let report = pair_report(
        inst,
        Algorithm::PairSharedSort,
        Strategy::SharedSort,
        prefix_n,
        &pair,
        rec,
        start,
    );
    Ok((pair, report))
}

/// Replaces the minus half with its union against the `a_n`-shifted copy
/// and decides both subproblems with a single scan against target `b`.
/// For odd prefix dimensions this builds exactly the tables a full
/// meet-in-the-middle run on the whole instance would build.
pub fn solve_pair_merged(inst: &Instance) -> Result<(PairVerdict, SolveReport), SolveError> {
    let start = Instant::now();
    let (prefix_n, base_inst, _) = pair_subproblems(inst)?;
    let last = inst.weights()[prefix_n];
    let split = prefix_n.div_ceil(2);
    let plus = HalfSumTable::enumerate(inst.weights(), 0..split)?;
    let minus = HalfSumTable::enumerate(inst.weights(), split..prefix_n)?;
    let union = minus.union_shift(last)?;
    let mut rec = CostRecorder::new();
    rec.charge_sort(union.len() + plus.len());

    let left = union.shift_negate(base_inst.target())?;
    let scan = two_pointer_scan(&left, &plus);
    rec.record_scan(&scan);

    let pair = match (scan.left_index, scan.right_index) {
        (Some(li), Some(ri)) => {
            let union_mask = left.entries()[li].mask;
            let offset_applied = union_mask >> minus.width() & 1 == 1;
            let prefix_cert = certificate_from_masks(
                prefix_n,
                &[
                    (plus.range(), plus.entries()[ri].mask),
                    (minus.range(), union_mask & !(1 << minus.width())),
                ],
            );
            // The scan proves only the branch it matched; the other branch
            // would need the rest of the scan to settle.
            if offset_applied {
                PairVerdict {
                    base: None,
                    shifted: Some(Verdict::Solvable(prefix_cert)),
                    combined: true,
                }
            } else {
                PairVerdict {
                    base: Some(Verdict::Solvable(prefix_cert)),
                    shifted: None,
                    combined: true,
                }
            }
        }
        // An exhausted union scan rules out both branches at once.
        _ => PairVerdict {
            base: Some(Verdict::Unsolvable),
            shifted: Some(Verdict::Unsolvable),
            combined: false,
        },
    };
    debug_assert!(pair.consistent());
    let report = pair_report(
        inst,
        Algorithm::PairMerged,
        Strategy::Merged,
        prefix_n,
        &pair,
        rec,
        start,
    );
    Ok((pair, report))
}

/// Runs the strategy matching `algorithm` when it is one of the pair
/// deciders.
pub fn solve_pair(
    algorithm: Algorithm,
    inst: &Instance,
) -> Option<Result<(PairVerdict, SolveReport), SolveError>> {
    match algorithm {
        Algorithm::PairIndependent => Some(solve_pair_independent(inst)),
        Algorithm::PairSharedSort => Some(solve_pair_shared_sort(inst)),
        Algorithm::PairMerged => Some(solve_pair_merged(inst)),
        _ => None,
    }
}

/// Dispatches any algorithm to a plain [`SolveReport`].
pub fn solve(algorithm: Algorithm, inst: &Instance) -> Result<SolveReport, SolveError> {
    match algorithm {
        Algorithm::BruteForce => brute_force(inst),
        Algorithm::MeetInMiddle => meet_in_middle(inst),
        _ => solve_pair(algorithm, inst).expect("pair algorithm")
            .map(|(_, report)| report),
    }
}

fn pair_subproblems(inst: &Instance) -> Result<(usize, Instance, Instance), SolveError> {
    let n = inst.n();
    if n < 2 {
        return Err(SolveError::PairDimension { n });
    }
    let prefix_n = n - 1;
    let last = inst.weights()[prefix_n];
    let shifted_target = inst
        .target()
        .checked_sub(last)
        .ok_or(CapacityError::Overflow)?;
    let base = inst.prefix(prefix_n, inst.target())?;
    let shifted = inst.prefix(prefix_n, shifted_target)?;
    Ok((prefix_n, base, shifted))
}

#[allow(clippy::too_many_arguments)]
fn pair_report(
    inst: &Instance,
    algorithm: Algorithm,
    strategy: Strategy,
    prefix_n: usize,
    pair: &PairVerdict,
    rec: CostRecorder,
    start: Instant,
) -> SolveReport {
    let verdict = full_verdict(inst, pair);
    debug_assert!(verdict
        .certificate()
        .map(|c| verify(inst, c))
        .unwrap_or(!pair.combined));
    SolveReport {
        algorithm,
        verdict,
        cost: rec.finish(
            start.elapsed(),
            Some(analytic_cost(strategy, prefix_n).total_units),
        ),
    }
}

/// Lifts a pair verdict to a verdict over the full `(n+1)`-weight instance:
/// a base witness gets `x_{n+1} = 0` appended, a shifted witness `x_{n+1} = 1`.
fn full_verdict(inst: &Instance, pair: &PairVerdict) -> Verdict {
    if !pair.combined {
        return Verdict::Unsolvable;
    }
    let branches = [(&pair.base, false), (&pair.shifted, true)];
    for (branch, last_bit) in branches {
        if let Some(Verdict::Solvable(cert)) = branch {
            let mut bits = cert.bits().to_vec();
            bits.push(last_bit);
            debug_assert_eq!(bits.len(), inst.n());
            return Verdict::Solvable(Certificate::new(bits));
        }
    }
    unreachable!("combined pair verdicts carry a solvable branch")
}

/// Assembles a full-length certificate from per-range masks. Bit `i` of a
/// part's mask selects coordinate `range.start + i`; unspecified
/// coordinates default to 0.
fn certificate_from_masks(n: usize, parts: &[(Range<usize>, u64)]) -> Certificate {
    let mut bits = vec![false; n];
    for (range, mask) in parts {
        for (offset, slot) in range.clone().enumerate() {
            if mask >> offset & 1 == 1 {
                bits[slot] = true;
            }
        }
    }
    Certificate::new(bits)
}
