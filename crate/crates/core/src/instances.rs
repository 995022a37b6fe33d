//! Instance generators for the restricted weight family and bit-exact
//! instance file round-tripping.
//!
//! Every generator is a pure function of its [`GenSpec`], built on a
//! hand-rolled SplitMix64 stream so the same spec reproduces the same
//! instance on any platform or implementation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{dot, CapacityError, Instance, InstanceError, Wide};

/// SplitMix64 pseudorandom generator (the constants from Vigna's reference
/// `splitmix64.c`). Chosen over an external RNG so the exact output stream
/// is pinned by this file rather than by a library version.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Two words, high half first.
    fn next_u128(&mut self) -> u128 {
        let hi = self.next_u64() as u128;
        let lo = self.next_u64() as u128;
        hi << 64 | lo
    }

    /// Uniform draw from `lo..=hi`, unbiased via rejection sampling: draw
    /// 128 bits and retry while the draw falls in the partial block at the
    /// top of the range's multiples.
    pub fn uniform_wide(&mut self, lo: Wide, hi: Wide) -> Wide {
        assert!(lo <= hi, "empty range");
        // wrapping difference reads the span correctly even when it
        // exceeds i128::MAX
        let span = hi.wrapping_sub(lo) as u128;
        if span == u128::MAX {
            return lo.wrapping_add(self.next_u128() as Wide);
        }
        let range = span + 1;
        let zone = (u128::MAX / range) * range;
        loop {
            let draw = self.next_u128();
            if draw < zone {
                return lo.wrapping_add((draw % range) as Wide);
            }
        }
    }
}

/// Derives the seed for one benchmark run from a base seed, the dimension,
/// and the repetition index. Chained SplitMix64 scrambles keep distinct
/// `(n, rep)` pairs decorrelated while staying trivial to reproduce.
pub fn derive_seed(base: u64, n: u64, rep: u64) -> u64 {
    let a = SplitMix64::new(base).next_u64();
    let b = SplitMix64::new(a ^ n).next_u64();
    SplitMix64::new(b ^ rep).next_u64()
}

/// The instance families the generator knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Weights uniform in `(-2^n, 2^n)`, target uniform in `(-n·2^n, n·2^n)`.
    RestrictedUniform,
    /// Restricted weights with the target planted as a random selection's
    /// sum, so the instance is always solvable.
    Planted,
    /// Weights `1, 2, 4, …, 2^(n-1)`: all `2^n` selections have distinct
    /// sums.
    DistinctSums,
    /// Even weights with an odd target next to half the weight total:
    /// never solvable, so scans run to exhaustion through well-overlapped
    /// lists.
    ParityBlocked,
    /// Alternating `±2` weights with target 1: half-sum values interleave
    /// around the target, so an exhausting scan visits almost everything.
    ScanAdversarial,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::RestrictedUniform,
        Family::Planted,
        Family::DistinctSums,
        Family::ParityBlocked,
        Family::ScanAdversarial,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::RestrictedUniform => "restricted_uniform",
            Family::Planted => "planted",
            Family::DistinctSums => "distinct_sums",
            Family::ParityBlocked => "parity_blocked",
            Family::ScanAdversarial => "scan_adversarial",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| {
                format!(
                    "unknown family `{s}` (expected restricted_uniform, planted, distinct_sums, parity_blocked, or scan_adversarial)"
                )
            })
    }
}

/// A fully deterministic recipe for one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub family: Family,
    pub seed: u64,
    /// Only consulted by [`Family::DistinctSums`]: `Some(false)` places the
    /// target outside the sum range; anything else draws a reachable one.
    pub solvable_hint: Option<bool>,
}

/// Largest dimension the generators accept; beyond it the `2^n` weight
/// bound itself outgrows the wide-integer budget.
pub const MAX_GEN_N: usize = 120;

/// Builds the instance a [`GenSpec`] describes. Identical specs yield
/// identical instances. Weights are drawn first (ascending coordinate),
/// then the target or planted selection.
pub fn generate(spec: &GenSpec) -> Result<Instance, InstanceError> {
    let n = spec.n;
    if n == 0 {
        return Err(InstanceError::Empty);
    }
    if n > MAX_GEN_N {
        return Err(CapacityError::MagnitudeBudget.into());
    }
    let mut rng = SplitMix64::new(spec.seed);
    let weight_cap = (1 as Wide) << n; // |a_i| < 2^n

    match spec.family {
        Family::RestrictedUniform => {
            let a = draw_weights(&mut rng, n, weight_cap - 1);
            let target_cap = n as Wide * weight_cap - 1; // |b| < n·2^n
            let b = rng.uniform_wide(-target_cap, target_cap);
            Instance::new(a, b)
        }
        Family::Planted => {
            let a = draw_weights(&mut rng, n, weight_cap - 1);
            // one word per coordinate, low bit decides membership
            let planted: Vec<bool> = (0..n).map(|_| rng.next_u64() & 1 == 1).collect();
            let b = dot(&a, &planted);
            Instance::new(a, b)
        }
        Family::DistinctSums => {
            let a: Vec<Wide> = (0..n).map(|i| (1 as Wide) << i).collect();
            let b = if spec.solvable_hint == Some(false) {
                -1 // all sums are nonnegative
            } else {
                rng.uniform_wide(0, weight_cap - 1)
            };
            Instance::new(a, b)
        }
        Family::ParityBlocked => {
            // Even weights; the odd target sits next to half the weight
            // total, which is where the subset-sum distributions of any
            // coordinate split center, so the shifted scan lists overlap
            // instead of sliding past each other.
            let half_cap = (weight_cap >> 1) - 1;
            let a: Vec<Wide> = (0..n)
                .map(|_| 2 * rng.uniform_wide(-half_cap, half_cap))
                .collect();
            let mid = a.iter().sum::<Wide>() / 2;
            let b = if mid.rem_euclid(2) == 1 { mid } else { mid + 1 };
            Instance::new(a, b)
        }
        Family::ScanAdversarial => {
            // n = 1 cannot hold a ±2 weight under the |a_i| < 2 bound
            let a: Vec<Wide> = if n == 1 {
                vec![0]
            } else {
                (0..n).map(|i| if i % 2 == 0 { 2 } else { -2 }).collect()
            };
            Instance::new(a, 1)
        }
    }
}

fn draw_weights(rng: &mut SplitMix64, n: usize, cap: Wide) -> Vec<Wide> {
    (0..n).map(|_| rng.uniform_wide(-cap, cap)).collect()
}

/// Kinds of canonical-text parse failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A signed decimal integer was expected at this position.
    ExpectedInteger,
    /// Line 1 must hold a dimension of at least 1.
    InvalidDimension,
    /// Line 2 held the wrong number of weights.
    WeightCount { expected: usize, got: usize },
    /// The input ended before this line.
    MissingLine,
    /// Content after the final newline.
    TrailingData,
    /// The final line must end with a newline.
    MissingTrailingNewline,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::ExpectedInteger => write!(f, "expected a signed decimal integer"),
            ParseErrorKind::InvalidDimension => write!(f, "dimension must be an integer ≥ 1"),
            ParseErrorKind::WeightCount { expected, got } => {
                write!(f, "expected {expected} weights, found {got}")
            }
            ParseErrorKind::MissingLine => write!(f, "line is missing"),
            ParseErrorKind::TrailingData => write!(f, "unexpected data after the target line"),
            ParseErrorKind::MissingTrailingNewline => write!(f, "missing trailing newline"),
        }
    }
}

/// A malformed canonical-text instance, located by line and column
/// (both 1-based; the column is a byte offset into the line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// Any failure while reading an instance from text or JSON.
#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `n` is {n} but {len} weights were given")]
    Shape { n: usize, len: usize },
}

/// Canonical text form: dimension line, single-space-separated weights
/// line, target line, trailing newline. Byte-exact for a given instance.
pub fn write_instance(inst: &Instance) -> String {
    let weights = inst
        .weights()
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!("{}\n{}\n{}\n", inst.n(), weights, inst.target())
}

/// Parses the canonical text form, reporting the line and column of the
/// first offending byte on malformed input.
pub fn read_instance(text: &str) -> Result<Instance, ReadError> {
    let mut lines = text.split('\n');
    let dim_line = lines.next().filter(|_| !text.is_empty()).ok_or(ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::MissingLine,
    })?;
    let n = parse_integer(dim_line, 1, 1)?;
    if n < 1 || n > usize::MAX as i128 {
        return Err(ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::InvalidDimension,
        }
        .into());
    }
    let n = n as usize;

    let weights_line = lines.next().ok_or(ParseError {
        line: 2,
        col: 1,
        kind: ParseErrorKind::MissingLine,
    })?;
    let mut weights = Vec::with_capacity(n);
    let mut col = 1usize;
    for token in weights_line.split(' ') {
        if weights.len() == n {
            return Err(ParseError {
                line: 2,
                col,
                kind: ParseErrorKind::WeightCount {
                    expected: n,
                    got: n + 1,
                },
            }
            .into());
        }
        weights.push(parse_integer(token, 2, col)?);
        col += token.len() + 1;
    }
    if weights.len() != n {
        return Err(ParseError {
            line: 2,
            col: weights_line.len() + 1,
            kind: ParseErrorKind::WeightCount {
                expected: n,
                got: weights.len(),
            },
        }
        .into());
    }

    let target_line = lines.next().ok_or(ParseError {
        line: 3,
        col: 1,
        kind: ParseErrorKind::MissingLine,
    })?;
    let target = parse_integer(target_line, 3, 1)?;

    // the trailing newline leaves exactly one empty remainder
    match lines.next() {
        None => {
            return Err(ParseError {
                line: 3,
                col: target_line.len() + 1,
                kind: ParseErrorKind::MissingTrailingNewline,
            }
            .into())
        }
        Some("") => {}
        Some(_) => {
            return Err(ParseError {
                line: 4,
                col: 1,
                kind: ParseErrorKind::TrailingData,
            }
            .into())
        }
    }
    if lines.next().is_some() {
        return Err(ParseError {
            line: 4,
            col: 1,
            kind: ParseErrorKind::TrailingData,
        }
        .into());
    }

    Ok(Instance::new(weights, target)?)
}

/// Strict signed-decimal parse with error location. `line` and `col_base`
/// locate the token's first byte in the source.
fn parse_integer(token: &str, line: usize, col_base: usize) -> Result<Wide, ReadError> {
    let bytes = token.as_bytes();
    let digits_at = usize::from(bytes.first() == Some(&b'-'));
    let malformed = bytes[digits_at..].is_empty()
        || !bytes[digits_at..].iter().all(u8::is_ascii_digit)
        // no leading zeros: the canonical form writes plain decimals
        || (bytes[digits_at] == b'0' && bytes.len() > digits_at + 1);
    if malformed {
        let bad = bytes
            .iter()
            .enumerate()
            .skip(digits_at)
            .find(|(_, b)| !b.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(bytes.len().min(digits_at + 1));
        return Err(ParseError {
            line,
            col: col_base + bad,
            kind: ParseErrorKind::ExpectedInteger,
        }
        .into());
    }
    token.parse::<Wide>().map_err(|_| {
        // syntactically fine, too large for the wide range
        ReadError::Instance(CapacityError::Overflow.into())
    })
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    n: usize,
    a: Vec<Wide>,
    b: Wide,
}

/// Structured form: a single JSON object `{"n":…,"a":[…],"b":…}` plus a
/// trailing newline.
pub fn write_instance_json(inst: &Instance) -> String {
    let repr = InstanceRepr {
        n: inst.n(),
        a: inst.weights().to_vec(),
        b: inst.target(),
    };
    let mut s = serde_json::to_string(&repr).expect("instance serializes");
    s.push('\n');
    s
}

/// Parses the structured form, checking that `n` matches the weight count.
pub fn read_instance_json(text: &str) -> Result<Instance, ReadError> {
    let repr: InstanceRepr = serde_json::from_str(text)?;
    if repr.n != repr.a.len() {
        return Err(ReadError::Shape {
            n: repr.n,
            len: repr.a.len(),
        });
    }
    Ok(Instance::new(repr.a, repr.b)?)
}
