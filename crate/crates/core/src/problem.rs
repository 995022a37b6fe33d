//! Problem instances, selection witnesses, and exact verification.

use thiserror::Error;

/// Wide signed integer used for every weight, target, and partial sum.
///
/// 127 magnitude bits are plenty: [`Instance::new`] rejects inputs whose
/// weight-magnitude sum plus target magnitude leaves [`MAGNITUDE_BUDGET`],
/// so no expression derived from an accepted instance (a subset sum, a
/// shifted target `b - s`, an offset sum `s + a_n`) can overflow.
pub type Wide = i128;

/// Upper bound on `|b| + Σ|a_i|` accepted at construction. The slack of two
/// bits covers doubly-shifted expressions such as `(b - a_n) - s`.
pub const MAGNITUDE_BUDGET: Wide = Wide::MAX / 4;

/// An arithmetic value would not fit the wide-integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CapacityError {
    /// `|b| + Σ|a_i|` exceeds [`MAGNITUDE_BUDGET`].
    #[error("weight magnitudes plus target exceed the wide-integer budget")]
    MagnitudeBudget,
    /// An intermediate operation overflowed `Wide`.
    #[error("arithmetic overflowed the wide-integer range")]
    Overflow,
    /// A half-table enumeration was asked to cover too many coordinates.
    #[error("half-table width {width} exceeds the maximum of {max}")]
    HalfWidth { width: usize, max: usize },
    /// Brute force was asked to enumerate too large a dimension.
    #[error("dimension {n} exceeds the brute-force maximum of {max}")]
    BruteDimension { n: usize, max: usize },
}

/// Rejected at [`Instance::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("an instance needs at least one weight")]
    Empty,
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// A SUBSET-SUM instance: `n` integer weights and a target, asking whether
/// some 0/1 selection of the weights sums to the target exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    weights: Vec<Wide>,
    target: Wide,
}

impl Instance {
    /// Builds an instance, rejecting empty weight vectors and inputs whose
    /// derived values could overflow [`Wide`].
    pub fn new(weights: Vec<Wide>, target: Wide) -> Result<Self, InstanceError> {
        if weights.is_empty() {
            return Err(InstanceError::Empty);
        }
        let mut magnitude: Wide = 0;
        for &w in &weights {
            let m = w.checked_abs().ok_or(CapacityError::MagnitudeBudget)?;
            magnitude = magnitude
                .checked_add(m)
                .ok_or(CapacityError::MagnitudeBudget)?;
        }
        magnitude = magnitude
            .checked_add(target.checked_abs().ok_or(CapacityError::MagnitudeBudget)?)
            .ok_or(CapacityError::MagnitudeBudget)?;
        if magnitude > MAGNITUDE_BUDGET {
            return Err(CapacityError::MagnitudeBudget.into());
        }
        Ok(Self { weights, target })
    }

    /// Number of weights.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Wide] {
        &self.weights
    }

    pub fn target(&self) -> Wide {
        self.target
    }

    /// The instance over the first `len` weights with a new target. Used by
    /// the pair decompositions, which solve the `n`-weight prefix of an
    /// `n + 1`-weight instance for two different targets.
    pub fn prefix(&self, len: usize, target: Wide) -> Result<Self, InstanceError> {
        Self::new(self.weights[..len].to_vec(), target)
    }
}

/// A 0/1 selection over an instance's coordinates, witnessing a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    bits: Vec<bool>,
}

impl Certificate {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The all-zeros selection (sums to 0).
    pub fn zero(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Parses a bitstring such as `"1011"`. Returns `None` on any character
    /// other than `0` or `1`.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

impl std::fmt::Display for Certificate {
    /// First coordinate first: `[1,0,1]` prints as `101`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The answer to a decision run, carrying a witness when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Solvable(Certificate),
    Unsolvable,
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Solvable(cert) => Some(cert),
            Verdict::Unsolvable => None,
        }
    }
}

/// Exact dot product of a weight vector with a 0/1 selection.
///
/// Panics on length mismatch or on overflow; both are usage errors, and
/// neither can occur for selections over an accepted [`Instance`].
pub fn dot(weights: &[Wide], selection: &[bool]) -> Wide {
    assert_eq!(
        weights.len(),
        selection.len(),
        "selection length must match the weight count"
    );
    let mut sum: Wide = 0;
    for (&w, &bit) in weights.iter().zip(selection) {
        if bit {
            sum = sum.checked_add(w).expect("dot product overflowed Wide");
        }
    }
    sum
}

/// True iff the certificate's selection hits the instance target exactly.
///
/// Panics if the certificate length does not match the instance dimension.
pub fn verify(inst: &Instance, cert: &Certificate) -> bool {
    assert_eq!(
        cert.len(),
        inst.n(),
        "certificate length must match the instance dimension"
    );
    dot(inst.weights(), cert.bits()) == inst.target()
}
