//! Cyclic-group rhythmic tiling: motif translation, coverage analysis,
//! exact-tiling and complement search, periodicity and Vuza predicates.

use std::fmt;

use crate::error::{Error, Result};

mod canon_file;
pub mod search;

pub use canon_file::{parse_canon, write_canon};
pub use search::{find_complements, find_complements_bounded, SearchMode, DEFAULT_SEARCH_BOUND};

/// A finite subset of `Z/nZ` in canonical form: elements reduced mod `n`,
/// strictly ascending. The empty set is allowed only when built explicitly
/// via [`ResidueSet::empty`] or [`ResidueSet::from_accent_vector`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueSet {
    modulus: usize,
    elements: Vec<usize>,
}

impl ResidueSet {
    /// Builds a set from arbitrary integers, reducing them mod `n`.
    /// Duplicate residues after reduction are rejected.
    pub fn new(modulus: usize, elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let mut reduced: Vec<usize> = elements
            .into_iter()
            .map(|e| e.rem_euclid(modulus as i64) as usize)
            .collect();
        reduced.sort_unstable();
        if reduced.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain(format!(
                "duplicate residue after reduction mod {modulus}"
            )));
        }
        if reduced.is_empty() {
            return Err(Error::domain(
                "empty motif; use ResidueSet::empty for the designated empty set",
            ));
        }
        Ok(ResidueSet {
            modulus,
            elements: reduced,
        })
    }

    /// The designated empty subset of `Z/nZ`.
    pub fn empty(modulus: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        Ok(ResidueSet {
            modulus,
            elements: Vec::new(),
        })
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(modulus: usize) -> Result<Self> {
        Self::new(modulus, 0..modulus as i64)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, residue: usize) -> bool {
        self.elements.binary_search(&residue).is_ok()
    }

    pub(crate) fn from_mask(modulus: usize, mask: u128) -> Self {
        let elements = (0..modulus).filter(|&r| mask & (1 << r) != 0).collect();
        ResidueSet { modulus, elements }
    }

    /// Translates the motif by `t`: `{(s + t) mod n}`.
    pub fn translate(&self, t: usize) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::domain("cannot translate the empty motif"));
        }
        if t >= self.modulus {
            return Err(Error::domain(format!(
                "translation {t} out of range for modulus {}",
                self.modulus
            )));
        }
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&e| (e + t) % self.modulus)
            .collect();
        elements.sort_unstable();
        Ok(ResidueSet {
            modulus: self.modulus,
            elements,
        })
    }

    /// Least `p` with `0 < p < n` and `S + p = S`, if any. Only divisors of
    /// `n` need checking: the set of stabilizing translations is a subgroup.
    pub fn period(&self) -> Result<Option<usize>> {
        if self.is_empty() {
            return Err(Error::domain("period is undefined for the empty motif"));
        }
        let n = self.modulus;
        for p in 1..n {
            if n % p != 0 {
                continue;
            }
            if self.translate(p)? == *self {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    /// Binary accent vector of length `n`: 1 where the set has an onset.
    pub fn to_accent_vector(&self) -> Vec<u8> {
        let mut v = vec![0u8; self.modulus];
        for &e in &self.elements {
            v[e] = 1;
        }
        v
    }

    /// Inverse of [`to_accent_vector`]. The all-zero vector yields the
    /// designated empty set.
    ///
    /// [`to_accent_vector`]: ResidueSet::to_accent_vector
    pub fn from_accent_vector(accents: &[u8]) -> Result<Self> {
        if accents.is_empty() {
            return Err(Error::domain("accent vector must be non-empty"));
        }
        if let Some(bad) = accents.iter().find(|&&a| a > 1) {
            return Err(Error::domain(format!(
                "accent vector entries must be 0 or 1, got {bad}"
            )));
        }
        let elements = accents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 1)
            .map(|(i, _)| i)
            .collect();
        Ok(ResidueSet {
            modulus: accents.len(),
            elements,
        })
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} mod {}", self.modulus)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One canon voice: a motif entering at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoiceEntry {
    pub motif: ResidueSet,
    pub offset: usize,
    pub label: String,
}

impl VoiceEntry {
    pub fn new(motif: ResidueSet, offset: usize, label: impl Into<String>) -> Result<Self> {
        if motif.is_empty() {
            return Err(Error::domain("voice motif must be non-empty"));
        }
        if offset >= motif.modulus() {
            return Err(Error::domain(format!(
                "offset {offset} out of range for modulus {}",
                motif.modulus()
            )));
        }
        Ok(VoiceEntry {
            motif,
            offset,
            label: label.into(),
        })
    }

    /// The motif as actually played: translated by the entry offset.
    pub fn onsets(&self) -> ResidueSet {
        self.motif
            .translate(self.offset)
            .expect("offset validated at construction")
    }
}

/// A set of voices over a common cycle `Z/nZ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonSpec {
    modulus: usize,
    voices: Vec<VoiceEntry>,
}

impl CanonSpec {
    pub fn new(modulus: usize, voices: Vec<VoiceEntry>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        for v in &voices {
            if v.motif.modulus() != modulus {
                return Err(Error::domain(format!(
                    "voice {:?} has modulus {}, expected {modulus}",
                    v.label,
                    v.motif.modulus()
                )));
            }
        }
        Ok(CanonSpec { modulus, voices })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn voices(&self) -> &[VoiceEntry] {
        &self.voices
    }

    /// Total onset count across all voices.
    pub fn onset_count(&self) -> usize {
        self.voices.iter().map(|v| v.motif.len()).sum()
    }

    /// Builds the spec induced by an exact-cover pair: one voice `A + b`
    /// per element of `B`.
    pub fn from_pair(motif: &ResidueSet, offsets: &ResidueSet) -> Result<Self> {
        if motif.modulus() != offsets.modulus() {
            return Err(Error::domain(format!(
                "modulus mismatch: {} vs {}",
                motif.modulus(),
                offsets.modulus()
            )));
        }
        let voices = offsets
            .elements()
            .iter()
            .map(|&b| VoiceEntry::new(motif.clone(), b, format!("A @ {b}")))
            .collect::<Result<Vec<_>>>()?;
        CanonSpec::new(motif.modulus(), voices)
    }
}

/// Per-residue multiplicity of onsets across all voices of a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageProfile {
    modulus: usize,
    counts: Vec<usize>,
}

impl CoverageProfile {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Residues covered at least once.
    pub fn support(&self) -> Vec<usize> {
        (0..self.modulus).filter(|&r| self.counts[r] > 0).collect()
    }

    pub fn is_full_support(&self) -> bool {
        self.counts.iter().all(|&c| c > 0)
    }

    /// Every residue covered exactly once.
    pub fn is_exact(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }

    /// Residues covered more than once, with their multiplicities.
    pub fn overlaps(&self) -> Vec<(usize, usize)> {
        (0..self.modulus)
            .filter(|&r| self.counts[r] > 1)
            .map(|r| (r, self.counts[r]))
            .collect()
    }
}

/// Multiplicity of every residue under the spec's translated motifs.
pub fn coverage(spec: &CanonSpec) -> CoverageProfile {
    let mut counts = vec![0usize; spec.modulus()];
    for voice in spec.voices() {
        for &r in voice.onsets().elements() {
            counts[r] += 1;
        }
    }
    CoverageProfile {
        modulus: spec.modulus(),
        counts,
    }
}

/// True iff the translates `{A + b : b in B}` cover `Z/nZ` with multiplicity
/// exactly one everywhere. Implies `|A| * |B| = n`.
pub fn is_exact_tiling(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::domain(format!(
            "modulus mismatch: {} vs {}",
            a.modulus(),
            b.modulus()
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("exact tiling is undefined for empty sets"));
    }
    let n = a.modulus();
    if a.len() * b.len() != n {
        return Ok(false);
    }
    let mut counts = vec![0usize; n];
    for &off in b.elements() {
        for &e in a.elements() {
            let r = (e + off) % n;
            counts[r] += 1;
            if counts[r] > 1 {
                return Ok(false);
            }
        }
    }
    Ok(counts.iter().all(|&c| c == 1))
}

/// True iff `(A, B)` is an exact tiling and neither factor has a period.
pub fn is_vuza_canon(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    if !is_exact_tiling(a, b)? {
        return Ok(false);
    }
    Ok(a.period()?.is_none() && b.period()?.is_none())
}
