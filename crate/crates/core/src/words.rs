//! Cyclic words over `{a, b, c, d}` and the unavoidable forbidden-factor set.
//!
//! "Contains" always means a contiguous cyclic factor (wrapping around the
//! end). The exhaustive verifiers stream words as base-4 counters, least
//! significant position first, and split the index space across threads;
//! partial reports merge by summation so results do not depend on the
//! thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::odd_prism;
use crate::patterns::{find_bicolored_c4, find_coloring_structure, find_mono_p4, Color, PrismStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }

    /// `a ↔ d`, `b ↔ c`: swapping both colours of every pair.
    pub fn swapped(self) -> Letter {
        Letter::ALL[3 - self as usize]
    }
}

/// Odd-length word (≥ 3) read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.len() < 3 || letters.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "cyclic word length must be odd and >= 3, got {}",
                letters.len()
            )));
        }
        Ok(CyclicWord(letters))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_letters(s)?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, by: usize) -> CyclicWord {
        let mut v = self.0.clone();
        v.rotate_left(by % self.len());
        CyclicWord(v)
    }

    pub fn swapped(&self) -> CyclicWord {
        CyclicWord(self.0.iter().map(|l| l.swapped()).collect())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| Letter::from_char(c).ok_or_else(|| Error::invalid(format!("letter {c:?} not in {{a,b,c,d}}"))))
        .collect()
}

/// The forbidden set, in the order the first-hit scan uses.
pub const FORBIDDEN: [&str; 12] = [
    "aa", "bb", "cc", "dd", "ad", "da", "aba", "dcd", "bdc", "cab", "cdb", "bac",
];

/// Patterns whose occurrence yields a red-red-blue-blue `C_4` in the prism;
/// the rest of [`FORBIDDEN`] yields a monochromatic `P_4`.
pub const C4_PATTERNS: [&str; 4] = ["bb", "cc", "ad", "da"];

fn forbidden_codes() -> [&'static [u8]; 12] {
    [
        &[0, 0], &[1, 1], &[2, 2], &[3, 3], &[0, 3], &[3, 0],
        &[0, 1, 0], &[3, 2, 3], &[1, 3, 2], &[2, 0, 1], &[2, 3, 1], &[1, 0, 2],
    ]
}

fn factor_at(word: &[u8], pat: &[u8]) -> Option<usize> {
    let n = word.len();
    (0..n).find(|&i| pat.iter().enumerate().all(|(j, &c)| word[(i + j) % n] == c))
}

/// Index into [`FORBIDDEN`] and position of the first hit.
fn first_hit(word: &[u8]) -> Option<(usize, usize)> {
    forbidden_codes()
        .iter()
        .enumerate()
        .find_map(|(pi, pat)| factor_at(word, pat).map(|pos| (pi, pos)))
}

/// First start position (with wraparound) of `pattern` as a cyclic factor.
pub fn contains_factor(w: &CyclicWord, pattern: &[Letter]) -> Result<Option<usize>> {
    if !(2..=3).contains(&pattern.len()) {
        return Err(Error::invalid("pattern length must be 2 or 3"));
    }
    let word: Vec<u8> = w.letters().iter().map(|&l| l as u8).collect();
    let pat: Vec<u8> = pattern.iter().map(|&l| l as u8).collect();
    Ok(factor_at(&word, &pat))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenHit {
    pub pattern: &'static str,
    pub position: usize,
}

/// First member of [`FORBIDDEN`] (in listed order) occurring in `w`.
pub fn hits_forbidden(w: &CyclicWord) -> Option<ForbiddenHit> {
    let word: Vec<u8> = w.letters().iter().map(|&l| l as u8).collect();
    first_hit(&word).map(|(pi, position)| ForbiddenHit { pattern: FORBIDDEN[pi], position })
}

/// Default ceiling on `k` for the word lemma verifier.
pub const LEMMA_DEFAULT_CAP: usize = 9;
/// Default ceiling on `k` for the coloring verifier.
pub const COROLLARY_DEFAULT_CAP: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct Lemma24Report {
    pub k: usize,
    pub length: usize,
    /// `4^(2k+1)`.
    pub total: u64,
    /// Words actually checked (fewer than `total` in necklace mode).
    pub checked: u64,
    pub necklaces_only: bool,
    pub hits_by_pattern: BTreeMap<String, u64>,
    pub misses: u64,
    pub first_miss: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Lemma24Report {
    pub fn holds(&self) -> bool {
        self.misses == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    hits: [u64; 12],
    misses: u64,
    first_miss: Option<u64>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.checked += o.checked;
        for i in 0..12 {
            self.hits[i] += o.hits[i];
        }
        self.misses += o.misses;
        self.first_miss = match (self.first_miss, o.first_miss) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn decode(index: u64, buf: &mut [u8]) {
    for (i, slot) in buf.iter_mut().enumerate() {
        *slot = ((index >> (2 * i)) & 3) as u8;
    }
}

fn is_least_rotation(word: &[u8]) -> bool {
    let n = word.len();
    (1..n).all(|r| (0..n).map(|i| word[(i + r) % n]).cmp(word.iter().copied()) != std::cmp::Ordering::Less)
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let chunks = total.clamp(1, 256);
    let step = total.div_ceil(chunks);
    (0..chunks)
        .map(|c| (c * step, ((c + 1) * step).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

/// Exhaustively checks that every odd cyclic word of length `2k+1` has a
/// forbidden factor.
pub fn verify_lemma_2_4(k: usize, cap: usize, necklaces_only: bool) -> Result<Lemma24Report> {
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if k > cap {
        return Err(Error::CapExceeded(format!("k = {k} exceeds cap {cap}")));
    }
    let len = 2 * k + 1;
    let total = 1u64 << (2 * len);
    let start = Instant::now();
    let tally = chunk_ranges(total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut t = Tally::default();
            let mut buf = vec![0u8; len];
            for idx in a..b {
                decode(idx, &mut buf);
                if necklaces_only && !is_least_rotation(&buf) {
                    continue;
                }
                t.checked += 1;
                match first_hit(&buf) {
                    Some((pi, _)) => t.hits[pi] += 1,
                    None => {
                        t.misses += 1;
                        t.first_miss.get_or_insert(idx);
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let first_miss = tally.first_miss.map(|idx| {
        let mut buf = vec![0u8; len];
        decode(idx, &mut buf);
        buf.iter().map(|&c| Letter::ALL[c as usize].as_char()).collect()
    });
    Ok(Lemma24Report {
        k,
        length: len,
        total,
        checked: tally.checked,
        necklaces_only,
        hits_by_pattern: FORBIDDEN
            .iter()
            .zip(tally.hits)
            .map(|(p, c)| (p.to_string(), c))
            .collect(),
        misses: tally.misses,
        first_miss,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Letter `i` encodes the colours of `(u_i, v_i)` = vertices `(2i, 2i+1)` of
/// [`odd_prism`]: red-red `a`, red-blue `b`, blue-red `c`, blue-blue `d`.
pub fn encode_coloring(k: usize, coloring: &[Color]) -> Result<CyclicWord> {
    let m = 2 * k + 1;
    if k == 0 || coloring.len() != 2 * m {
        return Err(Error::invalid(format!(
            "coloring must have {} entries, got {}",
            2 * m,
            coloring.len()
        )));
    }
    let letters = (0..m)
        .map(|i| match (coloring[2 * i], coloring[2 * i + 1]) {
            (Color::Red, Color::Red) => Letter::A,
            (Color::Red, Color::Blue) => Letter::B,
            (Color::Blue, Color::Red) => Letter::C,
            (Color::Blue, Color::Blue) => Letter::D,
        })
        .collect();
    CyclicWord::new(letters)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureCounts {
    pub monochromatic_p4: u64,
    pub bicolored_c4: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Corollary25Report {
    pub k: usize,
    /// `2^(2(2k+1))`.
    pub total: u64,
    /// Colourings with neither structure found by direct search.
    pub structural_misses: u64,
    /// Colourings whose encoded word avoids every forbidden factor.
    pub word_misses: u64,
    /// Colourings where the fired pattern's structure is absent.
    pub case_split_violations: u64,
    /// First-hit pattern against the structure the direct search reported.
    pub crosstab: BTreeMap<String, StructureCounts>,
    pub case_split: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Corollary25Report {
    pub fn holds(&self) -> bool {
        self.structural_misses == 0 && self.word_misses == 0 && self.case_split_violations == 0
    }
}

#[derive(Default)]
struct ColTally {
    structural: u64,
    word: u64,
    split: u64,
    cross: [StructureCounts; 12],
}

impl ColTally {
    fn merge(mut self, o: ColTally) -> ColTally {
        self.structural += o.structural;
        self.word += o.word;
        self.split += o.split;
        for i in 0..12 {
            self.cross[i].monochromatic_p4 += o.cross[i].monochromatic_p4;
            self.cross[i].bicolored_c4 += o.cross[i].bicolored_c4;
        }
        self
    }
}

/// Checks every red/blue colouring of `C_{2k+1}^□` two ways: direct search
/// for a monochromatic `P_4` or a red-red-blue-blue `C_4`, and the encoded
/// word's forbidden factor, whose class must predict the structure
/// ({bb, cc, ad, da} → `C_4`, the rest → `P_4`).
pub fn verify_corollary_2_5(k: usize, cap: usize) -> Result<Corollary25Report> {
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if k > cap {
        return Err(Error::CapExceeded(format!("k = {k} exceeds cap {cap}")));
    }
    let prism = odd_prism(k)?;
    let nv = prism.order();
    let total = 1u64 << nv;
    let start = Instant::now();
    let tally = chunk_ranges(total)
        .into_par_iter()
        .map(|(a, b)| -> Result<ColTally> {
            let mut t = ColTally::default();
            let mut coloring = vec![Color::Red; nv];
            for mask in a..b {
                for (v, c) in coloring.iter_mut().enumerate() {
                    *c = if mask >> v & 1 == 1 { Color::Blue } else { Color::Red };
                }
                let found = find_coloring_structure(&prism, &coloring)?;
                if found.is_none() {
                    t.structural += 1;
                }
                let word = encode_coloring(k, &coloring)?;
                let Some(hit) = hits_forbidden(&word) else {
                    t.word += 1;
                    continue;
                };
                let pi = FORBIDDEN.iter().position(|&p| p == hit.pattern).expect("listed");
                let predicted_present = if C4_PATTERNS.contains(&hit.pattern) {
                    find_bicolored_c4(&prism, &coloring).is_some()
                } else {
                    find_mono_p4(&prism, &coloring).is_some()
                };
                if !predicted_present {
                    t.split += 1;
                }
                match found {
                    Some(PrismStructure::MonochromaticP4 { .. }) => t.cross[pi].monochromatic_p4 += 1,
                    Some(PrismStructure::BicoloredC4 { .. }) => t.cross[pi].bicolored_c4 += 1,
                    None => {}
                }
            }
            Ok(t)
        })
        .try_reduce(ColTally::default, |a, b| Ok(a.merge(b)))?;
    Ok(Corollary25Report {
        k,
        total,
        structural_misses: tally.structural,
        word_misses: tally.word,
        case_split_violations: tally.split,
        crosstab: FORBIDDEN
            .iter()
            .zip(tally.cross)
            .map(|(p, c)| (p.to_string(), c))
            .collect(),
        case_split: "repaired case split: {bb,cc,ad,da} -> bicolored C4; remainder -> monochromatic P4",
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}
