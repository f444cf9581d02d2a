//! Evaluation vectors, generator matrices, and the brute-force
//! weight-spectrum oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSet};

/// Default cap on the oracle dimension; 2^28 codewords is still minutes.
pub const DEFAULT_BRUTE_LIMIT: usize = 28;

/// Cap on dimensions for which codewords are materialized individually.
pub const DEFAULT_STRUCTURAL_LIMIT: usize = 20;

/// A length-2^m bit vector over the evaluation points, packed into words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvaluationVector {
    m: u8,
    words: Vec<u64>,
}

impl EvaluationVector {
    pub fn zero(m: u8) -> Self {
        let n = 1usize << m;
        EvaluationVector {
            m,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        1usize << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, j: usize) -> bool {
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        if value {
            self.words[j / 64] |= 1 << (j % 64);
        } else {
            self.words[j / 64] &= !(1 << (j % 64));
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &EvaluationVector) {
        debug_assert_eq!(self.m, other.m);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Pointwise AND; the evaluation of a product of polynomials.
    pub fn and(&self, other: &EvaluationVector) -> EvaluationVector {
        debug_assert_eq!(self.m, other.m);
        EvaluationVector {
            m: self.m,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Pointwise XOR; the evaluation of a sum of polynomials.
    pub fn xor(&self, other: &EvaluationVector) -> EvaluationVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|j| self.get(j) as u8).collect()
    }
}

impl fmt::Debug for EvaluationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len() {
            write!(f, "{}", self.get(j) as u8)?;
        }
        Ok(())
    }
}

/// `ev(f)`: bit `j` is 1 iff the point `bin(2^m-1-j)` sets every variable
/// of `f`, i.e. `j AND mask(f) == 0`.
pub fn evaluate(f: &Monomial) -> EvaluationVector {
    let m = f.m();
    let n = 1usize << m;
    let mut v = EvaluationVector::zero(m);
    let mask = f.mask() as usize;
    for j in 0..n {
        if j & mask == 0 {
            v.set(j, true);
        }
    }
    v
}

/// A decreasing monomial set together with the derived code parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    m: u8,
    info_set: MonomialSet,
}

impl CodeSpec {
    /// Builds a code from a decreasing set; rejects non-decreasing input
    /// naming the first missing predecessor.
    pub fn new(info_set: MonomialSet) -> Result<Self> {
        if let Some((f, g)) = info_set.decreasing_violation() {
            return Err(Error::invalid(format!(
                "info set is not decreasing: contains {f} but not {g}"
            )));
        }
        Ok(CodeSpec {
            m: info_set.m(),
            info_set,
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> usize {
        1usize << self.m
    }

    pub fn dimension(&self) -> usize {
        self.info_set.len()
    }

    pub fn info_set(&self) -> &MonomialSet {
        &self.info_set
    }

    /// Maximum degree r; `None` for the zero code.
    pub fn max_degree(&self) -> Option<u32> {
        self.info_set.max_degree()
    }

    /// Minimum nonzero weight `2^{m-r}`; `None` for the zero code.
    pub fn min_weight(&self) -> Option<usize> {
        self.max_degree().map(|r| 1usize << (self.m as u32 - r))
    }

    /// Rows `ev(f)` in canonical order.
    pub fn generator_rows(&self) -> Vec<(Monomial, EvaluationVector)> {
        let mut members: Vec<Monomial> = self.info_set.iter().collect();
        members.sort_by(crate::construct::canonical_cmp);
        members.into_iter().map(|f| (f.clone(), evaluate(&f))).collect()
    }

    /// K x 2^m bit matrix.
    pub fn generator_matrix(&self) -> Vec<Vec<u8>> {
        self.generator_rows()
            .into_iter()
            .map(|(_, v)| v.bits())
            .collect()
    }
}

impl Serialize for CodeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.info_set.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CodeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let set = MonomialSet::deserialize(d)?;
        CodeSpec::new(set).map_err(D::Error::custom)
    }
}

/// Sparse weight -> count map with code parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub complete: bool,
    pub counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn new(n: usize, k: usize, complete: bool) -> Self {
        WeightDistribution {
            n,
            k,
            complete,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, weight: usize, count: BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(weight).or_insert_with(BigUint::zero) += count;
    }

    pub fn count(&self, weight: usize) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// `1 + 108X^8 + 576X^12 + ...`; the X^0 term prints as a bare count,
    /// a count of one elsewhere prints as a bare power.
    pub fn polynomial_text(&self) -> String {
        if self.counts.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (w, c) in &self.counts {
            terms.push(match (*w, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => format!("X^{w}"),
                (_, false) => format!("{c}X^{w}"),
            });
        }
        terms.join(" + ")
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("complete", &self.complete)?;
        let counts: BTreeMap<usize, String> = self
            .counts
            .iter()
            .map(|(w, c)| (*w, c.to_string()))
            .collect();
        // keys serialize as strings but iterate in numeric order
        let ordered: Vec<(String, String)> = counts
            .into_iter()
            .map(|(w, c)| (w.to_string(), c))
            .collect();
        struct Counts<'a>(&'a [(String, String)]);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (w, c) in self.0 {
                    map.serialize_entry(w, c)?;
                }
                map.end()
            }
        }
        map.serialize_entry("counts", &Counts(&ordered))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            k: usize,
            complete: bool,
            counts: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(d)?;
        let mut wd = WeightDistribution::new(raw.n, raw.k, raw.complete);
        for (w, c) in raw.counts {
            let w: usize = w.parse().map_err(D::Error::custom)?;
            let c: BigUint = c.parse().map_err(D::Error::custom)?;
            wd.add(w, c);
        }
        Ok(wd)
    }
}

fn brute_limit() -> usize {
    std::env::var("WDX_BRUTE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BRUTE_LIMIT)
}

/// Exact complete weight distribution by enumerating all 2^K codewords.
pub fn brute_force_wd(code: &CodeSpec) -> Result<WeightDistribution> {
    brute_force_wd_with_limit(code, brute_limit())
}

/// Histogram of one Gray-coded partition of the message space. The
/// running codeword starts at the partition's base message and takes one
/// row XOR per step.
fn partition_histogram(
    rows: &[EvaluationVector],
    low_bits: usize,
    base_message: u64,
    n: usize,
) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut word = EvaluationVector::zero(rows[0].m());
    // base codeword: XOR of rows selected by the Gray code of the base
    let gray = base_message ^ (base_message >> 1);
    for (i, row) in rows.iter().enumerate() {
        if gray >> i & 1 == 1 {
            word.xor_assign(row);
        }
    }
    hist[word.weight()] += 1;
    for idx in 1u64..1u64 << low_bits {
        let flip = idx.trailing_zeros() as usize;
        word.xor_assign(&rows[flip]);
        hist[word.weight()] += 1;
    }
    hist
}

pub fn brute_force_wd_with_limit(code: &CodeSpec, limit: usize) -> Result<WeightDistribution> {
    let k = code.dimension();
    if k > limit {
        return Err(Error::DimensionLimit { k, limit });
    }
    let n = code.n();
    let rows: Vec<EvaluationVector> = code.generator_rows().into_iter().map(|(_, v)| v).collect();
    let mut wd = WeightDistribution::new(n, k, true);
    if k == 0 {
        wd.add(0, BigUint::one());
        return Ok(wd);
    }
    // fix the high PART_BITS message bits per partition; totals are merged
    // in partition order so the result is independent of thread count
    let part_bits = 8.min(k.saturating_sub(12));
    let low_bits = k - part_bits;
    let hist: Vec<u64> = (0..1u64 << part_bits)
        .into_par_iter()
        .map(|hi| partition_histogram(&rows, low_bits, hi << low_bits, n))
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    for (w, &c) in hist.iter().enumerate() {
        if c > 0 {
            wd.add(w, BigUint::from(c));
        }
    }
    Ok(wd)
}

/// All codewords of weight exactly `w`.
pub fn weight_class(code: &CodeSpec, w: usize) -> Result<Vec<EvaluationVector>> {
    let k = code.dimension();
    if k > DEFAULT_STRUCTURAL_LIMIT {
        return Err(Error::DimensionLimit {
            k,
            limit: DEFAULT_STRUCTURAL_LIMIT,
        });
    }
    let rows: Vec<EvaluationVector> = code.generator_rows().into_iter().map(|(_, v)| v).collect();
    let mut out = Vec::new();
    let mut word = EvaluationVector::zero(code.m());
    if word.weight() == w {
        out.push(word.clone());
    }
    for idx in 1u64..1u64 << k {
        let flip = idx.trailing_zeros() as usize;
        word.xor_assign(&rows[flip]);
        if word.weight() == w {
            out.push(word.clone());
        }
    }
    Ok(out)
}
