//! Squarefree monomials over at most 16 variables, the partial orders
//! used to define decreasing sets, and the lambda-partition combinatorics
//! behind orbit counting.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap on the variable count; masks fit in a `u32` with headroom.
pub const MAX_VARS: u8 = 16;

/// A squarefree monomial in `m` variables, stored as an index bitmask.
/// Bit `i` set means the variable `x_i` occurs. The empty mask is the
/// constant monomial `1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    m: u8,
    mask: u32,
}

impl Monomial {
    pub fn new(m: u8, indices: &[u8]) -> Result<Self> {
        check_var_count(m)?;
        let mut mask = 0u32;
        for &i in indices {
            if i >= m {
                return Err(Error::invalid(format!(
                    "variable index {i} out of range for m={m}"
                )));
            }
            if mask & (1 << i) != 0 {
                return Err(Error::invalid(format!("duplicate variable index {i}")));
            }
            mask |= 1 << i;
        }
        Ok(Monomial { m, mask })
    }

    pub fn from_mask(m: u8, mask: u32) -> Result<Self> {
        check_var_count(m)?;
        if mask >= (1u32 << m) {
            return Err(Error::invalid(format!(
                "mask {mask:#x} has bits outside [0, {m})"
            )));
        }
        Ok(Monomial { m, mask })
    }

    /// The constant monomial `1`.
    pub fn constant(m: u8) -> Self {
        Monomial { m, mask: 0 }
    }

    /// The full monomial `x_0 x_1 ... x_{m-1}`.
    pub fn full(m: u8) -> Self {
        Monomial {
            m,
            mask: (1u32 << m) - 1,
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_constant(&self) -> bool {
        self.mask == 0
    }

    /// Ascending variable indices.
    pub fn indices(&self) -> Vec<u8> {
        (0..self.m).filter(|i| self.mask & (1 << i) != 0).collect()
    }

    fn check_m(&self, other: &Monomial) -> Result<()> {
        if self.m != other.m {
            return Err(Error::VariableCountMismatch(self.m, other.m));
        }
        Ok(())
    }

    /// Divisibility: `f | g` iff `ind(f) ⊆ ind(g)`.
    pub fn divides(&self, g: &Monomial) -> Result<bool> {
        self.check_m(g)?;
        Ok(self.mask & !g.mask == 0)
    }

    pub fn gcd(&self, g: &Monomial) -> Result<Monomial> {
        self.check_m(g)?;
        Ok(Monomial {
            m: self.m,
            mask: self.mask & g.mask,
        })
    }

    /// The quotient `self / h`; errors unless `h | self`.
    pub fn quotient(&self, h: &Monomial) -> Result<Monomial> {
        if !h.divides(self)? {
            return Err(Error::invalid(format!("{h} does not divide {self}")));
        }
        Ok(Monomial {
            m: self.m,
            mask: self.mask & !h.mask,
        })
    }

    /// Multiplicative complement `(x_0 ... x_{m-1}) / f`.
    pub fn complement(&self) -> Monomial {
        Monomial {
            m: self.m,
            mask: !self.mask & ((1u32 << self.m) - 1),
        }
    }

    /// Shift order on equal-degree monomials: componentwise `<=` on the
    /// ascending index lists.
    pub fn shift_leq(&self, g: &Monomial) -> Result<bool> {
        self.check_m(g)?;
        if self.degree() != g.degree() {
            return Err(Error::invalid(format!(
                "shift order needs equal degrees, got {} and {}",
                self.degree(),
                g.degree()
            )));
        }
        Ok(self
            .indices()
            .iter()
            .zip(g.indices().iter())
            .all(|(a, b)| a <= b))
    }

    /// The combined order `≼`: `deg(f) <= deg(g)` and the l-th largest
    /// index of `f` is at most the l-th largest index of `g` for every l.
    /// Equivalent to picking the top `deg(f)` indices of `g` as the
    /// intermediate monomial of the two-step definition.
    pub fn leq(&self, g: &Monomial) -> Result<bool> {
        self.check_m(g)?;
        if self.degree() > g.degree() {
            return Ok(false);
        }
        let fi = self.indices();
        let gi = g.indices();
        Ok(fi
            .iter()
            .rev()
            .zip(gi.iter().rev())
            .all(|(a, b)| a <= b))
    }

    /// `λ_f(x_i)`: the number of indices below `i` that are free, i.e.
    /// not used by `f`.
    pub fn lambda_at(&self, i: u8) -> u32 {
        (!self.mask & ((1u32 << i) - 1)).count_ones()
    }

    /// The partition `λ_f` of a non-constant monomial.
    pub fn lambda_partition(&self) -> Result<Partition> {
        if self.is_constant() {
            return Err(Error::invalid(
                "lambda partition is not defined for the constant monomial (|λ_1| = 0 by convention)",
            ));
        }
        let parts: Vec<u32> = self
            .indices()
            .iter()
            .rev()
            .map(|&i| self.lambda_at(i))
            .collect();
        Ok(Partition::new(parts))
    }

    /// `|λ_f|`, with the constant monomial contributing 0.
    pub fn lambda_size(&self) -> u32 {
        self.indices().iter().map(|&i| self.lambda_at(i)).sum()
    }

    /// The restricted partition `λ_f(g)` for a divisor `g | f` (self is `f`).
    pub fn lambda_restricted(&self, g: &Monomial) -> Result<Partition> {
        if !g.divides(self)? {
            return Err(Error::invalid(format!("{g} does not divide {self}")));
        }
        let parts: Vec<u32> = g
            .indices()
            .iter()
            .rev()
            .map(|&i| self.lambda_at(i))
            .collect();
        Ok(Partition::new(parts))
    }

    /// `|λ_f(g)|` for `g | f`.
    pub fn lambda_restricted_size(&self, g: &Monomial) -> Result<u32> {
        if !g.divides(self)? {
            return Err(Error::invalid(format!("{g} does not divide {self}")));
        }
        Ok(g.indices().iter().map(|&i| self.lambda_at(i)).sum())
    }

    /// Elementary predecessors under `≼`: remove one variable, or slide
    /// one index down by one onto a free slot. These moves generate the
    /// full order (property-tested against the definitional search).
    pub fn elementary_predecessors(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for i in self.indices() {
            out.push(Monomial {
                m: self.m,
                mask: self.mask & !(1 << i),
            });
            if i > 0 && self.mask & (1 << (i - 1)) == 0 {
                out.push(Monomial {
                    m: self.m,
                    mask: (self.mask & !(1 << i)) | (1 << (i - 1)),
                });
            }
        }
        out
    }

    pub fn parse(m: u8, text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text == "1" {
            return Ok(Monomial::constant(m));
        }
        let mut indices = Vec::new();
        for chunk in text.split('x') {
            if chunk.is_empty() {
                continue;
            }
            let i: u8 = chunk
                .parse()
                .map_err(|_| Error::invalid(format!("bad monomial text {text:?}")))?;
            indices.push(i);
        }
        if indices.is_empty() {
            return Err(Error::invalid(format!("bad monomial text {text:?}")));
        }
        Monomial::new(m, &indices)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

fn check_var_count(m: u8) -> Result<()> {
    if m == 0 || m > MAX_VARS {
        return Err(Error::invalid(format!(
            "variable count m={m} outside [1, {MAX_VARS}]"
        )));
    }
    Ok(())
}

/// A partition: non-increasing parts plus their total size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// The collision exponent between two coprime degree-2 monomials: 2 when
/// they are not `≼`-comparable, otherwise 1 or 0 depending on whether the
/// smaller pair's top index sits above the larger pair's bottom index.
pub fn alpha(f: &Monomial, g: &Monomial) -> Result<u32> {
    if f.m() != g.m() {
        return Err(Error::VariableCountMismatch(f.m(), g.m()));
    }
    if f.degree() != 2 || g.degree() != 2 {
        return Err(Error::invalid("collision exponent needs two degree-2 monomials"));
    }
    if f.gcd(g)?.degree() != 0 {
        return Err(Error::invalid("collision exponent needs coprime monomials"));
    }
    let (small, large) = if g.leq(f)? {
        (g, f)
    } else if f.leq(g)? {
        (f, g)
    } else {
        return Ok(2);
    };
    let li = large.indices();
    let si = small.indices();
    // ascending pairs: large = (i1 < i2), small = (j1 < j2)
    let i1 = li[0];
    let j2 = si[1];
    Ok(if j2 > i1 { 1 } else { 0 })
}

/// Row `i` of the Kronecker-power generator corresponds to the monomial
/// with mask `2^m - 1 - i`.
pub fn row_bijection(m: u8, i: usize) -> Result<Monomial> {
    check_var_count(m)?;
    let n = 1usize << m;
    if i >= n {
        return Err(Error::invalid(format!("row index {i} out of range for m={m}")));
    }
    Ok(Monomial {
        m,
        mask: (n - 1 - i) as u32,
    })
}

/// Inverse of [`row_bijection`].
pub fn row_index(f: &Monomial) -> usize {
    (1usize << f.m()) - 1 - f.mask() as usize
}

/// A finite set of monomials over a common variable count.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialSet {
    m: u8,
    masks: BTreeSet<u32>,
}

impl MonomialSet {
    pub fn empty(m: u8) -> Result<Self> {
        check_var_count(m)?;
        Ok(MonomialSet {
            m,
            masks: BTreeSet::new(),
        })
    }

    pub fn from_monomials(m: u8, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut set = MonomialSet::empty(m)?;
        for f in monomials {
            set.insert(&f)?;
        }
        Ok(set)
    }

    /// All `2^m` monomials.
    pub fn all(m: u8) -> Result<Self> {
        check_var_count(m)?;
        Ok(MonomialSet {
            m,
            masks: (0..1u32 << m).collect(),
        })
    }

    pub fn insert(&mut self, f: &Monomial) -> Result<()> {
        if f.m() != self.m {
            return Err(Error::VariableCountMismatch(self.m, f.m()));
        }
        self.masks.insert(f.mask());
        Ok(())
    }

    pub fn contains(&self, f: &Monomial) -> bool {
        f.m() == self.m && self.masks.contains(&f.mask())
    }

    pub fn remove(&mut self, f: &Monomial) -> bool {
        f.m() == self.m && self.masks.remove(&f.mask())
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.masks.iter().map(move |&mask| Monomial { m: self.m, mask })
    }

    /// Members of the given degree.
    pub fn layer(&self, degree: u32) -> Vec<Monomial> {
        self.iter().filter(|f| f.degree() == degree).collect()
    }

    /// Maximum degree among members; `None` when empty.
    pub fn max_degree(&self) -> Option<u32> {
        self.iter().map(|f| f.degree()).max()
    }

    /// Downward closure under `≼`: every elementary predecessor of a
    /// member is present.
    pub fn is_decreasing(&self) -> bool {
        self.iter().all(|f| {
            f.elementary_predecessors()
                .iter()
                .all(|g| self.contains(g))
        })
    }

    /// First member whose removal of a predecessor breaks downward
    /// closure, together with the missing predecessor.
    pub fn decreasing_violation(&self) -> Option<(Monomial, Monomial)> {
        for f in self.iter() {
            for g in f.elementary_predecessors() {
                if !self.contains(&g) {
                    return Some((f, g));
                }
            }
        }
        None
    }

    pub fn union(&self, other: &MonomialSet) -> Result<MonomialSet> {
        if self.m != other.m {
            return Err(Error::VariableCountMismatch(self.m, other.m));
        }
        Ok(MonomialSet {
            m: self.m,
            masks: self.masks.union(&other.masks).copied().collect(),
        })
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Smallest decreasing set containing the generators: breadth-first
/// closure under elementary predecessors.
pub fn decreasing_closure(generators: &MonomialSet) -> MonomialSet {
    let mut masks: BTreeSet<u32> = generators.masks.clone();
    let mut frontier: Vec<Monomial> = generators.iter().collect();
    while let Some(f) = frontier.pop() {
        for g in f.elementary_predecessors() {
            if masks.insert(g.mask()) {
                frontier.push(g);
            }
        }
    }
    MonomialSet {
        m: generators.m,
        masks,
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialSetJson {
    m: u8,
    monomials: Vec<Vec<u8>>,
}

impl Serialize for MonomialSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut members: Vec<Monomial> = self.iter().collect();
        members.sort_by(crate::construct::canonical_cmp);
        MonomialSetJson {
            m: self.m,
            monomials: members.iter().map(|f| f.indices()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MonomialSetJson::deserialize(d)?;
        let mut set = MonomialSet::empty(raw.m).map_err(D::Error::custom)?;
        for indices in &raw.monomials {
            let f = Monomial::new(raw.m, indices).map_err(D::Error::custom)?;
            set.insert(&f).map_err(D::Error::custom)?;
        }
        Ok(set)
    }
}
