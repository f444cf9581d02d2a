//! Code constructions and the orders driving them: exact β-expansion
//! reliability, the weight-contribution order on degree-2 monomials,
//! and the code-level comparison by weight counts.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::codeword::CodeSpec;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSet};
use crate::weight_enum::{complete_wd_rm2_subcode, low_weight_spectrum};

/// `Σ_{i ∈ ind(f)} 2^{i/4}` as an exact element of `Z[2^{1/4}]`: index
/// `i` contributes `2^{i div 4}` to the coefficient of `2^{(i mod 4)/4}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSum {
    coeffs: [BigUint; 4],
}

impl BetaSum {
    pub fn of(f: &Monomial) -> Self {
        let mut coeffs = [
            BigUint::zero(),
            BigUint::zero(),
            BigUint::zero(),
            BigUint::zero(),
        ];
        for i in f.indices() {
            coeffs[(i % 4) as usize] += BigUint::one() << (i / 4);
        }
        BetaSum { coeffs }
    }

    pub fn coefficients(&self) -> &[BigUint; 4] {
        &self.coeffs
    }

    /// Exact sign comparison. Distinct coefficient vectors can never be
    /// equal in value (1, 2^{1/4}, 2^{1/2}, 2^{3/4} are independent over
    /// the rationals), so interval refinement always terminates.
    pub fn cmp(&self, other: &BetaSum) -> Ordering {
        if self.coeffs == other.coeffs {
            return Ordering::Equal;
        }
        // bound a_k 2^{k/4} by integer fourth roots at scale 2^p
        let mut p = 8u32;
        loop {
            let (self_lo, self_hi) = self.bounds(p);
            let (other_lo, other_hi) = other.bounds(p);
            if self_hi < other_lo {
                return Ordering::Less;
            }
            if self_lo > other_hi {
                return Ordering::Greater;
            }
            p *= 2;
        }
    }

    fn bounds(&self, p: u32) -> (BigUint, BigUint) {
        let mut lo = &self.coeffs[0] << p;
        let mut hi = lo.clone();
        for k in 1..4u32 {
            if self.coeffs[k as usize].is_zero() {
                continue;
            }
            // 2^{k/4} * 2^p = (2^{4p+k})^{1/4}, rounded down
            let root = (BigUint::one() << (4 * p + k)).nth_root(4);
            lo += &self.coeffs[k as usize] * &root;
            hi += &self.coeffs[k as usize] * (root + 1u32);
        }
        (lo, hi)
    }
}

/// The PW reliability order: `f ≤_β g` by the exact sums above.
pub fn beta_leq(f: &Monomial, g: &Monomial) -> bool {
    BetaSum::of(f).cmp(&BetaSum::of(g)) != Ordering::Greater
}

fn beta_cmp(f: &Monomial, g: &Monomial) -> Ordering {
    BetaSum::of(f).cmp(&BetaSum::of(g))
}

/// Weight-contribution order on a fixed degree layer: strictly smaller
/// `|λ_f|` means a strictly larger minimum-weight contribution. Equal
/// levels are non-comparable.
pub fn wmin_leq(f: &Monomial, g: &Monomial) -> Result<bool> {
    if f.m() != g.m() {
        return Err(Error::VariableCountMismatch(f.m(), g.m()));
    }
    if f.degree() != g.degree() {
        return Err(Error::invalid(format!(
            "weight-contribution order compares equal degrees; got {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    Ok(f.lambda_size() < g.lambda_size())
}

/// Deterministic canonical order for output: degree, then level, then
/// β reliability, then the raw mask. The β tie-break never fires for
/// distinct monomials but keeps the comparator total by construction.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.lambda_size().cmp(&b.lambda_size()))
        .then_with(|| beta_cmp(a, b))
        .then_with(|| a.mask().cmp(&b.mask()))
}

/// One level of the weight-contribution poset on degree-2 monomials.
#[derive(Clone, Debug, Serialize)]
pub struct PosetLevel {
    pub level: u32,
    pub members: Vec<Monomial>,
}

/// Degree-2 monomials grouped by `|λ_f|`, levels 0 through `2(m-2)`.
pub fn poset_levels(m: u8) -> Result<Vec<PosetLevel>> {
    if m < 3 {
        return Err(Error::invalid("poset levels need m >= 3"));
    }
    let top = 2 * (m as u32 - 2);
    let mut levels: Vec<PosetLevel> = (0..=top)
        .map(|level| PosetLevel {
            level,
            members: Vec::new(),
        })
        .collect();
    for f in MonomialSet::all(m)?.iter().filter(|f| f.degree() == 2) {
        levels[f.lambda_size() as usize].members.push(f);
    }
    for level in &mut levels {
        level.members.sort_by(canonical_cmp);
    }
    Ok(levels)
}

/// All degree-2 monomials, ascending by level with β breaking ties.
pub fn blended_order(m: u8) -> Result<Vec<Monomial>> {
    Ok(poset_levels(m)?
        .into_iter()
        .flat_map(|l| l.members)
        .collect())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The Reed-Muller code R(r, m): all monomials of degree at most r.
pub fn construct_rm(r: u32, m: u8) -> Result<CodeSpec> {
    if r > m as u32 {
        return Err(Error::invalid(format!("order r={r} exceeds m={m}")));
    }
    let set = MonomialSet::from_monomials(
        m,
        MonomialSet::all(m)?.iter().filter(|f| f.degree() <= r),
    )?;
    CodeSpec::new(set)
}

fn check_k(m: u8, k: usize) -> Result<()> {
    if k > 1usize << m {
        return Err(Error::invalid(format!(
            "dimension {k} exceeds the length 2^{m}"
        )));
    }
    Ok(())
}

/// Polar construction: the K most reliable monomials. Reliability is the
/// β-expansion sum, smaller being more reliable; this is monotone for
/// the monomial order, so the result is decreasing.
pub fn construct_polar(m: u8, k: usize) -> Result<CodeSpec> {
    check_k(m, k)?;
    let mut all: Vec<Monomial> = MonomialSet::all(m)?.iter().collect();
    all.sort_by(beta_cmp);
    let set = MonomialSet::from_monomials(m, all.into_iter().take(k))?;
    CodeSpec::new(set)
}

/// RMxPolar: the largest full RM layer fitting K, topped up with the
/// most reliable next-degree monomials.
pub fn construct_rmxpolar(m: u8, k: usize) -> Result<CodeSpec> {
    check_k(m, k)?;
    let mut r_prime = 0i64;
    let mut base = 0usize;
    let mut cumulative = 0usize;
    for r in 0..=m as usize {
        cumulative += binom(m as usize, r);
        if cumulative <= k {
            r_prime = r as i64;
            base = cumulative;
        } else {
            break;
        }
    }
    if k == 0 {
        return CodeSpec::new(MonomialSet::empty(m)?);
    }
    let mut set = MonomialSet::from_monomials(
        m,
        MonomialSet::all(m)?
            .iter()
            .filter(|f| f.degree() as i64 <= r_prime),
    )?;
    let mut next: Vec<Monomial> = MonomialSet::all(m)?
        .iter()
        .filter(|f| f.degree() as i64 == r_prime + 1)
        .collect();
    next.sort_by(beta_cmp);
    for f in next.into_iter().take(k - base) {
        set.insert(&f)?;
    }
    CodeSpec::new(set)
}

/// Subcode of R(2, m) driven by the weight-contribution poset: the
/// constant, every degree-1 monomial, full levels while they fit, then
/// β picks inside the first partial level.
pub fn construct_wmin_beta(m: u8, k: usize) -> Result<CodeSpec> {
    let base = 1 + m as usize;
    let max = base + binom(m as usize, 2);
    if k < base || k > max {
        return Err(Error::invalid(format!(
            "dimension {k} outside [{base}, {max}] for m={m}"
        )));
    }
    let mut set = MonomialSet::from_monomials(
        m,
        MonomialSet::all(m)?.iter().filter(|f| f.degree() <= 1),
    )?;
    let mut remaining = k - base;
    for level in poset_levels(m)? {
        for f in level.members {
            if remaining == 0 {
                break;
            }
            set.insert(&f)?;
            remaining -= 1;
        }
    }
    CodeSpec::new(set)
}

/// `C(I) ≼_w C(J)` over a weight interval: every weight count of `J` in
/// the range is at most the matching count of `I`.
pub fn code_leq_w(
    i: &MonomialSet,
    j: &MonomialSet,
    range: (usize, usize),
) -> Result<bool> {
    let (lo, hi) = range;
    if lo > hi {
        return Err(Error::invalid("empty weight range"));
    }
    if let (Ok(wi), Ok(wj)) = (complete_wd_rm2_subcode(i), complete_wd_rm2_subcode(j)) {
        return Ok((lo..=hi).all(|w| wj.count(w) <= wi.count(w)));
    }
    // low-weight route: certified only strictly below twice the minimum
    // weight, and only where the entries are exact
    let mut counts = Vec::new();
    for set in [i, j] {
        let spectrum = low_weight_spectrum(set)?;
        let r = set
            .max_degree()
            .ok_or_else(|| Error::invalid("empty set"))?;
        let window = 1usize << (set.m() as u32 + 1 - r);
        if hi >= window {
            return Err(Error::invalid(format!(
                "cannot certify weights >= {window} for a degree-{r} code"
            )));
        }
        for e in &spectrum {
            if (lo..=hi).contains(&e.weight) && !e.exact {
                return Err(Error::invalid(format!(
                    "count at weight {} is not exact; cannot certify",
                    e.weight
                )));
            }
        }
        counts.push(spectrum);
    }
    let count_at = |spectrum: &[crate::weight_enum::SpectrumEntry], w: usize| {
        spectrum
            .iter()
            .find(|e| e.weight == w)
            .map(|e| e.count.clone())
            .unwrap_or_else(BigUint::zero)
    };
    Ok((lo..=hi).all(|w| count_at(&counts[1], w) <= count_at(&counts[0], w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeword::brute_force_wd;
    use crate::weight_enum::count_min_weight;

    fn mono(m: u8, idx: &[u8]) -> Monomial {
        Monomial::new(m, idx).unwrap()
    }

    fn pairs(order: &[Monomial]) -> Vec<[u8; 2]> {
        order
            .iter()
            .map(|f| {
                let idx = f.indices();
                [idx[0], idx[1]]
            })
            .collect()
    }

    #[test]
    fn beta_leq_examples() {
        let m = 7;
        assert!(beta_leq(&mono(m, &[2, 5]), &mono(m, &[0, 6])));
        assert!(!beta_leq(&mono(m, &[0, 6]), &mono(m, &[2, 5])));
        let f = mono(m, &[1, 3]);
        assert!(beta_leq(&f, &f));
        assert!(beta_leq(&mono(5, &[1, 2]), &mono(5, &[0, 3])));
    }

    #[test]
    fn beta_monotone_under_order() {
        for m in 3..=8u8 {
            let all: Vec<Monomial> = MonomialSet::all(m).unwrap().iter().collect();
            for f in &all {
                for g in &all {
                    if f.leq(g).unwrap() {
                        assert!(beta_leq(f, g), "m={m} f={f} g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn beta_no_ties() {
        let m = 9;
        let all: Vec<Monomial> = MonomialSet::all(m).unwrap().iter().collect();
        for (a, f) in all.iter().enumerate() {
            for g in &all[a + 1..] {
                assert_ne!(BetaSum::of(f).cmp(&BetaSum::of(g)), Ordering::Equal);
            }
        }
    }

    #[test]
    fn wmin_leq_examples() {
        let m = 7;
        assert!(wmin_leq(&mono(m, &[0, 6]), &mono(m, &[2, 5])).unwrap());
        assert!(!wmin_leq(&mono(m, &[2, 5]), &mono(m, &[0, 6])).unwrap());
        let m = 6;
        assert!(!wmin_leq(&mono(m, &[2, 3]), &mono(m, &[1, 4])).unwrap());
        assert!(!wmin_leq(&mono(m, &[1, 4]), &mono(m, &[2, 3])).unwrap());
        let f = mono(m, &[1, 4]);
        assert!(!wmin_leq(&f, &f).unwrap());
        assert!(wmin_leq(&mono(m, &[1]), &mono(m, &[1, 2])).is_err());
    }

    #[test]
    fn poset_level_sizes() {
        let sizes = |m: u8| -> Vec<usize> {
            poset_levels(m).unwrap().iter().map(|l| l.members.len()).collect()
        };
        assert_eq!(sizes(7), vec![1, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1]);
        assert_eq!(sizes(6), vec![1, 1, 2, 2, 3, 2, 2, 1, 1]);
        assert_eq!(sizes(3), vec![1, 1, 1]);
        for m in 3..=9u8 {
            let s = sizes(m);
            let top = 2 * (m as usize - 2);
            for (l, &c) in s.iter().enumerate() {
                assert_eq!(c, s[top - l], "palindrome m={m} l={l}");
                if l <= m as usize - 2 {
                    assert_eq!(c, (l + 2) / 2, "cardinality m={m} l={l}");
                }
            }
        }
    }

    #[test]
    fn blended_order_m5_m6() {
        assert_eq!(
            pairs(&blended_order(5).unwrap()),
            [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [2, 4], [3, 4]]
        );
        assert_eq!(
            pairs(&blended_order(6).unwrap()),
            [
                [0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [0, 5],
                [2, 4], [1, 5], [3, 4], [2, 5], [3, 5], [4, 5]
            ]
        );
    }

    #[test]
    fn blended_order_m7_to_m9() {
        assert_eq!(
            pairs(&blended_order(7).unwrap()),
            [
                [0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [0, 5],
                [2, 4], [1, 5], [0, 6], [3, 4], [2, 5], [1, 6], [3, 5], [2, 6], [4, 5],
                [3, 6], [4, 6], [5, 6]
            ]
        );
        assert_eq!(
            pairs(&blended_order(8).unwrap()),
            [
                [0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [0, 5],
                [2, 4], [1, 5], [0, 6], [3, 4], [2, 5], [1, 6], [0, 7], [3, 5], [2, 6],
                [1, 7], [4, 5], [3, 6], [2, 7], [4, 6], [3, 7], [5, 6], [4, 7], [5, 7],
                [6, 7]
            ]
        );
        assert_eq!(
            pairs(&blended_order(9).unwrap()),
            [
                [0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [0, 4], [2, 3], [1, 4], [0, 5],
                [2, 4], [1, 5], [0, 6], [3, 4], [2, 5], [1, 6], [0, 7], [3, 5], [2, 6],
                [1, 7], [0, 8], [4, 5], [3, 6], [2, 7], [1, 8], [4, 6], [3, 7], [2, 8],
                [5, 6], [4, 7], [3, 8], [5, 7], [4, 8], [6, 7], [5, 8], [6, 8], [7, 8]
            ]
        );
    }

    #[test]
    fn blended_first_is_x0x1_and_conflict_pair() {
        for m in 3..=9u8 {
            let order = blended_order(m).unwrap();
            assert_eq!(order[0], mono(m, &[0, 1]));
        }
        // the level order wins over beta for the m = 7 conflict pair
        let order = blended_order(7).unwrap();
        let at = |f: &Monomial| order.iter().position(|g| g == f).unwrap();
        assert!(at(&mono(7, &[0, 6])) < at(&mono(7, &[2, 5])));
    }

    #[test]
    fn rm_construction() {
        assert_eq!(construct_rm(2, 7).unwrap().dimension(), 29);
        assert_eq!(construct_rm(3, 3).unwrap().dimension(), 8);
        assert_eq!(construct_rm(0, 5).unwrap().dimension(), 1);
        assert!(construct_rm(4, 3).is_err());
    }

    #[test]
    fn polar_construction() {
        let code = construct_polar(7, 25).unwrap();
        assert_eq!(code.dimension(), 25);
        assert_eq!(code.min_weight(), Some(16));
        assert_eq!(construct_polar(3, 8).unwrap().dimension(), 8);
        let code = construct_polar(8, 30).unwrap();
        assert_eq!(code.min_weight(), Some(32));
    }

    #[test]
    fn rmxpolar_construction() {
        let code = construct_rmxpolar(7, 25).unwrap();
        assert_eq!(code.dimension(), 25);
        assert_eq!(code.info_set().layer(2).len(), 17);
        assert_eq!(code.max_degree(), Some(2));
        assert_eq!(construct_rmxpolar(7, 1).unwrap().dimension(), 1);
        // exact layer boundary gives plain RM
        let rm = construct_rmxpolar(7, 29).unwrap();
        assert_eq!(rm, construct_rm(2, 7).unwrap());
        let full2 = construct_rmxpolar(6, 1 + 6 + 15).unwrap();
        assert_eq!(full2, construct_rm(2, 6).unwrap());
    }

    #[test]
    fn wmin_beta_construction() {
        let sets = |m: u8, k: usize| -> Vec<String> {
            construct_wmin_beta(m, k)
                .unwrap()
                .info_set()
                .layer(2)
                .iter()
                .map(|f| f.to_string())
                .collect()
        };
        assert_eq!(sets(7, 9), vec!["x0x1"]);
        let s15 = sets(6, 15);
        assert!(s15.contains(&"x2x3".to_string()) && s15.contains(&"x1x4".to_string()));
        assert!(!s15.contains(&"x0x5".to_string()));
        assert_eq!(s15.len(), 8);
        assert_eq!(
            construct_wmin_beta(5, 6).unwrap(),
            construct_rm(1, 5).unwrap()
        );
        assert!(construct_wmin_beta(6, 5).is_err());
        assert!(construct_wmin_beta(6, 23).is_err());
    }

    #[test]
    fn constructions_are_decreasing_and_min_weight_checks() {
        for k in [10, 14, 20, 25, 29, 40, 64, 99, 128] {
            let code = construct_polar(7, k).unwrap();
            assert!(code.info_set().is_decreasing());
            let code = construct_rmxpolar(7, k).unwrap();
            assert!(code.info_set().is_decreasing());
        }
        // the m = 5 polar code at K = 12 agrees with the oracle spectrum
        let code = construct_polar(5, 12).unwrap();
        let wd = brute_force_wd(&code).unwrap();
        let min = wd.counts.keys().copied().filter(|&w| w > 0).min().unwrap();
        assert_eq!(Some(min), code.min_weight());
        assert_eq!(wd.count(min), count_min_weight(code.info_set()).unwrap());
    }

    #[test]
    fn code_leq_w_example5() {
        let full = construct_wmin_beta(6, 16).unwrap();
        let sub = construct_wmin_beta(6, 15).unwrap();
        // supercode has 300 weight-16 words, subcode 236
        assert!(code_leq_w(full.info_set(), sub.info_set(), (16, 16)).unwrap());
        assert!(!code_leq_w(sub.info_set(), full.info_set(), (16, 16)).unwrap());
        assert!(code_leq_w(full.info_set(), full.info_set(), (0, 64)).unwrap());
    }

    #[test]
    fn code_leq_w_same_level_removals() {
        // removing any element of the top level gives the same counts
        let m = 6;
        let base = construct_wmin_beta(m, 16).unwrap();
        let level4: Vec<Monomial> = poset_levels(m).unwrap()[4].members.clone();
        assert_eq!(level4.len(), 3);
        let mut variants = Vec::new();
        for f in &level4 {
            let mut set = base.info_set().clone();
            assert!(set.remove(f));
            variants.push(set);
        }
        for a in &variants {
            for b in &variants {
                assert!(code_leq_w(a, b, (0, 64)).unwrap());
            }
        }
    }

    #[test]
    fn canonical_cmp_total_on_distinct() {
        let m = 6;
        let all: Vec<Monomial> = MonomialSet::all(m).unwrap().iter().collect();
        for f in &all {
            for g in &all {
                if f != g {
                    assert_ne!(canonical_cmp(f, g), Ordering::Equal);
                }
            }
        }
    }
}
