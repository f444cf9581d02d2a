//! Closed-form weight enumeration: minimum-weight count, Type II counts,
//! complete distributions for second-order subcodes, dual sets, and the
//! MacWilliams transform.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::codeword::WeightDistribution;
use crate::error::{Error, Result};
use crate::monomial::{alpha, Monomial, MonomialSet};

/// A Type II generating tuple: common gcd `h` of degree r-2 and factors
/// in the top layer whose pairwise gcds all equal `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIITuple {
    pub h: Monomial,
    pub factors: Vec<Monomial>,
}

/// One weight of the low-weight spectrum. `exact` is false where Type I
/// codewords may contribute mass the closed form does not cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub weight: usize,
    #[serde(serialize_with = "ser_biguint")]
    pub count: BigUint,
    pub exact: bool,
    pub mu: u32,
}

fn ser_biguint<S: serde::Serializer>(c: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn require_decreasing(i: &MonomialSet) -> Result<()> {
    if let Some((f, g)) = i.decreasing_violation() {
        return Err(Error::invalid(format!(
            "set is not decreasing: contains {f} but not {g}"
        )));
    }
    Ok(())
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

/// Number of minimum-weight codewords: sum of orbit sizes of the top
/// layer, `Σ_{f ∈ I_r} 2^{r + |λ_f|}`.
pub fn count_min_weight(i: &MonomialSet) -> Result<BigUint> {
    require_decreasing(i)?;
    let r = i
        .max_degree()
        .ok_or_else(|| Error::invalid("empty set has no minimum weight"))?;
    let mut total = BigUint::zero();
    for f in i.layer(r) {
        total += pow2(r + f.lambda_size());
    }
    Ok(total)
}

fn check_mu(i: &MonomialSet, r: u32, mu: u32) -> Result<()> {
    let m = i.m() as u32;
    if mu < 2 || 2 * mu > m - r + 2 {
        return Err(Error::invalid(format!(
            "mu={mu} outside the admissible range 2 <= 2*mu <= m-r+2 = {}",
            m - r + 2
        )));
    }
    Ok(())
}

/// All size-`target` cliques of the graph given by adjacency bitmasks.
fn cliques(adj: &[u128], target: usize) -> Vec<Vec<usize>> {
    assert!(adj.len() <= 128);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        adj: &[u128],
        target: usize,
        start: usize,
        allowed: u128,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == target {
            out.push(current.clone());
            return;
        }
        for v in start..adj.len() {
            if allowed >> v & 1 == 1 {
                current.push(v);
                rec(adj, target, v + 1, allowed & adj[v], current, out);
                current.pop();
            }
        }
    }
    rec(
        adj,
        target,
        0,
        u128::MAX >> (128 - adj.len().max(1)),
        &mut current,
        &mut out,
    );
    out
}

/// All unordered mu-subsets of the top layer whose pairwise gcds equal a
/// common monomial `h` of degree r-2. For r = 2 these are mu-cliques of
/// the coprimality graph on the degree-2 layer.
pub fn enumerate_type_ii_tuples(i: &MonomialSet, mu: u32) -> Result<Vec<TypeIITuple>> {
    require_decreasing(i)?;
    let r = i
        .max_degree()
        .ok_or_else(|| Error::invalid("empty set has no top layer"))?;
    check_mu(i, r, mu)?;
    if r < 2 {
        return Ok(Vec::new());
    }
    let top = i.layer(r);
    let mut tuples = Vec::new();
    for h in i.layer(r - 2) {
        let candidates: Vec<Monomial> = top
            .iter()
            .filter(|f| h.divides(f).unwrap())
            .cloned()
            .collect();
        if candidates.len() < mu as usize {
            continue;
        }
        let adj: Vec<u128> = candidates
            .iter()
            .map(|f| {
                let mut mask = 0u128;
                for (j, g) in candidates.iter().enumerate() {
                    if f != g && f.gcd(g).unwrap() == h {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        for clique in cliques(&adj, mu as usize) {
            tuples.push(TypeIITuple {
                h: h.clone(),
                factors: clique.iter().map(|&v| candidates[v].clone()).collect(),
            });
        }
    }
    Ok(tuples)
}

/// The summand of one tuple: `2^{(r-2) + 2μ + |λ_h| + Σ|λ_{f_i}(f_i/h)|}`
/// divided by `2^{Σ_{i<j} α}`; the division must be exact.
fn tuple_count(t: &TypeIITuple, r: u32, mu: u32) -> Result<BigUint> {
    let mut exponent = (r - 2) + 2 * mu + t.h.lambda_size();
    let quotients: Vec<Monomial> = t
        .factors
        .iter()
        .map(|f| f.quotient(&t.h))
        .collect::<Result<_>>()?;
    for (f, q) in t.factors.iter().zip(&quotients) {
        exponent += f.lambda_restricted_size(q)?;
    }
    let mut alpha_sum = 0u32;
    for (a, qa) in quotients.iter().enumerate() {
        for qb in &quotients[a + 1..] {
            alpha_sum += alpha(qa, qb)?;
        }
    }
    if alpha_sum > exponent {
        return Err(Error::consistency(format!(
            "collision exponent {alpha_sum} exceeds orbit exponent {exponent} for tuple {t:?}"
        )));
    }
    Ok(pow2(exponent - alpha_sum))
}

/// Number of weight `2^{m+1-r} - 2^{m+1-r-μ}` codewords of Type II.
pub fn count_type_ii(i: &MonomialSet, mu: u32) -> Result<BigUint> {
    let r = i
        .max_degree()
        .ok_or_else(|| Error::invalid("empty set has no top layer"))?;
    let mut total = BigUint::zero();
    for t in enumerate_type_ii_tuples(i, mu)? {
        total += tuple_count(&t, r, mu)?;
    }
    Ok(total)
}

/// Entries at the minimum weight and at each admissible Type II weight in
/// `[w_min, 2 w_min)`.
pub fn low_weight_spectrum(i: &MonomialSet) -> Result<Vec<SpectrumEntry>> {
    require_decreasing(i)?;
    let Some(r) = i.max_degree() else {
        return Ok(Vec::new());
    };
    let m = i.m() as u32;
    let mut out = vec![SpectrumEntry {
        weight: 1usize << (m - r),
        count: count_min_weight(i)?,
        exact: true,
        mu: 1,
    }];
    if r >= 2 {
        let mut mu = 2;
        while 2 * mu <= m - r + 2 {
            let count = count_type_ii(i, mu)?;
            out.push(SpectrumEntry {
                weight: (1usize << (m + 1 - r)) - (1usize << (m + 1 - r - mu)),
                count,
                // Type I codewords need r >= mu >= 3, so the Type II
                // count is the whole story outside that window
                exact: r == 2 || mu == 2 || mu > r,
                mu,
            });
            mu += 1;
        }
    }
    Ok(out)
}

fn check_rm2_subcode(i: &MonomialSet) -> Result<u32> {
    require_decreasing(i)?;
    let m = i.m();
    for d in 0..=1u32 {
        for f in MonomialSet::all(m)?.iter().filter(|f| f.degree() == d) {
            if !i.contains(&f) {
                return Err(Error::invalid(format!(
                    "set must contain every monomial of degree <= 1; missing {f}"
                )));
            }
        }
    }
    let r = i.max_degree().unwrap();
    if r > 2 {
        return Err(Error::invalid(format!(
            "maximum degree is {r}; the complete closed form needs degree <= 2"
        )));
    }
    Ok(r)
}

/// Complete distribution of a code between the first- and second-order
/// Reed-Muller codes. All weights below the half length come from the
/// closed forms; the half-length count is the remaining mass, using the
/// distribution's symmetry.
pub fn complete_wd_rm2_subcode(i: &MonomialSet) -> Result<WeightDistribution> {
    let r = check_rm2_subcode(i)?;
    let m = i.m() as u32;
    let n = 1usize << m;
    let k = i.len();
    let mut wd = WeightDistribution::new(n, k, true);
    wd.add(0, BigUint::one());
    wd.add(n, BigUint::one());
    let mut low_mass = BigUint::one();
    if r == 2 {
        let wmin = n / 4;
        let c = count_min_weight(i)?;
        low_mass += &c;
        wd.add(wmin, c.clone());
        wd.add(n - wmin, c);
        let mut mu = 2;
        while 2 * mu <= m {
            let c = count_type_ii(i, mu)?;
            let offset = 1usize << (m - 1 - mu);
            low_mass += &c;
            wd.add(n / 2 - offset, c.clone());
            wd.add(n / 2 + offset, c);
            mu += 1;
        }
    }
    let center = pow2(k as u32) - (low_mass << 1);
    wd.add(n / 2, center);
    Ok(wd)
}

/// Half-length count summed orbit by orbit over tuples of pairwise
/// coprime degree-2 monomials and one extra free variable, returned next
/// to the symmetry-derived count for comparison.
pub fn count_2wmin_orbit_formula(i: &MonomialSet) -> Result<(BigUint, BigUint)> {
    check_rm2_subcode(i)?;
    let m = i.m();
    let deg2 = i.layer(2);
    let adj: Vec<u128> = deg2
        .iter()
        .map(|f| {
            let mut mask = 0u128;
            for (j, g) in deg2.iter().enumerate() {
                if f.gcd(g).unwrap().is_constant() && f != g {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let mut orbit_count = BigUint::zero();
    for l in 0..=(m as usize).saturating_sub(1) / 2 {
        let subsets = if deg2.is_empty() && l > 0 {
            Vec::new()
        } else {
            cliques(&adj, l)
        };
        for subset in subsets {
            let factors: Vec<&Monomial> = subset.iter().map(|&v| &deg2[v]).collect();
            let mut exponent = 2 * l as u32;
            for f in &factors {
                exponent += f.lambda_size();
            }
            let mut alpha_sum = 0u32;
            for (a, fa) in factors.iter().enumerate() {
                for fb in &factors[a + 1..] {
                    alpha_sum += alpha(fa, fb)?;
                }
            }
            if alpha_sum > exponent {
                return Err(Error::consistency(
                    "collision exponent exceeds orbit exponent",
                ));
            }
            let base = exponent - alpha_sum;
            let used: u32 = factors.iter().map(|f| f.mask()).fold(0, |a, b| a | b);
            for j in 0..m {
                if used >> j & 1 == 1 {
                    continue;
                }
                // free indices below j, outside every factor's support
                let free = (!used & ((1u32 << j) - 1)).count_ones();
                orbit_count += pow2(base + 1 + free);
            }
        }
    }
    let symmetry = complete_wd_rm2_subcode(i)?.count(1usize << (m - 1));
    Ok((orbit_count, symmetry))
}

/// The monomial set of the dual code: all monomials whose complement is
/// outside the set.
pub fn dual_set(i: &MonomialSet) -> Result<MonomialSet> {
    require_decreasing(i)?;
    let m = i.m();
    let mut out = MonomialSet::empty(m)?;
    for f in MonomialSet::all(m)?.iter() {
        if !i.contains(&f.complement()) {
            out.insert(&f)?;
        }
    }
    if let Some((f, g)) = out.decreasing_violation() {
        return Err(Error::consistency(format!(
            "dual set not decreasing: has {f} without {g}"
        )));
    }
    Ok(out)
}

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut table = vec![vec![BigUint::one()]];
    for i in 1..=n {
        let prev = &table[i - 1];
        let mut row = vec![BigUint::one()];
        for j in 1..i {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigUint::one());
        table.push(row);
    }
    table
}

/// Exact dual distribution via the Krawtchouk transform
/// `2^K A'_j = Σ_w A_w Σ_t (-1)^t C(w,t) C(n-w, j-t)`.
pub fn macwilliams_dual_wd(w: &WeightDistribution) -> Result<WeightDistribution> {
    let n = w.n;
    let k = w.k;
    if !w.complete || w.total() != pow2(k as u32) {
        return Err(Error::invalid(
            "MacWilliams transform needs a complete distribution summing to 2^K",
        ));
    }
    let binom = binomials(n);
    let mut out = WeightDistribution::new(n, n - k, true);
    let divisor = pow2(k as u32);
    for j in 0..=n {
        let mut pos = BigUint::zero();
        let mut neg = BigUint::zero();
        for (&weight, count) in &w.counts {
            for t in 0..=j.min(weight) {
                if j - t > n - weight {
                    continue;
                }
                let term = count * &binom[weight][t] * &binom[n - weight][j - t];
                if t % 2 == 0 {
                    pos += term;
                } else {
                    neg += term;
                }
            }
        }
        if neg > pos {
            return Err(Error::consistency(format!(
                "negative dual count at weight {j}"
            )));
        }
        let diff = pos - neg;
        let (q, rem) = num_integer::Integer::div_rem(&diff, &divisor);
        if !rem.is_zero() {
            return Err(Error::consistency(format!(
                "dual count at weight {j} is not an integer"
            )));
        }
        out.add(j, q);
    }
    Ok(out)
}
