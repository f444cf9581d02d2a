//! Explicit enumeration of restricted lower-triangular affine orbits,
//! their Minkowski sums, and the collision/disjointness measurements
//! that back the closed-form counts.

use std::collections::HashSet;

use crate::codeword::{evaluate, EvaluationVector};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSet};
use crate::weight_enum::TypeIITuple;

/// Default cap on the number of group actions enumerated per orbit.
pub const ORBIT_LIMIT: u128 = 1 << 20;

/// Free coefficient positions of one acting variable: the substitution
/// `y_i = x_i + Σ b_{i,j} x_j + ε_i` ranges over `j < i` outside the
/// freedom monomial's support.
struct ActingVar {
    base: EvaluationVector,
    lowers: Vec<EvaluationVector>,
}

fn acting_vars(freedom: &Monomial, acting: &Monomial) -> Result<Vec<ActingVar>> {
    if !acting.divides(freedom)? {
        return Err(Error::invalid(format!(
            "acting monomial {acting} must divide the freedom monomial {freedom}"
        )));
    }
    let m = freedom.m();
    Ok(acting
        .indices()
        .into_iter()
        .map(|i| ActingVar {
            base: evaluate(&Monomial::new(m, &[i]).unwrap()),
            lowers: (0..i)
                .filter(|j| freedom.mask() >> j & 1 == 0)
                .map(|j| evaluate(&Monomial::new(m, &[j]).unwrap()))
                .collect(),
        })
        .collect())
}

/// `log2` of the orbit size: `deg(acting) + |λ_freedom(acting)|`.
pub fn orbit_exponent(freedom: &Monomial, acting: &Monomial) -> Result<u32> {
    if !acting.divides(freedom)? {
        return Err(Error::invalid(format!(
            "acting monomial {acting} must divide the freedom monomial {freedom}"
        )));
    }
    Ok(acting.degree() + freedom.lambda_restricted_size(acting)?)
}

/// All evaluations of `(B, ε) · acting` over the restricted actions
/// adapted to `freedom`. Actions are iterated as a counter over the free
/// bit positions; each action yields one pointwise product.
pub fn restricted_orbit(
    freedom: &Monomial,
    acting: &Monomial,
    limit: u128,
) -> Result<HashSet<EvaluationVector>> {
    let vars = acting_vars(freedom, acting)?;
    let bits: u32 = vars.iter().map(|v| v.lowers.len() as u32 + 1).sum();
    if 1u128 << bits > limit {
        return Err(Error::EnumerationLimit {
            required: 1u128 << bits,
            limit,
        });
    }
    let m = freedom.m();
    let ones = evaluate(&Monomial::constant(m));
    let mut out = HashSet::new();
    for counter in 0u64..1u64 << bits {
        let mut product = ones.clone();
        let mut pos = 0;
        for var in &vars {
            let mut y = var.base.clone();
            for low in &var.lowers {
                if counter >> pos & 1 == 1 {
                    y.xor_assign(low);
                }
                pos += 1;
            }
            if counter >> pos & 1 == 1 {
                y.xor_assign(&ones);
            }
            pos += 1;
            product = product.and(&y);
        }
        out.insert(product);
    }
    Ok(out)
}

/// The full restricted orbit of a monomial under its own adapted group.
pub fn enumerate_orbit(f: &Monomial) -> Result<HashSet<EvaluationVector>> {
    restricted_orbit(f, f, ORBIT_LIMIT)
}

/// `{ H · (F_1 + … + F_μ) }`: every product of an element of the orbit of
/// `h` with a sum picking one element per quotient orbit. The factors are
/// top-layer monomials, each divisible by `h` with degree-2 quotient.
pub fn minkowski_sum_orbits(
    factors: &[Monomial],
    h: &Monomial,
) -> Result<HashSet<EvaluationVector>> {
    if factors.is_empty() {
        return Err(Error::invalid("need at least one factor"));
    }
    let h_orbit: Vec<EvaluationVector> = restricted_orbit(h, h, ORBIT_LIMIT)?.into_iter().collect();
    let mut factor_orbits = Vec::new();
    let mut combos = h_orbit.len() as u128;
    for f in factors {
        let q = f.quotient(h)?;
        if q.degree() != 2 {
            return Err(Error::invalid(format!(
                "factor {f} over {h} has degree {} quotient; expected 2",
                q.degree()
            )));
        }
        let orbit: Vec<EvaluationVector> =
            restricted_orbit(f, &q, ORBIT_LIMIT)?.into_iter().collect();
        combos = combos.saturating_mul(orbit.len() as u128);
        factor_orbits.push(orbit);
    }
    if combos > ORBIT_LIMIT << 4 {
        return Err(Error::EnumerationLimit {
            required: combos,
            limit: ORBIT_LIMIT << 4,
        });
    }
    let m = h.m();
    let mut sums = vec![EvaluationVector::zero(m)];
    for orbit in &factor_orbits {
        let mut next = Vec::with_capacity(sums.len() * orbit.len());
        for s in &sums {
            for v in orbit {
                next.push(s.xor(v));
            }
        }
        sums = next;
    }
    let mut out = HashSet::new();
    for hv in &h_orbit {
        for s in &sums {
            out.insert(hv.and(s));
        }
    }
    Ok(out)
}

/// `log2(|O_f|·|O_g| / |O_f ⊕ O_g|)` for a coprime degree-2 pair; the
/// quotient must be an exact power of two.
pub fn measured_alpha(f: &Monomial, g: &Monomial) -> Result<u32> {
    if f.degree() != 2 || g.degree() != 2 || !f.gcd(g)?.is_constant() {
        return Err(Error::invalid(
            "collision measurement needs two coprime degree-2 monomials",
        ));
    }
    let of = enumerate_orbit(f)?.len() as u128;
    let og = enumerate_orbit(g)?.len() as u128;
    let sum = minkowski_sum_orbits(&[f.clone(), g.clone()], &Monomial::constant(f.m()))?;
    let product = of * og;
    let size = sum.len() as u128;
    if size == 0 || product % size != 0 {
        return Err(Error::consistency(format!(
            "orbit product {product} not divisible by sum cardinality {size}"
        )));
    }
    let q = product / size;
    if !q.is_power_of_two() {
        return Err(Error::consistency(format!(
            "collision quotient {q} is not a power of two"
        )));
    }
    Ok(q.trailing_zeros())
}

/// True iff the Minkowski-sum sets of the tuples are pairwise disjoint.
pub fn verify_disjointness(tuples: &[TypeIITuple]) -> Result<bool> {
    let mut sums = Vec::new();
    for t in tuples {
        sums.push(minkowski_sum_orbits(&t.factors, &t.h)?);
    }
    for (a, sa) in sums.iter().enumerate() {
        for sb in &sums[a + 1..] {
            if sa.iter().any(|v| sb.contains(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One orbit-size report line, as surfaced by the verification suites.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OrbitReport {
    pub monomial: Monomial,
    pub formula: String,
    pub enumerated: String,
    pub r#match: bool,
}

/// Formula-vs-enumeration orbit check over every monomial of a variable
/// count whose predicted size fits the limit.
pub fn orbit_reports(m: u8) -> Result<Vec<OrbitReport>> {
    let mut out = Vec::new();
    for f in MonomialSet::all(m)?.iter() {
        // the action count 2^{deg + |λ|} is also the predicted orbit size
        let bits = orbit_exponent(&f, &f)?;
        if 1u128 << bits > ORBIT_LIMIT {
            continue;
        }
        let orbit = enumerate_orbit(&f)?;
        let formula = 1u128 << bits;
        out.push(OrbitReport {
            monomial: f.clone(),
            formula: formula.to_string(),
            enumerated: orbit.len().to_string(),
            r#match: orbit.len() as u128 == formula,
        });
    }
    Ok(out)
}
