//! Verification suites shared by the CLI and the acceptance tests. Each
//! suite cross-checks a closed form against direct enumeration and
//! reports failures with counterexamples.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codeword::{brute_force_wd, weight_class, CodeSpec};
use crate::construct::{blended_order, poset_levels};
use crate::error::{Error, Result};
use crate::monomial::{alpha, decreasing_closure, Monomial, MonomialSet};
use crate::orbit::{
    measured_alpha, minkowski_sum_orbits, orbit_exponent, orbit_reports, verify_disjointness,
    ORBIT_LIMIT,
};
use crate::weight_enum::{
    complete_wd_rm2_subcode, count_min_weight, count_type_ii, enumerate_type_ii_tuples,
};

pub const SUITES: &[&str] = &[
    "orbits",
    "alpha",
    "minkowski",
    "disjoint",
    "rm2-sweep",
    "r3-spectrum",
    "poset",
    "structure",
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub m: u8,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, m: u8) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            m,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

pub fn run_suite(suite: &str, m: u8) -> Result<SuiteReport> {
    match suite {
        "orbits" => suite_orbits(m),
        "alpha" => suite_alpha(m),
        "minkowski" => suite_minkowski(m),
        "disjoint" => suite_disjoint(m),
        "rm2-sweep" => suite_rm2_sweep(m),
        "r3-spectrum" => suite_r3_spectrum(m),
        "poset" => suite_poset(m),
        "structure" => suite_structure(m),
        other => Err(Error::invalid(format!(
            "unknown suite {other:?}; available: {}",
            SUITES.join(", ")
        ))),
    }
}

/// Orbit cardinality equals `2^{deg(f) + |λ_f|}` for every enumerable
/// monomial.
fn suite_orbits(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("orbits", m);
    for r in orbit_reports(m)? {
        rep.check(r.r#match, || {
            format!(
                "orbit of {} enumerated {} vectors, formula says {}",
                r.monomial, r.enumerated, r.formula
            )
        });
    }
    Ok(rep)
}

fn coprime_degree2_pairs(m: u8) -> Result<Vec<(Monomial, Monomial)>> {
    let deg2: Vec<Monomial> = MonomialSet::all(m)?
        .iter()
        .filter(|f| f.degree() == 2)
        .collect();
    let mut out = Vec::new();
    for (a, f) in deg2.iter().enumerate() {
        for g in &deg2[a + 1..] {
            if f.gcd(g)?.is_constant() {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    Ok(out)
}

/// Measured collision exponents agree with the closed-form `α`.
fn suite_alpha(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("alpha", m);
    for (f, g) in coprime_degree2_pairs(m)? {
        let formula = alpha(&f, &g)?;
        let measured = measured_alpha(&f, &g)?;
        rep.check(formula == measured, || {
            format!("alpha({f}, {g}) formula {formula} but measured {measured}")
        });
    }
    Ok(rep)
}

/// Minkowski-sum cardinalities match the product formula, with and
/// without a nontrivial common factor.
fn suite_minkowski(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("minkowski", m);
    let mut hs = vec![Monomial::constant(m)];
    hs.extend(MonomialSet::all(m)?.iter().filter(|f| f.degree() == 1));
    for h in hs {
        let pairs = coprime_degree2_pairs(m)?;
        for (qf, qg) in pairs {
            if !qf.gcd(&h)?.is_constant() || !qg.gcd(&h)?.is_constant() {
                continue;
            }
            let f = combine(&h, &qf)?;
            let g = combine(&h, &qg)?;
            let predicted = orbit_exponent(&h, &h)?
                + orbit_exponent(&f, &qf)?
                + orbit_exponent(&g, &qg)?;
            let a = alpha(&qf, &qg)?;
            if 1u128 << predicted > ORBIT_LIMIT {
                continue;
            }
            let sum = minkowski_sum_orbits(&[f.clone(), g.clone()], &h)?;
            rep.check(sum.len() as u128 == 1u128 << (predicted - a), || {
                format!(
                    "|sum| for h={h}, factors {f},{g}: got {}, formula 2^{}",
                    sum.len(),
                    predicted - a
                )
            });
            let w = (1usize << (m as u32 - h.degree())) * 3 / 8;
            rep.check(sum.iter().all(|v| v.weight() == w), || {
                format!("sum for h={h}, factors {f},{g} has off-weight members")
            });
        }
    }
    Ok(rep)
}

fn combine(h: &Monomial, q: &Monomial) -> Result<Monomial> {
    Monomial::from_mask(h.m(), h.mask() | q.mask())
}

/// Distinct Type II tuples of the full second-order code generate
/// pairwise disjoint codeword sets.
fn suite_disjoint(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("disjoint", m);
    let rm2 = rm_set(2, m)?;
    let mut mu = 2;
    while 2 * mu <= m as u32 {
        let tuples = enumerate_type_ii_tuples(&rm2, mu)?;
        if tuples.is_empty() {
            mu += 1;
            continue;
        }
        rep.check(verify_disjointness(&tuples)?, || {
            format!("mu={mu} tuples produced overlapping Minkowski sums")
        });
        mu += 1;
    }
    Ok(rep)
}

fn rm_set(r: u32, m: u8) -> Result<MonomialSet> {
    MonomialSet::from_monomials(
        m,
        MonomialSet::all(m)?.iter().filter(|f| f.degree() <= r),
    )
}

/// All downward-closed degree-2 layers (exhaustive at m = 5, sampled at
/// larger m): the closed-form distribution equals the oracle exactly.
fn suite_rm2_sweep(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("rm2-sweep", m);
    let layers = if m <= 5 {
        downward_closed_layers(m)?
    } else {
        sampled_layers(m, 200)?
    };
    for layer in layers {
        let mut set = rm_set(1, m)?;
        for f in &layer {
            set.insert(f)?;
        }
        let closed = complete_wd_rm2_subcode(&set)?;
        let oracle = brute_force_wd(&CodeSpec::new(set)?)?;
        rep.check(closed == oracle, || {
            format!(
                "layer {layer:?}: closed form {} vs oracle {}",
                closed.polynomial_text(),
                oracle.polynomial_text()
            )
        });
    }
    Ok(rep)
}

/// Every downward-closed subset of the degree-2 layer under the monomial
/// order.
fn downward_closed_layers(m: u8) -> Result<Vec<Vec<Monomial>>> {
    let deg2: Vec<Monomial> = MonomialSet::all(m)?
        .iter()
        .filter(|f| f.degree() == 2)
        .collect();
    let k = deg2.len();
    assert!(k <= 20);
    let mut out = Vec::new();
    'subset: for mask in 0u32..1 << k {
        for (i, f) in deg2.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            for (j, g) in deg2.iter().enumerate() {
                if g.leq(f)? && mask >> j & 1 == 0 {
                    continue 'subset;
                }
            }
        }
        out.push(
            deg2.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| f.clone())
                .collect(),
        );
    }
    Ok(out)
}

/// Deterministically seeded random downward-closed degree-2 layers.
fn sampled_layers(m: u8, samples: usize) -> Result<Vec<Vec<Monomial>>> {
    let deg2: Vec<Monomial> = MonomialSet::all(m)?
        .iter()
        .filter(|f| f.degree() == 2)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut out = Vec::new();
    for _ in 0..samples {
        let gens: Vec<Monomial> = deg2
            .iter()
            .filter(|_| rng.gen_bool(0.2))
            .cloned()
            .collect();
        let mut layer = Vec::new();
        for f in &deg2 {
            if gens.iter().any(|g| f.leq(g).unwrap()) {
                layer.push(f.clone());
            }
        }
        out.push(layer);
    }
    Ok(out)
}

/// Random maximum-degree-3 decreasing sets: the closed forms match the
/// oracle at the minimum weight and at 1.5 times the minimum weight.
fn suite_r3_spectrum(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("r3-spectrum", m);
    let deg3: Vec<Monomial> = MonomialSet::all(m)?
        .iter()
        .filter(|f| f.degree() == 3)
        .collect();
    let cap = 24usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut tried = 0usize;
    while rep.checks < 40 && tried < 4000 {
        tried += 1;
        let gens: Vec<Monomial> = deg3
            .iter()
            .filter(|_| rng.gen_bool(0.12))
            .cloned()
            .collect();
        if gens.is_empty() {
            continue;
        }
        let closed = decreasing_closure(&MonomialSet::from_monomials(m, gens)?);
        if closed.len() > cap || closed.max_degree() != Some(3) {
            continue;
        }
        let code = CodeSpec::new(closed.clone())?;
        let oracle = brute_force_wd(&code)?;
        let wmin = 1usize << (m - 3);
        let min_formula = count_min_weight(&closed)?;
        rep.check(oracle.count(wmin) == min_formula, || {
            format!(
                "{closed:?}: min-weight count {} vs oracle {}",
                min_formula,
                oracle.count(wmin)
            )
        });
        let t2 = count_type_ii(&closed, 2)?;
        rep.check(oracle.count(wmin * 3 / 2) == t2, || {
            format!(
                "{closed:?}: 1.5 w_min count {} vs oracle {}",
                t2,
                oracle.count(wmin * 3 / 2)
            )
        });
    }
    if rep.checks < 40 {
        rep.failures
            .push(format!("only {} checks completed", rep.checks));
    }
    Ok(rep)
}

/// Level sizes of the weight-contribution poset and the blended order's
/// basic shape.
fn suite_poset(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("poset", m);
    let levels = poset_levels(m)?;
    let top = 2 * (m as usize - 2);
    rep.check(levels.len() == top + 1, || {
        format!("expected {} levels, found {}", top + 1, levels.len())
    });
    for l in 0..=top {
        let size = levels[l].members.len();
        rep.check(size == levels[top - l].members.len(), || {
            format!("sizes at levels {l} and {} differ", top - l)
        });
        if l <= m as usize - 2 {
            rep.check(size == (l + 2) / 2, || {
                format!("level {l} has {size} members, formula says {}", (l + 2) / 2)
            });
        }
    }
    let order = blended_order(m)?;
    rep.check(
        order.first() == Some(&Monomial::new(m, &[0, 1])?),
        || "blended order does not start at x0x1".to_string(),
    );
    let mut last_level = 0;
    for f in &order {
        let l = f.lambda_size();
        rep.check(l >= last_level, || {
            format!("blended order decreases in level at {f}")
        });
        last_level = l;
    }
    Ok(rep)
}

/// Structure of the 1.5 w_min class at small m: the Type II Minkowski
/// sums cover the oracle's weight class exactly, and each member splits
/// as a sum of two minimum-weight codewords.
fn suite_structure(m: u8) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("structure", m);
    let set = rm_set(2, m)?;
    let code = CodeSpec::new(set.clone())?;
    let n = code.n();
    let wmin = n / 4;
    let class = weight_class(&code, wmin * 3 / 2)?;
    let mut union = std::collections::HashSet::new();
    for t in enumerate_type_ii_tuples(&set, 2)? {
        for v in minkowski_sum_orbits(&t.factors, &t.h)? {
            union.insert(v);
        }
    }
    rep.check(union.len() == class.len(), || {
        format!(
            "Minkowski union has {} vectors, weight class {}",
            union.len(),
            class.len()
        )
    });
    rep.check(class.iter().all(|v| union.contains(v)), || {
        "weight class member missing from the Minkowski union".to_string()
    });
    // every 1.5 w_min codeword is a sum of two minimum-weight codewords
    let min_class: std::collections::HashSet<_> =
        weight_class(&code, wmin)?.into_iter().collect();
    for v in &class {
        let ok = min_class
            .iter()
            .any(|a| min_class.contains(&v.xor(a)));
        rep.check(ok, || format!("{v:?} is not a sum of two w_min codewords"));
    }
    Ok(rep)
}

/// Cross-check a closed-form distribution against the oracle; exposed
/// for the CLI's auto mode.
pub fn check_closed_vs_oracle(set: &MonomialSet, limit: usize) -> Result<bool> {
    let closed = complete_wd_rm2_subcode(set)?;
    let code = CodeSpec::new(set.clone())?;
    let oracle = crate::codeword::brute_force_wd_with_limit(&code, limit)?;
    if closed != oracle {
        return Err(Error::consistency(format!(
            "closed form {} disagrees with oracle {}",
            closed.polynomial_text(),
            oracle.polynomial_text()
        )));
    }
    Ok(true)
}
