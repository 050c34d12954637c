//! The invariant ring `S(n)^N`, computed block by block.
//!
//! `S^d(n)` splits into `H`-weight blocks. On each block the simple root
//! vectors act by derivations; the invariants of weight `nu` and degree `d`
//! are the common kernel of those `rank` linear maps.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::cartan::Family;
use crate::cascade::{lattice_membership, Cascade};
use crate::coadjoint::{coadjoint_group_action, random_nil, NilVector, Side};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{degree_weights, weight_monomials, Exponents, NilPolynomial};
use crate::rational::{self, q, Q};
use crate::report::VerificationReport;
use crate::rootsys::{RootSystem, Weight};

/// `(e_alpha . f)(v) = -Df(v)[coad(e_alpha) v]` for the `i`-th simple root.
pub fn derivation_action(rs: &RootSystem, i: usize, f: &NilPolynomial) -> NilPolynomial {
    let mut out = NilPolynomial::zero(f.nvars());
    for (e, c) in f.terms() {
        for ((psi, phi), coeff) in lowering_pairs(rs, i) {
            if e[phi] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[phi] -= 1;
            e2[psi] += 1;
            out.add_term(e2, -(c * q(coeff * e[phi] as i64)));
        }
    }
    out
}

/// Pairs `((psi, psi - alpha_i), N(alpha_i, -psi))` over positive `psi` with `psi - alpha_i > 0`.
fn lowering_pairs(rs: &RootSystem, i: usize) -> Vec<((usize, usize), i64)> {
    let cb = rs.chevalley();
    (0..rs.num_positive())
        .filter_map(|psi| {
            let neg = rs.neg_id(psi);
            let t = cb.sum(i, neg)?;
            (t >= rs.num_positive()).then(|| ((psi, rs.neg_id(t)), cb.n(i, neg)))
        })
        .collect()
}

pub fn is_invariant(rs: &RootSystem, f: &NilPolynomial) -> bool {
    (0..rs.rank()).all(|i| derivation_action(rs, i, f).is_zero())
}

/// Largest `deg(w_i + w_i*) = sum_beta <w_i, beta^vee>` over fundamental weights;
/// the generator weights are among the `w_i + w_i*`.
pub fn generator_degree_bound(rs: &RootSystem, c: &Cascade) -> u32 {
    (0..rs.rank())
        .map(|i| {
            let w = rs.fundamental_weight(i);
            c.roots().map(|b| rs.coroot_pairing(&w, b).unwrap()).sum::<i64>() as u32
        })
        .max()
        .unwrap_or(0)
}

/// Default degree bound: `A_l -> ceil((l+1)/2)`, `G2 -> 6`, `B/C -> 4`, raised to
/// [`generator_degree_bound`] where that is larger; the maximum over simple factors.
pub fn default_max_degree(rs: &RootSystem, c: &Cascade) -> u32 {
    let table = rs
        .cartan_type()
        .factors()
        .iter()
        .map(|f| match f.family {
            Family::A => (f.rank as u32 + 2) / 2,
            Family::G => 6,
            _ => 4,
        })
        .max()
        .unwrap_or(1);
    table.max(generator_degree_bound(rs, c)).max(1)
}

/// Invariants of fixed degree and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    pub degree: u32,
    /// Simple-root coordinates of the weight.
    pub weight: Vec<i64>,
    pub basis: Vec<NilPolynomial>,
}

/// Kernel of the stacked derivations on the `(degree, weight)` block.
pub fn invariants_in_block(rs: &RootSystem, degree: u32, weight: &[i64]) -> InvariantBasis {
    let npos = rs.num_positive();
    let cols = weight_monomials(rs, degree, weight);
    let mut row_index: BTreeMap<(usize, Exponents), usize> = BTreeMap::new();
    let images: Vec<Vec<((usize, Exponents), Q)>> = cols
        .iter()
        .map(|e| {
            let mono = NilPolynomial::monomial(e.clone(), rational::one());
            (0..rs.rank())
                .flat_map(|i| {
                    derivation_action(rs, i, &mono)
                        .terms()
                        .iter()
                        .map(|(e2, c)| ((i, e2.clone()), c.clone()))
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    for img in &images {
        for (key, _) in img {
            let n = row_index.len();
            row_index.entry(key.clone()).or_insert(n);
        }
    }
    let mut m = Matrix::zeros(row_index.len(), cols.len());
    for (j, img) in images.iter().enumerate() {
        for (key, c) in img {
            m.set(row_index[key], j, c.clone());
        }
    }
    let kernel = Matrix::from_rows(m.nullspace(), cols.len());
    let (reduced, _) = kernel.rref();
    let basis = reduced
        .rows()
        .iter()
        .map(|row| {
            NilPolynomial::from_terms(npos, cols.iter().cloned().zip(row.iter().cloned())).normalized()
        })
        .collect();
    InvariantBasis {
        degree,
        weight: weight.to_vec(),
        basis,
    }
}

/// Same as [`invariants_in_block`] with the weight in fundamental-weight coordinates;
/// weights outside the root lattice have no invariants.
pub fn invariants_of_weight(rs: &RootSystem, degree: u32, nu: &Weight) -> InvariantBasis {
    match rs.root_lattice_coords(nu) {
        Some(w) => invariants_in_block(rs, degree, &w),
        None => InvariantBasis {
            degree,
            weight: Vec::new(),
            basis: Vec::new(),
        },
    }
}

/// All nonzero invariant blocks of degree `d`, sorted by weight.
pub fn invariants_of_degree(rs: &RootSystem, degree: u32) -> Vec<InvariantBasis> {
    let weights = degree_weights(rs, degree);
    let blocks: Vec<InvariantBasis> = weights
        .par_iter()
        .map(|w| invariants_in_block(rs, degree, w))
        .collect();
    blocks.into_iter().filter(|b| !b.basis.is_empty()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub weight: Vec<i64>,
    pub degree: u32,
    pub multiplicity: usize,
    pub basis: Vec<NilPolynomial>,
}

impl SpectrumEntry {
    /// The normalized invariant `xi_nu` (first basis element).
    pub fn xi(&self) -> &NilPolynomial {
        &self.basis[0]
    }
}

/// `H`-weights of `S(n)^N` in degrees `1..=max_degree`, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub max_degree: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn get(&self, weight: &[i64]) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.weight == weight)
    }

    pub fn weights(&self) -> BTreeSet<Vec<i64>> {
        self.entries.iter().map(|e| e.weight.clone()).collect()
    }
}

pub fn weight_spectrum(rs: &RootSystem, max_degree: u32) -> Spectrum {
    let entries = (1..=max_degree)
        .flat_map(|d| invariants_of_degree(rs, d))
        .map(|b| SpectrumEntry {
            weight: b.weight,
            degree: b.degree,
            multiplicity: b.basis.len(),
            basis: b.basis,
        })
        .collect();
    Spectrum { max_degree, entries }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub weight: Vec<i64>,
    pub degree: u32,
    pub xi: NilPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The monomial `prod xi_{mu_i}^{d_i}` for nonnegative exponents.
    pub fn monomial(&self, nvars: usize, exps: &[i64]) -> NilPolynomial {
        self.generators
            .iter()
            .zip(exps)
            .fold(NilPolynomial::one(nvars), |acc, (g, &d)| acc.mul(&g.xi.pow(d as u32)))
    }

    pub fn weight_matrix_rank(&self) -> usize {
        let n = self.generators.first().map_or(0, |g| g.weight.len());
        Matrix::from_rows(
            self.generators.iter().map(|g| g.weight.iter().map(|&x| q(x)).collect()).collect(),
            n,
        )
        .rank()
    }
}

/// Weights not expressible as a sum of two nonzero invariant weights, i.e. the
/// weights of prime invariants, in order of increasing degree.
pub fn prime_weights(spectrum: &Spectrum) -> Vec<&SpectrumEntry> {
    let by_weight: BTreeMap<&[i64], u32> = spectrum.entries.iter().map(|e| (e.weight.as_slice(), e.degree)).collect();
    spectrum
        .entries
        .iter()
        .filter(|e| {
            !spectrum.entries.iter().any(|mu| {
                mu.degree < e.degree && {
                    let rest: Vec<i64> = e.weight.iter().zip(&mu.weight).map(|(a, b)| a - b).collect();
                    by_weight.get(rest.as_slice()) == Some(&(e.degree - mu.degree))
                }
            })
        })
        .collect()
}

pub fn generators_from_spectrum(spectrum: &Spectrum, m: usize) -> Result<GeneratorSet> {
    let primes = prime_weights(spectrum);
    if primes.len() < m {
        return Err(Error::MaxDegreeTooSmall {
            max_degree: spectrum.max_degree,
            found: primes.len(),
            expected: m,
        });
    }
    Ok(GeneratorSet {
        generators: primes
            .into_iter()
            .map(|e| Generator {
                weight: e.weight.clone(),
                degree: e.degree,
                xi: e.xi().clone(),
            })
            .collect(),
    })
}

/// The prime generators of `S(n)^N` found up to `max_degree`.
pub fn extract_generators(rs: &RootSystem, cascade: &Cascade, max_degree: u32) -> Result<GeneratorSet> {
    generators_from_spectrum(&weight_spectrum(rs, max_degree), cascade.m())
}

/// The unique integer `e` with `nu = sum e_i mu_i`.
pub fn factorization_exponents(nu: &[i64], gens: &GeneratorSet) -> Result<Vec<i64>> {
    let outside = || Error::OutsideGeneratorLattice(nu.to_vec());
    let n = nu.len();
    let a = Matrix::from_rows(
        (0..n)
            .map(|r| gens.generators.iter().map(|g| q(g.weight[r])).collect())
            .collect(),
        gens.len(),
    );
    let b: Vec<Q> = nu.iter().map(|&x| q(x)).collect();
    let x = a.solve(&b).ok_or_else(outside)?;
    x.iter().map(rational::to_i64).collect::<Option<Vec<_>>>().ok_or_else(outside)
}

/// Splits `gamma = sum e_i mu_i` into numerator and denominator weights,
/// `xi_gamma = xi_num / xi_den`.
pub fn split_ratio(exps: &[i64], gens: &GeneratorSet) -> (Vec<i64>, Vec<i64>) {
    let n = gens.generators.first().map_or(0, |g| g.weight.len());
    let mut num = vec![0; n];
    let mut den = vec![0; n];
    for (&e, g) in exps.iter().zip(&gens.generators) {
        let target = if e >= 0 { &mut num } else { &mut den };
        for (t, w) in target.iter_mut().zip(&g.weight) {
            *t += e.abs() * w;
        }
    }
    (num, den)
}

/// `xi` restricted to `r_-`: only monomials in the cascade coordinates survive.
/// Variables of the result are the `a_beta`, in cascade order.
pub fn restrict_to_torus(rs: &RootSystem, xi: &NilPolynomial, c: &Cascade) -> NilPolynomial {
    let ids: Vec<usize> = c.roots().map(|b| rs.root_id(b.coords()).unwrap()).collect();
    let on_cascade = |e: &Exponents| e.iter().enumerate().all(|(i, &k)| k == 0 || ids.contains(&i));
    NilPolynomial::from_terms(
        ids.len(),
        xi.terms()
            .iter()
            .filter(|(e, _)| on_cascade(e))
            .map(|(e, c)| (ids.iter().map(|&i| e[i]).collect(), c.clone())),
    )
}

/// `true` iff `xi` is homogeneous with dominant weight; rejects non-invariants.
pub fn highest_weight_vector_check(rs: &RootSystem, xi: &NilPolynomial) -> Result<bool> {
    let Some(w) = xi.weight(rs) else {
        return Err(Error::NotInvariant);
    };
    if !is_invariant(rs, xi) {
        return Err(Error::NotInvariant);
    }
    Ok(xi.degree().is_some() && rs.weight_of(&w).is_dominant())
}

#[derive(Serialize)]
struct TermJson {
    exps: BTreeMap<String, u32>,
    coeff: String,
}

#[derive(Serialize)]
pub struct InvariantJson {
    weight_fw: Vec<i64>,
    degree: u32,
    cascade_coeffs: Option<Vec<i64>>,
    terms: Vec<TermJson>,
}

pub fn invariant_json(rs: &RootSystem, c: &Cascade, weight: &[i64], degree: u32, xi: &NilPolynomial) -> InvariantJson {
    let w = rs.weight_of(weight);
    InvariantJson {
        weight_fw: w.fw().to_vec(),
        degree,
        cascade_coeffs: lattice_membership(rs, &w, c),
        terms: xi
            .terms()
            .iter()
            .map(|(e, coeff)| TermJson {
                exps: e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (rs.root(i).csv(), k))
                    .collect(),
                coeff: rational::format(coeff),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct GeneratorSetJson {
    #[serde(rename = "type")]
    type_name: String,
    m: usize,
    generators: Vec<InvariantJson>,
}

pub fn generators_to_json(rs: &RootSystem, c: &Cascade, gens: &GeneratorSet) -> String {
    serde_json::to_string(&GeneratorSetJson {
        type_name: rs.cartan_type().to_string(),
        m: c.m(),
        generators: gens
            .generators
            .iter()
            .map(|g| invariant_json(rs, c, &g.weight, g.degree, &g.xi))
            .collect(),
    })
    .unwrap()
}

/// Every invariant weight has multiplicity one (per weight, across all degrees),
/// is dominant, and lies in the cascade lattice with nonnegative coefficients.
pub fn verify_multiplicity_one(rs: &RootSystem, c: &Cascade, spectrum: &Spectrum) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut counts: BTreeMap<&[i64], usize> = BTreeMap::new();
    for e in &spectrum.entries {
        *counts.entry(&e.weight).or_default() += e.multiplicity;
    }
    let bad: Vec<_> = counts
        .iter()
        .filter(|(_, &n)| n != 1)
        .map(|(w, n)| json!({"weight": w, "multiplicity": n}))
        .collect();
    report.expect_none(
        "multiplicity_one",
        format!("{} invariant weights up to degree {}", counts.len(), spectrum.max_degree),
        bad,
    );
    let bad: Vec<_> = spectrum
        .entries
        .iter()
        .filter(|e| {
            let w = rs.weight_of(&e.weight);
            let b = lattice_membership(rs, &w, c);
            !w.is_dominant() || !b.is_some_and(|b| b.iter().all(|&x| x >= 0))
        })
        .map(|e| json!(e.weight))
        .collect();
    report.expect_none("dominant_cascade_lattice", "Lambda(S(n)^N) inside Lambda_dom and Lambda_B", bad);
    let bad: Vec<_> = spectrum
        .entries
        .iter()
        .filter(|e| !matches!(highest_weight_vector_check(rs, e.xi()), Ok(true)))
        .map(|e| json!(e.weight))
        .collect();
    report.expect_none("highest_weight_vectors", "each xi_nu is a homogeneous dominant weight vector", bad);
    report
}

/// Generator count is `m`, weights independent, every invariant a generator
/// monomial, spectrum exactly the generated monoid, and algebraic independence.
pub fn verify_generators(rs: &RootSystem, c: &Cascade, spectrum: &Spectrum) -> VerificationReport {
    let mut report = VerificationReport::new();
    let gens = match generators_from_spectrum(spectrum, c.m()) {
        Ok(g) => g,
        Err(e) => {
            report.push("generator_count", crate::report::Status::Fail, e.to_string(), Vec::new());
            return report;
        }
    };
    report.check(
        "generator_count",
        gens.len() == c.m(),
        format!("{} prime weights, m = {}", gens.len(), c.m()),
    );
    let mut w = Vec::new();
    if gens.weight_matrix_rank() != gens.len() {
        w.push(json!(gens.generators.iter().map(|g| &g.weight).collect::<Vec<_>>()));
    }
    report.expect_none("weights_independent", "generator weights linearly independent", w);

    let npos = rs.num_positive();
    let bad: Vec<_> = spectrum
        .entries
        .par_iter()
        .filter(|e| match factorization_exponents(&e.weight, &gens) {
            Ok(d) => d.iter().any(|&x| x < 0) || e.xi().ratio_to(&gens.monomial(npos, &d)).is_none(),
            Err(_) => true,
        })
        .map(|e| json!(e.weight))
        .collect();
    report.expect_none("factorization", "xi_nu = prod xi_{mu_i}^{d_i} up to scalar", bad);

    // monoid generated by the mu_i up to the degree bound
    let mut generated: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<(Vec<i64>, u32)> = vec![(vec![0; rs.rank()], 0)];
    while let Some((w, d)) = frontier.pop() {
        for g in &gens.generators {
            let nd = d + g.degree;
            if nd > spectrum.max_degree {
                continue;
            }
            let nw: Vec<i64> = w.iter().zip(&g.weight).map(|(a, b)| a + b).collect();
            if generated.insert(nw.clone()) {
                frontier.push((nw, nd));
            }
        }
    }
    let found = spectrum.weights();
    let missing: Vec<_> = generated.difference(&found).map(|w| json!({"missing": w})).collect();
    let extra: Vec<_> = found.difference(&generated).map(|w| json!({"unexpected": w})).collect();
    report.expect_none(
        "spectrum_shape",
        format!("{} weights = generated monoid up to degree {}", found.len(), spectrum.max_degree),
        missing.into_iter().chain(extra).collect(),
    );

    let exps: Vec<Vec<Q>> = gens
        .generators
        .iter()
        .map(|g| {
            let r = restrict_to_torus(rs, &g.xi, c);
            match r.leading() {
                Some((e, _)) if r.terms().len() == 1 => e.iter().map(|&k| q(k as i64)).collect(),
                _ => vec![Q::zero(); c.m()],
            }
        })
        .collect();
    let rank = Matrix::from_rows(exps, c.m()).rank();
    report.check(
        "algebraically_independent",
        rank == gens.len(),
        "torus restrictions are monomials with independent exponent vectors",
    );
    report
}

/// Each `xi_nu` restricts to `r_-^x` as `c * prod a_beta^{b_beta}` with `sum b_beta = deg`.
pub fn verify_torus_restriction(rs: &RootSystem, c: &Cascade, spectrum: &Spectrum) -> VerificationReport {
    let mut monomial_bad = Vec::new();
    let mut degree_bad = Vec::new();
    for e in &spectrum.entries {
        let r = restrict_to_torus(rs, e.xi(), c);
        let b = lattice_membership(rs, &rs.weight_of(&e.weight), c);
        let expected: Option<Vec<u32>> = b.as_ref().and_then(|b| b.iter().map(|&x| u32::try_from(x).ok()).collect());
        let ok = r.terms().len() == 1 && expected.as_ref() == r.leading().map(|(e, _)| e);
        if !ok {
            monomial_bad.push(json!({"weight": e.weight, "restriction": r.to_string()}));
        }
        if b.map(|b| b.iter().sum::<i64>()) != Some(e.degree as i64) {
            degree_bad.push(json!({"weight": e.weight, "degree": e.degree}));
        }
    }
    let mut report = VerificationReport::new();
    report.expect_none("restriction_monomial", "xi_nu | r_-^x = c * prod a_beta^{b_beta}", monomial_bad);
    report.expect_none("degree_sum", "sum b_beta = deg nu", degree_bad);
    report
}

/// One oracle sample: `u = exp(x_1) ... exp(x_k)` and a point `v` of `n_-`.
#[derive(Clone, Debug)]
pub struct OracleSample {
    pub xs: Vec<NilVector>,
    pub v: NilVector,
}

pub fn random_oracle_sample(rng: &mut impl Rng, rs: &RootSystem) -> OracleSample {
    let npos = rs.num_positive();
    let k = rng.random_range(1..=3);
    OracleSample {
        xs: (0..k).map(|_| random_nil(rng, npos, Side::Plus, 2)).collect(),
        v: random_nil(rng, npos, Side::Minus, 3),
    }
}

/// `xi(Coad(u) v) = xi(v)` exactly for every polynomial and sample.
pub fn verify_group_invariance(
    rs: &RootSystem,
    polys: &[&NilPolynomial],
    samples: &[OracleSample],
) -> VerificationReport {
    let bad: Vec<usize> = samples
        .par_iter()
        .enumerate()
        .filter(|(_, s)| {
            let moved = coadjoint_group_action(rs, &s.xs, &s.v);
            polys.iter().any(|p| p.eval(&moved) != p.eval(&s.v))
        })
        .map(|(i, _)| i)
        .collect();
    let mut report = VerificationReport::new();
    report.expect_none(
        "group_invariance",
        format!("{} samples x {} invariants", samples.len(), polys.len()),
        bad.into_iter().map(|i| json!({"sample": i})).collect(),
    );
    report
}
