//! The Lipsman–Wolf matrix coefficient `f(u) = <u v_lambda, z_lambda*>` on
//! `U(n_-)`, its codegree and top symbol, compared with the invariants.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::cascade::{lattice_membership, Cascade};
use crate::error::{Error, Result};
use crate::invariants::{
    factorization_exponents, generators_from_spectrum, invariants_in_block, is_invariant, Spectrum,
};
use crate::irrep::{build_irrep, IrrepModule, SparseVec};
use crate::poly::{weight_monomials, NilPolynomial};
use crate::rational::{self, Q};
use crate::report::{Status, VerificationReport};
use crate::rootsys::{RootSystem, Weight};

/// Coordinate along the lowest vector of `e_{-phi_1} ... e_{-phi_k} v_lambda`
/// (rightmost factor first). Factors are positive root ids.
pub fn matrix_coefficient(rs: &RootSystem, v: &IrrepModule, monomial: &[usize]) -> Q {
    let npos = rs.num_positive();
    let mut x = SparseVec::from([(v.highest_vector(), Q::one())]);
    for &phi in monomial.iter().rev() {
        x = v.root_vector(phi + npos).apply(&x);
        if x.is_empty() {
            return Q::zero();
        }
    }
    x.get(&v.lowest_vector()).cloned().unwrap_or_else(Q::zero)
}

/// `lambda + lambda*` in simple-root coordinates.
fn target(rs: &RootSystem, v: &IrrepModule) -> Vec<i64> {
    let hw = v.highest_weight();
    rs.root_lattice_coords(&hw.add(&rs.dual_weight(hw)))
        .expect("lambda + lambda* lies in the root lattice")
}

/// Result of the exhaustive codegree search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodegreeSearch {
    pub codegree: Option<usize>,
    /// Weight-compatible ordered monomials of length below the codegree, all vanishing.
    pub shorter_checked: usize,
}

/// Smallest length of an ordered `U(n_-)` monomial with nonzero coefficient.
pub fn codegree(rs: &RootSystem, v: &IrrepModule) -> CodegreeSearch {
    let nu = target(rs, v);
    let max_len = nu.iter().sum::<i64>() as usize;
    let mut shorter_checked = 0;
    for len in 0..=max_len {
        let mut count = 0;
        let mut nonzero = false;
        let start = SparseVec::from([(v.highest_vector(), Q::one())]);
        search(rs, v, &start, &nu, len, &mut |c| {
            count += 1;
            nonzero |= !c.is_zero();
        });
        if nonzero {
            return CodegreeSearch {
                codegree: Some(len),
                shorter_checked,
            };
        }
        shorter_checked += count;
    }
    CodegreeSearch {
        codegree: None,
        shorter_checked,
    }
}

/// Visits every ordered monomial of length `len` and weight `-remaining`,
/// building from the right; zero vectors are counted without descending.
fn search(rs: &RootSystem, v: &IrrepModule, x: &SparseVec, remaining: &[i64], len: usize, visit: &mut dyn FnMut(Q)) {
    if len == 0 {
        if remaining.iter().all(|&r| r == 0) {
            visit(x.get(&v.lowest_vector()).cloned().unwrap_or_else(Q::zero));
        }
        return;
    }
    let npos = rs.num_positive();
    for (phi, root) in rs.positive_roots().iter().enumerate() {
        let rest: Vec<i64> = remaining.iter().zip(root.coords()).map(|(a, b)| a - b).collect();
        if rest.iter().any(|&r| r < 0) || (rest.iter().sum::<i64>() as usize) < len - 1 {
            continue;
        }
        let y = if x.is_empty() { SparseVec::new() } else { v.root_vector(phi + npos).apply(x) };
        search(rs, v, &y, &rest, len - 1, visit);
    }
}

fn ordered(exps: &[u32]) -> Vec<usize> {
    exps.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect()
}

/// `f_(k) = sum_gamma f(e_{-gamma}) / prod gamma! * e^gamma` over weight-compatible `gamma`.
pub fn top_symbol(rs: &RootSystem, v: &IrrepModule, k: usize) -> NilPolynomial {
    let nu = target(rs, v);
    let npos = rs.num_positive();
    NilPolynomial::from_terms(
        npos,
        weight_monomials(rs, k as u32, &nu).into_iter().map(|e| {
            let denom: Q = e.iter().map(|&x| rational::factorial(x)).product();
            let c = matrix_coefficient(rs, v, &ordered(&e)) / denom;
            (e, c)
        }),
    )
}

/// Monomials of length `k` whose value changes under reordering.
pub fn permutation_violations(rs: &RootSystem, v: &IrrepModule, k: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let nu = target(rs, v);
    let mut bad = Vec::new();
    for e in weight_monomials(rs, k as u32, &nu) {
        let base = ordered(&e);
        let value = matrix_coefficient(rs, v, &base);
        let perms: BTreeSet<Vec<usize>> = if k <= 3 {
            permutations(&base)
        } else {
            (0..8)
                .map(|_| {
                    let mut p = base.clone();
                    p.shuffle(rng);
                    p
                })
                .collect()
        };
        bad.extend(perms.into_iter().filter(|p| matrix_coefficient(rs, v, p) != value));
    }
    bad
}

fn permutations(xs: &[usize]) -> BTreeSet<Vec<usize>> {
    if xs.len() <= 1 {
        return BTreeSet::from([xs.to_vec()]);
    }
    let mut out = BTreeSet::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.insert(p);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPlusStar {
    pub weight: Weight,
    /// `lambda(beta^vee)` per cascade root.
    pub coeffs: Vec<i64>,
    /// Whether `sum lambda(beta^vee) beta` agrees with `lambda - w0 lambda`.
    pub routes_agree: bool,
}

pub fn lambda_plus_star(rs: &RootSystem, lambda: &Weight, c: &Cascade) -> Result<LambdaPlusStar> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.fw().to_vec()));
    }
    let coeffs = c
        .roots()
        .map(|b| rs.coroot_pairing(lambda, b))
        .collect::<Result<Vec<_>>>()?;
    let weight = rs.weight_of(&c.combination(&coeffs));
    let routes_agree = weight == lambda.add(&rs.dual_weight(lambda));
    Ok(LambdaPlusStar {
        weight,
        coeffs,
        routes_agree,
    })
}

pub fn random_dominant(rng: &mut impl Rng, rank: usize, max: i64) -> Weight {
    Weight::new((0..rank).map(|_| rng.random_range(0..=max)).collect())
}

/// Both routes to `lambda + lambda*` agree on `n` random dominant weights.
pub fn verify_lambda_routes(rs: &RootSystem, c: &Cascade, rng: &mut impl Rng, n: usize) -> VerificationReport {
    let bad: Vec<_> = (0..n)
        .map(|_| random_dominant(rng, rs.rank(), 3))
        .filter(|l| !lambda_plus_star(rs, l, c).is_ok_and(|r| r.routes_agree))
        .map(|l| json!(l.fw()))
        .collect();
    let mut report = VerificationReport::new();
    report.expect_none("lambda_plus_star_routes", format!("{n} random dominant weights"), bad);
    report
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LipsmanWolfReport {
    pub lambda_fw: Vec<i64>,
    pub lambda_star_fw: Vec<i64>,
    pub lambda_plus_star_fw: Vec<i64>,
    pub dimension: usize,
    pub codegree: Option<usize>,
    pub cascade_coeffs: Vec<i64>,
    pub proportionality: Option<String>,
    pub pass: bool,
}

/// Full comparison of the top symbol of the matrix coefficient with `xi_{lambda+lambda*}`.
pub fn verify_lipsman_wolf(
    rs: &RootSystem,
    c: &Cascade,
    lambda: &Weight,
    rng: &mut impl Rng,
) -> Result<(LipsmanWolfReport, VerificationReport)> {
    let lps = lambda_plus_star(rs, lambda, c)?;
    let v = build_irrep(rs, lambda)?;
    let weight_fw = lps.weight.fw().to_vec();
    let mut report = v.verify(rs);
    report.check(
        "lambda_plus_star_routes",
        lps.routes_agree,
        format!("lambda + lambda* = {} = sum {:?} beta", lps.weight, lps.coeffs),
    );
    let degree: i64 = lps.coeffs.iter().sum();
    let nu = rs.root_lattice_coords(&lps.weight).expect("cascade combination is in the root lattice");
    let block = invariants_in_block(rs, degree as u32, &nu);
    report.check(
        "in_invariant_spectrum",
        block.basis.len() == 1,
        format!("dim S^{degree}(n)^N of weight lambda+lambda* = {}", block.basis.len()),
    );
    let search = codegree(rs, &v);
    report.check(
        "codegree",
        search.codegree == Some(degree as usize),
        format!("codegree {:?}, deg(lambda+lambda*) = {degree}", search.codegree),
    );
    report.check(
        "vanishes_below_codegree",
        search.codegree.is_some(),
        format!("{} shorter weight-compatible monomials vanish", search.shorter_checked),
    );
    let mut proportionality = None;
    match search.codegree {
        Some(k) => {
            let bad = permutation_violations(rs, &v, k, rng);
            report.expect_none(
                "permutation_invariance",
                format!("length-{k} coefficients symmetric"),
                bad.into_iter().map(|p| json!(p)).collect(),
            );
            let symbol = top_symbol(rs, &v, k);
            report.check(
                "top_symbol_invariant",
                !symbol.is_zero() && is_invariant(rs, &symbol) && symbol.weight(rs).as_deref() == Some(nu.as_slice()),
                "f_(k) is N-invariant of weight lambda+lambda*",
            );
            proportionality = block.basis.first().and_then(|xi| symbol.ratio_to(xi));
            report.check(
                "proportional",
                proportionality.is_some(),
                format!(
                    "f_(k) = {} * xi_(lambda+lambda*)",
                    proportionality.as_ref().map_or("-".to_string(), rational::format)
                ),
            );
        }
        None => {
            for id in ["permutation_invariance", "top_symbol_invariant", "proportional"] {
                report.push(id, Status::Fail, "no nonzero monomial found", Vec::new());
            }
        }
    }
    let lw = LipsmanWolfReport {
        lambda_fw: lambda.fw().to_vec(),
        lambda_star_fw: rs.dual_weight(lambda).fw().to_vec(),
        lambda_plus_star_fw: weight_fw,
        dimension: v.dim(),
        codegree: search.codegree,
        cascade_coeffs: lps.coeffs,
        proportionality: proportionality.as_ref().map(rational::format),
        pass: report.passed(),
    };
    Ok((lw, report))
}

/// Every dominant `sum b_beta beta` with `0 <= b_beta <= bound` carries an
/// invariant of degree `sum b_beta` that factors through the generators, and
/// every computed invariant weight is dominant in the cascade lattice.
pub fn verify_joseph(rs: &RootSystem, c: &Cascade, spectrum: &Spectrum, bound: i64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let gens = generators_from_spectrum(spectrum, c.m());
    let m = c.m();
    let mut bad = Vec::new();
    let mut realized = 0;
    let mut b = vec![0i64; m];
    loop {
        let nu = c.combination(&b);
        let w = rs.weight_of(&nu);
        if w.is_dominant() {
            let degree: i64 = b.iter().sum();
            let block = invariants_in_block(rs, degree as u32, &nu);
            let factors = match &gens {
                Ok(g) => factorization_exponents(&nu, g).is_ok_and(|e| e.iter().all(|&x| x >= 0)),
                Err(_) => false,
            };
            if block.basis.len() == 1 && factors {
                realized += 1;
            } else {
                bad.push(json!({"coeffs": b.clone(), "dim": block.basis.len(), "factors": factors}));
            }
        }
        let Some(i) = b.iter().position(|&x| x < bound) else { break };
        b[i] += 1;
        b[..i].iter_mut().for_each(|x| *x = 0);
    }
    report.expect_none(
        "joseph_realized",
        format!("{realized} dominant cascade combinations with coefficients <= {bound} realized"),
        bad,
    );
    let bad: Vec<_> = spectrum
        .entries
        .iter()
        .filter(|e| {
            let w = rs.weight_of(&e.weight);
            !w.is_dominant() || lattice_membership(rs, &w, c).is_none()
        })
        .map(|e| json!(e.weight))
        .collect();
    report.expect_none("joseph_contained", "Lambda(S(n)^N) inside Lambda_dom and Lambda_B", bad);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::compute_cascade;
    use crate::invariants::weight_spectrum;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn coefficient_examples() {
        let a2 = rs("A2");
        let v = build_irrep(&a2, &Weight::new(vec![1, 0])).unwrap();
        assert!(!matrix_coefficient(&a2, &v, &[2]).is_zero());
        assert!(matrix_coefficient(&a2, &v, &[0]).is_zero());
        assert_eq!(codegree(&a2, &v).codegree, Some(1));
        let b2 = rs("B2");
        let v = build_irrep(&b2, &Weight::new(vec![1, 0])).unwrap();
        let s = codegree(&b2, &v);
        assert_eq!(s.codegree, Some(2));
        assert_eq!(s.shorter_checked, 0);
        let g2 = rs("G2");
        let v = build_irrep(&g2, &Weight::new(vec![2, 0])).unwrap();
        assert_eq!(codegree(&g2, &v), CodegreeSearch { codegree: Some(4), shorter_checked: 6 });
        let v0 = build_irrep(&a2, &Weight::zero(2)).unwrap();
        assert_eq!(codegree(&a2, &v0).codegree, Some(0));
        assert_eq!(top_symbol(&a2, &v0, 0), NilPolynomial::one(3));
    }

    #[test]
    fn top_symbols() {
        let a2 = rs("A2");
        let v = build_irrep(&a2, &Weight::new(vec![1, 0])).unwrap();
        let s = top_symbol(&a2, &v, 1);
        assert!(s.ratio_to(&NilPolynomial::var(3, 2)).is_some());
        let b2 = rs("B2");
        let v = build_irrep(&b2, &Weight::new(vec![1, 0])).unwrap();
        let s = top_symbol(&b2, &v, 2);
        let xi = &invariants_in_block(&b2, 2, &[2, 2]).basis[0];
        assert!(s.ratio_to(xi).is_some());
    }

    #[test]
    fn lambda_plus_star_examples() {
        let b2 = rs("B2");
        let c = compute_cascade(&b2);
        let r = lambda_plus_star(&b2, &Weight::new(vec![1, 0]), &c).unwrap();
        assert_eq!(r.coeffs, vec![1, 1]);
        assert_eq!(b2.root_lattice_coords(&r.weight).unwrap(), vec![2, 2]);
        assert!(r.routes_agree);
        let l = Weight::new(vec![2, 3]);
        assert_eq!(lambda_plus_star(&b2, &l, &c).unwrap().weight, l.scale(2));
        let a2 = rs("A2");
        let r = lambda_plus_star(&a2, &Weight::new(vec![1, 0]), &compute_cascade(&a2)).unwrap();
        assert_eq!(r.coeffs, vec![1]);
        assert_eq!(r.weight, Weight::new(vec![1, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for t in ["A4", "B3", "C3", "D5", "E6", "F4", "G2"] {
            let r = rs(t);
            assert!(verify_lambda_routes(&r, &compute_cascade(&r), &mut rng, 20).passed(), "{t}");
        }
    }

    #[test]
    fn lipsman_wolf_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for (t, w, k) in [
            ("A2", vec![1, 0], 1),
            ("A2", vec![0, 1], 1),
            ("A3", vec![1, 0, 0], 1),
            ("B2", vec![1, 0], 2),
            ("B2", vec![0, 1], 1),
            ("G2", vec![1, 0], 2),
            ("G2", vec![2, 0], 4),
            ("B3", vec![1, 0, 1], 4),
        ] {
            let r = rs(t);
            let c = compute_cascade(&r);
            let (lw, rep) = verify_lipsman_wolf(&r, &c, &Weight::new(w.clone()), &mut rng).unwrap();
            assert!(rep.passed(), "{t} {w:?}: {:?}", rep.failures().collect::<Vec<_>>());
            assert_eq!(lw.codegree, Some(k));
        }
    }

    #[test]
    fn joseph() {
        for (t, d) in [("A2", 3), ("B2", 4)] {
            let r = rs(t);
            let c = compute_cascade(&r);
            let s = weight_spectrum(&r, d);
            let rep = verify_joseph(&r, &c, &s, 2);
            assert!(rep.passed(), "{t}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
