//! Sparse polynomials with rational coefficients on `n_-`.
//!
//! Variable `i` is the coordinate function `e_phi` of the `i`-th positive
//! root: `e_phi(sum c_psi e_{-psi}) = c_phi`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coadjoint::{NilVector, Side};
use crate::rational::{self, Q};
use crate::rootsys::RootSystem;

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl NilPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Q> {
        &self.terms
    }

    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Total degree when homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// `H`-weight (simple-root coordinates) when every monomial has the same one.
    pub fn weight(&self, rs: &RootSystem) -> Option<Vec<i64>> {
        let mut ws = self.terms.keys().map(|e| monomial_weight(rs, e));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn eval(&self, v: &NilVector) -> Q {
        assert_eq!(v.side, Side::Minus);
        let point = v.dense(self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    if k > 0 {
                        t *= rational::pow(x, k);
                    }
                }
                t
            })
            .sum()
    }

    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut f = e.clone();
                f[i] -= 1;
                (f, c * rational::q(e[i] as i64))
            }),
        )
    }

    /// First coefficient in ascending exponent order (the normalization anchor).
    pub fn leading(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next()
    }

    /// Scaled so that the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `k` with `self = k * other`, if the two are proportional and `other != 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        let (e, c) = other.leading()?;
        let k = self.terms.get(e).cloned().unwrap_or_else(Q::zero) / c;
        (*self == other.scale(&k)).then_some(k)
    }
}

pub fn monomial_weight(rs: &RootSystem, exps: &[u32]) -> Vec<i64> {
    let mut w = vec![0; rs.rank()];
    for (i, &k) in exps.iter().enumerate().filter(|(_, &k)| k > 0) {
        for (o, r) in w.iter_mut().zip(rs.root(i).coords()) {
            *o += k as i64 * r;
        }
    }
    w
}

/// All exponent vectors of total degree `degree` whose positive roots sum to `weight`,
/// in ascending order.
pub fn weight_monomials(rs: &RootSystem, degree: u32, weight: &[i64]) -> Vec<Exponents> {
    fn go(rs: &RootSystem, i: usize, deg: u32, rest: &mut Vec<i64>, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let npos = rs.num_positive();
        if deg == 0 {
            if rest.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if i == npos {
            return;
        }
        let h: i64 = rest.iter().sum();
        let max_h = rs.root(npos - 1).height();
        if h < deg as i64 || h > deg as i64 * max_h {
            return;
        }
        let r = rs.root(i).coords().to_vec();
        let mut k = 0;
        loop {
            cur[i] = k;
            go(rs, i + 1, deg - k, rest, cur, out);
            if k == deg || rest.iter().zip(&r).any(|(a, b)| a - b < 0) {
                break;
            }
            rest.iter_mut().zip(&r).for_each(|(a, b)| *a -= b);
            k += 1;
        }
        rest.iter_mut().zip(&r).for_each(|(a, b)| *a += k as i64 * b);
        cur[i] = 0;
    }
    if weight.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest = weight.to_vec();
    let mut cur = vec![0; rs.num_positive()];
    go(rs, 0, degree, &mut rest, &mut cur, &mut out);
    out.sort();
    out
}

/// Distinct weights of degree-`degree` monomials, sorted.
pub fn degree_weights(rs: &RootSystem, degree: u32) -> Vec<Vec<i64>> {
    let npos = rs.num_positive();
    let mut layer: std::collections::BTreeSet<Vec<i64>> = [vec![0; rs.rank()]].into();
    // weights reachable as sums of `d` positive roots
    for _ in 0..degree {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..npos).map(move |i| w.iter().zip(rs.root(i).coords()).map(|(a, b)| a + b).collect::<Vec<_>>())
            })
            .collect();
    }
    layer.into_iter().collect()
}

impl fmt::Display for NilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn weight_blocks() {
        let a3 = rs("A3");
        // theta + alpha2 in degree 2: e_{12} e_{23} and e_theta e_2
        let ms = weight_monomials(&a3, 2, &[1, 2, 1]);
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert_eq!(monomial_weight(&a3, m), vec![1, 2, 1]);
        }
        assert!(weight_monomials(&a3, 1, &[1, 0, 1]).is_empty());
        assert_eq!(weight_monomials(&a3, 0, &[0, 0, 0]), vec![vec![0; 6]]);
    }

    #[test]
    fn weight_blocks_partition_the_degree() {
        let g2 = rs("G2");
        let total: usize = degree_weights(&g2, 3).iter().map(|w| weight_monomials(&g2, 3, w).len()).sum();
        // C(6 + 3 - 1, 3)
        assert_eq!(total, 56);
    }

    #[test]
    fn ratio() {
        let p = NilPolynomial::var(3, 0).add(&NilPolynomial::var(3, 2).scale(&q(2)));
        assert_eq!(p.scale(&q(-3)).ratio_to(&p), Some(q(-3)));
        assert_eq!(p.ratio_to(&NilPolynomial::var(3, 0)), None);
        assert_eq!(p.normalized().leading().unwrap().1, &q(1));
    }

    fn small_poly() -> impl Strategy<Value = NilPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -4i64..4), 0..5)
            .prop_map(|ts| NilPolynomial::from_terms(3, ts.into_iter().map(|(e, c)| (e, q(c)))))
    }

    proptest! {
        #[test]
        fn product_rule(a in small_poly(), b in small_poly(), i in 0usize..3) {
            let lhs = a.mul(&b).derivative(i);
            let rhs = a.derivative(i).mul(&b).add(&a.mul(&b.derivative(i)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_multiplicative(a in small_poly(), b in small_poly(), v in proptest::collection::vec(-3i64..3, 3)) {
            let point = NilVector::from_pairs(Side::Minus, v.iter().enumerate().map(|(i, &c)| (i, q(c))));
            prop_assert_eq!(a.mul(&b).eval(&point), a.eval(&point) * b.eval(&point));
        }
    }
}
