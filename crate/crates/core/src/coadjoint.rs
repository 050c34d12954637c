//! The coadjoint action of `b` and `N` on `n_- ~ n*`.
//!
//! `g = n_- (+) b`, and `P` is the projection onto `n_-` along `b`
//! (`b` is the annihilator of `n` under the invariant form). For `x` in `b`
//! and `v` in `n_-` the action is `x . v = P [x, v]`; for `u = exp(x)`,
//! `Coad u = P Ad u`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cascade::Cascade;
use crate::chevalley::GElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, q, Q};
use crate::report::VerificationReport;
use crate::rootsys::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `sum c_phi e_phi` in `n`.
    Plus,
    /// `sum c_phi e_{-phi}` in `n_-`.
    Minus,
}

/// A vector of `n` or `n_-`, keyed by positive-root index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilVector {
    pub side: Side,
    pub coeffs: BTreeMap<usize, Q>,
}

impl NilVector {
    pub fn zero(side: Side) -> Self {
        Self {
            side,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(side: Side, phi: usize) -> Self {
        let mut v = Self::zero(side);
        v.coeffs.insert(phi, Q::one());
        v
    }

    pub fn from_pairs(side: Side, pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut v = Self::zero(side);
        for (k, c) in pairs {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, phi: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(phi).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&phi);
        }
    }

    pub fn coeff(&self, phi: usize) -> Q {
        self.coeffs.get(&phi).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &NilVector) -> NilVector {
        assert_eq!(self.side, other.side);
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Q) -> NilVector {
        NilVector::from_pairs(self.side, self.coeffs.iter().map(|(&i, c)| (i, c * k)))
    }

    pub fn neg(&self) -> NilVector {
        self.scale(&-Q::one())
    }

    pub fn dense(&self, npos: usize) -> Vec<Q> {
        (0..npos).map(|i| self.coeff(i)).collect()
    }

    pub fn to_g(&self, rs: &RootSystem) -> GElement {
        let mut g = GElement::zero(rs.rank());
        for (&phi, c) in &self.coeffs {
            let id = match self.side {
                Side::Plus => phi,
                Side::Minus => rs.neg_id(phi),
            };
            g.add_root(id, c.clone());
        }
        g
    }

    /// `{"coeffs": {"<root coords>": "p/q"}}`, keyed by the root of each basis vector
    /// (negative coordinates for `n_-`).
    pub fn to_json(&self, rs: &RootSystem) -> String {
        let coeffs: BTreeMap<String, String> = self
            .coeffs
            .iter()
            .map(|(&phi, c)| {
                let r = rs.root(phi);
                let key = match self.side {
                    Side::Plus => r.csv(),
                    Side::Minus => r.neg().csv(),
                };
                (key, rational::format(c))
            })
            .collect();
        serde_json::to_string(&NilVectorJson { coeffs }).unwrap()
    }

    pub fn from_json(rs: &RootSystem, s: &str) -> Result<NilVector> {
        let parsed: NilVectorJson = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        let mut side = None;
        let mut out = Vec::new();
        for (key, val) in parsed.coeffs {
            let coords: Vec<i64> = key
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad root key {key:?}"))))
                .collect::<Result<_>>()?;
            let id = rs.root_id(&coords).ok_or_else(|| Error::NotARoot(coords.clone()))?;
            let this = if id < rs.num_positive() { Side::Plus } else { Side::Minus };
            if side.is_some_and(|s| s != this) {
                return Err(Error::Config("mixed n and n_- keys".into()));
            }
            side = Some(this);
            let phi = if id < rs.num_positive() { id } else { rs.neg_id(id) };
            out.push((phi, rational::parse(&val)?));
        }
        Ok(NilVector::from_pairs(side.unwrap_or(Side::Minus), out))
    }
}

#[derive(Serialize, Deserialize)]
struct NilVectorJson {
    coeffs: BTreeMap<String, String>,
}

/// A point of `r_-^x`: nonzero coefficients `a_beta` on `e_{-beta}`, in cascade order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    a: Vec<Q>,
}

impl TorusPoint {
    pub fn new(a: Vec<Q>) -> Result<Self> {
        if a.iter().any(Zero::is_zero) {
            return Err(Error::Config("torus point coordinates must be nonzero".into()));
        }
        Ok(Self { a })
    }

    pub fn coords(&self) -> &[Q] {
        &self.a
    }

    pub fn to_nil(&self, rs: &RootSystem, c: &Cascade) -> NilVector {
        NilVector::from_pairs(
            Side::Minus,
            c.roots()
                .zip(&self.a)
                .map(|(b, a)| (rs.root_id(b.coords()).unwrap(), a.clone())),
        )
    }

    /// Reads `a_beta(z)` off a vector of `n_-`; `None` unless `z` is in `r_-^x`.
    pub fn from_nil(rs: &RootSystem, c: &Cascade, z: &NilVector) -> Option<TorusPoint> {
        let ids: Vec<usize> = c.roots().map(|b| rs.root_id(b.coords()).unwrap()).collect();
        if z.side != Side::Minus || z.coeffs.keys().any(|k| !ids.contains(k)) {
            return None;
        }
        TorusPoint::new(ids.iter().map(|&i| z.coeff(i)).collect()).ok()
    }
}

/// An element of `H`, given by its values `t_i` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    t: Vec<Q>,
}

impl TorusElement {
    pub fn new(t: Vec<Q>) -> Result<Self> {
        if t.iter().any(Zero::is_zero) {
            return Err(Error::Config("torus element entries must be nonzero".into()));
        }
        Ok(Self { t })
    }

    pub fn identity(rank: usize) -> Self {
        Self { t: vec![Q::one(); rank] }
    }

    /// Character value `prod t_i^{n_i}` for a root-lattice element.
    pub fn character(&self, coords: &[i64]) -> Q {
        self.t
            .iter()
            .zip(coords)
            .map(|(t, &n)| {
                if n >= 0 {
                    rational::pow(t, n as u32)
                } else {
                    rational::pow(&t.recip(), (-n) as u32)
                }
            })
            .product()
    }
}

/// `P`: the `n_-` component along `b`.
pub fn project_p(rs: &RootSystem, x: &GElement) -> NilVector {
    let npos = rs.num_positive();
    NilVector::from_pairs(
        Side::Minus,
        x.roots.iter().filter(|(&id, _)| id >= npos).map(|(&id, c)| (rs.neg_id(id), c.clone())),
    )
}

fn in_borel(rs: &RootSystem, x: &GElement) -> bool {
    x.roots.keys().all(|&id| id < rs.num_positive())
}

/// `x . v = P [x, v]` for `x` in `b` and `v` in `n_-`.
pub fn coadjoint_action(rs: &RootSystem, x: &GElement, v: &NilVector) -> Result<NilVector> {
    if !in_borel(rs, x) || v.side != Side::Minus {
        return Err(Error::NotInBorel);
    }
    Ok(project_p(rs, &rs.chevalley().bracket(x, &v.to_g(rs))))
}

fn coad_matrix(rs: &RootSystem, tau: &NilVector, domain: &[GElement]) -> Matrix {
    let npos = rs.num_positive();
    let cols: Vec<Vec<Q>> = domain
        .iter()
        .map(|x| coadjoint_action(rs, x, tau).unwrap().dense(npos))
        .collect();
    Matrix::from_rows((0..npos).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect(), domain.len())
}

fn n_basis(rs: &RootSystem) -> Vec<GElement> {
    (0..rs.num_positive()).map(|i| GElement::root_vector(rs.rank(), i)).collect()
}

fn b_basis(rs: &RootSystem) -> Vec<GElement> {
    let mut out = n_basis(rs);
    for i in 0..rs.rank() {
        let mut h = vec![Q::zero(); rs.rank()];
        h[i] = Q::one();
        out.push(GElement::cartan(h));
    }
    out
}

/// `{x in n : P [x, tau] = 0}`, as a reduced basis of vectors in `n`.
pub fn isotropy_algebra(rs: &RootSystem, tau: &NilVector) -> Vec<NilVector> {
    let npos = rs.num_positive();
    let m = coad_matrix(rs, tau, &n_basis(rs));
    let kernel = Matrix::from_rows(m.nullspace(), npos);
    let (r, _) = kernel.rref();
    r.rows()
        .iter()
        .map(|row| NilVector::from_pairs(Side::Plus, row.iter().cloned().enumerate()))
        .collect()
}

/// `isotropy_algebra(tau) == span{e_beta : beta in cascade}`, as subspaces.
pub fn isotropy_is_cascade_span(rs: &RootSystem, c: &Cascade, tau: &NilVector) -> bool {
    let npos = rs.num_positive();
    let iso = isotropy_algebra(rs, tau);
    let got = Matrix::from_rows(iso.iter().map(|v| v.dense(npos)).collect(), npos);
    let want = Matrix::from_rows(
        c.roots()
            .map(|b| NilVector::basis(Side::Plus, rs.root_id(b.coords()).unwrap()).dense(npos))
            .collect(),
        npos,
    );
    got.same_row_space(&want)
}

pub fn orbit_dimension(rs: &RootSystem, tau: &NilVector) -> usize {
    rs.num_positive() - isotropy_algebra(rs, tau).len()
}

/// `dim {P [x, tau] : x in b}`.
pub fn b_tangent_dimension(rs: &RootSystem, tau: &NilVector) -> usize {
    coad_matrix(rs, tau, &b_basis(rs)).rank()
}

/// `exp(coad x) v`, a finite sum since `coad x` is nilpotent on `n_-`.
pub fn exp_coad(rs: &RootSystem, x: &NilVector, v: &NilVector) -> NilVector {
    assert_eq!(x.side, Side::Plus);
    let xg = x.to_g(rs);
    let mut term = v.clone();
    let mut total = v.clone();
    let mut j = 1;
    loop {
        term = coadjoint_action(rs, &xg, &term).unwrap().scale(&rational::frac(1, j));
        if term.is_zero() {
            return total;
        }
        total = total.add(&term);
        j += 1;
    }
}

/// `Coad(u) v` for `u = exp(x_1) ... exp(x_k)`; the last factor acts first.
pub fn coadjoint_group_action(rs: &RootSystem, xs: &[NilVector], v: &NilVector) -> NilVector {
    xs.iter().rev().fold(v.clone(), |acc, x| exp_coad(rs, x, &acc))
}

/// The `H` action: `e_{-phi}` scales by the character of `-phi`, `e_phi` by that of `phi`.
pub fn torus_action(rs: &RootSystem, t: &TorusElement, v: &NilVector) -> NilVector {
    NilVector::from_pairs(
        v.side,
        v.coeffs.iter().map(|(&phi, c)| {
            let chi = t.character(rs.root(phi).coords());
            let factor = match v.side {
                Side::Plus => chi,
                Side::Minus => chi.recip(),
            };
            (phi, c * factor)
        }),
    )
}

/// `Ad(t) x` for `x` in `n`.
pub fn adjoint_torus(rs: &RootSystem, t: &TorusElement, x: &NilVector) -> NilVector {
    assert_eq!(x.side, Side::Plus);
    torus_action(rs, t, x)
}

pub fn random_torus_point(rng: &mut impl Rng, m: usize) -> TorusPoint {
    let a = (0..m)
        .map(|_| {
            let mut k = 0;
            while k == 0 {
                k = rng.random_range(-5..=5);
            }
            q(k)
        })
        .collect();
    TorusPoint::new(a).unwrap()
}

pub fn random_nil(rng: &mut impl Rng, npos: usize, side: Side, bound: i64) -> NilVector {
    NilVector::from_pairs(side, (0..npos).map(|i| (i, q(rng.random_range(-bound..=bound)))))
}

pub fn random_torus_element(rng: &mut impl Rng, rank: usize) -> TorusElement {
    let t = (0..rank)
        .map(|_| {
            let mut n = 0;
            while n == 0 {
                n = rng.random_range(-3..=3);
            }
            rational::frac(n, rng.random_range(1..=3))
        })
        .collect();
    TorusElement::new(t).unwrap()
}

fn point_json(p: &TorusPoint) -> serde_json::Value {
    json!(p.coords().iter().map(rational::format).collect::<Vec<_>>())
}

/// Isotropy of generic `tau` in `r_-^x` is `r`, and `dim O_tau = dim n - m`.
pub fn verify_isotropy(rs: &RootSystem, c: &Cascade, samples: &[TorusPoint]) -> VerificationReport {
    let npos = rs.num_positive();
    let results: Vec<(bool, usize)> = samples
        .par_iter()
        .map(|p| {
            let tau = p.to_nil(rs, c);
            (isotropy_is_cascade_span(rs, c, &tau), orbit_dimension(rs, &tau))
        })
        .collect();
    let mut report = VerificationReport::new();
    let bad: Vec<_> = samples
        .iter()
        .zip(&results)
        .filter(|(_, (ok, _))| !ok)
        .map(|(p, _)| point_json(p))
        .collect();
    report.expect_none("isotropy_equals_r", format!("{} samples: n_tau = span{{e_beta}}", samples.len()), bad);
    let bad: Vec<_> = samples
        .iter()
        .zip(&results)
        .filter(|(_, (_, d))| *d != npos - c.m())
        .map(|(p, (_, d))| json!({"tau": point_json(p), "orbit_dimension": d}))
        .collect();
    report.expect_none("orbit_dimension", format!("dim O_tau = {} - {} = {}", npos, c.m(), npos - c.m()), bad);
    report
}

/// The `B`-orbit through generic `tau` has full tangent space.
pub fn verify_open_orbit(rs: &RootSystem, c: &Cascade, samples: &[TorusPoint]) -> VerificationReport {
    let npos = rs.num_positive();
    let dims: Vec<usize> = samples.par_iter().map(|p| b_tangent_dimension(rs, &p.to_nil(rs, c))).collect();
    let bad: Vec<_> = samples
        .iter()
        .zip(&dims)
        .filter(|(_, &d)| d != npos)
        .map(|(p, d)| json!({"tau": point_json(p), "tangent_dimension": d}))
        .collect();
    let mut report = VerificationReport::new();
    report.expect_none("b_tangent_surjective", format!("{} samples: dim b.tau = dim n_- = {npos}", samples.len()), bad);
    report
}

/// One sample of the torus-equivariance identity
/// `t . Coad(exp x) v = Coad(exp Ad(t) x) (t . v)`.
#[derive(Clone, Debug)]
pub struct EquivarianceSample {
    pub t: TorusElement,
    pub xs: Vec<NilVector>,
    pub v: NilVector,
}

pub fn random_equivariance_sample(rng: &mut impl Rng, rs: &RootSystem, c: &Cascade) -> EquivarianceSample {
    let t = random_torus_element(rng, rs.rank());
    let k = rng.random_range(1..=2);
    let xs = (0..k).map(|_| random_nil(rng, rs.num_positive(), Side::Plus, 2)).collect();
    let v = random_torus_point(rng, c.m()).to_nil(rs, c);
    EquivarianceSample { t, xs, v }
}

pub fn equivariance_holds(rs: &RootSystem, s: &EquivarianceSample) -> bool {
    let lhs = torus_action(rs, &s.t, &coadjoint_group_action(rs, &s.xs, &s.v));
    let conj: Vec<NilVector> = s.xs.iter().map(|x| adjoint_torus(rs, &s.t, x)).collect();
    let rhs = coadjoint_group_action(rs, &conj, &torus_action(rs, &s.t, &s.v));
    lhs == rhs
}

/// `a . O_tau = O_{a . tau}` through the exact conjugation identity,
/// plus `H` preserving `r_-^x`.
pub fn verify_equivariance(rs: &RootSystem, c: &Cascade, samples: &[EquivarianceSample]) -> VerificationReport {
    let oks: Vec<bool> = samples.par_iter().map(|s| equivariance_holds(rs, s)).collect();
    let bad: Vec<_> = samples
        .iter()
        .zip(&oks)
        .filter(|(_, ok)| !**ok)
        .map(|(s, _)| json!({"v": s.v.to_json(rs)}))
        .collect();
    let mut report = VerificationReport::new();
    report.expect_none("torus_equivariance", format!("{} samples exact", samples.len()), bad);
    let preserved = samples
        .iter()
        .all(|s| TorusPoint::from_nil(rs, c, &torus_action(rs, &s.t, &s.v)).is_some());
    report.check("torus_preserves_r_minus_x", preserved, "H maps r_-^x to itself");
    report
}
