//! Finite-dimensional irreducible highest-weight modules, built exactly.
//!
//! `V_lambda` is spanned layer by layer from the highest vector by the lowering
//! operators. A vector of `V_lambda` below the top is zero iff every raising
//! operator kills it, so candidates `f_j b` are compared through their images
//! under all `e_i`; a candidate dependent on those already chosen is expressed
//! in them, which is exactly rejection of the contravariant-form radical.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::rational::{self, q, Q};
use crate::report::VerificationReport;
use crate::rootsys::{RootSystem, Weight};

pub const DEFAULT_DIM_BOUND: u64 = 200;
pub const DIM_BOUND_ENV: &str = "NILCASCADE_DIM_BOUND";

/// The dimension bound from the environment, or the default.
pub fn dimension_bound() -> u64 {
    std::env::var(DIM_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_BOUND)
}

pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(acc: &mut SparseVec, k: &Q, v: &SparseVec) {
    for (&i, c) in v {
        let slot = acc.entry(i).or_insert_with(Q::zero);
        *slot += k * c;
        if slot.is_zero() {
            acc.remove(&i);
        }
    }
}

/// Square matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            cols: vec![SparseVec::new(); dim],
        }
    }

    pub fn diagonal(entries: impl IntoIterator<Item = Q>) -> Self {
        Self {
            cols: entries
                .into_iter()
                .enumerate()
                .map(|(i, c)| if c.is_zero() { SparseVec::new() } else { SparseVec::from([(i, c)]) })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, c) in v {
            axpy(&mut out, c, &self.cols[j]);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin(other, &Q::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.lin(other, &-Q::one())
    }

    fn lin(&self, other: &SparseMatrix, k: &Q) -> SparseMatrix {
        let mut out = self.clone();
        for (a, b) in out.cols.iter_mut().zip(&other.cols) {
            axpy(a, k, b);
        }
        out
    }

    pub fn scale(&self, k: &Q) -> SparseMatrix {
        SparseMatrix {
            cols: self
                .cols
                .iter()
                .map(|c| if k.is_zero() { SparseVec::new() } else { c.iter().map(|(&i, x)| (i, x * k)).collect() })
                .collect(),
        }
    }

    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }
}

/// `prod (lambda + rho, phi) / (rho, phi)` over positive roots.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    if lambda.fw().len() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: lambda.fw().len(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.fw().to_vec()));
    }
    let rho = rs.rho();
    let shifted = lambda.add(&rho);
    let mut p = Q::one();
    for phi in rs.positive_roots() {
        p *= rs.inner_product(&shifted, phi)? / rs.inner_product(&rho, phi)?;
    }
    assert!(p.is_integer(), "Weyl dimension {p} is not integral");
    Ok(u64::try_from(p.to_integer()).expect("dimension fits in u64"))
}

#[derive(Clone, Debug)]
pub struct IrrepModule {
    highest_weight: Weight,
    weights: Vec<Weight>,
    depth: Vec<usize>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    lowest: usize,
    root_vectors: Vec<SparseMatrix>,
}

/// `V_lambda`, refusing anything larger than [`dimension_bound`].
pub fn build_irrep(rs: &RootSystem, lambda: &Weight) -> Result<IrrepModule> {
    build_irrep_bounded(rs, lambda, dimension_bound())
}

pub fn build_irrep_bounded(rs: &RootSystem, lambda: &Weight, bound: u64) -> Result<IrrepModule> {
    let dim = weyl_dimension(rs, lambda)?;
    if dim > bound {
        return Err(Error::DimensionBound { required: dim, bound });
    }
    let rank = rs.rank();
    let alpha_fw: Vec<Weight> = (0..rank).map(|i| rs.weight_of(rs.simple_root(i).coords())).collect();

    let mut weights = vec![lambda.clone()];
    let mut depth = vec![0];
    // e_cols[i][b], f_cols[j][b]: images of basis vector b
    let mut e_cols: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new()]; rank];
    let mut f_cols: Vec<Vec<SparseVec>> = vec![Vec::new(); rank];
    let mut layer: Vec<usize> = vec![0];

    while !layer.is_empty() {
        let start = weights.len();
        // per target weight: echelon basis of raising images, chosen global ids
        let mut blocks: BTreeMap<Vec<i64>, (EchelonBasis, Vec<usize>)> = BTreeMap::new();
        let local: BTreeMap<usize, usize> = layer.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let width = rank * layer.len();
        for &b in &layer {
            for j in 0..rank {
                let mu = weights[b].sub(&alpha_fw[j]);
                // e_i f_j b = f_j e_i b + delta_ij <mu_b, alpha_i^vee> b
                let images: Vec<SparseVec> = (0..rank)
                    .map(|i| {
                        let mut v = SparseVec::new();
                        for (&c, k) in &e_cols[i][b] {
                            axpy(&mut v, k, &f_cols[j][c]);
                        }
                        if i == j {
                            axpy(&mut v, &q(weights[b].fw()[i]), &SparseVec::from([(b, Q::one())]));
                        }
                        v
                    })
                    .collect();
                if images.iter().all(BTreeMap::is_empty) {
                    continue;
                }
                let mut dense = vec![Q::zero(); width];
                for (i, img) in images.iter().enumerate() {
                    for (c, k) in img {
                        dense[i * layer.len() + local[c]] = k.clone();
                    }
                }
                let (basis, ids) = blocks
                    .entry(mu.fw().to_vec())
                    .or_insert_with(|| (EchelonBasis::new(width), Vec::new()));
                if basis.insert(&dense) {
                    let id = weights.len();
                    weights.push(mu.clone());
                    depth.push(depth[b] + 1);
                    for (i, img) in images.into_iter().enumerate() {
                        e_cols[i].push(img);
                    }
                    for fc in f_cols.iter_mut() {
                        fc.push(SparseVec::new());
                    }
                    ids.push(id);
                    set_col(&mut f_cols[j], b, SparseVec::from([(id, Q::one())]));
                } else {
                    let coeffs = basis.express(&dense).expect("dependent candidate lies in the span");
                    let v = ids.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(&id, c)| (id, c)).collect();
                    set_col(&mut f_cols[j], b, v);
                }
            }
        }
        layer = (start..weights.len()).collect();
    }
    let n = weights.len();
    assert_eq!(n as u64, dim, "constructed dimension disagrees with the Weyl formula");
    for fc in f_cols.iter_mut() {
        fc.resize(n, SparseVec::new());
    }
    let e: Vec<SparseMatrix> = e_cols.into_iter().map(|cols| SparseMatrix { cols }).collect();
    let f: Vec<SparseMatrix> = f_cols.into_iter().map(|cols| SparseMatrix { cols }).collect();
    let lowest = n - 1;
    let root_vectors = root_vector_matrices(rs, &e, &f);
    Ok(IrrepModule {
        highest_weight: lambda.clone(),
        weights,
        depth,
        e,
        f,
        lowest,
        root_vectors,
    })
}

fn set_col(cols: &mut Vec<SparseVec>, b: usize, v: SparseVec) {
    if cols.len() <= b {
        cols.resize(b + 1, SparseVec::new());
    }
    cols[b] = v;
}

/// `rho(e_t) = [rho(e_a), rho(e_b)] / N(a, b)` along extraspecial pairs, both signs.
fn root_vector_matrices(rs: &RootSystem, e: &[SparseMatrix], f: &[SparseMatrix]) -> Vec<SparseMatrix> {
    let cb = rs.chevalley();
    let npos = rs.num_positive();
    let dim = e[0].dim();
    let mut out = vec![SparseMatrix::zero(dim); 2 * npos];
    for t in 0..npos {
        match cb.extraspecial(t) {
            None => {
                out[t] = e[t].clone();
                out[t + npos] = f[t].clone();
            }
            Some((i, b)) => {
                let n = cb.n(i, b);
                out[t] = out[i].commutator(&out[b]).scale(&rational::frac(1, n));
                let nn = cb.n(i + npos, b + npos);
                out[t + npos] = out[i + npos].commutator(&out[b + npos]).scale(&rational::frac(1, nn));
            }
        }
    }
    out
}

impl IrrepModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Number of lowering steps from the highest vector.
    pub fn depth(&self, b: usize) -> usize {
        self.depth[b]
    }

    pub fn highest_vector(&self) -> usize {
        0
    }

    pub fn lowest_vector(&self) -> usize {
        self.lowest
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i]
    }

    pub fn h(&self, i: usize) -> SparseMatrix {
        SparseMatrix::diagonal(self.weights.iter().map(|w| q(w.fw()[i])))
    }

    /// Action of the Chevalley root vector with the given root id.
    pub fn root_vector(&self, id: usize) -> &SparseMatrix {
        &self.root_vectors[id]
    }

    pub fn multiplicities(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.fw().to_vec()).or_default() += 1;
        }
        m
    }

    /// `H`-action by weight of any basis vector of `V_lambda` pairs with `h`.
    fn h_of(&self, rank: usize, h: &[i64]) -> SparseMatrix {
        let mut acc = SparseMatrix::zero(self.dim());
        for (i, &c) in h.iter().enumerate().take(rank) {
            if c != 0 {
                acc = acc.add(&self.h(i).scale(&q(c)));
            }
        }
        acc
    }

    /// Defining relations, weight symmetry and the lowest weight as matrix facts.
    #[allow(clippy::needless_range_loop)]
    pub fn verify(&self, rs: &RootSystem) -> VerificationReport {
        let rank = rs.rank();
        let cartan = rs.cartan_matrix();
        let mut report = VerificationReport::new();
        let dim = weyl_dimension(rs, &self.highest_weight).ok();
        report.check(
            "weyl_dimension",
            dim == Some(self.dim() as u64),
            format!("dim {} vs Weyl formula {:?}", self.dim(), dim),
        );
        let mut bad = Vec::new();
        for i in 0..rank {
            let hi = self.h(i);
            for j in 0..rank {
                // [h_i, e_j] = <alpha_j, alpha_i^vee> e_j
                let a = q(cartan[j][i]);
                if hi.commutator(&self.e[j]) != self.e[j].scale(&a) {
                    bad.push(format!("[h{i},e{j}]"));
                }
                if hi.commutator(&self.f[j]) != self.f[j].scale(&-a) {
                    bad.push(format!("[h{i},f{j}]"));
                }
                let ef = self.e[i].commutator(&self.f[j]);
                if (i == j && ef != hi) || (i != j && !ef.is_zero()) {
                    bad.push(format!("[e{i},f{j}]"));
                }
                if i != j {
                    let steps = 1 - cartan[j][i];
                    let mut ad_e = self.e[j].clone();
                    let mut ad_f = self.f[j].clone();
                    for _ in 0..steps {
                        ad_e = self.e[i].commutator(&ad_e);
                        ad_f = self.f[i].commutator(&ad_f);
                    }
                    if !ad_e.is_zero() || !ad_f.is_zero() {
                        bad.push(format!("serre({i},{j})"));
                    }
                }
            }
        }
        report.expect_none(
            "chevalley_relations",
            "[h,e], [h,f], [e_i,f_j] = delta h_i, Serre",
            bad.into_iter().map(serde_json::Value::from).collect(),
        );

        let cb = rs.chevalley();
        let n = self.root_vectors.len();
        let mut bad = Vec::new();
        for r in 0..n {
            for s in 0..n {
                let lhs = self.root_vectors[r].commutator(&self.root_vectors[s]);
                let rhs = if cb.neg_of(r) == s {
                    self.h_of(rank, cb.coroot(r))
                } else {
                    match cb.sum(r, s) {
                        Some(t) => self.root_vectors[t].scale(&q(cb.n(r, s))),
                        None => SparseMatrix::zero(self.dim()),
                    }
                };
                if lhs != rhs {
                    bad.push(serde_json::json!([rs.root(r).coords(), rs.root(s).coords()]));
                }
            }
        }
        report.expect_none("root_vector_brackets", "[rho e_r, rho e_s] matches the structure constants", bad);

        let mult = self.multiplicities();
        let bad: Vec<_> = mult
            .iter()
            .filter(|(w, &k)| mult.get(rs.w0_weight(&Weight::new(w.to_vec())).fw()) != Some(&k))
            .map(|(w, _)| serde_json::json!(w))
            .collect();
        report.expect_none("w0_symmetry", "dim V(mu) = dim V(w0 mu)", bad);

        let low = &self.weights[self.lowest];
        let expected = rs.dual_weight(&self.highest_weight).neg();
        report.check(
            "lowest_weight",
            *low == expected && mult.get(low.fw()) == Some(&1),
            format!("lowest weight {low}, -lambda* = {expected}"),
        );
        report
    }
}
