//! Finite crystallographic root systems in simple-root coordinates.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanType;
use crate::chevalley::ChevalleyBasis;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, q, Q};

/// A root, as integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Comma separated coordinates, e.g. `1,2`.
    pub fn csv(&self) -> String {
        csv(&self.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.csv())
    }
}

pub fn csv(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(fw: Vec<i64>) -> Self {
        Weight(fw)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fw(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| k * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", csv(&self.0))
    }
}

/// Anything living in `h*`: converts to rational simple-root coordinates.
pub trait InDual {
    fn simple_coords(&self, rs: &RootSystem) -> Result<Vec<Q>>;
}

impl InDual for Root {
    fn simple_coords(&self, rs: &RootSystem) -> Result<Vec<Q>> {
        rs.check_len(self.0.len())?;
        Ok(self.0.iter().map(|&c| q(c)).collect())
    }
}

impl InDual for Weight {
    fn simple_coords(&self, rs: &RootSystem) -> Result<Vec<Q>> {
        rs.check_len(self.0.len())?;
        Ok(rs.fw_to_simple(&self.0))
    }
}

/// Weyl group element as an integer matrix acting on simple-root coordinates
/// (column `j` is the image of the `j`-th simple root).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMatrix(Vec<Vec<i64>>);

impl WeylMatrix {
    pub fn identity(n: usize) -> Self {
        WeylMatrix((0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect())
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn mul(&self, other: &WeylMatrix) -> WeylMatrix {
        let n = self.0.len();
        WeylMatrix(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum()).collect())
                .collect(),
        )
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_minus_identity(&self) -> bool {
        *self == WeylMatrix::identity(self.0.len()).scaled(-1)
    }

    fn scaled(&self, k: i64) -> WeylMatrix {
        WeylMatrix(self.0.iter().map(|r| r.iter().map(|x| k * x).collect()).collect())
    }
}

/// A root system with its positive roots, form, and (lazily) a Chevalley basis.
///
/// Roots are stored positives first, sorted by height; the negative of the
/// root at index `i < npos` sits at `i + npos`.
#[derive(Debug)]
pub struct RootSystem {
    ctype: CartanType,
    gram: Matrix,
    // cartan[i][j] = <alpha_i, alpha_j^vee>
    cartan: Vec<Vec<i64>>,
    simple_to_fw_inv: Matrix,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    npos: usize,
    chevalley: OnceLock<ChevalleyBasis>,
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Self {
        let gram = ctype.gram();
        let n = ctype.rank();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = q(2) * gram.get(i, j) / gram.get(j, j);
                        rational::to_i64(&v).expect("Cartan entries are integers")
                    })
                    .collect()
            })
            .collect();
        // fw = C^T x ; keep the inverse for fw -> simple coordinates
        let ct = Matrix::from_rows(
            (0..n).map(|i| (0..n).map(|j| q(cartan[j][i])).collect()).collect(),
            n,
        );
        let simple_to_fw_inv = invert(&ct);

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for j in 0..n {
                let pairing: i64 = (0..n).map(|i| r[i] * cartan[i][j]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut s = r.clone();
                s[j] -= pairing;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|r| (r.iter().sum::<i64>(), Reverse(r.clone())));
        let npos = pos.len();
        let mut roots: Vec<Root> = pos.iter().cloned().map(Root).collect();
        roots.extend(pos.iter().map(|r| Root(r.iter().map(|c| -c).collect())));
        let index = roots.iter().enumerate().map(|(i, r)| (r.0.clone(), i)).collect();
        Self {
            ctype,
            gram,
            cartan,
            simple_to_fw_inv,
            roots,
            index,
            npos,
            chevalley: OnceLock::new(),
        }
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.ctype
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn root_id(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    /// Index of `-root(id)`.
    pub fn neg_id(&self, id: usize) -> usize {
        if id < self.npos {
            id + self.npos
        } else {
            id - self.npos
        }
    }

    /// Index of `root(a) + root(b)` if that is a root.
    pub fn sum_id(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].0.iter().zip(&self.roots[b].0).map(|(x, y)| x + y).collect();
        self.root_id(&s)
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        // simple roots are exactly the height-one prefix, sorted by index
        &self.roots[i]
    }

    pub fn chevalley(&self) -> &ChevalleyBasis {
        self.chevalley.get_or_init(|| ChevalleyBasis::compute(self))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    pub fn inner_coords(&self, x: &[Q], y: &[Q]) -> Q {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
    }

    pub fn inner_int(&self, x: &[i64], y: &[i64]) -> Q {
        let xq: Vec<Q> = x.iter().map(|&c| q(c)).collect();
        let yq: Vec<Q> = y.iter().map(|&c| q(c)).collect();
        self.inner_coords(&xq, &yq)
    }

    /// The symmetric form on `h*`, for roots or weights in any combination.
    pub fn inner_product(&self, a: &impl InDual, b: &impl InDual) -> Result<Q> {
        Ok(self.inner_coords(&a.simple_coords(self)?, &b.simple_coords(self)?))
    }

    pub fn squared_length(&self, id: usize) -> Q {
        let r = &self.roots[id].0;
        self.inner_int(r, r)
    }

    /// `<mu, beta^vee> = 2 (mu, beta) / (beta, beta)`.
    pub fn coroot_pairing(&self, mu: &Weight, beta: &Root) -> Result<i64> {
        self.check_len(mu.0.len())?;
        self.check_len(beta.0.len())?;
        let bid = self.root_id(&beta.0).ok_or_else(|| Error::NotARoot(beta.0.clone()))?;
        let v = q(2) * self.inner_product(mu, beta)? / self.squared_length(bid);
        Ok(rational::to_i64(&v).expect("integral weight pairs integrally with coroots"))
    }

    fn coroot_pairing_coords(&self, x: &[i64], beta: &[i64]) -> i64 {
        let v = q(2) * self.inner_int(x, beta) / self.inner_int(beta, beta);
        rational::to_i64(&v).expect("root lattice pairs integrally with coroots")
    }

    /// Fundamental-weight coordinates of an element of the root lattice.
    pub fn simple_to_fw(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x[j] * self.cartan[j][i]).sum()).collect()
    }

    pub fn fw_to_simple(&self, fw: &[i64]) -> Vec<Q> {
        let v: Vec<Q> = fw.iter().map(|&c| q(c)).collect();
        self.simple_to_fw_inv.mul_vec(&v)
    }

    /// Simple-root coordinates when the weight lies in the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.fw_to_simple(&w.0).iter().map(rational::to_i64).collect()
    }

    pub fn weight_of(&self, simple_coords: &[i64]) -> Weight {
        Weight(self.simple_to_fw(simple_coords))
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut fw = vec![0; self.rank()];
        fw[i] = 1;
        Weight(fw)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `s_beta(mu) = mu - <mu, beta^vee> beta`.
    pub fn reflect(&self, beta: &Root, mu: &Weight) -> Result<Weight> {
        let k = self.coroot_pairing(mu, beta)?;
        let beta_fw = self.simple_to_fw(&beta.0);
        Ok(Weight(mu.0.iter().zip(&beta_fw).map(|(m, b)| m - k * b).collect()))
    }

    pub fn reflect_coords(&self, beta: &[i64], x: &[i64]) -> Vec<i64> {
        let k = self.coroot_pairing_coords(x, beta);
        x.iter().zip(beta).map(|(a, b)| a - k * b).collect()
    }

    pub fn reflection_matrix(&self, beta: &Root) -> WeylMatrix {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.reflect_coords(&beta.0, &e)
            })
            .collect();
        WeylMatrix((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
    }

    /// A reduced word for `w0`, found by descending from the dominant chamber
    /// (`rho`) to the antidominant one with simple reflections.
    pub fn longest_word(&self) -> Vec<usize> {
        let mut v = self.rho().0;
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&c| c > 0) {
            let alpha_fw = &self.cartan[i];
            let k = v[i];
            v = v.iter().zip(alpha_fw).map(|(m, a)| m - k * a).collect();
            word.push(i);
        }
        word
    }

    /// The longest Weyl element, computed from the simple reflections only.
    pub fn longest_element(&self) -> WeylMatrix {
        let n = self.rank();
        self.longest_word().iter().fold(WeylMatrix::identity(n), |acc, &i| {
            self.reflection_matrix(self.simple_root(i)).mul(&acc)
        })
    }

    /// `w0` applied to a weight.
    pub fn w0_weight(&self, mu: &Weight) -> Weight {
        let mut v = mu.0.clone();
        for &i in &self.longest_word() {
            let k = v[i];
            v = v.iter().zip(&self.cartan[i]).map(|(m, a)| m - k * a).collect();
        }
        Weight(v)
    }

    /// `lambda* = -w0 lambda`, the highest weight of the dual module.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        self.w0_weight(lambda).neg()
    }

    pub fn connected(&self, i: usize, j: usize) -> bool {
        i != j && !self.gram.get(i, j).is_zero()
    }

    /// Connected components of the Dynkin subdiagram on `nodes`, each sorted,
    /// ordered by least member.
    pub fn components(&self, nodes: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left = nodes.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            left.remove(&start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                let next: Vec<usize> = left.iter().copied().filter(|&w| self.connected(v, w)).collect();
                for w in next {
                    left.remove(&w);
                    stack.push(w);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn support(&self, coords: &[i64]) -> BTreeSet<usize> {
        coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect()
    }

    /// Highest root of the subsystem spanned by a connected set of simple roots.
    pub fn highest_root_of(&self, nodes: &BTreeSet<usize>) -> Option<&Root> {
        self.positive_roots()
            .iter()
            .filter(|r| self.support(&r.0).is_subset(nodes))
            .max_by_key(|r| r.height())
    }

    /// `p` maximal with `x - p*along` a root (the string length below `x`).
    pub fn string_below(&self, along: &[i64], x: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur: Vec<i64> = x.to_vec();
        loop {
            cur = cur.iter().zip(along).map(|(a, b)| a - b).collect();
            if !self.is_root(&cur) {
                return p;
            }
            p += 1;
        }
    }

    /// `phi` and `psi` are distinct and neither sum nor difference is a root.
    pub fn strongly_orthogonal(&self, phi: &[i64], psi: &[i64]) -> bool {
        let sum: Vec<i64> = phi.iter().zip(psi).map(|(a, b)| a + b).collect();
        let diff: Vec<i64> = phi.iter().zip(psi).map(|(a, b)| a - b).collect();
        phi != psi && !self.is_root(&sum) && !self.is_root(&diff) && diff.iter().any(|&c| c != 0)
    }
}

fn invert(m: &Matrix) -> Matrix {
    let n = m.nrows();
    let cols: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let e: Vec<Q> = (0..n).map(|i| if i == j { q(1) } else { q(0) }).collect();
            m.solve(&e).expect("Cartan matrix is invertible")
        })
        .collect();
    Matrix::from_rows((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn root_counts() {
        for (t, n) in [("A2", 6), ("B2", 8), ("G2", 12), ("A1xA1", 4), ("F4", 48), ("E8", 240)] {
            let r = rs(t);
            assert_eq!(r.roots().len(), n, "{t}");
            assert_eq!(r.num_positive() * 2, n);
        }
    }

    #[test]
    fn inner_products() {
        let a2 = rs("A2");
        assert_eq!(a2.inner_int(&[1, 0], &[0, 1]), q(-1));
        let b2 = rs("B2");
        assert_eq!(b2.inner_int(&[1, 2], &[1, 0]), q(0));
        assert_eq!(b2.inner_int(&[1, 0], &[1, 0]), q(2));
        let g2 = rs("G2");
        assert_eq!(g2.inner_int(&[1, 0], &[1, 0]), frac(2, 3));
        assert!(a2.inner_product(&Root(vec![1, 0, 0]), &Weight::new(vec![1, 0])).is_err());
    }

    #[test]
    fn coroot_pairings() {
        let b2 = rs("B2");
        let w1 = b2.fundamental_weight(0);
        assert_eq!(b2.coroot_pairing(&w1, &Root(vec![1, 0])).unwrap(), 1);
        assert_eq!(b2.coroot_pairing(&w1, &Root(vec![1, 2])).unwrap(), 1);
        let a2 = rs("A2");
        // rho = theta in A2, so the pairing with theta^vee is 2
        assert_eq!(a2.coroot_pairing(&a2.rho(), &Root(vec![1, 1])).unwrap(), 2);
        assert_eq!(a2.coroot_pairing(&a2.fundamental_weight(0), &Root(vec![1, 1])).unwrap(), 1);
        for t in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let r = rs(t);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let p = r.coroot_pairing(&r.fundamental_weight(i), r.simple_root(j)).unwrap();
                    assert_eq!(p, (i == j) as i64);
                }
            }
        }
    }

    #[test]
    fn reflections() {
        let a2 = rs("A2");
        let a1 = a2.weight_of(&[1, 0]);
        assert_eq!(a2.reflect(&Root(vec![1, 0]), &a1).unwrap(), a1.neg());
        assert_eq!(a2.reflect(&Root(vec![1, 1]), &a1).unwrap(), a2.weight_of(&[0, -1]));
        let mu = Weight::new(vec![3, -2]);
        let once = a2.reflect(&Root(vec![1, 1]), &mu).unwrap();
        assert_eq!(a2.reflect(&Root(vec![1, 1]), &once).unwrap(), mu);
    }

    #[test]
    fn longest_elements() {
        assert!(rs("A1").longest_element().is_minus_identity());
        assert!(rs("B2").longest_element().is_minus_identity());
        let a2 = rs("A2").longest_element();
        assert_eq!(a2.apply(&[1, 0]), vec![0, -1]);
    }

    #[test]
    fn fw_simple_round_trip() {
        let g2 = rs("G2");
        let theta = Root(vec![3, 2]);
        let w = g2.weight_of(theta.coords());
        assert_eq!(w.fw(), &[0, 1]);
        assert_eq!(g2.root_lattice_coords(&w).unwrap(), vec![3, 2]);
        let a2 = rs("A2");
        assert!(a2.root_lattice_coords(&a2.fundamental_weight(0)).is_none());
    }
}
