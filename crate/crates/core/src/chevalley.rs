//! Chevalley basis structure constants and the bracket on `g`.
//!
//! Signs follow the extraspecial-pair convention: for every non-simple
//! positive root `xi`, the pair `(alpha, xi - alpha)` with `alpha` the simple
//! root of least index gets `N = +(p + 1)`. All other constants follow from
//! the standard identities between the `N_{r,s}`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::rational::{self, q, Q};
use crate::rootsys::RootSystem;

#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    npos: usize,
    rank: usize,
    // N(r, s) for root ids with r + s a root
    constants: HashMap<(usize, usize), i64>,
    extraspecial: Vec<Option<(usize, usize)>>,
    // coroot h_r in the basis of simple coroots, per root id
    coroots: Vec<Vec<i64>>,
    // <root s, alpha_i^vee>, per root id
    pairings: Vec<Vec<i64>>,
    sums: HashMap<(usize, usize), usize>,
}

struct Builder<'a> {
    rs: &'a RootSystem,
    lengths: Vec<Q>,
    extraspecial: Vec<Option<(usize, usize)>>,
    memo: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    fn is_pos(&self, id: usize) -> bool {
        id < self.rs.num_positive()
    }

    fn n(&mut self, r: usize, s: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(r, s)) {
            return v;
        }
        let Some(t) = self.rs.sum_id(r, s) else {
            return 0;
        };
        let rs = self.rs;
        let v = match (self.is_pos(r), self.is_pos(s)) {
            (true, true) if r > s => -self.n(s, r),
            (true, true) => {
                let (a, b) = self.extraspecial[t].expect("non-simple root has an extraspecial pair");
                if (r, s) == (a, b) {
                    rs.string_below(rs.root(a).coords(), rs.root(b).coords()) + 1
                } else {
                    let (g, d) = (r, s);
                    let (na, nb) = (rs.neg_id(a), rs.neg_id(b));
                    let mut acc = Q::zero();
                    if let Some(da) = rs.sum_id(d, na) {
                        let x = self.n(d, na) * self.n(g, nb);
                        acc += q(x) / &self.lengths[da];
                    }
                    if let Some(ga) = rs.sum_id(g, na) {
                        let x = self.n(na, g) * self.n(d, nb);
                        acc += q(x) / &self.lengths[ga];
                    }
                    let v = acc * &self.lengths[t] / q(self.n(a, b));
                    rational::to_i64(&v).expect("structure constants are integers")
                }
            }
            (false, false) => -self.n(rs.neg_id(r), rs.neg_id(s)),
            (true, false) => {
                let tn = rs.neg_id(t);
                if self.is_pos(t) {
                    // r + s + (-t) = 0: N(r,s)/(t,t) = N(s,-t)/(r,r), N(s,-t) = -N(-s,t)
                    let v = -self.n(rs.neg_id(s), t);
                    let x = q(v) * &self.lengths[t] / &self.lengths[r];
                    rational::to_i64(&x).expect("integral")
                } else {
                    // -t positive: N(r,s)/(t,t) = N(-t,r)/(s,s)
                    let v = self.n(tn, r);
                    let x = q(v) * &self.lengths[t] / &self.lengths[s];
                    rational::to_i64(&x).expect("integral")
                }
            }
            (false, true) => -self.n(s, r),
        };
        self.memo.insert((r, s), v);
        v
    }
}

impl ChevalleyBasis {
    pub fn compute(rs: &RootSystem) -> Self {
        let npos = rs.num_positive();
        let rank = rs.rank();
        let total = rs.roots().len();
        let lengths: Vec<Q> = (0..total).map(|i| rs.squared_length(i)).collect();
        let mut extraspecial = vec![None; total];
        for (t, slot) in extraspecial.iter_mut().enumerate().take(npos) {
            if rs.root(t).height() == 1 {
                continue;
            }
            let pair = (0..rank).find_map(|i| {
                let rest: Vec<i64> = rs
                    .root(t)
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| if j == i { c - 1 } else { c })
                    .collect();
                rs.root_id(&rest).map(|b| (i, b))
            });
            *slot = pair;
        }
        let mut b = Builder {
            rs,
            lengths: lengths.clone(),
            extraspecial: extraspecial.clone(),
            memo: HashMap::new(),
        };
        let mut constants = HashMap::new();
        let mut sums = HashMap::new();
        for r in 0..total {
            for s in 0..total {
                if let Some(t) = rs.sum_id(r, s) {
                    constants.insert((r, s), b.n(r, s));
                    sums.insert((r, s), t);
                }
            }
        }
        let coroots = (0..total)
            .map(|id| {
                let c = rs.root(id).coords();
                (0..rank)
                    .map(|i| {
                        let v = q(c[i]) * rs.gram().get(i, i) / &lengths[id];
                        rational::to_i64(&v).expect("coroot coordinates are integers")
                    })
                    .collect()
            })
            .collect();
        let cartan = rs.cartan_matrix();
        let pairings = (0..total)
            .map(|id| {
                let c = rs.root(id).coords();
                (0..rank).map(|i| (0..rank).map(|j| c[j] * cartan[j][i]).sum()).collect()
            })
            .collect();
        Self {
            npos,
            rank,
            constants,
            extraspecial,
            coroots,
            pairings,
            sums,
        }
    }

    /// `N(r, s)` with `[e_r, e_s] = N(r, s) e_{r+s}`; zero when `r + s` is not a root.
    pub fn n(&self, r: usize, s: usize) -> i64 {
        self.constants.get(&(r, s)).copied().unwrap_or(0)
    }

    /// Root id of `r + s`, if a root.
    pub fn sum(&self, r: usize, s: usize) -> Option<usize> {
        self.sums.get(&(r, s)).copied()
    }

    /// For a non-simple positive root id, the simple index `i` and the root id
    /// of `xi - alpha_i`, with `N(alpha_i, xi - alpha_i) > 0`.
    pub fn extraspecial(&self, id: usize) -> Option<(usize, usize)> {
        self.extraspecial.get(id).copied().flatten()
    }

    /// `[e_r, e_{-r}] = h_r` in simple-coroot coordinates.
    pub fn coroot(&self, id: usize) -> &[i64] {
        &self.coroots[id]
    }

    /// Eigenvalue of `H_i` on `e_id`.
    pub fn pairing(&self, id: usize, i: usize) -> i64 {
        self.pairings[id][i]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn neg_of(&self, id: usize) -> usize {
        if id < self.npos {
            id + self.npos
        } else {
            id - self.npos
        }
    }

    pub fn bracket(&self, x: &GElement, y: &GElement) -> GElement {
        let mut out = GElement::zero(self.rank);
        for (&r, c) in &x.roots {
            for (&s, d) in &y.roots {
                if s == self.neg_of(r) {
                    for (h, &k) in out.h.iter_mut().zip(&self.coroots[r]) {
                        if k != 0 {
                            *h += c * d * q(k);
                        }
                    }
                } else if let Some(t) = self.sum(r, s) {
                    out.add_root(t, c * d * q(self.n(r, s)));
                }
            }
        }
        for (i, hx) in x.h.iter().enumerate().filter(|(_, h)| !h.is_zero()) {
            for (&s, d) in &y.roots {
                out.add_root(s, hx * d * q(self.pairing(s, i)));
            }
        }
        for (i, hy) in y.h.iter().enumerate().filter(|(_, h)| !h.is_zero()) {
            for (&r, c) in &x.roots {
                out.add_root(r, -(hy * c * q(self.pairing(r, i))));
            }
        }
        out
    }
}

/// An element of `g` in the basis `{e_r : r in roots} u {H_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GElement {
    pub roots: BTreeMap<usize, Q>,
    pub h: Vec<Q>,
}

impl GElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            roots: BTreeMap::new(),
            h: vec![Q::zero(); rank],
        }
    }

    pub fn root_vector(rank: usize, id: usize) -> Self {
        let mut g = Self::zero(rank);
        g.add_root(id, rational::one());
        g
    }

    pub fn cartan(h: Vec<Q>) -> Self {
        Self {
            roots: BTreeMap::new(),
            h,
        }
    }

    pub fn add_root(&mut self, id: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.roots.entry(id).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.roots.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.h.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GElement) -> GElement {
        let mut out = self.clone();
        for (&id, c) in &other.roots {
            out.add_root(id, c.clone());
        }
        for (a, b) in out.h.iter_mut().zip(&other.h) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, k: &Q) -> GElement {
        let mut out = GElement::zero(self.h.len());
        for (&id, c) in &self.roots {
            out.add_root(id, c * k);
        }
        out.h = self.h.iter().map(|x| x * k).collect();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn basis(rs: &RootSystem) -> Vec<GElement> {
        let n = rs.rank();
        let mut out: Vec<GElement> = (0..rs.roots().len()).map(|i| GElement::root_vector(n, i)).collect();
        for i in 0..n {
            let mut h = vec![Q::zero(); n];
            h[i] = q(1);
            out.push(GElement::cartan(h));
        }
        out
    }

    #[test]
    fn magnitudes_follow_root_strings() {
        for t in CartanType::all_simple_up_to(4).into_iter().chain(["E6".parse().unwrap()]) {
            let r = RootSystem::new(t.clone());
            let cb = r.chevalley();
            for a in 0..r.roots().len() {
                for b in 0..r.roots().len() {
                    let n = cb.n(a, b);
                    if r.sum_id(a, b).is_some() {
                        let p = r.string_below(r.root(a).coords(), r.root(b).coords());
                        assert_eq!(n.abs(), p + 1, "{t}: N({a},{b})");
                        assert_eq!(cb.n(b, a), -n);
                    } else {
                        assert_eq!(n, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.chevalley().n(0, 1).abs(), 1);
        let b2 = rs("B2");
        let a2id = b2.root_id(&[0, 1]).unwrap();
        let a12 = b2.root_id(&[1, 1]).unwrap();
        assert_eq!(b2.chevalley().n(a2id, a12).abs(), 2);
        assert_eq!(b2.chevalley().n(0, b2.root_id(&[1, 2]).unwrap()), 0);
    }

    #[test]
    fn jacobi_identity_exhaustive_rank_le_4() {
        for t in CartanType::all_simple_up_to(4).into_iter().chain(["A1xB2".parse().unwrap()]) {
            let r = RootSystem::new(t.clone());
            let cb = r.chevalley();
            let b = basis(&r);
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let xy = cb.bracket(&b[i], &b[j]);
                    for k in j + 1..b.len() {
                        let a = cb.bracket(&xy, &b[k]);
                        let yz = cb.bracket(&b[j], &b[k]);
                        let c = cb.bracket(&yz, &b[i]);
                        let zx = cb.bracket(&b[k], &b[i]);
                        let d = cb.bracket(&zx, &b[j]);
                        assert!(a.add(&c).add(&d).is_zero(), "{t}: Jacobi fails on ({i},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn simple_generators_bracket_to_coroots() {
        let r = rs("G2");
        let cb = r.chevalley();
        for i in 0..2 {
            let e = GElement::root_vector(2, i);
            let f = GElement::root_vector(2, r.neg_id(i));
            let mut h = vec![Q::zero(); 2];
            h[i] = q(1);
            assert_eq!(cb.bracket(&e, &f), GElement::cartan(h));
        }
    }
}
