//! The cascade of strongly orthogonal roots.
//!
//! Starting from the highest root of every simple component, each locally
//! high root `phi` spawns the highest roots of the components of
//! `{alpha in supp(phi) : (alpha, phi) = 0}`. The cascade is the set of all
//! roots reached this way.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::report::VerificationReport;
use crate::rootsys::{Root, RootSystem, Weight, WeylMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeNode {
    pub root: Root,
    pub parent: Option<usize>,
    pub support: BTreeSet<usize>,
    pub orthogonal_support: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cascade {
    type_name: String,
    nodes: Vec<CascadeNode>,
}

fn require_positive(rs: &RootSystem, phi: &Root) -> Result<()> {
    if phi.coords().len() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: phi.coords().len(),
        });
    }
    if !phi.is_positive() || !rs.is_root(phi.coords()) {
        return Err(Error::NotPositive(phi.coords().to_vec()));
    }
    Ok(())
}

/// `Pi(phi)`: the simple roots occurring in `phi`.
pub fn support(rs: &RootSystem, phi: &Root) -> Result<BTreeSet<usize>> {
    require_positive(rs, phi)?;
    let s = rs.support(phi.coords());
    assert_eq!(rs.components(&s).len(), 1, "support of a root is connected");
    Ok(s)
}

pub fn is_locally_high(rs: &RootSystem, phi: &Root) -> Result<bool> {
    let s = support(rs, phi)?;
    Ok(rs.highest_root_of(&s) == Some(phi))
}

/// `Pi(phi)^o = {alpha in Pi(phi) : (alpha, phi) = 0}`.
pub fn orthogonal_support(rs: &RootSystem, phi: &Root) -> Result<BTreeSet<usize>> {
    if !is_locally_high(rs, phi)? {
        return Err(Error::NotLocallyHigh(phi.coords().to_vec()));
    }
    Ok(rs
        .support(phi.coords())
        .into_iter()
        .filter(|&i| rs.inner_int(rs.simple_root(i).coords(), phi.coords()).is_zero())
        .collect())
}

/// Highest roots of the simple components of `Pi(phi)^o`, ordered by least simple index.
pub fn offspring(rs: &RootSystem, phi: &Root) -> Result<Vec<Root>> {
    let o = orthogonal_support(rs, phi)?;
    let kids: Vec<Root> = rs
        .components(&o)
        .iter()
        .map(|c| rs.highest_root_of(c).expect("nonempty component has a highest root").clone())
        .collect();
    for k in &kids {
        assert!(is_locally_high(rs, k)?, "offspring {k} of {phi} is locally high");
        assert!(rs.strongly_orthogonal(k.coords(), phi.coords()), "offspring {k} strongly orthogonal to {phi}");
    }
    Ok(kids)
}

pub fn compute_cascade(rs: &RootSystem) -> Cascade {
    compute_cascade_in_order(rs, false)
}

/// Breadth-first cascade; `reverse_siblings` processes components and
/// offspring in reverse order, which must give the same set of roots.
pub fn compute_cascade_in_order(rs: &RootSystem, reverse_siblings: bool) -> Cascade {
    let all: BTreeSet<usize> = (0..rs.rank()).collect();
    let mut tops: Vec<Root> = rs
        .components(&all)
        .iter()
        .map(|c| rs.highest_root_of(c).unwrap().clone())
        .collect();
    if reverse_siblings {
        tops.reverse();
    }
    let mut nodes: Vec<CascadeNode> = Vec::new();
    let mut queue: VecDeque<(Root, Option<usize>)> = tops.into_iter().map(|r| (r, None)).collect();
    while let Some((root, parent)) = queue.pop_front() {
        let support = rs.support(root.coords());
        let orthogonal_support = orthogonal_support(rs, &root).expect("cascade roots are locally high");
        let idx = nodes.len();
        let mut kids = offspring(rs, &root).unwrap();
        if reverse_siblings {
            kids.reverse();
        }
        queue.extend(kids.into_iter().map(|k| (k, Some(idx))));
        nodes.push(CascadeNode {
            root,
            parent,
            support,
            orthogonal_support,
        });
    }
    Cascade {
        type_name: rs.cartan_type().to_string(),
        nodes,
    }
}

#[derive(Serialize)]
struct CascadeJson<'a> {
    #[serde(rename = "type")]
    type_name: &'a str,
    m: usize,
    roots: Vec<&'a [i64]>,
    parents: Vec<Option<usize>>,
}

impl Cascade {
    pub fn nodes(&self) -> &[CascadeNode] {
        &self.nodes
    }

    pub fn m(&self) -> usize {
        self.nodes.len()
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.nodes.iter().map(|n| &n.root)
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.nodes[i].root
    }

    pub fn root_set(&self) -> BTreeSet<Root> {
        self.roots().cloned().collect()
    }

    pub fn position(&self, r: &Root) -> Option<usize> {
        self.nodes.iter().position(|n| &n.root == r)
    }

    /// Stable JSON: `{"type", "m", "roots", "parents"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CascadeJson {
            type_name: &self.type_name,
            m: self.m(),
            roots: self.nodes.iter().map(|n| n.root.coords()).collect(),
            parents: self.nodes.iter().map(|n| n.parent).collect(),
        })
        .expect("cascade serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("cascade of {} (m = {})\n", self.type_name, self.m());
        for (i, n) in self.nodes.iter().enumerate() {
            let parent = n.parent.map_or("-".to_string(), |p| p.to_string());
            out.push_str(&format!("  beta_{} = {}  parent {}\n", i + 1, n.root, parent));
        }
        out
    }

    /// `sum_i coeffs[i] * beta_i` in simple-root coordinates.
    pub fn combination(&self, coeffs: &[i64]) -> Vec<i64> {
        let n = self.nodes.first().map_or(0, |n| n.root.coords().len());
        let mut out = vec![0; n];
        for (c, node) in coeffs.iter().zip(&self.nodes) {
            for (o, r) in out.iter_mut().zip(node.root.coords()) {
                *o += c * r;
            }
        }
        out
    }

    /// Product of the cascade reflections, in cascade order.
    pub fn reflection_product(&self, rs: &RootSystem, reversed: bool) -> WeylMatrix {
        let mut order: Vec<&Root> = self.roots().collect();
        if reversed {
            order.reverse();
        }
        order
            .into_iter()
            .fold(WeylMatrix::identity(rs.rank()), |acc, b| acc.mul(&rs.reflection_matrix(b)))
    }
}

/// Coefficients `b` with `nu = sum b_beta beta`, or `None` when `nu` is not in
/// the cascade lattice. Uses orthogonality: `b_beta = (nu, beta) / (beta, beta)`.
pub fn lattice_membership(rs: &RootSystem, nu: &Weight, c: &Cascade) -> Option<Vec<i64>> {
    let coeffs: Vec<Q> = c
        .roots()
        .map(|b| rs.inner_product(nu, b).ok().map(|x| x / rs.inner_int(b.coords(), b.coords())))
        .collect::<Option<_>>()?;
    let ints: Vec<i64> = coeffs.iter().map(rational::to_i64).collect::<Option<_>>()?;
    let back = rs.weight_of(&c.combination(&ints));
    (&back == nu).then_some(ints)
}

/// Largest strongly orthogonal set of positive roots, by exhaustive branch and bound.
pub fn max_strongly_orthogonal_set(rs: &RootSystem) -> Vec<usize> {
    let n = rs.num_positive();
    let compat: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rs.strongly_orthogonal(rs.root(i).coords(), rs.root(j).coords()))
                .collect()
        })
        .collect();
    fn grow(compat: &[Vec<bool>], current: &mut Vec<usize>, cands: &[usize], best: &mut Vec<usize>) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        for (k, &v) in cands.iter().enumerate() {
            if current.len() + cands.len() - k <= best.len() {
                return;
            }
            let next: Vec<usize> = cands[k + 1..].iter().copied().filter(|&w| compat[v][w]).collect();
            current.push(v);
            grow(compat, current, &next, best);
            current.pop();
        }
    }
    let mut best = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    grow(&compat, &mut Vec::new(), &all, &mut best);
    best
}

/// Strong orthogonality, maximality, and `w0 = s_{beta_1} ... s_{beta_m}`.
pub fn verify_cascade(rs: &RootSystem) -> VerificationReport {
    let c = compute_cascade(rs);
    let mut report = VerificationReport::new();

    let mut bad = Vec::new();
    for (i, a) in c.roots().enumerate() {
        for b in c.roots().skip(i + 1) {
            let orth = rs.inner_int(a.coords(), b.coords()).is_zero();
            if !rs.strongly_orthogonal(a.coords(), b.coords()) || !orth {
                bad.push(json!([a.coords(), b.coords()]));
            }
        }
    }
    report.expect_none("strongly_orthogonal", format!("{} cascade roots pairwise", c.m()), bad);

    let members = c.root_set();
    let extra: Vec<_> = rs
        .positive_roots()
        .iter()
        .filter(|r| !members.contains(*r))
        .filter(|r| c.roots().all(|b| rs.strongly_orthogonal(r.coords(), b.coords())))
        .map(|r| json!(r.coords()))
        .collect();
    report.expect_none("maximal", "no positive root outside the cascade is strongly orthogonal to all of it", extra);

    let w0 = rs.longest_element();
    let forward = c.reflection_product(rs, false);
    let backward = c.reflection_product(rs, true);
    let mut w = Vec::new();
    if forward != w0 {
        w.push(json!({"product": forward.rows(), "w0": w0.rows()}));
    }
    if backward != w0 {
        w.push(json!({"reversed_product": backward.rows(), "w0": w0.rows()}));
    }
    report.expect_none("longest_element", "product of cascade reflections equals w0 (both orders)", w);

    let pos_ok = (0..rs.num_positive()).all(|i| !w0.apply(rs.root(i).coords()).iter().any(|&x| x > 0));
    report.check("w0_negates_positive", pos_ok && w0.mul(&w0) == WeylMatrix::identity(rs.rank()), "w0 maps positive roots to negative roots and is an involution");

    if rs.rank() <= 4 {
        let best = max_strongly_orthogonal_set(rs);
        let w = if best.len() > c.m() {
            vec![json!(best.iter().map(|&i| rs.root(i).coords()).collect::<Vec<_>>())]
        } else {
            Vec::new()
        };
        report.expect_none("maximum_cardinality", format!("largest strongly orthogonal set has {} roots, m = {}", best.len(), c.m()), w);
    } else {
        report.skip("maximum_cardinality", "exhaustive search only at rank <= 4");
    }
    report
}

/// Whether every positive root is locally high (type A only).
pub fn all_locally_high(rs: &RootSystem) -> bool {
    rs.positive_roots().iter().all(|r| is_locally_high(rs, r).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Family};

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn r(v: &[i64]) -> Root {
        serde_json::from_value(json!(v)).unwrap()
    }

    #[test]
    fn supports() {
        assert_eq!(support(&rs("A2"), &r(&[1, 1])).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(support(&rs("A3"), &r(&[0, 1, 0])).unwrap(), BTreeSet::from([1]));
        assert_eq!(support(&rs("B2"), &r(&[1, 2])).unwrap(), BTreeSet::from([0, 1]));
        assert!(matches!(support(&rs("A2"), &r(&[-1, 0])), Err(Error::NotPositive(_))));
    }

    #[test]
    fn locally_high() {
        let b2 = rs("B2");
        assert!(!is_locally_high(&b2, &r(&[1, 1])).unwrap());
        assert!(is_locally_high(&b2, &r(&[1, 2])).unwrap());
        for t in CartanType::all_simple_up_to(8) {
            let s = RootSystem::new(t.clone());
            for i in 0..s.rank() {
                assert!(is_locally_high(&s, s.simple_root(i)).unwrap());
            }
            let family = t.factors()[0].family;
            assert_eq!(all_locally_high(&s), family == Family::A, "{t}");
        }
        assert!(matches!(orthogonal_support(&b2, &r(&[1, 1])), Err(Error::NotLocallyHigh(_))));
    }

    #[test]
    fn orthogonal_supports_and_offspring() {
        assert!(orthogonal_support(&rs("A2"), &r(&[1, 1])).unwrap().is_empty());
        assert_eq!(orthogonal_support(&rs("A3"), &r(&[1, 1, 1])).unwrap(), BTreeSet::from([1]));
        assert_eq!(orthogonal_support(&rs("B2"), &r(&[1, 2])).unwrap(), BTreeSet::from([0]));
        assert!(offspring(&rs("A2"), &r(&[1, 1])).unwrap().is_empty());
        assert_eq!(offspring(&rs("A3"), &r(&[1, 1, 1])).unwrap(), vec![r(&[0, 1, 0])]);
        assert_eq!(offspring(&rs("B2"), &r(&[1, 2])).unwrap(), vec![r(&[1, 0])]);
    }

    #[test]
    fn cascades() {
        let roots = |t: &str| compute_cascade(&rs(t)).roots().map(|x| x.coords().to_vec()).collect::<Vec<_>>();
        assert_eq!(roots("A2"), vec![vec![1, 1]]);
        assert_eq!(roots("B2"), vec![vec![1, 2], vec![1, 0]]);
        assert_eq!(roots("A3"), vec![vec![1, 1, 1], vec![0, 1, 0]]);
        assert_eq!(roots("G2"), vec![vec![3, 2], vec![1, 0]]);
        assert_eq!(roots("A1xA1"), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(compute_cascade(&rs("D4")).m(), 4);
        assert_eq!(compute_cascade(&rs("E8")).m(), 8);
        assert_eq!(compute_cascade(&rs("E6")).m(), 4);
        assert_eq!(compute_cascade(&rs("A7")).m(), 4);
    }

    #[test]
    fn cascade_json() {
        assert_eq!(
            compute_cascade(&rs("B2")).to_json(),
            r#"{"type":"B2","m":2,"roots":[[1,2],[1,0]],"parents":[null,0]}"#
        );
    }

    #[test]
    fn sibling_order_does_not_matter() {
        for t in CartanType::all_simple_up_to(8) {
            let s = RootSystem::new(t);
            assert_eq!(compute_cascade(&s).root_set(), compute_cascade_in_order(&s, true).root_set());
        }
    }

    #[test]
    fn node_invariants() {
        for t in CartanType::all_simple_up_to(7) {
            let s = RootSystem::new(t);
            let c = compute_cascade(&s);
            for n in c.nodes() {
                assert_eq!(s.components(&n.support).len(), 1);
                assert!(n.orthogonal_support.is_subset(&n.support));
                if let Some(p) = n.parent {
                    let parent = &c.nodes()[p];
                    let comps = s.components(&parent.orthogonal_support);
                    assert!(comps.iter().any(|comp| s.highest_root_of(comp) == Some(&n.root)));
                }
            }
        }
    }

    #[test]
    fn lattice() {
        let b2 = rs("B2");
        let c = compute_cascade(&b2);
        assert_eq!(lattice_membership(&b2, &b2.fundamental_weight(0).scale(2), &c), Some(vec![1, 1]));
        let a2 = rs("A2");
        let ca = compute_cascade(&a2);
        assert_eq!(lattice_membership(&a2, &a2.fundamental_weight(0), &ca), None);
        let f4 = rs("F4");
        let cf = compute_cascade(&f4);
        for (i, b) in cf.roots().enumerate() {
            let mut unit = vec![0; cf.m()];
            unit[i] = 1;
            assert_eq!(lattice_membership(&f4, &f4.weight_of(b.coords()), &cf), Some(unit));
        }
    }

    #[test]
    fn cascade_checks_small_cases() {
        for t in ["A2", "B2", "G2", "A1xA1", "A1xG2"] {
            let report = verify_cascade(&rs(t));
            assert!(report.passed(), "{t}: {report:?}");
        }
        assert!(compute_cascade(&rs("B2")).reflection_product(&rs("B2"), false).is_minus_identity());
    }
}
