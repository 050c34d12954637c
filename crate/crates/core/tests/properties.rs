use nilcascade::cascade::{compute_cascade, lattice_membership};
use nilcascade::coadjoint::{coadjoint_action, isotropy_is_cascade_span, random_torus_point, Side};
use nilcascade::invariants::{
    extract_generators, highest_weight_vector_check, invariants_in_block, random_oracle_sample,
    verify_group_invariance,
};
use nilcascade::irrep::{build_irrep, weyl_dimension};
use nilcascade::lipswolf::{codegree, lambda_plus_star};
use nilcascade::rational::q;
use nilcascade::{ChevalleyBasis, NilPolynomial, NilVector, RootSystem, Weight};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

#[test]
fn a2_coadjoint_by_hand() {
    // [e_{a1}, e_{-theta}] = N e_{-a2} with |N| = 1; P keeps it
    let r = rs("A2");
    let e1 = nilcascade::chevalley::GElement::root_vector(2, 0);
    let v = NilVector::basis(Side::Minus, 2);
    let w = coadjoint_action(&r, &e1, &v).unwrap();
    assert_eq!(w.coeffs.len(), 1);
    let (&id, c) = w.coeffs.iter().next().unwrap();
    assert_eq!(id, 1);
    assert_eq!(nilcascade::rational::abs(c), q(1));
    // e_{a1} on e_{-a1} lands in h, which P discards
    assert!(coadjoint_action(&r, &e1, &NilVector::basis(Side::Minus, 0)).unwrap().is_zero());
}

#[test]
fn structure_constants_by_hand() {
    let r = rs("B2");
    let cb = ChevalleyBasis::compute(&r);
    // B2: alpha1 long, alpha2 short; |N(a2, a1+a2)| = 2
    let (a2, a12) = (r.root_id(&[0, 1]).unwrap(), r.root_id(&[1, 1]).unwrap());
    assert_eq!(cb.n(a2, a12).abs(), 2);
    assert_eq!(cb.n(a2, a12), -cb.n(a12, a2));
}

#[test]
fn g2_generators_and_highest_weights() {
    let r = rs("G2");
    let c = compute_cascade(&r);
    let g = extract_generators(&r, &c, 6).unwrap();
    assert_eq!(g.len(), 2);
    for gen in &g.generators {
        assert!(highest_weight_vector_check(&r, &gen.xi).unwrap());
        let b = lattice_membership(&r, &r.weight_of(&gen.weight), &c).unwrap();
        assert_eq!(b.iter().sum::<i64>(), gen.degree as i64);
    }
}

#[test]
fn b2_second_generator_by_hand() {
    // xi_{theta+alpha1} = e_{a1+a2}^2 + c e_{a1} e_{a1+2a2}, c = +-1
    let r = rs("B2");
    let xi = &invariants_in_block(&r, 2, &[2, 2]).basis[0];
    let a1 = r.root_id(&[1, 0]).unwrap();
    let a12 = r.root_id(&[1, 1]).unwrap();
    let th = r.root_id(&[1, 2]).unwrap();
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0; 4];
        for &(i, k) in pairs {
            e[i] = k;
        }
        e
    };
    assert_eq!(xi.terms().len(), 2);
    let c = &xi.terms()[&mono(&[(a1, 1), (th, 1)])];
    assert_eq!(nilcascade::rational::abs(c), q(1));
    assert_eq!(xi.terms()[&mono(&[(a12, 2)])], q(1));
}

fn small_type() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A2", "A3", "B2", "C3", "G2", "B3", "A1xA2"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lambda_plus_star_routes_agree(t in small_type(), raw in prop::collection::vec(0i64..4, 4)) {
        let r = rs(t);
        let c = compute_cascade(&r);
        let l = Weight::new(raw[..r.rank()].to_vec());
        let res = lambda_plus_star(&r, &l, &c).unwrap();
        prop_assert!(res.routes_agree);
        prop_assert!(res.coeffs.iter().all(|&b| b >= 0));
        prop_assert!(res.weight.is_dominant());
    }

    #[test]
    fn irrep_matches_weyl_formula(t in prop::sample::select(vec!["A2", "B2", "G2", "A3"]), raw in prop::collection::vec(0i64..3, 3)) {
        let r = rs(t);
        let l = Weight::new(raw[..r.rank()].to_vec());
        let d = weyl_dimension(&r, &l).unwrap();
        prop_assume!(d <= 80);
        let v = build_irrep(&r, &l).unwrap();
        prop_assert_eq!(v.dim() as u64, d);
        prop_assert!(v.verify(&r).passed());
    }

    #[test]
    fn codegree_is_cascade_degree(t in prop::sample::select(vec!["A2", "B2", "A3", "G2"]), raw in prop::collection::vec(0i64..2, 3)) {
        let r = rs(t);
        let c = compute_cascade(&r);
        let l = Weight::new(raw[..r.rank()].to_vec());
        prop_assume!(weyl_dimension(&r, &l).unwrap() <= 64);
        let v = build_irrep(&r, &l).unwrap();
        let k = lambda_plus_star(&r, &l, &c).unwrap().coeffs.iter().sum::<i64>();
        prop_assert_eq!(codegree(&r, &v).codegree, Some(k as usize));
    }

    #[test]
    fn isotropy_is_cascade_span_everywhere(t in small_type(), seed in any::<u64>()) {
        let r = rs(t);
        let c = compute_cascade(&r);
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let tau = random_torus_point(&mut g, c.m()).to_nil(&r, &c);
        prop_assert!(isotropy_is_cascade_span(&r, &c, &tau));
    }

    #[test]
    fn generators_are_group_invariant(t in prop::sample::select(vec!["A2", "A3", "B2", "G2"]), seed in any::<u64>()) {
        let r = rs(t);
        let c = compute_cascade(&r);
        let d = if t == "G2" { 6 } else { 2 };
        let gens = extract_generators(&r, &c, d).unwrap();
        let polys: Vec<&NilPolynomial> = gens.generators.iter().map(|g| &g.xi).collect();
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<_> = (0..4).map(|_| random_oracle_sample(&mut g, &r)).collect();
        prop_assert!(verify_group_invariance(&r, &polys, &samples).passed());
    }
}
