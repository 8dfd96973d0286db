use farey_core::equi::{height, potential};
use farey_core::norm::build_c_leq;
use farey_core::sb::{
    ancestors, bounds, cf_to_vertex, cf_value, compare, continued_fraction, det, involution_star,
    involution_transpose, is_ancestor_or_self, meet, Ordering4, Relation,
};
use farey_core::{FareyPath, NormSpec, Rational, Sl2Word, Vertex};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Exponent blocks `a₀ ≥ 0, a₁.. ≥ 1`.
fn blocks() -> impl Strategy<Value = Vec<u32>> {
    (0u32..6, prop::collection::vec(1u32..6, 0..8)).prop_map(|(a0, rest)| {
        let mut v = vec![a0];
        v.extend(rest);
        v
    })
}

fn big(xs: &[u32]) -> Vec<BigUint> {
    xs.iter().map(|&a| BigUint::from(a)).collect()
}

fn vertex() -> impl Strategy<Value = Vertex> {
    blocks().prop_map(|b| cf_to_vertex(&big(&b)).unwrap())
}

fn ratio(v: &Vertex) -> Rational {
    Rational::new(BigInt::from(v.y().clone()), BigInt::from(v.x().clone()))
}

/// Euclid on `y/x`: the regular continued fraction `[q₀; q₁, …]` with the
/// last quotient ≥ 2 (or the single quotient 1 for the root).
fn euclid(v: &Vertex) -> Vec<BigUint> {
    let (mut a, mut b) = (v.y().clone(), v.x().clone());
    let mut out = vec![];
    while !b.is_zero() {
        out.push(&a / &b);
        let r = &a % &b;
        a = b;
        b = r;
    }
    out
}

proptest! {
    #[test]
    fn continued_fraction_round_trip(b in blocks()) {
        let v = cf_to_vertex(&big(&b)).unwrap();
        prop_assert_eq!(continued_fraction(&v).unwrap(), big(&b));
        prop_assert_eq!(cf_value(&big(&b)).unwrap(), ratio(&v));
    }

    #[test]
    fn blocks_agree_with_euclid(v in vertex()) {
        // The tree path a₀, …, a_ℓ and the regular continued fraction differ
        // only in the last quotient, which is one larger.
        let mut q = continued_fraction(&v).unwrap();
        *q.last_mut().unwrap() += 1u32;
        prop_assert_eq!(q, euclid(&v));
    }

    #[test]
    fn bounds_are_farey_neighbours(v in vertex()) {
        let (lo, hi) = bounds(&v).unwrap();
        prop_assert_eq!(lo.mediant(&hi), v.clone());
        prop_assert_eq!(det(&lo, &hi), BigInt::one());
        prop_assert!(lo.cmp_real(&v).is_lt() && v.cmp_real(&hi).is_lt());
        let w = Sl2Word::of_vertex(&v).unwrap();
        prop_assert_eq!(Sl2Word::from_rows(lo, hi).unwrap(), w);
    }

    #[test]
    fn involutions(v in vertex()) {
        let s = involution_star(&v).unwrap();
        prop_assert_eq!(involution_star(&s).unwrap(), v.clone());
        prop_assert_eq!(ratio(&s), Rational::one() / ratio(&v));
        let t = involution_transpose(&v).unwrap();
        prop_assert_eq!(involution_transpose(&t).unwrap(), v.clone());
        prop_assert_eq!(ancestors(&t).unwrap().len(), ancestors(&v).unwrap().len());
    }

    #[test]
    fn word_letters_and_action(a in vertex(), b in vertex()) {
        let (wa, wb) = (Sl2Word::of_vertex(&a).unwrap(), Sl2Word::of_vertex(&b).unwrap());
        let wab = wa.compose(&wb);
        let letters: Vec<_> = wa.letters().into_iter().chain(wb.letters()).collect();
        prop_assert_eq!(Sl2Word::from_letters(&letters), wab.clone());
        prop_assert_eq!(wab.act(&Vertex::root()), wb.act(&wa.act(&Vertex::root())));
    }

    #[test]
    fn tree_order_is_ancestry(a in vertex(), b in vertex()) {
        let chain = ancestors(&b).unwrap();
        let oracle = a == b || chain.contains(&a);
        prop_assert_eq!(is_ancestor_or_self(&a, &b).unwrap(), oracle);
        let rel = compare(&a, &b, Ordering4::Tree).unwrap();
        prop_assert_eq!(rel.is_le(), oracle);
        if rel == Relation::Less {
            // an ancestor is strictly lighter
            prop_assert!(a.l1() < b.l1());
        }
    }

    #[test]
    fn meet_is_deepest_common_ancestor(a in vertex(), b in vertex()) {
        let m = meet(&a, &b).unwrap();
        let mut ca = ancestors(&a).unwrap();
        ca.push(a.clone());
        let mut cb = ancestors(&b).unwrap();
        cb.push(b.clone());
        let deepest = ca.iter().filter(|v| cb.contains(v)).max_by_key(|v| v.l1()).unwrap();
        prop_assert_eq!(&m, deepest);
    }

    #[test]
    fn paths_from_mediant_insertions(choices in prop::collection::vec(0usize..1000, 0..40)) {
        let mut c = FareyPath::empty();
        for k in choices {
            c = c.insert_mediant(1 + k % c.degree());
        }
        for e in c.points().windows(2) {
            prop_assert_eq!(det(&e[0], &e[1]), BigInt::one());
        }
        let rebuilt = FareyPath::from_interior(c.interior().iter().cloned()).unwrap();
        prop_assert_eq!(rebuilt, c);
    }
}

#[test]
fn potential_is_the_gradient_of_height_on_c500() {
    let c = build_c_leq(&NormSpec::linear_int(1, 1).unwrap(), &Rational::from_integer(500.into()), 1 << 22).unwrap();
    let pts = c.path().points();
    let mut total = Rational::zero();
    for e in pts.windows(2) {
        let p = potential(&e[0], &e[1]).unwrap();
        assert_eq!(p, height(&e[1]) - height(&e[0]), "{} {}", e[0], e[1]);
        total += p;
    }
    assert_eq!(total, Rational::one());
}
