//! Property tests for the exact polynomial ring.

use num_rational::BigRational;
use proptest::prelude::*;
use rdunkl::poly::{Monomial, MultiPoly};
use rdunkl::scalar::rat;

fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (
        proptest::collection::vec(0..=max_deg, nvars),
        -9i64..=9,
        1i64..=6,
    );
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |ts| {
        let mut p = MultiPoly::zero(nvars);
        for (exps, num, den) in ts {
            let d: u32 = exps.iter().sum();
            if d > max_deg {
                continue;
            }
            p.add_term(Monomial::new(exps), rat(num, den));
        }
        p
    })
}

proptest! {
    #[test]
    fn text_round_trip_is_identity(p in arb_poly(3, 4, 8)) {
        let text = p.to_text();
        let back = MultiPoly::parse(&text, 3).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn transposition_is_an_involution(p in arb_poly(3, 4, 8), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let twice = p
            .apply_transposition(i, j)
            .unwrap()
            .apply_transposition(i, j)
            .unwrap();
        prop_assert_eq!(p, twice);
    }

    #[test]
    fn divided_difference_reconstructs_input(p in arb_poly(3, 4, 8), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        // (x_i - x_j) * dd(p) + sigma_ij p = p, exactly.
        let dd = p.divided_difference(i, j).unwrap();
        let diff = MultiPoly::var(3, i)
            .checked_sub(&MultiPoly::var(3, j))
            .unwrap();
        let rebuilt = diff
            .checked_mul(&dd)
            .unwrap()
            .checked_add(&p.apply_transposition(i, j).unwrap())
            .unwrap();
        prop_assert_eq!(p, rebuilt);
    }

    #[test]
    fn divided_difference_drops_degree_by_one(p in arb_poly(3, 5, 8)) {
        prop_assume!(!p.is_zero());
        let deg = p.degree().unwrap();
        // Restrict to inputs whose top homogeneous component is not
        // symmetric under the transposition, where the drop is exactly one.
        let top = p.homogeneous_component(deg);
        prop_assume!(top.apply_transposition(0, 1).unwrap() != top);
        let dd = p.divided_difference(0, 1).unwrap();
        prop_assert_eq!(dd.degree(), Some(deg - 1));
    }

    #[test]
    fn add_is_commutative_and_mul_distributes(
        p in arb_poly(2, 3, 6),
        q in arb_poly(2, 3, 6),
        r in arb_poly(2, 3, 6),
    ) {
        prop_assert_eq!(p.checked_add(&q).unwrap(), q.checked_add(&p).unwrap());
        let lhs = p.checked_mul(&q.checked_add(&r).unwrap()).unwrap();
        let rhs = p
            .checked_mul(&q)
            .unwrap()
            .checked_add(&p.checked_mul(&r).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in arb_poly(2, 3, 6), q in arb_poly(2, 3, 6)) {
        let point = [rat(3, 2), rat(-1, 3)];
        let lhs = p.checked_mul(&q).unwrap().eval_rat(&point).unwrap();
        let rhs: BigRational =
            p.eval_rat(&point).unwrap() * q.eval_rat(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
