mod common;

use gf2sigma::verify::algebra;
use gf2sigma::Gf2Poly;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
    let bits = max_deg + 1;
    let words = bits.div_ceil(64);
    prop::collection::vec(any::<u64>(), 0..=words).prop_map(move |mut limbs| {
        if limbs.len() == words && bits % 64 != 0 {
            limbs[words - 1] &= (1u64 << (bits % 64)) - 1;
        }
        Gf2Poly::from_limbs(limbs)
    })
}

fn nonzero(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Equal-degree pairs where `t` copies a random-length top of `s`.
fn equal_degree_pair() -> impl Strategy<Value = (Gf2Poly, Gf2Poly)> {
    (1usize..400, any::<u64>(), 0usize..400).prop_map(|(d, seed, keep)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = algebra::random_of_degree(&mut rng, d);
        let mut t = algebra::random_of_degree(&mut rng, d);
        for l in 0..keep.min(d + 1) {
            if s.coeff(d - l) != t.coeff(d - l) {
                t.flip(d - l);
            }
        }
        (s, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn addition_is_an_involution(s in poly(512), t in poly(512)) {
        prop_assert_eq!(&(&s + &t) + &t, s);
    }

    #[test]
    fn product_degree_adds(s in nonzero(700), t in nonzero(700)) {
        prop_assert_eq!((&s * &t).degree(), Some(s.degree().unwrap() + t.degree().unwrap()));
    }

    #[test]
    fn square_matches_mul(s in poly(900)) {
        prop_assert_eq!(s.square(), &s * &s);
    }

    #[test]
    fn fast_mul_matches_schoolbook(s in poly(3000), t in poly(3000)) {
        prop_assert_eq!(&s * &t, s.mul_schoolbook(&t));
    }

    #[test]
    fn unbalanced_mul_matches_schoolbook(s in poly(4000), t in poly(200)) {
        prop_assert_eq!(&s * &t, s.mul_schoolbook(&t));
    }

    #[test]
    fn small_mul_matches_u64_oracle(a in any::<u32>(), b in any::<u32>()) {
        let got = &common::to_poly(a as u64) * &common::to_poly(b as u64);
        prop_assert_eq!(got, common::to_poly(common::mul(a as u64, b as u64) as u64));
    }

    #[test]
    fn divrem_reconstructs(s in poly(1500), t in nonzero(600)) {
        let (q, r) = s.divrem(&t).unwrap();
        prop_assert!(r.degree().is_none_or(|d| d < t.degree().unwrap()));
        prop_assert_eq!(&(&q * &t) + &r, s);
    }

    #[test]
    fn gcd_divides_both(s in nonzero(300), t in nonzero(300), c in nonzero(80)) {
        let (s, t) = (&s * &c, &t * &c);
        let g = s.gcd(&t);
        prop_assert!(g.divides(&s).unwrap() && g.divides(&t).unwrap());
        prop_assert!(c.divides(&g).unwrap());
    }

    #[test]
    fn sqrt_inverts_square(s in poly(800)) {
        prop_assert_eq!(s.square().sqrt().unwrap(), s);
    }

    #[test]
    fn text_and_hex_round_trip(s in poly(300)) {
        prop_assert_eq!(s.to_string().parse::<Gf2Poly>().unwrap(), s.clone());
        prop_assert_eq!(s.to_hex().parse::<Gf2Poly>().unwrap(), s);
    }

    #[test]
    fn substitution_is_involutive_homomorphism(s in poly(500), t in poly(500)) {
        prop_assert_eq!(s.subst_x_plus_1().subst_x_plus_1(), s.clone());
        prop_assert_eq!((&s * &t).subst_x_plus_1(), &s.subst_x_plus_1() * &t.subst_x_plus_1());
        prop_assert_eq!((&s + &t).subst_x_plus_1(), &s.subst_x_plus_1() + &t.subst_x_plus_1());
        prop_assert_eq!(s.subst_x_plus_1().degree(), s.degree());
    }

    #[test]
    fn substitution_matches_horner(s in poly(150)) {
        let x1 = Gf2Poly::from_u64(0b11);
        // Horner from the top: acc = acc * (x+1) + coeff.
        let mut acc = Gf2Poly::zero();
        if let Some(d) = s.degree() {
            for i in (0..=d).rev() {
                acc = &acc * &x1;
                if s.coeff(i) {
                    acc.flip(0);
                }
            }
        }
        prop_assert_eq!(s.subst_x_plus_1(), acc);
    }

    #[test]
    fn leibniz_rule(s in poly(600), t in poly(600)) {
        let lhs = (&s * &t).derivative();
        let rhs = &(&s.derivative() * &t) + &(&s * &t.derivative());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(s.square().derivative().is_zero());
    }

    #[test]
    fn equal_degree_sum_degree((s, t) in equal_degree_pair()) {
        prop_assume!(s != t);
        let d = s.degree().unwrap();
        let l = (0..=d).find(|&l| s.top_coeff(l).unwrap() != t.top_coeff(l).unwrap()).unwrap();
        prop_assert_eq!((&s + &t).degree(), Some(d - l));
    }

    #[test]
    fn unequal_degree_sum_coeffs(s in nonzero(400), t in nonzero(400)) {
        let (s, t) = if s.degree() > t.degree() { (s, t) } else { (t, s) };
        prop_assume!(s.degree() != t.degree());
        let k = s.degree().unwrap() - t.degree().unwrap();
        let sum = &s + &t;
        for l in 0..=s.degree().unwrap() {
            let a_s = s.top_coeff(l).unwrap();
            let want = if l < k { a_s } else { a_s ^ t.top_coeff(l - k).unwrap() };
            prop_assert_eq!(sum.top_coeff(l).unwrap(), want, "l = {}", l);
        }
    }

    #[test]
    fn equal_degree_sum_square_criterion((s, t) in equal_degree_pair()) {
        prop_assert_eq!(algebra::equal_degree_sum_square(&s, &t), Some(true));
    }

    #[test]
    fn monomial_sum_times_s(s in nonzero(300), exps in prop::collection::btree_set(0usize..300, 1..6)) {
        let exps: Vec<usize> = exps.into_iter().rev().collect();
        let r1 = exps[0];
        let prod = &Gf2Poly::from_exponents(&exps) * &s;
        let top = r1 + s.degree().unwrap();
        for l in 0..=top {
            // alpha of S read as 0 above its leading term
            let want = exps.iter().fold(false, |acc, &ri| {
                acc ^ l.checked_sub(r1 - ri).is_some_and(|j| s.top_coeff(j).unwrap())
            });
            prop_assert_eq!(prod.top_coeff(l).unwrap(), want, "l = {}", l);
        }
    }
}
