use std::collections::BTreeSet;

use num_traits::One;
use proptest::prelude::*;
use xlaguerre::exactnum::{
    complex_roots, rat, rat_int, sturm_nonneg_root_count, wronskian, wronskian_poly, Poly, Rat, RatFunc, ShiftedPoly,
    DEFAULT_ROOT_TOL,
};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 1..=max_degree + 1).prop_map(Poly::new)
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

fn shifted(max_degree: usize) -> impl Strategy<Value = ShiftedPoly> {
    (small_rat(), poly(max_degree)).prop_map(|(s, p)| ShiftedPoly::new(s, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wronskian_is_antisymmetric(f in shifted(4), g in shifted(4)) {
        let a = wronskian(&[f.clone(), g.clone()]);
        let b = wronskian(&[g, f]);
        prop_assert_eq!(a, b.scale(&-Rat::one()));
    }

    #[test]
    fn wronskian_matches_two_term_formula(f in poly(5), g in poly(5)) {
        let direct = &(&f * &g.derivative()) - &(&f.derivative() * &g);
        prop_assert_eq!(wronskian_poly(&[f, g]), direct);
    }

    #[test]
    fn wronskian_shift_law(f in shifted(3), g in shifted(3), h in shifted(3), a in small_rat()) {
        // W[z^a f_i] = z^{d a} W[f_i] for d functions
        let plain = wronskian(&[f.clone(), g.clone(), h.clone()]);
        let moved = wronskian(&[f.mul_z_pow(&a), g.mul_z_pow(&a), h.mul_z_pow(&a)]);
        prop_assert_eq!(moved, plain.mul_z_pow(&(a * rat_int(3))));
    }

    #[test]
    fn wronskian_ignores_row_operations(f in poly(4), g in poly(4), c in small_rat()) {
        let g2 = &g + &f.scale(&c);
        prop_assert_eq!(wronskian_poly(&[f.clone(), g2]), wronskian_poly(&[f, g]));
    }

    #[test]
    fn exact_division_inverts_product(a in poly(6), b in nonzero_poly(4)) {
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn div_rem_reconstructs(a in poly(7), b in nonzero_poly(4)) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn leibniz_rule(a in poly(5), b in poly(5)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratfunc_is_canonical(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        // common factors cancel and the representation is unique
        let x = RatFunc::new(&a * &c, &b * &c);
        let y = RatFunc::new(a.clone(), b.clone());
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(&x * &RatFunc::new(b, a), RatFunc::one());
    }

    #[test]
    fn sturm_count_matches_planted_roots(roots in prop::collection::btree_set((-12i64..=12, 1i64..=3), 1..=8)) {
        let distinct: BTreeSet<Rat> = roots.iter().map(|&(p, q)| rat(p, q)).collect();
        let p = distinct.iter().fold(Poly::one(), |acc, r| &acc * &Poly::new(vec![-r.clone(), Rat::one()]));
        let nonneg = distinct.iter().filter(|r| **r >= Rat::from_integer(0.into())).count();
        prop_assert_eq!(sturm_nonneg_root_count(&p), nonneg);
    }

    #[test]
    fn sturm_count_agrees_with_numeric_roots(p in nonzero_poly(8)) {
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        // only square-free inputs are compared; the gcd test is exact
        prop_assume!(p.gcd(&p.derivative()).degree() == Some(0));
        let Ok(roots) = complex_roots(&p, DEFAULT_ROOT_TOL) else { return Ok(()) };
        let near_axis = |z: &num_complex::Complex64| z.im.abs() < 1e-6;
        // skip cases where a numeric root sits too close to zero or the axis to classify
        prop_assume!(roots.iter().all(|z| z.re.abs() > 1e-6 && (near_axis(z) || z.im.abs() > 1e-4)));
        let numeric = roots.iter().filter(|z| near_axis(z) && z.re > 0.0).count();
        prop_assert_eq!(sturm_nonneg_root_count(&p), numeric);
    }
}
