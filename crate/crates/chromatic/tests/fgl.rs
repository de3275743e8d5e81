use chromatic::algebra::{CoeffRing, ModPrimePower, Rationals, TruncatedSeries};
use chromatic::fgl::{check_axioms, eval_bivariate, predicted_wdegree, support_congruent, FglContext, FglMode};
use chromatic::numerics::vp_u64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn height_one_log_is_sum_of_p_power_terms() {
    let ctx = FglContext::new(3, 1, 40, FglMode::RationalWithU).unwrap();
    let log = ctx.log_u0();
    for i in 0..40 {
        let expected = match i {
            1 => q(1, 1),
            3 => q(1, 3),
            9 => q(1, 9),
            27 => q(1, 27),
            _ => BigRational::zero(),
        };
        assert_eq!(log.coeff(i), expected, "coefficient {i}");
    }
}

#[test]
fn log_satisfies_its_functional_equation_with_u() {
    // Substitute u_i x^{p^i} directly into the computed series.
    let (p, n, m) = (2u64, 3u32, 24usize);
    let ctx = FglContext::new(p, n, m, FglMode::RationalWithU).unwrap();
    let ring = ctx.u_ring().clone();
    let log = ctx.log_series();
    let mut rhs = TruncatedSeries::x(ring.clone(), m);
    let inv_p = ring.constant(q(1, p as i64));
    for i in 1..=n as usize {
        let ui = if i == n as usize { ring.one() } else { ring.var(i - 1) };
        let inner = TruncatedSeries::monomial(ring.clone(), p.pow(i as u32) as usize, m).scale(&ui);
        rhs = rhs.add(&log.compose(&inner).unwrap().scale(&inv_p));
    }
    assert_eq!(&rhs, log);
    assert!(!ring.truncation_occurred());
}

#[test]
fn log_coefficient_sample_with_u() {
    // p = 2, n = 2: l_2 = u_1/2, l_4 = (u_1^3/2 + 1)/2.
    let ctx = FglContext::new(2, 2, 8, FglMode::RationalWithU).unwrap();
    let ring = ctx.u_ring().clone();
    let u = ring.var(0);
    let log = ctx.log_series();
    assert_eq!(log.coeff(2), ring.scale(&u, &q(1, 2)));
    let l4 = ring.add(&ring.scale(&ring.pow(&u, 3), &q(1, 4)), &ring.constant(q(1, 2)));
    assert_eq!(log.coeff(4), l4);
    assert!(ring.is_zero(&log.coeff(3)));
}

#[test]
fn exp_inverts_log() {
    let ctx = FglContext::new(2, 2, 20, FglMode::RationalWithU).unwrap();
    let log = ctx.log_series();
    let exp = ctx.exp_series().unwrap();
    let x = TruncatedSeries::x(ctx.u_ring().clone(), 20);
    assert_eq!(log.compose(exp).unwrap(), x);
    assert_eq!(exp.compose(log).unwrap(), x);
}

#[test]
fn rational_sum_is_a_group_law() {
    let ctx = FglContext::new(2, 2, 9, FglMode::RationalWithU).unwrap();
    let sum = ctx.sum_rational().unwrap();
    let report = check_axioms(&sum, 2);
    assert!(report.unit && report.commutative && report.associative, "{report:?}");
}

#[test]
fn reduced_sum_is_a_group_law_with_support_congruence() {
    for (p, n) in [(3u64, 1u32), (2, 2), (3, 2), (5, 1)] {
        let ctx = FglContext::new(p, n, 22, FglMode::ModP).unwrap();
        let sum = ctx.sum_reduced().unwrap();
        let report = check_axioms(&sum, p);
        assert!(report.all_required(), "p={p} n={n}: {report:?}");
    }
}

#[test]
fn reduced_sum_modulo_prime_power_is_a_group_law() {
    let ctx = FglContext::new(3, 1, 20, FglMode::ModPPower(4)).unwrap();
    let sum = ctx.sum_reduced().unwrap();
    assert!(check_axioms(&sum, 3).all_required());
}

#[test]
fn weierstrass_degree_of_q_power_minus_one() {
    // p = 3, n = 1, q = 4: wdegree [q^j - 1] = 3^{1 + v_3(j)}.
    let params = chromatic::numerics::ChromaticParams::new(3, 1, 1, 4).unwrap();
    let m = FglContext::default_order(&params, 2);
    let ctx = FglContext::new(3, 1, m, FglMode::ModP).unwrap();
    for j in 1..=9u32 {
        let mult = 4i64.pow(j) - 1;
        let w = ctx.m_series(mult).unwrap().wdegree;
        let expected = 3usize.pow(1 + vp_u64(j as u64, 3).unwrap());
        assert_eq!(w, Some(expected), "j = {j}");
    }
}

#[test]
fn weierstrass_degree_height_two() {
    let ctx = FglContext::new(2, 2, 70, FglMode::ModP).unwrap();
    for m in 1..=12u64 {
        let w = ctx.m_series(m as i64).unwrap().wdegree;
        assert_eq!(w.map(|x| x as u64), predicted_wdegree(2, 2, m), "m = {m}");
    }
}

#[test]
fn divided_p_series_mod_p_is_a_monomial() {
    let ctx = FglContext::new(3, 1, 60, FglMode::ModP).unwrap();
    let (angle, _) = ctx.divided_p_series(1, 1).unwrap();
    let ring = angle.series.ring;
    let expected = TruncatedSeries::monomial(ring, 2, angle.series.order());
    assert_eq!(angle.series, expected);
}

#[test]
fn f_k_has_expected_weierstrass_degree_and_constant_term() {
    // (p, n, r) = (3, 1, 1), k = 1, coefficients mod 3^6.
    let ctx = FglContext::new(3, 1, 40, FglMode::ModPPower(6)).unwrap();
    let (_, f1) = ctx.divided_p_series(1, 1).unwrap();
    assert_eq!(f1.wdegree, Some(6));
    let c0 = f1.series.coeff(0);
    assert_eq!(c0 % 9, 3);
    let ctx = FglContext::new(3, 1, 60, FglMode::ModPPower(4)).unwrap();
    let (_, f2) = ctx.divided_p_series(1, 2).unwrap();
    assert_eq!(f2.wdegree, Some(18));
    assert_eq!(f2.series.coeff(0) % 9, 3);
}

#[test]
fn reduction_of_non_integral_series_fails() {
    let ctx = FglContext::new(3, 1, 10, FglMode::ModP).unwrap();
    assert!(ctx.reduce(ctx.log_u0()).is_err());
}

#[test]
fn m_series_is_a_homomorphism() {
    let ctx = FglContext::new(3, 1, 30, FglMode::ModPPower(3)).unwrap();
    let sum = ctx.sum_reduced().unwrap();
    for (a, b) in [(2i64, 5i64), (1, 1), (4, -1), (3, 7)] {
        let sa = ctx.m_series(a).unwrap().series;
        let sb = ctx.m_series(b).unwrap().series;
        let lhs = eval_bivariate::<ModPrimePower>(&sum.poly, &sa, &sb);
        assert_eq!(lhs, ctx.m_series(a + b).unwrap().series, "[{a}] + [{b}]");
        assert_eq!(sa.compose(&sb).unwrap(), ctx.m_series(a * b).unwrap().series, "[{a}][{b}]");
    }
}

#[test]
fn m_series_rational_matches_specialization() {
    let ctx = FglContext::new(2, 2, 12, FglMode::RationalWithU).unwrap();
    let with_u = ctx.m_series_rational(3).unwrap();
    let at_zero = chromatic::fgl::specialize_u0(&with_u);
    assert_eq!(at_zero, ctx.m_series_u0(3).unwrap());
    let one = ctx.m_series_u0(1).unwrap();
    assert_eq!(one, TruncatedSeries::x(Rationals, 12));
    assert!(ctx.m_series(2).is_err());
    assert!(BigRational::one() == one.coeff(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn m_series_support_congruence(p in prop::sample::select(vec![2u64, 3, 5]), n in 1u32..=2, m in -20i64..40) {
        let ctx = FglContext::new(p, n, 40, FglMode::ModP).unwrap();
        let s = ctx.m_series(m).unwrap();
        prop_assert!(support_congruent(&s.series, p));
        if m != 0 {
            let expected = predicted_wdegree(p, n, m.unsigned_abs()).filter(|&w| w < 40);
            prop_assert_eq!(s.wdegree.map(|x| x as u64), expected);
        }
    }
}
