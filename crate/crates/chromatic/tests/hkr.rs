use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use chromatic::hkr::brute::{count_splittings, count_subspaces, VectorSpace};
use chromatic::hkr::charfn::{hom_inverse_weight, rational};
use chromatic::hkr::*;
use chromatic::numerics::{ChromaticParams, NkTable};

fn params() -> ChromaticParams {
    ChromaticParams::new(3, 1, 1, 4).unwrap()
}

fn ctx() -> RepContext {
    RepContext::new(&params(), 2, 5).unwrap()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// q-Pascal recurrence, independent of the library's Gaussian binomial.
fn q_pascal(m: u32, a: u32, q: u64) -> BigUint {
    if a == 0 || a == m {
        return BigUint::one();
    }
    if a > m {
        return BigUint::zero();
    }
    q_pascal(m - 1, a - 1, q) + big(q).pow(a) * q_pascal(m - 1, a, q)
}

#[test]
fn orbits_at_level_two() {
    let orbits = enumerate_orbits(&params(), 2).unwrap();
    let reps: Vec<(Vec<u64>, u64)> = orbits.iter().map(|o| (o.representative.clone(), o.size)).collect();
    assert_eq!(reps, vec![(vec![0], 1), (vec![1], 3), (vec![2], 3), (vec![3], 1), (vec![6], 1)]);
    assert_eq!(orbit_size_counts(&orbits, 3), vec![3, 2]);
}

#[test]
fn level_zero_has_one_orbit() {
    let orbits = enumerate_orbits(&params(), 0).unwrap();
    assert_eq!(orbits.len(), 1);
    assert!(orbits[0].is_zero());
}

#[test]
fn height_two_level_one_all_fixed() {
    let p = ChromaticParams::new(3, 2, 1, 4).unwrap();
    let orbits = enumerate_orbits(&p, 1).unwrap();
    assert_eq!(orbits.len(), 9);
    assert!(orbits.iter().all(|o| o.size == 1));
}

#[test]
fn orbit_counts_match_family_sizes() {
    for (p, n, r, q) in [(3, 1, 1, 4), (3, 1, 2, 19), (3, 2, 1, 4), (5, 1, 1, 11)] {
        let params = ChromaticParams::new(p, n, r, q).unwrap();
        let level = r + 2;
        let counts = orbit_size_counts(&enumerate_orbits(&params, level).unwrap(), p);
        let table = NkTable::new(params, 2).unwrap();
        for (k, &c) in counts.iter().enumerate().take((level - r + 1) as usize) {
            assert_eq!(Some(c), table.n_u64(k), "{:?} k={k}", (p, n, r, q));
        }
    }
}

#[test]
fn context_rejects_small_levels_and_large_classes() {
    assert!(matches!(RepContext::new(&params(), 1, 5), Err(HkrError::LevelTooSmall { needed: 2, .. })));
    let c = ctx();
    assert_eq!(c.classes.len(), 76);
    let too_big = c.trivial(6);
    assert!(matches!(CharFn::delta(&c, &too_big), Err(HkrError::OutOfDomain { dim: 6, .. })));
}

#[test]
fn hom_counts() {
    let c = ctx();
    let s = c.irreducible(c.find(&[1]).unwrap(), 1);
    let t = c.irreducible(c.find(&[2]).unwrap(), 1);
    assert_eq!(c.hom_count(&c.trivial(1), &c.trivial(1)), big(4));
    assert_eq!(c.hom_count(&s, &s), big(64));
    assert_eq!(c.hom_count(&s, &t), big(1));
}

#[test]
fn fix_values() {
    let c = ctx();
    let s = c.irreducible(c.find(&[1]).unwrap(), 1);
    let chi = c.irreducible(c.find(&[3]).unwrap(), 1);
    assert_eq!(c.fix_value(&c.trivial(3)), big(64));
    assert_eq!(c.fix_value(&s), big(1));
    assert_eq!(c.fix_value(&chi), big(1));
    assert_eq!(c.fix_value(&c.trivial(1).sum(&s)), big(4));
}

#[test]
fn decomposition_examples() {
    let c = ctx();
    let (t1, t2) = (c.trivial(1), c.trivial(2));
    assert_eq!(c.decomposition_count(&t2, &t1, &t1), big(20));
    assert_eq!(c.decomposition_count(&t2, &c.zero(), &t2), big(1));
    let big_ctx = RepContext::new(&params(), 2, 6).unwrap();
    let s = big_ctx.find(&[1]).unwrap();
    let (s1, s2) = (big_ctx.irreducible(s, 1), big_ctx.irreducible(s, 2));
    assert_eq!(big_ctx.decomposition_count(&s2, &s1, &s1), big(65 * 64));
    assert_eq!(q_pascal(2, 1, 64) * big(64), big(65 * 64));
}

#[test]
fn gaussian_counts_match_q_pascal() {
    let big_ctx = RepContext::new(&params(), 3, 9).unwrap();
    // at level 3 the element 3 has order 9, so its orbit has size 3
    let s = big_ctx.find(&[3]).unwrap();
    assert_eq!(big_ctx.irreducibles[s].size, 3);
    for m in 0..=3 {
        for a in 0..=m {
            let w = big_ctx.irreducible(s, m);
            let (x, y) = (big_ctx.irreducible(s, a), big_ctx.irreducible(s, m - a));
            assert_eq!(big_ctx.subrep_count(&w, &x, &y), q_pascal(m, a, 64));
        }
    }
}

#[test]
fn subrep_examples_and_relation() {
    let c = ctx();
    let (t1, t2) = (c.trivial(1), c.trivial(2));
    assert_eq!(c.subrep_count(&t2, &t1, &t1), big(5));
    assert_eq!(c.subrep_count(&t2, &t2, &c.zero()), big(1));
    for w in c.classes.iter().filter(|w| c.dim(w) <= 4) {
        for (a, b) in w.splittings() {
            assert_eq!(c.decomposition_count(w, &a, &b), c.subrep_count(w, &a, &b) * c.hom_count(&b, &a));
            assert_eq!(c.decomposition_count(w, &a, &b), c.decomposition_count(w, &b, &a));
        }
    }
}

#[test]
fn convolution_examples() {
    let c = ctx();
    let (t1, t2) = (c.trivial(1), c.trivial(2));
    let d1 = CharFn::delta(&c, &t1).unwrap();
    let conv = convolve(&c, &d1, &d1);
    assert_eq!(conv.get(&c, &t2).unwrap(), rat(20));
    let unit = CharFn::delta(&c, &c.zero()).unwrap();
    let f = CharFn::fix(&c);
    assert_eq!(convolve(&c, &unit, &f), f);
    let s = c.irreducible(c.find(&[1]).unwrap(), 1);
    let lhs = convolve(&c, &CharFn::chi(&c, &t1).unwrap(), &CharFn::chi(&c, &s).unwrap());
    assert_eq!(lhs, CharFn::chi(&c, &t1.sum(&s)).unwrap());
}

#[test]
fn hc_product_examples() {
    let c = ctx();
    let (t1, t2) = (c.trivial(1), c.trivial(2));
    let d1 = CharFn::delta(&c, &t1).unwrap();
    let hc = hc_product(&c, &d1, &d1);
    assert_eq!(hc.get(&c, &t2).unwrap(), rat(5));
    assert_eq!(hc.get(&c, &t2).unwrap(), rat(20) / rat(4));
    let twisted = twisted_convolve(&c, &d1, &d1, &hom_inverse_weight(&c)).unwrap();
    assert_eq!(twisted, hc);
    let unit = CharFn::delta(&c, &c.zero()).unwrap();
    let f = CharFn::fix(&c);
    assert_eq!(hc_product(&c, &unit, &f), f);
}

#[test]
fn non_biexponential_weight_rejected() {
    let c = ctx();
    let d1 = CharFn::delta(&c, &c.trivial(1)).unwrap();
    let w = |a: &RepClass, b: &RepClass| rat((c.dim(a) + c.dim(b)) as i64 + 1);
    assert!(matches!(twisted_convolve(&c, &d1, &d1, &w), Err(HkrError::NotBiexponential(_))));
}

#[test]
fn laws_on_all_classes_up_to_five() {
    let report = check_laws(&ctx()).unwrap();
    assert!(report.all_ok(), "{:?}", report.failures);
}

#[test]
fn coproduct_twist_examples() {
    let c = ctx();
    let d1 = CharFn::delta(&c, &c.trivial(1)).unwrap();
    let r = coproduct_twist_check(&c, &d1, &d1, 2).unwrap();
    assert!(r.holds && r.pairs_checked > 0);
    let unit = CharFn::delta(&c, &c.zero()).unwrap();
    let f = CharFn::fix(&c);
    assert!(coproduct_twist_check(&c, &unit, &f, 4).unwrap().holds);
}

#[test]
fn socle_character() {
    let c = ctx();
    let chi = c.irreducible(c.find(&[3]).unwrap(), 1);
    let s2 = socle_char(&c, 2);
    assert!(s2.get(&c, &c.trivial(1).sum(&chi)).unwrap().is_zero());
    assert_eq!(s2.get(&c, &c.trivial(2)).unwrap(), rat(180));
    assert_eq!(socle_char(&c, 0).get(&c, &c.zero()).unwrap(), rat(1));
    for d in 0..=3 {
        assert!(socle_char_check(&c, d));
    }
}

#[test]
fn brute_force_subspaces_match_gauss() {
    for q in [2u64, 3, 4] {
        for m in 0..=3u32 {
            if q.pow(m) > 64 {
                continue;
            }
            for a in 0..=m {
                let gauss = chromatic::numerics::gauss_binom(m, a, &big(q));
                assert_eq!(big(count_subspaces(q, m, a).unwrap() as u64), gauss, "Q={q} m={m} a={a}");
                let split = gauss * big(q).pow(a * (m - a));
                assert_eq!(big(count_splittings(q, m, a).unwrap() as u64), split);
            }
        }
    }
}

/// Realise a class built from the one-dimensional irreducibles as `F_4^m`
/// with a diagonal generator, and count invariant subspaces and splittings
/// by type.
#[test]
fn brute_force_mixed_representations() {
    let c = ctx();
    // the 1-dim irreducibles at level 2 are (0), (3), (6), acting by 1, w, w^2
    let eig = |rep: u64| match rep {
        0 => 1u64,
        3 => 2,
        _ => 3,
    };
    let ones: Vec<usize> = c.irreducibles.iter().enumerate().filter(|(_, o)| o.size == 1).map(|(i, _)| i).collect();
    for w in c.classes.iter().filter(|w| c.dim(w) <= 3 && c.dim(w) > 0) {
        if ones.iter().map(|&i| w.mult[i]).sum::<u32>() as u64 != c.dim(w) {
            continue;
        }
        let mut eigenvalues = Vec::new();
        for &i in &ones {
            for _ in 0..w.mult[i] {
                eigenvalues.push(eig(c.irreducibles[i].representative[0]));
            }
        }
        let space = VectorSpace::new(4, c.dim(w) as u32).unwrap();
        let type_of = |mask: u64| {
            let mut class = c.zero();
            for (lambda, d) in space.restricted_type(mask, &eigenvalues) {
                let i = ones.iter().copied().find(|&i| eig(c.irreducibles[i].representative[0]) == lambda).unwrap();
                class.mult[i] += d;
            }
            class
        };
        let mut total_splittings = 0usize;
        let mut expected_total = BigUint::zero();
        for (a, b) in w.splittings() {
            expected_total += c.decomposition_count(w, &a, &b);
            let subs: Vec<u64> = space
                .subspaces(c.dim(&a) as u32)
                .into_iter()
                .filter(|&u| space.is_invariant(u, &eigenvalues) && type_of(u) == a)
                .collect();
            assert_eq!(big(subs.len() as u64), c.subrep_count(w, &a, &b), "{}", c.format(w));
            let comps: Vec<u64> = space
                .subspaces(c.dim(&b) as u32)
                .into_iter()
                .filter(|&u| space.is_invariant(u, &eigenvalues) && type_of(u) == b)
                .collect();
            let pairs = subs.iter().flat_map(|&u| comps.iter().map(move |&v| (u, v))).filter(|(u, v)| u & v == 1).count();
            assert_eq!(big(pairs as u64), c.decomposition_count(w, &a, &b), "{}", c.format(w));
            total_splittings += pairs;
        }
        assert_eq!(big(total_splittings as u64), expected_total);
    }
}

fn small_fn(c: &RepContext, vals: &[i64]) -> CharFn {
    let small: Vec<&RepClass> = c.classes.iter().filter(|v| c.dim(v) <= 2).collect();
    let mut f = CharFn::zero(c);
    for (v, &x) in small.iter().zip(vals) {
        f.set((*v).clone(), rat(x));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_twist_on_random_functions(
        a in prop::collection::vec(-3i64..4, 10),
        b in prop::collection::vec(-3i64..4, 10),
    ) {
        let c = ctx();
        let (f, g) = (small_fn(&c, &a), small_fn(&c, &b));
        let r = coproduct_twist_check(&c, &f, &g, 4).unwrap();
        prop_assert!(r.holds, "{:?}", r.witness);
    }

    #[test]
    fn hom_and_fix_are_exponential(i in 0usize..76, j in 0usize..76, k in 0usize..76) {
        let c = ctx();
        let (u, v, w) = (&c.classes[i], &c.classes[j], &c.classes[k]);
        prop_assert_eq!(c.hom_count(u, v), c.hom_count(v, u));
        prop_assert_eq!(c.hom_count(&u.sum(v), w), c.hom_count(u, w) * c.hom_count(v, w));
        prop_assert_eq!(c.fix_value(&u.sum(v)), c.fix_value(u) * c.fix_value(v));
    }

    #[test]
    fn products_commute_pointwise_with_rational_scaling(
        a in prop::collection::vec(-3i64..4, 10),
        b in prop::collection::vec(-3i64..4, 10),
        num in 1i64..5, den in 1i64..5,
    ) {
        let c = ctx();
        let (f, g) = (small_fn(&c, &a), small_fn(&c, &b));
        let x = rat(num) / rat(den);
        prop_assert_eq!(convolve(&c, &f, &g), convolve(&c, &g, &f));
        prop_assert_eq!(hc_product(&c, &f.scale(&x), &g), hc_product(&c, &f, &g).scale(&x));
        prop_assert_eq!(
            twisted_convolve(&c, &f, &g, &hom_inverse_weight(&c)).unwrap(),
            hc_product(&c, &f, &g)
        );
        let _ = rational(BigUint::one());
    }
}
