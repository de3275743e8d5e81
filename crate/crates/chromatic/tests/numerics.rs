use chromatic::numerics::{
    block_index_valuation, digit_sum, gauss_binom, gl_order, poincare_series, vp, vp_u64, ChromaticParams, NkTable,
    NumericsError,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use std::collections::HashSet;

fn params(p: u64, n: u32, r: u32, q: u64) -> ChromaticParams {
    ChromaticParams::new(p, n, r, q).unwrap()
}

/// Valid parameter sets with a field size small enough for brute checks.
const VALID: [(u64, u32, u32, u64); 6] =
    [(3, 1, 1, 4), (3, 2, 1, 4), (3, 1, 1, 7), (3, 1, 2, 19), (5, 1, 1, 11), (7, 1, 1, 8)];

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

// -- valuations --------------------------------------------------------------

#[test]
fn valuation_examples() {
    assert_eq!(vp(&BigInt::from(63), 3).unwrap(), 2);
    assert_eq!(vp(&BigInt::from(1), 5).unwrap(), 0);
    assert_eq!(vp(&BigInt::from(4i64.pow(3) - 1), 3).unwrap(), 2);
    assert_eq!(vp(&BigInt::from(-27), 3).unwrap(), 3);
    assert!(matches!(vp(&BigInt::from(0), 3), Err(NumericsError::ZeroValuation)));
    assert!(vp_u64(0, 5).is_err());
}

#[test]
fn valuation_by_trial_division() {
    for m in 1u64..2000 {
        for p in [3u64, 5, 7] {
            let mut e = 0;
            let mut x = m;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            assert_eq!(vp_u64(m, p).unwrap(), e);
        }
    }
}

// -- group orders --------------------------------------------------------------

/// Count invertible `d x d` matrices over `F_p` directly, for `d <= 3`.
fn brute_gl(p: u64, d: usize) -> u64 {
    let cells = d * d;
    let total = p.pow(cells as u32);
    let mut count = 0;
    for code in 0..total {
        let mut m = vec![vec![0i64; d]; d];
        let mut c = code;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = (c % p) as i64;
                c /= p;
            }
        }
        let det = match d {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            3 => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
            _ => unreachable!(),
        };
        if det.rem_euclid(p as i64) != 0 {
            count += 1;
        }
    }
    count
}

#[test]
fn group_order_examples() {
    assert_eq!(gl_order(&big(4), 1), big(3));
    let g3 = gl_order(&big(4), 3);
    assert_eq!(g3, big(63 * 60 * 48));
    assert_eq!(g3, big(181440));
    assert_eq!(vp(&BigInt::from(g3), 3).unwrap(), 4);
    for q in [2u64, 4, 7, 19] {
        assert_eq!(gl_order(&big(q), 0), big(1));
    }
}

#[test]
fn group_order_matches_matrix_count() {
    for (p, d) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)] {
        assert_eq!(gl_order(&big(p), d as u32), big(brute_gl(p, d)), "GL_{d}(F_{p})");
    }
}

// -- parameters ------------------------------------------------------------------

#[test]
fn parameter_validation() {
    for (p, n, r, q) in VALID {
        assert!(ChromaticParams::new(p, n, r, q).is_ok());
    }
    assert!(matches!(ChromaticParams::new(2, 1, 1, 3), Err(NumericsError::BadPrime(2))));
    assert!(matches!(ChromaticParams::new(9, 1, 1, 10), Err(NumericsError::BadPrime(9))));
    assert!(matches!(ChromaticParams::new(3, 0, 1, 4), Err(NumericsError::BadHeight)));
    assert!(matches!(ChromaticParams::new(3, 1, 0, 4), Err(NumericsError::BadR)));
    assert!(matches!(ChromaticParams::new(3, 1, 1, 10), Err(NumericsError::NotPrimePower(10))));
    assert!(matches!(ChromaticParams::new(3, 1, 1, 9), Err(NumericsError::QDivisibleByP { .. })));
    assert!(matches!(ChromaticParams::new(3, 1, 1, 5), Err(NumericsError::WrongR { actual: 0, .. })));
    assert!(matches!(ChromaticParams::new(3, 1, 1, 19), Err(NumericsError::WrongR { actual: 2, .. })));
}

// -- the N-table ---------------------------------------------------------------------

#[test]
fn nk_table_examples() {
    let t = NkTable::new(params(3, 1, 1, 4), 4).unwrap();
    let ints = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    assert_eq!(ints(&t.n), ["3", "2", "2", "2", "2"]);
    assert_eq!(ints(&t.nbar), ["3", "5", "7", "9", "11"]);
    assert_eq!(t.nstar[1], BigInt::from(2));
    // identity (B) at k = 1: 3 + 3 * 2 = 9 = 3^2
    assert_eq!(&t.n[0] + BigInt::from(3) * &t.n[1], BigInt::from(9));

    let t = NkTable::new(params(3, 2, 1, 4), 2).unwrap();
    assert_eq!(t.n[0], BigInt::from(9));
    assert_eq!(t.n[1], BigInt::from(24));
    assert_eq!(t.kmax(), 2);
}

#[test]
fn nk_table_large_levels_do_not_overflow() {
    let t = NkTable::new(params(5, 3, 2, 101), 40).unwrap();
    assert!(t.n[40] > BigInt::from(u128::MAX));
    assert!(t.identities_at(40).iter().all(|&b| b));
}

fn pw(p: u64, e: u64) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

/// Identities (A) to (E) evaluated from the stored sequences.
fn identities_hold(t: &NkTable, k: usize) -> bool {
    let ChromaticParams { p, n, r, .. } = t.params;
    let (n, r, ku) = (n as u64, r as u64, k as u64);
    let pk = pw(p, ku);
    let a = if k == 0 {
        t.n[0] == pw(p, n * r)
    } else {
        &pk * &t.n[k] == pw(p, n * (r + ku)) - pw(p, n * (r + ku - 1))
    };
    let b = (0..=k).map(|j| pw(p, j as u64) * &t.n[j]).sum::<BigInt>() == pw(p, n * (r + ku));
    let c = &pk * (&t.nbar[k] - &t.nstar[k]) == pw(p, n * (ku + r));
    let nbar: BigInt = t.n[..=k].iter().sum();
    let partial = nbar == t.nbar[k];
    if k + 1 > t.kmax() {
        return a && b && c && partial;
    }
    let pk1 = pw(p, ku + 1);
    let d = &pk1 * (&t.nbar[k] - &t.nstar[k + 1]) == pw(p, n * (ku + r));
    let e = &pk1 * &t.nstar[k + 1] == BigInt::from(p - 1) * &pk * &t.nbar[k] + &pk * &t.nstar[k];
    a && b && c && d && e && partial
}

// -- Poincare series -----------------------------------------------------------------

/// Expand `prod (1 - t^s)^{-m}` by repeated strided prefix sums.
fn expand_product(factors: &[(usize, u64)], tmax: usize) -> Vec<u128> {
    let mut c = vec![0u128; tmax + 1];
    c[0] = 1;
    for &(step, mult) in factors {
        for _ in 0..mult {
            for i in step..=tmax {
                c[i] += c[i - step];
            }
        }
    }
    c
}

fn as_u128(v: &[BigUint]) -> Vec<u128> {
    v.iter().map(|x| u128::try_from(x.clone()).unwrap()).collect()
}

#[test]
fn poincare_series_examples() {
    let ps = poincare_series(&params(3, 1, 1, 4), 4);
    assert_eq!(as_u128(&ps), [1, 3, 6, 12, 21]);
    assert_eq!(as_u128(&ps), expand_product(&[(1, 3), (3, 2)], 4));
    let ps = poincare_series(&params(3, 2, 1, 4), 3);
    assert_eq!(as_u128(&ps), [1, 9, 45, 189]);
    assert_eq!(as_u128(&ps), expand_product(&[(1, 9), (3, 24)], 3));
    assert_eq!(poincare_series(&params(5, 1, 1, 11), 1)[0], big(1));
}

#[test]
fn poincare_series_against_expansion() {
    for (p, n, r, q) in VALID {
        let pr = params(p, n, r, q);
        let tmax = 30;
        let t = NkTable::new(pr, 4).unwrap();
        let factors: Vec<(usize, u64)> = (0..=4)
            .map(|k| (p.pow(k) as usize, t.n_u64(k as usize).unwrap()))
            .filter(|&(s, _)| s <= tmax)
            .collect();
        assert_eq!(as_u128(&poincare_series(&pr, tmax)), expand_product(&factors, tmax), "{pr:?}");
    }
}

// -- Gaussian binomials ----------------------------------------------------------------

#[test]
fn gauss_binomial_examples() {
    assert_eq!(gauss_binom(2, 1, &big(4)), big(5));
    assert_eq!(gauss_binom(3, 1, &big(2)), big(7));
    for m in 0..6 {
        for q in [2, 3, 4, 5] {
            assert_eq!(gauss_binom(m, 0, &big(q)), big(1));
            assert_eq!(gauss_binom(m, m + 1, &big(q)), big(0));
        }
    }
}

/// Addition and multiplication of `F_Q` on labels `0..Q`, for `Q` in {2, 3, 4}.
struct TinyField {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl TinyField {
    fn new(q: usize) -> Self {
        let (add, mul) = if q == 4 {
            // labels are polynomials b0 + b1 w over F_2 with w^2 = w + 1
            let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            let mul = (0..4)
                .map(|a: usize| {
                    (0..4)
                        .map(|b: usize| {
                            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                            let c0 = (a0 * b0 + a1 * b1) % 2;
                            let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
                            c0 | (c1 << 1)
                        })
                        .collect()
                })
                .collect();
            (add, mul)
        } else {
            let add = (0..q).map(|a| (0..q).map(|b| (a + b) % q).collect()).collect();
            let mul = (0..q).map(|a| (0..q).map(|b| (a * b) % q).collect()).collect();
            (add, mul)
        };
        Self { q, add, mul }
    }

    fn add_vec(&self, u: &[usize], v: &[usize]) -> Vec<usize> {
        u.iter().zip(v).map(|(&a, &b)| self.add[a][b]).collect()
    }

    fn scale(&self, c: usize, v: &[usize]) -> Vec<usize> {
        v.iter().map(|&a| self.mul[c][a]).collect()
    }

    fn all_vectors(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..m {
            out = out.into_iter().flat_map(|v| (0..self.q).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }

    /// Number of subspaces of `F_Q^m` of each dimension `0..=m`, built up
    /// one vector at a time.
    fn count_subspaces(&self, m: usize) -> Vec<u64> {
        let vectors = self.all_vectors(m);
        let mut layer: HashSet<Vec<Vec<usize>>> = HashSet::from([vec![vec![0; m]]]);
        let mut counts = vec![1u64];
        for _ in 0..m {
            let mut next = HashSet::new();
            for s in &layer {
                for v in vectors.iter().filter(|v| s.binary_search(v).is_err()) {
                    next.insert(self.extend(s, v));
                }
            }
            layer = next;
            counts.push(layer.len() as u64);
        }
        counts
    }

    /// The span of a subspace and one more vector, sorted.
    fn extend(&self, s: &[Vec<usize>], v: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> =
            s.iter().flat_map(|x| (0..self.q).map(move |c| self.add_vec(x, &self.scale(c, v)))).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[test]
fn gauss_binomial_against_subspace_enumeration() {
    for (q, mmax) in [(2usize, 4usize), (3, 4), (4, 4)] {
        let field = TinyField::new(q);
        for m in 0..=mmax {
            let counts = field.count_subspaces(m);
            for (a, &c) in counts.iter().enumerate() {
                assert_eq!(gauss_binom(m as u32, a as u32, &big(q as u64)), big(c), "Q={q} m={m} a={a}");
            }
        }
    }
}

// -- properties --------------------------------------------------------------------------

fn valid_params() -> impl Strategy<Value = ChromaticParams> {
    prop::sample::select(VALID.to_vec()).prop_map(|(p, n, r, q)| params(p, n, r, q))
}

proptest! {
    #[test]
    fn lifting_the_exponent(pr in valid_params(), j in 1u64..=60) {
        let qj = BigInt::from(pr.q).pow(j as u32) - 1;
        prop_assert_eq!(vp(&qj, pr.p).unwrap(), pr.r + vp_u64(j, pr.p).unwrap());
    }

    #[test]
    fn nk_identities_hold(pr in valid_params(), n in 1u32..=4, kmax in 0usize..=10) {
        let pr = ChromaticParams { n, ..pr };
        let t = NkTable::new(pr, kmax).unwrap();
        for k in 0..=kmax {
            prop_assert!(identities_hold(&t, k), "k = {}", k);
            prop_assert!(t.identities_at(k).iter().all(|&b| b));
        }
    }

    #[test]
    fn group_order_valuation(pr in valid_params(), d in 0u32..=30) {
        let v = vp(&BigInt::from(gl_order(&big(pr.q), d)), pr.p).unwrap() as u64;
        let d = d as u64;
        prop_assert_eq!(v, d * pr.r as u64 + (d - digit_sum(d, pr.p)) / (pr.p - 1));
    }

    #[test]
    fn block_subgroup_index_is_prime_to_p(pr in valid_params(), d in 0u32..=30) {
        prop_assert_eq!(block_index_valuation(&pr, d), 0);
    }

    #[test]
    fn q_pascal(m in 1u32..=12, a in 1u32..=12, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])) {
        let qb = big(q);
        let lhs = gauss_binom(m, a, &qb);
        let rhs = gauss_binom(m - 1, a - 1, &qb) + num_traits::pow::pow(qb.clone(), a as usize) * gauss_binom(m - 1, a, &qb);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gauss_binomial_symmetry(m in 0u32..=12, a in 0u32..=12, q in 2u64..=9) {
        prop_assume!(a <= m);
        prop_assert_eq!(gauss_binom(m, a, &big(q)), gauss_binom(m, m - a, &big(q)));
    }
}
