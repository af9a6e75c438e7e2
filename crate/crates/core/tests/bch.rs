use num::{BigInt, Integer, One};
use nilforge::bch::ball_size;
use nilforge::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn element(k: usize, s: usize, terms: usize) -> impl Strategy<Value = LieElement> {
    let dim = FreeLieAlgebra::get(k, s).unwrap().dim();
    prop::collection::vec((0..dim, -4i64..=4, 1i64..=3), 1..=terms).prop_map(move |ts| {
        let mut c = vec![q(0, 1); dim];
        for (i, n, d) in ts {
            c[i] += q(n, d);
        }
        LieElement::from_coords(k, s, &c).unwrap()
    })
}

fn word(k: usize, max_len: usize) -> impl Strategy<Value = FreeGroupWord> {
    prop::collection::vec((1..=k, prop::bool::ANY), 0..=max_len).prop_map(|letters| {
        FreeGroupWord::from_syllables(letters.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 })))
            .unwrap()
    })
}

/// `x^n` by binary powering with `bch_product`.
fn power_by_squaring(x: &LieElement, n: u32) -> LieElement {
    let mut result = LieElement::zero(x.k(), x.s());
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = bch_product(&result, &base).unwrap();
        }
        base = bch_product(&base, &base).unwrap();
        e >>= 1;
    }
    result
}

#[test]
fn powers_by_squaring_equal_scaling() {
    let x = LieElement::parse_compact(2, 5, "1:1,2:-2,12:1/3,112:5,11212:-1").unwrap();
    for n in [0u32, 1, 2, 3, 7, 12] {
        assert_eq!(power_by_squaring(&x, n), x.scale(&q(n as i64, 1)));
    }
    let w = FreeGroupWord::parse("x1^7 x2^-3").unwrap();
    let y = LieElement::parse_compact(2, 5, "2:1,122:4").unwrap();
    let by_fold = bch_product(&power_by_squaring(&x, 7), &power_by_squaring(&y, 3).scale(&q(-1, 1))).unwrap();
    assert_eq!(eval_word(&w, &[x, y]).unwrap(), by_fold);
}

/// Degree-wise lcm of denominators of `word_to_lie` over the ball.
fn denominators(k: usize, s: usize, n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one(); s];
    for w in word_ball(k, n) {
        let r = word_to_lie(&w, k, s).unwrap();
        for (b, coeff) in r.terms() {
            let d = b.degree();
            c[d - 1] = c[d - 1].lcm(coeff.denom());
        }
    }
    c
}

#[test]
fn word_logarithms_have_bounded_denominators() {
    assert_eq!(ball_size(2, 6), 1457);
    let c = denominators(2, 4, 6);
    let want: Vec<BigInt> = [1, 2, 12, 24].iter().map(|&v| BigInt::from(v)).collect();
    assert_eq!(c, want);
    // Every value is integral after scaling by C = lcm C_i.
    let all = c.iter().fold(BigInt::one(), |a, b| a.lcm(b));
    for w in word_ball(2, 4) {
        let r = word_to_lie(&w, 2, 4).unwrap().scale(&Rational::from_integer(all.clone()));
        assert!(r.terms().iter().all(|(_, v)| v.is_integer()));
    }
}

/// Lagrange interpolation through `(t_i, y_i)` evaluated at `t`.
fn interpolate(ts: &[i64], ys: &[Rational], t: i64) -> Rational {
    let mut acc = q(0, 1);
    for (i, (&ti, yi)) in ts.iter().zip(ys).enumerate() {
        let mut l = q(1, 1);
        for (j, &tj) in ts.iter().enumerate() {
            if i != j {
                l *= q(t - tj, ti - tj);
            }
        }
        acc += yi * l;
    }
    acc
}

#[test]
fn word_maps_are_polynomial_of_degree_at_most_s() {
    let s = 4;
    let args = [
        LieElement::parse_compact(2, s, "1:1,2:1/2,12:-1").unwrap(),
        LieElement::parse_compact(2, s, "2:2,112:1,1:-1").unwrap(),
    ];
    for text in ["x1 x2 x1^-1 x2^-1", "x1^2 x2^-1 x1 x2^3", "x2 x1 x2^-2 x1^-1 x2"] {
        let w = FreeGroupWord::parse(text).unwrap();
        let at = |t: i64| {
            let scaled: Vec<LieElement> = args.iter().map(|a| a.scale(&q(t, 1))).collect();
            eval_word(&w, &scaled).unwrap().to_coords()
        };
        let ts: Vec<i64> = (0..=(s as i64 + 1)).collect();
        let samples: Vec<Vec<Rational>> = ts.iter().map(|&t| at(t)).collect();
        for t in [s as i64 + 2, -3] {
            let got = at(t);
            for (c, g) in got.iter().enumerate() {
                let ys: Vec<Rational> = samples.iter().map(|v| v[c].clone()).collect();
                // degree <= s: s + 1 of the s + 2 nodes already determine it
                assert_eq!(&interpolate(&ts[..s + 1], &ys[..s + 1], t), g, "{text} t={t}");
                assert_eq!(&interpolate(&ts, &ys, t), g);
            }
        }
    }
}

#[test]
fn coordinate_word_evaluation_matches_lie_route() {
    let g = NilpotentAlgebra::free(2, 5).unwrap();
    let args = [
        LieElement::parse_compact(2, 5, "1:1,12:2").unwrap(),
        LieElement::parse_compact(2, 5, "2:-1,122:1/2").unwrap(),
    ];
    let pts: Vec<Vec<Rational>> = args.iter().map(|a| a.to_coords()).collect();
    for text in ["x1^3 x2 x1^-1", "x2^-2 x1 x2 x1 x2", "e"] {
        let w = FreeGroupWord::parse(text).unwrap();
        let lie = eval_word(&w, &args).unwrap().to_coords();
        assert_eq!(g.eval_word(&w, &pts).unwrap(), lie);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn associativity_f35(x in element(3, 5, 4), y in element(3, 5, 4), z in element(3, 5, 4)) {
        let l = bch_product(&bch_product(&x, &y).unwrap(), &z).unwrap();
        let r = bch_product(&x, &bch_product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn associativity_f26(x in element(2, 6, 4), y in element(2, 6, 4), z in element(2, 6, 4)) {
        let l = bch_product(&bch_product(&x, &y).unwrap(), &z).unwrap();
        let r = bch_product(&x, &bch_product(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn inverse_cancels(x in element(3, 5, 6)) {
        prop_assert!(bch_product(&x, &bch_inverse(&x)).unwrap().is_zero());
        prop_assert!(bch_product(&bch_inverse(&x), &x).unwrap().is_zero());
    }

    #[test]
    fn word_to_lie_is_a_homomorphism(a in word(2, 6), b in word(2, 6)) {
        let lhs = word_to_lie(&a.concat(&b), 2, 5).unwrap();
        let rhs = bch_product(&word_to_lie(&a, 2, 5).unwrap(), &word_to_lie(&b, 2, 5).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn formula_matches_associative_route(x in element(2, 5, 5), y in element(2, 5, 5)) {
        prop_assert_eq!(bch_product(&x, &y).unwrap(), bch_product_assoc(&x, &y).unwrap());
    }

    #[test]
    fn lie_to_word_round_trips(coeffs in prop::collection::vec(-30i64..=30, 6)) {
        let alg = FreeLieAlgebra::get(2, 4).unwrap();
        let mut c = vec![q(0, 1); alg.dim()];
        for (slot, v) in alg.degree_range(4).zip(&coeffs) {
            c[slot] = q(*v, 1);
        }
        let r = LieElement::from_coords(2, 4, &c).unwrap();
        let w = lie_to_word(&r).unwrap();
        prop_assert_eq!(word_to_lie(&w, 2, 4).unwrap(), r);
    }
}
