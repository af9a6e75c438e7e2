use nilforge::free_lie::{central_quotient_coords, AlgebraJson};
use nilforge::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Random sparse element of `F_{k,s}` with small rational coefficients.
fn element(k: usize, s: usize, terms: usize) -> impl Strategy<Value = LieElement> {
    let dim = FreeLieAlgebra::get(k, s).unwrap().dim();
    prop::collection::vec((0..dim, -5i64..=5, 1i64..=3), 1..=terms).prop_map(move |ts| {
        let mut c = vec![q(0, 1); dim];
        for (i, n, d) in ts {
            c[i] += q(n, d);
        }
        LieElement::from_coords(k, s, &c).unwrap()
    })
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn lyndon_counts_match_witt() {
    for k in 1..=5 {
        for s in 1..=8 {
            if k == 5 && s == 8 {
                continue; // covered by the acceptance suite
            }
            let basis = lyndon_basis(k, s).unwrap();
            for d in 1..=s {
                assert_eq!(basis[d - 1].len() as u64, witt_dimension(k, d).unwrap(), "k={k} d={d}");
            }
        }
    }
}

#[test]
fn witt_spot_values() {
    assert_eq!(witt_dimension(2, 6).unwrap(), 9);
    assert_eq!(witt_dimension(3, 3).unwrap(), 8);
    for k in 2..=6u64 {
        assert_eq!(witt_dimension(k as usize, 3).unwrap(), (k * k * k - k) / 3);
    }
}

#[test]
fn weight_grading_is_exhaustive() {
    for k in 1..=4 {
        for s in 1..=7 {
            let alg = FreeLieAlgebra::get(k, s).unwrap();
            let mut total = 0;
            for c in compositions(s, k) {
                let w = Weight::new(c);
                let by_formula = witt_character(&w);
                let by_basis = alg
                    .degree_range(s)
                    .filter(|&i| alg.basis_bracket(i).multidegree == w)
                    .count() as u64;
                assert_eq!(by_formula, by_basis, "weight {w}");
                total += by_formula;
            }
            assert_eq!(total, witt_dimension(k, s).unwrap());
        }
    }
}

#[test]
fn quasi_norm_examples() {
    let x = LieElement::generators(2, 3).unwrap();
    assert_eq!(quasi_norm(&LieElement::zero(2, 3)), 0.0);
    let t = bracket(&x[0], &bracket(&x[0], &x[1]).unwrap()).unwrap().scale(&q(8, 1));
    assert!((quasi_norm(&t) - 2.0).abs() < 1e-12);
    let u = &x[0].scale(&q(3, 1)) + &t;
    assert!((quasi_norm(&u) - 3.0).abs() < 1e-12);
}

#[test]
fn quotient_examples() {
    let x = LieElement::generators(2, 2).unwrap();
    let c = bracket(&x[0], &x[1]).unwrap();
    let ab = central_quotient(2, 2, &[c]).unwrap();
    assert_eq!(ab.algebra.dimension(), 2);
    assert!(ab.algebra.entries().is_empty());
    assert_eq!(central_quotient(2, 2, &[]).unwrap().algebra.dimension(), 3);

    let r = LieElement::parse_compact(2, 6, "111112:1,111122:-3").unwrap();
    let quot = central_quotient(2, 6, &[r.clone()]).unwrap();
    assert_eq!(quot.algebra.dimension(), 22);
    assert!(quot.algebra.check_jacobi());
    assert!(quot.algebra.check_grading());
    assert!(quot.project(&r).unwrap().iter().all(|v| v == &q(0, 1)));

    let bad = LieElement::parse_compact(2, 6, "12:1,111112:1").unwrap();
    assert!(matches!(central_quotient(2, 6, &[bad]), Err(Error::NotTopDegree { .. })));
}

#[test]
fn quotient_is_a_homomorphic_image() {
    let x = LieElement::generators(3, 4).unwrap();
    let rels = [
        LieElement::parse_compact(3, 4, "1112:1,1213:2,1123:-1").unwrap(),
        LieElement::parse_compact(3, 4, "2223:1,1322:1/2").unwrap(),
    ];
    let quot = central_quotient(3, 4, &rels).unwrap();
    let a = &x[0] + &bracket(&x[1], &x[2]).unwrap();
    let b = &x[2].scale(&q(2, 1)) + &bracket(&x[0], &x[1]).unwrap();
    let lhs = quot.project(&bracket(&a, &b).unwrap()).unwrap();
    let rhs = quot.algebra.bracket(&quot.project(&a).unwrap(), &quot.project(&b).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn real_quotient_satisfies_jacobi() {
    let digits = 40;
    let phi = Real::golden_ratio(digits);
    let alg = FreeLieAlgebra::get(2, 5).unwrap();
    let top = alg.degree_range(5);
    let mut rel = vec![Real::from_integer(0); alg.dim()];
    rel[top.start] = Real::from_integer(1);
    rel[top.start + 2] = phi.clone();
    rel[top.start + 5] = -(phi.clone() * phi);
    let quot = central_quotient_coords(2, 5, &[rel]).unwrap();
    assert_eq!(quot.algebra.dimension(), alg.dim() - 1);
    assert!(quot.algebra.check_jacobi());
    // Jacobi residuals are below 1e-30 in absolute value.
    let n = quot.algebra.dimension();
    let unit = |i: usize| {
        let mut v = quot.algebra.zero_vector();
        v[i] = Real::from_integer(1);
        v
    };
    let tol = Real::from_rational(&Rational::new(1.into(), num::BigInt::from(10).pow(30)), digits);
    let g = &quot.algebra;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if g.degree_of(i) + g.degree_of(j) + g.degree_of(l) > 5 {
                    continue;
                }
                let (a, b, c) = (unit(i), unit(j), unit(l));
                let t1 = g.bracket(&a, &g.bracket(&b, &c));
                let t2 = g.bracket(&b, &g.bracket(&c, &a));
                let t3 = g.bracket(&c, &g.bracket(&a, &b));
                for ((x, y), z) in t1.into_iter().zip(t2).zip(t3) {
                    assert!((x + y + z).abs() < tol);
                }
            }
        }
    }
}

#[test]
fn algebra_json_round_trip() {
    let g = NilpotentAlgebra::free(2, 4).unwrap();
    let json = serde_json::to_string(&g.to_json()).unwrap();
    let back: AlgebraJson = serde_json::from_str(&json).unwrap();
    let h = NilpotentAlgebra::from_json(&back).unwrap();
    assert_eq!(h.dimension(), 8);
    assert_eq!(h.entries(), g.entries());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_on_random_triples(a in element(3, 5, 6), b in element(3, 5, 6), c in element(3, 5, 6)) {
        let t1 = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
        let t2 = bracket(&b, &bracket(&c, &a).unwrap()).unwrap();
        let t3 = bracket(&c, &bracket(&a, &b).unwrap()).unwrap();
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }

    #[test]
    fn antisymmetry_and_bilinearity(a in element(2, 6, 5), b in element(2, 6, 5), c in element(2, 6, 5)) {
        let ab = bracket(&a, &b).unwrap();
        prop_assert_eq!(&ab, &-&bracket(&b, &a).unwrap());
        prop_assert!(bracket(&a, &a).unwrap().is_zero());
        let lhs = bracket(&(&a + &c), &b).unwrap();
        prop_assert_eq!(lhs, &ab + &bracket(&c, &b).unwrap());
    }

    #[test]
    fn compact_text_round_trips(a in element(3, 4, 8)) {
        let back = LieElement::parse_compact(3, 4, &a.to_compact()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn weight_components_sum_back(a in element(2, 5, 8)) {
        let mut total = LieElement::zero(2, 5);
        for d in 1..=5 {
            for c in compositions(d, 2) {
                total = &total + &weight_component(&a, &Weight::new(c));
            }
        }
        prop_assert_eq!(total, a);
    }
}
