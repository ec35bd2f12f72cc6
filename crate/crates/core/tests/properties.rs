use icosa::bipoly::{pk, pk_product, to_p_basis, BiPoly, Var};
use icosa::expr::parse_poly;
use icosa::golden::{a_set, GoldenInt, GoldenRational};
use icosa::icosagroup::{enumerate_group, ConjClassTable};
use icosa::rescalc::RFunctional;
use icosa::Error;
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -50i64..=50
}

fn golden_int() -> impl Strategy<Value = GoldenInt> {
    (small(), small()).prop_map(|(a, b)| GoldenInt::new(a, b))
}

fn golden_rational() -> impl Strategy<Value = GoldenRational> {
    (small(), small(), 1i64..=12).prop_map(|(a, b, d)| GoldenRational::from_parts(a, b, d).unwrap())
}

fn small_coeff() -> impl Strategy<Value = GoldenRational> {
    (-4i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| GoldenRational::from_parts(a, b, d).unwrap())
}

/// Polynomials with up to six terms and total degree at most `max_deg`.
fn bipoly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((small_coeff(), 0..=max_deg, 0..=max_deg), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(BiPoly::zero(), |acc, (c, i, j)| {
            let j = j.min(max_deg - i);
            acc + BiPoly::monomial(c, i, j)
        })
    })
}

fn a_element() -> impl Strategy<Value = GoldenInt> {
    (0usize..9).prop_map(|k| a_set()[k].clone())
}

proptest! {
    #[test]
    fn norm_and_tau_are_multiplicative(a in golden_int(), b in golden_int()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.norm(), a.norm() * b.norm());
        prop_assert_eq!(ab.conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        // norm is a * a^tau
        prop_assert_eq!(GoldenInt::from_int(a.norm()), &a * &a.conj());
    }

    #[test]
    fn rationals_stay_canonical(a in golden_rational(), b in golden_rational()) {
        for v in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(v.denom() > &0.into());
            let back = GoldenRational::new(v.numer().clone(), v.denom().clone()).unwrap();
            prop_assert_eq!(back, v);
        }
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn rational_text_and_json_round_trip(a in golden_rational()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<GoldenRational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<GoldenRational>(&json).unwrap(), a);
    }

    #[test]
    fn sign_matches_float(a in golden_int()) {
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.signum(), f.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn p_basis_round_trip(coeffs in prop::collection::vec(-20i64..=20, 0..=13)) {
        let f = BiPoly::from_int_coeffs(Var::X, &coeffs);
        let v = to_p_basis(&f, Var::X).unwrap();
        prop_assert_eq!(v.reconstruct(), f);
    }

    #[test]
    fn evaluation_commutes_with_tau(f in bipoly(6), a in golden_int(), b in golden_int()) {
        let (a, b): (GoldenRational, GoldenRational) = (a.into(), b.into());
        prop_assert_eq!(f.eval(&a, &b).conj(), f.conj().eval(&a.conj(), &b.conj()));
    }

    #[test]
    fn ring_laws(f in bipoly(4), g in bipoly(4), h in bipoly(4)) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        let a = GoldenRational::from(3);
        let b = GoldenRational::phi();
        prop_assert_eq!((&f * &g).eval(&a, &b), &f.eval(&a, &b) * &g.eval(&a, &b));
    }

    #[test]
    fn r_is_linear(f in bipoly(8), g in bipoly(8), c in small_coeff()) {
        let r = RFunctional::standard();
        let lhs = r.r_poly(&(&f + &g.scale(&c))).unwrap();
        let rhs = &r.r_poly(&f).unwrap() + &(&c * &r.r_poly(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_is_the_group_average(f in bipoly(8)) {
        let r = RFunctional::standard().r_poly(&f).unwrap();
        prop_assert_eq!(r, ConjClassTable::standard().group_average(&f));
    }

    #[test]
    fn swapping_variables_commutes_with_tau_on_a(f in bipoly(5), alpha in a_element()) {
        let a: GoldenRational = alpha.into();
        prop_assert_eq!(f.swap_vars().eval(&a, &a.conj()), f.eval(&a.conj(), &a));
    }

    #[test]
    fn symmetric_power_products(a in 0usize..12, b in 0usize..12) {
        let sum = pk_product(a, b).into_iter().fold(BiPoly::zero(), |acc, c| acc + pk(c));
        prop_assert_eq!(pk(a) * pk(b), sum);
    }

    #[test]
    fn print_then_parse(f in bipoly(7)) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text).unwrap(), f, "text {}", text);
    }

    #[test]
    fn json_round_trip(f in bipoly(5)) {
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<BiPoly>(&json).unwrap(), f);
    }

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..40)) {
        let text = String::from_utf8_lossy(&bytes);
        if let Err(e) = parse_poly(&text) {
            prop_assert!(matches!(e, Error::Syntax { pos, .. } if pos <= text.len()), "{:?}", e);
        }
    }

    #[test]
    fn parser_never_panics_on_grammar_soup(s in "[xy0-9()+*/^ -]{0,30}|(phi|phibar|x|y|[0-9]|[-+*/^()]){0,20}") {
        if let Err(e) = parse_poly(&s) {
            prop_assert!(matches!(e, Error::Syntax { pos, .. } if pos <= s.len()), "{:?}", e);
        }
    }

    #[test]
    fn conjugation_preserves_classes(g in 0usize..120, h in 0usize..120) {
        let group = enumerate_group();
        let table = ConjClassTable::standard();
        let (g, h) = (group[g], group[h]);
        prop_assert_eq!(table.class_of(&g.conjugate_by(&h)), table.class_of(&g));
        prop_assert_eq!(g.mul(&g.inv()), group[group.iter().position(|e| e.0 == [1, 0, 0, 1]).unwrap()]);
    }
}

#[test]
fn precedence_cases() {
    let x = BiPoly::x();
    assert_eq!(parse_poly("-x^2").unwrap(), -x.pow(2));
    assert_eq!(parse_poly("2^3").unwrap(), BiPoly::int(8));
    assert_eq!(parse_poly("-2^2").unwrap(), BiPoly::int(-4));
    assert_eq!(parse_poly("x y^2").unwrap(), &x * &BiPoly::y().pow(2));
    assert_eq!(parse_poly("(x)(y)").unwrap(), &x * &BiPoly::y());
    assert_eq!(parse_poly("1 - x - y").unwrap(), BiPoly::one() - x - BiPoly::y());
}
