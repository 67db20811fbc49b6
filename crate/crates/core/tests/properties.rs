use planeleaf::blowup::noether_pairing;
use planeleaf::curve::{intersection_total, local_intersection, tjurina_total, CurveSpec};
use planeleaf::exactalg::scheme::{invert3, linear_change, local_germ};
use planeleaf::exactalg::{parse_poly, Field, Gf, Ideal, MonomialOrder, Mono, Poly, Rationals};
use planeleaf::foliation::{singular_scheme, VectorField};
use proptest::prelude::*;

fn gf53() -> Gf {
    Gf::new(53, 1).unwrap()
}

fn poly_from<F: Field>(k: &F, terms: &[([u32; 3], i64)]) -> Poly<F> {
    Poly::from_terms(k, terms.iter().map(|&([a, b, c], v)| (Mono::from_exps([a, b, c, 0]), k.from_i64(v))))
}

fn affine_terms(max_deg: u32, len: usize) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -20i64..20), 0..len)
        .prop_map(|v| v.into_iter().map(|((a, b), c)| ([a, b, 0], c)).collect())
}

fn form_terms(deg: u32) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    let monos: Vec<[u32; 3]> =
        (0..=deg).flat_map(|i| (0..=deg - i).map(move |j| [i, j, deg - i - j])).collect();
    prop::collection::vec(-30i64..30, monos.len()).prop_map(move |cs| monos.iter().copied().zip(cs).collect())
}

fn matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-3i64..=3))
}

type Terms = Vec<([u32; 3], i64)>;

fn field_and_shift() -> impl Strategy<Value = (u32, Terms, Terms, Terms, Terms)> {
    (1u32..3).prop_flat_map(|m| (Just(m), form_terms(m), form_terms(m), form_terms(m), form_terms(m - 1)))
}

const SINGULAR_CURVES: [&str; 4] =
    ["y^2*z - x^3", "y^2*z - x^3 - x^2*z", "y^2*z^2 - x^4", "x^3*z - x*y^2*z + x^4 + y^4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_linear(
        gens in prop::collection::vec(affine_terms(3, 5), 1..3),
        p in affine_terms(4, 8),
        q in affine_terms(4, 8),
        c in 1i64..53,
    ) {
        let k = gf53();
        let ideal = Ideal::new(2, gens.iter().map(|g| poly_from(&k, g)).collect());
        let Some(gb) = ideal.groebner(MonomialOrder::DegRevLex) else { return Ok(()) };
        let (p, q) = (poly_from(&k, &p), poly_from(&k, &q));
        let np = gb.normal_form(&p);
        prop_assert_eq!(gb.normal_form(&np), np.clone());
        prop_assert!(gb.contains(&p.sub(&np)));
        let c = k.from_i64(c);
        let combined = gb.normal_form(&p.scale(&c).add(&q));
        prop_assert_eq!(combined, np.scale(&c).add(&gb.normal_form(&q)));
    }

    #[test]
    fn parse_print_round_trip(terms in prop::collection::vec((prop::array::uniform3(0u32..4), -50i64..50, 1i64..6), 0..8)) {
        let k = Rationals;
        let p = Poly::from_terms(&k, terms.iter().map(|&([a, b, c], n, d)| {
            let r = num_rational::BigRational::new(n.into(), d.into());
            (Mono::from_exps([a, b, c, 0]), r)
        }));
        prop_assert_eq!(parse_poly(&k, &p.to_string()).unwrap(), p.clone());
        let f7 = Gf::new(7, 1).unwrap();
        let p7 = poly_from(&f7, &terms.iter().map(|&(e, n, _)| (e, n)).collect::<Vec<_>>());
        prop_assert_eq!(parse_poly(&f7, &p7.to_string()).unwrap(), p7);
    }

    #[test]
    fn tjurina_and_intersections_are_projective_invariants(which in 0usize..4, m in matrix()) {
        let k = Rationals;
        let mq = m.map(|row| row.map(|v| k.from_i64(v)));
        prop_assume!(invert3(&k, &mq).is_some());
        let u = parse_poly(&k, SINGULAR_CURVES[which]).unwrap();
        let v = linear_change(&u, &mq);
        let tau = |p: &Poly<Rationals>| tjurina_total(&CurveSpec::new(&k, p.clone(), vec![p.clone()], 1).unwrap());
        prop_assert_eq!(tau(&u), tau(&v));
        let line = parse_poly(&k, "x + 2*y - z").unwrap();
        prop_assume!(planeleaf::exactalg::gcd::gcd(&u, &line).is_constant());
        prop_assert_eq!(intersection_total(&u, &line), intersection_total(&v, &linear_change(&line, &mq)));
    }

    #[test]
    fn minors_ignore_radial_terms((m, f, g, h, p) in field_and_shift()) {
        let k = gf53();
        let Ok(fol) = VectorField::new(&k, [poly_from(&k, &f), poly_from(&k, &g), poly_from(&k, &h)]) else { return Ok(()) };
        let shift = poly_from(&k, &p);
        let Ok(moved) = VectorField::new(&k, fol.radial_shift(&shift)) else { return Ok(()) };
        prop_assert_eq!(moved.m, m);
        prop_assert_eq!(moved.minors(), fol.minors());
        let u = parse_poly(&k, "y^2*z - x^3 + x*y*z").unwrap();
        let euler = shift.mul(&u).scale(&k.from_i64(3));
        prop_assert_eq!(moved.apply(&u), fol.apply(&u).add(&euler));
    }

    #[test]
    fn finite_singular_schemes_have_expected_degree((m, f, g, h) in (0u32..3).prop_flat_map(|m| (Just(m), form_terms(m), form_terms(m), form_terms(m)))) {
        let k = gf53();
        let Ok(fol) = VectorField::new(&k, [poly_from(&k, &f), poly_from(&k, &g), poly_from(&k, &h)]) else { return Ok(()) };
        if let Some(deg) = singular_scheme(&fol).degree.finite() {
            prop_assert_eq!(deg, 1 + m as u64 + (m * m) as u64);
        }
    }

    #[test]
    fn pairing_matches_local_intersection(a in -5i64..5, b in -5i64..5) {
        let k = Rationals;
        let cusp = parse_poly(&k, "y^2*z - x^3").unwrap();
        let line = poly_from(&k, &[([1, 0, 0], a), ([0, 1, 0], b)]);
        prop_assume!(!line.is_zero());
        let origin = [k.zero(), k.zero(), k.one()];
        let pairing = noether_pairing(&local_germ(&line, &origin), &local_germ(&cusp, &origin)).unwrap();
        prop_assert_eq!(pairing, local_intersection(&line, &cusp, &origin).unwrap());
        prop_assert_eq!(pairing, if a == 0 { 3 } else { 2 });
    }
}
