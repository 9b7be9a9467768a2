use proptest::prelude::*;

use stablemac::almostsym::AlmostSym;
use stablemac::comb::{Composition, Partition};
use stablemac::daha::{bruhat_support_ok, Rep};
use stablemac::hhl::{hhl_e, stable_e};
use stablemac::stablelimit::partial_minus;
use stablemac::symfunc::{Basis, SymFunc};
use stablemac::xpoly::XPoly;
use stablemac::QtScalar;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn poly_string(terms: &[(i64, u8, u8)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(c, a, b)| format!("({c})*q^{a}*t^{b}"))
        .collect::<Vec<_>>()
        .join("+")
}

fn scalar() -> impl Strategy<Value = QtScalar> {
    let poly = prop::collection::vec((-3i64..=3, 0u8..3, 0u8..3), 0..3);
    let den = prop::collection::vec((1i64..=2, 0u8..2, 0u8..2), 1..3);
    (poly, den).prop_filter_map("zero denominator", |(n, d)| {
        QtScalar::parse(&format!("({})/({})", poly_string(&n), poly_string(&d))).ok()
    })
}

fn nonzero_scalar() -> impl Strategy<Value = QtScalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn xpoly(n: usize, lo: i32, hi: i32) -> impl Strategy<Value = XPoly> {
    prop::collection::vec((prop::collection::vec(lo..=hi, n), scalar()), 1..4)
        .prop_map(move |ts| XPoly::from_terms(n, ts))
}

fn composition(max_len: usize, max_part: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(0..=max_part, 1..=max_len).prop_map(Composition::new)
}

fn partition(max_len: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_unsorted)
}

fn almost_sym(k: usize) -> impl Strategy<Value = AlmostSym> {
    prop::collection::vec(
        (prop::collection::vec(0u32..3, k), partition(2, 2), scalar()),
        1..4,
    )
    .prop_map(move |ts| AlmostSym::from_terms(k, ts.into_iter().map(|(a, l, c)| ((a, l), c))))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in nonzero_scalar()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&c).div(&c).unwrap(), a.clone());
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(QtScalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn composition_text_round_trip(mu in composition(5, 4)) {
        let s = mu.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(Composition::parse(&s).unwrap(), mu.clone());
        prop_assert_eq!(mu.sort().size(), mu.size());
    }

    #[test]
    fn hecke_generators_invert(f in xpoly(3, -2, 2), i in 1usize..3) {
        let rep = Rep::new(3);
        prop_assert_eq!(rep.t_inv(i, &rep.t(i, &f)), f.clone());
        prop_assert_eq!(rep.t(i, &rep.t_inv(i, &f)), f.clone());
        prop_assert_eq!(rep.omega_inv(&rep.omega(&f)), f);
    }

    #[test]
    fn quadratic_relation(f in xpoly(2, -2, 2)) {
        // (T - 1)(T + t) = 0 on the genuine representation.
        let rep = Rep::new(2);
        let g = rep.t(1, &f).add(&f.scale(&QtScalar::t()));
        let h = rep.t(1, &g).sub(&g);
        prop_assert!(h.is_zero());
    }

    #[test]
    fn cherednik_operators_commute(f in xpoly(2, 0, 2)) {
        let rep = Rep::new(2);
        prop_assert_eq!(rep.y(1, &rep.y(2, &f)), rep.y(2, &rep.y(1, &f)));
    }

    #[test]
    fn symmetric_basis_round_trip(l in partition(3, 3), c in nonzero_scalar()) {
        let f = SymFunc::single(Basis::M, l, c);
        for b in [Basis::P, Basis::H, Basis::E, Basis::HLP] {
            prop_assert!(f.to_basis(b).to_basis(Basis::M).equals(&f));
        }
        prop_assert!(SymFunc::parse_text(&f.to_text()).unwrap().equals(&f));
    }

    #[test]
    fn almost_sym_round_trips(f in almost_sym(2)) {
        prop_assert!(AlmostSym::parse_text(&f.to_text()).unwrap().equals(&f));
        let json = serde_json::to_string(&f).unwrap();
        let back: AlmostSym = serde_json::from_str(&json).unwrap();
        prop_assert!(back.equals(&f));
        prop_assert!(f.raise_split(4).equals(&f));
    }

    #[test]
    fn projection_is_identity_below(f in almost_sym(2)) {
        let g = partial_minus(3, &f.raise_split(3)).unwrap();
        prop_assert!(g.equals(&f));
    }

    #[test]
    fn hecke_inverse_on_almost_sym(f in almost_sym(2), i in 1usize..2) {
        prop_assert!(f.act_t_inv(i).act_t(i).equals(&f));
    }

    #[test]
    fn hhl_is_unitriangular(mu in composition(3, 2)) {
        let e = hhl_e(&mu);
        let lead: Vec<i32> = mu.parts().iter().map(|&x| x as i32).collect();
        prop_assert!(e.coeff(&lead).is_one());
        prop_assert!(bruhat_support_ok(&mu, &e));
    }

    #[test]
    fn stable_limit_projects_to_leading_term(mu in composition(3, 2)) {
        let e = stable_e(&mu);
        let lead: Vec<u32> = mu.parts().to_vec();
        prop_assert!(e.raise_split(mu.len()).coeff(&lead, &Partition::empty()).is_one());
        prop_assert_eq!(e.homogeneous_degree(), Some(mu.size()));
    }
}
