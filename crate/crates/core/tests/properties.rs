use monogenica::basis::{
    appell_inner, appell_inner_closed, appell_inner_recur, appell_outer, kelvin, phi_inner, phi_outer, Recurrence,
};
use monogenica::calculus::{basis_derivative, basis_primitive, fd_dbar};
use monogenica::legendre::assoc_legendre;
use monogenica::{BasisFamily, BasisIndex, Point3, Quaternion, SeriesExpansion, SeriesKind};
use proptest::prelude::*;

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(Quaternion::from_array)
}

fn ball_point() -> impl Strategy<Value = Point3> {
    (0.05f64..1.0, 0.0f64..std::f64::consts::PI, -3.2f64..3.2)
        .prop_map(|(r, t, p)| Point3::from_spherical(r, t, p))
}

fn index(k_lo: i32, k_hi: i32) -> impl Strategy<Value = BasisIndex> {
    (k_lo..=k_hi)
        .prop_filter("k = -1 has no elements", |k| *k != -1)
        .prop_flat_map(|k| {
            let n = if k >= 0 { k } else { -k - 2 };
            (Just(k), 0..=n as u32)
        })
        .prop_map(|(k, l)| BasisIndex::new(k, l).unwrap())
}

fn rel(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_is_associative_and_norm_multiplicative(a in quat(), b in quat(), c in quat()) {
        prop_assert!(((a * b) * c - a * (b * c)).max_abs() < 1e-13);
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-13);
        prop_assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() < 1e-14);
        prop_assert!((a.hat().hat() - a).max_abs() == 0.0);
    }

    #[test]
    fn legendre_three_term(n in 1usize..40, m_frac in 0.0f64..1.0, t in -1.0f64..1.0) {
        let m = ((n - 1) as f64 * m_frac) as usize;
        let (p_next, _) = assoc_legendre(n + 1, m, t).unwrap();
        let (p, _) = assoc_legendre(n, m, t).unwrap();
        let p_prev = if n > m { assoc_legendre(n - 1, m, t).unwrap().0 } else { 0.0 };
        let lhs = (n - m + 1) as f64 * p_next;
        let rhs = (2 * n + 1) as f64 * t * p - (n + m) as f64 * p_prev;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() < 1e-12 * scale);
    }

    #[test]
    fn basis_elements_are_monogenic(i in index(-9, 8), x in ball_point()) {
        let x = if i.is_inner() { x } else { x.scale(1.0 + 1.0 / x.norm()) };
        let f = |y: Point3| monogenica::eval_basis(BasisFamily::OrthonormalPhi, i, y);
        let scale = f(x).unwrap().norm() / x.norm() + 1.0;
        prop_assert!(fd_dbar(&f, x, 1e-5).unwrap().norm() < 1e-6 * scale);
    }

    #[test]
    fn homogeneity(i in index(-9, 9), x in ball_point(), s in 0.3f64..3.0) {
        let f = |y: Point3| monogenica::eval_basis(BasisFamily::AppellA, i, y).unwrap();
        prop_assert!(rel(f(x.scale(s)), f(x) * s.powi(i.k())) < 1e-12);
    }

    #[test]
    fn recurrences_match_closed_form(n in 0usize..=14, l_frac in 0.0f64..=1.0, x in ball_point()) {
        let l = (n as f64 * l_frac) as usize;
        let c = appell_inner_closed(n, l, x).unwrap();
        prop_assert!(rel(c, appell_inner_recur(n, l, x, Recurrence::TwoStep).unwrap()) < 1e-11);
        prop_assert!(rel(c, appell_inner_recur(n, l, x, Recurrence::OneStep).unwrap()) < 1e-11);
        prop_assert!(rel(c, appell_inner(n, l, x).unwrap()) < 1e-14);
    }

    #[test]
    fn kelvin_maps_inner_to_outer(n in 0usize..=10, l_frac in 0.0f64..=1.0, x in ball_point()) {
        let l = (n as f64 * l_frac) as usize;
        let s = ((2 * n + 1) as f64 / (2 * n + 3) as f64).sqrt();
        let k = kelvin(&|y: Point3| phi_inner(n, l, y), x).unwrap() * s;
        prop_assert!(rel(k, phi_outer(n, l, x).unwrap()) < 1e-13);
        prop_assert!(appell_outer(n, l, x).unwrap().is_finite());
    }

    #[test]
    fn derive_undoes_primitive(i in index(-30, 30)) {
        for family in [BasisFamily::OrthonormalPhi, BasisFamily::AppellA] {
            if let Ok(p) = basis_primitive(i, family) {
                let t = p.target.unwrap();
                let d = basis_derivative(t, family).unwrap();
                prop_assert_eq!(d.target, Some(i));
                prop_assert!((d.factor * p.factor - 1.0).abs() < 1e-14);
                if family == BasisFamily::OrthonormalPhi {
                    prop_assert!(p.factor.abs() <= 0.3f64.sqrt() + 1e-16 || !i.is_inner());
                }
            }
        }
    }

    #[test]
    fn json_roundtrip(entries in prop::collection::btree_map(index(-12, 12), prop::array::uniform4(any::<f64>().prop_filter("finite", |v| v.is_finite())), 0..20)) {
        let terms: Vec<_> = entries.into_iter().map(|(i, c)| (i, Quaternion::from_array(c))).collect();
        let s = SeriesExpansion::from_terms(SeriesKind::Laurent, BasisFamily::AppellA, terms).unwrap();
        let back = SeriesExpansion::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back.len(), s.len());
        for ((ia, ca), (ib, cb)) in s.coeffs().iter().zip(back.coeffs()) {
            prop_assert_eq!(ia, ib);
            for (u, v) in ca.to_array().iter().zip(cb.to_array()) {
                prop_assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }
}
