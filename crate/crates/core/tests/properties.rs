//! Randomized invariants with independent oracles.

mod common;

use orbifold_vortex::{
    chi_line, chi_u2, classification_report, enumerate_u2_bundles, h1_vanishes, seifert_monopole_report, serre_dual,
    serre_dual_isotropy, zeta_weight_sum_closed, zeta_weight_sum_numeric, FlatStatus, LineBundleData,
    OrbifoldLineBundle, OrbifoldSurface, OrbifoldU2Bundle, Rational, SeifertManifold,
};
use proptest::prelude::*;

fn surface_strategy() -> impl Strategy<Value = OrbifoldSurface> {
    (0u32..=3, prop::collection::vec(2u32..=12, 0..=3)).prop_map(|(g, cone)| OrbifoldSurface::new(g, cone).unwrap())
}

fn line_on(surface: &OrbifoldSurface) -> impl Strategy<Value = OrbifoldLineBundle> {
    let surface = surface.clone();
    let n = surface.cone_count();
    (-8i64..=8, prop::collection::vec(any::<u32>(), n)).prop_map(move |(deg_b, raw)| {
        let isotropy: Vec<u32> = raw.iter().zip(surface.multiplicities()).map(|(r, a)| r % a).collect();
        OrbifoldLineBundle::new(surface.clone(), deg_b, isotropy).unwrap()
    })
}

fn lines(count: usize) -> impl Strategy<Value = Vec<OrbifoldLineBundle>> {
    surface_strategy().prop_flat_map(move |s| prop::collection::vec(line_on(&s), count))
}

fn coprime_surface() -> impl Strategy<Value = OrbifoldSurface> {
    let mut all = Vec::new();
    for n in 1..=3 {
        for cone in common::multiplicity_lists(n, 1000) {
            if common::pairwise_coprime(&cone) {
                all.push(cone);
            }
        }
    }
    (0u32..=2, prop::sample::select(all)).prop_map(|(g, cone)| OrbifoldSurface::new(g, cone).unwrap())
}

/// `c1` straight from the definition `deg_B + sum b_i / a_i`, in floating point.
fn c1_float(line: &OrbifoldLineBundle) -> f64 {
    line.deg_b() as f64
        + line.isotropy().iter().zip(line.surface().multiplicities()).map(|(&b, &a)| b as f64 / a as f64).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn c1_is_a_homomorphism(ls in lines(2), k in -6i64..=6) {
        let (l1, l2) = (&ls[0], &ls[1]);
        prop_assert_eq!(l1.tensor(l2).unwrap().c1(), l1.c1() + l2.c1());
        prop_assert_eq!(l1.dual().c1(), -l1.c1());
        prop_assert_eq!(l1.power(k).c1(), l1.c1() * k);
        prop_assert!((l1.c1().to_f64() - c1_float(l1)).abs() < 1e-12);
    }

    #[test]
    fn tensor_is_a_group_law(ls in lines(3)) {
        let (a, b, c) = (&ls[0], &ls[1], &ls[2]);
        prop_assert_eq!(a.tensor(b).unwrap(), b.tensor(a).unwrap());
        prop_assert_eq!(a.tensor(b).unwrap().tensor(c).unwrap(), a.tensor(&b.tensor(c).unwrap()).unwrap());
        prop_assert!(a.tensor(&a.dual()).unwrap().is_trivial());
        prop_assert_eq!(&a.dual().dual(), a);
        prop_assert_eq!(a.power(2), a.tensor(a).unwrap());
        prop_assert_eq!(a.power(-1), a.dual());
    }

    #[test]
    fn euler_characteristic_is_minus_c1_of_canonical(s in surface_strategy()) {
        prop_assert_eq!(s.euler_characteristic(), -s.canonical_bundle().c1());
        let k = s.canonical_bundle();
        prop_assert_eq!(k.deg_b(), 2 * s.genus() as i64 - 2);
        let expected: Vec<u32> = s.multiplicities().iter().map(|a| a - 1).collect();
        prop_assert_eq!(k.isotropy(), &expected[..]);
    }

    #[test]
    fn riemann_roch_reassembly(ls in lines(1)) {
        let l = &ls[0];
        prop_assume!(l.isotropy().iter().all(|&b| b > 0));
        let s = l.surface();
        let mut total = Rational::integer(1 - s.genus() as i64) + l.c1();
        for (&b, &a) in l.isotropy().iter().zip(s.multiplicities()) {
            let (a, b) = (a as i64, b as i64);
            total -= Rational::new(a - 1, 2 * a);
            total += zeta_weight_sum_closed(a, a - b).unwrap() / a;
        }
        prop_assert_eq!(total, Rational::integer(chi_line(l)));
    }

    #[test]
    fn zeta_closed_form_matches_numeric(a in 2i64..=200, raw in any::<i64>()) {
        let b = 1 + raw.rem_euclid(a - 1);
        let numeric = zeta_weight_sum_numeric(a, b).unwrap();
        let closed = zeta_weight_sum_closed(a, b).unwrap();
        prop_assert!((numeric.re - closed.to_f64()).abs() < 1e-7);
        prop_assert!(numeric.im.abs() < 1e-7);
    }

    #[test]
    fn split_bundles_have_additive_chi(ls in lines(2)) {
        let e = OrbifoldU2Bundle::split(&ls[0], &ls[1]).unwrap();
        prop_assert_eq!(chi_u2(&e).unwrap(), chi_line(&ls[0]) + chi_line(&ls[1]));
        prop_assert_eq!(e.determinant().c1(), ls[0].c1() + ls[1].c1());
    }

    #[test]
    fn serre_dual_routes_agree(ls in lines(1)) {
        let l = &ls[0];
        prop_assert_eq!(serre_dual(l).isotropy().to_vec(), serre_dual_isotropy(l));
        prop_assert_eq!(serre_dual(l).c1(), l.surface().canonical_bundle().c1() - l.c1());
        prop_assert_eq!(serre_dual(&serre_dual(l)), l.clone());
    }

    #[test]
    fn smooth_serre_duality_negates_chi(g in 0u32..=6, d in -20i64..=20) {
        let l = OrbifoldLineBundle::new(OrbifoldSurface::smooth(g), d, Vec::new()).unwrap();
        prop_assert_eq!(chi_line(&serre_dual(&l)), -chi_line(&l));
    }

    #[test]
    fn vanishing_h1_bounds_chi(ls in lines(1)) {
        // h1(L) = 0 gives chi(L) = h0(L) >= 0 and h0(K - L) = 0, so chi(K - L) <= 0.
        let l = &ls[0];
        if h1_vanishes(l) {
            prop_assert!(chi_line(l) >= 0);
            prop_assert!(chi_line(&serre_dual(l)) <= 0);
        }
    }

    #[test]
    fn fundamental_bundle_matches_brute_force(s in coprime_surface()) {
        let l0 = s.fundamental_line_bundle().unwrap();
        let target = Rational::new(1, s.multiplicity_product());
        prop_assert_eq!(l0.c1(), target);
        let hits: Vec<Vec<u32>> = common::isotropy_vectors(&s)
            .into_iter()
            .filter(|iso| {
                let frac: Rational = iso.iter().zip(s.multiplicities()).map(|(&b, &a)| Rational::new(b as i64, a as i64)).sum();
                (target - frac).is_integer()
            })
            .collect();
        prop_assert_eq!(hits, vec![l0.isotropy().to_vec()]);
    }

    #[test]
    fn dims_and_indices_are_even(ls in lines(1)) {
        for e in enumerate_u2_bundles(&ls[0]).iter().take(64) {
            let dim = e.irreducible_dim().unwrap();
            prop_assert_eq!(dim % 2, 0);
            for r in e.compatible_reductions(2) {
                prop_assert_eq!(r.morse_index().unwrap() % 2, 0);
            }
            if let Some(r) = e.trivial_reduction() {
                prop_assert_eq!(r.morse_index().unwrap(), dim);
            }
        }
    }

    #[test]
    fn smooth_index_specialization(g in 0u32..=5, e in -6i64..=12, d in 0i64..=6) {
        let s = OrbifoldSurface::smooth(g);
        let det = OrbifoldLineBundle::new(s.clone(), e, Vec::new()).unwrap();
        let bundle = OrbifoldU2Bundle::new(det, Vec::new()).unwrap();
        prop_assert_eq!(bundle.irreducible_dim().unwrap(), 2 * (g as i64 - 1 + e));
        let reduction = bundle.compatible_reductions(d).pop().unwrap();
        prop_assert_eq!(reduction.line().deg_b(), d);
        prop_assert_eq!(reduction.morse_index().unwrap(), 2 * (g as i64 - 1 + e - 2 * d));
    }

    #[test]
    fn flat_witnesses_satisfy_the_criterion(ls in lines(1)) {
        for e in enumerate_u2_bundles(&ls[0]).iter().take(64) {
            let g = e.surface().genus() as i64;
            let holds = |eps: &[i8]| {
                let n_plus = eps.iter().filter(|&&x| x == 1).count() as i64;
                let lhs: f64 = n_plus as f64
                    - eps.iter().zip(e.pairs()).zip(e.surface().multiplicities())
                        .map(|((&x, p), &a)| x as f64 * p.gap() as f64 / a as f64)
                        .sum::<f64>();
                (n_plus + e.determinant().deg_b()).rem_euclid(2) == 1 && lhs < (1 - g) as f64 - 1e-9
            };
            match e.flat_status() {
                FlatStatus::EmptyByGenusCount => {
                    prop_assert_eq!(g, 0);
                    prop_assert!(e.pairs().len() - e.balanced_count() <= 2);
                }
                FlatStatus::EmptyByWitness { witness } => {
                    prop_assert_eq!(witness.len(), e.pairs().len());
                    prop_assert!(holds(&witness));
                }
                FlatStatus::NonEmpty => {
                    let n = e.pairs().len();
                    for mask in 0..(1u32 << n) {
                        let eps: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
                        prop_assert!(!holds(&eps));
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_strata_respect_the_degree_constraint(ls in lines(1)) {
        let report = classification_report(&ls[0]).unwrap();
        for row in &report.rows {
            for s in &row.abelian {
                prop_assert!(s.line.deg_b >= 0);
                prop_assert!(!s.moment_map_value.is_negative());
                prop_assert_eq!(s.on_wall, s.moment_map_value.is_zero());
                prop_assert_eq!(s.stratum_dimension, 2 * s.line.deg_b);
            }
        }
    }

    #[test]
    fn c_eta_is_linear_in_the_euler_bundle(ls in lines(2), num in 1i64..=9, den in 1i64..=9) {
        let vol = Rational::new(num, den);
        let y = |l: &OrbifoldLineBundle| SeifertManifold::new(l.clone(), vol).unwrap().c_eta();
        prop_assert_eq!(y(&ls[0].tensor(&ls[1]).unwrap()), y(&ls[0]) + y(&ls[1]));
        prop_assert_eq!(y(&ls[0]) * vol, -ls[0].c1());
    }

    #[test]
    fn type_b_determinant_has_the_expected_c1(s in prop::sample::select(vec![vec![2u32, 3, 5], vec![2, 3, 7], vec![3, 4, 5]]), k in -12i64..=12) {
        let s = OrbifoldSurface::new(0, s).unwrap();
        let det = s.fundamental_line_bundle().unwrap().power(k);
        let y = SeifertManifold::circle_bundle(s.fundamental_line_bundle().unwrap());
        let report = seifert_monopole_report(&y, &det).unwrap();
        prop_assert_eq!(report.type_b_det_c1, s.canonical_bundle().c1() * 2 - det.c1());
        prop_assert_eq!(report.type_b.is_none(), report.type_b_vanishes);
        prop_assert_eq!(report.type_b_vanishes, det.c1() > s.canonical_bundle().c1() * 2);
    }

    #[test]
    fn line_data_json_round_trips(ls in lines(1)) {
        let data = ls[0].data();
        let back: LineBundleData = serde_json::from_str(&serde_json::to_string(&data).unwrap()).unwrap();
        prop_assert_eq!(&back, &data);
        prop_assert_eq!(OrbifoldLineBundle::from_data(ls[0].surface(), &back).unwrap(), ls[0].clone());
    }

    #[test]
    fn rational_arithmetic_matches_floats(a in -50i64..=50, b in 1i64..=50, c in -50i64..=50, d in 1i64..=50) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        let (xf, yf) = (a as f64 / b as f64, c as f64 / d as f64);
        prop_assert!(((x + y).to_f64() - (xf + yf)).abs() < 1e-12);
        prop_assert!(((x - y).to_f64() - (xf - yf)).abs() < 1e-12);
        prop_assert!(((x * y).to_f64() - xf * yf).abs() < 1e-12);
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        prop_assert!(x.floor() as f64 <= xf && xf < x.floor() as f64 + 1.0);
    }
}

#[test]
fn no_type_b_rows_when_the_degree_condition_holds() {
    let s = OrbifoldSurface::new(0, vec![2, 3, 5]).unwrap();
    let l0 = s.fundamental_line_bundle().unwrap();
    for k in 1..=9 {
        let report = seifert_monopole_report(&SeifertManifold::circle_bundle(l0.clone()), &l0.power(k)).unwrap();
        assert!(report.type_b_vanishes, "k = {k}");
        assert!(report.type_b.is_none(), "k = {k}");
    }
}
