use lagrange_core::cfrac::{expand, hall_decompose, CfExpansion};
use lagrange_core::num::{to_f64, Precision};
use lagrange_core::origami::{hall_ray_alpha, Move, OrbitGraph, Origami};
use lagrange_core::rauzy::{minimal_positive_prefix, RauzyClass, RauzyPath};
use lagrange_core::spectrum::periodic_value;
use lagrange_core::zippered::canonical_tau;
use lagrange_core::Real;
use lagrange_core::{Iet, PermutationPair, ZipperedDatum};
use proptest::prelude::*;

const PREC: Precision = Precision(256);

fn lengths(d: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.05f64..1.0, d)
}

fn datum() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>)> {
    (2usize..=5).prop_flat_map(|d| {
        (
            Just(d),
            lengths(d),
            proptest::collection::vec(-0.4f64..0.4, d),
        )
    })
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn origami() -> impl Strategy<Value = Origami> {
    (1usize..=7)
        .prop_flat_map(|n| (perm(n), perm(n)))
        .prop_filter_map("connected", |(r, u)| Origami::new(r, u).ok())
}

fn relabeled(o: &Origami, sigma: &[usize]) -> Origami {
    let n = o.n();
    let mut r = vec![0; n];
    let mut u = vec![0; n];
    for s in 0..n {
        r[sigma[s]] = sigma[o.right()[s]];
        u[sigma[s]] = sigma[o.up()[s]];
    }
    Origami::new(r, u).unwrap()
}

fn gen() -> impl Strategy<Value = Move> {
    prop_oneof![
        Just(Move::T),
        Just(Move::TInv),
        Just(Move::V),
        Just(Move::VInv)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn evaluate_inverts((d, lam, _) in datum(), t in 0.0f64..1.0) {
        let iet = Iet::from_f64(PermutationPair::symmetric(d), &lam, PREC).unwrap();
        let x = iet.total_length() * PREC.from_f64(t);
        if let Ok(y) = iet.evaluate(&x) {
            let back = iet.inverse_evaluate(&y).unwrap();
            prop_assert!((to_f64(&back) - to_f64(&x)).abs() < 1e-30);
        }
    }

    #[test]
    fn boshernitzan_gaps_shrink((d, lam, _) in datum()) {
        let iet = Iet::from_f64(PermutationPair::symmetric(d), &lam, PREC).unwrap();
        let mut last = f64::INFINITY;
        for item in iet.boshernitzan_stream(200) {
            let Ok((_, _, e)) = item else { break };
            prop_assert!(to_f64(&e) <= last);
            last = to_f64(&e);
        }
    }

    #[test]
    fn positive_prefix_clears_singularities((d, lam, _) in datum()) {
        let iet = Iet::from_f64(PermutationPair::symmetric(d), &lam, PREC).unwrap();
        let (_, induced) = minimal_positive_prefix(&iet, 10_000).unwrap();
        let end = to_f64(&induced.total_length());
        let sing = iet.singularities();
        let mut points: Vec<f64> = sing.top_points.iter().map(|(_, x)| to_f64(x)).collect();
        points.extend(sing.bottom_points.iter().map(|(_, x)| to_f64(x)));
        for p in points {
            // both T and T^{-1} have their discontinuities among these points
            prop_assert!(p >= end * (1.0 - 1e-12));
        }
    }

    #[test]
    fn rv_step_preserves_area((d, lam, noise) in datum()) {
        let pi = PermutationPair::symmetric(d);
        let tau: Vec<f64> = canonical_tau(&pi, PREC).iter().zip(&noise).map(|(t, e)| to_f64(t) + e).collect();
        let Ok(zd) = ZipperedDatum::from_f64(pi, &lam, &tau, PREC) else { return Ok(()) };
        let h = zd.heights().unwrap();
        prop_assert!(h.iter().all(|x| to_f64(x) > 0.0));
        let mut cur = zd.clone();
        for _ in 0..20 {
            let Ok((_, next)) = cur.rv_step() else { break };
            let (a0, a1) = (to_f64(&cur.area().unwrap()), to_f64(&next.area().unwrap()));
            prop_assert!((a0 - a1).abs() <= 1e-30 * a0.max(1.0));
            cur = next;
        }
    }

    #[test]
    fn periodic_w_repeats(kinds in "[tb]{1,8}") {
        prop_assume!(kinds.contains('t') && kinds.contains('b'));
        let pi = PermutationPair::parse("A B/B A").unwrap();
        let lp = RauzyPath::from_kinds(&pi, &kinds).unwrap();
        let once = periodic_value(&lp, PREC).unwrap();
        let twice = periodic_value(&lp.repeat(2).unwrap(), PREC).unwrap();
        for (k, w) in twice.w.iter().enumerate() {
            prop_assert!((to_f64(w) - to_f64(&once.w[k % lp.len()])).abs() < 1e-40);
        }
        // cyclic rotation gives the same orbit value
        let rotated = periodic_value(&lp.rotate(1).unwrap(), PREC).unwrap();
        prop_assert!((to_f64(&rotated.value) - to_f64(&once.value)).abs() < 1e-40);
    }

    #[test]
    fn expansion_round_trip(x in 0.001f64..50.0, n in 1usize..30) {
        let xr = PREC.from_f64(x);
        let cf = expand(&xr, n, PREC).unwrap();
        prop_assert!(convergents_error_ok(&cf, &xr, PREC));
    }

    #[test]
    fn hall_digits_bounded(x in 4.5f64..40.0) {
        let xr = PREC.from_f64(x);
        let h = hall_decompose(&xr, 80, PREC).unwrap();
        prop_assert!(h.a.iter().chain(&h.b).all(|c| (1..=4).contains(c)));
        prop_assert!((to_f64(&h.value(PREC)) - x).abs() < 1e-12);
    }

    #[test]
    fn multiplicity_covariance(o in origami(), g in gen(), p in -12i64..12, q in 0i64..12) {
        prop_assume!(num_gcd(p, q) == 1);
        let m = g.matrix();
        let (p2, q2) = (m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q);
        prop_assert_eq!(o.multiplicity(p, q).unwrap(), o.act(g).multiplicity(p2, q2).unwrap());
    }

    #[test]
    fn cusp_invariance(o in origami()) {
        let g = OrbitGraph::build(&o);
        let prof = g.profile();
        // T fixes the horizontal direction and V the vertical one
        for cusp in g.cusps().cusps {
            prop_assert!(cusp.iter().all(|&v| prof.horizontal[v] == prof.horizontal[cusp[0]]));
        }
        for v in 0..g.len() {
            prop_assert_eq!(prof.vertical[g.step(v, Move::V)], prof.vertical[v]);
        }
    }

    #[test]
    fn orbit_invariant_under_relabeling(o in origami(), seed in any::<u64>()) {
        let n = o.n();
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            sigma.swap(i, (s >> 33) as usize % (i + 1));
        }
        let o2 = relabeled(&o, &sigma);
        prop_assert_eq!(o.canonical(), o2.canonical());
        let (g1, g2) = (OrbitGraph::build(&o), OrbitGraph::build(&o2));
        prop_assert_eq!(g1.len(), g2.len());
        let (mut w1, mut w2) = (g1.cusps().widths, g2.cusps().widths);
        w1.sort_unstable();
        w2.sort_unstable();
        prop_assert_eq!(w1, w2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hall_certificate_holds(o in origami(), extra in 0.1f64..6.0) {
        let prof = OrbitGraph::build(&o).profile();
        let p = OrbitGraph::build(&o).cusps().p_max;
        let threshold = ((2 * prof.m_plus * prof.m_plus + 1).max(7).max(p + 2)) as f64;
        let ray = hall_ray_alpha(&o, &PREC.from_f64(threshold + extra), 12, PREC).unwrap();
        prop_assert!(ray.certificate.holds(), "{:?}", ray.certificate);
        prop_assert!(ray.decomposition.x0 >= 6.max(p as i64 + 1));
    }
}

/// `|x − p_n/q_n| < 1/q_n²` for the last convergent.
fn convergents_error_ok(cf: &CfExpansion, x: &Real, prec: Precision) -> bool {
    let q = to_f64(
        &Real::from(cf.convergents().pop().unwrap().q)
            .with_precision(64)
            .value(),
    );
    let err = to_f64(&(cf.value(prec) - x)).abs();
    cf.terminated && err < 1e-60 || err < 1.0 / (q * q)
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn enumeration_is_rotation_and_base_invariant() {
    use lagrange_core::spectrum::enumerate_periodic_values;
    let a = RauzyClass::generate(&PermutationPair::parse("A B C/C B A").unwrap()).unwrap();
    let class_member = a.members[a.len() - 1].clone();
    let b = RauzyClass::generate(&class_member).unwrap();
    let va: Vec<f64> = enumerate_periodic_values(&a, 8, PREC)
        .unwrap()
        .iter()
        .map(|v| to_f64(&v.value))
        .collect();
    let vb: Vec<f64> = enumerate_periodic_values(&b, 8, PREC)
        .unwrap()
        .iter()
        .map(|v| to_f64(&v.value))
        .collect();
    assert_eq!(va.len(), vb.len());
    for (x, y) in va.iter().zip(&vb) {
        assert!((x - y).abs() < 1e-9);
    }
}
