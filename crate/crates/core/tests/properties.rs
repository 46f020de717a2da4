use knotcert::braid::{self, BraidWord};
use knotcert::linalg::{alexander_from_seifert, symmetric_signature, IntMatrix};
use knotcert::{oracle, parse, Engine, KnotExpr, Knowledge};
use num_bigint::BigInt;
use proptest::prelude::*;

fn coprime(p: i64, q: i64) -> bool {
    num_integer::gcd(p, q) == 1
}

fn torus() -> impl Strategy<Value = KnotExpr> {
    (2i64..=4, 2i64..=7, any::<bool>())
        .prop_filter("coprime", |(p, q, _)| coprime(*p, *q))
        .prop_map(|(p, q, neg)| KnotExpr::torus(p, if neg { -q } else { q }))
}

fn expr() -> impl Strategy<Value = KnotExpr> {
    let leaf = prop_oneof![1 => Just(KnotExpr::Unknot), 6 => torus()];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotExpr::mirror),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| KnotExpr::sum(a, b)),
            (-4i64..=3, inner).prop_map(|(n, k)| KnotExpr::cable(2 * n + 1, k)),
        ]
    })
}

fn symmetric(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(-6i64..=6, n * n).prop_map(move |v| {
            let mut m = IntMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, BigInt::from(v[i * n + j]));
                    m.set(j, i, BigInt::from(v[i * n + j]));
                }
            }
            m
        })
    })
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let letter = (1..n as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
            (Just(n), proptest::collection::vec(letter, 1..=12))
        })
        .prop_filter_map("closure is a knot", |(n, letters)| {
            let w = BraidWord::new(n, letters).ok()?;
            (braid::closure_components(&w) == 1).then_some(w)
        })
}

fn sigma(w: &BraidWord) -> i64 {
    symmetric_signature(&braid::seifert_matrix(w).unwrap().symmetrized()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn render_then_parse_is_identity(e in expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e.clone());
        let n = e.normalize();
        prop_assert_eq!(parse(&n.to_string()).unwrap(), n);
    }

    #[test]
    fn normalize_is_idempotent_and_preserves_invariants(e in expr()) {
        let engine = Engine::global();
        let n = e.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(engine.sigma_of(&e).unwrap(), engine.sigma_of(&n).unwrap());
        prop_assert_eq!(engine.alexander_of(&e).unwrap(), engine.alexander_of(&n).unwrap());
        // normalization can only sharpen what is known
        if let Some(t) = engine.tau_of(&e).exact() {
            prop_assert_eq!(engine.tau_of(&n), Knowledge::Exact(t));
        }
    }

    #[test]
    fn mirror_negates(e in expr()) {
        let engine = Engine::global();
        let r = engine.invariants(&e).unwrap();
        let m = engine.invariants(&KnotExpr::mirror(e)).unwrap();
        prop_assert_eq!(m.sigma, -r.sigma);
        prop_assert_eq!(m.tau, r.tau.map_exact(|t| -t));
        prop_assert_eq!(m.epsilon, r.epsilon.map_exact(|t| -t));
        prop_assert_eq!(m.alexander, r.alexander);
    }

    #[test]
    fn sums_are_additive(a in expr(), b in expr()) {
        let engine = Engine::global();
        let (ra, rb) = (engine.invariants(&a).unwrap(), engine.invariants(&b).unwrap());
        let s = engine.invariants(&KnotExpr::sum(a, b)).unwrap();
        prop_assert_eq!(s.sigma, ra.sigma + rb.sigma);
        prop_assert_eq!(&s.alexander, &(&ra.alexander * &rb.alexander));
        if let (Some(x), Some(y)) = (ra.tau.exact(), rb.tau.exact()) {
            prop_assert_eq!(s.tau, Knowledge::Exact(x + y));
        }
    }

    #[test]
    fn cable_alexander_factorizes(n in -4i64..=3, k in expr()) {
        let engine = Engine::global();
        let q = 2 * n + 1;
        let c = engine.alexander_of(&KnotExpr::cable(q, k.clone())).unwrap();
        let want = &knotcert::invariants::torus_alexander_closed_form(2, q)
            * &engine.alexander_of(&k).unwrap().substitute(2);
        prop_assert_eq!(c, want);
    }

    #[test]
    fn d1_bounds_are_even_and_nonpositive(e in expr()) {
        let d1 = Engine::global().invariants(&e).unwrap().d1;
        let hi = d1.upper().unwrap();
        prop_assert!(hi <= 0 && hi % 2 == 0);
    }

    #[test]
    fn signature_matches_root_counting(m in symmetric(7)) {
        let s = symmetric_signature(&m).unwrap();
        prop_assert_eq!(s, oracle::signature_by_root_count(&m));
        prop_assert!(s.abs() <= oracle::rank(&m) as i64);
        prop_assert_eq!(symmetric_signature(&m.neg()).unwrap(), -s);
    }

    #[test]
    fn signature_of_block_sum_adds(a in symmetric(4), b in symmetric(4)) {
        prop_assert_eq!(
            symmetric_signature(&a.direct_sum(&b)).unwrap(),
            symmetric_signature(&a).unwrap() + symmetric_signature(&b).unwrap()
        );
    }

    #[test]
    fn positive_crossing_change_lowers_signature_by_at_most_two(w in knot_braid(), pick in any::<prop::sample::Index>()) {
        let positive: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i] > 0).collect();
        prop_assume!(!positive.is_empty());
        let idx = positive[pick.index(positive.len())];
        let (plus, minus) = (sigma(&w), sigma(&w.with_flipped(idx)));
        prop_assert!(minus - 2 <= plus && plus <= minus, "{} at {}: {} vs {}", w, idx, plus, minus);
    }

    #[test]
    fn braid_alexander_is_normalized(w in knot_braid()) {
        let d = alexander_from_seifert(&braid::seifert_matrix(&w).unwrap()).unwrap();
        prop_assert!(d.is_symmetric());
        prop_assert_eq!(d.eval_at_one(), BigInt::from(1));
        let m = braid::mirror_braid(&w);
        prop_assert_eq!(alexander_from_seifert(&braid::seifert_matrix(&m).unwrap()).unwrap(), d);
        prop_assert_eq!(sigma(&m), -sigma(&w));
    }
}
