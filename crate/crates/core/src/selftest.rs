//! Seeded property suites run by `knotcert selftest`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{self, BraidWord};
use crate::expr::{parse, KnotExpr};
use crate::invariants::{braid_for, cable_tau, Engine};
use crate::knowledge::Knowledge;
use crate::linalg::{self, IntMatrix};
use crate::oracle;
use crate::verdict::{self, thm1_admissible_range, verdict_bundle};
use crate::InvariantRecord;

/// Letter budget for randomized braid cross-checks; the polynomial
/// determinant dominates beyond this.
pub const CROSSCHECK_LETTERS: usize = 90;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn rng_for(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ suite)
}

/// Random braid on `2..=max_strands` strands with at most `max_letters`
/// letters whose closure is a knot.
pub fn random_knot_braid(rng: &mut impl Rng, max_strands: usize, max_letters: usize) -> BraidWord {
    loop {
        let n = rng.gen_range(2..=max_strands);
        let len = rng.gen_range(n - 1..=max_letters.max(n - 1));
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let w = BraidWord::new(n, letters).expect("letters in range");
        if braid::closure_components(&w) == 1 {
            return w;
        }
    }
}

pub fn random_symmetric(rng: &mut impl Rng, max_dim: usize, max_abs: i64) -> IntMatrix {
    let n = rng.gen_range(0..=max_dim);
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(rng.gen_range(-max_abs..=max_abs));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

fn random_torus(rng: &mut impl Rng) -> KnotExpr {
    loop {
        let p = rng.gen_range(2..=4);
        let q = rng.gen_range(2..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if p.gcd(&q) == 1 {
            return KnotExpr::torus(p, q);
        }
    }
}

/// Random valid expression of depth at most `depth`.
pub fn random_expr(rng: &mut impl Rng, depth: usize) -> KnotExpr {
    if depth <= 1 {
        return if rng.gen_ratio(1, 8) {
            KnotExpr::Unknot
        } else {
            random_torus(rng)
        };
    }
    match rng.gen_range(0..10) {
        0..=2 => random_torus(rng),
        3 => KnotExpr::Unknot,
        4 | 5 => KnotExpr::mirror(random_expr(rng, depth - 1)),
        6 | 7 => KnotExpr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => {
            let q = 2 * rng.gen_range(-4..=3) + 1;
            KnotExpr::cable(q, random_expr(rng, depth - 1))
        }
    }
}

fn alexander_of_braid(w: &BraidWord) -> Result<(i64, linalg::IntMatrix, crate::LaurentPoly), String> {
    let v = braid::seifert_matrix(w).map_err(|e| e.to_string())?;
    let s = linalg::symmetric_signature(&v.symmetrized()).map_err(|e| e.to_string())?;
    let d = linalg::alexander_from_seifert(&v).map_err(|e| e.to_string())?;
    Ok((s, v, d))
}

pub fn suite_expressions(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("expr: render/parse round trip, normalize idempotent");
    let mut rng = rng_for(seed, 1);
    for _ in 0..cases {
        let e = random_expr(&mut rng, 6);
        let n = e.normalize();
        r.check(parse(&n.to_string()).as_ref() == Ok(&n), || format!("round trip of {n}"));
        r.check(parse(&e.to_string()).as_ref() == Ok(&e), || format!("round trip of {e}"));
        r.check(n.normalize() == n, || format!("normalize not idempotent on {e}"));
    }
    r
}

pub fn suite_signature_oracle(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("linalg: congruence signature vs root counting");
    let mut rng = rng_for(seed, 2);
    for _ in 0..cases {
        let m = random_symmetric(&mut rng, 8, 9);
        let fast = linalg::symmetric_signature(&m);
        let slow = oracle::signature_by_root_count(&m);
        r.check(fast == Ok(slow), || format!("{m}: {fast:?} vs {slow}"));
        let rk = oracle::rank(&m) as i64;
        r.check(slow.abs() <= rk, || format!("{m}: |signature| > rank"));
        r.check(linalg::symmetric_signature(&m.neg()) == Ok(-slow), || format!("{m}: signature(-M)"));
    }
    r
}

pub fn suite_braid_alexander(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("braid: Seifert form, Alexander normalization, mirror");
    let mut rng = rng_for(seed, 3);
    for _ in 0..cases {
        let w = random_knot_braid(&mut rng, 6, 14);
        let (s, v, d) = match alexander_of_braid(&w) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || format!("{w}: {e}"));
                continue;
            }
        };
        r.check(v.dim() + w.strands() == w.len() + 1, || format!("{w}: rank {}", v.dim()));
        r.check(s.is_even(), || format!("{w}: odd signature {s}"));
        let det = linalg::det_int(&v.symmetrized());
        r.check(det.is_odd(), || format!("{w}: even determinant {det}"));
        r.check(d.eval_at_minus_one().abs() == det.abs(), || format!("{w}: |Δ(-1)| ≠ |det|"));
        r.check(d.is_symmetric() && d.eval_at_one().is_one(), || format!("{w}: Δ = {d}"));
        match alexander_of_braid(&braid::mirror_braid(&w)) {
            Ok((ms, _, md)) => r.check(ms == -s && md == d, || format!("{w}: mirror gives σ {ms}, Δ {md}")),
            Err(e) => r.check(false, || format!("{w} mirror: {e}")),
        }
    }
    r
}

/// Positive crossing change `K+ -> K-`: σ(K-) - 2 <= σ(K+) <= σ(K-).
pub fn suite_skein(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("braid: skein inequality under positive crossing change");
    let mut rng = rng_for(seed, 4);
    let mut done = 0;
    while done < cases {
        let w = random_knot_braid(&mut rng, 5, 12);
        let positive: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i] > 0).collect();
        let Some(&idx) = positive.choose(&mut rng) else {
            continue;
        };
        done += 1;
        let flipped = w.with_flipped(idx);
        match (alexander_of_braid(&w), alexander_of_braid(&flipped)) {
            (Ok((plus, ..)), Ok((minus, ..))) => {
                let diff = minus - plus;
                r.check(diff == 0 || diff == 2, || format!("{w} flip {idx}: σ {plus} -> {minus}"));
            }
            (a, b) => r.check(false, || format!("{w}: {:?} / {:?}", a.err(), b.err())),
        }
    }
    r
}

/// Expressions for the symbolic-vs-diagram comparison: all torus knots with
/// `p <= 4`, `|q| <= 9`, their mirrors, and cables of small torus knots.
pub fn crosscheck_corpus() -> Vec<KnotExpr> {
    let mut out = Vec::new();
    for p in 2..=4i64 {
        for q in (-9..=9i64).filter(|q| q.abs() >= 2 && p.gcd(q) == 1) {
            out.push(KnotExpr::torus(p, q));
            out.push(KnotExpr::mirror(KnotExpr::torus(p, q)));
        }
    }
    for companion in [3, -3, 5, -5] {
        for q in [-5, -3, 3, 5, 7] {
            out.push(KnotExpr::cable(q, KnotExpr::torus(2, companion)));
        }
    }
    out
}

pub fn suite_crosscheck(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("engine: symbolic σ, Δ vs braid Seifert matrix");
    let engine = Engine::global();
    let run = |r: &mut SuiteResult, e: &KnotExpr| match engine.crosscheck(e) {
        Ok(rep) => r.check(rep.agrees(), || format!("{e}: {rep:?}")),
        Err(err) => r.check(false, || format!("{e}: {err}")),
    };
    for e in crosscheck_corpus() {
        run(&mut r, &e);
    }
    let mut rng = rng_for(seed, 5);
    let tori: Vec<KnotExpr> = crosscheck_corpus()
        .into_iter()
        .filter(|e| matches!(e, KnotExpr::Torus { .. }))
        .collect();
    for _ in 0..20 {
        let a = tori.choose(&mut rng).unwrap().clone();
        let b = tori.choose(&mut rng).unwrap().clone();
        run(&mut r, &KnotExpr::sum(a, b));
    }
    for _ in 0..cases / 4 {
        let e = random_expr(&mut rng, 3);
        match braid_for(&e) {
            Ok(w) if w.len() <= CROSSCHECK_LETTERS => run(&mut r, &e),
            _ => r.skipped += 1,
        }
    }
    r
}

pub fn suite_invariant_rules(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("engine: mirror, additivity, cable identity, normal form");
    let engine = Engine::global();
    let mut rng = rng_for(seed, 6);
    for _ in 0..cases {
        let e = random_expr(&mut rng, 4);
        let (Ok(rec), Ok(mrec)) = (
            engine.invariants(&e),
            engine.invariants(&KnotExpr::mirror(e.clone())),
        ) else {
            r.check(false, || format!("{e}: engine error"));
            continue;
        };
        r.check(mrec.sigma == -rec.sigma, || format!("{e}: σ mirror"));
        r.check(mrec.tau == rec.tau.map_exact(|t| -t), || format!("{e}: τ mirror"));
        r.check(mrec.epsilon == rec.epsilon.map_exact(|t| -t), || format!("{e}: ε mirror"));
        r.check(mrec.alexander == rec.alexander, || format!("{e}: Δ mirror"));
        r.check(
            engine.sigma_of(&e) == Ok(rec.sigma)
                && engine.tau_of(&e) == rec.tau
                && engine.epsilon_of(&e) == rec.epsilon
                && engine.alexander_of(&e).as_ref() == Ok(&rec.alexander),
            || format!("{e}: raw and normalized rules disagree"),
        );
        r.check(
            rec.d1.upper().is_some_and(|h| h <= 0 && h.is_even()),
            || format!("{e}: d1 = {}", rec.d1),
        );

        let f = random_expr(&mut rng, 3);
        if let (Ok(frec), Ok(srec)) = (engine.invariants(&f), engine.invariants(&KnotExpr::sum(e.clone(), f.clone()))) {
            r.check(srec.sigma == rec.sigma + frec.sigma, || format!("{e} # {f}: σ additivity"));
            if let (Some(a), Some(b)) = (rec.tau.exact(), frec.tau.exact()) {
                r.check(srec.tau == Knowledge::Exact(a + b), || format!("{e} # {f}: τ additivity"));
            }
        }

        if let (Some(tau), Some(eps)) = (rec.tau.exact(), rec.epsilon.exact()) {
            if eps != 0 {
                let n = rng.gen_range(-3..=4);
                let c = engine.tau_of(&KnotExpr::cable(2 * n + 1, e.normalize()));
                // 2τ + n - (ε - 1)/2
                let expected = 2 * tau + n - (eps - 1) / 2;
                r.check(c == Knowledge::Exact(expected), || format!("{e}, n = {n}: cable τ {c}"));
                r.check(cable_tau(2, 2 * n + 1, Some(tau), eps) == Some(expected), || "cable_tau".into());
            }
        }
    }
    r
}

pub fn suite_verdicts(seed: u64, cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("verdicts: self-audit, admissible cable ranges");
    let engine = Engine::global();
    let mut rng = rng_for(seed, 7);
    let slice = InvariantRecord::slice_class();
    for _ in 0..cases {
        let e = random_expr(&mut rng, 4);
        let f = random_expr(&mut rng, 3);
        let target = match engine.invariants(&f) {
            Ok(t) => t,
            Err(err) => {
                r.check(false, || format!("{f}: {err}"));
                continue;
            }
        };
        for t in [&slice, &target] {
            match verdict_bundle(engine, &e, t) {
                Ok(b) => r.check(b.audit().is_ok(), || format!("{e}: audit")),
                Err(err) => r.check(false, || format!("{e} vs {}: {err}", t.knot)),
            }
        }
        let rec = match engine.invariants(&e) {
            Ok(x) => x,
            Err(_) => continue,
        };
        if rec.tau.exact().is_some_and(|t| t < 0 && t > -6) && rec.epsilon.exact().is_some() {
            match thm1_admissible_range(engine, &e) {
                Ok(range) => r.check(
                    range.cables.iter().all(|c| c.bundle.all_proved()),
                    || format!("{e}: admissible cable not fully obstructed"),
                ),
                Err(err) => r.check(false, || format!("{e}: {err}")),
            }
        }
    }
    r
}

pub fn suite_families(_seed: u64, _cases: usize) -> SuiteResult {
    let mut r = SuiteResult::new("verdicts: infinite-family certificates");
    let engine = Engine::global();
    for base in [KnotExpr::Unknot, KnotExpr::torus(2, 3), KnotExpr::torus(3, -4)] {
        match verdict::thm2_family(engine, &base, 5) {
            Ok(fam) => {
                r.check(fam.pairwise_distinct, || format!("{base}: Δ collision"));
                let base_tau = fam.base.tau.exact().unwrap_or_default();
                for m in &fam.members {
                    r.check(
                        m.record.sigma == fam.base.sigma - 2
                            && m.record.tau == Knowledge::Exact(base_tau - 2 * m.index),
                        || format!("{base}: member {}", m.index),
                    );
                }
            }
            Err(err) => r.check(false, || format!("{base}: {err}")),
        }
    }
    r
}

pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    vec![
        suite_expressions(seed, cases),
        suite_signature_oracle(seed, cases),
        suite_braid_alexander(seed, cases),
        suite_skein(seed, cases),
        suite_crosscheck(seed, cases),
        suite_invariant_rules(seed, cases),
        suite_verdicts(seed, cases),
        suite_families(seed, cases),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a: Vec<_> = (0..5).map(|_| ()).scan(rng_for(7, 1), |g, _| Some(random_expr(g, 5))).collect();
        let b: Vec<_> = (0..5).map(|_| ()).scan(rng_for(7, 1), |g, _| Some(random_expr(g, 5))).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|e| e.validate().is_ok()));
    }

    #[test]
    fn small_run_passes() {
        for s in run_all(3, 12) {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
        }
    }
}
