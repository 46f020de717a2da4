//! Concordance invariants of knot expressions, propagated through mirror,
//! connected sum and (2,q)-cabling, with torus-knot base values taken from
//! braid Seifert matrices.
//!
//! `d1` is only ever bounded, never computed: every knot has `d1 <= 0`, and
//! a (2,q)-cable with `q = 4k ± 1 >= 3` has `d1 <= -2k`. (`d1` of any knot is
//! even, being the correction term of an integer homology sphere.)

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::braid::{self, BraidError, BraidWord};
use crate::expr::KnotExpr;
use crate::knowledge::{Contradiction, Knowledge};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

impl From<Contradiction> for EngineError {
    fn from(c: Contradiction) -> Self {
        EngineError::Consistency(c.0)
    }
}

/// Everything the engine knows about one knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    /// Canonical rendering of the knot.
    pub knot: String,
    pub sigma: i64,
    pub tau: Knowledge<i64>,
    pub epsilon: Knowledge<i64>,
    pub alexander: LaurentPoly,
    pub determinant: BigInt,
    pub d1: Knowledge<i64>,
}

pub const SLICE_CLASS: &str = "<slice>";

impl InvariantRecord {
    /// Comparison target standing for every slice knot: σ, τ, ε and d1 all
    /// vanish on the slice concordance class.
    pub fn slice_class() -> Self {
        InvariantRecord {
            knot: SLICE_CLASS.to_string(),
            sigma: 0,
            tau: Knowledge::Exact(0),
            epsilon: Knowledge::Exact(0),
            alexander: LaurentPoly::one(),
            determinant: BigInt::one(),
            d1: Knowledge::Exact(0),
        }
    }

    /// Checks the cross-invariant constraints every record must satisfy.
    pub fn check(&self) -> Result<(), EngineError> {
        let fail = |msg: String| Err(EngineError::Consistency(format!("{}: {msg}", self.knot)));
        if self.sigma.is_odd() {
            return fail(format!("odd signature {}", self.sigma));
        }
        if self.determinant != self.alexander.eval_at_minus_one().abs() {
            return fail(format!(
                "determinant {} differs from |Δ(-1)| for Δ = {}",
                self.determinant, self.alexander
            ));
        }
        if self.determinant.is_even() {
            return fail(format!("even determinant {}", self.determinant));
        }
        if !self.alexander.is_symmetric() || !self.alexander.eval_at_one().is_one() {
            return fail(format!("Alexander polynomial {} is not normalized", self.alexander));
        }
        if let (Some(t), Some(0)) = (self.tau.exact(), self.epsilon.exact()) {
            if t != 0 {
                return fail(format!("tau = {t} with epsilon = 0"));
            }
        }
        if let Some(e) = self.epsilon.exact() {
            if !(-1..=1).contains(&e) {
                return fail(format!("epsilon = {e} out of range"));
            }
        }
        match self.d1.upper() {
            Some(h) if h <= 0 && h.is_even() => {}
            other => return fail(format!("d1 upper bound {other:?} is not an even value <= 0")),
        }
        if self.d1.lower().is_some_and(|l| l.is_odd()) {
            return fail("odd d1 lower bound".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct TorusData {
    sigma: i64,
    alexander: LaurentPoly,
}

/// Invariant calculator with memo tables for torus base data and records.
/// Safe to share between threads.
#[derive(Default)]
pub struct Engine {
    torus: Mutex<HashMap<(i64, i64), TorusData>>,
    records: Mutex<HashMap<String, InvariantRecord>>,
}

/// τ of the torus knot `T(p,q)`; `|q| = 1` gives the unknot.
pub fn torus_tau(p: i64, q: i64) -> i64 {
    let v = (p - 1) * (q.abs() - 1) / 2;
    if q > 0 {
        v
    } else {
        -v
    }
}

/// `t^{-(p-1)(q-1)/2} (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` for
/// coprime `p, q >= 1`. Mirror-invariant, so only `|q|` matters.
pub fn torus_alexander_closed_form(p: i64, q: i64) -> LaurentPoly {
    let q = q.abs();
    let x_minus_one = |k: i64| {
        let mut c = vec![BigInt::from(0); k as usize + 1];
        c[0] = BigInt::from(-1);
        c[k as usize] = BigInt::from(1);
        LaurentPoly::from_dense(0, c)
    };
    let num = x_minus_one(p * q) * x_minus_one(1);
    let den = x_minus_one(p) * x_minus_one(q);
    let quot = num
        .div_exact(&den)
        .expect("cyclotomic quotient is a polynomial for coprime p, q");
    quot.shift(-(p - 1) * (q - 1) / 2)
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared engine.
    pub fn global() -> &'static Engine {
        static ENGINE: OnceLock<Engine> = OnceLock::new();
        ENGINE.get_or_init(Engine::new)
    }

    fn torus_data(&self, p: i64, q: i64) -> Result<TorusData, EngineError> {
        if q.abs() == 1 {
            return Ok(TorusData {
                sigma: 0,
                alexander: LaurentPoly::one(),
            });
        }
        let key = (p, q.abs());
        let cached = self.torus.lock().unwrap().get(&key).cloned();
        let data = match cached {
            Some(d) => d,
            None => {
                let w = braid::torus_braid(p, q.abs())?;
                let v = braid::seifert_matrix(&w)?;
                let sigma = linalg::symmetric_signature(&v.symmetrized())?;
                let alexander = linalg::alexander_from_seifert(&v)?;
                let closed = torus_alexander_closed_form(p, q);
                if alexander != closed {
                    return Err(EngineError::Consistency(format!(
                        "T({p},{q}): braid Alexander polynomial {alexander} differs from closed form {closed}"
                    )));
                }
                let d = TorusData { sigma, alexander };
                self.torus.lock().unwrap().insert(key, d.clone());
                d
            }
        };
        Ok(if q < 0 {
            TorusData {
                sigma: -data.sigma,
                ..data
            }
        } else {
            data
        })
    }

    pub fn sigma_of(&self, e: &KnotExpr) -> Result<i64, EngineError> {
        Ok(match e {
            KnotExpr::Unknot => 0,
            KnotExpr::Torus { p, q } => self.torus_data(*p, *q)?.sigma,
            KnotExpr::Mirror(k) => -self.sigma_of(k)?,
            KnotExpr::Sum(a, b) => self.sigma_of(a)? + self.sigma_of(b)?,
            KnotExpr::Cable { p, q, .. } => self.torus_data(*p, *q)?.sigma,
        })
    }

    pub fn tau_of(&self, e: &KnotExpr) -> Knowledge<i64> {
        match e {
            KnotExpr::Unknot => Knowledge::Exact(0),
            KnotExpr::Torus { p, q } => Knowledge::Exact(torus_tau(*p, *q)),
            KnotExpr::Mirror(k) => self.tau_of(k).negate(),
            KnotExpr::Sum(a, b) => match (self.tau_of(a).exact(), self.tau_of(b).exact()) {
                (Some(x), Some(y)) => Knowledge::Exact(x + y),
                _ => Knowledge::Unknown,
            },
            KnotExpr::Cable { p, q, companion } => {
                let tau = self.tau_of(companion).exact();
                let cases: Vec<i64> = match self.epsilon_of(companion).exact() {
                    Some(eps) => vec![eps],
                    None => match tau {
                        Some(0) | None => vec![-1, 0, 1],
                        Some(_) => vec![-1, 1],
                    },
                };
                let values: Option<Vec<i64>> = cases
                    .into_iter()
                    .map(|eps| cable_tau(*p, *q, tau, eps))
                    .collect();
                match values.as_deref() {
                    Some([first, rest @ ..]) if rest.iter().all(|v| v == first) => {
                        Knowledge::Exact(*first)
                    }
                    _ => Knowledge::Unknown,
                }
            }
        }
    }

    /// ε. A sum keeps the common sign of its nonzero summands, and a cable
    /// inherits a nonzero companion ε.
    pub fn epsilon_of(&self, e: &KnotExpr) -> Knowledge<i64> {
        match e {
            KnotExpr::Unknot => Knowledge::Exact(0),
            KnotExpr::Torus { q, .. } => Knowledge::Exact(q.signum()),
            KnotExpr::Mirror(k) => self.epsilon_of(k).negate(),
            KnotExpr::Sum(a, b) => match (self.epsilon_of(a).exact(), self.epsilon_of(b).exact()) {
                (Some(x), Some(y)) if x == y || y == 0 => Knowledge::Exact(x),
                (Some(0), Some(y)) => Knowledge::Exact(y),
                _ => Knowledge::Unknown,
            },
            KnotExpr::Cable { p, q, companion } => match self.epsilon_of(companion).exact() {
                Some(0) => Knowledge::Exact(torus_tau(*p, *q).signum()),
                Some(eps) => Knowledge::Exact(eps),
                None => Knowledge::Unknown,
            },
        }
    }

    pub fn alexander_of(&self, e: &KnotExpr) -> Result<LaurentPoly, EngineError> {
        Ok(match e {
            KnotExpr::Unknot => LaurentPoly::one(),
            KnotExpr::Torus { p, q } => self.torus_data(*p, *q)?.alexander,
            KnotExpr::Mirror(k) => self.alexander_of(k)?,
            KnotExpr::Sum(a, b) => self.alexander_of(a)? * self.alexander_of(b)?,
            KnotExpr::Cable { p, q, companion } => {
                let pattern = self.torus_data(*p, *q)?.alexander;
                pattern * self.alexander_of(companion)?.substitute(*p as u32)
            }
        })
    }

    pub fn d1_bounds_of(&self, e: &KnotExpr) -> Knowledge<i64> {
        let universal = Knowledge::at_most(0);
        match e {
            KnotExpr::Unknot => Knowledge::Exact(0),
            KnotExpr::Cable { p: 2, q, .. } if *q >= 3 => {
                // q = 2n + 1 = 4k ± 1 with k = ceil(n / 2)
                let n = (q - 1) / 2;
                let k = (n + 1) / 2;
                universal
                    .merge(&Knowledge::at_most(-2 * k))
                    .expect("cable bound lies inside the universal bound")
            }
            _ => universal,
        }
    }

    /// All invariants of the normal form of `e`, memoized by canonical key.
    pub fn invariants(&self, e: &KnotExpr) -> Result<InvariantRecord, EngineError> {
        let n = e.normalize();
        let key = n.to_string();
        if let Some(r) = self.records.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let alexander = self.alexander_of(&n)?;
        let rec = InvariantRecord {
            knot: key.clone(),
            sigma: self.sigma_of(&n)?,
            tau: self.tau_of(&n),
            epsilon: self.epsilon_of(&n),
            determinant: alexander.eval_at_minus_one().abs(),
            alexander,
            d1: self.d1_bounds_of(&n),
        };
        rec.check()?;
        self.records.lock().unwrap().insert(key, rec.clone());
        Ok(rec)
    }

    /// Recomputes σ and Δ from a braid realizing `e` and compares them with
    /// the symbolic values.
    pub fn crosscheck(&self, e: &KnotExpr) -> Result<ConsistencyReport, EngineError> {
        let rec = self.invariants(e)?;
        let w = braid_for(e)?;
        let v = braid::seifert_matrix(&w)?;
        let braid_sigma = linalg::symmetric_signature(&v.symmetrized())?;
        let braid_alexander = linalg::alexander_from_seifert(&v)?;
        Ok(ConsistencyReport {
            knot: rec.knot,
            braid: w,
            sigma_agrees: braid_sigma == rec.sigma,
            alexander_agrees: braid_alexander == rec.alexander,
            symbolic_sigma: rec.sigma,
            braid_sigma,
            symbolic_alexander: rec.alexander,
            braid_alexander,
        })
    }
}

/// Cabling formula for τ of the (p,q)-cable, given the companion's τ
/// and ε. `None` when τ of the companion is needed but unknown.
pub fn cable_tau(p: i64, q: i64, tau: Option<i64>, eps: i64) -> Option<i64> {
    match eps {
        1 => Some(p * tau? + (p - 1) * (q - 1) / 2),
        -1 => Some(p * tau? + (p - 1) * (q + 1) / 2),
        _ => Some(torus_tau(p, q)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub knot: String,
    pub braid: BraidWord,
    pub symbolic_sigma: i64,
    pub braid_sigma: i64,
    pub symbolic_alexander: LaurentPoly,
    pub braid_alexander: LaurentPoly,
    pub sigma_agrees: bool,
    pub alexander_agrees: bool,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.sigma_agrees && self.alexander_agrees
    }
}

/// A braid word whose closure is the knot `e`.
pub fn braid_for(e: &KnotExpr) -> Result<BraidWord, BraidError> {
    let w = match e {
        KnotExpr::Unknot => BraidWord::unknot(),
        KnotExpr::Torus { p, q } => braid::torus_braid(*p, *q)?,
        KnotExpr::Mirror(k) => braid::mirror_braid(&braid_for(k)?),
        KnotExpr::Sum(a, b) => braid::sum_braid(&braid_for(a)?, &braid_for(b)?)?,
        KnotExpr::Cable { q, companion, .. } => braid::cable2_braid(&braid_for(companion)?, *q)?,
    };
    w.check_cap()?;
    Ok(w)
}

pub fn invariants(e: &KnotExpr) -> Result<InvariantRecord, EngineError> {
    Engine::global().invariants(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn t(p: i64, q: i64) -> KnotExpr {
        KnotExpr::torus(p, q)
    }

    fn tref() -> LaurentPoly {
        LaurentPoly::from_i64s(-1, &[1, -1, 1])
    }

    #[test]
    fn sigma_rules() {
        let en = Engine::new();
        assert_eq!(en.sigma_of(&t(2, 3)), Ok(-2));
        assert_eq!(en.sigma_of(&KnotExpr::cable(7, t(2, -5))), Ok(-6));
        assert_eq!(en.sigma_of(&t(2, -5)), Ok(4));
        assert_eq!(en.sigma_of(&KnotExpr::mirror(t(3, 4))), Ok(6));
    }

    #[test]
    fn tau_rules() {
        let en = Engine::new();
        assert_eq!(en.tau_of(&t(2, -5)), Knowledge::Exact(-2));
        assert_eq!(en.tau_of(&KnotExpr::cable(3, t(2, -5))), Knowledge::Exact(-2));
        assert_eq!(en.tau_of(&KnotExpr::sum(t(2, 3), t(2, -5))), Knowledge::Exact(-1));
        assert_eq!(en.tau_of(&t(3, 4)), Knowledge::Exact(3));
        // ε unknown for the companion: the three cases disagree
        let slice = KnotExpr::sum(t(2, 3), t(2, -3));
        assert_eq!(en.tau_of(&slice), Knowledge::Exact(0));
        assert_eq!(en.tau_of(&KnotExpr::cable(3, slice)), Knowledge::Unknown);
        // companion with ε = 0 falls into the torus-knot case
        assert_eq!(en.tau_of(&KnotExpr::cable(5, KnotExpr::Unknot)), Knowledge::Exact(2));
    }

    #[test]
    fn epsilon_rules() {
        let en = Engine::new();
        assert_eq!(en.epsilon_of(&t(2, -5)), Knowledge::Exact(-1));
        assert_eq!(en.epsilon_of(&KnotExpr::Unknot), Knowledge::Exact(0));
        assert_eq!(en.epsilon_of(&KnotExpr::sum(t(2, 3), t(2, -3))), Knowledge::Unknown);
        assert_eq!(en.epsilon_of(&KnotExpr::sum(t(2, 3), t(3, 4))), Knowledge::Exact(1));
        assert_eq!(en.epsilon_of(&KnotExpr::sum(KnotExpr::Unknot, t(2, -3))), Knowledge::Exact(-1));
        assert_eq!(en.epsilon_of(&KnotExpr::cable(-3, KnotExpr::Unknot)), Knowledge::Exact(-1));
        assert_eq!(en.epsilon_of(&KnotExpr::cable(1, KnotExpr::Unknot)), Knowledge::Exact(0));
        assert_eq!(en.epsilon_of(&KnotExpr::cable(-3, t(2, 3))), Knowledge::Exact(1));
    }

    #[test]
    fn alexander_rules() {
        let en = Engine::new();
        assert_eq!(en.alexander_of(&t(2, 3)), Ok(tref()));
        let t25_sq = LaurentPoly::from_i64s(-4, &[1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(en.alexander_of(&KnotExpr::cable(3, t(2, -5))), Ok(tref() * t25_sq));
    }

    #[test]
    fn d1_rules() {
        let en = Engine::new();
        assert_eq!(en.d1_bounds_of(&KnotExpr::Unknot), Knowledge::Exact(0));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(3, t(2, -5))), Knowledge::at_most(-2));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(5, t(2, -5))), Knowledge::at_most(-2));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(7, t(2, -5))), Knowledge::at_most(-4));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(9, t(2, 3))), Knowledge::at_most(-4));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(1, t(2, 3))), Knowledge::at_most(0));
        assert_eq!(en.d1_bounds_of(&KnotExpr::cable(-3, t(2, 3))), Knowledge::at_most(0));
        assert_eq!(en.d1_bounds_of(&t(2, 3)), Knowledge::at_most(0));
    }

    #[test]
    fn record_examples() {
        let en = Engine::new();
        let r = en.invariants(&KnotExpr::cable(3, t(2, -5))).unwrap();
        assert_eq!(r.sigma, -2);
        assert_eq!(r.tau, Knowledge::Exact(-2));
        assert_eq!(r.epsilon, Knowledge::Exact(-1));
        assert_eq!(r.determinant, BigInt::from(3));
        assert_eq!(r.d1, Knowledge::at_most(-2));

        let u = en.invariants(&KnotExpr::Unknot).unwrap();
        assert_eq!(u, InvariantRecord { knot: "unknot".into(), ..InvariantRecord::slice_class() });

        let tr = en.invariants(&t(2, 3)).unwrap();
        assert_eq!(
            (tr.sigma, tr.tau, tr.epsilon, tr.alexander.clone(), tr.determinant.clone(), tr.d1),
            (-2, Knowledge::Exact(1), Knowledge::Exact(1), tref(), BigInt::from(3), Knowledge::at_most(0))
        );
    }

    #[test]
    fn consistency_trap_fires() {
        let mut r = InvariantRecord::slice_class();
        r.tau = Knowledge::Exact(2);
        assert!(matches!(r.check(), Err(EngineError::Consistency(_))));
        let mut r = InvariantRecord::slice_class();
        r.determinant = BigInt::from(3);
        assert!(r.check().is_err());
    }

    #[test]
    fn crosscheck_examples() {
        let en = Engine::new();
        for text in [
            "torus(2,7)",
            "cable(2,3,torus(2,3))",
            "torus(2,3) # mirror(torus(2,3))",
            "mirror(cable(2,-5,torus(3,4)))",
        ] {
            let rep = en.crosscheck(&parse(text).unwrap()).unwrap();
            assert!(rep.agrees(), "{text}: {rep:?}");
        }
        let rep = en.crosscheck(&t(2, 7)).unwrap();
        assert_eq!((rep.symbolic_sigma, rep.braid_sigma), (-6, -6));
    }

    #[test]
    fn torus_closed_form() {
        assert_eq!(torus_alexander_closed_form(2, 3), tref());
        assert_eq!(torus_alexander_closed_form(2, -3), tref());
        assert_eq!(
            torus_alexander_closed_form(3, 4),
            LaurentPoly::from_i64s(-3, &[1, -1, 0, 1, 0, -1, 1])
        );
    }
}
