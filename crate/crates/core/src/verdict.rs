//! Obstruction certificates derived from invariant records.
//!
//! Every verdict is one-directional: it either proves an obstruction, with
//! the strict inequality that witnesses it, or reports no information. The
//! engine never claims that a knot is slice or that a deformation exists.
//!
//! Rules:
//! - slice in a negaton ⇒ `d1 = 0` ("Lemma 1") and `τ <= 0` ("Lemma 2");
//! - slice in a positon ⇒ `τ >= 0` ("Lemma 3"), and the mirror is slice in a
//!   negaton ("Lemma 1 (mirror)");
//! - `k_- = 0` ⇒ slice in some positon, `k_+ = 0` ⇒ slice in some negaton
//!   ("Prop 2 contrapositive");
//! - `σ(K1) < σ(K2)` ⇒ no deformation by negative changes only ("Lemma 4");
//! - `τ(K1) < τ(K2)` ⇒ no deformation by positive changes only ("Lemma 5").

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::expr::KnotExpr;
use crate::invariants::{Engine, EngineError, InvariantRecord};
use crate::knowledge::Knowledge;
use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error("hypotheses not established: {0}")]
    Hypotheses(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    NotSliceInNegatons,
    NotSliceInPositons,
    /// `K1` cannot be deformed into `K2` by positive crossing changes only.
    NoOnlyPositiveDeformation,
    /// `K1` cannot be deformed into `K2` by negative crossing changes only.
    NoOnlyNegativeDeformation,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::NotSliceInNegatons => "not_slice_in_negatons",
            Claim::NotSliceInPositons => "not_slice_in_positons",
            Claim::NoOnlyPositiveDeformation => "no_only_positive_deformation",
            Claim::NoOnlyNegativeDeformation => "no_only_negative_deformation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Holds {
    Proved,
    NoInformation,
}

impl Holds {
    pub fn as_str(&self) -> &'static str {
        match self {
            Holds::Proved => "proved",
            Holds::NoInformation => "no-information",
        }
    }
}

/// Which record quantity the two sides of a witness inequality read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `d1(K) <= lhs < 0`
    D1Upper,
    /// `0 < τ(K)`
    TauPositive,
    /// `τ(K) < 0`
    TauNegative,
    /// `d1(K*) <= lhs < 0`
    MirrorD1Upper,
    /// `σ(K1) < σ(K2)`
    SigmaPair,
    /// `τ(K1) < τ(K2)`
    TauPair,
}

/// A strict inequality `lhs < rhs` between concrete values read off records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub quantity: Quantity,
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = (self.lhs, self.rhs);
        match self.quantity {
            Quantity::D1Upper => write!(f, "d1(K) <= {l} < {r}"),
            Quantity::TauPositive => write!(f, "tau(K) = {r} > {l}"),
            Quantity::TauNegative => write!(f, "tau(K) = {l} < {r}"),
            Quantity::MirrorD1Upper => write!(f, "d1(mirror K) <= {l} < {r}"),
            Quantity::SigmaPair => write!(f, "sigma(K1) = {l} < {r} = sigma(K2)"),
            Quantity::TauPair => write!(f, "tau(K1) = {l} < {r} = tau(K2)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub claim: Claim,
    pub holds: Holds,
    pub rule: String,
    pub witness: Option<Witness>,
    /// Explanation when no rule fires.
    pub note: Option<String>,
}

impl Verdict {
    fn proved(claim: Claim, rule: &str, witness: Witness) -> Self {
        Verdict {
            claim,
            holds: Holds::Proved,
            rule: rule.to_string(),
            witness: Some(witness),
            note: None,
        }
    }

    fn no_information(claim: Claim, rule: &str, note: String) -> Self {
        Verdict {
            claim,
            holds: Holds::NoInformation,
            rule: rule.to_string(),
            witness: None,
            note: Some(note),
        }
    }

    pub fn is_proved(&self) -> bool {
        self.holds == Holds::Proved
    }
}

/// Positon and negaton verdicts for `rec`; `mirror_rec` is the record of its
/// mirror image.
pub fn positon_negaton_verdict(
    rec: &InvariantRecord,
    mirror_rec: &InvariantRecord,
) -> (Verdict, Verdict) {
    let negaton = if let Some(h) = rec.d1.upper().filter(|&h| h < 0) {
        Verdict::proved(
            Claim::NotSliceInNegatons,
            "Lemma 1",
            Witness { quantity: Quantity::D1Upper, lhs: h, rhs: 0 },
        )
    } else if let Some(t) = rec.tau.exact().filter(|&t| t > 0) {
        Verdict::proved(
            Claim::NotSliceInNegatons,
            "Lemma 2",
            Witness { quantity: Quantity::TauPositive, lhs: 0, rhs: t },
        )
    } else {
        Verdict::no_information(
            Claim::NotSliceInNegatons,
            "Lemma 1, Lemma 2",
            format!("d1(K) {}, tau(K) {}", describe_d1(&rec.d1), describe(&rec.tau)),
        )
    };
    let positon = if let Some(t) = rec.tau.exact().filter(|&t| t < 0) {
        Verdict::proved(
            Claim::NotSliceInPositons,
            "Lemma 3",
            Witness { quantity: Quantity::TauNegative, lhs: t, rhs: 0 },
        )
    } else if let Some(h) = mirror_rec.d1.upper().filter(|&h| h < 0) {
        Verdict::proved(
            Claim::NotSliceInPositons,
            "Lemma 1 (mirror)",
            Witness { quantity: Quantity::MirrorD1Upper, lhs: h, rhs: 0 },
        )
    } else {
        Verdict::no_information(
            Claim::NotSliceInPositons,
            "Lemma 3, Lemma 1 (mirror)",
            format!("tau(K) {}, d1(mirror K) {}", describe(&rec.tau), describe_d1(&mirror_rec.d1)),
        )
    };
    (positon, negaton)
}

fn describe(k: &Knowledge<i64>) -> String {
    match k {
        Knowledge::Exact(v) => format!("= {v}"),
        other => format!("is {other}"),
    }
}

fn describe_d1(k: &Knowledge<i64>) -> String {
    match k {
        Knowledge::Bounds { lo: None, hi: Some(h) } => format!("<= {h}"),
        other => describe(other),
    }
}

/// Lower bounds on the kinkiness `(k_+, k_-)`; 0 means no information.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KinkinessBounds {
    pub k_plus_lb: u8,
    pub k_minus_lb: u8,
}

pub const KINK_RULE: &str = "Prop 2 contrapositive";

pub fn kinkiness_bounds(positon: &Verdict, negaton: &Verdict) -> KinkinessBounds {
    KinkinessBounds {
        k_plus_lb: u8::from(negaton.is_proved()),
        k_minus_lb: u8::from(positon.is_proved()),
    }
}

/// Verdicts on deforming `K1` into `K2` by crossing changes of one sign:
/// `(only positive impossible, only negative impossible)`.
pub fn one_signed_deformation_verdict(
    rec1: &InvariantRecord,
    rec2: &InvariantRecord,
) -> (Verdict, Verdict) {
    let only_negative = if rec1.sigma < rec2.sigma {
        Verdict::proved(
            Claim::NoOnlyNegativeDeformation,
            "Lemma 4",
            Witness { quantity: Quantity::SigmaPair, lhs: rec1.sigma, rhs: rec2.sigma },
        )
    } else {
        Verdict::no_information(
            Claim::NoOnlyNegativeDeformation,
            "Lemma 4",
            format!("sigma(K1) = {} >= {} = sigma(K2)", rec1.sigma, rec2.sigma),
        )
    };
    let only_positive = match (rec1.tau.exact(), rec2.tau.exact()) {
        (Some(t1), Some(t2)) if t1 < t2 => Verdict::proved(
            Claim::NoOnlyPositiveDeformation,
            "Lemma 5",
            Witness { quantity: Quantity::TauPair, lhs: t1, rhs: t2 },
        ),
        (Some(t1), Some(t2)) => Verdict::no_information(
            Claim::NoOnlyPositiveDeformation,
            "Lemma 5",
            format!("tau(K1) = {t1} >= {t2} = tau(K2)"),
        ),
        _ => Verdict::no_information(
            Claim::NoOnlyPositiveDeformation,
            "Lemma 5",
            format!("tau(K1) {}, tau(K2) {}", describe(&rec1.tau), describe(&rec2.tau)),
        ),
    };
    (only_positive, only_negative)
}

/// Minimum numbers of positive and negative crossing changes in any
/// deformation of `K1` into `K2`.
///
/// A positive change raises σ by 0 or 2 and lowers τ by 0 or 1; a negative
/// change does the reverse. Hence `P >= (σ2 - σ1)/2`, `P >= τ1 - τ2`,
/// `N >= (σ1 - σ2)/2`, `N >= τ2 - τ1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GordianBounds {
    pub n_pos_lb: i64,
    pub n_neg_lb: i64,
}

pub fn signed_gordian_lower_bounds(rec1: &InvariantRecord, rec2: &InvariantRecord) -> GordianBounds {
    let ceil_half = |x: i64| Integer::div_ceil(&x, &2);
    let mut pos = 0.max(ceil_half(rec2.sigma - rec1.sigma));
    let mut neg = 0.max(ceil_half(rec1.sigma - rec2.sigma));
    if let (Some(t1), Some(t2)) = (rec1.tau.exact(), rec2.tau.exact()) {
        pos = pos.max(t1 - t2);
        neg = neg.max(t2 - t1);
    }
    GordianBounds {
        n_pos_lb: pos,
        n_neg_lb: neg,
    }
}

/// Re-evaluates a proved verdict's witness against the records it was
/// derived from. `rec2` is the comparison target for deformation claims and
/// the mirror record for positon/negaton claims.
pub fn audit(v: &Verdict, rec: &InvariantRecord, rec2: &InvariantRecord) -> bool {
    if !v.is_proved() {
        return v.witness.is_none();
    }
    let Some(w) = v.witness else {
        return false;
    };
    let read = match w.quantity {
        Quantity::D1Upper => rec.d1.upper().map(|h| (h, 0)),
        Quantity::TauPositive => rec.tau.exact().map(|t| (0, t)),
        Quantity::TauNegative => rec.tau.exact().map(|t| (t, 0)),
        Quantity::MirrorD1Upper => rec2.d1.upper().map(|h| (h, 0)),
        Quantity::SigmaPair => Some((rec.sigma, rec2.sigma)),
        Quantity::TauPair => rec.tau.exact().zip(rec2.tau.exact()),
    };
    let expected_claim = match w.quantity {
        Quantity::D1Upper | Quantity::TauPositive => Claim::NotSliceInNegatons,
        Quantity::TauNegative | Quantity::MirrorD1Upper => Claim::NotSliceInPositons,
        Quantity::SigmaPair => Claim::NoOnlyNegativeDeformation,
        Quantity::TauPair => Claim::NoOnlyPositiveDeformation,
    };
    read == Some((w.lhs, w.rhs)) && w.lhs < w.rhs && v.claim == expected_claim
}

/// Every obstruction the engine can certify for one knot against a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictBundle {
    pub record: InvariantRecord,
    pub mirror_record: InvariantRecord,
    pub target: InvariantRecord,
    pub positon: Verdict,
    pub negaton: Verdict,
    pub kinkiness: KinkinessBounds,
    pub only_positive: Verdict,
    pub only_negative: Verdict,
    pub gordian: GordianBounds,
}

impl VerdictBundle {
    pub fn verdicts(&self) -> [&Verdict; 4] {
        [&self.positon, &self.negaton, &self.only_positive, &self.only_negative]
    }

    pub fn all_proved(&self) -> bool {
        self.verdicts().iter().all(|v| v.is_proved())
    }

    /// Self-audit of every emitted verdict and of the agreement between the
    /// one-signed verdicts and the signed Gordian bounds.
    pub fn audit(&self) -> Result<(), String> {
        let checks = [
            (&self.positon, &self.mirror_record),
            (&self.negaton, &self.mirror_record),
            (&self.only_positive, &self.target),
            (&self.only_negative, &self.target),
        ];
        for (v, other) in checks {
            if !audit(v, &self.record, other) {
                return Err(format!("{}: verdict {} fails re-evaluation", self.record.knot, v.claim.as_str()));
            }
        }
        if self.kinkiness != kinkiness_bounds(&self.positon, &self.negaton) {
            return Err(format!("{}: kinkiness bounds miswired", self.record.knot));
        }
        if self.only_negative.is_proved() && self.gordian.n_pos_lb < 1 {
            return Err(format!("{}: Lemma 4 fired but n_pos_lb = 0", self.record.knot));
        }
        if self.only_positive.is_proved() && self.gordian.n_neg_lb < 1 {
            return Err(format!("{}: Lemma 5 fired but n_neg_lb = 0", self.record.knot));
        }
        Ok(())
    }
}

pub fn verdict_bundle(
    engine: &Engine,
    expr: &KnotExpr,
    target: &InvariantRecord,
) -> Result<VerdictBundle, EngineError> {
    let record = engine.invariants(expr)?;
    let mirror_record = engine.invariants(&KnotExpr::mirror(expr.clone()))?;
    let (positon, negaton) = positon_negaton_verdict(&record, &mirror_record);
    let kinkiness = kinkiness_bounds(&positon, &negaton);
    let (only_positive, only_negative) = one_signed_deformation_verdict(&record, target);
    let gordian = signed_gordian_lower_bounds(&record, target);
    let bundle = VerdictBundle {
        record,
        mirror_record,
        target: target.clone(),
        positon,
        negaton,
        kinkiness,
        only_positive,
        only_negative,
        gordian,
    };
    bundle.audit().map_err(EngineError::Consistency)?;
    Ok(bundle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCable {
    pub n: i64,
    pub cable: KnotExpr,
    pub bundle: VerdictBundle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm1Range {
    pub base: InvariantRecord,
    pub tau: i64,
    pub epsilon: i64,
    pub cables: Vec<AdmissibleCable>,
}

/// All `n` with `0 < n < -2τ(K) + (ε(K) - 1)/2`, each with the verdicts for
/// the (2, 2n+1)-cable against the slice class. Every such cable must be
/// fully obstructed; anything less is reported as a consistency violation.
pub fn thm1_admissible_range(engine: &Engine, expr: &KnotExpr) -> Result<Thm1Range, VerdictError> {
    let base = engine.invariants(expr)?;
    let tau = match base.tau {
        Knowledge::Exact(t) if t < 0 => t,
        Knowledge::Exact(t) => return Err(VerdictError::Hypotheses(format!("τ = {t} ≥ 0"))),
        other => return Err(VerdictError::Hypotheses(format!("τ is {other}"))),
    };
    let epsilon = base
        .epsilon
        .exact()
        .ok_or_else(|| VerdictError::Hypotheses(format!("ε is {}", base.epsilon)))?;
    let slice = InvariantRecord::slice_class();
    let mut cables = Vec::new();
    // 2n < -4τ + ε - 1 is the range condition with denominators cleared
    let mut n = 1;
    while 2 * n < -4 * tau + epsilon - 1 {
        let cable = KnotExpr::cable(2 * n + 1, expr.clone());
        let bundle = verdict_bundle(engine, &cable, &slice)?;
        let k = bundle.kinkiness;
        if !bundle.all_proved() || k.k_plus_lb < 1 || k.k_minus_lb < 1 {
            return Err(EngineError::Consistency(format!(
                "admissible cable {} not fully obstructed",
                bundle.record.knot
            ))
            .into());
        }
        cables.push(AdmissibleCable { n, cable, bundle });
        n += 1;
    }
    Ok(Thm1Range { base, tau, epsilon, cables })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub index: i64,
    pub expr: KnotExpr,
    pub record: InvariantRecord,
    pub sigma_witness: Witness,
    pub tau_witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub base: InvariantRecord,
    pub members: Vec<FamilyMember>,
    /// Every pair of members has different normalized Alexander polynomials.
    pub pairwise_distinct: bool,
}

/// The knot `(T(2,-2i-3))_{2,3} # base`.
pub fn thm2_member(base: &KnotExpr, i: i64) -> KnotExpr {
    KnotExpr::sum(KnotExpr::cable(3, KnotExpr::torus(2, -2 * i - 3)), base.clone())
}

/// Members `i = 1..=count`, each with strictly smaller σ and τ than the base
/// and with pairwise distinct Alexander polynomials.
pub fn thm2_family(engine: &Engine, base: &KnotExpr, count: usize) -> Result<FamilyCertificate, VerdictError> {
    let base_rec = engine.invariants(base)?;
    let base_tau = base_rec
        .tau
        .exact()
        .ok_or_else(|| VerdictError::Hypotheses(format!("τ(base) is {}", base_rec.tau)))?;
    let mut members = Vec::with_capacity(count);
    for i in 1..=count as i64 {
        let expr = thm2_member(base, i);
        let record = engine.invariants(&expr)?;
        let tau = record.tau.exact().ok_or_else(|| {
            EngineError::Consistency(format!("τ of family member {} not determined", record.knot))
        })?;
        if record.sigma >= base_rec.sigma || tau >= base_tau {
            return Err(EngineError::Consistency(format!(
                "family member {} does not drop below the base",
                record.knot
            ))
            .into());
        }
        members.push(FamilyMember {
            index: i,
            sigma_witness: Witness { quantity: Quantity::SigmaPair, lhs: record.sigma, rhs: base_rec.sigma },
            tau_witness: Witness { quantity: Quantity::TauPair, lhs: tau, rhs: base_tau },
            expr,
            record,
        });
    }
    let polys: Vec<&LaurentPoly> = members.iter().map(|m| &m.record.alexander).collect();
    let pairwise_distinct = polys
        .iter()
        .enumerate()
        .all(|(i, a)| polys[i + 1..].iter().all(|b| a != b));
    if !pairwise_distinct {
        return Err(EngineError::Consistency("family Alexander polynomials collide".into()).into());
    }
    Ok(FamilyCertificate {
        base: base_rec,
        members,
        pairwise_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rec(text: &str) -> InvariantRecord {
        Engine::global().invariants(&parse(text).unwrap()).unwrap()
    }

    fn pn(text: &str) -> (Verdict, Verdict) {
        let e = parse(text).unwrap();
        positon_negaton_verdict(&rec(text), &Engine::global().invariants(&KnotExpr::mirror(e)).unwrap())
    }

    #[test]
    fn positon_negaton_examples() {
        let (pos, neg) = pn("cable(2,3,torus(2,-5))");
        assert_eq!((pos.holds, pos.rule.as_str()), (Holds::Proved, "Lemma 3"));
        assert_eq!((neg.holds, neg.rule.as_str()), (Holds::Proved, "Lemma 1"));
        assert_eq!(neg.witness.unwrap().to_string(), "d1(K) <= -2 < 0");

        let (pos, neg) = pn("unknot");
        assert!(!pos.is_proved() && !neg.is_proved());

        let (pos, neg) = pn("torus(2,3)");
        assert_eq!((neg.holds, neg.rule.as_str()), (Holds::Proved, "Lemma 2"));
        assert!(!pos.is_proved());
    }

    #[test]
    fn mirror_d1_route() {
        // mirror is cable(2,3,torus(2,-5)), whose d1 is bounded away from 0
        let (pos, neg) = pn("cable(2,-3,torus(2,5))");
        assert!(pos.is_proved());
        assert_eq!(pos.rule, "Lemma 1 (mirror)");
        assert_eq!(pos.witness.unwrap().to_string(), "d1(mirror K) <= -2 < 0");
        assert_eq!(neg.rule, "Lemma 2");
        let (pos, neg) = pn("cable(2,-3,torus(2,3) # torus(2,-3))");
        assert_eq!(pos.rule, "Lemma 1 (mirror)");
        assert!(pos.is_proved());
        assert!(!neg.is_proved());
    }

    #[test]
    fn kinkiness_wiring() {
        let (p, n) = pn("cable(2,3,torus(2,-5))");
        assert_eq!(kinkiness_bounds(&p, &n), KinkinessBounds { k_plus_lb: 1, k_minus_lb: 1 });
        let (p, n) = pn("unknot");
        assert_eq!(kinkiness_bounds(&p, &n), KinkinessBounds { k_plus_lb: 0, k_minus_lb: 0 });
        let (p, n) = pn("torus(2,-3)");
        assert_eq!(kinkiness_bounds(&p, &n), KinkinessBounds { k_plus_lb: 0, k_minus_lb: 1 });
    }

    #[test]
    fn one_signed_examples() {
        let slice = InvariantRecord::slice_class();
        let (pos, neg) = one_signed_deformation_verdict(&rec("cable(2,3,torus(2,-5))"), &slice);
        assert_eq!((pos.rule.as_str(), pos.holds), ("Lemma 5", Holds::Proved));
        assert_eq!((neg.rule.as_str(), neg.holds), ("Lemma 4", Holds::Proved));

        let k = rec("torus(2,7)");
        let (pos, neg) = one_signed_deformation_verdict(&k, &k);
        assert!(!pos.is_proved() && !neg.is_proved());

        let (pos, neg) = one_signed_deformation_verdict(&rec("torus(2,3)"), &slice);
        assert!(neg.is_proved());
        assert!(!pos.is_proved());
    }

    #[test]
    fn gordian_examples() {
        let u = rec("unknot");
        let b = signed_gordian_lower_bounds(&rec("torus(2,-5)"), &u);
        assert_eq!((b.n_pos_lb, b.n_neg_lb), (0, 2));
        let b = signed_gordian_lower_bounds(&u, &u);
        assert_eq!((b.n_pos_lb, b.n_neg_lb), (0, 0));
        let b = signed_gordian_lower_bounds(&rec("torus(2,3) # torus(2,3)"), &u);
        assert_eq!((b.n_pos_lb, b.n_neg_lb), (2, 0));
    }

    #[test]
    fn thm1_examples() {
        let en = Engine::global();
        let r = thm1_admissible_range(en, &parse("torus(2,-5)").unwrap()).unwrap();
        assert_eq!(r.cables.iter().map(|c| c.n).collect::<Vec<_>>(), vec![1, 2]);
        assert!(r.cables.iter().all(|c| c.bundle.all_proved()));
        assert_eq!(
            thm1_admissible_range(en, &parse("torus(2,3)").unwrap()).unwrap_err().to_string(),
            "hypotheses not established: τ = 1 ≥ 0"
        );
        assert!(thm1_admissible_range(en, &parse("torus(2,-3)").unwrap()).unwrap().cables.is_empty());
    }

    #[test]
    fn thm2_examples() {
        let en = Engine::global();
        let fam = thm2_family(en, &KnotExpr::Unknot, 2).unwrap();
        let keys: Vec<_> = fam.members.iter().map(|m| m.record.knot.as_str()).collect();
        assert_eq!(keys, vec!["cable(2,3,torus(2,-5))", "cable(2,3,torus(2,-7))"]);
        let taus: Vec<_> = fam.members.iter().map(|m| m.record.tau).collect();
        assert_eq!(taus, vec![Knowledge::Exact(-2), Knowledge::Exact(-4)]);
        assert!(fam.members.iter().all(|m| m.record.sigma == -2));

        let fam = thm2_family(en, &KnotExpr::torus(2, 3), 1).unwrap();
        assert_eq!(fam.members[0].record.sigma, -4);
        assert_eq!(fam.members[0].record.tau, Knowledge::Exact(-1));

        let bad = parse("cable(2,3,torus(2,3) # torus(2,-3))").unwrap();
        assert!(matches!(thm2_family(en, &bad, 1), Err(VerdictError::Hypotheses(_))));
    }

    #[test]
    fn audit_rejects_tampered_witness() {
        let slice = InvariantRecord::slice_class();
        let r = rec("torus(2,3)");
        let (_, mut neg) = one_signed_deformation_verdict(&r, &slice);
        assert!(audit(&neg, &r, &slice));
        neg.witness = Some(Witness { quantity: Quantity::SigmaPair, lhs: -4, rhs: 0 });
        assert!(!audit(&neg, &r, &slice));
    }
}
