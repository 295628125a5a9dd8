//! Integral closedness and indecomposability verdicts for `M(I; e)`, and
//! numeric audits of the length and multiplicity identities.
//!
//! `M(I; e)` is integrally closed exactly when its maximal-minor ideal is
//! complete. Indecomposability is only ever asserted through a sufficient
//! criterion whose hypotheses were all checked; otherwise it is `Unknown`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Monomial;
use crate::modmat::{
    build_mie, closed_form_i, colength_module, fitting_ideal, ModError, PresMatrix,
};
use crate::staircase::{
    integral_closure, is_complete, is_simple, product_of_simples, zariski_factor, MonomialIdeal,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid factor split: {0}")]
    InvalidSplit(String),
    #[error(transparent)]
    Module(#[from] ModError),
}

/// Sufficient criteria for indecomposability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Criterion {
    /// Complete fitting ideal and `e <= r - 1`.
    #[serde(rename = "thm_5_2")]
    Thm52,
    /// Complete fitting ideal, `e = r`, `x^r` in it and `x^{r-1} y` not.
    #[serde(rename = "thm_5_4")]
    Thm54,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Indecomposability {
    ProvenIndecomposable { theorem: Criterion },
    Unknown,
}

impl Indecomposability {
    pub fn label(&self) -> &'static str {
        match self {
            Indecomposability::ProvenIndecomposable {
                theorem: Criterion::Thm52,
            } => "indecomposable:thm_5_2",
            Indecomposability::ProvenIndecomposable {
                theorem: Criterion::Thm54,
            } => "indecomposable:thm_5_4",
            Indecomposability::Unknown => "unknown",
        }
    }
}

/// Note tag: the staircase was transposed to reach `a_0 <= b_r`.
pub const NOTE_SWAPPED: &str = "swapped_axes";
/// Note tag: `I` complete with `a_{r-e+2} = e - 2`, so the fitting ideal is `I`.
pub const NOTE_THM_6_1: &str = "thm_6_1";
/// Note tag: the computed fitting ideal differs from the closed form.
pub const NOTE_CLOSED_FORM_MISMATCH: &str = "closed_form_mismatch";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// The staircase the module was built from (after any transposition).
    pub ideal: MonomialIdeal,
    pub e: usize,
    pub construction_ok: bool,
    /// Why construction or the fitting computation failed.
    pub error: Option<String>,
    pub fitting: Option<MonomialIdeal>,
    pub fitting_equals_input: bool,
    pub fitting_complete: bool,
    pub integrally_closed: bool,
    pub indecomposable: Indecomposability,
    /// Smallest monomial in `closure(I(M))` but not in `I(M)`, when incomplete.
    pub witnesses: Vec<Monomial>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn failed(
        ideal: MonomialIdeal,
        e: usize,
        construction_ok: bool,
        err: String,
        notes: Vec<String>,
    ) -> Self {
        Verdict {
            ideal,
            e,
            construction_ok,
            error: Some(err),
            fitting: None,
            fitting_equals_input: false,
            fitting_complete: false,
            integrally_closed: false,
            indecomposable: Indecomposability::Unknown,
            witnesses: Vec::new(),
            notes,
        }
    }
}

/// Transposes `I` when `a_0 > b_r`; returns the ideal and whether it was swapped.
pub fn normalize(i: &MonomialIdeal) -> (MonomialIdeal, bool) {
    if i.is_primary() && !i.is_normalized() {
        (i.swap_axes(), true)
    } else {
        (i.clone(), false)
    }
}

/// `a_{r-e+2} = e - 2`, the condition under which `I(M) = I` for complete `I`.
pub fn shift_condition(i: &MonomialIdeal, e: usize) -> bool {
    let r = i.r();
    (2..=r).contains(&e) && i.a(r + 2 - e) as usize == e - 2
}

pub fn classify(input: &MonomialIdeal, e: usize) -> Verdict {
    let (i, swapped) = normalize(input);
    let mut notes = Vec::new();
    if swapped {
        notes.push(NOTE_SWAPPED.to_string());
    }
    let p = match build_mie(&i, e) {
        Ok(p) => p,
        Err(err) => return Verdict::failed(i, e, false, err.to_string(), notes),
    };
    let fit = match fitting_ideal(&p, e) {
        Ok(f) => f,
        Err(err) => return Verdict::failed(i, e, true, err.to_string(), notes),
    };
    if closed_form_i(&i, e).ok().as_ref() != Some(&fit) {
        notes.push(NOTE_CLOSED_FORM_MISMATCH.to_string());
    }
    let complete = is_complete(&fit);
    let r = i.r();
    let via_input = is_complete(&i) && shift_condition(&i, e);
    if via_input {
        notes.push(NOTE_THM_6_1.to_string());
    }
    // The e = r test reads I itself when it is known to equal I(M).
    let membership = if via_input { &i } else { &fit };
    let indecomposable = if complete && e < r {
        Indecomposability::ProvenIndecomposable {
            theorem: Criterion::Thm52,
        }
    } else if complete
        && e == r
        && membership.contains(Monomial::new(r as u32, 0))
        && !membership.contains(Monomial::new(r as u32 - 1, 1))
    {
        Indecomposability::ProvenIndecomposable {
            theorem: Criterion::Thm54,
        }
    } else {
        Indecomposability::Unknown
    };
    let witnesses = if complete {
        Vec::new()
    } else {
        fit.closure_gap().into_iter().take(1).collect()
    };
    Verdict {
        fitting_equals_input: fit == i,
        ideal: i,
        e,
        construction_ok: true,
        error: None,
        fitting: Some(fit),
        fitting_complete: complete,
        integrally_closed: complete,
        indecomposable,
        witnesses,
        notes,
    }
}

/// Verdicts for every `e` in `2..=r`.
pub fn classify_all(input: &MonomialIdeal) -> Vec<Verdict> {
    let r = normalize(input).0.r();
    (2..=r).map(|e| classify(input, e)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop51Audit {
    pub lhs: i64,
    pub expected: i64,
    pub pass: bool,
}

/// `ℓ(R/I(M)) - ℓ(F/M)` against `e(e-1)/2`, for complete `I(M)`.
pub fn audit_prop51(input: &MonomialIdeal, e: usize) -> Result<Prop51Audit, AuditError> {
    let (i, _) = normalize(input);
    let p = build_mie(&i, e)?;
    let fit = fitting_ideal(&p, e)?;
    if !is_complete(&fit) {
        return Err(AuditError::PreconditionNotMet(
            "fitting ideal is not complete".into(),
        ));
    }
    let lhs = fit.colength() as i64 - colength_module(&p)? as i64;
    let expected = (e * (e - 1) / 2) as i64;
    Ok(Prop51Audit {
        lhs,
        expected,
        pass: lhs == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm44Audit {
    pub diff: i64,
    pub bound: i64,
    pub pass: bool,
}

/// `ℓ(R/I(M)) - ℓ(F/M) >= e(e-1)/2`; the caller vouches that `M` is
/// integrally closed.
pub fn audit_thm44(p: &PresMatrix) -> Result<Thm44Audit, AuditError> {
    let e = p.rank();
    let fit = fitting_ideal(p, e)?;
    if !fit.is_primary() {
        return Err(AuditError::PreconditionNotMet(
            "fitting ideal is not m-primary".into(),
        ));
    }
    let diff = fit.colength() as i64 - colength_module(p)? as i64;
    let bound = (e * e.saturating_sub(1) / 2) as i64;
    Ok(Thm44Audit {
        diff,
        bound,
        pass: diff >= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma55Audit {
    pub lhs: i64,
    pub rhs: i64,
    pub strict: bool,
    pub b1: MonomialIdeal,
    pub b2: MonomialIdeal,
}

/// Checks the hypotheses of the factor-split inequality for `I`.
pub fn lemma55_hypotheses(i: &MonomialIdeal) -> Result<(), AuditError> {
    if !i.is_primary() || !is_complete(i) {
        return Err(AuditError::HypothesisViolated(
            "ideal is not m-primary and complete".into(),
        ));
    }
    if is_simple(i) {
        return Err(AuditError::HypothesisViolated("ideal is simple".into()));
    }
    let r = i.order();
    if !i.contains(Monomial::new(r, 0)) {
        return Err(AuditError::HypothesisViolated(format!(
            "x^{r} is not in the ideal"
        )));
    }
    if i.contains(Monomial::new(r - 1, 1)) {
        return Err(AuditError::HypothesisViolated(format!(
            "x^{}y is in the ideal",
            r - 1
        )));
    }
    Ok(())
}

/// `ℓ(R/I) - ℓ(R/b1) - ℓ(R/b2)` against `ord(b1) ord(b2)`, where `b1` is the
/// product of the simple factors at `part1` (indices into the factor list
/// with multiplicities expanded) and `b2` the product of the rest.
pub fn audit_lemma55(i: &MonomialIdeal, part1: &[usize]) -> Result<Lemma55Audit, AuditError> {
    lemma55_hypotheses(i)?;
    let factors = zariski_factor(i).expect("complete").expanded();
    let mut chosen = vec![false; factors.len()];
    for &k in part1 {
        if k >= factors.len() || chosen[k] {
            return Err(AuditError::InvalidSplit(format!(
                "index {k} is out of range or repeated"
            )));
        }
        chosen[k] = true;
    }
    let (left, right): (Vec<_>, Vec<_>) = factors.iter().zip(&chosen).partition(|(_, &c)| c);
    if left.is_empty() || right.is_empty() {
        return Err(AuditError::InvalidSplit(
            "both parts must be nonempty".into(),
        ));
    }
    let b1 = product_of_simples(&left.into_iter().map(|(f, _)| *f).collect::<Vec<_>>());
    let b2 = product_of_simples(&right.into_iter().map(|(f, _)| *f).collect::<Vec<_>>());
    let lhs = i.colength() as i64 - b1.colength() as i64 - b2.colength() as i64;
    let rhs = b1.order() as i64 * b2.order() as i64;
    Ok(Lemma55Audit {
        lhs,
        rhs,
        strict: lhs > rhs,
        b1,
        b2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm42Hypotheses {
    pub ord_ge_e_plus_1: bool,
    pub i1_closure_is_m_pow: bool,
}

/// Reports whether `ord I(M) >= e + 1` and `closure(I_{e-1}(M)) = m^{e-1}`.
/// The conclusion these hypotheses lead to is not evaluated.
pub fn audit_thm42_hypotheses(p: &PresMatrix) -> Result<Thm42Hypotheses, AuditError> {
    let e = p.rank();
    let fit = fitting_ideal(p, e)?;
    let i1_closure_is_m_pow = if e >= 2 {
        let sub = fitting_ideal(p, e - 1)?;
        sub.is_primary()
            && integral_closure(&sub) == MonomialIdeal::max_ideal_power(e as u32 - 1).unwrap()
    } else {
        true
    };
    Ok(Thm42Hypotheses {
        ord_ge_e_plus_1: fit.order() as usize > e,
        i1_closure_is_m_pow,
    })
}
