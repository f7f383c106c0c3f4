//! The box-prefixing translation into classical bimodal logic and the frame
//! transforms that go with it.
//!
//! `gmt` prefixes every clause with `[i]` and renders strict implication as
//! `[i][m](. -> .)`, clause by clause and without simplification. `sigma_hat`
//! re-reads a general strict-implication frame as a bimodal frame by closing
//! the admissibles under Boolean operations; `rho_hat` goes back by
//! quotienting `ri`-clusters, composing `rm* = ri ; rm`, and keeping the
//! `[i]`-guarded admissibles. The two directions compose to the identity on
//! general strict-implication frames.

use crate::axioms::{bi_axiom, AxiomName};
use crate::frames::{
    cluster_quotient_raw, GeneralS4KFrame, GeneralStoFrame, S4KFrame, StoFrame,
};
use crate::semantics::{
    frame_valid_bi_general, frame_valid_general, SemanticsError, ValidOptions, Validity,
};
use crate::sets::{self, box_op, members, Mask};
use crate::syntax::{BiFormula, Formula};
use std::collections::BTreeSet;
use thiserror::Error;

/// Clause-by-clause translation; no simplification is applied, so the
/// translation of `[]f == T ~> f` keeps its vacuous antecedent.
pub fn gmt(formula: &Formula) -> BiFormula {
    match formula {
        Formula::Atom(p) => BiFormula::box_i(BiFormula::Atom(p.clone())),
        Formula::Top => BiFormula::Top,
        Formula::Bot => BiFormula::Bot,
        Formula::And(l, r) => BiFormula::box_i(BiFormula::and(gmt(l), gmt(r))),
        Formula::Or(l, r) => BiFormula::box_i(BiFormula::or(gmt(l), gmt(r))),
        Formula::Imp(l, r) => BiFormula::box_i(BiFormula::imp(gmt(l), gmt(r))),
        Formula::Sto(l, r) => {
            BiFormula::box_i(BiFormula::box_m(BiFormula::imp(gmt(l), gmt(r))))
        }
    }
}

/// Least Boolean subalgebra of the powerset containing `family`.
fn boolean_closure(n: usize, family: &[Mask]) -> Vec<Mask> {
    let full = sets::full(n);
    let mut closed: BTreeSet<Mask> = family.iter().copied().collect();
    closed.insert(0);
    closed.insert(full);
    loop {
        let mut fresh = Vec::new();
        let current: Vec<Mask> = closed.iter().copied().collect();
        for &a in &current {
            let c = full & !a;
            if !closed.contains(&c) {
                fresh.push(c);
            }
            for &b in &current {
                let m = a & b;
                if !closed.contains(&m) {
                    fresh.push(m);
                }
            }
        }
        if fresh.is_empty() {
            return closed.into_iter().collect();
        }
        closed.extend(fresh);
    }
}

/// Read a general strict-implication frame as a general bimodal frame:
/// carrier and relations unchanged, admissibles Boolean-closed.
pub fn sigma_hat(general: &GeneralStoFrame) -> GeneralS4KFrame {
    let frame = general.frame();
    let closure = boolean_closure(frame.n(), general.admissible());
    let s4k = frame.as_s4k();
    GeneralS4KFrame::new(s4k, closure)
        .expect("the Boolean closure of a general sto-frame is closed under both boxes")
}

/// Quotient a general bimodal frame to a general strict-implication frame:
/// worlds are `ri`-clusters, the order is the quotient of `ri`, the second
/// relation is the quotient of `rm* = ri ; rm`, and the admissibles are the
/// `[i]`-guarded images of admissible unions of clusters.
pub fn rho_hat(general: &GeneralS4KFrame) -> GeneralStoFrame {
    let frame = general.frame();
    let rm_star = frame.ri().compose(frame.rm());
    let star = S4KFrame::new(frame.worlds().to_vec(), frame.ri().clone(), rm_star)
        .expect("carrier unchanged");
    let (quotient, cluster_of, clusters) = cluster_quotient_raw(&star);
    // The admissible quotient sets are exactly the images of the
    // cluster-saturated members of the original family.
    let mut admissible = Vec::new();
    for &a in general.admissible() {
        let image = members(a).fold(0u64, |acc, x| acc | (1 << cluster_of[x]));
        let saturation = members(image).fold(0u64, |acc, c| acc | clusters[c]);
        if saturation == a {
            admissible.push(box_op(quotient.ri().rows(), image));
        }
    }
    let sto = StoFrame::new(
        quotient.worlds().to_vec(),
        quotient.ri().clone(),
        quotient.rm().clone(),
    )
    .expect("the cluster quotient of rm* is coherent over the quotient order");
    GeneralStoFrame::new(sto, admissible)
        .expect("guarded admissibles are closed under the sto-frame operations")
}

/// Outcome of comparing a frame with its round-trip image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identical: bool,
    pub mismatch: Option<String>,
}

/// Check that `rho_hat(sigma_hat(g))` is literally `g`: same worlds (cluster
/// quotients of posets are singletons), same relations, same admissibles.
pub fn rho_sigma_identity(general: &GeneralStoFrame) -> IdentityReport {
    let image = rho_hat(&sigma_hat(general));
    let mismatch = if image.frame().worlds() != general.frame().worlds() {
        Some(format!(
            "worlds differ: {:?} vs {:?}",
            image.frame().worlds(),
            general.frame().worlds()
        ))
    } else if image.frame().preceq() != general.frame().preceq() {
        Some("order differs".to_string())
    } else if image.frame().sqsubset() != general.frame().sqsubset() {
        Some("second relation differs".to_string())
    } else if image.admissible() != general.admissible() {
        Some(format!(
            "admissible families differ: {} vs {} sets",
            image.admissible().len(),
            general.admissible().len()
        ))
    } else {
        None
    };
    IdentityReport { identical: mismatch.is_none(), mismatch }
}

/// Both sides of the translation-preservation biconditional
/// `F |= t(phi)  iff  rho_hat(F) |= phi`.
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub bimodal: Validity,
    pub quotient: Validity,
}

impl PreservationReport {
    pub fn agree(&self) -> bool {
        self.bimodal.is_valid() == self.quotient.is_valid()
    }
}

pub fn translation_preservation(
    general: &GeneralS4KFrame,
    formula: &Formula,
    opts: ValidOptions,
) -> Result<PreservationReport, SemanticsError> {
    let bimodal = frame_valid_bi_general(general, &gmt(formula), opts)?;
    let quotient = frame_valid_general(&rho_hat(general), formula, opts)?;
    Ok(PreservationReport { bimodal, quotient })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaRhoPrecondition {
    #[error("ri is not a partial order: mutual reachability of `{0}` and `{1}`")]
    NotPartialOrder(String, String),
    #[error("the BHL inclusion fails at ({0}, {1}, {2})")]
    BhlFails(String, String, String),
}

/// Both sides of `G |= phi iff sigma_hat(rho_hat(G)) |= phi`, for frames with
/// antisymmetric `ri` satisfying BHL. (Finite partial orders validate the
/// Grzegorczyk axiom for `[i]`, the lemma's remaining hypothesis.)
#[derive(Debug, Clone)]
pub struct SigmaRhoReport {
    pub original: Validity,
    pub round_trip: Validity,
}

impl SigmaRhoReport {
    pub fn agree(&self) -> bool {
        self.original.is_valid() == self.round_trip.is_valid()
    }
}

pub fn sigma_rho_validity(
    general: &GeneralS4KFrame,
    formula: &BiFormula,
    opts: ValidOptions,
) -> Result<Result<SigmaRhoReport, SigmaRhoPrecondition>, SemanticsError> {
    let frame = general.frame();
    if let Some((x, y)) = frame.ri().antisymmetry_witness() {
        return Ok(Err(SigmaRhoPrecondition::NotPartialOrder(
            frame.worlds()[x].clone(),
            frame.worlds()[y].clone(),
        )));
    }
    if let Some((x, y, z)) = frame.bhl_witness() {
        return Ok(Err(SigmaRhoPrecondition::BhlFails(
            frame.worlds()[x].clone(),
            frame.worlds()[y].clone(),
            frame.worlds()[z].clone(),
        )));
    }
    let original = frame_valid_bi_general(general, formula, opts)?;
    let image = sigma_hat(&rho_hat(general));
    let round_trip = frame_valid_bi_general(&image, formula, opts)?;
    Ok(Ok(SigmaRhoReport { original, round_trip }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompanionKind {
    /// Least companion: the translated axioms plus BHL.
    Tau,
    /// Greatest companion: additionally the Grzegorczyk axiom for `[i]`.
    Sigma,
}

impl std::str::FromStr for CompanionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tau" => Ok(CompanionKind::Tau),
            "sigma" => Ok(CompanionKind::Sigma),
            other => Err(format!("unknown companion kind `{other}`")),
        }
    }
}

/// Axiom set of the modal companion: `t` applied to the extra axioms, then
/// BHL, then (for the greatest companion) Grz for `[i]`. The S4 laws for
/// `[i]` are not emitted; they live in the frame requirement that `ri` be a
/// preorder.
pub fn companion_axioms(gamma: &[Formula], kind: CompanionKind) -> Vec<BiFormula> {
    let mut out: Vec<BiFormula> = gamma.iter().map(gmt).collect();
    out.push(bi_axiom(AxiomName::Bhl));
    if kind == CompanionKind::Sigma {
        out.push(bi_axiom(AxiomName::GrzI));
    }
    out
}
