//! Bounded countermodel search over the frame enumeration, empirical
//! axiom/frame-condition correspondence, and the two-sided search that pits
//! the strict-implication semantics against its bimodal companion.
//!
//! Searches proceed by ascending frame size, frames in enumeration order,
//! valuations lexicographic, and always return the first hit, so results are
//! reproducible; the optional worker pool parallelizes over enumeration
//! chunks and re-selects the first hit afterwards.

use crate::axioms::AxiomFormula;
use crate::enumerate::{EnumError, EnumOptions, FramePlan};
use crate::frames::{
    Frame, FrameCondition, FrameKind, KindMismatch, S4KFrame, StoFrame, PARTIAL_ORDER,
};
use crate::semantics::{
    frame_valid, frame_valid_bi, SemanticsError, ValidOptions, Validity,
};
use crate::sets::Mask;
use crate::syntax::{BiFormula, Formula};
use crate::translation::{companion_axioms, gmt, rho_hat, CompanionKind};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Kind(#[from] KindMismatch),
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub valid: ValidOptions,
    pub enumeration: EnumOptions,
    /// Worker threads for the frame sweep; 1 means sequential.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            valid: ValidOptions::default(),
            enumeration: EnumOptions::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StoCounterModel {
    pub frame: StoFrame,
    pub valuation: BTreeMap<String, Mask>,
    pub world: usize,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Refuted(StoCounterModel),
    NoCountermodelUpTo(usize),
}

impl SearchOutcome {
    pub fn refuted(&self) -> bool {
        matches!(self, SearchOutcome::Refuted(_))
    }
}

/// Run `per_frame` over the plan in deterministic order and return the first
/// hit; with more than one worker, chunks are scanned in parallel and the
/// least (chunk, position) hit wins.
fn search_plan<T: Send>(
    plan: &FramePlan,
    jobs: usize,
    per_frame: impl Fn(&Frame) -> Option<T> + Sync,
) -> Option<T> {
    let scan_chunk = |chunk: usize| -> Option<(usize, T)> {
        plan.expand(chunk)
            .iter()
            .enumerate()
            .find_map(|(i, f)| per_frame(f).map(|t| (i, t)))
    };
    if jobs <= 1 {
        (0..plan.order_count()).find_map(|c| scan_chunk(c).map(|(_, t)| t))
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            (0..plan.order_count())
                .into_par_iter()
                .filter_map(|c| scan_chunk(c).map(|(i, t)| ((c, i), t)))
                .min_by_key(|((c, i), _)| (*c, *i))
                .map(|(_, t)| t)
        })
    }
}

/// Search all strict-implication frames of size `1..=max_size` validating
/// every formula in `gamma` for one refuting the goal. The base axioms need
/// not be listed; they hold on every frame.
pub fn countermodel_search(
    gamma: &[Formula],
    goal: &Formula,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome, DecideError> {
    for n in 1..=max_size {
        let plan = FramePlan::new(n, FrameKind::Sto, &[], &opts.enumeration)?;
        let hit = search_plan(&plan, opts.jobs, |frame| {
            let f = match frame {
                Frame::Sto(f) => f,
                _ => unreachable!(),
            };
            sto_refutation(f, gamma, goal, opts.valid)
        });
        if let Some(model) = hit {
            return Ok(SearchOutcome::Refuted(model?));
        }
    }
    Ok(SearchOutcome::NoCountermodelUpTo(max_size))
}

fn sto_refutation(
    f: &StoFrame,
    gamma: &[Formula],
    goal: &Formula,
    opts: ValidOptions,
) -> Option<Result<StoCounterModel, DecideError>> {
    for g in gamma {
        match frame_valid(f, g, opts) {
            Ok(Validity::Valid) => {}
            Ok(Validity::Refuted { .. }) => return None,
            Err(e) => return Some(Err(e.into())),
        }
    }
    match frame_valid(f, goal, opts) {
        Ok(Validity::Valid) => None,
        Ok(Validity::Refuted { valuation, world }) => Some(Ok(StoCounterModel {
            frame: f.clone(),
            valuation,
            world,
        })),
        Err(e) => Some(Err(e.into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// The axiom is valid but the condition fails.
    AxiomWithoutCondition,
    /// The condition holds but the axiom is refuted.
    ConditionWithoutAxiom,
}

#[derive(Debug, Clone)]
pub enum CorrespondenceOutcome {
    Verified { frames_checked: u64 },
    Counterexample { frame: Frame, direction: Direction },
}

/// Exhaustively confirm that an axiom is frame-valid exactly on the frames
/// satisfying a condition, over all frames up to `max_size`.
pub fn correspondence_check(
    axiom: &AxiomFormula,
    cond: &FrameCondition,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<CorrespondenceOutcome, DecideError> {
    let axiom_kind = match axiom {
        AxiomFormula::Sto(_) => FrameKind::Sto,
        AxiomFormula::Bi(_) => FrameKind::S4k,
    };
    if let Some(required) = cond.kind() {
        if required != axiom_kind {
            return Err(KindMismatch {
                condition: cond.name().to_string(),
                kind: axiom_kind,
            }
            .into());
        }
    }
    let mut frames_checked = 0u64;
    for n in 1..=max_size {
        let plan = FramePlan::new(n, axiom_kind, &[], &opts.enumeration)?;
        for chunk in 0..plan.order_count() {
            for frame in plan.expand(chunk) {
                frames_checked += 1;
                let semantic = match (&frame, axiom) {
                    (Frame::Sto(f), AxiomFormula::Sto(a)) => {
                        frame_valid(f, a, opts.valid)?.is_valid()
                    }
                    (Frame::S4k(f), AxiomFormula::Bi(a)) => {
                        frame_valid_bi(f, a, opts.valid)?.is_valid()
                    }
                    _ => unreachable!(),
                };
                let holds = crate::frames::check_condition(&frame, cond)?.holds();
                if semantic != holds {
                    let direction = if semantic {
                        Direction::AxiomWithoutCondition
                    } else {
                        Direction::ConditionWithoutAxiom
                    };
                    return Ok(CorrespondenceOutcome::Counterexample { frame, direction });
                }
            }
        }
    }
    Ok(CorrespondenceOutcome::Verified { frames_checked })
}

#[derive(Debug, Clone)]
pub struct BiCounterModel {
    pub frame: S4KFrame,
    pub valuation: BTreeMap<String, Mask>,
    pub world: usize,
}

#[derive(Debug, Clone)]
pub enum BiSearchOutcome {
    Refuted(BiCounterModel),
    NoCountermodelUpTo(usize),
}

impl BiSearchOutcome {
    pub fn refuted(&self) -> bool {
        matches!(self, BiSearchOutcome::Refuted(_))
    }
}

/// Agreement report between the direct search and the bimodal-companion
/// search for the same goal.
#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub sto: SearchOutcome,
    pub bimodal: BiSearchOutcome,
    /// When the bimodal side found a witness: whether its cluster quotient
    /// refutes the untranslated goal, as the preservation lemma predicts.
    pub quotient_refutes: Option<bool>,
}

impl BridgeReport {
    pub fn agree(&self) -> bool {
        self.sto.refuted() == self.bimodal.refuted()
            && self.quotient_refutes.unwrap_or(true)
    }
}

/// Run the search on the bimodal side: partial-order BHL frames validating
/// the greatest-companion axiom set of `gamma`, seeking a refutation of the
/// translated goal; then cross-check the outcome against the direct search.
pub fn derive_via_translation(
    gamma: &[Formula],
    goal: &Formula,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<BridgeReport, DecideError> {
    let sto = countermodel_search(gamma, goal, max_size, opts)?;
    let companions = companion_axioms(gamma, CompanionKind::Sigma);
    let translated = gmt(goal);
    let mut bimodal = BiSearchOutcome::NoCountermodelUpTo(max_size);
    'sizes: for n in 1..=max_size {
        let plan = FramePlan::new(
            n,
            FrameKind::S4k,
            &[FrameCondition::Bhl, PARTIAL_ORDER],
            &opts.enumeration,
        )?;
        let hit = search_plan(&plan, opts.jobs, |frame| {
            let f = match frame {
                Frame::S4k(f) => f,
                _ => unreachable!(),
            };
            bi_refutation(f, &companions, &translated, opts.valid)
        });
        if let Some(model) = hit {
            bimodal = BiSearchOutcome::Refuted(model?);
            break 'sizes;
        }
    }
    let quotient_refutes = match &bimodal {
        BiSearchOutcome::Refuted(model) => {
            let general =
                crate::frames::GeneralS4KFrame::with_powerset(model.frame.clone());
            let quotient = rho_hat(&general);
            let outcome =
                crate::semantics::frame_valid_general(&quotient, goal, opts.valid)?;
            Some(!outcome.is_valid())
        }
        BiSearchOutcome::NoCountermodelUpTo(_) => None,
    };
    Ok(BridgeReport { sto, bimodal, quotient_refutes })
}

fn bi_refutation(
    f: &S4KFrame,
    companions: &[BiFormula],
    translated: &BiFormula,
    opts: ValidOptions,
) -> Option<Result<BiCounterModel, DecideError>> {
    for ax in companions {
        match frame_valid_bi(f, ax, opts) {
            Ok(Validity::Valid) => {}
            Ok(Validity::Refuted { .. }) => return None,
            Err(e) => return Some(Err(e.into())),
        }
    }
    match frame_valid_bi(f, translated, opts) {
        Ok(Validity::Valid) => None,
        Ok(Validity::Refuted { valuation, world }) => Some(Ok(BiCounterModel {
            frame: f.clone(),
            valuation,
            world,
        })),
        Err(e) => Some(Err(e.into())),
    }
}
