//! Selective filtration on finite bimodal models: agreement partitions,
//! maximal states, the alternating witness-set construction, its cofinal
//! extension, and the submodel truth check that justifies them.
//!
//! Witness selection is deterministic everywhere: among eligible witnesses,
//! states maximal relative to the agreement partition are preferred, and ties
//! go to the least world in the frame order. (On finite frames a cluster of
//! agreeing states has no maximal member at all, so unlike the descriptive
//! setting a maximal witness need not exist; the fallback keeps the
//! construction total without affecting the submodel truth property.)

use crate::frames::{Frame, S4KFrame};
use crate::semantics::{Model, SemanticsError, Valuation};
use crate::sets::{self, contains, least, members, Mask, Relation};
use crate::syntax::BiFormula;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FmpError {
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("rm is not transitive: ({0}, {1}, {2})")]
    RmNotTransitive(String, String, String),
    #[error("the BHL inclusion ri;rm <= rm fails at ({0}, {1}, {2})")]
    BhlRequired(String, String, String),
    #[error("the model does not refute the formula anywhere")]
    NotRefuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    I,
    M,
}

impl std::fmt::Display for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rel::I => "ri",
            Rel::M => "rm",
        })
    }
}

/// Partition of the worlds by agreement on all subformulas of a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPartition {
    /// Class id per world; ids are ordered by least member.
    pub class_of: Vec<usize>,
    /// Member mask per class.
    pub classes: Vec<Mask>,
}

impl PhiPartition {
    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn class_mask(&self, x: usize) -> Mask {
        self.classes[self.class_of[x]]
    }
}

fn s4k_frame(model: &Model) -> Result<&S4KFrame, SemanticsError> {
    match model.frame() {
        Frame::S4k(f) => Ok(f),
        Frame::GeneralS4k(g) => Ok(g.frame()),
        other => Err(SemanticsError::KindMismatch {
            expected: crate::frames::FrameKind::S4k,
            found: other.kind(),
        }),
    }
}

/// Worlds are equivalent when they satisfy the same subformulas of `phi`.
pub fn phi_partition(model: &Model, phi: &BiFormula) -> Result<PhiPartition, FmpError> {
    let frame = s4k_frame(model)?;
    let n = frame.n();
    let subf = phi.subformulas();
    let mut signatures: Vec<Vec<bool>> = vec![Vec::with_capacity(subf.len()); n];
    for psi in &subf {
        let t = model.truth_set_bi(psi)?;
        for (x, sig) in signatures.iter_mut().enumerate() {
            sig.push(contains(t, x));
        }
    }
    let mut classes: Vec<Mask> = Vec::new();
    let mut reps: Vec<&Vec<bool>> = Vec::new();
    let mut class_of = vec![0usize; n];
    for x in 0..n {
        match reps.iter().position(|sig| **sig == signatures[x]) {
            Some(i) => {
                class_of[x] = i;
                classes[i] |= 1 << x;
            }
            None => {
                class_of[x] = classes.len();
                classes.push(1 << x);
                reps.push(&signatures[x]);
            }
        }
    }
    Ok(PhiPartition { class_of, classes })
}

/// States with no distinct successor in their own agreement class.
pub fn maximal_states(model: &Model, phi: &BiFormula, rel: Rel) -> Result<Mask, FmpError> {
    let frame = s4k_frame(model)?;
    if rel == Rel::M {
        require_rm_transitive(frame)?;
    }
    let partition = phi_partition(model, phi)?;
    Ok(maximal_mask(frame, &partition, rel))
}

fn maximal_mask(frame: &S4KFrame, partition: &PhiPartition, rel: Rel) -> Mask {
    let rows = match rel {
        Rel::I => frame.ri().rows(),
        Rel::M => frame.rm().rows(),
    };
    let mut out = 0;
    for x in 0..frame.n() {
        let same = partition.class_mask(x) & !(1 << x);
        if rows[x] & same == 0 {
            out |= 1 << x;
        }
    }
    out
}

fn require_rm_transitive(frame: &S4KFrame) -> Result<(), FmpError> {
    if let Some((x, y, z)) = frame.rm_transitivity_witness() {
        return Err(FmpError::RmNotTransitive(
            frame.worlds()[x].clone(),
            frame.worlds()[y].clone(),
            frame.worlds()[z].clone(),
        ));
    }
    Ok(())
}

fn require_bhl(frame: &S4KFrame) -> Result<(), FmpError> {
    if let Some((x, y, z)) = frame.bhl_witness() {
        return Err(FmpError::BhlRequired(
            frame.worlds()[x].clone(),
            frame.worlds()[y].clone(),
            frame.worlds()[z].clone(),
        ));
    }
    Ok(())
}

/// Maximal states first, then any candidate, least world breaking ties.
fn pick(candidates: Mask, maximal: Mask) -> Option<usize> {
    least(candidates & maximal).or_else(|| least(candidates))
}

/// One recorded witness choice: `source` needed a companion in `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessChoice {
    pub source: usize,
    pub class: usize,
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTrace {
    pub rel: Rel,
    pub added: Vec<WitnessChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XOmega {
    /// State where the formula is refuted, chosen maximal when possible.
    pub x0: usize,
    pub set: Mask,
    pub trace: Vec<StepTrace>,
}

/// Alternating witness-set construction: starting from a refuting state,
/// alternately close under `ri`- and `rm`-witnesses, one representative per
/// reachable agreement class, until stable.
pub fn build_x_omega(model: &Model, phi: &BiFormula) -> Result<XOmega, FmpError> {
    let frame = s4k_frame(model)?;
    require_rm_transitive(frame)?;
    require_bhl(frame)?;
    let full = sets::full(frame.n());
    let truth = model.truth_set_bi(phi)?;
    let refuting = full & !truth;
    if refuting == 0 {
        return Err(FmpError::NotRefuted);
    }
    let partition = phi_partition(model, phi)?;
    let max_i = maximal_mask(frame, &partition, Rel::I);
    let max_m = maximal_mask(frame, &partition, Rel::M);
    let x0 = pick(refuting, max_i).unwrap();

    let mut set: Mask = 1 << x0;
    let mut trace = Vec::new();
    loop {
        let step_i = close_step(frame, &partition, Rel::I, max_i, &mut set);
        let step_m = close_step(frame, &partition, Rel::M, max_m, &mut set);
        let stable = step_i.added.is_empty() && step_m.added.is_empty();
        if !step_i.added.is_empty() {
            trace.push(step_i);
        }
        if !step_m.added.is_empty() {
            trace.push(step_m);
        }
        if stable {
            break;
        }
    }
    Ok(XOmega { x0, set, trace })
}

/// Add, for every member and every agreement class reachable from it along
/// `rel`, a witness in that class, unless one is already in the set.
fn close_step(
    frame: &S4KFrame,
    partition: &PhiPartition,
    rel: Rel,
    maximal: Mask,
    set: &mut Mask,
) -> StepTrace {
    let rows = match rel {
        Rel::I => frame.ri().rows(),
        Rel::M => frame.rm().rows(),
    };
    let mut added = Vec::new();
    let snapshot = *set;
    for x in members(snapshot) {
        for (class, &mask) in partition.classes.iter().enumerate() {
            let reachable = rows[x] & mask;
            if reachable == 0 || rows[x] & mask & *set != 0 {
                continue;
            }
            let witness = pick(reachable, maximal).unwrap();
            *set |= 1 << witness;
            added.push(WitnessChoice { source: x, class, witness });
        }
    }
    StepTrace { rel, added }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalExtension {
    pub set: Mask,
    /// Final-cluster mask paired with the witness set built over it.
    pub final_clusters: Vec<(Mask, Mask)>,
}

/// Extend a witness set to an `rm`-cofinal one. For every `rm`-final
/// `rm`-cluster that an unanswered arrow out of the set can reach, add class
/// representatives plus their `ri`-witness closure; a set that is already
/// cofinal is returned unchanged.
pub fn cofinal_extension(
    model: &Model,
    phi: &BiFormula,
    x_omega: Mask,
) -> Result<CofinalExtension, FmpError> {
    let frame = s4k_frame(model)?;
    require_rm_transitive(frame)?;
    require_bhl(frame)?;
    let partition = phi_partition(model, phi)?;
    let max_i = maximal_mask(frame, &partition, Rel::I);
    let max_m = maximal_mask(frame, &partition, Rel::M);

    let rm = frame.rm();
    let unanswered: Vec<usize> = members(x_omega)
        .flat_map(|y| members(rm.row(y)))
        .filter(|&z| !contains(x_omega, z) && rm.row(z) & x_omega == 0)
        .collect();

    let mut set = x_omega;
    let mut final_clusters = Vec::new();
    for cluster in rm_final_clusters(frame) {
        // Transitivity turns reachability into a single arrow, so the
        // cluster is relevant exactly when an unanswered target sits in it
        // or points into it.
        let needed = unanswered
            .iter()
            .any(|&z| contains(cluster, z) || rm.row(z) & cluster != 0);
        if !needed {
            continue;
        }
        let mut f_j: Mask = 0;
        // One representative per agreement class present in the cluster.
        for &mask in &partition.classes {
            let present = mask & cluster;
            if present != 0 {
                f_j |= 1 << pick(present, max_m).unwrap();
            }
        }
        // Close under ri-witnesses, bounded by the class count per member.
        loop {
            let step = close_step_within(frame, &partition, max_i, &mut f_j);
            if !step {
                break;
            }
        }
        set |= f_j;
        final_clusters.push((cluster, f_j));
    }
    Ok(CofinalExtension { set, final_clusters })
}

fn close_step_within(
    frame: &S4KFrame,
    partition: &PhiPartition,
    max_i: Mask,
    set: &mut Mask,
) -> bool {
    let rows = frame.ri().rows();
    let snapshot = *set;
    let mut changed = false;
    for x in members(snapshot) {
        for &mask in &partition.classes {
            let reachable = rows[x] & mask;
            if reachable == 0 || reachable & *set != 0 {
                continue;
            }
            *set |= 1 << pick(reachable, max_i).unwrap();
            changed = true;
        }
    }
    changed
}

/// Clusters of mutual `rm`-reachability (singletons for irreflexive points)
/// from which `rm` does not escape, ordered by least member.
pub fn rm_final_clusters(frame: &S4KFrame) -> Vec<Mask> {
    let n = frame.n();
    let rm = frame.rm();
    let mut seen: Mask = 0;
    let mut out = Vec::new();
    for x in 0..n {
        if contains(seen, x) {
            continue;
        }
        let cluster = members(rm.row(x))
            .filter(|&y| rm.contains(y, x))
            .fold(1u64 << x, |acc, y| acc | (1 << y));
        seen |= cluster;
        let escapes = members(cluster).any(|y| rm.row(y) & !cluster != 0);
        if !escapes {
            out.push(cluster);
        }
    }
    out
}

/// `Y` answers every `rm`-arrow out of it: `y rm z` with `y` in `Y` implies
/// `z` in `Y` or `z rm y'` for some `y'` in `Y`.
pub fn is_rm_cofinal(frame: &S4KFrame, y_set: Mask) -> bool {
    let rm = frame.rm();
    members(y_set).all(|y| {
        members(rm.row(y)).all(|z| {
            contains(y_set, z) || rm.row(z) & y_set != 0
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionFailure {
    pub y: String,
    pub rel: Rel,
    pub x: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementFailure {
    pub y: String,
    pub subformula: BiFormula,
}

/// Report of the submodel truth lemma on a candidate world set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodelReport {
    pub precondition_failures: Vec<PreconditionFailure>,
    pub agreement_failures: Vec<AgreementFailure>,
}

impl SubmodelReport {
    pub fn passes(&self) -> bool {
        self.precondition_failures.is_empty() && self.agreement_failures.is_empty()
    }
}

/// Check the witness precondition (every arrow out of `Y` has an agreeing
/// answer inside `Y`) and, independently, pointwise truth agreement between
/// the model and its restriction to `Y` on all subformulas.
pub fn verify_submodel_truth(
    model: &Model,
    y_set: Mask,
    phi: &BiFormula,
) -> Result<SubmodelReport, FmpError> {
    let frame = s4k_frame(model)?;
    if y_set == 0 {
        // Both conditions quantify over members of the set.
        return Ok(SubmodelReport {
            precondition_failures: Vec::new(),
            agreement_failures: Vec::new(),
        });
    }
    let partition = phi_partition(model, phi)?;
    let mut precondition_failures = Vec::new();
    for rel in [Rel::I, Rel::M] {
        let rows = match rel {
            Rel::I => frame.ri().rows(),
            Rel::M => frame.rm().rows(),
        };
        for y in members(y_set) {
            for x in members(rows[y]) {
                let answered = rows[y] & y_set & partition.class_mask(x) != 0;
                if !answered {
                    precondition_failures.push(PreconditionFailure {
                        y: frame.worlds()[y].clone(),
                        rel,
                        x: frame.worlds()[x].clone(),
                    });
                }
            }
        }
    }

    let restricted = restrict_model(frame, model.valuation(), y_set);
    let kept: Vec<usize> = members(y_set).collect();
    let sub_frame = match restricted.frame() {
        Frame::S4k(f) => f.clone(),
        _ => unreachable!(),
    };
    let mut agreement_failures = Vec::new();
    for psi in phi.subformulas() {
        let whole = model.truth_set_bi(&psi)?;
        let part = restricted.truth_set_bi(&psi)?;
        for (sub_idx, &orig) in kept.iter().enumerate() {
            if contains(whole, orig) != contains(part, sub_idx) {
                agreement_failures.push(AgreementFailure {
                    y: sub_frame.worlds()[sub_idx].clone(),
                    subformula: psi.clone(),
                });
            }
        }
    }
    Ok(SubmodelReport { precondition_failures, agreement_failures })
}

/// Admissible-set restriction `{a intersect Y | a in P}`, re-indexed to the
/// kept worlds. The result need not be closed under the boxes of the
/// restricted frame, so it is returned as a raw family rather than a
/// validated general frame.
pub fn restrict_family(family: &[Mask], y_set: Mask) -> Vec<Mask> {
    let kept: Vec<usize> = members(y_set).collect();
    let mut out: Vec<Mask> = family
        .iter()
        .map(|&a| {
            kept.iter()
                .enumerate()
                .filter(|(_, &x)| contains(a, x))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The submodel induced on `y_set`: relations and valuation restricted,
/// world names kept.
pub fn restrict_model(frame: &S4KFrame, valuation: &Valuation, y_set: Mask) -> Model {
    let kept: Vec<usize> = members(y_set).collect();
    let k = kept.len();
    let names: Vec<String> = kept.iter().map(|&i| frame.worlds()[i].clone()).collect();
    let mut ri = Relation::empty(k);
    let mut rm = Relation::empty(k);
    for (a, &x) in kept.iter().enumerate() {
        for (b, &y) in kept.iter().enumerate() {
            if frame.ri().contains(x, y) {
                ri.insert(a, b);
            }
            if frame.rm().contains(x, y) {
                rm.insert(a, b);
            }
        }
    }
    let sub = S4KFrame::new(names, ri, rm).expect("restriction of a preorder");
    let mut map = BTreeMap::new();
    for (atom, mask) in valuation.iter() {
        let restricted = kept
            .iter()
            .enumerate()
            .filter(|(_, &x)| contains(mask, x))
            .fold(0u64, |acc, (a, _)| acc | (1 << a));
        map.insert(atom.clone(), restricted);
    }
    Model::new(Frame::S4k(sub), Valuation::new(map)).expect("plain bimodal model")
}
