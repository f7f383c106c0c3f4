//! Finite relational structures for both semantics.
//!
//! A strict-implication frame is a poset `(X, preceq)` with a second relation
//! `sqsubset` satisfying the coherence condition: `x preceq y sqsubset z`
//! implies `x sqsubset z`. A bimodal frame carries a preorder `ri` and an
//! arbitrary relation `rm`. The general variants add a family of admissible
//! sets closed under the semantic operations.
//!
//! Validators report every violated law with witnesses instead of repairing;
//! the coherence closure is a separate operation.

use crate::sets::{
    self, box_op, downsets, imp_op, members, sto_op, upsets, Mask, Relation,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    Sto,
    S4k,
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameKind::Sto => "sto",
            FrameKind::S4k => "s4k",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameViolation {
    #[error("frame has no worlds")]
    NoWorlds,
    #[error("duplicate world name `{0}`")]
    DuplicateWorld(String),
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("order is not antisymmetric on `{0}`, `{1}`")]
    NotAntisymmetric(String, String),
    #[error("coherence fails: `{0}` <= `{1}` and `{1}` sqsubset `{2}` but not `{0}` sqsubset `{2}`")]
    Coherence(String, String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FrameError {
    pub violations: Vec<FrameViolation>,
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid frame: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_worlds(worlds: &[String]) -> Vec<FrameViolation> {
    let mut out = Vec::new();
    if worlds.is_empty() {
        out.push(FrameViolation::NoWorlds);
    }
    for (i, w) in worlds.iter().enumerate() {
        if worlds[..i].contains(w) {
            out.push(FrameViolation::DuplicateWorld(w.clone()));
        }
    }
    out
}

fn poset_violations(worlds: &[String], order: &Relation) -> Vec<FrameViolation> {
    let mut out = Vec::new();
    if let Some(x) = order.is_reflexive() {
        out.push(FrameViolation::NotReflexive(worlds[x].clone()));
    }
    if let Some((x, y, z)) = order.transitivity_witness() {
        out.push(FrameViolation::NotTransitive(
            worlds[x].clone(),
            worlds[y].clone(),
            worlds[z].clone(),
        ));
    }
    if let Some((x, y)) = order.antisymmetry_witness() {
        out.push(FrameViolation::NotAntisymmetric(
            worlds[x].clone(),
            worlds[y].clone(),
        ));
    }
    out
}

/// First coherence failure `(x, y, z)`: `x preceq y sqsubset z` without
/// `x sqsubset z`.
fn coherence_witness(preceq: &Relation, sq: &Relation) -> Option<(usize, usize, usize)> {
    for x in 0..preceq.n() {
        for y in members(preceq.row(x)) {
            let missing = sq.row(y) & !sq.row(x);
            if let Some(z) = sets::least(missing) {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// Finite strict-implication frame: a poset plus a coherent second relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoFrame {
    worlds: Vec<String>,
    preceq: Relation,
    sqsubset: Relation,
}

impl StoFrame {
    pub fn new(
        worlds: Vec<String>,
        preceq: Relation,
        sqsubset: Relation,
    ) -> Result<Self, FrameError> {
        let mut violations = check_worlds(&worlds);
        if violations.is_empty() {
            violations.extend(poset_violations(&worlds, &preceq));
            if let Some((x, y, z)) = coherence_witness(&preceq, &sqsubset) {
                violations.push(FrameViolation::Coherence(
                    worlds[x].clone(),
                    worlds[y].clone(),
                    worlds[z].clone(),
                ));
            }
        }
        if violations.is_empty() {
            Ok(StoFrame { worlds, preceq, sqsubset })
        } else {
            Err(FrameError { violations })
        }
    }

    pub fn n(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn preceq(&self) -> &Relation {
        &self.preceq
    }

    pub fn sqsubset(&self) -> &Relation {
        &self.sqsubset
    }

    /// All upward-closed sets of the order, ascending by mask.
    pub fn upsets(&self) -> Vec<Mask> {
        upsets(&self.preceq)
    }

    /// The same carrier read as a bimodal frame (`ri := preceq`,
    /// `rm := sqsubset`); coherence becomes the BHL inclusion.
    pub fn as_s4k(&self) -> S4KFrame {
        S4KFrame::new(self.worlds.clone(), self.preceq.clone(), self.sqsubset.clone())
            .expect("a poset is a preorder")
    }

    pub fn mask_to_names(&self, m: Mask) -> Vec<String> {
        members(m).map(|i| self.worlds[i].clone()).collect()
    }
}

/// Least coherent extension of the second relation over a fixed poset.
///
/// Returns the frame whose `sqsubset` is the smallest superset of the input
/// closed under `preceq ; sqsubset`; idempotent on already coherent input.
pub fn sto_closure(
    worlds: Vec<String>,
    preceq: Relation,
    sqsubset: Relation,
) -> Result<StoFrame, FrameError> {
    let mut violations = check_worlds(&worlds);
    if violations.is_empty() {
        violations.extend(poset_violations(&worlds, &preceq));
    }
    if !violations.is_empty() {
        return Err(FrameError { violations });
    }
    let mut closed = sqsubset;
    loop {
        let next = closed.union(&preceq.compose(&closed));
        if next == closed {
            break;
        }
        closed = next;
    }
    Ok(StoFrame { worlds, preceq, sqsubset: closed })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibleViolation {
    #[error("admissible set {{{0}}} is not an upset")]
    NotUpset(String),
    #[error("admissible family does not contain the empty set")]
    MissingEmpty,
    #[error("admissible family does not contain the full set")]
    MissingFull,
    #[error("admissible family is not closed under {op} on {{{a}}}, {{{b}}}")]
    NotClosedBinary { op: &'static str, a: String, b: String },
    #[error("admissible family is not closed under {op} on {{{a}}}")]
    NotClosedUnary { op: &'static str, a: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct GeneralFrameError {
    pub violations: Vec<AdmissibleViolation>,
}

impl fmt::Display for GeneralFrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid general frame: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn name_set(worlds: &[String], m: Mask) -> String {
    members(m)
        .map(|i| worlds[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

/// Sorted, deduplicated family of world sets.
pub fn normalize_family(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// A strict-implication frame with a family of admissible upsets closed under
/// intersection, union, implication and strict implication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralStoFrame {
    frame: StoFrame,
    admissible: Vec<Mask>,
}

impl GeneralStoFrame {
    pub fn new(frame: StoFrame, admissible: Vec<Mask>) -> Result<Self, GeneralFrameError> {
        let admissible = normalize_family(admissible);
        let n = frame.n();
        let full = sets::full(n);
        let worlds = frame.worlds();
        let mut violations = Vec::new();
        for &a in &admissible {
            if imp_upset_violation(frame.preceq(), a) {
                violations.push(AdmissibleViolation::NotUpset(name_set(worlds, a)));
            }
        }
        if !admissible.contains(&0) {
            violations.push(AdmissibleViolation::MissingEmpty);
        }
        if !admissible.contains(&full) {
            violations.push(AdmissibleViolation::MissingFull);
        }
        let pre = frame.preceq().rows();
        let sq = frame.sqsubset().rows();
        'outer: for &a in &admissible {
            for &b in &admissible {
                let checks: [(&'static str, Mask); 4] = [
                    ("intersection", a & b),
                    ("union", a | b),
                    ("implication", imp_op(pre, a, b)),
                    ("strict implication", sto_op(sq, a, b)),
                ];
                for (op, result) in checks {
                    if admissible.binary_search(&result).is_err() {
                        violations.push(AdmissibleViolation::NotClosedBinary {
                            op,
                            a: name_set(worlds, a),
                            b: name_set(worlds, b),
                        });
                        break 'outer;
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(GeneralStoFrame { frame, admissible })
        } else {
            Err(GeneralFrameError { violations })
        }
    }

    /// The frame with every upset admissible.
    pub fn with_all_upsets(frame: StoFrame) -> GeneralStoFrame {
        let admissible = frame.upsets();
        GeneralStoFrame { frame, admissible }
    }

    pub fn frame(&self) -> &StoFrame {
        &self.frame
    }

    pub fn admissible(&self) -> &[Mask] {
        &self.admissible
    }

    /// Pair `(x, y)` with `x` not below `y` that no admissible set separates.
    pub fn preceq_refinement_witness(&self) -> Option<(usize, usize)> {
        let n = self.frame.n();
        for x in 0..n {
            for y in 0..n {
                if self.frame.preceq().contains(x, y) {
                    continue;
                }
                let separated = self
                    .admissible
                    .iter()
                    .any(|&a| sets::contains(a, x) && !sets::contains(a, y));
                if !separated {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Pair `(x, y)` with `x` not sqsubset `y` that no admissible pair
    /// witnesses: there are no `a, b` with `x` in `a ~> b`, `y` in `a`,
    /// `y` not in `b`.
    pub fn sqsubset_refinement_witness(&self) -> Option<(usize, usize)> {
        let n = self.frame.n();
        let sq = self.frame.sqsubset().rows();
        for x in 0..n {
            for y in 0..n {
                if self.frame.sqsubset().contains(x, y) {
                    continue;
                }
                let witnessed = self.admissible.iter().any(|&a| {
                    sets::contains(a, y)
                        && self.admissible.iter().any(|&b| {
                            !sets::contains(b, y) && sets::contains(sto_op(sq, a, b), x)
                        })
                });
                if !witnessed {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Finite descriptiveness: both refinedness conditions (compactness is
    /// vacuous on finite frames).
    pub fn is_descriptive(&self) -> bool {
        self.preceq_refinement_witness().is_none()
            && self.sqsubset_refinement_witness().is_none()
    }
}

fn imp_upset_violation(order: &Relation, a: Mask) -> bool {
    members(a).any(|x| order.row(x) & !a != 0)
}

/// Finite bimodal frame: a preorder `ri` and an arbitrary relation `rm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S4KFrame {
    worlds: Vec<String>,
    ri: Relation,
    rm: Relation,
}

impl S4KFrame {
    pub fn new(worlds: Vec<String>, ri: Relation, rm: Relation) -> Result<Self, FrameError> {
        let mut violations = check_worlds(&worlds);
        if violations.is_empty() {
            if let Some(x) = ri.is_reflexive() {
                violations.push(FrameViolation::NotReflexive(worlds[x].clone()));
            }
            if let Some((x, y, z)) = ri.transitivity_witness() {
                violations.push(FrameViolation::NotTransitive(
                    worlds[x].clone(),
                    worlds[y].clone(),
                    worlds[z].clone(),
                ));
            }
        }
        if violations.is_empty() {
            Ok(S4KFrame { worlds, ri, rm })
        } else {
            Err(FrameError { violations })
        }
    }

    pub fn n(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn ri(&self) -> &Relation {
        &self.ri
    }

    pub fn rm(&self) -> &Relation {
        &self.rm
    }

    /// Witness against `ri ; rm <= rm`, the BHL inclusion.
    pub fn bhl_witness(&self) -> Option<(usize, usize, usize)> {
        coherence_witness(&self.ri, &self.rm)
    }

    pub fn is_bhl(&self) -> bool {
        self.bhl_witness().is_none()
    }

    pub fn is_partial_order(&self) -> bool {
        self.ri.antisymmetry_witness().is_none()
    }

    pub fn rm_transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        self.rm.transitivity_witness()
    }

    pub fn mask_to_names(&self, m: Mask) -> Vec<String> {
        members(m).map(|i| self.worlds[i].clone()).collect()
    }
}

/// A bimodal frame with a Boolean subalgebra of admissible sets closed under
/// both box operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralS4KFrame {
    frame: S4KFrame,
    admissible: Vec<Mask>,
}

impl GeneralS4KFrame {
    pub fn new(frame: S4KFrame, admissible: Vec<Mask>) -> Result<Self, GeneralFrameError> {
        let admissible = normalize_family(admissible);
        let n = frame.n();
        let full = sets::full(n);
        let worlds = frame.worlds();
        let mut violations = Vec::new();
        if !admissible.contains(&0) {
            violations.push(AdmissibleViolation::MissingEmpty);
        }
        if !admissible.contains(&full) {
            violations.push(AdmissibleViolation::MissingFull);
        }
        'outer: for &a in &admissible {
            let unary: [(&'static str, Mask); 3] = [
                ("complement", full & !a),
                ("[i]", box_op(frame.ri().rows(), a)),
                ("[m]", box_op(frame.rm().rows(), a)),
            ];
            for (op, result) in unary {
                if admissible.binary_search(&result).is_err() {
                    violations.push(AdmissibleViolation::NotClosedUnary {
                        op,
                        a: name_set(worlds, a),
                    });
                    break 'outer;
                }
            }
            for &b in &admissible {
                if admissible.binary_search(&(a & b)).is_err() {
                    violations.push(AdmissibleViolation::NotClosedBinary {
                        op: "intersection",
                        a: name_set(worlds, a),
                        b: name_set(worlds, b),
                    });
                    break 'outer;
                }
            }
        }
        if violations.is_empty() {
            Ok(GeneralS4KFrame { frame, admissible })
        } else {
            Err(GeneralFrameError { violations })
        }
    }

    /// The frame with the full powerset admissible.
    pub fn with_powerset(frame: S4KFrame) -> GeneralS4KFrame {
        let n = frame.n();
        assert!(n <= 24);
        let admissible = (0..(1u64 << n)).collect();
        GeneralS4KFrame { frame, admissible }
    }

    pub fn frame(&self) -> &S4KFrame {
        &self.frame
    }

    pub fn admissible(&self) -> &[Mask] {
        &self.admissible
    }

    /// Distinct pair no admissible set separates.
    pub fn differentiation_witness(&self) -> Option<(usize, usize)> {
        let n = self.frame.n();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let separated = self
                    .admissible
                    .iter()
                    .any(|&a| sets::contains(a, x) && !sets::contains(a, y));
                if !separated {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Pair `(x, y)` outside the relation that no admissible `[.]a` excludes.
    fn tightness_witness(&self, rel: &Relation) -> Option<(usize, usize)> {
        let n = self.frame.n();
        for x in 0..n {
            for y in 0..n {
                if rel.contains(x, y) {
                    continue;
                }
                let witnessed = self.admissible.iter().any(|&a| {
                    !sets::contains(a, y) && sets::contains(box_op(rel.rows(), a), x)
                });
                if !witnessed {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn i_tightness_witness(&self) -> Option<(usize, usize)> {
        self.tightness_witness(self.frame.ri())
    }

    pub fn m_tightness_witness(&self) -> Option<(usize, usize)> {
        self.tightness_witness(self.frame.rm())
    }

    pub fn is_refined(&self) -> bool {
        self.differentiation_witness().is_none()
            && self.i_tightness_witness().is_none()
            && self.m_tightness_witness().is_none()
    }
}

/// Any of the four frame shapes, as read from the JSON interchange format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Frame {
    Sto(StoFrame),
    GeneralSto(GeneralStoFrame),
    S4k(S4KFrame),
    GeneralS4k(GeneralS4KFrame),
}

impl Frame {
    pub fn kind(&self) -> FrameKind {
        match self {
            Frame::Sto(_) | Frame::GeneralSto(_) => FrameKind::Sto,
            Frame::S4k(_) | Frame::GeneralS4k(_) => FrameKind::S4k,
        }
    }

    pub fn worlds(&self) -> &[String] {
        match self {
            Frame::Sto(f) => f.worlds(),
            Frame::GeneralSto(g) => g.frame().worlds(),
            Frame::S4k(f) => f.worlds(),
            Frame::GeneralS4k(g) => g.frame().worlds(),
        }
    }

    pub fn n(&self) -> usize {
        self.worlds().len()
    }

    fn rel1(&self) -> &Relation {
        match self {
            Frame::Sto(f) => f.preceq(),
            Frame::GeneralSto(g) => g.frame().preceq(),
            Frame::S4k(f) => f.ri(),
            Frame::GeneralS4k(g) => g.frame().ri(),
        }
    }

    fn rel2(&self) -> &Relation {
        match self {
            Frame::Sto(f) => f.sqsubset(),
            Frame::GeneralSto(g) => g.frame().sqsubset(),
            Frame::S4k(f) => f.rm(),
            Frame::GeneralS4k(g) => g.frame().rm(),
        }
    }
}

/// Decidable frame conditions paired with axioms by the correspondence
/// results; `Custom` is the escape hatch for user predicates.
#[derive(Clone)]
pub enum FrameCondition {
    /// `sqsubset <= preceq`.
    SubPrec,
    /// Every world has a successor under both relations at once.
    IrSucc,
    /// `sqsubset` is transitive.
    PTrans,
    /// `ri ; rm <= rm`.
    Bhl,
    /// `rm ; rm <= rm ; ri`.
    SemiTrans,
    /// `rel2 <= rel1` in either reading.
    Strength,
    Custom {
        name: &'static str,
        kind: Option<FrameKind>,
        check: fn(n: usize, rel1: &Relation, rel2: &Relation) -> Option<Vec<usize>>,
    },
}

impl fmt::Debug for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FrameCondition {
    pub fn name(&self) -> &'static str {
        match self {
            FrameCondition::SubPrec => "sub-prec",
            FrameCondition::IrSucc => "ir-succ",
            FrameCondition::PTrans => "p-trans",
            FrameCondition::Bhl => "bhl",
            FrameCondition::SemiTrans => "semi-trans",
            FrameCondition::Strength => "strength",
            FrameCondition::Custom { name, .. } => name,
        }
    }

    /// Frame kind the condition is stated for; `None` means either.
    pub fn kind(&self) -> Option<FrameKind> {
        match self {
            FrameCondition::SubPrec | FrameCondition::IrSucc | FrameCondition::PTrans => {
                Some(FrameKind::Sto)
            }
            FrameCondition::Bhl | FrameCondition::SemiTrans => Some(FrameKind::S4k),
            FrameCondition::Strength => None,
            FrameCondition::Custom { kind, .. } => *kind,
        }
    }

    pub fn by_name(name: &str) -> Option<FrameCondition> {
        match name {
            "sub-prec" => Some(FrameCondition::SubPrec),
            "ir-succ" => Some(FrameCondition::IrSucc),
            "p-trans" => Some(FrameCondition::PTrans),
            "bhl" => Some(FrameCondition::Bhl),
            "semi-trans" => Some(FrameCondition::SemiTrans),
            "strength" => Some(FrameCondition::Strength),
            "partial-order" => Some(PARTIAL_ORDER),
            _ => None,
        }
    }

    /// Counter-witness on raw relations, or `None` when the condition holds.
    pub fn witness(&self, n: usize, rel1: &Relation, rel2: &Relation) -> Option<Vec<usize>> {
        match self {
            FrameCondition::SubPrec | FrameCondition::Strength => {
                for x in 0..n {
                    let extra = rel2.row(x) & !rel1.row(x);
                    if let Some(y) = sets::least(extra) {
                        return Some(vec![x, y]);
                    }
                }
                None
            }
            FrameCondition::IrSucc => (0..n)
                .find(|&x| rel1.row(x) & rel2.row(x) == 0)
                .map(|x| vec![x]),
            FrameCondition::PTrans => {
                rel2.transitivity_witness().map(|(x, y, z)| vec![x, y, z])
            }
            FrameCondition::Bhl => {
                coherence_witness(rel1, rel2).map(|(x, y, z)| vec![x, y, z])
            }
            FrameCondition::SemiTrans => {
                for x in 0..n {
                    for y in members(rel2.row(x)) {
                        let via_ri = members(rel2.row(x))
                            .fold(0, |acc, w| acc | rel1.row(w));
                        let missing = rel2.row(y) & !via_ri;
                        if let Some(z) = sets::least(missing) {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
                None
            }
            FrameCondition::Custom { check, .. } => check(n, rel1, rel2),
        }
    }
}

/// Antisymmetry of the first relation, via the custom-condition escape hatch.
pub const PARTIAL_ORDER: FrameCondition = FrameCondition::Custom {
    name: "partial-order",
    kind: None,
    check: |_n, rel1, _rel2| rel1.antisymmetry_witness().map(|(x, y)| vec![x, y]),
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition `{condition}` does not apply to {kind} frames")]
pub struct KindMismatch {
    pub condition: String,
    pub kind: FrameKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionOutcome {
    Holds,
    Fails { witness: Vec<String> },
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionOutcome::Holds)
    }
}

pub fn check_condition(
    frame: &Frame,
    cond: &FrameCondition,
) -> Result<ConditionOutcome, KindMismatch> {
    if let Some(required) = cond.kind() {
        if required != frame.kind() {
            return Err(KindMismatch {
                condition: cond.name().to_string(),
                kind: frame.kind(),
            });
        }
    }
    let worlds = frame.worlds();
    Ok(match cond.witness(frame.n(), frame.rel1(), frame.rel2()) {
        None => ConditionOutcome::Holds,
        Some(ws) => ConditionOutcome::Fails {
            witness: ws.into_iter().map(|i| worlds[i].clone()).collect(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cluster quotient requires the BHL inclusion ri;rm <= rm; it fails at ({0}, {1}, {2})")]
pub struct BhlRequired(pub String, pub String, pub String);

/// Quotient a bimodal frame by mutual `ri`-reachability.
///
/// Returns the quotient frame (whose `ri` is antisymmetric) and the cluster
/// index of every original world. The BHL inclusion is required for the
/// quotient of `rm` to be independent of representatives.
pub fn cluster_quotient(frame: &S4KFrame) -> Result<(S4KFrame, Vec<usize>), BhlRequired> {
    if let Some((x, y, z)) = frame.bhl_witness() {
        return Err(BhlRequired(
            frame.worlds()[x].clone(),
            frame.worlds()[y].clone(),
            frame.worlds()[z].clone(),
        ));
    }
    let (quotient, map, _) = cluster_quotient_raw(frame);
    Ok((quotient, map))
}

/// Cluster structure of `ri` with quotient relations; no BHL requirement.
/// Returns the quotient frame, the world-to-cluster map and the cluster
/// member masks. Singleton clusters keep their world's name.
pub(crate) fn cluster_quotient_raw(frame: &S4KFrame) -> (S4KFrame, Vec<usize>, Vec<Mask>) {
    let n = frame.n();
    let ri = frame.ri();
    let mut cluster_of = vec![usize::MAX; n];
    let mut clusters: Vec<Mask> = Vec::new();
    for x in 0..n {
        if cluster_of[x] != usize::MAX {
            continue;
        }
        let mask = members(ri.row(x))
            .filter(|&y| ri.contains(y, x))
            .fold(1u64 << x, |acc, y| acc | (1 << y));
        let id = clusters.len();
        for y in members(mask) {
            cluster_of[y] = id;
        }
        clusters.push(mask);
    }
    let k = clusters.len();
    let names = clusters
        .iter()
        .map(|&c| {
            if c.count_ones() == 1 {
                frame.worlds()[sets::least(c).unwrap()].clone()
            } else {
                format!(
                    "{{{}}}",
                    members(c)
                        .map(|i| frame.worlds()[i].as_str())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        })
        .collect::<Vec<_>>();
    let mut q_ri = Relation::empty(k);
    let mut q_rm = Relation::empty(k);
    for x in 0..n {
        for y in members(frame.ri().row(x)) {
            q_ri.insert(cluster_of[x], cluster_of[y]);
        }
        for y in members(frame.rm().row(x)) {
            q_rm.insert(cluster_of[x], cluster_of[y]);
        }
    }
    let quotient = S4KFrame::new(names, q_ri, q_rm).expect("quotient of a preorder");
    (quotient, cluster_of, clusters)
}

/// Single reflexive point related to itself by both relations.
pub fn fix_pt() -> StoFrame {
    StoFrame::new(
        vec!["a".into()],
        Relation::from_pairs(1, &[(0, 0)]),
        Relation::from_pairs(1, &[(0, 0)]),
    )
    .unwrap()
}

/// Two-element chain `a <= b` with `sqsubset = {(a,b),(b,b)}`.
pub fn fix_chain2() -> StoFrame {
    StoFrame::new(
        vec!["a".into(), "b".into()],
        Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)]),
        Relation::from_pairs(2, &[(0, 1), (1, 1)]),
    )
    .unwrap()
}

/// The four-world chain `w <= x <= y <= z` with the second relation as
/// printed in the countermodel figure: `{(w,x),(x,y),(y,y),(z,z)}`. This raw
/// data violates coherence; see [`fix_iele`] for its closure.
pub fn fig1_raw() -> (Vec<String>, Relation, Relation) {
    let worlds = vec!["w".into(), "x".into(), "y".into(), "z".into()];
    let preceq = Relation::from_pairs(
        4,
        &[
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 3),
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
        ],
    );
    let sq = Relation::from_pairs(4, &[(0, 1), (1, 2), (2, 2), (3, 3)]);
    (worlds, preceq, sq)
}

/// Coherence closure of the countermodel figure's data.
pub fn fix_iele() -> StoFrame {
    let (worlds, preceq, sq) = fig1_raw();
    sto_closure(worlds, preceq, sq).unwrap()
}

/// Upsets of a preorder as a set family (helper shared by callers building
/// general frames over plain ones).
pub fn all_upsets(order: &Relation) -> Vec<Mask> {
    upsets(order)
}

/// Downsets of a preorder.
pub fn all_downsets(order: &Relation) -> Vec<Mask> {
    downsets(order)
}
