//! Truth sets, satisfaction and frame validity for both languages.
//!
//! Formulas are compiled once to a postfix program and then evaluated over
//! `u64` world masks, so that the valuation sweeps behind `frame_valid` stay
//! cheap. A strict-implication model interprets atoms by upsets; a general
//! model restricts valuations to the admissible family.

use crate::frames::{Frame, FrameKind, GeneralS4KFrame, GeneralStoFrame, S4KFrame, StoFrame};
use crate::sets::{self, box_op, imp_op, members, Mask};
use crate::syntax::{BiFormula, Formula};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("expected a {expected} frame, got a {found} frame")]
    KindMismatch { expected: FrameKind, found: FrameKind },
    #[error("formula has {count} atoms; the validity sweep is capped at {max} (raise --max-atoms)")]
    TooManyAtoms { count: usize, max: usize },
    #[error("valuation of `{atom}` is not an upset")]
    ValuationNotUpset { atom: String },
    #[error("valuation of `{atom}` is not an admissible set")]
    ValuationNotAdmissible { atom: String },
    #[error("valuation of `{atom}` mentions unknown world `{world}`")]
    UnknownWorld { atom: String, world: String },
    #[error("frame has {n} worlds; validity sweeps are capped at {max}")]
    CarrierTooLarge { n: usize, max: usize },
}

/// Map from atoms to world sets. Atoms absent from the map denote the empty
/// set, which is an upset and a member of every admissible family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    map: BTreeMap<String, Mask>,
}

impl Valuation {
    pub fn new(map: BTreeMap<String, Mask>) -> Self {
        Valuation { map }
    }

    pub fn from_names(
        worlds: &[String],
        named: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self, SemanticsError> {
        let mut map = BTreeMap::new();
        for (atom, names) in named {
            let mut mask = 0;
            for w in names {
                let i = worlds.iter().position(|v| v == w).ok_or_else(|| {
                    SemanticsError::UnknownWorld { atom: atom.clone(), world: w.clone() }
                })?;
                mask |= 1 << i;
            }
            map.insert(atom.clone(), mask);
        }
        Ok(Valuation { map })
    }

    pub fn get(&self, atom: &str) -> Mask {
        self.map.get(atom).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, Mask)> {
        self.map.iter().map(|(k, v)| (k, *v))
    }
}

/// A frame paired with a valuation of atoms.
#[derive(Debug, Clone)]
pub struct Model {
    frame: Frame,
    valuation: Valuation,
}

impl Model {
    pub fn new(frame: Frame, valuation: Valuation) -> Result<Self, SemanticsError> {
        for (atom, mask) in valuation.iter() {
            match &frame {
                Frame::Sto(f) => {
                    if !is_upset(f.preceq().rows(), mask) {
                        return Err(SemanticsError::ValuationNotUpset { atom: atom.clone() });
                    }
                }
                Frame::GeneralSto(g) => {
                    if !g.admissible().contains(&mask) {
                        return Err(SemanticsError::ValuationNotAdmissible {
                            atom: atom.clone(),
                        });
                    }
                }
                Frame::S4k(_) => {}
                Frame::GeneralS4k(g) => {
                    if !g.admissible().contains(&mask) {
                        return Err(SemanticsError::ValuationNotAdmissible {
                            atom: atom.clone(),
                        });
                    }
                }
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    /// Truth set of a strict-implication formula; the frame must be of sto
    /// kind.
    pub fn truth_set(&self, formula: &Formula) -> Result<Mask, SemanticsError> {
        let f = match &self.frame {
            Frame::Sto(f) => f,
            Frame::GeneralSto(g) => g.frame(),
            other => {
                return Err(SemanticsError::KindMismatch {
                    expected: FrameKind::Sto,
                    found: other.kind(),
                })
            }
        };
        let compiled = CompiledSto::compile(formula);
        let vals: Vec<Mask> = compiled.atoms.iter().map(|a| self.valuation.get(a)).collect();
        Ok(compiled.eval(f.preceq().rows(), f.sqsubset().rows(), sets::full(f.n()), &vals))
    }

    /// Truth set of a bimodal formula; the frame must be of s4k kind.
    pub fn truth_set_bi(&self, formula: &BiFormula) -> Result<Mask, SemanticsError> {
        let f = match &self.frame {
            Frame::S4k(f) => f,
            Frame::GeneralS4k(g) => g.frame(),
            other => {
                return Err(SemanticsError::KindMismatch {
                    expected: FrameKind::S4k,
                    found: other.kind(),
                })
            }
        };
        let compiled = CompiledBi::compile(formula);
        let vals: Vec<Mask> = compiled.atoms.iter().map(|a| self.valuation.get(a)).collect();
        Ok(compiled.eval(f.ri().rows(), f.rm().rows(), sets::full(f.n()), &vals))
    }
}

pub(crate) fn is_upset(order_rows: &[Mask], mask: Mask) -> bool {
    members(mask).all(|x| order_rows[x] & !mask == 0)
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Atom(usize),
    Top,
    Bot,
    And,
    Or,
    /// Heyting implication relative to the order.
    Imp,
    /// Boolean implication.
    ImpC,
    Sto,
    Neg,
    BoxI,
    BoxM,
}

/// Postfix program for a strict-implication formula.
#[derive(Debug, Clone)]
pub struct CompiledSto {
    ops: Vec<Op>,
    pub atoms: Vec<String>,
}

impl CompiledSto {
    pub fn compile(formula: &Formula) -> Self {
        let atoms: Vec<String> = formula.atoms().into_iter().collect();
        let mut ops = Vec::new();
        fn walk(f: &Formula, atoms: &[String], ops: &mut Vec<Op>) {
            match f {
                Formula::Atom(p) => {
                    ops.push(Op::Atom(atoms.iter().position(|a| a == p).unwrap()))
                }
                Formula::Top => ops.push(Op::Top),
                Formula::Bot => ops.push(Op::Bot),
                Formula::And(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::And);
                }
                Formula::Or(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::Or);
                }
                Formula::Imp(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::Imp);
                }
                Formula::Sto(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::Sto);
                }
            }
        }
        walk(formula, &atoms, &mut ops);
        CompiledSto { ops, atoms }
    }

    pub fn eval(&self, pre: &[Mask], sq: &[Mask], full: Mask, vals: &[Mask]) -> Mask {
        eval_ops(&self.ops, pre, sq, full, vals)
    }
}

/// Postfix program for a bimodal formula.
#[derive(Debug, Clone)]
pub struct CompiledBi {
    ops: Vec<Op>,
    pub atoms: Vec<String>,
}

impl CompiledBi {
    pub fn compile(formula: &BiFormula) -> Self {
        let atoms: Vec<String> = formula.atoms().into_iter().collect();
        let mut ops = Vec::new();
        fn walk(f: &BiFormula, atoms: &[String], ops: &mut Vec<Op>) {
            match f {
                BiFormula::Atom(p) => {
                    ops.push(Op::Atom(atoms.iter().position(|a| a == p).unwrap()))
                }
                BiFormula::Top => ops.push(Op::Top),
                BiFormula::Bot => ops.push(Op::Bot),
                BiFormula::And(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::And);
                }
                BiFormula::Or(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::Or);
                }
                BiFormula::Imp(l, r) => {
                    walk(l, atoms, ops);
                    walk(r, atoms, ops);
                    ops.push(Op::ImpC);
                }
                BiFormula::Neg(g) => {
                    walk(g, atoms, ops);
                    ops.push(Op::Neg);
                }
                BiFormula::BoxI(g) => {
                    walk(g, atoms, ops);
                    ops.push(Op::BoxI);
                }
                BiFormula::BoxM(g) => {
                    walk(g, atoms, ops);
                    ops.push(Op::BoxM);
                }
            }
        }
        walk(formula, &atoms, &mut ops);
        CompiledBi { ops, atoms }
    }

    /// Classical evaluation: `rel1` interprets `[i]`, `rel2` interprets `[m]`,
    /// implication and negation are Boolean.
    pub fn eval(&self, ri: &[Mask], rm: &[Mask], full: Mask, vals: &[Mask]) -> Mask {
        eval_ops(&self.ops, ri, rm, full, vals)
    }
}

fn eval_ops(ops: &[Op], rel1: &[Mask], rel2: &[Mask], full: Mask, vals: &[Mask]) -> Mask {
    let mut stack: Vec<Mask> = Vec::with_capacity(8);
    for op in ops {
        match op {
            Op::Atom(i) => stack.push(vals[*i]),
            Op::Top => stack.push(full),
            Op::Bot => stack.push(0),
            Op::And => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(a & b);
            }
            Op::Or => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(a | b);
            }
            Op::Imp => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(imp_op(rel1, a, b));
            }
            Op::ImpC => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push((full & !a) | b);
            }
            Op::Sto => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(imp_op(rel2, a, b));
            }
            Op::Neg => {
                let a = stack.pop().unwrap();
                stack.push(full & !a);
            }
            Op::BoxI => {
                let a = stack.pop().unwrap();
                stack.push(box_op(rel1, a));
            }
            Op::BoxM => {
                let a = stack.pop().unwrap();
                stack.push(box_op(rel2, a));
            }
        }
    }
    stack.pop().unwrap()
}

/// Result of a validity sweep; refutations carry the lexicographically least
/// refuting valuation and the least world where the formula fails under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Refuted { valuation: BTreeMap<String, Mask>, world: usize },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidOptions {
    /// Refuse formulas with more atoms than this; the sweep is
    /// `|candidates|^atoms`.
    pub max_atoms: usize,
}

impl Default for ValidOptions {
    fn default() -> Self {
        ValidOptions { max_atoms: 3 }
    }
}

/// Valuation sweeps enumerate upsets or subsets of the carrier.
fn check_carrier(n: usize) -> Result<(), SemanticsError> {
    const MAX_SWEEP_WORLDS: usize = 24;
    if n > MAX_SWEEP_WORLDS {
        return Err(SemanticsError::CarrierTooLarge { n, max: MAX_SWEEP_WORLDS });
    }
    Ok(())
}

/// Sweep all assignments of `candidates` to the atoms, in lexicographic order
/// (atoms alphabetical, candidate list ascending), returning the first
/// refutation.
fn sweep(
    atoms: &[String],
    candidates: &[Mask],
    full: Mask,
    mut eval: impl FnMut(&[Mask]) -> Mask,
    opts: ValidOptions,
) -> Result<Validity, SemanticsError> {
    let k = atoms.len();
    if k > opts.max_atoms {
        return Err(SemanticsError::TooManyAtoms { count: k, max: opts.max_atoms });
    }
    let mut idx = vec![0usize; k];
    let mut vals = vec![candidates[0]; k];
    loop {
        for i in 0..k {
            vals[i] = candidates[idx[i]];
        }
        let t = eval(&vals);
        if t != full {
            let world = sets::least(full & !t).unwrap();
            let valuation = atoms
                .iter()
                .cloned()
                .zip(vals.iter().copied())
                .collect::<BTreeMap<_, _>>();
            return Ok(Validity::Refuted { valuation, world });
        }
        // Odometer: last atom varies fastest.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(Validity::Valid);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < candidates.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Validity over all upset valuations of a plain strict-implication frame.
pub fn frame_valid(
    frame: &StoFrame,
    formula: &Formula,
    opts: ValidOptions,
) -> Result<Validity, SemanticsError> {
    check_carrier(frame.n())?;
    let compiled = CompiledSto::compile(formula);
    let candidates = frame.upsets();
    let full = sets::full(frame.n());
    let (pre, sq) = (frame.preceq().rows(), frame.sqsubset().rows());
    sweep(&compiled.atoms, &candidates, full, |vals| compiled.eval(pre, sq, full, vals), opts)
}

/// Validity over admissible valuations of a general frame.
pub fn frame_valid_general(
    general: &GeneralStoFrame,
    formula: &Formula,
    opts: ValidOptions,
) -> Result<Validity, SemanticsError> {
    let frame = general.frame();
    let compiled = CompiledSto::compile(formula);
    let full = sets::full(frame.n());
    let (pre, sq) = (frame.preceq().rows(), frame.sqsubset().rows());
    sweep(
        &compiled.atoms,
        general.admissible(),
        full,
        |vals| compiled.eval(pre, sq, full, vals),
        opts,
    )
}

/// Validity over all subset valuations of a plain bimodal frame.
pub fn frame_valid_bi(
    frame: &S4KFrame,
    formula: &BiFormula,
    opts: ValidOptions,
) -> Result<Validity, SemanticsError> {
    let n = frame.n();
    check_carrier(n)?;
    let compiled = CompiledBi::compile(formula);
    let candidates: Vec<Mask> = (0..(1u64 << n)).collect();
    let full = sets::full(n);
    let (ri, rm) = (frame.ri().rows(), frame.rm().rows());
    sweep(&compiled.atoms, &candidates, full, |vals| compiled.eval(ri, rm, full, vals), opts)
}

/// Validity over admissible valuations of a general bimodal frame.
pub fn frame_valid_bi_general(
    general: &GeneralS4KFrame,
    formula: &BiFormula,
    opts: ValidOptions,
) -> Result<Validity, SemanticsError> {
    let frame = general.frame();
    let compiled = CompiledBi::compile(formula);
    let full = sets::full(frame.n());
    let (ri, rm) = (frame.ri().rows(), frame.rm().rows());
    sweep(
        &compiled.atoms,
        general.admissible(),
        full,
        |vals| compiled.eval(ri, rm, full, vals),
        opts,
    )
}
