//! Formula ASTs for the two object languages, with printing, subformula and
//! substitution machinery.
//!
//! `Formula` is the strict-implication language: atoms, constants, `&`, `|`,
//! `->` and `~>`. Negation and box are definitional (`~f == f -> F`,
//! `[]f == T ~> f`) and expand at construction; the printer renders those
//! shapes back with the short tokens. `BiFormula` is classical bimodal logic
//! with primitive negation and two boxes `[i]`, `[m]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Sto(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn sto(l: Formula, r: Formula) -> Formula {
        Formula::Sto(Box::new(l), Box::new(r))
    }

    /// `~f`, definitionally `f -> F`.
    pub fn neg(f: Formula) -> Formula {
        Formula::imp(f, Formula::Bot)
    }

    /// `[]f`, definitionally `T ~> f`.
    pub fn boxed(f: Formula) -> Formula {
        Formula::sto(Formula::Top, f)
    }

    /// Subformulas in post order, first occurrence only; includes `self`.
    pub fn subformulas(&self) -> Vec<Formula> {
        fn walk(f: &Formula, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
            match f {
                Formula::And(l, r)
                | Formula::Or(l, r)
                | Formula::Imp(l, r)
                | Formula::Sto(l, r) => {
                    walk(l, seen, out);
                    walk(r, seen, out);
                }
                _ => {}
            }
            if seen.insert(f.clone()) {
                out.push(f.clone());
            }
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Imp(l, r)
            | Formula::Sto(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Simultaneous substitution; atoms outside the map are unchanged.
    pub fn substitute(&self, map: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Atom(p) => map.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Top | Formula::Bot => self.clone(),
            Formula::And(l, r) => Formula::and(l.substitute(map), r.substitute(map)),
            Formula::Or(l, r) => Formula::or(l.substitute(map), r.substitute(map)),
            Formula::Imp(l, r) => Formula::imp(l.substitute(map), r.substitute(map)),
            Formula::Sto(l, r) => Formula::sto(l.substitute(map), r.substitute(map)),
        }
    }
}

// Binding strength, loosest first: -> | & ~> unary.
const LVL_IMP: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_STO: u8 = 4;
const LVL_UN: u8 = 5;

fn write_sto(f: &Formula, out: &mut fmt::Formatter<'_>, min_lvl: u8) -> fmt::Result {
    // Canonical short forms for the definitional connectives.
    match f {
        Formula::Imp(l, r) if **r == Formula::Bot => {
            out.write_str("~")?;
            return write_sto(l, out, LVL_UN);
        }
        Formula::Sto(l, r) if **l == Formula::Top => {
            out.write_str("[]")?;
            return write_sto(r, out, LVL_UN);
        }
        _ => {}
    }
    let lvl = match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => LVL_UN,
        Formula::Imp(..) => LVL_IMP,
        Formula::Or(..) => LVL_OR,
        Formula::And(..) => LVL_AND,
        Formula::Sto(..) => LVL_STO,
    };
    if lvl < min_lvl {
        out.write_str("(")?;
        write_sto(f, out, 0)?;
        return out.write_str(")");
    }
    match f {
        Formula::Atom(p) => out.write_str(p),
        Formula::Top => out.write_str("T"),
        Formula::Bot => out.write_str("F"),
        // -> and ~> are right associative, & and | left associative.
        Formula::Imp(l, r) => {
            write_sto(l, out, LVL_IMP + 1)?;
            out.write_str(" -> ")?;
            write_sto(r, out, LVL_IMP)
        }
        Formula::Or(l, r) => {
            write_sto(l, out, LVL_OR)?;
            out.write_str(" | ")?;
            write_sto(r, out, LVL_OR + 1)
        }
        Formula::And(l, r) => {
            write_sto(l, out, LVL_AND)?;
            out.write_str(" & ")?;
            write_sto(r, out, LVL_AND + 1)
        }
        Formula::Sto(l, r) => {
            write_sto(l, out, LVL_STO + 1)?;
            out.write_str(" ~> ")?;
            write_sto(r, out, LVL_STO)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sto(self, f, 0)
    }
}

/// Classical bimodal formulas; negation is primitive here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BiFormula {
    Atom(String),
    Top,
    Bot,
    And(Box<BiFormula>, Box<BiFormula>),
    Or(Box<BiFormula>, Box<BiFormula>),
    Imp(Box<BiFormula>, Box<BiFormula>),
    Neg(Box<BiFormula>),
    BoxI(Box<BiFormula>),
    BoxM(Box<BiFormula>),
}

impl BiFormula {
    pub fn atom(name: &str) -> BiFormula {
        BiFormula::Atom(name.to_string())
    }

    pub fn and(l: BiFormula, r: BiFormula) -> BiFormula {
        BiFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BiFormula, r: BiFormula) -> BiFormula {
        BiFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: BiFormula, r: BiFormula) -> BiFormula {
        BiFormula::Imp(Box::new(l), Box::new(r))
    }

    pub fn neg(f: BiFormula) -> BiFormula {
        BiFormula::Neg(Box::new(f))
    }

    pub fn box_i(f: BiFormula) -> BiFormula {
        BiFormula::BoxI(Box::new(f))
    }

    pub fn box_m(f: BiFormula) -> BiFormula {
        BiFormula::BoxM(Box::new(f))
    }

    /// `<i>f`, definitionally `~[i]~f`.
    pub fn dia_i(f: BiFormula) -> BiFormula {
        BiFormula::neg(BiFormula::box_i(BiFormula::neg(f)))
    }

    /// `<m>f`, definitionally `~[m]~f`.
    pub fn dia_m(f: BiFormula) -> BiFormula {
        BiFormula::neg(BiFormula::box_m(BiFormula::neg(f)))
    }

    pub fn subformulas(&self) -> Vec<BiFormula> {
        fn walk(f: &BiFormula, seen: &mut BTreeSet<BiFormula>, out: &mut Vec<BiFormula>) {
            match f {
                BiFormula::And(l, r) | BiFormula::Or(l, r) | BiFormula::Imp(l, r) => {
                    walk(l, seen, out);
                    walk(r, seen, out);
                }
                BiFormula::Neg(g) | BiFormula::BoxI(g) | BiFormula::BoxM(g) => {
                    walk(g, seen, out);
                }
                _ => {}
            }
            if seen.insert(f.clone()) {
                out.push(f.clone());
            }
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            BiFormula::Atom(p) => {
                out.insert(p.clone());
            }
            BiFormula::Top | BiFormula::Bot => {}
            BiFormula::And(l, r) | BiFormula::Or(l, r) | BiFormula::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            BiFormula::Neg(g) | BiFormula::BoxI(g) | BiFormula::BoxM(g) => {
                g.collect_atoms(out);
            }
        }
    }
}

fn write_bi(f: &BiFormula, out: &mut fmt::Formatter<'_>, min_lvl: u8) -> fmt::Result {
    let lvl = match f {
        BiFormula::Atom(_) | BiFormula::Top | BiFormula::Bot => LVL_UN,
        BiFormula::Neg(..) | BiFormula::BoxI(..) | BiFormula::BoxM(..) => LVL_UN,
        BiFormula::Imp(..) => LVL_IMP,
        BiFormula::Or(..) => LVL_OR,
        BiFormula::And(..) => LVL_AND,
    };
    if lvl < min_lvl {
        out.write_str("(")?;
        write_bi(f, out, 0)?;
        return out.write_str(")");
    }
    match f {
        BiFormula::Atom(p) => out.write_str(p),
        BiFormula::Top => out.write_str("T"),
        BiFormula::Bot => out.write_str("F"),
        BiFormula::Neg(g) => {
            out.write_str("~")?;
            write_bi(g, out, LVL_UN)
        }
        BiFormula::BoxI(g) => {
            out.write_str("[i]")?;
            write_bi(g, out, LVL_UN)
        }
        BiFormula::BoxM(g) => {
            out.write_str("[m]")?;
            write_bi(g, out, LVL_UN)
        }
        BiFormula::Imp(l, r) => {
            write_bi(l, out, LVL_IMP + 1)?;
            out.write_str(" -> ")?;
            write_bi(r, out, LVL_IMP)
        }
        BiFormula::Or(l, r) => {
            write_bi(l, out, LVL_OR)?;
            out.write_str(" | ")?;
            write_bi(r, out, LVL_OR + 1)
        }
        BiFormula::And(l, r) => {
            write_bi(l, out, LVL_AND)?;
            out.write_str(" & ")?;
            write_bi(r, out, LVL_AND + 1)
        }
    }
}

impl fmt::Display for BiFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bi(self, f, 0)
    }
}
