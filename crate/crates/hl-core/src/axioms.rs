//! Named catalogue of the axioms used throughout the crate, written over the
//! atoms `p`, `q`, `r` exactly as displayed in their usual axiomatizations.

use crate::syntax::{BiFormula, Formula};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomName {
    Ka,
    Di,
    Tr,
    Sa,
    Sb,
    Ir,
    Box,
    Hug,
    P,
    T,
    Four,
    C4,
    Sl,
    L,
    AppA,
    Bhl,
    GrzI,
    GrzM,
    FourM,
    Mix,
    Sc,
}

pub const ALL_AXIOMS: [AxiomName; 21] = [
    AxiomName::Ka,
    AxiomName::Di,
    AxiomName::Tr,
    AxiomName::Sa,
    AxiomName::Sb,
    AxiomName::Ir,
    AxiomName::Box,
    AxiomName::Hug,
    AxiomName::P,
    AxiomName::T,
    AxiomName::Four,
    AxiomName::C4,
    AxiomName::Sl,
    AxiomName::L,
    AxiomName::AppA,
    AxiomName::Bhl,
    AxiomName::GrzI,
    AxiomName::GrzM,
    AxiomName::FourM,
    AxiomName::Mix,
    AxiomName::Sc,
];

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomName::Ka => "Ka",
            AxiomName::Di => "Di",
            AxiomName::Tr => "Tr",
            AxiomName::Sa => "Sa",
            AxiomName::Sb => "Sb",
            AxiomName::Ir => "IR",
            AxiomName::Box => "Box",
            AxiomName::Hug => "Hug",
            AxiomName::P => "P",
            AxiomName::T => "T",
            AxiomName::Four => "Four",
            AxiomName::C4 => "C4",
            AxiomName::Sl => "SL",
            AxiomName::L => "L",
            AxiomName::AppA => "AppA",
            AxiomName::Bhl => "BHL",
            AxiomName::GrzI => "GrzI",
            AxiomName::GrzM => "GrzM",
            AxiomName::FourM => "FourM",
            AxiomName::Mix => "Mix",
            AxiomName::Sc => "Sc",
        })
    }
}

impl std::str::FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_AXIOMS
            .iter()
            .find(|a| a.to_string() == s)
            .copied()
            .ok_or_else(|| format!("unknown axiom name `{s}`"))
    }
}

/// An axiom lives in one of the two object languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFormula {
    Sto(Formula),
    Bi(BiFormula),
}

impl fmt::Display for AxiomFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFormula::Sto(g) => g.fmt(f),
            AxiomFormula::Bi(g) => g.fmt(f),
        }
    }
}

fn p() -> Formula {
    Formula::atom("p")
}

fn q() -> Formula {
    Formula::atom("q")
}

fn r() -> Formula {
    Formula::atom("r")
}

fn bp() -> BiFormula {
    BiFormula::atom("p")
}

/// Grz written with the given box, over the atom `p`.
fn grz(bx: fn(BiFormula) -> BiFormula) -> BiFormula {
    // [](([](p -> []p)) -> p) -> p
    let inner = bx(BiFormula::imp(bp(), bx(bp())));
    BiFormula::imp(bx(BiFormula::imp(inner, bp())), bp())
}

pub fn axiom(name: AxiomName) -> AxiomFormula {
    use AxiomFormula::{Bi, Sto};
    use BiFormula as B;
    use Formula as F;
    match name {
        // ((p ~> q) & (p ~> r)) -> (p ~> (q & r))
        AxiomName::Ka => Sto(F::imp(
            F::and(F::sto(p(), q()), F::sto(p(), r())),
            F::sto(p(), F::and(q(), r())),
        )),
        // ((p ~> r) & (q ~> r)) -> ((p | q) ~> r)
        AxiomName::Di => Sto(F::imp(
            F::and(F::sto(p(), r()), F::sto(q(), r())),
            F::sto(F::or(p(), q()), r()),
        )),
        // ((p ~> q) & (q ~> r)) -> (p ~> r)
        AxiomName::Tr => Sto(F::imp(
            F::and(F::sto(p(), q()), F::sto(q(), r())),
            F::sto(p(), r()),
        )),
        // (p -> q) -> (p ~> q)
        AxiomName::Sa => Sto(F::imp(F::imp(p(), q()), F::sto(p(), q()))),
        // p -> []p
        AxiomName::Sb => Sto(F::imp(p(), F::boxed(p()))),
        // (p ~> q) -> ~~(p -> q)
        AxiomName::Ir => Sto(F::imp(
            F::sto(p(), q()),
            F::neg(F::neg(F::imp(p(), q()))),
        )),
        // (p ~> q) -> [](p -> q)
        AxiomName::Box => Sto(F::imp(F::sto(p(), q()), F::boxed(F::imp(p(), q())))),
        // (p -> []q) -> (p ~> q)
        AxiomName::Hug => Sto(F::imp(F::imp(p(), F::boxed(q())), F::sto(p(), q()))),
        // (p ~> q) -> [](p ~> q)
        AxiomName::P => Sto(F::imp(F::sto(p(), q()), F::boxed(F::sto(p(), q())))),
        // p -> []p, as displayed for the comonadic box
        AxiomName::T => Sto(F::imp(p(), F::boxed(p()))),
        // []p -> [][]p
        AxiomName::Four => Sto(F::imp(F::boxed(p()), F::boxed(F::boxed(p())))),
        // [][]p -> []p
        AxiomName::C4 => Sto(F::imp(F::boxed(F::boxed(p())), F::boxed(p()))),
        // ([]p -> p) -> p
        AxiomName::Sl => Sto(F::imp(F::imp(F::boxed(p()), p()), p())),
        // []([]p -> p) -> []p
        AxiomName::L => Sto(F::imp(
            F::boxed(F::imp(F::boxed(p()), p())),
            F::boxed(p()),
        )),
        // (p & (p ~> q)) ~> q
        AxiomName::AppA => Sto(F::sto(F::and(p(), F::sto(p(), q())), q())),
        // [m]p -> [i][m]p
        AxiomName::Bhl => Bi(B::imp(B::box_m(bp()), B::box_i(B::box_m(bp())))),
        AxiomName::GrzI => Bi(grz(B::box_i)),
        AxiomName::GrzM => Bi(grz(B::box_m)),
        // [m]p -> [m][m]p
        AxiomName::FourM => Bi(B::imp(B::box_m(bp()), B::box_m(B::box_m(bp())))),
        // [m]p -> [i][m][i]p
        AxiomName::Mix => Bi(B::imp(
            B::box_m(bp()),
            B::box_i(B::box_m(B::box_i(bp()))),
        )),
        // [i]p -> [m]p
        AxiomName::Sc => Bi(B::imp(B::box_i(bp()), B::box_m(bp()))),
    }
}

/// Convenience accessor for the strict-implication axioms.
pub fn sto_axiom(name: AxiomName) -> Formula {
    match axiom(name) {
        AxiomFormula::Sto(f) => f,
        AxiomFormula::Bi(_) => panic!("{name} is a bimodal axiom"),
    }
}

/// Convenience accessor for the bimodal axioms.
pub fn bi_axiom(name: AxiomName) -> BiFormula {
    match axiom(name) {
        AxiomFormula::Bi(f) => f,
        AxiomFormula::Sto(_) => panic!("{name} is a strict-implication axiom"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_bi, parse_sto};

    #[test]
    fn catalogue_matches_displayed_axioms() {
        let sto_cases = [
            (AxiomName::Ka, "((p ~> q) & (p ~> r)) -> (p ~> (q & r))"),
            (AxiomName::Di, "((p ~> r) & (q ~> r)) -> ((p | q) ~> r)"),
            (AxiomName::Tr, "((p ~> q) & (q ~> r)) -> (p ~> r)"),
            (AxiomName::Sa, "(p -> q) -> (p ~> q)"),
            (AxiomName::Sb, "p -> []p"),
            (AxiomName::Ir, "(p ~> q) -> ~~(p -> q)"),
            (AxiomName::Box, "(p ~> q) -> [](p -> q)"),
            (AxiomName::Hug, "(p -> []q) -> (p ~> q)"),
            (AxiomName::P, "(p ~> q) -> [](p ~> q)"),
            (AxiomName::Four, "[]p -> [][]p"),
            (AxiomName::C4, "[][]p -> []p"),
            (AxiomName::Sl, "([]p -> p) -> p"),
            (AxiomName::L, "[]([]p -> p) -> []p"),
            (AxiomName::AppA, "(p & (p ~> q)) ~> q"),
        ];
        for (name, text) in sto_cases {
            assert_eq!(sto_axiom(name), parse_sto(text).unwrap(), "{name}");
        }
        let bi_cases = [
            (AxiomName::Bhl, "[m]p -> [i][m]p"),
            (AxiomName::GrzI, "[i]([i](p -> [i]p) -> p) -> p"),
            (AxiomName::GrzM, "[m]([m](p -> [m]p) -> p) -> p"),
            (AxiomName::FourM, "[m]p -> [m][m]p"),
            (AxiomName::Mix, "[m]p -> [i][m][i]p"),
            (AxiomName::Sc, "[i]p -> [m]p"),
        ];
        for (name, text) in bi_cases {
            assert_eq!(bi_axiom(name), parse_bi(text).unwrap(), "{name}");
        }
    }

    #[test]
    fn substituting_top_in_ka_yields_k_box() {
        use std::collections::BTreeMap;
        let mut map = BTreeMap::new();
        map.insert("p".to_string(), Formula::Top);
        let k_box = sto_axiom(AxiomName::Ka).substitute(&map);
        assert_eq!(k_box, parse_sto("([]q & []r) -> [](q & r)").unwrap());
    }

    #[test]
    fn names_round_trip() {
        for name in ALL_AXIOMS {
            assert_eq!(name.to_string().parse::<AxiomName>().unwrap(), name);
        }
    }
}
