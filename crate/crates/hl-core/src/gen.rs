//! Seeded random formula generators used by the sweep tests. ChaCha-based so
//! that a seed pins the exact formula set across platforms and runs.

use crate::syntax::{BiFormula, Formula};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn gen_sto(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let leaf = depth == 0;
    // Leaves: mostly atoms; inner nodes: binary connectives with a bias
    // towards strict implication, plus the derived unaries.
    let roll = if leaf { rng.gen_range(0..10) } else { rng.gen_range(10..24) };
    match roll {
        0..=7 => Formula::atom(ATOMS[rng.gen_range(0..ATOMS.len())]),
        8 => Formula::Top,
        9 => Formula::Bot,
        10..=11 => Formula::and(gen_sto(rng, depth - 1), gen_sto(rng, depth - 1)),
        12..=13 => Formula::or(gen_sto(rng, depth - 1), gen_sto(rng, depth - 1)),
        14..=16 => Formula::imp(gen_sto(rng, depth - 1), gen_sto(rng, depth - 1)),
        17..=20 => Formula::sto(gen_sto(rng, depth - 1), gen_sto(rng, depth - 1)),
        21 => Formula::neg(gen_sto(rng, depth - 1)),
        22..=23 => Formula::boxed(gen_sto(rng, depth - 1)),
        _ => unreachable!(),
    }
}

fn gen_bi(rng: &mut ChaCha8Rng, depth: usize) -> BiFormula {
    let leaf = depth == 0;
    let roll = if leaf { rng.gen_range(0..10) } else { rng.gen_range(10..24) };
    match roll {
        0..=7 => BiFormula::atom(ATOMS[rng.gen_range(0..ATOMS.len())]),
        8 => BiFormula::Top,
        9 => BiFormula::Bot,
        10..=11 => BiFormula::and(gen_bi(rng, depth - 1), gen_bi(rng, depth - 1)),
        12..=13 => BiFormula::or(gen_bi(rng, depth - 1), gen_bi(rng, depth - 1)),
        14..=16 => BiFormula::imp(gen_bi(rng, depth - 1), gen_bi(rng, depth - 1)),
        17..=18 => BiFormula::neg(gen_bi(rng, depth - 1)),
        19..=21 => BiFormula::box_i(gen_bi(rng, depth - 1)),
        22..=23 => BiFormula::box_m(gen_bi(rng, depth - 1)),
        _ => unreachable!(),
    }
}

/// `count` strict-implication formulas over `p, q, r`, depth at most 3.
pub fn sto_formulas(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen_sto(&mut rng, 3)).collect()
}

/// `count` bimodal formulas over `p, q, r`, depth at most 3.
pub fn bi_formulas(seed: u64, count: usize) -> Vec<BiFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen_bi(&mut rng, 3)).collect()
}

/// Seeded raw bit source for structure generators in tests.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        assert_eq!(sto_formulas(0, 20), sto_formulas(0, 20));
        assert_eq!(bi_formulas(7, 20), bi_formulas(7, 20));
        assert_ne!(sto_formulas(0, 20), sto_formulas(1, 20));
    }

    #[test]
    fn formulas_stay_within_the_atom_budget() {
        for f in sto_formulas(0, 200) {
            assert!(f.atoms().len() <= 3);
        }
        for f in bi_formulas(0, 200) {
            assert!(f.atoms().len() <= 3);
        }
    }
}
