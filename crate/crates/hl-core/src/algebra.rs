//! Finite HL-algebras: Heyting algebras with a binary strict-implication
//! operator satisfying
//!
//! - C1: `(a ~> b) /\ (a ~> c) = a ~> (b /\ c)`
//! - C2: `(a ~> c) /\ (b ~> c) = (a \/ b) ~> c`
//! - C3: `(a ~> b) /\ (b ~> c) <= a ~> c`
//! - C4: `a ~> a = top`
//!
//! together with the complex-algebra construction over a frame's upsets, the
//! prime-filter dual frame, and the two canonical round-trip isomorphisms of
//! the duality. The corpus enumerator produces every operator table on the
//! distributive lattices with at most four elements.

use crate::frames::{GeneralStoFrame, StoFrame};
use crate::sets::{self, contains, members, sto_op, Mask, Relation};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraViolation {
    #[error("not a lattice: {0}")]
    NotLattice(String),
    #[error("not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("no relative pseudocomplement for ({0}, {1})")]
    NoHeytingImp(String, String),
    #[error("C{axiom} fails at ({})", witness.join(", "))]
    CAxiomViolation { axiom: u8, witness: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct AlgebraError {
    pub violations: Vec<AlgebraViolation>,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid algebra: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Bounded distributive lattice with the Heyting implication, all tables
/// precomputed over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Lattice {
    pub elements: Vec<String>,
    pub leq: Relation,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub himp: Vec<Vec<usize>>,
    pub top: usize,
    pub bot: usize,
}

impl Lattice {
    pub(crate) fn new(elements: Vec<String>, leq: Relation) -> Result<Lattice, AlgebraError> {
        let n = elements.len();
        let mut violations = Vec::new();
        if n == 0 {
            violations.push(AlgebraViolation::NotLattice("no elements".into()));
            return Err(AlgebraError { violations });
        }
        if let Some(x) = leq.is_reflexive() {
            violations.push(AlgebraViolation::NotLattice(format!(
                "order not reflexive at {}",
                elements[x]
            )));
        }
        if let Some((x, y, z)) = leq.transitivity_witness() {
            violations.push(AlgebraViolation::NotLattice(format!(
                "order not transitive at ({}, {}, {})",
                elements[x], elements[y], elements[z]
            )));
        }
        if let Some((x, y)) = leq.antisymmetry_witness() {
            violations.push(AlgebraViolation::NotLattice(format!(
                "order not antisymmetric on ({}, {})",
                elements[x], elements[y]
            )));
        }
        if !violations.is_empty() {
            return Err(AlgebraError { violations });
        }

        let le = |a: usize, b: usize| leq.contains(a, b);
        let mut meet = vec![vec![usize::MAX; n]; n];
        let mut join = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                match lower.iter().copied().find(|&m| lower.iter().all(|&c| le(c, m))) {
                    Some(m) => meet[a][b] = m,
                    None => violations.push(AlgebraViolation::NotLattice(format!(
                        "no meet of ({}, {})",
                        elements[a], elements[b]
                    ))),
                }
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                match upper.iter().copied().find(|&j| upper.iter().all(|&c| le(j, c))) {
                    Some(j) => join[a][b] = j,
                    None => violations.push(AlgebraViolation::NotLattice(format!(
                        "no join of ({}, {})",
                        elements[a], elements[b]
                    ))),
                }
            }
        }
        if !violations.is_empty() {
            return Err(AlgebraError { violations });
        }

        let bot = (0..n).find(|&c| (0..n).all(|d| le(c, d))).expect("finite lattice");
        let top = (0..n).find(|&c| (0..n).all(|d| le(d, c))).expect("finite lattice");

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        violations.push(AlgebraViolation::NotDistributive(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        if !violations.is_empty() {
            violations.truncate(1);
            return Err(AlgebraError { violations });
        }

        let mut himp = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                // max { c | a /\ c <= b }; in a finite distributive lattice
                // the candidate is the join of all such c.
                let cands: Vec<usize> = (0..n).filter(|&c| le(meet[a][c], b)).collect();
                let sup = cands.iter().fold(bot, |acc, &c| join[acc][c]);
                if cands.contains(&sup) {
                    himp[a][b] = sup;
                } else {
                    violations.push(AlgebraViolation::NoHeytingImp(
                        elements[a].clone(),
                        elements[b].clone(),
                    ));
                }
            }
        }
        if !violations.is_empty() {
            return Err(AlgebraError { violations });
        }

        Ok(Lattice { elements, leq, meet, join, himp, top, bot })
    }

    /// First C-axiom failure of a candidate operator table, if any.
    pub(crate) fn c_axiom_witness(&self, sto: &[Vec<usize>]) -> Option<(u8, Vec<usize>)> {
        self.c_axiom_violations(sto, true).into_iter().next()
    }

    /// First witness per violated C-axiom; with `first_only` the scan stops
    /// at the first failure.
    pub(crate) fn c_axiom_violations(
        &self,
        sto: &[Vec<usize>],
        first_only: bool,
    ) -> Vec<(u8, Vec<usize>)> {
        let n = self.elements.len();
        let mut out: Vec<(u8, Vec<usize>)> = Vec::new();
        let c1 = |a: usize, b: usize, c: usize| {
            self.meet[sto[a][b]][sto[a][c]] == sto[a][self.meet[b][c]]
        };
        let c2 = |a: usize, b: usize, c: usize| {
            self.meet[sto[a][c]][sto[b][c]] == sto[self.join[a][b]][c]
        };
        let c3 = |a: usize, b: usize, c: usize| {
            self.leq.contains(self.meet[sto[a][b]][sto[b][c]], sto[a][c])
        };
        'triples: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for (axiom, holds) in
                        [(1u8, c1(a, b, c)), (2, c2(a, b, c)), (3, c3(a, b, c))]
                    {
                        if !holds && !out.iter().any(|(ax, _)| *ax == axiom) {
                            out.push((axiom, vec![a, b, c]));
                            if first_only {
                                break 'triples;
                            }
                        }
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| sto[a][a] != self.top) {
            out.push((4, vec![a]));
        }
        out.sort_by_key(|(ax, _)| *ax);
        if first_only {
            out.truncate(1);
        }
        out
    }
}

/// Finite Heyting algebra with a strict-implication table satisfying C1-C4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HLAlgebra {
    lattice: Lattice,
    sto: Vec<Vec<usize>>,
}

impl HLAlgebra {
    pub fn new(
        elements: Vec<String>,
        leq: Relation,
        sto: Vec<Vec<usize>>,
    ) -> Result<HLAlgebra, AlgebraError> {
        let lattice = Lattice::new(elements, leq)?;
        let n = lattice.elements.len();
        assert_eq!(sto.len(), n, "operator table must be total");
        assert!(sto.iter().all(|row| row.len() == n && row.iter().all(|&v| v < n)));
        let mut violations = Vec::new();
        for (axiom, witness) in lattice.c_axiom_violations(&sto, false) {
            violations.push(AlgebraViolation::CAxiomViolation {
                axiom,
                witness: witness.iter().map(|&i| lattice.elements[i].clone()).collect(),
            });
        }
        if violations.is_empty() {
            Ok(HLAlgebra { lattice, sto })
        } else {
            Err(AlgebraError { violations })
        }
    }

    pub fn size(&self) -> usize {
        self.lattice.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.lattice.elements
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq.contains(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join[a][b]
    }

    pub fn himp(&self, a: usize, b: usize) -> usize {
        self.lattice.himp[a][b]
    }

    pub fn sto(&self, a: usize, b: usize) -> usize {
        self.sto[a][b]
    }

    pub fn top(&self) -> usize {
        self.lattice.top
    }

    pub fn bot(&self) -> usize {
        self.lattice.bot
    }

    /// Elements with no proper join decomposition (excluding bottom).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&j| {
                j != self.bot()
                    && (0..n).all(|a| {
                        (0..n).all(|b| self.join(a, b) != j || a == j || b == j)
                    })
            })
            .collect()
    }
}

/// The algebra of all upsets of a strict-implication frame, ordered by
/// inclusion, with the operator induced by the second relation.
pub fn complex_algebra(frame: &StoFrame) -> HLAlgebra {
    let mut ups = frame.upsets();
    ups.sort_by_key(|&m| (m.count_ones(), m));
    let names: Vec<String> = ups.iter().map(|&m| set_name(frame.worlds(), m)).collect();
    let index: BTreeMap<Mask, usize> = ups.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let k = ups.len();
    let mut leq = Relation::empty(k);
    for a in 0..k {
        for b in 0..k {
            if sets::is_subset(ups[a], ups[b]) {
                leq.insert(a, b);
            }
        }
    }
    let sq = frame.sqsubset().rows();
    let mut sto = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            let res = sto_op(sq, ups[a], ups[b]);
            sto[a][b] = index[&res];
        }
    }
    HLAlgebra::new(names, leq, sto).expect("upset algebras satisfy C1-C4")
}

fn set_name(labels: &[String], m: Mask) -> String {
    format!(
        "{{{}}}",
        members(m).map(|i| labels[i].as_str()).collect::<Vec<_>>().join(",")
    )
}

/// All prime filters, as element masks in ascending order. A prime filter is
/// nonempty, proper, upward closed, closed under meets, and contains a join
/// only if it contains one of the joinands.
pub fn prime_filters(algebra: &HLAlgebra) -> Vec<Mask> {
    let n = algebra.size();
    assert!(n <= 20, "prime-filter enumeration is exponential in algebra size");
    let mut out = Vec::new();
    'cand: for f in 1u64..(1u64 << n) {
        if f == sets::full(n) {
            continue;
        }
        for a in members(f) {
            for b in 0..n {
                if algebra.leq(a, b) && !contains(f, b) {
                    continue 'cand;
                }
                if contains(f, b) && !contains(f, algebra.meet(a, b)) {
                    continue 'cand;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if contains(f, algebra.join(a, b)) && !contains(f, a) && !contains(f, b) {
                    continue 'cand;
                }
            }
        }
        out.push(f);
    }
    out
}

/// Prime-filter dual of an algebra: worlds are prime filters ordered by
/// inclusion; `p sqsubset q` iff every `a ~> b` in `p` propagates membership
/// `a in q => b in q`; admissibles are the sets `{p | a in p}`.
pub fn dual_frame(algebra: &HLAlgebra) -> GeneralStoFrame {
    let filters = prime_filters(algebra);
    let k = filters.len();
    let worlds: Vec<String> = filters
        .iter()
        .map(|&f| set_name(algebra.elements(), f))
        .collect();
    let mut preceq = Relation::empty(k);
    let mut sq = Relation::empty(k);
    for p in 0..k {
        for q in 0..k {
            if sets::is_subset(filters[p], filters[q]) {
                preceq.insert(p, q);
            }
            let propagates = (0..algebra.size()).all(|a| {
                (0..algebra.size()).all(|b| {
                    !(contains(filters[p], algebra.sto(a, b))
                        && contains(filters[q], a)
                        && !contains(filters[q], b))
                })
            });
            if propagates {
                sq.insert(p, q);
            }
        }
    }
    let frame = StoFrame::new(worlds, preceq, sq)
        .expect("the dual of an HL-algebra is a sto-frame");
    let admissible: Vec<Mask> = (0..algebra.size())
        .map(|a| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, &f)| contains(f, a))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    GeneralStoFrame::new(frame, admissible)
        .expect("the element images form an admissible family")
}

/// Result of checking one of the canonical duality maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn is_iso(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that `a -> {p | a in p}` is an isomorphism from the algebra onto the
/// admissible-set algebra of its dual frame, commuting with meet, join,
/// Heyting implication and the strict-implication operator.
pub fn round_trip_algebra(algebra: &HLAlgebra) -> IsoReport {
    let dual = dual_frame(algebra);
    let sets_of = dual.admissible();
    let filters = prime_filters(algebra);
    let n = algebra.size();
    let mut failures = Vec::new();

    let tilde: Vec<Mask> = (0..n)
        .map(|a| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, &f)| contains(f, a))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();

    // Bijectivity onto the admissible family.
    let mut images = tilde.clone();
    images.sort_unstable();
    images.dedup();
    if images.len() != n {
        failures.push("the canonical map is not injective".to_string());
    }
    if images.len() != sets_of.len() {
        failures.push(format!(
            "the canonical map is not onto the admissible family ({} images, {} sets)",
            images.len(),
            sets_of.len()
        ));
    }

    let pre = dual.frame().preceq().rows();
    let sq = dual.frame().sqsubset().rows();
    let el = algebra.elements();
    for a in 0..n {
        for b in 0..n {
            if tilde[algebra.meet(a, b)] != tilde[a] & tilde[b] {
                failures.push(format!("meet not preserved at ({}, {})", el[a], el[b]));
            }
            if tilde[algebra.join(a, b)] != tilde[a] | tilde[b] {
                failures.push(format!("join not preserved at ({}, {})", el[a], el[b]));
            }
            if tilde[algebra.himp(a, b)] != sets::imp_op(pre, tilde[a], tilde[b]) {
                failures.push(format!(
                    "implication not preserved at ({}, {})",
                    el[a], el[b]
                ));
            }
            if tilde[algebra.sto(a, b)] != sto_op(sq, tilde[a], tilde[b]) {
                failures.push(format!(
                    "strict implication not preserved at ({}, {})",
                    el[a], el[b]
                ));
            }
        }
    }
    IsoReport { failures }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("frame is not descriptive: {refinement} refinedness fails at ({x}, {y})")]
pub struct NotDescriptive {
    pub refinement: &'static str,
    pub x: String,
    pub y: String,
}

/// Check that `x -> {a | x in a}` is a bijection from a finite refined
/// general frame onto the prime filters of its admissible-set algebra that
/// preserves and reflects both relations and carries each admissible set to
/// its element image.
pub fn round_trip_frame(general: &GeneralStoFrame) -> Result<IsoReport, NotDescriptive> {
    let frame = general.frame();
    if let Some((x, y)) = general.preceq_refinement_witness() {
        return Err(NotDescriptive {
            refinement: "order",
            x: frame.worlds()[x].clone(),
            y: frame.worlds()[y].clone(),
        });
    }
    if let Some((x, y)) = general.sqsubset_refinement_witness() {
        return Err(NotDescriptive {
            refinement: "strict-implication",
            x: frame.worlds()[x].clone(),
            y: frame.worlds()[y].clone(),
        });
    }

    let admissible = general.admissible();
    let k = admissible.len();
    let names: Vec<String> = admissible
        .iter()
        .map(|&m| set_name(frame.worlds(), m))
        .collect();
    let mut leq = Relation::empty(k);
    for a in 0..k {
        for b in 0..k {
            if sets::is_subset(admissible[a], admissible[b]) {
                leq.insert(a, b);
            }
        }
    }
    let sq_rows = frame.sqsubset().rows();
    let index: BTreeMap<Mask, usize> =
        admissible.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut sto = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            sto[a][b] = index[&sto_op(sq_rows, admissible[a], admissible[b])];
        }
    }
    let algebra = HLAlgebra::new(names, leq, sto)
        .expect("admissible families form HL-algebras");

    let filters = prime_filters(&algebra);
    let n = frame.n();
    let mut failures = Vec::new();

    // hat(x) = the set of admissible sets containing x, as an element mask.
    let hat: Vec<Mask> = (0..n)
        .map(|x| {
            admissible
                .iter()
                .enumerate()
                .filter(|(_, &a)| contains(a, x))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();

    let mut positions = Vec::with_capacity(n);
    for x in 0..n {
        match filters.iter().position(|&f| f == hat[x]) {
            Some(i) => positions.push(i),
            None => {
                failures.push(format!(
                    "hat({}) is not a prime filter",
                    frame.worlds()[x]
                ));
                positions.push(usize::MAX);
            }
        }
    }
    {
        let mut seen = positions.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            failures.push("the canonical map is not injective".to_string());
        }
        if filters.len() != n {
            failures.push(format!(
                "the canonical map is not onto the prime filters ({} worlds, {} filters)",
                n,
                filters.len()
            ));
        }
    }
    if failures.is_empty() {
        let dual = dual_frame(&algebra);
        for x in 0..n {
            for y in 0..n {
                let lhs = frame.preceq().contains(x, y);
                let rhs = dual.frame().preceq().contains(positions[x], positions[y]);
                if lhs != rhs {
                    failures.push(format!(
                        "order not preserved/reflected at ({}, {})",
                        frame.worlds()[x],
                        frame.worlds()[y]
                    ));
                }
                let lhs = frame.sqsubset().contains(x, y);
                let rhs = dual.frame().sqsubset().contains(positions[x], positions[y]);
                if lhs != rhs {
                    failures.push(format!(
                        "second relation not preserved/reflected at ({}, {})",
                        frame.worlds()[x],
                        frame.worlds()[y]
                    ));
                }
            }
        }
        // Each admissible set must map onto its element image in the dual.
        for (i, &a) in admissible.iter().enumerate() {
            let image: Mask = members(a).fold(0, |acc, x| acc | (1 << positions[x]));
            let expected: Mask = filters
                .iter()
                .enumerate()
                .filter(|(_, &f)| contains(f, i))
                .fold(0, |acc, (j, _)| acc | (1 << j));
            if image != expected {
                failures.push(format!(
                    "admissible set {} does not correspond to its element image",
                    set_name(frame.worlds(), a)
                ));
            }
        }
    }
    Ok(IsoReport { failures })
}

/// The distributive lattices with 2 to 4 elements: the chains and the
/// four-element Boolean square (every lattice on at most four elements is
/// distributive).
pub(crate) fn small_lattices() -> Vec<(Vec<String>, Relation)> {
    let chain = |labels: &[&str]| {
        let n = labels.len();
        let mut leq = Relation::empty(n);
        for a in 0..n {
            for b in a..n {
                leq.insert(a, b);
            }
        }
        (labels.iter().map(|s| s.to_string()).collect::<Vec<_>>(), leq)
    };
    let mut out = vec![chain(&["0", "1"]), chain(&["0", "m", "1"]), chain(&["0", "a", "b", "1"])];
    // 2x2 square: 0 < a, b < 1 with a, b incomparable.
    let mut leq = Relation::identity(4);
    for b in 1..4 {
        leq.insert(0, b);
    }
    leq.insert(1, 3);
    leq.insert(2, 3);
    out.push((
        vec!["0".into(), "a".into(), "b".into(), "1".into()],
        leq,
    ));
    out
}

/// Every C1-C4 operator table on the small lattices.
///
/// C1/C2 determine a table from its values on join-irreducible first and
/// meet-irreducible second arguments, so only those entries are enumerated;
/// each reconstructed table is then checked in full.
pub fn hl_corpus() -> Vec<HLAlgebra> {
    let mut out = Vec::new();
    for (elements, leq) in small_lattices() {
        let lattice = Lattice::new(elements.clone(), leq.clone()).unwrap();
        let n = elements.len();
        let join_irr: Vec<usize> = (0..n)
            .filter(|&j| {
                j != lattice.bot
                    && (0..n)
                        .all(|a| (0..n).all(|b| lattice.join[a][b] != j || a == j || b == j))
            })
            .collect();
        let meet_irr: Vec<usize> = (0..n)
            .filter(|&m| {
                m != lattice.top
                    && (0..n)
                        .all(|a| (0..n).all(|b| lattice.meet[a][b] != m || a == m || b == m))
            })
            .collect();
        let slots = join_irr.len() * meet_irr.len();
        let mut choice = vec![0usize; slots];
        loop {
            let mut sto = vec![vec![lattice.top; n]; n];
            for a in 0..n {
                for b in 0..n {
                    let mut acc = lattice.top;
                    for (ji, &j) in join_irr.iter().enumerate() {
                        if !leq.contains(j, a) {
                            continue;
                        }
                        for (mi, &m) in meet_irr.iter().enumerate() {
                            if !leq.contains(b, m) {
                                continue;
                            }
                            acc = lattice.meet[acc][choice[ji * meet_irr.len() + mi]];
                        }
                    }
                    sto[a][b] = acc;
                }
            }
            if lattice.c_axiom_witness(&sto).is_none() {
                out.push(HLAlgebra { lattice: lattice.clone(), sto });
            }
            let mut i = slots;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < n {
                    break false;
                }
                choice[i] = 0;
            };
            if done {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{fix_chain2, fix_iele, fix_pt};

    fn two_element(with_himp_sto: bool) -> Result<HLAlgebra, AlgebraError> {
        let leq = Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)]);
        // himp as sto: 1 ~> 0 is 0; the broken table sets 1 ~> 1 to 0.
        let sto = if with_himp_sto {
            vec![vec![1, 1], vec![0, 1]]
        } else {
            vec![vec![1, 1], vec![0, 0]]
        };
        HLAlgebra::new(vec!["0".into(), "1".into()], leq, sto)
    }

    #[test]
    fn boolean_two_element_algebra_is_valid() {
        let a = two_element(true).unwrap();
        assert_eq!(a.top(), 1);
        assert_eq!(a.bot(), 0);
        assert_eq!(a.himp(1, 0), 0);
    }

    #[test]
    fn c4_breach_is_reported() {
        let err = two_element(false).unwrap_err();
        assert_eq!(
            err.violations,
            vec![AlgebraViolation::CAxiomViolation { axiom: 4, witness: vec!["1".into()] }]
        );
    }

    #[test]
    fn complex_algebra_of_fixtures() {
        // One reflexive point: two upsets, and {a} ~> {} = {} since a sees a.
        let a = complex_algebra(&fix_pt());
        assert_eq!(a.size(), 2);
        assert_eq!(a.sto(1, 0), 0);
        // Two-chain: the three upsets form a chain.
        let c = complex_algebra(&fix_chain2());
        assert_eq!(c.size(), 3);
        assert_eq!(c.elements(), &["{}", "{b}", "{a,b}"]);
        // The closed countermodel fixture yields a valid algebra (validated
        // on construction).
        let i = complex_algebra(&fix_iele());
        assert_eq!(i.size(), 5);
    }

    #[test]
    fn prime_filters_of_small_algebras() {
        let two = two_element(true).unwrap();
        assert_eq!(prime_filters(&two), vec![0b10]);
        // Three-element chain 0 < m < 1: filters {1} and {m, 1}.
        let c = complex_algebra(&fix_chain2());
        assert_eq!(prime_filters(&c).len(), 2);
        // Boolean square: exactly the two ultrafilters.
        let square = hl_corpus()
            .into_iter()
            .find(|a| a.size() == 4 && !a.leq(1, 2) && !a.leq(2, 1))
            .unwrap();
        assert_eq!(prime_filters(&square).len(), 2);
    }

    #[test]
    fn prime_filter_count_matches_join_irreducibles() {
        for a in hl_corpus() {
            assert_eq!(
                prime_filters(&a).len(),
                a.join_irreducibles().len(),
                "Birkhoff duality count"
            );
        }
    }

    #[test]
    fn dual_of_two_element_himp_algebra_is_a_reflexive_point() {
        let two = two_element(true).unwrap();
        let d = dual_frame(&two);
        assert_eq!(d.frame().n(), 1);
        assert!(d.frame().preceq().contains(0, 0));
        assert!(d.frame().sqsubset().contains(0, 0));
    }

    #[test]
    fn dual_of_constant_top_operator_has_empty_second_relation() {
        // With a ~> b = top constantly, the membership condition instantiates
        // to "a in q implies b in q" for all a, b, which no proper nonempty
        // filter satisfies; the dual second relation is empty. (This is also
        // forced by the key identity: the operator is the one induced by the
        // empty relation.)
        let leq = Relation::from_pairs(2, &[(0, 0), (1, 1), (0, 1)]);
        let vacuous = HLAlgebra::new(
            vec!["0".into(), "1".into()],
            leq,
            vec![vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        let d = dual_frame(&vacuous);
        assert_eq!(d.frame().n(), 1);
        assert!(!d.frame().sqsubset().contains(0, 0));
    }

    #[test]
    fn key_identity_on_the_corpus() {
        // tilde(a ~> b) equals tilde(a) ~> tilde(b) computed in the dual.
        for a in hl_corpus() {
            let dual = dual_frame(&a);
            let filters = prime_filters(&a);
            let sq = dual.frame().sqsubset().rows();
            let tilde = |e: usize| -> Mask {
                filters
                    .iter()
                    .enumerate()
                    .filter(|(_, &f)| contains(f, e))
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            };
            for x in 0..a.size() {
                for y in 0..a.size() {
                    assert_eq!(tilde(a.sto(x, y)), sto_op(sq, tilde(x), tilde(y)));
                }
            }
        }
    }

    #[test]
    fn operator_monotonicity_facts_on_the_corpus() {
        // a ~> b <= (a /\ c) ~> b and a ~> b <= (a /\ c) ~> (b /\ c).
        for alg in hl_corpus() {
            for a in 0..alg.size() {
                for b in 0..alg.size() {
                    for c in 0..alg.size() {
                        let ac = alg.meet(a, c);
                        let bc = alg.meet(b, c);
                        assert!(alg.leq(alg.sto(a, b), alg.sto(ac, b)));
                        assert!(alg.leq(alg.sto(a, b), alg.sto(ac, bc)));
                    }
                }
            }
        }
    }

    #[test]
    fn corpus_round_trips() {
        let corpus = hl_corpus();
        assert!(corpus.len() > 10, "corpus should be nontrivial");
        for a in &corpus {
            let report = round_trip_algebra(a);
            assert!(report.is_iso(), "{:?}", report.failures);
        }
    }

    #[test]
    fn frame_round_trips_on_fixtures() {
        for f in [fix_pt(), fix_chain2(), fix_iele()] {
            let g = GeneralStoFrame::with_all_upsets(f);
            let report = round_trip_frame(&g).unwrap();
            assert!(report.is_iso(), "{:?}", report.failures);
        }
    }

    #[test]
    fn unrefined_frame_is_rejected() {
        let g = GeneralStoFrame::new(fix_chain2(), vec![0b00, 0b11]).unwrap();
        let err = round_trip_frame(&g).unwrap_err();
        assert_eq!(err.refinement, "order");
    }

    #[test]
    fn dual_frames_satisfy_coherence_on_the_corpus() {
        for a in hl_corpus() {
            // Construction already validates; re-run the validator explicitly.
            let d = dual_frame(&a);
            let f = d.frame();
            assert!(StoFrame::new(
                f.worlds().to_vec(),
                f.preceq().clone(),
                f.sqsubset().clone()
            )
            .is_ok());
        }
    }
}
