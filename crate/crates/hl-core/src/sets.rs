//! Machine-word sets and relations over world indices.
//!
//! Frames are capped at [`MAX_WORLDS`] worlds so that every world set is a
//! single `u64` and relations are vectors of successor masks.

pub const MAX_WORLDS: usize = 64;

/// Set of world indices, one bit per world.
pub type Mask = u64;

/// All worlds `0..n`.
pub fn full(n: usize) -> Mask {
    if n >= MAX_WORLDS {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub fn contains(m: Mask, i: usize) -> bool {
    (m >> i) & 1 == 1
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

pub fn members(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Least member, if any.
pub fn least(m: Mask) -> Option<usize> {
    if m == 0 {
        None
    } else {
        Some(m.trailing_zeros() as usize)
    }
}

/// Binary relation on `0..n`, stored as successor masks per source world.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<Mask>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_WORLDS, "at most {MAX_WORLDS} worlds are supported");
        Relation { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut r = Relation::empty(n);
        for &(x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn from_rows(rows: Vec<Mask>) -> Self {
        assert!(rows.len() <= MAX_WORLDS);
        let n = rows.len();
        let f = full(n);
        debug_assert!(rows.iter().all(|r| is_subset(*r, f)));
        Relation { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        contains(self.rows[x], y)
    }

    /// Successors of `x`.
    pub fn row(&self, x: usize) -> Mask {
        self.rows[x]
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    /// Predecessors of `y`.
    pub fn column(&self, y: usize) -> Mask {
        let mut c = 0;
        for x in 0..self.n {
            if self.contains(x, y) {
                c |= 1 << x;
            }
        }
        c
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in members(self.rows[x]) {
                out.push((x, y));
            }
        }
        out
    }

    /// Relational composition read left to right:
    /// `(x, z)` is in the result iff `x self y` and `y other z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .map(|r| members(*r).fold(0, |acc, y| acc | other.rows[y]))
            .collect();
        Relation { n: self.n, rows }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect();
        Relation { n: self.n, rows }
    }

    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| is_subset(*a, *b))
    }

    pub fn is_reflexive(&self) -> Option<usize> {
        (0..self.n).find(|&x| !self.contains(x, x))
    }

    /// First transitivity failure `(x, y, z)` with `x R y R z` but not `x R z`.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in members(self.rows[x]) {
                let missing = self.rows[y] & !self.rows[x];
                if let Some(z) = least(missing) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in members(self.rows[x]) {
                if y != x && self.contains(y, x) {
                    return Some((x.min(y), x.max(y)));
                }
            }
        }
        None
    }

    /// Row-major bit encoding, used as the canonical frame ordering key.
    pub fn encode(&self) -> u128 {
        assert!(self.n * self.n <= 128, "encoding is limited to 11 worlds");
        let mut bits: u128 = 0;
        for x in 0..self.n {
            for y in members(self.rows[x]) {
                bits |= 1u128 << (x * self.n + y);
            }
        }
        bits
    }

    /// Image of the relation under a permutation `perm` of the carrier
    /// (world `x` is renamed to `perm[x]`).
    pub fn permute(&self, perm: &[usize]) -> Relation {
        let mut r = Relation::empty(self.n);
        for x in 0..self.n {
            for y in members(self.rows[x]) {
                r.insert(perm[x], perm[y]);
            }
        }
        r
    }
}

/// `{x | every rel1-successor of x in a lies in b}` — the implication
/// operator of the upset algebra when `rel1` is the intuitionistic order.
pub fn imp_op(rel1: &[Mask], a: Mask, b: Mask) -> Mask {
    let mut out = 0;
    for (x, row) in rel1.iter().enumerate() {
        if row & a & !b == 0 {
            out |= 1 << x;
        }
    }
    out
}

/// `{x | every rel2-successor of x in a lies in b}` — the strict-implication
/// operator; identical shape to [`imp_op`] but over the second relation.
pub fn sto_op(rel2: &[Mask], a: Mask, b: Mask) -> Mask {
    imp_op(rel2, a, b)
}

/// `{x | all rel-successors of x lie in a}`.
pub fn box_op(rel: &[Mask], a: Mask) -> Mask {
    let mut out = 0;
    for (x, row) in rel.iter().enumerate() {
        if row & !a == 0 {
            out |= 1 << x;
        }
    }
    out
}

/// All upward-closed sets of a preorder, ascending by mask value.
pub fn upsets(order: &Relation) -> Vec<Mask> {
    let n = order.n();
    assert!(n <= 24, "upset enumeration is exponential in the world count");
    let mut out = Vec::new();
    'cand: for m in 0..(1u64 << n) {
        for x in members(m) {
            if !is_subset(order.row(x), m) {
                continue 'cand;
            }
        }
        out.push(m);
    }
    out
}

/// All downward-closed sets of a preorder, ascending by mask value.
pub fn downsets(order: &Relation) -> Vec<Mask> {
    let n = order.n();
    assert!(n <= 24);
    let mut out = Vec::new();
    'cand: for m in 0..(1u64 << n) {
        for x in members(m) {
            if order.column(x) & !m != 0 {
                continue 'cand;
            }
        }
        out.push(m);
    }
    out
}
