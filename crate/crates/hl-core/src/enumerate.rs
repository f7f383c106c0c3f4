//! Exhaustive enumeration of labeled frames on worlds `w0..w{n-1}`.
//!
//! Strict-implication frames are generated poset by poset; for a fixed order
//! the coherent second relations are exactly those whose columns are
//! downsets, so they are built column-wise rather than filtered out of the
//! full powerset. The same construction yields the BHL bimodal frames. A
//! configurable cap bounds the number of candidate relations considered.

use crate::frames::{
    Frame, FrameCondition, FrameKind, KindMismatch, S4KFrame, StoFrame,
};
use crate::sets::{downsets, Relation};
use thiserror::Error;

pub const DEFAULT_CANDIDATE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Upper bound on candidate relations constructed across both phases.
    pub cap: u64,
    /// Keep only frames whose relation encoding is lexicographically minimal
    /// across all world permutations.
    pub dedup: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_CANDIDATE_CAP, dedup: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("enumeration would consider {estimated} candidate relations, above the cap {cap} (set HL_MAX_CANDIDATES or --cap to raise)")]
    BoundTooLarge { estimated: u64, cap: u64 },
    #[error(transparent)]
    Kind(#[from] KindMismatch),
}

/// A prepared enumeration: base orders are fixed, second relations are
/// expanded per order. Chunks are independent, which keeps the expansion
/// parallelizable; concatenating chunks in order yields the deterministic
/// output order (ascending relation encodings).
pub struct FramePlan {
    n: usize,
    kind: FrameKind,
    filters: Vec<FrameCondition>,
    dedup: bool,
    orders: Vec<Relation>,
    perms: Vec<Vec<usize>>,
    structural_bhl: bool,
}

impl FramePlan {
    pub fn new(
        n: usize,
        kind: FrameKind,
        filters: &[FrameCondition],
        opts: &EnumOptions,
    ) -> Result<FramePlan, EnumError> {
        assert!(n >= 1, "frames have at least one world");
        for f in filters {
            if let Some(required) = f.kind() {
                if required != kind {
                    return Err(KindMismatch {
                        condition: f.name().to_string(),
                        kind,
                    }
                    .into());
                }
            }
        }
        let mut budget: u64 = 0;
        let order_candidates = 1u64
            .checked_shl((n * (n - 1)) as u32)
            .ok_or(EnumError::BoundTooLarge { estimated: u64::MAX, cap: opts.cap })?;
        budget += order_candidates;
        if budget > opts.cap {
            return Err(EnumError::BoundTooLarge { estimated: budget, cap: opts.cap });
        }
        let antisymmetric = kind == FrameKind::Sto;
        let orders = base_orders(n, antisymmetric);
        // Coherence (respectively BHL) holds exactly when every column of the
        // second relation is a downset of the order, so those relations are
        // constructed directly instead of filtered.
        let structural_bhl = kind == FrameKind::Sto
            || filters.iter().any(|f| matches!(f, FrameCondition::Bhl));
        for order in &orders {
            let per_order: u64 = if structural_bhl {
                let d = downsets(order).len() as u64;
                let mut total = 1u64;
                for _ in 0..n {
                    total = total.saturating_mul(d);
                }
                total
            } else {
                1u64.checked_shl((n * n) as u32).unwrap_or(u64::MAX)
            };
            budget = budget.saturating_add(per_order);
            if budget > opts.cap {
                return Err(EnumError::BoundTooLarge { estimated: budget, cap: opts.cap });
            }
        }
        let perms = if opts.dedup { permutations(n) } else { Vec::new() };
        Ok(FramePlan {
            n,
            kind,
            filters: filters.to_vec(),
            dedup: opts.dedup,
            orders,
            perms,
            structural_bhl,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order_count(&self) -> usize {
        self.orders.len()
    }

    /// All frames over the `idx`-th base order, ascending by second-relation
    /// encoding.
    pub fn expand(&self, idx: usize) -> Vec<Frame> {
        let order = &self.orders[idx];
        let rel2s = if self.structural_bhl {
            coherent_relations(self.n, order)
        } else {
            all_relations(self.n)
        };
        let worlds: Vec<String> = (0..self.n).map(|i| format!("w{i}")).collect();
        let mut out = Vec::new();
        for rel2 in rel2s {
            if !self
                .filters
                .iter()
                .all(|c| c.witness(self.n, order, &rel2).is_none())
            {
                continue;
            }
            if self.dedup && !self.is_canonical(order, &rel2) {
                continue;
            }
            let frame = match self.kind {
                FrameKind::Sto => Frame::Sto(
                    StoFrame::new(worlds.clone(), order.clone(), rel2)
                        .expect("constructed frames satisfy the frame laws"),
                ),
                FrameKind::S4k => Frame::S4k(
                    S4KFrame::new(worlds.clone(), order.clone(), rel2)
                        .expect("constructed frames satisfy the frame laws"),
                ),
            };
            out.push(frame);
        }
        out
    }

    fn is_canonical(&self, rel1: &Relation, rel2: &Relation) -> bool {
        let key = (rel1.encode(), rel2.encode());
        for perm in &self.perms {
            let image = (rel1.permute(perm).encode(), rel2.permute(perm).encode());
            if image < key {
                return false;
            }
        }
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = Frame> + '_ {
        (0..self.orders.len()).flat_map(move |i| self.expand(i))
    }
}

/// Collects the whole enumeration; prefer [`FramePlan`] for streaming.
pub fn enumerate_frames(
    n: usize,
    kind: FrameKind,
    filters: &[FrameCondition],
    opts: &EnumOptions,
) -> Result<Vec<Frame>, EnumError> {
    let plan = FramePlan::new(n, kind, filters, opts)?;
    Ok(plan.iter().collect())
}

/// All posets (antisymmetric) or preorders on `n` points, ascending by
/// encoding.
fn base_orders(n: usize, antisymmetric: bool) -> Vec<Relation> {
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << off_diag.len()) {
        let mut rel = Relation::identity(n);
        for (i, &(x, y)) in off_diag.iter().enumerate() {
            if (bits >> i) & 1 == 1 {
                rel.insert(x, y);
            }
        }
        if rel.transitivity_witness().is_some() {
            continue;
        }
        if antisymmetric && rel.antisymmetry_witness().is_some() {
            continue;
        }
        out.push(rel);
    }
    out.sort_by_key(|r| r.encode());
    out
}

/// Relations whose columns are downsets of `order`, i.e. exactly those
/// satisfying `order ; rel <= rel`; ascending by encoding.
fn coherent_relations(n: usize, order: &Relation) -> Vec<Relation> {
    let cols = downsets(order);
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut rel = Relation::empty(n);
        for y in 0..n {
            for x in crate::sets::members(cols[choice[y]]) {
                rel.insert(x, y);
            }
        }
        out.push(rel);
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_by_key(|r| r.encode());
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < cols.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn all_relations(n: usize) -> Vec<Relation> {
    assert!(n * n <= 30, "unfiltered relation space is too large");
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << (n * n)) {
        let mut rel = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if (bits >> (x * n + y)) & 1 == 1 {
                    rel.insert(x, y);
                }
            }
        }
        out.push(rel);
    }
    out.sort_by_key(|r| r.encode());
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
