//! Exhaustive small-scale checks of the structural lemmas that sit behind
//! the acceptance properties: the cluster quotient is a p-morphism and
//! preserves satisfaction pointwise, strict-implication frames read as
//! bimodal frames satisfy the BHL inclusion, reading a frame as bimodal
//! preserves finite refinedness, and enumeration counts stay pinned.

use hl_core::enumerate::{enumerate_frames, EnumOptions};
use hl_core::frames::{
    check_condition, cluster_quotient, Frame, FrameCondition, FrameKind,
    GeneralStoFrame,
};
use hl_core::gen;
use hl_core::semantics::{frame_valid, frame_valid_general, Model, ValidOptions, Valuation};
use hl_core::sets::{contains, members, Relation};
use hl_core::translation::sigma_hat;
use rand::Rng;
use std::collections::BTreeMap;

fn all_frames(n: usize, kind: FrameKind, filters: &[FrameCondition]) -> Vec<Frame> {
    enumerate_frames(n, kind, filters, &EnumOptions::default()).unwrap()
}

#[test]
fn enumeration_counts_are_pinned() {
    assert_eq!(all_frames(1, FrameKind::Sto, &[]).len(), 2);
    assert_eq!(all_frames(2, FrameKind::Sto, &[]).len(), 34);
    assert_eq!(all_frames(3, FrameKind::Sto, &[]).len(), 2942);
    assert_eq!(all_frames(2, FrameKind::S4k, &[]).len(), 64);
    assert_eq!(all_frames(3, FrameKind::S4k, &[]).len(), 14848);
}

#[test]
fn sto_frames_viewed_as_bimodal_satisfy_bhl() {
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::Sto, &[]) {
            let f = match frame {
                Frame::Sto(f) => f,
                _ => unreachable!(),
            };
            let viewed = Frame::S4k(f.as_s4k());
            assert!(check_condition(&viewed, &FrameCondition::Bhl).unwrap().holds());
        }
    }
}

#[test]
fn cluster_quotient_is_a_p_morphism() {
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::S4k, &[FrameCondition::Bhl]) {
            let f = match frame {
                Frame::S4k(f) => f,
                _ => unreachable!(),
            };
            let (q, map) = cluster_quotient(&f).unwrap();
            for (orig, quot) in [(f.ri(), q.ri()), (f.rm(), q.rm())] {
                // Forth: x R y implies map(x) R' map(y).
                for x in 0..f.n() {
                    for y in members(orig.row(x)) {
                        assert!(quot.contains(map[x], map[y]));
                    }
                }
                // Back: map(x) R' c implies some preimage witness.
                for x in 0..f.n() {
                    for c in members(quot.row(map[x])) {
                        let witnessed =
                            members(orig.row(x)).any(|z| map[z] == c);
                        assert!(witnessed, "back condition fails");
                    }
                }
            }
        }
    }
}

#[test]
fn cluster_quotient_preserves_satisfaction_pointwise() {
    let formulas = gen::bi_formulas(2, 6);
    let mut rng = gen::rng(3);
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::S4k, &[FrameCondition::Bhl]) {
            let f = match frame {
                Frame::S4k(f) => f,
                _ => unreachable!(),
            };
            let (q, map) = cluster_quotient(&f).unwrap();
            // A valuation on the quotient pulled back along the map makes it
            // a model morphism; truth then agrees pointwise.
            let mut quotient_val = BTreeMap::new();
            let mut pulled_back = BTreeMap::new();
            for atom in ["p", "q", "r"] {
                let v: u64 = rng.gen_range(0..(1u64 << q.n()));
                quotient_val.insert(atom.to_string(), v);
                let pre = (0..f.n())
                    .filter(|&x| contains(v, map[x]))
                    .fold(0u64, |acc, x| acc | (1 << x));
                pulled_back.insert(atom.to_string(), pre);
            }
            let m = Model::new(Frame::S4k(f.clone()), Valuation::new(pulled_back)).unwrap();
            let mq = Model::new(Frame::S4k(q.clone()), Valuation::new(quotient_val)).unwrap();
            for phi in &formulas {
                let t = m.truth_set_bi(phi).unwrap();
                let tq = mq.truth_set_bi(phi).unwrap();
                for x in 0..f.n() {
                    assert_eq!(contains(t, x), contains(tq, map[x]));
                }
            }
        }
    }
}

#[test]
fn reading_a_refined_frame_as_bimodal_preserves_refinedness() {
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::Sto, &[]) {
            let f = match frame {
                Frame::Sto(f) => f,
                _ => unreachable!(),
            };
            let g = GeneralStoFrame::with_all_upsets(f);
            assert!(g.is_descriptive(), "full upsets refine finite frames");
            let s = sigma_hat(&g);
            assert!(s.differentiation_witness().is_none());
            assert!(s.i_tightness_witness().is_none());
            assert!(s.m_tightness_witness().is_none());
        }
    }
}

#[test]
fn finite_posets_validate_grz_for_the_inner_box() {
    use hl_core::axioms::{bi_axiom, AxiomName};
    use hl_core::frames::PARTIAL_ORDER;
    use hl_core::semantics::frame_valid_bi;
    let grz = bi_axiom(AxiomName::GrzI);
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::S4k, &[PARTIAL_ORDER]) {
            let f = match frame {
                Frame::S4k(f) => f,
                _ => unreachable!(),
            };
            assert!(frame_valid_bi(&f, &grz, ValidOptions::default())
                .unwrap()
                .is_valid());
        }
    }
}

#[test]
fn translated_base_axiom_is_sound_on_bhl_frames() {
    use hl_core::axioms::{sto_axiom, AxiomName};
    use hl_core::semantics::frame_valid_bi;
    use hl_core::translation::gmt;
    let translated = gmt(&sto_axiom(AxiomName::Ka));
    for n in 1..=3 {
        for frame in all_frames(n, FrameKind::S4k, &[FrameCondition::Bhl]) {
            let f = match frame {
                Frame::S4k(f) => f,
                _ => unreachable!(),
            };
            assert!(frame_valid_bi(&f, &translated, ValidOptions::default())
                .unwrap()
                .is_valid());
        }
    }
}

#[test]
fn plain_and_full_upset_general_validity_agree() {
    use hl_core::axioms::{sto_axiom, AxiomName};
    let axioms = [
        sto_axiom(AxiomName::Ka),
        sto_axiom(AxiomName::Sa),
        sto_axiom(AxiomName::Box),
    ];
    for n in 1..=2 {
        for frame in all_frames(n, FrameKind::Sto, &[]) {
            let f = match frame {
                Frame::Sto(f) => f,
                _ => unreachable!(),
            };
            let g = GeneralStoFrame::with_all_upsets(f.clone());
            for ax in &axioms {
                let plain = frame_valid(&f, ax, ValidOptions::default()).unwrap();
                let general = frame_valid_general(&g, ax, ValidOptions::default()).unwrap();
                assert_eq!(plain.is_valid(), general.is_valid());
            }
        }
    }
}

#[test]
fn dedup_is_a_set_of_canonical_orbit_representatives() {
    let opts = EnumOptions { dedup: true, ..EnumOptions::default() };
    let all = all_frames(3, FrameKind::Sto, &[]);
    let deduped = enumerate_frames(3, FrameKind::Sto, &[], &opts).unwrap();
    assert!(deduped.len() < all.len());
    // Each deduped frame is minimal in its orbit: relabeling worlds never
    // produces a smaller encoding pair.
    let perms3: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    for frame in &deduped {
        let (r1, r2) = match frame {
            Frame::Sto(f) => (f.preceq().clone(), f.sqsubset().clone()),
            _ => unreachable!(),
        };
        let key = (r1.encode(), r2.encode());
        for p in &perms3 {
            let image = (r1.permute(p).encode(), r2.permute(p).encode());
            assert!(image >= key);
        }
    }
    // Orbit representatives cover everything: every labeled frame has some
    // permutation image among the deduped ones.
    let canon = |r1: &Relation, r2: &Relation| {
        perms3
            .iter()
            .map(|p| (r1.permute(p).encode(), r2.permute(p).encode()))
            .min()
            .unwrap()
    };
    let mut canon_set = std::collections::BTreeSet::new();
    for frame in &deduped {
        if let Frame::Sto(f) = frame {
            canon_set.insert(canon(f.preceq(), f.sqsubset()));
        }
    }
    for frame in &all {
        if let Frame::Sto(f) = frame {
            assert!(canon_set.contains(&canon(f.preceq(), f.sqsubset())));
        }
    }
}
