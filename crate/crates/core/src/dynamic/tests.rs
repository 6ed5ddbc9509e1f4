use super::*;
use crate::algebra::{wedge, Extensor, TruncatedPoly};
use crate::graph::UndirectedGraph;
use crate::reference::{bf_ddim, bf_exact_cover, bf_packing, bf_packing_count, bf_partial_cover_min, bf_tdom};
use crate::ring::{Gf2m, Integers, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> Gf2m {
    Gf2m::new(16).unwrap()
}

#[test]
fn exact_cover_examples() {
    let mut d = ExactCover::deterministic(3, 3).unwrap();
    let mut r = ExactCover::randomized(3, 3, 1).unwrap();
    let hd: Vec<_> = [vec![1, 2], vec![3], vec![1, 3]].iter().map(|s| d.insert(s).unwrap()).collect();
    let hr: Vec<_> = [vec![1, 2], vec![3], vec![1, 3]].iter().map(|s| r.insert(s).unwrap()).collect();
    assert!(d.query() && r.query());
    d.remove(hd[1]).unwrap();
    r.remove(hr[1]).unwrap();
    assert!(!d.query() && !r.query());

    let mut single = ExactCover::deterministic(2, 2).unwrap();
    single.insert(&[1, 2]).unwrap();
    assert!(single.query());
}

#[test]
fn exact_cover_errors() {
    let mut d = ExactCover::deterministic(3, 2).unwrap();
    assert_eq!(d.insert(&[4]), Err(Error::ElementOutOfRange(4, 3)));
    assert_eq!(d.insert(&[0]), Err(Error::ElementOutOfRange(0, 3)));
    assert!(matches!(d.insert(&[]), Err(Error::InvalidUpdate(_))));
    let h = d.insert(&[1]).unwrap();
    d.remove(h).unwrap();
    assert_eq!(d.remove(h), Err(Error::UnknownHandle(h.0)));
    assert_eq!(d.remove(Handle(99)), Err(Error::UnknownHandle(99)));
    assert!(ExactCover::deterministic(3, 0).is_err());
    assert!(ExactCover::deterministic(3, 14).is_err());
}

#[test]
fn oversized_sets_are_identity_factors() {
    let mut d = ExactCover::deterministic(5, 2).unwrap();
    d.insert(&[1]).unwrap();
    let before = d.product().clone();
    let h = d.insert(&[2, 3, 4]).unwrap();
    assert_eq!(d.product(), &before);
    assert_eq!(d.len(), 2);
    d.remove(h).unwrap();
    assert_eq!(d.product(), &before);
}

#[test]
fn duplicate_sets_are_separate_handles() {
    let mut d = ExactCover::deterministic(4, 4).unwrap();
    let a = d.insert(&[1, 2]).unwrap();
    let b = d.insert(&[2, 1]).unwrap();
    assert_ne!(a, b);
    assert_eq!(d.elements(b).unwrap(), &[1, 2]);
    assert!(!d.query());
    d.insert(&[3, 4]).unwrap();
    assert!(d.query());
    d.remove(a).unwrap();
    assert!(d.query());
    d.remove(b).unwrap();
    assert!(!d.query());
}

#[test]
fn at_least_cover() {
    let mut c = AtLeastCover::new(Integers, 8, 3, 0).unwrap();
    let a = c.insert(&[1, 2]).unwrap();
    assert!(!c.query());
    c.insert(&[2, 3]).unwrap();
    assert!(!c.query());
    let b = c.insert(&[4, 5]).unwrap();
    assert!(c.query());
    c.remove(b).unwrap();
    assert!(!c.query());
    let big = c.insert(&[6, 7, 8]).unwrap();
    assert!(c.query());
    c.remove(big).unwrap();
    c.remove(a).unwrap();
    assert!(!c.query());
}

#[test]
fn at_least_cover_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..60 {
        let n = rng.gen_range(2..=9);
        let k = rng.gen_range(1..=4);
        let sets: Vec<Vec<usize>> = (0..rng.gen_range(0..6))
            .map(|_| {
                let mut s: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.3)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(1..=n));
                }
                s
            })
            .collect();
        let mut c = AtLeastCover::new(Integers, n, k, 0).unwrap();
        for s in &sets {
            c.insert(s).unwrap();
        }
        let truth = (k..=n).any(|kk| bf_exact_cover(&sets, kk).unwrap());
        assert_eq!(c.query(), truth, "sets {sets:?} k={k}");
    }
}

#[test]
fn partial_cover_examples() {
    for mode in 0..2 {
        let (mut d, mut r) = (PartialCover::deterministic(8, 4).unwrap(), PartialCover::randomized(8, 4, 3).unwrap());
        assert_eq!(d.query(), None);
        assert_eq!(r.query(), None);
        for s in [vec![1, 2], vec![2, 3], vec![4]] {
            d.insert(&s).unwrap();
            r.insert(&s).unwrap();
        }
        assert_eq!(d.query(), Some(3));
        assert_eq!(r.query(), Some(3));
        let hd = d.insert(&[5, 6, 7, 8]).unwrap();
        let hr = r.insert(&[5, 6, 7, 8]).unwrap();
        assert_eq!((d.query(), r.query()), (Some(1), Some(1)));
        assert_eq!(d.large_count(), 1);
        if mode == 1 {
            d.remove(hd).unwrap();
            r.remove(hr).unwrap();
            assert_eq!((d.query(), r.query()), (Some(3), Some(3)));
        }
    }
}

#[test]
fn partial_cover_survives_duplicate_sets_over_a_field() {
    // Without per-set weights both copies of {1, 2} would cancel.
    let mut r = PartialCover::randomized(3, 3, 9).unwrap();
    r.insert(&[1, 2]).unwrap();
    r.insert(&[1, 2]).unwrap();
    r.insert(&[3]).unwrap();
    assert_eq!(r.query(), Some(2));
}

#[test]
fn packing_examples() {
    let mut p = Packing::new(Integers, 4, 2, 2, 0).unwrap();
    p.insert(&[1, 2]).unwrap();
    p.insert(&[3, 4]).unwrap();
    p.insert(&[1, 3]).unwrap();
    assert!(p.query());
    let mut q = Packing::new(field(), 4, 2, 2, 5).unwrap();
    q.insert(&[1, 2]).unwrap();
    q.insert(&[1, 3]).unwrap();
    assert!(!q.query());
    assert!(matches!(q.insert(&[1, 2, 3]), Err(Error::InvalidUpdate(_))));
    assert_eq!((q.m(), q.k()), (2, 2));
}

#[test]
fn packing_count_example() {
    let sets = [vec![1, 2], vec![3, 4], vec![5, 6]];
    assert_eq!(bf_packing_count(&sets, 2, 2).unwrap(), 3);
    let mut hits = 0;
    for seed in 0..20 {
        let mut c = PackingCounter::new(6, 2, 2, 0.5, seed).unwrap();
        assert_eq!(c.trials(), 240);
        for s in &sets {
            c.insert(s).unwrap();
        }
        let e = c.estimate();
        let e = e.numer().to_string().parse::<f64>().unwrap() / e.denom().to_string().parse::<f64>().unwrap();
        if (1.5..=4.5).contains(&e) {
            hits += 1;
        }
    }
    assert!(hits >= 19, "{hits} of 20 estimates in range");
}

#[test]
fn packing_count_tracks_removals() {
    let mut c = PackingCounter::with_trials(6, 2, 2, 50, 1).unwrap();
    let h = c.insert(&[1, 2]).unwrap();
    c.insert(&[3, 4]).unwrap();
    c.remove(h).unwrap();
    assert!(c.raw_estimates().iter().all(|r| *r == num_rational::BigRational::from_integer(0.into())));
}

#[test]
fn dominating_set_examples() {
    let star = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut d = DominatingSet::new(Integers, &star, 4, 0).unwrap();
    let mut r = DominatingSet::new(field(), &star, 4, 8).unwrap();
    assert_eq!((d.query(), r.query()), (Some(1), Some(1)));
    d.update_edge(0, 3, false).unwrap();
    r.update_edge(3, 0, false).unwrap();
    assert_eq!((d.query(), r.query()), (Some(2), Some(2)));
    assert!(matches!(d.update_edge(0, 3, false), Err(Error::InvalidUpdate(_))));
    assert!(matches!(d.update_edge(0, 1, true), Err(Error::InvalidUpdate(_))));
    assert!(matches!(d.update_edge(0, 9, true), Err(Error::VertexOutOfRange(9, 4))));

    let empty = DominatingSet::new(Integers, &UndirectedGraph::new(3), 2, 0).unwrap();
    assert_eq!(empty.query(), Some(2));
}

#[test]
fn dominating_set_vertex_updates() {
    let star = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut d = DominatingSet::new(Integers, &star, 4, 0).unwrap();
    d.remove_vertex(0).unwrap();
    assert!(!d.is_active(0));
    assert_eq!(d.graph().m(), 0);
    // Three isolated leaves can cover only three vertices.
    assert_eq!(d.query(), None);
    d.add_vertex(0).unwrap();
    assert_eq!(d.query(), Some(4));
    d.update_edge(0, 1, true).unwrap();
    assert_eq!(d.query(), Some(3));
    assert!(d.add_vertex(0).is_err());
}

#[test]
fn dominating_set_edge_toggle_restores_the_slots() {
    let g = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
    let mut r = DominatingSet::new(field(), &g, 3, 21).unwrap();
    let before = r.cover().slots().unwrap().to_vec();
    r.update_edge(2, 3, true).unwrap();
    assert_ne!(r.cover().slots().unwrap(), &before[..]);
    r.update_edge(2, 3, false).unwrap();
    assert_eq!(r.cover().slots().unwrap(), &before[..]);
}

fn matching_example<R: Ring>(mut s: Matching<R>) {
    // U1 = {a1, a2}, U2 = {b1, b2}.
    s.insert(&[1, 1]).unwrap();
    let h = s.insert(&[2, 2]).unwrap();
    s.insert(&[1, 2]).unwrap();
    assert!(s.query());
    s.remove(h).unwrap();
    assert!(!s.query());
}

#[test]
fn matching_examples() {
    matching_example(Matching::deterministic(&[2, 2], 2).unwrap());
    matching_example(Matching::randomized(&[2, 2], 2, 4).unwrap());
    let mut one = Matching::deterministic(&[3, 3, 3], 1).unwrap();
    assert!(!one.query());
    one.insert(&[2, 3, 1]).unwrap();
    assert!(one.query());
    assert_eq!(one.insert(&[4, 1, 1]), Err(Error::ElementOutOfRange(4, 3)));
    assert!(matches!(one.insert(&[1, 1]), Err(Error::InvalidUpdate(_))));
}

#[test]
fn partial_cover_inverse_series_is_nilpotent() {
    // X = prod_{a in S} (1 + chi(a)) - 1 has no scalar part, so X^(k+1) = 0.
    let ring = Integers;
    for k in 1..=4 {
        let codes: Vec<_> = (1..=6u64).map(|a| element_code(&ring, a, k).unwrap()).collect();
        for size in 1..k.max(2) {
            let set: Vec<usize> = (0..size).collect();
            let mut x = Extensor::one(&ring, 2 * k as u32).unwrap();
            for &a in &set {
                let t = codes[a].apply(&ring, &x);
                x.add_assign(&ring, &t);
            }
            x.sub_assign(&ring, &Extensor::one(&ring, 2 * k as u32).unwrap());
            assert!(x.is_even(&ring));
            let mut pow = x.clone();
            for _ in 0..k {
                pow = wedge(&ring, &pow, &x).unwrap();
            }
            assert!(pow.is_zero(&ring), "k={k} |S|={size}");
        }
    }
}

#[test]
fn lifted_factors_commute() {
    let ring = Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 1..=3 {
        let dims = 2 * k as u32;
        let codes: Vec<_> = (1..=5u64).map(|a| element_code(&ring, a, k).unwrap()).collect();
        for _ in 0..10 {
            let x = Extensor::from_coeffs(dims, (0..1 << dims).map(|_| rng.gen_range(-3i64..=3).into()).collect()).unwrap();
            let mut f = Extensor::one(&ring, dims).unwrap();
            for a in 0..rng.gen_range(1..=k) {
                f = codes[a].apply(&ring, &f);
            }
            assert!(f.is_even(&ring));
            assert_eq!(wedge(&ring, &x, &f).unwrap(), wedge(&ring, &f, &x).unwrap());
        }
    }
}

/// A set over `1..=n` with at least one element.
fn random_set(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let size = rng.gen_range(1..=max.min(n));
    let mut s: Vec<usize> = (1..=n).collect();
    for i in 0..size {
        let j = rng.gen_range(i..n);
        s.swap(i, j);
    }
    s.truncate(size);
    s
}

/// Interleaves random inserts and removals over a live multiset; calls
/// `check` after every operation with the live sets.
fn replay(
    rng: &mut ChaCha8Rng,
    ops: usize,
    mut gen: impl FnMut(&mut ChaCha8Rng) -> Vec<usize>,
    mut insert: impl FnMut(&[usize]) -> Handle,
    mut remove: impl FnMut(Handle),
    mut check: impl FnMut(&[Vec<usize>]),
) {
    let mut live: Vec<(Handle, Vec<usize>)> = Vec::new();
    for _ in 0..ops {
        if !live.is_empty() && rng.gen_bool(0.35) {
            let (h, _) = live.swap_remove(rng.gen_range(0..live.len()));
            remove(h);
        } else {
            let s = gen(rng);
            live.push((insert(&s), s));
        }
        let sets: Vec<Vec<usize>> = live.iter().map(|(_, s)| s.clone()).collect();
        check(&sets);
    }
}

#[derive(Default, Debug)]
struct Tally {
    positives: usize,
    misses: usize,
}

impl Tally {
    fn record(&mut self, got: bool, truth: bool, what: &str) {
        assert!(!got || truth, "false positive: {what}");
        if truth {
            self.positives += 1;
            self.misses += usize::from(!got);
        }
    }

    /// For minimisation answers: a field answer is never below the
    /// optimum, and anything other than the optimum counts as a miss.
    fn record_min(&mut self, got: Option<usize>, truth: Option<usize>, what: &str) {
        match (got, truth) {
            (Some(g), Some(t)) => assert!(g >= t, "answer {g} below optimum {t}: {what}"),
            (Some(g), None) => panic!("answer {g} without a solution: {what}"),
            _ => {}
        }
        if truth.is_some() {
            self.positives += 1;
            self.misses += usize::from(got != truth);
        }
    }

    fn assert_rate(&self, label: &str) {
        assert!(self.positives > 0, "{label}: no positive instances");
        let rate = self.misses as f64 / self.positives as f64;
        assert!(rate <= 0.05, "{label}: {} misses of {} positives", self.misses, self.positives);
    }
}

#[test]
fn exact_cover_ground_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tally = Tally::default();
    for round in 0..40 {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(1..=6);
        let mut d = ExactCover::deterministic(n, k).unwrap();
        let mut r = ExactCover::randomized(n, k, round).unwrap();
        let (d_ref, r_ref) = (std::cell::RefCell::new(&mut d), std::cell::RefCell::new(&mut r));
        replay(
            &mut rng,
            30,
            |rng| random_set(rng, n, 4),
            |s| {
                let h = d_ref.borrow_mut().insert(s).unwrap();
                assert_eq!(r_ref.borrow_mut().insert(s).unwrap(), h);
                h
            },
            |h| {
                d_ref.borrow_mut().remove(h).unwrap();
                r_ref.borrow_mut().remove(h).unwrap();
            },
            |sets| {
                let truth = bf_exact_cover(sets, k).unwrap();
                assert_eq!(d_ref.borrow().query(), truth, "{sets:?} k={k}");
                tally.record(r_ref.borrow().query(), truth, &format!("{sets:?} k={k}"));
            },
        );
    }
    tally.assert_rate("exact cover");
}

#[test]
fn partial_cover_ground_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut tally = Tally::default();
    for round in 0..40 {
        let n = rng.gen_range(3..=10);
        let k = rng.gen_range(1..=6);
        let d = std::cell::RefCell::new(PartialCover::deterministic(n, k).unwrap());
        let r = std::cell::RefCell::new(PartialCover::randomized(n, k, round).unwrap());
        replay(
            &mut rng,
            30,
            |rng| random_set(rng, n, 4),
            |s| {
                let h = d.borrow_mut().insert(s).unwrap();
                r.borrow_mut().insert(s).unwrap();
                h
            },
            |h| {
                d.borrow_mut().remove(h).unwrap();
                r.borrow_mut().remove(h).unwrap();
            },
            |sets| {
                let truth = bf_partial_cover_min(sets, k).unwrap();
                let (d, r) = (d.borrow(), r.borrow());
                assert_eq!(d.query(), truth, "{sets:?} k={k}");
                assert_eq!(d.query() == Some(1), d.large_count() > 0);
                assert_eq!(r.query() == Some(1), r.large_count() > 0);
                tally.record_min(r.query(), truth, &format!("{sets:?} k={k}"));
            },
        );
    }
    tally.assert_rate("partial cover");
}

#[test]
fn packing_ground_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut tally = Tally::default();
    for round in 0..40 {
        let n = rng.gen_range(3..=10);
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=(6 / m).max(1));
        let d = std::cell::RefCell::new(Packing::new(Integers, n, m, k, 0).unwrap());
        let r = std::cell::RefCell::new(Packing::new(field(), n, m, k, round).unwrap());
        let m_sets = |rng: &mut ChaCha8Rng| {
            let mut s = random_set(rng, n, m);
            while s.len() < m.min(n) {
                let a = rng.gen_range(1..=n);
                if !s.contains(&a) {
                    s.push(a);
                }
            }
            s
        };
        if m > n {
            continue;
        }
        replay(
            &mut rng,
            30,
            m_sets,
            |s| {
                let h = d.borrow_mut().insert(s).unwrap();
                r.borrow_mut().insert(s).unwrap();
                h
            },
            |h| {
                d.borrow_mut().remove(h).unwrap();
                r.borrow_mut().remove(h).unwrap();
            },
            |sets| {
                let truth = bf_packing(sets, m, k).unwrap();
                assert_eq!(d.borrow().query(), truth, "{sets:?} m={m} k={k}");
                tally.record(r.borrow().query(), truth, &format!("{sets:?} m={m} k={k}"));
            },
        );
    }
    tally.assert_rate("packing");
}

#[test]
fn dominating_set_ground_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut tally = Tally::default();
    for round in 0..30 {
        let n = rng.gen_range(2..=9);
        let t = rng.gen_range(1..=6);
        let mut g = UndirectedGraph::new(n);
        let mut d = DominatingSet::new(Integers, &g, t, 0).unwrap();
        let mut r = DominatingSet::new(field(), &g, t, round).unwrap();
        for _ in 0..30 {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v {
                continue;
            }
            let insert = !g.has_edge(u, v);
            if insert {
                g.add_edge(u, v).unwrap();
            } else {
                g.remove_edge(u, v).unwrap();
            }
            d.update_edge(u, v, insert).unwrap();
            r.update_edge(u, v, insert).unwrap();
            let truth = bf_tdom(&g, t).unwrap();
            assert_eq!(d.query(), truth);
            tally.record_min(r.query(), truth, &format!("{:?} t={t}", g.edges().collect::<Vec<_>>()));
        }
    }
    tally.assert_rate("dominating set");
}

#[test]
fn matching_ground_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut tally = Tally::default();
    for round in 0..40 {
        let d = rng.gen_range(2..=3);
        let sizes: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=4)).collect();
        // Lifted codes double the dimension: keep it at most 12.
        let k_det = rng.gen_range(1..=6 / (d - 1));
        let k = if rng.gen_bool(0.5) { k_det } else { rng.gen_range(1..=6) };
        let det = if 2 * (d - 1) * k <= 12 {
            Some(std::cell::RefCell::new(Matching::deterministic(&sizes, k).unwrap()))
        } else {
            None
        };
        let r = std::cell::RefCell::new(Matching::randomized(&sizes, k, round).unwrap());
        replay(
            &mut rng,
            30,
            |rng| sizes.iter().map(|&s| rng.gen_range(1..=s)).collect(),
            |t| {
                if let Some(s) = &det {
                    s.borrow_mut().insert(t).unwrap();
                }
                r.borrow_mut().insert(t).unwrap()
            },
            |h| {
                if let Some(s) = &det {
                    s.borrow_mut().remove(h).unwrap();
                }
                r.borrow_mut().remove(h).unwrap();
            },
            |tuples| {
                let truth = bf_ddim(tuples, d, k).unwrap();
                if let Some(s) = &det {
                    assert_eq!(s.borrow().query(), truth, "{tuples:?} k={k}");
                }
                tally.record(r.borrow().query(), truth, &format!("{tuples:?} k={k}"));
            },
        );
    }
    tally.assert_rate("matching");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Insert then remove restores every maintained value exactly, with
    /// other sets live in between.
    #[test]
    fn insert_remove_is_an_involution(seed in any::<u64>(), k in 1usize..=5, n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ed = ExactCover::deterministic(n, k).unwrap();
        let mut er = ExactCover::randomized(n, k, seed).unwrap();
        let mut pd = PartialCover::deterministic(n, k).unwrap();
        let mut pr = PartialCover::randomized(n, k, seed).unwrap();
        let sizes = [n.min(4), n.min(4)];
        let mk = k.min(3);
        let mut md = Matching::deterministic(&sizes, mk).unwrap();
        let mut mr = Matching::randomized(&sizes, mk, seed).unwrap();
        let mut live = Vec::new();
        for _ in 0..8 {
            let s = random_set(&mut rng, n, 4);
            let t = vec![rng.gen_range(1..=sizes[0]), rng.gen_range(1..=sizes[1])];
            live.push((ed.insert(&s).unwrap(), er.insert(&s).unwrap(), pd.insert(&s).unwrap(), pr.insert(&s).unwrap(), md.insert(&t).unwrap(), mr.insert(&t).unwrap()));
            if rng.gen_bool(0.3) {
                let (a, b, c, d, e, f) = live.swap_remove(rng.gen_range(0..live.len()));
                ed.remove(a).unwrap();
                er.remove(b).unwrap();
                pd.remove(c).unwrap();
                pr.remove(d).unwrap();
                md.remove(e).unwrap();
                mr.remove(f).unwrap();
            }
            let snapshot = (ed.product().clone(), er.product().clone(), pd.polynomial().cloned(), pr.slots().map(|s| s.to_vec()), md.polynomial().clone(), mr.polynomial().clone());
            let s = random_set(&mut rng, n, 5);
            let t = vec![rng.gen_range(1..=sizes[0]), rng.gen_range(1..=sizes[1])];
            let hs = (ed.insert(&s).unwrap(), er.insert(&s).unwrap(), pd.insert(&s).unwrap(), pr.insert(&s).unwrap(), md.insert(&t).unwrap(), mr.insert(&t).unwrap());
            ed.remove(hs.0).unwrap();
            er.remove(hs.1).unwrap();
            pd.remove(hs.2).unwrap();
            pr.remove(hs.3).unwrap();
            md.remove(hs.4).unwrap();
            mr.remove(hs.5).unwrap();
            let after = (ed.product().clone(), er.product().clone(), pd.polynomial().cloned(), pr.slots().map(|s| s.to_vec()), md.polynomial().clone(), mr.polynomial().clone());
            prop_assert_eq!(snapshot, after);
        }
    }

    /// Every maintained integer value lies in the even subalgebra, and
    /// `P(z)` never reaches `z^(k+1)`.
    #[test]
    fn deterministic_values_stay_even(seed in any::<u64>(), k in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 8;
        let mut pd = PartialCover::deterministic(n, k).unwrap();
        let mut hs = Vec::new();
        for _ in 0..10 {
            if !hs.is_empty() && rng.gen_bool(0.4) {
                pd.remove(hs.swap_remove(rng.gen_range(0..hs.len()))).unwrap();
            } else {
                hs.push(pd.insert(&random_set(&mut rng, n, 3)).unwrap());
            }
            let p: &TruncatedPoly<_> = pd.polynomial().unwrap();
            prop_assert!(p.terms().iter().all(|t| t.is_even(&Integers)));
            prop_assert!(p.coeff(k + 1).is_zero(&Integers));
        }
    }
}

#[test]
fn involution_holds_over_a_thousand_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (n, k) = (8, 4);
    let mut ed = ExactCover::deterministic(n, k).unwrap();
    let mut er = ExactCover::randomized(n, k, 1).unwrap();
    let mut pd = PartialCover::deterministic(n, k).unwrap();
    let mut pr = PartialCover::randomized(n, k, 1).unwrap();
    for _ in 0..4 {
        let s = random_set(&mut rng, n, 3);
        ed.insert(&s).unwrap();
        er.insert(&s).unwrap();
        pd.insert(&s).unwrap();
        pr.insert(&s).unwrap();
    }
    let before = (ed.product().clone(), er.product().clone(), pd.polynomial().cloned(), pr.slots().map(|s| s.to_vec()));
    for _ in 0..1000 {
        let s = random_set(&mut rng, n, 4);
        let h = (ed.insert(&s).unwrap(), er.insert(&s).unwrap(), pd.insert(&s).unwrap(), pr.insert(&s).unwrap());
        ed.remove(h.0).unwrap();
        er.remove(h.1).unwrap();
        pd.remove(h.2).unwrap();
        pr.remove(h.3).unwrap();
    }
    let after = (ed.product().clone(), er.product().clone(), pd.polynomial().cloned(), pr.slots().map(|s| s.to_vec()));
    assert_eq!(before, after);
}
