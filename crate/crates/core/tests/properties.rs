mod common;

use common::random_diagram;
use proptest::prelude::*;
use vknot_core::diagram::OrientationConvention;
use vknot_core::flat::{apply_flat, flat_insertions, flat_moves, flatten, is_totally_flat_trivial, FlatStatus};
use vknot_core::invariant::{affine_index_polynomial, index_table, n_dwrithe, n_writhe, Evaluation};
use vknot_core::{Diagram, FlatCode, PassToken, RawCode, Role, Sign, TftStatus};

fn diagram() -> impl Strategy<Value = Diagram> {
    (any::<u64>(), 0u32..=7).prop_map(|(seed, n)| random_diagram(seed, n))
}

fn nonempty_diagram() -> impl Strategy<Value = Diagram> {
    (any::<u64>(), 1u32..=7).prop_map(|(seed, n)| random_diagram(seed, n))
}

/// Brute force: every rotation, relabelled by first appearance, compared as
/// `(role, id, sign)` tuples with Over < Under and + < -.
fn oracle_canonical(tokens: &[PassToken]) -> Vec<(u8, u32, u8)> {
    let n = tokens.len();
    (0..n.max(1))
        .map(|k| {
            let mut labels: Vec<(u32, u32)> = Vec::new();
            (0..n)
                .map(|i| {
                    let t = tokens[(k + i) % n];
                    let id = match labels.iter().find(|(old, _)| *old == t.crossing) {
                        Some(&(_, new)) => new,
                        None => {
                            let new = labels.len() as u32 + 1;
                            labels.push((t.crossing, new));
                            new
                        }
                    };
                    (u8::from(t.role == Role::Under), id, u8::from(t.sign == Sign::Minus))
                })
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap()
}

fn tuples(code: &RawCode) -> Vec<(u8, u32, u8)> {
    code.tokens()
        .iter()
        .map(|t| (u8::from(t.role == Role::Under), t.crossing, u8::from(t.sign == Sign::Minus)))
        .collect()
}

fn switch(d: &Diagram, id: u32) -> Diagram {
    let tokens = d
        .passes()
        .iter()
        .map(|t| if t.crossing == id { PassToken::new(t.role.swapped(), id, t.sign.flipped()) } else { *t })
        .collect();
    Diagram::build(&RawCode::new(tokens).unwrap())
}

fn rotated(d: &Diagram, k: usize) -> Diagram {
    Diagram::build(&d.code().rotated(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn serialize_then_parse_round_trips(d in diagram()) {
        let text = d.code().serialize();
        prop_assert_eq!(RawCode::parse(&text).unwrap(), d.code().clone());
        prop_assert!(text.is_ascii());
    }

    #[test]
    fn canonical_form_matches_brute_force(d in diagram(), k in 0usize..16) {
        let c = d.code().canonicalize();
        prop_assert_eq!(tuples(&c), oracle_canonical(d.passes()));
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(d.code().rotated(k).canonicalize(), c);
    }

    #[test]
    fn coloring_satisfies_local_relations(d in diagram()) {
        let coloring = d.cheng_coloring().unwrap();
        prop_assert!(coloring.check(&d).is_ok());
        prop_assert_eq!(coloring.labels().len(), d.arc_count());
    }

    #[test]
    fn coloring_ignores_crossing_types(d in nonempty_diagram(), pick in any::<prop::sample::Index>()) {
        let ids: Vec<u32> = d.crossing_ids().collect();
        let id = ids[pick.index(ids.len())];
        // the walk formula shifts every label by the same constant; the
        // relations themselves only see the flat data
        let original = d.cheng_coloring().unwrap();
        for other in [switch(&d, id), d.mirror()] {
            let c = other.cheng_coloring().unwrap();
            let shift = c.label(0) - original.label(0);
            prop_assert!(original.labels().iter().zip(c.labels()).all(|(a, b)| b - a == shift));
            prop_assert!(original.check(&other).is_ok());
            prop_assert!(c.check(&d).is_ok());
        }
    }

    #[test]
    fn smoothing_removes_one_crossing(d in nonempty_diagram()) {
        for id in d.crossing_ids() {
            let s = d.smooth_against_orientation(id).unwrap();
            prop_assert_eq!(s.result.crossing_count() + 1, d.crossing_count());
            prop_assert_eq!(s.reversed_segment.len() + 2 <= d.pass_count(), true);
        }
    }

    #[test]
    fn smoothing_is_basepoint_stable(d in nonempty_diagram(), k in 1usize..14) {
        let r = rotated(&d, k);
        for id in d.crossing_ids() {
            let a = d.smooth_against_orientation(id).unwrap().result.code().canonicalize();
            let b = r.smooth_against_orientation(id).unwrap().result.code().canonicalize();
            prop_assert_eq!(&a, &b);
            let conv = OrientationConvention::BasepointSegmentKept;
            let a = d.smooth_with(id, conv).unwrap().result;
            let b = r.smooth_with(id, conv).unwrap().result;
            let (ca, cb) = (a.code().canonicalize(), b.code().canonicalize());
            prop_assert!(ca == cb || ca == b.reverse().code().canonicalize());
        }
    }

    #[test]
    fn writhes_are_polynomial_coefficients(d in diagram()) {
        let p = affine_index_polynomial(&d).unwrap();
        prop_assert_eq!(p.eval_at_one(), 0);
        for n in (-8i64..=8).filter(|&n| n != 0) {
            prop_assert_eq!(n_writhe(&d, n).unwrap(), p.coeff(n));
        }
        let table = index_table(&d).unwrap();
        let zero_index: i64 = table.entries().iter().filter(|e| e.index == 0).map(|e| e.sign.value()).sum();
        prop_assert_eq!(p.coeff(0), zero_index - d.writhe());
    }

    #[test]
    fn l_at_one_is_p(d in diagram()) {
        let e = Evaluation::new(&d).unwrap();
        let p = e.affine_index_polynomial();
        for n in 1..=e.index_bound() + 1 {
            prop_assert_eq!(e.l_polynomial(n).unwrap().at_l_one(), p.clone());
            prop_assert_eq!(e.f_polynomial(n).unwrap().at_l_one(), p.clone());
        }
    }

    #[test]
    fn mirror_and_reverse_symmetries(d in diagram()) {
        let p = affine_index_polynomial(&d).unwrap();
        prop_assert_eq!(affine_index_polynomial(&d.mirror()).unwrap(), -p.invert_variable());
        prop_assert_eq!(affine_index_polynomial(&d.reverse()).unwrap(), p.invert_variable());
        for n in 1..=6 {
            let dw = n_dwrithe(&d, n).unwrap();
            prop_assert_eq!(n_dwrithe(&d.mirror(), n).unwrap(), dw);
            prop_assert_eq!(n_dwrithe(&d.reverse(), n).unwrap(), -dw);
        }
    }

    #[test]
    fn flat_dwrithe_matches_every_lift(d in diagram(), mask in any::<u32>()) {
        let f = flatten(&d);
        let lift = f.lift_with(|id| mask >> (id % 32) & 1 == 1);
        prop_assert_eq!(flatten(&lift), f.clone());
        for n in 1..=6 {
            let dw = f.dwrithe(n).unwrap();
            prop_assert_eq!(dw, n_dwrithe(&d, n).unwrap());
            prop_assert_eq!(dw, n_dwrithe(&lift, n).unwrap());
        }
    }

    #[test]
    fn flat_moves_preserve_dwrithe(d in diagram()) {
        let f = flatten(&d);
        let before: Vec<i64> = (1..=6).map(|n| f.dwrithe(n).unwrap()).collect();
        for site in flat_moves(&f).into_iter().chain(flat_insertions(&f)) {
            let g = apply_flat(&f, &site).unwrap();
            prop_assert_eq!(g.crossing_count() as isize, f.crossing_count() as isize + site.crossing_delta());
            let after: Vec<i64> = (1..=6).map(|n| g.dwrithe(n).unwrap()).collect();
            prop_assert_eq!(&after, &before, "{} {:?}", f, site);
        }
    }

    #[test]
    fn flat_text_round_trips(d in diagram()) {
        let f = flatten(&d);
        prop_assert_eq!(f.to_string().parse::<FlatCode>().unwrap(), f.clone());
        prop_assert_eq!(f.canonicalize().canonicalize(), f.canonicalize());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn verdicts_carry_their_own_evidence(seed in any::<u64>(), n in 0u32..=4) {
        let d = random_diagram(seed, n);
        let report = is_totally_flat_trivial(&d, 5_000);
        prop_assert!(report.diagram.verify(&report.flat));
        for s in &report.smoothings {
            prop_assert!(s.verdict.verify(&s.flat));
            prop_assert_eq!(s.verdict.status == FlatStatus::Trivial, !s.verdict.trace.is_empty() || s.flat.is_empty());
        }
        if report.status == TftStatus::Trivial {
            let e = Evaluation::new(&d).unwrap();
            let p = e.affine_index_polynomial();
            prop_assert!(p.is_palindromic());
            for n in 1..=4 {
                prop_assert_eq!(e.l_polynomial(n).unwrap(), p.to_two_variable());
                prop_assert_eq!(e.f_polynomial(n).unwrap(), p.to_two_variable());
            }
        }
    }
}
