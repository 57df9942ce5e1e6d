#[allow(dead_code)]
mod oracle;

use proptest::prelude::*;

use oracle::Model;
use pseudolines::analysis::{face_census, im_membership};
use pseudolines::canon::{canonical_form, labeled_certificate};
use pseudolines::complex::CellComplex;
use pseudolines::embedding::GridEmbedding;
use pseudolines::enumerate::{enumerate_simple, Filter};
use pseudolines::lines::{big, format_rational, lines_to_diagram, parse_rational, Line, LineArrangement};
use pseudolines::necklace::{enumerate_selfdual, SelfDualNecklace};
use pseudolines::realize::{realize_im, realizes};
use pseudolines::wiring::{validate_wiring, WiringDiagram};

/// A random wiring diagram: each choice picks one of the available swaps.
fn diagram(max_n: usize) -> impl Strategy<Value = WiringDiagram> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u16>(), n * (n - 1) / 2).prop_map(move |choices| {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut tracks = Vec::new();
            for c in choices {
                let open: Vec<usize> = (0..n - 1).filter(|&t| perm[t] < perm[t + 1]).collect();
                let t = open[c as usize % open.len()];
                perm.swap(t, t + 1);
                tracks.push(t + 1);
            }
            validate_wiring(n, &tracks).unwrap()
        })
    })
}

fn im_five() -> Vec<WiringDiagram> {
    enumerate_simple(5, Some(Filter::Im), false).unwrap().collect_raw()
}

fn necklace(max_m: usize) -> impl Strategy<Value = SelfDualNecklace> {
    (1..=max_m).prop_flat_map(|m| prop::collection::vec(0u8..2, m).prop_map(|half| SelfDualNecklace::from_half(&half)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(d in diagram(9)) {
        let text = d.to_string();
        prop_assert_eq!(text.parse::<WiringDiagram>().unwrap(), d);
    }

    #[test]
    fn census_matches_model(d in diagram(9)) {
        let c = CellComplex::build(&d);
        c.check_integrity().unwrap();
        prop_assert_eq!(c.euler_characteristic(), 1);
        let census = face_census(&c);
        let model = Model::new(d.n(), d.tracks()).census();
        for sides in 3..=d.n() {
            prop_assert_eq!(census.count(sides), model.get(&sides).copied().unwrap_or(0));
        }
    }

    #[test]
    fn certificates_ignore_symmetries(d in diagram(7)) {
        let cert = canonical_form(&d);
        prop_assert_eq!(canonical_form(&d.mirror_vertical()), cert.clone());
        prop_assert_eq!(canonical_form(&d.mirror_horizontal()), cert.clone());
        prop_assert_eq!(canonical_form(&d.commutation_normal_form()), cert);
        let labels: Vec<u32> = (0..d.n() as u32).collect();
        prop_assert_eq!(
            labeled_certificate(&d.commutation_normal_form(), &labels),
            labeled_certificate(&d, &labels)
        );
    }

    #[test]
    fn induced_keeps_local_orders(d in diagram(8), mask in any::<u16>()) {
        let keep: Vec<usize> = (0..d.n()).filter(|w| mask >> w & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let sub = d.induced(&keep).unwrap();
        let full = d.local_sequences();
        for (cw, seq) in sub.diagram.local_sequences().iter().enumerate() {
            let w = sub.wires[cw];
            let expected: Vec<usize> = full[w].iter().copied().filter(|x| keep.contains(x)).collect();
            let got: Vec<usize> = seq.iter().map(|&x| sub.wires[x]).collect();
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn witnesses_locate_their_faces(d in diagram(8)) {
        let c = CellComplex::build(&d);
        let emb = GridEmbedding::new(&c);
        for f in c.faces() {
            prop_assert_eq!(emb.face_containing(&c, emb.witness(f.id)), Ok(f.id));
        }
        prop_assert_eq!(emb.extract_diagram(), d);
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = big(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn lines_round_trip(seed in prop::collection::vec((-50i64..50, 1i64..20, -50i64..50, 1i64..20), 2..7)) {
        let lines: Vec<Line> = seed.iter().map(|&(a, b, c, e)| Line::new(big(a, b), big(c, e))).collect();
        if let Ok(la) = LineArrangement::new(lines) {
            prop_assert_eq!(LineArrangement::from_json(&la.to_json()).unwrap(), la.clone());
            let ld = lines_to_diagram(&la);
            let reordered: Vec<Line> = ld.wire_lines.iter().map(|&l| la.lines()[l].clone()).collect();
            prop_assert!(realizes(&ld.diagram, &LineArrangement::new(reordered).unwrap()));
        }
    }

    #[test]
    fn necklace_symmetries_share_a_canonical_form(c in necklace(10), k in 0usize..20) {
        let canon = c.canonical();
        prop_assert_eq!(c.rotate(k).canonical(), canon.clone());
        prop_assert_eq!(c.reflect().canonical(), canon.clone());
        prop_assert!(canon.is_canonical());
        prop_assert!(enumerate_selfdual(c.m()).contains(&canon));
        prop_assert_eq!(canon.to_string().parse::<SelfDualNecklace>().unwrap(), canon);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn im_members_stretch(d in prop::sample::select(im_five()), seed in any::<u64>()) {
        prop_assert!(im_membership(&CellComplex::build(&d)).is_member());
        let r = realize_im(&d, seed).unwrap();
        prop_assert!(realizes(&d, &r.lines));
    }
}
