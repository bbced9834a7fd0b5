//! Property tests over randomly generated inputs.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use ordept::channel::{frame_rng, modulate, transmit, ChannelParams, Received};
use ordept::code::{load_parity_check, save_parity_check};
use ordept::decoders::{ordept_decode, Candidate, Decoder, DecoderConfig};
use ordept::gf::GaloisField;
use ordept::patterns::{generate_query_list, generate_split_list, map_to_positions, split_by_parity};
use ordept::sim::{emit_csv, parse_csv, SimRecord};
use ordept::turbo::{adaptive_hybrid_factors, pyndiah_update, AdaptiveStep};
use ordept::LinearCode;

fn bch_8_2() -> &'static LinearCode {
    static C: OnceLock<LinearCode> = OnceLock::new();
    C.get_or_init(|| LinearCode::bch(8, 2, true).unwrap())
}

fn bch_6_2() -> &'static Arc<LinearCode> {
    static C: OnceLock<Arc<LinearCode>> = OnceLock::new();
    C.get_or_init(|| Arc::new(LinearCode::bch(6, 2, true).unwrap()))
}

fn noisy_frame(code: &LinearCode, seed: u64, ebn0: f64) -> (Vec<u8>, Received) {
    use rand::Rng;
    let mut rng = frame_rng(seed, 0);
    let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
    let c = code.encode(&info).unwrap();
    let f = transmit(&c, &ChannelParams::from_ebn0(ebn0, code.rate()), &mut rng);
    (c, f.received)
}

#[test]
fn list_is_unique_and_weight_ordered() {
    let list = generate_query_list(256, 1 << 16);
    assert_eq!(list.len(), 1 << 16);
    let set: HashSet<_> = list.patterns().iter().collect();
    assert_eq!(set.len(), list.len());
    for w in list.patterns().windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let key = |p: &ordept::Pattern| (p.logistic_weight(), p.weight());
        assert!(key(a) < key(b) || (key(a) == key(b) && a.ranks() < b.ranks()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn list_prefix_stable(n in 1usize..80, q1 in 1usize..600, extra in 0usize..600) {
        let small = generate_query_list(n, q1);
        let big = generate_query_list(n, q1 + extra);
        prop_assert!(small.len() <= big.len());
        prop_assert_eq!(small.patterns(), &big.patterns()[..small.len()]);
    }

    #[test]
    fn list_restricts_across_universes(n in 1usize..40, grow in 0usize..40, q in 1usize..800) {
        let wide = generate_query_list(n + grow, q);
        let kept: Vec<_> = wide.patterns().iter().filter(|p| p.max_rank() <= n).cloned().collect();
        let narrow = generate_query_list(n, kept.len());
        prop_assert_eq!(narrow.patterns(), &kept[..]);
    }

    #[test]
    fn parity_split_partitions(n in 1usize..64, q in 1usize..400, offset in 0usize..2) {
        let list = generate_query_list(n, q);
        let (even, odd) = split_by_parity(&list, offset);
        prop_assert_eq!(even.len() + odd.len(), list.len());
        prop_assert!(even.patterns().iter().all(|p| (p.weight() + offset) % 2 == 0));
        prop_assert!(odd.patterns().iter().all(|p| (p.weight() + offset) % 2 == 1));
        let (mut i, mut j) = (0, 0);
        for p in list.patterns() {
            if even.get(i) == Some(p) { i += 1 } else { prop_assert_eq!(odd.get(j), Some(p)); j += 1 }
        }
        let indexed = list.clone().with_parity_split(offset);
        prop_assert!(indexed.eligible(0).eq(even.patterns().iter()));
        prop_assert!(indexed.eligible(1).eq(odd.patterns().iter()));
    }

    #[test]
    fn identity_permutation_maps_ranks(n in 1usize..100, q in 1usize..200) {
        let id: Vec<usize> = (0..n).collect();
        for p in generate_query_list(n, q).patterns() {
            let pos = map_to_positions(p, &id).unwrap();
            let ranks: Vec<usize> = p.ranks().iter().map(|&r| r as usize - 1).collect();
            prop_assert_eq!(pos, ranks);
        }
    }

    #[test]
    fn field_axioms(r in 2u32..=10, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = GaloisField::with_default_poly(r).unwrap();
        let m = (1u32 << r) - 1;
        let (a, b, c) = (a & m, b & m, c & m);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn fast_completion_matches_generic(s in any::<u64>()) {
        let code = bch_8_2();
        let s = [s & ((1u64 << code.m()) - 1)];
        let t = code.completion_table();
        prop_assert!(t.has_prefix_permutation());
        prop_assert_eq!(t.complete(code.parity_check(), &s), t.complete_generic(&s));
    }

    #[test]
    fn syndrome_is_linear(seed in any::<u64>()) {
        use rand::Rng;
        let code = bch_8_2();
        let mut rng = frame_rng(seed, 1);
        let a: Vec<u8> = (0..code.n()).map(|_| rng.random_range(0..2u8)).collect();
        let b: Vec<u8> = (0..code.n()).map(|_| rng.random_range(0..2u8)).collect();
        let ab: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let sa = code.syndrome(&a).unwrap().to_bits();
        let sb = code.syndrome(&b).unwrap().to_bits();
        let sab = code.syndrome(&ab).unwrap().to_bits();
        let xor: Vec<u8> = sa.iter().zip(&sb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(sab, xor);
        // the all-ones row flags odd weight
        prop_assert_eq!(sa[code.m() - 1], a.iter().fold(0, |p, x| p ^ x));
    }

    #[test]
    fn encoding_roundtrip(seed in any::<u64>(), which in 0usize..3) {
        use rand::Rng;
        let code = match which {
            0 => LinearCode::bch(5, 2, true).unwrap(),
            1 => LinearCode::crc(0x1D5, 40).unwrap(),
            _ => LinearCode::hamming(4).unwrap(),
        };
        let mut rng = frame_rng(seed, 2);
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
        let c = code.encode(&info).unwrap();
        prop_assert!(code.is_codeword(&c));
        prop_assert_eq!(code.extract_info(&c), info);
        let back = load_parity_check(&save_parity_check(&code)).unwrap();
        prop_assert_eq!(back.parity_check().rows(), code.parity_check().rows());
        prop_assert!(back.is_codeword(&c));
    }

    #[test]
    fn decoder_contracts(seed in any::<u64>(), ebn0 in 1.0f64..6.0, c_max in 1usize..6, q_max in 1usize..400, t in 0usize..64, shot in 1usize..64) {
        let code = bch_6_2();
        let (_, rx) = noisy_frame(code, seed, ebn0);
        let cfg = DecoderConfig::ordept(q_max, c_max, t).with_shot_size(shot);
        let r = Decoder::new(code.clone(), cfg).unwrap().decode(&rx).unwrap();
        prop_assert!(r.queries_used <= q_max);
        prop_assert_eq!(r.shots_used, r.queries_used.div_ceil(shot));
        prop_assert!(r.candidates.len() <= c_max);
        for c in &r.candidates {
            prop_assert!(code.is_codeword(&c.codeword));
        }
        if let Some(b) = r.best() {
            prop_assert!(r.candidates.iter().all(|c| c.sq_distance >= b.sq_distance));
            let first_min = r.candidates.iter().position(|c| c.sq_distance == b.sq_distance).unwrap();
            prop_assert_eq!(r.best, Some(first_min));
        }
        let idx: Vec<usize> = r.candidates.iter().map(|c| c.query_index).collect();
        prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if let (Some(first), Some(last)) = (idx.first(), idx.last()) {
            if *first > 0 {
                prop_assert!(r.queries_used <= last + t);
            }
        }
    }

    #[test]
    fn candidates_prefix_monotone_in_qmax(seed in any::<u64>(), ebn0 in 1.0f64..5.0, q1 in 1usize..300, extra in 0usize..300) {
        let code = bch_6_2();
        let (_, rx) = noisy_frame(code, seed, ebn0);
        let list = generate_split_list(code.n(), q1 + extra, 1);
        let small = ordept_decode(&rx, code, &list, &DecoderConfig::ordept(q1, 5, 10_000)).unwrap();
        let big = ordept_decode(&rx, code, &list, &DecoderConfig::ordept(q1 + extra, 5, 10_000)).unwrap();
        prop_assert!(small.candidates.len() <= big.candidates.len());
        prop_assert_eq!(&small.candidates[..], &big.candidates[..small.candidates.len()]);
    }

    #[test]
    fn first_hit_with_single_candidate(seed in any::<u64>(), ebn0 in 1.0f64..5.0) {
        let code = bch_6_2();
        let (_, rx) = noisy_frame(code, seed, ebn0);
        let list = generate_split_list(code.n(), 512, 1);
        let one = ordept_decode(&rx, code, &list, &DecoderConfig::ordept(512, 1, 0)).unwrap();
        let many = ordept_decode(&rx, code, &list, &DecoderConfig::ordept(512, 50, 512)).unwrap();
        prop_assert_eq!(one.candidates.len(), many.candidates.len().min(1));
        if let Some(c) = one.best() {
            prop_assert_eq!(c, &many.candidates[0]);
            prop_assert_eq!(one.queries_used, c.query_index);
        }
    }

    #[test]
    fn errs_only_for_closer_candidates(seed in any::<u64>(), ebn0 in 1.0f64..5.0) {
        let code = bch_6_2();
        let (c, rx) = noisy_frame(code, seed, ebn0);
        let list = generate_split_list(code.n(), 256, 1);
        let r = ordept_decode(&rx, code, &list, &DecoderConfig::ordept(256, 4, 256)).unwrap();
        if let Some(truth) = r.candidates.iter().find(|k| k.codeword == c) {
            if r.codeword() != Some(&c[..]) {
                prop_assert!(r.best().unwrap().sq_distance < truth.sq_distance);
            }
        }
    }

    #[test]
    fn adaptive_factors_bounded_and_monotone(
        a in 0.0f64..2.0, gap in 0.0f64..1.0, k in 0.0f64..1.0,
        e1 in 0.0f64..20.0, de in 0.0f64..20.0, i1 in 1usize..20, di in 0usize..20,
    ) {
        let p = AdaptiveStep { a_alpha: a, b_alpha: a - gap, k_alpha: k, a_beta: a, b_beta: a - gap, k_beta: k };
        let (x0, y0) = adaptive_hybrid_factors(e1, i1, &p);
        let (x1, _) = adaptive_hybrid_factors(e1 + de, i1, &p);
        let (x2, y2) = adaptive_hybrid_factors(e1, i1 + di, &p);
        prop_assert!(x0 >= p.b_alpha && x0 <= p.a_alpha);
        prop_assert!(y0 >= p.b_beta && y0 <= p.a_beta);
        prop_assert!(x1 <= x0 && x2 <= x0 && y2 <= y0);
    }

    #[test]
    fn soft_update_identity_and_bound(
        y0 in proptest::collection::vec(-3.0f64..3.0, 8),
        y_prev in proptest::collection::vec(-3.0f64..3.0, 8),
        words in proptest::collection::vec(proptest::collection::vec(0u8..2, 8), 1..5),
        alpha in 0.0f64..=1.0, beta in 0.0f64..2.0,
    ) {
        let cands: Vec<Candidate> = words.iter().map(|w| Candidate {
            codeword: w.clone(), query_index: 1, error_pattern: vec![], analog_weight: 0.0, sq_distance: 0.0,
        }).collect();
        let out = pyndiah_update(&y0, &y_prev, &cands, alpha, beta).unwrap();
        let d: Vec<f64> = words.iter().map(|w| {
            y_prev.iter().zip(modulate(w)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
        }).collect();
        let dmin = d.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = d.iter().map(|x| x - dmin).fold(0.0, f64::max) / 4.0;
        for i in 0..8 {
            prop_assert!(out[i].is_finite());
            prop_assert!(out[i].abs() <= y0[i].abs() + alpha * spread.max(beta) + 1e-12);
        }
        if words.len() == 1 {
            let zero = pyndiah_update(&y0, &y_prev, &cands, 0.0, beta).unwrap();
            prop_assert_eq!(zero, y0);
        }
    }

    #[test]
    fn csv_roundtrip_counters(frames in 1u64..1_000_000, be in 0u64..1000, q in 0u64..10_000_000, snr in -5.0f64..15.0) {
        let mut r = SimRecord::empty(snr, 239);
        let block = be.min(frames);
        let extra = SimRecord { frames, bit_errors: block * 3, block_errors: block, total_queries: q,
            total_shots: q.div_ceil(256).min(q), abandoned: block / 2, decodes: frames, ..SimRecord::empty(snr, 239) };
        r = r.merge(&extra).unwrap();
        let back = parse_csv(&emit_csv(std::slice::from_ref(&r)).unwrap(), 239).unwrap();
        prop_assert!(back[0].same_counters(&r));
    }
}
