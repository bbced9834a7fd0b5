//! Library results checked against small independent reference computations.

use std::sync::Arc;

use rand::Rng;

use ordept::channel::{frame_rng, modulate, transmit, ChannelParams, Received};
use ordept::decoders::{analog_weight, chase2_decode, orbgrand_decode, sq_distance, Candidate, Decoder, DecoderConfig};
use ordept::gf::{default_primitive_poly, GaloisField};
use ordept::patterns::{generate_query_list, Pattern};
use ordept::turbo::{
    adaptive_hybrid_factors, product_decode_iterative, product_encode, pyndiah_update, AdaptiveStep, TurboConfig,
};
use ordept::LinearCode;

/// Carry-less multiplication modulo `poly`.
fn clmul_mod(mut a: u32, mut b: u32, poly: u32, r: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> r & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

#[test]
fn field_multiplication_matches_shift_and_add() {
    for r in 2..=8u32 {
        let poly = default_primitive_poly(r).unwrap();
        let f = GaloisField::new(r, poly).unwrap();
        let q = 1u32 << r;
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.mul(a, b), clmul_mod(a, b, poly, r), "r={r} a={a} b={b}");
            }
        }
        // the generator cycles through every non-zero element once
        let mut seen = vec![false; q as usize];
        let mut x = 1u32;
        for _ in 0..q - 1 {
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
            x = clmul_mod(x, 2, poly, r);
        }
        assert_eq!(x, 1);
    }
}

/// GF(2) polynomials as bit vectors, bit i = coefficient of x^i.
fn poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 1 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= y;
            }
        }
    }
    out
}

/// Minimal polynomial of alpha^e over GF(2), from its conjugates.
fn minimal_poly(r: u32, poly: u32, e: usize) -> Vec<u8> {
    let order = (1usize << r) - 1;
    let alpha_pow = |k: usize| {
        let mut x = 1u32;
        for _ in 0..k % order {
            x = clmul_mod(x, 2, poly, r);
        }
        x
    };
    let mut conj = vec![e % order];
    loop {
        let next = conj.last().unwrap() * 2 % order;
        if next == conj[0] {
            break;
        }
        conj.push(next);
    }
    // coefficients in GF(2^r), lowest degree first
    let mut m: Vec<u32> = vec![1];
    for &c in &conj {
        let root = alpha_pow(c);
        let mut next = vec![0u32; m.len() + 1];
        for (i, &a) in m.iter().enumerate() {
            next[i + 1] ^= a;
            next[i] ^= clmul_mod(a, root, poly, r);
        }
        m = next;
    }
    m.iter()
        .map(|&a| {
            assert!(a <= 1, "minimal polynomial must be binary");
            a as u8
        })
        .collect()
}

fn bch_generator(r: u32, t: usize) -> Vec<u8> {
    let poly = default_primitive_poly(r).unwrap();
    let order = (1usize << r) - 1;
    let mut covered = vec![false; order];
    let mut g = vec![1u8];
    for i in 0..t {
        let e = 2 * i + 1;
        if covered[e % order] {
            continue;
        }
        let mut c = e % order;
        loop {
            covered[c] = true;
            c = c * 2 % order;
            if c == e % order {
                break;
            }
        }
        g = poly_mul(&g, &minimal_poly(r, poly, e));
    }
    g
}

/// Systematic encoding by polynomial division: c(x) = x^(n-k) m(x) + rem.
fn bch_encode_division(g: &[u8], n: usize, msg: &[u8]) -> Vec<u8> {
    let deg = g.len() - 1;
    let mut c = vec![0u8; n];
    c[deg..deg + msg.len()].copy_from_slice(msg);
    let mut rem = c.clone();
    for i in (deg..n).rev() {
        if rem[i] == 1 {
            for (j, &gj) in g.iter().enumerate() {
                rem[i - deg + j] ^= gj;
            }
        }
    }
    for i in 0..deg {
        c[i] = rem[i];
    }
    c
}

#[test]
fn division_encoder_codewords_have_zero_syndrome() {
    for r in [4u32, 6] {
        for t in [1usize, 2] {
            let g = bch_generator(r, t);
            let n = (1usize << r) - 1;
            let k = n - (g.len() - 1);
            let plain = LinearCode::bch(r, t, false).unwrap();
            let ext = LinearCode::bch(r, t, true).unwrap();
            assert_eq!(plain.k(), k);
            assert_eq!(ext.k(), k);
            let check = |msg: &[u8]| {
                let c = bch_encode_division(&g, n, msg);
                assert!(plain.syndrome(&c).unwrap().is_zero(), "r={r} t={t}");
                let mut ce = c.clone();
                ce.push(c.iter().fold(0, |a, b| a ^ b));
                assert!(ext.syndrome(&ce).unwrap().is_zero(), "extended r={r} t={t}");
            };
            if r == 4 {
                for m in 0..1u32 << k {
                    let msg: Vec<u8> = (0..k).map(|i| (m >> i & 1) as u8).collect();
                    check(&msg);
                }
            } else {
                let mut rng = frame_rng(41, (r * 10) as u64 + t as u64);
                for _ in 0..10_000 {
                    let msg: Vec<u8> = (0..k).map(|_| rng.random_range(0..2u8)).collect();
                    check(&msg);
                }
            }
        }
    }
}

#[test]
fn crc_multiples_of_generator_are_codewords() {
    let g = 0x1D5u64;
    let n = 48;
    let code = LinearCode::crc(g, n).unwrap();
    assert_eq!(code.m(), 8);
    let gbits: Vec<u8> = (0..9).map(|i| (g >> i & 1) as u8).collect();
    let mut rng = frame_rng(42, 0);
    for _ in 0..500 {
        let m: Vec<u8> = (0..n - 8).map(|_| rng.random_range(0..2u8)).collect();
        let prod = poly_mul(&m, &gbits);
        // bit j of the word holds the coefficient of x^(n-1-j)
        let w: Vec<u8> = (0..n).map(|j| prod[n - 1 - j]).collect();
        assert!(code.is_codeword(&w));
    }
}

#[test]
fn syndrome_matches_row_by_row_dot_products() {
    let codes = [
        LinearCode::bch(8, 2, true).unwrap(),
        LinearCode::bch(7, 3, false).unwrap(),
        LinearCode::crc(0x1D5, 100).unwrap(),
    ];
    let mut rng = frame_rng(43, 0);
    for code in &codes {
        let h = code.parity_check();
        for _ in 0..200 {
            let w: Vec<u8> = (0..code.n()).map(|_| rng.random_range(0..2u8)).collect();
            let naive: Vec<u8> = (0..code.m())
                .map(|i| {
                    h.row_bits(i)
                        .iter()
                        .zip(&w)
                        .fold(0, |a, (x, y)| a ^ (x & y))
                })
                .collect();
            assert_eq!(code.syndrome(&w).unwrap().to_bits(), naive);
        }
    }
}

fn all_subsets_sorted(n: usize) -> Vec<Vec<u16>> {
    let mut all: Vec<Vec<u16>> = (0..1u32 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i as u16 + 1).collect())
        .collect();
    all.sort_by(|a, b| {
        let wa: u32 = a.iter().map(|&x| u32::from(x)).sum();
        let wb: u32 = b.iter().map(|&x| u32::from(x)).sum();
        wa.cmp(&wb).then(a.len().cmp(&b.len())).then(a.cmp(b))
    });
    all
}

#[test]
fn pattern_counts_match_subset_enumeration() {
    let n = 10;
    let brute = all_subsets_sorted(n)
        .into_iter()
        .filter(|s| s.iter().map(|&x| u32::from(x)).sum::<u32>() <= 10)
        .count();
    let list = generate_query_list(n, 1 << n);
    let ours = list
        .patterns()
        .iter()
        .filter(|p| p.logistic_weight() <= 10)
        .count();
    assert_eq!(ours, brute);
}

#[test]
fn full_list_order_matches_sorted_subsets() {
    let n = 12;
    let list = generate_query_list(n, 1 << n);
    let expected: Vec<Pattern> = all_subsets_sorted(n)
        .into_iter()
        .map(|r| Pattern::new(r).unwrap())
        .collect();
    assert_eq!(list.patterns(), &expected[..]);
}

#[test]
fn orbgrand_matches_sequential_scan() {
    let code = LinearCode::hamming(3).unwrap();
    let list = generate_query_list(7, 128);
    let cfg = DecoderConfig::orbgrand(128);
    let params = ChannelParams::from_ebn0(2.0, code.rate());
    for i in 0..10_000u64 {
        let mut rng = frame_rng(44, i);
        let info: Vec<u8> = (0..4).map(|_| rng.random_range(0..2u8)).collect();
        let f = transmit(&code.encode(&info).unwrap(), &params, &mut rng);
        let rx = &f.received;
        let (q, word) = list
            .patterns()
            .iter()
            .enumerate()
            .find_map(|(q, p)| {
                let mut w = rx.hard.clone();
                for &r in p.ranks() {
                    w[rx.order[r as usize - 1]] ^= 1;
                }
                code.is_codeword(&w).then_some((q + 1, w))
            })
            .unwrap();
        let res = orbgrand_decode(rx, &code, &list, &cfg).unwrap();
        assert_eq!(res.queries_used, q);
        assert_eq!(res.codeword(), Some(&word[..]));
    }
}

#[test]
fn analog_weight_and_distance_rank_alike() {
    let mut rng = frame_rng(45, 0);
    for _ in 0..10_000 {
        let n = 16;
        let sigma: f64 = rng.random_range(0.3..1.5);
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let rx = Received::from_channel(y.clone(), sigma);
        let words: Vec<Vec<u8>> = (0..2)
            .map(|_| (0..n).map(|_| rng.random_range(0..2u8)).collect())
            .collect();
        let diffs: Vec<Vec<usize>> = words
            .iter()
            .map(|c| (0..n).filter(|&j| c[j] != rx.hard[j]).collect())
            .collect();
        let ea = analog_weight(&diffs[0], &rx.llr);
        let eb = analog_weight(&diffs[1], &rx.llr);
        let da = sq_distance(&y, &words[0]);
        let db = sq_distance(&y, &words[1]);
        if (ea - eb).abs() > 1e-9 {
            assert_eq!(ea < eb, da < db);
        }
    }
}

#[test]
fn pyndiah_two_candidates_by_hand() {
    let best = [1u8, 0, 1, 1, 0, 0, 1, 0];
    let mut other = best;
    other[3] ^= 1;
    let y_prev = [0.9, -1.1, 0.4, 0.3, -0.7, -1.3, 1.0, -0.2];
    let y0 = [1.0, -0.8, 0.5, 0.1, -0.9, -1.0, 0.8, -0.4];
    let cand = |c: &[u8]| Candidate {
        codeword: c.to_vec(),
        query_index: 1,
        error_pattern: vec![],
        analog_weight: 0.0,
        sq_distance: 0.0,
    };
    let (alpha, beta) = (0.5, 0.6);
    let out = pyndiah_update(&y0, &y_prev, &[cand(&other), cand(&best)], alpha, beta).unwrap();
    // only bit 3 differs: (0.3 - (-1))^2 - (0.3 - 1)^2 = 1.69 - 0.49 = 1.2
    let r3 = 1.0 * 1.2 / 4.0;
    for i in 0..8 {
        let x = if best[i] == 1 { 1.0 } else { -1.0 };
        let r = if i == 3 { r3 } else { beta * x };
        let expect = y0[i] + alpha * (r - y0[i]);
        assert!((out[i] - expect).abs() < 1e-12, "bit {i}: {} vs {expect}", out[i]);
    }
}

#[test]
fn adaptive_formula_example() {
    let p = AdaptiveStep {
        a_alpha: 1.0,
        b_alpha: 0.2,
        k_alpha: 0.1,
        a_beta: 1.0,
        b_beta: 0.2,
        k_beta: 0.1,
    };
    let (a, b) = adaptive_hybrid_factors(2.0, 3, &p);
    assert!((a - 0.85).abs() < 1e-12 && (b - 0.85).abs() < 1e-12);
}

#[test]
fn chase_single_error_found_by_zero_pattern() {
    let code = LinearCode::bch(8, 2, true).unwrap();
    let mut rng = frame_rng(46, 0);
    for _ in 0..200 {
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
        let c = code.encode(&info).unwrap();
        let mut y = modulate(&c);
        let j = rng.random_range(0..code.n());
        y[j] = -y[j];
        let rx = Received::from_channel(y, 1.0);
        let r = chase2_decode(&rx, &code, 4, &DecoderConfig::chase2(4)).unwrap();
        assert_eq!(r.candidates[0].query_index, 1);
        assert_eq!(r.candidates[0].codeword, c);
        assert_eq!(r.codeword(), Some(&c[..]));
    }
}

#[test]
fn bounded_distance_decoding_within_radius() {
    for (r, t) in [(6u32, 3usize), (8, 2), (8, 3), (5, 1)] {
        for ext in [false, true] {
            let code = LinearCode::bch(r, t, ext).unwrap();
            let mut rng = frame_rng(47, u64::from(r) * 10 + t as u64);
            for _ in 0..300 {
                let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
                let c = code.encode(&info).unwrap();
                let e = rng.random_range(0..=t);
                let mut w = c.clone();
                for j in rand::seq::index::sample(&mut rng, code.n(), e) {
                    w[j] ^= 1;
                }
                assert_eq!(code.bch_hard_decode(&w, t).unwrap(), Some(c), "r={r} t={t} ext={ext}");
            }
        }
    }
}

#[test]
fn product_encoding_order_independent() {
    let code = Arc::new(LinearCode::extended_hamming(4).unwrap());
    assert_eq!((code.n(), code.k()), (16, 11));
    let mut rng = frame_rng(48, 0);
    let mut infos: Vec<Vec<Vec<u8>>> = (0..121)
        .map(|u| (0..11).map(|i| (0..11).map(|j| u8::from(i * 11 + j == u)).collect()).collect())
        .collect();
    for _ in 0..100 {
        infos.push((0..11).map(|_| (0..11).map(|_| rng.random_range(0..2u8)).collect()).collect());
    }
    for info in infos {
        let rows_first = product_encode(&info, code.clone(), code.clone()).unwrap();
        // columns first: encode each information column, then every row
        let cols: Vec<Vec<u8>> = (0..11)
            .map(|j| code.encode(&info.iter().map(|r| r[j]).collect::<Vec<_>>()).unwrap())
            .collect();
        let grid: Vec<Vec<u8>> = (0..16)
            .map(|i| code.encode(&cols.iter().map(|c| c[i]).collect::<Vec<_>>()).unwrap())
            .collect();
        assert_eq!(rows_first.grid, grid);
        assert!(rows_first.is_consistent());
    }
}

#[test]
fn product_single_row_error_fixed_in_first_iteration() {
    let code = Arc::new(LinearCode::bch(5, 1, true).unwrap());
    let mut rng = frame_rng(49, 0);
    let info: Vec<Vec<u8>> = (0..code.k())
        .map(|_| (0..code.k()).map(|_| rng.random_range(0..2u8)).collect())
        .collect();
    let pc = product_encode(&info, code.clone(), code.clone()).unwrap();
    let mut y0: Vec<Vec<f64>> = pc.grid.iter().map(|r| modulate(r)).collect();
    y0[4][9] = -0.6 * y0[4][9];
    let dec = Decoder::new(code.clone(), DecoderConfig::ordept(128, 4, 128).with_soft_output(true)).unwrap();
    let out = product_decode_iterative(&y0, 0.6, &dec, &dec, &TurboConfig { iterations: 3, ..Default::default() }).unwrap();
    for hard in &out.hard_per_iteration {
        assert_eq!(hard, &pc.grid);
    }
    assert_eq!(out.final_info(), &info[..]);
}
