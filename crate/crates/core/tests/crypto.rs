use std::collections::HashSet;

use proptest::prelude::*;
use qsec::crypto::prng::{bm_predicate, goldreich_levin_stream, OwpHandle, OwpKind};
use qsec::crypto::separations::swap_halves;
use qsec::crypto::skes::{otp_dec, otp_enc};
use qsec::crypto::{
    blum_micali_next, cca2_restricted_dec, feistel_prp, feistel_prp_inv, owtp_eval, owtp_invert, pkes_owtp_dec,
    pkes_owtp_enc, prf_eval, sample_ideal_qprp, Cca1Sep, Goldreich, PkesOwtp, PrfBackend, PrngState, PrpMode,
    PrpScheme, RsaTrapdoor, SecretKey, Skes, TrapdoorKeyPair,
};
use qsec::rng::rng_for;
use qsec::BitString;
use rand::Rng as _;

fn naive_pow(g: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * g % p)
}

fn key(v: u64, len: usize) -> SecretKey {
    SecretKey::new(BitString::from_u64(v, len).unwrap())
}

fn bits(s: &str) -> BitString {
    BitString::parse_binary(s).unwrap()
}

#[test]
fn blum_micali_matches_naive_exponentiation() {
    let (b1, s1) = blum_micali_next(&PrngState::blum_micali(23, 5, 3).unwrap()).unwrap();
    assert!(matches!(s1, PrngState::BlumMicali { s: 10, .. }));
    assert_eq!(b1, bm_predicate(10, 23));
    let (_, s2) = blum_micali_next(&s1).unwrap();
    assert!(matches!(s2, PrngState::BlumMicali { s: 9, .. }));
    assert!(PrngState::blum_micali(23, 1, 1).is_err());

    let mut st = PrngState::blum_micali(1019, 2, 77).unwrap();
    let mut s = 77;
    for _ in 0..200 {
        let (b, next) = blum_micali_next(&st).unwrap();
        s = naive_pow(2, s, 1019);
        assert_eq!(b, s < 509);
        st = next;
    }
}

#[test]
fn goldreich_levin_matches_loop_oracle() {
    let (p, g, width) = (1019u64, 2u64, 10usize);
    let mut rng = rng_for(3, 0);
    for _ in 0..10 {
        let z = BitString::random(width, &mut rng);
        let owp = OwpHandle::new(width, OwpKind::ModExp { p, g }, z.clone()).unwrap();
        let seed = rng.gen_range(1..p);
        let got = goldreich_levin_stream(&BitString::from_u64(seed, width).unwrap(), &owp, 24).unwrap();
        let mut x = seed;
        for j in 0..24 {
            x = naive_pow(g, x, p);
            let parity = (0..width).filter(|&i| z.get(i) && (x >> (width - 1 - i)) & 1 == 1).count() % 2;
            assert_eq!(got.get(j), parity == 1);
        }
    }

    let id = OwpHandle::new(6, OwpKind::Identity, bits("100000")).unwrap();
    assert_eq!(goldreich_levin_stream(&BitString::ones(6), &id, 6).unwrap(), BitString::ones(6));

    let z = BitString::random(width, &mut rng);
    let owp = OwpHandle::new(width, OwpKind::ModExp { p, g }, z).unwrap();
    let differs = (0..10).any(|_| {
        let a = BitString::from_u64(rng.gen_range(1..p), width).unwrap();
        let b = BitString::from_u64(rng.gen_range(1..p), width).unwrap();
        a != b && goldreich_levin_stream(&a, &owp, 32).unwrap() != goldreich_levin_stream(&b, &owp, 32).unwrap()
    });
    assert!(differs);
    assert!(goldreich_levin_stream(&BitString::ones(5), &owp, 4).is_err());
}

#[test]
fn ideal_prf_output_bits_are_unbiased() {
    let k = key(0xdead_beef, 32);
    let n = 1u64 << 12;
    let ones: usize = (0..n)
        .map(|x| prf_eval(PrfBackend::Ideal, &k, &BitString::from_u64(x, 12).unwrap()).unwrap().count_ones())
        .sum();
    let total = (n * 12) as f64;
    let sigma = (0.25 / total).sqrt();
    assert!((ones as f64 / total - 0.5).abs() <= 3.0 * sigma);
    let x = bits("000000000101");
    assert_eq!(prf_eval(PrfBackend::Ideal, &k, &x).unwrap(), prf_eval(PrfBackend::Ideal, &k, &x).unwrap());
}

#[test]
fn feistel_width_8_is_injective_and_inverted() {
    let k = key(12345, 32);
    let mut seen = HashSet::new();
    for x in 0..256u64 {
        let xb = BitString::from_u64(x, 8).unwrap();
        let y = feistel_prp(&k, &xb).unwrap();
        assert!(seen.insert(y.to_u64().unwrap()));
        assert_eq!(feistel_prp_inv(&k, &y).unwrap(), xb);
    }
    assert!(feistel_prp(&k, &bits("101")).is_err());
}

#[test]
fn ideal_permutations_average_one_fixed_point() {
    let fixed: Vec<f64> = (0..100u64)
        .map(|i| {
            let p = sample_ideal_qprp(&key(i, 32), 8).unwrap();
            (0..256).filter(|&z| p.apply(z) == z).count() as f64
        })
        .collect();
    let mean = fixed.iter().sum::<f64>() / 100.0;
    // Poisson(1): variance 1.
    assert!((mean - 1.0).abs() <= 3.0 * (1.0f64 / 100.0).sqrt(), "mean {mean}");
}

#[test]
fn otp_examples() {
    let k = SecretKey::new(bits("1010"));
    assert_eq!(otp_enc(&k, &bits("0110")).unwrap(), bits("1100"));
    assert_eq!(otp_enc(&k, &bits("1010")).unwrap(), bits("0000"));
    assert_eq!(otp_enc(&SecretKey::new(bits("0000")), &bits("0110")).unwrap(), bits("0110"));
    assert_eq!(otp_dec(&k, &bits("1100")).unwrap(), bits("0110"));
    assert!(otp_enc(&k, &bits("011")).is_err());
}

#[test]
fn goldreich_pad_and_flip() {
    let scheme = Goldreich::new(8);
    let mut rng = rng_for(4, 0);
    for _ in 0..100 {
        let k = scheme.keygen(&mut rng);
        let ks = scheme.load(&k).unwrap();
        let x = BitString::random(8, &mut rng);
        let r = BitString::random(8, &mut rng);
        let c = ks.enc_with(&x, Some(&r)).unwrap();
        assert_eq!(ks.dec(&c).unwrap(), x);
        assert_eq!(c.payload.xor(&x).unwrap(), prf_eval(PrfBackend::Ideal, &k, &r).unwrap());
        let mut flipped = c.clone();
        flipped.payload = c.payload.xor(&BitString::ones(8)).unwrap();
        assert_eq!(ks.dec(&flipped).unwrap(), x.xor(&BitString::ones(8)).unwrap());
    }
}

#[test]
fn goldreich_r_collisions_match_birthday() {
    let scheme = Goldreich {
        r_bits: 6,
        ..Goldreich::new(6)
    };
    let mut rng = rng_for(5, 0);
    let k = scheme.keygen(&mut rng);
    let ks = scheme.load(&k).unwrap();
    let x = BitString::zeros(6);
    let trials = 2000;
    let hits = (0..trials)
        .filter(|_| ks.enc(&x, &mut rng).unwrap().r == ks.enc(&x, &mut rng).unwrap().r)
        .count();
    let p = 1.0 / 64.0;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((hits as f64 / trials as f64 - p).abs() <= 3.0 * sigma);
}

#[test]
fn prp_scheme_exhaustive_at_m3_r3() {
    let scheme = PrpScheme::new(3, 3);
    let mut rng = rng_for(6, 0);
    for _ in 0..5 {
        let ks = scheme.load(&scheme.keygen(&mut rng)).unwrap();
        for x in 0..8 {
            for r in 0..8 {
                let xb = BitString::from_u64(x, 3).unwrap();
                let c = ks.enc_with(&xb, Some(&BitString::from_u64(r, 3).unwrap())).unwrap();
                assert_eq!(ks.dec(&c).unwrap(), xb);
            }
        }
    }
    let mode = PrpMode { inner: scheme, blocks: 3 };
    let ks = mode.load(&mode.keygen(&mut rng)).unwrap();
    let m = BitString::random(9, &mut rng);
    assert_eq!(ks.dec(&ks.enc(&m, &mut rng).unwrap()).unwrap(), m);
}

#[test]
fn rsa_textbook_and_trapdoor() {
    let kp = TrapdoorKeyPair::from_primes(3, 11, 3).unwrap();
    assert_eq!((kp.index.n, kp.trapdoor.d), (33, 7));
    assert_eq!(owtp_eval(&kp.index, 2).unwrap(), 8);
    assert_eq!(owtp_invert(&kp.index, &kp.trapdoor, 8).unwrap(), 2);
    for x in (1..33).filter(|&x| kp.index.in_domain(x)) {
        assert_eq!(owtp_eval(&kp.index, x).unwrap(), naive_pow(x, 3, 33));
        assert_eq!(owtp_invert(&kp.index, &kp.trapdoor, owtp_eval(&kp.index, x).unwrap()).unwrap(), x);
    }
    let bad = RsaTrapdoor { d: 3 };
    let flagged = (1..33u64)
        .filter(|&x| kp.index.in_domain(x))
        .take(20)
        .filter(|&x| owtp_invert(&kp.index, &bad, owtp_eval(&kp.index, x).unwrap()) != Ok(x))
        .count();
    assert!(flagged >= 1);
}

#[test]
fn pkes_roundtrip_and_pad() {
    let pkes = PkesOwtp {
        msg_bits: 12,
        modulus_bits: 16,
    };
    let mut rng = rng_for(7, 0);
    for _ in 0..50 {
        let (pk, sk) = pkes.keygen(&mut rng).unwrap();
        let x = BitString::random(12, &mut rng);
        let r = pk.index.sample_domain(&mut rng);
        let c = pkes_owtp_enc(&pk, &x, r).unwrap();
        assert_eq!(pkes_owtp_dec(&pk, &sk, &c).unwrap(), x);
        assert_eq!(c.y.xor(&x).unwrap(), pk.pad(r, 12).unwrap());
        let recovered = owtp_invert(&pk.index, &sk, c.z).unwrap();
        assert_eq!(owtp_eval(&pk.index, recovered).unwrap(), c.z);
    }
}

#[test]
fn cca1_separation_scheme() {
    let scheme = Cca1Sep::new(6);
    let mut rng = rng_for(8, 0);
    for _ in 0..20 {
        let k = scheme.keygen(&mut rng);
        let ks = scheme.load(&k).unwrap();
        let m_bar = scheme.hidden_message(&k).unwrap();
        let m = loop {
            let m = BitString::random(6, &mut rng);
            if m != m_bar {
                break m;
            }
        };
        let c = ks.enc(&m, &mut rng).unwrap();
        assert_eq!(ks.dec(&c).unwrap(), m);
        assert_eq!(ks.dec(&swap_halves(&c).unwrap()).unwrap(), m_bar);
        let leak = ks.enc(&m_bar, &mut rng).unwrap();
        let aux = leak.aux.expect("paired ciphertext");
        assert_eq!(&aux.payload, &k.bits().slice(0, 7).unwrap());
        assert_eq!(scheme.excluded_challenges(&k).unwrap(), vec![m_bar]);
    }
}

#[test]
fn restricted_decryption_oracle() {
    let scheme = Goldreich::new(8);
    let mut rng = rng_for(9, 0);
    let ks = scheme.load(&scheme.keygen(&mut rng)).unwrap();
    let x = BitString::random(8, &mut rng);
    let c = ks.enc(&x, &mut rng).unwrap();
    assert_eq!(cca2_restricted_dec(ks.as_ref(), &c, &c).unwrap(), None);
    let mut one_off = c.clone();
    one_off.payload = c.payload.xor(&BitString::from_u64(1, 8).unwrap()).unwrap();
    assert_eq!(
        cca2_restricted_dec(ks.as_ref(), &c, &one_off).unwrap(),
        Some(x.xor(&BitString::from_u64(1, 8).unwrap()).unwrap())
    );
    for _ in 0..20 {
        let y = BitString::random(8, &mut rng);
        let other = ks.enc(&y, &mut rng).unwrap();
        if other != c {
            assert_eq!(cca2_restricted_dec(ks.as_ref(), &c, &other).unwrap(), Some(y));
        }
    }
}

proptest! {
    #[test]
    fn dec_inverts_enc(seed in any::<u64>(), x in 0u64..256) {
        let mut rng = rng_for(seed, 0);
        let xb = BitString::from_u64(x, 8).unwrap();
        let schemes: Vec<Box<dyn Skes>> = vec![
            Box::new(Goldreich::new(8)),
            Box::new(PrpScheme::new(8, 4)),
            Box::new(Goldreich { backend: PrfBackend::Feistel, ..Goldreich::new(8) }),
        ];
        for s in &schemes {
            let ks = s.load(&s.keygen(&mut rng)).unwrap();
            prop_assert_eq!(ks.dec(&ks.enc(&xb, &mut rng).unwrap()).unwrap(), xb.clone());
        }
    }

    #[test]
    fn ideal_permutation_is_bijective(seed in any::<u64>(), bits in 1usize..10) {
        let p = sample_ideal_qprp(&key(seed, 64), bits).unwrap();
        let mut seen = vec![false; 1 << bits];
        for z in 0..1usize << bits {
            prop_assert_eq!(p.apply_inverse(p.apply(z)), z);
            prop_assert!(!std::mem::replace(&mut seen[p.apply(z)], true));
        }
    }
}
