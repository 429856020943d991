use std::sync::Arc;

use qsec::attacks::{
    bm_oram_attack, core_function_split, hadamard_distinguisher, Cca1Counterexample, Cca2Flip, HadamardQuery,
    LeafFrequency, OtpReuse, PayloadOnly, TagOnly,
};
use qsec::crypto::{Cca1Sep, Goldreich, Otp, PrpScheme, Skes};
use qsec::games::{
    estimate_advantage, game_ap_ind_cqa, game_ind, game_ind_qcpa, game_qap_ind_cqa, game_qind, ApChallenger,
    ApConfig, Grant, IndAdversary, Params, QindGrant,
};
use qsec::oram::LeafPrng;
use qsec::qoram::{Skqes, Type2Lift};
use qsim::{avg_perm_channel, maximally_mixed, trace_distance, DensityMatrix, Gate, StateVector};

const BM: LeafPrng = LeafPrng::BlumMicali { p: 65537, g: 3 };

type Case<'a> = (&'a str, Box<dyn Skes>, Grant, &'a dyn IndAdversary);

fn null(name: &str, trials: u64, seed: u64, f: impl Fn(u64) -> qsec::Result<bool> + Sync) -> f64 {
    let res = estimate_advantage(name, Params::new(), trials, seed, f).unwrap();
    assert!(
        res.advantage.abs() <= 3.0 * res.null_sigma(),
        "{name}: advantage {} over {trials} trials",
        res.advantage
    );
    res.advantage
}

#[test]
fn hadamard_wins_against_quasi_length_preserving_lifts() {
    for m in 2..=5 {
        let otp = Type2Lift::new(Arc::new(Otp { n: m }));
        let gold = Type2Lift::new(Arc::new(Goldreich {
            r_bits: 2,
            ..Goldreich::new(m)
        }));
        for seed in 0..20 {
            assert!(game_qind(&otp, QindGrant::Plain, &hadamard_distinguisher(m), seed).unwrap());
            assert!(game_qind(&gold, QindGrant::Plain, &hadamard_distinguisher(m), seed).unwrap());
        }
    }
}

#[test]
fn core_split_classifies_schemes() {
    let mut rng = qsec::rng::rng_for(1, 0);
    for s in [&Goldreich::new(4) as &dyn Skes, &Otp { n: 4 }] {
        let split = core_function_split(s.load(&s.keygen(&mut rng)).unwrap().as_ref()).unwrap();
        assert!(split.quasi_length_preserving);
    }
    let prp = PrpScheme::new(2, 3);
    let split = core_function_split(prp.load(&prp.keygen(&mut rng)).unwrap().as_ref()).unwrap();
    assert!(!split.quasi_length_preserving);
}

#[test]
fn ideal_permutation_scheme_resists_hadamard_within_bound() {
    let mut plus = StateVector::zero(2).unwrap();
    plus.apply(&Gate::H, &[0]).unwrap();
    plus.apply(&Gate::H, &[1]).unwrap();
    for r in [3, 4] {
        let bound = 2f64.powi(2 - r as i32);
        for rho in [plus.to_density(), DensityMatrix::basis(2, 3).unwrap()] {
            let avg = avg_perm_channel(&rho, r).unwrap();
            assert!(trace_distance(&avg, &maximally_mixed(2 + r).unwrap()).unwrap() <= bound);
        }
        let lift = Type2Lift::new(Arc::new(PrpScheme::new(2, r)));
        assert_eq!(lift.msg_qubits(), 2);
        let adv = hadamard_distinguisher(2);
        let res = estimate_advantage("qind", Params::new(), 300, 11, |s| game_qind(&lift, QindGrant::Plain, &adv, s)).unwrap();
        assert!(res.advantage <= bound + 3.0 * res.null_sigma());
    }
}

#[test]
fn classical_attacks_win_their_targets() {
    for seed in 0..50 {
        assert!(game_ind(&Otp { n: 8 }, Grant::Cpa, &OtpReuse, seed).unwrap());
        assert!(game_ind(&Cca1Sep::new(6), Grant::Cca1, &Cca1Counterexample, seed).unwrap());
        assert!(game_ind(&Goldreich::new(8), Grant::Cca2, &Cca2Flip, seed).unwrap());
    }
}

#[test]
fn classical_attacks_fail_against_hardened_schemes() {
    let cases: [Case; 3] = [
        ("otp-reuse", Box::new(Goldreich::new(16)), Grant::Cpa, &OtpReuse),
        ("cca1", Box::new(Goldreich::new(16)), Grant::Cca1, &Cca1Counterexample),
        ("cca2-flip", Box::new(PrpScheme::new(8, 6)), Grant::Cca2, &Cca2Flip),
    ];
    for (i, (name, scheme, grant, adv)) in cases.iter().enumerate() {
        null(name, 500, 100 + i as u64, |s| game_ind(scheme.as_ref(), *grant, *adv, s));
    }
}

#[test]
fn superposition_query_gains_nothing_against_wide_randomness() {
    let scheme = Goldreich {
        r_bits: 8,
        ..Goldreich::new(2)
    };
    null("qcpa", 200, 3, |s| game_ind_qcpa(&scheme, &HadamardQuery, s));
}

#[test]
fn bm_observation_matches_the_client_log() {
    let attack = bm_oram_attack(16);
    let config = ApConfig::new(BM, 16, 1);
    let n_db = 16;
    let mut recovered = 0;
    for seed in 0..20 {
        let mut ch = ApChallenger::new(&config, n_db, seed, false).unwrap();
        let (history, prediction) = attack.observe(&mut ch, 1).unwrap();
        let log = ch.client().leaf_log();
        assert_eq!(history[0], log[0]);
        for t in 1..history.len() {
            assert_eq!(history[t], log[n_db + t - 1]);
        }
        if let Some(pr) = prediction {
            recovered += 1;
            assert_eq!(pr.initial, log[..n_db]);
            assert_eq!(Some(pr.target), ch.client().position(1));
        }
    }
    assert!(recovered >= 18, "{recovered}/20 states recovered");
}

#[test]
fn bm_attack_breaks_blum_micali_and_not_the_secure_prng() {
    let attack = bm_oram_attack(16);
    let weak = ApConfig::new(BM, 16, 1);
    let wins = (0..100).filter(|&s| game_ap_ind_cqa(&weak, &attack, s).unwrap()).count();
    assert!(wins >= 95, "{wins}/100");
    let strong = ApConfig::new(LeafPrng::Secure, 16, 1);
    null("bm-secure", 500, 21, |s| game_ap_ind_cqa(&strong, &attack, s));
}

#[test]
fn leaf_frequency_fails_against_secure_prng() {
    let adv = LeafFrequency { k: 8, n_db: 8 };
    let config = ApConfig::new(LeafPrng::Secure, 8, 0);
    null("leaf-frequency", 500, 31, |s| game_ap_ind_cqa(&config, &adv, s));
}

#[test]
fn qap_distinguishers_fail() {
    for n_dat in [1, 2] {
        let tag = TagOnly { n_dat };
        null("tag-only", 500, 41, |s| game_qap_ind_cqa(LeafPrng::Secure, 2, 0, &tag, s));
        let payload = PayloadOnly { n_dat };
        null("payload-only", 500, 43, |s| game_qap_ind_cqa(LeafPrng::Secure, 1, 0, &payload, s));
    }
}
