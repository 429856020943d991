//! Concrete adversaries: the separation attacks and the null batteries run
//! against hardened counterparts.

mod bm;
mod classical;
mod hadamard;
mod oram;

use serde::Serialize;

pub use bm::{bm_oram_attack, dlog_bruteforce, BmOramAttack, BmPrediction, BmTables, MAX_DLOG_MODULUS};
pub use classical::{cca1_counterexample_attack, cca2_flip_attack, otp_reuse_attack, Cca1Counterexample, Cca2Flip, OtpReuse};
pub use hadamard::{core_function_split, hadamard_distinguisher, CoreSplit, HadamardDistinguisher, HadamardQuery};
pub use oram::{LeafFrequency, PayloadOnly, TagOnly};

/// An attack, what it targets and what it is expected to achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AttackSpec {
    pub name: &'static str,
    pub target: &'static str,
    pub hardened: &'static str,
    pub game: &'static str,
    pub contract: &'static str,
}

pub fn attack_specs() -> Vec<AttackSpec> {
    vec![
        AttackSpec {
            name: "hadamard",
            target: "type-2 lift of otp or goldreich",
            hardened: "ideal-permutation scheme with r extra bits",
            game: "qind",
            contract: "wins with probability 1",
        },
        AttackSpec {
            name: "otp-reuse",
            target: "otp",
            hardened: "goldreich",
            game: "ind-cpa",
            contract: "wins with probability 1",
        },
        AttackSpec {
            name: "cca1",
            target: "cca1-sep",
            hardened: "goldreich",
            game: "ind-cca1",
            contract: "wins with probability 1",
        },
        AttackSpec {
            name: "cca2-flip",
            target: "goldreich",
            hardened: "prp",
            game: "ind-cca2",
            contract: "wins with probability 1",
        },
        AttackSpec {
            name: "bm-oram",
            target: "pathoram with blum-micali leaves",
            hardened: "pathoram with prf leaves",
            game: "ap-ind-cqa",
            contract: "success rate at least 0.95",
        },
    ]
}
