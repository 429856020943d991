use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng as _;

use qsec::attacks::{
    core_function_split, hadamard_distinguisher, BmOramAttack, Cca1Counterexample, Cca2Flip, HadamardQuery,
    OtpReuse, PayloadOnly, TagOnly,
};
use qsec::crypto::{Cca1Sep, Goldreich, KeyedSkes, Otp, PrpScheme, Skes};
use qsec::fiat_shamir::{
    fs_lambda_sign, fs_lambda_verify, fs_sign, fs_verify, honest_transcript_distribution, inst_gen,
    schnorr_transcript, schnorr_verify, semi_constant_oracle, simulated_transcript_distribution,
    special_soundness_extract, FsForm, FsSchnorr, Group, HardInstance, RandomForger, RandomOracleTable,
    ReplayForger,
};
use qsec::games::{
    challenge_bit, estimate_advantage, game_ap_ind_cqa, game_euf_cma, game_ind, game_ind_qcpa, game_qap_ind_cqa,
    game_qind, null_sigma, ApConfig, EufConfig, ExperimentResult, Grant, IndAdversary, Params, QindGrant,
};
use qsec::oram::{check_minimal_soundness, oram_init, run_trace, DataRequest, LeafPrng, OramParams};
use qsec::qoram::{qoram_access, qoram_init, Skqes, QoramParams, QuantumDataRequest, Type2Lift};
use qsec::rng::{derive_seed, rng_for, stream};
use qsec::BitString;
use qsim::{
    avg_perm_channel, maximally_mixed, partial_trace, qotp_apply_on, qotp_average, restrict_to_zero_ancilla,
    trace_distance, type1_from_type2, type1_oracle, type1_permutation, type2_from_type1, type2_oracle,
    zero_ancilla_columns, DensityMatrix, Gate, PermutationOp, StateVector,
};

use crate::{CliError, Experiment, Outcome, ParamSpec, Result, RunContext};

/// Entrywise tolerance for exact identities evaluated in floating point.
const EXACT_TOL: f64 = 1e-10;

fn estimate(ctx: &RunContext, game: &str, trial: impl Fn(u64) -> qsec::Result<bool> + Sync) -> Result<ExperimentResult> {
    Ok(estimate_advantage(game, Params::new(), ctx.trials, ctx.seed, trial)?)
}

fn all_win(game: &str, r: ExperimentResult) -> Outcome {
    Outcome {
        game: game.into(),
        pass: r.successes == r.trials,
        trials: r.trials,
        successes: r.successes,
        metrics: BTreeMap::new(),
    }
}

fn at_least(game: &str, r: ExperimentResult, rate: f64) -> Outcome {
    Outcome {
        pass: r.success_rate() >= rate,
        ..all_win(game, r)
    }
}

fn within_null(game: &str, r: ExperimentResult) -> Outcome {
    let mut metrics = BTreeMap::new();
    metrics.insert("three_sigma".into(), 3.0 * r.null_sigma());
    Outcome {
        pass: r.advantage.abs() <= 3.0 * r.null_sigma(),
        metrics,
        ..all_win(game, r)
    }
}

/// Tally of a fixed battery; every check counts as one trial.
#[derive(Default)]
struct Checks {
    total: u64,
    passed: u64,
    metrics: BTreeMap<String, f64>,
}

impl Checks {
    fn check(&mut self, ok: bool) {
        self.total += 1;
        self.passed += ok as u64;
    }

    fn track_max(&mut self, name: &str, v: f64) {
        let e = self.metrics.entry(name.to_string()).or_insert(0.0);
        *e = e.max(v);
    }

    fn outcome(self, game: &str) -> Outcome {
        Outcome {
            game: game.into(),
            pass: self.passed == self.total,
            trials: self.total,
            successes: self.passed,
            metrics: self.metrics,
        }
    }
}

fn hadamard_state(m: usize, index: usize) -> Result<DensityMatrix> {
    let mut s = StateVector::basis(m, index)?;
    for q in 0..m {
        s.apply(&Gate::H, &[q])?;
    }
    Ok(s.to_density())
}

fn hadamard_impossibility(ctx: &RunContext) -> Result<Outcome> {
    let m = ctx.ranged("m", 1, 10)?;
    let inner: Arc<dyn Skes> = match ctx.str("scheme") {
        "otp" => Arc::new(Otp { n: m }),
        "goldreich" => Arc::new(Goldreich {
            r_bits: ctx.ranged("r_bits", 1, 16)?,
            ..Goldreich::new(m)
        }),
        other => {
            return Err(CliError::BadParam {
                name: "scheme".into(),
                value: other.into(),
                reason: "expected otp or goldreich".into(),
            })
        }
    };
    let keyed = inner.load(&inner.keygen(&mut rng_for(ctx.seed, stream::KEY)))?;
    let split = core_function_split(keyed.as_ref())?;
    let lift = Type2Lift::new(inner);
    let adv = hadamard_distinguisher(m);
    let r = estimate(ctx, "qind", |s| game_qind(&lift, QindGrant::Plain, &adv, s))?;
    let mut out = all_win("qind", r);
    out.pass &= split.quasi_length_preserving;
    out.metrics.insert("core_bits".into(), split.core_bits as f64);
    Ok(out)
}

/// Monte-Carlo average over scheme keys of selected ciphertext entries,
/// as (mean, standard error) per real and imaginary part.
fn sampled_entries(
    lift: &Type2Lift,
    rho: &DensityMatrix,
    entries: &[(usize, usize)],
    keys: u64,
    seed: u64,
) -> Result<Vec<[(f64, f64); 2]>> {
    let targets: Vec<usize> = (0..rho.n_qubits()).collect();
    let mut sum = vec![[0.0f64; 4]; entries.len()];
    for i in 0..keys {
        let mut rng = rng_for(derive_seed(seed, i), stream::KEY);
        let keyed = lift.load(&lift.keygen(&mut rng))?;
        let r = BitString::random(keyed.rand_bits(), &mut rng);
        let ct = keyed.enc_on(rho, &targets, Some(&r))?;
        for (acc, &(a, b)) in sum.iter_mut().zip(entries) {
            let z = ct.state.matrix()[(a, b)];
            *acc = [acc[0] + z.re, acc[1] + z.re * z.re, acc[2] + z.im, acc[3] + z.im * z.im];
        }
    }
    let n = keys as f64;
    let stat = |s: f64, s2: f64| {
        let mean = s / n;
        let var = (s2 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    };
    Ok(sum.iter().map(|a| [stat(a[0], a[1]), stat(a[2], a[3])]).collect())
}

fn qind_construction_bound(ctx: &RunContext) -> Result<Outcome> {
    let m = ctx.ranged("m", 1, 4)?;
    let r_bits = ctx.ranged("r", 1, 6)?;
    let keys: u64 = ctx.get("keys")?;
    if keys < 2 {
        return Err(CliError::BadParam {
            name: "keys".into(),
            value: keys.to_string(),
            reason: "need at least 2 keys".into(),
        });
    }
    let bound = 2f64.powi(2 - r_bits as i32);
    let d = 1usize << (m + r_bits);
    let lift = Type2Lift::new(Arc::new(PrpScheme::new(m, r_bits)));
    let entries = [(0, 0), (0, 1), (1, 0), (0, 1 << r_bits), (d - 1, d - 2), (d / 2, d / 2 + 1)];
    let mut checks = Checks::default();
    for (arm, index) in [(0u64, 0), (1, (1 << m) - 1)] {
        let rho = hadamard_state(m, index)?;
        let closed = avg_perm_channel(&rho, r_bits)?;
        let td = trace_distance(&closed, &maximally_mixed(m + r_bits)?)?;
        checks.track_max("trace_distance", td);
        checks.check(td <= bound);
        let sampled = sampled_entries(&lift, &rho, &entries, keys, derive_seed(ctx.seed, 1 << 32 | arm))?;
        for (parts, &(a, b)) in sampled.iter().zip(&entries) {
            let want = closed.matrix()[(a, b)];
            for ((mean, se), target) in parts.iter().zip([want.re, want.im]) {
                let dev = (mean - target).abs();
                if *se > 0.0 {
                    checks.track_max("mc_max_z", dev / se);
                    checks.check(dev <= 3.0 * se);
                } else {
                    checks.check(dev <= EXACT_TOL);
                }
            }
        }
    }
    let adv = hadamard_distinguisher(m);
    let r = estimate(ctx, "qind", |s| game_qind(&lift, QindGrant::Plain, &adv, s))?;
    let limit = bound + 3.0 * r.null_sigma();
    let mut metrics = checks.metrics.clone();
    let battery_ok = checks.passed == checks.total;
    metrics.insert("bound".into(), bound);
    metrics.insert("advantage_limit".into(), limit);
    metrics.insert("checks_passed".into(), checks.passed as f64);
    metrics.insert("checks".into(), checks.total as f64);
    Ok(Outcome {
        pass: battery_ok && r.advantage <= limit,
        metrics,
        ..all_win("qind", r)
    })
}

fn qotp_by_enumeration(rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    let n = targets.len();
    let keys = 1usize << (2 * n);
    let parts = (0..keys)
        .map(|k| {
            let key: Vec<bool> = (0..2 * n).map(|i| k >> i & 1 == 1).collect();
            Ok((1.0 / keys as f64, qotp_apply_on(&key, rho, targets)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityMatrix::mixture(&parts)?)
}

fn qotp_secrecy(ctx: &RunContext) -> Result<Outcome> {
    let max_n = ctx.ranged("max_n", 1, 3)?;
    let states = ctx.trials;
    let mut rng = rng_for(ctx.seed, stream::ADVERSARY);
    let mut checks = Checks::default();
    for n in 1..=max_n {
        let msg: Vec<usize> = (0..n).collect();
        let mixed = maximally_mixed(n)?;
        for _ in 0..states {
            let rho = StateVector::random(n, &mut rng)?.to_density();
            let avg = qotp_by_enumeration(&rho, &msg)?;
            let diff = avg.max_entry_diff(&mixed)?;
            checks.track_max("max_entry_diff", diff);
            checks.check(diff <= EXACT_TOL);
            checks.check(avg.max_entry_diff(&qotp_average(&rho, &msg)?)? <= EXACT_TOL);

            // Purification: environment first, message second.
            let joint = StateVector::random(2 * n, &mut rng)?.to_density();
            let targets: Vec<usize> = (n..2 * n).collect();
            let avg = qotp_by_enumeration(&joint, &targets)?;
            let reduced = partial_trace(&avg, &targets)?;
            let diff = reduced.max_entry_diff(&mixed)?;
            checks.track_max("max_entry_diff", diff);
            checks.check(diff <= EXACT_TOL);
            let env = partial_trace(&joint, &msg)?;
            checks.check(avg.max_entry_diff(&env.tensor(&mixed)?)? <= EXACT_TOL);
        }
    }
    Ok(checks.outcome("qotp-average"))
}

fn table(keyed: &dyn KeyedSkes, in_bits: usize, r: Option<&BitString>, f: fn(&dyn KeyedSkes, &BitString, Option<&BitString>) -> qsec::Result<BitString>) -> Result<Vec<u64>> {
    (0..1u64 << in_bits)
        .map(|x| Ok(f(keyed, &BitString::from_u64(x, in_bits)?, r)?.to_u64()?))
        .collect()
}

fn type_conversion(ctx: &RunContext) -> Result<Outcome> {
    let max_m = ctx.ranged("max_m", 1, 3)?;
    let r_bits = ctx.ranged("r_bits", 1, 3)?;
    let mut rng = rng_for(ctx.seed, stream::KEY);
    let mut checks = Checks::default();
    for m in 1..=max_m {
        let schemes: [Box<dyn Skes>; 3] = [
            Box::new(Otp { n: m }),
            Box::new(Goldreich { r_bits, ..Goldreich::new(m) }),
            Box::new(PrpScheme::new(m, r_bits)),
        ];
        for scheme in &schemes {
            let keyed = scheme.load(&scheme.keygen(&mut rng))?;
            let c = keyed.core_bits().ok_or_else(|| CliError::Config(format!("{} has no core", scheme.name())))?;
            let r = (keyed.rand_bits() > 0).then(|| BitString::random(keyed.rand_bits(), &mut rng));
            let perm = keyed.type2_permutation(r.as_ref())?;
            let enc2 = PermutationOp::new(perm.clone());
            let enc_table = table(keyed.as_ref(), m, r.as_ref(), |k, x, r| k.core_eval(x, r))?;
            let dec_table = table(keyed.as_ref(), c, r.as_ref(), |k, y, r| k.core_invert(y, r))?;

            let t1 = type1_from_type2(&enc2, &enc2.adjoint(), m)?;
            let ancilla: Vec<usize> = (m + c..m + 2 * c).collect();
            let diff = restrict_to_zero_ancilla(&t1, &ancilla)?.max_entry_diff(&type1_oracle(&enc_table, m, c)?)?;
            checks.track_max("max_entry_diff", diff);
            checks.check(diff <= 1e-8);

            let t2 = type2_from_type1(&type1_permutation(&enc_table, m, c)?, &type1_permutation(&dec_table, c, m)?, m, c)?;
            let cols = zero_ancilla_columns(&t2, &(c..2 * c).collect::<Vec<_>>())?;
            let direct = type2_oracle(&perm)?;
            let u = direct.matrix();
            let mut diff = 0.0f64;
            for x in 0..1usize << m {
                let j = x << (c - m);
                let Some(out) = cols[j] else {
                    diff = f64::INFINITY;
                    break;
                };
                for i in 0..u.nrows() {
                    let e = if i == out { 1.0 } else { 0.0 };
                    diff = diff.max((u[(i, j)].re - e).abs()).max(u[(i, j)].im.abs());
                }
            }
            checks.track_max("max_entry_diff", diff);
            checks.check(diff <= 1e-8);
        }
    }
    Ok(checks.outcome("type-conversion"))
}

fn ind_attack(
    ctx: &RunContext,
    scheme: &dyn Skes,
    grant: Grant,
    adv: &dyn IndAdversary,
) -> Result<ExperimentResult> {
    estimate(ctx, &format!("ind-{}", grant.name()), |s| game_ind(scheme, grant, adv, s))
}

fn game_name(grant: Grant) -> String {
    format!("ind-{}", grant.name())
}

fn otp_reuse_separation(ctx: &RunContext) -> Result<Outcome> {
    let r = ind_attack(ctx, &Otp { n: ctx.ranged("n", 1, 64)? }, Grant::Cpa, &OtpReuse)?;
    Ok(all_win(&game_name(Grant::Cpa), r))
}

fn otp_reuse_null(ctx: &RunContext) -> Result<Outcome> {
    let r = ind_attack(ctx, &Goldreich::new(ctx.ranged("n", 1, 64)?), Grant::Cpa, &OtpReuse)?;
    Ok(within_null(&game_name(Grant::Cpa), r))
}

fn cca1_separation(ctx: &RunContext) -> Result<Outcome> {
    let r = ind_attack(ctx, &Cca1Sep::new(ctx.ranged("n", 2, 62)?), Grant::Cca1, &Cca1Counterexample)?;
    Ok(all_win(&game_name(Grant::Cca1), r))
}

fn cca1_null(ctx: &RunContext) -> Result<Outcome> {
    let r = ind_attack(ctx, &Goldreich::new(ctx.ranged("n", 2, 64)?), Grant::Cca1, &Cca1Counterexample)?;
    Ok(within_null(&game_name(Grant::Cca1), r))
}

fn cca2_separation(ctx: &RunContext) -> Result<Outcome> {
    let r = ind_attack(ctx, &Goldreich::new(ctx.ranged("n", 1, 64)?), Grant::Cca2, &Cca2Flip)?;
    Ok(all_win(&game_name(Grant::Cca2), r))
}

fn cca2_null(ctx: &RunContext) -> Result<Outcome> {
    let m = ctx.ranged("m", 1, 13)?;
    let r_bits = ctx.ranged("r_bits", 1, 14 - m)?;
    let r = ind_attack(ctx, &PrpScheme::new(m, r_bits), Grant::Cca2, &Cca2Flip)?;
    Ok(within_null(&game_name(Grant::Cca2), r))
}

fn bm_attack(ctx: &RunContext) -> Result<(BmOramAttack, ApConfig, LeafPrng)> {
    let k = ctx.ranged("k", 2, 64)?;
    let n_db = ctx.ranged("n_db", 2, 1 << 12)?;
    let p: u64 = ctx.get("p")?;
    let g: u64 = ctx.get("g")?;
    let weak = LeafPrng::BlumMicali { p, g };
    Ok((BmOramAttack::new(k, n_db, p, g), ApConfig::new(weak, k, 1), weak))
}

fn bm_oram_separation(ctx: &RunContext) -> Result<Outcome> {
    let (attack, config, _) = bm_attack(ctx)?;
    let r = estimate(ctx, "ap-ind-cqa", |s| game_ap_ind_cqa(&config, &attack, s))?;
    Ok(at_least("ap-ind-cqa", r, 0.95))
}

fn bm_oram_null(ctx: &RunContext) -> Result<Outcome> {
    let (attack, weak, _) = bm_attack(ctx)?;
    let config = ApConfig {
        prng: LeafPrng::Secure,
        ..weak
    };
    let r = estimate(ctx, "ap-ind-cqa", |s| game_ap_ind_cqa(&config, &attack, s))?;
    Ok(within_null("ap-ind-cqa", r))
}

fn leaf_prng(ctx: &RunContext) -> Result<LeafPrng> {
    match ctx.str("prng") {
        "secure" => Ok(LeafPrng::Secure),
        "bm" => Ok(LeafPrng::BlumMicali { p: 65537, g: 3 }),
        other => Err(CliError::BadParam {
            name: "prng".into(),
            value: other.into(),
            reason: "expected secure or bm".into(),
        }),
    }
}

fn oram_soundness(ctx: &RunContext) -> Result<Outcome> {
    let params = OramParams::new(ctx.ranged("n_db", 1, 1 << 12)?, leaf_prng(ctx)?);
    let (mut client, mut server) = oram_init(&params, ctx.seed)?;
    let mut rng = rng_for(ctx.seed, stream::ADVERSARY);
    let requests: Vec<DataRequest> = (0..ctx.trials)
        .map(|_| {
            let id = rng.gen_range(1..=params.n_db);
            if rng.gen() {
                DataRequest::write(id, BitString::random(params.n_dat, &mut rng))
            } else {
                DataRequest::read(id)
            }
        })
        .collect();
    let trace = run_trace(&mut client, &mut server, &requests);
    let report = check_minimal_soundness(&trace, params.n_dat);
    let bad = (report.violations.len() as u64).min(ctx.trials);
    let mut metrics = BTreeMap::new();
    metrics.insert("violations".into(), report.violations.len() as f64);
    metrics.insert(
        "max_stash".into(),
        client.stash_log().iter().copied().max().unwrap_or(0) as f64,
    );
    Ok(Outcome {
        game: "minimal-soundness".into(),
        trials: ctx.trials,
        successes: ctx.trials - bad,
        pass: report.is_sound() && report.accesses as u64 == ctx.trials,
        metrics,
    })
}

fn qoram_fidelity(ctx: &RunContext) -> Result<Outcome> {
    let max_n_dat = ctx.ranged("max_n_dat", 1, 3)?;
    let n_db = ctx.ranged("n_db", 1, 4)?;
    let mut rng = rng_for(ctx.seed, stream::ADVERSARY);
    let mut checks = Checks::default();
    for n_dat in 1..=max_n_dat {
        let (mut client, mut server) = qoram_init(&QoramParams::new(n_db, n_dat), derive_seed(ctx.seed, n_dat as u64))?;
        for _ in 0..ctx.trials {
            let id = rng.gen_range(1..=n_db);
            let phi = StateVector::random(n_dat, &mut rng)?;
            qoram_access(&mut client, &mut server, &QuantumDataRequest::write(id, phi.to_density()))?;
            let (got, _) = qoram_access(&mut client, &mut server, &QuantumDataRequest::read(id))?;
            let err = (got.fidelity_with_pure(&phi)? - 1.0).abs();
            checks.track_max("max_fidelity_error", err);
            checks.check(err <= EXACT_TOL);
        }
    }
    Ok(checks.outcome("write-then-read"))
}

fn qap_tag_only(ctx: &RunContext) -> Result<Outcome> {
    let adv = TagOnly {
        n_dat: ctx.ranged("n_dat", 1, 3)?,
    };
    let r = estimate(ctx, "qap-ind-cqa", |s| game_qap_ind_cqa(LeafPrng::Secure, 2, 0, &adv, s))?;
    Ok(within_null("qap-ind-cqa", r))
}

fn qap_payload_only(ctx: &RunContext) -> Result<Outcome> {
    let adv = PayloadOnly {
        n_dat: ctx.ranged("n_dat", 1, 3)?,
    };
    let r = estimate(ctx, "qap-ind-cqa", |s| game_qap_ind_cqa(LeafPrng::Secure, 1, 0, &adv, s))?;
    Ok(within_null("qap-ind-cqa", r))
}

fn qcpa_superposition_null(ctx: &RunContext) -> Result<Outcome> {
    let scheme = Goldreich {
        r_bits: ctx.ranged("r_bits", 1, 8)?,
        ..Goldreich::new(ctx.ranged("m", 1, 2)?)
    };
    let r = estimate(ctx, "ind-qcpa", |s| game_ind_qcpa(&scheme, &HadamardQuery, s))?;
    Ok(within_null("ind-qcpa", r))
}

fn fiat_shamir_suite(ctx: &RunContext) -> Result<Outcome> {
    let large = Group::LARGE;
    let n = ctx.trials;
    let mut rng = rng_for(ctx.seed, stream::ADVERSARY);
    let mut checks = Checks::default();
    let mut oracle = RandomOracleTable::uniform(large.q, derive_seed(ctx.seed, 0));
    for i in 0..n {
        let inst = inst_gen(large, derive_seed(ctx.seed, i))?;
        let (a, ch) = (rng.gen_range(0..large.q), rng.gen_range(0..large.q));
        let t = schnorr_transcript(&inst, a, ch)?;
        checks.check(schnorr_verify(&large, inst.x, &t));

        let m = i.to_be_bytes();
        let s = fs_sign(&inst, &m, &mut oracle, &mut rng)?;
        checks.check(fs_verify(&large, inst.x, &m, &s, &mut oracle)?);
        let l = fs_lambda_sign(&inst, &m, &mut oracle, &mut rng)?;
        checks.check(fs_lambda_verify(&large, inst.x, &m, &l, &mut oracle)?);

        let ch2 = (ch + rng.gen_range(1..large.q)) % large.q;
        let w = special_soundness_extract(&large, inst.x, &t, &schnorr_transcript(&inst, a, ch2)?)?;
        checks.check(large.pow(w) == inst.x);
    }
    let toy = Group::TOY;
    for w in 0..toy.q {
        let inst = HardInstance::from_witness(toy, w)?;
        checks.check(honest_transcript_distribution(&inst)? == simulated_transcript_distribution(&toy, inst.x)?);
    }
    for form in [FsForm::Sigma, FsForm::Lambda] {
        let scheme = FsSchnorr { group: large, form };
        for i in 0..n {
            let s = derive_seed(ctx.seed, n + i);
            checks.check(!game_euf_cma(&scheme, &ReplayForger, EufConfig::default(), s)?);
            checks.check(!game_euf_cma(&scheme, &RandomForger, EufConfig::default(), s)?);
        }
    }
    let inputs = 10_000u32;
    for (delta, name) in [(0.0, "pinned_fraction_0"), (0.25, "pinned_fraction_0.25"), (1.0, "pinned_fraction_1")] {
        let mut o = semi_constant_oracle(large.q, delta, 7, derive_seed(ctx.seed, 2 * n + (delta * 4.0) as u64))?;
        let pinned = (0..inputs).filter(|x| o.query_detailed(&x.to_be_bytes()).1).count() as f64 / inputs as f64;
        let sigma = (delta * (1.0 - delta) / inputs as f64).sqrt();
        checks.metrics.insert(name.into(), pinned);
        checks.check((pinned - delta).abs() <= 3.0 * sigma);
    }
    Ok(checks.outcome("fiat-shamir"))
}

fn fair_coin_calibration(ctx: &RunContext) -> Result<Outcome> {
    let r = estimate(ctx, "fair-coin", |s| Ok(rng_for(s, stream::ADVERSARY).gen::<bool>() == challenge_bit(s)))?;
    let mut out = within_null("fair-coin", r);
    out.metrics.insert("null_sigma".into(), null_sigma(ctx.trials));
    Ok(out)
}

const NO_PARAMS: &[ParamSpec] = &[];

const BM_PARAMS: &[ParamSpec] = &[
    ParamSpec {
        name: "p",
        default: "65537",
        doc: "Blum-Micali prime modulus",
    },
    ParamSpec {
        name: "g",
        default: "3",
        doc: "generator of Z_p^*",
    },
    ParamSpec {
        name: "k",
        default: "16",
        doc: "writes observed before the challenge",
    },
    ParamSpec {
        name: "n_db",
        default: "16",
        doc: "database size",
    },
];

static CATALOG: [Experiment; 19] = [
    Experiment {
        name: "hadamard-impossibility",
        description: "Hadamard distinguisher against the in-place lift of a quasi-length-preserving scheme",
        construction: "qIND impossibility for quasi-length-preserving core functions",
        default_trials: Some(100),
        params: &[
            ParamSpec {
                name: "m",
                default: "2",
                doc: "message qubits",
            },
            ParamSpec {
                name: "scheme",
                default: "goldreich",
                doc: "otp or goldreich",
            },
            ParamSpec {
                name: "r_bits",
                default: "2",
                doc: "goldreich randomness width (carried classically)",
            },
        ],
        run: hadamard_impossibility,
    },
    Experiment {
        name: "qind-construction-bound",
        description: "Averaged-permutation ciphertext against the maximally mixed state, with key sampling and the Hadamard distinguisher",
        construction: "ideal-permutation scheme P_k(x || r) and its permutation-channel bound",
        default_trials: Some(1000),
        params: &[
            ParamSpec {
                name: "m",
                default: "2",
                doc: "message qubits",
            },
            ParamSpec {
                name: "r",
                default: "3",
                doc: "randomness qubits",
            },
            ParamSpec {
                name: "keys",
                default: "1000",
                doc: "keys sampled for the Monte-Carlo cross-check",
            },
        ],
        run: qind_construction_bound,
    },
    Experiment {
        name: "qotp-secrecy",
        description: "Average of the quantum one-time pad over all keys, on plain and purified inputs",
        construction: "quantum one-time pad",
        default_trials: Some(10),
        params: &[ParamSpec {
            name: "max_n",
            default: "2",
            doc: "largest message width; all widths from 1 are checked",
        }],
        run: qotp_secrecy,
    },
    Experiment {
        name: "type-conversion",
        description: "Type-(1)/(2) conversion circuits against directly built oracles, exhaustively",
        construction: "type-(1)/(2) oracle equivalence",
        default_trials: None,
        params: &[
            ParamSpec {
                name: "max_m",
                default: "3",
                doc: "largest message width",
            },
            ParamSpec {
                name: "r_bits",
                default: "2",
                doc: "randomness width of the randomized schemes",
            },
        ],
        run: type_conversion,
    },
    Experiment {
        name: "otp-reuse-separation",
        description: "Encryption-oracle replay against the one-time pad",
        construction: "IND does not imply IND-CPA",
        default_trials: Some(200),
        params: &[ParamSpec {
            name: "n",
            default: "8",
            doc: "message width",
        }],
        run: otp_reuse_separation,
    },
    Experiment {
        name: "otp-reuse-null",
        description: "Encryption-oracle replay against the Goldreich scheme",
        construction: "Goldreich PRF scheme (y, r), y = x xor F_k(r)",
        default_trials: Some(1000),
        params: &[ParamSpec {
            name: "n",
            default: "16",
            doc: "message, key and randomness width",
        }],
        run: otp_reuse_null,
    },
    Experiment {
        name: "cca1-separation",
        description: "Swapped-halves key recovery against the hidden-message scheme",
        construction: "IND-CPA does not imply IND-CCA1",
        default_trials: Some(200),
        params: &[ParamSpec {
            name: "n",
            default: "6",
            doc: "message width",
        }],
        run: cca1_separation,
    },
    Experiment {
        name: "cca1-null",
        description: "The CCA1 counterexample attack against the unmodified Goldreich scheme",
        construction: "Goldreich PRF scheme (y, r), y = x xor F_k(r)",
        default_trials: Some(1000),
        params: &[ParamSpec {
            name: "n",
            default: "16",
            doc: "message, key and randomness width",
        }],
        run: cca1_null,
    },
    Experiment {
        name: "cca2-separation",
        description: "Payload flip through the restricted decryption oracle",
        construction: "IND-CCA1 does not imply IND-CCA2",
        default_trials: Some(200),
        params: &[ParamSpec {
            name: "n",
            default: "8",
            doc: "message width",
        }],
        run: cca2_separation,
    },
    Experiment {
        name: "cca2-null",
        description: "Payload flip against the ideal-permutation scheme",
        construction: "ideal-permutation scheme P_k(x || r)",
        default_trials: Some(1000),
        params: &[
            ParamSpec {
                name: "m",
                default: "8",
                doc: "message width",
            },
            ParamSpec {
                name: "r_bits",
                default: "6",
                doc: "randomness width",
            },
        ],
        run: cca2_null,
    },
    Experiment {
        name: "bm-oram-separation",
        description: "Blum-Micali state recovery and leaf prediction against PathORAM",
        construction: "PathORAM with Blum-Micali leaves is not AP-IND-CQA secure",
        default_trials: Some(200),
        params: BM_PARAMS,
        run: bm_oram_separation,
    },
    Experiment {
        name: "bm-oram-null",
        description: "The Blum-Micali attack against PathORAM with PRF leaves",
        construction: "PathORAM instantiated with a secure PRNG",
        default_trials: Some(1000),
        params: BM_PARAMS,
        run: bm_oram_null,
    },
    Experiment {
        name: "oram-soundness",
        description: "Random classical accesses checked for minimal soundness and path locality",
        construction: "PathORAM minimal soundness",
        default_trials: Some(10_000),
        params: &[
            ParamSpec {
                name: "n_db",
                default: "16",
                doc: "database size",
            },
            ParamSpec {
                name: "prng",
                default: "secure",
                doc: "leaf generator: secure or bm",
            },
        ],
        run: oram_soundness,
    },
    Experiment {
        name: "qoram-fidelity",
        description: "Write-then-read fidelity of PathQORAM on random payload states",
        construction: "PathQORAM",
        default_trials: Some(100),
        params: &[
            ParamSpec {
                name: "max_n_dat",
                default: "2",
                doc: "largest payload width; all widths from 1 are checked",
            },
            ParamSpec {
                name: "n_db",
                default: "2",
                doc: "database size",
            },
        ],
        run: qoram_fidelity,
    },
    Experiment {
        name: "qap-tag-only-null",
        description: "Leaf-repetition distinguisher against PathQORAM",
        construction: "PathQORAM QAP-IND-CQA",
        default_trials: Some(500),
        params: &[ParamSpec {
            name: "n_dat",
            default: "1",
            doc: "payload qubits",
        }],
        run: qap_tag_only,
    },
    Experiment {
        name: "qap-payload-only-null",
        description: "Ciphertext-digest distinguisher against PathQORAM",
        construction: "PathQORAM QAP-IND-CQA",
        default_trials: Some(500),
        params: &[ParamSpec {
            name: "n_dat",
            default: "1",
            doc: "payload qubits",
        }],
        run: qap_payload_only,
    },
    Experiment {
        name: "qcpa-superposition-null",
        description: "One uniform-superposition encryption query against the Goldreich scheme",
        construction: "IND-qCPA game with type-(1) oracle access",
        default_trials: Some(500),
        params: &[
            ParamSpec {
                name: "m",
                default: "2",
                doc: "message width",
            },
            ParamSpec {
                name: "r_bits",
                default: "8",
                doc: "randomness width",
            },
        ],
        run: qcpa_superposition_null,
    },
    Experiment {
        name: "fiat-shamir-suite",
        description: "Schnorr completeness, extraction, HVZK, both signature forms, trivial forgers, semi-constant oracles",
        construction: "Schnorr identification and its Fiat-Shamir signatures",
        default_trials: Some(1000),
        params: NO_PARAMS,
        run: fiat_shamir_suite,
    },
    Experiment {
        name: "fair-coin-calibration",
        description: "A guess independent of the challenge bit; the harness must report no advantage",
        construction: "harness calibration",
        default_trials: Some(10_000),
        params: NO_PARAMS,
        run: fair_coin_calibration,
    },
];

pub fn catalog() -> &'static [Experiment] {
    &CATALOG
}
