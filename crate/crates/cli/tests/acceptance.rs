//! Acceptance battery: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qsec_cli::{canonical_json, catalog, run_experiment, Report, RunConfig};

fn run(experiment: &str, trials: Option<u64>, params: &[(&str, &str)]) -> Result<Report, String> {
    run_experiment(&RunConfig {
        experiment: experiment.to_string(),
        trials,
        seed: None,
        params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
    })
    .map_err(|e| format!("{experiment}: {e}"))
}

/// Runs and requires the experiment's own predicate to hold.
fn passing(experiment: &str, trials: Option<u64>, params: &[(&str, &str)]) -> Result<Report, String> {
    let r = run(experiment, trials, params)?;
    if !r.pass {
        return Err(format!(
            "{experiment} {params:?} failed: {}/{} successes, advantage {:.4}, metrics {:?}",
            r.result.successes, r.result.trials, r.result.advantage, r.metrics
        ));
    }
    Ok(r)
}

fn c1() -> Result<String, String> {
    for scheme in ["otp", "goldreich"] {
        for m in 2..=6 {
            let m = m.to_string();
            let r = passing("hadamard-impossibility", Some(100), &[("scheme", scheme), ("m", &m)])?;
            if r.result.successes != 100 {
                return Err(format!("{scheme} m={m}: {}/100", r.result.successes));
            }
        }
    }
    Ok("100/100 for otp and goldreich, m = 2..6".into())
}

fn c2() -> Result<String, String> {
    let mut out = Vec::new();
    for r_bits in ["3", "4"] {
        let r = passing(
            "qind-construction-bound",
            Some(1000),
            &[("m", "2"), ("r", r_bits), ("keys", "1000")],
        )?;
        out.push(format!(
            "r={r_bits}: td {:.4} <= {}, adv {:.4}, max |z| {:.2}",
            r.metrics["trace_distance"], r.metrics["bound"], r.result.advantage, r.metrics["mc_max_z"]
        ));
    }
    Ok(out.join("; "))
}

fn c3() -> Result<String, String> {
    let r = passing("qotp-secrecy", Some(10), &[("max_n", "2")])?;
    Ok(format!("max entry diff {:.1e} over {} checks", r.metrics["max_entry_diff"], r.result.trials))
}

fn c4() -> Result<String, String> {
    let r = passing("type-conversion", None, &[("max_m", "3")])?;
    Ok(format!("max entry diff {:.1e} over {} oracles", r.metrics["max_entry_diff"], r.result.trials))
}

fn c5() -> Result<String, String> {
    let mut out = Vec::new();
    for (attack, target, null) in [
        ("otp-reuse", "otp-reuse-separation", "otp-reuse-null"),
        ("cca1", "cca1-separation", "cca1-null"),
        ("cca2", "cca2-separation", "cca2-null"),
    ] {
        let won = passing(target, Some(200), &[])?;
        let r = passing(null, Some(1000), &[])?;
        out.push(format!("{attack} {}/200, null adv {:+.4}", won.result.successes, r.result.advantage));
    }
    Ok(out.join("; "))
}

fn c6() -> Result<String, String> {
    let params = [("p", "65537"), ("g", "3"), ("k", "16"), ("n_db", "16")];
    let won = passing("bm-oram-separation", Some(200), &params)?;
    if won.result.successes < 190 {
        return Err(format!("{}/200 < 190", won.result.successes));
    }
    let r = passing("bm-oram-null", Some(1000), &params)?;
    Ok(format!("{}/200 wins, secure-prng adv {:+.4}", won.result.successes, r.result.advantage))
}

fn c7() -> Result<String, String> {
    let mut out = Vec::new();
    for prng in ["secure", "bm"] {
        let r = passing("oram-soundness", Some(10_000), &[("n_db", "16"), ("prng", prng)])?;
        out.push(format!("{prng}: {} violations", r.metrics["violations"]));
    }
    let r = passing("qoram-fidelity", Some(100), &[("max_n_dat", "2"), ("n_db", "2")])?;
    out.push(format!("qoram max |F-1| {:.1e}", r.metrics["max_fidelity_error"]));
    Ok(out.join("; "))
}

fn c8() -> Result<String, String> {
    let mut out = Vec::new();
    for n_dat in ["1", "2"] {
        for name in ["qap-tag-only-null", "qap-payload-only-null"] {
            let r = passing(name, Some(500), &[("n_dat", n_dat)])?;
            out.push(format!("{name} n_dat={n_dat} adv {:+.4}", r.result.advantage));
        }
    }
    Ok(out.join("; "))
}

fn c9() -> Result<String, String> {
    let r = passing("fiat-shamir-suite", Some(1000), &[])?;
    Ok(format!("{}/{} checks", r.result.successes, r.result.trials))
}

fn c10() -> Result<String, String> {
    for e in catalog() {
        let a = canonical_json(&run(e.name, None, &[])?).map_err(|e| e.to_string())?;
        let b = canonical_json(&run(e.name, None, &[])?).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{} differs between runs", e.name));
        }
    }
    Ok(format!("{} experiments reproduced byte for byte", catalog().len()))
}

type Criterion = (u32, &'static str, fn() -> Result<String, String>, Option<u64>);

const CRITERIA: [Criterion; 10] = [
    (1, "hadamard impossibility", c1, Some(5)),
    (2, "qind construction bound", c2, Some(30)),
    (3, "qotp secrecy", c3, Some(5)),
    (4, "type-(1)/(2) equivalence", c4, Some(5)),
    (5, "classical separations", c5, Some(20)),
    (6, "pathoram separation", c6, Some(60)),
    (7, "oram and qoram soundness", c7, Some(60)),
    (8, "qap null battery", c8, Some(60)),
    (9, "fiat-shamir suite", c9, Some(10)),
    (10, "determinism", c10, None),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (n, name, check, limit) in CRITERIA {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = limit.is_none_or(|s| elapsed < Duration::from_secs(s));
        let limit = limit.map_or("no limit".to_string(), |s| format!("limit {s} s"));
        let (status, detail) = match (&result, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        failed += (status == "FAIL") as u32;
        println!(
            "criterion {n} {name}: {status} ({detail}; {:.2} s, {limit})",
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
