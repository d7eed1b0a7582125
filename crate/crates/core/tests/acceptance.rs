//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fail.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qm_core::cover::{build_chart, extract_essentials};
use qm_core::io::{
    emit_expression, emit_json, emit_pla, parse_minterm_spec, parse_pla, VariableNaming,
};
use qm_core::oracle::{check_equivalence, exhaustive_min_cover_size, naive_primes};
use qm_core::primes::{generate_primes, group_by_ones, reduction_pass};
use qm_core::{minimize, Cover, Implicant, ProblemSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE: &str = "vars=4; minterms=0,1,3,4,5,6,7,9,11,12,13,14; dontcares=0,1,3,7";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn strings<'a>(it: impl IntoIterator<Item = &'a Implicant>) -> Vec<String> {
    it.into_iter().map(Implicant::to_string).collect()
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

fn example() -> ProblemSpec {
    parse_minterm_spec(EXAMPLE, false).unwrap()
}

fn c1_example_golden() -> Outcome {
    let start = Instant::now();
    let report = minimize(&example()).map_err(|e| e.to_string())?;
    let expr =
        emit_expression(&report.cover, VariableNaming::Letters).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let cover = strings(report.cover.implicants());
    ensure(cover == ["X0X1", "X1X0", "XX01"], || {
        format!("cover {cover:?}")
    })?;
    ensure(expr == "B'D + BD' + C'D", || format!("expression {expr}"))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{expr} in {elapsed:?}"))
}

fn c2_example_tables() -> Outcome {
    let p = example();
    let mut c0 = group_by_ones(&p);
    let mut c1 = reduction_pass(&mut c0).ok_or("no column 1")?;
    let col1 = strings(c1.terms().map(|t| &t.implicant));
    let column1 = [
        "000X", "0X00", "00X1", "0X01", "X001", "010X", "01X0", "X100", "0X11", "X011", "01X1",
        "X101", "011X", "X110", "10X1", "1X01", "110X", "11X0",
    ];
    ensure(col1 == column1, || format!("column 1 {col1:?}"))?;
    let c2 = reduction_pass(&mut c1).ok_or("no column 2")?;
    let col2 = sorted(strings(c2.terms().map(|t| &t.implicant)));
    let column2 = ["01XX", "0X0X", "0XX1", "X0X1", "X10X", "X1X0", "XX01"];
    ensure(col2 == column2, || format!("column 2 {col2:?}"))?;
    let primes = generate_primes(&p).map_err(|e| e.to_string())?;
    let pis = sorted(strings(primes.iter()));
    ensure(pis == column2, || format!("primes {pis:?}"))?;
    let chart = build_chart(&primes, &p);
    let counts: Vec<(u64, usize)> = chart
        .columns()
        .iter()
        .copied()
        .zip(chart.coverage_count().iter().copied())
        .collect();
    let expected_counts = [
        (4, 4),
        (5, 5),
        (6, 2),
        (9, 2),
        (11, 1),
        (12, 2),
        (13, 2),
        (14, 1),
    ];
    ensure(counts == expected_counts, || format!("counts {counts:?}"))?;
    let (ess, _) = extract_essentials(&chart);
    let ess = strings(&ess);
    ensure(ess == ["X0X1", "X1X0"], || format!("essentials {ess:?}"))?;
    Ok("columns, primes, counts and essentials match".into())
}

/// The three oracle checks for one problem.
fn oracle_checks(p: &ProblemSpec) -> Result<(), String> {
    if !(p.onset().is_empty() && p.dontcare().is_empty()) {
        let fast = generate_primes(p).map_err(|e| e.to_string())?;
        let slow = naive_primes(p).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("prime sets differ for {p:?}"))?;
    }
    let report = minimize(p).map_err(|e| e.to_string())?;
    let verdict = check_equivalence(&report.cover, p).map_err(|e| e.to_string())?;
    ensure(verdict.ok(), || {
        format!("not equivalent for {p:?}: {:?}", verdict.violations)
    })?;
    let min = exhaustive_min_cover_size(p).map_err(|e| e.to_string())?;
    ensure(report.cover.len() == min, || {
        format!(
            "cover size {} vs minimum {min} for {p:?}",
            report.cover.len()
        )
    })
}

fn c3_exhaustive_small() -> Outcome {
    let start = Instant::now();
    let mut cases = 0u64;
    for n in 1..=3u32 {
        for mut code in 0..3u64.pow(1 << n) {
            let (mut on, mut dc) = (Vec::new(), Vec::new());
            for m in 0..1u64 << n {
                match code % 3 {
                    1 => on.push(m),
                    2 => dc.push(m),
                    _ => {}
                }
                code /= 3;
            }
            oracle_checks(&ProblemSpec::new(n, on, dc).unwrap())?;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(cases == 9 + 81 + 6561, || format!("{cases} cases"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{cases} cases in {elapsed:?}"))
}

fn c4_randomized() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let trials = 10_000;
    for i in 0..trials {
        let n = 4 + (i % 3) as u32;
        let (mut on, mut dc) = (Vec::new(), Vec::new());
        for m in 0..1u64 << n {
            match rng.gen_range(0..3) {
                1 => on.push(m),
                2 => dc.push(m),
                _ => {}
            }
        }
        oracle_checks(&ProblemSpec::new(n, on, dc).unwrap())?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{trials} problems in {elapsed:?}"))
}

fn c5_cyclic() -> Outcome {
    let p = ProblemSpec::new(3, vec![1, 2, 3, 4, 5, 6], vec![]).unwrap();
    let report = minimize(&p).map_err(|e| e.to_string())?;
    ensure(report.essentials.is_empty(), || {
        format!("essentials {:?}", report.essentials)
    })?;
    ensure(report.reduced == report.chart, || {
        "reduced chart differs from chart".into()
    })?;
    ensure(
        report.chart.coverage_count().iter().all(|&k| k >= 2),
        || "chart is not cyclic".into(),
    )?;
    ensure(report.cover.len() == 3, || {
        format!("cover size {}", report.cover.len())
    })?;
    let min = exhaustive_min_cover_size(&p).map_err(|e| e.to_string())?;
    ensure(min == 3, || format!("oracle minimum {min}"))?;
    ensure(check_equivalence(&report.cover, &p).unwrap().ok(), || {
        "cover not equivalent".into()
    })?;
    Ok(format!("cover {:?}", strings(report.cover.implicants())))
}

fn c6_scalability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = Duration::ZERO;
    for trial in 0..20 {
        let onset: Vec<u64> = (0..1u64 << 10).filter(|_| rng.gen_bool(0.25)).collect();
        let p = ProblemSpec::new(10, onset, vec![]).unwrap();
        let start = Instant::now();
        let report = minimize(&p).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        ensure(elapsed < Duration::from_secs(10), || {
            format!("n=10 trial {trial} took {elapsed:?}")
        })?;
        ensure(check_equivalence(&report.cover, &p).unwrap().ok(), || {
            format!("n=10 trial {trial} not equivalent")
        })?;
    }
    let mut worst16 = Duration::ZERO;
    for trial in 0..20 {
        let mut onset: Vec<u64> = (0..64).map(|_| rng.gen_range(0..1u64 << 16)).collect();
        onset.sort_unstable();
        onset.dedup();
        let p = ProblemSpec::new(16, onset, vec![]).unwrap();
        let start = Instant::now();
        let primes = generate_primes(&p).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        worst16 = worst16.max(elapsed);
        ensure(!primes.is_empty(), || "no primes".into())?;
        ensure(elapsed < Duration::from_secs(10), || {
            format!("n=16 trial {trial} took {elapsed:?}")
        })?;
    }
    Ok(format!(
        "worst n=10 minimize {worst:?}, worst n=16 primes {worst16:?}"
    ))
}

fn c7_determinism() -> Outcome {
    let cyclic = ProblemSpec::new(3, vec![1, 2, 3, 4, 5, 6], vec![]).unwrap();
    for p in [example(), cyclic] {
        let first = emit_json(&minimize(&p).unwrap());
        for run in 1..5 {
            let again = emit_json(&minimize(&p).unwrap());
            ensure(again == first, || format!("run {run} differs for {p:?}"))?;
        }
    }
    Ok("5 runs byte-identical for both problems".into())
}

fn c8_pla_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..1000 {
        let n = rng.gen_range(1..=10u32);
        let mask = (1u64 << n) - 1;
        let terms = rng.gen_range(0..8);
        let imps: Vec<Implicant> = (0..terms)
            .map(|_| {
                let dashes = rng.gen_range(0..=mask) & rng.gen_range(0..=mask);
                Implicant::new(n, rng.gen_range(0..=mask) & !dashes, dashes).unwrap()
            })
            .collect();
        let cover = Cover::new(n, imps);
        let parsed = parse_pla(&emit_pla(&cover)).map_err(|e| e.to_string())?;
        ensure(
            parsed.onset() == cover.covered_minterms().as_slice(),
            || format!("cover {i} onset mismatch"),
        )?;
        ensure(parsed.vars() == n && parsed.dontcare().is_empty(), || {
            format!("cover {i} header")
        })?;
    }
    Ok("1000 covers recovered".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 worked example golden cover", c1_example_golden),
        ("2 worked example intermediate tables", c2_example_tables),
        ("3 exhaustive oracle equivalence n<=3", c3_exhaustive_small),
        ("4 randomized oracle equivalence n=4..6", c4_randomized),
        ("5 cyclic chart", c5_cyclic),
        ("6 scalability", c6_scalability),
        ("7 determinism", c7_determinism),
        ("8 PLA round trip", c8_pla_round_trip),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
