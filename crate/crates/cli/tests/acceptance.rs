//! Acceptance gate: every criterion runs at its stated bound and prints one
//! PASS/FAIL line. The process exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qeuler::identities::{IdentityChecker, IdentityId, SuiteConfig};
use qeuler::padic::{self, IntegrandSpec, PadicContext, Valuation};
use qeuler::qcore::{self, BernsteinIndex, QEulerTable};
use qeuler::{BigRational, RationalFunction};

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn definitions_agree() -> Check {
    let table = QEulerTable::new();
    for n in 0..=20 {
        let rec = qcore::q_euler_number(n, &table);
        let closed = qcore::q_euler_number_closed(n);
        ensure(rec == closed, || format!("n={n}: recurrence and closed form differ"))?;
    }
    Ok("n = 0..=20".into())
}

fn classical_limit() -> Check {
    let table = QEulerTable::new();
    let classical = qcore::classical_euler_table(20);
    ensure(classical[..4] == [rat(1, 1), rat(-1, 2), rat(0, 1), rat(1, 4)], || {
        "E_0..E_3 oracle mismatch".into()
    })?;
    for (n, e) in classical.iter().enumerate() {
        let at_one = table.get(n).eval(&rat(1, 1)).map_err(|e| e.to_string())?;
        ensure(&at_one == e, || format!("n={n}: xi(1) = {at_one}, E_n = {e}"))?;
    }
    Ok("n = 0..=20".into())
}

fn identity_suite() -> Check {
    let result = IdentityChecker::new().run_suite(&SuiteConfig::default());
    ensure(result.skipped.is_empty(), || {
        format!("{} skipped grid points", result.skipped.len())
    })?;
    let required = [
        IdentityId::T1,
        IdentityId::P2,
        IdentityId::P3,
        IdentityId::C4,
        IdentityId::T5,
        IdentityId::T6,
        IdentityId::C7,
        IdentityId::T8,
        IdentityId::E19,
        IdentityId::E18v20,
        IdentityId::E21v23,
    ];
    let mut total = 0;
    for id in required {
        let reports: Vec<_> = result.of(id).collect();
        ensure(!reports.is_empty(), || format!("{id}: no reports"))?;
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            return Err(format!("{id} {}: residual {}", bad.params, bad.residual));
        }
        total += reports.len();
    }
    Ok(format!("{total} reports, residual 0"))
}

fn s_fold() -> Check {
    let config = SuiteConfig {
        only: Some(IdentityId::T9),
        ..SuiteConfig::default()
    };
    let checker = IdentityChecker::new();
    let result = checker.run_suite(&config);
    // Independent count of (list, k) with s <= 3, n_i <= 4, k <= 2 and sum > s*k.
    let mut expected = 0;
    for s in 1..=3u32 {
        for code in 0..5usize.pow(s) {
            let sum: usize = (0..s).map(|i| code / 5usize.pow(i) % 5).sum();
            expected += (0..=2).filter(|k| sum > s as usize * k).count();
        }
    }
    ensure(result.reports.len() == expected, || {
        format!("{} reports, expected {expected}", result.reports.len())
    })?;
    if let Some(bad) = result.reports.iter().find(|r| !r.passed()) {
        return Err(format!("T9 {}: residual {}", bad.params, bad.residual));
    }
    let mut reproduced = 0;
    for r in &result.reports {
        let list = r.params.n_list.as_ref().expect("T9 reports carry an n-list");
        let k = r.params.k.expect("T9 reports carry k");
        let other = match list.as_slice() {
            [n] if *n >= k => checker.check_bernstein_integral(*n, k),
            [n, m] => checker.check_bernstein_pair(*m, *n, k),
            _ => continue,
        }
        .map_err(|e| e.to_string())?;
        ensure(other.lhs == r.lhs && other.rhs == r.rhs && other.passed(), || {
            format!("{}: specialization differs from {}", r.params, other.id)
        })?;
        reproduced += 1;
    }
    Ok(format!(
        "{} reports, {reproduced} matched single/double factor forms",
        result.reports.len()
    ))
}

fn printed_forms() -> Check {
    let checker = IdentityChecker::new();
    for n in 1..=10 {
        let printed = checker.check_boundary_value_printed(n).map_err(|e| e.to_string())?;
        let corrected = checker.check_boundary_value(n).map_err(|e| e.to_string())?;
        ensure(!printed.holds && corrected.holds, || {
            format!("n={n}: printed/corrected boundary value")
        })?;
    }
    let lists: [&[usize]; 4] = [&[1], &[2, 3], &[1, 1, 1], &[4, 2, 3]];
    for list in lists {
        let printed = checker
            .check_bernstein_product_printed(list)
            .map_err(|e| e.to_string())?;
        let corrected = checker.check_bernstein_product(list, 0).map_err(|e| e.to_string())?;
        ensure(!printed.holds && corrected.holds, || {
            format!("{list:?}: printed/corrected k=0 form")
        })?;
    }
    Ok(format!("boundary n = 1..=10, k=0 form on {} lists", lists.len()))
}

fn partition_and_reflection() -> Check {
    for n in 0..=10 {
        for x in -3..=4 {
            let terms: Vec<RationalFunction> = (0..=n)
                .map(|k| qcore::bernstein(BernsteinIndex::new(k, n).expect("k <= n"), x))
                .collect();
            ensure(RationalFunction::sum_all(&terms).is_one(), || {
                format!("partition n={n} x={x}")
            })?;
            let (lhs, rhs) = qcore::reflect_power(n, x);
            ensure(lhs == rhs, || format!("reflection n={n} x={x}"))?;
        }
    }
    Ok("n = 0..=10, x = -3..=4".into())
}

fn padic_convergence() -> Check {
    let table = QEulerTable::new();
    let mut rows = 0;
    for (p, q0, max_n) in [(3u64, 4i64, 7u32), (5, 6, 5)] {
        let ctx = PadicContext::new(p, rat(q0, 1), max_n).map_err(|e| e.to_string())?;
        for n in 0..=5 {
            let spec = IntegrandSpec::power(n);
            let probe = padic::probe_convergence(&spec, &ctx, &table.get(n)).map_err(|e| e.to_string())?;
            ensure(probe.is_monotone() && probe.meets_level_bound(), || {
                format!("p={p} n={n}: valuations {:?}", probe.valuations())
            })?;
            rows += probe.partials.len();
        }
    }
    let ctx = PadicContext::new(3, rat(4, 1), 1).map_err(|e| e.to_string())?;
    let s1 = padic::truncated_integral(&IntegrandSpec::power(1), &ctx, 1).map_err(|e| e.to_string())?;
    ensure(s1 == rat(76, 13), || format!("S_1 = {s1}"))?;
    let xi1 = table.get(1).eval(&rat(4, 1)).map_err(|e| e.to_string())?;
    ensure(padic::padic_valuation(&(s1 - xi1), 3) == Valuation::Finite(1), || {
        "spot residual valuation".into()
    })?;
    Ok(format!("{rows} truncations, S_1 = 76/13"))
}

fn cli_determinism() -> Check {
    for case in common::GOLDEN_CASES {
        common::check_golden(case)?;
    }
    for (args, code) in common::EXIT_CASES {
        let got = common::exit_code(&common::run(args));
        ensure(got == *code, || format!("{args:?}: exit {got}, expected {code}"))?;
    }
    Ok(format!(
        "{} golden files, {} exit-code cases",
        common::GOLDEN_CASES.len(),
        common::EXIT_CASES.len()
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "definition consistency",
        limit: Duration::from_secs(10),
        run: definitions_agree,
    },
    Criterion {
        id: 2,
        name: "classical specialization",
        limit: Duration::from_secs(5),
        run: classical_limit,
    },
    Criterion {
        id: 3,
        name: "identity suite",
        limit: Duration::from_secs(60),
        run: identity_suite,
    },
    Criterion {
        id: 4,
        name: "s-fold generalization",
        limit: Duration::from_secs(60),
        run: s_fold,
    },
    Criterion {
        id: 5,
        name: "printed vs corrected forms",
        limit: Duration::from_secs(10),
        run: printed_forms,
    },
    Criterion {
        id: 6,
        name: "partition of unity and reflection",
        limit: Duration::from_secs(10),
        run: partition_and_reflection,
    },
    Criterion {
        id: 7,
        name: "p-adic convergence",
        limit: Duration::from_secs(120),
        run: padic_convergence,
    },
    Criterion {
        id: 8,
        name: "CLI determinism",
        limit: Duration::from_secs(10),
        run: cli_determinism,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; took longer than {:?}", c.limit)),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] {}. {} ({:.2}s / {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
