use std::collections::BTreeMap;
use std::fmt;

use qeuler::identities::{IdentityChecker, IdentityId, SuiteConfig};
use qeuler::padic::{self, Base, IntegrandSpec, PadicContext};
use qeuler::qcore::{self, BernsteinIndex, QEulerTable};
use qeuler::{BigRational, RationalFunction};
use serde_json::Value;

use crate::args::{ComputeKind, ConvergenceArgs, IntegrandArgs, TableArgs, VerifyArgs};
use crate::output::{csv, OutputRecord, Payload, ProbeRow, TableRow};

/// Process exit codes.
pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<qeuler::Error> for Failure {
    fn from(e: qeuler::Error) -> Self {
        let code = match e {
            qeuler::Error::UnsupportedSpec(_) => EXIT_UNSUPPORTED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a successful run prints, and whether it should still exit non-zero.
pub struct Outcome {
    pub record: OutputRecord,
    pub csv: Option<String>,
    pub assertion_failure: Option<String>,
}

impl Outcome {
    fn ok(record: OutputRecord) -> Self {
        Outcome {
            record,
            csv: None,
            assertion_failure: None,
        }
    }
}

type Params = BTreeMap<String, Value>;

fn param(params: &mut Params, key: &str, value: impl Into<Value>) {
    params.insert(key.to_string(), value.into());
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Failure::usage(format!("cannot parse {s:?} as a rational number")))
}

fn parse_base(s: &str) -> Result<Base, Failure> {
    Ok(s.parse::<Base>()?)
}

fn function_payload(value: &RationalFunction, q0: Option<&BigRational>) -> Result<Payload, Failure> {
    let at_q0 = q0.map(|q| value.eval(q)).transpose()?.map(|v| v.to_string());
    Ok(Payload::RationalFunction {
        value: value.to_string(),
        at_q0,
    })
}

fn optional_q0(params: &mut Params, q0: &Option<String>) -> Result<Option<BigRational>, Failure> {
    match q0 {
        None => Ok(None),
        Some(s) => {
            let q = parse_rational(s)?;
            param(params, "q", q.to_string());
            Ok(Some(q))
        }
    }
}

pub fn integrand_spec(args: &IntegrandArgs, params: &mut Params) -> Result<IntegrandSpec, Failure> {
    let measure = parse_base(&args.measure)?;
    let spec = match (&args.power_n, &args.bernstein) {
        (Some(n), None) => {
            let base = parse_base(&args.base)?;
            IntegrandSpec::shifted_power(args.shift, *n, base, args.reflected, measure)
        }
        (None, Some(list)) => {
            let factors =
                list.split(',')
                    .map(|item| {
                        let (k, n) = item.trim().split_once(':').ok_or_else(|| {
                            Failure::usage(format!("Bernstein factor {item:?} is not of the form k:n"))
                        })?;
                        let k = k.trim().parse::<usize>();
                        let n = n.trim().parse::<usize>();
                        match (k, n) {
                            (Ok(k), Ok(n)) => Ok(BernsteinIndex::new(k, n)?),
                            _ => Err(Failure::usage(format!(
                                "Bernstein factor {item:?} is not of the form k:n"
                            ))),
                        }
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
            IntegrandSpec::bernstein_product(factors, measure)?
        }
        _ => return Err(Failure::usage("give exactly one of --power-n or --bernstein")),
    };
    param(params, "integrand", spec.to_string());
    Ok(spec)
}

pub fn compute(kind: &ComputeKind) -> Result<Outcome, Failure> {
    let mut params = Params::new();
    let table = QEulerTable::new();
    let (name, payload) = match kind {
        ComputeKind::EulerNumber { n, q0 } => {
            param(&mut params, "n", *n);
            let q = optional_q0(&mut params, q0)?;
            (
                "euler-number",
                function_payload(&qcore::q_euler_number(*n, &table), q.as_ref())?,
            )
        }
        ComputeKind::EulerPoly { n, x, q0 } => {
            param(&mut params, "n", *n);
            param(&mut params, "x", *x);
            let q = optional_q0(&mut params, q0)?;
            let v = qcore::q_euler_polynomial(*n, *x, &table);
            ("euler-poly", function_payload(&v, q.as_ref())?)
        }
        ComputeKind::Bernstein { k, n, x, q0 } => {
            param(&mut params, "k", *k);
            param(&mut params, "n", *n);
            param(&mut params, "x", *x);
            let q = optional_q0(&mut params, q0)?;
            let v = qcore::bernstein(BernsteinIndex::new(*k, *n)?, *x);
            ("bernstein", function_payload(&v, q.as_ref())?)
        }
        ComputeKind::ClassicalEuler { n } => {
            param(&mut params, "n", *n);
            let value = qcore::classical_euler(*n).to_string();
            ("classical-euler", Payload::Rational { value })
        }
        ComputeKind::IntegralClosedForm { integrand, q0 } => {
            let spec = integrand_spec(integrand, &mut params)?;
            let q = optional_q0(&mut params, q0)?;
            let v = padic::closed_form_of(&spec, &table)?;
            ("integral-closed-form", function_payload(&v, q.as_ref())?)
        }
    };
    Ok(Outcome::ok(OutputRecord::new(
        &format!("compute {name}"),
        params,
        payload,
    )))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let mut params = Params::new();
    let mut config = SuiteConfig::default();
    param(&mut params, "id", args.id.clone());
    config.only = match args.id.as_str() {
        "all" => None,
        id => Some(id.parse::<IdentityId>()?),
    };
    let mut set = |key: &str, slot: &mut usize, v: Option<usize>| {
        if let Some(v) = v {
            *slot = v;
        }
        param(&mut params, key, *slot);
    };
    set("nMax", &mut config.n_max, args.n_max);
    set("mMax", &mut config.m_max, args.m_max);
    set("kMax", &mut config.k_max, args.k_max);
    set("sMax", &mut config.s_max, args.s_max);
    set("t9NMax", &mut config.t9_n_max, args.t9_n_max);
    set("t9KMax", &mut config.t9_k_max, args.t9_k_max);
    config.x_min = args.x_min.unwrap_or(config.x_min);
    config.x_max = args.x_max.unwrap_or(config.x_max);
    if config.x_min > config.x_max {
        return Err(Failure::usage(format!(
            "empty x range {}..{}",
            config.x_min, config.x_max
        )));
    }
    param(&mut params, "xMin", config.x_min);
    param(&mut params, "xMax", config.x_max);

    let result = IdentityChecker::new().run_suite(&config);
    let failed = result.failures().count();
    let all_hold = result.all_asserted_pass();
    let payload = Payload::IdentityReports {
        all_asserted_hold: all_hold,
        report_count: result.reports.len(),
        reports: result.reports.iter().map(|r| r.record()).collect(),
        skipped: result.skipped,
    };
    Ok(Outcome {
        record: OutputRecord::new("verify", params, payload),
        csv: None,
        assertion_failure: (!all_hold).then(|| format!("{failed} asserted checks failed")),
    })
}

pub fn convergence(args: &ConvergenceArgs) -> Result<Outcome, Failure> {
    let mut params = Params::new();
    let q0 = parse_rational(&args.q0)?;
    param(&mut params, "p", args.p);
    param(&mut params, "q", q0.to_string());
    param(&mut params, "maxN", args.max_n);
    let ctx = PadicContext::new(args.p, q0, args.max_n)?;
    let spec = integrand_spec(&args.integrand, &mut params)?;
    let exact = padic::closed_form_of(&spec, &QEulerTable::new())?;
    let probe = padic::probe_convergence(&spec, &ctx, &exact)?;

    let rows: Vec<ProbeRow> = probe
        .partials
        .iter()
        .zip(&probe.residual_valuations)
        .map(|((level, s), (_, v))| ProbeRow {
            level: *level,
            partial: s.to_string(),
            valuation: *v,
        })
        .collect();
    let table_csv = args.csv.then(|| {
        csv(
            ["N", "S_N", "residual_valuation"],
            rows.iter()
                .map(|r| [r.level.to_string(), r.partial.clone(), r.valuation.to_string()]),
        )
    });
    let monotone = probe.is_monotone();
    let payload = Payload::ProbeTable {
        integrand: spec.to_string(),
        exact: exact.to_string(),
        exact_at_q0: probe.exact_at_q0.to_string(),
        non_decreasing: monotone,
        meets_level_bound: probe.meets_level_bound(),
        rows,
    };
    Ok(Outcome {
        record: OutputRecord::new("convergence", params, payload),
        csv: table_csv,
        assertion_failure: (!monotone).then(|| "residual valuations decrease at some level".to_string()),
    })
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("bad range {s:?}, expected a..b with a <= b"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn table(args: &TableArgs) -> Result<Outcome, Failure> {
    let mut params = Params::new();
    let (lo, hi) = parse_range(&args.n)?;
    param(&mut params, "nFrom", lo);
    param(&mut params, "nTo", hi);
    let q0 = optional_q0(&mut params, &args.q0)?;
    let table = QEulerTable::new();
    let rows = (lo..=hi)
        .map(|n| {
            let xi = qcore::q_euler_number(n, &table);
            let value = match &q0 {
                Some(q) => xi.eval(q)?.to_string(),
                None => xi.to_string(),
            };
            Ok(TableRow { n, value })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let table_csv = args
        .csv
        .then(|| csv(["n", "value"], rows.iter().map(|r| [r.n.to_string(), r.value.clone()])));
    Ok(Outcome {
        record: OutputRecord::new("table", params, Payload::ValueTable { rows }),
        csv: table_csv,
        assertion_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..2").unwrap(), (0, 2));
        assert_eq!(parse_range("3..=3").unwrap(), (3, 3));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert_eq!(parse_range("5..3").unwrap_err().code, EXIT_USAGE);
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn error_codes() {
        let e: Failure = qeuler::Error::UnsupportedSpec("x".into()).into();
        assert_eq!(e.code, EXIT_UNSUPPORTED);
        let e: Failure = qeuler::Error::InvalidContext("x".into()).into();
        assert_eq!(e.code, EXIT_USAGE);
    }
}
