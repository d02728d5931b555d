use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use carlitz_core::record::{special_record, stirling_record};
use carlitz_core::selfcheck::{self, Level};
use carlitz_core::{CarlitzContext, Family, Field, Flavor, Method, Quantity, Record, StirlingKind};
use rayon::prelude::*;

use crate::args::{
    ComputeArgs, FamilyArg, FieldArgs, FlavorArg, Format, LevelArg, MethodArg, OutputArgs, SelfcheckArgs, StirlingArgs,
    TableArgs,
};

/// Largest n-range upper bound accepted without `--allow-large`.
pub const LARGE_N: u64 = 100_000;

pub const THREADS_ENV: &str = "CARLITZ_LAB_THREADS";

#[derive(Debug)]
pub enum Failure {
    /// Invalid configuration: exit 1.
    Usage(String),
    /// Computation or I/O error: exit 2.
    Compute(String),
    /// Selfcheck ran and found a mismatch: exit 3.
    Check,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Compute(_) => 2,
            Failure::Check => 3,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn compute_err(e: impl std::fmt::Display) -> Failure {
    Failure::Compute(e.to_string())
}

fn build_field(args: &FieldArgs) -> Result<Field, Failure> {
    let modulus = match &args.modulus {
        None => None,
        Some(s) => Some(
            s.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| usage(format!("bad modulus coefficient {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let field = match (args.r, args.p) {
        (None, None) => return Err(usage("specify the field with --r or --p/--e")),
        (Some(r), None) => {
            if args.e.is_some() || modulus.is_some() {
                return Err(usage("--e and --modulus require --p"));
            }
            Field::with_order(r)
        }
        (_, Some(p)) => Field::new(p, args.e.unwrap_or(1), modulus),
    }
    .map_err(|e| usage(e.to_string()))?;
    if let Some(r) = args.r {
        if r != field.r() {
            return Err(usage(format!("--r {r} does not equal p^e = {}", field.r())));
        }
    }
    Ok(field)
}

fn flavor(args: &StirlingArgs) -> Result<Flavor, Failure> {
    match (args.flavor, args.m) {
        (FlavorArg::Complete, None) => Ok(Flavor::Complete),
        (FlavorArg::Complete, Some(_)) => Err(usage("--m only applies to the assoc and restricted flavors")),
        (FlavorArg::Assoc, Some(m)) => Ok(Flavor::Associated(m)),
        (FlavorArg::Restricted, Some(m)) => Ok(Flavor::Restricted(m)),
        (_, None) => Err(usage("the assoc and restricted flavors need --m")),
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Series => Method::Series,
        MethodArg::Composition => Method::Composition,
        MethodArg::Binomial => Method::Binomial,
        MethodArg::Stirling => Method::Stirling,
    }
}

fn quantity(f: FamilyArg) -> Quantity {
    match f {
        FamilyArg::Bc => Quantity::Bc,
        FamilyArg::Cc => Quantity::Cc,
        FamilyArg::Stirling1 => Quantity::Stirling1,
        FamilyArg::Stirling2 => Quantity::Stirling2,
    }
}

/// `a`, `a..b` or `a..=b`, both inclusive; `b < a` is an empty range.
pub fn parse_range(s: &str, what: &str) -> Result<RangeInclusive<u64>, Failure> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| usage(format!("bad {what} range {s:?}")));
    match s.split_once("..") {
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
    }
}

fn thread_count(args: &OutputArgs) -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => match args.threads {
            Some(0) => Err(usage("--threads must be positive")),
            t => Ok(t),
        },
    }
}

fn check_family_flags(
    q: Quantity,
    has_n_level: bool,
    has_k: bool,
    has_method: bool,
    stirling: &StirlingArgs,
) -> Result<(), Failure> {
    let is_stirling = q.stirling_kind().is_some();
    if is_stirling {
        if has_n_level {
            return Err(usage("--N applies to bc and cc only"));
        }
        if has_method {
            return Err(usage("--method applies to bc and cc only"));
        }
        if !has_k {
            return Err(usage(format!("{} needs --k", q.name())));
        }
    } else {
        if has_k {
            return Err(usage("--k applies to stirling1 and stirling2 only"));
        }
        if stirling.flavor != FlavorArg::Complete || stirling.m.is_some() {
            return Err(usage("--flavor and --m apply to stirling1 and stirling2 only"));
        }
    }
    Ok(())
}

pub fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let field = build_field(&args.field)?;
    let q = quantity(args.family);
    check_family_flags(q, args.big_n.is_some(), args.k.is_some(), args.method.is_some(), &args.stirling)?;
    let flavor = flavor(&args.stirling)?;
    let ctx = CarlitzContext::new(field);
    let record = match (q.family(), q.stirling_kind()) {
        (Some(family), _) => {
            let m = method(args.method.unwrap_or(MethodArg::Series));
            special_record(&ctx, family, args.big_n.unwrap_or(0), args.n, m)
        }
        (None, Some(kind)) => stirling_record(&ctx, kind, args.n, args.k.unwrap_or(0), flavor),
        (None, None) => unreachable!("every quantity is a family or a Stirling kind"),
    }
    .map_err(compute_err)?;
    let body = match args.output.format {
        Format::Text => text_single(&record),
        Format::Json => serde_json::to_string_pretty(&record).map_err(compute_err)? + "\n",
        Format::Csv => csv_rows(q, std::slice::from_ref(&record))?,
    };
    emit(&args.output, &body)
}

enum Cell {
    Special(Family, u32, u64, Method),
    Stirling(StirlingKind, u64, u64, Flavor),
}

pub fn table(args: TableArgs) -> Result<(), Failure> {
    let field = build_field(&args.field)?;
    let q = quantity(args.family);
    check_family_flags(q, args.big_n.is_some(), args.k.is_some(), !args.method.is_empty(), &args.stirling)?;
    let flavor = flavor(&args.stirling)?;
    if args.step == 0 {
        return Err(usage("--step must be positive"));
    }
    let n_range = parse_range(&args.n, "n")?;
    if *n_range.end() > LARGE_N && !n_range.is_empty() && !args.allow_large {
        return Err(usage(format!("n upper bound {} exceeds {LARGE_N}; pass --allow-large to proceed", n_range.end())));
    }
    let ns: Vec<u64> = n_range.step_by(args.step as usize).collect();
    let mut cells = Vec::new();
    match (q.family(), q.stirling_kind()) {
        (Some(family), _) => {
            let levels = parse_range(args.big_n.as_deref().unwrap_or("0"), "N")?;
            let mut methods: Vec<Method> = args.method.iter().map(|&m| method(m)).collect();
            if methods.is_empty() {
                methods.push(Method::Series);
            }
            methods.sort();
            methods.dedup();
            for big_n in levels {
                let big_n = u32::try_from(big_n).map_err(|_| usage("N out of range"))?;
                for &n in &ns {
                    for &m in &methods {
                        cells.push(Cell::Special(family, big_n, n, m));
                    }
                }
            }
        }
        (None, Some(kind)) => {
            let ks = parse_range(args.k.as_deref().unwrap_or("0"), "k")?;
            for &n in &ns {
                for k in ks.clone() {
                    cells.push(Cell::Stirling(kind, n, k, flavor));
                }
            }
        }
        (None, None) => unreachable!("every quantity is a family or a Stirling kind"),
    }
    let ctx = CarlitzContext::new(field);
    let work = || -> Result<Vec<Record>, Failure> {
        cells
            .par_iter()
            .map(|cell| match *cell {
                Cell::Special(family, big_n, n, m) => special_record(&ctx, family, big_n, n, m),
                Cell::Stirling(kind, n, k, flavor) => stirling_record(&ctx, kind, n, k, flavor),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(compute_err)
    };
    // Cells were generated in (N, n, k, method) order and par_iter preserves it.
    let records = match thread_count(&args.output)? {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(compute_err)?.install(work)?,
        None => work()?,
    };
    let body = match args.output.format {
        Format::Text => text_table(q, &records),
        Format::Json => serde_json::to_string_pretty(&records).map_err(compute_err)? + "\n",
        Format::Csv => csv_rows(q, &records)?,
    };
    emit(&args.output, &body)
}

pub fn selfcheck(args: SelfcheckArgs) -> Result<(), Failure> {
    let level = match args.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let work = || selfcheck::run(level);
    let outcomes = match thread_count(&args.output)? {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(compute_err)?.install(work),
        None => work(),
    };
    let body = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                let verdict = if o.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{verdict} {}: {} [{:.2?}]\n", o.name, o.detail, o.elapsed));
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            s.push_str(&format!("{} checks, {failed} failed\n", outcomes.len()));
            s
        }
        Format::Json => serde_json::to_string_pretty(&outcomes).map_err(compute_err)? + "\n",
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["check", "passed", "detail"]).map_err(compute_err)?;
            for o in &outcomes {
                w.write_record([o.name.as_str(), if o.passed { "true" } else { "false" }, o.detail.as_str()])
                    .map_err(compute_err)?;
            }
            csv_finish(w)?
        }
    };
    emit(&args.output, &body)?;
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn value_text(num: &str, den: &str) -> String {
    if den == "1" {
        num.to_string()
    } else {
        format!("({num})/({den})")
    }
}

fn describe(r: &Record) -> String {
    match (r.big_n, r.k) {
        (Some(big_n), _) => format!(
            "{} r={} N={big_n} n={} method={}",
            r.family,
            r.r,
            r.n,
            r.method.as_deref().unwrap_or("")
        ),
        (None, k) => {
            let flavor = match (r.flavor.as_deref(), r.m) {
                (Some(f), Some(m)) => format!("{f} m={m}"),
                (Some(f), None) => f.to_string(),
                _ => String::new(),
            };
            format!("{} r={} n={} k={} flavor={flavor}", r.family, r.r, r.n, k.unwrap_or(0))
        }
    }
}

fn text_single(r: &Record) -> String {
    format!(
        "{}\nvalue: {}\nnormalized: {}\n",
        describe(r),
        value_text(&r.num, &r.den),
        value_text(&r.normalized_num, &r.normalized_den)
    )
}

fn text_table(q: Quantity, records: &[Record]) -> String {
    let mut s = String::new();
    if q.family().is_some() {
        s.push_str("r\tN\tn\tmethod\tvalue\tnormalized\n");
        for r in records {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.r,
                r.big_n.unwrap_or(0),
                r.n,
                r.method.as_deref().unwrap_or(""),
                value_text(&r.num, &r.den),
                value_text(&r.normalized_num, &r.normalized_den)
            ));
        }
    } else {
        s.push_str("r\tn\tk\tflavor\tm\tvalue\tnormalized\n");
        for r in records {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.r,
                r.n,
                r.k.unwrap_or(0),
                r.flavor.as_deref().unwrap_or(""),
                r.m.map(|m| m.to_string()).unwrap_or_default(),
                value_text(&r.num, &r.den),
                value_text(&r.normalized_num, &r.normalized_den)
            ));
        }
    }
    s
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Always).from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(compute_err)?;
    String::from_utf8(bytes).map_err(compute_err)
}

fn csv_rows(q: Quantity, records: &[Record]) -> Result<String, Failure> {
    let mut w = csv_writer();
    if q.family().is_some() {
        w.write_record(["r", "p", "e", "family", "N", "n", "method", "num", "den", "normalized_num", "normalized_den"])
            .map_err(compute_err)?;
        for r in records {
            w.write_record([
                r.r.to_string(),
                r.p.to_string(),
                r.e.to_string(),
                r.family.clone(),
                r.big_n.unwrap_or(0).to_string(),
                r.n.to_string(),
                r.method.clone().unwrap_or_default(),
                r.num.clone(),
                r.den.clone(),
                r.normalized_num.clone(),
                r.normalized_den.clone(),
            ])
            .map_err(compute_err)?;
        }
    } else {
        w.write_record(["r", "p", "e", "family", "n", "k", "flavor", "m", "num", "den", "normalized_num", "normalized_den"])
            .map_err(compute_err)?;
        for r in records {
            w.write_record([
                r.r.to_string(),
                r.p.to_string(),
                r.e.to_string(),
                r.family.clone(),
                r.n.to_string(),
                r.k.unwrap_or(0).to_string(),
                r.flavor.clone().unwrap_or_default(),
                r.m.map(|m| m.to_string()).unwrap_or_default(),
                r.num.clone(),
                r.den.clone(),
                r.normalized_num.clone(),
                r.normalized_den.clone(),
            ])
            .map_err(compute_err)?;
        }
    }
    csv_finish(w)
}

fn emit(args: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &args.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Compute(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(compute_err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..270", "n").unwrap(), 0..=270);
        assert_eq!(parse_range("3..=5", "n").unwrap(), 3..=5);
        assert_eq!(parse_range("7", "n").unwrap(), 7..=7);
        assert!(parse_range("5..4", "n").unwrap().is_empty());
        assert!(parse_range("a..4", "n").is_err());
    }
}
