use std::io::{self, BufRead, BufWriter, Write};

use aperiodic::words::COMPACT_ALPHABET_LIMIT;
use aperiodic::{
    exact_period, exact_period_border, exact_period_divisor_scan, factorize, lyndon_count,
    sweep_with, tau_breakdown, tau_inclusion_exclusion, tau_mobius, tau_prime_power, BigCount,
    EnumerationGuard, Error, LyndonWords, SizeGuard, TauBreakdown, Word, WordOdometer,
};
use serde_json::{json, Map, Value};

use crate::args::{CountArgs, EnumerateArgs, Filter, Method, PeriodArgs, VerifyArgs};
use crate::output::{record, Report};
use crate::{CliError, Verdict};

fn breakdown_json(b: &TauBreakdown) -> Value {
    let per_period: Map<String, Value> = b
        .per_period
        .iter()
        .map(|(j, c)| (j.to_string(), Value::String(c.to_string())))
        .collect();
    json!({ "per_period": per_period, "total": b.total.to_string() })
}

pub fn count(a: &CountArgs, json: bool) -> Result<Verdict, CliError> {
    let guard = SizeGuard::new(a.guard_bits);
    let (m, n) = (a.alphabet, a.length);

    let mut routes: Vec<(&str, BigCount)> = Vec::new();
    if matches!(a.method, Method::Mobius | Method::All) {
        routes.push(("mobius", tau_mobius(m, n, guard)?));
    }
    if matches!(a.method, Method::InclusionExclusion | Method::All) {
        routes.push((
            "inclusion-exclusion",
            tau_inclusion_exclusion(m, &factorize(n)?, guard)?,
        ));
    }
    if matches!(a.method, Method::PrimePower | Method::All) {
        match factorize(n)?.as_prime_power() {
            Some((p, alpha)) => routes.push(("prime-power", tau_prime_power(m, p, alpha, guard)?)),
            None if a.method == Method::PrimePower => {
                return Err(CliError::Usage(format!(
                    "N = {n} is not a prime power; use --method mobius or inclusion-exclusion"
                )))
            }
            None => {}
        }
    }
    let agree = routes.windows(2).all(|w| w[0].1 == w[1].1);

    let mut report = Report::new(
        "count",
        json!({ "alphabet": m, "length": n, "method": method_name(a.method) }),
    );
    report.line("alphabet", m);
    report.line("length", n);
    let mut methods = Map::new();
    for (name, value) in &routes {
        report.line(&format!("method {name}"), value);
        methods.insert((*name).into(), Value::String(value.to_string()));
    }
    let mut result = json!({ "methods": methods, "agree": agree });
    if agree {
        report.line("tau", &routes[0].1);
        result["tau"] = Value::String(routes[0].1.to_string());
    }
    if a.breakdown {
        let b = tau_breakdown(m, n, guard)?;
        for (j, c) in &b.per_period {
            report.line(&format!("period {j}"), c);
        }
        report.line("total", &b.total);
        result["breakdown"] = breakdown_json(&b);
    }
    report.result = result;
    report.emit(json)?;

    if agree {
        Ok(Verdict::Ok)
    } else {
        let listing: Vec<String> = routes.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        eprintln!("error: methods disagree: {}", listing.join(", "));
        Ok(Verdict::Refuted)
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Mobius => "mobius",
        Method::InclusionExclusion => "inclusion-exclusion",
        Method::PrimePower => "prime-power",
        Method::All => "all",
    }
}

fn read_stdin_word() -> Result<String, CliError> {
    let mut line = String::new();
    io::stdin().lock().read_line(&mut line)?;
    Ok(line.trim().to_string())
}

/// One more than the largest symbol in `text`, read in whichever form it is written.
fn infer_alphabet(text: &str) -> Result<u32, CliError> {
    let t = text.trim();
    let probe = if t.contains(',') || t.starts_with('(') {
        u32::MAX
    } else {
        COMPACT_ALPHABET_LIMIT
    };
    let w = Word::parse(text, probe)?;
    Ok(w.symbols().iter().max().map_or(1, |&s| s + 1))
}

pub fn period(a: &PeriodArgs, json: bool) -> Result<Verdict, CliError> {
    let text = if a.word == "-" {
        read_stdin_word()?
    } else {
        a.word.clone()
    };
    let m = match a.alphabet {
        Some(m) => m,
        None => infer_alphabet(&text)?,
    };
    let w = Word::parse(&text, m)?;
    let border = exact_period_border(&w);
    let scan = exact_period_divisor_scan(&w);
    let agree = border == scan;

    let mut report = Report::new("period", json!({ "word": text, "alphabet": m }));
    report.line("word", &w);
    report.line("length", w.len());
    report.line("exact_period", border.exact_period);
    report.line("is_symmetry", border.is_symmetry);
    let admissible: Vec<String> = border
        .admissible_periods
        .iter()
        .map(u64::to_string)
        .collect();
    report.line("admissible_periods", admissible.join(","));
    report.line("methods_agree", agree);
    report.result = json!({
        "word": w.to_string(),
        "length": w.len(),
        "exact_period": border.exact_period,
        "is_symmetry": border.is_symmetry,
        "admissible_periods": border.admissible_periods,
        "methods_agree": agree,
        "divisor_scan": scan,
    });
    report.emit(json)?;

    if agree {
        Ok(Verdict::Ok)
    } else {
        eprintln!("error: border method {border:?} disagrees with divisor scan {scan:?}");
        Ok(Verdict::Refuted)
    }
}

fn with_limit_hint(e: Error) -> CliError {
    match e {
        Error::Size { guard, detail } => CliError::Core(Error::Size {
            guard,
            detail: format!("{detail}; pass --limit to stream a prefix"),
        }),
        other => CliError::Core(other),
    }
}

fn filter_name(f: Filter) -> &'static str {
    match f {
        Filter::All => "all",
        Filter::Symmetries => "symmetries",
        Filter::Asymmetries => "asymmetries",
        Filter::Lyndon => "lyndon",
    }
}

/// Destination for enumerated words: streamed lines, or collected for one JSON document.
enum Sink<W: Write> {
    Lines(W),
    Collect(Vec<String>),
}

impl<W: Write> Sink<W> {
    fn push(&mut self, w: &Word) -> io::Result<()> {
        match self {
            // One write per line so every flushed chunk ends on a line boundary.
            Sink::Lines(out) => out.write_all(format!("{w}\n").as_bytes()),
            Sink::Collect(v) => {
                v.push(w.to_string());
                Ok(())
            }
        }
    }
}

pub fn enumerate(a: &EnumerateArgs, json: bool) -> Result<Verdict, CliError> {
    let (m, n) = (a.alphabet, a.length);
    let words_guard = EnumerationGuard::new(a.guard_words);
    let size_guard = SizeGuard::new(a.guard_bits);

    if a.limit.is_none() {
        if a.filter == Filter::Lyndon {
            let fits = lyndon_count(u64::from(m), n as u64, size_guard)
                .ok()
                .and_then(|c| c.to_u64())
                .is_some_and(|c| c <= words_guard.max_words);
            if !fits && m >= 1 && n >= 1 {
                return Err(with_limit_hint(Error::Size {
                    guard: "enumeration guard (--guard-words)",
                    detail: format!(
                        "Lyndon words of length {n} over {m} symbols exceed the cap of {}",
                        words_guard.max_words
                    ),
                }));
            }
        } else if m >= 1 && n >= 1 {
            words_guard.admit(m, n).map_err(with_limit_hint)?;
        }
    }
    // Validates m and N before anything is written.
    let odometer = WordOdometer::new(m, n)?;
    let counts = tau_breakdown(u64::from(m), n as u64, size_guard).ok();
    let limit = a.limit.unwrap_or(u64::MAX);

    let stdout = io::stdout();
    let mut sink = if json {
        Sink::Collect(Vec::new())
    } else {
        Sink::Lines(BufWriter::new(stdout.lock()))
    };
    let mut emitted = 0u64;
    let mut truncated = false;

    if a.filter == Filter::Lyndon {
        for w in LyndonWords::new(m, n)? {
            if emitted == limit {
                truncated = true;
                break;
            }
            sink.push(&w)?;
            emitted += 1;
        }
    } else {
        let mut scanned = 0u64;
        for w in odometer {
            if emitted == limit {
                truncated = true;
                break;
            }
            scanned += 1;
            if scanned > words_guard.max_words {
                if let Sink::Lines(out) = &mut sink {
                    out.flush()?;
                }
                return Err(CliError::Core(Error::Size {
                    guard: "enumeration guard (--guard-words)",
                    detail: format!(
                        "scanned {} words without reaching --limit {limit}",
                        words_guard.max_words
                    ),
                }));
            }
            let symmetric = exact_period(w.symbols()) < n;
            let keep = match a.filter {
                Filter::All => true,
                Filter::Symmetries => symmetric,
                Filter::Asymmetries => !symmetric,
                Filter::Lyndon => unreachable!(),
            };
            if keep {
                sink.push(&w)?;
                emitted += 1;
            }
        }
    }

    let expected = counts.as_ref().map(|b| match a.filter {
        Filter::All => b.total.clone(),
        Filter::Symmetries => b.symmetries(),
        Filter::Asymmetries => b.asymmetries().clone(),
        Filter::Lyndon => b
            .asymmetries()
            .div_exact(n as u64)
            .expect("tau(m, N) is a multiple of N"),
    });
    let consistent = truncated || expected.as_ref().is_none_or(|e| *e == emitted);

    let mut summary = json!({
        "filter": filter_name(a.filter),
        "emitted": emitted,
        "truncated": truncated,
    });
    if let Some(b) = &counts {
        summary["total"] = Value::String(b.total.to_string());
        summary["symmetries"] = Value::String(b.symmetries().to_string());
        summary["asymmetries"] = Value::String(b.asymmetries().to_string());
        summary["lyndon"] = Value::String(
            b.asymmetries()
                .div_exact(n as u64)
                .expect("tau(m, N) is a multiple of N")
                .to_string(),
        );
    }

    match sink {
        Sink::Lines(mut out) => {
            let mut line = format!(
                "# filter={} emitted={emitted} truncated={truncated}",
                filter_name(a.filter)
            );
            if let Some(b) = &counts {
                line.push_str(&format!(
                    " total={} symmetries={} asymmetries={} lyndon={}",
                    b.total,
                    b.symmetries(),
                    b.asymmetries(),
                    summary["lyndon"].as_str().unwrap_or_default()
                ));
            }
            writeln!(out, "{line}")?;
            out.flush()?;
        }
        Sink::Collect(words) => {
            let doc = record(
                "enumerate",
                &json!({ "alphabet": m, "length": n, "filter": filter_name(a.filter), "limit": a.limit }),
                &json!({ "words": words, "summary": summary }),
            );
            let mut out = stdout.lock();
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::other)?;
            writeln!(out)?;
        }
    }

    if consistent {
        Ok(Verdict::Ok)
    } else {
        eprintln!(
            "error: emitted {emitted} words but the counting module expects {}",
            expected.unwrap()
        );
        Ok(Verdict::Refuted)
    }
}

pub fn verify(a: &VerifyArgs, json: bool) -> Result<Verdict, CliError> {
    let identity = a.identity;
    let mut bounds = identity.default_bounds();
    if let Some(v) = a.max_m {
        bounds.max_m = v;
    }
    if let Some(v) = a.max_n.or(a.max_p) {
        bounds.max_n = v;
    }
    bounds.guard = SizeGuard::new(a.guard_bits);

    let mut csv = match &a.csv {
        Some(path) => {
            let mut w = csv::Writer::from_path(path)?;
            w.write_record(["param1", "param2", "observed", "expected", "ok"])?;
            Some(w)
        }
        None => None,
    };
    let mut csv_error = None;
    let report = sweep_with(identity, bounds, |row| {
        if let (Some(w), None) = (csv.as_mut(), csv_error.as_ref()) {
            let p1 = row.params[0].1.to_string();
            let p2 = row.params[1].1.to_string();
            let ok = row.ok.to_string();
            if let Err(e) = w.write_record([&p1, &p2, &row.observed, &row.expected, &ok]) {
                csv_error = Some(e);
            }
        }
    })?;
    if let Some(e) = csv_error {
        return Err(e.into());
    }
    if let Some(mut w) = csv {
        w.flush()?;
    }

    let mut out = Report::new(
        "verify",
        json!({
            "identity": identity.name(),
            "max_m": bounds.max_m,
            "max_n": bounds.max_n,
        }),
    );
    out.line("identity", &report.identity_name);
    out.line("range", &report.parameter_range);
    out.line("checked", report.checked);
    out.line("passed", report.passed);
    if let Some(ce) = &report.counterexample {
        let params: Vec<String> = ce
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.line(
            "counterexample",
            format!(
                "{} observed={} expected={}",
                params.join(" "),
                ce.observed,
                ce.expected
            ),
        );
    }
    out.result = serde_json::to_value(&report).map_err(io::Error::other)?;
    out.emit(json)?;

    Ok(if report.passed {
        Verdict::Ok
    } else {
        Verdict::Refuted
    })
}
