//! One function per subcommand. Each writes its report in the requested
//! format; CSV output starts with a `# hypergeom <kind> v1` line and text
//! output with a `<kind> v1` line.

use std::io::Write;

use hypergeom::asymmetry::{
    class_d_quadratic_check, field_profile, find_asymmetric_prime, scan_pair, AsymmetryCertificate, ScanSummary,
};
use hypergeom::hyperseq::{height_profile, is_regular, make_sequence, regularize, HypergeomSeq};
use hypergeom::membership::{decide_batch, MembershipConfig, MembershipVerdict};
use hypergeom::padic::{digit_frequency, lift_all_roots, valuation_at_prime_power_general, zero_run_length};
use hypergeom::parse::{parse_poly, parse_rational};
use hypergeom::quadratic::{
    class_c_check, discriminant_profile, equidistribution_sample, exists_condition_prime, find_condition_prime,
    window_count,
};
use hypergeom::{Error, Valuation};

use crate::input::{load_seq, load_spec, load_specs, parse_int, CliResult};
use crate::{Cli, Command, EquidistArgs, Format, PadicCommand, SeqArgs};

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out) -> CliResult<()> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { seq } => validate(seq, fmt, out),
        Command::Terms { seq, n } => terms(seq, *n, fmt, out),
        Command::Height { seq, nmax, stride, p } => height(seq, *nmax, *stride, *p, fmt, out),
        Command::Valuation { seq, p, nmax, stride } => valuation(seq, *p, *nmax, *stride, fmt, out),
        Command::Regularize { seq } => regularize_cmd(seq, fmt, out),
        Command::Asymmetry { seq, pmin, pmax } => asymmetry(seq, *pmin, *pmax, fmt, out),
        Command::Classify { seq, pmax } => classify(seq, *pmax, fmt, out),
        Command::Membership {
            seq,
            target,
            prime,
            max_terms,
            prime_cap,
        } => {
            let cfg = MembershipConfig {
                prime_cap: *prime_cap,
                max_terms: *max_terms,
                forced_prime: *prime,
                ..Default::default()
            };
            membership(seq, target, &cfg, fmt, out)
        }
        Command::Equidist(args) => equidist(args, fmt, out),
        Command::Padic(PadicCommand::Lift {
            poly,
            p,
            digits,
            run_at,
            freq,
        }) => padic_lift(poly, *p, *digits, *run_at, *freq, fmt, out),
        Command::Padic(PadicCommand::Identity { seq, p, s }) => padic_identity(seq, *p, *s, fmt, out),
    }
}

fn csv_header(out: Out, kind: &str, columns: &str) -> CliResult<()> {
    writeln!(out, "# hypergeom {kind} v1")?;
    writeln!(out, "{columns}")?;
    Ok(())
}

fn valuation_str(v: Valuation) -> String {
    v.to_string()
}

fn validate(args: &SeqArgs, fmt: Format, out: Out) -> CliResult<()> {
    let specs = if args.spec.is_some() {
        load_specs(args)?
    } else {
        vec![load_spec(args)?]
    };
    match fmt {
        Format::Csv => csv_header(
            out,
            "validate",
            "record,valid,error,f,g,u0,cancelled,degenerate,first_zero,regular",
        )?,
        Format::Text => writeln!(out, "validate v1")?,
        Format::Human => {}
    }
    let mut first_error = None;
    for (i, spec) in specs.into_iter().enumerate() {
        let shown = (spec.f.to_string(), spec.g.to_string(), spec.u0.to_string());
        match make_sequence(spec.f, spec.g, spec.u0) {
            Ok(seq) => {
                let cancelled = seq.cancelled_factor().to_string();
                let first_zero = seq.first_zero_index().map(|n| n.to_string()).unwrap_or_default();
                let regular = match is_regular(&seq) {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "unknown",
                };
                match fmt {
                    Format::Csv => writeln!(
                        out,
                        "{i},true,,{},{},{},{cancelled},{},{first_zero},{regular}",
                        seq.f(),
                        seq.g(),
                        seq.u0(),
                        seq.is_degenerate()
                    )?,
                    Format::Text => {
                        writeln!(
                            out,
                            "record = {i}\nvalid = true\nf = {}\ng = {}\nu0 = {}",
                            seq.f(),
                            seq.g(),
                            seq.u0()
                        )?;
                        writeln!(
                            out,
                            "cancelled = {cancelled}\ndegenerate = {}\nfirst_zero = {first_zero}\nregular = {regular}",
                            seq.is_degenerate()
                        )?;
                    }
                    Format::Human => {
                        writeln!(out, "record {i}: valid")?;
                        writeln!(
                            out,
                            "  f(n) u_n = g(n) u_(n-1) with f = {}, g = {}, u_0 = {}",
                            seq.f(),
                            seq.g(),
                            seq.u0()
                        )?;
                        if cancelled != "1" {
                            writeln!(out, "  common factor cancelled: {cancelled}")?;
                        }
                        match seq.first_zero_index() {
                            Some(n) => writeln!(out, "  degenerate: u_n = 0 from n = {n} on")?,
                            None => writeln!(out, "  never zero")?,
                        }
                        writeln!(out, "  regular: {regular}")?;
                    }
                }
            }
            Err(e) => {
                match fmt {
                    Format::Csv => writeln!(out, "{i},false,{},{},{},{},,,,", e.name(), shown.0, shown.1, shown.2)?,
                    Format::Text => writeln!(out, "record = {i}\nvalid = false\nerror = {}\nreason = {e}", e.name())?,
                    Format::Human => writeln!(out, "record {i}: invalid ({}): {e}", e.name())?,
                }
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn terms(args: &SeqArgs, n: u64, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    match fmt {
        Format::Csv => csv_header(out, "terms", "n,u_n")?,
        Format::Text => writeln!(out, "terms v1\nsequence = {}", seq.spec_string())?,
        Format::Human => writeln!(out, "{seq}")?,
    }
    let mut c = seq.cursor();
    loop {
        let k = c.index();
        match fmt {
            Format::Csv => writeln!(out, "{k},{}", c.value())?,
            Format::Text => writeln!(out, "u[{k}] = {}", c.value())?,
            Format::Human => writeln!(out, "u_{k} = {}", c.value())?,
        }
        if k >= n {
            break;
        }
        c.advance();
    }
    Ok(())
}

fn height(args: &SeqArgs, nmax: u64, stride: u64, p: Option<u64>, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    let prof = height_profile(&seq, nmax, stride, p)?;
    match fmt {
        Format::Csv => {
            writeln!(out, "# hypergeom height v1")?;
            write!(out, "{}", prof.to_csv())?;
        }
        Format::Text => {
            writeln!(
                out,
                "height v1\nsequence = {}\ngrowth_constant = {}",
                seq.spec_string(),
                prof.growth_constant
            )?;
            for r in &prof.rows {
                let v = r.valuation.map(valuation_str).unwrap_or_default();
                writeln!(out, "row = {},{:.12},{v}", r.n, r.height)?;
            }
        }
        Format::Human => {
            writeln!(out, "{seq}")?;
            for r in &prof.rows {
                match r.valuation {
                    Some(v) => writeln!(out, "n = {:>8}  h(u_n) = {:>16.6}  ν_p = {v}", r.n, r.height)?,
                    None => writeln!(out, "n = {:>8}  h(u_n) = {:>16.6}", r.n, r.height)?,
                }
            }
            writeln!(out, "min h(u_n)/n over the second half: {:.6}", prof.growth_constant)?;
        }
    }
    Ok(())
}

fn valuation(args: &SeqArgs, p: u64, nmax: u64, stride: u64, fmt: Format, out: Out) -> CliResult<()> {
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be positive".into()).into());
    }
    if !hypergeom::numtheory::is_prime_u64(p) {
        return Err(Error::NotPrime(p).into());
    }
    let seq = load_seq(args)?;
    let series = seq.valuation_series(p, nmax);
    let rows = series
        .iter()
        .enumerate()
        .filter(|(n, _)| (*n as u64).is_multiple_of(stride) || *n as u64 == nmax);
    match fmt {
        Format::Csv => {
            csv_header(out, "valuation", "n,valuation_p")?;
            for (n, v) in rows {
                writeln!(out, "{n},{v}")?;
            }
        }
        Format::Text => {
            writeln!(out, "valuation v1\nsequence = {}\np = {p}", seq.spec_string())?;
            for (n, v) in rows {
                writeln!(out, "nu[{n}] = {v}")?;
            }
        }
        Format::Human => {
            writeln!(out, "{seq}")?;
            for (n, v) in rows {
                writeln!(out, "ν_{p}(u_{n}) = {v}")?;
            }
            if nmax >= 4 {
                if let Ok(fit) = hypergeom::asymmetry::slope_fit(&seq, p, nmax) {
                    writeln!(
                        out,
                        "fitted slope over [{}, {nmax}]: {:.6}; max |ν - slope n| / ln n = {:.3}",
                        nmax / 2,
                        fit.slope,
                        fit.max_log_deviation
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn regularize_cmd(args: &SeqArgs, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    let reg = regularize(&seq)?;
    let (ft, gt) = (reg.regular_seq.f(), reg.regular_seq.g());
    let q = reg.correction.as_rational_function();
    match fmt {
        Format::Csv => {
            csv_header(out, "regularize", "class,representative,gamma,members")?;
            for (i, c) in reg.shift_classes.iter().enumerate() {
                let members: Vec<String> = c.members.iter().map(|m| format!("{:?}:{}", m.side, m.shift)).collect();
                writeln!(out, "{i},{},{},{}", c.representative, c.gamma, members.join(" "))?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "regularize v1\nf_tilde = {ft}\ng_tilde = {gt}\nu0_tilde = {}\nq = {q}",
                reg.regular_seq.u0()
            )?;
            for c in &reg.shift_classes {
                writeln!(out, "class = {} gamma {}", c.representative, c.gamma)?;
            }
        }
        Format::Human => {
            writeln!(out, "{seq}")?;
            writeln!(out, "u_n = q(n) ũ_n with")?;
            writeln!(
                out,
                "  f̃ = {ft}\n  g̃ = {gt}\n  ũ_0 = {}\n  q(n) = {q}",
                reg.regular_seq.u0()
            )?;
            for c in &reg.shift_classes {
                let members: Vec<String> = c
                    .members
                    .iter()
                    .map(|m| format!("{:?} shift {}", m.side, m.shift))
                    .collect();
                writeln!(
                    out,
                    "  class of {}: γ = {}, members {}",
                    c.representative,
                    c.gamma,
                    members.join(", ")
                )?;
            }
        }
    }
    Ok(())
}

fn write_certificate(
    out: Out,
    fmt: Format,
    cert: Option<&AsymmetryCertificate>,
    summary: &ScanSummary,
) -> CliResult<()> {
    match fmt {
        Format::Csv => {
            csv_header(out, "asymmetry", "p,m_f,m_g,slope,A,B,d,u0_valuation")?;
            if let Some(c) = cert {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    c.p, c.m_f, c.m_g, c.slope, c.a, c.b, c.d, c.u0_valuation
                )?;
            }
            writeln!(out, "# {summary}")?;
        }
        Format::Text => {
            match cert {
                Some(c) => write!(out, "{}", c.to_text())?,
                None => writeln!(out, "asymmetry-certificate v1\nfound = false")?,
            }
            writeln!(out, "summary = {summary}")?;
        }
        Format::Human => {
            match cert {
                Some(c) => {
                    writeln!(out, "asymmetric prime {c}")?;
                    writeln!(
                        out,
                        "  |ν_p(u_n)| >= {} n - {} (log_p({} n^{}) + 2) - {}",
                        c.a,
                        c.log_coefficient(),
                        c.b,
                        c.d,
                        c.u0_valuation.abs()
                    )?;
                }
                None => writeln!(
                    out,
                    "no asymmetric Hensel prime in {}..={}",
                    summary.p_min, summary.p_max
                )?,
            }
            writeln!(out, "scan: {summary}")?;
        }
    }
    Ok(())
}

fn asymmetry(args: &SeqArgs, pmin: u64, pmax: u64, fmt: Format, out: Out) -> CliResult<()> {
    let spec = load_spec(args)?;
    match make_sequence(spec.f.clone(), spec.g.clone(), spec.u0.clone()) {
        Ok(seq) => {
            let scan = find_asymmetric_prime(&seq, pmin, pmax)?;
            write_certificate(out, fmt, scan.certificate.as_ref(), &scan.summary)
        }
        // pairs that do not define a sequence can still be compared
        Err(Error::InvalidF(_)) => {
            let scan = scan_pair(&spec.f, &spec.g, pmin, pmax)?;
            let mut summary = scan.summary.clone();
            match scan.first_asymmetric() {
                Some((p, m_f, m_g)) => {
                    summary.asymmetric = scan.counts.iter().filter(|c| c.1 != c.2).count();
                    match fmt {
                        Format::Human => writeln!(out, "pair is asymmetric at p = {p}: m_f = {m_f}, m_g = {m_g} (no certificate: f is not a valid sequence polynomial)")?,
                        Format::Text => writeln!(out, "pair-scan v1\np = {p}\nm_f = {m_f}\nm_g = {m_g}")?,
                        Format::Csv => csv_header(out, "pair-scan", "p,m_f,m_g")?,
                    }
                    if fmt == Format::Csv {
                        for (p, a, b) in scan.counts.iter().filter(|c| c.1 != c.2) {
                            writeln!(out, "{p},{a},{b}")?;
                        }
                    }
                    match fmt {
                        Format::Csv => writeln!(out, "# {summary}")?,
                        Format::Text => writeln!(out, "summary = {summary}")?,
                        Format::Human => writeln!(out, "scan: {summary}")?,
                    }
                    Ok(())
                }
                None => write_certificate(out, fmt, None, &summary),
            }
        }
        Err(e) => Err(e.into()),
    }
}

fn classify(args: &SeqArgs, pmax: u64, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    let profile = discriminant_profile(&seq);
    let class_c = class_c_check(&seq);
    let class_d = class_d_quadratic_check(&seq);
    let fields = field_profile(&seq);
    let show = |r: &Result<bool, Error>| match r {
        Ok(b) => b.to_string(),
        Err(e) => format!("unknown ({})", e.name()),
    };
    let mut conditions = Vec::new();
    if let Ok(prof) = &profile {
        for d in &prof.discs {
            let eps = exists_condition_prime(prof, d)?;
            let prime = match &eps {
                Some(_) => find_condition_prime(prof, d, pmax)?,
                None => None,
            };
            conditions.push((d.clone(), eps, prime));
        }
    }
    let eps_str = |e: &Option<Vec<u8>>| match e {
        Some(v) => v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(""),
        None => "none".into(),
    };
    let prime_str = |p: &Option<u64>| p.map(|p| p.to_string()).unwrap_or_else(|| "none".into());
    match fmt {
        Format::Csv => {
            csv_header(out, "classify", "delta,epsilon,condition_prime")?;
            for (d, e, p) in &conditions {
                writeln!(out, "{d},{},{}", eps_str(e), prime_str(p))?;
            }
            writeln!(out, "# class_c={} class_d={}", show(&class_c), show(&class_d))?;
        }
        Format::Text => {
            writeln!(
                out,
                "classify v1\nsequence = {}\nclass_c = {}\nclass_d = {}",
                seq.spec_string(),
                show(&class_c),
                show(&class_d)
            )?;
            if let Ok(p) = &profile {
                writeln!(out, "profile = {p}")?;
            }
            for (d, e, p) in &conditions {
                writeln!(out, "condition[{d}] = {} {}", eps_str(e), prime_str(p))?;
            }
        }
        Format::Human => {
            writeln!(out, "{seq}")?;
            match &profile {
                Ok(p) => writeln!(out, "quadratic {p}")?,
                Err(e) => writeln!(out, "quadratic profile unavailable: {e}")?,
            }
            if let Ok(fp) = &fields {
                let join = |v: &[num_bigint::BigInt]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
                writeln!(
                    out,
                    "root fields: f {{{}}}, g {{{}}}",
                    join(&fp.f_fields),
                    join(&fp.g_fields)
                )?;
            }
            writeln!(out, "class C: {}", show(&class_c))?;
            writeln!(out, "class D (quadratic criterion): {}", show(&class_d))?;
            for (d, e, p) in &conditions {
                writeln!(
                    out,
                    "Δ = {d}: ε = {}, smallest condition prime <= {pmax}: {}",
                    eps_str(e),
                    prime_str(p)
                )?;
            }
        }
    }
    Ok(())
}

fn membership(args: &SeqArgs, targets: &[String], cfg: &MembershipConfig, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    let items: Vec<(HypergeomSeq, hypergeom::Rational)> = targets
        .iter()
        .map(|t| parse_rational(t).map(|t| (seq.clone(), t)))
        .collect::<Result<_, _>>()?;
    let verdicts = decide_batch(&items, cfg);
    match fmt {
        Format::Csv => {
            csv_header(out, "membership", &format!("target,{}", MembershipVerdict::CSV_HEADER))?;
            for ((_, t), v) in items.iter().zip(&verdicts) {
                writeln!(out, "{t},{}", v.to_csv_row())?;
            }
        }
        Format::Text => {
            for ((_, t), v) in items.iter().zip(&verdicts) {
                write!(out, "{}", v.to_text())?;
                writeln!(out, "target = {t}")?;
            }
        }
        Format::Human => {
            writeln!(out, "{seq}")?;
            for ((_, t), v) in items.iter().zip(&verdicts) {
                writeln!(out, "t = {t}: {}", v.outcome)?;
                if let Some(c) = &v.certificate {
                    writeln!(out, "  certificate {c}")?;
                }
                if let Some(n0) = v.bound_n0 {
                    writeln!(out, "  |ν_p(u_n)| > |ν_p(t)| for all n >= {n0}")?;
                }
                writeln!(
                    out,
                    "  {}; {} terms checked in {:.1} ms",
                    v.basis,
                    v.terms_checked,
                    v.elapsed.as_secs_f64() * 1e3
                )?;
            }
        }
    }
    Ok(())
}

fn equidist(args: &EquidistArgs, fmt: Format, out: Out) -> CliResult<()> {
    let delta = parse_int(&args.delta)?;
    let r = parse_rational(&args.r)?;
    let s = parse_rational(&args.s)?;
    if let Some(n) = args.window_n {
        let w = window_count(&delta, args.q, args.a, &r, &s, n, args.window, args.alpha, args.beta)?;
        match fmt {
            Format::Csv => {
                csv_header(out, "window", "n,window,alpha,beta,qualifying,hits,sample_hits")?;
                writeln!(
                    out,
                    "{n},{},{},{},{},{},{}",
                    args.window, args.alpha, args.beta, w.qualifying, w.hits, w.sample_hits
                )?;
            }
            Format::Text => writeln!(
                out,
                "window v1\nn = {n}\nwindow = {}\nalpha = {}\nbeta = {}\nqualifying = {}\nhits = {}\nsample_hits = {}",
                args.window, args.alpha, args.beta, w.qualifying, w.hits, w.sample_hits
            )?,
            Format::Human => {
                writeln!(
                    out,
                    "{} qualifying primes in [{n}, {}); {} with a representative in [{}, {}); {} of {} samples in range",
                    w.qualifying,
                    ((1.0 + args.window) * n as f64).ceil(),
                    w.hits,
                    args.alpha,
                    args.beta,
                    w.sample_hits,
                    2 * w.qualifying
                )?;
            }
        }
        return Ok(());
    }
    let rep = equidistribution_sample(&delta, args.q, args.a, &r, &s, args.plimit, args.bins)?;
    match fmt {
        Format::Csv => {
            writeln!(out, "# hypergeom equidist v1")?;
            write!(out, "{}", rep.to_csv())?;
        }
        Format::Text => {
            writeln!(
                out,
                "equidist v1\ndelta = {}\nq = {}\na = {}\np_limit = {}\nprimes = {}\nskipped = {}\nsamples = {}\nstar_discrepancy = {}",
                rep.delta, rep.q, rep.a, rep.p_limit, rep.primes_used, rep.primes_skipped, rep.samples, rep.star_discrepancy
            )?;
            for (l, r, f) in &rep.bins {
                writeln!(out, "bin = {l},{r},{f}")?;
            }
        }
        Format::Human => {
            let progression = if rep.q > 1 {
                format!(", p ≡ {} mod {}", rep.a, rep.q)
            } else {
                String::new()
            };
            writeln!(
                out,
                "rep({} ± {}·√{}) / p over {} primes p <= {}{progression}, {} samples",
                r, s, rep.delta, rep.primes_used, rep.p_limit, rep.samples
            )?;
            for (l, rr, f) in &rep.bins {
                let bar = "#".repeat((f * 400.0).round() as usize);
                writeln!(out, "[{l:.3}, {rr:.3})  {f:.4}  {bar}")?;
            }
            writeln!(out, "star discrepancy {:.6}", rep.star_discrepancy)?;
            if rep.primes_skipped > 0 {
                writeln!(
                    out,
                    "{} primes skipped (denominator vanishes mod p)",
                    rep.primes_skipped
                )?;
            }
        }
    }
    Ok(())
}

fn padic_lift(
    poly: &str,
    p: u64,
    digits: usize,
    run_at: Option<usize>,
    freq: Option<usize>,
    fmt: Format,
    out: Out,
) -> CliResult<()> {
    let f = parse_poly(poly)?;
    if digits == 0 {
        return Err(Error::InvalidArgument("need at least one digit".into()).into());
    }
    let roots = lift_all_roots(&f, p, digits)?;
    match fmt {
        Format::Csv => csv_header(out, "padic", "root,value,digits,run")?,
        Format::Text => writeln!(out, "padic v1\npoly = {f}\np = {p}\nroots = {}", roots.len())?,
        Format::Human => writeln!(
            out,
            "{} root(s) of {f} in Z_{p}, {digits} digits, least significant first",
            roots.len()
        )?,
    }
    for (i, root) in roots.iter().enumerate() {
        let run = run_at.map(|s| zero_run_length(root, s)).transpose()?;
        let run_s = run.map(|r| r.to_string()).unwrap_or_default();
        match fmt {
            Format::Csv => writeln!(out, "{i},{},{},{run_s}", root.value(), root.digit_dump())?,
            Format::Text => {
                writeln!(
                    out,
                    "root[{i}].value = {}\nroot[{i}].digits = {}",
                    root.value(),
                    root.digit_dump()
                )?;
                if run.is_some() {
                    writeln!(out, "root[{i}].run = {run_s}")?;
                }
            }
            Format::Human => {
                writeln!(out, "root {i}: {} (mod {p}^{digits})", root.value())?;
                writeln!(out, "  digits {}", root.digit_dump())?;
                if let (Some(s), Some(r)) = (run_at, run) {
                    writeln!(out, "  zero run from digit {s}: {r}")?;
                }
            }
        }
        if let Some(len) = freq {
            let table = digit_frequency(root, len)?;
            let freqs: Vec<String> = table.frequencies().iter().map(|f| format!("{f:.4}")).collect();
            match fmt {
                Format::Csv => writeln!(out, "# root {i} pattern frequencies: {}", freqs.join(" "))?,
                Format::Text => writeln!(out, "root[{i}].frequencies = {}", freqs.join(" "))?,
                Format::Human => writeln!(
                    out,
                    "  length-{len} pattern frequencies over {} windows: {}",
                    table.windows,
                    freqs.join(" ")
                )?,
            }
        }
    }
    Ok(())
}

fn padic_identity(args: &SeqArgs, p: u64, s: u32, fmt: Format, out: Out) -> CliResult<()> {
    let seq = load_seq(args)?;
    let v = valuation_at_prime_power_general(&seq, p, s)?;
    let runs = |r: &[usize]| r.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
    match fmt {
        Format::Csv => {
            csv_header(out, "padic-identity", "p,s,direct,digit_formula,f_runs,g_runs")?;
            writeln!(
                out,
                "{p},{s},{},{},{},{}",
                v.direct,
                v.digit_formula,
                runs(&v.f_runs),
                runs(&v.g_runs)
            )?;
        }
        Format::Text => writeln!(
            out,
            "padic-identity v1\np = {p}\ns = {s}\ndirect = {}\ndigit_formula = {}\nf_runs = {}\ng_runs = {}",
            v.direct,
            v.digit_formula,
            runs(&v.f_runs),
            runs(&v.g_runs)
        )?,
        Format::Human => {
            writeln!(out, "{seq}")?;
            writeln!(
                out,
                "ν_{p}(u_{{{p}^{s}}}) = {} directly, {} from digit runs",
                v.direct, v.digit_formula
            )?;
            writeln!(
                out,
                "  runs for the roots of f: [{}], of g: [{}]",
                runs(&v.f_runs),
                runs(&v.g_runs)
            )?;
        }
    }
    if v.direct != v.digit_formula {
        return Err(Error::InvalidArgument("the two sides disagree".into()).into());
    }
    Ok(())
}
