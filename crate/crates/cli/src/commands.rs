use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;

use gapsieve::census::{driving_terms_for_constellation, Census, Constellation};
use gapsieve::cycle::{
    build_primorial_cycle, compact_gaps, oracle_cycle, stream_primorial_cycle, verify_cycle,
    write_cache, GapCycle,
};
use gapsieve::dynsys::{
    asymptotic_ratio, crossover as find_crossover, eigenvalue_products_with, step, validity,
    Crossover, PopulationVector, ProductOptions, Validity,
};
use gapsieve::polignac::{hl_ratio, partial_ratio, repetition_weight, write_asymptotics_csv};
use gapsieve::primal::primes_in;
use gapsieve::report::{csv_writer, decimal, ratio};
use gapsieve::survival::{
    attrition as run_attrition, attrition_histograms, error_report, write_error_report,
};

use crate::args::*;
use crate::source::{check_prime, load, load_file, primorial_prime};
use crate::{CliError, CliResult};

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

fn cycle_line(cycle: &GapCycle) -> String {
    format!("cycle N = {} ({} gaps)", cycle.modulus(), cycle.len())
}

fn target_label(s: &Constellation) -> String {
    if s.len() == 1 {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

fn warn_validity(s: &Constellation, p0: u64) {
    match validity(s, p0) {
        Validity::Full => {}
        Validity::AsymptoticOnly => eprintln!(
            "warning: {s} spans at least 2 * p1 from {p0}#; only the asymptotic weight is exact"
        ),
        Validity::Invalid => eprintln!(
            "warning: {s} spans at least 2 * p1 from {p0}# and has interval sums with prime \
             factors above {p0}; start from a larger primorial"
        ),
    }
}

pub fn build(a: BuildArgs) -> CliResult {
    check_prime(a.prime)?;
    let Some(path) = a.out else {
        println!("{}", build_primorial_cycle(a.prime)?.compact());
        return Ok(());
    };
    let n = if a.stream {
        let mut w = create(&path)?;
        let n = stream_primorial_cycle(a.prime, &mut w)?;
        w.flush()?;
        n
    } else {
        let cycle = build_primorial_cycle(a.prime)?;
        write_cache(&path, &cycle)?;
        cycle.len() as u64
    };
    println!("wrote {n} gaps of G({}#) to {}", a.prime, path.display());
    Ok(())
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let cycle = load(&a.source)?;
    let report = verify_cycle(&cycle);
    print!("{report}");
    let mut failed = report.failures().count();
    if a.oracle {
        let same = oracle_cycle(cycle.modulus())? == cycle;
        let tag = if same { "ok  " } else { "FAIL" };
        println!("{tag} {:<17} gcd scan of 1..=N", "oracle");
        failed += usize::from(!same);
    }
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} checks failed")));
    }
    Ok(())
}

fn write_census_csv(w: impl Write, rows: &[Census], max_len: usize, meta: &[String]) -> CliResult {
    let mut out = csv_writer(w, meta)?;
    out.write_record(["target", "j", "count", "normalized_ratio"])
        .map_err(gapsieve::Error::from)?;
    for c in rows {
        let reference = BigRational::from_integer(c.reference().into());
        for j in 1..=max_len {
            let n = c.count(j);
            let r = BigRational::from_integer(n.into()) / &reference;
            out.write_record([c.target.to_string(), j.to_string(), n.to_string(), ratio(&r)])
                .map_err(gapsieve::Error::from)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn census(a: CensusArgs) -> CliResult {
    let targets: Vec<Constellation> = match a.constellation {
        Some(s) => vec![s],
        None => a
            .gap
            .iter()
            .map(|&g| Constellation::gap(g))
            .collect::<Result<_, _>>()?,
    };
    if a.max_len == Some(0) {
        return Err(CliError::Usage("--max-len must be at least 1".into()));
    }
    let cycle = load(&a.source)?;
    let rows: Vec<Census> = targets
        .iter()
        .map(|s| driving_terms_for_constellation(&cycle, s))
        .collect();
    let longest = rows.iter().map(Census::max_len).max().unwrap_or(1).max(1);
    let max_len = a.max_len.unwrap_or(longest);
    let mut stdout = io::stdout().lock();
    for c in &rows {
        let counts: Vec<String> = (1..=max_len).map(|j| c.count(j).to_string()).collect();
        writeln!(stdout, "{},{}", target_label(&c.target), counts.join(","))?;
        if c.max_len() > max_len {
            eprintln!(
                "warning: {} has driving terms up to length {}, beyond --max-len {max_len}",
                c.target,
                c.max_len()
            );
        }
    }
    if let Some(path) = a.csv {
        let meta = vec!["gapsieve census".to_string(), cycle_line(&cycle)];
        write_census_csv(create(&path)?, &rows, max_len, &meta)?;
    }
    Ok(())
}

pub fn model(a: ModelArgs) -> CliResult {
    let s = match (a.gap, a.constellation) {
        (Some(g), _) => Constellation::gap(g)?,
        (None, Some(s)) => s,
        (None, None) => return Err(CliError::Usage("give --gap or --constellation".into())),
    };
    let cycle = load(&a.source)?;
    let p0 = primorial_prime(&cycle)?;
    if a.to_prime <= p0 {
        return Err(CliError::Usage(format!(
            "--to-prime {} must exceed the cycle's prime {p0}",
            a.to_prime
        )));
    }
    warn_validity(&s, p0);
    let mut v = PopulationVector::from_census(&driving_terms_for_constellation(&cycle, &s))?;
    let mut stages = vec![v.clone()];
    for p in primes_in(p0 + 1, a.to_prime)? {
        v = step(&v, p)?;
        stages.push(v.clone());
    }
    let meta = vec![
        "gapsieve model".to_string(),
        format!("target {s} from {p0}# to {}", a.to_prime),
    ];
    let sink: Box<dyn Write> = match &a.csv {
        Some(path) => Box::new(create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = csv_writer(sink, &meta)?;
    out.write_record(["prime", "j", "raw_count", "ratio"])
        .map_err(gapsieve::Error::from)?;
    for stage in &stages {
        let raw = stage.to_raw();
        let norm = stage.to_normalized();
        for j in stage.j1()..=stage.max_len() {
            out.write_record([
                stage.prime().to_string(),
                j.to_string(),
                ratio(&raw.get(j)),
                ratio(&norm.get(j)),
            ])
            .map_err(gapsieve::Error::from)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn print_ratio(r: &BigRational, with_decimal: bool) {
    if with_decimal {
        println!("{} {}", ratio(r), decimal(r, 4));
    } else {
        println!("{}", ratio(r));
    }
}

pub fn asymptotic(a: AsymptoticArgs) -> CliResult {
    if let Some(g) = a.gap {
        let w = match a.at_prime {
            Some(p) => partial_ratio(g, p)?,
            None => hl_ratio(g)?,
        };
        print_ratio(&w, a.decimal);
        if let Some(path) = a.csv {
            let meta = vec!["gapsieve asymptotic".to_string()];
            write_asymptotics_csv(create(&path)?, &[g], a.at_prime, &meta)?;
        }
        return Ok(());
    }
    let (Some(s), Some(path)) = (a.constellation, a.cycle) else {
        return Err(CliError::Usage("give --gap G or --constellation LIST --cycle FILE".into()));
    };
    let cycle = load_file(&path)?;
    let p0 = primorial_prime(&cycle)?;
    warn_validity(&s, p0);
    let v = PopulationVector::from_census(&driving_terms_for_constellation(&cycle, &s))?;
    if v.entries().iter().all(Zero::is_zero) {
        eprintln!("warning: {s} does not occur in G({p0}#)");
    }
    print_ratio(&asymptotic_ratio(&v), a.decimal);
    Ok(())
}

pub fn repetition(a: RepetitionArgs) -> CliResult {
    let r = repetition_weight(a.gap, a.length)?;
    match r.w_infinity {
        Some(w) => println!("{}", ratio(&w)),
        None => println!(
            "infeasible: {} repeated {} times needs every prime up to {} to divide {}",
            a.gap,
            a.length,
            a.length + 1,
            a.gap
        ),
    }
    Ok(())
}

pub fn ajk(a: AjkArgs) -> CliResult {
    if a.jmax < 2 {
        return Err(CliError::Usage("--jmax must be at least 2".into()));
    }
    let opts = ProductOptions {
        budget: a.budget,
        ..ProductOptions::default()
    };
    let products = eigenvalue_products_with(a.p0, a.pk, a.jmax, &opts)?;
    for (k, x) in products.iter().enumerate() {
        println!("a_{} = {x:.14}", k + 2);
    }
    Ok(())
}

pub fn crossover(a: CrossoverArgs) -> CliResult {
    let cycle = load(&a.source)?;
    let p0 = primorial_prime(&cycle)?;
    let vector = |g: u64| -> CliResult<PopulationVector> {
        let s = Constellation::gap(g)?;
        warn_validity(&s, p0);
        Ok(PopulationVector::from_census(&driving_terms_for_constellation(&cycle, &s))?)
    };
    match find_crossover(&vector(a.gap_a)?, &vector(a.gap_b)?)? {
        Crossover::Root(x) => println!("{x:.6}"),
        Crossover::None => println!("none"),
    }
    Ok(())
}

pub fn attrition(a: AttritionArgs) -> CliResult {
    let cycle = load(&a.source)?;
    let t = run_attrition(&cycle)?;
    println!("start: G({}#), {} gaps", t.pk, cycle.len());
    match (t.steps.first(), t.steps.last()) {
        (Some(first), Some(last)) => println!(
            "sieving primes: {} to {} ({} primes)",
            first.q,
            last.q,
            t.steps.len()
        ),
        _ => println!("sieving primes: none"),
    }
    let max = t.max_gap();
    println!("final: {} gaps, largest {max}", t.gaps.len());
    match t.first_created(max) {
        Some(q) => println!("gap {max} first appears after sieving by {q}"),
        None => println!("gap {max} is present from the start"),
    }
    if t.gaps.len() <= 64 {
        let narrow: Vec<u16> = t.gaps.iter().map(|&g| g as u16).collect();
        println!("survivors: {}", compact_gaps(&narrow));
    }
    if let Some(path) = a.csv {
        let meta = vec!["gapsieve attrition".to_string(), cycle_line(&cycle)];
        attrition_histograms(&t, create(&path)?, &meta)?;
    }
    Ok(())
}

pub fn naive_error(a: NaiveErrorArgs) -> CliResult {
    let mut targets: Vec<Constellation> = a
        .gaps
        .iter()
        .map(|&g| Constellation::gap(g))
        .collect::<Result<_, _>>()?;
    targets.extend(a.constellation);
    if targets.is_empty() {
        return Err(CliError::Usage("give --gaps and/or --constellation".into()));
    }
    let rows = error_report(a.pmin, a.pmax, &targets, a.budget)?;
    let meta = vec![
        "gapsieve naive-error".to_string(),
        format!("p_k from {} to {}", a.pmin, a.pmax),
    ];
    write_error_report(create(&a.csv)?, &rows, &meta)?;
    let worst = rows
        .iter()
        .filter_map(|r| r.rel_error())
        .map(f64::abs)
        .fold(0.0, f64::max);
    println!("{} rows, largest |relative error| {worst:.4}", rows.len());
    Ok(())
}
