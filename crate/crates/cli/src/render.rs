use std::fmt::Write as _;

use gf2sigma::classify::{self, classify_all, ClassRecord, TableRow, MIN_TABLE_DEGREE};
use gf2sigma::factorize::{factor as factor_poly, sigma as sigma_poly};
use gf2sigma::mersenne::{self, MersenneJson, MersennePrime};
use gf2sigma::sigma_chain::{analyze_cached, FactorCache};
use gf2sigma::verify::{run_campaign, Outcome};
use gf2sigma::{Gf2Poly, Result};
use serde::Serialize;

use crate::{Config, Format, Output};

fn ok(text: String) -> Result<Output> {
    Ok(Output {
        text,
        failed: false,
    })
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn factor(cfg: &Config, poly: &Gf2Poly) -> Result<Output> {
    let f = factor_poly(poly, cfg.seed)?;
    ok(match cfg.format {
        Format::Text | Format::Markdown => format!("{f}\n"),
        Format::Json => json_line(&f.to_json())?,
        Format::Csv => {
            let mut s = String::from("poly,poly_hex,mult\n");
            for (p, k) in f.factors() {
                writeln!(s, "{p},{},{k}", p.to_hex()).unwrap();
            }
            s
        }
    })
}

pub fn sigma(cfg: &Config, poly: &Gf2Poly) -> Result<Output> {
    let s = sigma_poly(poly)?;
    ok(match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct SigmaJson {
                input: String,
                sigma: String,
            }
            json_line(&SigmaJson {
                input: poly.to_hex(),
                sigma: s.to_hex(),
            })?
        }
        Format::Csv => format!("input_hex,sigma_hex\n{},{}\n", poly.to_hex(), s.to_hex()),
        Format::Text | Format::Markdown => format!("{s}\n"),
    })
}

pub fn mersenne_list(cfg: &Config, min: u32, max: u32) -> Result<Output> {
    let ms = mersenne::enumerate(min, max)?;
    let mut s = String::new();
    match cfg.format {
        Format::Csv => {
            writeln!(s, "{}", mersenne::CSV_HEADER).unwrap();
            for m in &ms {
                writeln!(s, "{}", m.csv_row()).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<MersenneJson> = ms.iter().map(MersenneJson::from).collect();
            s = json_line(&rows)?;
        }
        Format::Markdown => {
            s.push_str("| deg | a | b | poly |\n|---|---|---|---|\n");
            for m in &ms {
                writeln!(s, "| {} | {} | {} | {} |", m.degree(), m.a(), m.b(), m.poly()).unwrap();
            }
        }
        Format::Text => {
            for m in &ms {
                writeln!(s, "{} {} {} {}", m.degree(), m.a(), m.b(), m.poly()).unwrap();
            }
        }
    }
    ok(s)
}

pub fn analyze(cfg: &Config, a: u32, b: u32, p: u32, cache: Option<&FactorCache>) -> Result<Output> {
    let m = MersennePrime::build(a, b)?;
    let s = analyze_cached(&m, p, cfg.seed, cache)?;
    let json = s.to_json();
    ok(match cfg.format {
        Format::Json => json_line(&json)?,
        Format::Csv => format!(
            "a,b,p,c,m,e,all_mersenne,w_zero,omega\n{a},{b},{p},{},{},{},{},{},{}\n",
            opt(s.c),
            opt(s.m),
            opt(s.e),
            s.all_mersenne,
            s.w_zero(),
            s.factorization.omega()
        ),
        Format::Text | Format::Markdown => {
            let mut t = String::new();
            writeln!(t, "M = {}  (a={a}, b={b}, deg={})", m.poly(), m.degree()).unwrap();
            writeln!(t, "p = {p}, h = {}", s.h).unwrap();
            writeln!(t, "sigma(M^2h) = {}", s.factorization).unwrap();
            writeln!(t, "all factors Mersenne: {}", s.all_mersenne).unwrap();
            writeln!(t, "W = {}", s.w).unwrap();
            writeln!(t, "c = {}  m = {}  e = {}", opt(s.c), opt(s.m), opt(s.e)).unwrap();
            t
        }
    })
}

fn record_text(r: &ClassRecord) -> String {
    let s = &r.analysis;
    let set = r.set_index().map_or_else(|| "-".to_string(), |i| i.to_string());
    format!(
        "{} {} {} c={} m={} set={set} case={}",
        s.mersenne.degree(),
        s.mersenne.a(),
        s.mersenne.b(),
        opt(s.c),
        opt(s.m),
        r.case_tag
    )
}

pub fn classify(cfg: &Config, p: u32, max_degree: u32, cache: Option<&FactorCache>) -> Result<Output> {
    let ms = mersenne::enumerate(MIN_TABLE_DEGREE, max_degree)?;
    let records = classify_all(&ms, p, cfg.seed, cache)?;
    let row = TableRow::from_records(p, max_degree, &records);
    let mut s = String::new();
    match cfg.format {
        Format::Json => {
            for r in &records {
                s.push_str(&json_line(&r.to_json())?);
            }
            s.push_str(&json_line(&row)?);
        }
        Format::Csv => {
            s.push_str("deg,a,b,p,c,m,set,case_tag\n");
            for r in &records {
                let a = &r.analysis;
                writeln!(
                    s,
                    "{},{},{},{p},{},{},{},{}",
                    a.mersenne.degree(),
                    a.mersenne.a(),
                    a.mersenne.b(),
                    a.c.map_or(String::new(), |v| v.to_string()),
                    a.m.map_or(String::new(), |v| v.to_string()),
                    r.set_index().map_or(String::new(), |v| v.to_string()),
                    r.case_tag
                )
                .unwrap();
            }
        }
        Format::Markdown => {
            s = classify::render_markdown(&[row]) + "\n";
        }
        Format::Text => {
            for r in &records {
                writeln!(s, "{}", record_text(r)).unwrap();
            }
            let [l1, l2, l3, l4] = row.lambda;
            writeln!(s, "p={p} d={max_degree}: lambda = {l1} {l2} {l3} {l4} of {}", row.m_count).unwrap();
        }
    }
    ok(s)
}

pub fn table(cfg: &Config, primes: &[u32], max_degree: u32, cache: Option<&FactorCache>) -> Result<Output> {
    let rows = classify::table(primes, max_degree, cfg.seed, cache)?;
    ok(match cfg.format {
        Format::Csv => classify::render_csv(&rows) + "\n",
        Format::Json => json_line(&rows)?,
        Format::Text | Format::Markdown => classify::render_markdown(&rows) + "\n",
    })
}

pub fn verify_theorem(cfg: &Config, primes: &[u32], max_degree: u32, cache: Option<&FactorCache>) -> Result<Output> {
    let c = run_campaign(primes, max_degree, cfg.seed, cache)?;
    let text = match cfg.format {
        Format::Json => c.verdict_lines()?,
        Format::Csv => {
            let mut s = String::from("a,b,p,status,witness_hex\n");
            for v in c.verdicts() {
                let j = v.to_json();
                let status = serde_json::to_value(j.status)?;
                writeln!(s, "{},{},{},{},{}", j.a, j.b, j.p, status.as_str().unwrap_or(""), j.witness.unwrap_or_default())
                    .unwrap();
            }
            s
        }
        Format::Text | Format::Markdown => {
            let mut s = String::new();
            for (a, b, p, e) in &c.errors {
                writeln!(s, "error a={a} b={b} p={p}: {e}").unwrap();
            }
            let s0 = c.summary();
            s + s0.lines().next().unwrap_or("") + "\n"
        }
    };
    for (a, b, p, e) in &c.errors {
        eprintln!("error a={a} b={b} p={p}: {e}");
    }
    Ok(Output {
        text,
        failed: c.violations() > 0 || !c.is_complete(),
    })
}

pub fn verify_lemmas(cfg: &Config, primes: &[u32], max_degree: u32, cache: Option<&FactorCache>) -> Result<Output> {
    let c = run_campaign(primes, max_degree, cfg.seed, cache)?;
    let text = match cfg.format {
        Format::Json => json_line(&c.report)?,
        Format::Csv => {
            let mut s = String::from("name,scope,outcome,instances,vacuous\n");
            for e in &c.report.entries {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    e.name,
                    format!("{:?}", e.scope).to_lowercase(),
                    format!("{:?}", e.outcome).to_lowercase(),
                    e.instances,
                    e.vacuous
                )
                .unwrap();
            }
            s
        }
        Format::Text | Format::Markdown => {
            let mut s = c.summary();
            for e in c.report.failures() {
                for ce in &e.counterexamples {
                    writeln!(s, "counterexample {}: {ce}", e.name).unwrap();
                }
            }
            s
        }
    };
    for (a, b, p, e) in &c.errors {
        eprintln!("error a={a} b={b} p={p}: {e}");
    }
    let failed = c.report.entries.iter().any(|e| e.outcome == Outcome::Fail) || !c.is_complete();
    Ok(Output { text, failed })
}
