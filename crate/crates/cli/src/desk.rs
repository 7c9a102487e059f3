//! `qcg verify`: desk-scale runs of the library identity suites.

use std::process::ExitCode;

use qcg::verify::{self, Tally};
use qcg::{HalfInt, QContext, QReal, Result as QResult};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::write_json;
use crate::Format;

pub struct Options {
    pub qs: Vec<String>,
    pub precision: u32,
    pub suites: Vec<String>,
    pub tolerance: Option<String>,
    pub cap: String,
    pub perturb: Option<String>,
    pub format: Option<Format>,
}

struct Desk {
    ctxs: Vec<QContext>,
    cap: HalfInt,
}

type Rows = Vec<(String, Tally)>;

struct Suite {
    name: &'static str,
    group: &'static str,
    run: fn(&Desk) -> QResult<Rows>,
}

const SEED: u64 = 0x05ee_dc6c;

fn one(name: &str, t: Tally) -> Rows {
    vec![(name.to_string(), t)]
}

fn oracle_cap() -> HalfInt {
    HalfInt::from_twice(3)
}

const SUITES: &[Suite] = &[
    Suite {
        name: "identities",
        group: "qhyper",
        run: |d| {
            let i = verify::identities(&d.ctxs, 200, SEED)?;
            Ok(vec![
                ("vandermonde".into(), i.vandermonde),
                ("summation".into(), i.summation),
                ("dixon".into(), i.dixon),
                ("transformations".into(), i.transformation),
                ("basic-series".into(), i.basic),
            ])
        },
    },
    Suite { name: "lemma1", group: "repsu", run: |d| Ok(one("lemma1", verify::lemma1(oracle_cap(), 3, &d.ctxs))) },
    Suite {
        name: "projector",
        group: "repsu",
        run: |d| Ok(one("projector", verify::projector_laws(oracle_cap(), &d.ctxs))),
    },
    Suite {
        name: "cross-formula",
        group: "cgc",
        run: |d| Ok(one("cross-formula", verify::cross_formula(d.cap, &d.ctxs)?)),
    },
    Suite {
        name: "oracle",
        group: "cgc",
        run: |d| {
            let (p, l) = verify::oracle(oracle_cap(), &d.ctxs)?;
            Ok(vec![("oracle-projector".into(), p), ("oracle-lowering".into(), l)])
        },
    },
    Suite { name: "unitarity", group: "cgc", run: |d| Ok(one("unitarity", verify::unitarity(d.cap, &d.ctxs)?)) },
    Suite {
        name: "symmetry",
        group: "cgc",
        run: |d| {
            let v = verify::symmetry(100, d.cap, &d.ctxs, SEED)?;
            Ok(v.into_iter().map(|(id, t)| (format!("symmetry-{}", id), t)).collect())
        },
    },
    Suite {
        name: "special",
        group: "cgc",
        run: |d| {
            let mut v: Rows = verify::special(d.cap, &d.ctxs)?
                .into_iter()
                .map(|(k, t)| (format!("special {}", k.name()), t))
                .collect();
            v.push(("special dixon q=1".into(), verify::dixon_exact(4)));
            Ok(v)
        },
    },
    Suite {
        name: "recurrence",
        group: "cgc",
        run: |d| {
            let (j, m) = verify::recurrence(HalfInt::int(2).min(d.cap), &d.ctxs)?;
            Ok(vec![("recurrence-j".into(), j), ("recurrence-m".into(), m)])
        },
    },
    Suite {
        name: "hahn",
        group: "hahn",
        run: |d| {
            let sets = [
                (4, HalfInt::ONE, HalfInt::ONE),
                (5, HalfInt::ONE, HalfInt::int(2)),
                (6, HalfInt::HALF, HalfInt::from_twice(3)),
            ];
            let h = verify::hahn(&sets, &d.ctxs)?;
            Ok(vec![
                ("hahn-gram".into(), h.gram),
                ("hahn-ttrr".into(), h.ttrr),
                ("hahn-difference".into(), h.difference),
                ("hahn-forms".into(), h.forms),
            ])
        },
    },
    Suite {
        name: "connection",
        group: "hahn",
        run: |d| {
            let (a, b) = verify::connection(HalfInt::int(2).min(d.cap), &d.ctxs)?;
            Ok(vec![("connection-j1".into(), a), ("connection-j2".into(), b)])
        },
    },
];

struct Line {
    suite: &'static str,
    group: &'static str,
    check: String,
    tally: Tally,
    pass: bool,
}

pub fn run(o: &Options) -> Result<ExitCode, String> {
    if o.qs.is_empty() {
        return Err("verify: --q needs at least one value".into());
    }
    for s in &o.suites {
        if !SUITES.iter().any(|x| x.name == s || x.group == s) {
            let names: Vec<&str> = SUITES.iter().map(|x| x.name).collect();
            return Err(format!("unknown suite {:?}; groups: qhyper repsu cgc hahn; suites: {}", s, names.join(" ")));
        }
    }
    let ctxs = o
        .qs
        .iter()
        .map(|q| QContext::new(q, o.precision))
        .collect::<QResult<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let cap: HalfInt = o.cap.parse().map_err(|e| format!("--cap: {}", e))?;
    let bits = ctxs[0].bits();
    let parse = |s: &str, what: &str| QReal::parse(s, bits).ok_or_else(|| format!("{}: bad number {:?}", what, s));
    // 1e-35 at the default 50 digits
    let default_tol = format!("1e-{}", o.precision.saturating_sub(15).max(1));
    let tol = parse(o.tolerance.as_deref().unwrap_or(&default_tol), "--tolerance")?;
    let perturb = o.perturb.as_deref().map(|p| parse(p, "--perturb")).transpose()?;
    let desk = Desk { ctxs, cap };

    let mut lines = Vec::new();
    for s in SUITES.iter().filter(|s| o.suites.is_empty() || o.suites.iter().any(|x| x == s.name || x == s.group)) {
        for (check, mut tally) in (s.run)(&desk).map_err(|e| format!("suite {}: {}", s.name, e))? {
            if let Some(p) = &perturb {
                tally.max = &tally.max + p;
            }
            let pass = tally.within(&tol);
            lines.push(Line { suite: s.name, group: s.group, check, tally, pass });
        }
    }
    let failed: Vec<&str> = {
        let mut v: Vec<&str> = lines.iter().filter(|l| !l.pass).map(|l| l.suite).collect();
        v.dedup();
        v
    };

    match o.format {
        None => {
            for l in &lines {
                println!(
                    "{} {:<8} {:<28} {:>6} checks  max {:.3e}{}",
                    if l.pass { "PASS" } else { "FAIL" },
                    l.group,
                    l.check,
                    l.tally.checks,
                    l.tally.max.to_f64(),
                    if l.pass { String::new() } else { format!("  worst {}", l.tally.worst) }
                );
            }
            println!("tolerance {:.1e}; {} of {} checks passed", tol.to_f64(), lines.iter().filter(|l| l.pass).count(), lines.len());
        }
        Some(f) => {
            let rows: Vec<Vec<String>> = lines
                .iter()
                .map(|l| {
                    vec![
                        l.suite.to_string(),
                        l.group.to_string(),
                        l.check.clone(),
                        l.tally.checks.to_string(),
                        l.tally.skipped.to_string(),
                        format!("{:.6e}", l.tally.max.to_f64()),
                        format!("{:.1e}", tol.to_f64()),
                        l.pass.to_string(),
                        l.tally.worst.clone(),
                    ]
                })
                .collect();
            let cols = ["suite", "group", "check", "checks", "skipped", "max_residual", "tolerance", "pass", "worst"];
            let mut table = crate::output::Table::new(&cols);
            for r in rows {
                table.push(r);
            }
            if f == Format::Csv {
                table.write_csv()?;
            } else {
                let mut cfg = RunConfig::new("verify", &o.qs.join(","), o.precision, "json").spin("cap", cap);
                cfg.tolerance = Some(o.tolerance.clone().unwrap_or(default_tol));
                for s in &o.suites {
                    cfg = cfg.flag(format!("suite={}", s));
                }
                if let Some(p) = &o.perturb {
                    cfg = cfg.flag(format!("perturb={}", p));
                }
                let failed_json: Vec<Value> = failed.iter().map(|s| json!(s)).collect();
                write_json(&cfg, table.json_rows(), json!({"checks": lines.len(), "failed_suites": failed_json}))?;
            }
        }
    }
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing suites: {}", failed.join(" "));
        Ok(ExitCode::from(1))
    }
}
