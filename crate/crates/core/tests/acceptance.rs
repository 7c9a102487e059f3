//! Acceptance criteria at 50 digits. One PASS/FAIL line per criterion; exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use qcg::qcore::{HalfInt, QContext, QReal};
use qcg::verify::{self, Tally};
use qcg::Result;

const DIGITS: u32 = 50;
const SEED: u64 = 0x05ee_dc6c;

fn ctxs(qs: &[&str]) -> Vec<QContext> {
    qs.iter().map(|q| QContext::new(q, DIGITS).expect("valid q")).collect()
}

fn tol(s: &str) -> QReal {
    QContext::new("0.5", DIGITS).unwrap().real(s).unwrap()
}

fn sci(x: &QReal) -> String {
    format!("{:.2e}", x.to_f64())
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn judge(parts: &[(&str, &Tally)], limit: &QReal) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, t) in parts {
        let ok = t.within(limit);
        pass &= ok;
        let mut s = format!("{} {} checks max {}", name, t.checks, sci(&t.max));
        if t.skipped > 0 {
            s.push_str(&format!(" ({} skipped)", t.skipped));
        }
        if !ok {
            s.push_str(&format!(" worst {}", t.worst));
        }
        detail.push(s);
    }
    Outcome { pass, detail: format!("{} [tol {}]", detail.join("; "), sci(limit)) }
}

fn c1() -> Result<Outcome> {
    let t = verify::cross_formula(HalfInt::int(3), &ctxs(&["0.3", "0.5", "0.9"]))?;
    Ok(judge(&[("keys x q", &t)], &tol("1e-35")))
}

fn c2() -> Result<Outcome> {
    let (p, l) = verify::oracle(HalfInt::from_twice(3), &ctxs(&["0.5", "0.9"]))?;
    Ok(judge(&[("projector", &p), ("lowering", &l)], &tol("1e-30")))
}

fn c3() -> Result<Outcome> {
    let t = verify::unitarity(HalfInt::int(3), &ctxs(&["0.3", "0.5", "0.9", "1.6"]))?;
    Ok(judge(&[("row/column sums", &t)], &tol("1e-35")))
}

fn c4() -> Result<Outcome> {
    let sets = verify::symmetry(100, HalfInt::int(3), &ctxs(&["0.5", "0.9"]), SEED)?;
    let named: Vec<(String, Tally)> = sets.into_iter().map(|(id, t)| (id.to_string(), t)).collect();
    let parts: Vec<(&str, &Tally)> = named.iter().map(|(n, t)| (n.as_str(), t)).collect();
    Ok(judge(&parts, &tol("1e-35")))
}

fn c5() -> Result<Outcome> {
    let sets = verify::special(HalfInt::int(3), &ctxs(&["0.5", "0.9", "1.7"]))?;
    let mut named: Vec<(String, Tally)> = sets.into_iter().map(|(k, t)| (k.name().to_string(), t)).collect();
    named.push(("dixon q=1 exact".into(), verify::dixon_exact(4)));
    let parts: Vec<(&str, &Tally)> = named.iter().map(|(n, t)| (n.as_str(), t)).collect();
    Ok(judge(&parts, &tol("1e-35")))
}

fn c6() -> Result<Outcome> {
    let (j, m) = verify::recurrence(HalfInt::int(2), &ctxs(&["0.5", "0.7"]))?;
    Ok(judge(&[("j", &j), ("m1,m2", &m)], &tol("1e-30")))
}

fn c7() -> Result<Outcome> {
    let sets = [
        (4, HalfInt::ONE, HalfInt::ONE),
        (5, HalfInt::ONE, HalfInt::int(2)),
        (6, HalfInt::HALF, HalfInt::from_twice(3)),
    ];
    let h = verify::hahn(&sets, &ctxs(&["0.5", "0.9", "1.3"]))?;
    Ok(judge(
        &[("gram", &h.gram), ("ttrr", &h.ttrr), ("difference", &h.difference), ("forms", &h.forms)],
        &tol("1e-30"),
    ))
}

fn c8() -> Result<Outcome> {
    let (a, b) = verify::connection(HalfInt::int(2), &ctxs(&["0.5", "0.9"]))?;
    Ok(judge(&[("J1 route", &a), ("J2 route", &b)], &tol("1e-30")))
}

fn c9() -> Result<Outcome> {
    let c = ctxs(&["0.5", "0.9", "1.4"]);
    let i = verify::identities(&c, 200, SEED)?;
    let l = verify::lemma1(HalfInt::from_twice(3), 3, &ctxs(&["0.5", "1.4"]));
    Ok(judge(
        &[
            ("vandermonde", &i.vandermonde),
            ("summation", &i.summation),
            ("dixon", &i.dixon),
            ("transformations", &i.transformation),
            ("basic series", &i.basic),
            ("operator identities", &l),
        ],
        &tol("1e-35"),
    ))
}

fn c10() -> Result<Outcome> {
    let (cg, qn) = verify::classical_limit(HalfInt::int(3), 6, DIGITS)?;
    let a = judge(&[("coefficients", &cg)], &tol("1e-5"));
    let b = judge(&[("[x]", &qn)], &tol("1e-6"));
    Ok(Outcome { pass: a.pass && b.pass, detail: format!("{}; {}", a.detail, b.detail) })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cross-formula agreement", c1),
        ("oracle equivalence", c2),
        ("unitarity", c3),
        ("symmetries", c4),
        ("special values", c5),
        ("recurrences", c6),
        ("q-Hahn", c7),
        ("CGC-Hahn connection", c8),
        ("identity layer", c9),
        ("classical limit", c10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {}", e) });
        failed += usize::from(!out.pass);
        println!(
            "{} {:>2} {}: {} ({:.1}s)",
            if out.pass { "PASS" } else { "FAIL" },
            n + 1,
            name,
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
