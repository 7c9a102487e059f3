//! cgc, table, hahn and limit subcommands.

use std::collections::BTreeMap;
use std::process::ExitCode;

use qcg::cgc::{compute, dixon_classical, CgcKey, Mode};
use qcg::qcore::qnum;
use qcg::qhahn::{hahn_eval, hahn_gram, hahn_norm_sq, hahn_weight, lattice_x, HahnForm, HahnParams};
use qcg::verify::limit_q;
use qcg::{HalfInt, QContext, QReal};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{write_json, Table};
use crate::{Common, FormArg, Format, KeyArgs};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn spin(name: &str, s: &str) -> Result<HalfInt, String> {
    s.parse().map_err(|e| format!("--{}: {}", name, e))
}

fn context(c: &Common) -> Result<QContext, String> {
    QContext::new(&c.q, c.precision).map_err(err)
}

/// Decimal at the context's digit count; exact zero prints as "0".
pub fn fmt(x: &QReal, digits: u32) -> String {
    x.to_string_digits(digits as usize)
}

fn key_config(mut cfg: RunConfig, k: &CgcKey) -> RunConfig {
    for (n, v) in ["j1", "m1", "j2", "m2", "j", "m"].iter().zip([k.j1, k.m1, k.j2, k.m2, k.j, k.m]) {
        cfg = cfg.spin(n, v);
    }
    cfg
}

pub fn cgc(c: &Common, key: &KeyArgs, verify: bool, format: Option<Format>) -> Result<ExitCode, String> {
    let labels = [&key.j1, &key.m1, &key.j2, &key.m2, &key.j, &key.m].map(|s| s.as_str());
    let k = CgcKey::parse(labels).map_err(err)?;
    let ctx = context(c)?;
    let mode = if verify { Mode::Crosscheck } else { Mode::Default };
    let v = compute(&k, &ctx, mode).map_err(err)?;
    let value = fmt(&v.value, ctx.digits());
    let deviation = v.crosscheck.as_ref().map(|x| x.max_deviation.clone());
    let failed = deviation.as_ref().is_some_and(|d| *d >= ctx.tolerance());
    let dev = deviation.as_ref().map(|d| format!("{:.3e}", d.to_f64()));
    match format {
        None => match &dev {
            Some(d) => println!("{}\t{}\tmax_deviation={}", value, v.formula, d),
            None => println!("{}\t{}", value, v.formula),
        },
        Some(f) => {
            let mut t = Table::new(&["j1", "m1", "j2", "m2", "j", "m", "value", "formula", "max_deviation"]);
            let mut row: Vec<String> = k.twice().iter().map(|t| HalfInt::from_twice(*t).to_string()).collect();
            row.extend([value, v.formula.to_string(), dev.unwrap_or_default()]);
            t.push(row);
            if f == Format::Csv {
                t.write_csv()?;
            } else {
                let mut cfg = key_config(RunConfig::new("cgc", &c.q, c.precision, f.name()), &k);
                if verify {
                    cfg = cfg.flag("verify");
                }
                write_json(&cfg, t.json_rows(), json!({}))?;
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

#[allow(clippy::too_many_arguments)]
pub fn table(
    c: &Common,
    j1: &str,
    j2: &str,
    j: Option<&str>,
    m: Option<&str>,
    cap: &str,
    checksums: bool,
    format: Format,
) -> Result<ExitCode, String> {
    let (j1, j2, cap) = (spin("j1", j1)?, spin("j2", j2)?, spin("cap", cap)?);
    if j1 > cap || j2 > cap {
        return Err(format!("j1 = {}, j2 = {} exceed the cap {} (raise --cap)", j1, j2, cap));
    }
    if j1 < HalfInt::ZERO || j2 < HalfInt::ZERO {
        return Err("spins must be nonnegative".into());
    }
    let jf = j.map(|s| spin("j", s)).transpose()?;
    let mf = m.map(|s| spin("m", s)).transpose()?;
    let ctx = context(c)?;
    let keys: Vec<CgcKey> = CgcKey::all_for(j1, j2)
        .into_iter()
        .filter(|k| jf.is_none_or(|x| k.j == x) && mf.is_none_or(|x| k.m == x))
        .collect();
    let mut values = Vec::with_capacity(keys.len());
    for k in &keys {
        values.push(compute(k, &ctx, Mode::Default).map_err(err)?.value);
    }
    // column norms sum_m1 C(m1, m - m1 | j m)^2 over the full block
    let mut norms: BTreeMap<(HalfInt, HalfInt), QReal> = BTreeMap::new();
    for k in &keys {
        if norms.contains_key(&(k.j, k.m)) {
            continue;
        }
        let mut s = ctx.zero();
        for other in CgcKey::all_for(j1, j2) {
            if other.j == k.j && other.m == k.m {
                s += &compute(&other, &ctx, Mode::Default).map_err(err)?.value.square();
            }
        }
        norms.insert((k.j, k.m), s);
    }
    let mut cols = vec!["j1", "m1", "j2", "m2", "j", "m", "value", "q", "precision"];
    if checksums {
        cols.push("checksum");
    }
    let mut t = Table::new(&cols);
    let digits = ctx.digits();
    for (k, v) in keys.iter().zip(&values) {
        let mut row: Vec<String> = k.twice().iter().map(|t| HalfInt::from_twice(*t).to_string()).collect();
        row.extend([fmt(v, digits), c.q.clone(), digits.to_string()]);
        if checksums {
            row.push(fmt(&norms[&(k.j, k.m)], digits));
        }
        t.push(row);
    }
    match format {
        Format::Csv => t.write_csv()?,
        Format::Json => {
            let mut cfg = RunConfig::new("table", &c.q, c.precision, "json").spin("j1", j1).spin("j2", j2);
            if let Some(x) = jf {
                cfg = cfg.spin("j", x);
            }
            if let Some(x) = mf {
                cfg = cfg.spin("m", x);
            }
            let sums: Vec<Value> = norms
                .iter()
                .map(|((j, m), n)| json!({"j": j.to_string(), "m": m.to_string(), "norm": fmt(n, digits)}))
                .collect();
            write_json(&cfg, t.json_rows(), json!({ "unitarity": sums }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn hahn(
    c: &Common,
    big_n: usize,
    alpha: &str,
    beta: &str,
    degree: Option<usize>,
    form: FormArg,
    format: Format,
) -> Result<ExitCode, String> {
    let (a, b) = (spin("alpha", alpha)?, spin("beta", beta)?);
    let ctx = context(c)?;
    let base = HahnParams::new(0, big_n, a, b).map_err(err)?;
    let degrees: Vec<usize> = match degree {
        Some(n) => vec![n],
        None => (0..big_n).collect(),
    };
    let form = match form {
        FormArg::A => HahnForm::A,
        FormArg::B => HahnForm::B,
    };
    let digits = ctx.digits();
    let mut t = Table::new(&["n", "s", "x", "value", "weight", "norm_sq"]);
    let mut norms = Vec::new();
    for &n in &degrees {
        let p = base.with_degree(n).map_err(err)?;
        let d = hahn_norm_sq(&p, &ctx).map_err(err)?;
        for s in 0..big_n as i64 {
            t.push(vec![
                n.to_string(),
                s.to_string(),
                fmt(&lattice_x(HalfInt::int(s), &ctx), digits),
                fmt(&hahn_eval(&p, s, &ctx, form).map_err(err)?, digits),
                fmt(&hahn_weight(&p, s, &ctx).map_err(err)?, digits),
                fmt(&d, digits),
            ]);
        }
        norms.push(d);
    }
    match format {
        Format::Csv => t.write_csv()?,
        Format::Json => {
            let g = hahn_gram(&base, &ctx).map_err(err)?;
            let mut off = ctx.zero();
            for (i, row) in g.iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    if i != k {
                        off = off.max(&x.abs() / &(&g[i][i] * &g[k][k]).abs().sqrt());
                    }
                }
            }
            let mut cfg = RunConfig::new("hahn", &c.q, c.precision, "json")
                .spin("alpha", a)
                .spin("beta", b)
                .flag(format!("points={}", big_n))
                .flag(match form {
                    HahnForm::A => "form=a",
                    HahnForm::B => "form=b",
                });
            if let Some(n) = degree {
                cfg = cfg.flag(format!("degree={}", n));
            }
            let checks = json!({
                "orthogonality_max_offdiagonal": format!("{:.3e}", off.to_f64()),
                "norm_sq": degrees.iter().zip(&norms).map(|(n, d)| json!({"n": n, "value": fmt(d, digits)})).collect::<Vec<_>>(),
            });
            write_json(&cfg, t.json_rows(), checks)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum Quantity {
    Cgc(CgcKey),
    QNumber(HalfInt),
}

impl Quantity {
    fn name(&self) -> String {
        match self {
            Quantity::Cgc(k) => k.to_string(),
            Quantity::QNumber(x) => format!("[{}]", x),
        }
    }

    fn eval(&self, ctx: &QContext) -> Result<QReal, String> {
        match self {
            Quantity::Cgc(k) => Ok(compute(k, ctx, Mode::Default).map_err(err)?.value),
            Quantity::QNumber(x) => Ok(qnum(*x, ctx)),
        }
    }

    /// Value at q = 1 with the formula that produced it.
    fn target(&self, one: &QContext) -> Result<(QReal, &'static str), String> {
        match self {
            Quantity::Cgc(k) if k.m1 == HalfInt::ZERO && k.m2 == HalfInt::ZERO && k.is_admissible() => {
                let [t1, _, t2, _, t, _] = k.twice();
                match dixon_classical(t1 / 2, t2 / 2, t / 2, one) {
                    Some(v) => Ok((v, "dixon")),
                    None => Ok((self.eval(one)?, "racah-exact")),
                }
            }
            Quantity::Cgc(_) => Ok((self.eval(one)?, "racah-exact")),
            Quantity::QNumber(x) => {
                let [n, d] = [x.twice(), 2].map(|v| one.int(v));
                Ok((&n / &d, "x"))
            }
        }
    }
}

pub fn limit(precision: u32, kmin: u32, kmax: u32, key: Option<[String; 6]>, format: Format) -> Result<ExitCode, String> {
    if kmin == 0 || kmin > kmax {
        return Err("limit: need 1 <= kmin <= kmax".into());
    }
    let one = QContext::new("1", precision).map_err(err)?;
    let quantities = match &key {
        Some(labels) => vec![Quantity::Cgc(CgcKey::parse(labels.each_ref().map(|s| s.as_str())).map_err(err)?)],
        None => {
            let mut v: Vec<Quantity> = [[2, 0, 2, 0, 2, 0], [2, 0, 2, 0, 4, 0], [1, 1, 1, -1, 2, 0], [2, 2, 2, -2, 0, 0]]
                .into_iter()
                .map(|t| Quantity::Cgc(CgcKey::from_twice(t)))
                .collect();
            v.extend([1, 2, 3].map(|t| Quantity::QNumber(HalfInt::from_twice(t))));
            v
        }
    };
    let mut t = Table::new(&["quantity", "k", "q", "value", "limit", "limit_formula", "error", "order"]);
    for qty in &quantities {
        let (target, source) = qty.target(&one)?;
        let mut prev: Option<QReal> = None;
        for k in kmin..=kmax {
            let q = limit_q(k);
            let ctx = QContext::new(&q, precision).map_err(err)?;
            let v = qty.eval(&ctx)?;
            let e = (&v.with_prec(one.bits()) - &target).abs();
            let order = match &prev {
                Some(p) if !e.is_zero() && !p.is_zero() => format!("{:.3}", (p / &e).to_f64().log10()),
                _ => String::new(),
            };
            t.push(vec![
                qty.name(),
                k.to_string(),
                q,
                fmt(&v, precision),
                fmt(&target, precision),
                source.to_string(),
                format!("{:.3e}", e.to_f64()),
                order,
            ]);
            prev = Some(e);
        }
    }
    match format {
        Format::Csv => t.write_csv()?,
        Format::Json => {
            let mut cfg = RunConfig::new("limit", "1", precision, "json")
                .flag(format!("kmin={}", kmin))
                .flag(format!("kmax={}", kmax));
            if let Some(Quantity::Cgc(k)) = quantities.first().filter(|_| key.is_some()) {
                cfg = key_config(cfg, k);
            }
            write_json(&cfg, t.json_rows(), json!({}))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
