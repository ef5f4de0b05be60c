use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ellpair_core::census::{count_pairs, scan_census, table2, write_csv, CensusRecord, CSV_HEADER};
use ellpair_core::curves::{curve_order_with, six_orders, DEFAULT_SEED};
use ellpair_core::lists_cycles::{
    aliquot_k, build_list, cycle_from_ab, find_6cycles, longest_list, mod7_table, CycleKind,
    SixCycle,
};
use ellpair_core::pairs::{a_pq, anomalous_primes, find_d, is_pair};
use ellpair_core::quadform::{class_number, decompose, decompose3, max_allowable};
use ellpair_core::Error;

use crate::output::{csv_table, joined, opt, Output};
use crate::Command;

#[derive(Debug)]
pub(crate) enum CliError {
    Core(Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn output(command: &'static str, payload: Value, text: String, csv: String) -> Output {
    Output {
        command,
        payload,
        text,
        csv,
        seed: None,
    }
}

pub(crate) fn execute(command: Command, seed: Option<u64>) -> Result<Output> {
    match command {
        Command::Pair { p, q, d } => pair(p, q, d),
        Command::Decompose { p, d } => decompose_cmd(p, d),
        Command::Order { p, k } => order(p, k, seed.unwrap_or(DEFAULT_SEED)),
        Command::Orders { p } => orders(p),
        Command::List { p1, d } => list(p1, d),
        Command::LongestList { d, bound } => longest(d, bound),
        Command::Mld { d, bound } => mld(d, bound),
        Command::CycleSearch { bound, anomalous } => cycle_search(bound, anomalous),
        Command::CycleFromAb { a, b } => Ok(cycles("cycle-from-ab", vec![cycle_from_ab(a, b)?])),
        Command::Aliquot { primes, limit } => aliquot(primes, limit),
        Command::Anomalous { d, below } => anomalous(d, below),
        Command::Mod7Table => Ok(mod7()),
        Command::Census { d, x } => census(d, x),
        Command::ScanCensus { x } => scan(x),
        Command::Table2 { x, hmax, dmax, out } => table(x, hmax, dmax, out),
        Command::ClassNumber { d } => {
            let h = class_number(d)?;
            Ok(output(
                "class-number",
                json!({ "d": d, "h": h }),
                format!("h(-{d}) = {h}"),
                csv_table(&["d", "h"], [vec![d.to_string(), h.to_string()]]),
            ))
        }
    }
}

fn pair(p: u64, q: u64, d: Option<u64>) -> Result<Output> {
    let d = match d {
        Some(d) => Some(d),
        None => find_d(p, q).map(|(d, _)| d),
    };
    let holds = d.is_some_and(|d| is_pair(p, q, d));
    let a = d.and_then(|d| a_pq(p, q, d));
    let text = match (d, holds) {
        (Some(d), true) => format!("({p}, {q})_{d} is an elliptic pair, A = {}", opt(a)),
        (Some(d), false) => format!("({p}, {q}) is not an elliptic pair over {d}"),
        (None, _) => format!("({p}, {q}) is not an elliptic pair"),
    };
    Ok(output(
        "pair",
        json!({ "p": p, "q": q, "d": d, "a": a, "is_pair": holds }),
        text,
        csv_table(
            &["p", "q", "d", "A", "is_pair"],
            [vec![
                p.to_string(),
                q.to_string(),
                opt(d),
                opt(a),
                holds.to_string(),
            ]],
        ),
    ))
}

fn decompose_cmd(p: u64, d: u64) -> Result<Output> {
    let r = if d == 3 {
        Some(decompose3(p)?)
    } else {
        decompose(p, d)?
    };
    let text = match r {
        Some(r) if d == 3 => format!("{p} = {}^2 + 3*{}^2", r.a, r.b),
        Some(r) => format!("4*{p} = {}^2 + {d}*{}^2", r.a, r.b),
        None => format!("{p} has no representation over {d}"),
    };
    let row = vec![
        p.to_string(),
        d.to_string(),
        opt(r.map(|r| r.a)),
        opt(r.map(|r| r.b)),
    ];
    Ok(output(
        "decompose",
        json!({ "p": p, "d": d, "representation": r }),
        text,
        csv_table(&["p", "d", "a", "b"], [row]),
    ))
}

fn order(p: u64, k: i64, seed: u64) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = curve_order_with(p, k, &mut rng)?;
    let mut o = output(
        "order",
        json!({ "p": p, "k": k, "order": n }),
        format!("#E(F_{p}) = {n} for y^2 = x^3 + {k}"),
        csv_table(
            &["p", "k", "order"],
            [vec![p.to_string(), k.to_string(), n.to_string()]],
        ),
    );
    o.seed = Some(seed);
    Ok(o)
}

fn orders(p: u64) -> Result<Output> {
    let s = six_orders(p)?;
    let rows = [
        ("sixth_power", s.sixth_power),
        ("cubic_not_quadratic", s.cubic_not_quadratic),
        ("quadratic_not_cubic", s.quadratic_not_cubic[0]),
        ("quadratic_not_cubic", s.quadratic_not_cubic[1]),
        ("neither", s.neither[0]),
        ("neither", s.neither[1]),
    ];
    let mut text = format!("p = {p} = {}^2 + 3*{}^2\n", s.a, s.b);
    for (class, n) in rows {
        text += &format!("{class:<20} {n}\n");
    }
    Ok(output(
        "orders",
        serde_json::to_value(s).expect("plain struct"),
        text,
        csv_table(
            &["class", "order"],
            rows.map(|(c, n)| vec![c.to_string(), n.to_string()]),
        ),
    ))
}

fn list(p1: u64, d: u64) -> Result<Output> {
    let l = build_list(p1, d)?;
    Ok(output(
        "list",
        serde_json::to_value(&l).expect("plain struct"),
        format!(
            "length {} over {d}: {}",
            l.len(),
            joined(&l.primes).replace(';', ", ")
        ),
        csv_table(
            &["index", "p", "a"],
            l.primes.iter().enumerate().map(|(i, p)| {
                vec![
                    i.to_string(),
                    p.to_string(),
                    (l.a1 + 2 * i as i64).to_string(),
                ]
            }),
        ),
    ))
}

fn longest(d: u64, bound: u64) -> Result<Output> {
    let l = longest_list(d, bound)?;
    Ok(output(
        "longest-list",
        json!({ "d": d, "bound": bound, "length": l.length, "start": l.start }),
        format!(
            "longest list over {d} from starts below {bound}: length {}, start {}",
            l.length,
            opt(l.start)
        ),
        csv_table(
            &["d", "bound", "length", "start"],
            [vec![
                d.to_string(),
                bound.to_string(),
                l.length.to_string(),
                opt(l.start),
            ]],
        ),
    ))
}

fn mld(d: u64, bound: u64) -> Result<Output> {
    let h = class_number(d)?;
    let m = max_allowable(d);
    let l = longest_list(d, bound)?;
    let f = m as i64 - l.length as i64;
    Ok(output(
        "mld",
        json!({ "d": d, "h": h, "bound": bound, "m": m, "l_hat": l.length, "start": l.start, "f_hat": f }),
        format!(
            "d = {d}, h = {h}: M = {m}, L >= {} (start {}), f <= {f}",
            l.length,
            opt(l.start)
        ),
        csv_table(
            &["d", "h", "bound", "M", "L_hat", "start", "f_hat"],
            [vec![
                d.to_string(),
                h.to_string(),
                bound.to_string(),
                m.to_string(),
                l.length.to_string(),
                opt(l.start),
                f.to_string(),
            ]],
        ),
    ))
}

fn cycle_search(bound: u64, anomalous: bool) -> Result<Output> {
    if bound < 7 {
        return Err(Error::InvalidArgument(format!("bound {bound} is below 7")).into());
    }
    let kind = if anomalous {
        CycleKind::Anomalous
    } else {
        CycleKind::Proper
    };
    Ok(cycles("cycle-search", find_6cycles(bound, kind)))
}

fn cycles(command: &'static str, found: Vec<SixCycle>) -> Output {
    let payload: Vec<Value> = found
        .iter()
        .map(|c| {
            json!({
                "a": c.a, "b": c.b, "values": c.values, "proper": c.proper,
                "anomalous": c.anomalous, "canonical": c.canonical(),
            })
        })
        .collect();
    let mut text = String::new();
    for c in &found {
        let kind = match (c.proper, c.anomalous) {
            (true, _) => "proper",
            (_, true) => "anomalous",
            _ => "not a cycle",
        };
        text += &format!(
            "({})_3 (a, b) = ({}, {}) {kind}\n",
            joined(&c.values).replace(';', ", "),
            c.a,
            c.b
        );
    }
    if found.is_empty() {
        text = "no cycles".into();
    }
    let rows = found.iter().map(|c| {
        let mut row = vec![c.a.to_string(), c.b.to_string()];
        row.extend(c.values.iter().map(u64::to_string));
        row.extend([c.proper.to_string(), c.anomalous.to_string()]);
        row
    });
    output(
        command,
        Value::Array(payload),
        text,
        csv_table(
            &[
                "a",
                "b",
                "p1",
                "p2",
                "p3",
                "p4",
                "p5",
                "p6",
                "proper",
                "anomalous",
            ],
            rows,
        ),
    )
}

fn aliquot(primes: Vec<u64>, limit: u64) -> Result<Output> {
    let k = aliquot_k(&primes, limit)?;
    Ok(output(
        "aliquot",
        json!({ "cycle": primes, "k": k }),
        format!(
            "y^2 = x^3 + {k} is aliquot on ({})",
            joined(&primes).replace(';', ", ")
        ),
        csv_table(&["cycle", "k"], [vec![joined(&primes), k.to_string()]]),
    ))
}

fn anomalous(d: u64, below: u64) -> Result<Output> {
    let ps = anomalous_primes(d, below)?;
    Ok(output(
        "anomalous",
        json!({ "d": d, "below": below, "primes": ps }),
        format!(
            "{} anomalous primes over {d} below {below}: {}",
            ps.len(),
            joined(&ps).replace(';', ", ")
        ),
        csv_table(&["p"], ps.iter().map(|p| vec![p.to_string()])),
    ))
}

fn mod7() -> Output {
    let rows = mod7_table();
    let mut text = String::from("a b | p1 p2 p3 p4 p5 p6 | product\n");
    for r in &rows {
        let v = r.values.map(|x| x.to_string()).join("  ");
        text += &format!("{} {} | {v} | {}\n", r.a, r.b, r.product);
    }
    output(
        "mod7-table",
        serde_json::to_value(&rows).expect("plain struct"),
        text,
        csv_table(
            &["a", "b", "p1", "p2", "p3", "p4", "p5", "p6", "product"],
            rows.iter().map(|r| {
                let mut row = vec![r.a.to_string(), r.b.to_string()];
                row.extend(r.values.iter().map(u8::to_string));
                row.push(r.product.to_string());
                row
            }),
        ),
    )
}

fn census_csv(records: &[CensusRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii")
}

fn census(d: u64, x: u64) -> Result<Output> {
    let y = count_pairs(d, x)?;
    let r = CensusRecord::new(d, class_number(d)?, y, x);
    Ok(output(
        "census",
        serde_json::to_value(r).expect("plain struct"),
        format!(
            "{y} pairs over {d} below {x}; h = {}, c_hat = {:.6}, sqrt(d)/h^2 = {:.6}",
            r.h, r.c_hat, r.xi
        ),
        census_csv(&[r]),
    ))
}

fn scan(x: u64) -> Result<Output> {
    let hist = scan_census(x)?;
    let mut text = format!("{} values of d below {x}\n", hist.len());
    for (d, n) in &hist {
        text += &format!("{d} {n}\n");
    }
    let payload: Vec<Value> = hist
        .iter()
        .map(|(d, n)| json!({ "d": d, "count": n }))
        .collect();
    Ok(output(
        "scan-census",
        json!({ "x": x, "counts": payload }),
        text,
        csv_table(
            &["d", "count"],
            hist.iter().map(|(d, n)| vec![d.to_string(), n.to_string()]),
        ),
    ))
}

fn table(x: u64, hmax: u64, dmax: u64, out: Option<std::path::PathBuf>) -> Result<Output> {
    let t = table2(x, hmax, dmax)?;
    if let Some(path) = &out {
        let file = File::create(path).map_err(CliError::Io)?;
        write_csv(&t.records, BufWriter::new(file)).map_err(CliError::Io)?;
    }
    let mut text = format!("{}\n", CSV_HEADER.join(" "));
    for r in &t.records {
        text += &format!("{} {} {:.6} {} {:.6}\n", r.d, r.h, r.xi, r.y, r.c_hat);
    }
    if let Some(f) = t.fit {
        text += &format!(
            "slope {:.6}, intercept {:.6} over {} rows (d = 3 excluded)\n",
            f.slope, f.intercept, f.n
        );
    }
    if let Some(o) = t.outlier {
        text += &format!(
            "d = 3: c_hat {:.6} is {:.2} times slope * sqrt(3)\n",
            o.c_hat, o.ratio
        );
    }
    Ok(output(
        "table2",
        serde_json::to_value(&t).expect("plain struct"),
        text,
        census_csv(&t.records),
    ))
}
