use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use cfcalc::io::export_complex;
use cfcalc::spaces::{self, FIXTURE_NAMES};
use cfcalc::{
    check_algebraic_link, check_algebraic_set, parse_complex, parse_term, sullivan_check, Cf,
    Detail, Dyadic, Report, SearchOptions, SimplicialComplex, StratumLabeling, Term,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::SearchArgs;
use crate::output::Output;

/// The rows `table` prints when none are given.
pub const DEFAULT_ROWS: [&str; 6] = [
    "1",
    "L(1)",
    "L(1)^2",
    "L(L(1)^2)",
    "W(L(1)^2)",
    "L(1)*W(L(1)^2)",
];

pub struct Loaded {
    pub complex: Arc<SimplicialComplex>,
    pub labeling: Option<StratumLabeling>,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (complex, labeling) =
        parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Loaded {
        complex: Arc::new(complex),
        labeling,
    })
}

fn term(expr: &str) -> Result<Term> {
    parse_term(expr).with_context(|| format!("in expression {expr:?}"))
}

fn require_labels<'a>(loaded: &'a Loaded, what: &str) -> Result<&'a StratumLabeling> {
    match &loaded.labeling {
        Some(l) => Ok(l),
        None => bail!("{what} needs a labeled complex; the document has no \"labels\""),
    }
}

/// The serialized name of a unit enum variant.
fn variant_name<S: Serialize>(x: S) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        other => panic!("expected a unit variant, got {other:?}"),
    }
}

fn json_value(d: &Dyadic) -> Value {
    serde_json::to_value(d).expect("dyadics serialize")
}

pub fn info(loaded: &Loaded) -> Output {
    let k = &loaded.complex;
    let f = k.f_vector();
    let labels: Option<Vec<&str>> = loaded
        .labeling
        .as_ref()
        .map(|l| l.distinct().into_iter().collect());
    let join = |xs: Vec<String>| xs.join(" ");
    let rows = vec![
        ("vertices".into(), k.vertex_count().to_string()),
        ("simplices".into(), k.len().to_string()),
        (
            "dimension".into(),
            k.dim().map_or("empty".into(), |d| d.to_string()),
        ),
        (
            "f-vector".into(),
            join(f.iter().map(usize::to_string).collect()),
        ),
        (
            "euler-characteristic".into(),
            k.euler_characteristic().to_string(),
        ),
        (
            "labels".into(),
            labels.as_ref().map_or("none".into(), |l| l.join(" ")),
        ),
    ];
    let json = json!({
        "vertices": k.vertex_count(),
        "simplices": k.len(),
        "dimension": k.dim(),
        "f_vector": f,
        "euler_characteristic": k.euler_characteristic(),
        "labels": labels,
    });
    Output::fields(rows, json)
}

pub fn table(loaded: &Loaded, rows: &[String]) -> Result<Output> {
    let labeling = require_labels(loaded, "table")?;
    let exprs: Vec<&str> = if rows.is_empty() {
        DEFAULT_ROWS.to_vec()
    } else {
        rows.iter().map(String::as_str).collect()
    };
    let labels: Vec<String> = labeling.distinct().into_iter().map(String::from).collect();
    let mut header = vec!["term".to_string()];
    header.extend(labels.iter().cloned());
    header.push("integral".into());
    let mut out_rows = Vec::new();
    let mut json_rows = Vec::new();
    for expr in exprs {
        let t = term(expr)?;
        let f: Cf = t.evaluate(&loaded.complex);
        let values = f
            .values_by_label(labeling)
            .with_context(|| format!("row {t}"))?;
        let integral = f.euler_integral();
        let mut row = vec![t.to_string()];
        row.extend(labels.iter().map(|l| values[l].to_string()));
        row.push(integral.to_string());
        out_rows.push(row);
        let by_label: serde_json::Map<String, Value> = values
            .iter()
            .map(|(l, v)| (l.clone(), json_value(v)))
            .collect();
        json_rows.push(json!({
            "term": t.to_string(),
            "values": by_label,
            "integral": json_value(&integral),
        }));
    }
    Ok(Output {
        header: Some(header),
        rows: out_rows,
        json: json!({ "labels": labels, "rows": json_rows }),
    })
}

/// Values keyed by label when requested (or possible), else by simplex.
enum Values {
    ByLabel(BTreeMap<String, Dyadic>),
    BySimplex(Vec<(Vec<String>, Dyadic)>),
}

impl Values {
    fn per_simplex(f: &Cf) -> Self {
        let k = f.complex();
        Values::BySimplex(
            k.simplices()
                .iter()
                .zip(f.values())
                .map(|(s, v)| (k.simplex_names(s), v.clone()))
                .collect(),
        )
    }

    fn rows(&self) -> Vec<(String, String)> {
        match self {
            Values::ByLabel(m) => m.iter().map(|(l, v)| (l.clone(), v.to_string())).collect(),
            Values::BySimplex(xs) => xs
                .iter()
                .map(|(s, v)| (s.join(" "), v.to_string()))
                .collect(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Values::ByLabel(m) => json!({
                "by": "label",
                "values": m.iter().map(|(l, v)| (l.clone(), json_value(v))).collect::<serde_json::Map<_, _>>(),
            }),
            Values::BySimplex(xs) => json!({
                "by": "simplex",
                "values": xs.iter().map(|(s, v)| json!({"simplex": s, "value": json_value(v)})).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn eval(loaded: &Loaded, expr: &str, by_label: bool) -> Result<Output> {
    let t = term(expr)?;
    let f: Cf = t.evaluate(&loaded.complex);
    let values = if by_label {
        let labeling = require_labels(loaded, "--by-label")?;
        Values::ByLabel(f.values_by_label(labeling)?)
    } else {
        Values::per_simplex(&f)
    };
    let integral = f.euler_integral();
    let parity = f.parity_of_integral();
    let mut rows = vec![
        ("term".to_string(), t.to_string()),
        ("integral".into(), integral.to_string()),
        ("parity".into(), variant_name(parity)),
    ];
    rows.extend(values.rows());
    let json = json!({
        "term": t.to_string(),
        "integral": json_value(&integral),
        "parity": parity,
        "values": values.json(),
    });
    Ok(Output::fields(rows, json))
}

fn describe(detail: &Detail<Dyadic>) -> String {
    match detail {
        Detail::NonIntegerValue { simplex, value } => {
            format!("non-integer value {value} at {}", simplex.join(" "))
        }
        Detail::OddIntegral { integral } => format!("odd integral {integral}"),
        Detail::OddLinkCharacteristic {
            simplex,
            euler_characteristic,
        } => format!(
            "link of {} has odd euler characteristic {euler_characteristic}",
            simplex.join(" ")
        ),
    }
}

/// Renders a report; the witness values are given per label when the
/// document is labeled and the witness is constant on labels.
pub fn report(loaded: &Loaded, report: &Report) -> Output {
    let mut rows = vec![("verdict".to_string(), variant_name(report.verdict))];
    let values = report.witness_function.as_ref().map(|f| {
        loaded
            .labeling
            .as_ref()
            .and_then(|l| f.values_by_label(l).ok())
            .map_or_else(|| Values::per_simplex(f), Values::ByLabel)
    });
    if let Some(w) = &report.witness {
        rows.push(("witness".into(), w.to_string()));
    }
    if let Some(d) = &report.detail {
        rows.push(("detail".into(), describe(d)));
    }
    if let Some(b) = &report.budget {
        rows.push(("depth".into(), b.max_halflink_depth.to_string()));
        rows.push(("degree".into(), b.max_product_degree.to_string()));
        rows.push(("max-functions".into(), b.max_functions.to_string()));
    }
    if let Some(u) = &report.budget_used {
        rows.push(("functions".into(), u.functions.to_string()));
        rows.push((
            "stage".into(),
            format!("depth {} degree {}", u.stage.0, u.stage.1),
        ));
        rows.push(("stages".into(), u.stages.to_string()));
        rows.push(("phase".into(), variant_name(u.phase)));
        rows.push(("truncated".into(), u.truncated.to_string()));
    }
    if report.verdict.is_obstruction() {
        rows.push(("obstructions".into(), report.obstructions_found.to_string()));
    }
    if let Some(v) = &values {
        rows.extend(v.rows());
    }
    let json = json!({
        "verdict": report.verdict,
        "witness": report.witness.as_ref().map(Term::to_string),
        "detail": report.detail,
        "witness_values": values.as_ref().map(Values::json),
        "budget": report.budget,
        "budget_used": report.budget_used,
        "obstructions_found": report.obstructions_found,
    });
    Output::fields(rows, json)
}

pub fn sullivan(loaded: &Loaded) -> Report {
    sullivan_check(&loaded.complex)
}

pub fn check(loaded: &Loaded, search: &SearchArgs, link: bool) -> Result<Report> {
    let options = SearchOptions {
        exhaustive: search.exhaustive,
        parallel: search.parallel,
    };
    let budget = search.budget();
    Ok(if link {
        check_algebraic_link(&loaded.complex, budget, options)?
    } else {
        check_algebraic_set(&loaded.complex, budget, options)?
    })
}

pub fn fixtures(name: Option<&str>, out: &Path) -> Result<Output> {
    let names: Vec<&str> = match name {
        Some(n) if FIXTURE_NAMES.contains(&n) => vec![n],
        Some(n) => bail!("unknown fixture {n:?}; known: {}", FIXTURE_NAMES.join(", ")),
        None => FIXTURE_NAMES.to_vec(),
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut written = Vec::new();
    for n in names {
        let fx = spaces::by_name(n).expect("listed fixture");
        let path = out.join(format!("{n}.json"));
        let mut text = export_complex(&fx.complex, Some(&fx.labeling));
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
    }
    let rows = written
        .iter()
        .map(|p| ("wrote".to_string(), p.clone()))
        .collect();
    Ok(Output::fields(rows, json!({ "written": written })))
}
