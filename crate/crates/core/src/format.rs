//! JSON documents for matrices, lists, tables, graphs and results.
//!
//! All numbers that may exceed machine precision are strings: integers as
//! decimal literals, rationals as `num/den`. Subsets are 1-based index
//! strings such as `"1,3,4"`.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arimat::{
    AxiomReport, Classification, EdgeKind, GcdViolation, GroupList, LabelledEdge, LabelledGraph, Lift,
    MultiplicityTable,
};
use crate::decompose::{CounterexamplePair, TADFactorization, TuRecovery};
use crate::exactmat::{parse_rational, Field, IntMatrix, Matrix, PluckerVector, Scalar};
use crate::gpcheck::{GPrReport, GPrWitness};
use crate::matroid::U24Witness;
use crate::plucker::{GPRelation, IdealGenerators, SignAssignment};
use crate::subset::Subset;

/// A malformed document, with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { path: path.to_string(), message: message.into() })
}

/// Parses JSON text; syntax errors report line and column.
pub fn parse_document(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError {
        path: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Pretty-printed document with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn field_of<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    v.get(key).ok_or_else(|| FormatError { path: path.into(), message: format!("missing field `{key}`") })
}

fn as_usize(v: &Value, path: &str) -> Result<usize, FormatError> {
    match v.as_u64() {
        Some(x) => Ok(x as usize),
        None => err(path, "expected a non-negative integer"),
    }
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, FormatError> {
    match v.as_str() {
        Some(s) => Ok(s),
        None => err(path, "expected a string"),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    match v.as_array() {
        Some(a) => Ok(a),
        None => err(path, "expected an array"),
    }
}

/// Integer given as a string (or as a small JSON number).
fn as_bigint(v: &Value, path: &str) -> Result<BigInt, FormatError> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    let s = as_str(v, path)?;
    s.trim().parse().or_else(|_| err(path, format!("`{s}` is not an integer")))
}

fn as_subset(v: &Value, path: &str) -> Result<Subset, FormatError> {
    Subset::parse(as_str(v, path)?).or_else(|e| err(path, e))
}

fn string_rows(v: &Value, path: &str) -> Result<Vec<Vec<String>>, FormatError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{path}[{i}]");
            as_array(row, &rp)?
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let ep = format!("{rp}[{j}]");
                    match x {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                        _ => err(&ep, "expected an integer or num/den string"),
                    }
                })
                .collect()
        })
        .collect()
}

/// Shape check against optional `rows`/`cols` fields.
fn check_shape(v: &Value, rows: usize, cols: Option<usize>, path: &str) -> Result<usize, FormatError> {
    if let Some(r) = v.get("rows") {
        let r = as_usize(r, &format!("{path}.rows"))?;
        if r != rows {
            return err(&format!("{path}.rows"), format!("declares {r} rows but entries have {rows}"));
        }
    }
    match (v.get("cols"), cols) {
        (Some(c), Some(n)) => {
            let c = as_usize(c, &format!("{path}.cols"))?;
            if c != n {
                return err(&format!("{path}.cols"), format!("declares {c} columns but entries have {n}"));
            }
            Ok(c)
        }
        (Some(c), None) => as_usize(c, &format!("{path}.cols")),
        (None, Some(n)) => Ok(n),
        (None, None) => err(path, "missing field `cols` for a matrix without rows"),
    }
}

fn rectangular(rows: &[Vec<String>], path: &str) -> Result<Option<usize>, FormatError> {
    let Some(first) = rows.first() else { return Ok(None) };
    for (i, r) in rows.iter().enumerate() {
        if r.len() != first.len() {
            return err(&format!("{path}[{i}]"), format!("row has {} entries, expected {}", r.len(), first.len()));
        }
    }
    Ok(Some(first.len()))
}

pub fn matrix_from_value(v: &Value) -> Result<Matrix, FormatError> {
    let field = match v.get("field") {
        None => Field::Rational,
        Some(f) => Field::parse(as_str(f, "field")?).or_else(|e| err("field", e.to_string()))?,
    };
    let rows = string_rows(field_of(v, "entries", "$")?, "entries")?;
    let cols = check_shape(v, rows.len(), rectangular(&rows, "entries")?, "$")?;
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            let x = field.parse_scalar(s).or_else(|e| err(&format!("entries[{i}][{j}]"), e.to_string()))?;
            data.push(x);
        }
    }
    Matrix::new(rows.len(), cols, field, data).or_else(|e| err("$", e.to_string()))
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let entries: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "field": m.field().to_string(), "entries": entries })
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn int_matrix_to_value(m: &IntMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "field": "Q", "entries": int_rows(m) })
}

fn int_matrix_from_rows(rows: &[Vec<String>], cols: usize, path: &str) -> Result<IntMatrix, FormatError> {
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            let p = format!("{path}[{i}][{j}]");
            let q = parse_rational(s).or_else(|e| err(&p, e.to_string()))?;
            if !q.is_integer() {
                return err(&p, format!("`{s}` is not an integer"));
            }
            data.push(q.to_integer());
        }
    }
    Ok(IntMatrix::new(rows.len(), cols, data))
}

/// A matrix document, optionally with `torsion_moduli` and `torsion_rows`.
pub fn group_list_from_value(v: &Value) -> Result<GroupList, FormatError> {
    if let Some(f) = v.get("field") {
        if as_str(f, "field")? != "Q" {
            return err("field", "lists live over the integers; use field Q");
        }
    }
    let rows = string_rows(field_of(v, "entries", "$")?, "entries")?;
    let cols = check_shape(v, rows.len(), rectangular(&rows, "entries")?, "$")?;
    let free = int_matrix_from_rows(&rows, cols, "entries")?;
    let moduli: Vec<BigInt> = match v.get("torsion_moduli") {
        None => Vec::new(),
        Some(m) => as_array(m, "torsion_moduli")?
            .iter()
            .enumerate()
            .map(|(i, q)| as_bigint(q, &format!("torsion_moduli[{i}]")))
            .collect::<Result<_, _>>()?,
    };
    let trows = match v.get("torsion_rows") {
        None => Vec::new(),
        Some(t) => string_rows(t, "torsion_rows")?,
    };
    if trows.len() != moduli.len() {
        return err("torsion_rows", format!("{} rows for {} moduli", trows.len(), moduli.len()));
    }
    for (i, r) in trows.iter().enumerate() {
        if r.len() != cols {
            return err(&format!("torsion_rows[{i}]"), format!("row has {} entries, expected {cols}", r.len()));
        }
    }
    let torsion = int_matrix_from_rows(&trows, cols, "torsion_rows")?;
    GroupList::new(free, torsion, moduli).or_else(|e| err("$", e.to_string()))
}

pub fn group_list_to_value(gl: &GroupList) -> Value {
    json!({
        "rows": gl.free().rows(),
        "cols": gl.len(),
        "field": "Q",
        "entries": int_rows(gl.free()),
        "torsion_moduli": gl.moduli().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "torsion_rows": int_rows(gl.torsion()),
    })
}

/// `{"elements": n, "table": [[subset, rank, m], ..]}` with every subset once.
pub fn table_from_value(v: &Value) -> Result<MultiplicityTable, FormatError> {
    let n = as_usize(field_of(v, "elements", "$")?, "elements")?;
    if n > 24 {
        return err("elements", "at most 24 elements are supported");
    }
    let size = 1usize << n;
    let mut rank: Vec<Option<usize>> = vec![None; size];
    let mut m: Vec<Option<BigInt>> = vec![None; size];
    for (i, e) in as_array(field_of(v, "table", "$")?, "table")?.iter().enumerate() {
        let p = format!("table[{i}]");
        let t = as_array(e, &p)?;
        if t.len() != 3 {
            return err(&p, "expected [subset, rank, m]");
        }
        let s = as_subset(&t[0], &format!("{p}[0]"))?;
        if !s.is_subset_of(Subset::full(n)) {
            return err(&format!("{p}[0]"), format!("subset {s} is outside 1..={n}"));
        }
        let idx = s.0 as usize;
        if rank[idx].is_some() {
            return err(&format!("{p}[0]"), format!("subset {{{s}}} listed twice"));
        }
        rank[idx] = Some(as_usize(&t[1], &format!("{p}[1]"))?);
        m[idx] = Some(as_bigint(&t[2], &format!("{p}[2]"))?);
    }
    if let Some(missing) = rank.iter().position(Option::is_none) {
        return err("table", format!("subset {{{}}} is missing", Subset(missing as u64)));
    }
    MultiplicityTable::new(n, rank.into_iter().flatten().collect(), m.into_iter().flatten().collect())
        .or_else(|e| err("table", e.to_string()))
}

pub fn table_to_value(t: &MultiplicityTable) -> Value {
    let rows: Vec<Value> = t.entries().into_iter().map(|(s, r, m)| json!([s.to_string(), r, m.to_string()])).collect();
    json!({ "elements": t.len(), "table": rows })
}

/// `{"vertices": v, "edges": [[tail, head, label, kind], ..]}`, 1-based vertices.
pub fn graph_from_value(v: &Value) -> Result<LabelledGraph, FormatError> {
    let nv = as_usize(field_of(v, "vertices", "$")?, "vertices")?;
    let mut edges = Vec::new();
    for (i, e) in as_array(field_of(v, "edges", "$")?, "edges")?.iter().enumerate() {
        let p = format!("edges[{i}]");
        let t = as_array(e, &p)?;
        if t.len() != 3 && t.len() != 4 {
            return err(&p, "expected [tail, head, label] or [tail, head, label, kind]");
        }
        let tail = as_usize(&t[0], &format!("{p}[0]"))?;
        let head = as_usize(&t[1], &format!("{p}[1]"))?;
        if tail == 0 || head == 0 {
            return err(&p, "vertices are numbered from 1");
        }
        let label = as_bigint(&t[2], &format!("{p}[2]"))?;
        let kind = match t.get(3) {
            None => EdgeKind::Regular,
            Some(k) => as_str(k, &format!("{p}[3]"))?.parse().or_else(|e: String| err(&format!("{p}[3]"), e))?,
        };
        edges.push(LabelledEdge { tail: tail - 1, head: head - 1, label, kind });
    }
    LabelledGraph::new(nv, edges).or_else(|e| err("edges", e.to_string()))
}

pub fn graph_to_value(g: &LabelledGraph) -> Value {
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!([e.tail + 1, e.head + 1, e.label.to_string(), e.kind.to_string()]))
        .collect();
    json!({ "vertices": g.vertices, "edges": edges })
}

/// `{"d", "n", "field", "coords": {"1,2": "3", ..}}` with every `d`-subset present.
pub fn plucker_from_value(v: &Value) -> Result<PluckerVector, FormatError> {
    let d = as_usize(field_of(v, "d", "$")?, "d")?;
    let n = as_usize(field_of(v, "n", "$")?, "n")?;
    let field = match v.get("field") {
        None => Field::Rational,
        Some(f) => Field::parse(as_str(f, "field")?).or_else(|e| err("field", e.to_string()))?,
    };
    let coords = match field_of(v, "coords", "$")? {
        Value::Object(map) => map,
        _ => return err("coords", "expected an object keyed by index strings"),
    };
    if d > n || n > 64 {
        return err("$", format!("need d <= n <= 64, got d = {d}, n = {n}"));
    }
    let keys = Subset::full(n).k_subsets(d);
    let mut vals: Vec<Option<Scalar>> = vec![None; keys.len()];
    for (k, x) in coords {
        let p = format!("coords.{k}");
        let s = Subset::parse(k).or_else(|e| err(&p, e))?;
        let Some(i) = keys.iter().position(|&key| key == s) else {
            return err(&p, format!("not a {d}-subset of 1..={n}"));
        };
        let txt = match x {
            Value::String(s) => s.clone(),
            Value::Number(num) if num.is_i64() => num.to_string(),
            _ => return err(&p, "expected an exact scalar string"),
        };
        vals[i] = Some(field.parse_scalar(&txt).or_else(|e| err(&p, e.to_string()))?);
    }
    if let Some(i) = vals.iter().position(Option::is_none) {
        return err("coords", format!("coordinate {} is missing", keys[i]));
    }
    PluckerVector::new(d, n, field, vals.into_iter().flatten().collect()).or_else(|e| err("$", e.to_string()))
}

pub fn plucker_to_value(pv: &PluckerVector) -> Value {
    let mut coords = Map::new();
    for (k, x) in pv.iter() {
        coords.insert(k.to_string(), Value::String(x.to_string()));
    }
    json!({ "d": pv.d(), "n": pv.n(), "field": pv.field().to_string(), "coords": coords })
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn tu_recovery_to_value(r: &TuRecovery) -> Value {
    json!({ "A": matrix_to_value(&r.a), "basis": one_based(&r.basis) })
}

pub fn factorization_to_value(f: &TADFactorization) -> Value {
    json!({
        "T": matrix_to_value(&f.t),
        "A": matrix_to_value(&f.a),
        "D": matrix_to_value(&f.d),
        "basis": one_based(&f.basis),
    })
}

pub fn relation_to_value(r: &GPRelation) -> Value {
    Value::String(r.to_string())
}

pub fn relations_to_value(d: usize, n: usize, violated: &[GPRelation]) -> Value {
    json!({
        "d": d,
        "n": n,
        "satisfied": violated.is_empty(),
        "violated": violated.iter().map(relation_to_value).collect::<Vec<_>>(),
    })
}

pub fn ideal_to_value(g: &IdealGenerators) -> Value {
    json!({ "d": g.d, "n": g.n, "quadrics": g.quadric_strings(), "monomials": g.monomial_strings() })
}

pub fn sign_assignment_to_value(pv: &PluckerVector, s: Option<&SignAssignment>) -> Value {
    match s {
        None => json!({ "decomposable": false }),
        Some(s) => {
            let mut signs = Map::new();
            for (k, &sg) in pv.keys().iter().zip(&s.signs) {
                signs.insert(k.to_string(), json!(sg));
            }
            json!({ "decomposable": true, "certified": s.certified, "signs": signs })
        }
    }
}

pub fn u24_to_value(w: Option<&U24Witness>) -> Value {
    match w {
        None => json!({ "found": false }),
        Some(w) => json!({
            "found": true,
            "inner": w.inner.to_string(),
            "context": w.context.to_string(),
            "certificate": w.certificate.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
    }
}

pub fn lift_to_value(l: &Lift) -> Value {
    json!({ "matrix": int_matrix_to_value(&l.matrix), "y": l.y.to_string() })
}

pub fn classification_to_value(c: &Classification) -> Value {
    let weak = c.weak_lift.as_ref().map(|(l, b)| json!({ "lift": lift_to_value(l), "basis": b.to_string() }));
    let reg_weak =
        c.regular_weak_lift.as_ref().map(|(l, b)| json!({ "lift": lift_to_value(l), "basis": b.to_string() }));
    json!({
        "regular": c.regular,
        "weakly_multiplicative": c.weakly_multiplicative,
        "strongly_multiplicative": c.strongly_multiplicative,
        "lifts_examined": c.lifts_examined,
        "search_exhaustive": c.exhaustive,
        "regular_lift": c.regular_lift.as_ref().map(lift_to_value),
        "weak_lift": weak,
        "regular_weak_lift": reg_weak,
        "strong_lift": c.strong_lift.as_ref().map(lift_to_value),
    })
}

pub fn gcd_violations_to_value(v: &[GcdViolation]) -> Value {
    let items: Vec<Value> = v
        .iter()
        .map(|g| json!({ "set": g.set.to_string(), "m": g.m.to_string(), "gcd": g.expected.to_string() }))
        .collect();
    json!({ "consistent": v.is_empty(), "violations": items })
}

pub fn axiom_report_to_value(r: &AxiomReport) -> Value {
    let molecules: Vec<Value> = r
        .molecule_checks
        .iter()
        .map(|c| {
            json!({
                "R": c.r.to_string(),
                "S": c.s.to_string(),
                "F": c.f.to_string(),
                "T": c.t.to_string(),
                "rho": c.rho.to_string(),
                "pass": c.pass,
            })
        })
        .collect();
    json!({
        "pass": r.pass(),
        "rank_axioms": r.rank_ok,
        "P": { "pass": r.p_pass(), "molecules": molecules },
        "A1": {
            "pass": r.a1_violations.is_empty(),
            "checked": r.a1_checked,
            "violations": r.a1_violations.iter().map(|v| json!({ "set": v.set.to_string(), "element": v.element + 1 })).collect::<Vec<_>>(),
        },
        "A2": {
            "pass": r.a2_violations.is_empty(),
            "checked": r.a2_checked,
            "violations": r.a2_violations.iter().map(|v| json!({
                "R": v.r.to_string(),
                "S": v.s.to_string(),
                "lhs": v.lhs.to_string(),
                "rhs": v.rhs.to_string(),
            })).collect::<Vec<_>>(),
        },
    })
}

pub fn witness_to_value(w: &GPrWitness) -> Value {
    json!({
        "r": w.r,
        "I": w.i.to_string(),
        "J": w.j.to_string(),
        "S": w.s.to_string(),
        "T": w.t.to_string(),
        "calT": w.cal_t.to_string(),
        "products": w.products.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "satisfiable": w.satisfiable,
        "sigma": w.sigma,
    })
}

pub fn gpr_report_to_value(r: &GPrReport) -> Value {
    json!({
        "r": r.r,
        "pass": r.pass,
        "instances": r.instances,
        "failures": r.failures.iter().map(witness_to_value).collect::<Vec<_>>(),
    })
}

pub fn counterexample_to_value(p: u64, k: u32, c: Option<&CounterexamplePair>) -> Value {
    match c {
        None => json!({ "p": p, "k": k, "found": false }),
        Some(c) => json!({
            "p": c.p,
            "k": c.k,
            "found": true,
            "a": c.a,
            "X": matrix_to_value(&c.x),
            "Xk": matrix_to_value(&c.xk),
        }),
    }
}
