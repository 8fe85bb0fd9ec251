//! One JSON object per weight vector and command. Text and CSV output are
//! rendered from the same objects.

use mirror_stringy::exact::mirror_transform;
use mirror_stringy::face::psi;
use mirror_stringy::orbifold::vafa_poincare;
use mirror_stringy::stringy::{stringy_decomposition, untwisted_euler};
use mirror_stringy::weights::milnor_number;
use mirror_stringy::{
    mirror_orbifold_e, q_identity_check, stringy_e, vafa_euler, verify, EFn, HodgeTable, Result,
    VerificationReport, WeightVector, Q,
};
use serde_json::{json, Map, Value};

fn rational(q: &Q) -> Value {
    Value::String(q.to_string())
}

/// A polynomial as a string, otherwise `{"terms": [...]}` with each term
/// `u^u v^v * numerator(uv) / denominator(uv)`.
pub fn efunction(e: &EFn) -> Value {
    if let Ok(p) = e.to_bipoly() {
        return Value::String(p.to_string());
    }
    let terms: Vec<Value> = e
        .terms()
        .map(|((a, b), r)| {
            let (num, den) = r.display_parts("(u*v)");
            json!({ "u": a, "v": b, "numerator": num, "denominator": den })
        })
        .collect();
    json!({ "terms": terms })
}

fn hodge(t: &Option<HodgeTable>) -> Value {
    match t {
        Some(t) => json!(t.grid),
        None => Value::Null,
    }
}

fn base(wv: &WeightVector) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("weights".into(), json!(wv.weights()));
    m.insert("w".into(), json!(wv.degree()));
    m.insert("ip".into(), json!(wv.ip()));
    m.insert("transverse".into(), json!(wv.transverse()));
    m
}

pub fn analyze(wv: &WeightVector) -> Value {
    let mut m = base(wv);
    m.insert(
        "charges".into(),
        Value::Array(wv.charges().iter().map(rational).collect()),
    );
    m.insert("well_formed".into(), json!(true));
    let census: Vec<Value> = wv
        .census()
        .into_iter()
        .map(|((size, age), count)| json!({ "size": size, "age": age, "count": count }))
        .collect();
    m.insert("census".into(), Value::Array(census));
    m.insert("psi".into(), json!(psi(wv)));
    m.insert("milnor".into(), rational(&milnor_number(wv)));
    Value::Object(m)
}

fn per_l_values(wv: &WeightVector, pieces: &[EFn]) -> Value {
    Value::Array(
        pieces
            .iter()
            .zip(wv.elements())
            .map(|(p, e)| json!({ "l": e.l, "age": e.age, "size": e.size, "e": efunction(p) }))
            .collect(),
    )
}

pub fn stringy(wv: &WeightVector, per_l: bool) -> Result<Value> {
    let e = stringy_e::<Q>(wv)?;
    let dim = wv.dim() as u32 - 1;
    let mut m = base(wv);
    let poly = e.to_bipoly().ok();
    m.insert("stringy_polynomial".into(), json!(poly.is_some()));
    m.insert("no_mirror".into(), json!(poly.is_none()));
    m.insert("e_str".into(), efunction(&e));
    let table = poly.and_then(|p| HodgeTable::from_e_polynomial(&p, dim).ok());
    m.insert("hodge".into(), hodge(&table));
    m.insert(
        "euler_str".into(),
        e.value_at_one().map_or(Value::Null, |x| rational(&x)),
    );
    m.insert(
        "untwisted_euler".into(),
        rational(&untwisted_euler::<Q>(wv)?),
    );
    if per_l {
        m.insert(
            "per_l".into(),
            per_l_values(wv, &stringy_decomposition::<Q>(wv)?),
        );
    }
    Ok(Value::Object(m))
}

pub fn orbifold(wv: &WeightVector, per_l: bool) -> Result<Value> {
    wv.require_ip()?;
    let r = mirror_orbifold_e::<Q>(wv)?;
    let dim = wv.dim() as u32 - 1;
    let mut m = base(wv);
    m.insert("formal".into(), json!(r.formal));
    m.insert("e_orb_mirror".into(), efunction(&r.value));
    let e_orb = r
        .value
        .to_bipoly()
        .ok()
        .and_then(|p| mirror_transform(&p, dim).ok());
    m.insert(
        "e_orb".into(),
        e_orb
            .as_ref()
            .map_or(Value::Null, |p| Value::String(p.to_string())),
    );
    let table = e_orb.and_then(|p| HodgeTable::from_e_polynomial(&p, dim).ok());
    m.insert("hodge".into(), hodge(&table));
    let poincare = if wv.transverse() {
        vafa_poincare::<Q>(wv).ok().map(|p| p.to_string())
    } else {
        None
    };
    m.insert("poincare".into(), json!(poincare));
    m.insert("euler_orb".into(), rational(&vafa_euler(wv)));
    m.insert("q_identity".into(), json!(q_identity_check(wv)));
    if per_l {
        m.insert("per_l".into(), per_l_values(wv, &r.per_l_terms));
    }
    Ok(Value::Object(m))
}

/// `n/a` when the identities hold but the stringy side is not a polynomial,
/// so there are no mirror Hodge numbers to compare.
fn verdict(r: &VerificationReport) -> &'static str {
    match (r.passed(), r.no_mirror()) {
        (true, true) => "n/a",
        (true, false) => "pass",
        (false, _) => "fail",
    }
}

pub fn mirror_check(wv: &WeightVector, per_l: bool) -> Result<Value> {
    let r = verify(wv)?;
    let mut m = base(wv);
    m.insert("stringy_polynomial".into(), json!(r.stringy_polynomial));
    m.insert("no_mirror".into(), json!(r.no_mirror()));
    m.insert("e_str".into(), efunction(&r.stringy));
    m.insert("hodge".into(), hodge(&r.hodge));
    m.insert("euler_str".into(), rational(&r.euler_pair.0));
    m.insert("euler_orb".into(), rational(&r.euler_pair.1));
    m.insert("euler_consistent".into(), json!(r.euler_consistent()));
    m.insert("global_identity".into(), json!(r.global_identity));
    m.insert("per_l_failures".into(), json!(r.per_l_failures));
    m.insert(
        "hodge_pairs_ok".into(),
        json!(r.hodge_mirror_pairs.iter().all(|p| p.holds())),
    );
    m.insert("mirror_check".into(), json!(verdict(&r)));
    if per_l {
        m.insert(
            "per_l".into(),
            per_l_values(wv, &stringy_decomposition::<Q>(wv)?),
        );
    }
    Ok(Value::Object(m))
}

/// The scan row: the documented schema plus `h11`/`h21` of the mirror.
pub fn scan_row(wv: &WeightVector) -> Result<Value> {
    let full = mirror_check(wv, false)?;
    let mut m = Map::new();
    for key in [
        "weights",
        "w",
        "ip",
        "transverse",
        "stringy_polynomial",
        "e_str",
        "hodge",
        "euler_str",
        "euler_orb",
        "mirror_check",
    ] {
        m.insert(key.into(), full[key].clone());
    }
    let entry = |p: usize, q: usize| full["hodge"].get(p).and_then(|r| r.get(q)).cloned();
    m.insert("h11".into(), entry(1, 1).unwrap_or(Value::Null));
    m.insert("h21".into(), entry(2, 1).unwrap_or(Value::Null));
    Ok(Value::Object(m))
}
