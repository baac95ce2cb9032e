//! JSON encodings of representations, morphisms and sequences. Objects are
//! serialized with sorted keys, so equal inputs give byte-identical output.

use serde_json::{json, Map, Value};
use uniloc_core::{Mat, Rep, RepMorphism, Scalar, ShortExactSeq};

pub fn scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Mod(v) => json!(v),
        Scalar::Rat(_) => json!(s.to_string()),
    }
}

/// Row-major list of rows.
pub fn matrix(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(scalar).collect()))
            .collect(),
    )
}

pub fn rep(r: &Rep) -> Value {
    let q = r.quiver();
    let mut maps = Map::new();
    for a in 0..q.arrow_count() {
        maps.insert(q.arrow_label(a).to_string(), matrix(r.map(a)));
    }
    json!({ "dims": r.dims(), "maps": maps })
}

pub fn morphism(f: &RepMorphism) -> Value {
    let q = f.source().quiver();
    let mut maps = Map::new();
    for v in 0..q.vertex_count() {
        maps.insert(q.vertex_label(v).to_string(), matrix(f.map(v)));
    }
    json!({
        "source": rep(f.source()),
        "target": rep(f.target()),
        "maps": maps,
    })
}

pub fn seq(s: &ShortExactSeq) -> Value {
    json!({
        "sub": s.sub().dims(),
        "middle": rep(s.middle()),
        "quotient": s.quotient().dims(),
        "inclusion": morphism(s.inclusion()),
        "projection": morphism(s.projection()),
    })
}

pub fn labels(series: &[usize], names: &[String]) -> Value {
    Value::Array(series.iter().map(|&i| json!(names[i])).collect())
}
