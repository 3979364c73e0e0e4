//! Canonical JSON forms for polynomials and magma terms.
//!
//! Layout: a differential polynomial is
//! `{"terms":[{"coeff":"num/den","prefix":[["var",i,"der",k],...],"last":["var",i,"der",k]}]}`
//! with terms in canonical monomial order; magma terms are nested arrays
//! `["succ",L,R]` with integer leaves.

use derperm::{DiffPoly, Generator, MagmaPoly, MagmaTerm, PermMonomial, Rational};
use serde_json::{json, Value};

fn coeff(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn generator(g: &Generator) -> Value {
    json!(["var", g.var(), "der", g.der()])
}

pub fn monomial(m: &PermMonomial) -> Value {
    json!({
        "prefix": m.prefix().iter().map(generator).collect::<Vec<_>>(),
        "last": generator(&m.last()),
    })
}

pub fn diff_poly(p: &DiffPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "coeff": coeff(c),
                "prefix": m.prefix().iter().map(generator).collect::<Vec<_>>(),
                "last": generator(&m.last()),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn magma_term(t: &MagmaTerm) -> Value {
    match t {
        MagmaTerm::Leaf(v) => json!(v),
        MagmaTerm::Node(op, l, r) => json!([op.name(), magma_term(l), magma_term(r)]),
    }
}

pub fn magma_poly(p: &MagmaPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(t, c)| json!({ "coeff": coeff(c), "term": magma_term(t) }))
        .collect();
    json!({ "terms": terms })
}
