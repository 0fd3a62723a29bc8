use num_bigint::BigInt;
use serde_json::{json, Number, Value as Json};

use super::expr::{display_poly, format_poly};
use crate::arith::{FactoredPolynomial, IntPoly, Rational};
use crate::eds::DivisorComponent;
use crate::function_field::{Place, PlaceLabel};

/// `unit · Π factor^exponent` with primitive integer factors of positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct IntFactorization {
    pub unit: Rational,
    pub factors: Vec<(IntPoly, usize)>,
}

pub fn primitive_form(f: &FactoredPolynomial<Rational>) -> IntFactorization {
    let mut unit = f.unit.clone();
    let mut factors = Vec::new();
    for (p, e) in &f.factors {
        let (_, ip) = IntPoly::from_rational(p);
        let ip = ip.primitive_part();
        let lc = Rational::from_integer(ip.leading().unwrap().clone());
        for _ in 0..*e {
            unit /= &lc;
        }
        factors.push((ip, *e));
    }
    factors.sort_by_key(|(p, _)| {
        (
            p.degree(),
            p.coeffs()
                .iter()
                .filter(|c| !num_traits::Zero::is_zero(*c))
                .count(),
        )
    });
    IntFactorization { unit, factors }
}

pub fn int_poly_text(p: &IntPoly, var: char) -> String {
    display_poly(&p.to_rational(), var)
}

fn is_monomial(p: &IntPoly) -> bool {
    p.coeffs()
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .count()
        == 1
}

/// Paper-style text such as `2T(T + 1)(T^2 + 2T - 2)`.
pub fn factorization_text(f: &IntFactorization, var: char, prefix: &str) -> String {
    let one = Rational::from_integer(1.into());
    let mut s = String::new();
    if f.unit == -one.clone() {
        s.push('-');
    } else if f.unit != one {
        s.push_str(&f.unit.to_string());
    }
    s.push_str(prefix);
    if f.factors.is_empty() {
        if s.is_empty() || s == "-" {
            s.push('1');
        }
        return s;
    }
    let alone = s.is_empty() && f.factors.len() == 1 && f.factors[0].1 == 1;
    for (p, e) in &f.factors {
        let body = int_poly_text(p, var);
        if alone || (is_monomial(p) && *e == 1) {
            s.push_str(&body);
        } else {
            s.push_str(&format!("({body})"));
        }
        if *e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

pub fn int_json(n: &BigInt) -> Json {
    Json::Number(n.to_string().parse::<Number>().unwrap())
}

pub fn rational_json(q: &Rational) -> Json {
    if q.is_integer() {
        int_json(q.numer())
    } else {
        Json::String(q.to_string())
    }
}

pub fn coeffs_json(p: &IntPoly) -> Json {
    Json::Array(p.coeffs().iter().map(int_json).collect())
}

pub fn factorization_json(f: &IntFactorization) -> Json {
    json!({
        "unit": rational_json(&f.unit),
        "factors": f.factors.iter().map(|(p, e)| json!({
            "coeffs": coeffs_json(p),
            "exponent": e,
        })).collect::<Vec<_>>(),
    })
}

pub fn label_text(label: &PlaceLabel, var: char) -> String {
    match label {
        PlaceLabel::Finite(f) => format_poly(f, var),
        PlaceLabel::Infinity => "infinity".into(),
    }
}

pub fn place_json(place: &Place, var: char) -> Json {
    json!({
        "place": label_text(&place.label, var),
        "behavior": place.behavior.name(),
        "base_degree": place.label.base_degree(),
        "degree": place.degree(),
    })
}

pub fn component_json(c: &DivisorComponent, var: char) -> Json {
    let mut j = place_json(&c.place, var);
    j["order"] = json!(c.order);
    j["divisor_degree"] = json!(c.degree());
    j
}

pub fn component_text(c: &DivisorComponent, var: char) -> String {
    format!(
        "{} [{}, degree {}] order {}",
        label_text(&c.place.label, var),
        c.place.behavior.name(),
        c.place.degree(),
        c.order
    )
}
