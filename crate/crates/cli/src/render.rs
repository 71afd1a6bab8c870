//! Presentation helpers: values print as exact fractions with a
//! six-significant-digit decimal in parentheses.

use num::rational::BigRational;
use ppcp_core::length::{approx_decimal, approx_decimal_len, Length};
use ppcp_core::{CenterSet, WeightedGraph};

pub fn value(l: &Length) -> String {
    if l.is_finite() {
        format!("{l} ({})", approx_decimal_len(l))
    } else {
        "inf".to_string()
    }
}

pub fn ratio(r: &BigRational) -> String {
    format!("{r} ({})", approx_decimal(r))
}

pub fn centers(g: &WeightedGraph, c: &CenterSet) -> String {
    let names: Vec<String> = c.iter().map(|v| g.label_of(v)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn header(g: &WeightedGraph) -> String {
    format!(
        "instance {}: {} vertices, {} edges",
        g.name().unwrap_or("unnamed"),
        g.n(),
        g.edge_count()
    )
}
