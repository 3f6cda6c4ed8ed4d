//! Deterministic SVG rendering of a map's graph.
//!
//! Screen coordinates are rounded to three decimals with integer arithmetic;
//! every breakpoint marker also carries its exact coordinates as data
//! attributes.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use plconj::{PlMap, Rat};

use crate::format::format_rational;

const SIZE: i64 = 500;
const MARGIN: i64 = 20;
const PLACES: u32 = 3;

/// `r` rounded to `places` decimals, half away from zero.
pub fn decimal(r: &Rat, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r * Rat::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (int, frac) = (&abs / &scale, &abs % &scale);
    let sign = if neg && !abs.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int}");
    }
    format!(
        "{sign}{int}.{:0>width$}",
        frac.to_string(),
        width = places as usize
    )
}

fn screen_x(x: &Rat) -> String {
    decimal(
        &(x * Rat::from_integer(SIZE.into()) + Rat::from_integer(MARGIN.into())),
        PLACES,
    )
}

fn screen_y(y: &Rat) -> String {
    decimal(
        &(Rat::from_integer((MARGIN + SIZE).into()) - y * Rat::from_integer(SIZE.into())),
        PLACES,
    )
}

/// Renders the unit square, the diagonal and the graph of `f`.
pub fn plot(f: &PlMap) -> String {
    let full = SIZE + 2 * MARGIN;
    let (lo, hi) = (MARGIN, MARGIN + SIZE);
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"#).unwrap();
    writeln!(s, r#"  <rect x="{lo}" y="{lo}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black" stroke-width="1"/>"#).unwrap();
    writeln!(s, r##"  <line class="diagonal" x1="{lo}" y1="{hi}" x2="{hi}" y2="{lo}" stroke="#999999" stroke-width="1" stroke-dasharray="4 4"/>"##).unwrap();
    let pts: Vec<String> = f
        .breakpoints()
        .iter()
        .map(|(x, y)| format!("{},{}", screen_x(x), screen_y(y)))
        .collect();
    writeln!(s, r##"  <polyline class="graph" points="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##, pts.join(" ")).unwrap();
    for (x, y) in f.breakpoints() {
        writeln!(
            s,
            r##"  <circle class="breakpoint" cx="{}" cy="{}" r="3" fill="#c0392b" data-x="{}" data-y="{}"/>"##,
            screen_x(x),
            screen_y(y),
            format_rational(x),
            format_rational(y)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
