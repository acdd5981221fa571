//! Text rendering of run results.

use std::fmt::Write;

use quditsim_core::circuit::{Timings, Value};
use quditsim_core::{Complex, ResultSet};

/// Imaginary parts below this are not printed.
const IMAG_EPSILON: f64 = 1e-15;

/// Shortest round-trip float text, always with a fractional part (`1.0`).
pub fn format_real(x: f64) -> String {
    format!("{x:?}")
}

pub fn format_complex(z: Complex) -> String {
    if z.im.abs() < IMAG_EPSILON {
        return format_real(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}j)", format_real(z.re), sign, format_real(z.im.abs()))
}

pub fn format_value(v: Value) -> String {
    match v {
        Value::Amplitude(a) => format_complex(a),
        Value::Probability(p) => format_real(p),
    }
}

/// Ket view, one `{"|ket>": value}` per reported basis state.
pub fn render_print(result: &ResultSet) -> quditsim_core::Result<String> {
    let rows = result
        .entries()?
        .into_iter()
        .map(|e| format!("{{\"{}\": {}}}", e.label, format_value(e.value)))
        .collect::<Vec<_>>();
    Ok(bracketed(&rows))
}

/// Raw view, one `(index, value)` per reported basis state.
pub fn render_state(result: &ResultSet) -> quditsim_core::Result<String> {
    let rows = result
        .entries()?
        .into_iter()
        .map(|e| format!("({}, {})", e.index, format_value(e.value)))
        .collect::<Vec<_>>();
    Ok(bracketed(&rows))
}

fn bracketed(rows: &[String]) -> String {
    if rows.is_empty() {
        return "[]\n".into();
    }
    let mut out = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        let comma = if i + 1 < rows.len() { "," } else { "" };
        writeln!(out, "    {row}{comma}").unwrap();
    }
    out.push_str("]\n");
    out
}

pub fn render_timings(t: &Timings) -> String {
    // Display never switches to exponent form, unlike Debug
    format!("Build elapsed: {}s\nExecution elapsed: {}s\n", t.load_secs, t.exec_secs)
}

#[cfg(test)]
mod tests {
    use quditsim_core::{QuantumCircuit, ValueKind};

    use super::*;

    fn golden() -> ResultSet {
        let mut qc = QuantumCircuit::new([2, 3, 3]).unwrap();
        qc.h(0).unwrap().cx((0, 1), 2).unwrap();
        qc.run().unwrap()
    }

    #[test]
    fn golden_print_view() {
        let text = render_print(&golden()).unwrap();
        assert_eq!(
            text,
            "[\n    {\"|000>\": 0.7071067811865475},\n    {\"|120>\": 0.7071067811865475}\n]\n"
        );
    }

    #[test]
    fn probability_view_sums_to_one() {
        let r = golden().with_value_kind(ValueKind::Probability);
        let total: f64 = r
            .entries()
            .unwrap()
            .iter()
            .map(|e| match e.value {
                Value::Probability(p) => p,
                _ => unreachable!(),
            })
            .sum();
        assert!(total <= 1.0 + 1e-9 && (total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn state_view_of_single_flip() {
        let mut qc = QuantumCircuit::new([2]).unwrap();
        qc.x(0, 1).unwrap();
        assert_eq!(render_state(&qc.run().unwrap()).unwrap(), "[\n    (1, 1.0)\n]\n");
    }

    #[test]
    fn number_formats() {
        assert_eq!(format_real(1.0), "1.0");
        assert_eq!(format_complex(Complex::new(0.5, 1e-17)), "0.5");
        assert_eq!(format_complex(Complex::new(-0.5, -0.25)), "(-0.5-0.25j)");
        assert_eq!(format_complex(Complex::new(0.0, 1.0)), "(0.0+1.0j)");
        let t = Timings {
            load_secs: 0.25,
            exec_secs: 1.5,
        };
        assert_eq!(render_timings(&t), "Build elapsed: 0.25s\nExecution elapsed: 1.5s\n");
        let small = Timings {
            load_secs: 0.0001919269561767578,
            exec_secs: 7.5e-6,
        };
        assert_eq!(
            render_timings(&small),
            "Build elapsed: 0.0001919269561767578s\nExecution elapsed: 0.0000075s\n"
        );
    }
}
