use laplace_core::exact::format_rational;
use laplace_core::Rational;
use serde_json::Value;

/// Left-aligned text table with two-space gutters.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",") + "\n";
    for row in rows {
        out += &row.join(",");
        out.push('\n');
    }
    out
}

pub fn json(v: &Value) -> String {
    laplace_core::io::to_canonical_string(v)
}

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

pub fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// `c_0 + c_1 mu + c_2 mu^2 + ...`, skipping zero coefficients.
pub fn polynomial(q: &[Rational], var: &str) -> String {
    use num_traits::{One, Zero};
    let mut parts = Vec::new();
    for (k, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let text = if k == 0 {
            format_rational(c)
        } else if c.is_one() {
            power
        } else if (-c).is_one() {
            format!("-{power}")
        } else {
            format!("{} {power}", format_rational(c))
        };
        parts.push(text);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}
