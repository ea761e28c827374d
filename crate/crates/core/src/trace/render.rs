use num_traits::{One, Signed, Zero};

use crate::matrix::ExactMatrix;
use crate::scalar::{Rational, Scalar};
use crate::spectrum::CharPoly;

use crate::diagnose::Diagnosis;

use super::{Payload, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TextOptions {
    /// Decimal places for floating-point values.
    pub precision: usize,
}

impl Default for TextOptions {
    fn default() -> Self {
        TextOptions { precision: 12 }
    }
}

fn float_text(x: f64, precision: usize) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.precision$}")
}

fn scalar_text(s: &Scalar, opts: &TextOptions) -> String {
    match s {
        Scalar::Float(x) => float_text(*x, opts.precision),
        other => other.to_string(),
    }
}

fn join_scalars(xs: &[Scalar], opts: &TextOptions) -> String {
    xs.iter().map(|x| scalar_text(x, opts)).collect::<Vec<_>>().join(", ")
}

fn inline_text(p: &Payload, opts: &TextOptions) -> Option<String> {
    Some(match p {
        Payload::Bool(b) => b.to_string(),
        Payload::Scalar(s) => scalar_text(s, opts),
        Payload::Scalars(xs) => format!("[{}]", join_scalars(xs, opts)),
        Payload::Vectors(vs) => {
            let parts: Vec<String> = vs.iter().map(|v| format!("({})", join_scalars(v, opts))).collect();
            format!("[{}]", parts.join(", "))
        }
        Payload::Polynomial(poly) => poly.to_string(),
        Payload::Text(t) => t.clone(),
        Payload::Matrix(_) | Payload::Record(_) | Payload::List(_) => return None,
    })
}

fn matrix_lines(m: &ExactMatrix, indent: usize, opts: &TextOptions, out: &mut Vec<String>) {
    let cells: Vec<Vec<String>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| scalar_text(x, opts)).collect())
        .collect();
    let (_, cols) = m.shape();
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let pad = " ".repeat(indent);
    if cells.is_empty() || cols == 0 {
        let (r, c) = m.shape();
        out.push(format!("{pad}[] ({r}x{c})"));
        return;
    }
    for row in cells {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
        out.push(format!("{pad}[{}]", parts.join("  ")));
    }
}

fn block_text(p: &Payload, indent: usize, opts: &TextOptions, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match p {
        Payload::Record(fields) => {
            for (k, v) in fields {
                match v {
                    Payload::Matrix(m) => {
                        out.push(format!("{pad}{k} ="));
                        matrix_lines(m, indent + 2, opts, out);
                    }
                    Payload::Record(_) | Payload::List(_) => {
                        out.push(format!("{pad}{k}:"));
                        block_text(v, indent + 2, opts, out);
                    }
                    _ => out.push(format!("{pad}{k} = {}", inline_text(v, opts).expect("inline payload"))),
                }
            }
        }
        Payload::List(items) => {
            for item in items {
                match item {
                    Payload::Record(fields) if fields.iter().all(|(_, v)| inline_text(v, opts).is_some()) => {
                        let parts: Vec<String> = fields
                            .iter()
                            .map(|(k, v)| format!("{k} = {}", inline_text(v, opts).expect("inline payload")))
                            .collect();
                        out.push(format!("{pad}- {}", parts.join("; ")));
                    }
                    _ => {
                        out.push(format!("{pad}-"));
                        block_text(item, indent + 2, opts, out);
                    }
                }
            }
        }
        Payload::Matrix(m) => matrix_lines(m, indent, opts, out),
        other => out.push(format!("{pad}{}", inline_text(other, opts).expect("inline payload"))),
    }
}

/// Labeled blocks in step order, ending with the verification.
pub fn render_text(t: &Trace, opts: &TextOptions) -> String {
    let mut out = Vec::new();
    for (i, step) in t.steps.iter().enumerate() {
        if i > 0 {
            out.push(String::new());
        }
        out.push(format!("{}: {}", step.kind, step.note));
        block_text(&step.payload, 2, opts, &mut out);
    }
    if out.is_empty() {
        return String::new();
    }
    finish(out)
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

/// One term `c·√d` with its sign split off.
fn term_latex(c: &Rational, d: &num_bigint::BigUint) -> (bool, String) {
    let negative = c.is_negative();
    let c = c.abs();
    if d.is_one() {
        return (negative, rational_latex(&c));
    }
    let root = format!("\\sqrt{{{d}}}");
    let body = if c.is_integer() {
        if c.is_one() {
            root
        } else {
            format!("{}{root}", c.numer())
        }
    } else if c.numer().is_one() {
        format!("\\frac{{{root}}}{{{}}}", c.denom())
    } else {
        format!("\\frac{{{}{root}}}{{{}}}", c.numer(), c.denom())
    };
    (negative, body)
}

fn signed_sum(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

fn scalar_latex(x: &Scalar, opts: &TextOptions) -> String {
    match x {
        Scalar::Rational(r) => rational_latex(r),
        Scalar::Radical(s) => signed_sum(s.terms().map(|(d, c)| term_latex(c, d)).collect()),
        Scalar::Quadratic(q) => {
            let mut terms = Vec::new();
            if !q.rational_part().is_zero() {
                terms.push(term_latex(q.rational_part(), &num_bigint::BigUint::one()));
            }
            if !q.surd_coeff().is_zero() {
                terms.push(term_latex(q.surd_coeff(), q.radicand()));
            }
            signed_sum(terms)
        }
        Scalar::Float(v) => float_text(*v, opts.precision),
    }
}

fn poly_latex(p: &CharPoly) -> String {
    let c = p.coefficients();
    let mut terms = Vec::new();
    for k in (0..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let x = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{k}}}"),
        };
        let (negative, coeff) = term_latex(&c[k], &num_bigint::BigUint::one());
        let body = if k > 0 && c[k].abs().is_one() {
            x
        } else {
            format!("{coeff}{x}")
        };
        terms.push((negative, body));
    }
    signed_sum(terms)
}

fn escape(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '#' | '%' | '&' | '$' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn symbol_latex(label: &str) -> String {
    if let Some(digits) = label.strip_prefix("sigma") {
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            return format!("\\sigma_{{{digits}}}");
        }
    }
    label
        .replace("^-1", "^{-1}")
        .replace("^T", "^{T}")
        .replace("M+", "M^{+}")
        .replace('*', " ")
        .replace("lambda", "\\lambda")
}

fn label_latex(label: &str) -> String {
    if label.contains(' ') && !label.contains("==") {
        format!("\\text{{{}}}", escape(label))
    } else {
        symbol_latex(label)
    }
}

fn matrix_latex(m: &ExactMatrix, opts: &TextOptions) -> String {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return format!("0_{{{r}\\times {c}}}");
    }
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| scalar_latex(x, opts))
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!("\\begin{{bmatrix}} {} \\end{{bmatrix}}", rows.join(" \\\\ "))
}

fn column_latex(v: &[Scalar], opts: &TextOptions) -> String {
    let rows: Vec<String> = v.iter().map(|x| scalar_latex(x, opts)).collect();
    format!("\\begin{{bmatrix}} {} \\end{{bmatrix}}", rows.join(" \\\\ "))
}

fn value_latex(p: &Payload, opts: &TextOptions) -> String {
    match p {
        Payload::Bool(b) => format!("\\text{{{b}}}"),
        Payload::Scalar(s) => scalar_latex(s, opts),
        Payload::Scalars(xs) => {
            let parts: Vec<String> = xs.iter().map(|x| scalar_latex(x, opts)).collect();
            format!("\\left[{}\\right]", parts.join(",\\ "))
        }
        Payload::Vectors(vs) => vs
            .iter()
            .map(|v| column_latex(v, opts))
            .collect::<Vec<_>>()
            .join(",\\ "),
        Payload::Matrix(m) => matrix_latex(m, opts),
        Payload::Polynomial(poly) => poly_latex(poly),
        Payload::Text(t) => format!("\\text{{{}}}", escape(t)),
        Payload::Record(fields) => fields
            .iter()
            .map(|(k, v)| field_latex(k, v, opts))
            .collect::<Vec<_>>()
            .join(",\\quad "),
        Payload::List(items) => items
            .iter()
            .map(|i| value_latex(i, opts))
            .collect::<Vec<_>>()
            .join(";\\quad "),
    }
}

fn field_latex(label: &str, value: &Payload, opts: &TextOptions) -> String {
    match label.split_once("==") {
        Some((lhs, rhs)) => format!(
            "{} = {} \\quad {}",
            symbol_latex(lhs.trim()),
            symbol_latex(rhs.trim()),
            value_latex(value, opts)
        ),
        None => format!("{} = {}", label_latex(label), value_latex(value, opts)),
    }
}

/// Display-math blocks with bracketed matrices and `\sqrt` radicals.
pub fn render_latex(t: &Trace, opts: &TextOptions) -> String {
    let mut out = Vec::new();
    for step in &t.steps {
        out.push(format!("% {}: {}", step.kind, step.note));
        match &step.payload {
            Payload::Record(fields) => {
                for (k, v) in fields {
                    out.push(format!("\\[ {} \\]", field_latex(k, v, opts)));
                }
            }
            Payload::List(items) => {
                for item in items {
                    out.push(format!("\\[ {} \\]", value_latex(item, opts)));
                }
            }
            other => out.push(format!("\\[ {} \\]", value_latex(other, opts))),
        }
    }
    if out.is_empty() {
        return String::new();
    }
    finish(out)
}

fn finish(out: Vec<String>) -> String {
    let mut s = out.join("\n");
    s.push('\n');
    s
}

fn residual_lines(d: &Diagnosis) -> Vec<(String, String)> {
    d.residuals
        .iter()
        .flatten()
        .map(|(k, v)| (k.clone(), format!("{v:.3e}")))
        .collect()
}

/// Verdict first, then one block per finding with its evidence.
pub fn render_diagnosis_text(d: &Diagnosis, opts: &TextOptions) -> String {
    let mut out = vec![format!("verdict: {}", d.verdict)];
    for f in &d.findings {
        out.push(String::new());
        out.push(format!("{} at {}", f.code, f.locus));
        let fields: Vec<(String, Payload)> = f.evidence.iter().map(|e| (e.fact.clone(), e.value.clone())).collect();
        block_text(&Payload::Record(fields), 2, opts, &mut out);
    }
    let res = residual_lines(d);
    if !res.is_empty() {
        out.push(String::new());
        out.push("residuals:".to_string());
        out.extend(res.into_iter().map(|(k, v)| format!("  {k} = {v}")));
    }
    finish(out)
}

pub fn render_diagnosis_latex(d: &Diagnosis, opts: &TextOptions) -> String {
    let mut out = vec![format!("% verdict: {}", d.verdict)];
    for f in &d.findings {
        out.push(format!("% {} at {}", f.code, f.locus));
        for e in &f.evidence {
            out.push(format!("\\[ {} \\]", field_latex(&e.fact, &e.value, opts)));
        }
    }
    for (k, v) in residual_lines(d) {
        out.push(format!("% residual {k} = {v}"));
    }
    finish(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::{diagonalize, svd, SvdMode};
    use crate::matrix::Matrix;
    use crate::trace::{trace_diagonalization, trace_svd};

    #[test]
    fn text_mirrors_the_session_layout() {
        let a = Matrix::from_i64(&[&[1, 2, 2], &[0, 2, 1], &[0, 1, 2]]);
        let t = trace_diagonalization(&a, &diagonalize(&a).unwrap());
        let text = render_text(&t, &TextOptions::default());
        assert!(text.contains("p(x) = x^3 - 5*x^2 + 7*x - 3"), "{text}");
        assert!(text.contains("Eigenvalues of A = [3, 1, 1]"), "{text}");
        assert!(text.contains("P^-1 =\n"), "{text}");
        assert!(text.trim_end().ends_with("P*D*P^-1 == A = true"), "{text}");
    }

    #[test]
    fn latex_uses_bmatrix_and_sqrt() {
        let m = Matrix::from_i64(&[&[3, -1], &[-6, 2]]);
        let t = trace_svd(&m, &svd(&m, SvdMode::Full).unwrap());
        let tex = render_latex(&t, &TextOptions::default());
        assert!(tex.contains("\\sigma_{1} = 5\\sqrt{2}"), "{tex}");
        assert!(tex.contains("\\begin{bmatrix}"), "{tex}");
        assert!(tex.contains("\\frac{\\sqrt{5}}{5}"), "{tex}");
        assert!(tex.contains("x^{2} - 50x"), "{tex}");
    }

    #[test]
    fn empty_trace_renders_empty() {
        let t = Trace::default();
        assert_eq!(render_text(&t, &TextOptions::default()), "");
        assert_eq!(render_latex(&t, &TextOptions::default()), "");
    }

    #[test]
    fn floats_use_fixed_decimals() {
        assert_eq!(float_text(25.575254913906992, 3), "25.575");
        assert_eq!(float_text(-0.0, 2), "0.00");
    }
}
