use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factorize::SvdMode;
use crate::matrix::{dot, vector_is_zero, ExactMatrix, Matrix};
use crate::numeric::{numeric_svd, polynomial_roots, NumericOptions};
use crate::scalar::{rational_to_f64, sqrt_rational, RadicalSum, Rational, Scalar};
use crate::spectrum::{characteristic_polynomial, resolve_spectrum, Eigenvalue};
use crate::trace::{simplify, Payload};

use super::arith::{
    close, close_matrix, collinear, is_identity, lower, mat_vec, matrix_norm, multiset_close, multiset_equal,
    negligible, norm, order, product, quad_to_radical, CheckNum, Lowered,
};
use super::{
    CheckOptions, Claim, Diagnosis, DiagonalizationClaim, Evidence, Finding, Locus, MistakeCode,
    OrthogonalDiagonalizationClaim, SvdClaim,
};

/// Tolerance for comparing exact claims against numerically computed values.
const EXACT_NUMERIC_TOL: f64 = 1e-9;

/// Floor on the tolerance used to fingerprint σ taken from eig(M).
const FINGERPRINT_TOL: f64 = 1e-6;

type Residuals = BTreeMap<String, f64>;

fn finding(code: MistakeCode, locus: Locus, evidence: Vec<Evidence>) -> Finding {
    Finding { code, locus, evidence }
}

fn ev(fact: impl Into<String>, value: Payload) -> Evidence {
    Evidence::new(fact, value)
}

fn text(s: impl Into<String>) -> Payload {
    Payload::text(s)
}

fn shape_text(m: &ExactMatrix) -> String {
    let (r, c) = m.shape();
    format!("{r}x{c}")
}

fn require_square(op: &'static str, a: &ExactMatrix) -> Result<usize> {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return Err(Error::EmptyMatrix);
    }
    if r != c {
        return Err(Error::dims(op, format!("source matrix is {r}x{c}")));
    }
    Ok(r)
}

fn require_shape(op: &'static str, name: &str, m: &ExactMatrix, n: usize) -> Result<()> {
    if m.shape() != (n, n) {
        return Err(Error::dims(
            op,
            format!("{name} is {} but the source is {n}x{n}", shape_text(m)),
        ));
    }
    Ok(())
}

fn distance<T: CheckNum>(x: &Matrix<T>, y: &Matrix<T>) -> f64 {
    x.entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| (a.approx() - b.approx()).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn relative<T: CheckNum>(x: &Matrix<T>, target: &Matrix<T>) -> f64 {
    let scale = matrix_norm(target);
    if scale == 0.0 {
        distance(x, target)
    } else {
        distance(x, target) / scale
    }
}

/// ‖QᵀQ − I‖_F.
fn orthogonality<T: CheckNum>(q: &Matrix<T>) -> Result<f64> {
    let qtq = product(&q.transpose(), q)?;
    Ok(distance(&qtq, &Matrix::identity(q.col_count())))
}

/// Diagonal entries of a claimed diagonal factor, recording any nonzero
/// off-diagonal entries.
fn diagonal_entries<T: CheckNum>(name: &str, d: &Matrix<T>, tol: f64, out: &mut Vec<Finding>) -> Vec<T> {
    let scale = matrix_norm(d);
    let mut offending = Vec::new();
    let mut evidence = Vec::new();
    for i in 0..d.row_count() {
        for j in 0..d.col_count() {
            if i != j && !negligible(d.get(i, j), scale, tol) {
                if !offending.contains(&(j + 1)) {
                    offending.push(j + 1);
                }
                evidence.push(ev(format!("{name}[{},{}]", i + 1, j + 1), d.get(i, j).payload()));
            }
        }
    }
    if !offending.is_empty() {
        offending.sort_unstable();
        out.push(finding(
            MistakeCode::NotDiagonal,
            Locus::columns(name, offending),
            evidence,
        ));
    }
    d.diagonal()
}

/// Per-column check of `A·pⱼ = dⱼ·pⱼ`; returns which columns pass.
fn eigen_columns<T: CheckNum>(
    a: &Matrix<T>,
    p: &Matrix<T>,
    dvals: &[T],
    tol: f64,
    out: &mut Vec<Finding>,
) -> Result<Vec<bool>> {
    let a_norm = matrix_norm(a);
    let mut ok = Vec::with_capacity(p.col_count());
    let mut failing = Vec::new();
    let mut evidence = Vec::new();
    for (j, (col, lambda)) in p.columns().iter().zip(dvals).enumerate() {
        let ap = mat_vec(a, col)?;
        let dp: Vec<T> = col.iter().map(|x| lambda.clone() * x.clone()).collect();
        let scale = (a_norm + lambda.approx().abs()) * norm(col);
        let pass = close(&ap, &dp, scale, tol);
        if !pass {
            failing.push(j + 1);
            evidence.push(ev(format!("A*p{}", j + 1), T::vectors_payload(&[ap])));
            evidence.push(ev(format!("d{0}*p{0}", j + 1), T::vectors_payload(&[dp])));
        }
        ok.push(pass);
    }
    if !failing.is_empty() {
        out.push(finding(
            MistakeCode::NotEigenpair,
            Locus::columns("p", failing),
            evidence,
        ));
    }
    Ok(ok)
}

fn factor_scale<T: CheckNum>(target: &Matrix<T>, factors: &[&Matrix<T>]) -> f64 {
    let bound: f64 = factors.iter().map(|f| matrix_norm(f)).product();
    matrix_norm(target).max(bound)
}

fn diagonalization_findings<T: CheckNum>(
    a: &Matrix<T>,
    p: &Matrix<T>,
    d: &Matrix<T>,
    p_inv: Option<&Matrix<T>>,
    tol: f64,
) -> Result<(Vec<Finding>, Residuals)> {
    let mut out = Vec::new();
    let mut residuals = Residuals::new();
    let dvals = diagonal_entries("d", d, tol, &mut out);

    let det = T::determinant(p)?;
    let hadamard: f64 = p.columns().iter().map(|c| norm(c)).product();
    let singular = negligible(&det, hadamard, tol);
    if singular {
        out.push(finding(
            MistakeCode::ReconstructionMismatch,
            Locus::component("p"),
            vec![ev("det(P)", det.payload())],
        ));
    }

    eigen_columns(a, p, &dvals, tol, &mut out)?;

    let inv = match p_inv {
        Some(pi) => {
            let check = product(p, pi)?;
            if !is_identity(&check, tol) {
                out.push(finding(
                    MistakeCode::ReconstructionMismatch,
                    Locus::component("p_inv"),
                    vec![ev("P*P^-1", T::matrix_payload(&check))],
                ));
            }
            Some(pi.clone())
        }
        None if singular => None,
        None => T::try_inverse(p),
    };

    match inv {
        Some(pi) => {
            let rec = product(&product(p, d)?, &pi)?;
            if !close_matrix(&rec, a, factor_scale(a, &[p, d, &pi]), tol) {
                out.push(finding(
                    MistakeCode::ReconstructionMismatch,
                    Locus::component("a"),
                    vec![ev("P*D*P^-1", T::matrix_payload(&rec))],
                ));
            }
            if T::FLOAT {
                residuals.insert("reconstruction".into(), relative(&rec, a));
            }
        }
        None if !singular => {
            // P is invertible but its inverse is not rational: A·P = P·D is
            // the same condition.
            let ap = product(a, p)?;
            let pd = product(p, d)?;
            if !close_matrix(&ap, &pd, factor_scale(&ap, &[p, d]), tol) {
                out.push(finding(
                    MistakeCode::ReconstructionMismatch,
                    Locus::component("a"),
                    vec![ev("A*P", T::matrix_payload(&ap)), ev("P*D", T::matrix_payload(&pd))],
                ));
            }
        }
        None => {}
    }
    Ok((out, residuals))
}

pub fn check_diagonalization(c: &DiagonalizationClaim, opts: &CheckOptions) -> Result<Diagnosis> {
    opts.validate()?;
    let n = require_square("check_diagonalization", &c.a)?;
    require_shape("check_diagonalization", "P", &c.p, n)?;
    require_shape("check_diagonalization", "D", &c.d, n)?;
    let mut parts = vec![("A", &c.a), ("P", &c.p), ("D", &c.d)];
    if let Some(pi) = &c.p_inv {
        require_shape("check_diagonalization", "P^-1", pi, n)?;
        parts.push(("P^-1", pi));
    }
    let (findings, residuals) = match lower(&parts)? {
        Lowered::Exact(ms) => {
            let (f, _) = diagonalization_findings(&ms[0], &ms[1], &ms[2], ms.get(3), opts.tol)?;
            (f, None)
        }
        Lowered::Float(ms) => {
            let (f, r) = diagonalization_findings(&ms[0], &ms[1], &ms[2], ms.get(3), opts.tol)?;
            (f, Some(r))
        }
    };
    Ok(Diagnosis::from_findings(findings, residuals))
}

fn symmetric_findings<T: CheckNum>(a: &Matrix<T>, tol: f64, out: &mut Vec<Finding>) {
    let t = a.transpose();
    if close_matrix(a, &t, matrix_norm(a), tol) {
        return;
    }
    let scale = matrix_norm(a);
    let n = a.row_count();
    let pair = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !close(&[a.get(i, j).clone()], &[a.get(j, i).clone()], scale, tol));
    let evidence = match pair {
        Some((i, j)) => vec![
            ev(format!("a[{},{}]", i + 1, j + 1), a.get(i, j).payload()),
            ev(format!("a[{},{}]", j + 1, i + 1), a.get(j, i).payload()),
        ],
        None => Vec::new(),
    };
    out.push(finding(MistakeCode::NotSymmetricInput, Locus::component("a"), evidence));
}

fn orthogonal_findings<T: CheckNum>(
    a: &Matrix<T>,
    p: &Matrix<T>,
    d: &Matrix<T>,
    tol: f64,
) -> Result<(Vec<Finding>, Residuals)> {
    let mut out = Vec::new();
    symmetric_findings(a, tol, &mut out);
    let dvals = diagonal_entries("d", d, tol, &mut out);
    let eig_ok = eigen_columns(a, p, &dvals, tol, &mut out)?;
    let cols = p.columns();
    let one = T::one_elem();

    let mut unnormalized = Vec::new();
    let mut norm_evidence = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        if !eig_ok[j] || vector_is_zero(col) {
            continue;
        }
        let n2 = dot(col, col)?;
        if !close(std::slice::from_ref(&n2), std::slice::from_ref(&one), 1.0, tol) {
            unnormalized.push(j + 1);
            norm_evidence.push(ev(format!("|p{}|^2", j + 1), n2.payload()));
        }
    }
    if !unnormalized.is_empty() {
        out.push(finding(
            MistakeCode::UnnormalizedColumns,
            Locus::columns("p", unnormalized),
            norm_evidence,
        ));
    }

    let d_scale = dvals
        .iter()
        .fold(0.0f64, |m, x| m.max(x.approx().abs()))
        .max(f64::MIN_POSITIVE);
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let ip = dot(&cols[i], &cols[j])?;
            if negligible(&ip, norm(&cols[i]) * norm(&cols[j]), tol) {
                continue;
            }
            let shared = order(&dvals[i], &dvals[j], d_scale, tol) == Ordering::Equal;
            let code = if shared {
                MistakeCode::NonOrthogonalEigenspace
            } else {
                MistakeCode::TransposeIsNotInverse
            };
            let mut evidence = vec![ev(format!("<p{},p{}>", i + 1, j + 1), ip.payload())];
            if let (Some(qi), Some(qj)) = (T::primitive_direction(&cols[i]), T::primitive_direction(&cols[j])) {
                let raw = dot(&qi, &qj)?;
                evidence.push(ev(
                    format!("<q{},q{}> before normalization", i + 1, j + 1),
                    Payload::rational(&raw),
                ));
            }
            if shared {
                evidence.push(ev("shared eigenvalue", dvals[i].payload()));
            }
            out.push(finding(code, Locus::columns("p", vec![i + 1, j + 1]), evidence));
        }
    }

    let pt = p.transpose();
    let rec = product(&product(p, d)?, &pt)?;
    if !close_matrix(&rec, a, factor_scale(a, &[p, d, &pt]), tol) {
        out.push(finding(
            MistakeCode::ReconstructionMismatch,
            Locus::component("a"),
            vec![ev("P*D*P^T", T::matrix_payload(&rec))],
        ));
    }
    let mut residuals = Residuals::new();
    if T::FLOAT {
        residuals.insert("reconstruction".into(), relative(&rec, a));
        residuals.insert("orthogonality_p".into(), orthogonality(p)?);
    }
    Ok((out, residuals))
}

pub fn check_orthogonal_diagonalization(c: &OrthogonalDiagonalizationClaim, opts: &CheckOptions) -> Result<Diagnosis> {
    opts.validate()?;
    let n = require_square("check_orthogonal_diagonalization", &c.a)?;
    require_shape("check_orthogonal_diagonalization", "P", &c.p, n)?;
    require_shape("check_orthogonal_diagonalization", "D", &c.d, n)?;
    let parts = [("A", &c.a), ("P", &c.p), ("D", &c.d)];
    let (findings, residuals) = match lower(&parts)? {
        Lowered::Exact(ms) => (orthogonal_findings(&ms[0], &ms[1], &ms[2], opts.tol)?.0, None),
        Lowered::Float(ms) => {
            let (f, r) = orthogonal_findings(&ms[0], &ms[1], &ms[2], opts.tol)?;
            (f, Some(r))
        }
    };
    Ok(Diagnosis::from_findings(findings, residuals))
}

/// Orthonormality of claimed singular vectors, classified against the
/// eigenvectors of the matching Gram matrix `g`.
fn orthonormal_findings<T: CheckNum>(
    name: &str,
    q: &Matrix<T>,
    g: &Matrix<T>,
    tol: f64,
    out: &mut Vec<Finding>,
) -> Result<()> {
    let cols = q.columns();
    let g_norm = matrix_norm(g);
    let images: Vec<Vec<T>> = cols.iter().map(|c| mat_vec(g, c)).collect::<Result<_>>()?;
    let eigen: Vec<bool> = cols
        .iter()
        .zip(&images)
        .map(|(c, w)| !vector_is_zero(c) && collinear(w, c, g_norm * norm(c), tol))
        .collect();
    let one = T::one_elem();
    let mut unnormalized = (Vec::new(), Vec::new());
    let mut wrong = (Vec::new(), Vec::new());
    for (j, col) in cols.iter().enumerate() {
        let n2 = dot(col, col)?;
        if close(std::slice::from_ref(&n2), std::slice::from_ref(&one), 1.0, tol) {
            continue;
        }
        let target = if eigen[j] { &mut unnormalized } else { &mut wrong };
        target.0.push(j + 1);
        target.1.push(ev(format!("|{name}{}|^2", j + 1), n2.payload()));
    }
    if !unnormalized.0.is_empty() {
        out.push(finding(
            MistakeCode::UnnormalizedColumns,
            Locus::columns(name, unnormalized.0),
            unnormalized.1,
        ));
    }
    if !wrong.0.is_empty() {
        out.push(finding(
            MistakeCode::TransposeIsNotInverse,
            Locus::columns(name, wrong.0),
            wrong.1,
        ));
    }
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let ip = dot(&cols[i], &cols[j])?;
            let (ni, nj) = (norm(&cols[i]), norm(&cols[j]));
            if negligible(&ip, ni * nj, tol) {
                continue;
            }
            // Same Rayleigh quotient: (wᵢ·qᵢ)(qⱼ·qⱼ) = (wⱼ·qⱼ)(qᵢ·qᵢ).
            let shared = eigen[i] && eigen[j] && {
                let lhs = dot(&images[i], &cols[i])? * dot(&cols[j], &cols[j])?;
                let rhs = dot(&images[j], &cols[j])? * dot(&cols[i], &cols[i])?;
                close(&[lhs], &[rhs], g_norm * ni * ni * nj * nj, tol)
            };
            let code = if shared {
                MistakeCode::NonOrthogonalEigenspace
            } else {
                MistakeCode::TransposeIsNotInverse
            };
            let mut evidence = vec![ev(format!("<{name}{},{name}{}>", i + 1, j + 1), ip.payload())];
            if let (Some(qi), Some(qj)) = (T::primitive_direction(&cols[i]), T::primitive_direction(&cols[j])) {
                evidence.push(ev(
                    format!("<q{},q{}> before normalization", i + 1, j + 1),
                    Payload::rational(&dot(&qi, &qj)?),
                ));
            }
            out.push(finding(code, Locus::columns(name, vec![i + 1, j + 1]), evidence));
        }
    }
    Ok(())
}

/// Gram eigenvalues lowered to radical sums, when they resolve exactly.
fn exact_gram_eigenvalues(gram: &Matrix<Rational>) -> Result<Option<Vec<RadicalSum>>> {
    let spectrum = match resolve_spectrum(&characteristic_polynomial(gram)?) {
        Ok(s) => s,
        Err(Error::UnsupportedSpectrum(_) | Error::ComplexRootsUnsupported { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    spectrum
        .eigenvalues()
        .iter()
        .map(|e| match e {
            Eigenvalue::Rational(r) => Ok(RadicalSum::from_rational(r.clone())),
            Eigenvalue::Quadratic(q) => quad_to_radical(q),
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Moduli of the eigenvalues of a square matrix, for the σ-from-eig(M)
/// fingerprint.
fn eigenvalue_moduli(m: &Matrix<Rational>) -> Result<Vec<f64>> {
    let p = characteristic_polynomial(m)?;
    let coeffs = p
        .coefficients()
        .iter()
        .map(rational_to_f64)
        .collect::<Result<Vec<_>>>()?;
    Ok(polynomial_roots(&coeffs)
        .into_iter()
        .map(|(re, im)| re.hypot(im))
        .collect())
}

fn padded(values: &[f64], len: usize) -> Vec<f64> {
    let mut v = values.to_vec();
    v.resize(len.max(values.len()), 0.0);
    v
}

/// Compares claimed σ with √eig(MᵀM), and fingerprints σ taken from eig(M).
fn sigma_findings<T: CheckNum>(m: &Matrix<T>, sigmas: &[T], tol: f64, out: &mut Vec<Finding>) -> Result<()> {
    let (rows, cols) = m.shape();
    let size = rows.min(cols);
    let exact_m = T::rational_matrix(m);
    let claimed: Vec<f64> = sigmas.iter().map(|s| s.approx().abs()).collect();

    let mut expected_evidence = None;
    let mut matched = None;
    if !T::FLOAT {
        if let Some(mr) = &exact_m {
            let gram = if cols <= rows {
                mr.transpose().matmul(mr)?
            } else {
                mr.matmul(&mr.transpose())?
            };
            if let Some(eigs) = exact_gram_eigenvalues(&gram)? {
                let mut squares: Vec<RadicalSum> = sigmas
                    .iter()
                    .map(|s| s.as_radical().expect("exact claim"))
                    .map(|r| r.clone() * r)
                    .collect();
                squares.resize(size.max(squares.len()), RadicalSum::zero());
                matched = Some(multiset_equal(&squares, &eigs));
                let rational: Option<Vec<Rational>> = eigs.iter().map(RadicalSum::as_rational).collect();
                expected_evidence = Some(match rational {
                    Some(rs) => {
                        let mut sig = rs.iter().map(sqrt_rational).collect::<Result<Vec<_>>>()?;
                        sig.sort_by(|a, b| b.to_f64().unwrap_or(0.0).total_cmp(&a.to_f64().unwrap_or(0.0)));
                        ev(
                            "sqrt(eig(M^T M))",
                            Payload::Scalars(sig.into_iter().map(|t| simplify(&RadicalSum::from_term(t))).collect()),
                        )
                    }
                    None => ev("eig(M^T M)", Payload::Scalars(eigs.iter().map(simplify).collect())),
                });
            }
        }
    }
    if matched.is_none() {
        let mf = m.map(|x| x.approx());
        let numeric = numeric_svd(&mf, &NumericOptions::default())?;
        let compare_tol = if T::FLOAT { tol } else { EXACT_NUMERIC_TOL };
        let expected = padded(&numeric.singular_values, size);
        matched = Some(multiset_close(&padded(&claimed, size), &expected, compare_tol));
        expected_evidence = Some(ev(
            "sqrt(eig(M^T M))",
            Payload::Scalars(expected.iter().map(|&x| Scalar::Float(x)).collect()),
        ));
    }
    if matched == Some(true) {
        return Ok(());
    }

    let claimed_evidence = ev(
        "claimed sigma",
        Payload::Scalars(sigmas.iter().map(|s| s.to_scalar()).collect()),
    );
    if rows == cols {
        if let Some(mr) = &exact_m {
            let moduli = eigenvalue_moduli(mr)?;
            let roots: Vec<f64> = moduli.iter().map(|x| x.sqrt()).collect();
            let fp_tol = tol.max(FINGERPRINT_TOL);
            let target = padded(&claimed, rows);
            let hit = if multiset_close(&target, &moduli, fp_tol) {
                Some(("|eig(M)|", moduli))
            } else if multiset_close(&target, &roots, fp_tol) {
                Some(("sqrt(|eig(M)|)", roots))
            } else {
                None
            };
            if let Some((label, values)) = hit {
                out.push(finding(
                    MistakeCode::WrongGramMatrix,
                    Locus::component("sigma"),
                    vec![
                        claimed_evidence,
                        ev(label, Payload::Scalars(values.into_iter().map(Scalar::Float).collect())),
                        expected_evidence.expect("expected values computed"),
                    ],
                ));
                return Ok(());
            }
        }
    }
    out.push(finding(
        MistakeCode::SigmaMismatch,
        Locus::component("sigma"),
        vec![claimed_evidence, expected_evidence.expect("expected values computed")],
    ));
    Ok(())
}

struct SvdShape {
    sigma_rows: usize,
    sigma_cols: usize,
    conformable: bool,
}

fn svd_shape_findings(c: &SvdClaim, out: &mut Vec<Finding>) -> Result<SvdShape> {
    let (m, n) = c.m.shape();
    let (um, uk) = c.u.shape();
    let (vn, vk) = c.v.shape();
    let (sr, sc) = c.sigma.shape();
    if um != m || vn != n || uk > m || vk > n {
        return Err(Error::dims(
            "check_svd",
            format!("M is {m}x{n} but U is {}, V is {}", shape_text(&c.u), shape_text(&c.v)),
        ));
    }
    let shapes = || {
        vec![
            ev("U", text(shape_text(&c.u))),
            ev("Sigma", text(shape_text(&c.sigma))),
            ev("V", text(shape_text(&c.v))),
        ]
    };
    let mut shape = SvdShape {
        sigma_rows: sr,
        sigma_cols: sc,
        conformable: sr == uk && sc == vk,
    };
    match c.mode {
        SvdMode::Full if uk == m && vk == n => {
            if (sr, sc) != (m, n) {
                out.push(finding(
                    MistakeCode::SigmaShapeMismatch,
                    Locus::component("sigma"),
                    shapes(),
                ));
            }
        }
        SvdMode::Full => {
            if (sr, sc) == (uk, vk) && uk == vk {
                out.push(finding(MistakeCode::ReducedAsFull, Locus::component("u"), shapes()));
            } else if (sr, sc) == (m, n) {
                let mut evidence = shapes();
                if uk < m {
                    evidence.push(ev("missing columns of U", Payload::count(m - uk)));
                    out.push(finding(
                        MistakeCode::MissingCompletion,
                        Locus::columns("u", (uk + 1..=m).collect()),
                        evidence.clone(),
                    ));
                }
                if vk < n {
                    evidence.push(ev("missing columns of V", Payload::count(n - vk)));
                    out.push(finding(
                        MistakeCode::MissingCompletion,
                        Locus::columns("v", (vk + 1..=n).collect()),
                        evidence,
                    ));
                }
                shape = SvdShape {
                    sigma_rows: uk,
                    sigma_cols: vk,
                    conformable: true,
                };
            } else {
                out.push(finding(
                    MistakeCode::SigmaShapeMismatch,
                    Locus::component("sigma"),
                    shapes(),
                ));
            }
        }
        SvdMode::Reduced => {
            if !(sr == sc && uk == sr && vk == sc) {
                out.push(finding(
                    MistakeCode::SigmaShapeMismatch,
                    Locus::component("sigma"),
                    shapes(),
                ));
            }
        }
    }
    Ok(shape)
}

fn svd_findings<T: CheckNum>(
    c: &SvdClaim,
    m: &Matrix<T>,
    u: &Matrix<T>,
    sigma: &Matrix<T>,
    v: &Matrix<T>,
    tol: f64,
) -> Result<(Vec<Finding>, Residuals)> {
    let mut out = Vec::new();
    let shape = svd_shape_findings(c, &mut out)?;
    let sigma = Matrix::from_fn(shape.sigma_rows, shape.sigma_cols, |i, j| sigma.get(i, j).clone());

    let values = diagonal_entries("sigma", &sigma, tol, &mut out);
    let scale = values
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.approx().abs()))
        .max(f64::MIN_POSITIVE);
    let zero = T::zero_elem();
    let negative: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, s)| order(*s, &zero, scale, tol) == Ordering::Less)
        .map(|(i, _)| i + 1)
        .collect();
    if !negative.is_empty() {
        let evidence = negative
            .iter()
            .map(|&i| ev(format!("sigma{i}"), values[i - 1].payload()))
            .collect();
        out.push(finding(
            MistakeCode::SigmaNegative,
            Locus::columns("sigma", negative),
            evidence,
        ));
    }
    for i in 1..values.len() {
        if order(&values[i - 1], &values[i], scale, tol) == Ordering::Less {
            out.push(finding(
                MistakeCode::SigmaNotDescending,
                Locus::columns("sigma", vec![i, i + 1]),
                vec![
                    ev(format!("sigma{i}"), values[i - 1].payload()),
                    ev(format!("sigma{}", i + 1), values[i].payload()),
                ],
            ));
        }
    }
    if c.mode == SvdMode::Reduced && shape.conformable {
        let zeros: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, s)| negligible(*s, scale, tol))
            .map(|(i, _)| i + 1)
            .collect();
        if !zeros.is_empty() {
            out.push(finding(
                MistakeCode::SigmaShapeMismatch,
                Locus::columns("sigma", zeros),
                vec![ev(
                    "reduced Sigma keeps only positive singular values",
                    Payload::Bool(false),
                )],
            ));
        }
    }

    let mt = m.transpose();
    orthonormal_findings("u", u, &product(m, &mt)?, tol, &mut out)?;
    orthonormal_findings("v", v, &product(&mt, m)?, tol, &mut out)?;

    sigma_findings(m, &values, tol, &mut out)?;

    let mut residuals = Residuals::new();
    if shape.conformable {
        let vt = v.transpose();
        let rec = product(&product(u, &sigma)?, &vt)?;
        if !close_matrix(&rec, m, factor_scale(m, &[u, &sigma, &vt]), tol) {
            out.push(finding(
                MistakeCode::ReconstructionMismatch,
                Locus::component("m"),
                vec![ev("U*Sigma*V^T", T::matrix_payload(&rec))],
            ));
        }
        if T::FLOAT {
            residuals.insert("reconstruction".into(), relative(&rec, m));
        }
    } else {
        out.push(finding(
            MistakeCode::ReconstructionMismatch,
            Locus::component("m"),
            vec![ev("U*Sigma*V^T", text("undefined for these shapes"))],
        ));
    }
    if T::FLOAT {
        residuals.insert("orthogonality_u".into(), orthogonality(u)?);
        residuals.insert("orthogonality_v".into(), orthogonality(v)?);
    }
    Ok((out, residuals))
}

pub fn check_svd(c: &SvdClaim, opts: &CheckOptions) -> Result<Diagnosis> {
    opts.validate()?;
    let (m, n) = c.m.shape();
    if m == 0 || n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let parts = [("M", &c.m), ("U", &c.u), ("Sigma", &c.sigma), ("V", &c.v)];
    let (findings, residuals) = match lower(&parts)? {
        Lowered::Exact(ms) => (svd_findings(c, &ms[0], &ms[1], &ms[2], &ms[3], opts.tol)?.0, None),
        Lowered::Float(ms) => {
            let (f, r) = svd_findings(c, &ms[0], &ms[1], &ms[2], &ms[3], opts.tol)?;
            (f, Some(r))
        }
    };
    Ok(Diagnosis::from_findings(findings, residuals))
}

pub fn check(claim: &Claim, opts: &CheckOptions) -> Result<Diagnosis> {
    match claim {
        Claim::Diagonalization(c) => check_diagonalization(c, opts),
        Claim::OrthogonalDiagonalization(c) => check_orthogonal_diagonalization(c, opts),
        Claim::Svd(c) => check_svd(c, opts),
    }
}
