//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any of them fails.

#[path = "../../core/tests/props/mod.rs"]
mod props;

mod common;

use common::{run, schema_errors, Scratch};
use exactfact::diagnose::{
    check, CheckOptions, Claim, DiagonalizationClaim, MistakeCode, OrthogonalDiagonalizationClaim, SvdClaim,
};
use exactfact::error::Error;
use exactfact::factorize::{
    diagonalize, gram_schmidt, orthogonal_diagonalize, pseudoinverse, rational_direction, svd, to_radical_matrix,
    SvdMode,
};
use exactfact::matrix::{ExactMatrix, Matrix};
use exactfact::numeric::{numeric_svd, NumericOptions};
use exactfact::scalar::{canonicalize_radical, frac, int, QuadRational, RadicalSum, RadicalTerm, Rational};
use exactfact::spectrum::{characteristic_polynomial, eigensystem, Eigenvalue};
use exactfact::trace::{explain, penrose, ComputeMode, Operation, StepKind};
use num_bigint::{BigInt, BigUint};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if let false = $cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: exactfact::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rad(c: Rational, r: i64) -> RadicalSum {
    RadicalSum::from_term(canonicalize_radical(&c, &BigInt::from(r)).unwrap())
}

fn coefficients(a: &Matrix<Rational>) -> Result<Vec<Rational>, String> {
    Ok(ok(characteristic_polynomial(a))?.coefficients().to_vec())
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// `v` is a nonzero multiple of the integer vector `w`.
fn collinear(v: &[RadicalSum], w: &[i64]) -> bool {
    let Some(d) = rational_direction(v) else {
        return false;
    };
    let w = ints(w);
    d.iter().any(|x| *x != int(0)) && (0..d.len()).all(|i| (0..d.len()).all(|j| &d[i] * &w[j] == &d[j] * &w[i]))
}

fn is_orthonormal(q: &Matrix<RadicalSum>) -> Result<bool, String> {
    Ok(ok(q.transpose().matmul(q))?.is_identity())
}

fn term_value(t: &RadicalTerm) -> RadicalSum {
    RadicalSum::from_term(t.clone())
}

fn a21() -> Matrix<Rational> {
    Matrix::from_i64(&[&[1, 2, 2], &[0, 2, 1], &[0, 1, 2]])
}

fn b22() -> Matrix<Rational> {
    Matrix::from_i64(&[&[3, -4, -4], &[-4, 3, -4], &[-4, -4, 3]])
}

fn m23() -> Matrix<Rational> {
    Matrix::from_i64(&[&[3, -1], &[-6, 2]])
}

fn m33() -> Matrix<Rational> {
    Matrix::from_i64(&[&[2, -2], &[-3, -4], &[-4, -3]])
}

fn coincident() -> Matrix<Rational> {
    Matrix::from_i64(&[&[3, 1, 1], &[1, 3, 1], &[1, 1, 3]])
}

fn criterion_1() -> Outcome {
    let a = a21();
    ensure!(
        coefficients(&a)? == ints(&[-3, 7, -5, 1]),
        "char poly {:?}",
        coefficients(&a)?
    );
    let f = ok(diagonalize(&a))?;
    ensure!(f.d == Matrix::diagonal_matrix(&ints(&[3, 1, 1]), 3, 3), "D = {}", f.d);
    let h = frac(1, 2);
    let p_inv = Matrix::from_rows(vec![
        vec![int(0), h.clone(), h.clone()],
        vec![int(1), int(-1), int(-1)],
        vec![int(0), h.clone(), -h],
    ])
    .unwrap();
    ensure!(f.p_inv == p_inv, "P^-1 = {}", f.p_inv);
    ensure!(ok(f.p.matmul(&f.d))?.matmul(&f.p_inv).unwrap() == a, "P*D*P^-1 != A");
    Ok(())
}

fn criterion_2() -> Outcome {
    let b = b22();
    ensure!(
        coefficients(&b)? == ints(&[245, -21, -9, 1]),
        "char poly {:?}",
        coefficients(&b)?
    );
    let mut eigs: Vec<Rational> = ok(eigensystem(&b))?
        .spectrum
        .eigenvalues()
        .iter()
        .map(|e| e.as_rational().cloned().ok_or("irrational eigenvalue"))
        .collect::<Result<_, _>>()?;
    eigs.sort();
    ensure!(eigs == ints(&[-5, 7, 7]), "eigenvalues {eigs:?}");
    let gs = ok(gram_schmidt(&[ints(&[1, 0, -1]), ints(&[0, 1, -1])]))?;
    let second: Vec<RadicalSum> = gs[1].iter().cloned().map(RadicalSum::from_rational).collect();
    ensure!(
        collinear(&second, &[1, -2, 1]),
        "second Gram-Schmidt vector {:?}",
        gs[1]
    );
    let f = ok(orthogonal_diagonalize(&b))?;
    ensure!(is_orthonormal(&f.p)?, "P^T P != I");
    let pdpt = ok(ok(f.p.matmul(&to_radical_matrix(&f.d)))?.matmul(&f.p.transpose()))?;
    ensure!(pdpt == to_radical_matrix(&b), "P*D*P^T != B");
    Ok(())
}

fn reconstructs(m: &Matrix<Rational>, u: &Matrix<RadicalSum>, s: &Matrix<RadicalSum>, v: &Matrix<RadicalSum>) -> bool {
    u.matmul(s)
        .and_then(|us| us.matmul(&v.transpose()))
        .is_ok_and(|r| r == to_radical_matrix(m))
}

fn criterion_3() -> Outcome {
    let m = m23();
    let s = ok(svd(&m, SvdMode::Full))?;
    let five_root2 = rad(int(5), 2);
    ensure!(s.rank == 1, "rank {}", s.rank);
    ensure!(
        s.singular_values.len() == 1 && term_value(&s.singular_values[0]) == five_root2,
        "singular values {:?}",
        s.singular_values
    );
    let zero = RadicalSum::from_rational(int(0));
    let sigma = Matrix::from_rows(vec![vec![five_root2, zero.clone()], vec![zero.clone(), zero]]).unwrap();
    ensure!(s.sigma == sigma, "Sigma = {}", s.sigma);
    ensure!(is_orthonormal(&s.u)? && is_orthonormal(&s.v)?, "U or V not orthogonal");
    ensure!(reconstructs(&m, &s.u, &s.sigma, &s.v), "U*Sigma*V^T != M");
    ensure!(
        s.completion.len() == 1 && collinear(&s.completion[0], &[2, 1]),
        "completion {:?}",
        s.completion
    );
    Ok(())
}

fn criterion_4() -> Outcome {
    let m = m33();
    let full = ok(svd(&m, SvdMode::Full))?;
    let sigmas: Vec<RadicalSum> = full.singular_values.iter().map(term_value).collect();
    let expected: Vec<RadicalSum> = ints(&[7, 3]).into_iter().map(RadicalSum::from_rational).collect();
    ensure!(sigmas == expected, "singular values {sigmas:?}");
    ensure!(
        collinear(&full.u.column(2), &[1, -2, 2]),
        "third column of U {:?}",
        full.u.column(2)
    );
    ensure!(
        reconstructs(&m, &full.u, &full.sigma, &full.v),
        "full factors do not reproduce M"
    );
    let reduced = ok(svd(&m, SvdMode::Reduced))?;
    ensure!(
        reconstructs(&m, &reduced.u, &reduced.sigma, &reduced.v),
        "reduced factors do not reproduce M"
    );
    let p = ok(pseudoinverse(&m))?.pinv;
    let expected = Matrix::from_i64(&[&[14, -1, -8], &[-14, -8, -1]]).scale(&frac(1, 63));
    ensure!(p == expected, "pseudoinverse {p}");
    ensure!(penrose(&m, &p) == [true; 4], "Penrose conditions {:?}", penrose(&m, &p));
    Ok(())
}

fn criterion_5() -> Outcome {
    let a = Matrix::from_i64(&[&[1, 2, 3], &[2, 5, 6], &[3, 6, 9]]);
    ensure!(
        coefficients(&a)? == ints(&[0, 10, -15, 1]),
        "char poly {:?}",
        coefficients(&a)?
    );
    let es = ok(eigensystem(&a))?;
    let d = BigUint::from(185u32);
    let plus = QuadRational::new(frac(15, 2), frac(1, 2), d.clone()).unwrap();
    let minus = QuadRational::new(frac(15, 2), frac(-1, 2), d).unwrap();
    let mut got = es.spectrum.eigenvalues();
    let mut want = vec![
        Eigenvalue::Quadratic(plus),
        Eigenvalue::Quadratic(minus),
        Eigenvalue::Rational(int(0)),
    ];
    let key = |e: &Eigenvalue| e.to_f64().unwrap();
    got.sort_by(|x, y| key(x).total_cmp(&key(y)));
    want.sort_by(|x, y| key(x).total_cmp(&key(y)));
    ensure!(got == want, "spectrum {got:?}");
    let kernel = es
        .entries
        .iter()
        .find(|e| e.eigenvalue.as_rational() == Some(&int(0)))
        .and_then(|e| e.basis.rational())
        .ok_or("no rational eigenvector for 0")?;
    ensure!(kernel == [ints(&[3, 0, -1])], "kernel basis {kernel:?}");
    ensure!(
        matches!(orthogonal_diagonalize(&a), Err(Error::IrrationalSpectrum { .. })),
        "exact orthogonal diagonalization did not report an irrational spectrum"
    );
    let t = ok(explain(Operation::OrthDiag, &a, ComputeMode::Auto))?;
    let float = |label: &str| match t.field(StepKind::AssembleFactor, label).and_then(|p| p.as_matrix()) {
        Some(ExactMatrix::Float(m)) => Ok(m.clone()),
        other => Err(format!("factor {label}: {other:?}")),
    };
    let (p, dd) = (float("P")?, float("D")?);
    let rebuilt = ok(ok(p.matmul(&dd))?.matmul(&p.transpose()))?;
    let af = a.map(|x| exactfact::scalar::rational_to_f64(x).unwrap());
    let residual = ok(rebuilt.sub(&af))?.frobenius_norm() / af.frobenius_norm();
    ensure!(residual <= 1e-9, "reconstruction residual {residual:e}");
    Ok(())
}

fn close(got: &[f64], want: &[f64]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 1e-9)
}

fn criterion_6() -> Outcome {
    let opts = NumericOptions::default();
    let m = Matrix::from_f64(&[&[4.0, 11.0, 14.0], &[-1.0, 1.0, 17.0], &[0.0, 12.0, 5.0]]);
    let s = ok(numeric_svd(&m, &opts))?;
    let want = [25.575254913906992, 11.363233131054077, 3.1278217497152005];
    ensure!(
        close(&s.singular_values, &want),
        "3x3 singular values {:?}",
        s.singular_values
    );
    let tall = Matrix::from_f64(&[&[2.0, 2.0], &[1.0, 3.0], &[0.0, 0.0], &[0.0, 0.0]]);
    let s = ok(numeric_svd(&tall, &opts))?;
    let r = 65f64.sqrt();
    let want = [(9.0 + r).sqrt(), (9.0 - r).sqrt()];
    ensure!(
        close(&s.singular_values, &want),
        "4x2 singular values {:?}",
        s.singular_values
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    let c = coincident();
    let mut eigs: Vec<Rational> = ok(eigensystem(&c))?
        .spectrum
        .eigenvalues()
        .iter()
        .map(|e| e.as_rational().cloned().ok_or("irrational eigenvalue"))
        .collect::<Result<_, _>>()?;
    let mut sigmas: Vec<Rational> = ok(svd(&c, SvdMode::Full))?
        .sigma_diagonal()
        .iter()
        .map(|s| s.as_rational().ok_or("irrational singular value"))
        .collect::<Result<_, _>>()?;
    eigs.sort();
    sigmas.sort();
    ensure!(eigs == ints(&[2, 2, 5]), "eigenvalues {eigs:?}");
    ensure!(sigmas == eigs, "singular values {sigmas:?}");
    Ok(())
}

fn expect_code(claim: &Claim, code: MistakeCode) -> Outcome {
    let d = ok(check(claim, &CheckOptions::default()))?;
    ensure!(!d.is_valid() && d.has(code), "expected {code:?}, got {:?}", d.codes());
    Ok(())
}

fn svd_claim(m: &Matrix<Rational>, mode: SvdMode, asserted: SvdMode) -> Result<SvdClaim, String> {
    let s = ok(svd(m, mode))?;
    Ok(SvdClaim {
        m: ExactMatrix::Rational(m.clone()),
        u: ExactMatrix::Radical(s.u),
        sigma: ExactMatrix::Radical(s.sigma),
        v: ExactMatrix::Radical(s.v),
        mode: asserted,
    })
}

fn unmutated_corpus() -> Result<Vec<(String, Claim)>, String> {
    let mut claims = Vec::new();
    let square = [
        a21(),
        b22(),
        coincident(),
        Matrix::identity(3),
        Matrix::from_i64(&[&[3, 1], &[0, 2]]),
    ];
    for a in &square {
        let f = ok(diagonalize(a))?;
        claims.push((
            format!("diag {a}"),
            Claim::Diagonalization(DiagonalizationClaim {
                a: ExactMatrix::Rational(a.clone()),
                p: ExactMatrix::Rational(f.p),
                d: ExactMatrix::Rational(f.d),
                p_inv: Some(ExactMatrix::Rational(f.p_inv)),
            }),
        ));
        if a.is_symmetric() {
            let f = ok(orthogonal_diagonalize(a))?;
            claims.push((
                format!("orthdiag {a}"),
                Claim::OrthogonalDiagonalization(OrthogonalDiagonalizationClaim {
                    a: ExactMatrix::Rational(a.clone()),
                    p: ExactMatrix::Radical(f.p),
                    d: ExactMatrix::Rational(f.d),
                }),
            ));
        }
    }
    for m in [m23(), m33(), b22(), coincident(), Matrix::identity(3)] {
        for mode in [SvdMode::Full, SvdMode::Reduced] {
            claims.push((format!("svd {mode} {m}"), Claim::Svd(svd_claim(&m, mode, mode)?)));
        }
    }
    let floats = [
        Matrix::from_f64(&[&[4.0, 11.0, 14.0], &[-1.0, 1.0, 17.0], &[0.0, 12.0, 5.0]]),
        Matrix::from_f64(&[&[2.0, 2.0], &[1.0, 3.0], &[0.0, 0.0], &[0.0, 0.0]]),
    ];
    for m in floats {
        let s = ok(numeric_svd(&m, &NumericOptions::default()))?;
        claims.push((
            format!("numeric svd {m}"),
            Claim::Svd(SvdClaim {
                m: ExactMatrix::Float(m),
                u: ExactMatrix::Float(s.u),
                sigma: ExactMatrix::Float(s.sigma),
                v: ExactMatrix::Float(s.v),
                mode: SvdMode::Full,
            }),
        ));
    }
    Ok(claims)
}

fn criterion_8() -> Outcome {
    let b = ExactMatrix::Rational(b22());
    let d = ExactMatrix::Rational(Matrix::from_i64(&[&[-5, 0, 0], &[0, 7, 0], &[0, 0, 7]]));

    let h = frac(1, 2);
    let unnormalized = Matrix::from_rows(vec![
        vec![int(1), int(1), -h.clone()],
        vec![int(1), int(0), int(1)],
        vec![int(1), int(-1), -h],
    ])
    .unwrap();
    let claim = Claim::OrthogonalDiagonalization(OrthogonalDiagonalizationClaim {
        a: b.clone(),
        p: ExactMatrix::Rational(unnormalized),
        d: d.clone(),
    });
    expect_code(&claim, MistakeCode::UnnormalizedColumns)?;

    let z = RadicalSum::from_rational(int(0));
    let (s3, s2) = (rad(frac(1, 3), 3), |c| rad(c, 2));
    let skipped = Matrix::from_rows(vec![
        vec![s3.clone(), s2(frac(1, 2)), z.clone()],
        vec![s3.clone(), z, s2(frac(1, 2))],
        vec![s3, s2(frac(-1, 2)), s2(frac(-1, 2))],
    ])
    .unwrap();
    let claim = Claim::OrthogonalDiagonalization(OrthogonalDiagonalizationClaim {
        a: b,
        p: ExactMatrix::Radical(skipped),
        d,
    });
    expect_code(&claim, MistakeCode::NonOrthogonalEigenspace)?;

    let identity = ExactMatrix::Rational(Matrix::identity(2));
    let claim = Claim::Svd(SvdClaim {
        m: ExactMatrix::Rational(Matrix::from_i64(&[&[3, 1], &[0, 2]])),
        u: identity.clone(),
        sigma: ExactMatrix::Rational(Matrix::from_i64(&[&[3, 0], &[0, 2]])),
        v: identity,
        mode: SvdMode::Full,
    });
    expect_code(&claim, MistakeCode::WrongGramMatrix)?;

    let claim = Claim::Svd(svd_claim(&m33(), SvdMode::Reduced, SvdMode::Full)?);
    expect_code(&claim, MistakeCode::ReducedAsFull)?;

    let mut dropped = svd_claim(&m23(), SvdMode::Full, SvdMode::Full)?;
    let ExactMatrix::Radical(u) = &dropped.u else {
        return Err("radical U expected".into());
    };
    dropped.u = ExactMatrix::Radical(u.column_slice(0..1));
    expect_code(&Claim::Svd(dropped), MistakeCode::MissingCompletion)?;

    for (name, claim) in unmutated_corpus()? {
        let d = ok(check(&claim, &CheckOptions::default()))?;
        ensure!(d.is_valid(), "false positive on {name}: {:?}", d.codes());
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for (name, property) in props::ALL {
        property().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let s = Scratch::new();
    let a = s.rows("a.json", &[&["1", "2", "2"], &["0", "2", "1"], &["0", "1", "2"]]);
    let m = s.rows("m.json", &[&["2", "-2"], &["-3", "-4"], &["-4", "-3"]]);

    let out = run(&["diag", &a]);
    ensure!(out.code == 0, "diag exited {}: {}", out.code, out.stderr);
    for golden in [
        "p(x) = x^3 - 5*x^2 + 7*x - 3",
        "Eigenvalues of A = [3, 1, 1]",
        "P*D*P^-1 == A = true",
    ] {
        ensure!(out.stdout.contains(golden), "diag text lacks {golden:?}");
    }

    let f = ok(svd(&m33(), SvdMode::Reduced))?;
    let u = s.matrix("u.json", &ExactMatrix::Radical(f.u));
    let sigma = s.matrix("s.json", &ExactMatrix::Radical(f.sigma));
    let v = s.matrix("v.json", &ExactMatrix::Radical(f.v));
    let check_args = |mode: &'static str| {
        vec![
            "--format", "json", "check", "svd", "--matrix", &m, "--u", &u, "--sigma", &sigma, "--v", &v, "--mode", mode,
        ]
    };
    let valid = run(&check_args("reduced"));
    ensure!(valid.code == 0, "valid claim exited {}", valid.code);
    let invalid = run(&check_args("full"));
    ensure!(invalid.code == 1, "invalid claim exited {}", invalid.code);
    for doc in [&valid.stdout, &invalid.stdout] {
        let errors = schema_errors("diagnosis.schema.json", doc);
        ensure!(errors.is_empty(), "diagnosis schema: {errors:?}");
    }

    let ragged = s.raw("ragged.json", r#"{"rows":[["1","2"],["3"]]}"#);
    let out = run(&["eigen", &ragged]);
    ensure!(out.code == 2, "ragged input exited {}", out.code);
    let defective = s.rows("j.json", &[&["1", "1"], &["0", "1"]]);
    let out = run(&["diag", &defective]);
    ensure!(out.code == 3, "defective matrix exited {}", out.code);

    for args in [
        vec!["--format", "json", "diag", &a],
        vec!["--format", "json", "svd", &m],
        vec!["--format", "json", "pinv", &m],
    ] {
        let out = run(&args);
        ensure!(out.code == 0, "{args:?} exited {}", out.code);
        let errors = schema_errors("trace.schema.json", &out.stdout);
        ensure!(errors.is_empty(), "{args:?} trace schema: {errors:?}");
    }
    let errors = schema_errors("matrix-file.schema.json", &std::fs::read_to_string(&u).unwrap());
    ensure!(errors.is_empty(), "matrix file schema: {errors:?}");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact diagonalization of a 3x3 with a repeated eigenvalue", criterion_1),
        (
            "orthogonal diagonalization with Gram-Schmidt inside an eigenspace",
            criterion_2,
        ),
        ("rank-deficient SVD with orthonormal completion", criterion_3),
        ("full and reduced SVD and the pseudoinverse", criterion_4),
        ("irrational spectrum and numeric fallback", criterion_5),
        ("floating-point SVD against reference values", criterion_6),
        (
            "symmetric positive definite: eigenvalues equal singular values",
            criterion_7,
        ),
        ("mistake detection without false positives", criterion_8),
        ("randomized property suites", criterion_9),
        ("command-line contract", criterion_10),
    ];
    let mut failed = 0;
    for (i, (desc, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {}: PASS {desc}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {desc}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
