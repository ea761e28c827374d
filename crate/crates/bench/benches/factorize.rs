use criterion::{black_box, criterion_group, criterion_main, Criterion};

use exactfact::diagnose::{check_svd, CheckOptions, SvdClaim};
use exactfact::factorize::{diagonalize, orthogonal_diagonalize, pseudoinverse, svd, SvdMode};
use exactfact::matrix::{ExactMatrix, Matrix};
use exactfact::numeric::{numeric_svd, NumericOptions};
use exactfact::spectrum::characteristic_polynomial;

fn exact(c: &mut Criterion) {
    let a = Matrix::from_i64(&[&[1, 2, 2], &[0, 2, 1], &[0, 1, 2]]);
    let b = Matrix::from_i64(&[&[3, -4, -4], &[-4, 3, -4], &[-4, -4, 3]]);
    let m = Matrix::from_i64(&[&[2, -2], &[-3, -4], &[-4, -3]]);

    c.bench_function("charpoly 3x3", |bn| {
        bn.iter(|| characteristic_polynomial(black_box(&a)))
    });
    c.bench_function("diagonalize 3x3", |bn| bn.iter(|| diagonalize(black_box(&a))));
    c.bench_function("orthogonal_diagonalize 3x3", |bn| {
        bn.iter(|| orthogonal_diagonalize(black_box(&b)))
    });
    c.bench_function("svd full 3x2", |bn| bn.iter(|| svd(black_box(&m), SvdMode::Full)));
    c.bench_function("pseudoinverse 3x2", |bn| bn.iter(|| pseudoinverse(black_box(&m))));

    let s = svd(&m, SvdMode::Full).unwrap();
    let claim = SvdClaim {
        m: ExactMatrix::Rational(m.clone()),
        u: ExactMatrix::Radical(s.u),
        sigma: ExactMatrix::Radical(s.sigma),
        v: ExactMatrix::Radical(s.v),
        mode: SvdMode::Full,
    };
    let opts = CheckOptions::default();
    c.bench_function("check svd 3x2", |bn| bn.iter(|| check_svd(black_box(&claim), &opts)));
}

fn numeric(c: &mut Criterion) {
    let m = Matrix::from_f64(&[&[4.0, 11.0, 14.0], &[-1.0, 1.0, 17.0], &[0.0, 12.0, 5.0]]);
    let opts = NumericOptions::default();
    c.bench_function("numeric_svd 3x3", |bn| bn.iter(|| numeric_svd(black_box(&m), &opts)));

    let n = 24;
    let big = Matrix::from_fn(n, n, |i, j| ((i * 7 + j * 13) % 17) as f64 - 8.0);
    c.bench_function("numeric_svd 24x24", |bn| {
        bn.iter(|| numeric_svd(black_box(&big), &opts))
    });
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
