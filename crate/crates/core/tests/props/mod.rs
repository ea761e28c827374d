#![allow(dead_code)]

use exactfact::diagnose::{
    check_orthogonal_diagonalization, check_svd, CheckOptions, OrthogonalDiagonalizationClaim, SvdClaim,
};
use exactfact::error::Error;
use exactfact::factorize::{gram_schmidt, orthogonal_diagonalize, pseudoinverse, svd, SvdMode};
use exactfact::matrix::{dot, inverse, rank, ExactMatrix, Matrix};
use exactfact::numeric::{numeric_svd, to_float_matrix, NumericOptions};
use exactfact::scalar::{canonicalize_radical, frac, int, QuadRational, RadicalSum, Rational};
use exactfact::spectrum::{characteristic_polynomial, resolve_spectrum, Eigenvalue};
use exactfact::trace::penrose;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

fn config() -> Config {
    Config {
        cases: 256,
        rng_seed: RngSeed::Fixed(0x5eed_1a2b),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rational() -> impl Strategy<Value = Rational> + Clone {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn square(max: usize, entry: impl Strategy<Value = Rational> + Clone) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(entry.clone(), n * n).prop_map(move |data| Matrix::new(n, n, data).unwrap())
    })
}

fn int_entry() -> impl Strategy<Value = Rational> + Clone {
    (-9i64..=9).prop_map(int)
}

/// `(I − K)(I + K)⁻¹` for a skew-symmetric integer `K` is a rational
/// orthogonal matrix.
fn rational_orthogonal(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut k = Matrix::<Rational>::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = int(it.next().unwrap());
                k.set(j, i, -x.clone());
                k.set(i, j, x);
            }
        }
        let id = Matrix::<Rational>::identity(n);
        id.sub(&k)
            .unwrap()
            .matmul(&inverse(&id.add(&k).unwrap()).unwrap())
            .unwrap()
    })
}

/// `Q₁·D·Q₂ᵀ` with integer `D`, so the Gram spectrum is rational.
fn rational_gram_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
        (
            rational_orthogonal(m),
            rational_orthogonal(n),
            prop::collection::vec(prop_oneof![Just(0i64), -5i64..=5], m.min(n)),
        )
            .prop_map(move |(q1, q2, d)| {
                let d: Vec<Rational> = d.into_iter().map(int).collect();
                let sigma = Matrix::diagonal_matrix(&d, m, n);
                q1.matmul(&sigma).unwrap().matmul(&q2.transpose()).unwrap()
            })
    })
}

/// `S·T·S⁻¹` with `T` upper triangular and `S` unit lower triangular.
fn rational_spectrum_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(-4i64..=4, n * n),
            prop::collection::vec(-2i64..=2, n * n),
        )
            .prop_map(move |(t, s)| {
                let t = Matrix::from_fn(n, n, |i, j| if j >= i { int(t[i * n + j]) } else { int(0) });
                let s = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => int(1),
                    std::cmp::Ordering::Greater => int(s[i * n + j]),
                    std::cmp::Ordering::Less => int(0),
                });
                s.matmul(&t).unwrap().matmul(&inverse(&s).unwrap()).unwrap()
            })
    })
}

fn symmetric_rational_spectrum() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=3).prop_flat_map(|n| {
        (
            rational_orthogonal(n),
            prop::collection::vec(prop_oneof![-3i64..=3, Just(2)], n),
        )
            .prop_map(move |(q, d)| {
                let d: Vec<Rational> = d.into_iter().map(int).collect();
                q.matmul(&Matrix::diagonal_matrix(&d, n, n))
                    .unwrap()
                    .matmul(&q.transpose())
                    .unwrap()
            })
    })
}

/// Sum and product of eigenvalues, computed in `ℚ(√d)` when needed.
fn spectrum_sum_product(entries: &[(Eigenvalue, usize)]) -> (QuadRational, QuadRational) {
    let d = entries
        .iter()
        .find_map(|(l, _)| match l {
            Eigenvalue::Quadratic(q) => Some(q.radicand().clone()),
            Eigenvalue::Rational(_) => None,
        })
        .unwrap_or_else(|| BigUint::from(2u32));
    let lift = |l: &Eigenvalue| match l {
        Eigenvalue::Rational(r) => QuadRational::from_rational(r.clone(), &d),
        Eigenvalue::Quadratic(q) => q.clone(),
    };
    let mut sum = QuadRational::from_rational(Rational::zero(), &d);
    let mut prod = QuadRational::from_rational(Rational::one(), &d);
    for (l, m) in entries {
        for _ in 0..*m {
            sum = sum.checked_add(&lift(l)).unwrap();
            prod = prod.checked_mul(&lift(l)).unwrap();
        }
    }
    (sum, prod)
}

fn radical() -> impl Strategy<Value = RadicalSum> {
    prop::collection::vec((rational(), prop::sample::select(vec![1i64, 2, 3, 5, 6, 8, 12])), 0..4)
        .prop_map(|terms| RadicalSum::from_terms(terms.into_iter().map(|(c, r)| (c, BigInt::from(r)))).unwrap())
}

fn quad() -> impl Strategy<Value = QuadRational> {
    (rational(), rational()).prop_map(|(a, b)| QuadRational::new(a, b, BigUint::from(5u32)).unwrap())
}

pub type Outcome = Result<(), String>;

fn check<S: Strategy>(strategy: &S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    TestRunner::new(config()).run(strategy, test).map_err(|e| e.to_string())
}

pub fn cayley_hamilton() -> Outcome {
    check(&square(5, rational()), |a| {
        let p = characteristic_polynomial(&a).unwrap();
        prop_assert!(p.eval_matrix(&a).unwrap().is_zero());
        Ok(())
    })
}

pub fn trace_and_determinant_match_spectrum() -> Outcome {
    check(&prop_oneof![rational_spectrum_matrix(), square(2, int_entry())], |a| {
        let p = characteristic_polynomial(&a).unwrap();
        let spectrum = match resolve_spectrum(&p) {
            Ok(s) => s,
            Err(Error::ComplexRootsUnsupported { .. } | Error::UnsupportedSpectrum(_)) if a.row_count() == 2 => {
                let (t, d) = (a.trace().unwrap(), exactfact::matrix::bareiss_determinant(&a).unwrap());
                prop_assert!(&t * &t - int(4) * d < int(0));
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let (sum, prod) = spectrum_sum_product(&spectrum.entries);
        prop_assert_eq!(sum.as_rational(), Some(&a.trace().unwrap()));
        let det = exactfact::matrix::bareiss_determinant(&a).unwrap();
        prop_assert_eq!(prod.as_rational(), Some(&det));
        Ok(())
    })
}

pub fn penrose_conditions() -> Outcome {
    check(&rational_gram_matrix(), |m| {
        let p = pseudoinverse(&m).unwrap();
        prop_assert_eq!(penrose(&m, &p.pinv), [true; 4]);
        Ok(())
    })
}

pub fn gram_schmidt_orthogonal_and_span_preserving() -> Outcome {
    check(
        &(1usize..=4).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(-4i64..=4, n), 1..=n),
            )
        }),
        |(n, vs)| {
            let basis: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
            let k = basis.len();
            let input_rank = rank(&Matrix::from_columns(n, &basis).unwrap());
            match gram_schmidt(&basis) {
                Ok(out) => {
                    prop_assert_eq!(out.len(), k);
                    for i in 0..k {
                        for j in i + 1..k {
                            prop_assert!(dot(&out[i], &out[j]).unwrap().is_zero());
                        }
                    }
                    let mut both = basis.clone();
                    both.extend(out);
                    prop_assert_eq!(input_rank, k);
                    prop_assert_eq!(rank(&Matrix::from_columns(n, &both).unwrap()), k);
                }
                Err(Error::DependentInput { .. }) => prop_assert!(input_rank < k),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            Ok(())
        },
    )
}

pub fn exact_and_numeric_singular_values_agree() -> Outcome {
    check(&rational_gram_matrix(), |m| {
        let exact = svd(&m, SvdMode::Reduced).unwrap();
        let numeric = numeric_svd(&to_float_matrix(&m).unwrap(), &NumericOptions::default()).unwrap();
        prop_assert_eq!(exact.rank, numeric.rank);
        let scale = numeric
            .singular_values
            .first()
            .copied()
            .unwrap_or(1.0)
            .max(f64::MIN_POSITIVE);
        for (e, x) in exact.singular_values.iter().zip(&numeric.singular_values) {
            prop_assert!((e.to_f64().unwrap() - x).abs() <= 1e-9 * scale);
        }
        Ok(())
    })
}

pub fn generated_svds_check_valid() -> Outcome {
    check(&(rational_gram_matrix(), any::<bool>()), |(m, full)| {
        let mode = if full { SvdMode::Full } else { SvdMode::Reduced };
        let s = svd(&m, mode).unwrap();
        let claim = SvdClaim {
            m: ExactMatrix::Rational(m),
            u: ExactMatrix::Radical(s.u),
            sigma: ExactMatrix::Radical(s.sigma),
            v: ExactMatrix::Radical(s.v),
            mode,
        };
        let d = check_svd(&claim, &CheckOptions::default()).unwrap();
        prop_assert!(d.is_valid(), "{:?}", d.findings);
        Ok(())
    })
}

pub fn generated_orthogonal_diagonalizations_check_valid() -> Outcome {
    check(&symmetric_rational_spectrum(), |a| {
        let f = orthogonal_diagonalize(&a).unwrap();
        let claim = OrthogonalDiagonalizationClaim {
            a: ExactMatrix::Rational(a),
            p: ExactMatrix::Radical(f.p),
            d: ExactMatrix::Rational(f.d),
        };
        let d = check_orthogonal_diagonalization(&claim, &CheckOptions::default()).unwrap();
        prop_assert!(d.is_valid(), "{:?}", d.findings);
        Ok(())
    })
}

pub fn radical_ring_laws() -> Outcome {
    check(&(radical(), radical(), radical()), |(x, y, z)| {
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(
            x.clone() * (y.clone() + z.clone()),
            x.clone() * y.clone() + x.clone() * z
        );
        prop_assert!((x.clone() - x.clone()).is_zero());
        prop_assert_eq!(x.clone() * RadicalSum::one(), x);
        Ok(())
    })
}

pub fn quadratic_field_laws() -> Outcome {
    check(&(quad(), quad(), quad()), |(x, y, z)| {
        prop_assert_eq!(
            x.clone() * (y.clone() + z.clone()),
            x.clone() * y.clone() + x.clone() * z
        );
        prop_assert_eq!(x.clone() * y.clone(), y * x.clone());
        match x.inv() {
            Some(inv) => {
                let one = x * inv;
                prop_assert_eq!(one.as_rational(), Some(&int(1)));
            }
            None => prop_assert!(x.is_zero()),
        }
        Ok(())
    })
}

pub fn rational_field_laws() -> Outcome {
    check(&(rational(), rational(), rational()), |(x, y, z)| {
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        if !x.is_zero() {
            prop_assert_eq!(&x * x.recip(), int(1));
        }
        Ok(())
    })
}

pub fn canonicalization_is_idempotent() -> Outcome {
    check(&(rational(), 0u64..5000), |(c, r)| {
        let t = canonicalize_radical(&c, &BigInt::from(r)).unwrap();
        let again = canonicalize_radical(&t.coeff, &BigInt::from(t.radicand.clone())).unwrap();
        prop_assert_eq!(&again, &t);
        let value = t.to_f64().unwrap();
        let direct = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap()
            * (r as f64).sqrt();
        prop_assert!((value - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        Ok(())
    })
}

pub type Property = (&'static str, fn() -> Outcome);

pub const ALL: &[Property] = &[
    ("cayley_hamilton", cayley_hamilton),
    (
        "trace_and_determinant_match_spectrum",
        trace_and_determinant_match_spectrum,
    ),
    ("penrose_conditions", penrose_conditions),
    (
        "gram_schmidt_orthogonal_and_span_preserving",
        gram_schmidt_orthogonal_and_span_preserving,
    ),
    (
        "exact_and_numeric_singular_values_agree",
        exact_and_numeric_singular_values_agree,
    ),
    ("generated_svds_check_valid", generated_svds_check_valid),
    (
        "generated_orthogonal_diagonalizations_check_valid",
        generated_orthogonal_diagonalizations_check_valid,
    ),
    ("radical_ring_laws", radical_ring_laws),
    ("quadratic_field_laws", quadratic_field_laws),
    ("rational_field_laws", rational_field_laws),
    ("canonicalization_is_idempotent", canonicalization_is_idempotent),
];
