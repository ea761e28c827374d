use crate::factorize::{Diagonalization, EigenspaceFrame, OrthogonalDiagonalization, Pseudoinverse, Svd, SvdMode};
use crate::matrix::Matrix;
use crate::scalar::{Element, QuadRational, RadicalSum, Rational};
use crate::spectrum::{EigenBasis, Eigensystem, Eigenvalue};

use super::{Payload, StepKind, Trace};

pub(super) fn input(trace: &mut Trace, name: &str, a: &Matrix<Rational>) {
    trace.push(
        StepKind::Input,
        format!("the matrix {name}"),
        Payload::record([(name, Payload::rational_matrix(a))]),
    );
}

fn eigenvalue_scalars(es: &Eigensystem) -> Payload {
    Payload::Scalars(es.spectrum.eigenvalues().iter().map(Eigenvalue::to_scalar).collect())
}

pub(super) fn spectrum_steps(trace: &mut Trace, name: &str, es: &Eigensystem) {
    trace.push(
        StepKind::CharPoly,
        format!("characteristic polynomial of {name}"),
        Payload::record([("p(x)", Payload::Polynomial(es.charpoly.clone()))]),
    );
    trace.push(
        StepKind::Eigenvalues,
        "roots of p(x), repeated by multiplicity",
        Payload::record([(format!("Eigenvalues of {name}"), eigenvalue_scalars(es))]),
    );
}

fn eigenvector_steps(trace: &mut Trace, name: &str, es: &Eigensystem) {
    let entries = es
        .entries
        .iter()
        .map(|e| {
            Payload::record([
                ("eigenvalue", Payload::Scalar(e.eigenvalue.to_scalar())),
                ("algebraic multiplicity", Payload::count(e.algebraic_multiplicity)),
                ("geometric multiplicity", Payload::count(e.geometric_multiplicity())),
                ("basis", Payload::Vectors(e.basis.to_scalars())),
            ])
        })
        .collect();
    trace.push(
        StepKind::Eigenvectors,
        format!("nullspace of {name} - lambda*I for each eigenvalue"),
        Payload::List(entries),
    );
}

/// The eigensystem report: polynomial, spectrum, eigenspaces and the
/// check `A·v = λ·v` for every basis vector.
pub fn trace_eigensystem(a: &Matrix<Rational>, es: &Eigensystem) -> Trace {
    let mut t = Trace::new("eigen");
    input(&mut t, "A", a);
    spectrum_steps(&mut t, "A", es);
    eigenvector_steps(&mut t, "A", es);
    t.push(
        StepKind::Verify,
        "every basis vector satisfies A*v = lambda*v",
        Payload::record([("A*v == lambda*v", Payload::Bool(eigenpairs_hold(a, es)))]),
    );
    t
}

fn eigenpairs_hold(a: &Matrix<Rational>, es: &Eigensystem) -> bool {
    es.entries.iter().all(|e| match (&e.eigenvalue, &e.basis) {
        (Eigenvalue::Rational(l), EigenBasis::Rational(basis)) => {
            basis.iter().all(|v| is_eigenvector(a, v, l, Rational::clone))
        }
        (Eigenvalue::Quadratic(l), EigenBasis::Quadratic(basis)) => basis
            .iter()
            .all(|v| is_eigenvector(a, v, l, |x| QuadRational::from_rational(x.clone(), l.radicand()))),
        _ => false,
    })
}

fn is_eigenvector<T: Element>(a: &Matrix<Rational>, v: &[T], lambda: &T, lift: impl Fn(&Rational) -> T) -> bool {
    (0..a.row_count()).all(|i| {
        let av = (0..a.col_count())
            .map(|j| lift(a.get(i, j)) * v[j].clone())
            .reduce(|x, y| x + y)
            .expect("nonempty row");
        av == lambda.clone() * v[i].clone()
    })
}

pub fn trace_diagonalization(a: &Matrix<Rational>, f: &Diagonalization) -> Trace {
    let mut t = Trace::new("diag");
    input(&mut t, "A", a);
    spectrum_steps(&mut t, "A", &f.eigensystem);
    eigenvector_steps(&mut t, "A", &f.eigensystem);
    t.push(
        StepKind::Inverse,
        "inverse of P by row reduction",
        Payload::record([("P^-1", Payload::rational_matrix(&f.p_inv))]),
    );
    t.push(
        StepKind::AssembleFactor,
        "eigenvectors as the columns of P, eigenvalues on the diagonal of D",
        Payload::record([
            ("P", Payload::rational_matrix(&f.p)),
            ("D", Payload::rational_matrix(&f.d)),
            ("P^-1", Payload::rational_matrix(&f.p_inv)),
        ]),
    );
    let holds =
        f.p.matmul(&f.d)
            .and_then(|pd| pd.matmul(&f.p_inv))
            .map(|x| &x == a)
            .unwrap_or(false);
    t.push(
        StepKind::Verify,
        "the product reduces to the original matrix",
        Payload::record([("P*D*P^-1 == A", Payload::Bool(holds))]),
    );
    t
}

fn gram_schmidt_step(trace: &mut Trace, frames: &[EigenspaceFrame]) {
    let projected: Vec<Payload> = frames
        .iter()
        .filter(|f| f.projections.len() > 1)
        .map(|f| {
            Payload::record([
                ("eigenvalue", Payload::rational(&f.eigenvalue)),
                ("input", Payload::rational_vectors(&f.eigenvectors)),
                (
                    "projected",
                    Payload::rational_vectors(&f.projections.iter().map(|p| p.projected.clone()).collect::<Vec<_>>()),
                ),
                ("orthogonal", Payload::rational_vectors(&f.orthogonal())),
            ])
        })
        .collect();
    if !projected.is_empty() {
        trace.push(
            StepKind::GramSchmidt,
            "Gram-Schmidt inside each repeated eigenspace",
            Payload::List(projected),
        );
    }
}

fn normalized(directions: &[Vec<Rational>], columns: &Matrix<RadicalSum>, name: &str) -> Payload {
    Payload::record([
        ("directions", Payload::rational_vectors(directions)),
        (name, Payload::radical_vectors(&columns.columns())),
    ])
}

pub fn trace_orthogonal_diagonalization(a: &Matrix<Rational>, f: &OrthogonalDiagonalization) -> Trace {
    let mut t = Trace::new("orthdiag");
    input(&mut t, "A", a);
    spectrum_steps(&mut t, "A", &f.eigensystem);
    eigenvector_steps(&mut t, "A", &f.eigensystem);
    gram_schmidt_step(&mut t, &f.frames);
    t.push(
        StepKind::Normalize,
        "each direction divided by its length",
        normalized(&f.directions(), &f.p, "unit columns"),
    );
    t.push(
        StepKind::AssembleFactor,
        "unit eigenvectors as the columns of P",
        Payload::record([
            ("P", Payload::radical_matrix(&f.p)),
            ("D", Payload::rational_matrix(&f.d)),
        ]),
    );
    let pt = f.p.transpose();
    let orthogonal = pt.matmul(&f.p).map(|x| x.is_identity()).unwrap_or(false);
    let d = crate::factorize::to_radical_matrix(&f.d);
    let holds =
        f.p.matmul(&d)
            .and_then(|x| x.matmul(&pt))
            .map(|x| x == crate::factorize::to_radical_matrix(a))
            .unwrap_or(false);
    t.push(
        StepKind::Verify,
        "checking orthogonality and the product",
        Payload::record([
            ("P^T*P == I", Payload::Bool(orthogonal)),
            ("P*D*P^T == A", Payload::Bool(holds)),
        ]),
    );
    t
}

fn svd_steps(t: &mut Trace, m: &Matrix<Rational>, s: &Svd) {
    input(t, "M", m);
    t.push(
        StepKind::CharPoly,
        "characteristic polynomial of the Gram matrix M^T*M",
        Payload::record([
            ("M^T*M", Payload::rational_matrix(&s.gram)),
            ("p(x)", Payload::Polynomial(s.gram_eigensystem.charpoly.clone())),
        ]),
    );
    t.push(
        StepKind::Eigenvalues,
        "roots of p(x), repeated by multiplicity",
        Payload::record([("Eigenvalues of M^T*M", eigenvalue_scalars(&s.gram_eigensystem))]),
    );
    eigenvector_steps(t, "M^T*M", &s.gram_eigensystem);
    gram_schmidt_step(t, &s.frames);
    let directions: Vec<Vec<Rational>> = s.frames.iter().flat_map(EigenspaceFrame::orthogonal).collect();
    let v_all = Matrix::from_columns(
        m.col_count(),
        &directions
            .iter()
            .map(|d| crate::factorize::normalize_vector(d).expect("nonzero direction"))
            .collect::<Vec<_>>(),
    )
    .expect("columns");
    t.push(
        StepKind::Normalize,
        "right singular vectors v_i",
        normalized(&directions, &v_all, "v"),
    );
    let sigmas: Vec<(String, Payload)> = s
        .singular_values
        .iter()
        .enumerate()
        .map(|(i, x)| {
            (
                format!("sigma{}", i + 1),
                Payload::radical(&RadicalSum::from_term(x.clone())),
            )
        })
        .collect();
    t.push(
        StepKind::SingularValues,
        "square roots of the positive eigenvalues of M^T*M",
        Payload::record(sigmas.into_iter().chain([("rank".to_string(), Payload::count(s.rank))])),
    );
    let u_cols: Vec<Vec<RadicalSum>> = s.u.columns().into_iter().take(s.rank).collect();
    t.push(
        StepKind::Normalize,
        "left singular vectors u_i = (1/sigma_i)*M*v_i",
        Payload::record([("u", Payload::radical_vectors(&u_cols))]),
    );
}

pub fn trace_svd(m: &Matrix<Rational>, s: &Svd) -> Trace {
    let mut t = Trace::new(match s.mode {
        SvdMode::Full => "svd-full",
        SvdMode::Reduced => "svd-reduced",
    });
    svd_steps(&mut t, m, s);
    if !s.completion.is_empty() {
        t.push(
            StepKind::Completion,
            "orthonormal completion of U",
            Payload::record([("added columns", Payload::radical_vectors(&s.completion))]),
        );
    }
    t.push(
        StepKind::AssembleFactor,
        match s.mode {
            SvdMode::Full => "full SVD factors",
            SvdMode::Reduced => "reduced SVD factors",
        },
        Payload::record([
            ("U", Payload::radical_matrix(&s.u)),
            ("Sigma", Payload::radical_matrix(&s.sigma)),
            ("V", Payload::radical_matrix(&s.v)),
        ]),
    );
    let ortho = |q: &Matrix<RadicalSum>| {
        q.col_count() == 0 || q.transpose().matmul(q).map(|x| x.is_identity()).unwrap_or(false)
    };
    let holds = reconstruct(s)
        .map(|x| x == crate::factorize::to_radical_matrix(m))
        .unwrap_or(false);
    t.push(
        StepKind::Verify,
        "checking orthogonality and the product",
        Payload::record([
            ("U^T*U == I", Payload::Bool(ortho(&s.u))),
            ("V^T*V == I", Payload::Bool(ortho(&s.v))),
            ("U*Sigma*V^T == M", Payload::Bool(holds)),
        ]),
    );
    t
}

fn reconstruct(s: &Svd) -> crate::error::Result<Matrix<RadicalSum>> {
    if s.rank == 0 && s.mode == SvdMode::Reduced {
        return Ok(Matrix::zeros(s.u.row_count(), s.v.row_count()));
    }
    s.u.matmul(&s.sigma)?.matmul(&s.v.transpose())
}

pub fn trace_pseudoinverse(m: &Matrix<Rational>, p: &Pseudoinverse) -> Trace {
    let mut t = Trace::new("pinv");
    svd_steps(&mut t, m, &p.svd);
    let inverses: Vec<RadicalSum> = p
        .svd
        .singular_values
        .iter()
        .map(|x| {
            RadicalSum::from_term(x.clone())
                .inv_term()
                .expect("positive singular value")
        })
        .collect();
    t.push(
        StepKind::Inverse,
        "reciprocals of the singular values",
        Payload::record([(
            "D^-1",
            Payload::radical_matrix(&Matrix::diagonal_matrix(&inverses, p.svd.rank, p.svd.rank)),
        )]),
    );
    t.push(
        StepKind::AssembleFactor,
        "M+ = V*D^-1*U^T from the reduced factors",
        Payload::record([("M+", Payload::rational_matrix(&p.pinv))]),
    );
    let conditions = penrose(m, &p.pinv);
    t.push(
        StepKind::Verify,
        "the four Penrose conditions",
        Payload::record([
            ("M*M+*M == M", Payload::Bool(conditions[0])),
            ("M+*M*M+ == M+", Payload::Bool(conditions[1])),
            ("(M*M+)^T == M*M+", Payload::Bool(conditions[2])),
            ("(M+*M)^T == M+*M", Payload::Bool(conditions[3])),
        ]),
    );
    t
}

/// The four Penrose conditions, exactly.
pub fn penrose(m: &Matrix<Rational>, pinv: &Matrix<Rational>) -> [bool; 4] {
    let check = || -> crate::error::Result<[bool; 4]> {
        let mp = m.matmul(pinv)?;
        let pm = pinv.matmul(m)?;
        Ok([
            &mp.matmul(m)? == m,
            &pm.matmul(pinv)? == pinv,
            mp.transpose() == mp,
            pm.transpose() == pm,
        ])
    };
    check().unwrap_or([false; 4])
}
