mod props;

#[test]
fn cayley_hamilton() {
    props::cayley_hamilton().unwrap();
}

#[test]
fn trace_and_determinant_match_spectrum() {
    props::trace_and_determinant_match_spectrum().unwrap();
}

#[test]
fn penrose_conditions() {
    props::penrose_conditions().unwrap();
}

#[test]
fn gram_schmidt_orthogonal_and_span_preserving() {
    props::gram_schmidt_orthogonal_and_span_preserving().unwrap();
}

#[test]
fn exact_and_numeric_singular_values_agree() {
    props::exact_and_numeric_singular_values_agree().unwrap();
}

#[test]
fn generated_svds_check_valid() {
    props::generated_svds_check_valid().unwrap();
}

#[test]
fn generated_orthogonal_diagonalizations_check_valid() {
    props::generated_orthogonal_diagonalizations_check_valid().unwrap();
}

#[test]
fn radical_ring_laws() {
    props::radical_ring_laws().unwrap();
}

#[test]
fn quadratic_field_laws() {
    props::quadratic_field_laws().unwrap();
}

#[test]
fn rational_field_laws() {
    props::rational_field_laws().unwrap();
}

#[test]
fn canonicalization_is_idempotent() {
    props::canonicalization_is_idempotent().unwrap();
}
