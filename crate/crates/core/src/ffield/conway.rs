//! Conway polynomials for `p = 5`, `1 ≤ n ≤ 12`.
//!
//! Coefficients are listed from the constant term up to the (monic) leading
//! term, matching the layout of [`super::FieldSpec::modulus`].

const CONWAY_5: [&[u32]; 12] = [
    &[3, 1],
    &[2, 4, 1],
    &[3, 3, 0, 1],
    &[2, 4, 4, 0, 1],
    &[3, 4, 0, 0, 0, 1],
    &[2, 0, 1, 4, 1, 0, 1],
    &[3, 3, 0, 0, 0, 0, 0, 1],
    &[2, 4, 3, 0, 1, 0, 0, 0, 1],
    &[3, 1, 0, 2, 0, 0, 0, 0, 0, 1],
    &[2, 1, 4, 2, 3, 3, 0, 0, 0, 0, 1],
    &[3, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    &[2, 2, 3, 4, 4, 0, 1, 1, 0, 0, 0, 0, 1],
];

pub(crate) fn lookup(p: u32, n: usize) -> Option<&'static [u32]> {
    if p == 5 && (1..=CONWAY_5.len()).contains(&n) {
        Some(CONWAY_5[n - 1])
    } else {
        None
    }
}
